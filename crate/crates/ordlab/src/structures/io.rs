use super::{EquivStructure, Hypergraph, MetricSpace, VectorSpace};
use crate::error::{Error, Result};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

/// Any structure the text formats can carry. Headers decide the variant:
/// `hypergraph r=.. n=..` (or `graph n=..`), `metric n=..`, `equiv n=..`,
/// `vector q=.. d=..`, `points n=.. dim=..`.
#[derive(Debug, Clone)]
pub enum StructureFile {
    Hypergraph(Hypergraph),
    Metric(MetricSpace<f64>),
    Equiv(EquivStructure),
    Vector(VectorSpace),
    Points(Vec<Vec<f64>>),
}

fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads `key=value` tokens after the leading keyword; every key in `keys`
/// must appear exactly once.
fn header_fields(line_no: usize, line: &str, keyword: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let mut toks = line.split_whitespace();
    let head = toks.next().unwrap_or("");
    if head != keyword {
        return Err(parse_err(line_no, format!("expected `{keyword}` header")));
    }
    let mut vals: Vec<Option<usize>> = vec![None; keys.len()];
    for tok in toks {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("bad token `{tok}`, want key=value")))?;
        let slot = keys
            .iter()
            .position(|&key| key == k)
            .ok_or_else(|| parse_err(line_no, format!("unknown key `{k}`")))?;
        if vals[slot].is_some() {
            return Err(parse_err(line_no, format!("duplicate key `{k}`")));
        }
        vals[slot] = Some(
            v.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad value for `{k}`: `{v}`")))?,
        );
    }
    vals.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| parse_err(line_no, format!("missing key `{}`", keys[i]))))
        .collect()
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let lines = content_lines(text);
    let (hdr_no, hdr) = *lines.first().ok_or_else(|| parse_err(1, "empty input"))?;
    let (r, n) = if hdr.starts_with("graph") {
        let f = header_fields(hdr_no, hdr, "graph", &["n"])?;
        (2, f[0])
    } else {
        let f = header_fields(hdr_no, hdr, "hypergraph", &["r", "n"])?;
        (f[0], f[1])
    };
    let mut edges = Vec::new();
    for &(line_no, line) in &lines[1..] {
        let edge: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("bad vertex id `{t}`")))
            })
            .collect::<Result<_>>()?;
        if edge.len() != r {
            return Err(parse_err(
                line_no,
                format!("hyperedge has {} vertices, expected {r}", edge.len()),
            ));
        }
        edges.push(edge);
    }
    Hypergraph::new(n, r, edges)
}

pub fn write_hypergraph(g: &Hypergraph) -> String {
    let mut out = format!("hypergraph r={} n={}\n", g.r(), g.n());
    for e in g.edges() {
        let ids: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

fn metric_rows<T>(
    lines: &[(usize, &str)],
    parse_cell: impl Fn(usize, &str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let (hdr_no, hdr) = *lines.first().ok_or_else(|| parse_err(1, "empty input"))?;
    let n = header_fields(hdr_no, hdr, "metric", &["n"])?[0];
    if lines.len() != n + 1 {
        return Err(parse_err(
            lines.last().map_or(1, |&(l, _)| l),
            format!("expected {n} matrix rows, got {}", lines.len() - 1),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for &(line_no, line) in &lines[1..] {
        let row: Vec<T> = line
            .split_whitespace()
            .map(|t| parse_cell(line_no, t))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(
                line_no,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_metric_f64(text: &str) -> Result<MetricSpace<f64>> {
    let rows = metric_rows(&content_lines(text), |line_no, t| {
        t.parse::<f64>()
            .map_err(|_| parse_err(line_no, format!("bad number `{t}`")))
    })?;
    MetricSpace::new(rows)
}

/// Exact lane: cells are plain decimals (`1.2`) or fractions (`6/5`).
pub fn parse_metric_exact(text: &str) -> Result<MetricSpace<Rational>> {
    let rows = metric_rows(&content_lines(text), |line_no, t| {
        parse_rational(t).ok_or_else(|| parse_err(line_no, format!("bad rational `{t}`")))
    })?;
    MetricSpace::new(rows)
}

pub fn parse_rational(t: &str) -> Option<Rational> {
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (int_part, frac_part) = match t.split_once('.') {
        Some((i, f)) => (i, f),
        None => (t, ""),
    };
    if frac_part.contains(['+', '-']) {
        return None;
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() || int_part == "-" { format!("{int_part}0") } else { int_part.to_string() },
        frac_part
    );
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rational::new(numer, denom))
}

/// Renders exactly: terminating decimal when the reduced denominator is
/// 2^a 5^b, `p/q` otherwise.
pub fn render_rational(x: &Rational) -> String {
    let (mut a, mut b) = (0u32, 0u32);
    let mut d = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let k = a.max(b);
    let scaled: BigInt = x.numer() * BigInt::from(10u32).pow(k) / x.denom();
    let neg = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    if (s.len() as u32) <= k {
        s = format!("{}{}", "0".repeat((k + 1 - s.len() as u32) as usize), s);
    }
    let split = s.len() - k as usize;
    let (int_part, frac_part) = s.split_at(split);
    let frac_trimmed = frac_part.trim_end_matches('0');
    let body = if frac_trimmed.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_trimmed}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub fn write_metric_f64(m: &MetricSpace<f64>) -> String {
    let mut out = format!("metric n={}\n", m.n());
    for i in 0..m.n() {
        let row: Vec<String> = (0..m.n()).map(|j| m.dist(i, j).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_metric_exact(m: &MetricSpace<Rational>) -> String {
    let mut out = format!("metric n={}\n", m.n());
    for i in 0..m.n() {
        let row: Vec<String> = (0..m.n()).map(|j| render_rational(m.dist(i, j))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn parse_equiv(text: &str) -> Result<EquivStructure> {
    let lines = content_lines(text);
    let (hdr_no, hdr) = *lines.first().ok_or_else(|| parse_err(1, "empty input"))?;
    let n = header_fields(hdr_no, hdr, "equiv", &["n"])?[0];
    let (body_no, body) = *lines
        .get(1)
        .ok_or_else(|| parse_err(hdr_no, "missing class-id line"))?;
    if lines.len() > 2 {
        return Err(parse_err(lines[2].0, "unexpected extra line"));
    }
    let class_of: Vec<usize> = body
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(body_no, format!("bad class id `{t}`")))
        })
        .collect::<Result<_>>()?;
    if class_of.len() != n {
        return Err(parse_err(
            body_no,
            format!("expected {n} class ids, got {}", class_of.len()),
        ));
    }
    Ok(EquivStructure::new(class_of))
}

pub fn write_equiv(e: &EquivStructure) -> String {
    let ids: Vec<String> = (0..e.n()).map(|x| e.class_of(x).to_string()).collect();
    format!("equiv n={}\n{}\n", e.n(), ids.join(" "))
}

pub fn parse_vector_space(text: &str) -> Result<VectorSpace> {
    let lines = content_lines(text);
    let (hdr_no, hdr) = *lines.first().ok_or_else(|| parse_err(1, "empty input"))?;
    let f = header_fields(hdr_no, hdr, "vector", &["q", "d"])?;
    if lines.len() > 1 {
        return Err(parse_err(lines[1].0, "unexpected extra line"));
    }
    VectorSpace::new(f[0], f[1])
}

pub fn write_vector_space(v: &VectorSpace) -> String {
    format!("vector q={} d={}\n", v.q(), v.d())
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>> {
    let lines = content_lines(text);
    let (hdr_no, hdr) = *lines.first().ok_or_else(|| parse_err(1, "empty input"))?;
    let f = header_fields(hdr_no, hdr, "points", &["n", "dim"])?;
    let (n, dim) = (f[0], f[1]);
    if lines.len() != n + 1 {
        return Err(parse_err(
            lines.last().map_or(1, |&(l, _)| l),
            format!("expected {n} point rows, got {}", lines.len() - 1),
        ));
    }
    let mut pts = Vec::with_capacity(n);
    for &(line_no, line) in &lines[1..] {
        let p: Vec<f64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| parse_err(line_no, format!("bad coordinate `{t}`")))
            })
            .collect::<Result<_>>()?;
        if p.len() != dim {
            return Err(parse_err(
                line_no,
                format!("point has {} coordinates, expected {dim}", p.len()),
            ));
        }
        pts.push(p);
    }
    Ok(pts)
}

pub fn write_points(pts: &[Vec<f64>]) -> String {
    let dim = pts.first().map_or(0, |p| p.len());
    let mut out = format!("points n={} dim={}\n", pts.len(), dim);
    for p in pts {
        let row: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Dispatches on the header keyword. Metric files land in the f64 lane; use
/// parse_metric_exact directly when exact arithmetic is wanted.
pub fn parse_structure(text: &str) -> Result<StructureFile> {
    let lines = content_lines(text);
    let (_, hdr) = *lines.first().ok_or_else(|| parse_err(1, "empty input"))?;
    let keyword = hdr.split_whitespace().next().unwrap_or("");
    match keyword {
        "hypergraph" | "graph" => Ok(StructureFile::Hypergraph(parse_hypergraph(text)?)),
        "metric" => Ok(StructureFile::Metric(parse_metric_f64(text)?)),
        "equiv" => Ok(StructureFile::Equiv(parse_equiv(text)?)),
        "vector" => Ok(StructureFile::Vector(parse_vector_space(text)?)),
        "points" => Ok(StructureFile::Points(parse_points(text)?)),
        other => Err(parse_err(1, format!("unknown structure keyword `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_round_trip() {
        let g = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let text = write_hypergraph(&g);
        assert_eq!(parse_hypergraph(&text).unwrap(), g);
    }

    #[test]
    fn graph_shorthand() {
        let text = "graph n=3\n0 1\n1 2\n";
        let g = parse_hypergraph(text).unwrap();
        assert_eq!(g.r(), 2);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn hypergraph_bad_inputs() {
        assert!(parse_hypergraph("").is_err());
        assert!(parse_hypergraph("hypergraph r=3\n").is_err());
        assert!(parse_hypergraph("hypergraph r=2 n=3\n0 1 2\n").is_err());
        assert!(parse_hypergraph("hypergraph r=2 n=3\n0 x\n").is_err());
        assert!(parse_hypergraph("hypergraph r=2 n=3 r=2\n").is_err());
    }

    #[test]
    fn metric_f64_round_trip() {
        let m = MetricSpace::new(vec![
            vec![0.0, 1.0, 1.2],
            vec![1.0, 0.0, 1.0],
            vec![1.2, 1.0, 0.0],
        ])
        .unwrap();
        let text = write_metric_f64(&m);
        assert_eq!(parse_metric_f64(&text).unwrap(), m);
    }

    #[test]
    fn metric_exact_round_trip() {
        let text = "metric n=3\n0 1 1.2\n1 0 6/5\n1.2 6/5 0\n";
        let m = parse_metric_exact(text).unwrap();
        assert_eq!(m.dist(0, 2), m.dist(1, 2));
        let rendered = write_metric_exact(&m);
        assert_eq!(parse_metric_exact(&rendered).unwrap(), m);
        assert!(rendered.contains("1.2"));
    }

    #[test]
    fn rational_rendering() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(render_rational(&half), "0.5");
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(render_rational(&third), "1/3");
        let six_fifths = parse_rational("1.2").unwrap();
        assert_eq!(render_rational(&six_fifths), "1.2");
        assert_eq!(render_rational(&parse_rational("3").unwrap()), "3");
        assert_eq!(render_rational(&parse_rational("0.25").unwrap()), "0.25");
    }

    #[test]
    fn equiv_round_trip() {
        let e = EquivStructure::new(vec![0, 0, 1, 1]);
        assert_eq!(parse_equiv(&write_equiv(&e)).unwrap(), e);
        assert!(parse_equiv("equiv n=3\n0 0\n").is_err());
    }

    #[test]
    fn vector_round_trip() {
        let v = VectorSpace::new(3, 2).unwrap();
        assert_eq!(parse_vector_space(&write_vector_space(&v)).unwrap(), v);
    }

    #[test]
    fn points_round_trip() {
        let pts = vec![vec![0.0, 1.5], vec![-2.25, 0.125]];
        assert_eq!(parse_points(&write_points(&pts)).unwrap(), pts);
    }

    #[test]
    fn dispatch_by_keyword() {
        assert!(matches!(
            parse_structure("graph n=2\n0 1\n").unwrap(),
            StructureFile::Hypergraph(_)
        ));
        assert!(matches!(
            parse_structure("equiv n=2\n0 1\n").unwrap(),
            StructureFile::Equiv(_)
        ));
        assert!(parse_structure("widget n=2\n").is_err());
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# generated\n\ngraph n=2\n# edge list\n0 1\n";
        let g = parse_hypergraph(text).unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
