use crate::error::{Error, Result};

/// Finite vector space over the prime field Z_q. The universe is all q^d
/// coordinate vectors, identified with 0..q^d-1 by base-q encoding with the
/// first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorSpace {
    q: usize,
    d: usize,
    size: usize,
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|k| k * k <= q).all(|k| q % k != 0)
}

impl VectorSpace {
    pub fn new(q: usize, d: usize) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidStructure(format!("field size {q} is not prime")));
        }
        if d == 0 {
            return Err(Error::InvalidStructure("dimension must be >= 1".into()));
        }
        let mut size: usize = 1;
        for _ in 0..d {
            size = size
                .checked_mul(q)
                .filter(|&s| s <= 1_000_000)
                .ok_or(Error::SizeLimit { what: "q^d", got: usize::MAX, max: 1_000_000 })?;
        }
        Ok(Self { q, d, size })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Universe size q^d.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        let mut c = vec![0; self.d];
        let mut v = v;
        for i in (0..self.d).rev() {
            c[i] = v % self.q;
            v /= self.q;
        }
        c
    }

    pub fn encode(&self, c: &[usize]) -> usize {
        c.iter().fold(0, |acc, &x| acc * self.q + x)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let sum: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.q).collect();
        self.encode(&sum)
    }

    pub fn scale(&self, k: usize, a: usize) -> usize {
        let c: Vec<usize> = self.coords(a).iter().map(|&x| (x * k) % self.q).collect();
        self.encode(&c)
    }

    /// Standard basis vector e_i.
    pub fn basis_vector(&self, i: usize) -> usize {
        let mut c = vec![0; self.d];
        c[i] = 1;
        self.encode(&c)
    }

    /// True when the vectors are linearly independent (Gaussian elimination
    /// over Z_q on their coordinate rows).
    pub fn independent(&self, vecs: &[usize]) -> bool {
        let mut rows: Vec<Vec<usize>> = vecs.iter().map(|&v| self.coords(v)).collect();
        let mut rank = 0;
        for col in 0..self.d {
            let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = mod_inverse(rows[rank][col], self.q);
            for j in 0..self.d {
                rows[rank][j] = (rows[rank][j] * inv) % self.q;
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for j in 0..self.d {
                        let sub = (f * rows[rank][j]) % self.q;
                        rows[i][j] = (rows[i][j] + self.q - sub) % self.q;
                    }
                }
            }
            rank += 1;
        }
        rank == vecs.len()
    }

    /// Span of the given vectors as a sorted element list.
    pub fn span(&self, basis: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut combo = vec![0usize; basis.len()];
        loop {
            let mut v = 0;
            for (i, &c) in combo.iter().enumerate() {
                v = self.add(v, self.scale(c, basis[i]));
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == combo.len() {
                    out.sort_unstable();
                    out.dedup();
                    return out;
                }
                combo[i] += 1;
                if combo[i] < self.q {
                    break;
                }
                combo[i] = 0;
                i += 1;
            }
        }
    }

    /// All subspaces as sorted element lists (universe capped small).
    pub fn subspaces(&self) -> Result<Vec<Vec<usize>>> {
        if self.size > 64 {
            return Err(Error::SizeLimit { what: "q^d", got: self.size, max: 64 });
        }
        let mut found: Vec<Vec<usize>> = vec![vec![0]];
        let mut frontier = vec![vec![0usize]];
        while let Some(sub) = frontier.pop() {
            for v in 1..self.size {
                if sub.binary_search(&v).is_ok() {
                    continue;
                }
                let mut basis: Vec<usize> = Vec::new();
                for &x in &sub {
                    if x != 0 {
                        basis.push(x);
                    }
                }
                basis.push(v);
                let grown = self.span(&basis);
                if !found.contains(&grown) {
                    found.push(grown.clone());
                    frontier.push(grown);
                }
            }
        }
        found.sort();
        Ok(found)
    }
}

fn mod_inverse(a: usize, q: usize) -> usize {
    (1..q).find(|&x| (a * x) % q == 1).expect("nonzero element of a prime field")
}
