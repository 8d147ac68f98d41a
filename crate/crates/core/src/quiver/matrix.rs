use crate::error::{Error, Result};

use super::{minimal_symmetrizer, ValuedQuiver};

/// Skew-symmetrizable integer matrix paired with its symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeMatrix {
    n: usize,
    size: usize,
    b: Vec<i64>,
    d: Vec<u64>,
}

impl ExchangeMatrix {
    /// `rows` is the full `(n+m) x (n+m)` matrix; the first `n` indices are exchangeable.
    pub fn from_rows(n: usize, rows: &[Vec<i64>], d: Option<Vec<u64>>) -> Result<Self> {
        let size = rows.len();
        if n > size || rows.iter().any(|r| r.len() != size) {
            return Err(Error::NotSkewSymmetrizable);
        }
        let b: Vec<i64> = rows.iter().flatten().copied().collect();
        let d = match d {
            Some(d) if d.len() == size && d.iter().all(|&x| x > 0) => d,
            Some(_) => return Err(Error::NotSkewSymmetrizable),
            None => minimal_symmetrizer(size, &b).map_err(|_| Error::NotSkewSymmetrizable)?,
        };
        let m = ExchangeMatrix { n, size, b, d };
        if !m.is_skew_symmetrizable() {
            return Err(Error::NotSkewSymmetrizable);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn d(&self) -> &[u64] {
        &self.d
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// `D*B` is skew-symmetric with zero diagonal.
    pub fn is_skew_symmetrizable(&self) -> bool {
        (0..self.size).all(|i| {
            self.get(i, i) == 0
                && (0..self.size).all(|j| {
                    self.d[i] as i128 * self.get(i, j) as i128
                        == -(self.d[j] as i128 * self.get(j, i) as i128)
                })
        })
    }

    /// Matrix mutation in direction `k`, written directly from the entrywise rule.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        if k >= self.n {
            return Err(Error::NotExchangeable { vertex: k + 1, rank: self.n });
        }
        let mut out = self.clone();
        for i in 0..self.size {
            for j in 0..self.size {
                let v = if i == k || j == k {
                    -self.get(i, j)
                } else {
                    let bik = self.get(i, k);
                    let prod = bik.checked_mul(self.get(k, j)).ok_or(Error::Overflow)?;
                    self.get(i, j) + bik.signum() * prod.max(0)
                };
                out.b[i * self.size + j] = v;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> ExchangeMatrix {
        ExchangeMatrix { b: self.b.iter().map(|x| -x).collect(), ..self.clone() }
    }
}

impl ValuedQuiver {
    pub fn to_matrix(&self) -> ExchangeMatrix {
        ExchangeMatrix { n: self.n(), size: self.size(), b: self.raw().to_vec(), d: self.d().to_vec() }
    }

    pub fn from_matrix(mat: &ExchangeMatrix) -> Result<ValuedQuiver> {
        if !mat.is_skew_symmetrizable() {
            return Err(Error::NotSkewSymmetrizable);
        }
        Ok(ValuedQuiver::from_parts(mat.n, mat.size - mat.n, mat.b.clone(), mat.d.clone()))
    }
}
