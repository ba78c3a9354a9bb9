// SPDX-License-Identifier: MIT OR Apache-2.0

//! Cholesky kernel for small dense symmetric positive definite matrices.

use crate::error::{Error, Result};

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(r);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn add_diagonal(&mut self, v: f64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SymMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Lower-triangular factor `L` with `A = L L^T`, stored row-major.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Factors `a`, reading only its lower triangle.
    pub fn new(a: &SymMatrix) -> Result<Self> {
        let n = a.n;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::NotPositiveDefinite { pivot: j });
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        Ok(Self { n, l })
    }

    pub fn log_det(&self) -> f64 {
        2.0 * (0..self.n)
            .map(|i| self.l[i * self.n + i].ln())
            .sum::<f64>()
    }

    /// `tr(A^-1) = ||L^-1||_F^2`, column by column via forward substitution.
    pub fn inverse_trace(&self) -> f64 {
        let n = self.n;
        let mut col = vec![0.0; n];
        let mut total = 0.0;
        for j in 0..n {
            // solve L y = e_j; y[i] = 0 for i < j
            for i in j..n {
                let dot: f64 = self.l[i * n + j..i * n + i]
                    .iter()
                    .zip(&col[j..i])
                    .map(|(a, b)| a * b)
                    .sum();
                let s = if i == j { 1.0 } else { 0.0 } - dot;
                col[i] = s / self.l[i * n + i];
                total += col[i] * col[i];
            }
        }
        total
    }
}

pub fn logdet_spd(a: &SymMatrix) -> Result<f64> {
    Ok(Cholesky::new(a)?.log_det())
}

pub fn inverse_trace_spd(a: &SymMatrix) -> Result<f64> {
    Ok(Cholesky::new(a)?.inverse_trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cofactor expansion along the first row.
    fn det_oracle(m: &[Vec<f64>]) -> f64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != c)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * det_oracle(&minor)
            })
            .sum()
    }

    /// Trace of the inverse from the adjugate: sum of principal minors / det.
    fn inverse_trace_oracle(m: &[Vec<f64>]) -> f64 {
        let n = m.len();
        let det = det_oracle(m);
        (0..n)
            .map(|i| {
                let minor: Vec<Vec<f64>> = m
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != i)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != i)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                if minor.is_empty() {
                    1.0
                } else {
                    det_oracle(&minor)
                }
            })
            .sum::<f64>()
            / det
    }

    fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
        let b: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let dot: f64 = (0..n).map(|k| b[i][k] * b[j][k]).sum();
                        dot + if i == j { 0.5 } else { 0.0 }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity() {
        let a = SymMatrix::identity(3);
        assert_eq!(logdet_spd(&a).unwrap(), 0.0);
        assert_eq!(inverse_trace_spd(&a).unwrap(), 3.0);
    }

    #[test]
    fn diagonal() {
        let a = SymMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 2.0]]);
        assert_relative_eq!(logdet_spd(&a).unwrap(), 2.0 * 2f64.ln(), epsilon = 1e-15);
        assert_relative_eq!(inverse_trace_spd(&a).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_indefinite() {
        let a = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert_eq!(
            logdet_spd(&a).unwrap_err(),
            Error::NotPositiveDefinite { pivot: 1 }
        );
        let z = SymMatrix::zeros(2);
        assert_eq!(
            inverse_trace_spd(&z).unwrap_err(),
            Error::NotPositiveDefinite { pivot: 0 }
        );
    }

    #[test]
    fn matches_cofactor_oracle_on_random_spd() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..40 {
                let rows = random_spd(&mut rng, n);
                let a = SymMatrix::from_rows(&rows);
                let det = det_oracle(&rows);
                assert_relative_eq!(
                    logdet_spd(&a).unwrap(),
                    det.ln(),
                    max_relative = 1e-9,
                    epsilon = 1e-12
                );
                assert_relative_eq!(
                    inverse_trace_spd(&a).unwrap(),
                    inverse_trace_oracle(&rows),
                    max_relative = 1e-9
                );
            }
        }
    }
}
