//! Tridiagonal matrices and the Thomas algorithm.

use crate::error::{invalid, Error, Result};

/// Pivots smaller than this in magnitude abort the elimination.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// Square tridiagonal matrix of size `m`.
///
/// `lower[i]` sits at row `i + 1`, column `i`; `upper[i]` at row `i`,
/// column `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    lower: Vec<f64>,
    main: Vec<f64>,
    upper: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(lower: Vec<f64>, main: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let m = main.len();
        if m == 0 {
            return Err(invalid("tridiagonal system must have size at least 1"));
        }
        if lower.len() != m - 1 || upper.len() != m - 1 {
            return Err(invalid(format!(
                "off-diagonals must have length {}, got {} and {}",
                m - 1,
                lower.len(),
                upper.len()
            )));
        }
        Ok(Self { lower, main, upper })
    }

    /// `tridiag(lower, main, upper)` with constant diagonals.
    pub fn constant(m: usize, lower: f64, main: f64, upper: f64) -> Result<Self> {
        if m == 0 {
            return Err(invalid("tridiagonal system must have size at least 1"));
        }
        Ok(Self {
            lower: vec![lower; m - 1],
            main: vec![main; m],
            upper: vec![upper; m - 1],
        })
    }

    pub fn size(&self) -> usize {
        self.main.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn main(&self) -> &[f64] {
        &self.main
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Entry `(i, j)`, zero outside the band.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.main[i]
        } else if i == j + 1 {
            self.lower[j]
        } else if j == i + 1 {
            self.upper[i]
        } else {
            0.0
        }
    }

    /// Entrywise linear combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.size() != other.size() {
            return Err(invalid("cannot combine tridiagonal systems of different size"));
        }
        let mix = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(x, y)| a * x + b * y).collect();
        Ok(Self {
            lower: mix(&self.lower, &other.lower),
            main: mix(&self.main, &other.main),
            upper: mix(&self.upper, &other.upper),
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let m = self.size();
        if v.len() != m {
            return Err(invalid(format!("vector length {} does not match size {m}", v.len())));
        }
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let mut s = self.main[i] * v[i];
            if i > 0 {
                s += self.lower[i - 1] * v[i - 1];
            }
            if i + 1 < m {
                s += self.upper[i] * v[i + 1];
            }
            out.push(s);
        }
        Ok(out)
    }

    /// Thomas forward elimination and back substitution, no pivoting.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let m = self.size();
        if rhs.len() != m {
            return Err(invalid(format!("rhs length {} does not match size {m}", rhs.len())));
        }
        let mut c = vec![0.0; m];
        let mut x = vec![0.0; m];

        let mut pivot = self.main[0];
        if pivot.abs() < PIVOT_FLOOR {
            return Err(Error::SingularSystem { row: 0 });
        }
        if m > 1 {
            c[0] = self.upper[0] / pivot;
        }
        x[0] = rhs[0] / pivot;
        for i in 1..m {
            pivot = self.main[i] - self.lower[i - 1] * c[i - 1];
            if pivot.abs() < PIVOT_FLOOR || !pivot.is_finite() {
                return Err(Error::SingularSystem { row: i });
            }
            if i + 1 < m {
                c[i] = self.upper[i] / pivot;
            }
            x[i] = (rhs[i] - self.lower[i - 1] * x[i - 1]) / pivot;
        }
        for i in (0..m - 1).rev() {
            x[i] -= c[i] * x[i + 1];
        }
        Ok(x)
    }

    /// Row-wise strict diagonal dominance check `|main| > |lower| + |upper|`
    /// (`>=` when `weak`).
    pub fn is_diagonally_dominant(&self, weak: bool) -> bool {
        (0..self.size()).all(|i| {
            let off = if i > 0 { self.lower[i - 1].abs() } else { 0.0 }
                + if i + 1 < self.size() { self.upper[i].abs() } else { 0.0 };
            if weak {
                self.main[i].abs() >= off
            } else {
                self.main[i].abs() > off
            }
        })
    }
}
