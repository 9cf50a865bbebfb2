//! Dense rank-3 and rank-4 arrays over an n-dimensional space.
//!
//! Components are stored row-major, `t[(a, b, c)]` at `(a * n + b) * n + c`.
//! All tensors handled by the crate are expressed in an orthonormal frame,
//! so the natural inner product is the plain Frobenius one.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor3 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t[(a, b, c)] = f(a, b, c);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(x, y)| x * y).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// max |t_abc + t_acb|
    pub fn last_pair_symmetric_part(&self) -> f64 {
        let n = self.n;
        let mut r = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    r = r.max((self[(a, b, c)] + self[(a, c, b)]).abs());
                }
            }
        }
        r
    }

    /// max |t_abc + t_bac|
    pub fn first_pair_symmetric_part(&self) -> f64 {
        let n = self.n;
        let mut r = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    r = r.max((self[(a, b, c)] + self[(b, a, c)]).abs());
                }
            }
        }
        r
    }

    /// The cyclic sum `t_abc + t_bca + t_cab`.
    pub fn cyclic_sum(&self) -> Self {
        Self::from_fn(self.n, |a, b, c| {
            self[(a, b, c)] + self[(b, c, a)] + self[(c, a, b)]
        })
    }

    /// Contraction over the first two slots, `Σ_i t_{i i c}`.
    pub fn trace12(&self) -> Vec<f64> {
        (0..self.n)
            .map(|c| (0..self.n).map(|i| self[(i, i, c)]).sum())
            .collect()
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = f64;
    #[inline]
    fn index(&self, (a, b, c): (usize, usize, usize)) -> &f64 {
        &self.data[(a * self.n + b) * self.n + c]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    #[inline]
    fn index_mut(&mut self, (a, b, c): (usize, usize, usize)) -> &mut f64 {
        &mut self.data[(a * self.n + b) * self.n + c]
    }
}

impl Add for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        Tensor3 {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        Tensor3 {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul<f64> for &Tensor3 {
    type Output = Tensor3;
    fn mul(self, s: f64) -> Tensor3 {
        Tensor3 {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor4 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn from_blocks(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n * n * n);
        Self { n, data }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

impl Index<(usize, usize, usize, usize)> for Tensor4 {
    type Output = f64;
    #[inline]
    fn index(&self, (a, b, c, d): (usize, usize, usize, usize)) -> &f64 {
        &self.data[((a * self.n + b) * self.n + c) * self.n + d]
    }
}

impl IndexMut<(usize, usize, usize, usize)> for Tensor4 {
    #[inline]
    fn index_mut(&mut self, (a, b, c, d): (usize, usize, usize, usize)) -> &mut f64 {
        &mut self.data[((a * self.n + b) * self.n + c) * self.n + d]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_sum_of_totally_skew_is_three_times() {
        // Levi-Civita symbol in dimension 3
        let eps = Tensor3::from_fn(3, |a, b, c| {
            ((b as i64 - a as i64) * (c as i64 - a as i64) * (c as i64 - b as i64)) as f64 / 2.0
        });
        let cs = eps.cyclic_sum();
        assert_eq!(cs, &eps * 3.0);
        assert_eq!(eps.last_pair_symmetric_part(), 0.0);
        assert_eq!(eps.first_pair_symmetric_part(), 0.0);
    }

    #[test]
    fn trace12_contracts_first_pair() {
        let t = Tensor3::from_fn(2, |a, b, c| if a == b { (c + 1) as f64 } else { 5.0 });
        assert_eq!(t.trace12(), vec![2.0, 4.0]);
    }
}
