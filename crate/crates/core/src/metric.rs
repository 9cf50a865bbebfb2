use nalgebra::{DMatrix, DVector};

use crate::error::{GeoError, Result};

/// A symmetric positive-definite inner product on `m`, in the coordinates
/// given by the decomposition's `m` index order.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMetric {
    matrix: DMatrix<f64>,
    /// Columns form a `⟨·,·⟩`-orthonormal basis of `m`.
    frame: DMatrix<f64>,
}

impl InvariantMetric {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(GeoError::MetricNotPositiveDefinite);
        }
        let scale = matrix.amax().max(1.0);
        if (&matrix - matrix.transpose()).amax() > 1e-12 * scale {
            return Err(GeoError::MetricNotPositiveDefinite);
        }
        let chol = matrix
            .clone()
            .cholesky()
            .ok_or(GeoError::MetricNotPositiveDefinite)?;
        // G = L Lᵀ, so E = L⁻ᵀ satisfies Eᵀ G E = I
        let l_inv = chol
            .l()
            .try_inverse()
            .ok_or(GeoError::MetricNotPositiveDefinite)?;
        Ok(Self {
            frame: l_inv.transpose(),
            matrix,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(DMatrix::identity(n, n)).expect("identity is positive definite")
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.matrix * y)[(0, 0)]
    }

    /// `t · metric`
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(&self.matrix * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_is_orthonormal() {
        let g = DMatrix::from_row_slice(3, 3, &[2.0, 0.5, 0.0, 0.5, 1.0, 0.2, 0.0, 0.2, 3.0]);
        let m = InvariantMetric::new(g.clone()).unwrap();
        let e = m.frame();
        assert!((e.transpose() * &g * e - DMatrix::identity(3, 3)).amax() < 1e-12);
    }

    #[test]
    fn rejects_indefinite_and_asymmetric() {
        assert_eq!(
            InvariantMetric::diagonal(&[1.0, -1.0]).unwrap_err(),
            GeoError::MetricNotPositiveDefinite
        );
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.0, 1.0]);
        assert!(InvariantMetric::new(g).is_err());
    }
}
