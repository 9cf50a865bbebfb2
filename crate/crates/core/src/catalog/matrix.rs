//! Matrix models of su(2,1), su(3) and sp(1,1) with their order-3 inner
//! automorphisms. Structure constants are extracted numerically from
//! commutators of explicit complex matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{GeoError, Result};
use crate::lie::LieAlgebra;

type CMat = DMatrix<Complex64>;

const TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit(n: usize, i: usize, j: usize, v: Complex64) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = v;
    m
}

fn flatten(m: &CMat) -> DVector<f64> {
    DVector::from_iterator(
        2 * m.len(),
        m.iter().map(|z| z.re).chain(m.iter().map(|z| z.im)),
    )
}

/// Real linear span of a list of complex matrices, with coordinate solves.
pub struct MatrixAlgebra {
    basis: Vec<CMat>,
    labels: Vec<String>,
    flat: DMatrix<f64>,
    pinv: DMatrix<f64>,
}

impl MatrixAlgebra {
    pub fn new(basis: Vec<CMat>, labels: Vec<String>) -> Result<Self> {
        let cols: Vec<DVector<f64>> = basis.iter().map(flatten).collect();
        let flat = DMatrix::from_columns(&cols);
        let pinv = flat
            .clone()
            .pseudo_inverse(1e-12)
            .map_err(|e| GeoError::InvalidBasis(e.to_string()))?;
        if (&pinv * &flat - DMatrix::identity(basis.len(), basis.len())).amax() > TOL {
            return Err(GeoError::InvalidBasis("matrix basis is linearly dependent".into()));
        }
        Ok(Self {
            basis,
            labels,
            flat,
            pinv,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Real coordinates of `m` in the basis; fails when `m` is outside the span.
    pub fn coordinates(&self, m: &CMat) -> Result<DVector<f64>> {
        let v = flatten(m);
        let x = &self.pinv * &v;
        let residual = (&self.flat * &x - v).amax();
        if residual > TOL {
            return Err(GeoError::InvalidBasis(format!(
                "matrix leaves the span (residual {residual:.2e})"
            )));
        }
        Ok(x)
    }

    pub fn lie_algebra(&self) -> Result<LieAlgebra> {
        let d = self.dim();
        let mut dense = vec![0.0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                let x = self.coordinates(&(a * b - b * a))?;
                for k in 0..d {
                    dense[(i * d + j) * d + k] = x[k];
                }
            }
        }
        LieAlgebra::from_dense(d, Some(self.labels.clone()), &dense, TOL)
    }

    /// Matrix of `X ↦ g X g⁻¹` in the basis.
    pub fn conjugation(&self, g: &CMat) -> Result<DMatrix<f64>> {
        let inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| GeoError::InvalidBasis("singular conjugator".into()))?;
        let cols = self
            .basis
            .iter()
            .map(|b| self.coordinates(&(g * b * &inv)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DMatrix::from_columns(&cols))
    }
}

/// An algebra with an order-3 automorphism and the index blocks of `m`.
pub struct ThreeSymmetricModel {
    pub algebra: LieAlgebra,
    pub theta: DMatrix<f64>,
    /// Algebra indices of each isotropy-irreducible block of `m`.
    pub blocks: Vec<Vec<usize>>,
    pub signs: Vec<i8>,
}

fn omega_conjugator() -> CMat {
    let w = 2.0 * std::f64::consts::PI / 3.0;
    CMat::from_diagonal(&DVector::from_vec(vec![
        c(1.0, 0.0),
        c(w.cos(), w.sin()),
        c((2.0 * w).cos(), (2.0 * w).sin()),
    ]))
}

/// `su(p, 3−p)` in the basis: torus, then the (1,2), (1,3), (2,3) root planes.
/// `noncompact[r]` selects the Hermitian form of root plane `r`.
fn su3_form(noncompact: [bool; 3]) -> Result<MatrixAlgebra> {
    let n = 3;
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let mut basis = vec![
        unit(n, 0, 0, i) - unit(n, 1, 1, i),
        unit(n, 1, 1, i) - unit(n, 2, 2, i),
    ];
    let mut labels = vec!["H1".to_string(), "H2".to_string()];
    for (r, (p, q)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        if noncompact[r] {
            basis.push(unit(n, p, q, one) + unit(n, q, p, one));
            basis.push(unit(n, p, q, i) - unit(n, q, p, i));
        } else {
            basis.push(unit(n, p, q, one) - unit(n, q, p, one));
            basis.push(unit(n, p, q, i) + unit(n, q, p, i));
        }
        labels.push(format!("X{}{}", p + 1, q + 1));
        labels.push(format!("Y{}{}", p + 1, q + 1));
    }
    MatrixAlgebra::new(basis, labels)
}

/// `su(2,1)` preserving `diag(1, 1, −1)`; blocks `V12` (compact), `V13`, `V23`.
pub fn su21() -> Result<ThreeSymmetricModel> {
    let m = su3_form([false, true, true])?;
    Ok(ThreeSymmetricModel {
        algebra: m.lie_algebra()?,
        theta: m.conjugation(&omega_conjugator())?,
        blocks: vec![vec![2, 3], vec![4, 5], vec![6, 7]],
        signs: vec![-1, 1, 1],
    })
}

/// Compact `su(3)` with the same torus and root planes.
pub fn su3() -> Result<ThreeSymmetricModel> {
    let m = su3_form([false, false, false])?;
    Ok(ThreeSymmetricModel {
        algebra: m.lie_algebra()?,
        theta: m.conjugation(&omega_conjugator())?,
        blocks: vec![vec![2, 3], vec![4, 5], vec![6, 7]],
        signs: vec![-1, -1, -1],
    })
}

/// Quaternion `a0 + a1 i + a2 j + a3 k` as a complex 2×2 matrix.
fn quaternion(q: [f64; 4]) -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[c(q[0], q[1]), c(q[2], q[3]), c(-q[2], q[3]), c(q[0], -q[1])],
    )
}

/// Place quaternion blocks into a 4×4 complex matrix `[[a, b], [c, d]]`.
fn quaternion_matrix(a: [f64; 4], b: [f64; 4], cq: [f64; 4], d: [f64; 4]) -> CMat {
    let mut m = CMat::zeros(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(&quaternion(a));
    m.view_mut((0, 2), (2, 2)).copy_from(&quaternion(b));
    m.view_mut((2, 0), (2, 2)).copy_from(&quaternion(cq));
    m.view_mut((2, 2), (2, 2)).copy_from(&quaternion(d));
    m
}

fn conj(q: [f64; 4]) -> [f64; 4] {
    [q[0], -q[1], -q[2], -q[3]]
}

/// `sp(1,1)`: quaternionic `[[a, b], [b̄, d]]` with `a, d` imaginary.
/// Basis order: `k = {a=i, d=i, d=j, d=k}`, `V = {a=j, a=k}`, `H = {b=1,i,j,k}`.
pub fn sp11() -> Result<ThreeSymmetricModel> {
    let z = [0.0; 4];
    let e = |i: usize| {
        let mut q = [0.0; 4];
        q[i] = 1.0;
        q
    };
    let mut basis = vec![quaternion_matrix(e(1), z, z, z)];
    for i in 1..4 {
        basis.push(quaternion_matrix(z, z, z, e(i)));
    }
    for i in 2..4 {
        basis.push(quaternion_matrix(e(i), z, z, z));
    }
    for i in 0..4 {
        basis.push(quaternion_matrix(z, e(i), conj(e(i)), z));
    }
    let labels = ["Ai", "Di", "Dj", "Dk", "Aj", "Ak", "B1", "Bi", "Bj", "Bk"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let m = MatrixAlgebra::new(basis, labels)?;
    let w = 2.0 * std::f64::consts::PI / 3.0;
    let g = quaternion_matrix([w.cos(), w.sin(), 0.0, 0.0], z, z, [1.0, 0.0, 0.0, 0.0]);
    Ok(ThreeSymmetricModel {
        algebra: m.lie_algebra()?,
        theta: m.conjugation(&g)?,
        blocks: vec![vec![4, 5], vec![6, 7, 8, 9]],
        signs: vec![-1, 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{automorphism_residual, Order3Automorphism};

    #[test]
    fn models_are_lie_algebras_with_order3_automorphisms() {
        for (model, dim) in [(su21().unwrap(), 8), (su3().unwrap(), 8), (sp11().unwrap(), 10)] {
            assert_eq!(model.algebra.dim(), dim);
            assert!(model.algebra.jacobi_residual() < 1e-12);
            assert!(automorphism_residual(&model.algebra, &model.theta) < 1e-12);
            assert!(Order3Automorphism::new(&model.algebra, model.theta.clone(), 1e-10).is_ok());
        }
    }

    #[test]
    fn killing_form_signs_match_blocks() {
        for model in [su21().unwrap(), su3().unwrap(), sp11().unwrap()] {
            let b = model.algebra.killing_form();
            for (block, &s) in model.blocks.iter().zip(&model.signs) {
                for &i in block {
                    assert!(b[(i, i)] * f64::from(s) > 0.0);
                }
            }
        }
    }

    #[test]
    fn su21_is_the_sign_flip_dual_of_su3() {
        // multiplying the (1,3) and (2,3) root planes of su(3) by i sends
        // (X, Y) to (Y', −X') in terms of the su(2,1) basis
        let su3 = su3().unwrap().algebra;
        let flipped = [false, false, false, false, true, true, true, true];
        let dual = su3.sign_flip_dual(&flipped, 1e-10).unwrap();
        let su21 = su21().unwrap().algebra;
        let mut p = DMatrix::identity(8, 8);
        for a in [4, 6] {
            p[(a, a)] = 0.0;
            p[(a + 1, a + 1)] = 0.0;
            p[(a + 1, a)] = 1.0;
            p[(a, a + 1)] = -1.0;
        }
        let su21_rebased = su21.change_basis(&p, None, 1e-10).unwrap();
        let diff = dual
            .structure_constants()
            .iter()
            .zip(su21_rebased.structure_constants())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-12, "{diff}");
    }
}
