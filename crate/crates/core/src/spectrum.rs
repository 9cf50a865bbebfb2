//! Cyclic-metric constraint systems on block gradings, order-3 automorphisms
//! and flat sections.
//!
//! A grading splits `m` into blocks `m_1 ⊕ … ⊕ m_r` on which the Killing form
//! is definite with sign `ε_a`. Metrics of the form `Σ λ_a B|_{m_a}` are
//! positive exactly when `λ_a ε_a > 0`, and cyclic exactly when
//! `λ_a + λ_b + λ_c = 0` on every block triple carrying a bracket component.

use std::collections::BTreeSet;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::lie::{gram_schmidt, LieAlgebra};
use crate::metric::InvariantMetric;
use crate::reductive::{HomogeneousSpace, ReductiveDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockGrading {
    /// Algebra indices of each block; together they form `m`.
    pub blocks: Vec<Vec<usize>>,
    /// Sign of the Killing form on each block.
    pub signs: Vec<i8>,
}

impl BlockGrading {
    pub fn new(blocks: Vec<Vec<usize>>, signs: Vec<i8>) -> Result<Self> {
        if blocks.len() != signs.len() {
            return Err(GeoError::InvalidGrading(format!(
                "{} blocks but {} signs",
                blocks.len(),
                signs.len()
            )));
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(GeoError::InvalidGrading(format!("sign {s} is not ±1")));
        }
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(GeoError::InvalidGrading("empty block".into()));
        }
        let mut seen = BTreeSet::new();
        for &i in blocks.iter().flatten() {
            if !seen.insert(i) {
                return Err(GeoError::InvalidGrading(format!("index {i} in two blocks")));
            }
        }
        Ok(Self { blocks, signs })
    }

    /// Indices of `m`, blocks concatenated in order.
    pub fn m_indices(&self) -> Vec<usize> {
        self.blocks.concat()
    }

    /// Remaining algebra indices, ascending.
    pub fn k_indices(&self, dim: usize) -> Vec<usize> {
        let m: BTreeSet<usize> = self.blocks.iter().flatten().copied().collect();
        (0..dim).filter(|i| !m.contains(i)).collect()
    }

    fn block_of(&self, dim: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; dim];
        for (a, b) in self.blocks.iter().enumerate() {
            for &i in b {
                out[i] = Some(a);
            }
        }
        out
    }
}

/// Block triple `a ≤ b ≤ c` and its linear constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub triple: [usize; 3],
    /// Coefficients of `λ`: multiplicities of each block in the triple.
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// No admissible `λ`.
    Empty,
    /// A single admissible ray.
    Ray,
    /// An open cone of dimension at least 2.
    Cone,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicSolution {
    pub constraints: Vec<Constraint>,
    /// Columns spanning `{λ : constraints hold}`, one `Vec` per column.
    pub family_basis: Vec<Vec<f64>>,
    /// Extreme rays of the closed sign chamber inside the family.
    pub extreme_rays: Vec<Vec<f64>>,
    pub kind: FamilyKind,
    /// Dimension of the admissible open cone (0 when empty).
    pub parameters: usize,
    /// An admissible `λ`, when one exists.
    pub witness: Option<Vec<f64>>,
    pub signs: Vec<i8>,
}

impl CyclicSolution {
    /// `λ_a ε_a > 0` for every block and every constraint holds within `tol`.
    pub fn admits(&self, lambda: &[f64], tol: f64) -> bool {
        lambda.len() == self.signs.len()
            && lambda
                .iter()
                .zip(&self.signs)
                .all(|(l, &s)| l * f64::from(s) > 0.0)
            && self.constraints.iter().all(|c| {
                c.coefficients
                    .iter()
                    .zip(lambda)
                    .map(|(a, l)| a * l)
                    .sum::<f64>()
                    .abs()
                    <= tol
            })
    }
}

/// Validate a grading against the Killing form of `algebra`.
pub fn check_grading(algebra: &LieAlgebra, grading: &BlockGrading, tol: f64) -> Result<()> {
    let dim = algebra.dim();
    if let Some(&i) = grading.blocks.iter().flatten().find(|&&i| i >= dim) {
        return Err(GeoError::IndexOutOfRange { index: i, dim });
    }
    let b = algebra.killing_form();
    let m = grading.m_indices();
    let bm = DMatrix::from_fn(m.len(), m.len(), |x, y| b[(m[x], m[y])]);
    let scale = bm.amax().max(1.0);
    let smallest = bm
        .symmetric_eigenvalues()
        .iter()
        .fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
    if smallest <= tol * scale {
        return Err(GeoError::DegenerateKillingForm);
    }
    for (a, (block, &sign)) in grading.blocks.iter().zip(&grading.signs).enumerate() {
        let bb = DMatrix::from_fn(block.len(), block.len(), |x, y| b[(block[x], block[y])]);
        let ev = bb.symmetric_eigenvalues();
        if !ev.iter().all(|v| v * f64::from(sign) > tol * scale) {
            return Err(GeoError::BlockSignMismatch { block: a, sign });
        }
    }
    Ok(())
}

/// Block triples with a nonzero bracket component, as sorted triples.
pub fn active_triples(algebra: &LieAlgebra, grading: &BlockGrading, tol: f64) -> Vec<[usize; 3]> {
    let block = grading.block_of(algebra.dim());
    let m = grading.m_indices();
    let mut out = BTreeSet::new();
    for &i in &m {
        for &j in &m {
            for &l in &m {
                if algebra.c(i, j, l).abs() > tol {
                    let mut t = [block[i].unwrap(), block[j].unwrap(), block[l].unwrap()];
                    t.sort_unstable();
                    out.insert(t);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn null_space(rows: &[Vec<f64>], r: usize, tol: f64) -> DMatrix<f64> {
    if rows.is_empty() {
        return DMatrix::identity(r, r);
    }
    let a = DMatrix::from_fn(rows.len(), r, |i, j| rows[i][j]);
    let ata = a.transpose() * &a;
    let eig = ata.symmetric_eigen();
    let cols: Vec<DVector<f64>> = (0..r)
        .filter(|&i| eig.eigenvalues[i].abs() <= tol)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(r, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Extreme rays of `{t : M t ≥ 0}` for `M` of full column rank.
fn extreme_rays(mat: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let k = mat.ncols();
    let rows = mat.nrows();
    let feasible = |t: &DVector<f64>| (mat * t).iter().all(|v| *v >= -tol);
    let mut rays: Vec<DVector<f64>> = Vec::new();
    let push = |t: DVector<f64>, rays: &mut Vec<DVector<f64>>| {
        let t = &t / t.norm();
        if !rays.iter().any(|r| (r - &t).norm() <= 1e-9) {
            rays.push(t);
        }
    };
    if k == 0 {
        return rays;
    }
    for subset in (0..rows).combinations(k - 1) {
        let dir = if k == 1 {
            DVector::from_element(1, 1.0)
        } else {
            let sub = DMatrix::from_fn(k - 1, k, |i, j| mat[(subset[i], j)]);
            let ns = null_space(
                &(0..k - 1).map(|i| sub.row(i).iter().copied().collect()).collect::<Vec<_>>(),
                k,
                1e-12,
            );
            if ns.ncols() != 1 {
                continue;
            }
            ns.column(0).into_owned()
        };
        for s in [1.0, -1.0] {
            let t = &dir * s;
            if feasible(&t) {
                push(t, &mut rays);
            }
        }
    }
    rays
}

/// Solve the cyclic constraint system of `grading` on `algebra`.
pub fn solve_cyclic(algebra: &LieAlgebra, grading: &BlockGrading, tol: f64) -> Result<CyclicSolution> {
    check_grading(algebra, grading, tol)?;
    let r = grading.blocks.len();
    let constraints: Vec<Constraint> = active_triples(algebra, grading, tol)
        .into_iter()
        .map(|t| {
            let mut coefficients = vec![0.0; r];
            for a in t {
                coefficients[a] += 1.0;
            }
            Constraint { triple: t, coefficients }
        })
        .collect();
    let rows: Vec<Vec<f64>> = constraints.iter().map(|c| c.coefficients.clone()).collect();
    let n = null_space(&rows, r, 1e-10);
    let k = n.ncols();
    let eps = DMatrix::from_diagonal(&DVector::from_iterator(
        r,
        grading.signs.iter().map(|&s| f64::from(s)),
    ));
    let chamber = &eps * &n;
    let rays = extreme_rays(&chamber, 1e-10);
    let sum = rays
        .iter()
        .fold(DVector::zeros(k), |acc: DVector<f64>, t| acc + t);
    let interior = k > 0 && !rays.is_empty() && (&chamber * &sum).iter().all(|v| *v > 1e-10);
    let witness = interior.then(|| {
        let l = &n * &sum;
        let scale = l.amax();
        (l / scale).as_slice().to_vec()
    });
    let kind = match (interior, k) {
        (false, _) => FamilyKind::Empty,
        (true, 1) => FamilyKind::Ray,
        (true, _) => FamilyKind::Cone,
    };
    Ok(CyclicSolution {
        constraints,
        family_basis: n.column_iter().map(|c| c.iter().copied().collect()).collect(),
        extreme_rays: rays.iter().map(|t| (&n * t).as_slice().to_vec()).collect(),
        kind,
        parameters: if interior { k } else { 0 },
        witness,
        signs: grading.signs.clone(),
    })
}

/// The homogeneous space `(g, k ⊕ m)` with metric `Σ λ_a B|_{m_a}`.
pub fn graded_space(
    algebra: &LieAlgebra,
    grading: &BlockGrading,
    lambda: &[f64],
    tol: f64,
) -> Result<HomogeneousSpace> {
    if lambda.len() != grading.blocks.len() {
        return Err(GeoError::DimensionMismatch {
            expected: grading.blocks.len(),
            got: lambda.len(),
        });
    }
    let b = algebra.killing_form();
    let m = grading.m_indices();
    let block = grading.block_of(algebra.dim());
    let g = DMatrix::from_fn(m.len(), m.len(), |x, y| {
        match (block[m[x]], block[m[y]]) {
            (Some(a), Some(c)) if a == c => lambda[a] * b[(m[x], m[y])],
            _ => 0.0,
        }
    });
    let dec = ReductiveDecomposition::new(algebra.clone(), grading.k_indices(algebra.dim()), m, tol)?;
    HomogeneousSpace::new(dec, InvariantMetric::new(g)?, tol)
}

/// An automorphism of order exactly three.
#[derive(Debug, Clone, PartialEq)]
pub struct Order3Automorphism {
    theta: DMatrix<f64>,
}

impl Order3Automorphism {
    pub fn new(algebra: &LieAlgebra, theta: DMatrix<f64>, tol: f64) -> Result<Self> {
        let d = algebra.dim();
        if theta.nrows() != d || theta.ncols() != d {
            return Err(GeoError::DimensionMismatch {
                expected: d,
                got: theta.nrows(),
            });
        }
        let id = DMatrix::<f64>::identity(d, d);
        let cube = (&theta * &theta * &theta - &id).amax();
        if cube > tol {
            return Err(GeoError::NotOrder3 { residual: cube });
        }
        if (&theta - &id).amax() <= tol {
            return Err(GeoError::NotOrder3 { residual: 0.0 });
        }
        let residual = automorphism_residual(algebra, &theta);
        if residual > tol {
            return Err(GeoError::NotAutomorphism { residual });
        }
        Ok(Self { theta })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.theta
    }
}

/// max |θ[e_i,e_j] − [θe_i,θe_j]|
pub fn automorphism_residual(algebra: &LieAlgebra, theta: &DMatrix<f64>) -> f64 {
    let d = algebra.dim();
    let mut worst = 0.0_f64;
    for i in 0..d {
        for j in i + 1..d {
            let (ei, ej) = (algebra.basis_vector(i), algebra.basis_vector(j));
            let lhs = theta * algebra.bracket(&ei, &ej);
            let rhs = algebra.bracket(&(theta * ei), &(theta * ej));
            worst = worst.max((lhs - rhs).amax());
        }
    }
    worst
}

#[derive(Debug, Clone)]
pub struct ThetaSplit {
    /// Basis of `k = Im φ` (columns, original coordinates).
    pub k_basis: DMatrix<f64>,
    /// Basis of `m = Ker φ` (columns, original coordinates).
    pub m_basis: DMatrix<f64>,
    /// Algebra in the basis `(k_basis, m_basis)`, with `k` first.
    pub decomposition: ReductiveDecomposition,
    /// `J = (2θ|_m + Id)/√3` in the `m_basis` coordinates.
    pub j: DMatrix<f64>,
    /// max |J² + Id|
    pub j_squared_residual: f64,
    /// max ‖[J, ad_k|_m]‖
    pub j_commutator_residual: f64,
}

/// Split `g = k ⊕ m` along the fixed points of `θ`.
pub fn theta_split(algebra: &LieAlgebra, theta: &Order3Automorphism, tol: f64) -> Result<ThetaSplit> {
    let d = algebra.dim();
    let t = theta.matrix();
    let id = DMatrix::<f64>::identity(d, d);
    let phi = &id + t + t * t;
    let pk = &phi / 3.0;
    let pm = &id - &pk;
    let cols = |p: &DMatrix<f64>| -> Vec<DVector<f64>> { p.column_iter().map(|c| c.into_owned()).collect() };
    // pick independent projected columns, in order, then orthonormalise only for the rank test
    let pick = |p: &DMatrix<f64>| -> Vec<DVector<f64>> {
        let mut chosen: Vec<DVector<f64>> = Vec::new();
        for c in cols(p) {
            let mut trial = chosen.clone();
            trial.push(c.clone());
            if gram_schmidt(&trial, trial.len(), 1e-9).len() == trial.len() {
                chosen.push(c);
            }
        }
        chosen
    };
    let kb = pick(&pk);
    let mb = pick(&pm);
    if kb.len() + mb.len() != d || mb.is_empty() {
        return Err(GeoError::InvalidBasis(format!(
            "fixed space {} + complement {} ≠ {d}",
            kb.len(),
            mb.len()
        )));
    }
    let all: Vec<DVector<f64>> = kb.iter().chain(&mb).cloned().collect();
    let p = DMatrix::from_columns(&all);
    let q = kb.len();
    let label = |v: &DVector<f64>, fallback: String| -> String {
        let big: Vec<usize> = (0..d).filter(|&i| v[i].abs() > 1e-12).collect();
        match big[..] {
            [i] if (v[i] - 1.0).abs() <= 1e-12 => algebra.labels()[i].clone(),
            _ => fallback,
        }
    };
    let labels = kb
        .iter()
        .enumerate()
        .map(|(i, v)| label(v, format!("k{i}")))
        .chain(mb.iter().enumerate().map(|(i, v)| label(v, format!("m{i}"))))
        .collect();
    let changed = algebra.change_basis(&p, Some(labels), tol * 1e3)?;
    let dec = ReductiveDecomposition::new(changed, (0..q).collect(), (q..d).collect(), tol)?;
    let p_inv = p.clone().try_inverse().ok_or_else(|| GeoError::InvalidBasis("singular split".into()))?;
    let t_new = &p_inv * t * &p;
    let n = d - q;
    let theta_m = t_new.view((q, q), (n, n)).into_owned();
    let j = (theta_m * 2.0 + DMatrix::identity(n, n)) / 3f64.sqrt();
    let j_squared_residual = (&j * &j + DMatrix::identity(n, n)).amax();
    let alg = dec.algebra();
    let j_commutator_residual = (0..q)
        .map(|r| {
            let ad = DMatrix::from_fn(n, n, |c, b| alg.c(r, q + b, q + c));
            (&j * &ad - &ad * &j).amax()
        })
        .fold(0.0, f64::max);
    Ok(ThetaSplit {
        k_basis: if kb.is_empty() { DMatrix::zeros(d, 0) } else { DMatrix::from_columns(&kb) },
        m_basis: DMatrix::from_columns(&mb),
        decomposition: dec,
        j,
        j_squared_residual,
        j_commutator_residual,
    })
}

/// Indices `(i, j)` of a commuting pair among eigenvectors `e_i` of a
/// derivation restricted to `D`. Such a pair always exists when `Σλ_i ≠ 0`.
pub fn flat_section_witness(
    algebra: &LieAlgebra,
    eigen: &[(f64, DVector<f64>)],
    tol: f64,
) -> Result<(usize, usize)> {
    for (i, j) in (0..eigen.len()).tuple_combinations() {
        algebra.check_len(eigen[i].1.len())?;
        if algebra.bracket(&eigen[i].1, &eigen[j].1).amax() <= tol {
            return Ok((i, j));
        }
    }
    Err(GeoError::NoWitness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{milnor_algebra, solvable_algebra, Bracket, DEFAULT_TOL};
    use crate::structure::classify;

    fn su2() -> LieAlgebra {
        milnor_algebra([1.0, 1.0, 1.0])
    }

    #[test]
    fn grading_validation() {
        assert!(matches!(
            BlockGrading::new(vec![vec![0], vec![0]], vec![-1, -1]),
            Err(GeoError::InvalidGrading(_))
        ));
        assert!(BlockGrading::new(vec![vec![0]], vec![2]).is_err());
        let g = BlockGrading::new(vec![vec![0, 1]], vec![1]).unwrap();
        assert_eq!(
            solve_cyclic(&su2(), &g, DEFAULT_TOL).unwrap_err(),
            GeoError::BlockSignMismatch { block: 0, sign: 1 }
        );
        let h3 = milnor_algebra([0.0, 0.0, 1.0]);
        let g = BlockGrading::new(vec![vec![0, 1, 2]], vec![1]).unwrap();
        assert_eq!(solve_cyclic(&h3, &g, DEFAULT_TOL).unwrap_err(), GeoError::DegenerateKillingForm);
    }

    #[test]
    fn symmetric_pair_has_no_constraints() {
        // su(2) with k = span{e3}, m = span{e1, e2}: [m,m] ⊂ k
        let g = BlockGrading::new(vec![vec![0, 1]], vec![-1]).unwrap();
        let s = solve_cyclic(&su2(), &g, DEFAULT_TOL).unwrap();
        assert!(s.constraints.is_empty());
        assert_eq!(s.kind, FamilyKind::Ray);
        assert!(s.admits(&[-3.0], DEFAULT_TOL));
    }

    #[test]
    fn compact_three_blocks_are_infeasible() {
        let g = BlockGrading::new(vec![vec![0], vec![1], vec![2]], vec![-1, -1, -1]).unwrap();
        let s = solve_cyclic(&su2(), &g, DEFAULT_TOL).unwrap();
        assert_eq!(s.constraints.len(), 1);
        assert_eq!(s.constraints[0].triple, [0, 1, 2]);
        assert_eq!(s.kind, FamilyKind::Empty);
        assert!(s.witness.is_none());
    }

    #[test]
    fn split_sl2_three_blocks_is_a_cone() {
        // sl(2,ℝ) as Milnor (1, 1, −1); block signs read off the Killing form
        let alg = milnor_algebra([1.0, 1.0, -1.0]);
        let b = alg.killing_form();
        let signs: Vec<i8> = (0..3).map(|i| if b[(i, i)] > 0.0 { 1 } else { -1 }).collect();
        let g = BlockGrading::new(vec![vec![0], vec![1], vec![2]], signs).unwrap();
        let s = solve_cyclic(&alg, &g, DEFAULT_TOL).unwrap();
        assert_eq!(s.kind, FamilyKind::Cone);
        assert_eq!(s.parameters, 2);
        let w = s.witness.clone().unwrap();
        assert!(s.admits(&w, 1e-12));
        let space = graded_space(&alg, &g, &w, DEFAULT_TOL).unwrap();
        assert!(classify(&space).flags.cyclic);
        let mut off = w.clone();
        off[0] += 10.0 * DEFAULT_TOL.max(1e-6);
        let space = graded_space(&alg, &g, &off, DEFAULT_TOL).unwrap();
        assert!(!classify(&space).flags.cyclic);
    }

    #[test]
    fn theta_split_on_su2() {
        let c = (2.0 * std::f64::consts::PI / 3.0).cos();
        let s = (2.0 * std::f64::consts::PI / 3.0).sin();
        let theta = DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]);
        let alg = su2();
        let th = Order3Automorphism::new(&alg, theta, 1e-12).unwrap();
        let split = theta_split(&alg, &th, DEFAULT_TOL).unwrap();
        assert_eq!(split.k_basis.ncols(), 1);
        assert!((split.k_basis.column(0).normalize().abs() - DVector::from_vec(vec![0.0, 0.0, 1.0])).amax() < 1e-12);
        assert_eq!(split.m_basis.ncols(), 2);
        assert!(split.j_squared_residual < 1e-12);
        assert!(split.j_commutator_residual < 1e-12);
        // J rotates by a quarter turn
        let j = &split.j;
        assert!(j.trace().abs() < 1e-12 && (j.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn order3_errors() {
        let alg = su2();
        assert!(matches!(
            Order3Automorphism::new(&alg, DMatrix::identity(3, 3), 1e-12),
            Err(GeoError::NotOrder3 { .. })
        ));
        let flip = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 1.0]));
        assert!(matches!(
            Order3Automorphism::new(&alg, flip, 1e-12),
            Err(GeoError::NotOrder3 { .. })
        ));
        // cyclic permutation of coordinates is an automorphism of su(2) only
        // when the structure is symmetric; break it with Milnor (1, 2, 3)
        let perm = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(Order3Automorphism::new(&alg, perm.clone(), 1e-12).is_ok());
        assert!(matches!(
            Order3Automorphism::new(&milnor_algebra([1.0, 2.0, 3.0]), perm, 1e-12),
            Err(GeoError::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn flat_sections() {
        let ab = LieAlgebra::abelian(3);
        let e = |alg: &LieAlgebra, i| alg.basis_vector(i);
        assert_eq!(
            flat_section_witness(&ab, &[(1.0, e(&ab, 0)), (2.0, e(&ab, 1))], DEFAULT_TOL).unwrap(),
            (0, 1)
        );
        let g3 = solvable_algebra(&[1.0, 2.0]);
        assert_eq!(
            flat_section_witness(&g3, &[(1.0, e(&g3, 1)), (2.0, e(&g3, 2))], DEFAULT_TOL).unwrap(),
            (0, 1)
        );
        // D = span{e1, e2} of ℝ ⋉ h3 with weights (1, −1): [e1, e2] = e3
        let alg = LieAlgebra::new(
            4,
            None,
            [
                Bracket::new(0, 1, [(1, 1.0)]),
                Bracket::new(0, 2, [(2, -1.0)]),
                Bracket::new(1, 2, [(3, 1.0)]),
            ],
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(
            flat_section_witness(&alg, &[(1.0, e(&alg, 1)), (-1.0, e(&alg, 2))], DEFAULT_TOL).unwrap_err(),
            GeoError::NoWitness
        );
    }
}
