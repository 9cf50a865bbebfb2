//! Reductive decompositions `g = k ⊕ m`, the canonical connection data and the
//! canonical foliation of a non-unimodular homogeneous space.
//!
//! A [`HomogeneousSpace`] rewrites the algebra in a basis whose `m`-part is
//! orthonormal for the metric (the *frame*). Tensors are reported in that
//! frame; covectors and vectors exposed in reports are converted back to the
//! caller's `m` coordinates.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::lie::{gram_schmidt, LieAlgebra, DEFAULT_TOL};
use crate::metric::InvariantMetric;
use crate::tensor::{Tensor3, Tensor4};

/// Residuals of the two reductivity conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductivityReport {
    /// max ‖[k_i, k_j]_m‖
    pub subalgebra_residual: f64,
    /// max ‖[k_i, m_j]_k‖
    pub reductive_residual: f64,
}

impl ReductivityReport {
    pub fn is_reductive(&self, tol: f64) -> bool {
        self.subalgebra_residual <= tol && self.reductive_residual <= tol
    }
}

/// An index split of the basis into isotropy `k` and complement `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductiveDecomposition {
    algebra: LieAlgebra,
    k: Vec<usize>,
    m: Vec<usize>,
    report: ReductivityReport,
}

impl ReductiveDecomposition {
    pub fn new(algebra: LieAlgebra, k: Vec<usize>, m: Vec<usize>, tol: f64) -> Result<Self> {
        let report = check_reductive(&algebra, &k, &m, tol)?;
        Ok(Self {
            algebra,
            k,
            m,
            report,
        })
    }

    /// Trivial isotropy: `k = 0`, `m = g`.
    pub fn lie_group(algebra: LieAlgebra) -> Self {
        let m = (0..algebra.dim()).collect();
        Self {
            algebra,
            k: Vec::new(),
            m,
            report: ReductivityReport {
                subalgebra_residual: 0.0,
                reductive_residual: 0.0,
            },
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn k_indices(&self) -> &[usize] {
        &self.k
    }

    pub fn m_indices(&self) -> &[usize] {
        &self.m
    }

    pub fn report(&self) -> ReductivityReport {
        self.report
    }
}

fn check_partition(dim: usize, k: &[usize], m: &[usize]) -> Result<()> {
    let mut seen = vec![false; dim];
    for &i in k.iter().chain(m) {
        if i >= dim {
            return Err(GeoError::IndexOutOfRange { index: i, dim });
        }
        if seen[i] {
            return Err(GeoError::InvalidPartition(format!("index {i} listed twice")));
        }
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(GeoError::InvalidPartition(format!("index {i} not covered")));
    }
    if m.is_empty() {
        return Err(GeoError::InvalidPartition("m must be nonempty".into()));
    }
    Ok(())
}

/// Validate the partition and measure `[k,k] ⊂ k`, `[k,m] ⊂ m`.
pub fn check_reductive(
    algebra: &LieAlgebra,
    k: &[usize],
    m: &[usize],
    tol: f64,
) -> Result<ReductivityReport> {
    check_partition(algebra.dim(), k, m)?;
    let component_norm = |i: usize, j: usize, onto: &[usize]| -> f64 {
        onto.iter()
            .map(|&l| algebra.c(i, j, l).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    let mut report = ReductivityReport {
        subalgebra_residual: 0.0,
        reductive_residual: 0.0,
    };
    for &a in k {
        for &b in k {
            report.subalgebra_residual = report.subalgebra_residual.max(component_norm(a, b, m));
        }
        for &x in m {
            report.reductive_residual = report.reductive_residual.max(component_norm(a, x, k));
        }
    }
    if !report.is_reductive(tol) {
        return Err(GeoError::NotReductive {
            subalgebra_residual: report.subalgebra_residual,
            reductive_residual: report.reductive_residual,
        });
    }
    Ok(report)
}

/// A reductive decomposition with an `ad(k)`-invariant inner product on `m`.
#[derive(Debug, Clone)]
pub struct HomogeneousSpace {
    dec: ReductiveDecomposition,
    metric: InvariantMetric,
    tol: f64,
    /// The algebra re-expressed in the basis `(k…, f_0 … f_{n-1})`.
    frame_alg: LieAlgebra,
    n: usize,
    q: usize,
    /// `⟨[f_a, f_b]_m, f_c⟩`
    cm: Tensor3,
    /// k-components of `[f_a, f_b]`, `ck[(a*n + b)*q + r]`.
    ck: Vec<f64>,
    /// `ad(k_r)` restricted to `m`, as `n × n` matrices in the frame.
    kad: Vec<DMatrix<f64>>,
    /// `η^c(f_a) = −tr ad_{f_a}`
    eta: DVector<f64>,
    /// max over k of ‖ad(k_r)|_m + ad(k_r)|_mᵀ‖ in the frame.
    invariance_residual: f64,
}

impl HomogeneousSpace {
    pub fn new(dec: ReductiveDecomposition, metric: InvariantMetric, tol: f64) -> Result<Self> {
        let n = dec.m.len();
        let q = dec.k.len();
        if metric.dim() != n {
            return Err(GeoError::DimensionMismatch {
                expected: n,
                got: metric.dim(),
            });
        }
        let d = q + n;
        let mut basis = DMatrix::zeros(d, d);
        for (r, &i) in dec.k.iter().enumerate() {
            basis[(i, r)] = 1.0;
        }
        let e = metric.frame();
        for a in 0..n {
            for (x, &i) in dec.m.iter().enumerate() {
                basis[(i, q + a)] = e[(x, a)];
            }
        }
        let labels = dec
            .k
            .iter()
            .chain(&dec.m)
            .map(|&i| dec.algebra.labels()[i].clone())
            .collect();
        // change of basis can only add round-off; Jacobi was checked on the input
        let frame_alg = dec
            .algebra
            .change_basis(&basis, Some(labels), tol.max(DEFAULT_TOL) * 1e3)?;

        let cm = Tensor3::from_fn(n, |a, b, c| frame_alg.c(q + a, q + b, q + c));
        let mut ck = vec![0.0; n * n * q];
        for a in 0..n {
            for b in 0..n {
                for r in 0..q {
                    ck[(a * n + b) * q + r] = frame_alg.c(q + a, q + b, r);
                }
            }
        }
        let kad: Vec<DMatrix<f64>> = (0..q)
            .map(|r| DMatrix::from_fn(n, n, |c, b| frame_alg.c(r, q + b, q + c)))
            .collect();
        let invariance_residual = kad
            .iter()
            .map(|m| (m + m.transpose()).amax())
            .fold(0.0, f64::max);
        if invariance_residual > tol {
            return Err(GeoError::MetricNotInvariant {
                residual: invariance_residual,
            });
        }
        let trace = frame_alg.trace_covector();
        let eta = DVector::from_fn(n, |a, _| -trace[q + a]);
        Ok(Self {
            dec,
            metric,
            tol,
            frame_alg,
            n,
            q,
            cm,
            ck,
            kad,
            eta,
            invariance_residual,
        })
    }

    /// Convenience: trivial isotropy with the given metric.
    pub fn lie_group(algebra: LieAlgebra, metric: InvariantMetric, tol: f64) -> Result<Self> {
        Self::new(ReductiveDecomposition::lie_group(algebra), metric, tol)
    }

    pub fn decomposition(&self) -> &ReductiveDecomposition {
        &self.dec
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.dec.algebra
    }

    pub fn metric(&self) -> &InvariantMetric {
        &self.metric
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// dim m
    pub fn n(&self) -> usize {
        self.n
    }

    /// dim k
    pub fn isotropy_dim(&self) -> usize {
        self.q
    }

    pub fn frame_algebra(&self) -> &LieAlgebra {
        &self.frame_alg
    }

    pub fn invariance_residual(&self) -> f64 {
        self.invariance_residual
    }

    /// `⟨[f_a, f_b]_m, f_c⟩` in the orthonormal frame.
    pub fn bracket_m_tensor(&self) -> &Tensor3 {
        &self.cm
    }

    /// Coefficient of `k_r` in `[f_a, f_b]`.
    #[inline]
    pub fn ck(&self, a: usize, b: usize, r: usize) -> f64 {
        self.ck[(a * self.n + b) * self.q + r]
    }

    /// `ad(k_r)|_m` in the frame.
    pub fn isotropy_action(&self, r: usize) -> &DMatrix<f64> {
        &self.kad[r]
    }

    /// `η^c` on the frame vectors.
    pub fn eta_frame(&self) -> &DVector<f64> {
        &self.eta
    }

    pub fn is_unimodular(&self) -> bool {
        self.eta.norm() <= self.tol
    }

    /// Embed a frame vector of `m` into the full frame algebra.
    pub fn embed(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut v = DVector::zeros(self.q + self.n);
        v.rows_mut(self.q, self.n).copy_from(x);
        v
    }

    pub fn project_m(&self, v: &DVector<f64>) -> DVector<f64> {
        v.rows(self.q, self.n).into_owned()
    }

    pub fn project_k(&self, v: &DVector<f64>) -> DVector<f64> {
        v.rows(0, self.q).into_owned()
    }

    /// Full bracket of two `m` frame vectors inside `g`.
    pub fn bracket_full(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.frame_alg.bracket(&self.embed(x), &self.embed(y))
    }

    /// `[X, Y]_m` for frame vectors.
    pub fn bracket_m(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let mut out = DVector::zeros(n);
        for a in 0..n {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                let w = x[a] * y[b];
                if w != 0.0 {
                    for c in 0..n {
                        out[c] += w * self.cm[(a, b, c)];
                    }
                }
            }
        }
        out
    }

    /// `[X, Y]_k` coefficients for frame vectors.
    pub fn bracket_k(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let (n, q) = (self.n, self.q);
        DVector::from_fn(q, |r, _| {
            let mut s = 0.0;
            for a in 0..n {
                for b in 0..n {
                    s += x[a] * y[b] * self.ck(a, b, r);
                }
            }
            s
        })
    }

    /// `ad_W` on `m` for `W ∈ k` given by coefficients.
    pub fn isotropy_operator(&self, w: &DVector<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for (r, m) in self.kad.iter().enumerate() {
            out += m * w[r];
        }
        out
    }

    pub fn frame_basis(&self, a: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.n);
        v[a] = 1.0;
        v
    }

    /// Caller coordinates → frame coordinates.
    pub fn to_frame(&self, x: &DVector<f64>) -> DVector<f64> {
        // x = E v, E upper-triangular-inverse of a Cholesky factor
        self.metric
            .frame()
            .clone()
            .try_inverse()
            .expect("frame is invertible")
            * x
    }

    /// Frame coordinates → caller coordinates.
    pub fn from_frame(&self, v: &DVector<f64>) -> DVector<f64> {
        self.metric.frame() * v
    }

    /// Frame covector → caller-coordinate covector.
    pub fn covector_from_frame(&self, w: &DVector<f64>) -> DVector<f64> {
        let inv = self
            .metric
            .frame()
            .clone()
            .try_inverse()
            .expect("frame is invertible");
        inv.transpose() * w
    }

    /// Frame bilinear form → caller-coordinate bilinear form.
    pub fn bilinear_from_frame(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let inv = self
            .metric
            .frame()
            .clone()
            .try_inverse()
            .expect("frame is invertible");
        inv.transpose() * b * inv
    }

    /// Killing form of `g` restricted to `m`, in the frame.
    pub fn killing_on_m(&self) -> DMatrix<f64> {
        let b = self.frame_alg.killing_form();
        b.view((self.q, self.q), (self.n, self.n)).into_owned()
    }

    /// Same space with the metric multiplied by `t`.
    pub fn rescaled(&self, t: f64) -> Result<Self> {
        Self::new(self.dec.clone(), self.metric.scaled(t)?, self.tol)
    }
}

/// Canonical connection data at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalData {
    /// `T^c_{abc} = ⟨T^c(f_a, f_b), f_c⟩ = −⟨[f_a, f_b]_m, f_c⟩` (frame)
    pub tc: Tensor3,
    /// `⟨R^c(f_a, f_b) f_c, f_d⟩` with `R^c(X,Y) = ad_{[X,Y]_k}` (frame)
    pub rc: Tensor4,
    /// `η^c(X) = −tr ad_X`, caller coordinates
    pub eta: DVector<f64>,
    /// metric dual of `η^c`, caller coordinates
    pub xi: DVector<f64>,
    /// `‖ξ‖`
    pub c: f64,
}

pub fn canonical_data(space: &HomogeneousSpace) -> CanonicalData {
    let n = space.n();
    let tc = &space.cm * -1.0;
    let mut rc = Tensor4::zeros(n);
    for a in 0..n {
        for b in 0..n {
            let w = space.bracket_k(&space.frame_basis(a), &space.frame_basis(b));
            let op = space.isotropy_operator(&w);
            for c in 0..n {
                for d in 0..n {
                    rc[(a, b, c, d)] = op[(d, c)];
                }
            }
        }
    }
    let eta = space.covector_from_frame(space.eta_frame());
    let xi = space.from_frame(space.eta_frame());
    CanonicalData {
        tc,
        rc,
        eta,
        xi,
        c: space.eta_frame().norm(),
    }
}

/// `max |η^c([e_x, e_y]_m)|` over pairs of caller basis vectors of `m`.
///
/// Evaluated on the original structure constants, independently of the frame.
pub fn closedness_check(space: &HomogeneousSpace) -> f64 {
    let alg = space.algebra();
    let m = space.decomposition().m_indices();
    let trace = alg.trace_covector();
    let eta: Vec<f64> = m.iter().map(|&i| -trace[i]).collect();
    let mut worst = 0.0_f64;
    for (x, &i) in m.iter().enumerate() {
        for &j in &m[x + 1..] {
            let v: f64 = m
                .iter()
                .zip(&eta)
                .map(|(&l, e)| alg.c(i, j, l) * e)
                .sum();
            worst = worst.max(v.abs());
        }
    }
    worst
}

/// Extrinsic geometry of the leaves of `D = ker η^c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoliationData {
    /// Orthonormal basis of D (caller coordinates), one vector per entry.
    pub d_basis: Vec<Vec<f64>>,
    /// `h(d_i, d_j) = h_coeff[i][j] · ξ`
    pub h_coeff: Vec<Vec<f64>>,
    /// metric dual of `η^c` (caller coordinates)
    pub xi: Vec<f64>,
    /// Mean curvature vector `H = tr h / (n−1)` (caller coordinates)
    pub mean_curvature: Vec<f64>,
    /// ‖H + ξ/(n−1)‖
    pub mean_curvature_residual: f64,
    pub c: f64,
    /// ‖U(ξ, ξ)‖
    pub u_xi_xi: f64,
    /// ‖ξ + Σ U(d_i, d_i)‖
    pub xi_trace_residual: f64,
    /// max |η^c([d_i, d_j]_m)|
    pub integrability_residual: f64,
    /// max |h_ij − h_ji|
    pub h_symmetry_residual: f64,
    /// `h = −(⟨·,·⟩/(n−1)) ξ` on D
    pub umbilical: bool,
}

/// Orthonormal frame basis of `D = ker η^c`, obtained by projecting the caller
/// basis vectors of `m` orthogonally to `ξ`. Empty when `η^c = 0`.
pub fn distribution_basis(space: &HomogeneousSpace) -> Vec<DVector<f64>> {
    let n = space.n();
    let eta = space.eta_frame();
    let c = eta.norm();
    if c <= space.tol() {
        return Vec::new();
    }
    let unit = eta / c;
    let inv = space
        .metric()
        .frame()
        .clone()
        .try_inverse()
        .expect("frame is invertible");
    let candidates: Vec<DVector<f64>> = (0..n)
        .map(|x| {
            let v = inv.column(x).into_owned();
            let p = unit.dot(&v);
            v - &unit * p
        })
        .collect();
    gram_schmidt(&candidates, n - 1, space.tol())
}

pub fn foliation_data(space: &HomogeneousSpace) -> Result<FoliationData> {
    if space.is_unimodular() {
        return Err(GeoError::UnimodularInput);
    }
    let n = space.n();
    let tol = space.tol();
    let eta = space.eta_frame();
    let c = eta.norm();
    let xi = eta.clone();
    let d = distribution_basis(space);

    let u = crate::structure::u_map(space);
    let eta_u = |x: &DVector<f64>, y: &DVector<f64>| eta.dot(&u.apply(x, y));
    let h: Vec<Vec<f64>> = d
        .iter()
        .map(|x| d.iter().map(|y| eta_u(x, y) / (c * c)).collect())
        .collect();
    let mut h_symmetry_residual = 0.0_f64;
    let mut umbilical_residual = 0.0_f64;
    for i in 0..d.len() {
        for j in 0..d.len() {
            h_symmetry_residual = h_symmetry_residual.max((h[i][j] - h[j][i]).abs());
            let target = if i == j { -1.0 / (n as f64 - 1.0) } else { 0.0 };
            umbilical_residual = umbilical_residual.max((h[i][j] - target).abs());
        }
    }
    let mut trace_sum = xi.clone();
    for x in &d {
        trace_sum += u.apply(x, x);
    }
    let mut integrability_residual = 0.0_f64;
    for (i, x) in d.iter().enumerate() {
        for y in &d[i + 1..] {
            integrability_residual = integrability_residual.max(eta.dot(&space.bracket_m(x, y)).abs());
        }
    }
    let xi_coords = space.from_frame(&xi);
    let trace_h: f64 = (0..d.len()).map(|i| h[i][i]).sum();
    let mean = &xi_coords * (trace_h / (n as f64 - 1.0));
    let mean_curvature_residual = (&xi * (trace_h + 1.0) / (n as f64 - 1.0)).norm();
    Ok(FoliationData {
        d_basis: d.iter().map(|v| space.from_frame(v).as_slice().to_vec()).collect(),
        h_coeff: h,
        mean_curvature: mean.as_slice().to_vec(),
        mean_curvature_residual,
        xi: xi_coords.as_slice().to_vec(),
        c,
        u_xi_xi: u.apply(&xi, &xi).norm(),
        xi_trace_residual: trace_sum.norm(),
        integrability_residual,
        h_symmetry_residual,
        umbilical: umbilical_residual <= tol,
    })
}

/// Algebraic conditions on a derivation `D` of `l = k ⊕ D_m` for the
/// semidirect product `ℝ ⋉_D (L/K)` to be a non-traceless cyclic space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemidirectConditions {
    /// tr D ≠ 0
    pub nonzero_trace: bool,
    /// k ⊂ ker D
    pub kills_isotropy: bool,
    /// ⟨D X|_m, Y⟩ = ⟨D Y|_m, X⟩ on the complement
    pub self_adjoint: bool,
}

impl SemidirectConditions {
    pub fn all(&self) -> bool {
        self.nonzero_trace && self.kills_isotropy && self.self_adjoint
    }
}

pub fn semidirect_conditions(
    derivation: &DMatrix<f64>,
    k: &[usize],
    m: &[usize],
    metric: &InvariantMetric,
    tol: f64,
) -> Result<SemidirectConditions> {
    if metric.dim() != m.len() {
        return Err(GeoError::DimensionMismatch {
            expected: m.len(),
            got: metric.dim(),
        });
    }
    let kills = k
        .iter()
        .all(|&r| derivation.column(r).amax() <= tol);
    let block = DMatrix::from_fn(m.len(), m.len(), |x, y| derivation[(m[x], m[y])]);
    let gd = metric.matrix() * &block;
    Ok(SemidirectConditions {
        nonzero_trace: derivation.trace().abs() > tol,
        kills_isotropy: kills,
        self_adjoint: (&gd - gd.transpose()).amax() <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{milnor_algebra, solvable_algebra, Bracket};

    fn so2_heisenberg_wrong_basis() -> LieAlgebra {
        // basis {A, e1, e2 + A, e3} of so(2) ⋉ h3 with λ3 = 1
        let alg = LieAlgebra::new(
            4,
            None,
            [
                Bracket::new(0, 1, [(2, 1.0)]),
                Bracket::new(0, 2, [(1, -1.0)]),
                Bracket::new(1, 2, [(3, 1.0)]),
            ],
            DEFAULT_TOL,
        )
        .unwrap();
        let p = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        );
        alg.change_basis(&p, None, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn trivial_isotropy_is_reductive() {
        let r = check_reductive(&milnor_algebra([1.0, 2.0, 3.0]), &[], &[0, 1, 2], DEFAULT_TOL).unwrap();
        assert_eq!(r.subalgebra_residual, 0.0);
        assert_eq!(r.reductive_residual, 0.0);
    }

    #[test]
    fn misplaced_complement_is_not_reductive() {
        let alg = so2_heisenberg_wrong_basis();
        let err = check_reductive(&alg, &[0], &[1, 2, 3], DEFAULT_TOL).unwrap_err();
        match err {
            GeoError::NotReductive {
                reductive_residual, ..
            } => assert!((reductive_residual - 1.0).abs() < 1e-12),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn partition_errors() {
        let alg = milnor_algebra([1.0, 1.0, 1.0]);
        assert!(matches!(
            check_reductive(&alg, &[0], &[0, 1, 2], DEFAULT_TOL),
            Err(GeoError::InvalidPartition(_))
        ));
        assert!(matches!(
            check_reductive(&alg, &[], &[0, 1], DEFAULT_TOL),
            Err(GeoError::InvalidPartition(_))
        ));
        assert!(matches!(
            check_reductive(&alg, &[], &[0, 1, 5], DEFAULT_TOL),
            Err(GeoError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn canonical_data_abelian_and_solvable() {
        let s = HomogeneousSpace::lie_group(LieAlgebra::abelian(3), InvariantMetric::identity(3), DEFAULT_TOL)
            .unwrap();
        let cd = canonical_data(&s);
        assert_eq!(cd.tc.max_abs(), 0.0);
        assert_eq!(cd.rc.max_abs(), 0.0);
        assert_eq!(cd.eta.norm(), 0.0);

        let (a, b) = (0.5, 2.0);
        let s = HomogeneousSpace::lie_group(solvable_algebra(&[a, b]), InvariantMetric::identity(3), DEFAULT_TOL)
            .unwrap();
        let cd = canonical_data(&s);
        assert_eq!(cd.eta.as_slice(), &[-(a + b), 0.0, 0.0]);
        assert_eq!(cd.xi.as_slice(), &[-(a + b), 0.0, 0.0]);
        assert_eq!(cd.c, a + b);
    }

    #[test]
    fn canonical_torsion_milnor() {
        let l = [1.0, -2.0, 0.5];
        let s = HomogeneousSpace::lie_group(milnor_algebra(l), InvariantMetric::identity(3), DEFAULT_TOL).unwrap();
        let cd = canonical_data(&s);
        assert_eq!(cd.tc[(1, 2, 0)], -l[0]);
        assert_eq!(cd.tc[(2, 0, 1)], -l[1]);
        assert_eq!(cd.tc[(0, 1, 2)], -l[2]);
        assert_eq!(cd.tc.first_pair_symmetric_part(), 0.0);
        assert_eq!(cd.eta.norm(), 0.0);
    }

    #[test]
    fn closedness_on_solvable() {
        let s = HomogeneousSpace::lie_group(solvable_algebra(&[1.0, 3.0]), InvariantMetric::identity(3), DEFAULT_TOL)
            .unwrap();
        assert_eq!(closedness_check(&s), 0.0);
    }

    #[test]
    fn foliation_of_hyperbolic_plane() {
        let alpha = 1.3;
        let s = HomogeneousSpace::lie_group(solvable_algebra(&[alpha]), InvariantMetric::identity(2), DEFAULT_TOL)
            .unwrap();
        let f = foliation_data(&s).unwrap();
        assert_eq!(f.d_basis, vec![vec![0.0, 1.0]]);
        assert_eq!(f.xi, vec![-alpha, 0.0]);
        // h(X1, X1) = h_coeff · ξ = α X0
        assert!((f.h_coeff[0][0] * f.xi[0] - alpha).abs() < 1e-12);
        assert!((f.mean_curvature[0] - alpha).abs() < 1e-12);
        assert!(f.umbilical);
        assert!(f.u_xi_xi < 1e-12 && f.xi_trace_residual < 1e-12);
    }

    #[test]
    fn foliation_needs_nonunimodular() {
        let s = HomogeneousSpace::lie_group(milnor_algebra([1.0, 1.0, 1.0]), InvariantMetric::identity(3), DEFAULT_TOL)
            .unwrap();
        assert_eq!(foliation_data(&s).unwrap_err(), GeoError::UnimodularInput);
    }

    #[test]
    fn noninvariant_metric_is_rejected() {
        // so(2) acting by rotation on (e1, e2) with a non-round metric
        let alg = LieAlgebra::new(
            3,
            None,
            [Bracket::new(0, 1, [(2, 1.0)]), Bracket::new(0, 2, [(1, -1.0)])],
            DEFAULT_TOL,
        )
        .unwrap();
        let dec = ReductiveDecomposition::new(alg, vec![0], vec![1, 2], DEFAULT_TOL).unwrap();
        let err = HomogeneousSpace::new(dec, InvariantMetric::diagonal(&[1.0, 2.0]).unwrap(), DEFAULT_TOL)
            .unwrap_err();
        assert!(matches!(err, GeoError::MetricNotInvariant { .. }));
    }

    #[test]
    fn frame_conversions_roundtrip() {
        let g = DMatrix::from_row_slice(3, 3, &[2.0, 0.3, 0.0, 0.3, 1.0, 0.1, 0.0, 0.1, 0.5]);
        let s = HomogeneousSpace::lie_group(
            milnor_algebra([1.0, 2.0, -3.0]),
            InvariantMetric::new(g.clone()).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap();
        let x = DVector::from_vec(vec![0.2, -1.0, 0.7]);
        let v = s.to_frame(&x);
        assert!((s.from_frame(&v) - &x).norm() < 1e-12);
        // frame inner product equals the metric
        assert!((v.dot(&v) - (x.transpose() * &g * &x)[(0, 0)]).abs() < 1e-12);
        // identity bilinear form in the frame is the metric in coordinates
        assert!((s.bilinear_from_frame(&DMatrix::identity(3, 3)) - g).amax() < 1e-12);
    }

    #[test]
    fn semidirect_conditions_for_b3() {
        // so(2) ⋉ h3 with the derivation diag(0, α, α, 2α)
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 0.4, 0.4, 0.8]));
        let c = semidirect_conditions(&d, &[0], &[1, 2, 3], &InvariantMetric::identity(3), DEFAULT_TOL).unwrap();
        assert!(c.all());
        let mut bad = d.clone();
        bad[(1, 0)] = 1.0;
        let c = semidirect_conditions(&bad, &[0], &[1, 2, 3], &InvariantMetric::identity(3), DEFAULT_TOL).unwrap();
        assert!(!c.kills_isotropy);
    }
}
