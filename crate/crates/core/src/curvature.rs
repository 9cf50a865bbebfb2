//! Levi-Civita connection, curvature and Ricci tensors at the origin.
//!
//! Sign convention: `R_{XY} = ∇_{[X,Y]} − [∇_X, ∇_Y]`, so that the sectional
//! curvature of an orthonormal pair is `⟨R_{XY}X, Y⟩`. Everything is in the
//! orthonormal frame of [`HomogeneousSpace`] unless stated otherwise.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::exec::Execution;
use crate::reductive::{distribution_basis, HomogeneousSpace};
use crate::structure::{classify, homogeneous_structure, u_map, UMap};
use crate::tensor::Tensor4;

pub const DEFAULT_SEED: u64 = 0x5eed_c7c1;

/// Nomizu map `α(X)Y = ½[X,Y]_m + U(X,Y)` as one skew matrix per frame vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviCivita {
    /// `ops[a][(d, c)] = ⟨α(f_a) f_c, f_d⟩`
    ops: Vec<DMatrix<f64>>,
}

impl LeviCivita {
    pub fn operator(&self, a: usize) -> &DMatrix<f64> {
        &self.ops[a]
    }

    /// `α(X)` for a frame vector `X`.
    pub fn operator_of(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.ops.len();
        let mut out = DMatrix::zeros(n, n);
        for (a, op) in self.ops.iter().enumerate() {
            if x[a] != 0.0 {
                out += op * x[a];
            }
        }
        out
    }

    pub fn apply(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.operator_of(x) * y
    }

    /// max |⟨α(X)Y,Z⟩ + ⟨Y,α(X)Z⟩| over frame triples.
    pub fn compatibility_residual(&self) -> f64 {
        self.ops
            .iter()
            .map(|m| (m + m.transpose()).amax())
            .fold(0.0, f64::max)
    }
}

pub fn levi_civita(space: &HomogeneousSpace) -> LeviCivita {
    let n = space.n();
    let cm = space.bracket_m_tensor();
    let u = u_map(space);
    let ops = (0..n)
        .map(|a| DMatrix::from_fn(n, n, |d, c| 0.5 * cm[(a, c, d)] + u.0[(a, c, d)]))
        .collect();
    LeviCivita { ops }
}

/// `r[(a,b,c,d)] = ⟨R_{f_a f_b} f_c, f_d⟩`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureTensor(pub Tensor4);

/// Maximum violation of each algebraic curvature symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryResiduals {
    pub antisymmetry_xy: f64,
    pub antisymmetry_zw: f64,
    pub pair_symmetry: f64,
    pub bianchi: f64,
}

impl SymmetryResiduals {
    pub fn max(&self) -> f64 {
        self.antisymmetry_xy
            .max(self.antisymmetry_zw)
            .max(self.pair_symmetry)
            .max(self.bianchi)
    }
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `⟨R_{XY}Z, W⟩` for frame vectors.
    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>, w: &DVector<f64>) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for a in 0..n {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                let xy = x[a] * y[b];
                if xy == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let xyz = xy * z[c];
                    if xyz == 0.0 {
                        continue;
                    }
                    for d in 0..n {
                        s += xyz * w[d] * self.0[(a, b, c, d)];
                    }
                }
            }
        }
        s
    }

    /// `⟨R_{XY}X, Y⟩`
    pub fn diagonal(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        self.eval(x, y, x, y)
    }

    pub fn symmetry_residuals(&self) -> SymmetryResiduals {
        let r = &self.0;
        let n = self.dim();
        let mut s = SymmetryResiduals {
            antisymmetry_xy: 0.0,
            antisymmetry_zw: 0.0,
            pair_symmetry: 0.0,
            bianchi: 0.0,
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = r[(a, b, c, d)];
                        s.antisymmetry_xy = s.antisymmetry_xy.max((v + r[(b, a, c, d)]).abs());
                        s.antisymmetry_zw = s.antisymmetry_zw.max((v + r[(a, b, d, c)]).abs());
                        s.pair_symmetry = s.pair_symmetry.max((v - r[(c, d, a, b)]).abs());
                        s.bianchi = s
                            .bianchi
                            .max((v + r[(b, c, a, d)] + r[(c, a, b, d)]).abs());
                    }
                }
            }
        }
        s
    }

    /// `Ric(Y,Z) = Σ_a ⟨R_{Y e_a} Z, e_a⟩`
    pub fn ricci(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |b, c| (0..n).map(|a| self.0[(b, a, c, a)]).sum())
    }
}

/// `R(X,Y) = −[α(X),α(Y)] + α([X,Y]_m) + ad_{[X,Y]_k}|_m`
pub fn curvature_tensor(space: &HomogeneousSpace) -> CurvatureTensor {
    curvature_tensor_with(space, Execution::default())
}

pub fn curvature_tensor_with(space: &HomogeneousSpace, exec: Execution) -> CurvatureTensor {
    let n = space.n();
    let q = space.isotropy_dim();
    let lc = levi_civita(space);
    let cm = space.bracket_m_tensor();
    let blocks = exec.map_range(n * n, |ab| {
        let (a, b) = (ab / n, ab % n);
        let la = lc.operator(a);
        let lb = lc.operator(b);
        let mut op = -(la * lb - lb * la);
        for e in 0..n {
            let w = cm[(a, b, e)];
            if w != 0.0 {
                op += lc.operator(e) * w;
            }
        }
        for r in 0..q {
            let w = space.ck(a, b, r);
            if w != 0.0 {
                op += space.isotropy_action(r) * w;
            }
        }
        let mut out = Vec::with_capacity(n * n);
        for c in 0..n {
            for d in 0..n {
                out.push(op[(d, c)]);
            }
        }
        out
    });
    CurvatureTensor(Tensor4::from_blocks(n, blocks.concat()))
}

fn full_bracket_m(space: &HomogeneousSpace, x: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
    space.project_m(&space.frame_algebra().bracket(&space.embed(x), v))
}

/// `⟨R_{XY}X,Y⟩ = −¾‖[X,Y]_m‖² − ½⟨[X,[X,Y]]_m,Y⟩ − ½⟨[Y,[Y,X]]_m,X⟩
///  + ‖U(X,Y)‖² − ⟨U(X,X),U(Y,Y)⟩`
pub fn general_curvature_diagonal(space: &HomogeneousSpace, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let u = u_map(space);
    general_diagonal_with(space, &u, x, y)
}

fn general_diagonal_with(space: &HomogeneousSpace, u: &UMap, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let xy = space.bracket_full(x, y);
    let yx = -&xy;
    let xy_m = space.project_m(&xy);
    let uxy = u.apply(x, y);
    -0.75 * xy_m.norm_squared() - 0.5 * full_bracket_m(space, x, &xy).dot(y)
        - 0.5 * full_bracket_m(space, y, &yx).dot(x)
        + uxy.norm_squared()
        - u.apply(x, x).dot(&u.apply(y, y))
}

/// `⟨R_{XY}X,Y⟩ = ⟨[[X,Y]_k,X],Y⟩ − ‖[X,Y]_m‖² + ⟨S_X Y,S_Y X⟩ − ⟨S_X X,S_Y Y⟩`,
/// valid for cyclic spaces only.
pub fn cyclic_curvature_diagonal(space: &HomogeneousSpace, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
    let report = classify(space);
    if !report.flags.cyclic {
        return Err(GeoError::NotCyclic {
            residual: report.residuals.cyclic,
        });
    }
    Ok(cyclic_diagonal_unchecked(space, &StructureOps::new(space), x, y))
}

/// `S_X` as matrices, `s[a][(c, b)] = S_{f_a f_b f_c}`.
struct StructureOps(Vec<DMatrix<f64>>);

impl StructureOps {
    fn new(space: &HomogeneousSpace) -> Self {
        let s = homogeneous_structure(space);
        let t = s.tensor();
        let n = space.n();
        Self((0..n).map(|a| DMatrix::from_fn(n, n, |c, b| t[(a, b, c)])).collect())
    }

    fn apply(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.0.len();
        let mut out = DVector::zeros(n);
        for (a, m) in self.0.iter().enumerate() {
            if x[a] != 0.0 {
                out += (m * y) * x[a];
            }
        }
        out
    }
}

fn cyclic_diagonal_unchecked(space: &HomogeneousSpace, s: &StructureOps, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let w = space.bracket_k(x, y);
    let rc = (space.isotropy_operator(&w) * x).dot(y);
    rc - space.bracket_m(x, y).norm_squared() + s.apply(x, y).dot(&s.apply(y, x))
        - s.apply(x, x).dot(&s.apply(y, y))
}

/// Sectional curvature of the plane spanned by caller-coordinate vectors.
pub fn sectional(space: &HomogeneousSpace, r: &CurvatureTensor, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
    let (fx, fy) = (space.to_frame(x), space.to_frame(y));
    sectional_frame(space.tol(), r, &fx, &fy)
}

fn sectional_frame(tol: f64, r: &CurvatureTensor, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
    let gram = x.norm_squared() * y.norm_squared() - x.dot(y).powi(2);
    if gram <= tol {
        return Err(GeoError::DegeneratePlane { gram });
    }
    Ok(r.diagonal(x, y) / gram)
}

/// Sectional curvatures of the planes spanned by pairs of caller basis vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSectionals {
    /// `(i, j, K(e_i, e_j))` for `i < j`
    pub planes: Vec<(usize, usize, f64)>,
    pub min: f64,
    pub max: f64,
}

pub fn basis_sectionals(space: &HomogeneousSpace, r: &CurvatureTensor) -> Result<BasisSectionals> {
    let n = space.n();
    let mut planes = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut ei = DVector::zeros(n);
            ei[i] = 1.0;
            let mut ej = DVector::zeros(n);
            ej[j] = 1.0;
            planes.push((i, j, sectional(space, r, &ei, &ej)?));
        }
    }
    let min = planes.iter().map(|p| p.2).fold(f64::INFINITY, f64::min);
    let max = planes.iter().map(|p| p.2).fold(f64::NEG_INFINITY, f64::max);
    Ok(BasisSectionals { planes, min, max })
}

/// Curvatures of planes containing `ξ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XiCurvatures {
    /// Orthonormal basis of D, caller coordinates.
    pub d_basis: Vec<Vec<f64>>,
    /// `⟨R_{d_i ξ} d_i, ξ⟩`
    pub numerators: Vec<f64>,
    /// `−‖[d_i, ξ]_m‖²`
    pub bracket_values: Vec<f64>,
    /// `K(d_i, ξ)`
    pub sectional: Vec<f64>,
    pub c: f64,
    /// max |numerator − bracket value|
    pub formula_residual: f64,
    /// `X ↦ K(X, ξ)` is constant on D
    pub umbilical: bool,
    /// `−(c/(n−1))²`
    pub umbilical_value: f64,
    /// ‖K(·,ξ)|_D − umbilical_value‖, meaningful when `umbilical`
    pub umbilical_value_residual: f64,
}

pub fn xi_curvatures(space: &HomogeneousSpace, r: &CurvatureTensor) -> Result<XiCurvatures> {
    let report = classify(space);
    if !report.flags.cyclic {
        return Err(GeoError::NotCyclic {
            residual: report.residuals.cyclic,
        });
    }
    if space.is_unimodular() {
        return Err(GeoError::UnimodularInput);
    }
    let n = space.n();
    let tol = space.tol();
    let xi = space.eta_frame().clone();
    let c = xi.norm();
    let d = distribution_basis(space);
    let numerators: Vec<f64> = d.iter().map(|x| r.diagonal(x, &xi)).collect();
    let bracket_values: Vec<f64> = d
        .iter()
        .map(|x| -space.bracket_m(x, &xi).norm_squared())
        .collect();
    let sectional: Vec<f64> = numerators.iter().map(|v| v / (c * c)).collect();
    let formula_residual = numerators
        .iter()
        .zip(&bracket_values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    // quadratic form Q(X,Y) = −⟨[X,ξ]_m,[Y,ξ]_m⟩/c² on D
    let images: Vec<DVector<f64>> = d.iter().map(|x| space.bracket_m(x, &xi)).collect();
    let k = d.len();
    let qf = DMatrix::from_fn(k, k, |i, j| -images[i].dot(&images[j]) / (c * c));
    let mean = if k > 0 { qf.trace() / k as f64 } else { 0.0 };
    let umbilical = (&qf - DMatrix::identity(k, k) * mean).amax() <= tol;
    let umbilical_value = -(c / (n as f64 - 1.0)).powi(2);
    let umbilical_value_residual = sectional
        .iter()
        .map(|v| (v - umbilical_value).abs())
        .fold(0.0, f64::max);
    Ok(XiCurvatures {
        d_basis: d.iter().map(|v| space.from_frame(v).as_slice().to_vec()).collect(),
        numerators,
        bracket_values,
        sectional,
        c,
        formula_residual,
        umbilical,
        umbilical_value,
        umbilical_value_residual,
    })
}

/// Ricci tensor in the frame, with every applicable independent route.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciTensor {
    /// Trace of the curvature tensor.
    pub frame: DMatrix<f64>,
    /// Closed formula in terms of B, U-free brackets and ξ.
    pub general: DMatrix<f64>,
    /// `η^c∘U − B − tr(Z ↦ R^c(X,Z)Y)`, cyclic spaces only.
    pub cyclic: Option<DMatrix<f64>>,
    /// `η^c∘U − B`, trivial isotropy and cyclic only.
    pub lie_group: Option<DMatrix<f64>>,
}

impl RicciTensor {
    /// Largest disagreement between any two available routes.
    pub fn route_residual(&self) -> f64 {
        let mut routes = vec![&self.general];
        routes.extend(self.cyclic.as_ref());
        routes.extend(self.lie_group.as_ref());
        routes
            .into_iter()
            .map(|m| (m - &self.frame).amax())
            .fold(0.0, f64::max)
    }

    /// max |Ric − Ricᵀ|
    pub fn symmetry_residual(&self) -> f64 {
        (&self.frame - self.frame.transpose()).amax()
    }

    /// Ricci form in caller coordinates of `m`.
    pub fn in_coordinates(&self, space: &HomogeneousSpace) -> DMatrix<f64> {
        space.bilinear_from_frame(&self.frame)
    }

    /// Eigenvalues of the Ricci operator, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let sym = (&self.frame + self.frame.transpose()) * 0.5;
        let mut v: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn ricci(space: &HomogeneousSpace) -> RicciTensor {
    ricci_from(space, &curvature_tensor(space))
}

pub fn ricci_from(space: &HomogeneousSpace, r: &CurvatureTensor) -> RicciTensor {
    let n = space.n();
    let cm = space.bracket_m_tensor();
    let b = space.killing_on_m();
    let xi = space.eta_frame();
    let e = |i| space.frame_basis(i);

    let general = DMatrix::from_fn(n, n, |x, y| {
        let mut v = -0.5 * b[(x, y)];
        for i in 0..n {
            let mut s = 0.0;
            for c in 0..n {
                s += cm[(x, i, c)] * cm[(y, i, c)];
            }
            v -= 0.5 * s;
            for j in 0..n {
                v += 0.25 * cm[(i, j, x)] * cm[(i, j, y)];
            }
        }
        v + 0.5 * (space.bracket_m(xi, &e(x)).dot(&e(y)) + space.bracket_m(xi, &e(y)).dot(&e(x)))
    });

    let cyclic_flag = classify(space).flags.cyclic;
    let (cyclic, lie_group) = if cyclic_flag {
        let u = u_map(space);
        let eta_u = DMatrix::from_fn(n, n, |x, y| {
            (0..n).map(|c| xi[c] * u.0[(x, y, c)]).sum::<f64>()
        });
        let base = &eta_u - &b;
        let rc_trace = DMatrix::from_fn(n, n, |x, y| {
            let mut s = 0.0;
            for z in 0..n {
                let w1 = space.bracket_k(&e(x), &e(z));
                let w2 = space.bracket_k(&e(y), &e(z));
                s += (space.isotropy_operator(&w1) * e(y))[z] + (space.isotropy_operator(&w2) * e(x))[z];
            }
            0.5 * s
        });
        let lie = (space.isotropy_dim() == 0).then(|| base.clone());
        (Some(base - rc_trace), lie)
    } else {
        (None, None)
    };

    RicciTensor {
        frame: r.ricci(),
        general,
        cyclic,
        lie_group,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EinsteinReport {
    pub einstein: bool,
    /// `tr(Ric)/n`
    pub lambda: f64,
    /// max |Ric − λ·g|
    pub deviation: f64,
}

pub fn einstein_check(space: &HomogeneousSpace, ric: &RicciTensor) -> EinsteinReport {
    let n = space.n();
    let lambda = ric.frame.trace() / n as f64;
    let deviation = (&ric.frame - DMatrix::identity(n, n) * lambda).amax();
    EinsteinReport {
        einstein: deviation <= space.tol(),
        lambda,
        deviation,
    }
}

/// max over frame vectors X of
/// `|B(X,X) − Σ_i(⟨[X,[X,e_i]]_m,e_i⟩ + ⟨[X,[X,e_i]_k],e_i⟩)|`.
pub fn killing_identity_residual(space: &HomogeneousSpace) -> f64 {
    let n = space.n();
    let b = space.killing_on_m();
    let q = space.isotropy_dim();
    let mut worst = 0.0_f64;
    for x in 0..n {
        let fx = space.frame_basis(x);
        let mut s = 0.0;
        for i in 0..n {
            let ei = space.frame_basis(i);
            let xe = space.bracket_full(&fx, &ei);
            s += full_bracket_m(space, &fx, &xe).dot(&ei);
            let mut xe_k = xe.clone();
            xe_k.rows_mut(q, n).fill(0.0);
            s += full_bracket_m(space, &fx, &xe_k).dot(&ei);
        }
        worst = worst.max((b[(x, x)] - s).abs());
    }
    worst
}

/// `count` orthonormal pairs of frame vectors drawn from a seeded generator.
pub fn random_orthonormal_pairs(n: usize, count: usize, seed: u64) -> Vec<(DVector<f64>, DVector<f64>)> {
    assert!(n >= 2, "planes need dim m ≥ 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| DVector::from_fn(n, |_, _| rng.random_range(-1.0_f64..1.0));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let xn = x.norm();
        if xn < 1e-3 {
            continue;
        }
        let x = x / xn;
        let y = &y - &x * x.dot(&y);
        let yn = y.norm();
        if yn < 1e-3 {
            continue;
        }
        out.push((x, y / yn));
    }
    out
}

/// Largest pairwise disagreement between the diagonal routes over the given
/// frame pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalRoutes {
    /// tensor vs general closed formula
    pub general: f64,
    /// tensor vs cyclic formula, when cyclic
    pub cyclic: Option<f64>,
}

pub fn diagonal_route_residuals(
    space: &HomogeneousSpace,
    r: &CurvatureTensor,
    pairs: &[(DVector<f64>, DVector<f64>)],
) -> DiagonalRoutes {
    let u = u_map(space);
    let cyclic = classify(space).flags.cyclic;
    let s = cyclic.then(|| StructureOps::new(space));
    let mut general = 0.0_f64;
    let mut cyc = 0.0_f64;
    for (x, y) in pairs {
        let t = r.diagonal(x, y);
        general = general.max((t - general_diagonal_with(space, &u, x, y)).abs());
        if let Some(s) = &s {
            cyc = cyc.max((t - cyclic_diagonal_unchecked(space, s, x, y)).abs());
        }
    }
    DiagonalRoutes {
        general,
        cyclic: cyclic.then_some(cyc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{milnor_algebra, solvable_algebra, LieAlgebra, DEFAULT_TOL};
    use crate::metric::InvariantMetric;

    fn group(alg: LieAlgebra) -> HomogeneousSpace {
        let n = alg.dim();
        HomogeneousSpace::lie_group(alg, InvariantMetric::identity(n), DEFAULT_TOL).unwrap()
    }

    fn e(n: usize, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v
    }

    #[test]
    fn levi_civita_examples() {
        assert_eq!(levi_civita(&group(LieAlgebra::abelian(3))).operator_of(&e(3, 1)).amax(), 0.0);

        let a = 0.6;
        let lc = levi_civita(&group(solvable_algebra(&[a])));
        assert_eq!(lc.apply(&e(2, 1), &e(2, 1)).as_slice(), &[a, 0.0]);
        assert_eq!(lc.apply(&e(2, 1), &e(2, 0)).as_slice(), &[0.0, -a]);
        assert_eq!(lc.compatibility_residual(), 0.0);

        let su2 = group(milnor_algebra([2.0, 2.0, 2.0]));
        let lc = levi_civita(&su2);
        for i in 0..3 {
            for j in 0..3 {
                let half = su2.bracket_m(&e(3, i), &e(3, j)) * 0.5;
                assert_eq!(lc.apply(&e(3, i), &e(3, j)), half);
            }
        }
    }

    #[test]
    fn hyperbolic_plane_curvature() {
        let a = 1.7;
        let s = group(solvable_algebra(&[a]));
        let r = curvature_tensor(&s);
        assert!((r.0[(0, 1, 0, 1)] + a * a).abs() < 1e-12);
        assert!((general_curvature_diagonal(&s, &e(2, 0), &e(2, 1)) + a * a).abs() < 1e-12);
        let ric = ricci(&s);
        assert!((&ric.frame + DMatrix::identity(2, 2) * (a * a)).amax() < 1e-12);
        let lie = ric.lie_group.as_ref().unwrap();
        assert!((lie[(1, 1)] + a * a).abs() < 1e-12 && (lie[(0, 0)] + a * a).abs() < 1e-12);
        assert!(ric.route_residual() < 1e-12);
        let ein = einstein_check(&s, &ric);
        assert!(ein.einstein && (ein.lambda + a * a).abs() < 1e-12);
    }

    #[test]
    fn abelian_is_flat_and_einstein() {
        let s = group(LieAlgebra::abelian(4));
        assert_eq!(curvature_tensor(&s).0.max_abs(), 0.0);
        let ein = einstein_check(&s, &ricci(&s));
        assert!(ein.einstein && ein.lambda == 0.0);
    }

    #[test]
    fn su2_round_has_equal_sectionals() {
        let s = group(milnor_algebra([1.0, 1.0, 1.0]));
        let r = curvature_tensor(&s);
        let k = basis_sectionals(&s, &r).unwrap();
        assert!((k.max - k.min).abs() < 1e-12);
        // bi-invariant: K(X,Y) = ¼‖[X,Y]‖²
        assert!((k.min - 0.25).abs() < 1e-12);
        let g = general_curvature_diagonal(&s, &e(3, 0), &e(3, 1));
        assert!((g - k.min).abs() < 1e-12);
        assert!(matches!(
            cyclic_curvature_diagonal(&s, &e(3, 0), &e(3, 1)),
            Err(GeoError::NotCyclic { .. })
        ));
    }

    #[test]
    fn cyclic_routes_agree() {
        let s = group(milnor_algebra([1.0, 0.0, -1.0]));
        let r = curvature_tensor(&s);
        let c = cyclic_curvature_diagonal(&s, &e(3, 0), &e(3, 2)).unwrap();
        assert!((c - r.diagonal(&e(3, 0), &e(3, 2))).abs() < 1e-12);

        let (a, b) = (0.7, -1.9);
        let s = group(solvable_algebra(&[a, b]));
        let r = curvature_tensor(&s);
        let c = cyclic_curvature_diagonal(&s, &e(3, 0), &e(3, 1)).unwrap();
        assert!((c + a * a).abs() < 1e-12);
        assert!((r.diagonal(&e(3, 0), &e(3, 1)) + a * a).abs() < 1e-12);
    }

    #[test]
    fn degenerate_plane() {
        let s = group(milnor_algebra([1.0, 1.0, 1.0]));
        let r = curvature_tensor(&s);
        let x = DVector::from_vec(vec![1.0, 2.0, 0.0]);
        assert!(matches!(
            sectional(&s, &r, &x, &(&x * 3.0)),
            Err(GeoError::DegeneratePlane { .. })
        ));
    }

    #[test]
    fn xi_curvature_examples() {
        let a = 0.9;
        let s = group(solvable_algebra(&[a, a, a]));
        let xc = xi_curvatures(&s, &curvature_tensor(&s)).unwrap();
        assert!(xc.umbilical);
        assert!((xc.c - 3.0 * a).abs() < 1e-12);
        for k in &xc.sectional {
            assert!((k + a * a).abs() < 1e-12);
        }
        assert!(xc.umbilical_value_residual < 1e-12 && xc.formula_residual < 1e-12);

        let s = group(solvable_algebra(&[1.0, 2.0]));
        let xc = xi_curvatures(&s, &curvature_tensor(&s)).unwrap();
        assert!(!xc.umbilical);
        assert!((xc.sectional[0] - xc.sectional[1]).abs() > 1.0);

        let u = group(milnor_algebra([1.0, 0.0, -1.0]));
        assert_eq!(
            xi_curvatures(&u, &curvature_tensor(&u)).unwrap_err(),
            GeoError::UnimodularInput
        );
    }

    #[test]
    fn unimodular_cyclic_ricci_is_minus_killing() {
        for l in [[1.0, 0.0, -1.0], [1.0, 2.0, -3.0]] {
            let s = group(milnor_algebra(l));
            let ric = ricci(&s);
            assert!((&ric.frame + s.killing_on_m()).amax() < 1e-12);
            assert!(ric.route_residual() < 1e-12);
            assert!(!einstein_check(&s, &ric).einstein);
        }
        let ev = ricci(&group(milnor_algebra([1.0, 2.0, -3.0]))).eigenvalues();
        assert!(ev[0] < 0.0 && ev[1] < 0.0 && ev[2] > 0.0);
    }

    #[test]
    fn killing_identity_on_groups() {
        for l in [[1.0, 1.0, 1.0], [1.0, 2.0, -3.0], [0.0, 0.0, 1.0]] {
            assert!(killing_identity_residual(&group(milnor_algebra(l))) < 1e-12);
        }
    }

    #[test]
    fn random_pairs_are_orthonormal_and_reproducible() {
        let p = random_orthonormal_pairs(4, 10, 7);
        assert_eq!(p, random_orthonormal_pairs(4, 10, 7));
        for (x, y) in &p {
            assert!((x.norm() - 1.0).abs() < 1e-12 && (y.norm() - 1.0).abs() < 1e-12);
            assert!(x.dot(y).abs() < 1e-12);
        }
    }

    #[test]
    fn sequential_and_parallel_assembly_match() {
        let s = group(solvable_algebra(&[0.3, -1.2, 2.0, 0.5]));
        assert_eq!(
            curvature_tensor_with(&s, Execution::Sequential),
            curvature_tensor_with(&s, Execution::Parallel)
        );
    }
}
