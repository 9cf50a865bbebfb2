//! The U map, the homogeneous structure `S = ½T^c − U`, torsion/structure
//! conversion, trace forms, the S1/S2/S3 splitting and the class predicates.
//!
//! All rank-3 tensors here have their indices lowered in an orthonormal frame.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::reductive::HomogeneousSpace;
use crate::tensor::Tensor3;

/// `u[(a,b,c)] = ⟨U(f_a, f_b), f_c⟩`, where
/// `2⟨U(X,Y),Z⟩ = ⟨[Z,X]_m,Y⟩ + ⟨[Z,Y]_m,X⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct UMap(pub Tensor3);

impl UMap {
    pub fn apply(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let t = &self.0;
        let n = t.dim();
        DVector::from_fn(n, |c, _| {
            let mut s = 0.0;
            for a in 0..n {
                if x[a] == 0.0 {
                    continue;
                }
                for b in 0..n {
                    s += x[a] * y[b] * t[(a, b, c)];
                }
            }
            s
        })
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.0
    }
}

pub fn u_map(space: &HomogeneousSpace) -> UMap {
    let cm = space.bracket_m_tensor();
    UMap(Tensor3::from_fn(space.n(), |a, b, c| {
        0.5 * (cm[(c, a, b)] + cm[(c, b, a)])
    }))
}

/// `S_{XYZ} = ⟨S_X Y, Z⟩`, antisymmetric in the last two slots.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor(Tensor3);

/// `T_{XYZ} = ⟨T(X,Y), Z⟩`, antisymmetric in the first two slots.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionTensor(Tensor3);

impl StructureTensor {
    pub fn new(t: Tensor3, tol: f64) -> Result<Self> {
        let residual = t.last_pair_symmetric_part();
        if residual > tol {
            return Err(GeoError::SlotSymmetryViolation { residual });
        }
        Ok(Self(t))
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `T_{XYZ} = S_{XYZ} − S_{YXZ}`
    pub fn to_torsion(&self) -> TorsionTensor {
        let s = &self.0;
        TorsionTensor(Tensor3::from_fn(s.dim(), |a, b, c| s[(a, b, c)] - s[(b, a, c)]))
    }

    /// `c₁₂(S)(X) = Σ_i S_{e_i e_i X}`
    pub fn c12(&self) -> Vec<f64> {
        self.0.trace12()
    }

    /// Cyclic sum of `S` over its three slots.
    pub fn cyclic_sum(&self) -> Tensor3 {
        self.0.cyclic_sum()
    }
}

impl TorsionTensor {
    pub fn new(t: Tensor3, tol: f64) -> Result<Self> {
        let residual = t.first_pair_symmetric_part();
        if residual > tol {
            return Err(GeoError::SlotSymmetryViolation { residual });
        }
        Ok(Self(t))
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.0
    }

    /// `2S_{XYZ} = T_{XYZ} + T_{ZYX} + T_{ZXY}`
    pub fn to_structure(&self) -> StructureTensor {
        let t = &self.0;
        StructureTensor(Tensor3::from_fn(t.dim(), |x, y, z| {
            0.5 * (t[(x, y, z)] + t[(z, y, x)] + t[(z, x, y)])
        }))
    }

    /// Trace form `η(X) = tr T_X = Σ_i T_{X e_i e_i}`.
    pub fn trace_form(&self) -> Vec<f64> {
        let t = &self.0;
        let n = t.dim();
        (0..n).map(|x| (0..n).map(|i| t[(x, i, i)]).sum()).collect()
    }
}

/// Either side of the torsion/structure correspondence.
#[derive(Debug, Clone, PartialEq)]
pub enum TorsionOrStructure {
    Torsion(TorsionTensor),
    Structure(StructureTensor),
}

/// Map a torsion tensor to its structure tensor and vice versa.
pub fn torsion_structure_convert(input: &TorsionOrStructure) -> TorsionOrStructure {
    match input {
        TorsionOrStructure::Torsion(t) => TorsionOrStructure::Structure(t.to_structure()),
        TorsionOrStructure::Structure(s) => TorsionOrStructure::Torsion(s.to_torsion()),
    }
}

/// `S = ½T^c − U`, i.e. `S_{abc} = −½⟨[f_a,f_b]_m,f_c⟩ − ⟨U(f_a,f_b),f_c⟩`.
pub fn homogeneous_structure(space: &HomogeneousSpace) -> StructureTensor {
    let cm = space.bracket_m_tensor();
    let u = u_map(space);
    StructureTensor(Tensor3::from_fn(space.n(), |a, b, c| {
        -0.5 * cm[(a, b, c)] - u.0[(a, b, c)]
    }))
}

/// `T^c_{abc} = −⟨[f_a, f_b]_m, f_c⟩`
pub fn canonical_torsion(space: &HomogeneousSpace) -> TorsionTensor {
    TorsionTensor(space.bracket_m_tensor() * -1.0)
}

/// A tensor split into its S1, S2 and S3 components.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeDecomposition {
    pub s1: Tensor3,
    pub s2: Tensor3,
    pub s3: Tensor3,
    pub norms: TypeNorms,
    /// The one-form generating `s1`.
    pub phi: Vec<f64>,
    /// Set when `n < 3`: the space of structure tensors is all of type S1.
    pub s1_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeNorms {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl TypeDecomposition {
    /// ‖S − (S1 + S2 + S3)‖
    pub fn reconstruction_error(&self, s: &StructureTensor) -> f64 {
        (&(&(&self.s1 + &self.s2) + &self.s3) - s.tensor()).norm()
    }

    /// Largest |⟨S_i, S_j⟩| over i ≠ j.
    pub fn max_cross_inner(&self) -> f64 {
        [
            self.s1.dot(&self.s2),
            self.s1.dot(&self.s3),
            self.s2.dot(&self.s3),
        ]
        .into_iter()
        .fold(0.0, |m, x| m.max(x.abs()))
    }
}

pub fn decompose(s: &StructureTensor) -> TypeDecomposition {
    let t = s.tensor();
    let n = t.dim();
    let s3 = &t.cyclic_sum() * (1.0 / 3.0);
    let phi: Vec<f64> = if n > 1 {
        s.c12().into_iter().map(|v| v / (n as f64 - 1.0)).collect()
    } else {
        vec![0.0; n]
    };
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let s1 = Tensor3::from_fn(n, |x, y, z| delta(x, y) * phi[z] - delta(x, z) * phi[y]);
    let s2 = &(t - &s1) - &s3;
    let norms = TypeNorms {
        s1: s1.norm(),
        s2: s2.norm(),
        s3: s3.norm(),
    };
    TypeDecomposition {
        s1,
        s2,
        s3,
        norms,
        phi,
        s1_only: n < 3,
    }
}

/// The six class flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub cyclic: bool,
    pub traceless: bool,
    /// Cyclic and traceless with `S ≠ 0`.
    pub traceless_cyclic: bool,
    pub vectorial: bool,
    pub naturally_reductive: bool,
    pub symmetric: bool,
}

impl ClassFlags {
    /// Most specific class name.
    pub fn label(&self) -> &'static str {
        if self.symmetric {
            "symmetric (S = 0)"
        } else if self.naturally_reductive {
            "naturally reductive (S3)"
        } else if self.traceless_cyclic {
            "traceless cyclic (S2)"
        } else if self.vectorial {
            "vectorial (S1)"
        } else if self.cyclic {
            "cyclic, not traceless (S1+S2)"
        } else if self.traceless {
            "traceless (S2+S3)"
        } else {
            "general"
        }
    }
}

/// Raw residuals behind each flag, evaluated on brackets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassResiduals {
    /// max |𝔖⟨[X,Y]_m, Z⟩|
    pub cyclic: f64,
    /// ‖η^c‖
    pub traceless: f64,
    /// max |[X,Y]_m − (Xη(Y) − Yη(X))/(n−1)|
    pub vectorial: f64,
    /// max |⟨[X,Y]_m,Z⟩ + ⟨[X,Z]_m,Y⟩|
    pub naturally_reductive: f64,
    /// max |[X,Y]_m|
    pub symmetric: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(flatten)]
    pub flags: ClassFlags,
    pub norms: TypeNorms,
    /// `η^c` in caller coordinates of `m`.
    pub eta: Vec<f64>,
    pub residuals: ClassResiduals,
    /// Flags recomputed from the S1/S2/S3 norms.
    pub flags_from_norms: ClassFlags,
    /// Bracket route and norm route agree.
    pub consistent: bool,
}

/// Threshold applied to Frobenius norms of the components, matching an
/// entrywise tolerance `tol`.
pub fn norm_threshold(n: usize, tol: f64) -> f64 {
    tol * ((n * n * n) as f64).sqrt().max(1.0)
}

pub fn class_residuals(space: &HomogeneousSpace) -> ClassResiduals {
    let n = space.n();
    let cm = space.bracket_m_tensor();
    let eta = space.eta_frame();
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut r = ClassResiduals {
        cyclic: 0.0,
        traceless: eta.norm(),
        vectorial: 0.0,
        naturally_reductive: 0.0,
        symmetric: cm.max_abs(),
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = cm[(a, b, c)];
                r.cyclic = r.cyclic.max((v + cm[(b, c, a)] + cm[(c, a, b)]).abs());
                r.naturally_reductive = r.naturally_reductive.max((v + cm[(a, c, b)]).abs());
                let vect = if n > 1 {
                    (delta(a, c) * eta[b] - delta(b, c) * eta[a]) / (n as f64 - 1.0)
                } else {
                    0.0
                };
                r.vectorial = r.vectorial.max((v - vect).abs());
            }
        }
    }
    r
}

fn flags_from_norms(norms: &TypeNorms, n: usize, tol: f64) -> ClassFlags {
    let t = norm_threshold(n, tol);
    let (z1, z2, z3) = (norms.s1 <= t, norms.s2 <= t, norms.s3 <= t);
    let symmetric = z1 && z2 && z3;
    ClassFlags {
        cyclic: z3,
        traceless: z1,
        traceless_cyclic: z1 && z3 && !symmetric,
        vectorial: z2 && z3,
        naturally_reductive: z1 && z2,
        symmetric,
    }
}

/// Classify the homogeneous structure of `space` from its brackets, with the
/// S1/S2/S3 norms as an independent cross-check.
pub fn classify(space: &HomogeneousSpace) -> ClassificationReport {
    let tol = space.tol();
    let residuals = class_residuals(space);
    let cyclic = residuals.cyclic <= tol;
    let traceless = residuals.traceless <= tol;
    let symmetric = residuals.symmetric <= tol;
    let flags = ClassFlags {
        cyclic,
        traceless,
        traceless_cyclic: cyclic && traceless && !symmetric,
        vectorial: residuals.vectorial <= tol,
        naturally_reductive: residuals.naturally_reductive <= tol,
        symmetric,
    };
    let dec = decompose(&homogeneous_structure(space));
    let from_norms = flags_from_norms(&dec.norms, space.n(), tol);
    ClassificationReport {
        flags,
        norms: dec.norms,
        eta: space
            .covector_from_frame(space.eta_frame())
            .as_slice()
            .to_vec(),
        residuals,
        flags_from_norms: from_norms,
        consistent: from_norms == flags,
    }
}

/// max |⟨S_ξ Y, Z⟩| over frame pairs.
pub fn s_xi_residual(space: &HomogeneousSpace) -> f64 {
    let s = homogeneous_structure(space);
    let xi = space.eta_frame();
    let n = space.n();
    let mut worst = 0.0_f64;
    for b in 0..n {
        for c in 0..n {
            let v: f64 = (0..n).map(|a| xi[a] * s.tensor()[(a, b, c)]).sum();
            worst = worst.max(v.abs());
        }
    }
    worst
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

    /// U evaluated straight from its defining identity against every Z.
    fn u_by_definition(space: &HomogeneousSpace, a: usize, b: usize) -> Vec<f64> {
        let (x, y) = (space.frame_basis(a), space.frame_basis(b));
        (0..space.n())
            .map(|c| {
                let z = space.frame_basis(c);
                0.5 * (space.bracket_m(&z, &x).dot(&y) + space.bracket_m(&z, &y).dot(&x))
            })
            .collect()
    }

    #[test]
    fn u_map_examples() {
        assert_eq!(u_map(&group(LieAlgebra::abelian(3))).0.max_abs(), 0.0);

        let l3 = 1.7;
        let h = group(milnor_algebra([0.0, 0.0, l3]));
        let u = u_map(&h);
        let e = |i| h.frame_basis(i);
        assert_eq!(u.apply(&e(0), &e(2)).as_slice(), &[0.0, -l3 / 2.0, 0.0]);
        assert_eq!(u.apply(&e(0), &e(1)).as_slice(), &[0.0, 0.0, 0.0]);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(u.apply(&e(a), &e(b)).as_slice(), u_by_definition(&h, a, b).as_slice());
            }
        }

        let alpha = 0.8;
        let g2 = group(solvable_algebra(&[alpha]));
        let u = u_map(&g2);
        let e = |i| g2.frame_basis(i);
        assert_eq!(u.apply(&e(1), &e(1)).as_slice(), &[alpha, 0.0]);
        assert_eq!(u.apply(&e(0), &e(0)).as_slice(), &[0.0, 0.0]);
        assert_eq!(u.apply(&e(0), &e(1)).as_slice(), &[0.0, -alpha / 2.0]);
    }

    #[test]
    fn structure_tensor_examples() {
        let alpha = 0.8;
        let g2 = group(solvable_algebra(&[alpha]));
        let s = homogeneous_structure(&g2);
        let t = s.tensor();
        // S_{X1} X1 = −α X0, S_{X1} X0 = α X1, S_{X0} = 0
        assert_eq!((t[(1, 1, 0)], t[(1, 1, 1)]), (-alpha, 0.0));
        assert_eq!((t[(1, 0, 0)], t[(1, 0, 1)]), (0.0, alpha));
        assert_eq!(t[(0, 0, 1)], 0.0);
        assert_eq!(t[(0, 1, 0)], 0.0);

        let su2 = group(milnor_algebra([1.0, 1.0, 1.0]));
        let s = homogeneous_structure(&su2);
        assert_eq!(u_map(&su2).0.max_abs(), 0.0);
        assert_eq!(s.tensor().first_pair_symmetric_part(), 0.0);
        let half_t = canonical_torsion(&su2).tensor() * 0.5;
        assert_eq!(s.tensor(), &half_t);
    }

    #[test]
    fn conversions() {
        let z = StructureTensor::new(Tensor3::zeros(3), 0.0).unwrap();
        assert_eq!(z.to_torsion().tensor().max_abs(), 0.0);

        // totally skew T -> S = ½T
        let eps = Tensor3::from_fn(3, |a, b, c| {
            ((b as i64 - a as i64) * (c as i64 - a as i64) * (c as i64 - b as i64)) as f64 / 2.0
        });
        let t = TorsionTensor::new(eps.clone(), 0.0).unwrap();
        assert_eq!(t.to_structure().tensor(), &(&eps * 0.5));

        // vectorial T_X Y = φ(X)Y − φ(Y)X  ->  S_XYZ = ⟨X,Y⟩φ(Z) − ⟨X,Z⟩φ(Y)
        let phi = [0.3, -1.0, 2.0, 0.5];
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        let tv = TorsionTensor::new(
            Tensor3::from_fn(4, |x, y, z| phi[x] * d(y, z) - phi[y] * d(x, z)),
            0.0,
        )
        .unwrap();
        let expect = Tensor3::from_fn(4, |x, y, z| d(x, y) * phi[z] - d(x, z) * phi[y]);
        assert!((tv.to_structure().tensor() - &expect).max_abs() < 1e-15);
        // η = (n − 1) φ
        let eta = tv.trace_form();
        for i in 0..4 {
            assert!((eta[i] - 3.0 * phi[i]).abs() < 1e-15);
        }

        assert!(matches!(
            StructureTensor::new(Tensor3::from_fn(2, |_, _, _| 1.0), 1e-9),
            Err(GeoError::SlotSymmetryViolation { .. })
        ));
        assert!(matches!(
            TorsionTensor::new(Tensor3::from_fn(2, |_, _, _| 1.0), 1e-9),
            Err(GeoError::SlotSymmetryViolation { .. })
        ));
    }

    #[test]
    fn trace_form_matches_c12_and_eta() {
        let (a, b) = (0.4, 1.1);
        let g = group(solvable_algebra(&[a, b]));
        let tc = canonical_torsion(&g);
        let eta = tc.trace_form();
        assert!((eta[0] + (a + b)).abs() < 1e-15);
        assert_eq!(&eta[1..], &[0.0, 0.0]);
        let s = tc.to_structure();
        assert_eq!(s.c12(), eta);

        let unimod = group(milnor_algebra([1.0, 2.0, -3.0]));
        assert!(canonical_torsion(&unimod).trace_form().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn decomposition_examples() {
        let s = homogeneous_structure(&group(milnor_algebra([1.0, 2.0, -3.0])));
        let d = decompose(&s);
        assert!(d.norms.s1 < 1e-15 && d.norms.s3 < 1e-15 && d.norms.s2 > 1.0);

        let d = decompose(&StructureTensor::new(Tensor3::zeros(4), 0.0).unwrap());
        assert_eq!((d.norms.s1, d.norms.s2, d.norms.s3), (0.0, 0.0, 0.0));

        let s = homogeneous_structure(&group(milnor_algebra([1.0, 1.0, 1.0])));
        let d = decompose(&s);
        assert!(d.norms.s1 < 1e-15 && d.norms.s2 < 1e-15 && d.norms.s3 > 0.5);

        // n = 2: everything is S1
        let d = decompose(&homogeneous_structure(&group(solvable_algebra(&[1.0]))));
        assert!(d.s1_only);
        assert!(d.norms.s2 < 1e-15 && d.norms.s3 < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&group(milnor_algebra([1.0, 0.0, -1.0])));
        assert!(r.flags.traceless_cyclic && !r.flags.naturally_reductive);
        assert!(r.consistent);

        let r = classify(&group(solvable_algebra(&[1.0, 2.0, 0.5])));
        assert!(r.flags.cyclic && !r.flags.traceless && !r.flags.traceless_cyclic);
        assert!(r.consistent);

        let r = classify(&group(milnor_algebra([1.0, 1.0, 1.0])));
        assert!(r.flags.naturally_reductive && r.flags.traceless && !r.flags.cyclic);
        assert!(r.residuals.cyclic > 2.9);
        assert!(r.consistent);

        let r = classify(&group(solvable_algebra(&[0.7, 0.7])));
        assert!(r.flags.vectorial && r.flags.cyclic);
        assert!(r.consistent);

        let r = classify(&group(LieAlgebra::abelian(3)));
        assert!(r.flags.symmetric && r.flags.cyclic && !r.flags.traceless_cyclic);
    }

    #[test]
    fn s_xi_vanishes_on_cyclic_solvable() {
        let g = group(solvable_algebra(&[1.0, -3.0, 0.5]));
        assert!(s_xi_residual(&g) < 1e-14);
    }
}
