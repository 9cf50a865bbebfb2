//! Named cyclic and non-cyclic homogeneous spaces with their expected class
//! labels. Expected labels are derived from the parameters by closed-form
//! rules, never by running [`classify`](crate::structure::classify).

pub mod matrix;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{GeoError, Result};
use crate::lie::{milnor_algebra, semidirect_sum, solvable_algebra, Bracket, Derivation, LieAlgebra};
use crate::metric::InvariantMetric;
use crate::reductive::{HomogeneousSpace, ReductiveDecomposition};
use crate::spectrum::{graded_space, theta_split, BlockGrading, Order3Automorphism};
use crate::structure::ClassFlags;

/// Tolerance used for catalog spaces built from numerically extracted constants.
pub const CATALOG_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    /// Parameters after filling in defaults.
    pub params: Value,
    pub space: HomogeneousSpace,
    pub expected: ClassFlags,
    /// Block grading of `m` (indices of `space.algebra()`), for graded entries.
    pub grading: Option<BlockGrading>,
    /// Block coefficients `λ_a` of the metric `Σ λ_a B|_{m_a}`.
    pub lambda: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamInfo {
    pub name: &'static str,
    pub default: Value,
    pub range: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub params: Vec<ParamInfo>,
}

fn p(name: &'static str, default: Value, range: &'static str) -> ParamInfo {
    ParamInfo { name, default, range }
}

/// All entries, in stable alphabetical order.
pub fn list() -> Vec<EntryInfo> {
    vec![
        EntryInfo {
            name: "b2_product",
            description: "R² ⋉ R² with [U,X]=ρX, [U,Y]=σY, [V,X]=λX, [V,Y]=−λY",
            params: vec![
                p("rho", json!(1.0), "ρ + σ ≠ 0"),
                p("sigma", json!(0.5), "ρ + σ ≠ 0"),
                p("lambda", json!(1.0), "> 0"),
            ],
        },
        EntryInfo {
            name: "b4_product",
            description: "(R ⋉ (R × SO(3) or SO(1,2)))/SO(2), a product of a hyperbolic plane with a round or hyperbolic plane",
            params: vec![
                p("alpha", json!(1.0), "≠ 0"),
                p("c", json!(1.0), "> 0"),
                p("compact", json!(true), "true: S² factor, false: H² factor"),
            ],
        },
        EntryInfo {
            name: "g_n",
            description: "Gⁿ(α₁,…,α_{n−1}): [X0,Xi] = αi Xi, orthonormal",
            params: vec![p("alpha", json!([1.0, 1.0, 1.0]), "nonempty, not all zero")],
        },
        EntryInfo {
            name: "milnor3",
            description: "3-dimensional unimodular group in an orthonormal Milnor frame",
            params: vec![p(
                "lambda",
                json!([1.0, 0.0, -1.0]),
                "signs (+,+,+), (+,+,−), (+,+,0), (+,0,−), (0,0,+) or (0,0,0)",
            )],
        },
        EntryInfo {
            name: "r_heisenberg",
            description: "R ⋉ ((SO(2) ⋉ H3)/SO(2)) with derivation diag(0, α, α, 2α)",
            params: vec![p("alpha", json!(1.0), "≠ 0"), p("lambda3", json!(1.0), "> 0")],
        },
        EntryInfo {
            name: "so2_heisenberg",
            description: "(SO(2) ⋉ H3)/SO(2) with f3 = e3 − (λ3/2)A",
            params: vec![p("lambda3", json!(2.0), "> 0")],
        },
        EntryInfo {
            name: "so2_milnor3",
            description: "(SO(2) ⋉ G)/SO(2) for Milnor frames with λ1 = λ2 = λ, λ3 = λk",
            params: vec![
                p("lambda", json!(1.0), "≥ 0"),
                p("lambda_k", json!(2.0), "≠ 0, and > 0 when λ = 0"),
            ],
        },
        EntryInfo {
            name: "sp11_a3iii",
            description: "Sp(1,1)/(U(1) × Sp(1)) with metric −λB|V + μB|H",
            params: vec![p("lambda", json!(2.0), "> 0"), p("mu", json!(1.0), "> 0")],
        },
        EntryInfo {
            name: "su21_a3ii",
            description: "SU(2,1)/T² with metric λk B|V12 + λ B|V13 + μ B|V23",
            params: vec![
                p("lambda", json!(1.0), "> 0"),
                p("mu", json!(1.0), "> 0"),
                p("lambda_k", Value::Null, "< 0, defaults to −(λ + μ)"),
            ],
        },
        EntryInfo {
            name: "su3_a3ii",
            description: "SU(3)/T² with metric −(s1 B|V12 + s2 B|V13 + s3 B|V23)",
            params: vec![p("scales", json!([1.0, 1.0, 1.0]), "three positive numbers")],
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    list().into_iter().map(|e| e.name).collect()
}

struct Params {
    entry: String,
    given: Map<String, Value>,
    resolved: Map<String, Value>,
}

impl Params {
    fn new(entry: &str, params: &Value) -> Result<Self> {
        let given = match params {
            Value::Null => Map::new(),
            Value::Object(m) => m.clone(),
            other => {
                return Err(GeoError::ParamOutOfRange(format!(
                    "{entry}: parameters must be a JSON object, got {other}"
                )))
            }
        };
        Ok(Self {
            entry: entry.to_string(),
            given,
            resolved: Map::new(),
        })
    }

    fn err(&self, msg: impl std::fmt::Display) -> GeoError {
        GeoError::ParamOutOfRange(format!("{}: {msg}", self.entry))
    }

    fn take(&mut self, key: &str) -> Option<Value> {
        self.given.remove(key).filter(|v| !v.is_null())
    }

    fn number(&mut self, key: &str, default: f64) -> Result<f64> {
        let v = match self.take(key) {
            None => default,
            Some(v) => v
                .as_f64()
                .ok_or_else(|| self.err(format!("{key} must be a number")))?,
        };
        if !v.is_finite() {
            return Err(self.err(format!("{key} must be finite")));
        }
        self.resolved.insert(key.into(), json!(v));
        Ok(v)
    }

    fn optional_number(&mut self, key: &str) -> Result<Option<f64>> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => {
                let x = v
                    .as_f64()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| self.err(format!("{key} must be a finite number")))?;
                self.resolved.insert(key.into(), json!(x));
                Ok(Some(x))
            }
        }
    }

    fn list(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        let v = match self.take(key) {
            None => default.to_vec(),
            Some(Value::Array(items)) => items
                .iter()
                .map(|x| x.as_f64().filter(|x| x.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .ok_or_else(|| self.err(format!("{key} must be an array of finite numbers")))?,
            Some(_) => return Err(self.err(format!("{key} must be an array"))),
        };
        self.resolved.insert(key.into(), json!(v));
        Ok(v)
    }

    fn flag(&mut self, key: &str, default: bool) -> Result<bool> {
        let v = match self.take(key) {
            None => default,
            Some(v) => v
                .as_bool()
                .ok_or_else(|| self.err(format!("{key} must be a boolean")))?,
        };
        self.resolved.insert(key.into(), json!(v));
        Ok(v)
    }

    fn require(&self, ok: bool, msg: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(self.err(msg))
        }
    }

    fn finish(self) -> Result<Value> {
        if let Some(k) = self.given.keys().next() {
            return Err(self.err(format!("unknown parameter {k:?}")));
        }
        Ok(Value::Object(self.resolved))
    }
}

fn flags(cyclic: bool, traceless: bool, vectorial: bool, naturally_reductive: bool, symmetric: bool) -> ClassFlags {
    ClassFlags {
        cyclic,
        traceless,
        traceless_cyclic: cyclic && traceless && !symmetric,
        vectorial,
        naturally_reductive,
        symmetric,
    }
}

/// Build an entry with [`CATALOG_TOL`].
pub fn build(name: &str, params: &Value) -> Result<CatalogEntry> {
    build_with_tol(name, params, CATALOG_TOL)
}

pub fn build_default(name: &str) -> Result<CatalogEntry> {
    build(name, &Value::Null)
}

/// Every entry with default parameters, sorted by name.
pub fn default_entries() -> Result<Vec<CatalogEntry>> {
    names().into_iter().map(build_default).collect()
}

pub fn build_with_tol(name: &str, params: &Value, tol: f64) -> Result<CatalogEntry> {
    let mut ps = Params::new(name, params)?;
    let info = list()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| GeoError::UnknownEntry(name.to_string()))?;
    let (space, expected, graded) = match name {
        "milnor3" => milnor3(&mut ps, tol)?,
        "g_n" => g_n(&mut ps, tol)?,
        "so2_milnor3" => {
            let l = ps.number("lambda", 1.0)?;
            let lk = ps.number("lambda_k", 2.0)?;
            ps.require(l >= 0.0, "lambda must be ≥ 0")?;
            ps.require(lk != 0.0, "lambda_k must be nonzero")?;
            ps.require(l > 0.0 || lk > 0.0, "lambda_k must be > 0 when lambda = 0")?;
            so2_milnor3(l, lk, tol)?
        }
        "so2_heisenberg" => {
            let l3 = ps.number("lambda3", 2.0)?;
            ps.require(l3 > 0.0, "lambda3 must be > 0")?;
            so2_milnor3(0.0, l3, tol)?
        }
        "r_heisenberg" => {
            let a = ps.number("alpha", 1.0)?;
            let l3 = ps.number("lambda3", 1.0)?;
            ps.require(a != 0.0, "alpha must be nonzero")?;
            ps.require(l3 > 0.0, "lambda3 must be > 0")?;
            r_heisenberg(a, l3, tol)?
        }
        "b2_product" => {
            let rho = ps.number("rho", 1.0)?;
            let sigma = ps.number("sigma", 0.5)?;
            let l = ps.number("lambda", 1.0)?;
            ps.require(rho + sigma != 0.0, "rho + sigma must be nonzero")?;
            ps.require(l > 0.0, "lambda must be > 0")?;
            b2_product(rho, sigma, l, tol)?
        }
        "b4_product" => {
            let a = ps.number("alpha", 1.0)?;
            let c = ps.number("c", 1.0)?;
            let compact = ps.flag("compact", true)?;
            ps.require(a != 0.0, "alpha must be nonzero")?;
            ps.require(c > 0.0, "c must be > 0")?;
            b4_product(a, c, compact, tol)?
        }
        "su21_a3ii" => {
            let l = ps.number("lambda", 1.0)?;
            let mu = ps.number("mu", 1.0)?;
            ps.require(l > 0.0 && mu > 0.0, "lambda and mu must be > 0")?;
            let lk = match ps.optional_number("lambda_k")? {
                Some(v) => v,
                None => {
                    let v = -(l + mu);
                    ps.resolved.insert("lambda_k".into(), json!(v));
                    v
                }
            };
            ps.require(lk < 0.0, "lambda_k must be < 0")?;
            let cyclic = (lk + l + mu).abs() <= 1e-12 * (l + mu);
            let model = matrix::su21()?;
            graded(model, vec![lk, l, mu], flags(cyclic, true, false, false, false), tol)?
        }
        "sp11_a3iii" => {
            let l = ps.number("lambda", 2.0)?;
            let mu = ps.number("mu", 1.0)?;
            ps.require(l > 0.0 && mu > 0.0, "lambda and mu must be > 0")?;
            let cyclic = (l - 2.0 * mu).abs() <= 1e-12 * l;
            let model = matrix::sp11()?;
            graded(model, vec![-l, mu], flags(cyclic, true, false, false, false), tol)?
        }
        "su3_a3ii" => {
            let s = ps.list("scales", &[1.0, 1.0, 1.0])?;
            ps.require(s.len() == 3 && s.iter().all(|x| *x > 0.0), "scales must be three positive numbers")?;
            let nr = s.iter().all(|x| (x - s[0]).abs() <= 1e-12 * s[0]);
            let model = matrix::su3()?;
            graded(model, s.iter().map(|x| -x).collect(), flags(false, true, false, nr, false), tol)?
        }
        _ => return Err(GeoError::UnknownEntry(name.to_string())),
    };
    let params = ps.finish()?;
    let (grading, lambda) = match graded {
        Some((g, l)) => (Some(g), Some(l)),
        None => (None, None),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        description: info.description.to_string(),
        params,
        space,
        expected,
        grading,
        lambda,
    })
}

type Built = (HomogeneousSpace, ClassFlags, Option<(BlockGrading, Vec<f64>)>);

fn group(alg: LieAlgebra, tol: f64) -> Result<HomogeneousSpace> {
    let n = alg.dim();
    HomogeneousSpace::lie_group(alg, InvariantMetric::identity(n), tol)
}

const MILNOR_PATTERNS: [[i8; 3]; 6] = [
    [1, 1, 1],
    [1, 1, -1],
    [1, 1, 0],
    [1, 0, -1],
    [0, 0, 1],
    [0, 0, 0],
];

fn milnor3(ps: &mut Params, tol: f64) -> Result<Built> {
    let l = ps.list("lambda", &[1.0, 0.0, -1.0])?;
    ps.require(l.len() == 3, "lambda must have three entries")?;
    let sign = |x: f64| -> i8 {
        if x > 0.0 {
            1
        } else if x < 0.0 {
            -1
        } else {
            0
        }
    };
    let pattern = [sign(l[0]), sign(l[1]), sign(l[2])];
    ps.require(
        MILNOR_PATTERNS.contains(&pattern),
        "sign pattern must be one of (+,+,+), (+,+,−), (+,+,0), (+,0,−), (0,0,+), (0,0,0)",
    )?;
    let zero = l.iter().all(|x| *x == 0.0);
    let equal = l.iter().all(|x| *x == l[0]);
    let cyclic = (l[0] + l[1] + l[2]).abs() <= 1e-12 * l.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
    let expected = flags(cyclic, true, zero, equal, zero);
    Ok((group(milnor_algebra([l[0], l[1], l[2]]), tol)?, expected, None))
}

fn g_n(ps: &mut Params, tol: f64) -> Result<Built> {
    let a = ps.list("alpha", &[1.0, 1.0, 1.0])?;
    ps.require(!a.is_empty(), "alpha must be nonempty")?;
    ps.require(a.iter().any(|x| *x != 0.0), "alpha must not be all zero")?;
    let sum: f64 = a.iter().sum();
    let scale = a.iter().map(|x| x.abs()).sum::<f64>();
    let traceless = sum.abs() <= 1e-12 * scale;
    let vectorial = a.iter().all(|x| (x - a[0]).abs() <= 1e-12 * scale);
    Ok((
        group(solvable_algebra(&a), tol)?,
        flags(true, traceless, vectorial, false, false),
        None,
    ))
}

/// `so(2) ⋉ g` in the basis `{A, e1, e2, e3}` for Milnor `(λ, λ, λk)`.
fn so2_semidirect(l: f64, lk: f64) -> Result<LieAlgebra> {
    LieAlgebra::new(
        4,
        Some(vec!["A12".into(), "e1".into(), "e2".into(), "e3".into()]),
        [
            Bracket::new(0, 1, [(2, 1.0)]),
            Bracket::new(0, 2, [(1, -1.0)]),
            Bracket::new(2, 3, [(1, l)]),
            Bracket::new(3, 1, [(2, l)]),
            Bracket::new(1, 2, [(3, lk)]),
        ],
        crate::lie::DEFAULT_TOL,
    )
}

fn so2_milnor3(l: f64, lk: f64, tol: f64) -> Result<Built> {
    let alg = so2_semidirect(l, lk)?;
    // f3 = e3 − (λ + λk/2) A makes the complement cyclic
    let mut p = DMatrix::identity(4, 4);
    p[(0, 3)] = -(l + lk / 2.0);
    let labels = vec!["A12".into(), "f1".into(), "f2".into(), "f3".into()];
    let alg = alg.change_basis(&p, Some(labels), crate::lie::DEFAULT_TOL)?;
    let dec = ReductiveDecomposition::new(alg, vec![0], vec![1, 2, 3], tol)?;
    let space = HomogeneousSpace::new(dec, InvariantMetric::identity(3), tol)?;
    Ok((space, flags(true, true, false, false, false), None))
}

fn r_heisenberg(a: f64, l3: f64, tol: f64) -> Result<Built> {
    let base = so2_semidirect(0.0, l3)?;
    let d = Derivation::new(
        &base,
        DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, a, a, 2.0 * a])),
        crate::lie::DEFAULT_TOL,
    )?;
    let alg = semidirect_sum(&d, &base, crate::lie::DEFAULT_TOL)?;
    // basis {T, A12, e1, e2, e3}; replace e3 by f3 = e3 − (λ3/2) A12
    let mut p = DMatrix::identity(5, 5);
    p[(1, 4)] = -l3 / 2.0;
    let labels = ["T", "A12", "f1", "f2", "f3"].iter().map(|s| s.to_string()).collect();
    let alg = alg.change_basis(&p, Some(labels), crate::lie::DEFAULT_TOL)?;
    let dec = ReductiveDecomposition::new(alg, vec![1], vec![0, 2, 3, 4], tol)?;
    let space = HomogeneousSpace::new(dec, InvariantMetric::identity(4), tol)?;
    Ok((space, flags(true, false, false, false, false), None))
}

fn b2_product(rho: f64, sigma: f64, l: f64, tol: f64) -> Result<Built> {
    let alg = LieAlgebra::new(
        4,
        Some(vec!["U".into(), "V".into(), "X".into(), "Y".into()]),
        [
            Bracket::new(0, 2, [(2, rho)]),
            Bracket::new(0, 3, [(3, sigma)]),
            Bracket::new(1, 2, [(2, l)]),
            Bracket::new(1, 3, [(3, -l)]),
        ],
        crate::lie::DEFAULT_TOL,
    )?;
    Ok((group(alg, tol)?, flags(true, false, false, false, false), None))
}

fn b4_product(a: f64, c: f64, compact: bool, tol: f64) -> Result<Built> {
    let s = if compact { 1.0 } else { -1.0 };
    let alg = LieAlgebra::new(
        5,
        Some(vec!["u".into(), "e0".into(), "f1".into(), "f2".into(), "f3".into()]),
        [
            Bracket::new(3, 4, [(0, s * c)]),
            Bracket::new(4, 0, [(3, c)]),
            Bracket::new(0, 3, [(4, c)]),
            Bracket::new(1, 2, [(2, a)]),
        ],
        crate::lie::DEFAULT_TOL,
    )?;
    let dec = ReductiveDecomposition::new(alg, vec![0], vec![1, 2, 3, 4], tol)?;
    let space = HomogeneousSpace::new(dec, InvariantMetric::identity(4), tol)?;
    Ok((space, flags(true, false, false, false, false), None))
}

/// Split along `θ`, carry the blocks to the split basis, and put the metric
/// `Σ λ_a B|_{m_a}` on `m`.
fn graded(model: matrix::ThreeSymmetricModel, lambda: Vec<f64>, expected: ClassFlags, tol: f64) -> Result<Built> {
    let theta = Order3Automorphism::new(&model.algebra, model.theta.clone(), 1e-10)?;
    let split = theta_split(&model.algebra, &theta, tol)?;
    let q = split.k_basis.ncols();
    let position = |i: usize| -> Result<usize> {
        (0..split.m_basis.ncols())
            .find(|&c| {
                let col = split.m_basis.column(c);
                (col - model.algebra.basis_vector(i)).amax() <= 1e-12
            })
            .map(|c| q + c)
            .ok_or_else(|| GeoError::InvalidBasis(format!("block vector {i} is not a split basis vector")))
    };
    let blocks = model
        .blocks
        .iter()
        .map(|b| b.iter().map(|&i| position(i)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let grading = BlockGrading::new(blocks, model.signs.clone())?;
    let alg = split.decomposition.algebra().clone();
    let space = graded_space(&alg, &grading, &lambda, tol)?;
    Ok((space, expected, Some((grading, lambda))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::classify;

    #[test]
    fn every_entry_builds_with_defaults_and_matches_expected() {
        let names = names();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        for e in default_entries().unwrap() {
            let r = classify(&e.space);
            assert_eq!(r.flags, e.expected, "{}: {:?}", e.name, r.residuals);
            assert!(r.consistent, "{}", e.name);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(build_default("nope"), Err(GeoError::UnknownEntry(_))));
        assert!(matches!(
            build("milnor3", &json!({"lambda": [-1.0, 1.0, 1.0]})),
            Err(GeoError::ParamOutOfRange(_))
        ));
        assert!(matches!(
            build("milnor3", &json!({"lam": [1.0, 1.0, 1.0]})),
            Err(GeoError::ParamOutOfRange(_))
        ));
        assert!(matches!(
            build("b2_product", &json!({"rho": 1.0, "sigma": -1.0})),
            Err(GeoError::ParamOutOfRange(_))
        ));
    }

    #[test]
    fn examples() {
        let e = build("milnor3", &json!({"lambda": [1.0, 2.0, -3.0]})).unwrap();
        assert!(e.expected.traceless_cyclic && classify(&e.space).flags.traceless_cyclic);

        let e = build("g_n", &json!({"alpha": [1.0, 1.0, 1.0]})).unwrap();
        assert_eq!(e.space.n(), 4);
        assert!(classify(&e.space).flags.cyclic);

        let e = build("so2_heisenberg", &json!({"lambda3": 2.0})).unwrap();
        assert_eq!(e.space.isotropy_dim(), 1);
        let f3 = e.space.frame_algebra();
        // [f1, f2] = λ3 f3 + (λ3²/2) A12
        assert!((f3.c(1, 2, 3) - 2.0).abs() < 1e-12 && (f3.c(1, 2, 0) - 2.0).abs() < 1e-12);
        assert!(classify(&e.space).flags.traceless_cyclic);
    }

    #[test]
    fn su21_family_and_perturbation() {
        let e = build("su21_a3ii", &json!({"lambda": 1.0, "mu": 1.0})).unwrap();
        assert!(classify(&e.space).flags.cyclic);
        let e = build("su21_a3ii", &json!({"lambda": 1.0, "mu": 1.0, "lambda_k": -1.9})).unwrap();
        assert!(!e.expected.cyclic);
        assert!(!classify(&e.space).flags.cyclic);
    }

    #[test]
    fn grading_relations_hold() {
        // su(2,1): [V_k, V_k] ⊂ k and [V_k, V_r] ⊂ V_s
        let e = build_default("su21_a3ii").unwrap();
        let g = e.grading.unwrap();
        let alg = e.space.algebra();
        let q = 2;
        let block_of = |i: usize| g.blocks.iter().position(|b| b.contains(&i));
        for (a, ba) in g.blocks.iter().enumerate() {
            for (b, bb) in g.blocks.iter().enumerate() {
                for &i in ba {
                    for &j in bb {
                        for l in q..alg.dim() {
                            if alg.c(i, j, l).abs() > 1e-10 {
                                let c = block_of(l).unwrap();
                                assert!(a != b && c != a && c != b, "({a},{b}) -> {c}");
                            }
                        }
                    }
                }
            }
        }

        // sp(1,1): [H,H]_m ⊂ V, [V,V] ⊂ k, [V,H] ⊂ H
        let e = build_default("sp11_a3iii").unwrap();
        let g = e.grading.unwrap();
        let alg = e.space.algebra();
        let (v, h) = (&g.blocks[0], &g.blocks[1]);
        let comp = |i: usize, j: usize, onto: &[usize]| -> f64 {
            onto.iter().map(|&l| alg.c(i, j, l).abs()).fold(0.0, f64::max)
        };
        for &i in h {
            for &j in h {
                assert!(comp(i, j, h) < 1e-10);
            }
            for &j in v {
                assert!(comp(j, i, v) < 1e-10);
            }
        }
        for &i in v {
            for &j in v {
                assert!(comp(i, j, v) < 1e-10 && comp(i, j, h) < 1e-10);
            }
        }
    }
}
