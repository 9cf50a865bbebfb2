//! The invariant suite run by `verify-all`, and the Milnor parameter sweep.

use serde::{Deserialize, Serialize};

use crate::catalog::{self, CatalogEntry};
use crate::curvature::{
    basis_sectionals, curvature_tensor_with, diagonal_route_residuals, einstein_check, killing_identity_residual,
    random_orthonormal_pairs, ricci_from, xi_curvatures,
};
use crate::error::Result;
use crate::exec::Execution;
use crate::lie::milnor_algebra;
use crate::metric::InvariantMetric;
use crate::reductive::{closedness_check, foliation_data, HomogeneousSpace};
use crate::spectrum::solve_cyclic;
use crate::structure::{canonical_torsion, classify, s_xi_residual};

/// Bound for identities between independently computed curvature quantities.
pub const ROUTE_TOL: f64 = 1e-8;
/// Bound for exact algebraic identities.
pub const EXACT_TOL: f64 = 1e-10;
/// Random planes per entry for the diagonal route comparison.
pub const ROUTE_PAIRS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Measured residual, or 0/1 for boolean checks.
    pub value: f64,
    pub bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn bounded(name: &str, value: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: value <= bound,
            value,
            bound,
            detail: None,
        }
    }

    fn holds(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: ok,
            value: if ok { 0.0 } else { 1.0 },
            bound: 0.0,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryVerification {
    pub name: String,
    pub label: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl EntryVerification {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Run every applicable invariant on one space, using `expected` flags when given.
pub fn verify_space(
    name: &str,
    space: &HomogeneousSpace,
    expected: Option<crate::structure::ClassFlags>,
    seed: u64,
    exec: Execution,
) -> EntryVerification {
    let mut checks = Vec::new();
    let report = classify(space);
    let flags = report.flags;
    if let Some(exp) = expected {
        checks.push(Check::holds(
            "classification matches expected",
            flags == exp,
            format!("got {}, expected {}", flags.label(), exp.label()),
        ));
    }
    checks.push(Check::holds(
        "bracket and norm classifications agree",
        report.consistent,
        format!("norms s1={:.3e} s2={:.3e} s3={:.3e}", report.norms.s1, report.norms.s2, report.norms.s3),
    ));

    let r = curvature_tensor_with(space, exec);
    checks.push(Check::bounded("curvature symmetries", r.symmetry_residuals().max(), ROUTE_TOL));

    let n = space.n();
    if n >= 2 {
        let pairs = random_orthonormal_pairs(n, ROUTE_PAIRS, seed);
        let routes = diagonal_route_residuals(space, &r, &pairs);
        checks.push(Check::bounded("diagonal: tensor vs general formula", routes.general, ROUTE_TOL));
        if let Some(c) = routes.cyclic {
            checks.push(Check::bounded("diagonal: tensor vs cyclic formula", c, ROUTE_TOL));
        }
    }

    let ric = ricci_from(space, &r);
    checks.push(Check::bounded("ricci routes agree", ric.route_residual(), ROUTE_TOL));
    checks.push(Check::bounded("ricci symmetric", ric.symmetry_residual(), ROUTE_TOL));
    checks.push(Check::bounded("killing identity", killing_identity_residual(space), ROUTE_TOL));
    checks.push(Check::bounded("eta closed on [m,m]", closedness_check(space), EXACT_TOL));

    let trace_form = canonical_torsion(space).trace_form();
    let eta = space.eta_frame();
    let trace_err = trace_form
        .iter()
        .zip(eta.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(Check::bounded("torsion trace form equals eta", trace_err, EXACT_TOL));

    let unimodular = space.is_unimodular();
    if flags.cyclic {
        checks.push(Check::bounded("S_xi vanishes", s_xi_residual(space), EXACT_TOL));
        if unimodular && !space.algebra().is_abelian() && !flags.symmetric {
            let e = einstein_check(space, &ric);
            checks.push(Check::holds(
                "unimodular cyclic is not Einstein",
                !e.einstein,
                format!("deviation {:.3e}", e.deviation),
            ));
        }
    }
    if !unimodular {
        match foliation_data(space) {
            Ok(f) => {
                checks.push(Check::bounded("leaves integrable", f.integrability_residual, EXACT_TOL));
                checks.push(Check::bounded("second fundamental form symmetric", f.h_symmetry_residual, EXACT_TOL));
                checks.push(Check::bounded("mean curvature is -xi/(n-1)", f.mean_curvature_residual, EXACT_TOL));
                checks.push(Check::bounded("U(xi, xi) vanishes", f.u_xi_xi, EXACT_TOL));
                checks.push(Check::bounded("xi = -sum U(d_i, d_i)", f.xi_trace_residual, EXACT_TOL));
            }
            Err(e) => checks.push(Check::holds("foliation data", false, e.to_string())),
        }
        if flags.cyclic {
            match xi_curvatures(space, &r) {
                Ok(x) => {
                    checks.push(Check::bounded("K(X, xi) bracket formula", x.formula_residual, ROUTE_TOL));
                    let most_negative = x.sectional.iter().copied().fold(f64::INFINITY, f64::min);
                    checks.push(Check::holds(
                        "some K(X, xi) is negative",
                        x.sectional.is_empty() || most_negative < 0.0,
                        format!("min K(X, xi) = {most_negative:.6}"),
                    ));
                    if x.umbilical {
                        checks.push(Check::bounded(
                            "umbilical K(X, xi) = -(c/(n-1))^2",
                            x.umbilical_value_residual,
                            ROUTE_TOL,
                        ));
                    }
                }
                Err(e) => checks.push(Check::holds("xi curvatures", false, e.to_string())),
            }
        }
    }

    if n >= 2 {
        checks.extend(scaling_checks(space, &r, flags));
    }

    EntryVerification {
        name: name.to_string(),
        label: flags.label().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn scaling_checks(
    space: &HomogeneousSpace,
    r: &crate::curvature::CurvatureTensor,
    flags: crate::structure::ClassFlags,
) -> Vec<Check> {
    let base = match basis_sectionals(space, r) {
        Ok(b) => b,
        Err(e) => return vec![Check::holds("basis sectionals", false, e.to_string())],
    };
    let base_ric = ricci_from(space, r).in_coordinates(space);
    let mut out = Vec::new();
    for t in [0.5, 2.0] {
        let scaled = match space.rescaled(t) {
            Ok(s) => s,
            Err(e) => {
                out.push(Check::holds("rescaled metric", false, e.to_string()));
                continue;
            }
        };
        let rs = crate::curvature::curvature_tensor(&scaled);
        let err = match basis_sectionals(&scaled, &rs) {
            Ok(b) => base
                .planes
                .iter()
                .zip(&b.planes)
                .map(|(p, q)| (p.2 / t - q.2).abs())
                .fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        };
        out.push(Check::bounded(&format!("sectional scales by 1/t (t={t})"), err, ROUTE_TOL));
        let ric_err = (ricci_from(&scaled, &rs).in_coordinates(&scaled) - &base_ric).amax();
        out.push(Check::bounded(&format!("ricci form scale invariant (t={t})"), ric_err, ROUTE_TOL));
        out.push(Check::holds(
            &format!("class invariant under scaling (t={t})"),
            classify(&scaled).flags == flags,
            "",
        ));
    }
    out
}

/// Run the suite on a catalog entry, adding the constraint-solver check for graded entries.
pub fn verify_entry(entry: &CatalogEntry, seed: u64, exec: Execution) -> EntryVerification {
    let mut v = verify_space(&entry.name, &entry.space, Some(entry.expected), seed, exec);
    if let (Some(g), Some(lambda)) = (&entry.grading, &entry.lambda) {
        let check = match solve_cyclic(entry.space.algebra(), g, entry.space.tol()) {
            Ok(sol) => Check::holds(
                "constraint solver agrees with classification",
                sol.admits(lambda, 1e-9) == entry.expected.cyclic,
                format!("family kind {:?}", sol.kind),
            ),
            Err(e) => Check::holds("constraint solver", false, e.to_string()),
        };
        v.passed &= check.passed;
        v.checks.push(check);
    }
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub points: usize,
    pub traceless_cyclic: usize,
    /// Points where classify disagrees with the `λ1+λ2+λ3 = 0, λ ≠ 0` rule.
    pub mismatches: Vec<[f64; 3]>,
    /// Cyclic nonabelian points reported as Einstein.
    pub einstein_violations: Vec<[f64; 3]>,
    pub passed: bool,
}

pub const SWEEP_STEPS: usize = 11;
pub const SWEEP_TOL: f64 = 1e-9;

/// Classify Milnor frames over an 11³ grid in [−3, 3]³.
pub fn milnor_sweep(exec: Execution) -> SweepReport {
    let s = SWEEP_STEPS;
    let value = |i: usize| -3.0 + 6.0 * i as f64 / (s - 1) as f64;
    let results = exec.map_range(s * s * s, |idx| {
        let (i, j, k) = (idx / (s * s), (idx / s) % s, idx % s);
        let l = [value(i), value(j), value(k)];
        // integer oracle: the grid is symmetric about 0, so the sum vanishes iff i+j+k = 3(s−1)/2
        let zero_sum = 2 * (i + j + k) == 3 * (s - 1);
        let nonzero = !(2 * i == s - 1 && 2 * j == s - 1 && 2 * k == s - 1);
        let space = HomogeneousSpace::lie_group(milnor_algebra(l), InvariantMetric::identity(3), SWEEP_TOL)
            .expect("Milnor frames are valid");
        let report = classify(&space);
        let tc = report.flags.traceless_cyclic;
        let einstein = report.flags.cyclic && nonzero && einstein_check(&space, &ricci_from(&space, &crate::curvature::curvature_tensor(&space))).einstein;
        (l, tc, tc != (zero_sum && nonzero), einstein)
    });
    let mismatches: Vec<[f64; 3]> = results.iter().filter(|r| r.2).map(|r| r.0).collect();
    let einstein_violations: Vec<[f64; 3]> = results.iter().filter(|r| r.3).map(|r| r.0).collect();
    SweepReport {
        points: results.len(),
        traceless_cyclic: results.iter().filter(|r| r.1).count(),
        passed: mismatches.is_empty() && einstein_violations.is_empty(),
        mismatches,
        einstein_violations,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub entries: Vec<EntryVerification>,
    pub sweep: SweepReport,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.sweep.passed
    }
}

/// Build every catalog entry with default parameters and run the suite on
/// each, followed by the Milnor sweep. Entries are reported sorted by name.
pub fn verify_all(seed: u64, exec: Execution) -> Result<VerifyReport> {
    let entries = catalog::default_entries()?;
    let mut results = exec.map(&entries, |e| verify_entry(e, seed, exec));
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = results.iter().filter(|r| r.passed).count();
    Ok(VerifyReport {
        seed,
        failed: results.len() - passed,
        passed,
        entries: results,
        sweep: milnor_sweep(exec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::DEFAULT_SEED;

    #[test]
    fn every_default_entry_passes() {
        let report = verify_all(DEFAULT_SEED, Execution::default()).unwrap();
        for e in &report.entries {
            for c in e.failures() {
                eprintln!("{}: {} value={:e} bound={:e} {:?}", e.name, c.name, c.value, c.bound, c.detail);
            }
        }
        assert!(report.all_passed(), "{:?}", report.sweep);
    }

    #[test]
    fn sweep_counts() {
        let s = milnor_sweep(Execution::Sequential);
        assert_eq!(s.points, 1331);
        // triples in {0..10}³ with sum 15, minus the origin
        let expected = (0..11usize)
            .flat_map(|i| (0..11usize).map(move |j| (i, j)))
            .filter(|(i, j)| i + j <= 15 && 15 - i - j <= 10)
            .count()
            - 1;
        assert_eq!(s.traceless_cyclic, expected);
        assert!(s.passed);
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(milnor_sweep(Execution::Sequential), milnor_sweep(Execution::Parallel));
    }
}
