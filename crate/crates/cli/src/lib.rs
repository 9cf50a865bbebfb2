//! Command-line front end: argument parsing, pipelines and report rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use homgeo::catalog;
use homgeo::curvature::{
    basis_sectionals, curvature_tensor_with, diagonal_route_residuals, einstein_check, random_orthonormal_pairs, ricci_from,
    xi_curvatures, BasisSectionals, DiagonalRoutes, EinsteinReport, SymmetryResiduals, XiCurvatures, DEFAULT_SEED,
};
use homgeo::io::{GradingJson, SpaceFile};
use homgeo::spectrum::{solve_cyclic, CyclicSolution};
use homgeo::structure::{classify, ClassificationReport};
use homgeo::verify::{verify_all, VerifyReport, ROUTE_TOL};
use homgeo::{Execution, GeoError, HomogeneousSpace, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "homgeo", version, about = "Classify and measure homogeneous Riemannian spaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Numerical tolerance for all predicates.
    #[arg(long, env = "HOMGEO_TOL", global = true)]
    pub tolerance: Option<f64>,
    /// Seed for random test planes.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cyclic / traceless / S1-S2-S3 classification of a space file.
    Classify { file: PathBuf },
    /// Sectional curvatures, Ricci tensor, Einstein test and K(X, ξ).
    Curvature { file: PathBuf },
    /// Solve the cyclic constraints for a block-graded algebra.
    SolveCyclic {
        file: PathBuf,
        /// Grading sidecar; defaults to the `grading` field of the space file.
        #[arg(long)]
        grading: Option<PathBuf>,
    },
    /// Catalog of named examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the invariant suite over the whole catalog.
    VerifyAll,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Build {
        name: String,
        /// Parameters as a JSON object.
        #[arg(long)]
        params: Option<String>,
        /// Write the space file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Metadata echoed with every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub command: String,
    pub tolerance: f64,
    pub seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub meta: Meta,
    pub result: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub name: Option<String>,
    pub n: usize,
    pub isotropy_dim: usize,
    pub label: String,
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureOutput {
    pub name: Option<String>,
    pub n: usize,
    pub symmetry: SymmetryResiduals,
    pub sectional: Option<BasisSectionals>,
    pub routes: Option<DiagonalRoutes>,
    /// Ricci form in the coordinates of the file.
    pub ricci: Vec<Vec<f64>>,
    pub ricci_eigenvalues: Vec<f64>,
    pub ricci_route_residual: f64,
    pub einstein: EinsteinReport,
    pub xi: Option<XiCurvatures>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildOutput {
    pub name: String,
    pub description: String,
    pub params: Value,
    pub expected: homgeo::structure::ClassFlags,
    pub label: String,
    pub space: SpaceFile,
}

/// Exit code plus rendered output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    format: Format,
    tol: f64,
    seed: u64,
    exec: Execution,
}

impl Ctx {
    fn meta(&self, command: &str) -> Meta {
        Meta {
            command: command.to_string(),
            tolerance: self.tol,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    fn emit<T: Serialize>(&self, command: &str, result: &T, text: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Json => {
                let env = Envelope {
                    meta: self.meta(command),
                    result,
                };
                serde_json::to_string_pretty(&env).expect("reports serialise") + "\n"
            }
            Format::Text => {
                let mut s = format!("# {command}  tolerance={:e}  seed={}\n", self.tol, self.seed);
                s.push_str(&text());
                s
            }
        }
    }
}

enum Failure {
    Invalid(String),
    Assertion(String, String),
}

impl From<GeoError> for Failure {
    fn from(e: GeoError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, tol: f64) -> Result<(SpaceFile, HomogeneousSpace), Failure> {
    let file = SpaceFile::parse(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let space = file.to_space(tol).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok((file, space))
}

/// Parse `args` (including the program name) and run.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let tol = cli.tolerance.unwrap_or(DEFAULT_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Outcome {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: tolerance must be positive, got {tol}\n"),
        };
    }
    let ctx = Ctx {
        format: cli.format,
        tol,
        seed: cli.seed,
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let result = match &cli.command {
        Command::Classify { file } => cmd_classify(&ctx, file),
        Command::Curvature { file } => cmd_curvature(&ctx, file),
        Command::SolveCyclic { file, grading } => cmd_solve(&ctx, file, grading.as_deref()),
        Command::Catalog { action: CatalogAction::List } => Ok(cmd_list(&ctx)),
        Command::Catalog {
            action: CatalogAction::Build { name, params, out },
        } => cmd_build(&ctx, name, params.as_deref(), out.as_deref()),
        Command::VerifyAll => cmd_verify(&ctx),
    };
    match result {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(Failure::Invalid(msg)) => Outcome {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Assertion(stdout, msg)) => Outcome {
            code: EXIT_ASSERTION,
            stdout,
            stderr: format!("assertion failed: {msg}\n"),
        },
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classify_text(out: &ClassifyOutput) -> String {
    let r = &out.report;
    let f = &r.flags;
    let res = &r.residuals;
    let mut s = String::new();
    if let Some(n) = &out.name {
        let _ = writeln!(s, "space: {n}");
    }
    let _ = writeln!(s, "dim m = {}, dim k = {}", out.n, out.isotropy_dim);
    let _ = writeln!(s, "norms: |S1| = {:.6e}  |S2| = {:.6e}  |S3| = {:.6e}", r.norms.s1, r.norms.s2, r.norms.s3);
    let _ = writeln!(s, "eta^c = {:?}", r.eta);
    let _ = writeln!(s, "decision:");
    let rows = [
        ("cyclic        (S3 = 0)", f.cyclic, res.cyclic),
        ("traceless     (S1 = 0)", f.traceless, res.traceless),
        ("vectorial     (S = S1)", f.vectorial, res.vectorial),
        ("nat. reductive(S = S3)", f.naturally_reductive, res.naturally_reductive),
        ("symmetric     (S = 0) ", f.symmetric, res.symmetric),
    ];
    for (name, flag, residual) in rows {
        let _ = writeln!(s, "  {name}: {:<3}  residual {residual:.3e}", yes(flag));
    }
    let _ = writeln!(s, "  traceless cyclic     : {}", yes(f.traceless_cyclic));
    let _ = writeln!(s, "  norm route agrees    : {}", yes(r.consistent));
    let _ = writeln!(s, "class: {}", out.label);
    s
}

fn cmd_classify(ctx: &Ctx, path: &Path) -> Result<String, Failure> {
    let (file, space) = load(path, ctx.tol)?;
    let report = classify(&space);
    let out = ClassifyOutput {
        name: file.name.clone(),
        n: space.n(),
        isotropy_dim: space.isotropy_dim(),
        label: report.flags.label().to_string(),
        report,
    };
    let text = ctx.emit("classify", &out, || classify_text(&out));
    if !out.report.consistent {
        return Err(Failure::Assertion(text, "bracket and norm classifications disagree".into()));
    }
    Ok(text)
}

fn curvature_text(out: &CurvatureOutput) -> String {
    let mut s = String::new();
    if let Some(n) = &out.name {
        let _ = writeln!(s, "space: {n}");
    }
    let _ = writeln!(s, "dim m = {}", out.n);
    let _ = writeln!(s, "tensor symmetry residual: {:.3e}", out.symmetry.max());
    if let Some(b) = &out.sectional {
        let _ = writeln!(s, "basis-plane sectional curvature: min {:.6}  max {:.6}", b.min, b.max);
        for (i, j, k) in &b.planes {
            let _ = writeln!(s, "  K(e{i}, e{j}) = {k:.6}");
        }
    }
    if let Some(r) = &out.routes {
        let _ = write!(s, "diagonal routes: general {:.3e}", r.general);
        if let Some(c) = r.cyclic {
            let _ = write!(s, "  cyclic {c:.3e}");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "ricci:");
    for row in &out.ricci {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
        let _ = writeln!(s, "  {}", cells.join(" "));
    }
    let _ = writeln!(s, "ricci eigenvalues: {:?}", out.ricci_eigenvalues);
    let _ = writeln!(s, "ricci route residual: {:.3e}", out.ricci_route_residual);
    let e = &out.einstein;
    let _ = writeln!(s, "einstein: {} (lambda {:.6}, deviation {:.3e})", yes(e.einstein), e.lambda, e.deviation);
    if let Some(x) = &out.xi {
        let _ = writeln!(s, "c = |xi| = {:.6}", x.c);
        let _ = writeln!(s, "K(d_i, xi) = {:?}", x.sectional);
        let _ = writeln!(s, "umbilical: {} (-(c/(n-1))^2 = {:.6})", yes(x.umbilical), x.umbilical_value);
    }
    s
}

fn cmd_curvature(ctx: &Ctx, path: &Path) -> Result<String, Failure> {
    let (file, space) = load(path, ctx.tol)?;
    let n = space.n();
    let r = curvature_tensor_with(&space, ctx.exec);
    let ric = ricci_from(&space, &r);
    let ric_coords = ric.in_coordinates(&space);
    let (sectional, routes) = if n >= 2 {
        let pairs = random_orthonormal_pairs(n, 100, ctx.seed);
        (Some(basis_sectionals(&space, &r)?), Some(diagonal_route_residuals(&space, &r, &pairs)))
    } else {
        (None, None)
    };
    let xi = (!space.is_unimodular() && classify(&space).flags.cyclic)
        .then(|| xi_curvatures(&space, &r))
        .transpose()?;
    let out = CurvatureOutput {
        name: file.name.clone(),
        n,
        symmetry: r.symmetry_residuals(),
        sectional,
        routes,
        ricci: (0..n).map(|i| ric_coords.row(i).iter().copied().collect()).collect(),
        ricci_eigenvalues: ric.eigenvalues(),
        ricci_route_residual: ric.route_residual(),
        einstein: einstein_check(&space, &ric),
        xi,
    };
    let text = ctx.emit("curvature", &out, || curvature_text(&out));
    let scale = r.0.max_abs().max(1.0);
    let route = out.routes.map_or(0.0, |r| r.general.max(r.cyclic.unwrap_or(0.0)));
    let worst = out.symmetry.max().max(out.ricci_route_residual).max(route);
    if worst > ROUTE_TOL * scale {
        return Err(Failure::Assertion(text, format!("curvature routes disagree by {worst:.3e}")));
    }
    Ok(text)
}

fn solve_text(sol: &CyclicSolution) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "signs: {:?}", sol.signs);
    let _ = writeln!(s, "constraints ({}):", sol.constraints.len());
    for c in &sol.constraints {
        let terms: Vec<String> = c
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| format!("{v:+} λ{i}"))
            .collect();
        let _ = writeln!(s, "  blocks {:?}: {} = 0", c.triple, terms.join(" "));
    }
    let _ = writeln!(s, "family: {:?} with {} parameter(s)", sol.kind, sol.parameters);
    for r in &sol.extreme_rays {
        let _ = writeln!(s, "  extreme ray {r:?}");
    }
    if let Some(w) = &sol.witness {
        let _ = writeln!(s, "witness: {w:?}");
    }
    s
}

fn cmd_solve(ctx: &Ctx, path: &Path, grading: Option<&Path>) -> Result<String, Failure> {
    let text = read(path)?;
    let file = SpaceFile::parse(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let algebra = file.algebra.to_algebra(ctx.tol)?;
    let g = match grading {
        Some(p) => homgeo::io::parse_grading(&read(p)?).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?,
        None => file
            .grading
            .as_ref()
            .ok_or_else(|| Failure::Invalid("no grading: pass --grading or add a grading field".into()))?
            .to_grading()?,
    };
    let sol = solve_cyclic(&algebra, &g, ctx.tol)?;
    Ok(ctx.emit("solve-cyclic", &sol, || solve_text(&sol)))
}

fn cmd_list(ctx: &Ctx) -> String {
    let entries = catalog::list();
    ctx.emit("catalog list", &entries, || {
        let mut s = String::new();
        for e in &entries {
            let _ = writeln!(s, "{:<16} {}", e.name, e.description);
            for p in &e.params {
                let _ = writeln!(s, "    {:<10} default {:<18} {}", p.name, p.default.to_string(), p.range);
            }
        }
        s
    })
}

fn cmd_build(ctx: &Ctx, name: &str, params: Option<&str>, out: Option<&Path>) -> Result<String, Failure> {
    let params: Value = match params {
        Some(p) => serde_json::from_str(p)
            .map_err(|e| Failure::Invalid(format!("--params: line {}, column {}: {e}", e.line(), e.column())))?,
        None => Value::Null,
    };
    let entry = catalog::build_with_tol(name, &params, ctx.tol.max(catalog::CATALOG_TOL))?;
    let mut space = SpaceFile::from_space(&entry.space, Some(entry.name.clone()));
    space.grading = entry.grading.as_ref().map(GradingJson::from_grading);
    if let Some(path) = out {
        std::fs::write(path, space.to_json() + "\n")
            .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let built = BuildOutput {
        name: entry.name.clone(),
        description: entry.description.clone(),
        params: entry.params.clone(),
        expected: entry.expected,
        label: entry.expected.label().to_string(),
        space,
    };
    Ok(ctx.emit("catalog build", &built, || {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", built.name, built.description);
        let _ = writeln!(s, "params: {}", built.params);
        let _ = writeln!(s, "expected class: {}", built.label);
        if let Some(p) = out {
            let _ = writeln!(s, "space file written to {}", p.display());
        } else {
            s.push_str(&built.space.to_json());
            s.push('\n');
        }
        s
    }))
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for e in &r.entries {
        let _ = writeln!(
            s,
            "{} {:<16} {:<32} {} checks",
            if e.passed { "PASS" } else { "FAIL" },
            e.name,
            e.label,
            e.checks.len()
        );
        for c in e.failures() {
            let _ = writeln!(s, "     - {}: {:.3e} > {:.1e} {}", c.name, c.value, c.bound, c.detail.as_deref().unwrap_or(""));
        }
    }
    let sw = &r.sweep;
    let _ = writeln!(
        s,
        "{} milnor sweep      {} points, {} traceless cyclic, {} mismatches, {} Einstein",
        if sw.passed { "PASS" } else { "FAIL" },
        sw.points,
        sw.traceless_cyclic,
        sw.mismatches.len(),
        sw.einstein_violations.len()
    );
    let _ = writeln!(s, "{} passed, {} failed", r.passed, r.failed);
    s
}

fn cmd_verify(ctx: &Ctx) -> Result<String, Failure> {
    let report = verify_all(ctx.seed, ctx.exec)?;
    let text = ctx.emit("verify-all", &report, || verify_text(&report));
    if !report.all_passed() {
        return Err(Failure::Assertion(text, format!("{} catalog entries failed", report.failed)));
    }
    Ok(text)
}
