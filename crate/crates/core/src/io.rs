//! JSON formats for spaces and gradings.
//!
//! A space file:
//!
//! ```json
//! {
//!   "name": "e11",
//!   "algebra": {
//!     "dim": 3,
//!     "basis": ["e1", "e2", "e3"],
//!     "brackets": [{"i": 1, "j": 2, "out": {"0": 1.0}}, {"i": 0, "j": 1, "out": {"2": -1.0}}]
//!   },
//!   "decomposition": {"k": [], "m": [0, 1, 2]},
//!   "metric": {"diag": [1.0, 1.0, 1.0]}
//! }
//! ```
//!
//! Indices are zero-based. `decomposition` defaults to `k = []`, `m = all`;
//! `metric` defaults to the identity; `"matrix": [[…]]` gives a full metric.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::lie::{Bracket, LieAlgebra};
use crate::metric::InvariantMetric;
use crate::reductive::{HomogeneousSpace, ReductiveDecomposition};
use crate::spectrum::BlockGrading;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    /// Output index (as a string key) to coefficient.
    pub out: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    #[serde(default)]
    pub k: Vec<usize>,
    pub m: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricJson {
    Diag(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingJson {
    pub blocks: Vec<Vec<usize>>,
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebra: AlgebraJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingJson>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> GeoError {
    GeoError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        parse_err(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

impl AlgebraJson {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        Self {
            dim: alg.dim(),
            basis: Some(alg.labels().to_vec()),
            brackets: alg
                .brackets()
                .map(|(i, j, out)| BracketJson {
                    i,
                    j,
                    out: out.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_algebra(&self, tol: f64) -> Result<LieAlgebra> {
        let dim = self.dim;
        if let Some(b) = &self.basis {
            if b.len() != dim {
                return Err(parse_err(
                    "algebra.basis",
                    format!("{} labels for dimension {dim}", b.len()),
                ));
            }
        }
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (n, b) in self.brackets.iter().enumerate() {
            let at = format!("algebra.brackets[{n}]");
            for (field, idx) in [("i", b.i), ("j", b.j)] {
                if idx >= dim {
                    return Err(parse_err(
                        format!("{at}.{field}"),
                        format!("index {idx} out of range for dimension {dim}"),
                    ));
                }
            }
            let mut out = Vec::with_capacity(b.out.len());
            for (key, &v) in &b.out {
                let k: usize = key
                    .parse()
                    .map_err(|_| parse_err(format!("{at}.out.{key:?}"), "key is not an index"))?;
                if k >= dim {
                    return Err(parse_err(
                        format!("{at}.out.{key:?}"),
                        format!("index {k} out of range for dimension {dim}"),
                    ));
                }
                if !v.is_finite() {
                    return Err(parse_err(format!("{at}.out.{key:?}"), "coefficient is not finite"));
                }
                out.push((k, v));
            }
            if b.i == b.j && out.iter().any(|(_, v)| *v != 0.0) {
                return Err(parse_err(at, "[x, x] must vanish"));
            }
            brackets.push(Bracket::new(b.i, b.j, out));
        }
        LieAlgebra::new(dim, self.basis.clone(), brackets, tol)
    }
}

impl MetricJson {
    pub fn to_metric(&self, n: usize) -> Result<InvariantMetric> {
        match self {
            MetricJson::Diag(d) => {
                if d.len() != n {
                    return Err(parse_err("metric.diag", format!("{} entries for dim m = {n}", d.len())));
                }
                InvariantMetric::diagonal(d)
            }
            MetricJson::Matrix(rows) => {
                if rows.len() != n {
                    return Err(parse_err("metric.matrix", format!("{} rows for dim m = {n}", rows.len())));
                }
                if let Some(r) = rows.iter().position(|r| r.len() != n) {
                    return Err(parse_err(format!("metric.matrix[{r}]"), format!("row length must be {n}")));
                }
                InvariantMetric::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
            }
        }
    }
}

impl GradingJson {
    pub fn to_grading(&self) -> Result<BlockGrading> {
        BlockGrading::new(self.blocks.clone(), self.signs.clone())
    }

    pub fn from_grading(g: &BlockGrading) -> Self {
        Self {
            blocks: g.blocks.clone(),
            signs: g.signs.clone(),
        }
    }
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn from_space(space: &HomogeneousSpace, name: Option<String>) -> Self {
        let dec = space.decomposition();
        let g = space.metric().matrix();
        let n = g.nrows();
        Self {
            name,
            algebra: AlgebraJson::from_algebra(dec.algebra()),
            decomposition: Some(DecompositionJson {
                k: dec.k_indices().to_vec(),
                m: dec.m_indices().to_vec(),
            }),
            metric: Some(MetricJson::Matrix(
                (0..n).map(|i| (0..n).map(|j| g[(i, j)]).collect()).collect(),
            )),
            grading: None,
        }
    }

    pub fn to_space(&self, tol: f64) -> Result<HomogeneousSpace> {
        let alg = self.algebra.to_algebra(tol)?;
        let (k, m) = match &self.decomposition {
            Some(d) => (d.k.clone(), d.m.clone()),
            None => (Vec::new(), (0..alg.dim()).collect()),
        };
        let n = m.len();
        let metric = match &self.metric {
            Some(mj) => mj.to_metric(n)?,
            None => InvariantMetric::identity(n),
        };
        let dec = ReductiveDecomposition::new(alg, k, m, tol)?;
        HomogeneousSpace::new(dec, metric, tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("space files always serialise")
    }
}

pub fn parse_grading(text: &str) -> Result<BlockGrading> {
    from_json::<GradingJson>(text)?.to_grading()
}

pub fn parse_algebra(text: &str, tol: f64) -> Result<LieAlgebra> {
    from_json::<AlgebraJson>(text)?.to_algebra(tol)
}
