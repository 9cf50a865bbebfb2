//! Finite-dimensional real Lie algebras given by structure constants.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{GeoError, Result};

/// Default absolute tolerance used throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Entries below this magnitude are treated as round-off when structure
/// constants are extracted numerically (change of basis, matrix models).
const NOISE_FLOOR: f64 = 1e-12;

/// One bracket relation `[e_i, e_j] = Σ_k out_k e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub out: Vec<(usize, f64)>,
}

impl Bracket {
    pub fn new(i: usize, j: usize, out: impl IntoIterator<Item = (usize, f64)>) -> Self {
        Self {
            i,
            j,
            out: out.into_iter().collect(),
        }
    }
}

/// A Lie algebra with basis `e_0 … e_{dim-1}`.
///
/// Brackets are stored sparsely for `i < j`; a dense `dim³` copy of the
/// structure constants `c^k_{ij}` is kept alongside for the numeric kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    sparse: BTreeMap<(usize, usize), BTreeMap<usize, f64>>,
    dense: Vec<f64>,
    jacobi_residual: f64,
}

impl LieAlgebra {
    /// Build and validate an algebra. Omitted pairs bracket to zero;
    /// `[e_j, e_i]` entries with `i < j` are folded in with a sign flip.
    pub fn new(
        dim: usize,
        labels: Option<Vec<String>>,
        brackets: impl IntoIterator<Item = Bracket>,
        tol: f64,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(GeoError::InvalidBasis("dimension must be positive".into()));
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(GeoError::DimensionMismatch {
                    expected: dim,
                    got: l.len(),
                })
            }
            Some(l) => l,
            None => (0..dim).map(|i| format!("e{i}")).collect(),
        };
        let mut sparse: BTreeMap<(usize, usize), BTreeMap<usize, f64>> = BTreeMap::new();
        for br in brackets {
            for idx in [br.i, br.j].into_iter().chain(br.out.iter().map(|(k, _)| *k)) {
                if idx >= dim {
                    return Err(GeoError::IndexOutOfRange { index: idx, dim });
                }
            }
            if br.i == br.j {
                if br.out.iter().any(|(_, v)| *v != 0.0) {
                    return Err(GeoError::InvalidBasis(format!(
                        "[e{0}, e{0}] must vanish",
                        br.i
                    )));
                }
                continue;
            }
            let (key, sign) = if br.i < br.j {
                ((br.i, br.j), 1.0)
            } else {
                ((br.j, br.i), -1.0)
            };
            let slot = sparse.entry(key).or_default();
            for (k, v) in br.out {
                *slot.entry(k).or_insert(0.0) += sign * v;
            }
        }
        sparse.retain(|_, out| {
            out.retain(|_, v| *v != 0.0);
            !out.is_empty()
        });
        Self::finish(dim, labels, sparse, tol)
    }

    /// Build from a dense array with `c[(i * dim + j) * dim + k] = c^k_{ij}`.
    pub fn from_dense(dim: usize, labels: Option<Vec<String>>, c: &[f64], tol: f64) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(GeoError::DimensionMismatch {
                expected: dim * dim * dim,
                got: c.len(),
            });
        }
        let mut brackets = Vec::new();
        let mut asym = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    asym = asym.max((c[(i * dim + j) * dim + k] + c[(j * dim + i) * dim + k]).abs());
                }
            }
        }
        if asym > tol {
            return Err(GeoError::SlotSymmetryViolation { residual: asym });
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let out: Vec<(usize, f64)> = (0..dim)
                    .map(|k| (k, c[(i * dim + j) * dim + k]))
                    .filter(|(_, v)| v.abs() > NOISE_FLOOR)
                    .collect();
                if !out.is_empty() {
                    brackets.push(Bracket { i, j, out });
                }
            }
        }
        Self::new(dim, labels, brackets, tol)
    }

    /// The abelian algebra ℝⁿ.
    pub fn abelian(dim: usize) -> Self {
        Self::new(dim, None, [], DEFAULT_TOL).expect("abelian algebra is valid")
    }

    fn finish(
        dim: usize,
        labels: Vec<String>,
        sparse: BTreeMap<(usize, usize), BTreeMap<usize, f64>>,
        tol: f64,
    ) -> Result<Self> {
        let mut dense = vec![0.0; dim * dim * dim];
        for (&(i, j), out) in &sparse {
            for (&k, &v) in out {
                dense[(i * dim + j) * dim + k] = v;
                dense[(j * dim + i) * dim + k] = -v;
            }
        }
        let mut alg = Self {
            dim,
            labels,
            sparse,
            dense,
            jacobi_residual: 0.0,
        };
        alg.jacobi_residual = alg.compute_jacobi_residual();
        if alg.jacobi_residual > tol {
            return Err(GeoError::JacobiViolation {
                residual: alg.jacobi_residual,
                tol,
            });
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Largest Jacobiator norm over basis triples, computed at construction.
    pub fn jacobi_residual(&self) -> f64 {
        self.jacobi_residual
    }

    /// `c^k_{ij}`
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.dense[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[f64] {
        &self.dense
    }

    /// Nonzero brackets `(i, j, [(k, c^k_ij)])` with `i < j`, in index order.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, Vec<(usize, f64)>)> + '_ {
        self.sparse
            .iter()
            .map(|(&(i, j), out)| (i, j, out.iter().map(|(&k, &v)| (k, v)).collect()))
    }

    pub fn is_abelian(&self) -> bool {
        self.sparse.is_empty()
    }

    pub fn basis_vector(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let d = self.dim;
        let mut out = DVector::zeros(d);
        for (&(i, j), coeffs) in &self.sparse {
            let w = x[i] * y[j] - x[j] * y[i];
            if w != 0.0 {
                for (&k, &v) in coeffs {
                    out[k] += w * v;
                }
            }
        }
        out
    }

    /// Matrix of `ad_X : Y ↦ [X, Y]`.
    pub fn ad_matrix(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.check_len(x.len())?;
        let d = self.dim;
        Ok(DMatrix::from_fn(d, d, |k, j| {
            (0..d).map(|i| x[i] * self.c(i, j, k)).sum()
        }))
    }

    /// `B(X, Y) = tr(ad_X ∘ ad_Y)` in the basis.
    pub fn killing_form(&self) -> DMatrix<f64> {
        let d = self.dim;
        let mut b = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let mut s = 0.0;
                for k in 0..d {
                    for l in 0..d {
                        s += self.c(i, k, l) * self.c(j, l, k);
                    }
                }
                b[(i, j)] = s;
                b[(j, i)] = s;
            }
        }
        b
    }

    /// Covector `X ↦ tr ad_X` on the basis.
    pub fn trace_covector(&self) -> DVector<f64> {
        let d = self.dim;
        DVector::from_fn(d, |i, _| (0..d).map(|k| self.c(i, k, k)).sum())
    }

    pub fn unimodular_kernel(&self, tol: f64) -> UnimodularKernel {
        let t = self.trace_covector();
        let d = self.dim;
        let tn = t.norm();
        if tn <= tol {
            return UnimodularKernel {
                is_unimodular: true,
                basis: DMatrix::identity(d, d),
                ideal_residual: 0.0,
            };
        }
        let unit = &t / tn;
        let candidates: Vec<DVector<f64>> = (0..d)
            .map(|i| {
                let e = self.basis_vector(i);
                &e - &unit * unit[i]
            })
            .collect();
        let cols = gram_schmidt(&candidates, d - 1, tol);
        let basis = DMatrix::from_columns(&cols);
        let mut ideal_residual = 0.0_f64;
        for i in 0..d {
            for c in &cols {
                let br = self.bracket(&self.basis_vector(i), c);
                ideal_residual = ideal_residual.max(t.dot(&br).abs());
            }
        }
        UnimodularKernel {
            is_unimodular: false,
            basis,
            ideal_residual,
        }
    }

    /// Express the algebra in a new basis whose vectors are the columns of
    /// `basis` (in current coordinates).
    pub fn change_basis(
        &self,
        basis: &DMatrix<f64>,
        labels: Option<Vec<String>>,
        tol: f64,
    ) -> Result<LieAlgebra> {
        let d = self.dim;
        if basis.nrows() != d || basis.ncols() != d {
            return Err(GeoError::DimensionMismatch {
                expected: d,
                got: basis.ncols(),
            });
        }
        let inv = basis
            .clone()
            .try_inverse()
            .ok_or_else(|| GeoError::InvalidBasis("change-of-basis matrix is singular".into()))?;
        let cols: Vec<DVector<f64>> = (0..d).map(|a| basis.column(a).into_owned()).collect();
        let mut c = vec![0.0; d * d * d];
        for a in 0..d {
            for b in (a + 1)..d {
                let coords = &inv * self.bracket(&cols[a], &cols[b]);
                for k in 0..d {
                    c[(a * d + b) * d + k] = coords[k];
                    c[(b * d + a) * d + k] = -coords[k];
                }
            }
        }
        LieAlgebra::from_dense(d, labels, &c, tol)
    }

    /// The direct sum `self ⊕ other`, with `other`'s indices shifted by `self.dim()`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let shift = self.dim;
        let brackets = self
            .brackets()
            .map(|(i, j, out)| Bracket { i, j, out })
            .chain(other.brackets().map(|(i, j, out)| Bracket {
                i: i + shift,
                j: j + shift,
                out: out.into_iter().map(|(k, v)| (k + shift, v)).collect(),
            }));
        let labels = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        LieAlgebra::new(self.dim + other.dim, Some(labels), brackets, f64::INFINITY)
            .expect("direct sum of valid algebras is valid")
    }

    /// Multiply the basis vectors flagged in `flipped` by `i`, producing the
    /// dual real form `k ⊕ V ⊕ i(W)` from a compact grading.
    ///
    /// Every nonzero `c^k_{ij}` must have `flipped[i] + flipped[j] - flipped[k]`
    /// even; the constant changes sign exactly when both `i` and `j` are flipped.
    pub fn sign_flip_dual(&self, flipped: &[bool], tol: f64) -> Result<LieAlgebra> {
        self.check_len(flipped.len())?;
        let mut brackets = Vec::new();
        for (i, j, out) in self.brackets() {
            let mut new_out = Vec::with_capacity(out.len());
            for (k, v) in out {
                let parity = flipped[i] as i32 + flipped[j] as i32 - flipped[k] as i32;
                if parity.rem_euclid(2) != 0 {
                    return Err(GeoError::InvalidGrading(format!(
                        "[e{i}, e{j}] has a component on e{k} incompatible with the flip pattern"
                    )));
                }
                let s = if flipped[i] && flipped[j] { -1.0 } else { 1.0 };
                new_out.push((k, s * v));
            }
            brackets.push(Bracket { i, j, out: new_out });
        }
        LieAlgebra::new(self.dim, Some(self.labels.clone()), brackets, tol)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim {
            Err(GeoError::DimensionMismatch {
                expected: self.dim,
                got: len,
            })
        } else {
            Ok(())
        }
    }

    fn compute_jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0_f64;
        // [e_j, e_k] as dense vectors
        let br = |a: usize, b: usize| -> Vec<f64> { (0..d).map(|k| self.c(a, b, k)).collect() };
        let nested = |i: usize, v: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; d];
            for (l, &vl) in v.iter().enumerate() {
                if vl != 0.0 {
                    for (m, o) in out.iter_mut().enumerate() {
                        *o += vl * self.c(i, l, m);
                    }
                }
            }
            out
        };
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let a = nested(i, &br(j, k));
                    let b = nested(j, &br(k, i));
                    let c = nested(k, &br(i, j));
                    let n: f64 = (0..d)
                        .map(|m| (a[m] + b[m] + c[m]).powi(2))
                        .sum::<f64>()
                        .sqrt();
                    worst = worst.max(n);
                }
            }
        }
        worst
    }
}

/// Result of [`LieAlgebra::unimodular_kernel`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularKernel {
    pub is_unimodular: bool,
    /// Orthonormal (Euclidean) basis of `{X : tr ad_X = 0}` as columns.
    pub basis: DMatrix<f64>,
    /// max |tr ad_{[e_i, l_j]}|; zero for an ideal.
    pub ideal_residual: f64,
}

impl UnimodularKernel {
    pub fn codimension(&self) -> usize {
        self.basis.nrows() - self.basis.ncols()
    }
}

/// A validated derivation of a given algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    matrix: DMatrix<f64>,
    residual: f64,
}

impl Derivation {
    /// Check `D[X,Y] = [DX,Y] + [X,DY]` on all basis pairs.
    pub fn new(algebra: &LieAlgebra, matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        let residual = derivation_residual(algebra, &matrix)?;
        if residual > tol {
            return Err(GeoError::NotADerivation { residual });
        }
        Ok(Self { matrix, residual })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }
}

/// max over basis pairs of ‖D[e_i,e_j] − [De_i,e_j] − [e_i,De_j]‖.
pub fn derivation_residual(algebra: &LieAlgebra, d: &DMatrix<f64>) -> Result<f64> {
    let n = algebra.dim();
    if d.nrows() != n || d.ncols() != n {
        return Err(GeoError::DimensionMismatch {
            expected: n,
            got: d.nrows(),
        });
    }
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let ei = algebra.basis_vector(i);
            let ej = algebra.basis_vector(j);
            let lhs = d * algebra.bracket(&ei, &ej);
            let rhs = algebra.bracket(&(d * &ei), &ej) + algebra.bracket(&ei, &(d * &ej));
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// The semidirect sum `ℝ ⊕_D L`: a new basis vector `T` at index 0 with
/// `[T, X] = DX`, and the brackets of `L` shifted to indices `1..=dim L`.
pub fn semidirect_sum(derivation: &Derivation, algebra: &LieAlgebra, tol: f64) -> Result<LieAlgebra> {
    let residual = derivation_residual(algebra, derivation.matrix())?;
    if residual > tol {
        return Err(GeoError::NotADerivation { residual });
    }
    let n = algebra.dim();
    let d = derivation.matrix();
    let mut brackets: Vec<Bracket> = (0..n)
        .map(|j| Bracket {
            i: 0,
            j: j + 1,
            out: (0..n)
                .filter(|&i| d[(i, j)] != 0.0)
                .map(|i| (i + 1, d[(i, j)]))
                .collect(),
        })
        .collect();
    brackets.extend(algebra.brackets().map(|(i, j, out)| Bracket {
        i: i + 1,
        j: j + 1,
        out: out.into_iter().map(|(k, v)| (k + 1, v)).collect(),
    }));
    let labels = std::iter::once("T".to_string())
        .chain(algebra.labels().iter().cloned())
        .collect();
    LieAlgebra::new(n + 1, Some(labels), brackets, tol)
}

/// Greedy Gram–Schmidt: keep candidates in order until `max` vectors are found.
pub(crate) fn gram_schmidt(candidates: &[DVector<f64>], max: usize, tol: f64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in candidates {
        if out.len() == max {
            break;
        }
        let mut w = v.clone();
        for u in &out {
            let p = u.dot(&w);
            w -= u * p;
        }
        let n = w.norm();
        if n > tol.max(1e-12) {
            out.push(w / n);
        }
    }
    out
}

/// The Milnor-frame algebra `[e2,e3]=λ1 e1, [e3,e1]=λ2 e2, [e1,e2]=λ3 e3`
/// (zero-based indices 0,1,2).
pub fn milnor_algebra(lambda: [f64; 3]) -> LieAlgebra {
    LieAlgebra::new(
        3,
        Some(vec!["e1".into(), "e2".into(), "e3".into()]),
        [
            Bracket::new(1, 2, [(0, lambda[0])]),
            Bracket::new(2, 0, [(1, lambda[1])]),
            Bracket::new(0, 1, [(2, lambda[2])]),
        ],
        DEFAULT_TOL,
    )
    .expect("Milnor brackets satisfy Jacobi for every λ")
}

/// `Gⁿ(α_1,…,α_{n-1})`: `[X0, Xi] = α_i Xi`.
pub fn solvable_algebra(alpha: &[f64]) -> LieAlgebra {
    let n = alpha.len() + 1;
    let labels = (0..n).map(|i| format!("X{i}")).collect();
    LieAlgebra::new(
        n,
        Some(labels),
        alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| Bracket::new(0, i + 1, [(i + 1, a)])),
        DEFAULT_TOL,
    )
    .expect("diagonal semidirect sums satisfy Jacobi")
}
