//! Dense complex matrices and multipartite density matrices.
//!
//! Subsystems are ordered; a basis index is the row-major (first subsystem
//! most significant) combination of the per-subsystem indices. For qubits,
//! index 0 is |↑⟩ (σ_Z = +1) and index 1 is |↓⟩. For truncated Fock modes,
//! index k is the k-photon state.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{argument, Error, Result};

/// Complex scalar used throughout.
pub type C64 = Complex64;

/// Largest total Hilbert-space dimension a [`QuantumState`] may reach.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Tolerance for the trace and Hermiticity invariants.
pub const STATE_TOL: f64 = 1e-12;

/// Floor on the smallest eigenvalue of a density matrix.
pub const PSD_FLOOR: f64 = -1e-10;

/// Imaginary residue of an expectation value that is silently dropped.
pub const IMAG_TOL: f64 = 1e-10;

/// Probability below which a projection has no post-measurement state.
pub const ZERO_PROB: f64 = 1e-14;

pub(crate) const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) const fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{}", self.rows(), self.cols())?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|c| {
                    let z = self.0[(r, c)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Builds a matrix from entries given in row-major order.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[C64]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return argument("matrix dimensions must be positive");
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, entries)))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = cr(d);
        }
        Self(m)
    }

    /// Outer product |v⟩⟨w|.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        let mut m = DMatrix::zeros(v.len(), w.len());
        for (i, a) in v.iter().enumerate() {
            for (j, b) in w.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        Self(m)
    }

    /// Projector |v⟩⟨v|.
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    pub(crate) fn from_inner(m: DMatrix<C64>) -> Self {
        Self(m)
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[(r, c)]
    }

    pub fn set(&mut self, r: usize, c: usize, value: C64) {
        self.0[(r, c)] = value;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.push(self.0[(r, c)]);
            }
        }
        out
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(cr(s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// Tr(self · other) without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                acc += self.0[(i, k)] * other.0[(k, i)];
            }
        }
        acc
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, ComplexMatrix) {
        let herm = (&self.0 + self.0.adjoint()) * cr(0.5);
        let eig = SymmetricEigen::new(herm);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let n = order.len();
        let mut vecs = DMatrix::zeros(n, n);
        let mut vals = Vec::with_capacity(n);
        for (dst, &src) in order.iter().enumerate() {
            vals.push(eig.eigenvalues[src]);
            vecs.set_column(dst, &eig.eigenvectors.column(src));
        }
        (vals, Self(vecs))
    }

    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.hermitian_eigen().0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitian_eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Principal square root of a positive semidefinite matrix. Negative
    /// eigenvalues from roundoff are clamped to zero.
    pub fn psd_sqrt(&self) -> Self {
        let (vals, vecs) = self.hermitian_eigen();
        let roots: Vec<f64> = vals.iter().map(|v| v.max(0.0).sqrt()).collect();
        let d = Self::from_real_diagonal(&roots);
        &(&vecs * &d) * &vecs.dagger()
    }

    /// Sum of absolute eigenvalues of a Hermitian matrix.
    pub fn trace_norm(&self) -> f64 {
        self.hermitian_eigenvalues().iter().map(|v| v.abs()).sum()
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Density matrix over an ordered list of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    dims: Vec<usize>,
    rho: ComplexMatrix,
}

impl QuantumState {
    /// Validates trace, Hermiticity and positivity before accepting `rho`.
    pub fn new(dims: Vec<usize>, rho: ComplexMatrix) -> Result<Self> {
        let state = Self::from_parts(dims, rho)?;
        state.validate()?;
        Ok(state)
    }

    fn from_parts(dims: Vec<usize>, rho: ComplexMatrix) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return argument("subsystem dimensions must be a nonempty list of positive integers");
        }
        let total = checked_total(&dims, DEFAULT_MAX_DIM)?;
        if !rho.is_square() || rho.rows() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: rho.rows(),
            });
        }
        Ok(Self { dims, rho })
    }

    /// For results of operations that preserve the invariants by construction.
    pub(crate) fn trusted(dims: Vec<usize>, rho: ComplexMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), rho.rows());
        Self { dims, rho }
    }

    /// Pure state |ψ⟩⟨ψ|; the amplitudes are normalized here.
    pub fn from_pure(dims: Vec<usize>, amplitudes: &[C64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return argument("pure state amplitudes are all zero");
        }
        let psi: Vec<C64> = amplitudes.iter().map(|a| a / norm).collect();
        let rho = ComplexMatrix::projector(&psi);
        let state = Self::from_parts(dims, rho)?;
        Ok(state)
    }

    /// Computational basis state with the given per-subsystem indices.
    pub fn basis(dims: Vec<usize>, indices: &[usize]) -> Result<Self> {
        if indices.len() != dims.len() || indices.iter().zip(&dims).any(|(i, d)| i >= d) {
            return argument("basis indices do not match subsystem dimensions");
        }
        let total = checked_total(&dims, DEFAULT_MAX_DIM)?;
        let mut amps = vec![cr(0.0); total];
        amps[flat_index(&dims, indices)] = cr(1.0);
        Self::from_pure(dims, &amps)
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let total = checked_total(&dims, DEFAULT_MAX_DIM)?;
        let rho = ComplexMatrix::identity(total).scale_real(1.0 / total as f64);
        Self::from_parts(dims, rho)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// Checks the density-matrix invariants.
    pub fn validate(&self) -> Result<()> {
        let tr = self.rho.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        if !self.rho.is_hermitian(STATE_TOL) {
            return Err(Error::InvalidState(
                "density matrix is not Hermitian".into(),
            ));
        }
        let min = self.rho.min_eigenvalue();
        if min < PSD_FLOOR {
            return Err(Error::InvalidState(format!(
                "density matrix has negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.tensor_with_limit(other, DEFAULT_MAX_DIM)
    }

    pub fn tensor_with_limit(&self, other: &Self, max_dim: usize) -> Result<Self> {
        let total = self.dim().saturating_mul(other.dim());
        if total > max_dim {
            return Err(Error::Size {
                requested: total,
                max: max_dim,
            });
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ok(Self::trusted(dims, self.rho.kron(&other.rho)))
    }

    /// Traces out every subsystem not listed in `keep`. Kept subsystems stay
    /// in their original order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return argument("partial trace needs at least one subsystem to keep");
        }
        let n = self.dims.len();
        let mut kept = vec![false; n];
        for &k in keep {
            if k >= n {
                return argument(format!("subsystem index {k} out of range (have {n})"));
            }
            kept[k] = true;
        }
        let kept_dims: Vec<usize> = (0..n).filter(|&i| kept[i]).map(|i| self.dims[i]).collect();
        let traced_dims: Vec<usize> = (0..n).filter(|&i| !kept[i]).map(|i| self.dims[i]).collect();
        let kept_total: usize = kept_dims.iter().product();
        let traced_total: usize = traced_dims.iter().product();

        // Bucket full indices by their traced part.
        let mut groups: Vec<Vec<(usize, usize)>> =
            vec![Vec::with_capacity(kept_total); traced_total];
        let mut digits = vec![0usize; n];
        for full in 0..self.dim() {
            split_index(&self.dims, full, &mut digits);
            let (mut k_idx, mut t_idx) = (0usize, 0usize);
            for i in 0..n {
                if kept[i] {
                    k_idx = k_idx * self.dims[i] + digits[i];
                } else {
                    t_idx = t_idx * self.dims[i] + digits[i];
                }
            }
            groups[t_idx].push((full, k_idx));
        }

        let src = self.rho.inner();
        let mut out = DMatrix::<C64>::zeros(kept_total, kept_total);
        for group in &groups {
            for &(r, kr) in group {
                for &(col, kc) in group {
                    out[(kr, kc)] += src[(r, col)];
                }
            }
        }
        Ok(Self::trusted(kept_dims, ComplexMatrix::from_inner(out)))
    }

    /// Permutes subsystems: subsystem `order[i]` of `self` becomes subsystem
    /// `i` of the result.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if order.len() != n {
            return argument("reorder needs a permutation of all subsystems");
        }
        for &o in order {
            if o >= n || seen[o] {
                return argument("reorder needs a permutation of all subsystems");
            }
            seen[o] = true;
        }
        let new_dims: Vec<usize> = order.iter().map(|&o| self.dims[o]).collect();
        let mut map = vec![0usize; self.dim()];
        let mut digits = vec![0usize; n];
        for (full, slot) in map.iter_mut().enumerate() {
            split_index(&self.dims, full, &mut digits);
            let mut idx = 0usize;
            for &o in order {
                idx = idx * self.dims[o] + digits[o];
            }
            *slot = idx;
        }
        let src = self.rho.inner();
        let mut out = DMatrix::<C64>::zeros(self.dim(), self.dim());
        for r in 0..self.dim() {
            for col in 0..self.dim() {
                out[(map[r], map[col])] = src[(r, col)];
            }
        }
        Ok(Self::trusted(new_dims, ComplexMatrix::from_inner(out)))
    }

    /// Reduced state on `parties`, returned in the order given.
    pub fn reduce(&self, parties: &[usize]) -> Result<Self> {
        let mut sorted = parties.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return argument("reduced subsystems must be distinct");
        }
        let traced = self.partial_trace(&sorted)?;
        let order: Vec<usize> = parties
            .iter()
            .map(|p| sorted.iter().position(|s| s == p).expect("present"))
            .collect();
        traced.reorder(&order)
    }

    /// Reinterprets the subsystem structure without touching the matrix, e.g.
    /// to merge two Fock modes [2, 2] into one site of dimension 4.
    pub fn regroup(&self, dims: Vec<usize>) -> Result<Self> {
        if dims.iter().product::<usize>() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: dims.iter().product(),
            });
        }
        Ok(Self::trusted(dims, self.rho.clone()))
    }

    /// Tr(ρ · obs) for a Hermitian observable.
    pub fn expectation(&self, obs: &ComplexMatrix) -> Result<f64> {
        if !obs.is_square() || obs.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: obs.rows(),
            });
        }
        let z = self.rho.trace_product(obs);
        if z.im.abs() > IMAG_TOL {
            return Err(Error::Numeric(format!(
                "expectation value has imaginary part {:e}",
                z.im
            )));
        }
        Ok(z.re)
    }

    /// Embeds an operator acting on subsystem `index` into the full space.
    pub fn embed(&self, op: &ComplexMatrix, index: usize) -> Result<ComplexMatrix> {
        embed_operator(&self.dims, op, index)
    }

    /// Expectation of an operator acting on a single subsystem.
    pub fn local_expectation(&self, op: &ComplexMatrix, index: usize) -> Result<f64> {
        self.expectation(&self.embed(op, index)?)
    }

    /// Measures with a positive effect. Returns Tr(Eρ) and √E ρ √E / p.
    pub fn project(&self, effect: &ComplexMatrix) -> Result<(f64, QuantumState)> {
        if !effect.is_square() || effect.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: effect.rows(),
            });
        }
        let p = self.expectation(effect)?;
        if p < ZERO_PROB {
            return Err(Error::ZeroProbability(p));
        }
        let k = effect.psd_sqrt();
        let post = &(&k * &self.rho) * &k.dagger();
        Ok((
            p,
            Self::trusted(self.dims.clone(), post.scale_real(1.0 / p)),
        ))
    }

    /// Conditions on an orthogonal projector: returns Tr(Pρ) and PρP / p.
    pub fn condition(&self, projector: &ComplexMatrix) -> Result<(f64, QuantumState)> {
        if !projector.is_square() || projector.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: projector.rows(),
            });
        }
        let post = self.sandwich(projector);
        let p = post.trace().re;
        if p < ZERO_PROB {
            return Err(Error::ZeroProbability(p));
        }
        Ok((
            p,
            Self::trusted(self.dims.clone(), post.scale_real(1.0 / p)),
        ))
    }

    /// Unnormalized K ρ K† for an arbitrary operator.
    pub(crate) fn sandwich(&self, k: &ComplexMatrix) -> ComplexMatrix {
        &(k * &self.rho) * &k.dagger()
    }

    /// Applies a trace-preserving Kraus channel on the full space.
    pub fn apply_kraus(&self, ops: &[ComplexMatrix]) -> Result<Self> {
        let mut acc = ComplexMatrix::zeros(self.dim(), self.dim());
        for k in ops {
            if k.rows() != self.dim() || k.cols() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: k.rows(),
                });
            }
            acc = &acc + &self.sandwich(k);
        }
        Ok(Self::trusted(self.dims.clone(), acc))
    }

    /// Applies a unitary on the full space.
    pub fn apply_unitary(&self, u: &ComplexMatrix) -> Result<Self> {
        self.apply_kraus(std::slice::from_ref(u))
    }

    /// ½‖ρ − σ‖₁.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(0.5 * (&self.rho - &other.rho).trace_norm())
    }

    /// Convex combination Σ wᵢ ρᵢ; weights must be nonnegative and sum to 1.
    pub fn mixture(components: &[(f64, QuantumState)]) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return argument("mixture needs at least one component");
        };
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if components.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > 1e-12 {
            return argument("mixture weights must be nonnegative and sum to 1");
        }
        let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, s) in components {
            if s.dims != first.dims {
                return argument("mixture components have different subsystem structure");
            }
            acc = &acc + &s.rho.scale_real(*w);
        }
        Ok(Self::trusted(first.dims.clone(), acc))
    }
}

fn checked_total(dims: &[usize], max: usize) -> Result<usize> {
    let mut total = 1usize;
    for &d in dims {
        total = total.saturating_mul(d);
        if total > max {
            return Err(Error::Size {
                requested: total,
                max,
            });
        }
    }
    Ok(total)
}

pub(crate) fn flat_index(dims: &[usize], digits: &[usize]) -> usize {
    dims.iter().zip(digits).fold(0, |acc, (d, i)| acc * d + i)
}

pub(crate) fn split_index(dims: &[usize], mut full: usize, digits: &mut [usize]) {
    for i in (0..dims.len()).rev() {
        digits[i] = full % dims[i];
        full /= dims[i];
    }
}

/// I ⊗ … ⊗ op ⊗ … ⊗ I with `op` on subsystem `index`.
pub fn embed_operator(dims: &[usize], op: &ComplexMatrix, index: usize) -> Result<ComplexMatrix> {
    embed_operator_span(dims, op, index, 1)
}

/// Embeds `op` acting jointly on the `len` adjacent subsystems starting at
/// `start`.
pub fn embed_operator_span(
    dims: &[usize],
    op: &ComplexMatrix,
    start: usize,
    len: usize,
) -> Result<ComplexMatrix> {
    if len == 0 || start + len > dims.len() {
        return argument(format!(
            "subsystem span {start}..{} out of range (have {})",
            start + len,
            dims.len()
        ));
    }
    let span: usize = dims[start..start + len].iter().product();
    if !op.is_square() || op.rows() != span {
        return Err(Error::DimensionMismatch {
            expected: span,
            found: op.rows(),
        });
    }
    let left: usize = dims[..start].iter().product();
    let right: usize = dims[start + len..].iter().product();
    Ok(ComplexMatrix::identity(left)
        .kron(op)
        .kron(&ComplexMatrix::identity(right)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up() -> QuantumState {
        QuantumState::basis(vec![2], &[0]).unwrap()
    }

    fn down() -> QuantumState {
        QuantumState::basis(vec![2], &[1]).unwrap()
    }

    fn singlet() -> QuantumState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        QuantumState::from_pure(vec![2, 2], &[cr(0.0), cr(s), cr(-s), cr(0.0)]).unwrap()
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
    }

    #[test]
    fn tensor_of_mixed_is_mixed() {
        let m = QuantumState::maximally_mixed(vec![2]).unwrap();
        let t = m.tensor(&m).unwrap();
        assert_eq!(t.dims(), &[2, 2]);
        let expected = QuantumState::maximally_mixed(vec![2, 2]).unwrap();
        assert!(t.rho().max_abs_diff(expected.rho()) < 1e-15);
    }

    #[test]
    fn tensor_of_pure_products() {
        let t = up().tensor(&down()).unwrap();
        let expected = QuantumState::basis(vec![2, 2], &[0, 1]).unwrap();
        assert!(t.rho().max_abs_diff(expected.rho()) < 1e-15);
    }

    #[test]
    fn tensor_preserves_trace() {
        let t = singlet().tensor(&up()).unwrap();
        assert_eq!(t.dims(), &[2, 2, 2]);
        assert!((t.rho().trace().re - 1.0).abs() < 1e-12);
        t.validate().unwrap();
    }

    #[test]
    fn tensor_respects_dimension_cap() {
        let big = QuantumState::maximally_mixed(vec![64]).unwrap();
        let err = big.tensor_with_limit(&big, 1000).unwrap_err();
        assert!(matches!(
            err,
            Error::Size {
                requested: 4096,
                max: 1000
            }
        ));
        let bigger = QuantumState::maximally_mixed(vec![128]).unwrap();
        assert!(matches!(bigger.tensor(&big), Err(Error::Size { .. })));
    }

    #[test]
    fn singlet_reduces_to_mixed() {
        let r = singlet().partial_trace(&[0]).unwrap();
        let expected = QuantumState::maximally_mixed(vec![2]).unwrap();
        assert!(r.rho().max_abs_diff(expected.rho()) < 1e-15);
    }

    #[test]
    fn product_reduces_to_factor() {
        let p = up().tensor(&down()).unwrap();
        let r = p.partial_trace(&[1]).unwrap();
        assert!(r.rho().max_abs_diff(down().rho()) < 1e-15);
    }

    #[test]
    fn empty_keep_set_is_rejected() {
        assert!(matches!(
            singlet().partial_trace(&[]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn reduce_reorders() {
        let s = up().tensor(&down()).unwrap().tensor(&up()).unwrap();
        let r = s.reduce(&[1, 0]).unwrap();
        let expected = down().tensor(&up()).unwrap();
        assert!(r.rho().max_abs_diff(expected.rho()) < 1e-15);
    }

    #[test]
    fn expectation_examples() {
        assert!((up().expectation(&sigma_z()).unwrap() - 1.0).abs() < 1e-15);
        let zz = sigma_z().kron(&sigma_z());
        assert!((singlet().expectation(&zz).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_rejects_mismatch_and_imaginary() {
        assert!(matches!(
            up().expectation(&ComplexMatrix::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
        let anti =
            ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, 1.0), cr(0.0), cr(0.0)]).unwrap();
        let plus = QuantumState::from_pure(vec![2], &[cr(1.0), cr(1.0)]).unwrap();
        assert!(matches!(plus.expectation(&anti), Err(Error::Numeric(_))));
    }

    #[test]
    fn project_examples() {
        let (p, post) = up().project(up().rho()).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
        assert!(post.rho().max_abs_diff(up().rho()) < 1e-12);

        let mixed = QuantumState::maximally_mixed(vec![2]).unwrap();
        let (p, post) = mixed.project(up().rho()).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!(post.rho().max_abs_diff(up().rho()) < 1e-12);

        assert!(matches!(
            down().project(up().rho()),
            Err(Error::ZeroProbability(_))
        ));
    }

    #[test]
    fn invalid_states_rejected() {
        let not_unit = ComplexMatrix::from_real_diagonal(&[0.6, 0.6]);
        assert!(QuantumState::new(vec![2], not_unit).is_err());
        let negative = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(QuantumState::new(vec![2], negative).is_err());
        let wrong_dim = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(QuantumState::new(vec![2], wrong_dim).is_err());
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[cr(0.7), c(0.1, 0.2), c(0.1, -0.2), cr(0.3)])
            .unwrap();
        let r = m.psd_sqrt();
        assert!((&r * &r).max_abs_diff(&m) < 1e-12);
    }
}
