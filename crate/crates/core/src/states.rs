//! Density matrices and pure states on tensor-product spaces.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{
    self, hermitian_part, hermiticity_defect, max_abs, spectrum, trace, ComplexMatrix,
    ComplexVector, HermitianSpectrum, DEFAULT_RANK_TOL,
};

/// Hermiticity, trace and positivity tolerance for validated density matrices.
pub const STATE_TOL: f64 = 1e-10;
/// Norm tolerance for validated pure states.
pub const NORM_TOL: f64 = 1e-12;
/// Norm tolerance for user-supplied unit vectors such as conditioning vectors.
pub const UNIT_VECTOR_TOL: f64 = 1e-9;

fn check_dims(dims: &[usize], size: usize) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::BadSubsystemSpec("no subsystems".into()));
    }
    if dims.contains(&0) {
        return Err(Error::BadSubsystemSpec(format!(
            "subsystem dimensions must be positive, got {dims:?}"
        )));
    }
    let total: usize = dims.iter().product();
    if total != size {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} describe a space of dimension {total}, data has dimension {size}"
        )));
    }
    Ok(())
}

/// `stride[k]` is the flat-index step of subsystem `k`.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Flat-index offsets of every joint basis state of `subs`, enumerated in
/// row-major order over those subsystems.
fn offsets(dims: &[usize], strides: &[usize], subs: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for &s in subs {
        out = out
            .iter()
            .flat_map(|&o| (0..dims[s]).map(move |digit| o + digit * strides[s]))
            .collect();
    }
    out
}

/// A positive, unit-trace Hermitian matrix on `prod(dims)` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity to [`STATE_TOL`]. The
    /// stored matrix is the Hermitian part of `matrix`.
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        check_dims(&dims, matrix.nrows())?;
        if !kernels::is_finite(&matrix) {
            return Err(Error::NonFinite);
        }
        let defect = hermiticity_defect(&matrix);
        if defect > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian: max |m - m^dagger| = {defect:e}"
            )));
        }
        let tr = trace(&matrix);
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "trace is {} + {}i, expected 1",
                tr.re, tr.im
            )));
        }
        let state = Self::from_parts(dims, matrix);
        let min = state.spectrum()?.min();
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite: smallest eigenvalue {min:e}"
            )));
        }
        Ok(state)
    }

    /// For matrices that are density matrices by construction.
    pub(crate) fn from_parts(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.nrows());
        Self {
            dims,
            matrix: hermitian_part(&matrix),
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let v = &psi.amplitudes;
        Self::from_parts(psi.dims.clone(), v * v.adjoint())
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let n: usize = dims.iter().product();
        check_dims(&dims, n)?;
        let m = kernels::identity(n) * Complex64::new(1.0 / n as f64, 0.0);
        Ok(Self::from_parts(dims, m))
    }

    /// `self ⊗ other`, with the subsystem lists concatenated.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Self::from_parts(dims, kernels::kron(&self.matrix, &other.matrix))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn spectrum(&self) -> Result<HermitianSpectrum> {
        spectrum(&self.matrix)
    }

    pub fn rank(&self, rank_tol: f64) -> Result<usize> {
        Ok(self.spectrum()?.rank(rank_tol))
    }

    /// Marginal on the kept subsystems.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    /// `(d_A, d_B)`, or an error for states that are not bipartite.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::BadSubsystemSpec(format!(
                "expected a bipartite state, got dims {:?}",
                self.dims
            ))),
        }
    }
}

/// A unit vector on `prod(dims)` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: ComplexVector,
}

impl PureState {
    /// Validates the norm to [`NORM_TOL`].
    pub fn new(dims: Vec<usize>, amplitudes: ComplexVector) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(dims: Vec<usize>, amplitudes: ComplexVector) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            dims,
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let n: usize = dims.iter().product();
        check_dims(&dims, n)?;
        if index >= n {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} out of range for dimension {n}"
            )));
        }
        let mut v = ComplexVector::zeros(n);
        v[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            dims,
            amplitudes: v,
        })
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            dims: self.dims.iter().chain(&other.dims).copied().collect(),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

/// A pure state on `A ⊗ B ⊗ E`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartitePureState(PureState);

impl TripartitePureState {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const E: usize = 2;

    pub fn new(dims: [usize; 3], amplitudes: ComplexVector) -> Result<Self> {
        PureState::new(dims.to_vec(), amplitudes).map(Self)
    }

    pub fn from_pure(psi: PureState) -> Result<Self> {
        if psi.dims.len() != 3 {
            return Err(Error::BadSubsystemSpec(format!(
                "expected three subsystems, got dims {:?}",
                psi.dims
            )));
        }
        Ok(Self(psi))
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.0.dims[0], self.0.dims[1], self.0.dims[2]]
    }

    pub fn pure(&self) -> &PureState {
        &self.0
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.0.amplitudes
    }

    pub fn density(&self) -> DensityMatrix {
        self.0.density()
    }

    /// `rho_AB = Tr_E |psi><psi|`.
    pub fn rho_ab(&self) -> DensityMatrix {
        let [da, db, de] = self.dims();
        // rows of the (d_A d_B) x d_E coefficient matrix
        let m = ComplexMatrix::from_row_slice(da * db, de, self.0.amplitudes.as_slice());
        DensityMatrix::from_parts(vec![da, db], &m * m.adjoint())
    }

    /// `rho_AE = Tr_B |psi><psi|`.
    pub fn rho_ae(&self) -> DensityMatrix {
        partial_trace(&self.density(), &[Self::A, Self::E]).expect("A and E are valid subsystems")
    }

    /// Unnormalized column `V^a_{BE}`: the amplitudes with A fixed to `|a>`.
    pub fn column(&self, a: usize) -> ComplexVector {
        let [_, db, de] = self.dims();
        let block = db * de;
        ComplexVector::from_column_slice(&self.0.amplitudes.as_slice()[a * block..(a + 1) * block])
    }
}

/// Verdict of the partial-transpose test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptVerdict {
    pub ppt: bool,
    /// Smallest eigenvalue of the partial transpose.
    pub min_eigenvalue: f64,
    /// Set when `|min_eigenvalue|` is within ten times the tolerance.
    pub marginal: bool,
}

/// Traces out every subsystem not listed in `keep`. `keep` is a set: order
/// and repetition are rejected rather than reinterpreted.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let n = dims.len();
    if keep.is_empty() {
        return Err(Error::BadSubsystemSpec("keep set is empty".into()));
    }
    if keep.iter().any(|&k| k >= n) {
        return Err(Error::BadSubsystemSpec(format!(
            "keep set {keep:?} out of range for {n} subsystems"
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSubsystemSpec(format!(
            "keep set {keep:?} must be strictly increasing"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let st = strides(dims);
    let kept_off = offsets(dims, &st, keep);
    let traced_off = offsets(dims, &st, &traced);

    let m = rho.matrix();
    let dk = kept_off.len();
    let out = ComplexMatrix::from_fn(dk, dk, |i, j| {
        traced_off
            .iter()
            .map(|&t| m[(kept_off[i] + t, kept_off[j] + t)])
            .sum()
    });
    let kept_dims = keep.iter().map(|&k| dims[k]).collect();
    Ok(DensityMatrix::from_parts(kept_dims, out))
}

/// Transposes the tensor factor `subsystem`.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    let dims = rho.dims();
    if subsystem >= dims.len() {
        return Err(Error::BadSubsystemSpec(format!(
            "subsystem {subsystem} out of range for {} subsystems",
            dims.len()
        )));
    }
    let stride = strides(dims)[subsystem];
    let d = dims[subsystem];
    let m = rho.matrix();
    let n = m.nrows();
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        let dr = (r / stride) % d;
        for c in 0..n {
            let dc = (c / stride) % d;
            let r2 = r - dr * stride + dc * stride;
            let c2 = c - dc * stride + dr * stride;
            out[(r2, c2)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// PPT test on a bipartite state: transposes the second factor.
pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<PptVerdict> {
    rho.bipartite_dims()?;
    let pt = partial_transpose(rho, 1)?;
    let min = spectrum(&pt)?.min();
    Ok(PptVerdict {
        ppt: min >= -tol,
        min_eigenvalue: min,
        marginal: min.abs() < 10.0 * tol,
    })
}

/// Entropy in bits of a spectrum, ignoring eigenvalues at or below the cutoff.
pub fn spectrum_entropy(spec: &HermitianSpectrum, rank_tol: f64) -> f64 {
    let r = spec.rank(rank_tol);
    let s: f64 = spec.eigenvalues[..r].iter().map(|&l| -l * l.log2()).sum();
    s.max(0.0)
}

/// `S(rho) = -Tr rho log2 rho` at the default rank cutoff.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_with_tol(rho, DEFAULT_RANK_TOL)
}

pub fn entropy_with_tol(rho: &DensityMatrix, rank_tol: f64) -> Result<f64> {
    Ok(spectrum_entropy(&rho.spectrum()?, rank_tol))
}

/// `S(rho_target) - S(rho)` for a bipartite state.
pub fn coherent_information_toward(
    rho: &DensityMatrix,
    target: usize,
    rank_tol: f64,
) -> Result<f64> {
    rho.bipartite_dims()?;
    let marginal = partial_trace(rho, &[target])?;
    Ok(entropy_with_tol(&marginal, rank_tol)? - entropy_with_tol(rho, rank_tol)?)
}

/// `I_c(A>B) = S(rho_B) - S(rho_AB)`; may be negative.
pub fn coherent_information(rho: &DensityMatrix) -> Result<f64> {
    coherent_information_toward(rho, 1, DEFAULT_RANK_TOL)
}

/// Canonical purification `sum_i sqrt(lambda_i) |e_i>_AB |i>_E` over the
/// retained eigenpairs in descending order, so `d_E = rank rho_AB`.
pub fn purify(rho: &DensityMatrix, rank_tol: f64) -> Result<TripartitePureState> {
    let (da, db) = rho.bipartite_dims()?;
    let spec = rho.spectrum()?;
    let r = spec.rank(rank_tol);
    let kept: f64 = spec.eigenvalues[..r].iter().sum();
    let n = da * db;
    let mut amps = ComplexVector::zeros(n * r);
    for i in 0..r {
        let w = (spec.eigenvalues[i] / kept).sqrt();
        for ab in 0..n {
            amps[ab * r + i] = spec.eigenvectors[(ab, i)] * w;
        }
    }
    TripartitePureState::new([da, db, r], amps)
}

/// `rho_AE` of the canonical purification.
pub fn complement(rho: &DensityMatrix, rank_tol: f64) -> Result<DensityMatrix> {
    Ok(purify(rho, rank_tol)?.rho_ae())
}

/// `Tr_A[(|phi><phi| ⊗ 1) rho]`, left unnormalized: its trace is
/// `<phi|rho_A|phi>`.
pub fn conditional_marginal(rho: &DensityMatrix, phi: &ComplexVector) -> Result<ComplexMatrix> {
    let (da, db) = rho.bipartite_dims()?;
    if phi.len() != da {
        return Err(Error::DimensionMismatch(format!(
            "conditioning vector has length {}, subsystem A has dimension {da}",
            phi.len()
        )));
    }
    let norm = phi.norm();
    if (norm - 1.0).abs() > UNIT_VECTOR_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(db, db);
    for a in 0..da {
        for a2 in 0..da {
            let w = phi[a].conj() * phi[a2];
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            out += m.view((a * db, a2 * db), (db, db)) * w;
        }
    }
    Ok(hermitian_part(&out))
}

/// Schmidt rank of a bipartite unit vector: the numerical rank of
/// `M M^dagger` for the reshaped coefficient matrix `M`, i.e. of the reduced
/// state on the first factor.
pub fn schmidt_rank(v: &PureState, rank_tol: f64) -> Result<usize> {
    let (d0, d1) = match v.dims[..] {
        [a, b] => (a, b),
        _ => {
            return Err(Error::BadSubsystemSpec(format!(
                "expected a bipartite vector, got dims {:?}",
                v.dims
            )))
        }
    };
    let norm = v.amplitudes.norm();
    if (norm - 1.0).abs() > UNIT_VECTOR_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let m = ComplexMatrix::from_row_slice(d0, d1, v.amplitudes.as_slice());
    let gram = &m * m.adjoint();
    debug_assert!(max_abs(&gram).is_finite());
    kernels::numerical_rank(&gram, rank_tol)
}
