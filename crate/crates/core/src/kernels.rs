//! Dense complex-matrix primitives.
//!
//! Every rank in the crate is a *numerical* rank: an eigenvalue counts as
//! nonzero when it is strictly greater than `rank_tol * lambda_max`. The same
//! cutoff decides which eigenvalue is the "minimum positive" one, so ranks and
//! minimum eigenvalues are always mutually consistent.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Relative eigenvalue cutoff used for every rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Threshold on the most negative partial-transpose eigenvalue.
pub const DEFAULT_PPT_TOL: f64 = 1e-9;
/// Absolute Hermiticity tolerance for inputs to the eigensolver.
pub const DEFAULT_SYMM_TOL: f64 = 1e-10;

const EIG_MAX_ITER: usize = 10_000;

/// Tolerance policy threaded through every rank- or PPT-dependent computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank: f64,
    pub ppt: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: DEFAULT_RANK_TOL,
            ppt: DEFAULT_PPT_TOL,
        }
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Absolute cutoff `rank_tol * lambda_max`.
    pub fn cutoff(&self, rank_tol: f64) -> f64 {
        rank_tol * self.max().max(0.0)
    }

    /// Number of eigenvalues strictly above the cutoff. Zero when no
    /// eigenvalue is positive.
    pub fn rank(&self, rank_tol: f64) -> usize {
        if self.max() <= 0.0 {
            return 0;
        }
        let cut = self.cutoff(rank_tol);
        self.eigenvalues.iter().take_while(|&&l| l > cut).count()
    }

    /// Smallest eigenvalue retained by the rank cutoff.
    pub fn min_positive(&self, rank_tol: f64) -> Option<f64> {
        match self.rank(rank_tol) {
            0 => None,
            r => Some(self.eigenvalues[r - 1]),
        }
    }

    /// Largest eigenvalue discarded by the rank cutoff.
    pub fn max_discarded(&self, rank_tol: f64) -> Option<f64> {
        self.eigenvalues.get(self.rank(rank_tol)).copied()
    }

    /// Columns of the eigenvectors spanning the numerical support.
    pub fn support_basis(&self, rank_tol: f64) -> ComplexMatrix {
        self.eigenvectors
            .columns(0, self.rank(rank_tol))
            .into_owned()
    }

    /// `sum_i f(lambda_i) v_i v_i^dagger` over the retained eigenpairs.
    pub fn map_support(&self, rank_tol: f64, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..self.rank(rank_tol) {
            let v = self.eigenvectors.column(k);
            let w = Complex64::new(f(self.eigenvalues[k]), 0.0);
            out += (v * v.adjoint()) * w;
        }
        out
    }

    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = DVector::from_iterator(
            self.dim(),
            self.eigenvalues.iter().map(|&l| Complex64::new(l, 0.0)),
        );
        &self.eigenvectors * ComplexMatrix::from_diagonal(&d) * self.eigenvectors.adjoint()
    }
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Largest absolute entry of `m - m^dagger`.
pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// `(m + m^dagger) / 2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn check_square(m: &ComplexMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// The input is symmetrized before the solve, so eigenvectors are orthonormal
/// even when `m` carries rounding noise up to `symm_tol`. Ties in the
/// descending sort keep the eigensolver's order.
pub fn hermitian_eig(m: &ComplexMatrix, symm_tol: f64) -> Result<HermitianSpectrum> {
    check_square(m)?;
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    let deviation = hermiticity_defect(m);
    if deviation > symm_tol {
        return Err(Error::NotHermitian {
            deviation,
            tol: symm_tol,
        });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(HermitianSpectrum {
            eigenvalues: Vec::new(),
            eigenvectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::try_new(hermitian_part(m), f64::EPSILON, EIG_MAX_ITER)
        .ok_or(Error::NonConvergence)?;
    if eig.eigenvalues.iter().any(|l| !l.is_finite()) {
        return Err(Error::NonConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Hermiticity tolerance scaled to the magnitude of `m`, for matrices built
/// internally from products that accumulate rounding.
pub(crate) fn scaled_symm_tol(m: &ComplexMatrix) -> f64 {
    DEFAULT_SYMM_TOL * max_abs(m).max(1.0)
}

pub(crate) fn spectrum(m: &ComplexMatrix) -> Result<HermitianSpectrum> {
    hermitian_eig(m, scaled_symm_tol(m))
}

pub fn numerical_rank(m: &ComplexMatrix, rank_tol: f64) -> Result<usize> {
    Ok(spectrum(m)?.rank(rank_tol))
}

/// Orthogonal projector onto the eigenvectors retained by the rank cutoff.
pub fn support_projector(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    Ok(spectrum(m)?.map_support(rank_tol, |_| 1.0))
}

/// Inverse square root on the support, zero on its orthogonal complement.
pub fn pinv_sqrt(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    Ok(spectrum(m)?.map_support(rank_tol, |l| 1.0 / l.sqrt()))
}
