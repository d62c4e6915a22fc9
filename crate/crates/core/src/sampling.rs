//! Seeded sampling from the induced measure and the low-rank Monte Carlo
//! experiment.
//!
//! Generator contract (version 1): ChaCha20 seeded with `seed_from_u64(seed)`;
//! sample `i` of an ensemble draws from stream `i`, and a single
//! [`sample_pure`] call draws from stream 0. Amplitudes are complex standard
//! Gaussians (real part first, then imaginary) drawn in flat-index order from
//! `rand_distr::StandardNormal`, then normalized. Witness searches use their
//! own stream so they never overlap a sample stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::distill::{search_conditional_rank, WitnessSearch};
use crate::error::{Error, Result};
use crate::kernels::{ComplexVector, Tolerances, DEFAULT_RANK_TOL};
use crate::states::{partial_trace, schmidt_rank, DensityMatrix, PureState, TripartitePureState};
use num_complex::Complex64;

/// Bumped whenever the mapping from seeds to samples changes.
pub const GENERATOR_VERSION: u32 = 1;

const WITNESS_STREAM: u64 = u64::MAX;

/// Generator for stream `stream` of `seed`.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn witness_rng(seed: u64) -> ChaCha20Rng {
    sample_rng(seed, WITNESS_STREAM)
}

fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexVector {
    ComplexVector::from_iterator(
        n,
        (0..n).map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        }),
    )
}

/// Uniformly (Haar) distributed unit vector in `C^d`.
pub fn haar_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexVector {
    loop {
        let v = gaussian_vector(d, rng);
        let norm = v.norm();
        if norm > 0.0 {
            return v.unscale(norm);
        }
    }
}

fn check_dims(da: usize, db: usize, de: usize) -> Result<()> {
    if da == 0 || db == 0 || de == 0 {
        return Err(Error::BadSpec(format!(
            "dimensions must be at least 1, got ({da}, {db}, {de})"
        )));
    }
    Ok(())
}

pub fn sample_pure_with<R: Rng + ?Sized>(
    dims: [usize; 3],
    rng: &mut R,
) -> Result<TripartitePureState> {
    let [da, db, de] = dims;
    check_dims(da, db, de)?;
    let v = haar_vector(da * db * de, rng);
    TripartitePureState::from_pure(PureState::normalized(dims.to_vec(), v)?)
}

/// Haar-random pure state on `C^dA ⊗ C^dB ⊗ C^dE`.
pub fn sample_pure(da: usize, db: usize, de: usize, seed: u64) -> Result<TripartitePureState> {
    sample_pure_with([da, db, de], &mut sample_rng(seed, 0))
}

/// `rho_AB` of [`sample_pure`], distributed according to the induced measure
/// with environment dimension `de`.
pub fn sample_state(da: usize, db: usize, de: usize, seed: u64) -> Result<DensityMatrix> {
    Ok(sample_pure(da, db, de, seed)?.rho_ab())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleSpec {
    pub d_a: usize,
    pub d_b: usize,
    pub d_e: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub rank_tol: f64,
}

impl EnsembleSpec {
    pub fn new(d_a: usize, d_b: usize, d_e: usize, n_samples: usize, seed: u64) -> Result<Self> {
        Self::with_rank_tol(d_a, d_b, d_e, n_samples, seed, DEFAULT_RANK_TOL)
    }

    pub fn with_rank_tol(
        d_a: usize,
        d_b: usize,
        d_e: usize,
        n_samples: usize,
        seed: u64,
        rank_tol: f64,
    ) -> Result<Self> {
        check_dims(d_a, d_b, d_e)?;
        if n_samples == 0 {
            return Err(Error::BadSpec("need at least one sample".into()));
        }
        if rank_tol.is_nan() || rank_tol <= 0.0 {
            return Err(Error::BadSpec(format!(
                "rank tolerance must be positive, got {rank_tol}"
            )));
        }
        Ok(Self {
            d_a,
            d_b,
            d_e,
            n_samples,
            seed,
            rank_tol,
        })
    }

    /// `rank rho_AB` expected with probability one.
    pub fn expected_rank_ab(&self) -> usize {
        self.d_e.min(self.d_a * self.d_b)
    }

    /// `rank rho_B` expected with probability one.
    pub fn expected_rank_b(&self) -> usize {
        self.d_b.min(self.d_a * self.d_e)
    }

    /// Schmidt rank of each A-column expected with probability one.
    pub fn expected_schmidt_rank(&self) -> usize {
        self.d_b.min(self.d_e)
    }
}

/// Smallest retained and largest discarded eigenvalue, for tolerance audits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankMargin {
    pub min_retained: Option<f64>,
    pub max_discarded: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub rank_ab: usize,
    pub rank_b: usize,
    pub schmidt_ranks: Vec<usize>,
    pub rank_ab_ok: bool,
    pub rank_b_ok: bool,
    pub schmidt_ok: bool,
    pub witness_found: bool,
    pub witness_trials: usize,
    pub margin_ab: RankMargin,
    pub margin_b: RankMargin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub rank_ab: usize,
    pub rank_b: usize,
    pub schmidt: usize,
    pub witness: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckFrequencies {
    pub rank_ab: f64,
    pub rank_b: f64,
    pub schmidt: f64,
    pub witness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub spec: EnsembleSpec,
    pub witness_budget: usize,
    pub generator_version: u32,
    pub expected_rank_ab: usize,
    pub expected_rank_b: usize,
    pub expected_schmidt_rank: usize,
    pub samples: Vec<SampleRecord>,
    pub counts: CheckCounts,
    pub frequencies: CheckFrequencies,
}

fn run_sample(spec: &EnsembleSpec, index: usize, budget: usize) -> Result<SampleRecord> {
    let tol = Tolerances {
        rank: spec.rank_tol,
        ..Tolerances::default()
    };
    let psi = sample_pure_with(
        [spec.d_a, spec.d_b, spec.d_e],
        &mut sample_rng(spec.seed, index as u64),
    )?;
    let rho = psi.rho_ab();
    let spec_ab = rho.spectrum()?;
    let spec_b = partial_trace(&rho, &[1])?.spectrum()?;
    let rank_ab = spec_ab.rank(spec.rank_tol);
    let rank_b = spec_b.rank(spec.rank_tol);

    let schmidt_ranks = (0..spec.d_a)
        .map(|a| {
            let col = PureState::normalized(vec![spec.d_b, spec.d_e], psi.column(a))?;
            schmidt_rank(&col, spec.rank_tol)
        })
        .collect::<Result<Vec<_>>>()?;

    let witness = if rank_ab < rank_b {
        search_conditional_rank(&rho, rank_ab, budget, spec.seed ^ index as u64, &tol)?
    } else {
        WitnessSearch::NotFound {
            trials: 0,
            max_conditional_rank: 0,
        }
    };

    let margin = |s: &crate::kernels::HermitianSpectrum| RankMargin {
        min_retained: s.min_positive(spec.rank_tol),
        max_discarded: s.max_discarded(spec.rank_tol),
    };
    Ok(SampleRecord {
        index,
        rank_ab,
        rank_b,
        rank_ab_ok: rank_ab == spec.expected_rank_ab(),
        rank_b_ok: rank_b == spec.expected_rank_b(),
        schmidt_ok: schmidt_ranks
            .iter()
            .all(|&r| r == spec.expected_schmidt_rank()),
        schmidt_ranks,
        witness_found: witness.is_found(),
        witness_trials: witness.trials_used(),
        margin_ab: margin(&spec_ab),
        margin_b: margin(&spec_b),
    })
}

/// Samples `rho_AB` with `d_E < d_B` and checks, per sample, the almost-sure
/// rank facts and whether the one-way witness search succeeds.
///
/// Samples are evaluated in parallel and assembled in index order, so the
/// report depends only on `spec` and `witness_budget`.
pub fn run_low_rank_experiment(
    spec: &EnsembleSpec,
    witness_budget: usize,
) -> Result<EnsembleReport> {
    if spec.d_e >= spec.d_b {
        return Err(Error::BadSpec(format!(
            "low-rank sampling needs d_E < d_B, got d_E = {} and d_B = {}",
            spec.d_e, spec.d_b
        )));
    }
    let samples = (0..spec.n_samples)
        .into_par_iter()
        .map(|i| run_sample(spec, i, witness_budget))
        .collect::<Result<Vec<_>>>()?;

    let count = |f: fn(&SampleRecord) -> bool| samples.iter().filter(|s| f(s)).count();
    let counts = CheckCounts {
        rank_ab: count(|s| s.rank_ab_ok),
        rank_b: count(|s| s.rank_b_ok),
        schmidt: count(|s| s.schmidt_ok),
        witness: count(|s| s.witness_found),
    };
    let n = spec.n_samples as f64;
    let frequencies = CheckFrequencies {
        rank_ab: counts.rank_ab as f64 / n,
        rank_b: counts.rank_b as f64 / n,
        schmidt: counts.schmidt as f64 / n,
        witness: counts.witness as f64 / n,
    };
    Ok(EnsembleReport {
        spec: *spec,
        witness_budget,
        generator_version: GENERATOR_VERSION,
        expected_rank_ab: spec.expected_rank_ab(),
        expected_rank_b: spec.expected_rank_b(),
        expected_schmidt_rank: spec.expected_schmidt_rank(),
        samples,
        counts,
        frequencies,
    })
}
