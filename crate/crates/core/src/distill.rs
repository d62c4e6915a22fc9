//! Local filtering, distillation bounds for low-rank states, the one-way
//! witness search and the tripartite full-undistillability classifier.
//!
//! Exact distillable entanglement is not computable; everything here is either
//! a lower bound, a certificate of positivity, or a certificate of zero (PPT).
//! A failed witness search is reported as "no certificate found", never as a
//! proof of one-way undistillability.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::channels::ChoiChannel;
use crate::error::{Error, Result};
use crate::format::complex_entries;
use crate::kernels::{
    self, max_abs_diff, ComplexMatrix, ComplexVector, HermitianSpectrum, Tolerances,
};
use crate::sampling::{haar_vector, witness_rng};
use crate::states::{
    coherent_information_toward, conditional_marginal, entropy_with_tol, is_ppt, partial_trace,
    purify, DensityMatrix, PptVerdict, TripartitePureState,
};

/// Default number of random conditioning vectors tried after the basis.
pub const DEFAULT_WITNESS_BUDGET: usize = 50;
/// Rates above this count as strictly positive.
pub const POSITIVE_RATE_EPS: f64 = 1e-9;

/// Which party applies the local filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    /// Subsystem index of this party in a bipartite state.
    pub fn index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            other => Err(Error::BadParameter(format!(
                "side must be A or B, got {other:?}"
            ))),
        }
    }
}

/// Success branch of the filter `{Y, sqrt(1 - Y^dagger Y)}` with
/// `Y = sqrt(lambda_min) rho_side^{-1/2}` on the support of `rho_side`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterOutcome {
    pub side: Side,
    /// Local operator `Y` on the filtering party's space.
    pub filter_operator: ComplexMatrix,
    /// `Tr[(Y ⊗ 1) rho (Y ⊗ 1)^dagger]` (or with `Y` on B).
    pub p_succ: f64,
    pub filtered_state: DensityMatrix,
    /// Projector onto the support of the pre-filter marginal.
    pub support_projector: ComplexMatrix,
    /// `rank rho`.
    pub rank: usize,
    /// Rank of the pre-filter marginal on the filtering side.
    pub marginal_rank: usize,
    /// Rank of the filtered marginal on the filtering side.
    pub filtered_marginal_rank: usize,
    /// Smallest retained eigenvalue of the pre-filter marginal.
    pub lambda_min: f64,
}

impl FilterOutcome {
    /// `lambda_min * r_side`, which equals `p_succ` exactly in exact arithmetic.
    pub fn p_succ_closed_form(&self) -> f64 {
        self.lambda_min * self.marginal_rank as f64
    }

    /// `max |rho'_side - Pi / r_side|`.
    pub fn marginal_flatness_defect(&self) -> Result<f64> {
        let marginal = partial_trace(&self.filtered_state, &[self.side.index()])?;
        let flat =
            &self.support_projector * Complex64::new(1.0 / self.filtered_marginal_rank as f64, 0.0);
        Ok(max_abs_diff(marginal.matrix(), &flat))
    }

    /// For an A-side filter, the channel `M(r_A) -> M(d_B)` whose Choi state is
    /// the filtered state with A compressed onto the support of `rho_A`.
    pub fn implemented_channel(&self, rank_tol: f64) -> Result<ChoiChannel> {
        if self.side != Side::A {
            return Err(Error::BadParameter(
                "only an A-side filter implements a channel from A to B".into(),
            ));
        }
        let (_, db) = self.filtered_state.bipartite_dims()?;
        let basis = kernels::spectrum(&self.support_projector)?.support_basis(rank_tol);
        let ra = basis.ncols();
        let iso = kernels::kron(&basis, &kernels::identity(db));
        let compressed = iso.adjoint() * self.filtered_state.matrix() * &iso;
        let choi = DensityMatrix::new(vec![ra, db], kernels::hermitian_part(&compressed))?;
        ChoiChannel::from_choi(choi, ra, db)
    }
}

/// Applies the flattening filter on `side`. Every valid state is filterable.
pub fn filter(rho: &DensityMatrix, side: Side, tol: &Tolerances) -> Result<FilterOutcome> {
    let (da, db) = rho.bipartite_dims()?;
    let marginal = partial_trace(rho, &[side.index()])?;
    let spec = marginal.spectrum()?;
    let marginal_rank = spec.rank(tol.rank);
    let lambda_min = spec
        .min_positive(tol.rank)
        .ok_or_else(|| Error::InvalidState("marginal has no positive eigenvalue".into()))?;

    let y = spec.map_support(tol.rank, |l| (lambda_min / l).sqrt());
    let support_projector = spec.map_support(tol.rank, |_| 1.0);
    let local = match side {
        Side::A => kernels::kron(&y, &kernels::identity(db)),
        Side::B => kernels::kron(&kernels::identity(da), &y),
    };
    let unnormalized = &local * rho.matrix() * local.adjoint();
    let p_succ = kernels::trace(&unnormalized).re;
    let filtered = unnormalized * Complex64::new(1.0 / p_succ, 0.0);
    let filtered_state = DensityMatrix::from_parts(vec![da, db], filtered);
    let filtered_marginal_rank = partial_trace(&filtered_state, &[side.index()])?.rank(tol.rank)?;

    Ok(FilterOutcome {
        side,
        filter_operator: y,
        p_succ,
        filtered_state,
        support_projector,
        rank: rho.rank(tol.rank)?,
        marginal_rank,
        filtered_marginal_rank,
        lambda_min,
    })
}

fn bound_from_marginal(rank: usize, marginal: &HermitianSpectrum, rank_tol: f64) -> Result<f64> {
    let r_side = marginal.rank(rank_tol);
    if rank >= r_side {
        return Err(Error::PreconditionRankNotLow {
            rank,
            marginal_rank: r_side,
        });
    }
    let lambda_min = marginal.min_positive(rank_tol).unwrap_or(0.0);
    Ok(lambda_min * r_side as f64 * ((r_side as f64).log2() - (rank as f64).log2()))
}

/// Two-way distillation lower bound `lambda_min r_side (log r_side - log r)`
/// for states with `r = rank rho < rank rho_side`.
pub fn low_rank_bound(rho: &DensityMatrix, side: Side, tol: &Tolerances) -> Result<f64> {
    rho.bipartite_dims()?;
    let rank = rho.rank(tol.rank)?;
    let marginal = partial_trace(rho, &[side.index()])?.spectrum()?;
    bound_from_marginal(rank, &marginal, tol.rank)
}

/// Rate of filtering on `side` and then hashing: `p_succ (S(rho'_side) -
/// S(rho'))`. Never below [`low_rank_bound`] when the latter applies.
pub fn filtered_hashing_rate(rho: &DensityMatrix, side: Side, tol: &Tolerances) -> Result<f64> {
    let outcome = filter(rho, side, tol)?;
    Ok(outcome.p_succ
        * coherent_information_toward(&outcome.filtered_state, side.index(), tol.rank)?)
}

/// Result of probing conditional marginals `rho^phi_B`.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessSearch {
    Found {
        phi: ComplexVector,
        /// Zero-based trial index; the first `d_A` trials are basis vectors.
        trial: usize,
    },
    NotFound {
        trials: usize,
        max_conditional_rank: usize,
    },
}

impl WitnessSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, WitnessSearch::Found { .. })
    }

    pub fn trials_used(&self) -> usize {
        match self {
            WitnessSearch::Found { trial, .. } => trial + 1,
            WitnessSearch::NotFound { trials, .. } => *trials,
        }
    }
}

/// Looks for `phi` with `rank rho^phi_B = target`: first the computational
/// basis of A, then `budget` seeded Haar-random vectors. The first success in
/// trial order is returned.
pub fn search_conditional_rank(
    rho: &DensityMatrix,
    target: usize,
    budget: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<WitnessSearch> {
    let (da, _) = rho.bipartite_dims()?;
    let mut rng = witness_rng(seed);
    let mut max_rank = 0;
    for trial in 0..da + budget {
        let phi = if trial < da {
            let mut e = ComplexVector::zeros(da);
            e[trial] = Complex64::new(1.0, 0.0);
            e
        } else {
            haar_vector(da, &mut rng)
        };
        let rank = kernels::numerical_rank(&conditional_marginal(rho, &phi)?, tol.rank)?;
        if rank == target {
            return Ok(WitnessSearch::Found { phi, trial });
        }
        max_rank = max_rank.max(rank);
    }
    Ok(WitnessSearch::NotFound {
        trials: da + budget,
        max_conditional_rank: max_rank,
    })
}

/// Searches for a one-way distillability certificate: for a low-rank state
/// (`r < r_B`), any `phi` with `rank rho^phi_B = r` proves `D_->(rho) > 0`.
pub fn search_one_way_witness(
    rho: &DensityMatrix,
    budget: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<WitnessSearch> {
    rho.bipartite_dims()?;
    let rank = rho.rank(tol.rank)?;
    let rank_b = partial_trace(rho, &[1])?.rank(tol.rank)?;
    if rank >= rank_b {
        return Err(Error::PreconditionRankNotLow {
            rank,
            marginal_rank: rank_b,
        });
    }
    search_conditional_rank(rho, rank, budget, seed, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RateStatus {
    Zero,
    Positive,
    Unknown,
}

/// Three-valued statement about a distillation rate with its justification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateClaim {
    pub status: RateStatus,
    pub basis: Vec<String>,
}

impl RateClaim {
    fn unknown() -> Self {
        Self {
            status: RateStatus::Unknown,
            basis: Vec::new(),
        }
    }

    fn zero(reason: &str) -> Self {
        Self {
            status: RateStatus::Zero,
            basis: vec![reason.to_string()],
        }
    }

    fn positive(&mut self, reason: &str) {
        debug_assert_ne!(self.status, RateStatus::Zero);
        self.status = RateStatus::Positive;
        self.basis.push(reason.to_string());
    }

    /// Status of `max{x, y}`.
    fn max_of(x: &RateClaim, y: &RateClaim, x_name: &str, y_name: &str) -> RateClaim {
        use RateStatus::*;
        let tag = |name: &str, c: &RateClaim| {
            c.basis
                .iter()
                .map(|b| format!("{name}: {b}"))
                .collect::<Vec<_>>()
        };
        match (x.status, y.status) {
            (Zero, Zero) => RateClaim {
                status: Zero,
                basis: [tag(x_name, x), tag(y_name, y)].concat(),
            },
            (Positive, _) | (_, Positive) => {
                let mut basis = Vec::new();
                if x.status == Positive {
                    basis.extend(tag(x_name, x));
                }
                if y.status == Positive {
                    basis.extend(tag(y_name, y));
                }
                RateClaim {
                    status: Positive,
                    basis,
                }
            }
            _ => RateClaim::unknown(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WitnessRecord {
    Found {
        phi: Vec<[f64; 2]>,
        trial: usize,
    },
    NotFound {
        trials: usize,
        max_conditional_rank: usize,
    },
    NotApplicable {
        reason: String,
    },
}

/// Distillability facts about one bipartite reduction, Alice versus a partner
/// (Bob for `AB`, Eve for `AE`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    pub label: String,
    pub rank: usize,
    pub rank_alice: usize,
    pub rank_partner: usize,
    pub ppt: PptVerdict,
    /// Filter on Alice; present iff `rank < rank_alice`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub low_rank_bound_alice: Option<f64>,
    /// Filter on the partner; present iff `rank < rank_partner`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub low_rank_bound_partner: Option<f64>,
    /// Coherent information `S(partner) - S(joint)`.
    pub hashing_rate: f64,
    pub one_way_witness: WitnessRecord,
    pub one_way: RateClaim,
    pub two_way: RateClaim,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "FULLY_UNDISTILLABLE_SEPARABLE")]
    FullyUndistillableSeparable,
    #[serde(rename = "SOME_REDUCTION_2WAY_DISTILLABLE")]
    SomeReduction2WayDistillable,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::FullyUndistillableSeparable => "FULLY_UNDISTILLABLE_SEPARABLE",
            Classification::SomeReduction2WayDistillable => "SOME_REDUCTION_2WAY_DISTILLABLE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub r: usize,
    pub r_a: usize,
    pub r_b: usize,
    pub r_e: usize,
    pub r_ae: usize,
}

/// Maximal rates over the two reductions, one per configuration of
/// communication links: `ab_x_ae_y = max{D_y(rho_AE), D_x(rho_AB)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalRates {
    pub ab_two_ae_two: RateClaim,
    pub ab_two_ae_one: RateClaim,
    pub ab_one_ae_two: RateClaim,
    pub ab_one_ae_one: RateClaim,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistillabilityReport {
    pub dims: [usize; 3],
    pub ranks: Ranks,
    pub ppt_ab: PptVerdict,
    pub ppt_ae: PptVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub low_rank_bound_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub low_rank_bound_b: Option<f64>,
    /// `S(rho_B) - S(rho_AB)`.
    pub hashing_rate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_phi: Option<Vec<[f64; 2]>>,
    pub classification: Classification,
    pub npt_reductions: Vec<String>,
    pub rates: MaximalRates,
    pub ab: ReductionReport,
    pub ae: ReductionReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub tolerances: Tolerances,
    pub witness_budget: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            witness_budget: DEFAULT_WITNESS_BUDGET,
            seed: 0,
        }
    }
}

fn analyze_reduction(
    label: &str,
    rho: &DensityMatrix,
    opts: &AnalysisOptions,
) -> Result<ReductionReport> {
    let tol = &opts.tolerances;
    let joint = rho.spectrum()?;
    let rank = joint.rank(tol.rank);
    let alice = partial_trace(rho, &[0])?;
    let partner = partial_trace(rho, &[1])?;
    let alice_spec = alice.spectrum()?;
    let partner_spec = partner.spectrum()?;
    let rank_alice = alice_spec.rank(tol.rank);
    let rank_partner = partner_spec.rank(tol.rank);

    let ppt = is_ppt(rho, tol.ppt)?;
    let low_rank_bound_alice = bound_from_marginal(rank, &alice_spec, tol.rank).ok();
    let low_rank_bound_partner = bound_from_marginal(rank, &partner_spec, tol.rank).ok();
    let hashing_rate =
        entropy_with_tol(&partner, tol.rank)? - crate::states::spectrum_entropy(&joint, tol.rank);

    let witness = if rank < rank_partner {
        Some(search_conditional_rank(
            rho,
            rank,
            opts.witness_budget,
            opts.seed,
            tol,
        )?)
    } else {
        None
    };
    let one_way_witness = match &witness {
        Some(WitnessSearch::Found { phi, trial }) => WitnessRecord::Found {
            phi: complex_entries(phi),
            trial: *trial,
        },
        Some(WitnessSearch::NotFound {
            trials,
            max_conditional_rank,
        }) => WitnessRecord::NotFound {
            trials: *trials,
            max_conditional_rank: *max_conditional_rank,
        },
        None => WitnessRecord::NotApplicable {
            reason: format!("rank {rank} is not below the partner marginal rank {rank_partner}"),
        },
    };

    let mut notes = Vec::new();
    let (one_way, two_way) = if ppt.ppt {
        (
            RateClaim::zero("reduction is PPT"),
            RateClaim::zero("reduction is PPT"),
        )
    } else {
        let mut one = RateClaim::unknown();
        let mut two = RateClaim::unknown();
        if low_rank_bound_alice.is_some() || low_rank_bound_partner.is_some() {
            two.positive("low-rank filtering bound is positive");
        }
        if hashing_rate > POSITIVE_RATE_EPS {
            one.positive("coherent information is positive");
            two.positive("coherent information is positive");
        }
        if witness.as_ref().is_some_and(WitnessSearch::is_found) {
            one.positive("conditioning vector saturating the rank bound found");
            two.positive("conditioning vector saturating the rank bound found");
        }
        if let Some(WitnessSearch::NotFound { trials, .. }) = &witness {
            if one.status == RateStatus::Unknown {
                notes.push(format!(
                    "no one-way certificate found in {trials} trials; this does not show one-way undistillability"
                ));
            }
        }
        if two.status == RateStatus::Unknown && rank >= rank_partner {
            let probe =
                search_conditional_rank(rho, rank_partner, opts.witness_budget, opts.seed, tol)?;
            if let WitnessSearch::NotFound {
                trials,
                max_conditional_rank,
            } = probe
            {
                notes.push(format!(
                    "heuristic: rank of every probed conditional marginal ({trials} trials, max {max_conditional_rank}) \
                     stays below min{{rank, partner rank}} = {rank_partner}; if that holds for all vectors the \
                     reduction is two-way distillable"
                ));
            }
        }
        (one, two)
    };

    Ok(ReductionReport {
        label: label.to_string(),
        rank,
        rank_alice,
        rank_partner,
        ppt,
        low_rank_bound_alice,
        low_rank_bound_partner,
        hashing_rate,
        one_way_witness,
        one_way,
        two_way,
        notes,
    })
}

const NPT_WITH_PPT_COMPLEMENT: &str =
    "reduction is NPT while its complement is PPT, which forces one-way distillability";
const SOME_REDUCTION_NPT: &str =
    "a reduction is NPT, so this configuration has a positive maximal rate";

/// Classifies a tripartite pure state: fully undistillable exactly when both
/// `rho_AB` and `rho_AE` are PPT.
pub fn classify(psi: &TripartitePureState, opts: &AnalysisOptions) -> Result<DistillabilityReport> {
    let rho_ab = psi.rho_ab();
    let rho_ae = psi.rho_ae();
    let mut ab = analyze_reduction("AB", &rho_ab, opts)?;
    let mut ae = analyze_reduction("AE", &rho_ae, opts)?;

    let (ab_ppt, ae_ppt) = (ab.ppt.ppt, ae.ppt.ppt);
    for (x, y_ppt) in [(&mut ab, ae_ppt), (&mut ae, ab_ppt)] {
        if !x.ppt.ppt && y_ppt {
            x.one_way.positive(NPT_WITH_PPT_COMPLEMENT);
            x.two_way.positive(NPT_WITH_PPT_COMPLEMENT);
        }
    }

    let classification = if ab.ppt.ppt && ae.ppt.ppt {
        Classification::FullyUndistillableSeparable
    } else {
        Classification::SomeReduction2WayDistillable
    };
    let npt_reductions = [&ab, &ae]
        .iter()
        .filter(|r| !r.ppt.ppt)
        .map(|r| r.label.clone())
        .collect();

    let mut rates = MaximalRates {
        ab_two_ae_two: RateClaim::max_of(&ab.two_way, &ae.two_way, "AB", "AE"),
        ab_two_ae_one: RateClaim::max_of(&ab.two_way, &ae.one_way, "AB", "AE"),
        ab_one_ae_two: RateClaim::max_of(&ab.one_way, &ae.two_way, "AB", "AE"),
        ab_one_ae_one: RateClaim::max_of(&ab.one_way, &ae.one_way, "AB", "AE"),
    };
    if classification == Classification::SomeReduction2WayDistillable {
        for claim in [
            &mut rates.ab_two_ae_two,
            &mut rates.ab_two_ae_one,
            &mut rates.ab_one_ae_two,
        ] {
            if claim.status != RateStatus::Positive {
                claim.positive(SOME_REDUCTION_NPT);
            }
        }
    }

    let witness_phi = match &ab.one_way_witness {
        WitnessRecord::Found { phi, .. } => Some(phi.clone()),
        _ => None,
    };

    Ok(DistillabilityReport {
        dims: psi.dims(),
        ranks: Ranks {
            r: ab.rank,
            r_a: ab.rank_alice,
            r_b: ab.rank_partner,
            r_e: ae.rank_partner,
            r_ae: ae.rank,
        },
        ppt_ab: ab.ppt,
        ppt_ae: ae.ppt,
        low_rank_bound_a: ab.low_rank_bound_alice,
        low_rank_bound_b: ab.low_rank_bound_partner,
        hashing_rate: ab.hashing_rate,
        witness_phi,
        classification,
        npt_reductions,
        rates,
        ab,
        ae,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeVerdict {
    /// PPT with `rank rho <= max{rank rho_A, rank rho_B}`.
    Separable,
    /// NPT with `rank rho <= max{rank rho_A, rank rho_B}`.
    EntangledTwoWayDistillable,
    /// NPT outside the low-rank regime: entangled, distillability undecided.
    EntangledUndecided,
    /// PPT outside the low-rank regime: separability undecided.
    PptUndecided,
}

/// Rank pattern of a bipartite state and its canonical complement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRegimeReport {
    pub rank: usize,
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_e: usize,
    pub rank_ae: usize,
    /// `rank rho_AB = rank rho_E <= rank rho_AE = rank rho_B`.
    pub complement_pattern: bool,
    /// `rank rho_AB <= max{rank rho_A, rank rho_B}`, where PPT and
    /// separability coincide.
    pub low_rank_regime: bool,
    pub ppt: PptVerdict,
    pub verdict: RegimeVerdict,
}

pub fn rank_regime(rho: &DensityMatrix, tol: &Tolerances) -> Result<RankRegimeReport> {
    rho.bipartite_dims()?;
    let psi = purify(rho, tol.rank)?;
    let full = psi.density();
    let rank = rho.rank(tol.rank)?;
    let rank_a = partial_trace(rho, &[0])?.rank(tol.rank)?;
    let rank_b = partial_trace(rho, &[1])?.rank(tol.rank)?;
    let rank_e = partial_trace(&full, &[2])?.rank(tol.rank)?;
    let rank_ae = psi.rho_ae().rank(tol.rank)?;
    let complement_pattern = rank == rank_e && rank_e <= rank_ae && rank_ae == rank_b;
    let low_rank_regime = rank <= rank_a.max(rank_b);
    let ppt = is_ppt(rho, tol.ppt)?;
    let verdict = match (low_rank_regime, ppt.ppt) {
        (true, true) => RegimeVerdict::Separable,
        (true, false) => RegimeVerdict::EntangledTwoWayDistillable,
        (false, true) => RegimeVerdict::PptUndecided,
        (false, false) => RegimeVerdict::EntangledUndecided,
    };
    Ok(RankRegimeReport {
        rank,
        rank_a,
        rank_b,
        rank_e,
        rank_ae,
        complement_pattern,
        low_rank_regime,
        ppt,
        verdict,
    })
}
