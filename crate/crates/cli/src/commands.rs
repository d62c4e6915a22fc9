use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use qdistill_core::channels::{
    capacity_bounds_from_distillation, direct_sum_channel, werner_holevo, ChoiChannel,
};
use qdistill_core::distill::{self, rank_regime};
use qdistill_core::format::{
    matrix_rows, parse_input, to_json_string, ChannelJson, ComplexEntry, InputFile, PureJson,
    StateJson,
};
use qdistill_core::sampling::{run_low_rank_experiment, EnsembleReport, EnsembleSpec};
use qdistill_core::states::purify;
use qdistill_core::{
    CapacityBounds, Complex64, ComplexVector, DensityMatrix, DistillabilityReport, PureState,
    RankRegimeReport, Side, TripartitePureState,
};

use crate::config::{OutputFormat, RunConfig, ToolInfo, TOOL};
use crate::error::CliError;
use crate::render;

fn read_input(path: &Path) -> Result<InputFile, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(parse_input(&text)?)
}

fn no_csv(config: &RunConfig, what: &str) -> Result<(), CliError> {
    if config.format == OutputFormat::Csv {
        return Err(CliError::Input(format!(
            "--format csv is only available for sample, not {what}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct InputSummary {
    pub kind: &'static str,
    pub dims: Vec<usize>,
}

fn summarize(input: &InputFile) -> InputSummary {
    match input {
        InputFile::Mixed(rho) => InputSummary {
            kind: "mixed_state",
            dims: rho.dims().to_vec(),
        },
        InputFile::Pure(psi) => InputSummary {
            kind: "pure_state",
            dims: psi.dims().to_vec(),
        },
        InputFile::Channel(ch) => InputSummary {
            kind: "channel",
            dims: vec![ch.d_in(), ch.d_out()],
        },
    }
}

fn bipartite_error(kind: &str, dims: &[usize]) -> CliError {
    CliError::Input(format!(
        "a {kind} needs two subsystems here, got dims {dims:?}"
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct ChannelCapacity {
    /// One-way capacity lower bound from the hashing rate of the Choi state.
    pub from_hashing_rate: CapacityBounds,
    /// Two-way capacity lower bound from the low-rank bound on the output side.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_low_rank_bound: Option<CapacityBounds>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub input: InputSummary,
    /// Set when the input was bipartite and replaced by its canonical purification.
    pub purified: bool,
    pub classification: qdistill_core::Classification,
    pub report: DistillabilityReport,
    /// Rank pattern of `rho_AB` and its complement.
    pub rank_regime: RankRegimeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel_capacity: Option<ChannelCapacity>,
}

pub fn analyze(path: &Path, config: &RunConfig) -> Result<String, CliError> {
    no_csv(config, "analyze")?;
    let input = read_input(path)?;
    let summary = summarize(&input);
    let tol = config.tolerances();
    let (psi, purified, channel_dim) = match input {
        InputFile::Mixed(rho) => {
            if rho.dims().len() != 2 {
                return Err(bipartite_error("mixed state", rho.dims()));
            }
            (purify(&rho, tol.rank)?, true, None)
        }
        InputFile::Pure(psi) => match psi.dims().len() {
            3 => (TripartitePureState::from_pure(psi)?, false, None),
            2 => {
                let trivial_e = PureState::basis(vec![1], 0)?;
                (
                    TripartitePureState::from_pure(psi.tensor(&trivial_e))?,
                    false,
                    None,
                )
            }
            _ => {
                return Err(CliError::Input(format!(
                    "a pure state needs two or three subsystems, got dims {:?}",
                    psi.dims()
                )))
            }
        },
        InputFile::Channel(ch) => (purify(ch.choi(), tol.rank)?, true, Some(ch.d_in())),
    };

    let report = distill::classify(&psi, &config.analysis_options())?;
    let regime = rank_regime(&psi.rho_ab(), &tol)?;
    let channel_capacity = match channel_dim {
        Some(d_in) => Some(ChannelCapacity {
            from_hashing_rate: capacity_bounds_from_distillation(
                d_in,
                report.hashing_rate.max(0.0),
            )?,
            from_low_rank_bound: report
                .low_rank_bound_b
                .map(|b| capacity_bounds_from_distillation(d_in, b))
                .transpose()?,
        }),
        None => None,
    };
    let out = AnalyzeReport {
        tool: TOOL,
        config: *config,
        input: summary,
        purified,
        classification: report.classification,
        report,
        rank_regime: regime,
        channel_capacity,
    };
    Ok(match config.format {
        OutputFormat::Pretty => render::pretty_analyze(&out),
        _ => to_json_string(&out) + "\n",
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterReport {
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub input: InputSummary,
    pub side: String,
    pub p_succ: f64,
    /// `lambda_min * r_side`.
    pub p_succ_closed_form: f64,
    pub lambda_min: f64,
    pub rank: usize,
    pub marginal_rank: usize,
    pub filtered_marginal_rank: usize,
    pub marginal_flatness_defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub low_rank_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub low_rank_bound_unavailable: Option<String>,
    pub filtered_hashing_rate: f64,
    pub filter_operator: Vec<Vec<ComplexEntry>>,
    pub filtered_state: StateJson,
}

pub fn filter(path: &Path, side: Side, config: &RunConfig) -> Result<String, CliError> {
    no_csv(config, "filter")?;
    let input = read_input(path)?;
    let summary = summarize(&input);
    let rho: DensityMatrix = match input {
        InputFile::Mixed(rho) if rho.dims().len() == 2 => rho,
        InputFile::Pure(psi) if psi.dims().len() == 2 => psi.density(),
        InputFile::Pure(psi) if psi.dims().len() == 3 => {
            TripartitePureState::from_pure(psi)?.rho_ab()
        }
        InputFile::Channel(ch) => ch.choi().clone(),
        InputFile::Mixed(rho) => return Err(bipartite_error("mixed state", rho.dims())),
        InputFile::Pure(psi) => return Err(bipartite_error("pure state", psi.dims())),
    };
    let tol = config.tolerances();
    let out = distill::filter(&rho, side, &tol)?;
    let (low_rank_bound, low_rank_bound_unavailable) =
        match distill::low_rank_bound(&rho, side, &tol) {
            Ok(b) => (Some(b), None),
            Err(e @ qdistill_core::Error::PreconditionRankNotLow { .. }) => {
                (None, Some(e.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
    let report = FilterReport {
        tool: TOOL,
        config: *config,
        input: summary,
        side: side.to_string(),
        p_succ: out.p_succ,
        p_succ_closed_form: out.p_succ_closed_form(),
        lambda_min: out.lambda_min,
        rank: out.rank,
        marginal_rank: out.marginal_rank,
        filtered_marginal_rank: out.filtered_marginal_rank,
        marginal_flatness_defect: out.marginal_flatness_defect()?,
        low_rank_bound,
        low_rank_bound_unavailable,
        filtered_hashing_rate: distill::filtered_hashing_rate(&rho, side, &tol)?,
        filter_operator: matrix_rows(&out.filter_operator),
        filtered_state: (&out.filtered_state).into(),
    };
    Ok(match config.format {
        OutputFormat::Pretty => render::pretty_filter(&report),
        _ => to_json_string(&report) + "\n",
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub tool: ToolInfo,
    pub config: RunConfig,
    #[serde(flatten)]
    pub ensemble: EnsembleReport,
}

pub fn sample(
    d_a: usize,
    d_b: usize,
    d_e: usize,
    n: usize,
    config: &RunConfig,
) -> Result<String, CliError> {
    let spec = EnsembleSpec::with_rank_tol(d_a, d_b, d_e, n, config.seed, config.rank_tol)?;
    let ensemble = run_low_rank_experiment(&spec, config.witness_budget)?;
    let report = SampleReport {
        tool: TOOL,
        config: *config,
        ensemble,
    };
    match config.format {
        OutputFormat::Json => Ok(to_json_string(&report) + "\n"),
        OutputFormat::Pretty => Ok(render::pretty_sample(&report)),
        OutputFormat::Csv => render::csv_sample(&report.ensemble),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// Bell pair between A and B, trivial E: dims [2, 2, 1].
    Bell,
    /// GHZ state on three qubits.
    Ghz,
    /// Maximally mixed state on d x d.
    MaximallyMixed,
    /// Qutrit Werner-Holevo channel.
    WernerHolevo,
    /// Direct sum of the identity and a depolarizing channel on d dimensions.
    Example1,
    /// Choi state of the Werner-Holevo channel as a mixed state.
    WhChoi,
}

fn channel_json(ch: &ChoiChannel, complement: bool, rank_tol: f64) -> Result<String, CliError> {
    let ch = if complement {
        ch.complement(rank_tol)?
    } else {
        ch.clone()
    };
    Ok(to_json_string(&ChannelJson::from(&ch)))
}

pub fn example(
    name: ExampleName,
    d: usize,
    q: f64,
    complement: bool,
    config: &RunConfig,
) -> Result<String, CliError> {
    no_csv(config, "example")?;
    if complement && !matches!(name, ExampleName::WernerHolevo | ExampleName::Example1) {
        return Err(CliError::Input(
            "--complement applies to channel examples only".into(),
        ));
    }
    let h = Complex64::new(0.5f64.sqrt(), 0.0);
    let text = match name {
        ExampleName::Bell => {
            let v = ComplexVector::from_vec(vec![h, 0.0.into(), 0.0.into(), h]);
            to_json_string(&PureJson::from(&PureState::new(vec![2, 2, 1], v)?))
        }
        ExampleName::Ghz => {
            let mut v = ComplexVector::zeros(8);
            v[0] = h;
            v[7] = h;
            to_json_string(&PureJson::from(&PureState::new(vec![2, 2, 2], v)?))
        }
        ExampleName::MaximallyMixed => {
            if d == 0 {
                return Err(CliError::Input("--d must be at least 1".into()));
            }
            to_json_string(&StateJson::from(&DensityMatrix::maximally_mixed(vec![
                d, d,
            ])?))
        }
        ExampleName::WernerHolevo => channel_json(&werner_holevo(), complement, config.rank_tol)?,
        ExampleName::Example1 => {
            channel_json(&direct_sum_channel(d, q)?, complement, config.rank_tol)?
        }
        ExampleName::WhChoi => to_json_string(&StateJson::from(werner_holevo().choi())),
    };
    Ok(text + "\n")
}
