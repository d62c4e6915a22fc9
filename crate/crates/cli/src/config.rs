use clap::ValueEnum;
use serde::Serialize;

use qdistill_core::{AnalysisOptions, Tolerances};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

/// Settings shared by every subcommand, echoed into each report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RunConfig {
    pub rank_tol: f64,
    pub ppt_tol: f64,
    pub seed: u64,
    pub witness_budget: usize,
    #[serde(skip)]
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(
        rank_tol: f64,
        ppt_tol: f64,
        seed: u64,
        witness_budget: usize,
        format: OutputFormat,
    ) -> Result<Self, CliError> {
        for (name, v) in [("--rank-tol", rank_tol), ("--ppt-tol", ppt_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Input(format!(
                    "{name} must be a positive number, got {v}"
                )));
            }
        }
        Ok(Self {
            rank_tol,
            ppt_tol,
            seed,
            witness_budget,
            format,
        })
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            rank: self.rank_tol,
            ppt: self.ppt_tol,
        }
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        AnalysisOptions {
            tolerances: self.tolerances(),
            witness_budget: self.witness_budget,
            seed: self.seed,
        }
    }
}

/// Tool identification stamped on reports.
#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: ToolInfo = ToolInfo {
    name: "qdistill",
    version: qdistill_core::VERSION,
};
