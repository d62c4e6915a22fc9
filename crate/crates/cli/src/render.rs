//! Human-readable and CSV renderings. JSON is the canonical format.

use std::fmt::Write;

use qdistill_core::distill::{RateStatus, ReductionReport, WitnessRecord};
use qdistill_core::sampling::EnsembleReport;
use qdistill_core::PptVerdict;

use crate::commands::{AnalyzeReport, FilterReport, SampleReport};
use crate::error::CliError;

fn ppt_line(v: &PptVerdict) -> String {
    format!(
        "{} (min eigenvalue of partial transpose {:.12}{})",
        if v.ppt { "PPT" } else { "NPT" },
        v.min_eigenvalue,
        if v.marginal { ", near tolerance" } else { "" }
    )
}

fn status(s: RateStatus) -> &'static str {
    match s {
        RateStatus::Zero => "zero",
        RateStatus::Positive => "positive",
        RateStatus::Unknown => "unknown",
    }
}

fn reduction(out: &mut String, r: &ReductionReport) {
    let partner = if r.label == "AE" { "E" } else { "B" };
    writeln!(out, "{}:", r.label).unwrap();
    writeln!(out, "  {}", ppt_line(&r.ppt)).unwrap();
    writeln!(
        out,
        "  ranks: joint {}, A {}, {partner} {}",
        r.rank, r.rank_alice, r.rank_partner
    )
    .unwrap();
    if let Some(b) = r.low_rank_bound_partner {
        writeln!(out, "  low-rank bound (filter on {partner}): {b:.12}").unwrap();
    }
    if let Some(b) = r.low_rank_bound_alice {
        writeln!(out, "  low-rank bound (filter on A): {b:.12}").unwrap();
    }
    writeln!(out, "  hashing rate: {:.12}", r.hashing_rate).unwrap();
    let w = match &r.one_way_witness {
        WitnessRecord::Found { trial, .. } => format!("found at trial {trial}"),
        WitnessRecord::NotFound { trials, .. } => format!("none in {trials} trials"),
        WitnessRecord::NotApplicable { reason } => format!("not applicable ({reason})"),
    };
    writeln!(out, "  one-way witness: {w}").unwrap();
    writeln!(
        out,
        "  one-way rate: {}, two-way rate: {}",
        status(r.one_way.status),
        status(r.two_way.status)
    )
    .unwrap();
    for n in &r.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
}

pub fn pretty_analyze(a: &AnalyzeReport) -> String {
    let r = &a.report;
    let mut out = String::new();
    writeln!(out, "qdistill {} analyze", a.tool.version).unwrap();
    writeln!(
        out,
        "input: {} {:?}{}",
        a.input.kind,
        a.input.dims,
        if a.purified { " (purified)" } else { "" }
    )
    .unwrap();
    writeln!(out, "classification: {}", r.classification).unwrap();
    writeln!(
        out,
        "ranks: r {}, r_A {}, r_B {}, r_E {}, r_AE {}",
        r.ranks.r, r.ranks.r_a, r.ranks.r_b, r.ranks.r_e, r.ranks.r_ae
    )
    .unwrap();
    reduction(&mut out, &r.ab);
    reduction(&mut out, &r.ae);
    writeln!(out, "maximal rates:").unwrap();
    for (name, claim) in [
        ("AB two-way, AE two-way", &r.rates.ab_two_ae_two),
        ("AB two-way, AE one-way", &r.rates.ab_two_ae_one),
        ("AB one-way, AE two-way", &r.rates.ab_one_ae_two),
        ("AB one-way, AE one-way", &r.rates.ab_one_ae_one),
    ] {
        writeln!(out, "  {name}: {}", status(claim.status)).unwrap();
    }
    writeln!(out, "rank regime of rho_AB: {:?}", a.rank_regime.verdict).unwrap();
    if let Some(c) = &a.channel_capacity {
        writeln!(
            out,
            "channel: one-way capacity >= {:.12}",
            c.from_hashing_rate.q_lower
        )
        .unwrap();
        if let Some(b) = &c.from_low_rank_bound {
            writeln!(out, "channel: two-way capacity >= {:.12}", b.q_lower).unwrap();
        }
    }
    writeln!(
        out,
        "config: rank_tol {:e}, ppt_tol {:e}, seed {}, budget {}",
        a.config.rank_tol, a.config.ppt_tol, a.config.seed, a.config.witness_budget
    )
    .unwrap();
    out
}

pub fn pretty_filter(f: &FilterReport) -> String {
    let mut out = String::new();
    writeln!(out, "qdistill {} filter on {}", f.tool.version, f.side).unwrap();
    writeln!(out, "input: {} {:?}", f.input.kind, f.input.dims).unwrap();
    writeln!(
        out,
        "p_succ: {:.12} (lambda_min * r = {:.12})",
        f.p_succ, f.p_succ_closed_form
    )
    .unwrap();
    writeln!(out, "lambda_min: {:.12}", f.lambda_min).unwrap();
    writeln!(
        out,
        "ranks: state {}, marginal {}, filtered marginal {}",
        f.rank, f.marginal_rank, f.filtered_marginal_rank
    )
    .unwrap();
    writeln!(
        out,
        "marginal flatness defect: {:e}",
        f.marginal_flatness_defect
    )
    .unwrap();
    match (&f.low_rank_bound, &f.low_rank_bound_unavailable) {
        (Some(b), _) => writeln!(out, "low-rank bound: {b:.12}").unwrap(),
        (None, Some(why)) => writeln!(out, "low-rank bound: not applicable ({why})").unwrap(),
        (None, None) => {}
    }
    writeln!(
        out,
        "filtered hashing rate: {:.12}",
        f.filtered_hashing_rate
    )
    .unwrap();
    out
}

pub fn pretty_sample(s: &SampleReport) -> String {
    let e = &s.ensemble;
    let mut out = String::new();
    writeln!(
        out,
        "qdistill {} sample d_A={} d_B={} d_E={} n={} seed={}",
        s.tool.version, e.spec.d_a, e.spec.d_b, e.spec.d_e, e.spec.n_samples, e.spec.seed
    )
    .unwrap();
    let f = &e.frequencies;
    let c = &e.counts;
    writeln!(
        out,
        "rank rho_AB = {}: {}/{} ({:.4})",
        e.expected_rank_ab, c.rank_ab, e.spec.n_samples, f.rank_ab
    )
    .unwrap();
    writeln!(
        out,
        "rank rho_B = {}: {}/{} ({:.4})",
        e.expected_rank_b, c.rank_b, e.spec.n_samples, f.rank_b
    )
    .unwrap();
    writeln!(
        out,
        "full Schmidt rank {} of every A-column: {}/{} ({:.4})",
        e.expected_schmidt_rank, c.schmidt, e.spec.n_samples, f.schmidt
    )
    .unwrap();
    writeln!(
        out,
        "one-way witness found (budget {}): {}/{} ({:.4})",
        e.witness_budget, c.witness, e.spec.n_samples, f.witness
    )
    .unwrap();
    out
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

pub fn csv_sample(e: &EnsembleReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |err: csv::Error| CliError::Input(format!("cannot write CSV: {err}"));
    w.write_record([
        "index",
        "rank_ab",
        "rank_b",
        "schmidt_ranks",
        "rank_ab_ok",
        "rank_b_ok",
        "schmidt_ok",
        "witness_found",
        "witness_trials",
        "min_retained_ab",
        "max_discarded_ab",
        "min_retained_b",
        "max_discarded_b",
    ])
    .map_err(fail)?;
    for s in &e.samples {
        let schmidt = s
            .schmidt_ranks
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            s.index.to_string(),
            s.rank_ab.to_string(),
            s.rank_b.to_string(),
            schmidt,
            s.rank_ab_ok.to_string(),
            s.rank_b_ok.to_string(),
            s.schmidt_ok.to_string(),
            s.witness_found.to_string(),
            s.witness_trials.to_string(),
            opt(s.margin_ab.min_retained),
            opt(s.margin_ab.max_discarded),
            opt(s.margin_b.min_retained),
            opt(s.margin_b.max_discarded),
        ])
        .map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Input(format!("cannot write CSV: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
}
