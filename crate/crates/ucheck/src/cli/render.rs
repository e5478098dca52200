//! Report rendering: canonical JSON for machines, TSV for humans.

use serde::Serialize;

use crate::engine::{
    EntnerReport, FalsificationReport, NegativeControlReport, ProbeReport, StabilityReport,
    TestReport,
};
use crate::graph::{AssumptionFinding, OracleReport, PathRecord};
use crate::sim::{PowerResult, ScenarioTable};

/// Canonical JSON: values pass through `serde_json::Value`, whose object
/// keys are sorted, so parsing the output and re-rendering it reproduces
/// the bytes exactly.
pub fn to_canonical_json<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values render");
    out.push('\n');
    out
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("{key}\t{value}\n"));
}

fn fmt_p(p: f64) -> String {
    if p != 0.0 && p < 1e-4 {
        format!("{p:.3e}")
    } else {
        format!("{p:.4}")
    }
}

pub fn test_report_tsv(report: &TestReport) -> String {
    let mut out = String::new();
    kv(&mut out, "exposure", &report.exposure);
    kv(&mut out, "outcome", &report.outcome);
    kv(&mut out, "n_used", report.n_used);
    kv(&mut out, "alpha_dep", report.config.alpha_dep);
    kv(&mut out, "alpha_indep", report.config.alpha_indep);
    kv(&mut out, "verdict", report.verdict);
    kv(&mut out, "witnesses", report.witnesses.join(","));
    kv(
        &mut out,
        "exposure_effect",
        format!(
            "{:.4} ({:.4}; {:.4}) p={}",
            report.exposure_effect.coefficient,
            report.exposure_effect.ci_lower,
            report.exposure_effect.ci_upper,
            fmt_p(report.exposure_effect.p_value)
        ),
    );
    out.push_str("covariate\tp_exposure\teligible\tp_outcome\tpasses_independence\n");
    for r in &report.records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.covariate,
            fmt_p(r.p_exposure),
            r.eligible,
            fmt_p(r.p_outcome),
            r.passes_independence
        ));
    }
    out
}

pub fn probe_report_tsv(report: &ProbeReport) -> String {
    let mut out = String::new();
    kv(&mut out, "dropped", report.dropped.join(","));
    kv(&mut out, "base_verdict", report.base.verdict);
    kv(
        &mut out,
        "restricted_exposure_effect",
        format!(
            "{:.4} ({:.4}; {:.4})",
            report.restricted_exposure_effect.coefficient,
            report.restricted_exposure_effect.ci_lower,
            report.restricted_exposure_effect.ci_upper
        ),
    );
    out.push_str("witness\tp_restricted\tp_bivariate\tfaithfulness_suspect\n");
    for w in &report.witnesses {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            w.covariate,
            w.p_restricted.map(fmt_p).unwrap_or_else(|| "-".into()),
            w.p_bivariate.map(fmt_p).unwrap_or_else(|| "-".into()),
            w.faithfulness_suspect
        ));
    }
    kv(&mut out, "flagged", report.flagged.join(","));
    out
}

pub fn assumptions_tsv(findings: &[AssumptionFinding]) -> String {
    let mut out = String::from("assumption\tstatus\n");
    for f in findings {
        out.push_str(&format!("{}\n", f.to_string().replacen(": ", "\t", 1)));
    }
    out
}

pub fn oracle_report_tsv(report: &OracleReport, backdoor_valid: bool) -> String {
    let mut out = String::new();
    kv(&mut out, "exposure", &report.exposure);
    kv(&mut out, "outcome", &report.outcome);
    kv(&mut out, "candidates", report.candidates.join(","));
    kv(&mut out, "backdoor_valid", backdoor_valid);
    kv(&mut out, "verdict", report.verdict);
    kv(&mut out, "witnesses", report.witnesses.join(","));
    out.push_str("eligible\tis_witness\treduced_set\n");
    for e in &report.eligible {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            e.name,
            e.is_witness,
            e.reduced_set.join(",")
        ));
    }
    out
}

pub fn path_records_tsv(records: &[PathRecord]) -> String {
    let mut out = String::from("path\tform\tcolliders\n");
    for r in records {
        let form = match r.form {
            crate::graph::PathForm::Form(f) => f.to_string(),
            crate::graph::PathForm::Unclassified => "unclassified".into(),
        };
        let colliders: Vec<&str> = r
            .nodes
            .iter()
            .zip(&r.colliders)
            .filter(|(_, &c)| c)
            .map(|(n, _)| n.as_str())
            .collect();
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            r.nodes.join(" - "),
            form,
            colliders.join(",")
        ));
    }
    out
}

pub fn scenario_table_tsv(table: &ScenarioTable) -> String {
    let mut out = String::new();
    kv(&mut out, "scenario", table.spec.scenario);
    kv(&mut out, "n", table.spec.n);
    kv(&mut out, "n_iter", table.spec.n_iter);
    kv(&mut out, "seed", table.spec.seed);
    kv(&mut out, "alpha", table.spec.alpha);
    kv(&mut out, "bias_cutoff", table.spec.bias_cutoff);
    out.push_str("stratum\tstratum_size\tk\tcounts\tpct\n");
    for stratum in &table.strata {
        let label = match stratum.stratum {
            crate::sim::BiasStratum::AboveCutoff => "above_cutoff",
            crate::sim::BiasStratum::AtOrBelowCutoff => "at_or_below_cutoff",
        };
        for row in &stratum.rows {
            let counts: Vec<String> = row.counts.iter().map(u64::to_string).collect();
            let pct: Vec<String> = row.pct.iter().map(|p| format!("{p:.1}")).collect();
            out.push_str(&format!(
                "{label}\t{}\t{}\t{}\t{}\n",
                stratum.stratum_size,
                row.k,
                counts.join(","),
                pct.join(",")
            ));
        }
    }
    out
}

pub fn power_tsv(result: &PowerResult) -> String {
    let mut out = String::new();
    kv(&mut out, "n", result.spec.n);
    kv(&mut out, "beta1", result.spec.beta1);
    kv(&mut out, "beta2", result.spec.beta2);
    kv(&mut out, "gamma1", result.spec.gamma1);
    kv(&mut out, "rho", result.spec.rho);
    kv(&mut out, "n_iter", result.spec.n_iter);
    kv(&mut out, "seed", result.spec.seed);
    kv(&mut out, "ci_level", result.spec.ci_level);
    kv(&mut out, "prob_both", format!("{:.4}", result.prob_both));
    kv(
        &mut out,
        "prob_at_least_one",
        format!("{:.4}", result.prob_at_least_one),
    );
    kv(
        &mut out,
        "rejection_rate_first",
        format!("{:.4}", result.rejection_rate_first),
    );
    kv(
        &mut out,
        "rejection_rate_second",
        format!("{:.4}", result.rejection_rate_second),
    );
    out
}

pub fn stability_tsv(report: &StabilityReport) -> String {
    let mut out = String::new();
    kv(&mut out, "probe", &report.probe);
    kv(
        &mut out,
        "assumes_not_barren_proxy",
        report.assumes_not_barren_proxy,
    );
    kv(&mut out, "p_exposure", fmt_p(report.p_exposure));
    kv(
        &mut out,
        "p_outcome_given_exposure",
        fmt_p(report.p_outcome_given_exposure),
    );
    kv(&mut out, "verdict", report.verdict);
    out
}

pub fn entner_tsv(report: &EntnerReport) -> String {
    let mut out = String::new();
    kv(&mut out, "contradictory", report.contradictory);
    out.push_str("rule\twitness\tconditioning\tconclusion\n");
    for f in &report.firings {
        let rule = match f.rule {
            crate::engine::EntnerRule::RuleOne => "rule_1",
            crate::engine::EntnerRule::RuleTwoScreening => "rule_2_screening",
            crate::engine::EntnerRule::RuleTwoWitness => "rule_2_witness",
        };
        let conclusion = match &f.conclusion {
            crate::engine::EntnerConclusion::ExposureCausesOutcome {
                valid_adjustment_set,
            } => format!(
                "exposure_causes_outcome; valid_set={}",
                valid_adjustment_set.join(",")
            ),
            crate::engine::EntnerConclusion::ExposureDoesNotCauseOutcome => {
                "exposure_does_not_cause_outcome".into()
            }
        };
        out.push_str(&format!(
            "{rule}\t{}\t{}\t{conclusion}\n",
            f.witness.clone().unwrap_or_else(|| "-".into()),
            f.conditioning.join(",")
        ));
    }
    out
}

pub fn falsification_tsv(report: &FalsificationReport) -> String {
    let mut out = String::new();
    kv(&mut out, "exogenous", &report.exogenous);
    kv(&mut out, "conditioning", report.conditioning.join(","));
    kv(&mut out, "p_exposure", fmt_p(report.p_exposure));
    kv(&mut out, "p_outcome", fmt_p(report.p_outcome));
    kv(&mut out, "verdict", report.verdict);
    out
}

pub fn negative_control_tsv(report: &NegativeControlReport) -> String {
    let mut out = String::new();
    kv(&mut out, "negative_control", &report.negative_control);
    kv(&mut out, "adjustment", report.adjustment.join(","));
    let line = |e: &crate::engine::EffectEstimate| {
        format!(
            "{:.4} ({:.4}; {:.4}) p={}",
            e.coefficient,
            e.ci_lower,
            e.ci_upper,
            fmt_p(e.p_value)
        )
    };
    kv(&mut out, "unadjusted", line(&report.unadjusted));
    kv(&mut out, "adjusted", line(&report.adjusted));
    out
}
