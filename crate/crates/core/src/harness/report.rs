//! Human-readable tables and CSV plot data from result documents.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::harness::run::{OracleRow, ResultDocument, RunResult, SuccessRow};

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    label: &'a str,
    estimate: f64,
    stderr: f64,
    oracle: Option<f64>,
    pass: Option<bool>,
}

#[derive(Debug, Serialize)]
struct SuccessCsvRow {
    n: usize,
    p_mub: f64,
    p_c_closed_form: f64,
    p_c_exact: f64,
    p_mub_sampled: Option<f64>,
    p_mub_stderr: Option<f64>,
    p_c_sampled: Option<f64>,
    p_c_stderr: Option<f64>,
}

impl From<&SuccessRow> for SuccessCsvRow {
    fn from(r: &SuccessRow) -> Self {
        SuccessCsvRow {
            n: r.n,
            p_mub: r.mub_closed_form,
            p_c_closed_form: r.clifford_closed_form,
            p_c_exact: r.clifford_exact,
            p_mub_sampled: r.mub_sampled.as_ref().map(|s| s.fraction),
            p_mub_stderr: r.mub_sampled.as_ref().map(|s| s.stderr),
            p_c_sampled: r.clifford_sampled.as_ref().map(|s| s.fraction),
            p_c_stderr: r.clifford_sampled.as_ref().map(|s| s.stderr),
        }
    }
}

/// Estimate rows in the `(label, estimate, stderr, oracle, pass)` shape.
pub fn estimate_rows(doc: &ResultDocument) -> Vec<OracleRow> {
    match &doc.result {
        RunResult::ExactChi(r) => r
            .entries
            .iter()
            .filter(|e| e.row == e.col)
            .map(|e| OracleRow {
                label: e.row.clone(),
                estimate: e.re,
                stderr: 0.0,
                oracle: Some(e.re),
                pass: Some(true),
            })
            .collect(),
        RunResult::SeqptSelective(r) => r.rows.clone(),
        RunResult::SeqptBlind(r) => r.rows.clone(),
        RunResult::LocalTwirl(r) => r.chi_col_rows.clone(),
        RunResult::HaarVerify(r) => r
            .rows
            .iter()
            .map(|h| OracleRow {
                label: format!("D{}#{}", h.dim, h.quadruple),
                estimate: h.estimate.estimate[0],
                stderr: h.estimate.stderr[0],
                oracle: Some(h.estimate.closed_form[0]),
                pass: Some(h.pass),
            })
            .collect(),
        RunResult::BoundsCheck(_) | RunResult::SuccessProb(_) => Vec::new(),
    }
}

pub fn write_estimates_csv<W: Write>(doc: &ResultDocument, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in estimate_rows(doc) {
        out.serialize(CsvRow {
            label: &r.label,
            estimate: r.estimate,
            stderr: r.stderr,
            oracle: r.oracle,
            pass: r.pass,
        })?;
    }
    out.flush()?;
    Ok(())
}

/// `𝒫_MUB`, `𝒫_C` versus `n`; empty for other protocols.
pub fn write_success_csv<W: Write>(doc: &ResultDocument, w: W) -> Result<bool> {
    let RunResult::SuccessProb(r) = &doc.result else { return Ok(false) };
    let mut out = csv::Writer::from_writer(w);
    for row in &r.rows {
        out.serialize(SuccessCsvRow::from(row))?;
    }
    out.flush()?;
    Ok(true)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"))
}

fn pass_str(p: Option<bool>) -> &'static str {
    match p {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "-",
    }
}

fn oracle_table(s: &mut String, rows: &[OracleRow]) {
    let _ = writeln!(s, "{:<16} {:>12} {:>12} {:>12} {:>6}", "label", "estimate", "stderr", "oracle", "pass");
    for r in rows {
        let _ = writeln!(
            s,
            "{:<16} {:>12.6} {:>12.6} {:>12} {:>6}",
            r.label,
            r.estimate,
            r.stderr,
            opt(r.oracle),
            pass_str(r.pass)
        );
    }
}

/// Plain-text summary of a result document.
pub fn render_table(doc: &ResultDocument) -> String {
    let mut s = String::new();
    if let (Some(name), Some(n)) = (&doc.channel, doc.n) {
        let _ = writeln!(s, "channel: {} (n = {n})", if name.is_empty() { "<unnamed>" } else { name });
    }
    let _ = writeln!(s, "seed: {}", doc.seed);
    for w in &doc.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    match &doc.result {
        RunResult::ExactChi(r) => {
            let _ = writeln!(s, "exact chi: {} nonzero entries, trace {:.12}", r.entries.len(), r.trace);
            let cls = &r.classification;
            let _ = writeln!(
                s,
                "classification: hermitian_preserving={} trace_preserving={} completely_positive={} positive={:?}",
                cls.hermitian_preserving, cls.trace_preserving, cls.completely_positive, cls.positive
            );
            let _ = writeln!(s, "{:<8} {:<8} {:>14} {:>14}", "row", "col", "re", "im");
            for e in &r.entries {
                let _ = writeln!(s, "{:<8} {:<8} {:>14.10} {:>14.10}", e.row, e.col, e.re, e.im);
            }
            if let Some(checks) = &r.twirl_check {
                let worst = checks.iter().map(|t| t.deviation).fold(0.0, f64::max);
                let _ = writeln!(s, "twirl extraction max deviation: {worst:.3e}");
            }
        }
        RunResult::SeqptSelective(r) => {
            let _ = writeln!(s, "selective estimates");
            oracle_table(&mut s, &r.rows);
        }
        RunResult::SeqptBlind(r) => {
            let res = &r.result;
            let _ = writeln!(s, "blind discovery: variant {}, M = {}", res.variant, res.shots);
            let _ = writeln!(
                s,
                "pairs: {} analyzed of {}{}, usable fraction {:.6} ± {:.6} (closed form {:.6})",
                res.pairs_analyzed,
                res.total_pairs,
                if res.pairs_subsampled { " (subsampled)" } else { "" },
                res.usable_pair_fraction,
                res.usable_pair_stderr,
                res.success_probability
            );
            let _ = writeln!(
                s,
                "{:<16} {:>12} {:>12} {:>12} {:>6} {:>10}",
                "label", "estimate", "stderr", "oracle", "pass", "status"
            );
            let mut threshold_drawn = false;
            for (row, est) in r.rows.iter().zip(&res.estimates) {
                if !threshold_drawn && est.chi < res.threshold {
                    let _ = writeln!(s, "---- threshold 2/M = {:.6} ----", res.threshold);
                    threshold_drawn = true;
                }
                let _ = writeln!(
                    s,
                    "{:<16} {:>12.6} {:>12.6} {:>12} {:>6} {:>10}",
                    row.label,
                    row.estimate,
                    row.stderr,
                    opt(row.oracle),
                    pass_str(row.pass),
                    format!("{:?}", est.status).to_lowercase()
                );
            }
            if !threshold_drawn {
                let _ = writeln!(s, "---- threshold 2/M = {:.6} ----", res.threshold);
            }
            let _ = writeln!(
                s,
                "below threshold: {}, singletons: {}, residual mass: {:.6}",
                res.below_threshold, res.singletons, res.residual_mass
            );
            if !r.false_positives.is_empty() {
                let _ = writeln!(s, "false positives: {}", r.false_positives.join(", "));
            }
        }
        RunResult::LocalTwirl(r) => {
            let est = &r.estimate;
            let _ = writeln!(
                s,
                "local twirl: M = {}, w_co = {}{}",
                est.config.shots,
                est.cutoff,
                if est.cutoff_defaulted { " (default)" } else { "" }
            );
            let _ = writeln!(
                s,
                "{:<4} {:>12} {:>12} {:>12} {:>14} {:>12}",
                "w", "p_w", "stderr", "oracle", "amplification", "worst_gain"
            );
            for (w, p) in est.weights.p_w.iter().enumerate() {
                let cond = &est.weights.condition_report[w];
                let _ = writeln!(
                    s,
                    "{:<4} {:>12.6} {:>12} {:>12} {:>14.4} {:>12.4}",
                    w,
                    p,
                    opt(est.weights.stderr(w)),
                    opt(r.oracle_p_w.as_ref().map(|o| o[w])),
                    cond.amplification,
                    cond.worst_case_gain
                );
            }
            let _ = writeln!(
                s,
                "tail residual: {:.3e}, sum-rule residual: {:.3e}",
                est.weights.tail_residual, est.weights.sum_rule_residual
            );
            if !r.chi_col_rows.is_empty() {
                let _ = writeln!(s, "chi_col by support");
                oracle_table(&mut s, &r.chi_col_rows);
            }
        }
        RunResult::BoundsCheck(r) => {
            let cls = &r.classification;
            let _ = writeln!(
                s,
                "classification: trace_preserving={} completely_positive={} positive={:?}",
                cls.trace_preserving, cls.completely_positive, cls.positive
            );
            let _ = writeln!(s, "min chi eigenvalue: {:.12}", r.min_chi_eigenvalue);
            let _ = writeln!(s, "cp bound violations: {} (tolerance {:e})", r.cp_violations.len(), r.tolerance);
            let _ = writeln!(s, "positivity bound violations: {}", r.positive_violations.len());
            for v in r.cp_violations.iter().chain(&r.positive_violations) {
                let _ = writeln!(s, "  {:?} ({}, {}): lhs {:.6} > rhs {:.6}", v.kind, v.row, v.col, v.lhs, v.rhs);
            }
        }
        RunResult::HaarVerify(r) => {
            let _ =
                writeln!(s, "{:<4} {:<4} {:>24} {:>24} {:>8} {:>6}", "D", "#", "estimate", "closed form", "z", "pass");
            for h in &r.rows {
                let e = &h.estimate;
                let _ = writeln!(
                    s,
                    "{:<4} {:<4} {:>24} {:>24} {:>8.3} {:>6}",
                    h.dim,
                    h.quadruple,
                    format!("{:.5}{:+.5}i", e.estimate[0], e.estimate[1]),
                    format!("{:.5}{:+.5}i", e.closed_form[0], e.closed_form[1]),
                    h.z_score,
                    pass_str(Some(h.pass))
                );
            }
            let _ = writeln!(s, "all within 3 sigma: {}", r.all_pass);
        }
        RunResult::SuccessProb(r) => {
            let _ = writeln!(
                s,
                "{:<4} {:>10} {:>12} {:>12} {:>18} {:>18}",
                "n", "P_MUB", "P_C formula", "P_C exact", "MUB sampled", "Clifford sampled"
            );
            for row in &r.rows {
                let sampled = |e: &Option<crate::seqpt::PairSuccessEstimate>| {
                    e.as_ref().map_or_else(|| "-".to_string(), |e| format!("{:.5}±{:.5}", e.fraction, e.stderr))
                };
                let _ = writeln!(
                    s,
                    "{:<4} {:>10.6} {:>12.6} {:>12.6} {:>18} {:>18}",
                    row.n,
                    row.mub_closed_form,
                    row.clifford_closed_form,
                    row.clifford_exact,
                    sampled(&row.mub_sampled),
                    sampled(&row.clifford_sampled)
                );
            }
        }
    }
    s
}

/// Files written by [`report`].
#[derive(Debug, Clone)]
pub struct ReportOutputs {
    pub table: String,
    pub estimates_csv: PathBuf,
    pub success_csv: Option<PathBuf>,
}

/// Writes `estimates.csv` (and `success.csv` when applicable) next to `result`.
pub fn report(result: &Path, out: &Path) -> Result<ReportOutputs> {
    let doc = ResultDocument::load(result)?;
    fs::create_dir_all(out)?;
    let estimates_csv = out.join("estimates.csv");
    write_estimates_csv(&doc, fs::File::create(&estimates_csv)?)?;
    let success_path = out.join("success.csv");
    let mut buf = Vec::new();
    let success_csv = if write_success_csv(&doc, &mut buf)? {
        fs::write(&success_path, buf)?;
        Some(success_path)
    } else {
        None
    };
    Ok(ReportOutputs { table: render_table(&doc), estimates_csv, success_csv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run::{execute, Protocol, RunManifest};
    use serde_json::json;

    #[test]
    fn success_table_has_six_rows() {
        let m = RunManifest::new(Protocol::SuccessProb, None, json!({}), 0);
        let doc = execute(&m, Path::new(".")).unwrap();
        let mut buf = Vec::new();
        assert!(write_success_csv(&doc, &mut buf).unwrap());
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[0].starts_with("n,p_mub,p_c_closed_form"));
        let row1: Vec<&str> = lines[1].split(',').collect();
        assert!((row1[1].parse::<f64>().unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((row1[2].parse::<f64>().unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let row2: Vec<&str> = lines[2].split(',').collect();
        assert!((row2[2].parse::<f64>().unwrap() - 22.0 / 45.0).abs() < 1e-15);
    }

    #[test]
    fn blind_table_sorted_with_threshold() {
        let dir = tempfile::tempdir().unwrap();
        let spec = dir.path().join("s.json");
        fs::write(&spec, r#"{"n":2,"build":[{"named_gate":"CNOT","qubits":[1,2]}]}"#).unwrap();
        let m = RunManifest::new(Protocol::SeqptBlind, Some(spec), json!({"shots": 3000}), 11);
        let doc = execute(&m, dir.path()).unwrap();
        let RunResult::SeqptBlind(r) = &doc.result else { panic!() };
        assert!(r.result.estimates.windows(2).all(|w| w[0].chi >= w[1].chi));
        let table = render_table(&doc);
        assert!(table.contains("threshold 2/M = 0.000667"), "{table}");
        let mut buf = Vec::new();
        write_estimates_csv(&doc, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("label,estimate,stderr,oracle,pass"));
    }

    #[test]
    fn local_twirl_table_has_amplification() {
        let dir = tempfile::tempdir().unwrap();
        let spec = dir.path().join("s.json");
        fs::write(&spec, r#"{"n":2,"build":[{"pauli_channel":[{"pauli":"II","probability":0.7},{"pauli":"ZI","probability":0.3}]}]}"#)
            .unwrap();
        let m = RunManifest::new(Protocol::LocalTwirl, Some(spec), json!({"shots": 2000, "cutoff": 2}), 5);
        let doc = execute(&m, dir.path()).unwrap();
        let table = render_table(&doc);
        assert!(table.contains("amplification"));
        assert!(table.contains("2.2500"), "{table}");
    }
}
