//! Manifest-driven protocol runs and result persistence.
//!
//! A run writes `result.json` (the deterministic payload), `table.txt` and
//! `manifest.json`. Only the manifest carries a timestamp, so rerunning a
//! manifest reproduces `result.json` byte for byte.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bits::Bits;
use crate::channel::{
    check_cp_bound_with_tol, check_positive_bound_with_tol, diagonalize_chi, BoundViolation, ChannelModel, ChiMatrix,
    Classification, DEFAULT_BOUND_TOL,
};
use crate::dense::{self, c, CMatrix, DENSE_QUBIT_CAP};
use crate::error::{Error, Result};
use crate::harness::report;
use crate::harness::spec::load_channel;
use crate::local_twirl::{estimate_local_twirl, LocalTwirlConfig, LocalTwirlEstimate};
use crate::pauli::{PauliLabel, PauliOperator};
use crate::rng::{domain, substream};
use crate::seqpt::{
    estimate_chi_selective, exact_pair_success, run_blind_discovery, sample_pair_success, success_probability,
    DetectionStatus, PairSuccessEstimate, SelectiveEstimate, SeqptConfig, SeqptResult, Variant,
};
use crate::sim::{exact_chi_extraction, haar_twirl_moment, HaarMomentEstimate, EXACT_TWIRL_QUBIT_CAP};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Magnitude below which a χ entry counts as zero.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    ExactChi,
    SeqptSelective,
    SeqptBlind,
    LocalTwirl,
    BoundsCheck,
    HaarVerify,
    SuccessProb,
}

impl Protocol {
    pub fn needs_spec(self) -> bool {
        !matches!(self, Protocol::HaarVerify | Protocol::SuccessProb)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Channel-spec path, resolved against the manifest's directory when relative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<PathBuf>,
    pub protocol: Protocol,
    #[serde(default)]
    pub config: Value,
    /// Overrides any seed inside `config`.
    pub seed: u64,
    #[serde(default = "default_version")]
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

fn default_version() -> String {
    TOOL_VERSION.to_string()
}

impl RunManifest {
    pub fn new(protocol: Protocol, spec: Option<PathBuf>, config: Value, seed: u64) -> Self {
        RunManifest { spec, protocol, config, seed, tool_version: default_version(), timestamp: None }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectiveRunConfig {
    /// Pauli labels such as `"ZX"`.
    pub labels: Vec<String>,
    #[serde(flatten)]
    pub seqpt: SeqptConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsCheckConfig {
    #[serde(default = "default_bound_tol")]
    pub tolerance: f64,
}

fn default_bound_tol() -> f64 {
    DEFAULT_BOUND_TOL
}

impl Default for BoundsCheckConfig {
    fn default() -> Self {
        BoundsCheckConfig { tolerance: DEFAULT_BOUND_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarVerifyConfig {
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    #[serde(default = "default_haar_samples")]
    pub samples: usize,
    #[serde(default = "default_quadruples")]
    pub quadruples: usize,
}

fn default_dims() -> Vec<usize> {
    vec![2]
}
fn default_haar_samples() -> usize {
    100_000
}
fn default_quadruples() -> usize {
    10
}

impl Default for HaarVerifyConfig {
    fn default() -> Self {
        HaarVerifyConfig { dims: default_dims(), samples: default_haar_samples(), quadruples: default_quadruples() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessProbConfig {
    #[serde(default = "default_max_n")]
    pub max_n: usize,
    /// Sampled pairs per `(variant, n)`; zero skips sampling.
    #[serde(default)]
    pub pairs: u64,
    #[serde(default = "default_sample_max_n")]
    pub sample_max_n: usize,
}

fn default_max_n() -> usize {
    6
}
fn default_sample_max_n() -> usize {
    3
}

impl Default for SuccessProbConfig {
    fn default() -> Self {
        SuccessProbConfig { max_n: default_max_n(), pairs: 0, sample_max_n: default_sample_max_n() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiEntry {
    pub row: String,
    pub col: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwirlCheck {
    pub row: String,
    pub col: String,
    /// χ entry recovered from exact MUB-twirl survival data.
    pub extracted: [f64; 2],
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactChiResult {
    pub n: usize,
    pub classification: Classification,
    pub trace: f64,
    /// Entries with `|χ| > 1e-12`, row-major.
    pub entries: Vec<ChiEntry>,
    pub twirl_check: Option<Vec<TwirlCheck>>,
}

/// One estimate next to its oracle value where the channel admits one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub label: String,
    pub estimate: f64,
    pub stderr: f64,
    pub oracle: Option<f64>,
    /// `|estimate − oracle| ≤ 3·stderr` (plus a rounding floor).
    pub pass: Option<bool>,
}

impl OracleRow {
    fn new(label: String, estimate: f64, stderr: f64, oracle: Option<f64>) -> Self {
        let pass = oracle.map(|o| (estimate - o).abs() <= 3.0 * stderr + 1e-12);
        OracleRow { label, estimate, stderr, oracle, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectiveRunResult {
    pub estimates: Vec<SelectiveEstimate>,
    pub rows: Vec<OracleRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlindRunResult {
    pub result: SeqptResult,
    pub rows: Vec<OracleRow>,
    /// Detected labels whose oracle value is zero.
    pub false_positives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalTwirlRunResult {
    pub estimate: LocalTwirlEstimate,
    pub oracle_p_w: Option<Vec<f64>>,
    pub oracle_chi_col: Option<BTreeMap<Bits, f64>>,
    pub chi_col_rows: Vec<OracleRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsCheckResult {
    pub classification: Classification,
    pub tolerance: f64,
    pub min_chi_eigenvalue: f64,
    pub cp_violations: Vec<BoundViolation>,
    pub positive_violations: Vec<BoundViolation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarRow {
    pub dim: usize,
    pub quadruple: usize,
    pub estimate: HaarMomentEstimate,
    pub z_score: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarVerifyResult {
    pub rows: Vec<HaarRow>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessRow {
    pub n: usize,
    pub mub_closed_form: f64,
    pub clifford_closed_form: f64,
    /// Exact probability that two uniform stabilizer states are usable together.
    pub clifford_exact: f64,
    pub mub_sampled: Option<PairSuccessEstimate>,
    pub clifford_sampled: Option<PairSuccessEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessProbResult {
    pub rows: Vec<SuccessRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "protocol", rename_all = "snake_case")]
pub enum RunResult {
    ExactChi(ExactChiResult),
    SeqptSelective(SelectiveRunResult),
    SeqptBlind(BlindRunResult),
    LocalTwirl(LocalTwirlRunResult),
    BoundsCheck(BoundsCheckResult),
    HaarVerify(HaarVerifyResult),
    SuccessProb(SuccessProbResult),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool_version: String,
    pub seed: u64,
    pub channel: Option<String>,
    pub n: Option<usize>,
    pub warnings: Vec<String>,
    pub result: RunResult,
}

impl ResultDocument {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}

/// Exact diagonal χ values, from Pauli terms when sparse or dense χ when small.
enum Oracle<'a> {
    Terms(BTreeMap<PauliOperator, f64>),
    Chi(&'a ChiMatrix),
}

impl Oracle<'_> {
    fn of(channel: &ChannelModel) -> Option<Oracle<'_>> {
        if let Some(Ok(terms)) = channel.pauli_terms() {
            let mut map = BTreeMap::new();
            for (p, v) in terms {
                *map.entry(p.unsigned()).or_insert(0.0) += v;
            }
            return Some(Oracle::Terms(map));
        }
        if channel.n() <= DENSE_QUBIT_CAP {
            return channel.chi().ok().map(Oracle::Chi);
        }
        None
    }

    fn diag(&self, p: &PauliOperator) -> f64 {
        match self {
            Oracle::Terms(map) => map.get(&p.unsigned()).copied().unwrap_or(0.0),
            Oracle::Chi(chi) => PauliLabel::from_operator(p).map_or(0.0, |l| chi.diag(l.index() as usize)),
        }
    }
}

fn parse_config<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    let v = if v.is_null() { Value::Object(Default::default()) } else { v.clone() };
    serde_json::from_value(v).map_err(|e| Error::validation("config", e.to_string()))
}

/// Config blob with the manifest seed written into it.
fn seeded_config(config: &Value, seed: u64) -> Value {
    let mut v = if config.is_null() { Value::Object(Default::default()) } else { config.clone() };
    if let Value::Object(map) = &mut v {
        map.insert("seed".into(), Value::from(seed));
    }
    v
}

pub fn run_exact_chi(channel: &ChannelModel) -> Result<ExactChiResult> {
    let n = channel.n();
    let chi = channel.chi()?;
    let name = |l: usize| PauliLabel::new(n, l as u64).expect("in range").to_operator().to_string();
    let mut entries = Vec::new();
    for r in 0..chi.labels() {
        for col in 0..chi.labels() {
            let v = chi.get(r, col);
            if v.norm() > ZERO_TOL {
                entries.push(ChiEntry { row: name(r), col: name(col), re: v.re, im: v.im });
            }
        }
    }
    let classification = channel.classify();
    let twirl_check = if n <= EXACT_TWIRL_QUBIT_CAP && classification.trace_preserving {
        let checks = entries
            .iter()
            .map(|e| {
                let l = PauliLabel::from_operator(&e.row.parse()?)?;
                let lp = PauliLabel::from_operator(&e.col.parse()?)?;
                let x = exact_chi_extraction(channel, &l, &lp)?;
                Ok(TwirlCheck {
                    row: e.row.clone(),
                    col: e.col.clone(),
                    extracted: [x.re, x.im],
                    deviation: (x - c(e.re, e.im)).norm(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some(checks)
    } else {
        None
    };
    Ok(ExactChiResult { n, classification, trace: chi.trace(), entries, twirl_check })
}

pub fn run_selective(channel: &ChannelModel, config: &SelectiveRunConfig) -> Result<SelectiveRunResult> {
    config.seqpt.validate()?;
    if config.labels.is_empty() {
        return Err(Error::validation("labels", "need at least one label"));
    }
    let oracle = Oracle::of(channel);
    let mut estimates = Vec::new();
    let mut rows = Vec::new();
    for (i, s) in config.labels.iter().enumerate() {
        let p: PauliOperator =
            s.parse().map_err(|e: Error| Error::validation(format!("labels[{i}]"), e.to_string()))?;
        let est = estimate_chi_selective(channel, &p, &config.seqpt)?;
        rows.push(OracleRow::new(est.label.clone(), est.chi, est.stderr, oracle.as_ref().map(|o| o.diag(&p))));
        estimates.push(est);
    }
    Ok(SelectiveRunResult { estimates, rows })
}

pub fn run_blind(channel: &ChannelModel, config: &SeqptConfig) -> Result<BlindRunResult> {
    config.validate()?;
    let result = run_blind_discovery(channel, config)?;
    let oracle = Oracle::of(channel);
    let mut rows = Vec::new();
    let mut false_positives = Vec::new();
    for e in &result.estimates {
        let value = match &oracle {
            Some(o) => Some(o.diag(&e.label.parse()?)),
            None => None,
        };
        if e.status == DetectionStatus::Detected && value.is_some_and(|v| v.abs() < ZERO_TOL) {
            false_positives.push(e.label.clone());
        }
        rows.push(OracleRow::new(e.label.clone(), e.chi, e.stderr, value));
    }
    Ok(BlindRunResult { result, rows, false_positives })
}

pub fn run_local_twirl(channel: &ChannelModel, config: &LocalTwirlConfig) -> Result<LocalTwirlRunResult> {
    config.validate(channel.n())?;
    let estimate = estimate_local_twirl(channel, config)?;
    let coarse = channel.coarse_grain(estimate.cutoff).ok();
    let oracle_p_w = coarse.as_ref().map(|cg| cg.p_w[..=estimate.cutoff].to_vec());
    let oracle_chi_col = coarse.map(|cg| cg.chi_col);
    let mut chi_col_rows = Vec::new();
    if let Some(sol) = &estimate.chi_col {
        for (support, entry) in &sol.chi_col {
            let oracle = oracle_chi_col.as_ref().map(|m| m.get(support).copied().unwrap_or(0.0));
            chi_col_rows.push(OracleRow::new(support.to_string(), entry.value, entry.stderr.unwrap_or(0.0), oracle));
        }
    }
    Ok(LocalTwirlRunResult { estimate, oracle_p_w, oracle_chi_col, chi_col_rows })
}

pub fn run_bounds_check(channel: &ChannelModel, config: &BoundsCheckConfig) -> Result<BoundsCheckResult> {
    let chi = channel.chi()?;
    let eig = diagonalize_chi(chi)?;
    Ok(BoundsCheckResult {
        classification: channel.classify(),
        tolerance: config.tolerance,
        min_chi_eigenvalue: eig.eigenvalues.last().copied().unwrap_or(0.0),
        cp_violations: check_cp_bound_with_tol(chi, config.tolerance),
        positive_violations: check_positive_bound_with_tol(chi, config.tolerance),
    })
}

fn ginibre<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

pub fn run_haar_verify(config: &HaarVerifyConfig, seed: u64) -> Result<HaarVerifyResult> {
    if config.dims.is_empty() || config.quadruples == 0 {
        return Err(Error::validation("dims", "need at least one dimension and one quadruple"));
    }
    let mut rows = Vec::new();
    for &d in &config.dims {
        if d < 2 || d > dense::dim(DENSE_QUBIT_CAP) {
            return Err(Error::validation(
                "dims",
                format!("dimension {d} outside 2..={}", dense::dim(DENSE_QUBIT_CAP)),
            ));
        }
        for q in 0..config.quadruples {
            let index = ((d as u64) << 32) | q as u64;
            let mut ops_rng = substream(seed, domain::GENERIC, index);
            let ops: Vec<CMatrix> = (0..4).map(|_| ginibre(d, &mut ops_rng)).collect();
            let mut rng = substream(seed, domain::HAAR, index);
            let estimate = haar_twirl_moment(&ops[0], &ops[1], &ops[2], &ops[3], config.samples, &mut rng)?;
            let z_score = estimate.z_score();
            rows.push(HaarRow { dim: d, quadruple: q, estimate, z_score, pass: z_score <= 3.0 });
        }
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(HaarVerifyResult { rows, all_pass })
}

pub fn run_success_prob(config: &SuccessProbConfig, seed: u64) -> Result<SuccessProbResult> {
    if config.max_n == 0 {
        return Err(Error::validation("max_n", "need at least one qubit"));
    }
    let rows = (1..=config.max_n)
        .map(|n| {
            let sampled = |v: Variant| -> Result<Option<PairSuccessEstimate>> {
                if config.pairs > 0 && n <= config.sample_max_n {
                    Ok(Some(sample_pair_success(v, n, config.pairs, seed)?))
                } else {
                    Ok(None)
                }
            };
            Ok(SuccessRow {
                n,
                mub_closed_form: success_probability(Variant::Mub, n),
                clifford_closed_form: success_probability(Variant::Clifford, n),
                clifford_exact: exact_pair_success(Variant::Clifford, n),
                mub_sampled: sampled(Variant::Mub)?,
                clifford_sampled: sampled(Variant::Clifford)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuccessProbResult { rows })
}

/// Dispatches a manifest; `base` resolves a relative spec path.
pub fn execute(manifest: &RunManifest, base: &Path) -> Result<ResultDocument> {
    let loaded = if manifest.protocol.needs_spec() {
        let spec = manifest.spec.as_ref().ok_or_else(|| Error::validation("spec", "protocol needs a channel spec"))?;
        let path = if spec.is_relative() { base.join(spec) } else { spec.clone() };
        Some(load_channel(&path)?)
    } else {
        None
    };
    let config = seeded_config(&manifest.config, manifest.seed);
    let seed = manifest.seed;
    let result = match (manifest.protocol, loaded.as_ref().map(|l| &l.channel)) {
        (Protocol::ExactChi, Some(ch)) => RunResult::ExactChi(run_exact_chi(ch)?),
        (Protocol::SeqptSelective, Some(ch)) => RunResult::SeqptSelective(run_selective(ch, &parse_config(&config)?)?),
        (Protocol::SeqptBlind, Some(ch)) => RunResult::SeqptBlind(run_blind(ch, &parse_config(&config)?)?),
        (Protocol::LocalTwirl, Some(ch)) => RunResult::LocalTwirl(run_local_twirl(ch, &parse_config(&config)?)?),
        (Protocol::BoundsCheck, Some(ch)) => {
            RunResult::BoundsCheck(run_bounds_check(ch, &parse_config(&manifest.config)?)?)
        }
        (Protocol::HaarVerify, _) => RunResult::HaarVerify(run_haar_verify(&parse_config(&manifest.config)?, seed)?),
        (Protocol::SuccessProb, _) => RunResult::SuccessProb(run_success_prob(&parse_config(&manifest.config)?, seed)?),
        (_, None) => unreachable!("spec loaded for every protocol that needs one"),
    };
    Ok(ResultDocument {
        tool_version: manifest.tool_version.clone(),
        seed,
        channel: loaded.as_ref().map(|l| l.name.clone()),
        n: loaded.as_ref().map(|l| l.channel.n()),
        warnings: loaded.map(|l| l.warnings).unwrap_or_default(),
        result,
    })
}

/// Paths written by [`run`].
#[derive(Debug, Clone)]
pub struct RunOutputs {
    pub result: PathBuf,
    pub table: PathBuf,
    pub manifest: PathBuf,
}

/// Executes `manifest` and writes its outputs into `out`.
pub fn run(manifest: &RunManifest, base: &Path, out: &Path) -> Result<(ResultDocument, RunOutputs)> {
    let doc = execute(manifest, base)?;
    fs::create_dir_all(out)?;
    let outputs = RunOutputs {
        result: out.join("result.json"),
        table: out.join("table.txt"),
        manifest: out.join("manifest.json"),
    };
    fs::write(&outputs.result, doc.to_json()?)?;
    fs::write(&outputs.table, report::render_table(&doc))?;
    fs::write(&outputs.manifest, serde_json::to_string_pretty(manifest)? + "\n")?;
    Ok((doc, outputs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn write_spec(dir: &Path, text: &str) -> PathBuf {
        let p = dir.join("spec.json");
        fs::write(&p, text).unwrap();
        p
    }

    const CNOT: &str = r#"{"name":"cnot","n":2,"build":[{"named_gate":"CNOT","qubits":[1,2]}]}"#;

    #[test]
    fn exact_chi_cnot_block() {
        let dir = tempfile::tempdir().unwrap();
        let spec = write_spec(dir.path(), CNOT);
        let m = RunManifest::new(Protocol::ExactChi, Some(spec), Value::Null, 0);
        let doc = execute(&m, dir.path()).unwrap();
        let RunResult::ExactChi(r) = doc.result else { panic!() };
        assert_eq!(r.entries.len(), 16);
        for e in &r.entries {
            assert!(["II", "ZI", "IX", "ZX"].contains(&e.row.as_str()));
            let sign = if (e.row == "ZX") ^ (e.col == "ZX") { -1.0 } else { 1.0 };
            assert!((e.re - 0.25 * sign).abs() < 1e-12 && e.im.abs() < 1e-12);
        }
        assert!(r.twirl_check.unwrap().iter().all(|t| t.deviation < 1e-10));
    }

    #[test]
    fn blind_run_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let spec = write_spec(dir.path(), CNOT);
        let m = RunManifest::new(Protocol::SeqptBlind, Some(spec), json!({"shots": 2000}), 7);
        let (_, a) = run(&m, dir.path(), &dir.path().join("a")).unwrap();
        let (_, b) = run(&m, dir.path(), &dir.path().join("b")).unwrap();
        assert_eq!(fs::read(a.result).unwrap(), fs::read(b.result).unwrap());
        assert_eq!(fs::read(a.table).unwrap(), fs::read(b.table).unwrap());
    }

    #[test]
    fn result_roundtrips() {
        let m = RunManifest::new(Protocol::SuccessProb, None, json!({"pairs": 500}), 3);
        let doc = execute(&m, Path::new(".")).unwrap();
        let back: ResultDocument = serde_json::from_str(&doc.to_json().unwrap()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn config_errors_are_validation() {
        let dir = tempfile::tempdir().unwrap();
        let spec = write_spec(dir.path(), CNOT);
        let m = RunManifest::new(Protocol::SeqptBlind, Some(spec.clone()), json!({"shots": "many"}), 1);
        assert!(matches!(execute(&m, dir.path()), Err(Error::Validation { .. })));
        let m = RunManifest::new(Protocol::SeqptBlind, None, json!({"shots": 10}), 1);
        assert!(matches!(execute(&m, dir.path()), Err(Error::Validation { .. })));
    }

    #[test]
    fn bounds_check_on_transpose_like_spec_is_clean_for_cp() {
        let dir = tempfile::tempdir().unwrap();
        let spec =
            write_spec(dir.path(), r#"{"n":1,"build":[{"noise":"amplitude_damping","strength":0.4,"qubits":[1]}]}"#);
        let m = RunManifest::new(Protocol::BoundsCheck, Some(spec), Value::Null, 0);
        let RunResult::BoundsCheck(r) = execute(&m, dir.path()).unwrap().result else { panic!() };
        assert!(r.cp_violations.is_empty() && r.positive_violations.is_empty());
        assert!(r.min_chi_eigenvalue > -1e-12);
    }
}
