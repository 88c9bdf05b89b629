//! Selective and blind estimation of diagonal χ entries from twirl survival.
//!
//! An experiment prepares a random stabilizer state `C|0…0⟩` (a MUB state or a
//! uniformly random Clifford image), applies the channel, undoes `C` and
//! measures. With an intermediary `P_l` after the channel the survival rate is
//! `(Dχ_{l,l} + 1)/(D + 1)`. Without it, every outcome narrows the Pauli that
//! "happened" to a coset of `D` candidates, and two experiments whose
//! stabilizer groups only share the identity pin down a single Pauli.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::channel::ChannelModel;
use crate::error::{check_qubits, Error, Result};
use crate::pauli::{PauliLabel, PauliOperator};
use crate::rng::{domain, substream};
use crate::sim::{mub_preparation, select_backend, BackendKind, ExperimentRecord, TwirlDescriptor};
use crate::stabilizer::{
    candidate_paulis, frames_independent, intersect_cosets, sample_clifford_uniform, CliffordElement, CosetKey,
    MubFamily, StabilizerFrame,
};

/// Above this many experiments the pair analysis switches to random pair sampling.
pub const DEFAULT_ALL_PAIRS_LIMIT: u64 = 20_000;
pub const DEFAULT_SAMPLED_PAIRS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Mub,
    Clifford,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mub" => Ok(Variant::Mub),
            "clifford" => Ok(Variant::Clifford),
            other => Err(Error::validation("variant", format!("expected mub or clifford, got {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Mub => "mub",
            Variant::Clifford => "clifford",
        })
    }
}

fn default_all_pairs_limit() -> u64 {
    DEFAULT_ALL_PAIRS_LIMIT
}

fn default_sampled_pairs() -> u64 {
    DEFAULT_SAMPLED_PAIRS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeqptConfig {
    /// Number of realizations `M`.
    pub shots: u64,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub backend: BackendKind,
    #[serde(default = "default_all_pairs_limit")]
    pub all_pairs_limit: u64,
    #[serde(default = "default_sampled_pairs")]
    pub sampled_pairs: u64,
}

impl SeqptConfig {
    pub fn new(shots: u64, variant: Variant, seed: u64) -> Self {
        SeqptConfig {
            shots,
            epsilon: None,
            delta: None,
            variant,
            seed,
            backend: BackendKind::Auto,
            all_pairs_limit: DEFAULT_ALL_PAIRS_LIMIT,
            sampled_pairs: DEFAULT_SAMPLED_PAIRS,
        }
    }

    /// Smallest `M` meeting `M ≥ ε⁻²` and, with `δ`, the Chernoff bound `M ≥ ln(2/δ)/(2ε²)`.
    pub fn required_shots(epsilon: f64, delta: Option<f64>) -> u64 {
        let clt = epsilon.powi(-2);
        let chernoff = delta.map_or(0.0, |d| (2.0 / d).ln() / (2.0 * epsilon * epsilon));
        // absorb rounding so exact powers like ε = 0.01 give 10⁴
        (clt.max(chernoff) * (1.0 - 1e-12)).ceil() as u64
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::validation("shots", "need at least one realization"));
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::validation("delta", format!("{d} is not in (0, 1)")));
            }
            if self.epsilon.is_none() {
                return Err(Error::validation("delta", "delta needs epsilon"));
            }
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e < 1.0) {
                return Err(Error::validation("epsilon", format!("{e} is not in (0, 1)")));
            }
            let need = Self::required_shots(e, self.delta);
            if self.shots < need {
                return Err(Error::validation(
                    "shots",
                    format!(
                        "M = {} is below the {need} realizations required for ε = {e}, δ = {:?}",
                        self.shots, self.delta
                    ),
                ));
            }
        }
        Ok(())
    }
}

/// One realization with the data the pair analysis needs.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub record: ExperimentRecord,
    /// Clifford taking `|0…0⟩` to the prepared state.
    pub preparation: CliffordElement,
    /// Outcome of measuring after `preparation†`; all zeros means survival.
    pub relative_outcome: Bits,
}

impl Experiment {
    /// Prepared-state frame and the signs of the measured state in the same generators.
    pub fn frames(&self) -> (StabilizerFrame, Bits) {
        let frame = StabilizerFrame::of_clifford(&self.preparation);
        let s_out = frame.measured_signs(&self.relative_outcome);
        (frame, s_out)
    }

    pub fn coset_key(&self) -> CosetKey {
        let (frame, s_out) = self.frames();
        candidate_paulis(&frame, &s_out).expect("signs match the frame").canonical_key()
    }
}

/// Draws one twirl element for realization `index`.
fn draw_preparation(
    n: usize,
    variant: Variant,
    family: Option<&MubFamily>,
    rng: &mut impl Rng,
) -> Result<(TwirlDescriptor, CliffordElement, Option<Bits>)> {
    match variant {
        Variant::Mub => {
            let family = family.expect("MUB family built for the MUB variant");
            let j = rng.random_range(0..family.len());
            let m = Bits::from_bools(&(0..n).map(|_| rng.random_bool(0.5)).collect::<Vec<_>>());
            let c = mub_preparation(family, j, &m)?;
            Ok((TwirlDescriptor::Mub { j, m: m.clone() }, c, Some(m)))
        }
        Variant::Clifford => {
            let c = sample_clifford_uniform(n, rng);
            Ok((TwirlDescriptor::Clifford { circuit: c.gate_records() }, c, None))
        }
    }
}

/// Runs `config.shots` realizations, each on its own substream.
pub fn run_experiments(
    channel: &ChannelModel,
    config: &SeqptConfig,
    intermediary: Option<&PauliOperator>,
) -> Result<Vec<Experiment>> {
    config.validate()?;
    let n = channel.n();
    if let Some(p) = intermediary {
        check_qubits(n, p.n())?;
    }
    let backend = select_backend(config.backend, channel)?;
    let family = match config.variant {
        Variant::Mub => Some(MubFamily::new(n)?),
        Variant::Clifford => None,
    };
    // warm the memoized operator sum before the parallel section
    if backend.name() == "dense" {
        channel.operator_sum()?;
        channel.classify();
    }
    (0..config.shots)
        .into_par_iter()
        .map(|index| {
            let mut rng = substream(config.seed, domain::SEQPT_EXPERIMENT, index);
            let (twirl, preparation, m) = draw_preparation(n, config.variant, family.as_ref(), &mut rng)?;
            let relative_outcome = backend.run_shot(channel, &preparation, intermediary, &mut rng)?;
            // MUB records carry the outcome of measuring in basis J itself
            let outcome = m.map_or_else(|| relative_outcome.clone(), |m| relative_outcome.xor(&m));
            Ok(Experiment { record: ExperimentRecord { index, twirl, outcome }, preparation, relative_outcome })
        })
        .collect()
}

/// `χ̂ = ((D+1)s − 1)/D` and its binomial standard error for survival rate `s`.
fn chi_from_survival(n: usize, survivals: u64, shots: u64) -> (f64, f64) {
    let d = (n as f64).exp2();
    let s = survivals as f64 / shots as f64;
    let chi = ((d + 1.0) * s - 1.0) / d;
    let stderr = (d + 1.0) / d * (s * (1.0 - s) / shots as f64).sqrt();
    (chi, stderr)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectiveEstimate {
    pub label: String,
    pub shots: u64,
    pub survivals: u64,
    pub survival_rate: f64,
    pub survival_stderr: f64,
    pub chi: f64,
    pub stderr: f64,
}

/// Estimates `χ_{l,l}` from the survival rate with intermediary `P_l`.
pub fn estimate_chi_selective(
    channel: &ChannelModel,
    l: &PauliOperator,
    config: &SeqptConfig,
) -> Result<SelectiveEstimate> {
    check_qubits(channel.n(), l.n())?;
    let p = l.unsigned();
    let experiments = run_experiments(channel, config, Some(&p))?;
    let survivals = experiments.iter().filter(|e| e.relative_outcome.is_zero()).count() as u64;
    let m = config.shots as f64;
    let s = survivals as f64 / m;
    let (chi, stderr) = chi_from_survival(channel.n(), survivals, config.shots);
    Ok(SelectiveEstimate {
        label: p.to_string(),
        shots: config.shots,
        survivals,
        survival_rate: s,
        survival_stderr: (s * (1.0 - s) / m).sqrt(),
        chi,
        stderr,
    })
}

/// Convenience wrapper taking a label index.
pub fn estimate_chi_selective_label(
    channel: &ChannelModel,
    l: &PauliLabel,
    config: &SeqptConfig,
) -> Result<SelectiveEstimate> {
    estimate_chi_selective(channel, &l.to_operator(), config)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityEstimate {
    pub shots: u64,
    pub fidelity: f64,
    pub stderr: f64,
    /// `χ̂_{0,0}` implied by `F = (Dχ₀₀ + 1)/(D + 1)`.
    pub chi_00: f64,
}

/// Average fidelity from the survival rate without an intermediary.
pub fn average_fidelity(channel: &ChannelModel, config: &SeqptConfig) -> Result<FidelityEstimate> {
    let est = estimate_chi_selective(channel, &PauliOperator::identity(channel.n()), config)?;
    Ok(FidelityEstimate { shots: est.shots, fidelity: est.survival_rate, stderr: est.survival_stderr, chi_00: est.chi })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionStatus {
    /// `χ̂ − 3σ` clears the `2/M` threshold.
    Detected,
    /// `χ̂ ≥ 2/M` but within three standard errors of it.
    Borderline,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelEstimate {
    pub label: String,
    pub chi: f64,
    pub stderr: f64,
    /// Experiments whose candidate coset contains the label.
    pub m_plus: u64,
    /// Usable pairs whose unique intermediary was the label.
    pub pair_support: u64,
    pub status: DetectionStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeqptResult {
    pub n: usize,
    pub variant: Variant,
    pub shots: u64,
    pub seed: u64,
    pub threshold: f64,
    /// Labels with `χ̂ ≥ 2/M`, sorted by `χ̂` descending then label.
    pub estimates: Vec<LabelEstimate>,
    /// Labels implied by at least two pairs but estimated below threshold.
    pub below_threshold: u64,
    /// Labels implied by a single pair, treated as noise.
    pub singletons: u64,
    /// `1 − Σ χ̂` over detected labels.
    pub residual_mass: f64,
    pub total_pairs: u64,
    pub pairs_analyzed: u64,
    pub usable_pairs: u64,
    pub usable_pair_fraction: f64,
    pub usable_pair_stderr: f64,
    pub pairs_subsampled: bool,
    pub success_probability: f64,
}

impl SeqptResult {
    pub fn detected(&self) -> impl Iterator<Item = &LabelEstimate> {
        self.estimates.iter().filter(|e| e.status == DetectionStatus::Detected)
    }

    pub fn get(&self, label: &str) -> Option<&LabelEstimate> {
        self.estimates.iter().find(|e| e.label == label)
    }
}

struct PairTally {
    found: BTreeMap<PauliOperator, u64>,
    analyzed: u64,
    usable: u64,
}

fn tally_all_pairs(keys: &[(CosetKey, u64)]) -> PairTally {
    // distinct keys pair with weight c_a·c_b; equal keys share a group and never pair usefully
    let rows: Vec<(Vec<(PauliOperator, u64)>, u64)> = (0..keys.len())
        .into_par_iter()
        .map(|a| {
            let mut hits = Vec::new();
            let mut usable = 0;
            for b in a + 1..keys.len() {
                if let Some(p) = intersect_cosets(&keys[a].0, &keys[b].0) {
                    let w = keys[a].1 * keys[b].1;
                    usable += w;
                    hits.push((p.unsigned(), w));
                }
            }
            (hits, usable)
        })
        .collect();
    let mut found = BTreeMap::new();
    let mut usable = 0;
    for (hits, u) in rows {
        usable += u;
        for (p, w) in hits {
            *found.entry(p).or_insert(0) += w;
        }
    }
    let m: u64 = keys.iter().map(|(_, c)| c).sum();
    PairTally { found, analyzed: m * m.saturating_sub(1) / 2, usable }
}

fn tally_sampled_pairs(keys: &[CosetKey], pairs: u64, seed: u64) -> PairTally {
    let m = keys.len() as u64;
    let chunk = 4096u64;
    let chunks = pairs.div_ceil(chunk);
    let rows: Vec<Vec<Option<PauliOperator>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, domain::SEQPT_PAIRS, c);
            let count = chunk.min(pairs - c * chunk);
            (0..count)
                .map(|_| {
                    let a = rng.random_range(0..m);
                    let mut b = rng.random_range(0..m - 1);
                    if b >= a {
                        b += 1;
                    }
                    intersect_cosets(&keys[a as usize], &keys[b as usize]).map(|p| p.unsigned())
                })
                .collect()
        })
        .collect();
    let mut found = BTreeMap::new();
    let mut usable = 0;
    for p in rows.into_iter().flatten().flatten() {
        usable += 1;
        *found.entry(p).or_insert(0) += 1;
    }
    PairTally { found, analyzed: pairs, usable }
}

/// Blind discovery of every diagonal coefficient above `2/M`.
pub fn run_blind_discovery(channel: &ChannelModel, config: &SeqptConfig) -> Result<SeqptResult> {
    if config.shots < 2 {
        return Err(Error::validation("shots", "blind discovery needs at least two realizations"));
    }
    let experiments = run_experiments(channel, config, None)?;
    blind_discovery_from(channel.n(), config, &experiments)
}

/// Pair analysis over already-run experiments.
pub fn blind_discovery_from(n: usize, config: &SeqptConfig, experiments: &[Experiment]) -> Result<SeqptResult> {
    let m = experiments.len() as u64;
    if m < 2 {
        return Err(Error::validation("shots", "blind discovery needs at least two realizations"));
    }
    let keys: Vec<CosetKey> = experiments.par_iter().map(Experiment::coset_key).collect();
    let mut grouped: BTreeMap<CosetKey, u64> = BTreeMap::new();
    for k in &keys {
        *grouped.entry(k.clone()).or_insert(0) += 1;
    }
    let subsample = m > config.all_pairs_limit;
    let tally = if subsample {
        tally_sampled_pairs(&keys, config.sampled_pairs.max(1), config.seed)
    } else {
        tally_all_pairs(&grouped.iter().map(|(k, c)| (k.clone(), *c)).collect::<Vec<_>>())
    };

    let threshold = 2.0 / m as f64;
    let mut estimates = Vec::new();
    let mut below = 0;
    let mut singletons = 0;
    for (p, &support) in &tally.found {
        if support < 2 {
            singletons += 1;
            continue;
        }
        let m_plus: u64 = grouped.iter().filter(|(k, _)| k.contains(p)).map(|(_, c)| c).sum();
        let (chi, stderr) = chi_from_survival(n, m_plus, m);
        if chi < threshold {
            below += 1;
            continue;
        }
        let status =
            if chi - 3.0 * stderr >= threshold { DetectionStatus::Detected } else { DetectionStatus::Borderline };
        estimates.push(LabelEstimate { label: p.to_string(), chi, stderr, m_plus, pair_support: support, status });
    }
    estimates.sort_by(|a, b| b.chi.total_cmp(&a.chi).then_with(|| a.label.cmp(&b.label)));
    let detected_mass: f64 = estimates.iter().filter(|e| e.status == DetectionStatus::Detected).map(|e| e.chi).sum();
    let frac = tally.usable as f64 / tally.analyzed.max(1) as f64;
    Ok(SeqptResult {
        n,
        variant: config.variant,
        shots: m,
        seed: config.seed,
        threshold,
        estimates,
        below_threshold: below,
        singletons,
        residual_mass: 1.0 - detected_mass,
        total_pairs: m * (m - 1) / 2,
        pairs_analyzed: tally.analyzed,
        usable_pairs: tally.usable,
        usable_pair_fraction: frac,
        // the conditional mean of a pair's usability given one member is constant,
        // so the pair-average has plain binomial variance over the analyzed pairs
        usable_pair_stderr: (frac * (1.0 - frac) / tally.analyzed.max(1) as f64).sqrt(),
        pairs_subsampled: subsample,
        success_probability: success_probability(config.variant, n),
    })
}

/// Closed-form chance that a random pair of experiments is usable:
/// `D/(D+1)` for MUBs and `∏_j (D²/2ʲ − 2ʲ − D/2ʲ)/(D²/2ʲ − 2ʲ)` for Cliffords.
pub fn success_probability(variant: Variant, n: usize) -> f64 {
    let d = (n as f64).exp2();
    match variant {
        Variant::Mub => d / (d + 1.0),
        Variant::Clifford => (0..n)
            .map(|j| {
                let t = (j as f64).exp2();
                let full = d * d / t - t;
                (full - d / t) / full
            })
            .product(),
    }
}

/// Exact chance that two independent uniformly random preparations have
/// stabilizer groups meeting only in the identity.
///
/// For Cliffords this counts Lagrangian subspaces transverse to a fixed one,
/// `2^{n(n+1)/2}` out of `∏_{j=1}^{n} (2ʲ + 1)`.
pub fn exact_pair_success(variant: Variant, n: usize) -> f64 {
    match variant {
        Variant::Mub => success_probability(Variant::Mub, n),
        Variant::Clifford => (1..=n).map(|j| (j as f64).exp2() / ((j as f64).exp2() + 1.0)).product(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSuccessEstimate {
    pub variant: Variant,
    pub n: usize,
    pub pairs: u64,
    pub usable: u64,
    pub fraction: f64,
    pub stderr: f64,
    pub closed_form: f64,
    pub exact: f64,
}

impl PairSuccessEstimate {
    /// `|fraction − target|` in binomial standard errors at the target.
    pub fn z_score(&self, target: f64) -> f64 {
        let se = (target * (1.0 - target) / self.pairs as f64).sqrt();
        (self.fraction - target).abs() / se
    }
}

/// Fraction of usable pairs over `pairs` independent pairs of preparations.
pub fn sample_pair_success(variant: Variant, n: usize, pairs: u64, seed: u64) -> Result<PairSuccessEstimate> {
    if pairs == 0 {
        return Err(Error::validation("pairs", "need at least one pair"));
    }
    let family = match variant {
        Variant::Mub => Some(MubFamily::new(n)?),
        Variant::Clifford => None,
    };
    let usable = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, domain::CLIFFORD_PAIRS, i);
            let (_, a, _) = draw_preparation(n, variant, family.as_ref(), &mut rng)?;
            let (_, b, _) = draw_preparation(n, variant, family.as_ref(), &mut rng)?;
            Ok(frames_independent(&a, &b)? as u64)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum::<u64>();
    let fraction = usable as f64 / pairs as f64;
    Ok(PairSuccessEstimate {
        variant,
        n,
        pairs,
        usable,
        fraction,
        stderr: (fraction * (1.0 - fraction) / pairs as f64).sqrt(),
        closed_form: success_probability(variant, n),
        exact: exact_pair_success(variant, n),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantReport {
    pub result: SeqptResult,
    pub closed_form: f64,
    pub exact: f64,
    /// Usable-pair fraction within three standard errors of the closed form.
    pub closed_form_within_3sigma: bool,
    pub exact_within_3sigma: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantComparison {
    pub n: usize,
    pub shots: u64,
    pub mub: VariantReport,
    pub clifford: VariantReport,
}

/// Runs blind discovery with both variants at equal `M`.
pub fn compare_variants(channel: &ChannelModel, config: &SeqptConfig) -> Result<VariantComparison> {
    let n = channel.n();
    let report = |variant: Variant| -> Result<VariantReport> {
        let cfg = SeqptConfig { variant, ..config.clone() };
        let result = run_blind_discovery(channel, &cfg)?;
        let closed_form = success_probability(variant, n);
        let exact = exact_pair_success(variant, n);
        let within = |target: f64| {
            let se = (target * (1.0 - target) / result.pairs_analyzed as f64).sqrt();
            (result.usable_pair_fraction - target).abs() <= 3.0 * se + 1e-12
        };
        Ok(VariantReport {
            closed_form_within_3sigma: within(closed_form),
            exact_within_3sigma: within(exact),
            result,
            closed_form,
            exact,
        })
    };
    Ok(VariantComparison { n, shots: config.shots, mub: report(Variant::Mub)?, clifford: report(Variant::Clifford)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::noise;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn config_validation() {
        let mut c = SeqptConfig::new(10_000, Variant::Mub, 0);
        c.epsilon = Some(0.01);
        assert!(c.validate().is_ok());
        c.delta = Some(0.05);
        // ln(40)/(2·10⁻⁴) ≈ 18444
        assert!(c.validate().is_err());
        c.shots = 18_445;
        assert!(c.validate().is_ok());
        c.shots = 0;
        assert!(c.validate().is_err());
        assert_eq!(SeqptConfig::required_shots(0.1, None), 100);
    }

    #[test]
    fn selective_examples() {
        let id = ChannelModel::identity(1);
        let cfg = SeqptConfig::new(10_000, Variant::Mub, 1);
        let e = estimate_chi_selective(&id, &p("I"), &cfg).unwrap();
        assert_eq!(e.survivals, 10_000);
        assert_eq!(e.chi, 1.0);
        let e = estimate_chi_selective(&id, &p("X"), &cfg).unwrap();
        assert!((e.survival_rate - 1.0 / 3.0).abs() < 3.0 * 0.0048);
        assert!(e.chi.abs() < 3.0 * e.stderr);
        let dep = ChannelModel::from_kraus(noise::depolarizing(0.3)).unwrap();
        for variant in [Variant::Mub, Variant::Clifford] {
            let e = estimate_chi_selective(&dep, &p("I"), &SeqptConfig::new(10_000, variant, 2)).unwrap();
            assert!((e.chi - 0.775).abs() < 3.0 * e.stderr, "{variant}: {e:?}");
        }
    }

    #[test]
    fn fidelity_of_cnot() {
        let cx = ChannelModel::unitary(noise::cnot()).unwrap();
        let f = average_fidelity(&cx, &SeqptConfig::new(10_000, Variant::Mub, 3)).unwrap();
        assert!((f.fidelity - 0.4).abs() < 3.0 * f.stderr);
    }

    #[test]
    fn blind_identity() {
        let id = ChannelModel::identity(2);
        let r = run_blind_discovery(&id, &SeqptConfig::new(100, Variant::Mub, 4)).unwrap();
        assert_eq!(r.estimates.len(), 1);
        assert_eq!(r.estimates[0].label, "II");
        assert_eq!(r.estimates[0].m_plus, 100);
        assert_eq!(r.estimates[0].chi, 1.0);
        assert!(r.residual_mass.abs() < 1e-12);
    }

    #[test]
    fn blind_dephasing_on_first_qubit() {
        let ch = ChannelModel::pauli_channel(2, vec![(p("II"), 0.7), (p("ZI"), 0.3)]).unwrap();
        for variant in [Variant::Mub, Variant::Clifford] {
            let r = run_blind_discovery(&ch, &SeqptConfig::new(10_000, variant, 5)).unwrap();
            let labels: Vec<&str> = r.detected().map(|e| e.label.as_str()).collect();
            assert_eq!(labels, vec!["II", "ZI"], "{variant}");
            assert!((r.get("II").unwrap().chi - 0.7).abs() < 3.0 * r.get("II").unwrap().stderr);
            assert!((r.get("ZI").unwrap().chi - 0.3).abs() < 3.0 * r.get("ZI").unwrap().stderr);
        }
    }

    #[test]
    fn mub_pairs_with_distinct_bases_always_solve() {
        let cx = ChannelModel::unitary(noise::cnot()).unwrap();
        let exps = run_experiments(&cx, &SeqptConfig::new(200, Variant::Mub, 6), None).unwrap();
        for a in exps.iter().take(40) {
            for b in exps.iter().take(40) {
                let (TwirlDescriptor::Mub { j: ja, .. }, TwirlDescriptor::Mub { j: jb, .. }) =
                    (&a.record.twirl, &b.record.twirl)
                else {
                    unreachable!()
                };
                let (fa, sa) = a.frames();
                let (fb, sb) = b.frames();
                let sol = crate::stabilizer::solve_intermediary_pauli(&fa, &sa, &fb, &sb).unwrap();
                assert_eq!(sol.is_some(), ja != jb);
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert!((success_probability(Variant::Mub, 2) - 0.8).abs() < 1e-15);
        assert!((success_probability(Variant::Clifford, 1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((success_probability(Variant::Clifford, 2) - 22.0 / 45.0).abs() < 1e-15);
        assert!((exact_pair_success(Variant::Clifford, 2) - 8.0 / 15.0).abs() < 1e-15);
        for n in 1..=10 {
            assert!(success_probability(Variant::Clifford, n) < success_probability(Variant::Mub, n));
        }
    }

    #[test]
    fn deterministic_replay() {
        let cx = ChannelModel::unitary(noise::cnot()).unwrap();
        let cfg = SeqptConfig::new(2_000, Variant::Clifford, 11);
        let a = serde_json::to_string(&run_blind_discovery(&cx, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_blind_discovery(&cx, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
