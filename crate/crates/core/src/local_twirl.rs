//! One-qubit Clifford twirl tomography.
//!
//! Twirling with a random Pauli then a random `exp(-iπ/4 σ_r)` on every qubit
//! turns each nonidentity factor of an error into a uniform choice of X, Y or Z.
//! Starting from `|0…0⟩`, a weight-`w` error therefore flips a given subset of
//! `h` of its qubits with probability `2^h/3^w`. Inverting that relation gives
//! the weight distribution `p_w` and the support-resolved `χ^col`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::channel::ChannelModel;
use crate::dense;
use crate::error::{check_capacity, check_qubits, Error, Result};
use crate::pauli::{binomial, supports_of_weight, supports_up_to};
use crate::rng::{domain, substream};
use crate::sim::{
    enumerate_twirl_exact, enumerate_twirl_exact_from, select_backend, Backend, BackendKind, ExperimentRecord,
    LocalTwirlElement, TwirlKind, TwirlSpec,
};

/// Largest number of supports `M_co` the support-resolved solve will handle.
pub const CHI_COL_CAPACITY: u64 = 1 << 20;
/// Tail tolerance used to pick a default cutoff from exact distributions.
const EXACT_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalTwirlConfig {
    pub shots: u64,
    /// `w_co`; `None` picks the smallest `w` whose observed tail is below `2/M`.
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Keep full outcome strings so `χ^col` can be resolved per support.
    #[serde(default = "default_true")]
    pub keep_which_qubit: bool,
    #[serde(default)]
    pub backend: BackendKind,
}

fn default_true() -> bool {
    true
}

impl LocalTwirlConfig {
    pub fn new(shots: u64, seed: u64) -> Self {
        LocalTwirlConfig { shots, cutoff: None, seed, keep_which_qubit: true, backend: BackendKind::Auto }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::validation("shots", "need at least one realization"));
        }
        if let Some(w) = self.cutoff {
            if w > n {
                return Err(Error::validation("cutoff", format!("w_co = {w} exceeds n = {n}")));
            }
        }
        Ok(())
    }
}

/// One sampled twirl realization on substream `index`.
pub fn sample_c1t_realization(
    channel: &ChannelModel,
    seed: u64,
    index: u64,
    backend: &dyn Backend,
) -> Result<ExperimentRecord> {
    let mut rng = substream(seed, domain::LOCAL_TWIRL, index);
    let element = LocalTwirlElement::sample(channel.n(), &mut rng);
    let outcome = backend.run_shot(channel, &element.to_clifford(), None, &mut rng)?;
    Ok(ExperimentRecord { index, twirl: element.descriptor(), outcome })
}

pub fn run_c1t(channel: &ChannelModel, config: &LocalTwirlConfig) -> Result<Vec<ExperimentRecord>> {
    config.validate(channel.n())?;
    let backend = select_backend(config.backend, channel)?;
    if backend.name() == "dense" {
        channel.operator_sum()?;
        channel.classify();
    }
    (0..config.shots).into_par_iter().map(|i| sample_c1t_realization(channel, config.seed, i, backend)).collect()
}

/// Outcome counts, sparse in the outcome strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HammingStatistics {
    pub n: usize,
    /// Empty when which-qubit information is not kept.
    pub counts_by_outcome: BTreeMap<Bits, u64>,
    pub counts_by_weight: Vec<u64>,
    pub total: u64,
}

impl HammingStatistics {
    pub fn empty(n: usize) -> Self {
        HammingStatistics { n, counts_by_outcome: BTreeMap::new(), counts_by_weight: vec![0; n + 1], total: 0 }
    }

    pub fn add(&mut self, outcome: &Bits, keep_which_qubit: bool) {
        self.counts_by_weight[outcome.count_ones()] += 1;
        self.total += 1;
        if keep_which_qubit {
            *self.counts_by_outcome.entry(outcome.clone()).or_insert(0) += 1;
        }
    }

    pub fn keeps_which_qubit(&self) -> bool {
        self.total == 0 || !self.counts_by_outcome.is_empty()
    }

    pub fn merge(&mut self, other: &HammingStatistics) -> Result<()> {
        check_qubits(self.n, other.n)?;
        if self.total > 0 && other.total > 0 && self.keeps_which_qubit() != other.keeps_which_qubit() {
            return Err(Error::validation("statistics", "cannot merge which-qubit and weight-only statistics"));
        }
        for (h, c) in other.counts_by_weight.iter().enumerate() {
            self.counts_by_weight[h] += c;
        }
        for (v, c) in &other.counts_by_outcome {
            *self.counts_by_outcome.entry(v.clone()).or_insert(0) += c;
        }
        self.total += other.total;
        Ok(())
    }

    pub fn distribution(&self) -> OutcomeDistribution {
        let m = self.total.max(1) as f64;
        OutcomeDistribution {
            n: self.n,
            by_outcome: self
                .keeps_which_qubit()
                .then(|| self.counts_by_outcome.iter().map(|(v, &c)| (v.clone(), c as f64 / m)).collect()),
            by_weight: self.counts_by_weight.iter().map(|&c| c as f64 / m).collect(),
            shots: Some(self.total),
        }
    }
}

pub fn collect_statistics(n: usize, records: &[ExperimentRecord], keep_which_qubit: bool) -> Result<HammingStatistics> {
    let mut stats = HammingStatistics::empty(n);
    for r in records {
        check_qubits(n, r.outcome.len())?;
        stats.add(&r.outcome, keep_which_qubit);
    }
    Ok(stats)
}

/// `Prob(v̄_h, h)` and `Prob(h)`, sampled (`shots` set) or exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub n: usize,
    pub by_outcome: Option<BTreeMap<Bits, f64>>,
    pub by_weight: Vec<f64>,
    pub shots: Option<u64>,
}

impl OutcomeDistribution {
    /// From a dense vector indexed by computational-basis index.
    pub fn from_dense(n: usize, probs: &[f64]) -> Result<Self> {
        if probs.len() != dense::dim(n) {
            return Err(Error::DimensionMismatch { expected: dense::dim(n), found: probs.len() });
        }
        let mut by_outcome = BTreeMap::new();
        let mut by_weight = vec![0.0; n + 1];
        for (i, &p) in probs.iter().enumerate() {
            let v = Bits::from_index(n, i);
            by_weight[v.count_ones()] += p;
            by_outcome.insert(v, p);
        }
        Ok(OutcomeDistribution { n, by_outcome: Some(by_outcome), by_weight, shots: None })
    }

    pub fn prob(&self, v: &Bits) -> f64 {
        self.by_outcome.as_ref().and_then(|m| m.get(v)).copied().unwrap_or(0.0)
    }

    /// `Σ_{h > w} Prob(h)`.
    pub fn tail(&self, w: usize) -> f64 {
        self.by_weight.iter().skip(w + 1).sum()
    }

    /// Smallest `w` with `tail(w) < 2/M`, or below a round-off tolerance for exact data.
    pub fn default_cutoff(&self) -> usize {
        let tol = self.shots.map_or(EXACT_TAIL_TOL, |m| 2.0 / m as f64);
        (0..=self.n).find(|&w| self.tail(w) < tol).unwrap_or(self.n)
    }
}

/// Exact `12^n`-element enumeration of the twirl outcome distribution.
pub fn exact_distribution(channel: &ChannelModel) -> Result<OutcomeDistribution> {
    let n = channel.n();
    let probs = enumerate_twirl_exact(channel, &TwirlSpec::new(TwirlKind::LocalClifford, n), None)?;
    OutcomeDistribution::from_dense(n, &probs)
}

/// `R_{h,w} = 2^h C(w,h)/3^w`, rows `h` and columns `w`.
pub fn r_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n + 1, n + 1, |h, w| r_entry(h, w))
}

fn r_entry(h: usize, w: usize) -> f64 {
    if h > w {
        0.0
    } else {
        binomial(w, h) as f64 * (h as f64).exp2() / 3f64.powi(w as i32)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightCondition {
    pub weight: usize,
    /// Pivot gain `1/R_{w,w} = (3/2)^w` of the back-substitution.
    pub amplification: f64,
    /// `max_h |(R⁻¹)_{w,h}|`, the largest gain from any single `Prob(h)` to `p_w`.
    /// Near the cutoff this can exceed the pivot gain of the next weight.
    pub worst_case_gain: f64,
    /// `amplification/√M`, the stderr scale of a weight-`w` estimate.
    pub nominal_stderr: Option<f64>,
    pub propagated_stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSolution {
    pub cutoff: usize,
    pub p_w: Vec<f64>,
    /// Present for sampled statistics.
    pub covariance: Option<Vec<Vec<f64>>>,
    pub condition_report: Vec<WeightCondition>,
    /// `Σ_{h > w_co} Prob(h)`, which no `p_w` with `w ≤ w_co` can explain.
    pub tail_residual: f64,
    /// `1 − Σ p̂_w`.
    pub sum_rule_residual: f64,
}

impl WeightSolution {
    pub fn stderr(&self, w: usize) -> Option<f64> {
        self.covariance.as_ref().map(|c| c[w][w].max(0.0).sqrt())
    }
}

/// Multinomial covariance of `a·P̂` and `b·P̂` when `P̂` are cell frequencies.
fn multinomial_cov(a: &[f64], b: &[f64], p: &[f64], shots: u64) -> f64 {
    let mut e_ab = 0.0;
    let mut e_a = 0.0;
    let mut e_b = 0.0;
    for ((x, y), q) in a.iter().zip(b).zip(p) {
        e_ab += x * y * q;
        e_a += x * q;
        e_b += y * q;
    }
    (e_ab - e_a * e_b) / shots as f64
}

/// Back-substitutes `Prob(h) = Σ_{w ≤ w_co} R_{h,w} p_w` from `h = w_co` down.
pub fn solve_pw_from(dist: &OutcomeDistribution, cutoff: usize) -> Result<WeightSolution> {
    let n = dist.n;
    if cutoff > n {
        return Err(Error::validation("cutoff", format!("w_co = {cutoff} exceeds n = {n}")));
    }
    let k = cutoff + 1;
    // rows of the inverse of the truncated R, built by the same back-substitution
    let mut inverse = vec![vec![0.0; k]; k];
    for h in (0..k).rev() {
        inverse[h][h] = 1.0 / r_entry(h, h);
        for w in h + 1..k {
            let mut acc = 0.0;
            for (j, row) in inverse.iter().enumerate().take(k).skip(h + 1) {
                acc += r_entry(h, j) * row[w];
            }
            inverse[h][w] = -acc / r_entry(h, h);
        }
    }
    let prob = &dist.by_weight[..k];
    let mut p_w = vec![0.0; k];
    for h in (0..k).rev() {
        let above: f64 = (h + 1..k).map(|w| r_entry(h, w) * p_w[w]).sum();
        p_w[h] = (prob[h] - above) / r_entry(h, h);
    }
    // covariance over all n+1 weight cells so the tail enters the multinomial terms
    let pad = |row: &Vec<f64>| {
        let mut r = row.clone();
        r.resize(n + 1, 0.0);
        r
    };
    let covariance = dist.shots.map(|m| {
        (0..k)
            .map(|a| {
                (0..k).map(|b| multinomial_cov(&pad(&inverse[a]), &pad(&inverse[b]), &dist.by_weight, m)).collect()
            })
            .collect::<Vec<Vec<f64>>>()
    });
    let condition_report = (0..k)
        .map(|w| {
            let amplification = 1.0 / r_entry(w, w);
            WeightCondition {
                weight: w,
                amplification,
                worst_case_gain: inverse[w].iter().fold(0.0f64, |a, x| a.max(x.abs())),
                nominal_stderr: dist.shots.map(|m| amplification / (m as f64).sqrt()),
                propagated_stderr: covariance.as_ref().map(|c| c[w][w].max(0.0).sqrt()),
            }
        })
        .collect();
    let total: f64 = p_w.iter().sum();
    Ok(WeightSolution {
        cutoff,
        p_w,
        covariance,
        condition_report,
        tail_residual: dist.tail(cutoff),
        sum_rule_residual: 1.0 - total,
    })
}

pub fn solve_pw(stats: &HammingStatistics, cutoff: usize) -> Result<WeightSolution> {
    solve_pw_from(&stats.distribution(), cutoff)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiColEntry {
    pub value: f64,
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiColSolution {
    pub cutoff: usize,
    /// Keyed by support bitstring, qubit 1 leftmost.
    pub chi_col: BTreeMap<Bits, ChiColEntry>,
    pub tail_residual: f64,
    pub sum_rule_residual: f64,
}

impl ChiColSolution {
    pub fn get(&self, support: &Bits) -> f64 {
        self.chi_col.get(support).map_or(0.0, |e| e.value)
    }
}

/// Supersets of `u` with weight at most `cutoff`, excluding `u` itself.
fn strict_supersets(u: &Bits, cutoff: usize) -> Vec<Bits> {
    let n = u.len();
    let missing: Vec<usize> = (0..n).filter(|&q| !u.get(q)).collect();
    let room = cutoff.saturating_sub(u.count_ones()).min(missing.len());
    let mut out = Vec::new();
    for k in 1..=room {
        for pick in supports_of_weight(missing.len(), k) {
            let mut v = u.clone();
            for i in pick.iter_ones() {
                v.set(missing[i], true);
            }
            out.push(v);
        }
    }
    out
}

/// Triangular solve of `Prob(v̄_h) = Σ_{v̄_w ⊇ v̄_h, w ≤ w_co} (2^h/3^w) χ^col_{v̄_w}`,
/// from the highest weight down and lexicographically within a weight.
pub fn solve_chi_col_from(dist: &OutcomeDistribution, cutoff: usize) -> Result<ChiColSolution> {
    let n = dist.n;
    if cutoff > n {
        return Err(Error::validation("cutoff", format!("w_co = {cutoff} exceeds n = {n}")));
    }
    let Some(_) = &dist.by_outcome else {
        return Err(Error::validation("statistics", "support-resolved solve needs which-qubit outcomes"));
    };
    let m_co: u64 = (0..=cutoff).map(|w| binomial(n, w)).sum();
    if m_co > CHI_COL_CAPACITY {
        return Err(Error::Capacity { what: "support-resolved χ^col solve", n, cap: cutoff });
    }
    let supports = supports_up_to(n, cutoff);
    let mut values: BTreeMap<Bits, f64> = BTreeMap::new();
    for w in (0..=cutoff).rev() {
        for u in supports.iter().filter(|s| s.count_ones() == w) {
            let h = w as i32;
            let above: f64 = strict_supersets(u, cutoff)
                .iter()
                .map(|v| 2f64.powi(h) / 3f64.powi(v.count_ones() as i32) * values[v])
                .sum();
            let diag = 2f64.powi(h) / 3f64.powi(h);
            values.insert(u.clone(), (dist.prob(u) - above) / diag);
        }
    }
    // χ_v = 3^{|v|} Σ_{u ⊇ v} (−1)^{|u|−|v|} Prob(u)/2^{|u|} gives each row of the inverse
    let stderr_of = |v: &Bits, shots: u64| -> f64 {
        let mut cells: Vec<(f64, f64)> = vec![(1.0, dist.prob(v))];
        for u in strict_supersets(v, cutoff) {
            let sign = if (u.count_ones() - v.count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
            cells.push((sign * 2f64.powi(-(u.count_ones() as i32 - v.count_ones() as i32)), dist.prob(&u)));
        }
        let scale = 1.5f64.powi(v.count_ones() as i32);
        let (a, p): (Vec<f64>, Vec<f64>) = cells.into_iter().map(|(a, p)| (a * scale, p)).unzip();
        multinomial_cov(&a, &a, &p, shots).max(0.0).sqrt()
    };
    let total: f64 = values.values().sum();
    let chi_col = values
        .iter()
        .map(|(v, &value)| (v.clone(), ChiColEntry { value, stderr: dist.shots.map(|m| stderr_of(v, m)) }))
        .collect();
    Ok(ChiColSolution { cutoff, chi_col, tail_residual: dist.tail(cutoff), sum_rule_residual: 1.0 - total })
}

pub fn solve_chi_col(stats: &HammingStatistics, cutoff: usize) -> Result<ChiColSolution> {
    solve_chi_col_from(&stats.distribution(), cutoff)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C1tFidelity {
    pub fidelity: f64,
    /// Survival probability for each computational input, in index order.
    pub per_input: Vec<f64>,
    /// `max − min` over `per_input`.
    pub spread: f64,
    /// `Σ_v χ^col_v / 3^{|v|}` from the channel's own χ.
    pub predicted: f64,
}

/// Exact twirled fidelity for every computational input state.
pub fn c1t_fidelity(channel: &ChannelModel) -> Result<C1tFidelity> {
    let n = channel.n();
    check_capacity("exact local twirl", n, crate::sim::EXACT_TWIRL_QUBIT_CAP)?;
    let spec = TwirlSpec::new(TwirlKind::LocalClifford, n);
    let per_input = (0..dense::dim(n))
        .map(|i| Ok(enumerate_twirl_exact_from(channel, &spec, None, &Bits::from_index(n, i))?[0]))
        .collect::<Result<Vec<f64>>>()?;
    let coarse = channel.coarse_grain(n)?;
    let predicted = coarse.chi_col.iter().map(|(v, x)| x / 3f64.powi(v.count_ones() as i32)).sum();
    let max = per_input.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = per_input.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(C1tFidelity { fidelity: per_input[0], spread: max - min, per_input, predicted })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalTwirlEstimate {
    pub n: usize,
    pub config: LocalTwirlConfig,
    pub cutoff: usize,
    pub cutoff_defaulted: bool,
    pub statistics: HammingStatistics,
    pub weights: WeightSolution,
    pub chi_col: Option<ChiColSolution>,
}

/// Samples the twirl, then solves for `p_w` and, if kept, `χ^col`.
pub fn estimate_local_twirl(channel: &ChannelModel, config: &LocalTwirlConfig) -> Result<LocalTwirlEstimate> {
    let n = channel.n();
    let records = run_c1t(channel, config)?;
    let statistics = collect_statistics(n, &records, config.keep_which_qubit)?;
    let dist = statistics.distribution();
    let cutoff = config.cutoff.unwrap_or_else(|| dist.default_cutoff());
    let weights = solve_pw_from(&dist, cutoff)?;
    let chi_col = if config.keep_which_qubit { Some(solve_chi_col_from(&dist, cutoff)?) } else { None };
    Ok(LocalTwirlEstimate {
        n,
        config: config.clone(),
        cutoff,
        cutoff_defaulted: config.cutoff.is_none(),
        statistics,
        weights,
        chi_col,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::noise;
    use crate::pauli::PauliOperator;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn r_matrix_examples() {
        let r = r_matrix(4);
        assert_eq!(r[(0, 0)], 1.0);
        assert!((r[(1, 2)] - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(r[(3, 1)], 0.0);
        for w in 0..=4 {
            assert!((r.column(w).sum() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn statistics_examples() {
        let mut s = HammingStatistics::empty(2);
        for o in ["00", "01", "11"] {
            s.add(&b(o), true);
        }
        assert_eq!(s.counts_by_weight, vec![1, 1, 1]);
        let mut t = HammingStatistics::empty(2);
        t.add(&b("00"), true);
        let mut merged = s.clone();
        merged.merge(&t).unwrap();
        assert_eq!(merged.total, 4);
        assert_eq!(merged.counts_by_weight, vec![2, 1, 1]);
        assert_eq!(merged.counts_by_outcome[&b("00")], 2);
    }

    #[test]
    fn identity_channel_solves() {
        let id = ChannelModel::identity(2);
        let dist = exact_distribution(&id).unwrap();
        assert_eq!(dist.default_cutoff(), 0);
        let sol = solve_pw_from(&dist, 2).unwrap();
        assert!((sol.p_w[0] - 1.0).abs() < 1e-12 && sol.p_w[1].abs() < 1e-12 && sol.p_w[2].abs() < 1e-12);
        let col = solve_chi_col_from(&dist, 2).unwrap();
        assert!((col.get(&b("00")) - 1.0).abs() < 1e-12);
        assert!(col.chi_col.iter().filter(|(v, _)| !v.is_zero()).all(|(_, e)| e.value.abs() < 1e-12));
    }

    #[test]
    fn bit_flip_gate_survival() {
        let n = 2;
        let x1 = ChannelModel::unitary(dense::embed(&noise::pauli_x(), &[0], n).unwrap()).unwrap();
        let dist = exact_distribution(&x1).unwrap();
        assert!((dist.by_weight[0] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn depolarizing_solves() {
        let dep = ChannelModel::from_kraus(noise::depolarizing(0.3)).unwrap();
        let dist = exact_distribution(&dep).unwrap();
        assert!((dist.by_weight[1] - 0.15).abs() < 1e-12);
        let sol = solve_pw_from(&dist, 1).unwrap();
        assert!((sol.p_w[0] - 0.775).abs() < 1e-12 && (sol.p_w[1] - 0.225).abs() < 1e-12);
        let f = c1t_fidelity(&dep).unwrap();
        assert!((f.fidelity - 0.85).abs() < 1e-12 && f.spread < 1e-12 && (f.predicted - 0.85).abs() < 1e-12);
    }

    #[test]
    fn cnot_weights() {
        let cx = ChannelModel::unitary(noise::cnot()).unwrap();
        let sol = solve_pw_from(&exact_distribution(&cx).unwrap(), 2).unwrap();
        for (got, want) in sol.p_w.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn dephasing_chi_col_exact_and_sampled() {
        let ch = ChannelModel::pauli_channel(2, vec![(p("II"), 0.7), (p("ZI"), 0.3)]).unwrap();
        let col = solve_chi_col_from(&exact_distribution(&ch).unwrap(), 2).unwrap();
        assert!((col.get(&b("00")) - 0.7).abs() < 1e-12);
        assert!((col.get(&b("10")) - 0.3).abs() < 1e-12);
        assert!(col.get(&b("01")).abs() < 1e-12 && col.get(&b("11")).abs() < 1e-12);

        let est = estimate_local_twirl(&ch, &LocalTwirlConfig { cutoff: Some(2), ..LocalTwirlConfig::new(10_000, 3) })
            .unwrap();
        let e = &est.chi_col.as_ref().unwrap().chi_col[&b("10")];
        assert!((e.value - 0.3).abs() < 3.0 * e.stderr.unwrap());
    }

    #[test]
    fn chi_col_stderr_matches_explicit_inverse() {
        // a noisy 3-qubit distribution; compare the closed-form inverse rows with finite differences
        let ch = ChannelModel::local_depolarizing(3, 0.2).unwrap();
        let mut dist = exact_distribution(&ch).unwrap();
        dist.shots = Some(1000);
        let sol = solve_chi_col_from(&dist, 3).unwrap();
        let base = sol.get(&b("100"));
        let bump = 1e-6;
        let mut bumped = dist.clone();
        *bumped.by_outcome.as_mut().unwrap().get_mut(&b("110")).unwrap() += bump;
        let shifted = solve_chi_col_from(&bumped, 3).unwrap().get(&b("100"));
        // coefficient of Prob(110) in χ_{100} is 3·(−1)/4
        assert!(((shifted - base) / bump + 0.75).abs() < 1e-6);
    }

    #[test]
    fn amplification_grows_with_weight() {
        for n in 1..=10 {
            let dist = OutcomeDistribution {
                n,
                by_outcome: None,
                by_weight: vec![1.0 / (n + 1) as f64; n + 1],
                shots: Some(100),
            };
            let sol = solve_pw_from(&dist, n).unwrap();
            for w in 1..=n {
                let (lo, hi) = (&sol.condition_report[w - 1], &sol.condition_report[w]);
                assert!(hi.amplification >= lo.amplification);
                assert!(hi.nominal_stderr.unwrap() >= lo.nominal_stderr.unwrap());
                assert!(hi.worst_case_gain >= hi.amplification);
            }
        }
    }
}
