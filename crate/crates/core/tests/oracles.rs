//! Cross-checks between independent computations of the same quantity.

use twirl_tomo::channel::{noise, ChannelModel};
use twirl_tomo::dense;
use twirl_tomo::local_twirl::{estimate_local_twirl, LocalTwirlConfig};
use twirl_tomo::rng::{domain, substream};
use twirl_tomo::seqpt::{estimate_chi_selective, run_blind_discovery, SeqptConfig, Variant};
use twirl_tomo::sim::{
    evolve, outcome_quasi_distribution, twirl_elements, BackendKind, DenseBackend, DenseState, TwirlKind, TwirlSpec,
};
use twirl_tomo::stabilizer::sample_clifford_uniform;
use twirl_tomo::{PauliLabel, PauliOperator};

fn p(s: &str) -> PauliOperator {
    s.parse().unwrap()
}

fn correlated() -> ChannelModel {
    ChannelModel::pauli_channel(3, vec![(p("III"), 0.82), (p("XXI"), 0.08), (p("IZY"), 0.06), (p("ZII"), 0.04)])
        .unwrap()
}

#[test]
fn dense_backend_matches_density_matrix_evolution() {
    let ch = ChannelModel::embed_kraus(&noise::amplitude_damping(0.4), &[1], 2)
        .unwrap()
        .then(&ChannelModel::unitary(noise::cnot()).unwrap())
        .unwrap();
    for seed in 0..10 {
        let mut rng = substream(seed, domain::GENERIC, 0);
        let c = sample_clifford_uniform(2, &mut rng);
        let probs = DenseBackend.outcome_probabilities(&ch, &c, Some(&p("XZ"))).unwrap();
        let quasi = outcome_quasi_distribution(&ch, &c, Some(&p("XZ"))).unwrap();
        for (a, b) in probs.iter().zip(&quasi) {
            assert!((a - b).abs() < 1e-12);
        }
        // and against explicit state evolution of U|0⟩ through Λ, P, U†
        let u = c.to_dense().unwrap();
        let mut psi = dense::basis_vector(4, 0);
        c.apply_to_state(&mut psi);
        let rho = evolve(&DenseState::from_vector(psi).unwrap(), &ch).unwrap().density();
        let pm = p("XZ").to_dense();
        let out = u.adjoint() * &pm * rho * &pm * &u;
        for (v, a) in probs.iter().enumerate() {
            assert!((out[(v, v)].re - a).abs() < 1e-12);
        }
    }
}

#[test]
fn frame_and_dense_backends_agree_statistically() {
    let ch = correlated();
    let mut dense_cfg = SeqptConfig::new(20_000, Variant::Mub, 4);
    dense_cfg.backend = BackendKind::Dense;
    let mut frame_cfg = dense_cfg.clone();
    frame_cfg.backend = BackendKind::PauliFrame;
    for l in ["XXI", "IZY", "YYY"] {
        let a = estimate_chi_selective(&ch, &p(l), &dense_cfg).unwrap();
        let b = estimate_chi_selective(&ch, &p(l), &frame_cfg).unwrap();
        let se = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.chi - b.chi).abs() <= 4.0 * se, "{l}: {} vs {}", a.chi, b.chi);
    }
    let mut lt = LocalTwirlConfig::new(20_000, 8);
    lt.backend = BackendKind::Dense;
    let a = estimate_local_twirl(&ch, &lt).unwrap();
    lt.backend = BackendKind::PauliFrame;
    let b = estimate_local_twirl(&ch, &lt).unwrap();
    for w in 0..=a.cutoff.min(b.cutoff) {
        let se = (a.weights.stderr(w).unwrap().powi(2) + b.weights.stderr(w).unwrap().powi(2)).sqrt();
        assert!((a.weights.p_w[w] - b.weights.p_w[w]).abs() <= 4.0 * se + 1e-12);
    }
}

#[test]
fn frame_backend_refuses_non_pauli_channels() {
    let ch = ChannelModel::unitary(noise::hadamard()).unwrap();
    let mut cfg = SeqptConfig::new(10, Variant::Mub, 0);
    cfg.backend = BackendKind::PauliFrame;
    assert!(estimate_chi_selective(&ch, &p("X"), &cfg).is_err());
}

#[test]
fn blind_discovery_recovers_correlated_pauli_channel() {
    let ch = correlated();
    let r = run_blind_discovery(&ch, &SeqptConfig::new(8_000, Variant::Mub, 21)).unwrap();
    let detected: Vec<&str> = r.detected().map(|e| e.label.as_str()).collect();
    for l in ["III", "XXI", "IZY", "ZII"] {
        assert!(detected.contains(&l), "{l} missing from {detected:?}");
        let e = r.get(l).unwrap();
        let truth = ch.chi().unwrap().diag(PauliLabel::from_operator(&p(l)).unwrap().index() as usize);
        assert!((e.chi - truth).abs() <= 4.0 * e.stderr);
    }
    assert_eq!(detected.len(), 4, "{detected:?}");
}

#[test]
fn mub_elements_prepare_mutually_unbiased_states() {
    let elements = twirl_elements(&TwirlSpec::new(TwirlKind::Mub, 2)).unwrap();
    assert_eq!(elements.len(), 20);
    let states: Vec<_> = elements
        .iter()
        .map(|(_, c)| {
            let mut psi = dense::basis_vector(4, 0);
            c.apply_to_state(&mut psi);
            psi
        })
        .collect();
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let o = a.dotc(b).norm_sqr();
            let same_basis = i / 4 == j / 4;
            let want = if i == j {
                1.0
            } else if same_basis {
                0.0
            } else {
                0.25
            };
            assert!((o - want).abs() < 1e-12, "{i} {j} {o}");
        }
    }
}
