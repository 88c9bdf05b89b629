//! Property tests over random Paulis, Cliffords, channels and specs.

use proptest::prelude::*;
use twirl_tomo::bits::Bits;
use twirl_tomo::channel::{check_cp_bound, chi_from_kraus, noise, ChannelModel};
use twirl_tomo::dense::{self, CMatrix};
use twirl_tomo::harness::{ChannelSpecDocument, Layer};
use twirl_tomo::local_twirl::{exact_distribution, r_matrix, solve_chi_col_from};
use twirl_tomo::rng::{domain, substream};
use twirl_tomo::seqpt::SeqptConfig;
use twirl_tomo::sim::LocalTwirlElement;
use twirl_tomo::stabilizer::{sample_clifford_uniform, CliffordElement};
use twirl_tomo::{Pauli1, PauliLabel, PauliOperator};

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    prop::collection::vec(0u64..4, n)
        .prop_map(|d| PauliOperator::from_factors(&d.into_iter().map(Pauli1::from_digit).collect::<Vec<_>>()))
}

fn random_density(n: usize, seed: u64) -> CMatrix {
    let mut rng = substream(seed, domain::GENERIC, 99);
    let psi = dense::random_state(dense::dim(n), &mut rng);
    let phi = dense::random_state(dense::dim(n), &mut rng);
    dense::projector(&psi).scale(0.6) + dense::projector(&phi).scale(0.4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_dense(a in pauli(3), b in pauli(3)) {
        let ab = a.multiply(&b).unwrap();
        let dense_ab = a.to_dense() * b.to_dense();
        prop_assert!(dense::max_abs_diff(&ab.to_dense(), &dense_ab) < 1e-12);
        prop_assert_eq!(a.commutes(&b).unwrap(), ab == b.multiply(&a).unwrap());
    }

    #[test]
    fn label_round_trip(n in 1usize..8, raw in any::<u64>()) {
        let index = raw % PauliLabel::count(n);
        let l = PauliLabel::new(n, index).unwrap();
        prop_assert_eq!(PauliLabel::from_operator(&l.to_operator()).unwrap().index(), index);
        let d = l.decompose();
        prop_assert_eq!(PauliLabel::from_decomposition(n, &d).unwrap().index(), index);
        let s: PauliOperator = l.to_operator().to_string().parse().unwrap();
        prop_assert_eq!(s, l.to_operator());
    }

    #[test]
    fn clifford_conjugation_is_an_automorphism(seed in any::<u64>(), a in pauli(3), b in pauli(3)) {
        let mut rng = substream(seed, domain::GENERIC, 5);
        let cl = sample_clifford_uniform(3, &mut rng);
        prop_assert!(cl.is_symplectic());
        let (ca, cb) = (cl.conjugate(&a).unwrap(), cl.conjugate(&b).unwrap());
        prop_assert_eq!(ca.multiply(&cb).unwrap(), cl.conjugate(&a.multiply(&b).unwrap()).unwrap());
        prop_assert_eq!(cl.conjugate_adjoint(&ca).unwrap(), a.clone());
        let u = cl.to_dense().unwrap();
        let want = &u * a.to_dense() * u.adjoint();
        prop_assert!(dense::max_abs_diff(&ca.to_dense(), &want) < 1e-10);
    }

    #[test]
    fn clifford_tableau_equals_circuit(seed in any::<u64>()) {
        let mut rng = substream(seed, domain::GENERIC, 6);
        let cl = sample_clifford_uniform(2, &mut rng);
        let rebuilt = CliffordElement::from_circuit(2, cl.circuit()).unwrap();
        prop_assert_eq!(rebuilt.tableau_key(), cl.tableau_key());
    }

    #[test]
    fn random_channels_are_cptp_and_bounded(seed in any::<u64>(), n in 1usize..3, k in 1usize..5) {
        let mut rng = substream(seed, domain::GENERIC, 7);
        let kraus = noise::random_kraus(n, k, &mut rng).unwrap();
        let chi = chi_from_kraus(&kraus).unwrap();
        prop_assert!(chi.is_hermitian());
        prop_assert!((chi.trace() - 1.0).abs() < 1e-10);
        prop_assert!(chi.is_trace_preserving(1e-10));
        prop_assert!(check_cp_bound(&chi).is_empty());
        let cls = ChannelModel::from_kraus(kraus).unwrap().classify();
        prop_assert!(cls.completely_positive && cls.trace_preserving);
    }

    #[test]
    fn spec_save_load_round_trip(p in 0.0f64..1.0, gamma in 0.0f64..1.0, gate in prop::sample::select(vec!["H", "S", "CNOT", "CZ", "X", "Y", "Z"]), seed in any::<u64>()) {
        let qubits = if gate.len() > 1 && gate != "H" { vec![2, 1] } else { vec![2] };
        let doc = ChannelSpecDocument {
            name: "prop".into(),
            n: 2,
            build: vec![
                Layer::NamedGate { named_gate: gate.into(), qubits },
                Layer::Noise { noise: "depolarizing".into(), strength: p, qubits: vec![1] },
                Layer::Noise { noise: "amplitude_damping".into(), strength: gamma, qubits: vec![2] },
            ],
        };
        let text = doc.to_json_string().unwrap();
        let back = ChannelSpecDocument::from_json_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        let (a, b) = (doc.build().unwrap().channel, back.build().unwrap().channel);
        for j in 0..5 {
            let rho = random_density(2, seed.wrapping_add(j));
            prop_assert!(dense::max_abs_diff(&a.apply(&rho).unwrap(), &b.apply(&rho).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn local_twirl_index_round_trip(n in 1usize..6, raw in any::<u64>()) {
        let count = LocalTwirlElement::count(n).unwrap();
        let e = LocalTwirlElement::from_index(n, raw % count).unwrap();
        prop_assert!(e.to_clifford().is_symplectic());
        if let twirl_tomo::sim::TwirlDescriptor::Local { paulis, rotations } = e.descriptor() {
            prop_assert_eq!(LocalTwirlElement::from_descriptor(&paulis, &rotations).unwrap(), e);
        } else {
            prop_assert!(false, "local element has a local descriptor");
        }
    }

    #[test]
    fn r_columns_are_distributions(n in 1usize..16) {
        let r = r_matrix(n);
        for w in 0..=n {
            let col = r.column(w);
            prop_assert!((col.sum() - 1.0).abs() < 1e-14);
            prop_assert!(col.iter().enumerate().all(|(h, &v)| v >= 0.0 && (h <= w || v == 0.0)));
        }
    }

    #[test]
    fn pauli_channel_inversion_is_exact(weights in prop::collection::vec(0.0f64..1.0, 4), labels in prop::collection::vec(pauli(2), 4)) {
        let total: f64 = weights.iter().sum::<f64>() + 1.0;
        let mut terms = vec![(PauliOperator::identity(2), 1.0 / total)];
        terms.extend(labels.into_iter().zip(weights.iter().map(|w| w / total)));
        let ch = ChannelModel::pauli_channel(2, terms).unwrap();
        let dist = exact_distribution(&ch).unwrap();
        let sol = solve_chi_col_from(&dist, 2).unwrap();
        let cg = ch.coarse_grain(2).unwrap();
        for (v, want) in &cg.chi_col {
            prop_assert!((sol.get(v) - want).abs() < 1e-10);
        }
    }

    #[test]
    fn required_shots_is_minimal(eps in 0.005f64..0.5, delta in prop::option::of(0.001f64..0.5)) {
        let m = SeqptConfig::required_shots(eps, delta);
        let mut cfg = SeqptConfig::new(m, Default::default(), 0);
        cfg.epsilon = Some(eps);
        cfg.delta = delta;
        prop_assert!(cfg.validate().is_ok());
        cfg.shots = m - 1;
        prop_assert!(m == 1 || cfg.validate().is_err());
    }

    #[test]
    fn bits_text_round_trip(bools in prop::collection::vec(any::<bool>(), 1..130)) {
        let b = Bits::from_bools(&bools);
        let s = b.to_string();
        prop_assert_eq!(s.parse::<Bits>().unwrap(), b);
    }
}

#[test]
fn identity_survives_every_preparation() {
    for n in 1..4 {
        let id = ChannelModel::identity(n);
        let cfg = SeqptConfig::new(500, Default::default(), n as u64);
        let e = twirl_tomo::seqpt::estimate_chi_selective(&id, &PauliOperator::identity(n), &cfg).unwrap();
        assert_eq!((e.survivals, e.chi, e.stderr), (500, 1.0, 0.0));
    }
}
