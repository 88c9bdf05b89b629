//! Channel spec and manifest files driving a reproducible run plus CSV report.

use serde_json::json;
use twirl_tomo::harness::{self, ChannelSpecDocument, Layer, Protocol, RunManifest};

fn main() -> twirl_tomo::Result<()> {
    let dir = std::env::temp_dir().join("twirl-tomo-example");
    std::fs::create_dir_all(&dir)?;
    let spec = ChannelSpecDocument {
        name: "noisy-cnot".into(),
        n: 2,
        build: vec![
            Layer::NamedGate { named_gate: "CNOT".into(), qubits: vec![1, 2] },
            Layer::Noise { noise: "phase_flip".into(), strength: 0.05, qubits: vec![2] },
        ],
    };
    harness::save_channel(&spec, &dir.join("spec.json"))?;
    let manifest = RunManifest::new(Protocol::SeqptBlind, Some("spec.json".into()), json!({ "shots": 5000 }), 42);
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;

    let (doc, out) = harness::run(&RunManifest::load(&dir.join("manifest.json"))?, &dir, &dir.join("out"))?;
    print!("{}", harness::render_table(&doc));
    let rep = harness::report(&out.result, &dir.join("out"))?;
    println!("{}", std::fs::read_to_string(rep.estimates_csv)?);
    Ok(())
}
