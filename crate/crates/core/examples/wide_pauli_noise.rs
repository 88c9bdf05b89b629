//! A 40-qubit Pauli channel handled by the stabilizer-frame backend.

use twirl_tomo::channel::ChannelModel;
use twirl_tomo::local_twirl::{estimate_local_twirl, LocalTwirlConfig};
use twirl_tomo::seqpt::{run_blind_discovery, SeqptConfig, Variant};

fn main() -> twirl_tomo::Result<()> {
    let n = 40;
    let ch = ChannelModel::local_depolarizing(n, 0.004)?;
    let cg = ch.coarse_grain(2)?;
    println!("oracle p_0 {:.5}, p_1 {:.5}, p_2 {:.5}", cg.p_w[0], cg.p_w[1], cg.p_w[2]);

    let mut lt = LocalTwirlConfig::new(20_000, 1);
    lt.cutoff = Some(2);
    lt.keep_which_qubit = false;
    let est = estimate_local_twirl(&ch, &lt)?;
    for w in 0..=2 {
        println!("p_{w} = {:.5} ± {:.5}", est.weights.p_w[w], est.weights.stderr(w).unwrap_or(0.0));
    }

    let blind = run_blind_discovery(&ch, &SeqptConfig::new(2_000, Variant::Mub, 1))?;
    let identity = blind.get(&"I".repeat(n)).map_or(0.0, |e| e.chi);
    println!(
        "blind: chi[I..I] = {identity:.4} (oracle {:.4}), {} detected, {} borderline",
        cg.p_w[0],
        blind.detected().count(),
        blind.estimates.len() - blind.detected().count()
    );
    Ok(())
}
