//! Selective estimation of single χ diagonal entries and the average fidelity.

use twirl_tomo::channel::ChannelModel;
use twirl_tomo::seqpt::{average_fidelity, estimate_chi_selective, SeqptConfig, Variant};
use twirl_tomo::PauliOperator;

fn main() -> twirl_tomo::Result<()> {
    let ch = ChannelModel::pauli_channel(2, vec![("II".parse()?, 0.9), ("XI".parse()?, 0.06), ("ZZ".parse()?, 0.04)])?;
    let m = SeqptConfig::required_shots(0.01, Some(0.05));
    println!("M for eps = 0.01, delta = 0.05: {m}");
    let mut config = SeqptConfig::new(m, Variant::Mub, 3);
    config.epsilon = Some(0.01);
    config.delta = Some(0.05);
    config.validate()?;
    for label in ["XI", "ZZ", "YY"] {
        let p: PauliOperator = label.parse()?;
        let e = estimate_chi_selective(&ch, &p, &config)?;
        println!("chi[{label}] = {:.4} ± {:.4} (survival {:.4})", e.chi, e.stderr, e.survival_rate);
    }
    let f = average_fidelity(&ch, &config)?;
    println!("average fidelity {:.4} ± {:.4}, implied chi_00 {:.4}", f.fidelity, f.stderr, f.chi_00);
    Ok(())
}
