//! Exact twirl enumeration: MUB states against the full Clifford group, the
//! survival identity, and χ entries recovered from twirled data.

use twirl_tomo::channel::{noise, ChannelModel};
use twirl_tomo::sim::{enumerate_twirl_exact, exact_chi_extraction, TwirlKind, TwirlSpec};
use twirl_tomo::{PauliLabel, PauliOperator};

fn main() -> twirl_tomo::Result<()> {
    let ch = ChannelModel::embed_kraus(&noise::amplitude_damping(0.3), &[0], 1)?;
    let d = 2.0;
    for label in ["I", "X", "Y", "Z"] {
        let p: PauliOperator = label.parse()?;
        let mub = enumerate_twirl_exact(&ch, &TwirlSpec::new(TwirlKind::Mub, 1), Some(&p))?[0];
        let cliff = enumerate_twirl_exact(&ch, &TwirlSpec::new(TwirlKind::CliffordFull, 1), Some(&p))?[0];
        let chi_ll = ch.chi()?.diag(PauliLabel::from_operator(&p)?.index() as usize);
        println!(
            "P = {label}: MUB survival {mub:.12}, Clifford {cliff:.12}, (D chi + 1)/(D + 1) = {:.12}",
            (d * chi_ll + 1.0) / (d + 1.0)
        );
    }

    let cnot = ChannelModel::unitary(noise::cnot())?;
    let zi = PauliLabel::from_operator(&"ZI".parse()?)?;
    let zx = PauliLabel::from_operator(&"ZX".parse()?)?;
    println!("CNOT chi[ZI, ZX] from twirled data: {:.6}", exact_chi_extraction(&cnot, &zi, &zx)?);
    Ok(())
}
