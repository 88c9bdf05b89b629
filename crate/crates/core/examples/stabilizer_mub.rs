//! Stabilizer MUB construction and a check of mutual unbiasedness on dense states.

use twirl_tomo::bits::Bits;
use twirl_tomo::stabilizer::MubFamily;

fn main() -> twirl_tomo::Result<()> {
    let n = 2;
    let family = MubFamily::new(n)?;
    let mut states = Vec::new();
    for j in 0..family.len() {
        let basis = family.basis(j)?;
        let gens: Vec<String> = basis.frame.generators().iter().map(|g| g.to_string()).collect();
        println!("basis {j}: circuit {:?}, stabilizers {gens:?}", family.circuit(j)?);
        for m in 0..1usize << n {
            states.push((j, basis.frame.with_signs(Bits::from_index(n, m))?.to_state()?));
        }
    }
    let (mut worst_same, mut worst_cross) = (0.0f64, 0.0f64);
    for (ja, a) in &states {
        for (jb, b) in &states {
            let overlap = a.dotc(b).norm_sqr();
            if ja == jb {
                worst_same = worst_same.max(if (overlap - 1.0).abs() < 1e-9 { 0.0 } else { overlap });
            } else {
                worst_cross = worst_cross.max((overlap - 0.25).abs());
            }
        }
    }
    println!("max in-basis overlap between distinct states {worst_same:.2e}");
    println!("max |overlap - 1/D| across bases {worst_cross:.2e}");
    Ok(())
}
