//! Recovering the Pauli that acted between preparation and measurement from two
//! stabilizer experiments with independent frames.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use twirl_tomo::stabilizer::{frames_independent, sample_clifford_uniform, solve_intermediary_pauli, StabilizerFrame};
use twirl_tomo::PauliOperator;

fn main() -> twirl_tomo::Result<()> {
    let n = 3;
    let hidden: PauliOperator = "XIY".parse()?;
    let mut rng = ChaCha12Rng::seed_from_u64(4);
    let (a, b) = loop {
        let a = sample_clifford_uniform(n, &mut rng);
        let b = sample_clifford_uniform(n, &mut rng);
        if frames_independent(&a, &b)? {
            break (a, b);
        }
    };
    // measuring C† P C |0⟩ flips the signs of generators that anticommute with P
    let measure = |c: &twirl_tomo::stabilizer::CliffordElement| -> twirl_tomo::Result<_> {
        let frame = StabilizerFrame::of_clifford(c);
        let outcome = c.conjugate_adjoint(&hidden)?.x().clone();
        let signs = frame.measured_signs(&outcome);
        Ok((frame, signs))
    };
    let (fa, sa) = measure(&a)?;
    let (fb, sb) = measure(&b)?;
    let solved = solve_intermediary_pauli(&fa, &sa, &fb, &sb)?;
    println!("hidden {hidden}, solved {:?}", solved.map(|p| p.to_string()));
    Ok(())
}
