//! Monte Carlo Haar fourth moment against its closed form.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use twirl_tomo::channel::noise;
use twirl_tomo::dense::kron;
use twirl_tomo::sim::haar_twirl_moment;

fn main() -> twirl_tomo::Result<()> {
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    let a1 = noise::pauli_x();
    let a2 = noise::hadamard();
    let b1 = noise::pauli_z();
    let b2 = &noise::phase() + &noise::pauli_y();
    let est = haar_twirl_moment(&a1, &a2, &b1, &b2, 100_000, &mut rng)?;
    println!(
        "D = 2: estimate {:?} ± {:?}, closed form {:?}, z = {:.2}",
        est.estimate,
        est.stderr,
        est.closed_form,
        est.z_score()
    );

    let big = |m: &twirl_tomo::dense::CMatrix| kron(m, &noise::hadamard());
    let est = haar_twirl_moment(&big(&a1), &big(&a2), &big(&b1), &big(&b2), 50_000, &mut rng)?;
    println!("D = 4: z = {:.2}, relative error {:.2e}", est.z_score(), est.relative_error());
    Ok(())
}
