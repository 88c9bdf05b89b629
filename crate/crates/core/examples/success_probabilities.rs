//! Probability that two preparations determine a unique intermediary Pauli.

use twirl_tomo::seqpt::{exact_pair_success, sample_pair_success, success_probability, Variant};

fn main() -> twirl_tomo::Result<()> {
    println!("{:<3} {:>9} {:>12} {:>10} {:>16}", "n", "P_MUB", "P_C formula", "P_C exact", "P_C sampled");
    for n in 1..=8 {
        let sampled = if n <= 3 {
            let s = sample_pair_success(Variant::Clifford, n, 20_000, 9)?;
            format!("{:.4}±{:.4}", s.fraction, s.stderr)
        } else {
            "-".into()
        };
        println!(
            "{n:<3} {:>9.5} {:>12.5} {:>10.5} {sampled:>16}",
            success_probability(Variant::Mub, n),
            success_probability(Variant::Clifford, n),
            exact_pair_success(Variant::Clifford, n)
        );
    }
    Ok(())
}
