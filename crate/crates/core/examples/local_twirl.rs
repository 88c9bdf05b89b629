//! One-qubit Clifford twirl: exact inversion and a sampled estimate with error bars.

use twirl_tomo::channel::ChannelModel;
use twirl_tomo::local_twirl::{
    c1t_fidelity, estimate_local_twirl, exact_distribution, r_matrix, solve_chi_col_from, solve_pw_from,
    LocalTwirlConfig,
};

fn main() -> twirl_tomo::Result<()> {
    println!("R(2) =\n{}", r_matrix(2));
    let ch = ChannelModel::pauli_channel(2, vec![("II".parse()?, 0.7), ("ZI".parse()?, 0.3)])?;

    let exact = exact_distribution(&ch)?;
    let pw = solve_pw_from(&exact, 2)?;
    let col = solve_chi_col_from(&exact, 2)?;
    println!("exact p_w {:?}", pw.p_w);
    for (v, e) in &col.chi_col {
        println!("  exact chi_col[{v}] = {:.12}", e.value);
    }
    let fid = c1t_fidelity(&ch)?;
    println!("twirled fidelity {:.6} (spread over inputs {:.1e})", fid.fidelity, fid.spread);

    let est = estimate_local_twirl(&ch, &LocalTwirlConfig::new(10_000, 2))?;
    println!("sampled, w_co = {}", est.cutoff);
    for (w, cond) in est.weights.condition_report.iter().enumerate() {
        println!(
            "  p_{w} = {:.4} ± {:.4}, amplification {:.3}",
            est.weights.p_w[w],
            est.weights.stderr(w).unwrap_or(0.0),
            cond.amplification
        );
    }
    if let Some(col) = &est.chi_col {
        for (v, e) in &col.chi_col {
            println!("  chi_col[{v}] = {:.4} ± {:.4}", e.value, e.stderr.unwrap_or(0.0));
        }
    }
    Ok(())
}
