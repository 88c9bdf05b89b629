//! Element bounds on χ and the transpose map as a positive but not CP example.

use twirl_tomo::channel::{check_cp_bound, check_positive_bound, diagonalize_chi, noise, ChannelModel};

fn main() -> twirl_tomo::Result<()> {
    let ad = ChannelModel::from_kraus(noise::amplitude_damping(0.35))?;
    println!("amplitude damping: {} CP-bound violations", check_cp_bound(ad.chi()?).len());

    let transpose = noise::transpose_chi(1)?;
    println!("transpose diag: {:?}", transpose.diagonal_entries());
    for v in check_cp_bound(&transpose) {
        println!("  cp bound violated at ({}, {}): {:.4} > {:.4}", v.row, v.col, v.lhs, v.rhs);
    }
    println!("positivity-bound violations: {}", check_positive_bound(&transpose).len());
    let eig = diagonalize_chi(&transpose)?;
    println!("eigenvalues: {:?}", eig.eigenvalues);
    println!("classification: {:?}", ChannelModel::from_chi(transpose).classify());
    Ok(())
}
