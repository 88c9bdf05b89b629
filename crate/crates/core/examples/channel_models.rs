//! Channels in Kraus, χ and sparse Pauli form; classification and coarse-graining.

use twirl_tomo::channel::{noise, ChannelModel};

fn main() -> twirl_tomo::Result<()> {
    // amplitude damping on qubit 1 followed by a CNOT
    let damp = ChannelModel::embed_kraus(&noise::amplitude_damping(0.2), &[0], 2)?;
    let cnot = ChannelModel::unitary(noise::cnot())?;
    let channel = damp.then(&cnot)?;
    let chi = channel.chi()?;
    println!("trace {:.6}, hermitian {}", chi.trace(), chi.is_hermitian());
    println!("classification: {:?}", channel.classify());

    let mut csv = Vec::new();
    chi.write_csv(&mut csv)?;
    println!("first CSV row: {}", String::from_utf8_lossy(&csv).lines().next().unwrap_or(""));

    let coarse = channel.coarse_grain(2)?;
    println!("p_w = {:?}", coarse.p_w);
    for (support, v) in &coarse.chi_col {
        println!("  chi_col[{support}] = {v:.6}");
    }

    // sparse Pauli form keeps large registers cheap
    let wide = ChannelModel::local_depolarizing(50, 0.01)?;
    let cg = wide.coarse_grain(2)?;
    println!("50-qubit local depolarizing: p_0 {:.6}, p_1 {:.6}, p_2 {:.6}", cg.p_w[0], cg.p_w[1], cg.p_w[2]);
    Ok(())
}
