//! Pauli strings: products with phases, commutation, labels, weight and support.

use twirl_tomo::pauli::{enumerate_paulis, supports_of_weight};
use twirl_tomo::{PauliLabel, PauliOperator};

fn main() -> twirl_tomo::Result<()> {
    let a: PauliOperator = "XZI".parse()?;
    let b: PauliOperator = "ZZY".parse()?;
    let ab = a.multiply(&b)?;
    println!("{a} * {b} = {ab} (phase i^{})", ab.phase());
    println!("commute: {}", a.commutes(&b)?);

    let label = PauliLabel::from_operator(&b)?;
    println!("{b}: label index {}, weight {}, support {}", label.index(), label.weight(), label.support());
    let d = label.decompose();
    println!("decomposition: {d:?}");

    let up_to_one = enumerate_paulis(3, Some(1))?;
    println!("{} Paulis of weight <= 1 on 3 qubits", up_to_one.len());
    for s in supports_of_weight(3, 2) {
        print!("{s} ");
    }
    println!();
    Ok(())
}
