//! Clifford elements as symplectic tableaus with a realizing gate circuit.
//!
//! Sign convention: `S X S† = +Y`, `S Y S† = -X`, with `Y = iXZ`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::dense::{self, CMatrix, CVector};
use crate::error::{check_qubits, Error, Result};
use crate::pauli::PauliOperator;
use crate::stabilizer::gf2;

/// Elementary gates on 0-based qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Cnot { control: usize, target: usize },
    X(usize),
    Y(usize),
    Z(usize),
}

impl Gate {
    pub fn inverse(self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::Cnot { .. } => "cnot",
            Gate::X(_) => "x",
            Gate::Y(_) => "y",
            Gate::Z(_) => "z",
        }
    }

    fn max_qubit(&self) -> usize {
        self.qubits().into_iter().max().unwrap_or(0)
    }

    /// `P ↦ G P G†` in place.
    pub fn conjugate_in_place(self, p: &mut PauliOperator) {
        let flip = |p: &mut PauliOperator, cond: bool| {
            if cond {
                p.add_phase(2);
            }
        };
        match self {
            Gate::H(q) => {
                let (x, z) = (p.x().get(q), p.z().get(q));
                flip(p, x && z);
                p.x_mut().set(q, z);
                p.z_mut().set(q, x);
            }
            Gate::S(q) => {
                let (x, z) = (p.x().get(q), p.z().get(q));
                flip(p, x && z);
                p.z_mut().set(q, z ^ x);
            }
            Gate::Sdg(q) => {
                let (x, z) = (p.x().get(q), p.z().get(q));
                flip(p, x && !z);
                p.z_mut().set(q, z ^ x);
            }
            Gate::Cnot { control, target } => {
                let (xc, zc) = (p.x().get(control), p.z().get(control));
                let (xt, zt) = (p.x().get(target), p.z().get(target));
                flip(p, xc && zt && !(xt ^ zc));
                p.x_mut().set(target, xt ^ xc);
                p.z_mut().set(control, zc ^ zt);
            }
            Gate::X(q) => {
                let z = p.z().get(q);
                flip(p, z);
            }
            Gate::Z(q) => {
                let x = p.x().get(q);
                flip(p, x);
            }
            Gate::Y(q) => {
                let (x, z) = (p.x().get(q), p.z().get(q));
                flip(p, x ^ z);
            }
        }
    }

    fn matrix(&self) -> CMatrix {
        use crate::channel::noise;
        match self {
            Gate::H(_) => noise::hadamard(),
            Gate::S(_) => noise::phase(),
            Gate::Sdg(_) => noise::phase_dagger(),
            Gate::Cnot { .. } => noise::cnot(),
            Gate::X(_) => noise::pauli_x(),
            Gate::Y(_) => noise::pauli_y(),
            Gate::Z(_) => noise::pauli_z(),
        }
    }

    /// Applies the gate to a state vector on `n` qubits.
    pub fn apply_to_state(&self, psi: &mut CVector, n: usize) {
        let bit = |q: usize| 1usize << (n - 1 - q);
        let d = psi.len();
        match *self {
            Gate::Cnot { control, target } => {
                let (bc, bt) = (bit(control), bit(target));
                for u in 0..d {
                    if u & bc != 0 && u & bt == 0 {
                        psi.swap_rows(u, u | bt);
                    }
                }
            }
            g => {
                let q = g.qubits()[0];
                let b = bit(q);
                let m = g.matrix();
                for u in 0..d {
                    if u & b == 0 {
                        let (a0, a1) = (psi[u], psi[u | b]);
                        psi[u] = m[(0, 0)] * a0 + m[(0, 1)] * a1;
                        psi[u | b] = m[(1, 0)] * a0 + m[(1, 1)] * a1;
                    }
                }
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.qubits().iter().map(|q| (q + 1).to_string()).collect();
        write!(f, "{}({})", self.name(), qs.join(","))
    }
}

/// JSON form of one gate with 1-based qubit indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateRecord {
    pub gate: String,
    pub qubits: Vec<usize>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        GateRecord { gate: g.name().to_string(), qubits: g.qubits().iter().map(|q| q + 1).collect() }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Gate> {
        let q0 = |i: usize| -> Result<usize> {
            match r.qubits.get(i) {
                Some(&q) if q >= 1 => Ok(q - 1),
                _ => Err(Error::validation("qubits", format!("gate {:?} needs 1-based qubit indices", r.gate))),
            }
        };
        let arity = if r.gate == "cnot" { 2 } else { 1 };
        if r.qubits.len() != arity {
            return Err(Error::validation("qubits", format!("gate {:?} takes {arity} qubit(s)", r.gate)));
        }
        Ok(match r.gate.as_str() {
            "h" => Gate::H(q0(0)?),
            "s" => Gate::S(q0(0)?),
            "sdg" => Gate::Sdg(q0(0)?),
            "x" => Gate::X(q0(0)?),
            "y" => Gate::Y(q0(0)?),
            "z" => Gate::Z(q0(0)?),
            "cnot" => {
                let (control, target) = (q0(0)?, q0(1)?);
                if control == target {
                    return Err(Error::validation("qubits", "cnot control and target coincide"));
                }
                Gate::Cnot { control, target }
            }
            other => return Err(Error::validation("gate", format!("unknown Clifford gate {other:?}"))),
        })
    }
}

/// A Clifford unitary modulo global phase.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    x_images: Vec<PauliOperator>,
    z_images: Vec<PauliOperator>,
    circuit: Vec<Gate>,
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CliffordElement")
            .field("x_images", &self.x_images.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .field("z_images", &self.z_images.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .field("gates", &self.circuit.len())
            .finish()
    }
}

impl CliffordElement {
    pub fn identity(n: usize) -> Self {
        CliffordElement {
            n,
            x_images: (0..n).map(|j| PauliOperator::single(n, j, crate::pauli::Pauli1::X)).collect(),
            z_images: (0..n).map(|j| PauliOperator::single(n, j, crate::pauli::Pauli1::Z)).collect(),
            circuit: Vec::new(),
        }
    }

    /// Clifford realized by applying `gates` in order.
    pub fn from_circuit(n: usize, gates: &[Gate]) -> Result<Self> {
        let mut out = Self::identity(n);
        for g in gates {
            if g.max_qubit() >= n {
                return Err(Error::validation("qubits", format!("gate {g} outside {n} qubits")));
            }
            out.push_gate(*g);
        }
        Ok(out)
    }

    /// Appends a gate applied after the current element.
    fn push_gate(&mut self, g: Gate) {
        for p in self.x_images.iter_mut().chain(self.z_images.iter_mut()) {
            g.conjugate_in_place(p);
        }
        self.circuit.push(g);
    }

    /// Builds the element from tableau images, synthesizing a circuit.
    pub fn from_images(x_images: Vec<PauliOperator>, z_images: Vec<PauliOperator>) -> Result<Self> {
        let n = x_images.len();
        if z_images.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: z_images.len() });
        }
        let candidate = CliffordElement { n, x_images, z_images, circuit: Vec::new() };
        if !candidate.is_symplectic() {
            return Err(Error::validation("images", "images do not preserve the Pauli commutation relations"));
        }
        let circuit = synthesize(&candidate);
        let built = Self::from_circuit(n, &circuit)?;
        debug_assert_eq!(built.x_images, candidate.x_images);
        debug_assert_eq!(built.z_images, candidate.z_images);
        Ok(built)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuit(&self) -> &[Gate] {
        &self.circuit
    }

    pub fn x_image(&self, j: usize) -> &PauliOperator {
        &self.x_images[j]
    }

    pub fn z_image(&self, j: usize) -> &PauliOperator {
        &self.z_images[j]
    }

    /// `C P C†`.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator> {
        check_qubits(self.n, p.n())?;
        let y_count = p.x().words().iter().zip(p.z().words()).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
        let mut out = PauliOperator::identity(self.n).with_phase(((p.phase() as u32 + y_count) % 4) as u8);
        for j in p.x().iter_ones() {
            out.mul_assign_unchecked(&self.x_images[j]);
        }
        for j in p.z().iter_ones() {
            out.mul_assign_unchecked(&self.z_images[j]);
        }
        Ok(out)
    }

    /// `C† P C`.
    pub fn conjugate_adjoint(&self, p: &PauliOperator) -> Result<PauliOperator> {
        check_qubits(self.n, p.n())?;
        let mut out = p.clone();
        for g in self.circuit.iter().rev() {
            g.inverse().conjugate_in_place(&mut out);
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> CliffordElement {
        let gates: Vec<Gate> = self.circuit.iter().rev().map(|g| g.inverse()).collect();
        Self::from_circuit(self.n, &gates).expect("gates already validated")
    }

    /// `later ∘ self`.
    pub fn then(&self, later: &CliffordElement) -> Result<CliffordElement> {
        check_qubits(self.n, later.n)?;
        let mut out = self.clone();
        for g in &later.circuit {
            out.push_gate(*g);
        }
        Ok(out)
    }

    /// Images are Hermitian and satisfy the canonical commutation relations.
    pub fn is_symplectic(&self) -> bool {
        let all: Vec<&PauliOperator> = self.x_images.iter().chain(&self.z_images).collect();
        if all.iter().any(|p| !p.is_hermitian() || p.n() != self.n) {
            return false;
        }
        let n = self.n;
        for a in 0..2 * n {
            for b in 0..2 * n {
                let expect = a != b && a % n == b % n;
                if all[a].anticommutes_unchecked(all[b]) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Key identifying the element modulo global phase.
    pub fn tableau_key(&self) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
        (self.x_images.clone(), self.z_images.clone())
    }

    pub fn apply_to_state(&self, psi: &mut CVector) {
        for g in &self.circuit {
            g.apply_to_state(psi, self.n);
        }
    }

    /// Dense unitary realized by the circuit.
    pub fn to_dense(&self) -> Result<CMatrix> {
        dense::check_dense(self.n)?;
        let d = dense::dim(self.n);
        let mut u = CMatrix::zeros(d, d);
        for col in 0..d {
            let mut psi = dense::basis_vector(d, col);
            self.apply_to_state(&mut psi);
            u.set_column(col, &psi);
        }
        Ok(u)
    }

    pub fn gate_records(&self) -> Vec<GateRecord> {
        self.circuit.iter().map(GateRecord::from).collect()
    }

    pub fn from_gate_records(n: usize, records: &[GateRecord]) -> Result<Self> {
        let gates = records.iter().map(Gate::try_from).collect::<Result<Vec<_>>>()?;
        Self::from_circuit(n, &gates)
    }
}

/// Reduces the tableau to the identity one qubit at a time and inverts the gate list.
fn synthesize(target: &CliffordElement) -> Vec<Gate> {
    let n = target.n;
    let mut work =
        CliffordElement { n, x_images: target.x_images.clone(), z_images: target.z_images.clone(), circuit: vec![] };
    let mut reducing: Vec<Gate> = Vec::new();
    let mut apply = |work: &mut CliffordElement, g: Gate| {
        work.push_gate(g);
        reducing.push(g);
    };
    use crate::pauli::Pauli1;
    for j in 0..n {
        // image of X_j to ±X on its support
        let a = work.x_images[j].clone();
        for k in j..n {
            match a.factor(k) {
                Pauli1::Y => apply(&mut work, Gate::S(k)),
                Pauli1::Z => apply(&mut work, Gate::H(k)),
                _ => {}
            }
        }
        let a = work.x_images[j].clone();
        if !a.x().get(j) {
            let k = (j + 1..n).find(|&k| a.x().get(k)).expect("image of X_j has support beyond done qubits");
            apply(&mut work, Gate::Cnot { control: k, target: j });
        }
        let a = work.x_images[j].clone();
        for k in (j + 1..n).filter(|&k| a.x().get(k)) {
            apply(&mut work, Gate::Cnot { control: j, target: k });
        }
        // image of Z_j to ±Z_j
        if work.z_images[j].factor(j) == Pauli1::Y {
            apply(&mut work, Gate::H(j));
            apply(&mut work, Gate::S(j));
            apply(&mut work, Gate::H(j));
        }
        let b = work.z_images[j].clone();
        for k in j + 1..n {
            match b.factor(k) {
                Pauli1::X => apply(&mut work, Gate::H(k)),
                Pauli1::Y => {
                    apply(&mut work, Gate::S(k));
                    apply(&mut work, Gate::H(k));
                }
                _ => {}
            }
        }
        let b = work.z_images[j].clone();
        for k in (j + 1..n).filter(|&k| b.z().get(k)) {
            apply(&mut work, Gate::Cnot { control: k, target: j });
        }
        if work.x_images[j].phase() == 2 {
            apply(&mut work, Gate::Z(j));
        }
        if work.z_images[j].phase() == 2 {
            apply(&mut work, Gate::X(j));
        }
    }
    debug_assert_eq!(work.tableau_key(), CliffordElement::identity(n).tableau_key());
    reducing.iter().rev().map(|g| g.inverse()).collect()
}

/// Symplectic vector `(x | z)` of length `2n`.
pub(crate) fn to_symplectic(p: &PauliOperator) -> Bits {
    let n = p.n();
    let mut b = Bits::zeros(2 * n);
    for j in p.x().iter_ones() {
        b.set(j, true);
    }
    for j in p.z().iter_ones() {
        b.set(n + j, true);
    }
    b
}

pub(crate) fn from_symplectic(v: &Bits, n: usize) -> PauliOperator {
    let mut x = Bits::zeros(n);
    let mut z = Bits::zeros(n);
    for j in v.iter_ones() {
        if j < n {
            x.set(j, true);
        } else {
            z.set(j - n, true);
        }
    }
    PauliOperator::from_bits(x, z).expect("equal lengths")
}

fn symplectic_form(a: &Bits, b: &Bits, n: usize) -> bool {
    let mut acc = false;
    for j in a.iter_ones() {
        let partner = if j < n { j + n } else { j - n };
        acc ^= b.get(partner);
    }
    acc
}

fn combination(basis: &[Bits], coeffs: impl Iterator<Item = bool>, len: usize) -> Bits {
    let mut v = Bits::zeros(len);
    for (b, on) in basis.iter().zip(coeffs) {
        if on {
            v.xor_assign(b);
        }
    }
    v
}

/// Projects `basis` onto the symplectic complement of the hyperbolic pair `(v, w)`.
fn complement(basis: &[Bits], v: &Bits, w: &Bits, n: usize) -> Vec<Bits> {
    let projected: Vec<Bits> = basis
        .iter()
        .map(|u| {
            let mut out = u.clone();
            if symplectic_form(u, w, n) {
                out.xor_assign(v);
            }
            if symplectic_form(u, v, n) {
                out.xor_assign(w);
            }
            out
        })
        .collect();
    gf2::rref(&projected).0
}

fn unit_basis(n: usize) -> Vec<Bits> {
    (0..2 * n)
        .map(|j| {
            let mut b = Bits::zeros(2 * n);
            b.set(j, true);
            b
        })
        .collect()
}

fn with_signs(n: usize, pairs: &[(Bits, Bits)], signs: &Bits) -> Result<CliffordElement> {
    let mut xs = Vec::with_capacity(n);
    let mut zs = Vec::with_capacity(n);
    for (j, (v, w)) in pairs.iter().enumerate() {
        let mut a = from_symplectic(v, n);
        let mut b = from_symplectic(w, n);
        if signs.get(j) {
            a = a.with_phase(2);
        }
        if signs.get(n + j) {
            b = b.with_phase(2);
        }
        xs.push(a);
        zs.push(b);
    }
    CliffordElement::from_images(xs, zs)
}

/// Uniformly random Clifford modulo global phase, with its circuit.
pub fn sample_clifford_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CliffordElement {
    let mut basis = unit_basis(n);
    let mut pairs = Vec::with_capacity(n);
    for _ in 0..n {
        let dim = basis.len();
        let v = loop {
            let v = combination(&basis, (0..dim).map(|_| rng.random::<bool>()), 2 * n);
            if !v.is_zero() {
                break v;
            }
        };
        let w = loop {
            let w = combination(&basis, (0..dim).map(|_| rng.random::<bool>()), 2 * n);
            if symplectic_form(&v, &w, n) {
                break w;
            }
        };
        basis = complement(&basis, &v, &w, n);
        pairs.push((v, w));
    }
    let signs = Bits::from_bools(&(0..2 * n).map(|_| rng.random::<bool>()).collect::<Vec<_>>());
    with_signs(n, &pairs, &signs).expect("sampled images are symplectic")
}

/// Largest `n` for exhaustive Clifford enumeration.
pub const CLIFFORD_ENUMERATION_CAP: usize = 2;

/// Every Clifford modulo phase (24 at n=1, 11520 at n=2), in a fixed order.
pub fn enumerate_cliffords(n: usize) -> Result<Vec<CliffordElement>> {
    crate::error::check_capacity("Clifford enumeration", n, CLIFFORD_ENUMERATION_CAP)?;
    fn recurse(n: usize, basis: Vec<Bits>, pairs: &mut Vec<(Bits, Bits)>, out: &mut Vec<Vec<(Bits, Bits)>>) {
        if pairs.len() == n {
            out.push(pairs.clone());
            return;
        }
        let dim = basis.len();
        let elements: Vec<Bits> =
            (1u32..(1 << dim)).map(|code| combination(&basis, (0..dim).map(|k| (code >> k) & 1 == 1), 2 * n)).collect();
        for v in &elements {
            for w in elements.iter().filter(|w| symplectic_form(v, w, n)) {
                pairs.push((v.clone(), w.clone()));
                recurse(n, complement(&basis, v, w, n), pairs, out);
                pairs.pop();
            }
        }
    }
    let mut symplectic = Vec::new();
    recurse(n, unit_basis(n), &mut Vec::new(), &mut symplectic);
    let mut out = Vec::with_capacity(symplectic.len() << (2 * n));
    for pairs in &symplectic {
        for code in 0..(1usize << (2 * n)) {
            let signs = Bits::from_bools(&(0..2 * n).map(|k| (code >> k) & 1 == 1).collect::<Vec<_>>());
            out.push(with_signs(n, pairs, &signs)?);
        }
    }
    Ok(out)
}

/// Dense conjugation check helper: `max |U P U† - C(P)|`.
pub fn dense_conjugation_error(cl: &CliffordElement, p: &PauliOperator) -> Result<f64> {
    let u = cl.to_dense()?;
    let lhs = &u * p.to_dense() * u.adjoint();
    let rhs = cl.conjugate(p)?.to_dense();
    Ok(dense::max_abs_diff(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{domain, substream};
    use std::collections::HashMap;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn single_gate_conjugation_examples() {
        let h = CliffordElement::from_circuit(1, &[Gate::H(0)]).unwrap();
        assert_eq!(h.conjugate(&p("X")).unwrap(), p("Z"));
        let cx = CliffordElement::from_circuit(2, &[Gate::Cnot { control: 0, target: 1 }]).unwrap();
        assert_eq!(cx.conjugate(&p("XI")).unwrap(), p("XX"));
        assert_eq!(cx.conjugate(&p("IZ")).unwrap(), p("ZZ"));
        let s = CliffordElement::from_circuit(1, &[Gate::S(0)]).unwrap();
        assert_eq!(s.conjugate(&p("X")).unwrap(), p("Y"));
        assert_eq!(s.conjugate(&p("Y")).unwrap(), p("-X"));
    }

    #[test]
    fn conjugation_matches_dense_for_every_gate() {
        let gates = [
            Gate::H(1),
            Gate::S(0),
            Gate::Sdg(2),
            Gate::Cnot { control: 2, target: 0 },
            Gate::X(1),
            Gate::Y(0),
            Gate::Z(2),
        ];
        for g in gates {
            let cl = CliffordElement::from_circuit(3, &[g]).unwrap();
            for l in 0..64u64 {
                let op = crate::pauli::PauliLabel::new(3, l).unwrap().to_operator();
                assert!(dense_conjugation_error(&cl, &op).unwrap() < 1e-12, "{g} on {op}");
            }
        }
    }

    #[test]
    fn random_cliffords_conjugate_like_their_circuits() {
        for i in 0..30 {
            let n = 1 + i % 3;
            let mut rng = substream(11, domain::GENERIC, i as u64);
            let cl = sample_clifford_uniform(n, &mut rng);
            assert!(cl.is_symplectic());
            for l in 0..(1u64 << (2 * n)) {
                let op = crate::pauli::PauliLabel::new(n, l).unwrap().to_operator();
                assert!(dense_conjugation_error(&cl, &op).unwrap() < 1e-12);
                let back = cl.conjugate_adjoint(&cl.conjugate(&op).unwrap()).unwrap();
                assert_eq!(back, op);
            }
        }
    }

    #[test]
    fn circuit_length_is_quadratic() {
        let mut rng = substream(3, domain::GENERIC, 0);
        for n in [4, 8, 16] {
            let cl = sample_clifford_uniform(n, &mut rng);
            assert!(cl.circuit().len() <= 4 * n * n + 8 * n, "n={n}: {}", cl.circuit().len());
        }
    }

    #[test]
    fn enumeration_counts() {
        let one = enumerate_cliffords(1).unwrap();
        assert_eq!(one.len(), 24);
        let two = enumerate_cliffords(2).unwrap();
        assert_eq!(two.len(), 11520);
        let distinct: std::collections::HashSet<_> = two.iter().map(|c| c.tableau_key()).collect();
        assert_eq!(distinct.len(), 11520);
        assert!(enumerate_cliffords(3).unwrap_err().is_capacity());
    }

    #[test]
    fn uniform_sampling_chi_square_n1() {
        let all = enumerate_cliffords(1).unwrap();
        let index: HashMap<_, usize> = all.iter().enumerate().map(|(i, c)| (c.tableau_key(), i)).collect();
        let mut counts = vec![0usize; 24];
        let mut rng = substream(5, domain::GENERIC, 0);
        let m = 100_000;
        for _ in 0..m {
            counts[index[&sample_clifford_uniform(1, &mut rng).tableau_key()]] += 1;
        }
        let e = m as f64 / 24.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
        // 23 degrees of freedom; 99.9% quantile ≈ 49.7
        assert!(chi2 < 49.7, "chi2 = {chi2}");
        let sigma = (e * (1.0 - 1.0 / 24.0)).sqrt();
        assert!(counts.iter().all(|&c| (c as f64 - e).abs() < 4.0 * sigma));
    }

    #[test]
    fn gate_records_round_trip() {
        let mut rng = substream(8, domain::GENERIC, 1);
        let cl = sample_clifford_uniform(3, &mut rng);
        let json = serde_json::to_string(&cl.gate_records()).unwrap();
        let back: Vec<GateRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(CliffordElement::from_gate_records(3, &back).unwrap(), cl);
        assert!(json.contains("\"qubits\":["));
        let bad = vec![GateRecord { gate: "cnot".into(), qubits: vec![1, 1] }];
        assert!(CliffordElement::from_gate_records(2, &bad).is_err());
    }
}
