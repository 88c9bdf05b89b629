//! The `2^n + 1` mutually unbiased bases of `n` qubits from GF(2^n).
//!
//! Basis `J = 0` is the computational basis. For field element `a`, basis
//! `J = 1 + a` is stabilized by `X(e_j) Z(M_a e_j)` with `(M_a)_{ij} = Tr(a xⁱ xʲ)`.
//! `M_a` is symmetric so the generators commute, and `M_a - M_b = M_{a+b}` is
//! invertible for `a ≠ b` so different bases share no nonidentity Pauli.

use crate::bits::Bits;
use crate::error::{check_capacity, Error, Result};
use crate::pauli::PauliOperator;
use crate::stabilizer::clifford::{CliffordElement, Gate};
use crate::stabilizer::frame::StabilizerFrame;

/// Largest `n` for field arithmetic and basis construction.
pub const MUB_QUBIT_CAP: usize = 62;
/// Largest `n` for which [`build_mub_family`] lists every basis.
pub const MUB_FAMILY_CAP: usize = 10;

/// GF(2^n) with elements as bit masks of polynomial coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2n {
    n: usize,
    /// Irreducible modulus including the `x^n` term.
    modulus: u128,
}

fn poly_mulmod(a: u128, b: u128, modulus: u128, n: usize) -> u128 {
    let mut a = a;
    let mut b = b;
    let mut out = 0u128;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> n) & 1 == 1 {
            a ^= modulus;
        }
    }
    out
}

fn poly_degree(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

fn poly_mod(mut a: u128, m: u128) -> u128 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test.
fn is_irreducible(f: u128, n: usize) -> bool {
    let mut power = 2u128; // x
    for _ in 1..=n / 2 {
        power = poly_mulmod(power, power, f, n);
        if poly_gcd(f, power ^ 2) != 1 {
            return false;
        }
    }
    true
}

impl Gf2n {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("n", "field degree must be at least 1"));
        }
        check_capacity("GF(2^n) construction", n, MUB_QUBIT_CAP)?;
        let top = 1u128 << n;
        let modulus = (0..top)
            .map(|low| top | low)
            .find(|&f| f & 1 == 1 && is_irreducible(f, n))
            .expect("irreducible polynomials exist in every degree");
        Ok(Gf2n { n, modulus })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        poly_mulmod(a as u128, b as u128, self.modulus, self.n) as u64
    }

    /// Absolute trace `Σ_k a^{2^k}`, an element of GF(2).
    pub fn trace(&self, a: u64) -> bool {
        let mut acc = 0u64;
        let mut p = a;
        for _ in 0..self.n {
            acc ^= p;
            p = self.mul(p, p);
        }
        debug_assert!(acc <= 1);
        acc == 1
    }

    /// `x^k` reduced.
    pub fn x_pow(&self, k: usize) -> u64 {
        let mut out = 1u64;
        for _ in 0..k {
            out = self.mul(out, 2);
        }
        out
    }

    /// Symmetric matrix `(M_a)_{ij} = Tr(a · x^{i+j})` as rows.
    pub fn trace_form(&self, a: u64) -> Vec<Bits> {
        let n = self.n;
        let powers: Vec<u64> = (0..2 * n - 1).map(|k| self.x_pow(k)).collect();
        (0..n)
            .map(|i| {
                let mut row = Bits::zeros(n);
                for j in 0..n {
                    row.set(j, self.trace(self.mul(a, powers[i + j])));
                }
                row
            })
            .collect()
    }
}

/// One basis `J` with its frame and change-of-basis Clifford `𝒱_J`.
#[derive(Debug, Clone)]
pub struct MubBasis {
    pub j: u64,
    /// Frame of `𝒱_J|0…0⟩`.
    pub frame: StabilizerFrame,
    pub change_of_basis: CliffordElement,
}

impl MubBasis {
    /// Frame of `|ψ_{J,m}⟩ = 𝒱_J|m⟩`.
    pub fn state_frame(&self, m: &Bits) -> StabilizerFrame {
        self.frame.with_signs(self.frame.signs().xor(m)).expect("sign length matches")
    }

    /// Generators without signs: a maximal commuting class once the identity is removed.
    pub fn unsigned_generators(&self) -> Vec<PauliOperator> {
        self.frame.generators().to_vec()
    }

    /// The `D - 1` nonidentity elements of the stabilizer group (small `n`).
    pub fn class(&self) -> Result<Vec<PauliOperator>> {
        let n = self.frame.n();
        check_capacity("class enumeration", n, crate::stabilizer::frame::CANDIDATE_ENUMERATION_CAP)?;
        Ok((1u64..(1 << n))
            .map(|code| {
                let mut p = PauliOperator::identity(n);
                for (i, g) in self.frame.generators().iter().enumerate() {
                    if (code >> i) & 1 == 1 {
                        p.mul_assign_unchecked(g);
                    }
                }
                p.unsigned()
            })
            .collect())
    }
}

/// Lazily constructed family; `basis(J)` for any `J ∈ [0, 2^n]`.
#[derive(Debug, Clone)]
pub struct MubFamily {
    field: Gf2n,
}

impl MubFamily {
    pub fn new(n: usize) -> Result<Self> {
        Ok(MubFamily { field: Gf2n::new(n)? })
    }

    pub fn n(&self) -> usize {
        self.field.n
    }

    /// `D + 1`.
    pub fn len(&self) -> u64 {
        (1u64 << self.field.n) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> &Gf2n {
        &self.field
    }

    /// Circuit for `𝒱_J`: identity for `J = 0`; otherwise H on every qubit, S where
    /// `M_jj = 1`, CZ where `M_ij = 1`.
    pub fn circuit(&self, j: u64) -> Result<Vec<Gate>> {
        let n = self.field.n;
        if j >= self.len() {
            return Err(Error::validation("J", format!("basis label {j} outside [0, {}]", self.len() - 1)));
        }
        if j == 0 {
            return Ok(Vec::new());
        }
        let m = self.field.trace_form(j - 1);
        let mut gates: Vec<Gate> = (0..n).map(Gate::H).collect();
        for (q, row) in m.iter().enumerate() {
            if row.get(q) {
                gates.push(Gate::S(q));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if m[a].get(b) {
                    gates.extend([Gate::H(b), Gate::Cnot { control: a, target: b }, Gate::H(b)]);
                }
            }
        }
        Ok(gates)
    }

    pub fn basis(&self, j: u64) -> Result<MubBasis> {
        let n = self.field.n;
        let change_of_basis = CliffordElement::from_circuit(n, &self.circuit(j)?)?;
        let frame = StabilizerFrame::of_clifford(&change_of_basis);
        Ok(MubBasis { j, frame, change_of_basis })
    }
}

/// All `D + 1` bases in order `J = 0, 1, …, D`.
pub fn build_mub_family(n: usize) -> Result<Vec<MubBasis>> {
    check_capacity("full MUB family", n, MUB_FAMILY_CAP)?;
    let family = MubFamily::new(n)?;
    (0..family.len()).map(|j| family.basis(j)).collect()
}
