//! n-qubit Pauli operators in the GF(2) symplectic representation.
//!
//! A [`PauliOperator`] is `i^phase · σ(x_1,z_1) ⊗ … ⊗ σ(x_n,z_n)` with the
//! Hermitian single-qubit factors σ(0,0)=I, σ(1,0)=X, σ(1,1)=Y, σ(0,1)=Z.
//!
//! Labels: `l` is the base-4 integer whose digits are I→0, X→1, Y→2, Z→3,
//! qubit 1 most significant. Text form is `"ZIXI"` with qubit 1 leftmost and
//! an optional phase prefix (`+`, `-`, `i`, `+i`, `-i`).

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::Bits;
use crate::error::{check_qubits, Error, Result};

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub const ALL: [Pauli1; 4] = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z];
    pub const NONIDENTITY: [Pauli1; 3] = [Pauli1::X, Pauli1::Y, Pauli1::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    /// Base-4 digit used by the label ordering.
    pub fn digit(self) -> u64 {
        match self {
            Pauli1::I => 0,
            Pauli1::X => 1,
            Pauli1::Y => 2,
            Pauli1::Z => 3,
        }
    }

    pub fn from_digit(d: u64) -> Self {
        Pauli1::ALL[(d & 3) as usize]
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    x: Bits,
    z: Bits,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator { x: Bits::zeros(n), z: Bits::zeros(n), phase: 0 }
    }

    /// Hermitian Pauli with the given x and z components.
    pub fn from_bits(x: Bits, z: Bits) -> Result<Self> {
        check_qubits(x.len(), z.len())?;
        Ok(PauliOperator { x, z, phase: 0 })
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    /// `p` acting on qubit `q` (0-based), identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli1) -> Self {
        let mut op = PauliOperator::identity(n);
        op.set_factor(q, p);
        op
    }

    pub fn from_factors(factors: &[Pauli1]) -> Self {
        let mut op = PauliOperator::identity(factors.len());
        for (q, &p) in factors.iter().enumerate() {
            op.set_factor(q, p);
        }
        op
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x(&self) -> &Bits {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &Bits {
        &self.z
    }

    /// Global phase as an exponent of `i`.
    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase % 2 == 0
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn factor(&self, q: usize) -> Pauli1 {
        Pauli1::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set_factor(&mut self, q: usize, p: Pauli1) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn factors(&self) -> Vec<Pauli1> {
        (0..self.n()).map(|q| self.factor(q)).collect()
    }

    /// Same operator with the phase dropped.
    pub fn unsigned(&self) -> Self {
        PauliOperator { x: self.x.clone(), z: self.z.clone(), phase: 0 }
    }

    pub(crate) fn add_phase(&mut self, k: u8) {
        self.phase = (self.phase + k) & 3;
    }

    pub(crate) fn x_mut(&mut self) -> &mut Bits {
        &mut self.x
    }

    pub(crate) fn z_mut(&mut self) -> &mut Bits {
        &mut self.z
    }

    /// `self · other` including the phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_qubits(self.n(), other.n())?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// In-place `self ← self · other`; qubit counts must agree.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &PauliOperator) {
        let mut plus = 0u32;
        let mut minus = 0u32;
        for k in 0..self.x.words().len() {
            let (x1, z1) = (self.x.words()[k], self.z.words()[k]);
            let (x2, z2) = (other.x.words()[k], other.z.words()[k]);
            let (sx1, sy1, sz1) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (sx2, sy2, sz2) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, YZ = iX, ZX = iY; reversed orders pick up -i.
            plus += ((sx1 & sy2) | (sy1 & sz2) | (sz1 & sx2)).count_ones();
            minus += ((sy1 & sx2) | (sz1 & sy2) | (sx1 & sz2)).count_ones();
        }
        let k = (plus + 3 * minus + self.phase as u32 + other.phase as u32) % 4;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        self.phase = k as u8;
    }

    /// True iff the two operators anticommute (symplectic inner product 1).
    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliOperator) -> bool {
        let mut acc = 0u32;
        for k in 0..self.x.words().len() {
            acc ^= ((self.x.words()[k] & other.z.words()[k]) ^ (self.z.words()[k] & other.x.words()[k])).count_ones();
        }
        acc & 1 == 1
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        check_qubits(self.n(), other.n())?;
        Ok(!self.anticommutes_unchecked(other))
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones()
    }

    pub fn support(&self) -> Bits {
        self.x.or(&self.z)
    }

    pub fn weight_and_support(&self) -> (usize, Bits) {
        let s = self.support();
        (s.count_ones(), s)
    }

    pub fn label(&self) -> Result<PauliLabel> {
        PauliLabel::from_operator(self)
    }

    /// Bit masks of the x and z parts over computational-basis indices.
    pub(crate) fn index_masks(&self) -> (usize, usize) {
        (self.x.to_index(), self.z.to_index())
    }

    /// Overall factor `c` with `P|u⟩ = c(u)|u ⊕ x⟩` is `base · (-1)^{popcount(z & u)}`.
    pub(crate) fn basis_phase_base(&self) -> Complex64 {
        let y_count = {
            let mut c = 0usize;
            for k in 0..self.x.words().len() {
                c += (self.x.words()[k] & self.z.words()[k]).count_ones() as usize;
            }
            c
        };
        i_pow((self.phase as usize + y_count) as u8)
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = 1usize << self.n();
        let (xm, zm) = self.index_masks();
        let base = self.basis_phase_base();
        let mut m = DMatrix::zeros(d, d);
        for u in 0..d {
            let sign = if (zm & u).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            m[(u ^ xm, u)] = base * sign;
        }
        m
    }
}

pub(crate) fn i_pow(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        f.write_str(prefix)?;
        for q in 0..self.n() {
            write!(f, "{}", self.factor(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        let factors = body
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli1::I),
                'X' => Ok(Pauli1::X),
                'Y' => Ok(Pauli1::Y),
                'Z' => Ok(Pauli1::Z),
                _ => Err(Error::InvalidLabel(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliOperator::from_factors(&factors).with_phase(phase))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Largest qubit count whose labels fit the `u64` index.
pub const MAX_LABEL_QUBITS: usize = 31;

/// Integer label `l ∈ [0, 4^n)` of a Hermitian Pauli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel {
    n: usize,
    index: u64,
}

/// `(w, ν_w, 𝐢_w)` view of a label: Pauli weight, rank of the support among
/// weight-`w` supports in lexicographic order (0-based), and the nonidentity
/// factors on the support in ascending qubit order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelDecomposition {
    pub weight: usize,
    pub support_rank: u64,
    pub directions: Vec<Pauli1>,
}

impl PauliLabel {
    pub fn new(n: usize, index: u64) -> Result<Self> {
        if n == 0 || n > MAX_LABEL_QUBITS {
            return Err(Error::InvalidLabel(format!("unsupported qubit count {n}")));
        }
        if index >= 1u64 << (2 * n) {
            return Err(Error::InvalidLabel(format!("label {index} out of range for n={n}")));
        }
        Ok(PauliLabel { n, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn count(n: usize) -> u64 {
        1u64 << (2 * n)
    }

    pub fn factor(&self, q: usize) -> Pauli1 {
        Pauli1::from_digit(self.index >> (2 * (self.n - 1 - q)))
    }

    pub fn to_operator(&self) -> PauliOperator {
        let factors: Vec<Pauli1> = (0..self.n).map(|q| self.factor(q)).collect();
        PauliOperator::from_factors(&factors)
    }

    pub fn from_operator(p: &PauliOperator) -> Result<Self> {
        let n = p.n();
        if n == 0 || n > MAX_LABEL_QUBITS {
            return Err(Error::InvalidLabel(format!("unsupported qubit count {n}")));
        }
        let index = (0..n).fold(0u64, |acc, q| (acc << 2) | p.factor(q).digit());
        Ok(PauliLabel { n, index })
    }

    pub fn weight(&self) -> usize {
        (0..self.n).filter(|&q| self.factor(q) != Pauli1::I).count()
    }

    pub fn support(&self) -> Bits {
        let mut b = Bits::zeros(self.n);
        for q in 0..self.n {
            b.set(q, self.factor(q) != Pauli1::I);
        }
        b
    }

    pub fn decompose(&self) -> LabelDecomposition {
        let support = self.support();
        let positions: Vec<usize> = support.iter_ones().collect();
        LabelDecomposition {
            weight: positions.len(),
            support_rank: combination_rank(self.n, &positions),
            directions: positions.iter().map(|&q| self.factor(q)).collect(),
        }
    }

    pub fn from_decomposition(n: usize, d: &LabelDecomposition) -> Result<Self> {
        if d.directions.len() != d.weight || d.weight > n {
            return Err(Error::InvalidLabel(format!("inconsistent decomposition {d:?}")));
        }
        if d.directions.contains(&Pauli1::I) {
            return Err(Error::InvalidLabel("identity factor on the support".into()));
        }
        let positions = combination_unrank(n, d.weight, d.support_rank)
            .ok_or_else(|| Error::InvalidLabel(format!("support rank {} out of range", d.support_rank)))?;
        let mut op = PauliOperator::identity(n);
        for (&q, &p) in positions.iter().zip(&d.directions) {
            op.set_factor(q, p);
        }
        PauliLabel::from_operator(&op)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.factor(q).symbol())?;
        }
        Ok(())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Lexicographic rank of an ascending position tuple among all `C(n, w)` tuples.
fn combination_rank(n: usize, positions: &[usize]) -> u64 {
    let w = positions.len();
    let mut rank = 0u64;
    let mut start = 0usize;
    for (i, &p) in positions.iter().enumerate() {
        for skipped in start..p {
            rank += binomial(n - skipped - 1, w - i - 1);
        }
        start = p + 1;
    }
    rank
}

fn combination_unrank(n: usize, w: usize, mut rank: u64) -> Option<Vec<usize>> {
    if rank >= binomial(n, w) {
        return None;
    }
    let mut out = Vec::with_capacity(w);
    let mut next = 0usize;
    for i in 0..w {
        loop {
            let block = binomial(n - next - 1, w - i - 1);
            if rank < block {
                out.push(next);
                next += 1;
                break;
            }
            rank -= block;
            next += 1;
        }
    }
    Some(out)
}

/// Supports of weight `w` in lexicographic order of their position tuples.
pub fn supports_of_weight(n: usize, w: usize) -> Vec<Bits> {
    let total = binomial(n, w);
    (0..total)
        .map(|r| {
            let mut b = Bits::zeros(n);
            for q in combination_unrank(n, w, r).expect("rank in range") {
                b.set(q, true);
            }
            b
        })
        .collect()
}

/// Supports of weight at most `max_weight`, by ascending weight then lexicographically.
pub fn supports_up_to(n: usize, max_weight: usize) -> Vec<Bits> {
    (0..=max_weight.min(n)).flat_map(|w| supports_of_weight(n, w)).collect()
}

/// Labels in ascending label order, optionally restricted to weight `≤ max_weight`.
pub fn enumerate_paulis(n: usize, max_weight: Option<usize>) -> Result<Vec<PauliLabel>> {
    PauliLabel::new(n, 0)?;
    match max_weight {
        None => Ok((0..PauliLabel::count(n)).map(|index| PauliLabel { n, index }).collect()),
        Some(w) if n <= 10 => {
            Ok((0..PauliLabel::count(n)).map(|index| PauliLabel { n, index }).filter(|l| l.weight() <= w).collect())
        }
        Some(w) => {
            let mut out = Vec::new();
            for support in supports_up_to(n, w) {
                let positions: Vec<usize> = support.iter_ones().collect();
                let k = positions.len();
                for code in 0..3usize.pow(k as u32) {
                    let mut op = PauliOperator::identity(n);
                    let mut c = code;
                    for &q in &positions {
                        op.set_factor(q, Pauli1::NONIDENTITY[c % 3]);
                        c /= 3;
                    }
                    out.push(PauliLabel::from_operator(&op)?);
                }
            }
            out.sort();
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_y_is_i_z() {
        let r = p("X").multiply(&p("Y")).unwrap();
        assert_eq!(r, p("iZ"));
        assert_eq!(p("Y").multiply(&p("X")).unwrap(), p("-iZ"));
    }

    #[test]
    fn hermitian_paulis_square_to_identity() {
        for s in ["X", "Y", "Z", "XYZ", "YYI", "ZZZZ"] {
            let a = p(s);
            let sq = a.multiply(&a).unwrap();
            assert!(sq.is_identity());
            assert_eq!(sq.phase(), 0);
        }
    }

    #[test]
    fn disjoint_support_product() {
        let r = p("ZI").multiply(&p("IX")).unwrap();
        assert_eq!(r, p("ZX"));
    }

    #[test]
    fn mismatched_counts_are_rejected() {
        assert!(p("X").multiply(&p("XX")).is_err());
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("XI").commutes(&p("ZZ")).unwrap());
        assert!(p("ZZ").commutes(&p("XX")).unwrap());
        for s in ["X", "Y", "Z", "I"] {
            assert!(p(s).commutes(&p("I")).unwrap());
        }
    }

    #[test]
    fn weight_and_support_examples() {
        let (w, v) = p("ZIXI").weight_and_support();
        assert_eq!(w, 2);
        assert_eq!(v.to_string(), "1010");
        let (w, v) = p("III").weight_and_support();
        assert_eq!((w, v.to_string()), (0, "000".to_string()));
        let (w, v) = p("YYY").weight_and_support();
        assert_eq!((w, v.to_string()), (3, "111".to_string()));
    }

    #[test]
    fn enumeration_counts() {
        let one: Vec<String> = enumerate_paulis(1, None).unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(one, ["I", "X", "Y", "Z"]);
        assert_eq!(enumerate_paulis(2, None).unwrap().len(), 16);
        assert_eq!(enumerate_paulis(3, Some(1)).unwrap().len(), 10);
        // large-n path agrees with the filtered path
        let big = enumerate_paulis(12, Some(2)).unwrap();
        assert_eq!(big.len(), 1 + 12 * 3 + 66 * 9);
        assert!(big.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn label_ordering_matches_base_four_digits() {
        let l = PauliLabel::from_operator(&p("ZX")).unwrap();
        assert_eq!(l.index(), 3 * 4 + 1);
        assert_eq!(PauliLabel::new(2, 13).unwrap().to_operator(), p("ZX"));
    }

    #[test]
    fn decomposition_round_trip_and_multiplicity() {
        let n = 4;
        let mut per_support = std::collections::BTreeMap::new();
        for l in enumerate_paulis(n, None).unwrap() {
            let d = l.decompose();
            assert_eq!(PauliLabel::from_decomposition(n, &d).unwrap(), l);
            *per_support.entry((d.weight, d.support_rank)).or_insert(0u64) += 1;
        }
        for ((w, _), count) in per_support {
            assert_eq!(count, 3u64.pow(w as u32));
        }
    }

    #[test]
    fn supports_are_lexicographic() {
        let s: Vec<String> = supports_of_weight(4, 2).iter().map(|b| b.to_string()).collect();
        assert_eq!(s, ["1100", "1010", "1001", "0110", "0101", "0011"]);
    }

    #[test]
    fn display_parse_round_trip_with_phase() {
        for s in ["ZIXI", "-XY", "iZ", "-iYYZ"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("+iX"), p("iX"));
        assert!("XQ".parse::<PauliOperator>().is_err());
        assert!("".parse::<PauliOperator>().is_err());
    }
}
