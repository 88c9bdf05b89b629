//! Stabilizer frames, candidate intermediary sets and the pairing solver.

use crate::bits::Bits;
use crate::error::{check_qubits, Error, Result};
use crate::pauli::{Pauli1, PauliOperator};
use crate::stabilizer::clifford::{from_symplectic, to_symplectic, CliffordElement};
use crate::stabilizer::gf2;

/// `n` commuting, independent Hermitian generators with signs: the state
/// stabilized by every `(-1)^{signs_i} g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerFrame {
    generators: Vec<PauliOperator>,
    /// Bit `i` set means generator `i` carries sign −1.
    signs: Bits,
}

impl StabilizerFrame {
    /// Validates and normalizes: any ±1 phase on a generator moves into `signs`.
    pub fn new(generators: Vec<PauliOperator>, signs: Bits) -> Result<Self> {
        let n = generators.len();
        if n == 0 {
            return Err(Error::MalformedFrame("no generators".into()));
        }
        if signs.len() != n {
            return Err(Error::MalformedFrame(format!("{} signs for {n} generators", signs.len())));
        }
        let mut signs = signs;
        let mut gens = Vec::with_capacity(n);
        for (i, g) in generators.into_iter().enumerate() {
            if g.n() != n {
                return Err(Error::MalformedFrame(format!("generator {g} acts on {} qubits, expected {n}", g.n())));
            }
            if !g.is_hermitian() {
                return Err(Error::MalformedFrame(format!("generator {g} is not Hermitian")));
            }
            if g.phase() == 2 {
                signs.flip(i);
            }
            gens.push(g.unsigned());
        }
        for a in 0..n {
            for b in a + 1..n {
                if gens[a].anticommutes_unchecked(&gens[b]) {
                    return Err(Error::MalformedFrame(format!("{} and {} anticommute", gens[a], gens[b])));
                }
            }
        }
        if gf2::rank(&gens.iter().map(to_symplectic).collect::<Vec<_>>()) != n {
            return Err(Error::MalformedFrame("generators are not independent".into()));
        }
        Ok(StabilizerFrame { generators: gens, signs })
    }

    /// `(𝓑_Z, all +)`, the frame of `|0…0⟩`.
    pub fn computational(n: usize) -> Self {
        StabilizerFrame {
            generators: (0..n).map(|j| PauliOperator::single(n, j, Pauli1::Z)).collect(),
            signs: Bits::zeros(n),
        }
    }

    /// Frame of `C|0…0⟩`: generators `C Z_j C†`.
    pub fn of_clifford(c: &CliffordElement) -> Self {
        let n = c.n();
        let mut signs = Bits::zeros(n);
        let generators = (0..n)
            .map(|j| {
                let g = c.z_image(j).clone();
                if g.phase() == 2 {
                    signs.set(j, true);
                }
                g.unsigned()
            })
            .collect();
        StabilizerFrame { generators, signs }
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn signs(&self) -> &Bits {
        &self.signs
    }

    /// The same generators with different signs.
    pub fn with_signs(&self, signs: Bits) -> Result<Self> {
        if signs.len() != self.n() {
            return Err(Error::MalformedFrame(format!("{} signs for {} generators", signs.len(), self.n())));
        }
        Ok(StabilizerFrame { generators: self.generators.clone(), signs })
    }

    /// Signs of the measured state `C|m⟩` when `self` is the frame of `C|0…0⟩`.
    pub fn measured_signs(&self, outcome: &Bits) -> Bits {
        self.signs.xor(outcome)
    }

    /// Signed generator `(-1)^{s_i} g_i`.
    pub fn signed_generator(&self, i: usize) -> PauliOperator {
        let g = self.generators[i].clone();
        if self.signs.get(i) {
            g.with_phase(2)
        } else {
            g
        }
    }

    /// Dense state vector stabilized by the frame (small `n`).
    pub fn to_state(&self) -> Result<crate::dense::CVector> {
        use crate::dense;
        dense::check_dense(self.n())?;
        let d = dense::dim(self.n());
        let mut proj = dense::CMatrix::identity(d, d);
        for i in 0..self.n() {
            let g = self.signed_generator(i).to_dense();
            proj = (&proj * (dense::CMatrix::identity(d, d) + g)).scale(0.5);
        }
        // any nonzero column of the rank-one projector
        let col = (0..d).max_by(|&a, &b| proj.column(a).norm().total_cmp(&proj.column(b).norm())).expect("d > 0");
        let v = proj.column(col).into_owned();
        let norm = v.norm();
        Ok(v.unscale(norm))
    }
}

/// Paulis `P` that anticommute with generator `g_i` exactly when the sign of `g_i`
/// flips between `s_in` and `s_out`: a coset `c·L` of the stabilizer group `L`.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    n: usize,
    generators: Vec<PauliOperator>,
    flips: Bits,
    representative: PauliOperator,
}

/// Canonical description of a candidate coset, equal for equal sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetKey {
    /// RREF rows of the stabilizer group in symplectic form.
    pub group: Vec<Bits>,
    /// Coset representative reduced against `group`.
    pub offset: Bits,
}

/// Largest `n` for which [`CandidateSet::iter`] will enumerate the `D` members.
pub const CANDIDATE_ENUMERATION_CAP: usize = 20;

/// Rows `r` such that `r · u = ⟨P(u), g⟩` for unknown `u = (x | z)`.
fn constraint_row(g: &PauliOperator) -> Bits {
    let n = g.n();
    let mut row = Bits::zeros(2 * n);
    for j in g.z().iter_ones() {
        row.set(j, true);
    }
    for j in g.x().iter_ones() {
        row.set(n + j, true);
    }
    row
}

pub fn candidate_paulis(frame: &StabilizerFrame, s_out: &Bits) -> Result<CandidateSet> {
    let n = frame.n();
    if s_out.len() != n {
        return Err(Error::MalformedFrame(format!("{} outcome signs for {n} generators", s_out.len())));
    }
    let flips = frame.signs.xor(s_out);
    let rows: Vec<Bits> = frame.generators.iter().map(constraint_row).collect();
    let (particular, _) = gf2::solve(&rows, &flips.to_bools(), 2 * n)
        .ok_or_else(|| Error::MalformedFrame("inconsistent constraints".into()))?;
    Ok(CandidateSet { n, generators: frame.generators.clone(), flips, representative: from_symplectic(&particular, n) })
}

impl CandidateSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of members, `D = 2^n` (saturating).
    pub fn len(&self) -> u128 {
        1u128.checked_shl(self.n as u32).unwrap_or(u128::MAX)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn representative(&self) -> &PauliOperator {
        &self.representative
    }

    pub fn flips(&self) -> &Bits {
        &self.flips
    }

    /// Membership modulo phase.
    pub fn contains(&self, p: &PauliOperator) -> bool {
        p.n() == self.n
            && self.generators.iter().enumerate().all(|(i, g)| p.anticommutes_unchecked(g) == self.flips.get(i))
    }

    /// The `D` members as unsigned Paulis.
    pub fn iter(&self) -> Result<impl Iterator<Item = PauliOperator> + '_> {
        crate::error::check_capacity("candidate enumeration", self.n, CANDIDATE_ENUMERATION_CAP)?;
        Ok((0u64..(1u64 << self.n)).map(move |code| {
            let mut p = self.representative.clone();
            for (i, g) in self.generators.iter().enumerate() {
                if (code >> i) & 1 == 1 {
                    p.mul_assign_unchecked(g);
                }
            }
            p.unsigned()
        }))
    }

    pub fn canonical_key(&self) -> CosetKey {
        let (group, pivots) = gf2::rref(&self.generators.iter().map(to_symplectic).collect::<Vec<_>>());
        let offset = gf2::reduce(&to_symplectic(&self.representative), &group, &pivots);
        CosetKey { group, offset }
    }
}

impl CosetKey {
    pub fn n(&self) -> usize {
        self.offset.len() / 2
    }

    /// Rows of the constraint system satisfied by every member: `⟨P, g⟩ = flip(g)`
    /// for a basis of the group, recovered from the representative.
    fn constraints(&self) -> (Vec<Bits>, Vec<bool>) {
        let n = self.n();
        let rep = from_symplectic(&self.offset, n);
        let rows: Vec<Bits> = self.group.iter().map(|g| constraint_row(&from_symplectic(g, n))).collect();
        let rhs = self.group.iter().map(|g| rep.anticommutes_unchecked(&from_symplectic(g, n))).collect();
        (rows, rhs)
    }

    pub fn representative(&self) -> PauliOperator {
        from_symplectic(&self.offset, self.n())
    }

    pub fn contains(&self, p: &PauliOperator) -> bool {
        let (rows, rhs) = self.constraints();
        let v = to_symplectic(p);
        rows.iter().zip(rhs).all(|(r, b)| r.dot(&v) == b)
    }
}

/// The unique Pauli lying in both candidate sets, if the two groups only share the identity.
pub fn intersect_cosets(a: &CosetKey, b: &CosetKey) -> Option<PauliOperator> {
    let n = a.n();
    if b.n() != n {
        return None;
    }
    let (mut rows, mut rhs) = a.constraints();
    let (rb, hb) = b.constraints();
    rows.extend(rb);
    rhs.extend(hb);
    gf2::solve_unique(&rows, &rhs, 2 * n).map(|u| from_symplectic(&u, n))
}

/// Solves the `2n` commutation constraints from two experiments.
///
/// `frame_x` is the prepared state's frame and `s_x` the signs of the measured
/// state in the same generators. Returns `None` when the constraints do not
/// pin down a single Pauli.
pub fn solve_intermediary_pauli(
    frame_a: &StabilizerFrame,
    s_a: &Bits,
    frame_b: &StabilizerFrame,
    s_b: &Bits,
) -> Result<Option<PauliOperator>> {
    check_qubits(frame_a.n(), frame_b.n())?;
    let n = frame_a.n();
    for (f, s) in [(frame_a, s_a), (frame_b, s_b)] {
        if s.len() != f.n() {
            return Err(Error::MalformedFrame(format!("{} signs for {} generators", s.len(), f.n())));
        }
    }
    let mut rows = Vec::with_capacity(2 * n);
    let mut rhs = Vec::with_capacity(2 * n);
    for (f, s) in [(frame_a, s_a), (frame_b, s_b)] {
        let flips = f.signs.xor(s);
        for (i, g) in f.generators.iter().enumerate() {
            rows.push(constraint_row(g));
            rhs.push(flips.get(i));
        }
    }
    Ok(gf2::solve_unique(&rows, &rhs, 2 * n).map(|u| from_symplectic(&u, n)))
}

/// True iff `{C_A Z_j C_A†} ∪ {C_B Z_j C_B†}` spans the full `2n`-dimensional space.
pub fn frames_independent(a: &CliffordElement, b: &CliffordElement) -> Result<bool> {
    check_qubits(a.n(), b.n())?;
    let n = a.n();
    let rows: Vec<Bits> =
        (0..n).map(|j| to_symplectic(a.z_image(j))).chain((0..n).map(|j| to_symplectic(b.z_image(j)))).collect();
    Ok(gf2::rank(&rows) == 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliLabel;
    use crate::stabilizer::clifford::{enumerate_cliffords, sample_clifford_uniform, Gate};

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn one_qubit_solver_examples() {
        let z = StabilizerFrame::computational(1);
        let x = StabilizerFrame::new(vec![p("X")], b("0")).unwrap();
        assert_eq!(solve_intermediary_pauli(&z, &b("1"), &x, &b("0")).unwrap(), Some(p("X")));
        assert_eq!(solve_intermediary_pauli(&z, &b("1"), &z, &b("0")).unwrap(), None);
    }

    #[test]
    fn candidate_examples() {
        let z = StabilizerFrame::computational(1);
        let plus: Vec<String> = candidate_paulis(&z, &b("0")).unwrap().iter().unwrap().map(|p| p.to_string()).collect();
        let mut plus_sorted = plus.clone();
        plus_sorted.sort();
        assert_eq!(plus_sorted, vec!["I", "Z"]);
        let minus = candidate_paulis(&z, &b("1")).unwrap();
        assert!(minus.contains(&p("X")) && minus.contains(&p("Y")) && !minus.contains(&p("Z")));
    }

    #[test]
    fn candidate_set_has_d_members_and_matches_brute_force() {
        let mut rng = crate::rng::substream(4, crate::rng::domain::GENERIC, 0);
        for n in 1..=3 {
            let cl = sample_clifford_uniform(n, &mut rng);
            let frame = StabilizerFrame::of_clifford(&cl);
            for code in 0..(1usize << n) {
                let s_out = frame.measured_signs(&Bits::from_index(n, code));
                let set = candidate_paulis(&frame, &s_out).unwrap();
                let members: Vec<PauliOperator> = set.iter().unwrap().collect();
                assert_eq!(members.len(), 1 << n);
                let brute: Vec<u64> = (0..PauliLabel::count(n))
                    .filter(|&l| set.contains(&PauliLabel::new(n, l).unwrap().to_operator()))
                    .collect();
                assert_eq!(brute.len(), 1 << n);
                let key = set.canonical_key();
                for m in &members {
                    assert!(brute.contains(&m.label().unwrap().index()));
                    assert!(key.contains(m));
                }
            }
        }
    }

    #[test]
    fn solver_agrees_with_brute_force_over_all_pairs_n2() {
        let cliffords = enumerate_cliffords(2).unwrap();
        let mut rng = crate::rng::substream(9, crate::rng::domain::GENERIC, 0);
        use rand::Rng;
        for _ in 0..300 {
            let a = &cliffords[rng.random_range(0..cliffords.len())];
            let c = &cliffords[rng.random_range(0..cliffords.len())];
            let (fa, fb) = (StabilizerFrame::of_clifford(a), StabilizerFrame::of_clifford(c));
            let sa = fa.measured_signs(&Bits::from_index(2, rng.random_range(0..4)));
            let sb = fb.measured_signs(&Bits::from_index(2, rng.random_range(0..4)));
            let (ca, cb) = (candidate_paulis(&fa, &sa).unwrap(), candidate_paulis(&fb, &sb).unwrap());
            let common: Vec<PauliOperator> = (0..16)
                .map(|l| PauliLabel::new(2, l).unwrap().to_operator())
                .filter(|q| ca.contains(q) && cb.contains(q))
                .collect();
            let solved = solve_intermediary_pauli(&fa, &sa, &fb, &sb).unwrap();
            let independent = frames_independent(a, c).unwrap();
            assert_eq!(solved.is_some(), independent);
            if let Some(q) = solved {
                assert_eq!(common, vec![q.clone()]);
                assert_eq!(intersect_cosets(&ca.canonical_key(), &cb.canonical_key()), Some(q));
            } else {
                assert_ne!(common.len(), 1);
            }
        }
    }

    #[test]
    fn independence_examples() {
        let id = CliffordElement::identity(1);
        let h = CliffordElement::from_circuit(1, &[Gate::H(0)]).unwrap();
        assert!(frames_independent(&id, &h).unwrap());
        assert!(!frames_independent(&h, &h).unwrap());
    }

    #[test]
    fn frames_are_validated() {
        assert!(StabilizerFrame::new(vec![p("XI"), p("ZI")], b("00")).is_err());
        assert!(StabilizerFrame::new(vec![p("ZZ"), p("ZZ")], b("00")).is_err());
        assert!(StabilizerFrame::new(vec![p("iZ")], b("0")).is_err());
        let f = StabilizerFrame::new(vec![p("-XX"), p("ZZ")], b("00")).unwrap();
        assert_eq!(f.signs(), &b("10"));
    }

    #[test]
    fn frame_state_is_stabilized() {
        let mut rng = crate::rng::substream(2, crate::rng::domain::GENERIC, 0);
        let cl = sample_clifford_uniform(3, &mut rng);
        let frame = StabilizerFrame::of_clifford(&cl);
        let psi = frame.to_state().unwrap();
        let mut direct = crate::dense::basis_vector(8, 0);
        cl.apply_to_state(&mut direct);
        let overlap = (psi.adjoint() * &direct)[(0, 0)].norm();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lagrangian_transversality_count_n2() {
        // Stabilizer groups of the 60 two-qubit stabilizer states collapse to 15 Lagrangian subspaces.
        let cliffords = enumerate_cliffords(2).unwrap();
        let mut groups: Vec<Vec<Bits>> = cliffords
            .iter()
            .map(|c| gf2::rref(&(0..2).map(|j| to_symplectic(c.z_image(j))).collect::<Vec<_>>()).0)
            .collect();
        groups.sort();
        groups.dedup();
        assert_eq!(groups.len(), 15);
        let mut transverse = 0;
        for a in &groups {
            for c in &groups {
                let rows: Vec<Bits> = a.iter().chain(c).cloned().collect();
                if gf2::rank(&rows) == 4 {
                    transverse += 1;
                }
            }
        }
        // 8/15 of ordered pairs
        assert_eq!(transverse * 15, 8 * 15 * 15);
    }
}
