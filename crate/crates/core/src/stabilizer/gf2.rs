//! Dense GF(2) linear algebra on rows of [`Bits`].

use crate::bits::Bits;

/// Reduced row-echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Bits]) -> (Vec<Bits>, Vec<usize>) {
    let mut m: Vec<Bits> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i].get(col)) else { continue };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Bits]) -> usize {
    rref(rows).0.len()
}

/// Reduces `v` against an RREF basis so the result has zeros in every pivot column.
pub fn reduce(v: &Bits, basis: &[Bits], pivots: &[usize]) -> Bits {
    let mut out = v.clone();
    for (row, &p) in basis.iter().zip(pivots) {
        if out.get(p) {
            out.xor_assign(row);
        }
    }
    out
}

/// Solves `A u = b` where row `i` of `A` is `rows[i]`.
///
/// Returns a particular solution together with a basis of the null space, or
/// `None` when the system is inconsistent.
pub fn solve(rows: &[Bits], rhs: &[bool], ncols: usize) -> Option<(Bits, Vec<Bits>)> {
    debug_assert_eq!(rows.len(), rhs.len());
    // augment with the right-hand side as an extra column
    let aug: Vec<Bits> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut a = Bits::zeros(ncols + 1);
            for j in r.iter_ones() {
                a.set(j, true);
            }
            a.set(ncols, b);
            a
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = Bits::zeros(ncols);
    for (row, &p) in red.iter().zip(&pivots) {
        if row.get(ncols) {
            particular.set(p, true);
        }
    }
    let mut null = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = Bits::zeros(ncols);
        v.set(free, true);
        for (row, &p) in red.iter().zip(&pivots) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        null.push(v);
    }
    Some((particular, null))
}

/// Unique solution of `A u = b`, if the system has full column rank and is consistent.
pub fn solve_unique(rows: &[Bits], rhs: &[bool], ncols: usize) -> Option<Bits> {
    match solve(rows, rhs, ncols) {
        Some((p, null)) if null.is_empty() => Some(p),
        _ => None,
    }
}

/// Inverse of a square matrix given by rows, if it exists.
pub fn invert(rows: &[Bits]) -> Option<Vec<Bits>> {
    let n = rows.len();
    let aug: Vec<Bits> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = Bits::zeros(2 * n);
            for j in r.iter_ones() {
                a.set(j, true);
            }
            a.set(n + i, true);
            a
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(
        red.iter()
            .map(|r| {
                let mut out = Bits::zeros(n);
                for j in 0..n {
                    out.set(j, r.get(n + j));
                }
                out
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn rank_and_rref() {
        let rows = [b("110"), b("011"), b("101")];
        assert_eq!(rank(&rows), 2);
        let (red, piv) = rref(&rows);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(red, vec![b("101"), b("011")]);
    }

    #[test]
    fn solves_consistent_and_rejects_inconsistent() {
        let rows = [b("110"), b("011")];
        let (p, null) = solve(&rows, &[true, false], 3).unwrap();
        assert_eq!(null.len(), 1);
        assert!(rows[0].dot(&p) && !rows[1].dot(&p));
        assert!(rows.iter().all(|r| !r.dot(&null[0])));
        assert!(solve(&[b("11"), b("11")], &[true, false], 2).is_none());
        assert_eq!(solve_unique(&[b("10"), b("11")], &[true, false], 2), Some(b("11")));
    }

    #[test]
    fn inverse_round_trip() {
        let rows = [b("110"), b("011"), b("001")];
        let inv = invert(&rows).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                // (A·A⁻¹)_{ij} = Σ_k A_ik (A⁻¹)_kj
                let v = (0..3).fold(false, |acc, k| acc ^ (rows[i].get(k) & inv[k].get(j)));
                assert_eq!(v, i == j);
            }
        }
        assert!(invert(&[b("11"), b("11")]).is_none());
    }
}
