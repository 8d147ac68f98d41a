//! Backtracking search for a relabeling taking one quiver onto another.

use crate::error::{Error, Result};

use super::{Permutation, Sign, ValuedQuiver};

/// Largest rank accepted by the symmetry searches.
pub const SYMMETRY_RANK_LIMIT: usize = 24;

pub(crate) fn check_rank(q: &ValuedQuiver) -> Result<()> {
    if q.n() > SYMMETRY_RANK_LIMIT {
        return Err(Error::TooLarge { rank: q.n(), limit: SYMMETRY_RANK_LIMIT });
    }
    Ok(())
}

/// Per-vertex invariant: `d`, incident exchangeable valuations as a sorted
/// multiset, and the row of frozen valuations (frozen vertices are labeled).
type Signature = (u64, Vec<(i64, i64)>, Vec<(i64, i64)>);

fn signature(q: &ValuedQuiver, v: usize, sign: i64) -> Signature {
    let mut inc: Vec<(i64, i64)> = (0..q.n())
        .filter(|&j| j != v && q.b(v, j) != 0)
        .map(|j| (sign * q.b(v, j), sign * q.b(j, v)))
        .collect();
    inc.sort_unstable();
    let frozen = (q.n()..q.size()).map(|f| (sign * q.b(v, f), sign * q.b(f, v))).collect();
    (q.d()[v], inc, frozen)
}

/// Finds `σ` (and a sign when `allow_sign`) with `σ(q1) = ±q2`.
///
/// Frozen vertices must agree pointwise; frozen-frozen arrows are ignored.
/// A plus sign is always tried first.
pub fn find_symmetry(
    q1: &ValuedQuiver,
    q2: &ValuedQuiver,
    allow_sign: bool,
) -> Result<Option<(Permutation, Sign)>> {
    check_rank(q1)?;
    if q1.n() != q2.n() || q1.m() != q2.m() {
        return Ok(None);
    }
    let (n, s) = (q1.n(), q1.size());
    if (n..s).any(|f| q1.d()[f] != q2.d()[f]) {
        return Ok(None);
    }
    let signs: &[Sign] = if allow_sign { &[Sign::Plus, Sign::Minus] } else { &[Sign::Plus] };
    for &sign in signs {
        let e = if sign == Sign::Plus { 1 } else { -1 };
        let sig1: Vec<Signature> = (0..n).map(|v| signature(q1, v, 1)).collect();
        let sig2: Vec<Signature> = (0..n).map(|v| signature(q2, v, e)).collect();
        let mut a = sig1.clone();
        let mut b = sig2.clone();
        a.sort();
        b.sort();
        if a != b {
            continue;
        }
        let order = search_order(q1);
        let mut assign = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut m = Matcher { q1, q2, e, sig1: &sig1, sig2: &sig2, order: &order, assign: &mut assign, used: &mut used };
        if m.extend(0) {
            return Ok(Some((Permutation::from_images(assign)?, sign)));
        }
    }
    Ok(None)
}

/// Breadth-first order so each new vertex tends to touch assigned ones.
fn search_order(q: &ValuedQuiver) -> Vec<usize> {
    let n = q.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in q.exchangeable_neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Matcher<'a> {
    q1: &'a ValuedQuiver,
    q2: &'a ValuedQuiver,
    e: i64,
    sig1: &'a [Signature],
    sig2: &'a [Signature],
    order: &'a [usize],
    assign: &'a mut Vec<usize>,
    used: &'a mut Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for c in 0..self.q2.n() {
            if self.used[c] || self.sig1[v] != self.sig2[c] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let cu = self.assign[u];
                self.q1.b(v, u) == self.e * self.q2.b(c, cu) && self.q1.b(u, v) == self.e * self.q2.b(cu, c)
            });
            if !consistent {
                continue;
            }
            self.assign[v] = c;
            self.used[c] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[c] = false;
            self.assign[v] = usize::MAX;
        }
        false
    }
}

/// Whether `σ(q1) = sign·q2` holds, frozen-frozen arrows ignored.
pub fn is_symmetry(q1: &ValuedQuiver, q2: &ValuedQuiver, sigma: &Permutation, sign: Sign) -> bool {
    match q1.permute(sigma) {
        Ok(p) => p.without_frozen_arrows() == q2.signed(sign).without_frozen_arrows(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> ValuedQuiver {
        ValuedQuiver::new(3, 0, &[(0, 1, 1, 1), (1, 2, 1, 1)], None).unwrap()
    }

    #[test]
    fn reversed_a3_path_is_the_transposition() {
        let rev = ValuedQuiver::new(3, 0, &[(2, 1, 1, 1), (1, 0, 1, 1)], None).unwrap();
        let (sigma, sign) = find_symmetry(&path3(), &rev, false).unwrap().unwrap();
        assert_eq!(sigma.labels(), vec![3, 2, 1]);
        assert_eq!(sign, Sign::Plus);
        assert!(is_symmetry(&path3(), &rev, &sigma, sign));
    }

    #[test]
    fn negation_found_only_with_sign() {
        let q = ValuedQuiver::new(2, 0, &[(0, 1, 2, 1)], None).unwrap();
        let neg = q.negate();
        assert!(find_symmetry(&q, &neg, false).unwrap().is_none());
        let (sigma, sign) = find_symmetry(&q, &neg, true).unwrap().unwrap();
        assert!(sigma.is_identity());
        assert_eq!(sign, Sign::Minus);
    }

    #[test]
    fn path_and_triangle_differ() {
        let tri = ValuedQuiver::new(3, 0, &[(0, 1, 1, 1), (1, 2, 1, 1), (2, 0, 1, 1)], None).unwrap();
        assert!(find_symmetry(&path3(), &tri, true).unwrap().is_none());
    }

    #[test]
    fn frozen_vertices_are_not_moved() {
        let q1 = ValuedQuiver::new(2, 1, &[(0, 1, 1, 1), (2, 0, 1, 1)], None).unwrap();
        let q2 = ValuedQuiver::new(2, 1, &[(1, 0, 1, 1), (2, 1, 1, 1)], None).unwrap();
        let (sigma, _) = find_symmetry(&q1, &q2, false).unwrap().unwrap();
        assert_eq!(sigma.labels(), vec![2, 1]);
        let q3 = ValuedQuiver::new(2, 1, &[(0, 1, 1, 1), (0, 2, 1, 1)], None).unwrap();
        assert!(find_symmetry(&q1, &q3, false).unwrap().is_none());
    }
}
