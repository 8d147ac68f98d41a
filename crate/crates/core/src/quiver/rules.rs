//! Mutation by rewriting arrows directly, without going through the matrix.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::ValuedQuiver;

type EdgeMap = BTreeMap<(usize, usize), (u64, u64)>;

fn edge_map(q: &ValuedQuiver) -> EdgeMap {
    let s = q.size();
    let mut map = EdgeMap::new();
    for i in 0..s {
        for j in 0..s {
            if let Some(v) = q.valuation(i, j) {
                map.insert((i, j), v);
            }
        }
    }
    map
}

fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Mutation at `k` by the arrow rules: compose paths `i -> k -> j` into the
/// `i`-`j` edge (adding, strengthening, weakening, flipping or cancelling it),
/// then reverse every arrow at `k`. `d` is unchanged.
pub fn mutate_by_rules(q: &ValuedQuiver, k: usize) -> Result<ValuedQuiver> {
    if k >= q.n() {
        return Err(Error::NotExchangeable { vertex: k + 1, rank: q.n() });
    }
    let old = edge_map(q);
    let mut new = old.clone();
    let ins: Vec<(usize, (u64, u64))> =
        old.iter().filter(|(&(_, t), _)| t == k).map(|(&(f, _), &v)| (f, v)).collect();
    let outs: Vec<(usize, (u64, u64))> =
        old.iter().filter(|(&(f, _), _)| f == k).map(|(&(_, t), &v)| (t, v)).collect();

    for &(i, (v_ik, v_ki)) in &ins {
        for &(j, (v_kj, v_jk)) in &outs {
            let fwd = checked_mul(v_ik, v_kj)?;
            let back = checked_mul(v_ki, v_jk)?;
            if let Some(&(v_ij, v_ji)) = old.get(&(i, j)) {
                let a = v_ij.checked_add(fwd).ok_or(Error::Overflow)?;
                let b = v_ji.checked_add(back).ok_or(Error::Overflow)?;
                new.insert((i, j), (a, b));
            } else if let Some(&(v_ji, v_ij)) = old.get(&(j, i)) {
                new.remove(&(j, i));
                if fwd < v_ij {
                    new.insert((j, i), (v_ji - back, v_ij - fwd));
                } else if fwd > v_ij {
                    new.insert((i, j), (fwd - v_ij, v_ji.abs_diff(back)));
                }
            } else {
                new.insert((i, j), (fwd, back));
            }
        }
    }
    for &(i, v) in &ins {
        new.remove(&(i, k));
        new.insert((k, i), (v.1, v.0));
    }
    for &(j, v) in &outs {
        new.remove(&(k, j));
        new.insert((j, k), (v.1, v.0));
    }

    let s = q.size();
    let mut b = vec![0i64; s * s];
    for (&(i, j), &(a, c)) in &new {
        b[i * s + j] = a as i64;
        b[j * s + i] = -(c as i64);
    }
    Ok(ValuedQuiver::from_parts(q.n(), q.m(), b, q.d().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oriented_triangle_cancels() {
        // 1 -> 2 -> 3 -> 1, mutate at 2: the 1-3 edge cancels
        let q = ValuedQuiver::new(3, 0, &[(0, 1, 1, 1), (1, 2, 1, 1), (2, 0, 1, 1)], None).unwrap();
        let r = mutate_by_rules(&q, 1).unwrap();
        assert_eq!(r.valuation(1, 0), Some((1, 1)));
        assert_eq!(r.valuation(2, 1), Some((1, 1)));
        assert_eq!(r.weight_between(0, 2), 0);
        assert_eq!(r, q.mutate(1).unwrap());
    }

    #[test]
    fn kept_reverse_edge_is_weakened() {
        // 1 -> 2 -> 3 and 3 -> 1 with weight 4 (2,2): the 3 -> 1 edge drops to (1,1)
        let q = ValuedQuiver::new(3, 0, &[(0, 1, 1, 1), (1, 2, 1, 1), (2, 0, 2, 2)], None).unwrap();
        let r = mutate_by_rules(&q, 1).unwrap();
        assert_eq!(r.valuation(2, 0), Some((1, 1)));
        assert_eq!(r, q.mutate(1).unwrap());
    }

    #[test]
    fn flipped_reverse_edge() {
        // 1 -> 2 (2,2), 2 -> 3 (1,1), 3 -> 1 (1,1): composite beats the reverse edge
        let q = ValuedQuiver::new(3, 0, &[(0, 1, 2, 2), (1, 2, 1, 1), (2, 0, 1, 1)], None).unwrap();
        let r = mutate_by_rules(&q, 1).unwrap();
        assert_eq!(r.valuation(0, 2), Some((1, 1)));
        assert_eq!(r, q.mutate(1).unwrap());
    }
}
