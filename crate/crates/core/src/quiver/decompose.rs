//! Freezing and coherent decompositions.

use serde::Serialize;

use crate::error::{Error, Result};

use super::ValuedQuiver;

/// Largest total vertex count accepted by [`coherent_decompositions`].
pub const DECOMPOSITION_LIMIT: usize = 14;

/// A frozen copy of a quiver plus where each old vertex went.
#[derive(Clone, Debug)]
pub struct Frozen {
    pub quiver: ValuedQuiver,
    /// `position[v]` is the new index of old vertex `v`.
    pub position: Vec<usize>,
}

/// Freezes the exchangeable vertices in `set`. Remaining exchangeables keep
/// their relative order; old frozen vertices come next, newly frozen last.
pub fn freeze(q: &ValuedQuiver, set: &[usize]) -> Result<Frozen> {
    let n = q.n();
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(Error::NotExchangeable { vertex: v + 1, rank: n });
    }
    let mut frozen_now = vec![false; n];
    for &v in set {
        frozen_now[v] = true;
    }
    let exch: Vec<usize> = (0..n).filter(|&v| !frozen_now[v]).collect();
    if exch.is_empty() {
        return Err(Error::FreezeAll);
    }
    let mut frozen: Vec<usize> = (n..q.size()).collect();
    frozen.extend((0..n).filter(|&v| frozen_now[v]));
    let quiver = q.induced(&exch, &frozen);
    let mut position = vec![0; q.size()];
    for (p, &v) in exch.iter().chain(&frozen).enumerate() {
        position[v] = p;
    }
    Ok(Frozen { quiver, position })
}

/// Two connected parts glued along `overlap`; 0-based vertices of the full quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub overlap: Vec<usize>,
}

fn adjacent(q: &ValuedQuiver, i: usize, j: usize) -> bool {
    q.b(i, j) != 0 && !(i >= q.n() && j >= q.n())
}

fn connected(q: &ValuedQuiver, verts: &[usize]) -> bool {
    let Some(&start) = verts.first() else { return false };
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in verts {
            if !seen.contains(&w) && adjacent(q, v, w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == verts.len()
}

/// Every split of the vertex set into two connected parts sharing a nonempty
/// overlap, each part owning at least one vertex of its own, with no edge
/// between the two private parts. Each unordered pair is listed once.
pub fn coherent_decompositions(q: &ValuedQuiver) -> Result<Vec<Decomposition>> {
    let s = q.size();
    if s > DECOMPOSITION_LIMIT {
        return Err(Error::TooLarge { rank: s, limit: DECOMPOSITION_LIMIT });
    }
    let mut out = Vec::new();
    let total = 3usize.pow(s as u32);
    // digit 0: first only, 1: second only, 2: overlap
    for code in 0..total {
        let mut c = code;
        let mut part = vec![0u8; s];
        for p in part.iter_mut() {
            *p = (c % 3) as u8;
            c /= 3;
        }
        let only_a: Vec<usize> = (0..s).filter(|&v| part[v] == 0).collect();
        let only_b: Vec<usize> = (0..s).filter(|&v| part[v] == 1).collect();
        let overlap: Vec<usize> = (0..s).filter(|&v| part[v] == 2).collect();
        if only_a.is_empty() || only_b.is_empty() || overlap.is_empty() || only_a[0] > only_b[0] {
            continue;
        }
        if only_a.iter().any(|&a| only_b.iter().any(|&b| adjacent(q, a, b))) {
            continue;
        }
        let mut first: Vec<usize> = only_a.iter().chain(&overlap).copied().collect();
        let mut second: Vec<usize> = only_b.iter().chain(&overlap).copied().collect();
        first.sort_unstable();
        second.sort_unstable();
        if connected(q, &first) && connected(q, &second) {
            out.push(Decomposition { first, second, overlap });
        }
    }
    Ok(out)
}
