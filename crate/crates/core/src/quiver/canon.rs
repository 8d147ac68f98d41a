//! Canonical forms by individualization and refinement.
//!
//! The key is the lexicographically least encoding of `σ(q)` over the leaves
//! of the search tree. Cells are ordered only by isomorphism-invariant data,
//! so the leaf set, and hence the minimum, does not depend on the labeling.

use crate::error::Result;

use super::symmetry::check_rank;
use super::{Permutation, ValuedQuiver};

/// Exact canonical key; equal keys mean symmetric quivers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(Vec<i64>);

impl CanonKey {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

pub fn canonical_form(q: &ValuedQuiver, modulo_sign: bool) -> Result<CanonKey> {
    let (key, _) = canonical_labeling(q)?;
    if modulo_sign {
        let (neg, _) = canonical_labeling(&q.negate())?;
        return Ok(key.min(neg));
    }
    Ok(key)
}

/// Canonical key together with a permutation `σ` such that `σ(q)` encodes to it.
pub fn canonical_labeling(q: &ValuedQuiver) -> Result<(CanonKey, Permutation)> {
    check_rank(q)?;
    let n = q.n();
    let mut initial: Vec<(Vec<i64>, usize)> = (0..n).map(|v| (vertex_invariant(q, v), v)).collect();
    initial.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, (inv, v)) in initial.iter().enumerate() {
        if i > 0 && initial[i - 1].0 == *inv {
            cells.last_mut().expect("cell").push(*v);
        } else {
            cells.push(vec![*v]);
        }
    }
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    search(q, cells, &mut best);
    let (key, order) = best.unwrap_or_else(|| (encode(q, &[]), Vec::new()));
    let mut images = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        images[v] = pos;
    }
    Ok((CanonKey(key), Permutation::from_images(images)?))
}

fn vertex_invariant(q: &ValuedQuiver, v: usize) -> Vec<i64> {
    let mut inc: Vec<(i64, i64)> = (0..q.n())
        .filter(|&j| j != v && q.b(v, j) != 0)
        .map(|j| (q.b(v, j), q.b(j, v)))
        .collect();
    inc.sort_unstable();
    let mut out = vec![q.d()[v] as i64];
    for f in q.n()..q.size() {
        out.push(q.b(v, f));
        out.push(q.b(f, v));
    }
    out.push(inc.len() as i64);
    for (a, b) in inc {
        out.push(a);
        out.push(b);
    }
    out
}

/// Splits cells by neighbourhood profile until stable.
fn refine(q: &ValuedQuiver, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = q.n();
    loop {
        let mut cell_of = vec![0usize; n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut split = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut profiled: Vec<(Vec<(usize, i64, i64)>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut p: Vec<(usize, i64, i64)> = (0..n)
                        .filter(|&j| j != v && q.b(v, j) != 0)
                        .map(|j| (cell_of[j], q.b(v, j), q.b(j, v)))
                        .collect();
                    p.sort_unstable();
                    (p, v)
                })
                .collect();
            profiled.sort();
            let start = next.len();
            for (i, (p, v)) in profiled.iter().enumerate() {
                if i > 0 && profiled[i - 1].0 == *p {
                    next.last_mut().expect("cell").push(*v);
                } else {
                    next.push(vec![*v]);
                }
            }
            if next.len() - start > 1 {
                split = true;
            }
        }
        cells = next;
        if !split {
            return cells;
        }
    }
}

fn search(q: &ValuedQuiver, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<i64>, Vec<usize>)>) {
    let cells = refine(q, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.into_iter().flatten().collect();
            let key = encode(q, &order);
            if best.as_ref().map_or(true, |(b, _)| key < *b) {
                *best = Some((key, order));
            }
        }
        Some(t) => {
            for &v in &cells[t] {
                let rest: Vec<usize> = cells[t].iter().copied().filter(|&w| w != v).collect();
                let mut next = Vec::with_capacity(cells.len() + 1);
                next.extend(cells[..t].iter().cloned());
                next.push(vec![v]);
                next.push(rest);
                next.extend(cells[t + 1..].iter().cloned());
                search(q, next, best);
            }
        }
    }
}

/// `order[p]` is the vertex placed at position `p`; frozen vertices keep their place.
fn encode(q: &ValuedQuiver, order: &[usize]) -> Vec<i64> {
    let (n, s) = (q.n(), q.size());
    let at = |p: usize| if p < n { order[p] } else { p };
    let mut key = Vec::with_capacity(2 + s + s * s);
    key.push(n as i64);
    key.push(q.m() as i64);
    for p in 0..s {
        key.push(q.d()[at(p)] as i64);
    }
    for p in 0..s {
        for r in 0..s {
            let v = if p >= n && r >= n { 0 } else { q.b(at(p), at(r)) };
            key.push(v);
        }
    }
    key
}
