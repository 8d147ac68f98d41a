//! Vertex-by-vertex symmetry, symmetric words and counter sequences.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::Result;
use crate::par::Exec;
use crate::quiver::canon::canonical_form;
use crate::quiver::symmetry::find_symmetry;
use crate::quiver::{MutationWord, Permutation, Sign, ValuedQuiver};

use super::detect::is_pre_unbounded;
use super::ClassReport;

/// `μ_counter μ_vertex (Q) = sign·σ(Q)`, or `μ_vertex (Q)` when there is no counter vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub vertex: usize,
    pub counter: Option<usize>,
    pub permutation: Permutation,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VvReport {
    pub symmetric: bool,
    pub certificates: Vec<Certificate>,
    pub failing_vertex: Option<usize>,
}

/// Looks for a length-1 or length-2 certificate at every exchangeable vertex.
pub fn is_vv_sigma_symmetric(q: &ValuedQuiver) -> Result<VvReport> {
    let mut certificates = Vec::new();
    'vertices: for i in 0..q.n() {
        let qi = q.mutate(i)?;
        if let Some((permutation, sign)) = find_symmetry(q, &qi, true)? {
            certificates.push(Certificate { vertex: i, counter: None, permutation, sign });
            continue;
        }
        for j in (0..q.n()).filter(|&j| j != i) {
            if let Some((permutation, sign)) = find_symmetry(q, &qi.mutate(j)?, true)? {
                certificates.push(Certificate { vertex: i, counter: Some(j), permutation, sign });
                continue 'vertices;
            }
        }
        return Ok(VvReport { symmetric: false, certificates, failing_vertex: Some(i) });
    }
    Ok(VvReport { symmetric: true, certificates, failing_vertex: None })
}

/// A word `μ` with `μ(Q) = sign·σ(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrySequence {
    pub word: MutationWord,
    pub permutation: Permutation,
    pub sign: Sign,
}

/// Cap on the number of words examined by [`find_symmetric_sequences`].
pub const SEQUENCE_WORD_LIMIT: usize = 2_000_000;

/// Every reduced word of length at most `max_len` taking `q` to a relabeling
/// of itself (no sign). The empty word comes first; then shorter words first.
pub fn find_symmetric_sequences(q: &ValuedQuiver, max_len: usize, exec: Exec) -> Result<Vec<SymmetrySequence>> {
    let n = q.n();
    let key = canonical_form(q, false)?;
    let mut out = vec![SymmetrySequence {
        word: MutationWord::empty(),
        permutation: Permutation::identity(n),
        sign: Sign::Plus,
    }];
    let mut level: Vec<(MutationWord, ValuedQuiver)> = vec![(MutationWord::empty(), q.clone())];
    let mut examined = 1usize;
    for _ in 0..max_len {
        let tasks: Vec<(usize, usize)> = level
            .iter()
            .enumerate()
            .flat_map(|(w, (word, _))| {
                let last = word.letters().first().copied();
                (0..n).filter(move |&k| Some(k) != last).map(move |k| (w, k))
            })
            .collect();
        examined += tasks.len();
        if examined > SEQUENCE_WORD_LIMIT {
            break;
        }
        let next: Vec<Result<(MutationWord, ValuedQuiver, bool)>> = exec.map(&tasks, |&(w, k)| {
            let (word, p) = &level[w];
            let r = p.mutate(k)?;
            let hit = canonical_form(&r, false)? == key;
            Ok((word.push_applied(k), r, hit))
        });
        let mut new_level = Vec::with_capacity(next.len());
        for r in next {
            let (word, p, hit) = r?;
            if hit {
                let (permutation, sign) = find_symmetry(q, &p, false)?.expect("equal canonical keys");
                out.push(SymmetrySequence { word: word.clone(), permutation, sign });
            }
            new_level.push((word, p));
        }
        level = new_level;
    }
    Ok(out)
}

/// Members of the report symmetric to `q` (no sign).
pub fn symmetric_members(report: &ClassReport, q: &ValuedQuiver) -> Result<Vec<usize>> {
    let key = canonical_form(q, false)?;
    Ok(report.members.iter().enumerate().filter(|(_, m)| m.key == key).map(|(i, _)| i).collect())
}

/// Where the avenue construction mutates: `k` is the neighbour of `i`
/// toward `far`, the nearest vertex on a non-simply-laced edge (if any).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Avenue {
    pub k: usize,
    pub far: Option<usize>,
}

impl Avenue {
    /// `μ_k μ_[i,k] μ_i` with the leading `μ_i` included.
    pub fn word(&self, i: usize) -> MutationWord {
        MutationWord::single(self.k).then_after(&MutationWord::pentagon(i, self.k)).then_after(&MutationWord::single(i))
    }
}

fn bfs_distances(q: &ValuedQuiver, from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; q.n()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for w in q.exchangeable_neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Components of `q` without `i` that touch a neighbour of `i`.
fn neighbour_components(q: &ValuedQuiver, i: usize) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; q.n()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in q.exchangeable_neighbors(i) {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut part = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in q.exchangeable_neighbors(v) {
                if w != i && comp[w] == usize::MAX {
                    comp[w] = id;
                    part.push(w);
                    stack.push(w);
                }
            }
        }
        part.sort_unstable();
        out.push(part);
    }
    out
}

/// Checks the avenue conditions at `i`: all edges at `i` simply-laced, no
/// neighbouring part pre-unbounded within `depth`, and the nearest vertex on a
/// non-simply-laced edge at distance at least 2.
pub fn has_simply_laced_avenue(q: &ValuedQuiver, i: usize, depth: usize, exec: Exec) -> Result<Option<Avenue>> {
    let nbrs = q.exchangeable_neighbors(i);
    if nbrs.is_empty() || nbrs.iter().any(|&j| q.weight_between(i, j) != 1) {
        return Ok(None);
    }
    for part in neighbour_components(q, i) {
        if part.len() >= 3 && is_pre_unbounded(&q.induced(&part, &[]), depth, exec)?.is_some() {
            return Ok(None);
        }
    }
    let heavy: Vec<bool> = (0..q.n())
        .map(|v| q.exchangeable_neighbors(v).iter().any(|&w| q.weight_between(v, w) != 1))
        .collect();
    let dist = bfs_distances(q, i);
    let far = (0..q.n()).filter(|&v| heavy[v] && dist[v].is_some()).min_by_key(|&v| (dist[v], v));
    let k = match far {
        None => nbrs[0],
        Some(f) if dist[f] < Some(2) => return Ok(None),
        Some(f) => {
            let back = bfs_distances(q, f);
            *nbrs.iter().filter(|&&w| back[w] == Some(dist[f].unwrap() - 1)).min().expect("shortest path")
        }
    };
    Ok(Some(Avenue { k, far }))
}

/// A word `μ_ī` with `μ_ī μ_i (member) = sign·σ(root)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterSequence {
    pub word: MutationWord,
    pub permutation: Permutation,
    pub sign: Sign,
}

/// Breadth-first search for a counter sequence at `i`.
///
/// Steps are single mutations away from `i` or pentagon words `μ_[i,j]`,
/// `μ_[j,i]` with `j` adjacent to `i`; `max_len` bounds the letter count.
/// The avenue construction is tried first when it applies.
pub fn find_counter_sequence(
    root: &ValuedQuiver,
    member: &ValuedQuiver,
    i: usize,
    max_len: usize,
    exec: Exec,
) -> Result<Option<CounterSequence>> {
    let start = member.mutate(i)?;
    let check = |p: &ValuedQuiver, word: &MutationWord| -> Result<Option<CounterSequence>> {
        Ok(find_symmetry(root, p, true)?.map(|(permutation, sign)| CounterSequence { word: word.clone(), permutation, sign }))
    };
    if let Some(hit) = check(&start, &MutationWord::empty())? {
        return Ok(Some(hit));
    }
    if let Some(av) = has_simply_laced_avenue(member, i, 4, exec)? {
        let w = MutationWord::single(av.k).then_after(&MutationWord::pentagon(i, av.k));
        if w.len() <= max_len {
            if let Some(hit) = check(&start.apply_word(&w)?, &w)? {
                return Ok(Some(hit));
            }
        }
    }
    let mut seen: HashSet<ValuedQuiver> = HashSet::from([start.clone()]);
    let mut queue: VecDeque<(ValuedQuiver, MutationWord)> = VecDeque::from([(start, MutationWord::empty())]);
    while let Some((p, word)) = queue.pop_front() {
        let mut steps: Vec<MutationWord> = (0..p.n()).filter(|&j| j != i).map(MutationWord::single).collect();
        for j in p.exchangeable_neighbors(i) {
            steps.push(MutationWord::pentagon(i, j));
            steps.push(MutationWord::pentagon(j, i));
        }
        for step in steps {
            let next_word = step.then_after(&word);
            if next_word.len() > max_len {
                continue;
            }
            let next = p.apply_word(&step)?;
            if !seen.insert(next.clone()) {
                continue;
            }
            if let Some(hit) = check(&next, &next_word)? {
                return Ok(Some(hit));
            }
            queue.push_back((next, next_word));
        }
    }
    Ok(None)
}
