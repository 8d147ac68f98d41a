//! Symmetric cluster variables and the symmetric-algebra classifier.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::budget::{ClassBudget, SeedBudget};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::quiver::canon::canonical_form;
use crate::quiver::decompose::coherent_decompositions;
use crate::quiver::{MutationWord, Permutation, ValuedQuiver};
use crate::seed::{enumerate_cluster_variables, Closure, Truncation};

use super::detect::{detect_rigid_vertices, RigidMatch};
use super::vv::is_vv_sigma_symmetric;
use super::{explore_class, ClassStatus};

/// Result of comparing the symmetric variables with all variables.
#[derive(Clone, Debug)]
pub struct SymmetricVariables {
    pub closure: Closure,
    /// Ids (into `closure.variables`) found in a seed whose quiver is a relabeling of the root.
    pub symmetric: Vec<u32>,
    /// Nodes whose quiver is a relabeling of the root.
    pub symmetric_nodes: Vec<usize>,
    /// Only decided when the closure completed.
    pub equal: Option<bool>,
}

impl SymmetricVariables {
    pub fn total(&self) -> usize {
        self.closure.variables.len()
    }

    pub fn truncated(&self) -> Option<Truncation> {
        self.closure.truncated
    }

    /// Ids of enumerated variables outside the symmetric set.
    pub fn missing(&self) -> Vec<u32> {
        let sym: HashSet<u32> = self.symmetric.iter().copied().collect();
        (0..self.total() as u32).filter(|i| !sym.contains(i)).collect()
    }
}

/// Runs the seed closure and collects variables of seeds whose quiver is a
/// relabeling of the root; `allow_sign` also accepts the negated root.
pub fn symmetric_cluster_variables(
    q: &ValuedQuiver,
    budget: &SeedBudget,
    allow_sign: bool,
    exec: Exec,
) -> Result<SymmetricVariables> {
    let closure = enumerate_cluster_variables(q, budget, exec)?;
    let root = canonical_form(q, allow_sign)?;
    let hits = exec.map(&closure.nodes, |nd| canonical_form(&nd.quiver, allow_sign).map(|k| k == root));
    let mut symmetric_nodes = Vec::new();
    let mut ids: Vec<u32> = Vec::new();
    for (i, h) in hits.into_iter().enumerate() {
        if h? {
            symmetric_nodes.push(i);
            ids.extend_from_slice(&closure.nodes[i].ids);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    let equal = closure.is_complete().then(|| ids.len() == closure.variables.len());
    Ok(SymmetricVariables { closure, symmetric: ids, symmetric_nodes, equal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotSymmetric {
    Infinite { word: MutationWord, edge: (usize, usize, u64, u64) },
    Rigid { vertex: usize, pattern: &'static str, member: usize, word: MutationWord },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SymmetricAlgebra {
    Yes,
    No(NotSymmetric),
    Unknown,
}

/// Finite mutation class and no rigid vertex. With `initial_only` the rigid
/// scan looks at `q` alone, otherwise at every member of the class.
pub fn is_symmetric_algebra(
    q: &ValuedQuiver,
    budget: &ClassBudget,
    initial_only: bool,
    exec: Exec,
) -> Result<SymmetricAlgebra> {
    let report = explore_class(q, budget, exec)?;
    match report.status {
        ClassStatus::InfiniteWitness { word, edge } => return Ok(SymmetricAlgebra::No(NotSymmetric::Infinite { word, edge })),
        ClassStatus::BudgetExceeded => return Ok(SymmetricAlgebra::Unknown),
        ClassStatus::Finite => {}
    }
    let scan = if initial_only { &report.members[..1] } else { &report.members[..] };
    let hits: Vec<Result<Vec<RigidMatch>>> = exec.map(scan, |m| detect_rigid_vertices(&m.quiver));
    for (idx, h) in hits.into_iter().enumerate() {
        if let Some(r) = h?.into_iter().next() {
            return Ok(SymmetricAlgebra::No(NotSymmetric::Rigid {
                vertex: r.vertex,
                pattern: r.pattern,
                member: idx,
                word: report.members[idx].word.clone(),
            }));
        }
    }
    Ok(SymmetricAlgebra::Yes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullSymmetricGroup {
    /// Simply-laced of finite mutation type, or rank 3 and v-v symmetric.
    pub criterion: Verdict,
    /// Whether every adjacent transposition was realized by a word.
    pub transpositions_realized: Verdict,
}

/// Cap on labeled quivers visited by the transposition searches.
pub const LABELED_STATE_LIMIT: usize = 200_000;

/// Labeled breadth-first search for a word with `μ(q) = target`.
fn labeled_search(q: &ValuedQuiver, target: &ValuedQuiver, max_states: usize) -> Result<Option<MutationWord>> {
    if q == target {
        return Ok(Some(MutationWord::empty()));
    }
    let mut seen: HashSet<ValuedQuiver> = HashSet::from([q.clone()]);
    let mut queue: VecDeque<(ValuedQuiver, MutationWord)> = VecDeque::from([(q.clone(), MutationWord::empty())]);
    while let Some((p, word)) = queue.pop_front() {
        for k in 0..p.n() {
            if word.letters().first() == Some(&k) {
                continue;
            }
            let next = match p.mutate(k) {
                Ok(x) => x,
                Err(Error::Overflow) => continue,
                Err(e) => return Err(e),
            };
            let w = word.push_applied(k);
            if &next == target {
                return Ok(Some(w));
            }
            if seen.len() >= max_states {
                return Ok(None);
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, w));
            }
        }
    }
    Ok(None)
}

pub fn has_full_symmetric_group(q: &ValuedQuiver, budget: &ClassBudget, exec: Exec) -> Result<FullSymmetricGroup> {
    let n = q.n();
    if n <= 2 {
        return Err(Error::Precondition(format!("rank must exceed 2, got {n}")));
    }
    let report = explore_class(q, budget, exec)?;
    let criterion = match report.status {
        ClassStatus::BudgetExceeded => Verdict::Unknown,
        ClassStatus::InfiniteWitness { .. } => Verdict::No,
        ClassStatus::Finite if q.is_simply_laced() => Verdict::Yes,
        ClassStatus::Finite if n == 3 && is_vv_sigma_symmetric(q)?.symmetric => Verdict::Yes,
        ClassStatus::Finite => Verdict::No,
    };
    let swaps: Vec<usize> = (0..n - 1).collect();
    let found = exec.map(&swaps, |&a| {
        let target = q.permute(&Permutation::transposition(n, a, a + 1))?;
        labeled_search(q, &target, LABELED_STATE_LIMIT)
    });
    let mut all = true;
    for f in found {
        all &= f?.is_some();
    }
    let transpositions_realized = if all { Verdict::Yes } else { Verdict::Unknown };
    Ok(FullSymmetricGroup { criterion, transpositions_realized })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Blocking {
    Realizable { word: MutationWord },
    /// Relative to the search budget; not a proof.
    BlockedSoFar { explored: usize },
}

/// Bounded search for a word realizing the transposition of `i` and `j`.
pub fn is_blocking_edge(q: &ValuedQuiver, i: usize, j: usize, max_states: usize) -> Result<Blocking> {
    let n = q.n();
    if i >= n || j >= n {
        return Err(Error::Precondition("both endpoints must be exchangeable".into()));
    }
    if i == j || q.b(i, j) == 0 {
        return Err(Error::Precondition(format!("no edge between {} and {}", i + 1, j + 1)));
    }
    let target = q.permute(&Permutation::transposition(n, i, j))?;
    Ok(match labeled_search(q, &target, max_states)? {
        Some(word) => Blocking::Realizable { word },
        None => Blocking::BlockedSoFar { explored: max_states },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementKind {
    Trivial,
    Infinite,
    Rigid,
}

/// Largest connected part with a symmetric cluster algebra whose complement
/// is infinite, rigid or empty. Vertices are 0-based exchangeable indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraSplit {
    pub symmetric_part: Vec<usize>,
    pub complement: Vec<usize>,
    pub overlap: Vec<usize>,
    pub complement_kind: ComplementKind,
}

fn is_connected(q: &ValuedQuiver, verts: &[usize]) -> bool {
    !verts.is_empty() && q.induced(verts, &[]).is_exchangeable_connected()
}

pub fn check_subalgebra_decomposition(
    q: &ValuedQuiver,
    budget: &ClassBudget,
    exec: Exec,
) -> Result<Option<SubalgebraSplit>> {
    let n = q.n();
    let all: Vec<usize> = (0..n).collect();
    let principal = q.induced(&all, &[]);
    if is_symmetric_algebra(&principal, budget, false, exec)? == SymmetricAlgebra::Yes {
        return Ok(Some(SubalgebraSplit {
            symmetric_part: all,
            complement: Vec::new(),
            overlap: Vec::new(),
            complement_kind: ComplementKind::Trivial,
        }));
    }
    let mut verdicts: HashMap<Vec<usize>, SymmetricAlgebra> = HashMap::new();
    let mut verdict = |set: &[usize]| -> Result<SymmetricAlgebra> {
        if let Some(v) = verdicts.get(set) {
            return Ok(v.clone());
        }
        let v = is_symmetric_algebra(&principal.induced(set, &[]), budget, false, exec)?;
        verdicts.insert(set.to_vec(), v.clone());
        Ok(v)
    };
    let mut best: Option<SubalgebraSplit> = None;
    for d in coherent_decompositions(&principal)? {
        for (own, other) in [(&d.first, &d.second), (&d.second, &d.first)] {
            let part: Vec<usize> = own.iter().copied().filter(|v| !d.overlap.contains(v)).collect();
            if best.as_ref().is_some_and(|b| b.symmetric_part.len() >= part.len()) || !is_connected(&principal, &part) {
                continue;
            }
            if verdict(&part)? != SymmetricAlgebra::Yes {
                continue;
            }
            let kind = match verdict(other)? {
                SymmetricAlgebra::No(NotSymmetric::Infinite { .. }) => ComplementKind::Infinite,
                SymmetricAlgebra::No(NotSymmetric::Rigid { .. }) => ComplementKind::Rigid,
                _ => continue,
            };
            best = Some(SubalgebraSplit {
                symmetric_part: part,
                complement: other.clone(),
                overlap: d.overlap.clone(),
                complement_kind: kind,
            });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cat(name: &str) -> ValuedQuiver {
        catalog::get(name).unwrap().quiver
    }

    #[test]
    fn a2_variables_all_symmetric() {
        let s = symmetric_cluster_variables(&cat("a2"), &SeedBudget::default(), false, Exec::Sequential).unwrap();
        assert_eq!(s.total(), 5);
        assert_eq!(s.symmetric.len(), 5);
        assert_eq!(s.equal, Some(true));
    }

    #[test]
    fn verdicts() {
        let b = ClassBudget::default();
        assert_eq!(is_symmetric_algebra(&cat("a2"), &b, false, Exec::Sequential).unwrap(), SymmetricAlgebra::Yes);
        assert!(matches!(
            is_symmetric_algebra(&cat("ex_2_8_3"), &b, false, Exec::Sequential).unwrap(),
            SymmetricAlgebra::No(NotSymmetric::Infinite { .. })
        ));
        let e = catalog::get("rigid_3_2_a_y1z1").unwrap();
        match is_symmetric_algebra(&e.quiver, &b, true, Exec::Sequential).unwrap() {
            SymmetricAlgebra::No(NotSymmetric::Rigid { vertex, .. }) => assert_eq!(Some(vertex), e.vertex("i")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn a2_edge_is_not_blocking() {
        assert!(matches!(is_blocking_edge(&cat("a2"), 0, 1, 1000).unwrap(), Blocking::Realizable { .. }));
        let q = catalog::get("paper_2_4").unwrap().quiver;
        assert!(is_blocking_edge(&q, 0, 3, 10).is_err());
    }

    #[test]
    fn full_group() {
        let b = ClassBudget::default();
        let a3 = has_full_symmetric_group(&cat("a3"), &b, Exec::Sequential).unwrap();
        assert_eq!(a3.criterion, Verdict::Yes);
        assert_eq!(a3.transpositions_realized, Verdict::Yes);
        assert_eq!(has_full_symmetric_group(&cat("ex_2_8_3"), &b, Exec::Sequential).unwrap().criterion, Verdict::No);
        assert!(has_full_symmetric_group(&cat("a2"), &b, Exec::Sequential).is_err());
    }

    #[test]
    fn a3_decomposes_trivially() {
        let s = check_subalgebra_decomposition(&cat("a3"), &ClassBudget::default(), Exec::Sequential).unwrap().unwrap();
        assert_eq!(s.symmetric_part, vec![0, 1, 2]);
        assert_eq!(s.complement_kind, ComplementKind::Trivial);
    }
}
