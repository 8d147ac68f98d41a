//! Mutation-class exploration and the analyses built on it.

pub mod detect;
pub mod symalg;
pub mod vv;
pub mod weight;

use std::collections::HashMap;

use serde::Serialize;

use crate::budget::ClassBudget;
use crate::error::Result;
use crate::par::Exec;
use crate::quiver::canon::{canonical_form, CanonKey};
use crate::quiver::predicates::HEAVY_WEIGHT;
use crate::quiver::{EdgeSpec, MutationWord, QuiverSpec, ValuedQuiver};

pub use detect::{
    detect_rigid_vertices, detect_unbounded_3cycles, has_non_isosceles_3cycle_in_class, is_pre_unbounded,
    NonIsosceles, RigidMatch,
};
pub use symalg::{
    check_subalgebra_decomposition, has_full_symmetric_group, is_blocking_edge, is_symmetric_algebra,
    symmetric_cluster_variables, Blocking, ComplementKind, FullSymmetricGroup, NotSymmetric, SubalgebraSplit,
    SymmetricAlgebra, SymmetricVariables, Verdict,
};
pub use vv::{
    find_counter_sequence, find_symmetric_sequences, has_simply_laced_avenue, is_vv_sigma_symmetric,
    symmetric_members, Avenue, Certificate, CounterSequence, SymmetrySequence, VvReport,
};
pub use weight::{weight_classify, HeadFinding, Weight2Witness, WeightReport};

/// A quiver reached from the root together with the word reaching it.
#[derive(Clone, Debug)]
pub struct Member {
    pub quiver: ValuedQuiver,
    pub word: MutationWord,
    pub key: CanonKey,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassStatus {
    Finite,
    /// Replaying `word` from the root gives an exchangeable edge of weight at least 5.
    InfiniteWitness { word: MutationWord, edge: (usize, usize, u64, u64) },
    BudgetExceeded,
}

/// Per-member flags.
#[derive(Clone, Debug, Serialize)]
pub struct MemberAnalysis {
    pub rigid: Vec<RigidMatch>,
    pub vv_symmetric: bool,
    pub simply_laced: bool,
    pub zigzag: bool,
    pub weight: u64,
}

#[derive(Clone, Debug)]
pub struct ClassReport {
    pub status: ClassStatus,
    /// Members in discovery order; the root is first.
    pub members: Vec<Member>,
    /// Largest exchangeable weight over the class, only for finite classes.
    pub class_weight: Option<u64>,
    /// Filled by [`analyze_members`]; empty otherwise.
    pub analyses: Vec<MemberAnalysis>,
}

impl ClassReport {
    pub fn is_finite(&self) -> bool {
        self.status == ClassStatus::Finite
    }

    /// Index of the member symmetric to `q`, if any.
    pub fn position(&self, q: &ValuedQuiver) -> Result<Option<usize>> {
        let key = canonical_form(q, false)?;
        Ok(self.members.iter().position(|m| m.key == key))
    }

    pub fn to_json(&self) -> ClassReportJson {
        let (status, witness) = match &self.status {
            ClassStatus::Finite => ("finite", None),
            ClassStatus::BudgetExceeded => ("budget_exceeded", None),
            ClassStatus::InfiniteWitness { word, edge } => (
                "infinite_witness",
                Some(WitnessJson {
                    word: word.clone(),
                    edge: EdgeSpec { from: edge.0 + 1, to: edge.1 + 1, v: [edge.2, edge.3] },
                }),
            ),
        };
        ClassReportJson {
            status,
            witness,
            member_count: self.members.len(),
            class_weight: self.class_weight,
            members: self
                .members
                .iter()
                .enumerate()
                .map(|(i, m)| MemberJson {
                    quiver: m.quiver.to_spec(),
                    word: m.word.clone(),
                    analysis: self.analyses.get(i).cloned(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub word: MutationWord,
    pub edge: EdgeSpec,
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberJson {
    pub quiver: QuiverSpec,
    pub word: MutationWord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<MemberAnalysis>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReportJson {
    pub status: &'static str,
    pub witness: Option<WitnessJson>,
    pub member_count: usize,
    pub class_weight: Option<u64>,
    pub members: Vec<MemberJson>,
}

/// Outcome of a class walk stopped by a predicate.
pub(crate) enum Walk {
    Closed(Vec<Member>),
    Stopped(Vec<Member>, usize),
    Exhausted(Vec<Member>),
}

/// Level-synchronous breadth-first walk over the class up to symmetry.
///
/// Mutations of a whole level are computed in parallel; merging follows
/// (member, vertex) order so the result does not depend on scheduling.
/// `stop` is checked on every quiver reached before deduplication; a hit
/// is appended as the last member and reported by index, even past the
/// depth cap.
pub(crate) fn walk_class<F>(q: &ValuedQuiver, budget: &ClassBudget, exec: Exec, stop: F) -> Result<Walk>
where
    F: Fn(&ValuedQuiver) -> bool + Sync,
{
    let root = Member { quiver: q.clone(), word: MutationWord::empty(), key: canonical_form(q, false)?, depth: 0 };
    let mut seen: HashMap<CanonKey, usize> = HashMap::new();
    seen.insert(root.key.clone(), 0);
    let mut members = vec![root];
    if stop(q) {
        return Ok(Walk::Stopped(members, 0));
    }
    let n = q.n();
    let mut level_start = 0;
    let mut depth = 0;
    while level_start < members.len() {
        let level_end = members.len();
        // at the depth cap the level is still expanded; only new members truncate
        let at_cap = depth >= budget.max_depth;
        let tasks: Vec<(usize, usize)> = (level_start..level_end).flat_map(|i| (0..n).map(move |k| (i, k))).collect();
        let results = exec.map(&tasks, |&(i, k)| -> Result<(ValuedQuiver, bool, Option<CanonKey>)> {
            let next = members[i].quiver.mutate(k)?;
            if stop(&next) {
                return Ok((next, true, None));
            }
            let key = canonical_form(&next, false)?;
            Ok((next, false, Some(key)))
        });
        for (&(i, k), r) in tasks.iter().zip(results) {
            let (next, hit, key) = r?;
            let word = members[i].word.push_applied(k);
            if hit {
                let key = canonical_form(&next, false)?;
                members.push(Member { quiver: next, word, key, depth: depth + 1 });
                let last = members.len() - 1;
                return Ok(Walk::Stopped(members, last));
            }
            let key = key.expect("computed when not stopped");
            if seen.contains_key(&key) {
                continue;
            }
            if at_cap || members.len() >= budget.max_members {
                return Ok(Walk::Exhausted(members));
            }
            seen.insert(key.clone(), members.len());
            members.push(Member { quiver: next, word, key, depth: depth + 1 });
        }
        level_start = level_end;
        depth += 1;
    }
    Ok(Walk::Closed(members))
}

fn heavy_edge(q: &ValuedQuiver) -> Option<(usize, usize, u64, u64)> {
    q.exchangeable_edges().into_iter().find(|e| e.2 * e.3 >= HEAVY_WEIGHT)
}

/// Breadth-first enumeration of `[q]` up to symmetry.
///
/// Stops with a witness as soon as an exchangeable edge of weight at least
/// 5 appears, since such a class is infinite.
pub fn explore_class(q: &ValuedQuiver, budget: &ClassBudget, exec: Exec) -> Result<ClassReport> {
    let walk = walk_class(q, budget, exec, |x| heavy_edge(x).is_some())?;
    let (status, members) = match walk {
        Walk::Closed(m) => (ClassStatus::Finite, m),
        Walk::Exhausted(m) => (ClassStatus::BudgetExceeded, m),
        Walk::Stopped(m, at) => {
            let edge = heavy_edge(&m[at].quiver).expect("stopped on a heavy edge");
            (ClassStatus::InfiniteWitness { word: m[at].word.clone(), edge }, m)
        }
    };
    let class_weight =
        (status == ClassStatus::Finite).then(|| members.iter().map(|m| m.quiver.weight()).max().unwrap_or(0));
    Ok(ClassReport { status, members, class_weight, analyses: Vec::new() })
}

/// Finite-mutation-type verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteMutation {
    Yes { members: usize, class_weight: u64 },
    No { word: MutationWord, edge: (usize, usize, u64, u64) },
    Unknown,
}

pub fn is_finite_mutation_type(q: &ValuedQuiver, budget: &ClassBudget, exec: Exec) -> Result<FiniteMutation> {
    let r = explore_class(q, budget, exec)?;
    Ok(match r.status {
        ClassStatus::Finite => FiniteMutation::Yes { members: r.members.len(), class_weight: r.class_weight.unwrap_or(0) },
        ClassStatus::InfiniteWitness { word, edge } => FiniteMutation::No { word, edge },
        ClassStatus::BudgetExceeded => FiniteMutation::Unknown,
    })
}

/// Fills `report.analyses` with one entry per member.
pub fn analyze_members(report: &mut ClassReport, exec: Exec) -> Result<()> {
    let results = exec.map(&report.members, |m| -> Result<MemberAnalysis> {
        Ok(MemberAnalysis {
            rigid: detect_rigid_vertices(&m.quiver)?,
            vv_symmetric: is_vv_sigma_symmetric(&m.quiver)?.symmetric,
            simply_laced: m.quiver.is_simply_laced(),
            zigzag: m.quiver.is_zigzag(),
            weight: m.quiver.weight(),
        })
    });
    report.analyses = results.into_iter().collect::<Result<_>>()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn class(name: &str) -> ClassReport {
        explore_class(&catalog::get(name).unwrap().quiver, &ClassBudget::default(), Exec::Parallel).unwrap()
    }

    #[test]
    fn a3_class() {
        let r = class("a3");
        assert!(r.is_finite());
        assert_eq!(r.class_weight, Some(1));
        // path, sink/source pairs and the oriented triangle, up to relabeling
        assert_eq!(r.members.len(), 4);
    }

    #[test]
    fn members_replay_from_root() {
        let r = class("x6");
        let root = &r.members[0].quiver;
        for m in &r.members {
            assert_eq!(root.apply_word(&m.word).unwrap(), m.quiver);
        }
    }

    #[test]
    fn heavy_root_gives_empty_witness() {
        let q = ValuedQuiver::new(2, 0, &[(0, 1, 2, 3)], None).unwrap();
        let r = explore_class(&q, &ClassBudget::default(), Exec::Sequential).unwrap();
        assert_eq!(r.status, ClassStatus::InfiniteWitness { word: MutationWord::empty(), edge: (0, 1, 2, 3) });
    }

    #[test]
    fn budget_is_not_a_verdict() {
        let b = ClassBudget { max_members: 2, max_depth: 64 };
        let r = explore_class(&catalog::get("e8").unwrap().quiver, &b, Exec::Sequential).unwrap();
        assert_eq!(r.status, ClassStatus::BudgetExceeded);
        assert_eq!(r.class_weight, None);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let q = catalog::get("e7_1").unwrap().quiver;
        let a = explore_class(&q, &ClassBudget::default(), Exec::Parallel).unwrap();
        let b = explore_class(&q, &ClassBudget::default(), Exec::Sequential).unwrap();
        let words = |r: &ClassReport| r.members.iter().map(|m| m.word.clone()).collect::<Vec<_>>();
        assert_eq!(words(&a), words(&b));
    }
}
