//! Infiniteness detectors and rigid-vertex patterns.

use std::sync::OnceLock;

use serde::Serialize;

use crate::budget::ClassBudget;
use crate::catalog;
use crate::error::Result;
use crate::par::Exec;
use crate::quiver::symmetry::find_symmetry;
use crate::quiver::{MutationWord, ValuedQuiver};

use super::{walk_class, Walk};

fn weight_of(q: &ValuedQuiver) -> u64 {
    q.weight()
}

/// True when some pair mutation of the triangle increases its weight:
/// `w(μ_x μ_y T) > w(μ_y T)` for an ordered pair `x != y`.
///
/// Requiring this for every pair rejects heavy triangles such as
/// (2,1), (1,3), (3,2), where one mutation breaks the cycle.
fn triangle_unbounded(t: &ValuedQuiver) -> Result<bool> {
    for y in 0..3 {
        let my = t.mutate(y)?;
        let wy = weight_of(&my);
        for x in (0..3).filter(|&x| x != y) {
            if weight_of(&my.mutate(x)?) > wy {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Oriented 3-cycles of `q` whose induced triangle is unbounded.
pub fn detect_unbounded_3cycles(q: &ValuedQuiver) -> Result<Vec<[usize; 3]>> {
    let mut out = Vec::new();
    for t in q.oriented_3cycles() {
        if triangle_unbounded(&q.induced(&t, &[]))? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Searches words of length at most `depth` for one making some 3-cycle
/// unbounded. `None` only means nothing was found at this depth.
pub fn is_pre_unbounded(q: &ValuedQuiver, depth: usize, exec: Exec) -> Result<Option<MutationWord>> {
    let hit = |x: &ValuedQuiver| detect_unbounded_3cycles(x).map(|v| !v.is_empty()).unwrap_or(false);
    if depth == 0 {
        return Ok(hit(q).then(MutationWord::empty));
    }
    // the walk expands one level past its cap
    let budget = ClassBudget { max_members: usize::MAX, max_depth: depth - 1 };
    Ok(match walk_class(q, &budget, exec, hit)? {
        Walk::Stopped(m, at) => Some(m[at].word.clone()),
        _ => None,
    })
}

fn non_isosceles(q: &ValuedQuiver) -> Option<[usize; 3]> {
    q.oriented_3cycles().into_iter().find(|&t| !q.is_isosceles_3cycle(t))
}

/// Outcome of the class scan for a non-isosceles oriented 3-cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsosceles {
    Yes { word: MutationWord, triple: [usize; 3] },
    No,
    Unknown,
}

pub fn has_non_isosceles_3cycle_in_class(q: &ValuedQuiver, budget: &ClassBudget, exec: Exec) -> Result<NonIsosceles> {
    Ok(match walk_class(q, budget, exec, |x| non_isosceles(x).is_some())? {
        Walk::Stopped(m, at) => {
            let triple = non_isosceles(&m[at].quiver).expect("stopped on a triangle");
            NonIsosceles::Yes { word: m[at].word.clone(), triple }
        }
        Walk::Closed(_) => NonIsosceles::No,
        Walk::Exhausted(_) => NonIsosceles::Unknown,
    })
}

/// A vertex of `q` playing the rigid role in one of the rigid patterns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RigidMatch {
    pub vertex: usize,
    pub pattern: &'static str,
    /// All vertices of the matched induced subquiver.
    pub support: Vec<usize>,
}

struct Pattern {
    name: &'static str,
    /// Every orientation of the undirected tail edges.
    variants: Vec<ValuedQuiver>,
    rigid: usize,
}

const PATTERN_NAMES: [&str; 4] = ["rigid_3_2_a_y1z1", "rigid_3_2_a_y1z0", "rigid_3_2_a_y0z0", "rigid_3_2_b"];

fn patterns() -> &'static [Pattern] {
    static CELL: OnceLock<Vec<Pattern>> = OnceLock::new();
    CELL.get_or_init(|| {
        PATTERN_NAMES
            .iter()
            .map(|&name| {
                let e = catalog::get(name).expect("pattern in catalog");
                let tails: Vec<(usize, usize)> = [("i", "1"), ("1", "2")]
                    .iter()
                    .filter_map(|&(a, b)| Some((e.vertex(a)?, e.vertex(b)?)))
                    .collect();
                let mut variants = Vec::new();
                for mask in 0..1u32 << tails.len() {
                    let mut edges = e.quiver.edges();
                    for (bit, &(a, b)) in tails.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            let pos = edges
                                .iter()
                                .position(|x| (x.0, x.1) == (a, b) || (x.0, x.1) == (b, a))
                                .expect("tail edge present");
                            let (f, t, u, v) = edges[pos];
                            edges[pos] = (t, f, v, u);
                        }
                    }
                    variants.push(ValuedQuiver::new(e.quiver.n(), 0, &edges, None).expect("valid variant"));
                }
                Pattern { name, variants, rigid: e.vertex("i").expect("rigid vertex named i") }
            })
            .collect()
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn edge_profile(q: &ValuedQuiver) -> Vec<(u64, u64)> {
    let mut p: Vec<(u64, u64)> = q.exchangeable_edges().iter().map(|e| (e.2.min(e.3), e.2.max(e.3))).collect();
    p.sort_unstable();
    p
}

/// Induced exchangeable subquivers symmetric (sign allowed) to a rigid pattern.
pub fn detect_rigid_vertices(q: &ValuedQuiver) -> Result<Vec<RigidMatch>> {
    let mut out = Vec::new();
    for pat in patterns() {
        let k = pat.variants[0].n();
        let profile = edge_profile(&pat.variants[0]);
        for set in subsets(q.n(), k) {
            let sub = q.induced(&set, &[]);
            if edge_profile(&sub) != profile {
                continue;
            }
            for v in &pat.variants {
                if let Some((sigma, _)) = find_symmetry(v, &sub, true)? {
                    out.push(RigidMatch { vertex: set[sigma.apply(pat.rigid)], pattern: pat.name, support: set.clone() });
                    break;
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(name: &str) -> ValuedQuiver {
        catalog::get(name).unwrap().quiver
    }

    #[test]
    fn unbounded_triangle() {
        // i -> j (2,1), j -> k (1,3), i - k of valuation (2,3) closing the cycle
        let q = ValuedQuiver::new(3, 0, &[(0, 1, 2, 1), (1, 2, 1, 3), (2, 0, 3, 2)], None).unwrap();
        assert_eq!(detect_unbounded_3cycles(&q).unwrap(), vec![[0, 1, 2]]);
        assert!(detect_unbounded_3cycles(&cat("ex_3_8_a")).unwrap().is_empty());
        assert!(detect_unbounded_3cycles(&cat("markov_222")).unwrap().is_empty());
    }

    #[test]
    fn example_quiver_is_pre_unbounded() {
        let q = cat("ex_2_8_3");
        assert!(detect_unbounded_3cycles(&q).unwrap().is_empty());
        let w = is_pre_unbounded(&q, 4, Exec::Sequential).unwrap().expect("found within depth 4");
        assert!(!detect_unbounded_3cycles(&q.apply_word(&w).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn rigid_patterns_find_themselves() {
        for name in PATTERN_NAMES {
            let e = catalog::get(name).unwrap();
            let hits = detect_rigid_vertices(&e.quiver).unwrap();
            let i = e.vertex("i").unwrap();
            assert!(hits.iter().any(|h| h.vertex == i && h.pattern == name), "{name}: {hits:?}");
        }
        assert!(detect_rigid_vertices(&cat("a2")).unwrap().is_empty());
        assert!(detect_rigid_vertices(&cat("e8")).unwrap().is_empty());
    }

    #[test]
    fn tails_match_either_orientation() {
        let e = catalog::get("rigid_3_2_a_y1z1").unwrap();
        let flipped = e.quiver.mutate(e.vertex("2").unwrap()).unwrap();
        let hits = detect_rigid_vertices(&flipped).unwrap();
        assert!(hits.iter().any(|h| h.pattern == "rigid_3_2_a_y1z1"));
    }

    #[test]
    fn a3_scan() {
        let b = ClassBudget::default();
        assert_eq!(has_non_isosceles_3cycle_in_class(&cat("a3"), &b, Exec::Sequential).unwrap(), NonIsosceles::No);
        assert_eq!(has_non_isosceles_3cycle_in_class(&cat("ex_3_8_a"), &b, Exec::Sequential).unwrap(), NonIsosceles::No);
        assert!(matches!(
            has_non_isosceles_3cycle_in_class(&cat("ex_2_8_3"), &b, Exec::Sequential).unwrap(),
            NonIsosceles::Yes { .. }
        ));
    }
}
