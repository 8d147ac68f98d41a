//! Descriptive classification of finite mutation classes by weight.

use std::sync::OnceLock;

use serde::Serialize;

use crate::budget::ClassBudget;
use crate::catalog;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::quiver::symmetry::find_symmetry;
use crate::quiver::ValuedQuiver;

use super::{explore_class, ClassReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weight2Witness {
    pub member: usize,
    pub edge: (usize, usize),
    /// Rank two, or every component left after removing the edge's ends is of type A.
    pub remainder_a_type: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeadFinding {
    pub member: usize,
    pub head: &'static str,
    /// Member vertices of the head, in the head's vertex order.
    pub vertices: Vec<usize>,
    /// Vertices outside the head adjacent to it.
    pub tails: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub weight: u64,
    pub weight2_witness: Option<Weight2Witness>,
    /// A member with a (3,1) edge, and the edge.
    pub edge_31: Option<(usize, (usize, usize))>,
    /// First occurrence of each head.
    pub heads: Vec<HeadFinding>,
    pub weight4_members: usize,
    /// Weight-4 members with a weight-4 edge in no recognized head.
    pub unclassified: Vec<usize>,
}

fn transpose(q: &ValuedQuiver) -> ValuedQuiver {
    let edges: Vec<_> = q.edges().into_iter().map(|(a, b, x, y)| (a, b, y, x)).collect();
    ValuedQuiver::new(q.n(), q.m(), &edges, None).expect("transposed valuations stay consistent")
}

fn heads() -> &'static [(&'static str, ValuedQuiver)] {
    static CELL: OnceLock<Vec<(&'static str, ValuedQuiver)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v: Vec<(&'static str, ValuedQuiver)> = [
            "leading_q_a_x1",
            "leading_q_a_x2",
            "leading_q_a_x3",
            "leading_q_a_x4",
            "leading_q_a",
            "markov_222",
            "leading_q_c_t1",
            "leading_q_c_t2",
            "leading_q_d",
        ]
        .iter()
        .map(|&n| (n, catalog::get(n).expect("head in catalog").quiver))
        .collect();
        let qa = transpose(&catalog::get("leading_q_a").expect("head").quiver);
        v.push(("leading_q_a_transposed", qa));
        v
    })
}

/// Is the exchangeable quiver on `verts` (connected, simply-laced) of type A?
fn is_a_type(q: &ValuedQuiver, verts: &[usize], exec: Exec) -> Result<bool> {
    let sub = q.induced(verts, &[]);
    if sub.n() <= 1 {
        return Ok(true);
    }
    if !sub.is_simply_laced() {
        return Ok(false);
    }
    let r = explore_class(&sub, &ClassBudget::default(), exec)?;
    Ok(r.is_finite()
        && r.members.iter().any(|m| {
            let e = m.quiver.exchangeable_edges();
            e.len() == sub.n() - 1 && (0..sub.n()).all(|v| m.quiver.exchangeable_neighbors(v).len() <= 2)
        }))
}

fn components(q: &ValuedQuiver, verts: &[usize]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = verts.to_vec();
    let mut out = Vec::new();
    while let Some(s) = left.pop() {
        let mut part = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let (near, far): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&w| q.b(v, w) != 0);
            left = far;
            part.extend(&near);
            stack.extend(near);
        }
        part.sort_unstable();
        out.push(part);
    }
    out
}

fn find_head(q: &ValuedQuiver, a: usize, b: usize) -> Result<Option<(&'static str, Vec<usize>)>> {
    let n = q.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
    for (name, head) in heads() {
        let extra = head.n() - 2;
        let mut picks: Vec<Vec<usize>> = Vec::new();
        if extra == 1 {
            picks.extend(others.iter().map(|&c| vec![c]));
        } else {
            for (x, &c) in others.iter().enumerate() {
                for &e in &others[x + 1..] {
                    picks.push(vec![c, e]);
                }
            }
        }
        for p in picks {
            let mut set = vec![a, b];
            set.extend(p);
            set.sort_unstable();
            if let Some((sigma, _)) = find_symmetry(head, &q.induced(&set, &[]), true)? {
                return Ok(Some((name, (0..head.n()).map(|h| set[sigma.apply(h)]).collect())));
            }
        }
    }
    Ok(None)
}

/// Weight of a finite class plus the witnesses the weight lemma predicts.
pub fn weight_classify(report: &ClassReport, exec: Exec) -> Result<WeightReport> {
    let Some(weight) = report.class_weight.filter(|_| report.is_finite()) else {
        return Err(Error::Precondition("weight classification needs a finite class".into()));
    };
    let mut out = WeightReport { weight, ..Default::default() };
    for (idx, m) in report.members.iter().enumerate() {
        let q = &m.quiver;
        let edges = q.exchangeable_edges();
        if weight == 2 && out.weight2_witness.as_ref().map_or(true, |w| !w.remainder_a_type) {
            let heavy: Vec<_> = edges.iter().filter(|e| e.2 * e.3 == 2).collect();
            if heavy.len() == 1 {
                let (i, j) = (heavy[0].0, heavy[0].1);
                let rest: Vec<usize> = (0..q.n()).filter(|&v| v != i && v != j).collect();
                let mut ok = true;
                for c in components(q, &rest) {
                    ok &= is_a_type(q, &c, exec)?;
                }
                out.weight2_witness = Some(Weight2Witness { member: idx, edge: (i, j), remainder_a_type: ok || q.n() == 2 });
            }
        }
        if out.edge_31.is_none() {
            if let Some(e) = edges.iter().find(|e| (e.2, e.3) == (3, 1) || (e.2, e.3) == (1, 3)) {
                out.edge_31 = Some((idx, (e.0, e.1)));
            }
        }
        if q.weight() == 4 {
            out.weight4_members += 1;
            let mut classified = true;
            for e in edges.iter().filter(|e| e.2 * e.3 == 4) {
                match find_head(q, e.0, e.1)? {
                    Some((head, vertices)) => {
                        if !out.heads.iter().any(|h| h.head == head) {
                            let mut tails: Vec<usize> = (0..q.n())
                                .filter(|v| !vertices.contains(v) && vertices.iter().any(|&h| q.b(*v, h) != 0))
                                .collect();
                            tails.sort_unstable();
                            out.heads.push(HeadFinding { member: idx, head, vertices, tails });
                        }
                    }
                    None => classified = false,
                }
            }
            if !classified {
                out.unclassified.push(idx);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(q: &ValuedQuiver) -> ClassReport {
        explore_class(q, &ClassBudget::default(), Exec::Sequential).unwrap()
    }

    #[test]
    fn head_q_a_1() {
        let r = report(&catalog::get("leading_q_a_x1").unwrap().quiver);
        let w = weight_classify(&r, Exec::Sequential).unwrap();
        assert_eq!(w.weight, 4);
        assert!(w.heads.iter().any(|h| h.head == "leading_q_a_x1"));
    }

    #[test]
    fn weight_two_path() {
        let r = report(&catalog::get("ex_2_8_2").unwrap().quiver);
        let w = weight_classify(&r, Exec::Sequential).unwrap();
        assert_eq!(w.weight, 2);
        assert!(w.weight2_witness.unwrap().remainder_a_type);
    }

    #[test]
    fn weight_three_rank_two() {
        let q = ValuedQuiver::new(2, 0, &[(0, 1, 3, 1)], None).unwrap();
        let w = weight_classify(&report(&q), Exec::Sequential).unwrap();
        assert_eq!(w.weight, 3);
        assert_eq!(w.edge_31, Some((0, (0, 1))));
    }
}
