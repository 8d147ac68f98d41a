//! Acceptance suite: one PASS/FAIL line per criterion, details indented below.
//!
//! A failing check fails the target unless it is listed in `KNOWN_FAILURES`;
//! a listed check that starts passing fails the target too.

mod common;

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quiverlab::budget::{ClassBudget, SeedBudget};
use quiverlab::catalog;
use quiverlab::class::{
    explore_class, has_simply_laced_avenue, is_symmetric_algebra, is_vv_sigma_symmetric, symmetric_cluster_variables,
    ClassStatus, NotSymmetric, SymmetricAlgebra,
};
use quiverlab::quiver::rules::mutate_by_rules;
use quiverlab::seed::Closure;
use quiverlab::{
    canonical_form, find_symmetry, Exec, LaurentPoly, MutationWord, Seed, ValuedQuiver, Vars,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Checks that cannot pass with the catalog as transcribed, with the reason.
const KNOWN_FAILURES: &[(&str, &str)] = &[
    ("finite: ex_3_8_d", "the displayed rank 6 quiver has an infinite class under every consistent symmetrizer"),
    ("v-v: ex_3_8_d", "vertex i of the displayed rank 6 quiver has no certificate of length 1 or 2"),
];

struct Check {
    label: String,
    ok: bool,
    note: String,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
}

impl Criterion {
    fn check(&mut self, label: impl Into<String>, ok: bool, note: impl Into<String>) {
        self.checks.push(Check { label: label.into(), ok, note: note.into() });
    }

    fn timed(&mut self, label: &str, took: Duration, limit: Duration) {
        self.check(format!("time: {label}"), took < limit, format!("{took:.2?} (limit {limit:?})"));
    }
}

/// Every cluster variable produced during the run, for the Laurent criterion.
#[derive(Default)]
struct Produced {
    variables: Vec<LaurentPoly>,
    replayed: usize,
    replay_mismatches: Vec<String>,
}

impl Produced {
    fn closure(&mut self, name: &str, c: &Closure, replay: bool) {
        self.variables.extend(c.variables.iter().cloned());
        if !replay {
            return;
        }
        // fingerprint identifications must agree with exact replays of the words
        let root = Seed::initial(&c.root).expect("valid root");
        for (i, nd) in c.nodes.iter().enumerate() {
            let s = root.apply_word(&nd.word).expect("replay");
            self.replayed += 1;
            if s != c.seed(i) {
                self.replay_mismatches.push(format!("{name} node {i}"));
            }
        }
    }
}

fn cat(name: &str) -> ValuedQuiver {
    catalog::get(name).unwrap().quiver
}

fn criterion_mutation() -> Criterion {
    let mut c = Criterion::default();
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(1000);
    let (mut disagree, mut not_involutive, mut mutations) = (0, 0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=2);
        let q = common::random_quiver(&mut rng, n, m);
        for k in 0..n {
            let a = q.mutate(k).unwrap();
            let b = mutate_by_rules(&q, k).unwrap();
            mutations += 1;
            disagree += usize::from(a.without_frozen_arrows() != b.without_frozen_arrows());
            not_involutive += usize::from(a.mutate(k).unwrap() != q);
        }
    }
    c.check("matrix and arrow rules agree", disagree == 0, format!("{mutations} mutations, {disagree} disagreements"));
    c.check("mutation is an involution", not_involutive == 0, format!("{not_involutive} failures"));
    c.timed("1000 random quivers", t.elapsed(), Duration::from_secs(10));
    c
}

fn spec_edges(q: &ValuedQuiver) -> HashSet<(usize, usize, [u64; 2])> {
    q.to_spec().edges.iter().map(|e| (e.from, e.to, e.v)).collect()
}

fn named_edges(e: &catalog::CatalogEntry, edges: &[(&str, &str, u64, u64)]) -> HashSet<(usize, usize, [u64; 2])> {
    edges.iter().map(|&(f, t, a, b)| (e.vertex(f).unwrap() + 1, e.vertex(t).unwrap() + 1, [a, b])).collect()
}

fn criterion_displays() -> Criterion {
    let mut c = Criterion::default();
    let t = Instant::now();

    let e = catalog::get("paper_2_4").unwrap();
    let got = e.quiver.mutate(e.vertex("2").unwrap()).unwrap();
    let shown = named_edges(
        &e,
        &[
            ("3", "3_1", 2, 3),
            ("2", "3", 3, 2),
            ("2", "2_1", 1, 2),
            ("2_1", "1", 2, 2),
            ("1_1", "1", 1, 1),
            ("1", "2", 2, 1),
            ("1", "1_2", 2, 3),
        ],
    );
    c.check("mu_2 of paper_2_4 edge for edge", spec_edges(&got) == shown, format!("{:?}", got.to_spec().edges));

    let e = catalog::get("ex_2_8_2").unwrap();
    let got = e.quiver.apply_word(&MutationWord::new(vec![3, 2, 1])).unwrap();
    // the display: 1 -> 2 -> 3 -> 4 with the weight-2 edge now at 3 -> 4
    let shown = ValuedQuiver::new(4, 0, &[(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 2)], None).unwrap();
    let heavy: Vec<_> = got.edges().into_iter().filter(|x| x.2 * x.3 == 2).collect();
    c.check(
        "mu_4 mu_3 mu_2 moves the weight-2 edge to the far end",
        find_symmetry(&shown, &got, false).unwrap().is_some() && heavy.len() == 1 && heavy[0].0 != 0 && heavy[0].1 != 1,
        format!("{:?}", got.edges()),
    );

    let e = catalog::get("ex_2_8_3").unwrap();
    let (i, k) = (e.vertex("i").unwrap(), e.vertex("k").unwrap());
    let got = e.quiver.apply_word(&MutationWord::new(vec![i, k])).unwrap();
    // the display draws the (3,3) edge as j -> v; both mutations push it from v to j
    let shown = named_edges(&e, &[("k", "v", 1, 1), ("j", "k", 1, 1), ("j", "i", 1, 1), ("v", "j", 3, 3), ("i", "v", 1, 1)]);
    c.check(
        "mu_i mu_k of the simply-laced example has a (3,3) edge",
        got.edges().iter().any(|x| (x.2, x.3) == (3, 3)),
        format!("{:?}", got.edges()),
    );
    c.check("mu_i mu_k matches the display edge for edge", spec_edges(&got) == shown, format!("{:?}", got.edges()));
    c.timed("displays", t.elapsed(), Duration::from_secs(1));
    c
}

/// Labeled seed search with its own matrix mutation and exchange relation.
fn oracle_variable_count(q: &ValuedQuiver, max_seeds: usize) -> Option<usize> {
    let n = q.n();
    let size = q.size();
    let vars = Vars::new(n, q.m());
    let b0: Vec<Vec<i64>> = (0..size).map(|i| (0..size).map(|j| q.b(i, j)).collect()).collect();
    let mutate = |b: &Vec<Vec<i64>>, k: usize| -> Vec<Vec<i64>> {
        let mut out = b.clone();
        for i in 0..size {
            for j in 0..size {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        out
    };
    let exchange = |b: &Vec<Vec<i64>>, x: &Vec<LaurentPoly>, k: usize| -> LaurentPoly {
        let mut up = LaurentPoly::one(vars);
        let mut down = LaurentPoly::one(vars);
        for i in 0..size {
            let e = b[i][k].unsigned_abs() as u32;
            let xi = if i < n { x[i].clone() } else { LaurentPoly::variable(vars, i) };
            if b[i][k] > 0 {
                up = up.mul(&xi.pow(e).unwrap()).unwrap();
            } else if b[i][k] < 0 {
                down = down.mul(&xi.pow(e).unwrap()).unwrap();
            }
        }
        up.add(&down).unwrap().div_exact(&x[k]).unwrap()
    };
    let x0: Vec<LaurentPoly> = (0..n).map(|i| LaurentPoly::variable(vars, i)).collect();
    let key = |x: &Vec<LaurentPoly>| {
        let mut s: Vec<String> = x.iter().map(|p| p.to_string()).collect();
        s.sort();
        s
    };
    let mut seen: HashSet<Vec<String>> = HashSet::from([key(&x0)]);
    let mut found: HashSet<LaurentPoly> = x0.iter().cloned().collect();
    let mut frontier = vec![(b0, x0)];
    while let Some((b, x)) = frontier.pop() {
        for k in 0..n {
            let mut y = x.clone();
            y[k] = exchange(&b, &x, k);
            if seen.insert(key(&y)) {
                if seen.len() > max_seeds {
                    return None;
                }
                found.insert(y[k].clone());
                frontier.push((mutate(&b, k), y));
            }
        }
    }
    Some(found.len())
}

fn criterion_closures(produced: &mut Produced) -> Criterion {
    let mut c = Criterion::default();
    for (name, expected) in [("a2", 5), ("a3", 9)] {
        let q = cat(name);
        let oracle = oracle_variable_count(&q, 1000);
        c.check(format!("oracle: {name}"), oracle == Some(expected), format!("oracle counts {oracle:?}"));
        let t = Instant::now();
        let cl = quiverlab::seed::enumerate_cluster_variables(&q, &SeedBudget::default(), Exec::Parallel).unwrap();
        let took = t.elapsed();
        c.check(
            format!("closure: {name}"),
            cl.is_complete() && cl.variables.len() == expected,
            format!("{} variables, {} seeds", cl.variables.len(), cl.nodes.len()),
        );
        c.timed(name, took, Duration::from_secs(5));
        produced.closure(name, &cl, true);
    }
    for name in ["a4", "a5"] {
        let q = cat(name);
        let cl = quiverlab::seed::enumerate_cluster_variables(&q, &SeedBudget::default(), Exec::Parallel).unwrap();
        let oracle = oracle_variable_count(&q, 5000);
        c.check(format!("oracle agrees: {name}"), oracle == Some(cl.variables.len()), format!("{oracle:?}"));
        produced.closure(name, &cl, true);
    }
    c
}

fn criterion_finiteness() -> Criterion {
    let mut c = Criterion::default();
    let budget = ClassBudget::default();
    for &name in catalog::FINITE_MUTATION {
        let t = Instant::now();
        let r = explore_class(&cat(name), &budget, Exec::Parallel).unwrap();
        let took = t.elapsed();
        let note = match &r.status {
            ClassStatus::Finite => format!("{} members", r.members.len()),
            other => format!("{other:?}"),
        };
        c.check(format!("finite: {name}"), r.status == ClassStatus::Finite, note);
        c.timed(name, took, Duration::from_secs(60));
    }
    let r = explore_class(&cat("ex_2_8_3"), &budget, Exec::Parallel).unwrap();
    c.check(
        "infinite: ex_2_8_3",
        matches!(r.status, ClassStatus::InfiniteWitness { .. }),
        format!("{:?}", r.status),
    );
    let mut rng = StdRng::seed_from_u64(23);
    let mut quivers = vec![ValuedQuiver::new(2, 0, &[(0, 1, 2, 3)], None).unwrap()];
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(0..=1);
        quivers.push(common::random_quiver_with_23(&mut rng, n, m));
    }
    let mut bad = Vec::new();
    for q in &quivers {
        let r = explore_class(q, &budget, Exec::Parallel).unwrap();
        if let ClassStatus::InfiniteWitness { word, edge } = &r.status {
            let reached = q.apply_word(word).unwrap();
            if reached.valuation(edge.0, edge.1) != Some((edge.2, edge.3)) || edge.2 * edge.3 < 5 {
                bad.push(format!("bad witness {word}"));
            }
        } else {
            bad.push(format!("{:?}", q.to_spec()));
        }
    }
    c.check(
        "infinite: quivers with a (2,3) edge",
        bad.is_empty(),
        format!("{} quivers, failures {:?}", quivers.len(), bad.iter().take(3).collect::<Vec<_>>()),
    );
    c
}

/// Catalog entries of finite cluster type, where the seed closure completes.
const FINITE_TYPE: &[&str] =
    &["a2", "a3", "a4", "a5", "a6", "a7", "a8", "e6", "e7", "e8", "ex_3_3_1_a", "ex_3_8_f", "ex_2_8_2"];

fn small_valued() -> Vec<(&'static str, ValuedQuiver)> {
    vec![
        ("b2", ValuedQuiver::new(2, 0, &[(0, 1, 2, 1)], None).unwrap()),
        ("g2", ValuedQuiver::new(2, 0, &[(0, 1, 3, 1)], None).unwrap()),
        ("b3", ValuedQuiver::new(3, 0, &[(0, 1, 2, 1), (1, 2, 1, 1)], None).unwrap()),
        ("c3", ValuedQuiver::new(3, 0, &[(0, 1, 1, 2), (1, 2, 1, 1)], None).unwrap()),
        ("f4", ValuedQuiver::new(4, 0, &[(0, 1, 1, 1), (1, 2, 2, 1), (2, 3, 1, 1)], None).unwrap()),
    ]
}

fn criterion_classifier(produced: &mut Produced) -> Criterion {
    let mut c = Criterion::default();
    let budget = ClassBudget::default();
    let verdict = |q: &ValuedQuiver| is_symmetric_algebra(q, &budget, false, Exec::Parallel).unwrap();

    let mut yes: Vec<(String, ValuedQuiver)> = vec![("ex_3_3_1_b".into(), cat("ex_3_3_1_b"))];
    for &name in catalog::FINITE_MUTATION {
        let q = cat(name);
        if q.is_simply_laced() {
            yes.push((name.to_string(), q));
        }
    }
    for (name, q) in &yes {
        let v = verdict(q);
        c.check(format!("yes: {name}"), v == SymmetricAlgebra::Yes, format!("{v:?}"));
    }
    for name in ["rigid_3_2_a_y1z0", "rigid_3_2_a_y1z1", "rigid_3_2_a_y0z0", "rigid_3_2_b"] {
        let e = catalog::get(name).unwrap();
        let v = verdict(&e.quiver);
        let at_root = is_symmetric_algebra(&e.quiver, &budget, true, Exec::Parallel).unwrap();
        let ok = matches!(v, SymmetricAlgebra::No(NotSymmetric::Rigid { .. }))
            && matches!(at_root, SymmetricAlgebra::No(NotSymmetric::Rigid { vertex, .. }) if Some(vertex) == e.vertex("i"));
        c.check(format!("no, rigid at i: {name}"), ok, format!("{v:?}"));
    }
    let v = verdict(&cat("ex_2_8_3"));
    c.check("no, infinite: ex_2_8_3", matches!(v, SymmetricAlgebra::No(NotSymmetric::Infinite { .. })), format!("{v:?}"));

    // exhaustive comparison on every finite-type case
    let seeds = SeedBudget::default();
    let mut compared = Vec::new();
    let mut candidates: Vec<(String, ValuedQuiver)> =
        FINITE_TYPE.iter().map(|&name| (name.to_string(), cat(name))).collect();
    candidates.extend(small_valued().into_iter().map(|(n, q)| (n.to_string(), q)));
    for (name, q) in &candidates {
        let t = Instant::now();
        let s = symmetric_cluster_variables(q, &seeds, false, Exec::Parallel).unwrap();
        produced.closure(name, &s.closure, s.closure.nodes.len() <= 1000);
        let Some(equal) = s.equal else {
            c.check(format!("closure completes: {name}"), false, format!("{:?}", s.truncated()));
            continue;
        };
        let v = verdict(q);
        compared.push(name.clone());
        c.check(
            format!("matches variables: {name}"),
            (v == SymmetricAlgebra::Yes) == equal,
            format!("{}/{} symmetric, verdict {v:?}, {:.2?}", s.symmetric.len(), s.total(), t.elapsed()),
        );
    }
    c.check("finite-type cases compared", compared.len() == candidates.len(), compared.join(" "));
    for name in ["rigid_3_2_b", "markov_222"] {
        let s = symmetric_cluster_variables(&cat(name), &SeedBudget { max_seeds: 300, ..seeds }, false, Exec::Parallel)
            .unwrap();
        produced.closure(name, &s.closure, false);
    }
    c
}

fn criterion_vv() -> Criterion {
    let mut c = Criterion::default();
    let q = cat("ex_3_8_a");
    let r = explore_class(&q, &ClassBudget::default(), Exec::Parallel).unwrap();
    let keys: HashSet<_> = [canonical_form(&q, false).unwrap(), canonical_form(&q.negate(), false).unwrap()].into();
    let inside = r.members.iter().all(|m| keys.contains(&m.key));
    let neg_reached = r.position(&q.negate()).unwrap().is_some() && q.mutate(0).unwrap() == q.negate();
    c.check(
        "class of ex_3_8_a is {Q, -Q} up to symmetry",
        r.is_finite() && inside && neg_reached,
        format!("{} members", r.members.len()),
    );
    for name in ["ex_3_8_a", "ex_3_8_b", "ex_3_8_c", "ex_3_8_d", "ex_3_8_e", "ex_3_8_f"] {
        let v = is_vv_sigma_symmetric(&cat(name)).unwrap();
        let note = match v.failing_vertex {
            Some(x) => format!("no certificate at vertex {}", x + 1),
            None => format!("{} certificates", v.certificates.len()),
        };
        let verified = v.certificates.iter().all(|cert| {
            let q = cat(name);
            let mut w = vec![cert.vertex];
            w.extend(cert.counter);
            let p = q.apply_word(&MutationWord::from_application_order(&w)).unwrap();
            p == q.permute(&cert.permutation).unwrap().signed(cert.sign)
        });
        c.check(format!("v-v: {name}"), v.symmetric && verified, note);
    }
    let a5 = is_vv_sigma_symmetric(&cat("a5")).unwrap();
    c.check("v-v refused: a5", !a5.symmetric, format!("fails at {:?}", a5.failing_vertex.map(|x| x + 1)));
    c
}

fn criterion_avenue() -> Criterion {
    let mut c = Criterion::default();
    let q = cat("a4");
    for i in 0..4 {
        let note;
        let ok = match has_simply_laced_avenue(&q, i, 4, Exec::Parallel).unwrap() {
            Some(av) => {
                let w = av.word(i);
                let hit = find_symmetry(&q, &q.apply_word(&w).unwrap(), true).unwrap();
                note = format!("k = {}, word {w}, {hit:?}", av.k + 1);
                hit.is_some()
            }
            None => {
                note = "no avenue".into();
                false
            }
        };
        c.check(format!("avenue at vertex {}", i + 1), ok, note);
    }
    c
}

fn criterion_laurent(produced: &Produced) -> Criterion {
    let mut c = Criterion::default();
    let bad: Vec<String> = produced
        .variables
        .iter()
        .filter(|x| x.is_zero() || !x.frozen_exponents_nonnegative())
        .map(|x| x.to_string())
        .collect();
    c.check(
        "monomial denominators, frozen exponents >= 0",
        bad.is_empty(),
        format!("{} variables, {} violations", produced.variables.len(), bad.len()),
    );
    c.check(
        "closures agree with exact replays",
        produced.replay_mismatches.is_empty(),
        format!("{} seeds replayed, mismatches {:?}", produced.replayed, produced.replay_mismatches),
    );
    // the frozen example carries coefficients through every exchange
    let q = cat("paper_2_4");
    let mut s = Seed::initial(&q).unwrap();
    let mut ok = true;
    for k in [1, 0, 2, 1, 0, 2, 1] {
        s = s.mutate(k).unwrap();
        ok &= s.cluster().iter().all(|x| x.frozen_exponents_nonnegative());
    }
    c.check("frozen example along a word", ok, "");
    c
}

fn main() -> ExitCode {
    let mut produced = Produced::default();
    let timed = |f: &mut dyn FnMut() -> Criterion| {
        let t = Instant::now();
        let c = f();
        (c, t.elapsed())
    };
    let criteria: Vec<(&str, (Criterion, Duration))> = vec![
        ("mutation rules agree and involute", timed(&mut criterion_mutation)),
        ("displayed examples reproduced", timed(&mut criterion_displays)),
        ("finite-type closures", timed(&mut || criterion_closures(&mut produced))),
        ("finite and infinite mutation classes", timed(&mut criterion_finiteness)),
        ("symmetric-algebra classifier", timed(&mut || criterion_classifier(&mut produced))),
        ("vertex-by-vertex symmetry", timed(&mut criterion_vv)),
        ("simply-laced avenue on a4", timed(&mut criterion_avenue)),
    ];
    let laurent = timed(&mut || criterion_laurent(&produced));
    let mut ordered: Vec<(&str, &(Criterion, Duration))> = criteria.iter().map(|(n, c)| (*n, c)).collect();
    ordered.insert(2, ("Laurent phenomenon", &laurent));

    let known: HashMap<&str, &str> = KNOWN_FAILURES.iter().copied().collect();
    let mut unexpected = Vec::new();
    for (idx, (name, (crit, took))) in ordered.iter().enumerate() {
        let pass = crit.checks.iter().all(|x| x.ok);
        println!("{} criterion {}: {name} [{took:.2?}]", if pass { "PASS" } else { "FAIL" }, idx + 1);
        for x in &crit.checks {
            let tag = match (x.ok, known.get(x.label.as_str())) {
                (true, None) => "ok  ",
                (false, Some(_)) => "FAIL (known)",
                (false, None) => {
                    unexpected.push(x.label.clone());
                    "FAIL"
                }
                (true, Some(_)) => {
                    unexpected.push(format!("{} now passes", x.label));
                    "ok (listed as known failure)"
                }
            };
            if !x.ok || !x.note.is_empty() {
                println!("    {tag} {}: {}", x.label, x.note);
            }
            if let (false, Some(why)) = (x.ok, known.get(x.label.as_str())) {
                println!("         {why}");
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results: {unexpected:?}");
        ExitCode::FAILURE
    }
}
