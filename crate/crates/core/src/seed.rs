//! Seeds, the exchange relation, and bounded seed closures.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::budget::SeedBudget;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Vars};
use crate::par::Exec;
use crate::quiver::{MutationWord, Permutation, QuiverSpec, ValuedQuiver};

/// An extended cluster together with its quiver; position `i` sits at vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    quiver: ValuedQuiver,
    cluster: Vec<LaurentPoly>,
}

impl Seed {
    /// Cluster `x1..xn`, frozen `f1..fm`.
    pub fn initial(q: &ValuedQuiver) -> Result<Seed> {
        let violations = q.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let vars = Vars::new(q.n(), q.m());
        let cluster = (0..q.n()).map(|i| LaurentPoly::variable(vars, i)).collect();
        Ok(Seed { quiver: q.clone(), cluster })
    }

    /// Assembles a seed from parts, checking shapes and the Laurent conditions.
    pub fn from_parts(quiver: ValuedQuiver, cluster: Vec<LaurentPoly>) -> Result<Seed> {
        let vars = Vars::new(quiver.n(), quiver.m());
        if cluster.len() != quiver.n() {
            return Err(Error::Precondition(format!(
                "cluster has {} entries, quiver rank is {}",
                cluster.len(),
                quiver.n()
            )));
        }
        for x in &cluster {
            if x.vars() != vars {
                return Err(Error::Precondition("cluster entry lives in the wrong ring".into()));
            }
            check_laurent(x)?;
        }
        Ok(Seed { quiver, cluster })
    }

    pub fn quiver(&self) -> &ValuedQuiver {
        &self.quiver
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn vars(&self) -> Vars {
        Vars::new(self.quiver.n(), self.quiver.m())
    }

    /// The frozen generators, always `f1..fm`.
    pub fn frozen(&self) -> Vec<LaurentPoly> {
        let vars = self.vars();
        (self.quiver.n()..self.quiver.size()).map(|j| LaurentPoly::variable(vars, j)).collect()
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let quiver = self.quiver.mutate(k)?;
        let refs: Vec<&LaurentPoly> = self.cluster.iter().collect();
        let fresh = exchange(&self.quiver, &refs, k)?;
        let mut cluster = self.cluster.clone();
        cluster[k] = fresh;
        Ok(Seed { quiver, cluster })
    }

    /// Reduces the word, then applies it right to left.
    pub fn apply_word(&self, word: &MutationWord) -> Result<Seed> {
        let mut s = self.clone();
        for k in word.reduced().application_order() {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Moves position `i` to `sigma(i)` together with the quiver vertex.
    pub fn permute(&self, sigma: &Permutation) -> Result<Seed> {
        let quiver = self.quiver.permute(sigma)?;
        let mut cluster = self.cluster.clone();
        for (i, x) in self.cluster.iter().enumerate() {
            cluster[sigma.apply(i)] = x.clone();
        }
        Ok(Seed { quiver, cluster })
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            quiver: self.quiver.to_spec(),
            cluster: self.cluster.iter().map(|x| x.to_fraction_string()).collect(),
            frozen: self.frozen().iter().map(|x| x.to_string()).collect(),
            cluster_terms: Some(self.cluster.iter().map(|x| x.to_term_list()).collect()),
        }
    }

    /// Parses a seed; without `cluster_terms` the initial seed of the quiver is returned.
    pub fn from_json(json: &SeedJson) -> Result<Seed> {
        let quiver = ValuedQuiver::from_spec(&json.quiver)?;
        let Some(terms) = &json.cluster_terms else {
            return Seed::initial(&quiver);
        };
        let vars = Vars::new(quiver.n(), quiver.m());
        let mut cluster = Vec::with_capacity(terms.len());
        for entry in terms {
            let mut parsed = Vec::with_capacity(entry.len());
            for (c, e) in entry {
                let c: BigInt = c
                    .parse()
                    .map_err(|_| Error::Precondition(format!("bad coefficient {c:?}")))?;
                parsed.push((c, e.clone()));
            }
            cluster.push(LaurentPoly::from_terms(vars, parsed)?);
        }
        Seed::from_parts(quiver, cluster)
    }
}

/// Serialized seed. `cluster_terms` carries the exact entries so a seed can be read back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedJson {
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub cluster: Vec<String>,
    #[serde(default)]
    pub frozen: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_terms: Option<Vec<Vec<(String, Vec<i32>)>>>,
}

fn check_laurent(x: &LaurentPoly) -> Result<()> {
    if x.is_zero() {
        return Err(Error::LaurentViolation("zero cluster variable".into()));
    }
    if !x.frozen_exponents_nonnegative() {
        return Err(Error::LaurentViolation(format!("negative frozen exponent in {x}")));
    }
    Ok(())
}

/// The exchange numerator at `k`: both monomials read off column `k`.
fn exchange_numerator(q: &ValuedQuiver, cluster: &[&LaurentPoly], k: usize) -> Result<LaurentPoly> {
    let vars = Vars::new(q.n(), q.m());
    let mut pos = LaurentPoly::one(vars);
    let mut neg = LaurentPoly::one(vars);
    for j in 0..q.size() {
        let b = q.b(j, k);
        if b == 0 {
            continue;
        }
        let e = u32::try_from(b.unsigned_abs()).map_err(|_| Error::Overflow)?;
        let factor = if j < q.n() { cluster[j].pow(e)? } else { LaurentPoly::variable(vars, j).pow(e)? };
        if b > 0 {
            pos = pos.mul(&factor)?;
        } else {
            neg = neg.mul(&factor)?;
        }
    }
    Ok(pos.add(&neg)?)
}

/// New cluster variable at `k`, checked against the Laurent conditions.
pub fn exchange(q: &ValuedQuiver, cluster: &[&LaurentPoly], k: usize) -> Result<LaurentPoly> {
    if k >= q.n() {
        return Err(Error::NotExchangeable { vertex: k + 1, rank: q.n() });
    }
    let num = exchange_numerator(q, cluster, k)?;
    let fresh = num.div_exact(cluster[k])?;
    check_laurent(&fresh)?;
    Ok(fresh)
}

/// Upper bound on the term count of the exchange numerator, computed cheaply.
fn numerator_size_bound(q: &ValuedQuiver, cluster: &[&LaurentPoly], k: usize) -> u128 {
    let mut pos: u128 = 1;
    let mut neg: u128 = 1;
    for j in 0..q.n() {
        let b = q.b(j, k);
        if b == 0 {
            continue;
        }
        let t = cluster[j].len() as u128;
        let e = b.unsigned_abs().min(64) as u32;
        let f = t.saturating_pow(e).max(1);
        if b > 0 {
            pos = pos.saturating_mul(f);
        } else {
            neg = neg.saturating_mul(f);
        }
    }
    pos.saturating_add(neg)
}

/// Why a closure stopped early.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    Seeds,
    Depth,
    Terms,
}

/// One node of the explored cluster pattern.
#[derive(Clone, Debug)]
pub struct PatternNode {
    /// Variable ids by position.
    pub ids: Vec<u32>,
    pub quiver: ValuedQuiver,
    /// Word from the root seed.
    pub word: MutationWord,
    pub parent: Option<usize>,
    /// Vertex mutated on the edge from the parent.
    pub label: Option<usize>,
    pub depth: usize,
}

/// Breadth-first seed closure up to simultaneous relabeling of positions and vertices.
#[derive(Clone, Debug)]
pub struct Closure {
    pub root: ValuedQuiver,
    /// Distinct cluster variables indexed by id, in discovery order.
    pub variables: Vec<LaurentPoly>,
    pub nodes: Vec<PatternNode>,
    pub truncated: Option<Truncation>,
    /// Exchanges computed exactly.
    pub exact_exchanges: usize,
    /// Exchanges recognised by fingerprint as a known variable.
    pub cached_exchanges: usize,
}

impl Closure {
    pub fn is_complete(&self) -> bool {
        self.truncated.is_none()
    }

    pub fn seed(&self, node: usize) -> Seed {
        let nd = &self.nodes[node];
        Seed {
            quiver: nd.quiver.clone(),
            cluster: nd.ids.iter().map(|&i| self.variables[i as usize].clone()).collect(),
        }
    }
}

/// Seed identity up to a simultaneous relabeling: positions sorted by variable id.
fn seed_key(ids: &[u32], q: &ValuedQuiver) -> (Vec<u32>, Vec<i64>) {
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by_key(|&i| ids[i]);
    let mut images = vec![0; ids.len()];
    for (p, &i) in order.iter().enumerate() {
        images[i] = p;
    }
    let sigma = Permutation::from_images(images).expect("sorting yields a permutation");
    let p = q.permute(&sigma).expect("rank matches").without_frozen_arrows();
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    (sorted, p.raw().to_vec())
}

/// Mersenne prime 2^61 - 1; fingerprints are values modulo it.
const FP_PRIME: u64 = (1 << 61) - 1;
const FP_POINTS: usize = 3;

/// Values of a variable at fixed random points, used to recognise a known
/// variable without redoing the exact exchange.
type Fingerprint = [u64; FP_POINTS];

fn mul_mod(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % FP_PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn fp_points(size: usize) -> Vec<Vec<u64>> {
    let mut rng = StdRng::seed_from_u64(0x5eed_c1a5);
    (0..FP_POINTS).map(|_| (0..size).map(|_| rng.gen_range(2..FP_PRIME)).collect()).collect()
}

fn fingerprint(x: &LaurentPoly, points: &[Vec<u64>]) -> Fingerprint {
    std::array::from_fn(|r| x.eval_mod(&points[r], FP_PRIME))
}

/// Fingerprint of the exchange at `k`, or `None` if the old value vanishes.
fn exchange_fingerprint(q: &ValuedQuiver, fps: &[&Fingerprint], points: &[Vec<u64>], k: usize) -> Option<Fingerprint> {
    let mut out = [0; FP_POINTS];
    for (r, slot) in out.iter_mut().enumerate() {
        let (mut pos, mut neg) = (1, 1);
        for j in 0..q.size() {
            let b = q.b(j, k);
            if b == 0 {
                continue;
            }
            let v = if j < q.n() { fps[j][r] } else { points[r][j] };
            let f = pow_mod(v, b.unsigned_abs());
            if b > 0 {
                pos = mul_mod(pos, f);
            } else {
                neg = mul_mod(neg, f);
            }
        }
        let old = fps[k][r];
        if old == 0 {
            return None;
        }
        *slot = mul_mod((pos + neg) % FP_PRIME, pow_mod(old, FP_PRIME - 2));
    }
    Some(out)
}

/// Breadth-first closure of the seed pattern of `q` within `budget`.
///
/// An exchange whose fingerprint matches a known variable reuses it; every
/// other exchange is computed exactly and checked for the Laurent property.
pub fn enumerate_cluster_variables(q: &ValuedQuiver, budget: &SeedBudget, exec: Exec) -> Result<Closure> {
    let root_seed = Seed::initial(q)?;
    let n = q.n();
    let points = fp_points(q.size());
    let mut variables: Vec<LaurentPoly> = root_seed.cluster.clone();
    let mut fps: Vec<Fingerprint> = variables.iter().map(|x| fingerprint(x, &points)).collect();
    let mut by_fp: HashMap<Fingerprint, u32> = fps.iter().enumerate().map(|(i, f)| (*f, i as u32)).collect();
    let mut total_terms: usize = variables.iter().map(|x| x.len()).sum();
    let root_ids: Vec<u32> = (0..n as u32).collect();
    let mut seen: HashMap<(Vec<u32>, Vec<i64>), usize> = HashMap::new();
    seen.insert(seed_key(&root_ids, q), 0);
    let mut nodes = vec![PatternNode {
        ids: root_ids,
        quiver: q.clone(),
        word: MutationWord::empty(),
        parent: None,
        label: None,
        depth: 0,
    }];
    let mut exact = 0usize;
    let mut exchanges = 0usize;
    let mut truncated = None;
    let mut level_start = 0;
    let mut depth = 0;

    'levels: while level_start < nodes.len() {
        let level_end = nodes.len();
        let at_cap = depth >= budget.max_depth;
        let tasks: Vec<(usize, usize)> = (level_start..level_end)
            .flat_map(|i| {
                let skip = nodes[i].label;
                (0..n).filter(move |&k| Some(k) != skip).map(move |k| (i, k))
            })
            .collect();

        // unknown fingerprints are computed exactly, in parallel
        let mut answers: Vec<Option<u32>> = Vec::with_capacity(tasks.len());
        let mut pending: Vec<usize> = Vec::new();
        let mut pending_fp: HashSet<Fingerprint> = HashSet::new();
        for (t, &(i, k)) in tasks.iter().enumerate() {
            let local: Vec<&Fingerprint> = nodes[i].ids.iter().map(|&v| &fps[v as usize]).collect();
            match exchange_fingerprint(&nodes[i].quiver, &local, &points, k) {
                Some(f) => match by_fp.get(&f) {
                    Some(&id) => answers.push(Some(id)),
                    None => {
                        answers.push(None);
                        if pending_fp.insert(f) {
                            pending.push(t);
                        }
                    }
                },
                None => {
                    answers.push(None);
                    pending.push(t);
                }
            }
        }
        for &t in &pending {
            let (i, k) = tasks[t];
            let refs: Vec<&LaurentPoly> = nodes[i].ids.iter().map(|&v| &variables[v as usize]).collect();
            if numerator_size_bound(&nodes[i].quiver, &refs, k) > budget.max_terms as u128 {
                truncated = Some(Truncation::Terms);
                break 'levels;
            }
        }
        let computed: Vec<Result<LaurentPoly>> = exec.map(&pending, |&t| {
            let (i, k) = tasks[t];
            let refs: Vec<&LaurentPoly> = nodes[i].ids.iter().map(|&v| &variables[v as usize]).collect();
            exchange(&nodes[i].quiver, &refs, k)
        });
        exact += pending.len();
        for poly in computed {
            let poly = poly?;
            let f = fingerprint(&poly, &points);
            if let Entry::Vacant(slot) = by_fp.entry(f) {
                slot.insert(variables.len() as u32);
                total_terms += poly.len();
                fps.push(f);
                variables.push(poly);
            }
        }
        if total_terms > budget.max_terms {
            truncated = Some(Truncation::Terms);
            break;
        }

        for (t, &(i, k)) in tasks.iter().enumerate() {
            let id = match answers[t] {
                Some(id) => id,
                None => {
                    let local: Vec<&Fingerprint> = nodes[i].ids.iter().map(|&v| &fps[v as usize]).collect();
                    let f = exchange_fingerprint(&nodes[i].quiver, &local, &points, k);
                    match f.and_then(|f| by_fp.get(&f)) {
                        Some(&id) => id,
                        // a vanishing fingerprint: fall back to the exact value
                        None => {
                            let refs: Vec<&LaurentPoly> =
                                nodes[i].ids.iter().map(|&v| &variables[v as usize]).collect();
                            let poly = exchange(&nodes[i].quiver, &refs, k)?;
                            match variables.iter().position(|x| *x == poly) {
                                Some(id) => id as u32,
                                None => {
                                    fps.push(fingerprint(&poly, &points));
                                    variables.push(poly);
                                    (variables.len() - 1) as u32
                                }
                            }
                        }
                    }
                }
            };
            exchanges += 1;
            let mut ids = nodes[i].ids.clone();
            ids[k] = id;
            let quiver = nodes[i].quiver.mutate(k)?;
            let key = seed_key(&ids, &quiver);
            if seen.contains_key(&key) {
                continue;
            }
            if at_cap {
                truncated = Some(Truncation::Depth);
                break 'levels;
            }
            if nodes.len() >= budget.max_seeds {
                truncated = Some(Truncation::Seeds);
                break 'levels;
            }
            seen.insert(key, nodes.len());
            let word = nodes[i].word.push_applied(k);
            nodes.push(PatternNode { ids, quiver, word, parent: Some(i), label: Some(k), depth: depth + 1 });
        }
        level_start = level_end;
        depth += 1;
    }
    let cached = exchanges.saturating_sub(exact);
    Ok(Closure { root: q.clone(), variables, nodes, truncated, exact_exchanges: exact, cached_exchanges: cached })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ValuedQuiver {
        ValuedQuiver::new(2, 0, &[(0, 1, 1, 1)], None).unwrap()
    }

    #[test]
    fn a2_first_exchange() {
        let s = Seed::initial(&a2()).unwrap().mutate(0).unwrap();
        assert_eq!(s.cluster()[0].to_fraction_string(), "(x2 + 1)/x1");
        assert_eq!(s.cluster()[1].to_string(), "x2");
    }

    #[test]
    fn doubled_edge_exchange() {
        let q = ValuedQuiver::new(2, 0, &[(0, 1, 2, 2)], None).unwrap();
        let s = Seed::initial(&q).unwrap().mutate(0).unwrap();
        assert_eq!(s.cluster()[0].to_fraction_string(), "(x2^2 + 1)/x1");
    }

    #[test]
    fn involution_and_untouched_positions() {
        let q = ValuedQuiver::new(3, 1, &[(0, 1, 1, 2), (1, 2, 1, 1), (3, 0, 1, 1)], None).unwrap();
        let s = Seed::initial(&q).unwrap();
        for k in 0..3 {
            let t = s.mutate(1).unwrap().mutate(k).unwrap();
            assert_eq!(t.mutate(k).unwrap(), s.mutate(1).unwrap());
            for p in 0..3 {
                if p != k {
                    assert_eq!(t.cluster()[p], s.mutate(1).unwrap().cluster()[p]);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = Seed::initial(&a2()).unwrap().mutate(0).unwrap().mutate(1).unwrap();
        let j = s.to_json();
        assert_eq!(j.cluster[1], "(x1 + x2 + 1)/(x1*x2)");
        assert_eq!(Seed::from_json(&j).unwrap(), s);
    }

    #[test]
    fn a2_closure_counts() {
        let c = enumerate_cluster_variables(&a2(), &SeedBudget::default(), Exec::Sequential).unwrap();
        assert!(c.is_complete());
        assert_eq!(c.variables.len(), 5);
        assert_eq!(c.nodes.len(), 5);
        for (i, nd) in c.nodes.iter().enumerate() {
            assert_eq!(Seed::initial(&a2()).unwrap().apply_word(&nd.word).unwrap(), c.seed(i));
        }
    }

    #[test]
    fn closure_truncates_on_seed_budget() {
        let markov = ValuedQuiver::new(3, 0, &[(0, 1, 2, 2), (1, 2, 2, 2), (2, 0, 2, 2)], None).unwrap();
        let budget = SeedBudget { max_seeds: 30, ..SeedBudget::default() };
        let c = enumerate_cluster_variables(&markov, &budget, Exec::Sequential).unwrap();
        assert_eq!(c.truncated, Some(Truncation::Seeds));
        assert_eq!(c.nodes.len(), 30);
    }
}
