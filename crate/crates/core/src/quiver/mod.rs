//! Valued quivers and their exchange matrices.
//!
//! Vertices are dense 0-based indices internally: `0..n` exchangeable,
//! `n..n+m` frozen. Everything that crosses a process boundary (JSON, CLI,
//! mutation words) uses 1-based labels.

pub mod canon;
pub mod decompose;
pub mod matrix;
pub mod perm;
pub mod predicates;
pub mod rules;
pub mod symmetry;

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
pub use matrix::ExchangeMatrix;
pub use perm::{MutationWord, Permutation, Sign};

/// One edge of the JSON quiver format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: usize,
    pub to: usize,
    pub v: [u64; 2],
}

/// The JSON quiver format with 1-based vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub n: usize,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
}

/// A valued quiver stored as its exchange matrix together with `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuedQuiver {
    n: usize,
    m: usize,
    b: Vec<i64>,
    d: Vec<u64>,
}

impl ValuedQuiver {
    /// Builds a quiver from 0-based edges `(from, to, v_from_to, v_to_from)`.
    ///
    /// Connectivity of the exchangeable part is not required here; see
    /// [`ValuedQuiver::validate`].
    pub fn new(
        n: usize,
        m: usize,
        edges: &[(usize, usize, u64, u64)],
        d: Option<Vec<u64>>,
    ) -> Result<Self> {
        let spec = QuiverSpec {
            n,
            m,
            edges: edges
                .iter()
                .map(|&(f, t, a, b)| EdgeSpec { from: f + 1, to: t + 1, v: [a, b] })
                .collect(),
            d,
        };
        Self::from_spec(&spec)
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        let (q, violations) = build(spec);
        match q {
            Some(q) if violations.is_empty() => Ok(q),
            _ => Err(Error::Invalid(violations)),
        }
    }

    /// Every violated invariant of a spec, including exchangeable connectivity.
    pub fn validate_spec(spec: &QuiverSpec) -> Vec<Violation> {
        let (q, mut violations) = build(spec);
        if let Some(q) = q {
            violations.extend(q.validate());
        }
        violations
    }

    /// Invariants that only matter when the quiver heads a seed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(Violation::Empty);
        } else if !self.is_exchangeable_connected() {
            out.push(Violation::Disconnected);
        }
        out
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            n: self.n,
            m: self.m,
            edges: self
                .edges()
                .into_iter()
                .map(|(f, t, a, b)| EdgeSpec { from: f + 1, to: t + 1, v: [a, b] })
                .collect(),
            d: Some(self.d.clone()),
        }
    }

    pub(crate) fn from_parts(n: usize, m: usize, b: Vec<i64>, d: Vec<u64>) -> Self {
        debug_assert_eq!(b.len(), (n + m) * (n + m));
        debug_assert_eq!(d.len(), n + m);
        ValuedQuiver { n, m, b, d }
    }

    /// Rank: number of exchangeable vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.n + self.m
    }

    pub fn d(&self) -> &[u64] {
        &self.d
    }

    pub fn is_exchangeable(&self, v: usize) -> bool {
        v < self.n
    }

    /// Exchange matrix entry `b_ij`.
    #[inline]
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.size() + j]
    }

    pub(crate) fn raw(&self) -> &[i64] {
        &self.b
    }

    /// Valuation `(v_ij, v_ji)` when the edge `i -> j` is present.
    pub fn valuation(&self, i: usize, j: usize) -> Option<(u64, u64)> {
        let bij = self.b(i, j);
        (bij > 0).then(|| (bij as u64, (-self.b(j, i)) as u64))
    }

    /// Edge weight `v_ij * v_ji`, zero for absent pairs.
    pub fn weight_between(&self, i: usize, j: usize) -> u64 {
        (self.b(i, j) * self.b(j, i)).unsigned_abs()
    }

    fn frozen_pair(&self, i: usize, j: usize) -> bool {
        i >= self.n && j >= self.n
    }

    /// Displayed edges `(from, to, v_from_to, v_to_from)`; frozen-frozen arrows are omitted.
    pub fn edges(&self) -> Vec<(usize, usize, u64, u64)> {
        let s = self.size();
        let mut out = Vec::new();
        for i in 0..s {
            for j in 0..s {
                if self.frozen_pair(i, j) {
                    continue;
                }
                if let Some((a, b)) = self.valuation(i, j) {
                    out.push((i, j, a, b));
                }
            }
        }
        out
    }

    /// Edges with both endpoints exchangeable.
    pub fn exchangeable_edges(&self) -> Vec<(usize, usize, u64, u64)> {
        self.edges().into_iter().filter(|e| e.0 < self.n && e.1 < self.n).collect()
    }

    /// All vertices joined to `i` by an edge (frozen ones included).
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.size()).filter(|&j| j != i && self.b(i, j) != 0).collect()
    }

    /// Exchangeable neighbours of `i`.
    pub fn exchangeable_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| j != i && self.b(i, j) != 0).collect()
    }

    pub fn is_exchangeable_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in self.exchangeable_neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn check_exchangeable(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::NotExchangeable { vertex: k + 1, rank: self.n });
        }
        Ok(())
    }

    /// Mutation at the exchangeable vertex `k` by the matrix rule.
    pub fn mutate(&self, k: usize) -> Result<ValuedQuiver> {
        self.check_exchangeable(k)?;
        let s = self.size();
        let mut b = self.b.clone();
        for i in 0..s {
            let bik = self.b(i, k);
            for j in 0..s {
                let idx = i * s + j;
                if i == k || j == k {
                    b[idx] = -self.b[idx];
                } else if bik != 0 {
                    let bkj = self.b(k, j);
                    let prod = bik.checked_mul(bkj).ok_or(Error::Overflow)?;
                    if prod > 0 {
                        let delta = if bik > 0 { prod } else { -prod };
                        b[idx] = b[idx].checked_add(delta).ok_or(Error::Overflow)?;
                    }
                }
            }
        }
        Ok(ValuedQuiver { n: self.n, m: self.m, b, d: self.d.clone() })
    }

    /// Applies a mutation word right to left.
    pub fn apply_word(&self, word: &MutationWord) -> Result<ValuedQuiver> {
        let mut q = self.clone();
        for &k in word.letters().iter().rev() {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// Reverses every arrow and its valuation.
    pub fn negate(&self) -> ValuedQuiver {
        ValuedQuiver {
            n: self.n,
            m: self.m,
            b: self.b.iter().map(|x| -x).collect(),
            d: self.d.clone(),
        }
    }

    pub fn signed(&self, sign: Sign) -> ValuedQuiver {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => self.negate(),
        }
    }

    /// Relabels exchangeable vertex `i` as `sigma(i)`; frozen vertices stay put.
    pub fn permute(&self, sigma: &Permutation) -> Result<ValuedQuiver> {
        if sigma.len() != self.n {
            return Err(Error::BadPermutation(self.n));
        }
        let s = self.size();
        let map = |v: usize| if v < self.n { sigma.apply(v) } else { v };
        let mut b = vec![0; s * s];
        let mut d = vec![0; s];
        for i in 0..s {
            d[map(i)] = self.d[i];
            for j in 0..s {
                b[map(i) * s + map(j)] = self.b(i, j);
            }
        }
        Ok(ValuedQuiver { n: self.n, m: self.m, b, d })
    }

    /// Induced subquiver on `exch` (as exchangeable) and `frozen` (as frozen), in the given order.
    pub fn induced(&self, exch: &[usize], frozen: &[usize]) -> ValuedQuiver {
        let verts: Vec<usize> = exch.iter().chain(frozen).copied().collect();
        let s = verts.len();
        let mut b = vec![0; s * s];
        for (a, &i) in verts.iter().enumerate() {
            for (c, &j) in verts.iter().enumerate() {
                b[a * s + c] = self.b(i, j);
            }
        }
        let d = verts.iter().map(|&v| self.d[v]).collect();
        ValuedQuiver { n: exch.len(), m: frozen.len(), b, d }
    }

    /// Copy with frozen-frozen arrows cleared, used wherever those arrows must not count.
    pub fn without_frozen_arrows(&self) -> ValuedQuiver {
        let mut q = self.clone();
        let s = self.size();
        for i in self.n..s {
            for j in self.n..s {
                q.b[i * s + j] = 0;
            }
        }
        q
    }
}

/// Builds the quiver and collects construction-time violations.
fn build(spec: &QuiverSpec) -> (Option<ValuedQuiver>, Vec<Violation>) {
    let size = spec.n + spec.m;
    let mut violations = Vec::new();
    let mut pairs: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut b = vec![0i64; size * size];
    for e in &spec.edges {
        let mut ok = true;
        for v in [e.from, e.to] {
            if v == 0 || v > size {
                violations.push(Violation::OutOfRange { vertex: v, size });
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        if e.from == e.to {
            violations.push(Violation::Loop { vertex: e.from });
            continue;
        }
        if e.v[0] == 0 || e.v[1] == 0 {
            violations.push(Violation::ZeroValuation { from: e.from, to: e.to });
            continue;
        }
        let key = (e.from.min(e.to), e.from.max(e.to));
        if let Some(&(pf, pt)) = pairs.get(&key) {
            if pf == e.from {
                violations.push(Violation::DuplicateEdge { from: e.from, to: e.to });
            } else {
                violations.push(Violation::Antiparallel { a: pf, b: pt });
            }
            continue;
        }
        pairs.insert(key, (e.from, e.to));
        let (i, j) = (e.from - 1, e.to - 1);
        b[i * size + j] = e.v[0] as i64;
        b[j * size + i] = -(e.v[1] as i64);
    }

    let d = match &spec.d {
        Some(d) => {
            if d.len() != size {
                violations.push(Violation::BadSymmetrizerLength { expected: size, found: d.len() });
                None
            } else if let Some(pos) = d.iter().position(|&x| x == 0) {
                violations.push(Violation::NonPositiveSymmetrizer { vertex: pos + 1 });
                None
            } else {
                for i in 0..size {
                    for j in 0..size {
                        let bij = b[i * size + j];
                        if bij > 0 {
                            let bji = -b[j * size + i];
                            if d[i] as i128 * bij as i128 != bji as i128 * d[j] as i128 {
                                violations.push(Violation::NoSymmetrizer { from: i + 1, to: j + 1 });
                            }
                        }
                    }
                }
                Some(d.clone())
            }
        }
        None => match minimal_symmetrizer(size, &b) {
            Ok(d) => Some(d),
            Err(v) => {
                violations.push(v);
                None
            }
        },
    };
    let q = d.map(|d| ValuedQuiver { n: spec.n, m: spec.m, b, d });
    (q, violations)
}

/// Least positive integral `d` on each connected component of the full quiver.
pub(crate) fn minimal_symmetrizer(size: usize, b: &[i64]) -> std::result::Result<Vec<u64>, Violation> {
    // d_j / d_i as a reduced fraction relative to the component root
    let mut ratio: Vec<Option<(u128, u128)>> = vec![None; size];
    let mut d = vec![0u64; size];
    for root in 0..size {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some((1, 1));
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let (pi, qi) = ratio[i].expect("visited");
            for j in 0..size {
                let bij = b[i * size + j];
                if bij == 0 || i == j {
                    continue;
                }
                let bji = b[j * size + i];
                if bji == 0 || (bij > 0) == (bji > 0) {
                    return Err(Violation::NoSymmetrizer { from: i + 1, to: j + 1 });
                }
                // d_j = d_i * |b_ij| / |b_ji|
                let num = pi * bij.unsigned_abs() as u128;
                let den = qi * bji.unsigned_abs() as u128;
                let g = num.gcd(&den);
                let r = (num / g, den / g);
                match ratio[j] {
                    None => {
                        ratio[j] = Some(r);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != r => {
                        let (from, to) = if bij > 0 { (i, j) } else { (j, i) };
                        return Err(Violation::NoSymmetrizer { from: from + 1, to: to + 1 });
                    }
                    Some(_) => {}
                }
            }
        }
        let l = comp.iter().fold(1u128, |acc, &v| acc.lcm(&ratio[v].unwrap().1));
        let vals: Vec<u128> = comp.iter().map(|&v| {
            let (p, q) = ratio[v].unwrap();
            p * (l / q)
        }).collect();
        let g = vals.iter().fold(0u128, |acc, &x| acc.gcd(&x));
        for (&v, &x) in comp.iter().zip(&vals) {
            d[v] = u64::try_from(x / g).map_err(|_| Violation::NoSymmetrizer { from: v + 1, to: v + 1 })?;
        }
    }
    Ok(d)
}
