use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bijection on the exchangeable vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::BadPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based images.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.iter().any(|&x| x == 0) {
            return Err(Error::BadPermutation(labels.len()));
        }
        Self::from_images(labels.iter().map(|x| x - 1).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", labels.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(&self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Mutation word stored in written order. The last letter is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationWord(Vec<usize>);

impl MutationWord {
    pub fn empty() -> Self {
        MutationWord(Vec::new())
    }

    /// From 0-based vertices in written order.
    pub fn new(letters: Vec<usize>) -> Self {
        MutationWord(letters)
    }

    /// From 1-based labels in written order, checked against rank `n`.
    pub fn from_labels(labels: &[usize], n: usize) -> Result<Self> {
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::NotExchangeable { vertex: l, rank: n });
            }
        }
        Ok(MutationWord(labels.iter().map(|l| l - 1).collect()))
    }

    /// The word that applies `vertices` one after another, first element first.
    pub fn from_application_order(vertices: &[usize]) -> Self {
        MutationWord(vertices.iter().rev().copied().collect())
    }

    pub fn single(k: usize) -> Self {
        MutationWord(vec![k])
    }

    /// `μ_i μ_j μ_i μ_j μ_i`.
    pub fn pentagon(i: usize, j: usize) -> Self {
        MutationWord(vec![i, j, i, j, i])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters in the order they are applied.
    pub fn application_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().rev().copied()
    }

    /// Written concatenation `self other`, so `other` is applied first.
    pub fn then_after(&self, other: &MutationWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MutationWord(v)
    }

    /// Prepends `k`, so it is applied after everything already in the word.
    pub fn push_applied(&self, k: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(k);
        v.extend_from_slice(&self.0);
        MutationWord(v)
    }

    /// The inverse word: letters reversed.
    pub fn reversed(&self) -> Self {
        MutationWord(self.0.iter().rev().copied().collect())
    }

    /// Cancels adjacent repeated letters until none remain.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<usize> = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        MutationWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Renames letters by `sigma`.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        MutationWord(self.0.iter().map(|&x| sigma.apply(x)).collect())
    }
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.labels().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl Serialize for MutationWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_nested_pairs() {
        let w = MutationWord::new(vec![0, 1, 1, 0, 2]);
        assert_eq!(w.reduced(), MutationWord::new(vec![2]));
        assert!(!w.is_reduced());
        assert!(MutationWord::pentagon(0, 1).is_reduced());
    }

    #[test]
    fn application_order_is_right_to_left() {
        let w = MutationWord::from_labels(&[3, 1, 2], 3).unwrap();
        assert_eq!(w.application_order().collect::<Vec<_>>(), vec![1, 0, 2]);
        assert_eq!(MutationWord::from_application_order(&[1, 0, 2]), w);
        assert!(MutationWord::from_labels(&[4], 3).is_err());
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::from_labels(&[2, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert_eq!(p.to_string(), "[2,3,1]");
    }
}
