//! Structural predicates. All of them read the exchangeable part unless a
//! function says otherwise.

use super::ValuedQuiver;

/// Edge weight at or above which an edge is heavy.
pub const HEAVY_WEIGHT: u64 = 5;

impl ValuedQuiver {
    /// Maximum edge weight over exchangeable pairs (0 without edges).
    pub fn weight(&self) -> u64 {
        let n = self.n();
        let mut w = 0;
        for i in 0..n {
            for j in i + 1..n {
                w = w.max(self.weight_between(i, j));
            }
        }
        w
    }

    /// Maximum weight including edges with one frozen endpoint.
    pub fn weight_with_frozen(&self) -> u64 {
        self.edges().iter().map(|e| e.2 * e.3).max().unwrap_or(0)
    }

    /// Heaviest exchangeable edge as `(from, to, weight)`.
    pub fn heaviest_edge(&self) -> Option<(usize, usize, u64)> {
        self.exchangeable_edges()
            .into_iter()
            .map(|(i, j, a, b)| (i, j, a * b))
            .max_by_key(|e| (e.2, std::cmp::Reverse((e.0, e.1))))
    }

    pub fn is_simply_laced(&self) -> bool {
        self.exchangeable_edges().iter().all(|e| e.2 == 1 && e.3 == 1)
    }

    pub fn has_heavy_edge(&self) -> bool {
        self.weight() >= HEAVY_WEIGHT
    }

    /// Every vertex is a leaf, a two-neighbour source or a two-neighbour target.
    pub fn is_zigzag(&self) -> bool {
        (0..self.n()).all(|v| {
            let nb = self.exchangeable_neighbors(v);
            match nb.len() {
                1 => true,
                2 => {
                    let out = nb.iter().filter(|&&w| self.b(v, w) > 0).count();
                    out == 0 || out == 2
                }
                _ => false,
            }
        })
    }

    /// Oriented 3-cycles `a -> b -> c -> a` on exchangeable vertices, `a` smallest.
    pub fn oriented_3cycles(&self) -> Vec<[usize; 3]> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in a + 1..n {
                    if b != c && self.b(a, b) > 0 && self.b(b, c) > 0 && self.b(c, a) > 0 {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    fn cycle_weights(&self, t: [usize; 3]) -> [u64; 3] {
        [
            self.weight_between(t[0], t[1]),
            self.weight_between(t[1], t[2]),
            self.weight_between(t[2], t[0]),
        ]
    }

    /// True when `t` is an oriented 3-cycle with two equal edge weights.
    pub fn is_isosceles_3cycle(&self, t: [usize; 3]) -> bool {
        self.is_oriented_3cycle(t) && {
            let w = self.cycle_weights(t);
            w[0] == w[1] || w[1] == w[2] || w[0] == w[2]
        }
    }

    pub fn is_equilateral_3cycle(&self, t: [usize; 3]) -> bool {
        self.is_oriented_3cycle(t) && {
            let w = self.cycle_weights(t);
            w[0] == w[1] && w[1] == w[2]
        }
    }

    pub fn is_oriented_3cycle(&self, t: [usize; 3]) -> bool {
        let [a, b, c] = t;
        let fwd = self.b(a, b) > 0 && self.b(b, c) > 0 && self.b(c, a) > 0;
        let bwd = self.b(b, a) > 0 && self.b(c, b) > 0 && self.b(a, c) > 0;
        fwd || bwd
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        let q = ValuedQuiver::new(2, 0, &[(0, 1, 2, 3)], None).unwrap();
        assert_eq!(q.weight(), 6);
        assert!(q.has_heavy_edge());
        let t = ValuedQuiver::new(3, 0, &[(0, 2, 4, 1), (1, 0, 1, 4), (2, 1, 2, 2)], Some(vec![1, 4, 4])).unwrap();
        assert_eq!(t.weight(), 4);
        assert!(!t.has_heavy_edge());
        assert_eq!(t.oriented_3cycles(), vec![[0, 2, 1]]);
        assert!(t.is_equilateral_3cycle([0, 2, 1]));
    }

    #[test]
    fn zigzag_by_definition() {
        let alt = ValuedQuiver::new(4, 0, &[(0, 1, 1, 1), (2, 1, 1, 1), (2, 3, 1, 1)], None).unwrap();
        assert!(alt.is_zigzag());
        let linear = ValuedQuiver::new(3, 0, &[(0, 1, 1, 1), (1, 2, 1, 1)], None).unwrap();
        assert!(!linear.is_zigzag());
        let two = ValuedQuiver::new(2, 0, &[(0, 1, 1, 1)], None).unwrap();
        assert!(two.is_zigzag());
    }

    #[test]
    fn frozen_edges_excluded_from_weight() {
        let q = ValuedQuiver::new(1, 1, &[(0, 1, 2, 3)], None).unwrap();
        assert_eq!(q.weight(), 0);
        assert_eq!(q.weight_with_frozen(), 6);
        assert!(q.is_simply_laced());
    }
}
