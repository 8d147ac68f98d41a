#![allow(dead_code)]

use num_integer::Integer;
use quiverlab::ValuedQuiver;
use rand::Rng;

/// Random connected valid quiver with `n` exchangeable and `m` frozen
/// vertices. An edge between `a` and `b` gets valuation `(c*d_b/g, c*d_a/g)`,
/// consistent with the drawn symmetrizer.
pub fn random_quiver<R: Rng>(rng: &mut R, n: usize, m: usize) -> ValuedQuiver {
    let d: Vec<u64> = (0..n + m).map(|_| rng.gen_range(1..=3)).collect();
    build(rng, n, m, d, false)
}

/// Like [`random_quiver`] with an edge of valuation (2,3) or (3,2) between
/// vertices 0 and 1. Needs `n >= 2`.
pub fn random_quiver_with_23<R: Rng>(rng: &mut R, n: usize, m: usize) -> ValuedQuiver {
    let mut d: Vec<u64> = (0..n + m).map(|_| [1, 2, 3, 6][rng.gen_range(0..4)]).collect();
    d[0] = 3;
    d[1] = 2;
    build(rng, n, m, d, true)
}

fn build<R: Rng>(rng: &mut R, n: usize, m: usize, d: Vec<u64>, force_01: bool) -> ValuedQuiver {
    let size = n + m;
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (if force_01 && v == 1 { 0 } else { rng.gen_range(0..v) }, v)).collect();
    for a in 0..size {
        for b in a + 1..size {
            if b >= n && a >= n || pairs.contains(&(a, b)) {
                continue;
            }
            if rng.gen_bool(0.35) {
                pairs.push((a, b));
            }
        }
    }
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(a, b)| {
            let g = d[a].gcd(&d[b]);
            let c = if force_01 && (a, b) == (0, 1) { 1 } else { rng.gen_range(1..=2u64) };
            let (f, t) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            (f, t, c * d[t] / g, c * d[f] / g)
        })
        .collect();
    ValuedQuiver::new(n, m, &edges, Some(d)).expect("generated quiver is valid")
}
