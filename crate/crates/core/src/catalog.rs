//! Built-in named quivers transcribed from the displayed diagrams.
//!
//! Undirected simply-laced edges in the displays are oriented from the
//! smaller to the larger label. A bare weight "2" is given the valuation that
//! the chosen symmetrizer makes consistent; each such entry says which.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::ValuedQuiver;

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    #[serde(skip)]
    pub quiver: ValuedQuiver,
    /// Display names of the vertices, 1-based order.
    pub vertex_names: Vec<String>,
}

impl CatalogEntry {
    /// 0-based index of a named vertex.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }
}

/// Builds a quiver from named vertices; the first `n` names are exchangeable.
fn named(
    name: &str,
    description: &str,
    n: usize,
    names: &[&str],
    edges: &[(&str, &str, u64, u64)],
) -> CatalogEntry {
    let idx = |v: &str| names.iter().position(|x| *x == v).unwrap_or_else(|| panic!("{name}: no vertex {v}"));
    let e: Vec<(usize, usize, u64, u64)> = edges.iter().map(|&(f, t, a, b)| (idx(f), idx(t), a, b)).collect();
    let quiver = ValuedQuiver::new(n, names.len() - n, &e, None)
        .unwrap_or_else(|err| panic!("catalog entry {name} is invalid: {err}"));
    CatalogEntry {
        name: name.to_string(),
        description: description.to_string(),
        quiver,
        vertex_names: names.iter().map(|s| s.to_string()).collect(),
    }
}

fn numbered(
    name: &str,
    description: &str,
    n: usize,
    edges: &[(usize, usize)],
    weighted: &[(usize, usize, u64, u64)],
) -> CatalogEntry {
    let mut e: Vec<(usize, usize, u64, u64)> = edges.iter().map(|&(a, b)| (a - 1, b - 1, 1, 1)).collect();
    e.extend(weighted.iter().map(|&(a, b, x, y)| (a - 1, b - 1, x, y)));
    let quiver = ValuedQuiver::new(n, 0, &e, None)
        .unwrap_or_else(|err| panic!("catalog entry {name} is invalid: {err}"));
    CatalogEntry {
        name: name.to_string(),
        description: description.to_string(),
        quiver,
        vertex_names: (1..=n).map(|i| i.to_string()).collect(),
    }
}

/// Linearly oriented path `1 -> 2 -> ... -> n`.
fn path(n: usize) -> CatalogEntry {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    numbered(&format!("a{n}"), &format!("linear A{n} path"), n, &edges, &[])
}

/// A tree with three arms of the given lengths meeting at vertex 1.
fn star(name: &str, description: &str, arms: [usize; 3]) -> CatalogEntry {
    let n = 1 + arms.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 2;
    for len in arms {
        let mut prev = 1;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    numbered(name, description, n, &edges, &[])
}

/// Elliptic head `F -> A (2,2)` with `A -> B, C, D -> F` and tails on B, C, D.
fn elliptic(name: &str, description: &str, tails: [usize; 3]) -> CatalogEntry {
    let mut edges = vec![(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)];
    let n = 5 + tails.iter().sum::<usize>();
    let mut next = 6;
    for (arm, len) in tails.into_iter().enumerate() {
        let mut prev = arm + 2;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    numbered(name, description, n, &edges, &[(5, 1, 2, 2)])
}

/// Rigid triangle (i, j, k) with the optional tail `i - 1 - 2`.
///
/// The "2" edges are `i -> j (2,1)` and `k -> i (1,2)`, so `d_i` is half of
/// `d_j = d_k`, the same shape as the weight-4 head with x = 2.
fn rigid_a(y: u8, z: u8) -> CatalogEntry {
    let mut names = vec!["i", "j", "k"];
    let mut edges = vec![("i", "j", 2, 1), ("k", "i", 1, 2), ("j", "k", 2, 2)];
    if y == 1 {
        names.push("1");
        edges.push(("i", "1", 1, 1));
        if z == 1 {
            names.push("2");
            edges.push(("1", "2", 1, 1));
        }
    }
    let n = names.len();
    named(
        &format!("rigid_3_2_a_y{y}z{z}"),
        "rigid-vertex pattern (a); rigid vertex i",
        n,
        &names,
        &edges,
    )
}

fn leading_q_a_x(x: u64) -> CatalogEntry {
    named(
        &format!("leading_q_a_x{x}"),
        "weight-4 head Q_{a,x}",
        3,
        &["v", "k", "j"],
        &[("v", "k", x, 1), ("j", "v", 1, x), ("k", "j", 2, 2)],
    )
}

fn leading_q_c_t(t: u64) -> CatalogEntry {
    named(
        &format!("leading_q_c_t{t}"),
        "weight-4 head Q_{c,t}",
        4,
        &["v", "k", "j", "l"],
        &[("v", "j", t, 1), ("k", "v", 1, t), ("k", "l", 1, 2), ("j", "k", 2, 2), ("l", "j", 2, 1)],
    )
}

fn paper_2_4() -> CatalogEntry {
    named(
        "paper_2_4",
        "rank 3 with four frozen vertices 3_1, 2_1, 1_1, 1_2",
        3,
        &["1", "2", "3", "3_1", "2_1", "1_1", "1_2"],
        &[
            ("3", "3_1", 2, 3),
            ("3", "2", 2, 3),
            ("2", "1", 1, 2),
            ("2_1", "2", 2, 1),
            ("1_1", "1", 1, 1),
            ("1", "3", 6, 2),
            ("1", "1_2", 2, 3),
        ],
    )
}

fn markov(name: &str) -> CatalogEntry {
    named(
        name,
        "oriented triangle with all valuations (2,2)",
        3,
        &["i", "j", "k"],
        &[("i", "k", 2, 2), ("j", "i", 2, 2), ("k", "j", 2, 2)],
    )
}

/// Every fixed entry name, in listing order. `a{n}` accepts any n >= 1.
pub const NAMES: &[&str] = &[
    "a2", "a3", "a4", "a5", "a6", "a7", "a8",
    "e6", "e7", "e8", "e6_1", "e7_1", "e8_1", "e6_11", "e7_11", "e8_11", "x6", "x7",
    "markov_222", "ex_3_3_1_a", "ex_3_3_1_b", "ex_3_3_2",
    "ex_3_8_a", "ex_3_8_b", "ex_3_8_c", "ex_3_8_d", "ex_3_8_e", "ex_3_8_f",
    "rigid_3_2_a_y1z0", "rigid_3_2_a_y1z1", "rigid_3_2_a_y0z0", "rigid_3_2_b",
    "paper_2_4", "ex_2_8_2", "ex_2_8_3",
    "leading_q_a_x1", "leading_q_a_x2", "leading_q_a_x3", "leading_q_a_x4", "leading_q_a",
    "leading_q_c_t1", "leading_q_c_t2", "leading_q_d",
];

/// Entries presented as finite mutation type, whether or not the class closes.
pub const FINITE_MUTATION: &[&str] = &[
    "a2", "a3", "a4", "a5", "a6", "a7", "a8",
    "e6", "e7", "e8", "e6_1", "e7_1", "e8_1", "e6_11", "e7_11", "e8_11", "x6", "x7",
    "markov_222", "ex_3_3_1_a", "ex_3_3_1_b",
    "ex_3_8_a", "ex_3_8_b", "ex_3_8_c", "ex_3_8_d", "ex_3_8_e", "ex_3_8_f",
];

pub fn get(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    if let Some(rest) = name.strip_prefix('a') {
        if let Ok(n) = rest.parse::<usize>() {
            if (1..=64).contains(&n) {
                return Ok(path(n));
            }
            return Err(unknown());
        }
    }
    let e = match name {
        "e6" => star("e6", "exceptional E6", [2, 2, 1]),
        "e7" => star("e7", "exceptional E7", [2, 3, 1]),
        "e8" => star("e8", "exceptional E8", [2, 4, 1]),
        "e6_1" => star("e6_1", "affine E6^(1)", [2, 2, 2]),
        "e7_1" => star("e7_1", "affine E7^(1)", [3, 3, 1]),
        "e8_1" => star("e8_1", "affine E8^(1)", [2, 5, 1]),
        "e6_11" => elliptic("e6_11", "elliptic E6^(1,1)", [1, 1, 1]),
        "e7_11" => elliptic("e7_11", "elliptic E7^(1,1)", [2, 0, 2]),
        "e8_11" => elliptic("e8_11", "elliptic E8^(1,1)", [1, 0, 4]),
        "x6" => named(
            "x6",
            "exceptional X6: two (2,2) triangles glued at b plus a leaf",
            6,
            &["a", "b", "c", "d", "e", "g"],
            &[("a", "b", 1, 1), ("b", "d", 1, 1), ("d", "a", 2, 2), ("c", "b", 1, 1), ("b", "g", 1, 1), ("g", "c", 2, 2), ("b", "e", 1, 1)],
        ),
        "x7" => named(
            "x7",
            "exceptional X7: three (2,2) triangles glued at b",
            7,
            &["a", "b", "c", "d", "g", "p", "q"],
            &[
                ("a", "b", 1, 1), ("b", "d", 1, 1), ("d", "a", 2, 2),
                ("c", "b", 1, 1), ("b", "g", 1, 1), ("g", "c", 2, 2),
                ("p", "b", 1, 1), ("b", "q", 1, 1), ("q", "p", 2, 2),
            ],
        ),
        "markov_222" => markov("markov_222"),
        "ex_3_3_1_b" => markov("ex_3_3_1_b"),
        "ex_3_3_1_a" => named("ex_3_3_1_a", "A2 as j -> i", 2, &["i", "j"], &[("j", "i", 1, 1)]),
        "ex_3_3_2" => named(
            "ex_3_3_2",
            "heavy triangle i, j, k attached to the edge 2 - 1",
            5,
            &["1", "2", "i", "j", "k"],
            &[("2", "1", 1, 1), ("i", "1", 1, 1), ("i", "j", 3, 3), ("k", "i", 3, 2), ("j", "k", 2, 3)],
        ),
        "ex_3_8_a" => named(
            "ex_3_8_a",
            "v-v symmetric triangle with valuations (4,1), (1,4), (2,2)",
            3,
            &["i", "j", "k"],
            &[("i", "k", 4, 1), ("j", "i", 1, 4), ("k", "j", 2, 2)],
        ),
        "ex_3_8_b" => named(
            "ex_3_8_b",
            "v-v symmetric octahedron",
            6,
            &["i", "j", "k", "l", "m", "n"],
            &[
                ("i", "l", 1, 1), ("i", "k", 1, 1), ("j", "i", 1, 1), ("j", "n", 1, 1),
                ("k", "j", 1, 1), ("k", "m", 1, 1), ("l", "j", 1, 1), ("l", "m", 1, 1),
                ("m", "n", 1, 1), ("m", "i", 1, 1), ("n", "l", 1, 1), ("n", "k", 1, 1),
            ],
        ),
        // "2" edges: d_i = d_l = 2, d_j = d_k = 1. Halving d_i and d_l is also
        // v-v symmetric but makes {i, j, k} a literal rigid triangle.
        "ex_3_8_c" => named(
            "ex_3_8_c",
            "v-v symmetric square with a (2,2) diagonal",
            4,
            &["i", "j", "k", "l"],
            &[("i", "k", 1, 2), ("j", "i", 2, 1), ("j", "l", 2, 1), ("k", "j", 2, 2), ("l", "k", 1, 2)],
        ),
        // "2" edges: d_i = d_l = 1, the rest 2. Every consistent choice gives an
        // infinite class: μ_l μ_i builds a j - k edge of weight 16.
        "ex_3_8_d" => named(
            "ex_3_8_d",
            "v-v symmetric rank 6 quiver",
            6,
            &["i", "j", "k", "l", "r", "z"],
            &[
                ("z", "k", 1, 1), ("i", "k", 2, 1), ("j", "i", 1, 2), ("j", "z", 1, 1),
                ("j", "l", 1, 2), ("l", "k", 2, 1), ("k", "r", 1, 1), ("r", "j", 1, 1),
            ],
        ),
        // "2" edges: d_t = 2, d_i = d_l = d_j = d_k = 1; the only choice that is
        // v-v symmetric and free of rigid triangles
        "ex_3_8_e" => named(
            "ex_3_8_e",
            "v-v symmetric rank 5 quiver with two (2,2) edges",
            5,
            &["i", "j", "k", "l", "t"],
            &[
                ("i", "t", 2, 1), ("l", "i", 2, 2), ("t", "l", 1, 2),
                ("t", "k", 1, 2), ("j", "t", 2, 1), ("k", "j", 2, 2),
            ],
        ),
        "ex_3_8_f" => named(
            "ex_3_8_f",
            "v-v symmetric star i -> t <- j, t -> l",
            4,
            &["i", "j", "l", "t"],
            &[("i", "t", 1, 1), ("t", "l", 1, 1), ("j", "t", 1, 1)],
        ),
        "rigid_3_2_a_y1z0" => rigid_a(1, 0),
        "rigid_3_2_a_y1z1" => rigid_a(1, 1),
        "rigid_3_2_a_y0z0" => rigid_a(0, 0),
        // same quiver as the Q_{c,1} head with i in the role of l
        "rigid_3_2_b" => named(
            "rigid_3_2_b",
            "rigid-vertex pattern (b); rigid vertex i",
            4,
            &["i", "j", "k", "v"],
            &[("v", "k", 1, 1), ("k", "j", 1, 1), ("j", "v", 2, 2), ("v", "i", 1, 2), ("i", "j", 2, 1)],
        ),
        "paper_2_4" => paper_2_4(),
        "ex_2_8_2" => named(
            "ex_2_8_2",
            "A4 path with the weight-2 edge 1 -> 2 valued (2,1)",
            4,
            &["1", "2", "3", "4"],
            &[("1", "2", 2, 1), ("2", "3", 1, 1), ("3", "4", 1, 1)],
        ),
        "ex_2_8_3" => named(
            "ex_2_8_3",
            "simply-laced quiver with an infinite mutation class",
            4,
            &["k", "v", "j", "i"],
            &[("v", "k", 1, 1), ("v", "i", 1, 1), ("v", "j", 1, 1), ("i", "j", 1, 1), ("k", "j", 1, 1)],
        ),
        "leading_q_a_x1" => leading_q_a_x(1),
        "leading_q_a_x2" => leading_q_a_x(2),
        "leading_q_a_x3" => leading_q_a_x(3),
        "leading_q_a_x4" => leading_q_a_x(4),
        "leading_q_a" => named(
            "leading_q_a",
            "weight-4 head Q_a",
            3,
            &["v", "k", "j"],
            &[("v", "k", 1, 2), ("j", "v", 1, 2), ("k", "j", 4, 1)],
        ),
        "leading_q_c_t1" => leading_q_c_t(1),
        "leading_q_c_t2" => leading_q_c_t(2),
        "leading_q_d" => named(
            "leading_q_d",
            "weight-4 head Q_d",
            4,
            &["v", "i", "j", "l"],
            &[("v", "j", 1, 1), ("i", "v", 1, 1), ("i", "l", 1, 3), ("j", "i", 2, 2), ("l", "j", 3, 1)],
        ),
        _ => return Err(unknown()),
    };
    Ok(e)
}

pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| get(n).expect("listed entries exist")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_and_is_connected() {
        for e in all() {
            assert!(e.quiver.validate().is_empty(), "{} invalid", e.name);
            assert_eq!(e.vertex_names.len(), e.quiver.size(), "{}", e.name);
        }
    }

    #[test]
    fn matrix_round_trip_on_catalog() {
        for e in all() {
            let back = ValuedQuiver::from_matrix(&e.quiver.to_matrix()).unwrap();
            assert_eq!(back, e.quiver, "{}", e.name);
        }
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(get("paper_2_4").unwrap().quiver.d(), &[3, 6, 9, 6, 3, 3, 2]);
        assert_eq!(get("ex_3_8_a").unwrap().quiver.d(), &[1, 4, 4]);
        assert_eq!(get("leading_q_d").unwrap().quiver.d(), &[3, 3, 3, 1]);
        assert_eq!(get("rigid_3_2_b").unwrap().quiver.d(), &[1, 2, 2, 2]);
    }

    #[test]
    fn sizes() {
        let rank = |n: &str| get(n).unwrap().quiver.n();
        assert_eq!((rank("e6"), rank("e7"), rank("e8")), (6, 7, 8));
        assert_eq!((rank("e6_1"), rank("e7_1"), rank("e8_1")), (7, 8, 9));
        assert_eq!((rank("e6_11"), rank("e7_11"), rank("e8_11")), (8, 9, 10));
        assert_eq!((rank("x6"), rank("x7")), (6, 7));
        assert_eq!(get("paper_2_4").unwrap().quiver.m(), 4);
        assert!(get("a0").is_err());
        assert!(get("nope").is_err());
        assert_eq!(rank("a12"), 12);
    }
}
