//! Small worked graphs with known spectra, reductions and regions.
//!
//! Vertices are 0-based here; doc comments use 1-based names `v1, v2, …`.

use crate::graph::WeightedDigraph;
use crate::wfield::RationalFn;

fn rf(num: &[f64], den: &[f64]) -> RationalFn {
    RationalFn::from_real(num, den).expect("nonzero denominator")
}

fn c(x: f64) -> RationalFn {
    RationalFn::real(x)
}

fn matrix(rows: Vec<Vec<RationalFn>>) -> WeightedDigraph {
    WeightedDigraph::from_matrix(rows).expect("square")
}

fn unit(rows: &[[u8; 5]]) -> WeightedDigraph {
    matrix(rows.iter().map(|r| r.iter().map(|&x| c(x as f64)).collect()).collect())
}

fn from_edges(n: usize, edges: &[(usize, usize, RationalFn)]) -> WeightedDigraph {
    let mut g = WeightedDigraph::empty(n);
    for (i, j, w) in edges {
        g.set(i - 1, j - 1, w.clone());
    }
    g
}

/// 0/1 digraph on five vertices with ten edges; spectrum {−1, −1, i, −i, 2}.
pub fn g0() -> WeightedDigraph {
    unit(&[
        [0, 0, 1, 0, 1],
        [0, 0, 0, 1, 1],
        [0, 1, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [1, 1, 1, 1, 0],
    ])
}

/// `g0` reduced onto {v1, v2, v3}.
pub fn g1() -> WeightedDigraph {
    matrix(vec![
        vec![rf(&[1.0, 1.0], &[0.0, 0.0, 1.0]), rf(&[1.0], &[0.0, 1.0]), rf(&[1.0, 1.0], &[0.0, 1.0])],
        vec![rf(&[1.0, 2.0], &[0.0, 0.0, 1.0]), rf(&[1.0], &[0.0, 1.0]), rf(&[1.0], &[0.0, 1.0])],
        vec![c(0.0), c(1.0), c(0.0)],
    ])
}

/// `g1` reduced onto {v1, v2}.
pub fn g2() -> WeightedDigraph {
    let d = rf(&[1.0, 1.0], &[0.0, 0.0, 1.0]);
    let o = rf(&[1.0, 2.0], &[0.0, 0.0, 1.0]);
    matrix(vec![vec![d.clone(), o.clone()], vec![o, d]])
}

/// Undirected path v1 − v2 − v3 with unit weights.
pub fn path3() -> WeightedDigraph {
    from_edges(3, &[(1, 2, c(1.0)), (2, 1, c(1.0)), (2, 3, c(1.0)), (3, 2, c(1.0))])
}

/// Four-vertex digraph whose Brualdi-type region grows when v1 is removed
/// and shrinks when v4 is removed.
pub fn h_digraph() -> WeightedDigraph {
    from_edges(
        4,
        &[
            (1, 4, c(10.0)),
            (4, 1, c(0.1)),
            (4, 2, c(0.1)),
            (2, 1, c(1.0)),
            (2, 3, c(1.0)),
            (3, 2, c(1.0)),
        ],
    )
}

/// Strongly connected four-vertex digraph where removing v1 enlarges the
/// Brualdi-type region.
pub fn j_digraph() -> WeightedDigraph {
    from_edges(
        4,
        &[(1, 2, c(1.0)), (2, 3, c(1.0)), (3, 1, c(1.0)), (3, 4, c(1.0)), (4, 1, c(1.0))],
    )
}

/// Two triangles sharing v5.
pub fn p_digraph() -> WeightedDigraph {
    unit(&[
        [0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [1, 0, 1, 0, 0],
    ])
}

/// `p_digraph` reduced onto {v1, …, v4}.
pub fn p_reduced() -> WeightedDigraph {
    let inv = rf(&[1.0], &[0.0, 1.0]);
    matrix(vec![
        vec![c(0.0), c(1.0), c(0.0), c(0.0)],
        vec![inv.clone(), c(0.0), inv.clone(), c(0.0)],
        vec![c(0.0), c(0.0), c(0.0), c(1.0)],
        vec![inv.clone(), c(0.0), inv, c(0.0)],
    ])
}

/// Six vertices, loops of weight 1 at v1, v3, v5; spectral radius 2.
pub fn k_digraph() -> WeightedDigraph {
    from_edges(
        6,
        &[
            (1, 1, c(1.0)),
            (1, 2, c(1.0)),
            (2, 1, c(1.0)),
            (1, 4, c(1.0)),
            (4, 3, c(1.0)),
            (3, 3, c(1.0)),
            (3, 1, c(0.5)),
            (3, 5, c(0.5)),
            (5, 5, c(1.0)),
            (5, 6, c(1.0)),
            (6, 5, c(1.0)),
            (5, 4, c(1.0)),
        ],
    )
}

/// `k_digraph` with its loopless vertices v2, v4, v6 reduced away.
pub fn k_reduced() -> WeightedDigraph {
    let heavy = rf(&[1.0, 1.0], &[0.0, 1.0]);
    let inv = rf(&[1.0], &[0.0, 1.0]);
    matrix(vec![
        vec![heavy.clone(), inv.clone(), c(0.0)],
        vec![c(0.5), c(1.0), c(0.5)],
        vec![c(0.0), inv, heavy],
    ])
}

/// Simple graph on five vertices; its combinatorial Laplacian has spectrum
/// {0, 1, 2, 4, 5}.
pub fn h_simple() -> WeightedDigraph {
    unit(&[
        [0, 0, 0, 0, 1],
        [0, 0, 0, 1, 1],
        [0, 0, 0, 1, 1],
        [0, 1, 1, 0, 1],
        [1, 1, 1, 1, 0],
    ])
}

/// Laplacian of `h_simple` reduced onto {v1, …, v4}.
pub fn h_laplacian_reduced() -> WeightedDigraph {
    let den = [-4.0, 1.0];
    let one = rf(&[1.0], &den);
    let a = rf(&[-3.0, 1.0], &den);
    let b = rf(&[-7.0, 2.0], &den);
    let e = rf(&[5.0, -1.0], &den);
    let d = rf(&[-11.0, 3.0], &den);
    matrix(vec![
        vec![a, one.clone(), one.clone(), one.clone()],
        vec![one.clone(), b.clone(), one.clone(), e.clone()],
        vec![one.clone(), one.clone(), b, e.clone()],
        vec![one, e.clone(), e, d],
    ])
}

/// Simple graph on seven vertices: v1 joined to v2..v5, the 4-cycle
/// v2 − v3 − v5 − v4 − v2, and an isolated edge v6 − v7. Degrees 4, 3, 3,
/// 3, 3, 1, 1.
pub fn n_graph() -> WeightedDigraph {
    let pairs = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 5), (5, 4), (4, 2), (6, 7)];
    let mut edges = Vec::new();
    for (a, b) in pairs {
        edges.push((a, b, c(1.0)));
        edges.push((b, a, c(1.0)));
    }
    from_edges(7, &edges)
}

/// Every named fixture, for sweeps.
pub fn all() -> Vec<(&'static str, WeightedDigraph)> {
    vec![
        ("g0", g0()),
        ("g1", g1()),
        ("g2", g2()),
        ("path3", path3()),
        ("h_digraph", h_digraph()),
        ("j_digraph", j_digraph()),
        ("p_digraph", p_digraph()),
        ("p_reduced", p_reduced()),
        ("k_digraph", k_digraph()),
        ("k_reduced", k_reduced()),
        ("h_simple", h_simple()),
        ("h_laplacian_reduced", h_laplacian_reduced()),
        ("n_graph", n_graph()),
    ]
}
