use num_complex::Complex64;

use super::AppsError;
use crate::graph::WeightedDigraph;
use crate::wfield::RationalFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaplacianKind {
    /// D − A for a simple graph.
    Combinatorial,
    /// I − D^{-1/2} A D^{-1/2}, with a zero diagonal at isolated vertices.
    Normalized,
    /// −M(G) off the diagonal, row sums of M(G) on it. Any loop-free graph.
    Generalized,
}

pub fn laplacian(g: &WeightedDigraph, kind: LaplacianKind) -> Result<WeightedDigraph, AppsError> {
    let n = g.n();
    match kind {
        LaplacianKind::Combinatorial | LaplacianKind::Normalized => {
            let adj = simple_adjacency(g)?;
            let deg: Vec<f64> = adj.iter().map(|row| row.iter().filter(|&&a| a).count() as f64).collect();
            let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
            for i in 0..n {
                for j in 0..n {
                    out[i][j] = Complex64::new(
                        match (kind, i == j, adj[i][j]) {
                            (LaplacianKind::Combinatorial, true, _) => deg[i],
                            (LaplacianKind::Normalized, true, _) if deg[i] > 0.0 => 1.0,
                            (LaplacianKind::Combinatorial, false, true) => -1.0,
                            (LaplacianKind::Normalized, false, true) => -1.0 / (deg[i] * deg[j]).sqrt(),
                            _ => 0.0,
                        },
                        0.0,
                    );
                }
            }
            Ok(WeightedDigraph::from_complex(&out)?)
        }
        LaplacianKind::Generalized => {
            if let Some(v) = (0..n).find(|&v| g.has_loop(v)) {
                return Err(AppsError::HasLoop(v));
            }
            let mut out = WeightedDigraph::empty(n);
            for i in 0..n {
                let mut sum = RationalFn::zero();
                for j in (0..n).filter(|&j| j != i) {
                    sum = &sum + g.get(i, j);
                    out.set(i, j, -g.get(i, j));
                }
                out.set(i, i, sum);
            }
            Ok(out)
        }
    }
}

/// 0/1 adjacency of a simple graph: symmetric, unweighted and loop-free.
fn simple_adjacency(g: &WeightedDigraph) -> Result<Vec<Vec<bool>>, AppsError> {
    let n = g.n();
    let one = Complex64::new(1.0, 0.0);
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        if g.has_loop(i) {
            return Err(AppsError::HasLoop(i));
        }
        for j in (0..n).filter(|&j| j != i) {
            let w = g.get(i, j);
            if w.is_zero() {
                continue;
            }
            match w.as_constant() {
                Some(c) if (c - one).norm() <= 1e-12 => adj[i][j] = true,
                _ => return Err(AppsError::NotSimple { i, j }),
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            if adj[i][j] != adj[j][i] {
                return Err(AppsError::NotSymmetric { i, j });
            }
        }
    }
    Ok(adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn combinatorial_rows_sum_to_zero() {
        let l = laplacian(&fixtures::h_simple(), LaplacianKind::Combinatorial).unwrap();
        let m = l.constant_matrix().unwrap();
        for row in &m {
            assert!(row.iter().sum::<Complex64>().norm() < 1e-14);
        }
        assert_eq!(m[4][4], Complex64::new(4.0, 0.0));
        assert_eq!(m[0][4], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn normalized_diagonal() {
        let g = WeightedDigraph::from_real(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]]).unwrap();
        let m = laplacian(&g, LaplacianKind::Normalized).unwrap().constant_matrix().unwrap();
        assert_eq!(m[0][0].re, 1.0);
        assert_eq!(m[0][1].re, -1.0);
        assert_eq!(m[2][2].re, 0.0);
    }

    #[test]
    fn empty_graph_has_zero_laplacian() {
        let g = WeightedDigraph::empty(3);
        for kind in [LaplacianKind::Combinatorial, LaplacianKind::Normalized, LaplacianKind::Generalized] {
            assert_eq!(laplacian(&g, kind).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn kind_mismatch() {
        assert_eq!(laplacian(&fixtures::g1(), LaplacianKind::Combinatorial), Err(AppsError::HasLoop(0)));
        let directed = fixtures::j_digraph();
        assert!(matches!(laplacian(&directed, LaplacianKind::Normalized), Err(AppsError::NotSymmetric { .. })));
        assert_eq!(laplacian(&fixtures::g1(), LaplacianKind::Generalized), Err(AppsError::HasLoop(0)));
    }

    #[test]
    fn generalized_rows_cancel() {
        let g = fixtures::p_reduced();
        let l = laplacian(&g, LaplacianKind::Generalized).unwrap();
        for i in 0..g.n() {
            let sum = (0..g.n()).fold(RationalFn::zero(), |acc, j| &acc + l.get(i, j));
            assert!(sum.is_zero(), "row {i}: {sum}");
        }
    }
}
