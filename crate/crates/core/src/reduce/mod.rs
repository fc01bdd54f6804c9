//! Isospectral reductions over structural sets.

mod exceptional;
mod structural;

use thiserror::Error;

use crate::graph::{GraphError, WeightedDigraph};
use crate::wfield::{FieldError, RationalFn, RootError};

pub use exceptional::ExceptionalSet;
pub use structural::{validate_structural, StructuralSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReduceError {
    #[error("kept vertex set is empty")]
    EmptyKeep,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("removed vertices contain a cycle: {cycle:?}")]
    CycleInComplement { cycle: Vec<usize> },
    #[error("loop weight at removed vertex {vertex} is identically lambda")]
    DiagonalIsLambda { vertex: usize },
    #[error("graph has an entry with numerator degree above denominator degree")]
    NotPiClass,
    #[error("reduction left the class of entries with pi <= 0 at ({i},{j})")]
    PiClassLost { i: usize, j: usize },
    #[error("kept set {next:?} is not contained in the previous one")]
    NotNested { next: Vec<usize> },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Path `v₁ → … → v_m` with both ends kept and every interior vertex removed.
/// A loop at a kept vertex is the branch `[i, i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub vertices: Vec<usize>,
}

/// A reduced graph together with everything needed to interpret it.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionResult {
    pub graph: WeightedDigraph,
    /// Original label of each vertex of `graph`.
    pub labels: Vec<usize>,
    pub exceptional: ExceptionalSet,
    /// Kept sets applied so far, in original labels.
    pub trace: Vec<Vec<usize>>,
}

impl ReductionResult {
    /// The unreduced graph, viewed as a reduction over all vertices.
    pub fn identity(g: &WeightedDigraph) -> Self {
        ReductionResult {
            graph: g.clone(),
            labels: (0..g.n()).collect(),
            exceptional: ExceptionalSet::new(),
            trace: Vec::new(),
        }
    }

    /// Reduces further; `keep` is given in original labels.
    pub fn then_keep(&self, keep: &[usize]) -> Result<ReductionResult, ReduceError> {
        let local = self.localize(keep)?;
        let s = validate_structural(&self.graph, &local)?;
        let step = reduce_over(&self.graph, &s)?;
        Ok(self.compose(step))
    }

    /// Eliminates one vertex, given in original labels.
    pub fn then_eliminate(&self, v: usize) -> Result<ReductionResult, ReduceError> {
        let local = self.localize(&[v])?[0];
        let step = eliminate_vertex(&self.graph, local)?;
        Ok(self.compose(step))
    }

    /// Like [`then_keep`](Self::then_keep), one vertex at a time.
    pub fn then_closure(&self, keep: &[usize]) -> Result<ReductionResult, ReduceError> {
        let local = self.localize(keep)?;
        let step = reduce_closure(&self.graph, &local)?;
        Ok(self.compose(step))
    }

    fn localize(&self, vs: &[usize]) -> Result<Vec<usize>, ReduceError> {
        vs.iter()
            .map(|&v| {
                self.labels
                    .iter()
                    .position(|&l| l == v)
                    .ok_or_else(|| ReduceError::NotNested { next: vs.to_vec() })
            })
            .collect()
    }

    fn compose(&self, step: ReductionResult) -> ReductionResult {
        let labels: Vec<usize> = step.labels.iter().map(|&k| self.labels[k]).collect();
        let mut exceptional = self.exceptional.clone();
        exceptional.extend(&step.exceptional);
        let mut trace = self.trace.clone();
        trace.push(labels.clone());
        ReductionResult {
            graph: step.graph,
            labels,
            exceptional,
            trace,
        }
    }
}

/// All branches from `i` to `j` with respect to `s`, in depth-first order
/// with ascending successors.
pub fn branches(g: &WeightedDigraph, s: &StructuralSet, i: usize, j: usize) -> Vec<Branch> {
    let mut out = Vec::new();
    let mut path = vec![i];
    let mut visited = vec![false; g.n()];
    walk(g, s, j, &mut path, &mut visited, &mut out);
    out
}

fn walk(
    g: &WeightedDigraph,
    s: &StructuralSet,
    target: usize,
    path: &mut Vec<usize>,
    visited: &mut [bool],
    out: &mut Vec<Branch>,
) {
    let v = *path.last().expect("nonempty path");
    for w in g.successors(v) {
        if w == target {
            // A loop at an interior vertex is not a step along the path.
            if !(w == v && path.len() > 1) {
                let mut b = path.clone();
                b.push(w);
                out.push(Branch { vertices: b });
            }
        }
        if !s.is_kept(w) && !visited[w] && w != v {
            visited[w] = true;
            path.push(w);
            walk(g, s, target, path, visited, out);
            path.pop();
            visited[w] = false;
        }
    }
}

/// `ω(e₁₂) · ∏ ω(e_{k,k+1}) / (λ − ω(e_kk))` over the interior vertices.
pub fn branch_product(g: &WeightedDigraph, b: &Branch) -> Result<RationalFn, ReduceError> {
    let v = &b.vertices;
    let mut acc = g.get(v[0], v[1]).clone();
    let lambda = RationalFn::lambda();
    for k in 1..v.len() - 1 {
        let loop_w = g.get(v[k], v[k]);
        if loop_w.is_identically_lambda() {
            return Err(ReduceError::DiagonalIsLambda { vertex: v[k] });
        }
        let factor = g.get(v[k], v[k + 1]).checked_div(&(&lambda - loop_w))?;
        acc = &acc * &factor;
    }
    Ok(acc)
}

fn exceptional_for(g: &WeightedDigraph, removed: &[usize]) -> Result<ExceptionalSet, ReduceError> {
    let mut e = ExceptionalSet::new();
    for &v in removed {
        e.extend(&ExceptionalSet::for_loop(g.get(v, v))?);
    }
    Ok(e)
}

/// Reduction over a validated structural set by summing branch products.
pub fn reduce_over(g: &WeightedDigraph, s: &StructuralSet) -> Result<ReductionResult, ReduceError> {
    let keep = s.keep();
    let m = keep.len();
    let mut out = WeightedDigraph::empty(m);
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            let mut sum = RationalFn::zero();
            for br in branches(g, s, i, j) {
                sum = &sum + &branch_product(g, &br)?;
            }
            out.set(a, b, sum);
        }
    }
    Ok(ReductionResult {
        graph: out,
        labels: keep.to_vec(),
        exceptional: exceptional_for(g, s.removed())?,
        trace: vec![keep.to_vec()],
    })
}

/// Removes `v` by the one-step update `ωᵢⱼ + ωᵢᵥ ωᵥⱼ / (λ − ωᵥᵥ)`.
pub fn eliminate_vertex(g: &WeightedDigraph, v: usize) -> Result<ReductionResult, ReduceError> {
    let n = g.n();
    if v >= n {
        return Err(ReduceError::VertexOutOfRange(v));
    }
    if n == 1 {
        return Err(ReduceError::EmptyKeep);
    }
    let loop_w = g.get(v, v);
    if loop_w.is_identically_lambda() {
        return Err(ReduceError::DiagonalIsLambda { vertex: v });
    }
    let pivot = (&RationalFn::lambda() - loop_w).inv()?;
    let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let mut out = WeightedDigraph::empty(n - 1);
    for (a, &i) in keep.iter().enumerate() {
        let into = g.get(i, v);
        let left = if into.is_zero() { None } else { Some(into * &pivot) };
        for (b, &j) in keep.iter().enumerate() {
            let mut w = g.get(i, j).clone();
            if let Some(l) = &left {
                let out_w = g.get(v, j);
                if !out_w.is_zero() {
                    w = &w + &(l * out_w);
                }
            }
            out.set(a, b, w);
        }
    }
    Ok(ReductionResult {
        graph: out,
        labels: keep.clone(),
        exceptional: exceptional_for(g, &[v])?,
        trace: vec![keep],
    })
}

/// Applies nested kept sets one after another; each set is in original labels.
pub fn reduce_sequence(g: &WeightedDigraph, keeps: &[Vec<usize>]) -> Result<ReductionResult, ReduceError> {
    let mut r = ReductionResult::identity(g);
    for k in keeps {
        r = r.then_keep(k)?;
    }
    Ok(r)
}

/// Order-independent reduction onto `keep` by single-vertex eliminations.
///
/// Only defined for graphs whose entries all have `π ≤ 0`. Loop-free
/// vertices go first, then those of smallest degree, ties to the lowest label.
pub fn reduce_closure(g: &WeightedDigraph, keep: &[usize]) -> Result<ReductionResult, ReduceError> {
    if !g.is_pi_class() {
        return Err(ReduceError::NotPiClass);
    }
    let s = validate_keep_labels(g, keep)?;
    let mut r = ReductionResult::identity(g);
    let mut pending: Vec<usize> = s;
    while !pending.is_empty() {
        let cur = &r.graph;
        let local = |v: usize| r.labels.iter().position(|&l| l == v).expect("pending vertex present");
        let degree = |k: usize| {
            (0..cur.n())
                .filter(|&u| u != k)
                .filter(|&u| cur.has_edge(k, u) || cur.has_edge(u, k))
                .count()
        };
        let pick = pending
            .iter()
            .copied()
            .filter(|&v| !cur.get(local(v), local(v)).is_identically_lambda())
            .min_by_key(|&v| (cur.has_loop(local(v)), degree(local(v)), v))
            .expect("pi-class loops are never lambda");
        r = r.then_eliminate(pick)?;
        pending.retain(|&v| v != pick);
    }
    for i in 0..r.graph.n() {
        for j in 0..r.graph.n() {
            if r.graph.get(i, j).pi() > crate::wfield::PiIndex::Finite(0) {
                return Err(ReduceError::PiClassLost { i, j });
            }
        }
    }
    // Present the whole closure as one step over `keep`.
    r.trace = vec![r.labels.clone()];
    Ok(r)
}

/// Removed vertices for `keep`, after range and duplicate checks.
fn validate_keep_labels(g: &WeightedDigraph, keep: &[usize]) -> Result<Vec<usize>, ReduceError> {
    if keep.is_empty() {
        return Err(ReduceError::EmptyKeep);
    }
    let mut kept = vec![false; g.n()];
    for &v in keep {
        if v >= g.n() {
            return Err(ReduceError::VertexOutOfRange(v));
        }
        if kept[v] {
            return Err(ReduceError::DuplicateVertex(v));
        }
        kept[v] = true;
    }
    Ok((0..g.n()).filter(|&v| !kept[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn graph(n: usize, edges: &[(usize, usize)]) -> WeightedDigraph {
        let mut m = vec![vec![0.0; n]; n];
        for &(i, j) in edges {
            m[i][j] = 1.0;
        }
        WeightedDigraph::from_real(&m).unwrap()
    }

    fn rf(num: &[f64], den: &[f64]) -> RationalFn {
        RationalFn::from_real(num, den).unwrap()
    }

    #[test]
    fn direct_edge_is_a_single_branch() {
        let g = graph(2, &[(0, 1)]);
        let s = validate_structural(&g, &[0, 1]).unwrap();
        assert_eq!(branches(&g, &s, 0, 1), vec![Branch { vertices: vec![0, 1] }]);
        assert!(branches(&g, &s, 1, 0).is_empty());
    }

    #[test]
    fn branch_product_through_loop() {
        let mut g = graph(3, &[(0, 1), (1, 2), (1, 1)]);
        g.set(0, 1, RationalFn::one());
        let p = branch_product(&g, &Branch { vertices: vec![0, 1, 2] }).unwrap();
        assert!(p.approx_eq(&rf(&[1.0], &[-1.0, 1.0]), 1e-12));
        let mut h = graph(2, &[]);
        h.set(0, 1, rf(&[1.0], &[0.0, 1.0]));
        let p = branch_product(&h, &Branch { vertices: vec![0, 1] }).unwrap();
        assert!(p.approx_eq(&rf(&[1.0], &[0.0, 1.0]), 0.0));
    }

    #[test]
    fn interior_loop_is_not_a_branch_step() {
        let g = graph(3, &[(0, 1), (1, 1), (1, 2)]);
        let s = validate_structural(&g, &[0, 2]).unwrap();
        assert_eq!(branches(&g, &s, 0, 2), vec![Branch { vertices: vec![0, 1, 2] }]);
    }

    #[test]
    fn two_vertex_zero_graph() {
        let g = WeightedDigraph::empty(2);
        let r = eliminate_vertex(&g, 1).unwrap();
        assert_eq!(r.graph, WeightedDigraph::empty(1));
        assert_eq!(r.exceptional.values(), &[Complex64::new(0.0, 0.0)]);
        let r = reduce_over(&g, &validate_structural(&g, &[0]).unwrap()).unwrap();
        assert_eq!(r.graph, WeightedDigraph::empty(1));
    }

    #[test]
    fn keep_all_is_identity() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]);
        let r = reduce_closure(&g, &[0, 1, 2]).unwrap();
        assert_eq!(r.graph, g);
        assert!(r.exceptional.is_empty());
        let r = reduce_over(&g, &validate_structural(&g, &[0, 1, 2]).unwrap()).unwrap();
        assert_eq!(r.graph, g);
    }

    #[test]
    fn eliminate_rejects_lambda_loop() {
        let mut g = graph(2, &[(0, 1), (1, 0)]);
        g.set(1, 1, RationalFn::lambda());
        assert_eq!(eliminate_vertex(&g, 1), Err(ReduceError::DiagonalIsLambda { vertex: 1 }));
    }

    #[test]
    fn closure_requires_pi_class() {
        let mut g = graph(2, &[(0, 1), (1, 0)]);
        g.set(0, 0, RationalFn::lambda());
        assert_eq!(reduce_closure(&g, &[1]), Err(ReduceError::NotPiClass));
    }

    #[test]
    fn sequence_rejects_vertices_already_gone() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let e = reduce_sequence(&g, &[vec![0, 1], vec![2]]).unwrap_err();
        assert!(matches!(e, ReduceError::NotNested { .. }));
    }
}
