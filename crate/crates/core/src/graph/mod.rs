//! Weighted digraphs over the rational-function field, stored densely.

mod cycles;
mod scc;

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::wfield::{PiIndex, Poly, RationalFn};

pub use cycles::{cycle_adjacency, cycles, cycles_with_cap, Cycle, CycleAdjacency, CycleKind, DEFAULT_CYCLE_CAP};
pub use scc::{scc, SccDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NonSquare { row: usize, len: usize, n: usize },
    #[error("zero denominator at ({i},{j})")]
    ZeroDenominator { i: usize, j: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("more than {cap} cycles")]
    CycleOverflow { cap: usize },
}

/// Digraph on `n` vertices whose weights live in the rational-function
/// field. An absent edge has weight zero; every vertex has a (possibly zero)
/// loop.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    w: Vec<RationalFn>,
}

impl WeightedDigraph {
    pub fn empty(n: usize) -> Self {
        WeightedDigraph {
            n,
            w: vec![RationalFn::zero(); n * n],
        }
    }

    pub fn from_matrix(rows: Vec<Vec<RationalFn>>) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut w = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(GraphError::NonSquare { row, len: r.len(), n });
            }
            w.extend(r);
        }
        Ok(WeightedDigraph { n, w })
    }

    /// Entries given as raw `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: Vec<Vec<(Poly, Poly)>>) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(GraphError::NonSquare { row: i, len: r.len(), n });
            }
            let mut row = Vec::with_capacity(n);
            for (j, (p, q)) in r.into_iter().enumerate() {
                row.push(RationalFn::new(p, q).map_err(|_| GraphError::ZeroDenominator { i, j })?);
            }
            out.push(row);
        }
        Self::from_matrix(out)
    }

    pub fn from_real(rows: &[Vec<f64>]) -> Result<Self, GraphError> {
        Self::from_matrix(
            rows.iter()
                .map(|r| r.iter().map(|&x| RationalFn::real(x)).collect())
                .collect(),
        )
    }

    pub fn from_complex(rows: &[Vec<Complex64>]) -> Result<Self, GraphError> {
        Self::from_matrix(
            rows.iter()
                .map(|r| r.iter().map(|&x| RationalFn::constant(x)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFn {
        &self.w[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RationalFn) {
        self.w[i * self.n + j] = value;
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        !self.get(i, j).is_zero()
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.has_edge(i, i)
    }

    /// Nonzero entries, loops included.
    pub fn edge_count(&self) -> usize {
        self.w.iter().filter(|x| !x.is_zero()).count()
    }

    /// `(i, j)` pairs of nonzero entries in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(i, j))
            .collect()
    }

    /// Out-neighbours of `i` in ascending order, loop included if present.
    pub fn successors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.has_edge(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<RationalFn>> {
        self.w.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Membership in the class where every entry has `π ≤ 0`.
    pub fn is_pi_class(&self) -> bool {
        self.w.iter().all(|x| x.pi() <= PiIndex::Finite(0))
    }

    /// The constant matrix, if no entry depends on `λ`.
    pub fn constant_matrix(&self) -> Option<Vec<Vec<Complex64>>> {
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut r = Vec::with_capacity(self.n);
            for j in 0..self.n {
                r.push(self.get(i, j).as_constant()?);
            }
            rows.push(r);
        }
        Some(rows)
    }

    /// Graph on `order` with `new[a][b] = old[order[a]][order[b]]`.
    pub fn induced(&self, order: &[usize]) -> Result<Self, GraphError> {
        if let Some(&v) = order.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange(v));
        }
        let m = order.len();
        let mut g = WeightedDigraph::empty(m);
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                g.set(a, b, self.get(i, j).clone());
            }
        }
        Ok(g)
    }

    /// Relabeling; `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(GraphError::VertexOutOfRange(p));
            }
            seen[p] = true;
        }
        if perm.len() != self.n {
            return Err(GraphError::VertexOutOfRange(self.n));
        }
        self.induced(perm)
    }

    /// Entrywise comparison of canonical forms.
    pub fn approx_eq(&self, other: &WeightedDigraph, tol: f64) -> bool {
        self.n == other.n && self.w.iter().zip(&other.w).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Largest canonical-coefficient difference over all entries.
    pub fn max_entry_diff(&self, other: &WeightedDigraph) -> f64 {
        assert_eq!(self.n, other.n);
        self.w
            .iter()
            .zip(&other.w)
            .map(|(a, b)| a.max_coeff_diff(b))
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for WeightedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One input edge before normalization. `weight: None` means unweighted.
#[derive(Clone, Debug)]
pub struct EdgeInput {
    pub from: usize,
    pub to: usize,
    pub weight: Option<RationalFn>,
}

impl EdgeInput {
    pub fn unweighted(from: usize, to: usize) -> Self {
        EdgeInput { from, to, weight: None }
    }

    pub fn weighted(from: usize, to: usize, weight: RationalFn) -> Self {
        EdgeInput {
            from,
            to,
            weight: Some(weight),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NormalizeOptions {
    /// Treat every edge as undirected.
    pub symmetrize: bool,
    /// Ignore given weights and use 1 throughout.
    pub unit_weights: bool,
    /// Sum repeated `(i, j)` pairs; otherwise the last one wins.
    pub merge_parallel: bool,
}

/// Builds a graph from a possibly undirected, unweighted or multi-edge list.
pub fn normalize_input(
    n: usize,
    edges: &[EdgeInput],
    opts: NormalizeOptions,
) -> Result<WeightedDigraph, GraphError> {
    let mut g = WeightedDigraph::empty(n);
    let put = |g: &mut WeightedDigraph, i: usize, j: usize, w: &RationalFn| {
        let value = if opts.merge_parallel { g.get(i, j) + w } else { w.clone() };
        g.set(i, j, value);
    };
    for e in edges {
        if e.from >= n {
            return Err(GraphError::VertexOutOfRange(e.from));
        }
        if e.to >= n {
            return Err(GraphError::VertexOutOfRange(e.to));
        }
        let w = match (&e.weight, opts.unit_weights) {
            (Some(w), false) => w.clone(),
            _ => RationalFn::one(),
        };
        put(&mut g, e.from, e.to, &w);
        if opts.symmetrize && e.from != e.to {
            put(&mut g, e.to, e.from, &w);
        }
    }
    Ok(g)
}
