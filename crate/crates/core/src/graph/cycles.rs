use std::collections::BTreeSet;

use super::{scc, GraphError, SccDecomposition, WeightedDigraph};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    Strong,
    /// Placeholder for a vertex on no strong cycle, loop or not.
    Weak,
}

/// A cycle as a vertex list, rotated so the smallest index comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub kind: CycleKind,
}

impl Cycle {
    pub fn strong(mut vertices: Vec<usize>) -> Self {
        let k = (0..vertices.len()).min_by_key(|&k| vertices[k]).unwrap_or(0);
        vertices.rotate_left(k);
        Cycle {
            vertices,
            kind: CycleKind::Strong,
        }
    }

    pub fn weak(v: usize) -> Self {
        Cycle {
            vertices: vec![v],
            kind: CycleKind::Weak,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Rotation that starts at `v`, if `v` is on the cycle.
    pub fn starting_at(&self, v: usize) -> Option<Vec<usize>> {
        let k = self.vertices.iter().position(|&u| u == v)?;
        let mut r = self.vertices.clone();
        r.rotate_left(k);
        Some(r)
    }
}

impl std::fmt::Display for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = self.vertices.iter().map(|v| format!("v{}", v + 1)).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// Strong cycles followed by one weak cycle per vertex on none of them.
pub fn cycles(g: &WeightedDigraph) -> Result<Vec<Cycle>, GraphError> {
    cycles_with_cap(g, DEFAULT_CYCLE_CAP)
}

/// Johnson's circuit enumeration inside each strongly connected component.
pub fn cycles_with_cap(g: &WeightedDigraph, cap: usize) -> Result<Vec<Cycle>, GraphError> {
    let d = scc(g);
    cycles_in(g, &d, cap)
}

pub(crate) fn cycles_in(g: &WeightedDigraph, d: &SccDecomposition, cap: usize) -> Result<Vec<Cycle>, GraphError> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            g.successors(i)
                .into_iter()
                .filter(|&j| j != i && d.same_component(i, j))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut on_strong = vec![false; n];
    for s in 0..n {
        let mut j = Johnson {
            adj: &adj,
            s,
            blocked: vec![false; n],
            b: vec![BTreeSet::new(); n],
            stack: Vec::new(),
            found: &mut out,
            cap,
            overflow: false,
        };
        j.circuit(s);
        if j.overflow {
            return Err(GraphError::CycleOverflow { cap });
        }
    }
    for c in &out {
        for &v in &c.vertices {
            on_strong[v] = true;
        }
    }
    out.extend((0..n).filter(|&v| !on_strong[v]).map(Cycle::weak));
    Ok(out)
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    s: usize,
    blocked: Vec<bool>,
    b: Vec<BTreeSet<usize>>,
    stack: Vec<usize>,
    found: &'a mut Vec<Cycle>,
    cap: usize,
    overflow: bool,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        let mut todo = vec![u];
        while let Some(x) = todo.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            todo.extend(std::mem::take(&mut self.b[x]));
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in &self.adj[v] {
            if self.overflow {
                break;
            }
            // Cycles through s use only vertices above s.
            if w < self.s {
                continue;
            }
            if w == self.s {
                if self.found.len() >= self.cap {
                    self.overflow = true;
                    break;
                }
                self.found.push(Cycle::strong(self.stack.clone()));
                closed = true;
            } else if !self.blocked[w] && self.circuit(w) {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in &self.adj[v] {
                if w >= self.s {
                    self.b[w].insert(v);
                }
            }
        }
        self.stack.pop();
        closed
    }
}

/// Cycle bookkeeping around one vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleAdjacency {
    /// Cycles avoiding `v` with an in-component edge from one of their
    /// vertices into `v`.
    pub adjacent: Vec<Cycle>,
    /// Cycles through `v` that pass the relabeling test.
    pub s_cycles: Vec<Cycle>,
    /// All cycles through `v`.
    pub c_cycles: Vec<Cycle>,
}

impl CycleAdjacency {
    /// Hypotheses under which deleting `v` cannot enlarge the Brualdi-type
    /// region.
    pub fn removal_safe(&self) -> bool {
        self.adjacent.is_empty() && self.s_cycles.len() == self.c_cycles.len()
    }
}

/// Adjacent, admissible and incident cycles of `v`.
///
/// A cycle `v = a₁, a₂, …, a_m` through `v` is admissible when no interior
/// vertex `a_j` (1 < j < m) has an edge back to `v`, and the last vertex
/// `a_m` has no in-component edge to a vertex off the cycle. Components are
/// taken in the graph with `v` deleted, since the cycle's own closing edge
/// would otherwise put every vertex reachable back through `v` in one
/// component.
pub fn cycle_adjacency(g: &WeightedDigraph, v: usize) -> Result<CycleAdjacency, GraphError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange(v));
    }
    let d = scc(g);
    let all = cycles_in(g, &d, DEFAULT_CYCLE_CAP)?;
    let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    let minus = scc(&g.induced(&rest)?);
    // Index into `rest` for u ≠ v.
    let pos = |u: usize| if u < v { u } else { u - 1 };
    let mut adjacent = Vec::new();
    let mut s_cycles = Vec::new();
    let mut c_cycles = Vec::new();
    for c in all {
        if !c.contains(v) {
            if c.vertices.iter().any(|&u| g.has_edge(u, v) && d.same_component(u, v)) {
                adjacent.push(c);
            }
            continue;
        }
        let admissible = if c.len() == 1 {
            true
        } else {
            let r = c.starting_at(v).expect("cycle contains v");
            let m = r.len();
            let last = r[m - 1];
            let no_return = r[1..m - 1].iter().all(|&a| !g.has_edge(a, v));
            let no_exit = (0..g.n())
                .filter(|k| !r.contains(k))
                .all(|k| !(g.has_edge(last, k) && minus.same_component(pos(last), pos(k))));
            no_return && no_exit
        };
        if admissible {
            s_cycles.push(c.clone());
        }
        c_cycles.push(c);
    }
    Ok(CycleAdjacency {
        adjacent,
        s_cycles,
        c_cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> WeightedDigraph {
        let mut m = vec![vec![0.0; n]; n];
        for &(i, j) in edges {
            m[i][j] = 1.0;
        }
        WeightedDigraph::from_real(&m).unwrap()
    }

    #[test]
    fn lone_vertex_is_a_weak_cycle() {
        let c = cycles(&graph(1, &[])).unwrap();
        assert_eq!(c, vec![Cycle::weak(0)]);
        let c = cycles(&graph(1, &[(0, 0)])).unwrap();
        assert_eq!(c, vec![Cycle::weak(0)]);
    }

    #[test]
    fn complete_digraph_on_four() {
        let mut e = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    e.push((i, j));
                }
            }
        }
        // 6 two-cycles, 8 three-cycles, 6 four-cycles.
        assert_eq!(cycles(&graph(4, &e)).unwrap().len(), 20);
    }

    #[test]
    fn rotation_is_canonical() {
        let c = cycles(&graph(3, &[(2, 1), (1, 0), (0, 2)])).unwrap();
        assert_eq!(c, vec![Cycle::strong(vec![0, 2, 1])]);
        assert_eq!(Cycle::strong(vec![2, 1, 0]).vertices, vec![0, 2, 1]);
    }

    #[test]
    fn cap_overflow() {
        let e: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        assert_eq!(
            cycles_with_cap(&graph(4, &e), 5),
            Err(GraphError::CycleOverflow { cap: 5 })
        );
    }

    #[test]
    fn cycles_across_components_are_not_mixed() {
        // Two 2-cycles joined by a one-way edge, plus a dangling vertex.
        let g = graph(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (4, 4)]);
        let c = cycles(&g).unwrap();
        assert_eq!(
            c,
            vec![Cycle::strong(vec![0, 1]), Cycle::strong(vec![2, 3]), Cycle::weak(4)]
        );
    }

    #[test]
    fn out_of_range_vertex() {
        assert!(cycle_adjacency(&graph(2, &[]), 2).is_err());
    }
}
