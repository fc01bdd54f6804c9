use super::WeightedDigraph;

/// Strongly connected components in Tarjan's emission order (sinks first).
///
/// With that order, every edge runs from a component to one with an equal or
/// smaller id, so relabeling vertices component by component makes the
/// adjacency matrix block lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl SccDecomposition {
    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Edges with both ends in one component, loops included.
    pub fn scc_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn same_component(&self, i: usize, j: usize) -> bool {
        self.component_of[i] == self.component_of[j]
    }

    /// Vertex order that lists components in emission order.
    pub fn block_order(&self) -> Vec<usize> {
        self.components.iter().flatten().copied().collect()
    }
}

pub fn scc(g: &WeightedDigraph) -> SccDecomposition {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| g.successors(i)).collect();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut component_of = vec![0; n];

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut work = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = components.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component_of[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    let edges = g
        .edges()
        .into_iter()
        .filter(|&(i, j)| component_of[i] == component_of[j])
        .collect();
    SccDecomposition {
        component_of,
        components,
        edges,
    }
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
    fn three_cycle_is_one_component() {
        let d = scc(&graph(3, &[(0, 1), (1, 2), (2, 0)]));
        assert_eq!(d.components(), &[vec![0, 1, 2]]);
        assert_eq!(d.scc_edges().len(), 3);
    }

    #[test]
    fn dag_is_all_singletons() {
        let d = scc(&graph(3, &[(0, 1), (1, 2), (0, 2)]));
        assert_eq!(d.components().len(), 3);
        assert!(d.scc_edges().is_empty());
    }

    #[test]
    fn loops_stay_in_scc_edges() {
        let d = scc(&graph(2, &[(0, 0), (0, 1)]));
        assert_eq!(d.scc_edges(), &[(0, 0)]);
    }

    #[test]
    fn emission_order_is_block_lower_triangular() {
        let g = graph(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (4, 0), (3, 3)]);
        let d = scc(&g);
        for (i, j) in g.edges() {
            assert!(d.component_of(j) <= d.component_of(i), "edge {i}->{j}");
        }
    }

    #[test]
    fn matches_reachability_oracle() {
        // Transitive closure by repeated boolean squaring.
        let g = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]);
        let n = g.n();
        let mut r = vec![vec![false; n]; n];
        for i in 0..n {
            r[i][i] = true;
            for j in g.successors(i) {
                r[i][j] = true;
            }
        }
        for _ in 0..n {
            let prev = r.clone();
            for i in 0..n {
                for j in 0..n {
                    r[i][j] = (0..n).any(|k| prev[i][k] && prev[k][j]);
                }
            }
        }
        let d = scc(&g);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d.same_component(i, j), r[i][j] && r[j][i]);
            }
        }
        assert_eq!(d.components().len(), 1);
    }
}
