use std::fmt;

use crate::graph::WeightedDigraph;

use super::ReduceError;

/// A kept vertex set whose complement may be reduced away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralSet {
    n: usize,
    keep: Vec<usize>,
    removed: Vec<usize>,
}

impl StructuralSet {
    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_kept(&self, v: usize) -> bool {
        self.keep.binary_search(&v).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.removed.is_empty()
    }
}

impl fmt::Display for StructuralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.keep.iter().map(|v| format!("v{}", v + 1)).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Checks that `keep` is nonempty, that the complement induces no cycle once
/// loops are ignored, and that no removed vertex carries the loop weight `λ`.
pub fn validate_structural(g: &WeightedDigraph, keep: &[usize]) -> Result<StructuralSet, ReduceError> {
    let n = g.n();
    if keep.is_empty() {
        return Err(ReduceError::EmptyKeep);
    }
    let mut kept = vec![false; n];
    for &v in keep {
        if v >= n {
            return Err(ReduceError::VertexOutOfRange(v));
        }
        if kept[v] {
            return Err(ReduceError::DuplicateVertex(v));
        }
        kept[v] = true;
    }
    let removed: Vec<usize> = (0..n).filter(|&v| !kept[v]).collect();
    if let Some(&v) = removed.iter().find(|&&v| g.get(v, v).is_identically_lambda()) {
        return Err(ReduceError::DiagonalIsLambda { vertex: v });
    }
    if let Some(cycle) = find_cycle(g, &removed) {
        return Err(ReduceError::CycleInComplement { cycle });
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    Ok(StructuralSet { n, keep, removed })
}

/// A loop-free cycle inside `within`, if one exists.
fn find_cycle(g: &WeightedDigraph, within: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in within {
        inside[v] = true;
    }
    // 0 = unvisited, 1 = on the current path, 2 = finished
    let mut state = vec![0u8; n];
    let mut path: Vec<usize> = Vec::new();
    for &root in within {
        if state[root] != 0 {
            continue;
        }
        let mut work = vec![(root, 0usize)];
        state[root] = 1;
        path.push(root);
        while let Some(top) = work.last_mut() {
            let (v, pos) = *top;
            let next = (pos..n).find(|&w| w != v && inside[w] && g.has_edge(v, w));
            match next {
                Some(w) => {
                    top.1 = w + 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            path.push(w);
                            work.push((w, 0));
                        }
                        1 => {
                            let start = path.iter().position(|&u| u == w).expect("on path");
                            return Some(path[start..].to_vec());
                        }
                        _ => {}
                    }
                }
                None => {
                    state[v] = 2;
                    path.pop();
                    work.pop();
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wfield::RationalFn;

    fn graph(n: usize, edges: &[(usize, usize)]) -> WeightedDigraph {
        let mut m = vec![vec![0.0; n]; n];
        for &(i, j) in edges {
            m[i][j] = 1.0;
        }
        WeightedDigraph::from_real(&m).unwrap()
    }

    #[test]
    fn everything_kept_is_structural() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let s = validate_structural(&g, &[2, 0, 1]).unwrap();
        assert!(s.is_trivial());
        assert_eq!(s.keep(), &[0, 1, 2]);
    }

    #[test]
    fn loops_do_not_count_as_cycles() {
        let g = graph(3, &[(0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]);
        let s = validate_structural(&g, &[0]).unwrap();
        assert_eq!(s.removed(), &[1, 2]);
    }

    #[test]
    fn cycle_witness() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]);
        match validate_structural(&g, &[0]) {
            Err(ReduceError::CycleInComplement { cycle }) => {
                let mut c = cycle.clone();
                c.sort();
                assert_eq!(c, vec![1, 2, 3]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lambda_loop_rejected() {
        let mut g = graph(2, &[(0, 1), (1, 0)]);
        g.set(1, 1, RationalFn::lambda());
        assert_eq!(
            validate_structural(&g, &[0]),
            Err(ReduceError::DiagonalIsLambda { vertex: 1 })
        );
        // Kept vertices may carry it.
        assert!(validate_structural(&g, &[1]).is_ok());
    }

    #[test]
    fn bad_keep_sets() {
        let g = graph(2, &[]);
        assert_eq!(validate_structural(&g, &[]), Err(ReduceError::EmptyKeep));
        assert_eq!(validate_structural(&g, &[2]), Err(ReduceError::VertexOutOfRange(2)));
        assert_eq!(validate_structural(&g, &[1, 1]), Err(ReduceError::DuplicateVertex(1)));
    }
}
