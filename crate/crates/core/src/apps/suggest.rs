use fixedbitset::FixedBitSet;

use super::AppsError;
use crate::graph::WeightedDigraph;
use crate::reduce::validate_structural;
use crate::regions::{all_specs, auto_window, poly_extension, raster, RegionFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    LooplessFirst,
    ExposedBoundary,
    ExhaustiveSmall,
}

/// A proposed kept set, best first within a returned list.
#[derive(Debug, Clone, PartialEq)]
pub struct Suggestion {
    pub keep: Vec<usize>,
    /// Strategy-specific: vertices removed, exposed boundary cells removed,
    /// or vertices removed again for the exhaustive listing.
    pub score: f64,
}

/// Largest graph `ExhaustiveSmall` will enumerate.
pub const EXHAUSTIVE_MAX: usize = 12;
/// Loop-free vertex count above which `LooplessFirst` only returns the
/// greedy candidate.
const LOOPLESS_SUBSETS_MAX: usize = 16;
pub const BOUNDARY_RESOLUTION: usize = 256;

pub fn suggest_structural_sets(g: &WeightedDigraph, strategy: Strategy) -> Result<Vec<Suggestion>, AppsError> {
    let n = g.n();
    let mut out = match strategy {
        Strategy::LooplessFirst => {
            let free: Vec<usize> = (0..n).filter(|&v| !g.has_loop(v)).collect();
            if free.len() > LOOPLESS_SUBSETS_MAX {
                let keep = super::loopless_keep(g);
                let score = (n - keep.len()) as f64;
                vec![Suggestion { keep, score }]
            } else {
                let mut v = Vec::new();
                for mask in 1u32..(1 << free.len()) {
                    let gone: Vec<usize> = (0..free.len()).filter(|b| mask >> b & 1 == 1).map(|b| free[b]).collect();
                    let keep: Vec<usize> = (0..n).filter(|u| !gone.contains(u)).collect();
                    if validate_structural(g, &keep).is_ok() {
                        v.push(Suggestion { keep, score: gone.len() as f64 });
                    }
                }
                v
            }
        }
        Strategy::ExposedBoundary => {
            let scores = exposed_boundary_scores(g, BOUNDARY_RESOLUTION)?;
            let mut order: Vec<usize> = (0..n).filter(|&v| scores[v] > 0).collect();
            order.sort_by_key(|&v| (std::cmp::Reverse(scores[v]), v));
            let mut v = Vec::new();
            for &i in &order {
                let keep: Vec<usize> = (0..n).filter(|&u| u != i).collect();
                if validate_structural(g, &keep).is_ok() {
                    v.push(Suggestion { keep, score: scores[i] as f64 });
                }
            }
            // Dropping every exposed vertex at once, when that is legal.
            if order.len() > 1 {
                let keep: Vec<usize> = (0..n).filter(|u| !order.contains(u)).collect();
                if validate_structural(g, &keep).is_ok() {
                    let score = order.iter().map(|&i| scores[i] as f64).sum();
                    v.push(Suggestion { keep, score });
                }
            }
            v
        }
        Strategy::ExhaustiveSmall => {
            if n > EXHAUSTIVE_MAX || n == 0 {
                return Ok(Vec::new());
            }
            let mut v = Vec::new();
            for mask in 1u32..(1 << n) {
                let keep: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
                if validate_structural(g, &keep).is_ok() {
                    let score = (n - keep.len()) as f64;
                    v.push(Suggestion { keep, score });
                }
            }
            v
        }
    };
    // Stable: ties keep the lexicographic order of the kept sets.
    out.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.keep.cmp(&b.keep)));
    Ok(out)
}

/// Raster count, per vertex, of boundary cells of its Gershgorin-type region
/// that no other vertex's region covers.
///
/// A boundary cell is a member whose 4-neighborhood leaves the region, or
/// the whole cell for a region too thin to have an interior on the grid.
pub fn exposed_boundary_scores(g: &WeightedDigraph, resolution: usize) -> Result<Vec<usize>, AppsError> {
    let ext = poly_extension(g);
    let specs = all_specs(&ext, RegionFamily::Gershgorin)?;
    let window = auto_window(&ext, RegionFamily::Gershgorin)?;
    let r = raster(&ext, &specs, window, (resolution, resolution))?;
    let (nx, ny) = (r.nx, r.ny);
    let n = g.n();
    let mut scores = vec![0; n];
    for (i, score) in scores.iter_mut().enumerate() {
        let mask = r.mask(i);
        let mut others = FixedBitSet::with_capacity(nx * ny);
        for j in (0..n).filter(|&j| j != i) {
            others.union_with(r.mask(j));
        }
        for cell in mask.ones() {
            if others.contains(cell) {
                continue;
            }
            let (ix, iy) = (cell % nx, cell / nx);
            let edge = ix == 0
                || iy == 0
                || ix + 1 == nx
                || iy + 1 == ny
                || !mask.contains(cell - 1)
                || !mask.contains(cell + 1)
                || !mask.contains(cell - nx)
                || !mask.contains(cell + nx);
            if edge {
                *score += 1;
            }
        }
    }
    Ok(scores)
}
