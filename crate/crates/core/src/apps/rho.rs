use num_complex::Complex64;

use super::AppsError;
use crate::graph::WeightedDigraph;
use crate::reduce::{validate_structural, ExceptionalSet, ReductionResult};
use crate::regions::{all_specs, member_union, poly_extension, union_extent, RegionFamily, RAY_COUNT, RAY_TOL};

/// One refinement step of a spectral-radius estimate.
#[derive(Debug, Clone)]
pub struct RhoLevel {
    /// Reduction in force at this level; `trace` lists the kept sets.
    pub reduction: ReductionResult,
    pub family: RegionFamily,
    /// Exceptional values introduced by this level's step.
    pub exceptional: Vec<Complex64>,
    /// Those of them that earlier estimates could not rule out.
    pub retained: Vec<Complex64>,
    /// Farthest reach of this level's region from the origin.
    pub region_radius: f64,
    /// Radius bound certified at this level.
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct RhoEstimate {
    /// Smallest bound over all levels.
    pub bound: f64,
    pub levels: Vec<RhoLevel>,
}

/// Bounds the spectral radius through successively reduced Gershgorin-type
/// regions.
///
/// Level 0 uses the graph itself. Level 1 removes loop-free vertices, greedily
/// by label, while the kept set stays structural; the only exceptional value
/// is 0, so the radius is unchanged. Each further level removes the single
/// vertex giving the smallest bound. A level's estimate set is its region
/// plus the new exceptional values lying in the previous estimate set.
pub fn estimate_rho(g: &WeightedDigraph, levels: usize) -> Result<RhoEstimate, AppsError> {
    if !g.is_pi_class() {
        return Err(AppsError::NotPiClass);
    }
    let mut current = ReductionResult::identity(g);
    let mut prev_points: Vec<Complex64> = Vec::new();
    let radius = region_radius(&current.graph)?;
    let mut out = vec![RhoLevel {
        reduction: current.clone(),
        family: RegionFamily::Gershgorin,
        exceptional: Vec::new(),
        retained: Vec::new(),
        region_radius: radius,
        bound: radius,
    }];
    for level in 1..=levels {
        let candidates: Vec<(ReductionResult, Vec<Complex64>)> = if level == 1 {
            let keep = loopless_keep(&current.graph);
            if keep.len() == current.graph.n() {
                Vec::new()
            } else {
                let keep: Vec<usize> = keep.iter().map(|&k| current.labels[k]).collect();
                let step = current.then_keep(&keep)?;
                vec![(step, vec![Complex64::new(0.0, 0.0)])]
            }
        } else if current.graph.n() > 1 {
            let mut c = Vec::new();
            for local in 0..current.graph.n() {
                let w = current.graph.get(local, local);
                if w.is_identically_lambda() {
                    continue;
                }
                let (Ok(step), Ok(nu)) = (current.then_eliminate(current.labels[local]), ExceptionalSet::for_loop(w))
                else {
                    continue;
                };
                c.push((step, nu.values().to_vec()));
            }
            c
        } else {
            Vec::new()
        };
        let prev_ext = poly_extension(&current.graph);
        let prev_specs = all_specs(&prev_ext, RegionFamily::Gershgorin)?;
        let in_prev = |z: Complex64| {
            member_union(&prev_ext, &prev_specs, z) || prev_points.iter().any(|p| (p - z).norm() <= 1e-9 * (1.0 + z.norm()))
        };
        let mut best: Option<RhoLevel> = None;
        for (step, nu) in candidates {
            let Ok(radius) = region_radius(&step.graph) else {
                continue;
            };
            let retained: Vec<Complex64> = nu.iter().copied().filter(|&z| in_prev(z)).collect();
            let bound = retained.iter().map(|z| z.norm()).fold(radius, f64::max);
            if best.as_ref().is_none_or(|b| bound < b.bound) {
                best = Some(RhoLevel {
                    reduction: step,
                    family: RegionFamily::Gershgorin,
                    exceptional: nu,
                    retained,
                    region_radius: radius,
                    bound,
                });
            }
        }
        let Some(next) = best else {
            break;
        };
        prev_points.extend(next.retained.iter().copied());
        current = next.reduction.clone();
        out.push(next);
    }
    let bound = out.iter().map(|l| l.bound).fold(f64::INFINITY, f64::min);
    Ok(RhoEstimate { bound, levels: out })
}

/// Vertices kept after greedily dropping loop-free ones, lowest label first,
/// as long as the kept set stays structural and nonempty.
pub fn loopless_keep(g: &WeightedDigraph) -> Vec<usize> {
    let n = g.n();
    let mut removed: Vec<usize> = Vec::new();
    for v in (0..n).filter(|&v| !g.has_loop(v)) {
        let keep: Vec<usize> = (0..n).filter(|u| *u != v && !removed.contains(u)).collect();
        if validate_structural(g, &keep).is_ok() {
            removed.push(v);
        }
    }
    (0..n).filter(|u| !removed.contains(u)).collect()
}

fn region_radius(g: &WeightedDigraph) -> Result<f64, AppsError> {
    let ext = poly_extension(g);
    let specs = all_specs(&ext, RegionFamily::Gershgorin)?;
    let e = union_extent(&ext, &specs, Complex64::new(0.0, 0.0), RAY_COUNT, RAY_TOL);
    if e.truncated {
        return Err(AppsError::Unbounded);
    }
    Ok(e.radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_vertex() {
        let g = WeightedDigraph::from_real(&[vec![-2.5]]).unwrap();
        let r = estimate_rho(&g, 3).unwrap();
        assert!((r.bound - 2.5).abs() < 1e-9);
        assert_eq!(r.levels.len(), 1);
    }

    #[test]
    fn k_levels() {
        let r = estimate_rho(&fixtures::k_digraph(), 1).unwrap();
        assert!((r.levels[0].bound - 3.0).abs() < 1e-3, "{}", r.levels[0].bound);
        assert!((r.levels[1].bound - 2.0).abs() < 1e-3, "{}", r.levels[1].bound);
        assert_eq!(r.levels[1].reduction.labels, vec![0, 2, 4]);
    }

    #[test]
    fn loopless_keep_respects_cycles() {
        // A bare 3-cycle: two of its vertices can go, the last must stay.
        let g = fixtures::j_digraph();
        let keep = loopless_keep(&g);
        assert!(validate_structural(&g, &keep).is_ok());
        assert!(!keep.is_empty());
    }
}
