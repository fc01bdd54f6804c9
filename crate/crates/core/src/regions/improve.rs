use num_complex::Complex64;

use super::{
    all_specs, auto_window, member_union, poly_extension, raster, PolyExtension, RegionError, RegionFamily,
    RegionSpec, Window,
};
use crate::graph::{cycle_adjacency, WeightedDigraph};
use crate::reduce::{reduce_closure, validate_structural, ReductionResult};

/// A sufficient condition for region improvement that the input misses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    NotPiClass,
    /// Brauer-type regions need two kept vertices.
    KeepTooSmall,
    /// The Brualdi check removes exactly one vertex.
    NotSingleRemoval,
    /// The removed vertex is adjacent to a cycle or lies on a cycle failing
    /// the relabeling test.
    UnsafeRemoval(usize),
}

#[derive(Debug, Clone)]
pub struct ImprovementReport {
    pub family: RegionFamily,
    pub preconditions: Vec<Precondition>,
    pub reduction: ReductionResult,
    pub window: Window,
    pub resolution: (usize, usize),
    pub original_cells: usize,
    pub reduced_cells: usize,
    /// Cells in the reduced union but not in the original one.
    pub violations: Vec<Complex64>,
}

impl ImprovementReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Rasterizes `family` for `g` and for its reduction onto `keep`, and lists
/// the cells where the reduced union escapes the original.
///
/// Unmet hypotheses are reported, never asserted; the comparison runs
/// regardless so counterexamples can be exhibited.
pub fn verify_improvement(
    g: &WeightedDigraph,
    keep: &[usize],
    family: RegionFamily,
    resolution: (usize, usize),
) -> Result<ImprovementReport, RegionError> {
    let mut preconditions = Vec::new();
    if !g.is_pi_class() {
        preconditions.push(Precondition::NotPiClass);
    }
    match family {
        RegionFamily::Gershgorin => {}
        RegionFamily::Brauer => {
            if keep.len() < 2 {
                preconditions.push(Precondition::KeepTooSmall);
            }
        }
        RegionFamily::Brualdi => {
            let removed: Vec<usize> = (0..g.n()).filter(|v| !keep.contains(v)).collect();
            if removed.len() != 1 || g.n() < 2 {
                preconditions.push(Precondition::NotSingleRemoval);
            }
            for &v in &removed {
                if !cycle_adjacency(g, v)?.removal_safe() {
                    preconditions.push(Precondition::UnsafeRemoval(v));
                }
            }
        }
    }
    let reduction = reduce_closure(g, keep)?;
    let before = poly_extension(g);
    let after = poly_extension(&reduction.graph);
    let window = auto_window(&before, RegionFamily::Gershgorin)?.hull(&auto_window(&after, RegionFamily::Gershgorin)?);
    let r0 = raster(&before, &all_specs(&before, family)?, window, resolution)?;
    let r1 = raster(&after, &all_specs(&after, family)?, window, resolution)?;
    let violations = r1.cells_outside(&r0).into_iter().map(|c| r1.center(c)).collect();
    Ok(ImprovementReport {
        family,
        preconditions,
        reduction,
        window,
        resolution,
        original_cells: r0.union_count(),
        reduced_cells: r1.union_count(),
        violations,
    })
}

/// Boundary samples of one removed vertex's Gershgorin-type region.
#[derive(Debug, Clone)]
pub struct VertexBoundary {
    pub vertex: usize,
    /// Rays cast in the final round.
    pub rays: usize,
    /// Boundary points not covered by any other region of the original graph.
    pub exposed: usize,
    /// Evenly spaced subset of the exposed points that was tested.
    pub samples: Vec<Complex64>,
    /// Samples lying in the reduced graph's Gershgorin-type union.
    pub hits: usize,
}

#[derive(Debug, Clone)]
pub struct BoundaryReport {
    pub vertices: Vec<VertexBoundary>,
}

impl BoundaryReport {
    pub fn sampled(&self) -> usize {
        self.vertices.iter().map(|v| v.samples.len()).sum()
    }

    pub fn hits(&self) -> usize {
        self.vertices.iter().map(|v| v.hits).sum()
    }

    /// Share of tested points outside the reduced union; 1 when nothing was
    /// sampled.
    pub fn excluded_fraction(&self) -> f64 {
        match self.sampled() {
            0 => 1.0,
            s => 1.0 - self.hits() as f64 / s as f64,
        }
    }
}

const FIRST_RAYS: usize = 64;
const MAX_RAYS: usize = 1 << 14;
const BOUNDARY_STEPS: usize = 2048;

/// Samples the exposed part of each removed vertex's Gershgorin-type boundary
/// and counts how much of it the reduced graph still covers.
pub fn boundary_strictness(g: &WeightedDigraph, keep: &[usize], samples: usize) -> Result<BoundaryReport, RegionError> {
    let s = validate_structural(g, keep).map(|s| s.removed().to_vec());
    let removed = match s {
        Ok(r) => r,
        Err(_) => (0..g.n()).filter(|v| !keep.contains(v)).collect(),
    };
    let reduction = reduce_closure(g, keep)?;
    let before = poly_extension(g);
    let after = poly_extension(&reduction.graph);
    let reduced_specs = all_specs(&after, RegionFamily::Gershgorin)?;
    let mut vertices = Vec::new();
    for i in removed {
        let others: Vec<RegionSpec> = (0..g.n()).filter(|&j| j != i).map(RegionSpec::Gershgorin).collect();
        let center = disc_center(g, &before, i);
        let mut rays = FIRST_RAYS;
        let exposed = loop {
            let exposed: Vec<Complex64> = boundary_points(&before, i, center, rays)
                .into_iter()
                .filter(|&z| !member_union(&before, &others, z))
                .collect();
            if exposed.len() >= samples || rays >= MAX_RAYS {
                break exposed;
            }
            rays *= 2;
        };
        let picked: Vec<Complex64> = if exposed.len() <= samples {
            exposed.clone()
        } else {
            (0..samples).map(|k| exposed[k * exposed.len() / samples]).collect()
        };
        let hits = picked.iter().filter(|&&z| member_union(&after, &reduced_specs, z)).count();
        vertices.push(VertexBoundary { vertex: i, rays, exposed: exposed.len(), samples: picked, hits });
    }
    Ok(BoundaryReport { vertices })
}

/// Zero of λ − M(Ḡ)ᵢᵢ nearest the entry's value at infinity, which is the
/// disc center when the weight is constant.
fn disc_center(g: &WeightedDigraph, ext: &PolyExtension, i: usize) -> Complex64 {
    let c0 = g.get(i, i).value_at_infinity().unwrap_or_default();
    crate::wfield::poly_roots(ext.gap_poly(i), 1e-10)
        .ok()
        .and_then(|r| {
            r.values()
                .into_iter()
                .min_by(|a, b| (a - c0).norm().total_cmp(&(b - c0).norm()))
        })
        .unwrap_or(c0)
}

/// First sign change of |z − M̄ᵢᵢ(z)| − rᵢ(Ḡ, z) along each ray, bisected to
/// near machine precision.
fn boundary_points(ext: &PolyExtension, i: usize, center: Complex64, rays: usize) -> Vec<Complex64> {
    let f = |z: Complex64| ext.gap_poly(i).eval(z).norm() - ext.row_sum(i, z);
    let limit = ext.cauchy_radius().unwrap_or(super::FALLBACK_RADIUS) + center.norm();
    let step = limit / BOUNDARY_STEPS as f64;
    let mut out = Vec::new();
    for k in 0..rays {
        let dir = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / rays as f64);
        let at = |t: f64| center + dir * t;
        let Some(s) = (1..=BOUNDARY_STEPS).find(|&s| f(at(s as f64 * step)) > 0.0) else {
            continue;
        };
        let (mut lo, mut hi) = ((s - 1) as f64 * step, s as f64 * step);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(at(mid)) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(at(0.5 * (lo + hi)));
    }
    out
}
