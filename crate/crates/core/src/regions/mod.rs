//! Eigenvalue inclusion regions for graphs over 𝕎.
//!
//! Every region is evaluated on the polynomial extension Ḡ, whose rows are
//! the rows of `M(G)` cleared of denominators. Membership is a closed
//! inequality with a small slack so that eigenvalues sitting exactly on a
//! boundary still register.

mod improve;
mod raster;

pub use improve::{
    boundary_strictness, verify_improvement, BoundaryReport, ImprovementReport, Precondition, VertexBoundary,
};
pub use raster::{raster, RasterGrid};

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{cycles, scc, Cycle, CycleKind, GraphError, SccDecomposition, WeightedDigraph};
use crate::wfield::{poly_roots, Poly};

/// Base factor of the membership slack.
pub const EPS_MEM: f64 = 1e-9;
/// Rays used when measuring how far a region reaches.
pub const RAY_COUNT: usize = 256;
/// Radial resolution of extent searches.
pub const RAY_TOL: f64 = 1e-4;
/// Radial samples per ray before bisection.
const RAY_SAMPLES: usize = 1024;
/// Search radius used when no finite a priori bound exists.
const FALLBACK_RADIUS: f64 = 1e4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("vertex {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("Brauer-type region needs two distinct vertices, got ({0}, {0})")]
    BrauerDiagonal(usize),
    #[error("Brauer-type regions need at least two vertices")]
    BrauerTooSmall,
    #[error("{0} is not a cycle of the graph")]
    UnknownCycle(Cycle),
    #[error("resolution must be at least 2×2, got {nx}×{ny}")]
    Resolution { nx: usize, ny: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduce(#[from] crate::reduce::ReduceError),
}

/// The three region families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionFamily {
    Gershgorin,
    Brauer,
    Brualdi,
}

impl fmt::Display for RegionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionFamily::Gershgorin => "gershgorin",
            RegionFamily::Brauer => "brauer",
            RegionFamily::Brualdi => "brualdi",
        })
    }
}

/// One constituent region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionSpec {
    Gershgorin(usize),
    /// Unordered; `all_specs` emits `i < j`.
    Brauer(usize, usize),
    Brualdi(Cycle),
}

impl RegionSpec {
    pub fn family(&self) -> RegionFamily {
        match self {
            RegionSpec::Gershgorin(_) => RegionFamily::Gershgorin,
            RegionSpec::Brauer(..) => RegionFamily::Brauer,
            RegionSpec::Brualdi(_) => RegionFamily::Brualdi,
        }
    }

    /// Rows whose diagonal gap enters the inequality.
    pub fn rows(&self) -> Vec<usize> {
        match self {
            RegionSpec::Gershgorin(i) => vec![*i],
            RegionSpec::Brauer(i, j) => vec![*i, *j],
            RegionSpec::Brualdi(c) => c.vertices.clone(),
        }
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::Gershgorin(i) => write!(f, "gershgorin(v{})", i + 1),
            RegionSpec::Brauer(i, j) => write!(f, "brauer(v{}, v{})", i + 1, j + 1),
            RegionSpec::Brualdi(c) => write!(f, "brualdi{c}"),
        }
    }
}

/// Polynomial extension Ḡ of a graph together with the data the region
/// inequalities need.
#[derive(Debug)]
pub struct PolyExtension {
    n: usize,
    rows: Vec<Poly>,
    row_factors: Vec<Poly>,
    /// λ − M(Ḡ)ᵢᵢ per row.
    gaps: Vec<Poly>,
    degree: Vec<i32>,
    scale: Vec<f64>,
    scc: SccDecomposition,
    source: WeightedDigraph,
    cycles: OnceLock<Result<Vec<Cycle>, GraphError>>,
}

pub fn poly_extension(g: &WeightedDigraph) -> PolyExtension {
    let n = g.n();
    let mut rows = Vec::with_capacity(n * n);
    let mut row_factors = Vec::with_capacity(n);
    let mut gaps = Vec::with_capacity(n);
    let mut degree = Vec::with_capacity(n);
    let mut scale = Vec::with_capacity(n);
    for i in 0..n {
        let dens: Vec<&Poly> = (0..n).map(|j| g.get(i, j).den()).collect();
        let l = dens.iter().fold(Poly::one(), |acc, q| &acc * q);
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            // Lᵢ·pᵢⱼ/qᵢⱼ without dividing.
            let others = (0..n).filter(|&k| k != j).fold(Poly::one(), |acc, k| &acc * dens[k]);
            let scaled = &others * g.get(i, j).num();
            row.push(if i == j { &(&scaled - &(&l * &Poly::lambda())) + &Poly::lambda() } else { scaled });
        }
        let gap = &Poly::lambda() - &row[i];
        let deg = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.degree().unwrap_or(0))
            .chain(std::iter::once(gap.degree().unwrap_or(0)))
            .max()
            .unwrap_or(0);
        let s = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.norm_inf())
            .fold(gap.norm_inf(), f64::max)
            .max(1.0);
        degree.push(deg as i32);
        scale.push(s);
        gaps.push(gap);
        row_factors.push(l);
        rows.extend(row);
    }
    PolyExtension {
        n,
        rows,
        row_factors,
        gaps,
        degree,
        scale,
        scc: scc(g),
        source: g.clone(),
        cycles: OnceLock::new(),
    }
}

/// Quantities at a single point that every inequality is built from.
#[derive(Debug, Clone)]
pub struct PointEval {
    /// |z − M(Ḡ,z)ᵢᵢ|
    pub gap: Vec<f64>,
    /// rᵢ(Ḡ, z)
    pub radius: Vec<f64>,
    /// r̃ᵢ(Ḡ, z), the row sum restricted to vᵢ's component.
    pub local_radius: Vec<f64>,
    /// Per-row slack at z.
    pub slack: Vec<f64>,
}

impl PointEval {
    /// Gap with the slack taken off, floored at zero.
    fn reduced_gap(&self, i: usize) -> f64 {
        (self.gap[i] - self.slack[i]).max(0.0)
    }

    /// Whether the point satisfies `spec`. The spec must be valid.
    ///
    /// Slack shrinks each gap rather than inflating radii, so that
    /// Brualdi ⊆ Brauer ⊆ Gershgorin survives exactly even where radii vanish.
    pub fn satisfies(&self, spec: &RegionSpec) -> bool {
        match spec {
            RegionSpec::Gershgorin(i) => self.reduced_gap(*i) <= self.radius[*i],
            RegionSpec::Brauer(i, j) => self.reduced_gap(*i) * self.reduced_gap(*j) <= self.radius[*i] * self.radius[*j],
            RegionSpec::Brualdi(c) => {
                let (mut lhs, mut rhs) = (1.0, 1.0);
                for &i in &c.vertices {
                    lhs *= self.reduced_gap(i);
                    rhs *= self.local_radius[i];
                }
                lhs <= rhs
            }
        }
    }
}

impl PolyExtension {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry (i, j) of M(Ḡ).
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i * self.n + j]
    }

    /// Lᵢ(G, λ).
    pub fn row_factor(&self, i: usize) -> &Poly {
        &self.row_factors[i]
    }

    /// λ − M(Ḡ)ᵢᵢ.
    pub fn gap_poly(&self, i: usize) -> &Poly {
        &self.gaps[i]
    }

    pub fn components(&self) -> &SccDecomposition {
        &self.scc
    }

    pub fn source(&self) -> &WeightedDigraph {
        &self.source
    }

    /// C(Ḡ). Ḡ has the off-diagonal pattern of G, so the cycle set is shared.
    pub fn cycles(&self) -> Result<&[Cycle], GraphError> {
        self.cycles
            .get_or_init(|| cycles(&self.source))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn row_sum(&self, i: usize, z: Complex64) -> f64 {
        (0..self.n).filter(|&j| j != i).map(|j| self.entry(i, j).eval(z).norm()).sum()
    }

    pub fn local_row_sum(&self, i: usize, z: Complex64) -> f64 {
        (0..self.n)
            .filter(|&j| j != i && self.scc.same_component(i, j))
            .map(|j| self.entry(i, j).eval(z).norm())
            .sum()
    }

    pub fn slack(&self, i: usize, z: Complex64) -> f64 {
        EPS_MEM * self.scale[i] * (1.0 + z.norm()).powi(self.degree[i])
    }

    pub fn eval_point(&self, z: Complex64) -> PointEval {
        let n = self.n;
        let mut p = PointEval {
            gap: Vec::with_capacity(n),
            radius: vec![0.0; n],
            local_radius: vec![0.0; n],
            slack: Vec::with_capacity(n),
        };
        for i in 0..n {
            p.gap.push(self.gaps[i].eval(z).norm());
            p.slack.push(self.slack(i, z));
            for j in (0..n).filter(|&j| j != i) {
                let entry = self.entry(i, j);
                if entry.is_zero() {
                    continue;
                }
                let a = entry.eval(z).norm();
                p.radius[i] += a;
                if self.scc.same_component(i, j) {
                    p.local_radius[i] += a;
                }
            }
        }
        p
    }

    pub fn validate(&self, spec: &RegionSpec) -> Result<(), RegionError> {
        let check = |index: usize| {
            if index < self.n {
                Ok(())
            } else {
                Err(RegionError::IndexOutOfRange { index, n: self.n })
            }
        };
        match spec {
            RegionSpec::Gershgorin(i) => check(*i),
            RegionSpec::Brauer(i, j) => {
                if self.n < 2 {
                    return Err(RegionError::BrauerTooSmall);
                }
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(RegionError::BrauerDiagonal(*i));
                }
                Ok(())
            }
            RegionSpec::Brualdi(c) => {
                for &v in &c.vertices {
                    check(v)?;
                }
                if self.cycles()?.contains(c) {
                    Ok(())
                } else {
                    Err(RegionError::UnknownCycle(c.clone()))
                }
            }
        }
    }

    /// Outer radius of the Gershgorin-type union from a Cauchy bound on each
    /// row inequality. `None` when some row's off-diagonal degree reaches the
    /// gap degree, so the region need not be bounded.
    pub fn cauchy_radius(&self) -> Option<f64> {
        let mut out: f64 = 0.0;
        for i in 0..self.n {
            let gap = &self.gaps[i];
            let d = gap.degree()?;
            let lead = gap.leading()?.norm();
            let mut worst: f64 = 0.0;
            for k in 0..d {
                let mut c = gap.coeffs()[k].norm();
                for j in (0..self.n).filter(|&j| j != i) {
                    let e = self.entry(i, j);
                    if e.degree().is_some_and(|de| de >= d) {
                        return None;
                    }
                    c += e.coeffs().get(k).map_or(0.0, |x| x.norm());
                }
                worst = worst.max(c / lead);
            }
            out = out.max(1.0 + worst);
        }
        Some(out)
    }
}

/// Every region of `family` for the graph.
pub fn all_specs(ext: &PolyExtension, family: RegionFamily) -> Result<Vec<RegionSpec>, GraphError> {
    let n = ext.n();
    Ok(match family {
        RegionFamily::Gershgorin => (0..n).map(RegionSpec::Gershgorin).collect(),
        RegionFamily::Brauer => {
            let mut v = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    v.push(RegionSpec::Brauer(i, j));
                }
            }
            v
        }
        RegionFamily::Brualdi => ext.cycles()?.iter().cloned().map(RegionSpec::Brualdi).collect(),
    })
}

/// Membership of `z` in one region. `spec` must be valid for `ext`.
pub fn member(ext: &PolyExtension, spec: &RegionSpec, z: Complex64) -> bool {
    ext.eval_point(z).satisfies(spec)
}

/// Membership of `z` in the union of `specs`.
pub fn member_union(ext: &PolyExtension, specs: &[RegionSpec], z: Complex64) -> bool {
    let p = ext.eval_point(z);
    specs.iter().any(|s| p.satisfies(s))
}

/// Axis-aligned rectangle of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Window { re_min, re_max, im_min, im_max }
    }

    pub fn square(center: Complex64, half: f64) -> Self {
        Window::new(center.re - half, center.re + half, center.im - half, center.im + half)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&z.re) && (self.im_min..=self.im_max).contains(&z.im)
    }

    pub fn hull(&self, other: &Window) -> Window {
        Window::new(
            self.re_min.min(other.re_min),
            self.re_max.max(other.re_max),
            self.im_min.min(other.im_min),
            self.im_max.max(other.im_max),
        )
    }

    /// Center of cell (ix, iy) on an nx × ny grid.
    pub fn cell_center(&self, ix: usize, iy: usize, nx: usize, ny: usize) -> Complex64 {
        Complex64::new(
            self.re_min + (ix as f64 + 0.5) * (self.re_max - self.re_min) / nx as f64,
            self.im_min + (iy as f64 + 0.5) * (self.im_max - self.im_min) / ny as f64,
        )
    }

    fn bounding(points: &[Complex64]) -> Option<Window> {
        let first = points.first()?;
        let mut w = Window::new(first.re, first.re, first.im, first.im);
        for z in points {
            w = w.hull(&Window::new(z.re, z.re, z.im, z.im));
        }
        Some(w)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] × [{}, {}]", self.re_min, self.re_max, self.im_min, self.im_max)
    }
}

/// How far a union of regions reaches from a center.
#[derive(Debug, Clone)]
pub struct Extent {
    /// Largest distance from the center to a point of the union found.
    pub radius: f64,
    /// Outermost member on each ray that met the union.
    pub ray_points: Vec<Complex64>,
    /// Isolated members: zeros of a diagonal gap.
    pub isolated: Vec<Complex64>,
    /// Some ray still met the union at the search limit.
    pub truncated: bool,
}

impl Extent {
    pub fn points(&self) -> impl Iterator<Item = &Complex64> {
        self.ray_points.iter().chain(&self.isolated)
    }
}

/// Radial extent of the union of `specs` around `center`.
///
/// Each ray is sampled from the search limit inward; the outermost member
/// sample is then refined by bisection to `tol`. The reported crossing is the
/// outer end of the final bracket. Zeros of the diagonal gaps are members of
/// every region through that row even when they are isolated, so they are
/// added separately.
pub fn union_extent(ext: &PolyExtension, specs: &[RegionSpec], center: Complex64, rays: usize, tol: f64) -> Extent {
    let limit = ext.cauchy_radius().unwrap_or(FALLBACK_RADIUS) + center.norm();
    let member_at = |z: Complex64| member_union(ext, specs, z);
    let mut out = Extent { radius: 0.0, ray_points: Vec::new(), isolated: Vec::new(), truncated: false };
    for k in 0..rays {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / rays as f64;
        let dir = Complex64::from_polar(1.0, theta);
        let at = |t: f64| center + dir * t;
        let step = limit / RAY_SAMPLES as f64;
        let Some(hit) = (0..=RAY_SAMPLES).rev().find(|&s| member_at(at(s as f64 * step))) else {
            continue;
        };
        let t = if hit == RAY_SAMPLES {
            out.truncated = true;
            limit
        } else {
            let (mut lo, mut hi) = (hit as f64 * step, (hit + 1) as f64 * step);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if member_at(at(mid)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        };
        out.radius = out.radius.max(t);
        out.ray_points.push(at(t));
    }
    let mut rows: Vec<usize> = specs.iter().flat_map(RegionSpec::rows).collect();
    rows.sort_unstable();
    rows.dedup();
    for i in rows {
        let Ok(roots) = poly_roots(ext.gap_poly(i), 1e-10) else {
            continue;
        };
        for z in roots.values() {
            if member_at(z) {
                out.radius = out.radius.max((z - center).norm());
                out.isolated.push(z);
            }
        }
    }
    out
}

/// Window covering the union of `family` regions with a margin.
pub fn auto_window(ext: &PolyExtension, family: RegionFamily) -> Result<Window, GraphError> {
    let specs = all_specs(ext, family)?;
    let extent = union_extent(ext, &specs, Complex64::new(0.0, 0.0), RAY_COUNT, RAY_TOL);
    let pts: Vec<Complex64> = extent.points().copied().collect();
    let w = Window::bounding(&pts).unwrap_or(Window::square(Complex64::new(0.0, 0.0), 1.0));
    let pad = 0.05 * (w.re_max - w.re_min).max(w.im_max - w.im_min).max(1.0);
    Ok(Window::new(w.re_min - pad, w.re_max + pad, w.im_min - pad, w.im_max + pad))
}

/// Weak cycles give degenerate regions: just the zeros of the gap.
pub fn is_degenerate(spec: &RegionSpec) -> bool {
    matches!(spec, RegionSpec::Brualdi(c) if c.kind == CycleKind::Weak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::wfield::RationalFn;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_matrix_is_its_own_extension() {
        let g = fixtures::g0();
        let ext = poly_extension(&g);
        for i in 0..g.n() {
            assert_eq!(ext.row_factor(i).degree(), Some(0));
            for j in 0..g.n() {
                let want = g.get(i, j).as_constant().unwrap();
                assert!((ext.entry(i, j).eval(c(0.3, 0.0)) - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rational_row_expands() {
        let g = fixtures::g1();
        let ext = poly_extension(&g);
        let (num, den) = (g.get(0, 0).num().clone(), g.get(0, 0).den().clone());
        let l = ext.row_factor(0).clone();
        // Row factor is the product of the row's denominators.
        let prod = (0..3).fold(Poly::one(), |acc, j| &acc * g.get(0, j).den());
        assert!(l.max_coeff_diff(&prod) < 1e-12);
        for z in [c(0.7, 0.2), c(-1.3, 0.5), c(2.0, -1.0)] {
            let w = num.eval(z) / den.eval(z);
            let want = l.eval(z) * w - l.eval(z) * z + z;
            assert!((ext.entry(0, 0).eval(z) - want).norm() < 1e-9 * (1.0 + want.norm()));
            for j in 1..3 {
                let w = g.get(0, j).num().eval(z) / g.get(0, j).den().eval(z);
                assert!((ext.entry(0, j).eval(z) - l.eval(z) * w).norm() < 1e-9 * (1.0 + w.norm()));
            }
        }
    }

    #[test]
    fn spectrum_survives_extension() {
        let g = fixtures::g1();
        let ext = poly_extension(&g);
        let rows: Vec<Vec<RationalFn>> = (0..3)
            .map(|i| (0..3).map(|j| RationalFn::from_poly(ext.entry(i, j).clone())).collect())
            .collect();
        let bar = WeightedDigraph::from_matrix(rows).unwrap();
        let cp = crate::charpoly::char_poly(&bar);
        for z in [c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)] {
            let v = cp.num().eval(z) / cp.den().eval(z);
            assert!(v.norm() < 1e-8, "{z}: {v}");
        }
    }

    #[test]
    fn classical_disc() {
        let g = WeightedDigraph::from_real(&[vec![1.0, 0.5], vec![2.0, -1.0]]).unwrap();
        let ext = poly_extension(&g);
        let s = RegionSpec::Gershgorin(0);
        assert!(member(&ext, &s, c(1.5, 0.0)));
        assert!(member(&ext, &s, c(1.0, 0.5)));
        assert!(!member(&ext, &s, c(1.0, 0.51)));
        assert!(member(&ext, &RegionSpec::Gershgorin(1), c(-3.0, 0.0)));
    }

    #[test]
    fn far_point_is_outside_everything() {
        let ext = poly_extension(&fixtures::g0());
        for fam in [RegionFamily::Gershgorin, RegionFamily::Brauer, RegionFamily::Brualdi] {
            for s in all_specs(&ext, fam).unwrap() {
                assert!(!member(&ext, &s, c(10.0, 0.0)), "{s}");
            }
        }
    }

    #[test]
    fn spec_validation() {
        let ext = poly_extension(&fixtures::g0());
        assert!(ext.validate(&RegionSpec::Brauer(1, 1)).is_err());
        assert!(ext.validate(&RegionSpec::Gershgorin(5)).is_err());
        assert!(ext.validate(&RegionSpec::Brualdi(Cycle::strong(vec![0, 1]))).is_err());
        assert!(ext.validate(&RegionSpec::Brualdi(Cycle::strong(vec![0, 4]))).is_ok());
        let one = poly_extension(&WeightedDigraph::from_real(&[vec![1.0]]).unwrap());
        assert_eq!(one.validate(&RegionSpec::Brauer(0, 1)), Err(RegionError::BrauerTooSmall));
    }

    #[test]
    fn extent_of_disc() {
        let g = WeightedDigraph::from_real(&[vec![1.0, 2.0], vec![0.0, 0.0]]).unwrap();
        let ext = poly_extension(&g);
        let specs = all_specs(&ext, RegionFamily::Gershgorin).unwrap();
        let e = union_extent(&ext, &specs, c(0.0, 0.0), 64, 1e-6);
        assert!((e.radius - 3.0).abs() < 1e-5, "{}", e.radius);
        assert!(!e.truncated);
        assert!(e.isolated.iter().any(|z| z.norm() < 1e-9));
    }
}
