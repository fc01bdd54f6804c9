use fixedbitset::FixedBitSet;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{PolyExtension, RegionError, RegionSpec, Window};

/// Cell-center membership of each region on a rectangular grid.
///
/// Cell (ix, iy) sits at bit `iy * nx + ix`.
#[derive(Debug, Clone)]
pub struct RasterGrid {
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    pub specs: Vec<RegionSpec>,
    masks: Vec<FixedBitSet>,
    union: FixedBitSet,
}

pub fn raster(
    ext: &PolyExtension,
    specs: &[RegionSpec],
    window: Window,
    (nx, ny): (usize, usize),
) -> Result<RasterGrid, RegionError> {
    if nx < 2 || ny < 2 {
        return Err(RegionError::Resolution { nx, ny });
    }
    for s in specs {
        ext.validate(s)?;
    }
    let k = specs.len();
    let rows: Vec<FixedBitSet> = (0..ny)
        .into_par_iter()
        .map(|iy| {
            let mut bits = FixedBitSet::with_capacity(k * nx);
            for ix in 0..nx {
                let p = ext.eval_point(window.cell_center(ix, iy, nx, ny));
                for (s, spec) in specs.iter().enumerate() {
                    if p.satisfies(spec) {
                        bits.insert(s * nx + ix);
                    }
                }
            }
            bits
        })
        .collect();
    let mut masks = vec![FixedBitSet::with_capacity(nx * ny); k];
    let mut union = FixedBitSet::with_capacity(nx * ny);
    for (iy, bits) in rows.iter().enumerate() {
        for b in bits.ones() {
            let (s, ix) = (b / nx, b % nx);
            masks[s].insert(iy * nx + ix);
            union.insert(iy * nx + ix);
        }
    }
    Ok(RasterGrid { window, nx, ny, specs: specs.to_vec(), masks, union })
}

impl RasterGrid {
    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    pub fn center(&self, cell: usize) -> Complex64 {
        self.window.cell_center(cell % self.nx, cell / self.nx, self.nx, self.ny)
    }

    pub fn mask(&self, spec: usize) -> &FixedBitSet {
        &self.masks[spec]
    }

    pub fn union(&self) -> &FixedBitSet {
        &self.union
    }

    pub fn union_count(&self) -> usize {
        self.union.count_ones(..)
    }

    /// Cell containing `z`, if it lies in the window.
    pub fn cell_of(&self, z: Complex64) -> Option<usize> {
        if !self.window.contains(z) {
            return None;
        }
        let fx = (z.re - self.window.re_min) / (self.window.re_max - self.window.re_min);
        let fy = (z.im - self.window.im_min) / (self.window.im_max - self.window.im_min);
        let ix = ((fx * self.nx as f64) as usize).min(self.nx - 1);
        let iy = ((fy * self.ny as f64) as usize).min(self.ny - 1);
        Some(self.index(ix, iy))
    }

    /// Union cells of `self` missing from `other`'s union. Both grids must
    /// share window and resolution.
    pub fn cells_outside(&self, other: &RasterGrid) -> Vec<usize> {
        assert!(
            self.window == other.window && self.nx == other.nx && self.ny == other.ny,
            "rasters must share window and resolution"
        );
        self.union.difference(&other.union).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;
    use crate::regions::{all_specs, member, poly_extension, RegionFamily};

    #[test]
    fn matches_pointwise_membership() {
        let g = crate::fixtures::g1();
        let ext = poly_extension(&g);
        let specs = all_specs(&ext, RegionFamily::Brauer).unwrap();
        let w = Window::new(-3.0, 3.0, -2.0, 2.5);
        let r = raster(&ext, &specs, w, (37, 23)).unwrap();
        for cell in 0..r.cells() {
            let z = r.center(cell);
            let mut any = false;
            for (s, spec) in specs.iter().enumerate() {
                let m = member(&ext, spec, z);
                assert_eq!(r.mask(s).contains(cell), m);
                any |= m;
            }
            assert_eq!(r.union().contains(cell), any);
        }
    }

    #[test]
    fn diagonal_matrix_gives_isolated_cells() {
        let (a, b) = (Complex64::new(0.25, -0.25), Complex64::new(-0.75, 0.75));
        let zero = Complex64::new(0.0, 0.0);
        let g = WeightedDigraph::from_complex(&[vec![a, zero], vec![zero, b]]).unwrap();
        let ext = poly_extension(&g);
        let specs = all_specs(&ext, RegionFamily::Gershgorin).unwrap();
        let r = raster(&ext, &specs, Window::new(-1.0, 1.0, -1.0, 1.0), (4, 4)).unwrap();
        // Radius-zero discs only catch a cell whose center is the diagonal value.
        assert_eq!(r.union_count(), 2);
        assert!(r.union().contains(r.cell_of(a).unwrap()));
    }

    #[test]
    fn rejects_degenerate_resolution() {
        let ext = poly_extension(&crate::fixtures::g1());
        assert!(raster(&ext, &[], Window::new(0.0, 1.0, 0.0, 1.0), (1, 5)).is_err());
    }
}
