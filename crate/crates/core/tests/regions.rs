mod common;

use isospectral::charpoly::spectrum;
use isospectral::fixtures;
use isospectral::graph::{cycle_adjacency, WeightedDigraph};
use isospectral::regions::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAMILIES: [RegionFamily; 3] = [RegionFamily::Gershgorin, RegionFamily::Brauer, RegionFamily::Brualdi];

fn rasters(g: &WeightedDigraph, res: usize) -> Vec<RasterGrid> {
    let ext = poly_extension(g);
    let w = auto_window(&ext, RegionFamily::Gershgorin).unwrap();
    FAMILIES
        .iter()
        .map(|&f| raster(&ext, &all_specs(&ext, f).unwrap(), w, (res, res)).unwrap())
        .collect()
}

#[test]
fn families_nest_on_every_fixture() {
    for (name, g) in fixtures::all() {
        let r = rasters(&g, 200);
        assert!(r[1].cells_outside(&r[0]).is_empty(), "{name}: brauer escapes gershgorin");
        assert!(r[2].cells_outside(&r[1]).is_empty(), "{name}: brualdi escapes brauer");
    }
}

#[test]
fn eigenvalues_lie_in_every_union() {
    for (name, g) in fixtures::all() {
        let ext = poly_extension(&g);
        for z in spectrum(&g, 1e-10).unwrap().values() {
            for f in FAMILIES {
                let specs = all_specs(&ext, f).unwrap();
                if specs.is_empty() {
                    continue;
                }
                assert!(member_union(&ext, &specs, z), "{name}: {z} outside {f}");
            }
        }
    }
}

#[test]
fn example_chain_improves_gershgorin_and_brauer() {
    for f in [RegionFamily::Gershgorin, RegionFamily::Brauer] {
        let a = verify_improvement(&fixtures::g0(), &[0, 1, 2], f, (200, 200)).unwrap();
        let b = verify_improvement(&fixtures::g1(), &[0, 1], f, (200, 200)).unwrap();
        assert!(a.preconditions.is_empty() && b.preconditions.is_empty());
        assert!(a.holds() && b.holds(), "{f}");
    }
}

#[test]
fn brualdi_can_grow_or_shrink_under_reduction() {
    let h = fixtures::h_digraph();
    let s = verify_improvement(&h, &[1, 2, 3], RegionFamily::Brualdi, (200, 200)).unwrap();
    assert!(s.preconditions.contains(&Precondition::UnsafeRemoval(0)));
    assert!(!s.holds());
    let adj = cycle_adjacency(&h, 3).unwrap();
    assert!(adj.adjacent.is_empty() && adj.s_cycles == adj.c_cycles);
    let t = verify_improvement(&h, &[0, 1, 2], RegionFamily::Brualdi, (200, 200)).unwrap();
    assert!(t.preconditions.is_empty());
    assert!(t.holds());
    assert!(t.reduced_cells < t.original_cells);
    let j = verify_improvement(&fixtures::j_digraph(), &[1, 2, 3], RegionFamily::Brualdi, (200, 200)).unwrap();
    assert!(!j.holds());
}

#[test]
fn random_reductions_never_grow_gershgorin_or_brauer() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..12 {
        let n = rng.gen_range(2..=5);
        let g = common::random_pi_graph(&mut rng, n, trial % 2 == 1);
        let keep = common::random_keep(&mut rng, n);
        let Ok(r) = verify_improvement(&g, &keep, RegionFamily::Gershgorin, (100, 100)) else {
            continue;
        };
        assert!(r.holds(), "trial {trial}: {} cells\n{g}", r.violations.len());
        if keep.len() >= 2 {
            let r = verify_improvement(&g, &keep, RegionFamily::Brauer, (100, 100)).unwrap();
            assert!(r.holds(), "trial {trial} brauer");
        }
    }
}

#[test]
fn exposed_boundary_is_mostly_cut_away() {
    let r = boundary_strictness(&fixtures::g0(), &[0, 1, 2, 3], 200).unwrap();
    assert_eq!(r.vertices.len(), 1);
    assert_eq!(r.vertices[0].samples.len(), 200);
    assert!(r.excluded_fraction() >= 0.95);
}

#[test]
fn boundary_report_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = common::random_constant_graph(&mut rng, 4);
    let a = boundary_strictness(&g, &[0, 1], 200).unwrap();
    let b = boundary_strictness(&g, &[0, 1], 200).unwrap();
    for (x, y) in a.vertices.iter().zip(&b.vertices) {
        assert_eq!(x.samples, y.samples);
        assert_eq!(x.hits, y.hits);
    }
}

/// Textbook regions of a constant matrix, evaluated directly.
fn classical(a: &[Vec<Complex64>], z: Complex64, f: RegionFamily, eps: &dyn Fn(usize) -> f64) -> bool {
    let n = a.len();
    let r: Vec<f64> = (0..n).map(|i| (0..n).filter(|&j| j != i).map(|j| a[i][j].norm()).sum()).collect();
    let d: Vec<f64> = (0..n).map(|i| ((z - a[i][i]).norm() - eps(i)).max(0.0)).collect();
    match f {
        RegionFamily::Gershgorin => (0..n).any(|i| d[i] <= r[i]),
        RegionFamily::Brauer => (0..n).any(|i| (i + 1..n).any(|j| d[i] * d[j] <= r[i] * r[j])),
        RegionFamily::Brualdi => unreachable!(),
    }
}

#[test]
fn constant_matrices_match_textbook_discs_and_ovals() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let n = rng.gen_range(2..=5);
        let a: Vec<Vec<Complex64>> = (0..n)
            .map(|_| (0..n).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect())
            .collect();
        let g = WeightedDigraph::from_complex(&a).unwrap();
        let ext = poly_extension(&g);
        for _ in 0..500 {
            let z = Complex64::new(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
            let eps = |i: usize| ext.slack(i, z);
            for f in [RegionFamily::Gershgorin, RegionFamily::Brauer] {
                let specs = all_specs(&ext, f).unwrap();
                assert_eq!(member_union(&ext, &specs, z), classical(&a, z, f, &eps));
            }
        }
    }
}
