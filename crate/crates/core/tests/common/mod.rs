#![allow(dead_code)]

use isospectral::graph::WeightedDigraph;
use isospectral::reduce::{validate_structural, ReduceError, StructuralSet};
use isospectral::wfield::{Poly, RationalFn};
use rand::seq::SliceRandom;
use rand::Rng;

/// Half-integer in [-k, k], which keeps spectra well conditioned.
fn half(rng: &mut impl Rng, k: i32) -> f64 {
    rng.gen_range(-2 * k..=2 * k) as f64 / 2.0
}

fn nonzero_half(rng: &mut impl Rng, k: i32) -> f64 {
    loop {
        let x = half(rng, k);
        if x != 0.0 {
            return x;
        }
    }
}

/// Random weight with π ≤ 0: a constant, c/(λ − a) or (bλ + c)/(λ − a).
pub fn random_weight(rng: &mut impl Rng, rational: bool) -> RationalFn {
    if !rational || rng.gen_bool(0.6) {
        return RationalFn::real(nonzero_half(rng, 2));
    }
    let a = half(rng, 2);
    let den = Poly::from_real(&[-a, 1.0]);
    let num = if rng.gen_bool(0.5) {
        Poly::from_real(&[nonzero_half(rng, 2)])
    } else {
        Poly::from_real(&[half(rng, 2), nonzero_half(rng, 1)])
    };
    RationalFn::new(num, den).expect("nonzero denominator")
}

/// Random graph in 𝔾_π on `n` vertices.
pub fn random_pi_graph(rng: &mut impl Rng, n: usize, rational: bool) -> WeightedDigraph {
    let mut g = WeightedDigraph::empty(n);
    for i in 0..n {
        for j in 0..n {
            let p = if i == j { 0.3 } else { 0.45 };
            if rng.gen_bool(p) {
                g.set(i, j, random_weight(rng, rational));
            }
        }
    }
    g
}

pub fn random_constant_graph(rng: &mut impl Rng, n: usize) -> WeightedDigraph {
    random_pi_graph(rng, n, false)
}

/// Random nonempty keep set grown until it is structural.
pub fn random_structural(rng: &mut impl Rng, g: &WeightedDigraph) -> StructuralSet {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let size = rng.gen_range(1..=n);
    let mut keep: Vec<usize> = order[..size].to_vec();
    loop {
        match validate_structural(g, &keep) {
            Ok(s) => return s,
            Err(ReduceError::CycleInComplement { cycle }) => keep.push(cycle[0]),
            Err(ReduceError::DiagonalIsLambda { vertex }) => keep.push(vertex),
            Err(e) => panic!("unexpected: {e}"),
        }
    }
}

/// Random proper nonempty keep set, not necessarily structural.
pub fn random_keep(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let size = rng.gen_range(1..n.max(2));
    let mut keep = order[..size.min(n)].to_vec();
    keep.sort_unstable();
    keep
}
