use num_complex::Complex64;

use crate::wfield::{poly_roots, Poly, RationalFn, RootError};

/// Points where a removed vertex's loop weight equals `λ` or is undefined.
///
/// The defining polynomials are kept alongside the numeric roots so that
/// exact consumers need not trust the root finder.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExceptionalSet {
    values: Vec<Complex64>,
    polys: Vec<Poly>,
}

/// Values closer than this (relative to `1 + |z|`) are the same point.
const DEDUP_TOL: f64 = 1e-6;

impl ExceptionalSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Contribution of one removed vertex with loop weight `w = p/q`: the
    /// roots of `q` and of `p − λq`.
    pub fn for_loop(w: &RationalFn) -> Result<Self, RootError> {
        let mut s = ExceptionalSet::new();
        let q = w.den().clone();
        let f = w.num() - &w.den().shift(1);
        for p in [q, f] {
            if p.is_constant() {
                continue;
            }
            let roots = poly_roots(&p, 1e-8)?;
            for (z, _) in roots.entries() {
                s.insert_value(*z);
            }
            s.polys.push(p);
        }
        Ok(s)
    }

    fn insert_value(&mut self, z: Complex64) {
        if !self.contains(z, DEDUP_TOL * (1.0 + z.norm())) {
            self.values.push(z);
        }
    }

    pub fn extend(&mut self, other: &ExceptionalSet) {
        for &z in &other.values {
            self.insert_value(z);
        }
        self.polys.extend(other.polys.iter().cloned());
    }

    /// Deduplicated values in first-seen order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// The polynomials whose roots make up the set, one or two per removed vertex.
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.values.iter().any(|v| (v - z).norm() <= tol)
    }

    /// Values sorted by real then imaginary part.
    pub fn sorted_values(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_loop_gives_origin() {
        let s = ExceptionalSet::for_loop(&RationalFn::zero()).unwrap();
        assert_eq!(s.values(), &[Complex64::new(0.0, 0.0)]);
    }

    #[test]
    fn pole_and_fixed_points() {
        // w = 1/λ: pole at 0, and 1 − λ² = 0 at ±1.
        let w = RationalFn::from_real(&[1.0], &[0.0, 1.0]).unwrap();
        let s = ExceptionalSet::for_loop(&w).unwrap();
        let v = s.sorted_values();
        assert_eq!(v.len(), 3);
        for (a, b) in v.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((a - Complex64::new(b, 0.0)).norm() < 1e-12);
        }
        assert_eq!(s.polys().len(), 2);
    }

    #[test]
    fn duplicates_merge() {
        let mut a = ExceptionalSet::for_loop(&RationalFn::zero()).unwrap();
        let b = ExceptionalSet::for_loop(&RationalFn::zero()).unwrap();
        a.extend(&b);
        assert_eq!(a.len(), 1);
        assert_eq!(a.polys().len(), 2);
    }
}
