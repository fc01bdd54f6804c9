use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::Poly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        best: Vec<Complex64>,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub max_iter: usize,
    /// Relative step size at which an approximation is frozen.
    pub step_tol: f64,
    /// Cluster radius relative to `1 + max |root|`.
    pub cluster_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            max_iter: 500,
            step_tol: 1e-12,
            cluster_tol: 1e-6,
        }
    }
}

/// Eigenvalues (or roots) with multiplicities.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpectrumList {
    entries: Vec<(Complex64, usize)>,
}

impl SpectrumList {
    pub fn new(mut entries: Vec<(Complex64, usize)>) -> Self {
        entries.retain(|e| e.1 > 0);
        entries.sort_by(|a, b| {
            a.0.re
                .total_cmp(&b.0.re)
                .then(a.0.im.total_cmp(&b.0.im))
        });
        SpectrumList { entries }
    }

    pub fn entries(&self) -> &[(Complex64, usize)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Every value repeated by its multiplicity.
    pub fn values(&self) -> Vec<Complex64> {
        self.entries
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect()
    }

    /// Largest modulus, 0 for an empty list.
    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|e| e.0.norm()).fold(0.0, f64::max)
    }

    /// Drops every entry within `tol` of one of `values`.
    pub fn without(&self, values: &[Complex64], tol: f64) -> SpectrumList {
        SpectrumList::new(
            self.entries
                .iter()
                .copied()
                .filter(|e| values.iter().all(|v| (e.0 - v).norm() > tol))
                .collect(),
        )
    }

    /// Multiset comparison: every value of `self` paired with a distinct value
    /// of `other` at distance at most `tol`.
    pub fn matches(&self, other: &[Complex64], tol: f64) -> bool {
        let mut pool: Vec<Option<Complex64>> = other.iter().copied().map(Some).collect();
        let mine = self.values();
        if mine.len() != pool.len() {
            return false;
        }
        for z in mine {
            let best = pool
                .iter()
                .enumerate()
                .filter_map(|(k, w)| w.map(|w| (k, (w - z).norm())))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((k, d)) if d <= tol => pool[k] = None,
                _ => return false,
            }
        }
        true
    }
}

impl fmt::Display for SpectrumList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (z, m)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{z:.6}")?;
            if *m > 1 {
                write!(f, " (x{m})")?;
            }
        }
        write!(f, "}}")
    }
}

/// All roots of `p` with multiplicity, default options.
///
/// `tol` bounds the accepted backward error `|p(r)| / ‖p‖` of each root
/// before clustering.
pub fn poly_roots(p: &Poly, tol: f64) -> Result<SpectrumList, RootError> {
    poly_roots_with(p, tol, RootOptions::default())
}

pub fn poly_roots_with(p: &Poly, tol: f64, opts: RootOptions) -> Result<SpectrumList, RootError> {
    let raw = raw_roots(p, tol, opts)?;
    let scale = 1.0 + raw.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let delta = opts.cluster_tol * scale;
    let clustered = cluster(&raw, opts.cluster_tol);
    Ok(SpectrumList::new(
        clustered
            .entries()
            .iter()
            .map(|&(z, m)| (polish(p, z, m, delta), m))
            .collect(),
    ))
}

/// Newton on the `(m−1)`-th derivative, where a root of multiplicity `m` is
/// simple. Steps that would leave the cluster are rejected.
fn polish(p: &Poly, z0: Complex64, m: usize, delta: f64) -> Complex64 {
    if z0 == Complex64::new(0.0, 0.0) {
        return z0;
    }
    let mut f = p.clone();
    for _ in 1..m {
        f = f.derivative();
    }
    let df = f.derivative();
    let mut z = z0;
    for _ in 0..4 {
        let step = f.eval(z) / df.eval(z);
        if !step.is_finite() {
            break;
        }
        let next = z - step;
        if (next - z0).norm() > delta {
            break;
        }
        z = next;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Unclustered roots, one per degree.
pub(crate) fn raw_roots(p: &Poly, tol: f64, opts: RootOptions) -> Result<Vec<Complex64>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let norm = p.norm_inf();
    let c = p.coeffs();
    // Roots at the origin are split off exactly.
    let zeros = c.iter().take_while(|z| z.norm() <= 1e-13 * norm).count();
    let q = Poly::new(c[zeros..].to_vec());
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    roots.extend(aberth(&q, tol, opts)?);
    Ok(roots)
}

fn aberth(p: &Poly, tol: f64, opts: RootOptions) -> Result<Vec<Complex64>, RootError> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    let c = p.coeffs();
    let lead = c[d];
    if d == 1 {
        return Ok(vec![-c[0] / lead]);
    }
    let dp = p.derivative();
    let radius = 1.0 + c[..d].iter().map(|a| (a / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect();
    let mut done = vec![false; d];
    let mut iterations = 0;
    while iterations < opts.max_iter && done.iter().any(|f| !f) {
        iterations += 1;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let zk = z[k];
            let pv = p.eval(zk);
            // Backward error at rounding level: nothing left to gain.
            if pv.norm() <= 8.0 * f64::EPSILON * p.eval_abs(zk.norm()) {
                done[k] = true;
                continue;
            }
            let ratio = pv / dp.eval(zk);
            let s: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| (zk - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                // Perturb off a critical point.
                z[k] = zk + Complex64::new(1e-8, 1e-8) * (1.0 + zk.norm());
                continue;
            }
            z[k] = zk - w;
            if w.norm() <= opts.step_tol * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
    }
    let norm = p.norm_inf();
    let ok = z.iter().all(|&r| p.eval(r).norm() <= tol * norm * (1.0 + r.norm()).powi(d as i32));
    if done.iter().all(|&f| f) || ok {
        Ok(z)
    } else {
        Err(RootError::NoConvergence {
            iterations,
            best: z,
        })
    }
}

/// Single-linkage clustering at radius `rel · (1 + max |z|)`; cluster means
/// become the reported values.
pub(crate) fn cluster(raw: &[Complex64], rel: f64) -> SpectrumList {
    let scale = 1.0 + raw.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let delta = rel * scale;
    let n = raw.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (raw[i] - raw[j]).norm() <= delta {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut label, i);
        if index[r] == usize::MAX {
            index[r] = groups.len();
            groups.push((Complex64::new(0.0, 0.0), 0));
        }
        let g = &mut groups[index[r]];
        g.0 += raw[i];
        g.1 += 1;
    }
    SpectrumList::new(
        groups
            .into_iter()
            .map(|(sum, m)| {
                let mut z = sum / m as f64;
                // Conjugate-pair means and real roots come out with rounding dust.
                if z.im.abs() <= 1e-14 * scale {
                    z.im = 0.0;
                }
                (z, m)
            })
            .collect(),
    )
}
