use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::FieldError;

/// Relative threshold below which leading coefficients are treated as zero.
pub const TRIM_TOL: f64 = 1e-12;

/// Polynomial in one complex variable with coefficients in ascending degree.
///
/// The zero polynomial is the empty coefficient list. Every other polynomial
/// has a nonzero leading coefficient; constructors trim anything at or below
/// `TRIM_TOL` times the largest coefficient modulus.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

fn max_modulus(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Complex64::new(1.0, 0.0))
    }

    /// The polynomial `λ`.
    pub fn lambda() -> Self {
        Poly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// Builds a polynomial from ascending coefficients, trimming relative to
    /// the largest coefficient of the input.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let scale = max_modulus(&coeffs);
        Self::trimmed(coeffs, scale)
    }

    /// Real coefficients in ascending degree.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Poly::one(), |acc, &r| {
            &acc * &Poly::new(vec![-r, Complex64::new(1.0, 0.0)])
        })
    }

    /// Trims leading coefficients whose modulus is at most `TRIM_TOL * scale`,
    /// and zeroes a low-order run of such coefficients so that factors of
    /// `λ^k` stay exact.
    fn trimmed(mut coeffs: Vec<Complex64>, scale: f64) -> Self {
        let cut = TRIM_TOL * scale;
        while let Some(last) = coeffs.last() {
            if last.norm() <= cut {
                coeffs.pop();
            } else {
                break;
            }
        }
        for c in coeffs.iter_mut() {
            if c.norm() > cut {
                break;
            }
            *c = Complex64::new(0.0, 0.0);
        }
        Poly { coeffs }
    }

    /// Multiplicity of the root at the origin.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.norm() == 0.0).count()
    }

    /// Divides by `λ^k`, dropping the `k` lowest coefficients.
    pub fn unshift(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).copied().collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn norm_inf(&self) -> f64 {
        max_modulus(&self.coeffs)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ |cᵢ| |z|ⁱ`, the natural scale for rounding error in `eval`.
    pub fn eval_abs(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => {
                let inv = lead.inv();
                let mut coeffs: Vec<Complex64> = self.coeffs.iter().map(|&c| c * inv).collect();
                if let Some(last) = coeffs.last_mut() {
                    *last = Complex64::new(1.0, 0.0);
                }
                Poly { coeffs }
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Multiplies by `λ^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Polynomial long division. Returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), FieldError> {
        let dd = divisor.degree().ok_or(FieldError::DivisionByZeroPoly)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let scale = self.norm_inf();
        let lead_inv = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::new(0.0, 0.0); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] * lead_inv;
            quot[k] = q;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= q * d;
            }
            rem[k + dd] = Complex64::new(0.0, 0.0);
        }
        rem.truncate(dd);
        let quot = Poly::new(quot);
        let rscale = scale.max(quot.norm_inf() * divisor.norm_inf());
        Ok((quot, Poly::trimmed(rem, rscale)))
    }

    /// Euclidean greatest common divisor with a relative tolerance.
    ///
    /// Every nonzero member of the remainder sequence is a candidate; the
    /// highest-degree candidate that divides both inputs to within `tol`
    /// (relative to the size of the division) wins. The result is monic.
    /// `gcd(0, 0)` is reported as the zero polynomial.
    pub fn gcd_with_tol(a: &Poly, b: &Poly, tol: f64) -> Poly {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Poly::zero(),
            (true, false) => return b.monic(),
            (false, true) => return a.monic(),
            _ => {}
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        // Common powers of λ come off exactly.
        let k = a.low_order().min(b.low_order());
        if k > 0 {
            return Poly::gcd_with_tol(&a.unshift(k), &b.unshift(k), tol).shift(k);
        }
        let (mut x, mut y) = if a.degree() >= b.degree() {
            (a.monic(), b.monic())
        } else {
            (b.monic(), a.monic())
        };
        let mut candidates = Vec::new();
        loop {
            candidates.push(y.clone());
            if y.is_constant() {
                break;
            }
            let (_, r) = match x.divrem(&y) {
                Ok(qr) => qr,
                Err(_) => break,
            };
            if r.is_zero() {
                break;
            }
            x = y;
            y = r.monic();
        }
        for g in candidates {
            if g.is_constant() {
                break;
            }
            if divides(&g, a, tol) && divides(&g, b, tol) {
                return g;
            }
        }
        Poly::one()
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        Poly::gcd_with_tol(a, b, super::GCD_TOL)
    }

    /// Monic least common multiple.
    pub fn lcm(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(a, b);
        (&a.div_exact(&g).expect("gcd is nonzero") * b).monic()
    }

    /// Exact-shape division that discards a (numerically negligible) remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly, FieldError> {
        Ok(self.divrem(divisor)?.0)
    }

    /// Coefficient-wise distance, padding the shorter polynomial with zeros.
    pub fn max_coeff_diff(&self, other: &Poly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(zero);
                let b = other.coeffs.get(k).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Whether `g` divides `p` with a remainder small relative to the division.
fn divides(g: &Poly, p: &Poly, tol: f64) -> bool {
    match p.divrem(g) {
        Ok((q, r)) => {
            let scale = p.norm_inf().max(q.norm_inf() * g.norm_inf());
            r.norm_inf() <= tol * scale
        }
        Err(_) => false,
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        let coeffs: Vec<Complex64> = (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(zero) + rhs.coeffs.get(k).copied().unwrap_or(zero)
            })
            .collect();
        Poly::trimmed(coeffs, self.norm_inf().max(rhs.norm_inf()))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let scale = self.norm_inf() * rhs.norm_inf();
        Poly::trimmed(out, scale)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("({}{:+}i)", c.re, c.im)
            };
            match k {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}λ")?,
                _ => write!(f, "{coef}λ^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn add_cancels_constants() {
        let a = Poly::from_real(&[1.0, 1.0]);
        let b = Poly::from_real(&[-1.0, 1.0]);
        assert_eq!((&a + &b).coeffs(), &[c(0.0), c(2.0)]);
    }

    #[test]
    fn difference_of_squares() {
        let a = Poly::from_real(&[1.0, 1.0]);
        let b = Poly::from_real(&[-1.0, 1.0]);
        assert_eq!((&a * &b), Poly::from_real(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn leading_cancellation_trims_to_lower_degree() {
        let a = Poly::from_real(&[1.0, 2.0, 3.0]);
        let b = Poly::from_real(&[0.0, 0.0, 3.0]);
        assert_eq!((&a - &b).degree(), Some(1));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn long_division_recombines() {
        // -λ⁵ + 2λ³ + 2λ² + 3λ + 2 divided by λ².
        let p = Poly::from_real(&[2.0, 3.0, 2.0, 2.0, 0.0, -1.0]);
        let d = Poly::from_real(&[0.0, 0.0, 1.0]);
        let (q, r) = p.divrem(&d).unwrap();
        // Oracle: q·d + r reproduces p and deg r < deg d.
        assert!(r.degree().map_or(true, |k| k < 2));
        assert!((&(&q * &d) + &r).max_coeff_diff(&p) < 1e-14);
        assert_eq!(q, Poly::from_real(&[2.0, 2.0, 0.0, -1.0]));
        assert_eq!(r, Poly::from_real(&[2.0, 3.0]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let p = Poly::from_real(&[1.0]);
        assert!(matches!(p.divrem(&Poly::zero()), Err(FieldError::DivisionByZeroPoly)));
    }

    #[test]
    fn gcd_examples() {
        let g = Poly::gcd(&Poly::from_real(&[-1.0, 0.0, 1.0]), &Poly::from_real(&[-1.0, 1.0]));
        assert!(g.max_coeff_diff(&Poly::from_real(&[-1.0, 1.0])) < 1e-12);

        let g = Poly::gcd(&Poly::from_real(&[1.0, 0.0, 1.0]), &Poly::from_real(&[2.0, 1.0]));
        assert_eq!(g, Poly::one());
    }

    #[test]
    fn gcd_matches_root_intersection() {
        // 2λ³ − 4λ² = 2λ²(λ − 2) and λ² − 4λ + 4 = (λ − 2)².
        let a = Poly::from_real(&[0.0, 0.0, -4.0, 2.0]);
        let b = Poly::from_real(&[4.0, -4.0, 1.0]);
        // Oracle: intersect the root multisets {0, 0, 2} and {2, 2}.
        let ra = [0.0, 0.0, 2.0];
        let mut rb = vec![2.0, 2.0];
        let mut common = Vec::new();
        for r in ra {
            if let Some(pos) = rb.iter().position(|&x: &f64| (x - r).abs() < 1e-9) {
                common.push(c(r));
                rb.remove(pos);
            }
        }
        let expected = Poly::from_roots(&common);
        let g = Poly::gcd(&a, &b);
        assert!(g.max_coeff_diff(&expected) < 1e-12, "got {g}");
    }

    #[test]
    fn gcd_of_complex_factors() {
        let i = Complex64::new(0.0, 1.0);
        let a = Poly::from_roots(&[i, -i, c(3.0)]);
        let b = Poly::from_roots(&[i, c(-2.0)]);
        let g = Poly::gcd(&a, &b);
        assert!(g.max_coeff_diff(&Poly::from_roots(&[i])) < 1e-12, "got {g}");
    }

    #[test]
    fn eval_and_derivative() {
        let p = Poly::from_real(&[1.0, -3.0, 0.0, 2.0]);
        assert_eq!(p.eval(c(2.0)), c(11.0));
        assert_eq!(p.derivative(), Poly::from_real(&[-3.0, 0.0, 6.0]));
    }
}
