use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{FieldError, PiIndex, Poly, EVAL_TOL};

/// Element of the field of complex rational functions, `num / den`.
///
/// Always stored in lowest terms (up to the gcd tolerance) with a monic
/// denominator. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

/// Result of evaluating a rational function at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eval {
    Value(Complex64),
    Pole,
}

impl Eval {
    pub fn value(self) -> Option<Complex64> {
        match self {
            Eval::Value(v) => Some(v),
            Eval::Pole => None,
        }
    }
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// The rational function `λ`.
    pub fn lambda() -> Self {
        Self::from_poly(Poly::lambda())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn real(c: f64) -> Self {
        Self::constant(Complex64::new(c, 0.0))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn {
            num: p,
            den: Poly::one(),
        }
    }

    /// Reduces `num / den` to lowest terms with a monic denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    /// Convenience constructor from real coefficient slices (ascending degree).
    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self, FieldError> {
        Self::new(Poly::from_real(num), Poly::from_real(den))
    }

    /// Normalizes a pair already known to share no factor.
    fn coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let inv = den.leading().expect("denominator is nonzero").inv();
        RationalFn {
            num: num.scale(inv),
            den: den.monic(),
        }
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                // Both divisions are exact up to rounding.
                (
                    num.div_exact(&g).expect("gcd is nonzero"),
                    den.div_exact(&g).expect("gcd is nonzero"),
                )
            }
        };
        let lead = den.leading().expect("denominator is nonzero");
        let inv = lead.inv();
        RationalFn {
            num: num.scale(inv),
            den: den.monic(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg(num) − deg(den)`, or `NegInf` for zero.
    pub fn pi(&self) -> PiIndex {
        match (self.num.degree(), self.den.degree()) {
            (Some(p), Some(q)) => PiIndex::Finite(p as i64 - q as i64),
            _ => PiIndex::NegInf,
        }
    }

    /// True if the function has no λ-dependence.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value of a constant function.
    pub fn as_constant(&self) -> Option<Complex64> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.coeffs().first().copied().unwrap_or_default())
    }

    /// Whether this function is identically `λ` (as a function, not pointwise).
    pub fn is_identically_lambda(&self) -> bool {
        if self.den.degree() != Some(0) || self.num.degree() != Some(1) {
            return false;
        }
        let c = self.num.coeffs();
        let scale = 1.0 + c[1].norm();
        (c[1] - Complex64::new(1.0, 0.0)).norm() <= 1e-12 * scale && c[0].norm() <= 1e-12 * scale
    }

    /// Horner evaluation; reports a pole when `|den(z)|` falls under
    /// `1e−12 · (1 + |z|)^deg(den)`.
    pub fn eval(&self, z: Complex64) -> Eval {
        let d = self.den.eval(z);
        let deg = self.den.degree().unwrap_or(0) as i32;
        if d.norm() < EVAL_TOL * (1.0 + z.norm()).powi(deg) {
            return Eval::Pole;
        }
        Eval::Value(self.num.eval(z) / d)
    }

    /// Limit as `λ → ∞`, if finite.
    pub fn value_at_infinity(&self) -> Option<Complex64> {
        match self.pi() {
            PiIndex::NegInf => Some(Complex64::new(0.0, 0.0)),
            PiIndex::Finite(k) if k < 0 => Some(Complex64::new(0.0, 0.0)),
            PiIndex::Finite(0) => Some(self.num.leading()? / self.den.leading()?),
            PiIndex::Finite(_) => None,
        }
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<RationalFn, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let inv = RationalFn::coprime(rhs.den.clone(), rhs.num.clone());
        Ok(self * &inv)
    }

    pub fn inv(&self) -> Result<RationalFn, FieldError> {
        RationalFn::one().checked_div(self)
    }

    pub fn scale(&self, s: Complex64) -> RationalFn {
        if s == Complex64::new(0.0, 0.0) {
            return RationalFn::zero();
        }
        RationalFn {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    /// Largest coefficient distance between the canonical forms.
    pub fn max_coeff_diff(&self, other: &RationalFn) -> f64 {
        self.num
            .max_coeff_diff(&other.num)
            .max(self.den.max_coeff_diff(&other.den))
    }

    /// Equality of canonical forms up to a coefficient tolerance.
    pub fn approx_eq(&self, other: &RationalFn, tol: f64) -> bool {
        self.num.degree() == other.num.degree()
            && self.den.degree() == other.den.degree()
            && self.max_coeff_diff(other) <= tol
    }
}

impl Default for RationalFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<f64> for RationalFn {
    fn from(c: f64) -> Self {
        RationalFn::real(c)
    }
}

impl From<Complex64> for RationalFn {
    fn from(c: Complex64) -> Self {
        RationalFn::constant(c)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Only factors of gcd(q₁, q₂) can cancel, so the expensive gcd runs
        // on small operands.
        let g = if self.den == rhs.den {
            self.den.clone()
        } else {
            Poly::gcd(&self.den, &rhs.den)
        };
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFn::coprime(num, &self.den * &rhs.den);
        }
        let q1 = self.den.div_exact(&g).expect("gcd is nonzero");
        let q2 = rhs.den.div_exact(&g).expect("gcd is nonzero");
        let num = &(&self.num * &q2) + &(&rhs.num * &q1);
        if num.is_zero() {
            return RationalFn::zero();
        }
        let h = Poly::gcd(&num, &g);
        let (num, g) = if h.is_constant() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd is nonzero"), g.div_exact(&h).expect("gcd is nonzero"))
        };
        RationalFn::coprime(num, &(&q1 * &q2) * &g)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero();
        }
        let (p1, q2) = cancel(&self.num, &rhs.den);
        let (p2, q1) = cancel(&rhs.num, &self.den);
        RationalFn::coprime(&p1 * &p2, &q1 * &q2)
    }
}

/// Divides out `gcd(a, b)`.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = Poly::gcd(a, b);
    if g.is_constant() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).expect("gcd is nonzero"), b.div_exact(&g).expect("gcd is nonzero"))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
