//! Determinants over the rational-function field and characteristic
//! polynomials `det(M(λ) − λI)`.

use crate::graph::WeightedDigraph;
use crate::reduce::{reduce_over, ReduceError, StructuralSet};
use crate::wfield::{poly_roots, Poly, RationalFn, RootError, SpectrumList};

/// Largest size handled by subset cofactor expansion; beyond it, Bareiss.
const COFACTOR_MAX: usize = 8;

/// `det(M(G, λ) − λI)` in lowest terms.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    pub value: RationalFn,
}

impl CharPoly {
    pub fn num(&self) -> &Poly {
        self.value.num()
    }

    pub fn den(&self) -> &Poly {
        self.value.den()
    }
}

pub fn char_poly(g: &WeightedDigraph) -> CharPoly {
    let n = g.n();
    let lambda = RationalFn::lambda();
    let mut m: Vec<Vec<RationalFn>> = g.rows();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = &row[i] - &lambda;
    }
    let value = if n <= COFACTOR_MAX {
        det_cofactor(&m)
    } else {
        det_bareiss(m)
    };
    CharPoly { value }
}

/// Determinant of a square matrix over the field.
pub fn det(m: &[Vec<RationalFn>]) -> RationalFn {
    if m.len() <= COFACTOR_MAX {
        det_cofactor(m)
    } else {
        det_bareiss(m.to_vec())
    }
}

/// Laplace expansion along rows, memoized over column subsets.
///
/// `minor[mask]` is the determinant of the first `|mask|` rows restricted to
/// the columns in `mask`.
fn det_cofactor(m: &[Vec<RationalFn>]) -> RationalFn {
    let n = m.len();
    if n == 0 {
        return RationalFn::one();
    }
    let mut minor = vec![RationalFn::zero(); 1 << n];
    minor[0] = RationalFn::one();
    for mask in 1usize..1 << n {
        let r = mask.count_ones() as usize - 1;
        let mut acc = RationalFn::zero();
        for j in 0..n {
            if mask & (1 << j) == 0 || m[r][j].is_zero() {
                continue;
            }
            let rest = mask & !(1 << j);
            if minor[rest].is_zero() {
                continue;
            }
            let term = &m[r][j] * &minor[rest];
            // Column j sits at position (#columns of `rest` above j) from the right.
            if (rest >> j).count_ones() % 2 == 1 {
                acc = &acc - &term;
            } else {
                acc = &acc + &term;
            }
        }
        minor[mask] = acc;
    }
    minor[(1 << n) - 1].clone()
}

/// Fraction-free elimination on the row-cleared polynomial matrix. Pivots
/// maximize degree, then coefficient magnitude.
fn det_bareiss(a: Vec<Vec<RationalFn>>) -> RationalFn {
    let n = a.len();
    // Row i is multiplied through by the lcm of its denominators.
    let mut row_dens = Vec::with_capacity(n);
    let mut p: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for row in &a {
        let l = row.iter().fold(Poly::one(), |acc, w| Poly::lcm(&acc, w.den()));
        p.push(
            row.iter()
                .map(|w| w.num() * &l.div_exact(w.den()).expect("lcm is nonzero"))
                .collect(),
        );
        row_dens.push(l);
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n {
        let pivot = (k..n).filter(|&r| !p[r][k].is_zero()).max_by(|&x, &y| {
            let (dx, dy) = (p[x][k].degree(), p[y][k].degree());
            dx.cmp(&dy)
                .then(p[x][k].norm_inf().total_cmp(&p[y][k].norm_inf()))
                .then(y.cmp(&x))
        });
        let Some(r) = pivot else {
            return RationalFn::zero();
        };
        if r != k {
            p.swap(r, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&p[k][k] * &p[i][j]) - &(&p[i][k] * &p[k][j]);
                p[i][j] = num.div_exact(&prev).expect("previous pivot is nonzero");
            }
            p[i][k] = Poly::zero();
        }
        prev = p[k][k].clone();
    }
    let mut num = if sign { -&prev } else { prev };
    // Cancel against each row's denominator separately; the operands stay small.
    let mut den = Poly::one();
    for l in row_dens {
        let g = Poly::gcd(&num, &l);
        let l = if g.is_constant() {
            l
        } else {
            num = num.div_exact(&g).expect("gcd is nonzero");
            l.div_exact(&g).expect("gcd is nonzero")
        };
        den = &den * &l;
    }
    RationalFn::new(num, den).expect("denominator is a product of nonzero polynomials")
}

/// Eigenvalues with multiplicity: roots of the reduced numerator.
pub fn spectrum(g: &WeightedDigraph, tol: f64) -> Result<SpectrumList, RootError> {
    let cp = char_poly(g);
    if cp.num().is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    poly_roots(cp.num(), tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharpolyIdentityReport {
    pub holds: bool,
    /// Largest coefficient gap of the cross-multiplied sides, relative to
    /// their size.
    pub residual: f64,
}

pub const IDENTITY_TOL: f64 = 1e-8;

/// Checks `det(M(G) − λI) / ∏_{v removed} (ω(e_vv) − λ) = det(M(R_S(G)) − λI)`.
pub fn verify_charpoly_identity(g: &WeightedDigraph, s: &StructuralSet) -> Result<CharpolyIdentityReport, ReduceError> {
    let reduced = reduce_over(g, s)?;
    let lhs = char_poly(g).value;
    let rhs = char_poly(&reduced.graph).value;
    let lambda = RationalFn::lambda();
    let divisor = s
        .removed()
        .iter()
        .fold(RationalFn::one(), |acc, &v| &acc * &(g.get(v, v) - &lambda));
    // lhs.num · div.den / (lhs.den · div.num) against rhs.num / rhs.den
    let a = &(lhs.num() * divisor.den()) * rhs.den();
    let b = &(rhs.num() * lhs.den()) * divisor.num();
    let scale = a.norm_inf().max(b.norm_inf()).max(1.0);
    let residual = a.max_coeff_diff(&b) / scale;
    Ok(CharpolyIdentityReport {
        holds: residual < IDENTITY_TOL,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::validate_structural;
    use num_complex::Complex64;

    fn rf(num: &[f64], den: &[f64]) -> RationalFn {
        RationalFn::from_real(num, den).unwrap()
    }

    #[test]
    fn empty_and_scalar() {
        assert!(char_poly(&WeightedDigraph::empty(0)).value.approx_eq(&RationalFn::one(), 0.0));
        let g = WeightedDigraph::from_real(&[vec![3.0]]).unwrap();
        assert!(char_poly(&g).value.approx_eq(&rf(&[3.0, -1.0], &[1.0]), 0.0));
    }

    #[test]
    fn cofactor_agrees_with_bareiss() {
        let m: Vec<Vec<RationalFn>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| match (i * 7 + j * 3) % 5 {
                        0 => RationalFn::zero(),
                        1 => rf(&[1.0], &[0.0, 1.0]),
                        2 => rf(&[1.0, 2.0], &[1.0, 0.0, 1.0]),
                        3 => RationalFn::real(-2.0),
                        _ => rf(&[0.5, 1.0], &[-1.0, 1.0]),
                    })
                    .collect()
            })
            .collect();
        let a = det_cofactor(&m);
        let b = det_bareiss(m);
        let scale = a.num().norm_inf().max(1.0);
        assert!(a.approx_eq(&b, 1e-10 * scale), "{a} vs {b}: {}", a.max_coeff_diff(&b));
    }

    #[test]
    fn bareiss_used_for_large_graphs() {
        // Directed 10-cycle: det(M − λI) = λ¹⁰ − 1.
        let mut g = WeightedDigraph::empty(10);
        for i in 0..10 {
            g.set(i, (i + 1) % 10, RationalFn::one());
        }
        let mut c = vec![0.0; 11];
        c[0] = -1.0;
        c[10] = 1.0;
        assert!(char_poly(&g).value.approx_eq(&rf(&c, &[1.0]), 1e-12));
        let s = spectrum(&g, 1e-10).unwrap();
        assert_eq!(s.total(), 10);
        assert!(s.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-10));
    }

    #[test]
    fn singular_pivot_column() {
        let m = vec![vec![RationalFn::zero(); 9]; 9];
        assert!(det_bareiss(m).is_zero());
    }

    #[test]
    fn charpoly_identity_on_loopless_removal() {
        let g = WeightedDigraph::from_real(&[vec![0.0, 1.0, 1.0], vec![1.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]]).unwrap();
        let s = validate_structural(&g, &[0, 1]).unwrap();
        let r = verify_charpoly_identity(&g, &s).unwrap();
        assert!(r.holds, "residual {}", r.residual);
    }

    #[test]
    fn spectrum_of_zero_graph() {
        let s = spectrum(&WeightedDigraph::empty(1), 1e-10).unwrap();
        assert_eq!(s.entries(), &[(Complex64::new(0.0, 0.0), 1)]);
    }
}
