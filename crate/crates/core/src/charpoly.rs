//! The characteristic polynomial `Phi_n(p, q, x)` of the sequence of n-th
//! powers `u_r^n`.
//!
//! `Phi_n` is defined as the root product `prod_{j=0}^{n} (x - sigma^j tau^{n-j})`
//! (degree `n + 1`). The closed coefficient formula in terms of generalized
//! binomials is kept as a separate construction and checked against it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::binomials::generalized_binomial;
use crate::error::{Error, Result};
use crate::numeric::{is_rational_square, squarefree_decompose};
use crate::quadfield::{make_roots, QuadContext, QuadExt};
use crate::sequences::{fast_pair, RecurrenceParams};

/// Dense polynomial over Q, ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RationalPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_quad(&self, x: &QuadExt) -> Result<QuadExt> {
        let ctx = x.context();
        let mut acc = QuadExt::zero(ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(&QuadExt::from_rational(c.clone(), ctx))?;
        }
        Ok(acc)
    }

    /// `p(x) -> p(-x)`.
    pub fn compose_negate(&self) -> Self {
        RationalPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroInput("polynomial division"))?;
        let lead_inv = divisor.coeffs[dd].recip();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }
}

impl Add<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = i == 0 || !mag.is_one();
            match (show_coeff, i) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}*x")?,
                (true, _) => write!(f, "{mag}*x^{i}")?,
                (false, 1) => write!(f, "x")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial with coefficients in a single quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    ctx: QuadContext,
    coeffs: Vec<QuadExt>,
}

impl QuadPoly {
    pub fn one(ctx: &QuadContext) -> Self {
        QuadPoly {
            ctx: ctx.clone(),
            coeffs: vec![QuadExt::one(ctx)],
        }
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    /// Multiply in place by `(x - root)`.
    pub fn mul_linear(&mut self, root: &QuadExt) -> Result<()> {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(QuadExt::zero(&self.ctx));
        out.extend(self.coeffs.iter().cloned());
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].try_sub(&c.try_mul(root)?)?;
        }
        self.coeffs = out;
        Ok(())
    }

    /// `Some` when every coefficient is rational.
    pub fn to_rational(&self) -> Option<RationalPoly> {
        self.coeffs
            .iter()
            .map(QuadExt::is_rational)
            .collect::<Option<Vec<_>>>()
            .map(RationalPoly::new)
    }
}

/// `sigma^j tau^{n-j}` for `j = 0..=n`.
pub fn phi_roots(params: &RecurrenceParams, n: usize) -> Result<Vec<QuadExt>> {
    let (sigma, tau) = make_roots(params)?;
    let ctx = sigma.context().clone();
    let mut sp = vec![QuadExt::one(&ctx)];
    let mut tp = vec![QuadExt::one(&ctx)];
    for i in 1..=n {
        sp.push(&sp[i - 1] * &sigma);
        tp.push(&tp[i - 1] * &tau);
    }
    Ok((0..=n).map(|j| &sp[j] * &tp[n - j]).collect())
}

/// `Phi_n` expanded from its roots.
pub fn phi_product(params: &RecurrenceParams, n: usize) -> Result<RationalPoly> {
    let roots = phi_roots(params, n)?;
    let mut poly = QuadPoly::one(roots[0].context());
    for r in &roots {
        poly.mul_linear(r)?;
    }
    poly.to_rational().ok_or(Error::Irrational("root product"))
}

/// `Phi_n` from the coefficient formula: the coefficient of `x^{n+1-i}` is
/// `(-1)^i q^{i(i-1)/2} ((n+1)|i)_u`.
pub fn phi_coeff_formula(params: &RecurrenceParams, n: usize) -> Result<RationalPoly> {
    let top = n + 1;
    let mut coeffs = vec![BigRational::zero(); top + 1];
    for i in 0..=top {
        let mut c = num_traits::pow(params.q().clone(), i * (i.saturating_sub(1)) / 2)
            * generalized_binomial(params, top, i)?;
        if i % 2 == 1 {
            c = -c;
        }
        coeffs[top - i] = c;
    }
    Ok(RationalPoly::new(coeffs))
}

/// `f_n(x) = x^2 - w_n x + q^n`, whose roots are `sigma^n` and `tau^n`.
pub fn quadratic_factor(params: &RecurrenceParams, n: usize) -> Result<RationalPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("quadratic factor needs n >= 1".into()));
    }
    let (_, w) = fast_pair(params, n);
    let qn = num_traits::pow(params.q().clone(), n);
    Ok(RationalPoly::new(vec![qn, -w, BigRational::one()]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibonacciFactorization {
    pub quadratic: RationalPoly,
    pub tail: RationalPoly,
    pub sign: i8,
}

fn fibonacci_parts(n: usize) -> Result<(RationalPoly, RationalPoly, RationalPoly)> {
    if n < 2 {
        return Err(Error::OutOfRange("Fibonacci factorization needs n >= 2".into()));
    }
    let fib = RecurrenceParams::fibonacci();
    let phi = phi_product(&fib, n)?;
    let (_, lucas) = fast_pair(&fib, n);
    let parity = if n.is_multiple_of(2) { 1 } else { -1 };
    let quadratic = RationalPoly::new(vec![
        BigRational::from_integer(parity.into()),
        -lucas,
        BigRational::one(),
    ]);
    let tail = phi_product(&fib, n - 2)?.compose_negate();
    Ok((phi, quadratic, tail))
}

/// `Phi_n(1, -1, x) = sign * (x^2 - L_n x + (-1)^n) * Phi_{n-2}(1, -1, -x)`,
/// with the sign found by comparing both candidates.
pub fn fibonacci_factorization(n: usize) -> Result<FibonacciFactorization> {
    let (phi, quadratic, tail) = fibonacci_parts(n)?;
    let prod = &quadratic * &tail;
    let sign = if phi == prod {
        1
    } else if phi == -&prod {
        -1
    } else {
        return Err(Error::NoValidSign(n));
    };
    Ok(FibonacciFactorization { quadratic, tail, sign })
}

/// Whether the Fibonacci factorization is exact with the given prefactor.
pub fn fibonacci_factorization_holds(n: usize, sign: i8) -> Result<bool> {
    let (phi, quadratic, tail) = fibonacci_parts(n)?;
    let prod = &quadratic * &tail;
    Ok(match sign {
        1 => phi == prod,
        -1 => phi == -&prod,
        _ => false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GaloisGroup {
    Z2,
    Trivial,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisClassification {
    pub group: GaloisGroup,
    /// Radicand of the splitting field; 1 unless the group is `Z2`.
    pub d: BigInt,
}

pub fn classify_galois(params: &RecurrenceParams) -> Result<GaloisClassification> {
    let disc = params.discriminant();
    if disc.is_zero() {
        return Ok(GaloisClassification {
            group: GaloisGroup::Degenerate,
            d: BigInt::one(),
        });
    }
    if is_rational_square(&disc).is_some() {
        return Ok(GaloisClassification {
            group: GaloisGroup::Trivial,
            d: BigInt::one(),
        });
    }
    Ok(GaloisClassification {
        group: GaloisGroup::Z2,
        d: squarefree_decompose(&disc)?.d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn rp(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64(c)
    }

    #[test]
    fn polynomial_plumbing() {
        assert_eq!(&rp(&[1, -3, 1]) * &rp(&[1, 1]), rp(&[1, -2, -2, 1]));
        assert_eq!(rp(&[-1, -1, 1]).compose_negate(), rp(&[-1, 1, 1]));
        assert_eq!(rp(&[-1, 0, 1]).div_exact(&rp(&[-1, 1])).unwrap(), rp(&[1, 1]));
        assert_eq!(rp(&[1, 0, 1]).div_exact(&rp(&[-1, 1])), Err(Error::InexactDivision));
        let (q, r) = rp(&[1, 0, 1]).div_rem(&rp(&[0, 2])).unwrap();
        assert_eq!(q, RationalPoly::new(vec![int(0), ratio(1, 2)]));
        assert_eq!(r, rp(&[1]));
        assert_eq!(rp(&[1, -2, -2, 1]).to_string(), "x^3 - 2*x^2 - 2*x + 1");
        assert_eq!(rp(&[0, 1]).to_string(), "x");
    }

    #[test]
    fn phi_examples() {
        let fib = RecurrenceParams::fibonacci();
        assert_eq!(phi_product(&fib, 2).unwrap(), rp(&[1, -2, -2, 1]));
        assert_eq!(phi_coeff_formula(&fib, 2).unwrap(), rp(&[1, -2, -2, 1]));
        assert_eq!(phi_product(&fib, 1).unwrap(), rp(&[-1, -1, 1]));
        for (p, q) in [(1, -1), (3, 2), (2, 1), (0, 0), (-4, 7)] {
            let params = RecurrenceParams::from_integers(p, q);
            assert_eq!(phi_product(&params, 0).unwrap(), rp(&[-1, 1]));
            assert_eq!(phi_coeff_formula(&params, 0).unwrap(), rp(&[-1, 1]));
            assert_eq!(phi_product(&params, 1).unwrap(), rp(&[q, -p, 1]));
            assert_eq!(phi_coeff_formula(&params, 1).unwrap(), rp(&[q, -p, 1]));
        }
    }

    #[test]
    fn quadratic_factor_examples() {
        let fib = RecurrenceParams::fibonacci();
        let f2 = quadratic_factor(&fib, 2).unwrap();
        assert_eq!(f2, rp(&[1, -3, 1]));
        assert_eq!(phi_product(&fib, 2).unwrap().div_exact(&f2).unwrap(), rp(&[1, 1]));
        assert_eq!(quadratic_factor(&fib, 4).unwrap(), rp(&[1, -7, 1]));
        let params = RecurrenceParams::from_integers(5, 3);
        assert_eq!(quadratic_factor(&params, 1).unwrap(), phi_product(&params, 1).unwrap());
        assert!(quadratic_factor(&params, 0).is_err());
    }

    #[test]
    fn fibonacci_factorization_examples() {
        let f = fibonacci_factorization(2).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.tail, rp(&[-1, -1]));
        let f = fibonacci_factorization(3).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.quadratic, rp(&[-1, -4, 1]));
        assert_eq!(f.tail, rp(&[-1, 1, 1]));
        assert!(fibonacci_factorization(1).is_err());
        assert!(fibonacci_factorization_holds(2, -1).unwrap());
        assert!(!fibonacci_factorization_holds(2, 1).unwrap());
    }

    #[test]
    fn galois_examples() {
        let c = classify_galois(&RecurrenceParams::fibonacci()).unwrap();
        assert_eq!((c.group, c.d), (GaloisGroup::Z2, BigInt::from(5)));
        let c = classify_galois(&RecurrenceParams::from_integers(3, 2)).unwrap();
        assert_eq!((c.group, c.d), (GaloisGroup::Trivial, BigInt::one()));
        let c = classify_galois(&RecurrenceParams::from_integers(2, 1)).unwrap();
        assert_eq!(c.group, GaloisGroup::Degenerate);
        let c = classify_galois(&RecurrenceParams::from_integers(1, 1)).unwrap();
        assert_eq!((c.group, c.d), (GaloisGroup::Z2, BigInt::from(-3)));
        let c = classify_galois(&RecurrenceParams::new(ratio(1, 2), ratio(-11, 4))).unwrap();
        assert_eq!((c.group, c.d), (GaloisGroup::Z2, BigInt::from(5)));
    }

    #[test]
    fn roots_annihilate_phi() {
        for (p, q) in [(1, -1), (2, 3), (1, 1), (4, 4), (3, 2)] {
            let params = RecurrenceParams::from_integers(p, q);
            for n in 0..=8 {
                let phi = phi_product(&params, n).unwrap();
                assert!(phi.is_monic());
                assert_eq!(phi.degree(), Some(n + 1));
                for r in phi_roots(&params, n).unwrap() {
                    assert!(phi.eval_quad(&r).unwrap().is_zero());
                }
            }
        }
    }
}
