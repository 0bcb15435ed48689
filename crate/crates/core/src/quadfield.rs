//! Exact arithmetic in Q(sqrt d) for a fixed squarefree `d`.
//!
//! Every element carries its own [`QuadContext`]; binary operations check that
//! both operands live in the same field. The `try_*` methods surface a
//! mismatch as an error, the operator impls panic on it.
//!
//! `d = 1` is allowed and collapses to plain rational arithmetic (the
//! irrational part is always folded into `a`). Negative `d` is handled purely
//! formally; nothing here embeds the field into the reals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::squarefree_decompose;
use crate::sequences::RecurrenceParams;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadContext {
    d: BigInt,
}

impl QuadContext {
    /// `d` must be squarefree; callers obtain it from [`squarefree_decompose`].
    pub fn new(d: BigInt) -> Self {
        QuadContext { d }
    }

    pub fn rational() -> Self {
        QuadContext { d: BigInt::one() }
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_one()
    }
}

/// `a + b*sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    ctx: QuadContext,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, ctx: QuadContext) -> Self {
        if ctx.is_rational() {
            QuadExt {
                a: a + b,
                b: BigRational::zero(),
                ctx,
            }
        } else {
            QuadExt { a, b, ctx }
        }
    }

    pub fn from_rational(a: BigRational, ctx: &QuadContext) -> Self {
        QuadExt {
            a,
            b: BigRational::zero(),
            ctx: ctx.clone(),
        }
    }

    pub fn zero(ctx: &QuadContext) -> Self {
        Self::from_rational(BigRational::zero(), ctx)
    }

    pub fn one(ctx: &QuadContext) -> Self {
        Self::from_rational(BigRational::one(), ctx)
    }

    /// The element `sqrt(d)` itself.
    pub fn sqrt_d(ctx: &QuadContext) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), ctx.clone())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn context(&self) -> &QuadContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.d.to_string(),
                right: other.ctx.d.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            ctx: self.ctx.clone(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadExt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            ctx: self.ctx.clone(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = BigRational::from_integer(self.ctx.d.clone());
        let a = &self.a * &other.a + &self.b * &other.b * d;
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(QuadExt {
            a,
            b,
            ctx: self.ctx.clone(),
        })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadExt {
            a: &self.a * k,
            b: &self.b * k,
            ctx: self.ctx.clone(),
        }
    }

    /// The nontrivial automorphism `sqrt(d) -> -sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            ctx: self.ctx.clone(),
        }
    }

    /// `a^2 - b^2 d`
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(self.ctx.d.clone());
        &self.a * &self.a - &self.b * &self.b * d
    }

    /// `2a`
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QuadExt::one(&self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::ZeroInput("inverse"));
        }
        Ok(self.conjugate().scale(&norm.recip()))
    }

    /// `Some(a)` when the element lies in Q.
    pub fn is_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.ctx.d)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                match self.$try(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            ctx: self.ctx.clone(),
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// Field in which `x^2 - p x + q` splits: `d` is the squarefree part of the
/// discriminant, or 1 when the discriminant is zero.
pub fn splitting_context(params: &RecurrenceParams) -> Result<QuadContext> {
    let disc = params.discriminant();
    if disc.is_zero() {
        return Ok(QuadContext::rational());
    }
    Ok(QuadContext::new(squarefree_decompose(&disc)?.d))
}

/// The roots `(sigma, tau)` of `x^2 - p x + q`, with `sigma` on the
/// `+sqrt(d)` branch.
///
/// Fails only if the discriminant is too large to factor within the
/// trial-division bound.
pub fn make_roots(params: &RecurrenceParams) -> Result<(QuadExt, QuadExt)> {
    let disc = params.discriminant();
    let half = BigRational::new(1.into(), 2.into());
    let centre = params.p() * &half;
    if disc.is_zero() {
        let ctx = QuadContext::rational();
        let r = QuadExt::from_rational(centre, &ctx);
        return Ok((r.clone(), r));
    }
    let sd = squarefree_decompose(&disc)?;
    let ctx = QuadContext::new(sd.d);
    let offset = sd.s * half;
    let sigma = QuadExt::new(centre.clone(), offset.clone(), ctx.clone());
    let tau = QuadExt::new(centre, -offset, ctx);
    Ok((sigma, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};
    use proptest::prelude::*;

    fn ctx5() -> QuadContext {
        QuadContext::new(BigInt::from(5))
    }

    fn q(a: BigRational, b: BigRational, ctx: &QuadContext) -> QuadExt {
        QuadExt::new(a, b, ctx.clone())
    }

    fn fib() -> RecurrenceParams {
        RecurrenceParams::new(int(1), int(-1))
    }

    #[test]
    fn arithmetic_examples() {
        let c = ctx5();
        let x = q(int(1), int(1), &c) * q(int(1), int(-1), &c);
        assert_eq!(x.is_rational(), Some(int(-4)));
        let r5 = QuadExt::sqrt_d(&c);
        assert_eq!((&r5 * &r5).is_rational(), Some(int(5)));
        let s = q(ratio(1, 2), ratio(1, 2), &c) + q(ratio(1, 2), ratio(-1, 2), &c);
        assert!(s.is_one());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = QuadExt::sqrt_d(&ctx5());
        let b = QuadExt::sqrt_d(&QuadContext::new(BigInt::from(2)));
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch { .. })));
        assert!(matches!(a.try_sub(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    #[should_panic(expected = "mismatch")]
    fn operator_panics_on_mismatch() {
        let a = QuadExt::sqrt_d(&ctx5());
        let b = QuadExt::sqrt_d(&QuadContext::new(BigInt::from(3)));
        let _ = &a * &b;
    }

    #[test]
    fn roots_of_fibonacci() {
        let (s, t) = make_roots(&fib()).unwrap();
        assert_eq!(s, q(ratio(1, 2), ratio(1, 2), &ctx5()));
        assert_eq!(t, q(ratio(1, 2), ratio(-1, 2), &ctx5()));
        assert_eq!(s.conjugate(), t);
        assert_eq!(s.norm(), int(-1));
        assert_eq!(s.trace(), int(1));
        assert_eq!(s.conjugate().conjugate(), s);
        assert_eq!((&s + &t).is_rational(), Some(int(1)));
        assert_eq!((&s * &t).is_rational(), Some(int(-1)));
        assert_eq!(s.is_rational(), None);
    }

    #[test]
    fn rational_and_repeated_roots() {
        let (s, t) = make_roots(&RecurrenceParams::new(int(3), int(2))).unwrap();
        assert_eq!(s.is_rational(), Some(int(2)));
        assert_eq!(t.is_rational(), Some(int(1)));
        assert!(s.context().is_rational());
        let (s, t) = make_roots(&RecurrenceParams::new(int(2), int(1))).unwrap();
        assert_eq!(s.is_rational(), Some(int(1)));
        assert_eq!(t.is_rational(), Some(int(1)));
        // 45/4 = (3/2)^2 * 5 with p = 1/2, q = -11/4
        let (s, _) = make_roots(&RecurrenceParams::new(ratio(1, 2), ratio(-11, 4))).unwrap();
        assert_eq!(s, q(ratio(1, 4), ratio(3, 4), &ctx5()));
    }

    #[test]
    fn powers_and_inverses() {
        let (s, t) = make_roots(&fib()).unwrap();
        // ((1 + sqrt5)/2)^2 = (6 + 2 sqrt5)/4
        assert_eq!(s.pow(2), q(ratio(3, 2), ratio(1, 2), &ctx5()));
        assert!(s.pow(0).is_one());
        assert_eq!(s.pow(1), s);
        assert_eq!(s.inv().unwrap(), -t);
        let r5 = QuadExt::sqrt_d(&ctx5());
        assert_eq!(r5.inv().unwrap(), q(int(0), ratio(1, 5), &ctx5()));
        assert!(QuadExt::one(&ctx5()).inv().unwrap().is_one());
        assert_eq!(QuadExt::zero(&ctx5()).inv(), Err(Error::ZeroInput("inverse")));
    }

    #[test]
    fn negative_discriminant_is_formal() {
        // x^2 - x + 1 has discriminant -3
        let (s, t) = make_roots(&RecurrenceParams::new(int(1), int(1))).unwrap();
        assert_eq!(s.context().d(), &BigInt::from(-3));
        assert!(s.pow(6).is_one());
        assert_eq!(s.pow(3).is_rational(), Some(int(-1)));
        assert_eq!((&s * &t).is_rational(), Some(int(1)));
    }

    fn element(d: i64) -> impl Strategy<Value = QuadExt> {
        (-30i64..30, 1i64..8, -30i64..30, 1i64..8).prop_map(move |(an, ad, bn, bd)| {
            QuadExt::new(ratio(an, ad), ratio(bn, bd), QuadContext::new(BigInt::from(d)))
        })
    }

    fn any_d() -> impl Strategy<Value = i64> {
        prop::sample::select(vec![-7i64, -3, -1, 1, 2, 5, 13])
    }

    proptest! {
        #[test]
        fn norm_trace_conjugate_laws((x, y) in any_d().prop_flat_map(|d| (element(d), element(d)))) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert_eq!((&x + &y).trace(), x.trace() + y.trace());
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn pow_is_additive(x in any_d().prop_flat_map(element), m in 0u64..=64, n in 0u64..=64) {
            prop_assert_eq!(x.pow(m + n), &x.pow(m) * &x.pow(n));
        }

        #[test]
        fn roots_satisfy_quadratic(pn in -12i64..12, pd in 1i64..5, qn in -12i64..12, qd in 1i64..5) {
            let params = RecurrenceParams::new(ratio(pn, pd), ratio(qn, qd));
            let (s, t) = make_roots(&params).unwrap();
            let ctx = s.context().clone();
            let p = QuadExt::from_rational(params.p().clone(), &ctx);
            let qq = QuadExt::from_rational(params.q().clone(), &ctx);
            for r in [&s, &t] {
                let v = &(&(r * r) - &(&p * r)) + &qq;
                prop_assert!(v.is_zero());
            }
            prop_assert_eq!((&s + &t).is_rational(), Some(params.p().clone()));
            prop_assert_eq!((&s * &t).is_rational(), Some(params.q().clone()));
        }
    }
}
