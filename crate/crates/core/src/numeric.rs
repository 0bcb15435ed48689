//! Exact integer and rational substrate.
//!
//! Integers and rationals are `num-bigint`/`num-rational` values; this module
//! adds the pieces the rest of the crate needs on top of them: squarefree
//! decomposition of a rational, rational square roots, and strict parsing.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default trial-division bound used by [`squarefree_decompose`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// `value = s^2 * d` with `|d|` squarefree and `s >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub d: BigInt,
    pub s: BigRational,
}

impl SquarefreeDecomposition {
    pub fn recompose(&self) -> BigRational {
        &self.s * &self.s * BigRational::from_integer(self.d.clone())
    }
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Splits a nonzero rational into a squarefree integer and a nonnegative
/// rational scale, using trial division up to [`DEFAULT_TRIAL_BOUND`].
pub fn squarefree_decompose(r: &BigRational) -> Result<SquarefreeDecomposition> {
    squarefree_decompose_with_bound(r, DEFAULT_TRIAL_BOUND)
}

pub fn squarefree_decompose_with_bound(
    r: &BigRational,
    bound: u64,
) -> Result<SquarefreeDecomposition> {
    if r.is_zero() {
        return Err(Error::ZeroInput("squarefree decomposition"));
    }
    // numer/denom = numer*denom / denom^2
    let den = r.denom().clone();
    let joined = (r.numer() * &den).magnitude().clone();
    let (free, root) = split_square(joined, bound)?;
    let sign = if r.is_negative() { Sign::Minus } else { Sign::Plus };
    Ok(SquarefreeDecomposition {
        d: BigInt::from_biguint(sign, free),
        s: BigRational::new(BigInt::from(root), den),
    })
}

/// Returns `(free, root)` with `n = free * root^2` and `free` squarefree.
fn split_square(mut rest: BigUint, bound: u64) -> Result<(BigUint, BigUint)> {
    let mut free = BigUint::one();
    let mut root = BigUint::one();
    let mut p: u64 = 2;
    let mut exhausted = true;
    while p <= bound {
        let prime = BigUint::from(p);
        if &prime * &prime > rest {
            exhausted = false;
            break;
        }
        let mut e = 0u32;
        while (&rest % &prime).is_zero() {
            rest /= &prime;
            e += 1;
        }
        if e > 0 {
            root *= prime.pow(e / 2);
            if e % 2 == 1 {
                free *= &prime;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok((free, root));
    }
    if !exhausted {
        // every factor below sqrt(rest) was removed, so rest is prime
        free *= rest;
        return Ok((free, root));
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        root *= r;
        Ok((free, root))
    } else {
        Err(Error::FactorizationIncomplete {
            cofactor: rest.to_string(),
            bound,
        })
    }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The nonnegative rational square root of `r`, if it exists.
pub fn is_rational_square(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(r.numer())?;
    let d = integer_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

/// Parses `"a"` or `"a/b"` with optional leading sign. Decimal notation is
/// rejected so that values stay exact end to end.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let parse_int = |part: &str| -> Result<BigInt> {
        let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or a/b"));
        }
        part.parse::<BigInt>().map_err(|e| err(&e.to_string()))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn decomp(r: BigRational) -> (BigInt, BigRational) {
        let sd = squarefree_decompose(&r).unwrap();
        (sd.d, sd.s)
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decomp(int(5)), (BigInt::from(5), int(1)));
        assert_eq!(decomp(ratio(45, 4)), (BigInt::from(5), ratio(3, 2)));
        assert_eq!(decomp(int(16)), (BigInt::from(1), int(4)));
        assert_eq!(decomp(int(-3)), (BigInt::from(-3), int(1)));
        assert_eq!(decomp(int(-12)), (BigInt::from(-3), int(2)));
        assert_eq!(decomp(ratio(1, 8)), (BigInt::from(2), ratio(1, 4)));
    }

    #[test]
    fn decompose_zero_is_error() {
        assert_eq!(
            squarefree_decompose(&int(0)),
            Err(Error::ZeroInput("squarefree decomposition"))
        );
    }

    #[test]
    fn large_prime_cofactor() {
        // 1_000_003 is prime; sqrt of it is below the bound so it is detected as prime
        let sd = squarefree_decompose(&int(4 * 1_000_003)).unwrap();
        assert_eq!(sd.d, BigInt::from(1_000_003));
        assert_eq!(sd.s, int(2));
    }

    #[test]
    fn bound_exhaustion() {
        // 101 * 103 with bound 50: cofactor unresolved, not a square
        let e = squarefree_decompose_with_bound(&int(101 * 103), 50).unwrap_err();
        assert!(matches!(e, Error::FactorizationIncomplete { .. }));
        // 101^2 with bound 50: cofactor is a perfect square
        let sd = squarefree_decompose_with_bound(&int(3 * 101 * 101), 50).unwrap();
        assert_eq!(sd.d, BigInt::from(3));
        assert_eq!(sd.s, int(101));
    }

    #[test]
    fn rational_square_examples() {
        assert_eq!(is_rational_square(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(is_rational_square(&int(5)), None);
        assert_eq!(is_rational_square(&int(0)), Some(int(0)));
        assert_eq!(is_rational_square(&int(-4)), None);
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        for bad in ["x", "1.5", "1e3", "", "1/0", "/2", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-500i64..500, 1i64..60).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn decomposition_recomposes(r in small_rational()) {
            prop_assume!(!r.is_zero());
            let sd = squarefree_decompose(&r).unwrap();
            prop_assert_eq!(sd.recompose(), r.clone());
            prop_assert!(!sd.s.is_negative());
            // |d| squarefree: no k^2 with k >= 2 divides it
            let d = sd.d.magnitude().clone();
            let mut k = BigUint::from(2u32);
            while &k * &k <= d {
                prop_assert!(!(&d % (&k * &k)).is_zero());
                k += 1u32;
            }
            let sq = is_rational_square(&r);
            prop_assert_eq!(sq.is_some(), r.is_positive() && sd.d.is_one());
        }

        #[test]
        fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }
    }
}
