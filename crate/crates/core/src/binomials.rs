//! Gaussian binomial polynomials, cyclotomic polynomials, and the
//! generalized binomial coefficient `(r|k)_u`.
//!
//! Conventions: `gaussian_binomial(m, k)` is the q-analog of `C(m, k)`, i.e.
//!
//! ```text
//! (1 - z^m)(1 - z^{m-1}) ... (1 - z^{m-k+1}) / ((1 - z^k) ... (1 - z))
//! ```
//!
//! with top `m` and bottom `k`. It is built with the q-Pascal rule
//! `B(m, k) = B(m-1, k-1) + z^k B(m-1, k)`, which never divides.
//!
//! `F(r, k, x, y)` is the homogenization `y^{k(r-k)} B(r, k)(x / y)`, equal to
//! the quotient `f_r ... f_{r-k+1} / (f_k ... f_1)` with
//! `f_i = (x^i - y^i) / (x - y)`. Evaluating it at the roots `(sigma, tau)`
//! gives `(r|k)_u`, which stays defined even when some `u_i` vanish.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quadfield::{make_roots, QuadExt};
use crate::sequences::{RecurrenceParams, SequenceTable};

/// Dense integer polynomial, ascending degree. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroInput("polynomial division"))?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub fn gaussian_binomial(m: usize, k: usize) -> Result<UniPoly> {
    if k > m {
        return Err(Error::OutOfRange(format!("gaussian binomial needs k <= m, got m = {m}, k = {k}")));
    }
    // row[j] = B(i, j) for 0 <= j <= min(i, k)
    let mut row = vec![UniPoly::one()];
    for i in 1..=m {
        let width = i.min(k);
        let mut next = Vec::with_capacity(width + 1);
        next.push(UniPoly::one());
        for j in 1..=width {
            let diag = &row[j - 1];
            next.push(match row.get(j) {
                Some(up) => diag + &up.shift(j),
                None => diag.clone(),
            });
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

pub fn binomial_coefficient(m: usize, k: usize) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (m - i) / (i + 1))
}

/// Proper divisors of `n` in ascending order.
fn proper_divisors(n: usize) -> Vec<usize> {
    (1..n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn cyclotomic_memo(n: usize, memo: &mut BTreeMap<usize, UniPoly>) -> UniPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut poly = &UniPoly::monomial(BigInt::one(), n) - &UniPoly::one();
    for d in proper_divisors(n) {
        let phi_d = cyclotomic_memo(d, memo);
        poly = poly
            .div_exact(&phi_d)
            .expect("z^n - 1 is divisible by every cyclotomic factor of a divisor");
    }
    memo.insert(n, poly.clone());
    poly
}

/// `Phi_n(z)` by dividing `z^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: usize) -> Result<UniPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("cyclotomic polynomial needs n >= 1".into()));
    }
    Ok(cyclotomic_memo(n, &mut BTreeMap::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct CyclotomicFactor {
    pub d: usize,
    pub exponent: u32,
}

/// Cyclotomic factors of `gaussian_binomial(m, k)` with exponent
/// `floor(m/d) - floor(k/d) - floor((m-k)/d)`; only nonzero exponents are
/// listed, in ascending `d`.
pub fn gaussian_cyclotomic_factorization(m: usize, k: usize) -> Result<Vec<CyclotomicFactor>> {
    if k > m {
        return Err(Error::OutOfRange(format!("gaussian binomial needs k <= m, got m = {m}, k = {k}")));
    }
    let mut out = Vec::new();
    for d in 2..=m {
        let e = m / d - k / d - (m - k) / d;
        match e {
            0 => {}
            1 => out.push(CyclotomicFactor { d, exponent: 1 }),
            _ => {
                return Err(Error::Inconsistent(format!(
                    "cyclotomic exponent {e} at d = {d} for ({m}, {k})"
                )))
            }
        }
    }
    Ok(out)
}

/// `prod Phi_d(z)^{e_d}` over the given factors.
pub fn cyclotomic_product(factors: &[CyclotomicFactor]) -> UniPoly {
    let mut memo = BTreeMap::new();
    factors.iter().fold(UniPoly::one(), |acc, f| {
        &acc * &cyclotomic_memo(f.d, &mut memo).pow(f.exponent)
    })
}

/// Homogeneous bivariate integer polynomial of total degree `t`:
/// `sum_i c_i x^{t-i} y^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousBiPoly {
    coeffs: Vec<BigInt>,
}

impl HomogeneousBiPoly {
    /// `coeffs[i]` multiplies `x^{t-i} y^i`; `t = coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial needs a degree");
        HomogeneousBiPoly { coeffs }
    }

    pub fn total_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let t = self.total_degree() as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                BigRational::from_integer(c.clone()) * num_traits::pow(x.clone(), (t - i as i32) as usize)
                    * num_traits::pow(y.clone(), i)
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn eval_quad(&self, x: &QuadExt, y: &QuadExt) -> Result<QuadExt> {
        let t = self.total_degree();
        let ctx = x.context();
        let mut xs = vec![QuadExt::one(ctx)];
        let mut ys = vec![QuadExt::one(ctx)];
        for i in 1..=t {
            xs.push(xs[i - 1].try_mul(x)?);
            ys.push(ys[i - 1].try_mul(y)?);
        }
        let mut acc = QuadExt::zero(ctx);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = xs[t - i].try_mul(&ys[i])?;
            acc = acc.try_add(&term.scale(&BigRational::from_integer(c.clone())))?;
        }
        Ok(acc)
    }
}

impl Mul<&HomogeneousBiPoly> for &HomogeneousBiPoly {
    type Output = HomogeneousBiPoly;
    fn mul(self, rhs: &HomogeneousBiPoly) -> HomogeneousBiPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HomogeneousBiPoly { coeffs: out }
    }
}

/// `F(r, k, x, y)`, homogenized from the Gaussian binomial `B(r, k)`.
pub fn bivariate_f(r: usize, k: usize) -> Result<HomogeneousBiPoly> {
    let b = gaussian_binomial(r, k)?;
    let t = k * (r - k);
    Ok(HomogeneousBiPoly::new((0..=t).map(|i| b.coeff(t - i)).collect()))
}

/// `(r|k)_u = F(r, k, sigma, tau)`.
pub fn generalized_binomial(params: &RecurrenceParams, r: usize, k: usize) -> Result<BigRational> {
    let f = bivariate_f(r, k)?;
    let (sigma, tau) = make_roots(params)?;
    f.eval_quad(&sigma, &tau)?
        .is_rational()
        .ok_or(Error::Irrational("generalized binomial"))
}

/// `u_r u_{r-1} ... u_{r-k+1} / (u_k ... u_1)`, or `None` when one of
/// `u_1 .. u_k` vanishes.
pub fn binomial_quotient(params: &RecurrenceParams, r: usize, k: usize) -> Result<Option<BigRational>> {
    if k > r {
        return Err(Error::OutOfRange(format!("binomial needs k <= r, got r = {r}, k = {k}")));
    }
    let mut t = SequenceTable::new(params.clone());
    t.ensure(r);
    if (1..=k).any(|i| t.u(i).is_zero()) {
        return Ok(None);
    }
    let num = (0..k).fold(BigRational::one(), |acc, i| acc * t.u(r - i));
    let den = (1..=k).fold(BigRational::one(), |acc, i| acc * t.u(i));
    Ok(Some(num / den))
}
