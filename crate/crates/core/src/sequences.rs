//! The sequences `u_n` (u_0 = 0, u_1 = 1) and `w_n` (w_0 = 2, w_1 = p) of the
//! recurrence `X_r = p X_{r-1} - q X_{r-2}`, computed three ways: plain
//! iteration, the closed form in the roots of `x^2 - p x + q`, and index
//! doubling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadfield::make_roots;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecurrenceParams {
    p: BigRational,
    q: BigRational,
}

impl RecurrenceParams {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        RecurrenceParams { p, q }
    }

    pub fn from_integers(p: i64, q: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(p)),
            BigRational::from_integer(BigInt::from(q)),
        )
    }

    /// Fibonacci / Lucas parameters `p = 1, q = -1`.
    pub fn fibonacci() -> Self {
        Self::from_integers(1, -1)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    /// `p^2 - 4q`, recomputed on every call.
    pub fn discriminant(&self) -> BigRational {
        &self.p * &self.p - BigRational::from_integer(BigInt::from(4)) * &self.q
    }

    pub fn is_integral(&self) -> bool {
        self.p.is_integer() && self.q.is_integer()
    }
}

impl Serialize for RecurrenceParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RecurrenceParams", 2)?;
        st.serialize_field("p", &self.p.to_string())?;
        st.serialize_field("q", &self.q.to_string())?;
        st.end()
    }
}

/// Integer form of the recurrence. With `L = lcm(den p, den q)`,
/// `P = pL` and `Q = qL^2` are integers, and the integer sequences
/// `U_n = P U_{n-1} - Q U_{n-2}` (0, 1, ...) and `W_n` (2, P, ...) give
/// `u_n = U_n / L^(n-1)` and `w_n = W_n / L^n`. Working on `BigInt` avoids
/// normalizing huge rationals after every operation.
#[derive(Debug, Clone)]
struct Scaled {
    l: BigInt,
    p: BigInt,
    q: BigInt,
}

impl Scaled {
    fn new(params: &RecurrenceParams) -> Self {
        let l = params.p.denom().lcm(params.q.denom());
        let p = (&params.p * BigRational::from_integer(l.clone())).to_integer();
        let q = (&params.q * BigRational::from_integer(&l * &l)).to_integer();
        Scaled { l, p, q }
    }

    /// `value / L^e`.
    fn unscale(&self, value: BigInt, e: usize) -> BigRational {
        if self.l.is_one() || value.is_zero() {
            BigRational::from_integer(value)
        } else {
            BigRational::new(value, num_traits::pow(self.l.clone(), e))
        }
    }

    fn u(&self, big_u: BigInt, n: usize) -> BigRational {
        self.unscale(big_u, n.saturating_sub(1))
    }

    fn w(&self, big_w: BigInt, n: usize) -> BigRational {
        self.unscale(big_w, n)
    }
}

/// Memoized prefix of `u_n`, `w_n` and `q^n`. Grows on demand through
/// [`SequenceTable::ensure`]; the accessors panic on indices that have not
/// been computed yet.
#[derive(Debug, Clone)]
pub struct SequenceTable {
    params: RecurrenceParams,
    scaled: Scaled,
    last_u: (BigInt, BigInt),
    last_w: (BigInt, BigInt),
    u: Vec<BigRational>,
    w: Vec<BigRational>,
    q_pow: Vec<BigRational>,
}

impl SequenceTable {
    pub fn new(params: RecurrenceParams) -> Self {
        let scaled = Scaled::new(&params);
        let u = vec![BigRational::zero(), BigRational::one()];
        let w = vec![BigRational::from_integer(2.into()), params.p.clone()];
        let q_pow = vec![BigRational::one(), params.q.clone()];
        SequenceTable {
            last_u: (BigInt::zero(), BigInt::one()),
            last_w: (BigInt::from(2), scaled.p.clone()),
            scaled,
            params,
            u,
            w,
            q_pow,
        }
    }

    pub fn params(&self) -> &RecurrenceParams {
        &self.params
    }

    /// Number of indices currently available.
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ensure(&mut self, n: usize) {
        let s = &self.scaled;
        while self.u.len() <= n {
            let r = self.u.len();
            let next_u = &s.p * &self.last_u.1 - &s.q * &self.last_u.0;
            let next_w = &s.p * &self.last_w.1 - &s.q * &self.last_w.0;
            self.u.push(s.u(next_u.clone(), r));
            self.w.push(s.w(next_w.clone(), r));
            let next_q = if self.params.q.is_integer() {
                BigRational::from_integer(self.q_pow[r - 1].numer() * self.params.q.numer())
            } else {
                &self.q_pow[r - 1] * &self.params.q
            };
            self.q_pow.push(next_q);
            self.last_u = (std::mem::take(&mut self.last_u.1), next_u);
            self.last_w = (std::mem::take(&mut self.last_w.1), next_w);
        }
    }

    pub fn u(&self, n: usize) -> &BigRational {
        &self.u[n]
    }

    pub fn w(&self, n: usize) -> &BigRational {
        &self.w[n]
    }

    pub fn q_pow(&self, n: usize) -> &BigRational {
        &self.q_pow[n]
    }

    pub fn u_values(&self) -> &[BigRational] {
        &self.u
    }

    pub fn w_values(&self) -> &[BigRational] {
        &self.w
    }
}

pub fn u_iter(params: &RecurrenceParams, n: usize) -> BigRational {
    iter_pair_counted(params, n).0
}

pub fn w_iter(params: &RecurrenceParams, n: usize) -> BigRational {
    iter_pair_counted(params, n).1
}

/// `u_n = (sigma^n - tau^n) / (sigma - tau)`, evaluated in the splitting field.
pub fn u_binet(params: &RecurrenceParams, n: usize) -> Result<BigRational> {
    if params.discriminant().is_zero() {
        return Err(Error::DegenerateDiscriminant("closed-form u_n"));
    }
    let (sigma, tau) = make_roots(params)?;
    let gap = (&sigma - &tau).inv()?;
    let diff = &sigma.pow(n as u64) - &tau.pow(n as u64);
    (&diff * &gap)
        .is_rational()
        .ok_or(Error::Irrational("closed-form u_n"))
}

/// `w_n = sigma^n + tau^n`.
pub fn w_binet(params: &RecurrenceParams, n: usize) -> Result<BigRational> {
    let (sigma, tau) = make_roots(params)?;
    (&sigma.pow(n as u64) + &tau.pow(n as u64))
        .is_rational()
        .ok_or(Error::Irrational("closed-form w_n"))
}

#[derive(Default)]
struct MulCounter(u64);

impl MulCounter {
    fn mul(&mut self, a: &BigInt, b: &BigInt) -> BigInt {
        self.0 += 1;
        a * b
    }
}

/// `(u_n, w_n, multiplications)` by straight iteration.
pub fn iter_pair_counted(params: &RecurrenceParams, n: usize) -> (BigRational, BigRational, u64) {
    let mut c = MulCounter::default();
    let s = Scaled::new(params);
    let mut u = (BigInt::zero(), BigInt::one());
    let mut w = (BigInt::from(2), s.p.clone());
    for _ in 0..n {
        let nu = c.mul(&s.p, &u.1) - c.mul(&s.q, &u.0);
        let nw = c.mul(&s.p, &w.1) - c.mul(&s.q, &w.0);
        u = (u.1, nu);
        w = (w.1, nw);
    }
    (s.u(u.0, n), s.w(w.0, n), c.0)
}

/// `(u_n, w_n)` in O(log n) multiplications.
pub fn fast_pair(params: &RecurrenceParams, n: usize) -> (BigRational, BigRational) {
    let (u, w, _) = fast_pair_counted(params, n);
    (u, w)
}

/// Index doubling on the state `(u_k, u_{k+1}, q^k)`:
///
/// ```text
/// w_k      = 2 u_{k+1} - p u_k
/// u_{2k}   = u_k w_k
/// u_{2k+1} = u_{k+1} w_k - q^k
/// ```
///
/// and a single recurrence step for odd bits. The same rules hold verbatim
/// for the scaled integer sequences.
pub fn fast_pair_counted(params: &RecurrenceParams, n: usize) -> (BigRational, BigRational, u64) {
    let mut c = MulCounter::default();
    let s = Scaled::new(params);
    let (p, q) = (&s.p, &s.q);
    let mut u0 = BigInt::zero();
    let mut u1 = BigInt::one();
    let mut qk = BigInt::one();
    let bits = usize::BITS - n.leading_zeros();
    for i in (0..bits).rev() {
        let wk = &u1 + &u1 - c.mul(p, &u0);
        let even = c.mul(&u0, &wk);
        let odd = c.mul(&u1, &wk) - &qk;
        qk = c.mul(&qk, &qk);
        if (n >> i) & 1 == 1 {
            let next = c.mul(p, &odd) - c.mul(q, &even);
            u0 = odd;
            u1 = next;
            qk = c.mul(&qk, q);
        } else {
            u0 = even;
            u1 = odd;
        }
    }
    let w = &u1 + &u1 - c.mul(p, &u0);
    (s.u(u0, n), s.w(w, n), c.0)
}

/// `w_r = u_{r+1} - q u_{r-1}`, cross-checked against `p u_r - 2q u_{r-1}`,
/// `w_{r-1} = 2 u_r - p u_{r-1}` and the iterated `w_r`.
pub fn w_from_u(params: &RecurrenceParams, r: usize) -> Result<BigRational> {
    let mut t = SequenceTable::new(params.clone());
    w_from_u_in(&mut t, r)
}

pub(crate) fn w_from_u_in(t: &mut SequenceTable, r: usize) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::OutOfRange("w_from_u needs r >= 1".into()));
    }
    t.ensure(r + 1);
    let (p, q) = (t.params.p.clone(), t.params.q.clone());
    let w = t.u(r + 1) - &q * t.u(r - 1);
    let two = BigRational::from_integer(2.into());
    let alt = &p * t.u(r) - &two * &q * t.u(r - 1);
    let prev = &two * t.u(r) - &p * t.u(r - 1);
    if w != alt || w != *t.w(r) || prev != *t.w(r - 1) {
        return Err(Error::Inconsistent(format!("u/w conversion at r = {r}")));
    }
    Ok(w)
}

/// `u_r = (w_{r+1} - q w_{r-1}) / (p^2 - 4q)`.
pub fn u_from_w(params: &RecurrenceParams, r: usize) -> Result<BigRational> {
    let mut t = SequenceTable::new(params.clone());
    u_from_w_in(&mut t, r)
}

pub(crate) fn u_from_w_in(t: &mut SequenceTable, r: usize) -> Result<BigRational> {
    let disc = t.params.discriminant();
    if disc.is_zero() {
        return Err(Error::DegenerateDiscriminant("u_from_w"));
    }
    if r == 0 {
        return Err(Error::OutOfRange("u_from_w needs r >= 1".into()));
    }
    t.ensure(r + 1);
    Ok((t.w(r + 1) - t.params.q() * t.w(r - 1)) / disc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicSequence {
    USquared,
    WSquared,
    QPower,
}

/// Coefficients `(c2, c1, c0)` of
/// `X(m+3) = c2 X(m+2) + c1 X(m+1) + c0 X(m)` shared by `u_n^2`, `w_n^2`
/// and `q^n`.
pub fn cubic_coefficients(params: &RecurrenceParams) -> [BigRational; 3] {
    let (p, q) = (&params.p, &params.q);
    let p2 = p * p;
    [&p2 - q, q * q - &p2 * q, q * q * q]
}

pub fn check_cubic_recurrence(params: &RecurrenceParams, kind: CubicSequence, m_max: usize) -> bool {
    let mut t = SequenceTable::new(params.clone());
    check_cubic_recurrence_in(&mut t, kind, m_max)
}

pub(crate) fn check_cubic_recurrence_in(
    t: &mut SequenceTable,
    kind: CubicSequence,
    m_max: usize,
) -> bool {
    t.ensure(m_max + 3);
    let [c2, c1, c0] = cubic_coefficients(&t.params);
    let x = |i: usize| -> BigRational {
        match kind {
            CubicSequence::USquared => t.u(i) * t.u(i),
            CubicSequence::WSquared => t.w(i) * t.w(i),
            CubicSequence::QPower => t.q_pow(i).clone(),
        }
    };
    (0..=m_max).all(|m| x(m + 3) == &c2 * x(m + 2) + &c1 * x(m + 1) + &c0 * x(m))
}
