//! Exact checks of the identities tying `u_n`, `w_n`, `q^n` and the
//! discriminant `D = p^2 - 4q` together, plus their Fibonacci/Lucas
//! specializations.
//!
//! Ratio identities are compared by cross-multiplication
//! (`numerator == 5 * denominator`), so a vanishing denominator is an explicit
//! skip rather than a division error.

mod grid;
mod report;

pub use grid::{run_grid, GridSpec, IdentityId, ValueRange, FACTORIZATION_N_CAP};
pub use report::{evaluate, Counterexample, IdentityReport, ReportParams, Status};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{integer_sqrt_exact, is_rational_square};
use crate::sequences::{RecurrenceParams, SequenceTable};

/// Result of a single `(n, a)` cell of a ratio identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellOutcome {
    Pass,
    Fail { lhs: BigRational, rhs: BigRational },
    Skipped(&'static str),
}

impl CellOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CellOutcome::Pass)
    }
}

pub(crate) const ZERO_DENOMINATOR: &str = "zero denominator";

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

fn four() -> BigRational {
    BigRational::from_integer(BigInt::from(4))
}

fn five() -> BigRational {
    BigRational::from_integer(BigInt::from(5))
}

fn minus_one_pow(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `(w_n^2 - 4q^n, u_n^2 (p^2 - 4q))`.
pub(crate) fn discriminant_sides(t: &mut SequenceTable, n: usize) -> (BigRational, BigRational) {
    t.ensure(n);
    let lhs = t.w(n) * t.w(n) - four() * t.q_pow(n);
    let rhs = t.u(n) * t.u(n) * t.params().discriminant();
    (lhs, rhs)
}

/// `w_n^2 - 4 q^n == u_n^2 (p^2 - 4q)`.
pub fn check_discriminant_identity(params: &RecurrenceParams, n: usize) -> bool {
    let (l, r) = discriminant_sides(&mut SequenceTable::new(params.clone()), n);
    l == r
}

/// Solves `w_n^2 - 4 q^n = z^2 (p^2 - 4q)` for `z >= 0`, and confirms
/// `z = |u_n|`.
pub fn solve_discriminant_scale(params: &RecurrenceParams, n: usize) -> Result<Option<BigRational>> {
    discriminant_scale_in(&mut SequenceTable::new(params.clone()), n)
}

pub(crate) fn discriminant_scale_in(t: &mut SequenceTable, n: usize) -> Result<Option<BigRational>> {
    let disc = t.params().discriminant();
    if disc.is_zero() {
        return Err(Error::DegenerateDiscriminant("discriminant scale"));
    }
    t.ensure(n);
    let lhs = t.w(n) * t.w(n) - four() * t.q_pow(n);
    let z = is_rational_square(&(lhs / disc));
    if let Some(z) = &z {
        if *z != t.u(n).abs() {
            return Err(Error::Inconsistent(format!("scale {z} differs from |u_{n}|")));
        }
    }
    Ok(z)
}

/// `(w_{2n} - 2q^n, u_n^2 (p^2 - 4q), w_n^2 - w_{2n} - 2q^n)`; the last
/// entry must vanish.
pub(crate) fn doubled_index_sides(
    t: &mut SequenceTable,
    n: usize,
) -> (BigRational, BigRational, BigRational) {
    t.ensure(2 * n);
    let lhs = t.w(2 * n) - two() * t.q_pow(n);
    let rhs = t.u(n) * t.u(n) * t.params().discriminant();
    let step = t.w(n) * t.w(n) - t.w(2 * n) - two() * t.q_pow(n);
    (lhs, rhs, step)
}

/// `w_{2n} - 2 q^n == u_n^2 (p^2 - 4q)` together with `w_n^2 = w_{2n} + 2q^n`.
pub fn check_doubled_index_identity(params: &RecurrenceParams, n: usize) -> bool {
    let (l, r, step) = doubled_index_sides(&mut SequenceTable::new(params.clone()), n);
    l == r && step.is_zero()
}

pub(crate) fn fibonacci_table(n: usize) -> SequenceTable {
    let mut t = SequenceTable::new(RecurrenceParams::fibonacci());
    t.ensure(n);
    t
}

pub(crate) fn lucas_fibonacci_sides(t: &mut SequenceTable, n: usize) -> (BigRational, BigRational) {
    t.ensure(n);
    let lhs = t.w(n) * t.w(n) - four() * minus_one_pow(n);
    let rhs = five() * t.u(n) * t.u(n);
    (lhs, rhs)
}

/// `L_n^2 - 4(-1)^n == 5 F_n^2`.
pub fn check_lucas_fibonacci(n: usize) -> bool {
    let (l, r) = lucas_fibonacci_sides(&mut fibonacci_table(n), n);
    l == r
}

/// The integer `A_n >= 0` with `L_n^2 - 4(-1)^n = 5 A_n^2`, checked to equal
/// `F_n`.
pub fn five_square_witness(n: usize) -> Result<BigInt> {
    five_square_witness_in(&mut fibonacci_table(n), n)
}

pub(crate) fn five_square_witness_in(t: &mut SequenceTable, n: usize) -> Result<BigInt> {
    t.ensure(n);
    let lhs = t.w(n) * t.w(n) - four() * minus_one_pow(n);
    let quotient = lhs / five();
    let a = quotient
        .is_integer()
        .then(|| integer_sqrt_exact(quotient.numer()))
        .flatten()
        .ok_or_else(|| Error::Inconsistent(format!("L_{n}^2 - 4(-1)^{n} is not five times a square")))?;
    if BigRational::from_integer(a.clone()) != *t.u(n) {
        return Err(Error::Inconsistent(format!("A_{n} = {a} differs from F_{n}")));
    }
    Ok(a)
}

/// The two ratio identities on Fibonacci and Lucas numbers, each in the form
/// that holds and in the form as originally printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioIdentity {
    /// `(L_n^2 - (-1)^a L_{n+a}^2) / (F_n^2 - (-1)^a F_{n+a}^2) = 5`
    Freitag,
    /// `(L_n^2 + L_{n+2a}^2 - 8(-1)^n) / (F_n^2 + F_{n+2a}^2) = 5`
    ZeitlinFilipponi,
    /// Freitag with the printed denominator `F_n - (-1)^a F_{n+a}^2`.
    FreitagPrintedForm,
    /// Zeitlin-Filipponi with the printed `+8(-1)^n`.
    ZeitlinFilipponiPrintedSign,
}

impl RatioIdentity {
    pub fn max_index(self, n: usize, a: usize) -> usize {
        match self {
            RatioIdentity::Freitag | RatioIdentity::FreitagPrintedForm => n + a,
            _ => n + 2 * a,
        }
    }

    /// `(numerator, denominator)` at `(n, a)`.
    pub(crate) fn terms(self, t: &mut SequenceTable, n: usize, a: usize) -> (BigRational, BigRational) {
        t.ensure(self.max_index(n, a));
        let f = |i: usize| t.u(i).clone();
        let l = |i: usize| t.w(i).clone();
        let sq = |x: BigRational| &x * &x;
        match self {
            RatioIdentity::Freitag | RatioIdentity::FreitagPrintedForm => {
                let s = minus_one_pow(a);
                let num = sq(l(n)) - &s * sq(l(n + a));
                let den_head = if self == RatioIdentity::Freitag { sq(f(n)) } else { f(n) };
                let den = den_head - &s * sq(f(n + a));
                (num, den)
            }
            RatioIdentity::ZeitlinFilipponi | RatioIdentity::ZeitlinFilipponiPrintedSign => {
                let eight = BigRational::from_integer(BigInt::from(8)) * minus_one_pow(n);
                let base = sq(l(n)) + sq(l(n + 2 * a));
                let num = if self == RatioIdentity::ZeitlinFilipponi {
                    base - eight
                } else {
                    base + eight
                };
                (num, sq(f(n)) + sq(f(n + 2 * a)))
            }
        }
    }

    pub(crate) fn outcome_in(self, t: &mut SequenceTable, n: usize, a: usize) -> CellOutcome {
        let (num, den) = self.terms(t, n, a);
        if den.is_zero() {
            CellOutcome::Skipped(ZERO_DENOMINATOR)
        } else if num == five() * &den {
            CellOutcome::Pass
        } else {
            CellOutcome::Fail {
                lhs: num / den,
                rhs: five(),
            }
        }
    }

    pub fn check(self, n: usize, a: usize) -> CellOutcome {
        let mut t = fibonacci_table(self.max_index(n, a));
        self.outcome_in(&mut t, n, a)
    }
}

pub fn check_freitag(n: usize, a: usize) -> CellOutcome {
    RatioIdentity::Freitag.check(n, a)
}

pub fn check_zeitlin_filipponi(n: usize, a: usize) -> CellOutcome {
    RatioIdentity::ZeitlinFilipponi.check(n, a)
}

/// With `q = 1`: `(x, y, z) = (w_n, 2 u_n, p u_n)` satisfies
/// `x^2 + y^2 - z^2 = 4` and `p y = 2 z`; both are checked before returning.
pub fn pythagorean_like(p: &BigInt, n: usize) -> Result<(BigInt, BigInt, BigInt)> {
    if n == 0 {
        return Err(Error::OutOfRange("the norm-form triple needs n >= 1".into()));
    }
    let params = RecurrenceParams::new(
        BigRational::from_integer(p.clone()),
        BigRational::one(),
    );
    let mut t = SequenceTable::new(params);
    pythagorean_in(&mut t, p, n)
}

pub(crate) fn pythagorean_in(
    t: &mut SequenceTable,
    p: &BigInt,
    n: usize,
) -> Result<(BigInt, BigInt, BigInt)> {
    t.ensure(n);
    let x = t.w(n).to_integer();
    let u = t.u(n).to_integer();
    let y = BigInt::from(2) * &u;
    let z = p * &u;
    let four = BigInt::from(4);
    if &x * &x + &y * &y - &z * &z != four || p * &y != BigInt::from(2) * &z {
        return Err(Error::Inconsistent(format!("norm-form triple fails at p = {p}, n = {n}")));
    }
    Ok((x, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    #[test]
    fn discriminant_identity_examples() {
        let fib = RecurrenceParams::fibonacci();
        assert!(check_discriminant_identity(&fib, 5));
        let (l, r) = discriminant_sides(&mut SequenceTable::new(fib.clone()), 5);
        assert_eq!((l, r), (int(125), int(125)));
        assert!(check_discriminant_identity(&RecurrenceParams::from_integers(7, -3), 0));
        let two = RecurrenceParams::from_integers(3, 2);
        let (l, r) = discriminant_sides(&mut SequenceTable::new(two.clone()), 4);
        assert_eq!(l, int(17 * 17 - 64));
        assert_eq!(r, int(15 * 15));
        assert!(check_discriminant_identity(&RecurrenceParams::new(ratio(2, 3), ratio(-5, 7)), 17));
    }

    #[test]
    fn discriminant_scale_examples() {
        let fib = RecurrenceParams::fibonacci();
        assert_eq!(solve_discriminant_scale(&fib, 6).unwrap(), Some(int(8)));
        assert_eq!(solve_discriminant_scale(&fib, 1).unwrap(), Some(int(1)));
        let params = RecurrenceParams::from_integers(2, 3);
        assert_eq!(solve_discriminant_scale(&params, 3).unwrap(), Some(int(1)));
        assert_eq!(solve_discriminant_scale(&params, 7).unwrap(), Some(int(13)));
        assert!(matches!(
            solve_discriminant_scale(&RecurrenceParams::from_integers(2, 1), 3),
            Err(Error::DegenerateDiscriminant(_))
        ));
    }

    #[test]
    fn doubled_index_examples() {
        let fib = RecurrenceParams::fibonacci();
        let (l, r, step) = doubled_index_sides(&mut SequenceTable::new(fib.clone()), 3);
        assert_eq!((l, r, step), (int(20), int(20), int(0)));
        assert!(check_doubled_index_identity(&fib, 0));
        let two = RecurrenceParams::from_integers(3, 2);
        let (l, r, _) = doubled_index_sides(&mut SequenceTable::new(two), 2);
        assert_eq!((l, r), (int(9), int(9)));
    }

    #[test]
    fn fibonacci_identities() {
        assert!(check_lucas_fibonacci(5));
        assert!(check_lucas_fibonacci(0));
        let (l, r) = lucas_fibonacci_sides(&mut fibonacci_table(10), 10);
        assert_eq!((l, r), (int(15125), int(15125)));
        assert_eq!(five_square_witness(4).unwrap(), BigInt::from(3));
        assert_eq!(five_square_witness(0).unwrap(), BigInt::from(0));
        assert_eq!(five_square_witness(7).unwrap(), BigInt::from(13));
    }

    #[test]
    fn ratio_identity_examples() {
        assert_eq!(check_freitag(1, 1), CellOutcome::Pass);
        assert_eq!(check_freitag(2, 1), CellOutcome::Pass);
        assert_eq!(check_freitag(3, 2), CellOutcome::Pass);
        let (num, den) = RatioIdentity::Freitag.terms(&mut fibonacci_table(5), 3, 2);
        assert_eq!((num, den), (int(-105), int(-21)));
        assert_eq!(check_freitag(4, 0), CellOutcome::Skipped(ZERO_DENOMINATOR));

        assert_eq!(check_zeitlin_filipponi(1, 1), CellOutcome::Pass);
        assert_eq!(check_zeitlin_filipponi(2, 1), CellOutcome::Pass);
        let (num, den) = RatioIdentity::ZeitlinFilipponi.terms(&mut fibonacci_table(4), 2, 1);
        assert_eq!((num, den), (int(50), int(10)));
        assert_eq!(check_zeitlin_filipponi(0, 0), CellOutcome::Skipped(ZERO_DENOMINATOR));

        assert_eq!(
            RatioIdentity::ZeitlinFilipponiPrintedSign.check(1, 1),
            CellOutcome::Fail { lhs: ratio(9, 5), rhs: int(5) }
        );
        assert_eq!(
            RatioIdentity::FreitagPrintedForm.check(3, 1),
            CellOutcome::Fail { lhs: ratio(65, 11), rhs: int(5) }
        );
        assert_eq!(RatioIdentity::FreitagPrintedForm.check(2, 1), CellOutcome::Pass);
    }

    #[test]
    fn norm_form_triples() {
        let t = |p: i64, n| pythagorean_like(&BigInt::from(p), n).unwrap();
        let b = |v: [i64; 3]| (BigInt::from(v[0]), BigInt::from(v[1]), BigInt::from(v[2]));
        assert_eq!(t(3, 1), b([3, 2, 3]));
        assert_eq!(t(1, 1), b([1, 2, 1]));
        assert_eq!(t(3, 2), b([7, 6, 9]));
        assert!(pythagorean_like(&BigInt::from(3), 0).is_err());
    }
}
