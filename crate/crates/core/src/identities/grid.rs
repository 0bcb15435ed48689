use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::report::{evaluate, IdentityReport};
use crate::error::{Error, Result};
use crate::numeric::parse_rational;
use crate::sequences::RecurrenceParams;

/// Largest `n` swept by the two factorization identities; each cell expands
/// two root products of degree about `n`.
pub const FACTORIZATION_N_CAP: usize = 60;

/// Identities known to the grid runner.
///
/// The string ids are the stable names used on the command line and in
/// reports. Ids ending in `_paper_sign` / `_paper_form` are diagnostics: they
/// encode a misprinted variant and are expected to fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    /// `w_n^2 - 4q^n = u_n^2 (p^2 - 4q)`
    DiscriminantIdentity,
    /// `w_n^2 - 4q^n = z^2 (p^2 - 4q)` is solved by `z = |u_n|`
    DiscriminantScale,
    /// `w_{2n} - 2q^n = u_n^2 (p^2 - 4q)`
    DoubledIndex,
    /// `q = 1`: `(w_n, 2u_n, p u_n)` solves `x^2 + y^2 - z^2 = 4`, `p y = 2 z`
    NormFormTriple,
    /// `w_r = u_{r+1} - q u_{r-1}` and `u_r = (w_{r+1} - q w_{r-1}) / D`
    Conversions,
    /// `u_n^2`, `w_n^2`, `q^n` share one third-order recurrence
    CubicRecurrence,
    /// `L_n^2 - 4(-1)^n = 5 F_n^2`
    LucasFibonacci,
    /// `L_n^2 - 4(-1)^n` is five times the square of `F_n`
    FiveSquareWitness,
    Freitag,
    ZeitlinFilipponi,
    /// `Phi_n(1,-1,x) = (-1)^{n-1} (x^2 - L_n x + (-1)^n) Phi_{n-2}(1,-1,-x)`
    FibonacciFactorization,
    FreitagPrintedForm,
    ZeitlinFilipponiPrintedSign,
    /// The factorization with the printed prefactor `(-1)^n`.
    FibonacciFactorizationPrintedSign,
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::DiscriminantIdentity,
        IdentityId::DiscriminantScale,
        IdentityId::DoubledIndex,
        IdentityId::NormFormTriple,
        IdentityId::Conversions,
        IdentityId::CubicRecurrence,
        IdentityId::LucasFibonacci,
        IdentityId::FiveSquareWitness,
        IdentityId::Freitag,
        IdentityId::ZeitlinFilipponi,
        IdentityId::FibonacciFactorization,
        IdentityId::FreitagPrintedForm,
        IdentityId::ZeitlinFilipponiPrintedSign,
        IdentityId::FibonacciFactorizationPrintedSign,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::DiscriminantIdentity => "prop34",
            IdentityId::DiscriminantScale => "eq35",
            IdentityId::DoubledIndex => "cor36",
            IdentityId::NormFormTriple => "cor35",
            IdentityId::Conversions => "lemma32",
            IdentityId::CubicRecurrence => "lemma33",
            IdentityId::LucasFibonacci => "eq24",
            IdentityId::FiveSquareWitness => "eq22",
            IdentityId::Freitag => "eq25_freitag",
            IdentityId::ZeitlinFilipponi => "eq25_zeitlin",
            IdentityId::FibonacciFactorization => "eq21",
            IdentityId::FreitagPrintedForm => "eq25_freitag_paper_form",
            IdentityId::ZeitlinFilipponiPrintedSign => "eq25_zeitlin_paper_sign",
            IdentityId::FibonacciFactorizationPrintedSign => "eq21_paper_sign",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            IdentityId::DiscriminantIdentity => "w_n^2 - 4q^n = u_n^2 (p^2 - 4q)",
            IdentityId::DiscriminantScale => "w_n^2 - 4q^n = z^2 (p^2 - 4q) has the rational solution z = |u_n|",
            IdentityId::DoubledIndex => "w_2n - 2q^n = u_n^2 (p^2 - 4q), with w_n^2 = w_2n + 2q^n",
            IdentityId::NormFormTriple => "q = 1: (w_n, 2u_n, p u_n) satisfies x^2 + y^2 - z^2 = 4 and p y = 2 z",
            IdentityId::Conversions => "w_r = u_(r+1) - q u_(r-1) and u_r = (w_(r+1) - q w_(r-1)) / (p^2 - 4q)",
            IdentityId::CubicRecurrence => {
                "u_n^2, w_n^2, q^n satisfy X(m+3) = (p^2-q) X(m+2) + (q^2-p^2 q) X(m+1) + q^3 X(m)"
            }
            IdentityId::LucasFibonacci => "L_n^2 - 4(-1)^n = 5 F_n^2",
            IdentityId::FiveSquareWitness => "L_n^2 - 4(-1)^n = 5 A_n^2 with A_n = F_n",
            IdentityId::Freitag => "(L_n^2 - (-1)^a L_(n+a)^2) / (F_n^2 - (-1)^a F_(n+a)^2) = 5",
            IdentityId::ZeitlinFilipponi => "(L_n^2 + L_(n+2a)^2 - 8(-1)^n) / (F_n^2 + F_(n+2a)^2) = 5",
            IdentityId::FibonacciFactorization => {
                "Phi_n(1,-1,x) = (-1)^(n-1) (x^2 - L_n x + (-1)^n) Phi_(n-2)(1,-1,-x)"
            }
            IdentityId::FreitagPrintedForm => "(L_n^2 - (-1)^a L_(n+a)^2) / (F_n - (-1)^a F_(n+a)^2) = 5",
            IdentityId::ZeitlinFilipponiPrintedSign => {
                "(L_n^2 + L_(n+2a)^2 + 8(-1)^n) / (F_n^2 + F_(n+2a)^2) = 5"
            }
            IdentityId::FibonacciFactorizationPrintedSign => {
                "Phi_n(1,-1,x) = (-1)^n (x^2 - L_n x + (-1)^n) Phi_(n-2)(1,-1,-x)"
            }
        }
    }

    /// Annotation carried into every report of this identity.
    pub fn note(self) -> Option<&'static str> {
        match self {
            IdentityId::FibonacciFactorization => Some("printed prefactor (-1)^n; verified sign (-1)^(n-1)"),
            IdentityId::FibonacciFactorizationPrintedSign => {
                Some("diagnostic: printed prefactor (-1)^n contradicts monicity of Phi_n")
            }
            IdentityId::Freitag => Some("denominator read as F_n^2 (printed as F_n)"),
            IdentityId::FreitagPrintedForm => Some("diagnostic: printed denominator F_n - (-1)^a F_(n+a)^2"),
            IdentityId::ZeitlinFilipponi => Some("sign read as -8(-1)^n (printed as +8(-1)^n)"),
            IdentityId::ZeitlinFilipponiPrintedSign => Some("diagnostic: printed +8(-1)^n"),
            IdentityId::CubicRecurrence => {
                Some("at p = 1, q = -1 the coefficients are 2, 2, -1 (printed as 2X(n+2) + 2X(n+2) - X(n))")
            }
            _ => None,
        }
    }

    pub fn is_diagnostic(self) -> bool {
        matches!(
            self,
            IdentityId::FreitagPrintedForm
                | IdentityId::ZeitlinFilipponiPrintedSign
                | IdentityId::FibonacciFactorizationPrintedSign
        )
    }

    /// Identities stated only for Fibonacci/Lucas numbers; they produce one
    /// report per run regardless of the parameter grid.
    pub fn is_fibonacci_only(self) -> bool {
        matches!(
            self,
            IdentityId::LucasFibonacci
                | IdentityId::FiveSquareWitness
                | IdentityId::Freitag
                | IdentityId::ZeitlinFilipponi
                | IdentityId::FibonacciFactorization
                | IdentityId::FreitagPrintedForm
                | IdentityId::ZeitlinFilipponiPrintedSign
                | IdentityId::FibonacciFactorizationPrintedSign
        )
    }

    pub fn uses_offset(self) -> bool {
        matches!(
            self,
            IdentityId::Freitag
                | IdentityId::ZeitlinFilipponi
                | IdentityId::FreitagPrintedForm
                | IdentityId::ZeitlinFilipponiPrintedSign
        )
    }

    /// Index ranges swept by the grid runner for the given limits.
    pub fn ranges(self, n_max: usize, a_max: usize) -> ((usize, usize), (usize, usize)) {
        let n = match self {
            IdentityId::NormFormTriple | IdentityId::Conversions => (1, n_max),
            IdentityId::Freitag
            | IdentityId::ZeitlinFilipponi
            | IdentityId::FreitagPrintedForm
            | IdentityId::ZeitlinFilipponiPrintedSign => (1, n_max),
            IdentityId::FibonacciFactorization | IdentityId::FibonacciFactorizationPrintedSign => {
                (2, n_max.min(FACTORIZATION_N_CAP))
            }
            _ => (0, n_max),
        };
        (n, (1, a_max))
    }

    /// The default set: every identity that is expected to hold.
    pub fn defaults() -> Vec<IdentityId> {
        Self::ALL.into_iter().filter(|i| !i.is_diagnostic()).collect()
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.as_str() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown identity id".into(),
            })
    }
}

/// Inclusive arithmetic progression `start, start + step, ..., <= end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueRange {
    start: BigRational,
    end: BigRational,
    step: BigRational,
}

impl ValueRange {
    pub fn new(start: BigRational, end: BigRational, step: BigRational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::OutOfRange("range step must be positive".into()));
        }
        if start > end {
            return Err(Error::OutOfRange(format!("empty range {start}:{end}")));
        }
        Ok(ValueRange { start, end, step })
    }

    pub fn integers(start: i64, end: i64) -> Result<Self> {
        Self::new(
            BigRational::from_integer(start.into()),
            BigRational::from_integer(end.into()),
            BigRational::one(),
        )
    }

    pub fn values(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut v = self.start.clone();
        while v <= self.end {
            out.push(v.clone());
            v += &self.step;
        }
        out
    }
}

impl FromStr for ValueRange {
    type Err = Error;

    /// `start:end` or `start:end:step`, each an integer or `a/b`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "expected start:end or start:end:step".into(),
        };
        match parts.as_slice() {
            [a, b] => Self::new(parse_rational(a)?, parse_rational(b)?, BigRational::one()),
            [a, b, c] => Self::new(parse_rational(a)?, parse_rational(b)?, parse_rational(c)?),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ValueRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.step.is_one() {
            write!(f, "{}:{}", self.start, self.end)
        } else {
            write!(f, "{}:{}:{}", self.start, self.end, self.step)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub p_range: ValueRange,
    pub q_range: ValueRange,
    pub n_max: usize,
    pub a_max: usize,
}

impl GridSpec {
    pub fn new(p_range: ValueRange, q_range: ValueRange, n_max: usize, a_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::OutOfRange("n_max must be at least 1".into()));
        }
        Ok(GridSpec {
            p_range,
            q_range,
            n_max,
            a_max,
        })
    }

    pub fn params(&self) -> Vec<RecurrenceParams> {
        let qs = self.q_range.values();
        self.p_range
            .values()
            .into_iter()
            .flat_map(|p| qs.iter().map(move |q| RecurrenceParams::new(p.clone(), q.clone())))
            .collect()
    }
}

/// Evaluates every `(identity, params)` cell of the grid. Cells run in
/// parallel; the result is sorted by identity id, then `p`, then `q`.
/// Fibonacci-only identities contribute a single report each.
pub fn run_grid(grid: &GridSpec, ids: &[IdentityId]) -> Vec<IdentityReport> {
    let ids: BTreeSet<IdentityId> = ids.iter().copied().collect();
    let points = grid.params();
    let fib = [RecurrenceParams::fibonacci()];
    let cells: Vec<(IdentityId, &RecurrenceParams)> = ids
        .iter()
        .flat_map(|&id| {
            let ps: &[RecurrenceParams] = if id.is_fibonacci_only() { &fib } else { &points };
            ps.iter().map(move |p| (id, p))
        })
        .collect();
    let mut reports: Vec<IdentityReport> = cells
        .into_par_iter()
        .map(|(id, params)| {
            let (n, a) = id.ranges(grid.n_max, grid.a_max);
            evaluate(id, params, n, a)
        })
        .collect();
    reports.sort_by(|x, y| {
        x.identity_id
            .cmp(&y.identity_id)
            .then_with(|| x.params.cmp(&y.params))
    });
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Status;
    use crate::numeric::{int, ratio};

    fn grid(p: (i64, i64), q: (i64, i64), n_max: usize, a_max: usize) -> GridSpec {
        GridSpec::new(
            ValueRange::integers(p.0, p.1).unwrap(),
            ValueRange::integers(q.0, q.1).unwrap(),
            n_max,
            a_max,
        )
        .unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("nosuch".parse::<IdentityId>().is_err());
        assert!(IdentityId::defaults().iter().all(|i| !i.is_diagnostic()));
        assert_eq!(IdentityId::defaults().len(), 11);
    }

    #[test]
    fn ranges_parse() {
        let r: ValueRange = "-3:3".parse().unwrap();
        assert_eq!(r.values().len(), 7);
        let r: ValueRange = "0:1:1/4".parse().unwrap();
        assert_eq!(r.values(), vec![int(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)]);
        assert_eq!(r.to_string(), "0:1:1/4");
        assert!("3:1".parse::<ValueRange>().is_err());
        assert!("1:2:0".parse::<ValueRange>().is_err());
        assert!("1".parse::<ValueRange>().is_err());
        assert!("1.5:2".parse::<ValueRange>().is_err());
        assert!(GridSpec::new(r.clone(), r, 0, 1).is_err());
    }

    #[test]
    fn prop34_grid_passes() {
        let reports = run_grid(&grid((-3, 3), (-3, 3), 50, 0), &[IdentityId::DiscriminantIdentity]);
        assert_eq!(reports.len(), 49);
        assert!(reports.iter().all(|r| r.status == Status::Pass));
        let ps: Vec<_> = reports.iter().map(|r| r.params.clone()).collect();
        let mut sorted = ps.clone();
        sorted.sort();
        assert_eq!(ps, sorted);
    }

    #[test]
    fn printed_zeitlin_sign_fails_first_at_one_one() {
        let reports = run_grid(&grid((0, 0), (0, 0), 5, 2), &[IdentityId::ZeitlinFilipponiPrintedSign]);
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.status, Status::Fail);
        assert!(r.diagnostic);
        let c = r.first_counterexample.as_ref().unwrap();
        assert_eq!((c.n, c.a, c.lhs.as_str()), (1, Some(1), "9/5"));
    }

    #[test]
    fn empty_identity_set() {
        assert!(run_grid(&grid((-1, 1), (-1, 1), 5, 2), &[]).is_empty());
    }

    #[test]
    fn degenerate_cells_are_skipped() {
        let reports = run_grid(
            &grid((2, 2), (1, 2), 10, 1),
            &[IdentityId::DiscriminantScale, IdentityId::NormFormTriple],
        );
        let statuses: Vec<_> = reports
            .iter()
            .map(|r| (r.identity_id.as_str(), r.params.recurrence().q().clone(), r.status))
            .collect();
        assert_eq!(
            statuses,
            vec![
                ("cor35", int(1), Status::Pass),
                ("cor35", int(2), Status::Skipped),
                ("eq35", int(1), Status::Skipped),
                ("eq35", int(2), Status::Pass),
            ]
        );
        for r in &reports {
            assert_eq!(r.status == Status::Skipped, r.skip_reason.is_some());
            assert_eq!(r.status == Status::Fail, r.first_counterexample.is_some());
        }
    }

    #[test]
    fn default_identities_pass_on_small_grid() {
        let reports = run_grid(&grid((-2, 2), (-2, 2), 20, 4), &IdentityId::defaults());
        for r in &reports {
            assert_ne!(r.status, Status::Fail, "{r:?}");
        }
        let diag = run_grid(
            &grid((0, 0), (0, 0), 12, 3),
            &IdentityId::ALL.into_iter().filter(|i| i.is_diagnostic()).collect::<Vec<_>>(),
        );
        assert_eq!(diag.len(), 3);
        assert!(diag.iter().all(|r| r.status == Status::Fail));
    }

    #[test]
    fn rational_grid() {
        let g = GridSpec::new("1/2:1:1/2".parse().unwrap(), "-1:-1/2:1/2".parse().unwrap(), 15, 1).unwrap();
        assert_eq!(g.params().len(), 4);
        let reports = run_grid(&g, &[IdentityId::DiscriminantIdentity, IdentityId::DoubledIndex]);
        assert_eq!(reports.len(), 8);
        assert!(reports.iter().all(|r| r.status == Status::Pass));
    }
}
