use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::grid::IdentityId;
use super::{
    discriminant_scale_in, discriminant_sides, doubled_index_sides, five_square_witness_in,
    lucas_fibonacci_sides, pythagorean_in, CellOutcome, RatioIdentity,
};
use crate::charpoly::fibonacci_factorization_holds;
use crate::sequences::{
    cubic_coefficients, u_from_w_in, w_from_u_in, CubicSequence,
    RecurrenceParams, SequenceTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The parameters a report was evaluated at: a grid point, or the fixed
/// Fibonacci/Lucas pair for identities that only make sense there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReportParams {
    Fibonacci,
    Grid(RecurrenceParams),
}

impl ReportParams {
    pub fn recurrence(&self) -> RecurrenceParams {
        match self {
            ReportParams::Fibonacci => RecurrenceParams::fibonacci(),
            ReportParams::Grid(p) => p.clone(),
        }
    }
}

impl Serialize for ReportParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let params = self.recurrence();
        let mut st = s.serialize_struct("ReportParams", 3)?;
        let kind = match self {
            ReportParams::Fibonacci => "fibonacci",
            ReportParams::Grid(_) => "grid",
        };
        st.serialize_field("kind", kind)?;
        st.serialize_field("p", &params.p().to_string())?;
        st.serialize_field("q", &params.q().to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

/// Verdict of one identity over one parameter point and index range.
///
/// `status == Fail` exactly when `first_counterexample` is set, and
/// `status == Skipped` exactly when `skip_reason` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub diagnostic: bool,
    pub params: ReportParams,
    pub n_range: (usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_range: Option<(usize, usize)>,
    pub status: Status,
    pub cells_checked: usize,
    pub cells_skipped: usize,
    pub first_counterexample: Option<Counterexample>,
    pub skip_reason: Option<String>,
    pub note: Option<String>,
}

/// Accumulates cell outcomes in index order; the first failure wins.
#[derive(Default)]
struct Sweep {
    checked: usize,
    skipped: usize,
    skip_reason: Option<String>,
    fail: Option<Counterexample>,
}

impl Sweep {
    fn done(&self) -> bool {
        self.fail.is_some()
    }

    fn pass(&mut self) {
        self.checked += 1;
    }

    fn skip(&mut self, reason: &str) {
        self.skipped += 1;
        self.skip_reason.get_or_insert_with(|| reason.to_string());
    }

    fn fail(&mut self, n: usize, a: Option<usize>, lhs: impl ToString, rhs: impl ToString) {
        self.checked += 1;
        self.fail.get_or_insert(Counterexample {
            n,
            a,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    fn compare(&mut self, n: usize, lhs: BigRational, rhs: BigRational) {
        if lhs == rhs {
            self.pass();
        } else {
            self.fail(n, None, lhs, rhs);
        }
    }

    fn cell(&mut self, n: usize, a: usize, outcome: CellOutcome) {
        match outcome {
            CellOutcome::Pass => self.pass(),
            CellOutcome::Skipped(r) => self.skip(r),
            CellOutcome::Fail { lhs, rhs } => self.fail(n, Some(a), lhs, rhs),
        }
    }
}

fn skipped(
    id: IdentityId,
    params: ReportParams,
    n_range: (usize, usize),
    a_range: Option<(usize, usize)>,
    reason: &str,
) -> IdentityReport {
    IdentityReport {
        identity_id: id.as_str().to_string(),
        diagnostic: id.is_diagnostic(),
        params,
        n_range,
        a_range,
        status: Status::Skipped,
        cells_checked: 0,
        cells_skipped: 0,
        first_counterexample: None,
        skip_reason: Some(reason.to_string()),
        note: id.note().map(str::to_string),
    }
}

fn ratio_identity(id: IdentityId) -> Option<RatioIdentity> {
    Some(match id {
        IdentityId::Freitag => RatioIdentity::Freitag,
        IdentityId::ZeitlinFilipponi => RatioIdentity::ZeitlinFilipponi,
        IdentityId::FreitagPrintedForm => RatioIdentity::FreitagPrintedForm,
        IdentityId::ZeitlinFilipponiPrintedSign => RatioIdentity::ZeitlinFilipponiPrintedSign,
        _ => return None,
    })
}

/// Evaluates one identity at one parameter point over the inclusive index
/// range `n_range` (and `a_range` for the two-index ratio identities).
///
/// Fibonacci-only identities ignore `params` and report
/// [`ReportParams::Fibonacci`].
pub fn evaluate(
    id: IdentityId,
    params: &RecurrenceParams,
    n_range: (usize, usize),
    a_range: (usize, usize),
) -> IdentityReport {
    let report_params = if id.is_fibonacci_only() {
        ReportParams::Fibonacci
    } else {
        ReportParams::Grid(params.clone())
    };
    let recurrence = report_params.recurrence();
    let ratio = ratio_identity(id);
    let a_report = ratio.map(|_| a_range);
    let (n_lo, n_hi) = n_range;
    if n_lo > n_hi || (ratio.is_some() && a_range.0 > a_range.1) {
        return skipped(id, report_params, n_range, a_report, "empty index range");
    }
    let disc = recurrence.discriminant();

    if id == IdentityId::NormFormTriple && !(recurrence.q().is_one() && recurrence.p().is_integer()) {
        return skipped(id, report_params, n_range, a_report, "requires q = 1 and integer p");
    }
    if id == IdentityId::DiscriminantScale && disc.is_zero() {
        return skipped(id, report_params, n_range, a_report, "discriminant p^2 - 4q is zero");
    }

    let mut t = SequenceTable::new(recurrence.clone());
    let mut sweep = Sweep::default();

    if let Some(ratio) = ratio {
        'outer: for n in n_lo..=n_hi {
            for a in a_range.0..=a_range.1 {
                sweep.cell(n, a, ratio.outcome_in(&mut t, n, a));
                if sweep.done() {
                    break 'outer;
                }
            }
        }
    } else {
        for n in n_lo..=n_hi {
            match id {
                IdentityId::DiscriminantIdentity => {
                    let (l, r) = discriminant_sides(&mut t, n);
                    sweep.compare(n, l, r);
                }
                IdentityId::DiscriminantScale => match discriminant_scale_in(&mut t, n) {
                    Ok(Some(_)) => sweep.pass(),
                    Ok(None) => sweep.fail(n, None, "no rational z", "|u_n|"),
                    Err(e) => sweep.fail(n, None, e, "|u_n|"),
                },
                IdentityId::DoubledIndex => {
                    let (l, r, step) = doubled_index_sides(&mut t, n);
                    if !step.is_zero() {
                        sweep.fail(n, None, format!("w_n^2 - w_2n - 2q^n = {step}"), "0");
                    } else {
                        sweep.compare(n, l, r);
                    }
                }
                IdentityId::NormFormTriple => {
                    let p = recurrence.p().to_integer();
                    if let Err(e) = pythagorean_in(&mut t, &p, n) {
                        sweep.fail(n, None, e, "x^2 + y^2 - z^2 = 4, p y = 2 z");
                    } else {
                        sweep.pass();
                    }
                }
                IdentityId::Conversions => {
                    if n == 0 {
                        sweep.skip("conversions start at r = 1");
                        continue;
                    }
                    match w_from_u_in(&mut t, n) {
                        Err(e) => sweep.fail(n, None, e, "w_r"),
                        Ok(w) if w != *t.w(n) => sweep.fail(n, None, w, t.w(n)),
                        Ok(_) if disc.is_zero() => sweep.pass(),
                        Ok(_) => match u_from_w_in(&mut t, n) {
                            Ok(u) if u == *t.u(n) => sweep.pass(),
                            Ok(u) => sweep.fail(n, None, u, t.u(n)),
                            Err(e) => sweep.fail(n, None, e, "u_r"),
                        },
                    }
                }
                IdentityId::CubicRecurrence => {
                    let [c2, c1, c0] = cubic_coefficients(&recurrence);
                    t.ensure(n + 3);
                    for kind in [CubicSequence::USquared, CubicSequence::WSquared, CubicSequence::QPower] {
                        let x = |i: usize| match kind {
                            CubicSequence::USquared => t.u(i) * t.u(i),
                            CubicSequence::WSquared => t.w(i) * t.w(i),
                            CubicSequence::QPower => t.q_pow(i).clone(),
                        };
                        let rhs = &c2 * x(n + 2) + &c1 * x(n + 1) + &c0 * x(n);
                        if x(n + 3) != rhs {
                            sweep.fail(n, None, x(n + 3), rhs);
                            break;
                        }
                    }
                    if !sweep.done() {
                        sweep.pass();
                    }
                }
                IdentityId::LucasFibonacci => {
                    let (l, r) = lucas_fibonacci_sides(&mut t, n);
                    sweep.compare(n, l, r);
                }
                IdentityId::FiveSquareWitness => match five_square_witness_in(&mut t, n) {
                    Ok(_) => sweep.pass(),
                    Err(e) => sweep.fail(n, None, e, "F_n"),
                },
                IdentityId::FibonacciFactorization | IdentityId::FibonacciFactorizationPrintedSign => {
                    let sign: i8 = match (id, n % 2) {
                        (IdentityId::FibonacciFactorization, 0) => -1,
                        (IdentityId::FibonacciFactorization, _) => 1,
                        (_, 0) => 1,
                        (_, _) => -1,
                    };
                    match fibonacci_factorization_holds(n, sign) {
                        Ok(true) => sweep.pass(),
                        Ok(false) => sweep.fail(
                            n,
                            None,
                            "Phi_n(1, -1, x)",
                            format!("({sign}) * (x^2 - L_n x + (-1)^n) * Phi_(n-2)(1, -1, -x)"),
                        ),
                        Err(e) => sweep.fail(n, None, e, "factorization"),
                    }
                }
                _ => unreachable!("ratio identities handled above"),
            }
            if sweep.done() {
                break;
            }
        }
    }

    finish(id, report_params, n_range, a_report, sweep)
}

fn finish(
    id: IdentityId,
    params: ReportParams,
    n_range: (usize, usize),
    a_range: Option<(usize, usize)>,
    sweep: Sweep,
) -> IdentityReport {
    let (status, skip_reason) = if sweep.fail.is_some() {
        (Status::Fail, None)
    } else if sweep.checked == 0 {
        (
            Status::Skipped,
            Some(sweep.skip_reason.clone().unwrap_or_else(|| "no cells evaluated".into())),
        )
    } else {
        (Status::Pass, None)
    };
    let mut notes: Vec<String> = id.note().map(str::to_string).into_iter().collect();
    if sweep.skipped > 0 && status != Status::Skipped {
        notes.push(format!(
            "{} cells skipped: {}",
            sweep.skipped,
            sweep.skip_reason.as_deref().unwrap_or("")
        ));
    }
    IdentityReport {
        identity_id: id.as_str().to_string(),
        diagnostic: id.is_diagnostic(),
        params,
        n_range,
        a_range,
        status,
        cells_checked: sweep.checked,
        cells_skipped: sweep.skipped,
        first_counterexample: sweep.fail,
        skip_reason,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    }
}
