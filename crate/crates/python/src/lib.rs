//! Python bindings for `trirec`.
//!
//! Parameters are accepted as `int`, `fractions.Fraction` or strings such as
//! `"-3/4"`; floats are rejected. Results come back as `int` when integral and
//! as `Fraction` otherwise.

use num_bigint::BigInt;
use num_traits::One;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyList, PyString};

use trirec::binomials::binomial_quotient;
use trirec::identities::{evaluate, IdentityId, ValueRange};
use trirec::{BigRational, GaloisGroup, RecurrenceParams};

fn err(e: trirec::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if let Ok(s) = obj.cast::<PyString>() {
        return trirec::parse_rational(&s.to_cow()?).map_err(err);
    }
    if obj.hasattr("numerator")? && obj.hasattr("denominator")? {
        let n: BigInt = obj.getattr("numerator")?.extract()?;
        let d: BigInt = obj.getattr("denominator")?.extract()?;
        return Ok(BigRational::new(n, d));
    }
    Err(PyTypeError::new_err("expected int, Fraction or a string like \"a/b\""))
}

fn to_py<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    if r.denom().is_one() {
        return Ok(r.numer().clone().into_pyobject(py)?.into_any());
    }
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    fraction.call1((r.numer().clone(), r.denom().clone()))
}

fn to_py_list<'py>(py: Python<'py>, values: &[BigRational]) -> PyResult<Bound<'py, PyList>> {
    let items = values.iter().map(|v| to_py(py, v)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Parameters `(p, q)` of `u_r = p u_(r-1) - q u_(r-2)`.
#[pyclass(name = "RecurrenceParams", frozen)]
struct PyParams {
    inner: RecurrenceParams,
}

#[pymethods]
impl PyParams {
    #[new]
    fn new(p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyParams {
            inner: RecurrenceParams::new(to_rational(p)?, to_rational(q)?),
        })
    }

    #[staticmethod]
    fn fibonacci() -> Self {
        PyParams {
            inner: RecurrenceParams::fibonacci(),
        }
    }

    #[getter]
    fn p<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, self.inner.p())
    }

    #[getter]
    fn q<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, self.inner.q())
    }

    fn discriminant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.discriminant())
    }

    fn u<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &trirec::fast_pair(&self.inner, n).0)
    }

    fn w<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &trirec::fast_pair(&self.inner, n).1)
    }

    /// `(u_n, w_n)` by index doubling.
    fn pair<'py>(&self, py: Python<'py>, n: usize) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let (u, w) = trirec::fast_pair(&self.inner, n);
        Ok((to_py(py, &u)?, to_py(py, &w)?))
    }

    /// `([u_0 .. u_n], [w_0 .. w_n])`.
    fn table<'py>(&self, py: Python<'py>, n_max: usize) -> PyResult<(Bound<'py, PyList>, Bound<'py, PyList>)> {
        let mut t = trirec::SequenceTable::new(self.inner.clone());
        t.ensure(n_max);
        Ok((
            to_py_list(py, &t.u_values()[..=n_max])?,
            to_py_list(py, &t.w_values()[..=n_max])?,
        ))
    }

    /// Coefficients of `Phi_n(p, q, x)`, ascending degree.
    fn phi<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyList>> {
        let poly = trirec::phi_product(&self.inner, n).map_err(err)?;
        to_py_list(py, poly.coeffs())
    }

    /// Coefficients of `f_n(x) = x^2 - w_n x + q^n`, ascending degree.
    fn quadratic_factor<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyList>> {
        let poly = trirec::quadratic_factor(&self.inner, n).map_err(err)?;
        to_py_list(py, poly.coeffs())
    }

    /// `(r|k)_u`, defined even when some `u_i` vanish.
    fn binomial<'py>(&self, py: Python<'py>, r: usize, k: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &trirec::generalized_binomial(&self.inner, r, k).map_err(err)?)
    }

    /// `u_r ... u_(r-k+1) / (u_k ... u_1)`, or `None` if a `u_i` in the
    /// denominator is zero.
    fn binomial_quotient<'py>(&self, py: Python<'py>, r: usize, k: usize) -> PyResult<Option<Bound<'py, PyAny>>> {
        binomial_quotient(&self.inner, r, k)
            .map_err(err)?
            .map(|v| to_py(py, &v))
            .transpose()
    }

    /// `("Z2" | "trivial" | "degenerate", d)`.
    fn galois(&self) -> PyResult<(&'static str, BigInt)> {
        let g = trirec::classify_galois(&self.inner).map_err(err)?;
        let name = match g.group {
            GaloisGroup::Z2 => "Z2",
            GaloisGroup::Trivial => "trivial",
            GaloisGroup::Degenerate => "degenerate",
        };
        Ok((name, g.d))
    }

    /// Evaluates one identity over `n_lo..=n_hi` (and `a_lo..=a_hi` for the
    /// two-index identities); returns the report as a dict.
    #[pyo3(signature = (identity, n_lo, n_hi, a_lo = 1, a_hi = 1))]
    fn check<'py>(
        &self,
        py: Python<'py>,
        identity: &str,
        n_lo: usize,
        n_hi: usize,
        a_lo: usize,
        a_hi: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let id: IdentityId = identity.parse().map_err(err)?;
        let report = evaluate(id, &self.inner, (n_lo, n_hi), (a_lo, a_hi));
        from_json(py, &serde_json_string(&report)?)
    }

    fn __repr__(&self) -> String {
        format!("RecurrenceParams(p={}, q={})", self.inner.p(), self.inner.q())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn from_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// Coefficients of the Gaussian binomial polynomial, ascending degree.
#[pyfunction]
fn gaussian_binomial(m: usize, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(trirec::gaussian_binomial(m, k).map_err(err)?.coeffs().to_vec())
}

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
#[pyfunction]
fn cyclotomic(n: usize) -> PyResult<Vec<BigInt>> {
    Ok(trirec::cyclotomic_poly(n).map_err(err)?.coeffs().to_vec())
}

/// `[(d, e_d), ...]` with the Gaussian binomial equal to `prod Phi_d^e_d`.
#[pyfunction]
fn gaussian_cyclotomic_factors(m: usize, k: usize) -> PyResult<Vec<(usize, u32)>> {
    Ok(trirec::gaussian_cyclotomic_factorization(m, k)
        .map_err(err)?
        .into_iter()
        .map(|f| (f.d, f.exponent))
        .collect())
}

/// `(sign, quadratic, tail)` with
/// `Phi_n(1, -1, x) = sign * quadratic(x) * tail(x)`.
#[pyfunction]
fn fibonacci_factorization<'py>(
    py: Python<'py>,
    n: usize,
) -> PyResult<(i8, Bound<'py, PyList>, Bound<'py, PyList>)> {
    let f = trirec::fibonacci_factorization(n).map_err(err)?;
    Ok((
        f.sign,
        to_py_list(py, f.quadratic.coeffs())?,
        to_py_list(py, f.tail.coeffs())?,
    ))
}

/// All identity ids, diagnostics included.
#[pyfunction]
fn identity_ids() -> Vec<&'static str> {
    IdentityId::ALL.iter().map(|i| i.as_str()).collect()
}

/// Runs identities over a parameter grid and returns the reports as dicts,
/// sorted by identity id and then parameters.
#[pyfunction]
#[pyo3(signature = (p_range = "-3:3", q_range = "-3:3", n_max = 50, a_max = 10, identities = None))]
fn verify<'py>(
    py: Python<'py>,
    p_range: &str,
    q_range: &str,
    n_max: usize,
    a_max: usize,
    identities: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let p: ValueRange = p_range.parse().map_err(err)?;
    let q: ValueRange = q_range.parse().map_err(err)?;
    let grid = trirec::GridSpec::new(p, q, n_max, a_max).map_err(err)?;
    let ids = match identities {
        None => IdentityId::defaults(),
        Some(names) => names
            .iter()
            .map(|s| s.parse::<IdentityId>().map_err(err))
            .collect::<PyResult<Vec<_>>>()?,
    };
    let reports = py.detach(|| trirec::run_grid(&grid, &ids));
    from_json(py, &serde_json_string(&reports)?)
}

#[pymodule]
fn pytrirec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_cyclotomic_factors, m)?)?;
    m.add_function(wrap_pyfunction!(fibonacci_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(identity_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
