//! Builds the three renderings of each command.
//!
//! JSON records and CSV rows carry the same fields; CSV flattens nested
//! values. Exact numbers are always strings.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use trirec::charpoly::fibonacci_factorization;
use trirec::identities::{IdentityId, IdentityReport};
use trirec::{
    binomials::binomial_quotient, classify_galois, gaussian_binomial,
    gaussian_cyclotomic_factorization, generalized_binomial, phi_coeff_formula, phi_product,
    quadratic_factor, GaloisGroup, GridSpec, RationalPoly, RecurrenceParams, SequenceTable,
};

use crate::{CliError, OutputFormat};

pub struct Rendered {
    command: &'static str,
    params: Value,
    records: Vec<Value>,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    plain: String,
}

impl Rendered {
    pub fn write(
        &self,
        format: OutputFormat,
        timestamps: bool,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> Result<(), CliError> {
        let meta = timestamps.then(|| {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            json!({ "generated_at_unix": secs, "version": env!("CARGO_PKG_VERSION") })
        });
        match format {
            OutputFormat::Json => {
                let mut doc = Map::new();
                doc.insert("command".into(), json!(self.command));
                doc.insert("params".into(), self.params.clone());
                doc.insert("records".into(), Value::Array(self.records.clone()));
                if let Some(m) = meta {
                    doc.insert("meta".into(), m);
                }
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)?;
            }
            OutputFormat::Csv => {
                // metadata stays off the data stream
                if let Some(m) = meta {
                    writeln!(err, "meta: {m}")?;
                }
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            OutputFormat::Plain => {
                if let Some(m) = meta {
                    writeln!(out, "# meta: {m}")?;
                }
                out.write_all(self.plain.as_bytes())?;
            }
        }
        Ok(())
    }
}

fn params_json(params: &RecurrenceParams) -> Value {
    json!({ "p": params.p().to_string(), "q": params.q().to_string() })
}

fn poly_list(poly: &RationalPoly) -> String {
    let items: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", items.join(", "))
}

pub fn seq(params: &RecurrenceParams, n_max: usize) -> Rendered {
    let mut table = SequenceTable::new(params.clone());
    table.ensure(n_max);
    let rows: Vec<[String; 3]> = (0..=n_max)
        .map(|n| [n.to_string(), table.u(n).to_string(), table.w(n).to_string()])
        .collect();
    let widths: Vec<usize> = (0..3)
        .map(|c| rows.iter().map(|r| r[c].len()).chain([3]).max().unwrap_or(3))
        .collect();
    let mut plain = format!(
        "{:>a$}  {:>b$}  {:>c$}\n",
        "n",
        "u_n",
        "w_n",
        a = widths[0],
        b = widths[1],
        c = widths[2]
    );
    for r in &rows {
        plain.push_str(&format!(
            "{:>a$}  {:>b$}  {:>c$}\n",
            r[0],
            r[1],
            r[2],
            a = widths[0],
            b = widths[1],
            c = widths[2]
        ));
    }
    Rendered {
        command: "seq",
        params: json!({ "p": params.p().to_string(), "q": params.q().to_string(), "n_max": n_max }),
        records: rows
            .iter()
            .enumerate()
            .map(|(n, r)| json!({ "n": n, "u": r[1], "w": r[2] }))
            .collect(),
        header: vec!["n", "u", "w"],
        rows: rows.into_iter().map(Vec::from).collect(),
        plain,
    }
}

struct Part {
    name: &'static str,
    index: String,
    value: String,
}

fn part_records(parts: &[Part]) -> (Vec<Value>, Vec<Vec<String>>) {
    let records = parts
        .iter()
        .map(|p| json!({ "part": p.name, "index": p.index, "value": p.value }))
        .collect();
    let rows = parts
        .iter()
        .map(|p| vec![p.name.to_string(), p.index.clone(), p.value.clone()])
        .collect();
    (records, rows)
}

fn coefficient_parts(name: &'static str, poly: &RationalPoly, out: &mut Vec<Part>) {
    for (i, c) in poly.coeffs().iter().enumerate() {
        out.push(Part {
            name,
            index: i.to_string(),
            value: c.to_string(),
        });
    }
}

pub fn phi(params: &RecurrenceParams, n: usize, factor: bool) -> Result<Rendered, CliError> {
    let product = phi_product(params, n)?;
    let formula = phi_coeff_formula(params, n)?;
    if product != formula {
        return Err(CliError::CrossCheck(format!(
            "Phi_{n}: root product {} differs from coefficient formula {}",
            poly_list(&product),
            poly_list(&formula)
        )));
    }
    let mut parts = Vec::new();
    coefficient_parts("phi", &product, &mut parts);
    let mut plain = format!("{}\nPhi_{n}(x) = {product}\n", poly_list(&product));

    if factor {
        let galois = classify_galois(params)?;
        let group = match galois.group {
            GaloisGroup::Z2 => "Z2",
            GaloisGroup::Trivial => "trivial",
            GaloisGroup::Degenerate => "degenerate",
        };
        plain.push_str(&format!("galois group: {group} (d = {})\n", galois.d));
        parts.push(Part {
            name: "galois_group",
            index: String::new(),
            value: group.to_string(),
        });
        parts.push(Part {
            name: "galois_d",
            index: String::new(),
            value: galois.d.to_string(),
        });
        if n >= 1 {
            let f = quadratic_factor(params, n)?;
            let divides = product.div_rem(&f)?.1.is_zero();
            plain.push_str(&format!("f_{n}(x) = {f}\nf_{n} divides Phi_{n}: {divides}\n"));
            coefficient_parts("f_n", &f, &mut parts);
            parts.push(Part {
                name: "f_n_divides",
                index: String::new(),
                value: divides.to_string(),
            });
        }
        if *params == RecurrenceParams::fibonacci() && n >= 2 {
            let fib = fibonacci_factorization(n)?;
            let sign = if fib.sign > 0 { "+" } else { "-" };
            plain.push_str(&format!(
                "Phi_{n}(x) = {sign}({}) * ({})\n",
                fib.quadratic, fib.tail
            ));
            coefficient_parts("fibonacci_quadratic", &fib.quadratic, &mut parts);
            coefficient_parts("fibonacci_tail", &fib.tail, &mut parts);
            parts.push(Part {
                name: "fibonacci_sign",
                index: String::new(),
                value: fib.sign.to_string(),
            });
        }
    }

    let (records, rows) = part_records(&parts);
    let mut p = params_json(params);
    p["n"] = json!(n);
    p["factor"] = json!(factor);
    Ok(Rendered {
        command: "phi",
        params: p,
        records,
        header: vec!["part", "index", "value"],
        rows,
        plain,
    })
}

pub fn binom(params: &RecurrenceParams, r: usize, k: usize) -> Result<Rendered, CliError> {
    let quotient = binomial_quotient(params, r, k)?;
    let value = generalized_binomial(params, r, k)?;
    if let Some(qv) = &quotient {
        if *qv != value {
            return Err(CliError::CrossCheck(format!(
                "({r}|{k})_u: polynomial evaluation {value} differs from quotient {qv}"
            )));
        }
    }
    let quotient_str = quotient.as_ref().map(|q| q.to_string());
    let mut plain = format!("({r}|{k})_u = {value}\n");
    if quotient.is_none() {
        plain.push_str("quotient form not applicable: some u_i with 1 <= i <= k is zero\n");
    }
    let mut p = params_json(params);
    p["r"] = json!(r);
    p["k"] = json!(k);
    Ok(Rendered {
        command: "binom",
        params: p,
        records: vec![json!({ "r": r, "k": k, "value": value.to_string(), "quotient": quotient_str })],
        header: vec!["r", "k", "value", "quotient"],
        rows: vec![vec![
            r.to_string(),
            k.to_string(),
            value.to_string(),
            quotient_str.unwrap_or_default(),
        ]],
        plain,
    })
}

pub fn gauss(m: usize, k: usize, cyclotomic: bool) -> Result<Rendered, CliError> {
    let poly = gaussian_binomial(m, k)?;
    let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    let mut plain = format!("[{}]\n", coeffs.join(","));
    let mut parts: Vec<Part> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| Part {
            name: "coefficient",
            index: i.to_string(),
            value: c.clone(),
        })
        .collect();
    if cyclotomic {
        let factors = gaussian_cyclotomic_factorization(m, k)?;
        let listed: Vec<String> = factors.iter().map(|f| format!("({}, {})", f.d, f.exponent)).collect();
        plain.push_str(&format!("cyclotomic factors (d, e_d): [{}]\n", listed.join(", ")));
        parts.extend(factors.iter().map(|f| Part {
            name: "cyclotomic",
            index: f.d.to_string(),
            value: f.exponent.to_string(),
        }));
    }
    let (records, rows) = part_records(&parts);
    Ok(Rendered {
        command: "gauss",
        params: json!({ "m": m, "k": k, "cyclotomic": cyclotomic }),
        records,
        header: vec!["part", "index", "value"],
        rows,
        plain,
    })
}

const VERIFY_HEADER: [&str; 17] = [
    "identity_id",
    "diagnostic",
    "kind",
    "p",
    "q",
    "n_start",
    "n_end",
    "a_start",
    "a_end",
    "status",
    "cells_checked",
    "cells_skipped",
    "counterexample_n",
    "counterexample_a",
    "counterexample_lhs",
    "counterexample_rhs",
    "skip_reason",
];

fn verify_row(r: &IdentityReport) -> Vec<String> {
    let p = r.params.recurrence();
    let kind = match r.params {
        trirec::identities::ReportParams::Fibonacci => "fibonacci",
        trirec::identities::ReportParams::Grid(_) => "grid",
    };
    let status = match r.status {
        trirec::Status::Pass => "pass",
        trirec::Status::Fail => "fail",
        trirec::Status::Skipped => "skipped",
    };
    let opt = |v: Option<String>| v.unwrap_or_default();
    let cex = r.first_counterexample.as_ref();
    vec![
        r.identity_id.clone(),
        r.diagnostic.to_string(),
        kind.to_string(),
        p.p().to_string(),
        p.q().to_string(),
        r.n_range.0.to_string(),
        r.n_range.1.to_string(),
        opt(r.a_range.map(|a| a.0.to_string())),
        opt(r.a_range.map(|a| a.1.to_string())),
        status.to_string(),
        r.cells_checked.to_string(),
        r.cells_skipped.to_string(),
        opt(cex.map(|c| c.n.to_string())),
        opt(cex.and_then(|c| c.a).map(|a| a.to_string())),
        opt(cex.map(|c| c.lhs.clone())),
        opt(cex.map(|c| c.rhs.clone())),
        opt(r.skip_reason.clone()),
    ]
}

pub fn verify(grid: &GridSpec, ids: &[IdentityId], reports: &[IdentityReport]) -> Rendered {
    let rows: Vec<Vec<String>> = reports.iter().map(verify_row).collect();
    let mut plain = String::new();
    for (r, row) in reports.iter().zip(&rows) {
        let at = if row[2] == "fibonacci" {
            "fibonacci".to_string()
        } else {
            format!("p={} q={}", row[3], row[4])
        };
        let range = match r.a_range {
            Some((a0, a1)) => format!("n={}..{} a={a0}..{a1}", r.n_range.0, r.n_range.1),
            None => format!("n={}..{}", r.n_range.0, r.n_range.1),
        };
        let tag = if r.diagnostic { " [diagnostic]" } else { "" };
        plain.push_str(&format!(
            "{:<7} {}{tag} {at} {range} checked={} skipped={}",
            row[9].to_uppercase(),
            r.identity_id,
            r.cells_checked,
            r.cells_skipped
        ));
        if let Some(c) = &r.first_counterexample {
            match c.a {
                Some(a) => plain.push_str(&format!(" first counterexample n={} a={a}:", c.n)),
                None => plain.push_str(&format!(" first counterexample n={}:", c.n)),
            }
            plain.push_str(&format!(" lhs={} rhs={}", c.lhs, c.rhs));
        }
        if let Some(s) = &r.skip_reason {
            plain.push_str(&format!(" ({s})"));
        }
        plain.push('\n');
    }
    let count = |s: trirec::Status| reports.iter().filter(|r| r.status == s).count();
    plain.push_str(&format!(
        "{} records: {} pass, {} fail, {} skipped\n",
        reports.len(),
        count(trirec::Status::Pass),
        count(trirec::Status::Fail),
        count(trirec::Status::Skipped)
    ));
    let id_names: Vec<&str> = ids.iter().map(|i| i.as_str()).collect();
    Rendered {
        command: "verify",
        params: json!({
            "p_range": grid.p_range.to_string(),
            "q_range": grid.q_range.to_string(),
            "n_max": grid.n_max,
            "a_max": grid.a_max,
            "identities": id_names,
        }),
        records: reports
            .iter()
            .map(|r| serde_json::to_value(r).expect("reports serialize"))
            .collect(),
        header: VERIFY_HEADER.to_vec(),
        rows,
        plain,
    }
}
