//! `--config <file>` support.
//!
//! The file holds `key = value` lines whose keys are the flag names without
//! dashes (`p`, `q-range`, `n-max`, `format`, ...). `#` starts a comment.
//! Boolean flags take `true` or `false`. Values from the file are spliced
//! into the argument list right after the subcommand, and only for flags the
//! command line does not already set, so explicit flags always win.

use std::fs;
use std::path::Path;

use crate::CliError;

const SUBCOMMANDS: [&str; 5] = ["seq", "phi", "binom", "gauss", "verify"];
const BOOLEAN_KEYS: [&str; 4] = ["factor", "cyclotomic", "strict-diagnostics", "timestamps"];

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let key = k.trim().trim_start_matches('-').to_string();
        if key.is_empty() || key == "config" {
            return Err(CliError::Config(format!("line {}: invalid key {:?}", lineno + 1, k.trim())));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

fn flag_for(key: &str) -> String {
    if key.len() == 1 {
        format!("-{key}")
    } else {
        format!("--{key}")
    }
}

fn user_sets(args: &[String], key: &str) -> bool {
    let flag = flag_for(key);
    args.iter().any(|a| {
        if key.len() == 1 {
            a.starts_with(&flag) && !a.starts_with("--")
        } else {
            *a == flag || a.starts_with(&format!("{flag}="))
        }
    })
}

/// Finds `--config` in `args`, reads the file and returns the argument list
/// with the file's settings merged in.
pub fn apply_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or_else(|| CliError::Config("--config needs a file".into()))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))?;
    let entries = parse_config(&text)?;

    let mut extra = Vec::new();
    for (key, value) in entries {
        if user_sets(&rest, &key) {
            continue;
        }
        if BOOLEAN_KEYS.contains(&key.as_str()) {
            match value.as_str() {
                "true" => extra.push(flag_for(&key)),
                "false" => {}
                _ => return Err(CliError::Config(format!("{key} expects true or false"))),
            }
        } else {
            extra.push(format!("{}={}", flag_for(&key), value));
        }
    }

    // splice after the subcommand so subcommand-level flags are accepted
    let mut i = 1;
    while i < rest.len() {
        let a = rest[i].as_str();
        if SUBCOMMANDS.contains(&a) {
            break;
        }
        i += if a == "--format" { 2 } else { 1 };
    }
    let at = (i + 1).min(rest.len());
    rest.splice(at..at, extra);
    Ok(rest)
}
