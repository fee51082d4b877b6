//! Plain-text configuration files: one `key = value` pair per line, `#`
//! comments and blank lines ignored. Keys use the long flag names
//! (`alpha`, `lambda-max`, ...). Values from the file fill in flags the
//! user did not pass; explicit flags always win.

use std::collections::BTreeMap;
use std::path::Path;

use crate::errors::{usage, CliError, Result};

/// Every key a config file may set. Anything else is rejected so typos
/// fail loudly instead of being silently ignored.
const KNOWN_KEYS: &[&str] = &[
    "alpha",
    "h",
    "c",
    "lambda-max",
    "unbounded",
    "k",
    "tau",
    "tau-strategy",
    "operator",
    "n",
    "p",
    "entries",
    "out",
    "full",
];

#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            usage(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(usage(format!(
                    "config line {} is not `key = value`: {raw:?}",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(usage(format!(
                    "config line {}: unknown key {key:?} (known keys: {})",
                    lineno + 1,
                    KNOWN_KEYS.join(", ")
                )));
            }
            values.insert(key, value);
        }
        Ok(FileConfig { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => s.parse::<T>().map(Some).map_err(|_| {
                usage(format!("config key {key} has unparsable value {s:?}"))
            }),
        }
    }

    /// Flag value if given, else config value, else `None`.
    pub fn f64(&self, flag: Option<f64>, key: &str) -> Result<Option<f64>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.parsed::<f64>(key),
        }
    }

    pub fn u32(&self, flag: Option<u32>, key: &str) -> Result<Option<u32>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.parsed::<u32>(key),
        }
    }

    pub fn string(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.raw(key).map(str::to_string))
    }

    pub fn flag_true(&self, flag: bool, key: &str) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        match self.raw(key) {
            None => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(other) => Err(usage(format!(
                "config key {key} must be a boolean, got {other:?}"
            ))),
        }
    }
}

/// `--k` accepts a single order (`12`) or an inclusive range (`5:40`).
pub fn parse_k_range(text: &str) -> Result<(u32, u32)> {
    let bad = |t: &str| -> CliError {
        usage(format!(
            "k must be a positive integer or inclusive range a:b, got {t:?}"
        ))
    };
    let (lo, hi) = match text.split_once(':') {
        Some((a, b)) => {
            let lo: u32 = a.trim().parse().map_err(|_| bad(text))?;
            let hi: u32 = b.trim().parse().map_err(|_| bad(text))?;
            (lo, hi)
        }
        None => {
            let k: u32 = text.trim().parse().map_err(|_| bad(text))?;
            (k, k)
        }
    };
    if lo == 0 || hi == 0 {
        return Err(usage(format!(
            "k must be at least 1 (approximation orders start at one pole), got {text:?}"
        )));
    }
    if lo > hi {
        return Err(usage(format!("k range is empty: {text:?} has a > b")));
    }
    Ok((lo, hi))
}

/// Shared domain checks; every message names the offending parameter.
pub fn check_alpha(alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && 0.0 < alpha && alpha < 1.0) {
        return Err(usage(format!(
            "alpha must lie strictly inside (0, 1), got {alpha}"
        )));
    }
    Ok(alpha)
}

pub fn check_positive(value: f64, name: &str) -> Result<f64> {
    if !(value.is_finite() && value > 0.0) {
        return Err(usage(format!("{name} must be a positive finite number, got {value}")));
    }
    Ok(value)
}
