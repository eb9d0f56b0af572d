//! `key = value` configuration files.
//!
//! Every long option of every subcommand (except `--output` and `--config`
//! themselves) can also be supplied from a configuration file named either
//! with `--config PATH` or with the `INVPOW_CONFIG` environment variable.
//! Command-line flags win over file values; file values win over built-in
//! defaults. Unknown keys are rejected so that typos fail loudly.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::render::Format;

/// Keys a configuration file may define, mirroring the long flag names
/// (with `-` replaced by `_`).
const KNOWN_KEYS: &[&str] = &[
    "A",
    "B",
    "C",
    "D",
    "dim",
    "ell",
    "m",
    "format",
    "bracket_lo",
    "bracket_hi",
    "bracket_panels",
    "r_min",
    "r_max",
    "r_step",
    "energy_lo",
    "energy_hi",
    "residual_tol",
    "energy_rel_tol",
    "norm_tol",
    "vary",
    "lo",
    "hi",
    "steps",
    "r_lo",
    "r_hi",
    "points",
    "normalized",
    "nu",
    "x",
];

/// Parsed configuration-file contents.
#[derive(Debug, Clone)]
pub struct Settings {
    values: HashMap<String, String>,
    source: PathBuf,
}

/// Loads settings from `explicit` when given, falling back to the path in
/// `INVPOW_CONFIG`. Returns `Ok(None)` when neither names a file.
pub fn load(explicit: Option<&Path>) -> Result<Option<Settings>, String> {
    let path = match explicit {
        Some(path) => path.to_path_buf(),
        None => match std::env::var_os("INVPOW_CONFIG") {
            Some(value) if !value.is_empty() => PathBuf::from(value),
            _ => return Ok(None),
        },
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|err| format!("cannot read config file {}: {err}", path.display()))?;
    parse(&text, &path).map(Some)
}

fn parse(text: &str, source: &Path) -> Result<Settings, String> {
    let mut values = HashMap::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line = match raw_line.split_once('#') {
            Some((head, _comment)) => head,
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            format!(
                "{}:{}: expected `key = value`, got `{}`",
                source.display(),
                index + 1,
                line
            )
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(format!(
                "{}:{}: unknown configuration key `{key}`",
                source.display(),
                index + 1
            ));
        }
        values.insert(key.to_string(), value.to_string());
    }
    Ok(Settings {
        values,
        source: source.to_path_buf(),
    })
}

impl Settings {
    fn raw(&self, key: &str) -> Option<&str> {
        debug_assert!(KNOWN_KEYS.contains(&key), "lookup of unlisted key {key}");
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str, kind: &str) -> Result<Option<T>, String> {
        match self.raw(key) {
            None => Ok(None),
            Some(text) => text.parse::<T>().map(Some).map_err(|_| {
                format!(
                    "{}: key `{key}` expects {kind}, got `{text}`",
                    self.source.display()
                )
            }),
        }
    }

    /// Unparsed value, for keys whose type lives outside this module.
    pub fn text(&self, key: &str) -> Option<&str> {
        self.raw(key)
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, String> {
        self.parsed(key, "a number")
    }

    pub fn u32(&self, key: &str) -> Result<Option<u32>, String> {
        self.parsed(key, "a non-negative integer")
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, String> {
        self.parsed(key, "a non-negative integer")
    }

    pub fn bool(&self, key: &str) -> Result<Option<bool>, String> {
        match self.raw(key) {
            None => Ok(None),
            Some("true") => Ok(Some(true)),
            Some("false") => Ok(Some(false)),
            Some(other) => Err(format!(
                "{}: key `{key}` expects true or false, got `{other}`",
                self.source.display()
            )),
        }
    }

    pub fn format(&self, key: &str) -> Result<Option<Format>, String> {
        match self.raw(key) {
            None => Ok(None),
            Some("table") => Ok(Some(Format::Table)),
            Some("csv") => Ok(Some(Format::Csv)),
            Some("json-lines") => Ok(Some(Format::JsonLines)),
            Some(other) => Err(format!(
                "{}: key `{key}` expects table, csv, or json-lines, got `{other}`",
                self.source.display()
            )),
        }
    }
}
