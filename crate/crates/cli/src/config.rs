//! Settings layering: command-line flags over a key-value config file over
//! built-in defaults.
//!
//! The config file is plain text, one `key = value` per line, `#` comments:
//!
//! ```text
//! exclude = test, e2e, vendor
//! extension = py
//! stop_words = stops.txt      # relative to the config file
//! max_failure_rate = 0.05
//! jobs = 4
//! follow_symlinks = false
//! svg = true
//! duplicate_threshold = 0.5
//! zero_threshold = 0.3
//! out = reports
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use docscore::corpus::{DEFAULT_EXCLUDE_MARKERS, DEFAULT_EXTENSION};
use docscore::{BigRational, Exact, StopWordList};

pub const CONFIG_ENV: &str = "DOCSCORE_CONFIG";

const KEYS: [&str; 10] = [
    "exclude",
    "extension",
    "stop_words",
    "max_failure_rate",
    "jobs",
    "follow_symlinks",
    "svg",
    "duplicate_threshold",
    "zero_threshold",
    "out",
];

/// Raw key-value pairs read from a config file.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
    base: PathBuf,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, base).with_context(|| format!("in config file {}", path.display()))
    }

    pub fn parse(text: &str, base: PathBuf) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`", i + 1))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                bail!("line {}: unknown key `{key}`", i + 1);
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(ConfigFile { values, base })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(|v| self.base.join(v))
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub exclude: Option<Vec<String>>,
    pub extension: Option<String>,
    pub stop_words: Option<PathBuf>,
    pub max_failure_rate: Option<String>,
    pub jobs: Option<usize>,
    pub follow_symlinks: bool,
    pub svg: bool,
    pub duplicate_threshold: Option<String>,
    pub zero_threshold: Option<String>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub exclude: Vec<String>,
    pub extension: String,
    pub stop_words: StopWordList,
    pub stop_words_source: Option<PathBuf>,
    pub max_failure_rate: Exact,
    pub jobs: Option<usize>,
    pub follow_symlinks: bool,
    pub svg: bool,
    pub duplicate_threshold: Exact,
    pub zero_threshold: Exact,
    pub out: PathBuf,
}

pub const DEFAULT_MAX_FAILURE_RATE: &str = "0.1";
pub const DEFAULT_OUT: &str = "docscore-out";

/// Parses a plain decimal like `0.05` or `1` into an exact rational.
pub fn parse_decimal(text: &str) -> Result<Exact> {
    let text = text.trim();
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let valid = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !valid(int) || !valid(frac) {
        bail!("`{text}` is not a non-negative decimal number");
    }
    let digits = format!("{int}{frac}");
    let numer: num_bigint::BigInt = digits.parse().unwrap_or_default();
    let denom = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(numer, denom))
}

fn parse_fraction(text: &str, what: &str) -> Result<Exact> {
    let value = parse_decimal(text).with_context(|| format!("invalid {what}"))?;
    if value > BigRational::from_integer(1.into()) {
        bail!("invalid {what}: `{text}` is greater than 1");
    }
    Ok(value)
}

fn parse_bool(text: &str, key: &str) -> Result<bool> {
    match text.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => bail!("invalid boolean for `{key}`: `{text}`"),
    }
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_lowercase())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Loads the config file named by `explicit`, else by the environment
/// variable, else none.
pub fn load_config(explicit: Option<&Path>) -> Result<ConfigFile> {
    match explicit {
        Some(path) => ConfigFile::load(path),
        None => match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => ConfigFile::load(Path::new(&path)),
            _ => Ok(ConfigFile::default()),
        },
    }
}

pub fn resolve(file: &ConfigFile, flags: &Overrides) -> Result<Settings> {
    let exclude = match (&flags.exclude, file.get("exclude")) {
        (Some(list), _) => list.iter().flat_map(|s| split_list(s)).collect(),
        (None, Some(text)) => split_list(text),
        (None, None) => DEFAULT_EXCLUDE_MARKERS.iter().map(|s| s.to_string()).collect(),
    };
    let extension = flags
        .extension
        .clone()
        .or_else(|| file.get("extension").map(str::to_string))
        .unwrap_or_else(|| DEFAULT_EXTENSION.to_string())
        .trim_start_matches('.')
        .to_string();
    let stop_words_source = flags.stop_words.clone().or_else(|| file.path("stop_words"));
    let stop_words = match &stop_words_source {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read stop-word file {}", path.display()))?;
            StopWordList::parse(&text)
        }
        None => StopWordList::default(),
    };
    let max_failure_rate = parse_fraction(
        flags
            .max_failure_rate
            .as_deref()
            .or(file.get("max_failure_rate"))
            .unwrap_or(DEFAULT_MAX_FAILURE_RATE),
        "max failure rate",
    )?;
    let jobs = match (flags.jobs, file.get("jobs")) {
        (Some(n), _) => Some(n),
        (None, Some(text)) => Some(text.parse::<usize>().with_context(|| format!("invalid jobs `{text}`"))?),
        (None, None) => None,
    };
    if jobs == Some(0) {
        bail!("jobs must be at least 1");
    }
    let follow_symlinks = flags.follow_symlinks
        || file
            .get("follow_symlinks")
            .map(|v| parse_bool(v, "follow_symlinks"))
            .transpose()?
            .unwrap_or(false);
    let svg = flags.svg || file.get("svg").map(|v| parse_bool(v, "svg")).transpose()?.unwrap_or(false);
    let duplicate_threshold = parse_fraction(
        flags
            .duplicate_threshold
            .as_deref()
            .or(file.get("duplicate_threshold"))
            .unwrap_or("0.5"),
        "duplicate threshold",
    )?;
    let zero_threshold = parse_fraction(
        flags
            .zero_threshold
            .as_deref()
            .or(file.get("zero_threshold"))
            .unwrap_or("0.3"),
        "zero threshold",
    )?;
    let out = flags
        .out
        .clone()
        .or_else(|| file.path("out"))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    Ok(Settings {
        exclude,
        extension,
        stop_words,
        stop_words_source,
        max_failure_rate,
        jobs,
        follow_symlinks,
        svg,
        duplicate_threshold,
        zero_threshold,
        out,
    })
}
