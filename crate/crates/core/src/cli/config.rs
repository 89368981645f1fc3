//! Run configuration: flags override a key=value file, which overrides defaults.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::CliError;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "HCONTRACT_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A comma-separated list, e.g. `16,64,256`.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let items = s
            .split(',')
            .map(|x| x.trim())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<T>().map_err(|e| format!("bad list item '{x}': {e}")))
            .collect::<Result<Vec<T>, _>>()?;
        if items.is_empty() {
            return Err(format!("empty list '{s}'"));
        }
        Ok(List(items))
    }
}

/// An inclusive range `a:b`, or a single value `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad range bound '{x}': {e}"))
        };
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok(Span { lo, hi })
    }
}

impl Span {
    /// Every integer in the range.
    pub fn all(&self) -> Vec<u64> {
        (self.lo..=self.hi).collect()
    }

    /// `lo, 2lo, 4lo, …` up to `hi`, with `hi` appended if missed.
    pub fn dyadic(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut x = self.lo.max(1);
        while x <= self.hi {
            out.push(x);
            x *= 2;
        }
        if out.last() != Some(&self.hi) {
            out.push(self.hi);
        }
        out
    }
}

/// Resolved settings for one invocation.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub format: Format,
    pub output: Option<PathBuf>,
    /// Reserved; every default computation is deterministic.
    pub seed: Option<u64>,
    file: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(
        format: Option<Format>,
        output: Option<PathBuf>,
        seed: Option<u64>,
        config: Option<&Path>,
    ) -> Result<Self, CliError> {
        let file = match config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                parse_file(&text)?
            }
            None => BTreeMap::new(),
        };
        let mut rc = RunConfig {
            format: Format::Csv,
            output: None,
            seed: None,
            file,
        };
        rc.format = rc.pick(format, "format", Format::Csv)?;
        rc.output = match output {
            Some(p) => Some(p),
            None => rc.file.get("output").map(PathBuf::from),
        };
        rc.seed = match seed {
            Some(s) => Some(s),
            None => rc.lookup("seed")?,
        };
        Ok(rc)
    }

    fn lookup<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key '{key}': {e}"))),
        }
    }

    /// Flag value, else config file entry, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.lookup(key)?.unwrap_or(default)),
        }
    }

    /// Flag value, else config file entry, else `None`.
    pub fn optional<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.lookup(key),
        }
    }

    /// Like [`RunConfig::pick`] for settings without a default.
    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(v),
            None => self
                .lookup(key)?
                .ok_or_else(|| CliError::Usage(format!("missing required setting --{key}"))),
        }
    }

    /// Quadrature node count; at least 32.
    pub fn nodes(&self, flag: Option<usize>, key: &str, default: usize) -> Result<usize, CliError> {
        let v = self.pick(flag, key, default)?;
        if v < 32 {
            return Err(CliError::Usage(format!("--{key} must be at least 32, got {v}")));
        }
        Ok(v)
    }

    /// Where the table goes: `--output`, else `$HCONTRACT_OUTPUT_DIR/<stem>.<ext>`,
    /// else stdout.
    pub fn destination(&self, stem: &str) -> Option<PathBuf> {
        if let Some(p) = &self.output {
            return Some(p.clone());
        }
        std::env::var_os(OUTPUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(format!("{stem}.{}", self.format.extension())))
    }
}

/// `key = value` lines; `#` starts a comment. Keys use flag spelling
/// without the leading dashes.
pub fn parse_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().trim_start_matches("--").to_string();
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}
