use std::collections::BTreeMap;
use std::path::PathBuf;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {message}")]
    BadValue { key: String, message: String },
    #[error("missing `{0}`")]
    Missing(&'static str),
}

pub const KEYS: &[&str] = &[
    "command",
    "poly",
    "p",
    "a",
    "m",
    "prec_p",
    "prec_t",
    "deg_s",
    "basis",
    "hodge_depth",
    "k",
    "seed",
    "samples",
    "r_max",
    "override_nondegenerate",
    "what",
    "out",
];

/// Parse `key = value` lines. Blank lines and `#` comments are skipped;
/// keys may use `-` or `_`; a key may appear only once.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.find('#') {
            Some(j) => &raw[..j],
            None => raw,
        }
        .trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                message: "expected `key = value`".into(),
            });
        };
        let key = key.trim().replace('-', "_");
        if key.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                message: "empty key".into(),
            });
        }
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey(key));
        }
        if let Some(prev) = seen.insert(key.clone(), line) {
            return Err(ConfigError::Syntax {
                line,
                message: format!("`{key}` already set on line {prev}"),
            });
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hodge,
    Sum,
    Lfun,
    Cfun,
    Np,
    Dwork,
    Verify,
    Congruence,
    Survey,
    Faces,
}

impl Command {
    pub const ALL: [(&'static str, Command); 10] = [
        ("hodge", Command::Hodge),
        ("sum", Command::Sum),
        ("lfun", Command::Lfun),
        ("cfun", Command::Cfun),
        ("np", Command::Np),
        ("dwork", Command::Dwork),
        ("verify", Command::Verify),
        ("congruence", Command::Congruence),
        ("survey", Command::Survey),
        ("faces", Command::Faces),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, c)| *c == self).unwrap().0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Trace,
    Char,
    Ordinary,
    Facial,
}

/// Everything a run needs, after defaults and validation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub poly: String,
    pub p: u64,
    pub a: u32,
    pub m: Vec<u32>,
    pub prec_p: u32,
    pub prec_t: usize,
    pub deg_s: usize,
    pub basis: Option<Ratio<i64>>,
    pub hodge_depth: Option<i64>,
    pub k: Option<Vec<u32>>,
    pub seed: u64,
    pub samples: u64,
    pub r_max: u32,
    pub override_nondegenerate: bool,
    pub what: Check,
    pub out: Option<PathBuf>,
}

fn bad(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        message: message.into(),
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| bad(key, format!("`{v}` is not a valid number")))
}

/// `3`, `1,2,5` or an inclusive range `1..4`.
pub fn parse_list(key: &str, v: &str) -> Result<Vec<u32>, ConfigError> {
    let mut out = Vec::new();
    for part in v.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u32 = num(key, lo.trim())?;
            let hi: u32 = num(key, hi.trim())?;
            if lo > hi || hi - lo > 1000 {
                return Err(bad(key, format!("range `{part}` is empty or too long")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(key, part)?);
        }
    }
    if out.is_empty() {
        return Err(bad(key, "empty list"));
    }
    Ok(out)
}

fn parse_ratio(key: &str, v: &str) -> Result<Ratio<i64>, ConfigError> {
    let (n, d) = match v.split_once('/') {
        Some((n, d)) => (num::<i64>(key, n.trim())?, num::<i64>(key, d.trim())?),
        None => (num::<i64>(key, v)?, 1),
    };
    if d <= 0 || n < 0 {
        return Err(bad(key, "expected a non-negative fraction"));
    }
    Ok(Ratio::new(n, d))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "yes" | "1" | "" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(key, format!("`{v}` is not a boolean"))),
    }
}

impl RunConfig {
    /// Build from `(key, value)` pairs; later pairs override earlier ones,
    /// so pass the config file first and the flags after it.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self, ConfigError> {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in pairs {
            let k = k.as_str();
            if !KEYS.contains(&k) {
                return Err(ConfigError::UnknownKey(k.to_string()));
            }
            map.insert(k, v.as_str());
        }
        let get = |k: &str| map.get(k).copied();

        let command = match get("command") {
            None => return Err(ConfigError::Missing("command")),
            Some(v) => Command::ALL
                .iter()
                .find(|(n, _)| *n == v)
                .map(|(_, c)| *c)
                .ok_or_else(|| bad("command", format!("unknown command `{v}`")))?,
        };
        let poly = get("poly").ok_or(ConfigError::Missing("poly"))?.to_string();
        let p: u64 = num("p", get("p").ok_or(ConfigError::Missing("p"))?)?;
        let a: u32 = get("a").map(|v| num("a", v)).transpose()?.unwrap_or(1);
        if a == 0 {
            return Err(bad("a", "must be at least 1"));
        }
        let m = get("m").map(|v| parse_list("m", v)).transpose()?.unwrap_or_else(|| vec![1]);
        if m.contains(&0) {
            return Err(bad("m", "levels start at 1"));
        }
        let prec_p = get("prec_p").map(|v| num("prec_p", v)).transpose()?.unwrap_or(10);
        let prec_t = get("prec_t").map(|v| num("prec_t", v)).transpose()?.unwrap_or(12);
        if prec_p == 0 || prec_t == 0 {
            return Err(bad("prec_p", "precisions must be positive"));
        }
        let deg_s = get("deg_s").map(|v| num("deg_s", v)).transpose()?.unwrap_or(4);
        let basis = get("basis").map(|v| parse_ratio("basis", v)).transpose()?;
        let hodge_depth = get("hodge_depth").map(|v| num("hodge_depth", v)).transpose()?;
        if hodge_depth.is_some_and(|k: i64| !(0..=10_000).contains(&k)) {
            return Err(bad("hodge_depth", "must be between 0 and 10000"));
        }
        let k = get("k").map(|v| parse_list("k", v)).transpose()?;
        if k.as_ref().is_some_and(|ks| ks.contains(&0)) {
            return Err(bad("k", "k starts at 1"));
        }
        let seed = get("seed").map(|v| num("seed", v)).transpose()?.unwrap_or(0);
        let samples = get("samples").map(|v| num("samples", v)).transpose()?.unwrap_or(20);
        let r_max = get("r_max").map(|v| num("r_max", v)).transpose()?.unwrap_or(2);
        let override_nondegenerate = get("override_nondegenerate")
            .map(|v| parse_bool("override_nondegenerate", v))
            .transpose()?
            .unwrap_or(false);
        let what = match get("what").unwrap_or("trace") {
            "trace" => Check::Trace,
            "char" => Check::Char,
            "ordinary" => Check::Ordinary,
            "facial" => Check::Facial,
            v => return Err(bad("what", format!("`{v}` is not one of trace, char, ordinary, facial"))),
        };
        let out = get("out").map(PathBuf::from);
        Ok(RunConfig {
            command,
            poly,
            p,
            a,
            m,
            prec_p,
            prec_t,
            deg_s,
            basis,
            hodge_depth,
            k,
            seed,
            samples,
            r_max,
            override_nondegenerate,
            what,
            out,
        })
    }
}
