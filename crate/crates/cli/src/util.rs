//! Parsing of flag values, output emission and the result cache.

use crate::args::{Format, RunConfig};
use drinfeld::{Error, PolyA, PrimeP, Result};
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;

pub fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::pre(format!("missing --{flag}")))
}

impl RunConfig {
    pub fn q(&self) -> Result<u32> {
        let q = need(&self.q, "q")?;
        if !drinfeld::poly_a::is_prime(q) {
            return Err(Error::pre(format!("q = {q} must be prime")));
        }
        Ok(q)
    }

    pub fn rank(&self) -> Result<usize> {
        match need(&self.rank, "rank")? {
            0 => Err(Error::pre("rank must be positive")),
            r => Ok(r),
        }
    }

    pub fn place(&self) -> Result<PrimeP> {
        PrimeP::parse(self.q()?, &need(&self.place, "place")?)
    }

    pub fn level(&self) -> Result<PolyA> {
        monic(self.q()?, &need(&self.level, "level")?)
    }

    /// Primes from `--primes`, or all primes up to `--prime-degree-max` other than `t`,
    /// `P` and the divisors of the level.
    pub fn primes(&self, place: Option<&PrimeP>, level: Option<&PolyA>) -> Result<Vec<PrimeP>> {
        let q = self.q()?;
        if let Some(list) = &self.primes {
            return list.split(',').filter(|s| !s.trim().is_empty()).map(|s| PrimeP::parse(q, s.trim())).collect();
        }
        let d = need(&self.prime_degree_max, "primes or --prime-degree-max")?;
        Ok(drinfeld::primes_up_to(q, d)
            .into_iter()
            .filter(|w| Some(w) != place && level.is_none_or(|n| !n.rem(w.poly()).is_zero()))
            .collect())
    }

    pub fn weights(&self) -> Result<Vec<usize>> {
        match (&self.weights, self.weight) {
            (Some(w), _) => parse_range(w),
            (None, Some(k)) => Ok(vec![k]),
            (None, None) => Err(Error::pre("missing --weight or --weights")),
        }
    }

    pub fn cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir.clone().or_else(|| std::env::var_os("DRINFELD_CACHE_DIR").map(PathBuf::from))
    }
}

/// Parses a polynomial in `t` and normalizes it to be monic.
pub fn monic(q: u32, s: &str) -> Result<PolyA> {
    let a = PolyA::parse(q, s)?;
    if a.is_zero() {
        return Err(Error::pre("zero polynomial"));
    }
    Ok(a.monic())
}

/// "1,3,4" or "1-6" (ranges may be mixed with single values).
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::pre(format!("malformed weight list {s:?}"));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

pub fn parse_ints<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| Error::pre(format!("malformed {what}: {p:?}"))))
        .collect()
}

/// Flattens JSON into `(path, value)` rows.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn render(v: &Value, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec(v).map_err(|e| Error::consistency(e.to_string()))?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::consistency(e.to_string());
            w.write_record(["path", "value"]).map_err(io)?;
            for (k, x) in rows {
                w.write_record([k, x]).map_err(io)?;
            }
            w.into_inner().map_err(|e| Error::consistency(e.to_string()))
        }
    }
}

pub fn emit(v: &Value, cfg: &RunConfig) -> Result<()> {
    let bytes = render(v, cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Error::pre(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout().write_all(&bytes).map_err(|e| Error::pre(e.to_string())),
    }
}

/// Reads `key` from the cache directory, or computes and stores it.
pub fn cached<F: FnOnce() -> Result<Value>>(cfg: &RunConfig, key: &str, compute: F) -> Result<Value> {
    let Some(dir) = cfg.cache_dir() else { return compute() };
    let path = dir.join(format!("{key}.json"));
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(v) = serde_json::from_slice(&bytes) {
            log::info!("cache hit {}", path.display());
            return Ok(v);
        }
    }
    let v = compute()?;
    if std::fs::create_dir_all(&dir).is_ok() {
        let _ = std::fs::write(&path, serde_json::to_vec(&v).unwrap_or_default());
    }
    Ok(v)
}

pub fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}
