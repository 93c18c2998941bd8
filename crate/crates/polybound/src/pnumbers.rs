//! P-numbers: the potential-independent constants of the pure-power
//! representation.
//!
//! A pure-power eigenvalue eps of -Delta + r^q determines
//! P = eps^{(2+q)/2q} (2/(2+q))^{1/q} (q/(2+q))^{1/2}, and conversely
//! eps = min_{r>0} [1/r^2 + (P r)^q]. P depends only on (q, n, l, d), never
//! on the coupling, which is what makes the semiclassical bound formulas
//! work. Closed forms exist for q = 2 and q = -1; everything else comes from
//! the radial solver and is cached, or from the explicit Gamma-function
//! sandwich for ground states.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radial;
use crate::special::ln_gamma;
use crate::types::{SolverConfig, StateIndex};

/// How a P-number was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PSource {
    ClosedForm,
    Numeric,
    GammaLower,
    GammaUpper,
}

/// A P-number with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PNumberRecord {
    pub q: f64,
    pub state: StateIndex,
    #[serde(rename = "P")]
    pub p: f64,
    pub source: PSource,
    /// Pure-power eigenvalue the record came from; present iff numeric.
    pub epsilon: Option<f64>,
}

/// P from a pure-power eigenvalue (q > 0).
pub fn p_from_energy(q: f64, epsilon: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!(
            "p_from_energy requires q > 0 (got {q}); the Coulomb value has its own closed form"
        )));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("p_from_energy requires epsilon > 0 (got {epsilon})")));
    }
    Ok(epsilon.powf((2.0 + q) / (2.0 * q))
        * (2.0 / (2.0 + q)).powf(1.0 / q)
        * (q / (2.0 + q)).sqrt())
}

/// Exact harmonic P: 2n + l + d/2 - 2 for d >= 2, n - 1/2 on the line.
pub fn p_harmonic(state: StateIndex) -> f64 {
    if state.d == 1 {
        state.n as f64 - 0.5
    } else {
        2.0 * state.n as f64 + state.l as f64 + state.d as f64 / 2.0 - 2.0
    }
}

/// Exact Coulomb P: n + l + d/2 - 3/2, defined for d >= 2 only.
pub fn p_coulomb(state: StateIndex) -> Result<f64> {
    if state.d < 2 {
        return Err(Error::Domain(
            "the Coulomb P-number is defined for d >= 2 only".into(),
        ));
    }
    Ok(state.n as f64 + state.l as f64 + state.d as f64 / 2.0 - 1.5)
}

/// Explicit lower approximation to the ground-state P(q) in dimension d:
/// (de/2)^{1/2} (d/(qe))^{1/q} [Gamma(1+d/2)/Gamma(1+d/q)]^{1/d}.
/// Evaluated in log space; exact at q = 2.
pub fn p_gamma_lower(q: f64, d: u32) -> Result<f64> {
    gamma_p_guard(q, d)?;
    let df = d as f64;
    let log = 0.5 * (df * std::f64::consts::E / 2.0).ln()
        + (df / (q * std::f64::consts::E)).ln() / q
        + (ln_gamma(1.0 + df / 2.0) - ln_gamma(1.0 + df / q)) / df;
    finite_exp(log, q, d)
}

/// Explicit upper approximation to the ground-state P(q) in dimension d:
/// (d/2)^{1/2} [Gamma((d+q)/2)/Gamma(d/2)]^{1/q}.
pub fn p_gamma_upper(q: f64, d: u32) -> Result<f64> {
    gamma_p_guard(q, d)?;
    let df = d as f64;
    let log = 0.5 * (df / 2.0).ln() + (ln_gamma((df + q) / 2.0) - ln_gamma(df / 2.0)) / q;
    finite_exp(log, q, d)
}

fn gamma_p_guard(q: f64, d: u32) -> Result<()> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!("gamma P approximations require q > 0 (got {q})")));
    }
    if d < 1 {
        return Err(Error::Domain("gamma P approximations require d >= 1".into()));
    }
    Ok(())
}

fn finite_exp(log: f64, q: f64, d: u32) -> Result<f64> {
    let v = log.exp();
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::GammaOverflow { q, d });
    }
    Ok(v)
}

/// Cache key: q rounded to 9 decimals plus the state and solver tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct PKey {
    q_nano: i64,
    n: u32,
    l: u32,
    d: u32,
    tol_bits: u64,
}

impl PKey {
    fn new(q: f64, state: StateIndex, abs_tol: f64) -> Self {
        PKey {
            q_nano: (q * 1e9).round() as i64,
            n: state.n,
            l: state.l,
            d: state.d,
            tol_bits: abs_tol.to_bits(),
        }
    }
}

/// On-disk record: one numeric P-number per entry of the JSON array.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheRecord {
    q: f64,
    n: u32,
    l: u32,
    d: u32,
    #[serde(rename = "P")]
    p: f64,
    source: PSource,
    epsilon: f64,
    abs_tol: f64,
}

/// Persistent store of numerically computed P-numbers.
///
/// Backed by a single JSON array. Writes go through a temporary file in the
/// same directory followed by an atomic rename, so concurrent readers always
/// see a complete document; writers are assumed single (last one wins).
#[derive(Debug, Default)]
pub struct PCache {
    entries: HashMap<PKey, PNumberRecord>,
    path: Option<PathBuf>,
}

impl PCache {
    /// Purely in-memory cache.
    pub fn in_memory() -> Self {
        PCache::default()
    }

    /// Open a file-backed cache; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut cache = PCache { entries: HashMap::new(), path: Some(path.clone()) };
        if path.exists() {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::Cache(format!("read {}: {e}", path.display())))?;
            for (rec, abs_tol) in parse_cache_json(&text)? {
                cache.entries.insert(PKey::new(rec.q, rec.state, abs_tol), rec);
            }
        }
        Ok(cache)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// All records with their solver tolerance, sorted for stable output.
    pub fn records(&self) -> Vec<(PNumberRecord, f64)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .map(|(k, r)| (*r, f64::from_bits(k.tol_bits)))
            .collect();
        v.sort_by(|x, y| {
            (x.0.q, x.0.state.d, x.0.state.l, x.0.state.n)
                .partial_cmp(&(y.0.q, y.0.state.d, y.0.state.l, y.0.state.n))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        v
    }

    /// Write the cache back (atomic replace). No-op for in-memory caches.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let mut records: Vec<CacheRecord> = self
            .entries
            .iter()
            .map(|(k, r)| CacheRecord {
                q: r.q,
                n: r.state.n,
                l: r.state.l,
                d: r.state.d,
                p: r.p,
                source: r.source,
                epsilon: r.epsilon.unwrap_or(f64::NAN),
                abs_tol: f64::from_bits(k.tol_bits),
            })
            .collect();
        records.sort_by(|a, b| {
            (a.q, a.d, a.l, a.n)
                .partial_cmp(&(b.q, b.d, b.l, b.n))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let text = serde_json::to_string_pretty(&records)
            .map_err(|e| Error::Cache(format!("encode: {e}")))?;
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("write {}: {e}", tmp.display())))?;
        fs::rename(&tmp, path)
            .map_err(|e| Error::Cache(format!("rename onto {}: {e}", path.display())))?;
        Ok(())
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    fn get(&self, key: &PKey) -> Option<PNumberRecord> {
        self.entries.get(key).copied()
    }

    fn put(&mut self, key: PKey, rec: PNumberRecord) {
        self.entries.insert(key, rec);
    }
}

/// Decode a cache document: a JSON array of numeric records with their
/// solver tolerances. Rejects non-numeric sources and invalid states.
pub fn parse_cache_json(text: &str) -> Result<Vec<(PNumberRecord, f64)>> {
    let records: Vec<CacheRecord> =
        serde_json::from_str(text).map_err(|e| Error::Cache(format!("decode: {e}")))?;
    records
        .into_iter()
        .map(|r| {
            if r.source != PSource::Numeric {
                return Err(Error::Cache(format!(
                    "cache holds a non-numeric record (q={}, n={}, l={}, d={})",
                    r.q, r.n, r.l, r.d
                )));
            }
            let state = StateIndex { n: r.n, l: r.l, d: r.d };
            state.validate().map_err(|e| Error::Cache(e.to_string()))?;
            if !r.q.is_finite() || !r.p.is_finite() || !r.abs_tol.is_finite() {
                return Err(Error::Cache(format!(
                    "cache record has non-finite fields (q={}, P={}, abs_tol={})",
                    r.q, r.p, r.abs_tol
                )));
            }
            Ok((
                PNumberRecord { q: r.q, state, p: r.p, source: r.source, epsilon: Some(r.epsilon) },
                r.abs_tol,
            ))
        })
        .collect()
}

/// The P-number for (q, state): closed form where available, otherwise a
/// cached numeric solve of the pure-power problem.
pub fn p_lookup(
    q: f64,
    state: StateIndex,
    cfg: &SolverConfig,
    cache: &mut PCache,
) -> Result<PNumberRecord> {
    state.validate()?;
    if q < -1.0 || q == 0.0 {
        return Err(Error::Domain(format!("P-numbers require q >= -1, q != 0 (got {q})")));
    }
    if (q - 2.0).abs() < 1e-12 {
        return Ok(PNumberRecord {
            q: 2.0,
            state,
            p: p_harmonic(state),
            source: PSource::ClosedForm,
            epsilon: None,
        });
    }
    if (q + 1.0).abs() < 1e-12 {
        return Ok(PNumberRecord {
            q: -1.0,
            state,
            p: p_coulomb(state)?,
            source: PSource::ClosedForm,
            epsilon: None,
        });
    }
    let key = PKey::new(q, state, cfg.abs_tol);
    if let Some(hit) = cache.get(&key) {
        return Ok(hit);
    }
    let coupling = if q > 0.0 { 1.0 } else { -1.0 };
    let epsilon = radial::pure_power_eigenvalue(q, coupling, state, cfg)?;
    let p = p_from_energy(q, epsilon)?;
    let rec = PNumberRecord { q, state, p, source: PSource::Numeric, epsilon: Some(epsilon) };
    cache.put(key, rec);
    Ok(rec)
}
