//! Core domain types: quantum-number labels, potential definitions and solver
//! configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent the eigensolver accepts. Beyond this the radial problem
/// is numerically a hard-wall box and the grid ladder loses accuracy silently,
/// so it is rejected instead.
pub const MAX_EXPONENT: f64 = 20.0;

/// Quantum labels (n, l, d) identifying one discrete eigenvalue.
///
/// `n >= 1` is the principal index within the angular-momentum subspace:
/// the reduced radial eigenfunction has exactly `n - 1` nodes. For `d = 1`
/// the label runs over the whole line, interleaving parities, and `l` must
/// be 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateIndex {
    pub n: u32,
    pub l: u32,
    pub d: u32,
}

impl StateIndex {
    pub fn new(n: u32, l: u32, d: u32) -> Result<Self> {
        let s = StateIndex { n, l, d };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidState("n must be >= 1".into()));
        }
        if self.d < 1 {
            return Err(Error::InvalidState("d must be >= 1".into()));
        }
        if self.d == 1 && self.l != 0 {
            return Err(Error::InvalidState(
                "for d = 1 the angular label l must be 0; n alone indexes the line spectrum"
                    .into(),
            ));
        }
        Ok(())
    }

    /// Index of the reduced-equation centrifugal strength,
    /// Lambda = l + (d - 3)/2, so the effective term is Lambda(Lambda+1)/r^2.
    /// Only meaningful for d >= 2.
    pub fn capital_lambda(&self) -> f64 {
        self.l as f64 + (self.d as f64 - 3.0) / 2.0
    }
}

/// One power-law term `a * r^q` of a central potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialTerm {
    pub a: f64,
    pub q: f64,
}

/// Extension switches relaxing the certified regime (all a >= 0, q >= 2).
///
/// With `allow_coulomb`, a single attractive `a/r` term (a < 0, q = -1) is
/// accepted for d >= 2. With `allow_fractional`, exponents in (0, 2) are
/// accepted. Bound reports built from such potentials are marked
/// non-certified.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extensions {
    #[serde(default)]
    pub allow_coulomb: bool,
    #[serde(default)]
    pub allow_fractional: bool,
}

/// The operator -Delta + sum_i a_i r^{q_i} in d spatial dimensions.
///
/// Terms are kept sorted strictly increasing in q; construction rejects
/// anything outside the certified regime unless the matching extension flag
/// is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub d: u32,
    pub terms: Vec<PotentialTerm>,
    #[serde(default)]
    pub extensions: Extensions,
}

impl PotentialSpec {
    /// Certified-regime constructor: all couplings nonnegative, exponents >= 2.
    pub fn new(d: u32, terms: Vec<PotentialTerm>) -> Result<Self> {
        Self::with_extensions(d, terms, Extensions::default())
    }

    pub fn with_extensions(d: u32, terms: Vec<PotentialTerm>, extensions: Extensions) -> Result<Self> {
        let spec = PotentialSpec { d, terms, extensions };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 1 {
            return Err(Error::InvalidPotential("d must be >= 1".into()));
        }
        if self.terms.is_empty() {
            return Err(Error::InvalidPotential("terms must be non-empty".into()));
        }
        for (i, t) in self.terms.iter().enumerate() {
            if !t.a.is_finite() || !t.q.is_finite() {
                return Err(Error::InvalidPotential(format!(
                    "terms[{i}]: coefficients must be finite (a={}, q={})",
                    t.a, t.q
                )));
            }
            if t.q > MAX_EXPONENT {
                return Err(Error::InvalidPotential(format!(
                    "terms[{i}]: exponent q={} exceeds the supported maximum {MAX_EXPONENT}",
                    t.q
                )));
            }
            if i + 1 < self.terms.len() && !(t.q < self.terms[i + 1].q) {
                return Err(Error::InvalidPotential(format!(
                    "terms[{i}]..terms[{}]: exponents must be strictly increasing (q={} then q={})",
                    i + 1,
                    t.q,
                    self.terms[i + 1].q
                )));
            }
            let coulomb = t.q == -1.0;
            if coulomb {
                if !self.extensions.allow_coulomb {
                    return Err(Error::InvalidPotential(format!(
                        "terms[{i}]: q = -1 requires extensions.allow_coulomb"
                    )));
                }
                if self.d < 2 {
                    return Err(Error::InvalidPotential(
                        "a Coulomb term requires d >= 2".into(),
                    ));
                }
                if t.a >= 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "terms[{i}]: a Coulomb term must be attractive (a < 0)"
                    )));
                }
            } else {
                if t.q <= 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "terms[{i}]: exponent q={} not supported (allowed: q = -1 or q > 0)",
                        t.q
                    )));
                }
                if t.q < 2.0 && !self.extensions.allow_fractional {
                    return Err(Error::InvalidPotential(format!(
                        "terms[{i}]: q={} in (0, 2) requires extensions.allow_fractional",
                        t.q
                    )));
                }
                if t.a < 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "terms[{i}]: negative coupling a={} is only allowed on a Coulomb term",
                        t.a
                    )));
                }
            }
        }
        if self.terms.iter().all(|t| t.a == 0.0) {
            return Err(Error::NonConfining);
        }
        Ok(())
    }

    /// V(r), evaluated term by term.
    pub fn eval(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.a != 0.0)
            .map(|t| t.a * r.powf(t.q))
            .sum()
    }

    /// Terms with nonzero coupling.
    pub fn active_terms(&self) -> impl Iterator<Item = &PotentialTerm> {
        self.terms.iter().filter(|t| t.a != 0.0)
    }

    /// True if the potential grows without bound: the highest active
    /// exponent has positive coupling.
    pub fn is_confining(&self) -> bool {
        self.active_terms().last().map_or(false, |t| t.a > 0.0 && t.q > 0.0)
    }

    /// True for the single attractive-Coulomb-term case, which carries a
    /// discrete spectrum below zero despite not confining.
    pub fn is_pure_coulomb(&self) -> bool {
        let active: Vec<_> = self.active_terms().collect();
        active.len() == 1 && active[0].q == -1.0 && active[0].a < 0.0
    }

    /// True when every active term lies in the certified bound regime
    /// (a > 0, q >= 2).
    pub fn is_certified_regime(&self) -> bool {
        self.active_terms().all(|t| t.a > 0.0 && t.q >= 2.0)
    }

    /// Single-term helper used throughout: `v * r^q` in dimension d.
    pub fn pure_power(d: u32, q: f64, v: f64) -> Result<Self> {
        let ext = Extensions {
            allow_coulomb: q == -1.0,
            allow_fractional: q > 0.0 && q < 2.0,
        };
        Self::with_extensions(d, vec![PotentialTerm { a: v, q }], ext)
    }
}

/// On-disk JSON form of a potential:
/// `{"d": 1, "terms": [{"a": 1.0, "q": 2.0}, ...], "extensions": {...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialSpecFile {
    pub d: u32,
    pub terms: Vec<PotentialTerm>,
    #[serde(default)]
    pub extensions: Extensions,
}

impl PotentialSpecFile {
    /// Parse and validate. Syntax errors keep serde_json's line/column;
    /// semantic errors name the offending field or term.
    pub fn parse(input: &str) -> Result<PotentialSpec> {
        let file: PotentialSpecFile = serde_json::from_str(input)
            .map_err(|e| Error::InvalidPotential(format!("JSON parse error: {e}")))?;
        PotentialSpec::with_extensions(file.d, file.terms, file.extensions)
    }
}

/// Grid and truncation policy for the radial eigensolver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Target absolute eigenvalue accuracy (energy units).
    pub abs_tol: f64,
    /// Domain truncation rule.
    pub r_max_policy: RMaxPolicy,
    /// Grid refinement rule.
    pub grid: GridPolicy,
    /// Cap on energy-bracketing iterations within one grid level.
    pub max_iter: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            abs_tol: 1e-9,
            r_max_policy: RMaxPolicy::default(),
            grid: GridPolicy::default(),
            max_iter: 256,
        }
    }
}

impl SolverConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        SolverConfig { abs_tol, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::Domain("abs_tol must be > 0".into()));
        }
        if let RMaxPolicy::Fixed(r) = self.r_max_policy {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Domain("fixed r_max must be finite and positive".into()));
            }
        }
        Ok(())
    }
}

/// Domain-truncation rule. `Auto` puts the wall where the potential exceeds
/// the energy estimate by `v_margin` and the barrier integral
/// int sqrt(V - E) dr exceeds `wkb_margin`, then enlarges automatically if a
/// coarse-grid probe detects tail contamination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RMaxPolicy {
    Auto { v_margin: f64, wkb_margin: f64 },
    Fixed(f64),
}

impl Default for RMaxPolicy {
    fn default() -> Self {
        RMaxPolicy::Auto { v_margin: 50.0, wkb_margin: 24.0 }
    }
}

/// Grid refinement rule: start at `start` interior points and double until
/// one halving changes the eigenvalue by less than abs_tol (then Richardson
/// extrapolate), or fail at `max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GridPolicy {
    Auto { start: u32, max: u32 },
    Fixed(u32),
}

impl Default for GridPolicy {
    fn default() -> Self {
        GridPolicy::Auto { start: 1800, max: 1 << 21 }
    }
}
