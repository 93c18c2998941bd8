//! The bound engine: minimize F(r) = 1/r^2 + sum_i a_i (P_i r)^{q_i}.
//!
//! Which P goes on which term decides what the minimum means:
//!
//! * every P_i = P(q_1) (lowest exponent): certified lower bound;
//! * every P_i = P(q_k) (highest exponent): certified upper bound;
//! * P_i = P(q_i) per term: a lower bound for n = 1, otherwise an
//!   approximation ("mixed");
//! * P_i from the explicit Gamma formulas: ground-state (n = 1, l = 0)
//!   lower/upper bounds with no numerics at all.
//!
//! Certification requires every coupling nonnegative and every exponent
//! >= 2; outside that regime the report still carries the numbers but marks
//! them non-certified.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pnumbers::{self, PCache, PSource};
use crate::radial;
use crate::roots;
use crate::types::{PotentialSpec, SolverConfig, StateIndex};

/// One term of the semiclassical objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeTerm {
    pub a: f64,
    pub q: f64,
    pub p: f64,
    pub p_source: PSource,
}

impl EnvelopeTerm {
    pub fn new(a: f64, q: f64, p: f64, p_source: PSource) -> Result<Self> {
        if !(p > 0.0) {
            return Err(Error::Domain(format!("envelope term requires P > 0 (got {p})")));
        }
        Ok(EnvelopeTerm { a, q, p, p_source })
    }
}

/// F(r) = 1/r^2 + sum_i a_i (P_i r)^{q_i}, r > 0.
pub fn objective(r: f64, terms: &[EnvelopeTerm]) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("objective requires r > 0 (got {r})")));
    }
    let mut f = 1.0 / (r * r);
    for t in terms {
        f += t.a * (t.p * r).powf(t.q);
    }
    Ok(f)
}

/// Global minimum of F over r > 0. Returns (value, r_star).
///
/// In x = r^2 the scaled stationarity condition
/// S(x) = -1 + sum_i a_i P_i^{q_i} (q_i/2) x^{q_i/2 + 1} is strictly
/// increasing when all couplings are nonnegative with positive exponents, so
/// the critical point is bracketed by doubling/halving and polished with
/// Brent. An attractive Coulomb term spoils that structure; then a
/// logarithmic scan isolates the minimum and golden-section finishes.
pub fn minimize(terms: &[EnvelopeTerm]) -> Result<(f64, f64)> {
    if !terms.iter().any(|t| t.a > 0.0 && t.q > 0.0) {
        return Err(Error::NonConfining);
    }
    let plain = terms.iter().all(|t| t.a >= 0.0 && t.q > 0.0);
    let x_star = if plain {
        let slope = |x: f64| -> f64 {
            let mut s = -1.0;
            for t in terms {
                if t.a != 0.0 {
                    s += t.a * t.p.powf(t.q) * (t.q / 2.0) * x.powf(t.q / 2.0 + 1.0);
                }
            }
            s
        };
        let mut lo = 1.0;
        let mut guard = 0;
        while slope(lo) > 0.0 {
            lo *= 0.5;
            guard += 1;
            if guard > 2000 {
                return Err(Error::Domain("stationarity bracketing failed from above".into()));
            }
        }
        let mut hi = lo.max(1.0);
        while slope(hi) < 0.0 {
            hi *= 2.0;
            guard += 1;
            if guard > 4000 {
                return Err(Error::Domain("stationarity bracketing failed from below".into()));
            }
        }
        roots::brent_root(slope, lo, hi, 1e-14 * (lo + hi), 200)?
    } else {
        // scan x over [1e-6, 1e6] on a log grid, then polish
        let fx = |x: f64| objective(x.sqrt(), terms).unwrap_or(f64::INFINITY);
        let mut best = (f64::INFINITY, 1.0);
        let steps = 600;
        for i in 0..=steps {
            let x = 10f64.powf(-6.0 + 12.0 * i as f64 / steps as f64);
            let v = fx(x);
            if v < best.0 {
                best = (v, x);
            }
        }
        let lo = best.1 / 10f64.powf(12.0 / steps as f64);
        let hi = best.1 * 10f64.powf(12.0 / steps as f64);
        roots::golden_min(fx, lo, hi, 1e-14).0
    };
    let r_star = x_star.sqrt();
    Ok((objective(r_star, terms)?, r_star))
}

/// One bound value with its minimizing radius.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundValue {
    pub value: f64,
    pub r_star: f64,
}

/// Everything the bound engine can say about one state of one potential.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub state: StateIndex,
    /// Extremal-P lower bound: every term carries P(q_1).
    pub lower_a: BoundValue,
    /// Extremal-P upper bound: every term carries P(q_k).
    pub upper_a: BoundValue,
    /// Per-term mixed assignment: lower bound for n = 1, else approximation.
    pub mixed_b: BoundValue,
    /// Explicit Gamma-formula lower bound (ground state only).
    pub gamma_lower_b: Option<BoundValue>,
    /// Explicit Gamma-formula upper bound (ground state only).
    pub gamma_upper_b: Option<BoundValue>,
    /// Radial-solver reference, when requested.
    pub exact: Option<f64>,
    /// False when extension-mode terms break the certification theorems.
    pub certified: bool,
    /// Present iff not certified; states why.
    pub caveat: Option<String>,
    /// True when mixed_b is a guaranteed lower bound (n = 1).
    pub mixed_is_bound: bool,
}

/// Assemble the full report for (potential, state).
pub fn bounds_report(
    pot: &PotentialSpec,
    state: StateIndex,
    cfg: &SolverConfig,
    cache: &mut PCache,
    with_exact: bool,
) -> Result<BoundReport> {
    state.validate()?;
    pot.validate()?;
    let active: Vec<_> = pot.active_terms().copied().collect();
    if active.is_empty() {
        return Err(Error::NonConfining);
    }
    let q_lo = active.first().unwrap().q;
    let q_hi = active.last().unwrap().q;

    let p_lo = pnumbers::p_lookup(q_lo, state, cfg, cache)?;
    let p_hi = pnumbers::p_lookup(q_hi, state, cfg, cache)?;

    let with_p = |p: &pnumbers::PNumberRecord| -> Result<Vec<EnvelopeTerm>> {
        active
            .iter()
            .map(|t| EnvelopeTerm::new(t.a, t.q, p.p, p.source))
            .collect()
    };
    let lower_terms = with_p(&p_lo)?;
    let upper_terms = with_p(&p_hi)?;

    let mut mixed_terms = Vec::with_capacity(active.len());
    for t in &active {
        let rec = pnumbers::p_lookup(t.q, state, cfg, cache)?;
        mixed_terms.push(EnvelopeTerm::new(t.a, t.q, rec.p, rec.source)?);
    }

    let to_bound = |terms: &[EnvelopeTerm]| -> Result<BoundValue> {
        let (value, r_star) = minimize(terms)?;
        Ok(BoundValue { value, r_star })
    };
    let lower_a = to_bound(&lower_terms)?;
    let upper_a = to_bound(&upper_terms)?;
    let mixed_b = to_bound(&mixed_terms)?;

    // Gamma-formula bounds only exist for the ground state of each
    // angular-momentum tower at l = 0, and need every exponent positive.
    let ground = state.n == 1 && state.l == 0;
    let all_positive_q = active.iter().all(|t| t.q > 0.0);
    let (gamma_lower_b, gamma_upper_b) = if ground && all_positive_q {
        let mut lo_terms = Vec::with_capacity(active.len());
        let mut up_terms = Vec::with_capacity(active.len());
        for t in &active {
            lo_terms.push(EnvelopeTerm::new(
                t.a,
                t.q,
                pnumbers::p_gamma_lower(t.q, state.d)?,
                PSource::GammaLower,
            )?);
            up_terms.push(EnvelopeTerm::new(
                t.a,
                t.q,
                pnumbers::p_gamma_upper(t.q, state.d)?,
                PSource::GammaUpper,
            )?);
        }
        (Some(to_bound(&lo_terms)?), Some(to_bound(&up_terms)?))
    } else {
        (None, None)
    };

    let exact = if with_exact {
        Some(radial::eigenvalue(pot, state, cfg)?)
    } else {
        None
    };

    let certified = pot.is_certified_regime();
    let caveat = if certified {
        None
    } else {
        Some(
            "potential has terms outside the certified regime (a >= 0, q >= 2): \
             bound labels are indicative only"
                .to_string(),
        )
    };

    Ok(BoundReport {
        state,
        lower_a,
        upper_a,
        mixed_b,
        gamma_lower_b,
        gamma_upper_b,
        exact,
        certified,
        caveat,
        mixed_is_bound: state.n == 1 && certified,
    })
}
