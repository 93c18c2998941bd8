//! Closed-form machinery for H = -Delta + r^2 + lambda r^{2m}.
//!
//! With alpha the squared P of the quadratic term and beta the 2m-th power
//! of the P on the anharmonic term, the semiclassical minimum satisfies an
//! algebraic relation between lambda and E that can be evaluated either way:
//! lambda(E) in closed form, E(lambda) by monotone root finding. The same
//! module carries the (omega, a, b) -> (lambda, scale) reduction of the
//! general two-parameter oscillator and two published one-constant
//! comparison formulas (Bhattacharya et al.; Dasgupta et al.).

use crate::error::{Error, Result};
use crate::roots;

/// Strong-coupling leading coefficients for -d^2/dr^2 + r^2 + lambda r^{2m}
/// (equivalently the pure r^{2m} ground energies on the line).
pub const K0_QUARTIC: f64 = 1.06036209;
pub const K0_SEXTIC: f64 = 1.14480245;
pub const K0_OCTIC: f64 = 1.22582011;

/// Built-in comparison constant for m = 2, 3, 4.
pub fn default_k0(m: u32) -> Option<f64> {
    match m {
        2 => Some(K0_QUARTIC),
        3 => Some(K0_SEXTIC),
        4 => Some(K0_OCTIC),
        _ => None,
    }
}

/// The two P-derived constants fixing one lambda <-> E curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnharmonicModel {
    pub m: u32,
    /// Squared P assigned to the r^2 term.
    pub alpha: f64,
    /// 2m-th power of the P assigned to the r^{2m} term.
    pub beta: f64,
}

impl AnharmonicModel {
    pub fn new(m: u32, alpha: f64, beta: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("anharmonic power index must be >= 2 (got {m})")));
        }
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(Error::Domain(format!(
                "anharmonic constants must be positive (alpha={alpha}, beta={beta})"
            )));
        }
        let model = AnharmonicModel { m, alpha, beta };
        // lambda(E) must be increasing where it is defined; probe a grid
        let e0 = model.harmonic_energy();
        let mut prev = 0.0;
        for i in 1..=64 {
            let e = e0 * (1.0 + i as f64);
            let lam = model.lambda_of_energy_unchecked(e);
            if lam + 1e-12 * lam.abs() < prev {
                return Err(Error::Domain(
                    "lambda(E) failed its monotonicity probe; constants are inconsistent".into(),
                ));
            }
            prev = lam;
        }
        Ok(model)
    }

    /// E at lambda = 0: the harmonic value 2 sqrt(alpha).
    pub fn harmonic_energy(&self) -> f64 {
        2.0 * self.alpha.sqrt()
    }

    fn lambda_of_energy_unchecked(&self, e: f64) -> f64 {
        let m = self.m as f64;
        let alpha = self.alpha;
        // delta = sqrt(m^2 E^2 - 4 alpha (m^2-1)); near lambda = 0 the naive
        // delta - E cancels catastrophically, so use
        // delta - E = (m^2-1)(E^2 - 4 alpha)/(delta + E).
        let delta = (m * m * e * e - 4.0 * alpha * (m * m - 1.0)).max(0.0).sqrt();
        let delta_minus_e = (m * m - 1.0) * (e * e - 4.0 * alpha) / (delta + e);
        let denom = m * e - delta;
        2f64.powi(self.m as i32) * alpha.powi(self.m as i32) * (m - 1.0).powi(self.m as i32 - 1)
            * delta_minus_e
            / (self.beta * (m + 1.0) * denom.powi(self.m as i32))
    }
}

/// lambda such that the semiclassical minimum sits at energy E.
pub fn lambda_of_energy(e: f64, model: &AnharmonicModel) -> Result<f64> {
    let e0 = model.harmonic_energy();
    if e < e0 * (1.0 - 1e-14) {
        return Err(Error::Domain(format!(
            "energy {e} below the harmonic floor {e0}; no nonnegative lambda reaches it"
        )));
    }
    if e <= e0 {
        return Ok(0.0);
    }
    Ok(model.lambda_of_energy_unchecked(e).max(0.0))
}

/// Unique E >= 2 sqrt(alpha) with lambda_of_energy(E) = lambda.
pub fn energy_of_lambda(lambda: f64, model: &AnharmonicModel) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::Domain(format!("lambda must be >= 0 (got {lambda})")));
    }
    if lambda == 0.0 {
        return Ok(model.harmonic_energy());
    }
    let e0 = model.harmonic_energy();
    let f = |e: f64| model.lambda_of_energy_unchecked(e) - lambda;
    let root = roots::increasing_root(f, e0, 1.0, 1e-13 * e0.max(1.0), 256)?;
    Ok(root)
}

/// The general oscillator -omega Delta + a r^2 + b r^{2m}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullParameterSet {
    pub omega: f64,
    pub a: f64,
    pub b: f64,
    pub m: u32,
}

/// Scaling reduction to the single-parameter form:
/// lambda = b omega^{(m-1)/2} / a^{(m+1)/2}, and every eigenvalue of the
/// full problem is (a omega)^{1/2} times the reduced one.
pub fn reduce_parameters(full: &FullParameterSet) -> Result<(f64, f64)> {
    if !(full.omega > 0.0 && full.a > 0.0 && full.b > 0.0) {
        return Err(Error::Domain(
            "scaling reduction requires positive omega, a, b".into(),
        ));
    }
    if full.m < 2 {
        return Err(Error::Domain(format!("anharmonic power index must be >= 2 (got {})", full.m)));
    }
    let m = full.m as f64;
    let lambda = full.b * full.omega.powf((m - 1.0) / 2.0) / full.a.powf((m + 1.0) / 2.0);
    let scale = (full.a * full.omega).sqrt();
    Ok((lambda, scale))
}

/// Ground-state energy of -d^2/dr^2 + r^2 + lambda r^{2m} from the
/// one-constant comparison formula of Bhattacharya et al.:
/// E^{m+1} - E^{(m-1)(1 + 2/(m+2+lambda))} = K0^{m+1} lambda.
pub fn bhattacharya_energy(lambda: f64, m: u32, k0: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!("comparison formula requires m >= 2 (got {m})")));
    }
    if !(k0 > 0.0) {
        return Err(Error::Domain(format!("comparison constant must be positive (got {k0})")));
    }
    if !(lambda >= 0.0) {
        return Err(Error::Domain(format!("lambda must be >= 0 (got {lambda})")));
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    let mf = m as f64;
    let p = (mf - 1.0) * (1.0 + 2.0 / (mf + 2.0 + lambda));
    let rhs = k0.powf(mf + 1.0) * lambda;
    let f = |e: f64| e.powf(mf + 1.0) - e.powf(p) - rhs;
    roots::increasing_root(f, 1.0, rhs.powf(1.0 / (mf + 1.0)).max(0.5), 1e-13, 256)
}

/// n-th excited energy (n = 0 is the ground state) from the Dasgupta et al.
/// form: (E/(2n+1))^{m+1} - (E/(2n+1))^{m-1} = K^{m+1} lambda.
/// The per-state constants K are supplied by the caller.
pub fn dasgupta_energy(lambda: f64, m: u32, n: u32, k: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!("comparison formula requires m >= 2 (got {m})")));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("comparison constant must be positive (got {k})")));
    }
    if !(lambda >= 0.0) {
        return Err(Error::Domain(format!("lambda must be >= 0 (got {lambda})")));
    }
    let base = (2 * n + 1) as f64;
    if lambda == 0.0 {
        return Ok(base);
    }
    let mf = m as f64;
    let rhs = k.powf(mf + 1.0) * lambda;
    let f = |y: f64| y.powf(mf + 1.0) - y.powf(mf - 1.0) - rhs;
    let y = roots::increasing_root(f, 1.0, rhs.powf(1.0 / (mf + 1.0)).max(0.5), 1e-13, 256)?;
    Ok(base * y)
}
