//! Log-Gamma via the Lanczos approximation (g = 7, nine coefficients).
//!
//! Only positive arguments are needed here; the explicit P-number formulas
//! evaluate Gamma ratios of moderate positive reals, and doing so in log
//! space keeps them overflow-free. The coefficient set is the standard
//! double-precision one originating in the GNU Scientific Library; observed
//! accuracy is 13-15 significant digits across the tested range.

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Gamma(x) for x > 0. Returns NaN for x <= 0 or non-finite input.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return f64::NAN;
    }
    // argument below 0.5: reflect once so the series stays well conditioned
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return pi.ln() - (pi * x).sin().ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// ln of the ratio Gamma(num)/Gamma(den), both positive.
pub fn ln_gamma_ratio(num: f64, den: f64) -> f64 {
    ln_gamma(num) - ln_gamma(den)
}
