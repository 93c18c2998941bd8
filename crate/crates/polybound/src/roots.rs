//! Scalar bracketed root finding and one-dimensional minimization.
//!
//! Everything here assumes the caller supplies a valid bracket; the solvers
//! are the workhorses behind the energy inversions and the semiclassical
//! minimizer and are tuned for smooth monotone or unimodal objectives.

use crate::error::{Error, Result};

/// Brent's method: inverse-quadratic/secant steps guarded by bisection.
/// Requires f(a) and f(b) of opposite sign. Converges to
/// `xtol + 4*eps*|x|` in x.
pub fn brent_root<F: FnMut(f64) -> f64>(
    mut f: F,
    a0: f64,
    b0: f64,
    xtol: f64,
    max_iter: u32,
) -> Result<f64> {
    let (mut a, mut b) = (a0, b0);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Convergence {
            lo: a,
            hi: b,
            detail: "root bracket endpoints have equal signs".into(),
        });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // attempt interpolation
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0)),
                    (qq - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
    }
    Err(Error::Convergence {
        lo: b.min(c),
        hi: b.max(c),
        detail: "root refinement hit the iteration cap".into(),
    })
}

/// Root of a monotone increasing function on [lo, inf): doubles the bracket
/// width from `lo` until the sign changes, then hands off to Brent.
pub fn increasing_root<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    initial_width: f64,
    xtol: f64,
    max_iter: u32,
) -> Result<f64> {
    let flo = f(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    if flo > 0.0 {
        return Err(Error::Convergence {
            lo,
            hi: lo,
            detail: "monotone bracketing: f already positive at the lower end".into(),
        });
    }
    let mut w = initial_width.max(f64::MIN_POSITIVE);
    let mut hi = lo + w;
    let mut grow = 0;
    while f(hi) < 0.0 {
        w *= 2.0;
        hi = lo + w;
        grow += 1;
        if grow > 200 {
            return Err(Error::Convergence {
                lo,
                hi,
                detail: "monotone bracketing: no sign change found".into(),
            });
        }
    }
    brent_root(f, hi - w.min(hi - lo), hi, xtol, max_iter)
}

/// Golden-section minimization of a unimodal function on [a, b].
/// Returns (x_min, f(x_min)).
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a0: f64, b0: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (a0, b0);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol * (a.abs() + b.abs() + 1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
