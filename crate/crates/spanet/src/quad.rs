//! Adaptive composite Simpson quadrature.

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Plain recursive Simpson with the standard 1/15 error estimate. The
/// integrands in this crate are piecewise smooth and monotone, so this is
/// both cheap and reliable; callers split at known kinks.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = left + right - whole;
    if depth == 0 || err.abs() <= 15.0 * tol {
        left + right + err / 15.0
    } else {
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Integrates over `[a, ∞)` by marching geometric panels until one panel
/// contributes less than `tail_tol` in absolute value.
pub fn integrate_to_infinity(f: &dyn Fn(f64) -> f64, a: f64, tol: f64, tail_tol: f64) -> f64 {
    let mut lo = a;
    let mut width = if a > 0.0 { a.max(1.0) } else { 1.0 };
    let mut total = 0.0;
    for _ in 0..200 {
        let hi = lo + width;
        let piece = adaptive_simpson(f, lo, hi, tol);
        total += piece;
        if piece.abs() < tail_tol {
            break;
        }
        lo = hi;
        width *= 2.0;
    }
    total
}
