//! Bracketed scalar extremum search.

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// The bracket must contain a single interior minimum. Returns
/// `(x_min, f_min)` once the bracket has shrunk below `tol`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    // 200 iterations shrink any sane bracket below f64 resolution.
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }

    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, fneg) = golden_section_min(|x| -f(x), a, b, tol);
    (x, -fneg)
}
