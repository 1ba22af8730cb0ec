//! Finite-difference derivative estimates with Richardson extrapolation.
//!
//! These are verification utilities: the production derivative path is
//! analytic throughout the crate, and finite differences exist to
//! cross-check it (and to differentiate oracle states that have no
//! closed form).

use alloc::vec::Vec;

/// Central first difference `(f(x+h) - f(x-h)) / 2h`.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central second difference `(f(x+h) - 2 f(x) + f(x-h)) / h^2`.
pub fn central_second_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Richardson-extrapolate a sequence of estimates computed at steps
/// `h, h/2, h/4, ...` whose error expands in even powers of `h`.
///
/// Returns the highest-order entry of the extrapolation table.
pub fn richardson_sequence(samples: &[f64]) -> f64 {
    let mut row: Vec<f64> = samples.to_vec();
    let mut factor = 4.0;
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = (factor * row[i + 1] - row[i]) / (factor - 1.0);
        }
        row.pop();
        factor *= 4.0;
    }
    row[0]
}

/// First derivative of `f` at `x` from central differences at
/// `h0, h0/2, ... h0/2^levels`, Richardson-extrapolated.
pub fn richardson_central(f: impl Fn(f64) -> f64, x: f64, h0: f64, levels: usize) -> f64 {
    let samples: Vec<f64> = (0..=levels)
        .map(|k| central_diff(&f, x, h0 / (1u64 << k) as f64))
        .collect();
    richardson_sequence(&samples)
}

/// Second derivative of `f` at `x`, Richardson-extrapolated central
/// second differences.
pub fn richardson_central_second(f: impl Fn(f64) -> f64, x: f64, h0: f64, levels: usize) -> f64 {
    let samples: Vec<f64> = (0..=levels)
        .map(|k| central_second_diff(&f, x, h0 / (1u64 << k) as f64))
        .collect();
    richardson_sequence(&samples)
}
