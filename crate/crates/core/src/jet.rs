//! Second-order forward-mode differentiation over complex values.
//!
//! A [`Jet`] carries a value together with its first and second derivative
//! with respect to a single real parameter (here always the incident
//! angle). Propagating jets through the reflection formulas yields exact
//! analytic derivatives without hand-deriving the chain rule for every
//! intermediate quantity.

use core::ops::{Add, Div, Mul, Neg, Sub};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Jet {
    /// Value.
    pub v: Complex64,
    /// First derivative with respect to the seed parameter.
    pub d1: Complex64,
    /// Second derivative with respect to the seed parameter.
    pub d2: Complex64,
}

impl Jet {
    pub fn constant(v: Complex64) -> Self {
        Jet {
            v,
            d1: Complex64::ZERO,
            d2: Complex64::ZERO,
        }
    }

    /// Jet of sin(theta) seeded with d theta / d theta = 1.
    pub fn sin_of(theta: f64) -> Self {
        let (s, c) = num_traits::Float::sin_cos(theta);
        Jet {
            v: Complex64::new(s, 0.0),
            d1: Complex64::new(c, 0.0),
            d2: Complex64::new(-s, 0.0),
        }
    }

    /// Principal square root, sign-flipped so that the imaginary part is
    /// never negative (decaying-wave convention for evanescent layers).
    pub fn sqrt_upper_half(self) -> Self {
        let mut w = self.v.sqrt();
        if w.im < 0.0 {
            w = -w;
        }
        let d1 = self.d1 / (2.0 * w);
        let d2 = (self.d2 - 2.0 * d1 * d1) / (2.0 * w);
        Jet { v: w, d1, d2 }
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Jet {
            v: e,
            d1: self.d1 * e,
            d2: (self.d2 + self.d1 * self.d1) * e,
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet {
            v: self.v + rhs.v,
            d1: self.d1 + rhs.d1,
            d2: self.d2 + rhs.d2,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet {
            v: self.v - rhs.v,
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        Jet {
            v: self.v * rhs.v,
            d1: self.d1 * rhs.v + self.v * rhs.d1,
            d2: self.d2 * rhs.v + 2.0 * self.d1 * rhs.d1 + self.v * rhs.d2,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let v = self.v / rhs.v;
        let d1 = (self.d1 - v * rhs.d1) / rhs.v;
        let d2 = (self.d2 - 2.0 * d1 * rhs.d1 - v * rhs.d2) / rhs.v;
        Jet { v, d1, d2 }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            v: -self.v,
            d1: -self.d1,
            d2: -self.d2,
        }
    }
}

impl Mul<Complex64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: Complex64) -> Jet {
        Jet {
            v: self.v * rhs,
            d1: self.d1 * rhs,
            d2: self.d2 * rhs,
        }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self * Complex64::new(rhs, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample(theta: f64) -> Jet {
        let eps = Complex64::new(-20.327, 1.862);
        let s = Jet::sin_of(theta);
        let u = s * s * 2.22;
        let root = (Jet::constant(eps) - u).sqrt_upper_half();
        let phase = (root * Complex64::new(0.0, 0.3)).exp();
        (root + phase) / (Jet::constant(Complex64::new(1.0, 0.0)) + root * phase)
    }

    fn sample_value(theta: f64) -> Complex64 {
        sample(theta).v
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for &theta in &[0.3, 0.7, 1.1] {
            let j = sample(theta);
            let h1 = 1e-5;
            let d1 = (sample_value(theta + h1) - sample_value(theta - h1)) / (2.0 * h1);
            let h2 = 1e-4;
            let d2 = (sample_value(theta + h2) - 2.0 * sample_value(theta)
                + sample_value(theta - h2))
                / (h2 * h2);
            assert_relative_eq!(j.d1.re, d1.re, max_relative = 1e-7);
            assert_relative_eq!(j.d1.im, d1.im, max_relative = 1e-7);
            assert_relative_eq!(j.d2.re, d2.re, max_relative = 1e-5);
            assert_relative_eq!(j.d2.im, d2.im, max_relative = 1e-5);
        }
    }

    #[test]
    fn sqrt_branch_stays_in_upper_half_plane() {
        for &re in &[-5.0, -1.0, 0.5, 3.0] {
            for &im in &[-2.0, 0.0, 2.0] {
                let j = Jet {
                    v: Complex64::new(re, im),
                    d1: Complex64::new(1.0, 0.0),
                    d2: Complex64::ZERO,
                };
                let w = j.sqrt_upper_half();
                assert!(w.v.im >= 0.0);
                assert_relative_eq!((w.v * w.v).re, re, epsilon = 1e-12);
                assert_relative_eq!((w.v * w.v).im, im, epsilon = 1e-12);
            }
        }
    }
}
