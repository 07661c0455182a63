//! Laurent tail of a map that is `z + O(1/z)` at infinity.
//!
//! Compositions through the annulus-to-slit map lose relative accuracy at
//! very large |z| (the Moebius step divides by a difference that shrinks
//! like 1/z). The tail is sampled once on a circle of moderate radius,
//! where direct evaluation is still accurate, and extends the map outward
//! by its own Laurent series.

use crate::error::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

const SAMPLE_COUNT: usize = 512;

#[derive(Debug, Clone)]
pub(crate) struct LaurentTail {
    /// c_1, c_2, ... of f(z) = z + c_0 + c_1/z + ...
    coeffs: Vec<Complex64>,
    constant: Complex64,
}

impl LaurentTail {
    /// Fit the tail of `f` from samples on |z| = radius. `f` must be
    /// analytic outside that circle and satisfy f(z) - z -> constant.
    pub fn fit<F>(f: F, radius: f64, terms: usize) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let mut deviations = Vec::with_capacity(SAMPLE_COUNT);
        for m in 0..SAMPLE_COUNT {
            let theta = 2.0 * PI * m as f64 / SAMPLE_COUNT as f64;
            let z = Complex64::from_polar(radius, theta);
            deviations.push(f(z)? - z);
        }
        let mut coeffs = Vec::with_capacity(terms);
        let mut constant = Complex64::new(0.0, 0.0);
        for j in 0..=terms {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, g) in deviations.iter().enumerate() {
                let theta = 2.0 * PI * (m as f64) * (j as f64) / SAMPLE_COUNT as f64;
                acc += g * Complex64::from_polar(1.0, theta);
            }
            let c = acc * radius.powi(j as i32) / SAMPLE_COUNT as f64;
            if j == 0 {
                constant = c;
            } else {
                coeffs.push(c);
            }
        }
        Ok(Self { coeffs, constant })
    }

    /// Constant Laurent term c_0 of f(z) - z.
    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    /// z + sum of c_j / z^j, without the constant term.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let inv = 1.0 / z;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = inv;
        for c in &self.coeffs {
            acc += c * p;
            p *= inv;
        }
        z + acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_rational_tail() {
        let f = |z: Complex64| {
            Ok(z + Complex64::new(0.25, -0.5) + Complex64::new(2.0, 1.0) / z
                + Complex64::new(0.0, -3.0) / (z * z * z))
        };
        let tail = LaurentTail::fit(f, 10.0, 8).unwrap();
        assert!((tail.constant() - Complex64::new(0.25, -0.5)).norm() < 1e-12);
        let z = Complex64::new(300.0, -120.0);
        let exact = f(z).unwrap() - Complex64::new(0.25, -0.5);
        assert!((tail.eval(z) - exact).norm() < 1e-12);
    }
}
