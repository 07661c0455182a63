//! Exterior Riemann maps onto the exterior of the unit disk.
//!
//! Every map here fixes infinity with positive derivative and is exposed
//! through one trait so the polynomial-preimage construction can consume
//! them uniformly.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Conformal map from the complement of a compact simply connected set
/// onto {|w| > 1}, normalized by forward(inf) = inf, forward'(inf) > 0.
pub trait RiemannMap: Send + Sync {
    /// Map a point of the exterior domain to {|w| > 1}.
    fn forward(&self, z: Complex64) -> Result<Complex64>;

    /// Inverse map, defined for |w| > 1.
    fn inverse(&self, w: Complex64) -> Result<Complex64>;

    /// Analytic continuation of the inverse past the unit circle, where
    /// the defining formula allows it. Defaults to `inverse`.
    fn inverse_continued(&self, w: Complex64) -> Result<Complex64> {
        self.inverse(w)
    }

    /// Leading coefficient of forward at infinity.
    fn derivative_at_infinity(&self) -> f64;

    /// Whether the underlying compact set satisfies Omega = conj(Omega).
    fn is_real_symmetric(&self) -> bool;

    /// Pointwise derivative of forward.
    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        let h = 1e-6 * z.norm().max(1.0);
        let fp = self.forward(z + h)?;
        let fm = self.forward(z - h)?;
        Ok((fp - fm) / (2.0 * h))
    }

    /// Membership test for the compact set: points where no branch of the
    /// forward map leaves the closed unit disk.
    fn contains(&self, z: Complex64) -> bool {
        match self.forward(z) {
            Ok(w) => w.norm() <= 1.0 + 1e-12,
            Err(_) => true,
        }
    }
}

/// Exterior map of a real interval [lo, hi], inverse given by the
/// Joukowski-type form ((hi-lo)/4)(w + 1/w) + (hi+lo)/2.
#[derive(Debug, Clone, Copy)]
pub struct IntervalExteriorMap {
    lo: f64,
    hi: f64,
    /// (hi - lo) / 4
    quarter_length: f64,
    mid: f64,
}

impl IntervalExteriorMap {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "interval requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self {
            lo,
            hi,
            quarter_length: 0.25 * (hi - lo),
            mid: 0.5 * (lo + hi),
        })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Both square-root branches of the forward map. Their product is 1.
    fn candidates(&self, z: Complex64) -> (Complex64, Complex64) {
        let s = ((z - self.lo) * (z - self.hi)).sqrt();
        let base = z - self.mid;
        let scale = 1.0 / (2.0 * self.quarter_length);
        ((base + s) * scale, (base - s) * scale)
    }
}

impl RiemannMap for IntervalExteriorMap {
    /// Branch chosen pointwise so that |forward(z)| > 1; on the interval
    /// itself both branches sit on the unit circle and the call fails.
    fn forward(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 && z.re >= self.lo && z.re <= self.hi {
            return Err(Error::OutsideDomain(z));
        }
        let (a, b) = self.candidates(z);
        Ok(if a.norm() >= b.norm() { a } else { b })
    }

    fn inverse(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() <= 1.0 {
            return Err(Error::OutsideDomain(w));
        }
        Ok(self.quarter_length * (w + 1.0 / w) + self.mid)
    }

    fn inverse_continued(&self, w: Complex64) -> Result<Complex64> {
        if w == Complex64::new(0.0, 0.0) {
            return Err(Error::NearPole(w));
        }
        Ok(self.quarter_length * (w + 1.0 / w) + self.mid)
    }

    fn derivative_at_infinity(&self) -> f64 {
        1.0 / self.quarter_length
    }

    fn is_real_symmetric(&self) -> bool {
        true
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        // d/dw of the inverse is q (1 - 1/w^2); invert it at w = forward(z)
        let w = self.forward(z)?;
        let dinv = self.quarter_length * (1.0 - 1.0 / (w * w));
        if dinv.norm() < 1e-300 {
            return Err(Error::NearPole(z));
        }
        Ok(1.0 / dinv)
    }
}

/// Compact set with analytic boundary defined through the rational inverse
/// of its Riemann map,
/// inverse(w) = ((w - lambda N)(w - lambda M)) / ((N - M) w + lambda (M N - 1)),
/// with shape coefficients Q, N, M derived from an opening angle phi and a
/// radius parameter R > 1.
#[derive(Debug, Clone, Copy)]
pub struct RationalExteriorMap {
    lambda: Complex64,
    n: f64,
    m: f64,
}

/// Parameters for [`RationalExteriorMap`]: boundary angle `phi`, radius `r` (> 1),
/// and the unimodular placement factor `lambda`.
#[derive(Debug, Clone, Copy)]
pub struct RationalExteriorConfig {
    pub lambda: Complex64,
    pub phi: f64,
    pub r: f64,
}

impl Default for RationalExteriorConfig {
    fn default() -> Self {
        Self {
            lambda: Complex64::new(-1.0, 0.0),
            phi: PI / 2.0,
            r: 1.1,
        }
    }
}

impl RationalExteriorMap {
    pub fn new(cfg: RationalExteriorConfig) -> Result<Self> {
        if !cfg.r.is_finite() || cfg.r <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "RationalExteriorMap requires R > 1, got {}",
                cfg.r
            )));
        }
        if !(cfg.phi > 0.0 && cfg.phi < 2.0 * PI) {
            return Err(Error::InvalidParameter(format!(
                "RationalExteriorMap requires 0 < phi < 2 pi, got {}",
                cfg.phi
            )));
        }
        if ((cfg.lambda.norm() - 1.0).abs()) > 1e-12 {
            return Err(Error::InvalidParameter(
                "RationalExteriorMap requires |lambda| = 1".into(),
            ));
        }
        let q = (cfg.phi / 4.0).tan() + 1.0 / (cfg.phi / 4.0).cos();
        let n = 0.5 * (q / cfg.r + cfg.r / q);
        let m = (cfg.r * cfg.r - 1.0) / (2.0 * cfg.r * (cfg.phi / 4.0).tan());
        if n <= m {
            return Err(Error::InvalidParameter(format!(
                "degenerate shape coefficients N = {n}, M = {m}"
            )));
        }
        Ok(Self {
            lambda: cfg.lambda,
            n,
            m,
        })
    }

    pub fn shape_coefficients(&self) -> (f64, f64) {
        (self.n, self.m)
    }

    fn rational_inverse(&self, w: Complex64) -> Result<Complex64> {
        let num = (w - self.lambda * self.n) * (w - self.lambda * self.m);
        let den = (self.n - self.m) * w + self.lambda * (self.m * self.n - 1.0);
        if den.norm() < 1e-14 * (self.n - self.m) * (w.norm() + 1.0) {
            return Err(Error::NearPole(w));
        }
        Ok(num / den)
    }

    /// Derivative of the rational inverse.
    fn rational_inverse_derivative(&self, w: Complex64) -> Complex64 {
        let num = (w - self.lambda * self.n) * (w - self.lambda * self.m);
        let dnum = 2.0 * w - self.lambda * (self.n + self.m);
        let den = (self.n - self.m) * w + self.lambda * (self.m * self.n - 1.0);
        (dnum * den - num * (self.n - self.m)) / (den * den)
    }

    /// Both roots of the quadratic inverse(w) = z, larger-magnitude root
    /// computed first for stability.
    fn quadratic_roots(&self, z: Complex64) -> (Complex64, Complex64) {
        // w^2 - [lambda (N+M) + z (N-M)] w + lambda^2 N M - z lambda (M N - 1) = 0
        let p = -(self.lambda * (self.n + self.m) + z * (self.n - self.m));
        let q = self.lambda * self.lambda * self.n * self.m
            - z * self.lambda * (self.m * self.n - 1.0);
        let disc = (p * p - 4.0 * q).sqrt();
        let r1 = if (p + disc).norm() >= (p - disc).norm() {
            -(p + disc) / 2.0
        } else {
            -(p - disc) / 2.0
        };
        let r2 = if r1.norm() > 0.0 { q / r1 } else { -p - r1 };
        (r1, r2)
    }
}

impl RiemannMap for RationalExteriorMap {
    /// Root of the quadratic with |w| > 1; a Newton polish on the rational
    /// inverse guards against loss of accuracy in the quadratic formula.
    fn forward(&self, z: Complex64) -> Result<Complex64> {
        let (r1, r2) = self.quadratic_roots(z);
        let mut w = if r1.norm() >= r2.norm() { r1 } else { r2 };
        if w.norm() <= 1.0 {
            return Err(Error::OutsideDomain(z));
        }
        for _ in 0..3 {
            let f = self.rational_inverse(w)? - z;
            if f.norm() <= 1e-15 * z.norm().max(1.0) {
                break;
            }
            let d = self.rational_inverse_derivative(w);
            if d.norm() < 1e-300 {
                break;
            }
            w -= f / d;
        }
        Ok(w)
    }

    fn inverse(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() <= 1.0 {
            return Err(Error::OutsideDomain(w));
        }
        self.rational_inverse(w)
    }

    fn inverse_continued(&self, w: Complex64) -> Result<Complex64> {
        self.rational_inverse(w)
    }

    /// Reciprocal of the leading Laurent coefficient of the rational
    /// inverse, which grows like w / (N - M).
    fn derivative_at_infinity(&self) -> f64 {
        self.n - self.m
    }

    fn is_real_symmetric(&self) -> bool {
        self.lambda.im == 0.0
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        let w = self.forward(z)?;
        let d = self.rational_inverse_derivative(w);
        if d.norm() < 1e-300 {
            return Err(Error::NearPole(z));
        }
        Ok(1.0 / d)
    }
}

/// Boundary trace inverse(e^{i theta}) at `samples` equispaced angles.
pub fn boundary_trace(map: &dyn RiemannMap, samples: usize) -> Result<Vec<Complex64>> {
    (0..samples)
        .map(|i| {
            let theta = 2.0 * PI * i as f64 / samples as f64;
            map.inverse_continued(Complex64::from_polar(1.0, theta))
        })
        .collect()
}
