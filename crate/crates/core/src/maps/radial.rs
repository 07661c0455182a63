//! Lemniscatic map for a union of n rotated radial slits
//! e^{2 pi i j / n} [C, D] with 0 < C < D.
//!
//! The forward map is
//!   Phi(z) = z (1/2 + (CD)^{n/2}/(2 z^n) +- sqrt((z^n - C^n)(z^n - D^n)) / (2 z^n))^{1/n},
//! the sign resolved pointwise by requiring the underlying exterior map of
//! the interval [C^n, D^n] to leave the closed unit disk. The inverse is
//!   Phi^{-1}(w) = w (1 + q_- / (w^n - q_+))^{1/n},
//! with q_+- = (D^{n/2} +- C^{n/2})^2 / 4, both with principal roots.

use crate::branch::{complex_powu, principal_root};
use crate::domain::LemniscaticDomain;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Parameters of the radial slit family: `arms` slits of extent
/// [`inner`, `outer`] rotated by the arms-th roots of unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSlitConfig {
    pub arms: u32,
    pub inner: f64,
    pub outer: f64,
}

impl RadialSlitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.arms < 2 {
            return Err(Error::InvalidParameter(format!(
                "radial slits require at least 2 arms, got {}",
                self.arms
            )));
        }
        if !(self.inner.is_finite() && self.outer.is_finite() && 0.0 < self.inner && self.inner < self.outer) {
            return Err(Error::InvalidParameter(format!(
                "radial slits require 0 < C < D, got C = {}, D = {}",
                self.inner, self.outer
            )));
        }
        Ok(())
    }

    /// Points on the slits, one polyline per arm. Pure geometry, shared
    /// with the capacity oracle and boundary tests.
    pub fn boundary_points(&self, per_arm: usize) -> Vec<Vec<Complex64>> {
        (0..self.arms)
            .map(|j| {
                let dir = Complex64::from_polar(1.0, 2.0 * PI * f64::from(j) / f64::from(self.arms));
                (0..per_arm)
                    .map(|i| {
                        let t = i as f64 / (per_arm - 1).max(1) as f64;
                        dir * (self.inner + (self.outer - self.inner) * t)
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RadialSlitMap {
    cfg: RadialSlitConfig,
    inner_pow: f64,
    outer_pow: f64,
    /// mu^n = (D^n - C^n) / 4
    mu_pow: f64,
    mu: f64,
    /// (D^{n/2} + C^{n/2})^2 / 4, the constant of the symmetric form
    center_constant: f64,
    /// (D^{n/2} - C^{n/2})^2 / 4
    half_diff: f64,
    /// Phi'(0) > 0
    derivative_origin: f64,
    /// below this radius the linear term beats the closed form
    near_radius: f64,
}

impl RadialSlitMap {
    pub fn new(cfg: RadialSlitConfig) -> Result<Self> {
        cfg.validate()?;
        let n = f64::from(cfg.arms);
        let inner_pow = cfg.inner.powi(cfg.arms as i32);
        let outer_pow = cfg.outer.powi(cfg.arms as i32);
        let mu_pow = 0.25 * (outer_pow - inner_pow);
        let mu = mu_pow.powf(1.0 / n);
        let sqrt_prod = (inner_pow * outer_pow).sqrt();
        let center_constant = 0.25 * (outer_pow + inner_pow + 2.0 * sqrt_prod);
        let half_diff = 0.25 * (outer_pow + inner_pow - 2.0 * sqrt_prod);
        // Phi'(0) = (mu^n PhiTilde'(0))^{1/n} from the small-z limit; the
        // interval map has PhiTilde'(0) = 1 / (q (1 - 1/w0^2)) with
        // w0 = PhiTilde(0) = -center_constant / mu^n and q = mu^n.
        let w0 = -center_constant / mu_pow;
        let d_tilde = 1.0 / (mu_pow * (1.0 - 1.0 / (w0 * w0)));
        let derivative_origin = (mu_pow * d_tilde).powf(1.0 / n);
        // the closed form computes PhiTilde(z^n) - PhiTilde(0) by
        // cancellation below the scale (|w0| / PhiTilde'(0))^{1/n}; the
        // rounding error 1e-16 (scale/z)^n and the linearization error
        // (z/scale)^n balance at scale * 10^{-8/n}
        let cancel_scale = (center_constant - mu_pow * mu_pow / center_constant).powf(1.0 / n);
        let near_radius = cancel_scale * 10f64.powf(-8.0 / n);
        Ok(Self {
            cfg,
            inner_pow,
            outer_pow,
            mu_pow,
            mu,
            center_constant,
            half_diff,
            derivative_origin,
            near_radius,
        })
    }

    pub fn config(&self) -> RadialSlitConfig {
        self.cfg
    }

    pub fn capacity(&self) -> f64 {
        self.mu
    }

    pub fn domain(&self) -> Result<LemniscaticDomain> {
        LemniscaticDomain::symmetric(
            self.cfg.arms,
            Complex64::new(self.center_constant, 0.0),
            self.mu,
        )
    }

    /// True when z sits on one of the slits, up to a 1e-12 angular and
    /// radial tolerance.
    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        if r < self.cfg.inner * (1.0 - 1e-12) || r > self.cfg.outer * (1.0 + 1e-12) {
            return false;
        }
        let n = f64::from(self.cfg.arms);
        let step = 2.0 * PI / n;
        let dev = (z.arg() / step - (z.arg() / step).round()).abs() * step;
        dev <= 1e-12
    }

    /// Forward map without the membership gate; on the slits it returns a
    /// boundary value. Compositions that hit the slits by construction
    /// (the two-disk map on its circles) rely on this.
    pub fn forward_raw(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if r > crate::branch::far_field_radius(self.cfg.outer, self.cfg.arms) {
            return Ok(z);
        }
        if r < self.near_radius {
            return Ok(self.derivative_origin * z);
        }
        let zn = complex_powu(z, self.cfg.arms);
        let s = ((zn - self.inner_pow) * (zn - self.outer_pow)).sqrt();
        let base = zn - 0.5 * (self.inner_pow + self.outer_pow);
        // the two exterior-map branches multiply to 1; keep the larger
        let vp = (base + s) / (2.0 * self.mu_pow);
        let vm = (base - s) / (2.0 * self.mu_pow);
        let v = if vp.norm() >= vm.norm() { vp } else { vm };
        let bracket = (self.mu_pow * v + self.center_constant) / zn;
        Ok(z * principal_root(bracket, self.cfg.arms))
    }

    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        if self.contains(z) {
            return Err(Error::OutsideDomain(z));
        }
        self.forward_raw(z)
    }

    /// Points just outside the slits at Green level offset/n, pulled back
    /// from the circle |.| = 1 + offset through the interval's exterior
    /// map. Safe at the slit tips, where perpendicular offsets are not.
    pub fn boundary_probes(&self, per_arm: usize, offset: f64) -> Vec<Complex64> {
        let mid = 0.5 * (self.inner_pow + self.outer_pow);
        let mut out = Vec::with_capacity(per_arm * self.cfg.arms as usize);
        for j in 0..self.cfg.arms {
            let rot = crate::branch::sector_rotation(j, self.cfg.arms);
            for i in 0..per_arm {
                let theta = 2.0 * PI * (i as f64 + 0.5) / per_arm as f64;
                let v = Complex64::from_polar(1.0 + offset, theta);
                let z1 = self.mu_pow * (v + 1.0 / v) + mid;
                out.push(rot * principal_root(z1, self.cfg.arms));
            }
        }
        out
    }

    /// Inverse by the closed formula, without the lemniscatic-domain gate:
    /// this is the analytic continuation rendered in phase portraits.
    pub fn inverse_raw(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() > crate::branch::far_field_radius(self.cfg.outer, self.cfg.arms) {
            return Ok(w);
        }
        let wn = complex_powu(w, self.cfg.arms);
        let denom = wn - self.center_constant;
        if denom.norm() < 1e-300 {
            return Err(Error::NearPole(w));
        }
        let bracket = 1.0 + self.half_diff / denom;
        Ok(w * principal_root(bracket, self.cfg.arms))
    }

    pub fn inverse(&self, w: Complex64, domain: &LemniscaticDomain) -> Result<Complex64> {
        if domain.abs_u(w) <= domain.capacity() {
            return Err(Error::OutsideDomain(w));
        }
        self.inverse_raw(w)
    }
}
