//! Lemniscatic map for the exterior of two equal disks centred at +-z0 on
//! the real axis.
//!
//! The Moebius transformation T(z) = (alpha + z)/(alpha - z) with
//! alpha = sqrt(z0^2 - r^2) carries the exterior of the disks onto the
//! annulus rho < |.| < 1/rho; the annulus-to-slit map f flattens it onto a
//! slit plane, T^{-1} folds the slits onto two symmetric real intervals,
//! and the two-arm radial-slit map finishes the job:
//!   Phi(z) = Phi_1(f'(-1) (T^{-1} o f o T)(z)),
//! with interval ends C = (2 K alpha / pi)(1 - L)^2, D = (2 K alpha / pi)(1 + L)^2.
//!
//! The composition through f is evaluated projectively (sn as a fraction)
//! so the poles of sn on the boundary circles stay finite, and the far
//! field is served by a fitted Laurent tail to avoid the cancellation in
//! T^{-1} near f(-1) = -1.

use crate::domain::LemniscaticDomain;
use crate::elliptic::{
    annulus_to_slit_fraction, jacobi_sn_cn_dn_complex, slit_derivative_at_minus_one,
    EllipticParameters,
};
use crate::error::{Error, Result};
use crate::maps::laurent::LaurentTail;
use crate::maps::radial::{RadialSlitConfig, RadialSlitMap};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoDiskConfig {
    /// Centre offset z0 > 0; the disks sit at +-z0.
    pub center: f64,
    /// Common radius r, 0 < r < z0.
    pub radius: f64,
}

impl TwoDiskConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.center.is_finite()
            && self.radius.is_finite()
            && 0.0 < self.radius
            && self.radius < self.center)
        {
            return Err(Error::InvalidParameter(format!(
                "two disks require 0 < r < z0, got z0 = {}, r = {}",
                self.center, self.radius
            )));
        }
        Ok(())
    }

    /// Annulus ratio rho = (sqrt(z0+r) - sqrt(z0-r)) / (sqrt(z0+r) + sqrt(z0-r)).
    pub fn annulus_ratio(&self) -> f64 {
        let sp = (self.center + self.radius).sqrt();
        let sm = (self.center - self.radius).sqrt();
        (sp - sm) / (sp + sm)
    }

    /// Circle samples, one polyline per disk. Pure geometry.
    pub fn boundary_points(&self, per_disk: usize) -> Vec<Vec<Complex64>> {
        [self.center, -self.center]
            .iter()
            .map(|&c| {
                (0..per_disk)
                    .map(|i| {
                        let t = 2.0 * PI * i as f64 / per_disk as f64;
                        Complex64::new(c, 0.0) + Complex64::from_polar(self.radius, t)
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct TwoDiskMap {
    cfg: TwoDiskConfig,
    alpha: f64,
    params: EllipticParameters,
    /// f'(-1) = (1 - L^2) 2K/pi
    fprime: f64,
    slit: RadialSlitMap,
    mu: f64,
    /// centre of the symmetric form: (2 K alpha / pi)(1 + L^2)
    form_center: f64,
    tail: LaurentTail,
    switch_radius: f64,
}

impl TwoDiskMap {
    pub fn new(cfg: TwoDiskConfig) -> Result<Self> {
        cfg.validate()?;
        let alpha = (cfg.center * cfg.center - cfg.radius * cfg.radius).sqrt();
        let params = EllipticParameters::new(cfg.annulus_ratio())?;
        let fprime = slit_derivative_at_minus_one(&params);
        let scale = 2.0 * params.big_k * alpha / PI;
        let inner = scale * (1.0 - params.l) * (1.0 - params.l);
        let outer = scale * (1.0 + params.l) * (1.0 + params.l);
        let slit = RadialSlitMap::new(RadialSlitConfig {
            arms: 2,
            inner,
            outer,
        })?;
        let mu = (2.0 * params.l * (1.0 + params.l * params.l)).sqrt() * scale;
        let form_center = scale * (1.0 + params.l * params.l);

        let core = |z: Complex64| forward_core(z, alpha, &params, fprime, &slit);
        let sample_radius = 16.0 * (cfg.center + cfg.radius);
        let tail = LaurentTail::fit(core, sample_radius, 20)?;
        if tail.constant().norm() > 1e-9 {
            return Err(Error::Construction(format!(
                "normalization defect: constant Laurent term {} of an odd map",
                tail.constant()
            )));
        }
        Ok(Self {
            cfg,
            alpha,
            params,
            fprime,
            slit,
            mu,
            form_center,
            tail,
            switch_radius: 4.0 * sample_radius,
        })
    }

    pub fn config(&self) -> TwoDiskConfig {
        self.cfg
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn capacity(&self) -> f64 {
        self.mu
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn slit_config(&self) -> RadialSlitConfig {
        self.slit.config()
    }

    pub fn domain(&self) -> Result<LemniscaticDomain> {
        LemniscaticDomain::symmetric(
            2,
            Complex64::new(self.form_center * self.form_center, 0.0),
            self.mu,
        )
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let tol = 1.0 - 1e-12;
        (z - self.cfg.center).norm() < self.cfg.radius * tol
            || (z + self.cfg.center).norm() < self.cfg.radius * tol
    }

    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        if self.contains(z) {
            return Err(Error::OutsideDomain(z));
        }
        if z.norm() > self.switch_radius {
            return Ok(self.tail.eval(z));
        }
        forward_core(z, self.alpha, &self.params, self.fprime, &self.slit)
    }

    pub fn inverse(&self, w: Complex64, domain: &LemniscaticDomain) -> Result<Complex64> {
        if domain.abs_u(w) <= domain.capacity() {
            return Err(Error::OutsideDomain(w));
        }
        let y = self.slit.inverse_raw(w)?;
        let u = y / self.fprime;
        let denom = self.alpha - u;
        if denom.norm() < 1e-14 * self.alpha {
            return Err(Error::NearPole(w));
        }
        let target = (self.alpha + u) / denom;
        let z1 = invert_annulus_to_slit(target, &self.params)?;
        let back = z1 + 1.0;
        if back.norm() < 1e-14 {
            return Err(Error::NearPole(w));
        }
        Ok(self.alpha * (z1 - 1.0) / back)
    }
}

/// Direct evaluation of the two-disk composition.
fn forward_core(
    z: Complex64,
    alpha: f64,
    params: &EllipticParameters,
    fprime: f64,
    slit: &RadialSlitMap,
) -> Result<Complex64> {
    let t = (alpha + z) / (alpha - z);
    let r = t.norm();
    if !(params.rho * (1.0 - 1e-9) < r && r < (1.0 + 1e-9) / params.rho) {
        return Err(Error::OutsideDomain(z));
    }
    let (num, den) = annulus_to_slit_fraction(t, params)?;
    // T^{-1}(num/den) = alpha (num - den) / (num + den), finite through
    // the poles of sn on the boundary circles
    let sum = num + den;
    if sum.norm() < 1e-280 {
        return Err(Error::NearPole(z));
    }
    let y = fprime * alpha * (num - den) / sum;
    slit.forward_raw(y)
}

/// Invert the annulus-to-slit map by a damped Newton iteration in the
/// sn-argument strip 0 < Im(zeta) < K', which is the conformal image of
/// the annulus under zeta = (2K/pi) i log(z/rho) + K. The strip geometry
/// avoids the log branch entirely: L sn(.; k) is meromorphic there and
/// 4K-periodic in the real direction.
pub(crate) fn invert_annulus_to_slit(
    target: Complex64,
    params: &EllipticParameters,
) -> Result<Complex64> {
    const MAX_ITER: usize = 80;
    let k4 = 4.0 * params.big_k;
    // seed grid over one real period of the strip
    let mut seeds: Vec<(f64, Complex64)> = Vec::new();
    for iy in 0..6 {
        let im = params.big_k_prime * (iy as f64 + 0.5) / 6.0;
        for ix in 0..12 {
            let re = -2.0 * params.big_k + k4 * (ix as f64 + 0.5) / 12.0;
            let zeta = Complex64::new(re, im);
            if let Ok((sn, _, _)) = jacobi_sn_cn_dn_complex(zeta, params.k) {
                seeds.push(((params.l * sn - target).norm(), zeta));
            }
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    for &(_, seed) in seeds.iter().take(10) {
        if let Some(zeta) = newton_in_strip(seed, target, params, MAX_ITER) {
            // z = rho exp(-i pi (zeta - K) / (2K))
            let z = params.rho
                * (Complex64::new(0.0, -PI / (2.0 * params.big_k)) * (zeta - params.big_k)).exp();
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        what: "annulus-to-slit inversion",
        iterations: MAX_ITER,
    })
}

fn newton_in_strip(
    seed: Complex64,
    target: Complex64,
    params: &EllipticParameters,
    max_iter: usize,
) -> Option<Complex64> {
    let tol = 1e-13 * target.norm().max(1.0);
    let strip = params.big_k_prime;
    let margin = 1e-13 * strip;
    let mut zeta = seed;
    let mut err = params.l * jacobi_sn_cn_dn_complex(zeta, params.k).ok()?.0 - target;
    for _ in 0..max_iter {
        let (_, cn, dn) = jacobi_sn_cn_dn_complex(zeta, params.k).ok()?;
        let deriv = params.l * cn * dn;
        if deriv.norm() < 1e-200 {
            return None;
        }
        let full = err / deriv;
        // damped update: halve the step until the residual shrinks
        let mut scale = 1.0;
        let mut accepted = None;
        for _ in 0..6 {
            let mut cand = zeta - scale * full;
            // wrap into one real period, clamp into the open strip
            cand.re = (cand.re + 2.0 * params.big_k).rem_euclid(4.0 * params.big_k)
                - 2.0 * params.big_k;
            cand.im = cand.im.clamp(margin, strip - margin);
            if let Ok((sn, _, _)) = jacobi_sn_cn_dn_complex(cand, params.k) {
                let e = params.l * sn - target;
                if e.norm() < err.norm() || scale < 0.2 {
                    accepted = Some((cand, e));
                    break;
                }
            }
            scale *= 0.5;
        }
        let (next, e) = accepted?;
        zeta = next;
        err = e;
        if err.norm() <= tol {
            return Some(zeta);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_ratio_for_the_reference_disks() {
        let cfg = TwoDiskConfig {
            center: 1.0,
            radius: 0.5,
        };
        assert!((cfg.annulus_ratio() - (2.0 - 3.0f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn capacity_frozen_values() {
        for (r, expected) in [
            (0.5, 1.0306512351870146),
            (0.7, 1.2524725556019713),
            (0.9, 1.4656986407297955),
        ] {
            let m = TwoDiskMap::new(TwoDiskConfig {
                center: 1.0,
                radius: r,
            })
            .unwrap();
            assert!(
                (m.capacity() - expected).abs() < 1e-12,
                "r = {r}: {} vs {expected}",
                m.capacity()
            );
        }
    }

    #[test]
    fn two_disk_domain_agrees_with_the_interval_domain() {
        // the symmetric-form constant must equal ((C+D)/2)^2 and the
        // capacity sqrt(D^2-C^2)/2 of the underlying two-interval map
        let m = TwoDiskMap::new(TwoDiskConfig {
            center: 1.0,
            radius: 0.5,
        })
        .unwrap();
        let slit_cfg = m.slit_config();
        let mid = 0.5 * (slit_cfg.inner + slit_cfg.outer);
        assert!((m.form_center - mid).abs() < 1e-12);
        let slit_mu =
            ((slit_cfg.outer * slit_cfg.outer - slit_cfg.inner * slit_cfg.inner) / 4.0).sqrt();
        assert!((m.capacity() - slit_mu).abs() < 1e-12);
    }

    #[test]
    fn forward_is_odd() {
        let m = TwoDiskMap::new(TwoDiskConfig {
            center: 1.0,
            radius: 0.7,
        })
        .unwrap();
        for z in [
            Complex64::new(0.3, 1.2),
            Complex64::new(-2.5, 0.4),
            Complex64::new(0.0, 0.05),
            Complex64::new(17.0, -9.0),
        ] {
            let a = m.forward(z).unwrap();
            let b = m.forward(-z).unwrap();
            assert!((a + b).norm() < 1e-10 * a.norm().max(1.0), "z = {z}");
        }
    }

    #[test]
    fn forward_survives_the_sn_poles_on_the_circles() {
        // theta = pi/2 on each circle maps to a pole of sn; the projective
        // composition must still land on the boundary lemniscate
        let m = TwoDiskMap::new(TwoDiskConfig {
            center: 1.0,
            radius: 0.5,
        })
        .unwrap();
        let domain = m.domain().unwrap();
        let z = Complex64::new(1.0, 0.5); // top of the right circle
        let w = m.forward(z).unwrap();
        let defect = (domain.abs_u(w) - m.capacity()).abs();
        assert!(defect <= 1e-8 * m.capacity(), "defect {defect}");
    }

    #[test]
    fn interior_points_are_rejected() {
        let m = TwoDiskMap::new(TwoDiskConfig {
            center: 1.0,
            radius: 0.5,
        })
        .unwrap();
        assert!(m.forward(Complex64::new(1.0, 0.0)).is_err());
        assert!(m.forward(Complex64::new(-1.2, 0.1)).is_err());
        assert!(m.forward(Complex64::new(0.0, 0.0)).is_ok());
    }

    #[test]
    fn round_trip_through_the_newton_inversion() {
        let m = TwoDiskMap::new(TwoDiskConfig {
            center: 1.0,
            radius: 0.5,
        })
        .unwrap();
        let domain = m.domain().unwrap();
        for w in [
            Complex64::new(2.0, 1.0),
            Complex64::new(-0.3, 1.8),
            Complex64::new(0.1, -2.4),
            Complex64::new(-3.0, -0.2),
        ] {
            assert!(domain.abs_u(w) > domain.capacity());
            let z = m.inverse(w, &domain).unwrap();
            let back = m.forward(z).unwrap();
            assert!((back - w).norm() < 1e-10 * w.norm().max(1.0), "w = {w}");
        }
    }
}
