//! Lemniscatic map for polynomial pre-images E = P^{-1}(Omega) of a
//! real-symmetric simply connected compact set Omega, with
//! P(z) = alpha z^n + alpha_0, alpha > 0, alpha_0 real and to the left of
//! Omega (the closed ray (-inf, alpha_0] must miss Omega).
//!
//! With the exterior Riemann map R of Omega, the map is
//!   Phi(z) = z ((mu^n / z^n) [R(P(z)) - R(alpha_0)])^{1/n},
//!   mu = (1 / (alpha R'(inf)))^{1/n},
//! and the lemniscatic domain has |U(w)| = |w^n + mu^n R(alpha_0)|^{1/n}.
//! The inverse reverses the construction chain:
//! w -> w^n -> w^n/mu^n + R(alpha_0) -> R^{-1} -> ((. - alpha_0)/alpha)^{1/n},
//! with the n-th root branch chosen so the result shares the sector of w.

use crate::branch::{complex_powu, near_branch_cut, principal_root, sector_index, sector_rotation};
use crate::domain::LemniscaticDomain;
use crate::error::{Error, Result};
use crate::riemann::{boundary_trace, RiemannMap};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Guard band around the principal-root cut; arguments of the bracketed
/// expression this close to (-inf, 0] indicate a branch flip.
const CUT_GUARD: f64 = 1e-14;

/// Boundary samples used to verify the ray-disjointness precondition.
const RAY_CHECK_SAMPLES: usize = 4096;

#[derive(Clone)]
pub struct PreimageConfig {
    /// Exterior Riemann map of Omega; the set must satisfy Omega = conj(Omega).
    pub riemann: Arc<dyn RiemannMap>,
    /// Degree n >= 2 of P.
    pub degree: u32,
    /// Leading coefficient alpha > 0.
    pub leading: f64,
    /// Constant term alpha_0, real, left of Omega.
    pub shift: f64,
}

#[derive(Clone)]
pub(crate) struct PreimageMap {
    riemann: Arc<dyn RiemannMap>,
    degree: u32,
    leading: f64,
    shift: f64,
    mu: f64,
    mu_pow: f64,
    /// R(alpha_0), real and < -1
    w_shift: f64,
    derivative_origin: Complex64,
    /// characteristic size of E, for the far-field switchover
    scale: f64,
    /// below this radius the linear term beats the closed form
    near_radius: f64,
}

impl PreimageMap {
    pub fn new(cfg: PreimageConfig) -> Result<Self> {
        if cfg.degree < 2 {
            return Err(Error::InvalidParameter(format!(
                "pre-image construction requires degree >= 2, got {}",
                cfg.degree
            )));
        }
        if !(cfg.leading > 0.0 && cfg.leading.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "pre-image construction requires a positive leading coefficient, got {}",
                cfg.leading
            )));
        }
        if !cfg.shift.is_finite() {
            return Err(Error::InvalidParameter("shift must be finite".into()));
        }
        if !cfg.riemann.is_real_symmetric() {
            return Err(Error::Construction(
                "the compact set must be symmetric with respect to the real axis".into(),
            ));
        }
        if cfg.riemann.contains(Complex64::new(cfg.shift, 0.0)) {
            return Err(Error::Construction(format!(
                "alpha_0 = {} lies inside the compact set",
                cfg.shift
            )));
        }
        // ray disjointness: boundary points on the real axis must sit
        // strictly right of alpha_0
        let boundary = boundary_trace(cfg.riemann.as_ref(), RAY_CHECK_SAMPLES)?;
        let extent = boundary.iter().map(|b| b.norm()).fold(0.0, f64::max);
        for b in &boundary {
            if b.im.abs() <= 1e-9 * extent.max(1.0) && b.re <= cfg.shift {
                return Err(Error::Construction(format!(
                    "the ray (-inf, {}] meets the compact set near {b}",
                    cfg.shift
                )));
            }
        }
        let w_shift_c = cfg.riemann.forward(Complex64::new(cfg.shift, 0.0))?;
        if w_shift_c.im.abs() > 1e-9 || w_shift_c.re >= -1.0 {
            return Err(Error::Construction(format!(
                "the image of alpha_0 must be real and < -1, got {w_shift_c}"
            )));
        }
        let w_shift = w_shift_c.re;
        let d_inf = cfg.riemann.derivative_at_infinity();
        if !d_inf.is_finite() || d_inf <= 0.0 {
            return Err(Error::Construction(
                "the Riemann map must have positive derivative at infinity".into(),
            ));
        }
        let n = f64::from(cfg.degree);
        let mu = (1.0 / (cfg.leading * d_inf)).powf(1.0 / n);
        let mu_pow = mu.powi(cfg.degree as i32);
        let scale = boundary
            .iter()
            .map(|b| ((b - cfg.shift) / cfg.leading).norm().powf(1.0 / n))
            .fold(0.0, f64::max);
        let d_shift = cfg.riemann.derivative(Complex64::new(cfg.shift, 0.0))?;
        let derivative_origin =
            principal_root(mu_pow * d_shift * cfg.leading, cfg.degree);
        // R(P(z)) - R(alpha_0) is computed by cancellation below the
        // scale (|R(alpha_0)| / (R'(alpha_0) alpha))^{1/n}; its rounding
        // error and the linearization error balance at scale * 10^{-8/n}
        let cancel_scale =
            (w_shift.abs() / (d_shift.norm() * cfg.leading)).powf(1.0 / n);
        let near_radius = cancel_scale * 10f64.powf(-8.0 / n);
        Ok(Self {
            riemann: cfg.riemann,
            degree: cfg.degree,
            leading: cfg.leading,
            shift: cfg.shift,
            mu,
            mu_pow,
            w_shift,
            derivative_origin,
            scale,
            near_radius,
        })
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn capacity(&self) -> f64 {
        self.mu
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn domain(&self) -> Result<LemniscaticDomain> {
        LemniscaticDomain::symmetric(
            self.degree,
            Complex64::new(-self.mu_pow * self.w_shift, 0.0),
            self.mu,
        )
    }

    fn apply_p(&self, z: Complex64) -> Complex64 {
        self.leading * complex_powu(z, self.degree) + self.shift
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.riemann.contains(self.apply_p(z))
    }

    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r > crate::branch::far_field_radius(self.scale, self.degree) {
            return Ok(z);
        }
        if r < self.near_radius {
            return Ok(self.derivative_origin * z);
        }
        let v = self
            .riemann
            .forward(self.apply_p(z))
            .map_err(|_| Error::OutsideDomain(z))?;
        if v.norm() <= 1.0 + 1e-12 {
            return Err(Error::OutsideDomain(z));
        }
        let bracket = self.mu_pow * (v - self.w_shift) / complex_powu(z, self.degree);
        if near_branch_cut(bracket, CUT_GUARD) {
            return Err(Error::BranchCut(bracket));
        }
        Ok(z * principal_root(bracket, self.degree))
    }

    fn inverse_chain(&self, w: Complex64, continued: bool) -> Result<Complex64> {
        if w.norm() > crate::branch::far_field_radius(self.scale, self.degree) {
            return Ok(w);
        }
        let j = sector_index(w, self.degree);
        let v = complex_powu(w, self.degree) / self.mu_pow + self.w_shift;
        let z1 = if continued {
            self.riemann.inverse_continued(v)?
        } else {
            self.riemann.inverse(v)?
        };
        let zeta = (z1 - self.shift) / self.leading;
        Ok(principal_root(zeta, self.degree) * sector_rotation(j, self.degree))
    }

    pub fn inverse(&self, w: Complex64, domain: &LemniscaticDomain) -> Result<Complex64> {
        if domain.abs_u(w) <= domain.capacity() {
            return Err(Error::OutsideDomain(w));
        }
        self.inverse_chain(w, false)
    }

    pub fn inverse_raw(&self, w: Complex64) -> Result<Complex64> {
        self.inverse_chain(w, true)
    }

    /// Relative defect of |U(Phi(z))| = mu |R(P(z))|^{1/n}, the identity
    /// coupling the lemniscatic map to the Riemann map of Omega.
    pub fn green_identity_residual(
        &self,
        z: Complex64,
        domain: &LemniscaticDomain,
    ) -> Result<f64> {
        let lhs = domain.abs_u(self.forward(z)?);
        let v = self
            .riemann
            .forward(self.apply_p(z))
            .map_err(|_| Error::OutsideDomain(z))?;
        let rhs = self.mu * v.norm().powf(1.0 / f64::from(self.degree));
        Ok((lhs - rhs).abs() / rhs)
    }

    /// Points just outside E at Green level offset/n, pulled back from the
    /// circle |.| = 1 + offset through the Riemann map.
    pub fn boundary_probes(&self, per_component: usize, offset: f64) -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(per_component * self.degree as usize);
        for j in 0..self.degree {
            let rot = sector_rotation(j, self.degree);
            for i in 0..per_component {
                let theta = 2.0 * PI * (i as f64 + 0.5) / per_component as f64;
                let b = self
                    .riemann
                    .inverse(Complex64::from_polar(1.0 + offset, theta))?;
                out.push(rot * principal_root((b - self.shift) / self.leading, self.degree));
            }
        }
        Ok(out)
    }

    /// One polyline per component of E, obtained by pulling the boundary
    /// of Omega back through P.
    pub fn boundary_points(&self, per_component: usize) -> Result<Vec<Vec<Complex64>>> {
        let trace = boundary_trace(self.riemann.as_ref(), per_component)?;
        let base: Vec<Complex64> = trace
            .iter()
            .map(|&b| principal_root((b - self.shift) / self.leading, self.degree))
            .collect();
        Ok((0..self.degree)
            .map(|j| {
                let rot = sector_rotation(j, self.degree);
                base.iter().map(|&p| rot * p).collect()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riemann::IntervalExteriorMap;

    fn interval_preimage(n: u32, c: f64, d: f64) -> PreimageMap {
        let omega = IntervalExteriorMap::new(c.powi(n as i32), d.powi(n as i32)).unwrap();
        PreimageMap::new(PreimageConfig {
            riemann: Arc::new(omega),
            degree: n,
            leading: 1.0,
            shift: 0.0,
        })
        .unwrap()
    }

    #[test]
    fn capacity_matches_closed_form() {
        let m = interval_preimage(2, 0.1, 1.0);
        assert!((m.capacity() - 0.49749371855331).abs() < 1e-14);
        let m3 = interval_preimage(3, 1.0, 2.0);
        assert!((m3.capacity() - (1.75f64).powf(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn ray_violation_is_rejected() {
        // alpha_0 inside the interval, and alpha_0 right of its left end
        let omega = IntervalExteriorMap::new(0.5, 2.0).unwrap();
        for shift in [1.0, 0.7, 3.0] {
            let r = PreimageMap::new(PreimageConfig {
                riemann: Arc::new(omega),
                degree: 2,
                leading: 1.0,
                shift,
            });
            assert!(r.is_err(), "shift {shift} must be rejected");
        }
    }

    #[test]
    fn forward_rejects_points_of_e() {
        let m = interval_preimage(3, 1.0, 2.0);
        // a point on the rotated slit: arg = 2 pi / 3, |z| = 1.5
        let z = Complex64::from_polar(1.5, 2.0 * std::f64::consts::PI / 3.0);
        assert!(m.forward(z).is_err());
        assert!(m.contains(z));
    }

    #[test]
    fn sector_is_preserved_by_the_inverse() {
        use rand::{Rng, SeedableRng};
        let m = interval_preimage(3, 1.0, 2.0);
        let domain = m.domain().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut tested = 0;
        while tested < 300 {
            let w = Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            if domain.abs_u(w) <= domain.capacity() * 1.01 {
                continue;
            }
            let z = m.inverse(w, &domain).unwrap();
            assert_eq!(sector_index(z, 3), sector_index(w, 3), "w = {w}, z = {z}");
            tested += 1;
        }
    }
}
