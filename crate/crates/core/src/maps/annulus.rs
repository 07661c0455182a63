//! Lemniscatic map for a doubly connected exterior domain, given a
//! user-supplied conformal map h onto the annulus rho < |.| < 1/rho with
//! h(inf) = -1 and Laurent expansion h(z) = -1 + a1/z + O(1/z^2).
//!
//! With S(z) = (z-1)/(z+1) and s = -a1 f'(-1)/2, the composition
//!   Phi_0(z) = Phi_1(s (S o f o h)(z))
//! maps onto the lemniscatic domain of two (possibly rotated) intervals;
//! the shift beta removing the constant Laurent term is measured
//! numerically on a large circle.

use crate::domain::LemniscaticDomain;
use crate::elliptic::{
    annulus_to_slit_fraction, slit_derivative_at_minus_one, EllipticParameters,
};
use crate::error::{Error, Result};
use crate::maps::disks::invert_annulus_to_slit;
use crate::maps::laurent::LaurentTail;
use crate::maps::radial::{RadialSlitConfig, RadialSlitMap};
use num_complex::Complex64;
use std::sync::Arc;

pub type AnnulusChart = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub(crate) struct DoublyConnectedMap {
    h: AnnulusChart,
    a1: Complex64,
    params: EllipticParameters,
    /// s = -a1 f'(-1) / 2, the interval scale
    scale_s: Complex64,
    slit: RadialSlitMap,
    /// arg(s), rotation of the image intervals
    phase: f64,
    beta: Complex64,
    tail: LaurentTail,
    switch_radius: f64,
}

impl DoublyConnectedMap {
    pub fn new(h: AnnulusChart, a1: Complex64, rho: f64) -> Result<Self> {
        if a1 == Complex64::new(0.0, 0.0) || !a1.is_finite() {
            return Err(Error::InvalidParameter(
                "the Laurent coefficient a1 must be finite and non-zero".into(),
            ));
        }
        let probe = h(Complex64::new(1e12, 0.0));
        if (probe + 1.0).norm() > 1e-10 {
            return Err(Error::Construction(format!(
                "h violates the normalization h(inf) = -1: h(1e12) = {probe}"
            )));
        }
        let params = EllipticParameters::new(rho)?;
        let fprime = slit_derivative_at_minus_one(&params);
        let scale_s = -a1 * fprime / 2.0;
        let b = (1.0 - params.l) / (1.0 + params.l);
        let slit = RadialSlitMap::new(RadialSlitConfig {
            arms: 2,
            inner: scale_s.norm() * b,
            outer: scale_s.norm() / b,
        })?;
        let phase = scale_s.arg();

        let core = {
            let h = h.clone();
            let slit = slit.clone();
            move |z: Complex64| forward_core(&h, z, &params, scale_s, phase, &slit)
        };
        let sample_radius = 256.0 * (1.0 + a1.norm());
        let tail = LaurentTail::fit(&core, sample_radius, 20)?;
        let beta = -tail.constant();
        Ok(Self {
            h,
            a1,
            params,
            scale_s,
            slit,
            phase,
            beta,
            tail,
            switch_radius: 4.0 * sample_radius,
        })
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn capacity(&self) -> f64 {
        self.slit.capacity()
    }

    pub fn domain(&self) -> Result<LemniscaticDomain> {
        self.slit
            .domain()?
            .linear_image(Complex64::from_polar(1.0, self.phase), self.beta)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = (self.h)(z).norm();
        !(self.params.rho < r && r < 1.0 / self.params.rho)
    }

    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > self.switch_radius {
            // beta is already folded into the tail: its constant term is gone
            return Ok(self.tail.eval(z));
        }
        let core = forward_core(&self.h, z, &self.params, self.scale_s, self.phase, &self.slit)?;
        Ok(core + self.beta)
    }

    pub fn inverse(&self, w: Complex64, domain: &LemniscaticDomain) -> Result<Complex64> {
        if domain.abs_u(w) <= domain.capacity() {
            return Err(Error::OutsideDomain(w));
        }
        let rot = Complex64::from_polar(1.0, self.phase);
        let x = rot * self.slit.inverse_raw((w - self.beta) / rot)?;
        let u = x / self.scale_s;
        let denom = 1.0 - u;
        if denom.norm() < 1e-14 {
            return Err(Error::NearPole(w));
        }
        let target = (1.0 + u) / denom;
        let z1 = invert_annulus_to_slit(target, &self.params)?;
        // Newton on the user chart, seeded by its own Laurent law z ~ a1/(h+1)
        let seed = self.a1 / (z1 + 1.0);
        invert_chart(&self.h, z1, seed)
    }
}

fn forward_core(
    h: &AnnulusChart,
    z: Complex64,
    params: &EllipticParameters,
    scale_s: Complex64,
    phase: f64,
    slit: &RadialSlitMap,
) -> Result<Complex64> {
    let t = h(z);
    let r = t.norm();
    if !(params.rho * (1.0 - 1e-9) < r && r < (1.0 + 1e-9) / params.rho) {
        return Err(Error::OutsideDomain(z));
    }
    let (num, den) = annulus_to_slit_fraction(t, params)?;
    let sum = num + den;
    if sum.norm() < 1e-280 {
        return Err(Error::NearPole(z));
    }
    // S(f) = (f - 1)/(f + 1) in projective form
    let x = scale_s * (num - den) / sum;
    let rot = Complex64::from_polar(1.0, phase);
    Ok(rot * slit.forward_raw(x / rot)?)
}

/// Newton inversion of the user chart h at `target`, derivative by a
/// central difference. Requires h analytic near the solution.
fn invert_chart(h: &AnnulusChart, target: Complex64, seed: Complex64) -> Result<Complex64> {
    let mut z = seed;
    for _ in 0..60 {
        let f = h(z) - target;
        let step_h = 1e-7 * z.norm().max(1.0);
        let d = (h(z + step_h) - h(z - step_h)) / (2.0 * step_h);
        if d.norm() < 1e-250 {
            break;
        }
        let step = f / d;
        z -= step;
        if step.norm() <= 1e-12 * z.norm().max(1.0) && f.norm() <= 1e-10 * target.norm().max(1.0) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        what: "chart inversion",
        iterations: 60,
    })
}
