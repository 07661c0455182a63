//! Normalization probes: how far a map strays from Phi(z) = z on large
//! circles, and the decay rate of the deviation.

use crate::error::{Error, Result};
use crate::maps::LemniscaticMap;
use num_complex::Complex64;
use std::f64::consts::PI;

const PROBE_SAMPLES: usize = 256;

/// max |Phi(z) - z| over 256 samples of the circle |z| = radius. The
/// circle must lie outside the compact set.
pub fn normalization_probe(map: &LemniscaticMap, radius: f64) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "probe radius must be positive, got {radius}"
        )));
    }
    let mut worst: f64 = 0.0;
    for i in 0..PROBE_SAMPLES {
        let z = Complex64::from_polar(radius, 2.0 * PI * i as f64 / PROBE_SAMPLES as f64);
        if map.source_contains(z) {
            return Err(Error::OutsideDomain(z));
        }
        let w = map.forward(z)?;
        worst = worst.max((w - z).norm());
    }
    Ok(worst)
}

/// Least-squares slope of log(probe) against log(radius); for a map with
/// Phi(z) - z = O(1/z^p) this approaches -p.
pub fn decay_exponent(map: &LemniscaticMap, radii: &[f64]) -> Result<f64> {
    if radii.len() < 2 {
        return Err(Error::InvalidParameter(
            "decay fit needs at least two radii".into(),
        ));
    }
    let points: Vec<(f64, f64)> = radii
        .iter()
        .map(|&r| Ok((r.ln(), normalization_probe(map, r)?.ln())))
        .collect::<Result<_>>()?;
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{FamilySpec, LemniscaticMap, RadialSlitConfig, TwoDiskConfig};

    #[test]
    fn probe_is_small_for_every_family() {
        let maps = [
            LemniscaticMap::radial_slits(RadialSlitConfig {
                arms: 2,
                inner: 0.1,
                outer: 1.0,
            })
            .unwrap(),
            LemniscaticMap::radial_slits(RadialSlitConfig {
                arms: 3,
                inner: 1.0,
                outer: 2.0,
            })
            .unwrap(),
            LemniscaticMap::two_disks(TwoDiskConfig {
                center: 1.0,
                radius: 0.7,
            })
            .unwrap(),
            FamilySpec::RationalExterior {
                degree: 3,
                phi: std::f64::consts::FRAC_PI_2,
                boundary_radius: 1.1,
            }
            .build()
            .unwrap(),
        ];
        for map in &maps {
            let p = normalization_probe(map, 1e6).unwrap();
            assert!(p <= 1e-4, "{}: probe {p}", map.family_name());
        }
    }

    #[test]
    fn probe_survives_a_linear_transform() {
        let map = LemniscaticMap::radial_slits(RadialSlitConfig {
            arms: 2,
            inner: 0.1,
            outer: 1.0,
        })
        .unwrap()
        .linear_transform(Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0))
        .unwrap();
        assert!(normalization_probe(&map, 1e6).unwrap() <= 1e-4);
    }

    #[test]
    fn probe_rejects_circles_meeting_the_set() {
        let map = LemniscaticMap::radial_slits(RadialSlitConfig {
            arms: 2,
            inner: 0.1,
            outer: 1.0,
        })
        .unwrap();
        assert!(normalization_probe(&map, 0.5).is_err());
    }

    #[test]
    fn radial_decay_rate_matches_the_arm_count() {
        for (n, c, d) in [(2u32, 0.1, 1.0), (3u32, 1.0, 2.0)] {
            let map = LemniscaticMap::radial_slits(RadialSlitConfig {
                arms: n,
                inner: c,
                outer: d,
            })
            .unwrap();
            let slope = decay_exponent(&map, &[1e3, 1e4, 1e5]).unwrap();
            let expected = -(f64::from(n) - 1.0);
            assert!(
                (slope - expected).abs() <= 0.2,
                "n={n}: slope {slope} vs {expected}"
            );
            // tenfold radius shrinks the probe by about 10^{n-1}
            let p1 = normalization_probe(&map, 1e4).unwrap();
            let p10 = normalization_probe(&map, 1e5).unwrap();
            let ratio = p10 / p1;
            let ideal = 10.0f64.powi(-(n as i32 - 1));
            assert!(ratio < 2.0 * ideal && ratio > 0.5 * ideal);
        }
    }
}
