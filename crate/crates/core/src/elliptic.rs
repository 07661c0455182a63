//! Real and complex elliptic special functions.
//!
//! Covers exactly what the map constructions need: the arithmetic-geometric
//! mean, the complete elliptic integral K, Jacobi sn/cn/dn for real and
//! complex argument, the slit-parameter product L(rho), and the conformal
//! map from a circular annulus onto the plane with three collinear slits.
//!
//! Real-argument Jacobi functions are computed by a descending Landen
//! recursion driven to modulus < 1e-16; complex arguments are assembled
//! from real-argument values at the moduli k and k' = sqrt(1 - k^2).

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Moduli below this are treated as zero in the Landen recursion.
const LANDEN_TOL: f64 = 1e-16;

/// Relative tolerance for the AGM fixed point.
const AGM_TOL: f64 = 1e-15;

/// |sn| beyond this is reported as a pole hit (pole distance ~ 1e-12).
const SN_POLE_LIMIT: f64 = 1e12;

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "agm requires positive arguments, got ({a}, {b})"
        )));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= AGM_TOL * a.abs() {
            return Ok(0.5 * (a + b));
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
    }
    Ok(0.5 * (a + b))
}

/// Complete elliptic integral of the first kind, modulus convention:
/// K(k) = integral of dt / sqrt((1-t^2)(1-k^2 t^2)) over [0, 1].
pub fn complete_elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "complete_elliptic_k requires 0 <= k < 1, got {k}"
        )));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    Ok(PI / (2.0 * agm(1.0, kp)?))
}

/// Descending Landen moduli m1 > m2 > ... > mN with mN < LANDEN_TOL,
/// starting from m0 = k (excluded from the result).
fn landen_moduli(k: f64) -> Vec<f64> {
    let mut ks = Vec::new();
    let mut m = k;
    while m > LANDEN_TOL {
        let mp = ((1.0 - m) * (1.0 + m)).sqrt();
        // (1 - m') / (1 + m') computed without cancellation
        m = (m / (1.0 + mp)).powi(2);
        ks.push(m);
    }
    ks
}

/// Jacobi sn, cn, dn for real argument and modulus k in [0, 1).
pub fn jacobi_sn_cn_dn(u: f64, k: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "jacobi_sn_cn_dn requires 0 <= k < 1, got {k}"
        )));
    }
    let ks = landen_moduli(k);
    let mut scale = 1.0;
    for &m in &ks {
        scale *= 1.0 + m;
    }
    let u_small = u / scale;
    let (mut s, mut c) = u_small.sin_cos();
    let mut d = 1.0;
    for &m in ks.iter().rev() {
        let s2 = s * s;
        let denom = 1.0 + m * s2;
        let sn = (1.0 + m) * s / denom;
        let cn = c * d / denom;
        let dn = (1.0 - m * s2) / denom;
        s = sn;
        c = cn;
        d = dn;
    }
    Ok((s, c, d))
}

/// sn, cn, dn at complex argument as (numerator, shared real denominator).
///
/// The denominator vanishes exactly at the poles, so callers composing a
/// Moebius transformation on top of sn can stay finite through them.
pub(crate) fn jacobi_triple_fraction(
    z: Complex64,
    k: f64,
) -> Result<(Complex64, Complex64, Complex64, f64)> {
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let (s, c, d) = jacobi_sn_cn_dn(z.re, k)?;
    let (s1, c1, d1) = jacobi_sn_cn_dn(z.im, kp)?;
    let denom = c1 * c1 + k * k * s * s * s1 * s1;
    let sn_num = Complex64::new(s * d1, c * d * s1 * c1);
    let cn_num = Complex64::new(c * c1, -s * d * s1 * d1);
    let dn_num = Complex64::new(d * c1 * d1, -k * k * s * c * s1);
    Ok((sn_num, cn_num, dn_num, denom))
}

/// Jacobi sn for complex argument, modulus k in (0, 1).
///
/// Poles sit at i K' modulo the period lattice; evaluation within about
/// 1e-12 of one reports a pole error.
pub fn jacobi_sn_complex(z: Complex64, k: f64) -> Result<Complex64> {
    if !(0.0 < k && k < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "jacobi_sn_complex requires 0 < k < 1, got {k}"
        )));
    }
    let (sn_num, _, _, denom) = jacobi_triple_fraction(z, k)?;
    let sn = sn_num / denom;
    if !sn.is_finite() || sn.norm() > SN_POLE_LIMIT / k {
        return Err(Error::NearPole(z));
    }
    Ok(sn)
}

/// sn, cn, dn together for complex argument.
pub fn jacobi_sn_cn_dn_complex(z: Complex64, k: f64) -> Result<(Complex64, Complex64, Complex64)> {
    if !(0.0 < k && k < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "jacobi_sn_cn_dn_complex requires 0 < k < 1, got {k}"
        )));
    }
    let (sn_num, cn_num, dn_num, denom) = jacobi_triple_fraction(z, k)?;
    let sn = sn_num / denom;
    if !sn.is_finite() || sn.norm() > SN_POLE_LIMIT / k {
        return Err(Error::NearPole(z));
    }
    Ok((sn, cn_num / denom, dn_num / denom))
}

/// Slit parameter L(rho) = 2 rho * prod_{n>=1} ((1+rho^{8n})/(1+rho^{8n-4}))^2.
///
/// The product is truncated once a factor differs from 1 by less than
/// 1e-17; it converges very quickly for rho bounded away from 1.
pub fn lemniscate_modulus(rho: f64) -> Result<f64> {
    if !(0.0 < rho && rho < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lemniscate_modulus requires 0 < rho < 1, got {rho}"
        )));
    }
    let mut l = 2.0 * rho;
    let r4 = rho.powi(4);
    let r8 = r4 * r4;
    // p8n = rho^{8n}, p8n4 = rho^{8n-4}
    let mut p8n = r8;
    let mut p8n4 = r4;
    for _ in 0..512 {
        let factor = ((1.0 + p8n) / (1.0 + p8n4)).powi(2);
        l *= factor;
        if (factor - 1.0).abs() < 1e-17 {
            return Ok(l);
        }
        p8n *= r8;
        p8n4 *= r8;
    }
    Ok(l)
}

/// Parameter bundle for the annulus-to-slit-plane map.
///
/// From the annulus ratio rho it carries L = L(rho), the elliptic modulus
/// k = L^2, the quarter period K(k), and K' defined through
/// K' = -(4K/pi) log(rho); that this equals the complementary integral
/// K(k') is checked in the tests rather than assumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParameters {
    pub rho: f64,
    pub l: f64,
    pub k: f64,
    pub big_k: f64,
    pub big_k_prime: f64,
}

impl EllipticParameters {
    pub fn new(rho: f64) -> Result<Self> {
        if !(0.0 < rho && rho < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "EllipticParameters requires 0 < rho < 1, got {rho}"
            )));
        }
        let l = lemniscate_modulus(rho)?;
        let k = l * l;
        let big_k = complete_elliptic_k(k)?;
        let big_k_prime = -(4.0 * big_k / PI) * rho.ln();
        Ok(Self {
            rho,
            l,
            k,
            big_k,
            big_k_prime,
        })
    }
}

/// Argument of sn inside the annulus-to-slit map: (2K/pi) i log(z/rho) + K.
fn slit_map_argument(z: Complex64, p: &EllipticParameters) -> Complex64 {
    let log = (z / p.rho).ln();
    Complex64::new(0.0, 2.0 * p.big_k / PI) * log + p.big_k
}

/// Conformal map f from the annulus rho < |z| < 1/rho onto the plane with
/// the slits (-inf, -1/L], [-L, L], [1/L, inf):
/// f(z) = L sn((2K/pi) i log(z/rho) + K; k).
///
/// Independent of the branch of the logarithm since sn has period 4K.
pub fn annulus_to_slit(z: Complex64, p: &EllipticParameters) -> Result<Complex64> {
    let r = z.norm();
    if !(p.rho < r && r < 1.0 / p.rho) {
        return Err(Error::OutsideDomain(z));
    }
    Ok(p.l * jacobi_sn_complex(slit_map_argument(z, p), p.k)?)
}

/// Derivative of the annulus-to-slit map:
/// f'(z) = L cn dn (2K/pi) i / z at the same sn argument.
pub fn annulus_to_slit_derivative(z: Complex64, p: &EllipticParameters) -> Result<Complex64> {
    let r = z.norm();
    if !(p.rho < r && r < 1.0 / p.rho) {
        return Err(Error::OutsideDomain(z));
    }
    let (_, cn, dn) = jacobi_sn_cn_dn_complex(slit_map_argument(z, p), p.k)?;
    Ok(p.l * cn * dn * Complex64::new(0.0, 2.0 * p.big_k / PI) / z)
}

/// Closed form of f'(-1): (1 - L^2) * 2K / pi.
pub fn slit_derivative_at_minus_one(p: &EllipticParameters) -> f64 {
    (1.0 - p.l * p.l) * 2.0 * p.big_k / PI
}

/// Projective value of f at the sn argument for `z`, as (num, den) with
/// f = num / den. Finite through the poles of sn; used by compositions
/// that apply a Moebius transformation to f.
pub(crate) fn annulus_to_slit_fraction(
    z: Complex64,
    p: &EllipticParameters,
) -> Result<(Complex64, Complex64)> {
    let (sn_num, _, _, denom) = jacobi_triple_fraction(slit_map_argument(z, p), p.k)?;
    Ok((p.l * sn_num, Complex64::new(denom, 0.0)))
}
