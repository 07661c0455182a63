//! Branch-cut aware helpers for principal roots and sector bookkeeping.
//!
//! The principal n-th root is cut along the negative real axis, with
//! argument in (-pi/n, pi/n]. Sector indices partition the plane into n
//! wedges of opening 2*pi/n centred on the rays arg = 2*pi*j/n.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Principal n-th root: modulus |z|^(1/n), argument arg(z)/n with
/// arg(z) in (-pi, pi].
pub fn principal_root(z: Complex64, n: u32) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    if n == 1 {
        return z;
    }
    let inv = 1.0 / f64::from(n);
    Complex64::from_polar(z.norm().powf(inv), z.arg() * inv)
}

/// Complex integer power by exponentiation (n >= 1).
pub fn complex_powu(z: Complex64, n: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Index of the sector of opening 2*pi/n containing `w`, counted
/// counter-clockwise from the sector centred on the positive real axis.
pub fn sector_index(w: Complex64, n: u32) -> u32 {
    let nf = f64::from(n);
    let j = (w.arg() * nf / (2.0 * PI)).round() as i64;
    j.rem_euclid(i64::from(n)) as u32
}

/// Unit rotation e^(2*pi*i*j/n).
pub fn sector_rotation(j: u32, n: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * f64::from(j) / f64::from(n))
}

/// True when `v` is within the guard band of the principal-root cut
/// (-inf, 0]. Used to surface silent branch flips as errors.
pub fn near_branch_cut(v: Complex64, guard: f64) -> bool {
    v.re < 0.0 && v.im.abs() <= guard * v.re.abs()
}

/// Radius beyond which a map that is z + O((scale/z)^n / z) may return z
/// unchanged: the correction is below one ulp there, and staying below
/// the radius keeps |z|^(2n) inside f64 range for the closed forms.
pub(crate) fn far_field_radius(scale: f64, n: u32) -> f64 {
    let nf = f64::from(n);
    let ulp_safe = scale * 10f64.powf(16.0 / nf);
    let overflow_safe = 10f64.powf(140.0 / nf);
    ulp_safe.max((1e8 * scale).min(overflow_safe))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_root_of_positive_real_is_real() {
        let r = principal_root(Complex64::new(8.0, 0.0), 3);
        assert!((r.re - 2.0).abs() < 1e-15 && r.im.abs() < 1e-15);
    }

    #[test]
    fn principal_root_on_cut_has_argument_pi_over_n() {
        let r = principal_root(Complex64::new(-1.0, 0.0), 2);
        assert!((r - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn sector_index_covers_all_wedges() {
        for j in 0..5u32 {
            let w = sector_rotation(j, 5) * Complex64::new(2.0, 0.1);
            assert_eq!(sector_index(w, 5), j);
        }
    }

    #[test]
    fn powu_matches_repeated_multiplication() {
        let z = Complex64::new(0.7, -1.3);
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..7 {
            acc *= z;
        }
        assert!((complex_powu(z, 7) - acc).norm() <= 1e-12 * acc.norm());
    }
}
