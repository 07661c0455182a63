//! Lemniscatic domains: exteriors of level sets of |U(w)| with
//! U(w) = prod (w - a_j)^{m_j}, sum of exponents 1, level mu > 0.
//!
//! U itself is multiple valued in general; its absolute value is single
//! valued and is all the library ever evaluates.

use crate::branch::{complex_powu, principal_root, sector_rotation};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Compressed representation |U(w)| = |w^n - constant|^{1/n}, available
/// when all exponents equal 1/n and the centers are the n-th roots of the
/// constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricForm {
    pub degree: u32,
    pub constant: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemniscaticDomain {
    centers: Vec<Complex64>,
    exponents: Vec<f64>,
    capacity: f64,
    symmetric_form: Option<SymmetricForm>,
}

impl LemniscaticDomain {
    pub fn new(centers: Vec<Complex64>, exponents: Vec<f64>, capacity: f64) -> Result<Self> {
        if centers.is_empty() || centers.len() != exponents.len() {
            return Err(Error::InvalidParameter(
                "centers and exponents must be non-empty and of equal length".into(),
            ));
        }
        if !capacity.is_finite() || capacity <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "capacity must be positive, got {capacity}"
            )));
        }
        if exponents.iter().any(|&m| !m.is_finite() || m <= 0.0) {
            return Err(Error::InvalidParameter("exponents must be positive".into()));
        }
        let total: f64 = exponents.iter().sum();
        if (total - 1.0).abs() > 1e-14 {
            return Err(Error::InvalidParameter(format!(
                "exponents must sum to 1, got {total}"
            )));
        }
        for (i, a) in centers.iter().enumerate() {
            for b in centers.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::InvalidParameter(format!(
                        "centers must be pairwise distinct, found duplicate {a}"
                    )));
                }
            }
        }
        Ok(Self {
            centers,
            exponents,
            capacity,
            symmetric_form: None,
        })
    }

    /// Domain with |U(w)| = |w^n - constant|^{1/n}: centers at the n-th
    /// roots of the constant, exponents 1/n each.
    pub fn symmetric(degree: u32, constant: Complex64, capacity: f64) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidParameter("degree must be >= 1".into()));
        }
        let n = degree;
        let root = principal_root(constant, n);
        let centers: Vec<Complex64> = (0..n).map(|j| root * sector_rotation(j, n)).collect();
        let exponents = vec![1.0 / f64::from(n); n as usize];
        let mut d = Self::new(centers, exponents, capacity)?;
        d.symmetric_form = Some(SymmetricForm { degree, constant });
        Ok(d)
    }

    pub fn centers(&self) -> &[Complex64] {
        &self.centers
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    /// Logarithmic capacity of the complement, equal to the level value.
    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn symmetric_form(&self) -> Option<SymmetricForm> {
        self.symmetric_form
    }

    /// |U(w)| as the product of |w - a_j|^{m_j}, evaluated through logs.
    pub fn abs_u(&self, w: Complex64) -> f64 {
        let mut log_sum = 0.0;
        for (a, m) in self.centers.iter().zip(&self.exponents) {
            let d = (w - a).norm();
            if d == 0.0 {
                return 0.0;
            }
            log_sum += m * d.ln();
        }
        log_sum.exp()
    }

    /// |U(w)| through the symmetric form, when present.
    pub fn abs_u_symmetric(&self, w: Complex64) -> Option<f64> {
        self.symmetric_form.map(|sf| {
            (complex_powu(w, sf.degree) - sf.constant)
                .norm()
                .powf(1.0 / f64::from(sf.degree))
        })
    }

    /// Membership in the open lemniscatic domain {|U(w)| > mu}.
    pub fn contains(&self, w: Complex64) -> bool {
        self.abs_u(w) > self.capacity
    }

    /// Green's function with pole at infinity of the domain itself:
    /// log |U(w)| - log mu, positive inside, zero on the boundary.
    pub fn green(&self, w: Complex64) -> Result<f64> {
        let u = self.abs_u(w);
        if u <= self.capacity {
            return Err(Error::OutsideDomain(w));
        }
        Ok(u.ln() - self.capacity.ln())
    }

    /// Same quantity without the membership gate; -inf at the centers.
    pub fn green_extended(&self, w: Complex64) -> f64 {
        let u = self.abs_u(w);
        if u == 0.0 {
            f64::NEG_INFINITY
        } else {
            u.ln() - self.capacity.ln()
        }
    }

    /// Domain of tau(L) for tau(w) = a w + b.
    pub fn linear_image(&self, a: Complex64, b: Complex64) -> Result<Self> {
        if a == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter(
                "linear transform requires a != 0".into(),
            ));
        }
        let centers = self.centers.iter().map(|&c| a * c + b).collect();
        let mut d = Self::new(centers, self.exponents.clone(), a.norm() * self.capacity)?;
        if b == Complex64::new(0.0, 0.0) {
            if let Some(sf) = self.symmetric_form {
                d.symmetric_form = Some(SymmetricForm {
                    degree: sf.degree,
                    constant: complex_powu(a, sf.degree) * sf.constant,
                });
            }
        }
        Ok(d)
    }

    /// Domain of conj(L).
    pub fn conjugate_image(&self) -> Self {
        let mut d = Self {
            centers: self.centers.iter().map(|c| c.conj()).collect(),
            exponents: self.exponents.clone(),
            capacity: self.capacity,
            symmetric_form: None,
        };
        if let Some(sf) = self.symmetric_form {
            d.symmetric_form = Some(SymmetricForm {
                degree: sf.degree,
                constant: sf.constant.conj(),
            });
        }
        d
    }
}
