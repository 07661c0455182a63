//! Constructions of lemniscatic maps: the conformal maps
//! Phi(z) = z + O(1/z) from the exterior of a compact set onto a
//! lemniscatic domain, for the families this library builds in closed
//! form, plus the transformation wrappers that produce further maps from
//! existing ones.

mod annulus;
mod disks;
mod laurent;
mod preimage;
mod radial;

pub use annulus::AnnulusChart;
pub use disks::TwoDiskConfig;
pub use preimage::PreimageConfig;
pub use radial::RadialSlitConfig;

use crate::branch::complex_powu;
use crate::domain::LemniscaticDomain;
use crate::error::{Error, Result};
use crate::riemann::{IntervalExteriorMap, RationalExteriorConfig, RationalExteriorMap, RiemannMap};
use annulus::DoublyConnectedMap;
use disks::TwoDiskMap;
use num_complex::Complex64;
use preimage::PreimageMap;
use radial::RadialSlitMap;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Clone)]
enum MapKind {
    RadialSlits(RadialSlitMap),
    Preimage(PreimageMap),
    TwoDisks(TwoDiskMap),
    DoublyConnected(DoublyConnectedMap),
    Linear {
        inner: Box<LemniscaticMap>,
        scale: Complex64,
        shift: Complex64,
    },
    Conjugate {
        inner: Box<LemniscaticMap>,
    },
    Rotate {
        inner: Box<LemniscaticMap>,
        angle: f64,
    },
}

/// A lemniscatic map: the unique conformal map from the exterior of a
/// compact set onto a lemniscatic domain, normalized to z + O(1/z) at
/// infinity. Immutable after construction, safe to share across threads.
#[derive(Clone)]
pub struct LemniscaticMap {
    domain: LemniscaticDomain,
    kind: MapKind,
}

impl std::fmt::Debug for LemniscaticMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LemniscaticMap")
            .field("family", &self.family_name())
            .field("capacity", &self.domain.capacity())
            .finish()
    }
}

impl LemniscaticMap {
    /// Map for n radial slits e^{2 pi i j/n} [C, D].
    pub fn radial_slits(cfg: RadialSlitConfig) -> Result<Self> {
        let map = RadialSlitMap::new(cfg)?;
        let domain = map.domain()?;
        Ok(Self {
            domain,
            kind: MapKind::RadialSlits(map),
        })
    }

    /// Map for a polynomial pre-image E = P^{-1}(Omega), P(z) = alpha z^n + alpha_0.
    pub fn polynomial_preimage(cfg: PreimageConfig) -> Result<Self> {
        let map = PreimageMap::new(cfg)?;
        let domain = map.domain()?;
        Ok(Self {
            domain,
            kind: MapKind::Preimage(map),
        })
    }

    /// Map for the exterior of two equal disks centred at +-z0.
    pub fn two_disks(cfg: TwoDiskConfig) -> Result<Self> {
        let map = TwoDiskMap::new(cfg)?;
        let domain = map.domain()?;
        Ok(Self {
            domain,
            kind: MapKind::TwoDisks(map),
        })
    }

    /// Map for a doubly connected exterior domain described by a chart `h`
    /// onto the annulus rho < |.| < 1/rho with h(inf) = -1 and
    /// h(z) = -1 + a1/z + O(1/z^2).
    pub fn doubly_connected(h: AnnulusChart, a1: Complex64, rho: f64) -> Result<Self> {
        let map = DoublyConnectedMap::new(h, a1, rho)?;
        let domain = map.domain()?;
        Ok(Self {
            domain,
            kind: MapKind::DoublyConnected(map),
        })
    }

    /// Map of tau(E) for tau(w) = a w + b: tau o Phi o tau^{-1}.
    pub fn linear_transform(self, scale: Complex64, shift: Complex64) -> Result<Self> {
        if scale == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter(
                "linear transform requires a != 0".into(),
            ));
        }
        let domain = self.domain.linear_image(scale, shift)?;
        Ok(Self {
            domain,
            kind: MapKind::Linear {
                inner: Box::new(self),
                scale,
                shift,
            },
        })
    }

    /// Map of conj(E): z -> conj(Phi(conj z)).
    pub fn conjugate(self) -> Self {
        let domain = self.domain.conjugate_image();
        Self {
            domain,
            kind: MapKind::Conjugate {
                inner: Box::new(self),
            },
        }
    }

    /// Map of e^{-i theta} E: z -> e^{-i theta} Phi(e^{i theta} z).
    pub fn rotate(self, angle: f64) -> Self {
        let rot = Complex64::from_polar(1.0, -angle);
        let domain = self
            .domain
            .linear_image(rot, Complex64::new(0.0, 0.0))
            .expect("rotation is invertible");
        Self {
            domain,
            kind: MapKind::Rotate {
                inner: Box::new(self),
                angle,
            },
        }
    }

    pub fn domain(&self) -> &LemniscaticDomain {
        &self.domain
    }

    /// Logarithmic capacity of the compact set.
    pub fn capacity(&self) -> f64 {
        self.domain.capacity()
    }

    pub fn family_name(&self) -> &'static str {
        match &self.kind {
            MapKind::RadialSlits(_) => "radial-slits",
            MapKind::Preimage(_) => "polynomial-preimage",
            MapKind::TwoDisks(_) => "two-disks",
            MapKind::DoublyConnected(_) => "doubly-connected",
            MapKind::Linear { .. } => "linear-transform",
            MapKind::Conjugate { .. } => "conjugate",
            MapKind::Rotate { .. } => "rotate",
        }
    }

    /// Membership in the compact set E (up to evaluation tolerance).
    pub fn source_contains(&self, z: Complex64) -> bool {
        match &self.kind {
            MapKind::RadialSlits(m) => m.contains(z),
            MapKind::Preimage(m) => m.contains(z),
            MapKind::TwoDisks(m) => m.contains(z),
            MapKind::DoublyConnected(m) => m.contains(z),
            MapKind::Linear {
                inner,
                scale,
                shift,
            } => inner.source_contains((z - shift) / scale),
            MapKind::Conjugate { inner } => inner.source_contains(z.conj()),
            MapKind::Rotate { inner, angle } => {
                inner.source_contains(Complex64::from_polar(1.0, *angle) * z)
            }
        }
    }

    /// Phi(z), for z outside E.
    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        match &self.kind {
            MapKind::RadialSlits(m) => m.forward(z),
            MapKind::Preimage(m) => m.forward(z),
            MapKind::TwoDisks(m) => m.forward(z),
            MapKind::DoublyConnected(m) => m.forward(z),
            MapKind::Linear {
                inner,
                scale,
                shift,
            } => Ok(scale * inner.forward((z - shift) / scale)? + shift),
            MapKind::Conjugate { inner } => Ok(inner.forward(z.conj())?.conj()),
            MapKind::Rotate { inner, angle } => {
                let rot = Complex64::from_polar(1.0, *angle);
                Ok(inner.forward(rot * z)? / rot)
            }
        }
    }

    /// Forward evaluation over a batch of points, parallel under the
    /// `parallel` feature; results are index-ordered in both modes.
    pub fn forward_batch(&self, points: &[Complex64]) -> Vec<Result<Complex64>> {
        crate::parallel::map_indexed(points.len(), |i| self.forward(points[i]))
    }

    /// Sequential reference path of [`Self::forward_batch`]; the parallel
    /// path must match it exactly.
    pub fn forward_batch_serial(&self, points: &[Complex64]) -> Vec<Result<Complex64>> {
        crate::parallel::map_indexed_serial(points.len(), |i| self.forward(points[i]))
    }

    /// Inverse evaluation over a batch of points.
    pub fn inverse_batch(&self, points: &[Complex64]) -> Vec<Result<Complex64>> {
        crate::parallel::map_indexed(points.len(), |i| self.inverse(points[i]))
    }

    /// Phi^{-1}(w), for w in the lemniscatic domain.
    pub fn inverse(&self, w: Complex64) -> Result<Complex64> {
        match &self.kind {
            MapKind::RadialSlits(m) => m.inverse(w, &self.domain),
            MapKind::Preimage(m) => m.inverse(w, &self.domain),
            MapKind::TwoDisks(m) => m.inverse(w, &self.domain),
            MapKind::DoublyConnected(m) => m.inverse(w, &self.domain),
            MapKind::Linear {
                inner,
                scale,
                shift,
            } => Ok(scale * inner.inverse((w - shift) / scale)? + shift),
            MapKind::Conjugate { inner } => Ok(inner.inverse(w.conj())?.conj()),
            MapKind::Rotate { inner, angle } => {
                let rot = Complex64::from_polar(1.0, *angle);
                Ok(inner.inverse(rot * w)? / rot)
            }
        }
    }

    /// Analytic continuation of the inverse formula past the lemniscate
    /// boundary, where the family's closed form permits it. This is what
    /// phase portraits of Phi^{-1} render.
    pub fn inverse_continued(&self, w: Complex64) -> Result<Complex64> {
        match &self.kind {
            MapKind::RadialSlits(m) => m.inverse_raw(w),
            MapKind::Preimage(m) => m.inverse_raw(w),
            MapKind::TwoDisks(m) => m.inverse(w, &self.domain),
            MapKind::DoublyConnected(m) => m.inverse(w, &self.domain),
            MapKind::Linear {
                inner,
                scale,
                shift,
            } => Ok(scale * inner.inverse_continued((w - shift) / scale)? + shift),
            MapKind::Conjugate { inner } => Ok(inner.inverse_continued(w.conj())?.conj()),
            MapKind::Rotate { inner, angle } => {
                let rot = Complex64::from_polar(1.0, *angle);
                Ok(inner.inverse_continued(rot * w)? / rot)
            }
        }
    }

    /// Green's function with pole at infinity of the exterior domain:
    /// g(z) = log |U(Phi(z))| - log mu.
    pub fn green(&self, z: Complex64) -> Result<f64> {
        if self.source_contains(z) {
            return Err(Error::OutsideDomain(z));
        }
        let w = self.forward(z)?;
        let u = self.domain.abs_u(w);
        if u == 0.0 {
            return Err(Error::OutsideDomain(z));
        }
        Ok(u.ln() - self.domain.capacity().ln())
    }

    /// Relative defect of the identity |U(Phi(z))| = mu |R(P(z))|^{1/n}
    /// coupling a pre-image construction to its Riemann map. Supported for
    /// the pre-image family and for radial slits (whose Omega is the
    /// interval [C^n, D^n]).
    pub fn green_identity_residual(&self, z: Complex64) -> Result<f64> {
        match &self.kind {
            MapKind::Preimage(m) => m.green_identity_residual(z, &self.domain),
            MapKind::RadialSlits(m) => {
                let cfg = m.config();
                let n = cfg.arms;
                let omega = IntervalExteriorMap::new(
                    cfg.inner.powi(n as i32),
                    cfg.outer.powi(n as i32),
                )?;
                let lhs = self.domain.abs_u(m.forward(z)?);
                let v = omega
                    .forward(complex_powu(z, n))
                    .map_err(|_| Error::OutsideDomain(z))?;
                let rhs = m.capacity() * v.norm().powf(1.0 / f64::from(n));
                Ok((lhs - rhs).abs() / rhs)
            }
            _ => Err(Error::Unsupported("green_identity_residual")),
        }
    }

    /// Boundary samples of E, one polyline per component. Empty for the
    /// doubly connected family, whose source set is known only through h.
    pub fn source_boundary(&self, per_component: usize) -> Result<Vec<Vec<Complex64>>> {
        match &self.kind {
            MapKind::RadialSlits(m) => Ok(m.config().boundary_points(per_component)),
            MapKind::Preimage(m) => m.boundary_points(per_component),
            MapKind::TwoDisks(m) => Ok(m.config().boundary_points(per_component)),
            MapKind::DoublyConnected(_) => Ok(Vec::new()),
            MapKind::Linear {
                inner,
                scale,
                shift,
            } => Ok(inner
                .source_boundary(per_component)?
                .into_iter()
                .map(|c| c.into_iter().map(|p| scale * p + shift).collect())
                .collect()),
            MapKind::Conjugate { inner } => Ok(inner
                .source_boundary(per_component)?
                .into_iter()
                .map(|c| c.into_iter().map(|p| p.conj()).collect())
                .collect()),
            MapKind::Rotate { inner, angle } => {
                let rot = Complex64::from_polar(1.0, -*angle);
                Ok(inner
                    .source_boundary(per_component)?
                    .into_iter()
                    .map(|c| c.into_iter().map(|p| rot * p).collect())
                    .collect())
            }
        }
    }

    /// Points just outside the boundary of E, displaced outward by
    /// `offset` in a family-appropriate way (pulled back from the circle
    /// |.| = 1 + offset for the slit families, radially for the disks).
    pub fn boundary_probes(&self, per_component: usize, offset: f64) -> Result<Vec<Complex64>> {
        match &self.kind {
            MapKind::RadialSlits(m) => Ok(m.boundary_probes(per_component, offset)),
            MapKind::Preimage(m) => m.boundary_probes(per_component, offset),
            MapKind::TwoDisks(m) => {
                let cfg = m.config();
                let grown = TwoDiskConfig {
                    center: cfg.center,
                    radius: cfg.radius + offset,
                };
                Ok(grown.boundary_points(per_component).into_iter().flatten().collect())
            }
            MapKind::DoublyConnected(_) => Ok(Vec::new()),
            MapKind::Linear {
                inner,
                scale,
                shift,
            } => Ok(inner
                .boundary_probes(per_component, offset / scale.norm())?
                .into_iter()
                .map(|p| scale * p + shift)
                .collect()),
            MapKind::Conjugate { inner } => Ok(inner
                .boundary_probes(per_component, offset)?
                .into_iter()
                .map(|p| p.conj())
                .collect()),
            MapKind::Rotate { inner, angle } => {
                let rot = Complex64::from_polar(1.0, -*angle);
                Ok(inner
                    .boundary_probes(per_component, offset)?
                    .into_iter()
                    .map(|p| rot * p)
                    .collect())
            }
        }
    }

    /// Directions of rays through the component midpoints, used to
    /// estimate how many components a Green level curve still has.
    pub fn component_rays(&self) -> Vec<f64> {
        match &self.kind {
            MapKind::RadialSlits(m) => {
                let n = m.config().arms;
                (0..n).map(|j| 2.0 * PI * f64::from(j) / f64::from(n)).collect()
            }
            MapKind::Preimage(m) => {
                let n = m.degree();
                (0..n).map(|j| 2.0 * PI * f64::from(j) / f64::from(n)).collect()
            }
            MapKind::TwoDisks(_) => vec![0.0, PI],
            MapKind::DoublyConnected(_) => Vec::new(),
            MapKind::Linear { inner, scale, .. } => inner
                .component_rays()
                .iter()
                .map(|a| a + scale.arg())
                .collect(),
            MapKind::Conjugate { inner } => {
                inner.component_rays().iter().map(|a| -a).collect()
            }
            MapKind::Rotate { inner, angle } => inner
                .component_rays()
                .iter()
                .map(|a| a - angle)
                .collect(),
        }
    }

    /// Number of components of E.
    pub fn component_count(&self) -> usize {
        match &self.kind {
            MapKind::RadialSlits(m) => m.config().arms as usize,
            MapKind::Preimage(m) => m.degree() as usize,
            MapKind::TwoDisks(_) | MapKind::DoublyConnected(_) => 2,
            MapKind::Linear { inner, .. }
            | MapKind::Conjugate { inner }
            | MapKind::Rotate { inner, .. } => inner.component_count(),
        }
    }

    /// A radius comfortably enclosing E, for probe and window defaults.
    pub fn outer_radius(&self) -> f64 {
        match &self.kind {
            MapKind::RadialSlits(m) => m.config().outer,
            MapKind::Preimage(m) => m.scale(),
            MapKind::TwoDisks(m) => m.config().center + m.config().radius,
            MapKind::DoublyConnected(m) => 4.0 * m.capacity(),
            MapKind::Linear {
                inner,
                scale,
                shift,
            } => scale.norm() * inner.outer_radius() + shift.norm(),
            MapKind::Conjugate { inner } => inner.outer_radius(),
            MapKind::Rotate { inner, .. } => inner.outer_radius(),
        }
    }
}

/// A family selector with plain-number parameters, shared by the CLI and
/// the verification driver.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    RadialSlits { arms: u32, inner: f64, outer: f64 },
    TwoDisks { center: f64, radius: f64 },
    RationalExterior { degree: u32, phi: f64, boundary_radius: f64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::RadialSlits { .. } => "radial-slits",
            FamilySpec::TwoDisks { .. } => "two-disks",
            FamilySpec::RationalExterior { .. } => "rational-exterior",
        }
    }

    pub fn parameters(&self) -> Vec<(&'static str, f64)> {
        match *self {
            FamilySpec::RadialSlits { arms, inner, outer } => vec![
                ("arms", f64::from(arms)),
                ("inner", inner),
                ("outer", outer),
            ],
            FamilySpec::TwoDisks { center, radius } => {
                vec![("center", center), ("radius", radius)]
            }
            FamilySpec::RationalExterior {
                degree,
                phi,
                boundary_radius,
            } => vec![
                ("degree", f64::from(degree)),
                ("phi", phi),
                ("boundary_radius", boundary_radius),
            ],
        }
    }

    pub fn build(&self) -> Result<LemniscaticMap> {
        match *self {
            FamilySpec::RadialSlits { arms, inner, outer } => {
                LemniscaticMap::radial_slits(RadialSlitConfig { arms, inner, outer })
            }
            FamilySpec::TwoDisks { center, radius } => {
                LemniscaticMap::two_disks(TwoDiskConfig { center, radius })
            }
            FamilySpec::RationalExterior {
                degree,
                phi,
                boundary_radius,
            } => {
                let riemann = RationalExteriorMap::new(RationalExteriorConfig {
                    lambda: Complex64::new(-1.0, 0.0),
                    phi,
                    r: boundary_radius,
                })?;
                LemniscaticMap::polynomial_preimage(PreimageConfig {
                    riemann: Arc::new(riemann),
                    degree,
                    leading: 1.0,
                    shift: 0.0,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests;
