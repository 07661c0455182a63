//! Phase portraits: rasterized samples of a complex function, colored by
//! argument, plus a detector for the phase singularities they exhibit.
//!
//! Pixels are sampled at their centres, top row first. A `None` sample
//! marks a point where the function is undefined (interior of the compact
//! set, poles); those pixels are flagged rather than colored.

use crate::analysis::contour::Window;
use crate::error::{Error, Result};
use crate::parallel;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Raster of complex samples over a window, row-major from the top-left
/// pixel; `None` entries are flagged interior/invalid points.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pub values: Vec<Option<Complex64>>,
}

impl PhaseGrid {
    pub fn pixel_center(&self, ix: usize, iy: usize) -> Complex64 {
        let dx = self.window.width() / self.width as f64;
        let dy = self.window.height() / self.height as f64;
        Complex64::new(
            self.window.x0 + (ix as f64 + 0.5) * dx,
            self.window.y1 - (iy as f64 + 0.5) * dy,
        )
    }

    pub fn value(&self, ix: usize, iy: usize) -> Option<Complex64> {
        self.values[iy * self.width + ix]
    }

    pub fn pixel_size(&self) -> (f64, f64) {
        (
            self.window.width() / self.width as f64,
            self.window.height() / self.height as f64,
        )
    }
}

fn render_impl<F>(f: &F, window: Window, width: usize, height: usize, serial: bool) -> Result<PhaseGrid>
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    if width == 0 || height == 0 {
        return Err(Error::InvalidParameter(
            "portrait dimensions must be positive".into(),
        ));
    }
    let dx = window.width() / width as f64;
    let dy = window.height() / height as f64;
    let sample = |idx: usize| {
        let (iy, ix) = (idx / width, idx % width);
        let z = Complex64::new(
            window.x0 + (ix as f64 + 0.5) * dx,
            window.y1 - (iy as f64 + 0.5) * dy,
        );
        f(z).filter(|v| v.is_finite())
    };
    let values = if serial {
        parallel::map_indexed_serial(width * height, sample)
    } else {
        parallel::map_indexed(width * height, sample)
    };
    Ok(PhaseGrid {
        window,
        width,
        height,
        values,
    })
}

/// Sample `f` at the pixel centres of a `width` x `height` raster.
pub fn render_phase_portrait<F>(
    f: &F,
    window: Window,
    width: usize,
    height: usize,
) -> Result<PhaseGrid>
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    render_impl(f, window, width, height, false)
}

/// Sequential reference path; the parallel renderer must match it bit for
/// bit (the determinism contract, also exercised by the benches).
pub fn render_phase_portrait_serial<F>(
    f: &F,
    window: Window,
    width: usize,
    height: usize,
) -> Result<PhaseGrid>
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    render_impl(f, window, width, height, true)
}

/// An isolated phase singularity detected in a raster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSingularity {
    /// centre of the detecting plaquette
    pub location: Complex64,
    /// winding charge; for branch-point singularities (where a phase
    /// discontinuity line terminates) this is the winding of the squared
    /// field, i.e. twice the half-integer charge
    pub charge: i32,
    /// false when the charge came from the squared-field pass
    pub plain_winding: bool,
}

fn wrap(a: f64) -> f64 {
    let mut x = a;
    while x > PI {
        x -= 2.0 * PI;
    }
    while x <= -PI {
        x += 2.0 * PI;
    }
    x
}

fn loop_winding(values: &[Complex64]) -> i32 {
    let mut total = 0.0;
    for i in 0..values.len() {
        let a = values[i].arg();
        let b = values[(i + 1) % values.len()].arg();
        total += wrap(b - a);
    }
    (total / (2.0 * PI)).round() as i32
}

/// Loop winding that refuses ambiguous loops: any step of half a turn or
/// more means the samples are too coarse for the rotation to be trusted.
fn strict_loop_winding(values: &[Complex64]) -> Option<i32> {
    let mut total = 0.0;
    for i in 0..values.len() {
        let a = values[i].arg();
        let b = values[(i + 1) % values.len()].arg();
        let d = wrap(b - a);
        if d.abs() >= 0.5 * PI {
            return None;
        }
        total += d;
    }
    Some((total / (2.0 * PI)).round() as i32)
}

/// Scan all 2x2 plaquettes for loops with non-trivial phase winding.
///
/// Ordinary zeros and poles of the sampled field carry integer winding and
/// are picked up directly by the plaquette sum. Zeros of square-root type
/// sit at the end of a phase discontinuity line and wind by a half
/// integer, which the wrapped plaquette sum cannot see; squaring the field
/// removes the two-valuedness, the standard trick for half-integer vortex
/// detection. The squared pass measures the winding on the ring of the
/// surrounding 4x4 pixel block (finer angular steps, no wrap ambiguity)
/// and keeps only odd values: an even squared winding belongs to an
/// integer-charge point already handled by the plain pass. Reported
/// charges from the squared pass are twice the half-integer charge and
/// carry `plain_winding = false`.
pub fn detect_phase_singularities(grid: &PhaseGrid) -> Vec<PhaseSingularity> {
    let mut out = Vec::new();
    if grid.width < 2 || grid.height < 2 {
        return out;
    }
    for iy in 0..grid.height - 1 {
        for ix in 0..grid.width - 1 {
            // counter-clockwise in the complex plane: rows run top-down
            let corners = [
                grid.value(ix, iy + 1),
                grid.value(ix + 1, iy + 1),
                grid.value(ix + 1, iy),
                grid.value(ix, iy),
            ];
            if corners.iter().any(|c| c.is_none()) {
                continue;
            }
            let vals: Vec<Complex64> = corners.iter().map(|c| c.unwrap()).collect();
            if vals.iter().any(|v| v.norm() == 0.0) {
                continue;
            }
            let location = 0.25
                * (grid.pixel_center(ix, iy)
                    + grid.pixel_center(ix + 1, iy)
                    + grid.pixel_center(ix, iy + 1)
                    + grid.pixel_center(ix + 1, iy + 1));
            let plain = loop_winding(&vals);
            if plain != 0 {
                out.push(PhaseSingularity {
                    location,
                    charge: plain,
                    plain_winding: true,
                });
                continue;
            }
            if let Some(ring) = block_ring(grid, ix, iy) {
                let squared: Vec<Complex64> = ring.iter().map(|v| v * v).collect();
                if let Some(w2) = strict_loop_winding(&squared) {
                    if w2 % 2 != 0 {
                        out.push(PhaseSingularity {
                            location,
                            charge: w2,
                            plain_winding: false,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Counter-clockwise ring of the 4x4 pixel block centred on plaquette
/// (ix, iy); `None` when the block leaves the grid or hits flagged pixels.
fn block_ring(grid: &PhaseGrid, ix: usize, iy: usize) -> Option<Vec<Complex64>> {
    if ix == 0 || iy == 0 || ix + 2 >= grid.width || iy + 2 >= grid.height {
        return None;
    }
    let (x0, y0) = (ix - 1, iy - 1);
    let mut ring = Vec::with_capacity(12);
    // bottom row left-to-right, right column upward, top row right-to-left,
    // left column downward (rows are stored top-down)
    for dx in 0..4 {
        ring.push(grid.value(x0 + dx, y0 + 3)?);
    }
    for dy in [2, 1] {
        ring.push(grid.value(x0 + 3, y0 + dy)?);
    }
    for dx in [3, 2, 1, 0] {
        ring.push(grid.value(x0 + dx, y0)?);
    }
    for dy in [1, 2] {
        ring.push(grid.value(x0, y0 + dy)?);
    }
    Some(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{LemniscaticMap, RadialSlitConfig, TwoDiskConfig};

    fn window(h: f64) -> Window {
        Window::square(h).unwrap()
    }

    #[test]
    fn identity_portrait_has_linear_hue() {
        let f = |z: Complex64| Some(z);
        let grid = render_phase_portrait(&f, window(2.0), 64, 64).unwrap();
        for iy in 0..64 {
            for ix in 0..64 {
                let z = grid.pixel_center(ix, iy);
                let v = grid.value(ix, iy).unwrap();
                assert_eq!(v, z);
                assert!((v.arg() - z.arg()).abs() < 1e-15);
            }
        }
        let sing = detect_phase_singularities(&grid);
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].charge, 1);
        assert!(sing[0].location.norm() < 0.1);
    }

    #[test]
    fn parallel_and_serial_renders_are_bit_identical() {
        let map = LemniscaticMap::radial_slits(RadialSlitConfig {
            arms: 2,
            inner: 0.1,
            outer: 1.0,
        })
        .unwrap();
        let f = |w: Complex64| map.inverse_continued(w).ok();
        let a = render_phase_portrait(&f, window(1.5), 96, 96).unwrap();
        let b = render_phase_portrait_serial(&f, window(1.5), 96, 96).unwrap();
        assert_eq!(a, b);
        let c = render_phase_portrait(&f, window(1.5), 96, 96).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn inverse_portrait_exhibits_the_three_zeros() {
        // zeros of the two-interval inverse at 0 and +-sqrt(C D)
        let map = LemniscaticMap::radial_slits(RadialSlitConfig {
            arms: 2,
            inner: 0.1,
            outer: 1.0,
        })
        .unwrap();
        let f = |w: Complex64| map.inverse_continued(w).ok();
        let grid = render_phase_portrait(&f, window(1.5), 400, 400).unwrap();
        let singularities = detect_phase_singularities(&grid);
        let (px, py) = grid.pixel_size();
        let pixel = px.hypot(py);
        let root = 0.1f64.sqrt();
        for target in [
            Complex64::new(0.0, 0.0),
            Complex64::new(root, 0.0),
            Complex64::new(-root, 0.0),
        ] {
            let hit = singularities
                .iter()
                .find(|s| s.charge == 1 && (s.location - target).norm() <= pixel);
            assert!(hit.is_some(), "no +1 singularity within a pixel of {target}");
        }
    }

    #[test]
    fn conjugate_symmetry_of_real_symmetric_maps() {
        let map = LemniscaticMap::two_disks(TwoDiskConfig {
            center: 1.0,
            radius: 0.5,
        })
        .unwrap();
        let f = |z: Complex64| map.forward(z).ok();
        // symmetric window with an even number of rows pairs pixel centres
        // across the real axis
        let grid = render_phase_portrait(&f, window(3.0), 64, 64).unwrap();
        for iy in 0..64 {
            for ix in 0..64 {
                let a = grid.value(ix, iy);
                let b = grid.value(ix, 63 - iy);
                match (a, b) {
                    (Some(a), Some(b)) => {
                        assert!((a - b.conj()).norm() < 1e-10 * a.norm().max(1.0))
                    }
                    (None, None) => {}
                    _ => panic!("asymmetric flagging at ({ix}, {iy})"),
                }
            }
        }
    }

    #[test]
    fn interior_pixels_are_flagged() {
        let map = LemniscaticMap::two_disks(TwoDiskConfig {
            center: 1.0,
            radius: 0.5,
        })
        .unwrap();
        let f = |z: Complex64| map.forward(z).ok();
        let grid = render_phase_portrait(&f, window(2.0), 64, 64).unwrap();
        let mut flagged = 0;
        for iy in 0..64 {
            for ix in 0..64 {
                if grid.value(ix, iy).is_none() {
                    flagged += 1;
                    let z = grid.pixel_center(ix, iy);
                    assert!(map.source_contains(z), "flagged exterior pixel at {z}");
                }
            }
        }
        // two disks of radius 0.5 in a 4x4 window cover ~10% of the pixels
        assert!(flagged > 200, "only {flagged} interior pixels");
    }
}
