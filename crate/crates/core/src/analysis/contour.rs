//! Level-curve extraction by marching squares with bisection refinement.
//!
//! The tracer works on any scalar field given as a closure; points where
//! the closure returns `None` (inside the compact set) count as below
//! every level. Cell-edge crossings are refined by bisection until the
//! field value matches the level to 1e-10, so every emitted point
//! re-evaluates to its level well within the 1e-6 contract.

use crate::error::{Error, Result};
use crate::maps::LemniscaticMap;
use crate::parallel;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;

/// Axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite())
            || !(x0 < x1 && y0 < y1)
        {
            return Err(Error::InvalidParameter(format!(
                "degenerate window [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    pub fn square(half_extent: f64) -> Result<Self> {
        Self::new(-half_extent, half_extent, -half_extent, half_extent)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }
}

/// A traced level curve of a Green's function.
#[derive(Debug, Clone)]
pub struct Curve {
    pub points: Vec<Complex64>,
    pub closed: bool,
    /// sigma with g = log(sigma) on the curve
    pub level: f64,
}

const BELOW: f64 = f64::NEG_INFINITY;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct EdgeKey {
    ix: usize,
    iy: usize,
    horizontal: bool,
}

/// Trace the contours g = log(sigma) of a scalar field on a sampling grid
/// of `resolution` x `resolution` cells. Returns one curve per connected
/// component found in the window; no contour is not an error.
pub fn trace_level_curve<G>(
    g: &G,
    sigma: f64,
    window: Window,
    resolution: usize,
) -> Result<Vec<Curve>>
where
    G: Fn(Complex64) -> Option<f64> + Sync,
{
    if sigma <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "level curves require sigma > 1, got {sigma}"
        )));
    }
    if resolution < 2 {
        return Err(Error::InvalidParameter(
            "resolution must be at least 2 cells".into(),
        ));
    }
    let level = sigma.ln();
    let nx = resolution + 1;
    let ny = resolution + 1;
    let dx = window.width() / resolution as f64;
    let dy = window.height() / resolution as f64;
    let point = |ix: usize, iy: usize| {
        Complex64::new(window.x0 + ix as f64 * dx, window.y0 + iy as f64 * dy)
    };
    // grid values, rows in parallel, deterministic order
    let values: Vec<f64> = parallel::map_indexed(nx * ny, |idx| {
        let (iy, ix) = (idx / nx, idx % nx);
        g(point(ix, iy)).unwrap_or(BELOW)
    });
    let value = |ix: usize, iy: usize| values[iy * nx + ix];

    // refine a crossing along the segment [lo, hi] with g(lo) <= level < g(hi)
    let refine = |a: Complex64, b: Complex64| -> Complex64 {
        let (mut lo, mut hi) = (a, b);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let vm = g(mid).unwrap_or(BELOW);
            if vm.is_finite() && (vm - level).abs() <= 1e-10 {
                return mid;
            }
            if vm > level {
                hi = mid;
            } else {
                lo = mid;
            }
            if (hi - lo).norm() < 1e-14 * (dx + dy) {
                break;
            }
        }
        0.5 * (lo + hi)
    };

    // crossing points keyed by grid edge, shared between adjacent cells
    let mut crossings: HashMap<EdgeKey, Complex64> = HashMap::new();
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    let edge_point = |key: EdgeKey, crossings: &mut HashMap<EdgeKey, Complex64>| {
        if let Some(&p) = crossings.get(&key) {
            return p;
        }
        let (a, b) = if key.horizontal {
            (point(key.ix, key.iy), point(key.ix + 1, key.iy))
        } else {
            (point(key.ix, key.iy), point(key.ix, key.iy + 1))
        };
        let va = value(key.ix, key.iy);
        let p = if va > level { refine(b, a) } else { refine(a, b) };
        crossings.insert(key, p);
        p
    };

    for iy in 0..resolution {
        for ix in 0..resolution {
            let corners = [
                value(ix, iy) > level,
                value(ix + 1, iy) > level,
                value(ix + 1, iy + 1) > level,
                value(ix, iy + 1) > level,
            ];
            let case = corners
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &c)| acc | ((c as usize) << i));
            if case == 0 || case == 15 {
                continue;
            }
            let bottom = EdgeKey {
                ix,
                iy,
                horizontal: true,
            };
            let top = EdgeKey {
                ix,
                iy: iy + 1,
                horizontal: true,
            };
            let left = EdgeKey {
                ix,
                iy,
                horizontal: false,
            };
            let right = EdgeKey {
                ix: ix + 1,
                iy,
                horizontal: false,
            };
            let mut push = |a: EdgeKey, b: EdgeKey| segments.push((a, b));
            match case {
                1 | 14 => push(bottom, left),
                2 | 13 => push(bottom, right),
                3 | 12 => push(left, right),
                4 | 11 => push(right, top),
                6 | 9 => push(bottom, top),
                7 | 8 => push(left, top),
                5 | 10 => {
                    // saddle: disambiguate with the centre value
                    let c = g(point(ix, iy) + Complex64::new(0.5 * dx, 0.5 * dy))
                        .unwrap_or(BELOW);
                    let centre_above = c > level;
                    let pairs_as_5 = (case == 5) == centre_above;
                    if pairs_as_5 {
                        push(bottom, right);
                        push(left, top);
                    } else {
                        push(bottom, left);
                        push(right, top);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    // materialize the crossing points
    for &(a, b) in &segments {
        edge_point(a, &mut crossings);
        edge_point(b, &mut crossings);
    }

    // stitch segments into chains by shared edges
    let mut incident: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (i, &(a, b)) in segments.iter().enumerate() {
        incident.entry(a).or_default().push(i);
        incident.entry(b).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut curves = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a0, b0) = segments[start];
        let mut chain = vec![a0, b0];
        // extend forward from the tail, then backward from the head
        for pass in 0..2 {
            loop {
                let tip = *chain.last().unwrap();
                let next = incident
                    .get(&tip)
                    .and_then(|list| list.iter().find(|&&i| !used[i]).copied());
                let Some(i) = next else { break };
                used[i] = true;
                let (a, b) = segments[i];
                chain.push(if a == tip { b } else { a });
            }
            if pass == 0 {
                chain.reverse();
            }
        }
        let closed = chain.len() > 2 && chain.first() == chain.last();
        if closed {
            chain.pop();
        }
        let points: Vec<Complex64> = chain.iter().map(|k| crossings[k]).collect();
        if points.len() >= 3 {
            curves.push(Curve {
                points,
                closed,
                level: sigma,
            });
        }
    }
    Ok(curves)
}

/// Trace the level curve Gamma_sigma of a map's Green's function, refusing
/// levels beyond the critical value at which components merge. The
/// estimate counts sign changes of g - log(sigma) along rays through the
/// component midpoints and additionally requires the origin side to stay
/// above the level.
pub fn trace_green_level(
    map: &LemniscaticMap,
    sigma: f64,
    window: Window,
    resolution: usize,
) -> Result<Vec<Curve>> {
    let rays = map.component_rays();
    if !rays.is_empty() {
        let expected = map.component_count();
        let estimate = component_estimate(map, sigma, &rays, window)?;
        if estimate < expected {
            return Err(Error::InvalidParameter(format!(
                "sigma = {sigma} is beyond the critical level: the curve has \
                 {estimate} component(s) instead of {expected}"
            )));
        }
    }
    let g = |z: Complex64| map.green(z).ok();
    trace_level_curve(&g, sigma, window, resolution)
}

fn component_estimate(
    map: &LemniscaticMap,
    sigma: f64,
    rays: &[f64],
    window: Window,
) -> Result<usize> {
    let level = sigma.ln();
    let r_max = window.x1.abs().max(window.y1.abs());
    let g0 = map.green(Complex64::new(0.0, 0.0));
    let origin_above = matches!(g0, Ok(g) if g > level);
    let mut separated = 0usize;
    for &angle in rays {
        let dir = Complex64::from_polar(1.0, angle);
        let mut sign_changes = 0usize;
        let mut prev_above: Option<bool> = None;
        for i in 1..=512 {
            let z = dir * (r_max * i as f64 / 512.0);
            let above = matches!(map.green(z), Ok(g) if g > level);
            if let Some(p) = prev_above {
                if p != above {
                    sign_changes += 1;
                }
            }
            prev_above = Some(above);
        }
        if sign_changes >= 2 {
            separated += 1;
        }
    }
    Ok(if origin_above && separated == rays.len() {
        rays.len()
    } else {
        1
    })
}

/// Directed Hausdorff distance from `from` to `to`.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn directed_hausdorff(from: &[Complex64], to: &[Complex64]) -> f64 {
    from.iter()
        .map(|p| {
            to.iter()
                .map(|q| (p - q).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}
