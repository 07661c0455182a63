//! Greedy transfinite-diameter estimate of the logarithmic capacity.
//!
//! Leja points maximize the product of distances to the points already
//! chosen; the growth rate of those products converges to the capacity.
//! The oracle consumes only raw boundary geometry and shares no code with
//! any map construction, so it can cross-check their capacities.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Estimate the logarithmic capacity of a compact set from candidate
/// boundary points, using `points` greedy Leja points and the geometric
/// mean growth of the distance products over the second half of the run.
pub fn leja_capacity(candidates: &[Complex64], points: usize) -> Result<f64> {
    if candidates.len() < 2 * points || points < 8 {
        return Err(Error::InvalidParameter(format!(
            "need at least 8 Leja points and 2x as many candidates, got {} of {}",
            points,
            candidates.len()
        )));
    }
    // deterministic start: the candidate of largest modulus, first wins ties
    let start = candidates
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .unwrap();
    let mut log_dist = vec![0.0f64; candidates.len()];
    let mut taken = vec![false; candidates.len()];
    let mut last = start;
    taken[start] = true;
    // log Pi_k for k = 1.. (product of distances of the k-th point)
    let mut log_products = Vec::with_capacity(points);
    for _ in 1..points {
        let mut best = f64::NEG_INFINITY;
        let mut best_i = usize::MAX;
        let p = candidates[last];
        for (i, c) in candidates.iter().enumerate() {
            if taken[i] {
                continue;
            }
            let d = (c - p).norm();
            log_dist[i] += if d > 0.0 { d.ln() } else { f64::NEG_INFINITY };
            if log_dist[i] > best {
                best = log_dist[i];
                best_i = i;
            }
        }
        if best_i == usize::MAX || !best.is_finite() {
            return Err(Error::InvalidParameter(
                "degenerate candidate set for the Leja estimate".into(),
            ));
        }
        taken[best_i] = true;
        last = best_i;
        log_products.push(best);
    }
    // log Pi_k grows like k log(capacity); difference the second half to
    // cancel the slowly varying correction
    let n = log_products.len();
    let m = n / 2;
    let growth = (log_products[n - 1] - log_products[m - 1]) / (n - m) as f64;
    Ok(growth.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(center: Complex64, r: f64, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|i| center + Complex64::from_polar(r, 2.0 * PI * i as f64 / n as f64))
            .collect()
    }

    #[test]
    fn unit_circle_has_capacity_one() {
        let cand = circle(Complex64::new(0.0, 0.0), 1.0, 4096);
        let cap = leja_capacity(&cand, 256).unwrap();
        assert!((cap - 1.0).abs() < 0.01, "capacity {cap}");
    }

    #[test]
    fn interval_capacity_is_quarter_length() {
        // [-2, 2] has capacity 1
        let cand: Vec<Complex64> = (0..8192)
            .map(|i| Complex64::new(-2.0 + 4.0 * i as f64 / 8191.0, 0.0))
            .collect();
        let cap = leja_capacity(&cand, 256).unwrap();
        assert!((cap - 1.0).abs() < 0.01, "capacity {cap}");
    }

    #[test]
    fn two_intervals_match_the_closed_form() {
        // E = [-1, -0.1] u [0.1, 1] has capacity sqrt(1 - 0.01)/2
        let mut cand: Vec<Complex64> = Vec::new();
        for i in 0..4096 {
            let x = 0.1 + 0.9 * i as f64 / 4095.0;
            cand.push(Complex64::new(x, 0.0));
            cand.push(Complex64::new(-x, 0.0));
        }
        let cap = leja_capacity(&cand, 256).unwrap();
        let exact = (1.0f64 - 0.01).sqrt() / 2.0;
        assert!(
            (cap - exact).abs() < 0.01 * exact,
            "capacity {cap} vs {exact}"
        );
    }

    #[test]
    fn rejects_degenerate_input() {
        let cand = circle(Complex64::new(0.0, 0.0), 1.0, 100);
        assert!(leja_capacity(&cand, 256).is_err());
        assert!(leja_capacity(&cand, 4).is_err());
    }
}
