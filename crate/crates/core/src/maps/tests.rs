use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn radial(n: u32, c: f64, d: f64) -> LemniscaticMap {
    LemniscaticMap::radial_slits(RadialSlitConfig {
        arms: n,
        inner: c,
        outer: d,
    })
    .unwrap()
}

fn disks(z0: f64, r: f64) -> LemniscaticMap {
    LemniscaticMap::two_disks(TwoDiskConfig {
        center: z0,
        radius: r,
    })
    .unwrap()
}

fn rational_blob() -> LemniscaticMap {
    FamilySpec::RationalExterior {
        degree: 3,
        phi: PI / 2.0,
        boundary_radius: 1.1,
    }
    .build()
    .unwrap()
}

fn radial_as_preimage(n: u32, c: f64, d: f64) -> LemniscaticMap {
    let omega = IntervalExteriorMap::new(c.powi(n as i32), d.powi(n as i32)).unwrap();
    LemniscaticMap::polynomial_preimage(PreimageConfig {
        riemann: Arc::new(omega),
        degree: n,
        leading: 1.0,
        shift: 0.0,
    })
    .unwrap()
}

/// Random points of the lemniscatic domain with a relative margin.
fn sample_lemniscatic(
    map: &LemniscaticMap,
    count: usize,
    margin: f64,
    extent: f64,
    seed: u64,
) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let domain = map.domain();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w = Complex64::new(
            rng.gen_range(-extent..extent),
            rng.gen_range(-extent..extent),
        );
        if domain.abs_u(w) > domain.capacity() * (1.0 + margin) {
            out.push(w);
        }
    }
    out
}

/// Random points of the exterior domain with a Green-function margin.
fn sample_exterior(
    map: &LemniscaticMap,
    count: usize,
    min_green: f64,
    extent: f64,
    seed: u64,
) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = Complex64::new(
            rng.gen_range(-extent..extent),
            rng.gen_range(-extent..extent),
        );
        if map.source_contains(z) {
            continue;
        }
        match map.green(z) {
            Ok(g) if g > min_green => out.push(z),
            _ => {}
        }
    }
    out
}

#[test]
fn radial_round_trip_both_ways() {
    for (n, c, d) in [(2u32, 0.1, 1.0), (3u32, 1.0, 2.0)] {
        let map = radial(n, c, d);
        for w in sample_lemniscatic(&map, 400, 0.01, 4.0 * d, 101) {
            let z = map.inverse(w).unwrap();
            let back = map.forward(z).unwrap();
            assert!(
                (back - w).norm() < 1e-10 * w.norm().max(1.0),
                "n={n}: w={w} back={back}"
            );
        }
        for z in sample_exterior(&map, 400, 1e-3, 4.0 * d, 102) {
            let w = map.forward(z).unwrap();
            let back = map.inverse(w).unwrap();
            assert!(
                (back - z).norm() < 1e-10 * z.norm().max(1.0),
                "n={n}: z={z} back={back}"
            );
        }
    }
}

#[test]
fn preimage_reproduces_radial_slits() {
    for (n, c, d) in [(2u32, 0.1, 1.0), (3u32, 1.0, 2.0)] {
        let closed = radial(n, c, d);
        let generic = radial_as_preimage(n, c, d);
        assert!((closed.capacity() - generic.capacity()).abs() < 1e-13);
        let dc = closed.domain();
        let dg = generic.domain();
        let fc = dc.symmetric_form().unwrap();
        let fg = dg.symmetric_form().unwrap();
        assert!((fc.constant - fg.constant).norm() < 1e-12);
        for w in sample_lemniscatic(&closed, 200, 0.02, 3.0 * d, 103) {
            let a = closed.inverse(w).unwrap();
            let b = generic.inverse(w).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "inverse at {w}");
        }
        for z in sample_exterior(&closed, 200, 1e-3, 3.0 * d, 104) {
            let a = closed.forward(z).unwrap();
            let b = generic.forward(z).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "forward at {z}");
        }
    }
}

#[test]
fn rational_blob_capacity_and_symmetry() {
    let map = rational_blob();
    assert!((map.capacity() - 1.0695511834139923).abs() < 1e-13);
    // Omega = conj(Omega) and real coefficients give Phi(conj z) = conj Phi(z)
    for z in sample_exterior(&map, 100, 1e-3, 3.0, 105) {
        let a = map.forward(z.conj()).unwrap();
        let b = map.forward(z).unwrap().conj();
        assert!((a - b).norm() < 1e-12 * b.norm().max(1.0));
    }
}

#[test]
fn rational_blob_round_trip() {
    let map = rational_blob();
    for w in sample_lemniscatic(&map, 300, 0.01, 4.0, 106) {
        let z = map.inverse(w).unwrap();
        let back = map.forward(z).unwrap();
        assert!((back - w).norm() < 1e-10 * w.norm().max(1.0), "w={w}");
    }
}

#[test]
fn green_identity_residual_is_tiny() {
    let maps = [radial_as_preimage(2, 0.1, 1.0), rational_blob()];
    for map in &maps {
        for z in sample_exterior(map, 300, 1e-3, 4.0, 107) {
            let r = map.green_identity_residual(z).unwrap();
            assert!(r < 1e-10, "{}: residual {r} at {z}", map.family_name());
        }
    }
}

#[test]
fn green_identity_residual_vanishes_at_infinity() {
    let map = radial(2, 0.1, 1.0);
    let r = map
        .green_identity_residual(Complex64::new(3e4, 2e4))
        .unwrap();
    assert!(r < 1e-12);
}

#[test]
fn green_boundary_and_asymptotics() {
    let map = radial(3, 1.0, 2.0);
    // approach the slit from outside at distance 1e-8
    for arm in map.source_boundary(64).unwrap() {
        for (i, p) in arm.iter().enumerate() {
            if i == 0 || i == arm.len() - 1 {
                continue; // skip slit tips, where the offset is tangential
            }
            let z = p * Complex64::from_polar(1.0, 1e-8 / p.norm());
            let g = map.green(z).unwrap();
            assert!((-1e-12..1e-3).contains(&g), "g = {g} near {p}");
        }
    }
    let z = Complex64::new(7e5, 7e5);
    let g = map.green(z).unwrap();
    let expected = z.norm().ln() - map.capacity().ln();
    assert!((g - expected).abs() < 1e-4);
}

#[test]
fn green_rejects_interior() {
    let map = disks(1.0, 0.5);
    assert!(map.green(Complex64::new(1.1, 0.0)).is_err());
    let slits = radial(2, 0.1, 1.0);
    assert!(slits.green(Complex64::new(0.5, 0.0)).is_err());
}

#[test]
fn two_disk_annulus_ratio_reference() {
    let cfg = TwoDiskConfig {
        center: 1.0,
        radius: 0.5,
    };
    assert!((cfg.annulus_ratio() - 0.2679491924311227).abs() < 1e-10);
}

#[test]
fn two_disk_boundary_lands_on_the_lemniscate() {
    let map = disks(1.0, 0.5);
    let mu = map.capacity();
    for circle in map.source_boundary(512).unwrap() {
        for p in circle {
            let w = map.forward(p).unwrap();
            let defect = (map.domain().abs_u(w) - mu).abs();
            assert!(defect <= 1e-6 * mu, "defect {defect} at {p}");
        }
    }
}

#[test]
fn two_disk_round_trip() {
    for r in [0.5, 0.7] {
        let map = disks(1.0, r);
        for w in sample_lemniscatic(&map, 150, 0.01, 5.0, 108) {
            let z = map.inverse(w).unwrap();
            let back = map.forward(z).unwrap();
            assert!(
                (back - w).norm() < 1e-9 * w.norm().max(1.0),
                "r={r}: w={w} back={back}"
            );
        }
    }
}

#[test]
fn two_disk_symmetries() {
    let map = disks(1.0, 0.7);
    for z in sample_exterior(&map, 200, 1e-3, 4.0, 109) {
        let w = map.forward(z).unwrap();
        // odd map
        assert!((map.forward(-z).unwrap() + w).norm() < 1e-10 * w.norm().max(1.0));
        // E = conj(E): Phi(conj z) = conj Phi(z)
        assert!((map.forward(z.conj()).unwrap() - w.conj()).norm() < 1e-10 * w.norm().max(1.0));
        // E = -conj(E): Phi(z) = -conj(Phi(-conj z))
        assert!((-(map.forward(-z.conj()).unwrap().conj()) - w).norm() < 1e-10 * w.norm().max(1.0));
    }
}

#[test]
fn conjugate_wrapper_is_identity_for_real_symmetric_sets() {
    let map = disks(1.0, 0.5);
    let conj_map = map.clone().conjugate();
    for z in sample_exterior(&map, 100, 1e-3, 4.0, 110) {
        let a = map.forward(z).unwrap();
        let b = conj_map.forward(z).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }
}

#[test]
fn rotation_wrapper_is_identity_for_rotationally_symmetric_sets() {
    let map = radial(3, 1.0, 2.0);
    let rotated = map.clone().rotate(2.0 * PI / 3.0);
    for z in sample_exterior(&map, 200, 1e-3, 5.0, 111) {
        let a = map.forward(z).unwrap();
        let b = rotated.forward(z).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "z = {z}");
        let w = a;
        let ia = map.inverse(w).unwrap();
        let ib = rotated.inverse(w).unwrap();
        assert!((ia - ib).norm() < 1e-12 * ia.norm().max(1.0));
    }
}

#[test]
fn linear_transform_identity_and_composition() {
    let map = radial(2, 0.1, 1.0);
    let id = map
        .clone()
        .linear_transform(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        .unwrap();
    let z = Complex64::new(1.3, 0.8);
    assert!((id.forward(z).unwrap() - map.forward(z).unwrap()).norm() < 1e-15);

    let a1 = Complex64::new(0.0, 2.0);
    let b1 = Complex64::new(1.0, -0.5);
    let a2 = Complex64::new(-1.5, 0.4);
    let b2 = Complex64::new(0.3, 0.3);
    let once = map
        .clone()
        .linear_transform(a1, b1)
        .unwrap()
        .linear_transform(a2, b2)
        .unwrap();
    let composed = map.clone().linear_transform(a2 * a1, a2 * b1 + b2).unwrap();
    let z = Complex64::new(-2.0, 1.7);
    let u = once.forward(z).unwrap();
    let v = composed.forward(z).unwrap();
    assert!((u - v).norm() < 1e-10 * u.norm().max(1.0));
    assert!((once.capacity() - composed.capacity()).abs() < 1e-12);
}

#[test]
fn linear_transform_scales_capacity() {
    let map = radial(2, 0.1, 1.0);
    let mu = map.capacity();
    let t = map
        .linear_transform(Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0))
        .unwrap();
    assert_eq!(t.capacity(), 2.0 * mu);
    assert!((t.capacity() - 0.9949874371066199).abs() < 1e-12);
    // centers moved by tau
    for a in t.domain().centers() {
        let back = (a - Complex64::new(0.0, 1.0)) / 2.0;
        assert!(
            map_has_center(&radial(2, 0.1, 1.0), back),
            "unexpected centre {a}"
        );
    }
}

fn map_has_center(map: &LemniscaticMap, c: Complex64) -> bool {
    map.domain()
        .centers()
        .iter()
        .any(|a| (a - c).norm() < 1e-12)
}

#[test]
fn doubly_connected_reproduces_two_disks() {
    let (z0, r) = (1.0f64, 0.5f64);
    let alpha = (z0 * z0 - r * r).sqrt();
    let cfg = TwoDiskConfig {
        center: z0,
        radius: r,
    };
    let rho = cfg.annulus_ratio();
    let h: AnnulusChart = Arc::new(move |z: Complex64| (alpha + z) / (alpha - z));
    let generic =
        LemniscaticMap::doubly_connected(h, Complex64::new(-2.0 * alpha, 0.0), rho).unwrap();
    let direct = disks(z0, r);
    assert!(generic.beta_for_tests().norm() < 1e-8, "beta should vanish");
    assert!((generic.capacity() - direct.capacity()).abs() < 1e-10);
    for z in sample_exterior(&direct, 200, 1e-3, 4.0, 112) {
        let a = generic.forward(z).unwrap();
        let b = direct.forward(z).unwrap();
        assert!((a - b).norm() < 1e-8 * b.norm().max(1.0), "z = {z}: {a} vs {b}");
    }
}

#[test]
fn doubly_connected_inverse_round_trip() {
    let (z0, r) = (1.0f64, 0.5f64);
    let alpha = (z0 * z0 - r * r).sqrt();
    let rho = TwoDiskConfig {
        center: z0,
        radius: r,
    }
    .annulus_ratio();
    let h: AnnulusChart = Arc::new(move |z: Complex64| (alpha + z) / (alpha - z));
    let map = LemniscaticMap::doubly_connected(h, Complex64::new(-2.0 * alpha, 0.0), rho).unwrap();
    for w in [Complex64::new(2.2, 1.0), Complex64::new(-1.0, 2.0)] {
        let z = map.inverse(w).unwrap();
        let back = map.forward(z).unwrap();
        assert!((back - w).norm() < 1e-8 * w.norm());
    }
}

#[test]
fn doubly_connected_normalization_probe() {
    let (z0, r) = (1.0f64, 0.5f64);
    let alpha = (z0 * z0 - r * r).sqrt();
    let rho = TwoDiskConfig {
        center: z0,
        radius: r,
    }
    .annulus_ratio();
    let h: AnnulusChart = Arc::new(move |z: Complex64| (alpha + z) / (alpha - z));
    let map = LemniscaticMap::doubly_connected(h, Complex64::new(-2.0 * alpha, 0.0), rho).unwrap();
    let probe = crate::analysis::normalization_probe(&map, 1e6).unwrap();
    assert!(probe <= 1e-4, "probe {probe}");
}

#[test]
fn green_asymptote_intercept_matches_capacity() {
    // g(z) - log|z| -> -log(mu): the intercept recovers the capacity
    for map in [radial(3, 1.0, 2.0), disks(1.0, 0.5)] {
        let z = Complex64::from_polar(1e6, 0.7);
        let g = map.green(z).unwrap();
        let intercept = g - z.norm().ln();
        assert!(
            (intercept + map.capacity().ln()).abs() < 1e-6,
            "{}: intercept {intercept}",
            map.family_name()
        );
    }
}

#[test]
fn doubly_connected_rejects_bad_chart() {
    // h(inf) = 0 violates the contract
    let h: AnnulusChart = Arc::new(|z: Complex64| 1.0 / z);
    let r = LemniscaticMap::doubly_connected(h, Complex64::new(1.0, 0.0), 0.3);
    assert!(matches!(r, Err(Error::Construction(_))));
}

#[test]
fn batch_evaluation_matches_pointwise_and_is_deterministic() {
    let map = disks(1.0, 0.5);
    let points: Vec<Complex64> = sample_exterior(&map, 64, 1e-3, 4.0, 113)
        .into_iter()
        .chain(std::iter::once(Complex64::new(1.0, 0.0))) // inside: errors too
        .collect();
    let batch = map.forward_batch(&points);
    let serial = map.forward_batch_serial(&points);
    assert_eq!(batch.len(), serial.len());
    for ((b, s), p) in batch.iter().zip(&serial).zip(&points) {
        match (b, s, map.forward(*p)) {
            (Ok(b), Ok(s), Ok(direct)) => {
                assert_eq!(*b, *s, "parallel and serial must agree exactly");
                assert_eq!(*b, direct);
            }
            (Err(_), Err(_), Err(_)) => {}
            other => panic!("inconsistent batch outcome at {p}: {other:?}"),
        }
    }
}

#[test]
fn forward_matches_high_precision_references() {
    // reference values from a 50-digit mpmath evaluation of the same
    // construction chains
    let disks_map = disks(1.0, 0.5);
    for (z, expected) in [
        (
            Complex64::new(0.5, 1.2),
            Complex64::new(0.5027292298441098, 1.182597281490255),
        ),
        (
            Complex64::new(-2.3, 0.4),
            Complex64::new(-2.3149324478401874, 0.39655404876073547),
        ),
        (
            Complex64::new(0.1, 0.7),
            Complex64::new(0.09947427356511336, 0.6824697167046194),
        ),
    ] {
        let w = disks_map.forward(z).unwrap();
        assert!((w - expected).norm() < 1e-13, "disks at {z}: {w}");
    }
    let blob = rational_blob();
    for (z, expected) in [
        (
            Complex64::new(1.1, 0.9),
            Complex64::new(1.1340801681993031, 0.7588597383802589),
        ),
        (
            Complex64::new(-0.4, 1.3),
            Complex64::new(-0.5180737582325522, 1.3873225192273992),
        ),
    ] {
        let w = blob.forward(z).unwrap();
        assert!((w - expected).norm() < 1e-13, "blob at {z}: {w}");
    }
    let slits = radial(3, 1.0, 2.0);
    let w = slits.forward(Complex64::new(1.8, 1.1)).unwrap();
    let expected = Complex64::new(1.7939337406554723, 1.1550034015270583);
    assert!((w - expected).norm() < 1e-13, "slits: {w}");
}

#[test]
fn many_arms_stay_finite_across_all_regimes() {
    // z^n squared inside the closed forms must not overflow for large n
    let map = radial(32, 0.5, 2.0);
    for z in [
        Complex64::new(1e-9, 0.0),
        Complex64::new(0.01, 0.02),
        Complex64::new(3.0, 1.0),
        Complex64::new(2.4e4, 1e4),
        Complex64::new(1e6, -1e6),
        Complex64::new(1e12, 0.0),
    ] {
        let w = map.forward(z).unwrap();
        assert!(w.is_finite(), "forward({z}) = {w}");
        let back = map.inverse(w).unwrap();
        assert!(
            (back - z).norm() <= 1e-9 * z.norm().max(1.0),
            "z = {z}, back = {back}"
        );
    }
    assert!(crate::analysis::normalization_probe(&map, 1e6).unwrap() <= 1e-4);
}

#[test]
fn constructions_agree_near_the_origin() {
    // both routes switch to the linear term at the same balanced radius;
    // in between, each carries the rounding of the cancelled difference,
    // about 1e-16 (sqrt(CD)/r)^n, and they can only agree to that level
    let closed = radial(2, 0.1, 1.0);
    let generic = radial_as_preimage(2, 0.1, 1.0);
    let cancel_scale = 0.1f64.sqrt();
    for r in [1e-9, 1e-6, 3e-5, 1e-4, 1e-3, 1e-2] {
        let z = Complex64::from_polar(r, 0.83);
        let a = closed.forward(z).unwrap();
        let b = generic.forward(z).unwrap();
        let tol = 1e-12 + 4e-16 * (cancel_scale / r).powi(2).min(1e8);
        assert!(
            (a - b).norm() <= tol * a.norm(),
            "r = {r}: {a} vs {b} (tol {tol:.2e})"
        );
    }
}

#[test]
fn maps_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<LemniscaticMap>();
    assert_send_sync::<crate::domain::LemniscaticDomain>();
}

#[test]
fn family_spec_builds_and_echoes() {
    let spec = FamilySpec::RadialSlits {
        arms: 2,
        inner: 0.1,
        outer: 1.0,
    };
    let map = spec.build().unwrap();
    assert_eq!(map.family_name(), "radial-slits");
    assert_eq!(spec.parameters().len(), 3);
    assert!(FamilySpec::RadialSlits {
        arms: 2,
        inner: 1.0,
        outer: 0.5,
    }
    .build()
    .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn radial_forward_lands_in_the_lemniscatic_domain(
        re in -4.0..4.0f64,
        im in -4.0..4.0f64,
    ) {
        let map = radial(3, 1.0, 2.0);
        let z = Complex64::new(re, im);
        prop_assume!(!map.source_contains(z));
        prop_assume!(map.green(z).map(|g| g > 1e-6).unwrap_or(false));
        let w = map.forward(z).unwrap();
        let domain = map.domain();
        prop_assert!(domain.abs_u(w) > domain.capacity());
    }
}

impl LemniscaticMap {
    /// Test-only accessor for the doubly connected normalization shift.
    fn beta_for_tests(&self) -> Complex64 {
        match &self.kind {
            MapKind::DoublyConnected(m) => m.beta(),
            _ => Complex64::new(0.0, 0.0),
        }
    }
}
