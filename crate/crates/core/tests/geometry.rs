use rug::{Complex, Float};
use twobridge::geometry::*;
use twobridge::numeric::{cabs_f64, PrecisionConfig};
use twobridge::rm::RmEvaluator;
use twobridge::Error;

fn cfg() -> PrecisionConfig {
    PrecisionConfig::new(256).unwrap()
}

fn nearest(roots: &[Complex], x: &Complex) -> f64 {
    roots.iter().map(|r| cabs_f64(&Complex::with_val(256, r - x))).fold(f64::INFINITY, f64::min)
}

#[test]
fn roots_at_pi() {
    let cfg = cfg();
    let roots = roots_at(1, &cfg.pi(), &cfg).unwrap();
    assert_eq!(roots.len(), 4);
    for want in [0.1206147584, 1.0] {
        assert!(nearest(&roots, &Complex::with_val(256, (want, 0))) < 1e-10);
    }
    assert_eq!(roots_at(-1, &cfg.pi(), &cfg).unwrap().len(), 3);
    assert!(matches!(roots_at(1, &Float::with_val(256, 0), &cfg), Err(Error::Config(_))));
}

#[test]
fn roots_are_closed_under_conjugation() {
    let cfg = cfg();
    for a in [0.7, 1.9, 2.8] {
        let roots = roots_at(1, &Float::with_val(256, a), &cfg).unwrap();
        for x in &roots {
            assert!(nearest(&roots, &Complex::with_val(256, x.conj_ref())) < 1e-40);
        }
    }
}

#[test]
fn anchors() {
    let (a, b) = anchor_roots(1, 128).unwrap();
    assert!((a.to_f64() - 0.1206147584).abs() < 1e-10);
    assert!((b.to_f64() - 1.0).abs() < 1e-30);
    let (a, b) = anchor_roots(-1, 128).unwrap();
    assert!((a.to_f64() - 1.5549581321).abs() < 1e-10);
    assert!((b.to_f64() - 0.1980622642).abs() < 1e-10);
    for n in (-9..=9i64).filter(|&n| n != 0) {
        let (a, b) = anchor_roots(n, 128).unwrap();
        assert!(a < 2 && b < 2, "n = {n}");
    }
}

#[test]
fn continuation_through_alpha0() {
    let cfg = cfg();
    let (x1, _) = anchor_roots(1, 256).unwrap();
    let start = Complex::with_val(256, (&x1, 0));
    let b = continue_branch(1, &start, &cfg.pi(), &Float::with_val(256, 2.5), 40, &cfg).unwrap();
    let at = b.collision.clone().expect("collision on the way down");
    assert!((at.to_f64() - 2.5741407781).abs() < 1e-9);
    let ev = RmEvaluator::new(1).unwrap();
    for s in &b.samples {
        let fresh = roots_at(1, &s.alpha, &cfg).unwrap();
        let tol = if s.regime == Regime::Euclidean { 1e-20 } else { 1e-40 };
        assert!(nearest(&fresh, &s.x) < tol, "alpha = {}", s.alpha.to_f64());
        match s.regime {
            Regime::Spherical => assert!(s.x.imag().is_zero() || s.x.imag().to_f64().abs() < 1e-40),
            Regime::Hyperbolic => assert!(*s.x.imag() < 0),
            Regime::Euclidean => {}
        }
        if s.alpha > at {
            assert_eq!(s.regime, Regime::Spherical);
        }
    }
    assert_eq!(b.last().unwrap().regime, Regime::Hyperbolic);
    assert!(ev.n() == 1);

    // above alpha_0 the tracked root stays real
    let b = continue_branch(1, &start, &cfg.pi(), &Float::with_val(256, 2.6), 10, &cfg).unwrap();
    assert!(b.collision.is_none());
    assert!(b.samples.iter().all(|s| s.regime == Regime::Spherical));
    let real_above = continue_branch(1, &start, &cfg.pi(), &Float::with_val(256, 2.5741407781 + 1e-6), 10, &cfg).unwrap();
    assert_eq!(real_above.last().unwrap().regime, Regime::Spherical);
}

#[test]
fn alpha0_examples() {
    let cfg = cfg();
    for (n, want) in [(1, 2.5741407781), (2, 2.8476422723), (-1, 2.4071698136)] {
        let a = find_alpha0(n, &cfg).unwrap();
        assert!((a.alpha0.to_f64() - want).abs() < 1e-10, "n = {n}");
        assert!(a.alpha0 >= alpha0_floor(256) && a.alpha0 < cfg.pi());
        // double-root certificate
        assert!(a.derivative_residual < Float::with_val(64, Float::i_exp(1, -64)));
    }
}

#[test]
fn alpha0_is_stable_under_tighter_collision_tolerance() {
    let loose = cfg();
    let tight = PrecisionConfig::with_tolerances(256, loose.root_residual_tol.to_f64(), loose.collision_tol.to_f64() / 2.0).unwrap();
    for n in [1i64, -2] {
        let a = find_alpha0(n, &loose).unwrap();
        let b = find_alpha0(n, &tight).unwrap();
        let d = Float::with_val(256, &a.alpha0 - &b.alpha0).abs();
        let bound = Float::with_val(64, &a.error_bound + &b.error_bound).max(&Float::with_val(64, 1e-60));
        assert!(d <= bound, "n = {n}: {}", d.to_f64());
    }
}

#[test]
fn spherical_pair_collapses_like_a_square_root() {
    let cfg = cfg();
    let geo = ConeGeometry::new(1, &cfg).unwrap();
    let (x1, x2) = geo.spherical_pair(&cfg.pi()).unwrap();
    assert!((x1.to_f64() - 0.1206147584).abs() < 1e-10);
    assert!((x2.to_f64() - 1.0).abs() < 1e-40);
    let gap = |eps: f64| {
        let (a, b) = geo.spherical_pair(&Float::with_val(256, geo.alpha0() + eps)).unwrap();
        Float::with_val(256, &a - &b).abs().to_f64()
    };
    let (g6, g8) = (gap(1e-6), gap(1e-8));
    assert!(g6 < 1e-2);
    let slope = (g6 / g8).log10() / 2.0;
    assert!((slope - 0.5).abs() < 0.01, "exponent {slope}");
    assert!(matches!(geo.spherical_pair(geo.alpha0()), Err(Error::Regime(_))));
}

#[test]
fn regime_law_along_the_paths() {
    let cfg = cfg();
    for n in [1i64, -1, 3] {
        let geo = ConeGeometry::new(n, &cfg).unwrap();
        let hyp = geo.hyperbolic_path(&Float::with_val(256, 0), 64).unwrap();
        for x in &hyp.x[1..] {
            assert!(*x.imag() < 0, "n = {n}");
        }
        let (s1, s2) = geo.spherical_paths(64).unwrap();
        for x in s1.x.iter().chain(&s2.x) {
            assert!(x.imag().to_f64().abs() < 1e-40, "n = {n}");
        }
    }
}

#[test]
fn branch_dump_round_trip() {
    let cfg = cfg();
    let geo = ConeGeometry::new(-1, &cfg).unwrap();
    let b = geo.geometric_branch(&Float::with_val(256, 1.0), 8).unwrap();
    let csv = b.to_csv();
    assert!(csv.starts_with("alpha,re_x,im_x,regime\n"));
    assert!(csv.contains(",euclidean\n"));
    let back = GeometricBranch::from_csv(-1, &csv, 256).unwrap();
    assert_eq!(back.len(), b.len());
    assert_eq!(back.collision.map(|a| a.to_f64()), b.collision.map(|a| a.to_f64()));
    // anchored at pi with a real root
    let first = &back.samples[0];
    assert!((first.alpha.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    assert!(first.x.imag().is_zero());
}

#[test]
fn alpha0_cache_record() {
    let cfg = cfg();
    let a = find_alpha0(2, &cfg).unwrap();
    let r = Alpha0Record::new(2, &a, &cfg);
    let back: Alpha0Record = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert!(back.matches(2, &cfg));
    assert!(!back.matches(2, &PrecisionConfig::new(128).unwrap()));
    let geo = ConeGeometry::with_alpha0(2, &back.value().unwrap(), &cfg).unwrap();
    assert!(Float::with_val(256, geo.alpha0() - &a.alpha0).abs() < 1e-70);
}
