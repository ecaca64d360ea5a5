//! Acceptance suite for the symbolic and numeric layers. Each test covers
//! one numbered gate, checks the pinned tolerances, and prints a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`). The CLI
//! gate lives in the CLI crate's own acceptance suite.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfaff_core::form::KForm;
use pfaff_core::integrability::{cartan_residual, contact_class};
use pfaff_core::numeric::fixtures::{
    fixture_contact, fixture_dz, fixture_sphere, ACCEPTANCE_RADIUS, ACCEPTANCE_SAMPLES,
    ACCEPTANCE_SEED, ACCEPTANCE_STEP, CONTACT_ESCAPE_MIN_FRAC, CONTACT_RESIDUAL_SLOPE,
    DZ_DRIFT_MAX, DZ_RESIDUAL_SLOPE, LEAF_SPREAD_MIN_FRAC, SPHERE_DRIFT_MAX,
    SPHERE_RESIDUAL_SLOPE,
};
use pfaff_core::numeric::{reach_sample, ReachConfig};
use pfaff_core::planner::{
    self, contact_space, curve_space, dilation_map, equivalence_map, heisenberg_translate,
    legendrian_from_s, omega_std, omega_sym, plan_generating_std, plan_single_curve_sym,
    plan_three_link, standard_form, ambient_space, Plan,
};
use pfaff_core::sample;
use pfaff_core::scalar::CScalar;
use pfaff_core::space::VarSpace;
use pfaff_core::{Poly, PolyMap};

fn budget(name: &str, started: Instant, max_seconds: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < max_seconds,
        "{name} took {elapsed:.1}s, budget {max_seconds}s"
    );
    println!("ACCEPTANCE {name}: PASS ({elapsed:.2}s)");
}

fn space(dim: usize) -> VarSpace {
    let names = ["x", "y", "z", "u", "v"];
    VarSpace::new(names[..dim].to_vec()).unwrap()
}

/// 1. d∘d = 0, graded commutativity, Leibniz, pullback naturality; each
/// over ≥ 200 randomized instances (degree ≤ 3, dimension ≤ 5), exact.
#[test]
fn acceptance_1_exterior_identity_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC1);

    for _ in 0..200 {
        let n = rng.gen_range(2..=5usize);
        let s = space(n);
        let p = rng.gen_range(0..=n.saturating_sub(2));
        let a = sample::kform(&mut rng, &s, p, 3);
        assert!(a.dform().dform().is_zero());
    }

    for _ in 0..200 {
        let n = rng.gen_range(2..=5usize);
        let s = space(n);
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(0..=n);
        let a = sample::kform(&mut rng, &s, p, 3);
        let b = sample::kform(&mut rng, &s, q, 3);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let expected = if (p * q) % 2 == 0 { ba } else { ba.neg() };
        assert_eq!(ab, expected);
    }

    for _ in 0..200 {
        let n = rng.gen_range(2..=5usize);
        let s = space(n);
        let p = rng.gen_range(0..n);
        let q = rng.gen_range(0..=(n - p));
        let a = sample::kform(&mut rng, &s, p, 3);
        let b = sample::kform(&mut rng, &s, q, 3);
        let lhs = a.wedge(&b).unwrap().dform();
        let da_b = a.dform().wedge(&b).unwrap();
        let a_db = a.wedge(&b.dform()).unwrap();
        let rhs = if p % 2 == 0 {
            da_b.add(&a_db).unwrap()
        } else {
            da_b.sub(&a_db).unwrap()
        };
        assert_eq!(lhs, rhs);
    }

    for _ in 0..200 {
        let n_src = rng.gen_range(2..=5usize);
        let n_tgt = rng.gen_range(2..=5usize);
        let src = space(n_src);
        let tgt = VarSpace::new(["a", "b", "c", "d", "e"][..n_tgt].to_vec()).unwrap();
        let phi = sample::polymap(&mut rng, &src, &tgt, 3);
        let p = rng.gen_range(0..=1);
        let q = rng.gen_range(0..=1);
        let a = sample::kform(&mut rng, &tgt, p, 2);
        let b = sample::kform(&mut rng, &tgt, q, 2);
        let lhs = phi.pullback(&a.wedge(&b).unwrap()).unwrap();
        let rhs = phi
            .pullback(&a)
            .unwrap()
            .wedge(&phi.pullback(&b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            phi.pullback(&a.dform()).unwrap(),
            phi.pullback(&a).unwrap().dform()
        );
    }

    budget("1 exterior-identity-suite", started, 60.0);
}

/// 2. Classification of the four reference forms, exact.
#[test]
fn acceptance_2_paper_form_classification() {
    let started = Instant::now();

    let r = contact_class(&omega_std()).unwrap();
    assert_eq!((r.k, r.integrable), (2, false));

    let s3 = contact_space();
    let r = contact_class(&KForm::basis_covector(&s3, 2)).unwrap();
    assert_eq!((r.k, r.integrable), (1, true));

    let s5 = VarSpace::new(["x1", "y1", "x2", "y2", "z"]).unwrap();
    let degenerate = KForm::one_form(
        &s5,
        vec![
            Poly::zero(&s5),
            Poly::var(&s5, 0),
            Poly::zero(&s5),
            Poly::zero(&s5),
            Poly::one(&s5),
        ],
    )
    .unwrap();
    assert_eq!(contact_class(&degenerate).unwrap().k, 2);

    let maximal = KForm::one_form(
        &s5,
        vec![
            Poly::zero(&s5),
            Poly::var(&s5, 0),
            Poly::zero(&s5),
            Poly::var(&s5, 2),
            Poly::one(&s5),
        ],
    )
    .unwrap();
    assert_eq!(contact_class(&maximal).unwrap().k, 3);

    budget("2 paper-form-classification", started, 1.0);
}

/// 3. The cubic, the admissible line, and the c = −2 single curve all have
/// exactly zero residual.
#[test]
fn acceptance_3_paper_curve_admissibility() {
    let started = Instant::now();
    let ts = curve_space();
    let s = contact_space();
    let t = Poly::var(&ts, 0);

    let cubic = PolyMap::new(
        &ts,
        &s,
        vec![
            t.clone(),
            t.checked_pow(2).unwrap(),
            t.checked_pow(3).unwrap().scale(&CScalar::from_ratio(1, 3)),
        ],
    )
    .unwrap();
    assert!(planner::residual(&omega_sym(), &cubic).unwrap().is_zero());

    // (x1 t, y1 t, z1) for rational instances of the constants.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC3);
    for _ in 0..10 {
        let x1 = sample::scalar(&mut rng);
        let y1 = sample::scalar(&mut rng);
        let z1 = sample::scalar(&mut rng);
        let line = PolyMap::new(
            &ts,
            &s,
            vec![t.scale(&x1), t.scale(&y1), Poly::constant(&ts, z1)],
        )
        .unwrap();
        assert!(planner::residual(&omega_sym(), &line).unwrap().is_zero());
    }

    let one = CScalar::one();
    let curve = plan_single_curve_sym(&[one.clone(), one.clone(), one]).unwrap();
    assert!(planner::residual(&omega_sym(), curve.map()).unwrap().is_zero());
    // c = −2 shows up as the linear coefficient of the y component.
    assert_eq!(curve.map().components()[1].to_string(), "3*t^2 - 2*t");

    budget("3 paper-curve-admissibility", started, 1.0);
}

/// 4. 100 seeded random Gaussian-rational targets per strategy: exactly
/// zero residuals, exact endpoint chaining, at most 3 links.
#[test]
fn acceptance_4_planner_soundness_fuzz() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC4);

    let check = |plan: &Plan, target: &[CScalar]| {
        plan.verify().unwrap();
        assert!(plan.link_count() <= 3);
        assert_eq!(plan.end(), target);
    };

    for i in 0..100 {
        // Single: x1 ≠ 0 mostly, with the swapped branch exercised too.
        let target = if i % 4 == 0 {
            vec![
                CScalar::zero(),
                sample::nonzero_scalar(&mut rng),
                sample::scalar(&mut rng),
            ]
        } else {
            vec![
                sample::nonzero_scalar(&mut rng),
                sample::scalar(&mut rng),
                sample::scalar(&mut rng),
            ]
        };
        let plan = Plan::from_curve(plan_single_curve_sym(&target).unwrap());
        check(&plan, &target);
        assert_eq!(plan.start(), planner::origin3());
    }

    for i in 0..100 {
        // Three-link: hint-first generation keeps the cube root rational.
        let (target, hint) = if i % 5 == 0 {
            (
                vec![
                    sample::scalar(&mut rng),
                    sample::scalar(&mut rng),
                    CScalar::zero(),
                ],
                None,
            )
        } else {
            let t1 = sample::nonzero_scalar(&mut rng);
            let z1 = &t1.pow(3) / &CScalar::from_int(3);
            (
                vec![sample::scalar(&mut rng), sample::scalar(&mut rng), z1],
                Some(t1),
            )
        };
        let plan = plan_three_link(&target, hint.as_ref()).unwrap();
        check(&plan, &target);
    }

    for i in 0..100 {
        let target = if i % 4 == 0 {
            vec![
                CScalar::zero(),
                sample::nonzero_scalar(&mut rng),
                sample::scalar(&mut rng),
            ]
        } else {
            vec![
                sample::nonzero_scalar(&mut rng),
                sample::scalar(&mut rng),
                sample::scalar(&mut rng),
            ]
        };
        let plan = Plan::from_curve(plan_generating_std(&target).unwrap());
        check(&plan, &target);
    }

    budget("4 planner-soundness-fuzz", started, 120.0);
}

/// 5. cartan_residual ≡ 0 for 500 randomized (ω, X, Y) of degree ≤ 2 in
/// dimensions 3 and 5.
#[test]
fn acceptance_5_cartan_identity_fuzz() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC5);
    for i in 0..500 {
        let s = space(if i % 2 == 0 { 3 } else { 5 });
        let omega = sample::nonzero_one_form(&mut rng, &s, 2);
        let x = sample::vfield(&mut rng, &s, 2);
        let y = sample::vfield(&mut rng, &s, 2);
        let r = cartan_residual(&omega, &x, &y).unwrap();
        assert!(r.is_zero(), "instance {i}: residual {r}");
    }
    budget("5 cartan-identity-fuzz", started, 120.0);
}

/// 6. Symmetry suite: quasi-homogeneous dilations rescale ω_sym by α²,
/// translations fix it, and the equivalence map links the two standard
/// forms.
#[test]
fn acceptance_6_symmetry_suite() {
    let started = Instant::now();

    for alpha in [
        CScalar::from_int(2),
        CScalar::from_ratio(1, 3),
        CScalar::i(),
    ] {
        let d = dilation_map(&alpha).unwrap();
        assert_eq!(
            d.pullback(&omega_sym()).unwrap(),
            omega_sym().scale(&alpha.pow(2))
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xACC6);
    for _ in 0..20 {
        let p = sample::point(&mut rng, 3);
        let t = heisenberg_translate(&p).unwrap();
        assert_eq!(t.pullback(&omega_sym()).unwrap(), omega_sym());
    }

    assert_eq!(
        equivalence_map().pullback(&omega_std()).unwrap(),
        omega_sym()
    );

    budget("6 symmetry-suite", started, 5.0);
}

/// 7. Legendrian suite: the standard form pulls back to zero under every
/// generating-function chart, for random S of degree ≤ 4 over all
/// partitions with n ≤ 3.
#[test]
fn acceptance_7_legendrian_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC7);
    for n in 1..=3usize {
        let ambient = ambient_space(n);
        let std_form = standard_form(n);
        // All 2^n partitions of 1..=n into (I, J).
        for mask in 0..(1u32 << n) {
            let i_set: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let j_set: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) == 0).collect();
            // Allowed variables: x_i for i ∈ I, y_j for j ∈ J.
            let allowed: Vec<usize> = (1..=n)
                .map(|idx| {
                    if i_set.contains(&idx) {
                        2 * (idx - 1)
                    } else {
                        2 * (idx - 1) + 1
                    }
                })
                .collect();
            for _ in 0..4 {
                let mut s_poly = Poly::zero(&ambient);
                for _ in 0..4 {
                    let mut term = Poly::constant(&ambient, sample::scalar(&mut rng));
                    let deg = rng.gen_range(0..=4u32);
                    for _ in 0..deg {
                        let v = allowed[rng.gen_range(0..allowed.len())];
                        term = term.checked_mul(&Poly::var(&ambient, v)).unwrap();
                    }
                    s_poly = &s_poly + &term;
                }
                let chart = legendrian_from_s(&s_poly, &i_set, &j_set, n).unwrap();
                let pulled = chart.map.pullback(&std_form).unwrap();
                assert!(pulled.is_zero(), "n={n} I={i_set:?} S={s_poly}");
            }
        }
    }
    budget("7 legendrian-suite", started, 30.0);
}

/// 8. Dichotomy demonstration at h = 1e−3 with the frozen seed:
/// (a) the integrable fixture conserves z while spreading in its leaf,
/// (b) the realified contact fixture escapes in z,
/// (c) the sphere fixture conserves r² while spreading on the sphere.
#[test]
fn acceptance_8_dichotomy_demonstration() {
    let started = Instant::now();
    let radius = ACCEPTANCE_RADIUS;
    let base = |fx: &pfaff_core::numeric::fixtures::Fixture| ReachConfig {
        n: ACCEPTANCE_SAMPLES,
        radius,
        seed: ACCEPTANCE_SEED,
        step: ACCEPTANCE_STEP,
        segments: 16,
        invariant: Some(fx.invariant.clone()),
    };

    let fx = fixture_dz();
    let summary = reach_sample(&fx.dist, &fx.p0, &base(&fx)).unwrap();
    assert!(summary.skipped.is_empty());
    let escape = summary.escape.unwrap();
    assert!(escape <= DZ_DRIFT_MAX, "dz escape {escape:e}");
    assert!(
        summary.spread > LEAF_SPREAD_MIN_FRAC * radius,
        "dz spread {}",
        summary.spread
    );
    assert!(summary.max_residual <= DZ_RESIDUAL_SLOPE * ACCEPTANCE_STEP);

    let fx = fixture_contact();
    let summary = reach_sample(&fx.dist, &fx.p0, &base(&fx)).unwrap();
    assert!(summary.skipped.is_empty());
    let escape = summary.escape.unwrap();
    assert!(
        escape > CONTACT_ESCAPE_MIN_FRAC * radius,
        "contact escape {escape:e}"
    );
    assert!(summary.max_residual <= CONTACT_RESIDUAL_SLOPE * ACCEPTANCE_STEP);

    let fx = fixture_sphere();
    let summary = reach_sample(&fx.dist, &fx.p0, &base(&fx)).unwrap();
    assert!(summary.skipped.is_empty());
    let escape = summary.escape.unwrap();
    assert!(escape <= SPHERE_DRIFT_MAX, "sphere escape {escape:e}");
    assert!(
        summary.spread > LEAF_SPREAD_MIN_FRAC * radius,
        "sphere spread {}",
        summary.spread
    );
    assert!(summary.max_residual <= SPHERE_RESIDUAL_SLOPE * ACCEPTANCE_STEP);

    budget("8 dichotomy-demonstration", started, 120.0);
}
