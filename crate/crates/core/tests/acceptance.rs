//! Acceptance suite: eight end-to-end criteria covering family fidelity,
//! the theorem-level checks at desk scale, the Cremona pipeline, and the
//! randomized engine property suites. Each criterion prints a single
//! pass line with its measured runtime and asserts the stated budget.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use catlab_core::checks::{
    check_height_profile, check_linear_type, check_normality, check_normally_torsionfree,
    check_one_generic, OneGenericMode,
};
use catlab_core::cremona::{
    check_inversion_factor_jacobian, check_symbolic_generation, cremona_data,
};
use catlab_core::families::{build_catalecticant, build_sub_hankel};
use catlab_core::groebner::{groebner_basis, normal_form};
use catlab_core::poly::random_poly;
use catlab_core::report::Verdict;
use catlab_core::{
    parse_poly, Budgets, FamilyKind, FamilySpec, Field, GfP, Monomial, MonomialOrder, PolyMatrix,
    PolyRing, Polynomial,
};

fn done(criterion: u32, label: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} ({label}) exceeded its {budget:?} budget: {elapsed:?}"
    );
    println!("criterion {criterion} ({label}): PASS in {elapsed:?}");
}

#[test]
fn criterion_1_family_fidelity() {
    let start = Instant::now();
    let per_family = Duration::from_millis(1);

    let t = Instant::now();
    let hankel = build_catalecticant(GfP::default(), 3, 1).unwrap();
    let hankel_time = t.elapsed();
    assert_eq!(
        hankel.display_rows(),
        vec![vec!["X1", "X2"], vec!["X2", "X3"], vec!["X3", "X4"]]
    );
    assert!(hankel_time < per_family, "hankel build took {hankel_time:?}");

    let t = Instant::now();
    let sub = build_sub_hankel(GfP::default(), 4, 5).unwrap();
    let sub_time = t.elapsed();
    assert_eq!(
        sub.display_rows(),
        vec![
            vec!["X1", "X2", "X3"],
            vec!["X2", "X3", "X4"],
            vec!["X3", "X4", "X5"],
            vec!["X4", "X5", "0"],
        ]
    );
    assert!(sub_time < per_family, "sub-Hankel build took {sub_time:?}");

    for seed in [1u64, 2] {
        let t = Instant::now();
        let fam = FamilySpec::semi_hankel(4, 4, seed)
            .build(GfP::default())
            .unwrap();
        let semi_time = t.elapsed();
        // Hankel window while the anti-diagonal index stays within X1..X4,
        // then the two seeded forms continue the anti-diagonal pattern.
        assert_eq!(fam.forms.len(), 2);
        let f = |k: usize| fam.forms[k].display(&fam.ring);
        assert_eq!(
            fam.matrix.display_rows(),
            vec![
                vec!["X1".to_string(), "X2".to_string(), "X3".to_string()],
                vec!["X2".to_string(), "X3".to_string(), "X4".to_string()],
                vec!["X3".to_string(), "X4".to_string(), f(0)],
                vec!["X4".to_string(), f(0), f(1)],
            ]
        );
        for form in &fam.forms {
            assert_eq!(form.degree(), Some(1), "corner entries must be linear");
        }
        assert!(
            semi_time < per_family,
            "semi-Hankel build took {semi_time:?}"
        );
    }
    let one = FamilySpec::semi_hankel(4, 4, 1).build(GfP::default()).unwrap();
    let two = FamilySpec::semi_hankel(4, 4, 2).build(GfP::default()).unwrap();
    assert_ne!(
        one.matrix, two.matrix,
        "distinct seeds must give distinct corners"
    );

    done(1, "family fidelity", start, Duration::from_secs(1));
}

#[test]
fn criterion_2_height_profiles() {
    let start = Instant::now();
    let b = Budgets::unlimited();

    for m in 2..=4usize {
        for r in 1..m {
            let mat = build_catalecticant(GfP::default(), m, r).unwrap();
            let res = check_height_profile(&mat, FamilyKind::Catalecticant, &b);
            assert_eq!(res.verdict, Verdict::Pass, "cat({m},{r}): {}", res.data);
            assert_eq!(res.data["profile"].as_array().unwrap().len(), m - 1);
        }
    }
    for (m, n) in [(4usize, 5usize), (4, 6), (5, 6), (5, 7)] {
        let mat = build_sub_hankel(GfP::default(), m, n).unwrap();
        let res = check_height_profile(&mat, FamilyKind::SubHankel, &b);
        assert_eq!(res.verdict, Verdict::Pass, "sub({m},{n}): {}", res.data);
        assert_eq!(res.data["profile"].as_array().unwrap().len(), m - 1);
    }
    for m in 3..=4usize {
        for n in m..=2 * (m - 1) {
            for seed in [1u64, 2] {
                let fam = FamilySpec::semi_hankel(m, n, seed)
                    .build(GfP::default())
                    .unwrap();
                let res = check_height_profile(&fam.matrix, FamilyKind::SemiHankel, &b);
                assert_eq!(
                    res.verdict,
                    Verdict::Pass,
                    "semi({m},{n},{seed}): {}",
                    res.data
                );
                assert_eq!(res.data["profile"].as_array().unwrap().len(), m - 2);
            }
        }
    }

    done(2, "height profiles", start, Duration::from_secs(120));
}

#[test]
fn criterion_3_one_genericity() {
    let start = Instant::now();
    let b = Budgets::unlimited();

    for (label, mat) in [
        ("hankel 3x2", build_catalecticant(GfP::default(), 3, 1).unwrap()),
        ("catalecticant (4,2)", build_catalecticant(GfP::default(), 4, 2).unwrap()),
    ] {
        let res = check_one_generic(&mat, OneGenericMode::Certified, &b);
        assert_eq!(res.verdict, Verdict::Pass, "{label}: {}", res.data);
        assert_eq!(res.data["mode"], "certified", "{label}: {}", res.data);
    }

    let sub = build_sub_hankel(GfP::default(), 4, 5).unwrap();
    let res = check_one_generic(&sub, OneGenericMode::Certified, &b);
    assert_eq!(res.verdict, Verdict::Fail, "sub(4,5): {}", res.data);
    assert!(
        res.witnesses[0].contains("unit vectors") && res.witnesses[0].contains("(4, 3)"),
        "witness was: {}",
        res.witnesses[0]
    );

    done(3, "1-genericity", start, Duration::from_secs(30));
}

#[test]
fn criterion_4_linear_type() {
    let start = Instant::now();
    let b = Budgets::unlimited();

    for (label, mat) in [
        ("hankel 3x2", build_catalecticant(GfP::default(), 3, 1).unwrap()),
        ("sub_hankel(4,5)", build_sub_hankel(GfP::default(), 4, 5).unwrap()),
        (
            "semi_hankel(4,4)",
            FamilySpec::semi_hankel(4, 4, 1)
                .build(GfP::default())
                .unwrap()
                .matrix,
        ),
    ] {
        let res = check_linear_type(&mat, &b);
        assert_eq!(res.verdict, Verdict::Pass, "{label}: {}", res.data);
    }

    let ring = PolyRing::with_x_vars(GfP::default(), 2);
    let entries = [["X2", "0"], ["-X1", "X2"], ["0", "-X1"]];
    let control = PolyMatrix::from_fn(ring.clone(), 3, 2, |i, j| {
        parse_poly(&ring, entries[i][j]).unwrap()
    });
    let res = check_linear_type(&control, &b);
    assert_eq!(res.verdict, Verdict::Fail, "control: {}", res.data);
    assert!(
        res.witnesses[0].starts_with("Y2^2 - Y1*Y3"),
        "witness was: {}",
        res.witnesses[0]
    );

    done(4, "linear type", start, Duration::from_secs(120));
}

#[test]
fn criterion_5_normal_torsionfreeness() {
    let start = Instant::now();
    let b = Budgets::unlimited();

    let hankel = build_catalecticant(GfP::default(), 3, 1).unwrap();
    let res = check_normally_torsionfree(&hankel, 3, &b);
    assert_eq!(res.verdict, Verdict::Pass, "hankel 3x2: {}", res.data);
    assert_eq!(res.data["rows"].as_array().unwrap().len(), 2);

    let sub = build_sub_hankel(GfP::default(), 4, 5).unwrap();
    let res = check_normally_torsionfree(&sub, 2, &b);
    assert_eq!(res.verdict, Verdict::Pass, "sub(4,5): {}", res.data);
    assert_eq!(res.data["rows"].as_array().unwrap().len(), 1);

    done(5, "normal torsionfreeness", start, Duration::from_secs(300));
}

#[test]
fn criterion_6_normality_dichotomy() {
    let start = Instant::now();
    let b = Budgets::unlimited();

    for (m, n) in [(4usize, 5usize), (5, 6)] {
        let mat = build_sub_hankel(GfP::default(), m, n).unwrap();
        let res = check_normality(&mat, FamilyKind::SubHankel, &b);
        assert_eq!(res.verdict, Verdict::Pass, "sub({m},{n}): {}", res.data);
        assert_eq!(res.data["normal"], false, "sub({m},{n}): {}", res.data);
        assert!(
            res.witnesses[0].contains(&format!("Delta_{}", n - 2)),
            "sub({m},{n}) witness was: {}",
            res.witnesses[0]
        );
    }

    let sub57 = build_sub_hankel(GfP::default(), 5, 7).unwrap();
    let res = check_normality(&sub57, FamilyKind::SubHankel, &b);
    assert_eq!(res.verdict, Verdict::Pass, "sub(5,7): {}", res.data);
    assert_eq!(res.data["normal"], true, "sub(5,7): {}", res.data);

    let hankel = build_catalecticant(GfP::default(), 3, 1).unwrap();
    let res = check_normality(&hankel, FamilyKind::Catalecticant, &b);
    assert_eq!(res.verdict, Verdict::Pass, "hankel 3x2: {}", res.data);
    assert_eq!(res.data["normal"], true, "hankel 3x2: {}", res.data);

    done(6, "normality dichotomy", start, Duration::from_secs(60));
}

#[test]
fn criterion_7_cremona_pipeline() {
    let start = Instant::now();
    let b = Budgets::unlimited();

    for seed in [1u64, 2] {
        let fam = FamilySpec::semi_hankel(4, 4, seed)
            .build(GfP::default())
            .unwrap();
        let forms = fam.matrix.signed_maximal_minors();

        let data = cremona_data(&fam.ring, &forms, &b).unwrap();
        assert_eq!(data.d, 3, "seed {seed}: map degree");
        assert_eq!(data.d_prime, 3, "seed {seed}: inverse degree");
        assert_eq!(
            data.source_factor.degree(),
            Some(8),
            "seed {seed}: deg D = d*d' - 1"
        );
        assert!(
            data.jacobian_matches,
            "seed {seed}: det Theta must equal (n-1) D up to scalar"
        );

        let res = check_inversion_factor_jacobian(&fam.ring, &forms, &b);
        assert_eq!(res.verdict, Verdict::Pass, "seed {seed}: {}", res.data);
        assert_eq!(
            res.data["char_proxy"]["satisfied"], true,
            "seed {seed}: {}",
            res.data
        );

        let res = check_symbolic_generation(&fam.ring, &forms, &b);
        assert_eq!(res.verdict, Verdict::Pass, "seed {seed}: {}", res.data);
        assert_eq!(res.data["D_outside_top_power"], true, "seed {seed}");
        assert_eq!(res.data["D_in_saturation_of_top_power"], true, "seed {seed}");
        for row in res.data["stability"].as_array().unwrap() {
            assert_eq!(
                row["saturation_stable"], true,
                "seed {seed}: I^l unstable at {row}"
            );
        }
        assert_eq!(
            res.data["stability"].as_array().unwrap().len(),
            2,
            "seed {seed}: stability rows l = 1..n-2"
        );
    }

    // Control: the standard quadratic plane Cremona map.
    let ring = PolyRing::with_x_vars(GfP::default(), 3);
    let forms = vec![
        parse_poly(&ring, "X2*X3").unwrap(),
        parse_poly(&ring, "X1*X3").unwrap(),
        parse_poly(&ring, "X1*X2").unwrap(),
    ];
    let data = cremona_data(&ring, &forms, &b).unwrap();
    assert_eq!(data.source_factor.display(&ring), "X1*X2*X3");
    assert_eq!(data.jacobian_det.display(&ring), "2*X1*X2*X3");
    assert!(data.jacobian_matches);

    done(7, "cremona pipeline", start, Duration::from_secs(300));
}

const CASES: usize = 1000;

fn small_ring() -> PolyRing<GfP> {
    PolyRing::with_x_vars(GfP::default(), 3)
}

/// S-polynomial of two monic basis elements under `order`.
fn s_poly(
    ring: &PolyRing<GfP>,
    f: &Polynomial<GfP>,
    g: &Polynomial<GfP>,
    order: MonomialOrder,
) -> Polynomial<GfP> {
    let field = ring.field();
    let (lf, _) = f.leading_term(order).unwrap();
    let (lg, _) = g.leading_term(order).unwrap();
    let lcm = lf.lcm(lg);
    let monomial = |m: Monomial| Polynomial::from_terms(field, vec![(m, field.one())]);
    f.mul(field, &monomial(lf.div_into(&lcm)))
        .sub(field, &g.mul(field, &monomial(lg.div_into(&lcm))))
}

#[test]
fn criterion_8_engine_properties() {
    let start = Instant::now();
    let b = Budgets::unlimited();
    let ring = small_ring();
    let field = ring.field().clone();
    let order = MonomialOrder::DegRevLex;

    // Reduced-basis uniqueness: the same ideal presented two ways.
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    for case in 0..CASES {
        let f = random_poly(&ring, &mut rng, 3, 2);
        let g = random_poly(&ring, &mut rng, 3, 2);
        let h = random_poly(&ring, &mut rng, 2, 1);
        let c1 = field.random_nonzero(&mut rng);
        let c2 = field.random_nonzero(&mut rng);
        let a = groebner_basis(&ring, &[f.clone(), g.clone()], order, &b).unwrap();
        let other = [
            g.scale(&field, &c1).add(&field, &f.mul(&field, &h)),
            f.scale(&field, &c2),
        ];
        let bb = groebner_basis(&ring, &other, order, &b).unwrap();
        assert_eq!(a.elements, bb.elements, "uniqueness case {case}");
    }

    // Confluence: every S-pair of a computed basis reduces to zero.
    let mut rng = ChaCha8Rng::seed_from_u64(802);
    for case in 0..CASES {
        let gens = [
            random_poly(&ring, &mut rng, 3, 2),
            random_poly(&ring, &mut rng, 3, 2),
        ];
        let gb = groebner_basis(&ring, &gens, order, &b).unwrap();
        for i in 0..gb.elements.len() {
            for j in i + 1..gb.elements.len() {
                let s = s_poly(&ring, &gb.elements[i], &gb.elements[j], order);
                let r = normal_form(&ring, &s, &gb, &b).unwrap();
                assert!(r.is_zero(), "confluence case {case}: pair ({i},{j})");
            }
        }
    }

    // Laplace annihilation: the signed maximal minors kill the matrix.
    let mut rng = ChaCha8Rng::seed_from_u64(803);
    for case in 0..CASES {
        let m = PolyMatrix::from_fn(ring.clone(), 4, 3, |_, _| {
            random_poly(&ring, &mut rng, 2, 2)
        });
        let delta = m.signed_maximal_minors();
        for j in 0..3 {
            let mut acc = ring.zero();
            for i in 0..4 {
                acc = acc.add(&field, &delta[i].mul(&field, m.entry(i, j)));
            }
            assert!(acc.is_zero(), "laplace case {case}: column {j}");
        }
    }

    // Bareiss and Laplace determinants agree.
    let mut rng = ChaCha8Rng::seed_from_u64(804);
    for case in 0..CASES {
        let m = PolyMatrix::from_fn(ring.clone(), 3, 3, |_, _| {
            random_poly(&ring, &mut rng, 2, 2)
        });
        assert_eq!(m.det(), m.det_laplace(), "determinant case {case}");
    }

    // Substitution is a ring homomorphism.
    let mut rng = ChaCha8Rng::seed_from_u64(805);
    let target = PolyRing::with_x_vars(GfP::default(), 2);
    for case in 0..CASES {
        let images: Vec<Polynomial<GfP>> = (0..3)
            .map(|_| random_poly(&target, &mut rng, 2, 2))
            .collect();
        let f = random_poly(&ring, &mut rng, 3, 2);
        let g = random_poly(&ring, &mut rng, 3, 2);
        let sub = |p: &Polynomial<GfP>| p.substitute(&ring, &target, &images);
        assert_eq!(
            sub(&f.mul(&field, &g)),
            sub(&f).mul(&field, &sub(&g)),
            "multiplicative case {case}"
        );
        assert_eq!(
            sub(&f.add(&field, &g)),
            sub(&f).add(&field, &sub(&g)),
            "additive case {case}"
        );
    }

    done(8, "engine properties", start, Duration::from_secs(120));
}
