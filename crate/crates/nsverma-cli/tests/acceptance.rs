//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//! Everything here is exact arithmetic, so every comparison is equality;
//! there are no tolerances anywhere.

use nsverma::exactnum::{rat, rat_int, HalfInt, PolyCH, Rat};
use nsverma::fqs::{
    classify, discrete_series, first_intersections_equal_series, wassermann_inequalities,
    Classification,
};
use nsverma::gramkac::{
    c_from_m_int, degree_check, det, gram_matrix, h_from_m_int, kac_verify, kernel_census,
    kernel_census_expected, product_closed_form, product_interpolated, rank_kernel_signature,
    KacMode,
};
use nsverma::nsalgebra::{dimension_d, PbwMonomial, VermaModule, VermaVector};
use nsverma::qseries::{
    chi_ns, coset_identity_check, frenkel_check, jacobi_check, product_formula_check,
    rank_character_crosscheck,
};
use nsverma_cli::{verify_all, VerifyOptions};

fn half(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn mono(s: &str) -> PbwMonomial {
    s.parse().unwrap()
}

fn pass(n: u32, what: &str) {
    println!("criterion {n:02} PASS — {what}");
}

#[test]
fn criterion_01_gram_examples() {
    let module = VermaModule::symbolic();
    let two_h = PolyCH::var_h().scale(&rat_int(2));

    let g = gram_matrix(&module, half(0));
    assert_eq!(g.entries, vec![vec![PolyCH::one()]]);

    let g = gram_matrix(&module, half(1));
    assert_eq!(g.basis, vec![mono("G(-1/2)")]);
    assert_eq!(g.entries, vec![vec![two_h.clone()]]);

    let g = gram_matrix(&module, half(2));
    assert_eq!(g.basis, vec![mono("L(-1)")]);
    assert_eq!(g.entries, vec![vec![two_h.clone()]]);

    let g = gram_matrix(&module, half(3));
    assert_eq!(g.basis, vec![mono("G(-1/2) L(-1)"), mono("G(-3/2)")]);
    let mut e00 = PolyCH::zero();
    e00.add_term(0, 1, rat_int(2));
    e00.add_term(0, 2, rat_int(4));
    let e01 = PolyCH::var_h().scale(&rat_int(4));
    let mut e11 = PolyCH::zero();
    e11.add_term(0, 1, rat_int(2));
    e11.add_term(1, 0, rat(2, 3));
    assert_eq!(g.entries, vec![vec![e00, e01.clone()], vec![e01, e11]]);

    pass(1, "Gram matrices at levels 0, 1/2, 1, 3/2 match entry-for-entry");
}

#[test]
fn criterion_02_kac_formula() {
    for t in 1..=6 {
        let f = kac_verify(half(t), KacMode::Symbolic).unwrap();
        assert!(f.leading > rat_int(0), "A at level {}", half(t));
        if t == 3 {
            assert_eq!(f.leading, rat_int(8));
        }
    }
    for t in [7, 8] {
        let f = kac_verify(half(t), KacMode::Pointwise).unwrap();
        assert!(f.leading > rat_int(0), "A at level {}", half(t));
    }
    pass(2, "det_n = A_n prod phi^d, symbolic n <= 3 (A_{3/2} = 8), pointwise n = 7/2, 4");
}

#[test]
fn criterion_03_degree_count() {
    for t in 1..=6 {
        assert_eq!(degree_check(half(t)), Ok(true), "level {}", half(t));
    }
    pass(3, "deg_h det_n equals the exponent sum for n <= 3");
}

#[test]
fn criterion_04_dimension_double_count() {
    let chi = chi_ns(&rat(21, 2));
    let expected_start = [1, 1, 1, 2, 3, 4, 5, 7, 10];
    for (t, want) in expected_start.iter().enumerate() {
        assert_eq!(dimension_d(half(t as i64)), *want);
    }
    let mut t = 0;
    while t <= 20 {
        let n = half(t);
        assert_eq!(
            rat_int(dimension_d(n) as i64),
            chi.coeff(&n.to_rat()),
            "d({n}) vs series coefficient"
        );
        t += 1;
    }
    pass(4, "PBW enumeration equals chi_NS coefficients for all n <= 10");
}

#[test]
fn criterion_05_singular_vectors() {
    // Level 1/2: G_{-1/2} Omega at h = 0, c arbitrary.
    for c in [rat_int(0), rat(7, 10), rat(22, 7)] {
        let module = VermaModule::point(c, rat_int(0));
        let v = VermaVector::monomial(mono("G(-1/2)"));
        assert_eq!(module.is_singular(&v), Ok(true));
    }

    // Level 3/2: (m G_{-3/2} - (m+2) L_{-1} G_{-1/2}) Omega at (c_m, h_13^m);
    // L_{-1} G_{-1/2} equals the basis monomial G(-1/2) L(-1) exactly.
    for m in [3i64, 4, 5] {
        let module = VermaModule::point(c_from_m_int(m), h_from_m_int(m, 1, 3));
        let mut v = VermaVector::term(mono("G(-3/2)"), rat_int(m));
        v.add_term(mono("G(-1/2) L(-1)"), rat_int(-(m + 2)));
        assert_eq!(module.is_singular(&v), Ok(true), "m = {m}");
    }

    // Level 2: (L_{-1}^2 - (4/3) h22 L_{-2} - G_{-3/2} G_{-1/2}) Omega at
    // h22(c) = (3-2c)/16.  In the internal PBW order the last product is
    // -G(-1/2)G(-3/2) + 2 L(-2).
    let level_two_vector = |h22: &Rat| -> VermaVector<Rat> {
        let mut v: VermaVector<Rat> = VermaVector::monomial(mono("L(-1) L(-1)"));
        v.add_term(mono("L(-2)"), h22 * rat(-4, 3));
        v.add_term(mono("G(-1/2) G(-3/2)"), rat_int(1));
        v.add_term(mono("L(-2)"), rat_int(-2));
        v
    };
    for c in [rat_int(0), rat(7, 10), rat(1, 2), rat(-3, 4)] {
        let h22 = (rat_int(3) - rat_int(2) * &c) / rat_int(16);
        let module = VermaModule::point(c.clone(), h22.clone());
        assert_eq!(module.is_singular(&level_two_vector(&h22)), Ok(true), "c = {c}");
    }

    // The level-2 kernel confirms the stated coefficients: away from
    // curve crossings the kernel is one-dimensional and spanned by this
    // exact vector (no correction needed).  c = 7/10 is excluded here
    // because there h22 meets the (1,3) curve and the kernel grows.
    for c in [rat_int(0), rat(1, 2), rat(5, 4), rat(-3, 4)] {
        let h22 = (rat_int(3) - rat_int(2) * &c) / rat_int(16);
        let module = VermaModule::point(c.clone(), h22.clone());
        let (_, kernel, _) = rank_kernel_signature(&gram_matrix(&module, half(4)));
        assert_eq!(kernel.len(), 1, "level-2 kernel dimension at c = {c}");
        let k = &kernel[0];
        let lead = k.coeff(&mono("L(-1) L(-1)"));
        assert!(lead != rat_int(0));
        let rescaled = k.scale(&(rat_int(1) / lead));
        assert_eq!(
            rescaled,
            level_two_vector(&h22),
            "kernel confirms the stated coefficients at c = {c}"
        );
    }

    pass(5, "all three singular vectors annihilated by G_{1/2}, G_{3/2}; level-2 coefficients kernel-confirmed, no correction needed");
}

#[test]
fn criterion_06_jacobi_and_product_formula() {
    let order = rat_int(8);
    assert!(jacobi_check(&order));
    for (p, m) in [(1, 2), (1, 3), (2, 3), (1, 4)] {
        assert!(product_formula_check(p, m, &order), "(p,m)=({p},{m})");
    }
    pass(6, "triple product and product formula hold term-for-term to order 8");
}

#[test]
fn criterion_07_discrete_series_identity() {
    assert!(first_intersections_equal_series(12));
    for pt in discrete_series(12, false) {
        assert!(pt.h >= rat_int(0));
        let dual = pt.dual();
        assert_eq!((&pt.c, &pt.h), (&dual.c, &dual.h));
    }
    pass(7, "first-intersection set equals the series for m <= 12, with h >= 0 and duality");
}

#[test]
fn criterion_08_fqs_gko_coherence() {
    // No negative directions at any discrete point with m <= 4, levels <= 5/2.
    for pt in discrete_series(4, true) {
        let module = VermaModule::point(pt.c.clone(), pt.h.clone());
        for t in 1..=5 {
            let (_, _, sig) = rank_kernel_signature(&gram_matrix(&module, half(t)));
            assert_eq!(
                sig.1,
                0,
                "negative direction at ({},{},{}), level {}",
                pt.m,
                pt.p,
                pt.q,
                half(t)
            );
        }
    }

    // One sample point per region at level <= 2, each yielding an exact
    // ghost witness whose norm re-evaluates identically under the form.
    // Region membership is certified by the signs of the phi polynomials.
    let phi11 = nsverma::gramkac::phi(1, 1).unwrap();
    let phi13 = nsverma::gramkac::phi(1, 3).unwrap();
    let phi22 = nsverma::gramkac::phi(2, 2).unwrap();
    let r13 = (rat(7, 10), rat(1, 2));
    assert!(phi11.eval(&r13.0, &r13.1) > rat_int(0));
    assert!(phi13.eval(&r13.0, &r13.1) < rat_int(0));
    let r22 = (rat(7, 10), rat(1, 20));
    assert!(phi11.eval(&r22.0, &r22.1) > rat_int(0));
    assert!(phi13.eval(&r22.0, &r22.1) > rat_int(0));
    assert!(phi22.eval(&r22.0, &r22.1) < rat_int(0));

    let samples = [
        (rat(1, 2), rat(-1, 3), half(1)), // h < 0 region
        (r13.0, r13.1, half(3)),          // between the (1,3) curve branches
        (r22.0, r22.1, half(4)),          // below the (2,2) curve
    ];
    for (c, h, expect_level) in samples {
        match classify(&c, &h, half(4)) {
            Classification::Ghost { level, witness, norm } => {
                assert_eq!(level, expect_level, "ghost level at ({c},{h})");
                assert!(norm < rat_int(0));
                let module = VermaModule::point(c.clone(), h.clone());
                assert_eq!(module.form(&witness, &witness), norm);
            }
            other => panic!("expected ghost at ({c},{h}), got {other:?}"),
        }
    }
    pass(8, "no ghosts on the discrete series (m <= 4, levels <= 5/2); exact ghost witnesses in the excluded regions");
}

#[test]
fn criterion_09_character_theorem_at_desk_scale() {
    for (m, p, q) in [(2, 1, 1), (2, 1, 3), (3, 1, 3), (3, 2, 2)] {
        assert_eq!(
            rank_character_crosscheck(m, p, q, half(6)),
            Ok(true),
            "({m},{p},{q})"
        );
    }
    pass(9, "Gram rank equals character coefficients at levels <= 3 for the four sample labels");
}

#[test]
fn criterion_10_kernel_census() {
    for pt in discrete_series(3, true) {
        let bound = half((pt.p * pt.q).max(pt.p_prime * pt.q_prime));
        assert_eq!(
            kernel_census(pt.m, pt.p, pt.q, bound),
            kernel_census_expected(pt.m, pt.p, pt.q, bound),
            "census at ({},{},{})",
            pt.m,
            pt.p,
            pt.q
        );
    }
    pass(10, "kernel dimension profiles match the two-singular-vector structure for m <= 3");
}

#[test]
fn criterion_11_coset_identities() {
    let order = rat_int(6);
    for (j, ell) in [(half(0), 0i64), (half(1), 1), (half(0), 2)] {
        assert_eq!(coset_identity_check(j, ell, &order), Ok(true), "(j,ell)=({j},{ell})");
    }
    assert!(frenkel_check(&order));
    pass(11, "tensor decomposition identities and the free-fermion decomposition hold to order 6");
}

#[test]
fn criterion_12_wassermann_inequalities() {
    assert!(wassermann_inequalities(20));
    pass(12, "character-gap inequalities hold exhaustively for m <= 20");
}

#[test]
fn criterion_13_documented_erratum() {
    // The closed-form product rule disagrees with the exact interpolation
    // at (1,3) ...
    let closed = product_closed_form(1, 3);
    let interp = product_interpolated(1, 3);
    assert_ne!(closed, interp);
    let zero = rat_int(0);
    let mut disagreements = 0;
    for m in 6..=15 {
        let c = c_from_m_int(m);
        let truth = h_from_m_int(m, 1, 3) * h_from_m_int(m, 3, 1);
        // ... while the interpolated polynomial reproduces every sample.
        assert_eq!(interp.eval(&c, &zero), truth, "interpolation at m = {m}");
        if closed.eval(&c, &zero) != truth {
            disagreements += 1;
        }
    }
    assert!(disagreements > 0);

    // And the aggregate report records it as an expected-discrepancy item
    // that passes.
    let items = verify_all(&VerifyOptions {
        max_level: half(1),
        order: rat_int(2),
        m_max: 2,
        threads: 1,
    });
    let erratum = items
        .iter()
        .find(|i| i.name == "erratum-product-formula")
        .expect("erratum item present");
    assert!(erratum.pass, "erratum item must pass as an expected discrepancy");
    pass(13, "product-rule discrepancy machine-checked; interpolated P(c) validated; reported as expected discrepancy");
}

#[test]
fn verify_all_default_run_passes() {
    // The full default suite (the CLI's verify-all) is itself a criterion
    // aggregate; run it end to end at the documented defaults.
    let items = verify_all(&VerifyOptions {
        max_level: half(6),
        order: rat_int(8),
        m_max: 8,
        threads: 2,
    });
    for item in &items {
        assert!(item.pass, "item {} failed: {}", item.name, item.detail);
        println!("verify-all {} — {}", item.name, item.detail);
    }
    assert_eq!(items.len(), 12);
}

#[test]
fn criterion_05_addendum_level_two_gram_det_vanishes_on_the_curve() {
    // Independent corroboration for the level-2 singular vector: the
    // level-2 determinant vanishes along h = h_22(c).
    let module = VermaModule::symbolic();
    let d = det(&gram_matrix(&module, half(4)));
    for c in [rat_int(0), rat(7, 10), rat(5, 4), rat(-2, 3)] {
        let h22 = (rat_int(3) - rat_int(2) * &c) / rat_int(16);
        assert_eq!(d.eval(&c, &h22), rat_int(0));
    }
}
