//! Property suites over random small polynomials: ring axioms, derivation
//! laws, exact division, gcd contracts and the parser round trip.

use proptest::prelude::*;
use psolve::arith::{self, gcd, rf_reduce, Monomial, Poly, Rational, Var};
use psolve::darboux::VectorField;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=3).prop_map(|(n, d)| arith::rat(n, d))
}

/// Sparse polynomials of total degree at most 4 with small coefficients.
fn poly_strategy() -> impl Strategy<Value = Poly> {
    let term = ((0u32..=4, 0u32..=4), rational_strategy())
        .prop_filter("degree cap", |((dx, dy), _)| dx + dy <= 4)
        .prop_map(|((dx, dy), c)| (Monomial::new(dx, dy), c));
    proptest::collection::vec(term, 0..6).prop_map(Poly::from_terms)
}

fn nonzero_poly_strategy() -> impl Strategy<Value = Poly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert_eq!(&a - &a, Poly::zero());
    }

    #[test]
    fn exact_div_inverts_mul(a in poly_strategy(), b in nonzero_poly_strategy()) {
        let product = &a * &b;
        prop_assert_eq!(product.exact_div(&b), Some(a));
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly_strategy(), b in nonzero_poly_strategy()) {
        let g = gcd(&a, &b);
        prop_assert!(g.divides(&a));
        prop_assert!(g.divides(&b));
        let r = rf_reduce(a, b);
        prop_assert!(gcd(r.num(), r.den()).is_constant());
    }

    #[test]
    fn partial_satisfies_leibniz(a in poly_strategy(), b in poly_strategy()) {
        for v in [Var::X, Var::Y] {
            let lhs = (&a * &b).partial(v);
            let rhs = &(&a * &b.partial(v)) + &(&a.partial(v) * &b);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eval_is_ring_homomorphism(
        a in poly_strategy(),
        b in poly_strategy(),
        x0 in rational_strategy(),
        y0 in rational_strategy(),
    ) {
        prop_assert_eq!((&a * &b).eval(&x0, &y0), a.eval(&x0, &y0) * b.eval(&x0, &y0));
        prop_assert_eq!((&a + &b).eval(&x0, &y0), a.eval(&x0, &y0) + b.eval(&x0, &y0));
    }

    #[test]
    fn apply_d_is_a_derivation(
        m in poly_strategy(),
        n in nonzero_poly_strategy(),
        p in poly_strategy(),
        q in poly_strategy(),
    ) {
        let vf = VectorField::new(m, n);
        let lhs = vf.apply_d(&(&p * &q));
        let rhs = &(&p * &vf.apply_d(&q)) + &(&q * &vf.apply_d(&p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_d_is_linear(
        m in poly_strategy(),
        n in nonzero_poly_strategy(),
        p in poly_strategy(),
        q in poly_strategy(),
        a in rational_strategy(),
        b in rational_strategy(),
    ) {
        let vf = VectorField::new(m, n);
        let combo = &p.scale(&a) + &q.scale(&b);
        let lhs = vf.apply_d(&combo);
        let rhs = &vf.apply_d(&p).scale(&a) + &vf.apply_d(&q).scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parser_round_trips_canonical_text(p in poly_strategy()) {
        let text = p.to_string();
        let reparsed: Poly = text.parse().expect("canonical text parses");
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn parser_never_panics(input in "[ 0-9a-z+*/^()=,.-]{0,40}") {
        let _ = psolve::parse::parse_poly(&input);
        let _ = psolve::parse::parse_ode(&input);
    }
}

proptest! {
    // End-to-end falsification: on random small fields the search must
    // terminate, certify everything it returns, and any found integrating
    // factor must satisfy the defining identity exactly.
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn random_fields_solve_or_fail_cleanly(
        m in poly_strategy(),
        n in nonzero_poly_strategy(),
    ) {
        prop_assume!(!m.is_zero());
        let vf = VectorField::new(m, n);
        let pairs = psolve::darboux::find_darboux(&vf, 2);
        for dp in &pairs {
            prop_assert_eq!(vf.apply_d(&dp.poly), &dp.cofactor * &dp.poly);
        }
        let elementary = psolve::psengine::solve_elementary(&vf, &pairs);
        let liouvillian = psolve::psengine::solve_liouvillian(&vf, &pairs, 2, 1);
        for factor in elementary.iter().chain(liouvillian.iter()) {
            let report = psolve::verify::verify_symbolic(&vf, factor);
            prop_assert!(report.pass, "identity failed for M={} N={}", vf.m(), vf.n());
        }
    }
}

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Poly>();
    assert_send_sync::<Monomial>();
    assert_send_sync::<psolve::RationalFunction>();
    assert_send_sync::<VectorField>();
    assert_send_sync::<psolve::DarbouxPair>();
    assert_send_sync::<psolve::IntegratingFactor>();
}

proptest! {
    // Evaluation agreement between the exact operator and central
    // differences, away from singular points.
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn finite_differences_track_apply_d(
        m in poly_strategy(),
        n in nonzero_poly_strategy(),
        p in poly_strategy(),
        x0 in -2i32..=2,
        y0 in -2i32..=2,
    ) {
        let vf = VectorField::new(m, n);
        let exact_poly = vf.apply_d(&p);
        let (x, y) = (x0 as f64 / 3.0 + 0.1, y0 as f64 / 3.0 - 0.05);
        let exact = exact_poly.eval_f64(x, y);
        let approx = psolve::verify::finite_diff_d(&vf, &p, (x, y), 1e-5);
        prop_assert!(
            (exact - approx).abs() <= 1e-4 * (1.0 + exact.abs()),
            "exact {exact} vs approx {approx}"
        );
    }
}
