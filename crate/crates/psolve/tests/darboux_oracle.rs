//! Cross-checks the structured Darboux search against the exhaustive
//! brute-force oracle on the bundled fields.

use psolve::arith::{int, Poly, Rational};
use psolve::darboux::{brute_force_darboux, find_darboux, VectorField};

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn grid() -> Vec<Rational> {
    (-2..=2).map(int).collect()
}

fn run_comparison(vf: &VectorField, bound: u32) {
    let brute = brute_force_darboux(vf, bound, &grid());
    let found = find_darboux(vf, bound);
    let brute_polys: Vec<String> = brute.iter().map(|d| d.poly.to_string()).collect();
    let found_polys: Vec<String> = found.iter().map(|d| d.poly.to_string()).collect();
    assert_eq!(
        brute_polys, found_polys,
        "oracle disagreement for M = {}, N = {}",
        vf.m(),
        vf.n()
    );
    for (b, f) in brute.iter().zip(&found) {
        assert_eq!(b.cofactor, f.cofactor);
    }
}

#[test]
fn radical_field_matches_oracle() {
    let vf = VectorField::new(p("3*x^2*y^2 + x^3 + 1"), p("4*x^3*y + 4*y"));
    run_comparison(&vf, 2);
}

#[test]
fn riccati_field_matches_oracle() {
    let vf = VectorField::new(p("y^2 + x*y + x - 1"), Poly::one());
    run_comparison(&vf, 2);
}

#[test]
fn assorted_determinate_fields_match_oracle() {
    for (m, n) in [("y", "1"), ("x + y", "x - y")] {
        let vf = VectorField::new(p(m), p(n));
        let brute = brute_force_darboux(&vf, 2, &grid());
        let found = find_darboux(&vf, 2);
        // The structured search must reach everything the oracle reaches.
        for b in &brute {
            assert!(
                found.iter().any(|f| f.poly == b.poly),
                "missed {} for M = {m}, N = {n}",
                b.poly
            );
        }
        // And both directions are certified.
        for dp in found.iter().chain(&brute) {
            assert_eq!(vf.apply_d(&dp.poly), &dp.cofactor * &dp.poly);
        }
    }
}

#[test]
fn free_family_fields_reach_representatives() {
    // These fields carry polynomial first integrals (or an invariant
    // Euler structure), so infinitely many polynomials qualify and only
    // sampled representatives can be reported. Named members must show up
    // and everything reported must certify.
    let cases = [
        ("y", "x", vec!["x", "y", "x + y"]),
        ("x", "y", vec!["x - y", "x + y", "x^2 - y^2 - 1"]),
        ("x^2", "y^2", vec!["x - y"]),
        // Rational first integral (x^2 + y^2)/y: a pencil of circles.
        ("2*x*y", "x^2 - y^2", vec!["y", "x^2 + y^2", "x^2 + y^2 - y"]),
    ];
    for (m, n, members) in cases {
        let vf = VectorField::new(p(m), p(n));
        let found = find_darboux(&vf, 2);
        for member in members {
            assert!(
                found.iter().any(|d| d.poly == p(member)),
                "missing representative {member} for M = {m}, N = {n}"
            );
        }
        for dp in &found {
            assert_eq!(vf.apply_d(&dp.poly), &dp.cofactor * &dp.poly);
        }
    }
}
