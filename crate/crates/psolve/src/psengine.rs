//! Integrating-factor solvers.
//!
//! Both branches match the log-derivative identity
//! `D[R]/R = −(∂x N + ∂y M)` structurally. The elementary branch posits
//! `R = ∏ f_i^{n_i}` over the certified Darboux pairs and solves the linear
//! system `Σ n_i·g_i = residual`. The Liouvillian branch posits
//! `R = e^{P/Q}·∏ p_i^{c_i}` where `Q` ranges over products of Darboux
//! polynomials (the only denominators for which `D[P/Q]` can stay
//! polynomial) and `P` is an undetermined polynomial; exactness of
//! `D[P/Q]` and the identity itself are jointly linear in the unknowns.

use crate::arith::{Monomial, Poly, Rational, RationalFunction, Var};
use crate::darboux::{DarbouxPair, VectorField};
use crate::linalg::{self, Solution};
use num_traits::Zero;

/// The polynomial `−(∂x N + ∂y M)` that every integrating-factor ansatz
/// must reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub value: Poly,
}

pub fn residual(vf: &VectorField) -> Residual {
    Residual {
        value: -&(&vf.n().partial(Var::X) + &vf.m().partial(Var::Y)),
    }
}

/// Structural integrating factor `R = e^{r0} · ∏ p^c`. Never expanded into
/// a closed form; `r0` carries a zero constant term and `D[r0]` is a
/// polynomial by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegratingFactor {
    pub r0: RationalFunction,
    pub factors: Vec<(Poly, Rational)>,
}

impl IntegratingFactor {
    pub fn trivial() -> Self {
        IntegratingFactor { r0: RationalFunction::zero(), factors: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.r0.is_zero() && self.factors.is_empty()
    }

    /// `D[r0] + Σ c_i·g_i`, the exact log-derivative of `R`. `None` when a
    /// factor is not Darboux or `D[r0]` is not polynomial, which certified
    /// inputs never trigger.
    pub fn log_derivative(&self, vf: &VectorField) -> Option<Poly> {
        let mut acc = d_of_rational(vf, &self.r0)?;
        for (p, c) in &self.factors {
            let g = vf.cofactor(p).ok()?;
            acc = &acc + &g.scale(c);
        }
        Some(acc)
    }
}

/// `D[P/Q] = (Q·D[P] − P·D[Q])/Q²` as a polynomial; `None` when the
/// division is not exact.
pub fn d_of_rational(vf: &VectorField, r: &RationalFunction) -> Option<Poly> {
    if r.is_zero() {
        return Some(Poly::zero());
    }
    let num = &(r.den() * &vf.apply_d(r.num())) - &(r.num() * &vf.apply_d(r.den()));
    let q2 = r.den() * r.den();
    num.exact_div(&q2)
}

/// Classical elementary branch: solve `Σ n_i·g_i = residual` for rational
/// exponents over the given pairs. Returns the particular solution with
/// free exponents zero, restricted to nonzero entries.
pub fn solve_elementary(vf: &VectorField, pairs: &[DarbouxPair]) -> Option<IntegratingFactor> {
    let res = residual(vf);
    let mut row_monos: Vec<Monomial> = res.value.terms().map(|(m, _)| *m).collect();
    for p in pairs {
        row_monos.extend(p.cofactor.terms().map(|(m, _)| *m));
    }
    row_monos.sort();
    row_monos.dedup();
    row_monos.reverse();

    let rows: Vec<Vec<Rational>> = row_monos
        .iter()
        .map(|mu| pairs.iter().map(|p| p.cofactor.coeff(mu)).collect())
        .collect();
    let rhs: Vec<Rational> = row_monos.iter().map(|mu| res.value.coeff(mu)).collect();
    match linalg::solve(&rows, &rhs, pairs.len()) {
        Solution::Inconsistent => None,
        Solution::Solved { values, .. } => Some(IntegratingFactor {
            r0: RationalFunction::zero(),
            factors: pairs
                .iter()
                .zip(values)
                .filter(|(_, n)| !n.is_zero())
                .map(|(p, n)| (p.poly.clone(), n))
                .collect(),
        }),
    }
}

/// All products `∏ p_i^{k_i}` with `0 ≤ k_i ≤ mult_bound`, sorted by
/// ascending total degree (ties by canonical order), starting with 1.
pub fn enumerate_denominators(pairs: &[DarbouxPair], mult_bound: u32) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    for p in pairs {
        let mut next = Vec::with_capacity(out.len() * (mult_bound as usize + 1));
        for q in &out {
            let mut power = q.clone();
            next.push(power.clone());
            for _ in 0..mult_bound {
                power = &power * &p.poly;
                next.push(power.clone());
            }
        }
        out = next;
    }
    out.sort_by_key(|q| (q.total_degree().unwrap_or(0), q.clone()));
    out.dedup();
    out
}

/// Liouvillian branch. For each candidate denominator `Q` (ascending) and
/// each numerator degree bound (ascending), impose that `Q` divides
/// `D[P] − P·(D[Q]/Q)` exactly and that the log-derivative identity holds;
/// both are linear in `P`'s coefficients and the exponents jointly. The
/// first consistent system wins, normalized to a coprime `P/Q` with zero
/// constant term.
pub fn solve_liouvillian(
    vf: &VectorField,
    pairs: &[DarbouxPair],
    num_degree_bound: u32,
    mult_bound: u32,
) -> Option<IntegratingFactor> {
    let res = residual(vf);
    if res.value.is_zero() {
        // Already exact: R = 1.
        return Some(IntegratingFactor::trivial());
    }
    for q in enumerate_denominators(pairs, mult_bound) {
        // D[Q]/Q is a polynomial because Q is a product of Darboux factors.
        let g_of_q = vf
            .apply_d(&q)
            .exact_div(&q)
            .expect("denominator built from certified Darboux polynomials");
        for p_deg in 0..=num_degree_bound {
            if let Some(found) = try_denominator(vf, pairs, &res, &q, &g_of_q, p_deg) {
                return Some(found);
            }
        }
    }
    None
}

fn try_denominator(
    vf: &VectorField,
    pairs: &[DarbouxPair],
    res: &Residual,
    q: &Poly,
    g_of_q: &Poly,
    p_deg: u32,
) -> Option<IntegratingFactor> {
    // Unknown order: exponents c_i first, then P's coefficients in
    // descending monomial order; free variables resolve to zero.
    let p_monos: Vec<Monomial> = {
        let mut v = Vec::new();
        for total in (0..=p_deg).rev() {
            for dx in (0..=total).rev() {
                v.push(Monomial::new(dx, total - dx));
            }
        }
        v
    };
    let n_unknowns = pairs.len() + p_monos.len();

    // Per-basis-monomial images: D[ν] − ν·(D[Q]/Q) = quot·Q + rem.
    let mut quots: Vec<Poly> = Vec::with_capacity(p_monos.len());
    let mut rems: Vec<Poly> = Vec::with_capacity(p_monos.len());
    for nu in &p_monos {
        let basis = Poly::monomial(nu.deg_x, nu.deg_y, num_traits::One::one());
        let image = &vf.apply_d(&basis) - &(&basis * g_of_q);
        let (quot, rem) = divide_with_remainder(&image, q);
        quots.push(quot);
        rems.push(rem);
    }

    let mut row_monos: Vec<Monomial> = Vec::new();
    for r in &rems {
        row_monos.extend(r.terms().map(|(m, _)| *m));
    }
    for qt in &quots {
        row_monos.extend(qt.terms().map(|(m, _)| *m));
    }
    for p in pairs {
        row_monos.extend(p.cofactor.terms().map(|(m, _)| *m));
    }
    row_monos.extend(res.value.terms().map(|(m, _)| *m));
    row_monos.sort();
    row_monos.dedup();
    row_monos.reverse();

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    // Exact-division constraints: the remainder must vanish identically.
    for mu in &row_monos {
        if rems.iter().all(|r| r.coeff(mu).is_zero()) {
            continue;
        }
        let mut row = vec![Rational::zero(); n_unknowns];
        for (j, r) in rems.iter().enumerate() {
            row[pairs.len() + j] = r.coeff(mu);
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    // Log-derivative identity: Σ c_i·g_i + Σ P_ν·quot_ν = residual.
    for mu in &row_monos {
        let mut row = vec![Rational::zero(); n_unknowns];
        for (i, p) in pairs.iter().enumerate() {
            row[i] = p.cofactor.coeff(mu);
        }
        for (j, qt) in quots.iter().enumerate() {
            row[pairs.len() + j] = qt.coeff(mu);
        }
        if row.iter().all(Zero::is_zero) && res.value.coeff(mu).is_zero() {
            continue;
        }
        rows.push(row);
        rhs.push(res.value.coeff(mu));
    }

    match linalg::solve(&rows, &rhs, n_unknowns) {
        Solution::Inconsistent => None,
        Solution::Solved { values, .. } => {
            let exponents = &values[..pairs.len()];
            let p_poly = Poly::from_terms(
                p_monos
                    .iter()
                    .zip(&values[pairs.len()..])
                    .map(|(m, c)| (*m, c.clone())),
            );
            let factors: Vec<(Poly, Rational)> = pairs
                .iter()
                .zip(exponents)
                .filter(|(_, c)| !c.is_zero())
                .map(|(p, c)| (p.poly.clone(), c.clone()))
                .collect();
            let r0 = normalize_r0(RationalFunction::new(p_poly, q.clone()));
            if r0.is_zero() && factors.is_empty() {
                // Nothing achieved; with a nonzero residual this cannot
                // satisfy the identity, so keep searching.
                return None;
            }
            Some(IntegratingFactor { r0, factors })
        }
    }
}

/// Remove the additive constant of `r0` (the factor `R` is only defined up
/// to a multiplicative constant).
fn normalize_r0(r0: RationalFunction) -> RationalFunction {
    let den_at_origin = r0.den().coeff(&Monomial::ONE);
    if den_at_origin.is_zero() {
        return r0;
    }
    let kappa = r0.num().coeff(&Monomial::ONE) / den_at_origin;
    if kappa.is_zero() {
        return r0;
    }
    let num = r0.num() - &r0.den().scale(&kappa);
    RationalFunction::new(num, r0.den().clone())
}

/// Single-divisor multivariate division under the graded-lex order:
/// `dividend = quot·divisor + rem`, with no remainder term divisible by the
/// divisor's leading monomial.
fn divide_with_remainder(dividend: &Poly, divisor: &Poly) -> (Poly, Poly) {
    assert!(!divisor.is_zero());
    let (dm, dc) = {
        let (m, c) = divisor.leading().unwrap();
        (*m, c.clone())
    };
    let mut work = dividend.clone();
    let mut quot = Poly::zero();
    let mut rem = Poly::zero();
    while let Some((wm, wc)) = work.leading() {
        match wm.div(&dm) {
            Some(qm) => {
                let qc = wc / &dc;
                work = &work - &divisor.mul_monomial(&qm, &qc);
                quot = &quot + &Poly::monomial(qm.deg_x, qm.deg_y, qc);
            }
            None => {
                let (m, c) = (*wm, wc.clone());
                work = &work - &Poly::monomial(m.deg_x, m.deg_y, c.clone());
                rem = &rem + &Poly::monomial(m.deg_x, m.deg_y, c);
            }
        }
    }
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::darboux::find_darboux;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn radical_field() -> VectorField {
        VectorField::new(p("3*x^2*y^2 + x^3 + 1"), p("4*x^3*y + 4*y"))
    }

    fn riccati_field() -> VectorField {
        VectorField::new(p("y^2 + x*y + x - 1"), Poly::one())
    }

    #[test]
    fn residual_examples() {
        assert_eq!(residual(&radical_field()).value, p("-18*x^2*y"));
        assert_eq!(residual(&riccati_field()).value, p("-x - 2*y"));
        assert_eq!(
            residual(&VectorField::new(Poly::one(), Poly::one())).value,
            Poly::zero()
        );
    }

    #[test]
    fn elementary_radical_field() {
        let vf = radical_field();
        let pairs = find_darboux(&vf, 3);
        let r = solve_elementary(&vf, &pairs).unwrap();
        assert!(r.r0.is_zero());
        assert_eq!(
            r.factors,
            vec![(p("x + 1"), rat(-3, 2)), (p("x^2 - x + 1"), rat(-3, 2))]
        );
        assert_eq!(r.log_derivative(&vf).unwrap(), residual(&vf).value);
    }

    #[test]
    fn elementary_misses_riccati_field() {
        let vf = riccati_field();
        let pairs = find_darboux(&vf, 3);
        assert!(solve_elementary(&vf, &pairs).is_none());
    }

    #[test]
    fn elementary_trivial_when_exact() {
        let vf = VectorField::new(p("x"), p("y"));
        let r = solve_elementary(&vf, &[]).unwrap();
        assert!(r.is_trivial());
    }

    #[test]
    fn denominator_enumeration_order() {
        let vf = riccati_field();
        let pairs = find_darboux(&vf, 1);
        let denoms = enumerate_denominators(&pairs, 2);
        assert_eq!(denoms[0], Poly::one());
        assert!(denoms.contains(&p("y + 1")));
        assert!(denoms.contains(&p("y^2 + 2*y + 1")));

        let vf = radical_field();
        let pairs = find_darboux(&vf, 2);
        let denoms = enumerate_denominators(&pairs, 1);
        assert_eq!(
            denoms,
            vec![Poly::one(), p("x + 1"), p("x^2 - x + 1"), p("x^3 + 1")]
        );
        assert_eq!(enumerate_denominators(&[], 5), vec![Poly::one()]);
    }

    #[test]
    fn liouvillian_riccati_field() {
        let vf = riccati_field();
        let pairs = find_darboux(&vf, 3);
        let r = solve_liouvillian(&vf, &pairs, 4, 2).unwrap();
        assert_eq!(r.r0.num(), &p("1/2*x^2 - 2*x"));
        assert!(r.r0.is_polynomial());
        assert_eq!(r.factors, vec![(p("y + 1"), rat(-2, 1))]);
        assert_eq!(r.log_derivative(&vf).unwrap(), residual(&vf).value);
    }

    #[test]
    fn liouvillian_reproduces_elementary_answer() {
        let vf = radical_field();
        let pairs = find_darboux(&vf, 3);
        let r = solve_liouvillian(&vf, &pairs, 4, 2).unwrap();
        assert!(r.r0.is_zero());
        assert_eq!(
            r.factors,
            vec![(p("x + 1"), rat(-3, 2)), (p("x^2 - x + 1"), rat(-3, 2))]
        );
        let elem = solve_elementary(&vf, &pairs).unwrap();
        assert_eq!(
            r.log_derivative(&vf).unwrap(),
            elem.log_derivative(&vf).unwrap()
        );
    }

    #[test]
    fn liouvillian_trivial_when_exact() {
        let vf = VectorField::new(p("x"), p("y"));
        let r = solve_liouvillian(&vf, &[], 4, 2).unwrap();
        assert!(r.is_trivial());
    }

    #[test]
    fn liouvillian_exhausts_denominators_when_bounds_too_small() {
        // With the numerator degree capped at zero the Riccati field has no
        // solution for any candidate denominator: the exactness rows for
        // Q = y+1 and (y+1)^2 are assembled and rejected.
        let vf = riccati_field();
        let pairs = find_darboux(&vf, 3);
        assert!(solve_liouvillian(&vf, &pairs, 0, 2).is_none());
        assert!(solve_liouvillian(&vf, &pairs, 1, 2).is_none());
    }

    #[test]
    fn theorem_division_invariant_holds() {
        let vf = riccati_field();
        let pairs = find_darboux(&vf, 3);
        let r = solve_liouvillian(&vf, &pairs, 4, 2).unwrap();
        assert!(d_of_rational(&vf, &r.r0).is_some());
    }

    #[test]
    fn division_with_remainder_splits() {
        let a = &(&p("x^2 + y") * &p("y + 1")) + &p("x - 5");
        let (quot, rem) = divide_with_remainder(&a, &p("y + 1"));
        assert_eq!(&(&quot * &p("y + 1")) + &rem, a);
        // No remainder monomial is divisible by the leading monomial y.
        assert!(rem.terms().all(|(m, _)| m.deg_y == 0));
    }
}
