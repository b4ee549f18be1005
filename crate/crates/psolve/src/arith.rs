//! Sparse bivariate polynomial and rational-function arithmetic over exact
//! rationals.
//!
//! Every other module builds on [`Poly`]: a canonical map from [`Monomial`]
//! to nonzero rational coefficients, ordered graded-lexicographically with
//! `x > y`. Equal polynomials always have identical term maps, so `Eq`,
//! `Ord` and `Hash` are structural and cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational coefficient: always reduced, denominator positive,
/// zero represented as `0/1`.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Convenience constructor for small integers.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse a rational from `"a"`, `"a/b"` or a plain decimal like `"0.125"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let abs = Rational::new(w.abs() * &scale + f, scale);
        return Some(if sign < 0 { -abs } else { abs });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// One of the two variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// A power product `x^deg_x · y^deg_y`.
///
/// The ordering is graded lexicographic with `x > y`: compare total degree
/// first, then `deg_x`. This is the single total order used for canonical
/// forms, leading terms and printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub deg_x: u32,
    pub deg_y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg_x: 0, deg_y: 0 };

    pub fn new(deg_x: u32, deg_y: u32) -> Self {
        Monomial { deg_x, deg_y }
    }

    pub fn total_degree(&self) -> u32 {
        self.deg_x + self.deg_y
    }

    pub fn is_one(&self) -> bool {
        self.deg_x == 0 && self.deg_y == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.deg_x + other.deg_x, self.deg_y + other.deg_y)
    }

    /// Exact monomial quotient, `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.deg_x <= self.deg_x && other.deg_y <= self.deg_y {
            Some(Monomial::new(self.deg_x - other.deg_x, self.deg_y - other.deg_y))
        } else {
            None
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.deg_x.cmp(&other.deg_x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse bivariate polynomial with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero; the zero polynomial has an
/// empty term map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Poly::monomial(1, 0, Rational::one()),
            Var::Y => Poly::monomial(0, 1, Rational::one()),
        }
    }

    pub fn var_x() -> Self {
        Poly::var(Var::X)
    }

    pub fn var_y() -> Self {
        Poly::var(Var::Y)
    }

    pub fn monomial(deg_x: u32, deg_y: u32, coeff: Rational) -> Self {
        let mut p = Poly::zero();
        if !coeff.is_zero() {
            p.terms.insert(Monomial::new(deg_x, deg_y), coeff);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monomial::ONE).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::X => m.deg_x,
                Var::Y => m.deg_y,
            })
            .max()
    }

    /// The homogeneous part of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            match v {
                Var::X if m.deg_x > 0 => {
                    out.add_term(Monomial::new(m.deg_x - 1, m.deg_y), c * int(m.deg_x as i64));
                }
                Var::Y if m.deg_y > 0 => {
                    out.add_term(Monomial::new(m.deg_x, m.deg_y - 1), c * int(m.deg_y as i64));
                }
                _ => {}
            }
        }
        out
    }

    /// Exact substitution value at `(x0, y0)`.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.deg_x {
                t *= x0;
            }
            for _ in 0..m.deg_y {
                t *= y0;
            }
            acc += t;
        }
        acc
    }

    /// Floating-point evaluation, for the numeric cross-checks only.
    pub fn eval_f64(&self, x0: f64, y0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                c.to_f64().unwrap_or(f64::NAN) * x0.powi(m.deg_x as i32) * y0.powi(m.deg_y as i32)
            })
            .sum()
    }

    /// Substitute a rational value for one variable, leaving the other.
    pub fn substitute(&self, v: Var, value: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (deg, rest) = match v {
                Var::X => (m.deg_x, Monomial::new(0, m.deg_y)),
                Var::Y => (m.deg_y, Monomial::new(m.deg_x, 0)),
            };
            let mut t = c.clone();
            for _ in 0..deg {
                t *= value;
            }
            out.add_term(rest, t);
        }
        out
    }

    /// Quotient when `d` divides `self` exactly; `None` otherwise.
    ///
    /// Panics if `d` is the zero polynomial.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (*m, c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Leading coefficient scaled to `1`.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.clone();
                self.scale(&(Rational::one() / inv))
            }
        }
    }

    /// Integer-primitive representative: integer coefficients with content 1
    /// and positive leading coefficient.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        let mut scale = Rational::new(den_lcm, num_gcd);
        if self.leading().unwrap().1 * &scale < Rational::zero() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Collect the coefficients of powers of `v` as polynomials in the
    /// other variable; index `i` holds the coefficient of `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let deg = match self.degree_in(v) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![Poly::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            let (i, rest) = match v {
                Var::X => (m.deg_x, Monomial::new(0, m.deg_y)),
                Var::Y => (m.deg_y, Monomial::new(m.deg_x, 0)),
            };
            out[i as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Rebuild from `coeffs_in`-style coefficient lists.
    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let m = match v {
                Var::X => Monomial::new(i as u32, 0),
                Var::Y => Monomial::new(0, i as u32),
            };
            for (km, kc) in c.terms() {
                out.add_term(km.mul(&m), kc.clone());
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (am, ac) in &self.terms {
            for (bm, bc) in &rhs.terms {
                out.add_term(am.mul(bm), ac * bc);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Ord for Poly {
    /// Canonical deterministic order: compare terms from the leading one
    /// downward; a longer tail of smaller terms compares greater.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((am, ac)), Some((bm, bc))) => {
                    let ord = am.cmp(bm).then_with(|| ac.cmp(bc));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: terms in descending monomial order, e.g.
    /// `3*x^2*y^2 + x^3 + 1` or `1/2*x^2 - 2*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                parts.push(mag.to_string());
            }
            match m.deg_x {
                0 => {}
                1 => parts.push("x".into()),
                k => parts.push(format!("x^{k}")),
            }
            match m.deg_y {
                0 => {}
                1 => parts.push("y".into()),
                k => parts.push(format!("y^{k}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Poly {
    type Err = crate::parse::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_poly(s)
    }
}

/// Greatest common divisor, normalized to leading coefficient 1.
///
/// Treats both inputs as univariate in `x` over rationals in `y`
/// (primitive-part Euclidean remainder sequence with content handled in
/// `y`). Panics when both inputs are zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert!(!(a.is_zero() && b.is_zero()), "gcd of two zero polynomials");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.degree_in(Var::X) == Some(0) && b.degree_in(Var::X) == Some(0) {
        return gcd_univariate_y(a, b).monic();
    }
    let (ca, pa) = content_and_primitive_x(a);
    let (cb, pb) = content_and_primitive_x(b);
    let content_gcd = gcd_univariate_y(&ca, &cb);
    let pp_gcd = primitive_prs_x(pa, pb);
    (&content_gcd * &pp_gcd).monic()
}

/// Euclid on polynomials in `y` alone (both inputs must be free of `x`).
fn gcd_univariate_y(a: &Poly, b: &Poly) -> Poly {
    let mut r0 = a.monic();
    let mut r1 = b.monic();
    while !r1.is_zero() {
        let r = rem_univariate_y(&r0, &r1);
        r0 = r1;
        r1 = if r.is_zero() { r } else { r.monic() };
    }
    r0
}

fn rem_univariate_y(a: &Poly, b: &Poly) -> Poly {
    let db = b.degree_in(Var::Y).unwrap_or(0);
    let (bm, bc) = {
        let (m, c) = b.leading().unwrap();
        (*m, c.clone())
    };
    debug_assert_eq!(bm.deg_y, db);
    let mut rem = a.clone();
    while let Some((rm, rc)) = rem.leading() {
        if rm.deg_y < db {
            break;
        }
        let qm = Monomial::new(0, rm.deg_y - db);
        let qc = rc / &bc;
        rem = &rem - &b.mul_monomial(&qm, &qc);
    }
    rem
}

/// Split into content (a polynomial in `y`) and the primitive part with
/// respect to `x`.
fn content_and_primitive_x(p: &Poly) -> (Poly, Poly) {
    let coeffs = p.coeffs_in(Var::X);
    let mut content = Poly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        content = if content.is_zero() {
            c.monic()
        } else {
            gcd_univariate_y(&content, c)
        };
        if content.is_one() {
            break;
        }
    }
    let prim = p.exact_div(&content).expect("content divides");
    (content, prim)
}

/// Primitive-part pseudo-remainder sequence in `x`.
fn primitive_prs_x(a: Poly, b: Poly) -> Poly {
    let (mut r0, mut r1) = if a.degree_in(Var::X) >= b.degree_in(Var::X) {
        (a, b)
    } else {
        (b, a)
    };
    while !r1.is_zero() {
        if r1.degree_in(Var::X) == Some(0) {
            // A nonzero remainder free of x: the primitive parts are coprime.
            return Poly::one();
        }
        let rem = pseudo_rem_x(&r0, &r1);
        r0 = r1;
        r1 = if rem.is_zero() {
            rem
        } else {
            content_and_primitive_x(&rem).1
        };
    }
    content_and_primitive_x(&r0).1
}

/// Pseudo-remainder of `a` by `b` in `x`: repeatedly scales by the leading
/// `x`-coefficient of `b` so each reduction step stays polynomial.
fn pseudo_rem_x(a: &Poly, b: &Poly) -> Poly {
    let db = b.degree_in(Var::X).expect("nonzero divisor");
    let bc = b.coeffs_in(Var::X)[db as usize].clone();
    let mut rem = a.clone();
    loop {
        let da = match rem.degree_in(Var::X) {
            None => return rem,
            Some(d) => d,
        };
        if da < db {
            return rem;
        }
        let rc = rem.coeffs_in(Var::X)[da as usize].clone();
        let shift = Poly::monomial(da - db, 0, Rational::one());
        rem = &(&rem * &bc) - &(&(&rc * &shift) * b);
        debug_assert!(rem.degree_in(Var::X).is_none_or(|d| d < da));
    }
}

/// Reduced quotient of two polynomials; houses `r0 = P/Q`.
///
/// Invariants: the denominator is nonzero, monic under the graded-lex
/// order, and coprime to the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduce `num/den` by their gcd and normalize the denominator to be
    /// monic. Panics when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lc = den.leading().unwrap().1.clone();
        let inv = Rational::one() / lc;
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn eval_f64(&self, x0: f64, y0: f64) -> f64 {
        self.num.eval_f64(x0, y0) / self.den.eval_f64(x0, y0)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `rf_reduce`: reduced rational function from a numerator/denominator pair.
pub fn rf_reduce(num: Poly, den: Poly) -> RationalFunction {
    RationalFunction::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let x = Monomial::new(1, 0);
        let y = Monomial::new(0, 1);
        let xy = Monomial::new(1, 1);
        let y2 = Monomial::new(0, 2);
        let x2 = Monomial::new(2, 0);
        assert!(x > y);
        assert!(x2 > xy && xy > y2);
        assert!(y2 > x, "degree dominates");
    }

    #[test]
    fn add_cancels_terms() {
        assert_eq!(&p("x + 1") + &p("x^2 - x + 1"), p("x^2 + 2"));
        let q = p("3*x^2*y^2 + x^3 + 1");
        assert_eq!(&q + &Poly::zero(), q);
        assert_eq!(&p("3*x^2*y^2 + x^3 + 1") + &p("-3*x^2*y^2"), p("x^3 + 1"));
    }

    #[test]
    fn mul_matches_expected_products() {
        assert_eq!(&p("x + 1") * &p("x^2 - x + 1"), p("x^3 + 1"));
        let q = p("3*x^2*y^2 + x^3 + 1");
        assert_eq!(&q * &Poly::one(), q);
        // (y+1)(y+x-1), expanded by hand
        assert_eq!(&p("y + 1") * &p("y + x - 1"), p("y^2 + x*y + x - 1"));
    }

    #[test]
    fn exact_div_roundtrips() {
        let q = p("x^3 + 1").exact_div(&p("x + 1")).unwrap();
        assert_eq!(q, p("x^2 - x + 1"));
        assert_eq!(&q * &p("x + 1"), p("x^3 + 1"));
        assert_eq!(p("x^3 + 1").exact_div(&p("y + 1")), None);
        let a = &p("12*x^2*y") * &p("x^3 + 1");
        assert_eq!(a.exact_div(&p("x^3 + 1")).unwrap(), p("12*x^2*y"));
    }

    #[test]
    #[should_panic(expected = "zero polynomial")]
    fn exact_div_by_zero_panics() {
        let _ = p("x").exact_div(&Poly::zero());
    }

    #[test]
    fn gcd_examples() {
        let g = gcd(&p("x^3 + 1"), &p("x + 1"));
        assert_eq!(g, p("x + 1"));
        assert!(g.divides(&p("x^3 + 1")));
        assert_eq!(gcd(&p("x^2 + x*y"), &Poly::one()), Poly::one());
        let a = &p("y + 1") * &p("y + 1");
        let b = &p("y + 1") * &p("x + 1");
        let g = gcd(&a, &b);
        assert_eq!(g, p("y + 1"));
        assert!(g.divides(&a) && g.divides(&b));
        // gcd with one zero argument
        assert_eq!(gcd(&Poly::zero(), &p("2*x + 2")), p("x + 1"));
    }

    #[test]
    fn gcd_mixed_variables() {
        let a = &p("x^2*y - y") * &p("x*y + 3");
        let b = &p("x^2*y - y") * &p("y^2 - 7*x");
        let g = gcd(&a, &b);
        assert!(g.divides(&a) && g.divides(&b));
        assert_eq!(g, p("x^2*y - y").monic());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("4*x^3*y + 4*y").partial(Var::X), p("12*x^2*y"));
        assert_eq!(p("3*x^2*y^2 + x^3 + 1").partial(Var::Y), p("6*x^2*y"));
        assert_eq!(p("7").partial(Var::X), Poly::zero());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("x^3 + 1").eval(&int(1), &int(0)), int(2));
        assert_eq!(p("y^2 + x*y + x - 1").eval(&int(0), &int(0)), int(-1));
        assert_eq!(Poly::zero().eval(&int(5), &int(-3)), int(0));
    }

    #[test]
    fn rf_reduce_examples() {
        let r = rf_reduce(p("x^3 + 1"), p("x + 1"));
        assert_eq!(r.num(), &p("x^2 - x + 1"));
        assert!(r.is_polynomial());
        let r = rf_reduce(p("x*y - 3"), Poly::one());
        assert_eq!(r.num(), &p("x*y - 3"));
        let r = rf_reduce(p("2*x"), p("2"));
        assert_eq!(r.num(), &p("x"));
        assert!(r.is_polynomial());
    }

    #[test]
    fn display_canonical_forms() {
        assert_eq!(p("3*x^2*y^2 + x^3 + 1").to_string(), "3*x^2*y^2 + x^3 + 1");
        assert_eq!(p("x^2 - x + 1").to_string(), "x^2 - x + 1");
        assert_eq!(p("-18*x^2*y").to_string(), "-18*x^2*y");
        assert_eq!(p("1/2*x^2 - 2*x").to_string(), "1/2*x^2 - 2*x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("x*y + y^2 + x - 1").to_string(), "x*y + y^2 + x - 1");
    }

    #[test]
    fn primitive_integer_representative() {
        let q = p("x + 1").scale(&rat(-3, 7));
        let prim = q.primitive_integer();
        assert_eq!(prim, p("x + 1"));
        assert_eq!(p("1/2*x^2 - 2*x").primitive_integer(), p("x^2 - 4*x"));
    }

    #[test]
    fn substitute_one_variable() {
        let q = p("x^2*y + 3*x - y");
        assert_eq!(q.substitute(Var::X, &int(2)), p("3*y + 6"));
        assert_eq!(q.substitute(Var::Y, &int(0)), p("3*x"));
    }
}
