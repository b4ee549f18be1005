//! Univariate helpers used by the Darboux search: exact rational root
//! extraction and small-degree factorization over the integers
//! (interpolation / Kronecker style). Degrees here stay in the single
//! digits, so the exponential divisor enumeration is affordable.

use crate::arith::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient list, index = power. Trailing zeros trimmed.
pub type UniPoly = Vec<Rational>;

pub fn trim(p: &mut UniPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &UniPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn eval(p: &UniPoly, t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

pub fn derivative(p: &UniPoly) -> UniPoly {
    let mut out: UniPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

fn rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let db = degree(b).expect("nonzero divisor");
    let lead = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    while degree(&r).is_some_and(|dr| dr >= db) {
        let dr = r.len() - 1;
        let q = &r[dr] / &lead;
        for i in 0..=db {
            let v = &r[dr - db + i] - &(&q * &b[i]);
            r[dr - db + i] = v;
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd of two univariate polynomials over Q.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r = rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    monic(&r0)
}

pub fn monic(p: &UniPoly) -> UniPoly {
    match p.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = Rational::one() / lc.clone();
            p.iter().map(|c| c * &inv).collect()
        }
    }
}

/// Scale to a primitive integer polynomial with positive leading
/// coefficient.
pub fn to_primitive_int(p: &UniPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p.iter().map(|c| c.numer() * &lcm / c.denom()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if !g.is_zero() {
        for v in &mut ints {
            *v = &*v / &g;
        }
    }
    if ints.last().is_some_and(Signed::is_negative) {
        for v in &mut ints {
            *v = -v.clone();
        }
    }
    ints
}

/// Positive divisors of `n`, by trial division. Bounded effort: beyond the
/// trial budget only the trivial divisors are reported, which can only make
/// later candidate searches miss exotic cases, never report wrong ones.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    let budget = BigInt::from(100_000u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            large.push(&n / &d);
        }
        d += 1;
        if d > budget {
            small.push(n.clone());
            break;
        }
    }
    large.reverse();
    small.extend(large);
    small.dedup();
    small
}

/// All rational roots of `p`, exactly.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    let mut q = p.clone();
    trim(&mut q);
    let mut roots = Vec::new();
    if q.is_empty() {
        return roots; // identically zero: caller decides what "any value" means
    }
    while q.len() > 1 && q[0].is_zero() {
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
        q.remove(0);
    }
    if q.len() <= 1 {
        return roots;
    }
    let ints = to_primitive_int(&q);
    let lead = ints.last().unwrap().clone();
    let trail = ints[0].clone();
    for p_div in divisors(&trail) {
        for q_div in divisors(&lead) {
            for sign in [1i32, -1] {
                let cand = Rational::new(&p_div * BigInt::from(sign), q_div.clone());
                if eval(&q, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn int_poly_eval(p: &[BigInt], t: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

fn int_poly_divides(p: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    let mut r: Vec<BigInt> = p.to_vec();
    let mut q = vec![BigInt::zero(); p.len().saturating_sub(dd)];
    while r.len() > dd && r.iter().any(|c| !c.is_zero()) {
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.len() <= dd {
            break;
        }
        let dr = r.len() - 1;
        let (quot, rem) = r[dr].div_rem(&d[dd]);
        if !rem.is_zero() {
            return None;
        }
        q[dr - dd] = quot.clone();
        for i in 0..=dd {
            let v = &r[dr - dd + i] - &quot * &d[i];
            r[dr - dd + i] = v;
        }
    }
    if r.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

/// Distinct irreducible factors over Q of a squarefree primitive integer
/// polynomial, found by interpolation through divisor tuples of integer
/// evaluations. Complete at the small degrees this crate uses.
fn factor_squarefree(p: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let deg = p.len() - 1;
    if deg <= 1 {
        return vec![p];
    }
    for k in 1..=deg / 2 {
        // k+1 evaluation points with nonzero values.
        let mut points: Vec<BigInt> = Vec::new();
        let mut candidates = 0i64;
        while points.len() < k + 1 {
            let t = BigInt::from(if candidates % 2 == 0 {
                candidates / 2
            } else {
                -(candidates / 2 + 1)
            });
            candidates += 1;
            let v = int_poly_eval(&p, &t);
            if v.is_zero() {
                // t is an integer root: split off the linear factor now.
                let lin = vec![-t, BigInt::one()];
                let rest = int_poly_divides(&p, &lin).expect("root divides");
                let mut out = vec![lin];
                out.extend(factor_squarefree(rest));
                return out;
            }
            points.push(t);
        }
        let value_divisors: Vec<Vec<BigInt>> = points
            .iter()
            .map(|t| {
                let v = int_poly_eval(&p, t);
                let mut ds = divisors(&v);
                let negs: Vec<BigInt> = ds.iter().map(|d| -d.clone()).collect();
                ds.extend(negs);
                ds
            })
            .collect();
        // First coordinate restricted to positive divisors: candidate and
        // its negation define the same factor.
        let mut idx = vec![0usize; k + 1];
        let first_len = value_divisors[0].len() / 2;
        loop {
            let tuple: Vec<BigInt> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| value_divisors[i][j].clone())
                .collect();
            if let Some(cand) = interpolate_integer(&points, &tuple, k) {
                if cand.len() == k + 1 {
                    if let Some(rest) = int_poly_divides(&p, &cand) {
                        let mut out = factor_squarefree(cand);
                        out.extend(factor_squarefree(rest));
                        return out;
                    }
                }
            }
            // advance tuple index
            let mut pos = 0;
            loop {
                idx[pos] += 1;
                let limit = if pos == 0 { first_len } else { value_divisors[pos].len() };
                if idx[pos] < limit {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
                if pos > k {
                    break;
                }
            }
            if pos > k {
                break;
            }
        }
    }
    vec![p]
}

/// Distinct irreducible factors of `p` over Q, each returned as a primitive
/// integer polynomial with positive leading coefficient. Multiplicities are
/// not reported.
pub fn distinct_irreducible_factors(p: &UniPoly) -> Vec<Vec<BigInt>> {
    let mut q = p.clone();
    trim(&mut q);
    assert!(!q.is_empty(), "factoring the zero polynomial");
    if q.len() == 1 {
        return Vec::new();
    }
    // Squarefree part: p / gcd(p, p').
    let g = gcd(&q, &derivative(&q));
    let sqfree = if degree(&g) == Some(0) {
        q
    } else {
        let gi = to_primitive_int(&g);
        let qi = to_primitive_int(&q);
        let quot = int_poly_divides(&qi, &gi)
            .map(|v| v.iter().map(|c| Rational::from_integer(c.clone())).collect())
            .unwrap_or(q);
        quot
    };
    let ints = to_primitive_int(&sqfree);
    let mut out = factor_squarefree(ints);
    for f in &mut out {
        if f.last().is_some_and(Signed::is_negative) {
            for c in f.iter_mut() {
                *c = -c.clone();
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn interpolate_integer(points: &[BigInt], values: &[BigInt], deg: usize) -> Option<Vec<BigInt>> {
    // Lagrange interpolation over Q; accept only integer results.
    let n = points.len();
    let mut acc = vec![Rational::zero(); deg + 1];
    for i in 0..n {
        // Basis polynomial for point i.
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            // basis *= (t - points[j])
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Rational::from_integer(points[j].clone());
            }
            basis = next;
            denom *= Rational::from_integer(&points[i] - &points[j]);
        }
        let scale = Rational::from_integer(values[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            if k < acc.len() {
                acc[k] += c * &scale;
            } else if !(c * &scale).is_zero() {
                return None;
            }
        }
    }
    trim(&mut acc);
    if acc.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(acc.iter().map(|c| c.numer().clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn up(coeffs: &[i64]) -> UniPoly {
        coeffs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn rational_roots_basic() {
        // (t - 1)(2t + 3) = 2t^2 + t - 3
        let roots = rational_roots(&up(&[-3, 1, 2]));
        assert_eq!(roots, vec![rat(-3, 2), int(1)]);
        // t^2 + 1 has none
        assert!(rational_roots(&up(&[1, 0, 1])).is_empty());
        // t^3: root 0
        assert_eq!(rational_roots(&up(&[0, 0, 0, 1])), vec![int(0)]);
    }

    #[test]
    fn factors_products_of_irreducibles() {
        // (t^2 + 1)(t - 2) = t^3 - 2t^2 + t - 2
        let fs = distinct_irreducible_factors(&up(&[-2, 1, -2, 1]));
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&vec![BigInt::from(-2), BigInt::from(1)]));
        assert!(fs.contains(&vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]));
    }

    #[test]
    fn factor_handles_repeated_factors() {
        // (t + 1)^2 (t^2 - t + 1) = squarefree part (t+1)(t^2-t+1) = t^3 + 1
        let p = {
            let a = up(&[1, 1]);
            let b = up(&[1, -1, 1]);
            // multiply (t+1)^2 * (t^2 - t + 1)
            let mut sq = vec![Rational::zero(); 3];
            for i in 0..2 {
                for j in 0..2 {
                    let v = &sq[i + j] + &a[i] * &a[j];
                    sq[i + j] = v;
                }
            }
            let mut out = vec![Rational::zero(); 5];
            for i in 0..3 {
                for j in 0..3 {
                    let v = &out[i + j] + &sq[i] * &b[j];
                    out[i + j] = v;
                }
            }
            out
        };
        let fs = distinct_irreducible_factors(&p);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&vec![BigInt::from(1), BigInt::from(1)]));
        assert!(fs.contains(&vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]));
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // t^4 + t + 1 is irreducible over Q
        let fs = distinct_irreducible_factors(&up(&[1, 1, 0, 0, 1]));
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].len(), 5);
    }
}
