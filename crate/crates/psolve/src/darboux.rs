//! Darboux polynomials of the field operator `D = N ∂x + M ∂y`.
//!
//! A Darboux polynomial is an `f` with `D[f] = g·f` for a polynomial
//! cofactor `g`; every factor of an integrating factor must be one. The
//! search works degree by degree: candidate top homogeneous parts of `f`
//! come from the factors of `E = y·N_top − x·M_top` (every admissible top
//! form divides `E` when `E ≠ 0`), and for each candidate the remaining
//! coefficient equations of `D[f] − g·f = 0` split into total-degree blocks
//! that are linear over Q in the unknowns scheduled at each block. Blocks
//! that do not determine their unknowns introduce parameters (at most two
//! live at a time); parameters are pinned by rational root extraction,
//! resultant elimination or, for genuinely free families, a small sample
//! set. Every emitted pair is certified by exact division afterwards, so
//! the parameter handling can only miss candidates, never fabricate them.

use crate::arith::{gcd, int, Monomial, Poly, Rational, Var};
use crate::linalg::bareiss_determinant_poly;
use crate::parse::OdeSpec;
use crate::univar::{self, UniPoly};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// The plane polynomial field `(M, N)` of `dy/dx = M/N`, with common factors
/// of `M` and `N` removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    m: Poly,
    n: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CofactorError {
    #[error("constant polynomials are not Darboux candidates")]
    ConstantInput,
    #[error("polynomial does not divide its image under D")]
    NotDarboux,
}

impl VectorField {
    /// Build a field, cancelling any non-constant common factor.
    /// Panics when both components are zero.
    pub fn new(m: Poly, n: Poly) -> Self {
        assert!(!(m.is_zero() && n.is_zero()), "both field components are zero");
        if m.is_zero() || n.is_zero() {
            return VectorField { m, n };
        }
        let g = gcd(&m, &n);
        if g.total_degree().unwrap_or(0) >= 1 {
            VectorField {
                m: m.exact_div(&g).expect("gcd divides"),
                n: n.exact_div(&g).expect("gcd divides"),
            }
        } else {
            VectorField { m, n }
        }
    }

    pub fn from_ode(ode: &OdeSpec) -> Self {
        // Already reduced at parse time.
        VectorField { m: ode.m.clone(), n: ode.n.clone() }
    }

    pub fn m(&self) -> &Poly {
        &self.m
    }

    pub fn n(&self) -> &Poly {
        &self.n
    }

    /// `D[p] = N·∂x p + M·∂y p`.
    pub fn apply_d(&self, p: &Poly) -> Poly {
        &(&self.n * &p.partial(Var::X)) + &(&self.m * &p.partial(Var::Y))
    }

    /// Cofactor `g = D[f]/f` when `f` divides `D[f]` exactly.
    pub fn cofactor(&self, f: &Poly) -> Result<Poly, CofactorError> {
        if f.is_constant() {
            return Err(CofactorError::ConstantInput);
        }
        self.apply_d(f).exact_div(f).ok_or(CofactorError::NotDarboux)
    }

    /// `max(deg M, deg N)`; the cofactor degree bound is one less.
    pub fn max_degree(&self) -> u32 {
        self.m
            .total_degree()
            .unwrap_or(0)
            .max(self.n.total_degree().unwrap_or(0))
    }
}

/// A certified Darboux polynomial with its cofactor: `D[poly] = cofactor·poly`
/// holds exactly and `poly` is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxPair {
    pub poly: Poly,
    pub cofactor: Poly,
}

impl DarbouxPair {
    fn sort_key(&self) -> (u32, Poly) {
        (self.poly.total_degree().unwrap_or(0), self.poly.clone())
    }
}

/// Search for all irreducible Darboux polynomials of total degree up to
/// `degree_bound` reachable by the block cascade. Every returned pair is
/// certified by exact division; results are deduplicated under monic
/// normalization and sorted by (degree, canonical order).
pub fn find_darboux(vf: &VectorField, degree_bound: u32) -> Vec<DarbouxPair> {
    let mut found: Vec<DarbouxPair> = Vec::new();
    for d in 1..=degree_bound {
        let mut candidates: Vec<Poly> = Vec::new();
        for top in top_candidates(vf, d) {
            candidates.extend(run_cascade(vf, d, &top));
        }
        candidates.sort();
        candidates.dedup();
        for f in candidates {
            absorb_candidate(vf, f, &mut found);
        }
    }
    found.sort_by_key(DarbouxPair::sort_key);
    found
}

/// Exhaustive oracle: try every polynomial whose coefficients are drawn
/// from `coeff_set` over the monomials of total degree at most
/// `degree_bound`, keep those with a polynomial cofactor, and reduce the
/// hits to irreducible members exactly like [`find_darboux`]. Exponential
/// in the support size; intended for tests at degree bounds up to 3.
pub fn brute_force_darboux(
    vf: &VectorField,
    degree_bound: u32,
    coeff_set: &[Rational],
) -> Vec<DarbouxPair> {
    let monos = monomials_up_to(degree_bound);
    let mut seen: std::collections::HashSet<Poly> = std::collections::HashSet::new();
    let mut hits: Vec<Poly> = Vec::new();
    let mut assignment = vec![0usize; monos.len()];
    let values: Vec<Rational> = coeff_set.to_vec();
    if values.is_empty() {
        return Vec::new();
    }
    loop {
        let poly = Poly::from_terms(
            monos
                .iter()
                .zip(&assignment)
                .map(|(m, &i)| (*m, values[i].clone())),
        );
        if !poly.is_constant() {
            let monic = poly.monic();
            if seen.insert(monic.clone()) && vf.cofactor(&monic).is_ok() {
                hits.push(monic);
            }
        }
        // Advance the mixed-radix assignment counter.
        let mut pos = 0;
        loop {
            assignment[pos] += 1;
            if assignment[pos] < values.len() {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
            if pos == monos.len() {
                break;
            }
        }
        if pos == monos.len() {
            break;
        }
    }
    hits.sort_by_key(|p| (p.total_degree().unwrap_or(0), p.clone()));
    let mut found = Vec::new();
    for f in hits {
        absorb_candidate(vf, f, &mut found);
    }
    found.sort_by_key(DarbouxPair::sort_key);
    found
}

/// Monic-normalize, split off already-found lower-degree factors, certify,
/// and insert if new.
fn absorb_candidate(vf: &VectorField, f: Poly, found: &mut Vec<DarbouxPair>) {
    let mut f = f.monic();
    if f.is_constant() {
        return;
    }
    loop {
        let deg = f.total_degree().unwrap_or(0);
        let divisor = found
            .iter()
            .filter(|p| p.poly.total_degree().unwrap_or(0) < deg)
            .find_map(|p| f.exact_div(&p.poly));
        match divisor {
            Some(q) => {
                f = q.monic();
                if f.is_constant() {
                    return;
                }
            }
            None => break,
        }
    }
    if found.iter().any(|p| p.poly == f) {
        return;
    }
    if let Ok(cof) = vf.cofactor(&f) {
        debug_assert!(
            cof.total_degree().unwrap_or(0) < vf.max_degree().max(1),
            "cofactor degree exceeds field bound"
        );
        found.push(DarbouxPair { poly: f, cofactor: cof });
    }
}

fn monomials_up_to(bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for total in 0..=bound {
        for dx in 0..=total {
            out.push(Monomial::new(dx, total - dx));
        }
    }
    out.sort();
    out
}

fn monomials_of_degree(total: u32) -> Vec<Monomial> {
    // Descending graded-lex: x^k first.
    (0..=total)
        .rev()
        .map(|dx| Monomial::new(dx, total - dx))
        .collect()
}

// ---------------------------------------------------------------------------
// Candidate top forms.
// ---------------------------------------------------------------------------

/// Initialization of the degree-`d` homogeneous part of `f`.
struct TopCandidate {
    /// Value per degree-`d` monomial; `None` marks a free parameter.
    coeffs: Vec<(Monomial, Option<Rational>)>,
    /// The top homogeneous part of the cofactor, degree `m* − 1`.
    g_top: Poly,
}

/// Candidate monic top forms for degree `d`.
///
/// When `E = y·N_top − x·M_top` is nonzero every admissible top form is a
/// product of irreducible factors of `E`, so the products of total degree
/// `d` (with arbitrary multiplicities) enumerate the candidates. When `E`
/// vanishes the top part of `D` is a multiple of the Euler operator and any
/// top form works: for fields of degree one the same-degree coefficients
/// ride along as parameters, otherwise the search is restricted to monomial
/// top forms.
fn top_candidates(vf: &VectorField, d: u32) -> Vec<TopCandidate> {
    let m_star = vf.max_degree();
    let m_top = vf.m.homogeneous_part(m_star);
    let n_top = vf.n.homogeneous_part(m_star);
    let e = &(&Poly::var_y() * &n_top) - &(&Poly::var_x() * &m_top);
    let degree_d_monos = monomials_of_degree(d);

    if e.is_zero() {
        // Radial top: N_top = x·s, M_top = y·s.
        let s = n_top
            .exact_div(&Poly::var_x())
            .expect("radial top field has x | N_top");
        debug_assert_eq!(m_top.exact_div(&Poly::var_y()), Some(s.clone()));
        let g_top = s.scale(&int(d as i64));
        let mut out = Vec::new();
        for lead_idx in 0..degree_d_monos.len() {
            let trailing = degree_d_monos.len() - lead_idx - 1;
            let parametric = m_star == 1 && trailing <= MAX_PARAMS;
            let coeffs = degree_d_monos
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let v = if i == lead_idx {
                        Some(Rational::one())
                    } else if i < lead_idx {
                        Some(Rational::zero())
                    } else if parametric {
                        None
                    } else {
                        Some(Rational::zero())
                    };
                    (*m, v)
                })
                .collect();
            out.push(TopCandidate { coeffs, g_top: g_top.clone() });
        }
        return out;
    }

    let factors = homogeneous_irreducible_factors(&e);
    let d_top = |p: &Poly| -> Poly {
        &(&n_top * &p.partial(Var::X)) + &(&m_top * &p.partial(Var::Y))
    };
    let mut tops: Vec<Poly> = Vec::new();
    enumerate_products(&factors, 0, d, Poly::one(), &mut tops);
    tops.sort();
    tops.dedup();
    tops.into_iter()
        .filter_map(|t| {
            let g_top = d_top(&t).exact_div(&t)?;
            let coeffs = degree_d_monos
                .iter()
                .map(|m| (*m, Some(t.coeff(m))))
                .collect();
            Some(TopCandidate { coeffs, g_top })
        })
        .collect()
}

fn enumerate_products(factors: &[Poly], idx: usize, remaining: u32, acc: Poly, out: &mut Vec<Poly>) {
    if remaining == 0 {
        out.push(acc);
        return;
    }
    if idx == factors.len() {
        return;
    }
    let deg = factors[idx].total_degree().unwrap_or(0);
    let max_mult = remaining / deg;
    let mut power = Poly::one();
    for mult in 0..=max_mult {
        if mult > 0 {
            power = &power * &factors[idx];
        }
        enumerate_products(factors, idx + 1, remaining - mult * deg, &acc * &power, out);
    }
}

/// Monic irreducible homogeneous factors of a nonzero homogeneous bivariate
/// polynomial (multiplicities dropped).
fn homogeneous_irreducible_factors(e: &Poly) -> Vec<Poly> {
    let min_x = e.terms().map(|(m, _)| m.deg_x).min().unwrap();
    let min_y = e.terms().map(|(m, _)| m.deg_y).min().unwrap();
    let mut factors = Vec::new();
    if min_x > 0 {
        factors.push(Poly::var_x());
    }
    if min_y > 0 {
        factors.push(Poly::var_y());
    }
    let w = Poly::from_terms(
        e.terms()
            .map(|(m, c)| (Monomial::new(m.deg_x - min_x, m.deg_y - min_y), c.clone())),
    );
    let total = w.total_degree().unwrap();
    if total == 0 {
        return factors;
    }
    debug_assert!(
        w.terms().all(|(m, _)| m.total_degree() == total),
        "factor candidate source must be homogeneous"
    );
    // Dehomogenize with t = x/y and factor over Q.
    let uni: UniPoly = (0..=total)
        .map(|i| w.coeff(&Monomial::new(i, total - i)))
        .collect();
    for f in univar::distinct_irreducible_factors(&uni) {
        let k = (f.len() - 1) as u32;
        let homog = Poly::from_terms(f.iter().enumerate().map(|(j, c)| {
            (
                Monomial::new(j as u32, k - j as u32),
                Rational::from_integer(c.clone()),
            )
        }));
        factors.push(homog.monic());
    }
    factors.sort();
    factors.dedup();
    factors
}

// ---------------------------------------------------------------------------
// The block cascade.
// ---------------------------------------------------------------------------

/// At most this many undetermined parameters may be live at once; the
/// parameter polynomials reuse the two-variable [`Poly`] arithmetic.
const MAX_PARAMS: usize = 2;

const PARAM_VARS: [Var; 2] = [Var::X, Var::Y];

#[derive(Clone)]
enum Coef {
    Known(Poly),
    Slot,
}

impl Coef {
    fn known(&self) -> Option<&Poly> {
        match self {
            Coef::Known(p) => Some(p),
            Coef::Slot => None,
        }
    }
}

#[derive(Clone)]
struct CascadeState {
    f: Vec<Coef>,
    g: Vec<Coef>,
    live: [bool; 2],
    constraints: Vec<Poly>,
    /// Right-hand sides of the block currently being solved; kept on the
    /// state so constraint substitutions reach them before the block's
    /// unknowns are committed.
    pending_rhs: Vec<Poly>,
}

impl CascadeState {
    fn alloc_param(&mut self) -> Option<Var> {
        for (i, v) in PARAM_VARS.iter().enumerate() {
            if !self.live[i] {
                self.live[i] = true;
                return Some(*v);
            }
        }
        None
    }

    fn substitute(&mut self, var: Var, value: &Rational) {
        for c in self.f.iter_mut().chain(self.g.iter_mut()) {
            if let Coef::Known(p) = c {
                *p = p.substitute(var, value);
            }
        }
        for c in &mut self.constraints {
            *c = c.substitute(var, value);
        }
        for c in &mut self.pending_rhs {
            *c = c.substitute(var, value);
        }
        let idx = PARAM_VARS.iter().position(|v| *v == var).unwrap();
        self.live[idx] = false;
    }
}

/// Row-reduced block data shared by all constraint branches of one state.
struct PendingBlock {
    columns: Vec<SlotRef>,
    matrix: Vec<Vec<Rational>>,
    pivot_of_col: Vec<Option<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SlotRef {
    F(usize),
    G(usize),
}

/// Run the cascade for one candidate top form; returns uncertified
/// candidate polynomials.
fn run_cascade(vf: &VectorField, d: u32, top: &TopCandidate) -> Vec<Poly> {
    let m_star = vf.max_degree();
    let f_monos: Vec<Monomial> = (0..=d)
        .rev()
        .flat_map(monomials_of_degree)
        .collect();
    let g_monos: Vec<Monomial> = if m_star == 0 {
        Vec::new()
    } else {
        (0..m_star).rev().flat_map(monomials_of_degree).collect()
    };

    // D applied to each f-basis monomial, precomputed.
    let d_images: Vec<Poly> = f_monos
        .iter()
        .map(|m| vf.apply_d(&Poly::monomial(m.deg_x, m.deg_y, Rational::one())))
        .collect();

    let mut init = CascadeState {
        f: Vec::with_capacity(f_monos.len()),
        g: Vec::with_capacity(g_monos.len()),
        live: [false; 2],
        constraints: Vec::new(),
        pending_rhs: Vec::new(),
    };
    for mono in &f_monos {
        if mono.total_degree() == d {
            let (_, v) = top
                .coeffs
                .iter()
                .find(|(m, _)| m == mono)
                .expect("top covers all degree-d monomials");
            match v {
                Some(c) => init.f.push(Coef::Known(Poly::constant(c.clone()))),
                None => {
                    let Some(var) = init.alloc_param() else {
                        return Vec::new();
                    };
                    init.f.push(Coef::Known(Poly::var(var)));
                }
            }
        } else {
            init.f.push(Coef::Slot);
        }
    }
    for mono in &g_monos {
        if mono.total_degree() == m_star - 1 {
            init.g.push(Coef::Known(Poly::constant(top.g_top.coeff(mono))));
        } else {
            init.g.push(Coef::Slot);
        }
    }

    // m* = 0 forces a zero cofactor, which is only consistent when the top
    // block D_top[T] vanishes; the block equations below verify that.

    let start_block = d + m_star;
    let mut states = vec![init];
    for k in (0..start_block).rev() {
        let mut next = Vec::new();
        for state in states {
            let Some((assembled, pending)) =
                assemble_block(k, d, m_star, &f_monos, &g_monos, &d_images, state)
            else {
                continue;
            };
            for branch in resolve_constraints(assembled) {
                if let Some(committed) = commit_block(branch, &pending) {
                    next.push(committed);
                }
            }
        }
        states = next;
        if states.is_empty() {
            return Vec::new();
        }
    }

    let mut out = Vec::new();
    for state in states {
        for assignment in finalize(&state) {
            let x0 = assignment.get(&0).cloned().unwrap_or_else(Rational::zero);
            let y0 = assignment.get(&1).cloned().unwrap_or_else(Rational::zero);
            let f = Poly::from_terms(f_monos.iter().zip(&state.f).map(|(m, c)| {
                let value = c.known().expect("all slots solved").eval(&x0, &y0);
                (*m, value)
            }));
            if f.is_constant() {
                continue;
            }
            let mut ok = true;
            for c in &state.constraints {
                if !c.eval(&x0, &y0).is_zero() {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(f.monic());
            }
        }
    }
    out
}

/// Assemble the linear block of total degree `k` and row-reduce it over Q.
/// Constraints from rank-deficient rows go onto the state; the reduced
/// matrix is returned for [`commit_block`]. `None` when the block is
/// contradictory.
fn assemble_block(
    k: u32,
    d: u32,
    m_star: u32,
    f_monos: &[Monomial],
    g_monos: &[Monomial],
    d_images: &[Poly],
    mut state: CascadeState,
) -> Option<(CascadeState, PendingBlock)> {
    // Unknowns scheduled for this block.
    let mut columns: Vec<SlotRef> = Vec::new();
    for (i, mono) in f_monos.iter().enumerate() {
        if matches!(state.f[i], Coef::Slot) {
            let sched = (mono.total_degree() + m_star).max(1) - 1;
            if sched == k {
                columns.push(SlotRef::F(i));
            }
        }
    }
    for (i, mono) in g_monos.iter().enumerate() {
        if matches!(state.g[i], Coef::Slot) && mono.total_degree() + d == k {
            columns.push(SlotRef::G(i));
        }
    }

    let rows_monos = monomials_of_degree(k);
    let mut matrix: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Poly> = Vec::new();
    for mu in &rows_monos {
        let mut row = vec![Rational::zero(); columns.len()];
        let mut known = Poly::zero();
        // D[f] contribution.
        for (i, image) in d_images.iter().enumerate() {
            let c = image.coeff(mu);
            if c.is_zero() {
                continue;
            }
            match &state.f[i] {
                Coef::Known(w) => known = &known + &w.scale(&c),
                Coef::Slot => {
                    let col = columns.iter().position(|s| *s == SlotRef::F(i))?;
                    row[col] += c;
                }
            }
        }
        // −g·f contribution.
        for (gi, gm) in g_monos.iter().enumerate() {
            let Some(fm_target) = mu.div(gm) else { continue };
            for (fi, fm) in f_monos.iter().enumerate() {
                if *fm != fm_target {
                    continue;
                }
                match (&state.g[gi], &state.f[fi]) {
                    (Coef::Known(a), Coef::Known(b)) => known = &known - &(a * b),
                    (Coef::Known(a), Coef::Slot) => {
                        let ca = constant_value(a)?;
                        let col = columns.iter().position(|s| *s == SlotRef::F(fi))?;
                        row[col] -= ca;
                    }
                    (Coef::Slot, Coef::Known(b)) => {
                        let cb = constant_value(b)?;
                        let col = columns.iter().position(|s| *s == SlotRef::G(gi))?;
                        row[col] -= cb;
                    }
                    (Coef::Slot, Coef::Slot) => {
                        debug_assert!(false, "two unscheduled slots met in one product");
                        return None;
                    }
                }
            }
        }
        matrix.push(row);
        rhs.push(-known);
    }

    // Reduced row echelon form over Q, carrying parameter polynomials on
    // the right-hand side.
    let ncols = columns.len();
    let nrows = matrix.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pr);
        rhs.swap(rank, pr);
        let inv = Rational::one() / matrix[rank][col].clone();
        for v in matrix[rank].iter_mut() {
            *v *= &inv;
        }
        rhs[rank] = rhs[rank].scale(&inv);
        let pivot_row = matrix[rank].clone();
        let pivot_rhs = rhs[rank].clone();
        for r in 0..nrows {
            if r == rank || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            for (entry, pivot) in matrix[r].iter_mut().zip(&pivot_row) {
                *entry -= &factor * pivot;
            }
            rhs[r] = &rhs[r] - &pivot_rhs.scale(&factor);
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    for r in rank..nrows {
        debug_assert!(matrix[r].iter().all(Zero::is_zero));
        if rhs[r].is_zero() {
            continue;
        }
        if rhs[r].is_constant() {
            return None;
        }
        state.constraints.push(rhs[r].clone());
    }

    state.pending_rhs = rhs;
    Some((state, PendingBlock { columns, matrix, pivot_of_col }))
}

/// Allocate parameters for the block's free columns and commit the solved
/// unknowns to the state. `None` when the parameter budget is exhausted.
fn commit_block(mut state: CascadeState, pending: &PendingBlock) -> Option<CascadeState> {
    let ncols = pending.columns.len();
    let mut values: Vec<Option<Poly>> = vec![None; ncols];
    for (col, pivot) in pending.pivot_of_col.iter().enumerate() {
        if pivot.is_none() {
            let var = state.alloc_param()?;
            values[col] = Some(Poly::var(var));
        }
    }
    for (col, pivot) in pending.pivot_of_col.iter().enumerate() {
        let Some(r) = pivot else { continue };
        let mut value = state.pending_rhs[*r].clone();
        for (j, free_value) in values.iter().enumerate() {
            if j == col {
                continue;
            }
            if let Some(fv) = free_value {
                if !pending.matrix[*r][j].is_zero() {
                    value = &value - &fv.scale(&pending.matrix[*r][j]);
                }
            }
        }
        values[col] = Some(value);
    }
    for (col, slot) in pending.columns.iter().enumerate() {
        let value = values[col].take().expect("every column resolved");
        match slot {
            SlotRef::F(i) => state.f[*i] = Coef::Known(value),
            SlotRef::G(i) => state.g[*i] = Coef::Known(value),
        }
    }
    state.pending_rhs = Vec::new();
    Some(state)
}

fn constant_value(p: &Poly) -> Option<Rational> {
    if p.is_constant() {
        Some(p.coeff(&Monomial::ONE))
    } else {
        debug_assert!(false, "slot multiplied by a non-constant value");
        None
    }
}

/// Branch on constraints that mention a single parameter: each rational
/// root spawns a state with the parameter substituted and its slot freed.
fn resolve_constraints(state: CascadeState) -> Vec<CascadeState> {
    let mut queue = vec![state];
    let mut settled = Vec::new();
    while let Some(mut s) = queue.pop() {
        s.constraints.retain(|c| !c.is_zero());
        if s.constraints.iter().any(Poly::is_constant) {
            continue;
        }
        let univariate = s.constraints.iter().enumerate().find_map(|(i, c)| {
            if c.degree_in(Var::Y) == Some(0) {
                Some((i, Var::X))
            } else if c.degree_in(Var::X) == Some(0) {
                Some((i, Var::Y))
            } else {
                None
            }
        });
        match univariate {
            None => settled.push(s),
            Some((idx, var)) => {
                let c = s.constraints.swap_remove(idx);
                let uni = to_unipoly(&c, var);
                for root in univar::rational_roots(&uni) {
                    let mut branch = s.clone();
                    branch.substitute(var, &root);
                    queue.push(branch);
                }
            }
        }
    }
    settled
}

fn to_unipoly(p: &Poly, v: Var) -> UniPoly {
    let deg = p.degree_in(v).unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        let (i, other) = match v {
            Var::X => (m.deg_x, m.deg_y),
            Var::Y => (m.deg_y, m.deg_x),
        };
        debug_assert_eq!(other, 0);
        out[i as usize] = c.clone();
    }
    out
}

const SAMPLE_VALUES: [i64; 5] = [0, 1, -1, 2, -2];
const SLICE_VALUES: [i64; 5] = [0, 1, -1, 2, -2];

/// Solve the remaining constraint system for the live parameters. Free
/// directions are sampled; every assignment is re-checked against the
/// constraints at instantiation time.
fn finalize(state: &CascadeState) -> Vec<BTreeMap<usize, Rational>> {
    let live: Vec<usize> = (0..2).filter(|&i| state.live[i]).collect();
    match live.len() {
        0 => vec![BTreeMap::new()],
        1 => {
            // Univariate constraints were consumed eagerly, so the family
            // is unconstrained: sample representatives.
            SAMPLE_VALUES
                .iter()
                .map(|&v| BTreeMap::from([(live[0], int(v))]))
                .collect()
        }
        _ => finalize_two_params(state),
    }
}

fn finalize_two_params(state: &CascadeState) -> Vec<BTreeMap<usize, Rational>> {
    let (v0, v1) = (PARAM_VARS[0], PARAM_VARS[1]);
    let cs = &state.constraints;
    if cs.is_empty() {
        let mut out = Vec::new();
        for &a in &SAMPLE_VALUES {
            for &b in &SAMPLE_VALUES {
                out.push(BTreeMap::from([(0, int(a)), (1, int(b))]));
            }
        }
        return out;
    }
    let mut assignments = Vec::new();
    let mut slice_fallback = cs.len() == 1;
    if cs.len() >= 2 {
        // Eliminate the second parameter by resultants.
        let mut eliminants: Vec<UniPoly> = Vec::new();
        for c in cs.iter().skip(1) {
            let r = resultant(&cs[0], c, v1);
            if !r.is_zero() {
                eliminants.push(to_unipoly(&r, v0));
            }
        }
        if eliminants.is_empty() {
            slice_fallback = true;
        } else {
            let mut g = eliminants[0].clone();
            for e in &eliminants[1..] {
                g = univar::gcd(&g, e);
            }
            for r0 in univar::rational_roots(&g) {
                let reduced: Vec<Poly> =
                    cs.iter().map(|c| c.substitute(v0, &r0)).collect();
                assignments.extend(solve_slice(&reduced, r0));
            }
            if univar::degree(&g).is_none() {
                // All eliminants collapsed: fall back to sampling.
                slice_fallback = true;
            }
        }
    }
    if slice_fallback {
        for &a in &SLICE_VALUES {
            let r0 = int(a);
            let reduced: Vec<Poly> = cs.iter().map(|c| c.substitute(v0, &r0)).collect();
            assignments.extend(solve_slice(&reduced, r0));
        }
    }
    assignments.sort();
    assignments.dedup();
    assignments
}

/// Given constraints with the first parameter fixed to `r0`, find the
/// matching values of the second parameter.
fn solve_slice(reduced: &[Poly], r0: Rational) -> Vec<BTreeMap<usize, Rational>> {
    let mut out = Vec::new();
    if reduced.iter().any(|c| c.is_constant() && !c.is_zero()) {
        return out;
    }
    let nonzero: Vec<UniPoly> = reduced
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| to_unipoly(c, PARAM_VARS[1]))
        .collect();
    if nonzero.is_empty() {
        for &b in &SAMPLE_VALUES {
            out.push(BTreeMap::from([(0, r0.clone()), (1, int(b))]));
        }
        return out;
    }
    let mut g = nonzero[0].clone();
    for e in &nonzero[1..] {
        g = univar::gcd(&g, e);
    }
    for r1 in univar::rational_roots(&g) {
        out.push(BTreeMap::from([(0, r0.clone()), (1, r1)]));
    }
    out
}

/// Resultant of `a` and `b` eliminating `var`, via the Sylvester matrix and
/// fraction-free determinant.
fn resultant(a: &Poly, b: &Poly, var: Var) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let ac = a.coeffs_in(var);
    let bc = b.coeffs_in(var);
    let m = ac.len() - 1;
    let n = bc.len() - 1;
    if m == 0 && n == 0 {
        return Poly::one();
    }
    if m == 0 {
        return ac[0].pow(n as u32);
    }
    if n == 0 {
        return bc[0].pow(m as u32);
    }
    let size = m + n;
    let mut s = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in ac.iter().enumerate() {
            s[i][i + (m - j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in bc.iter().enumerate() {
            s[n + i][i + (n - j)] = c.clone();
        }
    }
    bareiss_determinant_poly(s)
}
