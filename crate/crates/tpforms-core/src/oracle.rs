//! Exhaustive exact searches over algebraic integers: enumerating
//! totally positive elements under a bound, element decompositions and
//! their orbits under the Galois group, and decompositions of
//! quadratic forms into sums of totally positive semidefinite pieces.
//!
//! Every search works the same way: per-embedding rational bounds are
//! pulled back through the inverse of the embedding matrix to a finite
//! box of integral-basis coordinates, the box is swept, and each
//! candidate is kept or discarded by exact sign tests. No floating
//! point is involved anywhere, so a "no decomposition found" answer is
//! a proof (relative to the correctness of the bounds, which are outer
//! enclosures by construction).
//!
//! Searches are bounded by a [`SearchBudget`]; exceeding it is an
//! error, never a silently truncated answer.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{rat, rat_ceil, rat_floor, Int, Rat};
use crate::qform::{
    definiteness, form_is_zero, form_sub, Definiteness, NumberField, QuadForm,
};

/// Limits for exhaustive searches. `max_box_volume` bounds the size of
/// any single coordinate box before it is swept; `max_candidates`
/// bounds the total number of candidate vectors examined by one
/// top-level call (across all nested boxes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_box_volume: u128,
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_box_volume: 50_000_000,
            max_candidates: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// A coordinate box exceeded `max_box_volume`.
    BoxTooLarge { volume: u128, limit: u128 },
    /// The running candidate count exceeded `max_candidates`.
    TooManyCandidates { limit: u64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BoxTooLarge { volume, limit } => {
                write!(f, "search box of {volume} points exceeds the budget of {limit}")
            }
            OracleError::TooManyCandidates { limit } => {
                write!(f, "search examined more than {limit} candidates")
            }
        }
    }
}

/// Running candidate counter shared by the nested loops of one search.
struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn new(budget: &SearchBudget) -> Counter {
        Counter { used: 0, limit: budget.max_candidates }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.used = self.used.saturating_add(1);
        if self.used > self.limit {
            Err(OracleError::TooManyCandidates { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Integer coordinate ranges covering all integral elements whose
/// embedding values lie in the given per-embedding closed intervals.
///
/// The ranges are an outer hull: every integral element satisfying the
/// bounds has coordinates inside them (the converse need not hold; the
/// sweep re-checks each candidate exactly).
pub fn coordinate_box<F: NumberField>(
    field: &F,
    bounds: &[(Rat, Rat)],
) -> Vec<(Int, Int)> {
    let deg = field.degree();
    assert_eq!(bounds.len(), deg);
    let rows = field.inverse_embedding_rows(0);
    let mut ranges = Vec::with_capacity(deg);
    for row in rows.iter() {
        let mut acc = crate::exactnum::Interval::zero();
        for (k, cell) in row.iter().enumerate() {
            let seg = crate::exactnum::Interval::new(bounds[k].0.clone(), bounds[k].1.clone());
            acc = acc.add(&cell.mul(&seg));
        }
        ranges.push((rat_ceil(&acc.lo), rat_floor(&acc.hi)));
    }
    ranges
}

fn box_volume(ranges: &[(Int, Int)]) -> u128 {
    let mut vol: u128 = 1;
    for (lo, hi) in ranges {
        if hi < lo {
            return 0;
        }
        let span = hi - lo + Int::one();
        match span.to_u128() {
            Some(s) => vol = vol.saturating_mul(s),
            None => return u128::MAX,
        }
    }
    vol
}

fn check_volume(ranges: &[(Int, Int)], budget: &SearchBudget) -> Result<(), OracleError> {
    let vol = box_volume(ranges);
    if vol > budget.max_box_volume {
        Err(OracleError::BoxTooLarge { volume: vol, limit: budget.max_box_volume })
    } else {
        Ok(())
    }
}

/// Odometer over all integer vectors in a product of closed ranges.
struct BoxIter {
    ranges: Vec<(Int, Int)>,
    cur: Vec<Int>,
    done: bool,
}

impl BoxIter {
    fn new(ranges: Vec<(Int, Int)>) -> BoxIter {
        let empty = ranges.iter().any(|(lo, hi)| hi < lo);
        let cur = ranges.iter().map(|(lo, _)| lo.clone()).collect();
        BoxIter { ranges, cur, done: empty }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<Int>;

    fn next(&mut self) -> Option<Vec<Int>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = self.ranges.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.ranges[i].1 {
                self.cur[i] += 1;
                for j in (i + 1)..self.ranges.len() {
                    self.cur[j] = self.ranges[j].0.clone();
                }
                break;
            }
        }
        Some(out)
    }
}

fn upper_endpoint<F: NumberField>(field: &F, a: &F::Elem, emb: usize) -> Rat {
    field.embed_enclosure(a, emb, 0).hi
}

fn lower_endpoint<F: NumberField>(field: &F, a: &F::Elem, emb: usize) -> Rat {
    field.embed_enclosure(a, emb, 0).lo
}

/// Rational upper bound for `sqrt(x)`, exact at perfect squares of
/// rationals with square denominator; `x` must be nonnegative.
fn sqrt_upper(x: &Rat) -> Rat {
    assert!(!x.is_negative(), "sqrt bound of a negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    let p = x.numer().clone();
    let q = x.denom().clone();
    let root = (&p * &q).sqrt();
    if &root * &root == &p * &q {
        Rat::new(root, q)
    } else {
        Rat::new(root + Int::one(), q)
    }
}

/// All totally positive integral elements strictly below `alpha` at
/// every embedding (equivalently: totally positive `beta` with
/// `alpha - beta` totally positive). Sorted by coordinates.
pub fn tp_elements_below<F: NumberField>(
    field: &F,
    alpha: &F::Elem,
    budget: &SearchBudget,
) -> Result<Vec<F::Elem>, OracleError> {
    let mut counter = Counter::new(budget);
    tp_below_inner(field, alpha, budget, &mut counter)
}

fn tp_below_inner<F: NumberField>(
    field: &F,
    alpha: &F::Elem,
    budget: &SearchBudget,
    counter: &mut Counter,
) -> Result<Vec<F::Elem>, OracleError> {
    let deg = field.degree();
    let bounds: Vec<(Rat, Rat)> = (0..deg)
        .map(|k| (Rat::zero(), upper_endpoint(field, alpha, k)))
        .collect();
    if bounds.iter().any(|(lo, hi)| hi < lo) {
        return Ok(Vec::new());
    }
    let ranges = coordinate_box(field, &bounds);
    check_volume(&ranges, budget)?;
    let mut out = Vec::new();
    for m in BoxIter::new(ranges) {
        counter.tick()?;
        let beta = field.from_integral_coords(&m);
        if !field.is_totally_positive(&beta) {
            continue;
        }
        let rest = field.sub(alpha, &beta);
        if field.is_totally_positive(&rest) {
            out.push(beta);
        }
    }
    out.sort();
    Ok(out)
}

/// Totally nonnegative integral elements `beta` with `alpha - beta`
/// totally nonnegative, including `0` and `alpha` themselves.
fn tp_elements_upto<F: NumberField>(
    field: &F,
    alpha: &F::Elem,
    budget: &SearchBudget,
    counter: &mut Counter,
) -> Result<Vec<F::Elem>, OracleError> {
    let deg = field.degree();
    let bounds: Vec<(Rat, Rat)> = (0..deg)
        .map(|k| (Rat::zero(), upper_endpoint(field, alpha, k)))
        .collect();
    if bounds.iter().any(|(lo, hi)| hi < lo) {
        return Ok(Vec::new());
    }
    let ranges = coordinate_box(field, &bounds);
    check_volume(&ranges, budget)?;
    let mut out = Vec::new();
    for m in BoxIter::new(ranges) {
        counter.tick()?;
        let beta = field.from_integral_coords(&m);
        if !field.is_totally_nonneg(&beta) {
            continue;
        }
        let rest = field.sub(alpha, &beta);
        if field.is_totally_nonneg(&rest) {
            out.push(beta);
        }
    }
    out.sort();
    Ok(out)
}

/// All decompositions of `alpha` into an unordered pair of totally
/// positive integral summands, returned as pairs `(beta, gamma)` with
/// `beta <= gamma` in coordinate order.
pub fn decompositions<F: NumberField>(
    field: &F,
    alpha: &F::Elem,
    budget: &SearchBudget,
) -> Result<Vec<(F::Elem, F::Elem)>, OracleError> {
    let below = tp_elements_below(field, alpha, budget)?;
    let mut out = Vec::new();
    for beta in below {
        let gamma = field.sub(alpha, &beta);
        if field.integral_coords(&gamma).is_none() {
            continue;
        }
        if beta <= gamma {
            out.push((beta, gamma));
        }
    }
    Ok(out)
}

/// Orbit representatives of decomposition pairs under the Galois
/// group: two pairs are identified when some field automorphism maps
/// one unordered pair onto the other. Each representative is the
/// coordinate-least pair of its orbit; the result is sorted.
pub fn embedding_classes<F: NumberField>(
    field: &F,
    pairs: &[(F::Elem, F::Elem)],
) -> Vec<(F::Elem, F::Elem)> {
    let mut reps: Vec<(F::Elem, F::Elem)> = Vec::new();
    for (beta, gamma) in pairs {
        let bs = field.automorphism_images(beta);
        let gs = field.automorphism_images(gamma);
        let key = bs
            .iter()
            .zip(gs.iter())
            .map(|(b, g)| {
                if b <= g {
                    (b.clone(), g.clone())
                } else {
                    (g.clone(), b.clone())
                }
            })
            .min()
            .expect("at least the identity automorphism");
        if !reps.contains(&key) {
            reps.push(key);
        }
    }
    reps.sort();
    reps
}

/// `alpha` is totally positive, integral, and admits no decomposition
/// into two totally positive integral summands.
pub fn is_indecomposable<F: NumberField>(
    field: &F,
    alpha: &F::Elem,
    budget: &SearchBudget,
) -> Result<bool, OracleError> {
    if !field.is_totally_positive(alpha) || field.integral_coords(alpha).is_none() {
        return Ok(false);
    }
    Ok(decompositions(field, alpha, budget)?.is_empty())
}

/// Search for a decomposition of `form` into two nonzero totally
/// positive semidefinite forms of the same rank. Returns the first
/// witness in a fixed deterministic order, or `None` when the
/// exhaustive sweep proves none exists.
///
/// With `classical_only` set, both pieces must be classical (their
/// Gram matrices integral); otherwise the pieces only need integral
/// coefficients. Ranks 1 to 3 are supported.
pub fn decompose_form<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    classical_only: bool,
    budget: &SearchBudget,
) -> Result<Option<(QuadForm<F::Elem>, QuadForm<F::Elem>)>, OracleError> {
    decompose_form_filtered(field, form, classical_only, budget, |_, _| true)
}

/// Like [`decompose_form`], but only accepts splittings satisfying
/// `accept`. The sweep continues past rejected witnesses, so `None`
/// proves no accepted splitting exists — e.g. with a membership
/// predicate this decides decomposability over a subring.
pub fn decompose_form_filtered<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    classical_only: bool,
    budget: &SearchBudget,
    accept: impl Fn(&QuadForm<F::Elem>, &QuadForm<F::Elem>) -> bool,
) -> Result<Option<(QuadForm<F::Elem>, QuadForm<F::Elem>)>, OracleError> {
    let n = form.n();
    if classical_only && !crate::qform::is_classical(field, form) {
        // Two classical summands always add up to a classical form.
        return Ok(None);
    }
    let mut counter = Counter::new(budget);
    // Candidate diagonal entries for the first summand.
    let mut diag_choices: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    for i in 0..n {
        diag_choices.push(tp_elements_upto(field, form.coeff(i, i), budget, &mut counter)?);
    }
    if diag_choices.iter().any(|c| c.is_empty()) {
        // Some diagonal entry admits no totally nonnegative part at
        // all, so no semidefinite summand can exist.
        return Ok(None);
    }
    let mut diag_index = vec![0usize; n];
    loop {
        let diag: Vec<&F::Elem> = (0..n).map(|i| &diag_choices[i][diag_index[i]]).collect();
        counter.tick()?;
        if let Some(found) =
            try_offdiag(field, form, &diag, classical_only, budget, &mut counter, &accept)?
        {
            return Ok(Some(found));
        }
        // Advance the odometer over diagonal choices.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if diag_index[i] + 1 < diag_choices[i].len() {
                diag_index[i] += 1;
                for j in (i + 1)..n {
                    diag_index[j] = 0;
                }
                break;
            }
        }
    }
}

/// Two-sided per-embedding bounds for an off-diagonal cross
/// coefficient `c` of the first summand: positive semidefiniteness of
/// both summands forces `|σ(c)| <= 2·sqrt(σ(d_i)σ(d_j))` and
/// `|σ(a_ij - c)| <= 2·sqrt(σ(a_ii - d_i)·σ(a_jj - d_j))`.
#[allow(clippy::too_many_arguments)]
fn cross_bounds<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    diag: &[&F::Elem],
    i: usize,
    j: usize,
) -> Option<Vec<(Rat, Rat)>> {
    let deg = field.degree();
    let a_ij = form.coeff(i, j);
    let rem_i = field.sub(form.coeff(i, i), diag[i]);
    let rem_j = field.sub(form.coeff(j, j), diag[j]);
    let mut bounds = Vec::with_capacity(deg);
    for k in 0..deg {
        let di = upper_endpoint(field, diag[i], k).max(Rat::zero());
        let dj = upper_endpoint(field, diag[j], k).max(Rat::zero());
        let ri = upper_endpoint(field, &rem_i, k).max(Rat::zero());
        let rj = upper_endpoint(field, &rem_j, k).max(Rat::zero());
        let u1 = sqrt_upper(&(di * dj)) * Rat::from_integer(Int::from(2));
        let u2 = sqrt_upper(&(ri * rj)) * Rat::from_integer(Int::from(2));
        let lo = (-u1.clone()).max(lower_endpoint(field, a_ij, k) - u2.clone());
        let hi = u1.min(upper_endpoint(field, a_ij, k) + u2);
        if lo > hi {
            return None;
        }
        bounds.push((lo, hi));
    }
    Some(bounds)
}

#[allow(clippy::too_many_arguments)]
fn try_offdiag<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    diag: &[&F::Elem],
    classical_only: bool,
    budget: &SearchBudget,
    counter: &mut Counter,
    accept: &impl Fn(&QuadForm<F::Elem>, &QuadForm<F::Elem>) -> bool,
) -> Result<Option<(QuadForm<F::Elem>, QuadForm<F::Elem>)>, OracleError> {
    let n = form.n();
    let off_positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    // For a classical summand the Gram half-entry c/2 must itself be
    // integral, so the enumerated integral variable is c/2 rather
    // than c.
    let step = if classical_only { rat(2) } else { rat(1) };
    // Candidate lists for each cross coefficient.
    let mut cross_choices: Vec<Vec<F::Elem>> = Vec::with_capacity(off_positions.len());
    for &(i, j) in &off_positions {
        let bounds = match cross_bounds(field, form, diag, i, j) {
            Some(b) => b,
            None => return Ok(None),
        };
        // Bounds on the enumerated variable t, where c = step·t.
        let t_bounds: Vec<(Rat, Rat)> =
            bounds.into_iter().map(|(lo, hi)| (lo / &step, hi / &step)).collect();
        let ranges = coordinate_box(field, &t_bounds);
        check_volume(&ranges, budget)?;
        let quarter = crate::exactnum::rat_frac(1, 4);
        let d_prod = field.mul(diag[i], diag[j]);
        let rem_i = field.sub(form.coeff(i, i), diag[i]);
        let rem_j = field.sub(form.coeff(j, j), diag[j]);
        let rem_prod = field.mul(&rem_i, &rem_j);
        let mut cands = Vec::new();
        for m in BoxIter::new(ranges) {
            counter.tick()?;
            let c = field.scale(&field.from_integral_coords(&m), &step);
            // Keep only candidates whose own 2x2 minor and whose
            // complement's 2x2 minor are both totally nonnegative;
            // anything else cannot appear in a semidefinite summand.
            let own = field.sub(&d_prod, &field.scale(&field.mul(&c, &c), &quarter));
            if !field.is_totally_nonneg(&own) {
                continue;
            }
            let rest = field.sub(form.coeff(i, j), &c);
            let other = field.sub(&rem_prod, &field.scale(&field.mul(&rest, &rest), &quarter));
            if !field.is_totally_nonneg(&other) {
                continue;
            }
            cands.push(c);
        }
        cands.sort();
        cross_choices.push(cands);
    }
    if cross_choices.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut index = vec![0usize; off_positions.len()];
    loop {
        counter.tick()?;
        // Assemble the candidate first summand.
        let mut coeffs: Vec<F::Elem> = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                if i == j {
                    coeffs.push(diag[i].clone());
                } else {
                    let pos = off_positions.iter().position(|&p| p == (i, j)).unwrap();
                    coeffs.push(cross_choices[pos][index[pos]].clone());
                }
            }
        }
        let q1 = QuadForm::new(n, coeffs);
        let q2 = form_sub(field, form, &q1);
        if !form_is_zero(field, &q1)
            && !form_is_zero(field, &q2)
            && definiteness(field, &q1) != Definiteness::NotSemidefinite
            && definiteness(field, &q2) != Definiteness::NotSemidefinite
            && accept(&q1, &q2)
        {
            return Ok(Some((q1, q2)));
        }
        // Advance the odometer over cross-coefficient choices.
        let mut i = off_positions.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if index[i] + 1 < cross_choices[i].len() {
                index[i] += 1;
                for j in (i + 1)..off_positions.len() {
                    index[j] = 0;
                }
                break;
            }
        }
    }
}

/// A form is additively indecomposable when it is integral, totally
/// positive definite, and [`decompose_form`] proves no splitting
/// exists (into classical pieces when `classical_only` is set).
pub fn form_is_indecomposable<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    classical_only: bool,
    budget: &SearchBudget,
) -> Result<bool, OracleError> {
    if !crate::qform::is_integral_form(field, form) {
        return Ok(false);
    }
    if definiteness(field, form) != Definiteness::Definite {
        return Ok(false);
    }
    Ok(decompose_form(field, form, classical_only, budget)?.is_none())
}
