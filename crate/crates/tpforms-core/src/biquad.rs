//! Real biquadratic fields `Q(sqrt(p), sqrt(q))`.
//!
//! A field is constructed from two distinct square-free integers `>= 2`.
//! Internally it is always put into a canonical presentation: among the
//! three quadratic radicands `{p, q, r}` (where `r = pq / gcd(p,q)^2`),
//! the constructor picks the ordered pair `(P, Q)` that matches one of
//! the congruence cases below, preferring the earliest case and then the
//! smallest `P`, `Q`. The integral basis depends on the case:
//!
//! | case | congruences                                | integral basis |
//! |------|--------------------------------------------|----------------|
//! | `C1` | `P ≡ 2, Q ≡ 3 (mod 4)`                     | `1, √P, √Q, (√P+√R)/2` |
//! | `C2` | `P ≡ 2, Q ≡ 1 (mod 4)`                     | `1, √P, (1+√Q)/2, (√P+√R)/2` |
//! | `C3` | `P ≡ 3, Q ≡ 1 (mod 4)`                     | `1, √P, (1+√Q)/2, (√P+√R)/2` |
//! | `C4a`| `P ≡ Q ≡ 1 (mod 4)`, `P/g ≡ Q/g ≡ 1 (mod 4)` | `1, (1+√P)/2, (1+√Q)/2, (1+√P)(1+√Q)/4` |
//! | `C4b`| `P ≡ Q ≡ 1 (mod 4)`, `P/g ≡ Q/g ≡ 3 (mod 4)` | `1, (1+√P)/2, (1+√Q)/2, (1-√P)(1+√Q)/4 + (√P+√R)/2`¹ |
//!
//! ¹ concretely the fourth basis vector in case `C4b` is
//! `(1 - √P + √Q + √R)/4`, and in case `C4a` it is `(1+√P+√Q+√R)/4`.
//!
//! Elements are stored as exact rational coordinates over
//! `(1, √P, √Q, √R)`. The four real embeddings flip the signs of `√P`
//! and `√Q` independently (the sign of `√R` is the product of the two),
//! and coincide with the Galois automorphisms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{
    int, invert_matrix, is_square_free, mat_vec, rat, sign_exact, Int, Interval, Rat, Sign,
    SqrtEnclosure,
};

/// Which integral-basis case the canonical presentation falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisCase {
    /// `P ≡ 2, Q ≡ 3 (mod 4)`.
    C1,
    /// `P ≡ 2, Q ≡ 1 (mod 4)`.
    C2,
    /// `P ≡ 3, Q ≡ 1 (mod 4)`.
    C3,
    /// `P ≡ Q ≡ 1 (mod 4)` with `P/g ≡ Q/g ≡ 1 (mod 4)`.
    C4a,
    /// `P ≡ Q ≡ 1 (mod 4)` with `P/g ≡ Q/g ≡ 3 (mod 4)`.
    C4b,
}

impl BasisCase {
    fn rank(self) -> u8 {
        match self {
            BasisCase::C1 => 1,
            BasisCase::C2 => 2,
            BasisCase::C3 => 3,
            BasisCase::C4a => 4,
            BasisCase::C4b => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BasisCase::C1 => "1",
            BasisCase::C2 => "2",
            BasisCase::C3 => "3",
            BasisCase::C4a => "4a",
            BasisCase::C4b => "4b",
        }
    }
}

/// Errors rejected by [`BiquadField::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiquadError {
    RadicandTooSmall(i64),
    RadicandNotSquareFree(i64),
    RadicandsEqual(i64),
    RadicandTooLarge(i64),
    /// No ordered pair of radicands matches a congruence case. This does
    /// not occur for valid inputs; it is kept as a defensive error.
    NoBasisCase { d1: i64, d2: i64 },
}

impl fmt::Display for BiquadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiquadError::RadicandTooSmall(d) => {
                write!(f, "radicand {d} is smaller than 2")
            }
            BiquadError::RadicandNotSquareFree(d) => {
                write!(f, "radicand {d} is not square-free")
            }
            BiquadError::RadicandsEqual(d) => {
                write!(f, "radicands are both {d}; the field would be quadratic")
            }
            BiquadError::RadicandTooLarge(d) => {
                write!(f, "radicand {d} is too large for this implementation")
            }
            BiquadError::NoBasisCase { d1, d2 } => {
                write!(f, "no integral-basis case applies to ({d1}, {d2})")
            }
        }
    }
}

/// Sign patterns of the four real embeddings on `(√P, √Q, √R)`.
/// Row `k` is embedding `k`; the `√R` sign is always the product of the
/// other two.
pub const EMBEDDING_SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [-1, 1, -1], [1, -1, -1], [-1, -1, 1]];

/// An element of a biquadratic field: exact rational coordinates
/// `(x, y, z, w)` over `(1, √P, √Q, √R)` of the owning field.
///
/// Elements do not carry a reference to their field; all arithmetic goes
/// through [`BiquadField`] methods, and coordinates are only meaningful
/// relative to the field they were created with.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BiquadElem {
    pub c: [Rat; 4],
}

impl BiquadElem {
    pub fn from_coords(c: [Rat; 4]) -> BiquadElem {
        BiquadElem { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    /// True when the element lies in `Q` (its last three coordinates vanish).
    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
struct RadCache {
    sp: SqrtEnclosure,
    sq: SqrtEnclosure,
    sr: SqrtEnclosure,
}

/// A real biquadratic field in canonical presentation.
#[derive(Clone, Debug)]
pub struct BiquadField {
    p: i64,
    q: i64,
    r: i64,
    g: i64,
    case: BasisCase,
    /// Columns of the integral basis in `(1, √P, √Q, √R)` coordinates.
    basis: [[Rat; 4]; 4],
    /// Inverse of the basis matrix (rows map coordinates to basis multiples).
    basis_inv: Vec<Vec<Rat>>,
    cache: RefCell<RadCache>,
}

impl PartialEq for BiquadField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q
    }
}

impl Eq for BiquadField {}

fn case_of(p: i64, q: i64) -> Option<BasisCase> {
    let g = p.gcd(&q);
    match (p % 4, q % 4) {
        (2, 3) => Some(BasisCase::C1),
        (2, 1) => Some(BasisCase::C2),
        (3, 1) => Some(BasisCase::C3),
        (1, 1) => {
            let (ps, qs) = ((p / g) % 4, (q / g) % 4);
            if ps == qs {
                Some(if ps == 1 { BasisCase::C4a } else { BasisCase::C4b })
            } else {
                None
            }
        }
        _ => None,
    }
}

fn basis_columns(case: BasisCase) -> [[Rat; 4]; 4] {
    let one = || Rat::one();
    let zero = || Rat::zero();
    let half = || Rat::new(Int::one(), int(2));
    let quarter = || Rat::new(Int::one(), int(4));
    let e0 = [one(), zero(), zero(), zero()];
    match case {
        BasisCase::C1 => [
            e0,
            [zero(), one(), zero(), zero()],
            [zero(), zero(), one(), zero()],
            [zero(), half(), zero(), half()],
        ],
        BasisCase::C2 | BasisCase::C3 => [
            e0,
            [zero(), one(), zero(), zero()],
            [half(), zero(), half(), zero()],
            [zero(), half(), zero(), half()],
        ],
        BasisCase::C4a => [
            e0,
            [half(), half(), zero(), zero()],
            [half(), zero(), half(), zero()],
            [quarter(), quarter(), quarter(), quarter()],
        ],
        BasisCase::C4b => [
            e0,
            [half(), half(), zero(), zero()],
            [half(), zero(), half(), zero()],
            [quarter(), -quarter(), quarter(), quarter()],
        ],
    }
}

impl BiquadField {
    /// Construct the field `Q(sqrt(d1), sqrt(d2))` in canonical
    /// presentation. Both radicands must be distinct square-free
    /// integers `>= 2`.
    pub fn new(d1: i64, d2: i64) -> Result<BiquadField, BiquadError> {
        for d in [d1, d2] {
            if d < 2 {
                return Err(BiquadError::RadicandTooSmall(d));
            }
            if d > 1_000_000 {
                return Err(BiquadError::RadicandTooLarge(d));
            }
            if !is_square_free(d) {
                return Err(BiquadError::RadicandNotSquareFree(d));
            }
        }
        if d1 == d2 {
            return Err(BiquadError::RadicandsEqual(d1));
        }
        let g0 = d1.gcd(&d2);
        let r0 = (d1 / g0) * (d2 / g0);
        let radicands = [d1, d2, r0];
        let mut best: Option<(u8, i64, i64, BasisCase)> = None;
        for &pp in &radicands {
            for &qq in &radicands {
                if pp == qq {
                    continue;
                }
                if let Some(case) = case_of(pp, qq) {
                    let key = (case.rank(), pp, qq, case);
                    if best.is_none_or(|b| (b.0, b.1, b.2) > (key.0, key.1, key.2)) {
                        best = Some(key);
                    }
                }
            }
        }
        let (_, p, q, case) = best.ok_or(BiquadError::NoBasisCase { d1, d2 })?;
        let g = p.gcd(&q);
        let r = (p / g) * (q / g);
        debug_assert!(radicands.contains(&r));
        let basis = basis_columns(case);
        let mat: Vec<Vec<Rat>> = (0..4)
            .map(|row| (0..4).map(|col| basis[col][row].clone()).collect())
            .collect();
        let basis_inv = invert_matrix(&mat).expect("integral basis matrix is invertible");
        let cache = RefCell::new(RadCache {
            sp: SqrtEnclosure::new(int(p)),
            sq: SqrtEnclosure::new(int(q)),
            sr: SqrtEnclosure::new(int(r)),
        });
        Ok(BiquadField { p, q, r, g, case, basis, basis_inv, cache })
    }

    /// Canonical first radicand `P`.
    pub fn p(&self) -> i64 {
        self.p
    }

    /// Canonical second radicand `Q`.
    pub fn q(&self) -> i64 {
        self.q
    }

    /// Third radicand `R = PQ / gcd(P, Q)^2`.
    pub fn r(&self) -> i64 {
        self.r
    }

    /// `gcd(P, Q)`.
    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn case(&self) -> BasisCase {
        self.case
    }

    /// The three quadratic radicands `(P, Q, R)`.
    pub fn radicands(&self) -> [i64; 3] {
        [self.p, self.q, self.r]
    }

    /// Columns of the integral basis over `(1, √P, √Q, √R)`.
    pub fn integral_basis(&self) -> &[[Rat; 4]; 4] {
        &self.basis
    }

    // ----- element construction -----

    pub fn zero(&self) -> BiquadElem {
        BiquadElem::from_coords([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn one(&self) -> BiquadElem {
        self.from_rat(&Rat::one())
    }

    pub fn from_rat(&self, x: &Rat) -> BiquadElem {
        BiquadElem::from_coords([x.clone(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn from_int(&self, n: i64) -> BiquadElem {
        self.from_rat(&rat(n))
    }

    /// `sqrt(d)` as an element, for `d` one of the three radicands.
    pub fn sqrt_elem(&self, d: i64) -> Option<BiquadElem> {
        let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        let idx = if d == self.p {
            1
        } else if d == self.q {
            2
        } else if d == self.r {
            3
        } else {
            return None;
        };
        c[idx] = Rat::one();
        Some(BiquadElem::from_coords(c))
    }

    /// Element from integral-basis multiples.
    #[allow(clippy::wrong_self_convention)] // the field is the element factory
    pub fn from_integral_coords(&self, m: &[Int]) -> BiquadElem {
        assert_eq!(m.len(), 4);
        let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for (col, mi) in m.iter().enumerate() {
            let k = Rat::from_integer(mi.clone());
            for row in 0..4 {
                c[row] += &self.basis[col][row] * &k;
            }
        }
        BiquadElem::from_coords(c)
    }

    // ----- ring operations -----

    pub fn add(&self, a: &BiquadElem, b: &BiquadElem) -> BiquadElem {
        BiquadElem::from_coords([
            &a.c[0] + &b.c[0],
            &a.c[1] + &b.c[1],
            &a.c[2] + &b.c[2],
            &a.c[3] + &b.c[3],
        ])
    }

    pub fn sub(&self, a: &BiquadElem, b: &BiquadElem) -> BiquadElem {
        BiquadElem::from_coords([
            &a.c[0] - &b.c[0],
            &a.c[1] - &b.c[1],
            &a.c[2] - &b.c[2],
            &a.c[3] - &b.c[3],
        ])
    }

    pub fn neg(&self, a: &BiquadElem) -> BiquadElem {
        BiquadElem::from_coords([
            -a.c[0].clone(),
            -a.c[1].clone(),
            -a.c[2].clone(),
            -a.c[3].clone(),
        ])
    }

    pub fn scale(&self, a: &BiquadElem, k: &Rat) -> BiquadElem {
        BiquadElem::from_coords([&a.c[0] * k, &a.c[1] * k, &a.c[2] * k, &a.c[3] * k])
    }

    /// Product, using `√P·√Q = g·√R`, `√P·√R = (P/g)·√Q`, `√Q·√R = (Q/g)·√P`.
    pub fn mul(&self, a: &BiquadElem, b: &BiquadElem) -> BiquadElem {
        let (x1, y1, z1, w1) = (&a.c[0], &a.c[1], &a.c[2], &a.c[3]);
        let (x2, y2, z2, w2) = (&b.c[0], &b.c[1], &b.c[2], &b.c[3]);
        let p = rat(self.p);
        let q = rat(self.q);
        let r = rat(self.r);
        let g = rat(self.g);
        let pg = rat(self.p / self.g);
        let qg = rat(self.q / self.g);
        let x = x1 * x2 + &(y1 * y2) * &p + &(z1 * z2) * &q + &(w1 * w2) * &r;
        let y = x1 * y2 + y1 * x2 + &(z1 * w2 + w1 * z2) * &qg;
        let z = x1 * z2 + z1 * x2 + &(y1 * w2 + w1 * y2) * &pg;
        let w = x1 * w2 + w1 * x2 + &(y1 * z2 + z1 * y2) * &g;
        BiquadElem::from_coords([x, y, z, w])
    }

    /// Apply embedding/automorphism `k` (0 is the identity).
    pub fn conj(&self, a: &BiquadElem, k: usize) -> BiquadElem {
        let s = EMBEDDING_SIGNS[k];
        let flip = |v: &Rat, sg: i8| if sg < 0 { -v.clone() } else { v.clone() };
        BiquadElem::from_coords([
            a.c[0].clone(),
            flip(&a.c[1], s[0]),
            flip(&a.c[2], s[1]),
            flip(&a.c[3], s[2]),
        ])
    }

    /// All four automorphism images (the Galois group is Klein four).
    pub fn automorphism_images(&self, a: &BiquadElem) -> Vec<BiquadElem> {
        (0..4).map(|k| self.conj(a, k)).collect()
    }

    pub fn trace(&self, a: &BiquadElem) -> Rat {
        &a.c[0] * rat(4)
    }

    /// Field norm; the product of the four embeddings, always rational.
    pub fn norm(&self, a: &BiquadElem) -> Rat {
        let mut prod = a.clone();
        for k in 1..4 {
            prod = self.mul(&prod, &self.conj(a, k));
        }
        debug_assert!(prod.is_rational(), "norm must be rational");
        prod.c[0].clone()
    }

    /// Multiplicative inverse (`None` for zero), via the norm.
    pub fn inv(&self, a: &BiquadElem) -> Option<BiquadElem> {
        if a.is_zero() {
            return None;
        }
        let mut prod = self.conj(a, 1);
        prod = self.mul(&prod, &self.conj(a, 2));
        prod = self.mul(&prod, &self.conj(a, 3));
        let n = self.norm(a);
        Some(self.scale(&prod, &n.recip()))
    }

    // ----- integrality -----

    /// Integral-basis multiples of `a`, if `a` lies in the ring of integers.
    pub fn integral_coords(&self, a: &BiquadElem) -> Option<Vec<Int>> {
        let m = mat_vec(&self.basis_inv, &a.c);
        if m.iter().all(Rat::is_integer) {
            Some(m.into_iter().map(|x| x.to_integer()).collect())
        } else {
            None
        }
    }

    pub fn is_integral(&self, a: &BiquadElem) -> bool {
        self.integral_coords(a).is_some()
    }

    // ----- embeddings and signs -----

    /// Rational interval containing the image of `a` under embedding
    /// `emb`, at precision `level` (see [`crate::exactnum::level_width`]).
    pub fn embed_enclosure(&self, a: &BiquadElem, emb: usize, level: u32) -> Interval {
        let width = crate::exactnum::level_width(level);
        let mut cache = self.cache.borrow_mut();
        let sp = cache.sp.refine_to(&width);
        let sq = cache.sq.refine_to(&width);
        let sr = cache.sr.refine_to(&width);
        drop(cache);
        let s = EMBEDDING_SIGNS[emb];
        let signed = |iv: &Interval, coeff: &Rat, sg: i8| {
            let k = if sg < 0 { -coeff.clone() } else { coeff.clone() };
            iv.scale(&k)
        };
        let mut acc = Interval::point(a.c[0].clone());
        acc = acc.add(&signed(&sp, &a.c[1], s[0]));
        acc = acc.add(&signed(&sq, &a.c[2], s[1]));
        acc = acc.add(&signed(&sr, &a.c[3], s[2]));
        acc
    }

    /// Exact sign of embedding `emb` of `a`.
    pub fn sign_at(&self, a: &BiquadElem, emb: usize) -> Sign {
        sign_exact(a.is_zero(), |level| self.embed_enclosure(a, emb, level))
    }

    /// Totally positive: strictly positive under every embedding.
    pub fn is_totally_positive(&self, a: &BiquadElem) -> bool {
        (0..4).all(|k| self.sign_at(a, k) == Sign::Positive)
    }

    /// Totally nonnegative. A nonzero field element with one vanishing
    /// embedding would have norm zero, so this is just zero-or-positive.
    pub fn is_totally_nonneg(&self, a: &BiquadElem) -> bool {
        a.is_zero() || self.is_totally_positive(a)
    }

    /// Interval matrix sending embedding values to integral-basis
    /// multiples: row `i`, column `k` is the coefficient of embedding `k`
    /// in basis multiple `i`.
    pub fn inverse_embedding_rows(&self, level: u32) -> Vec<Vec<Interval>> {
        let width = crate::exactnum::level_width(level);
        let mut cache = self.cache.borrow_mut();
        let radicals = [
            Interval::point(Rat::one()),
            cache.sp.refine_to(&width),
            cache.sq.refine_to(&width),
            cache.sr.refine_to(&width),
        ];
        drop(cache);
        let quarter = Rat::new(Int::one(), int(4));
        // coords_to_coeff[j][k]: coefficient of embedding k in coordinate j.
        let mut rows = Vec::with_capacity(4);
        for i in 0..4 {
            let mut row = Vec::with_capacity(4);
            for k in 0..4 {
                let mut acc = Interval::zero();
                for j in 0..4 {
                    // Coordinate j of an element equals
                    // sum_k sign[k][j] * sigma_k / (4 * radical_j).
                    let sgn = if j == 0 {
                        1i8
                    } else {
                        EMBEDDING_SIGNS[k][j - 1]
                    };
                    let coeff = {
                        let base = &self.basis_inv[i][j] * &quarter;
                        if sgn < 0 {
                            -base
                        } else {
                            base
                        }
                    };
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = radicals[j].recip().scale(&coeff);
                    acc = acc.add(&term);
                }
                row.push(acc);
            }
            rows.push(row);
        }
        rows
    }

    // ----- quadratic subfields -----

    /// Whether `a` lies in the quadratic subfield `Q(sqrt(d))`,
    /// for `d` one of the three radicands.
    pub fn in_quadratic_subfield(&self, a: &BiquadElem, d: i64) -> Option<bool> {
        let idx = if d == self.p {
            1
        } else if d == self.q {
            2
        } else if d == self.r {
            3
        } else {
            return None;
        };
        Some((1..4).all(|j| j == idx || a.c[j].is_zero()))
    }

    /// Express `a` as `(u, v)` with `a = u + v*sqrt(d)` when `a` lies in
    /// the quadratic subfield `Q(sqrt(d))`.
    pub fn quadratic_parts(&self, a: &BiquadElem, d: i64) -> Option<(Rat, Rat)> {
        if self.in_quadratic_subfield(a, d)? {
            let idx = if d == self.p {
                1
            } else if d == self.q {
                2
            } else {
                3
            };
            Some((a.c[0].clone(), a.c[idx].clone()))
        } else {
            None
        }
    }

    pub fn format_elem(&self, a: &BiquadElem) -> String {
        format!(
            "({}, {}, {}, {}) over (1, sqrt({}), sqrt({}), sqrt({}))",
            a.c[0], a.c[1], a.c[2], a.c[3], self.p, self.q, self.r
        )
    }
}

impl fmt::Display for BiquadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}), sqrt({}))", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::exactnum::rat_frac;

    fn coords(v: [i64; 4]) -> BiquadElem {
        BiquadElem::from_coords([rat(v[0]), rat(v[1]), rat(v[2]), rat(v[3])])
    }

    #[test]
    fn canonical_presentation_and_cases() {
        let cases = [
            ((2, 3), (2, 3, 6, 1), BasisCase::C1),
            ((3, 2), (2, 3, 6, 1), BasisCase::C1),
            ((2, 5), (2, 5, 10, 1), BasisCase::C2),
            ((5, 2), (2, 5, 10, 1), BasisCase::C2),
            ((10, 2), (2, 5, 10, 1), BasisCase::C2),
            ((3, 5), (3, 5, 15, 1), BasisCase::C3),
            ((5, 13), (5, 13, 65, 1), BasisCase::C4a),
            ((13, 5), (5, 13, 65, 1), BasisCase::C4a),
            ((21, 33), (21, 33, 77, 3), BasisCase::C4b),
            ((33, 21), (21, 33, 77, 3), BasisCase::C4b),
            ((2, 7), (2, 7, 14, 1), BasisCase::C1),
            ((6, 15), (6, 15, 10, 3), BasisCase::C1),
            ((17, 29), (17, 29, 493, 1), BasisCase::C4a),
            ((21, 29), (21, 29, 609, 1), BasisCase::C4a),
        ];
        for ((d1, d2), (p, q, r, g), case) in cases {
            let f = BiquadField::new(d1, d2).unwrap();
            assert_eq!(
                (f.p(), f.q(), f.r(), f.g(), f.case()),
                (p, q, r, g, case),
                "presentation of ({d1}, {d2})"
            );
        }
    }

    #[test]
    fn invalid_radicands_are_rejected() {
        assert!(matches!(
            BiquadField::new(4, 5),
            Err(BiquadError::RadicandNotSquareFree(4))
        ));
        assert!(matches!(
            BiquadField::new(2, 2),
            Err(BiquadError::RadicandsEqual(2))
        ));
        assert!(matches!(
            BiquadField::new(1, 5),
            Err(BiquadError::RadicandTooSmall(1))
        ));
        assert!(matches!(
            BiquadField::new(-3, 5),
            Err(BiquadError::RadicandTooSmall(-3))
        ));
    }

    #[test]
    fn multiplication_follows_radical_relations() {
        let f = BiquadField::new(21, 33).unwrap();
        let sp = f.sqrt_elem(21).unwrap();
        let sq = f.sqrt_elem(33).unwrap();
        let product = f.mul(&sp, &sq);
        // sqrt(21)*sqrt(33) = 3*sqrt(77).
        assert_eq!(product, f.scale(&f.sqrt_elem(77).unwrap(), &rat(3)));

        let f23 = BiquadField::new(2, 3).unwrap();
        let s = f23.add(&f23.sqrt_elem(2).unwrap(), &f23.sqrt_elem(3).unwrap());
        let sq2 = f23.mul(&s, &s);
        // (sqrt(2)+sqrt(3))^2 = 5 + 2*sqrt(6).
        assert_eq!(sq2, coords([5, 0, 0, 2]));
    }

    #[test]
    fn embeddings_flip_radical_signs() {
        let f = BiquadField::new(2, 5).unwrap();
        for (idx, d) in [(0, 2), (1, 5), (2, 10)] {
            let e = f.sqrt_elem(d).unwrap();
            for k in 0..4 {
                let expected = if EMBEDDING_SIGNS[k][idx] > 0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                assert_eq!(f.sign_at(&e, k), expected, "sign of sqrt({d}) at {k}");
            }
        }
    }

    #[test]
    fn conjugation_forms_klein_four_group() {
        let f = BiquadField::new(2, 3).unwrap();
        let e = coords([1, 2, 3, 4]);
        assert_eq!(f.conj(&f.conj(&e, 1), 2), f.conj(&e, 3));
        assert_eq!(f.conj(&f.conj(&e, 1), 1), e);
        assert_eq!(f.conj(&f.conj(&e, 2), 3), f.conj(&e, 1));
        // Trace equals the sum over the orbit.
        let sum = f
            .automorphism_images(&e)
            .into_iter()
            .fold(f.zero(), |acc, x| f.add(&acc, &x));
        assert_eq!(sum, f.from_rat(&f.trace(&e)));
    }

    #[test]
    fn norm_and_inverse() {
        let f = BiquadField::new(2, 5).unwrap();
        let s2 = f.sqrt_elem(2).unwrap();
        assert_eq!(f.norm(&s2), rat(4));
        let a = coords([2, 1, 1, 0]);
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert_eq!(f.inv(&f.zero()), None);
    }

    #[test]
    fn integral_coordinates_match_known_elements() {
        // (7 + 2*sqrt(2) + sqrt(5) + 2*sqrt(10)) / 2 in Q(sqrt(2), sqrt(5)):
        // coordinates (7/2, 1, 1/2, 1) decompose over the integral basis
        // as (3, 0, 1, 2).
        let f = BiquadField::new(2, 5).unwrap();
        let a = BiquadElem::from_coords([rat_frac(7, 2), rat(1), rat_frac(1, 2), rat(1)]);
        assert_eq!(
            f.integral_coords(&a).unwrap(),
            vec![int(3), int(0), int(1), int(2)]
        );
        assert_eq!(f.from_integral_coords(&[int(3), int(0), int(1), int(2)]), a);

        // (1 + sqrt(5))/2 is integral, (1 + sqrt(2))/2 is not.
        let golden = BiquadElem::from_coords([rat_frac(1, 2), Rat::zero(), rat_frac(1, 2), Rat::zero()]);
        assert!(f.is_integral(&golden));
        let bad = BiquadElem::from_coords([rat_frac(1, 2), rat_frac(1, 2), Rat::zero(), Rat::zero()]);
        assert!(!f.is_integral(&bad));

        // 6 + sqrt(33) in Q(sqrt(21), sqrt(33)) has basis multiples (5, 0, 2, 0).
        let f = BiquadField::new(21, 33).unwrap();
        let a = coords([6, 0, 1, 0]);
        assert_eq!(
            f.integral_coords(&a).unwrap(),
            vec![int(5), int(0), int(2), int(0)]
        );
    }

    #[test]
    fn total_positivity_examples() {
        let f = BiquadField::new(2, 5).unwrap();
        // 1 + sqrt(2) is positive but not totally positive.
        let a = coords([1, 1, 0, 0]);
        assert_eq!(f.sign_at(&a, 0), Sign::Positive);
        assert!(!f.is_totally_positive(&a));
        // (3 + sqrt(5))/2 is totally positive.
        let golden = BiquadElem::from_coords([rat_frac(3, 2), Rat::zero(), rat_frac(1, 2), Rat::zero()]);
        assert!(f.is_totally_positive(&golden));
        // 7 + 2*sqrt(10) is totally positive.
        let b = coords([7, 0, 0, 2]);
        assert!(f.is_totally_positive(&b));
        assert!(f.is_totally_nonneg(&f.zero()));
        assert!(!f.is_totally_nonneg(&f.neg(&b)));
    }

    #[test]
    fn inverse_embedding_rows_recover_coordinates() {
        let f = BiquadField::new(5, 13).unwrap();
        let a = f.from_integral_coords(&[int(2), int(-1), int(3), int(1)]);
        let rows = f.inverse_embedding_rows(0);
        // Evaluate row_i over enclosures of the four embeddings; the
        // result must enclose the integral coordinate m_i.
        let m = f.integral_coords(&a).unwrap();
        for i in 0..4 {
            let mut acc = Interval::zero();
            for k in 0..4 {
                let sigma = f.embed_enclosure(&a, k, 0);
                acc = acc.add(&rows[i][k].mul(&sigma));
            }
            let target = Rat::from_integer(m[i].clone());
            assert!(
                acc.contains(&target),
                "row {i} does not recover integral coordinate"
            );
        }
    }

    #[test]
    fn quadratic_subfield_membership() {
        let f = BiquadField::new(2, 5).unwrap();
        let a = coords([7, 0, 0, 2]);
        assert_eq!(f.in_quadratic_subfield(&a, 10), Some(true));
        assert_eq!(f.in_quadratic_subfield(&a, 2), Some(false));
        assert_eq!(f.in_quadratic_subfield(&a, 7), None);
        assert_eq!(f.quadratic_parts(&a, 10), Some((rat(7), rat(2))));
    }
}
