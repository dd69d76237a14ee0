//! The totally real cyclic cubic fields `Q(ρ)` where `ρ` is the largest
//! root of `f(x) = x^3 - a*x^2 - (a+3)*x - 1` for an integer `a >= -1`.
//!
//! `f` always has three real roots: `ρ > a+1`, `ρ' ∈ (-2,-1)` and
//! `ρ'' ∈ (-1,0)`. The Galois action is cyclic of order three and admits
//! the closed form
//!
//! ```text
//! σ(ρ) = ρ' = -1 - 1/ρ = -ρ^2 + a·ρ + (a+2)
//! σ²(ρ) = ρ'' = ρ^2 - (a+1)·ρ - 2
//! ```
//!
//! Elements are exact rational coordinates over the power basis
//! `(1, ρ, ρ^2)`; the ring `Z[ρ]` consists of the integer-coordinate
//! elements. `Z[ρ]` is the maximal order exactly when `a^2 + 3a + 9` is
//! square-free (recorded in [`CubicField::is_monogenic`]); every claim
//! computed here is a statement about the order `Z[ρ]` itself, so
//! construction does not require maximality.
//!
//! Beyond field arithmetic this module provides the combinatorial
//! structures used by the form-counting routines:
//!
//! * the *triangle family* `α(v, w) = -v - w·ρ + (v+1)·ρ^2` over the
//!   index set `0 <= v <= a`, `v(a+2)+1 <= w <= (v+1)(a+1)`, which
//!   consists of `(a+1)(a+2)/2` totally positive elements of `Z[ρ]`;
//! * the two index involutions `T1`, `T2` realized by
//!   `T1(α) = σ(α)·σ(ρ)^{-2}` and `T2(α) = σ²(α)·ρ^2`;
//! * the distinguished codifferent element `δ` with
//!   `Tr(δ·Z[ρ]) ⊆ Z`;
//! * the subfamily of triangle points with `2α(v,w) ≻ 1`;
//! * totally positive units `ρ^{2i}(1+ρ)^{2j}` and exact coordinates
//!   over the cone basis `(1, ρ^2, σ(ρ)^{-2})`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use num_traits::{One, Zero};

use crate::exactnum::{
    is_square_free, rat, sign_exact, CubicRootEnclosures, Int, Interval, Rat, Sign,
};

/// Errors rejected by [`CubicField::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubicError {
    ParameterTooSmall(i64),
    ParameterTooLarge(i64),
}

impl fmt::Display for CubicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubicError::ParameterTooSmall(a) => {
                write!(f, "parameter {a} is smaller than -1")
            }
            CubicError::ParameterTooLarge(a) => {
                write!(f, "parameter {a} is too large for this implementation")
            }
        }
    }
}

/// An element of a cubic field: exact rational coordinates over
/// `(1, ρ, ρ^2)`. As with biquadratic elements, the field itself is the
/// context for all arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CubicElem {
    pub c: [Rat; 3],
}

impl CubicElem {
    pub fn from_coords(c: [Rat; 3]) -> CubicElem {
        CubicElem { c }
    }

    pub fn from_ints(c: [i64; 3]) -> CubicElem {
        CubicElem { c: [rat(c[0]), rat(c[1]), rat(c[2])] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }
}

/// A cyclic cubic field (more precisely, the order `Z[ρ]` inside it).
#[derive(Clone, Debug)]
pub struct CubicField {
    a: i64,
    monogenic: bool,
    cache: RefCell<CubicRootEnclosures>,
}

impl PartialEq for CubicField {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
    }
}

impl Eq for CubicField {}

impl CubicField {
    /// Construct the field for a given `a >= -1`.
    pub fn new(a: i64) -> Result<CubicField, CubicError> {
        if a < -1 {
            return Err(CubicError::ParameterTooSmall(a));
        }
        if a > 1_000_000 {
            return Err(CubicError::ParameterTooLarge(a));
        }
        let core = a * a + 3 * a + 9;
        Ok(CubicField {
            a,
            monogenic: is_square_free(core),
            cache: RefCell::new(CubicRootEnclosures::new(a)),
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// Whether `Z[ρ]` is the maximal order (equivalent to
    /// `a^2 + 3a + 9` being square-free; never true when `3 | a`).
    pub fn is_monogenic(&self) -> bool {
        self.monogenic
    }

    // ----- element construction -----

    pub fn zero(&self) -> CubicElem {
        CubicElem::from_coords([Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn one(&self) -> CubicElem {
        self.from_rat(&Rat::one())
    }

    pub fn from_rat(&self, x: &Rat) -> CubicElem {
        CubicElem::from_coords([x.clone(), Rat::zero(), Rat::zero()])
    }

    pub fn from_int(&self, n: i64) -> CubicElem {
        self.from_rat(&rat(n))
    }

    /// The generator `ρ`.
    pub fn rho(&self) -> CubicElem {
        CubicElem::from_ints([0, 1, 0])
    }

    /// `ρ^2`.
    pub fn rho_sq(&self) -> CubicElem {
        CubicElem::from_ints([0, 0, 1])
    }

    /// `σ(ρ)^{-2}`, with exact coordinates
    /// `(-(a+1), -(a^2+3a+3), a+2)`.
    pub fn conj_rho_inv_sq(&self) -> CubicElem {
        let a = self.a;
        CubicElem::from_ints([-(a + 1), -(a * a + 3 * a + 3), a + 2])
    }

    // ----- ring operations -----

    pub fn add(&self, x: &CubicElem, y: &CubicElem) -> CubicElem {
        CubicElem::from_coords([&x.c[0] + &y.c[0], &x.c[1] + &y.c[1], &x.c[2] + &y.c[2]])
    }

    pub fn sub(&self, x: &CubicElem, y: &CubicElem) -> CubicElem {
        CubicElem::from_coords([&x.c[0] - &y.c[0], &x.c[1] - &y.c[1], &x.c[2] - &y.c[2]])
    }

    pub fn neg(&self, x: &CubicElem) -> CubicElem {
        CubicElem::from_coords([-x.c[0].clone(), -x.c[1].clone(), -x.c[2].clone()])
    }

    pub fn scale(&self, x: &CubicElem, k: &Rat) -> CubicElem {
        CubicElem::from_coords([&x.c[0] * k, &x.c[1] * k, &x.c[2] * k])
    }

    /// Product, reducing with `ρ^3 = a·ρ^2 + (a+3)·ρ + 1` and
    /// `ρ^4 = (a^2+a+3)·ρ^2 + (a^2+3a+1)·ρ + a`.
    pub fn mul(&self, x: &CubicElem, y: &CubicElem) -> CubicElem {
        let a = self.a;
        let mut e = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for i in 0..3 {
            if x.c[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y.c[j].is_zero() {
                    continue;
                }
                e[i + j] += &x.c[i] * &y.c[j];
            }
        }
        let r0 = &e[0] + &e[3] * rat(1) + &e[4] * rat(a);
        let r1 = &e[1] + &e[3] * rat(a + 3) + &e[4] * rat(a * a + 3 * a + 1);
        let r2 = &e[2] + &e[3] * rat(a) + &e[4] * rat(a * a + a + 3);
        CubicElem::from_coords([r0, r1, r2])
    }

    pub fn pow(&self, x: &CubicElem, n: u32) -> CubicElem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// The generating automorphism `σ` (maps `ρ` to the root in `(-2,-1)`).
    pub fn conj(&self, x: &CubicElem) -> CubicElem {
        let a = self.a;
        // σ(ρ) = -ρ^2 + a·ρ + (a+2).
        let rho_prime = CubicElem::from_ints([a + 2, a, -1]);
        let sq = self.mul(&rho_prime, &rho_prime);
        let mut out = self.from_rat(&x.c[0]);
        out = self.add(&out, &self.scale(&rho_prime, &x.c[1]));
        out = self.add(&out, &self.scale(&sq, &x.c[2]));
        out
    }

    /// `σ²` (maps `ρ` to the root in `(-1,0)`).
    pub fn conj2(&self, x: &CubicElem) -> CubicElem {
        self.conj(&self.conj(x))
    }

    /// The Galois orbit `(x, σx, σ²x)`.
    pub fn automorphism_images(&self, x: &CubicElem) -> Vec<CubicElem> {
        let s = self.conj(x);
        let s2 = self.conj(&s);
        vec![x.clone(), s, s2]
    }

    pub fn trace(&self, x: &CubicElem) -> Rat {
        let a = self.a;
        &x.c[0] * rat(3) + &x.c[1] * rat(a) + &x.c[2] * rat(a * a + 2 * a + 6)
    }

    /// Field norm (product over the Galois orbit, always rational).
    pub fn norm(&self, x: &CubicElem) -> Rat {
        let s = self.conj(x);
        let s2 = self.conj(&s);
        let prod = self.mul(&self.mul(x, &s), &s2);
        debug_assert!(prod.is_rational(), "norm must be rational");
        prod.c[0].clone()
    }

    pub fn inv(&self, x: &CubicElem) -> Option<CubicElem> {
        if x.is_zero() {
            return None;
        }
        let s = self.conj(x);
        let s2 = self.conj(&s);
        let adj = self.mul(&s, &s2);
        let n = self.norm(x);
        Some(self.scale(&adj, &n.recip()))
    }

    // ----- integrality -----

    pub fn integral_coords(&self, x: &CubicElem) -> Option<Vec<Int>> {
        if x.c.iter().all(Rat::is_integer) {
            Some(x.c.iter().map(|v| v.to_integer()).collect())
        } else {
            None
        }
    }

    pub fn is_integral(&self, x: &CubicElem) -> bool {
        x.c.iter().all(Rat::is_integer)
    }

    #[allow(clippy::wrong_self_convention)] // the field is the element factory
    pub fn from_integral_coords(&self, m: &[Int]) -> CubicElem {
        assert_eq!(m.len(), 3);
        CubicElem::from_coords([
            Rat::from_integer(m[0].clone()),
            Rat::from_integer(m[1].clone()),
            Rat::from_integer(m[2].clone()),
        ])
    }

    // ----- embeddings and signs -----

    /// Enclosure of embedding `emb` of `x`; embedding 0 sends `ρ` to the
    /// largest root, embedding 1 to the root in `(-2,-1)`, embedding 2 to
    /// the root in `(-1,0)` (matching `σ^emb` applied to `ρ`).
    pub fn embed_enclosure(&self, x: &CubicElem, emb: usize, level: u32) -> Interval {
        let width = crate::exactnum::level_width(level);
        let roots = self.cache.borrow_mut().refine_to(&width);
        let root = &roots[emb];
        let mut acc = Interval::point(x.c[0].clone());
        acc = acc.add(&root.scale(&x.c[1]));
        acc = acc.add(&root.mul(root).scale(&x.c[2]));
        acc
    }

    pub fn sign_at(&self, x: &CubicElem, emb: usize) -> Sign {
        sign_exact(x.is_zero(), |level| self.embed_enclosure(x, emb, level))
    }

    pub fn is_totally_positive(&self, x: &CubicElem) -> bool {
        (0..3).all(|k| self.sign_at(x, k) == Sign::Positive)
    }

    pub fn is_totally_nonneg(&self, x: &CubicElem) -> bool {
        x.is_zero() || self.is_totally_positive(x)
    }

    /// Interval matrix sending embedding values to power-basis
    /// coordinates, built from the Lagrange interpolation columns
    /// `L_k(x) = (x^2 - (a - ρ_k)·x + 1/ρ_k) / f'(ρ_k)`.
    pub fn inverse_embedding_rows(&self, level: u32) -> Vec<Vec<Interval>> {
        // f'(ρ_k) and ρ_k must be separated from zero; both hold at any
        // reasonable precision, but refine defensively if needed.
        let mut lvl = level;
        let roots = loop {
            let width = crate::exactnum::level_width(lvl);
            let roots = self.cache.borrow_mut().refine_to(&width);
            let fprime_ok = roots.iter().all(|r| {
                let fp = self.fprime_interval(r);
                !fp.contains_zero() && !r.contains_zero()
            });
            if fprime_ok {
                break roots;
            }
            lvl += 1;
        };
        let a = rat(self.a);
        let mut rows = alloc::vec![Vec::new(), Vec::new(), Vec::new()];
        for root in roots.iter() {
            let fp = self.fprime_interval(root);
            let fp_inv = fp.recip();
            // Coefficients of L_k: constant, linear, quadratic.
            let c0 = root.recip().mul(&fp_inv);
            let c1 = root.sub(&Interval::point(a.clone())).mul(&fp_inv);
            let c2 = fp_inv;
            rows[0].push(c0);
            rows[1].push(c1);
            rows[2].push(c2);
        }
        rows
    }

    fn fprime_interval(&self, root: &Interval) -> Interval {
        // f'(x) = 3x^2 - 2a·x - (a+3).
        let three = rat(3);
        let two_a = rat(2 * self.a);
        let a3 = rat(self.a + 3);
        root.mul(root)
            .scale(&three)
            .sub(&root.scale(&two_a))
            .sub(&Interval::point(a3))
    }

    // ----- triangle family -----

    /// Size of the triangle index set: `(a+1)(a+2)/2`.
    pub fn triangle_size(&self) -> i64 {
        (self.a + 1) * (self.a + 2) / 2
    }

    /// All triangle indices `(v, w)` in lexicographic order.
    pub fn triangle_points(&self) -> Vec<(i64, i64)> {
        let a = self.a;
        let mut pts = Vec::new();
        for v in 0..=a {
            for w in v * (a + 2) + 1..=(v + 1) * (a + 1) {
                pts.push((v, w));
            }
        }
        pts
    }

    pub fn in_triangle(&self, v: i64, w: i64) -> bool {
        let a = self.a;
        (0..=a).contains(&v) && (v * (a + 2) + 1..=(v + 1) * (a + 1)).contains(&w)
    }

    /// The triangle element `α(v, w) = -v - w·ρ + (v+1)·ρ^2`.
    pub fn triangle_elem(&self, v: i64, w: i64) -> CubicElem {
        CubicElem::from_ints([-v, -w, v + 1])
    }

    /// Recognize a triangle element and return its `(v, w)` index.
    pub fn as_triangle_point(&self, x: &CubicElem) -> Option<(i64, i64)> {
        let ints = self.integral_coords(x)?;
        let to_i64 = |n: &Int| -> Option<i64> {
            let (sign, digits) = n.to_u64_digits();
            let mag = match digits.len() {
                0 => 0u64,
                1 => digits[0],
                _ => return None,
            };
            let v = i64::try_from(mag).ok()?;
            Some(if sign == num_bigint::Sign::Minus { -v } else { v })
        };
        let c0 = to_i64(&ints[0])?;
        let c1 = to_i64(&ints[1])?;
        let c2 = to_i64(&ints[2])?;
        let v = c2 - 1;
        let w = -c1;
        if c0 == -v && self.in_triangle(v, w) {
            Some((v, w))
        } else {
            None
        }
    }

    /// Index form of the first twist: `T1(v, w)`.
    pub fn t1_index(&self, v: i64, w: i64) -> (i64, i64) {
        let a = self.a;
        let big_w = w - v * (a + 2) - 1;
        (big_w, big_w * (a + 2) + (a - v - big_w) + 1)
    }

    /// Index form of the second twist: `T2(v, w)`.
    pub fn t2_index(&self, v: i64, w: i64) -> (i64, i64) {
        let a = self.a;
        let big_w = w - v * (a + 2) - 1;
        let u = a - v - big_w;
        (u, u * (a + 2) + v + 1)
    }

    /// Algebraic form of the first twist: `σ(x)·σ(ρ)^{-2}`.
    pub fn t1_map(&self, x: &CubicElem) -> CubicElem {
        self.mul(&self.conj(x), &self.conj_rho_inv_sq())
    }

    /// Algebraic form of the second twist: `σ²(x)·ρ^2`.
    pub fn t2_map(&self, x: &CubicElem) -> CubicElem {
        self.mul(&self.conj2(x), &self.rho_sq())
    }

    /// Triangle indices whose element `α` satisfies `2α ≻ 1`
    /// (difference totally positive), in lexicographic order.
    pub fn doubling_points(&self) -> Vec<(i64, i64)> {
        let a = self.a;
        let mut pts = Vec::new();
        if a < 1 {
            return pts;
        }
        for v in 0..=(a - 1) / 2 {
            let lo = ((2 * v + 1) * (a + 2) + 1 + 1) / 2;
            let hi = (v + 1) * (a + 1);
            for w in lo..=hi {
                pts.push((v, w));
            }
        }
        pts
    }

    /// Closed-form size of [`CubicField::doubling_points`].
    pub fn doubling_count(&self) -> i64 {
        let a = self.a;
        if a < 1 {
            0
        } else if a % 2 == 0 {
            a * (a + 2) / 8
        } else {
            (a + 1) * (a + 3) / 8
        }
    }

    // ----- codifferent -----

    /// The distinguished codifferent element
    /// `δ = (-a-4-(2a+1)ρ+2ρ^2)(-a-2-aρ+ρ^2) / (a^2+3a+9)`;
    /// `Tr(δ·x)` is an integer for every `x` in `Z[ρ]`.
    pub fn codifferent_elem(&self) -> CubicElem {
        let a = self.a;
        let u = CubicElem::from_ints([-a - 4, -(2 * a + 1), 2]);
        let v = CubicElem::from_ints([-a - 2, -a, 1]);
        let denom = rat(a * a + 3 * a + 9).recip();
        self.scale(&self.mul(&u, &v), &denom)
    }

    // ----- units and the positive cone -----

    /// The square unit `ρ^{2i}·(1+ρ)^{2j}` (totally positive).
    pub fn square_unit(&self, i: i32, j: i32) -> CubicElem {
        let rho = self.rho();
        let one_plus = self.add(&self.one(), &rho);
        let base_i = if i >= 0 {
            rho
        } else {
            self.inv(&rho).expect("rho is invertible")
        };
        let base_j = if j >= 0 {
            one_plus
        } else {
            self.inv(&one_plus).expect("1+rho is invertible")
        };
        let mut acc = self.one();
        for _ in 0..(2 * i.unsigned_abs()) {
            acc = self.mul(&acc, &base_i);
        }
        for _ in 0..(2 * j.unsigned_abs()) {
            acc = self.mul(&acc, &base_j);
        }
        acc
    }

    /// All nontrivial square units `ρ^{2i}(1+ρ)^{2j}` with
    /// `|i|, |j| <= range`.
    pub fn square_units(&self, range: i32) -> Vec<CubicElem> {
        let mut out = Vec::new();
        for i in -range..=range {
            for j in -range..=range {
                if i == 0 && j == 0 {
                    continue;
                }
                out.push(self.square_unit(i, j));
            }
        }
        out
    }

    /// Exact coordinates of `x` over the cone basis `(1, ρ^2, σ(ρ)^{-2})`,
    /// returned as `(over 1, over ρ^2, over σ(ρ)^{-2})`.
    pub fn cone_coords(&self, x: &CubicElem) -> [Rat; 3] {
        let a = self.a;
        let denom = rat(a * a + 3 * a + 3);
        let z = -(&x.c[1] / &denom);
        let xx = &x.c[0] + &z * rat(a + 1);
        let y = &x.c[2] - &z * rat(a + 2);
        [xx, y, z]
    }

    pub fn format_elem(&self, x: &CubicElem) -> String {
        format!("({}, {}, {}) over (1, rho, rho^2) [a={}]", x.c[0], x.c[1], x.c[2], self.a)
    }
}

impl fmt::Display for CubicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(rho), rho^3 = {}rho^2 + {}rho + 1", self.a, self.a + 3)
    }
}
