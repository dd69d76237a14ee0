//! Exact scalar arithmetic: arbitrary-precision rationals, rational
//! intervals with outward-rounded operations, enclosures of square roots
//! and of the three real roots of `x^3 - a*x^2 - (a+3)*x - 1`, exact sign
//! determination by refinement, and small exact linear algebra.

use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for an [`Int`] from a machine integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Convenience constructor for a [`Rat`] from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Convenience constructor for the rational `n/d` (`d != 0`).
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Sign of an exactly represented real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// Sign of a rational number.
    pub fn of_rat(x: &Rat) -> Sign {
        match x.cmp(&Rat::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_nonnegative(self) -> bool {
        self != Sign::Negative
    }
}

/// A closed rational interval `[lo, hi]` with `lo <= hi`.
///
/// Intervals are used as *enclosures*: a real number `x` is represented
/// by any interval containing it, and arithmetic on intervals yields
/// enclosures of the corresponding exact results. All endpoints are
/// exact rationals, so no rounding is involved beyond the width of the
/// enclosure itself.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: Rat) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Interval {
        Interval::point(Rat::zero())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let c: [Rat; 4] = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for x in &c[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        Interval { lo, hi }
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, k: &Rat) -> Interval {
        if k.is_negative() {
            Interval { lo: &self.hi * k, hi: &self.lo * k }
        } else {
            Interval { lo: &self.lo * k, hi: &self.hi * k }
        }
    }

    /// Reciprocal; defined only when the interval excludes zero.
    pub fn recip(&self) -> Interval {
        assert!(
            !self.contains_zero(),
            "reciprocal of an interval containing zero"
        );
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// The sign of every point of the interval, if uniform.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }
}

/// `1 / 2^k` as a rational.
pub fn binary_width(k: u32) -> Rat {
    Rat::new(Int::one(), Int::one() << k)
}

/// Precision ladder used by sign refinement: level `l` requests
/// enclosures of width at most `2^-(64 * 2^l)`.
pub fn level_width(level: u32) -> Rat {
    let k = 64u64 << level.min(24);
    Rat::new(Int::one(), Int::one() << k as usize)
}

const MAX_REFINE_LEVEL: u32 = 16;

/// Determine the exact sign of a real number known to be either exactly
/// zero (`is_zero`) or nonzero and approximable to arbitrary precision.
///
/// `enclose(level)` must return an enclosure of the number whose width
/// shrinks as `level` grows (levels follow [`level_width`]). Since the
/// number is nonzero whenever `is_zero` is false, some level separates
/// it from zero and the loop terminates.
pub fn sign_exact<F: FnMut(u32) -> Interval>(is_zero: bool, mut enclose: F) -> Sign {
    if is_zero {
        return Sign::Zero;
    }
    for level in 0..=MAX_REFINE_LEVEL {
        if let Some(s) = enclose(level).sign() {
            return s;
        }
    }
    panic!("sign refinement exhausted its precision ladder on a nonzero value");
}

/// Refinable enclosure of `sqrt(d)` for an integer `d >= 0`, maintained
/// by exact bisection (each step compares `mid^2` with `d`).
#[derive(Clone, Debug)]
pub struct SqrtEnclosure {
    pub d: Int,
    iv: Interval,
    exact: bool,
}

impl SqrtEnclosure {
    pub fn new(d: Int) -> SqrtEnclosure {
        assert!(!d.is_negative(), "sqrt of a negative integer");
        let lo = d.sqrt();
        if &lo * &lo == d {
            let point = Rat::from_integer(lo);
            return SqrtEnclosure { d, iv: Interval::point(point), exact: true };
        }
        let hi = &lo + Int::one();
        let iv = Interval {
            lo: Rat::from_integer(lo),
            hi: Rat::from_integer(hi),
        };
        SqrtEnclosure { d, iv, exact: false }
    }

    /// Whether `d` is a perfect square (the enclosure is then a point).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Shrink the enclosure until its width is at most `width`, then
    /// return a copy of it.
    pub fn refine_to(&mut self, width: &Rat) -> Interval {
        let d = Rat::from_integer(self.d.clone());
        while !self.exact && self.iv.width() > *width {
            let mid = (&self.iv.lo + &self.iv.hi) / rat(2);
            if &mid * &mid >= d {
                self.iv.hi = mid;
            } else {
                self.iv.lo = mid;
            }
        }
        self.iv.clone()
    }

    pub fn current(&self) -> Interval {
        self.iv.clone()
    }
}

/// Evaluate `x^3 - a*x^2 - (a+3)*x - 1` exactly.
pub fn cubic_poly_eval(a: i64, x: &Rat) -> Rat {
    let aa = rat(a);
    ((x - &aa) * x - rat(a + 3)) * x - Rat::one()
}

/// Refinable enclosures of the three real roots of
/// `x^3 - a*x^2 - (a+3)*x - 1` for `a >= -1`.
///
/// The polynomial always has three real roots lying in the pairwise
/// disjoint brackets `(a+1, a+3)`, `(-2, -1)` and `(-1, 0)`; the sign of
/// the polynomial at those bracket endpoints is `(-,+)`, `(-,+)` and
/// `(+,-)` for every `a >= -1`, so bisection applies. The polynomial has
/// no rational roots, hence bisection never lands on a root exactly.
#[derive(Clone, Debug)]
pub struct CubicRootEnclosures {
    pub a: i64,
    roots: [Interval; 3],
    // Sign of the polynomial at the lower endpoint of each bracket.
    lo_negative: [bool; 3],
}

impl CubicRootEnclosures {
    pub fn new(a: i64) -> CubicRootEnclosures {
        assert!(a >= -1, "root brackets require a >= -1");
        let roots = [
            Interval::new(rat(a + 1), rat(a + 3)),
            Interval::new(rat(-2), rat(-1)),
            Interval::new(rat(-1), rat(0)),
        ];
        let lo_negative = [true, true, false];
        for (iv, neg) in roots.iter().zip(lo_negative.iter()) {
            debug_assert_eq!(cubic_poly_eval(a, &iv.lo).is_negative(), *neg);
            debug_assert_eq!(cubic_poly_eval(a, &iv.hi).is_negative(), !*neg);
        }
        CubicRootEnclosures { a, roots, lo_negative }
    }

    /// Shrink all three enclosures to width at most `width` and return
    /// them, ordered as (largest root, root in `(-2,-1)`, root in `(-1,0)`).
    pub fn refine_to(&mut self, width: &Rat) -> [Interval; 3] {
        for k in 0..3 {
            while self.roots[k].width() > *width {
                let mid = (&self.roots[k].lo + &self.roots[k].hi) / rat(2);
                let v = cubic_poly_eval(self.a, &mid);
                assert!(!v.is_zero(), "bisection hit an (impossible) rational root");
                if v.is_negative() == self.lo_negative[k] {
                    self.roots[k].lo = mid;
                } else {
                    self.roots[k].hi = mid;
                }
            }
        }
        self.roots.clone()
    }

    pub fn current(&self) -> [Interval; 3] {
        self.roots.clone()
    }
}

/// Invert an `n x n` rational matrix by Gauss–Jordan elimination.
/// Returns `None` when the matrix is singular.
pub fn invert_matrix(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n, "matrix is not square");
        let mut ext = row.clone();
        for j in 0..n {
            ext.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        a.push(ext);
    }
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let val = &a[r][c] - &a[col][c] * &factor;
                    a[r][c] = val;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Matrix–vector product over the rationals.
pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            assert_eq!(row.len(), v.len());
            row.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Largest integer `<= x`.
pub fn rat_floor(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Smallest integer `>= x`.
pub fn rat_ceil(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Whether `n > 0` is square-free (trial division; intended for the
/// small radicands that define fields).
pub fn is_square_free(n: i64) -> bool {
    if n <= 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2i64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Reduced nonnegative residue of a rational with integer value, `mod m`.
pub fn int_mod(x: &Int, m: i64) -> i64 {
    let mm = Int::from(m);
    let r = x.mod_floor(&mm);
    // `r` fits in i64 because `0 <= r < m`.
    let digits = r.to_u64_digits().1;
    if digits.is_empty() {
        0
    } else {
        digits[0] as i64
    }
}

/// Parse a decimal literal such as `-1.4014` into an exact rational.
/// Intended for test fixtures; accepts an optional sign, digits, and an
/// optional fractional part.
pub fn rat_from_decimal(s: &str) -> Option<Rat> {
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let mut parts = rest.splitn(2, '.');
    let int_part = parts.next()?;
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut num: Int = int_part.parse().ok()?;
    let mut den = Int::one();
    if let Some(frac) = parts.next() {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let frac_num: Int = frac.parse().ok()?;
        let scale = Int::from(10u32).pow(frac.len() as u32);
        num = num * &scale + frac_num;
        den = scale;
    }
    let mut r = Rat::new(num, den);
    if neg {
        r = -r;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::string::ToString;

    #[test]
    fn interval_arithmetic_brackets_products() {
        let a = Interval::new(rat(-2), rat(3));
        let b = Interval::new(rat(-5), rat(-1));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat(-15));
        assert_eq!(p.hi, rat(10));
        let s = a.sub(&b);
        assert_eq!(s.lo, rat(-1));
        assert_eq!(s.hi, rat(8));
        assert!(a.contains_zero());
        assert_eq!(b.sign(), Some(Sign::Negative));
        let r = b.recip();
        assert_eq!(r.lo, rat(-1));
        assert_eq!(r.hi, rat_frac(-1, 5));
    }

    #[test]
    fn sqrt_enclosure_matches_forty_digit_values() {
        // sqrt(2) and sqrt(10) to 40 digits.
        let cases: [(i64, &str); 4] = [
            (2, "1.414213562373095048801688724209698078570"),
            (5, "2.236067977499789696409173668731276235441"),
            (10, "3.162277660168379331998893544432718533720"),
            (1155, "33.98529093593285689234500263692393816726"),
        ];
        // The reference decimals are truncations, accurate to ~1e-38.
        let slack = Rat::new(Int::one(), Int::from(10u32).pow(38));
        for (d, digits) in cases {
            let mut e = SqrtEnclosure::new(int(d));
            let iv = e.refine_to(&binary_width(140));
            let v = rat_from_decimal(digits).unwrap();
            assert!(
                &iv.lo - &slack <= v && v <= &iv.hi + &slack,
                "sqrt({d}) enclosure misses reference value"
            );
            assert!(iv.width() <= binary_width(140));
        }
    }

    #[test]
    fn sqrt_of_perfect_square_is_exact() {
        let mut e = SqrtEnclosure::new(int(49));
        assert!(e.is_exact());
        let iv = e.refine_to(&binary_width(200));
        assert_eq!(iv, Interval::point(rat(7)));
    }

    #[test]
    fn cubic_roots_match_forty_digit_values() {
        let table: [(i64, [&str; 3]); 6] = [
            (-1, [
                "1.246979603717467061050009768008479621265",
                "-1.801937735804838252472204639014890102332",
                "-0.4450418679126288085778051289935895189327",
            ]),
            (0, [
                "1.879385241571816768108218554649462939872",
                "-1.532088886237956070404785301110833347872",
                "-0.3472963553338606977034332535386295920008",
            ]),
            (1, [
                "2.651093408937175306253240337787615403132",
                "-1.377202853972957711721750493160120413614",
                "-0.2738905549642175945314898446274949895181",
            ]),
            (2, [
                "3.507018644092976298660799923715678029026",
                "-1.285142481829785364394119873530627413427",
                "-0.2218761622631909342666800501850506155992",
            ]),
            (6, [
                "7.258845261184088581917779602596287199598",
                "-1.137762958710167690443380510311821123675",
                "-0.1210823024739208914743990922844660759232",
            ]),
            (9, [
                "10.18754420495144888359438510134079105925",
                "-1.098159083276808783484286318242539406483",
                "-0.08938512167464010011009878309825165276836",
            ]),
        ];
        // The reference decimals are truncations, accurate to ~1e-37.
        let slack = Rat::new(Int::one(), Int::from(10u32).pow(37));
        for (a, digits) in table {
            let mut roots = CubicRootEnclosures::new(a);
            let ivs = roots.refine_to(&binary_width(130));
            for (iv, d) in ivs.iter().zip(digits.iter()) {
                let v = rat_from_decimal(d).unwrap();
                assert!(
                    &iv.lo - &slack <= v && v <= &iv.hi + &slack,
                    "root enclosure for a={a} misses {d}"
                );
            }
            // The three enclosures are pairwise disjoint once refined.
            assert!(ivs[1].hi < ivs[2].lo);
            assert!(ivs[2].hi < ivs[0].lo);
        }
    }

    #[test]
    fn sign_refinement_separates_tiny_nonzero_values() {
        // The constant truncates sqrt(2) after 41 fractional digits, so
        // sqrt(2) - target is positive and roughly 1.9e-42; resolving the
        // sign needs more than one rung of the precision ladder.
        let target = rat_from_decimal("1.41421356237309504880168872420969807856967").unwrap();
        let mut enc = SqrtEnclosure::new(int(2));
        let s = sign_exact(false, |level| {
            let iv = enc.refine_to(&level_width(level));
            iv.sub(&Interval::point(target.clone()))
        });
        assert_eq!(s, Sign::Positive);
        assert_eq!(sign_exact(true, |_| Interval::zero()), Sign::Zero);
    }

    #[test]
    fn matrix_inverse_round_trips() {
        let m = vec![
            vec![rat(2), rat(1), rat(0)],
            vec![rat(0), rat_frac(1, 2), rat(3)],
            vec![rat(1), rat(0), rat(1)],
        ];
        let inv = invert_matrix(&m).unwrap();
        // m * inv = identity, checked entry-wise.
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Rat::zero();
                for k in 0..3 {
                    s += &m[i][k] * &inv[k][j];
                }
                assert_eq!(s, if i == j { Rat::one() } else { Rat::zero() });
            }
        }
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(invert_matrix(&singular).is_none());
    }

    #[test]
    fn square_free_classification() {
        assert!(is_square_free(1));
        assert!(is_square_free(2));
        assert!(is_square_free(2026 / 2)); // 1013 is prime
        assert!(is_square_free(21) && is_square_free(33) && is_square_free(77));
        assert!(!is_square_free(4) && !is_square_free(12) && !is_square_free(0));
        assert!(!is_square_free(-5));
    }

    #[test]
    fn modular_reduction_is_nonnegative() {
        assert_eq!(int_mod(&int(-7), 3), 2);
        assert_eq!(int_mod(&int(9), 3), 0);
        assert_eq!(int_mod(&int(10), 4), 2);
    }

    #[test]
    fn decimal_parsing_round_trips() {
        assert_eq!(rat_from_decimal("3").unwrap(), rat(3));
        assert_eq!(rat_from_decimal("-0.25").unwrap(), rat_frac(-1, 4));
        assert_eq!(rat_from_decimal("1.5").unwrap().to_string(), "3/2");
        assert!(rat_from_decimal("a.b").is_none());
        assert!(rat_from_decimal("").is_none());
    }
}
