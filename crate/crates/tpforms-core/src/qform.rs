//! Quadratic forms over the two field families, plus the [`NumberField`]
//! trait that lets the form and search layers treat biquadratic and
//! cubic fields uniformly.
//!
//! A rank-`n` form (`n <= 3`) is stored as its upper-triangular
//! coefficients: `Q = Σ a_ii x_i² + Σ_{i<j} a_ij x_i x_j`, so the Gram
//! matrix carries `a_ij / 2` off the diagonal. A form is *classical*
//! when all `a_ij / 2` are algebraic integers.
//!
//! Definiteness is decided exactly at every real embedding:
//! totally positive definite via leading principal minors, totally
//! positive semidefinite via all principal minors.
//!
//! The [`catalog`](catalog_build) constructs named binary and ternary
//! forms with pinned determinants and validated applicability
//! conditions; these are the forms the verification layer proves
//! indecomposable (not expressible as a sum of two nonzero totally
//! positive semidefinite integral forms).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::biquad::{BasisCase, BiquadElem, BiquadField};
use crate::exactnum::{rat, rat_frac, Int, Interval, Rat, Sign};
use crate::scubic::{CubicElem, CubicField};

/// Common interface to [`BiquadField`] and [`CubicField`].
///
/// `Elem` values are plain coordinate vectors; the field is the context
/// for every operation, exactly as with the inherent methods.
#[allow(clippy::wrong_self_convention)] // the field is the element factory
pub trait NumberField {
    type Elem: Clone + PartialEq + Eq + PartialOrd + Ord + core::fmt::Debug;

    /// Field degree = number of real embeddings = rank of the ring of
    /// integers (4 for biquadratic, 3 for cubic).
    fn degree(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rat(&self, x: &Rat) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, k: &Rat) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn as_rational(&self, a: &Self::Elem) -> Option<Rat>;
    fn trace(&self, a: &Self::Elem) -> Rat;
    fn norm(&self, a: &Self::Elem) -> Rat;
    fn embed_enclosure(&self, a: &Self::Elem, emb: usize, level: u32) -> Interval;
    fn sign_at(&self, a: &Self::Elem, emb: usize) -> Sign;
    fn automorphism_images(&self, a: &Self::Elem) -> Vec<Self::Elem>;
    fn integral_coords(&self, a: &Self::Elem) -> Option<Vec<Int>>;
    fn from_integral_coords(&self, m: &[Int]) -> Self::Elem;
    fn inverse_embedding_rows(&self, level: u32) -> Vec<Vec<Interval>>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn field_label(&self) -> String;

    fn is_integral(&self, a: &Self::Elem) -> bool {
        self.integral_coords(a).is_some()
    }

    fn is_totally_positive(&self, a: &Self::Elem) -> bool {
        (0..self.degree()).all(|k| self.sign_at(a, k) == Sign::Positive)
    }

    /// Zero or totally positive (a nonzero element cannot vanish at one
    /// embedding without vanishing identically, since its norm would be
    /// zero).
    fn is_totally_nonneg(&self, a: &Self::Elem) -> bool {
        self.is_zero(a) || self.is_totally_positive(a)
    }

    /// `a - b` is totally positive.
    fn dominates(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_totally_positive(&self.sub(a, b))
    }
}

impl NumberField for BiquadField {
    type Elem = BiquadElem;

    fn degree(&self) -> usize {
        4
    }
    fn zero(&self) -> BiquadElem {
        BiquadField::zero(self)
    }
    fn one(&self) -> BiquadElem {
        BiquadField::one(self)
    }
    fn from_rat(&self, x: &Rat) -> BiquadElem {
        BiquadField::from_rat(self, x)
    }
    fn add(&self, a: &BiquadElem, b: &BiquadElem) -> BiquadElem {
        BiquadField::add(self, a, b)
    }
    fn sub(&self, a: &BiquadElem, b: &BiquadElem) -> BiquadElem {
        BiquadField::sub(self, a, b)
    }
    fn neg(&self, a: &BiquadElem) -> BiquadElem {
        BiquadField::neg(self, a)
    }
    fn mul(&self, a: &BiquadElem, b: &BiquadElem) -> BiquadElem {
        BiquadField::mul(self, a, b)
    }
    fn scale(&self, a: &BiquadElem, k: &Rat) -> BiquadElem {
        BiquadField::scale(self, a, k)
    }
    fn inv(&self, a: &BiquadElem) -> Option<BiquadElem> {
        BiquadField::inv(self, a)
    }
    fn is_zero(&self, a: &BiquadElem) -> bool {
        a.is_zero()
    }
    fn as_rational(&self, a: &BiquadElem) -> Option<Rat> {
        a.as_rational()
    }
    fn trace(&self, a: &BiquadElem) -> Rat {
        BiquadField::trace(self, a)
    }
    fn norm(&self, a: &BiquadElem) -> Rat {
        BiquadField::norm(self, a)
    }
    fn embed_enclosure(&self, a: &BiquadElem, emb: usize, level: u32) -> Interval {
        BiquadField::embed_enclosure(self, a, emb, level)
    }
    fn sign_at(&self, a: &BiquadElem, emb: usize) -> Sign {
        BiquadField::sign_at(self, a, emb)
    }
    fn automorphism_images(&self, a: &BiquadElem) -> Vec<BiquadElem> {
        BiquadField::automorphism_images(self, a)
    }
    fn integral_coords(&self, a: &BiquadElem) -> Option<Vec<Int>> {
        BiquadField::integral_coords(self, a)
    }
    fn from_integral_coords(&self, m: &[Int]) -> BiquadElem {
        BiquadField::from_integral_coords(self, m)
    }
    fn inverse_embedding_rows(&self, level: u32) -> Vec<Vec<Interval>> {
        BiquadField::inverse_embedding_rows(self, level)
    }
    fn format_elem(&self, a: &BiquadElem) -> String {
        BiquadField::format_elem(self, a)
    }
    fn field_label(&self) -> String {
        format!("({},{})", self.p(), self.q())
    }
}

impl NumberField for CubicField {
    type Elem = CubicElem;

    fn degree(&self) -> usize {
        3
    }
    fn zero(&self) -> CubicElem {
        CubicField::zero(self)
    }
    fn one(&self) -> CubicElem {
        CubicField::one(self)
    }
    fn from_rat(&self, x: &Rat) -> CubicElem {
        CubicField::from_rat(self, x)
    }
    fn add(&self, a: &CubicElem, b: &CubicElem) -> CubicElem {
        CubicField::add(self, a, b)
    }
    fn sub(&self, a: &CubicElem, b: &CubicElem) -> CubicElem {
        CubicField::sub(self, a, b)
    }
    fn neg(&self, a: &CubicElem) -> CubicElem {
        CubicField::neg(self, a)
    }
    fn mul(&self, a: &CubicElem, b: &CubicElem) -> CubicElem {
        CubicField::mul(self, a, b)
    }
    fn scale(&self, a: &CubicElem, k: &Rat) -> CubicElem {
        CubicField::scale(self, a, k)
    }
    fn inv(&self, a: &CubicElem) -> Option<CubicElem> {
        CubicField::inv(self, a)
    }
    fn is_zero(&self, a: &CubicElem) -> bool {
        a.is_zero()
    }
    fn as_rational(&self, a: &CubicElem) -> Option<Rat> {
        a.as_rational()
    }
    fn trace(&self, a: &CubicElem) -> Rat {
        CubicField::trace(self, a)
    }
    fn norm(&self, a: &CubicElem) -> Rat {
        CubicField::norm(self, a)
    }
    fn embed_enclosure(&self, a: &CubicElem, emb: usize, level: u32) -> Interval {
        CubicField::embed_enclosure(self, a, emb, level)
    }
    fn sign_at(&self, a: &CubicElem, emb: usize) -> Sign {
        CubicField::sign_at(self, a, emb)
    }
    fn automorphism_images(&self, a: &CubicElem) -> Vec<CubicElem> {
        CubicField::automorphism_images(self, a)
    }
    fn integral_coords(&self, a: &CubicElem) -> Option<Vec<Int>> {
        CubicField::integral_coords(self, a)
    }
    fn from_integral_coords(&self, m: &[Int]) -> CubicElem {
        CubicField::from_integral_coords(self, m)
    }
    fn inverse_embedding_rows(&self, level: u32) -> Vec<Vec<Interval>> {
        CubicField::inverse_embedding_rows(self, level)
    }
    fn format_elem(&self, a: &CubicElem) -> String {
        CubicField::format_elem(self, a)
    }
    fn field_label(&self) -> String {
        format!("a={}", self.a())
    }
}

// ---------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------

/// A quadratic form of rank `n <= 3` with coefficients in a field.
/// Coefficients are stored upper-triangularly in row-major order:
/// for `n = 3` the order is `(0,0), (0,1), (0,2), (1,1), (1,2), (2,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm<E> {
    n: usize,
    coeffs: Vec<E>,
}

impl<E: Clone> QuadForm<E> {
    pub fn new(n: usize, coeffs: Vec<E>) -> QuadForm<E> {
        assert!((1..=3).contains(&n), "supported ranks are 1..=3");
        assert_eq!(coeffs.len(), n * (n + 1) / 2, "coefficient count");
        QuadForm { n, coeffs }
    }

    pub fn unary(a11: E) -> QuadForm<E> {
        QuadForm::new(1, vec![a11])
    }

    /// `a11 x² + a12 xy + a22 y²` (`a12` is the full cross coefficient).
    pub fn binary(a11: E, a12: E, a22: E) -> QuadForm<E> {
        QuadForm::new(2, vec![a11, a12, a22])
    }

    #[allow(clippy::too_many_arguments)]
    pub fn ternary(a11: E, a12: E, a13: E, a22: E, a23: E, a33: E) -> QuadForm<E> {
        QuadForm::new(3, vec![a11, a12, a13, a22, a23, a33])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.n);
        // Offset of row i in upper-triangular row-major order.
        let row_start: usize = (0..i).map(|k| self.n - k).sum();
        row_start + (j - i)
    }

    /// Coefficient `a_ij` for `i <= j`.
    pub fn coeff(&self, i: usize, j: usize) -> &E {
        &self.coeffs[self.idx(i, j)]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }
}

/// Gram-matrix entry: `a_ii` on the diagonal, `a_ij / 2` off it.
pub fn gram_entry<F: NumberField>(field: &F, form: &QuadForm<F::Elem>, i: usize, j: usize) -> F::Elem {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == j {
        form.coeff(i, j).clone()
    } else {
        field.scale(form.coeff(i, j), &rat_frac(1, 2))
    }
}

fn gram_det<F: NumberField>(field: &F, g: &[Vec<F::Elem>]) -> F::Elem {
    match g.len() {
        1 => g[0][0].clone(),
        2 => {
            let ad = field.mul(&g[0][0], &g[1][1]);
            let bc = field.mul(&g[0][1], &g[1][0]);
            field.sub(&ad, &bc)
        }
        3 => {
            let m0 = field.sub(
                &field.mul(&g[1][1], &g[2][2]),
                &field.mul(&g[1][2], &g[2][1]),
            );
            let m1 = field.sub(
                &field.mul(&g[1][0], &g[2][2]),
                &field.mul(&g[1][2], &g[2][0]),
            );
            let m2 = field.sub(
                &field.mul(&g[1][0], &g[2][1]),
                &field.mul(&g[1][1], &g[2][0]),
            );
            let t0 = field.mul(&g[0][0], &m0);
            let t1 = field.mul(&g[0][1], &m1);
            let t2 = field.mul(&g[0][2], &m2);
            field.add(&field.sub(&t0, &t1), &t2)
        }
        _ => unreachable!("rank is at most 3"),
    }
}

fn gram_submatrix<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    rows: &[usize],
) -> Vec<Vec<F::Elem>> {
    rows.iter()
        .map(|&i| rows.iter().map(|&j| gram_entry(field, form, i, j)).collect())
        .collect()
}

/// Determinant of the Gram matrix.
pub fn form_det<F: NumberField>(field: &F, form: &QuadForm<F::Elem>) -> F::Elem {
    let all: Vec<usize> = (0..form.n()).collect();
    gram_det(field, &gram_submatrix(field, form, &all))
}

/// Principal minor on index subset `rows` of the Gram matrix.
pub fn principal_minor<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    rows: &[usize],
) -> F::Elem {
    gram_det(field, &gram_submatrix(field, form, rows))
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let mut s = Vec::new();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                s.push(i);
            }
        }
        out.push(s);
    }
    out
}

/// Exact definiteness class with respect to every real embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    /// Positive definite at every embedding.
    Definite,
    /// Positive semidefinite at every embedding, but not definite.
    Semidefinite,
    /// Fails semidefiniteness at some embedding.
    NotSemidefinite,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Definiteness::Definite => "totally positive definite",
            Definiteness::Semidefinite => "totally positive semidefinite (not definite)",
            Definiteness::NotSemidefinite => "not totally positive semidefinite",
        };
        f.write_str(s)
    }
}

/// Classify a form exactly: definite via leading principal minors,
/// semidefinite via all principal minors, at every embedding.
pub fn definiteness<F: NumberField>(field: &F, form: &QuadForm<F::Elem>) -> Definiteness {
    let n = form.n();
    let leading_ok = (1..=n).all(|k| {
        let rows: Vec<usize> = (0..k).collect();
        field.is_totally_positive(&principal_minor(field, form, &rows))
    });
    if leading_ok {
        return Definiteness::Definite;
    }
    let semi_ok = subsets(n)
        .iter()
        .all(|rows| field.is_totally_nonneg(&principal_minor(field, form, rows)));
    if semi_ok {
        Definiteness::Semidefinite
    } else {
        Definiteness::NotSemidefinite
    }
}

/// All coefficients `a_ij` are algebraic integers.
pub fn is_integral_form<F: NumberField>(field: &F, form: &QuadForm<F::Elem>) -> bool {
    form.coeffs().iter().all(|c| field.is_integral(c))
}

/// All Gram entries `a_ij / 2` (`i < j`) are algebraic integers.
pub fn is_classical<F: NumberField>(field: &F, form: &QuadForm<F::Elem>) -> bool {
    let n = form.n();
    for i in 0..n {
        for j in (i + 1)..n {
            if !field.is_integral(&gram_entry(field, form, i, j)) {
                return false;
            }
        }
    }
    true
}

/// Coefficient-wise sum of two forms of equal rank.
pub fn form_add<F: NumberField>(
    field: &F,
    a: &QuadForm<F::Elem>,
    b: &QuadForm<F::Elem>,
) -> QuadForm<F::Elem> {
    assert_eq!(a.n(), b.n());
    let coeffs = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| field.add(x, y))
        .collect();
    QuadForm::new(a.n(), coeffs)
}

/// Coefficient-wise difference of two forms of equal rank.
pub fn form_sub<F: NumberField>(
    field: &F,
    a: &QuadForm<F::Elem>,
    b: &QuadForm<F::Elem>,
) -> QuadForm<F::Elem> {
    assert_eq!(a.n(), b.n());
    let coeffs = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| field.sub(x, y))
        .collect();
    QuadForm::new(a.n(), coeffs)
}

pub fn form_is_zero<F: NumberField>(field: &F, a: &QuadForm<F::Elem>) -> bool {
    a.coeffs().iter().all(|c| field.is_zero(c))
}

/// Evaluate the form at a vector of field elements.
pub fn evaluate<F: NumberField>(
    field: &F,
    form: &QuadForm<F::Elem>,
    xs: &[F::Elem],
) -> F::Elem {
    assert_eq!(xs.len(), form.n());
    let mut acc = field.zero();
    for i in 0..form.n() {
        for j in i..form.n() {
            let term = field.mul(form.coeff(i, j), &field.mul(&xs[i], &xs[j]));
            acc = field.add(&acc, &term);
        }
    }
    acc
}

// ---------------------------------------------------------------------
// Catalog of named forms
// ---------------------------------------------------------------------

/// Parameters accepted by [`catalog_build`]. Unused fields are ignored
/// by keys that do not need them.
#[derive(Clone, Debug, Default)]
pub struct CatalogParams {
    /// First radicand of a biquadratic field.
    pub p: Option<i64>,
    /// Second radicand of a biquadratic field.
    pub q: Option<i64>,
    /// Radicand selecting the quadratic subfield a generic form lives over.
    pub d: Option<i64>,
    /// Cubic field parameter.
    pub a: Option<i64>,
    /// Triangle index `v`.
    pub v: Option<i64>,
    /// Triangle index `w`.
    pub w: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    UnknownKey(String),
    MissingParam(&'static str),
    NotApplicable(String),
    Field(String),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownKey(k) => write!(f, "unknown catalog key: {k}"),
            CatalogError::MissingParam(p) => write!(f, "missing parameter: {p}"),
            CatalogError::NotApplicable(msg) => write!(f, "conditions not met: {msg}"),
            CatalogError::Field(msg) => write!(f, "field construction failed: {msg}"),
        }
    }
}

/// A catalog form together with its field, its pinned determinant, and
/// a short description.
#[allow(clippy::large_enum_variant)] // entries are built one at a time
pub enum CatalogEntry {
    Biquad {
        field: BiquadField,
        form: QuadForm<BiquadElem>,
        det: BiquadElem,
        note: String,
    },
    Cubic {
        field: CubicField,
        form: QuadForm<CubicElem>,
        det: CubicElem,
        note: String,
    },
}

/// All recognized catalog keys.
pub fn catalog_keys() -> Vec<&'static str> {
    vec![
        "P3.2",
        "TY-3mod4",
        "TY-2mod4",
        "TY-1mod4-1",
        "TY-1mod4-2",
        "TY-1mod4-3",
        "P4.6-1",
        "P4.6-2",
        "P4.7",
        "P4.8-1",
        "P4.8-2",
        "P4.8-3",
        "P4.9-1",
        "P4.9-2",
        "P4.9-3",
        "P4.10",
        "P4.11",
        "P4.12",
        "P4.13",
        "P4.13-s11",
        "Ex4.5",
        "P5.3-2",
        "P5.3-3",
        "P5.4",
        "P5.5",
        "T-twist-1",
        "T-twist-2",
    ]
}

fn need<T: Copy>(v: Option<T>, name: &'static str) -> Result<T, CatalogError> {
    v.ok_or(CatalogError::MissingParam(name))
}

fn biquad_field(params: &CatalogParams) -> Result<BiquadField, CatalogError> {
    let p = need(params.p, "p")?;
    let q = need(params.q, "q")?;
    BiquadField::new(p, q).map_err(|e| CatalogError::Field(format!("{e}")))
}

fn cubic_field(params: &CatalogParams) -> Result<CubicField, CatalogError> {
    let a = need(params.a, "a")?;
    CubicField::new(a).map_err(|e| CatalogError::Field(format!("{e}")))
}

/// Build the generic binary form over `Q(sqrt(d))` inside `field`,
/// keyed by the congruence class of `d`. Returns the form and its
/// pinned determinant.
fn ty_form(
    field: &BiquadField,
    d: i64,
    variant: &str,
) -> Result<(QuadForm<BiquadElem>, BiquadElem, String), CatalogError> {
    let sqrt_d = field
        .sqrt_elem(d)
        .ok_or_else(|| CatalogError::NotApplicable(format!("{d} is not a radicand of {field}")))?;
    if variant.starts_with("TY-1mod4") && d <= 17 {
        return Err(CatalogError::NotApplicable(format!(
            "the 1 (mod 4) family needs d > 17, got {d}"
        )));
    }
    let two = field.from_int(2);
    let one = field.one();
    match variant {
        "TY-3mod4" => {
            if d % 4 != 3 {
                return Err(CatalogError::NotApplicable(format!("{d} ≢ 3 (mod 4)")));
            }
            // 2x² + 2√d·xy + ((d+1)/2)y², determinant 1.
            let a12 = field.scale(&sqrt_d, &rat(2));
            let a22 = field.from_rat(&rat_frac(d + 1, 2));
            let form = QuadForm::binary(two, a12, a22);
            Ok((form, one, format!("binary over sqrt({d}), determinant 1")))
        }
        "TY-2mod4" => {
            if d % 4 != 2 {
                return Err(CatalogError::NotApplicable(format!("{d} ≢ 2 (mod 4)")));
            }
            // 2x² + 2(1+√d)xy + (d/2 + 1 + √d)y², determinant 1.
            let a12 = field.scale(&field.add(&one, &sqrt_d), &rat(2));
            let a22 = field.add(&field.from_rat(&rat_frac(d + 2, 2)), &sqrt_d);
            let form = QuadForm::binary(two, a12, a22);
            Ok((form, one, format!("binary over sqrt({d}), determinant 1")))
        }
        "TY-1mod4-1" => {
            if d % 12 != 5 {
                return Err(CatalogError::NotApplicable(format!("{d} ≢ 5 (mod 12)")));
            }
            // 3x² + 2(3+√d)xy + ((d+10)/3 + 2√d)y², determinant 1.
            let three = field.from_int(3);
            let a12 = field.scale(&field.add(&field.from_int(3), &sqrt_d), &rat(2));
            let a22 = field.add(
                &field.from_rat(&rat_frac(d + 10, 3)),
                &field.scale(&sqrt_d, &rat(2)),
            );
            let form = QuadForm::binary(three, a12, a22);
            Ok((form, one, format!("binary over sqrt({d}), determinant 1")))
        }
        "TY-1mod4-2" => {
            if d % 12 != 1 {
                return Err(CatalogError::NotApplicable(format!("{d} ≢ 1 (mod 12)")));
            }
            // 3x² + 2(3+√d)xy + ((d+11)/3 + 2√d)y², determinant 2.
            let three = field.from_int(3);
            let a12 = field.scale(&field.add(&field.from_int(3), &sqrt_d), &rat(2));
            let a22 = field.add(
                &field.from_rat(&rat_frac(d + 11, 3)),
                &field.scale(&sqrt_d, &rat(2)),
            );
            let form = QuadForm::binary(three, a12, a22);
            Ok((form, field.from_int(2), format!("binary over sqrt({d}), determinant 2")))
        }
        "TY-1mod4-3" => {
            if d % 12 != 9 {
                return Err(CatalogError::NotApplicable(format!("{d} ≢ 9 (mod 12)")));
            }
            // 4x² + 2(2+√d)xy + ((d+7)/4 + √d)y², determinant 3.
            let four = field.from_int(4);
            let a12 = field.scale(&field.add(&field.from_int(2), &sqrt_d), &rat(2));
            let a22 = field.add(&field.from_rat(&rat_frac(d + 7, 4)), &sqrt_d);
            let form = QuadForm::binary(four, a12, a22);
            Ok((form, field.from_int(3), format!("binary over sqrt({d}), determinant 3")))
        }
        _ => Err(CatalogError::UnknownKey(String::from(variant))),
    }
}

fn ty_variant_for(d: i64) -> Result<&'static str, CatalogError> {
    match d % 12 {
        5 => Ok("TY-1mod4-1"),
        1 => Ok("TY-1mod4-2"),
        9 => Ok("TY-1mod4-3"),
        _ => Err(CatalogError::NotApplicable(format!("{d} ≢ 1 (mod 4)"))),
    }
}

/// Construct the catalog entry `key` with the given parameters,
/// validating every applicability condition exactly.
pub fn catalog_build(key: &str, params: &CatalogParams) -> Result<CatalogEntry, CatalogError> {
    match key {
        "P3.2" => {
            // x² + xy + y², rank 2, determinant 3/4, never classical;
            // works over any of the supported fields.
            if params.a.is_some() {
                let field = cubic_field(params)?;
                let form = QuadForm::binary(field.one(), field.one(), field.one());
                let det = field.from_rat(&rat_frac(3, 4));
                return Ok(CatalogEntry::Cubic {
                    field,
                    form,
                    det,
                    note: String::from("non-classical binary with determinant 3/4"),
                });
            }
            let field = biquad_field(params)?;
            let form = QuadForm::binary(field.one(), field.one(), field.one());
            let det = field.from_rat(&rat_frac(3, 4));
            Ok(CatalogEntry::Biquad {
                field,
                form,
                det,
                note: String::from("non-classical binary with determinant 3/4"),
            })
        }
        "TY-3mod4" | "TY-2mod4" | "TY-1mod4-1" | "TY-1mod4-2" | "TY-1mod4-3" => {
            let field = biquad_field(params)?;
            let d = need(params.d, "d")?;
            let (form, det, note) = ty_form(&field, d, key)?;
            Ok(CatalogEntry::Biquad { field, form, det, note })
        }
        "P4.6-1" => {
            let field = biquad_field(params)?;
            if !matches!(field.case(), BasisCase::C1 | BasisCase::C2) {
                return Err(CatalogError::NotApplicable(format!(
                    "first radicand of {field} is not ≡ 2 (mod 4)"
                )));
            }
            let d = field.p();
            let (form, det, note) = ty_form(&field, d, "TY-2mod4")?;
            Ok(CatalogEntry::Biquad { field, form, det, note })
        }
        "P4.6-2" => {
            let field = biquad_field(params)?;
            if field.case() != BasisCase::C3 {
                return Err(CatalogError::NotApplicable(format!(
                    "first radicand of {field} is not ≡ 3 (mod 4)"
                )));
            }
            let d = field.p();
            let (form, det, note) = ty_form(&field, d, "TY-3mod4")?;
            Ok(CatalogEntry::Biquad { field, form, det, note })
        }
        "P4.7" => {
            let field = biquad_field(params)?;
            if field.case() != BasisCase::C1 {
                return Err(CatalogError::NotApplicable(format!(
                    "{field} does not have radicands ≡ 2 and 3 (mod 4)"
                )));
            }
            let d = field.q();
            let (form, det, note) = ty_form(&field, d, "TY-3mod4")?;
            Ok(CatalogEntry::Biquad { field, form, det, note })
        }
        "P4.8-1" | "P4.8-2" | "P4.8-3" => {
            let field = biquad_field(params)?;
            if !matches!(field.case(), BasisCase::C2 | BasisCase::C3) {
                return Err(CatalogError::NotApplicable(format!(
                    "{field} is not in a mixed congruence case"
                )));
            }
            let d = field.q();
            if d <= 21 {
                return Err(CatalogError::NotApplicable(format!("{d} <= 21")));
            }
            if d >= field.p() || d >= field.r() {
                return Err(CatalogError::NotApplicable(format!(
                    "{d} is not the smallest radicand"
                )));
            }
            let variant = ty_variant_for(d)?;
            if variant != key_variant(key) {
                return Err(CatalogError::NotApplicable(format!(
                    "{d} (mod 12) selects {}, not {key}",
                    variant
                )));
            }
            let (form, det, note) = ty_form(&field, d, variant)?;
            Ok(CatalogEntry::Biquad { field, form, det, note })
        }
        "P4.9-1" | "P4.9-2" | "P4.9-3" => {
            let field = biquad_field(params)?;
            if !matches!(field.case(), BasisCase::C4a | BasisCase::C4b) {
                return Err(CatalogError::NotApplicable(format!(
                    "{field} radicands are not all ≡ 1 (mod 4)"
                )));
            }
            let d = field.p();
            if d <= 21 {
                return Err(CatalogError::NotApplicable(format!("{d} <= 21")));
            }
            if d >= field.q() || d >= field.r() {
                return Err(CatalogError::NotApplicable(format!(
                    "{d} is not the smallest radicand"
                )));
            }
            let variant = ty_variant_for(d)?;
            if variant != key_variant(key) {
                return Err(CatalogError::NotApplicable(format!(
                    "{d} (mod 12) selects {}, not {key}",
                    variant
                )));
            }
            let (form, det, note) = ty_form(&field, d, variant)?;
            Ok(CatalogEntry::Biquad { field, form, det, note })
        }
        "P4.10" => {
            let field = biquad_field(params)?;
            if field.p() != 5 || field.q() <= 5 {
                return Err(CatalogError::NotApplicable(format!(
                    "{field} is not (5, q) with q > 5"
                )));
            }
            // 2x² + 2xy + (3+√5)y², determinant 5 + 2√5.
            let s5 = field.sqrt_elem(5).unwrap();
            let a22 = field.add(&field.from_int(3), &s5);
            let form = QuadForm::binary(field.from_int(2), field.from_int(2), a22);
            let det = field.add(&field.from_int(5), &field.scale(&s5, &rat(2)));
            Ok(CatalogEntry::Biquad {
                field,
                form,
                det,
                note: String::from("binary over sqrt(5), determinant 5 + 2*sqrt(5)"),
            })
        }
        "P4.11" => {
            let field = biquad_field(params)?;
            if field.p() != 13 || field.q() <= 13 {
                return Err(CatalogError::NotApplicable(format!(
                    "{field} is not (13, q) with q > 13"
                )));
            }
            // 2x² + (1+√13)xy + 3y², determinant (5-√13)/2.
            let s13 = field.sqrt_elem(13).unwrap();
            let a12 = field.add(&field.one(), &s13);
            let form = QuadForm::binary(field.from_int(2), a12, field.from_int(3));
            let det = field.scale(
                &field.sub(&field.from_int(5), &s13),
                &rat_frac(1, 2),
            );
            Ok(CatalogEntry::Biquad {
                field,
                form,
                det,
                note: String::from("binary over sqrt(13), determinant (5 - sqrt(13))/2"),
            })
        }
        "P4.12" => {
            let field = biquad_field(params)?;
            if field.p() != 17 || field.q() <= 17 {
                return Err(CatalogError::NotApplicable(format!(
                    "{field} is not (17, q) with q > 17"
                )));
            }
            // ((5+√17)/2)x² + 2xy + ((5-√17)/2)y², determinant 1.
            let s17 = field.sqrt_elem(17).unwrap();
            let a11 = field.scale(&field.add(&field.from_int(5), &s17), &rat_frac(1, 2));
            let a22 = field.scale(&field.sub(&field.from_int(5), &s17), &rat_frac(1, 2));
            let form = QuadForm::binary(a11, field.from_int(2), a22);
            let det = field.one();
            Ok(CatalogEntry::Biquad {
                field,
                form,
                det,
                note: String::from("binary over sqrt(17), determinant 1"),
            })
        }
        "P4.13" => {
            let field = biquad_field(params)?;
            if field.p() != 21 {
                return Err(CatalogError::NotApplicable(format!(
                    "{field} is not (21, q)"
                )));
            }
            if field.q() <= 21 || field.r() <= 21 {
                return Err(CatalogError::NotApplicable(
                    String::from("both other radicands must exceed 21"),
                ));
            }
            if field.q() == 33 {
                return Err(CatalogError::NotApplicable(String::from(
                    "the field (21, 33) has its own dedicated form",
                )));
            }
            // 2x² + (3+√21)xy + (5+√21)y², determinant (5+√21)/2.
            let s21 = field.sqrt_elem(21).unwrap();
            let a12 = field.add(&field.from_int(3), &s21);
            let a22 = field.add(&field.from_int(5), &s21);
            let det = field.scale(&a22, &rat_frac(1, 2));
            let form = QuadForm::binary(field.from_int(2), a12, a22);
            Ok(CatalogEntry::Biquad {
                field,
                form,
                det,
                note: String::from("binary over sqrt(21), determinant (5 + sqrt(21))/2"),
            })
        }
        "P4.13-s11" => {
            let field = BiquadField::new(21, 33).map_err(|e| CatalogError::Field(format!("{e}")))?;
            // (6+√33)x² + 2xy + (6-√33)y², determinant 2.
            let s33 = field.sqrt_elem(33).unwrap();
            let a11 = field.add(&field.from_int(6), &s33);
            let a22 = field.sub(&field.from_int(6), &s33);
            let form = QuadForm::binary(a11, field.from_int(2), a22);
            Ok(CatalogEntry::Biquad {
                field,
                form,
                det: field_from_int_biquad(21, 33, 2)?,
                note: String::from("binary over sqrt(33) in (21, 33), determinant 2"),
            })
        }
        "Ex4.5" => {
            let field = BiquadField::new(2, 5).map_err(|e| CatalogError::Field(format!("{e}")))?;
            // (7+2√10)x² + 2xy + (7-2√10)y², determinant 8.
            let s10 = field.sqrt_elem(10).unwrap();
            let a11 = field.add(&field.from_int(7), &field.scale(&s10, &rat(2)));
            let a22 = field.sub(&field.from_int(7), &field.scale(&s10, &rat(2)));
            let form = QuadForm::binary(a11, field.from_int(2), a22);
            let det = field.from_int(8);
            Ok(CatalogEntry::Biquad {
                field,
                form,
                det,
                note: String::from(
                    "decomposable binary with indecomposable diagonal, determinant 8",
                ),
            })
        }
        "P5.3-2" | "P5.3-3" => {
            let field = cubic_field(params)?;
            let v = need(params.v, "v")?;
            let w = need(params.w, "w")?;
            if !field.in_triangle(v, w) {
                return Err(CatalogError::NotApplicable(format!(
                    "({v},{w}) is not a triangle index for a={}",
                    field.a()
                )));
            }
            let alpha = field.triangle_elem(v, w);
            let u: i64 = if key == "P5.3-2" { 2 } else { 3 };
            let u_alpha_minus_1 = field.sub(&field.scale(&alpha, &rat(u)), &field.one());
            if !field.is_totally_positive(&u_alpha_minus_1) {
                return Err(CatalogError::NotApplicable(format!(
                    "{u}·α({v},{w}) - 1 is not totally positive"
                )));
            }
            if u == 3 {
                let two_alpha_minus_1 = field.sub(&field.scale(&alpha, &rat(2)), &field.one());
                if field.is_totally_nonneg(&two_alpha_minus_1) {
                    return Err(CatalogError::NotApplicable(format!(
                        "2·α({v},{w}) ⪰ 1, so the smaller leading coefficient applies"
                    )));
                }
            }
            let form = QuadForm::binary(field.from_int(u), field.from_int(2), alpha);
            Ok(CatalogEntry::Cubic {
                field,
                det: u_alpha_minus_1,
                form,
                note: format!("binary {u}x² + 2xy + α({v},{w})y²"),
            })
        }
        "P5.4" => {
            let field = cubic_field(params)?;
            // 2x² + 2xy + (1+ρ+ρ²)y², determinant 1 + 2ρ + 2ρ².
            let alpha = CubicElem::from_ints([1, 1, 1]);
            let det = CubicElem::from_ints([1, 2, 2]);
            let form = QuadForm::binary(field.from_int(2), field.from_int(2), alpha);
            Ok(CatalogEntry::Cubic {
                field,
                form,
                det,
                note: String::from("binary 2x² + 2xy + (1+ρ+ρ²)y²"),
            })
        }
        "P5.5" => {
            let field = cubic_field(params)?;
            // Diagonal (1+ρ+ρ², 1+ρ'+ρ'², 1+ρ''+ρ''²) with cross terms
            // 2xy + 2yz; determinant 1+ρ'+ρ'².
            let a1 = CubicElem::from_ints([1, 1, 1]);
            let a2 = field.add(
                &field.add(&field.one(), &field.conj(&field.rho())),
                &field.mul(&field.conj(&field.rho()), &field.conj(&field.rho())),
            );
            let a3 = field.add(
                &field.add(&field.one(), &field.conj2(&field.rho())),
                &field.mul(&field.conj2(&field.rho()), &field.conj2(&field.rho())),
            );
            let two = field.from_int(2);
            let form = QuadForm::ternary(a1, two.clone(), field.zero(), a2.clone(), two, a3);
            Ok(CatalogEntry::Cubic {
                field,
                form,
                det: a2,
                note: String::from("ternary with Galois-conjugate diagonal"),
            })
        }
        "T-twist-1" | "T-twist-2" => {
            let field = cubic_field(params)?;
            let v = need(params.v, "v")?;
            let w = need(params.w, "w")?;
            if !field.doubling_points().contains(&(v, w)) {
                return Err(CatalogError::NotApplicable(format!(
                    "({v},{w}) does not satisfy 2·α ≻ 1 for a={}",
                    field.a()
                )));
            }
            let (lambda, talpha) = if key == "T-twist-1" {
                let (tv, tw) = field.t1_index(v, w);
                (field.conj_rho_inv_sq(), field.triangle_elem(tv, tw))
            } else {
                let (tv, tw) = field.t2_index(v, w);
                (field.rho_sq(), field.triangle_elem(tv, tw))
            };
            // 2λx² + 2λxy + T(α)y², determinant λ·(2T(α) - λ).
            let a11 = field.scale(&lambda, &rat(2));
            let det = field.mul(
                &lambda,
                &field.sub(&field.scale(&talpha, &rat(2)), &lambda),
            );
            let form = QuadForm::binary(a11.clone(), a11, talpha);
            Ok(CatalogEntry::Cubic {
                field,
                form,
                det,
                note: format!("unit-twisted binary at triangle index ({v},{w})"),
            })
        }
        other => Err(CatalogError::UnknownKey(String::from(other))),
    }
}

fn key_variant(key: &str) -> &'static str {
    match key {
        "P4.8-1" | "P4.9-1" => "TY-1mod4-1",
        "P4.8-2" | "P4.9-2" => "TY-1mod4-2",
        "P4.8-3" | "P4.9-3" => "TY-1mod4-3",
        _ => unreachable!(),
    }
}

fn field_from_int_biquad(p: i64, q: i64, n: i64) -> Result<BiquadElem, CatalogError> {
    let field = BiquadField::new(p, q).map_err(|e| CatalogError::Field(format!("{e}")))?;
    Ok(field.from_int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn b(v: [i64; 4]) -> BiquadElem {
        BiquadElem::from_coords([rat(v[0]), rat(v[1]), rat(v[2]), rat(v[3])])
    }

    #[test]
    fn determinants_of_catalog_forms_match_pinned_values() {
        let checks: Vec<(&str, CatalogParams)> = vec![
            ("P4.6-1", CatalogParams { p: Some(2), q: Some(3), ..Default::default() }),
            ("P4.6-2", CatalogParams { p: Some(3), q: Some(5), ..Default::default() }),
            ("P4.7", CatalogParams { p: Some(2), q: Some(3), ..Default::default() }),
            ("P4.10", CatalogParams { p: Some(5), q: Some(13), ..Default::default() }),
            ("P4.11", CatalogParams { p: Some(13), q: Some(17), ..Default::default() }),
            ("P4.12", CatalogParams { p: Some(17), q: Some(29), ..Default::default() }),
            ("P4.13", CatalogParams { p: Some(21), q: Some(29), ..Default::default() }),
            ("P4.13-s11", CatalogParams::default()),
            ("Ex4.5", CatalogParams::default()),
            ("P5.4", CatalogParams { a: Some(3), ..Default::default() }),
            (
                "P5.3-2",
                CatalogParams { a: Some(6), v: Some(0), w: Some(5), ..Default::default() },
            ),
        ];
        for (key, params) in checks {
            match catalog_build(key, &params).unwrap() {
                CatalogEntry::Biquad { field, form, det, .. } => {
                    assert_eq!(form_det(&field, &form), det, "determinant of {key}");
                    assert_eq!(definiteness(&field, &form), Definiteness::Definite, "{key}");
                    assert!(is_integral_form(&field, &form), "{key} integral");
                }
                CatalogEntry::Cubic { field, form, det, .. } => {
                    assert_eq!(form_det(&field, &form), det, "determinant of {key}");
                    assert_eq!(definiteness(&field, &form), Definiteness::Definite, "{key}");
                    assert!(is_integral_form(&field, &form), "{key} integral");
                }
            }
        }
    }

    #[test]
    fn non_classical_form_is_detected() {
        let params = CatalogParams { p: Some(2), q: Some(3), ..Default::default() };
        let entry = catalog_build("P3.2", &params).unwrap();
        match entry {
            CatalogEntry::Biquad { field, form, det, .. } => {
                assert_eq!(form_det(&field, &form), det);
                assert!(!is_classical(&field, &form));
                assert_eq!(definiteness(&field, &form), Definiteness::Definite);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn classical_flag_matches_gram_integrality() {
        let params = CatalogParams { p: Some(21), q: Some(29), ..Default::default() };
        if let CatalogEntry::Biquad { field, form, .. } = catalog_build("P4.13", &params).unwrap() {
            // a12 = 3 + sqrt(21); half of it is (3+sqrt(21))/2, integral
            // because 21 ≡ 1 (mod 4).
            assert!(is_classical(&field, &form));
        } else {
            unreachable!()
        }
    }

    #[test]
    fn applicability_conditions_are_enforced() {
        // (21, 33) must not use the generic (21, q) form.
        let params = CatalogParams { p: Some(21), q: Some(33), ..Default::default() };
        assert!(matches!(
            catalog_build("P4.13", &params),
            Err(CatalogError::NotApplicable(_))
        ));
        // A congruence-variant mismatch is rejected: 29 ≡ 5 (mod 12).
        let params = CatalogParams { p: Some(33), q: Some(29), ..Default::default() };
        assert!(catalog_build("P4.8-2", &params).is_err());
        // Missing parameters are reported.
        assert!(matches!(
            catalog_build("P4.10", &CatalogParams::default()),
            Err(CatalogError::MissingParam("p"))
        ));
        assert!(matches!(
            catalog_build("nope", &CatalogParams::default()),
            Err(CatalogError::UnknownKey(_))
        ));
    }

    #[test]
    fn semidefinite_and_indefinite_forms_are_classified() {
        let field = BiquadField::new(2, 5).unwrap();
        // One rank-1 summand of the decomposable catalog example Ex4.5.
        let a11 = BiquadElem::from_coords([rat_frac(7, 2), rat(1), rat_frac(1, 2), rat(1)]);
        let a12 = b([1, 0, -1, 0]);
        let a22 = BiquadElem::from_coords([rat_frac(7, 2), rat(-1), rat_frac(1, 2), rat(-1)]);
        let q1 = QuadForm::binary(a11, a12, a22);
        assert_eq!(definiteness(&field, &q1), Definiteness::Semidefinite);
        assert!(field.is_zero(&form_det(&field, &q1)));
        let zero_form = QuadForm::binary(field.zero(), field.zero(), field.zero());
        assert!(form_is_zero(&field, &zero_form));
        assert!(!form_is_zero(&field, &q1));

        let indef = QuadForm::binary(field.from_int(1), field.zero(), field.from_int(-3));
        assert_eq!(definiteness(&field, &indef), Definiteness::NotSemidefinite);

        // 1 + sqrt(2) is positive at one embedding only: x²(1+√2) is not
        // totally semidefinite.
        let skew = QuadForm::unary(b([1, 1, 0, 0]));
        assert_eq!(definiteness(&field, &skew), Definiteness::NotSemidefinite);
    }

    #[test]
    fn evaluation_and_gram_are_consistent() {
        let field = CubicField::new(2).unwrap();
        let form = QuadForm::binary(field.from_int(2), field.from_int(2), CubicElem::from_ints([1, 1, 1]));
        // Q(1, 1) = 2 + 2 + (1+ρ+ρ²).
        let v = evaluate(&field, &form, &[field.one(), field.one()]);
        assert_eq!(v, CubicElem::from_ints([5, 1, 1]));
        // Determinant equals a11·a22 - (a12/2)².
        let det = form_det(&field, &form);
        let direct = field.sub(
            &field.mul(&field.from_int(2), &CubicElem::from_ints([1, 1, 1])),
            &field.one(),
        );
        assert_eq!(det, direct);
    }

    #[test]
    fn form_addition_is_coefficientwise() {
        let field = BiquadField::new(2, 3).unwrap();
        let q1 = QuadForm::binary(field.from_int(1), field.from_int(2), field.from_int(3));
        let q2 = QuadForm::binary(field.from_int(4), field.from_int(5), field.from_int(6));
        let s = form_add(&field, &q1, &q2);
        assert_eq!(*s.coeff(0, 0), field.from_int(5));
        assert_eq!(*s.coeff(0, 1), field.from_int(7));
        assert_eq!(*s.coeff(1, 1), field.from_int(9));
    }

    #[test]
    fn twisted_forms_have_unit_scaled_determinants() {
        let field = CubicField::new(6).unwrap();
        for key in ["T-twist-1", "T-twist-2"] {
            for (v, w) in field.doubling_points() {
                let params = CatalogParams {
                    a: Some(6),
                    v: Some(v),
                    w: Some(w),
                    ..Default::default()
                };
                match catalog_build(key, &params).unwrap() {
                    CatalogEntry::Cubic { field, form, det, .. } => {
                        assert_eq!(form_det(&field, &form), det, "{key} at ({v},{w})");
                        assert_eq!(definiteness(&field, &form), Definiteness::Definite);
                        assert!(is_integral_form(&field, &form));
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
}
