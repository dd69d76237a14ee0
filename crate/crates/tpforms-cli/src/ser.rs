//! JSON data-transfer types and exact string conversions.
//!
//! Every number crossing the CLI boundary is a reduced rational string
//! (`"7/2"`, `"-1"`, `"0"`); no floating point appears anywhere.
//! Elements are coordinate vectors over the field's display basis:
//! `(1, sqrt(p), sqrt(q), sqrt(r))` for biquadratic fields and
//! `(1, rho, rho^2)` for cubic fields. Field ids are `"(p,q)"` and
//! `"a"` respectively.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use tpforms_core::biquad::{BiquadElem, BiquadField};
use tpforms_core::qform::{NumberField, QuadForm};
use tpforms_core::scubic::{CubicElem, CubicField};
use tpforms_core::Rat;

// ---------------------------------------------------------------------
// Field identifiers and handles
// ---------------------------------------------------------------------

/// Parsed field identifier: `"(p,q)"` or a bare integer `"a"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldId {
    Biquad(i64, i64),
    Cubic(i64),
}

impl FieldId {
    pub fn parse(s: &str) -> Result<FieldId, String> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(format!("field id {t:?} must look like \"(p,q)\""));
            }
            let p: i64 = parts[0].parse().map_err(|_| format!("bad radicand {:?}", parts[0]))?;
            let q: i64 = parts[1].parse().map_err(|_| format!("bad radicand {:?}", parts[1]))?;
            Ok(FieldId::Biquad(p, q))
        } else {
            let a: i64 = t.parse().map_err(|_| {
                format!("field id {t:?} must be \"(p,q)\" or a cubic parameter integer")
            })?;
            Ok(FieldId::Cubic(a))
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldId::Biquad(p, q) => format!("({p},{q})"),
            FieldId::Cubic(a) => format!("{a}"),
        }
    }
}

/// A constructed field of either family.
#[allow(clippy::large_enum_variant)] // constructed once per invocation
pub enum AnyField {
    Biquad(BiquadField),
    Cubic(CubicField),
}

impl AnyField {
    pub fn open(id: FieldId) -> Result<AnyField, String> {
        match id {
            FieldId::Biquad(p, q) => {
                BiquadField::new(p, q).map(AnyField::Biquad).map_err(|e| e.to_string())
            }
            FieldId::Cubic(a) => {
                CubicField::new(a).map(AnyField::Cubic).map_err(|e| e.to_string())
            }
        }
    }
}

// ---------------------------------------------------------------------
// Exact rational strings
// ---------------------------------------------------------------------

pub fn rat_to_string(x: &Rat) -> String {
    format!("{x}")
}

pub fn rat_from_string(s: &str) -> Result<Rat, String> {
    s.trim().parse::<Rat>().map_err(|_| format!("bad rational {s:?} (expected \"num/den\")"))
}

pub fn coords_to_strings(c: &[Rat]) -> Vec<String> {
    c.iter().map(rat_to_string).collect()
}

pub fn coords_from_strings(v: &[String], want: usize) -> Result<Vec<Rat>, String> {
    if v.len() != want {
        return Err(format!("expected {want} coordinates, got {}", v.len()));
    }
    v.iter().map(|s| rat_from_string(s)).collect()
}

pub fn biquad_elem_from_strings(v: &[String]) -> Result<BiquadElem, String> {
    let c = coords_from_strings(v, 4)?;
    Ok(BiquadElem::from_coords([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
}

pub fn cubic_elem_from_strings(v: &[String]) -> Result<CubicElem, String> {
    let c = coords_from_strings(v, 3)?;
    Ok(CubicElem::from_coords([c[0].clone(), c[1].clone(), c[2].clone()]))
}

// ---------------------------------------------------------------------
// Compact pretty-printing (sums of radical/power terms)
// ---------------------------------------------------------------------

fn push_term(out: &mut String, k: &Rat, sym: Option<&str>) {
    let mag = k.abs();
    if out.is_empty() {
        if k.is_negative() {
            out.push('-');
        }
    } else if k.is_negative() {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    match sym {
        None => out.push_str(&rat_to_string(&mag)),
        Some(s) => {
            if mag.is_one() {
                out.push_str(s);
            } else {
                out.push_str(&format!("{}*{}", rat_to_string(&mag), s));
            }
        }
    }
}

/// `"2 + sqrt(2)"`-style rendering of a biquadratic element.
pub fn pretty_biquad(field: &BiquadField, x: &BiquadElem) -> String {
    let [p, q, r] = field.radicands();
    let syms = [format!("sqrt({p})"), format!("sqrt({q})"), format!("sqrt({r})")];
    let mut out = String::new();
    if !x.c[0].is_zero() {
        push_term(&mut out, &x.c[0], None);
    }
    for (sym, k) in syms.iter().zip(&x.c[1..]) {
        if !k.is_zero() {
            push_term(&mut out, k, Some(sym));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `"3 - 2*rho + rho^2"`-style rendering of a cubic element.
pub fn pretty_cubic(x: &CubicElem) -> String {
    let syms = ["rho", "rho^2"];
    let mut out = String::new();
    if !x.c[0].is_zero() {
        push_term(&mut out, &x.c[0], None);
    }
    for (sym, k) in syms.iter().zip(&x.c[1..]) {
        if !k.is_zero() {
            push_term(&mut out, k, Some(sym));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

// ---------------------------------------------------------------------
// Element and form DTOs
// ---------------------------------------------------------------------

/// Wire form of a field element.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElemDto {
    pub field: String,
    pub coords: Vec<String>,
}

/// Wire form of a quadratic form: upper-triangular coefficients
/// `[i, j, coords]` with `0 <= i <= j < n`, storing the full
/// off-diagonal coefficient (twice the Gram entry).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormDto {
    pub field: String,
    pub n: usize,
    pub coeffs: Vec<(usize, usize, Vec<String>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<bool>,
}

impl FormDto {
    /// Assemble the coefficient table into a [`QuadForm`]; entries not
    /// listed default to zero.
    pub fn build<F, P>(&self, field: &F, parse: P) -> Result<QuadForm<F::Elem>, String>
    where
        F: NumberField,
        P: Fn(&[String]) -> Result<F::Elem, String>,
    {
        if !(1..=3).contains(&self.n) {
            return Err(format!("rank {} is out of the supported range 1..=3", self.n));
        }
        let n = self.n;
        let mut table = vec![field.zero(); n * (n + 1) / 2];
        for (i, j, coords) in &self.coeffs {
            if *i > *j || *j >= n {
                return Err(format!("coefficient index ({i},{j}) is out of range for rank {n}"));
            }
            let flat = *i * n - *i * (*i + 1) / 2 + *j;
            table[flat] = parse(coords)?;
        }
        Ok(QuadForm::new(n, table))
    }
}

pub fn form_to_dto<E: Clone>(
    label: &str,
    form: &QuadForm<E>,
    coords_of: impl Fn(&E) -> Vec<String>,
    classical: bool,
) -> FormDto {
    let n = form.n();
    let mut coeffs = Vec::new();
    for i in 0..n {
        for j in i..n {
            coeffs.push((i, j, coords_of(form.coeff(i, j))));
        }
    }
    FormDto { field: label.to_string(), n, coeffs, classical: Some(classical) }
}

// ---------------------------------------------------------------------
// Report DTOs (stable key order = declaration order)
// ---------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct FieldReport {
    pub field: String,
    pub kind: &'static str,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radicands: Option<[i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monogenic: Option<bool>,
    pub integral_basis: Vec<String>,
    pub integral_basis_coords: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosures: Option<Vec<Vec<[String; 2]>>>,
}

#[derive(Debug, Serialize)]
pub struct TrianglePointDto {
    pub v: i64,
    pub w: i64,
    pub coords: Vec<String>,
    pub pretty: String,
}

#[derive(Debug, Serialize)]
pub struct IndecomposablesReport {
    pub field: String,
    pub a: i64,
    pub count: usize,
    pub closed_form: i64,
    pub points: Vec<TrianglePointDto>,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub field: String,
    pub elem: Vec<String>,
    pub pretty: String,
    pub totally_positive: bool,
    pub integral: bool,
    pub count: usize,
    pub decompositions: Vec<[Vec<String>; 2]>,
    pub classes_up_to_automorphism: Vec<[Vec<String>; 2]>,
    pub indecomposable: bool,
}

#[derive(Debug, Serialize)]
pub struct FormCheckReport {
    pub field: String,
    pub n: usize,
    pub coeffs: Vec<(usize, usize, Vec<String>)>,
    pub classical: bool,
    pub integral: bool,
    pub definiteness: String,
    pub totally_positive_definite: bool,
    pub det: Vec<String>,
    pub det_pretty: String,
    pub classical_pieces_only: bool,
    pub decomposable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[FormDto; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_enclosures: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub claim_id: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct FamilyCounts {
    pub doubled: usize,
    pub scaling_one: usize,
    pub scaling_two: usize,
}

#[derive(Debug, Serialize)]
pub struct TallyReport {
    pub a: i64,
    pub big_a: i64,
    pub a0: i64,
    pub family_counts: FamilyCounts,
    pub total: usize,
    pub formula_value: i64,
}

#[derive(Debug, Serialize)]
pub struct CatalogLine {
    pub id: String,
    pub kind: &'static str,
    pub conditions: &'static str,
}

#[derive(Debug, Serialize)]
pub struct SummaryEntry {
    pub claim_id: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub summary: bool,
    pub pass: usize,
    pub fail: usize,
    pub skipped_budget: usize,
    pub results: Vec<SummaryEntry>,
}

/// One-line JSON error payload (printed to stderr).
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: String,
}

/// Print one report as a single JSON line on stdout.
///
/// Each call writes under the stdout lock, so concurrent report lines
/// never interleave. A write error means the reader closed the pipe
/// (e.g. `tpforms ... | head`); exit quietly like other line-oriented
/// tools instead of panicking.
pub fn print_json<T: Serialize>(value: &T) {
    let line = serde_json::to_string(value).expect("report serialization cannot fail");
    let mut out = io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

pub fn eprint_json_error(msg: &str) {
    let line = serde_json::to_string(&ErrorReport { error: msg.to_string() })
        .expect("error serialization cannot fail");
    let _ = writeln!(io::stderr(), "{line}");
}
