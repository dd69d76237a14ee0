//! Claim registry: maps claim ids to core check functions, validates
//! parameters against the ranges the test suite covers, and enumerates
//! the full instance grid for `verify --all`.

use std::collections::BTreeMap;

use tpforms_core::biquad::BiquadField;
use tpforms_core::oracle::{OracleError, SearchBudget};
use tpforms_core::qform::{catalog_build, catalog_keys, CatalogParams};
use tpforms_core::scubic::CubicField;
use tpforms_core::verify::{
    self, three_scaling_family_one, Verdict, CLAIM_IDS,
};

/// Parameters accepted by `verify --claim`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimParams {
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub d: Option<i64>,
    pub a: Option<i64>,
    pub v: Option<i64>,
    pub w: Option<i64>,
}

impl ClaimParams {
    pub fn biquad(p: i64, q: i64) -> ClaimParams {
        ClaimParams { p: Some(p), q: Some(q), ..ClaimParams::default() }
    }

    pub fn cubic(a: i64) -> ClaimParams {
        ClaimParams { a: Some(a), ..ClaimParams::default() }
    }

    pub fn cubic_point(a: i64, v: i64, w: i64) -> ClaimParams {
        ClaimParams { a: Some(a), v: Some(v), w: Some(w), ..ClaimParams::default() }
    }

    fn with_d(mut self, d: i64) -> ClaimParams {
        self.d = Some(d);
        self
    }

    pub fn to_catalog(&self) -> CatalogParams {
        CatalogParams { p: self.p, q: self.q, d: self.d, a: self.a, v: self.v, w: self.w }
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        for (k, v) in [
            ("p", self.p),
            ("q", self.q),
            ("d", self.d),
            ("a", self.a),
            ("v", self.v),
            ("w", self.w),
        ] {
            if let Some(x) = v {
                m.insert(k.to_string(), x.to_string());
            }
        }
        m
    }
}

/// Whether an id names a runnable claim, a constructible catalog form,
/// or both.
pub fn id_kind(id: &str) -> Option<&'static str> {
    let is_claim = CLAIM_IDS.contains(&id);
    let is_form = catalog_keys().contains(&id);
    match (is_claim, is_form) {
        (true, true) => Some("claim+form"),
        (true, false) => Some("claim"),
        (false, true) => Some("form"),
        (false, false) => None,
    }
}

/// All ids `verify --claim` accepts, sorted.
pub fn known_ids() -> Vec<&'static str> {
    let mut ids: Vec<&'static str> = CLAIM_IDS.to_vec();
    for k in catalog_keys() {
        if !ids.contains(&k) {
            ids.push(k);
        }
    }
    ids.sort_unstable();
    ids
}

/// Human-readable parameter conditions, printed by `catalog --list`.
pub fn conditions(id: &str) -> &'static str {
    match id {
        "L4.4" => "--biquad p q; splittings of 2, 3, 4 match the radicand-driven lists; checked fields: (2,3), (2,5), (3,5), (5,13), (21,33)",
        "L5.2" => "--cubic a with -1 <= a <= 8; splittings of 2 and 3 are rational only",
        "Ex4.5" => "no parameters; the split element over (2,5) and its rank-1 witness pair",
        "P3.2" => "--biquad p q or --cubic a; non-classical binary form x^2+xy+y^2, indecomposable even among non-classical splittings",
        "P4.6-1" => "--biquad p q, cases C1/C2; binary form over sqrt(p); checked fields: (2,3), (2,7)",
        "P4.6-2" => "--biquad p q, case C3; binary form over sqrt(p); checked field: (3,5)",
        "P4.7" => "--biquad p q, case C1 with form over sqrt(q); checked field: (2,3)",
        "P4.8-1" => "--biquad p q, case C2/C3, q > 21 smallest radicand, q = 5 (mod 12); checked field: (29,30)",
        "P4.8-2" => "--biquad p q, case C2/C3, q > 21 smallest radicand, q = 1 (mod 12); checked field: (37,38)",
        "P4.8-3" => "--biquad p q, case C2/C3, q > 21 smallest radicand, q = 9 (mod 12); checked field: (33,34)",
        "P4.9-1" => "--biquad p q, case C4, p > 21 smallest radicand, p = 5 (mod 12); checked field: (29,33)",
        "P4.9-2" => "--biquad p q, case C4, p > 21 smallest radicand, p = 1 (mod 12); checked field: (37,41)",
        "P4.9-3" => "--biquad p q, case C4, p > 21 smallest radicand, p = 9 (mod 12); checked field: (33,37)",
        "P4.10" => "--biquad 5 q; form (2, 2xy-coefficient, 3+sqrt(5)); checked q: 13, 17, 29",
        "P4.11" => "--biquad 13 q; form (2, (1+sqrt(13))xy, 3); checked q: 17, 29",
        "P4.12" => "--biquad 17 q; diagonal entries (5±sqrt(17))/2; checked q: 29",
        "P4.13" => "--biquad 21 q, q > 21, q != 33; form (2, (3+sqrt(21))xy, 5+sqrt(21)); checked q: 29",
        "P4.13-s11" => "no parameters; fixed field (21,33), form (6+sqrt(33), 2xy, 6-sqrt(33))",
        "Ex4.5-form" => "-",
        "TY-3mod4" => "--biquad p q --d D with D = 3 (mod 4) a radicand; determinant-1 form, indecomposable over the subfield of sqrt(D)",
        "TY-2mod4" => "--biquad p q --d D with D = 2 (mod 4) a radicand; determinant-1 form, indecomposable over the subfield of sqrt(D)",
        "TY-1mod4-1" => "--biquad p q --d D with D = 5 (mod 12) a radicand, D > 17; determinant-1 form, indecomposable over the subfield of sqrt(D)",
        "TY-1mod4-2" => "--biquad p q --d D with D = 1 (mod 12) a radicand, D > 17; determinant-2 form, indecomposable over the subfield of sqrt(D)",
        "TY-1mod4-3" => "--biquad p q --d D with D = 9 (mod 12) a radicand, D > 17; determinant-3 form, indecomposable over the subfield of sqrt(D)",
        "P5.3-2" => "--cubic a --v V --w W with 2*alpha(V,W) > 1; form (2, 2xy, alpha)",
        "P5.3-3" => "--cubic a --v V --w W with 3*alpha(V,W) > 1 but not 2*alpha(V,W) > 1; form (3, 2xy, alpha)",
        "P5.4" => "--cubic a with -1 <= a <= 6; form (2, 2xy, 1+rho+rho^2)",
        "P5.5" => "--cubic a with -1 <= a <= 6; ternary Galois-orbit form, symbolic determinant identity",
        "P5.5-oracle" => "--cubic a in {-1, 0}; adds the exhaustive ternary search",
        "P5.6" => "--cubic a with 0 <= a <= 30; doubling subfamily characterization and count",
        "P5.7" => "--cubic a with 6 <= a <= 30; both three-scaling families with their identities",
        "T-twist-1" => "--cubic a --v V --w W at a doubling point; twisted form (2, 2xy, T1(alpha))",
        "T-twist-2" => "--cubic a --v V --w W at a doubling point; twisted form (2, 2xy, T2(alpha))",
        "codi1" => "--cubic a with 6 <= a <= 15; closed trace form vs direct trace, negativity on family points",
        "delta-tilde" => "--cubic a with 6 <= a <= 20; codifferent element is totally positive with integer trace pairings",
        "T5.8" => "--cubic a with 6 <= a <= 17; full certified tally equals the closed formula",
        "triangle" => "--cubic a with 0 <= a <= 30; triangle family size, positivity, index maps",
        "triangle-oracle" => "--cubic a with 0 <= a <= 5; exhaustive indecomposability of the triangle family",
        _ => "-",
    }
}

const L44_FIELDS: [(i64, i64); 5] = [(2, 3), (2, 5), (3, 5), (5, 13), (21, 33)];

fn canonical_pair(p: i64, q: i64) -> Result<(i64, i64), String> {
    let f = BiquadField::new(p, q).map_err(|e| e.to_string())?;
    Ok((f.p(), f.q()))
}

fn need(opt: Option<i64>, flag: &str, id: &str) -> Result<i64, String> {
    opt.ok_or_else(|| format!("claim {id} requires {flag}"))
}

fn need_biquad(params: &ClaimParams, id: &str) -> Result<(i64, i64), String> {
    Ok((need(params.p, "--biquad P Q", id)?, need(params.q, "--biquad P Q", id)?))
}

fn check_a_range(a: i64, lo: i64, hi: i64, id: &str) -> Result<(), String> {
    if a < lo || a > hi {
        return Err(format!(
            "claim {id} is checked for {lo} <= a <= {hi}; a = {a} needs --force"
        ));
    }
    Ok(())
}

fn check_field_set(
    params: &ClaimParams,
    allowed: &[(i64, i64)],
    id: &str,
) -> Result<(), String> {
    let (p, q) = need_biquad(params, id)?;
    let canon = canonical_pair(p, q)?;
    if !allowed.contains(&canon) {
        return Err(format!(
            "claim {id} is checked for fields {allowed:?}; ({p},{q}) (canonical {canon:?}) needs --force"
        ));
    }
    Ok(())
}

/// Check that the parameters are inside the ranges the acceptance
/// suite covers. `--force` skips this (construction-level validation
/// still applies).
pub fn check_documented(id: &str, params: &ClaimParams) -> Result<(), String> {
    match id {
        "L4.4" => check_field_set(params, &L44_FIELDS, id),
        "L5.2" => check_a_range(need(params.a, "--cubic A", id)?, -1, 8, id),
        "Ex4.5" | "P4.13-s11" => Ok(()),
        "P3.2" => {
            if params.a.is_none() && (params.p.is_none() || params.q.is_none()) {
                return Err(format!("claim {id} requires --biquad P Q or --cubic A"));
            }
            Ok(())
        }
        "P4.6-1" => check_field_set(params, &[(2, 3), (2, 7)], id),
        "P4.6-2" => check_field_set(params, &[(3, 5)], id),
        "P4.7" => check_field_set(params, &[(2, 3)], id),
        "P4.8-1" => check_field_set(params, &[(30, 29)], id),
        "P4.8-2" => check_field_set(params, &[(38, 37)], id),
        "P4.8-3" => check_field_set(params, &[(34, 33)], id),
        "P4.9-1" => check_field_set(params, &[(29, 33)], id),
        "P4.9-2" => check_field_set(params, &[(37, 41)], id),
        "P4.9-3" => check_field_set(params, &[(33, 37)], id),
        "P4.10" => check_field_set(params, &[(5, 13), (5, 17), (5, 29)], id),
        "P4.11" => check_field_set(params, &[(13, 17), (13, 29)], id),
        "P4.12" => check_field_set(params, &[(17, 29)], id),
        "P4.13" => check_field_set(params, &[(21, 29)], id),
        "TY-3mod4" | "TY-2mod4" | "TY-1mod4-1" | "TY-1mod4-2" | "TY-1mod4-3" => {
            need_biquad(params, id)?;
            need(params.d, "--d D", id)?;
            Ok(())
        }
        "P5.3-2" | "T-twist-1" | "T-twist-2" => {
            check_a_range(need(params.a, "--cubic A", id)?, 1, 10, id)?;
            need(params.v, "--v V", id)?;
            need(params.w, "--w W", id)?;
            Ok(())
        }
        "P5.3-3" => {
            check_a_range(need(params.a, "--cubic A", id)?, 6, 12, id)?;
            need(params.v, "--v V", id)?;
            need(params.w, "--w W", id)?;
            Ok(())
        }
        "P5.4" | "P5.5" => check_a_range(need(params.a, "--cubic A", id)?, -1, 6, id),
        "P5.5-oracle" => check_a_range(need(params.a, "--cubic A", id)?, -1, 0, id),
        "P5.6" => check_a_range(need(params.a, "--cubic A", id)?, 0, 30, id),
        "P5.7" => check_a_range(need(params.a, "--cubic A", id)?, 6, 30, id),
        "codi1" => check_a_range(need(params.a, "--cubic A", id)?, 6, 15, id),
        "delta-tilde" => check_a_range(need(params.a, "--cubic A", id)?, 6, 20, id),
        "T5.8" => check_a_range(need(params.a, "--cubic A", id)?, 6, 17, id),
        "triangle" => check_a_range(need(params.a, "--cubic A", id)?, 0, 30, id),
        "triangle-oracle" => check_a_range(need(params.a, "--cubic A", id)?, 0, 5, id),
        _ => Err(format!("unknown claim id {id:?}; see `tpforms catalog --list`")),
    }
}

/// Structural validation that applies even under `--force`: required
/// parameters are present and catalog constructions are applicable.
pub fn check_constructible(id: &str, params: &ClaimParams) -> Result<(), String> {
    match id {
        "L4.4" => need_biquad(params, id).map(|_| ()),
        "L5.2" | "P5.5" | "P5.5-oracle" | "P5.6" | "P5.7" | "codi1" | "delta-tilde"
        | "T5.8" | "triangle" | "triangle-oracle" => {
            let a = need(params.a, "--cubic A", id)?;
            CubicField::new(a).map_err(|e| e.to_string())?;
            Ok(())
        }
        "Ex4.5" => Ok(()),
        _ => {
            if !catalog_keys().contains(&id) {
                return Err(format!("unknown claim id {id:?}; see `tpforms catalog --list`"));
            }
            catalog_build(id, &params.to_catalog()).map(|_| ()).map_err(|e| e.to_string())
        }
    }
}

/// Run one claim. Parameters must already be validated.
pub fn run_claim(
    id: &str,
    params: &ClaimParams,
    budget: &SearchBudget,
) -> Result<Verdict, OracleError> {
    match id {
        "L4.4" => {
            let field = BiquadField::new(params.p.unwrap(), params.q.unwrap())
                .expect("validated field");
            verify::decomposition_survey_biquad(&field, &[2, 3, 4], budget)
        }
        "L5.2" => {
            let field = CubicField::new(params.a.unwrap()).expect("validated field");
            verify::decomposition_survey_cubic(&field, &[2, 3], budget)
        }
        "Ex4.5" => verify::ex45_claim(budget),
        "P5.5" => verify::p55_claim(params.a.unwrap(), false, budget),
        "P5.5-oracle" => verify::p55_claim(params.a.unwrap(), true, budget),
        "P5.6" => verify::p56_claim(params.a.unwrap()),
        "P5.7" => verify::p57_claim(params.a.unwrap()),
        "codi1" => verify::codi_claim(params.a.unwrap()),
        "delta-tilde" => verify::delta_claim(params.a.unwrap()),
        "T5.8" => verify::tally_claim(params.a.unwrap()),
        "triangle" => verify::triangle_claim(params.a.unwrap()),
        "triangle-oracle" => verify::triangle_oracle_claim(params.a.unwrap(), budget),
        _ => verify::catalog_claim(id, &params.to_catalog(), budget),
    }
}

fn clamp_range(lo: i64, hi: i64, max_a: i64) -> impl Iterator<Item = i64> {
    lo..=hi.min(max_a)
}

/// The deterministic instance grid for `verify --all`.
pub fn all_instances(max_a: i64, max_pq: i64) -> Vec<(String, ClaimParams)> {
    let mut out: Vec<(String, ClaimParams)> = Vec::new();
    let mut push = |id: &str, p: ClaimParams| out.push((id.to_string(), p));

    for (p, q) in L44_FIELDS {
        if p.max(q) <= max_pq {
            push("L4.4", ClaimParams::biquad(p, q));
        }
    }
    for a in clamp_range(-1, 8, max_a) {
        push("L5.2", ClaimParams::cubic(a));
    }
    push("Ex4.5", ClaimParams::default());

    // Binary catalog forms at their checked fields.
    for (p, q) in [(2, 3), (2, 7)] {
        if q <= max_pq {
            push("P4.6-1", ClaimParams::biquad(p, q));
        }
    }
    if 5 <= max_pq {
        push("P4.6-2", ClaimParams::biquad(3, 5));
    }
    if 3 <= max_pq {
        push("P4.7", ClaimParams::biquad(2, 3));
    }
    for (id, p, q) in [
        ("P4.8-1", 29, 30),
        ("P4.8-2", 37, 38),
        ("P4.8-3", 33, 34),
        ("P4.9-1", 29, 33),
        ("P4.9-2", 37, 41),
        ("P4.9-3", 33, 37),
    ] {
        if p.max(q) <= max_pq {
            push(id, ClaimParams::biquad(p, q));
        }
    }
    for q in [13, 17, 29] {
        if q <= max_pq {
            push("P4.10", ClaimParams::biquad(5, q));
        }
    }
    for q in [17, 29] {
        if q <= max_pq {
            push("P4.11", ClaimParams::biquad(13, q));
        }
    }
    if 29 <= max_pq {
        push("P4.12", ClaimParams::biquad(17, 29));
        push("P4.13", ClaimParams::biquad(21, 29));
    }
    if 33 <= max_pq {
        push("P4.13-s11", ClaimParams::default());
    }
    push("P3.2", ClaimParams::biquad(2, 3));
    push("P3.2", ClaimParams::cubic(0));
    for (id, p, q, d) in [
        ("TY-3mod4", 2, 3, 3),
        ("TY-2mod4", 2, 3, 2),
        ("TY-1mod4-1", 2, 29, 29),
        ("TY-1mod4-2", 2, 37, 37),
        ("TY-1mod4-3", 21, 33, 21),
    ] {
        if p.max(q) <= max_pq {
            push(id, ClaimParams::biquad(p, q).with_d(d));
        }
    }

    // Cubic catalog forms.
    for a in clamp_range(-1, 6, max_a) {
        push("P5.4", ClaimParams::cubic(a));
    }
    for a in clamp_range(-1, 6, max_a) {
        push("P5.5", ClaimParams::cubic(a));
    }
    for a in clamp_range(-1, 0, max_a) {
        push("P5.5-oracle", ClaimParams::cubic(a));
    }
    if max_a >= 6 {
        let field = CubicField::new(6).expect("a = 6 is valid");
        if let Some(&(v, w)) = field.doubling_points().first() {
            push("P5.3-2", ClaimParams::cubic_point(6, v, w));
            push("T-twist-1", ClaimParams::cubic_point(6, v, w));
            push("T-twist-2", ClaimParams::cubic_point(6, v, w));
        }
        if let Some(fam) = three_scaling_family_one(&field).first() {
            let (v, w) = fam.target;
            push("P5.3-3", ClaimParams::cubic_point(6, v, w));
        }
    }

    // Triangle machinery.
    for a in clamp_range(0, 30, max_a) {
        push("triangle", ClaimParams::cubic(a));
    }
    for a in clamp_range(0, 5, max_a) {
        push("triangle-oracle", ClaimParams::cubic(a));
    }
    for a in clamp_range(0, 30, max_a) {
        push("P5.6", ClaimParams::cubic(a));
    }
    for a in clamp_range(6, 30, max_a) {
        push("P5.7", ClaimParams::cubic(a));
    }

    // Codifferent machinery and the certified tally.
    for a in clamp_range(6, 20, max_a) {
        push("delta-tilde", ClaimParams::cubic(a));
    }
    for a in clamp_range(6, 15, max_a) {
        push("codi1", ClaimParams::cubic(a));
    }
    for a in clamp_range(6, 17, max_a) {
        push("T5.8", ClaimParams::cubic(a));
    }

    out
}
