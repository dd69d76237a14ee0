//! Randomized property suites with fixed seeds.
//!
//! Every test here draws its inputs from a seeded ChaCha stream, so the
//! suite is fully deterministic while still exercising the library on a
//! broad sample of values. All assertions are exact: no tolerance, no
//! floating point.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tpforms_core::biquad::{BiquadElem, BiquadField};
use tpforms_core::exactnum::{
    int, level_width, rat, rat_ceil, sign_exact, Interval, SqrtEnclosure,
};
use tpforms_core::oracle::{
    coordinate_box, decompose_form, decompositions, is_indecomposable, tp_elements_below,
    SearchBudget,
};
use tpforms_core::qform::{
    definiteness, form_add, form_det, is_classical, is_integral_form, Definiteness, NumberField,
    QuadForm,
};
use tpforms_core::scubic::CubicField;
use tpforms_core::{Int, Rat, Sign};

fn biquad(p: i64, q: i64) -> BiquadField {
    BiquadField::new(p, q).expect("valid biquadratic field")
}

fn cubic(a: i64) -> CubicField {
    CubicField::new(a).expect("valid cubic field")
}

/// A random element with small rational coordinates (not necessarily
/// integral).
fn random_elem<F: NumberField>(field: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    let deg = field.degree();
    let mut acc = field.zero();
    for i in 0..deg {
        let mut basis_coord = vec![Int::zero(); deg];
        basis_coord[i] = Int::one();
        let unit = field.from_integral_coords(&basis_coord);
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=4);
        let k = Rat::new(int(num), int(den));
        acc = field.add(&acc, &field.scale(&unit, &k));
    }
    acc
}

/// A random integral element with coordinates in `[-span, span]`.
fn random_integral<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, span: i64) -> F::Elem {
    let m: Vec<Int> = (0..field.degree()).map(|_| int(rng.gen_range(-span..=span))).collect();
    field.from_integral_coords(&m)
}

/// A random totally positive integral element: a random integral
/// element shifted by an integer exceeding the magnitude of all its
/// conjugates.
fn random_tp_integral<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, span: i64) -> F::Elem {
    let beta = random_integral(field, rng, span);
    let mut bound = Rat::zero();
    for k in 0..field.degree() {
        let iv = field.embed_enclosure(&beta, k, 0);
        for end in [iv.lo.abs(), iv.hi.abs()] {
            if end > bound {
                bound = end;
            }
        }
    }
    let c = Rat::from_integer(rat_ceil(&bound) + Int::one());
    let alpha = field.add(&beta, &field.from_rat(&c));
    assert!(field.is_totally_positive(&alpha), "shift construction must be totally positive");
    alpha
}

/// Exact sign of `c0 + c1*sqrt(d)` through the interval-refinement
/// path, optionally starting the precision ladder higher up.
fn refined_sign(c0: &Rat, c1: &Rat, d: i64, level_offset: u32) -> Sign {
    let is_zero = c0.is_zero() && c1.is_zero();
    let mut enc = SqrtEnclosure::new(int(d));
    sign_exact(is_zero, |level| {
        let iv = enc.refine_to(&level_width(level + level_offset));
        iv.scale(c1).add(&Interval::point(c0.clone()))
    })
}

/// Exact sign of `c0 + c1*sqrt(d)` (d not a perfect square) computed
/// with integer arithmetic only: compare `c0^2` against `c1^2 d` when
/// the two terms have opposite signs.
fn integer_oracle_sign(c0: &Rat, c1: &Rat, d: i64) -> Sign {
    let s0 = Sign::of_rat(c0);
    let s1 = Sign::of_rat(c1);
    match (s0, s1) {
        (Sign::Zero, s) => s,
        (s, Sign::Zero) => s,
        (Sign::Positive, Sign::Positive) => Sign::Positive,
        (Sign::Negative, Sign::Negative) => Sign::Negative,
        _ => {
            let lhs = c0 * c0;
            let rhs = c1 * c1 * rat(d);
            match lhs.cmp(&rhs) {
                core::cmp::Ordering::Greater => s0,
                core::cmp::Ordering::Less => s1,
                core::cmp::Ordering::Equal => {
                    panic!("c0^2 = c1^2 d is impossible for nonsquare d")
                }
            }
        }
    }
}

const NONSQUARES: [i64; 10] = [2, 3, 5, 6, 7, 10, 13, 17, 21, 33];

#[test]
fn sign_refinement_agrees_with_an_integer_oracle_on_quadratic_irrationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA001);
    let mut checked = 0;
    while checked < 1000 {
        let d = NONSQUARES[rng.gen_range(0..NONSQUARES.len())];
        let c0 = Rat::new(int(rng.gen_range(-50..=50)), int(rng.gen_range(1..=9)));
        let c1 = Rat::new(int(rng.gen_range(-50..=50)), int(rng.gen_range(1..=9)));
        if c0.is_zero() && c1.is_zero() {
            continue;
        }
        let expected = integer_oracle_sign(&c0, &c1, d);
        assert_eq!(refined_sign(&c0, &c1, d, 0), expected, "sign of {c0} + {c1}*sqrt({d})");
        // Stability: starting from tighter enclosures never changes
        // the answer.
        assert_eq!(refined_sign(&c0, &c1, d, 2), expected);
        checked += 1;
    }
}

#[test]
fn sqrt_enclosures_bracket_strictly_for_nonsquares() {
    for d in NONSQUARES {
        let mut enc = SqrtEnclosure::new(int(d));
        assert!(!enc.is_exact());
        for level in 0..6 {
            let iv = enc.refine_to(&level_width(level));
            let dd = rat(d);
            assert!(&iv.lo * &iv.lo < dd, "lo^2 < {d}");
            assert!(&iv.hi * &iv.hi > dd, "hi^2 > {d}");
        }
    }
    for d in [0i64, 1, 4, 9, 144] {
        let enc = SqrtEnclosure::new(int(d));
        assert!(enc.is_exact());
        let iv = enc.current();
        assert_eq!(iv.lo, iv.hi);
        assert_eq!(&iv.lo * &iv.lo, rat(d));
    }
}

fn check_ring_laws<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, rounds: usize) {
    for _ in 0..rounds {
        let a = random_elem(field, rng);
        let b = random_elem(field, rng);
        let c = random_elem(field, rng);
        assert_eq!(
            field.add(&field.add(&a, &b), &c),
            field.add(&a, &field.add(&b, &c)),
            "addition is associative"
        );
        assert_eq!(field.add(&a, &b), field.add(&b, &a), "addition commutes");
        assert_eq!(
            field.mul(&field.mul(&a, &b), &c),
            field.mul(&a, &field.mul(&b, &c)),
            "multiplication is associative"
        );
        assert_eq!(field.mul(&a, &b), field.mul(&b, &a), "multiplication commutes");
        assert_eq!(
            field.mul(&a, &field.add(&b, &c)),
            field.add(&field.mul(&a, &b), &field.mul(&a, &c)),
            "multiplication distributes over addition"
        );
        assert_eq!(field.add(&field.sub(&a, &b), &b), a, "subtraction inverts addition");
        assert_eq!(field.mul(&a, &field.one()), a, "one is a multiplicative identity");
    }
}

#[test]
fn ring_laws_hold_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA002);
    check_ring_laws(&biquad(2, 3), &mut rng, 60);
    check_ring_laws(&biquad(21, 33), &mut rng, 60);
    check_ring_laws(&cubic(4), &mut rng, 60);
}

fn check_homomorphisms<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, rounds: usize) {
    for _ in 0..rounds {
        let a = random_elem(field, rng);
        let b = random_elem(field, rng);
        let ia = field.automorphism_images(&a);
        let ib = field.automorphism_images(&b);
        let iprod = field.automorphism_images(&field.mul(&a, &b));
        let isum = field.automorphism_images(&field.add(&a, &b));
        for k in 0..ia.len() {
            assert_eq!(iprod[k], field.mul(&ia[k], &ib[k]), "automorphism preserves products");
            assert_eq!(isum[k], field.add(&ia[k], &ib[k]), "automorphism preserves sums");
        }
    }
}

#[test]
fn galois_maps_are_ring_homomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA003);
    check_homomorphisms(&biquad(2, 3), &mut rng, 50);
    check_homomorphisms(&biquad(5, 13), &mut rng, 50);
    check_homomorphisms(&cubic(3), &mut rng, 50);
}

#[test]
fn cubic_conjugation_has_order_three_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA004);
    let field = cubic(5);
    for _ in 0..100 {
        let a = random_elem(&field, &mut rng);
        let once = field.conj(&a);
        let twice = field.conj(&once);
        let thrice = field.conj(&twice);
        assert_eq!(thrice, a, "three applications of conjugation are the identity");
        assert_ne!(once, thrice, "conjugation itself is not the identity");
    }
}

#[test]
fn biquad_conjugations_are_involutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA005);
    let field = biquad(3, 5);
    for _ in 0..100 {
        let a = random_elem(&field, &mut rng);
        for k in 0..4 {
            let img = field.automorphism_images(&a);
            let back = field.automorphism_images(&img[k]);
            assert_eq!(back[k], a, "each automorphism squares to the identity");
        }
    }
}

/// A totally positive integral `x + y sqrt(p) + z sqrt(q) + w sqrt(r)`
/// dominates each of its radical parts: `x > |y| sqrt(p)`,
/// `x > |z| sqrt(q)`, `x > |w| sqrt(r)`.
#[test]
fn totally_positive_integral_elements_dominate_their_radical_parts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA006);
    for (p, q) in [(2i64, 3i64), (5, 13)] {
        let field = biquad(p, q);
        let rads = field.radicands();
        for _ in 0..100 {
            let alpha = random_tp_integral(&field, &mut rng, 4);
            let x = alpha.c[0].clone();
            for (idx, d) in rads.iter().enumerate() {
                let m = alpha.c[idx + 1].abs();
                // Sign of x - |coeff| * sqrt(d), decided by refinement.
                let s = refined_sign(&x, &(-m), *d, 0);
                assert_eq!(
                    s,
                    Sign::Positive,
                    "rational part must strictly dominate the sqrt({d}) part"
                );
            }
        }
    }
}

#[test]
fn domination_is_monotone_for_trace_and_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA007);
    fn check<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, rounds: usize) {
        for _ in 0..rounds {
            let beta = random_tp_integral(field, rng, 3);
            let gamma = random_tp_integral(field, rng, 3);
            let alpha = field.add(&beta, &gamma);
            assert!(field.dominates(&alpha, &beta));
            assert!(field.trace(&alpha) >= field.trace(&beta), "trace is monotone");
            assert!(field.norm(&alpha) >= field.norm(&beta), "norm is monotone");
        }
    }
    check(&biquad(2, 5), &mut rng, 50);
    check(&biquad(21, 33), &mut rng, 50);
    check(&cubic(3), &mut rng, 50);
}

#[test]
fn integral_coordinate_round_trip_is_the_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA008);
    fn check<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, rounds: usize) {
        for _ in 0..rounds {
            let m: Vec<Int> =
                (0..field.degree()).map(|_| int(rng.gen_range(-20..=20))).collect();
            let elem = field.from_integral_coords(&m);
            assert!(field.is_integral(&elem));
            assert_eq!(field.integral_coords(&elem), Some(m));
            // Adding 1/3 leaves the lattice: coordinates over the
            // basis are unique and the basis contains 1.
            let shifted = field.add(&elem, &field.from_rat(&Rat::new(int(1), int(3))));
            assert!(field.integral_coords(&shifted).is_none());
        }
    }
    for (p, q) in [(2i64, 3i64), (2, 5), (3, 5), (5, 13), (21, 33)] {
        check(&biquad(p, q), &mut rng, 40);
    }
    for a in [-1i64, 0, 5] {
        check(&cubic(a), &mut rng, 40);
    }
}

#[test]
fn codifferent_trace_pairings_are_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA009);
    for a in [6i64, 10, 15] {
        let field = cubic(a);
        let delta = field.codifferent_elem();
        assert!(field.is_totally_positive(&delta));
        for _ in 0..50 {
            let b = random_integral(&field, &mut rng, 30);
            let t = field.trace(&field.mul(&delta, &b));
            assert!(t.is_integer(), "trace pairing with an integral element is an integer");
        }
    }
}

/// Every integral element whose conjugates lie inside given closed
/// intervals has its coordinates inside the search box computed from
/// those intervals.
#[test]
fn search_boxes_contain_all_matching_integral_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA00A);
    fn check<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, rounds: usize) {
        for _ in 0..rounds {
            let m: Vec<Int> =
                (0..field.degree()).map(|_| int(rng.gen_range(-15..=15))).collect();
            let elem = field.from_integral_coords(&m);
            let bounds: Vec<(Rat, Rat)> = (0..field.degree())
                .map(|k| {
                    let iv = field.embed_enclosure(&elem, k, 0);
                    (&iv.lo - rat(1), &iv.hi + rat(1))
                })
                .collect();
            let ranges = coordinate_box(field, &bounds);
            for (i, (lo, hi)) in ranges.iter().enumerate() {
                assert!(
                    lo <= &m[i] && &m[i] <= hi,
                    "coordinate {i} of a matching element must lie in the box"
                );
            }
        }
    }
    check(&biquad(2, 3), &mut rng, 170);
    check(&biquad(17, 29), &mut rng, 170);
    check(&cubic(2), &mut rng, 160);
}

#[test]
fn enumerated_decompositions_reconstruct_their_input() {
    let budget = SearchBudget::default();
    fn check<F: NumberField>(field: &F, bound: i64, budget: &SearchBudget) {
        let top = field.from_rat(&rat(bound));
        for alpha in tp_elements_below(field, &top, budget).expect("search in budget") {
            for (b, g) in decompositions(field, &alpha, budget).expect("search in budget") {
                assert_eq!(field.add(&b, &g), alpha, "parts sum back to the input");
                assert!(field.is_totally_positive(&b));
                assert!(field.is_totally_positive(&g));
                assert!(field.is_integral(&b));
                assert!(field.is_integral(&g));
            }
        }
    }
    check(&biquad(2, 3), 4, &budget);
    check(&cubic(1), 4, &budget);
}

/// Binary forms with indecomposable diagonal entries and a nonzero
/// cross coefficient admit no splitting at all, classical or not.
#[test]
fn indecomposable_diagonal_and_nonzero_cross_makes_binary_forms_indecomposable() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA00B);
    let budget = SearchBudget::default();
    fn check<F: NumberField>(
        field: &F,
        rng: &mut ChaCha8Rng,
        budget: &SearchBudget,
        want: usize,
    ) {
        // Pool of oracle-confirmed indecomposable integers.
        let top = field.from_rat(&rat(5));
        let pool: Vec<F::Elem> = tp_elements_below(field, &top, budget)
            .expect("pool search in budget")
            .into_iter()
            .filter(|e| is_indecomposable(field, e, budget).expect("in budget"))
            .collect();
        assert!(pool.len() >= 2, "need a few indecomposable integers to build forms");
        let mut built = 0;
        let mut attempts = 0;
        while built < want {
            attempts += 1;
            assert!(attempts < 600, "form generation should not stall");
            let a11 = pool[rng.gen_range(0..pool.len())].clone();
            let a22 = pool[rng.gen_range(0..pool.len())].clone();
            let a12 = random_integral(field, rng, 1);
            if field.is_zero(&a12) {
                continue;
            }
            let form = QuadForm::binary(a11, a12, a22);
            if definiteness(field, &form) != Definiteness::Definite {
                continue;
            }
            let witness =
                decompose_form(field, &form, false, budget).expect("decompose in budget");
            assert!(
                witness.is_none(),
                "a definite form with indecomposable diagonal and nonzero cross never splits"
            );
            built += 1;
        }
    }
    check(&biquad(2, 3), &mut rng, &budget, 10);
    check(&cubic(1), &mut rng, &budget, 10);
}

/// Ternary chain forms (nonzero coefficients only on the diagonal and
/// the superdiagonal) with indecomposable diagonal are indecomposable.
#[test]
fn chain_forms_with_indecomposable_diagonal_are_indecomposable() {
    let budget = SearchBudget::default();
    fn check<F: NumberField>(field: &F, diag: [F::Elem; 3], budget: &SearchBudget) {
        for (d1, d2) in [(1i64, 1i64), (1, -1), (-1, 1)] {
            let form = QuadForm::ternary(
                diag[0].clone(),
                field.from_rat(&rat(d1)),
                field.zero(),
                diag[1].clone(),
                field.from_rat(&rat(d2)),
                diag[2].clone(),
            );
            assert_eq!(definiteness(field, &form), Definiteness::Definite);
            for e in &diag {
                assert!(is_indecomposable(field, e, budget).expect("in budget"));
            }
            let witness =
                decompose_form(field, &form, false, budget).expect("decompose in budget");
            assert!(witness.is_none(), "chain form with indecomposable diagonal never splits");
        }
    }
    let bq = biquad(2, 3);
    let one4 = bq.from_rat(&rat(1));
    check(&bq, [one4.clone(), one4.clone(), one4.clone()], &budget);
    // A chain with an irrational middle entry: 2 + sqrt(2) is totally
    // positive and indecomposable in this field.
    let mid = BiquadElem::from_coords([rat(2), rat(1), rat(0), rat(0)]);
    check(&bq, [one4.clone(), mid, one4], &budget);
    let cb = cubic(0);
    let one3 = cb.from_rat(&rat(1));
    check(&cb, [one3.clone(), one3.clone(), one3], &budget);
}

/// Sums of two classical totally positive semidefinite forms always
/// split again, and on any splitting the oracle finds, determinants
/// are superadditive.
#[test]
fn oracle_splits_of_classical_sums_satisfy_determinant_superadditivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA00C);
    let budget = SearchBudget::default();
    /// Small integral element: zero, or an enumerated totally positive
    /// element up to sign. Keeping conjugates small keeps the
    /// exhaustive re-splitting of the sums cheap.
    fn pick_small<F: NumberField>(
        field: &F,
        pool: &[F::Elem],
        rng: &mut ChaCha8Rng,
    ) -> F::Elem {
        if rng.gen_range(0..8) == 0 {
            return field.zero();
        }
        let e = pool[rng.gen_range(0..pool.len())].clone();
        if rng.gen_bool(0.5) {
            field.neg(&e)
        } else {
            e
        }
    }
    fn random_classical_tpsd<F: NumberField>(
        field: &F,
        diag_pool: &[F::Elem],
        root_pool: &[F::Elem],
        rng: &mut ChaCha8Rng,
    ) -> QuadForm<F::Elem> {
        loop {
            if rng.gen_bool(0.5) {
                // Rank-one form (ux + vy)^2 with small integral u, v.
                let u = pick_small(field, root_pool, rng);
                let v = pick_small(field, root_pool, rng);
                if field.is_zero(&u) && field.is_zero(&v) {
                    continue;
                }
                let two = field.from_rat(&rat(2));
                return QuadForm::binary(
                    field.mul(&u, &u),
                    field.mul(&two, &field.mul(&u, &v)),
                    field.mul(&v, &v),
                );
            }
            // Small diagonal form with an even cross.
            let a11 = diag_pool[rng.gen_range(0..diag_pool.len())].clone();
            let a22 = diag_pool[rng.gen_range(0..diag_pool.len())].clone();
            let t = pick_small(field, root_pool, rng);
            let a12 = field.scale(&t, &rat(2));
            let form = QuadForm::binary(a11, a12, a22);
            if definiteness(field, &form) != Definiteness::NotSemidefinite {
                return form;
            }
        }
    }
    fn check<F: NumberField>(field: &F, rng: &mut ChaCha8Rng, budget: &SearchBudget, n: usize) {
        let diag_pool = tp_elements_below(field, &field.from_rat(&rat(4)), budget)
            .expect("pool search in budget");
        let root_pool = tp_elements_below(field, &field.from_rat(&rat(3)), budget)
            .expect("pool search in budget");
        assert!(!diag_pool.is_empty() && !root_pool.is_empty());
        for _ in 0..n {
            let q1 = random_classical_tpsd(field, &diag_pool, &root_pool, &mut *rng);
            let q2 = random_classical_tpsd(field, &diag_pool, &root_pool, &mut *rng);
            let q = form_add(field, &q1, &q2);
            assert!(is_classical(field, &q));
            assert!(is_integral_form(field, &q));
            let witness = decompose_form(field, &q, true, budget).expect("decompose in budget");
            let (r1, r2) = witness.expect("a constructed sum always splits");
            let excess = field.sub(
                &form_det(field, &q),
                &field.add(&form_det(field, &r1), &form_det(field, &r2)),
            );
            assert!(
                field.is_totally_nonneg(&excess),
                "determinant of the sum dominates the sum of part determinants"
            );
        }
    }
    check(&biquad(2, 3), &mut rng, &budget, 10);
    check(&biquad(3, 5), &mut rng, &budget, 10);
    check(&cubic(0), &mut rng, &budget, 8);
    check(&cubic(1), &mut rng, &budget, 8);
}

/// Multiplying a certified determinant by any nontrivial totally
/// positive unit in the window pushes it out of the positive cone, so
/// certified-distinct determinants are pairwise non-associated.
#[test]
fn unit_translates_leave_the_positive_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA00D);
    let mut dets = Vec::new();
    for a in [6i64, 7, 8] {
        let field = cubic(a);
        for cert in tpforms_core::verify::tally_certificates(&field).expect("valid parameter") {
            dets.push((a, cert.rep));
        }
    }
    assert!(dets.len() >= 50);
    for _ in 0..50 {
        let (a, rep) = dets[rng.gen_range(0..dets.len())].clone();
        let field = cubic(a);
        assert!(field.cone_coords(&rep).iter().all(|c| c.is_positive()));
        let identity = tpforms_core::scubic::CubicElem::from_ints([1, 0, 0]);
        let units: Vec<_> = field
            .square_units(2)
            .into_iter()
            .filter(|u| *u != identity)
            .take(20)
            .collect();
        assert_eq!(units.len(), 20);
        for u in units {
            let moved = field.mul(&rep, &u);
            let mc = field.cone_coords(&moved);
            assert!(
                mc.iter().any(|c| c.is_negative()),
                "a nontrivial square unit must move the determinant out of the cone"
            );
        }
    }
}
