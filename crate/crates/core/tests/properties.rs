//! Property tests for the algebraic invariants: ring axioms, two-sided
//! compositional inverses, grading conservation, projector laws, filtration
//! multiplicativity, and JSON round trips.

use std::sync::OnceLock;

use proptest::prelude::*;

use fglforge_core::alphabet::Alphabet;
use fglforge_core::bp::BpContext;
use fglforge_core::fgl;
use fglforge_core::json;
use fglforge_core::monomial::Monomial;
use fglforge_core::poly::GradedPoly;
use fglforge_core::rational::{rat, ratio, Rat};
use fglforge_core::series::{self, Series};
use fglforge_core::steenrod::SteenrodContext;
use fglforge_core::tlaurent::TLaurent;

const DIM: u32 = 6;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn arb_monomial(alphabet: Alphabet) -> impl Strategy<Value = Monomial> {
    let idx = match alphabet {
        Alphabet::V(2) => vec![1u32, 2],
        _ => vec![1u32, 2, 3],
    };
    proptest::collection::vec((proptest::sample::select(idx), 1u32..=2), 0..=2)
        .prop_map(Monomial::from_exps)
}

fn arb_poly(alphabet: Alphabet) -> impl Strategy<Value = GradedPoly> {
    proptest::collection::vec((arb_monomial(alphabet), arb_rat()), 0..=4)
        .prop_map(move |terms| GradedPoly::from_terms(alphabet, DIM, terms))
}

fn arb_series() -> impl Strategy<Value = Series> {
    // u x + higher terms with u a random nonzero rational
    (
        (1i64..=5, 1i64..=3),
        proptest::collection::vec(arb_poly(Alphabet::B), 3),
    )
        .prop_map(|((n, d), tail)| {
            let proto = GradedPoly::zero(Alphabet::B, DIM);
            let mut coeffs = vec![(
                vec![1u16],
                GradedPoly::constant(Alphabet::B, DIM, ratio(n, d)),
            )];
            for (i, c) in tail.into_iter().enumerate() {
                coeffs.push((vec![(i + 2) as u16], c));
            }
            Series::from_coeffs(&proto, 1, 5, coeffs)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_poly(Alphabet::B), b in arb_poly(Alphabet::B), c in arb_poly(Alphabet::B)) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        let expand = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&dist, &expand);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn grading_conservation(a in arb_poly(Alphabet::B), b in arb_poly(Alphabet::B)) {
        // products of homogeneous parts are homogeneous of the summed dimension
        for da in 0..=3u32 {
            for db in 0..=3u32 {
                let pa = a.dimension_part(da);
                let pb = b.dimension_part(db);
                let prod = pa.mul(&pb).unwrap();
                if !prod.is_zero() {
                    prop_assert_eq!(prod.homogeneous_dimension(), Some(da + db));
                }
            }
        }
    }

    #[test]
    fn reversion_is_a_two_sided_inverse(f in arb_series()) {
        let g = series::reversion(&f).unwrap();
        let x = Series::identity(&GradedPoly::zero(Alphabet::B, DIM), 5);
        prop_assert_eq!(series::compose(&f, &g).unwrap(), x.clone());
        prop_assert_eq!(series::compose(&g, &f).unwrap(), x);
        prop_assert_eq!(series::reversion(&g).unwrap(), f);
    }

    #[test]
    fn laurent_inverse_is_two_sided(tail in proptest::collection::vec((1i64..=4, arb_poly(Alphabet::B)), 0..=3), lead in 1i64..=5, k in -2i64..=2) {
        let mut coeffs = vec![(k, GradedPoly::constant(Alphabet::B, DIM, rat(lead)))];
        for (offset, p) in tail {
            // strip the scalar part so the tail dies by dimension
            let p = p.sub(&GradedPoly::constant(Alphabet::B, DIM, p.constant_term())).unwrap();
            coeffs.push((k + offset, p));
        }
        let a = TLaurent::from_coeffs(Alphabet::B, DIM, coeffs);
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), TLaurent::one(Alphabet::B, DIM));
        prop_assert_eq!(inv.mul(&a).unwrap(), TLaurent::one(Alphabet::B, DIM));
    }

    #[test]
    fn poly_json_round_trip(p in arb_poly(Alphabet::V(2))) {
        let s = json::poly_to_string(&p).unwrap();
        prop_assert_eq!(json::poly_from_str(&s).unwrap(), p);
    }

    #[test]
    fn tlaurent_json_round_trip(coeffs in proptest::collection::vec((-3i64..=3, arb_poly(Alphabet::V(2))), 0..=3)) {
        let l = TLaurent::from_coeffs(Alphabet::V(2), DIM, coeffs);
        let s = json::tlaurent_to_string(&l).unwrap();
        prop_assert_eq!(json::tlaurent_from_str(&s).unwrap(), l);
    }
}

fn bp2() -> &'static BpContext {
    static CTX: OnceLock<BpContext> = OnceLock::new();
    CTX.get_or_init(|| BpContext::new(2, DIM).unwrap())
}

fn steenrod2() -> &'static SteenrodContext {
    static CTX: OnceLock<SteenrodContext> = OnceLock::new();
    CTX.get_or_init(|| SteenrodContext::new(bp2(), None).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quillen_is_an_idempotent_ring_map(a in arb_poly(Alphabet::B), b in arb_poly(Alphabet::B)) {
        let ctx = bp2();
        let ra = ctx.quillen_project(&a).unwrap();
        prop_assert_eq!(ctx.quillen_project(&ra).unwrap(), ra.clone());
        let rb = ctx.quillen_project(&b).unwrap();
        let rab = ctx.quillen_project(&a.mul(&b).unwrap()).unwrap();
        prop_assert_eq!(rab, ra.mul(&rb).unwrap());
    }

    #[test]
    fn ideal_membership_is_multiplicative(
        x in arb_poly(Alphabet::V(2)), y in arb_poly(Alphabet::V(2)),
        a in 0u32..=2, b in 0u32..=2,
    ) {
        let ctx = bp2();
        let p = rat(4); // force p-locality by scaling with p^2
        let x = x.scale(&p);
        let y = y.scale(&p);
        prop_assume!(ctx.ideal_membership(&x, a).unwrap());
        prop_assume!(ctx.ideal_membership(&y, b).unwrap());
        prop_assert!(ctx.ideal_membership(&x.mul(&y).unwrap(), a + b).unwrap());
    }

    #[test]
    fn formal_multiples_compose(mn in 0u32..=3, n in 0u32..=3) {
        let ctx = bp2();
        let t = TLaurent::t(ctx.v_alphabet(), DIM);
        let lhs = fgl::formal_multiple(ctx.bp_fgl(), mn + n, &t).unwrap();
        let am = fgl::formal_multiple(ctx.bp_fgl(), mn, &t).unwrap();
        let an = fgl::formal_multiple(ctx.bp_fgl(), n, &t).unwrap();
        let rhs = fgl::formal_sum_t(ctx.bp_fgl(), &am, &an).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// p-local element whose terms stay within half the dimension bound, so that
/// products remain faithful in the truncated quotient.
fn arb_small_p_local() -> impl Strategy<Value = GradedPoly> {
    proptest::collection::vec((arb_monomial(Alphabet::V(2)), -9i64..=9), 0..=3).prop_map(
        |terms| {
            GradedPoly::from_terms(
                Alphabet::V(2),
                DIM,
                terms
                    .into_iter()
                    .filter(|(m, _)| m.dimension(Alphabet::V(2)) <= DIM / 2)
                    .map(|(m, c)| (m, rat(c))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // The homomorphism property holds in the truncated quotient as long as
    // the input dimensions stay within the bound: a dropped high-dimension
    // product term would still contribute low-dimension coefficients at very
    // negative t-degrees, so the bound matters.
    #[test]
    fn steenrod_is_a_ring_map_on_random_pairs(
        x in arb_small_p_local(),
        y in arb_small_p_local(),
    ) {
        let s = steenrod2();
        let lhs = s.steenrod(&x.mul(&y).unwrap()).unwrap();
        let rhs = s.steenrod(&x).unwrap().mul(&s.steenrod(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let add_lhs = s.steenrod(&x.add(&y).unwrap()).unwrap();
        let add_rhs = s.steenrod(&x).unwrap().add(&s.steenrod(&y).unwrap()).unwrap();
        prop_assert_eq!(add_lhs, add_rhs);
    }
}
