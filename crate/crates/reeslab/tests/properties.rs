//! Property tests for the arithmetic and Groebner kernels.

use proptest::prelude::*;
use reeslab::config::Budget;
use reeslab::field::FieldSpec;
use reeslab::groebner::{self, Ideal};
use reeslab::modlib::{self, PresentedModule};
use reeslab::order::MonomialOrder;
use reeslab::parse::parse_polynomial;
use reeslab::poly::Polynomial;
use reeslab::ring::PolyRing;
use std::cmp::Ordering;
use std::sync::Arc;

fn ring3() -> Arc<PolyRing> {
    PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "z"])
}

fn ring3_q() -> Arc<PolyRing> {
    PolyRing::standard(FieldSpec::Rationals, &["x", "y", "z"])
}

prop_compose! {
    fn arb_exp()(e in proptest::collection::vec(0u32..5, 3)) -> Vec<u32> {
        e
    }
}

fn arb_poly(ring: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_exp(), -50i64..50), 0..5).prop_map(move |terms| {
        let mut p = Polynomial::zero(&ring);
        for (e, c) in terms {
            p = p
                .add(&Polynomial::monomial(&ring, e, ring.field.from_i64(c)))
                .unwrap();
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn add_commutes(a in arb_poly(ring3()), b in arb_poly(ring3())) {
        let ab = a.add(&b).unwrap();
        let ba = b.add(&a).unwrap();
        prop_assert!(ab.sub(&ba).unwrap().is_zero());
    }

    #[test]
    fn mul_distributes(
        a in arb_poly(ring3()),
        b in arb_poly(ring3()),
        c in arb_poly(ring3()),
    ) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn rational_arithmetic_is_exact(
        a in arb_poly(ring3_q()),
        b in arb_poly(ring3_q()),
    ) {
        // (a + b)^2 = a^2 + 2ab + b^2 over Q, exercising exact fractions
        let sum = a.add(&b).unwrap();
        let lhs = sum.mul(&sum).unwrap();
        let two = ring3_q().field.from_i64(2);
        let rhs = a.mul(&a).unwrap()
            .add(&a.mul(&b).unwrap().scale(&two)).unwrap()
            .add(&b.mul(&b).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn orders_are_total_and_multiplicative(
        u in arb_exp(),
        v in arb_exp(),
        w in arb_exp(),
    ) {
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let uv = order.cmp_exps(&u, &v);
            prop_assert_eq!(order.cmp_exps(&v, &u), uv.reverse());
            if uv == Ordering::Equal {
                prop_assert_eq!(&u, &v);
            }
            // multiplying by a common monomial preserves the comparison
            let shift = |a: &[u32]| -> Vec<u32> {
                a.iter().zip(&w).map(|(x, y)| x + y).collect()
            };
            prop_assert_eq!(order.cmp_exps(&shift(&u), &shift(&v)), uv);
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_detects_membership(
        coeffs in proptest::collection::vec(arb_poly(ring3()), 2),
        probe in arb_poly(ring3()),
    ) {
        let r = ring3();
        let budget = Budget::default();
        let i = Ideal::new(&r, vec![
            parse_polynomial(&r, "x^2 - y*z").unwrap(),
            parse_polynomial(&r, "x*y - z^2").unwrap(),
        ]).unwrap();
        let gb = groebner::groebner_basis(&i, &budget).unwrap();
        let mut member = Polynomial::zero(&r);
        for (g, c) in i.gens.iter().zip(&coeffs) {
            member = member.add(&g.mul(c).unwrap()).unwrap();
        }
        prop_assert!(groebner::normal_form(&member, &gb, &budget).unwrap().is_zero());
        let nf = groebner::normal_form(&probe, &gb, &budget).unwrap();
        let nf2 = groebner::normal_form(&nf, &gb, &budget).unwrap();
        prop_assert!(nf.sub(&nf2).unwrap().is_zero());
    }
}

// G_infinity equals G_{d+1}: the local condition is vacuous past dim R.
#[test]
fn g_infinity_equals_g_d_plus_1() {
    use reeslab::checker;
    let r = ring3();
    let budget = Budget::default();
    let d = r.nvars() as i64;
    let cases: Vec<Vec<Vec<&str>>> = vec![
        vec![vec!["x^2", "x*y"], vec!["y", "z"]],
        vec![vec!["x", "y", "z"]],
        vec![vec!["x*y", "y*z", "x*z"]],
        vec![vec!["x", "y"], vec!["y", "z"]],
    ];
    for parts in cases {
        let ideals: Vec<Ideal> = parts
            .iter()
            .map(|gens| {
                Ideal::new(
                    &r,
                    gens.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect(),
                )
                .unwrap()
            })
            .collect();
        let e = PresentedModule::direct_sum_of_ideals(&r, &ideals, &budget).unwrap();
        let inf = checker::check_gs(&e, None, &budget).unwrap();
        let fin = checker::check_gs(&e, Some(d + 1), &budget).unwrap();
        assert_eq!(inf.passing(), fin.passing());
    }
}

// minimal presentations preserve the module rank and generator count bound
#[test]
fn minimal_presentation_invariants() {
    let r = ring3();
    let budget = Budget::default();
    let i = Ideal::new(
        &r,
        vec![
            parse_polynomial(&r, "x^2").unwrap(),
            parse_polynomial(&r, "x*y").unwrap(),
            parse_polynomial(&r, "y^2").unwrap(),
        ],
    )
    .unwrap();
    let m = PresentedModule::from_ideal(&i, &budget).unwrap();
    let min = modlib::minimal_presentation(&m);
    assert_eq!(
        modlib::module_rank(&m).unwrap(),
        modlib::module_rank(&min).unwrap()
    );
    assert!(min.phi.rows <= m.phi.rows);
}
