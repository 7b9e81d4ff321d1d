//! Properties of the deformed structures on random elements rather than
//! generators, and serialization of random data.

use proptest::prelude::*;

use wittq_core::algebra::{Algebra, Lin};
use wittq_core::exactnum::{rat, FpElem, Prime, Rational};
use wittq_core::hopf0::{HopfParams, Quantum};
use wittq_core::hopfp::{HopfParamsP, QuantumP, TMode};
use wittq_core::json::{decode_element, decode_series, encode_element, encode_series};
use wittq_core::report::{Point, VerificationReport};
use wittq_core::ucdp::{ElementP, RestrictedMonomial};
use wittq_core::uwitt::{normal_order, PbwMonomial};

fn word0() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..=3)
}

fn wordp() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..5, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn char0_axioms_on_words(i in prop::sample::select(vec![1i64, 2, -1]), w in word0(), v in word0()) {
        let q = Quantum::new(HopfParams::new(i, 2).unwrap());
        let hopf = q.deformed();
        let x = q.s1.lift(&normal_order(&q.alg, &w));
        let y = q.s1.lift(&normal_order(&q.alg, &v));
        let mut report = VerificationReport::new();
        hopf.check_axioms(&x, &Point::new(), &mut report);
        hopf.check_pair(&x, &y, &Point::new(), &mut report);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn char0_twist_conjugation_on_words(w in word0()) {
        let q = Quantum::new(HopfParams::new(1, 2).unwrap());
        let x = normal_order(&q.alg, &w);
        prop_assert_eq!(q.deformed().delta(&q.s1.lift(&x)), q.coproduct_twist(&x));
        prop_assert_eq!(q.deformed().antipode(&q.s1.lift(&x)), q.antipode_twist(&x));
    }

    #[test]
    fn charp_axioms_on_words(i in 1i64..5, t in prop::option::of(0i64..5), w in wordp(), v in wordp()) {
        let p = Prime::new(5).unwrap();
        let mode = t.map_or(TMode::Symbolic, |c| TMode::Specialized(p.elem(c)));
        let q = QuantumP::new(HopfParamsP::new(5, i, mode).unwrap());
        let hopf = q.deformed();
        let x = q.s1.lift(&q.alg.word_product(&w));
        let y = q.s1.lift(&q.alg.word_product(&v));
        let mut report = VerificationReport::new();
        hopf.check_axioms(&x, &Point::new(), &mut report);
        hopf.check_pair(&x, &y, &Point::new(), &mut report);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn charp_json_round_trip(terms in prop::collection::vec((prop::collection::vec(0u32..7, 7), 1i64..7), 0..8)) {
        let p = Prime::new(7).unwrap();
        let x: ElementP = terms
            .into_iter()
            .map(|(e, c)| (RestrictedMonomial::from_exponents(&e, p).unwrap(), p.elem(c)))
            .collect();
        prop_assert_eq!(decode_element::<FpElem, RestrictedMonomial>(&encode_element(&x)).unwrap(), x);
    }
}

#[test]
fn charp_series_round_trip() {
    for (p, i) in [(3, 2), (5, 4), (7, 3)] {
        let q = QuantumP::new(HopfParamsP::new(p, i, TMode::Symbolic).unwrap());
        for k in 0..p as i64 {
            let d = q.coproduct_p(q.params.p.elem(k));
            assert_eq!(decode_series::<FpElem, [RestrictedMonomial; 2]>(&encode_series(&d)).unwrap(), d);
            let s = q.antipode_p(q.params.p.elem(k));
            assert_eq!(decode_series::<FpElem, RestrictedMonomial>(&encode_series(&s)).unwrap(), s);
        }
    }
}

#[test]
fn char0_twist_round_trip() {
    let q = Quantum::new(HopfParams::new(3, 3).unwrap());
    let f = q.twist();
    assert_eq!(decode_series::<Rational, [PbwMonomial; 2]>(&encode_series(&f)).unwrap(), f);
}

/// Δ(L_i) is cocommutative; every other generator shows noncocommutativity
/// at first order, as it must for a quantization of a nonzero cobracket.
#[test]
fn char0_noncocommutativity() {
    for i in [1, 2, 3] {
        let q = Quantum::new(HopfParams::new(i, 2).unwrap());
        for k in -4..=4 {
            assert_eq!(q.is_cocommutative(k), k == i, "i={i} k={k}");
        }
    }
}

/// The undeformed limit: order 0 in characteristic 0 and t = 0 in
/// characteristic p both give primitive generators.
#[test]
fn undeformed_limits() {
    let q = Quantum::new(HopfParams::new(2, 0).unwrap());
    let d = q.coproduct_closed(3);
    let expected = q.s2.lift(&q.delta0(&q.alg.element(3)));
    assert_eq!(d, expected);
    assert_eq!(q.antipode_closed(3), q.s1.lift(&q.alg.element(3).scale(&rat(-1))));

    let p = Prime::new(5).unwrap();
    let qp = QuantumP::new(HopfParamsP::new(5, 3, TMode::Specialized(p.elem(0))).unwrap());
    for k in 0..5 {
        assert_eq!(qp.antipode_p(p.elem(k)), qp.s1.lift(&qp.alg.d(k).neg()));
        let g = qp.alg.d(k);
        let prim: Lin<FpElem, [RestrictedMonomial; 2]> = g
            .iter()
            .flat_map(|(m, c)| [([*m, RestrictedMonomial::one(p)], *c), ([RestrictedMonomial::one(p), *m], *c)])
            .collect();
        assert_eq!(qp.coproduct_p(p.elem(k)), qp.s2.lift(&prim));
        assert_eq!(qp.s1.mul(&qp.alpha(), &qp.one_minus_et()), qp.s1.one());
    }
}
