use carlitz_core::{Field, Poly, RatFunc, SparseSeries};
use proptest::prelude::*;

fn field(r: u32) -> Field {
    Field::with_order(r).unwrap()
}

fn poly(f: &Field, coeffs: Vec<u32>) -> Poly {
    let r = f.r();
    Poly::from_coeffs(f, coeffs.into_iter().map(|c| c % r).collect()).unwrap()
}

fn orders() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 9])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_with_remainder(r in orders(), a in prop::collection::vec(0u32..64, 0..24), b in prop::collection::vec(0u32..64, 1..12)) {
        let f = field(r);
        let (a, b) = (poly(&f, a), poly(&f, b));
        prop_assume!(!b.is_zero());
        let (q, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &rem, a);
        prop_assert!(rem.degree() < b.degree() || rem.is_zero());
    }

    #[test]
    fn gcd_divides_both(r in orders(), a in prop::collection::vec(0u32..64, 1..16), b in prop::collection::vec(0u32..64, 1..16), c in prop::collection::vec(0u32..64, 1..8)) {
        let f = field(r);
        let c = poly(&f, c);
        prop_assume!(!c.is_zero());
        let (a, b) = (&poly(&f, a) * &c, &poly(&f, b) * &c);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert!(g.rem(&c.monic()).unwrap().is_zero());
    }

    #[test]
    fn ratfunc_field_laws(r in orders(), xs in prop::collection::vec(prop::collection::vec(0u32..64, 1..6), 6)) {
        let f = field(r);
        let ps: Vec<Poly> = xs.into_iter().map(|c| poly(&f, c)).collect();
        prop_assume!(!ps[1].is_zero() && !ps[3].is_zero() && !ps[5].is_zero());
        let x = RatFunc::new(ps[0].clone(), ps[1].clone()).unwrap();
        let y = RatFunc::new(ps[2].clone(), ps[3].clone()).unwrap();
        let z = RatFunc::new(ps[4].clone(), ps[5].clone()).unwrap();
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        prop_assert!(x.den().is_monic());
        prop_assert!(x.num().gcd(x.den()).unwrap().is_one());
    }

    #[test]
    fn series_inverse_is_two_sided(r in orders(), exps in prop::collection::vec(1u64..40, 0..6), order in 1u64..60) {
        let f = field(r);
        let mut terms = vec![(0u64, RatFunc::one(&f))];
        for (i, e) in exps.into_iter().enumerate() {
            terms.push((e, RatFunc::new(Poly::t(&f).pow(i as u64 + 1), Poly::one(&f)).unwrap()));
        }
        let h = SparseSeries::from_terms(&f, terms, order);
        let g = h.inv().unwrap();
        let one = SparseSeries::one(&f, order);
        prop_assert_eq!(h.mul(&g).unwrap(), one.clone());
        prop_assert_eq!(g.mul(&h).unwrap(), one);
    }
}
