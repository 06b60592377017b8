//! Randomized invariants over the core algebra.

use proptest::prelude::*;

use frobfan::constellations::{theta_stability, GConstellation, Theta};
use frobfan::modules::{hom_module, module_product, FractionalMonomialModule};
use frobfan::poly::{Monomial, MonomialIdeal, PolynomialFp};
use frobfan::quotients::AbelianAction;
use frobfan::semigroup::AffineSemigroup;

fn arb_poly(p: u64, arity: usize) -> impl Strategy<Value = PolynomialFp> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..4, arity),
            1i64..(p as i64),
        ),
        0..5,
    )
    .prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Monomial::new(e), c))
            .collect();
        PolynomialFp::from_terms(p, arity, terms).unwrap()
    })
}

fn arb_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pow_is_additive((_p, f) in arb_prime().prop_flat_map(|p| (Just(p), arb_poly(p, 2))),
                       a in 0u64..4, b in 0u64..4) {
        prop_assert_eq!(f.pow(a + b), f.pow(a).mul(&f.pow(b)));
    }

    #[test]
    fn freshman_dream((p, f, g) in arb_prime()
        .prop_flat_map(|p| (Just(p), arb_poly(p, 2), arb_poly(p, 2)))) {
        prop_assert_eq!(f.add(&g).pow(p), f.pow(p).add(&g.pow(p)));
    }

    #[test]
    fn product_distributes(p in arb_prime(), fs in (0u64..100, 0u64..100, 0u64..100)) {
        let mk = |s: u64| PolynomialFp::from_terms(p, 2, vec![
            (Monomial::new(vec![(s % 3) as u32, (s / 3 % 3) as u32]), 1 + (s % (p - 1).max(1)) as i64),
            (Monomial::new(vec![0, 1]), (s / 9 % p) as i64),
        ]).unwrap();
        let (f, g, h) = (mk(fs.0), mk(fs.1), mk(fs.2));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn semigroup_closed_under_addition(
        gens in prop::sample::select(vec![vec![2i64, 3], vec![3, 5], vec![2, 5], vec![3, 4, 5], vec![4, 6, 9]]),
        i in 0usize..30,
        j in 0usize..30,
    ) {
        let g = AffineSemigroup::numerical(&gens).unwrap();
        let els = g.elements_up_to(60);
        let (x, y) = (els[i % els.len()], els[j % els.len()]);
        prop_assert!(g.contains(&[x + y]));
        // Everything at or beyond the conductor belongs.
        prop_assert!(g.contains(&[g.conductor() + (i as i64)]));
    }

    #[test]
    fn frobenius_power_composes(q1 in prop::sample::select(vec![2u64, 4, 8]),
                                q2 in prop::sample::select(vec![2u64, 4])) {
        let ideal = MonomialIdeal::new(2, vec![
            Monomial::new(vec![2, 0]),
            Monomial::new(vec![1, 1]),
            Monomial::new(vec![0, 3]),
        ]).unwrap();
        let a = ideal.frobenius_power(q1, 2).unwrap().frobenius_power(q2, 2).unwrap();
        let b = ideal.frobenius_power(q1 * q2, 2).unwrap();
        prop_assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn hom_composition_lands_in_hom(
        gi in prop::collection::vec(0i64..12, 1..4),
        gj in prop::collection::vec(0i64..12, 1..4),
        gk in prop::collection::vec(0i64..12, 1..4),
    ) {
        let base = AffineSemigroup::numerical(&[2, 3]).unwrap();
        let mk = |gs: &[i64]| FractionalMonomialModule::new(
            base.clone(), gs.iter().map(|&x| vec![x]).collect()).unwrap();
        let (i, j, k) = (mk(&gi), mk(&gj), mk(&gk));
        let hij = hom_module(&i, &j).unwrap();
        let hjk = hom_module(&j, &k).unwrap();
        let hik = hom_module(&i, &k).unwrap();
        let composed = module_product(&hjk, &hij).unwrap();
        for v in composed.generators() {
            prop_assert!(hik.contains(v), "{v:?} escapes Hom(I,K)");
        }
    }

    #[test]
    fn hom_matches_pointwise_definition(
        gi in prop::collection::vec(0i64..10, 1..3),
        gj in prop::collection::vec(0i64..10, 1..3),
        probe in -20i64..40,
    ) {
        let base = AffineSemigroup::numerical(&[3, 5]).unwrap();
        let i = FractionalMonomialModule::new(
            base.clone(), gi.iter().map(|&x| vec![x]).collect()).unwrap();
        let j = FractionalMonomialModule::new(
            base.clone(), gj.iter().map(|&x| vec![x]).collect()).unwrap();
        let h = hom_module(&i, &j).unwrap();
        let shifts_into = gi.iter().all(|&g| {
            // v + I <= J checked on a window past both conductors.
            (0..(base.conductor() + 20)).filter(|&t| base.contains(&[t]))
                .all(|t| !i.contains(&[g + t]) || j.contains(&[probe + g + t]))
        });
        let direct = gi.iter().all(|&g| j.contains(&[probe + g]))
            && shifts_into;
        prop_assert_eq!(h.contains(&[probe]), direct);
    }

    #[test]
    fn stability_unchanged_by_rescaling(
        t1 in -4i64..5, t2 in -4i64..5, scale in 1i64..5,
        c0 in 1u64..5, c1 in 0u64..5, c2 in 0u64..5,
    ) {
        let action = AbelianAction::cyclic(3, &[1, 2], 5).unwrap();
        let c = GConstellation::new(action, vec![
            vec![c0 % 5, c1 % 5, c2 % 5],
            vec![0, c2 % 5, c0 % 5],
        ]);
        let Ok(c) = c else { return Ok(()); };
        let theta = Theta::new(vec![t1, t2, -t1 - t2]).unwrap();
        let scaled = Theta::new(vec![scale * t1, scale * t2, scale * (-t1 - t2)]).unwrap();
        prop_assert_eq!(
            theta_stability(&c, &theta).unwrap(),
            theta_stability(&c, &scaled).unwrap()
        );
    }
}
