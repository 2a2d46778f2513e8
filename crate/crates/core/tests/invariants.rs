use num_traits::{One, Zero};
use proptest::prelude::*;
use synthkit::algebra::{convolve, delta};
use synthkit::derivations::{apply, compose, moment, Derivation};
use synthkit::exppoly::{act, frechet_order};
use synthkit::fourier::{inverse_transform, transform};
use synthkit::ideals::{member, vanishing_order};
use synthkit::verify::{gen, rng};
use synthkit::{ExpPolynomial, GroupElement, IdealHandle, Polynomial, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..7, -20i64..20, 1i64..7).prop_map(|(a, b, c, d)| {
        &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, d) * &Scalar::i())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
        let printed: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(printed, a);
    }

    #[test]
    fn transform_is_a_ring_isomorphism(seed in any::<u64>(), d in 1usize..4) {
        let mut r = rng(seed);
        let mu = gen::measure(&mut r, d, 5);
        let nu = gen::measure(&mut r, d, 5);
        prop_assert_eq!(transform(&convolve(&mu, &nu).unwrap()), &transform(&mu) * &transform(&nu));
        prop_assert_eq!(inverse_transform(&transform(&mu)), mu.clone());
        prop_assert_eq!(transform(&mu.add(&nu).unwrap()), &transform(&mu) + &transform(&nu));
    }

    #[test]
    fn action_is_a_module_action(seed in any::<u64>(), d in 1usize..3) {
        let mut r = rng(seed);
        let mu = gen::measure(&mut r, d, 3);
        let nu = gen::measure(&mut r, d, 3);
        let f = ExpPolynomial::monomial(gen::small_exponential(&mut r, d), gen::polynomial(&mut r, d, 2)).unwrap();
        let lhs = act(&convolve(&mu, &nu).unwrap(), &f).unwrap();
        let rhs = act(&mu, &act(&nu, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(act(&delta(&GroupElement::zero(d)), &f).unwrap(), f);
    }

    #[test]
    fn frechet_order_is_the_degree(seed in any::<u64>(), d in 1usize..4, deg in 0u32..5) {
        let mut r = rng(seed);
        let p = gen::polynomial_of_degree(&mut r, d, deg);
        let f = ExpPolynomial::monomial(gen::small_exponential(&mut r, d), p).unwrap();
        prop_assert_eq!(frechet_order(&f).unwrap(), deg as usize);
    }

    #[test]
    fn derivations_compose_by_reweighting(seed in any::<u64>(), d in 1usize..3) {
        let mut r = rng(seed);
        let d1 = Derivation::new(gen::polynomial(&mut r, d, 2));
        let d2 = Derivation::new(gen::polynomial(&mut r, d, 2));
        let mu = gen::measure(&mut r, d, 4);
        let c = gen::exponential(&mut r, d);
        let direct = apply(&compose(&d1, &d2), &mu, &c).unwrap();
        let reweighted = apply(&d1, &mu.weighted(d2.generating_function()).unwrap(), &c).unwrap();
        prop_assert_eq!(direct, reweighted);
    }

    #[test]
    fn moments_are_linear_in_the_weight(seed in any::<u64>(), d in 1usize..3) {
        let mut r = rng(seed);
        let mu = gen::measure(&mut r, d, 4);
        let p = gen::polynomial(&mut r, d, 3);
        let q = gen::polynomial(&mut r, d, 3);
        let c = gen::exponential(&mut r, d);
        let sum: Polynomial = &p + &q;
        prop_assert_eq!(
            moment(&mu, &sum, &c).unwrap(),
            &moment(&mu, &p, &c).unwrap() + &moment(&mu, &q, &c).unwrap()
        );
    }

    #[test]
    fn vanishing_order_is_additive(seed in any::<u64>(), a in 0u32..3, b in 0u32..3) {
        let mut r = rng(seed);
        let c = gen::small_exponential(&mut r, 1);
        let f = &gen::point_power(&c, &[a]) * &gen::laurent(&mut r, 1);
        let g = &gen::point_power(&c, &[b]) * &gen::laurent(&mut r, 1);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let of = vanishing_order(&f, &c).unwrap();
        let og = vanishing_order(&g, &c).unwrap();
        prop_assert_eq!(vanishing_order(&(&f * &g), &c).unwrap(), of + og);
    }

    #[test]
    fn generators_belong_to_their_ideal(seed in any::<u64>(), d in 1usize..3) {
        let mut r = rng(seed);
        let gens = vec![gen::laurent(&mut r, d), gen::laurent(&mut r, d)];
        let ideal = IdealHandle::new(d, gens.clone()).unwrap();
        for g in &gens {
            prop_assert!(member(&ideal, g).unwrap());
            prop_assert!(member(&ideal, &g.shift(&vec![-1; d])).unwrap());
        }
    }
}
