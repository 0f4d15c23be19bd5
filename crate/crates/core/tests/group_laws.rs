//! Action laws for isotopisms, conjugates and paratopisms, and invariance
//! of canonical forms, on random squares of order at most 6.

use std::sync::OnceLock;

use lsq::generate::{gen_all_of_order, random_isotope_of_cyclic};
use lsq::{canonical_form, Conjugate, EquivalenceRelation, Isotopism, LatinSquare, Paratopism, Permutation};
use proptest::prelude::*;

const CASES: u32 = 10_000;

fn all_of_order_5() -> &'static [LatinSquare] {
    static ALL: OnceLock<Vec<LatinSquare>> = OnceLock::new();
    ALL.get_or_init(|| gen_all_of_order(5).unwrap())
}

/// Any square of order 1..=5, or an isotope of the cyclic group at order 6.
fn square(n: usize) -> BoxedStrategy<LatinSquare> {
    match n {
        5 => (0..all_of_order_5().len()).prop_map(|i| all_of_order_5()[i].clone()).boxed(),
        6 => any::<u64>().prop_map(|s| random_isotope_of_cyclic(6, s)).boxed(),
        n => {
            let all = gen_all_of_order(n).unwrap();
            (0..all.len()).prop_map(move |i| all[i].clone()).boxed()
        }
    }
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn isotopism(n: usize) -> impl Strategy<Value = Isotopism> {
    (perm(n), perm(n), perm(n)).prop_map(|(a, b, c)| Isotopism::new(a, b, c).unwrap())
}

fn conjugate() -> impl Strategy<Value = Conjugate> {
    (0..6usize).prop_map(|i| Conjugate::all()[i])
}

fn paratopism(n: usize) -> impl Strategy<Value = Paratopism> {
    (conjugate(), isotopism(n)).prop_map(|(sigma, iso)| Paratopism { sigma, iso })
}

struct Sample {
    l: LatinSquare,
    i: Isotopism,
    j: Isotopism,
    s: Conjugate,
    t: Conjugate,
    p: Paratopism,
    q: Paratopism,
}

fn sample() -> impl Strategy<Value = Sample> {
    (1..=6usize).prop_flat_map(|n| {
        (square(n), isotopism(n), isotopism(n), conjugate(), conjugate(), paratopism(n), paratopism(n))
            .prop_map(|(l, i, j, s, t, p, q)| Sample { l, i, j, s, t, p, q })
    })
}

impl std::fmt::Debug for Sample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}i={} j={} s={} t={}", self.l.to_text(), self.i, self.j, self.s, self.t)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn permutation_laws(n in 1..=9usize, seed in any::<u64>()) {
        let a = lsq::generate::random_permutation(n, seed);
        let b = lsq::generate::random_permutation(n, seed.wrapping_add(1));
        let c = lsq::generate::random_permutation(n, seed.wrapping_add(2));
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        for x in 0..n {
            prop_assert_eq!(a.then(&b).apply(x), b.apply(a.apply(x)));
        }
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(-1), a.inverse());
        prop_assert_eq!(a.cycle_structure().order(), a.order());
        prop_assert_eq!(a.cycle_structure(), a.conjugate_by(&b).cycle_structure());
        prop_assert_eq!(Permutation::parse_cycles(n, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn isotopism_action_is_a_right_action(x in sample()) {
        let once = x.l.apply_isotopism(&x.i.then(&x.j)).unwrap();
        let twice = x.l.apply_isotopism(&x.i).unwrap().apply_isotopism(&x.j).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(x.l.apply_isotopism(&x.i).unwrap().apply_isotopism(&x.i.inverse()).unwrap(), x.l.clone());
        prop_assert_eq!(x.l.apply_isotopism(&Isotopism::identity(x.l.order())).unwrap(), x.l.clone());
    }

    #[test]
    fn conjugation_laws(x in sample()) {
        prop_assert_eq!(x.l.conjugate(x.s).conjugate(x.t), x.l.conjugate(x.s.then(x.t)));
        prop_assert_eq!(x.l.conjugate(x.s).conjugate(x.s.inverse()), x.l.clone());
        let lhs = x.l.apply_isotopism(&x.i).unwrap().conjugate(x.s);
        let rhs = x.l.conjugate(x.s).apply_isotopism(&x.i.through_conjugate(x.s)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn paratopism_action_is_a_right_action(x in sample()) {
        let once = x.l.apply_paratopism(&x.p.then(&x.q)).unwrap();
        let twice = x.l.apply_paratopism(&x.p).unwrap().apply_paratopism(&x.q).unwrap();
        prop_assert_eq!(once, twice);
        let back = x.l.apply_paratopism(&x.p).unwrap().apply_paratopism(&x.p.inverse()).unwrap();
        prop_assert_eq!(back, x.l.clone());
        prop_assert!(x.p.then(&x.p.inverse()).is_identity());
    }

    #[test]
    fn canonical_forms_are_class_invariants(x in sample()) {
        let n = x.l.order();
        let rho = x.i.alpha.clone();
        let images = [
            (EquivalenceRelation::Isomorphism, x.l.apply_isomorphism(&rho)),
            (
                EquivalenceRelation::RrsIsotopism,
                x.l.apply_isotopism(&Isotopism::new(rho.clone(), rho, x.i.gamma.clone()).unwrap()).unwrap(),
            ),
            (EquivalenceRelation::Isotopism, x.l.apply_isotopism(&x.i).unwrap()),
            (EquivalenceRelation::Species, x.l.apply_paratopism(&x.p).unwrap()),
        ];
        for (rel, image) in images {
            let c = canonical_form(&x.l, rel);
            prop_assert_eq!(c.order(), n);
            prop_assert_eq!(&canonical_form(&image, rel), &c, "{}", rel);
            prop_assert_eq!(&canonical_form(&c, rel), &c, "{} not idempotent", rel);
        }
    }
}
