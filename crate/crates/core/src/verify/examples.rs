//! Explicit squares: the left-autotopism counterexample and the isotopic
//! pairs separated by a finer relation.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{fixtures, show, Check, Report};
use crate::canonical::{certificate, EquivalenceRelation};
use crate::census::CensusOptions;
use crate::generate::{for_each_reduced_of_order, gen_semisymmetric_classes};
use crate::perm::{
    autoparatopism_group, has_semisymmetric_form_with, left_autotopisms, Isotopism, Permutation, ProductOrder,
};
use crate::square::{Conjugate, LatinSquare, PropertyFilter, Symmetry};

/// Orders at which every species is checked for the left-autotopism
/// criterion against an independent oracle.
pub const LEFT_AUTOTOPISM_ORACLE_MAX: usize = 6;

const PRODUCTS: [(ProductOrder, &str); 2] =
    [(ProductOrder::AlphaBetaGamma, "alpha beta gamma"), (ProductOrder::GammaBetaAlpha, "gamma beta alpha")];

fn product(iso: &Isotopism, order: ProductOrder) -> Permutation {
    match order {
        ProductOrder::AlphaBetaGamma => iso.alpha.then(&iso.beta).then(&iso.gamma),
        ProductOrder::GammaBetaAlpha => iso.gamma.then(&iso.beta).then(&iso.alpha),
    }
}

/// The order 9 counterexample, and the left-autotopism criterion for a
/// semisymmetric form at orders up to 6.
pub fn verify_sade() -> Report {
    let mut r = Report::new("sade");
    let l = fixtures::sade_counterexample();
    let name = "left-autotopism counterexample n=9";
    r.uses(name);
    let left = left_autotopisms(&l);
    r.equal("number of left autotopisms", name, left.len(), 3);
    let mut c = Check::new("every left autotopism has order 3", name);
    for g in &left {
        c.record(g.order() == 3, || format!("{g}"));
    }
    r.push(c);
    for (order, label) in PRODUCTS {
        let mut c = Check::new(format!("ord({label}) is divisible by 3 for every left autotopism"), name);
        for g in &left {
            c.record(product(g, order).order() % 3 == 0, || format!("{g}"));
        }
        r.push(c);
        r.assert(&format!("no semisymmetric form ({label})"), name, !has_semisymmetric_form_with(&l, order), || show(&l));
    }
    r.equal("autoparatopism group order", name, autoparatopism_group(&l).len(), 9);
    let tau = fixtures::sade_tau();
    r.assert("(tau, tau, tau) is an automorphism", name, l.apply_isomorphism(&tau) == l, || format!("{tau}"));
    let e = Permutation::identity(9);
    let shift = Isotopism { alpha: e.clone(), beta: e, gamma: tau.clone() };
    r.assert("the (3,1,2)-conjugate is the image under (e, e, tau)", name, l.conjugate(Conjugate::C312) == l.isotope(&shift), || {
        format!("{tau}")
    });

    let opts = CensusOptions::default();
    for n in 1..=LEFT_AUTOTOPISM_ORACLE_MAX {
        let cat = format!("species n={n}");
        let mut reduced = Vec::new();
        if r.attempt(&cat, for_each_reduced_of_order(n, |l| reduced.push(l.clone()))).is_none() {
            continue;
        }
        let mut seen = BTreeSet::new();
        let species: Vec<LatinSquare> = reduced
            .par_iter()
            .map(|l| (certificate(l, EquivalenceRelation::Species), l))
            .collect::<Vec<_>>()
            .into_iter()
            .filter_map(|(c, l)| seen.insert(c).then(|| l.clone()))
            .collect();
        let semi = PropertyFilter::plain(Symmetry::Semisymmetric);
        let Some(classes) = r.attempt(&cat, gen_semisymmetric_classes(n, &semi, &opts.gen)) else { continue };
        r.uses(&cat);
        r.uses(format!("{semi} n={n}"));
        // A species has a semisymmetric form iff some semisymmetric
        // isomorphism class lies in it.
        let oracle: BTreeSet<Vec<u8>> =
            classes.par_iter().map(|c| certificate(&c.representative, EquivalenceRelation::Species)).collect();
        let mut has_form = Check::new("a species with a left autotopism has a semisymmetric form", &cat);
        let mut criteria: Vec<Check> = PRODUCTS
            .iter()
            .map(|(_, label)| Check::new(format!("semisymmetric form iff a left autotopism has ord({label}) prime to 3"), &cat))
            .collect();
        for l in &species {
            let form = oracle.contains(&certificate(l, EquivalenceRelation::Species));
            if !left_autotopisms(l).is_empty() {
                has_form.record(form, || show(l));
            }
            for (c, (order, _)) in criteria.iter_mut().zip(PRODUCTS) {
                c.record(has_semisymmetric_form_with(l, order) == form, || show(l));
            }
        }
        r.push(has_form);
        for c in criteria {
            r.push(c);
        }
    }
    r
}

/// Maximum number of occurrences of one symbol on the main diagonal.
fn diagonal_multiplicity(l: &LatinSquare) -> usize {
    let mut count = vec![0usize; l.order()];
    for s in l.diagonal() {
        count[s as usize] += 1;
    }
    count.into_iter().max().unwrap_or(0)
}

fn certs_differ(a: &LatinSquare, b: &LatinSquare, rel: EquivalenceRelation) -> bool {
    certificate(a, rel) != certificate(b, rel)
}

/// The order 9 idempotent pair is isotopic, yet its prolongations do not
/// share a species.
pub(crate) fn semi9_species_split(r: &mut Report) {
    let name = "isotopic idempotent semisymmetric pair n=9";
    r.uses(name);
    let (a, b) = fixtures::semi9_pair();
    r.assert("stated isotopism maps the first square to the second", name, a.apply_isotopism(&fixtures::semi9_isotopism()).as_ref() == Ok(&b), || show(&a));
    let ok = a.is_semisymmetric() && b.is_semisymmetric() && a.is_idempotent() && b.is_idempotent();
    r.assert("both squares are idempotent and semisymmetric", name, ok, || show(&a));
    let (Ok(pa), Ok(pb)) = (a.prolong(), b.prolong()) else {
        r.assert("both squares prolong", name, false, || show(&a));
        return;
    };
    let inv = |l: &LatinSquare| (l.intercalate_count(), l.transversal_count());
    let (ia, ib) = (inv(&pa), inv(&pb));
    let separated = ia.0 != ib.0 || ia.1 != ib.1;
    r.assert("prolongations differ in intercalate or transversal count", name, separated, || format!("{ia:?} vs {ib:?}"));
    r.assert("prolongations lie in different species", name, certs_differ(&pa, &pb, EquivalenceRelation::Species), || show(&pa));
}

/// Extends a permutation of one factor to the direct product with a square
/// of order `m`, acting trivially on the other factor.
fn extend_left(p: &Permutation, m: usize) -> Permutation {
    let n = p.degree();
    let images = (0..n * m).map(|x| (p.apply(x / m) * m + x % m) as u8).collect();
    Permutation::from_images(images).expect("product permutation")
}

/// Built-in isotopic pairs and the invariants separating them.
pub fn verify_fixture_pairs() -> Report {
    let mut r = Report::new("fixtures");

    let name = "symmetric pair n=8";
    r.uses(name);
    let (a, b) = fixtures::order8_pair();
    r.assert("stated isotopism maps the first square to the second", name, a.apply_isotopism(&fixtures::order8_isotopism()).as_ref() == Ok(&b), || show(&a));
    r.assert("the squares are isotopic", name, !certs_differ(&a, &b, EquivalenceRelation::Isotopism), || show(&a));
    r.equal("one symbol appears six times on the diagonal of the second square", name, diagonal_multiplicity(&b), 6);
    r.assert("diagonal multiplicities differ", name, diagonal_multiplicity(&a) != diagonal_multiplicity(&b), || {
        format!("{} vs {}", diagonal_multiplicity(&a), diagonal_multiplicity(&b))
    });
    r.assert("the squares are not rrs-isotopic", name, certs_differ(&a, &b, EquivalenceRelation::RrsIsotopism), || show(&a));

    let name = "unipotent symmetric pair n=12";
    r.uses(name);
    let (a, b) = fixtures::unipotent12_pair();
    let iso = fixtures::unipotent12_isotopism();
    r.assert("stated isotopism maps the first square to the second", name, a.apply_isotopism(&iso).as_ref() == Ok(&b), || show(&a));
    r.assert("the isotopism has the form (alpha, gamma, gamma)", name, iso.beta == iso.gamma, || format!("{iso}"));
    let ok = a.is_symmetric() && b.is_symmetric() && a.is_unipotent() && b.is_unipotent();
    r.assert("both squares are symmetric and unipotent", name, ok, || show(&a));
    r.assert("the squares are not rrs-isotopic", name, certs_differ(&a, &b, EquivalenceRelation::RrsIsotopism), || show(&a));

    let name = "semisymmetric pair n=7";
    r.uses(name);
    let (a1, a2) = fixtures::semi7_pair();
    r.assert("stated isotopism maps the first square to the second", name, a1.apply_isotopism(&fixtures::semi7_isotopism()).as_ref() == Ok(&a2), || show(&a1));
    let ok = a1.is_semisymmetric() && a2.is_semisymmetric() && a1.is_diagonal() && a2.is_diagonal();
    r.assert("both squares are semisymmetric and diagonal", name, ok, || show(&a1));
    r.equal("idempotent counts", name, (a1.idempotent_count(), a2.idempotent_count()), (1, 7));

    let name = "direct product pair n=35";
    r.uses(name);
    let f = fixtures::order5_factor();
    r.assert("the order 5 factor is semisymmetric and diagonal with one idempotent", name, f.is_semisymmetric() && f.is_diagonal() && f.idempotent_count() == 1, || show(&f));
    let (p1, p2) = fixtures::order35_pair();
    let ok = p1.is_semisymmetric() && p2.is_semisymmetric() && p1.is_diagonal() && p2.is_diagonal();
    r.assert("products of semisymmetric diagonal squares are semisymmetric and diagonal", name, ok, || show(&p1));
    let s = fixtures::semi7_isotopism();
    let lifted = Isotopism { alpha: extend_left(&s.alpha, 5), beta: extend_left(&s.beta, 5), gamma: extend_left(&s.gamma, 5) };
    r.assert("the order 7 isotopism lifts to the products", name, p1.apply_isotopism(&lifted).as_ref() == Ok(&p2), || format!("{lifted}"));
    r.equal("idempotent counts", name, (p1.idempotent_count(), p2.idempotent_count()), (1, 7));
    r.assert("the products are not isomorphic", name, p1.idempotent_count() != p2.idempotent_count(), String::new);

    semi9_species_split(&mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_permutation_layout() {
        let p = Permutation::parse_cycles(2, "(12)").unwrap();
        assert_eq!(extend_left(&p, 3).images(), &[3, 4, 5, 0, 1, 2]);
    }

    #[test]
    fn fixture_suite_passes() {
        let r = verify_fixture_pairs();
        assert!(r.passed(), "{}", r.to_text());
    }
}
