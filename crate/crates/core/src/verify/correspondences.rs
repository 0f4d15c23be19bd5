//! Prolongation correspondences: classes of order `n` mapped to classes of
//! order `n+1`, and the square counts they imply.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::examples::semi9_species_split;
use super::{show, Check, Report};
use crate::canonical::{certificate, dedup, ClassRecord, EquivalenceRelation};
use crate::census::{closed_census, symmetric_classes, unipotent_symmetric_reduced, CensusOptions, SymmetricMethod};
use crate::generate::{count_symmetric_reduced, gen_semisymmetric_classes, gen_symmetric_reduced, gen_totally_symmetric_classes, GenOptions};
use crate::perm::{Isotopism, Permutation};
use crate::square::{LatinSquare, PropertyFilter, Shape, Symmetry};

/// Orders `n` whose idempotent semisymmetric classes are matched with the
/// unipotent classes of order `n+1`.
pub const SEMISYMMETRIC_PROLONG_ORDERS: [usize; 6] = [1, 3, 4, 6, 7, 9];
/// Odd orders whose idempotent symmetric classes are prolonged.
pub const SYMMETRIC_PROLONG_ORDERS: [usize; 4] = [1, 3, 5, 7];
/// Orders of Steiner triple systems prolonged to totally symmetric loops.
pub const STEINER_PROLONG_ORDERS: [usize; 4] = [1, 3, 7, 9];
/// Even orders for the totally symmetric reduced/idempotent count.
pub const TS_REDUCED_ORDERS: [usize; 5] = [2, 4, 6, 8, 10];

fn certs<'a>(squares: impl IntoParallelIterator<Item = &'a LatinSquare>, rel: EquivalenceRelation) -> BTreeSet<Vec<u8>> {
    squares.into_par_iter().map(|l| certificate(l, rel)).collect()
}

/// Prolongs every class representative and compares the isomorphism
/// classes reached with `target`.
fn prolong_bijection(r: &mut Report, claim: &str, instance: &str, source: &[LatinSquare], target: &[LatinSquare]) {
    let mut c = Check::new(claim, instance);
    let mut images = BTreeSet::new();
    for l in source {
        match l.prolong() {
            Ok(p) => {
                let fresh = images.insert(certificate(&p, EquivalenceRelation::Isomorphism));
                c.record(fresh, || format!("two classes prolong to one:\n{}", show(l)));
            }
            Err(e) => c.record(false, || format!("{e}:\n{}", show(l))),
        }
    }
    let expected = certs(target, EquivalenceRelation::Isomorphism);
    c.record(images == expected, || format!("{} classes reached, {} classes present", images.len(), expected.len()));
    r.push(c);
}

fn reps(classes: &[ClassRecord]) -> Vec<LatinSquare> {
    classes.iter().map(|c| c.representative.clone()).collect()
}

/// Idempotent isotope of a square with distinct diagonal symbols.
fn idempotent_isotope(l: &LatinSquare) -> LatinSquare {
    let n = l.order();
    let mut images = vec![0u8; n];
    for i in 0..n {
        images[l.get(i, i)] = i as u8;
    }
    let e = Permutation::identity(n);
    let gamma = Permutation::from_images(images).expect("diagonal square");
    l.isotope(&Isotopism { alpha: e.clone(), beta: e, gamma })
}

/// The prolongation correspondences between idempotent and unipotent
/// categories, with the square counts they imply.
pub fn verify_prolongation_bijections(gen: &GenOptions) -> Report {
    let mut r = Report::new("prolongation");
    let opts = CensusOptions { gen: gen.clone(), skip_order_two: false };
    let semi = Symmetry::Semisymmetric;
    let ts = Symmetry::TotallySymmetric;

    for n in SEMISYMMETRIC_PROLONG_ORDERS {
        let fi = PropertyFilter::with(semi, Shape::Idempotent);
        let fu = PropertyFilter::with(semi, Shape::Unipotent);
        let (a, b) = (format!("{fi} n={n}"), format!("{fu} n={}", n + 1));
        let Some(idem) = r.attempt(&a, gen_semisymmetric_classes(n, &fi, gen)) else { continue };
        let Some(uni) = r.attempt(&b, gen_semisymmetric_classes(n + 1, &fu, gen)) else { continue };
        r.uses(&a);
        r.uses(&b);
        let inst = format!("{a} -> {b}");
        gen.install(|| {
            prolong_bijection(&mut r, "prolongation is a bijection onto the unipotent isomorphism classes", &inst, &reps(&idem), &reps(&uni))
        });
        r.equal("idempotent classes of order n = unipotent classes of order n+1", &inst, idem.len(), uni.len());
    }
    semi9_species_split(&mut r);

    for n in 1..=8 {
        let fu = PropertyFilter::with(semi, Shape::Unipotent);
        let fr = PropertyFilter::with(semi, Shape::Reduced);
        let inst = format!("semisymmetric n={n}");
        let (Some(u), Some(l)) = (r.attempt(&inst, closed_census(n, &fu, &opts)), r.attempt(&inst, closed_census(n, &fr, &opts))) else {
            continue;
        };
        r.uses(format!("{fu} n={n}"));
        r.uses(format!("{fr} n={n}"));
        r.equal("unipotent semisymmetric squares = n x reduced semisymmetric squares", &inst, u.all_squares, l.all_squares * n as u32);
    }

    for n in SYMMETRIC_PROLONG_ORDERS {
        let a = format!("symmetric+idempotent n={n}");
        let b = format!("symmetric+reduced+unipotent n={}", n + 1);
        let idem: Vec<LatinSquare> = gen.install(|| gen_symmetric_reduced(n).par_iter().map(idempotent_isotope).collect());
        let Some(classes) = r.attempt(&a, dedup(idem, EquivalenceRelation::Isomorphism)) else { continue };
        let Some(uni) = r.attempt(&b, unipotent_symmetric_reduced(n + 1, &opts)) else { continue };
        r.uses(&a);
        r.uses(&b);
        let inst = format!("{a} -> {b}");
        gen.install(|| {
            prolong_bijection(&mut r, "prolongation is a bijection onto isomorphism classes with a reduced unipotent member", &inst, &reps(&classes), &uni)
        });
        if let Some(sym) = r.attempt(&a, symmetric_classes(n, SymmetricMethod::Brute, &opts)) {
            r.equal("species of symmetric squares = isomorphism classes of idempotent symmetric squares", &a, sym.species.clone(), classes.len().into());
            let idem_reps = reps(&classes);
            let rrs = gen.install(|| certs(&idem_reps, EquivalenceRelation::RrsIsotopism).len());
            r.equal("rrs-classes of idempotent symmetric squares = species of symmetric squares", &a, sym.species, rrs.into());
        }
        r.equal("reduced unipotent symmetric squares of order n+1 = reduced symmetric squares of order n", &b, uni.len() as u64, count_symmetric_reduced(n));
    }

    for n in TS_REDUCED_ORDERS {
        let fr = PropertyFilter::with(ts, Shape::Reduced);
        let fi = PropertyFilter::with(ts, Shape::Idempotent);
        let inst = format!("{fr} n={n}, {fi} n={}", n - 1);
        let (Some(red), Some(idem)) = (r.attempt(&inst, closed_census(n, &fr, &opts)), r.attempt(&inst, closed_census(n - 1, &fi, &opts))) else {
            continue;
        };
        r.uses(format!("{fr} n={n}"));
        r.uses(format!("{fi} n={}", n - 1));
        r.equal("reduced totally symmetric squares of order n = idempotent ones of order n-1", &inst, red.all_squares, idem.all_squares);
    }

    for n in STEINER_PROLONG_ORDERS {
        let fi = PropertyFilter::with(ts, Shape::Idempotent);
        let fu = PropertyFilter::with(ts, Shape::Unipotent);
        let fr = PropertyFilter::with(ts, Shape::Reduced);
        let (a, b) = (format!("{fi} n={n}"), format!("{fu} n={}", n + 1));
        let Some(sts) = r.attempt(&a, closed_census(n, &fi, &opts)) else { continue };
        let Some(uni) = r.attempt(&b, closed_census(n + 1, &fu, &opts)) else { continue };
        let Some(red) = r.attempt(&b, gen_totally_symmetric_classes(n + 1, &fr, gen)) else { continue };
        r.uses(&a);
        r.uses(&b);
        r.uses(format!("{fr} n={}", n + 1));
        let inst = format!("{a} -> {b}");
        gen.install(|| {
            prolong_bijection(&mut r, "prolongation is a bijection onto the unipotent isomorphism classes", &inst, &reps(&sts.classes), &reps(&uni.classes))
        });
        let k = sts.classes.len();
        let red_reps = reps(&red);
        let counts = [
            ("isotopism classes of Steiner squares", sts.isotopism),
            ("species of Steiner squares", sts.species),
            ("isomorphism classes of unipotent squares of order n+1", uni.classes.len()),
            ("isotopism classes of unipotent squares of order n+1", uni.isotopism),
            ("species of unipotent squares of order n+1", uni.species),
            ("isomorphism classes of totally symmetric loops of order n+1", red.len()),
            ("isotopism classes with a totally symmetric loop of order n+1", gen.install(|| certs(&red_reps, EquivalenceRelation::Isotopism).len())),
            ("species with a totally symmetric loop of order n+1", gen.install(|| certs(&red_reps, EquivalenceRelation::Species).len())),
        ];
        for (what, v) in counts {
            r.equal(&format!("isomorphism classes of Steiner squares = {what}"), &inst, k, v);
        }
    }
    r
}
