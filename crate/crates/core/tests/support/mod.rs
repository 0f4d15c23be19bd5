//! Checks shared by the integration tests and the acceptance run. Each
//! returns the number of instances checked, or a description of the first
//! failure.
#![allow(dead_code)]

use std::collections::HashMap;

use lsq::catalog::enumerate_catalog;
use lsq::generate::{gen_all_of_order, random_isotope_of_cyclic, random_permutation, GenOptions};
use lsq::perm::{brute_force_stabiliser, IsotopyKind};
use lsq::{canonical_form, Conjugate, EquivalenceRelation, Isotopism, LatinSquare, Paratopism, Permutation, PropertyFilter, Shape, Symmetry};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Outcome = Result<u64, String>;

/// Orbit counts per order 1..=4 in the order of `EquivalenceRelation::ALL`.
pub const ORBIT_COUNTS: [[usize; 4]; 4] = [[1, 1, 1, 1], [1, 1, 1, 1], [5, 2, 1, 1], [35, 6, 2, 2]];

/// Generators of the acting group of `rel` on squares of order `n`.
pub fn generators(n: usize, rel: EquivalenceRelation) -> Vec<Box<dyn Fn(&LatinSquare) -> LatinSquare>> {
    let e = Permutation::identity(n);
    let mut sn = Vec::new();
    if n > 1 {
        let mut swap: Vec<u8> = (0..n as u8).collect();
        swap.swap(0, 1);
        sn.push(Permutation::from_images(swap).unwrap());
        sn.push(Permutation::from_images((0..n as u8).map(|i| (i + 1) % n as u8).collect()).unwrap());
    }
    let mut gens: Vec<Box<dyn Fn(&LatinSquare) -> LatinSquare>> = Vec::new();
    for g in sn {
        let isos = match rel {
            EquivalenceRelation::Isomorphism => vec![Isotopism::isomorphism(g)],
            EquivalenceRelation::RrsIsotopism => vec![
                Isotopism::new(g.clone(), g.clone(), e.clone()).unwrap(),
                Isotopism::new(e.clone(), e.clone(), g).unwrap(),
            ],
            _ => vec![
                Isotopism::new(g.clone(), e.clone(), e.clone()).unwrap(),
                Isotopism::new(e.clone(), g.clone(), e.clone()).unwrap(),
                Isotopism::new(e.clone(), e.clone(), g).unwrap(),
            ],
        };
        for iso in isos {
            gens.push(Box::new(move |l: &LatinSquare| l.apply_isotopism(&iso).unwrap()));
        }
    }
    if rel == EquivalenceRelation::Species {
        for s in [Conjugate::TRANSPOSE, Conjugate::C231] {
            gens.push(Box::new(move |l: &LatinSquare| l.conjugate(s)));
        }
    }
    gens
}

/// Orbit index of every square, and the orbit sizes.
pub fn orbits(all: &[LatinSquare], rel: EquivalenceRelation) -> (Vec<usize>, Vec<usize>) {
    let n = all[0].order();
    let index: HashMap<&[u8], usize> = all.iter().enumerate().map(|(i, l)| (l.cells(), i)).collect();
    let gens = generators(n, rel);
    let mut orbit = vec![usize::MAX; all.len()];
    let mut sizes = Vec::new();
    for start in 0..all.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        orbit[start] = id;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for g in &gens {
                let j = index[g(&all[i]).cells()];
                if orbit[j] == usize::MAX {
                    orbit[j] = id;
                    stack.push(j);
                }
            }
        }
        sizes.push(size);
    }
    (orbit, sizes)
}

/// Canonical forms pick one member per explicit orbit and stabiliser
/// orders satisfy orbit-stabiliser, for every square of order `n <= 4`.
pub fn canonical_forms_match_orbits(n: usize) -> Outcome {
    let all = gen_all_of_order(n).map_err(|e| e.to_string())?;
    let index: HashMap<&[u8], usize> = all.iter().enumerate().map(|(i, l)| (l.cells(), i)).collect();
    let mut checked = 0;
    for (k, rel) in EquivalenceRelation::ALL.into_iter().enumerate() {
        let (orbit, sizes) = orbits(&all, rel);
        if sizes.len() != ORBIT_COUNTS[n - 1][k] {
            return Err(format!("{} {rel} orbits at order {n}, expected {}", sizes.len(), ORBIT_COUNTS[n - 1][k]));
        }
        let mut form_of_orbit: HashMap<usize, LatinSquare> = HashMap::new();
        let group = rel.group_order(n);
        for (i, l) in all.iter().enumerate() {
            let f = canonical_form(l, rel);
            if orbit[index[f.cells()]] != orbit[i] {
                return Err(format!("{rel}: canonical form leaves the orbit of\n{}", l.to_text()));
            }
            let first = form_of_orbit.entry(orbit[i]).or_insert_with(|| f.clone());
            if *first != f {
                return Err(format!("{rel}: two canonical forms in the orbit of\n{}", l.to_text()));
            }
            if BigUint::from(rel.stabiliser_order(l)) * sizes[orbit[i]] != group {
                return Err(format!("{rel}: stabiliser order breaks orbit-stabiliser for\n{}", l.to_text()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Stabiliser groups from the search equal the brute-force ones.
pub fn stabilisers_match_brute_force(n: usize) -> Outcome {
    let mut checked = 0;
    for l in gen_all_of_order(n).map_err(|e| e.to_string())? {
        for (kind, rel) in [
            (IsotopyKind::Isomorphism, EquivalenceRelation::Isomorphism),
            (IsotopyKind::Rrs, EquivalenceRelation::RrsIsotopism),
            (IsotopyKind::Isotopism, EquivalenceRelation::Isotopism),
        ] {
            let brute = brute_force_stabiliser(&l, kind);
            if brute.len() as u64 != rel.stabiliser_order(&l) {
                return Err(format!("{rel}: {} by brute force, {} by search", brute.len(), rel.stabiliser_order(&l)));
            }
            if !brute.iter().all(|g| l.apply_isotopism(g).unwrap() == l) {
                return Err(format!("{rel}: brute-force stabiliser moves the square"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn random_square(rng: &mut StdRng, all5: &[LatinSquare]) -> LatinSquare {
    match rng.gen_range(1..=6) {
        5 => all5[rng.gen_range(0..all5.len())].clone(),
        6 => random_isotope_of_cyclic(6, rng.gen()),
        n => {
            let all = gen_all_of_order(n).unwrap();
            all[rng.gen_range(0..all.len())].clone()
        }
    }
}

/// Action laws for isotopisms, conjugates and paratopisms and invariance
/// of canonical forms, on `cases` random squares.
pub fn action_laws(cases: u64, seed: u64) -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let all5 = gen_all_of_order(5).unwrap();
    for case in 0..cases {
        let l = random_square(&mut rng, &all5);
        let n = l.order();
        let perm = |rng: &mut StdRng| random_permutation(n, rng.gen());
        let i = Isotopism::new(perm(&mut rng), perm(&mut rng), perm(&mut rng)).unwrap();
        let j = Isotopism::new(perm(&mut rng), perm(&mut rng), perm(&mut rng)).unwrap();
        let s = Conjugate::all()[rng.gen_range(0..6)];
        let t = Conjugate::all()[rng.gen_range(0..6)];
        let p = Paratopism { sigma: s, iso: i.clone() };
        let q = Paratopism { sigma: t, iso: j.clone() };
        let fail = |what: &str| Err(format!("case {case}: {what} fails on\n{}", l.to_text()));
        let iso = |m: &LatinSquare, g: &Isotopism| m.apply_isotopism(g).unwrap();
        let para = |m: &LatinSquare, g: &Paratopism| m.apply_paratopism(g).unwrap();
        if iso(&l, &i.then(&j)) != iso(&iso(&l, &i), &j) || iso(&iso(&l, &i), &i.inverse()) != l {
            return fail("isotopism action");
        }
        if l.conjugate(s).conjugate(t) != l.conjugate(s.then(t)) || l.conjugate(s).conjugate(s.inverse()) != l {
            return fail("conjugate action");
        }
        if iso(&l, &i).conjugate(s) != iso(&l.conjugate(s), &i.through_conjugate(s)) {
            return fail("isotopism through conjugate");
        }
        if para(&l, &p.then(&q)) != para(&para(&l, &p), &q) || para(&para(&l, &p), &p.inverse()) != l {
            return fail("paratopism action");
        }
        let rho = i.alpha.clone();
        let images = [
            (EquivalenceRelation::Isomorphism, l.apply_isomorphism(&rho)),
            (EquivalenceRelation::RrsIsotopism, iso(&l, &Isotopism::new(rho.clone(), rho, i.gamma.clone()).unwrap())),
            (EquivalenceRelation::Isotopism, iso(&l, &i)),
            (EquivalenceRelation::Species, para(&l, &p)),
        ];
        for (rel, image) in images {
            if canonical_form(&image, rel) != canonical_form(&l, rel) {
                return fail(&format!("{rel} canonical form invariance"));
            }
        }
    }
    Ok(cases)
}

/// Every catalog category accepted at order `n`.
pub fn catalog_categories(n: usize) -> Vec<PropertyFilter> {
    let shapes: [&[Shape]; 6] = [
        &[],
        &[Shape::Reduced],
        &[Shape::Diagonal],
        &[Shape::Idempotent],
        &[Shape::Unipotent],
        &[Shape::Reduced, Shape::Unipotent],
    ];
    let mut out = Vec::new();
    for sym in [Symmetry::Symmetric, Symmetry::Semisymmetric, Symmetry::TotallySymmetric] {
        for s in shapes {
            if let Ok(f) = PropertyFilter::new(sym, s) {
                if enumerate_catalog(n, &f, &GenOptions::default(), None).is_ok() {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// `(jobs, screen depth)` settings compared for determinism.
pub const GEN_SETTINGS: [(usize, usize); 4] = [(1, 1), (8, 1), (1, 2), (8, 2)];

/// Catalog files of every category of order `n` are byte-identical under
/// every setting in [`GEN_SETTINGS`]. Returns the number of categories.
pub fn catalogs_are_deterministic(n: usize) -> Outcome {
    let mut compared = 0;
    for f in catalog_categories(n) {
        let texts: Vec<String> = GEN_SETTINGS
            .iter()
            .map(|&(jobs, depth)| {
                let gen = GenOptions::default().with_jobs(jobs).with_screen_depth(depth);
                enumerate_catalog(n, &f, &gen, None).map(|c| c.to_text()).map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        if let Some(k) = (1..texts.len()).find(|&k| texts[k] != texts[0]) {
            return Err(format!("{f} n={n} differs at jobs/depth {:?}", GEN_SETTINGS[k]));
        }
        compared += 1;
    }
    Ok(compared)
}
