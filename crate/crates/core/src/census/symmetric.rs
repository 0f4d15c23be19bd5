//! Symmetric squares by rrs-isotopism class, either by canonicalising every
//! reduced square or from the squares with a nontrivial rrs-autotopism.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{divide_exact, factorial, lambda, orbit_sum, psi, CensusOptions, CensusRow, CountKind, Provenance};
use crate::canonical::{canonical_form, certificate, Dedup, EquivalenceRelation};
use crate::generate::{
    admissible_autotopism_shapes, count_symmetric_reduced, fold_symmetric_reduced, fold_symmetric_with_isotopism,
    shape_representative, AutotopismShape,
};
use crate::perm::{rrs_autotopism_group, CycleStructure, Isotopism};
use crate::square::{LatinSquare, PropertyFilter, Shape, Symmetry};
use crate::{Error, Result};

pub const MAX_BRUTE_ORDER: usize = 8;
pub const MAX_AUTOTOPISM_ORDER: usize = 9;
pub const MAX_UNIPOTENT_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetricMethod {
    /// Canonicalise every reduced symmetric square.
    Brute,
    /// Collect the classes with a nontrivial rrs-autotopism and infer the
    /// rest from the number of reduced squares.
    Autotopism,
}

impl SymmetricMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SymmetricMethod::Brute => "brute",
            SymmetricMethod::Autotopism => "autotopism",
        }
    }
}

impl fmt::Display for SymmetricMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SymmetricMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(SymmetricMethod::Brute),
            "autotopism" => Ok(SymmetricMethod::Autotopism),
            _ => Err(Error::Parse(format!("unknown census method {s:?}"))),
        }
    }
}

/// A stored rrs-isotopism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrsClass {
    /// Canonical form under rrs-isotopism.
    pub representative: LatinSquare,
    /// Order of the rrs-autotopism group.
    pub group_order: u64,
    pub isomorphism_classes: BigUint,
    pub loop_classes: BigUint,
}

/// Squares with the fixed autotopism of one shape, and their classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeCount {
    pub shape: AutotopismShape,
    pub squares: u64,
    pub rrs_classes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricCensus {
    pub order: usize,
    pub method: SymmetricMethod,
    /// Number of reduced symmetric squares.
    pub reduced: BigUint,
    /// Classes with a stored representative, sorted by it.
    pub classes: Vec<RrsClass>,
    /// Classes counted without a representative, with their isomorphism
    /// and loop class contributions.
    pub unstored: BigUint,
    pub unstored_isomorphism: BigUint,
    pub unstored_loops: BigUint,
    pub species: BigUint,
    /// Autotopism method only.
    pub shapes: Vec<ShapeCount>,
}

impl SymmetricCensus {
    pub fn rrs_classes(&self) -> BigUint {
        BigUint::from(self.classes.len()) + &self.unstored
    }

    pub fn isomorphism_classes(&self) -> BigUint {
        self.classes.iter().map(|c| &c.isomorphism_classes).sum::<BigUint>() + &self.unstored_isomorphism
    }

    pub fn loop_classes(&self) -> BigUint {
        self.classes.iter().map(|c| &c.loop_classes).sum::<BigUint>() + &self.unstored_loops
    }

    /// All symmetric squares of the order.
    pub fn row(&self) -> CensusRow {
        let mut r = CensusRow::new(self.order, PropertyFilter::plain(Symmetry::Symmetric));
        r.set(CountKind::Isomorphism, self.isomorphism_classes(), Provenance::Burnside);
        r.set(CountKind::RrsIsotopism, self.rrs_classes(), Provenance::Enumerated);
        r.set(CountKind::Isotopism, self.species.clone(), Provenance::IdentityDerived);
        r.set(CountKind::Species, self.species.clone(), Provenance::Enumerated);
        r.set(CountKind::AllSquares, factorial(self.order) * &self.reduced, Provenance::IdentityDerived);
        r
    }

    /// Reduced symmetric squares: every class containing a symmetric square
    /// contains a reduced one.
    pub fn reduced_row(&self) -> CensusRow {
        let mut r = CensusRow::new(self.order, PropertyFilter::with(Symmetry::Symmetric, Shape::Reduced));
        r.set(CountKind::Isomorphism, self.loop_classes(), Provenance::Burnside);
        r.set(CountKind::RrsIsotopism, self.rrs_classes(), Provenance::Enumerated);
        r.set(CountKind::Isotopism, self.species.clone(), Provenance::IdentityDerived);
        r.set(CountKind::Species, self.species.clone(), Provenance::Enumerated);
        r.set(CountKind::AllSquares, self.reduced.clone(), Provenance::Enumerated);
        r
    }
}

/// Counts for all symmetric squares of order `n`.
pub fn symmetric_census(n: usize, method: SymmetricMethod) -> Result<CensusRow> {
    Ok(symmetric_classes(n, method, &CensusOptions::default())?.row())
}

pub fn symmetric_classes(n: usize, method: SymmetricMethod, opts: &CensusOptions) -> Result<SymmetricCensus> {
    let max = match method {
        SymmetricMethod::Brute => MAX_BRUTE_ORDER,
        SymmetricMethod::Autotopism => MAX_AUTOTOPISM_ORDER,
    };
    if n == 0 || n > max {
        return Err(Error::Unsupported(format!("{method} symmetric census supports orders 1..={max}, not {n}")));
    }
    opts.gen.install(|| match method {
        SymmetricMethod::Brute => Ok(brute(n)),
        SymmetricMethod::Autotopism => by_autotopism(n, opts.skip_order_two),
    })
}

fn rrs_dedup() -> Dedup {
    Dedup::new(EquivalenceRelation::RrsIsotopism)
}

fn insert(d: &mut Dedup, l: &LatinSquare) {
    d.insert(l).expect("squares of one order");
}

fn merge(mut a: Dedup, b: Dedup) -> Dedup {
    a.merge(b).expect("squares of one order");
    a
}

fn summarise(d: Dedup) -> Result<Vec<RrsClass>> {
    let mut classes: Vec<RrsClass> = d
        .into_members()
        .into_par_iter()
        .map(|(m, _)| {
            let representative = canonical_form(&m, EquivalenceRelation::RrsIsotopism);
            let gamma = rrs_autotopism_group(&representative);
            Ok(RrsClass {
                group_order: gamma.len() as u64,
                isomorphism_classes: orbit_sum(&gamma, psi, "isomorphism orbit sum")?,
                loop_classes: orbit_sum(&gamma, lambda, "loop orbit sum")?,
                representative,
            })
        })
        .collect::<Result<_>>()?;
    classes.sort_by(|a, b| a.representative.cells().cmp(b.representative.cells()));
    Ok(classes)
}

fn species_of(squares: &[&LatinSquare]) -> usize {
    squares
        .par_iter()
        .map(|l| certificate(l, EquivalenceRelation::Species))
        .collect::<BTreeSet<_>>()
        .len()
}

fn brute(n: usize) -> SymmetricCensus {
    let (count, d) = fold_symmetric_reduced(
        n,
        || (0u64, rrs_dedup()),
        |acc, l| {
            acc.0 += 1;
            insert(&mut acc.1, l);
        },
        |a, b| (a.0 + b.0, merge(a.1, b.1)),
    );
    let classes = summarise(d).expect("orbit sums are integral");
    let species = species_of(&classes.iter().map(|c| &c.representative).collect::<Vec<_>>());
    let zero = BigUint::from(0u32);
    SymmetricCensus {
        order: n,
        method: SymmetricMethod::Brute,
        reduced: BigUint::from(count),
        classes,
        unstored: zero.clone(),
        unstored_isomorphism: zero.clone(),
        unstored_loops: zero,
        species: BigUint::from(species),
        shapes: Vec::new(),
    }
}

/// Squares with a fixed autotopism, grouped by reduced form: squares that
/// differ by a symbol permutation are canonicalised once.
#[derive(Default)]
struct ShapeAcc {
    squares: u64,
    /// Reduced form -> number of squares with it.
    forms: HashMap<Vec<u8>, u64>,
}

impl ShapeAcc {
    fn add(&mut self, l: &LatinSquare) {
        self.squares += 1;
        let (r, _) = l.reduce_by_symbols().expect("symmetric square");
        if let Some(k) = self.forms.get_mut(r.cells()) {
            *k += 1;
        } else {
            self.forms.insert(r.into_cells(), 1);
        }
    }

    fn merge(mut self, other: ShapeAcc) -> ShapeAcc {
        self.squares += other.squares;
        for (f, k) in other.forms {
            *self.forms.entry(f).or_insert(0) += k;
        }
        self
    }

    /// Squares whose rrs-autotopism group has order 2 when `skip_order_two`,
    /// and the classes of the others.
    fn finish(self, n: usize, skip_order_two: bool) -> (u64, u64, Dedup) {
        let forms: Vec<(Vec<u8>, u64)> = self.forms.into_iter().collect();
        let (two, d) = forms
            .into_par_iter()
            .fold(
                || (0u64, rrs_dedup()),
                |mut acc, (cells, k)| {
                    let r = LatinSquare::from_cells_unchecked(n, cells);
                    if skip_order_two && rrs_autotopism_group(&r).len() == 2 {
                        acc.0 += k;
                    } else {
                        insert(&mut acc.1, &r);
                    }
                    acc
                },
            )
            .reduce(|| (0u64, rrs_dedup()), |a, b| (a.0 + b.0, merge(a.1, b.1)));
        (self.squares, two, d)
    }
}

fn shape_isotopism(shape: &AutotopismShape) -> Isotopism {
    let (a, g) = shape_representative(shape);
    Isotopism::new(a.clone(), a, g).expect("one degree")
}

fn by_autotopism(n: usize, skip_order_two: bool) -> Result<SymmetricCensus> {
    let fact = factorial(n);
    let reduced = BigUint::from(count_symmetric_reduced(n));
    let mut all = rrs_dedup();
    let mut shapes = Vec::new();
    let mut unstored = BigUint::from(0u32);
    let mut unstored_isomorphism = BigUint::from(0u32);
    let mut unstored_loops = BigUint::from(0u32);
    let mut accounted = BigUint::from(0u32);
    let shape_list = if n == 1 { Vec::new() } else { admissible_autotopism_shapes(n)? };
    for shape in shape_list {
        let iso = shape_isotopism(&shape);
        let acc = fold_symmetric_with_isotopism(&iso, ShapeAcc::default, ShapeAcc::add, ShapeAcc::merge);
        let (squares, two, d) = acc.finish(n, skip_order_two);
        log::info!("order {n} shape ({}, {}): {squares} squares, {} classes stored", shape.alpha, shape.gamma, d.len());
        // A class with group {e, g} has |C(alpha)| |C(gamma)| / 2 members
        // with autotopism g.
        let centralisers = BigUint::from(shape.alpha.centraliser_order()) * shape.gamma.centraliser_order();
        let two_classes = divide_exact(BigUint::from(two) * 2u32, &centralisers, "order-2 class count")?;
        let two_u64 = u64::try_from(&two_classes).map_err(|_| Error::Precondition("class count overflow".into()))?;
        shapes.push(ShapeCount { shape, squares, rrs_classes: d.len() as u64 + two_u64 });
        unstored_isomorphism += divide_exact(&two_classes * (&fact + psi(&iso)), &BigUint::from(2u32), "isomorphism count")?;
        unstored_loops += divide_exact(&two_classes * (BigUint::from(n) + lambda(&iso)), &BigUint::from(2u32), "loop count")?;
        accounted += &two_classes * &fact / 2u32;
        unstored += two_classes;
        all = merge(all, d);
    }
    let classes = summarise(all)?;
    log::info!("order {n}: {} classes with nontrivial rrs-autotopism group summarised", classes.len());
    let least = if skip_order_two { 3 } else { 2 };
    if let Some(c) = classes.iter().find(|c| c.group_order < least) {
        return Err(Error::Precondition(format!(
            "stored class has rrs-autotopism group of order {}",
            c.group_order
        )));
    }
    for c in &classes {
        accounted += &fact / c.group_order;
    }
    if accounted > reduced {
        return Err(Error::Precondition(format!(
            "classes with nontrivial group hold {accounted} reduced squares, more than all {reduced}"
        )));
    }
    // The remaining classes have trivial group and n! reduced squares each.
    let trivial = divide_exact(&reduced - &accounted, &fact, "trivial class count")?;
    unstored_isomorphism += &trivial * &fact;
    unstored_loops += &trivial * n;
    unstored += trivial;
    let rrs_total = BigUint::from(classes.len()) + &unstored;
    log::info!("order {n}: {rrs_total} rrs classes");
    let species = if n % 2 == 1 { rrs_total } else { species_via_omega(n, rrs_total)? };
    Ok(SymmetricCensus {
        order: n,
        method: SymmetricMethod::Autotopism,
        reduced,
        classes,
        unstored,
        unstored_isomorphism,
        unstored_loops,
        species,
        shapes,
    })
}

/// Squares outside the set with an autotopism `(theta, theta^-1, e)`,
/// `theta` semiregular of prime order, are alone in their species among
/// rrs-classes; inside that set species are found directly.
fn species_via_omega(n: usize, rrs_total: BigUint) -> Result<BigUint> {
    let d = omega_classes(n);
    let members: Vec<&LatinSquare> = d.members().collect();
    let species = species_of(&members);
    Ok(rrs_total - members.len() + species)
}

/// rrs-classes of symmetric squares of order `n` with an autotopism
/// `(theta, theta^-1, e)` for a semiregular `theta` of prime order.
pub(crate) fn omega_classes(n: usize) -> Dedup {
    let mut all = rrs_dedup();
    for p in (2..=n).filter(|&p| n % p == 0 && (2..p).all(|q| p % q != 0)) {
        let theta = CycleStructure::from_lengths(std::iter::repeat(p).take(n / p)).representative();
        let iso = Isotopism::new(theta.clone(), theta.inverse(), crate::perm::Permutation::identity(n)).expect("one degree");
        let acc = fold_symmetric_with_isotopism(&iso, ShapeAcc::default, ShapeAcc::add, ShapeAcc::merge);
        all = merge(all, acc.finish(n, false).2);
    }
    all
}

/// Counts for reduced unipotent symmetric squares of order `n`, by direct
/// enumeration.
/// Reduced unipotent symmetric squares of order `n`, sorted.
pub fn unipotent_symmetric_reduced(n: usize, opts: &CensusOptions) -> Result<Vec<LatinSquare>> {
    if n == 0 || n > MAX_UNIPOTENT_ORDER {
        return Err(Error::Unsupported(format!(
            "unipotent symmetric census supports orders 1..={MAX_UNIPOTENT_ORDER}, not {n}"
        )));
    }
    Ok(opts.gen.install(|| {
        let mut v = fold_symmetric_reduced(
            n,
            Vec::new,
            |acc, l| {
                if l.is_unipotent() {
                    acc.push(l.clone());
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        v.sort_by(|a, b| a.cells().cmp(b.cells()));
        v
    }))
}

pub fn unipotent_symmetric_census(n: usize, opts: &CensusOptions) -> Result<CensusRow> {
    let squares = unipotent_symmetric_reduced(n, opts)?;
    let filter = PropertyFilter::new(Symmetry::Symmetric, &[Shape::Reduced, Shape::Unipotent])?;
    let mut row = CensusRow::new(n, filter);
    for (kind, rel) in [
        (CountKind::Isomorphism, EquivalenceRelation::Isomorphism),
        (CountKind::RrsIsotopism, EquivalenceRelation::RrsIsotopism),
        (CountKind::Isotopism, EquivalenceRelation::Isotopism),
        (CountKind::Species, EquivalenceRelation::Species),
    ] {
        let classes = opts.gen.install(|| squares.par_iter().map(|l| certificate(l, rel)).collect::<BTreeSet<_>>());
        row.set(kind, classes.len(), Provenance::Enumerated);
    }
    row.set(CountKind::AllSquares, squares.len(), Provenance::Enumerated);
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn methods_agree_small() {
        for n in 1..=7 {
            let a = symmetric_classes(n, SymmetricMethod::Brute, &CensusOptions::default()).unwrap();
            let b = symmetric_classes(n, SymmetricMethod::Autotopism, &CensusOptions::default()).unwrap();
            assert_eq!(a.row().counts, b.row().counts, "n={n}");
            assert_eq!(a.reduced_row().counts, b.reduced_row().counts, "n={n}");
        }
    }

    #[test]
    fn skipping_order_two_changes_nothing() {
        let skip = CensusOptions { skip_order_two: true, ..Default::default() };
        for n in 4..=7 {
            let a = symmetric_classes(n, SymmetricMethod::Autotopism, &CensusOptions::default()).unwrap();
            let b = symmetric_classes(n, SymmetricMethod::Autotopism, &skip).unwrap();
            assert_eq!(a.row().counts, b.row().counts, "n={n}");
            let ls = |c: &SymmetricCensus| c.shapes.iter().map(|s| s.rrs_classes).collect::<Vec<_>>();
            assert_eq!(ls(&a), ls(&b));
        }
    }

    #[test]
    fn small_rows() {
        let r = symmetric_census(6, SymmetricMethod::Brute).unwrap();
        assert_eq!(r.get(CountKind::RrsIsotopism), Some(&big(6)));
        assert_eq!(r.get(CountKind::Species), Some(&big(6)));
        assert_eq!(r.get(CountKind::Isomorphism), Some(&big(491)));
        assert_eq!(r.get(CountKind::AllSquares), Some(&big(456 * 720)));
        r.check().unwrap();
        assert!(symmetric_census(9, SymmetricMethod::Brute).is_err());
        assert!(symmetric_census(0, SymmetricMethod::Autotopism).is_err());
    }

    #[test]
    fn unipotent_rows_small() {
        let r = unipotent_symmetric_census(6, &CensusOptions::default()).unwrap();
        for k in [CountKind::Isomorphism, CountKind::RrsIsotopism, CountKind::Species] {
            assert_eq!(r.get(k), Some(&big(1)), "{}", k.as_str());
        }
        // Reduced unipotent squares of order 6 come from the 6 reduced
        // symmetric squares of order 5.
        assert_eq!(r.get(CountKind::AllSquares), Some(&big(6)));
        let odd = unipotent_symmetric_census(5, &CensusOptions::default()).unwrap();
        assert_eq!(odd.get(CountKind::AllSquares), Some(&big(0)));
    }
}
