//! Counting pipelines: class counts per category, orbit counting over
//! rrs-autotopism groups, and the identities linking the categories.

mod closed;
mod derived;
mod symmetric;
mod tables;

pub use closed::{closed_census, ClosedCensus};
pub use derived::{derived_census, Census};
pub use symmetric::{
    symmetric_census, symmetric_classes, unipotent_symmetric_census, unipotent_symmetric_reduced, RrsClass, ShapeCount, SymmetricCensus,
    SymmetricMethod,
};
pub use tables::{Table, TableName};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::canonical::ClassRecord;
use crate::generate::GenOptions;
use crate::perm::{rrs_autotopism_group, Isotopism};
use crate::square::{LatinSquare, PropertyFilter};
use crate::{Error, Result};

/// The quantities a census row can hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountKind {
    Isomorphism,
    RrsIsotopism,
    Isotopism,
    Species,
    AllSquares,
}

impl CountKind {
    pub const ALL: [CountKind; 5] = [
        CountKind::Isomorphism,
        CountKind::RrsIsotopism,
        CountKind::Isotopism,
        CountKind::Species,
        CountKind::AllSquares,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CountKind::Isomorphism => "isomorphism",
            CountKind::RrsIsotopism => "rrs-isotopism",
            CountKind::Isotopism => "isotopism",
            CountKind::Species => "species",
            CountKind::AllSquares => "all-squares",
        }
    }
}

/// How a count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Enumerated,
    Burnside,
    OrbitStabiliser,
    IdentityDerived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Count {
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    pub provenance: Provenance,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One row of counts for a category of squares of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub order: usize,
    pub filter: PropertyFilter,
    pub counts: BTreeMap<CountKind, Count>,
}

impl CensusRow {
    pub fn new(order: usize, filter: PropertyFilter) -> Self {
        CensusRow { order, filter, counts: BTreeMap::new() }
    }

    pub fn set(&mut self, kind: CountKind, value: impl Into<BigUint>, provenance: Provenance) {
        self.counts.insert(kind, Count { value: value.into(), provenance });
    }

    pub fn get(&self, kind: CountKind) -> Option<&BigUint> {
        self.counts.get(&kind).map(|c| &c.value)
    }

    pub fn provenance(&self, kind: CountKind) -> Option<Provenance> {
        self.counts.get(&kind).map(|c| c.provenance)
    }

    /// Value of `kind`, or an error naming the missing cell.
    pub fn require(&self, kind: CountKind) -> Result<&BigUint> {
        self.get(kind)
            .ok_or_else(|| Error::Precondition(format!("{} row of order {} has no {} count", self.filter, self.order, kind.as_str())))
    }

    /// Class counts never increase from isomorphism to species, and a
    /// nonempty category has at least one class of each kind.
    pub fn check(&self) -> Result<()> {
        let chain: Vec<(CountKind, &BigUint)> = [
            CountKind::Isomorphism,
            CountKind::RrsIsotopism,
            CountKind::Isotopism,
            CountKind::Species,
        ]
        .into_iter()
        .filter_map(|k| self.get(k).map(|v| (k, v)))
        .collect();
        for w in chain.windows(2) {
            if w[0].1 < w[1].1 {
                return Err(Error::Precondition(format!(
                    "{} order {}: {} count {} below {} count {}",
                    self.filter,
                    self.order,
                    w[0].0.as_str(),
                    w[0].1,
                    w[1].0.as_str(),
                    w[1].1
                )));
            }
        }
        let zero = BigUint::from(0u32);
        let empty: Vec<bool> = self.counts.values().map(|c| c.value == zero).collect();
        if empty.iter().any(|&e| e) && !empty.iter().all(|&e| e) {
            return Err(Error::Precondition(format!(
                "{} order {}: some counts are zero and others are not",
                self.filter, self.order
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.filter, self.order)?;
        for (k, c) in &self.counts {
            write!(f, " {}={}", k.as_str(), c.value)?;
        }
        Ok(())
    }
}

/// Options shared by the counting pipelines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusOptions {
    pub gen: GenOptions,
    /// Autotopism method only: count squares whose rrs-autotopism group has
    /// order 2 without storing them.
    pub skip_order_two: bool,
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

fn divide_exact(total: BigUint, by: &BigUint, what: &str) -> Result<BigUint> {
    let zero = BigUint::from(0u32);
    if *by == zero || &total % by != zero {
        return Err(Error::Precondition(format!("{what}: {total} is not divisible by {by}")));
    }
    Ok(total / by)
}

/// Number of `sigma` with `alpha^sigma = gamma`: the centraliser order when
/// the cycle structures agree, else 0.
pub(crate) fn psi(iso: &Isotopism) -> BigUint {
    let a = iso.alpha.cycle_structure();
    if a == iso.gamma.cycle_structure() {
        BigUint::from(a.centraliser_order())
    } else {
        BigUint::from(0u32)
    }
}

/// Fixed points of `alpha` when `alpha` and `gamma` have the same cycle
/// structure, else 0.
pub(crate) fn lambda(iso: &Isotopism) -> BigUint {
    let a = iso.alpha.cycle_structure();
    if a == iso.gamma.cycle_structure() {
        BigUint::from(a.fixed_points())
    } else {
        BigUint::from(0u32)
    }
}

fn symmetric_group(rep: &LatinSquare) -> Result<Vec<Isotopism>> {
    if !rep.is_symmetric() {
        return Err(Error::Precondition("orbit counting needs a symmetric square".into()));
    }
    Ok(rrs_autotopism_group(rep))
}

pub(crate) fn orbit_sum(gamma: &[Isotopism], weight: fn(&Isotopism) -> BigUint, what: &str) -> Result<BigUint> {
    let total: BigUint = gamma.iter().map(weight).sum();
    divide_exact(total, &BigUint::from(gamma.len()), what)
}

/// Number of isomorphism classes among the symmetric squares rrs-isotopic
/// to `rep`.
pub fn burnside_isomorphism_count(rep: &LatinSquare) -> Result<BigUint> {
    orbit_sum(&symmetric_group(rep)?, psi, "isomorphism orbit sum")
}

/// Number of isomorphism classes containing reduced symmetric squares
/// rrs-isotopic to `rep`.
pub fn burnside_loop_count(rep: &LatinSquare) -> Result<BigUint> {
    orbit_sum(&symmetric_group(rep)?, lambda, "loop orbit sum")
}

/// Sum of `group_order / |stabiliser|` over the classes.
pub fn total_from_classes(classes: &[ClassRecord], group_order: &BigUint) -> Result<BigUint> {
    let mut total = BigUint::from(0u32);
    for c in classes {
        total += divide_exact(group_order.clone(), &BigUint::from(c.stabiliser_order), "class size")?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{dedup, EquivalenceRelation};
    use crate::generate::gen_symmetric_reduced;

    fn rrs_reps(n: usize) -> Vec<LatinSquare> {
        dedup(gen_symmetric_reduced(n), EquivalenceRelation::RrsIsotopism)
            .unwrap()
            .into_iter()
            .map(|c| c.representative)
            .collect()
    }

    #[test]
    fn orbit_sums_small_orders() {
        // Commutative quasigroups and loops of orders 2..=6 up to isomorphism.
        let expect = [(2, 1u32, 1u32), (3, 3, 1), (4, 7, 2), (5, 11, 1), (6, 491, 8)];
        for (n, iso, loops) in expect {
            let reps = rrs_reps(n);
            let a: BigUint = reps.iter().map(|r| burnside_isomorphism_count(r).unwrap()).sum();
            let b: BigUint = reps.iter().map(|r| burnside_loop_count(r).unwrap()).sum();
            assert_eq!((a, b), (BigUint::from(iso), BigUint::from(loops)), "n={n}");
        }
    }

    #[test]
    fn orbit_sum_matches_direct_isomorphism_dedup() {
        for n in 2..=5 {
            let mut all = Vec::new();
            for l in gen_symmetric_reduced(n) {
                for g in crate::perm::stabiliser::all_permutations(n) {
                    let iso = Isotopism::new(Permutation::identity(n), Permutation::identity(n), g).unwrap();
                    all.push(l.apply_isotopism(&iso).unwrap());
                }
            }
            let direct = dedup(all, EquivalenceRelation::Isomorphism).unwrap().len();
            let sum: BigUint = rrs_reps(n).iter().map(|r| burnside_isomorphism_count(r).unwrap()).sum();
            assert_eq!(sum, BigUint::from(direct), "n={n}");
        }
    }

    use crate::perm::Permutation;

    #[test]
    fn non_symmetric_rejected() {
        let l = LatinSquare::from_rows(&[[1, 2, 3], [3, 1, 2], [2, 3, 1]]).unwrap();
        assert!(burnside_isomorphism_count(&l).is_err());
        assert!(burnside_loop_count(&l).is_err());
    }

    #[test]
    fn totals_from_classes() {
        let one = ClassRecord { representative: LatinSquare::cyclic(1), members_seen: 1, stabiliser_order: 1 };
        assert_eq!(total_from_classes(&[one], &factorial(1)).unwrap(), BigUint::from(1u32));
        let bad = ClassRecord { representative: LatinSquare::cyclic(3), members_seen: 1, stabiliser_order: 4 };
        assert!(total_from_classes(&[bad], &factorial(3)).is_err());
    }

    #[test]
    fn row_chain_checked() {
        let mut r = CensusRow::new(4, PropertyFilter::plain(crate::square::Symmetry::Symmetric));
        r.set(CountKind::Isomorphism, 7u32, Provenance::Burnside);
        r.set(CountKind::Species, 2u32, Provenance::Enumerated);
        assert!(r.check().is_ok());
        r.set(CountKind::RrsIsotopism, 9u32, Provenance::Enumerated);
        assert!(r.check().is_err());
    }
}
