//! Semisymmetric and totally symmetric categories: isomorphism classes from
//! the generator, coarser classes by canonicalising the representatives.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{factorial, total_from_classes, CensusOptions, CensusRow, CountKind, Provenance};
use crate::canonical::{certificate, ClassRecord, EquivalenceRelation};
use crate::generate::{gen_semisymmetric_classes, gen_totally_symmetric_classes};
use crate::square::{PropertyFilter, Shape, Symmetry};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedCensus {
    pub order: usize,
    pub filter: PropertyFilter,
    /// Isomorphism classes, sorted by canonical representative.
    pub classes: Vec<ClassRecord>,
    pub isotopism: usize,
    pub species: usize,
    pub all_squares: BigUint,
}

impl ClosedCensus {
    pub fn row(&self) -> CensusRow {
        let mut r = CensusRow::new(self.order, self.filter.clone());
        r.set(CountKind::Isomorphism, self.classes.len(), Provenance::Enumerated);
        r.set(CountKind::Isotopism, self.isotopism, Provenance::Enumerated);
        r.set(CountKind::Species, self.species, Provenance::Enumerated);
        r.set(CountKind::AllSquares, self.all_squares.clone(), Provenance::OrbitStabiliser);
        r
    }
}

/// Number of distinct classes of `rel` among the representatives.
pub(crate) fn coarser_classes(classes: &[ClassRecord], rel: EquivalenceRelation) -> usize {
    classes
        .par_iter()
        .map(|c| certificate(&c.representative, rel))
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn closed_census(n: usize, filter: &PropertyFilter, opts: &CensusOptions) -> Result<ClosedCensus> {
    let classes = match filter.symmetry {
        Symmetry::Semisymmetric => gen_semisymmetric_classes(n, filter, &opts.gen)?,
        Symmetry::TotallySymmetric => gen_totally_symmetric_classes(n, filter, &opts.gen)?,
        other => {
            return Err(Error::Precondition(format!(
                "closed census needs a semisymmetric or totally-symmetric filter, not {}",
                other.as_str()
            )))
        }
    };
    // Reduced squares are loops with identity 1, which every isomorphism
    // between them fixes.
    let acting = if filter.has(Shape::Reduced) { factorial(n.saturating_sub(1)) } else { factorial(n) };
    let all_squares = total_from_classes(&classes, &acting)?;
    let (isotopism, species) = opts.gen.install(|| {
        (
            coarser_classes(&classes, EquivalenceRelation::Isotopism),
            coarser_classes(&classes, EquivalenceRelation::Species),
        )
    });
    Ok(ClosedCensus { order: n, filter: filter.clone(), classes, isotopism, species, all_squares })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(n: usize, filter: &str) -> Vec<String> {
        let row = closed_census(n, &filter.parse().unwrap(), &CensusOptions::default()).unwrap().row();
        row.check().unwrap();
        CountKind::ALL.iter().filter_map(|&k| row.get(k).map(|v| v.to_string())).collect()
    }

    #[test]
    fn semisymmetric_rows() {
        assert_eq!(counts(6, "semisymmetric"), ["9", "7", "7", "2880"]);
        assert_eq!(counts(7, "semisymmetric+idempotent"), ["4", "3", "3", "480"]);
        assert_eq!(counts(5, "semisymmetric+reduced"), ["1", "1", "1", "2"]);
        assert_eq!(counts(7, "semisymmetric+diagonal"), ["7", "5", "5", "3000"]);
    }

    #[test]
    fn totally_symmetric_rows() {
        assert_eq!(counts(6, "totally-symmetric"), ["3", "2", "2", "480"]);
        assert_eq!(counts(7, "totally-symmetric+idempotent"), ["1", "1", "1", "30"]);
    }

    #[test]
    fn symmetric_filter_rejected() {
        let f = PropertyFilter::plain(Symmetry::Symmetric);
        assert!(closed_census(4, &f, &CensusOptions::default()).is_err());
    }
}
