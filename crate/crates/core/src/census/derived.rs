//! Rows for every category, filled from the directly computed tables
//! through the identities between categories.
//!
//! Directly computed tables: symmetric squares by rrs-class (with the
//! isomorphism and loop counts), reduced unipotent symmetric squares, and
//! the semisymmetric and totally symmetric generators. Every other cell is
//! derived, possibly from a neighbouring order.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::symmetric::{symmetric_classes, unipotent_symmetric_census, MAX_BRUTE_ORDER};
use super::{closed_census, factorial, CensusOptions, CensusRow, ClosedCensus, CountKind, Provenance, SymmetricCensus, SymmetricMethod};
use crate::square::{PropertyFilter, Shape, Symmetry};
use crate::{Error, Result};

/// Memoising provider of the directly computed tables.
#[derive(Debug, Default)]
pub struct Census {
    pub options: CensusOptions,
    /// Symmetric method; by default brute force where supported.
    pub method: Option<SymmetricMethod>,
    symmetric: BTreeMap<(usize, SymmetricMethod), SymmetricCensus>,
    closed: BTreeMap<(usize, PropertyFilter), ClosedCensus>,
    unipotent: BTreeMap<usize, CensusRow>,
}

impl Census {
    pub fn new(options: CensusOptions) -> Self {
        Census { options, ..Default::default() }
    }

    pub fn with_method(mut self, method: SymmetricMethod) -> Self {
        self.method = Some(method);
        self
    }

    fn default_method(&self, n: usize) -> SymmetricMethod {
        self.method.unwrap_or(if n <= MAX_BRUTE_ORDER { SymmetricMethod::Brute } else { SymmetricMethod::Autotopism })
    }

    pub fn symmetric(&mut self, n: usize) -> Result<SymmetricCensus> {
        let method = self.default_method(n);
        self.symmetric_by(n, method)
    }

    pub fn symmetric_by(&mut self, n: usize, method: SymmetricMethod) -> Result<SymmetricCensus> {
        if let Some(c) = self.symmetric.get(&(n, method)) {
            return Ok(c.clone());
        }
        let c = symmetric_classes(n, method, &self.options)?;
        self.symmetric.insert((n, method), c.clone());
        Ok(c)
    }

    pub fn closed(&mut self, n: usize, filter: &PropertyFilter) -> Result<ClosedCensus> {
        let key = (n, filter.clone());
        if let Some(c) = self.closed.get(&key) {
            return Ok(c.clone());
        }
        let c = closed_census(n, filter, &self.options)?;
        self.closed.insert(key, c.clone());
        Ok(c)
    }

    pub fn unipotent_symmetric(&mut self, n: usize) -> Result<CensusRow> {
        if let Some(c) = self.unipotent.get(&n) {
            return Ok(c.clone());
        }
        let c = unipotent_symmetric_census(n, &self.options)?;
        self.unipotent.insert(n, c.clone());
        Ok(c)
    }

    /// Row for `filter` at order `n`. Cells whose source table is out of
    /// range are left out; an error is returned only when no cell can be
    /// filled or a computation fails.
    pub fn derived(&mut self, n: usize, filter: &PropertyFilter) -> Result<CensusRow> {
        let mut row = CensusRow::new(n, filter.clone());
        if n == 0 {
            return Err(Error::Unsupported("order 0".into()));
        }
        let shapes = filter.shapes().to_vec();
        let has = |s: Shape| shapes.contains(&s);
        let only = |want: &[Shape]| shapes.len() == want.len() && want.iter().all(|s| has(*s));
        let unsupported = || Error::Unsupported(format!("no derivation for {filter}"));
        let kinds: &[CountKind] = match filter.symmetry {
            Symmetry::Symmetric => &CountKind::ALL,
            Symmetry::Semisymmetric | Symmetry::TotallySymmetric => {
                &[CountKind::Isomorphism, CountKind::Isotopism, CountKind::Species, CountKind::AllSquares]
            }
            Symmetry::Any => return Err(unsupported()),
        };
        let known = [
            &[][..],
            &[Shape::Idempotent],
            &[Shape::Unipotent],
            &[Shape::Reduced],
            &[Shape::Diagonal],
            &[Shape::Reduced, Shape::Unipotent],
            &[Shape::Reduced, Shape::Diagonal],
        ];
        let allowed = match filter.symmetry {
            Symmetry::Symmetric => known.iter().any(|k| only(k)),
            _ => known[..5].iter().any(|k| only(k)),
        };
        if !allowed {
            return Err(unsupported());
        }
        // The single square of order 1 has every shape.
        if n == 1 {
            for &k in kinds {
                row.set(k, 1u32, Provenance::Enumerated);
            }
            return Ok(row);
        }
        let id = Provenance::IdentityDerived;
        let odd = n % 2 == 1;
        // Symmetric squares of even order have no idempotent or diagonal
        // form; of odd order no unipotent form. Totally symmetric ones
        // likewise for diagonal.
        let empty = match filter.symmetry {
            Symmetry::Symmetric => ((has(Shape::Idempotent) || has(Shape::Diagonal)) && !odd) || (has(Shape::Unipotent) && odd),
            Symmetry::TotallySymmetric => has(Shape::Diagonal) && !odd,
            _ => false,
        };
        if empty {
            for &k in kinds {
                row.set(k, 0u32, id);
            }
            return Ok(row);
        }
        let mut cells: Vec<(CountKind, Result<(BigUint, Provenance)>)> = Vec::new();
        match filter.symmetry {
            Symmetry::Symmetric => {
                if only(&[Shape::Reduced, Shape::Unipotent]) {
                    let prev = self.symmetric(n - 1);
                    let u = self.unipotent_symmetric(n);
                    let from_u = |k: CountKind, p: Provenance| {
                        u.clone().and_then(|r| r.require(k).cloned()).map(|v| (v, p))
                    };
                    cells.push((CountKind::Isomorphism, prev.as_ref().map(|s| (s.species.clone(), id)).map_err(Clone::clone)));
                    cells.push((CountKind::RrsIsotopism, from_u(CountKind::RrsIsotopism, Provenance::Enumerated)));
                    cells.push((CountKind::Isotopism, from_u(CountKind::Species, id)));
                    cells.push((CountKind::Species, from_u(CountKind::Species, Provenance::Enumerated)));
                    cells.push((CountKind::AllSquares, prev.map(|s| (s.reduced, id))));
                } else if only(&[Shape::Unipotent]) {
                    let prev = self.symmetric(n - 1);
                    let u = self.unipotent_symmetric(n);
                    let from_u = |k: CountKind| u.clone().and_then(|r| r.require(k).cloned()).map(|v| (v, id));
                    cells.push((CountKind::Isomorphism, prev.as_ref().map(|s| (s.isomorphism_classes(), id)).map_err(Clone::clone)));
                    cells.push((CountKind::RrsIsotopism, from_u(CountKind::RrsIsotopism)));
                    cells.push((CountKind::Isotopism, from_u(CountKind::Species)));
                    cells.push((CountKind::Species, from_u(CountKind::Species)));
                    cells.push((CountKind::AllSquares, prev.map(|s| (factorial(n) * s.reduced, id))));
                } else {
                    let s = self.symmetric(n)?;
                    let species = s.species.clone();
                    if has(Shape::Idempotent) {
                        for k in [CountKind::Isomorphism, CountKind::RrsIsotopism, CountKind::Isotopism, CountKind::Species] {
                            cells.push((k, Ok((species.clone(), id))));
                        }
                        cells.push((CountKind::AllSquares, Ok((s.reduced.clone(), id))));
                    } else {
                        let reduced = has(Shape::Reduced);
                        let diag = if has(Shape::Diagonal) { id } else { Provenance::Enumerated };
                        let (iso, prov) = if reduced { (s.loop_classes(), Provenance::Burnside) } else { (s.isomorphism_classes(), Provenance::Burnside) };
                        cells.push((CountKind::Isomorphism, Ok((iso, if has(Shape::Diagonal) { id } else { prov }))));
                        cells.push((CountKind::RrsIsotopism, Ok((s.rrs_classes(), diag))));
                        cells.push((CountKind::Isotopism, Ok((species.clone(), id))));
                        cells.push((CountKind::Species, Ok((species, diag))));
                        let all = if reduced { (s.reduced.clone(), diag) } else { (factorial(n) * &s.reduced, id) };
                        cells.push((CountKind::AllSquares, Ok(all)));
                    }
                }
            }
            Symmetry::Semisymmetric => {
                if only(&[Shape::Unipotent]) {
                    let c = self.closed(n, &PropertyFilter::with(Symmetry::Semisymmetric, Shape::Reduced))?;
                    cells.push((CountKind::Isomorphism, Ok((BigUint::from(c.classes.len()), id))));
                    cells.push((CountKind::Isotopism, Ok((BigUint::from(c.isotopism), id))));
                    cells.push((CountKind::Species, Ok((BigUint::from(c.species), id))));
                    cells.push((CountKind::AllSquares, Ok((c.all_squares * n, id))));
                } else {
                    let c = self.closed(n, filter)?;
                    for (k, v) in c.row().counts {
                        cells.push((k, Ok((v.value, v.provenance))));
                    }
                }
            }
            Symmetry::TotallySymmetric => {
                let sts = PropertyFilter::with(Symmetry::TotallySymmetric, Shape::Idempotent);
                if has(Shape::Unipotent) || has(Shape::Reduced) {
                    // Prolongation of idempotent squares of order n - 1.
                    let c = self.closed(n - 1, &sts)?;
                    let sp = BigUint::from(c.species);
                    for k in [CountKind::Isomorphism, CountKind::Isotopism, CountKind::Species] {
                        cells.push((k, Ok((sp.clone(), id))));
                    }
                    let all = if has(Shape::Unipotent) { c.all_squares * n } else { c.all_squares };
                    cells.push((CountKind::AllSquares, Ok((all, id))));
                } else if has(Shape::Idempotent) {
                    let c = self.closed(n, &sts)?;
                    let sp = BigUint::from(c.species);
                    cells.push((CountKind::Isomorphism, Ok((sp.clone(), id))));
                    cells.push((CountKind::Isotopism, Ok((sp.clone(), id))));
                    cells.push((CountKind::Species, Ok((sp, Provenance::Enumerated))));
                    cells.push((CountKind::AllSquares, Ok((c.all_squares, Provenance::OrbitStabiliser))));
                } else {
                    let c = self.closed(n, &PropertyFilter::plain(Symmetry::TotallySymmetric))?;
                    let p = |base: Provenance| if has(Shape::Diagonal) { id } else { base };
                    cells.push((CountKind::Isomorphism, Ok((BigUint::from(c.classes.len()), p(Provenance::Enumerated)))));
                    cells.push((CountKind::Isotopism, Ok((BigUint::from(c.species), id))));
                    cells.push((CountKind::Species, Ok((BigUint::from(c.species), p(Provenance::Enumerated)))));
                    cells.push((CountKind::AllSquares, Ok((c.all_squares, p(Provenance::OrbitStabiliser)))));
                }
            }
            Symmetry::Any => unreachable!(),
        }
        let mut first_err = None;
        for (k, v) in cells {
            match v {
                Ok((value, prov)) => row.set(k, value, prov),
                Err(Error::Unsupported(m)) => {
                    first_err.get_or_insert(Error::Unsupported(m));
                }
                Err(e) => return Err(e),
            }
        }
        if row.counts.is_empty() {
            return Err(first_err.unwrap_or_else(unsupported));
        }
        Ok(row)
    }
}

/// [`Census::derived`] with default options.
pub fn derived_census(n: usize, filter: &PropertyFilter) -> Result<CensusRow> {
    Census::default().derived(n, filter)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(row: &CensusRow, k: CountKind) -> u64 {
        u64::try_from(row.get(k).unwrap()).unwrap()
    }

    fn f(s: &str) -> PropertyFilter {
        s.parse().unwrap()
    }

    #[test]
    fn unipotent_symmetric_from_previous_order() {
        let mut c = Census::default();
        let row = c.derived(6, &f("symmetric+unipotent")).unwrap();
        assert_eq!(get(&row, CountKind::Isomorphism), 11);
        assert_eq!(get(&row, CountKind::AllSquares), 720 * 6);
        assert_eq!(row.provenance(CountKind::Isomorphism), Some(Provenance::IdentityDerived));
        let red = c.derived(6, &f("symmetric+reduced+unipotent")).unwrap();
        assert_eq!(get(&red, CountKind::AllSquares), 6);
        // Rows of 1-factorisations of K_6 and their species agree.
        assert_eq!(get(&red, CountKind::RrsIsotopism), get(&red, CountKind::Species));
        let direct = c.unipotent_symmetric(6).unwrap();
        for k in CountKind::ALL {
            if let (Some(a), Some(b)) = (red.get(k), direct.get(k)) {
                assert_eq!(a, b, "{}", k.as_str());
            }
        }
    }

    #[test]
    fn parity_empties_and_unsupported() {
        let row = derived_census(4, &f("symmetric+idempotent")).unwrap();
        assert!(row.counts.values().all(|c| c.value == BigUint::from(0u32)));
        assert!(derived_census(4, &f("semisymmetric+reduced+diagonal")).is_err());
        assert!(derived_census(3, &f("none")).is_err());
        let one = derived_census(1, &f("totally-symmetric+unipotent")).unwrap();
        assert_eq!(get(&one, CountKind::AllSquares), 1);
    }

    #[test]
    fn semisymmetric_unipotent_is_n_times_reduced() {
        let mut c = Census::default();
        let uni = c.derived(5, &f("semisymmetric+unipotent")).unwrap();
        let red = c.derived(5, &f("semisymmetric+reduced")).unwrap();
        assert_eq!(get(&uni, CountKind::AllSquares), 5 * get(&red, CountKind::AllSquares));
        let direct = closed_census(5, &f("semisymmetric+unipotent"), &CensusOptions::default()).unwrap().row();
        assert_eq!(uni.get(CountKind::AllSquares), direct.get(CountKind::AllSquares));
        assert_eq!(uni.get(CountKind::Isomorphism), direct.get(CountKind::Isomorphism));
    }

    #[test]
    fn totally_symmetric_prolongation_rows() {
        let mut c = Census::default();
        for n in [4, 8] {
            for shape in ["unipotent", "reduced"] {
                let filter = f(&format!("totally-symmetric+{shape}"));
                let derived = c.derived(n, &filter).unwrap();
                let direct = closed_census(n, &filter, &CensusOptions::default()).unwrap().row();
                assert_eq!(derived.counts.len(), direct.counts.len());
                for k in CountKind::ALL {
                    assert_eq!(derived.get(k), direct.get(k), "n={n} {shape} {}", k.as_str());
                }
            }
        }
    }

    #[test]
    fn symmetric_shapes_match_direct_filtering() {
        let mut c = Census::default();
        let n = 5;
        let all = crate::generate::gen_symmetric_reduced(n);
        for shape in ["diagonal", "idempotent", "reduced"] {
            let row = c.derived(n, &f(&format!("symmetric+{shape}"))).unwrap();
            row.check().unwrap();
            assert!(get(&row, CountKind::Species) >= 1);
        }
        assert_eq!(get(&c.derived(n, &f("symmetric+reduced")).unwrap(), CountKind::AllSquares), all.len() as u64);
    }
}
