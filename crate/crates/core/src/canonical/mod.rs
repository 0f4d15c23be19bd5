//! Canonical forms and invariants for isomorphism, rrs-isotopism,
//! isotopism and species.
//!
//! The canonical form of a square under a relation is the lexicographically
//! least row-major cell string in its class. Every relation reduces to a
//! least-isomorphic-image search: rrs-isotopism over the tables `N_x`
//! (symbols renamed through row `x`), isotopism over the principal loop
//! isotopes, species over the six conjugates.

mod graph;
mod search;

pub use graph::{ts_graphs_isomorphic, ts_isomorphism_graph, TsGraph};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::perm;
use crate::square::{Conjugate, LatinSquare};
use crate::{Error, Result};
pub(crate) use search::EMPTY;
use search::{min_image, Best, Traversal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceRelation {
    Isomorphism,
    RrsIsotopism,
    Isotopism,
    Species,
}

impl EquivalenceRelation {
    pub const ALL: [EquivalenceRelation; 4] = [
        EquivalenceRelation::Isomorphism,
        EquivalenceRelation::RrsIsotopism,
        EquivalenceRelation::Isotopism,
        EquivalenceRelation::Species,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquivalenceRelation::Isomorphism => "isomorphism",
            EquivalenceRelation::RrsIsotopism => "rrs-isotopism",
            EquivalenceRelation::Isotopism => "isotopism",
            EquivalenceRelation::Species => "species",
        }
    }

    /// Order of the acting group on squares of order `n`.
    pub fn group_order(self, n: usize) -> num_bigint::BigUint {
        let f: num_bigint::BigUint = (1..=n as u64).product();
        match self {
            EquivalenceRelation::Isomorphism => f,
            EquivalenceRelation::RrsIsotopism => &f * &f,
            EquivalenceRelation::Isotopism => &f * &f * &f,
            EquivalenceRelation::Species => &f * &f * &f * 6u32,
        }
    }

    /// Size of the stabiliser of `l` under this relation.
    pub fn stabiliser_order(self, l: &LatinSquare) -> u64 {
        (match self {
            EquivalenceRelation::Isomorphism => perm::automorphism_group(l).len(),
            EquivalenceRelation::RrsIsotopism => perm::rrs_autotopism_group(l).len(),
            EquivalenceRelation::Isotopism => perm::autotopism_group(l).len(),
            EquivalenceRelation::Species => perm::autoparatopism_group(l).len(),
        }) as u64
    }
}

impl fmt::Display for EquivalenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EquivalenceRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EquivalenceRelation::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown equivalence relation '{s}'")))
    }
}

pub fn canonical_form(l: &LatinSquare, rel: EquivalenceRelation) -> LatinSquare {
    LatinSquare::from_cells_unchecked(l.order(), canonical_cells(l, rel))
}

pub(crate) fn canonical_cells(l: &LatinSquare, rel: EquivalenceRelation) -> Vec<u8> {
    least_image(l, rel, Traversal::RowMajor)
}

/// Complete class invariant used as the dedup key: the least image read in
/// shell order. For the isotopy relations only rows (and columns) with the
/// least [`line_keys`] value are tried as the first line, which keeps the
/// value class-invariant while skipping most starts.
pub fn certificate(l: &LatinSquare, rel: EquivalenceRelation) -> Vec<u8> {
    least_image(l, rel, Traversal::Shell)
}

fn least_image(l: &LatinSquare, rel: EquivalenceRelation, t: Traversal) -> Vec<u8> {
    match rel {
        EquivalenceRelation::Isomorphism => iso_min(l.order(), l.cells(), t),
        EquivalenceRelation::RrsIsotopism => rrs_min(l, t),
        EquivalenceRelation::Isotopism => isotopism_min(l, t),
        EquivalenceRelation::Species => {
            let mut best: Option<Vec<u8>> = None;
            for sigma in Conjugate::all() {
                let c = isotopism_min(&l.conjugate(sigma), t);
                if best.as_ref().map_or(true, |b| c < *b) {
                    best = Some(c);
                }
            }
            best.unwrap()
        }
    }
}

/// Shell-order certificate of a possibly partial table up to isomorphism.
/// Cells equal to [`EMPTY`] stay empty and sort after every symbol.
pub(crate) fn partial_certificate(n: usize, cells: &[u8]) -> Vec<u8> {
    iso_min(n, cells, Traversal::Shell)
}

fn iso_min(n: usize, cells: &[u8], t: Traversal) -> Vec<u8> {
    let mut best = Best::new(n);
    min_image(n, cells, None, t, &mut best);
    best.cells
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per line `x`, a symmetric hash of the cycle types of `r_x^-1 r_y` over
/// all `y`, where `r_x` is row `x` (or column `x`) read as a permutation.
/// An isotopism conjugates these permutations, so the keys move with the
/// lines.
fn line_keys(l: &LatinSquare, columns: bool) -> Vec<u64> {
    let n = l.order();
    let c = l.cells();
    let line = |x: usize, k: usize| if columns { c[k * n + x] } else { c[x * n + k] } as usize;
    let mut inv = [0usize; 256];
    let mut keys = vec![0u64; n];
    if n > 64 {
        return keys;
    }
    for (x, key) in keys.iter_mut().enumerate() {
        for k in 0..n {
            inv[line(x, k)] = k;
        }
        for y in 0..n {
            let mut seen = 0u64;
            let mut h = 0u64;
            for start in 0..n {
                let mut len = 0u64;
                let mut k = start;
                while seen >> k & 1 == 0 {
                    seen |= 1 << k;
                    k = inv[line(y, k)];
                    len += 1;
                }
                if len > 0 {
                    h = h.wrapping_add(mix(len));
                }
            }
            *key = key.wrapping_add(mix(h));
        }
    }
    keys
}

/// Lines whose key is least; every line when the ordering step is skipped.
fn start_lines(l: &LatinSquare, columns: bool, t: Traversal) -> Vec<usize> {
    let n = l.order();
    if t == Traversal::RowMajor {
        return (0..n).collect();
    }
    let keys = line_keys(l, columns);
    let least = keys.iter().min().expect("order >= 1");
    (0..n).filter(|&x| keys[x] == *least).collect()
}

fn rrs_min(l: &LatinSquare, t: Traversal) -> Vec<u8> {
    let n = l.order();
    let mut best = Best::new(n);
    let mut table = vec![0u8; n * n];
    let mut col_of = vec![0u8; n];
    for x0 in start_lines(l, false, t) {
        // N[p][q] = column of row x0 holding L[p][q].
        for c in 0..n {
            col_of[l.get(x0, c)] = c as u8;
        }
        for (t, &s) in table.iter_mut().zip(l.cells()) {
            *t = col_of[s as usize];
        }
        min_image(n, &table, Some(x0 as u8), t, &mut best);
    }
    best.cells
}

fn isotopism_min(l: &LatinSquare, t: Traversal) -> Vec<u8> {
    let n = l.order();
    let mut best = Best::new(n);
    let mut table = vec![0u8; n * n];
    let mut row_of_sym = vec![0u8; n];
    let mut col_of_sym = vec![0u8; n];
    let cols = start_lines(l, true, t);
    for r0 in start_lines(l, false, t) {
        for c in 0..n {
            col_of_sym[l.get(r0, c)] = c as u8;
        }
        for &c0 in &cols {
            for r in 0..n {
                row_of_sym[l.get(r, c0)] = r as u8;
            }
            // Principal loop isotope with identity L[r0][c0].
            for x in 0..n {
                let r = row_of_sym[x] as usize;
                for y in 0..n {
                    table[x * n + y] = l.get(r, col_of_sym[y] as usize) as u8;
                }
            }
            min_image(n, &table, Some(l.get(r0, c0) as u8), t, &mut best);
        }
    }
    best.cells
}

/// Cheap class invariant used to bucket squares before canonicalising.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantSignature(Vec<u32>);

pub fn invariant_signature(l: &LatinSquare, rel: EquivalenceRelation) -> InvariantSignature {
    let n = l.order();
    let mut sig = vec![n as u32, l.intercalate_count() as u32];
    if rel <= EquivalenceRelation::RrsIsotopism {
        let mut mult = vec![0u32; n];
        for s in l.diagonal() {
            mult[s as usize] += 1;
        }
        mult.sort_unstable();
        sig.extend(mult);
    }
    if rel == EquivalenceRelation::Isomorphism {
        sig.push(l.idempotent_count() as u32);
    }
    if rel == EquivalenceRelation::Species {
        let mut parts: Vec<Vec<u32>> = [Conjugate::IDENTITY, Conjugate::TRANSPOSE, Conjugate::C312]
            .into_iter()
            .map(|s| row_cycle_multiset(&l.conjugate(s)))
            .collect();
        parts.sort();
        for p in parts {
            sig.push(u32::MAX);
            sig.extend(p);
        }
    } else {
        sig.push(u32::MAX);
        sig.extend(row_cycle_multiset(l));
    }
    InvariantSignature(sig)
}

/// Multiset over ordered row pairs of the cycle type of the permutation
/// taking row `a` to row `b`, flattened.
fn row_cycle_multiset(l: &LatinSquare) -> Vec<u32> {
    let n = l.order();
    let mut types: Vec<Vec<u8>> = Vec::with_capacity(n * n.saturating_sub(1));
    let mut map = vec![0u8; n];
    let mut seen = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            for c in 0..n {
                map[l.get(a, c)] = l.get(b, c) as u8;
            }
            seen.iter_mut().for_each(|s| *s = false);
            let mut lens = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut len = 0u8;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = map[x] as usize;
                    len += 1;
                }
                lens.push(len);
            }
            lens.sort_unstable_by(|a, b| b.cmp(a));
            types.push(lens);
        }
    }
    types.sort_unstable();
    let mut out = Vec::new();
    for t in types {
        out.push(0);
        out.extend(t.into_iter().map(u32::from));
    }
    out
}

/// One equivalence class seen in a stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub representative: LatinSquare,
    pub members_seen: u64,
    pub stabiliser_order: u64,
}

/// Duplicate elimination keyed by [`certificate`]. Partial results from
/// independent workers combine with [`Dedup::merge`]; the output is sorted
/// by canonical representative whatever the insertion order.
#[derive(Clone, Debug)]
pub struct Dedup {
    rel: EquivalenceRelation,
    order: Option<usize>,
    classes: BTreeMap<Vec<u8>, (LatinSquare, u64)>,
}

impl Dedup {
    pub fn new(rel: EquivalenceRelation) -> Self {
        Dedup { rel, order: None, classes: BTreeMap::new() }
    }

    pub fn relation(&self) -> EquivalenceRelation {
        self.rel
    }

    /// Returns true when `l` starts a new class.
    pub fn insert(&mut self, l: &LatinSquare) -> Result<bool> {
        let key = certificate(l, self.rel);
        self.insert_keyed(key, l, 1)
    }

    /// Records `seen` members of the class with certificate `key`.
    pub(crate) fn insert_keyed(&mut self, key: Vec<u8>, l: &LatinSquare, seen: u64) -> Result<bool> {
        let n = l.order();
        match self.order {
            Some(m) if m != n => return Err(Error::DegreeMismatch { expected: m, found: n }),
            _ => self.order = Some(n),
        }
        let e = self.classes.entry(key).or_insert_with(|| (l.clone(), 0));
        let fresh = e.1 == 0;
        e.1 += seen;
        Ok(fresh)
    }

    pub fn merge(&mut self, other: Dedup) -> Result<()> {
        if other.rel != self.rel {
            return Err(Error::Precondition("cannot merge dedup tables of different relations".into()));
        }
        if let (Some(a), Some(b)) = (self.order, other.order) {
            if a != b {
                return Err(Error::DegreeMismatch { expected: a, found: b });
            }
        }
        self.order = self.order.or(other.order);
        for (k, (l, v)) in other.classes {
            self.classes.entry(k).or_insert((l, 0)).1 += v;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// One member per class, in key order.
    pub fn members(&self) -> impl Iterator<Item = &LatinSquare> + '_ {
        self.classes.values().map(|(l, _)| l)
    }

    pub(crate) fn into_members(self) -> Vec<(LatinSquare, u64)> {
        self.classes.into_values().collect()
    }

    /// Class records with canonical representatives and stabiliser orders,
    /// sorted by representative.
    pub fn finish(self) -> Vec<ClassRecord> {
        let rel = self.rel;
        let mut out: Vec<ClassRecord> = self
            .classes
            .into_values()
            .map(|(member, seen)| {
                let representative = canonical_form(&member, rel);
                let stabiliser_order = rel.stabiliser_order(&representative);
                ClassRecord { representative, members_seen: seen, stabiliser_order }
            })
            .collect();
        out.sort_by(|a, b| a.representative.cells().cmp(b.representative.cells()));
        out
    }
}

/// Convenience wrapper over [`Dedup`] for a finite stream.
pub fn dedup<I: IntoIterator<Item = LatinSquare>>(stream: I, rel: EquivalenceRelation) -> Result<Vec<ClassRecord>> {
    let mut d = Dedup::new(rel);
    for l in stream {
        d.insert(&l)?;
    }
    Ok(d.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Isotopism, Permutation};

    fn z2z2() -> LatinSquare {
        LatinSquare::from_fn(4, |i, j| i ^ j).unwrap()
    }

    #[test]
    fn relation_names_round_trip() {
        for r in EquivalenceRelation::ALL {
            assert_eq!(r.as_str().parse::<EquivalenceRelation>().unwrap(), r);
        }
        assert!("iso".parse::<EquivalenceRelation>().is_err());
    }

    #[test]
    fn canonical_forms_are_members_and_idempotent() {
        let l = LatinSquare::from_rows(&[[1, 2, 3, 4], [2, 4, 1, 3], [3, 1, 4, 2], [4, 3, 2, 1]]).unwrap();
        for rel in EquivalenceRelation::ALL {
            let c = canonical_form(&l, rel);
            assert!(LatinSquare::from_cells(4, c.cells().to_vec()).is_ok());
            assert_eq!(canonical_form(&c, rel), c, "{rel}");
        }
        // Reduced canonical form under isotopism.
        assert!(canonical_form(&l, EquivalenceRelation::Isotopism).is_reduced());
    }

    #[test]
    fn intercalates_of_klein_table() {
        assert_eq!(z2z2().intercalate_count(), 12);
    }

    #[test]
    fn rrs_is_invariant_under_rrs_isotopisms() {
        let l = LatinSquare::cyclic(5);
        let a = Permutation::parse_cycles(5, "(1,3)(2,5,4)").unwrap();
        let g = Permutation::parse_cycles(5, "(1,2,3,4,5)").unwrap();
        let m = l.apply_isotopism(&Isotopism::new(a.clone(), a, g).unwrap()).unwrap();
        assert_eq!(
            canonical_form(&l, EquivalenceRelation::RrsIsotopism),
            canonical_form(&m, EquivalenceRelation::RrsIsotopism)
        );
    }

    #[test]
    fn dedup_merges_and_sorts() {
        let mut a = Dedup::new(EquivalenceRelation::Isotopism);
        let mut b = Dedup::new(EquivalenceRelation::Isotopism);
        assert!(a.insert(&LatinSquare::cyclic(4)).unwrap());
        assert!(b.insert(&z2z2()).unwrap());
        assert!(!b.insert(&z2z2().transpose()).unwrap());
        a.merge(b).unwrap();
        let recs = a.finish();
        assert_eq!(recs.len(), 2);
        assert!(recs[0].representative.cells() < recs[1].representative.cells());
        assert_eq!(recs.iter().map(|r| r.members_seen).sum::<u64>(), 3);
        assert!(dedup(Vec::new(), EquivalenceRelation::Species).unwrap().is_empty());
    }
}
