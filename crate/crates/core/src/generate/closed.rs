//! Semisymmetric and totally symmetric squares up to isomorphism.
//!
//! Each diagonal seed is closed under the conjugates defining the category
//! and extended by backtracking. Partial squares may be screened up to
//! isomorphism once their first rows are full: the completions of
//! isomorphic partial squares are isomorphic, so one per class suffices.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::filler::{Filler, TripleMap};
use super::seeds::diagonal_seeds;
use super::GenOptions;
use crate::canonical::EMPTY;
use crate::canonical::{certificate, partial_certificate, ClassRecord, Dedup, EquivalenceRelation};
use crate::square::{LatinSquare, PropertyFilter, Shape, Symmetry};
use crate::{Error, Result};

/// A search subtree: the seed it descends from and its partial cells.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subtree {
    pub seed: usize,
    pub cells: Vec<u8>,
}

fn maps_for(symmetry: Symmetry) -> Result<Vec<TripleMap>> {
    match symmetry {
        Symmetry::Semisymmetric => Ok(vec![TripleMap::Rotate]),
        Symmetry::TotallySymmetric => Ok(vec![TripleMap::Rotate, TripleMap::Transpose]),
        other => Err(Error::Precondition(format!(
            "closed generator needs semisymmetric or totally-symmetric, not {}",
            other.as_str()
        ))),
    }
}

/// Seeds placed and screened through `opts.screen_depth` stages; the
/// returned subtrees together yield every class exactly as often as one
/// per isomorphic partial square.
pub fn prepare_subtrees(n: usize, filter: &PropertyFilter, opts: &GenOptions) -> Result<Vec<Subtree>> {
    let maps = maps_for(filter.symmetry)?;
    Ok(opts.install(|| {
        let mut states: Vec<Subtree> = Vec::new();
        for (seed, d) in diagonal_seeds(n, filter).into_iter().enumerate() {
            let mut f = Filler::new(n, maps.clone());
            let mut ok = (0..n).all(|i| f.place([i as u8, i as u8, d.diagonal[i]]));
            if ok && filter.has(Shape::Reduced) {
                // Unipotent seeds put the constant symbol at point 0; a loop
                // has it as identity.
                let e = d.diagonal[0];
                ok = (0..n).all(|j| f.place([e, j as u8, j as u8]));
            }
            if ok {
                states.push(Subtree { seed, cells: f.cells.clone() });
            }
        }
        for _ in 0..opts.screen_depth {
            states = screen(n, &maps, states);
        }
        states
    }))
}

fn full_rows(n: usize, cells: &[u8]) -> usize {
    cells.chunks(n).take_while(|r| r.iter().all(|&v| v != EMPTY)).count()
}

/// Fills one more row of every state and keeps one partial square per
/// isomorphism class (the least cell array).
fn screen(n: usize, maps: &[TripleMap], states: Vec<Subtree>) -> Vec<Subtree> {
    let merged = states
        .into_par_iter()
        .map(|st| {
            let mut found: BTreeMap<Vec<u8>, Subtree> = BTreeMap::new();
            let rows = (full_rows(n, &st.cells) + 1).min(n);
            if let Some(mut f) = Filler::from_cells(n, maps.to_vec(), &st.cells) {
                f.extend(rows, &mut |z| {
                    let key = partial_certificate(n, &z.cells);
                    let cand = Subtree { seed: st.seed, cells: z.cells.clone() };
                    found
                        .entry(key)
                        .and_modify(|cur| {
                            if cand < *cur {
                                *cur = cand.clone();
                            }
                        })
                        .or_insert(cand);
                });
            }
            found
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                match a.get_mut(&k) {
                    Some(cur) => {
                        debug_assert_eq!(cur.seed, v.seed, "partial squares from different seeds are isomorphic");
                        if v < *cur {
                            *cur = v;
                        }
                    }
                    None => {
                        a.insert(k, v);
                    }
                }
            }
            a
        });
    merged.into_values().collect()
}

/// Per-class results of completing some subtrees: key -> (member, seed,
/// completions seen).
#[derive(Clone, Debug, Default)]
pub struct SubtreeResult {
    pub classes: BTreeMap<Vec<u8>, (LatinSquare, usize, u64)>,
}

impl SubtreeResult {
    pub fn merge(&mut self, other: SubtreeResult) {
        for (k, (l, seed, cnt)) in other.classes {
            match self.classes.get_mut(&k) {
                Some(cur) => {
                    debug_assert_eq!(cur.1, seed, "squares from different diagonal seeds are isomorphic");
                    cur.2 += cnt;
                    if l.cells() < cur.0.cells() {
                        cur.0 = l;
                    }
                }
                None => {
                    self.classes.insert(k, (l, seed, cnt));
                }
            }
        }
    }

    pub fn into_dedup(self) -> Dedup {
        let mut d = Dedup::new(EquivalenceRelation::Isomorphism);
        for (k, (l, _, cnt)) in self.classes {
            d.insert_keyed(k, &l, cnt).expect("one order");
        }
        d
    }
}

/// Completes one subtree.
pub fn complete_subtree(n: usize, filter: &PropertyFilter, st: &Subtree) -> Result<SubtreeResult> {
    let maps = maps_for(filter.symmetry)?;
    let mut out = SubtreeResult::default();
    if let Some(mut f) = Filler::from_cells(n, maps, &st.cells) {
        f.extend(n, &mut |z| {
            let l = LatinSquare::from_cells_unchecked(n, z.cells.clone());
            debug_assert!(l.satisfies(filter), "generated square violates {filter}");
            let key = certificate(&l, EquivalenceRelation::Isomorphism);
            let e = out.classes.entry(key).or_insert_with(|| (l.clone(), st.seed, 0));
            e.2 += 1;
            if l.cells() < e.0.cells() {
                e.0 = l;
            }
        });
    }
    Ok(out)
}

fn classes(n: usize, filter: &PropertyFilter, opts: &GenOptions) -> Result<Vec<ClassRecord>> {
    let subtrees = prepare_subtrees(n, filter, opts)?;
    let result = opts.install(|| {
        subtrees
            .par_iter()
            .map(|st| complete_subtree(n, filter, st))
            .try_reduce(SubtreeResult::default, |mut a, b| {
                a.merge(b);
                Ok(a)
            })
    })?;
    Ok(opts.install(|| finish_parallel(result.into_dedup())))
}

/// [`Dedup::finish`] with the per-class work spread over the pool.
pub(crate) fn finish_parallel(d: Dedup) -> Vec<ClassRecord> {
    let rel = d.relation();
    let mut out: Vec<ClassRecord> = d
        .into_members()
        .into_par_iter()
        .map(|(m, seen)| {
            let representative = crate::canonical::canonical_form(&m, rel);
            let stabiliser_order = rel.stabiliser_order(&representative);
            ClassRecord { representative, members_seen: seen, stabiliser_order }
        })
        .collect();
    out.sort_by(|a, b| a.representative.cells().cmp(b.representative.cells()));
    out
}

/// One representative per isomorphism class of semisymmetric squares
/// matching `filter`, sorted by canonical form.
pub fn gen_semisymmetric_classes(n: usize, filter: &PropertyFilter, opts: &GenOptions) -> Result<Vec<ClassRecord>> {
    if filter.symmetry != Symmetry::Semisymmetric {
        return Err(Error::Precondition("gen_semisymmetric_classes needs a semisymmetric filter".into()));
    }
    classes(n, filter, opts)
}

/// One representative per isomorphism class of totally symmetric squares
/// matching `filter`, sorted by canonical form.
pub fn gen_totally_symmetric_classes(n: usize, filter: &PropertyFilter, opts: &GenOptions) -> Result<Vec<ClassRecord>> {
    if filter.symmetry != Symmetry::TotallySymmetric {
        return Err(Error::Precondition("gen_totally_symmetric_classes needs a totally-symmetric filter".into()));
    }
    classes(n, filter, opts)
}
