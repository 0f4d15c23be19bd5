//! Catalog and checkpoint files.
//!
//! A catalog is line based:
//!
//! ```text
//! lsq-catalog 1
//! order 3
//! filter semisymmetric
//! relation isomorphism
//! generator closed-diagonal-seeds
//! classes 2
//! squares 3
//! records
//! 6 1 1 3 2 3 2 1 2 1 3
//! 3 2 2 1 3 1 3 2 3 2 1
//! ```
//!
//! Each record is `stabiliser size cells...`: the stabiliser order of the
//! representative under the relation, the number of squares of the
//! category in the class, and the representative's `n*n` symbols
//! (`1..=n`) row by row. Records are sorted by representative. Counts are
//! decimal without a size limit.
//!
//! A checkpoint holds the completed subtrees of one closed-category run:
//!
//! ```text
//! lsq-checkpoint 1
//! order 9
//! filter semisymmetric
//! screen-depth 1
//! subtrees 4711
//! done 17 2
//! 0 12 cells...
//! 0 3 cells...
//! end
//! ```
//!
//! `done i k` is followed by `k` lines `seed completions cells...` and a
//! line `end`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::canonical::{certificate, ClassRecord, EquivalenceRelation};
use crate::census::{symmetric_classes, unipotent_symmetric_reduced, CensusOptions, SymmetricMethod};
use crate::generate::{
    complete_subtree, gen_semisymmetric_classes, gen_totally_symmetric_classes, prepare_subtrees, GenOptions,
    SubtreeResult,
};
use crate::square::{LatinSquare, PropertyFilter, Shape, Symmetry};
use crate::{Error, Result};

pub const CATALOG_VERSION: u32 = 1;
pub const CHECKPOINT_VERSION: u32 = 1;

/// Generator tag written for closed categories.
pub const CLOSED_GENERATOR: &str = "closed-diagonal-seeds";
/// Generator tag written for symmetric categories.
pub const SYMMETRIC_GENERATOR: &str = "symmetric-rows";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub representative: LatinSquare,
    pub stabiliser_order: u64,
    /// Squares of the catalog's category in this class.
    pub class_size: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogFile {
    pub order: usize,
    pub filter: PropertyFilter,
    pub relation: EquivalenceRelation,
    pub generator: String,
    pub records: Vec<CatalogRecord>,
}

fn rank(rel: EquivalenceRelation) -> u8 {
    match rel {
        EquivalenceRelation::Isomorphism => 0,
        EquivalenceRelation::RrsIsotopism => 1,
        EquivalenceRelation::Isotopism => 2,
        EquivalenceRelation::Species => 3,
    }
}

fn cells_text(l: &LatinSquare) -> String {
    l.cells().iter().map(|&s| (s as usize + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_cells(n: usize, fields: &[&str]) -> Result<LatinSquare> {
    if fields.len() != n * n {
        return Err(Error::Parse(format!("expected {} symbols, found {}", n * n, fields.len())));
    }
    let mut cells = Vec::with_capacity(n * n);
    for f in fields {
        let s: usize = f.parse().map_err(|_| Error::Parse(format!("bad symbol {f:?}")))?;
        if s == 0 || s > n {
            return Err(Error::Parse(format!("symbol {s} outside 1..={n}")));
        }
        cells.push((s - 1) as u8);
    }
    LatinSquare::from_cells(n, cells)
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

/// Reads `key value` from the next line.
fn header<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<&'a str> {
    let line = lines.next().ok_or_else(|| Error::Parse(format!("missing {key} line")))?;
    match line.split_once(' ') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(Error::Parse(format!("expected {key:?} line, found {line:?}"))),
    }
}

/// Squares of one isomorphism class of the category: the acting group is
/// the stabiliser of the identity for loops, else the full symmetric group.
fn isomorphism_class_size(n: usize, filter: &PropertyFilter, stabiliser: u64) -> BigUint {
    let acting: BigUint = if filter.has(Shape::Reduced) { (1..n as u64).product() } else { (1..=n as u64).product() };
    acting / stabiliser
}

impl CatalogFile {
    /// Catalog of isomorphism classes from the closed generator.
    pub fn from_isomorphism_classes(order: usize, filter: &PropertyFilter, classes: &[ClassRecord]) -> Self {
        let records = classes
            .iter()
            .map(|c| CatalogRecord {
                representative: c.representative.clone(),
                stabiliser_order: c.stabiliser_order,
                class_size: isomorphism_class_size(order, filter, c.stabiliser_order),
            })
            .collect();
        CatalogFile {
            order,
            filter: filter.clone(),
            relation: EquivalenceRelation::Isomorphism,
            generator: CLOSED_GENERATOR.into(),
            records,
        }
    }

    pub fn class_count(&self) -> usize {
        self.records.len()
    }

    pub fn square_count(&self) -> BigUint {
        self.records.iter().map(|r| &r.class_size).sum()
    }

    /// Merges classes under the coarser relation `rel`.
    pub fn classify(&self, rel: EquivalenceRelation, gen: &GenOptions) -> Result<CatalogFile> {
        let coarser = rank(rel) >= rank(self.relation)
            && (rel != EquivalenceRelation::RrsIsotopism || self.relation == rel || self.filter.symmetry == Symmetry::Symmetric);
        if !coarser {
            return Err(Error::Precondition(format!("{rel} is not coarser than the catalog's {}", self.relation)));
        }
        if rel == self.relation {
            return Ok(self.clone());
        }
        let keyed: Vec<(Vec<u8>, &CatalogRecord)> =
            gen.install(|| self.records.par_iter().map(|r| (certificate(&r.representative, rel), r)).collect());
        let mut merged: BTreeMap<Vec<u8>, (LatinSquare, BigUint)> = BTreeMap::new();
        for (key, r) in keyed {
            let e = merged.entry(key).or_insert_with(|| (r.representative.clone(), BigUint::from(0u32)));
            e.1 += &r.class_size;
        }
        let mut records: Vec<CatalogRecord> = gen.install(|| {
            merged
                .into_par_iter()
                .map(|(_, (member, size))| {
                    let representative = crate::canonical::canonical_form(&member, rel);
                    let stabiliser_order = rel.stabiliser_order(&representative);
                    CatalogRecord { representative, stabiliser_order, class_size: size }
                })
                .collect()
        });
        records.sort_by(|a, b| a.representative.cells().cmp(b.representative.cells()));
        Ok(CatalogFile { relation: rel, records, ..self.clone() })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "lsq-catalog {CATALOG_VERSION}\norder {}\nfilter {}\nrelation {}\ngenerator {}\nclasses {}\nsquares {}\nrecords\n",
            self.order,
            self.filter,
            self.relation,
            self.generator,
            self.class_count(),
            self.square_count()
        );
        for r in &self.records {
            out.push_str(&format!("{} {} {}\n", r.stabiliser_order, r.class_size, cells_text(&r.representative)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<CatalogFile> {
        let mut lines = text.lines();
        let version: u32 = parse_num(header(&mut lines, "lsq-catalog")?, "version")?;
        if version != CATALOG_VERSION {
            return Err(Error::Parse(format!("unsupported catalog version {version}")));
        }
        let order: usize = parse_num(header(&mut lines, "order")?, "order")?;
        let filter: PropertyFilter = header(&mut lines, "filter")?.parse()?;
        let relation: EquivalenceRelation = header(&mut lines, "relation")?.parse()?;
        let generator = header(&mut lines, "generator")?.to_string();
        let classes: usize = parse_num(header(&mut lines, "classes")?, "class count")?;
        let squares: BigUint = parse_num(header(&mut lines, "squares")?, "square count")?;
        if lines.next() != Some("records") {
            return Err(Error::Parse("missing records line".into()));
        }
        let mut records = Vec::with_capacity(classes);
        for (i, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 2 {
                return Err(Error::Parse(format!("record {}: too short", i + 1)));
            }
            let representative =
                parse_cells(order, &fields[2..]).map_err(|e| Error::Parse(format!("record {}: {e}", i + 1)))?;
            records.push(CatalogRecord {
                representative,
                stabiliser_order: parse_num(fields[0], "stabiliser order")?,
                class_size: parse_num(fields[1], "class size")?,
            });
        }
        let cat = CatalogFile { order, filter, relation, generator, records };
        if cat.class_count() != classes || cat.square_count() != squares {
            return Err(Error::Parse(format!(
                "header totals {classes} classes / {squares} squares disagree with body {} / {}",
                cat.class_count(),
                cat.square_count()
            )));
        }
        if cat.records.windows(2).any(|w| w[0].representative.cells() >= w[1].representative.cells()) {
            return Err(Error::Parse("records are not strictly sorted by representative".into()));
        }
        Ok(cat)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<CatalogFile> {
        CatalogFile::parse(&std::fs::read_to_string(path)?)
    }
}

/// Catalog of rrs-isotopism classes of symmetric squares, the classes the
/// symmetric generator produces. Supported categories: all symmetric
/// squares, reduced ones, and reduced unipotent ones.
pub fn symmetric_catalog(n: usize, filter: &PropertyFilter, gen: &GenOptions) -> Result<CatalogFile> {
    let rel = EquivalenceRelation::RrsIsotopism;
    let shapes = filter.shapes();
    if filter.symmetry != Symmetry::Symmetric {
        return Err(Error::Precondition(format!("symmetric catalog requested for {filter}")));
    }
    let fact: BigUint = (1..=n as u64).product();
    let records = match shapes {
        [] | [Shape::Reduced] => {
            let opts = CensusOptions { gen: gen.clone(), skip_order_two: false };
            let census = symmetric_classes(n, SymmetricMethod::Brute, &opts)?;
            // The rrs group (a, a, g) has order (n!)^2; reduced members are
            // one per choice of a.
            let acting = if shapes.is_empty() { &fact * &fact } else { fact.clone() };
            census
                .classes
                .into_iter()
                .map(|c| CatalogRecord {
                    class_size: &acting / c.group_order,
                    stabiliser_order: c.group_order,
                    representative: c.representative,
                })
                .collect()
        }
        [Shape::Reduced, Shape::Unipotent] | [Shape::Unipotent, Shape::Reduced] => {
            let opts = CensusOptions { gen: gen.clone(), skip_order_two: false };
            let squares = unipotent_symmetric_reduced(n, &opts)?;
            let mut merged: BTreeMap<Vec<u8>, (LatinSquare, u64)> = BTreeMap::new();
            for l in &squares {
                merged.entry(certificate(l, rel)).or_insert_with(|| (l.clone(), 0)).1 += 1;
            }
            let mut records: Vec<CatalogRecord> = gen.install(|| {
                merged
                    .into_par_iter()
                    .map(|(_, (m, size))| {
                        let representative = crate::canonical::canonical_form(&m, rel);
                        CatalogRecord { stabiliser_order: rel.stabiliser_order(&representative), class_size: size.into(), representative }
                    })
                    .collect()
            });
            records.sort_by(|a, b| a.representative.cells().cmp(b.representative.cells()));
            records
        }
        _ => return Err(Error::Unsupported(format!("no symmetric catalog for {filter}"))),
    };
    Ok(CatalogFile { order: n, filter: filter.clone(), relation: rel, generator: SYMMETRIC_GENERATOR.into(), records })
}

/// Catalog of isomorphism classes for a closed category, or of
/// rrs-isotopism classes for a symmetric one.
pub fn enumerate_catalog(n: usize, filter: &PropertyFilter, gen: &GenOptions, checkpoint: Option<&Path>) -> Result<CatalogFile> {
    let classes = match (filter.symmetry, checkpoint) {
        (Symmetry::Symmetric, _) => return symmetric_catalog(n, filter, gen),
        (_, Some(path)) => gen_closed_with_checkpoint(n, filter, gen, path)?,
        (Symmetry::Semisymmetric, None) => gen_semisymmetric_classes(n, filter, gen)?,
        (Symmetry::TotallySymmetric, None) => gen_totally_symmetric_classes(n, filter, gen)?,
        (other, None) => return Err(Error::Unsupported(format!("no generator for {} squares", other.as_str()))),
    };
    Ok(CatalogFile::from_isomorphism_classes(n, filter, &classes))
}

/// Completed subtrees of an interrupted closed-category run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckpointFile {
    pub order: usize,
    pub filter: Option<PropertyFilter>,
    pub screen_depth: usize,
    pub subtrees: usize,
    /// Subtree index -> `(seed, completions, member)` per class found.
    pub done: BTreeMap<usize, Vec<(usize, u64, LatinSquare)>>,
}

impl CheckpointFile {
    fn header_text(&self) -> String {
        let filter = self.filter.as_ref().map(|f| f.to_string()).unwrap_or_default();
        format!(
            "lsq-checkpoint {CHECKPOINT_VERSION}\norder {}\nfilter {filter}\nscreen-depth {}\nsubtrees {}\n",
            self.order, self.screen_depth, self.subtrees
        )
    }

    fn entry_text(index: usize, result: &SubtreeResult) -> String {
        let mut out = format!("done {index} {}\n", result.classes.len());
        for (l, seed, count) in result.classes.values() {
            out.push_str(&format!("{seed} {count} {}\n", cells_text(l)));
        }
        out.push_str("end\n");
        out
    }

    /// Parses a checkpoint; an entry cut short by an interrupted write is
    /// ignored.
    pub fn parse(text: &str) -> Result<CheckpointFile> {
        let complete = &text[..text.rfind('\n').map_or(0, |i| i + 1)];
        let mut lines = complete.lines();
        let version: u32 = parse_num(header(&mut lines, "lsq-checkpoint")?, "version")?;
        if version != CHECKPOINT_VERSION {
            return Err(Error::Parse(format!("unsupported checkpoint version {version}")));
        }
        let order: usize = parse_num(header(&mut lines, "order")?, "order")?;
        let filter: PropertyFilter = header(&mut lines, "filter")?.parse()?;
        let screen_depth = parse_num(header(&mut lines, "screen-depth")?, "screen depth")?;
        let subtrees = parse_num(header(&mut lines, "subtrees")?, "subtree count")?;
        let mut ck = CheckpointFile { order, filter: Some(filter), screen_depth, subtrees, done: BTreeMap::new() };
        let rest: Vec<&str> = lines.collect();
        let mut i = 0;
        while i < rest.len() {
            let f: Vec<&str> = rest[i].split_whitespace().collect();
            if f.len() != 3 || f[0] != "done" {
                return Err(Error::Parse(format!("expected done line, found {:?}", rest[i])));
            }
            let index: usize = parse_num(f[1], "subtree index")?;
            let k: usize = parse_num(f[2], "class count")?;
            if i + k + 1 >= rest.len() {
                break;
            }
            let mut classes = Vec::with_capacity(k);
            for rec in &rest[i + 1..=i + k] {
                let f: Vec<&str> = rec.split_whitespace().collect();
                if f.len() < 2 {
                    return Err(Error::Parse(format!("bad checkpoint record {rec:?}")));
                }
                classes.push((parse_num(f[0], "seed")?, parse_num(f[1], "completions")?, parse_cells(order, &f[2..])?));
            }
            if rest[i + k + 1] != "end" {
                return Err(Error::Parse(format!("subtree {index}: missing end line")));
            }
            ck.done.insert(index, classes);
            i += k + 2;
        }
        Ok(ck)
    }
}

/// Isomorphism classes of a closed category, recording each completed
/// subtree in `path` and skipping those already recorded there.
pub fn gen_closed_with_checkpoint(n: usize, filter: &PropertyFilter, opts: &GenOptions, path: &Path) -> Result<Vec<ClassRecord>> {
    let subtrees = prepare_subtrees(n, filter, opts)?;
    let fresh =
        CheckpointFile { order: n, filter: Some(filter.clone()), screen_depth: opts.screen_depth, subtrees: subtrees.len(), done: BTreeMap::new() };
    let previous = if path.exists() { Some(CheckpointFile::parse(&std::fs::read_to_string(path)?)?) } else { None };
    let previous = match previous {
        Some(p) => {
            let same = p.order == n && p.filter.as_ref() == Some(filter) && p.screen_depth == opts.screen_depth && p.subtrees == subtrees.len();
            if !same {
                return Err(Error::Precondition(format!("checkpoint {} belongs to a different run", path.display())));
            }
            p
        }
        None => {
            std::fs::write(path, fresh.header_text())?;
            fresh
        }
    };
    // Rewrite the file without any truncated tail before appending.
    let mut text = previous.header_text();
    let mut result = SubtreeResult::default();
    for (&i, classes) in &previous.done {
        let mut part = SubtreeResult::default();
        for (seed, count, l) in classes {
            part.classes.insert(certificate(l, EquivalenceRelation::Isomorphism), (l.clone(), *seed, *count));
        }
        text.push_str(&CheckpointFile::entry_text(i, &part));
        result.merge(part);
    }
    std::fs::write(path, text)?;
    let writer = Mutex::new(OpenOptions::new().append(true).open(path)?);
    let todo: BTreeSet<usize> = (0..subtrees.len()).filter(|i| !previous.done.contains_key(i)).collect();
    let rest = opts.install(|| {
        todo.par_iter()
            .map(|&i| {
                let part = complete_subtree(n, filter, &subtrees[i])?;
                let mut w = writer.lock().map_err(|_| Error::Io("checkpoint writer poisoned".into()))?;
                w.write_all(CheckpointFile::entry_text(i, &part).as_bytes())?;
                w.flush()?;
                Ok::<_, Error>(part)
            })
            .try_reduce(SubtreeResult::default, |mut a, b| {
                a.merge(b);
                Ok(a)
            })
    })?;
    result.merge(rest);
    Ok(opts.install(|| crate::generate::finish_parallel(result.into_dedup())))
}

/// Squares in text format read from a file holding one or more squares
/// separated by blank lines.
pub fn read_squares(path: &Path) -> Result<Vec<LatinSquare>> {
    let mut out = Vec::new();
    let mut block = String::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            if !block.trim().is_empty() {
                out.push(LatinSquare::parse_text(&block)?);
            }
            block.clear();
        } else {
            block.push_str(&line);
            block.push('\n');
        }
    }
    if !block.trim().is_empty() {
        out.push(LatinSquare::parse_text(&block)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn semi(n: usize) -> CatalogFile {
        let f = PropertyFilter::plain(Symmetry::Semisymmetric);
        CatalogFile::from_isomorphism_classes(n, &f, &gen_semisymmetric_classes(n, &f, &GenOptions::default()).unwrap())
    }

    #[test]
    fn round_trip() {
        let c = semi(5);
        let text = c.to_text();
        assert!(text.starts_with("lsq-catalog 1\norder 5\nfilter semisymmetric\nrelation isomorphism\n"));
        assert_eq!(CatalogFile::parse(&text).unwrap(), c);
        assert_eq!(CatalogFile::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn header_totals_checked() {
        let text = semi(4).to_text().replace("classes ", "classes 9");
        assert!(CatalogFile::parse(&text).is_err());
    }

    #[test]
    fn classify_merges_and_keeps_totals() {
        let c = semi(6);
        let s = c.classify(EquivalenceRelation::Species, &GenOptions::default()).unwrap();
        assert_eq!((c.class_count(), s.class_count()), (9, 7));
        assert_eq!(c.square_count(), s.square_count());
        assert_eq!(s.classify(EquivalenceRelation::Species, &GenOptions::default()).unwrap(), s);
        assert!(s.classify(EquivalenceRelation::Isotopism, &GenOptions::default()).is_err());
        assert!(c.classify(EquivalenceRelation::RrsIsotopism, &GenOptions::default()).is_err());
    }

    #[test]
    fn symmetric_catalogs() {
        let g = GenOptions::default();
        let all = symmetric_catalog(6, &"symmetric".parse().unwrap(), &g).unwrap();
        let red = symmetric_catalog(6, &"symmetric+reduced".parse().unwrap(), &g).unwrap();
        assert_eq!((all.class_count(), red.class_count()), (6, 6));
        assert_eq!(red.square_count(), BigUint::from(456u32));
        assert_eq!(all.square_count(), red.square_count() * 720u32);
        let uni = symmetric_catalog(6, &"symmetric+reduced+unipotent".parse().unwrap(), &g).unwrap();
        assert_eq!((uni.class_count(), uni.square_count()), (1, BigUint::from(6u32)));
        assert!(symmetric_catalog(5, &"symmetric+idempotent".parse().unwrap(), &g).is_err());
        let one = enumerate_catalog(1, &"symmetric".parse().unwrap(), &g, None).unwrap();
        assert_eq!(one.class_count(), 1);
        assert_eq!(CatalogFile::parse(&all.to_text()).unwrap(), all);
    }

    #[test]
    fn checkpoint_resume_matches() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck");
        let f = PropertyFilter::plain(Symmetry::Semisymmetric);
        let opts = GenOptions::default();
        let direct = gen_semisymmetric_classes(7, &f, &opts).unwrap();
        assert_eq!(gen_closed_with_checkpoint(7, &f, &opts, &path).unwrap(), direct);
        // Keep roughly half the entries plus a torn record, then resume.
        let text = std::fs::read_to_string(&path).unwrap();
        let cut = text.len() / 2;
        std::fs::write(&path, &text[..cut]).unwrap();
        assert_eq!(gen_closed_with_checkpoint(7, &f, &opts, &path).unwrap(), direct);
        assert_eq!(gen_closed_with_checkpoint(7, &f, &opts, &path).unwrap(), direct);
        let other = PropertyFilter::with(Symmetry::Semisymmetric, Shape::Diagonal);
        assert!(gen_closed_with_checkpoint(7, &other, &opts, &path).is_err());
    }
}
