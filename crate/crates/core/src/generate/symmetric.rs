//! Symmetric squares: reduced ones via loop-augmented one-factorisations of
//! the complete graph, and all ones admitting a given autotopism.

use rayon::prelude::*;

use super::filler::{Filler, TripleMap};
use super::shapes::{admissible_autotopism_shapes, AutotopismShape};
use crate::perm::{Isotopism, Permutation};
use crate::square::LatinSquare;
use crate::{Error, Result};

/// Factor `r` is an involution `rho_r` with `rho_r(0) = r`; every edge and
/// loop of `K_n` lies in exactly one factor. The square `M[c][rho_r(c)] = r`
/// is reduced and symmetric, and every reduced symmetric square arises once.
struct Factoriser {
    n: usize,
    odd: bool,
    /// used[v] has bit w when edge {v, w} (loop when v = w) is taken.
    used: Vec<u32>,
    cells: Vec<u8>,
}

impl Factoriser {
    fn new(n: usize) -> Self {
        assert!((1..=31).contains(&n));
        Factoriser { n, odd: n % 2 == 1, used: vec![0; n], cells: vec![0; n * n] }
    }

    #[inline]
    fn take(&mut self, r: usize, v: usize, w: usize) {
        self.used[v] |= 1 << w;
        self.used[w] |= 1 << v;
        self.cells[v * self.n + w] = r as u8;
        self.cells[w * self.n + v] = r as u8;
    }

    #[inline]
    fn release(&mut self, v: usize, w: usize) {
        self.used[v] &= !(1 << w);
        self.used[w] &= !(1 << v);
    }

    /// Starts factor `r`; `stop` is the factor at which to call `leaf`.
    fn factor(&mut self, r: usize, stop: usize, leaf: &mut dyn FnMut(&Factoriser)) {
        if r == stop {
            leaf(self);
            return;
        }
        self.take(r, 0, r);
        let matched = 1u32 | (1 << r);
        self.fill(r, matched, usize::from(r == 0), stop, leaf);
        self.release(0, r);
    }

    fn fill(&mut self, r: usize, matched: u32, loops: usize, stop: usize, leaf: &mut dyn FnMut(&Factoriser)) {
        let n = self.n;
        let full = (1u32 << n) - 1;
        if matched == full {
            if !self.odd || loops == 1 {
                self.factor(r + 1, stop, leaf);
            }
            return;
        }
        let v = (!matched).trailing_zeros() as usize;
        let mut cand = !matched & !self.used[v] & full;
        if self.odd && loops == 1 {
            cand &= !(1 << v);
        }
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.take(r, v, w);
            let l = loops + usize::from(v == w);
            self.fill(r, matched | 1 << v | 1 << w, l, stop, leaf);
            self.release(v, w);
        }
    }

    fn square(&self) -> LatinSquare {
        LatinSquare::from_cells_unchecked(self.n, self.cells.clone())
    }
}

/// Number of reduced symmetric squares of order `n`, without building them.
pub fn count_symmetric_reduced(n: usize) -> u64 {
    fold_symmetric_reduced(n, || 0u64, |acc, _| *acc += 1, |a, b| a + b)
}

/// Every reduced symmetric square of order `n`, in a fixed order.
pub fn gen_symmetric_reduced(n: usize) -> Vec<LatinSquare> {
    let mut out = Vec::new();
    for_each_symmetric_reduced(n, |l| out.push(l.clone()));
    out
}

pub fn for_each_symmetric_reduced(n: usize, mut f: impl FnMut(&LatinSquare)) {
    if n == 0 {
        return;
    }
    let mut fz = Factoriser::new(n);
    fz.factor(0, n, &mut |z| f(&z.square()));
}

/// Parallel fold over all reduced symmetric squares, partitioned by the
/// first factor. The result is independent of scheduling when `reduce` is
/// associative and commutative.
pub fn fold_symmetric_reduced<T: Send>(
    n: usize,
    init: impl Fn() -> T + Sync + Send,
    fold: impl Fn(&mut T, &LatinSquare) + Sync + Send,
    reduce: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    if n <= 2 {
        let mut acc = init();
        for_each_symmetric_reduced(n, |l| fold(&mut acc, l));
        return acc;
    }
    // Snapshot the state after factor 0 for each subtree.
    let mut roots: Vec<(Vec<u32>, Vec<u8>)> = Vec::new();
    let mut fz = Factoriser::new(n);
    fz.factor(0, 1, &mut |z| roots.push((z.used.clone(), z.cells.clone())));
    roots
        .into_par_iter()
        .map(|(used, cells)| {
            let mut acc = init();
            let mut fz = Factoriser { n, odd: n % 2 == 1, used, cells };
            fz.factor(1, n, &mut |z| fold(&mut acc, &z.square()));
            acc
        })
        .reduce(&init, &reduce)
}

/// Fixed `(alpha, gamma)` for a shape: cycles on consecutive points,
/// longest first.
pub fn shape_representative(shape: &AutotopismShape) -> (Permutation, Permutation) {
    (shape.alpha.representative(), shape.gamma.representative())
}

/// All symmetric squares with autotopism `(alpha, alpha, gamma)`, for an
/// admissible pair of cycle structures.
pub fn gen_symmetric_with_autotopism(n: usize, alpha: &Permutation, gamma: &Permutation) -> Result<Vec<LatinSquare>> {
    check_admissible(n, alpha, gamma)?;
    let iso = Isotopism::new(alpha.clone(), alpha.clone(), gamma.clone())?;
    let mut out = Vec::new();
    for_each_symmetric_with_isotopism(&iso, |l| out.push(l.clone()));
    Ok(out)
}

fn check_admissible(n: usize, alpha: &Permutation, gamma: &Permutation) -> Result<()> {
    if alpha.degree() != n || gamma.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: alpha.degree().max(gamma.degree()) });
    }
    let (a, g) = (alpha.cycle_structure(), gamma.cycle_structure());
    if admissible_autotopism_shapes(n)?.iter().any(|s| s.alpha == a && s.gamma == g) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("({a}, {g}) is not an admissible autotopism shape for order {n}")))
    }
}

/// Every symmetric square `L` with `L(alpha, beta, gamma) = L`, cell orbits
/// filled atomically. No admissibility check.
pub fn for_each_symmetric_with_isotopism(iso: &Isotopism, mut f: impl FnMut(&LatinSquare)) {
    let n = iso.degree();
    if n == 0 {
        return;
    }
    let maps = vec![
        TripleMap::Transpose,
        TripleMap::Isotopism([
            iso.alpha.images().to_vec(),
            iso.beta.images().to_vec(),
            iso.gamma.images().to_vec(),
        ]),
    ];
    let mut filler = Filler::new(n, maps);
    filler.extend(n, &mut |z| f(&LatinSquare::from_cells_unchecked(n, z.cells.clone())));
}

/// Parallel fold over the squares of [`for_each_symmetric_with_isotopism`],
/// partitioned by the contents of row 0.
pub fn fold_symmetric_with_isotopism<T: Send>(
    iso: &Isotopism,
    init: impl Fn() -> T + Sync + Send,
    fold: impl Fn(&mut T, &LatinSquare) + Sync + Send,
    reduce: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    let n = iso.degree();
    if n == 0 {
        return init();
    }
    let maps = vec![
        TripleMap::Transpose,
        TripleMap::Isotopism([
            iso.alpha.images().to_vec(),
            iso.beta.images().to_vec(),
            iso.gamma.images().to_vec(),
        ]),
    ];
    let mut roots: Vec<Vec<u8>> = Vec::new();
    let mut filler = Filler::new(n, maps.clone());
    filler.extend(1, &mut |z| roots.push(z.cells.clone()));
    roots
        .into_par_iter()
        .map(|cells| {
            let mut acc = init();
            if let Some(mut z) = Filler::from_cells(n, maps.clone(), &cells) {
                z.extend(n, &mut |z| fold(&mut acc, &LatinSquare::from_cells_unchecked(n, z.cells.clone())));
            }
            acc
        })
        .reduce(&init, &reduce)
}
