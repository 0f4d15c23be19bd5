//! Backtracking generators for each symmetry category.

mod closed;
mod filler;
mod seeds;
mod shapes;
mod symmetric;

pub use closed::{
    complete_subtree, gen_semisymmetric_classes, gen_totally_symmetric_classes, prepare_subtrees, Subtree,
    SubtreeResult,
};
pub(crate) use closed::finish_parallel;
pub use seeds::{all_diagonals, diagonal_seeds, DiagonalSeed};
pub use shapes::{admissible_autotopism_shapes, AutotopismShape};
pub use symmetric::{
    count_symmetric_reduced, fold_symmetric_reduced, fold_symmetric_with_isotopism, for_each_symmetric_reduced,
    for_each_symmetric_with_isotopism, gen_symmetric_reduced, gen_symmetric_with_autotopism, shape_representative,
};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::perm::{Isotopism, Permutation};
use crate::square::LatinSquare;
use crate::{Error, Result};

/// One screening stage.
pub const DEFAULT_SCREEN_DEPTH: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenOptions {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Screening stages. Each completes one more row of every partial
    /// square and keeps one per isomorphism class.
    pub screen_depth: usize,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions { jobs: 0, screen_depth: DEFAULT_SCREEN_DEPTH }
    }
}

impl GenOptions {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_screen_depth(mut self, depth: usize) -> Self {
        self.screen_depth = depth;
        self
    }

    /// Runs `f` inside a pool of `jobs` threads.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.jobs == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// Uniformly random isotope of the cyclic group table, reproducible from
/// `seed`.
pub fn random_isotope_of_cyclic(n: usize, seed: u64) -> LatinSquare {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut perm = || {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.shuffle(&mut rng);
        Permutation::from_images_unchecked(v)
    };
    let iso = Isotopism { alpha: perm(), beta: perm(), gamma: perm() };
    LatinSquare::cyclic(n).isotope(&iso)
}

/// Random permutation of degree `n`, reproducible from `seed`.
pub fn random_permutation(n: usize, seed: u64) -> Permutation {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut v: Vec<u8> = (0..n as u8).collect();
    v.shuffle(&mut rng);
    Permutation::from_images_unchecked(v)
}

/// Largest order accepted by [`gen_all_of_order`].
pub const MAX_ALL_SQUARES_ORDER: usize = 6;

/// Visits every Latin square of order `n <= 6` in row-major
/// lexicographic order.
pub fn for_each_of_order(n: usize, mut f: impl FnMut(&LatinSquare)) -> Result<()> {
    if n > MAX_ALL_SQUARES_ORDER {
        return Err(Error::Unsupported(format!(
            "all squares of order {n} is beyond the oracle bound {MAX_ALL_SQUARES_ORDER}"
        )));
    }
    if n == 0 {
        return Ok(());
    }
    let mut cells = vec![0u8; n * n];
    let mut rows = vec![0u32; n];
    let mut cols = vec![0u32; n];
    fn go(
        k: usize,
        n: usize,
        cells: &mut [u8],
        rows: &mut [u32],
        cols: &mut [u32],
        f: &mut dyn FnMut(&LatinSquare),
    ) {
        if k == n * n {
            f(&LatinSquare::from_cells_unchecked(n, cells.to_vec()));
            return;
        }
        let (r, c) = (k / n, k % n);
        let mut cand = !(rows[r] | cols[c]) & ((1 << n) - 1);
        while cand != 0 {
            let s = cand.trailing_zeros();
            cand &= cand - 1;
            cells[k] = s as u8;
            rows[r] |= 1 << s;
            cols[c] |= 1 << s;
            go(k + 1, n, cells, rows, cols, f);
            rows[r] &= !(1 << s);
            cols[c] &= !(1 << s);
        }
    }
    go(0, n, &mut cells, &mut rows, &mut cols, &mut f);
    Ok(())
}

/// Largest order accepted by [`for_each_reduced_of_order`].
pub const MAX_REDUCED_SQUARES_ORDER: usize = 7;

/// Visits every reduced Latin square of order `n <= 7` in row-major
/// lexicographic order.
pub fn for_each_reduced_of_order(n: usize, mut f: impl FnMut(&LatinSquare)) -> Result<()> {
    if n > MAX_REDUCED_SQUARES_ORDER {
        return Err(Error::Unsupported(format!(
            "reduced squares of order {n} is beyond the oracle bound {MAX_REDUCED_SQUARES_ORDER}"
        )));
    }
    if n == 0 {
        return Ok(());
    }
    let mut cells = vec![0u8; n * n];
    let mut rows = vec![0u32; n];
    let mut cols = vec![0u32; n];
    for i in 0..n {
        cells[i] = i as u8;
        cells[i * n] = i as u8;
        rows[0] |= 1 << i;
        cols[i] |= 1 << i;
        rows[i] |= 1 << i;
        cols[0] |= 1 << i;
    }
    fn go(k: usize, n: usize, cells: &mut [u8], rows: &mut [u32], cols: &mut [u32], f: &mut dyn FnMut(&LatinSquare)) {
        if k == n * n {
            f(&LatinSquare::from_cells_unchecked(n, cells.to_vec()));
            return;
        }
        let (r, c) = (k / n, k % n);
        if r == 0 || c == 0 {
            return go(k + 1, n, cells, rows, cols, f);
        }
        let mut cand = !(rows[r] | cols[c]) & ((1 << n) - 1);
        while cand != 0 {
            let s = cand.trailing_zeros();
            cand &= cand - 1;
            cells[k] = s as u8;
            rows[r] |= 1 << s;
            cols[c] |= 1 << s;
            go(k + 1, n, cells, rows, cols, f);
            rows[r] &= !(1 << s);
            cols[c] &= !(1 << s);
        }
    }
    go(1, n, &mut cells, &mut rows, &mut cols, &mut f);
    Ok(())
}

/// Every Latin square of order `n <= 5`, collected. Order 6 is available
/// as a stream through [`for_each_of_order`].
pub fn gen_all_of_order(n: usize) -> Result<Vec<LatinSquare>> {
    if n > 5 {
        return Err(Error::Unsupported(format!("collecting all squares of order {n} is not supported; stream them")));
    }
    let mut out = Vec::new();
    for_each_of_order(n, |l| out.push(l.clone()))?;
    Ok(out)
}
