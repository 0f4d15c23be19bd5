//! Lexicographically least isomorphic image of an `n x n` table, with the
//! image read either row-major or in shell order (cells sorted by
//! `max(row, col)`; shell `k` lists `(0,k), (k,0), .., (k-1,k), (k,k-1), (k,k)`).
//!
//! Labels are handed out in the traversal order of the image: a row or column
//! index that is needed before it has been given out is branched on, and
//! every element met for the first time as a cell value takes the next free
//! label. Automorphisms found at equal leaves prune sibling branches in the
//! same orbit of the prefix's pointwise stabiliser.

pub(crate) const EMPTY: u8 = u8::MAX;
const UNSET: u8 = u8::MAX;
const MAX_AUTOMORPHISMS: usize = 48;

/// Running minimum shared across several tables of one order.
pub(crate) struct Best {
    /// Image cells in traversal order.
    pub cells: Vec<u8>,
    pub found: bool,
    /// Bumped on every improvement.
    pub version: u64,
}

impl Best {
    pub fn new(n: usize) -> Self {
        Best { cells: vec![EMPTY; n * n], found: false, version: 0 }
    }
}

#[derive(Clone)]
struct State {
    /// inv[label] = element
    inv: Vec<u8>,
    /// fwd[element] = label
    fwd: Vec<u8>,
    labelled: usize,
    pos: usize,
    /// The image prefix is already strictly below `best`.
    less: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Traversal {
    RowMajor,
    Shell,
}

impl Traversal {
    pub fn positions(self, n: usize) -> Vec<(u8, u8)> {
        match self {
            Traversal::RowMajor => (0..n * n).map(|k| ((k / n) as u8, (k % n) as u8)).collect(),
            Traversal::Shell => {
                let mut out = Vec::with_capacity(n * n);
                for k in 0..n as u8 {
                    for i in 0..k {
                        out.push((i, k));
                        out.push((k, i));
                    }
                    out.push((k, k));
                }
                out
            }
        }
    }
}

struct Ctx<'a> {
    n: usize,
    table: &'a [u8],
    positions: Vec<(u8, u8)>,
    cur: Vec<u8>,
    /// fwd of the labelling that produced `best`, when found in this table.
    best_fwd: Option<Vec<u8>>,
    automorphisms: Vec<Vec<u8>>,
}

/// Lowers `best` to the least image `rho(table)` over all `rho`, or over
/// those with `rho(first) = 0` when `first` is given.
pub(crate) fn min_image(n: usize, table: &[u8], first: Option<u8>, traversal: Traversal, best: &mut Best) {
    debug_assert_eq!(table.len(), n * n);
    let positions = traversal.positions(n);
    let mut ctx = Ctx { n, table, positions, cur: vec![EMPTY; n * n], best_fwd: None, automorphisms: Vec::new() };
    let mut st = State { inv: vec![UNSET; n], fwd: vec![UNSET; n], labelled: 0, pos: 0, less: !best.found };
    if let Some(e) = first {
        st.inv[0] = e;
        st.fwd[e as usize] = 0;
        st.labelled = 1;
        // An identity row at the forced element makes row 0 of every image
        // the identity; skip it so its cells do not force blind branching.
        let row = &table[e as usize * n..(e as usize + 1) * n];
        if traversal == Traversal::RowMajor && row.iter().enumerate().all(|(y, &v)| v as usize == y) {
            if best.found && best.cells[..n].iter().enumerate().any(|(y, &v)| v as usize != y) {
                // A different row 0 in best: compare the identity row first.
                let ident: Vec<u8> = (0..n as u8).collect();
                if ident[..] > best.cells[..n] {
                    return;
                }
                st.less = true;
            }
            for y in 0..n {
                ctx.cur[y] = y as u8;
            }
            st.pos = n;
        }
    }
    ctx.descend(st, best);
}

impl<'a> Ctx<'a> {
    fn descend(&mut self, mut st: State, best: &mut Best) {
        let n = self.n;
        let total = n * n;
        while st.pos < total {
            let (a, b) = self.positions[st.pos];
            let (a, b) = (a as usize, b as usize);
            if a >= st.labelled || b >= st.labelled {
                debug_assert_eq!(a.max(b), st.labelled);
                self.branch(st, best);
                return;
            }
            let x = st.inv[a] as usize;
            let y = st.inv[b] as usize;
            let v = self.table[x * n + y];
            let val = if v == EMPTY {
                EMPTY
            } else if st.fwd[v as usize] != UNSET {
                st.fwd[v as usize]
            } else {
                let label = st.labelled as u8;
                st.fwd[v as usize] = label;
                st.inv[st.labelled] = v;
                st.labelled += 1;
                label
            };
            if !st.less {
                let target = best.cells[st.pos];
                if val > target {
                    return;
                }
                if val < target {
                    st.less = true;
                }
            }
            self.cur[st.pos] = val;
            st.pos += 1;
        }
        if st.less {
            best.cells.copy_from_slice(&self.cur);
            best.found = true;
            best.version += 1;
            self.best_fwd = Some(st.fwd);
        } else if let Some(best_fwd) = &self.best_fwd {
            // Same image twice: element x and the element carrying x's label
            // in the best labelling are exchanged by an automorphism.
            if self.automorphisms.len() < MAX_AUTOMORPHISMS {
                let mut best_inv = vec![0u8; n];
                for (x, &l) in best_fwd.iter().enumerate() {
                    best_inv[l as usize] = x as u8;
                }
                let g: Vec<u8> = (0..n).map(|x| best_inv[st.fwd[x] as usize]).collect();
                if g.iter().enumerate().any(|(i, &y)| i != y as usize) {
                    self.automorphisms.push(g);
                }
            }
        }
    }

    fn branch(&mut self, st: State, best: &mut Best) {
        let n = self.n;
        let label = st.labelled;
        let mut tried: Vec<u8> = Vec::new();
        let mut less = st.less;
        for y in 0..n as u8 {
            if st.fwd[y as usize] != UNSET {
                continue;
            }
            if !tried.is_empty() && self.in_tried_orbit(&st, &tried, y) {
                continue;
            }
            tried.push(y);
            let mut child = st.clone();
            child.less = less;
            child.inv[label] = y;
            child.fwd[y as usize] = label as u8;
            child.labelled += 1;
            let before = best.version;
            self.descend(child, best);
            if best.version != before {
                // The new best shares this node's prefix.
                less = false;
            }
        }
    }

    /// Is `y` in the orbit of a tried candidate under the automorphisms
    /// found so far that fix every labelled element?
    fn in_tried_orbit(&self, st: &State, tried: &[u8], y: u8) -> bool {
        let fixing: Vec<&Vec<u8>> = self
            .automorphisms
            .iter()
            .filter(|g| st.inv[..st.labelled].iter().all(|&x| g[x as usize] == x))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let n = self.n;
        let mut parent: Vec<u8> = (0..n as u8).collect();
        fn find(p: &mut [u8], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for g in fixing {
            for x in 0..n as u8 {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g[x as usize]));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        let root = find(&mut parent, y);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::square::LatinSquare;

    fn brute_min(l: &LatinSquare) -> Vec<u8> {
        crate::perm::stabiliser::all_permutations(l.order())
            .iter()
            .map(|r| l.apply_isomorphism(r).into_cells())
            .min()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_on_groups() {
        for l in [
            LatinSquare::cyclic(4),
            LatinSquare::from_fn(4, |i, j| i ^ j).unwrap(),
            LatinSquare::cyclic(5),
            LatinSquare::from_fn(6, |i, j| (12 - i - j) % 6).unwrap(),
        ] {
            let mut best = Best::new(l.order());
            min_image(l.order(), l.cells(), None, Traversal::RowMajor, &mut best);
            assert_eq!(best.cells, brute_min(&l));
            let mut shell = Best::new(l.order());
            min_image(l.order(), l.cells(), None, Traversal::Shell, &mut shell);
            let brute_shell = crate::perm::stabiliser::all_permutations(l.order())
                .iter()
                .map(|r| {
                    let img = l.apply_isomorphism(r);
                    Traversal::Shell.positions(l.order()).iter().map(|&(a, b)| img.get(a as usize, b as usize) as u8).collect::<Vec<u8>>()
                })
                .min()
                .unwrap();
            assert_eq!(shell.cells, brute_shell);
        }
    }

    #[test]
    fn partial_tables() {
        // Empty cells sort after every symbol.
        let n = 3;
        let table = [0, EMPTY, EMPTY, EMPTY, 2, EMPTY, EMPTY, EMPTY, 1];
        let mut best = Best::new(n);
        min_image(n, &table, None, Traversal::RowMajor, &mut best);
        let brute = crate::perm::stabiliser::all_permutations(n)
            .iter()
            .map(|r: &Permutation| {
                let mut img = vec![EMPTY; 9];
                for x in 0..3 {
                    for y in 0..3 {
                        let v = table[x * 3 + y];
                        img[r.apply(x) * 3 + r.apply(y)] = if v == EMPTY { EMPTY } else { r.apply(v as usize) as u8 };
                    }
                }
                img
            })
            .min()
            .unwrap();
        assert_eq!(best.cells, brute);
    }
}
