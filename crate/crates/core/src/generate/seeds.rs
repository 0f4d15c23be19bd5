//! Diagonals up to isomorphism. Renaming points conjugates the diagonal map
//! `i -> L[i][i]`, so diagonal seeds are functional graphs on `n` points up
//! to isomorphism: multisets of components, each a directed cycle of
//! rooted trees taken up to rotation.

use crate::square::{PropertyFilter, Shape, Symmetry};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiagonalSeed {
    /// Zero-based diagonal.
    pub diagonal: Vec<u8>,
}

impl DiagonalSeed {
    pub fn order(&self) -> usize {
        self.diagonal.len()
    }

    pub fn idempotent_count(&self) -> usize {
        self.diagonal.iter().enumerate().filter(|&(i, &d)| i == d as usize).count()
    }

    fn has_two_cycle(&self) -> bool {
        self.diagonal.iter().enumerate().any(|(i, &d)| d as usize != i && self.diagonal[d as usize] as usize == i)
    }
}

/// Rooted trees by size; a tree is the sorted list of its children's ids.
struct Forest {
    trees: Vec<Vec<usize>>,
    size: Vec<usize>,
    by_size: Vec<Vec<usize>>,
}

impl Forest {
    fn new(max: usize) -> Self {
        let mut f = Forest { trees: Vec::new(), size: Vec::new(), by_size: vec![Vec::new(); max + 1] };
        for m in 1..=max {
            let mut found = Vec::new();
            let mut cur = Vec::new();
            f.child_multisets(m - 1, 0, &mut cur, &mut found);
            for children in found {
                f.by_size[m].push(f.trees.len());
                f.trees.push(children);
                f.size.push(m);
            }
        }
        f
    }

    /// Non-decreasing id sequences of total size `rest` with ids >= `min`.
    fn child_multisets(&self, rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for id in min..self.trees.len() {
            if self.size[id] <= rest {
                cur.push(id);
                self.child_multisets(rest - self.size[id], id, cur, out);
                cur.pop();
            }
        }
    }

    /// Labels the children of a node already labelled `root`; each new label
    /// is pushed in order so that `diag[label]` is its parent.
    fn realise(&self, id: usize, root: u8, next: &mut u8, diag: &mut Vec<u8>) {
        for &child in &self.trees[id] {
            let label = *next;
            *next += 1;
            diag.push(root);
            self.realise(child, label, next, diag);
        }
    }
}

/// Every functional graph on `n` points up to isomorphism, as diagonals.
pub fn all_diagonals(n: usize) -> Vec<DiagonalSeed> {
    if n == 0 {
        return Vec::new();
    }
    let forest = Forest::new(n);
    // Components: (size, cycle of tree ids at lex-least rotation).
    let mut comps: Vec<(usize, Vec<usize>)> = Vec::new();
    for s in 1..=n {
        for k in 1..=s {
            let mut cur = Vec::new();
            cycles(&forest, k, s, &mut cur, &mut |c| comps.push((s, c.to_vec())));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    multisets(&comps, n, 0, &mut cur, &mut |chosen| {
        let mut diag: Vec<u8> = Vec::with_capacity(n);
        let mut next = 0u8;
        for &ci in chosen {
            let cycle = &comps[ci].1;
            let base = next;
            let k = cycle.len() as u8;
            next += k;
            for i in 0..k {
                diag.push(base + (i + 1) % k);
            }
            for (i, &tree) in cycle.iter().enumerate() {
                forest.realise(tree, base + i as u8, &mut next, &mut diag);
            }
        }
        // Nodes were pushed in label order, so diag[i] is the image of i.
        out.push(DiagonalSeed { diagonal: diag });
    });
    out.sort();
    out
}

fn cycles(f: &Forest, k: usize, rest: usize, cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        if rest == 0 && is_least_rotation(cur) {
            emit(cur);
        }
        return;
    }
    let left = k - cur.len();
    for id in 0..f.trees.len() {
        let s = f.size[id];
        if s + (left - 1) <= rest {
            cur.push(id);
            cycles(f, k, rest - s, cur, emit);
            cur.pop();
        }
    }
}

fn is_least_rotation(c: &[usize]) -> bool {
    let k = c.len();
    (1..k).all(|r| {
        let rot = c[r..].iter().chain(&c[..r]);
        c.iter().le(rot)
    })
}

fn multisets(comps: &[(usize, Vec<usize>)], rest: usize, min: usize, cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if rest == 0 {
        emit(cur);
        return;
    }
    for ci in min..comps.len() {
        if comps[ci].0 <= rest {
            cur.push(ci);
            multisets(comps, rest - comps[ci].0, ci, cur, emit);
            cur.pop();
        }
    }
}

/// Diagonal seeds for semisymmetric or totally symmetric squares matching
/// `filter`: no 2-cycles, and an idempotent count congruent to `n^2` mod 3.
pub fn diagonal_seeds(n: usize, filter: &PropertyFilter) -> Vec<DiagonalSeed> {
    let semi = matches!(filter.symmetry, Symmetry::Semisymmetric | Symmetry::TotallySymmetric);
    let admissible = |s: &DiagonalSeed| {
        if semi && (s.has_two_cycle() || s.idempotent_count() % 3 != (n * n) % 3) {
            return false;
        }
        filter.shapes().iter().all(|shape| match shape {
            Shape::Idempotent => s.idempotent_count() == n,
            Shape::Unipotent | Shape::Reduced => s.diagonal.iter().all(|&d| d == s.diagonal[0]),
            Shape::Diagonal => {
                let mut seen = vec![false; n];
                s.diagonal.iter().all(|&d| !std::mem::replace(&mut seen[d as usize], true))
            }
        })
    };
    all_diagonals(n).into_iter().filter(admissible).collect()
}
