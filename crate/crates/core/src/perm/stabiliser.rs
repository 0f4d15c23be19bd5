//! Exhaustive backtracking over row/column/symbol images with propagation,
//! used for every stabiliser and every "is there an isotopism from L to M"
//! question.

use super::{Isotopism, Paratopism, Permutation};
use crate::square::{Conjugate, LatinSquare};
use crate::{Error, Result};

/// Which components of `(alpha, beta, gamma)` are tied together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotopyKind {
    /// `alpha = beta = gamma`
    Isomorphism,
    /// `alpha = beta`
    Rrs,
    Isotopism,
    /// `gamma` is the identity.
    Principal,
}

const UNSET: u8 = u8::MAX;

struct Search<'a> {
    n: usize,
    src: &'a LatinSquare,
    dst: &'a LatinSquare,
    /// Map index used by each of the three roles.
    role: [usize; 3],
    fwd: [Vec<u8>; 3],
    used: [Vec<bool>; 3],
    trail: Vec<(usize, u8)>,
    /// dst_row_sym[r * n + s] = column of symbol s in row r of dst
    dst_row_sym: Vec<u8>,
    dst_col_sym: Vec<u8>,
    /// cells of src holding each symbol, as (row, col)
    src_sym_cells: Vec<Vec<(u8, u8)>>,
}

impl<'a> Search<'a> {
    fn new(src: &'a LatinSquare, dst: &'a LatinSquare, kind: IsotopyKind) -> Self {
        let n = src.order();
        let role = match kind {
            IsotopyKind::Isomorphism => [0, 0, 0],
            IsotopyKind::Rrs => [0, 0, 2],
            IsotopyKind::Isotopism | IsotopyKind::Principal => [0, 1, 2],
        };
        let mut dst_row_sym = vec![0u8; n * n];
        let mut dst_col_sym = vec![0u8; n * n];
        let mut src_sym_cells = vec![Vec::with_capacity(n); n];
        for r in 0..n {
            for c in 0..n {
                let s = dst.get(r, c);
                dst_row_sym[r * n + s] = c as u8;
                dst_col_sym[c * n + s] = r as u8;
                src_sym_cells[src.get(r, c)].push((r as u8, c as u8));
            }
        }
        let mut search = Search {
            n,
            src,
            dst,
            role,
            fwd: [vec![UNSET; n], vec![UNSET; n], vec![UNSET; n]],
            used: [vec![false; n], vec![false; n], vec![false; n]],
            trail: Vec::new(),
            dst_row_sym,
            dst_col_sym,
            src_sym_cells,
        };
        if kind == IsotopyKind::Principal {
            for s in 0..n {
                search.fwd[2][s] = s as u8;
                search.used[2][s] = true;
            }
        }
        search
    }

    #[inline]
    fn get(&self, role: usize, x: usize) -> u8 {
        self.fwd[self.role[role]][x]
    }

    /// Assigns map `k`: x -> y and propagates. Returns false on conflict.
    fn assign(&mut self, k: usize, x: usize, y: usize) -> bool {
        let cur = self.fwd[k][x];
        if cur != UNSET {
            return cur as usize == y;
        }
        if self.used[k][y] {
            return false;
        }
        self.fwd[k][x] = y as u8;
        self.used[k][y] = true;
        self.trail.push((k, x as u8));
        for role in 0..3 {
            if self.role[role] == k && !self.propagate(role, x) {
                return false;
            }
        }
        true
    }

    fn propagate(&mut self, role: usize, x: usize) -> bool {
        let n = self.n;
        match role {
            0 => (0..n).all(|c| self.check_cell(x, c)),
            1 => (0..n).all(|r| self.check_cell(r, x)),
            _ => {
                let cells = std::mem::take(&mut self.src_sym_cells[x]);
                let ok = cells.iter().all(|&(r, c)| self.check_cell(r as usize, c as usize));
                self.src_sym_cells[x] = cells;
                ok
            }
        }
    }

    fn check_cell(&mut self, r: usize, c: usize) -> bool {
        let n = self.n;
        let s = self.src.get(r, c);
        let (ar, bc, gs) = (self.get(0, r), self.get(1, c), self.get(2, s));
        match (ar != UNSET, bc != UNSET, gs != UNSET) {
            (true, true, _) => {
                let t = self.dst.get(ar as usize, bc as usize);
                self.assign(self.role[2], s, t)
            }
            (true, false, true) => {
                let col = self.dst_row_sym[ar as usize * n + gs as usize] as usize;
                self.assign(self.role[1], c, col)
            }
            (false, true, true) => {
                let row = self.dst_col_sym[bc as usize * n + gs as usize] as usize;
                self.assign(self.role[0], r, row)
            }
            _ => true,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (k, x) = self.trail.pop().unwrap();
            let y = self.fwd[k][x as usize];
            self.used[k][y as usize] = false;
            self.fwd[k][x as usize] = UNSET;
        }
    }

    fn next_unset(&self) -> Option<(usize, usize)> {
        for k in [0usize, 1, 2] {
            if !self.role.contains(&k) {
                continue;
            }
            if let Some(x) = self.fwd[k].iter().position(|&v| v == UNSET) {
                return Some((k, x));
            }
        }
        None
    }

    fn solution(&self) -> Isotopism {
        let p = |role: usize| Permutation::from_images_unchecked(self.fwd[self.role[role]].clone());
        Isotopism { alpha: p(0), beta: p(1), gamma: p(2) }
    }

    /// Calls `visit` on every solution; stops when it returns false.
    fn run(&mut self, visit: &mut dyn FnMut(Isotopism) -> bool) -> bool {
        match self.next_unset() {
            None => visit(self.solution()),
            Some((k, x)) => {
                for y in 0..self.n {
                    if self.used[k][y] {
                        continue;
                    }
                    let mark = self.trail.len();
                    if self.assign(k, x, y) && !self.run(visit) {
                        self.undo_to(mark);
                        return false;
                    }
                    self.undo_to(mark);
                }
                true
            }
        }
    }
}

/// Every isotopism of the given kind with `src(iso) == dst`.
pub fn isotopisms_between(src: &LatinSquare, dst: &LatinSquare, kind: IsotopyKind) -> Vec<Isotopism> {
    let mut out = Vec::new();
    if src.order() != dst.order() {
        return out;
    }
    let mut search = Search::new(src, dst, kind);
    search.run(&mut |iso| {
        out.push(iso);
        true
    });
    out
}

/// Some isotopism of the given kind with `src(iso) == dst`, if one exists.
pub fn find_isotopism(src: &LatinSquare, dst: &LatinSquare, kind: IsotopyKind) -> Option<Isotopism> {
    if src.order() != dst.order() {
        return None;
    }
    let mut found = None;
    let mut search = Search::new(src, dst, kind);
    search.run(&mut |iso| {
        found = Some(iso);
        false
    });
    found
}

pub fn automorphism_group(l: &LatinSquare) -> Vec<Permutation> {
    isotopisms_between(l, l, IsotopyKind::Isomorphism).into_iter().map(|iso| iso.alpha).collect()
}

pub fn rrs_autotopism_group(l: &LatinSquare) -> Vec<Isotopism> {
    isotopisms_between(l, l, IsotopyKind::Rrs)
}

pub fn autotopism_group(l: &LatinSquare) -> Vec<Isotopism> {
    isotopisms_between(l, l, IsotopyKind::Isotopism)
}

/// All `(sigma, iso)` with `conj(L, sigma)(iso) == L`.
pub fn autoparatopism_group(l: &LatinSquare) -> Vec<Paratopism> {
    let mut out = Vec::new();
    for sigma in Conjugate::all() {
        let c = l.conjugate(sigma);
        for iso in isotopisms_between(&c, l, IsotopyKind::Isotopism) {
            out.push(Paratopism { sigma, iso });
        }
    }
    out
}

/// Autotopisms `(alpha, beta, e)` of a symmetric square.
pub fn principal_autotopism_group(l: &LatinSquare) -> Result<Vec<Isotopism>> {
    if !l.is_symmetric() {
        return Err(Error::Precondition("principal autotopism group computed for symmetric squares".into()));
    }
    let group = isotopisms_between(l, l, IsotopyKind::Principal);
    let n = l.order() as u64;
    for g in &group {
        debug_assert!(g.beta == g.alpha.inverse(), "principal autotopism with beta != alpha^-1");
        debug_assert!(n % g.alpha.order() == 0, "order of alpha does not divide n");
    }
    debug_assert!(group.iter().all(|a| group.iter().all(|b| a.then(b) == b.then(a))), "P not abelian");
    Ok(group)
}

/// Isotopisms from `L` to its `(3,1,2)`-conjugate.
pub fn left_autotopisms(l: &LatinSquare) -> Vec<Isotopism> {
    isotopisms_between(l, &l.conjugate(Conjugate::C312), IsotopyKind::Isotopism)
}

/// Convention for the product of the three components of a left
/// autotopism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    /// Apply alpha, then beta, then gamma.
    AlphaBetaGamma,
    /// Apply gamma, then beta, then alpha.
    GammaBetaAlpha,
}

/// True iff some left autotopism has a component product whose order is
/// not divisible by 3, using the alpha-then-beta-then-gamma product.
pub fn has_semisymmetric_form(l: &LatinSquare) -> bool {
    has_semisymmetric_form_with(l, ProductOrder::AlphaBetaGamma)
}

pub fn has_semisymmetric_form_with(l: &LatinSquare, order: ProductOrder) -> bool {
    left_autotopisms(l).iter().any(|iso| {
        let product = match order {
            ProductOrder::AlphaBetaGamma => iso.alpha.then(&iso.beta).then(&iso.gamma),
            ProductOrder::GammaBetaAlpha => iso.gamma.then(&iso.beta).then(&iso.alpha),
        };
        product.order() % 3 != 0
    })
}

/// Symmetric `L` with an autotopism `(theta, theta^-1, e)` where theta is
/// semiregular of prime order.
pub fn omega_membership(l: &LatinSquare) -> Result<bool> {
    let group = principal_autotopism_group(l)?;
    Ok(group.iter().any(|g| {
        let ord = g.alpha.order();
        g.alpha.is_semiregular() && is_prime(ord) && g.beta == g.alpha.inverse()
    }))
}

fn is_prime(k: u64) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

/// Stabiliser by scanning the full acting group; only for tiny orders.
pub fn brute_force_stabiliser(l: &LatinSquare, kind: IsotopyKind) -> Vec<Isotopism> {
    let n = l.order();
    assert!(n <= 5, "brute force stabiliser is an oracle for n <= 5");
    let perms = all_permutations(n);
    let mut out = Vec::new();
    for a in &perms {
        for b in &perms {
            if matches!(kind, IsotopyKind::Isomorphism | IsotopyKind::Rrs) && a != b {
                continue;
            }
            for g in &perms {
                let keep = match kind {
                    IsotopyKind::Isomorphism => a == g,
                    IsotopyKind::Principal => g.is_identity(),
                    _ => true,
                };
                if !keep {
                    continue;
                }
                let iso = Isotopism { alpha: a.clone(), beta: b.clone(), gamma: g.clone() };
                if l.isotope(&iso) == *l {
                    out.push(iso);
                }
            }
        }
    }
    out
}

pub(crate) fn all_permutations(n: usize) -> Vec<Permutation> {
    fn heap(k: usize, v: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        if k <= 1 {
            out.push(Permutation::from_images_unchecked(v.clone()));
            return;
        }
        for i in 0..k {
            heap(k - 1, v, out);
            if k % 2 == 0 {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    let mut v: Vec<u8> = (0..n as u8).collect();
    heap(n, &mut v, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures;
    use std::collections::BTreeSet;

    fn closed<T: Ord + Clone>(group: &[T], mul: impl Fn(&T, &T) -> T) -> bool {
        let set: BTreeSet<T> = group.iter().cloned().collect();
        group.iter().all(|a| group.iter().all(|b| set.contains(&mul(a, b))))
    }

    #[test]
    fn z3_automorphisms_match_brute_force() {
        let z3 = LatinSquare::cyclic(3);
        let auto = automorphism_group(&z3);
        let brute: Vec<Permutation> = all_permutations(3).into_iter().filter(|r| z3.apply_isomorphism(r) == z3).collect();
        assert_eq!(auto.len(), brute.len());
        assert_eq!(auto.len(), 2);
        assert_eq!(automorphism_group(&LatinSquare::from_rows(&[[1]]).unwrap()).len(), 1);
    }

    #[test]
    fn sade_square_groups() {
        let l = fixtures::sade_counterexample();
        let tau = Permutation::parse_cycles(9, "(456)(789)").unwrap();
        assert!(automorphism_group(&l).contains(&tau));
        let atp = autoparatopism_group(&l);
        assert_eq!(atp.len(), 9);
        assert!(closed(&atp, |a, b| a.then(b)));
        let left = left_autotopisms(&l);
        assert_eq!(left.len(), 3);
        assert!(left.iter().all(|iso| iso.order() == 3));
        assert!(!has_semisymmetric_form(&l));
        assert!(!has_semisymmetric_form_with(&l, ProductOrder::GammaBetaAlpha));
    }

    #[test]
    fn stabilisers_match_brute_force_on_small_squares() {
        let squares = [
            LatinSquare::cyclic(4),
            LatinSquare::from_fn(4, |i, j| i ^ j).unwrap(),
            LatinSquare::from_rows(&[[1, 2, 3], [2, 3, 1], [3, 1, 2]]).unwrap(),
            LatinSquare::from_rows(&[[2, 1, 4, 3], [4, 3, 1, 2], [1, 2, 3, 4], [3, 4, 2, 1]]).unwrap(),
        ];
        for l in &squares {
            for kind in [IsotopyKind::Isomorphism, IsotopyKind::Rrs, IsotopyKind::Isotopism, IsotopyKind::Principal] {
                let fast: BTreeSet<_> = isotopisms_between(l, l, kind).into_iter().collect();
                let brute: BTreeSet<_> = brute_force_stabiliser(l, kind).into_iter().collect();
                assert_eq!(fast, brute, "{kind:?} on {l:?}");
            }
        }
    }

    #[test]
    fn semisymmetric_square_has_trivial_left_autotopism() {
        let semi = LatinSquare::from_rows(&[[1, 3, 2], [3, 2, 1], [2, 1, 3]]).unwrap();
        assert!(left_autotopisms(&semi).contains(&Isotopism::identity(3)));
        assert!(has_semisymmetric_form(&semi));
    }

    #[test]
    fn subgroup_chain_divisibility() {
        for l in [LatinSquare::cyclic(5), LatinSquare::from_fn(4, |i, j| i ^ j).unwrap()] {
            let rrs = rrs_autotopism_group(&l).len();
            let atp = autotopism_group(&l).len();
            let par = autoparatopism_group(&l).len();
            assert_eq!(atp % rrs, 0);
            assert_eq!(par % atp, 0);
        }
    }

    #[test]
    fn principal_group_of_order8_left_square() {
        let (left, _) = fixtures::order8_pair();
        let p = principal_autotopism_group(&left).unwrap();
        assert!(p.iter().any(|g| g.alpha.cycle_structure().to_string() == "2^4"));
        assert!(omega_membership(&left).unwrap());
        assert!(principal_autotopism_group(&fixtures::sade_counterexample()).is_err());
    }
}
