//! Literal squares and maps used by the verification suites.

use crate::perm::{Isotopism, Permutation};
use crate::square::LatinSquare;

fn load(text: &str) -> LatinSquare {
    LatinSquare::parse_text(text).expect("built-in fixture is a Latin square")
}

fn perm(n: usize, cycles: &str) -> Permutation {
    Permutation::parse_cycles(n, cycles).expect("built-in permutation parses")
}

fn iso(n: usize, a: &str, b: &str, c: &str) -> Isotopism {
    Isotopism::new(perm(n, a), perm(n, b), perm(n, c)).expect("equal degrees")
}

/// Order 9 square with left autotopisms but no semisymmetric form.
pub fn sade_counterexample() -> LatinSquare {
    load(include_str!("../../fixtures/sade_order9.txt"))
}

/// `tau` with `conjugate(L, (3,1,2)) = L(e, e, tau)` and `(tau, tau, tau)`
/// an automorphism of [`sade_counterexample`].
pub fn sade_tau() -> Permutation {
    perm(9, "(456)(789)")
}

/// Symmetric order 8 squares that are isotopic but not rrs-isotopic.
pub fn order8_pair() -> (LatinSquare, LatinSquare) {
    (load(include_str!("../../fixtures/sym8_left.txt")), load(include_str!("../../fixtures/sym8_right.txt")))
}

pub fn order8_isotopism() -> Isotopism {
    iso(8, "(1324)(78)", "(12)(5867)", "(1423)(56)")
}

/// Unipotent symmetric order 12 squares, isotopic but not rrs-isotopic.
pub fn unipotent12_pair() -> (LatinSquare, LatinSquare) {
    (
        load(include_str!("../../fixtures/unipotent12_a.txt")),
        load(include_str!("../../fixtures/unipotent12_b.txt")),
    )
}

/// `(alpha, gamma, gamma)` taking the first square of
/// [`unipotent12_pair`] to the second.
pub fn unipotent12_isotopism() -> Isotopism {
    let g = "(1,2)(3,9,7,5,11)(4,10,8,6,12)";
    iso(12, "(3,10,7,6,11,4,9,8,5,12)", g, g)
}

/// Diagonal semisymmetric order 7 squares with one and seven idempotents.
pub fn semi7_pair() -> (LatinSquare, LatinSquare) {
    (load(include_str!("../../fixtures/semi7_a1.txt")), load(include_str!("../../fixtures/semi7_a2.txt")))
}

pub fn semi7_isotopism() -> Isotopism {
    iso(7, "(265)(374)", "(256)(347)", "()")
}

/// `B[i][j] = -i-j mod 5`.
pub fn order5_factor() -> LatinSquare {
    LatinSquare::from_fn(5, |i, j| (10 - i - j) % 5).expect("Latin")
}

/// Isotopic, non-isomorphic diagonal semisymmetric squares of order 35.
pub fn order35_pair() -> (LatinSquare, LatinSquare) {
    let (a1, a2) = semi7_pair();
    let b = order5_factor();
    (a1.direct_product(&b), a2.direct_product(&b))
}

/// Isotopic idempotent semisymmetric order 9 squares whose prolongations
/// lie in different species.
pub fn semi9_pair() -> (LatinSquare, LatinSquare) {
    (load(include_str!("../../fixtures/semi9_left.txt")), load(include_str!("../../fixtures/semi9_right.txt")))
}

pub fn semi9_isotopism() -> Isotopism {
    iso(9, "(789)", "(465)", "(456)(798)")
}

/// `A[i][j] = -i-j` and `B[i][j] = 1-i-j` over `Z_n`: totally symmetric,
/// isotopic through `x -> x+1`, with 3 and 0 idempotents when `3 | n`.
pub fn zn_totally_symmetric_pair(n: usize) -> (LatinSquare, LatinSquare) {
    let a = LatinSquare::from_fn(n, |i, j| (2 * n - i - j) % n).expect("Latin");
    let b = LatinSquare::from_fn(n, |i, j| (2 * n + 1 - i - j) % n).expect("Latin");
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(sade_counterexample().order(), 9);
        let (a, b) = order8_pair();
        assert!(a.is_symmetric() && b.is_symmetric());
        let (a, b) = unipotent12_pair();
        assert!(a.is_unipotent() && b.is_unipotent() && a.is_symmetric() && b.is_symmetric());
        let (a, b) = semi7_pair();
        assert_eq!((a.idempotent_count(), b.idempotent_count()), (1, 7));
        let (a, b) = semi9_pair();
        assert!(a.is_idempotent() && b.is_idempotent() && a.is_semisymmetric() && b.is_semisymmetric());
    }

    #[test]
    fn stated_isotopisms_hold() {
        let (a, b) = order8_pair();
        assert_eq!(a.apply_isotopism(&order8_isotopism()).unwrap(), b);
        let (a, b) = unipotent12_pair();
        assert_eq!(a.apply_isotopism(&unipotent12_isotopism()).unwrap(), b);
        let (a, b) = semi7_pair();
        assert_eq!(a.apply_isotopism(&semi7_isotopism()).unwrap(), b);
        let (a, b) = semi9_pair();
        assert_eq!(a.apply_isotopism(&semi9_isotopism()).unwrap(), b);
    }

    #[test]
    fn zn_pair_idempotents() {
        for n in [3, 6, 9, 12] {
            let (a, b) = zn_totally_symmetric_pair(n);
            assert!(a.is_totally_symmetric() && b.is_totally_symmetric());
            assert_eq!((a.idempotent_count(), b.idempotent_count()), (3, 0));
        }
    }
}
