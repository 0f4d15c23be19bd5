//! Canonical forms and stabilisers against explicit orbit computation over
//! every Latin square of order at most 4.

mod support;

#[test]
fn canonical_forms_match_orbits() {
    for n in 1..=4 {
        support::canonical_forms_match_orbits(n).unwrap();
    }
}

#[test]
fn stabiliser_searches_match_brute_force() {
    for n in 1..=4 {
        support::stabilisers_match_brute_force(n).unwrap();
    }
}
