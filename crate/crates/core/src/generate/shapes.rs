//! Cycle-structure pairs `(alpha, gamma)` for which a symmetric square can
//! have the prime-order autotopism `(alpha, alpha, gamma)`, with the
//! published class counts.

use crate::perm::CycleStructure;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutotopismShape {
    pub order: usize,
    pub alpha: CycleStructure,
    pub gamma: CycleStructure,
    /// Published count of rrs-isotopism classes containing a symmetric
    /// square with this autotopism.
    pub published: u64,
}

/// `(n, alpha, gamma, count)`. For `n = 13` the `3^4` row is listed on
/// 13 points as `3^4.1`.
const SHAPES: &[(usize, &str, &str, u64)] = &[
    (2, "2", "1^2", 1),
    (3, "2.1", "2.1", 1),
    (3, "3", "3", 1),
    (4, "2^2", "2.1^2", 1),
    (4, "2^2", "1^4", 2),
    (4, "2.1^2", "2.1^2", 2),
    (4, "3.1", "3.1", 1),
    (5, "2^2.1", "2^2.1", 1),
    (5, "5", "5", 1),
    (6, "2^3", "2^2.1^2", 2),
    (6, "2^3", "2.1^4", 4),
    (6, "2^3", "1^6", 2),
    (6, "2^2.1^2", "2^2.1^2", 6),
    (6, "3^2", "3^2", 2),
    (6, "3^2", "3.1^3", 2),
    (6, "5.1", "5.1", 1),
    (7, "2^3.1", "2^3.1", 2),
    (7, "2^2.1^3", "2^2.1^3", 4),
    (7, "3^2.1", "3^2.1", 5),
    (7, "7", "7", 2),
    (8, "2^4", "2^3.1^2", 33),
    (8, "2^4", "2^2.1^4", 131),
    (8, "2^4", "2.1^6", 96),
    (8, "2^4", "1^8", 44),
    (8, "2^3.1^2", "2^3.1^2", 26),
    (8, "2^2.1^4", "2^2.1^4", 46),
    (8, "3^2.1^2", "3^2.1^2", 23),
    (8, "7.1", "7.1", 2),
    (9, "2^4.1", "2^4.1", 39),
    (9, "2^3.1^3", "2^3.1^3", 101),
    (9, "3^3", "3^3", 13),
    (9, "3^2.1^3", "3^2.1^3", 20),
    (10, "2^5", "2^4.1^2", 1784),
    (10, "2^5", "2^3.1^4", 32144),
    (10, "2^5", "2^2.1^6", 37784),
    (10, "2^5", "2.1^8", 7488),
    (10, "2^5", "1^10", 252),
    (10, "2^4.1^2", "2^4.1^2", 9525),
    (10, "2^3.1^4", "2^3.1^4", 5434),
    (10, "3^3.1", "3^3.1", 242),
    (10, "3^2.1^4", "3^2.1^4", 67),
    (10, "5^2", "5^2", 15),
    (10, "5^2", "5.1^5", 2),
    (11, "2^5.1", "2^5.1", 11352),
    (11, "2^4.1^3", "2^4.1^3", 144592),
    (11, "2^3.1^5", "2^3.1^5", 0),
    (11, "5^2.1", "5^2.1", 210),
    (11, "11", "11", 5),
    (12, "2^6", "2^5.1^2", 14530952),
    (12, "2^6", "2^4.1^4", 470822508),
    (12, "2^6", "2^3.1^6", 1556098547),
    (12, "2^6", "2^2.1^8", 1216169007),
    (12, "2^6", "2.1^10", 294114559),
    (12, "2^6", "1^12", 20147679),
    (12, "2^5.1^2", "2^5.1^2", 36584824),
    (12, "2^4.1^4", "2^4.1^4", 64350427),
    (12, "2^3.1^6", "2^3.1^6", 1463416),
    (12, "3^4", "3^4", 44149),
    (12, "3^4", "3^3.1^3", 127621),
    (12, "3^4", "3^2.1^6", 11400),
    (12, "3^4", "3.1^9", 168),
    (12, "3^3.1^3", "3^3.1^3", 9867),
    (12, "5^2.1^2", "5^2.1^2", 2394),
    (12, "11.1", "11.1", 5),
    (13, "2^6.1", "2^6.1", 183778440),
    (13, "2^5.1^3", "2^5.1^3", 4076414984),
    (13, "2^4.1^5", "2^4.1^5", 144762344),
    (13, "3^4.1", "3^4.1", 9005726),
    (13, "5^2.1^3", "5^2.1^3", 11364),
    (13, "13", "13", 14),
];

pub fn admissible_autotopism_shapes(n: usize) -> Result<Vec<AutotopismShape>> {
    if !(2..=13).contains(&n) {
        return Err(Error::Unsupported(format!("autotopism shapes are tabulated for orders 2..=13, not {n}")));
    }
    Ok(SHAPES
        .iter()
        .filter(|s| s.0 == n)
        .map(|&(order, a, g, published)| AutotopismShape {
            order,
            alpha: CycleStructure::parse(a).expect("static shape parses"),
            gamma: CycleStructure::parse(g).expect("static shape parses"),
            published,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_have_the_right_degree_and_prime_order() {
        for n in 2..=13 {
            for s in admissible_autotopism_shapes(n).unwrap() {
                assert_eq!(s.alpha.degree(), n);
                assert_eq!(s.gamma.degree(), n);
                let p = s.alpha.order();
                assert!((2..p).all(|d| p % d != 0), "{} has non-prime order", s.alpha);
                assert!(s.gamma.order() == p || s.gamma.order() == 1);
            }
        }
        assert!(admissible_autotopism_shapes(1).is_err());
        assert!(admissible_autotopism_shapes(14).is_err());
    }

    #[test]
    fn small_orders() {
        let five = admissible_autotopism_shapes(5).unwrap();
        let pairs: Vec<(String, String)> = five.iter().map(|s| (s.alpha.to_string(), s.gamma.to_string())).collect();
        assert_eq!(pairs, vec![("2^2.1".into(), "2^2.1".into()), ("5".into(), "5".into())]);
        assert_eq!(admissible_autotopism_shapes(9).unwrap().len(), 4);
    }
}
