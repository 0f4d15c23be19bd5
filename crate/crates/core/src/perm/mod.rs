//! Permutations, cycle structures and the isotopism / paratopism groups that
//! act on Latin squares, plus the stabiliser computations built on them.

mod cycle;
pub(crate) mod stabiliser;

pub use cycle::CycleStructure;
pub use stabiliser::{
    automorphism_group, autoparatopism_group, autotopism_group, brute_force_stabiliser, find_isotopism,
    has_semisymmetric_form, has_semisymmetric_form_with, isotopisms_between, left_autotopisms,
    omega_membership, principal_autotopism_group, rrs_autotopism_group, IsotopyKind,
    ProductOrder,
};

use std::fmt;
use std::str::FromStr;

use crate::square::Conjugate;
use crate::Error;

/// A permutation of `{0, .., n-1}` stored in image form.
///
/// Products follow the right-action convention: `a.then(b)` maps `i` to
/// `b(a(i))`, so the isotopism action law reads
/// `L(a1,b1,c1)(a2,b2,c2) = L(a1.then(a2), ..)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// Builds a permutation from zero-based images, checking bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from one-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, Error> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(Error::InvalidPermutation(format!("point {p} out of range 1..{n}")));
                }
                if touched[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated")));
                }
                touched[p - 1] = true;
                let q = cycle[(k + 1) % cycle.len()];
                if q == 0 || q > n {
                    return Err(Error::InvalidPermutation(format!("point {q} out of range 1..{n}")));
                }
                images[p - 1] = (q - 1) as u8;
            }
        }
        Self::from_images(images)
    }

    /// Parses one-based cycle notation such as `(1423)(78)` or
    /// `(3,10,7)(4,5)(11)`. Text without any comma is read one digit per
    /// point. The empty string and `()` give the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self, Error> {
        let numeric = text.contains(',');
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unbalanced cycle in {text:?}")))?;
            let body = open[..close].trim();
            let points: Result<Vec<usize>, Error> = if numeric && !body.is_empty() {
                body.split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::InvalidPermutation(format!("bad point {p:?}")))
                    })
                    .collect()
            } else {
                body.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::InvalidPermutation(format!("bad point {c:?}")))
                    })
                    .collect()
            };
            let points = points?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(n, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let ord = self.order() as i64;
        let k = k.rem_euclid(ord);
        let mut out = Self::identity(self.degree());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    /// `rho^-1 self rho`, written `self^rho`.
    pub fn conjugate_by(&self, rho: &Permutation) -> Self {
        rho.inverse().then(self).then(rho)
    }

    /// Disjoint cycles (zero-based), including fixed points, each starting at
    /// its least point, ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        CycleStructure::from_lengths(self.cycles().iter().map(|c| c.len()))
    }

    pub fn order(&self) -> u64 {
        self.cycle_structure().order()
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x as usize).count()
    }

    /// No fixed points and all cycles of one length.
    pub fn is_semiregular(&self) -> bool {
        let cs = self.cycle_structure();
        cs.parts().len() == 1 && cs.parts()[0].0 > 1
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One-based cycle notation without fixed points; `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.degree() >= 10;
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(if wide { "," } else { "" }))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Independent row, column and symbol permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isotopism {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl Isotopism {
    pub fn new(alpha: Permutation, beta: Permutation, gamma: Permutation) -> Result<Self, Error> {
        if alpha.degree() != beta.degree() || beta.degree() != gamma.degree() {
            return Err(Error::DegreeMismatch {
                expected: alpha.degree(),
                found: if beta.degree() != alpha.degree() { beta.degree() } else { gamma.degree() },
            });
        }
        Ok(Isotopism { alpha, beta, gamma })
    }

    pub fn identity(n: usize) -> Self {
        let e = Permutation::identity(n);
        Isotopism { alpha: e.clone(), beta: e.clone(), gamma: e }
    }

    pub fn isomorphism(rho: Permutation) -> Self {
        Isotopism { alpha: rho.clone(), beta: rho.clone(), gamma: rho }
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn then(&self, other: &Isotopism) -> Self {
        Isotopism {
            alpha: self.alpha.then(&other.alpha),
            beta: self.beta.then(&other.beta),
            gamma: self.gamma.then(&other.gamma),
        }
    }

    pub fn inverse(&self) -> Self {
        Isotopism { alpha: self.alpha.inverse(), beta: self.beta.inverse(), gamma: self.gamma.inverse() }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity() && self.gamma.is_identity()
    }

    pub fn is_rrs(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn is_principal(&self) -> bool {
        self.gamma.is_identity()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.alpha == self.beta && self.beta == self.gamma
    }

    pub fn component(&self, k: usize) -> &Permutation {
        match k {
            0 => &self.alpha,
            1 => &self.beta,
            _ => &self.gamma,
        }
    }

    /// The isotopism `J` with `conj(L(self), sigma) == conj(L, sigma)(J)`.
    pub fn through_conjugate(&self, sigma: Conjugate) -> Self {
        let s = sigma.positions();
        Isotopism {
            alpha: self.component(s[0]).clone(),
            beta: self.component(s[1]).clone(),
            gamma: self.component(s[2]).clone(),
        }
    }

    /// Order of the isotopism as a group element.
    pub fn order(&self) -> u64 {
        lcm(lcm(self.alpha.order(), self.beta.order()), self.gamma.order())
    }
}

impl fmt::Display for Isotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

/// A conjugation followed by an isotopism: `L -> conj(L, sigma)(iso)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Paratopism {
    pub sigma: Conjugate,
    pub iso: Isotopism,
}

impl Paratopism {
    pub fn identity(n: usize) -> Self {
        Paratopism { sigma: Conjugate::IDENTITY, iso: Isotopism::identity(n) }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Paratopism) -> Self {
        // conj(conj(L,s1)(i1), s2)(i2) = conj(L, s1;s2)(i1 through s2, then i2)
        Paratopism {
            sigma: self.sigma.then(other.sigma),
            iso: self.iso.through_conjugate(other.sigma).then(&other.iso),
        }
    }

    pub fn inverse(&self) -> Self {
        // Solve self.then(q) == identity.
        let sigma_inv = self.sigma.inverse();
        let iso = self.iso.through_conjugate(sigma_inv).inverse();
        Paratopism { sigma: sigma_inv, iso }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma == Conjugate::IDENTITY && self.iso.is_identity()
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl FromStr for CycleStructure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        CycleStructure::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_parsing_and_display() {
        let p = Permutation::parse_cycles(8, "(1423)(78)").unwrap();
        assert_eq!(p.apply(0), 3);
        assert_eq!(p.apply(3), 1);
        assert_eq!(p.apply(6), 7);
        assert_eq!(p.to_string(), "(1423)(78)");
        let q = Permutation::parse_cycles(12, "(3,10,7,6,11,4,9,8,5,12)").unwrap();
        assert_eq!(q.apply(2), 9);
        assert_eq!(q.apply(11), 2);
        assert_eq!(q.to_string(), "(3,10,7,6,11,4,9,8,5,12)");
        assert!(Permutation::parse_cycles(3, "()").unwrap().is_identity());
        assert!(Permutation::parse_cycles(3, "(14)").is_err());
        assert!(Permutation::parse_cycles(3, "(11)").is_err());
    }

    #[test]
    fn products_use_right_action() {
        let a = Permutation::parse_cycles(3, "(12)").unwrap();
        let b = Permutation::parse_cycles(3, "(23)").unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b).then(&b.inverse()), a);
        assert_eq!(a.conjugate_by(&b), Permutation::parse_cycles(3, "(13)").unwrap());
    }

    #[test]
    fn cycle_structures_from_examples() {
        let e = Permutation::identity(5);
        assert_eq!(e.cycle_structure().to_string(), "1^5");
        assert_eq!(e.order(), 1);
        let p = Permutation::parse_cycles(11, "(1,2,3)(4,5,6)(7,8)(9)(10)(11)").unwrap();
        assert_eq!(p.cycle_structure().to_string(), "3^2.2.1^3");
        let tau = Permutation::parse_cycles(9, "(456)(789)").unwrap();
        assert_eq!(tau.cycle_structure().to_string(), "3^2.1^3");
        assert_eq!(tau.order(), 3);
        assert_eq!(tau.pow(3), Permutation::identity(9));
        assert_eq!(tau.pow(-1), tau.inverse());
    }

    #[test]
    fn paratopism_inverse_and_composition() {
        let p = Paratopism {
            sigma: Conjugate::new([2, 0, 1]).unwrap(),
            iso: Isotopism::new(
                Permutation::parse_cycles(4, "(12)").unwrap(),
                Permutation::parse_cycles(4, "(234)").unwrap(),
                Permutation::parse_cycles(4, "(14)(23)").unwrap(),
            )
            .unwrap(),
        };
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }
}
