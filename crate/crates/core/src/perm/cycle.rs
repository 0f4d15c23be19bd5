use std::fmt;

use super::{lcm, Permutation};
use crate::Error;

/// Multiset of cycle lengths, kept as `(length, multiplicity)` pairs with
/// strictly decreasing lengths. Text form: `3^2.2.1^3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleStructure {
    parts: Vec<(usize, usize)>,
}

impl CycleStructure {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut lens: Vec<usize> = lengths.into_iter().collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<(usize, usize)> = Vec::new();
        for l in lens {
            match parts.last_mut() {
                Some((len, mult)) if *len == l => *mult += 1,
                _ => parts.push((l, 1)),
            }
        }
        CycleStructure { parts }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(c, m)| c * m).sum()
    }

    pub fn order(&self) -> u64 {
        self.parts.iter().fold(1, |acc, &(c, _)| lcm(acc, c as u64))
    }

    pub fn fixed_points(&self) -> usize {
        self.parts.iter().find(|(c, _)| *c == 1).map_or(0, |&(_, m)| m)
    }

    /// Size of the centraliser of any permutation with this structure:
    /// `prod m_i! * c_i^m_i`.
    pub fn centraliser_order(&self) -> u128 {
        self.parts.iter().fold(1u128, |acc, &(c, m)| {
            let fact: u128 = (1..=m as u128).product();
            acc * fact * (c as u128).pow(m as u32)
        })
    }

    /// Cycles laid out on consecutive points, longest first:
    /// `3^2.1^3 -> (1 2 3)(4 5 6)(7)(8)(9)`.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images = vec![0u8; n];
        let mut start = 0;
        for &(c, m) in &self.parts {
            for _ in 0..m {
                for k in 0..c {
                    images[start + k] = (start + (k + 1) % c) as u8;
                }
                start += c;
            }
        }
        Permutation::from_images_unchecked(images)
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidCycleStructure(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let mut lengths = Vec::new();
        for term in s.split('.') {
            let (c, m) = match term.split_once('^') {
                Some((c, m)) => (c, m),
                None => (term, "1"),
            };
            let c: usize = c.trim().parse().map_err(|_| bad())?;
            let m: usize = m.trim().parse().map_err(|_| bad())?;
            if c == 0 || m == 0 {
                return Err(bad());
            }
            lengths.extend(std::iter::repeat(c).take(m));
        }
        let parsed = Self::from_lengths(lengths);
        // Reject non-canonical spellings such as "1.2" or "2.2".
        if parsed.to_string() != s {
            return Err(bad());
        }
        Ok(parsed)
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .parts
            .iter()
            .map(|&(c, m)| if m == 1 { c.to_string() } else { format!("{c}^{m}") })
            .collect();
        write!(f, "{}", terms.join("."))
    }
}

impl fmt::Debug for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
