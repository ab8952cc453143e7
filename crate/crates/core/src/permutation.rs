//! Permutations of `{1, ..., d}`.
//!
//! Images are stored zero-based; everything user-facing (one-line notation,
//! cycle notation, JSON) is one-based. Composition is right to left:
//! `(σ * τ)(i) = σ(τ(i))`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::HARD_DEGREE_LIMIT;

/// Images are packed four bits each, the image of point 0 in the most
/// significant used nibble, so that comparing two permutations of the same
/// degree compares their one-line notations lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    packed: u64,
}

const NIBBLE: u64 = 0xF;

impl Permutation {
    #[inline]
    fn shift(degree: usize, i: usize) -> u32 {
        (4 * (degree - 1 - i)) as u32
    }

    #[inline]
    fn pack(images: impl IntoIterator<Item = u8>) -> (u8, u64) {
        let mut packed = 0u64;
        let mut degree = 0u8;
        for img in images {
            packed = (packed << 4) | img as u64;
            degree += 1;
        }
        (degree, packed)
    }

    pub fn identity(degree: usize) -> Self {
        assert!(degree <= HARD_DEGREE_LIMIT, "degree {degree} too large");
        let (degree, packed) = Self::pack(0..degree as u8);
        Self { degree, packed }
    }

    /// Builds a permutation from its one-line notation with one-based images.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d > HARD_DEGREE_LIMIT {
            return Err(Error::InvalidPermutation(format!("degree {d} too large")));
        }
        let mut seen = vec![false; d];
        for &img in images {
            if img == 0 || img > d || seen[img - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={d}"
                )));
            }
            seen[img - 1] = true;
        }
        Ok(Self::from_zero_based(images.iter().map(|&i| (i - 1) as u8).collect()))
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        let (degree, packed) = Self::pack(images);
        Self { degree, packed }
    }

    /// The transposition `(a b)` of `{1..degree}` (one-based).
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        for x in [a, b] {
            if x == 0 || x > degree {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    max: degree,
                });
            }
        }
        if a == b {
            return Err(Error::InvalidPermutation(format!("({a} {b}) is not a transposition")));
        }
        let mut images = Self::identity(degree).zero_based();
        images.swap(a - 1, b - 1);
        Ok(Self::from_zero_based(images))
    }

    /// The Coxeter generator `s_i = (i, i+1)`, `1 <= i < degree`.
    pub fn coxeter(degree: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= degree {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: degree.saturating_sub(1),
            });
        }
        Self::transposition(degree, i, i + 1)
    }

    /// Builds a permutation from disjoint cycles written one-based.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(Error::IndexOutOfRange { index: x, max: degree });
                }
                if touched[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint"
                    )));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_one_line(&images)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Zero-based image of a zero-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        ((self.packed >> Self::shift(self.degree(), i)) & NIBBLE) as usize
    }

    /// One-based image of a one-based point.
    pub fn image(&self, i: usize) -> usize {
        self.apply(i - 1) + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        (0..self.degree()).map(|i| self.apply(i) + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> Vec<u8> {
        (0..self.degree()).map(|i| self.apply(i) as u8).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.degree())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let d = self.degree();
        let mut packed = 0u64;
        for i in 0..d {
            packed = (packed << 4) | self.apply(other.apply(i)) as u64;
        }
        Self {
            degree: self.degree,
            packed,
        }
    }

    pub fn inverse(&self) -> Self {
        let d = self.degree();
        let mut packed = 0u64;
        for i in 0..d {
            packed |= (i as u64) << Self::shift(d, self.apply(i));
        }
        Self {
            degree: self.degree,
            packed,
        }
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let d = self.degree();
        let mut seen = 0u32;
        let mut count = 0;
        for start in 0..d {
            if seen & (1 << start) != 0 {
                continue;
            }
            count += 1;
            let mut x = start;
            while seen & (1 << x) == 0 {
                seen |= 1 << x;
                x = self.apply(x);
            }
        }
        count
    }

    /// Disjoint cycles of length at least two, one-based, each starting at
    /// its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn inversions(&self) -> usize {
        let d = self.degree();
        (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .filter(|&(i, j)| self.apply(i) > self.apply(j))
            .count()
    }

    /// A reduced word `i_1, ..., i_k` with `self = s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn coxeter_word(&self) -> Vec<usize> {
        // Peel descents off the right: σ = (σ s_j) s_j whenever σ(j) > σ(j+1).
        let mut current = self.zero_based();
        let mut word = Vec::new();
        while let Some(j) = (0..current.len().saturating_sub(1)).find(|&j| current[j] > current[j + 1]) {
            current.swap(j, j + 1);
            word.push(j + 1);
        }
        word.reverse();
        word
    }

    /// The same permutation viewed in a larger symmetric group, fixing the
    /// new points.
    pub fn extend(&self, degree: usize) -> Result<Self> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: degree,
            });
        }
        if degree > HARD_DEGREE_LIMIT {
            return Err(Error::InvalidPermutation(format!("degree {degree} too large")));
        }
        let mut packed = self.packed;
        for i in self.degree()..degree {
            packed = (packed << 4) | i as u64;
        }
        Ok(Self {
            degree: degree as u8,
            packed,
        })
    }

    /// Drops the last point if it is fixed.
    pub fn restrict(&self) -> Option<Self> {
        let d = self.degree();
        if d == 0 || self.apply(d - 1) != d - 1 {
            return None;
        }
        Some(Self {
            degree: self.degree - 1,
            packed: self.packed >> 4,
        })
    }

    /// All of `S_d` in lexicographic order of one-line notation.
    pub fn all(degree: usize) -> Vec<Self> {
        let mut current: Vec<u8> = (0..degree as u8).collect();
        let mut out = vec![Self::from_zero_based(current.clone())];
        // Standard next-permutation step.
        while let Some(i) = (0..degree.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) {
            let j = (i + 1..degree).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
            out.push(Self::from_zero_based(current.clone()));
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on a degree mismatch; use [`Permutation::compose`] to get an error instead.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation degrees differ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.one_line())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Self::from_one_line(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_one_line(images).unwrap()
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(Permutation::identity(3).to_string(), "e");
        assert_eq!(perm(&[2, 3, 1]).to_string(), "(1 2 3)");
        assert_eq!(perm(&[2, 1, 4, 3]).to_string(), "(1 2)(3 4)");
        assert_eq!(
            Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap(),
            perm(&[2, 3, 1])
        );
    }

    #[test]
    fn composition_is_right_to_left() {
        let s1 = Permutation::coxeter(3, 1).unwrap();
        let s2 = Permutation::coxeter(3, 2).unwrap();
        // (s1 s2)(3) = s1(2) = 1
        assert_eq!((&s1 * &s2).image(3), 1);
        assert_eq!((&s1 * &s1), Permutation::identity(3));
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(Permutation::identity(4).cycle_count(), 4);
        assert_eq!(Permutation::transposition(4, 1, 3).unwrap().cycle_count(), 3);
        assert_eq!(perm(&[2, 3, 4, 1]).cycle_count(), 1);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::coxeter(3, 3).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = Permutation::all(3);
        let lines: Vec<_> = all.iter().map(|p| p.one_line()).collect();
        assert_eq!(
            lines,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(Permutation::all(5).len(), 120);
        assert_eq!(Permutation::all(1).len(), 1);
    }

    #[test]
    fn extend_and_restrict() {
        let p = perm(&[2, 1]);
        let q = p.extend(3).unwrap();
        assert_eq!(q.one_line(), vec![2, 1, 3]);
        assert_eq!(q.restrict().unwrap(), p);
        assert!(perm(&[3, 2, 1]).restrict().is_none());
    }

    fn arb_perm(d: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=d).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_one_line(&v).unwrap())
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
            prop_assert!((&a * &a.inverse()).is_identity());
        }

        #[test]
        fn coxeter_word_reconstructs(a in arb_perm(6)) {
            let word = a.coxeter_word();
            prop_assert_eq!(word.len(), a.inversions());
            let rebuilt = word.iter().fold(Permutation::identity(6), |acc, &i| {
                &acc * &Permutation::coxeter(6, i).unwrap()
            });
            prop_assert_eq!(rebuilt, a);
        }
    }
}
