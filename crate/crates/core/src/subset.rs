//! Subsets of `{0, …, N−1}` stored as bitmasks together with their ambient size.
//!
//! A subset `S ⊆ [N]` is the same data as a sign vector in `{±}^N` (`+` on
//! members); [`Subset::to_signs`] and [`Subset::from_signs`] convert.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Sign;

/// Largest supported ambient size.
pub const MAX_AMBIENT: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    bits: u64,
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_AMBIENT, "ambient size {n} too large");
        Self { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_AMBIENT, "ambient size {n} too large");
        Self { n, bits: mask(n) }
    }

    /// Builds a subset from raw bits; bit `i` stands for index `i`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_AMBIENT {
            return Err(Error::Capacity {
                what: "subset ambient",
                size: n,
                cap: MAX_AMBIENT,
            });
        }
        if bits & !mask(n) != 0 {
            return Err(Error::Domain(format!("bits {bits:#b} outside ambient {n}")));
        }
        Ok(Self { n, bits })
    }

    /// Builds a subset from 0-based member indices.
    pub fn from_indices(n: usize, idx: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in idx {
            if i >= n {
                return Err(Error::Domain(format!("index {i} outside ambient {n}")));
            }
            bits |= 1 << i;
        }
        Self::from_bits(n, bits)
    }

    /// Indices `start..end` (0-based, half open).
    pub fn interval(n: usize, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= n);
        Self {
            n,
            bits: mask(end) & !mask(start),
        }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut s = Self::empty(signs.len());
        for (i, &x) in signs.iter().enumerate() {
            if x == Sign::Plus {
                s.bits |= 1 << i;
            }
        }
        s
    }

    pub fn to_signs(&self) -> Vec<Sign> {
        (0..self.n)
            .map(|i| {
                if self.contains(i) {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.bits >> i & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            bits: !self.bits & mask(self.n),
        }
    }

    fn same_ambient(&self, other: &Self) {
        debug_assert_eq!(self.n, other.n, "subsets of different ambient sets");
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.same_ambient(other);
        Self {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.same_ambient(other);
        Self {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.same_ambient(other);
        Self {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.same_ambient(other);
        self.bits & !other.bits == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `v_S`: the entries of `v` indexed by members, in ascending index order.
    pub fn restrict<C: Copy>(&self, v: &[C]) -> Vec<C> {
        debug_assert_eq!(v.len(), self.n);
        self.iter().map(|i| v[i]).collect()
    }

    /// All subsets of `[n]`, in increasing order of their bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 64, "cannot enumerate subsets of a {n}-set");
        (0..1u64 << n).map(move |bits| Subset { n, bits })
    }

    /// All subsets of `[n]` with `k` members, in increasing order of their bitmask.
    pub fn all_of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
        Self::all(n).filter(move |s| s.len() == k)
    }

    /// All subsets of `self`, in increasing order of their bitmask.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        let n = self.n;
        let top = self.bits;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == top {
                None
            } else {
                Some((cur.wrapping_sub(top)) & top)
            };
            Some(Subset { n, bits: cur })
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}/{}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_counts() {
        let s = Subset::from_indices(5, &[0, 3]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement().indices(), vec![1, 2, 4]);
        assert_eq!(s.union(&s.complement()), Subset::full(5));
        assert!(Subset::from_indices(3, &[3]).is_err());
    }

    #[test]
    fn subsets_of_a_subset() {
        let s = Subset::from_indices(4, &[1, 3]).unwrap();
        let subs: Vec<_> = s.subsets().map(|x| x.bits()).collect();
        assert_eq!(subs, vec![0, 2, 8, 10]);
        assert_eq!(Subset::empty(3).subsets().count(), 1);
        assert_eq!(Subset::all(4).count(), 16);
    }

    #[test]
    fn sign_round_trip() {
        let s = Subset::from_indices(4, &[0, 2]).unwrap();
        assert_eq!(Subset::from_signs(&s.to_signs()), s);
        assert_eq!(s.restrict(&[10, 11, 12, 13]), vec![10, 12]);
        assert_eq!(format!("{s:?}"), "{1,3}/4");
    }

    #[test]
    fn intervals() {
        assert_eq!(Subset::interval(5, 2, 5).indices(), vec![2, 3, 4]);
        assert!(Subset::interval(5, 3, 3).is_empty());
    }
}
