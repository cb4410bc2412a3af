//! Bitmask subsets of a small ground set and canonical families of them.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set representable by [`SubsetBits`].
pub const MAX_GROUND: usize = 64;

/// A subset of `{0, …, n-1}` stored as an `n`-bit mask, `n ≤ 64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetBits(pub u64);

impl SubsetBits {
    pub const EMPTY: SubsetBits = SubsetBits(0);

    /// The whole ground set `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set of {n} points exceeds {MAX_GROUND}");
        if n == MAX_GROUND {
            SubsetBits(u64::MAX)
        } else {
            SubsetBits((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        assert!(x < MAX_GROUND);
        SubsetBits(1u64 << x)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points
            .into_iter()
            .fold(SubsetBits::EMPTY, |acc, x| acc | SubsetBits::singleton(x))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < MAX_GROUND && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn with(self, x: usize) -> Self {
        self | SubsetBits::singleton(x)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: SubsetBits) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: SubsetBits) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to `{0, …, n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        SubsetBits(!self.0 & SubsetBits::full(n).0)
    }

    /// Whether every member is below `n`.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(SubsetBits::full(n))
    }

    pub fn check_fits(self, n: usize) -> Result<()> {
        if self.fits(n) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange { set: self, n })
        }
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Points {
        Points(self.0)
    }

    /// All subsets of `self`, in increasing numeric order, starting with ∅.
    pub fn submasks(self) -> Submasks {
        Submasks {
            mask: self.0,
            next: Some(0),
        }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl BitOr for SubsetBits {
    type Output = SubsetBits;
    fn bitor(self, rhs: Self) -> Self {
        SubsetBits(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetBits {
    type Output = SubsetBits;
    fn bitand(self, rhs: Self) -> Self {
        SubsetBits(self.0 & rhs.0)
    }
}

impl Sub for SubsetBits {
    type Output = SubsetBits;
    fn sub(self, rhs: Self) -> Self {
        SubsetBits(self.0 & !rhs.0)
    }
}

impl fmt::Debug for SubsetBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as the ascending list of its points.
impl Serialize for SubsetBits {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SubsetBits {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(d)?;
        if let Some(&p) = points.iter().find(|&&p| p >= MAX_GROUND) {
            return Err(serde::de::Error::custom(format!("point {p} exceeds the {MAX_GROUND}-point limit")));
        }
        Ok(SubsetBits::from_points(points))
    }
}

impl FromIterator<usize> for SubsetBits {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        SubsetBits::from_points(iter)
    }
}

pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

pub struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = SubsetBits;
    fn next(&mut self) -> Option<SubsetBits> {
        let cur = self.next?;
        // next submask in increasing order: add one within the mask's bit positions
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(SubsetBits(cur))
    }
}

/// A duplicate-free family of subsets in canonical (numeric) order.
///
/// Equality is structural, so two families are equal exactly when they have
/// the same members. Members are addressed by position; hyperspaces use
/// these positions as their points.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    members: Vec<SubsetBits>,
}

impl SetFamily {
    pub fn new(mut members: Vec<SubsetBits>) -> Self {
        members.sort_unstable();
        members.dedup();
        SetFamily { members }
    }

    pub(crate) fn from_sorted(members: Vec<SubsetBits>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { members }
    }

    pub fn empty() -> Self {
        SetFamily::default()
    }

    /// Every subset of `{0, …, n-1}`.
    pub fn power_set(n: usize) -> Self {
        SetFamily::from_sorted(SubsetBits::full(n).submasks().collect())
    }

    /// Every non-empty subset of `{0, …, n-1}` (the family P⁰).
    pub fn nonempty_subsets(n: usize) -> Self {
        SetFamily::from_sorted(SubsetBits::full(n).submasks().skip(1).collect())
    }

    /// All singletons `{x}` for `x < n`.
    pub fn singletons(n: usize) -> Self {
        SetFamily::from_sorted((0..n).map(SubsetBits::singleton).collect())
    }

    pub fn members(&self) -> &[SubsetBits] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> SubsetBits {
        self.members[i]
    }

    pub fn index_of(&self, s: SubsetBits) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    pub fn contains(&self, s: SubsetBits) -> bool {
        self.index_of(s).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetBits> + '_ {
        self.members.iter().copied()
    }

    /// Union of all members.
    pub fn union_all(&self) -> SubsetBits {
        self.iter().fold(SubsetBits::EMPTY, |a, b| a | b)
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subfamily(&self, other: &SetFamily) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// The positions of the members satisfying `pred`, as a subset of the
    /// family's index set.
    pub fn select(&self, pred: impl Fn(SubsetBits) -> bool) -> SubsetBits {
        assert!(self.len() <= MAX_GROUND);
        self.iter()
            .enumerate()
            .filter(|(_, s)| pred(*s))
            .map(|(i, _)| i)
            .collect()
    }

    /// The sub-family whose positions are the members of `indices`.
    pub fn restrict(&self, indices: SubsetBits) -> SetFamily {
        SetFamily::from_sorted(indices.iter().map(|i| self.members[i]).collect())
    }

    pub fn check_fits(&self, n: usize) -> Result<()> {
        self.iter().try_for_each(|s| s.check_fits(n))
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl FromIterator<SubsetBits> for SetFamily {
    fn from_iter<I: IntoIterator<Item = SubsetBits>>(iter: I) -> Self {
        SetFamily::new(iter.into_iter().collect())
    }
}
