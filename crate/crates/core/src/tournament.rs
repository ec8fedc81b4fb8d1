//! Tournaments on the candidate set `{0, .., n-1}`.
//!
//! A tournament is a choice function on unordered pairs: for every pair
//! `{x, y}` exactly one of the two is chosen. We read "`y` is chosen from
//! `{x, y}`" as a directed edge `x -> y`, so the valency (out-degree) of `x`
//! counts the pairs in which `x` loses the choice to its partner.
//!
//! The bit encoding lists the pairs `i < j` in row-major order; bit `1`
//! means the larger index `j` is chosen.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Number of unordered pairs on `n` candidates.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major position of the pair `i < j`.
#[inline]
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Iterates the pairs `(i, j)` with `i < j` in row-major order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tournament {
    n: usize,
    bits: Vec<bool>,
}

impl Tournament {
    /// Builds a tournament from its row-major pair bits.
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewCandidates(n));
        }
        let expected = pair_count(n);
        if bits.len() != expected {
            return Err(Error::BitCount {
                expected,
                got: bits.len(),
            });
        }
        Ok(Tournament { n, bits })
    }

    /// Builds a tournament from a predicate `edge(i, j)` evaluated on `i < j`;
    /// `true` means `j` is chosen.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let bits = pairs(n).map(|(i, j)| edge(i, j)).collect();
        Tournament::new(n, bits)
    }

    /// Decodes the `index`-th labeled tournament: bit `k` of `index` is the
    /// `k`-th pair bit.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        Tournament::from_fn(n, {
            let mut k = 0;
            move |_, _| {
                let bit = (index >> k) & 1 == 1;
                k += 1;
                bit
            }
        })
    }

    /// Inverse of [`Tournament::from_index`]. Only meaningful for at most 64 pairs.
    pub fn index(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &b)| acc | ((b as u64) << k))
    }

    /// The linear order that ranks `order[0]` first: every voter with this
    /// ballot chooses the higher-ranked candidate from each pair.
    pub fn linear_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &x) in order.iter().enumerate() {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
            if rank[x] != usize::MAX {
                return Err(Error::RepeatedCandidate);
            }
            rank[x] = pos;
        }
        Tournament::from_fn(n, |i, j| rank[j] < rank[i])
    }

    /// All `2^C(n,2)` labeled tournaments, in index order.
    pub fn all_labeled(n: usize) -> impl Iterator<Item = Tournament> {
        let count = 1u64 << pair_count(n);
        (0..count).map(move |k| Tournament::from_index(n, k).expect("valid size"))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn to_bitstring(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                n: self.n,
            })
        }
    }

    /// `true` iff `y` is chosen from `{x, y}`, i.e. the edge `x -> y`.
    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        debug_assert!(x != y);
        if x < y {
            self.bits[pair_index(self.n, x, y)]
        } else {
            !self.bits[pair_index(self.n, y, x)]
        }
    }

    /// The element chosen from the pair `{x, y}`.
    pub fn chosen(&self, x: usize, y: usize) -> usize {
        if self.has_edge(x, y) {
            y
        } else {
            x
        }
    }

    pub fn valency(&self, x: usize) -> Result<usize> {
        self.check_index(x)?;
        Ok(self.valency_unchecked(x))
    }

    pub(crate) fn valency_unchecked(&self, x: usize) -> usize {
        (0..self.n)
            .filter(|&y| y != x && self.has_edge(x, y))
            .count()
    }

    /// Valency of every candidate, indexed by candidate.
    pub fn valencies(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.valency_unchecked(x)).collect()
    }

    /// Flips every pair.
    pub fn dual(&self) -> Tournament {
        Tournament {
            n: self.n,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// Relabels candidates: the result has the edge `pi(x) -> pi(y)` exactly
    /// when `self` has `x -> y`.
    pub fn apply_permutation(&self, pi: &Permutation) -> Result<Tournament> {
        if pi.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: pi.len(),
            });
        }
        Ok(self.relabel(pi.images()))
    }

    pub(crate) fn relabel(&self, images: &[usize]) -> Tournament {
        let n = self.n;
        let mut bits = vec![false; self.bits.len()];
        for (i, j) in pairs(n) {
            let (a, b) = (images[i], images[j]);
            let edge = self.bits[pair_index(n, i, j)];
            if a < b {
                bits[pair_index(n, a, b)] = edge;
            } else {
                bits[pair_index(n, b, a)] = !edge;
            }
        }
        Tournament { n, bits }
    }

    /// The orbit of `self` under all relabelings.
    pub fn sym_closure(&self) -> BTreeSet<Tournament> {
        Permutation::all(self.n)
            .map(|pi| self.relabel(pi.images()))
            .collect()
    }

    /// Valency pairs `(val(x), val(y))` over ordered pairs with
    /// `x -> y` (`ell = 1`) or `y -> x` (`ell = 0`).
    pub fn v_points(&self, ell: u8) -> PointSet2D {
        assert!(ell <= 1, "ell must be 0 or 1");
        let val = self.valencies();
        let mut points = PointSet2D::default();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.has_edge(x, y) == (ell == 1) {
                    points.insert(val[x] as i64, val[y] as i64);
                }
            }
        }
        points
    }

    /// `v_points` shifted by `-(ell, 1 - ell)`.
    pub fn v_star_points(&self, ell: u8) -> PointSet2D {
        let (dx, dy) = (ell as i64, 1 - ell as i64);
        self.v_points(ell)
            .iter()
            .map(|&(k0, k1)| (k0 - dx, k1 - dy))
            .collect()
    }

    /// The lexicographically smallest bit encoding over all relabelings.
    pub fn canonical_form(&self) -> Tournament {
        Permutation::all(self.n)
            .map(|pi| self.relabel(pi.images()))
            .min()
            .expect("at least the identity")
    }

    pub fn is_isomorphic(&self, other: &Tournament) -> bool {
        self.n == other.n
            && self.valency_multiset() == other.valency_multiset()
            && self.canonical_form() == other.canonical_form()
    }

    fn valency_multiset(&self) -> Vec<usize> {
        let mut v = self.valencies();
        v.sort_unstable();
        v
    }

    /// Directed edges `(x, y)` with `x -> y`, ordered by pair.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        pairs(self.n).map(move |(i, j)| if self.has_edge(i, j) { (i, j) } else { (j, i) })
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}, {})", self.n, self.to_bitstring())
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// A bijection of `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(n));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(a, b);
        p
    }

    /// Sends `sources[i]` to `targets[i]` and the remaining points, in
    /// increasing order, to the remaining images in increasing order.
    pub fn mapping(n: usize, sources: &[usize], targets: &[usize]) -> Result<Self> {
        assert_eq!(sources.len(), targets.len());
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for (&s, &t) in sources.iter().zip(targets) {
            if s >= n || t >= n {
                return Err(Error::IndexOutOfRange { index: s.max(t), n });
            }
            if images[s] != usize::MAX || used[t] {
                return Err(Error::RepeatedCandidate);
            }
            images[s] = t;
            used[t] = true;
        }
        let mut free = (0..n).filter(|&t| !used[t]);
        for img in images.iter_mut().filter(|img| **img == usize::MAX) {
            *img = free.next().expect("counts agree");
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// All `n!` permutations in lexicographic order of their image vectors.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        Permutation::fixing(n, &[])
    }

    /// The pointwise stabilizer of `fixed`: all permutations with
    /// `pi(x) = x` for `x` in `fixed`, in lexicographic order.
    pub fn fixing(n: usize, fixed: &[usize]) -> impl Iterator<Item = Permutation> {
        let moving: Vec<usize> = (0..n).filter(|x| !fixed.contains(x)).collect();
        let mut arrangement = Some(moving.clone());
        std::iter::from_fn(move || {
            let current = arrangement.take()?;
            let mut images: Vec<usize> = (0..n).collect();
            for (&src, &dst) in moving.iter().zip(&current) {
                images[src] = dst;
            }
            let mut next = current;
            if next_permutation(&mut next) {
                arrangement = Some(next);
            }
            Some(Permutation { images })
        })
    }
}

/// Advances `v` to its lexicographic successor; `false` when `v` was the last.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A finite set of integer points in the plane.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointSet2D {
    points: BTreeSet<(i64, i64)>,
}

impl PointSet2D {
    pub fn insert(&mut self, k0: i64, k1: i64) -> bool {
        self.points.insert((k0, k1))
    }

    pub fn contains(&self, k0: i64, k1: i64) -> bool {
        self.points.contains(&(k0, k1))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(i64, i64)> {
        self.points.iter()
    }

    /// Swaps the two coordinates of every point.
    pub fn transposed(&self) -> PointSet2D {
        self.points.iter().map(|&(a, b)| (b, a)).collect()
    }
}

impl FromIterator<(i64, i64)> for PointSet2D {
    fn from_iter<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        PointSet2D {
            points: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, bits: &str) -> Tournament {
        Tournament::new(n, bits.chars().map(|c| c == '1').collect()).unwrap()
    }

    #[test]
    fn encoding_follows_row_major_pairs() {
        let max_wins = t(3, "111");
        assert_eq!(max_wins.chosen(0, 1), 1);
        assert_eq!(max_wins.chosen(0, 2), 2);
        assert_eq!(max_wins.chosen(1, 2), 2);

        let cycle = t(3, "101");
        assert!(cycle.has_edge(0, 1) && cycle.has_edge(1, 2) && cycle.has_edge(2, 0));
        assert_eq!(cycle.chosen(0, 2), 0);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(
            Tournament::new(2, vec![true]),
            Err(Error::TooFewCandidates(2))
        );
        assert_eq!(
            Tournament::new(3, vec![true; 2]),
            Err(Error::BitCount {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn valency_examples() {
        assert_eq!(t(4, "111111").valency(0), Ok(3));
        assert_eq!(t(3, "101").valencies(), vec![1, 1, 1]);
        assert_eq!(t(3, "111").valency(2), Ok(0));
        assert!(t(3, "111").valency(3).is_err());
    }

    #[test]
    fn dual_examples() {
        let max_wins = t(3, "111");
        assert_eq!(max_wins.dual(), t(3, "000"));
        assert_eq!(max_wins.dual().valencies(), vec![0, 1, 2]);
        let cycle = t(3, "101");
        let reversed = cycle.dual();
        assert!(reversed.has_edge(0, 2) && reversed.has_edge(2, 1) && reversed.has_edge(1, 0));
    }

    #[test]
    fn transposition_reverses_the_three_cycle() {
        let cycle = t(3, "101");
        let swapped = cycle
            .apply_permutation(&Permutation::transposition(3, 0, 1))
            .unwrap();
        assert_eq!(swapped, cycle.dual());
        assert_eq!(
            cycle.apply_permutation(&Permutation::identity(3)).unwrap(),
            cycle
        );
        assert!(cycle.apply_permutation(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn sym_closure_sizes() {
        let cycle = t(3, "101");
        let orbit = cycle.sym_closure();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&cycle) && orbit.contains(&cycle.dual()));
        assert_eq!(t(3, "111").sym_closure().len(), 6);
    }

    #[test]
    fn v_point_examples() {
        let cycle = t(3, "101");
        assert_eq!(cycle.v_points(1), [(1, 1)].into_iter().collect());
        assert_eq!(cycle.v_star_points(1), [(0, 1)].into_iter().collect());
        assert_eq!(cycle.v_star_points(0), [(1, 0)].into_iter().collect());

        let max_wins = t(3, "111");
        assert_eq!(
            max_wins.v_points(1),
            [(2, 1), (2, 0), (1, 0)].into_iter().collect()
        );
        assert_eq!(
            max_wins.v_star_points(1),
            [(1, 1), (1, 0), (0, 0)].into_iter().collect()
        );
    }

    #[test]
    fn permutation_enumeration_counts() {
        assert_eq!(Permutation::all(4).count(), 24);
        let stab: Vec<_> = Permutation::fixing(5, &[1, 3]).collect();
        assert_eq!(stab.len(), 6);
        assert!(stab.iter().all(|p| p.apply(1) == 1 && p.apply(3) == 3));
        assert_eq!(Permutation::fixing(3, &[0, 1]).count(), 1);
    }

    #[test]
    fn mapping_orders_the_rest_increasingly() {
        let p = Permutation::mapping(5, &[3, 0], &[0, 1]).unwrap();
        assert_eq!(p.images(), &[1, 2, 3, 0, 4]);
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn linear_order_is_transitive() {
        let d = Tournament::linear_order(&[2, 0, 1]).unwrap();
        assert_eq!(d.chosen(0, 2), 2);
        assert_eq!(d.chosen(0, 1), 0);
        assert_eq!(d.valencies(), vec![1, 2, 0]);
    }

    #[test]
    fn canonical_forms_count_isomorphism_classes() {
        let classes = |n| {
            Tournament::all_labeled(n)
                .map(|d| d.canonical_form())
                .collect::<BTreeSet<_>>()
                .len()
        };
        assert_eq!(classes(3), 2);
        assert_eq!(classes(4), 4);
    }

    #[test]
    fn index_round_trip() {
        for d in Tournament::all_labeled(4) {
            assert_eq!(Tournament::from_index(4, d.index()).unwrap(), d);
        }
    }
}
