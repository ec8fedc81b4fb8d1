//! Fractional pair tables and weighted profiles.
//!
//! A [`FractionalTable`] assigns every ordered pair `(x, y)` the fraction of
//! voters choosing `y` from `{x, y}`, so `t(y, x) = 1 - t(x, y)`. Convex
//! combinations of indicator tables of a family are exactly the tables its
//! weighted profiles produce.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tournament::{pairs, Permutation, Tournament};
use crate::{half, rat, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionalTable {
    n: usize,
    // Row-major n x n matrix; the diagonal is unused and kept at zero.
    entries: Vec<Rational>,
}

fn check_unit(v: &Rational) -> Result<()> {
    if v < &Rational::zero() || v > &Rational::one() {
        Err(Error::ValueOutOfRange(v.clone()))
    } else {
        Ok(())
    }
}

fn check_candidate(n: usize, x: usize) -> Result<()> {
    if x < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: x, n })
    }
}

impl FractionalTable {
    /// The table with every entry equal to one half.
    pub fn all_half(n: usize) -> FractionalTable {
        let mut t = FractionalTable {
            n,
            entries: vec![Rational::zero(); n * n],
        };
        for (i, j) in pairs(n) {
            t.set(i, j, half());
        }
        t
    }

    /// Builds a table from `value(i, j)` on the pairs `i < j`.
    pub fn from_fn(n: usize, mut value: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut t = FractionalTable::all_half(n);
        for (i, j) in pairs(n) {
            let v = value(i, j);
            check_unit(&v)?;
            t.set(i, j, v);
        }
        Ok(t)
    }

    /// `t(x, y) = 1` iff `c` chooses `y` from `{x, y}`.
    pub fn indicator(c: &Tournament) -> FractionalTable {
        let mut t = FractionalTable::all_half(c.n());
        for (x, y) in c.edges() {
            t.set(x, y, Rational::one());
        }
        t
    }

    fn set(&mut self, x: usize, y: usize, v: Rational) {
        let n = self.n;
        self.entries[y * n + x] = Rational::one() - &v;
        self.entries[x * n + y] = v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> &Rational {
        debug_assert!(x != y);
        &self.entries[x * self.n + y]
    }

    pub fn row_sum(&self, x: usize) -> Rational {
        (0..self.n)
            .filter(|&y| y != x)
            .map(|y| self.get(x, y))
            .sum()
    }

    /// `true` iff every row sums to `(n - 1) / 2`.
    pub fn is_balanced(&self) -> bool {
        let target = rat(self.n as i64 - 1, 2);
        (0..self.n).all(|x| self.row_sum(x) == target)
    }

    /// Strict majority rounding. Fails with every pair sitting exactly at 1/2.
    pub fn maj(&self) -> Result<Tournament> {
        let h = half();
        let ties: Vec<_> = pairs(self.n)
            .filter(|&(i, j)| self.get(i, j) == &h)
            .collect();
        if !ties.is_empty() {
            return Err(Error::Tie(ties));
        }
        Tournament::from_fn(self.n, |i, j| self.get(i, j) > &h)
    }

    /// Entrywise `1 - t`.
    pub fn dual(&self) -> FractionalTable {
        let mut t = self.clone();
        for (i, j) in pairs(self.n) {
            t.set(i, j, self.get(j, i).clone());
        }
        t
    }

    /// Weighted entrywise sum; weights must be nonnegative and sum to 1.
    pub fn convex_combine(parts: &[(Rational, FractionalTable)]) -> Result<FractionalTable> {
        let (_, first) = parts.first().ok_or(Error::Empty)?;
        let n = first.n;
        let mut total = Rational::zero();
        for (w, t) in parts {
            if t.n != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: t.n,
                });
            }
            check_unit(w)?;
            total += w;
        }
        if !total.is_one() {
            return Err(Error::WeightSum(total));
        }
        let mut out = FractionalTable::all_half(n);
        for (i, j) in pairs(n) {
            let v: Rational = parts.iter().map(|(w, t)| w * t.get(i, j)).sum();
            out.set(i, j, v);
        }
        Ok(out)
    }

    /// `t(x, y) = a`, `t(x, z) = s0`, `t(y, z) = s1` for every other `z`,
    /// and one half between any two other candidates.
    pub fn gadget(
        n: usize,
        x: usize,
        y: usize,
        a: Rational,
        s0: Rational,
        s1: Rational,
    ) -> Result<FractionalTable> {
        check_candidate(n, x)?;
        check_candidate(n, y)?;
        if x == y {
            return Err(Error::RepeatedCandidate);
        }
        for v in [&a, &s0, &s1] {
            check_unit(v)?;
        }
        let mut t = FractionalTable::all_half(n);
        t.set(x, y, a);
        for z in (0..n).filter(|&z| z != x && z != y) {
            t.set(x, z, s0.clone());
            t.set(y, z, s1.clone());
        }
        Ok(t)
    }

    /// The directed triangle `x -> y -> z -> x` at full strength, one half elsewhere.
    pub fn triangle(n: usize, x: usize, y: usize, z: usize) -> Result<FractionalTable> {
        FractionalTable::cycle(n, &[x, y, z], Rational::one())
    }

    /// Value `a` on each cycle edge `cycle[i] -> cycle[i + 1]` (wrapping),
    /// one half elsewhere.
    pub fn cycle(n: usize, cycle: &[usize], a: Rational) -> Result<FractionalTable> {
        if cycle.len() < 3 {
            return Err(Error::CycleTooShort(cycle.len()));
        }
        check_unit(&a)?;
        let mut seen = vec![false; n];
        for &x in cycle {
            check_candidate(n, x)?;
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::RepeatedCandidate);
            }
        }
        let mut t = FractionalTable::all_half(n);
        for (k, &x) in cycle.iter().enumerate() {
            t.set(x, cycle[(k + 1) % cycle.len()], a.clone());
        }
        Ok(t)
    }

    /// Average of the indicator tables of `c` relabeled by every permutation
    /// fixing `x` and `y`, together with the uniform profile over that orbit.
    pub fn orbit_average(
        c: &Tournament,
        x: usize,
        y: usize,
    ) -> Result<(FractionalTable, WeightedProfile)> {
        let n = c.n();
        check_candidate(n, x)?;
        check_candidate(n, y)?;
        if x == y {
            return Err(Error::RepeatedCandidate);
        }
        let profile = WeightedProfile::uniform_over(
            Permutation::fixing(n, &[x, y]).map(|pi| c.relabel(pi.images())),
        )?;
        Ok((profile.table(), profile))
    }
}

impl fmt::Debug for FractionalTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FractionalTable(n={}", self.n)?;
        for (i, j) in pairs(self.n) {
            write!(f, ", {i}{j}:{}", self.get(i, j))?;
        }
        f.write_str(")")
    }
}

/// One line per ordered pair: `x y p/q`.
impl fmt::Display for FractionalTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.n {
            for y in (0..self.n).filter(|&y| y != x) {
                let v = self.get(x, y);
                writeln!(f, "{x} {y} {}/{}", v.numer(), v.denom())?;
            }
        }
        Ok(())
    }
}

/// A probability distribution over finitely many tournaments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProfile {
    n: usize,
    // Sorted by tournament, weights positive.
    entries: Vec<(Rational, Tournament)>,
}

impl WeightedProfile {
    /// Merges repeated tournaments; weights must be positive and sum to 1.
    pub fn new(entries: impl IntoIterator<Item = (Rational, Tournament)>) -> Result<Self> {
        let mut merged: BTreeMap<Tournament, Rational> = BTreeMap::new();
        let mut n = None;
        for (w, c) in entries {
            if w <= Rational::zero() {
                return Err(Error::NonPositiveWeight(w));
            }
            match n {
                None => n = Some(c.n()),
                Some(m) if m != c.n() => {
                    return Err(Error::SizeMismatch {
                        left: m,
                        right: c.n(),
                    })
                }
                _ => {}
            }
            *merged.entry(c).or_insert_with(Rational::zero) += w;
        }
        let n = n.ok_or(Error::Empty)?;
        let total: Rational = merged.values().sum();
        if !total.is_one() {
            return Err(Error::WeightSum(total));
        }
        Ok(WeightedProfile {
            n,
            entries: merged.into_iter().map(|(c, w)| (w, c)).collect(),
        })
    }

    /// Equal weight per item, repeated items accumulating weight.
    pub fn uniform_over(items: impl IntoIterator<Item = Tournament>) -> Result<Self> {
        let items: Vec<_> = items.into_iter().collect();
        let w = rat(1, items.len().max(1) as i64);
        WeightedProfile::new(items.into_iter().map(|c| (w.clone(), c)))
    }

    /// Weighted mixture of profiles; mixing weights must sum to 1.
    pub fn mix(parts: &[(Rational, WeightedProfile)]) -> Result<Self> {
        let total: Rational = parts.iter().map(|(w, _)| w).sum();
        if !total.is_one() {
            return Err(Error::WeightSum(total));
        }
        WeightedProfile::new(parts.iter().flat_map(|(w, p)| {
            p.entries
                .iter()
                .filter(|_| !w.is_zero())
                .map(move |(v, c)| (w * v, c.clone()))
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(Rational, Tournament)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The convex combination of the members' indicator tables.
    pub fn table(&self) -> FractionalTable {
        let mut t = FractionalTable::all_half(self.n);
        for (i, j) in pairs(self.n) {
            let v: Rational = self
                .entries
                .iter()
                .filter(|(_, c)| c.has_edge(i, j))
                .map(|(w, _)| w)
                .sum();
            t.set(i, j, v);
        }
        t
    }
}
