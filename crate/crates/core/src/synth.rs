//! Explicit voter profiles realizing a target majority tournament.
//!
//! Two pipelines, chosen by whether the generator is balanced:
//!
//! * Non-balanced generator: a valency-point witness yields, for any ordered
//!   pair `(u, v)`, a profile whose table favors `v` over `u` and is exactly
//!   one half on every other pair. Averaging one such profile per edge of
//!   the target gives the target as strict majority.
//! * Balanced generator, pseudo-balanced target: every edge of the target
//!   lies on a directed cycle; each cycle is split into a triangle fan and
//!   each triangle is realized by averaging a relabeled 3-cycle of the
//!   generator over the stabilizer of its three corners.
//!
//! Weighted profiles are exact, so scaling by the common denominator gives
//! integer multiplicities with the same strict majorities.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::characterize::{decide_membership, is_balanced, pseudo_balance, CycleCover};
use crate::error::{Error, Result};
use crate::lp::{find_f_witness, FWitness};
use crate::table::{FractionalTable, WeightedProfile};
use crate::tournament::{Permutation, Tournament};
use crate::{half, rat, Rational};

/// A finite multiset of tournaments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerProfile {
    n: usize,
    // Sorted by tournament; multiplicities positive.
    entries: Vec<(BigUint, Tournament)>,
    total: BigUint,
}

impl IntegerProfile {
    /// Merges repeated tournaments. Multiplicities must be positive.
    pub fn new(entries: impl IntoIterator<Item = (BigUint, Tournament)>) -> Result<Self> {
        let mut merged: BTreeMap<Tournament, BigUint> = BTreeMap::new();
        let mut n = None;
        for (m, c) in entries {
            if m.is_zero() {
                return Err(Error::NonPositiveWeight(Rational::zero()));
            }
            match n {
                None => n = Some(c.n()),
                Some(k) if k != c.n() => {
                    return Err(Error::SizeMismatch {
                        left: k,
                        right: c.n(),
                    })
                }
                _ => {}
            }
            *merged.entry(c).or_default() += m;
        }
        let n = n.ok_or(Error::Empty)?;
        let total = merged.values().sum();
        Ok(IntegerProfile {
            n,
            entries: merged.into_iter().map(|(c, m)| (m, c)).collect(),
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(BigUint, Tournament)] {
        &self.entries
    }

    /// Number of voters, counted with multiplicity.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Number of distinct ballots.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }
}

/// `n=<n>` then one `<multiplicity> <bitstring>` line per distinct ballot.
impl fmt::Display for IntegerProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for (m, c) in &self.entries {
            writeln!(f, "{m} {c}")?;
        }
        Ok(())
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, n });
        }
    }
    if u == v {
        return Err(Error::RepeatedCandidate);
    }
    Ok(())
}

/// A profile from the orbit of the non-balanced `d` whose table is
/// `1/2` on every pair except `{u, v}`, where `v` is chosen with weight
/// strictly above one half.
pub fn edge_bias_profile(
    d: &Tournament,
    u: usize,
    v: usize,
) -> Result<(WeightedProfile, FractionalTable)> {
    check_pair(d.n(), u, v)?;
    if is_balanced(d) {
        return Err(Error::BalancedGenerator);
    }
    let witness = find_f_witness(d).expect("non-balanced generators admit a witness");
    edge_bias_with(d, &witness, u, v)
}

fn edge_bias_with(
    d: &Tournament,
    witness: &FWitness,
    u: usize,
    v: usize,
) -> Result<(WeightedProfile, FractionalTable)> {
    let n = d.n();
    let val = d.valencies();
    // With a below one half, build the mirrored gadget at (v, u).
    let (x, y) = if witness.a > half() { (u, v) } else { (v, u) };

    let mut parts = Vec::new();
    for (&(ell, (k0, k1)), weight) in &witness.weights {
        if weight.is_zero() {
            continue;
        }
        let (want_p, want_q) = (k0 + ell as i64, k1 + 1 - ell as i64);
        let (p, q) = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .find(|&(p, q)| {
                p != q
                    && val[p] as i64 == want_p
                    && val[q] as i64 == want_q
                    && d.has_edge(p, q) == (ell == 1)
            })
            .expect("witness points come from the generator's valency pairs");
        let pi = Permutation::mapping(n, &[p, q], &[x, y])?;
        let representative = d.relabel(pi.images());
        let (_, orbit) = FractionalTable::orbit_average(&representative, x, y)?;
        parts.push((weight.clone(), orbit));
    }
    let profile = WeightedProfile::mix(&parts)?;
    let table = profile.table();
    debug_assert_eq!(
        table,
        FractionalTable::gadget(n, x, y, witness.a.clone(), half(), half()).unwrap()
    );
    Ok((profile, table))
}

/// Uniform mixture of one edge-bias profile per edge of `c`.
pub fn synthesize_unbalanced(d: &Tournament, c: &Tournament) -> Result<WeightedProfile> {
    if d.n() != c.n() {
        return Err(Error::SizeMismatch {
            left: d.n(),
            right: c.n(),
        });
    }
    if is_balanced(d) {
        return Err(Error::BalancedGenerator);
    }
    let witness = find_f_witness(d).expect("non-balanced generators admit a witness");
    let edges: Vec<_> = c.edges().collect();
    let share = rat(1, edges.len() as i64);
    let parts = edges
        .into_iter()
        .map(|(u, v)| Ok((share.clone(), edge_bias_with(d, &witness, u, v)?.0)))
        .collect::<Result<Vec<_>>>()?;
    WeightedProfile::mix(&parts)
}

/// The lexicographically smallest directed triangle `p -> q -> r -> p`.
fn smallest_triangle(d: &Tournament) -> Option<[usize; 3]> {
    let n = d.n();
    (0..n)
        .flat_map(|p| (0..n).flat_map(move |q| (0..n).map(move |r| [p, q, r])))
        .find(|&[p, q, r]| {
            p != q && q != r && p != r && d.has_edge(p, q) && d.has_edge(q, r) && d.has_edge(r, p)
        })
}

/// A profile from the orbit of `d` whose table is the triangle table
/// `x -> y -> z -> x`.
fn triangle_profile(
    d: &Tournament,
    corner: [usize; 3],
    tri: [usize; 3],
) -> Result<WeightedProfile> {
    let n = d.n();
    let pi = Permutation::mapping(n, &corner, &tri)?;
    let representative = d.relabel(pi.images());
    let profile = WeightedProfile::uniform_over(
        Permutation::fixing(n, &tri).map(|sigma| representative.relabel(sigma.images())),
    )?;
    assert_eq!(
        profile.table(),
        FractionalTable::triangle(n, tri[0], tri[1], tri[2])?,
        "stabilizer average of a balanced 3-cycle is its triangle table"
    );
    Ok(profile)
}

/// Realizes the pseudo-balanced `c` from the orbit of the balanced `d`.
pub fn synthesize_balanced(d: &Tournament, c: &Tournament) -> Result<WeightedProfile> {
    if d.n() != c.n() {
        return Err(Error::SizeMismatch {
            left: d.n(),
            right: c.n(),
        });
    }
    if !is_balanced(d) {
        return Err(Error::GeneratorNotBalanced);
    }
    let cert = match pseudo_balance(c) {
        CycleCover::Covered(cert) => cert,
        CycleCover::Uncovered { u, v } => return Err(Error::TargetNotPseudoBalanced { u, v }),
    };
    let corner = smallest_triangle(d).expect("balanced tournaments contain a directed triangle");

    let cycle_share = rat(1, cert.cycles().len() as i64);
    let mut parts = Vec::new();
    for cycle in cert.cycles() {
        let fan: Vec<[usize; 3]> = (1..cycle.len() - 1)
            .map(|i| [cycle[0], cycle[i], cycle[i + 1]])
            .collect();
        let tri_share = &cycle_share * rat(1, fan.len() as i64);
        for tri in fan {
            parts.push((tri_share.clone(), triangle_profile(d, corner, tri)?));
        }
    }
    let profile = WeightedProfile::mix(&parts)?;
    debug_assert!(profile.table().is_balanced());
    Ok(profile)
}

/// Scales weights by the least common denominator.
pub fn rationalize(p: &WeightedProfile) -> IntegerProfile {
    let lcm = p
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, (w, _)| acc.lcm(w.denom()));
    let entries = p.entries().iter().map(|(w, c)| {
        let m = (w * Rational::from_integer(lcm.clone())).to_integer();
        debug_assert!(m.is_positive());
        (m.to_biguint().expect("positive weight"), c.clone())
    });
    IntegerProfile::new(entries).expect("weighted profiles are nonempty and uniform")
}

/// A profile from the orbit of `d` whose strict majority is `c`, or `None`
/// when `c` is outside the majority closure.
pub fn synthesize(d: &Tournament, c: &Tournament) -> Result<Option<IntegerProfile>> {
    let decision = decide_membership(d, c)?;
    if !decision.member {
        return Ok(None);
    }
    let weighted = if is_balanced(d) {
        synthesize_balanced(d, c)?
    } else {
        synthesize_unbalanced(d, c)?
    };
    Ok(Some(rationalize(&weighted)))
}

/// The classic `m(m-1)`-voter construction from linear orders: per edge
/// `u -> v`, one ballot `v, u, rest ascending` and one `rest descending, v, u`.
/// The pair `{u, v}` gains two votes for `v`; every other pair cancels.
pub fn mcgarvey_profile(c: &Tournament) -> IntegerProfile {
    let n = c.n();
    let mut ballots = Vec::with_capacity(n * (n - 1));
    for (u, v) in c.edges() {
        let rest: Vec<usize> = (0..n).filter(|&z| z != u && z != v).collect();
        let mut top = vec![v, u];
        top.extend(rest.iter().copied());
        let mut bottom: Vec<usize> = rest.iter().rev().copied().collect();
        bottom.extend([v, u]);
        for order in [top, bottom] {
            ballots.push((
                BigUint::one(),
                Tournament::linear_order(&order).expect("valid order"),
            ));
        }
    }
    IntegerProfile::new(ballots).expect("n >= 3 gives a nonempty profile")
}
