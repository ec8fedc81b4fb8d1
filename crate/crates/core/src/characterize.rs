//! Deciding membership in the majority closure of a relabeling orbit.
//!
//! A generator with some candidate off the average valency `(n - 1) / 2`
//! reaches every tournament. A balanced generator reaches exactly the
//! pseudo-balanced targets, which are the tournaments where every edge lies
//! on a directed cycle.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// `true` iff every candidate has valency exactly `(n - 1) / 2`.
pub fn is_balanced(d: &Tournament) -> bool {
    let n = d.n();
    n % 2 == 1 && d.valencies().iter().all(|&v| 2 * v == n - 1)
}

/// A shortest directed cycle `(u, v, ..)` through the edge `u -> v`, or
/// `None` when `v` cannot reach `u`.
///
/// Among shortest cycles, each node on the way back to `u` is preceded by the
/// smallest-index candidate that keeps the path shortest.
pub fn cycle_through_edge(c: &Tournament, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let n = c.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, n });
        }
    }
    if u == v || !c.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }

    let mut dist = vec![usize::MAX; n];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        if x == u {
            break;
        }
        for y in 0..n {
            if y != x && dist[y] == usize::MAX && c.has_edge(x, y) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if dist[u] == usize::MAX {
        return Ok(None);
    }

    // Walk back from u to v through layers of decreasing distance.
    let mut back = vec![u];
    let mut cur = u;
    while cur != v {
        cur = (0..n)
            .find(|&p| {
                p != cur && dist[p] != usize::MAX && dist[p] + 1 == dist[cur] && c.has_edge(p, cur)
            })
            .expect("BFS layers connect");
        back.push(cur);
    }
    back.reverse();
    // back = [v, .., u]; rotate so the cycle starts with u -> v.
    back.rotate_right(1);
    Ok(Some(back))
}

/// One directed cycle per edge of the target, each containing its edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCertificate {
    cycles: Vec<Vec<usize>>,
}

impl CycleCertificate {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Re-checks the certificate against `c` without trusting how it was built.
    pub fn verify(&self, c: &Tournament) -> bool {
        let n = c.n();
        let mut covered = vec![false; n * n];
        for cycle in &self.cycles {
            if cycle.len() < 3 || cycle.iter().any(|&x| x >= n) {
                return false;
            }
            let mut seen = vec![false; n];
            for &x in cycle {
                if std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
            for k in 0..cycle.len() {
                let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                if !c.has_edge(a, b) {
                    return false;
                }
                covered[a * n + b] = true;
            }
        }
        c.edges().all(|(a, b)| covered[a * n + b])
    }
}

/// Outcome of the edge-on-cycle test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleCover {
    Covered(CycleCertificate),
    /// The first edge, in pair order, that lies on no directed cycle.
    Uncovered {
        u: usize,
        v: usize,
    },
}

impl CycleCover {
    pub fn holds(&self) -> bool {
        matches!(self, CycleCover::Covered(_))
    }

    pub fn certificate(&self) -> Option<&CycleCertificate> {
        match self {
            CycleCover::Covered(cert) => Some(cert),
            CycleCover::Uncovered { .. } => None,
        }
    }
}

/// Tests pseudo-balance: every directed edge of `c` lies on a directed cycle.
pub fn pseudo_balance(c: &Tournament) -> CycleCover {
    let mut cycles = Vec::new();
    for (u, v) in c.edges() {
        match cycle_through_edge(c, u, v).expect("edges are oriented u -> v") {
            Some(cycle) => cycles.push(cycle),
            None => return CycleCover::Uncovered { u, v },
        }
    }
    CycleCover::Covered(CycleCertificate { cycles })
}

pub fn is_pseudo_balanced(c: &Tournament) -> bool {
    pseudo_balance(c).holds()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    GeneratorNotBalanced,
    TargetPseudoBalanced,
    TargetNotPseudoBalanced,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::GeneratorNotBalanced => "GENERATOR_NOT_BALANCED",
            Reason::TargetPseudoBalanced => "TARGET_PSEUDO_BALANCED",
            Reason::TargetNotPseudoBalanced => "TARGET_NOT_PSEUDO_BALANCED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub member: bool,
    pub reason: Reason,
    /// Present exactly when `reason` is [`Reason::TargetPseudoBalanced`].
    pub certificate: Option<CycleCertificate>,
}

/// Whether `c` is the strict majority of some finite profile drawn from the
/// relabeling orbit of `generator`.
pub fn decide_membership(generator: &Tournament, c: &Tournament) -> Result<Decision> {
    decide_family_membership(std::slice::from_ref(generator), c)
}

/// As [`decide_membership`] for the union of several generators' orbits.
pub fn decide_family_membership(generators: &[Tournament], c: &Tournament) -> Result<Decision> {
    if generators.is_empty() {
        return Err(Error::Empty);
    }
    for g in generators {
        if g.n() != c.n() {
            return Err(Error::SizeMismatch {
                left: g.n(),
                right: c.n(),
            });
        }
    }
    if !generators.iter().all(is_balanced) {
        return Ok(Decision {
            member: true,
            reason: Reason::GeneratorNotBalanced,
            certificate: None,
        });
    }
    Ok(match pseudo_balance(c) {
        CycleCover::Covered(cert) => Decision {
            member: true,
            reason: Reason::TargetPseudoBalanced,
            certificate: Some(cert),
        },
        CycleCover::Uncovered { .. } => Decision {
            member: false,
            reason: Reason::TargetNotPseudoBalanced,
            certificate: None,
        },
    })
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "member={} reason={}", self.member, self.reason)?;
        if let Some(cert) = &self.certificate {
            for cycle in cert.cycles() {
                let names: Vec<_> = cycle.iter().map(|x| x.to_string()).collect();
                write!(f, "\ncycle {}", names.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Permutation;

    fn t(n: usize, bits: &str) -> Tournament {
        Tournament::new(n, bits.chars().map(|c| c == '1').collect()).unwrap()
    }

    #[test]
    fn balance_examples() {
        assert!(is_balanced(&t(3, "101")));
        assert!(!is_balanced(&t(3, "111")));
        assert!(Tournament::all_labeled(4).all(|d| !is_balanced(&d)));
    }

    #[test]
    fn cycle_through_edge_examples() {
        assert_eq!(
            cycle_through_edge(&t(3, "101"), 0, 1),
            Ok(Some(vec![0, 1, 2]))
        );
        assert_eq!(cycle_through_edge(&t(3, "111"), 0, 1), Ok(None));
        assert_eq!(
            cycle_through_edge(&t(3, "111"), 1, 0),
            Err(Error::NotAnEdge { u: 1, v: 0 })
        );

        // 3-cycle on {0,1,2}; candidate 3 is beaten by everyone (3 -> x for all x).
        let d = Tournament::from_fn(4, |i, j| match (i, j) {
            (0, 1) | (1, 2) => true,
            (0, 2) => false,
            _ => false,
        })
        .unwrap();
        assert_eq!(d.valency(3), Ok(3));
        assert_eq!(cycle_through_edge(&d, 0, 1), Ok(Some(vec![0, 1, 2])));
        assert_eq!(cycle_through_edge(&d, 3, 0), Ok(None));
    }

    #[test]
    fn shortest_cycle_prefers_small_predecessors() {
        // Edge 0 -> 1, then 1 -> {2, 3}, both 2 -> 0 and 3 -> 0.
        let d = Tournament::from_fn(4, |i, j| {
            matches!((i, j), (0, 1) | (1, 2) | (1, 3) | (2, 3))
        })
        .unwrap();
        assert_eq!(cycle_through_edge(&d, 0, 1), Ok(Some(vec![0, 1, 2])));
    }

    #[test]
    fn pseudo_balance_examples() {
        let cycle = t(3, "101");
        let cover = pseudo_balance(&cycle);
        let cert = cover.certificate().unwrap();
        assert_eq!(
            cert.cycles(),
            &[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]
        );
        assert!(cert.verify(&cycle));

        assert_eq!(
            pseudo_balance(&t(3, "111")),
            CycleCover::Uncovered { u: 0, v: 1 }
        );
    }

    #[test]
    fn balanced_five_tournaments_are_pseudo_balanced() {
        let balanced: Vec<_> = Tournament::all_labeled(5).filter(is_balanced).collect();
        assert_eq!(balanced.len(), 24);
        for d in balanced {
            let cover = pseudo_balance(&d);
            assert!(cover.certificate().unwrap().verify(&d));
        }
    }

    #[test]
    fn decision_examples() {
        let max_wins = t(3, "111");
        let cycle = t(3, "101");
        for c in Tournament::all_labeled(3) {
            let d = decide_membership(&max_wins, &c).unwrap();
            assert!(d.member);
            assert_eq!(d.reason, Reason::GeneratorNotBalanced);
            assert!(d.certificate.is_none());
        }
        let d = decide_membership(&cycle, &cycle.dual()).unwrap();
        assert_eq!((d.member, d.reason), (true, Reason::TargetPseudoBalanced));
        assert!(d.certificate.unwrap().verify(&cycle.dual()));

        let d = decide_membership(&cycle, &max_wins).unwrap();
        assert_eq!(
            (d.member, d.reason),
            (false, Reason::TargetNotPseudoBalanced)
        );
        assert_eq!(
            d.to_string(),
            "member=false reason=TARGET_NOT_PSEUDO_BALANCED"
        );

        assert!(decide_membership(&cycle, &Tournament::all_labeled(4).next().unwrap()).is_err());
    }

    #[test]
    fn family_wrapper() {
        let cycle = t(3, "101");
        let max_wins = t(3, "111");
        let d = decide_family_membership(&[cycle.clone(), max_wins.clone()], &max_wins).unwrap();
        assert_eq!(d.reason, Reason::GeneratorNotBalanced);
        let d = decide_family_membership(&[cycle.clone(), cycle.dual()], &max_wins).unwrap();
        assert!(!d.member);
        assert_eq!(decide_family_membership(&[], &max_wins), Err(Error::Empty));
    }

    #[test]
    fn decision_is_relabeling_invariant() {
        for g in Tournament::all_labeled(4) {
            for c in Tournament::all_labeled(4).step_by(7) {
                let base = decide_membership(&g, &c).unwrap().member;
                for pi in Permutation::all(4).step_by(5) {
                    let gp = g.apply_permutation(&pi).unwrap();
                    let cp = c.apply_permutation(&pi).unwrap();
                    assert_eq!(decide_membership(&gp, &cp).unwrap().member, base);
                }
            }
        }
    }

    #[test]
    fn one_way_cuts_exclude_targets_of_balanced_generators() {
        let g = t(3, "101");
        for n in [3usize, 5] {
            let g = if n == 3 {
                g.clone()
            } else {
                Tournament::all_labeled(5).find(is_balanced).unwrap()
            };
            for c in Tournament::all_labeled(n) {
                // Any subset Y with no edge from its complement into it.
                let one_way = (1..(1u32 << n) - 1).any(|mask| {
                    let inside = |x: usize| mask >> x & 1 == 1;
                    c.edges().all(|(a, b)| !(!inside(a) && inside(b)))
                });
                if one_way {
                    assert!(!decide_membership(&g, &c).unwrap().member);
                }
            }
        }
    }
}
