//! Ground truth that shares no code path with the decision or synthesis:
//! vote counting, a direct LP over the whole relabeling orbit, and the
//! exhaustive harness comparing the two.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::characterize::decide_membership;
use crate::error::{Error, Result};
use crate::lp::{lp_solve, LinearProgram, LpOutcome, Relation};
use crate::synth::{synthesize, IntegerProfile};
use crate::tournament::{pair_count, pairs, Permutation, Tournament};
use crate::{half, Rational};

/// Default largest `n` accepted by [`oracle_membership`].
pub const ORACLE_LIMIT: usize = 6;

/// Strict pairwise majority by counting ballots. Pairs where exactly half
/// the voters choose each side are reported as [`Error::Tie`].
pub fn profile_majority(p: &IntegerProfile) -> Result<Tournament> {
    let n = p.n();
    let twice: Vec<BigUint> = pairs(n)
        .map(|(i, j)| {
            p.entries()
                .iter()
                .filter(|(_, c)| c.has_edge(i, j))
                .map(|(m, _)| m)
                .sum::<BigUint>()
                * 2u32
        })
        .collect();
    let total = p.total();
    let ties: Vec<_> = pairs(n)
        .zip(&twice)
        .filter(|(_, t)| *t == total)
        .map(|(pair, _)| pair)
        .collect();
    if !ties.is_empty() {
        return Err(Error::Tie(ties));
    }
    Tournament::new(n, twice.iter().map(|t| t > total).collect())
}

/// LP ground truth for membership of `c` in the majority closure of the
/// orbit of `d`, for `n` up to [`ORACLE_LIMIT`].
pub fn oracle_membership(d: &Tournament, c: &Tournament) -> Result<bool> {
    oracle_membership_with_limit(d, c, ORACLE_LIMIT)
}

pub fn oracle_membership_with_limit(d: &Tournament, c: &Tournament, limit: usize) -> Result<bool> {
    if d.n() != c.n() {
        return Err(Error::SizeMismatch {
            left: d.n(),
            right: c.n(),
        });
    }
    if d.n() > limit {
        return Err(Error::UnsupportedSize {
            n: d.n(),
            min: 3,
            max: limit,
        });
    }
    let orbit: Vec<Tournament> = d.sym_closure().into_iter().collect();
    Ok(orbit_lp_member(&orbit, c))
}

/// Maximizes the margin `eps` in: weights `r_e >= 0` on the orbit summing
/// to 1, and for every edge `u -> v` of `c` the mass choosing `v` at least
/// `1/2 + eps`. Member iff the optimum is strictly positive.
fn orbit_lp_member(orbit: &[Tournament], c: &Tournament) -> bool {
    let k = orbit.len();
    let eps = k;
    let mut objective = vec![Rational::zero(); k + 1];
    objective[eps] = Rational::one();
    let mut lp = LinearProgram::new(k + 1).maximize(objective);

    let mut total = vec![Rational::one(); k + 1];
    total[eps] = Rational::zero();
    lp.constrain(total, Relation::Eq, Rational::one());
    for (u, v) in c.edges() {
        let mut row: Vec<Rational> = orbit
            .iter()
            .map(|e| {
                if e.has_edge(u, v) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        row.push(-Rational::one());
        lp.constrain(row, Relation::Ge, half());
    }
    match lp_solve(&lp).expect("well-formed program") {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("margin is bounded by 1/2"),
    }
}

/// One canonical representative per isomorphism class, sorted by encoding.
pub fn enumerate_tournaments(n: usize) -> Result<Vec<Tournament>> {
    if !(3..=6).contains(&n) {
        return Err(Error::UnsupportedSize { n, min: 3, max: 6 });
    }
    let count = 1usize << pair_count(n);
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut seen = vec![false; count];
    let mut reps = BTreeSet::new();
    for index in 0..count {
        if seen[index] {
            continue;
        }
        let d = Tournament::from_index(n, index as u64)?;
        let mut best: Option<Tournament> = None;
        for pi in &perms {
            let image = d.relabel(pi.images());
            seen[image.index() as usize] = true;
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
        reps.insert(best.expect("nonempty orbit"));
    }
    Ok(reps.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub generator: Tournament,
    pub target: Tournament,
    pub theorem: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisFailure {
    pub generator: Tournament,
    pub target: Tournament,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeStats {
    pub min: BigUint,
    pub median: BigUint,
    pub max: BigUint,
}

/// Outcome of an exhaustive decision-vs-oracle comparison at one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub n: usize,
    pub generators: usize,
    pub pairs_checked: usize,
    pub members: usize,
    pub disagreements: Vec<Disagreement>,
    pub synthesis_failures: Vec<SynthesisFailure>,
    /// Voter totals of the synthesized profiles; reported, never asserted.
    pub profile_sizes: Option<SizeStats>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.synthesis_failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n                   {}", self.n)?;
        writeln!(f, "generators          {}", self.generators)?;
        writeln!(f, "pairs_checked       {}", self.pairs_checked)?;
        writeln!(f, "members             {}", self.members)?;
        writeln!(f, "disagreements       {}", self.disagreements.len())?;
        writeln!(f, "synthesis_failures  {}", self.synthesis_failures.len())?;
        if let Some(s) = &self.profile_sizes {
            writeln!(f, "profile_size_min    {}", s.min)?;
            writeln!(f, "profile_size_median {}", s.median)?;
            writeln!(f, "profile_size_max    {}", s.max)?;
        }
        for d in &self.disagreements {
            writeln!(
                f,
                "disagree generator={} target={} theorem={} oracle={}",
                d.generator, d.target, d.theorem, d.oracle
            )?;
        }
        for s in &self.synthesis_failures {
            writeln!(
                f,
                "synthesis generator={} target={} {}",
                s.generator, s.target, s.detail
            )?;
        }
        writeln!(
            f,
            "result              {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

struct PairOutcome {
    member: bool,
    disagreement: Option<Disagreement>,
    failure: Option<SynthesisFailure>,
    size: Option<BigUint>,
}

fn check_pair(generator: &Tournament, orbit: &[Tournament], target: &Tournament) -> PairOutcome {
    let theorem = decide_membership(generator, target)
        .expect("sizes agree")
        .member;
    let oracle = orbit_lp_member(orbit, target);
    let disagreement = (theorem != oracle).then(|| Disagreement {
        generator: generator.clone(),
        target: target.clone(),
        theorem,
        oracle,
    });
    let (mut failure, mut size) = (None, None);
    if theorem {
        let fail = |detail: String| SynthesisFailure {
            generator: generator.clone(),
            target: target.clone(),
            detail,
        };
        match synthesize(generator, target) {
            Ok(Some(profile)) => {
                size = Some(profile.total().clone());
                if let Some((_, stray)) = profile
                    .entries()
                    .iter()
                    .find(|(_, c)| orbit.binary_search(c).is_err())
                {
                    failure = Some(fail(format!("ballot {stray} outside the orbit")));
                } else {
                    match profile_majority(&profile) {
                        Ok(m) if m == *target => {}
                        Ok(m) => failure = Some(fail(format!("majority {m}"))),
                        Err(e) => failure = Some(fail(e.to_string())),
                    }
                }
            }
            Ok(None) => failure = Some(fail("no profile for a member".into())),
            Err(e) => failure = Some(fail(e.to_string())),
        }
    }
    PairOutcome {
        member: theorem,
        disagreement,
        failure,
        size,
    }
}

/// Runs [`cross_validate_with`] on a single worker.
pub fn cross_validate(n: usize) -> Result<ValidationReport> {
    cross_validate_with(n, 1)
}

/// For every isomorphism class of generators and every labeled target on
/// `n` candidates: compares the decision with the LP oracle and, for
/// members, checks the synthesized profile by counting.
pub fn cross_validate_with(n: usize, workers: usize) -> Result<ValidationReport> {
    if !(3..=5).contains(&n) {
        return Err(Error::UnsupportedSize { n, min: 3, max: 5 });
    }
    let generators = enumerate_tournaments(n)?;
    let targets: Vec<Tournament> = Tournament::all_labeled(n).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");

    let outcomes: Vec<PairOutcome> = pool.install(|| {
        generators
            .iter()
            .flat_map(|g| {
                let orbit: Vec<Tournament> = g.sym_closure().into_iter().collect();
                let outs: Vec<PairOutcome> = targets
                    .par_iter()
                    .map(|c| check_pair(g, &orbit, c))
                    .collect();
                outs
            })
            .collect()
    });

    let mut sizes: Vec<BigUint> = outcomes.iter().filter_map(|o| o.size.clone()).collect();
    sizes.sort();
    let profile_sizes = (!sizes.is_empty()).then(|| SizeStats {
        min: sizes[0].clone(),
        median: sizes[sizes.len() / 2].clone(),
        max: sizes[sizes.len() - 1].clone(),
    });
    Ok(ValidationReport {
        n,
        generators: generators.len(),
        pairs_checked: outcomes.len(),
        members: outcomes.iter().filter(|o| o.member).count(),
        disagreements: outcomes
            .iter()
            .filter_map(|o| o.disagreement.clone())
            .collect(),
        synthesis_failures: outcomes.into_iter().filter_map(|o| o.failure).collect(),
        profile_sizes,
    })
}
