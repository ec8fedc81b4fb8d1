//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex with Bland's rule. Problems here are
//! tiny (at most a few hundred columns), so clarity beats sparsity. The
//! tableau first runs on `i64` rationals and restarts on big rationals if
//! any intermediate value leaves that range.

mod scalar;
mod simplex;

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::characterize::is_balanced;
use crate::error::{Error, Result};
use crate::tournament::{PointSet2D, Tournament};
use crate::{half, rat, Rational};

use self::scalar::SmallRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Maximize `objective . x` subject to the constraints. Variables are
/// nonnegative unless marked free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub nonnegative: Vec<bool>,
}

impl LinearProgram {
    /// A program over `num_vars` nonnegative variables with a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            nonnegative: vec![true; num_vars],
        }
    }

    pub fn maximize(mut self, objective: Vec<Rational>) -> Self {
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_free(&mut self, var: usize) {
        self.nonnegative[var] = false;
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::MalformedProgram(what.to_string()));
        if self.objective.len() != self.num_vars {
            return bad("objective length differs from variable count");
        }
        if self.nonnegative.len() != self.num_vars {
            return bad("nonnegativity flags differ from variable count");
        }
        if self
            .constraints
            .iter()
            .any(|c| c.coeffs.len() != self.num_vars)
        {
            return bad("constraint length differs from variable count");
        }
        Ok(())
    }

    /// Checks `x` against every constraint and sign restriction exactly.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let signs_ok = x
            .iter()
            .zip(&self.nonnegative)
            .all(|(v, &nonneg)| !nonneg || !v.is_negative());
        signs_ok
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        assignment: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<(&Rational, &[Rational])> {
        match self {
            LpOutcome::Optimal { value, assignment } => Some((value, assignment)),
            _ => None,
        }
    }
}

/// Solves `lp` exactly.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    if let Ok(outcome) = simplex::solve_with::<SmallRational>(lp) {
        return Ok(outcome);
    }
    Ok(simplex::solve_with::<Rational>(lp)
        .unwrap_or_else(|_| unreachable!("big rationals never overflow")))
}

/// Convex weights on `points` whose weighted sum is `target`, or `None`
/// when the target lies outside the hull.
pub fn hull_membership_2d(
    points: &PointSet2D,
    target: (&Rational, &Rational),
) -> Result<Option<BTreeMap<(i64, i64), Rational>>> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let pts: Vec<(i64, i64)> = points.iter().copied().collect();
    let mut lp = LinearProgram::new(pts.len());
    lp.constrain(
        vec![Rational::one(); pts.len()],
        Relation::Eq,
        Rational::one(),
    );
    lp.constrain(
        pts.iter().map(|p| rat(p.0, 1)).collect(),
        Relation::Eq,
        target.0.clone(),
    );
    lp.constrain(
        pts.iter().map(|p| rat(p.1, 1)).collect(),
        Relation::Eq,
        target.1.clone(),
    );
    Ok(lp_solve(&lp)?
        .optimal()
        .map(|(_, w)| pts.into_iter().zip(w.iter().cloned()).collect()))
}

/// A convex decomposition of the point `(n/2 - 1, n/2 - 1)` over the
/// shifted valency points `V*_0(d) ∪ V*_1(d)` whose `V*_1` mass `a`
/// differs from one half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FWitness {
    pub a: Rational,
    /// Keyed by `(ell, point)`; nonnegative, summing to 1.
    pub weights: BTreeMap<(u8, (i64, i64)), Rational>,
}

impl FWitness {
    /// Total weight on the points of `V*_ell`.
    pub fn mass(&self, ell: u8) -> Rational {
        self.weights
            .iter()
            .filter(|((l, _), _)| *l == ell)
            .map(|(_, w)| w)
            .sum()
    }

    /// Weighted centroid of the `V*_ell` part, if it carries any mass.
    pub fn centroid(&self, ell: u8) -> Option<(Rational, Rational)> {
        let mass = self.mass(ell);
        if mass.is_zero() {
            return None;
        }
        let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
        for ((l, (k0, k1)), w) in &self.weights {
            if *l == ell {
                sx += w * rat(*k0, 1);
                sy += w * rat(*k1, 1);
            }
        }
        Some((sx / &mass, sy / mass))
    }

    /// Re-derives every witness condition from `d` directly.
    pub fn verify(&self, d: &Tournament) -> bool {
        let n = d.n() as i64;
        let target = rat(n - 2, 2);
        let (mut total, mut sx, mut sy) = (Rational::zero(), Rational::zero(), Rational::zero());
        for ((ell, (k0, k1)), w) in &self.weights {
            if *ell > 1 || w.is_negative() {
                return false;
            }
            // Unshift and check against the raw valency pairs.
            let (v0, v1) = (k0 + *ell as i64, k1 + 1 - *ell as i64);
            if !d.v_points(*ell).contains(v0, v1) {
                return false;
            }
            total += w;
            sx += w * rat(*k0, 1);
            sy += w * rat(*k1, 1);
        }
        total.is_one() && sx == target && sy == target && self.a == self.mass(1) && self.a != half()
    }
}

/// Searches for a [`FWitness`] by maximizing, then minimizing, the `V*_1`
/// mass. Returns `None` exactly when both extremes equal one half.
pub fn find_f_witness(d: &Tournament) -> Option<FWitness> {
    let n = d.n() as i64;
    let target = rat(n - 2, 2);
    let vars: Vec<(u8, (i64, i64))> = [0u8, 1]
        .into_iter()
        .flat_map(|ell| {
            d.v_star_points(ell)
                .iter()
                .map(move |&p| (ell, p))
                .collect::<Vec<_>>()
        })
        .collect();

    let mut lp = LinearProgram::new(vars.len());
    lp.constrain(
        vec![Rational::one(); vars.len()],
        Relation::Eq,
        Rational::one(),
    );
    lp.constrain(
        vars.iter().map(|(_, p)| rat(p.0, 1)).collect(),
        Relation::Eq,
        target.clone(),
    );
    lp.constrain(
        vars.iter().map(|(_, p)| rat(p.1, 1)).collect(),
        Relation::Eq,
        target,
    );
    let on_v1: Vec<Rational> = vars
        .iter()
        .map(|(ell, _)| {
            if *ell == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();

    for sign in [1i64, -1] {
        let objective = on_v1.iter().map(|c| c * rat(sign, 1)).collect();
        let program = lp.clone().maximize(objective);
        let outcome = lp_solve(&program).expect("well-formed program");
        let Some((_, assignment)) = outcome.optimal() else {
            continue;
        };
        let a: Rational = assignment.iter().zip(&on_v1).map(|(w, c)| w * c).sum();
        if a != half() {
            let weights = vars
                .iter()
                .cloned()
                .zip(assignment.iter().cloned())
                .collect();
            let witness = FWitness { a, weights };
            debug_assert!(witness.verify(d));
            return Some(witness);
        }
    }
    debug_assert!(
        is_balanced(d),
        "non-balanced generators always admit a witness"
    );
    None
}
