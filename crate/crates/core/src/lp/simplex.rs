//! Dense two-phase tableau simplex with Bland's rule, generic over the scalar.

use num_traits::Zero;

use super::scalar::Scalar;
use super::{LinearProgram, LpOutcome, Relation};
use crate::Rational;

// Marker for arithmetic leaving the scalar type's range.
pub(super) struct Overflow;

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    // Reduced costs of the current phase; the last entry is unused.
    costs: Vec<S>,
    basis: Vec<usize>,
    cols: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self, i: usize) -> &S {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, j: usize) -> std::result::Result<(), Overflow> {
        let p = self.rows[r][j].clone();
        if p != S::one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.div(&p).ok_or(Overflow)?;
                }
            }
        }
        let support: Vec<usize> = (0..=self.cols)
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<S>| -> std::result::Result<(), Overflow> {
            if row[j].is_zero() {
                return Ok(());
            }
            let f = row[j].clone();
            for &k in &support {
                let delta = f.mul(&pivot_row[k]).ok_or(Overflow)?;
                row[k] = row[k].sub(&delta).ok_or(Overflow)?;
            }
            Ok(())
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row)?;
            }
        }
        eliminate(&mut self.costs)?;
        self.rows[r] = pivot_row;
        self.basis[r] = j;
        Ok(())
    }

    /// Loads the reduced costs of `cost` against the current basis.
    fn price(&mut self, cost: &[S]) -> std::result::Result<(), Overflow> {
        let mut costs = cost.to_vec();
        costs.push(S::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (k, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    costs[k] = costs[k].sub(&cb.mul(a).ok_or(Overflow)?).ok_or(Overflow)?;
                }
            }
        }
        self.costs = costs;
        Ok(())
    }

    /// Maximizes the priced objective over the columns marked `allowed`.
    fn optimize(&mut self, allowed: &[bool]) -> std::result::Result<Phase, Overflow> {
        loop {
            // Bland: the smallest improving column enters.
            let Some(j) = (0..self.cols).find(|&j| allowed[j] && self.costs[j].is_positive())
            else {
                return Ok(Phase::Optimal);
            };
            // Minimum ratio; ties go to the smallest basic column.
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i).div(a).ok_or(Overflow)?;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j)?,
                None => return Ok(Phase::Unbounded),
            }
        }
    }
}

pub(super) fn solve_with<S: Scalar>(
    lp: &LinearProgram,
) -> std::result::Result<LpOutcome, Overflow> {
    let conv = |r: &Rational| S::from_rational(r).ok_or(Overflow);

    // Column layout: structural columns (free variables split in two),
    // then one slack/surplus per inequality, then artificials.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(lp.num_vars);
    let mut cols = 0;
    for &nonneg in &lp.nonnegative {
        if nonneg {
            var_cols.push((cols, None));
            cols += 1;
        } else {
            var_cols.push((cols, Some(cols + 1)));
            cols += 2;
        }
    }
    let structural = cols;

    let slack_count = lp
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let first_artificial = structural + slack_count;

    let mut rows = Vec::with_capacity(lp.constraints.len());
    let mut relations = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        // Normalize to a nonnegative right-hand side.
        let flip = c.rhs.is_negative();
        let relation = match (flip, c.relation) {
            (true, Relation::Le) => Relation::Ge,
            (true, Relation::Ge) => Relation::Le,
            (_, rel) => rel,
        };
        let mut row = vec![S::zero(); first_artificial + 1];
        for (v, a) in c.coeffs.iter().enumerate() {
            let a = conv(a)?;
            let a = if flip { a.neg() } else { a };
            let (pos, neg) = var_cols[v];
            if let Some(neg) = neg {
                row[neg] = a.neg();
            }
            row[pos] = a;
        }
        let rhs = conv(&c.rhs)?;
        row[first_artificial] = if flip { rhs.neg() } else { rhs };
        rows.push(row);
        relations.push(relation);
    }

    let artificial_count = relations.iter().filter(|&&r| r != Relation::Le).count();
    cols = first_artificial + artificial_count;
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (structural, first_artificial);
    for (row, relation) in rows.iter_mut().zip(&relations) {
        let rhs = row.pop().expect("rhs column");
        row.resize(cols, S::zero());
        match relation {
            Relation::Le => {
                row[next_slack] = S::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = S::one().neg();
                next_slack += 1;
                row[next_art] = S::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = S::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        row.push(rhs);
    }
    let mut tab = Tableau {
        rows,
        costs: Vec::new(),
        basis,
        cols,
    };

    if artificial_count > 0 {
        let cost: Vec<S> = (0..cols)
            .map(|j| {
                if j >= first_artificial {
                    S::one().neg()
                } else {
                    S::zero()
                }
            })
            .collect();
        tab.price(&cost)?;
        // Phase one is bounded above by zero.
        tab.optimize(&vec![true; cols])?;
        let infeasible = (0..tab.rows.len())
            .any(|i| tab.basis[i] >= first_artificial && tab.rhs(i).is_positive());
        if infeasible {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j)?,
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![S::zero(); cols];
    for (v, c) in lp.objective.iter().enumerate() {
        let c = conv(c)?;
        let (pos, neg) = var_cols[v];
        if let Some(neg) = neg {
            cost[neg] = c.neg();
        }
        cost[pos] = c;
    }
    tab.price(&cost)?;
    let allowed: Vec<bool> = (0..cols).map(|j| j < first_artificial).collect();
    if let Phase::Unbounded = tab.optimize(&allowed)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut column_values = vec![<Rational as Zero>::zero(); cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        column_values[b] = tab.rhs(i).to_rational();
    }
    let assignment: Vec<Rational> = var_cols
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(neg) => &column_values[pos] - &column_values[neg],
            None => column_values[pos].clone(),
        })
        .collect();
    debug_assert!(lp.is_satisfied_by(&assignment));
    Ok(LpOutcome::Optimal {
        value: lp.objective_value(&assignment),
        assignment,
    })
}
