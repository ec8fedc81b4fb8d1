use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use majcl::characterize::{decide_membership, is_balanced};
use majcl::lp::{lp_solve, LinearProgram, LpOutcome, Relation};
use majcl::oracle::oracle_membership;
use majcl::synth::rationalize;
use majcl::tournament::pair_count;
use majcl::{
    hull_membership_2d, profile_majority, rat, FractionalTable, Permutation, PointSet2D, Rational,
    Tournament, WeightedProfile,
};

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), pair_count(n))
            .prop_map(move |bits| Tournament::new(n, bits).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn tournament_and_perms(
    max_n: usize,
) -> impl Strategy<Value = (Tournament, Permutation, Permutation)> {
    tournament(max_n).prop_flat_map(|d| {
        let n = d.n();
        (Just(d), permutation(n), permutation(n))
    })
}

proptest! {
    #[test]
    fn valencies_sum_to_pair_count(d in tournament(8)) {
        let n = d.n();
        prop_assert_eq!(d.valencies().iter().sum::<usize>(), pair_count(n));
        let dual = d.dual();
        for x in 0..n {
            prop_assert_eq!(dual.valency(x).unwrap(), n - 1 - d.valency(x).unwrap());
        }
        prop_assert_eq!(dual.dual(), d);
    }

    #[test]
    fn relabeling_composes((d, pi, sigma) in tournament_and_perms(7)) {
        let stepwise = d.apply_permutation(&sigma).unwrap().apply_permutation(&pi).unwrap();
        prop_assert_eq!(stepwise, d.apply_permutation(&pi.compose(&sigma)).unwrap());
        let back = d.apply_permutation(&pi).unwrap().apply_permutation(&pi.inverse()).unwrap();
        prop_assert_eq!(back, d.clone());

        let mut a = d.valencies();
        let mut b = d.apply_permutation(&pi).unwrap().valencies();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(
            d.apply_permutation(&pi).unwrap().canonical_form(),
            d.canonical_form()
        );
    }

    #[test]
    fn v_points_mirror_each_other(d in tournament(7)) {
        prop_assert_eq!(d.v_points(0), d.v_points(1).transposed());
        let n = d.n() as i64;
        for ell in [0, 1] {
            for &(a, b) in d.v_star_points(ell).iter() {
                prop_assert!((-1..n).contains(&a) && (-1..n).contains(&b));
            }
        }
    }

    #[test]
    fn indicator_tables_round_trip(d in tournament(7)) {
        let t = FractionalTable::indicator(&d);
        prop_assert_eq!(t.maj().unwrap(), d.clone());
        prop_assert_eq!(t.dual(), FractionalTable::indicator(&d.dual()));
        for x in 0..d.n() {
            prop_assert_eq!(t.row_sum(x), rat(d.valency(x).unwrap() as i64, 1));
        }
    }

    #[test]
    fn balanced_tables_stay_balanced(
        n in 3usize..8,
        picks in proptest::collection::vec((0usize..8, 0usize..8, 0usize..8, 1i64..5), 1..5),
    ) {
        let mut parts = Vec::new();
        let total: i64 = picks.iter().map(|p| p.3).sum();
        for (x, y, z, w) in picks {
            let (x, y, z) = (x % n, y % n, z % n);
            let table = if x != y && y != z && x != z {
                FractionalTable::triangle(n, x, y, z).unwrap()
            } else {
                FractionalTable::all_half(n)
            };
            prop_assert!(table.is_balanced());
            parts.push((rat(w, total), table));
        }
        let mix = FractionalTable::convex_combine(&parts).unwrap();
        prop_assert!(mix.is_balanced());
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                prop_assert_eq!(mix.get(x, y) + mix.get(y, x), Rational::one());
            }
        }
    }

    #[test]
    fn counting_agrees_with_rounding(
        d in tournament(5),
        weights in proptest::collection::vec(1i64..6, 1..6),
        seed in any::<u64>(),
    ) {
        let n = d.n();
        let total: i64 = weights.iter().sum();
        let orbit: Vec<Tournament> = d.sym_closure().into_iter().collect();
        let entries = weights.iter().enumerate().map(|(k, &w)| {
            let pick = (seed as usize).wrapping_add(k * 7919) % orbit.len();
            (rat(w, total), orbit[pick].clone())
        });
        let weighted = WeightedProfile::new(entries).unwrap();
        let counted = rationalize(&weighted);
        prop_assert_eq!(counted.n(), n);
        match weighted.table().maj() {
            Ok(m) => prop_assert_eq!(profile_majority(&counted).unwrap(), m),
            Err(tie) => prop_assert_eq!(profile_majority(&counted), Err(tie)),
        }
    }
}

/// Is `target` in the convex hull of `points`? Decided by Carathéodory in
/// the plane: some point, segment or triangle of the set contains it.
fn hull_contains_brute(points: &[(i64, i64)], target: (&Rational, &Rational)) -> bool {
    let (tx, ty) = target;
    let p = |q: (i64, i64)| (rat(q.0, 1), rat(q.1, 1));
    let cross = |a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)| {
        (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
    };
    let t = (tx.clone(), ty.clone());
    let on_segment = |a: &(Rational, Rational), b: &(Rational, Rational)| {
        cross(a, b, &t).is_zero()
            && (&t.0 - &a.0) * (&t.0 - &b.0) <= Rational::zero()
            && (&t.1 - &a.1) * (&t.1 - &b.1) <= Rational::zero()
    };
    let pts: Vec<_> = points.iter().map(|&q| p(q)).collect();
    for i in 0..pts.len() {
        if pts[i] == t {
            return true;
        }
        for j in i + 1..pts.len() {
            if on_segment(&pts[i], &pts[j]) {
                return true;
            }
            for k in j + 1..pts.len() {
                let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
                let s = [cross(a, b, &t), cross(b, c, &t), cross(c, a, &t)];
                let nonneg = s.iter().all(|v| !v.is_negative());
                let nonpos = s.iter().all(|v| !v.is_positive());
                if !cross(a, b, c).is_zero() && (nonneg || nonpos) {
                    return true;
                }
            }
        }
    }
    false
}

proptest! {
    #[test]
    fn hull_membership_matches_triangulation(
        raw in proptest::collection::btree_set((-1i64..4, -1i64..4), 1..=6),
        tx in -2i64..9, ty in -2i64..9,
    ) {
        let points: PointSet2D = raw.iter().copied().collect();
        let (tx, ty) = (rat(tx, 2), rat(ty, 2));
        let found = hull_membership_2d(&points, (&tx, &ty)).unwrap();
        let pts: Vec<_> = raw.into_iter().collect();
        prop_assert_eq!(found.is_some(), hull_contains_brute(&pts, (&tx, &ty)));
        if let Some(weights) = found {
            let total: Rational = weights.values().sum();
            prop_assert!(total.is_one());
            prop_assert!(weights.values().all(|w| !w.is_negative()));
            let sx: Rational = weights.iter().map(|(p, w)| w * rat(p.0, 1)).sum();
            let sy: Rational = weights.iter().map(|(p, w)| w * rat(p.1, 1)).sum();
            prop_assert_eq!((sx, sy), (tx, ty));
        }
    }
}

/// Optimum of a two-variable LP with `x, y in [0, 10]` by enumerating the
/// vertices of the feasible polygon.
fn vertex_optimum(c: (i64, i64), rows: &[(i64, i64, i64)]) -> Option<Rational> {
    let mut lines: Vec<(Rational, Rational, Rational)> = rows
        .iter()
        .map(|&(a, b, r)| (rat(a, 1), rat(b, 1), rat(r, 1)))
        .collect();
    for (a, b, r) in [(1, 0, 0), (0, 1, 0), (1, 0, 10), (0, 1, 10)] {
        lines.push((rat(a, 1), rat(b, 1), rat(r, 1)));
    }
    let feasible = |x: &Rational, y: &Rational| {
        !x.is_negative()
            && !y.is_negative()
            && *x <= rat(10, 1)
            && *y <= rat(10, 1)
            && rows
                .iter()
                .all(|&(a, b, r)| rat(a, 1) * x + rat(b, 1) * y <= rat(r, 1))
    };
    let mut best: Option<Rational> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, b1, r1) = &lines[i];
            let (a2, b2, r2) = &lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let x = (r1 * b2 - r2 * b1) / &det;
            let y = (a1 * r2 - a2 * r1) / &det;
            if feasible(&x, &y) {
                let v = rat(c.0, 1) * &x + rat(c.1, 1) * &y;
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

proptest! {
    #[test]
    fn simplex_matches_vertex_enumeration(
        c in (-5i64..6, -5i64..6),
        rows in proptest::collection::vec((-4i64..5, -4i64..5, -6i64..15), 0..5),
    ) {
        let mut lp = LinearProgram::new(2).maximize(vec![rat(c.0, 1), rat(c.1, 1)]);
        for &(a, b, r) in &rows {
            lp.constrain(vec![rat(a, 1), rat(b, 1)], Relation::Le, rat(r, 1));
        }
        lp.constrain(vec![rat(1, 1), rat(0, 1)], Relation::Le, rat(10, 1));
        lp.constrain(vec![rat(0, 1), rat(1, 1)], Relation::Le, rat(10, 1));
        match (lp_solve(&lp).unwrap(), vertex_optimum(c, &rows)) {
            (LpOutcome::Optimal { value, assignment }, Some(best)) => {
                prop_assert!(lp.is_satisfied_by(&assignment));
                prop_assert_eq!(value, best);
            }
            (LpOutcome::Infeasible, None) => {}
            (got, want) => prop_assert!(false, "solver {:?} vs vertices {:?}", got, want),
        }
    }
}

#[test]
fn sym_closure_is_closed_and_divides_factorial() {
    for n in [3usize, 4, 5] {
        let fact: usize = (1..=n).product();
        for d in Tournament::all_labeled(n).step_by(3) {
            let orbit = d.sym_closure();
            assert!(orbit.contains(&d));
            assert_eq!(fact % orbit.len(), 0);
            for pi in Permutation::all(n).step_by(5) {
                for e in orbit.iter().take(4) {
                    assert!(orbit.contains(&e.apply_permutation(&pi).unwrap()));
                }
            }
        }
    }
}

#[test]
fn canonical_classes_match_orbit_partition() {
    // Orbits partition the labeled tournaments; their count equals the
    // number of distinct canonical forms.
    for n in [3usize, 4, 5] {
        let mut remaining: BTreeSet<Tournament> = Tournament::all_labeled(n).collect();
        let mut orbits = 0;
        while let Some(d) = remaining.iter().next().cloned() {
            for e in d.sym_closure() {
                remaining.remove(&e);
            }
            orbits += 1;
        }
        let forms: BTreeSet<_> = Tournament::all_labeled(n)
            .map(|d| d.canonical_form())
            .collect();
        assert_eq!(forms.len(), orbits);
    }
}

#[test]
fn oracle_is_relabeling_invariant() {
    let pi = Permutation::new(vec![2, 0, 3, 1]).unwrap();
    for d in majcl::oracle::enumerate_tournaments(4).unwrap() {
        for c in Tournament::all_labeled(4).step_by(9) {
            let base = oracle_membership(&d, &c).unwrap();
            let moved = oracle_membership(
                &d.apply_permutation(&pi).unwrap(),
                &c.apply_permutation(&pi).unwrap(),
            )
            .unwrap();
            assert_eq!(base, moved);
        }
    }
}

#[test]
fn even_sizes_are_never_balanced() {
    for n in [4usize, 6] {
        for d in Tournament::all_labeled(n).step_by(97) {
            assert!(!is_balanced(&d));
            let c = Tournament::all_labeled(n)
                .nth(d.index() as usize % 17)
                .unwrap();
            assert!(decide_membership(&d, &c).unwrap().member);
        }
    }
}
