use num_traits::{One, Zero};

use majcl::characterize::{is_balanced, is_pseudo_balanced};
use majcl::lp::find_f_witness;
use majcl::synth::{edge_bias_profile, rationalize, synthesize_balanced, synthesize_unbalanced};
use majcl::{half, profile_majority, synthesize, FractionalTable, Rational, Tournament};

fn t(n: usize, bits: &str) -> Tournament {
    Tournament::new(n, bits.chars().map(|c| c == '1').collect()).unwrap()
}

#[test]
fn edge_bias_reproduces_the_gadget_table() {
    for n in [3usize, 4, 5] {
        for d in Tournament::all_labeled(n)
            .step_by(37)
            .filter(|d| !is_balanced(d))
        {
            let w = find_f_witness(&d).unwrap();
            for (u, v) in [(0, 1), (n - 1, 0), (1, n - 1)] {
                let (profile, table) = edge_bias_profile(&d, u, v).unwrap();
                let a = if w.a > half() {
                    w.a.clone()
                } else {
                    Rational::one() - &w.a
                };
                assert_eq!(
                    table,
                    FractionalTable::gadget(n, u, v, a, half(), half()).unwrap()
                );
                assert_eq!(profile.table(), table);
                let orbit = d.sym_closure();
                assert!(profile.entries().iter().all(|(_, e)| orbit.contains(e)));
            }
        }
    }
}

#[test]
fn unbalanced_pipeline_reaches_every_target_on_four() {
    let d = t(4, "110100");
    assert!(!is_balanced(&d));
    for c in Tournament::all_labeled(4) {
        let weighted = synthesize_unbalanced(&d, &c).unwrap();
        let table = weighted.table();
        assert_eq!(table.maj().unwrap(), c);
        for (u, v) in c.edges() {
            assert!(table.get(u, v) > &half());
        }
        assert_eq!(profile_majority(&rationalize(&weighted)).unwrap(), c);
    }
}

#[test]
fn linear_order_voters_produce_every_majority() {
    let max_wins = t(3, "111");
    for c in Tournament::all_labeled(3) {
        let p = synthesize(&max_wins, &c).unwrap().unwrap();
        assert_eq!(profile_majority(&p).unwrap(), c);
    }
}

#[test]
fn balanced_pipeline_on_five_candidates() {
    let generators: Vec<_> = Tournament::all_labeled(5).filter(is_balanced).collect();
    let targets: Vec<_> = Tournament::all_labeled(5)
        .filter(is_pseudo_balanced)
        .collect();
    assert_eq!(generators.len(), 24);
    for d in &generators {
        let orbit = d.sym_closure();
        for c in &targets {
            let weighted = synthesize_balanced(d, c).unwrap();
            let table = weighted.table();
            assert!(table.is_balanced());
            assert_eq!(table.maj().unwrap(), *c);
            assert!(weighted
                .entries()
                .iter()
                .all(|(w, e)| !w.is_zero() && orbit.contains(e)));
        }
    }
}

#[test]
fn rotational_tournament_realizes_pseudo_balanced_targets() {
    // i -> j iff j - i is 1 or 2 mod 5: every vertex has valency 2.
    let qr = Tournament::from_fn(5, |i, j| matches!(j - i, 1 | 2)).unwrap();
    assert!(is_balanced(&qr));
    let c = t(5, "1001101110");
    assert!(is_pseudo_balanced(&c));
    let p = synthesize(&qr, &c).unwrap().unwrap();
    assert_eq!(profile_majority(&p).unwrap(), c);
}

#[test]
fn synthesized_profiles_are_deterministic() {
    let d = t(5, "1101001011");
    let c = t(5, "0110100111");
    let a = synthesize(&d, &c).unwrap();
    let b = synthesize(&d, &c).unwrap();
    assert_eq!(a, b);
}
