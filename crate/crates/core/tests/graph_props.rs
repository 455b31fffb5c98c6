#![allow(clippy::needless_range_loop)]

use gkm::exactalg::DirectionVector;
use gkm::gkmgraph::{load_graph, GkmGraph};
use gkm::morse::{morse_data, sign_pattern};
use gkm::spaces::random::random_valid_graphs;
use gkm::spaces::SpaceSpec;
use proptest::prelude::*;

fn corpus() -> Vec<(GkmGraph, DirectionVector)> {
    let mut v: Vec<_> = SpaceSpec::builtin_catalog().iter().map(SpaceSpec::build).collect();
    v.extend(random_valid_graphs(11, 15).into_iter().map(|r| (r.graph, r.xi)));
    v
}

#[test]
fn json_round_trip_is_exact() {
    for (g, _) in corpus() {
        let text = g.to_json_string();
        let back = load_graph(&text).unwrap();
        assert_eq!(back.to_json_string(), text);
    }
}

#[test]
fn reversal_is_an_involution_up_to_isomorphism() {
    for (g, _) in corpus() {
        let r = g.reversed();
        assert!(r.validate().is_valid());
        assert_eq!(r.to_json_string(), g.to_json_string());
        assert_eq!(r.reversed().to_json_string(), g.to_json_string());
    }
}

#[test]
fn stable_and_unstable_sets_are_dual() {
    for (g, xi) in corpus() {
        let n = g.vertex_count();
        let stable: Vec<_> = (0..n).map(|p| g.stable_set(&xi, p).unwrap()).collect();
        let unstable: Vec<_> = (0..n).map(|p| g.unstable_set(&xi, p).unwrap()).collect();
        for p in 0..n {
            assert!(stable[p].contains(&p) && unstable[p].contains(&p));
            for q in 0..n {
                assert_eq!(stable[p].contains(&q), unstable[q].contains(&p));
            }
        }
    }
}

#[test]
fn opposite_direction_complements_the_index() {
    for (g, xi) in corpus() {
        let d = g.regular_valence().unwrap();
        let up = morse_data(&g, &xi).unwrap();
        let down = morse_data(&g, &xi.neg()).unwrap();
        for v in 0..g.vertex_count() {
            assert_eq!(up.lambda[v] + down.lambda[v], d);
            assert_eq!(up.lambda_minus[v], down.lambda_plus[v]);
        }
    }
}

#[test]
fn builtins_are_valid_and_regular() {
    for spec in SpaceSpec::builtin_catalog() {
        let (g, _) = spec.build();
        assert!(g.validate().is_valid(), "{spec}");
        assert!(g.regular_valence().is_some(), "{spec}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn morse_data_depends_only_on_signs(which in 0usize..9, c in prop::collection::vec(-12i64..=12, 2..=4)) {
        let spec = SpaceSpec::builtin_catalog()[which];
        let (g, xi) = spec.build();
        prop_assume!(c.len() == g.dim());
        let other = DirectionVector::from_ints(&c);
        prop_assume!(other.is_ok());
        let other = other.unwrap();
        prop_assume!(sign_pattern(&g, &other) == sign_pattern(&g, &xi));
        let a = morse_data(&g, &xi).unwrap();
        let b = morse_data(&g, &other).unwrap();
        prop_assert_eq!(a.lambda, b.lambda);
        prop_assert_eq!(a.lambda_minus, b.lambda_minus);
        prop_assert_eq!(a.lambda_plus, b.lambda_plus);
    }

    #[test]
    fn random_graphs_validate(seed in any::<u64>()) {
        for r in random_valid_graphs(seed, 2) {
            prop_assert!(r.graph.validate().is_valid(), "{}", r.description);
            let (ok, _) = gkm::morse::is_index_increasing(&r.graph, &r.xi).unwrap();
            prop_assert!(ok);
        }
    }
}
