mod common;

use common::*;
use rand::Rng;
use sfvs_core::graph::{self, is_s_forest, neighborhood};
use sfvs_core::oracle::oracle_solve;
use sfvs_core::sfvs::{
    enumerate_s1_candidates, enumerate_valid_tuples, solve_case_a1, solve_sfvs_xp, solve_wsfvs_alpha3,
    solve_wsfvs_alpha3_with, Alpha3Options, CandidateBound,
};
use sfvs_core::{Error, Graph, ProblemInstance, ProblemKind, VertexSet};

#[test]
fn weighted_solver_matches_brute_force() {
    let mut rng = rng(41);
    for _ in 0..250 {
        let n = rng.gen_range(1..=8);
        let d = rng.gen_range(1..=3);
        let g = bounded_graph(&mut rng, n, d, 5);
        let frac = rng.gen_range(0.0..=1.0);
        let s = random_subset(&mut rng, n, frac);
        let sol = solve_wsfvs_alpha3(&g, &s).unwrap();
        let inst = ProblemInstance::new(g.clone(), s.clone(), ProblemKind::Wsfvs, None).unwrap();
        assert_eq!(Some(sol.objective), brute_optimum(&inst));
        assert!(naive_is_s_forest(&g, &sol.kept(&g), &s));
        assert_eq!(sol.objective, g.weight_of(&sol.removed));
    }
}

#[test]
fn wide_bound_agrees_with_tight_bound() {
    let mut rng = rng(42);
    let wide = Alpha3Options {
        bound: CandidateBound::Wide,
    };
    for _ in 0..150 {
        let n = rng.gen_range(1..=9);
        let d = rng.gen_range(1..=3);
        let g = bounded_graph(&mut rng, n, d, 5);
        let s = random_subset(&mut rng, n, 0.5);
        assert_eq!(solve_wsfvs_alpha3(&g, &s).unwrap(), solve_wsfvs_alpha3_with(&g, &s, &wide).unwrap());
    }
}

#[test]
fn xp_solver_matches_brute_force() {
    let mut rng = rng(43);
    for d in 1..=3 {
        for _ in 0..120 {
            let n = rng.gen_range(1..=9);
            let g = bounded_graph(&mut rng, n, d, 1);
            let frac = rng.gen_range(0.0..=1.0);
            let s = random_subset(&mut rng, n, frac);
            let sol = solve_sfvs_xp(&g, &s, d).unwrap();
            let inst = ProblemInstance::new(g.clone(), s.clone(), ProblemKind::Sfvs, None).unwrap();
            assert_eq!(Some(sol.objective), brute_optimum(&inst));
            assert!(naive_is_s_forest(&g, &sol.kept(&g), &s));
        }
    }
}

#[test]
fn optimal_near_part_is_a_candidate() {
    let mut rng = rng(44);
    for _ in 0..300 {
        let n = rng.gen_range(1..=9);
        let d = rng.gen_range(1..=3);
        let g = bounded_graph(&mut rng, n, d, 4);
        let s = random_subset(&mut rng, n, 0.5);
        let inst = ProblemInstance::new(g.clone(), s.clone(), ProblemKind::Wsfvs, None).unwrap();
        let forest = oracle_solve(&inst).unwrap().kept(&g);
        let kept_s = forest.intersection(&s);
        if kept_s.is_empty() {
            continue;
        }
        let near = neighborhood(&g, &kept_s, true).intersection(&forest);
        let cap = CandidateBound::Tight.cap(3, kept_s.len());
        assert!(near.len() <= cap, "|{near}| exceeds {cap}");
        let candidates = enumerate_s1_candidates(&g, &s, 3, CandidateBound::Tight);
        assert!(candidates.contains(&near), "{near} missing from the candidates");
        let far = forest.difference(&near);
        // each far component attaches to the near part through some valid tuple part
        let comps: Vec<VertexSet> = far
            .iter()
            .map(|v| {
                let mut comp = VertexSet::from([v]);
                loop {
                    let grown = neighborhood(&g, &comp, true).intersection(&far);
                    if grown == comp {
                        break comp;
                    }
                    comp = grown;
                }
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert!(comps.len() <= 2, "{} far components", comps.len());
        let tuples = enumerate_valid_tuples(&g, &near, &s, 2);
        let attach: Vec<VertexSet> = comps.iter().map(|c| neighborhood(&g, c, false).intersection(&near)).collect();
        assert!(tuples
            .iter()
            .any(|t| t.parts.len() == attach.len() && t.parts.iter().zip(&attach).all(|(a, b)| b.is_subset(a))
                || t.parts.len() == 2 && attach.len() == 2 && attach[0].is_subset(&t.parts[1]) && attach[1].is_subset(&t.parts[0])));
    }
}

#[test]
fn single_component_completion_is_an_s_forest() {
    let mut rng = rng(45);
    for _ in 0..100 {
        let n = rng.gen_range(1..=9);
        let g = bounded_graph(&mut rng, n, 3, 3);
        let s = random_subset(&mut rng, n, 0.4);
        for x in enumerate_s1_candidates(&g, &s, 3, CandidateBound::Tight).into_iter().take(20) {
            for t in enumerate_valid_tuples(&g, &x, &s, 1) {
                if let [a1] = t.parts.as_slice() {
                    let part = solve_case_a1(&g, &s, &x, a1);
                    assert!(is_s_forest(&g, &part.vertices(), &s));
                    for c in &part.far_components {
                        assert!(c.is_disjoint(&x) && c.is_disjoint(&s));
                        assert!(neighborhood(&g, c, false).intersection(&x).is_subset(a1));
                    }
                }
            }
        }
    }
}

#[test]
fn solvers_agree_on_unit_weights() {
    let mut rng = rng(46);
    for _ in 0..150 {
        let n = rng.gen_range(1..=10);
        let d = rng.gen_range(1..=3);
        let g = bounded_graph(&mut rng, n, d, 1);
        let s = random_subset(&mut rng, n, 0.5);
        assert_eq!(
            solve_wsfvs_alpha3(&g, &s).unwrap().objective,
            solve_sfvs_xp(&g, &s, 3).unwrap().objective
        );
    }
}

#[test]
fn preconditions_are_enforced() {
    let e4 = Graph::empty(4);
    match solve_wsfvs_alpha3(&e4, &VertexSet::new()) {
        Err(Error::IndependenceBound { bound: 3, witness }) => assert_eq!(witness, e4.vertex_set()),
        other => panic!("{other:?}"),
    }
    let heavy = Graph::with_weights(2, [(1, 2)], &[1, 2]).unwrap();
    assert_eq!(solve_sfvs_xp(&heavy, &VertexSet::from([1]), 2), Err(Error::NonUnitWeights));
    assert!(matches!(solve_sfvs_xp(&Graph::empty(3), &VertexSet::new(), 2), Err(Error::IndependenceBound { .. })));
    assert!(graph::independence_at_most(&Graph::complete(4), 1));
}
