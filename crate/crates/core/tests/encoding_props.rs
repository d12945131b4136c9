//! Word encodings, observations and the nilpotency decision.

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{random_observation, random_word};
use unialg::nilpotency::{
    accepts_in, build_graph, is_nilpotent_on_space, isometric_run, symbolic_nilpotent,
};
use unialg::observation::{validate_observation, ComputationSpace, Observation};
use unialg::symbol::reserved;
use unialg::word::{default_positions, encode_cycle, encode_word, nested_positions, shuffled_positions};
use unialg::{PositionTerms, Symbol, Term, TermVector, Word};

/// Splits `x . c . d . (t . y)` into `(c, d, t)`, checking that `x` and `y`
/// are distinct variables.
fn word_side(t: &Term) -> Option<(Symbol, Symbol, Term)> {
    let Term::Pair(x, rest) = t else { return None };
    let Term::Pair(c, rest) = &**rest else { return None };
    let Term::Pair(d, cell) = &**rest else { return None };
    let Term::Pair(pos, y) = &**cell else { return None };
    match (&**x, &**c, &**d, &**y) {
        (Term::Var(x), Term::Const(c), Term::Const(d), Term::Var(y)) if x != y && pos.is_closed() => {
            Some((*c, *d, (**pos).clone()))
        }
        _ => None,
    }
}

fn cells(w: &Word, pos: &PositionTerms) -> Vec<(Symbol, Term)> {
    (0..=w.len()).map(|p| (w.letter_at(p), pos.get(p).clone())).collect()
}

fn instance(seed: u64) -> (Observation, Word) {
    let mut rng = StdRng::seed_from_u64(seed);
    let obs = random_observation(&mut rng, 2);
    let word = random_word(&mut rng, &["0", "1"], 3);
    (obs, word)
}

fn position_choices(n: usize, seed: u64) -> [PositionTerms; 3] {
    [
        default_positions(n),
        nested_positions(n),
        shuffled_positions(n, &mut StdRng::seed_from_u64(seed)),
    ]
}

#[test]
fn word_flows_have_cell_shape() {
    let w = Word::from_names(&["0", "1"], &["0", "1", "1"]).unwrap();
    for pos in position_choices(3, 5) {
        let wiring = encode_word(&w, &pos).unwrap();
        assert_eq!(wiring.len(), 8);
        for (f, c) in wiring.iter() {
            assert!(c.is_one(), "{f} has coefficient {c}");
            let (cl, dl, tl) = word_side(f.lhs()).unwrap_or_else(|| panic!("lhs of {f}"));
            let (cr, dr, tr) = word_side(f.rhs()).unwrap_or_else(|| panic!("rhs of {f}"));
            assert!(w.alphabet().contains(&cl) && w.alphabet().contains(&cr));
            assert!(pos.index_of(&tl).is_some() && pos.index_of(&tr).is_some());
            assert_ne!(dl, dr);
            let (i, j) = (pos.index_of(&tl).unwrap(), pos.index_of(&tr).unwrap());
            let step = if dr == reserved::right() { 1 } else { 3 };
            assert_eq!(j, (i + 4 - step) % 4, "{f}");
            assert_eq!(cl, w.letter_at(i));
            assert_eq!(cr, w.letter_at(j));
        }
        assert!(wiring.is_isometric());
    }
}

#[test]
fn empty_word_is_a_self_loop() {
    let w = Word::from_names(&["0"], &[]).unwrap();
    let wiring = encode_word(&w, &default_positions(0)).unwrap();
    assert_eq!(wiring.len(), 2);
    assert_eq!(wiring.dagger(), wiring);
    assert!(encode_word(&w, &default_positions(1)).is_err());
}

#[test]
fn rotations_of_the_cycle_give_the_same_wiring_and_verdicts() {
    for seed in 0..60 {
        let (obs, w) = instance(seed);
        let n = w.len();
        for pos in position_choices(n, seed) {
            let base = cells(&w, &pos);
            let wrep = encode_word(&w, &pos).unwrap();
            let space = ComputationSpace::for_observation(&obs, &pos);
            let verdict = accepts_in(&obs, &wrep, &space).unwrap();
            for k in 0..=n {
                let mut rotated = base.clone();
                rotated.rotate_left(k);
                assert_eq!(encode_cycle(&rotated), wrep);
                let relabeled: Vec<Term> = (0..=n).map(|p| pos.get((p + k) % (n + 1)).clone()).collect();
                let relabeled = PositionTerms::new(relabeled).unwrap();
                let moved = encode_word(&w, &relabeled).unwrap();
                let space = ComputationSpace::for_observation(&obs, &relabeled);
                assert_eq!(accepts_in(&obs, &moved, &space).unwrap(), verdict, "seed {seed}, rotation {k}");
            }
        }
    }
}

#[test]
fn stability_and_isometric_support() {
    for seed in 100..160 {
        let (obs, w) = instance(seed);
        let pos = nested_positions(w.len());
        let product = obs.normalized().mul(&encode_word(&w, &pos).unwrap());
        let space = ComputationSpace::for_observation(&obs, &pos);
        for v in space.basis() {
            let image = product.apply(&TermVector::basis(v.clone()).unwrap());
            for t in image.support() {
                assert!(space.index_of(t).is_some(), "{t} left the space");
            }
            if obs.is_isometric() {
                assert!(image.len() <= 1);
            }
        }
    }
}

#[test]
fn powers_have_nonnegative_integer_coefficients() {
    for seed in 200..230 {
        let (obs, w) = instance(seed);
        let product = obs.normalized().mul(&encode_word(&w, &default_positions(w.len())).unwrap());
        let mut power = product.clone();
        for _ in 0..4 {
            for (f, c) in power.iter() {
                assert!(c.as_positive_integer().is_some(), "{f} has coefficient {c}");
            }
            power = power.mul(&product);
        }
    }
}

#[test]
fn validation_is_idempotent() {
    for seed in 300..400 {
        let (obs, _) = instance(seed);
        let again = validate_observation(obs.wiring(), &obs.alphabet()[1..]).unwrap();
        assert_eq!(again.wiring(), obs.wiring());
        assert_eq!(again.normalized(), obs.normalized());
        assert_eq!(again.alphabet(), obs.alphabet());
        assert_eq!(again.states(), obs.states());
        assert_eq!(again.arity(), obs.arity());
        assert_eq!(again.is_isometric(), obs.is_isometric());
        assert_eq!(again.rules(), obs.rules());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_is_independent_of_positions(seed in any::<u64>()) {
        let (obs, w) = instance(seed);
        let verdicts: Vec<bool> = position_choices(w.len(), seed)
            .iter()
            .map(|pos| {
                let space = ComputationSpace::for_observation(&obs, pos);
                accepts_in(&obs, &encode_word(&w, pos).unwrap(), &space).unwrap()
            })
            .collect();
        prop_assert!(verdicts.iter().all(|&v| v == verdicts[0]), "{:?}", verdicts);
    }

    #[test]
    fn graph_search_matches_powers_and_orbits(seed in any::<u64>()) {
        let (obs, w) = instance(seed);
        let pos = default_positions(w.len());
        let wrep = encode_word(&w, &pos).unwrap();
        let space = ComputationSpace::for_observation(&obs, &pos);
        let graph = build_graph(&obs, &wrep, &space).unwrap();
        let by_graph = is_nilpotent_on_space(&graph);
        let product = obs.normalized().mul(&wrep);
        prop_assert_eq!(symbolic_nilpotent(&product, space.len().max(1)), by_graph);
        if obs.is_isometric() {
            prop_assert!(graph.max_out_degree() <= 1);
            prop_assert_eq!(isometric_run(&obs, &wrep, &space).unwrap(), by_graph);
        }
        for i in 0..graph.len() {
            prop_assert!(graph.successors(i).iter().all(|&(_, k)| k >= 1));
        }
    }
}
