//! Generators shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use unialg::coefficient::{Coefficient, Rational};
use unialg::machine::{PointerMachine, Rule};
use unialg::observation::{validate_observation, Control, Observation, ObservationRule};
use unialg::{Direction, Flow, Permutation, Symbol, Term, Wiring, Word};

pub fn sym(s: &str) -> Symbol {
    Symbol::intern(s)
}

/// Every rule over `states`, letters `star` and `0`, both directions and
/// all of `S_n`.
pub fn all_rules(pointers: usize, states: &[Symbol]) -> Vec<Rule> {
    let letters = [sym("star"), sym("0")];
    let perms = Permutation::all(pointers);
    let mut triggers = Vec::new();
    for &s in states {
        for &c in &letters {
            for d in Direction::ALL {
                triggers.push((s, c, d));
            }
        }
    }
    let mut rules = Vec::new();
    for &(state, letter, direction) in &triggers {
        for &(next_state, next_letter, next_direction) in &triggers {
            for perm in &perms {
                rules.push(Rule {
                    state,
                    letter,
                    direction,
                    next_state,
                    next_letter,
                    next_direction,
                    perm: perm.clone(),
                });
            }
        }
    }
    rules
}

/// Calls `f` on every machine with the given pointer and state counts over
/// the alphabet `{star, 0}` having at most `max_rules` rules.
pub fn for_each_machine(pointers: usize, state_count: usize, max_rules: usize, mut f: impl FnMut(&PointerMachine)) {
    let states: Vec<Symbol> = (0..state_count).map(|i| sym(&format!("s{i}"))).collect();
    let rules = all_rules(pointers, &states);
    let alphabet = [sym("0")];
    let mut chosen = Vec::with_capacity(max_rules);
    fn go(
        start: usize,
        rules: &[Rule],
        max: usize,
        chosen: &mut Vec<Rule>,
        build: &mut dyn FnMut(&[Rule]),
    ) {
        build(chosen);
        if chosen.len() == max {
            return;
        }
        for i in start..rules.len() {
            chosen.push(rules[i].clone());
            go(i + 1, rules, max, chosen, build);
            chosen.pop();
        }
    }
    go(0, &rules, max_rules, &mut chosen, &mut |rs: &[Rule]| {
        let m = PointerMachine::new(pointers, states.clone(), &alphabet, rs.to_vec()).unwrap();
        f(&m);
    });
}

/// Words `star 0^n` for `n` up to `max_len`.
pub fn unary_words(max_len: usize) -> Vec<Word> {
    (0..=max_len)
        .map(|n| Word::from_names(&["0"], &vec!["0"; n]).unwrap())
        .collect()
}

pub fn random_word<R: Rng>(rng: &mut R, letters: &[&str], max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    let word: Vec<&str> = (0..n).map(|_| *letters.choose(rng).unwrap()).collect();
    Word::from_names(letters, &word).unwrap()
}

/// A random observation over `{star, 0, 1}` with one to six flows, states
/// drawn from a mix of constants and pairs, and permutations of arity up to
/// `max_arity`.
pub fn random_observation<R: Rng>(rng: &mut R, max_arity: usize) -> Observation {
    let states = [Term::constant("a"), Term::constant("b"), Term::pair(Term::constant("a"), Term::constant("b"))];
    let letters = [sym("star"), sym("0"), sym("1")];
    let arity = rng.gen_range(1..=max_arity);
    let perms = Permutation::all(arity);
    let control = |rng: &mut R| Control {
        state: states.choose(rng).unwrap().clone(),
        letter: *letters.choose(rng).unwrap(),
        direction: *Direction::ALL.choose(rng).unwrap(),
    };
    let count = rng.gen_range(1..=6);
    let mut flows = Vec::new();
    for _ in 0..count {
        let rule = ObservationRule {
            source: control(rng),
            target: control(rng),
            perm: perms.choose(rng).unwrap().clone(),
        };
        let flow = rule.flow();
        if !flows.contains(&flow) {
            flows.push(flow);
        }
    }
    validate_observation(&Wiring::sum_of(flows), &[sym("0"), sym("1")]).unwrap()
}

/// A random term over variables `x`, `y` and constants `a`, `b` of depth at
/// most `depth`.
pub fn random_term<R: Rng>(rng: &mut R, depth: usize, vars: bool) -> Term {
    let leaf_only = depth == 0 || rng.gen_bool(0.35);
    if leaf_only {
        let pool: &[&str] = if vars { &["?x", "?y", "a", "b"] } else { &["a", "b"] };
        let s = *pool.choose(rng).unwrap();
        match s.strip_prefix('?') {
            Some(v) => Term::var(v),
            None => Term::constant(s),
        }
    } else {
        Term::pair(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars))
    }
}

/// A random flow of depth at most `depth`, by rejection until both sides
/// have the same variables.
pub fn random_flow<R: Rng>(rng: &mut R, depth: usize) -> Flow {
    loop {
        let lhs = random_term(rng, depth, true);
        let rhs = random_term(rng, depth, true);
        if let Ok(f) = Flow::new(lhs, rhs) {
            return f;
        }
    }
}

pub fn random_coefficient<R: Rng>(rng: &mut R) -> Coefficient {
    let q = |rng: &mut R| {
        let n: i64 = rng.gen_range(-3..=3);
        let d: i64 = rng.gen_range(1..=3);
        Rational::new(n.into(), d.into())
    };
    if rng.gen_bool(0.5) {
        Coefficient::new(q(rng), Rational::zero())
    } else {
        Coefficient::new(q(rng), q(rng))
    }
}

pub fn random_wiring<R: Rng>(rng: &mut R, max_flows: usize, depth: usize) -> Wiring {
    let n = rng.gen_range(0..=max_flows);
    (0..n)
        .map(|_| (random_flow(rng, depth), random_coefficient(rng)))
        .collect()
}

/// A concrete wiring with distinct flows.
pub fn random_concrete_wiring<R: Rng>(rng: &mut R, max_flows: usize, depth: usize) -> Wiring {
    let n = rng.gen_range(1..=max_flows);
    let mut flows: Vec<Flow> = Vec::new();
    while flows.len() < n {
        let f = random_flow(rng, depth);
        if !flows.contains(&f) {
            flows.push(f);
        }
    }
    Wiring::sum_of(flows)
}

/// A linear generalization of the closed term `t`: some subterms replaced by
/// distinct variables `g0, g1, ...`.
pub fn random_generalization<R: Rng>(rng: &mut R, t: &Term, next: &mut usize) -> Term {
    if rng.gen_bool(0.3) {
        *next += 1;
        return Term::var(&format!("g{}", *next - 1));
    }
    match t {
        Term::Pair(a, b) => {
            let a = random_generalization(rng, a, next);
            Term::pair(a, random_generalization(rng, b, next))
        }
        _ => t.clone(),
    }
}

/// A flow whose right side generalizes the closed term `t`, so that it acts
/// on `t`.
pub fn flow_matching<R: Rng>(rng: &mut R, t: &Term) -> Flow {
    let mut count = 0;
    let rhs = random_generalization(rng, t, &mut count);
    let mut parts: Vec<Term> = (0..count).map(|i| Term::var(&format!("g{i}"))).collect();
    parts.shuffle(rng);
    parts.push(random_term(rng, 1, false));
    Flow::new(Term::chain(parts), rhs).unwrap()
}
