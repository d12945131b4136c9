//! Observations: concrete wirings of shape `(s' . c' . d' <- s . c . d) ⊗ [σ]`,
//! their parameters, and the computation spaces they act on.

use std::collections::{BTreeSet, HashMap};

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::flow::Flow;
use crate::perm::Permutation;
use crate::symbol::{reserved, Symbol};
use crate::term::Term;
use crate::wiring::Wiring;
use crate::word::{normalize_alphabet, PositionTerms};

/// One side of an observation flow, without its pointer tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub state: Term,
    pub letter: Symbol,
    pub direction: Direction,
}

impl Control {
    fn prefix(&self) -> [Term; 3] {
        [
            self.state.clone(),
            Term::Const(self.letter),
            Term::Const(self.direction.symbol()),
        ]
    }
}

/// A flow of an observation, decomposed: `target ⊗ [perm] <- source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObservationRule {
    pub source: Control,
    pub target: Control,
    pub perm: Permutation,
}

impl ObservationRule {
    /// `s' . c' . d' . (x1 . ... . xn . y) <- s . c . d . (xσ(1) . ... . y)`.
    pub fn flow(&self) -> Flow {
        self.perm
            .flow()
            .with_closed_prefix(&self.target.prefix(), &self.source.prefix())
    }
}

/// A validated observation.
#[derive(Clone, Debug)]
pub struct Observation {
    wiring: Wiring,
    normalized: Wiring,
    alphabet: Vec<Symbol>,
    states: Vec<Term>,
    arity: usize,
    isometric: bool,
    rules: Vec<ObservationRule>,
}

impl Observation {
    /// The wiring as given.
    pub fn wiring(&self) -> &Wiring {
        &self.wiring
    }

    /// The wiring with every permutation brought to arity `N(φ)`; this is the
    /// operator the decision procedure multiplies with word encodings.
    pub fn normalized(&self) -> &Wiring {
        &self.normalized
    }

    /// `star` first.
    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    /// `S(φ)`, sorted.
    pub fn states(&self) -> &[Term] {
        &self.states
    }

    /// `N(φ)`.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_isometric(&self) -> bool {
        self.isometric
    }

    pub fn rules(&self) -> &[ObservationRule] {
        &self.rules
    }
}

fn split_control(side: &Term) -> Option<(Term, Symbol, Symbol, &Term)> {
    let Term::Pair(state, rest) = side else {
        return None;
    };
    let Term::Pair(letter, rest) = &**rest else {
        return None;
    };
    let Term::Pair(dir, tuple) = &**rest else {
        return None;
    };
    match (&**letter, &**dir) {
        (Term::Const(c), Term::Const(d)) => Some(((**state).clone(), *c, *d, tuple)),
        _ => None,
    }
}

/// `x1 . ... . xn . y` with all components variables.
fn split_tuple(t: &Term) -> Option<(Vec<Symbol>, Symbol)> {
    let mut slots = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            Term::Var(y) => return Some((slots, *y)),
            Term::Pair(head, tail) => match &**head {
                Term::Var(x) => {
                    slots.push(*x);
                    cur = tail;
                }
                _ => return None,
            },
            Term::Const(_) => return None,
        }
    }
}

fn decompose(flow: &Flow, alphabet: &[Symbol]) -> Result<ObservationRule> {
    let shape = || Error::NotObservationShape(flow.to_string());
    let (s1, c1, d1, tup1) = split_control(flow.lhs()).ok_or_else(shape)?;
    let (s0, c0, d0, tup0) = split_control(flow.rhs()).ok_or_else(shape)?;
    if !s1.is_closed() || !s0.is_closed() {
        return Err(shape());
    }
    let d1 = Direction::from_symbol(d1).ok_or_else(shape)?;
    let d0 = Direction::from_symbol(d0).ok_or_else(shape)?;
    for c in [c1, c0] {
        if !alphabet.contains(&c) {
            return Err(Error::LetterOutsideAlphabet(c.to_string()));
        }
    }
    let (xs, y1) = split_tuple(tup1).ok_or_else(shape)?;
    let (zs, y0) = split_tuple(tup0).ok_or_else(shape)?;
    if y1 != y0 || xs.len() != zs.len() || xs.contains(&y1) {
        return Err(shape());
    }
    let mut images = Vec::with_capacity(zs.len());
    for z in &zs {
        images.push(xs.iter().position(|x| x == z).ok_or_else(shape)? + 1);
    }
    let perm = Permutation::new(images).map_err(|_| shape())?;
    Ok(ObservationRule {
        source: Control {
            state: s0,
            letter: c0,
            direction: d0,
        },
        target: Control {
            state: s1,
            letter: c1,
            direction: d1,
        },
        perm,
    })
}

/// Checks that `wiring` is an observation over `alphabet` (`star` is added
/// if missing) and extracts `S(φ)` and `N(φ)`.
///
/// `N(φ)` is the largest point moved by any permutation, at least 1. All
/// permutations are brought to that arity in [`Observation::normalized`].
pub fn validate_observation(wiring: &Wiring, alphabet: &[Symbol]) -> Result<Observation> {
    let letters: Vec<Symbol> = alphabet
        .iter()
        .copied()
        .filter(|c| *c != reserved::star())
        .collect();
    let alphabet = normalize_alphabet(&letters)?;
    let mut rules = Vec::with_capacity(wiring.len());
    for (flow, coef) in wiring.iter() {
        if !coef.is_one() {
            return Err(Error::NotConcrete {
                flow: flow.to_string(),
                coefficient: coef.to_string(),
            });
        }
        rules.push(decompose(flow, &alphabet)?);
    }
    let arity = rules
        .iter()
        .map(|r| r.perm.largest_moved())
        .max()
        .unwrap_or(0)
        .max(1);
    for rule in &mut rules {
        rule.perm = rule
            .perm
            .with_arity(arity)
            .expect("arity covers every moved point");
    }
    let normalized = Wiring::sum_of(rules.iter().map(ObservationRule::flow));
    let states: BTreeSet<Term> = rules
        .iter()
        .flat_map(|r| [r.source.state.clone(), r.target.state.clone()])
        .collect();
    Ok(Observation {
        isometric: wiring.is_isometric(),
        wiring: wiring.clone(),
        normalized,
        alphabet,
        states: states.into_iter().collect(),
        arity,
        rules,
    })
}

/// `s . c . d . (a1 . ... . aN . star)`.
pub fn basis_term(state: &Term, letter: Symbol, direction: Direction, slots: &[Term]) -> Term {
    let tuple = Term::chain(
        slots
            .iter()
            .cloned()
            .chain(std::iter::once(Term::Const(reserved::star()))),
    );
    Term::chain([
        state.clone(),
        Term::Const(letter),
        Term::Const(direction.symbol()),
        tuple,
    ])
}

/// The finite basis `Comp_φ(t0, ..., tn)`.
#[derive(Clone, Debug)]
pub struct ComputationSpace {
    states: Vec<Term>,
    alphabet: Vec<Symbol>,
    arity: usize,
    positions: PositionTerms,
    basis: Vec<Term>,
    index: HashMap<Term, usize>,
}

impl ComputationSpace {
    pub fn new(
        states: Vec<Term>,
        alphabet: Vec<Symbol>,
        arity: usize,
        positions: PositionTerms,
    ) -> ComputationSpace {
        let basis: Vec<Term> = BasisIter::new(&states, &alphabet, arity, &positions).collect();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        ComputationSpace {
            states,
            alphabet,
            arity,
            positions,
            basis,
            index,
        }
    }

    pub fn for_observation(obs: &Observation, positions: &PositionTerms) -> ComputationSpace {
        ComputationSpace::new(
            obs.states.clone(),
            obs.alphabet.clone(),
            obs.arity,
            positions.clone(),
        )
    }

    /// `|Σ| · 2 · (n+1)^N · |S|`.
    pub fn formula(alphabet: usize, n: usize, arity: usize, states: usize) -> usize {
        alphabet * 2 * (n + 1).pow(arity as u32) * states
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Term] {
        &self.basis
    }

    pub fn term(&self, i: usize) -> &Term {
        &self.basis[i]
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn states(&self) -> &[Term] {
        &self.states
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn positions(&self) -> &PositionTerms {
        &self.positions
    }
}

/// Streams the basis of `Comp_φ(pos)` in lexicographic order of
/// `(s, c, d, a1 ... aN)`.
pub fn computation_space_iter<'a>(
    obs: &'a Observation,
    positions: &'a PositionTerms,
) -> impl Iterator<Item = Term> + 'a {
    BasisIter::new(&obs.states, &obs.alphabet, obs.arity, positions)
}

/// Materialized computation space of an observation.
pub fn computation_space(obs: &Observation, positions: &PositionTerms) -> ComputationSpace {
    ComputationSpace::for_observation(obs, positions)
}

struct BasisIter<'a> {
    states: &'a [Term],
    alphabet: &'a [Symbol],
    arity: usize,
    positions: &'a PositionTerms,
    next: usize,
    total: usize,
}

impl<'a> BasisIter<'a> {
    fn new(
        states: &'a [Term],
        alphabet: &'a [Symbol],
        arity: usize,
        positions: &'a PositionTerms,
    ) -> BasisIter<'a> {
        let total = ComputationSpace::formula(alphabet.len(), positions.len().saturating_sub(1), arity, states.len());
        let total = if positions.is_empty() { 0 } else { total };
        BasisIter {
            states,
            alphabet,
            arity,
            positions,
            next: 0,
            total,
        }
    }
}

impl Iterator for BasisIter<'_> {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        if self.next >= self.total {
            return None;
        }
        let mut k = self.next;
        self.next += 1;
        let m = self.positions.len();
        let mut slots = vec![Term::Const(reserved::star()); self.arity];
        for slot in slots.iter_mut().rev() {
            *slot = self.positions.get(k % m).clone();
            k /= m;
        }
        let direction = Direction::ALL[k % 2];
        k /= 2;
        let letter = self.alphabet[k % self.alphabet.len()];
        k /= self.alphabet.len();
        let state = &self.states[k];
        Some(basis_term(state, letter, direction, &slots))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.total - self.next;
        (rest, Some(rest))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_wiring;
    use crate::word::default_positions;

    fn sigma() -> Vec<Symbol> {
        vec![Symbol::intern("0")]
    }

    #[test]
    fn zero_observation() {
        let obs = validate_observation(&Wiring::zero(), &sigma()).unwrap();
        assert!(obs.states().is_empty());
        assert_eq!(obs.arity(), 1);
        assert!(obs.is_isometric());
        assert_eq!(computation_space(&obs, &default_positions(3)).len(), 0);
    }

    #[test]
    fn shape_errors() {
        let err = validate_observation(&parse_wiring("(c <- d)").unwrap(), &sigma());
        assert!(matches!(err, Err(Error::NotObservationShape(_))));
        let w = parse_wiring("2 * (a . 0 . l . ?x . ?y <- a . 0 . r . ?x . ?y)").unwrap();
        assert!(matches!(validate_observation(&w, &sigma()), Err(Error::NotConcrete { .. })));
        let w = parse_wiring("(a . 1 . l . ?x . ?y <- a . 0 . r . ?x . ?y)").unwrap();
        assert!(matches!(
            validate_observation(&w, &sigma()),
            Err(Error::LetterOutsideAlphabet(_))
        ));
        let w = parse_wiring("(a . 0 . l . ?x . ?y <- a . 0 . q . ?x . ?y)").unwrap();
        assert!(validate_observation(&w, &sigma()).is_err());
        let w = parse_wiring("(a . 0 . l . (p0 . ?y) <- a . 0 . r . (p0 . ?y))").unwrap();
        assert!(validate_observation(&w, &sigma()).is_err());
        let w = parse_wiring("(a . 0 . l . ?y <- a . 0 . r . (?x . ?y))");
        assert!(w.is_err(), "variable sets differ");
    }

    #[test]
    fn parameters_are_extracted() {
        let w = parse_wiring(
            "(b . 0 . l . (?x1 . ?x2 . ?x3 . ?y) <- a . star . r . (?x2 . ?x1 . ?x3 . ?y)) \
             + (c . 0 . r . (?x . ?y) <- a . 0 . r . (?x . ?y))",
        )
        .unwrap();
        let obs = validate_observation(&w, &sigma()).unwrap();
        assert_eq!(obs.arity(), 2);
        assert_eq!(obs.states().len(), 3);
        assert!(obs.is_isometric());
        for r in obs.rules() {
            assert_eq!(r.perm.arity(), 2);
        }
        assert_eq!(obs.rules().len(), 2);
        // idempotent
        let again = validate_observation(obs.wiring(), obs.alphabet()).unwrap();
        assert_eq!(again.arity(), obs.arity());
        assert_eq!(again.states(), obs.states());
        assert_eq!(again.normalized(), obs.normalized());
    }

    #[test]
    fn space_size_and_order() {
        let w = parse_wiring("(b . 0 . l . (?x1 . ?x2 . ?y) <- a . 0 . r . (?x2 . ?x1 . ?y))").unwrap();
        let obs = validate_observation(&w, &sigma()).unwrap();
        let pos = default_positions(2);
        let space = computation_space(&obs, &pos);
        assert_eq!(space.len(), ComputationSpace::formula(2, 2, 2, 2));
        assert_eq!(space.len(), 72);
        assert_eq!(
            space.term(0),
            &crate::syntax::parse_term("a . star . l . p0 . p0 . star").unwrap()
        );
        assert_eq!(
            space.term(1),
            &crate::syntax::parse_term("a . star . l . p0 . p1 . star").unwrap()
        );
        let streamed: Vec<Term> = computation_space_iter(&obs, &pos).collect();
        assert_eq!(streamed, space.basis());
        for (i, t) in space.basis().iter().enumerate() {
            assert_eq!(space.index_of(t), Some(i));
        }
    }
}
