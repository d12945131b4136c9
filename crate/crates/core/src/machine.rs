//! Read-only multi-pointer machines: direct semantics, acceptance by
//! exhaustive cycle detection, and compilation into observations.

use std::collections::HashSet;

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::observation::{basis_term, validate_observation, Control, Observation, ObservationRule};
use crate::perm::Permutation;
use crate::symbol::{reserved, Symbol};
use crate::term::Term;
use crate::wiring::Wiring;
use crate::word::{normalize_alphabet, PositionTerms, Word};

/// `(state, letter, direction) -> (next_state, next_letter, next_direction) × perm`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub state: Symbol,
    pub letter: Symbol,
    pub direction: Direction,
    pub next_state: Symbol,
    pub next_letter: Symbol,
    pub next_direction: Direction,
    pub perm: Permutation,
}

impl Rule {
    fn trigger(&self) -> (Symbol, Symbol, Direction) {
        (self.state, self.letter, self.direction)
    }

    fn outcome(&self) -> (Symbol, Symbol, Direction) {
        (self.next_state, self.next_letter, self.next_direction)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointerMachine {
    pointer_count: usize,
    states: Vec<Symbol>,
    alphabet: Vec<Symbol>,
    rules: Vec<Rule>,
}

impl PointerMachine {
    /// `alphabet` excludes `star`, which is added. Rule permutations shorter
    /// than `pointer_count` are lifted; repeated rules are dropped.
    pub fn new(
        pointer_count: usize,
        states: Vec<Symbol>,
        alphabet: &[Symbol],
        rules: Vec<Rule>,
    ) -> Result<PointerMachine> {
        if pointer_count == 0 {
            return Err(Error::NoPointers);
        }
        let mut seen = HashSet::new();
        let states: Vec<Symbol> = states.into_iter().filter(|s| seen.insert(*s)).collect();
        let alphabet = normalize_alphabet(alphabet)?;
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(rules.len());
        for mut rule in rules {
            for s in [rule.state, rule.next_state] {
                if !states.contains(&s) {
                    return Err(Error::UnknownState(s.to_string()));
                }
            }
            for c in [rule.letter, rule.next_letter] {
                if !alphabet.contains(&c) {
                    return Err(Error::LetterOutsideAlphabet(c.to_string()));
                }
            }
            let arity = rule.perm.arity();
            if arity > pointer_count {
                return Err(Error::PermutationTooLarge {
                    arity,
                    limit: pointer_count,
                });
            }
            rule.perm = rule.perm.lift(pointer_count - arity);
            if seen.insert(rule.clone()) {
                kept.push(rule);
            }
        }
        Ok(PointerMachine {
            pointer_count,
            states,
            alphabet,
            rules: kept,
        })
    }

    pub fn pointer_count(&self) -> usize {
        self.pointer_count
    }

    pub fn states(&self) -> &[Symbol] {
        &self.states
    }

    /// `star` first.
    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// At most one rule per `(s, c, d)`.
    pub fn is_deterministic(&self) -> bool {
        let mut seen = HashSet::new();
        self.rules.iter().all(|r| seen.insert(r.trigger()))
    }

    /// Deterministic, and no two rules share an outcome `(s', c', d')`.
    pub fn is_reversible(&self) -> bool {
        let mut seen = HashSet::new();
        self.is_deterministic() && self.rules.iter().all(|r| seen.insert(r.outcome()))
    }

    /// Number of configurations on a word of length `n`.
    pub fn configuration_count(&self, n: usize) -> usize {
        self.states.len() * self.alphabet.len() * 2 * (n + 1).pow(self.pointer_count as u32)
    }

    /// All configurations on a word of length `n`, ordered by state, letter,
    /// direction, then positions with the first pointer most significant.
    pub fn configurations(&self, n: usize) -> impl Iterator<Item = Configuration> + '_ {
        (0..self.configuration_count(n)).map(move |i| self.decode(n, i))
    }

    fn decode(&self, n: usize, mut index: usize) -> Configuration {
        let m = n + 1;
        let mut positions = vec![0; self.pointer_count];
        for p in positions.iter_mut().rev() {
            *p = index % m;
            index /= m;
        }
        let direction = Direction::ALL[index % 2];
        index /= 2;
        let letter = self.alphabet[index % self.alphabet.len()];
        index /= self.alphabet.len();
        Configuration {
            state: self.states[index],
            letter,
            direction,
            positions,
        }
    }

    fn encode(&self, n: usize, c: &Configuration) -> usize {
        let s = self.states.iter().position(|s| *s == c.state).expect("known state");
        let l = self.alphabet.iter().position(|l| *l == c.letter).expect("known letter");
        let d = Direction::ALL.iter().position(|d| *d == c.direction).unwrap();
        let mut index = (s * self.alphabet.len() + l) * 2 + d;
        for &p in &c.positions {
            index = index * (n + 1) + p;
        }
        index
    }
}

/// A machine state together with the letter it claims to read under the
/// first pointer, its direction, and the pointer positions in `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: Symbol,
    pub letter: Symbol,
    pub direction: Direction,
    pub positions: Vec<usize>,
}

/// One transition. The first pointer moves (right for `r`, left for `l`,
/// cyclically), the direction flips, and every rule triggered by the new
/// `(state, letter, direction)` fires with pointer `i` going to slot `σ(i)`.
/// A configuration whose letter disagrees with the tape has no successor.
pub fn step(m: &PointerMachine, w: &Word, c: &Configuration) -> Vec<Configuration> {
    let modulus = w.len() + 1;
    let p1 = c.positions[0];
    if c.letter != w.letter_at(p1) {
        return Vec::new();
    }
    let moved = match c.direction {
        Direction::Right => (p1 + 1) % modulus,
        Direction::Left => (p1 + modulus - 1) % modulus,
    };
    let letter = w.letter_at(moved);
    let direction = c.direction.flip();
    let mut after_move = c.positions.clone();
    after_move[0] = moved;
    m.rules
        .iter()
        .filter(|r| r.state == c.state && r.letter == letter && r.direction == direction)
        .map(|r| {
            let inv = r.perm.inverse();
            Configuration {
                state: r.next_state,
                letter: r.next_letter,
                direction: r.next_direction,
                positions: (1..=after_move.len())
                    .map(|j| after_move[inv.apply(j) - 1])
                    .collect(),
            }
        })
        .collect()
}

/// Every transition sequence from every configuration is finite. Decided by
/// repeatedly removing configurations with no remaining predecessor; the
/// word is accepted when nothing is left.
pub fn machine_accepts(m: &PointerMachine, w: &Word) -> bool {
    let n = w.len();
    let total = m.configuration_count(n);
    let mut successors: Vec<Vec<usize>> = Vec::with_capacity(total);
    let mut indegree = vec![0usize; total];
    for c in m.configurations(n) {
        let next: Vec<usize> = step(m, w, &c).iter().map(|d| m.encode(n, d)).collect();
        for &j in &next {
            indegree[j] += 1;
        }
        successors.push(next);
    }
    let mut ready: Vec<usize> = (0..total).filter(|&i| indegree[i] == 0).collect();
    let mut removed = 0;
    while let Some(i) = ready.pop() {
        removed += 1;
        for &j in &successors[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(j);
            }
        }
    }
    removed == total
}

/// The closed constant `st_<name>` standing for a state.
pub fn state_term(state: Symbol) -> Term {
    Term::constant(&format!("st_{state}"))
}

fn compiled_rule(r: &Rule) -> ObservationRule {
    ObservationRule {
        source: Control {
            state: state_term(r.state),
            letter: r.letter,
            direction: r.direction,
        },
        target: Control {
            state: state_term(r.next_state),
            letter: r.next_letter,
            direction: r.next_direction,
        },
        perm: r.perm.clone(),
    }
}

/// The observation summing `(st_s' . c' . d' <- st_s . c . d) ⊗ [σ]` over
/// the rules.
pub fn compile(m: &PointerMachine) -> Observation {
    let wiring = Wiring::sum_of(m.rules.iter().map(|r| compiled_rule(r).flow()));
    validate_observation(&wiring, &m.alphabet).expect("compiled rules have observation shape")
}

/// `st_s . c . d . (t_{p1} . ... . t_{pN} . star)`.
pub fn config_term(c: &Configuration, positions: &PositionTerms) -> Term {
    let slots: Vec<Term> = c.positions.iter().map(|&p| positions.get(p).clone()).collect();
    basis_term(&state_term(c.state), c.letter, c.direction, &slots)
}

/// Inverse of [`config_term`] for machine `m`.
pub fn term_config(t: &Term, positions: &PositionTerms, m: &PointerMachine) -> Result<Configuration> {
    let bad = || Error::NotConfiguration(t.to_string());
    let mut parts = Vec::new();
    let mut cur = t;
    while let Term::Pair(head, tail) = cur {
        parts.push(&**head);
        cur = tail;
    }
    if *cur != Term::Const(reserved::star()) || parts.len() != 3 + m.pointer_count {
        return Err(bad());
    }
    let state = m
        .states
        .iter()
        .copied()
        .find(|s| state_term(*s) == *parts[0])
        .ok_or_else(bad)?;
    let letter = match parts[1] {
        Term::Const(c) if m.alphabet.contains(c) => *c,
        _ => return Err(bad()),
    };
    let direction = match parts[2] {
        Term::Const(d) => Direction::from_symbol(*d).ok_or_else(bad)?,
        _ => return Err(bad()),
    };
    let positions = parts[3..]
        .iter()
        .map(|p| positions.index_of(p).ok_or_else(bad))
        .collect::<Result<Vec<_>>>()?;
    Ok(Configuration {
        state,
        letter,
        direction,
        positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_flow, parse_term};
    use crate::word::default_positions;

    fn sym(s: &str) -> Symbol {
        Symbol::intern(s)
    }

    fn rule(s: &str, c: &str, d: Direction, s2: &str, c2: &str, d2: Direction, perm: Permutation) -> Rule {
        Rule {
            state: sym(s),
            letter: sym(c),
            direction: d,
            next_state: sym(s2),
            next_letter: sym(c2),
            next_direction: d2,
            perm,
        }
    }

    fn looping() -> PointerMachine {
        let mut rules = Vec::new();
        for c in ["star", "0"] {
            for d in Direction::ALL {
                rules.push(rule("s", c, d, "s", c, d, Permutation::identity(1)));
            }
        }
        PointerMachine::new(1, vec![sym("s")], &[sym("0")], rules).unwrap()
    }

    fn empty(n: usize) -> PointerMachine {
        PointerMachine::new(n, vec![sym("s")], &[sym("0")], vec![]).unwrap()
    }

    fn words() -> Vec<Word> {
        (0..4)
            .map(|n| Word::from_names(&["0"], &vec!["0"; n]).unwrap())
            .collect()
    }

    #[test]
    fn empty_machine() {
        let m = empty(2);
        assert!(m.is_deterministic() && m.is_reversible());
        for w in words() {
            for c in m.configurations(w.len()) {
                assert!(step(&m, &w, &c).is_empty());
            }
            assert!(machine_accepts(&m, &w));
        }
        assert!(compile(&m).wiring().is_zero());
    }

    #[test]
    fn looping_machine() {
        let m = looping();
        assert!(m.is_reversible());
        for w in words() {
            for c in m.configurations(w.len()) {
                let consistent = c.letter == w.letter_at(c.positions[0]);
                assert_eq!(step(&m, &w, &c).len(), usize::from(consistent));
            }
            assert!(!machine_accepts(&m, &w));
        }
        assert!(compile(&m).is_isometric());
    }

    #[test]
    fn swap_orientation() {
        let m = PointerMachine::new(
            2,
            vec![sym("s")],
            &[sym("0")],
            vec![rule("s", "0", Direction::Left, "s", "0", Direction::Left, Permutation::transposition(2, 1, 2))],
        )
        .unwrap();
        let w = Word::from_names(&["0"], &["0"; 6]).unwrap();
        let c = Configuration {
            state: sym("s"),
            letter: sym("0"),
            direction: Direction::Right,
            positions: vec![3, 5],
        };
        let next = step(&m, &w, &c);
        assert_eq!(next.len(), 1);
        assert_eq!(next[0].positions, vec![5, 4]);
    }

    #[test]
    fn determinism_and_reversibility() {
        let id = Permutation::identity(1);
        let two_same_trigger = PointerMachine::new(
            1,
            vec![sym("s"), sym("t")],
            &[sym("0")],
            vec![
                rule("s", "0", Direction::Left, "s", "0", Direction::Left, id.clone()),
                rule("s", "0", Direction::Left, "t", "0", Direction::Left, id.clone()),
            ],
        )
        .unwrap();
        assert!(!two_same_trigger.is_deterministic());
        let merging = PointerMachine::new(
            1,
            vec![sym("s"), sym("t")],
            &[sym("0")],
            vec![
                rule("s", "0", Direction::Left, "s", "0", Direction::Left, id.clone()),
                rule("t", "0", Direction::Left, "s", "0", Direction::Left, id),
            ],
        )
        .unwrap();
        assert!(merging.is_deterministic() && !merging.is_reversible());
        assert!(!compile(&merging).is_isometric());
    }

    #[test]
    fn single_rule_compiles_to_one_flow() {
        let m = PointerMachine::new(
            1,
            vec![sym("s"), sym("t")],
            &[sym("0")],
            vec![rule("s", "0", Direction::Left, "t", "star", Direction::Right, Permutation::identity(1))],
        )
        .unwrap();
        let obs = compile(&m);
        let expected = parse_flow("st_t . star . r . ?x1 . ?y <- st_s . 0 . l . ?x1 . ?y").unwrap();
        assert_eq!(obs.wiring(), &Wiring::from(expected));
        assert_eq!(obs.arity(), 1);
        assert_eq!(obs.states(), &[state_term(sym("s")), state_term(sym("t"))]);
    }

    #[test]
    fn configuration_terms_round_trip() {
        let m = empty(2);
        let pos = default_positions(2);
        for c in m.configurations(2) {
            assert_eq!(term_config(&config_term(&c, &pos), &pos, &m).unwrap(), c);
        }
        let c = Configuration {
            state: sym("s"),
            letter: reserved::star(),
            direction: Direction::Right,
            positions: vec![0, 0],
        };
        assert_eq!(
            config_term(&c, &pos),
            parse_term("st_s . star . r . p0 . p0 . star").unwrap()
        );
        assert!(term_config(&parse_term("st_s . star . r . p0 . star").unwrap(), &pos, &m).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(PointerMachine::new(0, vec![], &[], vec![]), Err(Error::NoPointers));
        let r = rule("s", "0", Direction::Left, "s", "0", Direction::Left, Permutation::identity(1));
        assert!(matches!(
            PointerMachine::new(1, vec![sym("t")], &[sym("0")], vec![r]),
            Err(Error::UnknownState(_))
        ));
    }
}
