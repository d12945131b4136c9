//! Cyclic words and their representation as isometric wirings.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::flow::Flow;
use crate::symbol::{reserved, Symbol};
use crate::term::Term;
use crate::wiring::Wiring;

/// A word `star c1 ... cn` over an alphabet that always contains `star`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Vec<Symbol>,
    letters: Vec<Symbol>,
}

impl Word {
    /// `alphabet` lists the letters other than `star`, which is added in
    /// front. Repeats are dropped.
    pub fn new(alphabet: &[Symbol], letters: Vec<Symbol>) -> Result<Word> {
        let alphabet = normalize_alphabet(alphabet)?;
        for c in &letters {
            if *c == reserved::star() || !alphabet.contains(c) {
                return Err(Error::LetterOutsideAlphabet(c.to_string()));
            }
        }
        Ok(Word { alphabet, letters })
    }

    /// Convenience constructor from names.
    pub fn from_names(alphabet: &[&str], letters: &[&str]) -> Result<Word> {
        let alphabet: Vec<Symbol> = alphabet.iter().map(|s| Symbol::intern(s)).collect();
        Word::new(&alphabet, letters.iter().map(|s| Symbol::intern(s)).collect())
    }

    /// The alphabet with `star` first.
    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    /// Length `n`, not counting the marker.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The letter at a cyclic position: `star` at 0, `c_p` at `p >= 1`.
    pub fn letter_at(&self, position: usize) -> Symbol {
        if position == 0 {
            reserved::star()
        } else {
            self.letters[position - 1]
        }
    }
}

/// `star` first, then the given letters in order without repeats; rejects
/// `l` and `r`.
pub(crate) fn normalize_alphabet(letters: &[Symbol]) -> Result<Vec<Symbol>> {
    let mut out = vec![reserved::star()];
    for &c in letters {
        if c == reserved::left() || c == reserved::right() {
            return Err(Error::ReservedName(c.to_string()));
        }
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Distinct closed terms `t0 ... tn` standing for the cyclic positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositionTerms {
    terms: Vec<Term>,
}

impl PositionTerms {
    pub fn new(terms: Vec<Term>) -> Result<PositionTerms> {
        let mut seen = HashSet::new();
        for t in &terms {
            if !t.is_closed() {
                return Err(Error::NotClosed(t.to_string()));
            }
            if !seen.insert(t) {
                return Err(Error::DuplicatePosition(t.to_string()));
            }
        }
        Ok(PositionTerms { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, i: usize) -> &Term {
        &self.terms[i]
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.terms.iter().position(|p| p == t)
    }
}

/// Fresh constants `p0 ... pn`.
pub fn default_positions(n: usize) -> PositionTerms {
    PositionTerms {
        terms: (0..=n).map(|i| Term::constant(&format!("p{i}"))).collect(),
    }
}

/// Unary numerals `pz`, `ps . pz`, `ps . ps . pz`, ...
pub fn nested_positions(n: usize) -> PositionTerms {
    let mut terms = Vec::with_capacity(n + 1);
    let mut current = Term::constant("pz");
    for _ in 0..=n {
        terms.push(current.clone());
        current = Term::pair(Term::constant("ps"), current);
    }
    PositionTerms { terms }
}

/// The constants `p0 ... pn` assigned to positions in a random order.
pub fn shuffled_positions<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PositionTerms {
    let mut terms = default_positions(n).terms;
    terms.shuffle(rng);
    PositionTerms { terms }
}

/// Encodes a cyclic sequence of `(letter, position term)` cells: each cell
/// read rightwards is exchanged with the next cell read leftwards,
/// `x . c_i . r . (t_i . y) ⇌ x . c_{i+1} . l . (t_{i+1} . y)`, indices
/// taken cyclically.
pub fn encode_cycle(cells: &[(Symbol, Term)]) -> Wiring {
    let x = Term::Var(Symbol::intern("x"));
    let y = Term::Var(Symbol::intern("y"));
    let side = |c: Symbol, d: Symbol, t: &Term| {
        Term::chain([
            x.clone(),
            Term::Const(c),
            Term::Const(d),
            Term::pair(t.clone(), y.clone()),
        ])
    };
    let m = cells.len();
    let mut flows = Vec::with_capacity(2 * m);
    for i in 0..m {
        let (c, t) = &cells[i];
        let (c_next, t_next) = &cells[(i + 1) % m];
        let u = side(*c, reserved::right(), t);
        let v = side(*c_next, reserved::left(), t_next);
        flows.push(Flow::canonical(u.clone(), v.clone()));
        flows.push(Flow::canonical(v, u));
    }
    Wiring::sum_of(flows)
}

/// The representation `W(t0, ..., tn)` of a word. The empty word is encoded
/// as the one-cell cycle `star . r ⇌ star . l` at `t0`.
pub fn encode_word(word: &Word, positions: &PositionTerms) -> Result<Wiring> {
    if positions.len() != word.len() + 1 {
        return Err(Error::PositionCount {
            expected: word.len() + 1,
            found: positions.len(),
        });
    }
    let cells: Vec<(Symbol, Term)> = (0..=word.len())
        .map(|p| (word.letter_at(p), positions.get(p).clone()))
        .collect();
    Ok(encode_cycle(&cells))
}
