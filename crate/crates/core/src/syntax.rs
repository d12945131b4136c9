//! Text formats: terms, flows, wirings, substitutions, permutations, and the
//! word, observation, machine and position files.
//!
//! Values render through their `Display` impls; every renderer here produces
//! text its parser reads back to an equal value.

use num_bigint::BigInt;

use crate::coefficient::{Coefficient, Rational};
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::flow::Flow;
use crate::machine::{PointerMachine, Rule};
use crate::perm::Permutation;
use crate::symbol::{reserved, Symbol};
use crate::term::{Substitution, Term};
use crate::wiring::Wiring;
use crate::word::{PositionTerms, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Question,
    Dot,
    LParen,
    RParen,
    LArrow,
    RArrow,
    Plus,
    Minus,
    Star,
    Slash,
    LBrace,
    RBrace,
    Comma,
    LBracket,
    RBracket,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Question => "`?`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LArrow => "`<-`".into(),
            Tok::RArrow => "`->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokenizes `text`, whose first line is numbered `first_line`. `#` starts a
/// comment running to the end of the line.
fn lex(text: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let (l, col) = (line, column);
        column += 1;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                continue;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
                continue;
            }
            c if c.is_whitespace() => continue,
            c if is_ident_char(c) => {
                let mut s = String::from(c);
                while let Some(&c) = chars.peek().filter(|c| is_ident_char(**c)) {
                    s.push(c);
                    chars.next();
                    column += 1;
                }
                Tok::Ident(s)
            }
            '?' => Tok::Question,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '<' if chars.peek() == Some(&'-') => {
                chars.next();
                column += 1;
                Tok::LArrow
            }
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                column += 1;
                Tok::RArrow
            }
            '-' => Tok::Minus,
            other => return Err(Error::syntax(l, col, format!("unexpected character `{other}`"))),
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str, first_line: usize) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text, first_line)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::syntax(t.line, t.column, message)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let s = self.ident("a number")?;
        s.parse().map_err(|_| {
            self.toks
                .get(self.pos.saturating_sub(1))
                .map(|t| Error::syntax(t.line, t.column, format!("`{s}` is not a number")))
                .unwrap()
        })
    }

    fn term(&mut self) -> Result<Term> {
        let head = match self.peek() {
            Tok::Question => {
                self.advance();
                Term::Var(Symbol::intern(&self.ident("a variable name")?))
            }
            Tok::Ident(_) => Term::Const(Symbol::intern(&self.ident("a constant")?)),
            Tok::LParen => {
                self.advance();
                let t = self.term()?;
                self.expect(&Tok::RParen)?;
                t
            }
            _ => return Err(self.unexpected("a term")),
        };
        if self.eat(&Tok::Dot) {
            Ok(Term::pair(head, self.term()?))
        } else {
            Ok(head)
        }
    }

    fn flow(&mut self) -> Result<Flow> {
        let lhs = self.term()?;
        self.expect(&Tok::LArrow)?;
        let rhs = self.term()?;
        Flow::new(lhs, rhs)
    }

    fn digits(&mut self) -> Result<BigInt> {
        match self.peek() {
            Tok::Ident(s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let n = s.parse().expect("digits");
                self.advance();
                Ok(n)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    /// `a` or `a/b`, unsigned.
    fn rational(&mut self) -> Result<Rational> {
        let numer = self.digits()?;
        if self.eat(&Tok::Slash) {
            let denom = self.digits()?;
            if denom == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::new(numer, BigInt::from(1)))
        }
    }

    fn is_imaginary_unit(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "i")
    }

    /// `q`, `q i`, `q + q i` or `q - q i`, each `q` optionally negated.
    fn coefficient(&mut self) -> Result<Coefficient> {
        let negative = self.eat(&Tok::Minus);
        let first = self.rational()?;
        let first = if negative { -&first } else { first };
        if self.is_imaginary_unit() {
            self.advance();
            return Ok(Coefficient::new(Rational::zero(), first));
        }
        let sign = match self.peek() {
            Tok::Plus | Tok::Minus
                if matches!(self.peek_at(1), Tok::Ident(_))
                    && self.imaginary_follows(1) =>
            {
                self.advance()
            }
            _ => return Ok(Coefficient::new(first, Rational::zero())),
        };
        let im = self.rational()?;
        if !self.is_imaginary_unit() {
            return Err(self.unexpected("`i`"));
        }
        self.advance();
        let im = if sign == Tok::Minus { -&im } else { im };
        Ok(Coefficient::new(first, im))
    }

    /// Whether the tokens from offset `k` read `q i` or `q / q i`.
    fn imaginary_follows(&self, k: usize) -> bool {
        let unit = |t: &Tok| matches!(t, Tok::Ident(s) if s == "i");
        match self.peek_at(k + 1) {
            Tok::Slash => unit(self.peek_at(k + 3)),
            t => unit(t),
        }
    }

    fn summand(&mut self) -> Result<(Flow, Coefficient)> {
        let coef = if self.peek() == &Tok::LParen {
            let save = self.pos;
            self.advance();
            match self.coefficient() {
                Ok(c) if self.peek() == &Tok::RParen && self.peek_at(1) == &Tok::Star => {
                    self.advance();
                    self.advance();
                    Some(c)
                }
                _ => {
                    self.pos = save;
                    None
                }
            }
        } else {
            let c = self.coefficient()?;
            self.expect(&Tok::Star)?;
            Some(c)
        };
        self.expect(&Tok::LParen)?;
        let flow = self.flow()?;
        self.expect(&Tok::RParen)?;
        Ok((flow, coef.unwrap_or_else(Coefficient::one)))
    }

    fn wiring(&mut self) -> Result<Wiring> {
        if matches!(self.peek(), Tok::Ident(s) if s == "0") && self.peek_at(1) == &Tok::End {
            self.advance();
            return Ok(Wiring::zero());
        }
        let mut out = Wiring::zero();
        loop {
            let (flow, coef) = self.summand()?;
            out.add_term(flow, coef);
            if !self.eat(&Tok::Plus) {
                break;
            }
        }
        Ok(out)
    }

    fn substitution(&mut self) -> Result<Substitution> {
        self.expect(&Tok::LBrace)?;
        let mut bindings: Vec<(Symbol, Term)> = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                self.expect(&Tok::Question)?;
                let v = Symbol::intern(&self.ident("a variable name")?);
                if bindings.iter().any(|(w, _)| *w == v) {
                    return Err(self.error(format!("variable ?{v} bound twice")));
                }
                self.expect(&Tok::RArrow)?;
                bindings.push((v, self.term()?));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RBrace)?;
        }
        Ok(Substitution::from_bindings(bindings))
    }

    /// Image list, with or without brackets; ends at end of input.
    fn permutation(&mut self) -> Result<Permutation> {
        let bracketed = self.eat(&Tok::LBracket);
        let mut images = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) {
            images.push(self.number()?);
        }
        if bracketed {
            self.expect(&Tok::RBracket)?;
        }
        Permutation::new(images)
    }

    fn symbols(&mut self) -> Result<Vec<Symbol>> {
        let mut out = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) {
            out.push(Symbol::intern(&self.ident("a name")?));
        }
        Ok(out)
    }

    fn direction(&mut self) -> Result<Direction> {
        match self.peek() {
            Tok::Ident(s) if s == "l" => {
                self.advance();
                Ok(Direction::Left)
            }
            Tok::Ident(s) if s == "r" => {
                self.advance();
                Ok(Direction::Right)
            }
            _ => Err(self.unexpected("a direction `l` or `r`")),
        }
    }
}

fn parse_all<T>(text: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(text, 1)?;
    let value = f(&mut p)?;
    p.finish()?;
    Ok(value)
}

/// `?x` is a variable, a bare name is a constant, `.` pairs to the right.
pub fn parse_term(text: &str) -> Result<Term> {
    parse_all(text, Parser::term)
}

/// `lhs <- rhs`.
pub fn parse_flow(text: &str) -> Result<Flow> {
    parse_all(text, Parser::flow)
}

/// `0`, or a sum of `(flow)`, `c * (flow)` and `(c) * (flow)`.
pub fn parse_wiring(text: &str) -> Result<Wiring> {
    parse_all(text, Parser::wiring)
}

/// `3`, `-1/2`, `2 i`, `1 - 3/4 i`.
pub fn parse_coefficient(text: &str) -> Result<Coefficient> {
    parse_all(text, Parser::coefficient)
}

/// `{?x -> t, ...}`.
pub fn parse_substitution(text: &str) -> Result<Substitution> {
    parse_all(text, Parser::substitution)
}

/// `[2 1 3]` or `2 1 3`.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    parse_all(text, Parser::permutation)
}

/// Splits a line-oriented file into `(line number, keyword, parser on the
/// rest of the line)`, skipping blank and comment lines.
fn keyword_lines(text: &str) -> Result<Vec<(usize, String, Parser)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut p = Parser::new(line, i + 1)?;
        if p.peek() == &Tok::End {
            continue;
        }
        let kw = p.ident("a keyword")?;
        out.push((i + 1, kw, p));
    }
    Ok(out)
}

fn duplicate(line: usize, kw: &str) -> Error {
    Error::syntax(line, 1, format!("`{kw}` given twice"))
}

fn missing(kw: &str) -> Error {
    Error::syntax(1, 1, format!("missing `{kw}` line"))
}

/// ```text
/// alphabet 0 1
/// word 0 1 1
/// ```
/// `star` is implicit in the alphabet; an empty `word` line is the empty
/// word.
pub fn parse_word_file(text: &str) -> Result<Word> {
    let mut alphabet = None;
    let mut letters = None;
    for (line, kw, mut p) in keyword_lines(text)? {
        let slot = match kw.as_str() {
            "alphabet" => &mut alphabet,
            "word" => &mut letters,
            _ => return Err(Error::syntax(line, 1, format!("unknown keyword `{kw}`"))),
        };
        if slot.is_some() {
            return Err(duplicate(line, &kw));
        }
        let names = p.symbols()?;
        p.finish()?;
        *slot = Some(names);
    }
    let alphabet: Vec<Symbol> = alphabet.ok_or_else(|| missing("alphabet"))?;
    let alphabet: Vec<Symbol> = alphabet.into_iter().filter(|c| *c != reserved::star()).collect();
    Word::new(&alphabet, letters.ok_or_else(|| missing("word"))?)
}

fn join_symbols(symbols: &[Symbol]) -> String {
    symbols.iter().map(|s| format!(" {s}")).collect()
}

pub fn render_word_file(word: &Word) -> String {
    format!(
        "alphabet{}\nword{}\n",
        join_symbols(&word.alphabet()[1..]),
        join_symbols(word.letters())
    )
}

/// An observation file before validation: its declared alphabet (without
/// `star`) and its wiring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationFile {
    pub alphabet: Vec<Symbol>,
    pub wiring: Wiring,
}

/// An `alphabet` line followed by a wiring that may span several lines.
pub fn parse_observation_file(text: &str) -> Result<ObservationFile> {
    let mut rest_start = None;
    let mut alphabet = None;
    for (i, line) in text.lines().enumerate() {
        let mut p = Parser::new(line, i + 1)?;
        if p.peek() == &Tok::End {
            continue;
        }
        if alphabet.is_none() {
            if p.ident("`alphabet`")? != "alphabet" {
                return Err(Error::syntax(i + 1, 1, "expected `alphabet`"));
            }
            let names = p.symbols()?;
            p.finish()?;
            alphabet = Some(names);
            continue;
        }
        rest_start = Some(i);
        break;
    }
    let alphabet: Vec<Symbol> = alphabet
        .ok_or_else(|| missing("alphabet"))?
        .into_iter()
        .filter(|c| *c != reserved::star())
        .collect();
    let Some(start) = rest_start else {
        return Err(missing("wiring"));
    };
    let body: Vec<&str> = text.lines().skip(start).collect();
    let mut p = Parser::new(&body.join("\n"), start + 1)?;
    let wiring = p.wiring()?;
    p.finish()?;
    Ok(ObservationFile { alphabet, wiring })
}

pub fn render_observation_file(file: &ObservationFile) -> String {
    format!("alphabet{}\n{}\n", join_symbols(&file.alphabet), file.wiring)
}

/// ```text
/// pointers 2
/// states s t
/// alphabet 0
/// trans s 0 r -> t star l [2 1]
/// ```
/// The permutation is optional (identity) and may be shorter than the
/// pointer count.
pub fn parse_machine_file(text: &str) -> Result<PointerMachine> {
    let mut pointers = None;
    let mut states = None;
    let mut alphabet = None;
    let mut rules = Vec::new();
    for (line, kw, mut p) in keyword_lines(text)? {
        match kw.as_str() {
            "pointers" => {
                if pointers.is_some() {
                    return Err(duplicate(line, &kw));
                }
                pointers = Some(p.number()?);
            }
            "states" | "alphabet" => {
                let slot = if kw == "states" { &mut states } else { &mut alphabet };
                if slot.is_some() {
                    return Err(duplicate(line, &kw));
                }
                *slot = Some(p.symbols()?);
            }
            "trans" => {
                let state = Symbol::intern(&p.ident("a state")?);
                let letter = Symbol::intern(&p.ident("a letter")?);
                let direction = p.direction()?;
                p.expect(&Tok::RArrow)?;
                let next_state = Symbol::intern(&p.ident("a state")?);
                let next_letter = Symbol::intern(&p.ident("a letter")?);
                let next_direction = p.direction()?;
                let perm = if p.peek() == &Tok::End {
                    None
                } else {
                    Some(p.permutation()?)
                };
                rules.push(Rule {
                    state,
                    letter,
                    direction,
                    next_state,
                    next_letter,
                    next_direction,
                    perm: perm.unwrap_or_else(|| Permutation::identity(0)),
                });
            }
            _ => return Err(Error::syntax(line, 1, format!("unknown keyword `{kw}`"))),
        }
        p.finish()?;
    }
    let alphabet: Vec<Symbol> = alphabet
        .ok_or_else(|| missing("alphabet"))?
        .into_iter()
        .filter(|c| *c != reserved::star())
        .collect();
    PointerMachine::new(
        pointers.ok_or_else(|| missing("pointers"))?,
        states.ok_or_else(|| missing("states"))?,
        &alphabet,
        rules,
    )
}

pub fn render_machine_file(m: &PointerMachine) -> String {
    let mut out = format!(
        "pointers {}\nstates{}\nalphabet{}\n",
        m.pointer_count(),
        join_symbols(m.states()),
        join_symbols(&m.alphabet()[1..])
    );
    for r in m.rules() {
        out.push_str(&format!(
            "trans {} {} {} -> {} {} {} {}\n",
            r.state, r.letter, r.direction, r.next_state, r.next_letter, r.next_direction, r.perm
        ));
    }
    out
}

/// One closed term per line.
pub fn parse_positions_file(text: &str) -> Result<PositionTerms> {
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut p = Parser::new(line, i + 1)?;
        if p.peek() == &Tok::End {
            continue;
        }
        terms.push(p.term()?);
        p.finish()?;
    }
    PositionTerms::new(terms)
}

pub fn render_positions_file(positions: &PositionTerms) -> String {
    positions.terms().iter().map(|t| format!("{t}\n")).collect()
}
