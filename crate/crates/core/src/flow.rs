//! Flows: oriented pairs of terms with the same variables, taken up to
//! renaming, composed by unification.

use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;
use crate::term::{match_linear_unchecked, mgu, Substitution, Term};

/// A flow `lhs <- rhs` in canonical renaming form.
///
/// Variables are named `v1, v2, ...` in order of first occurrence in a
/// preorder traversal of `lhs`, so structural equality is equality up to
/// renaming.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flow {
    lhs: Term,
    rhs: Term,
    nvars: u32,
    rhs_linear: bool,
}

impl Flow {
    /// Fails unless both sides have the same variable set.
    pub fn new(lhs: Term, rhs: Term) -> Result<Flow> {
        let mut lv = lhs.vars();
        let mut rv = rhs.vars();
        lv.sort_unstable();
        rv.sort_unstable();
        if lv != rv {
            return Err(Error::FlowVariables {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        Ok(Flow::canonical(lhs, rhs))
    }

    /// Canonicalizes a pair already known to satisfy the variable condition.
    pub(crate) fn canonical(lhs: Term, rhs: Term) -> Flow {
        let vars = lhs.vars();
        let nvars = vars.len() as u32;
        let already = vars
            .iter()
            .enumerate()
            .all(|(i, v)| *v == Symbol::canonical_var(i + 1));
        let (lhs, rhs) = if already {
            (lhs, rhs)
        } else {
            let mut rename = |v: Symbol| {
                vars.iter()
                    .position(|w| *w == v)
                    .map(|i| Term::Var(Symbol::canonical_var(i + 1)))
            };
            let l = lhs.map_vars(&mut rename).unwrap_or(lhs);
            let r = rhs.map_vars(&mut rename).unwrap_or(rhs);
            (l, r)
        };
        let rhs_linear = rhs.is_linear();
        Flow {
            lhs,
            rhs,
            nvars,
            rhs_linear,
        }
    }

    /// The unit `?x <- ?x`.
    pub fn identity() -> Flow {
        let v = Term::Var(Symbol::canonical_var(1));
        Flow::canonical(v.clone(), v)
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn var_count(&self) -> usize {
        self.nvars as usize
    }

    pub fn is_closed(&self) -> bool {
        self.nvars == 0
    }

    /// `(t <- u)† = u <- t`.
    pub fn dagger(&self) -> Flow {
        Flow::canonical(self.rhs.clone(), self.lhs.clone())
    }

    /// Both sides with variables renamed to fresh symbols starting at
    /// `offset`, apart from any canonical flow.
    fn renamed_apart(&self, offset: u32) -> (Term, Term) {
        if self.nvars == 0 {
            return (self.lhs.clone(), self.rhs.clone());
        }
        let vars = self.lhs.vars();
        let mut rename = |v: Symbol| {
            vars.iter()
                .position(|w| *w == v)
                .map(|i| Term::Var(Symbol::fresh(offset + i as u32)))
        };
        let l = self.lhs.map_vars(&mut rename).unwrap_or_else(|| self.lhs.clone());
        let r = self.rhs.map_vars(&mut rename).unwrap_or_else(|| self.rhs.clone());
        (l, r)
    }

    /// `(u <- v)(t <- w) = u.θ <- w.θ` where `θ` unifies `v` and `t` after
    /// renaming apart; `None` when they do not unify.
    pub fn product(&self, other: &Flow) -> Option<Flow> {
        let (t, w) = other.renamed_apart(0);
        let theta = mgu(&self.rhs, &t)?;
        Some(Flow::canonical(theta.apply(&self.lhs), theta.apply(&w)))
    }

    /// Action on a closed term: `(u <- v)(t) = u.θ` when `v` matches `t`.
    pub fn apply(&self, t: &Term) -> Result<Option<Term>> {
        if !t.is_closed() {
            return Err(Error::NotClosed(t.to_string()));
        }
        Ok(self.apply_closed(t))
    }

    /// [`Flow::apply`] for a term already known to be closed.
    pub(crate) fn apply_closed(&self, t: &Term) -> Option<Term> {
        let theta: Substitution = if self.rhs_linear {
            match_linear_unchecked(&self.rhs, t)?
        } else {
            mgu(&self.rhs, t)?
        };
        Some(theta.apply(&self.lhs))
    }

    /// `(u <- v) ⊗ (t <- w) = u . t <- v . w` with the operands renamed apart.
    pub fn tensor(&self, other: &Flow) -> Flow {
        let (t, w) = other.renamed_apart(0);
        Flow::canonical(
            Term::pair(self.lhs.clone(), t),
            Term::pair(self.rhs.clone(), w),
        )
    }

    /// `p1 . ... . pk . lhs <- q1 . ... . qk . rhs` for closed prefixes.
    pub(crate) fn with_closed_prefix(&self, lhs_prefix: &[Term], rhs_prefix: &[Term]) -> Flow {
        debug_assert!(lhs_prefix.iter().chain(rhs_prefix).all(Term::is_closed));
        let wrap = |prefix: &[Term], tail: &Term| {
            prefix
                .iter()
                .rev()
                .fold(tail.clone(), |acc, p| Term::pair(p.clone(), acc))
        };
        Flow::canonical(wrap(lhs_prefix, &self.lhs), wrap(rhs_prefix, &self.rhs))
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <- {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
