//! First-order terms over a single binary constructor, substitutions,
//! unification and matching.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A first-order term: a variable, a constant, or a pair `left . right`.
///
/// Variables and constants live in separate namespaces; `?x` and `x` are
/// different symbols of different kinds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Symbol),
    Const(Symbol),
    Pair(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Symbol::intern(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(Symbol::intern(name))
    }

    pub fn pair(left: Term, right: Term) -> Term {
        Term::Pair(Arc::new(left), Arc::new(right))
    }

    /// Right-associated chain `t1 . t2 . ... . tn`.
    ///
    /// Panics on an empty iterator.
    pub fn chain<I>(items: I) -> Term
    where
        I: IntoIterator<Item = Term>,
        I::IntoIter: DoubleEndedIterator,
    {
        let mut rev = items.into_iter().rev();
        let mut acc = rev.next().expect("Term::chain needs at least one term");
        for t in rev {
            acc = Term::pair(t, acc);
        }
        acc
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Pair(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Variables in order of first occurrence (preorder, left to right).
    pub fn vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Symbol>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::Const(_) => {}
            Term::Pair(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::Pair(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    /// Every variable occurs at most once.
    pub fn is_linear(&self) -> bool {
        fn walk(t: &Term, seen: &mut Vec<Symbol>) -> bool {
            match t {
                Term::Var(v) => {
                    if seen.contains(v) {
                        false
                    } else {
                        seen.push(*v);
                        true
                    }
                }
                Term::Const(_) => true,
                Term::Pair(a, b) => walk(a, seen) && walk(b, seen),
            }
        }
        walk(self, &mut Vec::new())
    }

    pub fn occurs(&self, var: Symbol) -> bool {
        match self {
            Term::Var(v) => *v == var,
            Term::Const(_) => false,
            Term::Pair(a, b) => a.occurs(var) || b.occurs(var),
        }
    }

    /// Rebuilds the term with `f` applied to each variable occurrence.
    /// Returns `None` when nothing changed, so unchanged subterms keep
    /// sharing their allocation.
    pub(crate) fn map_vars<F>(&self, f: &mut F) -> Option<Term>
    where
        F: FnMut(Symbol) -> Option<Term>,
    {
        match self {
            Term::Var(v) => f(*v),
            Term::Const(_) => None,
            Term::Pair(a, b) => {
                let na = a.map_vars(f);
                let nb = b.map_vars(f);
                if na.is_none() && nb.is_none() {
                    return None;
                }
                Some(Term::Pair(
                    na.map_or_else(|| a.clone(), Arc::new),
                    nb.map_or_else(|| b.clone(), Arc::new),
                ))
            }
        }
    }

    /// Renames variables to fresh symbols `offset, offset + 1, ...` in order
    /// of first occurrence. Returns the renamed term and the number of
    /// variables used.
    pub(crate) fn rename_fresh(&self, offset: u32) -> (Term, u32) {
        let mut seen: Vec<Symbol> = Vec::new();
        let renamed = self
            .map_vars(&mut |v| {
                let idx = match seen.iter().position(|s| *s == v) {
                    Some(i) => i,
                    None => {
                        seen.push(v);
                        seen.len() - 1
                    }
                };
                Some(Term::Var(Symbol::fresh(offset + idx as u32)))
            })
            .unwrap_or_else(|| self.clone());
        (renamed, seen.len() as u32)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Pair(a, b) => {
                if matches!(**a, Term::Pair(..)) {
                    write!(f, "({a}) . {b}")
                } else {
                    write!(f, "{a} . {b}")
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite map from variables to terms. Identity bindings are never stored,
/// so the key set is exactly the domain.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Substitution {
    // sorted by variable, unique keys
    bindings: Vec<(Symbol, Term)>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Builds a substitution, dropping identity bindings. Later bindings for
    /// the same variable win.
    pub fn from_bindings<I>(bindings: I) -> Substitution
    where
        I: IntoIterator<Item = (Symbol, Term)>,
    {
        let mut s = Substitution::new();
        for (v, t) in bindings {
            s.insert(v, t);
        }
        s
    }

    fn insert(&mut self, var: Symbol, term: Term) {
        let identity = matches!(term, Term::Var(w) if w == var);
        match self.bindings.binary_search_by_key(&var, |(v, _)| *v) {
            Ok(i) if identity => {
                self.bindings.remove(i);
            }
            Ok(i) => self.bindings[i].1 = term,
            Err(_) if identity => {}
            Err(i) => self.bindings.insert(i, (var, term)),
        }
    }

    pub fn get(&self, var: Symbol) -> Option<&Term> {
        self.bindings
            .binary_search_by_key(&var, |(v, _)| *v)
            .ok()
            .map(|i| &self.bindings[i].1)
    }

    pub fn domain(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.bindings.iter().map(|(v, _)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &Term)> {
        self.bindings.iter().map(|(v, t)| (*v, t))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// `t.θ`: every variable occurrence replaced by its binding.
    pub fn apply(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        t.map_vars(&mut |v| self.get(v).cloned())
            .unwrap_or_else(|| t.clone())
    }

    /// Composition `self ; other`, so that `t.(θ;ψ) = (t.θ).ψ`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (x, u) in &self.bindings {
            out.insert(*x, other.apply(u));
        }
        for (y, v) in &other.bindings {
            if self.get(*y).is_none() {
                out.insert(*y, v.clone());
            }
        }
        out
    }

    /// Binds `var` to `term` and applies `{var ↦ term}` to all existing
    /// bindings. `term` must not mention bound variables or `var` itself.
    fn bind_eager(&mut self, var: Symbol, term: Term) {
        let single = Substitution {
            bindings: vec![(var, term.clone())],
        };
        for (_, t) in &mut self.bindings {
            if t.occurs(var) {
                *t = single.apply(t);
            }
        }
        self.insert(var, term);
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<(String, &Term)> = self
            .bindings
            .iter()
            .map(|(v, t)| (v.name().to_string(), t))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        f.write_str("{")?;
        for (i, (v, t)) in entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "?{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Most general unifier of `t` and `u`, or `None` when they do not unify
/// (constant clash, shape clash or occurs-check failure).
///
/// Robinson-style decomposition over a triangular substitution that is kept
/// idempotent by applying every new binding eagerly.
pub fn mgu(t: &Term, u: &Term) -> Option<Substitution> {
    let mut subst = Substitution::new();
    let mut stack: Vec<(Term, Term)> = vec![(t.clone(), u.clone())];
    while let Some((a, b)) = stack.pop() {
        let a = resolve(&subst, a);
        let b = resolve(&subst, b);
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), other) | (other, Term::Var(x)) => {
                let other = subst.apply(&other);
                if other.occurs(x) {
                    return None;
                }
                subst.bind_eager(x, other);
            }
            (Term::Const(c), Term::Const(d)) => {
                if c != d {
                    return None;
                }
            }
            (Term::Pair(a1, a2), Term::Pair(b1, b2)) => {
                stack.push(((*a2).clone(), (*b2).clone()));
                stack.push(((*a1).clone(), (*b1).clone()));
            }
            _ => return None,
        }
    }
    Some(subst)
}

fn resolve(subst: &Substitution, t: Term) -> Term {
    match t {
        Term::Var(v) => subst.get(v).cloned().unwrap_or(Term::Var(v)),
        other => other,
    }
}

/// Matches a linear pattern against a closed term in one simultaneous
/// traversal. `Ok(None)` is an ordinary mismatch.
pub fn match_linear_closed(pattern: &Term, t: &Term) -> Result<Option<Substitution>> {
    if !pattern.is_linear() {
        return Err(Error::NonLinearPattern(pattern.to_string()));
    }
    if !t.is_closed() {
        return Err(Error::NotClosed(t.to_string()));
    }
    Ok(match_linear_unchecked(pattern, t))
}

/// [`match_linear_closed`] without the precondition checks.
pub(crate) fn match_linear_unchecked(pattern: &Term, t: &Term) -> Option<Substitution> {
    fn walk(p: &Term, t: &Term, out: &mut Vec<(Symbol, Term)>) -> bool {
        match (p, t) {
            (Term::Var(v), _) => {
                out.push((*v, t.clone()));
                true
            }
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::Pair(p1, p2), Term::Pair(t1, t2)) => walk(p1, t1, out) && walk(p2, t2, out),
            _ => false,
        }
    }
    let mut bindings = Vec::new();
    if !walk(pattern, t, &mut bindings) {
        return None;
    }
    bindings.sort_unstable_by_key(|(v, _)| *v);
    Some(Substitution { bindings })
}

/// Two terms are disjoint when they do not unify even after renaming their
/// variables apart.
pub fn disjoint(t: &Term, u: &Term) -> bool {
    let (t_apart, _) = t.rename_fresh(0);
    mgu(&t_apart, u).is_none()
}

/// Terms are matchable when they unify after renaming apart.
pub fn matchable(t: &Term, u: &Term) -> bool {
    !disjoint(t, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn subst(pairs: &[(&str, &str)]) -> Substitution {
        Substitution::from_bindings(pairs.iter().map(|(v, x)| (Symbol::intern(v), t(x))))
    }

    #[test]
    fn apply_replaces_variables() {
        assert_eq!(subst(&[("x", "d")]).apply(&t("?x . c")), t("d . c"));
        assert_eq!(subst(&[("x", "d")]).apply(&t("c")), t("c"));
    }

    #[test]
    fn compose_with_empty_left() {
        let psi = subst(&[("y", "c")]);
        assert_eq!(Substitution::new().compose(&psi), psi);
    }

    #[test]
    fn compose_chains_bindings() {
        let theta = subst(&[("x", "?y")]);
        let psi = subst(&[("y", "c")]);
        assert_eq!(theta.compose(&psi), subst(&[("x", "c"), ("y", "c")]));
    }

    #[test]
    fn compose_drops_shadowed_binding() {
        let theta = subst(&[("x", "c")]);
        let psi = subst(&[("x", "d")]);
        assert_eq!(theta.compose(&psi), subst(&[("x", "c")]));
    }

    #[test]
    fn compose_prunes_identity() {
        let theta = subst(&[("x", "?y")]);
        let psi = subst(&[("y", "?x")]);
        // x ↦ y.ψ = x is an identity binding and disappears
        assert_eq!(theta.compose(&psi), subst(&[("y", "?x")]));
    }

    #[test]
    fn identity_bindings_are_not_stored() {
        let s = subst(&[("x", "?x"), ("y", "c")]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.domain().collect::<Vec<_>>(), vec![Symbol::intern("y")]);
    }

    #[test]
    fn occurs_check_blocks_unification() {
        assert!(mgu(&t("?x"), &t("c . ?x")).is_none());
    }

    #[test]
    fn mgu_of_identical_closed_terms_is_empty() {
        let c = t("a . (b . c) . d");
        assert_eq!(mgu(&c, &c), Some(Substitution::new()));
    }

    #[test]
    fn mgu_decomposes_pairs() {
        assert_eq!(
            mgu(&t("?x . c"), &t("d . ?y")),
            Some(subst(&[("x", "d"), ("y", "c")]))
        );
    }

    #[test]
    fn mgu_is_idempotent_through_chains() {
        let theta = mgu(&t("?x . ?y . ?z"), &t("?y . ?z . c")).unwrap();
        assert_eq!(theta.apply(&t("?x")), t("c"));
        assert_eq!(theta.apply(&t("?y")), t("c"));
        assert_eq!(theta.compose(&theta), theta);
    }

    #[test]
    fn mgu_clashes() {
        assert!(mgu(&t("c"), &t("d")).is_none());
        assert!(mgu(&t("c"), &t("c . d")).is_none());
        assert!(mgu(&t("?x . ?x"), &t("c . d")).is_none());
    }

    #[test]
    fn match_examples() {
        assert_eq!(
            match_linear_closed(&t("?x . c . c"), &t("d . c . c")).unwrap(),
            Some(subst(&[("x", "d")]))
        );
        assert_eq!(
            match_linear_closed(&t("c"), &t("c")).unwrap(),
            Some(Substitution::new())
        );
        assert_eq!(match_linear_closed(&t("?x . ?y"), &t("c")).unwrap(), None);
    }

    #[test]
    fn match_rejects_bad_inputs() {
        assert!(matches!(
            match_linear_closed(&t("?x . ?x"), &t("c . c")),
            Err(Error::NonLinearPattern(_))
        ));
        assert!(matches!(
            match_linear_closed(&t("?x"), &t("?y")),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn disjointness_examples() {
        assert!(!disjoint(&t("?x"), &t("c . ?x")));
        assert!(disjoint(&t("c"), &t("d")));
        let u = t("?x . (c . ?y) . ?x");
        assert!(!disjoint(&u, &u));
        assert!(disjoint(&t("?x . ?x . c"), &t("a . b . ?z")));
    }

    #[test]
    fn term_predicates() {
        let u = t("?x . c . ?y");
        assert_eq!(u.size(), 5);
        assert!(!u.is_closed());
        assert!(u.is_linear());
        assert!(!t("?x . ?x").is_linear());
        assert_eq!(u.vars(), vec![Symbol::intern("x"), Symbol::intern("y")]);
    }
}
