//! Wirings (finite linear combinations of flows) and their action on the
//! free vector space over closed terms.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::flow::Flow;
use crate::term::{disjoint, Term};

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Coefficient>, key: K, coef: Coefficient) {
    if coef.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coef);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &coef;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// A wiring in normal form: canonical flows mapped to nonzero coefficients.
/// The zero wiring is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Wiring {
    entries: BTreeMap<Flow, Coefficient>,
}

impl Wiring {
    pub fn zero() -> Wiring {
        Wiring::default()
    }

    pub fn identity() -> Wiring {
        Wiring::from(Flow::identity())
    }

    pub fn from_terms<I>(terms: I) -> Wiring
    where
        I: IntoIterator<Item = (Coefficient, Flow)>,
    {
        let mut w = Wiring::zero();
        for (c, f) in terms {
            w.add_term(f, c);
        }
        w
    }

    /// Sum of the given flows, each with coefficient 1 (merged if repeated).
    pub fn sum_of<I: IntoIterator<Item = Flow>>(flows: I) -> Wiring {
        Wiring::from_terms(flows.into_iter().map(|f| (Coefficient::one(), f)))
    }

    pub fn add_term(&mut self, flow: Flow, coef: Coefficient) {
        accumulate(&mut self.entries, flow, coef);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Flow, Coefficient> {
        self.entries.iter()
    }

    pub fn flows(&self) -> impl Iterator<Item = &Flow> {
        self.entries.keys()
    }

    pub fn coefficient(&self, flow: &Flow) -> Option<&Coefficient> {
        self.entries.get(flow)
    }

    pub fn add(&self, other: &Wiring) -> Wiring {
        let mut out = self.clone();
        for (f, c) in &other.entries {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, lambda: &Coefficient) -> Wiring {
        if lambda.is_zero() {
            return Wiring::zero();
        }
        Wiring {
            entries: self
                .entries
                .iter()
                .map(|(f, c)| (f.clone(), lambda * c))
                .collect(),
        }
    }

    /// Product; pairs whose flow product is undefined contribute nothing.
    pub fn mul(&self, other: &Wiring) -> Wiring {
        let mut out = Wiring::zero();
        for (l, lambda) in &self.entries {
            for (k, mu) in &other.entries {
                if let Some(lk) = l.product(k) {
                    out.add_term(lk, lambda * mu);
                }
            }
        }
        out
    }

    /// Conjugated coefficients on daggered flows.
    pub fn dagger(&self) -> Wiring {
        Wiring {
            entries: self
                .entries
                .iter()
                .map(|(f, c)| (f.dagger(), c.conj()))
                .collect(),
        }
    }

    /// Bilinear extension of the flow tensor product.
    pub fn tensor(&self, other: &Wiring) -> Wiring {
        let mut out = Wiring::zero();
        for (l, lambda) in &self.entries {
            for (k, mu) in &other.entries {
                out.add_term(l.tensor(k), lambda * mu);
            }
        }
        out
    }

    /// `F^n`, with `F^0` the unit.
    pub fn pow(&self, n: usize) -> Wiring {
        (0..n).fold(Wiring::identity(), |acc, _| acc.mul(self))
    }

    /// Linear action on a vector of closed terms.
    pub fn apply(&self, v: &TermVector) -> TermVector {
        let mut out = TermVector::zero();
        for (t, lambda) in &v.entries {
            for (f, mu) in &self.entries {
                if let Some(image) = f.apply_closed(t) {
                    accumulate(&mut out.entries, image, mu * lambda);
                }
            }
        }
        out
    }

    /// Action on a single closed term.
    pub fn apply_term(&self, t: &Term) -> Result<TermVector> {
        Ok(self.apply(&TermVector::basis(t.clone())?))
    }

    /// All coefficients equal 1.
    pub fn is_concrete(&self) -> bool {
        self.entries.values().all(Coefficient::is_one)
    }

    /// `U U† U = U`, computed directly.
    pub fn is_partial_isometry(&self) -> bool {
        self.mul(&self.dagger()).mul(self) == *self
    }

    /// Concrete, with pairwise disjoint left sides and pairwise disjoint
    /// right sides.
    pub fn is_isometric(&self) -> bool {
        if !self.is_concrete() {
            return false;
        }
        let flows: Vec<&Flow> = self.entries.keys().collect();
        for (i, a) in flows.iter().enumerate() {
            for b in &flows[i + 1..] {
                if !disjoint(a.lhs(), b.lhs()) || !disjoint(a.rhs(), b.rhs()) {
                    return false;
                }
            }
        }
        true
    }
}

impl From<Flow> for Wiring {
    fn from(flow: Flow) -> Self {
        Wiring::sum_of([flow])
    }
}

impl FromIterator<(Flow, Coefficient)> for Wiring {
    fn from_iter<I: IntoIterator<Item = (Flow, Coefficient)>>(iter: I) -> Self {
        Wiring::from_terms(iter.into_iter().map(|(f, c)| (c, f)))
    }
}

/// Renders as `coef * (lhs <- rhs) + ...` with summands sorted by their
/// text, `0` for the zero wiring and the coefficient omitted when it is 1.
impl fmt::Display for Wiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<String> = self
            .entries
            .iter()
            .map(|(flow, c)| {
                if c.is_one() {
                    format!("({flow})")
                } else if c.is_real() {
                    format!("{c} * ({flow})")
                } else {
                    format!("({c}) * ({flow})")
                }
            })
            .collect();
        items.sort();
        f.write_str(&items.join(" + "))
    }
}

impl fmt::Debug for Wiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A vector of the free space over closed terms, with no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TermVector {
    entries: BTreeMap<Term, Coefficient>,
}

impl TermVector {
    pub fn zero() -> TermVector {
        TermVector::default()
    }

    /// The basis vector of a closed term.
    pub fn basis(t: Term) -> Result<TermVector> {
        let mut v = TermVector::zero();
        v.add_term(t, Coefficient::one())?;
        Ok(v)
    }

    pub fn add_term(&mut self, t: Term, coef: Coefficient) -> Result<()> {
        if !t.is_closed() {
            return Err(Error::NotClosed(t.to_string()));
        }
        accumulate(&mut self.entries, t, coef);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, t: &Term) -> Option<&Coefficient> {
        self.entries.get(t)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Term, Coefficient> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.entries.keys()
    }

    pub fn add(&self, other: &TermVector) -> TermVector {
        let mut out = self.clone();
        for (t, c) in &other.entries {
            accumulate(&mut out.entries, t.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for TermVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<String> = self
            .entries
            .iter()
            .map(|(t, c)| {
                if c.is_one() {
                    format!("[{t}]")
                } else if c.is_real() {
                    format!("{c} * [{t}]")
                } else {
                    format!("({c}) * [{t}]")
                }
            })
            .collect();
        items.sort();
        f.write_str(&items.join(" + "))
    }
}

impl fmt::Debug for TermVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
