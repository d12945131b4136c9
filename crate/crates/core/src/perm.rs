//! Finite permutations and their representation as flows acting on the
//! first components of a right-nested tuple.

use std::fmt;

use crate::error::{Error, Result};
use crate::flow::Flow;
use crate::symbol::Symbol;
use crate::term::Term;

/// A permutation of `{1..n}` stored as its image list: `images[k - 1] = σ(k)`.
///
/// Each arity has its own identity; `[1]` and `[1 2]` are different values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition of `i` and `j` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n, "transposition out of range");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)`; points beyond the arity are fixed.
    pub fn apply(&self, i: usize) -> usize {
        match self.images.get(i.wrapping_sub(1)) {
            Some(&j) => j,
            None => i,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| i == k + 1)
    }

    /// `σ₊k`: extended to `{1..n+k}` fixing the new points.
    pub fn lift(&self, k: usize) -> Permutation {
        let n = self.arity();
        let mut images = self.images.clone();
        images.extend(n + 1..=n + k);
        Permutation { images }
    }

    /// Largest point moved, 0 for an identity.
    pub fn largest_moved(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .rev()
            .find(|(k, &i)| i != k + 1)
            .map_or(0, |(k, _)| k + 1)
    }

    /// The same permutation at arity `n`, lifting or dropping fixed points.
    /// `None` if a point above `n` is moved.
    pub fn with_arity(&self, n: usize) -> Option<Permutation> {
        if n >= self.arity() {
            return Some(self.lift(n - self.arity()));
        }
        (self.largest_moved() <= n).then(|| Permutation {
            images: self.images[..n].to_vec(),
        })
    }

    /// `self ∘ other`, lifting the shorter one to the common arity.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.arity().max(other.arity());
        Permutation {
            images: (1..=n).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.arity()];
        for (k, &i) in self.images.iter().enumerate() {
            images[i - 1] = k + 1;
        }
        Permutation { images }
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i + 1);
                    extend(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// `[σ] = x1 . ... . xn . y <- xσ(1) . ... . xσ(n) . y`.
    ///
    /// Applied to `a1 . ... . an . tail` it yields the tuple whose slot `i`
    /// holds `a_{σ⁻¹(i)}`.
    pub fn flow(&self) -> Flow {
        let n = self.arity();
        let x = |i: usize| Term::Var(Symbol::canonical_var(i));
        let y = x(n + 1);
        let lhs = Term::chain((1..=n).map(x).chain(std::iter::once(y.clone())));
        let rhs = Term::chain(self.images.iter().map(|&i| x(i)).chain(std::iter::once(y)));
        Flow::canonical(lhs, rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
