//! Deciding nilpotency of `φ · W(t0, ..., tn)` on the computation space.
//!
//! The decision path builds the transition graph of the operator on the
//! basis and checks it for cycles: coefficients are nonnegative, so no
//! cancellation can occur and the operator is nilpotent exactly when every
//! walk is finite. Isometric observations follow single orbits instead, each
//! capped at the dimension of the space. [`symbolic_nilpotent`] computes
//! powers of the wiring itself and is kept as an independent check.

use crate::error::{Error, Result};
use crate::observation::{ComputationSpace, Observation};
use crate::wiring::{TermVector, Wiring};
use crate::word::{encode_word, PositionTerms, Word};

/// Directed multigraph on basis indices: an edge `v -> v'` with weight `k`
/// means `v'` has coefficient `k` in `(φW)(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    edges: Vec<Vec<(usize, u64)>>,
}

impl TransitionGraph {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn successors(&self, node: usize) -> &[(usize, u64)] {
        &self.edges[node]
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.edges[node].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Some cycle as a list of nodes, if there is one.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let n = self.edges.len();
        let mut color = vec![WHITE; n];
        // (node, next edge to visit)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if color[root] != WHITE {
                continue;
            }
            color[root] = GREY;
            stack.push((root, 0));
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&(succ, _)) = self.edges[node].get(*next) {
                    *next += 1;
                    match color[succ] {
                        WHITE => {
                            color[succ] = GREY;
                            stack.push((succ, 0));
                        }
                        GREY => {
                            let start = stack.iter().position(|(v, _)| *v == succ).unwrap();
                            return Some(stack[start..].iter().map(|(v, _)| *v).collect());
                        }
                        _ => {}
                    }
                } else {
                    color[node] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }
}

/// The graph of `operator` on `space`: one application per basis term.
/// Fails if an image leaves the basis or carries a weight that is not a
/// positive integer.
pub fn operator_graph(operator: &Wiring, space: &ComputationSpace) -> Result<TransitionGraph> {
    let flows: Vec<_> = operator.iter().collect();
    let mut edges = Vec::with_capacity(space.len());
    for (from, v) in space.basis().iter().enumerate() {
        let mut out: Vec<(usize, u64)> = Vec::new();
        for (flow, coef) in &flows {
            let Some(image) = flow.apply_closed(v) else {
                continue;
            };
            let to = space.index_of(&image).ok_or_else(|| Error::OutOfBasis {
                from,
                term: image.to_string(),
            })?;
            let weight = coef
                .as_positive_integer()
                .ok_or_else(|| Error::NegativeWeight(coef.to_string()))?;
            match out.iter_mut().find(|(t, _)| *t == to) {
                Some((_, w)) => *w += weight,
                None => out.push((to, weight)),
            }
        }
        out.sort_unstable();
        edges.push(out);
    }
    Ok(TransitionGraph { edges })
}

/// Graph of `φ · wrep` on `space`, where `wrep` encodes a word over the
/// positions of `space`.
pub fn build_graph(
    obs: &Observation,
    wrep: &Wiring,
    space: &ComputationSpace,
) -> Result<TransitionGraph> {
    operator_graph(&obs.normalized().mul(wrep), space)
}

/// Nilpotency on the space: the graph has no cycle.
pub fn is_nilpotent_on_space(graph: &TransitionGraph) -> bool {
    graph.find_cycle().is_none()
}

/// Deterministic check for isometric observations: every orbit must reach
/// zero within `dim(space)` steps. Nodes already seen to die are not
/// followed again.
pub fn isometric_run(obs: &Observation, wrep: &Wiring, space: &ComputationSpace) -> Result<bool> {
    if !obs.is_isometric() {
        return Err(Error::NotIsometric);
    }
    let operator = obs.normalized().mul(wrep);
    let bound = space.len();
    let mut dies = vec![false; space.len()];
    let mut path = Vec::new();
    for start in 0..space.len() {
        path.clear();
        let mut current = start;
        let mut steps = 0usize;
        loop {
            if dies[current] {
                break;
            }
            path.push(current);
            let image = operator.apply(&TermVector::basis(space.term(current).clone())?);
            let mut support = image.support();
            let Some(next) = support.next() else {
                break;
            };
            if support.next().is_some() {
                return Err(Error::NotIsometric);
            }
            steps += 1;
            if steps > bound {
                return Ok(false);
            }
            current = space.index_of(next).ok_or_else(|| Error::OutOfBasis {
                from: current,
                term: next.to_string(),
            })?;
        }
        for &v in &path {
            dies[v] = true;
        }
    }
    Ok(true)
}

/// `F^k = 0` for some `1 <= k <= bound`, by repeated multiplication.
pub fn symbolic_nilpotent(f: &Wiring, bound: usize) -> bool {
    let mut power = f.clone();
    for _ in 0..bound {
        if power.is_zero() {
            return true;
        }
        power = power.mul(f);
    }
    false
}

/// Decision on a prepared space and word encoding: [`isometric_run`] for
/// isometric observations, cycle search on the transition graph otherwise.
pub fn accepts_in(obs: &Observation, wrep: &Wiring, space: &ComputationSpace) -> Result<bool> {
    if obs.is_isometric() {
        isometric_run(obs, wrep, space)
    } else {
        Ok(is_nilpotent_on_space(&build_graph(obs, wrep, space)?))
    }
}

/// `W ∈ L(φ)`: `φ · W(pos)` is nilpotent.
pub fn accepts(obs: &Observation, word: &Word, positions: &PositionTerms) -> Result<bool> {
    check_word(obs, word)?;
    let wrep = encode_word(word, positions)?;
    let space = ComputationSpace::for_observation(obs, positions);
    accepts_in(obs, &wrep, &space)
}

/// Every letter of `word` must belong to the observation's alphabet.
pub fn check_word(obs: &Observation, word: &Word) -> Result<()> {
    match word.letters().iter().find(|c| !obs.alphabet().contains(c)) {
        Some(c) => Err(Error::LetterOutsideAlphabet(c.to_string())),
        None => Ok(()),
    }
}
