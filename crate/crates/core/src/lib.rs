//! A workbench for the unification algebra: first-order terms and their
//! unifiers, flows and wirings with Gaussian-rational coefficients, word
//! encodings, observations, a nilpotency decision procedure, and the
//! pointer machines it is checked against.
//!
//! ```
//! use unialg::syntax::{parse_term, parse_wiring};
//! use unialg::term::mgu;
//!
//! let s = mgu(&parse_term("?x . c").unwrap(), &parse_term("d . ?y").unwrap()).unwrap();
//! assert_eq!(s.to_string(), "{?x -> d, ?y -> c}");
//!
//! let u = parse_wiring("(a <- b) + (b <- a)").unwrap();
//! assert!(u.is_isometric());
//! ```

pub mod coefficient;
pub mod direction;
pub mod error;
pub mod flow;
pub mod machine;
pub mod nilpotency;
pub mod observation;
pub mod perm;
pub mod symbol;
pub mod syntax;
pub mod term;
pub mod wiring;
pub mod word;

pub use coefficient::{Coefficient, Rational};
pub use direction::Direction;
pub use error::{Error, Result};
pub use flow::Flow;
pub use machine::{compile, machine_accepts, Configuration, PointerMachine, Rule};
pub use nilpotency::{accepts, TransitionGraph};
pub use observation::{validate_observation, ComputationSpace, Observation};
pub use perm::Permutation;
pub use symbol::Symbol;
pub use term::{mgu, Substitution, Term};
pub use wiring::{TermVector, Wiring};
pub use word::{encode_word, PositionTerms, Word};
