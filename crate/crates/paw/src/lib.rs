//! paw: exact-arithmetic tools for probabilistic automata on infinite words.
//!
//! A probabilistic automaton here is a finite state set with one stochastic
//! matrix per alphabet symbol, an initial distribution, and an accepting set.
//! Words are infinite; the evaluable ones are the ultimately periodic
//! ("lasso") words `u v^omega`. For such a word the acceptance probability
//! under safety, reachability, Buchi, co-Buchi, or limit-average semantics is
//! a rational number, and this crate computes it exactly: probabilities are
//! arbitrary-precision rationals throughout, never floats.
//!
//! On top of the evaluator sit:
//!
//! * an algebra of automata (constants, convex mixtures, complement for
//!   absorbing safety automata, products) that manipulates values pointwise,
//! * constructions that encode Post correspondence instances into automata
//!   whose values compare against a rational threshold,
//! * a family of reachability automata whose value approaches 1 only in the
//!   limit, with certified witness words,
//! * qualitative (probability one / positive) decision procedures on the
//!   support structure, with witness lassos,
//! * Monte Carlo estimation and exact finite-horizon bounds, used as
//!   independent cross-checks of the evaluator.
//!
//! The `paw` binary exposes the same operations over simple text formats; see
//! the crate README and `examples/` for entry points.

pub mod automaton;
pub mod cli;
pub mod combinators;
mod error;
pub mod evaluator;
pub mod format;
mod graph;
pub mod limit;
mod linalg;
pub mod mc;
pub mod pcp;
pub mod qualitative;
pub mod rational;
pub mod word;

pub use automaton::{Classification, Condition, Distribution, ProbAutomaton, ValidationReport};
pub use error::{Error, Result};
pub use evaluator::{eval_lasso, Bscc, PeriodicChain};
pub use rational::{rat, Rational};
pub use word::{LassoWord, Word};
