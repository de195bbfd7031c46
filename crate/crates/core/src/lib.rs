//! Arithmetization workbench.
//!
//! Evaluates primitive-recursive functions, packs finite sequences into a
//! pair of numbers with Gödel's β-function, compiles primitive-recursive
//! definitions into the Peano Arithmetic formulas that represent them, and
//! checks instances of those formulas over ℕ with a budgeted, three-valued
//! Tarski-style evaluator.
//!
//! The modules mirror that pipeline:
//!
//! * [`pr`]: the function language, its interpreter and recursion traces.
//! * [`beta`]: β, the Chinese Remainder solver and sequence coding.
//! * [`formula`]: PA terms and formulas, parser, printer and the derived
//!   constructions (`<`, ∃₁, the β formula, axioms).
//! * [`compile`]: the representability compiler and witness bundles.
//! * [`eval`]: satisfaction, Δ₀ decision, certificate checking, axiom sampling.
//! * [`cli`]: the `arith` command line front end.

pub mod beta;
pub mod cli;
pub mod compile;
pub mod eval;
pub mod formula;
mod json;
pub mod pr;

use thiserror::Error;

/// Arbitrary-precision natural number; the universe of every computation here.
pub type Nat = num_bigint::BigUint;

pub use beta::{beta, crt_solve, decode, encode_sequence, moduli, BetaCode, BetaError};
pub use compile::{
    compile, compile_with_plan, make_witness_bundle, representation_statement, Compiled,
    WitnessBundle, WitnessPlan,
};
pub use eval::{
    eval_delta0, eval_formula, eval_term, eval_with_source, eval_with_witnesses, Assignment,
    EvalBudget, EvalError, TruthValue, UnknownReason, WitnessSource,
};
pub use formula::{Formula, FormulaError, ParseError, Term};
pub use pr::{PrError, PrFunction};

/// Errors crossing module boundaries (compiler, verifier, CLI).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Pr(#[from] PrError),
    #[error(transparent)]
    Beta(#[from] BetaError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
