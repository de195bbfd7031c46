//! Primitive-recursive functions over the Zero/Succ/Proj basis.
//!
//! A [`PrFunction`] is a plain syntax tree. Arities are explicit on `Zero`
//! and `Proj`, and [`PrFunction::arity`] doubles as the validation pass: it
//! fails with the offending subterm when arities do not line up. The checked
//! constructors ([`PrFunction::comp`], [`PrFunction::primrec`], ...) run it
//! eagerly so that a value built through them is always well formed.
//!
//! Evaluation is iterative over the recursion parameter. Subterms that
//! denote a polynomial (addition, multiplication and compositions of them)
//! are recognized once up front and evaluated in closed form; everything
//! else runs the recursion step by step. [`eval_pr_direct`] skips the
//! closed forms entirely and is kept as a reference.

mod closed_form;
mod dsl;

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::Nat;
pub(crate) use closed_form::Poly;

pub use dsl::{parse_program, DslError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrFunction {
    /// Constant zero of the given arity.
    Zero { arity: usize },
    /// Unary successor.
    Succ,
    /// Projection onto the `index`-th argument (1-based).
    Proj { arity: usize, index: usize },
    /// `outer(inner_1(x), ..., inner_k(x))`.
    Comp {
        outer: Box<PrFunction>,
        inners: Vec<PrFunction>,
    },
    /// `f(x, 0) = base(x)`, `f(x, y + 1) = step(x, y, f(x, y))`.
    PrimRec {
        base: Box<PrFunction>,
        step: Box<PrFunction>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrError {
    #[error("malformed function `{term}`: {reason}")]
    Malformed { term: String, reason: String },
    #[error("`{function}` takes {expected} argument(s), got {got}")]
    ArityMismatch {
        function: String,
        expected: usize,
        got: usize,
    },
    #[error("expected a primitive recursion, got `{0}`")]
    NotPrimRec(String),
    #[error("recursion depth {0} does not fit in memory")]
    DepthTooLarge(Nat),
}

impl PrFunction {
    pub fn zero(arity: usize) -> Self {
        PrFunction::Zero { arity }
    }

    pub fn succ() -> Self {
        PrFunction::Succ
    }

    pub fn proj(arity: usize, index: usize) -> Result<Self, PrError> {
        let f = PrFunction::Proj { arity, index };
        f.arity()?;
        Ok(f)
    }

    pub fn comp(outer: PrFunction, inners: Vec<PrFunction>) -> Result<Self, PrError> {
        let f = PrFunction::Comp {
            outer: Box::new(outer),
            inners,
        };
        f.arity()?;
        Ok(f)
    }

    pub fn primrec(base: PrFunction, step: PrFunction) -> Result<Self, PrError> {
        let f = PrFunction::PrimRec {
            base: Box::new(base),
            step: Box::new(step),
        };
        f.arity()?;
        Ok(f)
    }

    /// Number of arguments; validates the whole tree on the way.
    pub fn arity(&self) -> Result<usize, PrError> {
        match self {
            PrFunction::Zero { arity } => Ok(*arity),
            PrFunction::Succ => Ok(1),
            PrFunction::Proj { arity, index } => {
                if *index == 0 || index > arity {
                    Err(self.malformed(format!("projection index {index} outside 1..={arity}")))
                } else {
                    Ok(*arity)
                }
            }
            PrFunction::Comp { outer, inners } => {
                let outer_arity = outer.arity()?;
                if outer_arity != inners.len() {
                    return Err(self.malformed(format!(
                        "outer function takes {outer_arity} argument(s) but {} inner function(s) are given",
                        inners.len()
                    )));
                }
                let mut common = None;
                for inner in inners {
                    let a = inner.arity()?;
                    match common {
                        None => common = Some(a),
                        Some(c) if c != a => {
                            return Err(self.malformed(format!(
                                "inner functions disagree on arity ({c} vs {a})"
                            )))
                        }
                        Some(_) => {}
                    }
                }
                common.ok_or_else(|| {
                    self.malformed("composition needs at least one inner function".into())
                })
            }
            PrFunction::PrimRec { base, step } => {
                let n = base.arity()?;
                let s = step.arity()?;
                if s != n + 2 {
                    return Err(self.malformed(format!(
                        "base takes {n} argument(s), so step must take {}, not {s}",
                        n + 2
                    )));
                }
                Ok(n + 1)
            }
        }
    }

    /// Nesting depth of composition and recursion operators.
    pub fn rank(&self) -> Result<usize, PrError> {
        self.arity()?;
        Ok(self.rank_unchecked())
    }

    fn rank_unchecked(&self) -> usize {
        match self {
            PrFunction::Zero { .. } | PrFunction::Succ | PrFunction::Proj { .. } => 0,
            PrFunction::Comp { outer, inners } => {
                1 + inners
                    .iter()
                    .map(PrFunction::rank_unchecked)
                    .chain(std::iter::once(outer.rank_unchecked()))
                    .max()
                    .unwrap_or(0)
            }
            PrFunction::PrimRec { base, step } => {
                1 + base.rank_unchecked().max(step.rank_unchecked())
            }
        }
    }

    fn malformed(&self, reason: String) -> PrError {
        PrError::Malformed {
            term: self.to_string(),
            reason,
        }
    }

    /// Splits a recursion into `(base, step)`.
    pub fn as_primrec(&self) -> Result<(&PrFunction, &PrFunction), PrError> {
        match self {
            PrFunction::PrimRec { base, step } => Ok((base, step)),
            other => Err(PrError::NotPrimRec(other.to_string())),
        }
    }
}

impl fmt::Display for PrFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrFunction::Zero { arity } => write!(f, "zero/{arity}"),
            PrFunction::Succ => write!(f, "succ"),
            PrFunction::Proj { arity, index } => write!(f, "proj/{arity}.{index}"),
            PrFunction::Comp { outer, inners } => {
                write!(f, "comp({outer};")?;
                for (i, g) in inners.iter().enumerate() {
                    let sep = if i == 0 { " " } else { ", " };
                    write!(f, "{sep}{g}")?;
                }
                write!(f, ")")
            }
            PrFunction::PrimRec { base, step } => write!(f, "primrec({base}; {step})"),
        }
    }
}

fn check_args(f: &PrFunction, args: &[Nat]) -> Result<(), PrError> {
    let expected = f.arity()?;
    if args.len() != expected {
        return Err(PrError::ArityMismatch {
            function: f.to_string(),
            expected,
            got: args.len(),
        });
    }
    Ok(())
}

/// Value of `f` at `args`.
pub fn eval_pr(f: &PrFunction, args: &[Nat]) -> Result<Nat, PrError> {
    check_args(f, args)?;
    Ok(Prepared::new(f).eval(args))
}

/// Reference evaluator: unrolls every recursion, no closed forms.
pub fn eval_pr_direct(f: &PrFunction, args: &[Nat]) -> Result<Nat, PrError> {
    check_args(f, args)?;
    Ok(Prepared::structural(f).eval(args))
}

/// `[f(k, 0), f(k, 1), ..., f(k, m)]` for a recursion `f`, in one forward pass.
pub fn trace_pr(f: &PrFunction, k: &[Nat], m: usize) -> Result<Vec<Nat>, PrError> {
    let (base, step) = f.as_primrec()?;
    f.arity()?;
    if k.len() != base.arity()? {
        return Err(PrError::ArityMismatch {
            function: f.to_string(),
            expected: base.arity()? + 1,
            got: k.len() + 1,
        });
    }
    let base = Prepared::new(base);
    let step = Prepared::new(step);
    let mut trace = Vec::with_capacity(m + 1);
    trace.push(base.eval(k));
    let mut args: Vec<Nat> = k.to_vec();
    args.push(Nat::zero());
    args.push(Nat::zero());
    let n = k.len();
    for y in 0..m {
        args[n] = Nat::from(y);
        args[n + 1] = trace[y].clone();
        let next = step.eval(&args);
        trace.push(next);
    }
    Ok(trace)
}

/// The polynomial `f` computes, when it is built from polynomial pieces
/// and closable recursions only.
pub(crate) fn polynomial(f: &PrFunction) -> Option<Poly> {
    f.arity().ok()?;
    Prepared::build(f, false).1
}

/// Converts a recursion depth to a machine index.
pub fn depth_from_nat(m: &Nat) -> Result<usize, PrError> {
    m.to_usize()
        .ok_or_else(|| PrError::DepthTooLarge(m.clone()))
}

/// Evaluation tree with closed forms attached where available.
enum Prepared {
    Closed(Poly),
    Zero,
    Succ,
    Proj(usize),
    Comp(Box<Prepared>, Vec<Prepared>),
    PrimRec(Box<Prepared>, Box<Prepared>),
}

impl Prepared {
    fn new(f: &PrFunction) -> Prepared {
        Self::build(f, true).0
    }

    fn structural(f: &PrFunction) -> Prepared {
        Self::build(f, false).0
    }

    fn build(f: &PrFunction, accelerate: bool) -> (Prepared, Option<Poly>) {
        let (node, poly) = match f {
            PrFunction::Zero { arity } => (Prepared::Zero, Some(Poly::zero(*arity))),
            PrFunction::Succ => (Prepared::Succ, Some(Poly::var(1, 0).add(&Poly::one(1)))),
            PrFunction::Proj { arity, index } => (
                Prepared::Proj(index - 1),
                Some(Poly::var(*arity, index - 1)),
            ),
            PrFunction::Comp { outer, inners } => {
                let (outer_node, outer_poly) = Self::build(outer, accelerate);
                let mut inner_nodes = Vec::with_capacity(inners.len());
                let mut inner_polys = Vec::with_capacity(inners.len());
                for g in inners {
                    let (n, p) = Self::build(g, accelerate);
                    inner_nodes.push(n);
                    inner_polys.push(p);
                }
                let poly = match (
                    outer_poly,
                    inner_polys.into_iter().collect::<Option<Vec<_>>>(),
                ) {
                    (Some(o), Some(is)) => Some(o.compose(&is)),
                    _ => None,
                };
                (Prepared::Comp(Box::new(outer_node), inner_nodes), poly)
            }
            PrFunction::PrimRec { base, step } => {
                let (base_node, base_poly) = Self::build(base, accelerate);
                let (step_node, step_poly) = Self::build(step, accelerate);
                let poly = match (base_poly, step_poly) {
                    (Some(b), Some(s)) => closed_form::close_recursion(&b, &s),
                    _ => None,
                };
                (
                    Prepared::PrimRec(Box::new(base_node), Box::new(step_node)),
                    poly,
                )
            }
        };
        match poly {
            Some(p)
                if accelerate
                    && !matches!(node, Prepared::Zero | Prepared::Succ | Prepared::Proj(_)) =>
            {
                (Prepared::Closed(p.clone()), Some(p))
            }
            other => (node, other),
        }
    }

    fn eval(&self, args: &[Nat]) -> Nat {
        match self {
            Prepared::Closed(p) => p.eval(args),
            Prepared::Zero => Nat::zero(),
            Prepared::Succ => &args[0] + 1u32,
            Prepared::Proj(i) => args[*i].clone(),
            Prepared::Comp(outer, inners) => {
                let ys: Vec<Nat> = inners.iter().map(|g| g.eval(args)).collect();
                outer.eval(&ys)
            }
            Prepared::PrimRec(base, step) => {
                let (xs, last) = args.split_at(args.len() - 1);
                let m = &last[0];
                let mut acc = base.eval(xs);
                let mut step_args: Vec<Nat> = xs.to_vec();
                step_args.push(Nat::zero());
                step_args.push(Nat::zero());
                let n = xs.len();
                let mut y = Nat::zero();
                while &y < m {
                    step_args[n] = y.clone();
                    step_args[n + 1] = acc;
                    acc = step.eval(&step_args);
                    y += Nat::one();
                }
                acc
            }
        }
    }
}

/// A few standard definitions, handy in tests and examples.
pub mod library {
    use super::PrFunction;

    /// `add(x, 0) = x`, `add(x, y + 1) = S(add(x, y))`.
    pub fn add() -> PrFunction {
        PrFunction::primrec(
            PrFunction::proj(1, 1).unwrap(),
            PrFunction::comp(PrFunction::Succ, vec![PrFunction::proj(3, 3).unwrap()]).unwrap(),
        )
        .unwrap()
    }

    /// `mult(x, 0) = 0`, `mult(x, y + 1) = add(x, mult(x, y))`.
    pub fn mult() -> PrFunction {
        PrFunction::primrec(
            PrFunction::zero(1),
            PrFunction::comp(
                add(),
                vec![
                    PrFunction::proj(3, 1).unwrap(),
                    PrFunction::proj(3, 3).unwrap(),
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// Unary factorial: `fact(0) = 1`, `fact(y + 1) = mult(S(y), fact(y))`.
    pub fn factorial() -> PrFunction {
        PrFunction::primrec(
            PrFunction::comp(PrFunction::Succ, vec![PrFunction::zero(0)]).unwrap(),
            PrFunction::comp(
                mult(),
                vec![
                    PrFunction::comp(PrFunction::Succ, vec![PrFunction::proj(2, 1).unwrap()])
                        .unwrap(),
                    PrFunction::proj(2, 2).unwrap(),
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }
}
