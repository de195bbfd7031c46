//! Satisfaction of PA formulas over ℕ.
//!
//! Connectives follow strong Kleene logic over {True, False, Unknown}.
//! Bounded quantifiers are decided by exhausting their range. Unbounded ones
//! are searched from 0 upwards for at most `max_witness` values: a hit
//! settles the question (a witness for `E`, a counterexample for `A`), a
//! miss leaves it Unknown. Nothing is ever concluded about an unbounded
//! existential from the failure of a search, and no existence claim is
//! read off `~A x . ~F`; existence needs an explicit witness.
//!
//! Every node visited costs one step. Once `max_steps` is spent the
//! evaluation unwinds with `Unknown(BudgetExhausted)`.
//!
//! A bounded existential whose body is a conjunction containing an equation
//! linear in the bound variable is decided at the single candidate that
//! equation admits. This is exact and keeps formulas such as the β formula
//! cheap when the numbers involved are large.
//!
//! Witnesses can be supplied from outside, either as a fixed map or through
//! a [`WitnessSource`] that computes them from the variables bound so far.
//! They are consulted only for existentials in positive position, where
//! instantiating the quantifier is a certificate for it.

mod axioms;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::formula::{Formula, Term};
use crate::Nat;

pub use axioms::{check_axioms, induction_catalog, AxiomFailure, AxiomReport, AxiomTally};
pub use verify::{
    check_representation, verify_instance, verify_instance_with, witness_growth, Check, GrowthRow,
    RepresentationReport, VerificationReport,
};

/// Values for the free variables of a formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, Nat>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style [`Assignment::insert`].
    pub fn with(mut self, var: impl Into<String>, value: impl Into<Nat>) -> Self {
        self.insert(var, value);
        self
    }

    pub fn insert(&mut self, var: impl Into<String>, value: impl Into<Nat>) {
        self.0.insert(var.into(), value.into());
    }

    pub fn get(&self, var: &str) -> Option<&Nat> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Nat)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `x1=2,x2=3`. An empty string is the empty assignment.
    pub fn parse(text: &str) -> Result<Self, EvalError> {
        let mut out = Assignment::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| EvalError::BadAssignment(part.to_string()))?;
            let name = name.trim();
            let valid_name = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            let value: Nat = value
                .trim()
                .parse()
                .map_err(|_| EvalError::BadAssignment(part.to_string()))?;
            if !valid_name {
                return Err(EvalError::BadAssignment(part.to_string()));
            }
            out.insert(name, value);
        }
        Ok(out)
    }
}

impl<S: Into<String>> FromIterator<(S, Nat)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (S, Nat)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

impl From<BTreeMap<String, Nat>> for Assignment {
    fn from(map: BTreeMap<String, Nat>) -> Self {
        Assignment(map)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalBudget {
    /// Candidates tried per unbounded quantifier: `0..max_witness`.
    pub max_witness: u64,
    /// Formula nodes visited in one evaluation.
    pub max_steps: u64,
}

impl EvalBudget {
    pub const DEFAULT_MAX_WITNESS: u64 = 10_000;
    pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

    pub fn new(max_witness: u64, max_steps: u64) -> Result<Self, EvalError> {
        if max_witness == 0 {
            return Err(EvalError::InvalidBudget("max_witness must be at least 1"));
        }
        if max_steps == 0 {
            return Err(EvalError::InvalidBudget("max_steps must be at least 1"));
        }
        Ok(EvalBudget {
            max_witness,
            max_steps,
        })
    }

    /// Same witness ceiling, no step ceiling. For formulas whose evaluation
    /// is known to be finite.
    pub fn without_step_limit(self) -> Self {
        EvalBudget {
            max_steps: u64::MAX,
            ..self
        }
    }
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget {
            max_witness: Self::DEFAULT_MAX_WITNESS,
            max_steps: Self::DEFAULT_MAX_STEPS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnknownReason {
    BudgetExhausted,
    UnboundedQuantifier,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::BudgetExhausted => "budget exhausted",
            UnknownReason::UnboundedQuantifier => "unbounded quantifier",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Unknown(UnknownReason),
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Unknown(_) => None,
        }
    }

    pub fn is_definite(self) -> bool {
        self.as_bool().is_some()
    }

    pub fn negate(self) -> Self {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            u => u,
        }
    }

    pub fn and(self, other: Self) -> Self {
        match (self, other) {
            (TruthValue::False, _) | (_, TruthValue::False) => TruthValue::False,
            (TruthValue::True, TruthValue::True) => TruthValue::True,
            (TruthValue::Unknown(r), _) | (_, TruthValue::Unknown(r)) => TruthValue::Unknown(r),
        }
    }

    pub fn or(self, other: Self) -> Self {
        self.negate().and(other.negate()).negate()
    }

    pub fn implies(self, other: Self) -> Self {
        self.negate().or(other)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::True => write!(f, "True"),
            TruthValue::False => write!(f, "False"),
            TruthValue::Unknown(r) => write!(f, "Unknown ({r})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("not a bounded-quantifier formula: {0}")]
    NotDelta0(String),
    #[error("`{0}` is not an existentially quantified variable in positive position")]
    NotExistential(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(&'static str),
    #[error("cannot read assignment `{0}` (expected name=number)")]
    BadAssignment(String),
    #[error("witness computation failed: {0}")]
    Witness(String),
}

/// The variables in scope at some point of an evaluation.
pub struct Bindings<'a> {
    base: &'a Assignment,
    stack: &'a [(&'a str, Nat)],
}

impl Bindings<'_> {
    pub fn get(&self, var: &str) -> Option<&Nat> {
        self.stack
            .iter()
            .rev()
            .find(|(name, _)| *name == var)
            .map(|(_, v)| v)
            .or_else(|| self.base.get(var))
    }

    pub fn eval_term(&self, t: &Term) -> Result<Nat, EvalError> {
        if let Some(v) = self.small(t) {
            return Ok(Nat::from(v));
        }
        Ok(match t {
            Term::Zero => Nat::zero(),
            Term::Var(v) => self
                .get(v)
                .cloned()
                .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
            Term::Succ(s) => self.eval_term(s)? + 1u32,
            Term::Plus(a, b) => self.eval_term(a)? + self.eval_term(b)?,
            Term::Times(a, b) => self.eval_term(a)? * self.eval_term(b)?,
        })
    }
}

impl Bindings<'_> {
    /// Machine-word evaluation; `None` on overflow or an unbound variable.
    fn small(&self, t: &Term) -> Option<u64> {
        match t {
            Term::Zero => Some(0),
            Term::Var(v) => self.get(v)?.to_u64(),
            Term::Succ(s) => self.small(s)?.checked_add(1),
            Term::Plus(a, b) => self.small(a)?.checked_add(self.small(b)?),
            Term::Times(a, b) => self.small(a)?.checked_mul(self.small(b)?),
        }
    }
}

/// Supplies values for existentially quantified variables.
pub trait WitnessSource {
    /// A value to instantiate `var` with, given the variables bound so far,
    /// or `None` to fall back to search.
    fn witness(&self, var: &str, bindings: &Bindings<'_>) -> Result<Option<Nat>, EvalError>;
}

impl WitnessSource for BTreeMap<String, Nat> {
    fn witness(&self, var: &str, _: &Bindings<'_>) -> Result<Option<Nat>, EvalError> {
        Ok(self.get(var).cloned())
    }
}

/// Value of a term; every variable must be assigned.
pub fn eval_term(t: &Term, a: &Assignment) -> Result<Nat, EvalError> {
    Bindings {
        base: a,
        stack: &[],
    }
    .eval_term(t)
}

/// Three-valued truth of `f` under `a`.
pub fn eval_formula(
    f: &Formula,
    a: &Assignment,
    budget: EvalBudget,
) -> Result<TruthValue, EvalError> {
    Engine::new(a, budget, None).run(f)
}

/// Exact truth of a formula whose quantifiers are all bounded.
pub fn eval_delta0(f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    if !f.is_delta0() {
        return Err(EvalError::NotDelta0(f.to_string()));
    }
    let budget = EvalBudget::default().without_step_limit();
    let value = Engine::new(a, budget, None).run(f)?;
    Ok(value
        .as_bool()
        .expect("bounded quantification with no step limit always terminates definitely"))
}

/// Evaluates `f` with the listed existentials instantiated.
///
/// Each key must name a variable bound by an existential in positive
/// position; the value applies to every such binding of that name.
pub fn eval_with_witnesses(
    f: &Formula,
    a: &Assignment,
    witnesses: &BTreeMap<String, Nat>,
    budget: EvalBudget,
) -> Result<TruthValue, EvalError> {
    let mut positive = BTreeSet::new();
    positive_existentials(f, true, &mut positive);
    if let Some(bad) = witnesses.keys().find(|k| !positive.contains(k.as_str())) {
        return Err(EvalError::NotExistential(bad.clone()));
    }
    Engine::new(a, budget, Some(witnesses)).run(f)
}

/// Evaluates `f`, asking `source` for each positive existential.
pub fn eval_with_source(
    f: &Formula,
    a: &Assignment,
    source: &dyn WitnessSource,
    budget: EvalBudget,
) -> Result<TruthValue, EvalError> {
    Engine::new(a, budget, Some(source)).run(f)
}

fn positive_existentials(f: &Formula, positive: bool, out: &mut BTreeSet<String>) {
    match f {
        Formula::Eq(..) => {}
        Formula::Not(g) => positive_existentials(g, !positive, out),
        Formula::Implies(a, b) => {
            positive_existentials(a, !positive, out);
            positive_existentials(b, positive, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            positive_existentials(a, positive, out);
            positive_existentials(b, positive, out);
        }
        Formula::Exists(v, g) | Formula::BoundedExists(v, _, g) => {
            if positive {
                out.insert(v.clone());
            }
            positive_existentials(g, positive, out);
        }
        Formula::ForAll(_, g) | Formula::BoundedForAll(_, _, g) => {
            positive_existentials(g, positive, out)
        }
    }
}

/// Outcome of looking for the values of `v` an equation allows.
enum Candidates {
    /// No equation constrains `v` linearly.
    Unconstrained,
    /// Some conjunct is false for every value of `v`.
    NoneFit,
    /// Only this value can satisfy the body.
    Only(Nat),
}

struct Engine<'a> {
    base: &'a Assignment,
    stack: Vec<(&'a str, Nat)>,
    budget: EvalBudget,
    steps: u64,
    source: Option<&'a dyn WitnessSource>,
}

const EXHAUSTED: TruthValue = TruthValue::Unknown(UnknownReason::BudgetExhausted);

impl<'a> Engine<'a> {
    fn new(
        base: &'a Assignment,
        budget: EvalBudget,
        source: Option<&'a dyn WitnessSource>,
    ) -> Self {
        Engine {
            base,
            stack: Vec::new(),
            budget,
            steps: 0,
            source,
        }
    }

    fn run(&mut self, f: &'a Formula) -> Result<TruthValue, EvalError> {
        if let Some(v) = f
            .free_vars()
            .into_iter()
            .find(|v| self.base.get(v).is_none())
        {
            return Err(EvalError::UnboundVariable(v));
        }
        self.eval(f, true)
    }

    fn bindings(&self) -> Bindings<'_> {
        Bindings {
            base: self.base,
            stack: &self.stack,
        }
    }

    fn term(&self, t: &Term) -> Result<Nat, EvalError> {
        self.bindings().eval_term(t)
    }

    fn exhausted(&self) -> bool {
        self.steps > self.budget.max_steps
    }

    fn witness(&self, var: &str, positive: bool) -> Result<Option<Nat>, EvalError> {
        match self.source {
            Some(source) if positive => source.witness(var, &self.bindings()),
            _ => Ok(None),
        }
    }

    fn eval_at(
        &mut self,
        var: &'a str,
        value: Nat,
        body: &'a Formula,
        positive: bool,
    ) -> Result<TruthValue, EvalError> {
        self.stack.push((var, value));
        let out = self.eval(body, positive);
        self.stack.pop();
        out
    }

    fn eval(&mut self, f: &'a Formula, positive: bool) -> Result<TruthValue, EvalError> {
        self.steps += 1;
        if self.exhausted() {
            return Ok(EXHAUSTED);
        }
        match f {
            Formula::Eq(a, b) => {
                let bindings = self.bindings();
                if let (Some(x), Some(y)) = (bindings.small(a), bindings.small(b)) {
                    return Ok(TruthValue::from_bool(x == y));
                }
                Ok(TruthValue::from_bool(self.term(a)? == self.term(b)?))
            }
            Formula::Not(g) => Ok(self.eval(g, !positive)?.negate()),
            Formula::And(a, b) => {
                let left = self.eval(a, positive)?;
                if left == TruthValue::False {
                    return Ok(left);
                }
                Ok(left.and(self.eval(b, positive)?))
            }
            Formula::Or(a, b) => {
                let left = self.eval(a, positive)?;
                if left == TruthValue::True {
                    return Ok(left);
                }
                Ok(left.or(self.eval(b, positive)?))
            }
            Formula::Implies(a, b) => {
                let left = self.eval(a, !positive)?;
                if left == TruthValue::False {
                    return Ok(TruthValue::True);
                }
                Ok(left.implies(self.eval(b, positive)?))
            }
            Formula::Exists(v, body) => {
                if let Some(w) = self.witness(v, positive)? {
                    return self.eval_at(v, w, body, positive);
                }
                self.search(v, body, positive, true)
            }
            Formula::ForAll(v, body) => self.search(v, body, positive, false),
            Formula::BoundedExists(v, bound, body) => {
                let bound = self.term(bound)?;
                if let Some(w) = self.witness(v, positive)? {
                    if w >= bound {
                        return Ok(TruthValue::False);
                    }
                    return self.eval_at(v, w, body, positive);
                }
                match self.candidates(v, body)? {
                    Candidates::NoneFit => Ok(TruthValue::False),
                    Candidates::Only(w) if w >= bound => Ok(TruthValue::False),
                    Candidates::Only(w) => self.eval_at(v, w, body, positive),
                    Candidates::Unconstrained => self.exhaust(v, &bound, body, positive, true),
                }
            }
            Formula::BoundedForAll(v, bound, body) => {
                let bound = self.term(bound)?;
                self.exhaust(v, &bound, body, positive, false)
            }
        }
    }

    /// Runs a bounded quantifier over `0..bound`. `existential` selects the
    /// value that settles it early (True for `E`, False for `A`).
    fn exhaust(
        &mut self,
        v: &'a str,
        bound: &Nat,
        body: &'a Formula,
        positive: bool,
        existential: bool,
    ) -> Result<TruthValue, EvalError> {
        let decisive = TruthValue::from_bool(existential);
        let mut acc = TruthValue::from_bool(!existential);
        let mut i = Nat::zero();
        while &i < bound {
            let value = self.eval_at(v, i.clone(), body, positive)?;
            if value == decisive {
                return Ok(value);
            }
            if let TruthValue::Unknown(_) = value {
                acc = value;
            }
            if self.exhausted() {
                return Ok(EXHAUSTED);
            }
            i += 1u32;
        }
        Ok(acc)
    }

    /// Searches `0..max_witness` for a witness (`E`) or a counterexample
    /// (`A`). A miss is never conclusive.
    fn search(
        &mut self,
        v: &'a str,
        body: &'a Formula,
        positive: bool,
        existential: bool,
    ) -> Result<TruthValue, EvalError> {
        let decisive = TruthValue::from_bool(existential);
        let mut reason = UnknownReason::UnboundedQuantifier;
        for i in 0..self.budget.max_witness {
            let value = self.eval_at(v, Nat::from(i), body, positive)?;
            if value == decisive {
                return Ok(value);
            }
            if self.exhausted() {
                return Ok(EXHAUSTED);
            }
            if let TruthValue::Unknown(UnknownReason::BudgetExhausted) = value {
                reason = UnknownReason::BudgetExhausted;
            }
        }
        Ok(TruthValue::Unknown(reason))
    }

    /// Looks through the top-level conjuncts of `body` for an equation that
    /// is linear in `v`; such an equation admits at most one value of `v`.
    fn candidates(&self, v: &str, body: &Formula) -> Result<Candidates, EvalError> {
        let mut conjuncts = vec![body];
        while let Some(f) = conjuncts.pop() {
            match f {
                Formula::And(a, b) => {
                    conjuncts.push(b);
                    conjuncts.push(a);
                }
                Formula::Eq(a, b) if a.mentions(v) || b.mentions(v) => {
                    let (Some((a0, a1)), Some((b0, b1))) = (self.linear(a, v)?, self.linear(b, v)?)
                    else {
                        continue;
                    };
                    // a0 + a1·v = b0 + b1·v
                    let num = BigInt::from(b0) - BigInt::from(a0);
                    let den = BigInt::from(a1) - BigInt::from(b1);
                    if den.is_zero() {
                        if num.is_zero() {
                            continue;
                        }
                        return Ok(Candidates::NoneFit);
                    }
                    let (q, r) = num.div_rem(&den);
                    return Ok(match (r.is_zero(), q.sign()) {
                        (true, Sign::Minus) | (false, _) => Candidates::NoneFit,
                        (true, _) => Candidates::Only(q.to_biguint().expect("non-negative")),
                    });
                }
                _ => {}
            }
        }
        Ok(Candidates::Unconstrained)
    }

    /// `t` as `c0 + c1·v` with the other variables evaluated, when `t` is
    /// at most linear in `v`.
    fn linear(&self, t: &Term, v: &str) -> Result<Option<(Nat, Nat)>, EvalError> {
        Ok(match t {
            Term::Var(x) if x == v => Some((Nat::zero(), Nat::one())),
            _ if !t.mentions(v) => Some((self.term(t)?, Nat::zero())),
            Term::Succ(s) => self.linear(s, v)?.map(|(c0, c1)| (c0 + 1u32, c1)),
            Term::Plus(a, b) => match (self.linear(a, v)?, self.linear(b, v)?) {
                (Some((a0, a1)), Some((b0, b1))) => Some((a0 + b0, a1 + b1)),
                _ => None,
            },
            Term::Times(a, b) => match (self.linear(a, v)?, self.linear(b, v)?) {
                (Some((a0, a1)), Some((b0, b1))) if a1.is_zero() || b1.is_zero() => {
                    Some((&a0 * &b0, &a0 * &b1 + &a1 * &b0))
                }
                _ => None,
            },
            Term::Zero | Term::Var(_) => unreachable!("handled by the mentions guard"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::beta;
    use crate::formula::{
        bt, mk_bt, mk_exists_unique, mk_less, numeral, parse_formula, parse_term, tighten_bounds,
    };
    use proptest::prelude::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn num(v: u64) -> Term {
        numeral(&n(v))
    }

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn eval(text: &str) -> TruthValue {
        eval_formula(&f(text), &Assignment::new(), EvalBudget::default()).unwrap()
    }

    const UNBOUNDED: TruthValue = TruthValue::Unknown(UnknownReason::UnboundedQuantifier);

    #[test]
    fn term_examples() {
        let a = Assignment::new().with("x1", 41u32);
        assert_eq!(
            eval_term(&parse_term("(S(0) + S(0))").unwrap(), &a).unwrap(),
            n(2)
        );
        assert_eq!(
            eval_term(&parse_term("(S(S(0)) * S(S(S(0))))").unwrap(), &a).unwrap(),
            n(6)
        );
        assert_eq!(eval_term(&parse_term("S(x1)").unwrap(), &a).unwrap(), n(42));
        assert_eq!(
            eval_term(&parse_term("x9").unwrap(), &a),
            Err(EvalError::UnboundVariable("x9".into()))
        );
    }

    #[test]
    fn formula_examples() {
        assert_eq!(eval("(S(S(0)) = (S(0) + S(0)))"), TruthValue::True);
        assert_eq!(eval("A x1 . (x1 = 0)"), TruthValue::False);
        let budget = EvalBudget::new(100, 1_000_000).unwrap();
        let v = eval_formula(&f("E x1 . ((x1 + S(0)) = 0)"), &Assignment::new(), budget).unwrap();
        assert_eq!(v, UNBOUNDED);
        assert_eq!(eval("E x1 < S(0) . ((x1 + S(0)) = 0)"), TruthValue::False);
    }

    #[test]
    fn kleene_connectives() {
        // the unknown side never spoils a decided one
        assert_eq!(eval("(E x . (S(x) = 0) & (0 = S(0)))"), TruthValue::False);
        assert_eq!(eval("((0 = S(0)) & E x . (S(x) = 0))"), TruthValue::False);
        assert_eq!(eval("(E x . (S(x) = 0) | (0 = 0))"), TruthValue::True);
        assert_eq!(eval("(E x . (S(x) = 0) -> (0 = 0))"), TruthValue::True);
        assert_eq!(eval("((0 = S(0)) -> E x . (S(x) = 0))"), TruthValue::True);
        assert_eq!(eval("((0 = 0) -> E x . (S(x) = 0))"), UNBOUNDED);
        assert_eq!(eval("~E x . (S(x) = 0)"), UNBOUNDED);
    }

    #[test]
    fn delta0_examples() {
        let a = Assignment::new();
        let g = f("A x1 < S(S(S(0))) . E x2 < S(S(S(0))) . (x2 = x1)");
        assert!(eval_delta0(&g, &a).unwrap());
        assert!(!eval_delta0(&f("E x1 < S(0) . ~(x1 = 0)"), &a).unwrap());
        let bt_at = |b, c, i, y| {
            Assignment::new()
                .with("x1", n(b))
                .with("x2", n(c))
                .with("x3", n(i))
                .with("x4", n(y))
        };
        assert!(eval_delta0(&mk_bt(), &bt_at(7, 2, 0, 1)).unwrap());
        assert!(!eval_delta0(&mk_bt(), &bt_at(7, 2, 0, 2)).unwrap());
        assert!(eval_delta0(&mk_bt(), &bt_at(0, 1, 0, 0)).unwrap());
        assert!(matches!(
            eval_delta0(&f("E x . (x = 0)"), &a),
            Err(EvalError::NotDelta0(_))
        ));
    }

    #[test]
    fn bt_with_huge_numbers_is_instant() {
        let b = n(3).pow(400u32);
        let c = n(7).pow(90u32);
        let y = beta(&b, &c, &n(4));
        let g = bt(
            &numeral_free("b"),
            &numeral_free("c"),
            &num(4),
            &numeral_free("y"),
        );
        let a = Assignment::new()
            .with("b", b.clone())
            .with("c", c.clone())
            .with("y", y.clone());
        assert!(eval_delta0(&g, &a).unwrap());
        let a = a.with("y", y + 1u32);
        assert!(!eval_delta0(&g, &a).unwrap());
    }

    fn numeral_free(v: &str) -> Term {
        Term::var(v)
    }

    #[test]
    fn less_and_uniqueness_need_tightened_bounds() {
        let a = Assignment::new();
        let b = EvalBudget::default();
        let less_12 = mk_less(&num(1), &num(2));
        let less_22 = mk_less(&num(2), &num(2));
        assert_eq!(eval_formula(&less_12, &a, b).unwrap(), TruthValue::True);
        // no witness below the budget, and an unbounded search cannot refute
        assert_eq!(eval_formula(&less_22, &a, b).unwrap(), UNBOUNDED);
        assert_eq!(
            eval_formula(&tighten_bounds(&less_22), &a, b).unwrap(),
            TruthValue::False
        );

        let x_lt_sx = mk_less(&Term::var("x"), &Term::plus(Term::var("x"), num(1)));
        for x in [0u64, 5, 1000] {
            let a = Assignment::new().with("x", n(x));
            assert_eq!(eval_formula(&x_lt_sx, &a, b).unwrap(), TruthValue::True);
        }

        let unique = |body: &str| {
            let g = tighten_bounds(&mk_exists_unique("x", &f(body)));
            eval_formula(&g, &a, b).unwrap()
        };
        assert_eq!(unique("(x = S(S(S(0))))"), TruthValue::True);
        assert_eq!(unique("((x * x) = x)"), TruthValue::False);
        assert_eq!(unique("(S(x) = 0)"), TruthValue::False);
    }

    #[test]
    fn witnesses() {
        let g = f("E x . (x = S(S(S(0))))");
        let a = Assignment::new();
        let b = EvalBudget::default();
        let w = |v: u64| BTreeMap::from([("x".to_string(), n(v))]);
        assert_eq!(
            eval_with_witnesses(&g, &a, &w(3), b).unwrap(),
            TruthValue::True
        );
        // a wrong certificate is rejected
        assert_eq!(
            eval_with_witnesses(&g, &a, &w(4), b).unwrap(),
            TruthValue::False
        );
        // a witness outside its bound
        let h = f("E x < S(S(0)) . (0 = 0)");
        assert_eq!(
            eval_with_witnesses(&h, &a, &w(2), b).unwrap(),
            TruthValue::False
        );
        // negative position and universals do not take witnesses
        for text in [
            "~E x . (x = 0)",
            "A x . (x = x)",
            "(E x . (x = 0) -> (0 = 0))",
        ] {
            assert_eq!(
                eval_with_witnesses(&f(text), &a, &w(0), b),
                Err(EvalError::NotExistential("x".into()))
            );
        }
    }

    #[test]
    fn step_budget() {
        let g = f("A x < S(S(S(S(S(S(S(S(S(S(0)))))))))) . A y < S(S(S(S(S(S(S(S(S(S(0)))))))))) . (x = x)");
        let a = Assignment::new();
        let tight = EvalBudget::new(10, 50).unwrap();
        assert_eq!(eval_formula(&g, &a, tight).unwrap(), EXHAUSTED);
        assert_eq!(
            eval_formula(&g, &a, EvalBudget::default()).unwrap(),
            TruthValue::True
        );
        assert!(EvalBudget::new(0, 1).is_err());
        assert!(EvalBudget::new(1, 0).is_err());
    }

    #[test]
    fn unbound_variables_are_errors() {
        let r = eval_formula(&f("(x = 0)"), &Assignment::new(), EvalBudget::default());
        assert_eq!(r, Err(EvalError::UnboundVariable("x".into())));
    }

    #[test]
    fn assignment_parsing() {
        let a = Assignment::parse("x1=2, x2=30").unwrap();
        assert_eq!(a.get("x2"), Some(&n(30)));
        assert_eq!(a.to_string(), "x1=2,x2=30");
        assert!(Assignment::parse("").unwrap().is_empty());
        for bad in ["x1", "x1=-3", "=3", "1x=2"] {
            assert!(Assignment::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(TruthValue::True.to_string(), "True");
        assert_eq!(UNBOUNDED.to_string(), "Unknown (unbounded quantifier)");
        assert_eq!(EXHAUSTED.to_string(), "Unknown (budget exhausted)");
    }

    proptest! {
        #[test]
        fn bt_strongly_represents_beta(b in 0u64..=50, c in 0u64..=50, i in 0u64..=5, y in 0u64..=60) {
            let a = Assignment::new()
                .with("x1", n(b))
                .with("x2", n(c))
                .with("x3", n(i))
                .with("x4", n(y));
            let want = beta(&n(b), &n(c), &n(i)) == n(y);
            prop_assert_eq!(eval_delta0(&mk_bt(), &a).unwrap(), want);
        }

        #[test]
        fn linear_shortcut_agrees_with_exhaustion(
            k in 0u64..4, m in 0u64..4, r in 0u64..12, bound in 0u64..15, x in 0u64..6
        ) {
            // E v < bound . ((k * v) + x = r & (v = v))
            let body = Formula::and(
                Formula::eq(
                    Term::plus(Term::times(num(k), Term::var("v")), Term::var("x")),
                    num(r),
                ),
                Formula::eq(Term::times(num(m), Term::var("v")), Term::times(Term::var("v"), num(m))),
            );
            let g = Formula::bounded_exists("v", num(bound), body);
            let a = Assignment::new().with("x", n(x));
            let want = (0..bound).any(|v| k * v + x == r);
            prop_assert_eq!(eval_delta0(&g, &a).unwrap(), want);
        }
    }
}
