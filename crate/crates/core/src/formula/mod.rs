//! Terms and formulas of first-order Peano Arithmetic.
//!
//! The signature is `0`, successor, `+`, `*` and `=`. Besides the primitive
//! connectives the AST carries `&`, `|`, `E` and bounded quantifiers as
//! first-class nodes; [`Formula::erase_bounds`] rewrites the bounded ones
//! into pure PA using the existential definition of `<`.
//!
//! Concrete syntax (ASCII, fully parenthesized):
//!
//! ```text
//! term    := "0" | ident | "S(" term ")" | "(" term "+" term ")" | "(" term "*" term ")"
//! formula := "(" term "=" term ")" | "~" formula
//!          | "(" formula "->" formula ")" | "(" formula "&" formula ")" | "(" formula "|" formula ")"
//!          | ("A" | "E") ident [ "<" term ] "." formula
//! ```

mod bounds;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::Nat;

pub use bounds::tighten_bounds;
pub use parse::{parse_formula, parse_formula_file, parse_term, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Var(String),
    Succ(Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `A v < bound . body`
    BoundedForAll(String, Term, Box<Formula>),
    /// `E v < bound . body`
    BoundedExists(String, Term, Box<Formula>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("there are eight Peano axioms (PA1..PA8), not #{0}")]
    NoSuchAxiom(usize),
    #[error("variable `{var}` is not free in `{formula}`")]
    NotFree { var: String, formula: String },
    #[error("bound of `{var}` mentions `{var}` itself")]
    SelfBounded { var: String },
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Plus(a, b) | Term::Times(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(v) => v == var,
            Term::Succ(t) => t.mentions(var),
            Term::Plus(a, b) | Term::Times(a, b) => a.mentions(var) || b.mentions(var),
        }
    }

    /// Simultaneous substitution of terms for variables.
    pub fn substitute_all(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Succ(t) => Term::succ(t.substitute_all(map)),
            Term::Plus(a, b) => Term::plus(a.substitute_all(map), b.substitute_all(map)),
            Term::Times(a, b) => Term::times(a.substitute_all(map), b.substitute_all(map)),
        }
    }
}

/// `S(S(...S(0)...))` with `n` successors.
///
/// # Panics
///
/// If `n` does not fit in a `usize`; such a term could not be built anyway.
pub fn numeral(n: &Nat) -> Term {
    let count = n.to_usize().expect("numeral too large to build");
    (0..count).fold(Term::Zero, |t, _| Term::succ(t))
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::ForAll(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn bounded_forall(v: impl Into<String>, bound: Term, f: Formula) -> Formula {
        Formula::BoundedForAll(v.into(), bound, Box::new(f))
    }

    pub fn bounded_exists(v: impl Into<String>, bound: Term, f: Formula) -> Formula {
        Formula::BoundedExists(v.into(), bound, Box::new(f))
    }

    /// Right-nested conjunction of `parts`; `None` when empty.
    pub fn conjunction(parts: Vec<Formula>) -> Option<Formula> {
        parts
            .into_iter()
            .rev()
            .reduce(|acc, f| Formula::and(f, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        let term_free = |t: &Term, bound: &BTreeSet<String>, out: &mut BTreeSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) => {
                term_free(a, bound, out);
                term_free(b, bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                let fresh = bound.insert(v.clone());
                f.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
            Formula::BoundedForAll(v, t, f) | Formula::BoundedExists(v, t, f) => {
                term_free(t, bound, out);
                let fresh = bound.insert(v.clone());
                f.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.collect_all(out),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                out.insert(v.clone());
                f.collect_all(out);
            }
            Formula::BoundedForAll(v, t, f) | Formula::BoundedExists(v, t, f) => {
                out.insert(v.clone());
                t.collect_vars(out);
                f.collect_all(out);
            }
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `var`.
    pub fn substitute(&self, var: &str, t: &Term) -> Formula {
        let mut map = BTreeMap::new();
        map.insert(var.to_string(), t.clone());
        self.substitute_all(&map)
    }

    /// Simultaneous capture-avoiding substitution. Binders that would
    /// capture a variable of an inserted term are renamed.
    pub fn substitute_all(&self, map: &BTreeMap<String, Term>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute_all(map), b.substitute_all(map)),
            Formula::Not(f) => Formula::not(f.substitute_all(map)),
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute_all(map), b.substitute_all(map))
            }
            Formula::And(a, b) => Formula::and(a.substitute_all(map), b.substitute_all(map)),
            Formula::Or(a, b) => Formula::or(a.substitute_all(map), b.substitute_all(map)),
            Formula::ForAll(v, f) => {
                let (v, f) = substitute_under_binder(v, f, map);
                Formula::ForAll(v, Box::new(f))
            }
            Formula::Exists(v, f) => {
                let (v, f) = substitute_under_binder(v, f, map);
                Formula::Exists(v, Box::new(f))
            }
            Formula::BoundedForAll(v, t, f) => {
                let t = t.substitute_all(map);
                let (v, f) = substitute_under_binder(v, f, map);
                Formula::BoundedForAll(v, t, Box::new(f))
            }
            Formula::BoundedExists(v, t, f) => {
                let t = t.substitute_all(map);
                let (v, f) = substitute_under_binder(v, f, map);
                Formula::BoundedExists(v, t, Box::new(f))
            }
        }
    }

    /// True when every quantifier is bounded.
    pub fn is_delta0(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Not(f) => f.is_delta0(),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_delta0() && b.is_delta0()
            }
            Formula::ForAll(..) | Formula::Exists(..) => false,
            Formula::BoundedForAll(_, _, f) | Formula::BoundedExists(_, _, f) => f.is_delta0(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            _ => false,
        }
    }

    /// Checks that no bounded quantifier's bound mentions its own variable.
    pub fn check_bounds(&self) -> Result<(), FormulaError> {
        match self {
            Formula::Eq(..) => Ok(()),
            Formula::Not(f) | Formula::ForAll(_, f) | Formula::Exists(_, f) => f.check_bounds(),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.check_bounds()?;
                b.check_bounds()
            }
            Formula::BoundedForAll(v, t, f) | Formula::BoundedExists(v, t, f) => {
                if t.mentions(v) {
                    return Err(FormulaError::SelfBounded { var: v.clone() });
                }
                f.check_bounds()
            }
        }
    }

    /// Rewrites bounded quantifiers into `∃v (v < b ∧ F)` and `∀v (v < b → F)`.
    pub fn erase_bounds(&self) -> Formula {
        match self {
            Formula::Eq(..) => self.clone(),
            Formula::Not(f) => Formula::not(f.erase_bounds()),
            Formula::Implies(a, b) => Formula::implies(a.erase_bounds(), b.erase_bounds()),
            Formula::And(a, b) => Formula::and(a.erase_bounds(), b.erase_bounds()),
            Formula::Or(a, b) => Formula::or(a.erase_bounds(), b.erase_bounds()),
            Formula::ForAll(v, f) => Formula::forall(v.clone(), f.erase_bounds()),
            Formula::Exists(v, f) => Formula::exists(v.clone(), f.erase_bounds()),
            Formula::BoundedForAll(v, t, f) => Formula::forall(
                v.clone(),
                Formula::implies(mk_less(&Term::var(v.clone()), t), f.erase_bounds()),
            ),
            Formula::BoundedExists(v, t, f) => Formula::exists(
                v.clone(),
                Formula::and(mk_less(&Term::var(v.clone()), t), f.erase_bounds()),
            ),
        }
    }

    /// Whether any bounded quantifier remains.
    pub fn has_bounded_quantifiers(&self) -> bool {
        match self {
            Formula::Eq(..) => false,
            Formula::Not(f) | Formula::ForAll(_, f) | Formula::Exists(_, f) => {
                f.has_bounded_quantifiers()
            }
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.has_bounded_quantifiers() || b.has_bounded_quantifiers()
            }
            Formula::BoundedForAll(..) | Formula::BoundedExists(..) => true,
        }
    }
}

fn substitute_under_binder(
    v: &str,
    body: &Formula,
    map: &BTreeMap<String, Term>,
) -> (String, Formula) {
    let body_free = body.free_vars();
    let mut inner: BTreeMap<String, Term> = map
        .iter()
        .filter(|(k, _)| k.as_str() != v && body_free.contains(k.as_str()))
        .map(|(k, t)| (k.clone(), t.clone()))
        .collect();
    if inner.is_empty() {
        return (v.to_string(), body.clone());
    }
    let captures = inner.values().any(|t| t.mentions(v));
    if !captures {
        return (v.to_string(), body.substitute_all(&inner));
    }
    let mut avoid = body.all_vars();
    avoid.extend(inner.keys().cloned());
    for t in inner.values() {
        avoid.extend(t.vars());
    }
    avoid.insert(v.to_string());
    let renamed = fresh_name(v, &avoid);
    inner.insert(v.to_string(), Term::var(renamed.clone()));
    (renamed, body.substitute_all(&inner))
}

/// `base` if unused, otherwise `base1`, `base2`, ...
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|name| !avoid.contains(name))
        .expect("unbounded supply of names")
}

/// `s < t` as `∃w (s + S(w) = t)`, the order relation PA lacks as a primitive.
pub fn mk_less(s: &Term, t: &Term) -> Formula {
    let w = less_witness_name(s, t);
    Formula::exists(w.clone(), less_body(s, t, &w))
}

/// `s < t` with the witness bounded by `t`; equivalent over ℕ to [`mk_less`]
/// since `s + S(w) = t` forces `w < t`.
pub fn mk_less_bounded(s: &Term, t: &Term) -> Formula {
    let w = less_witness_name(s, t);
    Formula::bounded_exists(w.clone(), t.clone(), less_body(s, t, &w))
}

fn less_witness_name(s: &Term, t: &Term) -> String {
    let mut avoid = s.vars();
    avoid.extend(t.vars());
    fresh_name("w", &avoid)
}

fn less_body(s: &Term, t: &Term, w: &str) -> Formula {
    Formula::eq(Term::plus(s.clone(), Term::succ(Term::var(w))), t.clone())
}

/// `1 + (i + 1) * c`, the modulus β divides by.
pub fn beta_modulus(c: &Term, i: &Term) -> Term {
    Term::plus(
        numeral(&Nat::from(1u32)),
        Term::times(Term::succ(i.clone()), c.clone()),
    )
}

/// The formula representing `β(b, c, i) = y`, with chosen names for its
/// quotient and order witnesses.
pub(crate) fn bt_named(
    b: &Term,
    c: &Term,
    i: &Term,
    y: &Term,
    quotient: &str,
    slack: &str,
) -> Formula {
    let m = beta_modulus(c, i);
    let division = Formula::eq(
        b.clone(),
        Term::plus(Term::times(m.clone(), Term::var(quotient)), y.clone()),
    );
    let remainder_small = Formula::bounded_exists(
        slack,
        m.clone(),
        Formula::eq(Term::plus(y.clone(), Term::succ(Term::var(slack))), m),
    );
    Formula::bounded_exists(
        quotient,
        Term::succ(b.clone()),
        Formula::and(division, remainder_small),
    )
}

/// `Bt(b, c, i, y)`: `E w < S(b) . ((b = ((m * w) + y)) & y < m)` with
/// `m = 1 + (i + 1) * c`.
pub fn bt(b: &Term, c: &Term, i: &Term, y: &Term) -> Formula {
    let mut avoid = BTreeSet::new();
    for t in [b, c, i, y] {
        avoid.extend(t.vars());
    }
    let quotient = fresh_name("w", &avoid);
    avoid.insert(quotient.clone());
    let slack = fresh_name("w", &avoid);
    bt_named(b, c, i, y, &quotient, &slack)
}

/// The β formula over the free variables `x1..x4`.
pub fn mk_bt() -> Formula {
    bt(
        &Term::var("x1"),
        &Term::var("x2"),
        &Term::var("x3"),
        &Term::var("x4"),
    )
}

/// `∃₁var body` expanded as `¬∀var¬body ∧ ∀y∀z(body[y] ∧ body[z] → y = z)`.
pub fn mk_exists_unique(var: &str, body: &Formula) -> Formula {
    let mut avoid = body.all_vars();
    avoid.insert(var.to_string());
    let y = fresh_name("y", &avoid);
    avoid.insert(y.clone());
    let z = fresh_name("z", &avoid);
    let at_y = body.substitute(var, &Term::var(y.clone()));
    let at_z = body.substitute(var, &Term::var(z.clone()));
    Formula::and(
        Formula::not(Formula::forall(var, Formula::not(body.clone()))),
        Formula::forall(
            y.clone(),
            Formula::forall(
                z.clone(),
                Formula::implies(
                    Formula::and(at_y, at_z),
                    Formula::eq(Term::var(y), Term::var(z)),
                ),
            ),
        ),
    )
}

/// The Peano axioms PA1..PA8 over the free variables `x1, x2, x3`.
pub fn pa_axiom(index: usize) -> Result<Formula, FormulaError> {
    let x1 = || Term::var("x1");
    let x2 = || Term::var("x2");
    let x3 = || Term::var("x3");
    let eq = Formula::eq;
    Ok(match index {
        1 => Formula::implies(
            eq(x1(), x2()),
            Formula::implies(eq(x1(), x3()), eq(x2(), x3())),
        ),
        2 => Formula::implies(eq(x1(), x2()), eq(Term::succ(x1()), Term::succ(x2()))),
        3 => Formula::not(eq(Term::Zero, Term::succ(x1()))),
        4 => Formula::implies(eq(Term::succ(x1()), Term::succ(x2())), eq(x1(), x2())),
        5 => eq(Term::plus(x1(), Term::Zero), x1()),
        6 => eq(
            Term::plus(x1(), Term::succ(x2())),
            Term::succ(Term::plus(x1(), x2())),
        ),
        7 => eq(Term::times(x1(), Term::Zero), Term::Zero),
        8 => eq(
            Term::times(x1(), Term::succ(x2())),
            Term::plus(Term::times(x1(), x2()), x1()),
        ),
        other => return Err(FormulaError::NoSuchAxiom(other)),
    })
}

/// `F(0) -> ((A var . (F(var) -> F(S(var)))) -> A var . F(var))`.
pub fn induction_instance(f: &Formula, var: &str) -> Result<Formula, FormulaError> {
    if !f.free_vars().contains(var) {
        return Err(FormulaError::NotFree {
            var: var.to_string(),
            formula: f.to_string(),
        });
    }
    let at_zero = f.substitute(var, &Term::Zero);
    let at_succ = f.substitute(var, &Term::succ(Term::var(var)));
    Ok(Formula::implies(
        at_zero,
        Formula::implies(
            Formula::forall(var, Formula::implies(f.clone(), at_succ)),
            Formula::forall(var, f.clone()),
        ),
    ))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Succ(t) => write!(f, "S({t})"),
            Term::Plus(a, b) => write!(f, "({a} + {b})"),
            Term::Times(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "({a} = {b})"),
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::ForAll(v, g) => write!(f, "A {v} . {g}"),
            Formula::Exists(v, g) => write!(f, "E {v} . {g}"),
            Formula::BoundedForAll(v, t, g) => write!(f, "A {v} < {t} . {g}"),
            Formula::BoundedExists(v, t, g) => write!(f, "E {v} < {t} . {g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(n: u64) -> Term {
        numeral(&Nat::from(n))
    }

    #[test]
    fn numerals() {
        assert_eq!(num(0), Term::Zero);
        assert_eq!(num(2), Term::succ(Term::succ(Term::Zero)));
        assert_eq!(num(5).to_string(), "S(S(S(S(S(0)))))");
    }

    #[test]
    fn axioms_print_in_ascii() {
        let printed: Vec<String> = (1..=8).map(|i| pa_axiom(i).unwrap().to_string()).collect();
        assert_eq!(
            printed,
            [
                "((x1 = x2) -> ((x1 = x3) -> (x2 = x3)))",
                "((x1 = x2) -> (S(x1) = S(x2)))",
                "~(0 = S(x1))",
                "((S(x1) = S(x2)) -> (x1 = x2))",
                "((x1 + 0) = x1)",
                "((x1 + S(x2)) = S((x1 + x2)))",
                "((x1 * 0) = 0)",
                "((x1 * S(x2)) = ((x1 * x2) + x1))",
            ]
        );
        assert_eq!(pa_axiom(0), Err(FormulaError::NoSuchAxiom(0)));
        assert_eq!(pa_axiom(9), Err(FormulaError::NoSuchAxiom(9)));
    }

    #[test]
    fn induction_shape() {
        let f = Formula::eq(Term::var("x"), Term::var("x"));
        let inst = induction_instance(&f, "x").unwrap();
        assert_eq!(
            inst.to_string(),
            "((0 = 0) -> (A x . ((x = x) -> (S(x) = S(x))) -> A x . (x = x)))"
        );
        assert!(inst.free_vars().is_empty());
        assert!(induction_instance(&f, "y").is_err());
    }

    #[test]
    fn substitution_examples() {
        let f = Formula::eq(Term::var("x1"), Term::var("x2"));
        assert_eq!(f.substitute("x1", &num(1)).to_string(), "(S(0) = x2)");

        // capture: substituting y for x under a binder of y renames the binder
        let g = Formula::exists("y", Formula::eq(Term::var("x"), Term::var("y")));
        let h = g.substitute("x", &Term::var("y"));
        assert_eq!(h.to_string(), "E y1 . (y = y1)");

        // bound occurrences are untouched; the bound term is outside the scope
        let b =
            Formula::bounded_exists("x", Term::var("x"), Formula::eq(Term::var("x"), Term::Zero));
        assert_eq!(
            b.substitute("x", &num(3)).to_string(),
            "E x < S(S(S(0))) . (x = 0)"
        );
    }

    #[test]
    fn less_and_bt_shapes() {
        let less = mk_less(&Term::var("x"), &Term::var("w"));
        assert_eq!(less.to_string(), "E w1 . ((x + S(w1)) = w)");
        assert_eq!(
            mk_bt().to_string(),
            "E w < S(x1) . ((x1 = (((S(0) + (S(x3) * x2)) * w) + x4)) & E w1 < (S(0) + (S(x3) * x2)) . ((x4 + S(w1)) = (S(0) + (S(x3) * x2))))"
        );
        assert_eq!(
            mk_bt().free_vars(),
            ["x1", "x2", "x3", "x4"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
    }

    #[test]
    fn erase_bounds_removes_every_bounded_quantifier() {
        let erased = mk_bt().erase_bounds();
        assert!(!erased.has_bounded_quantifiers());
        assert_eq!(erased.free_vars(), mk_bt().free_vars());
        let s = erased.to_string();
        assert!(
            s.starts_with("E w . (E w1 . ((w + S(w1)) = S(x1)) & "),
            "{s}"
        );
    }

    #[test]
    fn exists_unique_matches_the_shorthand() {
        let body = Formula::eq(Term::var("x"), num(3));
        let f = mk_exists_unique("x", &body);
        let expected = Formula::and(
            Formula::not(Formula::forall("x", Formula::not(body.clone()))),
            Formula::forall(
                "y",
                Formula::forall(
                    "z",
                    Formula::implies(
                        Formula::and(
                            Formula::eq(Term::var("y"), num(3)),
                            Formula::eq(Term::var("z"), num(3)),
                        ),
                        Formula::eq(Term::var("y"), Term::var("z")),
                    ),
                ),
            ),
        );
        assert_eq!(f, expected);

        // names already used by the body are avoided
        let body = Formula::eq(Term::var("x"), Term::var("y"));
        let f = mk_exists_unique("x", &body);
        assert_eq!(
            f.to_string(),
            "(~A x . ~(x = y) & A y1 . A z . (((y1 = y) & (z = y)) -> (y1 = z)))"
        );
    }

    #[test]
    fn self_bounded_quantifiers_are_rejected() {
        let bad = Formula::bounded_forall("x", Term::var("x"), Formula::eq(Term::Zero, Term::Zero));
        assert_eq!(
            bad.check_bounds(),
            Err(FormulaError::SelfBounded { var: "x".into() })
        );
        assert!(mk_bt().check_bounds().is_ok());
    }
}
