//! Bound introduction for unbounded quantifiers whose range is already
//! pinned down by the formula itself.
//!
//! Every PA term is monotone in each of its variables, so a conjunct such
//! as `(x + S(w)) = t` with `x` absent from `t` forces `x ≤ t`. When the
//! body of `E x . F` forces such a bound, the quantifier may be rewritten as
//! `E x < S(t) . F`; dually `A x . F` becomes bounded when `F` holds
//! vacuously above some `t`. The result is equivalent over ℕ, and Δ₀ when
//! every quantifier could be bounded.

use std::collections::BTreeMap;

use super::{Formula, Term};

/// Rewrites each unbounded quantifier whose range is forced by its body
/// into the equivalent bounded one.
pub fn tighten_bounds(f: &Formula) -> Formula {
    match f {
        Formula::Eq(..) => f.clone(),
        Formula::Not(g) => Formula::not(tighten_bounds(g)),
        Formula::Implies(a, b) => Formula::implies(tighten_bounds(a), tighten_bounds(b)),
        Formula::And(a, b) => Formula::and(tighten_bounds(a), tighten_bounds(b)),
        Formula::Or(a, b) => Formula::or(tighten_bounds(a), tighten_bounds(b)),
        Formula::Exists(v, g) => {
            let body = tighten_bounds(g);
            match forces_at_most(&body, v) {
                Some(t) => Formula::bounded_exists(v.clone(), Term::succ(t), body),
                None => Formula::exists(v.clone(), body),
            }
        }
        Formula::ForAll(v, g) => {
            let body = tighten_bounds(g);
            match vacuous_above(&body, v) {
                Some(t) => Formula::bounded_forall(v.clone(), Term::succ(t), body),
                None => Formula::forall(v.clone(), body),
            }
        }
        Formula::BoundedForAll(v, t, g) => {
            Formula::bounded_forall(v.clone(), t.clone(), tighten_bounds(g))
        }
        Formula::BoundedExists(v, t, g) => {
            Formula::bounded_exists(v.clone(), t.clone(), tighten_bounds(g))
        }
    }
}

/// `x` occurs as a summand of `t`, so `value(t) ≥ x`.
fn dominates(t: &Term, x: &str) -> bool {
    match t {
        Term::Var(v) => v == x,
        Term::Succ(s) => dominates(s, x),
        Term::Plus(a, b) => dominates(a, x) || dominates(b, x),
        Term::Zero | Term::Times(..) => false,
    }
}

fn replace(t: Term, var: &str, by: &Term) -> Term {
    if !t.mentions(var) {
        return t;
    }
    let mut map = BTreeMap::new();
    map.insert(var.to_string(), by.clone());
    t.substitute_all(&map)
}

/// A term `t` (free of `x` and of variables bound inside `f`) such that
/// `f` can only hold when `x ≤ t`.
fn forces_at_most(f: &Formula, x: &str) -> Option<Term> {
    match f {
        Formula::Eq(a, b) => {
            if dominates(a, x) && !b.mentions(x) {
                Some(b.clone())
            } else if dominates(b, x) && !a.mentions(x) {
                Some(a.clone())
            } else {
                None
            }
        }
        Formula::And(a, b) => forces_at_most(a, x).or_else(|| forces_at_most(b, x)),
        Formula::Or(a, b) => Some(Term::plus(forces_at_most(a, x)?, forces_at_most(b, x)?)),
        Formula::BoundedExists(w, bound, g) if w != x => {
            // w < bound and terms are monotone, so t(w) ≤ t(bound)
            Some(replace(forces_at_most(g, x)?, w, bound)).filter(|t| !t.mentions(x))
        }
        Formula::Exists(w, g) if w != x => forces_at_most(g, x).filter(|t| !t.mentions(w)),
        Formula::ForAll(w, g) if w != x => {
            // instantiate the universal at 0
            Some(replace(forces_at_most(g, x)?, w, &Term::Zero))
        }
        _ => None,
    }
}

/// A term `t` (free of `x` and of variables bound inside `f`) such that
/// `f` holds whenever `x > t`.
fn vacuous_above(f: &Formula, x: &str) -> Option<Term> {
    match f {
        Formula::Implies(a, b) => forces_at_most(a, x).or_else(|| vacuous_above(b, x)),
        Formula::Not(p) => forces_at_most(p, x),
        Formula::Or(a, b) => vacuous_above(a, x).or_else(|| vacuous_above(b, x)),
        Formula::And(a, b) => Some(Term::plus(vacuous_above(a, x)?, vacuous_above(b, x)?)),
        Formula::ForAll(z, g) | Formula::Exists(z, g) if z != x => {
            vacuous_above(g, x).filter(|t| !t.mentions(z))
        }
        Formula::BoundedForAll(z, bound, g) if z != x => {
            Some(replace(vacuous_above(g, x)?, z, bound)).filter(|t| !t.mentions(x))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{mk_exists_unique, mk_less, parse_formula};

    #[test]
    fn unbounded_existential_gets_its_forced_bound() {
        let f = parse_formula("E x1 . ((x1 + S(0)) = 0)").unwrap();
        assert_eq!(
            tighten_bounds(&f).to_string(),
            "E x1 < S(0) . ((x1 + S(0)) = 0)"
        );
    }

    #[test]
    fn less_becomes_delta0() {
        let f = mk_less(&Term::var("a"), &Term::var("b"));
        let t = tighten_bounds(&f);
        assert!(t.is_delta0());
        assert_eq!(t.to_string(), "E w < S(b) . ((a + S(w)) = b)");
    }

    #[test]
    fn uniqueness_of_a_pinned_value_is_bounded() {
        let body = parse_formula("(x = S(S(S(0))))").unwrap();
        let t = tighten_bounds(&mk_exists_unique("x", &body));
        assert!(t.is_delta0(), "{t}");
    }

    #[test]
    fn products_give_no_bound() {
        let body = parse_formula("((x * x) = x)").unwrap();
        let t = tighten_bounds(&mk_exists_unique("x", &body));
        assert!(!t.is_delta0());
        let f = parse_formula("E x . ((x * S(S(0))) = y)").unwrap();
        assert_eq!(tighten_bounds(&f), f);
    }

    #[test]
    fn inner_bound_variables_do_not_leak() {
        // x ≤ w but w is itself unbounded: no bound for x
        let f = parse_formula("E x . E w . (x = w)").unwrap();
        assert_eq!(tighten_bounds(&f).to_string(), "E x . E w < S(x) . (x = w)");
        // x ≤ w + 0 with w < y: bound through the bounded quantifier
        let g = parse_formula("E x . E w < y . ((x + 0) = w)").unwrap();
        assert_eq!(
            tighten_bounds(&g).to_string(),
            "E x < S(y) . E w < y . ((x + 0) = w)"
        );
    }
}
