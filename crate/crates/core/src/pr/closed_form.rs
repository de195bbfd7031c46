//! Multivariate polynomials over ℕ, used as closed forms for recursions
//! whose step only adds a recursion-invariant amount to the accumulator.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Nat;

/// Sum of `coefficient * prod(x_i ^ exponent_i)` over `vars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Nat>,
}

impl Poly {
    pub(crate) fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn constant(vars: usize, c: Nat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub(crate) fn one(vars: usize) -> Self {
        Poly::constant(vars, Nat::one())
    }

    pub(crate) fn var(vars: usize, i: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = 1;
        let mut p = Poly::zero(vars);
        p.terms.insert(exps, Nat::one());
        p
    }

    pub(crate) fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            *out.terms.entry(e.clone()).or_insert_with(Nat::zero) += c;
        }
        out
    }

    pub(crate) fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Poly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *out.terms.entry(e).or_insert_with(Nat::zero) += ca * cb;
            }
        }
        out
    }

    /// Substitutes `subs[i]` for variable `i`; the result lives in the
    /// variable space of the substituted polynomials.
    pub(crate) fn compose(&self, subs: &[Poly]) -> Poly {
        debug_assert_eq!(subs.len(), self.vars);
        let target = subs.first().map(|p| p.vars).unwrap_or(0);
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&subs[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// `(exponents, coefficient)` pairs with non-zero coefficients.
    pub(crate) fn monomials(&self) -> impl Iterator<Item = (&[u32], &Nat)> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.as_slice(), c))
    }

    pub(crate) fn eval(&self, args: &[Nat]) -> Nat {
        let mut total = Nat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in args.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        total
    }
}

/// Closed form of `f(x, 0) = base(x)`, `f(x, y+1) = step(x, y, f(x, y))`
/// when `step(x, y, z) = z + p(x)`: then `f(x, y) = base(x) + y * p(x)`.
pub(crate) fn close_recursion(base: &Poly, step: &Poly) -> Option<Poly> {
    let n = base.vars;
    debug_assert_eq!(step.vars, n + 2);
    let mut acc_exp = vec![0u32; n + 2];
    acc_exp[n + 1] = 1;
    if step.terms.get(&acc_exp).map(|c| c.is_one()) != Some(true) {
        return None;
    }
    let mut increment = Poly::zero(n + 1);
    for (e, c) in &step.terms {
        if *e == acc_exp {
            continue;
        }
        if e[n] != 0 || e[n + 1] != 0 {
            return None;
        }
        let mut lifted = e[..n].to_vec();
        lifted.push(0);
        increment.terms.insert(lifted, c.clone());
    }
    let lift = |p: &Poly| -> Poly {
        let mut out = Poly::zero(n + 1);
        for (e, c) in &p.terms {
            let mut lifted = e.clone();
            lifted.push(0);
            out.terms.insert(lifted, c.clone());
        }
        out
    };
    Some(lift(base).add(&Poly::var(n + 1, n).mul(&increment)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn compose_squares() {
        // (x0 + 1) composed with x0 * x1 gives x0*x1 + 1
        let p = Poly::var(1, 0).add(&Poly::one(1));
        let q = Poly::var(2, 0).mul(&Poly::var(2, 1));
        let r = p.compose(&[q]);
        assert_eq!(r.eval(&[nat(3), nat(4)]), nat(13));
    }

    #[test]
    fn recursion_with_constant_increment() {
        // base(x) = x, step = z + 1  ->  x + y
        let base = Poly::var(1, 0);
        let step = Poly::var(3, 2).add(&Poly::one(3));
        let f = close_recursion(&base, &step).unwrap();
        assert_eq!(f.eval(&[nat(2), nat(3)]), nat(5));
    }

    #[test]
    fn step_depending_on_counter_is_not_closed() {
        let base = Poly::var(1, 0);
        let step = Poly::var(3, 2).add(&Poly::var(3, 1));
        assert!(close_recursion(&base, &step).is_none());
        let doubling = Poly::var(3, 2).mul(&Poly::constant(3, nat(2)));
        assert!(close_recursion(&base, &doubling).is_none());
    }
}
