//! From primitive-recursive definitions to the PA formulas representing them.
//!
//! `compile(f)` for `f` of arity `n` has the free variables `x1..x{n+1}` and
//! holds over ℕ exactly when `x{n+1} = f(x1, ..., xn)`:
//!
//! * `zero/n` ↦ `(x{n+1} = 0)`, `succ` ↦ `(x2 = S(x1))`, `proj/n.i` ↦ `(x{n+1} = xi)`.
//! * `comp(h; g1..gk)` introduces one variable per inner value,
//!   `E t1 . ... E tk . (G1(x, t1) & ... & Gk(x, tk) & H(t, out))`, each
//!   quantifier bounded by a polynomial when the inner function is one.
//! * `primrec(g; h)` uses β to speak about the whole sequence of values
//!   `f(x, 0), ..., f(x, y)` through one pair `(u, v)`:
//!
//! ```text
//! E u . E v . ( E w < 1+v . (Bt(u,v,0,w) & G(x,w))
//!             & Bt(u,v,y,out)
//!             & A w < y . E p < M . E q < M . (Bt(u,v,w,p) & Bt(u,v,w+1,q) & H(x,w,p,q)) )
//! ```
//!
//! with `M = 1 + (w+2)·v`, the modulus for index `w+1`, which bounds both
//! sequence entries.
//!
//! Alongside the formula the compiler emits a [`WitnessPlan`]: for each
//! existential it introduces, how to compute the value that makes the
//! formula true. The plan turns every instance check into a finite
//! computation.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::beta::{beta, encode_sequence};
use crate::eval::{Bindings, EvalError, WitnessSource};
use crate::formula::{self, mk_exists_unique, numeral, Formula, Term};
use crate::pr::{depth_from_nat, eval_pr, polynomial, trace_pr, Poly, PrError, PrFunction};
use crate::{Error, Nat};

/// A compiled function: its formula and how to witness the formula's
/// existentials.
#[derive(Debug)]
pub struct Compiled {
    pub formula: Formula,
    pub plan: WitnessPlan,
    /// Names of `u` and `v` for the outermost recursion, when `f` is one.
    pub code_vars: Option<(String, String)>,
}

/// Which half of a β code a witness is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodePart {
    U,
    V,
}

/// How to compute the witness for one existential variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessRule {
    /// `function(args)`.
    Value {
        function: PrFunction,
        args: Vec<Term>,
    },
    /// Half of the canonical code of `function(k, 0..=depth)`. Rules with
    /// the same `recursion` share one computation.
    Code {
        recursion: usize,
        function: PrFunction,
        k: Vec<Term>,
        depth: Term,
        part: CodePart,
    },
    /// `β(b, c, index)` for the variables `b`, `c`.
    Beta { b: String, c: String, index: Term },
}

impl fmt::Display for WitnessRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ts: &[Term]| {
            ts.iter()
                .map(Term::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            WitnessRule::Value { function, args } => write!(f, "{function} at ({})", list(args)),
            WitnessRule::Code {
                function,
                k,
                depth,
                part,
                ..
            } => {
                let half = match part {
                    CodePart::U => "u",
                    CodePart::V => "v",
                };
                write!(
                    f,
                    "{half} of the code of {function} at ({}; 0..={depth})",
                    list(k)
                )
            }
            WitnessRule::Beta { b, c, index } => write!(f, "beta({b}, {c}, {index})"),
        }
    }
}

/// β codes already computed, keyed by recursion, `k` and depth.
type CodeCache = RefCell<BTreeMap<(usize, Vec<Nat>, Nat), (Nat, Nat)>>;

/// Witness rules keyed by variable, with a cache of β codes.
#[derive(Debug, Default)]
pub struct WitnessPlan {
    rules: BTreeMap<String, WitnessRule>,
    codes: CodeCache,
}

impl WitnessPlan {
    pub fn rules(&self) -> &BTreeMap<String, WitnessRule> {
        &self.rules
    }

    fn code(
        &self,
        recursion: usize,
        function: &PrFunction,
        k: Vec<Nat>,
        depth: Nat,
    ) -> Result<(Nat, Nat), Error> {
        let key = (recursion, k, depth);
        if let Some(hit) = self.codes.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let bundle = make_witness_bundle(function, &key.1, &key.2)?;
        let pair = (bundle.u, bundle.v);
        self.codes.borrow_mut().insert(key, pair.clone());
        Ok(pair)
    }
}

impl WitnessSource for WitnessPlan {
    fn witness(&self, var: &str, bindings: &Bindings<'_>) -> Result<Option<Nat>, EvalError> {
        let Some(rule) = self.rules.get(var) else {
            return Ok(None);
        };
        let values = |ts: &[Term]| -> Result<Vec<Nat>, EvalError> {
            ts.iter().map(|t| bindings.eval_term(t)).collect()
        };
        let failed = |e: Error| EvalError::Witness(e.to_string());
        Ok(Some(match rule {
            WitnessRule::Value { function, args } => {
                eval_pr(function, &values(args)?).map_err(|e| failed(e.into()))?
            }
            WitnessRule::Code {
                recursion,
                function,
                k,
                depth,
                part,
            } => {
                let (u, v) = self
                    .code(*recursion, function, values(k)?, bindings.eval_term(depth)?)
                    .map_err(failed)?;
                match part {
                    CodePart::U => u,
                    CodePart::V => v,
                }
            }
            WitnessRule::Beta { b, c, index } => {
                let get = |name: &str| {
                    bindings
                        .get(name)
                        .cloned()
                        .ok_or_else(|| EvalError::UnboundVariable(name.to_string()))
                };
                beta(&get(b)?, &get(c)?, &bindings.eval_term(index)?)
            }
        }))
    }
}

/// The formula representing `f`, over `x1..x{n+1}`.
pub fn compile(f: &PrFunction) -> Result<Formula, PrError> {
    Ok(compile_with_plan(f)?.formula)
}

/// [`compile`] together with the witness plan for its existentials.
pub fn compile_with_plan(f: &PrFunction) -> Result<Compiled, PrError> {
    let n = f.arity()?;
    let inputs: Vec<Term> = (1..=n).map(|i| Term::var(format!("x{i}"))).collect();
    let output = Term::var(format!("x{}", n + 1));
    let mut c = Compiler::default();
    let formula = c.compile_at(f, &inputs, &output);
    let code_vars = match f {
        PrFunction::PrimRec { .. } => c.first_code.clone(),
        _ => None,
    };
    Ok(Compiled {
        formula,
        plan: WitnessPlan {
            rules: c.rules,
            codes: RefCell::default(),
        },
        code_vars,
    })
}

#[derive(Default)]
struct Compiler {
    counters: BTreeMap<&'static str, usize>,
    rules: BTreeMap<String, WitnessRule>,
    recursions: usize,
    first_code: Option<(String, String)>,
}

impl Compiler {
    fn fresh(&mut self, base: &'static str) -> String {
        let n = self.counters.entry(base).or_insert(0);
        *n += 1;
        format!("{base}{n}")
    }

    fn bt(&mut self, b: &str, c: &str, i: &Term, y: &Term) -> Formula {
        let quotient = self.fresh("q");
        let slack = self.fresh("r");
        formula::bt_named(&Term::var(b), &Term::var(c), i, y, &quotient, &slack)
    }

    fn compile_at(&mut self, f: &PrFunction, inputs: &[Term], output: &Term) -> Formula {
        match f {
            PrFunction::Zero { .. } => Formula::eq(output.clone(), Term::Zero),
            PrFunction::Succ => Formula::eq(output.clone(), Term::succ(inputs[0].clone())),
            PrFunction::Proj { index, .. } => {
                Formula::eq(output.clone(), inputs[index - 1].clone())
            }
            PrFunction::Comp { outer, inners } => {
                let names: Vec<String> = inners.iter().map(|_| self.fresh("t")).collect();
                let mut parts: Vec<Formula> = inners
                    .iter()
                    .zip(&names)
                    .map(|(g, t)| self.compile_at(g, inputs, &Term::var(t.clone())))
                    .collect();
                let mids: Vec<Term> = names.iter().cloned().map(Term::var).collect();
                parts.push(self.compile_at(outer, &mids, output));
                let mut body = Formula::conjunction(parts).expect("at least the outer part");
                for (g, t) in inners.iter().zip(&names).rev() {
                    self.rules.insert(
                        t.clone(),
                        WitnessRule::Value {
                            function: g.clone(),
                            args: inputs.to_vec(),
                        },
                    );
                    body = match value_bound(g, inputs) {
                        Some(b) => Formula::bounded_exists(t.clone(), Term::succ(b), body),
                        None => Formula::exists(t.clone(), body),
                    };
                }
                body
            }
            PrFunction::PrimRec { base, step } => {
                let (k, depth) = inputs.split_at(inputs.len() - 1);
                let depth = &depth[0];
                let recursion = self.recursions;
                self.recursions += 1;
                let u = self.fresh("u");
                let v = self.fresh("v");
                if self.first_code.is_none() {
                    self.first_code = Some((u.clone(), v.clone()));
                }
                let w0 = self.fresh("w");
                let w = self.fresh("w");
                let y = self.fresh("y");
                let z = self.fresh("z");
                let var = |s: &String| Term::var(s.clone());
                let next = Term::plus(var(&w), Term::succ(Term::Zero));

                for (name, part) in [(&u, CodePart::U), (&v, CodePart::V)] {
                    self.rules.insert(
                        name.clone(),
                        WitnessRule::Code {
                            recursion,
                            function: f.clone(),
                            k: k.to_vec(),
                            depth: depth.clone(),
                            part,
                        },
                    );
                }
                for (name, index) in [(&w0, Term::Zero), (&y, var(&w)), (&z, next.clone())] {
                    self.rules.insert(
                        name.clone(),
                        WitnessRule::Beta {
                            b: u.clone(),
                            c: v.clone(),
                            index,
                        },
                    );
                }

                let start = {
                    let bt0 = self.bt(&u, &v, &Term::Zero, &var(&w0));
                    let g = self.compile_at(base, k, &var(&w0));
                    Formula::bounded_exists(
                        w0.clone(),
                        formula::beta_modulus(&var(&v), &Term::Zero),
                        Formula::and(bt0, g),
                    )
                };
                let finish = self.bt(&u, &v, depth, output);
                let steps = {
                    let bt_y = self.bt(&u, &v, &var(&w), &var(&y));
                    let bt_z = self.bt(&u, &v, &next, &var(&z));
                    let mut h_args = k.to_vec();
                    h_args.extend([var(&w), var(&y)]);
                    let h = self.compile_at(step, &h_args, &var(&z));
                    let m = formula::beta_modulus(&var(&v), &next);
                    Formula::bounded_forall(
                        w.clone(),
                        depth.clone(),
                        Formula::bounded_exists(
                            y.clone(),
                            m.clone(),
                            Formula::bounded_exists(
                                z.clone(),
                                m,
                                Formula::conjunction(vec![bt_y, bt_z, h]).expect("non-empty"),
                            ),
                        ),
                    )
                };
                Formula::exists(
                    u.clone(),
                    Formula::exists(
                        v.clone(),
                        Formula::conjunction(vec![start, finish, steps]).expect("non-empty"),
                    ),
                )
            }
        }
    }
}

/// A term bounding `f(args)` from above, when `f` is a polynomial with
/// modest coefficients. Terms are monotone, so the bound stays valid when
/// the arguments are themselves bounds.
fn value_bound(f: &PrFunction, args: &[Term]) -> Option<Term> {
    poly_term(&polynomial(f)?, args)
}

const MAX_BOUND_COEFFICIENT: u32 = 64;

fn poly_term(p: &Poly, args: &[Term]) -> Option<Term> {
    let mut sum: Option<Term> = None;
    let monomials: Vec<_> = p.monomials().collect();
    // highest degree first, constants last
    for (exps, coef) in monomials.into_iter().rev() {
        if *coef > Nat::from(MAX_BOUND_COEFFICIENT) {
            return None;
        }
        let mut factors = Vec::new();
        if !coef.is_one() || exps.iter().all(|&e| e == 0) {
            factors.push(numeral(coef));
        }
        for (arg, &e) in args.iter().zip(exps) {
            factors.extend(std::iter::repeat_n(arg.clone(), e as usize));
        }
        let mono = factors.into_iter().reduce(Term::times)?;
        sum = Some(match sum {
            None => mono,
            Some(s) => Term::plus(s, mono),
        });
    }
    Some(sum.unwrap_or(Term::Zero))
}

/// The data certifying one instance `f(k, m) = t` of a recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessBundle {
    pub k: Vec<Nat>,
    pub m: Nat,
    pub u: Nat,
    pub v: Nat,
    pub t: Nat,
    /// `f(k, 0), ..., f(k, m)`.
    pub trace: Vec<Nat>,
}

/// Trace of `f` at `k` up to depth `m`, and its canonical β code.
pub fn make_witness_bundle(f: &PrFunction, k: &[Nat], m: &Nat) -> Result<WitnessBundle, Error> {
    let depth = depth_from_nat(m)?;
    let trace = trace_pr(f, k, depth)?;
    let code = encode_sequence(&trace)?;
    Ok(WitnessBundle {
        k: k.to_vec(),
        m: m.clone(),
        u: code.b,
        v: code.c,
        t: trace[depth].clone(),
        trace,
    })
}

/// `∃₁x{n+1} F(k1, ..., kn, x{n+1})` for `F = compile(f)`.
pub fn representation_statement(f: &PrFunction, args: &[Nat]) -> Result<Formula, Error> {
    let n = f.arity()?;
    if args.len() != n {
        return Err(PrError::ArityMismatch {
            function: f.to_string(),
            expected: n,
            got: args.len(),
        }
        .into());
    }
    let map: BTreeMap<String, Term> = args
        .iter()
        .enumerate()
        .map(|(i, a)| (format!("x{}", i + 1), numeral(a)))
        .collect();
    let body = compile(f)?.substitute_all(&map);
    Ok(mk_exists_unique(&format!("x{}", n + 1), &body))
}
