//! Instance verification for compiled recursions.

use std::collections::BTreeMap;
use std::fmt;

use crate::beta::{beta, encode_sequence};
use crate::compile::{compile_with_plan, make_witness_bundle, WitnessBundle, WitnessPlan};
use crate::pr::{depth_from_nat, eval_pr, trace_pr, PrFunction};
use crate::{Error, Nat};

use super::{
    eval_with_source, Assignment, Bindings, EvalBudget, EvalError, TruthValue, WitnessSource,
};

/// One named clause of a verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failure: Option<String>) -> Self {
        Check {
            name,
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| "ok".into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub function: String,
    pub bundle: WitnessBundle,
    /// (a) the trace obeys base and step.
    pub recurrence: Check,
    /// (b) `β(u, v, i)` reproduces the trace.
    pub decoding: Check,
    /// (c) the compiled formula holds at `(k, m, t)` under the witnesses.
    pub formula: Check,
    pub formula_value: TruthValue,
    pub u_bits: u64,
    pub v_bits: u64,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }

    pub fn checks(&self) -> [&Check; 3] {
        [&self.recurrence, &self.decoding, &self.formula]
    }

    /// The first clause that failed.
    pub fn failure(&self) -> Option<&Check> {
        self.checks().into_iter().find(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failure() {
            None => write!(
                f,
                "VERIFIED t={} u_bits={} v_bits={}",
                self.bundle.t, self.u_bits, self.v_bits
            ),
            Some(c) => write!(f, "FAILED {}: {}", c.name, c.detail),
        }
    }
}

/// Explicit witnesses first, then the compiler's plan.
struct Overlay<'a> {
    fixed: BTreeMap<String, Nat>,
    plan: &'a WitnessPlan,
}

impl WitnessSource for Overlay<'_> {
    fn witness(&self, var: &str, bindings: &Bindings<'_>) -> Result<Option<Nat>, EvalError> {
        match self.fixed.get(var) {
            Some(v) => Ok(Some(v.clone())),
            None => self.plan.witness(var, bindings),
        }
    }
}

fn instance(values: impl IntoIterator<Item = Nat>) -> Assignment {
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| (format!("x{}", i + 1), v))
        .collect()
}

/// [`verify_instance_with`] under the default witness ceiling and no step
/// limit; every quantifier in a compiled formula is witnessed or bounded.
pub fn verify_instance(f: &PrFunction, k: &[Nat], m: &Nat) -> Result<VerificationReport, Error> {
    verify_instance_with(f, k, m, EvalBudget::default().without_step_limit())
}

/// Builds the witness bundle for `f(k, m)` and checks it three ways.
pub fn verify_instance_with(
    f: &PrFunction,
    k: &[Nat],
    m: &Nat,
    budget: EvalBudget,
) -> Result<VerificationReport, Error> {
    let (base, step) = f.as_primrec()?;
    let bundle = make_witness_bundle(f, k, m)?;

    let mut problem = None;
    let first = eval_pr(base, k)?;
    if bundle.trace[0] != first {
        problem = Some(format!(
            "f(k, 0) = {} but the base gives {first}",
            bundle.trace[0]
        ));
    }
    for (i, pair) in bundle.trace.windows(2).enumerate() {
        if problem.is_some() {
            break;
        }
        let mut args = k.to_vec();
        args.extend([Nat::from(i), pair[0].clone()]);
        let next = eval_pr(step, &args)?;
        if pair[1] != next {
            problem = Some(format!(
                "f(k, {}) = {} but the step gives {next}",
                i + 1,
                pair[1]
            ));
        }
    }
    let recurrence = Check::new("(a) trace recurrence", problem);

    let mut problem = None;
    for (i, want) in bundle.trace.iter().enumerate() {
        let got = beta(&bundle.u, &bundle.v, &Nat::from(i));
        if &got != want {
            problem = Some(format!("beta(u, v, {i}) = {got}, trace has {want}"));
            break;
        }
    }
    if problem.is_none() && bundle.trace.last() != Some(&bundle.t) {
        problem = Some("t differs from the last trace entry".into());
    }
    let decoding = Check::new("(b) decode round trip", problem);

    let compiled = compile_with_plan(f)?;
    let (u_name, v_name) = compiled.code_vars.clone().expect("a recursion has a code");
    let source = Overlay {
        fixed: BTreeMap::from([(u_name, bundle.u.clone()), (v_name, bundle.v.clone())]),
        plan: &compiled.plan,
    };
    let a = instance(k.iter().cloned().chain([m.clone(), bundle.t.clone()]));
    let formula_value = eval_with_source(&compiled.formula, &a, &source, budget)?;
    let formula = Check::new(
        "(c) compiled formula",
        (formula_value != TruthValue::True).then(|| format!("evaluates to {formula_value} at {a}")),
    );

    Ok(VerificationReport {
        function: f.to_string(),
        u_bits: bundle.u.bits(),
        v_bits: bundle.v.bits(),
        bundle,
        recurrence,
        decoding,
        formula,
        formula_value,
    })
}

/// Size of the canonical code of `f(k, 0..=m)` as `m` grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub m: usize,
    pub v: Nat,
    pub u_bits: u64,
}

/// One row per `m` in `0..=m_max`.
pub fn witness_growth(f: &PrFunction, k: &[Nat], m_max: &Nat) -> Result<Vec<GrowthRow>, Error> {
    let depth = depth_from_nat(m_max)?;
    let trace = trace_pr(f, k, depth)?;
    (0..=depth)
        .map(|m| {
            let code = encode_sequence(&trace[..=m])?;
            Ok(GrowthRow {
                m,
                u_bits: code.b.bits(),
                v: code.c,
            })
        })
        .collect()
}

/// Semantic check of representability at one argument tuple.
#[derive(Clone, Debug)]
pub struct RepresentationReport {
    pub value: Nat,
    /// The compiled formula at the true value.
    pub existence: TruthValue,
    /// Other candidate outputs and how the formula judged them.
    pub rejections: Vec<(Nat, TruthValue)>,
    /// `(u, v)` pairs tried for the outermost code.
    pub sweep_points: u64,
    /// `(u, v, candidate)` triples that made a wrong candidate true.
    pub sweep_accepted: Vec<(Nat, Nat, Nat)>,
}

impl RepresentationReport {
    pub fn holds(&self) -> bool {
        self.existence == TruthValue::True
            && self.rejections.iter().all(|(_, v)| *v == TruthValue::False)
            && self.sweep_accepted.is_empty()
    }
}

/// Uniqueness of the output cannot be decided by search over ℕ, so it is
/// sampled: the true value must be accepted, nearby wrong values rejected,
/// and for recursions no `(u, v)` with `u < max_u`, `v < max_v` may make the
/// first wrong value true.
pub fn check_representation(
    f: &PrFunction,
    args: &[Nat],
    max_u: u64,
    max_v: u64,
) -> Result<RepresentationReport, Error> {
    let value = eval_pr(f, args)?;
    let compiled = compile_with_plan(f)?;
    let budget = EvalBudget::default().without_step_limit();
    let at = |out: &Nat| instance(args.iter().cloned().chain([out.clone()]));

    let existence = eval_with_source(&compiled.formula, &at(&value), &compiled.plan, budget)?;

    let mut candidates: Vec<Nat> = (0u32..16).map(Nat::from).filter(|c| c < &value).collect();
    candidates.extend([&value + 1u32, &value + 2u32]);
    let mut rejections = Vec::with_capacity(candidates.len());
    for c in candidates {
        let v = eval_with_source(&compiled.formula, &at(&c), &compiled.plan, budget)?;
        rejections.push((c, v));
    }

    let mut sweep_points = 0;
    let mut sweep_accepted = Vec::new();
    if let Some((u_name, v_name)) = &compiled.code_vars {
        let wrong = &value + 1u32;
        let a = at(&wrong);
        for u in 0..max_u {
            for v in 0..max_v {
                let source = Overlay {
                    fixed: BTreeMap::from([
                        (u_name.clone(), Nat::from(u)),
                        (v_name.clone(), Nat::from(v)),
                    ]),
                    plan: &compiled.plan,
                };
                sweep_points += 1;
                if eval_with_source(&compiled.formula, &a, &source, budget)? == TruthValue::True {
                    sweep_accepted.push((Nat::from(u), Nat::from(v), wrong.clone()));
                }
            }
        }
    }

    Ok(RepresentationReport {
        value,
        existence,
        rejections,
        sweep_points,
        sweep_accepted,
    })
}
