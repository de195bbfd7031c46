//! JSON shapes for command output. Big numbers are decimal strings.

use serde::Serialize;

use crate::compile::WitnessBundle;
use crate::eval::{AxiomReport, GrowthRow, VerificationReport};
use crate::BetaCode;
use crate::Nat;

fn dec(n: &Nat) -> String {
    n.to_str_radix(10)
}

fn decs(ns: &[Nat]) -> Vec<String> {
    ns.iter().map(dec).collect()
}

#[derive(Serialize)]
pub(crate) struct Code {
    b: String,
    c: String,
    length: usize,
}

impl From<&BetaCode> for Code {
    fn from(code: &BetaCode) -> Self {
        Code {
            b: dec(&code.b),
            c: dec(&code.c),
            length: code.length,
        }
    }
}

#[derive(Serialize)]
pub(crate) struct Bundle {
    k: Vec<String>,
    m: String,
    u: String,
    v: String,
    t: String,
    trace: Vec<String>,
}

impl From<&WitnessBundle> for Bundle {
    fn from(b: &WitnessBundle) -> Self {
        Bundle {
            k: decs(&b.k),
            m: dec(&b.m),
            u: dec(&b.u),
            v: dec(&b.v),
            t: dec(&b.t),
            trace: decs(&b.trace),
        }
    }
}

#[derive(Serialize)]
pub(crate) struct CheckOut {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
pub(crate) struct Verification {
    function: String,
    verified: bool,
    bundle: Bundle,
    checks: Vec<CheckOut>,
    formula_value: String,
    u_bits: u64,
    v_bits: u64,
}

impl From<&VerificationReport> for Verification {
    fn from(r: &VerificationReport) -> Self {
        Verification {
            function: r.function.clone(),
            verified: r.verified(),
            bundle: (&r.bundle).into(),
            checks: r
                .checks()
                .into_iter()
                .map(|c| CheckOut {
                    name: c.name,
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
            formula_value: r.formula_value.to_string(),
            u_bits: r.u_bits,
            v_bits: r.v_bits,
        }
    }
}

#[derive(Serialize)]
pub(crate) struct Growth {
    m: usize,
    v: String,
    u_bits: u64,
}

impl From<&GrowthRow> for Growth {
    fn from(r: &GrowthRow) -> Self {
        Growth {
            m: r.m,
            v: dec(&r.v),
            u_bits: r.u_bits,
        }
    }
}

#[derive(Serialize)]
pub(crate) struct Tally {
    name: String,
    true_count: u64,
    false_count: u64,
    unknown_count: u64,
}

#[derive(Serialize)]
pub(crate) struct Failure {
    name: String,
    assignment: String,
    value: String,
}

#[derive(Serialize)]
pub(crate) struct Axioms {
    samples: u64,
    seed: u64,
    ok: bool,
    axioms: Vec<Tally>,
    induction: Vec<Tally>,
    bounded_induction: Vec<Tally>,
    failures: Vec<Failure>,
}

impl From<&AxiomReport> for Axioms {
    fn from(r: &AxiomReport) -> Self {
        let tallies = |ts: &[crate::eval::AxiomTally]| {
            ts.iter()
                .map(|t| Tally {
                    name: t.name.clone(),
                    true_count: t.true_count,
                    false_count: t.false_count,
                    unknown_count: t.unknown_count,
                })
                .collect()
        };
        Axioms {
            samples: r.samples,
            seed: r.seed,
            ok: r.ok(),
            axioms: tallies(&r.axioms),
            induction: tallies(&r.induction),
            bounded_induction: tallies(&r.bounded_induction),
            failures: r
                .failures
                .iter()
                .map(|f| Failure {
                    name: f.name.clone(),
                    assignment: f.assignment.to_string(),
                    value: f.value.to_string(),
                })
                .collect(),
        }
    }
}
