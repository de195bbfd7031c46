//! Sampling the Peano axioms and induction instances over ℕ.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{induction_instance, numeral, pa_axiom, parse_formula, Formula, Term};
use crate::Nat;

use super::{eval_formula, Assignment, EvalBudget, EvalError, TruthValue};

const MAX_VALUE: u64 = 1_000_000;
/// Range of the relativized induction instances.
const MAX_INDUCTION_BOUND: u64 = 40;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomTally {
    pub name: String,
    pub true_count: u64,
    pub false_count: u64,
    pub unknown_count: u64,
}

impl AxiomTally {
    fn new(name: String) -> Self {
        AxiomTally {
            name,
            ..Self::default()
        }
    }

    fn record(&mut self, v: TruthValue) {
        match v {
            TruthValue::True => self.true_count += 1,
            TruthValue::False => self.false_count += 1,
            TruthValue::Unknown(_) => self.unknown_count += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub name: String,
    pub assignment: Assignment,
    pub value: TruthValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: u64,
    pub seed: u64,
    /// PA1..PA8.
    pub axioms: Vec<AxiomTally>,
    /// Induction instances as stated, with unbounded quantifiers. Only
    /// True/Unknown are acceptable; a finite search never confirms them.
    pub induction: Vec<AxiomTally>,
    /// Induction relativized to `x < n`, decided exactly.
    pub bounded_induction: Vec<AxiomTally>,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Induction formulas, each with `x` free (and possibly `x1`, `x2`).
pub fn induction_catalog() -> Vec<Formula> {
    [
        "(x = x)",
        "((0 + x) = x)",
        "((x * S(0)) = x)",
        "((x + x1) = (x1 + x))",
        "((x1 * (x + x2)) = ((x1 * x) + (x1 * x2)))",
        "~(S(x) = x)",
    ]
    .into_iter()
    .map(|s| parse_formula(s).expect("catalog formulas parse"))
    .collect()
}

/// `F(0) -> ((A x < n . (F(x) -> F(S(x)))) -> A x < S(n) . F(x))`.
fn bounded_induction(f: &Formula, var: &str, n: &Term) -> Formula {
    let at_zero = f.substitute(var, &Term::Zero);
    let at_succ = f.substitute(var, &Term::succ(Term::var(var)));
    Formula::implies(
        at_zero,
        Formula::implies(
            Formula::bounded_forall(var, n.clone(), Formula::implies(f.clone(), at_succ)),
            Formula::bounded_forall(var, Term::succ(n.clone()), f.clone()),
        ),
    )
}

/// Evaluates PA1..PA8 and the induction catalog on `samples` seeded random
/// assignments with values up to 10⁶.
pub fn check_axioms(samples: u64, seed: u64, budget: EvalBudget) -> Result<AxiomReport, EvalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axioms: Vec<Formula> = (1..=8)
        .map(|i| pa_axiom(i).expect("eight axioms"))
        .collect();
    let catalog = induction_catalog();
    let instances: Vec<Formula> = catalog
        .iter()
        .map(|f| induction_instance(f, "x").expect("x is free in every catalog entry"))
        .collect();

    let mut report = AxiomReport {
        samples,
        seed,
        axioms: (1..=8).map(|i| AxiomTally::new(format!("PA{i}"))).collect(),
        induction: catalog
            .iter()
            .map(|f| AxiomTally::new(format!("induction on {f}")))
            .collect(),
        bounded_induction: catalog
            .iter()
            .map(|f| AxiomTally::new(format!("bounded induction on {f}")))
            .collect(),
        failures: Vec::new(),
    };
    let mut failures = Vec::new();
    // an instance only depends on its free variables, and most are closed
    let free: Vec<Vec<String>> = instances
        .iter()
        .map(|f| f.free_vars().into_iter().collect())
        .collect();
    let mut memo: BTreeMap<(usize, Vec<Option<Nat>>), TruthValue> = BTreeMap::new();

    for _ in 0..samples {
        let x1: u64 = rng.gen_range(0..=MAX_VALUE);
        // equal values now and then, so the equality axioms see both cases
        let x2 = if rng.gen_ratio(1, 4) {
            x1
        } else {
            rng.gen_range(0..=MAX_VALUE)
        };
        let x3 = if rng.gen_ratio(1, 4) {
            x1
        } else {
            rng.gen_range(0..=MAX_VALUE)
        };
        let a = Assignment::new()
            .with("x1", x1)
            .with("x2", x2)
            .with("x3", x3);

        for (f, tally) in axioms.iter().zip(&mut report.axioms) {
            let v = eval_formula(f, &a, budget)?;
            tally.record(v);
            if v != TruthValue::True {
                failures.push(report_failure(&tally.name, &a, v));
            }
        }

        for (idx, (f, tally)) in instances.iter().zip(&mut report.induction).enumerate() {
            let key = (idx, free[idx].iter().map(|x| a.get(x).cloned()).collect());
            let v = match memo.get(&key) {
                Some(v) => *v,
                None => {
                    let v = eval_formula(f, &a, budget)?;
                    memo.insert(key, v);
                    v
                }
            };
            tally.record(v);
            if v == TruthValue::False {
                failures.push(report_failure(&tally.name, &a, v));
            }
        }

        let bound: u64 = rng.gen_range(0..=MAX_INDUCTION_BOUND);
        let n = numeral(&Nat::from(bound));
        for (f, tally) in catalog.iter().zip(&mut report.bounded_induction) {
            let g = bounded_induction(f, "x", &n);
            let v = eval_formula(&g, &a, budget)?;
            tally.record(v);
            if v != TruthValue::True {
                failures.push(report_failure(&tally.name, &a.clone().with("n", bound), v));
            }
        }
    }
    report.failures = failures;
    Ok(report)
}

fn report_failure(name: &str, assignment: &Assignment, value: TruthValue) -> AxiomFailure {
    AxiomFailure {
        name: name.to_string(),
        assignment: assignment.clone(),
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_instances() {
        let b = EvalBudget::default();
        let pa3 = pa_axiom(3).unwrap();
        let a = Assignment::new().with("x1", 0u32);
        assert_eq!(eval_formula(&pa3, &a, b).unwrap(), TruthValue::True);
        let pa6 = pa_axiom(6).unwrap();
        let a = Assignment::new().with("x1", 2u32).with("x2", 3u32);
        assert_eq!(eval_formula(&pa6, &a, b).unwrap(), TruthValue::True);
    }

    #[test]
    fn sampled_axioms_hold_and_are_reproducible() {
        let budget = EvalBudget::new(50, 1_000_000).unwrap();
        let r = check_axioms(25, 42, budget).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert!(r.axioms.iter().all(|t| t.true_count == 25));
        assert!(r.bounded_induction.iter().all(|t| t.true_count == 25));
        assert_eq!(r, check_axioms(25, 42, budget).unwrap());
    }

    #[test]
    fn relativized_instances_hold_for_non_inductive_formulas() {
        // x = 0 holds at 0 but does not propagate; the instance is still valid
        let f = parse_formula("(x = 0)").unwrap();
        let g = bounded_induction(&f, "x", &numeral(&Nat::from(3u32)));
        let v = eval_formula(&g, &Assignment::new(), EvalBudget::default()).unwrap();
        assert_eq!(v, TruthValue::True);
        // the step fails at 2 and the conclusion at 3
        let f = parse_formula("~(x = S(S(S(0))))").unwrap();
        let g = bounded_induction(&f, "x", &numeral(&Nat::from(5u32)));
        let v = eval_formula(&g, &Assignment::new(), EvalBudget::default()).unwrap();
        assert_eq!(v, TruthValue::True);
    }
}
