//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use arithmetize::formula::numeral;
use arithmetize::{Formula, Nat, PrFunction, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn n(v: u64) -> Nat {
    Nat::from(v)
}

pub fn ns(vs: &[u64]) -> Vec<Nat> {
    vs.iter().copied().map(Nat::from).collect()
}

/// A random valid function of the given arity and rank at most `rank`.
pub fn random_pr(rng: &mut impl Rng, arity: usize, rank: usize) -> PrFunction {
    if rank == 0 || rng.gen_ratio(1, 3) {
        return random_basic(rng, arity);
    }
    let recursion = arity >= 1 && rng.gen_bool(0.5);
    if recursion {
        let base = random_pr(rng, arity - 1, rank - 1);
        let step = random_pr(rng, arity + 1, rank - 1);
        PrFunction::primrec(base, step).expect("arities line up")
    } else {
        let k = rng.gen_range(1..=2);
        let outer = random_pr(rng, k, rank - 1);
        let inners = (0..k).map(|_| random_pr(rng, arity, rank - 1)).collect();
        PrFunction::comp(outer, inners).expect("arities line up")
    }
}

fn random_basic(rng: &mut impl Rng, arity: usize) -> PrFunction {
    let mut choices = vec![0u8];
    if arity >= 1 {
        choices.extend([1, 1]);
    }
    if arity == 1 {
        choices.extend([2, 2]);
    }
    match choices.choose(rng).copied().unwrap() {
        0 => PrFunction::zero(arity),
        1 => PrFunction::proj(arity, rng.gen_range(1..=arity)).unwrap(),
        _ => PrFunction::Succ,
    }
}

const VARS: [&str; 5] = ["x1", "x2", "x3", "y", "w"];

pub fn random_term(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Term {
    let leaf = depth == 0 || rng.gen_ratio(1, 3);
    if leaf {
        return if vars.is_empty() || rng.gen_ratio(1, 3) {
            Term::Zero
        } else {
            Term::var(*vars.choose(rng).unwrap())
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(random_term(rng, depth - 1, vars)),
        1 => Term::plus(
            random_term(rng, depth - 1, vars),
            random_term(rng, depth - 1, vars),
        ),
        _ => Term::times(
            random_term(rng, depth - 1, vars),
            random_term(rng, depth - 1, vars),
        ),
    }
}

/// Any formula of depth at most `depth`, every construct allowed.
pub fn random_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return Formula::eq(random_term(rng, 2, &VARS), random_term(rng, 2, &VARS));
    }
    let sub = |rng: &mut _| random_formula(rng, depth - 1);
    match rng.gen_range(0..8) {
        0 => Formula::not(sub(rng)),
        1 => Formula::implies(sub(rng), sub(rng)),
        2 => Formula::and(sub(rng), sub(rng)),
        3 => Formula::or(sub(rng), sub(rng)),
        4 => Formula::forall(*VARS.choose(rng).unwrap(), sub(rng)),
        5 => Formula::exists(*VARS.choose(rng).unwrap(), sub(rng)),
        kind => {
            let v = *VARS.choose(rng).unwrap();
            let others: Vec<&str> = VARS.iter().copied().filter(|x| *x != v).collect();
            let bound = random_term(rng, 2, &others);
            if kind == 6 {
                Formula::bounded_forall(v, bound, sub(rng))
            } else {
                Formula::bounded_exists(v, bound, sub(rng))
            }
        }
    }
}

/// Δ₀ formula over the free variables `x1`, `x2` whose bounds are numerals
/// at most 5 or the free variables themselves (assigned at most 5).
pub fn random_delta0(rng: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Formula {
    let vars: Vec<&str> = scope.iter().map(String::as_str).collect();
    if depth == 0 || rng.gen_ratio(1, 4) {
        return Formula::eq(random_term(rng, 2, &vars), random_term(rng, 2, &vars));
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(random_delta0(rng, depth - 1, scope)),
        1 => Formula::implies(
            random_delta0(rng, depth - 1, scope),
            random_delta0(rng, depth - 1, scope),
        ),
        2 => Formula::and(
            random_delta0(rng, depth - 1, scope),
            random_delta0(rng, depth - 1, scope),
        ),
        3 => Formula::or(
            random_delta0(rng, depth - 1, scope),
            random_delta0(rng, depth - 1, scope),
        ),
        kind => {
            let v = format!("b{}", scope.len());
            let bound = if rng.gen_bool(0.7) {
                numeral(&n(rng.gen_range(0..=5)))
            } else {
                Term::var(["x1", "x2"][rng.gen_range(0..2)])
            };
            scope.push(v.clone());
            let body = random_delta0(rng, depth - 1, scope);
            scope.pop();
            if kind == 4 {
                Formula::bounded_forall(v, bound, body)
            } else {
                Formula::bounded_exists(v, bound, body)
            }
        }
    }
}

/// Straightforward recursive evaluation over `u64`, sharing nothing with
/// the library evaluator. Panics on unbounded quantifiers.
pub fn oracle_term(t: &Term, env: &BTreeMap<String, u64>) -> u64 {
    match t {
        Term::Zero => 0,
        Term::Var(v) => env[v],
        Term::Succ(s) => oracle_term(s, env) + 1,
        Term::Plus(a, b) => oracle_term(a, env) + oracle_term(b, env),
        Term::Times(a, b) => oracle_term(a, env) * oracle_term(b, env),
    }
}

pub fn oracle_delta0(f: &Formula, env: &mut BTreeMap<String, u64>) -> bool {
    match f {
        Formula::Eq(a, b) => oracle_term(a, env) == oracle_term(b, env),
        Formula::Not(g) => !oracle_delta0(g, env),
        Formula::Implies(a, b) => !oracle_delta0(a, env) || oracle_delta0(b, env),
        Formula::And(a, b) => oracle_delta0(a, env) && oracle_delta0(b, env),
        Formula::Or(a, b) => oracle_delta0(a, env) || oracle_delta0(b, env),
        Formula::BoundedForAll(v, t, g) | Formula::BoundedExists(v, t, g) => {
            let bound = oracle_term(t, env);
            let saved = env.get(v).copied();
            let universal = matches!(f, Formula::BoundedForAll(..));
            let mut result = universal;
            for i in 0..bound {
                env.insert(v.clone(), i);
                if oracle_delta0(g, env) != universal {
                    result = !universal;
                    break;
                }
            }
            match saved {
                Some(s) => env.insert(v.clone(), s),
                None => env.remove(v),
            };
            result
        }
        Formula::ForAll(..) | Formula::Exists(..) => {
            panic!("oracle handles bounded quantifiers only")
        }
    }
}

/// Golden CLI invocations: file stem under `tests/golden/` and arguments,
/// run from `tests/data/`.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("encode", &["encode", "1", "2"]),
    ("encode_trace", &["encode", "2", "3", "4", "5", "--json"]),
    ("decode", &["decode", "3", "2", "1"]),
    ("decode_json", &["decode", "3", "2", "0", "--json"]),
    ("compile_succ2", &["compile", "succ2.pr"]),
    ("compile_add", &["compile", "add.pr"]),
    ("compile_mult_json", &["compile", "mult.pr", "--json"]),
    (
        "witness_add",
        &["witness", "add.pr", "--args", "2", "--depth", "3"],
    ),
    (
        "witness_add_json",
        &["witness", "add.pr", "--args", "2", "--depth", "3", "--json"],
    ),
    ("eval_true", &["eval", "true.txt", "--assign", "x1=2,x2=3"]),
    ("eval_false", &["eval", "false.txt"]),
    (
        "eval_mixed",
        &[
            "eval",
            "sample.txt",
            "--assign",
            "x1=2,x2=3",
            "--max-witness",
            "100",
        ],
    ),
    (
        "eval_mixed_json",
        &[
            "eval",
            "sample.txt",
            "--assign",
            "x1=2,x2=3",
            "--max-witness",
            "100",
            "--json",
        ],
    ),
    (
        "verify_add",
        &["verify", "add.pr", "--args", "2", "--depth", "3"],
    ),
    (
        "verify_add_json",
        &["verify", "add.pr", "--args", "2", "--depth", "3", "--json"],
    ),
    (
        "verify_mult",
        &["verify", "mult.pr", "--args", "3", "--depth", "4"],
    ),
    (
        "verify_factorial",
        &["verify", "factorial.pr", "--depth", "5"],
    ),
    ("axioms", &["axioms", "--samples", "1000", "--seed", "42"]),
    (
        "axioms_json",
        &["axioms", "--samples", "20", "--seed", "7", "--json"],
    ),
    (
        "growth_add",
        &["growth", "add.pr", "--args", "1", "--depth-max", "8"],
    ),
    (
        "growth_add_json",
        &[
            "growth",
            "add.pr",
            "--args",
            "1",
            "--depth-max",
            "6",
            "--json",
        ],
    ),
    (
        "usage_missing_file",
        &["verify", "--args", "2", "--depth", "3"],
    ),
    ("usage_bad_assign", &["eval", "true.txt", "--assign", "x1"]),
    (
        "usage_not_recursion",
        &["witness", "succ2.pr", "--depth", "1"],
    ),
];

/// Runs the built binary in `tests/data/` with `ARITH_BUDGET` cleared and
/// renders exit code, stdout and stderr as one transcript.
pub fn run_cli(args: &[&str]) -> String {
    let data = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_arith"))
        .args(args)
        .current_dir(data)
        .env_remove("ARITH_BUDGET")
        .output()
        .expect("binary runs");
    format!(
        "$ arith {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        args.join(" "),
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    )
}
