mod common;

use std::collections::BTreeMap;

use arithmetize::formula::{parse_formula, tighten_bounds};
use arithmetize::{eval_delta0, eval_formula, Assignment, EvalBudget, TruthValue};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{oracle_delta0, random_delta0, random_formula};

fn small_assignment(rng: &mut impl Rng) -> Assignment {
    ["x1", "x2", "x3", "y", "w"]
        .into_iter()
        .fold(Assignment::new(), |a, v| a.with(v, rng.gen_range(0..=4u64)))
}

fn rank(v: TruthValue) -> u8 {
    u8::from(v.is_definite())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn more_budget_never_changes_a_definite_answer(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, 6);
        let a = small_assignment(&mut rng);
        let small = eval_formula(&f, &a, EvalBudget::new(3, 2_000).unwrap()).unwrap();
        let large = eval_formula(&f, &a, EvalBudget::new(12, 200_000).unwrap()).unwrap();
        if small.is_definite() {
            prop_assert_eq!(small, large, "{}", f);
        }
        prop_assert!(rank(large) >= rank(small));
    }

    #[test]
    fn quantifier_free_formulas_are_decided(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, 6);
        prop_assume!(f.is_quantifier_free());
        let a = small_assignment(&mut rng);
        prop_assert!(eval_formula(&f, &a, EvalBudget::new(1, 1_000_000).unwrap()).unwrap().is_definite());
    }

    #[test]
    fn tightening_is_sound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, 4);
        let a = small_assignment(&mut rng);
        let budget = EvalBudget::new(8, 200_000).unwrap();
        let tight = eval_formula(&tighten_bounds(&f), &a, budget).unwrap();
        let loose = eval_formula(&f, &a, budget).unwrap();
        if tight.is_definite() && loose.is_definite() {
            prop_assert_eq!(tight, loose, "{}", f);
        }
    }
}

#[test]
fn thousand_bounded_formulas_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let mut scope = vec!["x1".to_string(), "x2".to_string()];
        let f = random_delta0(&mut rng, 6, &mut scope);
        let (x1, x2) = (rng.gen_range(0..=5u64), rng.gen_range(0..=5u64));
        let got = eval_delta0(&f, &Assignment::new().with("x1", x1).with("x2", x2)).unwrap();
        let mut env = BTreeMap::from([("x1".to_string(), x1), ("x2".to_string(), x2)]);
        assert_eq!(got, oracle_delta0(&f, &mut env), "{f} at x1={x1} x2={x2}");
    }
}

#[test]
fn budgets_mark_their_reason() {
    let f = parse_formula("A x1 . E x2 . (x2 = S(x1))").unwrap();
    let v = eval_formula(
        &f,
        &Assignment::new(),
        EvalBudget::new(5, 1_000_000).unwrap(),
    )
    .unwrap();
    assert_eq!(v.to_string(), "Unknown (unbounded quantifier)");
    let v = eval_formula(&f, &Assignment::new(), EvalBudget::new(1_000, 50).unwrap()).unwrap();
    assert_eq!(v.to_string(), "Unknown (budget exhausted)");
}
