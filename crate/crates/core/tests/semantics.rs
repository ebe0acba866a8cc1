mod common;

use knowwho::checker::{bounded_validity, evaluate, random_model, Bounds, Frame};
use knowwho::formula::{Formula, FormulaGen, Modality};
use knowwho::model::Model;
use knowwho::proofs::{check_derivation, check_tautology};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn model_and_gen(seed: u64, depth: usize) -> (Model, FormulaGen) {
    let model = random_model(seed, Bounds::new(3, 3, 2, 2).unwrap());
    let names: Vec<&str> = model.names().iter().map(String::as_str).collect();
    let gen = FormulaGen::new(&["p1", "p2"], &names, depth);
    (model, gen)
}

fn true_everywhere(model: &Model, f: &Formula) -> bool {
    model
        .views()
        .iter()
        .all(|v| evaluate(model, v, f).unwrap().truth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn global_truth_survives_every_modality(seed in any::<u64>()) {
        let (model, gen) = model_and_gen(seed, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = gen.generate(&mut rng);
        // φ ∨ ¬φ style formulas are globally true, so use one of those too
        for f in [phi.clone(), Formula::or(phi.clone(), Formula::not(phi))] {
            if true_everywhere(&model, &f) {
                for m in [Modality::KnowWho, Modality::Know, Modality::AllAgents] {
                    prop_assert!(true_everywhere(&model, &m.apply(f.clone())));
                }
            }
        }
    }

    #[test]
    fn knowing_who_is_known(seed in any::<u64>()) {
        let (model, gen) = model_and_gen(seed, 4);
        let phi = gen.generate(&mut ChaCha8Rng::seed_from_u64(seed));
        let w = Formula::know_who(phi.clone());
        let kw = Formula::know(w.clone());
        let someone = Formula::not(Formula::all_agents(Formula::not(phi)));
        for v in model.views() {
            let holds = |f: &Formula| evaluate(&model, &v, f).unwrap().truth;
            prop_assert_eq!(holds(&w), holds(&kw));
            if holds(&w) {
                prop_assert!(holds(&someone));
            }
        }
    }

    #[test]
    fn theorems_hold_in_random_models(seed in any::<u64>()) {
        let (model, gen) = model_and_gen(seed, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = common::random_derivation(&mut rng, &gen, 0);
        let accepted = check_derivation(&d).unwrap();
        prop_assert!(accepted.is_theorem());
        let frame = Frame::new(&model);
        for line in &d.lines {
            prop_assert!(frame.extension(&line.formula).unwrap().iter().all(|t| *t), "{}", line.formula);
        }
    }

    #[test]
    fn tautologies_are_valid_everywhere(seed in any::<u64>()) {
        let (model, gen) = model_and_gen(seed, 4);
        let phi = gen.generate(&mut ChaCha8Rng::seed_from_u64(seed));
        if check_tautology(&phi).unwrap() {
            prop_assert!(true_everywhere(&model, &phi));
        }
    }
}

#[test]
fn truth_tables_agree_with_one_view_enumeration() {
    let gen = FormulaGen::new(&["p1", "p2", "p3"], &[], 5);
    let bounds = Bounds::new(1, 1, 1, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut propositional = 0;
    let mut tautologies = 0;
    while propositional < 200 {
        let f = gen.generate(&mut rng);
        let modal = f
            .subformulas()
            .iter()
            .any(|s| !matches!(s, Formula::Var(_) | Formula::Not(_) | Formula::Implies(..)));
        if modal {
            continue;
        }
        propositional += 1;
        let taut = check_tautology(&f).unwrap();
        tautologies += taut as usize;
        assert_eq!(
            bounded_validity(&f, bounds).unwrap().is_valid(),
            taut,
            "{f}"
        );
    }
    assert!(tautologies > 0);
}

/// Pointwise evaluator whose `W` only looks at the current state.
fn myopic(model: &Model, v: &knowwho::View, f: &Formula) -> bool {
    let at =
        |agent: &str, state: &str, g: &Formula| myopic(model, &knowwho::View::new(agent, state), g);
    match f {
        Formula::Var(p) => model.holds(p, v),
        Formula::Not(g) => !myopic(model, v, g),
        Formula::Implies(l, r) => !myopic(model, v, l) || myopic(model, v, r),
        Formula::Know(g) => model
            .epistemic_class(&v.agent, &v.state)
            .unwrap()
            .iter()
            .all(|s| at(&v.agent, s, g)),
        Formula::AllAgents(g) => model
            .present_agents(&v.state)
            .unwrap()
            .into_iter()
            .all(|a| at(a, &v.state, g)),
        Formula::AtName(n, g) => model
            .referents(&v.agent, &v.state, n)
            .unwrap()
            .into_iter()
            .all(|a| at(a, &v.state, g)),
        Formula::KnowWho(g) => model.names().iter().any(|n| {
            model
                .referents(&v.agent, &v.state, n)
                .unwrap()
                .into_iter()
                .all(|a| at(a, &v.state, g))
        }),
    }
}

#[test]
fn myopic_know_who_breaks_introspection() {
    use knowwho::checker::check_schema_on_model_with;
    use knowwho::proofs::{Schema, SchemaId};

    let pool: Vec<Formula> = ["p1", "!p1", "K p1"]
        .iter()
        .map(|t| t.parse().unwrap())
        .collect();
    let bounds = Bounds::new(3, 3, 2, 2).unwrap();
    let caught = (0..2000).any(|seed| {
        let model = random_model(seed, bounds);
        !check_schema_on_model_with(&model, &SchemaId::IntroWho.schema(), &pool, myopic).is_empty()
    });
    assert!(caught);

    // the faithful evaluator passes the same check
    let pointwise = |m: &Model, v: &knowwho::View, f: &Formula| evaluate(m, v, f).unwrap().truth;
    for seed in 0..200 {
        let model = random_model(seed, bounds);
        for s in Schema::all() {
            assert!(check_schema_on_model_with(&model, &s, &pool, pointwise).is_empty());
        }
    }
}
