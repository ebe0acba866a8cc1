//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use knowwho::checker::{
    bounded_validity, check_schema_on_model, evaluate, label, minimize_counterexample,
    random_model, Bounds, Verdict,
};
use knowwho::examples;
use knowwho::formula::{parse, Formula, FormulaGen};
use knowwho::model::{load, store, View};
use knowwho::proofs::{check_derivation, lift_box, BoxModality, Derivation, Justification, Schema};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CLAIMS_TIME_LIMIT: Duration = Duration::from_secs(1);
const FUZZ_MODELS: u64 = 10_000;
const FUZZ_POOL: usize = 10;
const FUZZ_TIME_LIMIT: Duration = Duration::from_secs(120);
const VALIDITY_TIME_LIMIT: Duration = Duration::from_secs(60);
const LIFT_SAMPLES: u64 = 100;
const ORACLE_PAIRS: u64 = 500;
const FORMULA_ROUND_TRIPS: usize = 1_000;
const MODEL_ROUND_TRIPS: u64 = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn f(text: &str) -> Formula {
    parse(text).expect("fixture formula parses")
}

fn claims() -> Outcome {
    let start = Instant::now();
    let night = examples::nightstalker();
    let press = examples::pressconf();
    let b1 = View::new("b", "s1");
    let cases: [(&_, View, &str, bool, Option<&str>); 7] = [
        (&night, b1.clone(), "@ns p", true, None),
        (&night, b1.clone(), "K @ns p", true, None),
        (&night, b1.clone(), "W p", true, Some("ns")),
        (&night, View::new("d", "s1"), "p", true, None),
        (&night, b1, "p", false, None),
        (&press, View::new("j", "s1"), "W p", false, None),
        (&press, View::new("j", "s1"), "W W p", true, None),
    ];
    for (model, view, text, truth, witness) in cases {
        let e = evaluate(model, &view, &f(text)).map_err(|e| e.to_string())?;
        if e.truth != truth {
            return Err(format!("{view} |= {text} gave {}", e.truth));
        }
        if let Some(w) = witness {
            if e.witness.as_deref() != Some(w) {
                return Err(format!("{view} |= {text} witness {:?}", e.witness));
            }
        }
    }
    let took = start.elapsed();
    if took >= CLAIMS_TIME_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("7 claims in {took:?}"))
}

fn axiom_fuzz() -> Outcome {
    let start = Instant::now();
    let bounds = Bounds::new(3, 3, 2, 2).unwrap();
    let schemas = Schema::all();
    let mut instances_checked: u64 = 0;
    for seed in 0..FUZZ_MODELS {
        let model = random_model(seed, bounds);
        let names: Vec<&str> = model.names().iter().map(String::as_str).collect();
        // nesting of at most two operators
        let gen = FormulaGen::new(&["p1", "p2"], &names, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let pool: Vec<Formula> = (0..FUZZ_POOL).map(|_| gen.generate(&mut rng)).collect();
        for s in &schemas {
            let violations = check_schema_on_model(&model, s, &pool).map_err(|e| e.to_string())?;
            if let Some(v) = violations.first() {
                return Err(format!(
                    "seed {seed}: {} fails at {}: {}",
                    s.id, v.view, v.instance
                ));
            }
            instances_checked += knowwho::checker::instances(s, &pool).len() as u64;
        }
    }
    let took = start.elapsed();
    if took >= FUZZ_TIME_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!(
        "{FUZZ_MODELS} models, {instances_checked} instances, 0 violations in {took:?}"
    ))
}

fn validity_regression() -> Outcome {
    let start = Instant::now();
    let bounds = Bounds::new(2, 2, 1, 1).unwrap();
    let valid = [
        "K p -> p",
        "A p -> p",
        "K(p->q) -> (Kp -> Kq)",
        "!Kp -> K!Kp",
        "A!p -> !Wp",
        "K A (p->q) -> (W p -> W q)",
        "W p -> K W p",
    ];
    let mut models = 0u128;
    for text in valid {
        match bounded_validity(&f(text), bounds).map_err(|e| e.to_string())? {
            Verdict::ValidWithin { models_checked, .. } => models += models_checked,
            Verdict::Counterexample { view, .. } => {
                return Err(format!("{text} refuted at {view}"))
            }
        }
    }
    for text in ["K !A !p -> W p", "W p"] {
        let formula = f(text);
        match bounded_validity(&formula, bounds).map_err(|e| e.to_string())? {
            Verdict::ValidWithin { .. } => return Err(format!("{text} reported valid")),
            Verdict::Counterexample { model, view, .. } => {
                let direct = evaluate(&model, &view, &formula).map_err(|e| e.to_string())?;
                if direct.truth {
                    return Err(format!("{text} counterexample does not re-verify"));
                }
                let small = minimize_counterexample(&model, &view, &formula);
                if evaluate(&small, &view, &formula)
                    .map_err(|e| e.to_string())?
                    .truth
                {
                    return Err(format!(
                        "{text} minimized counterexample does not re-verify"
                    ));
                }
            }
        }
    }
    let took = start.elapsed();
    if took >= VALIDITY_TIME_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("7 valid ({models} models), 2 refuted, in {took:?}"))
}

fn expect_rejected_at(d: &Derivation, line: usize, what: &str) -> Result<(), String> {
    match check_derivation(d) {
        Ok(_) => Err(format!("{what} accepted")),
        Err(e) if e.line == Some(line) => Ok(()),
        Err(e) => Err(format!("{what} rejected at {e}, expected line {line}")),
    }
}

fn proof_suite() -> Outcome {
    let mut corruptions = 0;
    for (name, _) in examples::DERIVATIONS {
        let d = examples::derivation(name).unwrap();
        let accepted = check_derivation(&d).map_err(|e| format!("{name}: {e}"))?;
        if name.starts_with("axiom-") && !(d.lines.len() == 1 && accepted.is_theorem()) {
            return Err(format!("{name} is not a one-line theorem"));
        }
        for i in 0..d.lines.len() {
            let mut edited = d.clone();
            edited.lines[i].formula = Formula::not(edited.lines[i].formula.clone());
            expect_rejected_at(&edited, i, &format!("{name} formula edit at {i}"))?;
            corruptions += 1;

            let mut swapped = d.clone();
            let changed = match &mut swapped.lines[i].justification {
                Justification::ModusPonens(j, k) if j != k => {
                    std::mem::swap(j, k);
                    true
                }
                Justification::Premise(h) if d.hypotheses.len() > 1 => {
                    *h = (*h + 1) % d.hypotheses.len();
                    true
                }
                _ => false,
            };
            if changed {
                expect_rejected_at(&swapped, i, &format!("{name} index swap at {i}"))?;
                corruptions += 1;
            }
        }
    }
    for (name, expected) in [
        ("introspection-k", "K p -> K K p"),
        ("introspection-a", "A p -> A A p"),
    ] {
        let d = examples::derivation(name).unwrap();
        if d.conclusion() != Some(&f(expected)) || !check_derivation(&d).unwrap().is_theorem() {
            return Err(format!("{name} does not prove {expected}"));
        }
    }
    Ok(format!(
        "{} derivations accepted, {corruptions} corruptions rejected at the right line",
        examples::DERIVATIONS.len()
    ))
}

fn lifting() -> Outcome {
    let mp = examples::derivation("modus-ponens").unwrap();
    let lifted = lift_box(&mp, BoxModality::Know).map_err(|e| e.to_string())?;
    check_derivation(&lifted).map_err(|e| format!("lifted modus ponens: {e}"))?;
    if lifted.hypotheses != [f("K p"), f("K (p->q)")] || lifted.conclusion() != Some(&f("K q")) {
        return Err("lifted modus ponens has the wrong sequent".into());
    }
    let gen = FormulaGen::new(&["p", "q"], &["ns"], 3);
    for seed in 0..LIFT_SAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = common::random_derivation(&mut rng, &gen, 1 + (seed as usize % 4));
        check_derivation(&d).map_err(|e| format!("generated derivation {seed}: {e}"))?;
        let b = BoxModality::ALL[seed as usize % 2];
        let lifted = lift_box(&d, b).map_err(|e| e.to_string())?;
        check_derivation(&lifted).map_err(|e| format!("lift of {seed}: {e}"))?;
        let boxed: Vec<Formula> = d.hypotheses.iter().map(|h| b.apply(h.clone())).collect();
        if lifted.hypotheses != boxed
            || lifted.conclusion() != d.conclusion().map(|c| b.apply(c.clone())).as_ref()
        {
            return Err(format!("lift of {seed} has the wrong sequent"));
        }
    }
    Ok(format!(
        "modus ponens lift and {LIFT_SAMPLES} random lifts accepted"
    ))
}

fn oracle_equivalence() -> Outcome {
    let bounds = Bounds::new(3, 3, 2, 2).unwrap();
    let mut checks = 0u64;
    for seed in 0..ORACLE_PAIRS {
        let model = random_model(seed, bounds);
        let names: Vec<&str> = model.names().iter().map(String::as_str).collect();
        let gen = FormulaGen::new(&["p1", "p2"], &names, 5);
        let formula = gen.generate(&mut ChaCha8Rng::seed_from_u64(seed));
        let labels = label(&model, &formula).map_err(|e| e.to_string())?;
        for sub in formula.subformulas() {
            let set = labels.get(sub).ok_or_else(|| format!("{sub} unlabelled"))?;
            for view in model.views() {
                let direct = evaluate(&model, &view, sub)
                    .map_err(|e| e.to_string())?
                    .truth;
                if direct != set.contains(&view) {
                    return Err(format!("seed {seed}: {sub} at {view}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{ORACLE_PAIRS} pairs, {checks} subformula-view checks agree"
    ))
}

fn round_trips() -> Outcome {
    let gen = FormulaGen::new(&["p", "q", "r1"], &["ns", "n_2"], 7);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..FORMULA_ROUND_TRIPS {
        let formula = gen.generate(&mut rng);
        let text = formula.to_string();
        if parse(&text).as_ref() != Ok(&formula) {
            return Err(format!("formula `{text}` does not round-trip"));
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bounds = Bounds::new(3, 3, 2, 2).unwrap();
    for seed in 0..MODEL_ROUND_TRIPS {
        let model = random_model(seed, bounds);
        let path = dir.path().join(format!("m{seed}.kwm"));
        store(&model, &path).map_err(|e| e.to_string())?;
        if load(&path).map_err(|e| e.to_string())? != model {
            return Err(format!("model {seed} does not round-trip"));
        }
    }
    Ok(format!(
        "{FORMULA_ROUND_TRIPS} formulas and {MODEL_ROUND_TRIPS} models round-trip"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("bundled model claims", claims),
        ("axiom soundness fuzz", axiom_fuzz),
        ("bounded validity regression", validity_regression),
        ("proof suite", proof_suite),
        ("box lifting", lifting),
        ("labelling agrees with evaluation", oracle_equivalence),
        ("round trips", round_trips),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {title}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
