use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use knowwho::checker::{bounded_validity, evaluate, label, random_model, Bounds, Verdict};
use knowwho::examples;
use knowwho::formula::{parse, Formula};
use knowwho::model::{load, load_lenient, store, View};
use knowwho::proofs::{
    check_derivation, lift_box, load_derivation, store_derivation, BoxModality, DerivationFile,
};

// Standard output may be a closed pipe (`kw ... | head`); drop the rest
// instead of panicking.
macro_rules! println {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! print {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

/// Model checker and proof checker for a logic of knowing who.
#[derive(Parser)]
#[command(name = "kw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file against the model conditions
    Validate {
        model: PathBuf,
        /// Drop identification tuples whose user is absent, with a warning
        #[arg(long)]
        lenient: bool,
    },
    /// Evaluate a formula at a view `agent@state`
    Check {
        model: PathBuf,
        view: View,
        formula: String,
        /// Print the least name witnessing a top-level `W`
        #[arg(long)]
        witness: bool,
    },
    /// Print the views satisfying each subformula
    Label { model: PathBuf, formula: String },
    /// Search every model within the bounds for a counterexample
    Valid {
        formula: String,
        #[arg(long, default_value_t = 2)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        agents: usize,
        #[arg(long, default_value_t = 1)]
        names: usize,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        /// Write the counterexample model here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a derivation file
    Prove { derivation: PathBuf },
    /// Box every hypothesis and the conclusion of a derivation
    Lift {
        derivation: PathBuf,
        #[arg(long = "box", default_value = "K")]
        modality: BoxModality,
        /// Output file; standard output when omitted
        out: Option<PathBuf>,
    },
    /// Generate a random valid model
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// states,agents,names,vars
        #[arg(long, default_value = "3,3,2,2", value_parser = parse_bounds)]
        bounds: Bounds,
        /// Output file; standard output when omitted
        out: Option<PathBuf>,
    },
    /// Write bundled models and derivations; lists them without a name
    Examples {
        /// `all`, or a bundled file name with or without its extension
        name: Option<String>,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

fn parse_bounds(text: &str) -> Result<Bounds, String> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [s, a, n, v] => Bounds::new(s, a, n, v).map_err(|e| e.to_string()),
        _ => Err("expected four numbers: states,agents,names,vars".into()),
    }
}

fn formula(text: &str) -> Result<Formula> {
    parse(text).with_context(|| format!("cannot parse formula `{text}`"))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { model, lenient } => {
            let m = if lenient {
                let (m, warnings) = load_lenient(&model)?;
                for w in warnings {
                    eprintln!("warning: dropped {w}");
                }
                m
            } else {
                load(&model)?
            };
            println!("valid");
            for line in m.summary() {
                println!("{line}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            model,
            view,
            formula: text,
            witness,
        } => {
            let m = load(&model)?;
            let e = evaluate(&m, &view, &formula(&text)?)?;
            match (&e.witness, witness) {
                (Some(w), true) => println!("{} witness={w}", e.truth),
                _ => println!("{}", e.truth),
            }
            Ok(status(e.truth))
        }
        Command::Label {
            model,
            formula: text,
        } => {
            let m = load(&model)?;
            let labels = label(&m, &formula(&text)?)?;
            for (f, views) in &labels.entries {
                let vs: Vec<String> = views.iter().map(View::to_string).collect();
                println!("{f}\t{}", vs.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Valid {
            formula: text,
            states,
            agents,
            names,
            vars,
            out,
        } => {
            let f = formula(&text)?;
            let bounds = Bounds::new(states, agents, names, vars)?;
            match bounded_validity(&f, bounds)? {
                Verdict::ValidWithin {
                    bounds,
                    models_checked,
                } => {
                    println!("valid within {bounds}");
                    println!("models {models_checked}");
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Counterexample { model, view, index } => {
                    println!("counterexample at {view}");
                    println!("enumeration index {index}");
                    for line in model.summary() {
                        println!("{line}");
                    }
                    if let Some(path) = out {
                        store(&model, &path)?;
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Prove { derivation } => {
            let d = load_derivation(&derivation)?;
            match check_derivation(&d) {
                Ok(accepted) => {
                    println!("accepted");
                    let kind = if accepted.is_theorem() {
                        "theorem"
                    } else {
                        "deduction"
                    };
                    println!("lines {}", d.lines.len());
                    println!("hypotheses {}", d.hypotheses.len());
                    println!(
                        "{kind} {}",
                        d.conclusion().expect("accepted derivations are nonempty")
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("rejected {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Lift {
            derivation,
            modality,
            out,
        } => {
            let d = load_derivation(&derivation)?;
            match lift_box(&d, modality) {
                Ok(lifted) => {
                    match out {
                        Some(path) => store_derivation(&path, &lifted)?,
                        None => print!("{}", DerivationFile::from_derivation(&lifted).to_json()),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("rejected {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Gen { seed, bounds, out } => {
            let m = random_model(seed, bounds);
            write_or_print(out.as_deref(), &m.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples { name, dir } => {
            let all = examples::MODELS.iter().chain(examples::DERIVATIONS);
            let Some(name) = name else {
                for (file, _) in all {
                    println!("{file}");
                }
                return Ok(ExitCode::SUCCESS);
            };
            let chosen: Vec<_> = all
                .filter(|(file, _)| {
                    name == "all"
                        || *file == name
                        || file.rsplit_once('.').map(|p| p.0) == Some(&name)
                })
                .collect();
            if chosen.is_empty() {
                bail!("no bundled example `{name}`; run `kw examples` for the list");
            }
            fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
            for (file, text) in chosen {
                let path = dir.join(file);
                fs::write(&path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// The error chain, skipping causes whose text the message already shows.
fn describe(e: &anyhow::Error) -> String {
    let mut out = e.to_string();
    for cause in e.chain().skip(1) {
        let text = cause.to_string();
        if !out.contains(&text) {
            out = format!("{out}: {text}");
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("KW_PARALLELISM")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kw: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}
