//! `branchmod`: differential values, blow-up trajectories, and moduli
//! dimensions of plane branch classes from the command line.
//!
//! Classes are given as trailing `key=value` tokens or a single JSON object:
//!
//! ```text
//! branchmod apery n=6 b=9,10
//! branchmod dimension --json '{"n": 4, "betas": [6, 7]}'
//! ```
//!
//! Exit codes: 0 success, 1 failed cross-check or computation, 2 usage,
//! 3 invalid class data. `BRANCHMOD_SEED` seeds `verify` and `batch` when
//! no explicit seed is given.

use branchmod::{
    derive_invariants, dimension_report, exponent_ladder, module_apery, parse_class_literal,
    random_class, semimodule, specialize, suitabilize, trajectory, verify_class,
    format_class_literal, PairClass, SuitableState,
};
use branchmod::literal::class_to_json;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "branchmod", version, about = "Differential values on plane curve branches")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ClassArg {
    /// Class as `key=value` tokens (n, b, b0, dx, dy) or one JSON object
    #[arg(required = true, value_name = "CLASS")]
    class: Vec<String>,
}

impl ClassArg {
    fn parse(&self) -> Result<PairClass, i32> {
        parse_class_literal(&self.class.join(" ")).map_err(|e| {
            eprintln!("invalid class: {e}");
            3
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Semigroup invariants: gcd chain, quotients, generators, conductor
    Invariants(ClassArg),
    /// Exponent ladder members up to a bound
    Exponents {
        /// Largest exponent to list
        #[arg(long)]
        upto: u64,
        #[command(flatten)]
        class: ClassArg,
    },
    /// Apery table of differential values of the generic curve
    Apery(ClassArg),
    /// Semimodule of differential values and its members up to a bound
    Semimodule {
        /// Largest value to list
        #[arg(long)]
        upto: u64,
        #[command(flatten)]
        class: ClassArg,
    },
    /// Blow-up trajectory until the branch is smooth
    Trajectory(ClassArg),
    /// Moduli dimension of the class by independent methods
    Dimension(ClassArg),
    /// Check the combinatorial Apery set against the exact-series oracle
    Verify {
        /// Comma-separated oracle seeds
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<u64>>,
        /// Series precision (default derived from the conductor)
        #[arg(long)]
        precision: Option<u64>,
        /// Print one witnessing form combination per Apery value
        #[arg(long)]
        emit_forms: bool,
        #[command(flatten)]
        class: ClassArg,
    },
    /// Draw random classes and cross-check their dimension computations
    Batch {
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, default_value_t = 16)]
        max_n: u64,
        #[arg(long, default_value_t = 3)]
        max_g: usize,
        /// Sampler seed (default: BRANCHMOD_SEED or 0)
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn env_seed() -> Option<u64> {
    std::env::var("BRANCHMOD_SEED").ok()?.parse().ok()
}

fn state_json(state: &SuitableState) -> serde_json::Value {
    json!({
        "n": state.n(),
        "betas": state.betas(),
        "beta0": state.beta0(),
        "dx": u64::from(state.delta_x()),
        "dy": u64::from(state.delta_y()),
    })
}

fn state_text(state: &SuitableState) -> String {
    let betas: Vec<String> = state.betas().iter().map(|b| b.to_string()).collect();
    let b = if betas.is_empty() {
        String::from("b=-")
    } else {
        format!("b={}", betas.join(","))
    };
    format!(
        "n={} {} b0={} dx={} dy={}",
        state.n(),
        b,
        state.beta0(),
        u64::from(state.delta_x()),
        u64::from(state.delta_y()),
    )
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}

fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Invariants(class) => {
            let pair = match class.parse() {
                Ok(p) => p,
                Err(code) => return code,
            };
            let sgd = derive_invariants(&pair);
            if cli.json {
                let mut value = serde_json::to_value(&sgd).expect("serializable");
                value["generators"] = json!(sgd.generators());
                println!("{}", json!({ "class": class_to_json(&pair), "invariants": value }));
            } else {
                println!("class: {}", format_class_literal(&pair));
                println!("gcd chain e: {}", join(sgd.e()));
                println!("quotients n_j: {}", join(sgd.n_seq()));
                println!("nu: {}", join(sgd.nu()));
                println!("bar betas: {}", join(sgd.bar_betas()));
                println!("generators: {}", join(&sgd.generators()));
                println!("conductor: {}", sgd.conductor());
            }
            0
        }
        Command::Exponents { upto, class } => {
            let pair = match class.parse() {
                Ok(p) => p,
                Err(code) => return code,
            };
            let members = exponent_ladder(&pair).members_upto(*upto);
            if cli.json {
                println!(
                    "{}",
                    json!({ "class": class_to_json(&pair), "upto": upto, "members": members })
                );
            } else {
                println!("{}", join(&members));
            }
            0
        }
        Command::Apery(class) => {
            let pair = match class.parse() {
                Ok(p) => p,
                Err(code) => return code,
            };
            match branchmod::apery_orders(&pair) {
                Ok(table) => {
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "class": class_to_json(&pair),
                                "n": table.n(),
                                "apery": table.apery(),
                                "a": table.a(),
                                "b": table.b(),
                            })
                        );
                    } else {
                        println!("apery: {}", join(table.apery()));
                        println!("a: {}", join(table.a()));
                        println!("b: {}", join(table.b()));
                    }
                    0
                }
                Err(e) => {
                    eprintln!("apery computation failed: {e}");
                    1
                }
            }
        }
        Command::Semimodule { upto, class } => {
            let pair = match class.parse() {
                Ok(p) => p,
                Err(code) => return code,
            };
            match semimodule(&pair) {
                Ok(s) => {
                    let members: Vec<u64> = (0..=*upto).filter(|&m| s.contains(m)).collect();
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "class": class_to_json(&pair),
                                "values": s.values(),
                                "upto": upto,
                                "members": members,
                            })
                        );
                    } else {
                        println!("values: {}", join(s.values()));
                        println!("members up to {upto}: {}", join(&members));
                    }
                    0
                }
                Err(e) => {
                    eprintln!("semimodule computation failed: {e}");
                    1
                }
            }
        }
        Command::Trajectory(class) => {
            let pair = match class.parse() {
                Ok(p) => p,
                Err(code) => return code,
            };
            match trajectory(&suitabilize(&pair)) {
                Ok(traj) => {
                    if cli.json {
                        let states: Vec<_> = traj.states().iter().map(state_json).collect();
                        println!(
                            "{}",
                            json!({
                                "class": class_to_json(&pair),
                                "states": states,
                                "mults": traj.mults(),
                                "deltas": traj.deltas(),
                                "stop": traj.stop(),
                            })
                        );
                    } else {
                        for (i, state) in traj.states().iter().enumerate() {
                            println!(
                                "step {i}: {}  mult={} delta={}",
                                state_text(state),
                                traj.mults()[i],
                                traj.deltas()[i],
                            );
                        }
                        println!("stop: {}", traj.stop());
                    }
                    0
                }
                Err(e) => {
                    eprintln!("trajectory computation failed: {e}");
                    1
                }
            }
        }
        Command::Dimension(class) => {
            let pair = match class.parse() {
                Ok(p) => p,
                Err(code) => return code,
            };
            match dimension_report(&pair) {
                Ok(report) => {
                    if cli.json {
                        let mut value = serde_json::to_value(&report).expect("serializable");
                        value["class"] = class_to_json(&pair);
                        println!("{value}");
                    } else {
                        println!("trajectory-sum dimension: {}", report.trajectory_sum);
                        match report.geometric {
                            Some(d) => println!("exponent-count dimension: {d}"),
                            None => println!("exponent-count dimension: n/a (marked axes)"),
                        }
                        println!("per-step sigma: {}", join(&report.per_step_sigma));
                        println!("per-step counted: {}", join(&report.per_step_theta));
                        println!("agree: {}", if report.agree { "yes" } else { "no" });
                    }
                    if report.agree {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => {
                    eprintln!("dimension computation failed: {e}");
                    1
                }
            }
        }
        Command::Verify {
            seeds,
            precision,
            emit_forms,
            class,
        } => {
            let pair = match class.parse() {
                Ok(p) => p,
                Err(code) => return code,
            };
            let seeds = seeds
                .clone()
                .or_else(|| env_seed().map(|s| vec![s]))
                .unwrap_or_else(|| vec![0, 1, 2]);
            match verify_class(&pair, &seeds, *precision) {
                Ok(report) => {
                    let forms = if *emit_forms {
                        let curve = specialize(&pair, seeds[0], *precision);
                        match module_apery(&curve) {
                            Ok(combos) => combos
                                .iter()
                                .map(|c| (c.order, c.to_string()))
                                .collect(),
                            Err(_) => Vec::new(),
                        }
                    } else {
                        Vec::new()
                    };
                    if cli.json {
                        let mut value = serde_json::to_value(&report).expect("serializable");
                        value["class"] = class_to_json(&pair);
                        if *emit_forms {
                            value["forms"] = json!(forms
                                .iter()
                                .map(|(order, text)| json!({ "order": order, "form": text }))
                                .collect::<Vec<_>>());
                        }
                        println!("{value}");
                    } else {
                        println!("expected: {}", join(&report.expected));
                        for run in &report.runs {
                            println!(
                                "seed {}: {}  match={} stable={}",
                                run.seed,
                                join(&run.apery),
                                if run.matches { "yes" } else { "no" },
                                if run.stable { "yes" } else { "no" },
                            );
                        }
                        for (order, text) in &forms {
                            println!("  {order}: {text}");
                        }
                        println!("all match: {}", if report.all_match { "yes" } else { "no" });
                    }
                    if report.all_match {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    1
                }
            }
        }
        Command::Batch {
            count,
            max_n,
            max_g,
            seed,
        } => {
            let seed = seed.or_else(env_seed).unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = Vec::new();
            let mut all_agree = true;
            let mut agreeing = 0u64;
            for _ in 0..*count {
                let pair = random_class(&mut rng, *max_n, *max_g);
                match dimension_report(&pair) {
                    Ok(report) => {
                        all_agree &= report.agree;
                        agreeing += u64::from(report.agree);
                        if !cli.json {
                            println!(
                                "{} {}  dim={}",
                                if report.agree { "ok " } else { "FAIL" },
                                format_class_literal(&pair),
                                report.trajectory_sum,
                            );
                        }
                        rows.push(json!({
                            "class": class_to_json(&pair),
                            "report": serde_json::to_value(&report).expect("serializable"),
                        }));
                    }
                    Err(e) => {
                        all_agree = false;
                        if !cli.json {
                            println!("FAIL {}  error: {e}", format_class_literal(&pair));
                        }
                        rows.push(json!({
                            "class": class_to_json(&pair),
                            "error": e.to_string(),
                        }));
                    }
                }
            }
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "seed": seed,
                        "count": count,
                        "classes": rows,
                        "allAgree": all_agree,
                    })
                );
            } else {
                println!("{agreeing} of {count} classes agree");
            }
            if all_agree {
                0
            } else {
                1
            }
        }
    }
}
