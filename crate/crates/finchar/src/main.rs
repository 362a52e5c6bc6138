use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use finchar::closures::{eng, eng_exists, is_finite_character, is_open, restrict};
use finchar::dsl::{self, ModelSpec};
use finchar::fuzz::{self, FuzzConfig};
use finchar::gdc::{
    approximation, choice_witness, is_downward_prime, lift_bottom, positive_alignment, relation_of,
    Relation,
};
use finchar::maximality::{evaluate_principle, max_elements, ttl_witness, Principle};
use finchar::model::{ListPredicate, Subset, SubsetPredicate, DEFAULT_CAP};
use finchar::pfun::empcf_witness;
use finchar::report::{Report, Status};
use finchar::zorn::{chain_grammar_check, grammar_violation, order_of_grammar, zorn_witness};

/// Finite-model workbench: closure operators, maximality principles, order
/// and choice constructions, checked exhaustively on small universes.
#[derive(Parser)]
#[command(name = "finchar", version, about)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest universe size accepted by exhaustive operations
    /// (default 16; FINCHAR_MAX_UNIVERSE overrides the default).
    #[arg(long, global = true)]
    max_universe: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrincipleKind {
    Ttl,
    Ttlco,
    Gui,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a predicate's subset table is of finite character.
    CheckFc {
        file: PathBuf,
        #[arg(long)]
        pred: String,
    },
    /// Decide whether a predicate's subset table is open.
    CheckOpen {
        file: PathBuf,
        #[arg(long)]
        pred: String,
    },
    /// Extract a maximal element of the universal lifting of a predicate.
    Ttl {
        file: PathBuf,
        #[arg(long)]
        pred: String,
        /// Also enumerate every maximal element.
        #[arg(long)]
        enumerate: bool,
    },
    /// Evaluate a maximality / induction principle on the finite model.
    Principle {
        file: PathBuf,
        #[arg(long)]
        pred: String,
        #[arg(long, value_enum)]
        kind: PrincipleKind,
    },
    /// Maximal element of an ordered carrier via the subchain pipeline.
    Zorn {
        file: PathBuf,
        #[arg(long)]
        order: String,
        #[arg(long)]
        set: String,
    },
    /// Check a chain grammar or convert it back to an order.
    Chains {
        file: PathBuf,
        #[arg(long)]
        grammar: String,
        #[arg(long, conflicts_with = "check")]
        to_order: bool,
        #[arg(long)]
        check: bool,
    },
    /// Maximal partial choice function for a predicate over a product.
    Empcf {
        file: PathBuf,
        #[arg(long)]
        pred: String,
    },
    /// Total choice function via the greatest-fixed-point approximation.
    Gdc {
        file: PathBuf,
        #[arg(long)]
        pred: String,
        /// Only decide approximability.
        #[arg(long)]
        approx_only: bool,
    },
    /// Build the alignment of a relation; optionally verify primality.
    Align {
        file: PathBuf,
        #[arg(long)]
        rel: String,
        /// Verify downward primality and the singleton round trip.
        #[arg(long)]
        prime_check: bool,
    },
    /// Lift a predicate over a product into its bottom-extended codomain.
    Lift {
        file: PathBuf,
        #[arg(long)]
        pred: String,
    },
    /// Run the seeded invariant fuzzer.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        iters: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckFc { .. } => "check-fc",
            Command::CheckOpen { .. } => "check-open",
            Command::Ttl { .. } => "ttl",
            Command::Principle { .. } => "principle",
            Command::Zorn { .. } => "zorn",
            Command::Chains { .. } => "chains",
            Command::Empcf { .. } => "empcf",
            Command::Gdc { .. } => "gdc",
            Command::Align { .. } => "align",
            Command::Lift { .. } => "lift",
            Command::Fuzz { .. } => "fuzz",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();

    let mut report = Report::new(cli.command.name());
    let cap = match resolve_cap(cli.max_universe) {
        Ok(cap) => cap,
        Err(message) => {
            report.stats.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
            return bail(&mut report, cli.format, &message);
        }
    };
    report.input("max_universe", cap);

    let outcome = execute(&cli.command, cap, &mut report);
    report.stats.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok(()) => {
            emit(&report, cli.format);
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(message) => bail(&mut report, cli.format, &message),
    }
}

fn bail(report: &mut Report, format: Format, message: &str) -> ExitCode {
    report.status = Status::Error;
    eprintln!("error: {message}");
    emit(report, format);
    ExitCode::from(2)
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, String> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("FINCHAR_MAX_UNIVERSE") {
        Ok(value) => value
            .parse()
            .map_err(|_| format!("FINCHAR_MAX_UNIVERSE is not a number: `{value}`")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn load_spec(path: &Path) -> Result<ModelSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    dsl::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn find_pred<'a>(spec: &'a ModelSpec, name: &str) -> Result<&'a ListPredicate, String> {
    spec.list_predicate(name)
        .ok_or_else(|| format!("no list predicate named `{name}` in the file"))
}

fn find_relation<'a>(spec: &'a ModelSpec, name: &str) -> Result<&'a Relation, String> {
    spec.relation(name)
        .ok_or_else(|| format!("no relation named `{name}` in the file"))
}

fn table_size(t: &ListPredicate) -> u64 {
    1u64 << t.universe().size()
}

fn execute(cmd: &Command, cap: usize, report: &mut Report) -> Result<(), String> {
    match cmd {
        Command::CheckFc { file, pred } | Command::CheckOpen { file, pred } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("pred", pred);
            let t = find_pred(&spec, pred)?;
            report.stats.states = table_size(t);
            let p = SubsetPredicate::from_list_table(t, cap).map_err(|e| e.to_string())?;
            let universal = matches!(cmd, Command::CheckFc { .. });
            let (ok, witness) = if universal {
                is_finite_character(&p, cap)
            } else {
                is_open(&p, cap)
            }
            .map_err(|e| e.to_string())?;
            if ok {
                report.status = Status::Holds;
                let w = witness.expect("witness accompanies a positive answer");
                report.witness =
                    Some(dsl::render_listpred_decl("W", &w, cap).map_err(|e| e.to_string())?);
            } else {
                report.status = Status::Fails;
                let image = if universal {
                    eng(&restrict(&p), cap)
                } else {
                    eng_exists(&restrict(&p), cap)
                }
                .map_err(|e| e.to_string())?;
                let diff =
                    p.table()
                        .iter()
                        .zip(image.table())
                        .position(|(a, b)| a != b)
                        .expect("a failed check has a differing subset") as u64;
                report.counterexample = Some(dsl::render_subset_decl(
                    "D",
                    &Subset::from_mask(p.universe(), diff),
                ));
            }
        }
        Command::Ttl {
            file,
            pred,
            enumerate,
        } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("pred", pred);
            report.input("enumerate", enumerate);
            let t = find_pred(&spec, pred)?;
            report.stats.states = table_size(t);
            match ttl_witness(t, cap).map_err(|e| e.to_string())? {
                Some(w) => {
                    report.status = Status::Witness;
                    let mut lines = vec![dsl::render_subset_decl("W", &w)];
                    if *enumerate {
                        let p = eng(t, cap).map_err(|e| e.to_string())?;
                        for (i, m) in max_elements(&p).iter().enumerate() {
                            lines.push(dsl::render_subset_decl(&format!("M{i}"), m));
                        }
                    }
                    report.witness = Some(lines.join("\n"));
                }
                None => report.status = Status::NoWitness,
            }
        }
        Command::Principle { file, pred, kind } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("pred", pred);
            let (kind, label) = match kind {
                PrincipleKind::Ttl => (Principle::Ttl, "ttl"),
                PrincipleKind::Ttlco => (Principle::TtlCo, "ttlco"),
                PrincipleKind::Gui => (Principle::Gui, "gui"),
            };
            report.input("kind", label);
            let t = find_pred(&spec, pred)?;
            report.stats.states = table_size(t);
            let holds = evaluate_principle(t, kind, cap).map_err(|e| e.to_string())?;
            report.status = if holds { Status::Holds } else { Status::Fails };
        }
        Command::Zorn { file, order, set } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("order", order);
            report.input("set", set);
            let o = spec
                .order(order)
                .ok_or_else(|| format!("no order named `{order}` in the file"))?;
            let e = spec
                .subset(set)
                .ok_or_else(|| format!("no subset named `{set}` in the file"))?;
            let model = o.to_model(e.clone()).map_err(|e| e.to_string())?;
            report.stats.states = 1u64 << model.universe().size();
            match zorn_witness(&model, cap).map_err(|e| e.to_string())? {
                Some(a) => {
                    report.status = Status::Witness;
                    let singleton =
                        Subset::from_members(model.universe(), [a]).expect("witness is in range");
                    report.witness = Some(dsl::render_subset_decl("W", &singleton));
                }
                None => report.status = Status::NoWitness,
            }
        }
        Command::Chains {
            file,
            grammar,
            to_order,
            ..
        } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("grammar", grammar);
            report.input("mode", if *to_order { "to-order" } else { "check" });
            let g = spec
                .grammar(grammar)
                .ok_or_else(|| format!("no chain grammar named `{grammar}` in the file"))?;
            report.stats.states = g.core().len() as u64;
            if *to_order {
                match order_of_grammar(g) {
                    Ok(model) => {
                        report.status = Status::Witness;
                        let order_decl = dsl::OrderDecl {
                            universe: model.universe().clone(),
                            pairs: model.lt().clone(),
                        };
                        report.witness = Some(format!(
                            "{}\n{}",
                            dsl::render_order_decl("LT", &order_decl),
                            dsl::render_subset_decl("E", model.carrier())
                        ));
                    }
                    Err(e) => {
                        report.status = Status::Fails;
                        report.counterexample = Some(e.to_string());
                    }
                }
            } else if chain_grammar_check(g) {
                report.status = Status::Holds;
            } else {
                report.status = Status::Fails;
                report.counterexample = grammar_violation(g);
            }
        }
        Command::Empcf { file, pred } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("pred", pred);
            let t = find_pred(&spec, pred)?;
            report.stats.states = table_size(t);
            match empcf_witness(t, cap).map_err(|e| e.to_string())? {
                Some(f) => {
                    report.status = Status::Witness;
                    let graph = Subset::from_mask(t.universe(), f.graph_mask());
                    report.witness = Some(dsl::render_subset_decl("F_graph", &graph));
                }
                None => report.status = Status::NoWitness,
            }
        }
        Command::Gdc {
            file,
            pred,
            approx_only,
        } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("pred", pred);
            report.input("approx_only", approx_only);
            let t = find_pred(&spec, pred)?;
            report.stats.states = table_size(t);
            let (_, approximable) = approximation(t, cap).map_err(|e| e.to_string())?;
            if *approx_only {
                report.status = if approximable {
                    Status::Holds
                } else {
                    Status::NoWitness
                };
            } else {
                match choice_witness(t, cap).map_err(|e| e.to_string())? {
                    Some(f) => {
                        report.status = Status::Witness;
                        let graph = Subset::from_mask(t.universe(), f.graph_mask());
                        report.witness = Some(dsl::render_subset_decl("F_graph", &graph));
                    }
                    None => report.status = Status::NoWitness,
                }
            }
        }
        Command::Align {
            file,
            rel,
            prime_check,
        } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("rel", rel);
            report.input("prime_check", prime_check);
            let r = find_relation(&spec, rel)?;
            let t = positive_alignment(r);
            report.stats.states = table_size(&t);
            if *prime_check {
                let prime = is_downward_prime(&t, cap).map_err(|e| e.to_string())?;
                let round = relation_of(&t).map_err(|e| e.to_string())? == *r;
                report.status = if prime && round {
                    Status::Holds
                } else {
                    Status::Fails
                };
            } else {
                report.status = Status::Witness;
                let (l, rr) = t.universe().as_product().expect("alignment over a product");
                report.witness = Some(format!(
                    "alignpred AL over {} x {} = align {rel}",
                    l.name(),
                    rr.name()
                ));
            }
        }
        Command::Lift { file, pred } => {
            let spec = load_spec(file)?;
            report.input("file", file.display());
            report.input("pred", pred);
            let t = find_pred(&spec, pred)?;
            let lifted = lift_bottom(t, cap).map_err(|e| e.to_string())?;
            report.stats.states = 1u64 << lifted.universe().size();
            let (left, right) = t
                .universe()
                .as_product()
                .expect("lift_bottom succeeded on a product");
            let bot_name = format!("{}_bot", right.name());
            let prod_name = format!("{}x{bot_name}", left.name());
            let decl = dsl::render_downclose_decl("T_bot", &lifted)
                .expect("lifted predicate is a downward closure");
            report.status = Status::Witness;
            report.witness = Some(format!(
                "bottom {bot_name} = {}\nproduct {prod_name} = {} x {bot_name}\n{decl}",
                right.name(),
                left.name()
            ));
        }
        Command::Fuzz { seed, size, iters } => {
            report.input("seed", seed);
            report.input("size", size);
            report.input("iters", iters);
            report.seed = Some(*seed);
            let cfg = FuzzConfig {
                seed: *seed,
                size: *size,
                iters: *iters,
                cap,
            };
            let outcome = fuzz::run(&cfg).map_err(|e| e.to_string())?;
            report.stats.states = outcome.iterations;
            match outcome.violation {
                None => report.status = Status::Holds,
                Some(v) => {
                    report.status = Status::Fails;
                    report.counterexample = Some(format!(
                        "# failing check: {}\n# {}\n{}",
                        v.check, v.detail, v.repro
                    ));
                }
            }
        }
    }
    Ok(())
}
