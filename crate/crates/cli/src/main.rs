use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use grad_core::algebra::Semiring;
use grad_core::contexts::grades_of;
use grad_core::corpus::header;
use grad_core::heap_machine::{memory_graph, show_step, End, Heap, Machine, StepOutcome};
use grad_core::program::{check_program, closed_main, typer_for, System};
use grad_core::subst_eval;
use grad_core::suites::{self, context_from_heap, Suite};
use grad_core::syntax::{parse_program, print, Fresh, Program};

#[derive(Parser)]
#[command(name = "grad", version, about = "Graded dependent type checker and evaluator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Simple,
    Dep,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::Simple => System::Simple,
            SystemArg::Dep => System::Dep,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Subst,
    Heap,
}

#[derive(Subcommand)]
enum Cmd {
    /// Infer the type of `main` and its usage of the definitions
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        system: Option<SystemArg>,
        /// Built-in name or a lattice .toml file; defaults to the file header
        #[arg(long)]
        semiring: Option<String>,
    },
    /// Evaluate `main`
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "subst")]
        mode: Mode,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        fuel: u64,
        #[arg(long)]
        semiring: Option<String>,
        /// Typer used for heap allocations
        #[arg(long, value_enum)]
        system: Option<SystemArg>,
    },
    /// Write the memory graph of the heap reached by running `main`
    Graph {
        file: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        /// Stop after this many machine steps
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        semiring: Option<String>,
        #[arg(long, value_enum)]
        system: Option<SystemArg>,
    },
    /// Run property suites over the built-in corpus
    Props {
        /// A suite name or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        semiring: Option<String>,
    },
}

struct Failure {
    code: u8,
    reason: String,
    detail: Option<String>,
}

fn fail(code: u8, reason: impl Into<String>, detail: impl Into<String>) -> Failure {
    Failure { code, reason: reason.into(), detail: Some(detail.into()) }
}

struct Loaded {
    sr: Semiring,
    program: Program,
    source: String,
}

fn load(file: &PathBuf, semiring: Option<&str>) -> Result<Loaded, Failure> {
    let source = std::fs::read_to_string(file)
        .map_err(|e| fail(4, "unreadable-file", format!("{}: {e}", file.display())))?;
    let name = semiring.or_else(|| header(&source, "semiring")).unwrap_or("linearity");
    let sr = Semiring::resolve(name).map_err(|e| fail(4, "bad-semiring", e.to_string()))?;
    let program = parse_program(&source, &sr).map_err(|e| fail(1, "parse-error", e.to_string()))?;
    Ok(Loaded { sr, program, source })
}

/// `--system`, else the file header, else `default`.
fn system_of(arg: Option<SystemArg>, source: &str, default: Option<System>) -> Option<System> {
    match arg {
        Some(s) => Some(s.into()),
        None => match header(source, "system") {
            Some("none") => None,
            Some(s) => s.parse().ok().or(default),
            None => default,
        },
    }
}

fn main_term(l: &Loaded) -> Result<grad_core::syntax::T, Failure> {
    closed_main(&l.program).ok_or_else(|| fail(1, "no-main", "the program has no `main`"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Check { file, system, semiring } => {
            let l = load(&file, semiring.as_deref())?;
            let sys = system_of(system, &l.source, Some(System::Dep)).unwrap_or(System::Dep);
            let c = check_program(&l.sr, sys, &l.program).map_err(|e| fail(1, e.reason(), e.to_string()))?;
            println!("{}", print(&l.sr, &c.ty));
            if !c.ctx.entries.is_empty() {
                let parts: Vec<String> = c
                    .ctx
                    .entries
                    .iter()
                    .zip(&c.usage.0)
                    .map(|(e, g)| format!("{}:{}", e.name, l.sr.show(*g)))
                    .collect();
                println!("usage: {}", parts.join(", "));
            }
            Ok(())
        }
        Cmd::Eval { file, mode, trace, fuel, semiring, system } => {
            let l = load(&file, semiring.as_deref())?;
            let a = main_term(&l)?;
            let fuel = fuel as usize;
            match mode {
                Mode::Subst => {
                    let mut cur = a;
                    let mut n = 0;
                    while let Some(next) = subst_eval::step(&cur) {
                        if n == fuel {
                            return Err(fail(3, "fuel-exhausted", format!("after {n} steps")));
                        }
                        if trace {
                            println!("{} --> {}", print(&l.sr, &cur), print(&l.sr, &next));
                        }
                        cur = next;
                        n += 1;
                    }
                    println!("{}", print(&l.sr, &cur));
                    println!("steps: {n}");
                    if !subst_eval::is_value(&cur) {
                        return Err(fail(2, "stuck", print(&l.sr, &cur)));
                    }
                    Ok(())
                }
                Mode::Heap => {
                    let typer = typer_for(system_of(system, &l.source, Some(System::Dep)));
                    let m = Machine { sr: &l.sr, typer: typer.as_ref() };
                    let r = m.run(&Heap::new(), &a, l.sr.one(), &BTreeSet::new(), &mut Fresh::new(), fuel);
                    if trace {
                        let (mut h, mut t) = (r.initial_heap.clone(), r.initial_term.clone());
                        for rec in &r.steps {
                            println!("{}", show_step(&l.sr, &h, &t, rec));
                            h = rec.new_heap.clone();
                            t = rec.reduct.clone();
                        }
                    }
                    println!("{}", print(&l.sr, &r.term));
                    println!("steps: {}", r.steps.len());
                    println!("heap: {}", r.heap.show(&l.sr));
                    println!("allowed: {}", l.sr.show_vec(&r.heap.allowed()));
                    println!("consumed: {}", l.sr.show_vec(&r.consumed));
                    println!("added: {}", l.sr.show_vec(&grades_of(&r.added)));
                    match r.end {
                        End::Value => Ok(()),
                        End::Stuck(s) => Err(Failure { code: 2, reason: s.reason(), detail: None }),
                        End::Fuel => Err(fail(3, "fuel-exhausted", format!("after {} steps", r.steps.len()))),
                    }
                }
            }
        }
        Cmd::Graph { file, dot, steps, semiring, system } => {
            let l = load(&file, semiring.as_deref())?;
            let a = main_term(&l)?;
            let typer = typer_for(system_of(system, &l.source, Some(System::Dep)));
            let m = Machine { sr: &l.sr, typer: typer.as_ref() };
            let (mut h, mut t) = (Heap::new(), a.clone());
            let mut support = grad_core::heap_machine::initial_support(&h, &a);
            let mut fresh = Fresh::new();
            let mut stuck = None;
            for _ in 0..steps.unwrap_or(suites::FUEL) {
                match m.step(&h, &t, l.sr.one(), &mut support, &mut fresh) {
                    StepOutcome::Step(rec) => {
                        h = rec.new_heap;
                        t = rec.reduct;
                    }
                    StepOutcome::Value => break,
                    StepOutcome::Stuck(s) => {
                        stuck = Some(s);
                        break;
                    }
                }
            }
            let usage = context_from_heap(&l.sr, &h)
                .ok_or_else(|| fail(1, "unbalanced-heap", "no context balances the heap"))?;
            let g = memory_graph(&l.sr, &h, &usage);
            std::fs::write(&dot, g.to_dot(&l.sr))
                .map_err(|e| fail(4, "unwritable-file", format!("{}: {e}", dot.display())))?;
            println!("heap: {}", h.show(&l.sr));
            println!("context: {}", l.sr.show_vec(&usage));
            match stuck {
                Some(s) => Err(Failure { code: 2, reason: s.reason(), detail: None }),
                None => Ok(()),
            }
        }
        Cmd::Props { suite, seed, semiring } => {
            let chosen: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(|e: String| fail(4, "unknown-suite", e))?]
            };
            let semiring = semiring
                .map(|s| Semiring::resolve(&s).map_err(|e| fail(4, "bad-semiring", e.to_string())))
                .transpose()?;
            let cfg = suites::Config { seed, semiring, ..Default::default() };
            let mut failed = 0;
            for s in chosen {
                for case in suites::run(s, &cfg) {
                    failed += usize::from(case.verdict.is_err());
                    println!("{case}");
                }
            }
            if failed > 0 {
                return Err(fail(1, "property-failed", format!("{failed} cases failed")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("grad:4:usage");
            let _ = e.print();
            return ExitCode::from(4);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("grad:{}:{}", f.code, f.reason);
            if let Some(d) = f.detail {
                eprintln!("{d}");
            }
            ExitCode::from(f.code)
        }
    }
}
