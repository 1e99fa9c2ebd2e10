//! The `pdot` subcommands, as functions from arguments to a report.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use pdot_eval::{lookup_trace, run, trace, Configuration, LookupOutcome, Run, RunOutcome, DEFAULT_LOOKUP_FUEL, DEFAULT_STEPS};
use pdot_parser::{dump_ast, parse_path, pretty_path, pretty_stable, pretty_term, pretty_type, pretty_value, path_json, type_json};
use pdot_syntax::{Path as PPath, Stable, Term};
use pdot_typing::{synth, typecheck, Judgement, Typed, DEFAULT_FUEL};
use serde_json::json;

use crate::gamma::env_of_store;
use crate::harness::{corpus_files, harness, render_matrix, reports_json, HarnessOptions, Status, HARNESS_STEPS};
use crate::load::{load, LoadError, Loaded};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    TypeError = 1,
    Usage = 2,
    Diverged = 3,
    Stuck = 4,
}

#[derive(Debug, Parser)]
#[command(name = "pdot", version, about = "Typecheck and run pDOT programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Fuel for the command's main loop: typing rule applications for
    /// `check`/`typeof`, reduction steps for `run`/`trace`/`lookup`/`harness`.
    #[arg(long, global = true, value_name = "N")]
    pub fuel: Option<u64>,
    /// Bound on single path-lookup steps per lookup.
    #[arg(long, global = true, value_name = "N")]
    pub lookup_fuel: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run programs without typechecking them first.
    #[arg(long = "unsafe", global = true)]
    pub unsafe_run: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Typecheck a program and print its type.
    Check { file: PathBuf },
    /// Evaluate a program.
    Run { file: PathBuf },
    /// Evaluate a program, printing every step.
    Trace { file: PathBuf },
    /// Run a program, then type a path in its final store.
    Typeof { file: PathBuf, path: String },
    /// Run a program, then look a path up in its final store.
    Lookup { file: PathBuf, path: String },
    /// Check the dynamic soundness properties on every `.pdot` file in a directory.
    Harness { dir: PathBuf },
    /// Print the program's syntax tree as JSON.
    Dump { file: PathBuf },
}

/// What a command printed and how it ended.
#[derive(Debug)]
pub struct Report {
    pub exit: Exit,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn out(exit: Exit, stdout: impl Into<String>) -> Report {
        Report { exit, stdout: stdout.into(), stderr: String::new() }
    }

    fn err(exit: Exit, stderr: impl Into<String>) -> Report {
        Report { exit, stdout: String::new(), stderr: stderr.into() }
    }

    fn json(exit: Exit, value: serde_json::Value) -> Report {
        Report::out(exit, format!("{value}\n"))
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    env_fuel: Option<u64>,
}

impl Ctx<'_> {
    /// `--fuel`, else `PDOT_FUEL`, else the command's default.
    fn fuel(&self, default: u64) -> u64 {
        self.cli.fuel.or(self.env_fuel).unwrap_or(default)
    }

    fn lookup_fuel(&self) -> u64 {
        self.cli.lookup_fuel.unwrap_or(DEFAULT_LOOKUP_FUEL)
    }

    fn load(&self, file: &Path) -> Result<Loaded, Report> {
        load(file).map_err(|e| match e {
            LoadError::Io { .. } => self.failure(Exit::Usage, "io", vec![e.to_string()], vec![]),
            LoadError::Parse { rendered, json } => self.failure(Exit::TypeError, "syntax", rendered, json),
        })
    }

    fn failure(&self, exit: Exit, kind: &str, lines: Vec<String>, json: Vec<serde_json::Value>) -> Report {
        if self.cli.json {
            let diagnostics = if json.is_empty() { lines.iter().map(|l| json!({ "message": l })).collect() } else { json };
            Report::json(exit, json!({ "status": "error", "kind": kind, "diagnostics": diagnostics }))
        } else {
            Report::err(exit, lines.join("\n") + "\n")
        }
    }

    /// Typechecks with `fuel`, turning rejection into a report.
    fn typecheck(&self, loaded: &Loaded, fuel: u64) -> Result<Typed, Report> {
        match typecheck(&loaded.term, fuel) {
            Judgement::Yes(t) => Ok(t),
            Judgement::No(e) => {
                let d = e.to_diagnostic();
                Err(self.failure(Exit::TypeError, "type", vec![loaded.render(&d)], vec![d.to_json(&loaded.src)]))
            }
            Judgement::Unknown => {
                let msg = format!("{}: error: fuel: typechecking did not finish within {fuel} rule applications", loaded.src.origin);
                Err(self.failure(Exit::TypeError, "fuel", vec![msg], vec![]))
            }
        }
    }

    fn parse_path(&self, text: &str) -> Result<PPath, Report> {
        parse_path(text).map_err(|d| self.failure(Exit::Usage, "usage", vec![format!("invalid path `{text}`: {}", d.message)], vec![]))
    }

    /// Typechecks unless `--unsafe`, then runs.
    fn run_program(&self, loaded: &Loaded) -> Result<Run, Report> {
        if !self.cli.unsafe_run {
            self.typecheck(loaded, DEFAULT_FUEL)?;
        }
        Ok(run(&loaded.term, self.fuel(DEFAULT_STEPS), self.lookup_fuel()))
    }

    /// The final configuration of a run, which must bind `p`'s root.
    fn final_store(&self, loaded: &Loaded, p: &PPath) -> Result<Configuration, Report> {
        let r = self.run_program(loaded)?;
        let root = p.root_name().unwrap_or_default();
        if !r.last.store.contains(root) {
            return Err(self.failure(
                Exit::Usage,
                "usage",
                vec![format!("`{root}` is not bound in the final store ({})", r.outcome)],
                vec![],
            ));
        }
        Ok(r.last)
    }
}

fn outcome_exit(o: &RunOutcome) -> Exit {
    match o {
        RunOutcome::Value { .. } | RunOutcome::NormalPath { .. } => Exit::Ok,
        RunOutcome::Diverged { .. } => Exit::Diverged,
        RunOutcome::Stuck { .. } => Exit::Stuck,
    }
}

fn lookup_json(o: &LookupOutcome) -> serde_json::Value {
    match o {
        LookupOutcome::Value(v) => json!({ "kind": "value", "value": pretty_value(v) }),
        LookupOutcome::Cycle(ps) => json!({ "kind": "cycle", "paths": ps.iter().map(pretty_path).collect::<Vec<_>>() }),
        LookupOutcome::Stuck(p) => json!({ "kind": "stuck", "at": pretty_path(p) }),
        LookupOutcome::FuelOut => json!({ "kind": "fuel" }),
    }
}

fn outcome_json(o: &RunOutcome) -> serde_json::Value {
    match o {
        RunOutcome::Value { value, steps } => json!({ "outcome": "value", "steps": steps, "value": pretty_value(value) }),
        RunOutcome::NormalPath { path, steps, resolution } => json!({
            "outcome": "path", "steps": steps, "path": pretty_path(path), "resolution": lookup_json(resolution),
        }),
        RunOutcome::Diverged { fuel } => json!({ "outcome": "diverged", "fuel": fuel }),
        RunOutcome::Stuck { reason, steps } => json!({ "outcome": "stuck", "steps": steps, "reason": reason.to_string() }),
    }
}

fn check(ctx: &Ctx, file: &Path) -> Result<Report, Report> {
    let loaded = ctx.load(file)?;
    let fuel = ctx.fuel(DEFAULT_FUEL);
    let typed = ctx.typecheck(&loaded, fuel)?;
    if ctx.cli.json {
        return Ok(Report::json(
            Exit::Ok,
            json!({
                "status": "ok",
                "type": pretty_type(&typed.ty),
                "type_ast": type_json(&typed.ty),
                "derivation_size": typed.deriv.size(),
            }),
        ));
    }
    Ok(Report::out(Exit::Ok, format!("{}\n", pretty_type(&typed.ty))))
}

fn run_cmd(ctx: &Ctx, file: &Path) -> Result<Report, Report> {
    let loaded = ctx.load(file)?;
    let r = ctx.run_program(&loaded)?;
    let exit = outcome_exit(&r.outcome);
    if ctx.cli.json {
        return Ok(Report::json(exit, outcome_json(&r.outcome)));
    }
    Ok(Report::out(exit, format!("{}\n", r.outcome)))
}

fn trace_cmd(ctx: &Ctx, file: &Path) -> Result<Report, Report> {
    let loaded = ctx.load(file)?;
    if !ctx.cli.unsafe_run {
        ctx.typecheck(&loaded, DEFAULT_FUEL)?;
    }
    let (entries, r) = trace(&loaded.term, ctx.fuel(DEFAULT_STEPS), ctx.lookup_fuel());
    let exit = outcome_exit(&r.outcome);
    if ctx.cli.json {
        let steps: Vec<serde_json::Value> = entries
            .iter()
            .map(|e| json!({ "step": e.index, "rule": e.transition.name(), "rules": e.transition.to_string(), "term": pretty_term(&e.config.term) }))
            .collect();
        return Ok(Report::json(exit, json!({ "initial": pretty_term(&loaded.term), "steps": steps, "result": outcome_json(&r.outcome) })));
    }
    let mut out = format!("0  rule=-  term={}\n", pretty_term(&loaded.term));
    for e in &entries {
        out.push_str(&e.line());
        out.push('\n');
    }
    out.push_str(&format!("{}\n", r.outcome));
    Ok(Report::out(exit, out))
}

fn typeof_cmd(ctx: &Ctx, file: &Path, path: &str) -> Result<Report, Report> {
    let loaded = ctx.load(file)?;
    let p = ctx.parse_path(path)?;
    let last = ctx.final_store(&loaded, &p)?;
    let fuel = ctx.fuel(DEFAULT_FUEL);
    let env = env_of_store(&last.store, DEFAULT_FUEL).map_err(|e| ctx.failure(Exit::TypeError, "type", vec![e], vec![]))?;
    match synth(&env, &Term::Stable(Stable::Path(p.clone())), fuel) {
        Judgement::Yes(t) if ctx.cli.json => {
            Ok(Report::json(Exit::Ok, json!({ "path": path_json(&p), "type": pretty_type(&t.ty), "environment": env.to_string() })))
        }
        Judgement::Yes(t) => Ok(Report::out(Exit::Ok, format!("{}\n", pretty_type(&t.ty)))),
        Judgement::No(e) => Err(ctx.failure(Exit::TypeError, "type", vec![format!("{path}: error: {}: {}", e.rule, e.message)], vec![])),
        Judgement::Unknown => Err(ctx.failure(Exit::TypeError, "fuel", vec![format!("{path}: error: fuel: typing did not finish")], vec![])),
    }
}

fn lookup_cmd(ctx: &Ctx, file: &Path, path: &str) -> Result<Report, Report> {
    let loaded = ctx.load(file)?;
    let p = ctx.parse_path(path)?;
    let last = ctx.final_store(&loaded, &p)?;
    let (steps, outcome) = lookup_trace(&last.store, &Stable::Path(p.clone()), ctx.lookup_fuel());
    let exit = match outcome {
        LookupOutcome::Value(_) => Exit::Ok,
        LookupOutcome::Cycle(_) | LookupOutcome::FuelOut => Exit::Diverged,
        LookupOutcome::Stuck(_) => Exit::Stuck,
    };
    if ctx.cli.json {
        let rows: Vec<serde_json::Value> = steps
            .iter()
            .map(|d| {
                let js: Vec<serde_json::Value> = d
                    .judgements()
                    .into_iter()
                    .map(|(from, to, rule)| json!({ "from": pretty_path(from), "to": pretty_stable(to), "rule": rule.name() }))
                    .collect();
                json!({ "from": pretty_path(&d.from), "to": pretty_stable(&d.to), "derivation": js })
            })
            .collect();
        return Ok(Report::json(exit, json!({ "path": path, "steps": rows, "outcome": lookup_json(&outcome) })));
    }
    let mut out = String::new();
    for (i, d) in steps.iter().enumerate() {
        out.push_str(&format!("{}  {} ~> {}\n", i + 1, pretty_path(&d.from), pretty_stable(&d.to)));
        for (from, to, rule) in d.judgements() {
            out.push_str(&format!("     {rule:<18} {} ~> {}\n", pretty_path(from), pretty_stable(to), rule = rule.name()));
        }
    }
    out.push_str(&format!("{path} ~>* {outcome}\n"));
    Ok(Report::out(exit, out))
}

fn harness_cmd(ctx: &Ctx, dir: &Path) -> Result<Report, Report> {
    let files = corpus_files(dir).map_err(|e| ctx.failure(Exit::Usage, "io", vec![format!("{}: {e}", dir.display())], vec![]))?;
    let opts = HarnessOptions { steps: ctx.fuel(HARNESS_STEPS), lookup_fuel: ctx.lookup_fuel(), type_fuel: DEFAULT_FUEL };
    let reports = harness(&files, &opts);
    let exit = if reports.iter().any(|r| r.status == Status::Fail) { Exit::TypeError } else { Exit::Ok };
    if ctx.cli.json {
        return Ok(Report::json(exit, reports_json(&reports)));
    }
    Ok(Report::out(exit, render_matrix(&reports)))
}

fn dump(ctx: &Ctx, file: &Path) -> Result<Report, Report> {
    let loaded = ctx.load(file)?;
    Ok(Report::out(Exit::Ok, format!("{}\n", dump_ast(&loaded.term))))
}

/// Runs one parsed command line. `env_fuel` is the value of `PDOT_FUEL`.
pub fn execute(cli: &Cli, env_fuel: Option<u64>) -> Report {
    let ctx = Ctx { cli, env_fuel };
    let r = match &cli.command {
        Command::Check { file } => check(&ctx, file),
        Command::Run { file } => run_cmd(&ctx, file),
        Command::Trace { file } => trace_cmd(&ctx, file),
        Command::Typeof { file, path } => typeof_cmd(&ctx, file, path),
        Command::Lookup { file, path } => lookup_cmd(&ctx, file, path),
        Command::Harness { dir } => harness_cmd(&ctx, dir),
        Command::Dump { file } => dump(&ctx, file),
    };
    r.unwrap_or_else(|e| e)
}

/// Parses `PDOT_FUEL`; unset means no override.
pub fn env_fuel(value: Option<&str>) -> Result<Option<u64>, String> {
    match value {
        None => Ok(None),
        Some(v) => v.trim().parse().map(Some).map_err(|_| format!("PDOT_FUEL must be a non-negative integer, got `{v}`")),
    }
}
