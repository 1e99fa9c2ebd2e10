//! Dynamic soundness checks over a directory of programs.
//!
//! Every file that typechecks is run step by step. At each step the harness
//! checks that the configuration steps or is normal, that a re-typing of the
//! new term under the environment induced by the store is compatible with the
//! original type, that every application finds a function, that the store
//! only grows, and that stepping is deterministic.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use pdot_eval::{lookup_star, run_with, step, Configuration, LookupOutcome, Rule, RunOutcome, Transition, DEFAULT_LOOKUP_FUEL};
use pdot_parser::{pretty_path, pretty_term, pretty_type};
use pdot_syntax::{Stable, Term, Type, Value};
use pdot_typing::{check, inert_env, replay, subtype, synth, typecheck, wf_env, Deriv, Env, Judgement, DEFAULT_FUEL};

use crate::gamma::extend_env;
use crate::load::load;

/// Reduction steps checked per file. Each step re-types the whole term, so
/// this is much smaller than the default run budget.
pub const HARNESS_STEPS: u64 = 200;

/// Violation messages kept per file.
const MAX_NOTES: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct HarnessOptions {
    pub steps: u64,
    pub lookup_fuel: u64,
    pub type_fuel: u64,
}

impl Default for HarnessOptions {
    fn default() -> HarnessOptions {
        HarnessOptions { steps: HARNESS_STEPS, lookup_fuel: DEFAULT_LOOKUP_FUEL, type_fuel: DEFAULT_FUEL }
    }
}

/// How many times a property was checked and how often it failed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: u64,
    pub violations: u64,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checks {
    pub progress: Tally,
    pub preservation: Tally,
    pub canonical_forms: Tally,
    pub monotonicity: Tally,
    pub determinism: Tally,
}

impl Checks {
    pub fn violations(&self) -> u64 {
        self.all().iter().map(|(_, t)| t.violations).sum()
    }

    pub fn all(&self) -> [(&'static str, Tally); 5] {
        [
            ("progress", self.progress),
            ("preservation", self.preservation),
            ("canonical", self.canonical_forms),
            ("monotone", self.monotonicity),
            ("determinism", self.determinism),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The file does not typecheck, so there is nothing to check dynamically.
    Rejected(String),
}

#[derive(Clone, Debug)]
pub struct FileReport {
    pub file: String,
    pub status: Status,
    pub steps: u64,
    pub outcome: String,
    pub checks: Checks,
    pub notes: Vec<String>,
}

impl FileReport {
    fn note(&mut self, msg: String) {
        if self.notes.len() < MAX_NOTES {
            self.notes.push(msg);
        }
    }
}

/// The `.pdot` files directly inside `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<io::Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "pdot") && p.is_file())
        .collect();
    files.sort();
    Ok(files)
}

/// The application a step fires on: the innermost let-bound redex.
fn redex(t: &Term) -> Option<&Term> {
    match t {
        Term::App(..) => Some(t),
        Term::Let { bound, .. } if !bound.is_normal_form() => redex(bound),
        _ => None,
    }
}

struct Preservation {
    env: Env,
    original: Type,
    fuel: u64,
}

impl Preservation {
    /// Re-types `c.term` under the environment induced by `c.store` at a type
    /// compatible with the original one.
    fn check(&mut self, c: &Configuration) -> Result<(), String> {
        self.env = extend_env(&self.env, &c.store, self.fuel)?;
        if !inert_env(&self.env) {
            return Err(format!("induced environment is not inert: {}", self.env));
        }
        if let Judgement::No(e) = wf_env(&self.env) {
            return Err(format!("induced environment is not well-formed: {}", e.message));
        }
        let ty = match synth(&self.env, &c.term, self.fuel) {
            Judgement::Yes(t) => {
                self.replay(&t.deriv)?;
                t.ty
            }
            Judgement::No(e) => return Err(format!("{} does not type: {}: {}", pretty_term(&c.term), e.rule, e.message)),
            Judgement::Unknown => return Err(format!("typing {} ran out of fuel", pretty_term(&c.term))),
        };
        match subtype(&self.env, &ty, &self.original, self.fuel) {
            Judgement::Yes(d) => return self.replay(&d),
            Judgement::Unknown => return Ok(()),
            Judgement::No(_) => {}
        }
        // A synthesized singleton only widens through typing, so also try the
        // original type itself as the witness.
        match check(&self.env, &c.term, &self.original, self.fuel) {
            Judgement::Yes(d) => self.replay(&d),
            Judgement::No(e) => Err(format!(
                "{} : {} is not a subtype of {}, and checking against it fails: {}: {}",
                pretty_term(&c.term),
                pretty_type(&ty),
                pretty_type(&self.original),
                e.rule,
                e.message
            )),
            Judgement::Unknown => Ok(()),
        }
    }

    /// Every positive answer must survive independent replay.
    fn replay(&self, d: &Arc<Deriv>) -> Result<(), String> {
        replay(&self.env, d).map(|_| ()).map_err(|e| format!("derivation does not replay: {e}"))
    }
}

/// Type-checks, runs and checks one file.
pub fn check_file(path: &Path, opts: &HarnessOptions) -> FileReport {
    let mut report = FileReport {
        file: path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned()),
        status: Status::Pass,
        steps: 0,
        outcome: String::new(),
        checks: Checks::default(),
        notes: Vec::new(),
    };
    let loaded = match load(path) {
        Ok(l) => l,
        Err(e) => {
            report.status = Status::Fail;
            report.note(e.to_string());
            return report;
        }
    };
    let original = match typecheck(&loaded.term, opts.type_fuel) {
        Judgement::Yes(t) => t.ty,
        Judgement::No(e) => {
            report.status = Status::Rejected(e.rule.clone());
            return report;
        }
        Judgement::Unknown => {
            report.status = Status::Rejected("fuel".into());
            return report;
        }
    };
    let mut pres = Preservation { env: Env::new(), original, fuel: opts.type_fuel };
    let mut checks = Checks::default();
    let mut notes = Vec::new();
    if let Err(e) = pres.check(&Configuration::new(loaded.term.clone())) {
        checks.preservation.record(false);
        notes.push(format!("step 0: {e}"));
    } else {
        checks.preservation.record(true);
    }
    let run = run_with(&loaded.term, opts.steps, opts.lookup_fuel, |before, entry| {
        let n = entry.index;
        checks.progress.record(true);
        checks.monotonicity.record(before.store.is_prefix_of(&entry.config.store));
        let again = step(before, opts.lookup_fuel);
        let same = matches!(&again, Ok(Some(s)) if s.config.term == entry.config.term
            && s.config.store.len() == entry.config.store.len()
            && Transition::Reduce(s.rules.clone()) == entry.transition);
        checks.determinism.record(same);
        if let Transition::Reduce(rules) = &entry.transition {
            if rules.last() == Some(&Rule::Apply) {
                let ok = match redex(&before.term) {
                    Some(Term::App(p, _)) => matches!(
                        lookup_star(&before.store, &Stable::Path(p.clone()), opts.lookup_fuel),
                        LookupOutcome::Value(Value::Lam(..))
                    ),
                    _ => false,
                };
                checks.canonical_forms.record(ok);
                if !ok {
                    notes.push(format!("step {n}: application did not find a function"));
                }
            }
        }
        match pres.check(&entry.config) {
            Ok(()) => checks.preservation.record(true),
            Err(e) => {
                checks.preservation.record(false);
                notes.push(format!("step {n}: {e}"));
            }
        }
    });
    match &run.outcome {
        RunOutcome::Stuck { reason, steps } => {
            checks.progress.record(false);
            notes.push(format!("step {steps}: stuck: {reason}"));
        }
        RunOutcome::NormalPath { path, resolution: LookupOutcome::Stuck(at), .. } => {
            checks.progress.record(false);
            notes.push(format!("normal path {} has no lookup step at {}", pretty_path(path), pretty_path(at)));
        }
        _ => checks.progress.record(true),
    }
    report.steps = match &run.outcome {
        RunOutcome::Value { steps, .. } | RunOutcome::NormalPath { steps, .. } | RunOutcome::Stuck { steps, .. } => *steps,
        RunOutcome::Diverged { fuel } => *fuel,
    };
    report.outcome = match &run.outcome {
        RunOutcome::Value { .. } => "value".into(),
        RunOutcome::NormalPath { path, .. } => format!("path {}", pretty_path(path)),
        RunOutcome::Diverged { .. } => "diverged".into(),
        RunOutcome::Stuck { .. } => "stuck".into(),
    };
    for n in notes {
        report.note(n);
    }
    if checks.violations() > 0 {
        report.status = Status::Fail;
    }
    report.checks = checks;
    report
}

/// Checks files one after another.
pub fn harness_sequential(files: &[PathBuf], opts: &HarnessOptions) -> Vec<FileReport> {
    files.iter().map(|f| check_file(f, opts)).collect()
}

/// Checks files on the rayon pool; reports keep the input order.
#[cfg(feature = "parallel")]
pub fn harness_parallel(files: &[PathBuf], opts: &HarnessOptions) -> Vec<FileReport> {
    use rayon::prelude::*;
    files.par_iter().map(|f| check_file(f, opts)).collect()
}

/// Parallel when built with the `parallel` feature, sequential otherwise.
pub fn harness(files: &[PathBuf], opts: &HarnessOptions) -> Vec<FileReport> {
    #[cfg(feature = "parallel")]
    return harness_parallel(files, opts);
    #[cfg(not(feature = "parallel"))]
    return harness_sequential(files, opts);
}

/// A fixed-width pass/fail matrix, one row per file.
pub fn render_matrix(reports: &[FileReport]) -> String {
    let width = reports.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = write!(out, "{:width$}  {:8}  {:>5}", "file", "status", "steps");
    for (name, _) in Checks::default().all() {
        let _ = write!(out, "  {name:>12}");
    }
    out.push('\n');
    for r in reports {
        let status = match &r.status {
            Status::Pass => "pass".to_string(),
            Status::Fail => "FAIL".to_string(),
            Status::Rejected(_) => "rejected".to_string(),
        };
        let _ = write!(out, "{:width$}  {:8}  {:>5}", r.file, status, r.steps);
        for (_, t) in r.checks.all() {
            let cell = if t.checked == 0 { "-".to_string() } else { format!("{}/{}", t.checked - t.violations, t.checked) };
            let _ = write!(out, "  {cell:>12}");
        }
        out.push('\n');
        for n in &r.notes {
            let _ = writeln!(out, "    {n}");
        }
    }
    let checked = reports.iter().filter(|r| !matches!(r.status, Status::Rejected(_))).count();
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let violations: u64 = reports.iter().map(|r| r.checks.violations()).sum();
    let _ = writeln!(out, "{} files, {checked} checked, {failed} failed, {violations} violations", reports.len());
    out
}

/// JSON form of the reports.
pub fn reports_json(reports: &[FileReport]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            let mut checks = serde_json::Map::new();
            for (name, t) in r.checks.all() {
                checks.insert(name.into(), serde_json::json!({"checked": t.checked, "violations": t.violations}));
            }
            let (status, rule) = match &r.status {
                Status::Pass => ("pass", None),
                Status::Fail => ("fail", None),
                Status::Rejected(rule) => ("rejected", Some(rule.clone())),
            };
            serde_json::json!({
                "file": r.file,
                "status": status,
                "rejected_by": rule,
                "steps": r.steps,
                "outcome": r.outcome,
                "checks": checks,
                "notes": r.notes,
            })
        })
        .collect();
    serde_json::json!({ "files": rows })
}
