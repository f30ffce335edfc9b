//! `eisenstein`: reports on Eisenstein ideals at prime level.
//!
//! Every subcommand walks a list of `(N, p)` items, computes one JSON record
//! per item (errors are embedded in the record), and prints the records in
//! `(N, p)` order.  The exit status is 1 if any record reports a failed
//! theorem-backed check, 2 on usage errors and 0 otherwise.

mod cache;
mod commands;
mod golden;
mod output;
mod select;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use cache::Cache;
use commands::{conjecture_summary, header, run_item, Command, RunConfig};
use output::Format;
use select::{Item, PrimeChoice, Selection};

#[derive(Parser, Debug)]
#[command(name = "eisenstein", version, about = "Merel-type criteria, supersingular invariants and g_p at prime level")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Directory for cached per-item records.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Per-item wall-clock budget; items over budget get a `timeout` record.
    #[arg(long, global = true)]
    budget_secs: Option<f64>,
    /// Add `elapsed_ms` to each record (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Merel-type criteria for g_p >= 2 and g_p >= 3.
    Criteria {
        #[command(flatten)]
        sel: Selection,
    },
    /// g_p and n(r, p) from the Eisenstein filtration of modular symbols.
    Gp {
        #[command(flatten)]
        sel: Selection,
        /// Largest prime the Hecke generator list may grow to.
        #[arg(long, default_value_t = 97)]
        gens_max_prime: u64,
        /// Also use w_N + 1 as a generator of the Eisenstein ideal.
        #[arg(long)]
        with_atkin_lehner: bool,
    },
    /// Structure of the supersingular λ-invariants and, optionally, pairings.
    Supersingular {
        #[command(flatten)]
        sel: Selection,
        /// Compute e1.e0, e1.e1 and their identities (needs --p).
        #[arg(long)]
        pairings: bool,
    },
    /// Mass formula, discriminant and pairing identities.
    Eichler {
        #[command(flatten)]
        sel: Selection,
    },
    /// Sweep of the power propositions and the numerically observed identities.
    Conjectures {
        #[command(flatten)]
        sel: Selection,
    },
    /// Identities among logarithm sums, and the p = 2 integral element.
    IdentitySuite {
        #[command(flatten)]
        sel: Selection,
    },
}

/// How each command expands its selection into items.
struct Plan {
    sel: Selection,
    cfg: RunConfig,
    default_p: Option<PrimeChoice>,
    min_p: u64,
}

fn plan(cmd: Cmd) -> Plan {
    let base = |command| RunConfig { command, r: None, gens_max_prime: 97, atkin_lehner: false, pairings: false };
    let (sel, cfg, default_p, min_p) = match cmd {
        Cmd::Criteria { sel } => (sel, base(Command::Criteria), Some(PrimeChoice::All), 2),
        Cmd::Gp { sel, gens_max_prime, with_atkin_lehner } => {
            let cfg = RunConfig { gens_max_prime, atkin_lehner: with_atkin_lehner, ..base(Command::Gp) };
            (sel, cfg, Some(PrimeChoice::All), 5)
        }
        Cmd::Supersingular { sel, pairings } => (sel, RunConfig { pairings, ..base(Command::Supersingular) }, None, 5),
        Cmd::Eichler { sel } => (sel, base(Command::Eichler), None, 5),
        Cmd::Conjectures { sel } => (sel, base(Command::Conjectures), Some(PrimeChoice::All), 3),
        Cmd::IdentitySuite { sel } => (sel, base(Command::IdentitySuite), Some(PrimeChoice::All), 2),
    };
    let cfg = RunConfig { r: sel.r, ..cfg };
    Plan { sel, cfg, default_p, min_p }
}

/// Runs one item, honouring the cache and the time budget.
fn process(cfg: &RunConfig, item: Item, cache: Option<&Cache>, budget: Option<Duration>, timings: bool) -> Value {
    let start = Instant::now();
    let key = Cache::key(cfg.command.name(), item.n, item.p, &cfg.fingerprint());
    let cached = cache.and_then(|c| c.get(&key));
    let mut rec = match cached {
        Some(rec) => rec,
        None => {
            let rec = match budget {
                None => run_item(cfg, item),
                Some(limit) => run_with_budget(cfg, item, limit),
            };
            let timed_out = rec.get("status").and_then(Value::as_str) == Some("timeout");
            if let (Some(c), false) = (cache, timed_out) {
                if let Err(e) = c.put(&key, &rec) {
                    eprintln!("warning: cannot write cache entry {key}: {e}");
                }
            }
            rec
        }
    };
    if timings {
        rec["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    rec
}

/// Runs an item on its own thread and gives up waiting after `limit`.  The
/// abandoned computation keeps running until the process exits.
fn run_with_budget(cfg: &RunConfig, item: Item, limit: Duration) -> Value {
    let (tx, rx) = mpsc::channel();
    let cfg2 = cfg.clone();
    std::thread::spawn(move || {
        let _ = tx.send(run_item(&cfg2, item));
    });
    match rx.recv_timeout(limit) {
        Ok(rec) => rec,
        Err(_) => {
            let mut rec = header(cfg.command, item);
            rec.insert("status".into(), json!("timeout"));
            rec.insert("message".into(), json!(format!("exceeded budget of {:.1}s", limit.as_secs_f64())));
            rec.insert("theorem_failure".into(), json!(false));
            Value::Object(rec)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common;
    let Plan { sel, cfg, default_p, min_p } = plan(cli.command);
    // A range scan silently drops levels without a usable prime; a single
    // level always yields a record.
    let keep_bare = sel.n.is_some() || !cfg.command.needs_p();
    let items = match sel.items(default_p, min_p, keep_bare) {
        Ok(items) => items,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cache = match common.cache_dir.as_deref().map(Cache::open).transpose() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cannot open cache directory: {e}");
            return ExitCode::from(2);
        }
    };
    let budget = common.budget_secs.map(Duration::from_secs_f64);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = common.threads {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    let mut records: Vec<Value> = pool.install(|| {
        items.par_iter().map(|&item| process(&cfg, item, cache.as_ref(), budget, common.timings)).collect()
    });
    if cfg.command == Command::Conjectures && records.len() > 1 {
        let summary = conjecture_summary(&records);
        records.push(summary);
    }
    let failed = records.iter().any(|r| r.get("theorem_failure").and_then(Value::as_bool) == Some(true));
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = output::write_records(&mut out, &records, common.format).and_then(|_| out.flush()) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
