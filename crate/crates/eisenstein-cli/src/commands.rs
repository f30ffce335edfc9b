//! Per-item computations.  Each returns one JSON record; errors are embedded
//! in the record rather than aborting a scan.

use std::collections::BTreeMap;

use eisenstein::arith::{ExtLog, FieldCtx, LogMap};
use eisenstein::criteria::{criteria_report, identity_suite};
use eisenstein::modsym::{f02_element, newton_invariants, FiltrationOptions};
use eisenstein::supersingular::{
    conjecture_suite, hasse_disc_closed, hasse_disc_resultant, pairing_values, power_propositions, square_conjecture,
    supersingular_set, verify_pairings, verify_res_phi2, verify_resultant_values, verify_u2_multiplicative, Backing,
    Outcome, SupersingularSet, Verdict,
};
use eisenstein::Error;
use serde_json::{json, Map, Value};

use crate::golden;
use crate::select::Item;

/// Version of the record field set.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Criteria,
    Gp,
    Supersingular,
    Eichler,
    Conjectures,
    IdentitySuite,
}

impl Command {
    /// Whether every item needs a prime `p`.
    pub fn needs_p(self) -> bool {
        matches!(self, Command::Criteria | Command::Gp | Command::IdentitySuite)
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Criteria => "criteria",
            Command::Gp => "gp",
            Command::Supersingular => "supersingular",
            Command::Eichler => "eichler",
            Command::Conjectures => "conjectures",
            Command::IdentitySuite => "identity-suite",
        }
    }
}

/// Everything besides the item that influences a record.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub r: Option<u32>,
    pub gens_max_prime: u64,
    pub atkin_lehner: bool,
    pub pairings: bool,
}

impl RunConfig {
    /// The options that enter the cache key.
    pub fn fingerprint(&self) -> String {
        let r = self.r.map_or_else(|| "default".to_string(), |r| r.to_string());
        match self.command {
            Command::Gp => format!("r{r}-gmax{}-al{}", self.gens_max_prime, self.atkin_lehner as u8),
            Command::Supersingular => format!("r{r}-pairings{}", self.pairings as u8),
            _ => format!("r{r}"),
        }
    }
}

/// Errors that mean a proved statement failed numerically.
fn is_theorem_error(e: &Error) -> bool {
    matches!(
        e,
        Error::VerificationFailed(_)
            | Error::InternalInvariantViolation(_)
            | Error::NotWellDefined(_)
            | Error::RankMismatch { .. }
    )
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::CompositeModulus(_) => "CompositeModulus",
        Error::BadPrime(_) => "BadPrime",
        Error::BothZero => "BothZero",
        Error::NotEisensteinPrime { .. } => "NotEisensteinPrime",
        Error::RangeError { .. } => "RangeError",
        Error::UnsupportedPrime(_) => "UnsupportedPrime",
        Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
        Error::PairingUndefined => "PairingUndefined",
        Error::NotSupersingular => "NotSupersingular",
        Error::UnsupportedDegree(_) => "UnsupportedDegree",
        Error::RankMismatch { .. } => "RankMismatch",
        Error::BadIndex { .. } => "BadIndex",
        Error::NotWellDefined(_) => "NotWellDefined",
        Error::VerificationFailed(_) => "VerificationFailed",
        Error::GeneratorInstability { .. } => "GeneratorInstability",
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "id": v.id,
        "backing": match v.backing { Backing::Theorem => "theorem", Backing::Conjecture => "conjecture" },
        "outcome": match v.outcome { Outcome::Pass => "pass", Outcome::Fail => "fail", Outcome::Skipped => "skipped" },
        "detail": v.detail,
    })
}

fn verdicts_json(vs: &[Verdict]) -> Value {
    Value::Array(vs.iter().map(verdict_json).collect())
}

/// Base record for an item.
pub fn header(command: Command, item: Item) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command.name()));
    m.insert("N".into(), json!(item.n));
    m.insert("p".into(), json!(item.p));
    m
}

/// Computes the record of one item.
pub fn run_item(cfg: &RunConfig, item: Item) -> Value {
    let mut rec = header(cfg.command, item);
    if cfg.command.needs_p() && item.p.is_none() {
        match FieldCtx::new(item.n) {
            Ok(_) => {
                rec.insert("status".into(), json!("skipped"));
                rec.insert("message".into(), json!("no prime handled by this command divides the numerator of (N-1)/12"));
                rec.insert("theorem_failure".into(), json!(false));
                return Value::Object(rec);
            }
            Err(e) => return error_record(rec, &e),
        }
    }
    let result = match cfg.command {
        Command::Criteria => criteria(cfg, item),
        Command::Gp => gp(cfg, item),
        Command::Supersingular => supersingular(cfg, item),
        Command::Eichler => eichler(cfg, item),
        Command::Conjectures => conjectures(cfg, item),
        Command::IdentitySuite => identities(item),
    };
    match result {
        Ok(fields) => {
            let failed = fields.get("theorem_failure").and_then(Value::as_bool).unwrap_or(false);
            rec.extend(fields);
            rec.insert("status".into(), json!("ok"));
            rec.insert("theorem_failure".into(), json!(failed));
        }
        Err(e) => return error_record(rec, &e),
    }
    Value::Object(rec)
}

fn error_record(mut rec: Map<String, Value>, e: &Error) -> Value {
    rec.insert("status".into(), json!("error"));
    rec.insert("error".into(), json!(error_kind(e)));
    rec.insert("message".into(), json!(e.to_string()));
    rec.insert("theorem_failure".into(), json!(is_theorem_error(e)));
    Value::Object(rec)
}

type Fields = Result<Map<String, Value>, Error>;

fn require_p(item: Item) -> u64 {
    item.p.expect("run_item handles items without p")
}

/// Resolves `--r` against `t`, defaulting to `default(t)`.
fn resolve_r(cfg: &RunConfig, n: u64, p: u64, default: impl Fn(u32) -> u32) -> Result<(u32, u32), Error> {
    let t = LogMap::eisenstein_valuation(n, p)?;
    let r = cfg.r.unwrap_or_else(|| default(t));
    if r == 0 || r > t {
        return Err(Error::RangeError { r, t });
    }
    Ok((r, t))
}

fn criteria(cfg: &RunConfig, item: Item) -> Fields {
    let p = require_p(item);
    let ctx = FieldCtx::new(item.n)?;
    let (r, _) = resolve_r(cfg, item.n, p, |_| 1)?;
    let rep = criteria_report(&ctx, p, r)?;
    let mut m = Map::new();
    m.insert("r".into(), json!(rep.r));
    m.insert("t".into(), json!(rep.t));
    m.insert("modulus".into(), json!(rep.modulus));
    m.insert("merel_sums".into(), json!(rep.sums));
    m.insert("squares_sums".into(), json!(rep.squares_sum));
    m.insert("f_modulus".into(), json!(rep.f_modulus));
    m.insert("f".into(), json!(rep.f));
    m.insert("ge2".into(), json!(rep.ge2));
    m.insert("ge3".into(), json!(rep.ge3));
    Ok(m)
}

fn gp(cfg: &RunConfig, item: Item) -> Fields {
    let p = require_p(item);
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    let ctx = FieldCtx::new(item.n)?;
    let (r_max, t) = resolve_r(cfg, item.n, p, |t| t)?;
    let opts = FiltrationOptions { max_prime: cfg.gens_max_prime, atkin_lehner: cfg.atkin_lehner, ..Default::default() };
    let inv = newton_invariants(&ctx, p, &opts, Some(r_max))?;
    let mut m = Map::new();
    m.insert("t".into(), json!(t));
    m.insert("g_p".into(), json!(inv.g_p()));
    m.insert("n_r".into(), json!(inv.n_r));
    // The z-profile needs every modulus up to t.
    m.insert("z_profile".into(), if r_max == t { json!(inv.z) } else { Value::Null });
    if let Some(row) = golden::lookup(item.n, p) {
        let ok = row.t == t && row.g_p == inv.g_p();
        m.insert("golden".into(), json!({"t": row.t, "g_p": row.g_p, "match": ok}));
        m.insert("theorem_failure".into(), json!(!ok));
    }
    Ok(m)
}

fn structure(ss: &SupersingularSet) -> Map<String, Value> {
    let ctx = ss.ctx();
    let (a, b) = ss.mass();
    let mut m = Map::new();
    m.insert("lambdas".into(), json!(ss.len()));
    m.insert("orbits".into(), json!(ss.orbits.len()));
    m.insert("mass".into(), json!(format!("{a}/{b}")));
    m.insert("disc_closed".into(), json!(hasse_disc_closed(ctx)));
    m.insert("disc_resultant".into(), json!(hasse_disc_resultant(ctx)));
    m
}

fn any_theorem_failure(vs: &[Verdict]) -> bool {
    vs.iter().any(Verdict::is_theorem_failure)
}

fn supersingular(cfg: &RunConfig, item: Item) -> Fields {
    let ctx = FieldCtx::new(item.n)?;
    let ss = supersingular_set(&ctx)?;
    let mut m = structure(&ss);
    let bad = verify_u2_multiplicative(&ss)?;
    let mut verdicts = vec![
        Verdict::new("u2_multiplicative", Backing::Theorem, bad.is_empty(), format!("{} lambda fail", bad.len())),
        verify_res_phi2(&ctx),
    ];
    verdicts.extend(power_propositions(&ss));
    if let (Some(p), true) = (item.p, cfg.pairings) {
        let (r, _) = resolve_r(cfg, item.n, p, |t| t)?;
        let ext = ExtLog::new(&ctx, LogMap::new(&ctx, p, r)?)?;
        let pv = pairing_values(&ss, &ext)?;
        m.insert("r".into(), json!(r));
        m.insert("modulus".into(), json!(pv.modulus));
        m.insert("e1_dot_e0".into(), json!(pv.e1_dot_e0));
        m.insert("e1_dot_e1".into(), json!(pv.e1_dot_e1));
        verdicts.extend(verify_pairings(&ss, &ext)?);
        verdicts.extend(verify_resultant_values(&ss, &ext)?);
    }
    m.insert("theorem_failure".into(), json!(any_theorem_failure(&verdicts)));
    m.insert("verdicts".into(), verdicts_json(&verdicts));
    Ok(m)
}

fn eichler(cfg: &RunConfig, item: Item) -> Fields {
    let n = item.n;
    let ctx = FieldCtx::new(n)?;
    let ss = supersingular_set(&ctx)?;
    let mut m = structure(&ss);
    // Σ 1/w_E = Σ |orbit|/6, written over 12.
    let twelfths: u64 = 2 * ss.orbits.iter().map(|o| o.size() as u64).sum::<u64>();
    let mass_ok = twelfths == n - 1;
    let disc_ok = hasse_disc_closed(&ctx) == hasse_disc_resultant(&ctx);
    m.insert("mass".into(), json!(format!("{twelfths}/12")));
    m.insert("mass_expected".into(), json!(format!("{}/12", n - 1)));
    m.insert("mass_match".into(), json!(mass_ok));
    m.insert("disc_match".into(), json!(disc_ok));
    let primes: Vec<u64> = match item.p {
        Some(p) => vec![p],
        None => eisenstein::arith::primes::eisenstein_primes(n).into_iter().filter(|&p| p >= 5).collect(),
    };
    let mut failed = !mass_ok || !disc_ok;
    let mut pairings = Map::new();
    for p in primes {
        let (r, _) = resolve_r(cfg, n, p, |t| t)?;
        let ext = ExtLog::new(&ctx, LogMap::new(&ctx, p, r)?)?;
        let vs = verify_pairings(&ss, &ext)?;
        failed |= any_theorem_failure(&vs);
        pairings.insert(p.to_string(), json!({"r": r, "verdicts": verdicts_json(&vs)}));
    }
    m.insert("pairings".into(), Value::Object(pairings));
    m.insert("theorem_failure".into(), json!(failed));
    Ok(m)
}

fn conjectures(cfg: &RunConfig, item: Item) -> Fields {
    let ctx = FieldCtx::new(item.n)?;
    let ss = supersingular_set(&ctx)?;
    let verdicts = match item.p {
        Some(p) => {
            let r = if p >= 3 { resolve_r(cfg, item.n, p, |t| t)?.0 } else { 1 };
            conjecture_suite(&ss, p, r)?
        }
        None => {
            let mut v = power_propositions(&ss);
            v.push(square_conjecture(&ss));
            v
        }
    };
    let findings: Vec<&str> =
        verdicts.iter().filter(|v| v.backing == Backing::Conjecture && v.outcome == Outcome::Fail).map(|v| v.id).collect();
    let mut m = Map::new();
    m.insert("findings".into(), json!(findings));
    m.insert("theorem_failure".into(), json!(any_theorem_failure(&verdicts)));
    m.insert("verdicts".into(), verdicts_json(&verdicts));
    Ok(m)
}

/// Tally of verdict outcomes across a conjecture sweep.
pub fn conjecture_summary(records: &[Value]) -> Value {
    let mut tally: BTreeMap<String, [u64; 3]> = BTreeMap::new();
    let mut errors = 0;
    for rec in records {
        let Some(vs) = rec.get("verdicts").and_then(Value::as_array) else {
            errors += 1;
            continue;
        };
        for v in vs {
            let slot = match v["outcome"].as_str() {
                Some("pass") => 0,
                Some("fail") => 1,
                _ => 2,
            };
            tally.entry(v["id"].as_str().unwrap_or("?").to_string()).or_default()[slot] += 1;
        }
    }
    let tally: Map<String, Value> =
        tally.into_iter().map(|(k, [p, f, s])| (k, json!({"pass": p, "fail": f, "skipped": s}))).collect();
    json!({
        "schema": SCHEMA,
        "command": "conjectures",
        "summary": true,
        "items": records.len(),
        "errors": errors,
        "tally": tally,
    })
}

fn identities(item: Item) -> Fields {
    let p = require_p(item);
    let ctx = FieldCtx::new(item.n)?;
    let checks = identity_suite(&ctx, p)?;
    let mut failed = checks.iter().any(|c| !c.passed);
    let mut m = Map::new();
    m.insert(
        "checks".into(),
        Value::Array(
            checks.iter().map(|c| json!({"id": c.id, "modulus": c.modulus, "passed": c.passed, "detail": c.detail})).collect(),
        ),
    );
    if p == 2 && item.n % 8 == 1 {
        let rep = f02_element(&ctx)?;
        failed |= !rep.passed();
        m.insert(
            "f02".into(),
            json!({
                "passed": rep.passed(),
                "antisymmetry_failures": rep.antisymmetry_failures,
                "gauss_failures": rep.gauss_failures,
                "matches_m0": rep.matches_m0,
                "symbols": rep.checked,
            }),
        );
    }
    m.insert("theorem_failure".into(), json!(failed));
    Ok(m)
}
