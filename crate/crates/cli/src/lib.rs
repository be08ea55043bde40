//! Command runner behind the `sympow` binary: ideal files in, canonical JSON
//! reports out.
//!
//! Reports are `serde_json` values whose objects keep their keys sorted, and
//! every rational is a `"p/q"` string, so equal inputs give identical bytes.

pub mod document;

use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use sympow_core::closure::{b_of, closure_power, rees_generation_degree};
use sympow_core::decompose::decompose;
use sympow_core::rational::render;
use sympow_core::resurgence::{
    asymptotic_resurgence, chudnovsky_type_bound, expected_resurgence_certificate, gamma_bound,
    lambda_brackets, resurgence, rho_hat_from_containment, strict_bound, Status,
};
use sympow_core::{
    Error, Limits, Monomial, MonomialIdeal, PrimeSupport, Result, SymbolicMode, Workspace,
};

pub use document::IdealDocument;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Resurgence,
    Asymptotic,
    Waldschmidt,
    Containment { s: u32, r: u32 },
    Closure { r: u32 },
    Symbolic { s: u32 },
    B,
    ReesDegree,
    Lambda { rs: Vec<u32> },
    Gamma { n: u32 },
    CertifyExpected,
    StrictBound { s: u32, r: u32 },
    RhoHatBound { s: u32, r: u32 },
    Chudnovsky { s: u32, r: u32, c: u32 },
    Decompose,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Resurgence => "resurgence",
            Command::Asymptotic => "asymptotic",
            Command::Waldschmidt => "waldschmidt",
            Command::Containment { .. } => "containment",
            Command::Closure { .. } => "closure",
            Command::Symbolic { .. } => "symbolic",
            Command::B => "b",
            Command::ReesDegree => "rees-degree",
            Command::Lambda { .. } => "lambda",
            Command::Gamma { .. } => "gamma",
            Command::CertifyExpected => "certify-expected",
            Command::StrictBound { .. } => "strict-bound",
            Command::RhoHatBound { .. } => "rho-hat-bound",
            Command::Chudnovsky { .. } => "chudnovsky",
            Command::Decompose => "decompose",
        }
    }

    fn arguments(&self) -> Value {
        match self {
            Command::Containment { s, r }
            | Command::StrictBound { s, r }
            | Command::RhoHatBound { s, r } => json!({ "s": s, "r": r }),
            Command::Closure { r } => json!({ "r": r }),
            Command::Symbolic { s } => json!({ "s": s }),
            Command::Lambda { rs } => json!({ "r": rs }),
            Command::Gamma { n } => json!({ "n": n }),
            Command::Chudnovsky { s, r, c } => json!({ "s": s, "r": r, "c": c }),
            _ => json!({}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub search_cap: u32,
    pub rees_cap: Option<u32>,
    pub mode: Option<SymbolicMode>,
    pub timing: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            search_cap: sympow_core::resurgence::DEFAULT_SEARCH_CAP,
            rees_cap: None,
            mode: None,
            timing: false,
            cache_dir: None,
        }
    }
}

/// A finished report and the process exit code it calls for.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

impl Outcome {
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
        s.push('\n');
        s
    }
}

struct Names<'a>(&'a [String]);

impl Names<'_> {
    fn mono(&self, m: &Monomial) -> String {
        m.render(self.0)
    }

    fn opt(&self, m: &Option<Monomial>) -> Value {
        m.as_ref()
            .map_or(Value::Null, |m| Value::String(self.mono(m)))
    }

    fn ideal(&self, i: &MonomialIdeal) -> Vec<String> {
        i.gens().iter().map(|g| self.mono(g)).collect()
    }

    fn prime(&self, p: &PrimeSupport) -> String {
        p.render(self.0)
    }
}

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("result serializes")
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Exact => "exact",
        Status::Interval => "interval",
        Status::Capped => "capped",
    }
}

fn mode_name(m: SymbolicMode) -> Value {
    value(&m)
}

/// Computes the `result` and `status` fields.
fn compute(cmd: &Command, doc: &IdealDocument, flags: &Flags) -> Result<(Value, &'static str)> {
    let names = Names(&doc.vars);
    let limits = Limits {
        rees_cap: flags.rees_cap,
        ..Limits::default()
    };
    let ws = Workspace::with_limits(limits);
    let i = doc.ideal()?;
    let scheme = || doc.scheme(flags.mode);
    Ok(match cmd {
        Command::Resurgence => {
            let r = resurgence(&scheme()?, &ws, flags.search_cap)?;
            let status = status_name(r.status);
            (value(&r), status)
        }
        Command::Asymptotic => {
            let a = asymptotic_resurgence(&scheme()?, &ws)?;
            let profiles: Vec<Value> = a
                .profiles
                .iter()
                .map(|p| {
                    json!({
                        "weight": p.weight.normal,
                        "nu_i": p.nu_i,
                        "nu_hat": render(&p.nu_hat),
                        "nu_hat_exact": p.nu_hat_exact,
                        "ratio": render(&p.ratio),
                        "center": names.prime(&p.center),
                        "center_is_minimal": p.center_is_minimal,
                    })
                })
                .collect();
            let status = if a.exact { "exact" } else { "interval" };
            (
                json!({
                    "rho_hat": render(&a.rho_hat),
                    "exact": a.exact,
                    "upper": render(&a.upper),
                    "valuations": profiles,
                }),
                status,
            )
        }
        Command::Waldschmidt => {
            let s = scheme()?;
            let w = s.waldschmidt(&ws)?;
            let status = if w.exact { "exact" } else { "interval" };
            (
                json!({
                    "waldschmidt": render(&w.value),
                    "exact": w.exact,
                    "method": value(&w.method),
                    "upto": w.upto,
                }),
                status,
            )
        }
        Command::Containment { s, r } => {
            let c = scheme()?.containment_in_power(*s, &i, *r, &ws)?;
            (
                json!({ "holds": c.holds, "witness": names.opt(&c.witness) }),
                "exact",
            )
        }
        Command::Closure { r } => {
            let p = closure_power(&i, *r, &limits)?;
            (
                json!({ "generators": names.ideal(&p), "count": p.len() }),
                "exact",
            )
        }
        Command::Symbolic { s } => {
            let p = scheme()?.power(*s, &ws)?;
            (
                json!({ "generators": names.ideal(&p), "count": p.len() }),
                "exact",
            )
        }
        Command::B => {
            let b = b_of(&i, &limits)?;
            let status = if b.b_verified {
                "exact"
            } else {
                "unverified-cap"
            };
            (value(&b), status)
        }
        Command::ReesDegree => {
            let d = rees_generation_degree(&i, &limits)?;
            let status = if d.verified {
                "exact"
            } else {
                "unverified-cap"
            };
            (value(&d), status)
        }
        Command::Lambda { rs } => {
            let l = lambda_brackets(&scheme()?, rs, &ws)?;
            (value(&l), "exact")
        }
        Command::Gamma { n } => (value(&gamma_bound(&scheme()?, *n, &ws)?), "exact"),
        Command::CertifyExpected => {
            let c = expected_resurgence_certificate(&scheme()?, flags.search_cap, &ws)?;
            if !c.expected_resurgence {
                return Err(Error::HypothesisFailed {
                    reason: format!(
                        "no r <= {} with I^(rh-h) in the closure of I^r",
                        flags.search_cap
                    ),
                    witness: None,
                });
            }
            (value(&c), "exact")
        }
        Command::StrictBound { s, r } => {
            let b = strict_bound(&scheme()?, *s, *r, &ws)?;
            (
                json!({
                    "j": names.ideal(&b.j),
                    "shortcut_rho_hat_one": b.shortcut_rho_hat_one,
                    "bound": b.bound.as_ref().map(value),
                    "certifies_expected": b.certifies_expected,
                }),
                "exact",
            )
        }
        Command::RhoHatBound { s, r } => (
            value(&rho_hat_from_containment(&scheme()?, *s, *r, &ws)?),
            "exact",
        ),
        Command::Chudnovsky { s, r, c } => {
            let rep = chudnovsky_type_bound(&scheme()?, *s, *r, *c, &ws)?;
            let lines: Vec<Value> = rep
                .lines
                .iter()
                .map(|l| {
                    json!({
                        "weight": l.weight.normal,
                        "nu_i": l.nu_i,
                        "nu_j": l.nu_j,
                        "implied_lower": render(&l.implied_lower),
                        "nu_hat": render(&l.nu_hat),
                        "consistent": l.consistent,
                    })
                })
                .collect();
            (
                json!({
                    "h": rep.h,
                    "j": names.ideal(&rep.j),
                    "valuations": lines,
                    "caveats": rep.caveats,
                }),
                "exact",
            )
        }
        Command::Decompose => {
            let d = decompose(&i)?;
            let primes = |ps: &[PrimeSupport]| -> Vec<String> {
                ps.iter().map(|p| names.prime(p)).collect()
            };
            (
                json!({
                    "minimal_primes": primes(&d.minimal_primes),
                    "associated_primes": primes(&d.associated_primes),
                    "irreducible_components": d
                        .irreducible_components
                        .iter()
                        .map(|c| names.ideal(c))
                        .collect::<Vec<_>>(),
                    "big_height": d.big_height,
                }),
                "exact",
            )
        }
    })
}

fn cache_key(cmd: &Command, doc: &IdealDocument, flags: &Flags) -> String {
    let mode = flags.mode.map(mode_name).unwrap_or(Value::Null);
    let material = json!({
        "command": cmd.name(),
        "arguments": cmd.arguments(),
        "ideal": doc.to_json(),
        "search_cap": flags.search_cap,
        "rees_cap": flags.rees_cap,
        "mode": mode,
    });
    Sha256::digest(material.to_string().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn cached(cmd: &Command, doc: &IdealDocument, flags: &Flags) -> Option<(PathBuf, Option<Value>)> {
    let dir = flags.cache_dir.as_ref()?;
    let path = dir.join(format!("{}.json", cache_key(cmd, doc, flags)));
    let hit = std::fs::read_to_string(&path)
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok());
    Some((path, hit))
}

/// Runs one command. Errors other than failed hypotheses and exhausted caps
/// are returned as `Err` (exit code 1).
pub fn run(cmd: &Command, doc: &IdealDocument, flags: &Flags) -> Result<Outcome> {
    let start = Instant::now();
    let names = Names(&doc.vars);
    let cache = cached(cmd, doc, flags);
    let (body, exit_code) = match cache.as_ref().and_then(|(_, hit)| hit.clone()) {
        Some(hit) => {
            let code = hit.get("exit_code").and_then(Value::as_i64).unwrap_or(0) as i32;
            (hit, code)
        }
        None => {
            let (body, code) = match compute(cmd, doc, flags) {
                Ok((result, status)) => (json!({ "result": result, "status": status }), 0),
                Err(Error::HypothesisFailed { reason, witness }) => (
                    json!({
                        "result": { "reason": reason, "witness": names.opt(&witness) },
                        "status": "hypothesis-failed",
                    }),
                    2,
                ),
                Err(e @ Error::ResourceExceeded { .. }) => (
                    json!({ "result": { "reason": e.to_string() }, "status": "capped" }),
                    0,
                ),
                Err(e) => return Err(e),
            };
            let mut body = body;
            body["exit_code"] = json!(code);
            if let Some((path, _)) = &cache {
                if let Some(dir) = path.parent() {
                    let _ = std::fs::create_dir_all(dir);
                }
                let _ = std::fs::write(path, body.to_string());
            }
            (body, code)
        }
    };
    let mut report = json!({
        "command": cmd.name(),
        "arguments": cmd.arguments(),
        "input": {
            "vars": doc.vars,
            "gens": doc.gens.iter().map(|g| names.mono(&Monomial::new(g.clone()))).collect::<Vec<_>>(),
            "mode": flags.mode.map(mode_name).unwrap_or(Value::Null),
            "search_cap": flags.search_cap,
        },
        "result": body["result"].clone(),
        "status": body["status"].clone(),
    });
    if flags.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(Outcome { report, exit_code })
}
