use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weyl_core::algebra::{bracket, Element};
use weyl_core::cohomology::{
    lift_cocycle, normalized_check, p_functional, triviality_probe, BilinearForm, CocycleHandle,
    NormalizationSession, NormalizedForm, Truncation, DEFAULT_UNKNOWN_CAP,
};
use weyl_core::scalar::{self, Scalar};
use weyl_core::signature::DEFAULT_TAU_BOUND;
use weyl_core::{validate_signature, RawSignature, Signature, WeylError};
use weyl_cli::expr::{format_element, format_monomial, parse_expression, parse_monomial};
use weyl_cli::json::{element_json, monomial_json, probe_json, scalar_json, table_from_json};
use weyl_cli::selftest::{self, SelftestConfig};

#[derive(Parser)]
#[command(name = "weyl", version, about = "Exact computations in generalized Weyl superalgebras")]
struct Cli {
    /// Signature file (JSON with "ell", "generators" and optional "tau").
    #[arg(long, global = true)]
    sig: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Phi0,
    Phigamma,
    Lifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Phi0,
    Phigamma,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the signature and show the chosen tau.
    Validate,
    /// Bring an expression to canonical form.
    Eval { expr: String },
    /// Superbracket of two expressions.
    Bracket { u: String, v: String },
    /// Evaluate an explicit cocycle or its lift.
    Cocycle {
        kind: Kind,
        u: String,
        v: String,
        /// Group element for phigamma (comma-separated rationals).
        #[arg(long)]
        gamma: Option<String>,
        /// Base cocycle for `lifted`.
        #[arg(long, value_enum, default_value = "phi0")]
        base: Base,
    },
    /// The functional P on the odd factor.
    Pfunc { expr: String },
    /// Compute the normalizing function f on target monomials.
    Normalize {
        /// phi0 | phigamma:<vec> | lifted:phi0 | lifted:phigamma:<vec> | coboundary:<file> | zero
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        tau: Option<String>,
        /// File with one monomial per line ('#' starts a comment).
        #[arg(long)]
        targets: PathBuf,
        /// Also check the normalization conditions on the targets.
        #[arg(long)]
        check: bool,
    },
    /// Test whether a cocycle is a coboundary on a truncation.
    ProbeTrivial {
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
        alpha_range: String,
        #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
        k_range: String,
        #[arg(long, default_value_t = 1)]
        mu_max: i64,
        /// Keep Grassmann coordinates at zero.
        #[arg(long)]
        no_odd: bool,
        #[arg(long, default_value_t = DEFAULT_UNKNOWN_CAP)]
        cap: usize,
    },
    /// Run the seeded verification suites (all families unless --sig is given).
    Selftest {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

/// Raised when a self-test suite fails.
#[derive(Debug)]
struct VerificationFailed(usize);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} suite(s) failed", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

/// Usage problems that clap cannot see (missing files, missing --sig).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<WeylError>() {
        return match e {
            WeylError::Parse { .. } | WeylError::Index(_) => 2,
            WeylError::Signature(_) => 3,
            WeylError::Domain(_) | WeylError::TooLarge { .. } | WeylError::Internal(_) => 4,
        };
    }
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 5;
    }
    1
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())).into())
}

fn load_signature(path: Option<&Path>) -> Result<Signature> {
    let path = path.ok_or_else(|| Usage("this command needs --sig <file>".into()))?;
    let raw = RawSignature::from_json(&read(path)?)?;
    Ok(validate_signature(&raw, DEFAULT_TAU_BOUND)?)
}

/// Comma-separated rationals; a single entry is padded with zeros.
fn parse_vector(sig: &Signature, text: &str) -> Result<Vec<Scalar>> {
    let mut v = text
        .split(',')
        .map(|t| scalar::parse_scalar(t.trim()))
        .collect::<weyl_core::Result<Vec<_>>>()?;
    if v.len() == 1 && sig.len() > 1 {
        v.resize(sig.len(), Scalar::from_integer(0.into()));
    }
    if v.len() != sig.len() {
        return Err(WeylError::Index(format!("vector needs {} entries, got {}", sig.len(), v.len())).into());
    }
    Ok(v)
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Usage(format!("range {text:?} must look like a:b")))?;
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| Usage(format!("bad range bound {s:?}")));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        bail!(Usage(format!("empty range {text}")));
    }
    Ok((a, b))
}

fn cocycle_from_spec(sig: &Signature, spec: &str) -> Result<CocycleHandle> {
    if let Some(rest) = spec.strip_prefix("lifted:") {
        let base = cocycle_from_spec(sig, rest)?;
        return Ok(lift_cocycle(sig, &base)?);
    }
    if let Some(path) = spec.strip_prefix("coboundary:") {
        let value: Value = serde_json::from_str(&read(Path::new(path))?)
            .map_err(|e| WeylError::Parse { pos: e.column(), msg: format!("{path}: {e}") })?;
        return Ok(CocycleHandle::coboundary(sig, table_from_json(sig, &value)?)?);
    }
    if let Some(vec) = spec.strip_prefix("phigamma:") {
        return Ok(CocycleHandle::phi_gamma(sig, parse_vector(sig, vec)?)?);
    }
    match spec {
        "phi0" => Ok(CocycleHandle::phi0(sig)?),
        "phigamma" => Ok(CocycleHandle::phi_gamma(sig, vec![Scalar::from_integer(0.into()); sig.len()])?),
        "zero" => Ok(CocycleHandle::zero(sig)),
        other => bail!(Usage(format!("unknown cocycle spec {other:?}"))),
    }
}

fn print_value(as_json: bool, value: &Scalar) {
    if as_json {
        println!("{}", json!({ "value": scalar_json(value) }));
    } else {
        println!("{}", scalar::format_scalar(value));
    }
}

fn print_element(as_json: bool, sig: &Signature, e: &Element) {
    if as_json {
        println!("{}", element_json(e));
    } else {
        println!("{}", format_element(sig, e));
    }
}

fn run(cli: Cli) -> Result<()> {
    let sig_path = cli.sig.as_deref();
    let as_json = cli.json;
    match cli.command {
        Command::Validate => {
            let sig = load_signature(sig_path)?;
            if as_json {
                println!("{}", sig.to_json());
            } else {
                let ell = sig.ell();
                let tau: Vec<String> = sig.tau().iter().map(scalar::format_scalar).collect();
                println!("ok: ell = {ell:?}, l = {}, tau = [{}]", sig.len(), tau.join(","));
            }
        }
        Command::Eval { expr } => {
            let sig = load_signature(sig_path)?;
            print_element(as_json, &sig, &parse_expression(&sig, &expr)?);
        }
        Command::Bracket { u, v } => {
            let sig = load_signature(sig_path)?;
            let (u, v) = (parse_expression(&sig, &u)?, parse_expression(&sig, &v)?);
            print_element(as_json, &sig, &bracket(&sig, &u, &v)?);
        }
        Command::Cocycle { kind, u, v, gamma, base } => {
            let sig = load_signature(sig_path)?;
            let gamma_handle = |sig: &Signature| -> Result<CocycleHandle> {
                let g = match &gamma {
                    Some(text) => parse_vector(sig, text)?,
                    None => vec![Scalar::from_integer(0.into()); sig.len()],
                };
                Ok(CocycleHandle::phi_gamma(sig, g)?)
            };
            let handle = match kind {
                Kind::Phi0 => CocycleHandle::phi0(&sig)?,
                Kind::Phigamma => gamma_handle(&sig)?,
                Kind::Lifted => {
                    let b = match base {
                        Base::Phi0 => CocycleHandle::phi0(&sig)?,
                        Base::Phigamma => gamma_handle(&sig)?,
                    };
                    lift_cocycle(&sig, &b)?
                }
            };
            let (u, v) = (parse_expression(&sig, &u)?, parse_expression(&sig, &v)?);
            print_value(as_json, &handle.eval(&u, &v)?);
        }
        Command::Pfunc { expr } => {
            let sig = load_signature(sig_path)?;
            print_value(as_json, &p_functional(&sig, &parse_expression(&sig, &expr)?)?);
        }
        Command::Normalize { cocycle, tau, targets, check } => {
            let sig = load_signature(sig_path)?;
            let psi = cocycle_from_spec(&sig, &cocycle)?;
            let tau = tau.map(|t| parse_vector(&sig, &t)).transpose()?;
            let text = read(&targets)?;
            let monomials = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(|l| parse_monomial(&sig, l))
                .collect::<weyl_core::Result<Vec<_>>>()?;
            let mut session = NormalizationSession::new(&psi, tau)?;
            let mut values = Vec::new();
            for m in &monomials {
                values.push(session.normalize_f(m)?);
            }
            let violations = if check {
                let phi = NormalizedForm::new(session);
                Some(normalized_check(&phi, &monomials)?)
            } else {
                None
            };
            if as_json {
                let rows: Vec<Value> = monomials
                    .iter()
                    .zip(&values)
                    .map(|(m, v)| json!({ "monomial": monomial_json(m), "f": scalar_json(v) }))
                    .collect();
                let mut out = json!({ "values": rows });
                if let Some(vs) = &violations {
                    out["violations"] = vs
                        .iter()
                        .map(|v| json!({ "probe": monomial_json(&v.probe), "sample": monomial_json(&v.sample), "value": scalar_json(&v.value) }))
                        .collect();
                }
                println!("{out}");
            } else {
                for (m, v) in monomials.iter().zip(&values) {
                    let name = format_monomial(&sig, m);
                    let name = if name.is_empty() { "1".to_string() } else { name };
                    println!("f({name}) = {}", scalar::format_scalar(v));
                }
                if let Some(vs) = &violations {
                    println!("{} violations", vs.len());
                    for v in vs {
                        println!(
                            "  phi({}, {}) = {}",
                            format_monomial(&sig, &v.probe),
                            format_element(&sig, &Element::from(v.sample.clone())),
                            scalar::format_scalar(&v.value)
                        );
                    }
                }
            }
        }
        Command::ProbeTrivial { cocycle, alpha_range, k_range, mu_max, no_odd, cap } => {
            let sig = load_signature(sig_path)?;
            let psi = cocycle_from_spec(&sig, &cocycle)?;
            let trunc = Truncation {
                alpha_range: parse_range(&alpha_range)?,
                k_range: parse_range(&k_range)?,
                mu_max,
                include_odd: !no_odd,
                cap,
            };
            let probe = triviality_probe(&psi, &trunc)?;
            if as_json {
                println!("{}", probe_json(&sig, &probe));
            } else if let Some(table) = probe.solution() {
                println!(
                    "consistent: {} rows, {} unknowns, {} nonzero solution entries",
                    probe.rows.len(),
                    probe.unknowns.len(),
                    table.len()
                );
            } else {
                let witness = probe.witness();
                println!(
                    "inconsistent: {} rows, {} unknowns, witness of {} rows",
                    probe.rows.len(),
                    probe.unknowns.len(),
                    witness.len()
                );
                for row in witness {
                    println!(
                        "  ({}, {}): f({}) = {}",
                        format_monomial(&sig, &row.u),
                        format_monomial(&sig, &row.v),
                        format_element(&sig, &row.bracket),
                        scalar::format_scalar(&row.rhs)
                    );
                }
            }
        }
        Command::Selftest { samples, seed } => {
            let cfg = SelftestConfig { seed, samples };
            let results = match sig_path {
                Some(_) => selftest::run_family(&load_signature(sig_path)?, &cfg),
                None => selftest::run_all(&cfg)?,
            };
            let failed = results.iter().filter(|r| !r.passed()).count();
            if as_json {
                let suites: Vec<Value> = results
                    .iter()
                    .map(|r| {
                        json!({
                            "family": r.family,
                            "name": r.name,
                            "checked": r.checked,
                            "nontrivial": r.nontrivial,
                            "failures": r.failures,
                        })
                    })
                    .collect();
                println!("{}", json!({ "passed": failed == 0, "suites": suites }));
            } else {
                for r in &results {
                    println!("{r}");
                }
                println!("{} suites, {failed} failed", results.len());
            }
            if failed > 0 {
                return Err(anyhow!(VerificationFailed(failed)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
