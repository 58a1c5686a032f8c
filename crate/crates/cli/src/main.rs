use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use rhosplit::blanchfield::enumerate_self_annihilating;
use rhosplit::lambda_module::direct_sum;
use rhosplit::literal::{self, CombinationLiteral, FormQuery, KnotLiteral, SplitScenario};
use rhosplit::obstruction::{family_independence, independence_certificate, CompanionTable, Verdict};
use rhosplit::scalar::format_rational;
use rhosplit::seifert::{
    alexander_polynomial, arf_invariant, rho_integral_with_precision, signature_function_with_precision,
    SeifertMatrix,
};
use rhosplit::splitting::split_submodule;

#[derive(Parser, Debug)]
#[command(name = "rhosplit", version, about = "Exact Blanchfield-form and signature computations for knot concordance")]
struct Cli {
    /// Enclosure width exponent: intervals are refined to width 2^-precision
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Emit indented JSON
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial det(tV - V^T)
    Alex { knot: String },
    /// Arf invariant
    Arf { knot: String },
    /// Levine-Tristram signature function on the upper half circle
    Signature { knot: String },
    /// Integral of the signature function over the circle
    Rho { knot: String },
    /// Self-annihilation check or enumeration for a Blanchfield form
    Blanchfield { input: String },
    /// Split P inside M1 + M2 along coprime annihilators
    Split { input: String },
    /// Linear independence certificate for a combination of satellites
    Certify {
        input: String,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Companions are formal symbols and may share k
        #[arg(long)]
        family: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expect {
    Obstructed,
    Vanishes,
    NotApplicable,
}

impl Expect {
    fn matches(self, v: Verdict) -> bool {
        matches!(
            (self, v),
            (Expect::Obstructed, Verdict::Obstructed)
                | (Expect::Vanishes, Verdict::Vanishes)
                | (Expect::NotApplicable, Verdict::NotApplicable)
        )
    }
}

// Inline JSON, `-` for stdin, or a file path.
fn read_input(arg: &str) -> anyhow::Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))
}

fn knot(arg: &str) -> anyhow::Result<(String, SeifertMatrix)> {
    if let Some(m) = SeifertMatrix::preset(arg) {
        return Ok((arg.to_string(), m));
    }
    let text = read_input(arg)?;
    let lit: KnotLiteral = literal::from_json(&text)?;
    Ok(lit.resolve()?)
}

struct Out {
    json: bool,
    pretty: bool,
}

impl Out {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<()> {
        let body = if self.pretty {
            serde_json::to_string_pretty(value)?
        } else if self.json {
            serde_json::to_string(value)?
        } else {
            text()
        };
        match writeln!(std::io::stdout().lock(), "{body}") {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => Ok(r?),
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let out = Out {
        json: cli.json,
        pretty: cli.pretty,
    };
    match cli.command {
        Command::Alex { knot: k } => {
            let (name, v) = knot(&k)?;
            let delta = alexander_polynomial(&v);
            out.emit(&json!({"knot": name, "alexander": delta}), || format!("Δ = {delta}"))?;
        }
        Command::Arf { knot: k } => {
            let (name, v) = knot(&k)?;
            let arf = arf_invariant(&v);
            out.emit(&json!({"knot": name, "arf": arf}), || format!("Arf = {arf}"))?;
        }
        Command::Signature { knot: k } => {
            let (name, v) = knot(&k)?;
            let sf = signature_function_with_precision(&v, cli.precision);
            out.emit(&json!({"knot": name, "signature": sf}), || {
                let mut lines = Vec::new();
                let vals = sf.upper_values();
                for (i, j) in sf.jump_angles.iter().take(sf.upper_jump_count()).enumerate() {
                    let at = match &j.exact_turn {
                        Some(x) => format!("θ/2π = {}", format_rational(x)),
                        None => format!(
                            "θ/2π ∈ [{}, {}]",
                            format_rational(&j.turn.0),
                            format_rational(&j.turn.1)
                        ),
                    };
                    lines.push(format!("σ = {} before jump at {at}", vals[i]));
                }
                lines.push(format!("σ = {} up to θ = π", vals[sf.upper_jump_count()]));
                lines.join("\n")
            })?;
        }
        Command::Rho { knot: k } => {
            let (name, v) = knot(&k)?;
            let r = rho_integral_with_precision(&v, cli.precision);
            out.emit(&json!({"knot": name, "rho": r}), || match &r.exact {
                Some(x) => format!("ρ = {}", format_rational(x)),
                None => format!(
                    "ρ ∈ [{}, {}]",
                    format_rational(&r.enclosure.lo),
                    format_rational(&r.enclosure.hi)
                ),
            })?;
        }
        Command::Blanchfield { input } => {
            let q: FormQuery = literal::from_json(&read_input(&input)?)?;
            let form = q.form.build()?;
            match q.submodule {
                Some(gens) => {
                    let p = literal::submodule(form.module(), &gens)?;
                    let rep = form.is_self_annihilating(&p)?;
                    let ok = rep.is_self_annihilating;
                    out.emit(&rep, || {
                        format!(
                            "isotropic: {}\ncoisotropic: {}\nself-annihilating: {ok}",
                            rep.isotropic, rep.coisotropic
                        )
                    })?;
                }
                None => {
                    let e = enumerate_self_annihilating(&form)?;
                    out.emit(&e, || {
                        format!(
                            "{} explicit self-annihilating submodules, {} families",
                            e.candidates.len(),
                            e.families.len()
                        )
                    })?;
                }
            }
        }
        Command::Split { input } => {
            let s: SplitScenario = literal::from_json(&read_input(&input)?)?;
            let b1 = s.m1.build()?;
            let b2 = s.m2.build()?;
            let sum = direct_sum(b1.module(), b2.module());
            let p = literal::submodule(&sum.module, &s.p)?;
            let r = split_submodule(&b1, &b2, &p)?;
            let ok = r.checks.all_passed();
            out.emit(&r, || {
                format!(
                    "P1: {} generators\nP2: {} generators\ndecomposition verified: {}\ntransfer: {:?}",
                    r.p1.generators.len(),
                    r.p2.generators.len(),
                    r.checks.decomposition_verified(),
                    r.checks.transfer
                )
            })?;
            return Ok(ok);
        }
        Command::Certify { input, expect, family } => {
            let lit: CombinationLiteral = literal::from_json(&read_input(&input)?)?;
            let l = lit.build()?;
            let table = CompanionTable::for_combination(&l, cli.precision);
            let rep = if family {
                family_independence(&l, &table)?
            } else {
                independence_certificate(&l, &table)?
            };
            out.emit(&rep, || {
                let mut lines = vec![format!("verdict: {}", rep.verdict)];
                if let Some(r) = &rep.reason {
                    lines.push(format!("reason: {r}"));
                }
                if let Some(w) = &rep.witness {
                    lines.push(format!("witness: K_{} with ρ = {}", w.k, w.rho));
                }
                lines.extend(rep.trace.iter().map(|t| format!("  {t}")));
                lines.extend(rep.assumptions.iter().map(|a| format!("assumes: {a}")));
                lines.join("\n")
            })?;
            if let Some(e) = expect {
                return Ok(e.matches(rep.verdict));
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json || cli.pretty;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if json {
                println!("{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
