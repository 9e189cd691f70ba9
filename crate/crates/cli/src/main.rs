//! `hv`: exact computations for the mirror and twisted Heisenberg-Virasoro
//! algebras from the command line.
//!
//! Stdout carries exactly one JSON document. Exit codes: 0 pass, 1 a
//! verification found a counterexample, 2 bad input or library error.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use hv_core::algebra::{bracket, parse_word, AlgebraKind, Generator};
use hv_core::doc::ModuleSpecDoc;
use hv_core::formulas::{formula_sweep, jacobi_sweep};
use hv_core::modules::{vec_from_json, vec_to_json, Actor, ModuleHandle, Vector};
use hv_core::pbw::{env_to_json, EnvElement, Monomial, Pbw};
use hv_core::probes::{
    annihilator, check_degree_lemma, dump_matrix, injectivity_probe, invariant, local_nilpotency_probe, Filter,
    Invariant, Lemma,
};
use hv_core::rational::{fmt_q, parse_q};
use hv_core::report::Report;
use hv_core::sugawara::{appendix_decomposition_check, verify_sugawara_relations, Op};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "hv", version, about = "Exact computations for Heisenberg-Virasoro algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two generators.
    Bracket {
        #[arg(long, default_value = "mirror")]
        algebra: AlgebraKind,
        #[arg(long, allow_hyphen_values = true)]
        x: Generator,
        #[arg(long, allow_hyphen_values = true)]
        y: Generator,
    },
    /// Normal form of a comma-separated word in the enveloping algebra.
    Normalize {
        #[arg(long, default_value = "mirror")]
        algebra: AlgebraKind,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Verification suites.
    #[command(subcommand)]
    Verify(Verify),
    /// Build modules and act on vectors.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Linear-algebra probes.
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Subcommand)]
enum Verify {
    /// Jacobi identity on all generator triples with |degree| <= range.
    Jacobi {
        #[arg(long)]
        algebra: Option<AlgebraKind>,
        #[arg(long)]
        range: i64,
    },
    /// The commutator expansions with products of length <= t.
    Formulas {
        #[arg(long)]
        range: i64,
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
    /// Sugawara relations on a module.
    Sugawara {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        range: i64,
        /// Overrides `z` (defaults to the `z` parameter, else the value of `c2`).
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// Checks that `d' = d - L` commutes with `h` and is Virasoro.
    Appendix {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        range: i64,
    },
}

#[derive(Args)]
struct SpecArg {
    /// Module spec JSON file.
    #[arg(long)]
    spec: PathBuf,
    /// Overrides the spec's truncation.
    #[arg(long)]
    truncation: Option<i64>,
}

impl SpecArg {
    fn load(&self) -> anyhow::Result<(ModuleSpecDoc, ModuleHandle)> {
        let text = std::fs::read_to_string(&self.spec).with_context(|| format!("reading {}", self.spec.display()))?;
        let mut doc = ModuleSpecDoc::from_json(&text)?;
        if self.truncation.is_some() {
            doc.truncation = self.truncation;
        }
        let m = doc.build()?;
        Ok((doc, m))
    }
}

#[derive(Args)]
struct VectorArg {
    /// Vector JSON, inline or `@file`.
    #[arg(long)]
    vector: Option<String>,
    /// Index into the truncated basis (as listed by `module build`).
    #[arg(long)]
    basis_index: Option<usize>,
}

impl VectorArg {
    fn load(&self, m: &ModuleHandle) -> anyhow::Result<Vector> {
        match (&self.vector, self.basis_index) {
            (Some(s), None) => {
                let text = match s.strip_prefix('@') {
                    Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
                    None => s.clone(),
                };
                let v: Value = serde_json::from_str(&text).context("vector JSON")?;
                Ok(vec_from_json(&v)?)
            }
            (None, Some(i)) => {
                let basis = m.basis()?;
                let b = basis.get(i).ok_or_else(|| anyhow!("basis index {i} out of range ({} vectors)", basis.len()))?;
                Ok(Vector::basis(b.clone()))
            }
            _ => bail!("give exactly one of --vector and --basis-index"),
        }
    }
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Builds a module and lists its truncated basis.
    Build {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Applies a word (rightmost letter first) to a vector.
    Act {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        vector: VectorArg,
        /// Skip the truncation and window checks on the result.
        #[arg(long)]
        lazy: bool,
    },
    /// One of n_S, m_S, r_S, n_M, r_M.
    Invariants {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        which: String,
        /// Scan indices in [-bound, bound].
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Matrix of an operator on the truncated basis.
    DumpMatrix {
        #[command(flatten)]
        spec: SpecArg,
        /// A generator, `L:n` or `dprime:n`.
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
}

#[derive(Subcommand)]
enum Probe {
    /// Degree-lowering check on `Ind` of the spec'd base module.
    Lemma {
        #[command(flatten)]
        spec: SpecArg,
        /// h-lower, d-lower, h-lower-prime or mixed.
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Kernel of an operator on the truncated module.
    Injective {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Least power of a generator killing a vector.
    Nilpotent {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        gen: Generator,
        #[command(flatten)]
        vector: VectorArg,
        #[arg(long, default_value_t = 10)]
        maxpow: u32,
    },
    /// Joint kernel of `heis:r`, `vir:r` or `dprime:r`.
    Annihilator {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        filter: String,
    },
}

enum Outcome {
    Pass(Value),
    Fail(Value),
}

fn report(r: Report) -> Outcome {
    let v = serde_json::to_value(&r).expect("serializable");
    if r.pass {
        Outcome::Pass(v)
    } else {
        Outcome::Fail(v)
    }
}

fn parse_op(s: &str) -> anyhow::Result<Op> {
    if let Some(n) = s.strip_prefix("L:") {
        return Ok(Op::Sug(n.parse().context("operator index")?));
    }
    if let Some(n) = s.strip_prefix("dprime:") {
        return Ok(Op::DPrime(n.parse().context("operator index")?));
    }
    Ok(Op::Gen(s.parse()?))
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Command::Bracket { algebra, x, y } => {
            let b = bracket(algebra, x, y)?;
            let terms: Vec<Value> = b.iter().map(|(g, c)| json!([g.to_string(), fmt_q(c)])).collect();
            Outcome::Pass(json!({ "result": terms }))
        }
        Command::Normalize { algebra, word } => {
            let w = parse_word(&word)?;
            let nf = Pbw::new(algebra).normal_form(&w)?;
            Outcome::Pass(json!({ "result": env_to_json(&nf) }))
        }
        Command::Verify(v) => match v {
            Verify::Jacobi { algebra, range } => {
                let kinds = match algebra {
                    Some(k) => vec![k],
                    None => vec![AlgebraKind::Mirror, AlgebraKind::Twisted],
                };
                let mut r = Report::new();
                for k in kinds {
                    r.merge(jacobi_sweep(k, range)?);
                }
                report(r)
            }
            Verify::Formulas { range, t } => report(formula_sweep(range, t)?),
            Verify::Sugawara { spec, range, z } => {
                let (doc, m) = spec.load()?;
                let z = match z {
                    Some(s) => Some(parse_q(&s)?),
                    None => doc.param("z")?,
                };
                report(verify_sugawara_relations(&m, range, z)?)
            }
            Verify::Appendix { spec, range } => {
                let (_, m) = spec.load()?;
                report(appendix_decomposition_check(&m, range)?)
            }
        },
        Command::Module(c) => match c {
            ModuleCmd::Build { spec } => {
                let (doc, m) = spec.load()?;
                let basis = match m.truncation() {
                    Some(_) => Some(m.basis()?),
                    None => None,
                };
                let centrals: serde_json::Map<String, Value> = m
                    .kind()
                    .centrals()
                    .iter()
                    .map(|g| (g.to_string(), json!(fmt_q(&m.central(*g)))))
                    .collect();
                Outcome::Pass(json!({
                    "algebra": doc.algebra,
                    "carrier": m.carrier().name(),
                    "truncation": m.truncation(),
                    "centrals": centrals,
                    "dimension": basis.as_ref().map(Vec::len),
                    "basis": basis,
                }))
            }
            ModuleCmd::Act { spec, word, vector, lazy } => {
                let (_, m) = spec.load()?;
                let v = vector.load(&m)?;
                let w = parse_word(&word)?;
                let x = EnvElement::basis(Monomial(w.into_iter().map(|g| (g, 1)).collect()));
                let out = if lazy { m.act_lazy(Actor::Env(&x), &v)? } else { m.act(Actor::Env(&x), &v)? };
                Outcome::Pass(json!({ "result": vec_to_json(&out) }))
            }
            ModuleCmd::Invariants { spec, which, bound } => {
                let (_, m) = spec.load()?;
                let which: Invariant = which.parse()?;
                Outcome::Pass(serde_json::to_value(invariant(&m, which, bound)?)?)
            }
            ModuleCmd::DumpMatrix { spec, op } => {
                let (_, m) = spec.load()?;
                Outcome::Pass(dump_matrix(&m, parse_op(&op)?)?)
            }
        },
        Command::Probe(p) => match p {
            Probe::Lemma { spec, which, samples, seed } => {
                let (_, m) = spec.load()?;
                let which: Lemma = which.parse()?;
                report(check_degree_lemma(which, &m, samples, seed)?)
            }
            Probe::Injective { spec, op } => {
                let (_, m) = spec.load()?;
                Outcome::Pass(serde_json::to_value(injectivity_probe(&m, parse_op(&op)?)?)?)
            }
            Probe::Nilpotent { spec, gen, vector, maxpow } => {
                let (_, m) = spec.load()?;
                let v = vector.load(&m)?;
                Outcome::Pass(serde_json::to_value(local_nilpotency_probe(&m, gen, &v, maxpow)?)?)
            }
            Probe::Annihilator { spec, filter } => {
                let (_, m) = spec.load()?;
                let f: Filter = filter.parse()?;
                let basis = annihilator(&m, f)?;
                Outcome::Pass(json!({
                    "dimension": basis.len(),
                    "basis": basis.iter().map(vec_to_json).collect::<Vec<_>>(),
                    "truncation": m.truncation(),
                }))
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (doc, status, code) = match run(cli.command) {
        Ok(Outcome::Pass(v)) => (v, "pass", 0),
        Ok(Outcome::Fail(v)) => (v, "fail", 1),
        Err(e) => {
            eprintln!("error: {e:#}");
            (json!({ "error": format!("{e:#}") }), "error", 2)
        }
    };
    // a closed pipe on stdout is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    eprintln!("status: {status} ({} ms)", start.elapsed().as_millis());
    ExitCode::from(code)
}
