//! `fbc`: command-line front end for the free-by-cyclic deciders.
//!
//! Every command prints one JSON object on standard output. Exit codes:
//! 0 yes (or a plain computation), 1 no, 2 unknown, 3 error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use fbc::fixed_points::{classify_with, fix_solve, periodic_subgroup};
use fbc::orbit::{orbit_decide, power_orbit_decide};
use fbc::twisted::{twisted_decide, twisted_verify, z_extension_graph};
use fbc::words::parse_word;
use fbc::{
    AutomorphismSpec, ConjVerdict, CoreGraph, FbcPresentation, FreeAutomorphism, GroupElement, Limits, OrbitVerdict,
    PowerConjVerdict, PowerOrbitVerdict, PresentationSpec, SubgroupBasis, TwistedVerdict, Word,
};

#[derive(Parser, Debug)]
#[command(name = "fbc", version, about = "Conjugacy, twisted conjugacy and power conjugacy in free-by-cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    budgets: Budgets,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form t^r u of a word in the generators and t/T.
    Normalize {
        /// Presentation JSON file.
        #[arg(long)]
        group: PathBuf,
        word: String,
    },
    /// Product of two group words.
    Mul {
        /// Presentation JSON file.
        #[arg(long)]
        group: PathBuf,
        x: String,
        y: String,
    },
    /// Conjugacy of two group elements.
    Conj {
        /// Presentation JSON file.
        #[arg(long)]
        group: PathBuf,
        x: String,
        y: String,
    },
    /// Power conjugacy: x^p conjugate to y^q for some non-zero p, q.
    PowerConj {
        /// Presentation JSON file.
        #[arg(long)]
        group: PathBuf,
        x: String,
        y: String,
    },
    /// Twisted conjugacy (gφ)⁻¹ u g = v in the free group.
    TwistedConj {
        /// Automorphism JSON file.
        #[arg(long)]
        phi: PathBuf,
        u: String,
        v: String,
        /// Write the core graph of the searched fixed subgroup as DOT.
        #[arg(long, value_name = "PATH")]
        emit_graph: Option<PathBuf>,
    },
    /// Some k with uφ^k conjugate to v.
    OrbitConj {
        /// Automorphism JSON file.
        #[arg(long)]
        phi: PathBuf,
        u: String,
        v: String,
    },
    /// Some p, q, k with u^p φ^k conjugate to v^q.
    PowerOrbit {
        /// Automorphism JSON file.
        #[arg(long)]
        phi: PathBuf,
        u: String,
        v: String,
    },
    /// Basis of the fixed subgroup.
    Fix {
        /// Automorphism JSON file.
        #[arg(long)]
        phi: PathBuf,
        /// Write the core graph of the subgroup as DOT.
        #[arg(long, value_name = "PATH")]
        emit_graph: Option<PathBuf>,
    },
    /// Basis of the periodic subgroup.
    Per {
        /// Automorphism JSON file.
        #[arg(long)]
        phi: PathBuf,
        /// Write the core graph of the subgroup as DOT.
        #[arg(long, value_name = "PATH")]
        emit_graph: Option<PathBuf>,
    },
}

/// Search budgets; the defaults are those of `Limits::default()`.
#[derive(Args, Debug)]
struct Budgets {
    /// Length bound L of the fixed subgroup search.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    fix_len: u64,
    /// Length bound of the brute-force twisted conjugator search.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    twisted_len: u64,
    /// Radius K of the orbit scan.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    radius: u32,
    /// P_max of the power-twisted fallback scan.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    p_max: u32,
    /// Longest intermediate word.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    word_cap: u64,
    /// Largest divisor of p₀ tried for periodic powers.
    #[arg(long, global = true, default_value_t = 5040, value_parser = clap::value_parser!(u64).range(1..))]
    divisor_budget: u64,
    /// Largest order tested when classifying.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..))]
    finite_order_max: u32,
    /// Length bound for enumerating periodic words.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    periodic_len: u64,
}

impl Budgets {
    fn limits(&self) -> Limits {
        Limits {
            word_cap: self.word_cap as usize,
            fix_search_len: self.fix_len as usize,
            twisted_search_len: self.twisted_len as usize,
            orbit_radius: self.radius,
            power_scan_max: self.p_max,
            divisor_budget: self.divisor_budget,
            finite_order_max: self.finite_order_max,
            periodic_search_len: self.periodic_len as usize,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Outcome {
    Yes,
    No,
    Unknown,
}

impl Outcome {
    fn name(self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Unknown => "unknown",
        }
    }

    fn code(self) -> u8 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Unknown => 2,
        }
    }
}

/// A verdict under construction; `finish` adds the common fields.
struct Report {
    command: &'static str,
    outcome: Outcome,
    fields: Map<String, Value>,
}

impl Report {
    fn new(command: &'static str, outcome: Outcome) -> Report {
        Report { command, outcome, fields: Map::new() }
    }

    fn with(mut self, key: &str, value: Value) -> Report {
        self.fields.insert(key.to_string(), value);
        self
    }

    fn unknown(command: &'static str, reason: String, limits: &Limits) -> Report {
        Report::new(command, Outcome::Unknown)
            .with("reason", json!(reason))
            .with("budget", serde_json::to_value(limits).expect("limits serialize"))
    }

    /// `verified` must be true on every Yes; a failed re-check is an error.
    fn finish(self, verified: bool) -> Result<(Value, u8)> {
        if self.outcome == Outcome::Yes && !verified {
            bail!("{}: certificate failed re-verification", self.command);
        }
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("outcome".into(), json!(self.outcome.name()));
        out.extend(self.fields);
        out.insert("verified".into(), json!(verified && self.outcome == Outcome::Yes));
        Ok((Value::Object(out), self.outcome.code()))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_group(path: &Path) -> Result<FbcPresentation> {
    let spec: PresentationSpec = read_json(path)?;
    Ok(FbcPresentation::from_spec(&spec)?)
}

fn load_phi(path: &Path) -> Result<FreeAutomorphism> {
    let spec: AutomorphismSpec = read_json(path)?;
    Ok(FreeAutomorphism::from_spec(&spec)?)
}

fn free_word(phi: &FreeAutomorphism, text: &str) -> Result<Word> {
    let w = parse_word(text).with_context(|| format!("word {text:?}"))?;
    w.check_alphabet(&phi.alphabet())?;
    Ok(w)
}

fn group_word(g: &FbcPresentation, text: &str) -> Result<GroupElement> {
    g.normalize(text).with_context(|| format!("word {text:?}"))
}

fn element_json(x: &GroupElement) -> Value {
    json!({ "element": x.to_string(), "r": x.r, "u": x.u.to_string() })
}

fn write_graph(path: Option<&Path>, graph: &CoreGraph) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, graph.to_dot()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn basis_json(basis: &SubgroupBasis) -> Value {
    json!({
        "generators": basis.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "exactness": basis.exactness,
    })
}

fn run(cli: &Cli) -> Result<(Value, u8)> {
    let limits = cli.budgets.limits();
    match &cli.command {
        Command::Normalize { group, word } => {
            let g = load_group(group)?;
            let x = group_word(&g, word)?;
            let mut v = element_json(&x);
            v["command"] = json!("normalize");
            Ok((v, 0))
        }
        Command::Mul { group, x, y } => {
            let g = load_group(group)?;
            let (x, y) = (group_word(&g, x)?, group_word(&g, y)?);
            let mut v = element_json(&g.multiply(&x, &y)?);
            v["command"] = json!("mul");
            Ok((v, 0))
        }
        Command::Conj { group, x, y } => {
            let g = load_group(group)?;
            let (x, y) = (group_word(&g, x)?, group_word(&g, y)?);
            match g.conjugacy_decide(&x, &y, &limits)? {
                ConjVerdict::Yes { conjugator } => {
                    let verified = g.conjugate(&x, &conjugator)? == y;
                    Report::new("conj", Outcome::Yes)
                        .with("certificate", json!(conjugator.to_string()))
                        .finish(verified)
                }
                ConjVerdict::No => Report::new("conj", Outcome::No).finish(false),
                ConjVerdict::Unknown { reason } => Report::unknown("conj", reason, &limits).finish(false),
            }
        }
        Command::PowerConj { group, x, y } => {
            let g = load_group(group)?;
            let (x, y) = (group_word(&g, x)?, group_word(&g, y)?);
            match g.power_conjugacy_decide(&x, &y, &limits)? {
                PowerConjVerdict::Yes { p, q, conjugator } => {
                    let lhs = g.conjugate(&g.power(&x, p)?, &conjugator)?;
                    let rhs = g.power(&y, q)?;
                    Report::new("power-conj", Outcome::Yes)
                        .with("certificate", json!(conjugator.to_string()))
                        .with("p", json!(p))
                        .with("q", json!(q))
                        .finish(lhs == rhs && !rhs.is_identity())
                }
                PowerConjVerdict::No => Report::new("power-conj", Outcome::No).finish(false),
                PowerConjVerdict::Unknown { reason } => Report::unknown("power-conj", reason, &limits).finish(false),
            }
        }
        Command::TwistedConj { phi, u, v, emit_graph } => {
            let phi = load_phi(phi)?;
            let (u, v) = (free_word(&phi, u)?, free_word(&phi, v)?);
            if emit_graph.is_some() {
                write_graph(emit_graph.as_deref(), &z_extension_graph(&phi, &u, &v, &limits)?)?;
            }
            let report = match twisted_decide(&phi, &u, &v, &limits)? {
                TwistedVerdict::Yes { g } => {
                    let verified = twisted_verify(&phi, &u, &g)? == v;
                    return Report::new("twisted-conj", Outcome::Yes)
                        .with("g", json!(g.to_string()))
                        .with("certificate", json!(g.to_string()))
                        .with("checked", json!(true))
                        .finish(verified);
                }
                TwistedVerdict::No => Report::new("twisted-conj", Outcome::No),
                TwistedVerdict::Unknown { reason } => Report::unknown("twisted-conj", reason, &limits),
            };
            report.with("checked", json!(true)).finish(false)
        }
        Command::OrbitConj { phi, u, v } => {
            let phi = load_phi(phi)?;
            let (u, v) = (free_word(&phi, u)?, free_word(&phi, v)?);
            match orbit_decide(&phi, &u, &v, &limits)? {
                OrbitVerdict::Yes { k, c } => {
                    let verified = c.conjugate(&phi.apply_power_capped(&u, k, limits.word_cap)?) == v;
                    Report::new("orbit-conj", Outcome::Yes)
                        .with("certificate", json!(c.to_string()))
                        .with("k", json!(k))
                        .finish(verified)
                }
                OrbitVerdict::No => Report::new("orbit-conj", Outcome::No).finish(false),
                OrbitVerdict::Unknown { reason } => Report::unknown("orbit-conj", reason, &limits).finish(false),
            }
        }
        Command::PowerOrbit { phi, u, v } => {
            let phi = load_phi(phi)?;
            let (u, v) = (free_word(&phi, u)?, free_word(&phi, v)?);
            match power_orbit_decide(&phi, &u, &v, &limits)? {
                PowerOrbitVerdict::Yes { p, q, k, c } => {
                    let lhs = c.conjugate(&phi.apply_power_capped(&u.pow(p), k, limits.word_cap)?);
                    Report::new("power-orbit", Outcome::Yes)
                        .with("certificate", json!(c.to_string()))
                        .with("p", json!(p))
                        .with("q", json!(q))
                        .with("k", json!(k))
                        .finish(lhs == v.pow(q))
                }
                PowerOrbitVerdict::No => Report::new("power-orbit", Outcome::No).finish(false),
                PowerOrbitVerdict::Unknown { reason } => Report::unknown("power-orbit", reason, &limits).finish(false),
            }
        }
        Command::Fix { phi, emit_graph } => {
            let phi = load_phi(phi)?;
            let basis = fix_solve(&phi, &limits)?;
            write_graph(emit_graph.as_deref(), &basis.graph())?;
            let mut v = basis_json(&basis);
            v["command"] = json!("fix");
            v["class"] = json!(classify_with(&phi, &limits).to_string());
            v["search_len"] = json!(limits.fix_search_len);
            Ok((v, 0))
        }
        Command::Per { phi, emit_graph } => {
            let phi = load_phi(phi)?;
            let per = periodic_subgroup(&phi, &limits)?;
            write_graph(emit_graph.as_deref(), &per.basis.graph())?;
            let mut v = basis_json(&per.basis);
            v["command"] = json!("per");
            v["class"] = json!(classify_with(&phi, &limits).to_string());
            v["period"] = json!(per.period);
            v["search_len"] = json!(limits.periodic_search_len);
            if let Some(s) = per.budget_hit {
                v["budget_hit"] = json!(s);
            }
            Ok((v, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors; everything else maps to 3
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok((value, code)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("json output"));
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
