//! The `reslat` command line: one subcommand per library capability,
//! JSON algebra documents in and out.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (an equation
//! has a counterexample, two algebras are not isomorphic, a reproduction
//! check disagrees with its reference), 2 on usage or input errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::FiniteAlgebra;
use crate::congruences;
use crate::constructors;
use crate::kexpansion::{self, NamedKLattice};
use crate::subalgebras;
use crate::terms;
use crate::varieties::{self, VarietyNode};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "reslat", version, about = "finite residuated lattices and their twist-products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named algebra and print it as JSON.
    Build(BuildArgs),
    /// Ordinal sum of two algebras.
    Sum { a: PathBuf, b: PathBuf },
    /// Direct product of one or more algebras.
    Prod { algebras: Vec<PathBuf> },
    /// Twist-product K(A) of an integral algebra.
    Kexpand { a: PathBuf },
    /// Build a named K-lattice (K3, K4, Krp, Kn2, Kn2m1, K8).
    Named(NamedArgs),
    /// Check an equation on an algebra; exit 1 with a counterexample if it fails.
    Check(CheckArgs),
    /// Congruence census: count, simplicity, subdirect irreducibility.
    Con(ConArgs),
    /// List subuniverses (optionally up to isomorphism or admissible-only).
    Subs(SubsArgs),
    /// Isomorphism test; exit 1 if the algebras are not isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Admissible subalgebras of K(A) for an integral algebra A.
    Admissible(AdmissibleArgs),
    /// Build a subvariety poset from presets or generator files.
    Poset(PosetArgs),
    /// Run a reproduction preset and write its artifacts and manifest.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// One of: two, godel, wajsberg, c5, trivial.
    which: String,
    /// Chain parameter for godel/wajsberg.
    n: Option<usize>,
}

#[derive(Args)]
struct NamedArgs {
    /// One of: K3, K4, Krp, Kn2, Kn2m1, K8 (aliases: "K_{r,p}", "K_{n^2}", "K_{n^2-1}").
    which: String,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    a: PathBuf,
    /// Equation text, e.g. "(x -> y) \/ (y -> x) = 1".
    #[arg(long)]
    eq: Option<String>,
    /// Named equation from the library, e.g. K1.
    #[arg(long)]
    named: Option<String>,
}

#[derive(Args)]
struct ConArgs {
    a: PathBuf,
    /// Also print each congruence as block lists.
    #[arg(long)]
    blocks: bool,
}

#[derive(Args)]
struct SubsArgs {
    a: PathBuf,
    #[arg(long)]
    up_to_iso: bool,
    /// Only subalgebras sharing A's negative cone (for K(A) itself use
    /// `reslat admissible` on the base algebra instead).
    #[arg(long)]
    admissible_only: bool,
    #[arg(long, default_value_t = subalgebras::DEFAULT_ENUMERATION_CAP)]
    max_size: usize,
}

#[derive(Args)]
struct AdmissibleArgs {
    a: PathBuf,
    /// Exhaustively enumerate all admissible subuniverses of K(A).
    #[arg(long)]
    enumerate: bool,
    /// Lattice filter of A as comma-separated element indices (requires
    /// an involutive A); emits the carved admissible subalgebra.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = subalgebras::ADMISSIBLE_ENUMERATION_CAP)]
    max_size: usize,
}

#[derive(Args)]
struct PosetArgs {
    /// One of: gnpcl, l2l3, two-plus-l2, kph-finite.
    #[arg(long)]
    preset: Option<String>,
    /// Comma-separated JSON files, one single-generator node each.
    #[arg(long)]
    generators: Option<String>,
    /// Write DOT here in addition to the JSON on stdout.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Cap for generator-file posets; presets pin their own caps.
    #[arg(long, default_value_t = 25)]
    max_size: usize,
}

#[derive(Args)]
struct ReproduceArgs {
    /// One of: figure-k-n-3, k8, c5-cover, gnpcl-chain, l2l3-poset,
    /// two-plus-l2-poset, kph-finite-poset.
    preset: String,
    /// Output directory for artifacts.
    #[arg(long, default_value = "reproduce-out")]
    out_dir: PathBuf,
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; --help and --version are success
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            2
        }
    }
}

fn load(path: &PathBuf) -> Result<FiniteAlgebra> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let alg = FiniteAlgebra::from_json(&text)?;
    let report = alg.validate();
    if !report.passed() {
        let f = &report.failures()[0];
        return Err(Error::Invalid(format!(
            "{}: axiom {} fails at {:?} ({} failures)",
            path.display(),
            f.axiom,
            f.witness,
            report.failures().len()
        )));
    }
    Ok(alg)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Build(args) => {
            let alg = match (args.which.as_str(), args.n) {
                ("two", _) => constructors::two()?,
                ("trivial", _) => constructors::trivial(),
                ("godel", Some(n)) => constructors::godel_chain(n)?,
                ("wajsberg", Some(n)) => constructors::wajsberg_chain(n)?,
                ("godel" | "wajsberg", None) => {
                    return Err(Error::Precondition("build godel/wajsberg needs N".into()))
                }
                ("c5", _) => constructors::c5()?,
                (other, _) => {
                    return Err(Error::Precondition(format!(
                        "unknown algebra {other:?}; use two|godel N|wajsberg N|c5|trivial"
                    )))
                }
            };
            println!("{}", alg.to_json());
            Ok(0)
        }
        Command::Sum { a, b } => {
            let sum = constructors::ordinal_sum(&load(&a)?, &load(&b)?)?;
            println!("{}", sum.to_json());
            Ok(0)
        }
        Command::Prod { algebras } => {
            if algebras.is_empty() {
                return Err(Error::Precondition("prod needs at least one algebra".into()));
            }
            let loaded: Result<Vec<_>> = algebras.iter().map(load).collect();
            let prod = constructors::direct_product(&loaded?)?;
            println!("{}", prod.to_json());
            Ok(0)
        }
        Command::Kexpand { a } => {
            let k = kexpansion::k_expand(&load(&a)?)?;
            println!("{}", k.algebra().to_json());
            Ok(0)
        }
        Command::Named(args) => {
            let which = parse_named(&args)?;
            println!("{}", kexpansion::named(which)?.to_json());
            Ok(0)
        }
        Command::Check(args) => {
            let alg = load(&args.a)?;
            let eq = match (&args.eq, &args.named) {
                (Some(text), None) => terms::parse_equation(text)?,
                (None, Some(name)) => terms::named_equation(name).ok_or_else(|| {
                    Error::Precondition(format!(
                        "no equation named {name:?}; known: {}",
                        terms::named_equations()
                            .iter()
                            .filter_map(|e| e.name.clone())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ))
                })?,
                _ => return Err(Error::Precondition("check needs exactly one of --eq/--named".into())),
            };
            match terms::counterexample(&alg, &eq)? {
                None => {
                    println!("satisfied: {}", eq.display());
                    Ok(0)
                }
                Some(cex) => {
                    let assignment: Vec<String> = cex
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| {
                            format!(
                                "{} = {}",
                                eq.var_names().get(i).cloned().unwrap_or_else(|| format!("x{i}")),
                                alg.label(v)
                            )
                        })
                        .collect();
                    println!("counterexample: {}", assignment.join(", "));
                    Ok(1)
                }
            }
        }
        Command::Con(args) => {
            let alg = load(&args.a)?;
            let lattice = congruences::congruence_lattice(&alg)?;
            println!("congruences: {}", lattice.len());
            println!("simple: {}", lattice.len() == 2);
            println!("subdirectly_irreducible: {}", lattice.atoms().len() == 1);
            if args.blocks {
                for (i, c) in lattice.congruences.iter().enumerate() {
                    let blocks: Vec<String> = c
                        .blocks()
                        .iter()
                        .map(|b| {
                            let labels: Vec<String> = b.iter().map(|&x| alg.label(x)).collect();
                            format!("{{{}}}", labels.join(","))
                        })
                        .collect();
                    println!("theta_{i}: {}", blocks.join(" "));
                }
            }
            Ok(0)
        }
        Command::Subs(args) => {
            let alg = load(&args.a)?;
            if args.admissible_only {
                if alg.size() > args.max_size {
                    return Err(Error::CapExceeded(format!(
                        "admissible enumeration needs |A| <= {}, got {}",
                        args.max_size,
                        alg.size()
                    )));
                }
                let cone: Vec<usize> =
                    alg.elements().filter(|&x| alg.leq(x, alg.one())).collect();
                let subs = subalgebras::subuniverses_above(&alg, &cone);
                for s in &subs {
                    println!("{}", s.algebra(&alg)?.to_json());
                }
                println!("admissible_count={}", subs.len());
            } else if args.up_to_iso {
                let reps = subalgebras::subalgebras_up_to_iso(&alg, args.max_size)?;
                for r in &reps {
                    println!("{}", r.to_json());
                }
                println!("iso_classes={}", reps.len());
            } else {
                let subs = subalgebras::all_subuniverses(&alg, args.max_size)?;
                for s in &subs {
                    let labels: Vec<String> = s.elements.iter().map(|&x| alg.label(x)).collect();
                    println!("{{{}}}", labels.join(","));
                }
                println!("subuniverses={}", subs.len());
            }
            Ok(0)
        }
        Command::Iso { a, b } => {
            let (alg_a, alg_b) = (load(&a)?, load(&b)?);
            match subalgebras::is_isomorphic(&alg_a, &alg_b) {
                Some(map) => {
                    let rendered: Vec<String> = map
                        .iter()
                        .enumerate()
                        .map(|(x, &y)| format!("{} -> {}", alg_a.label(x), alg_b.label(y)))
                        .collect();
                    println!("isomorphic: {}", rendered.join(", "));
                    Ok(0)
                }
                None => {
                    println!("not isomorphic");
                    Ok(1)
                }
            }
        }
        Command::Admissible(args) => {
            let alg = load(&args.a)?;
            if let Some(ref filter_text) = args.filter {
                let filter = parse_index_list(filter_text, alg.size())?;
                let (k, s) = kexpansion::admissible_from_filter(&alg, &filter)?;
                println!("{}", s.algebra(k.algebra())?.to_json());
                println!("admissible_count=1");
                return Ok(0);
            }
            // default and --enumerate both enumerate exhaustively
            let k = kexpansion::k_expand(&alg)?;
            let subs = subalgebras::admissible_subuniverses(&k, args.max_size)?;
            for s in &subs {
                println!("{}", s.algebra(k.algebra())?.to_json());
            }
            println!("admissible_count={}", subs.len());
            Ok(0)
        }
        Command::Poset(args) => {
            let poset = match (&args.preset, &args.generators) {
                (Some(name), None) => preset_poset(name, args.max_size)?,
                (None, Some(files)) => {
                    let mut nodes = Vec::new();
                    for (i, f) in files.split(',').enumerate() {
                        let path = PathBuf::from(f.trim());
                        let alg = load(&path)?;
                        let name = path
                            .file_stem()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_else(|| format!("g{i}"));
                        nodes.push(VarietyNode::generated(&format!("V({name})"), vec![alg]));
                    }
                    varieties::variety_poset(nodes, &[], args.max_size)?
                }
                _ => {
                    return Err(Error::Precondition(
                        "poset needs exactly one of --preset/--generators".into(),
                    ))
                }
            };
            if let Some(dot_path) = args.dot {
                std::fs::write(dot_path, poset.to_dot())?;
            }
            println!("{}", poset.to_json());
            Ok(0)
        }
        Command::Reproduce(args) => {
            let manifest = crate::reproduce::run(&args.preset, &args.out_dir)?;
            println!("{}", manifest.to_json());
            Ok(if manifest.passed { 0 } else { 1 })
        }
    }
}

fn parse_named(args: &NamedArgs) -> Result<NamedKLattice> {
    let canon: String = args
        .which
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase();
    match canon.as_str() {
        "k3" => Ok(NamedKLattice::K3),
        "k4" => Ok(NamedKLattice::K4),
        "k8" => Ok(NamedKLattice::K8),
        "krp" => match (args.r, args.p) {
            (Some(r), Some(p)) => Ok(NamedKLattice::Krp { r, p }),
            _ => Err(Error::Precondition("Krp needs --r and --p".into())),
        },
        "kn2" => args
            .n
            .map(|n| NamedKLattice::KnSquared { n })
            .ok_or_else(|| Error::Precondition("Kn2 needs --n".into())),
        "kn21" | "kn2m1" => args
            .n
            .map(|n| NamedKLattice::KnSquaredMinusOne { n })
            .ok_or_else(|| Error::Precondition("Kn2m1 needs --n".into())),
        other => Err(Error::Precondition(format!(
            "unknown named K-lattice {other:?}; use K3|K4|Krp|Kn2|Kn2m1|K8"
        ))),
    }
}

fn parse_index_list(text: &str, size: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad element index {part:?}")))?;
        if v >= size {
            return Err(Error::Precondition(format!("element index {v} out of range")));
        }
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn preset_poset(name: &str, cap: usize) -> Result<varieties::VarietyPoset> {
    let _ = cap; // presets pin their own caps
    match name {
        "gnpcl" => crate::reproduce::gnpcl_variety_poset(),
        "l2l3" => crate::reproduce::l2l3_variety_poset(),
        "two-plus-l2" => crate::reproduce::two_plus_l2_variety_poset(),
        "kph-finite" => crate::reproduce::kph_variety_poset(),
        other => Err(Error::Precondition(format!(
            "unknown poset preset {other:?}; use gnpcl|l2l3|two-plus-l2|kph-finite"
        ))),
    }
}
