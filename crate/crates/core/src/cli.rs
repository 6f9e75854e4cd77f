use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use interpol::bench::{self, registry};
use interpol::craig::{self, AlcoOptions, Status};
use interpol::lp::{self, Atoms, LPProgram, Relation};
use interpol::reasoner::{self, logical_diff_bounded};
use interpol::semantics::{self, Interpretation};
use interpol::syntax::{parse_concept, parse_ontology, sig_concept, sig_ontology, split_names, Concept, Ontology, Signature};
use interpol::uinterp::{self, Policy};
use interpol::{gen, Error, Result};

const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (",
    env!("INTERPOL_BUILD_TARGET"),
    ", ",
    env!("INTERPOL_BUILD_PROFILE"),
    ")"
);

#[derive(Parser)]
#[command(name = "interpol", version = VERSION, about = "Interpolation and forgetting for ALC/ALCO ontologies and answer-set programs")]
struct Cli {
    /// Emit one JSON record per result instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate ontology (.dl), program (.lp) or model files
    Check { files: Vec<String> },
    /// Decide O |= lhs [= rhs
    Subsume {
        ontology: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Decide whether two ontologies entail each other
    Equiv { a: String, b: String },
    /// Uniform interpolant for the kept symbols
    Uinterp {
        ontology: String,
        #[arg(long)]
        keep: String,
        #[arg(long, default_value = "fixpoint")]
        policy: String,
    },
    /// Craig or Σ-interpolant of c1 [= c2 under o1 ∪ o2
    Cinterp {
        #[arg(long)]
        o1: Option<String>,
        #[arg(long)]
        o2: Option<String>,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// ALCO(Σ)-interpolant existence
    CinterpAlco {
        #[arg(long)]
        ontology: Option<String>,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        sigma: String,
        /// Only decide existence (no construction)
        #[arg(long)]
        exists_only: bool,
        /// Accept a bounded search when the exact one is too large
        #[arg(long)]
        allow_bounded: bool,
        #[arg(long, env = "INTERPOL_MAX_MOSAICS", default_value_t = 4096)]
        max_mosaics: usize,
    },
    /// Explicit Σ-definition of a target concept
    Define {
        ontology: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value = "top")]
        context: String,
    },
    /// Σ-inclusions entailed by A but not by B, within a bounded grammar
    Diff {
        a: String,
        b: String,
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, env = "INTERPOL_BUDGET", default_value_t = 5000)]
        budget: usize,
    },
    /// Benchmark generation
    Bench {
        #[command(subcommand)]
        command: BenchCommand,
    },
    /// Answer-set programs
    Lp {
        #[command(subcommand)]
        command: LpCommand,
    },
    /// Bounded finite-model oracles
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Check a finite interpretation against an ontology
    CheckModel {
        model: String,
        ontology: String,
        /// Print the extension of this concept
        #[arg(long)]
        concept: Option<String>,
    },
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Write a benchmark family as DSL files plus a JSON manifest
    Gen(GenArgs),
    /// List the stored examples
    List,
}

#[derive(Args)]
struct GenArgs {
    /// counter, registry or random
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum LpCommand {
    /// Answer sets
    As { program: String },
    /// HT-models over the program's atoms plus --universe
    Ht {
        program: String,
        #[arg(long, default_value = "")]
        universe: String,
    },
    /// Reduct relative to a set of atoms
    Reduct {
        program: String,
        #[arg(long, default_value = "")]
        atoms: String,
    },
    /// Forget atoms by HT projection
    Forget {
        program: String,
        #[arg(long)]
        atoms: String,
    },
    /// Forgetting properties of a candidate, and whether it is a uniform interpolant
    Check {
        program: String,
        #[arg(long)]
        forget: String,
        #[arg(long)]
        candidate: String,
    },
    /// P1 entails P2 under ht or cautious
    Entails {
        p1: String,
        p2: String,
        #[arg(long, default_value = "ht")]
        relation: String,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Smallest model of O with an element in lhs and not rhs
    Countermodel {
        ontology: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, env = "INTERPOL_DOMAIN_CAP", default_value_t = semantics::countermodel::DEFAULT_DOMAIN_CAP)]
        max_domain: usize,
    },
}

/// The answer of one command: exit status, a JSON record and its text form.
struct Outcome {
    code: i32,
    record: Value,
    text: String,
}

impl Outcome {
    fn new(holds: bool, record: Value, text: impl Into<String>) -> Outcome {
        Outcome { code: if holds { 0 } else { 1 }, record, text: text.into() }
    }
}

fn read(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path, e)))
}

/// A file path, `-` for stdin, or `registry:NAME` for a stored example.
fn ontology(source: &str) -> Result<Ontology> {
    match source.strip_prefix("registry:") {
        Some(name) => Ok(registry::lookup(name)?.ontology()),
        None => parse_ontology(&read(source)?),
    }
}

fn optional_ontology(source: &Option<String>) -> Result<Ontology> {
    source.as_deref().map(ontology).unwrap_or_else(|| Ok(Ontology::new()))
}

fn concept(text: &str) -> Result<Concept> {
    parse_concept(text)
}

fn program(path: &str) -> Result<LPProgram> {
    lp::parse_program(&read(path)?)
}

fn atom_list(text: &str) -> Atoms {
    split_names(text).into_iter().collect()
}

fn signature(text: &str, reference: &Signature) -> Signature {
    Signature::classify(&split_names(text), reference)
}

fn show_sets(sets: impl IntoIterator<Item = Atoms>) -> Vec<String> {
    sets.into_iter().map(|s| format!("{{{}}}", s.into_iter().collect::<Vec<_>>().join(", "))).collect()
}

fn run_command(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Check { files } => {
            let mut records = Vec::new();
            let mut lines = Vec::new();
            for f in &files {
                let text = read(f)?;
                let (kind, summary) = if f.ends_with(".lp") {
                    let p = lp::parse_program(&text)?;
                    ("program", format!("{} rules over {} atoms", p.len(), p.atoms.len()))
                } else if f.ends_with(".model") {
                    let i = Interpretation::parse(&text)?;
                    i.validate()?;
                    ("model", format!("domain of {} elements", i.size))
                } else {
                    let o = parse_ontology(&text)?;
                    ("ontology", format!("{} axioms; {}", o.len(), sig_ontology(&o)))
                };
                records.push(json!({"file": f, "kind": kind, "summary": summary}));
                lines.push(format!("{}: {} ok, {}", f, kind, summary));
            }
            Ok(Outcome::new(true, json!({"command": "check", "files": records}), lines.join("\n")))
        }
        Command::Subsume { ontology: path, lhs, rhs } => {
            let o = ontology(&path)?;
            let holds = reasoner::subsumes(&o, &concept(&lhs)?, &concept(&rhs)?)?;
            Ok(Outcome::new(holds, json!({"command": "subsume", "entailed": holds}), if holds { "entailed" } else { "not entailed" }))
        }
        Command::Equiv { a, b } => {
            let holds = reasoner::equivalent(&ontology(&a)?, &ontology(&b)?)?;
            Ok(Outcome::new(holds, json!({"command": "equiv", "equivalent": holds}), if holds { "equivalent" } else { "not equivalent" }))
        }
        Command::Uinterp { ontology: path, keep, policy } => {
            let o = ontology(&path)?;
            let sigma = signature(&keep, &sig_ontology(&o));
            let policy: Policy = policy.parse()?;
            let r = uinterp::uniform_interpolant(&o, &sigma, policy)?;
            let mut text = String::new();
            if !r.auxiliary_names.is_empty() {
                let aux: Vec<&str> = r.auxiliary_names.iter().map(String::as_str).collect();
                text.push_str(&format!("# auxiliary: {}\n", aux.join(", ")));
            }
            text.push_str(r.ontology.to_string().trim_end());
            let record = json!({
                "command": "uinterp",
                "policy": policy.to_string(),
                "signature": sigma,
                "ontology": r.ontology.to_string(),
                "usedFixpoints": r.used_fixpoints,
                "auxiliaryNames": r.auxiliary_names,
            });
            Ok(Outcome::new(true, record, text))
        }
        Command::Cinterp { o1, o2, c1, c2, sigma } => {
            let (o1, o2) = (optional_ontology(&o1)?, optional_ontology(&o2)?);
            let (c1, c2) = (concept(&c1)?, concept(&c2)?);
            let all = sig_ontology(&o1.union(&o2)).union(&sig_concept(&c1)).union(&sig_concept(&c2));
            let sigma = sigma.map(|s| signature(&s, &all));
            let rep = craig::craig_or_sigma_interpolant(&o1, &o2, &c1, &c2, sigma.as_ref())?;
            Ok(interpolant_outcome("cinterp", rep))
        }
        Command::CinterpAlco { ontology: path, c1, c2, sigma, exists_only, allow_bounded, max_mosaics } => {
            let o = optional_ontology(&path)?;
            let (c1, c2) = (concept(&c1)?, concept(&c2)?);
            let all = sig_ontology(&o).union(&sig_concept(&c1)).union(&sig_concept(&c2));
            let sigma = signature(&sigma, &all);
            let opts = AlcoOptions { max_mosaics, allow_bounded, ..AlcoOptions::default() };
            let ex = craig::alco_existence(&o, &c1, &c2, &sigma, opts)?;
            let mut record = json!({"command": "cinterp-alco", "exists": ex.exists, "exact": ex.exact, "details": ex});
            let mut text = if ex.exists { "interpolant exists".to_string() } else { "no interpolant".to_string() };
            if !ex.exact {
                text.push_str(&format!(" (bounded: component sets of at most {} types)", ex.set_bound));
            }
            let nominal_free = !o.has_nominal() && !c1.has_nominal() && !c2.has_nominal();
            if ex.exists && !exists_only && nominal_free {
                let rep = craig::craig_or_sigma_interpolant(&o, &Ontology::new(), &c1, &c2, Some(&sigma))?;
                if let Some(i) = &rep.interpolant {
                    text.push_str(&format!("\n{}", i));
                    record["interpolant"] = json!(i);
                }
            }
            Ok(Outcome::new(ex.exists, record, text))
        }
        Command::Define { ontology: path, target, sigma, context } => {
            let o = ontology(&path)?;
            let (target, context) = (concept(&target)?, concept(&context)?);
            let all = sig_ontology(&o).union(&sig_concept(&target)).union(&sig_concept(&context));
            let sigma = signature(&sigma, &all);
            match craig::explicit_definition(&o, &context, &target, &sigma) {
                Ok(rep) => Ok(interpolant_outcome("define", rep)),
                Err(Error::NotDefinable(m)) => {
                    Ok(Outcome::new(false, json!({"command": "define", "status": "notDefinable", "reason": m}), format!("not definable: {}", m)))
                }
                Err(e) => Err(e),
            }
        }
        Command::Diff { a, b, sigma, depth, budget } => {
            let (oa, ob) = (ontology(&a)?, ontology(&b)?);
            let sigma = signature(&sigma, &sig_ontology(&oa).union(&sig_ontology(&ob)));
            let d = logical_diff_bounded(&oa, &ob, &sigma, depth, budget)?;
            let shown: Vec<String> = d.iter().map(|ci| ci.to_string()).collect();
            let text = if shown.is_empty() { "no difference within the bound".to_string() } else { shown.join("\n") };
            Ok(Outcome::new(d.is_empty(), json!({"command": "diff", "depth": depth, "budget": budget, "missing": shown}), text))
        }
        Command::Bench { command } => bench_command(command),
        Command::Lp { command } => lp_command(command),
        Command::Oracle { command: OracleCommand::Countermodel { ontology: path, lhs, rhs, max_domain } } => {
            let o = ontology(&path)?;
            match semantics::bounded_countermodel(&o, &concept(&lhs)?, &concept(&rhs)?, max_domain)? {
                Some((i, d)) => {
                    let text = format!("# countermodel, witness element {}\n{}", d, i.to_string().trim_end());
                    Ok(Outcome::new(true, json!({"command": "oracle countermodel", "found": true, "witness": d, "model": i}), text))
                }
                None => Ok(Outcome::new(
                    false,
                    json!({"command": "oracle countermodel", "found": false, "maxDomain": max_domain}),
                    format!("no countermodel with at most {} elements", max_domain),
                )),
            }
        }
        Command::CheckModel { model, ontology: path, concept: c } => {
            let i = Interpretation::parse(&read(&model)?)?;
            i.validate()?;
            let o = ontology(&path)?;
            let holds = semantics::is_model(&i, &o)?;
            let mut record = json!({"command": "check-model", "model": holds});
            let mut text = if holds { "model".to_string() } else { "not a model".to_string() };
            if let Some(c) = c {
                let ext = semantics::extension_eval(&i, &concept(&c)?)?;
                text.push_str(&format!("\n{}: {:?}", c, ext));
                record["extension"] = json!(ext);
            }
            Ok(Outcome::new(holds, record, text))
        }
    }
}

fn interpolant_outcome(command: &str, rep: craig::InterpolantReport) -> Outcome {
    let text = match (&rep.status, &rep.interpolant) {
        (Status::Found, Some(i)) => i.clone(),
        (Status::NoneExists, _) => "no interpolant over the signature".to_string(),
        (Status::NotEntailed, _) => "the inclusion does not hold".to_string(),
        (Status::Found, None) => String::new(),
    };
    let mut record = serde_json::to_value(&rep).unwrap_or(Value::Null);
    record["command"] = json!(command);
    Outcome::new(rep.status == Status::Found, record, text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn bench_command(cmd: BenchCommand) -> Result<Outcome> {
    let args = match cmd {
        BenchCommand::List => {
            let ex = registry::examples();
            let names: Vec<&str> = ex.iter().map(|e| e.name).collect();
            let text = ex.iter().map(|e| format!("{:<12} {}", e.name, e.note)).collect::<Vec<_>>().join("\n");
            return Ok(Outcome::new(true, json!({"command": "bench list", "examples": names}), text));
        }
        BenchCommand::Gen(a) => a,
    };
    fs::create_dir_all(&args.out)?;
    let mut entries = Vec::new();
    let mut emit = |name: String, o: &Ontology, sigma: Option<&Signature>| -> Result<()> {
        let file = args.out.join(format!("{}.dl", name));
        write_file(&file, &o.to_string())?;
        entries.push(json!({"name": name, "file": file.display().to_string(), "axioms": o.len(), "signature": sigma.cloned().unwrap_or_else(|| sig_ontology(o))}));
        Ok(())
    };
    match args.family.as_str() {
        "counter" => {
            let (o, sigma) = bench::counter_ontology(args.n)?;
            emit(format!("counter_{}", args.n), &o, Some(&sigma))?;
        }
        "registry" => {
            for e in registry::examples() {
                emit(e.name.to_string(), &e.ontology(), e.signature.as_ref())?;
            }
        }
        "random" => {
            let v = gen::Vocab::new(&["A", "B", "C", "D"], &["r", "s"], &[]);
            let mut rng = gen::rng(args.seed);
            for k in 0..args.n {
                emit(format!("random_{}_{}", args.seed, k), &gen::ontology(&mut rng, &v, 4, 2), None)?;
            }
        }
        f => return Err(Error::Precondition(format!("unknown family \"{}\" (expected counter, registry or random)", f))),
    }
    let manifest = json!({"family": args.family, "n": args.n, "seed": args.seed, "files": entries});
    let mpath = args.out.join(format!("{}_manifest.json", args.family));
    write_file(&mpath, &serde_json::to_string_pretty(&manifest).unwrap_or_default())?;
    let text = format!("wrote {} file(s) and {}", entries.len(), mpath.display());
    Ok(Outcome::new(true, json!({"command": "bench gen", "manifest": manifest}), text))
}

fn lp_command(cmd: LpCommand) -> Result<Outcome> {
    match cmd {
        LpCommand::As { program: path } => {
            let p = program(&path)?;
            let sets = lp::answer_sets(&p)?;
            let shown = show_sets(sets.iter().cloned());
            let text = if shown.is_empty() { "no answer sets".to_string() } else { shown.join("\n") };
            Ok(Outcome::new(!sets.is_empty(), json!({"command": "lp as", "answerSets": sets}), text))
        }
        LpCommand::Ht { program: path, universe } => {
            let p = program(&path)?.with_atoms(atom_list(&universe));
            let ht = lp::ht_models(&p)?;
            let text = ht.iter().map(|q| q.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Outcome::new(true, json!({"command": "lp ht", "universe": p.atoms, "models": ht}), text))
        }
        LpCommand::Reduct { program: path, atoms } => {
            let r = lp::reduct(&program(&path)?, &atom_list(&atoms));
            Ok(Outcome::new(true, json!({"command": "lp reduct", "program": r.to_string()}), r.to_string().trim_end().to_string()))
        }
        LpCommand::Forget { program: path, atoms } => {
            let p = program(&path)?;
            let f = lp::forget_ht(&p, &atom_list(&atoms))?;
            let text = f.to_string().trim_end().to_string();
            Ok(Outcome::new(true, json!({"command": "lp forget", "atoms": f.atoms, "program": f.to_string()}), text))
        }
        LpCommand::Check { program: path, forget, candidate } => {
            let p = program(&path)?;
            let v = atom_list(&forget);
            let c = program(&candidate)?;
            let rep = lp::check_forgetting_properties(&p, &v, &c)?;
            let keep: Atoms = p.atoms.difference(&v).cloned().collect();
            let ht = lp::is_uniform_interpolant(&p, &keep, &c, Relation::Ht)?;
            let cautious = lp::is_uniform_interpolant(&p, &keep, &c, Relation::Cautious)?;
            let text = format!(
                "CP {}\nW {}\nPP {} (bounded, {} rules)\nSP on facts {} ({} fact sets)\nuniform interpolant (ht) {}\nuniform interpolant (cautious) {}",
                rep.cp, rep.w, rep.pp, rep.pp_family, rep.sp_facts, rep.sp_checked, ht, cautious
            );
            let record = json!({"command": "lp check", "properties": rep, "uniformHt": ht, "uniformCautious": cautious});
            Ok(Outcome::new(true, record, text))
        }
        LpCommand::Entails { p1, p2, relation } => {
            let rel: Relation = relation.parse()?;
            let holds = lp::entails_lp(&program(&p1)?, &program(&p2)?, rel)?;
            Ok(Outcome::new(holds, json!({"command": "lp entails", "relation": rel, "entailed": holds}), if holds { "entailed" } else { "not entailed" }))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Verification(_) => 4,
        _ => 2,
    }
}

pub fn main_with_args(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let json_mode = cli.json;
    match run_command(cli.command) {
        Ok(out) => {
            if json_mode {
                let mut record = out.record;
                record["exitCode"] = json!(out.code);
                println!("{}", record);
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code(&e)
        }
    }
}
