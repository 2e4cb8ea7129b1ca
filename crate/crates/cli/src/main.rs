//! `hdts-cli`: check, realize, cubify and export transition systems and
//! precubical sets, and compile CCS terms.
//!
//! Exit codes: 0 when every checked axiom holds, 1 when some axiom fails,
//! 2 on unreadable or invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hdts::ccs::{parse, semantics, DEFAULT_UNFOLD_DEPTH};
use hdts::fixtures::{self, Payload};
use hdts::hdts::{validate, WeakHdts};
use hdts::precube::PrecubicalSet;
use hdts::realize::{cubify, realize, report};
use hdts::{dot, json as hjson, Alphabet};

#[derive(Parser)]
#[command(name = "hdts-cli", version, about = "Higher dimensional transition systems and precubical sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of a weak HDTS or the HDA conditions of a precubical set.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Reject labels outside this alphabet.
        #[arg(long)]
        alphabet: Option<PathBuf>,
    },
    /// Print the transition system realizing a precubical set.
    Realize {
        path: PathBuf,
        #[arg(long)]
        alphabet: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cubify a transition system, writing cubpre.json and cubx.json.
    Cubify {
        path: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        alphabet: Option<PathBuf>,
    },
    /// Re-emit a file as canonical JSON or as a DOT graph.
    Export {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Supplies the silent label drawn dashed (default `tau`).
        #[arg(long)]
        alphabet: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// CCS front end.
    Ccs {
        #[command(subcommand)]
        cmd: CcsCmd,
    },
    /// Built-in example inputs.
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum CcsCmd {
    /// Compile a term to its precubical semantics.
    Compile {
        term: String,
        #[arg(long)]
        alphabet: PathBuf,
        #[arg(long, default_value_t = DEFAULT_UNFOLD_DEPTH)]
        unfold: usize,
        #[arg(long = "out", value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List fixture names, kinds and descriptions.
    List,
    /// Print one fixture, or write every fixture and the alphabet into a directory.
    Emit {
        name: Option<String>,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hdts,
    Precube,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Input {
    Hdts(WeakHdts),
    Precube(PrecubicalSet),
}

fn detect(v: &Value) -> Result<Kind> {
    match v {
        Value::Object(m) if m.contains_key("states") => Ok(Kind::Hdts),
        Value::Object(m) if m.contains_key("dims") => Ok(Kind::Precube),
        _ => bail!("cannot tell the input kind: expected a `states` or `dims` key"),
    }
}

fn load_alphabet(path: &Path) -> Result<Alphabet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    hjson::alphabet_from_str(&text).with_context(|| format!("in {}", path.display()))
}

fn load(path: &Path, kind: Option<Kind>, alphabet: Option<&Path>) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let kind = match kind {
        Some(k) => k,
        None => detect(&serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)?,
    };
    let input = match kind {
        Kind::Hdts => Input::Hdts(hjson::hdts_from_str(&text).with_context(|| format!("in {}", path.display()))?),
        Kind::Precube => {
            Input::Precube(hjson::precube_from_str(&text).with_context(|| format!("in {}", path.display()))?)
        }
    };
    if let Some(a) = alphabet {
        let cfg = load_alphabet(a)?;
        let labels: Vec<_> = match &input {
            Input::Hdts(x) => x.actions().values().cloned().collect(),
            Input::Precube(k) => k.edge_labels().into_iter().collect(),
        };
        if let Some(l) = labels.iter().find(|l| !cfg.contains(l)) {
            bail!("label `{l}` is not in the alphabet {}", a.display());
        }
    }
    Ok(input)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn payload_json(p: &Payload) -> Value {
    match p {
        Payload::Hdts(x) => hjson::hdts_to_json(x),
        Payload::Precube(k) => hjson::precube_to_json(k),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Check { path, kind, alphabet } => {
            let (report, pass) = match load(&path, kind, alphabet.as_deref())? {
                Input::Hdts(x) => {
                    let r = validate(&x);
                    let pass = r.all_pass();
                    (serde_json::to_value(r)?, pass)
                }
                Input::Precube(k) => {
                    let r = report(&k);
                    let pass = r.hda && r.csa1 && r.uisa;
                    (serde_json::to_value(r)?, pass)
                }
            };
            print!("{}", hjson::to_text(&report));
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Realize { path, alphabet, output } => {
            let Input::Precube(k) = load(&path, Some(Kind::Precube), alphabet.as_deref())? else { unreachable!() };
            emit(&hjson::to_text(&hjson::hdts_to_json(&realize(&k).system)), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cubify { path, out_dir, alphabet } => {
            let x = match load(&path, None, alphabet.as_deref())? {
                Input::Hdts(x) => x,
                Input::Precube(k) => realize(&k).system,
            };
            let c = cubify(&x);
            fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
            fs::write(out_dir.join("cubpre.json"), hjson::to_text(&hjson::precube_to_json(&c.cub_pre)))?;
            fs::write(out_dir.join("cubx.json"), hjson::to_text(&hjson::hdts_to_json(c.system())))?;
            let attestation = json!({
                "states_bijective": c.bijective_on_states(&x),
                "p_iso": c.p_is_iso(&x),
                "p": {
                    "states": c.p.state_map.iter().map(|(a, b)| [a.0, b.0]).collect::<Vec<_>>(),
                    "actions": c.p.action_map.iter().map(|(a, b)| [a.0, b.0]).collect::<Vec<_>>(),
                },
            });
            print!("{}", hjson::to_text(&attestation));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Export { path, format, alphabet, output } => {
            let tau = match &alphabet {
                Some(a) => load_alphabet(a)?.tau().to_string(),
                None => "tau".to_string(),
            };
            let text = match (load(&path, None, alphabet.as_deref())?, format) {
                (Input::Hdts(x), Format::Dot) => dot::hdts_to_dot(&x, &tau),
                (Input::Hdts(x), Format::Json) => hjson::to_text(&hjson::hdts_to_json(&x)),
                (Input::Precube(k), Format::Dot) => dot::precube_to_dot(&k, &tau),
                (Input::Precube(k), Format::Json) => hjson::to_text(&hjson::precube_to_json(&k)),
            };
            emit(&text, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ccs { cmd: CcsCmd::Compile { term, alphabet, unfold, format, output } } => {
            let cfg = load_alphabet(&alphabet)?;
            let t = parse(&term, &cfg)?;
            let s = semantics(&t, &cfg, unfold)?;
            if s.truncated {
                eprintln!("warning: recursion did not stabilize within {unfold} unfoldings; the result is truncated");
            }
            let text = match format {
                Format::Json => hjson::to_text(&hjson::precube_to_json(&s.set)),
                Format::Dot => dot::precube_to_dot(&s.set, cfg.tau().as_str()),
            };
            emit(&text, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fixtures { cmd: FixturesCmd::List } => {
            for f in fixtures::all() {
                let kind = match f.payload {
                    Payload::Hdts(_) => "hdts",
                    Payload::Precube(_) => "precube",
                };
                println!("{}\t{kind}\t{}", f.name, f.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fixtures { cmd: FixturesCmd::Emit { name, dir } } => {
            let chosen: Vec<(String, Value)> = match &name {
                Some(n) if n == "alphabet" => vec![(n.clone(), hjson::alphabet_to_json(&fixtures::alphabet()))],
                Some(n) => {
                    let f = fixtures::get(n).ok_or_else(|| anyhow!("no fixture named `{n}`"))?;
                    vec![(n.clone(), payload_json(&f.payload))]
                }
                None => {
                    let mut all: Vec<(String, Value)> =
                        fixtures::all().iter().map(|f| (f.name.to_string(), payload_json(&f.payload))).collect();
                    all.push(("alphabet".into(), hjson::alphabet_to_json(&fixtures::alphabet())));
                    all
                }
            };
            match dir {
                Some(d) => {
                    fs::create_dir_all(&d).with_context(|| format!("creating {}", d.display()))?;
                    for (n, v) in &chosen {
                        fs::write(d.join(format!("{n}.json")), hjson::to_text(v))?;
                    }
                }
                None if chosen.len() == 1 => print!("{}", hjson::to_text(&chosen[0].1)),
                None => bail!("give a fixture name or --dir"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
