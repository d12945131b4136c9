//! Command-line front end. Exit status 0 means accept, true or success; 1
//! means reject, false or not unifiable; 2 means a usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;

use unialg::machine::{compile, machine_accepts, PointerMachine};
use unialg::nilpotency::{build_graph, check_word, isometric_run, is_nilpotent_on_space, symbolic_nilpotent};
use unialg::observation::{validate_observation, ComputationSpace, Observation};
use unialg::syntax::{
    parse_machine_file, parse_observation_file, parse_positions_file, parse_term, parse_wiring,
    parse_word_file, render_observation_file, ObservationFile,
};
use unialg::term::mgu;
use unialg::word::{default_positions, encode_word, nested_positions, shuffled_positions, PositionTerms, Word};

#[derive(Parser, Debug)]
#[command(name = "unialg", version, about = "Unification algebra workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the most general unifier of two terms.
    Unify { left: String, right: String },
    /// Print the product of two wirings.
    Compose { left: String, right: String },
    /// Apply a wiring to a closed term.
    Apply { wiring: String, term: String },
    /// Print the adjoint of a wiring.
    Dagger { wiring: String },
    /// Decide whether a wiring is isometric.
    IsometricCheck { wiring: String },
    /// Print the wiring encoding a word.
    EncodeWord {
        word: PathBuf,
        #[arg(long, default_value = "fresh")]
        positions: String,
    },
    /// Check an observation file and print its parameters.
    ValidateObservation {
        obs: PathBuf,
    },
    /// Decide whether an observation accepts a word.
    RunObservation {
        #[arg(long)]
        obs: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, default_value = "fresh")]
        positions: String,
        /// Also compute wiring powers and fail if they disagree.
        #[arg(long)]
        oracle: bool,
        /// Print the transition edges.
        #[arg(long)]
        trace: bool,
    },
    /// Decide acceptance by simulating a pointer machine.
    RunMachine {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Write the observation compiled from a machine.
    CompileMachine {
        #[arg(long)]
        machine: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Run a machine and its compiled observation and compare verdicts.
    CrossCheck {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, default_value = "fresh")]
        positions: String,
    },
}

type Outcome = Result<i32, String>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Inline text, or the contents of a file when written `@path`.
fn text_arg(arg: &str) -> Result<String, String> {
    match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path)),
        None => Ok(arg.to_string()),
    }
}

fn lib<T>(r: unialg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), String> {
    writeln!(out, "{text}").map_err(|e| e.to_string())
}

fn load_word(path: &Path) -> Result<Word, String> {
    lib(parse_word_file(&read(path)?))
}

fn load_observation(path: &Path) -> Result<Observation, String> {
    let file = lib(parse_observation_file(&read(path)?))?;
    lib(validate_observation(&file.wiring, &file.alphabet))
}

fn load_machine(path: &Path) -> Result<PointerMachine, String> {
    lib(parse_machine_file(&read(path)?))
}

/// `fresh`, `nested`, `shuffled[:seed]` or `file:<path>`.
fn positions(spec: &str, n: usize) -> Result<PositionTerms, String> {
    if let Some(path) = spec.strip_prefix("file:") {
        let p = lib(parse_positions_file(&read(Path::new(path))?))?;
        if p.len() != n + 1 {
            return Err(format!("{path}: expected {} position terms, got {}", n + 1, p.len()));
        }
        return Ok(p);
    }
    match spec.split_once(':') {
        Some(("shuffled", seed)) => {
            let seed = seed.parse().map_err(|_| format!("bad seed `{seed}`"))?;
            Ok(shuffled_positions(n, &mut StdRng::seed_from_u64(seed)))
        }
        _ => match spec {
            "fresh" => Ok(default_positions(n)),
            "nested" => Ok(nested_positions(n)),
            "shuffled" => Ok(shuffled_positions(n, &mut StdRng::seed_from_u64(0))),
            other => Err(format!("unknown position choice `{other}`")),
        },
    }
}

fn verdict(accepted: bool) -> &'static str {
    if accepted {
        "ACCEPT"
    } else {
        "REJECT"
    }
}

fn exit_for(b: bool) -> i32 {
    if b {
        0
    } else {
        1
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Unify { left, right } => {
            let t = lib(parse_term(&text_arg(&left)?))?;
            let u = lib(parse_term(&text_arg(&right)?))?;
            match mgu(&t, &u) {
                Some(s) => {
                    emit(out, s)?;
                    Ok(0)
                }
                None => {
                    emit(out, "not unifiable")?;
                    Ok(1)
                }
            }
        }
        Command::Compose { left, right } => {
            let f = lib(parse_wiring(&text_arg(&left)?))?;
            let g = lib(parse_wiring(&text_arg(&right)?))?;
            emit(out, f.mul(&g))?;
            Ok(0)
        }
        Command::Apply { wiring, term } => {
            let f = lib(parse_wiring(&text_arg(&wiring)?))?;
            let t = lib(parse_term(&text_arg(&term)?))?;
            emit(out, lib(f.apply_term(&t))?)?;
            Ok(0)
        }
        Command::Dagger { wiring } => {
            emit(out, lib(parse_wiring(&text_arg(&wiring)?))?.dagger())?;
            Ok(0)
        }
        Command::IsometricCheck { wiring } => {
            let f = lib(parse_wiring(&text_arg(&wiring)?))?;
            let iso = f.is_isometric();
            emit(out, if iso { "isometric" } else { "not isometric" })?;
            Ok(exit_for(iso))
        }
        Command::EncodeWord { word, positions: choice } => {
            let w = load_word(&word)?;
            let pos = positions(&choice, w.len())?;
            emit(out, lib(encode_word(&w, &pos))?)?;
            Ok(0)
        }
        Command::ValidateObservation { obs } => {
            let o = load_observation(&obs)?;
            let states: Vec<String> = o.states().iter().map(|s| s.to_string()).collect();
            emit(out, format_args!("states: {}", states.join(" ")))?;
            emit(out, format_args!("state count: {}", states.len()))?;
            emit(out, format_args!("arity: {}", o.arity()))?;
            emit(out, format_args!("flows: {}", o.wiring().len()))?;
            emit(out, format_args!("isometric: {}", o.is_isometric()))?;
            Ok(0)
        }
        Command::RunObservation {
            obs,
            word,
            positions: choice,
            oracle,
            trace,
        } => {
            let o = load_observation(&obs)?;
            let w = load_word(&word)?;
            lib(check_word(&o, &w))?;
            let pos = positions(&choice, w.len())?;
            let wrep = lib(encode_word(&w, &pos))?;
            let space = ComputationSpace::for_observation(&o, &pos);
            let graph = lib(build_graph(&o, &wrep, &space))?;
            let accepted = is_nilpotent_on_space(&graph);
            if o.is_isometric() && lib(isometric_run(&o, &wrep, &space))? != accepted {
                return Err("orbit run and graph search disagree".into());
            }
            if trace {
                emit(out, format_args!("dimension: {}", space.len()))?;
                for i in 0..graph.len() {
                    for &(j, k) in graph.successors(i) {
                        let weight = if k == 1 { String::new() } else { format!(" ({k})") };
                        emit(out, format_args!("{} => {}{weight}", space.term(i), space.term(j)))?;
                    }
                }
                if let Some(cycle) = graph.find_cycle() {
                    emit(out, "cycle:")?;
                    for i in cycle {
                        emit(out, format_args!("  {}", space.term(i)))?;
                    }
                }
            }
            if oracle {
                let product = o.normalized().mul(&wrep);
                let symbolic = symbolic_nilpotent(&product, space.len().max(1));
                emit(out, format_args!("oracle: {}", verdict(symbolic)))?;
                if symbolic != accepted {
                    return Err("oracle disagrees with graph search".into());
                }
            }
            emit(out, verdict(accepted))?;
            Ok(exit_for(accepted))
        }
        Command::RunMachine { machine, word } => {
            let m = load_machine(&machine)?;
            let w = load_word(&word)?;
            machine_word(&m, &w)?;
            let accepted = machine_accepts(&m, &w);
            emit(out, verdict(accepted))?;
            Ok(exit_for(accepted))
        }
        Command::CompileMachine { machine, output } => {
            let m = load_machine(&machine)?;
            let obs = compile(&m);
            let text = render_observation_file(&ObservationFile {
                alphabet: m.alphabet()[1..].to_vec(),
                wiring: obs.wiring().clone(),
            });
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => write!(out, "{text}").map_err(|e| e.to_string())?,
            }
            Ok(0)
        }
        Command::CrossCheck {
            machine,
            word,
            positions: choice,
        } => {
            let m = load_machine(&machine)?;
            let w = load_word(&word)?;
            machine_word(&m, &w)?;
            let pos = positions(&choice, w.len())?;
            let by_machine = machine_accepts(&m, &w);
            let by_observation = lib(unialg::accepts(&compile(&m), &w, &pos))?;
            emit(out, format_args!("machine: {}", verdict(by_machine)))?;
            emit(out, format_args!("observation: {}", verdict(by_observation)))?;
            let agree = by_machine == by_observation;
            emit(out, if agree { "agree" } else { "DISAGREE" })?;
            Ok(exit_for(agree))
        }
    }
}

fn machine_word(m: &PointerMachine, w: &Word) -> Result<(), String> {
    match w.letters().iter().find(|c| !m.alphabet().contains(c)) {
        Some(c) => Err(format!("letter `{c}` is not in the machine's alphabet")),
        None => Ok(()),
    }
}
