use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wazz::automata::{equivalent, parse_automaton, word_string, Equivalence, SemiringTag, WeightedAutomaton};
use wazz::hilbert::{hilbert_basis, IntConeSpec};
use wazz::linalg::{fmt_rvec, is_integral, parse_rvec, unit_vec, RMat, RVec};
use wazz::polyhedra::{dd_h_to_v, dd_v_to_h, gauge, parse_polytope, write_polytope, PolytopeFile};
use wazz::zigzag::{cubic_zigzag, ghat_zigzag, parse_zigzag, verify_zigzag, write_zigzag};
use wazz::Error;

/// Exact equivalence checking and witnesses for weighted automata.
#[derive(Parser)]
#[command(name = "wazz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the trace of a state up to a given word length
    Trace {
        file: PathBuf,
        /// Start from the unit vector e_i (0-based) instead of the file's `state` line
        #[arg(long)]
        state_index: Option<usize>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Decide whether the distinguished states of two automata are equivalent
    ///
    /// A file without a `state` line starts from its first state.
    Equiv { first: PathBuf, second: PathBuf },
    /// Build a zig-zag witness relating the distinguished states
    Zigzag {
        first: PathBuf,
        second: PathBuf,
        /// Witness file to write; printed to stdout when absent
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Re-check a witness file
    Verify { witness: PathBuf },
    /// Hilbert basis of {x in Z^k : xW >= 0}, read as `dim k` and the rows of W
    Hilbert { file: PathBuf },
    /// Convert between inequality and generator descriptions
    Polytope { file: PathBuf },
    /// Gauge of a point with respect to a `pca` polytope file
    Gauge {
        file: PathBuf,
        /// Whitespace-separated rational coordinates
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

/// A run either answers yes/no or fails before it can answer.
type Outcome = Result<bool, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn located(path: &Path) -> impl Fn(Error) -> String + '_ {
    move |e| match e {
        Error::Parse { line, msg } => format!("{}:{line}: {msg}", path.display()),
        other => format!("{}: {other}", path.display()),
    }
}

fn load_automaton(path: &Path) -> Result<(WeightedAutomaton, RVec), String> {
    let (aut, state) = parse_automaton(&read(path)?).map_err(located(path))?;
    let state = match state {
        Some(s) => s,
        None if aut.n() > 0 => unit_vec(aut.n(), 0),
        None => Vec::new(),
    };
    Ok((aut, state))
}

fn parse_cone(path: &Path) -> Result<IntConeSpec, String> {
    let text = read(path)?;
    let at = |line: usize, msg: &str| format!("{}:{line}: {msg}", path.display());
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let k = match lines.next() {
        Some((line, l)) => match l.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["dim", k] => k.parse::<usize>().map_err(|_| at(line, "bad dimension"))?,
            _ => return Err(at(line, "expected 'dim <k>'")),
        },
        None => return Err(format!("{}: empty cone file", path.display())),
    };
    let mut rows = Vec::with_capacity(k);
    for (line, l) in lines {
        let row = parse_rvec(l.split_whitespace()).map_err(|m| at(line, &m))?;
        if !is_integral(&row) {
            return Err(at(line, "entries of W must be integers"));
        }
        if rows.first().is_some_and(|r: &RVec| r.len() != row.len()) {
            return Err(at(line, "rows of W differ in length"));
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(format!("{}: W has {} rows, expected {k}", path.display(), rows.len()));
    }
    let m = rows.first().map_or(0, Vec::len);
    Ok(IntConeSpec::new(RMat::from_rows(&rows, m)))
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    let mut say = |s: String| writeln!(out, "{s}").map_err(|e| e.to_string());
    match command {
        Command::Trace { file, state_index, depth } => {
            let (aut, state) = load_automaton(&file)?;
            let x = match state_index {
                Some(i) if i < aut.n() => unit_vec(aut.n(), i),
                Some(i) => return Err(format!("state index {i} out of range for {} states", aut.n())),
                None => state,
            };
            let trace = aut.trace(&x, depth).map_err(located(&file))?;
            say(trace.to_string().trim_end().to_string())?;
            Ok(true)
        }
        Command::Equiv { first, second } => {
            let (a1, x1) = load_automaton(&first)?;
            let (a2, x2) = load_automaton(&second)?;
            match equivalent(&a1, &x1, &a2, &x2).map_err(|e| e.to_string())? {
                Equivalence::Equivalent { .. } => {
                    say("EQUIVALENT".into())?;
                    Ok(true)
                }
                Equivalence::NotEquivalent { word } => {
                    say(format!("NOT EQUIVALENT, separating word: {}", word_string(a1.alphabet(), &word)))?;
                    Ok(false)
                }
            }
        }
        Command::Zigzag { first, second, o } => {
            let (a1, x1) = load_automaton(&first)?;
            let (a2, x2) = load_automaton(&second)?;
            let built = if a1.tag() == SemiringTag::Pca {
                ghat_zigzag(&a1, &x1, &a2, &x2)
            } else {
                cubic_zigzag(&a1, &x1, &a2, &x2)
            };
            let z = match built {
                Ok(z) => z,
                Err(Error::NotEquivalent { word }) => {
                    say(format!("NOT EQUIVALENT, separating word: {word}"))?;
                    return Ok(false);
                }
                Err(e) => return Err(e.to_string()),
            };
            let text = write_zigzag(&z);
            match o {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                    say(format!("wrote {} ({} nodes, functor {})", path.display(), z.nodes.len(), z.functor))?;
                }
                None => say(text.trim_end().to_string())?,
            }
            Ok(true)
        }
        Command::Verify { witness } => {
            let z = parse_zigzag(&read(&witness)?).map_err(located(&witness))?;
            let report = verify_zigzag(&z);
            say(report.to_string().trim_end().to_string())?;
            Ok(report.valid())
        }
        Command::Hilbert { file } => {
            let spec = parse_cone(&file)?;
            for v in hilbert_basis(&spec) {
                say(fmt_rvec(&v))?;
            }
            Ok(true)
        }
        Command::Polytope { file } => {
            let p = parse_polytope(&read(&file)?).map_err(located(&file))?;
            let (converted, nonempty) = match p {
                PolytopeFile::H(h) => {
                    let v = dd_h_to_v(&h);
                    let nonempty = !v.points.is_empty();
                    (PolytopeFile::V(v), nonempty)
                }
                PolytopeFile::V(v) => (PolytopeFile::H(dd_v_to_h(&v).canonical()), !v.points.is_empty()),
                PolytopeFile::Pca(x) => (PolytopeFile::H(dd_v_to_h(&x.to_vrep()).canonical()), true),
            };
            say(write_polytope(&converted).trim_end().to_string())?;
            Ok(nonempty)
        }
        Command::Gauge { file, point } => {
            let PolytopeFile::Pca(x) = parse_polytope(&read(&file)?).map_err(located(&file))? else {
                return Err(format!("{}: gauge needs a 'pca' polytope file", file.display()));
            };
            let p = parse_rvec(point.split_whitespace()).map_err(|m| format!("--point: {m}"))?;
            if p.len() != x.dim {
                return Err(format!("--point has {} coordinates, expected {}", p.len(), x.dim));
            }
            say(gauge(&x, &p).to_string())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            let _ = writeln!(out, "error: {msg}");
            ExitCode::from(2)
        }
    }
}
