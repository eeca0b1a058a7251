//! Command-line surface. `run` parses arguments, executes one subcommand
//! and returns the process exit code; output goes to the given writers.

pub mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use unknot::corpus::{self, CorpusEntry};
use unknot::diagram::{parse_gauss_shadow, parse_pd_shadow, parse_resolved, parse_shadow, ResolvedDiagram, ShadowDiagram};
use unknot::dissect::{dissect, ChordSystem};
use unknot::resolve::{descending_resolution, loop_erasure_resolution, min_extrema, DEFAULT_EXTREMA_BOUND};
use unknot::tower::{descend, TowerScript};
use unknot::verify::{kauffman_bracket, reidemeister_reduce, Reduction, SearchBudget};
use unknot::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_VERIFIED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "unknot", version, about = "Resolve, dissect and verify loop diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Word line, optional `basepoint` line and `P` lines.
    Auto,
    /// Unsigned Gauss word only.
    Gauss,
    /// `P` lines only.
    Pd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Doc,
    Gauss,
    Pd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Descending,
    LoopErasure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Reidemeister,
    Bracket,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Standard,
    Foxartin,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a shadow or resolved diagram and print it in normal form.
    Parse {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
        #[arg(long, value_enum, default_value = "doc")]
        to: OutputFormat,
        #[arg(long)]
        basepoint: Option<usize>,
    },
    /// Choose crossings that unknot a shadow.
    Resolve {
        file: PathBuf,
        #[arg(long, value_enum)]
        strategy: Strategy,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
        #[arg(long)]
        basepoint: Option<usize>,
        /// Write the cell trace (loop erasure) or height profile here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Dissect a chord system (JSON) into its great sequence.
    Dissect { file: PathBuf },
    /// Run a tower descent script (JSON).
    Descend {
        file: PathBuf,
        /// Take the top cell count from loop erasure of this shadow.
        #[arg(long)]
        cells: Option<PathBuf>,
    },
    /// Certify that a resolved diagram with planar data is unknotted.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, env = "UNKNOT_MAX_STATES", default_value_t = unknot::verify::DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Crossing ceiling for increasing moves; defaults to n + 2.
        #[arg(long, env = "UNKNOT_MAX_CROSSINGS")]
        max_crossings: Option<usize>,
        #[arg(long, env = "UNKNOT_CROSSING_BOUND", default_value_t = unknot::verify::DEFAULT_CROSSING_BOUND)]
        crossing_bound: usize,
    },
    /// List or emit corpus shadows.
    Corpus {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Print the shadow documents instead of a summary.
        #[arg(long)]
        emit: bool,
        /// With --emit, write one `<name>.shadow` file per entry here.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Draw a chord system (JSON) or a shadow as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Least number of maxima over compatible height functions.
    Extrema {
        file: PathBuf,
        #[arg(long, env = "UNKNOT_EXTREMA_BOUND", default_value_t = DEFAULT_EXTREMA_BOUND)]
        bound: usize,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: i32,
    name: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INVALID, name: e.name(), message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_INVALID, name: "Io", message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn read_shadow(path: &Path, format: InputFormat, basepoint: Option<usize>) -> Result<ShadowDiagram, Failure> {
    let text = read(path)?;
    let mut shadow = match format {
        InputFormat::Gauss => parse_gauss_shadow(&text, basepoint)?,
        InputFormat::Pd => parse_pd_shadow(&text)?,
        InputFormat::Auto => parse_shadow(&text)?,
    };
    if let Some(b) = basepoint {
        shadow = ShadowDiagram::new(shadow.word, shadow.planar, b)?;
    }
    Ok(shadow)
}

/// True when the text looks like a resolved document.
fn is_resolved(text: &str) -> bool {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).any(|l| {
        l.starts_with("X ")
            || l.split_whitespace().next().is_some_and(|t| t.len() > 1 && (t.starts_with('O') || t.starts_with('U')))
    })
}

fn shadow_text(shadow: &ShadowDiagram, to: OutputFormat) -> String {
    match to {
        OutputFormat::Doc => shadow.to_string(),
        OutputFormat::Gauss => shadow.word.join(" "),
        OutputFormat::Pd => shadow
            .planar
            .iter()
            .flatten()
            .map(|t| format!("P {} {} {} {}", t[0], t[1], t[2], t[3]))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn line(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "{text}");
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Parse { file, format, to, basepoint } => {
            let text = read(&file)?;
            if format == InputFormat::Auto && is_resolved(&text) {
                let d = parse_resolved(&text)?;
                line(out, &d.to_string());
            } else {
                let s = read_shadow(&file, format, basepoint)?;
                line(out, &shadow_text(&s, to));
            }
            Ok(EXIT_OK)
        }
        Command::Resolve { file, strategy, format, basepoint, trace } => {
            let shadow = read_shadow(&file, format, basepoint)?;
            let (resolved, trace_text) = match strategy {
                Strategy::Descending => {
                    let (r, profile) = descending_resolution(&shadow);
                    let heights: Vec<String> = profile.heights.iter().map(|h| format!("{h:.6}")).collect();
                    (r, format!("heights {}\n", heights.join(" ")))
                }
                Strategy::LoopErasure => {
                    let le = loop_erasure_resolution(&shadow);
                    let t = le.trace();
                    (le.resolved, t)
                }
            };
            line(out, &resolved.to_string());
            if let Some(path) = trace {
                write_file(&path, &trace_text)?;
            }
            Ok(EXIT_OK)
        }
        Command::Dissect { file } => {
            let system = ChordSystem::from_json(&read(&file)?)?;
            let (tree, seq) = dissect(&system)?;
            for node in &tree.nodes {
                if let Some(step) = &node.step {
                    let name = if node.subscript.is_empty() { "-" } else { &node.subscript };
                    line(
                        out,
                        &format!(
                            "step {name} {} beta={:?} beta'={:?} split={:?}",
                            step.case, step.beta, step.beta_prime, step.split_pairs
                        ),
                    );
                }
            }
            let _ = write!(out, "{}", seq.report(&tree));
            Ok(EXIT_OK)
        }
        Command::Descend { file, cells } => {
            let mut script = TowerScript::from_json(&read(&file)?)?;
            if let Some(path) = cells {
                let shadow = read_shadow(&path, InputFormat::Auto, None)?;
                script.top_cells = loop_erasure_resolution(&shadow).hemisphere;
            }
            let result = descend(&script)?;
            let _ = write!(out, "{}", result.report());
            Ok(EXIT_OK)
        }
        Command::Verify { file, method, max_states, max_crossings, crossing_bound } => {
            let d = parse_resolved(&read(&file)?)?;
            verify(&d, method, SearchBudget { max_states, max_crossings, crossing_bound }, out)
        }
        Command::Corpus { family, k, emit, dir } => {
            let entries: Vec<CorpusEntry> = match family {
                Family::Standard => corpus::standard(),
                Family::Foxartin => vec![corpus::foxartin(k)],
            };
            for e in &entries {
                if !emit {
                    line(out, &format!("{} {} crossings: {}", e.name, e.shadow.crossing_count(), e.expected.join("; ")));
                    continue;
                }
                let doc = format!("# {}\n{}\n", e.name, e.shadow);
                match &dir {
                    Some(d) => write_file(&d.join(format!("{}.shadow", e.name)), &doc)?,
                    None => {
                        let _ = write!(out, "{doc}");
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Render { file, svg } => {
            let text = read(&file)?;
            let drawing = if text.trim_start().starts_with('{') {
                render::render_chords(&ChordSystem::from_json(&text)?)?
            } else if is_resolved(&text) {
                render::render_shadow(&parse_resolved(&text)?.shadow)
            } else {
                render::render_shadow(&parse_shadow(&text)?)
            };
            write_file(&svg, &drawing)?;
            Ok(EXIT_OK)
        }
        Command::Extrema { file, bound } => {
            let d = parse_resolved(&read(&file)?)?;
            let (count, _) = min_extrema(&d, bound)?;
            line(out, &count.to_string());
            Ok(EXIT_OK)
        }
    }
}

fn verify(d: &ResolvedDiagram, method: Method, budget: SearchBudget, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut code = EXIT_OK;
    if matches!(method, Method::Reidemeister | Method::Both) {
        match reidemeister_reduce(d, &budget)? {
            Reduction::Reduced(trace) => {
                line(out, &format!("reduced in {} moves", trace.steps.len()));
                let _ = write!(out, "{trace}");
            }
            Reduction::NotReduced { states, budget_exceeded } => {
                if budget_exceeded {
                    line(out, &format!("budget exceeded after {states} states"));
                    code = EXIT_BUDGET;
                } else {
                    line(out, &format!("not reduced ({states} states explored)"));
                    code = EXIT_NOT_VERIFIED;
                }
            }
        }
    }
    if matches!(method, Method::Bracket | Method::Both) {
        let b = kauffman_bracket(d)?;
        line(out, &format!("bracket {b}"));
        if !b.is_one() && code == EXIT_OK {
            code = EXIT_NOT_VERIFIED;
        }
    }
    Ok(code)
}

/// Runs one command line. Errors print `error: <Name>: <message>` to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}: {}", f.name, f.message);
            f.code
        }
    }
}
