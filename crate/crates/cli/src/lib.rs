//! The `streamwd` command line.
//!
//! Exit codes: 0 success, well-defined or valid; 1 improper, invalid or
//! failed; 2 unknown; 3 usage, input or parse error.

pub mod pipeline;
pub mod tpdb;
pub mod turtle;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use streamwd::engine::{Limits, Observer, PrefixMode};
use streamwd::equiv::{
    check_preservation, check_script, parse_script, search_proof, suggest_anchor, AnchorError,
    ProofCheck, Script,
};
use streamwd::spec::{data_universe, validate, StreamSpec, Verdict as Properness, DEFAULT_CAP};
use streamwd::syntax::{parse_spec, parse_term, render_goals, render_spec};
use streamwd::termination::ProverConfig;
use streamwd::transform::{make_selfequality_goals, obs, unfold, unfold_all, TransformError};

pub use pipeline::{prove_spec, ProveOptions, Verdict};
pub use tpdb::to_tpdb;
pub use turtle::{to_bits, turtle_svg, TurtleConfig, TurtleError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Overrides the default evaluation fuel.
pub const FUEL_VAR: &str = "STREAMWD_FUEL";

#[derive(Parser, Debug)]
#[command(
    name = "streamwd",
    version,
    about = "Well-definedness of stream specifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Strategy {
    Obs,
    Outermost,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check sorts, orthogonality, shapes and exhaustiveness.
    Check { spec: PathBuf },
    /// Print Obs(R_s) together with R_d.
    Obs {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Termination-problem format instead of the rule list.
        #[arg(long)]
        tpdb: bool,
        /// Apply every unfolding first.
        #[arg(long)]
        unfold: bool,
    },
    /// Unfold the stream argument at position POS (from 1) of SYM.
    Unfold {
        spec: PathBuf,
        #[arg(short = 'f', long = "symbol")]
        symbol: String,
        #[arg(short = 'i', long = "position")]
        position: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate, build Obs, prove termination and check the certificate.
    Prove {
        spec: PathBuf,
        /// Prover time budget in seconds.
        #[arg(long, default_value_t = 10)]
        timeout: u64,
        /// Largest coefficient tried in interpretations.
        #[arg(long, default_value_t = 2)]
        coeff_max: u64,
        /// Unfold every non-variable stream argument first.
        #[arg(long)]
        unfold: bool,
        /// Write the checked certificate as JSON.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Where to write the termination problem when the result is unknown
        /// [default: <spec stem>.tpdb in the current directory].
        #[arg(long)]
        tpdb_out: Option<PathBuf>,
    },
    /// Print the first N elements of a ground stream term.
    Eval {
        spec: PathBuf,
        #[arg(short, long)]
        term: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Obs)]
        strategy: Strategy,
    },
    /// Draw the first N elements as a turtle path. Before each unit line the
    /// heading turns by ANGLE0 on the first data value and by ANGLE1 on the
    /// second; positive angles turn left (counterclockwise), so a turn to the
    /// right is negative.
    Turtle {
        spec: PathBuf,
        #[arg(short, long)]
        term: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        angle0: f64,
        #[arg(long, allow_negative_numbers = true)]
        angle1: f64,
        #[arg(long, default_value_t = 1.0)]
        unit: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        heading: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Doubled specification with a goal f == f' for every stream symbol.
    /// With -o, goals go to FILE and the doubled specification to FILE.spec.
    Goals {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the proofs of PROOF over SPEC. With --against, PROOF shows the
    /// rules of SPEC over SPEC2 and --back the rules of SPEC2 over SPEC.
    Certify {
        spec: PathBuf,
        proof: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, requires = "against")]
        back: Option<PathBuf>,
    },
    /// Propose c = d0 : ... : d(N-1) : c' for a stream constant c.
    Suggest {
        spec: PathBuf,
        #[arg(short, long)]
        c: String,
        #[arg(short, long)]
        n: usize,
        /// Also look for short proofs of the obligations.
        #[arg(long)]
        search: bool,
    },
}

/// An error already reported, carrying its exit code.
struct Exit(i32);

type Res = Result<i32, Exit>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> Exit {
        let _ = writeln!(self.err, "error: {msg}");
        Exit(code)
    }

    fn read(&mut self, path: &Path) -> Result<String, Exit> {
        std::fs::read_to_string(path)
            .map_err(|e| self.fail(EXIT_USAGE, format!("{}: {e}", path.display())))
    }

    fn spec(&mut self, path: &Path) -> Result<StreamSpec, Exit> {
        let text = self.read(path)?;
        parse_spec(&text)
            .map_err(|e| self.fail(EXIT_USAGE, format!("{}:{}: {e}", path.display(), e.span())))
    }

    fn script(&mut self, path: &Path, spec: &StreamSpec) -> Result<Script, Exit> {
        let text = self.read(path)?;
        parse_script(&text, spec)
            .map_err(|e| self.fail(EXIT_USAGE, format!("{}:{}: {e}", path.display(), e.span())))
    }

    /// Writes `text` to `path`, or to standard output.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), Exit> {
        match path {
            Some(p) => std::fs::write(p, text)
                .map_err(|e| self.fail(EXIT_USAGE, format!("{}: {e}", p.display()))),
            None => self
                .out
                .write_all(text.as_bytes())
                .map_err(|e| self.fail(EXIT_USAGE, e)),
        }
    }
}

/// Limits with the fuel taken from `value` when given.
pub fn limits_from(value: Option<&str>) -> Result<Limits, String> {
    match value {
        None => Ok(Limits::default()),
        Some(v) => v
            .trim()
            .parse::<u64>()
            .map(Limits::with_fuel)
            .map_err(|_| format!("{FUEL_VAR} must be a non-negative integer, got `{v}`")),
    }
}

/// Runs one command line (`args[0]` is the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) | Err(Exit(code)) => code,
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Res {
    let fuel = std::env::var(FUEL_VAR).ok();
    let limits = limits_from(fuel.as_deref()).map_err(|m| io.fail(EXIT_USAGE, m))?;
    match cmd {
        Command::Check { spec } => check(io, &spec),
        Command::Obs {
            spec,
            output,
            tpdb,
            unfold,
        } => obs_cmd(io, &spec, output.as_deref(), tpdb, unfold),
        Command::Unfold {
            spec,
            symbol,
            position,
            output,
        } => unfold_cmd(io, &spec, &symbol, position, output.as_deref()),
        Command::Prove {
            spec,
            timeout,
            coeff_max,
            unfold,
            cert,
            tpdb_out,
        } => {
            let opts = ProveOptions {
                prover: ProverConfig {
                    coeff_max,
                    time_budget: Duration::from_secs(timeout),
                    ..ProverConfig::default()
                },
                unfold,
            };
            prove(io, &spec, &opts, cert.as_deref(), tpdb_out.as_deref())
        }
        Command::Eval {
            spec,
            term,
            n,
            strategy,
        } => eval(io, &spec, &term, n, strategy, &limits),
        Command::Turtle {
            spec,
            term,
            n,
            angle0,
            angle1,
            unit,
            heading,
            output,
        } => {
            let cfg = TurtleConfig {
                angle0,
                angle1,
                unit,
                start_heading: heading,
                steps: n,
            };
            turtle(io, &spec, &term, &cfg, output.as_deref(), &limits)
        }
        Command::Goals { spec, output } => goals(io, &spec, output.as_deref()),
        Command::Certify {
            spec,
            proof,
            against,
            back,
        } => certify(io, &spec, &proof, against.as_deref(), back.as_deref()),
        Command::Suggest { spec, c, n, search } => suggest(io, &spec, &c, n, search, &limits),
    }
}

fn check(io: &mut Io<'_>, path: &Path) -> Res {
    let spec = io.spec(path)?;
    let report = validate(&spec);
    let _ = write!(io.out, "{report}");
    Ok(match report.verdict {
        Properness::Proper => EXIT_OK,
        Properness::Improper => EXIT_FAILED,
        Properness::IllFormed => EXIT_UNKNOWN,
    })
}

fn obs_cmd(io: &mut Io<'_>, path: &Path, output: Option<&Path>, tpdb: bool, unfold: bool) -> Res {
    let mut spec = io.spec(path)?;
    if unfold {
        spec = unfold_all(&spec).map_err(|e| io.fail(EXIT_FAILED, e))?.0;
    }
    let system = obs(&spec).map_err(|e| io.fail(EXIT_FAILED, e))?;
    let text = if tpdb {
        format!("{}\n", to_tpdb(&system.with_data()))
    } else {
        system.to_string()
    };
    io.emit(output, &text)?;
    Ok(EXIT_OK)
}

fn unfold_cmd(io: &mut Io<'_>, path: &Path, f: &str, i: usize, output: Option<&Path>) -> Res {
    let spec = io.spec(path)?;
    let next = unfold(&spec, f, i).map_err(|e| {
        let code = match e {
            TransformError::UnknownSymbol(_) | TransformError::BadPosition { .. } => EXIT_USAGE,
            _ => EXIT_FAILED,
        };
        io.fail(code, e)
    })?;
    io.emit(output, &render_spec(&next))?;
    Ok(EXIT_OK)
}

fn default_tpdb_path(spec: &Path) -> PathBuf {
    let stem = spec
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "spec".into());
    PathBuf::from(format!("{stem}.tpdb"))
}

fn prove(
    io: &mut Io<'_>,
    path: &Path,
    opts: &ProveOptions,
    cert: Option<&Path>,
    tpdb_out: Option<&Path>,
) -> Res {
    let spec = io.spec(path)?;
    let verdict = prove_spec(&spec, opts);
    let _ = write!(io.out, "{verdict}");
    match &verdict {
        Verdict::WellDefined { certificate, .. } => {
            if let Some(p) = cert {
                std::fs::write(p, certificate.to_json() + "\n")
                    .map_err(|e| io.fail(EXIT_USAGE, format!("{}: {e}", p.display())))?;
                let _ = writeln!(io.out, "certificate: {}", p.display());
            }
        }
        Verdict::Unknown {
            tpdb: Some(text), ..
        } => {
            let p = tpdb_out
                .map(Path::to_path_buf)
                .unwrap_or_else(|| default_tpdb_path(path));
            std::fs::write(&p, format!("{text}\n"))
                .map_err(|e| io.fail(EXIT_USAGE, format!("{}: {e}", p.display())))?;
            let _ = writeln!(
                io.out,
                "termination problem for an external prover: {}",
                p.display()
            );
        }
        _ => {}
    }
    Ok(verdict.exit_code())
}

fn ground_term(
    io: &mut Io<'_>,
    text: &str,
    spec: &StreamSpec,
) -> Result<streamwd::term::Term, Exit> {
    parse_term(text, spec, &[]).map_err(|e| io.fail(EXIT_USAGE, format!("term `{text}`: {e}")))
}

fn compute_prefix(
    io: &mut Io<'_>,
    spec: &StreamSpec,
    term: &str,
    n: usize,
    mode: PrefixMode,
    limits: &Limits,
) -> Result<streamwd::engine::Prefix, Exit> {
    let t = ground_term(io, term, spec)?;
    if t.sort() != streamwd::term::Sort::Stream {
        return Err(io.fail(EXIT_USAGE, format!("`{term}` is not a stream term")));
    }
    // Unfolding preserves the semantics, so a spec whose left-hand sides are
    // not yet of the right shape is evaluated through its unfolded form.
    let observer = match Observer::new(spec) {
        Ok(o) => o,
        Err(_) => {
            let unfolded = unfold_all(spec).map_err(|e| io.fail(EXIT_FAILED, e))?.0;
            let _ = writeln!(io.err, "note: evaluating the unfolded specification");
            Observer::new(&unfolded).map_err(|e| io.fail(EXIT_FAILED, e))?
        }
    };
    Ok(observer.prefix(&t, n, mode, limits))
}

fn render_values(values: &[streamwd::term::Term]) -> String {
    let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
    if shown.iter().all(|s| s.chars().count() == 1) {
        shown.concat()
    } else {
        shown.join(" ")
    }
}

fn eval(
    io: &mut Io<'_>,
    path: &Path,
    term: &str,
    n: usize,
    strategy: Strategy,
    limits: &Limits,
) -> Res {
    let spec = io.spec(path)?;
    let mode = match strategy {
        Strategy::Obs => PrefixMode::Obs,
        Strategy::Outermost => PrefixMode::Outermost,
    };
    let prefix = compute_prefix(io, &spec, term, n, mode, limits)?;
    let _ = writeln!(io.out, "{}", render_values(&prefix.values));
    match prefix.diagnostic() {
        None => Ok(EXIT_OK),
        Some(d) => {
            let _ = writeln!(io.err, "incomplete: {d}");
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn turtle(
    io: &mut Io<'_>,
    path: &Path,
    term: &str,
    cfg: &TurtleConfig,
    output: Option<&Path>,
    limits: &Limits,
) -> Res {
    let spec = io.spec(path)?;
    let universe = data_universe(spec.sigma_d(), spec.rd(), DEFAULT_CAP)
        .map_err(|e| io.fail(EXIT_FAILED, e))?;
    if universe.len() != 2 {
        return Err(io.fail(EXIT_FAILED, TurtleError::NonBooleanData(universe.len())));
    }
    let prefix = compute_prefix(io, &spec, term, cfg.steps, PrefixMode::Obs, limits)?;
    if let Some(d) = prefix.diagnostic() {
        return Err(io.fail(
            EXIT_UNKNOWN,
            format!("only {} element(s) computed: {d}", prefix.values.len()),
        ));
    }
    let bits =
        to_bits(&prefix.values, &universe, spec.sigma_d()).map_err(|e| io.fail(EXIT_FAILED, e))?;
    let svg = turtle_svg(&bits, cfg).map_err(|e| io.fail(EXIT_USAGE, e))?;
    io.emit(output, &svg)?;
    Ok(EXIT_OK)
}

fn goals(io: &mut Io<'_>, path: &Path, output: Option<&Path>) -> Res {
    let spec = io.spec(path)?;
    let (doubled, goals) = make_selfequality_goals(&spec);
    let spec_text = render_spec(&doubled);
    let goals_text = render_goals(&goals);
    match output {
        None => io.emit(None, &format!("{spec_text}\n{goals_text}"))?,
        Some(p) => {
            let mut spec_path = p.as_os_str().to_owned();
            spec_path.push(".spec");
            io.emit(Some(p), &goals_text)?;
            io.emit(Some(Path::new(&spec_path)), &spec_text)?;
        }
    }
    Ok(EXIT_OK)
}

fn certify(
    io: &mut Io<'_>,
    path: &Path,
    proof: &Path,
    against: Option<&Path>,
    back: Option<&Path>,
) -> Res {
    let a = io.spec(path)?;
    let Some(b_path) = against else {
        let script = io.script(proof, &a)?;
        let results = check_script(&a, &script);
        for (p, r) in script.proofs.iter().zip(&results) {
            let goal = format!("{} ~ {}", p.lhs, p.rhs);
            match r {
                ProofCheck::Valid => {
                    let _ = writeln!(io.out, "valid: {goal}");
                }
                ProofCheck::Invalid { step, reason, .. } => {
                    let _ = writeln!(io.out, "invalid: {goal}: step {step}: {reason}");
                }
            }
        }
        return Ok(if results.iter().all(ProofCheck::is_valid) {
            EXIT_OK
        } else {
            EXIT_FAILED
        });
    };
    let b = io.spec(b_path)?;
    let ab = io.script(proof, &b)?;
    let ba = match back {
        Some(p) => io.script(p, &a)?,
        None => Script::default(),
    };
    let verdict = check_preservation(&a, &b, &ab, &ba);
    let _ = writeln!(io.out, "{verdict}");
    Ok(if verdict.preserved() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

const SEARCH_WIDTH: usize = 2000;

fn suggest(io: &mut Io<'_>, path: &Path, c: &str, n: usize, search: bool, limits: &Limits) -> Res {
    let spec = io.spec(path)?;
    let anchor = suggest_anchor(&spec, c, n, limits).map_err(|e| {
        let code = match e {
            AnchorError::NotAConstant(_) => EXIT_USAGE,
            AnchorError::NotComputable(_) => EXIT_UNKNOWN,
            AnchorError::Transform(_) => EXIT_FAILED,
        };
        io.fail(code, e)
    })?;
    let _ = writeln!(io.out, "candidate: {}", anchor.anchor.equation());
    let _ = writeln!(io.out, "definition: {}", anchor.definition.equation());
    let _ = writeln!(io.out, "obligations:");
    let _ = write!(io.out, "{}", anchor.obligations);
    if search {
        let sides = [
            (&anchor.obligations.forward, &anchor.candidate),
            (&anchor.obligations.backward, &anchor.extended),
        ];
        for (rules, over) in sides {
            for r in rules.iter() {
                match search_proof(
                    over,
                    r.lhs(),
                    r.rhs(),
                    streamwd::equiv::MAX_SEARCH_DEPTH,
                    SEARCH_WIDTH,
                ) {
                    Some(p) => {
                        let _ = write!(io.out, "# found\n{p}");
                    }
                    None => {
                        let _ = writeln!(io.out, "# no short proof of {}", r.equation());
                    }
                }
            }
        }
    }
    Ok(EXIT_OK)
}
