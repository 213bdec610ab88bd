use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scod_core::perversity::{build_orbit_poset, build_perversity, enumerate_basis_labels, WeightBox};
use scod_core::torusmod::{run_sweep, TorusSweep};
use scod_core::verify::{run_verification, Mode, ParabolicChoice, Suite, VerifyConfig};
use scod_core::weyl::{parse_word, DEFAULT_CAP};
use scod_core::{CartanType, Error, RootSystem};

mod render;

#[derive(Parser)]
#[command(name = "scod", version, about = "Staggered codimension and perversity checks on partial flag varieties")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "SCOD_THREADS")]
    threads: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report violations.
    Verify(VerifyArgs),
    /// Staggered codimension table of the Schubert varieties of G/P.
    Scod(TableArgs),
    /// Closure-order Hasse diagram with scod and perversity labels.
    Poset(PosetArgs),
    /// Labels of the simple objects for a box of dominant-coordinate weights.
    Basis(BasisArgs),
    /// Compare the torus-model oracles with their closed forms.
    TorusCheck(TorusArgs),
    /// Cartan matrix, Dynkin diagram and positive roots.
    Roots(RootsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct VerifyArgs {
    /// Cartan type such as A3 or G2; repeatable.
    #[arg(long = "type", short = 't', required = true)]
    types: Vec<CartanType>,
    /// Comma-separated suites, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// 1-based simple-root indices such as `1,3`, `{}` for the Borel, or `all`.
    #[arg(long, default_value = "all")]
    parabolic: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = scod_core::verify::DEFAULT_SAMPLE_SIZE)]
    sample_size: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = scod_core::verify::DEFAULT_TORUS_TRIALS)]
    torus_trials: usize,
    /// Check a single element, given as a word such as `s1s2` or `1,2`.
    #[arg(long)]
    element: Option<String>,
    /// Refuse exhaustive enumeration of groups larger than this.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Include per-suite wall times (makes output run-dependent).
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "type", short = 't')]
    lie_type: CartanType,
    /// 1-based simple-root indices of the Levi, empty for the Borel.
    #[arg(long, default_value = "")]
    parabolic: String,
    /// Print the numbered Dynkin diagram first.
    #[arg(long)]
    show_diagram: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct PosetArgs {
    #[arg(long = "type", short = 't')]
    lie_type: CartanType,
    #[arg(long, default_value = "")]
    parabolic: String,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "dot")]
    format: PosetFormat,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long = "type", short = 't')]
    lie_type: CartanType,
    #[arg(long, default_value = "")]
    parabolic: String,
    /// Weight box in fundamental-weight coordinates: `0`, `lo:hi`, or one
    /// comma-separated range per coordinate.
    #[arg(long = "box", default_value = "0", allow_hyphen_values = true)]
    weight_box: String,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TorusArgs {
    /// Ambient dimension; drawn per trial when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Dimension of the fixed subspace; drawn per trial when omitted.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct RootsArgs {
    #[arg(long = "type", short = 't')]
    lie_type: CartanType,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Outcome of a subcommand: its output and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            if let Err(e) = emit(cli.output.as_ref(), &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Verify(a) => verify(a),
        Command::Scod(a) => scod_table(a),
        Command::Poset(a) => poset(a),
        Command::Basis(a) => basis(a),
        Command::TorusCheck(a) => torus_check(a),
        Command::Roots(a) => roots(a),
    }
}

/// `all`, `{}`/empty for the Borel, or 1-based indices like `1,3`.
fn parse_parabolic(s: &str, allow_all: bool) -> Result<ParabolicChoice, Error> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if t == "all" {
        return if allow_all {
            Ok(ParabolicChoice::All)
        } else {
            Err(Error::InvalidConfig("this command takes a single parabolic".into()))
        };
    }
    if t.is_empty() {
        return Ok(ParabolicChoice::Subset(Vec::new()));
    }
    t.split(',')
        .map(|p| match p.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::InvalidConfig(format!("bad parabolic index {p:?}"))),
        })
        .collect::<Result<_, _>>()
        .map(ParabolicChoice::Subset)
}

fn single_parabolic(sys: &RootSystem, s: &str) -> Result<scod_core::Parabolic, Error> {
    match parse_parabolic(s, false)? {
        ParabolicChoice::Subset(v) => sys.parabolic(&v),
        ParabolicChoice::All => unreachable!(),
    }
}

fn parse_suites(s: &str) -> Result<Vec<Suite>, Error> {
    if s.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    s.split(',').map(str::parse).collect()
}

fn verify(a: VerifyArgs) -> Result<Outcome, Error> {
    let mut config = VerifyConfig::new(a.types);
    config.suites = parse_suites(&a.suite)?;
    config.parabolic = parse_parabolic(&a.parabolic, true)?;
    config.mode = match a.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Sample => Mode::Sample,
    };
    config.sample_size = a.sample_size;
    config.seed = a.seed;
    config.torus_trials = a.torus_trials;
    config.element = a.element.as_deref().map(parse_word).transpose()?;
    config.cap = a.cap;
    config.timings = a.timings;
    let report = run_verification(&config)?;
    let text = match a.format {
        Format::Text => render::verify_text(&report),
        Format::Json => render::json(&report),
        Format::Csv => render::verify_csv(&report),
    };
    Ok(Outcome {
        text,
        pass: report.pass,
    })
}

fn scod_table(a: TableArgs) -> Result<Outcome, Error> {
    let sys = RootSystem::new(a.lie_type)?;
    let p = single_parabolic(&sys, &a.parabolic)?;
    let poset = build_orbit_poset(&sys, &p, a.cap)?;
    let mut text = String::new();
    if a.show_diagram {
        text.push_str(&sys.diagram());
        text.push('\n');
    }
    text.push_str(&match a.format {
        Format::Text => render::scod_text(&poset),
        Format::Json => render::json(&render::scod_rows(&poset)),
        Format::Csv => render::scod_csv(&poset),
    });
    Ok(Outcome::ok(text))
}

fn poset(a: PosetArgs) -> Result<Outcome, Error> {
    let sys = RootSystem::new(a.lie_type)?;
    let p = single_parabolic(&sys, &a.parabolic)?;
    let poset = build_orbit_poset(&sys, &p, a.cap)?;
    let perversity = build_perversity(&poset.graph);
    let pass = perversity.is_ok();
    if let Err(e) = &perversity {
        eprintln!("perversity construction failed: {e}");
    }
    let text = match a.format {
        PosetFormat::Dot => poset.to_dot(perversity.as_ref().ok()),
        PosetFormat::Json => render::json(&render::poset_view(&poset, perversity.as_ref().ok())),
    };
    Ok(Outcome { text, pass })
}

fn parse_box(s: &str, rank: usize) -> Result<WeightBox, Error> {
    let range = |r: &str| -> Result<(i64, i64), Error> {
        let bad = || Error::InvalidConfig(format!("bad weight range {r:?}"));
        let (lo, hi) = match r.split_once(':') {
            Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
            None => {
                let v = r.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    };
    let parts: Vec<&str> = s.split(',').collect();
    match parts.len() {
        1 => {
            let r = range(parts[0])?;
            Ok(WeightBox(vec![r; rank]))
        }
        n if n == rank => Ok(WeightBox(parts.iter().map(|p| range(p)).collect::<Result<_, _>>()?)),
        n => Err(Error::RankMismatch {
            expected: rank,
            got: n,
        }),
    }
}

fn basis(a: BasisArgs) -> Result<Outcome, Error> {
    let sys = RootSystem::new(a.lie_type)?;
    let p = single_parabolic(&sys, &a.parabolic)?;
    let bounds = parse_box(&a.weight_box, sys.rank())?;
    let poset = build_orbit_poset(&sys, &p, a.cap)?;
    let labels = enumerate_basis_labels(&sys, &poset, &bounds);
    let text = match a.format {
        Format::Text => render::basis_text(&sys, &p, &labels),
        Format::Json => render::json(&labels),
        Format::Csv => render::basis_csv(&labels),
    };
    Ok(Outcome::ok(text))
}

fn torus_check(a: TorusArgs) -> Result<Outcome, Error> {
    let mut sweep = TorusSweep::random(a.trials, a.seed);
    sweep.n = a.n;
    sweep.m = a.m;
    if let (Some(n), Some(m)) = (a.n, a.m) {
        if m > n {
            return Err(Error::InvalidModel(format!("m = {m} exceeds n = {n}")));
        }
    }
    let report = run_sweep(&sweep)?;
    let pass = report.failures.is_empty();
    let text = match a.format {
        Format::Text | Format::Csv => render::torus_text(&sweep, &report),
        Format::Json => render::json(&render::TorusView {
            schema: 1,
            pass,
            sweep: &sweep,
            report: &report,
        }),
    };
    Ok(Outcome { text, pass })
}

fn roots(a: RootsArgs) -> Result<Outcome, Error> {
    let sys = RootSystem::new(a.lie_type)?;
    let text = match a.format {
        Format::Json => render::json(&sys.describe()),
        Format::Text | Format::Csv => render::roots_text(&sys),
    };
    Ok(Outcome::ok(text))
}
