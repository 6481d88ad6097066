//! `bialgebra`: verify, enumerate and inspect A∞-bialgebras of type (m,n).
//!
//! Exit codes: 0 all relations hold, 1 a relation fails, 2 input or parse
//! error, 3 the degree condition `|ω| = m+n-3` fails, 4 inadmissible
//! parameters.

use std::path::PathBuf;
use std::process::ExitCode;

use bialgebra::calculus::BarSign;
use bialgebra::catalog::{self, EnumerationWindow, TypeParams};
use bialgebra::relations::{self, Conventions, Rel2Convention, VerificationMode};
use bialgebra::{report, show, BaseRing, Error, HopfStructure};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_RELATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DEGREE: u8 = 3;
const EXIT_INADMISSIBLE: u8 = 4;

#[derive(Parser)]
#[command(name = "bialgebra", version, about = "Exact verification of A∞-bialgebras of type (m,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every applicable structure relation.
    Verify(VerifyArgs),
    /// List admissible (m,n,p,q) for the exterior family.
    Enumerate(EnumerateArgs),
    /// Evaluate an expression such as `delta3(omega(y|y))`.
    Show(ShowArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Ex1,
    Theorem1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Z2,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// termwise for the exterior family, otherwise exact over Z2 and
    /// termwise elsewhere
    Auto,
    Exact,
    Termwise,
}

#[derive(Clone, Copy, ValueEnum)]
enum BarArg {
    Relation,
    Negated,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel2Arg {
    Definition,
    Display,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct ParamArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Base ring of the exterior coefficients.
    #[arg(long, value_enum, default_value = "z2")]
    base: Base,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum, conflicts_with = "file", required_unless_present = "file")]
    builtin: Option<Builtin>,
    /// Structure description file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "auto")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "relation")]
    bar_sign: BarArg,
    #[arg(long, value_enum, default_value = "definition")]
    rel2: Rel2Arg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(clap::Args)]
struct EnumerateArgs {
    #[arg(long)]
    m_max: usize,
    #[arg(long)]
    q_cap: usize,
    /// Largest n (default 3m-3 for each m).
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(clap::Args)]
struct ShowArgs {
    /// `ex1`, `theorem1:m,n,p,q` or a structure description file.
    source: String,
    expression: String,
    #[arg(long, value_enum, default_value = "z2")]
    base: Base,
    #[arg(long, value_enum, default_value = "relation")]
    bar_sign: BarArg,
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Inadmissible(_) | Error::NotHopf(_) => EXIT_INADMISSIBLE,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

fn base_ring(b: Base) -> BaseRing {
    match b {
        Base::Z2 => BaseRing::Z2,
        Base::Q => BaseRing::Rationals,
    }
}

fn bar_sign(b: BarArg) -> BarSign {
    match b {
        BarArg::Relation => BarSign::Relation,
        BarArg::Negated => BarSign::Negated,
    }
}

fn theorem1(m: usize, n: usize, p: usize, q: usize, base: Base) -> Result<HopfStructure, Failure> {
    Ok(catalog::make_theorem1(TypeParams::new(m, n, p, q)?, base_ring(base))?)
}

fn read_file(path: &PathBuf) -> Result<HopfStructure, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    Ok(bialgebra::describe::parse(&text)?)
}

fn run_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let h = match (args.builtin, &args.file) {
        (Some(Builtin::Ex1), _) => catalog::make_ex1(),
        (Some(Builtin::Theorem1), _) => {
            let ParamArgs { m, n, p, q, base } = args.params;
            match (m, n, p, q) {
                (Some(m), Some(n), Some(p), Some(q)) => theorem1(m, n, p, q, base)?,
                _ => return Err(Failure(EXIT_INPUT, "theorem1 needs --m, --n, --p and --q".into())),
            }
        }
        (None, Some(path)) => read_file(path)?,
        (None, None) => return Err(Failure(EXIT_INPUT, "give --builtin or --file".into())),
    };
    let mode = match args.mode {
        Mode::Exact => VerificationMode::Exact,
        Mode::Termwise => VerificationMode::TermwiseZero,
        Mode::Auto if matches!(args.builtin, Some(Builtin::Theorem1)) => VerificationMode::TermwiseZero,
        Mode::Auto if h.space().ring().is_char_two() => VerificationMode::Exact,
        Mode::Auto => VerificationMode::TermwiseZero,
    };
    let conventions = Conventions {
        bar: bar_sign(args.bar_sign),
        relation2: match args.rel2 {
            Rel2Arg::Definition => Rel2Convention::Definition,
            Rel2Arg::Display => Rel2Convention::Display,
        },
    };
    let v = relations::verify(&h, mode, conventions)?;
    match args.format {
        Format::Text => print!("{}", report::verification_text(&v)),
        Format::Json => println!("{}", report::verification_json(&v)),
    }
    Ok(if !v.degree.passed() {
        EXIT_DEGREE
    } else if !v.relations_passed() {
        EXIT_RELATION
    } else {
        0
    })
}

fn run_enumerate(args: EnumerateArgs) -> Result<u8, Failure> {
    if args.m_max < 2 {
        return Err(Failure(EXIT_INPUT, "--m-max must be at least 2".into()));
    }
    let window = EnumerationWindow {
        m_max: args.m_max,
        q_cap: args.q_cap,
        n_max: args.n_max,
    };
    let types = catalog::enumerate_types(window);
    match args.format {
        Format::Text => print!("{}", report::types_text(&types)),
        Format::Json => println!("{}", report::types_json(&types)),
    }
    Ok(0)
}

fn parse_source(source: &str, base: Base) -> Result<HopfStructure, Failure> {
    if source == "ex1" {
        return Ok(catalog::make_ex1());
    }
    if let Some(rest) = source.strip_prefix("theorem1:") {
        let nums: Vec<usize> = rest
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure(EXIT_INPUT, format!("expected theorem1:m,n,p,q, found `{source}`")))?;
        return match nums.as_slice() {
            [m, n, p, q] => theorem1(*m, *n, *p, *q, base),
            _ => Err(Failure(EXIT_INPUT, format!("expected theorem1:m,n,p,q, found `{source}`"))),
        };
    }
    read_file(&PathBuf::from(source))
}

fn run_show(args: ShowArgs) -> Result<u8, Failure> {
    let h = parse_source(&args.source, args.base)?;
    let value = show::evaluate(&h, &args.expression, bar_sign(args.bar_sign))?;
    println!("{value}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => run_verify(a),
        Command::Enumerate(a) => run_enumerate(a),
        Command::Show(a) => run_show(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
