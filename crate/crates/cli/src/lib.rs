//! The `pic2ha` command-line tool as a library: [`run`] parses arguments, executes one command
//! and returns the report together with the exit status.

pub mod cache;
mod commands;
mod report;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use pic2ha::derived::AdditiveFunctor;
use pic2ha::zlin::FgAbPresentation;
use pic2ha::Error;

pub use report::Format;

#[derive(Parser, Debug)]
#[command(name = "pic2ha", version, about = "Homological algebra of symmetric 2-groups")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Resolution cache directory (default `.pic2ha-cache`, or `$PIC2HA_CACHE`).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form `S = U M V` of a matrix file.
    Snf { file: PathBuf },
    /// Homotopy groups of a 2-group file.
    Pi { file: PathBuf },
    /// Homology 2-group of a complex file.
    Homology {
        file: PathBuf,
        #[arg(long)]
        degree: i64,
    },
    /// Projective resolution of a 2-group, with exactness certificates.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Left derived functor of a 2-group.
    Derived {
        file: PathBuf,
        #[arg(long)]
        functor: FunctorSpec,
        #[arg(long)]
        degree: usize,
        /// Resolution length; at least `degree + 2` is used.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Long sequence of derived functors of an extension.
    Longseq {
        file: PathBuf,
        #[arg(long)]
        functor: FunctorSpec,
        #[arg(long)]
        length: usize,
    },
    /// Runs every certificate that applies to a file.
    Check { file: PathBuf },
    /// Derived tensor values of cyclic groups against the classical groups.
    Table {
        #[arg(long, value_enum)]
        functor: TableFunctor,
        #[arg(long)]
        range: RangeSpec,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFunctor {
    Tensor,
}

/// `tensor:<group>` or `hom:<group>`, where a group is `0`, `Z`, `Z^r`, `Z/n` or a `+`-sum.
#[derive(Clone, Debug)]
pub struct FunctorSpec(pub AdditiveFunctor);

impl std::str::FromStr for FunctorSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, group) = s.split_once(':').ok_or("expected `tensor:<group>` or `hom:<group>`")?;
        let b = parse_group(group)?;
        match kind.trim() {
            "tensor" => Ok(FunctorSpec(AdditiveFunctor::tensor(b))),
            "hom" => Ok(FunctorSpec(AdditiveFunctor::hom(b))),
            k => Err(format!("unknown functor kind `{k}`")),
        }
    }
}

pub fn parse_group(s: &str) -> Result<FgAbPresentation, String> {
    let mut g = FgAbPresentation::trivial();
    for part in s.split('+').map(str::trim) {
        let summand = match part {
            "0" => FgAbPresentation::trivial(),
            "Z" => FgAbPresentation::free(1),
            _ => {
                if let Some(r) = part.strip_prefix("Z^") {
                    let r: usize = r.parse().map_err(|_| format!("bad rank in `{part}`"))?;
                    if r > 64 {
                        return Err(format!("rank {r} is too large"));
                    }
                    FgAbPresentation::free(r)
                } else if let Some(n) = part.strip_prefix("Z/") {
                    let n: i64 = n.parse().map_err(|_| format!("bad order in `{part}`"))?;
                    if n < 1 {
                        return Err(format!("order must be positive in `{part}`"));
                    }
                    FgAbPresentation::cyclic(n)
                } else {
                    return Err(format!("cannot read group `{part}`"));
                }
            }
        };
        g = g.direct_sum(&summand);
    }
    Ok(g)
}

/// `lo..hi`, both ends included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeSpec {
    pub lo: i64,
    pub hi: i64,
}

impl std::str::FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once("..").ok_or("expected `lo..hi`")?;
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
        if lo < 1 || hi < lo || hi > 64 {
            return Err("range must satisfy 1 <= lo <= hi <= 64".into());
        }
        Ok(RangeSpec { lo, hi })
    }
}

/// Exit status classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable input or invalid options.
    Input(String),
    /// A certificate did not hold.
    Certificate(String),
    /// A computed value disagrees with the classical oracle.
    Oracle(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Certificate(_) => 2,
            Failure::Oracle(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Certificate(m) => write!(f, "certificate failure: {m}"),
            Failure::Oracle(m) => write!(f, "oracle mismatch: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::IndexOutOfRange { .. } | Error::UnsupportedFunctorKind(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Certificate(e.to_string()),
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let mut r = report::Report::new(cli.format);
    let cache = cache::Cache::new(cache::Cache::resolve_dir(cli.cache.as_deref()));
    let result = commands::dispatch(&cli.command, &cache, &mut r);
    let (stdout, mut stderr) = r.finish();
    let code = match result {
        Ok(()) => 0,
        Err(f) => {
            stderr.push_str(&format!("{f}\n"));
            f.code()
        }
    };
    Outcome { code, stdout, stderr }
}
