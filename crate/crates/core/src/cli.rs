//! Command-line front end.
//!
//! Results go to stdout as hex keys or `key=value` lines; diagnostics go to
//! stderr. Exit codes: 0 ok, 2 parameter, 3 format, 4 decode failure,
//! 5 I/O.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::algebra::GroupAlgebra;
use crate::bench;
use crate::error::{Error, FormatError};
use crate::field::{Field, FieldParams};
use crate::group::GroupDescriptor;
use crate::kem::{self, Ciphertext, KemParams, PublicKey, SecretKey};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAM: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_DECODE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "ga-lrpc", version, about = "Group-algebra LRPC codes and ROLLO-I KEM")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair.
    Keygen {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        sk: PathBuf,
    },
    /// Encapsulate a fresh key to a public key.
    Encap {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the shared key (hex) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the shared key from a ciphertext.
    Decap {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a group's properties and Cayley table.
    Group {
        #[arg(long)]
        group: String,
    },
    /// Measure the decoding failure rate over full KEM cycles.
    BenchDfr {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Measure the fraction of invertible elements in F_{q^m}G.
    UnitDensity {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Enumerate every element instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub m: usize,
    /// Either the full `q=..,m=..,mod=..` form or the coefficient list
    /// `c_0,...,c_m`. Defaults to the preset modulus.
    #[arg(long)]
    pub modulus: Option<String>,
    /// `cyclic:<k>`, `dihedral:<k>` or `file:<path>`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long)]
    pub lambda: usize,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Lib(Error::Format(e))
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) => EXIT_IO,
            CliError::Lib(Error::Format(_)) => EXIT_FORMAT,
            CliError::Lib(Error::DecapFailure | Error::DecodeFailure) => EXIT_DECODE,
            CliError::Lib(_) => EXIT_PARAM,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

pub fn parse_field(q: u32, m: usize, modulus: Option<&str>) -> Result<Field, Error> {
    let params = match modulus {
        None => FieldParams::preset(q, m)?,
        Some(text) if text.trim_start().starts_with("q=") => {
            let p: FieldParams = text.parse()?;
            if p.q() != q || p.m() != m {
                return Err(Error::Param(format!("modulus {p} disagrees with --q {q} --m {m}")));
            }
            p
        }
        Some(text) => {
            let coeffs = text
                .split(',')
                .map(|c| c.trim().parse::<u8>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Error::Param(format!("bad modulus {text:?}")))?;
            if coeffs.len() != m + 1 {
                return Err(Error::Param(format!("modulus needs m + 1 = {} coefficients", m + 1)));
            }
            FieldParams::new(q, coeffs)?
        }
    };
    Ok(Field::new(params))
}

fn parse_group(spec: &str) -> Result<GroupDescriptor, CliError> {
    let (family, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Param(format!("group spec {spec:?} is not family:arg")))?;
    let number = || {
        arg.parse::<usize>()
            .map_err(|_| CliError::Lib(Error::Param(format!("bad group parameter {arg:?}"))))
    };
    match family {
        "cyclic" => Ok(GroupDescriptor::cyclic(number()?)?),
        "dihedral" => Ok(GroupDescriptor::dihedral(number()?)?),
        "file" => {
            let text = fs::read_to_string(arg).map_err(|e| CliError::Io(arg.into(), e))?;
            Ok(GroupDescriptor::from_cayley_text(&text)?)
        }
        _ => Err(Error::Param(format!("unknown group family {family:?}")).into()),
    }
}

fn build_algebra(args: &AlgebraArgs) -> Result<GroupAlgebra, CliError> {
    let field = parse_field(args.q, args.m, args.modulus.as_deref())?;
    let group = parse_group(&args.group)?;
    Ok(GroupAlgebra::new(field, group))
}

fn build_params(args: &SchemeArgs) -> Result<KemParams, CliError> {
    Ok(KemParams::from_algebra(build_algebra(&args.algebra)?, args.lambda, args.r)?)
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Io(path.into(), e))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(path.into(), e))
}

fn seeded(seed: Option<u64>, err: &mut dyn Write) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => {
            let _ = writeln!(err, "no --seed given, using system randomness");
            ChaCha20Rng::from_os_rng()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io("<stdout>".into(), e);
    match cli.command {
        Command::Keygen { scheme, seed, pk, sk } => {
            let params = build_params(&scheme)?;
            for w in params.warnings() {
                let _ = writeln!(err, "warning: {w}");
            }
            let mut rng = seeded(seed, err);
            let (public, secret) = kem::keygen(&params, &mut rng)?;
            write(&pk, &public.to_bytes())?;
            write(&sk, &secret.to_bytes())?;
            let _ = writeln!(
                err,
                "field {} | group {} | lambda={} r={} | code length {}",
                params.field().params(),
                params.group(),
                params.lambda(),
                params.r(),
                2 * params.algebra().n()
            );
        }
        Command::Encap { pk, ct, seed, out: key_out } => {
            let public = PublicKey::from_bytes(&read(&pk)?)?;
            let mut rng = seeded(seed, err);
            let (ciphertext, key) = kem::encap(&public, &mut rng)?;
            write(&ct, &ciphertext.to_bytes())?;
            if let Some(path) = key_out {
                write(&path, format!("{key}\n").as_bytes())?;
            }
            writeln!(out, "{key}").map_err(io)?;
        }
        Command::Decap { sk, ct, out: key_out } => {
            let secret = SecretKey::from_bytes(&read(&sk)?)?;
            let ciphertext = Ciphertext::from_bytes(&read(&ct)?)?;
            let key = kem::decap(&secret, &ciphertext)?;
            if let Some(path) = key_out {
                write(&path, format!("{key}\n").as_bytes())?;
            }
            writeln!(out, "{key}").map_err(io)?;
        }
        Command::Group { group } => {
            let g = parse_group(&group)?;
            write!(
                out,
                "family={}\norder={}\nabelian={}\ncyclic={}\n{}",
                g.family(),
                g.order(),
                g.is_abelian(),
                g.is_cyclic(),
                g.to_cayley_text()
            )
            .map_err(io)?;
        }
        Command::BenchDfr { scheme, seed, trials } => {
            if trials == 0 {
                return Err(Error::Param("--trials must be at least 1".into()).into());
            }
            let params = build_params(&scheme)?;
            for w in params.warnings() {
                let _ = writeln!(err, "warning: {w}");
            }
            let start = Instant::now();
            let report = bench::run_dfr(&params, trials, seed)?;
            write!(out, "{}", report.to_kv()).map_err(io)?;
            let _ = writeln!(err, "wall_time_s={:.3}", start.elapsed().as_secs_f64());
        }
        Command::UnitDensity { algebra, seed, trials, exhaustive } => {
            let alg = build_algebra(&algebra)?;
            let report = if exhaustive {
                bench::unit_density_exhaustive(&alg)?
            } else {
                bench::unit_density(&alg, trials, seed)
            };
            write!(out, "{}", report.to_kv()).map_err(io)?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAM } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
