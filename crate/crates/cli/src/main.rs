use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ntcirc::circuit::text::{format_circuit, parse_circuit};
use ntcirc::circuit::{Axis, Circuit};
use ntcirc::decompose::compile_unitary;
use ntcirc::encoders::{build_rotation_encoder, build_single_qubit_universal, encode_angle, encode_single_qubit, Sign};
use ntcirc::neartrivial::{
    build_ca, build_cb_exact, build_cb_universal, build_cu_exact, build_cu_universal, encode_spec,
};
use ntcirc::qmath::text::parse_matrix;
use ntcirc::qmath::{NearTrivialSpec, SquareMatrix};
use ntcirc::sim::run;
use ntcirc::sim::text::{format_state, parse_state};
use ntcirc::BitString;

mod verify;

#[derive(Parser)]
#[command(
    name = "ntcirc",
    version,
    about = "Universal circuits for near-trivial transformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a circuit in text form.
    Build(BuildArgs),
    /// Run a circuit on a state and print the result.
    Run { circuit: PathBuf, state: PathBuf },
    /// Check a construction against its exact oracle.
    Verify(verify::VerifyArgs),
    /// Compile a unitary into programs for the universal circuit.
    Compile {
        matrix: PathBuf,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Ry,
    Rz,
    U1q,
    Ca,
    Cb,
    Cu,
}

#[derive(clap::Args)]
struct BuildArgs {
    target: Target,
    /// Write the circuit here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Encoding bits; selects the universal variant for cb and cu.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    sign: Sign,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta_prime: Option<f64>,
    /// Unitary to encode (u1q).
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Data basis states to encode for the universal cu circuit.
    #[arg(long)]
    x: Option<BitString>,
    #[arg(long)]
    y: Option<BitString>,
}

pub(crate) fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub(crate) fn read_matrix(path: &Path) -> Result<SquareMatrix> {
    parse_matrix(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn required<T>(value: Option<T>, flag: &str, target: &str) -> Result<T> {
    value.with_context(|| format!("{target} needs --{flag}"))
}

fn build(args: BuildArgs) -> Result<()> {
    let mut encoding = None;
    let circuit: Circuit = match args.target {
        Target::Ry | Target::Rz => {
            let axis = if matches!(args.target, Target::Ry) {
                Axis::Y
            } else {
                Axis::Z
            };
            let m = required(args.m, "m", "rotation encoder")?;
            if let Some(t) = args.theta {
                encoding = Some(encode_angle(t, m)?.to_string());
            }
            build_rotation_encoder(axis, args.sign, m)?
        }
        Target::U1q => {
            let m = required(args.m, "m", "u1q")?;
            if let Some(path) = &args.matrix {
                encoding = Some(encode_single_qubit(&read_matrix(path)?, m)?.to_string());
            }
            build_single_qubit_universal(m)?
        }
        Target::Ca => build_ca(required(args.n, "n", "ca")?)?,
        Target::Cb => match args.m {
            Some(m) => {
                if let Some(t) = args.theta {
                    encoding = Some(encode_angle(t, m)?.to_string());
                }
                build_cb_universal(m)?
            }
            None => build_cb_exact(args.theta.unwrap_or(0.0), args.theta_prime.unwrap_or(0.0))?,
        },
        Target::Cu => {
            let n = required(args.n, "n", "cu")?;
            match args.m {
                Some(m) => {
                    if let (Some(x), Some(y)) = (args.x, args.y) {
                        if x.len() != n || y.len() != n {
                            bail!("--x and --y must have {n} bits");
                        }
                        let spec = if x == y {
                            NearTrivialSpec::phase(x.value(), args.theta_prime.unwrap_or(0.0))
                        } else {
                            NearTrivialSpec::rotation(x.value(), y.value(), args.theta.unwrap_or(0.0))
                        };
                        encoding = Some(encode_spec(&spec, n, m)?.r().to_string());
                    } else if args.x.is_some() || args.y.is_some() {
                        bail!("--x and --y go together");
                    }
                    build_cu_universal(n, m)?
                }
                None => build_cu_exact(n, args.theta.unwrap_or(0.0), args.theta_prime.unwrap_or(0.0))?,
            }
        }
    };

    let text = format_circuit(&circuit);
    match &args.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            if let Some(e) = encoding {
                println!("encoding: {e}");
            }
        }
        None => {
            // keep standard output a parseable circuit
            print!("{text}");
            if let Some(e) = encoding {
                eprintln!("encoding: {e}");
            }
        }
    }
    Ok(())
}

fn run_circuit(circuit: &Path, state: &Path) -> Result<()> {
    let c = parse_circuit(&read(circuit)?).with_context(|| format!("in {}", circuit.display()))?;
    let s = parse_state(&read(state)?).with_context(|| format!("in {}", state.display()))?;
    if c.width() != s.qubit_count() {
        bail!("circuit has {} qubits but the state has {}", c.width(), s.qubit_count());
    }
    print!("{}", format_state(&run(&c, &s)?));
    Ok(())
}

fn compile(matrix: &Path, m: usize) -> Result<()> {
    let u = read_matrix(matrix)?;
    let d = u.dim();
    if !d.is_power_of_two() {
        bail!("dimension {d} is not a power of two");
    }
    let n = d.trailing_zeros() as usize;
    print!("{}", compile_unitary(&u, n, m)?);
    Ok(())
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build(args) => build(args)?,
        Command::Run { circuit, state } => run_circuit(&circuit, &state)?,
        Command::Verify(args) => return verify::verify(args),
        Command::Compile { matrix, m } => compile(&matrix, m)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    };
    let _ = std::io::stdout().flush();
    code
}
