use std::f64::consts::{PI, TAU};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use rand::Rng;

use ntcirc::circuit::{gate_set_report, Circuit};
use ntcirc::decompose::{build_two_level_circuit, compile_unitary};
use ntcirc::encoders::{build_single_qubit_universal, encode_single_qubit, single_qubit_layout};
use ntcirc::neartrivial::{build_cu_universal, cu_layout, encode_spec, program_operator};
use ntcirc::qmath::{
    distance_up_to_global_phase, embed_two_level, near_trivial_matrix, operator_distance, NearTrivialSpec, SquareMatrix,
};
use ntcirc::random::{random_angle, random_unitary, seeded_rng};
use ntcirc::sim::{circuit_unitary, effective_data_operator};
use ntcirc::BitString;

use crate::read_matrix;

/// Slack for floating-point error on top of each analytic bound.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Neartrivial,
    U1q,
    Twolevel,
    Compile,
}

#[derive(clap::Args)]
pub struct VerifyArgs {
    mode: Mode,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    x: Option<BitString>,
    #[arg(long)]
    y: Option<BitString>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta_prime: Option<f64>,
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Seed for every value not given on the command line.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

struct Report {
    lines: Vec<String>,
    failures: Vec<String>,
}

impl Report {
    fn new(mode: &str) -> Self {
        Report {
            lines: vec![format!("mode: {mode}")],
            failures: Vec::new(),
        }
    }

    fn line(&mut self, s: String) {
        self.lines.push(s);
    }

    fn gates(&mut self, c: &Circuit) {
        let census = gate_set_report(c);
        self.line(format!(
            "gates: {} ({} X, {} rotations, universal set: {})",
            census.total(),
            census.x_gates(),
            census.rotations(),
            if census.passes_universal_set() { "yes" } else { "no" }
        ));
    }

    fn check(&mut self, metric: &str, value: f64, bound: f64) {
        self.line(format!("{metric}: {value:.6e}"));
        if value.is_nan() || value > bound {
            self.failures.push(format!("{metric} {value:.6e} exceeds {bound:.6e}"));
        }
    }

    fn finish(self) -> ExitCode {
        for l in &self.lines {
            println!("{l}");
        }
        if self.failures.is_empty() {
            println!("result: PASS");
            ExitCode::SUCCESS
        } else {
            println!("result: FAIL");
            for f in &self.failures {
                eprintln!("verification failed: {f}");
            }
            ExitCode::from(1)
        }
    }
}

fn pow2(m: usize) -> f64 {
    (2.0f64).powi(m as i32)
}

fn bits_or_random(b: Option<BitString>, n: usize, rng: &mut impl Rng) -> Result<BitString> {
    match b {
        Some(b) if b.len() != n => bail!("bit string {b} does not have {n} bits"),
        Some(b) => Ok(b),
        None => Ok(BitString::new(rng.random_range(0..1usize << n), n)?),
    }
}

fn data_width(args: &VerifyArgs) -> Result<usize> {
    match (args.n, &args.x, &args.y) {
        (Some(n), _, _) => Ok(n),
        (None, Some(x), _) => Ok(x.len()),
        (None, None, Some(y)) => Ok(y.len()),
        (None, None, None) => bail!("give --n or --x/--y"),
    }
}

fn matrix_or_random(args: &VerifyArgs, d: usize, rng: &mut impl Rng) -> Result<SquareMatrix> {
    Ok(match &args.matrix {
        Some(path) => read_matrix(path)?,
        None => random_unitary(d, rng),
    })
}

fn neartrivial(args: &VerifyArgs) -> Result<Report> {
    let mut rng = seeded_rng(args.seed);
    let n = data_width(args)?;
    let m = args.m.context("neartrivial needs --m")?;
    let x = bits_or_random(args.x, n, &mut rng)?;
    let y = bits_or_random(args.y, n, &mut rng)?;
    let theta = args.theta.unwrap_or_else(|| random_angle(&mut rng));
    let theta_prime = args.theta_prime.unwrap_or_else(|| random_angle(&mut rng));

    let (spec, bound) = if x == y {
        (NearTrivialSpec::phase(x.value(), theta_prime), TAU / pow2(m))
    } else {
        (NearTrivialSpec::rotation(x.value(), y.value(), theta), PI / pow2(m))
    };
    let program = encode_spec(&spec, n, m)?;
    let circuit = build_cu_universal(n, m)?;
    let op = effective_data_operator(&circuit, &cu_layout(n, m)?, &program.assignment())?;
    let want = near_trivial_matrix(&spec, n)?;

    let mut r = Report::new("neartrivial");
    if spec.is_phase() {
        r.line(format!("n={n} m={m} x={x} y={y} theta_prime={theta_prime:?}"));
    } else {
        r.line(format!("n={n} m={m} x={x} y={y} theta={theta:?}"));
    }
    r.line(format!("program: {program}"));
    r.gates(&circuit);
    r.line(format!("distance: {:.6e}", operator_distance(&want, &op.matrix)?));
    r.check("leakage", op.leakage, ntcirc::neartrivial::LEAKAGE_THRESHOLD);
    r.line(format!("bound: {bound:.6e}"));
    r.check(
        "distance_up_to_phase",
        distance_up_to_global_phase(&want, &op.matrix)?.distance,
        bound + BOUND_SLACK,
    );
    Ok(r)
}

fn single_qubit(args: &VerifyArgs) -> Result<Report> {
    let mut rng = seeded_rng(args.seed);
    let m = args.m.context("u1q needs --m")?;
    let u = matrix_or_random(args, 2, &mut rng)?;
    let enc = encode_single_qubit(&u, m)?;
    let circuit = build_single_qubit_universal(m)?;
    let op = effective_data_operator(&circuit, &single_qubit_layout(m)?, &enc.assignment())?;
    let bound = 3.0 * PI / pow2(m + 1);

    let mut r = Report::new("u1q");
    r.line(format!("m={m} encoding: {enc}"));
    r.gates(&circuit);
    r.line(format!("distance: {:.6e}", operator_distance(&u, &op.matrix)?));
    r.check("leakage", op.leakage, ntcirc::neartrivial::LEAKAGE_THRESHOLD);
    r.line(format!("bound: {bound:.6e}"));
    r.check(
        "distance_up_to_phase",
        distance_up_to_global_phase(&u, &op.matrix)?.distance,
        bound + BOUND_SLACK,
    );
    Ok(r)
}

fn two_level(args: &VerifyArgs) -> Result<Report> {
    let mut rng = seeded_rng(args.seed);
    let n = data_width(args)?;
    let x = bits_or_random(args.x, n, &mut rng)?;
    let y = bits_or_random(args.y, n, &mut rng)?;
    let u = matrix_or_random(args, 2, &mut rng)?;
    let tl = build_two_level_circuit(x, y, &u)?;
    let got = circuit_unitary(&tl.circuit)?;
    let want = embed_two_level(&u, x.value(), y.value(), n)?;
    let bound = 1e-10;

    let gray: Vec<String> = tl.gray_code.iter().map(|g| g.to_string()).collect();
    let mut r = Report::new("twolevel");
    r.line(format!("n={n} x={x} y={y}"));
    r.line(format!("gray code: {}", gray.join(" ")));
    r.gates(&tl.circuit);
    r.line("leakage: none (no ancillas)".to_string());
    r.line(format!("bound: {bound:.6e}"));
    r.line(format!(
        "distance_up_to_phase: {:.6e}",
        distance_up_to_global_phase(&want, &got)?.distance
    ));
    r.check("distance", operator_distance(&want, &got)?, bound);
    Ok(r)
}

fn compiled(args: &VerifyArgs) -> Result<Report> {
    let mut rng = seeded_rng(args.seed);
    let m = args.m.context("compile needs --m")?;
    let u = match (&args.matrix, args.n) {
        (Some(path), _) => read_matrix(path)?,
        (None, Some(n)) => random_unitary(1 << n, &mut rng),
        (None, None) => bail!("compile needs --matrix or --n"),
    };
    let d = u.dim();
    if !d.is_power_of_two() {
        bail!("dimension {d} is not a power of two");
    }
    let n = d.trailing_zeros() as usize;
    let c = compile_unitary(&u, n, m)?;
    let k = c.programs.len();

    let mut product = SquareMatrix::identity(d);
    let mut leakage: f64 = 0.0;
    for p in &c.programs {
        let op = program_operator(p)?;
        leakage = leakage.max(op.leakage);
        product = &op.matrix * &product;
    }
    let bound = k as f64 * TAU / pow2(m);

    let mut r = Report::new("compile");
    r.line(format!("n={n} m={m} factors: {k}"));
    let per_program = build_cu_universal(n, m)?;
    r.gates(&per_program);
    r.line(format!("total gates: {}", k * per_program.gate_count()));
    r.line(format!("distance: {:.6e}", operator_distance(&u, &product)?));
    r.check("leakage", leakage, ntcirc::neartrivial::LEAKAGE_THRESHOLD);
    r.line(format!("bound: {bound:.6e}"));
    r.check(
        "distance_up_to_phase",
        distance_up_to_global_phase(&u, &product)?.distance,
        bound + BOUND_SLACK,
    );
    Ok(r)
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let report = match args.mode {
        Mode::Neartrivial => neartrivial(&args)?,
        Mode::U1q => single_qubit(&args)?,
        Mode::Twolevel => two_level(&args)?,
        Mode::Compile => compiled(&args)?,
    };
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_fails_on_any_violation() {
        let mut r = Report::new("t");
        r.check("a", 1e-12, 1e-10);
        assert!(r.failures.is_empty());
        r.check("b", 2.0, 1.0);
        r.check("c", f64::NAN, 1.0);
        assert_eq!(r.failures.len(), 2);
        assert!(r.failures[0].starts_with("b 2.000000e0 exceeds"));
        assert_eq!(r.finish(), ExitCode::from(1));
    }

    #[test]
    fn report_passes_when_clean() {
        let mut r = Report::new("t");
        r.check("a", 0.5, 0.5);
        assert_eq!(r.finish(), ExitCode::SUCCESS);
    }
}
