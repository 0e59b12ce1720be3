use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{build_cu_universal, check_m, check_n, cu_layout};
use crate::bits::BitString;
use crate::circuit::Circuit;
use crate::encoders::{encode_angle, AngleEncoding};
use crate::qmath::{NearTrivialSpec, SquareMatrix};
use crate::sim::{effective_data_operator, run_sparse, EffectiveOperator, SparseState, StateVector};
use crate::{Error, Result};

/// Initial value of the flag register `b`, i.e. `|10⟩`.
pub const B_INIT: usize = 0b10;

/// Largest ancilla leakage tolerated before a run is treated as broken.
pub const LEAKAGE_THRESHOLD: f64 = 1e-10;

/// Ancilla settings that make the universal circuit perform one near-trivial
/// transformation.
///
/// Text form: `n=<n> m=<m> x=<bits> y=<bits> b=10 r=<bits>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodedProgram {
    x: BitString,
    y: BitString,
    r: AngleEncoding,
}

impl EncodedProgram {
    pub fn new(x: BitString, y: BitString, r: AngleEncoding) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::invalid(format!("x has {} bits but y has {}", x.len(), y.len())));
        }
        check_n(x.len())?;
        Ok(EncodedProgram { x, y, r })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn m(&self) -> usize {
        self.r.m()
    }

    pub fn x(&self) -> BitString {
        self.x
    }

    pub fn y(&self) -> BitString {
        self.y
    }

    pub fn r(&self) -> AngleEncoding {
        self.r
    }

    /// Block values for [`effective_data_operator`] on [`cu_layout`].
    pub fn assignment(&self) -> [(&'static str, usize); 4] {
        [
            ("x", self.x.value()),
            ("y", self.y.value()),
            ("b", B_INIT),
            ("r", self.r.value()),
        ]
    }

    /// The transformation the universal circuit performs under this setting:
    /// rotation by `0.r·2π` when `x ≠ y`, phase `0.r·4π` when `x = y`.
    pub fn decoded_spec(&self) -> NearTrivialSpec {
        let (x, y) = (self.x.value(), self.y.value());
        if x == y {
            NearTrivialSpec::phase(x, self.r.decode_scaled(2.0 * TAU))
        } else {
            NearTrivialSpec::rotation(x, y, self.r.decode())
        }
    }

    fn ancilla_index(&self) -> usize {
        let n = self.n();
        let m = self.m();
        ((((self.x.value() << n) | self.y.value()) << 2 | B_INIT) << m) | self.r.value()
    }
}

impl fmt::Display for EncodedProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} x={} y={} b=10 r={}",
            self.n(),
            self.m(),
            self.x,
            self.y,
            self.r
        )
    }
}

impl FromStr for EncodedProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields: [Option<&str>; 6] = [None; 6];
        const KEYS: [&str; 6] = ["n", "m", "x", "y", "b", "r"];
        for tok in s.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value, found {tok:?}")))?;
            let slot = KEYS
                .iter()
                .position(|key| *key == k)
                .ok_or_else(|| Error::invalid(format!("unknown field {k:?}")))?;
            if fields[slot].replace(v).is_some() {
                return Err(Error::invalid(format!("duplicate field {k:?}")));
            }
        }
        let get = |i: usize| fields[i].ok_or_else(|| Error::invalid(format!("missing field {:?}", KEYS[i])));
        let n: usize = get(0)?
            .parse()
            .map_err(|_| Error::invalid(format!("invalid n {:?}", fields[0])))?;
        let m: usize = get(1)?
            .parse()
            .map_err(|_| Error::invalid(format!("invalid m {:?}", fields[1])))?;
        let x: BitString = get(2)?.parse()?;
        let y: BitString = get(3)?.parse()?;
        if get(4)? != "10" {
            return Err(Error::invalid("b must be 10"));
        }
        let r: AngleEncoding = get(5)?.parse()?;
        if x.len() != n || y.len() != n {
            return Err(Error::invalid(format!("x and y must have n={n} bits")));
        }
        if r.m() != m {
            return Err(Error::invalid(format!("r must have m={m} bits")));
        }
        EncodedProgram::new(x, y, r)
    }
}

/// Encodes `spec` for the universal circuit with an `m`-bit register. A phase
/// `θ′` is encoded as `θ′/2`, since the register is read as a fraction of `4π`
/// for phases.
pub fn encode_spec(spec: &NearTrivialSpec, n: usize, m: usize) -> Result<EncodedProgram> {
    check_n(n)?;
    check_m(m)?;
    let x = BitString::new(spec.x, n)?;
    let y = BitString::new(spec.y, n)?;
    let r = if spec.is_phase() {
        encode_angle(spec.theta_prime / 2.0, m)?
    } else {
        encode_angle(spec.theta, m)?
    };
    EncodedProgram::new(x, y, r)
}

pub fn format_programs(programs: &[EncodedProgram]) -> String {
    programs.iter().map(|p| format!("{p}\n")).collect()
}

/// Parses one program per line; blank lines and `#` comments are skipped.
pub fn parse_programs(text: &str) -> Result<Vec<EncodedProgram>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p: EncodedProgram = line.parse().map_err(|e: Error| match e {
            Error::InvalidArgument(msg) => Error::parse(i + 1, msg),
            other => Error::parse(i + 1, other.to_string()),
        })?;
        out.push(p);
    }
    Ok(out)
}

fn check_leakage(leakage: f64) -> Result<()> {
    if leakage > LEAKAGE_THRESHOLD {
        return Err(Error::Leakage {
            leakage,
            threshold: LEAKAGE_THRESHOLD,
        });
    }
    Ok(())
}

/// Effective data operator of the universal circuit under `program`.
pub fn program_operator(program: &EncodedProgram) -> Result<EffectiveOperator> {
    let circuit = build_cu_universal(program.n(), program.m())?;
    effective_data_operator(&circuit, &cu_layout(program.n(), program.m())?, &program.assignment())
}

/// Operator of running `programs` through the universal circuit in order,
/// i.e. `O_K ⋯ O_1`. Every program must have the given `n` and `m`, and each
/// run must restore its ancillas.
pub fn programs_operator(n: usize, m: usize, programs: &[EncodedProgram]) -> Result<SquareMatrix> {
    check_n(n)?;
    check_m(m)?;
    let circuit = build_cu_universal(n, m)?;
    let layout = cu_layout(n, m)?;
    let mut total = SquareMatrix::identity(1 << n);
    for p in programs {
        if p.n() != n || p.m() != m {
            return Err(Error::invalid(format!("program {p} does not match n={n} m={m}")));
        }
        let e = effective_data_operator(&circuit, &layout, &p.assignment())?;
        check_leakage(e.leakage)?;
        total = &e.matrix * &total;
    }
    Ok(total)
}

/// Result of running a state through the universal circuit.
#[derive(Debug, Clone)]
pub struct NearTrivialRun {
    /// Data register, projected onto restored ancillas, with its global phase
    /// normalised so that the largest-magnitude amplitude is real and positive.
    pub state: StateVector,
    /// Norm of the output component whose ancillas were not restored.
    pub leakage: f64,
}

fn run_program(circuit: &Circuit, program: &EncodedProgram, state: &StateVector) -> Result<NearTrivialRun> {
    let n = program.n();
    let anc_width = circuit.width() - n;
    let base = program.ancilla_index();
    let input = SparseState::from_entries(
        circuit.width(),
        state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(w, &a)| ((w << anc_width) | base, a)),
    )?;
    let out = run_sparse(circuit, &input)?;
    let anc_mask = (1usize << anc_width) - 1;
    let mut data = vec![Complex64::new(0.0, 0.0); 1 << n];
    let mut leaked = 0.0;
    for (i, a) in out.entries() {
        if i & anc_mask == base {
            data[i >> anc_width] = a;
        } else {
            leaked += a.norm_sqr();
        }
    }
    let leakage = f64::sqrt(leaked);
    check_leakage(leakage)?;
    let mut best = 0;
    for (i, a) in data.iter().enumerate() {
        if a.norm() > data[best].norm() {
            best = i;
        }
    }
    let pivot = data[best];
    if pivot.norm() > 0.0 {
        let fix = pivot.conj() / pivot.norm();
        data.iter_mut().for_each(|a| *a *= fix);
    }
    Ok(NearTrivialRun {
        state: StateVector::new(data)?,
        leakage,
    })
}

/// Runs the universal circuit `C_U′(n, m)` on `state` with `spec` encoded in
/// the ancillas. Fails with [`Error::Leakage`] if the ancillas are not
/// restored to within [`LEAKAGE_THRESHOLD`].
pub fn run_near_trivial(spec: &NearTrivialSpec, state: &StateVector, m: usize) -> Result<NearTrivialRun> {
    let n = state.qubit_count();
    let program = encode_spec(spec, n, m)?;
    let circuit = build_cu_universal(n, m)?;
    run_program(&circuit, &program, state)
}

/// The data register after [`run_near_trivial`].
pub fn apply_near_trivial(spec: &NearTrivialSpec, state: &StateVector, m: usize) -> Result<StateVector> {
    Ok(run_near_trivial(spec, state, m)?.state)
}
