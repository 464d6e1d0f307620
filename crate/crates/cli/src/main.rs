//! `qudit-arith`: build, simulate, verify and measure mixed-radix circuits.
//!
//! Exit codes: 0 on success, 1 when verification finds a counterexample,
//! 2 on bad usage, malformed files or an infeasible block plan.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qudit_arith::block_builder::PlanSidecar;
use qudit_arith::json::{from_json, to_json};
use qudit_arith::resources::{expand_cost_model, report, ResourceReport};
use qudit_arith::sim::{run, BasisState};
use qudit_arith::{Circuit, CompressionScheme};

mod target;

use target::{Built, Kind, Oracle, Params, TargetError};

#[derive(Parser, Debug)]
#[command(name = "qudit-arith", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a circuit and write it as JSON.
    Build {
        #[command(flatten)]
        target: TargetArgs,
        /// Output file; the circuit goes to stdout when omitted. Block kinds
        /// also write `<stem>.plan.json` next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a circuit file on one basis state.
    Simulate {
        circuit: PathBuf,
        /// Comma-separated digits, one per wire.
        #[arg(long)]
        input: String,
    },
    /// Check a circuit against its oracle.
    Verify {
        #[command(flatten)]
        target: TargetArgs,
        /// Verify this file instead of a freshly built circuit.
        #[arg(long)]
        circuit: Option<PathBuf>,
        /// Every input (at most 2^20 of them).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Number of random inputs.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Seed for the ChaCha8 sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a resource report.
    Stats {
        circuit: PathBuf,
        /// Plan sidecar supplying the generated ancilla count.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Count each doubly-controlled gate as 6 two-qudit and 10 single-qudit gates.
        #[arg(long)]
        expand_cost_model: bool,
        /// One CSV header and row instead of JSON.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct TargetArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Register size in bits.
    #[arg(long)]
    n: Option<usize>,
    /// Compression scheme for block kinds: 231 or 241.
    #[arg(long, default_value = "231", value_parser = parse_scheme)]
    scheme: CompressionScheme,
    #[arg(long)]
    carry_in: bool,
    #[arg(long)]
    carry_out: bool,
    /// Classical addend (decimal) for +K kinds.
    #[arg(long, value_parser = parse_biguint)]
    k: Option<BigUint>,
}

fn parse_scheme(s: &str) -> Result<CompressionScheme, String> {
    CompressionScheme::parse_builtin(s).ok_or_else(|| format!("unknown scheme {s:?}, expected 231 or 241"))
}

fn parse_biguint(s: &str) -> Result<BigUint, String> {
    s.parse().map_err(|_| format!("not a non-negative integer: {s:?}"))
}

impl From<TargetArgs> for Params {
    fn from(t: TargetArgs) -> Self {
        Params {
            kind: t.kind,
            n: t.n,
            scheme: t.scheme,
            carry_in: t.carry_in,
            carry_out: t.carry_out,
            k: t.k,
        }
    }
}

enum Failure {
    Usage(String),
    Counterexample(String),
}

impl From<TargetError> for Failure {
    fn from(e: TargetError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.plan.json"))
}

fn cmd_build(target: TargetArgs, out: Option<PathBuf>) -> CmdResult {
    let built = Params::from(target).build()?;
    let json = to_json(&built.circuit);
    let c = &built.circuit;
    match &out {
        Some(path) => {
            write_file(path, &json)?;
            if let Some(plan) = &built.plan {
                write_file(&sidecar_path(path), &plan.to_json())?;
            }
            println!("wrote {}: width {}, depth {}, {} gates", path.display(), c.width(), c.depth(), c.len());
        }
        None => {
            println!("{json}");
            eprintln!("width {}, depth {}, {} gates", c.width(), c.depth(), c.len());
        }
    }
    if let Some(plan) = &built.plan {
        eprintln!(
            "plan: {} blocks of {} bits, {} ancilla per compressed block",
            plan.c,
            plan.block_size(),
            plan.ancilla_per_block()
        );
    }
    Ok(())
}

fn cmd_simulate(path: &Path, input: &str) -> CmdResult {
    let c = read_circuit(path)?;
    let s: BasisState = input.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
    let out = run(&c, &s).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{out}");
    Ok(())
}

/// One input together with the state the oracle demands.
fn case(built: &Built, index: &BigUint) -> (BasisState, BasisState) {
    match &built.oracle {
        Oracle::Table(rows) => {
            let i: usize = index.try_into().expect("row index");
            (BasisState(rows[i].0.clone()), BasisState(rows[i].1.clone()))
        }
        Oracle::Adder(layout) => {
            let (a, b, cin) = layout.split(index);
            let s = layout.state(built.circuit.width(), &a, &b, cin);
            let want = layout.expected(&s, &a, &b, cin);
            (s, want)
        }
    }
}

fn domain_bits(built: &Built) -> Option<usize> {
    match &built.oracle {
        Oracle::Table(_) => None,
        Oracle::Adder(l) => Some(l.input_bits()),
    }
}

fn cmd_verify(target: TargetArgs, circuit: Option<PathBuf>, exhaustive: bool, samples: usize, seed: u64) -> CmdResult {
    let mut built = Params::from(target).build()?;
    // Everything under test goes through the JSON interchange.
    let candidate = match &circuit {
        Some(path) => read_circuit(path)?,
        None => from_json(&to_json(&built.circuit)).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    if candidate.dims() != built.circuit.dims() {
        return Err(Failure::Counterexample(format!(
            "circuit has wire dims {:?}, expected {:?}",
            candidate.dims(),
            built.circuit.dims()
        )));
    }
    built.circuit = candidate;

    let indices: Vec<BigUint> = match (&built.oracle, domain_bits(&built)) {
        (Oracle::Table(rows), _) if exhaustive => (0..rows.len()).map(BigUint::from).collect(),
        (Oracle::Table(rows), _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| BigUint::from(rng.random_range(0..rows.len()))).collect()
        }
        (_, Some(bits)) if exhaustive => {
            if bits > 20 {
                return Err(Failure::Usage(format!(
                    "exhaustive verification needs 2^{bits} inputs; the limit is 2^20"
                )));
            }
            (0..1u64 << bits).map(BigUint::from).collect()
        }
        (_, Some(bits)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bytes = vec![0u8; bits.div_ceil(8)];
            let modulus = BigUint::from(1u8) << bits;
            (0..samples)
                .map(|_| {
                    rng.fill(&mut bytes[..]);
                    BigUint::from_bytes_le(&bytes) % &modulus
                })
                .collect()
        }
        _ => unreachable!("adder oracles have a bit domain"),
    };

    let inverse = built.circuit.inverse();
    for index in &indices {
        let (input, want) = case(&built, index);
        let got = run(&built.circuit, &input).map_err(|e| Failure::Usage(e.to_string()))?;
        if got != want {
            return Err(Failure::Counterexample(format!(
                "counterexample: input {input} gave {got}, expected {want}"
            )));
        }
        let back = run(&inverse, &got).map_err(|e| Failure::Usage(e.to_string()))?;
        if back != input {
            return Err(Failure::Counterexample(format!(
                "counterexample: inverse maps {got} to {back}, expected {input}"
            )));
        }
    }
    println!("pass: {} cases", indices.len());
    Ok(())
}

fn cmd_stats(path: &Path, plan: Option<PathBuf>, expand: bool, csv: bool) -> CmdResult {
    let c = read_circuit(path)?;
    let mut r: ResourceReport = report(&c);
    if let Some(plan_path) = plan {
        let text = fs::read_to_string(&plan_path).map_err(|e| Failure::Usage(format!("{}: {e}", plan_path.display())))?;
        let sidecar =
            PlanSidecar::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", plan_path.display())))?;
        let plan = sidecar.to_plan().map_err(|e| Failure::Usage(e.to_string()))?;
        r = r.with_ancilla_generated(plan.ancilla_per_block() * plan.c);
    }
    if expand {
        r = expand_cost_model(&r);
    }
    if csv {
        println!("{}", ResourceReport::csv_header());
        println!("{}", r.csv_row());
    } else {
        println!("{}", r.to_json());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { target, out } => cmd_build(target, out),
        Command::Simulate { circuit, input } => cmd_simulate(&circuit, &input),
        Command::Verify {
            target,
            circuit,
            exhaustive,
            samples,
            seed,
        } => cmd_verify(target, circuit, exhaustive, samples, seed),
        Command::Stats {
            circuit,
            plan,
            expand_cost_model,
            csv,
        } => cmd_stats(&circuit, plan, expand_cost_model, csv),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
