use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gaugeqc::compiler::{check_inputs, compile, compile_clifford_gauge_rx, count_resources, Algo, Circuit, Method};
use gaugeqc::graph::{export, import_json, Format, GraphStatePattern};
use gaugeqc::residual::{postselect_generators, residual_recursive, MeasGenerator};
use gaugeqc::simulator::{
    apply_circuit, enumerate_branches, execute, fidelity_up_to_phase, RunMode, StateVector, MAX_BRANCH_QUBITS,
};
use gaugeqc::{PauliOp, QubitId, C64};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "gaugeqc",
    version,
    about = "Pauli-rotation circuits to graph-state measurement patterns"
)]
struct Cli {
    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a circuit JSON file into a pattern.
    Compile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Gauge::FullySymmetric)]
        gauge: Gauge,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Input states "a,b;a,b;..." per logical qubit. Default |0⟩.
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Run a pattern and compare it with the circuit applied directly.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Input states "a,b;...". Default: the pattern's own input vertices.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Postselect)]
        mode: Mode,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Sample one outcome branch with this seed instead of enumerating all of them.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Residual operator of a pattern for given measurement generators.
    Residual {
        #[arg(long)]
        graph: PathBuf,
        /// "q:alpha,beta;..." in measurement order. Default: the pattern's s = 0 bras.
        #[arg(long)]
        meas: Option<String>,
    },
    /// Qubit counts of the scaling formulas.
    Resources {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Print the tabulated value where it differs from the derivation.
        #[arg(long)]
        tabulated: bool,
    },
    /// Convert a pattern to JSON or DOT.
    Export {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Dot)]
        format: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Gauge {
    FullySymmetric,
    Clifford,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Postselect,
    Byproduct,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Qft,
    QaoaCyclic,
    QaoaComplete,
    Generic,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Mcalculus,
    FullySymmetric,
}

enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Input(String),
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn complex(s: &str) -> Result<C64, Failure> {
    s.trim()
        .parse::<C64>()
        .map_err(|_| Failure::Input(format!("bad complex number `{s}`")))
}

fn pair(s: &str) -> Result<(C64, C64), Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::Input(format!("expected `a,b`, got `{s}`")))?;
    Ok((complex(a)?, complex(b)?))
}

/// "a,b;a,b;..."
fn parse_pairs(s: &str) -> Result<Vec<(C64, C64)>, Failure> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(pair).collect()
}

/// "q:alpha,beta;..."
fn parse_meas(s: &str) -> Result<Vec<MeasGenerator>, Failure> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (q, rest) = t
                .split_once(':')
                .ok_or_else(|| Failure::Input(format!("expected `q:alpha,beta`, got `{t}`")))?;
            let qubit: QubitId = q
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("bad qubit id `{q}`")))?;
            let (alpha, beta) = pair(rest)?;
            Ok(MeasGenerator { alpha, beta, qubit })
        })
        .collect()
}

fn emit_pattern(p: &GraphStatePattern, emit: Emit, out: Option<&Path>, as_json: bool) -> Result<(), Failure> {
    let format = match emit {
        Emit::Json => Format::Json,
        Emit::Dot => Format::Dot,
    };
    let text = export(p, format);
    match (as_json, out, emit) {
        (true, Some(path), _) => {
            write_or_print(Some(path), &text)?;
            println!(
                "{}",
                json!({"out": path, "vertices": p.vertices.len(), "edges": p.edges.len()})
            );
            Ok(())
        }
        (true, None, Emit::Dot) => {
            println!("{}", json!({ "dot": text }));
            Ok(())
        }
        _ => write_or_print(out, &text),
    }
}

fn run_compile(
    path: &Path,
    gauge: Gauge,
    emit: Emit,
    out: Option<&Path>,
    coeffs: Option<&str>,
    as_json: bool,
) -> Result<(), Failure> {
    let circuit = Circuit::from_json(&read(path)?).map_err(input)?;
    let inputs = match coeffs {
        Some(s) => parse_pairs(s)?,
        None => vec![(C64::new(1.0, 0.0), C64::new(0.0, 0.0)); circuit.n as usize],
    };
    let pattern = match gauge {
        Gauge::FullySymmetric => compile(&circuit, &inputs).map_err(input)?,
        Gauge::Clifford => {
            check_inputs(circuit.n, &inputs).map_err(input)?;
            let single_x = circuit.n == 1
                && circuit.clifford_prefix.is_empty()
                && circuit.gates.len() == 1
                && circuit.gates[0].axis.get(1) == PauliOp::X;
            if !single_x {
                return Err(Failure::Input(
                    "the clifford gauge handles one X rotation on one qubit".into(),
                ));
            }
            // That path implements e^{−iθX/2}, i.e. full angle −θ/2.
            compile_clifford_gauge_rx(-2.0 * circuit.gates[0].theta, inputs[0]).map_err(input)?
        }
    };
    emit_pattern(&pattern, emit, out, as_json)
}

fn run_verify(
    circuit: &Path,
    pattern: &Path,
    inputs: Option<&str>,
    mode: Mode,
    tol: f64,
    seed: Option<u64>,
    as_json: bool,
) -> Result<(), Failure> {
    if !(tol > 0.0) {
        return Err(Failure::Input("tol must be positive".into()));
    }
    let circuit = Circuit::from_json(&read(circuit)?).map_err(input)?;
    let pattern = import_json(&read(pattern)?).map_err(input)?;
    let inputs = match inputs {
        Some(s) => parse_pairs(s)?,
        None => pattern
            .inputs()
            .iter()
            .map(|&q| pattern.vertex(q).map(|v| (v.a, v.b)).unwrap())
            .collect(),
    };
    check_inputs(circuit.n, &inputs).map_err(input)?;
    let outputs = pattern.outputs();
    if outputs.len() != circuit.n as usize {
        return Err(Failure::Input(format!(
            "pattern has {} outputs, circuit has {} qubits",
            outputs.len(),
            circuit.n
        )));
    }
    let ids: Vec<QubitId> = (1..=circuit.n).collect();
    let want = apply_circuit(&StateVector::product(&ids, &inputs), &circuit).map_err(input)?;
    let sim = |e: gaugeqc::SimError| match e {
        gaugeqc::SimError::NonDeterministic(_) => Failure::Verification(e.to_string()),
        other => Failure::Input(other.to_string()),
    };
    let states: Vec<StateVector> = match (mode, seed) {
        (Mode::Postselect, _) => vec![execute(&pattern, Some(&inputs), RunMode::PostSelect).map_err(sim)?.0],
        (Mode::Byproduct, Some(seed)) => vec![
            execute(&pattern, Some(&inputs), RunMode::Sample { seed })
                .map_err(sim)?
                .0,
        ],
        (Mode::Byproduct, None) => {
            if pattern.measurement_order().len() > MAX_BRANCH_QUBITS {
                return Err(Failure::Input(format!(
                    "more than {MAX_BRANCH_QUBITS} measurements to enumerate; pass --seed to sample"
                )));
            }
            enumerate_branches(&pattern, Some(&inputs))
                .map_err(sim)?
                .into_iter()
                .map(|(s, _)| s)
                .collect()
        }
    };
    let mut fidelity = f64::INFINITY;
    for s in &states {
        let f = fidelity_up_to_phase(
            s,
            &StateVector {
                ids: s.ids.clone(),
                amps: want.amps.clone(),
            },
        )
        .map_err(input)?;
        fidelity = fidelity.min(f);
    }
    let pass = fidelity >= 1.0 - tol;
    let mode_name = match mode {
        Mode::Postselect => "postselect",
        Mode::Byproduct => "byproduct",
    };
    if as_json {
        println!(
            "{}",
            json!({"mode": mode_name, "branches": states.len(), "fidelity": fidelity, "tol": tol, "pass": pass})
        );
    } else {
        println!("fidelity {fidelity:.15}");
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification(format!("fidelity {fidelity} below 1 - {tol}")))
    }
}

fn run_residual(graph: &Path, meas: Option<&str>, as_json: bool) -> Result<(), Failure> {
    let pattern = import_json(&read(graph)?).map_err(input)?;
    let ms = match meas {
        Some(s) => parse_meas(s)?,
        None => postselect_generators(&pattern),
    };
    let r = residual_recursive(&pattern, &ms).map_err(input)?.pruned(1e-15);
    if as_json {
        println!("{}", serde_json::to_string(&r).map_err(input)?);
    } else {
        for (zs, c) in &r.terms {
            let ops = if zs.is_empty() {
                "I".to_string()
            } else {
                zs.iter().map(|q| format!("Z{q}")).collect::<Vec<_>>().join(" ")
            };
            println!("{:+.12} {:+.12}i  {ops}", c.re, c.im);
        }
    }
    Ok(())
}

fn run_resources(
    algo: AlgoArg,
    n: u64,
    p: Option<u64>,
    method: MethodArg,
    tabulated: bool,
    as_json: bool,
) -> Result<(), Failure> {
    let algo = match algo {
        AlgoArg::Qft => Algo::Qft,
        AlgoArg::QaoaCyclic => Algo::QaoaCyclic,
        AlgoArg::QaoaComplete => Algo::QaoaComplete,
        AlgoArg::Generic => Algo::Generic,
    };
    let method = match method {
        MethodArg::Mcalculus => Method::MCalculus,
        MethodArg::FullySymmetric => Method::FullySymmetric,
    };
    let report = count_resources(algo, n, p, method).map_err(input)?;
    if as_json {
        println!("{}", serde_json::to_string(&report).map_err(input)?);
    } else if tabulated {
        println!("{}", report.tabulated_count.unwrap_or(report.qubit_count));
    } else {
        println!("{}", report.qubit_count);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let as_json = cli.json;
    match cli.command {
        Command::Compile {
            input,
            gauge,
            emit,
            out,
            coeffs,
        } => run_compile(&input, gauge, emit, out.as_deref(), coeffs.as_deref(), as_json),
        Command::Verify {
            circuit,
            pattern,
            input,
            mode,
            tol,
            seed,
        } => run_verify(&circuit, &pattern, input.as_deref(), mode, tol, seed, as_json),
        Command::Residual { graph, meas } => run_residual(&graph, meas.as_deref(), as_json),
        Command::Resources {
            algo,
            n,
            p,
            method,
            tabulated,
        } => run_resources(algo, n, p, method, tabulated, as_json),
        Command::Export { pattern, format, out } => {
            let p = import_json(&read(&pattern)?).map_err(input)?;
            emit_pattern(&p, format, out.as_deref(), as_json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help, --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", json!({ "error": first }));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(2)
        }
    }
}
