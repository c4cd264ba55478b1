use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use heisenberg_net::circuit::ParamEnv;
use heisenberg_net::experiments::{
    ambiguity_demo, run_bell_check, run_epr_with, run_teleportation_with, xor_demo,
};
use heisenberg_net::gates::{run_trajectory, run_with_backend, Backend};
use heisenberg_net::info_flow::{extended_samples, info_flow_report, ParameterProbe, DEFAULT_TOL};
use heisenberg_net::parse::{parse_angle, parse_circuit};
use heisenberg_net::random::random_circuit;
use heisenberg_net::report::{write_descriptors, write_scalars};
use heisenberg_net::schrodinger::cross_check;
use heisenberg_net::selfcheck::check_circuit;

#[derive(Parser, Debug)]
#[command(name = "heisenberg-net", version, about = "Heisenberg-picture simulation of qubit networks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a circuit file and print the descriptors at the chosen time.
    Run(RunArgs),
    /// Classify which qubits carry a parameter and whether it is locally readable.
    Infoflow(InfoflowArgs),
    /// The EPR network: probability that the two recorded outcomes differ.
    Epr(EprArgs),
    /// The teleportation network: Q5's Bloch vector, purity and verification.
    Teleport(TeleportArgs),
    /// Bell quantities and the local hidden-variable feasibility test.
    Bell(BellArgs),
    /// Exclusive-or cypher analogue.
    XorDemo(XorArgs),
    /// Two circuits with equal state vectors but differently placed information.
    AmbiguityDemo(AmbiguityArgs),
    /// Algebra, backend-equivalence and cross-picture checks on random circuits.
    Selfcheck(SelfcheckArgs),
}

#[derive(Args, Debug)]
struct CircuitArgs {
    /// Circuit file in the text format.
    #[arg(long)]
    circuit: PathBuf,
    /// Parameter binding NAME=VALUE; VALUE may be an expression like 2*pi/3.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Time step to report; defaults to the circuit depth.
    #[arg(long)]
    time: Option<usize>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    circuit: CircuitArgs,
    #[arg(long, default_value = "pauli", value_parser = parse_backend)]
    backend: Backend,
    /// Write every descriptor term up to the chosen time as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InfoflowArgs {
    #[command(flatten)]
    circuit: CircuitArgs,
    /// Parameter whose information is traced.
    #[arg(long)]
    probe: String,
    /// Number of probe values (at least 3).
    #[arg(long, default_value_t = 4)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Extra qubit subset to test for joint accessibility, e.g. 1,2.
    #[arg(long = "subset", value_parser = parse_subset)]
    subsets: Vec<Vec<usize>>,
}

#[derive(Args, Debug)]
struct EprArgs {
    #[arg(long, value_parser = parse_angle_value, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, value_parser = parse_angle_value, allow_hyphen_values = true)]
    phi: f64,
    #[arg(long, default_value = "pauli", value_parser = parse_backend)]
    backend: Backend,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TeleportArgs {
    #[arg(long, value_parser = parse_angle_value, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, default_value = "pauli", value_parser = parse_backend)]
    backend: Backend,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BellArgs {
    /// Grid size K; angles are 2*pi*j/K.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct XorArgs {
    /// Plaintext bits, e.g. 1011.
    #[arg(long)]
    text: String,
    /// Key bits of the same length.
    #[arg(long)]
    key: String,
}

#[derive(Args, Debug)]
struct AmbiguityArgs {
    #[arg(long, default_value = "1.0", value_parser = parse_angle_value, allow_hyphen_values = true)]
    theta: f64,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    /// Number of random circuits.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: heisenberg_net::Error| e.to_string())
}

fn parse_angle_value(s: &str) -> Result<f64, String> {
    parse_angle(s)?.eval(&ParamEnv::new()).map_err(|e| e.to_string())
}

fn parse_subset(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|q| q.trim().parse::<usize>().map_err(|_| format!("`{q}` is not a qubit index")))
        .collect()
}

fn csv_file(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn load(args: &CircuitArgs) -> Result<(heisenberg_net::Circuit, ParamEnv, usize)> {
    let text = fs::read_to_string(&args.circuit)
        .with_context(|| format!("cannot read circuit file {}", args.circuit.display()))?;
    let circuit = parse_circuit(&text).with_context(|| format!("in {}", args.circuit.display()))?;
    let env = ParamEnv::from_assignments(args.params.iter().map(String::as_str))?;
    for (name, _) in env.iter() {
        if !circuit.declares(name) {
            bail!("parameter `{name}` is not declared by the circuit");
        }
    }
    let time = args.time.unwrap_or(circuit.depth());
    Ok((circuit, env, time))
}

fn run(args: RunArgs) -> Result<()> {
    let (c, env, t) = load(&args.circuit)?;
    let s = run_with_backend(&c, &env, t, args.backend)?;
    println!("{}-qubit circuit, depth {}, backend {}", c.n_qubits(), c.depth(), args.backend);
    print!("{s}");
    for a in 1..=c.n_qubits() {
        let b = s.bloch_vector(a)?;
        println!(
            "Q{a}: P(1) = {:.12}  bloch = ({:.12}, {:.12}, {:.12})",
            s.outcome_probability(a)?,
            b[0],
            b[1],
            b[2]
        );
    }
    if let Some(path) = args.csv {
        let states = match args.backend {
            Backend::Pauli => run_trajectory(&c, &env)?.into_iter().take(t + 1).collect(),
            Backend::Dense => (0..=t)
                .map(|k| run_with_backend(&c, &env, k, Backend::Dense))
                .collect::<Result<Vec<_>, _>>()?,
        };
        write_descriptors(csv_file(&path)?, &states)?;
    }
    Ok(())
}

fn infoflow(args: InfoflowArgs) -> Result<()> {
    let (c, mut env, t) = load(&args.circuit)?;
    let probe = ParameterProbe::new(&args.probe)
        .with_samples(extended_samples(args.samples))?
        .with_tol(args.tol)?;
    if !env.contains(&args.probe) {
        env = env.with(&args.probe, probe.samples()[0]);
    }
    let report = info_flow_report(&c, &env, &probe, t, &args.subsets)?;
    print!("{report}");
    Ok(())
}

fn epr(args: EprArgs) -> Result<()> {
    let r = run_epr_with(args.theta, args.phi, args.backend)?;
    println!("theta = {}, phi = {}", r.theta, r.phi);
    println!("prob_different = {:.12}", r.prob_different);
    if let Some(path) = args.csv {
        let rows = [("theta", r.theta), ("phi", r.phi), ("prob_different", r.prob_different)];
        write_scalars(csv_file(&path)?, &rows)?;
    }
    Ok(())
}

fn teleport(args: TeleportArgs) -> Result<()> {
    let r = run_teleportation_with(args.theta, args.backend)?;
    let [x, y, z] = r.bloch_q5;
    println!("theta = {}", r.theta);
    println!("bloch_q5 = ({x:.12}, {y:.12}, {z:.12})");
    println!("purity_q5 = {:.12}", r.purity_q5);
    println!("verify_prob = {:.12}", r.verify_prob);
    if let Some(path) = args.csv {
        let rows = [
            ("theta", r.theta),
            ("bloch_x", x),
            ("bloch_y", y),
            ("bloch_z", z),
            ("purity_q5", r.purity_q5),
            ("verify_prob", r.verify_prob),
        ];
        write_scalars(csv_file(&path)?, &rows)?;
    }
    Ok(())
}

fn bell(args: BellArgs) -> Result<()> {
    if args.samples == 0 {
        bail!("--samples must be positive");
    }
    let grid: Vec<f64> = (0..args.samples)
        .map(|j| std::f64::consts::TAU * j as f64 / args.samples as f64)
        .collect();
    let r = run_bell_check(&grid)?;
    let max_dev = r
        .marginals_a
        .iter()
        .chain(&r.marginals_b)
        .map(|(_, m)| (m - 0.5).abs())
        .fold(0.0, f64::max);
    println!("grid of {} angles", grid.len());
    println!("marginals: max |m - 1/2| = {max_dev:.3e}");
    println!("outcome relation at equal angles: {} (residual {:.3e})", r.relation, r.relation_residual);
    println!("pair means at 0, 2pi/3, 4pi/3: {:.12} {:.12} {:.12}", r.pair_values[0], r.pair_values[1], r.pair_values[2]);
    println!("local hidden variables feasible: {}", r.lhv.feasible);
    for w in &r.lhv.weights {
        println!("  {w}");
    }
    println!("{}", r.lhv.certificate);
    if let Some(path) = args.csv {
        let mut rows: Vec<(String, f64)> = Vec::new();
        for (theta, phi, c) in &r.correlations {
            rows.push((format!("corr({theta:.17e};{phi:.17e})"), *c));
        }
        for (i, v) in r.pair_values.iter().enumerate() {
            rows.push((format!("pair{i}"), *v));
        }
        rows.push(("lhv_feasible".into(), if r.lhv.feasible { 1.0 } else { 0.0 }));
        write_scalars(csv_file(&path)?, &rows)?;
    }
    Ok(())
}

fn selfcheck(args: SelfcheckArgs) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut worst = heisenberg_net::selfcheck::CircuitCheck::default();
    let mut failures = 0;
    for i in 0..args.samples {
        let n = 1 + i % 5;
        let depth = 1 + (i * 7) % 20;
        let c = random_circuit(&mut rng, n, depth)?;
        let r = check_circuit(&c, &ParamEnv::new())?;
        if !r.passes(args.tol) {
            failures += 1;
            eprintln!("circuit {i} failed: {r:?}\n{}", c.to_text());
        }
        worst.algebra = worst.algebra.max(r.algebra);
        worst.backend = worst.backend.max(r.backend);
        worst.pictures = worst.pictures.max(r.pictures);
        worst.locality_violations += r.locality_violations;
    }
    let env = ParamEnv::new().with("theta", 0.9).with("phi", 2.3);
    let fixtures = [
        ("epr", heisenberg_net::experiments::epr_circuit()),
        ("teleport", heisenberg_net::experiments::teleport_circuit()),
    ];
    for (name, c) in &fixtures {
        let gap = cross_check(c, &env)?;
        println!("{name}: cross-picture gap {gap:.3e}");
        if gap > args.tol {
            failures += 1;
        }
    }
    println!("random circuits: {}", args.samples);
    println!("  algebra   max {:.3e}", worst.algebra);
    println!("  backends  max {:.3e}", worst.backend);
    println!("  pictures  max {:.3e}", worst.pictures);
    println!("  locality violations {}", worst.locality_violations);
    if failures > 0 {
        bail!("{failures} check(s) exceeded tolerance {}", args.tol);
    }
    println!("all checks passed");
    Ok(())
}

pub fn main_with(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(a) => run(a),
        Command::Infoflow(a) => infoflow(a),
        Command::Epr(a) => epr(a),
        Command::Teleport(a) => teleport(a),
        Command::Bell(a) => bell(a),
        Command::XorDemo(a) => {
            println!("{}", xor_demo(&a.text, &a.key)?);
            Ok(())
        }
        Command::AmbiguityDemo(a) => {
            let r = ambiguity_demo(a.theta)?;
            println!("theta = {}", r.theta);
            println!("state vectors equal up to phase: {} (overlap {:.12})", r.states_match, r.overlap);
            println!("first-qubit descriptor gap: {:.12}", r.descriptor_gap);
            println!("second-qubit descriptor gap: {:.12}", r.partner_gap);
            Ok(())
        }
        Command::Selfcheck(a) => selfcheck(a),
    }
}
