//! Command-line front end: recognition, verification, single sweeps,
//! instance generation, benchmarking and oracle cross-checks.
//!
//! Exit codes: 0 = Robinsonian / verified / success, 1 = not Robinsonian
//! / verification failed / oracle disagreement, 2 = usage or I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use robinson::instances::{self, GeneratorSpec};
use robinson::matrix::{load_dense_csv, load_matrix_market, LoadOptions};
use robinson::oracle::{brute_force_robinsonian, verify_robinson_cubic, BRUTE_FORCE_LIMIT};
use robinson::recognize::{
    recognize, recognize_dissimilarity, verify_robinson, verify_robinson_dissimilarity,
    RecognitionReport, RecognizeOptions, Status,
};
use robinson::sfs::{disfs, sfs, sfs_traced, LinearOrder};
use robinson::{DissimilarityMatrix, Error, Matrix, Result};

#[derive(Parser)]
#[command(
    name = "sfs",
    about = "Robinsonian matrix recognition via Similarity-First Search multisweep",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file: Matrix Market coordinate (header autodetected) or
    /// dense CSV.
    input: PathBuf,
    /// Decimal quantization scale applied before rounding entries to
    /// 64-bit integers. Overrides the SFS_SCALE environment variable;
    /// default 1000000.
    #[arg(long)]
    scale: Option<i64>,
    /// Shift all entries so the minimum becomes zero instead of
    /// rejecting negative input.
    #[arg(long)]
    shift: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the matrix is Robinsonian.
    Recognize {
        #[command(flatten)]
        input: InputArgs,
        /// Initial sweep order σ₀: a file or an inline 1-based list such
        /// as "2,3,4,5,1" (default: computed by an SFS sweep from the
        /// identity).
        #[arg(long)]
        seed_order: Option<String>,
        /// Run the full sweep loop without the two early exits.
        #[arg(long)]
        no_early_exit: bool,
        /// Treat the input as a dissimilarity matrix (entries grow away
        /// from the diagonal in a Robinson ordering).
        #[arg(long)]
        dissimilarity: bool,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check that an order puts the matrix in Robinson form.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Order: a file or an inline 1-based list.
        order: String,
        /// Cross-run the cubic triple scan and, when n allows it, the
        /// exhaustive search.
        #[arg(long)]
        oracle: bool,
        /// Check the dissimilarity Robinson condition instead.
        #[arg(long)]
        dissimilarity: bool,
    },
    /// Run a single SFS / SFS⁺ / DiSFS sweep and print the order.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// Plus-sweep: break ties by the latest position in this order
        /// (file or inline 1-based list).
        #[arg(long)]
        plus: Option<String>,
        /// Seed order for a plain sweep (file or inline; default
        /// identity).
        #[arg(long, conflicts_with = "plus")]
        seed_order: Option<String>,
        /// Dissimilarity sweep (lowest dissimilarity first).
        #[arg(long)]
        dissimilarity: bool,
        /// Print one line per iteration: pivot, slice size, queue.
        #[arg(long)]
        trace: bool,
    },
    /// Generate a test instance as Matrix Market plus a JSON sidecar.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Interval count for random-robinsonian (default n/6 + 1).
        #[arg(long)]
        k: Option<usize>,
        /// Density in (0, 1] for random-unit-interval.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Hide the planted order behind a random relabeling.
        #[arg(long)]
        permute: bool,
        /// Apply this many random entry rewrites afterwards.
        #[arg(long)]
        perturb: Option<usize>,
        /// Seed for the rewrites (default: seed + 1).
        #[arg(long)]
        perturb_seed: Option<u64>,
        /// Output path; the sidecar goes to <output>.meta.json.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Time recognition across a size grid.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, default_value = "1000,10000,100000")]
        sizes: String,
        #[arg(long, value_enum, default_value_t = Kind::RandomRobinsonian)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Emit CSV instead of the text table.
        #[arg(long)]
        csv: bool,
    },
    /// Compare recognition against the exhaustive oracle (small n).
    OracleCheck {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    WorstCase,
    RandomRobinsonian,
    RandomUnitInterval,
}

fn load_options(args: &InputArgs) -> Result<LoadOptions> {
    let mut opts = LoadOptions { shift: args.shift, ..LoadOptions::default() };
    if let Some(s) = args.scale {
        opts.scale = s;
    } else if let Ok(v) = std::env::var("SFS_SCALE") {
        opts.scale = v
            .parse()
            .map_err(|_| Error::Parse { line: 0, msg: format!("bad SFS_SCALE value '{v}'") })?;
    }
    if opts.scale <= 0 {
        return Err(Error::Parse { line: 0, msg: "scale must be positive".into() });
    }
    Ok(opts)
}

fn load_matrix(args: &InputArgs) -> Result<Matrix> {
    let bytes = std::fs::read(&args.input)?;
    let opts = load_options(args)?;
    if bytes.starts_with(b"%%MatrixMarket") {
        load_matrix_market(&bytes, &opts)
    } else {
        load_dense_csv(&bytes, &opts)
    }
}

/// An order argument is either a file of 1-based ids or an inline list
/// like "2,3,4,5,1" (parentheses tolerated).
fn load_order(arg: &str, n: usize) -> Result<LinearOrder> {
    let text = if Path::new(arg).exists() {
        std::fs::read_to_string(arg)?
    } else {
        arg.replace(['(', ')'], " ")
    };
    LinearOrder::parse_1based(&text, n)
}

fn format_order(order: &LinearOrder) -> String {
    order
        .to_1based()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_report(report: &RecognitionReport<i64>, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        return Ok(());
    }
    match report.status {
        Status::Robinsonian => {
            println!("status: Robinsonian");
            println!(
                "order: {}",
                report
                    .order
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        Status::NotRobinsonian => {
            println!("status: NOT Robinsonian");
            if let Some(c) = &report.certificate {
                println!(
                    "certificate: triple ({}, {}, {}) with A[x,z]={} > min(A[x,y]={}, A[y,z]={})",
                    c.x, c.y, c.z, c.a_xz, c.a_xy, c.a_yz
                );
            }
        }
    }
    println!("sweeps_used: {}", report.sweeps_used);
    println!("components: {}", report.components.len());
    println!(
        "time: {:.3} ms total ({} sweeps: {:.3} ms, verify: {:.3} ms)",
        report.timings.total_ms,
        report.timings.sweep_ms.len(),
        report.timings.sweep_ms.iter().sum::<f64>(),
        report.timings.verify_ms
    );
    Ok(())
}

fn cmd_recognize(
    input: &InputArgs,
    seed_order: Option<&str>,
    no_early_exit: bool,
    dissimilarity: bool,
    json: bool,
) -> Result<ExitCode> {
    let a = load_matrix(input)?;
    let sigma0 = match seed_order {
        Some(s) if s != "identity" => Some(load_order(s, a.n())?),
        _ => None,
    };
    let opts = RecognizeOptions { sigma0, no_early_exit };
    let report = if dissimilarity {
        recognize_dissimilarity(&DissimilarityMatrix::new(a), &opts)
    } else {
        recognize(&a, &opts)
    };
    print_report(&report, json)?;
    Ok(match report.status {
        Status::Robinsonian => ExitCode::SUCCESS,
        Status::NotRobinsonian => ExitCode::from(1),
    })
}

fn cmd_verify(
    input: &InputArgs,
    order: &str,
    oracle: bool,
    dissimilarity: bool,
) -> Result<ExitCode> {
    let a = load_matrix(input)?;
    let pi = load_order(order, a.n())?;
    let outcome = if dissimilarity {
        verify_robinson_dissimilarity(&DissimilarityMatrix::new(a.clone()), &pi)
    } else {
        verify_robinson(&a, &pi)
    };
    if oracle && !dissimilarity {
        let cubic = verify_robinson_cubic(&a, &pi);
        assert_eq!(outcome.is_ok(), cubic.is_none(), "verifier and cubic scan disagree");
        println!("oracle: cubic scan agrees");
        if a.n() <= BRUTE_FORCE_LIMIT {
            let brute = brute_force_robinsonian(&a)?;
            println!(
                "oracle: exhaustive search says the matrix is {}Robinsonian",
                if brute.is_some() { "" } else { "NOT " }
            );
        }
    }
    match outcome {
        Ok(()) => {
            println!("Robinson: yes");
            Ok(ExitCode::SUCCESS)
        }
        Err((x, y, z)) => {
            println!("Robinson: no");
            println!("violating triple (1-based): ({}, {}, {})", x + 1, y + 1, z + 1);
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_sweep(
    input: &InputArgs,
    plus: Option<&str>,
    seed_order: Option<&str>,
    dissimilarity: bool,
    trace: bool,
) -> Result<ExitCode> {
    let a = load_matrix(input)?;
    let n = a.n();
    let seed = match (plus, seed_order) {
        (Some(sigma), _) => load_order(sigma, n)?.reversed(),
        (None, Some(s)) => load_order(s, n)?,
        (None, None) => LinearOrder::identity(n),
    };
    let order = if dissimilarity {
        // the seed is already reversed when --plus was given, which is
        // exactly the plus-variant
        disfs(&DissimilarityMatrix::new(a), &seed)
    } else if trace {
        let (order, t) = sfs_traced(&a, &seed);
        for (i, step) in t.steps.iter().enumerate() {
            let queue = t.queues[i]
                .iter()
                .map(|class| {
                    class.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
                })
                .collect::<Vec<_>>()
                .join(" | ");
            eprintln!(
                "iter {:>3}: pivot {:>3}, slice {:>3}, queue ({})",
                i + 1,
                step.pivot + 1,
                step.slice_len,
                queue
            );
        }
        order
    } else {
        sfs(&a, &seed)
    };
    println!("{}", format_order(&order));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Sidecar<'a> {
    spec: &'a GeneratorSpec,
    sigma0: Option<Vec<u32>>,
    hidden_order: Option<Vec<u32>>,
    n: usize,
    m: usize,
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    kind: Kind,
    n: usize,
    k: Option<usize>,
    density: f64,
    seed: u64,
    permute: bool,
    perturb: Option<usize>,
    perturb_seed: Option<u64>,
    output: &Path,
) -> Result<ExitCode> {
    let base = match kind {
        Kind::WorstCase => GeneratorSpec::WorstCase { n },
        Kind::RandomRobinsonian => {
            GeneratorSpec::RandomRobinsonian { n, k: k.unwrap_or(n / 6 + 1), seed, permute }
        }
        Kind::RandomUnitInterval => GeneratorSpec::RandomUnitInterval { n, density, seed },
    };
    let spec = match perturb {
        Some(count) => GeneratorSpec::Perturbed {
            base: Box::new(base),
            count,
            seed: perturb_seed.unwrap_or(seed + 1),
        },
        None => base,
    };
    let inst = spec.build()?;
    std::fs::write(output, inst.matrix.to_matrix_market())?;
    let sidecar = Sidecar {
        spec: &spec,
        sigma0: inst.sigma0.as_ref().map(|o| o.to_1based()),
        hidden_order: inst.hidden_order.as_ref().map(|o| o.to_1based()),
        n: inst.matrix.n(),
        m: inst.matrix.m(),
    };
    let meta_path = {
        let mut os = output.as_os_str().to_owned();
        os.push(".meta.json");
        PathBuf::from(os)
    };
    std::fs::write(&meta_path, serde_json::to_string_pretty(&sidecar).expect("sidecar"))?;
    eprintln!("wrote {} and {}", output.display(), meta_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(sizes: &str, kind: Kind, seed: u64, csv: bool) -> Result<ExitCode> {
    let sizes: Vec<usize> = sizes
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse { line: 0, msg: format!("bad size '{s}'") })
        })
        .collect::<Result<_>>()?;
    let mut out = String::new();
    if csv {
        out.push_str("n,m,sweeps,total_ms,mean_sweep_ms,ns_per_edge\n");
    }
    for &n in &sizes {
        if n == 0 {
            continue;
        }
        let matrix = match kind {
            Kind::WorstCase => instances::worst_case(n.max(4))?.0,
            Kind::RandomRobinsonian => instances::random_robinsonian(n, n / 6 + 1, seed, true)?.0,
            Kind::RandomUnitInterval => instances::random_unit_interval(n, 0.5, seed)?,
        };
        // matrix built; only the recognition is timed
        let t = Instant::now();
        let report = recognize(&matrix, &RecognizeOptions::default());
        let total_ms = t.elapsed().as_secs_f64() * 1e3;
        let sweeps = report.timings.sweep_ms.len();
        let mean_sweep =
            report.timings.sweep_ms.iter().sum::<f64>() / sweeps.max(1) as f64;
        let ns_per_edge = total_ms * 1e6 / (matrix.n() + matrix.m()).max(1) as f64;
        if csv {
            let _ = writeln!(
                out,
                "{},{},{},{:.3},{:.3},{:.1}",
                matrix.n(),
                matrix.m(),
                sweeps,
                total_ms,
                mean_sweep,
                ns_per_edge
            );
        } else {
            let _ = writeln!(
                out,
                "n={:<8} m={:<9} sweeps={:<3} total={:>9.3} ms  mean_sweep={:>9.3} ms  {:>7.1} ns/edge",
                matrix.n(),
                matrix.m(),
                sweeps,
                total_ms,
                mean_sweep,
                ns_per_edge
            );
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle_check(input: &InputArgs) -> Result<ExitCode> {
    let a = load_matrix(input)?;
    let report = recognize(&a, &RecognizeOptions::default());
    let brute = brute_force_robinsonian(&a)?;
    let fast = report.status == Status::Robinsonian;
    let slow = brute.is_some();
    println!(
        "recognize: {}Robinsonian, exhaustive: {}Robinsonian",
        if fast { "" } else { "NOT " },
        if slow { "" } else { "NOT " }
    );
    if fast == slow {
        println!("oracle-check: AGREE");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("oracle-check: DISAGREE");
        Ok(ExitCode::from(1))
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Recognize { input, seed_order, no_early_exit, dissimilarity, json } => {
            cmd_recognize(input, seed_order.as_deref(), *no_early_exit, *dissimilarity, *json)
        }
        Command::Verify { input, order, oracle, dissimilarity } => {
            cmd_verify(input, order, *oracle, *dissimilarity)
        }
        Command::Sweep { input, plus, seed_order, dissimilarity, trace } => {
            cmd_sweep(input, plus.as_deref(), seed_order.as_deref(), *dissimilarity, *trace)
        }
        Command::Generate { kind, n, k, density, seed, permute, perturb, perturb_seed, output } => {
            cmd_generate(
                *kind, *n, *k, *density, *seed, *permute, *perturb, *perturb_seed, output,
            )
        }
        Command::Bench { sizes, kind, seed, csv } => cmd_bench(sizes, *kind, *seed, *csv),
        Command::OracleCheck { input } => cmd_oracle_check(input),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
