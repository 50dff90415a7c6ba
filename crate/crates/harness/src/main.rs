//! Command-line front end for the lightbulb process: exact laws, Monte
//! Carlo simulation, size-bias couplings, spectral diagnostics, certified
//! normal-approximation bounds, and the verification suite.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use steinlight::bounds::{certify, even_bound, odd_bound};
use steinlight::chain::{
    count_on, exact_pmf, kolmogorov_distance, sample_switch_matrix, SwitchPattern,
};
use steinlight::coupling::{even_size_bias, odd_size_bias, symmetrize_v};
use steinlight::spectral::{eigenvalue_decay, lambda, lambda_bar, lambda_product};
use steinlight_harness::report::{outcome_line, real, write_csv};
use steinlight_harness::suite::{run_verification_suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "steinlight",
    version,
    about = "Lightbulb process calculator: exact laws, couplings, spectral \
             diagnostics, and certified normal-approximation bounds"
)]
struct Cli {
    /// Base seed for randomized subcommands.
    #[arg(long, global = true, env = "STEINLIGHT_SEED", default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact law of the terminal on-count, with moments and normal distance.
    Exact(ExactArgs),
    /// Monte Carlo histogram of the terminal on-count.
    Simulate(SimulateArgs),
    /// Sampled size-bias coupling draws, aggregated into a joint histogram.
    Couple(CoupleArgs),
    /// Eigenvalue diagnostics for a switch pattern.
    Spectral(SpectralArgs),
    /// Certified bound table over a range of bulb counts.
    Bound(BoundArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct ExactArgs {
    /// Number of bulbs.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Comma-separated stage sizes; defaults to the standard pattern 1..=n.
    #[arg(long, value_delimiter = ',')]
    stages: Option<Vec<u32>>,
}

#[derive(clap::Args)]
struct SimulateArgs {
    /// Number of bulbs.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Comma-separated stage sizes; defaults to the standard pattern.
    #[arg(long, value_delimiter = ',')]
    stages: Option<Vec<u32>>,
    /// Number of simulated runs.
    #[arg(long, default_value_t = 100_000)]
    draws: u64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(clap::Args)]
struct CoupleArgs {
    /// Number of bulbs; the coupling construction follows its parity.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
    /// Number of coupled draws.
    #[arg(long, default_value_t = 10_000)]
    draws: u64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SpectralArgs {
    /// Number of bulbs.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Eigenvalue order.
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// Comma-separated stage sizes; defaults to the standard pattern.
    #[arg(long, value_delimiter = ',')]
    stages: Option<Vec<u32>>,
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Smallest bulb count in the table.
    #[arg(long, default_value_t = 6)]
    n_min: u32,
    /// Largest bulb count in the table.
    #[arg(long, default_value_t = 40)]
    n_max: u32,
    /// Compute the exact distance (and certification) up to this n.
    #[arg(long, default_value_t = 64)]
    exact_max: u32,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Run only checks whose name contains this substring.
    #[arg(long)]
    only: Option<String>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Exact(args) => cmd_exact(&args),
        Command::Simulate(args) => cmd_simulate(&args, cli.seed),
        Command::Couple(args) => cmd_couple(&args, cli.seed),
        Command::Spectral(args) => cmd_spectral(&args),
        Command::Bound(args) => cmd_bound(&args),
        Command::Verify(args) => cmd_verify(&args, cli.seed),
    }
}

fn build_pattern(n: u32, stages: &Option<Vec<u32>>) -> Result<SwitchPattern> {
    let pattern = match stages {
        Some(sizes) => SwitchPattern::new(n, sizes.clone()),
        None => SwitchPattern::standard(n),
    };
    pattern.context("invalid switch pattern")
}

fn sink_for(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn cmd_exact(args: &ExactArgs) -> Result<()> {
    let pattern = build_pattern(args.n, &args.stages)?;
    let pmf = exact_pmf(&pattern);
    let mut rows = Vec::new();
    for (k, &p) in pmf.mass().iter().enumerate() {
        if p > 0.0 {
            rows.push(vec!["mass".to_string(), k.to_string(), real(p)]);
        }
    }
    let (mean, variance) = (pmf.mean(), pmf.variance());
    rows.push(vec!["summary".to_string(), "mean".to_string(), real(mean)]);
    rows.push(vec![
        "summary".to_string(),
        "variance".to_string(),
        real(variance),
    ]);
    if variance > 0.0 {
        let ks = kolmogorov_distance(&pmf, mean, variance.sqrt())?;
        rows.push(vec![
            "summary".to_string(),
            "kolmogorov".to_string(),
            real(ks),
        ]);
    }
    write_csv(io::stdout().lock(), &["kind", "key", "value"], &rows)
}

fn cmd_simulate(args: &SimulateArgs, seed: u64) -> Result<()> {
    let pattern = build_pattern(args.n, &args.stages)?;
    if args.draws == 0 {
        bail!("--draws must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; args.n as usize + 1];
    for _ in 0..args.draws {
        let matrix = sample_switch_matrix(&pattern, &mut rng);
        counts[count_on(&matrix) as usize] += 1;
    }
    let total = args.draws as f64;
    let mut rows = Vec::new();
    let mut mean = 0.0;
    for (k, &c) in counts.iter().enumerate() {
        if c > 0 {
            rows.push(vec![
                "mass".to_string(),
                k.to_string(),
                real(c as f64 / total),
            ]);
            mean += k as f64 * c as f64 / total;
        }
    }
    let variance = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| (k as f64 - mean).powi(2) * c as f64 / total)
        .sum::<f64>();
    let exact = exact_pmf(&pattern);
    let tv = 0.5
        * counts
            .iter()
            .zip(exact.mass())
            .map(|(&c, &p)| (c as f64 / total - p).abs())
            .sum::<f64>();
    rows.push(vec!["summary".to_string(), "mean".to_string(), real(mean)]);
    rows.push(vec![
        "summary".to_string(),
        "variance".to_string(),
        real(variance),
    ]);
    rows.push(vec![
        "summary".to_string(),
        "tv_vs_exact".to_string(),
        real(tv),
    ]);
    write_csv(sink_for(&args.csv)?, &["kind", "key", "value"], &rows)
}

fn cmd_couple(args: &CoupleArgs, seed: u64) -> Result<()> {
    if args.draws == 0 {
        bail!("--draws must be positive");
    }
    let pattern = SwitchPattern::standard(args.n).context("standard pattern")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut joint: std::collections::BTreeMap<(u32, u32), u64> = std::collections::BTreeMap::new();
    let mut base_sum = 0.0f64;
    let mut inc_sum = 0.0f64;
    for _ in 0..args.draws {
        let matrix = sample_switch_matrix(&pattern, &mut rng);
        let draw = if args.n % 2 == 0 {
            even_size_bias(&matrix, &mut rng)?
        } else {
            let vdraw = symmetrize_v(&matrix, &mut rng)?;
            odd_size_bias(&vdraw, &mut rng)?
        };
        *joint.entry((draw.x, draw.xs)).or_insert(0) += 1;
        base_sum += f64::from(draw.x);
        inc_sum += f64::from(draw.increment());
    }
    let total = args.draws as f64;
    let mut rows: Vec<Vec<String>> = joint
        .iter()
        .map(|(&(x, xs), &c)| {
            vec![
                "pair".to_string(),
                format!("{x}:{xs}"),
                real(c as f64 / total),
            ]
        })
        .collect();
    rows.push(vec![
        "summary".to_string(),
        "mean_base".to_string(),
        real(base_sum / total),
    ]);
    rows.push(vec![
        "summary".to_string(),
        "mean_increment".to_string(),
        real(inc_sum / total),
    ]);
    // the coupling's mean increment estimates variance / mean of the base
    // law it size-biases
    let (mu, var) = if args.n % 2 == 0 {
        steinlight::chain::mean_var_formula(&pattern)
    } else {
        steinlight::chain::v_mean_var(args.n)?
    };
    rows.push(vec![
        "summary".to_string(),
        "variance_over_mean".to_string(),
        real(var / mu),
    ]);
    write_csv(sink_for(&args.csv)?, &["kind", "key", "value"], &rows)
}

fn cmd_spectral(args: &SpectralArgs) -> Result<()> {
    let pattern = build_pattern(args.n, &args.stages)?;
    let is_standard = args.stages.is_none();
    let header = ["row", "label", "order", "value", "threshold", "holds"];
    let mut rows = Vec::new();
    for (idx, &s) in pattern.stages().iter().enumerate() {
        let value = lambda(args.n, args.order, s)?;
        rows.push(vec![
            "eigenvalue".to_string(),
            format!("stage_{}", idx + 1),
            args.order.to_string(),
            real(value),
            String::new(),
            String::new(),
        ]);
    }
    rows.push(vec![
        "product".to_string(),
        "pattern".to_string(),
        args.order.to_string(),
        real(lambda_product(args.order, &pattern)?),
        String::new(),
        String::new(),
    ]);
    if is_standard && args.n % 2 == 1 && args.n >= 3 {
        rows.push(vec![
            "averaged".to_string(),
            "middle".to_string(),
            args.order.to_string(),
            real(lambda_bar(args.order, &pattern)?),
            String::new(),
            String::new(),
        ]);
    }
    if is_standard && args.n >= 6 {
        let report = eigenvalue_decay(args.n)?;
        for entry in &report.entries {
            rows.push(vec![
                "decay".to_string(),
                entry.label.to_string(),
                entry.order.to_string(),
                real(entry.log_abs),
                real(entry.log_threshold),
                entry.holds.to_string(),
            ]);
        }
    }
    write_csv(io::stdout().lock(), &header, &rows)
}

fn cmd_bound(args: &BoundArgs) -> Result<()> {
    if args.n_min > args.n_max {
        bail!("--n-min must not exceed --n-max");
    }
    let header = [
        "n",
        "parity",
        "sigma2",
        "delta_bar",
        "term1",
        "term2",
        "term3",
        "bound",
        "ks_exact",
        "certified",
    ];
    let mut rows = Vec::new();
    for n in args.n_min..=args.n_max {
        let supported = (n % 2 == 0 && n >= 6) || (n % 2 == 1 && n >= 7);
        if !supported {
            continue;
        }
        let report = if n <= args.exact_max {
            certify(n)?
        } else if n % 2 == 0 {
            even_bound(n)?
        } else {
            odd_bound(n)?
        };
        rows.push(vec![
            n.to_string(),
            report.parity.to_string(),
            real(report.sigma2),
            real(report.delta_bar),
            real(report.term_delta),
            real(report.term_conc),
            real(report.term_smooth),
            real(report.total),
            report.ks_exact.map(real).unwrap_or_default(),
            report
                .certified()
                .map(|c| c.to_string())
                .unwrap_or_default(),
        ]);
    }
    if rows.is_empty() {
        bail!("no supported n in {}..={}", args.n_min, args.n_max);
    }
    write_csv(sink_for(&args.csv)?, &header, &rows)
}

fn cmd_verify(args: &VerifyArgs, seed: u64) -> Result<()> {
    let config = SuiteConfig {
        seed,
        filter: args.only.clone(),
    };
    let outcomes = run_verification_suite(&config)?;
    let mut stdout = io::stdout().lock();
    for outcome in &outcomes {
        writeln!(stdout, "{}", outcome_line(outcome))?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(
        stdout,
        "{} of {} checks passed (seed {seed})",
        outcomes.len() - failed,
        outcomes.len()
    )?;
    drop(stdout);
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
