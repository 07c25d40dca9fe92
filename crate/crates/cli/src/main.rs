use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use projeq_cli::{build_report, emit_report, load_configs, CONFIG_DIR_ENV};
use projeq_core::dynamics::{cycle_report, poly_roots};
use projeq_core::exact::{qi, RatFn};
use projeq_core::moebius::equivariance_check;
use projeq_core::ncalg::s_poly;
use projeq_core::operators::phi_operator;
use projeq_core::qseries::{named_series, verify_j_relation, verify_j_relation_corrected, SeriesName};
use projeq_core::suites::{Options, RESIDUAL_CHARS};

#[derive(Parser)]
#[command(name = "projeq", version, about = "Verification suites for projectively equivariant maps and operators")]
struct Cli {
    /// Directory holding <group>.config files; defaults to the shipped configs.
    #[arg(long, global = true, env = CONFIG_DIR_ENV)]
    config_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random functions per operator identity.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Random (T, f) pairs per matrix check.
    #[arg(long, default_value_t = 20)]
    nc_samples: usize,
    /// Truncation order of the j-relations.
    #[arg(long, default_value_t = 10)]
    order: i64,
    /// Include per-check wall times in the JSON report.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite: identities, klein, dynamics, qseries, ncalg or all.
    Verify {
        suite: String,
        #[command(flatten)]
        args: SuiteArgs,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a suite and write its JSON report.
    Report {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        args: SuiteArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Invariants of a group and the equivariant maps phi(alpha).
    Klein {
        #[arg(long, default_value = "A5")]
        group: String,
    },
    /// Period-2 cycles of the Klein map through the roots of f5.
    Cycles {
        #[arg(long, default_value = "klein")]
        map: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print a named q-series: eta, eta(1/2), E4, delta, j, j2..j5, RR.
    Qseries {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 10)]
        terms: u32,
    },
    /// Residual of the relation between j and jn, truncated at q^order.
    JRelation {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 20)]
        order: i64,
        /// Use the normalizations that make the relation hold.
        #[arg(long)]
        corrected: bool,
    },
    /// Non-commutative polynomials.
    Nc {
        #[command(subcommand)]
        command: NcCommand,
    },
}

#[derive(Subcommand)]
enum NcCommand {
    /// The polynomial S_n.
    SPoly {
        #[arg(long)]
        n: u32,
    },
}

fn options(cli_dir: Option<&PathBuf>, a: &SuiteArgs) -> Result<Options> {
    Ok(Options {
        seed: a.seed,
        identity_samples: a.samples,
        nc_samples: a.nc_samples,
        order: a.order,
        configs: load_configs(cli_dir.map(|p| p.as_path()))?,
    })
}

fn run(cli: Cli) -> Result<bool> {
    let dir = cli.config_dir.as_ref();
    match cli.command {
        Command::Verify { suite, args, out } => {
            let report = build_report(&suite, &options(dir, &args)?, args.timings)?;
            for c in &report.checks {
                println!("{} {}", c.status.to_uppercase(), c.id);
                if c.status == "fail" {
                    println!("    {}", c.residual);
                }
            }
            println!("suite={} seed={} status={}", report.suite, report.seed, report.status);
            if let Some(path) = out {
                emit_report(&report, &path)?;
            }
            Ok(report.passed())
        }
        Command::Report { suite, args, out } => {
            let report = build_report(&suite, &options(dir, &args)?, args.timings)?;
            emit_report(&report, &out)?;
            println!("wrote {} (status {})", out.display(), report.status);
            Ok(report.passed())
        }
        Command::Klein { group } => {
            let configs = load_configs(dir.map(|p| p.as_path()))?;
            let Some(cfg) = configs.iter().find(|c| c.name == group) else {
                bail!("unknown group {group:?}");
            };
            let pairs = cfg.pairs();
            let mut ok = true;
            for inv in &cfg.invariants {
                let alpha = RatFn::from_poly(inv.poly.clone());
                let phi = phi_operator(&alpha, inv.weight)?;
                let eq = equivariance_check(&phi, &pairs).holds;
                ok &= eq;
                println!("{} weight={} equivariant={eq}", inv.label, inv.weight);
                println!("  alpha = {alpha}");
                println!("  phi   = {phi}");
            }
            Ok(ok)
        }
        Command::Cycles { map, tol } => {
            if map != "klein" {
                bail!("unknown map {map:?}; only klein is available");
            }
            let configs = load_configs(dir.map(|p| p.as_path()))?;
            let Some(a5) = configs.iter().find(|c| c.name == "A5") else {
                bail!("missing config A5");
            };
            let (Some(v5), Some(f5)) = (a5.invariant("v5"), a5.invariant("f5")) else {
                bail!("A5 config lacks v5 or f5");
            };
            let k = phi_operator(&RatFn::from_poly(v5.poly.clone()), -12)?;
            let roots = poly_roots(&f5.poly, tol * 1e-4)?;
            let report = cycle_report(&k, &roots, 2, tol)?;
            println!("{report}");
            Ok(report.pass())
        }
        Command::Qseries { name, terms } => {
            let s: SeriesName = name.parse()?;
            println!("{}", named_series(&s, terms)?);
            Ok(true)
        }
        Command::JRelation { n, order, corrected } => {
            let order = qi(order);
            let r = if corrected { verify_j_relation_corrected(n, &order)? } else { verify_j_relation(n, &order)? };
            let zero = r.is_zero_below(&order);
            let text = r.to_string();
            let shown: String = text.chars().take(RESIDUAL_CHARS * 4).collect();
            println!("n={n} order={order} residual={shown}");
            println!("status={}", if zero { "pass" } else { "fail" });
            Ok(zero)
        }
        Command::Nc { command: NcCommand::SPoly { n } } => {
            println!("S{n} = {}", s_poly(n));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
