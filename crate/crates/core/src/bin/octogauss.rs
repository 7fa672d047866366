use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use octogauss::algebra::matrix::{left_mul_matrix_oct, right_mul_matrix_oct};
use octogauss::algebra::octonion::{self, Octonion};
use octogauss::algebra::table::{generate_mult_table, table_to_csv};
use octogauss::cp3::hopf::gram_scan_csv;
use octogauss::geometry::catalog::parse_number;
use octogauss::report::{convergence_study, run_suite, ConfigMap, ResidualReport, ScenarioConfig, Suite};
use octogauss::{Error, Result};

#[derive(Parser)]
#[command(name = "octogauss", version, about = "Numerical checks of octonionic Gauss-map identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite and emit a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Rerun the s7 or cp3 residual over several steps and fit the order.
    Study {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Decreasing step sizes, comma separated.
        #[arg(long)]
        steps: Option<String>,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Write the basis multiplication table of a Cayley-Dickson level as CSV.
    Table {
        #[arg(long, default_value_t = 3)]
        level: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the left or right multiplication matrix of an octonion as CSV.
    Matrix {
        /// Eight comma-separated coefficients.
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the W-field Gram determinant over seeded random points of S^7.
    Gram {
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    S7,
    Cp3,
    Hopf,
    Topology,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::S7 => Suite::S7,
            SuiteArg::Cp3 => Suite::Cp3,
            SuiteArg::Hopf => Suite::Hopf,
            SuiteArg::Topology => Suite::Topology,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

/// Scenario flags. Values are kept as text and validated together with the
/// config file; a flag overrides the file.
#[derive(Args, Default)]
struct ScenarioArgs {
    /// Key-value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Chart name or `name(args)`, e.g. `product_torus(3,3,0.6)`.
    #[arg(long)]
    chart: Option<String>,
    #[arg(long)]
    t0: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    nesting: Option<String>,
    #[arg(long)]
    quad: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// CSV of per-point records.
    #[arg(long)]
    csv: Option<String>,
}

impl ScenarioArgs {
    fn to_map(&self, suite: Suite, steps: Option<&str>) -> Result<ConfigMap> {
        let file = match &self.config {
            Some(path) => ConfigMap::parse(&fs::read_to_string(path)?)?,
            None => ConfigMap::default(),
        };
        let mut flags = ConfigMap::default();
        flags.set("suite", suite);
        let pairs = [
            ("chart", &self.chart),
            ("t0", &self.t0),
            ("p", &self.p),
            ("q", &self.q),
            ("a", &self.a),
            ("eps", &self.eps),
            ("mode", &self.mode),
            ("delta", &self.delta),
            ("points", &self.points),
            ("h", &self.h),
            ("order", &self.order),
            ("nesting", &self.nesting),
            ("quad", &self.quad),
            ("seed", &self.seed),
            ("out", &self.out),
            ("csv", &self.csv),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                flags.set(k, v);
            }
        }
        if let Some(s) = steps {
            flags.set("steps", s);
        }
        Ok(file.merged(&flags))
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(report: &ResidualReport, cfg: &ScenarioConfig, started: Instant) -> Result<bool> {
    write_or_print(cfg.out.as_deref(), &report.to_json()?)?;
    if let Some(csv) = &cfg.csv {
        fs::write(csv, report.points_csv())?;
    }
    eprint!("{}", report.summary());
    eprintln!(
        "{} {} in {:.2?}",
        if report.passed { "passed" } else { "FAILED" },
        cfg.suite,
        started.elapsed()
    );
    Ok(report.passed)
}

fn parse_octonion(text: &str) -> Result<Octonion> {
    let v: Vec<f64> = text.split(',').map(parse_number).collect::<Result<_>>()?;
    <[f64; 8]>::try_from(v.as_slice())
        .map_err(|_| Error::Config(format!("expected 8 coefficients, got {}", v.len())))
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    match cli.command {
        Command::Verify { suite, scenario } => {
            let cfg = ScenarioConfig::from_map(&scenario.to_map(suite.into(), None)?)?;
            let report = run_suite(&cfg)?;
            emit(&report, &cfg, started)
        }
        Command::Study { suite, steps, scenario } => {
            let map = scenario.to_map(suite.into(), steps.as_deref())?;
            let cfg = ScenarioConfig::from_map(&map)?;
            let steps = map.steps()?.unwrap_or_else(|| vec![1e-2, 5e-3, 2.5e-3]);
            let report = convergence_study(&cfg, &steps)?;
            emit(&report, &cfg, started)
        }
        Command::Table { level, out } => {
            write_or_print(out.as_deref(), &table_to_csv(&generate_mult_table(level)?))?;
            Ok(true)
        }
        Command::Matrix { x, side, out } => {
            let x = parse_octonion(&x)?;
            let m = match side {
                Side::Left => left_mul_matrix_oct(&x),
                Side::Right => right_mul_matrix_oct(&x),
            };
            write_or_print(out.as_deref(), &m.to_csv())?;
            Ok(true)
        }
        Command::Gram { points, seed, out } => {
            use rand::SeedableRng;
            use rand_distr::{Distribution, StandardNormal};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let xs: Vec<Octonion> = (0..points)
                .map(|_| octonion::normalize(&std::array::from_fn(|_| StandardNormal.sample(&mut rng))))
                .collect();
            write_or_print(out.as_deref(), &gram_scan_csv(&xs)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
