use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use convdiff_lab::experiment::{self, underflow_warning};
use convdiff_lab::report::{format_float, Metadata};
use convdiff_lab::{
    compare_solutions, run_convergence, Config, Format, ProblemRegistry, Result, RhsChoice, SchemeChoice, SweepOptions,
};

#[derive(Parser)]
#[command(name = "convdiff-lab", version, about = "Finite-difference and bubble Petrov-Galerkin experiments for -eps u'' + u' = f")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve once and report the errors.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "upwind")]
        scheme: String,
        #[arg(long, default_value = "pointwise")]
        rhs: String,
        /// Also write the nodal solution `x,u` to this CSV file.
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Sweep every scheme x rhs combination over a list of n.
    Convergence {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "upwind")]
        scheme: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "pointwise")]
        rhs: Vec<String>,
    },
    /// Compare two configs that share a system matrix.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        scheme_a: String,
        #[arg(long)]
        rhs_a: String,
        #[arg(long)]
        scheme_b: String,
        #[arg(long)]
        rhs_b: String,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "f2x")]
    problem: String,
    /// JSON file of tabulated problems to register.
    #[arg(long)]
    problems_file: Option<PathBuf>,
    #[arg(long)]
    eps: f64,
    /// Bubble height for `quadratic-bubble`.
    #[arg(long, default_value_t = 0.75)]
    beta: f64,
    /// Interior nodes next to x = 1 excluded from the max-norm error.
    #[arg(long, default_value_t = 0)]
    skip_outflow_nodes: usize,
    /// Warn when h/eps is past the exponential underflow threshold.
    #[arg(long)]
    warn_underflow: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

impl Common {
    fn registry(&self) -> Result<ProblemRegistry> {
        let mut registry = ProblemRegistry::new();
        if let Some(path) = &self.problems_file {
            registry.load_file(path)?;
        }
        Ok(registry)
    }

    fn config(&self, scheme: &str, rhs: &str) -> Result<Config> {
        Config::new(SchemeChoice::parse(scheme, self.beta)?, rhs.parse::<RhsChoice>()?)
    }

    fn check_underflow(&self, n: usize) {
        if self.warn_underflow {
            if let Some(msg) = underflow_warning(self.eps, n) {
                eprintln!("warning: n = {n}: {msg}");
            }
        }
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn sweep_options(&self) -> SweepOptions {
        SweepOptions { skip_outflow: self.skip_outflow_nodes }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { common, n, scheme, rhs, solution } => {
            let registry = common.registry()?;
            let config = common.config(&scheme, &rhs)?;
            common.check_underflow(n);
            let report = run_convergence(&registry, &common.problem, common.eps, &[config], &[n], common.sweep_options())?;
            if let Some(path) = solution {
                let problem = registry.problem(&common.problem, common.eps)?;
                let u = experiment::solve(&problem, &config, n)?;
                write_solution(&u, File::create(path)?)?;
            }
            report.write(common.format.into(), common.output()?)
        }
        Command::Convergence { common, n_list, scheme, rhs } => {
            let registry = common.registry()?;
            let mut configs = Vec::new();
            for s in &scheme {
                for r in &rhs {
                    configs.push(common.config(s, r)?);
                }
            }
            for &n in &n_list {
                common.check_underflow(n);
            }
            let report =
                run_convergence(&registry, &common.problem, common.eps, &configs, &n_list, common.sweep_options())?;
            report.write(common.format.into(), common.output()?)
        }
        Command::Compare { common, n, scheme_a, rhs_a, scheme_b, rhs_b } => {
            let registry = common.registry()?;
            let a = common.config(&scheme_a, &rhs_a)?;
            let b = common.config(&scheme_b, &rhs_b)?;
            common.check_underflow(n);
            let c = compare_solutions(&registry, &common.problem, common.eps, n, &a, &b)?;
            let mut out = common.output()?;
            match common.format {
                OutputFormat::Json => {
                    let doc = serde_json::json!({ "metadata": Metadata::now(&common.problem), "comparison": c });
                    serde_json::to_writer_pretty(&mut out, &doc)?;
                    writeln!(out)?;
                }
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.serialize(&c)?;
                    w.flush()?;
                }
            }
            Ok(())
        }
    }
}

fn write_solution(u: &convdiff::GridFunction, out: File) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(out));
    w.write_record(["x", "u"])?;
    let values = u.with_boundary();
    for (x, v) in u.mesh().nodes().iter().zip(values) {
        w.write_record([format_float(*x), format_float(v)])?;
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

