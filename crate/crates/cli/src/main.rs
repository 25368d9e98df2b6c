use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polylap::bounds::{compare_orders, verify_bounds, BOUND_SLACK};
use polylap::experiments::{run_appendix_fig1, run_exhaustion, run_spectrum, Shape, SpectrumReport};
use polylap::fourier::{
    hz_operator_bound_check, plancherel_check, polylaplace_fourier_check, FourierCheck, FourierGrid, HzBoundCheck,
};
use polylap::report::{emit_report, fmt_real, CsvTable, Format};
use polylap::{Domain, DomainSpec, Error, LatticeDomain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const THREADS_VAR: &str = "POLYLAP_THREADS";
/// Relative agreement required of the quadrature identities.
const FOURIER_TOLERANCE: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "polylap", version, about = "Dirichlet poly-Laplace spectra, eigenvalue bounds and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full spectrum of (−1)^l Δ^l with Dirichlet conditions.
    Spectrum {
        #[command(flatten)]
        domain: DomainArgs,
        /// Also compute eigenvectors and report residual norms.
        #[arg(long)]
        vectors: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the averaged and next-eigenvalue bounds for k = 1..kmax.
    Bounds {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = usize::MAX, hide_default_value = true)]
        kmax: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare (λ_k^l)² with λ_k^{2l}.
    CompareOrders {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = usize::MAX, hide_default_value = true)]
        kmax: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// λ_k^l along growing boxes or balls in ℤ^d.
    Exhaustion {
        #[arg(long, value_enum, default_value_t = ShapeArg::Box)]
        shape: ShapeArg,
        #[arg(long, short = 'd', default_value_t = 1)]
        dim: usize,
        #[arg(long, short = 'l', default_value_t = 1)]
        order: usize,
        #[arg(long, short = 'k', default_value_t = 1)]
        k: usize,
        /// Strictly increasing sizes; box s is [0, s]^d, ball s has ℓ¹ radius s.
        #[arg(long, value_delimiter = ',', default_values_t = [10, 20, 40, 80])]
        sizes: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Plancherel, the quadratic-form identity and the h_z bound on a grid.
    FourierCheck {
        #[command(flatten)]
        domain: DomainArgs,
        /// Grid points per axis; defaults to 2·(extent + l) + 1.
        #[arg(long)]
        grid: Option<usize>,
        /// Seed for the random test function.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ratio (λ_k¹)²/λ_k² on paths [0, n] against the clamped-beam constant.
    Fig1 {
        #[arg(long, short = 'k', default_value_t = 1)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [25, 50, 100, 200, 400])]
        n: Vec<usize>,
        /// Write the ratio curve as SVG.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct DomainArgs {
    /// Domain JSON, inline or as a file path.
    #[arg(long)]
    domain: String,
    #[arg(long, short = 'l', default_value_t = 1)]
    order: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Box,
    Ball,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Box => Shape::Box,
            ShapeArg::Ball => Shape::Ball,
        }
    }
}

impl OutputArgs {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }

    fn emit<T: Serialize + CsvTable>(&self, result: &T) -> Result<(), Failure> {
        write_text(self.out.as_deref(), &emit_report(result, self.format())?)
    }
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => Ok(io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn load_domain(arg: &str) -> Result<Domain, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    };
    let spec: DomainSpec =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("cannot parse domain: {e}")))?;
    Ok(spec.build()?)
}

fn lattice_only(domain: &Domain, what: &str) -> Result<LatticeDomain, Failure> {
    domain.as_lattice().cloned().ok_or_else(|| Failure::Usage(format!("{what} needs a lattice domain")))
}

#[derive(Serialize)]
struct FourierReport {
    l: usize,
    plancherel: FourierCheck,
    polylaplace: FourierCheck,
    hz_bound: HzBoundCheck,
    pass: bool,
}

fn csv_row(name: &str, values: &[f64], grid_n: usize) -> Vec<String> {
    let mut cells = vec![name.to_string()];
    cells.extend(values.iter().map(|&v| fmt_real(v)));
    cells.push(grid_n.to_string());
    cells
}

impl CsvTable for FourierReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["check", "lhs", "rhs", "rel_err", "grid_n"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let row = |name: &str, c: &FourierCheck| csv_row(name, &[c.lhs, c.rhs, c.rel_err], c.grid_n);
        vec![
            row("plancherel", &self.plancherel),
            row("polylaplace", &self.polylaplace),
            // lhs is the largest excess over the grid, rhs the admissible zero
            csv_row("hz_bound", &[self.hz_bound.max_excess, 0.0, self.hz_bound.max_excess / self.hz_bound.scale], self.hz_bound.nodes),
        ]
    }
}

/// Runs one subcommand; `Ok(false)` means a verdict failed.
fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Spectrum { domain, vectors, output } => {
            let d = load_domain(&domain.domain)?;
            let spectrum = run_spectrum(&d, domain.order, vectors)?;
            output.emit(&SpectrumReport::from(&spectrum))?;
            Ok(true)
        }
        Command::Bounds { domain, kmax, output } => {
            let d = lattice_only(&load_domain(&domain.domain)?, "bounds")?;
            let report = verify_bounds(&d, domain.order, kmax)?;
            output.emit(&report)?;
            Ok(report.all_pass())
        }
        Command::CompareOrders { domain, kmax, output } => {
            let d = load_domain(&domain.domain)?;
            let cmp = compare_orders(&d, domain.order, kmax)?;
            output.emit(&cmp)?;
            Ok(cmp.holds(BOUND_SLACK))
        }
        Command::Exhaustion { shape, dim, order, k, sizes, output } => {
            let result = run_exhaustion(shape.into(), dim, order, k, &sizes)?;
            output.emit(&result)?;
            Ok(result.non_increasing(BOUND_SLACK))
        }
        Command::FourierCheck { domain, grid, seed, output } => {
            let l = domain.order;
            let d = lattice_only(&load_domain(&domain.domain)?, "fourier-check")?;
            let grid = match grid {
                Some(n) => FourierGrid::new(d.dim(), n)?,
                None => FourierGrid::for_domain(&d, l),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f: Vec<f64> = (0..d.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let plancherel = plancherel_check(&d, &f, &grid)?;
            let polylaplace = polylaplace_fourier_check(&d, &f, l, &grid)?;
            let hz_bound = hz_operator_bound_check(&d, l, &grid)?;
            let pass = plancherel.rel_err <= FOURIER_TOLERANCE
                && polylaplace.rel_err <= FOURIER_TOLERANCE
                && hz_bound.holds(BOUND_SLACK);
            output.emit(&FourierReport { l, plancherel, polylaplace, hz_bound, pass })?;
            Ok(pass)
        }
        Command::Fig1 { k, n, plot, output } => {
            let series = run_appendix_fig1(k, &n)?;
            if let Some(path) = plot {
                write_text(Some(&path), &series.plot())?;
            }
            output.emit(&series)?;
            Ok(series.all_below_one())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
