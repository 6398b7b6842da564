//! Command-line driver: synthesize projection data, reconstruct polynomials,
//! inspect node schemes, and sweep regularity/conditioning reports.
//!
//! Exit codes: 0 success, 1 verification tolerances exceeded, 2 validation
//! failure, 3 singular system, 4 I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use radonpoly::io;
use radonpoly::{
    certify, nodes_chebyshev, nodes_equidistant, nodes_for_degree, nodes_obrechkoff,
    nodes_u_zeros_even, reconstruct, reprojection_residual, synthesize_grid,
    synthesize_grid_quadrature, Error, NodeSet, ProjectionGrid, Reconstruction,
    RidgeRepresentation, Scheme,
};

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Seed used when none is given, so repeated runs are reproducible.
const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "radonpoly",
    about = "Reconstruct bivariate polynomials from Radon projections over parallel chords of the unit disk",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Equidistant,
    Chebyshev,
    #[value(name = "u-zeros")]
    UZeros,
    Obrechkoff,
    Custom,
}

impl SchemeArg {
    fn to_scheme(self) -> Scheme {
        match self {
            SchemeArg::Equidistant => Scheme::Equidistant,
            SchemeArg::Chebyshev => Scheme::Chebyshev,
            SchemeArg::UZeros => Scheme::UZeros,
            SchemeArg::Obrechkoff => Scheme::Obrechkoff,
            SchemeArg::Custom => Scheme::Custom,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TestFunction {
    /// exp(-x^2 - y^2)
    Gaussian,
    /// cos(2x + y)
    Cosine,
}

impl TestFunction {
    fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            TestFunction::Gaussian => (-x * x - y * y).exp(),
            TestFunction::Cosine => (2.0 * x + y).cos(),
        }
    }
}

/// How the radial nodes are chosen: a named scheme sized for the degree, or
/// an explicit node file.
#[derive(Args)]
struct NodeSource {
    /// Node scheme; `custom` requires --nodes-file
    #[arg(long, value_enum, default_value = "u-zeros")]
    scheme: SchemeArg,
    /// Node set file (required for --scheme custom)
    #[arg(long)]
    nodes_file: Option<PathBuf>,
    /// Free node of the even u-zeros scheme
    #[arg(long, default_value_t = 0.95)]
    t0: f64,
}

impl NodeSource {
    fn resolve(&self, degree: usize) -> Result<NodeSet, CliError> {
        if let Some(path) = &self.nodes_file {
            let nodes = io::read_node_set(&read_file(path)?)?;
            if nodes.degree() != degree {
                return Err(CliError::Validation(format!(
                    "node file {} serves degree {}, requested degree {}",
                    path.display(),
                    nodes.degree(),
                    degree
                )));
            }
            Ok(nodes)
        } else if self.scheme == SchemeArg::Custom {
            Err(CliError::Validation(
                "--scheme custom requires --nodes-file".to_string(),
            ))
        } else {
            Ok(nodes_for_degree(self.scheme.to_scheme(), degree, self.t0)?)
        }
    }
}

#[derive(Args)]
struct SimulateOpts {
    /// Target degree n
    #[arg(long)]
    degree: usize,
    #[command(flatten)]
    nodes: NodeSource,
    /// Seed for the random polynomial when no file is given
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Read the polynomial from this file instead of generating it
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Project this built-in function by quadrature instead of a polynomial
    #[arg(long, value_enum)]
    function: Option<TestFunction>,
    /// Gauss-Legendre order per chord for --function
    #[arg(long, default_value_t = 32)]
    quad_order: usize,
    /// Output grid file
    #[arg(long)]
    out: PathBuf,
    /// Also write the projected polynomial here
    #[arg(long)]
    poly_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write exact projections of a polynomial (seeded, from file, or of a
    /// built-in test function) over the standard chord geometry
    Simulate(SimulateOpts),
    /// Reconstruct the polynomial interpolating a projection grid
    Reconstruct {
        /// Input grid file
        #[arg(long = "in")]
        input: PathBuf,
        /// Output polynomial file
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate (or validate) a node set, certify it, and report per block
    Nodes {
        /// Target degree n
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        nodes: NodeSource,
        /// Output node set file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep determinants and condition numbers of every block over a range
    /// of m for the four named schemes, as CSV
    Regularity {
        /// Range of m, inclusive, as A..B
        #[arg(long, value_parser = parse_range)]
        m_range: (usize, usize),
        /// Free node of the even u-zeros scheme
        #[arg(long, default_value_t = 0.95)]
        t0: f64,
        /// Output CSV file
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate, reconstruct, and compare in one step
    Verify {
        /// Target degree n
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        nodes: NodeSource,
        /// Seed for the random polynomial
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest allowed coefficient error
        #[arg(long, default_value_t = 1e-8)]
        tol_coeff: f64,
        /// Largest allowed re-projection residual
        #[arg(long, default_value_t = 1e-9)]
        tol_resid: f64,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, found '{s}'"))?;
    let a: usize = a.parse().map_err(|_| format!("bad range start '{a}'"))?;
    let b: usize = b.parse().map_err(|_| format!("bad range end '{b}'"))?;
    if a == 0 || b < a {
        return Err(format!("range {a}..{b} must satisfy 1 <= A <= B"));
    }
    Ok((a, b))
}

enum CliError {
    Validation(String),
    Singular(String),
    Io(String),
    ToleranceExceeded,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::SingularBlock { .. } | Error::SingularMatrix { .. } => {
                CliError::Singular(e.to_string())
            }
            Error::Io(_) => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn print_diagnostics(rec: &Reconstruction, residual: Option<f64>) {
    let mut blocks = rec.block_conditions.clone();
    blocks.sort_by_key(|bc| bc.block);
    for bc in &blocks {
        println!("block {:>2}: cond {:e}", bc.block, bc.condition);
    }
    println!("max condition: {:e}", rec.max_condition);
    if let Some(r) = residual {
        println!("re-projection residual: {r:e}");
    }
    if rec.ill_conditioned {
        eprintln!(
            "warning: block systems are ill-conditioned (max condition {:e} exceeds {:e})",
            rec.max_condition,
            radonpoly::ILL_CONDITIONING_WARN_THRESHOLD
        );
    }
}

fn cmd_simulate(opts: &SimulateOpts) -> Result<(), CliError> {
    let node_set = opts.nodes.resolve(opts.degree)?;
    let (grid, rep): (ProjectionGrid, Option<RidgeRepresentation>) = if let Some(f) = opts.function
    {
        if opts.quad_order == 0 {
            return Err(CliError::Validation("--quad-order must be positive".into()));
        }
        (
            synthesize_grid_quadrature(|x, y| f.eval(x, y), &node_set, opts.quad_order)?,
            None,
        )
    } else {
        let rep = match &opts.poly_file {
            Some(path) => {
                let rep = io::read_ridge(&read_file(path)?)?;
                if rep.degree() != opts.degree {
                    return Err(CliError::Validation(format!(
                        "polynomial file has degree {}, requested degree {}",
                        rep.degree(),
                        opts.degree
                    )));
                }
                rep
            }
            None => RidgeRepresentation::random(opts.degree, opts.seed),
        };
        (synthesize_grid(&rep, &node_set)?, Some(rep))
    };
    write_file(&opts.out, &io::write_grid(&grid))?;
    println!(
        "wrote {} projections ({} angles x {} nodes) to {}",
        grid.raw_values().len(),
        grid.angle_count(),
        grid.nodes().len(),
        opts.out.display()
    );
    if let Some(path) = &opts.poly_out {
        match &rep {
            Some(rep) => write_file(path, &io::write_ridge(rep))?,
            None => {
                return Err(CliError::Validation(
                    "--poly-out requires a polynomial source, not --function".into(),
                ))
            }
        }
    }
    Ok(())
}

fn cmd_reconstruct(input: &Path, out: &Path) -> Result<(), CliError> {
    let grid = io::read_grid(&read_file(input)?)?;
    let rec = reconstruct(&grid)?;
    let residual = reprojection_residual(&rec.polynomial, &grid)?;
    write_file(out, &io::write_ridge(&rec.polynomial))?;
    println!(
        "reconstructed degree-{} polynomial from {}",
        rec.polynomial.degree(),
        input.display()
    );
    print_diagnostics(&rec, Some(residual));
    Ok(())
}

fn cmd_nodes(degree: usize, nodes: &NodeSource, out: Option<&Path>) -> Result<(), CliError> {
    let node_set = nodes.resolve(degree)?;
    let report = certify(&node_set);
    println!(
        "scheme {} parity {} m {}: {}",
        node_set.scheme().label(),
        node_set.parity().label(),
        report.harmonic_m,
        if report.singular { "SINGULAR" } else { "regular" }
    );
    for block in &report.blocks {
        println!(
            "block {:>2}: det {} cond {:e}{}",
            block.block,
            io::format_g17(block.determinant),
            block.condition,
            if block.singular { "  SINGULAR" } else { "" }
        );
    }
    if let Some(path) = out {
        write_file(path, &io::write_node_set(&node_set))?;
    }
    if report.singular {
        return Err(CliError::Singular(format!(
            "node set is singular for degree {degree}"
        )));
    }
    Ok(())
}

fn cmd_regularity(m_lo: usize, m_hi: usize, t0: f64, out: &Path) -> Result<(), CliError> {
    let mut csv = String::from(io::REPORT_CSV_HEADER);
    csv.push('\n');
    let mut summary: Vec<(String, usize, f64)> = Vec::new();
    for m in m_lo..=m_hi {
        let sets = [
            ("equidistant", nodes_equidistant(m)),
            ("chebyshev", nodes_chebyshev(m)),
            ("u-zeros", nodes_u_zeros_even(m, t0)?),
            ("obrechkoff", nodes_obrechkoff(m)),
        ];
        for (label, nodes) in sets {
            let report = certify(&nodes);
            io::append_report_csv(&mut csv, label, &report);
            summary.push((label.to_string(), m, report.max_condition));
        }
    }
    write_file(out, &csv)?;
    println!("scheme,m,max_cond");
    for (label, m, cond) in summary {
        println!("{label},{m},{}", io::format_g17(cond));
    }
    Ok(())
}

fn cmd_verify(
    degree: usize,
    nodes: &NodeSource,
    seed: u64,
    tol_coeff: f64,
    tol_resid: f64,
) -> Result<(), CliError> {
    let node_set = nodes.resolve(degree)?;
    let rep = RidgeRepresentation::random(degree, seed);
    let grid = synthesize_grid(&rep, &node_set)?;
    let rec = reconstruct(&grid)?;
    let coeff_err = rec.polynomial.max_coeff_distance(&rep);
    let residual = reprojection_residual(&rec.polynomial, &grid)?;
    println!("degree {degree} scheme {} seed {seed}", node_set.scheme().label());
    println!("coefficient max error: {coeff_err:e} (tolerance {tol_coeff:e})");
    println!("re-projection residual: {residual:e} (tolerance {tol_resid:e})");
    print_diagnostics(&rec, None);
    if coeff_err <= tol_coeff && residual <= tol_resid {
        println!("verify: PASS");
        Ok(())
    } else {
        println!("verify: FAIL");
        Err(CliError::ToleranceExceeded)
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Simulate(opts) => cmd_simulate(opts),
        Command::Reconstruct { input, out } => cmd_reconstruct(input, out),
        Command::Nodes { degree, nodes, out } => cmd_nodes(*degree, nodes, out.as_deref()),
        Command::Regularity { m_range, t0, out } => cmd_regularity(m_range.0, m_range.1, *t0, out),
        Command::Verify {
            degree,
            nodes,
            seed,
            tol_coeff,
            tol_resid,
        } => cmd_verify(*degree, nodes, *seed, *tol_coeff, *tol_resid),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::ToleranceExceeded) => ExitCode::from(1),
        Err(CliError::Validation(msg)) => {
            eprintln!("validation error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Singular(msg)) => {
            eprintln!("singular system: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(4)
        }
    }
}
