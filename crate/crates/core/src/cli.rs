//! The `diffdim` command line.
//!
//! Every subcommand writes a plain-text report to stdout. With `--out DIR`
//! the report and any machine-readable outputs (the binomial-basis
//! coefficient listing, oracle CSV) are also written to files named after
//! the input and the subcommand.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use crate::dimpoly::{self, DimensionPolynomialReport, LeaderTable};
use crate::dmod::{gb_dimension_polynomial, kahler_module, ModulePresentation};
use crate::error::{Error, Result};
use crate::lambda_monoid::Partition;
use crate::linpoly::Limits;
use crate::numpoly::{maximal_elements_lex_family, NumericalPolynomial};
use crate::oracle;
use crate::setdim::{omega_e, phi_a, PointFile};
use crate::system::{parse_input, InputFile, LinearSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Coefficients in the binomial basis.
    Binomial,
    /// Expanded monomials.
    Expanded,
    Both,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "diffdim", version, about = "Dimension polynomials of linear difference-differential systems")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Block sizes overriding the partition in the input, e.g. `1,1`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub partition: Option<Vec<usize>>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Both)]
    pub format: OutputFormat,
    /// Directory receiving the report and machine-readable outputs.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cap on completion rounds.
    #[arg(long, global = true, default_value_t = 1000)]
    pub max_rounds: usize,
    /// Cap on reduction steps per reduction.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_steps: usize,
    /// Cap on terms enumerated per oracle evaluation.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_CAP)]
    pub oracle_cap: u128,
}

#[derive(Clone, Debug, Args)]
pub struct GridArgs {
    /// Lower corner, e.g. `0,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lower: Vec<i64>,
    /// Upper corner, e.g. `4,4`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub upper: Vec<i64>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Dimension polynomial ω_E of a finite subset of N^m.
    Setdim { input: PathBuf },
    /// Dimension polynomial φ_A of a finite subset of N^m × Z^n.
    Zsetdim { input: PathBuf },
    /// Points maximal for a lexicographic order along some permutation.
    Maximal { input: PathBuf },
    /// Characteristic set of a linear system.
    Charset { input: PathBuf },
    /// Dimension polynomial of a linear system via its characteristic set.
    Dimpoly {
        input: PathBuf,
        /// Cross-check against brute-force enumeration before reporting.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Dimension polynomial via a Gröbner basis of the module of differentials.
    Gbdim {
        input: PathBuf,
        #[arg(long)]
        check_oracle: bool,
    },
    /// Evaluation table of the dimension polynomial.
    Strength {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Brute-force term counts on a grid, as CSV.
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Setdim { .. } => "setdim",
            Command::Zsetdim { .. } => "zsetdim",
            Command::Maximal { .. } => "maximal",
            Command::Charset { .. } => "charset",
            Command::Dimpoly { .. } => "dimpoly",
            Command::Gbdim { .. } => "gbdim",
            Command::Strength { .. } => "strength",
            Command::Oracle { .. } => "oracle",
        }
    }

    fn input(&self) -> &Path {
        match self {
            Command::Setdim { input }
            | Command::Zsetdim { input }
            | Command::Maximal { input }
            | Command::Charset { input }
            | Command::Dimpoly { input, .. }
            | Command::Gbdim { input, .. }
            | Command::Strength { input, .. }
            | Command::Oracle { input, .. } => input,
        }
    }
}

/// What a run produced: the report plus named machine-readable files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub report: String,
    pub artifacts: Vec<(String, String)>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

fn limits(config: &RunConfig) -> Limits {
    Limits {
        completion_rounds: config.max_rounds,
        reduction_steps: config.max_steps,
    }
}

fn load_input(config: &RunConfig, path: &Path) -> Result<InputFile> {
    let mut input = parse_input(&read(path)?)?;
    let lim = limits(config);
    match &mut input {
        InputFile::System(sys) => {
            if let Some(blocks) = &config.partition {
                *sys = sys.clone().with_partition(blocks.clone())?;
            }
            sys.ring.limits = lim;
        }
        InputFile::Module(m) => {
            if let Some(blocks) = &config.partition {
                let p = &m.ring.partition;
                m.ring.partition = Partition::with_derivations(p.num_derivations(), blocks.clone(), p.num_automorphisms())?;
            }
            m.ring.limits = lim;
        }
    }
    Ok(input)
}

fn load_system(config: &RunConfig, path: &Path) -> Result<LinearSystem> {
    match load_input(config, path)? {
        InputFile::System(s) => Ok(s),
        InputFile::Module(_) => Err(Error::Unsupported(format!(
            "{} is a module presentation; use `gbdim`",
            path.display()
        ))),
    }
}

fn render_polynomial(out: &mut String, label: &str, phi: &NumericalPolynomial, format: OutputFormat, expanded_shown: bool) {
    if format != OutputFormat::Binomial && !expanded_shown {
        let _ = writeln!(out, "{} = {}", label, phi);
    }
    if format != OutputFormat::Expanded {
        let _ = writeln!(out, "{} in the binomial basis:", label);
        out.push_str(&phi.canonical_listing());
    }
}

fn point_partition(config: &RunConfig, file: &PointFile, width: usize, n: usize) -> Result<Partition> {
    let m = width
        .checked_sub(n)
        .ok_or_else(|| Error::DimensionMismatch(format!("points of width {} with {} automorphisms", width, n)))?;
    let blocks = config
        .partition
        .clone()
        .or_else(|| file.partition.clone())
        .unwrap_or_else(|| if m == 0 { vec![] } else { vec![m] });
    Partition::with_derivations(m, blocks, n)
}

fn polynomial_output(report: String, phi: &NumericalPolynomial) -> RunOutput {
    RunOutput {
        report,
        artifacts: vec![("coeffs".into(), phi.canonical_listing())],
    }
}

fn dimpoly_output(config: &RunConfig, head: String, rep: &DimensionPolynomialReport, names: &[String]) -> RunOutput {
    let mut report = head;
    report.push_str(&rep.render(names));
    render_polynomial(&mut report, "Phi", &rep.phi, config.format, true);
    polynomial_output(report, &rep.phi)
}

fn grid(config_grid: &GridArgs, k: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    if config_grid.lower.len() != k || config_grid.upper.len() != k {
        return Err(Error::DimensionMismatch(format!("--lower and --upper need {} coordinates", k)));
    }
    if config_grid.lower.iter().zip(&config_grid.upper).any(|(l, u)| l > u || *l < 0) {
        return Err(Error::DimensionMismatch("the grid needs 0 <= lower <= upper".into()));
    }
    Ok((config_grid.lower.clone(), config_grid.upper.clone()))
}

/// The leader table used by `oracle`: from the characteristic set of a
/// system, or from the Gröbner basis of a module.
fn leader_table(config: &RunConfig, path: &Path) -> Result<LeaderTable> {
    match load_input(config, path)? {
        InputFile::System(sys) => {
            let cs = sys.ring.charset_linear_system(&sys.equations)?;
            LeaderTable::from_charset(&sys.ring, &cs)
        }
        InputFile::Module(m) => {
            let pres = ModulePresentation::from_file(m);
            let basis = pres.module.groebner_completion(&pres.relations)?;
            pres.module.leader_table(&basis)
        }
    }
}

/// Runs one subcommand and returns its outputs without touching the disk.
pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    let path = config.command.input();
    match &config.command {
        Command::Setdim { .. } => {
            let file = PointFile::parse(&read(path)?)?;
            let width = file.points.first().map_or(0, |p| p.len());
            if file.automorphisms.unwrap_or(0) != 0 {
                return Err(Error::Unsupported("`setdim` takes points of N^m; use `zsetdim`".into()));
            }
            let partition = point_partition(config, &file, width, 0)?;
            let pts = file
                .points
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&x| u32::try_from(x).map_err(|_| Error::DimensionMismatch(format!("negative coordinate in {:?}", p))))
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let omega = omega_e(&pts, partition.blocks())?;
            let mut report = String::new();
            let _ = writeln!(report, "points: {}", file.points.len());
            let _ = writeln!(report, "partition: {}", partition.blocks().iter().join(" "));
            render_polynomial(&mut report, "omega", &omega, config.format, false);
            Ok(polynomial_output(report, &omega))
        }
        Command::Zsetdim { .. } => {
            let file = PointFile::parse(&read(path)?)?;
            let n = file.automorphisms.unwrap_or(0);
            let width = file.points.first().map_or(n, |p| p.len());
            let partition = point_partition(config, &file, width, n)?;
            let phi = phi_a(&file.points, &partition)?;
            let mut report = String::new();
            let _ = writeln!(report, "points: {}", file.points.len());
            let _ = writeln!(report, "partition: {} ; automorphisms: {}", partition.blocks().iter().join(" "), n);
            render_polynomial(&mut report, "phi", &phi, config.format, false);
            Ok(polynomial_output(report, &phi))
        }
        Command::Maximal { .. } => {
            let file = PointFile::parse(&read(path)?)?;
            let maximal = maximal_elements_lex_family(&file.points);
            let mut report = String::new();
            for p in maximal.iter().rev() {
                let _ = writeln!(report, "{}", p.iter().join(" "));
            }
            Ok(RunOutput {
                report,
                artifacts: Vec::new(),
            })
        }
        Command::Charset { .. } => {
            let sys = load_system(config, path)?;
            let cs = sys.ring.charset_linear_system(&sys.equations)?;
            let mut report = String::new();
            let _ = writeln!(report, "characteristic set ({} elements):", cs.len());
            for a in &cs {
                let l = sys.ring.leaders(a)?;
                let _ = writeln!(
                    report,
                    "  {}    [v = {}]",
                    a.display(&sys.ring.partition, &sys.names),
                    crate::lincomb::term_name(&l.sigma, &sys.names)
                );
            }
            Ok(RunOutput {
                report,
                artifacts: Vec::new(),
            })
        }
        Command::Dimpoly { check_oracle, .. } => {
            let sys = load_system(config, path)?;
            let rep = dimpoly::dimension_polynomial(&sys, *check_oracle)?;
            Ok(dimpoly_output(config, String::new(), &rep, &sys.names))
        }
        Command::Gbdim { check_oracle, .. } => {
            let pres = match load_input(config, path)? {
                InputFile::System(sys) => kahler_module(&sys),
                InputFile::Module(m) => ModulePresentation::from_file(m),
            };
            let (_, rep) = gb_dimension_polynomial(&pres, *check_oracle)?;
            let mut head = String::new();
            let _ = writeln!(head, "relations:");
            for r in pres.display_relations() {
                let _ = writeln!(head, "  {}", r);
            }
            Ok(dimpoly_output(config, head, &rep, &pres.names))
        }
        Command::Strength { grid: g, .. } => {
            let sys = load_system(config, path)?;
            let (lower, upper) = grid(g, sys.ring.partition.num_vars())?;
            let report = dimpoly::strength_report(&sys, &lower, &upper)?;
            Ok(RunOutput {
                report,
                artifacts: Vec::new(),
            })
        }
        Command::Oracle { grid: g, .. } => {
            let table = leader_table(config, path)?;
            let k = table.partition.num_vars();
            let (lower, upper) = grid(g, k)?;
            let mut csv = (1..=k).map(|i| format!("r{}", i)).join(",");
            csv.push_str(",count\n");
            for r in oracle::grid_points(&lower, &upper) {
                let c = oracle::count_reduced_terms(&table, &r, config.oracle_cap)?;
                let _ = writeln!(csv, "{},{}", r.iter().join(","), c);
            }
            Ok(RunOutput {
                report: csv.clone(),
                artifacts: vec![("csv".into(), csv)],
            })
        }
    }
}

/// Runs and writes `<stem>.<command>.txt` plus one file per artifact when
/// an output directory is configured.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let output = execute(config)?;
    if let Some(dir) = &config.out {
        fs::create_dir_all(dir)?;
        let stem = config
            .command
            .input()
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".into());
        let base = format!("{}.{}", stem, config.command.name());
        fs::write(dir.join(format!("{}.txt", base)), &output.report)?;
        for (ext, body) in &output.artifacts {
            fs::write(dir.join(format!("{}.{}", base, ext)), body)?;
        }
    }
    Ok(output)
}

/// Exit status for an error: 2 when enumeration disagrees with a closed
/// form, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::OracleMismatch { .. } | Error::Interpolation { .. } => 2,
        _ => 1,
    }
}

/// Entry point shared by the binary: parses arguments, runs, prints.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&config) {
        Ok(out) => {
            print!("{}", out.report);
            0
        }
        Err(e @ Error::Parse { .. }) => {
            eprintln!("error: {}: {}", config.command.input().display(), e);
            exit_code(&e)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code(&e)
        }
    }
}
