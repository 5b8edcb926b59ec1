//! Command-line front end: solve | coherent | spectrum | oracle | check.
//!
//! Reports go to stdout (or `--out PATH`) as JSON, CSV where noted; errors
//! are structured JSON on stderr. Exit codes: 0 success, 1 error,
//! 2 inconclusive.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use khqa::checks::check_suite;
use khqa::config::{parse_dims, parse_z, RunSpec};
use khqa::coherent::CoherentState;
use khqa::diophantine::Polynomial;
use khqa::error::{Error, Result};
use khqa::report::{
    self, CoherentReport, CoherentRow, ErrorReport, OracleReport, RealizationInfo,
    SpectrumReport, SpectrumRow, F64,
};

#[derive(Parser)]
#[command(
    name = "khqa",
    about = "Adiabatic quantum search over Diophantine Hamiltonians on su(1,1) Fock spaces",
    version
)]
struct Cli {
    /// INI-style config file; flags override file values.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Report format where both are supported.
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Suppress progress notes on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct SystemArgs {
    /// Quantum system: sho|isw|icw|pcw|ptp|hp|laguerre|su11.
    #[arg(long)]
    system: Option<String>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    bargmann_k: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Use the Perelomov-type coherent family for su11.
    #[arg(long)]
    perelomov: bool,
    /// Frequency scale (metadata only).
    #[arg(long)]
    omega: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the adiabatic search on a Diophantine equation.
    Solve {
        /// Polynomial expression, e.g. "(x1 - 1)^2 + (x2 - 2)^2".
        equation: Option<String>,
        #[command(flatten)]
        system: SystemArgs,
        /// Per-mode truncations: "16", "8,8", or "auto".
        #[arg(long)]
        dims: Option<String>,
        /// Displacements: "auto" or complex values "a+bi,..".
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        t_initial: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        t_growth: Option<f64>,
        #[arg(long)]
        step_control: Option<f64>,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        tail_tolerance: Option<f64>,
        /// Peak-probability target of the automatic z rule.
        #[arg(long)]
        z_margin: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Tabulate the number-state density of a coherent state.
    Coherent {
        #[command(flatten)]
        system: SystemArgs,
        /// Displacement, e.g. "1.5" or "1+0.5i".
        #[arg(long)]
        z: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        tail_tolerance: Option<f64>,
    },
    /// List (tuple, D, D^2) over the truncated box, ground level first.
    Spectrum {
        equation: Option<String>,
        /// Per-mode truncations: "16" or "8,8".
        #[arg(long)]
        dims: String,
    },
    /// Exhaustive search for roots of D over {0..bound}^k.
    Oracle {
        equation: Option<String>,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Run the operator and coherent-state invariant suite.
    Check {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; keep 2 reserved for inconclusive verdicts
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprint!("{}", report::to_json_string(&ErrorReport::of(&err)));
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let mut spec = RunSpec::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        spec.apply_config_text(&text)?;
    }
    let format = cli.output;
    match cli.command {
        Command::Solve {
            equation,
            system,
            dims,
            z,
            t_initial,
            t_max,
            t_growth,
            step_control,
            threshold,
            samples,
            tail_tolerance,
            z_margin,
            seed,
        } => {
            apply_system(&mut spec, &system);
            if let Some(eq) = equation {
                spec.equation = eq;
            }
            if let Some(d) = dims {
                spec.dims = parse_dims(&d)?;
            }
            if let Some(zs) = z {
                spec.z = parse_z(&zs)?;
            }
            set(&mut spec.evolve.t_initial, t_initial);
            set(&mut spec.evolve.t_max, t_max);
            set(&mut spec.evolve.t_growth, t_growth);
            set(&mut spec.evolve.step_control, step_control);
            set(&mut spec.evolve.halting_threshold, threshold);
            set(&mut spec.evolve.diagnostics_samples, samples);
            set(&mut spec.tail_tolerance, tail_tolerance);
            set(&mut spec.auto_z_margin, z_margin);
            set(&mut spec.seed, seed);
            if spec.equation.is_empty() {
                return Err(Error::Config("no equation given".into()));
            }
            if !cli.quiet {
                eprintln!("solving {} on {}", spec.equation, spec.system);
            }
            let report_data = spec.execute()?;
            emit(&cli.out, report::to_json_string(&report_data))?;
            Ok(match report_data.verdict.as_str() {
                "inconclusive" => 2,
                _ => 0,
            })
        }
        Command::Coherent {
            system,
            z,
            dim,
            tail_tolerance,
        } => {
            apply_system(&mut spec, &system);
            set(&mut spec.tail_tolerance, tail_tolerance);
            let r = spec.realization()?;
            let zc: Complex64 = report::parse_complex(&z)?;
            let state = CoherentState::by_recurrence(r, zc, dim, spec.tail_tolerance)?;
            let density = state.density();
            let mut cumulative = 0.0;
            let rows: Vec<CoherentRow> = density
                .probabilities
                .iter()
                .enumerate()
                .map(|(n, &p)| {
                    cumulative += p;
                    CoherentRow {
                        n,
                        p_n: F64(p),
                        cumulative: F64(cumulative),
                    }
                })
                .collect();
            let rep = CoherentReport {
                schema: report::SCHEMA_VERSION,
                command: "coherent",
                realization: RealizationInfo::of(&r),
                z: report::format_complex(zc),
                dim,
                tail_mass: F64(state.tail_mass()),
                max_index: density.max_index,
                max_prob: F64(density.max_prob),
                dominant: density.dominant,
                precondition_pass: !density.dominant,
                rows,
            };
            let text = match format {
                Some(OutputFormat::Csv) => rep.to_csv(),
                _ => report::to_json_string(&rep),
            };
            emit(&cli.out, text)?;
            Ok(0)
        }
        Command::Spectrum { equation, dims } => {
            let equation = equation.ok_or_else(|| Error::Config("no equation given".into()))?;
            let p = parse_padded(&equation, spec.max_vars)?;
            spec.equation = equation.clone();
            spec.dims = parse_dims(&dims)?;
            let r = spec.realization()?;
            let dims = match &spec.dims {
                khqa::DimsSpec::Explicit(d) => {
                    if d.len() == 1 {
                        vec![d[0]; p.num_vars()]
                    } else {
                        d.clone()
                    }
                }
                khqa::DimsSpec::Auto => {
                    return Err(Error::Config("spectrum needs explicit dims".into()))
                }
            };
            let space = spec.space(&r, &dims)?;
            if p.num_vars() != space.num_modes() {
                return Err(Error::ArityMismatch {
                    expected: p.num_vars(),
                    found: space.num_modes(),
                });
            }
            let mut rows: Vec<SpectrumRow> = (0..space.total_dim())
                .map(|flat| {
                    let tuple = space.decode(flat);
                    let point: Vec<u64> = tuple.iter().map(|&n| n as u64).collect();
                    let d = p.evaluate(&point)?;
                    Ok(SpectrumRow {
                        tuple,
                        d_squared: (&d * &d).to_string(),
                        d: d.to_string(),
                    })
                })
                .collect::<Result<_>>()?;
            // ground level first, ties by tuple
            rows.sort_by(|a, b| {
                let ka = (a.d_squared.len(), a.d_squared.clone(), a.tuple.clone());
                let kb = (b.d_squared.len(), b.d_squared.clone(), b.tuple.clone());
                ka.cmp(&kb)
            });
            let rep = SpectrumReport {
                schema: report::SCHEMA_VERSION,
                command: "spectrum",
                equation,
                canonical: p.to_string(),
                dims,
                rows,
            };
            let text = match format {
                Some(OutputFormat::Json) => report::to_json_string(&rep),
                _ => rep.to_csv(),
            };
            emit(&cli.out, text)?;
            Ok(0)
        }
        Command::Oracle {
            equation,
            bound,
            budget,
        } => {
            let equation = equation.ok_or_else(|| Error::Config("no equation given".into()))?;
            let p = parse_padded(&equation, spec.max_vars)?;
            set(&mut spec.oracle_budget, budget);
            let v = p.oracle_search_with_budget(bound, spec.oracle_budget)?;
            let rep = OracleReport {
                schema: report::SCHEMA_VERSION,
                command: "oracle",
                equation,
                canonical: p.to_string(),
                bound,
                solvable_in_box: v.solvable_in_box,
                witness: v.witness,
                min_value: v.min_value.to_string(),
                minimizers: v.minimizers,
                minimizer_count: v.minimizer_count,
            };
            emit(&cli.out, report::to_json_string(&rep))?;
            Ok(0)
        }
        Command::Check { system, dim } => {
            apply_system(&mut spec, &system);
            let r = spec.realization()?;
            let rep = check_suite(&r, dim)?;
            for line in &rep.checks {
                let status = if line.pass { "PASS" } else { "FAIL" };
                if !cli.quiet {
                    eprintln!("{status} {}: {}", line.name, line.detail);
                }
            }
            emit(&cli.out, report::to_json_string(&rep))?;
            Ok(if rep.all_pass { 0 } else { 1 })
        }
    }
}

fn apply_system(spec: &mut RunSpec, args: &SystemArgs) {
    if let Some(s) = &args.system {
        spec.system = s.clone();
    }
    if args.lambda.is_some() {
        spec.lambda = args.lambda;
    }
    if args.kappa.is_some() {
        spec.kappa = args.kappa;
    }
    if args.bargmann_k.is_some() {
        spec.bargmann_k = args.bargmann_k;
    }
    if args.alpha.is_some() {
        spec.alpha = args.alpha;
    }
    if args.perelomov {
        spec.perelomov = true;
    }
    set(&mut spec.omega, args.omega);
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn parse_padded(equation: &str, max_vars: usize) -> Result<Polynomial> {
    let p = Polynomial::parse_with_max_vars(equation, max_vars)?;
    if p.num_vars() == 0 {
        p.pad_vars(1)
    } else {
        Ok(p)
    }
}

fn emit(out: &Option<std::path::PathBuf>, text: String) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Config(format!("cannot write to stdout: {e}")))
        }
    }
}
