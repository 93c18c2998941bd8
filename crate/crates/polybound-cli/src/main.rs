//! Command-line front end for the polybound workbench.
//!
//! Exit codes: 0 success; 1 out-of-tolerance table reproduction or an
//! internal failure; 2 invalid input (file, flags, potential, state);
//! 3 eigensolver convergence failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polybound::anharmonic::{self, AnharmonicModel, FullParameterSet};
use polybound::envelope;
use polybound::pnumbers::{self, PCache, PNumberRecord, PSource};
use polybound::radial;
use polybound::tables::{self, TableId, TableRun};
use polybound::types::{PotentialSpecFile, SolverConfig, StateIndex};
use polybound::Error;

const CACHE_ENV: &str = "POLYBOUND_CACHE";
const CACHE_DEFAULT: &str = "polybound-pcache.json";

#[derive(Parser)]
#[command(
    name = "polybound",
    about = "Eigenvalue bounds, P-numbers and an exact radial eigensolver \
             for polynomial central potentials in d dimensions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CacheOpt {
    /// P-number cache file (flag > POLYBOUND_CACHE env > ./polybound-pcache.json)
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct StateOpt {
    /// Principal index within the angular-momentum subspace (>= 1)
    #[arg(short, long, default_value_t = 1)]
    n: u32,
    /// Angular momentum (>= 0; must be 0 for d = 1)
    #[arg(short, long, default_value_t = 0)]
    l: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for one eigenvalue of the potential in a spec file
    Solve {
        /// JSON potential file: {"d": .., "terms": [{"a": .., "q": ..}, ..]}
        spec: PathBuf,
        #[command(flatten)]
        state: StateOpt,
        /// Override the dimension given in the spec file
        #[arg(long)]
        dim: Option<u32>,
        /// Absolute eigenvalue tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        cache: CacheOpt,
    },
    /// Compute a P-number
    Pnumber {
        /// Power-law exponent (q >= -1, q != 0)
        #[arg(short, long)]
        q: f64,
        #[command(flatten)]
        state: StateOpt,
        /// Spatial dimension
        #[arg(short, long)]
        d: u32,
        /// Where the number comes from
        #[arg(long, value_enum, default_value_t = SourceArg::Auto)]
        source: SourceArg,
        /// Absolute eigenvalue tolerance for numeric lookups
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        cache: CacheOpt,
    },
    /// Full bound report for a potential and state
    Bounds {
        spec: PathBuf,
        #[command(flatten)]
        state: StateOpt,
        /// Also run the radial eigensolver for the exact reference value
        #[arg(long)]
        with_exact: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        cache: CacheOpt,
    },
    /// Closed-form anharmonic-oscillator machinery (r^2 + lambda r^{2m})
    Anharmonic {
        #[command(subcommand)]
        op: AnharmonicCmd,
    },
    /// Recompute an embedded reference table and diff it
    Reproduce {
        /// Table number: 1 (P-numbers), 2 (quartic), 3 (sextic)
        #[arg(long)]
        table: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Override the per-table default tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Write output here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        cache: CacheOpt,
    },
    /// Inspect or reset the P-number cache
    Cache {
        #[command(subcommand)]
        op: CacheCmd,
    },
}

#[derive(Subcommand)]
enum AnharmonicCmd {
    /// E(lambda) from the semiclassical inversion
    Energy {
        #[arg(short, long)]
        m: u32,
        #[arg(long)]
        lambda: f64,
        /// Squared P on the r^2 term
        #[arg(long)]
        alpha: f64,
        /// 2m-th power of the P on the r^{2m} term
        #[arg(long)]
        beta: f64,
    },
    /// lambda(E), the closed-form direction
    Lambda {
        #[arg(short, long)]
        m: u32,
        #[arg(long)]
        energy: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Reduce (-omega Lap + a r^2 + b r^{2m}) to the single-parameter form
    Reduce {
        #[arg(short, long)]
        m: u32,
        #[arg(long)]
        omega: f64,
        #[arg(short)]
        a: f64,
        #[arg(short)]
        b: f64,
    },
    /// One-constant ground-state comparison formula (Bhattacharya et al.)
    Bhattacharya {
        #[arg(short, long)]
        m: u32,
        #[arg(long)]
        lambda: f64,
        /// Strong-coupling constant; defaults to the built-in value for m = 2, 3, 4
        #[arg(long)]
        k0: Option<f64>,
    },
    /// Excited-state comparison formula (Dasgupta et al.); K supplied by caller
    Dasgupta {
        #[arg(short, long)]
        m: u32,
        /// Excitation index (0 = ground)
        #[arg(short, long)]
        n: u32,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        k: f64,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Print the cached records as JSON
    Show {
        #[command(flatten)]
        cache: CacheOpt,
    },
    /// Remove every cached record
    Clear {
        #[command(flatten)]
        cache: CacheOpt,
    },
    /// Print the resolved cache path
    Path {
        #[command(flatten)]
        cache: CacheOpt,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Auto,
    GammaLower,
    GammaUpper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Convergence { .. } => 3,
        Error::NonConfining
        | Error::InvalidPotential(_)
        | Error::InvalidState(_)
        | Error::Domain(_)
        | Error::GammaOverflow { .. } => 2,
        Error::Cache(_) => 1,
    }
}

fn resolve_cache(opt: &CacheOpt) -> PathBuf {
    opt.cache
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(CACHE_DEFAULT))
}

fn open_cache(opt: &CacheOpt) -> Result<PCache, Error> {
    PCache::open(resolve_cache(opt))
}

fn load_spec(path: &PathBuf, dim: Option<u32>) -> Result<polybound::PotentialSpec, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidPotential(format!("{}: {e}", path.display())))?;
    let mut spec = PotentialSpecFile::parse(&text)?;
    if let Some(d) = dim {
        spec.d = d;
        spec.validate()?;
    }
    Ok(spec)
}

/// Round to 10 significant decimal digits for deterministic output.
fn sig10(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

/// Round every number in a JSON tree to 10 significant digits.
fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.as_i64().is_none() && n.as_u64().is_none() {
                    if let Some(r) = serde_json::Number::from_f64(sig10(f)) {
                        *v = Value::Number(r);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

fn print_json(value: Value) {
    let mut value = value;
    round_json(&mut value);
    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { spec, state, dim, tol, cache } => {
            let pot = load_spec(&spec, dim)?;
            let st = StateIndex::new(state.n, state.l, pot.d)?;
            let cfg = SolverConfig::with_tol(tol);
            let _ = cache; // solving needs no P-numbers
            let ev = radial::solve_detailed(&pot, st, &cfg)?;
            print_json(json!({
                "energy": ev.energy,
                "nodes": ev.nodes,
                "config": {
                    "abs_tol": tol,
                    "r_max": ev.r_max,
                    "grid_points": ev.grid_points,
                    "est_error": ev.est_error,
                },
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Pnumber { q, state, d, source, tol, cache } => {
            let st = StateIndex::new(state.n, state.l, d)?;
            let record = match source {
                SourceArg::Auto => {
                    let mut pcache = open_cache(&cache)?;
                    let rec = pnumbers::p_lookup(q, st, &SolverConfig::with_tol(tol), &mut pcache)?;
                    pcache.save()?;
                    rec
                }
                SourceArg::GammaLower | SourceArg::GammaUpper => {
                    if st.n != 1 || st.l != 0 {
                        return Err(Error::Domain(
                            "gamma P approximations cover the n = 1, l = 0 ground state only"
                                .into(),
                        ));
                    }
                    let (p, src) = if source == SourceArg::GammaLower {
                        (pnumbers::p_gamma_lower(q, d)?, PSource::GammaLower)
                    } else {
                        (pnumbers::p_gamma_upper(q, d)?, PSource::GammaUpper)
                    };
                    PNumberRecord { q, state: st, p, source: src, epsilon: None }
                }
            };
            print_json(serde_json::to_value(record).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { spec, state, with_exact, tol, cache } => {
            let pot = load_spec(&spec, None)?;
            let st = StateIndex::new(state.n, state.l, pot.d)?;
            let cfg = SolverConfig::with_tol(tol);
            let mut pcache = open_cache(&cache)?;
            let report = envelope::bounds_report(&pot, st, &cfg, &mut pcache, with_exact)?;
            pcache.save()?;
            print_json(serde_json::to_value(&report).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Anharmonic { op } => {
            let out = match op {
                AnharmonicCmd::Energy { m, lambda, alpha, beta } => {
                    let model = AnharmonicModel::new(m, alpha, beta)?;
                    json!({"energy": anharmonic::energy_of_lambda(lambda, &model)?})
                }
                AnharmonicCmd::Lambda { m, energy, alpha, beta } => {
                    let model = AnharmonicModel::new(m, alpha, beta)?;
                    json!({"lambda": anharmonic::lambda_of_energy(energy, &model)?})
                }
                AnharmonicCmd::Reduce { m, omega, a, b } => {
                    let (lambda, scale) =
                        anharmonic::reduce_parameters(&FullParameterSet { omega, a, b, m })?;
                    json!({"lambda": lambda, "energy_scale": scale})
                }
                AnharmonicCmd::Bhattacharya { m, lambda, k0 } => {
                    let k0 = k0.or_else(|| anharmonic::default_k0(m)).ok_or_else(|| {
                        Error::Domain(format!("no built-in constant for m={m}; pass --k0"))
                    })?;
                    json!({"energy": anharmonic::bhattacharya_energy(lambda, m, k0)?, "k0": k0})
                }
                AnharmonicCmd::Dasgupta { m, n, lambda, k } => {
                    json!({"energy": anharmonic::dasgupta_energy(lambda, m, n, k)?})
                }
            };
            print_json(out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { table, format, tol, output, cache } => {
            let id = TableId::from_index(table)?;
            let mut pcache = open_cache(&cache)?;
            let run = tables::reproduce(id, &SolverConfig::default(), &mut pcache, tol)?;
            pcache.save()?;
            let rendered = match format {
                FormatArg::Csv => render_csv(&run),
                FormatArg::Json => {
                    let mut v = serde_json::to_value(&run).expect("serializable");
                    round_json(&mut v);
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
            };
            match output {
                Some(path) => {
                    let mut f = fs::File::create(&path)
                        .map_err(|e| Error::Cache(format!("create {}: {e}", path.display())))?;
                    f.write_all(rendered.as_bytes())
                        .map_err(|e| Error::Cache(format!("write {}: {e}", path.display())))?;
                }
                None => print!("{rendered}"),
            }
            if run.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("error: table {table} has cells outside tolerance {}", run.tolerance);
                Ok(ExitCode::from(1))
            }
        }
        Command::Cache { op } => {
            match op {
                CacheCmd::Show { cache } => {
                    let pcache = open_cache(&cache)?;
                    let records: Vec<Value> = pcache
                        .records()
                        .into_iter()
                        .map(|(rec, abs_tol)| {
                            let mut v = serde_json::to_value(rec).expect("serializable");
                            v["abs_tol"] = json!(abs_tol);
                            v
                        })
                        .collect();
                    print_json(Value::Array(records));
                }
                CacheCmd::Clear { cache } => {
                    let mut pcache = open_cache(&cache)?;
                    let n = pcache.len();
                    pcache.clear();
                    pcache.save()?;
                    eprintln!("cleared {n} records");
                }
                CacheCmd::Path { cache } => {
                    println!("{}", resolve_cache(&cache).display());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Long-format CSV: one line per cell, computed values printed at the
/// reference's decimal precision so the diff column reads directly.
fn render_csv(run: &TableRun) -> String {
    let mut out = String::from("table,row,column,reference,computed,abs_diff,within_tol,flagged\n");
    for row in &run.rows {
        for cell in &row.cells {
            let dec = cell.decimals;
            out.push_str(&format!(
                "{},{},{},{:.dec$},{:.dec$},{:.2e},{},{}\n",
                run.table,
                row.label,
                cell.column,
                cell.reference,
                cell.computed,
                cell.diff.abs(),
                cell.within_tol,
                cell.flagged,
                dec = dec,
            ));
        }
    }
    out
}
