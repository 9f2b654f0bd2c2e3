//! `simvol` — a workbench for certified bounds on integral simplicial
//! volume: validate triangulated manifolds, compute their homology and
//! fundamental-group data, enumerate covers, anneal triangulations, and
//! assemble bound ledgers, stable-ratio sequences over cover towers,
//! growth reports, and the explicit hyperbolic constants.
//!
//! Every command emits one machine-readable JSON report; exit status 0
//! means the report was produced (possibly with warnings), 1 an input or
//! computation error, 2 a usage error.

mod cache;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use simvol::bounds::{
    basic_bounds, register_hyperbolic_volume, register_sv, stable_sequence, GrowthReport,
    StableSequence,
};
use simvol::complex::DeltaComplex;
use simvol::homology::HomologyProfile;
use simvol::hyp::{self, HypParams};
use simvol::pi1;
use simvol::real::Real;
use simvol::simplify::{simplify, SearchConfig};

/// Hard ceiling for subgroup/cover enumeration indices.
const MAX_INDEX_LIMIT: i64 = 12;
/// Hard ceiling for tower depth.
const DEPTH_LIMIT: i64 = 6;

#[derive(Parser)]
#[command(
    name = "simvol",
    version,
    about = "Certified bounds for integral simplicial volume over finite covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Complex document (.dcx JSON: face tables or facet lists).
    input: PathBuf,
}

#[derive(Args)]
struct ArithArgs {
    /// Primes for mod-p coefficient systems.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 5])]
    primes: Vec<u64>,
    /// Decimal digits carried by transcendental quantities.
    #[arg(long, default_value_t = 50)]
    precision: u32,
}

#[derive(Args)]
struct CacheArg {
    /// Cache directory; defaults to $SIMVOL_CACHE_DIR, else caching is off.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl CacheArg {
    fn resolve(&self) -> Option<PathBuf> {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os("SIMVOL_CACHE_DIR").map(PathBuf::from))
    }
}

#[derive(Args)]
struct OutArg {
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a complex document: closedness, orientability, connectivity.
    Validate {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Integral, rational, and mod-p homology with torsion divisors.
    Homology {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        arith: ArithArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fundamental-group presentation from the 2-skeleton.
    Pi1 {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Enumerate conjugacy-closed finite-index subgroups of π₁.
    Subgroups {
        #[command(flatten)]
        input: InputArg,
        /// Largest index to enumerate.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..=MAX_INDEX_LIMIT))]
        max_index: i64,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build the covering complexes for all subgroups up to an index.
    Cover {
        #[command(flatten)]
        input: InputArg,
        /// Largest covering degree to build.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..=MAX_INDEX_LIMIT))]
        max_index: i64,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Anneal a triangulation down to fewer top simplices.
    Simplify {
        #[command(flatten)]
        input: InputArg,
        /// Seed of the proposal stream.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certified lower/upper bounds for the integral simplicial volume.
    Bounds {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        arith: ArithArgs,
        /// Known simplicial volume, as a decimal, fed through the
        /// comparison chain sv ≤ stisv ≤ isv.
        #[arg(long)]
        sv: Option<String>,
        /// Hyperbolic volume, as a decimal; converted to simplicial volume
        /// by the Gromov–Thurston ratio before registration.
        #[arg(long)]
        hyperbolic_volume: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Stable ratio sequence U_i/d_i over a tower of covers.
    Stable {
        #[command(flatten)]
        input: InputArg,
        /// Number of tower levels, counting the base.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..=DEPTH_LIMIT))]
        depth: i64,
        /// Seed of the annealer's proposal stream.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Homology growth along a tower, checked against the stable bound.
    Growth {
        #[command(flatten)]
        input: InputArg,
        /// Number of tower levels, counting the base.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..=DEPTH_LIMIT))]
        depth: i64,
        /// Seed of the annealer's proposal stream.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        arith: ArithArgs,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hyperbolic constants: dihedral angles, overlap integers, volumes,
    /// the gap constant, and the angle window.
    Hyp {
        /// Dimension (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Defect parameter ε for the gap constant.
        #[arg(long)]
        eps: Option<String>,
        /// Angle-slack parameter a for the gap constant and window.
        #[arg(long)]
        a: Option<String>,
        /// Mass-defect parameter δ.
        #[arg(long)]
        delta: Option<String>,
        /// Efficiency parameter η for the gap constant.
        #[arg(long)]
        eta: Option<String>,
        /// Decimal digits carried by the evaluation.
        #[arg(long, default_value_t = 50)]
        precision: u32,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Validate { input, out } => {
            let complex = load_complex(&input.input)?;
            let validation = complex.validate();
            let result = serde_json::to_value(&validation).expect("validation serializes");
            emit("validate", Some(&complex), &[], result, &out)
        }
        Command::Homology { input, arith, out } => {
            let complex = load_complex(&input.input)?;
            let profile = HomologyProfile::compute(&complex, &arith.primes, arith.precision)
                .map_err(|e| e.to_string())?;
            emit("homology", Some(&complex), &[], report::homology_payload(&profile), &out)
        }
        Command::Pi1 { input, out } => {
            let complex = load_complex(&input.input)?;
            let presentation = pi1::presentation(&complex).map_err(|e| e.to_string())?;
            emit("pi1", Some(&complex), &[], report::presentation_payload(&presentation), &out)
        }
        Command::Subgroups { input, max_index, cache, out } => {
            let complex = load_complex(&input.input)?;
            let max_index = max_index as usize;
            let mut warnings = Vec::new();
            let params = format!("max_index={max_index}");
            let result = cached_or(
                cache.resolve().as_deref(),
                "subgroups",
                &params,
                &complex,
                &mut warnings,
                |_| {
                    let presentation = pi1::presentation(&complex).map_err(|e| e.to_string())?;
                    let records =
                        pi1::low_index(&presentation, max_index).map_err(|e| e.to_string())?;
                    let counts = pi1::count_by_index(&records, max_index);
                    Ok(json!({
                        "max_index": max_index,
                        "counts": counts
                            .iter()
                            .enumerate()
                            .map(|(i, c)| json!({"index": i + 1, "count": c}))
                            .collect::<Vec<_>>(),
                        "subgroups": records
                            .iter()
                            .map(report::subgroup_payload)
                            .collect::<Vec<_>>(),
                    }))
                },
            )?;
            emit("subgroups", Some(&complex), &warnings, result, &out)
        }
        Command::Cover { input, max_index, cache, out } => {
            let complex = load_complex(&input.input)?;
            let max_index = max_index as usize;
            let mut warnings = Vec::new();
            let params = format!("max_index={max_index}");
            let result = cached_or(
                cache.resolve().as_deref(),
                "cover",
                &params,
                &complex,
                &mut warnings,
                |_| cover_payload(&complex, max_index),
            )?;
            emit("cover", Some(&complex), &warnings, result, &out)
        }
        Command::Simplify { input, seed, cache, out } => {
            let complex = load_complex(&input.input)?;
            let config = SearchConfig { seed, ..SearchConfig::default() };
            let mut warnings = Vec::new();
            let params = search_params(&config);
            let result = cached_or(
                cache.resolve().as_deref(),
                "simplify",
                &params,
                &complex,
                &mut warnings,
                |_| {
                    let run = simplify(&complex, &config).map_err(|e| e.to_string())?;
                    Ok(json!({
                        "initial_count": run.initial_count,
                        "final_count": run.final_count,
                        "accepted_moves": run.move_log.len(),
                        "size_trace": run.size_trace,
                        "notes": run.notes,
                        "complex": run.complex.to_json_value(),
                    }))
                },
            )?;
            emit("simplify", Some(&complex), &warnings, result, &out)
        }
        Command::Bounds { input, arith, sv, hyperbolic_volume, out } => {
            let complex = load_complex(&input.input)?;
            let (mut bounds, profile) = basic_bounds(&complex, &arith.primes, arith.precision)
                .map_err(|e| e.to_string())?;
            if let Some(text) = &sv {
                let value = parse_real(text, arith.precision, "--sv")?;
                register_sv(
                    &mut bounds,
                    &value,
                    json!({"source": "user_input", "kind": "simplicial_volume"}),
                )
                .map_err(|e| e.to_string())?;
            }
            if let Some(text) = &hyperbolic_volume {
                let volume = parse_real(text, arith.precision, "--hyperbolic-volume")?;
                register_hyperbolic_volume(&mut bounds, &volume).map_err(|e| e.to_string())?;
            }
            let mut result = report::bounds_payload(&bounds);
            result["homology"] = report::homology_payload(&profile);
            emit("bounds", Some(&complex), &[], result, &out)
        }
        Command::Stable { input, depth, seed, cache, out } => {
            let complex = load_complex(&input.input)?;
            let config = SearchConfig { seed, ..SearchConfig::default() };
            let mut warnings = Vec::new();
            let params = format!("depth={depth};{}", search_params(&config));
            let result = cached_or(
                cache.resolve().as_deref(),
                "stable",
                &params,
                &complex,
                &mut warnings,
                |_| {
                    let chain = pi1::subgroup_chain(&complex, depth as usize)
                        .map_err(|e| e.to_string())?;
                    let sequence = stable_sequence(&chain, &config).map_err(|e| e.to_string())?;
                    Ok(stable_payload(&sequence, depth as usize, seed))
                },
            )?;
            emit("stable", Some(&complex), &warnings, result, &out)
        }
        Command::Growth { input, depth, seed, arith, cache, out } => {
            let complex = load_complex(&input.input)?;
            let config = SearchConfig { seed, ..SearchConfig::default() };
            let mut warnings = Vec::new();
            let params = format!(
                "depth={depth};primes={:?};digits={};{}",
                arith.primes,
                arith.precision,
                search_params(&config)
            );
            let result = cached_or(
                cache.resolve().as_deref(),
                "growth",
                &params,
                &complex,
                &mut warnings,
                |_| {
                    let chain = pi1::subgroup_chain(&complex, depth as usize)
                        .map_err(|e| e.to_string())?;
                    let sequence = stable_sequence(&chain, &config).map_err(|e| e.to_string())?;
                    let growth = simvol::bounds::homology_growth_report(
                        &chain,
                        &sequence,
                        &arith.primes,
                        arith.precision,
                    )
                    .map_err(|e| e.to_string())?;
                    Ok(growth_payload(&sequence, &growth, depth as usize, seed))
                },
            )?;
            emit("growth", Some(&complex), &warnings, result, &out)
        }
        Command::Hyp { n, eps, a, delta, eta, precision, out } => {
            let mut params = HypParams::new(n, precision);
            params.eps = eps.map(|t| parse_real(&t, precision, "--eps")).transpose()?;
            params.a = a.map(|t| parse_real(&t, precision, "--a")).transpose()?;
            params.delta = delta.map(|t| parse_real(&t, precision, "--delta")).transpose()?;
            params.eta = eta.map(|t| parse_real(&t, precision, "--eta")).transpose()?;
            let hyp_report = hyp::report(&params).map_err(|e| e.to_string())?;
            let result = serde_json::to_value(&hyp_report).expect("report serializes");
            emit("hyp", None, &[], result, &out)
        }
    }
}

fn load_complex(path: &Path) -> Result<DeltaComplex, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let complex = DeltaComplex::from_json_str(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    if complex.name().is_some() {
        Ok(complex)
    } else {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "unnamed".into());
        Ok(complex.named(stem))
    }
}

fn parse_real(text: &str, digits: u32, flag: &str) -> Result<Real, String> {
    Real::parse_decimal(text, digits).map_err(|e| format!("{flag}: {e}"))
}

fn search_params(config: &SearchConfig) -> String {
    format!(
        "seed={};steps={};t0={};cooling={};floor={}",
        config.seed, config.max_steps, config.t0, config.cooling, config.neutral_accept_floor
    )
}

/// Runs `compute` through the content-addressed cache when a cache
/// directory is configured.
fn cached_or<F>(
    cache_dir: Option<&Path>,
    command: &str,
    params: &str,
    complex: &DeltaComplex,
    warnings: &mut Vec<String>,
    compute: F,
) -> Result<Value, String>
where
    F: FnOnce(&mut Vec<String>) -> Result<Value, String>,
{
    let dir = match cache_dir {
        Some(dir) => dir,
        None => return compute(warnings),
    };
    let key = cache::cache_key(command, params, &complex.canonical_bytes());
    if let Some(hit) = cache::cache_get(dir, &key, warnings) {
        return Ok(hit);
    }
    let value = compute(warnings)?;
    cache::cache_put(dir, &key, &value, warnings);
    Ok(value)
}

fn cover_payload(complex: &DeltaComplex, max_index: usize) -> Result<Value, String> {
    let base_chi = complex.validate().euler_characteristic;
    let presentation = pi1::presentation(complex).map_err(|e| e.to_string())?;
    let records = pi1::low_index(&presentation, max_index).map_err(|e| e.to_string())?;
    let mut covers = Vec::with_capacity(records.len());
    for record in &records {
        let cover = pi1::build_cover(complex, record).map_err(|e| e.to_string())?;
        let validation = cover.validate();
        let mut entry = report::subgroup_payload(record);
        entry["euler_characteristic"] = json!(validation.euler_characteristic);
        entry["chi_multiplicative"] =
            json!(validation.euler_characteristic == record.index as i64 * base_chi);
        entry["counts"] = json!(validation.counts);
        entry["connected"] = json!(validation.connected);
        entry["orientable"] = json!(validation.orientable);
        entry["document"] = cover.to_json_value();
        covers.push(entry);
    }
    Ok(json!({"max_index": max_index, "covers": covers}))
}

fn stable_payload(sequence: &StableSequence, depth: usize, seed: u64) -> Value {
    let levels: Vec<Value> = sequence
        .levels
        .iter()
        .map(|level| {
            json!({
                "d": level.index,
                "cover_size": level.cover_size,
                "simplified_size": level.simplified_size,
                "U": level.upper,
                "from_transfer": level.from_transfer,
                "ratio": ratio_text(&level.ratio),
            })
        })
        .collect();
    // The best ratio certifies an upper bound for the stable integral
    // volume; the infimum over all covers is not knowable from finitely
    // many levels, so it is never reported as the stable volume itself.
    json!({
        "depth": depth,
        "seed": seed,
        "levels": levels,
        "stisv_upper_bound": ratio_text(&sequence.best_ratio),
        "best_level": sequence.best_level,
        "ledger_entry": serde_json::to_value(sequence.entry()).expect("entry serializes"),
    })
}

fn growth_payload(
    sequence: &StableSequence,
    growth: &GrowthReport,
    depth: usize,
    seed: u64,
) -> Value {
    let mut result = stable_payload(sequence, depth, seed);
    result["growth"] = serde_json::to_value(growth).expect("growth serializes");
    result["violations"] = json!(growth.violations);
    result
}

fn ratio_text(ratio: &num_rational::BigRational) -> String {
    use num_traits::One;
    if ratio.denom().is_one() {
        ratio.numer().to_string()
    } else {
        format!("{}/{}", ratio.numer(), ratio.denom())
    }
}

fn emit(
    command: &str,
    complex: Option<&DeltaComplex>,
    warnings: &[String],
    result: Value,
    out: &OutArg,
) -> Result<(), String> {
    let input = complex.map(report::input_block);
    let document = report::envelope(command, input, warnings, result);
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(&document).expect("report serializes")
    );
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
