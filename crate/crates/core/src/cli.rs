//! Command-line front end. [`run`] parses arguments, writes the report to
//! `out` and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::battery::{instances, interior_points_2x2};
use crate::cache::CacheStore;
use crate::combinatorics::{subsets, weak_compositions, Partition, Rational};
use crate::conventions::{Conventions, StabilityReading};
use crate::cut_join::{verify_recursion, RecursionCase, RecursionReport, RecursionTerm};
use crate::enumeration::Parallelism;
use crate::error::{Error, Result};
use crate::forest::{count_forests_with_degrees, for_each_rooted_forest, DegreeSequence, DEFAULT_FOREST_BOUND};
use crate::hurwitz::{HurwitzEngine, HurwitzQuery, Kind};
use crate::poly::{difference_table, fit_scaling_ray, is_wall_point, LatticePoint, RayFit};
use crate::reconstruction::{verify_reconstruction, ReconstructionReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_WALL: i32 = 4;

/// Largest crude search size `(d(d-1)/2)^m` accepted without `--force`.
pub const DEFAULT_BUDGET: f64 = 1e9;

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Exact double and pruned double Hurwitz numbers")]
pub struct Cli {
    #[command(flatten)]
    pub options: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOptions {
    /// Worker threads for the search; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Cache file; defaults to $HURWITZ_CACHE.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Ignore $HURWITZ_CACHE and --cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Count the edgeless single-vertex graph (m = 0) as pruned.
    #[arg(long, global = true)]
    pub m0_pruned_convention: bool,
    #[arg(long, global = true, default_value = "literal")]
    pub stability_reading: StabilityReading,
    /// Run searches above the size budget.
    #[arg(long, global = true)]
    pub force: bool,
    /// Omit `elapsed_ms` so reports are byte-reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one number.
    Compute(ComputeArgs),
    /// Check an identity over a battery of instances.
    Verify(VerifyArgs),
    /// Fit a polynomial along the scaling ray through a base point.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub genus: i64,
    #[arg(long)]
    pub mu: Partition,
    #[arg(long)]
    pub nu: Partition,
    #[arg(long, default_value = "full")]
    pub kind: Kind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    MainTheorem,
    CutAndJoin,
    Forests,
    Poly,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub which: VerifyTarget,
    #[arg(long, default_value_t = 6)]
    pub max_d: u32,
    #[arg(long, default_value_t = 1)]
    pub max_g: i64,
    #[arg(long, default_value_t = 5)]
    pub max_m: i64,
    /// Largest forest size for `verify forests`.
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
    /// Skip instances with fewer parts in nu.
    #[arg(long, default_value_t = 1)]
    pub min_faces: usize,
    /// Samples per ray for `verify poly`.
    #[arg(long, default_value_t = 4)]
    pub t_max: u32,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, default_value_t = 0)]
    pub genus: i64,
    #[arg(long)]
    pub mu: Partition,
    #[arg(long)]
    pub nu: Partition,
    #[arg(long, default_value = "pruned")]
    pub kind: Kind,
    /// Samples t = 1..=t_max; defaults to the degree bound plus two.
    #[arg(long)]
    pub t_max: Option<u32>,
    #[arg(long)]
    pub allow_wall: bool,
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::WallPoint(_) => EXIT_WALL,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let engine = build_engine(&cli.options)?;
    match &cli.command {
        Command::Compute(args) => compute(&engine, args, &cli.options, out),
        Command::Verify(args) => verify(&engine, args, out),
        Command::Fit(args) => fit(&engine, args, out),
    }
}

pub fn build_engine(options: &GlobalOptions) -> Result<HurwitzEngine> {
    let conventions = Conventions {
        m0_pruned: options.m0_pruned_convention,
        stability: options.stability_reading,
    };
    let mut engine = HurwitzEngine::new(conventions)
        .with_parallelism(Parallelism::with_threads(options.threads)?)
        .with_budget((!options.force).then_some(DEFAULT_BUDGET));
    if !options.no_cache {
        let store = match &options.cache {
            Some(path) => Some(CacheStore::open(path)),
            None => CacheStore::from_env(),
        };
        if let Some(store) = store {
            engine = engine.with_store(store);
        }
    }
    Ok(engine)
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(out, "{value}")?;
    Ok(())
}

pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn parts_json(p: &Partition) -> Value {
    json!(p.parts())
}

fn conventions_json(c: &Conventions) -> Value {
    json!({ "m0_pruned": c.m0_pruned, "stability_reading": c.stability.as_str() })
}

fn check_degrees(mu: &Partition, nu: &Partition) -> Result<()> {
    if mu.degree() != nu.degree() {
        return Err(Error::DegreeMismatch {
            mu: mu.degree(),
            nu: nu.degree(),
        });
    }
    Ok(())
}

fn compute(engine: &HurwitzEngine, args: &ComputeArgs, options: &GlobalOptions, out: &mut dyn Write) -> Result<i32> {
    check_degrees(&args.mu, &args.nu)?;
    let start = Instant::now();
    let mut report = compute_report(engine, args.genus, &args.mu, &args.nu, args.kind)?;
    if !options.no_timing {
        report["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    emit(out, &report)?;
    Ok(EXIT_OK)
}

/// The `compute` report without timing.
pub fn compute_report(engine: &HurwitzEngine, genus: i64, mu: &Partition, nu: &Partition, kind: Kind) -> Result<Value> {
    let query = HurwitzQuery::new(genus, mu.clone(), nu.clone(), kind);
    let value = engine.value(&query)?;
    let tuple_count = if query.m() < 0 || genus < 0 {
        "0".to_string()
    } else {
        engine.tuple_count(&query)?.to_string()
    };
    let point = LatticePoint::new(mu.clone(), nu.clone())?;
    Ok(json!({
        "command": "compute",
        "genus": genus,
        "mu": parts_json(mu),
        "nu": parts_json(nu),
        "kind": kind.cli_name(),
        "value": rational_json(&value),
        "m": query.m(),
        "tuple_count": tuple_count,
        "wall": is_wall_point(&point),
        "conventions": conventions_json(&engine.conventions()),
    }))
}

fn verify(engine: &HurwitzEngine, args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let mut total = 0usize;
    let mut mismatches = 0usize;
    let mut first_failure: Option<Value> = None;
    let mut record = |row: Value, ok: bool, breakdown: &dyn Fn() -> Value, out: &mut dyn Write| -> Result<()> {
        total += 1;
        if !ok {
            mismatches += 1;
            if first_failure.is_none() {
                first_failure = Some(breakdown());
            }
        }
        emit(out, &row)
    };
    match args.which {
        VerifyTarget::MainTheorem => {
            for inst in instances(args.max_d, args.max_g, args.max_m) {
                if inst.nu.len() < args.min_faces {
                    continue;
                }
                let report = verify_reconstruction(engine, inst.genus, &inst.mu, &inst.nu)?;
                record(reconstruction_row(&report), report.matches, &|| reconstruction_breakdown(&report), out)?;
            }
        }
        VerifyTarget::CutAndJoin => {
            for inst in instances(args.max_d, args.max_g, args.max_m) {
                if inst.nu.len() < args.min_faces.max(3) || inst.m() <= 0 {
                    continue;
                }
                let report = verify_recursion(engine, inst.genus, &inst.mu, &inst.nu)?;
                record(recursion_row(&report), report.matches, &|| recursion_breakdown(&report), out)?;
            }
        }
        VerifyTarget::Forests => {
            for n in 1..=args.max_n {
                for roots in subsets(n).filter(|s| !s.is_empty()) {
                    let (row, ok) = forest_row(n, &roots)?;
                    record(row.clone(), ok, &|| row.clone(), out)?;
                }
            }
        }
        VerifyTarget::Poly => {
            for base in interior_points_2x2(args.max_d) {
                let fit = fit_scaling_ray(engine, 0, &base, Kind::Pruned, args.t_max, false)?;
                let (row, ok) = poly_row(&fit);
                record(row.clone(), ok, &|| row.clone(), out)?;
            }
        }
    }
    let which = args.which.to_possible_value().expect("no skipped variants");
    emit(
        out,
        &json!({ "summary": which.get_name(), "instances": total, "mismatches": mismatches }),
    )?;
    if let Some(breakdown) = first_failure {
        emit(out, &json!({ "first_mismatch": breakdown }))?;
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

pub fn reconstruction_row(r: &ReconstructionReport) -> Value {
    json!({
        "genus": r.genus,
        "mu": parts_json(&r.mu),
        "nu": parts_json(&r.nu),
        "lhs": rational_json(&r.enumerated),
        "rhs": rational_json(&r.by_degrees),
        "rhs_forests": rational_json(&r.by_forests),
        "match": r.matches,
    })
}

pub fn reconstruction_breakdown(r: &ReconstructionReport) -> Value {
    let terms: Vec<Value> = r
        .terms
        .iter()
        .map(|t| {
            json!({
                "nu_tilde": parts_json(&t.nu_tilde),
                "core": t.core,
                "phat": rational_json(&t.phat),
                "coefficient": t.coefficient.to_string(),
                "value": rational_json(&t.value()),
            })
        })
        .collect();
    let mut row = reconstruction_row(r);
    row["terms"] = json!(terms);
    row
}

pub fn recursion_row(r: &RecursionReport) -> Value {
    let per_case: serde_json::Map<String, Value> = RecursionCase::ALL
        .iter()
        .map(|c| (c.as_str().to_string(), rational_json(&r.per_case[c.index()])))
        .collect();
    json!({
        "genus": r.genus,
        "mu": parts_json(&r.mu),
        "nu": parts_json(&r.nu),
        "stability_reading": r.stability.as_str(),
        "lhs": rational_json(&r.lhs),
        "rhs": rational_json(&r.rhs),
        "per_case": per_case,
        "match": r.matches,
    })
}

pub fn recursion_breakdown(r: &RecursionReport) -> Value {
    let terms: Vec<Value> = r.terms.iter().map(term_json).collect();
    let mut row = recursion_row(r);
    row["terms"] = json!(terms);
    row
}

fn term_json(t: &RecursionTerm) -> Value {
    match t {
        RecursionTerm::GenusDrop {
            face,
            core,
            alpha,
            beta,
            value,
        } => json!({
            "case": "GENUS_DROP", "i": face, "I": core, "alpha": alpha, "beta": beta,
            "value": rational_json(value),
        }),
        RecursionTerm::Split {
            face,
            genera,
            cores,
            faces,
            alpha,
            beta,
            halved,
            value,
        } => json!({
            "case": "SPLIT", "i": face, "g1": genera.0, "g2": genera.1,
            "I1": cores.0, "I2": cores.1, "J1": faces.0, "J2": faces.1,
            "alpha": alpha, "beta": beta, "delta_half": halved, "value": rational_json(value),
        }),
        RecursionTerm::Join {
            faces,
            core,
            alpha,
            value,
        } => json!({
            "case": "JOIN", "i": faces.0, "j": faces.1, "I": core, "alpha": alpha,
            "value": rational_json(value),
        }),
    }
}

/// Closed form against brute force for one `(n, S)`.
pub fn forest_row(n: usize, roots: &[usize]) -> Result<(Value, bool)> {
    let mut by_degree = std::collections::HashMap::new();
    let mut enumerated = 0u64;
    for_each_rooted_forest(n, roots, DEFAULT_FOREST_BOUND.max(n), |f| {
        *by_degree.entry(f.degree_sequence()).or_insert(0u64) += 1;
        enumerated += 1;
    })?;
    let mut sequences = 0usize;
    let mut disagreements = 0usize;
    let mut formula_total = crate::combinatorics::Integer::from(0);
    for delta in weak_compositions(n - roots.len(), n) {
        let delta = DegreeSequence(delta);
        let count = count_forests_with_degrees(&delta, roots)?;
        sequences += 1;
        if count != by_degree.get(&delta).copied().unwrap_or(0).into() {
            disagreements += 1;
        }
        formula_total += count;
    }
    let k = roots.len();
    let expected = if n == k {
        1u64
    } else {
        (k as u64) * (n as u64).pow((n - k - 1) as u32)
    };
    let ok = disagreements == 0 && enumerated == expected && formula_total == expected.into();
    let row = json!({
        "n": n,
        "roots": roots,
        "degree_sequences": sequences,
        "disagreements": disagreements,
        "forests": enumerated,
        "expected_total": expected,
        "match": ok,
    });
    Ok((row, ok))
}

/// Degree equals the bound and the leading difference is nonzero.
pub fn poly_row(fit: &RayFit) -> (Value, bool) {
    let table = difference_table(&fit.samples);
    let leading = fit.degree.and_then(|d| table.get(d)).and_then(|row| row.first()).cloned();
    let ok = fit.bound_met && leading.as_ref().is_some_and(|l| !num::Zero::is_zero(l));
    let row = json!({
        "genus": fit.genus,
        "base": fit.base.to_string(),
        "kind": fit.kind.cli_name(),
        "samples": fit.samples.iter().map(rational_json).collect::<Vec<_>>(),
        "degree": fit.degree,
        "bound": fit.bound,
        "leading_difference": leading.as_ref().map(rational_json),
        "match": ok,
    });
    (row, ok)
}

fn fit(engine: &HurwitzEngine, args: &FitArgs, out: &mut dyn Write) -> Result<i32> {
    check_degrees(&args.mu, &args.nu)?;
    let base = LatticePoint::new(args.mu.clone(), args.nu.clone())?;
    let t_max = args
        .t_max
        .unwrap_or_else(|| (base.degree_bound(args.genus) + 2).max(2) as u32);
    let fit = fit_scaling_ray(engine, args.genus, &base, args.kind, t_max, args.allow_wall)?;
    emit(out, &fit_report(&fit))?;
    Ok(EXIT_OK)
}

pub fn fit_report(fit: &RayFit) -> Value {
    json!({
        "command": "fit",
        "genus": fit.genus,
        "base": fit.base.to_string(),
        "kind": fit.kind.cli_name(),
        "wall": fit.wall,
        "samples": fit.samples.iter().map(rational_json).collect::<Vec<_>>(),
        "degree": fit.degree.map_or(json!("NOT_POLYNOMIAL"), |d| json!(d)),
        "coefficients": fit.coefficients.iter().map(rational_json).collect::<Vec<_>>(),
        "bound": fit.bound,
        "bound_met": fit.bound_met,
    })
}
