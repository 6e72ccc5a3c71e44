//! `modelset` — exact reports over cut-and-project model sets.
//!
//! Every subcommand reads a TOML scheme file (except `vanhove`, which is
//! scheme-free), runs entirely in exact arithmetic, and answers with a JSON
//! envelope on stdout.  Exit codes: 0 success, 2 invalid input, 3 when the
//! library cannot decide the question for the given window shape.

mod config;
mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use modelset::bfree::BFreeBasis;
use modelset::configuration::Region;
use modelset::dynamics::{
    centered_region, classify_interval, continuity_fraction, density_report, frequency_entry,
    genericity_report, in_support_of_mirsky, is_continuity_point, is_zero_point, limit_density,
    measure_convention, sample_torus, Pattern,
};
use modelset::exactnum::{rational_to_decimal, Rational};
use modelset::scheme::{CutProjectScheme, LatticeIndex};
use modelset::vanhove::{sweep, LineSpace};
use modelset::Error;

use config::{
    load, parse_integer_list, parse_pattern, parse_point, parse_radii, report_digits, CliError,
    CliResult,
};
use report::{dual, dual_rational, emit};

#[derive(Parser)]
#[command(
    name = "modelset",
    version,
    about = "Exact model sets from cut-and-project schemes: enumeration, densities, classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a scheme file and print its headline invariants.
    Validate {
        /// Path to a TOML scheme file.
        scheme: PathBuf,
    },
    /// List the configuration points in a centred region as CSV.
    Generate {
        scheme: PathBuf,
        /// Torus point: `0`, `g;h` (planar) or `r1,r2,...` (residue).
        #[arg(long, default_value = "0")]
        point: String,
        /// Region radius: points with physical part in `[-range, range]`.
        #[arg(long, default_value_t = 10)]
        range: i64,
        /// Write the CSV here instead of stdout (a JSON envelope then goes
        /// to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical versus limit density over growing centred regions.
    Density {
        scheme: PathBuf,
        #[arg(long, default_value = "0")]
        point: String,
        /// Comma-separated region radii.
        #[arg(long = "n-list", default_value = "100,1000")]
        n_list: String,
        /// Also write the sweep as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical versus limit frequency of one finite pattern.
    Freq {
        scheme: PathBuf,
        #[arg(long, default_value = "0")]
        point: String,
        /// Pattern: `m,n;m,n;...` (planar) or integers `a,b,c` (residue).
        #[arg(long)]
        pattern: String,
        /// Region radius for the empirical count.
        #[arg(long, default_value_t = 1000)]
        n: i64,
    },
    /// Continuity, emptiness and support membership of one torus point.
    Classify {
        scheme: PathBuf,
        #[arg(long, default_value = "0")]
        point: String,
    },
    /// Sample torus points; report the continuity fraction and, on request,
    /// pattern-frequency deviations of the first few samples.
    Sample {
        scheme: PathBuf,
        /// Override the seed from the scheme file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Region radius for the per-sample genericity summaries.
        #[arg(long = "genericity-n")]
        genericity_n: Option<i64>,
    },
    /// Reports for the b-free set of a residue scheme: density, period
    /// census, pattern frequencies and a sieve export.
    Bfree {
        scheme: PathBuf,
        /// Integer pattern for an exact period frequency, e.g. `0,1`.
        #[arg(long)]
        pattern: Option<String>,
        /// Sieve radius for the member count / export.
        #[arg(long, default_value_t = 50)]
        range: i64,
        /// Write the sieve as CSV (`n,bfree`).
        #[arg(long = "sieve-out")]
        sieve_out: Option<PathBuf>,
    },
    /// Boundary-to-volume ratios of centred intervals on the line.
    Vanhove {
        /// `int` (counting measure on the integers) or `real` (Lebesgue).
        #[arg(long, default_value = "int")]
        space: String,
        /// Compact probe interval `lo,hi`.
        #[arg(long, default_value = "-1,1")]
        k: String,
        #[arg(long = "n-list", default_value = "10,100,1000")]
        n_list: String,
        /// Also write the sweep as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Validate { scheme } => cmd_validate(&scheme),
        Cmd::Generate { scheme, point, range, out } => {
            cmd_generate(&scheme, &point, range, out.as_deref())
        }
        Cmd::Density { scheme, point, n_list, out } => {
            cmd_density(&scheme, &point, &n_list, out.as_deref())
        }
        Cmd::Freq { scheme, point, pattern, n } => cmd_freq(&scheme, &point, &pattern, n),
        Cmd::Classify { scheme, point } => cmd_classify(&scheme, &point),
        Cmd::Sample { scheme, seed, count, genericity_n } => {
            cmd_sample(&scheme, seed, count, genericity_n)
        }
        Cmd::Bfree { scheme, pattern, range, sieve_out } => {
            cmd_bfree(&scheme, pattern.as_deref(), range, sieve_out.as_deref())
        }
        Cmd::Vanhove { space, k, n_list, out } => cmd_vanhove(&space, &k, &n_list, out.as_deref()),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

/// Interval classification as a JSON value, with `null` for window shapes
/// outside the classified family.
fn interval_case_label(scheme: &CutProjectScheme, window: &modelset::window::Window) -> CliResult<Value> {
    match classify_interval(scheme, window) {
        Ok(case) => Ok(json!(case.to_string())),
        Err(Error::Unsupported(_)) => Ok(Value::Null),
        Err(e) => Err(e.into()),
    }
}

/// Render a pattern back in the `--pattern` input syntax.
fn pattern_echo(pattern: &Pattern) -> String {
    pattern
        .indices()
        .iter()
        .map(|idx| match idx {
            LatticeIndex::Pair { m, n } => format!("{m},{n}"),
            LatticeIndex::Single(n) => format!("{n}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn cmd_validate(path: &Path) -> CliResult<()> {
    let l = load(path)?;
    let p = l.precision;
    let mut payload = json!({
        "kind": l.scheme.kind_name(),
        "covolume": dual(&l.scheme.covolume(), p),
        "density": dual(&l.scheme.density(), p),
        "window_haar": dual(&l.window.haar(), p),
        "window_empty": l.window.is_empty(),
        "window_aperiodic": l.window.is_aperiodic(),
        "window_regular": l.window.is_regular(),
        "interval_case": interval_case_label(&l.scheme, &l.window)?,
        "limit_density": dual(&limit_density(&l.scheme, &l.window)?, p),
        "normalization": measure_convention(&l.scheme),
    });
    match &l.scheme {
        CutProjectScheme::Euclidean(e) => {
            payload["field"] = json!(e.field());
        }
        CutProjectScheme::Residue(r) => {
            payload["moduli"] = json!(r.moduli());
            payload["period"] = json!(r.period());
        }
    }
    emit("validate", &l.digest, json!({ "scheme": path.display().to_string() }), payload);
    Ok(())
}

fn cmd_generate(path: &Path, point: &str, range: i64, out: Option<&Path>) -> CliResult<()> {
    let l = load(path)?;
    let x = parse_point(&l.scheme, point)?;
    let region = centered_region(&l.scheme, range)?;
    let cfg = l.scheme.enumerate(&x, &l.window, &region)?;
    let csv = cfg.to_csv(l.precision);
    match out {
        Some(out_path) => {
            write_file(out_path, &csv)?;
            emit(
                "generate",
                &l.digest,
                json!({
                    "scheme": path.display().to_string(),
                    "point": point,
                    "range": range,
                    "out": out_path.display().to_string(),
                }),
                json!({
                    "points": cfg.len(),
                    "normalization": measure_convention(&l.scheme),
                }),
            );
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_density(path: &Path, point: &str, n_list: &str, out: Option<&Path>) -> CliResult<()> {
    let l = load(path)?;
    let p = l.precision;
    let x = parse_point(&l.scheme, point)?;
    let radii = parse_radii(n_list)?;
    let rep = density_report(&l.scheme, &x, &l.window, &radii)?;
    if let Some(out_path) = out {
        write_file(out_path, &rep.to_csv(p))?;
    }
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "count": r.count,
                "empirical": dual_rational(&r.empirical, p),
                "deviation": dual(&r.deviation, p),
                "bound_margin": dual(&r.margin, p),
                "bound_ok": r.bound_ok,
            })
        })
        .collect();
    let payload = json!({
        "limit": dual(&rep.limit, p),
        "separation": rep.separation.as_ref().map(|s| dual(s, p)).unwrap_or(Value::Null),
        "normalization": rep.normalization,
        "rows": rows,
    });
    emit(
        "density",
        &l.digest,
        json!({
            "scheme": path.display().to_string(),
            "point": point,
            "n_list": n_list,
        }),
        payload,
    );
    Ok(())
}

fn cmd_freq(path: &Path, point: &str, pattern: &str, n: i64) -> CliResult<()> {
    let l = load(path)?;
    let p = l.precision;
    let x = parse_point(&l.scheme, point)?;
    let pat = parse_pattern(&l.scheme, pattern)?;
    let entry = frequency_entry(&l.scheme, &x, &l.window, &pat, n)?;
    let payload = json!({
        "pattern": pattern_echo(&entry.pattern),
        "n": entry.n,
        "empirical": dual_rational(&entry.empirical, p),
        "limit": dual(&entry.limit, p),
        "deviation": dual(&entry.deviation, p),
        "normalization": measure_convention(&l.scheme),
    });
    emit(
        "freq",
        &l.digest,
        json!({
            "scheme": path.display().to_string(),
            "point": point,
            "pattern": pattern,
            "n": n,
        }),
        payload,
    );
    Ok(())
}

fn cmd_classify(path: &Path, point: &str) -> CliResult<()> {
    let l = load(path)?;
    let x = parse_point(&l.scheme, point)?;
    let continuity = is_continuity_point(&l.scheme, &l.window, &x)?;
    let zero = is_zero_point(&l.scheme, &l.window, &x)?;
    let case = interval_case_label(&l.scheme, &l.window)?;
    let support = in_support_of_mirsky(&l.scheme, &l.window, &x)?;
    let payload = json!({
        "continuity_point": continuity,
        "zero_point": zero,
        "in_support": support,
        "interval_case": case,
    });
    emit(
        "classify",
        &l.digest,
        json!({ "scheme": path.display().to_string(), "point": point }),
        payload,
    );
    Ok(())
}

fn cmd_sample(
    path: &Path,
    seed_arg: Option<u64>,
    count: usize,
    genericity_n: Option<i64>,
) -> CliResult<()> {
    let l = load(path)?;
    let p = l.precision;
    let seed = seed_arg.unwrap_or(l.seed);
    let fraction = continuity_fraction(&l.scheme, &l.window, seed, count)?;
    let mut payload = json!({
        "seed": seed,
        "samples": count,
        "continuity_fraction": dual_rational(&fraction, p),
    });
    if let Some(n) = genericity_n {
        let probes = sample_torus(&l.scheme, seed, count.min(5))?;
        let patterns = vec![Pattern::origin_of(&l.scheme)];
        let mut rows = Vec::with_capacity(probes.len());
        for (i, x) in probes.iter().enumerate() {
            let g = genericity_report(&l.scheme, x, &l.window, &patterns, n)?;
            rows.push(json!({
                "sample": i,
                "max_deviation": dual(&g.max_deviation, p),
            }));
        }
        payload["genericity_n"] = json!(n);
        payload["genericity"] = json!(rows);
    }
    emit(
        "sample",
        &l.digest,
        json!({
            "scheme": path.display().to_string(),
            "seed": seed,
            "count": count,
            "genericity_n": genericity_n,
        }),
        payload,
    );
    Ok(())
}

/// Period length up to which `bfree` runs the full-period origin census.
const CENSUS_PERIOD_CAP: u64 = 100_000;

fn cmd_bfree(
    path: &Path,
    pattern: Option<&str>,
    range: i64,
    sieve_out: Option<&Path>,
) -> CliResult<()> {
    let l = load(path)?;
    let p = l.precision;
    let moduli = match &l.scheme {
        CutProjectScheme::Residue(r) => r.moduli().to_vec(),
        CutProjectScheme::Euclidean(_) => {
            return Err(CliError::Lib(Error::SpaceMismatch(
                "b-free reports need a residue scheme",
            )));
        }
    };
    let basis = BFreeBasis::new(moduli)?;
    let mut payload = json!({
        "moduli": basis.moduli(),
        "period": basis.period(),
        "density": dual_rational(&basis.density(), p),
    });

    if basis.period() <= CENSUS_PERIOD_CAP {
        let period = basis.period() as i64;
        let scheme = basis.scheme();
        let cfg = scheme.enumerate(
            &scheme.origin(),
            &basis.window(),
            &Region::integers(-period, period)?,
        )?;
        let verdict = basis.y_membership(&cfg)?;
        payload["origin_census"] = json!({
            "status": verdict.status.to_string(),
            "censuses": verdict.censuses,
            "targets": verdict.targets,
            "span": verdict.span,
        });
    } else {
        payload["origin_census"] = Value::Null;
    }

    if let Some(pat) = pattern {
        let ints = parse_integer_list(pat)?;
        let freq = basis.exact_period_frequency(&ints)?;
        payload["pattern"] = json!(pat);
        payload["pattern_frequency"] = dual_rational(&freq, p);
    }

    let rows = basis.sieve(-range, range)?;
    let members = rows.iter().filter(|(_, ok)| *ok).count();
    if let Some(out_path) = sieve_out {
        let mut csv = String::from("n,bfree\n");
        for (n, ok) in &rows {
            csv.push_str(&format!("{},{}\n", n, u8::from(*ok)));
        }
        write_file(out_path, &csv)?;
    }
    payload["sieve"] = json!({ "range": range, "members": members });

    emit(
        "bfree",
        &l.digest,
        json!({
            "scheme": path.display().to_string(),
            "pattern": pattern,
            "range": range,
        }),
        payload,
    );
    Ok(())
}

fn cmd_vanhove(space: &str, k: &str, n_list: &str, out: Option<&Path>) -> CliResult<()> {
    let p = report_digits(None)?;
    let space = match space {
        "int" => LineSpace::Integers,
        "real" => LineSpace::Reals,
        other => {
            return Err(CliError::Config(format!(
                "unknown space {other:?}; expected int or real"
            )));
        }
    };
    let (k_lo, k_hi) = k
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?)))
        .ok_or_else(|| CliError::Config(format!("bad probe interval {k:?}; expected lo,hi")))?;
    let radii = parse_radii(n_list)?;
    let rows = sweep(space, (k_lo, k_hi), &radii)?;

    if let Some(out_path) = out {
        let mut csv = String::from("n,boundary_measure,ratio,tempered_ratio\n");
        for row in &rows {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                rational_to_decimal(&row.boundary, p),
                rational_to_decimal(&row.ratio, p),
                row.tempered_ratio
                    .as_ref()
                    .map(|t| rational_to_decimal(t, p))
                    .unwrap_or_default(),
            ));
        }
        write_file(out_path, &csv)?;
    }

    let max_tempered: Option<&Rational> =
        rows.iter().filter_map(|r| r.tempered_ratio.as_ref()).max();
    let row_values: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "boundary_measure": dual_rational(&r.boundary, p),
                "ratio": dual_rational(&r.ratio, p),
                "tempered_ratio": r
                    .tempered_ratio
                    .as_ref()
                    .map(|t| dual_rational(t, p))
                    .unwrap_or(Value::Null),
            })
        })
        .collect();
    let payload = json!({
        "space": match space { LineSpace::Integers => "int", LineSpace::Reals => "real" },
        "k": [k_lo, k_hi],
        "rows": row_values,
        "max_tempered_ratio": max_tempered.map(|t| dual_rational(t, p)).unwrap_or(Value::Null),
        "tempered_bound": "2",
    });
    emit(
        "vanhove",
        "none",
        json!({ "space": match space { LineSpace::Integers => "int", LineSpace::Reals => "real" },
                "k": k, "n_list": n_list }),
        payload,
    );
    Ok(())
}
