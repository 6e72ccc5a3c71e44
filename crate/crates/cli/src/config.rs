//! Scheme files: a small TOML format whose exact-number strings are the
//! source of truth, plus the parsers for points and patterns given on the
//! command line.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use modelset::bfree::BFreeBasis;
use modelset::dynamics::Pattern;
use modelset::exactnum::parse_quadratic;
use modelset::scheme::{AmbientPoint, CutProjectScheme, EuclideanScheme, ResidueScheme, TorusPoint};
use modelset::window::{IntervalWindow, ResidueWindow, Window};
use modelset::Error;

/// Environment variable overriding the default number of significant digits
/// in decimal renderings.
pub const DIGITS_ENV: &str = "MODELSET_REPORT_DIGITS";

const DEFAULT_DIGITS: usize = 15;

/// CLI-level failure, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid input: unreadable or malformed files, bad literals, scheme
    /// parameters that fail validation.  Exit code 2.
    Config(String),
    /// An error surfaced by the library; capability gaps exit with 3,
    /// everything else with 2.
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Lib(e) => {
                if e.is_capability() {
                    3
                } else {
                    2
                }
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// On-disk scheme description.  Unknown keys are rejected so typos fail
/// loudly instead of being ignored.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    kind: String,
    /// Square-free field parameter of a planar scheme.
    d: Option<u64>,
    /// First basis row `(v_G, v_H)` as exact literals.
    v: Option<[String; 2]>,
    /// Second basis row `(w_G, w_H)` as exact literals.
    w: Option<[String; 2]>,
    /// Residue moduli, pairwise coprime and strictly increasing.
    moduli: Option<Vec<u64>>,
    /// Shorthand for common residue scheme families, e.g. `squarefree:3`.
    preset: Option<String>,
    window: Option<WindowEntry>,
    /// Default RNG seed for sampling commands.
    seed: Option<u64>,
    /// Significant digits of decimal renderings in reports.
    precision: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WindowEntry {
    /// Closed intervals `[lo, hi]` given as exact literal pairs.
    Intervals(Vec<[String; 2]>),
    /// Residue window given by allowed or forbidden classes per modulus.
    Residues(ResidueWindowEntry),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResidueWindowEntry {
    allowed: Option<Vec<Vec<u64>>>,
    forbidden: Option<Vec<Vec<u64>>>,
}

/// A validated scheme file, ready for the command implementations.
pub struct Loaded {
    pub scheme: CutProjectScheme,
    pub window: Window,
    pub seed: u64,
    pub precision: usize,
    /// Hex SHA-256 of the scheme file bytes, quoted in every report.
    pub digest: String,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn report_digits(file_value: Option<usize>) -> CliResult<usize> {
    if let Some(p) = file_value {
        if p == 0 {
            return Err(bad("precision must be at least 1"));
        }
        return Ok(p);
    }
    match std::env::var(DIGITS_ENV) {
        Ok(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|&p| p > 0)
            .ok_or_else(|| bad(format!("{DIGITS_ENV} must be a positive integer, got {raw:?}"))),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

/// Expand a residue preset string into a moduli list.
pub fn preset_moduli(preset: &str) -> CliResult<Vec<u64>> {
    if let Some(count) = preset.strip_prefix("squarefree:") {
        let k: usize = count
            .parse()
            .map_err(|_| bad(format!("bad squarefree preset count {count:?}")))?;
        let basis = BFreeBasis::squarefree(k)?;
        return Ok(basis.moduli().to_vec());
    }
    if let Some(list) = preset.strip_prefix("moduli:") {
        return list
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| bad(format!("bad modulus {tok:?} in preset")))
            })
            .collect();
    }
    Err(bad(format!(
        "unknown preset {preset:?}; expected squarefree:K or moduli:a,b,c"
    )))
}

/// Read, parse and validate a scheme file.
pub fn load(path: &Path) -> CliResult<Loaded> {
    let bytes = std::fs::read(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| bad(format!("{} is not valid UTF-8", path.display())))?;
    let file: SchemeFile = toml::from_str(&text)
        .map_err(|e| bad(format!("cannot parse {}: {e}", path.display())))?;

    let precision = report_digits(file.precision)?;
    let seed = file.seed.unwrap_or(0);

    match file.kind.as_str() {
        "euclidean2d" => {
            if file.moduli.is_some() || file.preset.is_some() {
                return Err(bad("moduli/preset do not apply to a euclidean2d scheme"));
            }
            let d = file.d.ok_or_else(|| bad("euclidean2d needs the field parameter d"))?;
            let v = file.v.ok_or_else(|| bad("euclidean2d needs the basis row v"))?;
            let w = file.w.ok_or_else(|| bad("euclidean2d needs the basis row w"))?;
            let parse = |s: &str| parse_quadratic(s, d).map_err(CliError::Lib);
            let scheme = EuclideanScheme::new(
                d,
                (parse(&v[0])?, parse(&v[1])?),
                (parse(&w[0])?, parse(&w[1])?),
            )?;
            let window = match file.window {
                Some(WindowEntry::Intervals(parts)) => {
                    let mut parsed = Vec::with_capacity(parts.len());
                    for [lo, hi] in &parts {
                        parsed.push((parse(lo)?, parse(hi)?));
                    }
                    Window::Intervals(IntervalWindow::new(d, parsed)?)
                }
                Some(WindowEntry::Residues(_)) => {
                    return Err(bad("a euclidean2d scheme needs an interval window"));
                }
                None => return Err(bad("euclidean2d needs a window")),
            };
            Ok(Loaded {
                scheme: CutProjectScheme::Euclidean(scheme),
                window,
                seed,
                precision,
                digest,
            })
        }
        "residue" => {
            if file.d.is_some() || file.v.is_some() || file.w.is_some() {
                return Err(bad("d/v/w do not apply to a residue scheme"));
            }
            let moduli = match (file.moduli, file.preset) {
                (Some(m), None) => m,
                (None, Some(p)) => preset_moduli(&p)?,
                (Some(_), Some(_)) => {
                    return Err(bad("give either moduli or preset, not both"));
                }
                (None, None) => return Err(bad("residue needs moduli or a preset")),
            };
            let scheme = ResidueScheme::new(moduli.clone())?;
            let window = match file.window {
                Some(WindowEntry::Residues(entry)) => match (entry.allowed, entry.forbidden) {
                    (Some(allowed), None) => {
                        let sets = allowed.into_iter().map(|s| s.into_iter().collect()).collect();
                        Window::Residues(ResidueWindow::new(moduli, sets)?)
                    }
                    (None, Some(forbidden)) => {
                        Window::Residues(ResidueWindow::from_forbidden(moduli, forbidden)?)
                    }
                    (Some(_), Some(_)) => {
                        return Err(bad("give either allowed or forbidden classes, not both"));
                    }
                    (None, None) => {
                        Window::Residues(ResidueWindow::coprime_to_all(moduli)?)
                    }
                },
                Some(WindowEntry::Intervals(_)) => {
                    return Err(bad("a residue scheme needs a residue window"));
                }
                // The canonical choice: residues coprime to every modulus.
                None => Window::Residues(ResidueWindow::coprime_to_all(moduli)?),
            };
            Ok(Loaded {
                scheme: CutProjectScheme::Residue(scheme),
                window,
                seed,
                precision,
                digest,
            })
        }
        other => Err(bad(format!(
            "unknown scheme kind {other:?}; expected euclidean2d or residue"
        ))),
    }
}

/// Parse a `--point` argument.
///
/// `0` is the torus origin.  Planar points are ambient pairs `g;h` of exact
/// literals, reduced modulo the lattice.  Residue points are comma-separated
/// residue vectors `r1,r2,...`, optionally prefixed by an integer physical
/// part as in `g;r1,r2,...`.
pub fn parse_point(scheme: &CutProjectScheme, arg: &str) -> CliResult<TorusPoint> {
    let arg = arg.trim();
    if arg == "0" {
        return Ok(scheme.origin());
    }
    match scheme {
        CutProjectScheme::Euclidean(e) => {
            let (g, h) = arg
                .split_once(';')
                .ok_or_else(|| bad(format!("planar point {arg:?} must look like g;h")))?;
            let g = parse_quadratic(g.trim(), e.field())?;
            let h = parse_quadratic(h.trim(), e.field())?;
            Ok(scheme.reduce(&AmbientPoint::Line { g, h })?)
        }
        CutProjectScheme::Residue(_) => {
            let (g, rest) = match arg.split_once(';') {
                Some((g, rest)) => (
                    g.trim()
                        .parse::<i64>()
                        .map_err(|_| bad(format!("bad integer physical part {g:?}")))?,
                    rest,
                ),
                None => (0, arg),
            };
            let residues = rest
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u64>()
                        .map_err(|_| bad(format!("bad residue {tok:?} in point {arg:?}")))
                })
                .collect::<CliResult<Vec<u64>>>()?;
            Ok(scheme.reduce(&AmbientPoint::Residue { g, h: residues })?)
        }
    }
}

/// Parse a `--pattern` argument: `m,n;m,n;...` index pairs for planar
/// schemes, a list of integers (`,` or `;` separated) for residue schemes.
pub fn parse_pattern(scheme: &CutProjectScheme, arg: &str) -> CliResult<Pattern> {
    match scheme {
        CutProjectScheme::Euclidean(_) => {
            let pairs = arg
                .split(';')
                .map(|tok| {
                    let (m, n) = tok
                        .split_once(',')
                        .ok_or_else(|| bad(format!("pattern element {tok:?} must look like m,n")))?;
                    let m = m.trim().parse::<i64>();
                    let n = n.trim().parse::<i64>();
                    match (m, n) {
                        (Ok(m), Ok(n)) => Ok((m, n)),
                        _ => Err(bad(format!("bad pattern element {tok:?}"))),
                    }
                })
                .collect::<CliResult<Vec<(i64, i64)>>>()?;
            Ok(Pattern::pairs(&pairs)?)
        }
        CutProjectScheme::Residue(_) => Ok(Pattern::integers(&parse_integer_list(arg)?)?),
    }
}

/// Parse a list of integers separated by `,` or `;`.
pub fn parse_integer_list(arg: &str) -> CliResult<Vec<i64>> {
    arg.split([';', ','])
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| bad(format!("bad pattern element {tok:?}")))
        })
        .collect()
}

/// Parse a comma-separated list of positive region radii.
pub fn parse_radii(arg: &str) -> CliResult<Vec<i64>> {
    let radii = arg
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| bad(format!("bad region radius {tok:?}")))
        })
        .collect::<CliResult<Vec<i64>>>()?;
    if radii.is_empty() {
        return Err(bad("the radius list is empty"));
    }
    Ok(radii)
}
