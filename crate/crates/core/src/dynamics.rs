//! Quantitative behaviour of configurations: empirical and limit densities,
//! pattern frequencies, classification of torus points, uniform sampling and
//! the reports that tie them together.
//!
//! Measure conventions are fixed once: the centered region `[-n, n]` is
//! normalised by counting measure (`2n + 1` points) on the integers and by
//! Lebesgue measure (length `2n`) on the line.  Every report states the
//! convention it used.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::configuration::Region;
use crate::error::{Error, Result};
use crate::exactnum::{ExactValue, QuadraticNumber, Rational};
use crate::rng::SplitMix64;
use crate::scheme::{CutProjectScheme, LatticeIndex, PhysicalElement, TorusPoint};
use crate::window::{InternalPoint, Window};

/// A nonempty, duplicate-free set of lattice indices: a local pattern whose
/// translated copies are counted inside configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    indices: Vec<LatticeIndex>,
}

impl Pattern {
    pub fn new(mut indices: Vec<LatticeIndex>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let pairs = indices.iter().filter(|i| matches!(i, LatticeIndex::Pair { .. })).count();
        if pairs != 0 && pairs != indices.len() {
            return Err(Error::SpaceMismatch("pattern mixes planar and integer indices"));
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Pattern { indices })
    }

    /// Pattern of planar indices `m*v + n*w`.
    pub fn pairs(list: &[(i64, i64)]) -> Result<Self> {
        Pattern::new(list.iter().map(|&(m, n)| LatticeIndex::Pair { m, n }).collect())
    }

    /// Pattern of integer translates for a residue scheme.
    pub fn integers(list: &[i64]) -> Result<Self> {
        Pattern::new(list.iter().map(|&n| LatticeIndex::Single(n)).collect())
    }

    /// The singleton pattern containing the zero index of the scheme's kind.
    pub fn origin_of(scheme: &CutProjectScheme) -> Self {
        let zero = match scheme {
            CutProjectScheme::Euclidean(_) => LatticeIndex::Pair { m: 0, n: 0 },
            CutProjectScheme::Residue(_) => LatticeIndex::Single(0),
        };
        Pattern { indices: vec![zero] }
    }

    pub fn indices(&self) -> &[LatticeIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn index_add(a: &LatticeIndex, b: &LatticeIndex) -> Result<LatticeIndex> {
    let sum = |x: i64, y: i64| x.checked_add(y).ok_or(Error::RegionTooLarge);
    match (a, b) {
        (LatticeIndex::Pair { m, n }, LatticeIndex::Pair { m: pm, n: pn }) => {
            Ok(LatticeIndex::Pair { m: sum(*m, *pm)?, n: sum(*n, *pn)? })
        }
        (LatticeIndex::Single(x), LatticeIndex::Single(y)) => Ok(LatticeIndex::Single(sum(*x, *y)?)),
        _ => Err(Error::SpaceMismatch("lattice index kinds differ")),
    }
}

fn index_sub(a: &LatticeIndex, b: &LatticeIndex) -> Result<LatticeIndex> {
    let neg = match b {
        LatticeIndex::Pair { m, n } => LatticeIndex::Pair { m: -m, n: -n },
        LatticeIndex::Single(x) => LatticeIndex::Single(-x),
    };
    index_add(a, &neg)
}

/// Physical-space offset of a lattice index.
fn physical_offset(scheme: &CutProjectScheme, idx: &LatticeIndex) -> Result<PhysicalElement> {
    match (scheme, idx) {
        (CutProjectScheme::Euclidean(e), LatticeIndex::Pair { m, n }) => {
            Ok(PhysicalElement::Line(e.lattice_point(*m, *n).0))
        }
        (CutProjectScheme::Residue(_), LatticeIndex::Single(n)) => {
            Ok(PhysicalElement::Integer(*n))
        }
        _ => Err(Error::SpaceMismatch("lattice index kind does not match the scheme")),
    }
}

/// Internal-space offset of a lattice index.
fn internal_offset(scheme: &CutProjectScheme, idx: &LatticeIndex) -> Result<InternalPoint> {
    match (scheme, idx) {
        (CutProjectScheme::Euclidean(e), LatticeIndex::Pair { m, n }) => {
            Ok(InternalPoint::Line(e.lattice_point(*m, *n).1))
        }
        (CutProjectScheme::Residue(r), LatticeIndex::Single(n)) => {
            Ok(InternalPoint::Residues(r.embed(*n)))
        }
        _ => Err(Error::SpaceMismatch("lattice index kind does not match the scheme")),
    }
}

/// The pattern element with the smallest physical coordinate, used to anchor
/// occurrence counting.
fn reference_element(
    scheme: &CutProjectScheme,
    pattern: &Pattern,
) -> Result<(LatticeIndex, PhysicalElement)> {
    let mut best: Option<(LatticeIndex, PhysicalElement)> = None;
    for idx in pattern.indices() {
        let phys = physical_offset(scheme, idx)?;
        let smaller = match &best {
            None => true,
            Some((_, bp)) => match (&phys, bp) {
                (PhysicalElement::Line(a), PhysicalElement::Line(b)) => {
                    a.cmp_exact(b)? == Ordering::Less
                }
                (PhysicalElement::Integer(a), PhysicalElement::Integer(b)) => a < b,
                _ => unreachable!("pattern kind is homogeneous"),
            },
        };
        if smaller {
            best = Some((*idx, phys));
        }
    }
    Ok(best.expect("pattern is nonempty"))
}

fn require_positive(n: i64) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("region radius n must be at least 1"))
    }
}

/// The centered region `[-n, n]` in the scheme's physical space.
pub fn centered_region(scheme: &CutProjectScheme, n: i64) -> Result<Region> {
    require_positive(n)?;
    match scheme {
        CutProjectScheme::Euclidean(e) => Region::centered_line(n, e.field()),
        CutProjectScheme::Residue(_) => Region::centered_integers(n),
    }
}

/// Normalising measure of the centered region `[-n, n]`.
pub fn centered_region_measure(scheme: &CutProjectScheme, n: i64) -> Result<Rational> {
    require_positive(n)?;
    let m = match scheme {
        CutProjectScheme::Euclidean(_) => 2 * n,
        CutProjectScheme::Residue(_) => 2 * n + 1,
    };
    Ok(Rational::from_integer(BigInt::from(m)))
}

/// The normalisation convention, spelled out for reports.
pub fn measure_convention(scheme: &CutProjectScheme) -> &'static str {
    match scheme {
        CutProjectScheme::Euclidean(_) => "Lebesgue measure on the line: measure([-n,n]) = 2n",
        CutProjectScheme::Residue(_) => {
            "counting measure on the integers: measure([-n,n]) = 2n+1"
        }
    }
}

/// Point count of the configuration on `[-n, n]` divided by the region's
/// measure.
pub fn empirical_density(
    scheme: &CutProjectScheme,
    x: &TorusPoint,
    window: &Window,
    n: i64,
) -> Result<Rational> {
    let count = scheme.count_in_region(x, window, &centered_region(scheme, n)?)?;
    Ok(Rational::from_integer(BigInt::from(count)) / centered_region_measure(scheme, n)?)
}

/// The almost-sure density: lattice density times window measure.
pub fn limit_density(scheme: &CutProjectScheme, window: &Window) -> Result<ExactValue> {
    scheme.density().checked_mul(&window.haar())
}

/// Asymptotic frequency of the pattern: lattice density times the measure of
/// the intersection of the window translates `W - l_H` over the pattern.
pub fn pattern_frequency_limit(
    scheme: &CutProjectScheme,
    window: &Window,
    pattern: &Pattern,
) -> Result<ExactValue> {
    let shifts: Vec<InternalPoint> = pattern
        .indices()
        .iter()
        .map(|idx| internal_offset(scheme, idx))
        .collect::<Result<_>>()?;
    let core = window.intersect_translates(&shifts)?;
    scheme.density().checked_mul(&core.haar())
}

/// Number of translated copies of the pattern inside the configuration whose
/// translation vector has physical part in `[-n, n]`, divided by the region
/// measure.
///
/// Counting is anchored at the pattern element with the smallest physical
/// coordinate: every anchor candidate is a configuration point in the
/// suitably shifted region, and the remaining elements are tested by exact
/// window membership, so no occurrence near the region ends is missed.
pub fn pattern_frequency_empirical(
    scheme: &CutProjectScheme,
    x: &TorusPoint,
    window: &Window,
    pattern: &Pattern,
    n: i64,
) -> Result<Rational> {
    let (l_ref, ref_phys) = reference_element(scheme, pattern)?;
    let region = centered_region(scheme, n)?.translate(&ref_phys)?;
    let anchors = scheme.enumerate(x, window, &region)?;
    let offsets: Vec<LatticeIndex> = pattern
        .indices()
        .iter()
        .filter(|idx| **idx != l_ref)
        .map(|idx| index_sub(idx, &l_ref))
        .collect::<Result<_>>()?;
    let mut hits: u64 = 0;
    'anchor: for idx in anchors.indices() {
        for off in &offsets {
            let probe = index_add(idx, off)?;
            if !window.contains(&scheme.internal_of(x, &probe)?)? {
                continue 'anchor;
            }
        }
        hits += 1;
    }
    Ok(Rational::from_integer(BigInt::from(hits)) / centered_region_measure(scheme, n)?)
}

/// The two kinds of single-interval windows over a planar scheme, split by
/// whether the window length lies in the internal projection of the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalCase {
    /// Window length outside the projected lattice: every configuration in
    /// the hull of the translation orbit has maximal density.
    CaseI,
    /// Window length inside the projected lattice: a meagre set of
    /// configurations misses one point relative to the generic count.
    CaseII,
}

impl std::fmt::Display for IntervalCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntervalCase::CaseI => write!(f, "Case I"),
            IntervalCase::CaseII => write!(f, "Case II"),
        }
    }
}

/// Classify a single nondegenerate interval window over a planar scheme by
/// testing exactly whether its length can be written as `m*v_H + n*w_H`.
pub fn classify_interval(scheme: &CutProjectScheme, window: &Window) -> Result<IntervalCase> {
    let (e, w) = match (scheme, window) {
        (CutProjectScheme::Euclidean(e), Window::Intervals(w)) => (e, w),
        _ => {
            return Err(Error::Unsupported(
                "interval classification is defined for planar schemes with interval windows",
            ))
        }
    };
    let parts = w.parts();
    if parts.len() != 1 {
        return Err(Error::Unsupported(
            "interval classification needs a single interval window",
        ));
    }
    let (lo, hi) = &parts[0];
    let width = hi.checked_sub(lo)?;
    if width.is_zero() {
        return Err(Error::Unsupported(
            "interval classification needs a nondegenerate interval",
        ));
    }
    if e.in_internal_lattice(&width)? {
        Ok(IntervalCase::CaseII)
    } else {
        Ok(IntervalCase::CaseI)
    }
}

/// Does the configuration map vary continuously at `x`?  True exactly when
/// no shifted lattice point lands on the window boundary.
pub fn is_continuity_point(
    scheme: &CutProjectScheme,
    window: &Window,
    x: &TorusPoint,
) -> Result<bool> {
    match (scheme, window) {
        (CutProjectScheme::Euclidean(e), Window::Intervals(w)) => {
            let (_, xh) = scheme.representative_euclidean(x)?;
            for endpoint in w.endpoints() {
                if e.in_internal_lattice(&endpoint.checked_sub(&xh)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (CutProjectScheme::Residue(_), Window::Residues(_)) => {
            // Finite internal groups are discrete: the boundary is empty and
            // the configuration map is continuous everywhere.
            check_residue_point(scheme, x)?;
            Ok(true)
        }
        _ => Err(Error::SpaceMismatch("scheme, window or point kind differs")),
    }
}

/// Is the configuration of `x` empty?
pub fn is_zero_point(scheme: &CutProjectScheme, window: &Window, x: &TorusPoint) -> Result<bool> {
    match (scheme, window) {
        (CutProjectScheme::Euclidean(e), Window::Intervals(w)) => {
            if w.is_empty() {
                return Ok(true);
            }
            if w.has_interior() {
                // The projected lattice is dense in the internal line, so
                // some shifted lattice point falls inside the window.
                return Ok(false);
            }
            // Purely degenerate parts: a point exists iff some endpoint is
            // reachable from x_H through the projected lattice.
            let (_, xh) = scheme.representative_euclidean(x)?;
            for (lo, _) in w.parts() {
                if e.in_internal_lattice(&lo.checked_sub(&xh)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (CutProjectScheme::Residue(_), Window::Residues(w)) => {
            check_residue_point(scheme, x)?;
            // With every factor nonempty the Chinese remainder theorem
            // produces an integer hitting the window.
            Ok(w.is_empty())
        }
        _ => Err(Error::SpaceMismatch("scheme, window or point kind differs")),
    }
}

/// Does the configuration of `x` lie in the support of the sampling measure
/// (the closure of the almost-sure configuration set)?
///
/// Implemented for single-interval windows over planar schemes, where the
/// answer follows from the interval classification, and for residue windows,
/// which are clopen so the full configuration set is closed.
pub fn in_support_of_mirsky(
    scheme: &CutProjectScheme,
    window: &Window,
    x: &TorusPoint,
) -> Result<bool> {
    match (scheme, window) {
        (CutProjectScheme::Euclidean(_), Window::Intervals(w)) => {
            if w.is_empty() {
                // Every configuration is the empty one; the support is that
                // single point.
                return Ok(true);
            }
            match classify_interval(scheme, window)? {
                IntervalCase::CaseI => Ok(true),
                // In the second case exactly the discontinuity points drop
                // out of the support (their configurations miss one point).
                IntervalCase::CaseII => is_continuity_point(scheme, window, x),
            }
        }
        (CutProjectScheme::Residue(_), Window::Residues(_)) => {
            check_residue_point(scheme, x)?;
            // Clopen window: the configuration map is a homeomorphism onto
            // its image, every configuration is a limit of sampled ones.
            Ok(true)
        }
        _ => Err(Error::SpaceMismatch("scheme, window or point kind differs")),
    }
}

fn check_residue_point(scheme: &CutProjectScheme, x: &TorusPoint) -> Result<()> {
    match (scheme, x) {
        (CutProjectScheme::Residue(r), TorusPoint::Residues(res)) => {
            if res.len() == r.moduli().len() {
                Ok(())
            } else {
                Err(Error::SpaceMismatch("residue vector length"))
            }
        }
        _ => Err(Error::SpaceMismatch("point kind does not match the scheme")),
    }
}

/// Draw `count` torus points from the uniform (Haar) distribution.
///
/// Planar schemes draw the two fundamental-domain coordinates as 64-bit
/// dyadic rationals in `[0, 1)`; residue schemes draw independent uniform
/// residues per modulus.  The stream is fully determined by the seed.
pub fn sample_torus(
    scheme: &CutProjectScheme,
    seed: u64,
    count: usize,
) -> Result<Vec<TorusPoint>> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let point = match scheme {
            CutProjectScheme::Euclidean(e) => {
                let s = QuadraticNumber::from_rational(rng.unit_dyadic(), e.field())?;
                let t = QuadraticNumber::from_rational(rng.unit_dyadic(), e.field())?;
                e.torus_point(s, t)?
            }
            CutProjectScheme::Residue(r) => {
                TorusPoint::Residues(r.moduli().iter().map(|&b| rng.next_below(b)).collect())
            }
        };
        out.push(point);
    }
    Ok(out)
}

/// Fraction of uniformly sampled torus points that are continuity points.
pub fn continuity_fraction(
    scheme: &CutProjectScheme,
    window: &Window,
    seed: u64,
    samples: usize,
) -> Result<Rational> {
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be at least 1"));
    }
    let mut hits: usize = 0;
    for x in sample_torus(scheme, seed, samples)? {
        if is_continuity_point(scheme, window, &x)? {
            hits += 1;
        }
    }
    Ok(Rational::new(BigInt::from(hits), BigInt::from(samples)))
}

/// Factor applied to the boundary-collar estimate in [`deviation_margin`].
///
/// The collar `{y : dist(y, boundary of [-n,n]) <= separation}` contains
/// every configuration point whose membership can differ between the
/// empirical count and the limit term; its expected occupancy is
/// `density * hull_measure * 4 * separation`.  The factor covers the
/// worst-case clustering above that expectation for the window shapes the
/// crate constructs (interval unions and residue products); the margin tests
/// exercise it against exhaustive counts.
pub const BOUNDARY_MARGIN_FACTOR: i64 = 8;

/// The smallest positive physical distance between two configuration points,
/// over every translate of the scheme: the minimum of `|l_G|` over nonzero
/// lattice elements whose internal part lies in the difference set of the
/// window hull.  `None` when no such element exists (empty or degenerate
/// windows).
pub fn minimal_separation(
    scheme: &CutProjectScheme,
    window: &Window,
) -> Result<Option<ExactValue>> {
    match (scheme, window) {
        (CutProjectScheme::Euclidean(e), Window::Intervals(w)) => {
            let Some((lo, hi)) = w.hull() else { return Ok(None) };
            let delta = hi.checked_sub(&lo)?;
            if delta.is_zero() {
                // The internal projection is one-to-one on the lattice, so
                // no nonzero element has internal part zero.
                return Ok(None);
            }
            let diff_window = Window::interval(delta.neg(), delta.clone())?;
            let origin = scheme.origin();
            let mut radius: i64 = 1;
            while radius <= (1 << 20) {
                let region = Region::centered_line(radius, e.field())?;
                let config = scheme.enumerate(&origin, &diff_window, &region)?;
                let mut best: Option<QuadraticNumber> = None;
                for (idx, p) in config.indices().iter().zip(config.physical_points()) {
                    if *idx == (LatticeIndex::Pair { m: 0, n: 0 }) {
                        continue;
                    }
                    let PhysicalElement::Line(g) = p else { unreachable!() };
                    let mag = if g.sign() < 0 { g.neg() } else { g.clone() };
                    let better = match &best {
                        None => true,
                        Some(b) => mag.cmp_exact(b)? == Ordering::Less,
                    };
                    if better {
                        best = Some(mag);
                    }
                }
                if let Some(b) = best {
                    return Ok(Some(ExactValue::Quadratic(b)));
                }
                radius *= 2;
            }
            Err(Error::Unsupported("separation search exceeded its region budget"))
        }
        (CutProjectScheme::Residue(r), Window::Residues(w)) => {
            if w.is_empty() {
                return Ok(None);
            }
            let period = r.period();
            if period > 10_000_000 {
                return Err(Error::Unsupported("period too large for the separation scan"));
            }
            // Per-factor difference sets of the allowed residues.
            let diffs: Vec<Vec<bool>> = w
                .moduli()
                .iter()
                .zip(w.allowed())
                .map(|(&b, set)| {
                    let mut hit = vec![false; b as usize];
                    for &a in set {
                        for &c in set {
                            hit[((a + b - c) % b) as usize] = true;
                        }
                    }
                    hit
                })
                .collect();
            for n in 1..=period {
                let all = w
                    .moduli()
                    .iter()
                    .zip(&diffs)
                    .all(|(&b, hit)| hit[(n % b) as usize]);
                if all {
                    return Ok(Some(ExactValue::Rational(Rational::from_integer(n.into()))));
                }
            }
            Ok(None)
        }
        _ => Err(Error::SpaceMismatch("scheme and window kinds differ")),
    }
}

/// Margin `M(n)` with `empirical_density <= limit_density + M(n)` for every
/// torus point, from the boundary-collar estimate.
///
/// With a separation `s`, the margin is
/// `BOUNDARY_MARGIN_FACTOR * density * hull_measure * 4s / measure([-n,n])`:
/// the collar of width `s` around the two region ends has measure `4s`, and
/// only points inside it are miscounted.  Without a separation the window
/// hull is a point, at most one lattice translate can ever enter the window,
/// and `2 / measure` covers it.  The empty window admits no deviation.
pub fn deviation_margin(
    scheme: &CutProjectScheme,
    window: &Window,
    separation: Option<&ExactValue>,
    n: i64,
) -> Result<ExactValue> {
    if window.is_empty() {
        return Ok(ExactValue::zero());
    }
    let measure = centered_region_measure(scheme, n)?;
    match separation {
        Some(s) => {
            let coeff = Rational::from_integer(BigInt::from(4 * BOUNDARY_MARGIN_FACTOR)) / measure;
            scheme
                .density()
                .checked_mul(&window.hull_haar())?
                .checked_mul(s)?
                .checked_mul(&ExactValue::Rational(coeff))
        }
        None => Ok(ExactValue::Rational(Rational::from_integer(BigInt::from(2)) / measure)),
    }
}

/// Exact check of `empirical <= limit + margin`.
pub fn bound_satisfied(
    empirical: &Rational,
    limit: &ExactValue,
    margin: &ExactValue,
) -> Result<bool> {
    let slack = limit
        .checked_add(margin)?
        .checked_sub(&ExactValue::Rational(empirical.clone()))?;
    Ok(slack.sign() >= 0)
}

/// One row of a density sweep.
#[derive(Clone, Debug)]
pub struct DensityRow {
    pub n: i64,
    pub count: u64,
    pub empirical: Rational,
    /// Signed difference `empirical - limit`.
    pub deviation: ExactValue,
    /// Upper bound on the admissible positive deviation at this `n`.
    pub margin: ExactValue,
    /// Whether `empirical <= limit + margin` holds.
    pub bound_ok: bool,
}

/// Density sweep over a list of region radii, with the limit value, the
/// separation used for the margins and the measure convention.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub limit: ExactValue,
    pub separation: Option<ExactValue>,
    pub normalization: &'static str,
    pub rows: Vec<DensityRow>,
}

impl DensityReport {
    /// Plot-ready table: `n,count,empirical,limit,deviation,bound_margin`
    /// with decimal values to `precision` significant digits.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("n,count,empirical,limit,deviation,bound_margin\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.n,
                row.count,
                ExactValue::Rational(row.empirical.clone()).to_decimal(precision),
                self.limit.to_decimal(precision),
                row.deviation.to_decimal(precision),
                row.margin.to_decimal(precision),
            ));
        }
        out
    }
}

pub fn density_report(
    scheme: &CutProjectScheme,
    x: &TorusPoint,
    window: &Window,
    radii: &[i64],
) -> Result<DensityReport> {
    let limit = limit_density(scheme, window)?;
    let separation = minimal_separation(scheme, window)?;
    let mut rows = Vec::with_capacity(radii.len());
    for &n in radii {
        let count = scheme.count_in_region(x, window, &centered_region(scheme, n)?)?;
        let empirical =
            Rational::from_integer(BigInt::from(count)) / centered_region_measure(scheme, n)?;
        let deviation = ExactValue::Rational(empirical.clone()).checked_sub(&limit)?;
        let margin = deviation_margin(scheme, window, separation.as_ref(), n)?;
        let bound_ok = bound_satisfied(&empirical, &limit, &margin)?;
        rows.push(DensityRow { n, count, empirical, deviation, margin, bound_ok });
    }
    Ok(DensityReport { limit, separation, normalization: measure_convention(scheme), rows })
}

/// Empirical versus limit frequency of one pattern.
#[derive(Clone, Debug)]
pub struct FrequencyEntry {
    pub pattern: Pattern,
    pub n: i64,
    pub empirical: Rational,
    pub limit: ExactValue,
    /// Absolute difference `|empirical - limit|`.
    pub deviation: ExactValue,
}

pub fn frequency_entry(
    scheme: &CutProjectScheme,
    x: &TorusPoint,
    window: &Window,
    pattern: &Pattern,
    n: i64,
) -> Result<FrequencyEntry> {
    let empirical = pattern_frequency_empirical(scheme, x, window, pattern, n)?;
    let limit = pattern_frequency_limit(scheme, window, pattern)?;
    let deviation = ExactValue::Rational(empirical.clone()).checked_sub(&limit)?.abs();
    Ok(FrequencyEntry { pattern: pattern.clone(), n, empirical, limit, deviation })
}

/// Pattern-frequency deviations of one torus point, with the largest
/// deviation singled out as the headline number.
#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub entries: Vec<FrequencyEntry>,
    pub max_deviation: ExactValue,
}

pub fn genericity_report(
    scheme: &CutProjectScheme,
    x: &TorusPoint,
    window: &Window,
    patterns: &[Pattern],
    n: i64,
) -> Result<GenericityReport> {
    let mut entries = Vec::with_capacity(patterns.len());
    let mut max_deviation = ExactValue::zero();
    for pattern in patterns {
        let entry = frequency_entry(scheme, x, window, pattern, n)?;
        if entry.deviation.checked_sub(&max_deviation)?.sign() > 0 {
            max_deviation = entry.deviation.clone();
        }
        entries.push(entry);
    }
    Ok(GenericityReport { entries, max_deviation })
}
