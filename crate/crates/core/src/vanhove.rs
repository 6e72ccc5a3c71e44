//! Averaging regions on the physical line: boundary measures of centered
//! intervals, their vanishing ratios, and the temperedness constant.
//!
//! The K-boundary of a compact set A is
//! `((K + A) \ int A) ∪ ((-K + closure(complement A)) ∩ A)`:
//! the points that K-translates can move across the border of A, in either
//! direction.  Averages over a family of regions converge for every
//! configuration of interest exactly when this boundary is asymptotically
//! negligible; the temperedness constant additionally bounds the stacked
//! difference sets of the family.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// The physical line underlying a scheme kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineSpace {
    /// The integers with counting measure and the discrete topology.
    Integers,
    /// The real line with Lebesgue measure.
    Reals,
}

impl LineSpace {
    /// Measure of the closed interval `[lo, hi]`.
    fn interval_measure(&self, lo: i128, hi: i128) -> i128 {
        match self {
            LineSpace::Integers => hi - lo + 1,
            LineSpace::Reals => hi - lo,
        }
    }

    /// Measure of the centered region `[-n, n]`.
    pub fn centered_measure(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(self.interval_measure(-(n as i128), n as i128)))
    }
}

fn checked_interval(pair: (i64, i64)) -> Result<(i128, i128)> {
    if pair.0 > pair.1 {
        return Err(Error::InvalidInterval);
    }
    Ok((pair.0 as i128, pair.1 as i128))
}

/// Total measure of a list of closed intervals, merging overlaps first.
fn union_measure(space: LineSpace, mut parts: Vec<(i128, i128)>) -> i128 {
    parts.retain(|(lo, hi)| lo <= hi);
    parts.sort_unstable();
    let mut total = 0i128;
    let mut current: Option<(i128, i128)> = None;
    let touch = match space {
        // On the integers [0,1] and [2,3] are adjacent without a gap.
        LineSpace::Integers => 1,
        LineSpace::Reals => 0,
    };
    for (lo, hi) in parts {
        match current {
            Some((clo, chi)) if lo <= chi + touch => {
                current = Some((clo, chi.max(hi)));
            }
            Some((clo, chi)) => {
                total += space.interval_measure(clo, chi);
                current = Some((lo, hi));
            }
            None => current = Some((lo, hi)),
        }
    }
    if let Some((clo, chi)) = current {
        total += space.interval_measure(clo, chi);
    }
    total
}

/// Exact measure of the K-boundary of the interval `a`, for compact
/// intervals `a` and `k` with integer endpoints.
pub fn k_boundary_measure(space: LineSpace, a: (i64, i64), k: (i64, i64)) -> Result<Rational> {
    let (a0, a1) = checked_interval(a)?;
    let (k0, k1) = checked_interval(k)?;
    // First part: (K + A) minus the interior of A.  K + A = [a0+k0, a1+k1];
    // on the integers the interior is A itself, on the line it is (a0, a1),
    // whose removal leaves the endpoints (measure zero, kept as degenerate
    // intervals for uniformity).
    let (s0, s1) = (a0 + k0, a1 + k1);
    let left_hi = match space {
        LineSpace::Integers => a0 - 1,
        LineSpace::Reals => a0,
    };
    let right_lo = match space {
        LineSpace::Integers => a1 + 1,
        LineSpace::Reals => a1,
    };
    let mut parts = vec![(s0, s1.min(left_hi)), (s0.max(right_lo), s1)];
    // Second part: (-K + closure of the complement) ∩ A.  The complement's
    // closure is the pair of rays beyond a0 and a1 (closed on the line,
    // shifted by one step on the integers), and -K = [-k1, -k0] stretches
    // them inward to (-inf, a0 - k0] and [a1 - k1, +inf).
    let (c_left, c_right) = match space {
        LineSpace::Integers => (a0 - 1 - k0, a1 + 1 - k1),
        LineSpace::Reals => (a0 - k0, a1 - k1),
    };
    parts.push((a0, a1.min(c_left)));
    parts.push((a0.max(c_right), a1));
    Ok(Rational::from_integer(BigInt::from(union_measure(space, parts))))
}

/// `measure(K-boundary of [-n, n]) / measure([-n, n])`.
pub fn vanhove_ratio(space: LineSpace, n: i64, k: (i64, i64)) -> Result<Rational> {
    if n < 1 {
        return Err(Error::InvalidParameter("region radius n must be at least 1"));
    }
    Ok(k_boundary_measure(space, (-n, n), k)? / space.centered_measure(n))
}

/// `measure(union of difference sets A_k - A_k, k < n) / measure(A_n)` for
/// the centered family; the union telescopes to `[-2(n-1), 2(n-1)]`.
pub fn tempered_ratio(space: LineSpace, n: i64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidParameter("temperedness needs n at least 2"));
    }
    let m = 2 * (n as i128 - 1);
    let stacked = space.interval_measure(-m, m);
    Ok(Rational::from_integer(BigInt::from(stacked)) / space.centered_measure(n))
}

/// The smallest constant bounding every tempered ratio up to `n_max`.
pub fn temperedness_constant(space: LineSpace, n_max: i64) -> Result<Rational> {
    if n_max < 2 {
        return Err(Error::InvalidParameter("temperedness needs n_max at least 2"));
    }
    let mut best = Rational::from_integer(0.into());
    for n in 2..=n_max {
        let r = tempered_ratio(space, n)?;
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// One row of a boundary sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: i64,
    pub boundary: Rational,
    pub ratio: Rational,
    pub tempered_ratio: Option<Rational>,
}

/// Boundary and temperedness data for a list of region radii.
pub fn sweep(space: LineSpace, k: (i64, i64), radii: &[i64]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(radii.len());
    for &n in radii {
        rows.push(SweepRow {
            n,
            boundary: k_boundary_measure(space, (-n, n), k)?,
            ratio: vanhove_ratio(space, n, k)?,
            tempered_ratio: if n >= 2 { Some(tempered_ratio(space, n)?) } else { None },
        });
    }
    Ok(rows)
}
