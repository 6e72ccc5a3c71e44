//! Finite point configurations of a scheme.
//!
//! A configuration materialises, on a closed physical region, the points of
//! a shifted lattice whose internal coordinates fall in a window.  Every
//! inclusion decision is exact.  For planar schemes the candidate lattice
//! indices come from solving the region-times-window box through the inverse
//! basis matrix: the range of one coefficient is bounded by the box corners,
//! and for each value of that coefficient the other one sweeps an exactly
//! computed interval.  The cost is linear in the output plus the swept
//! coefficient range.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{
    scaled_surd_ceil, scaled_surd_floor, scaled_surd_sign, ExactValue, QuadraticNumber, Rational,
};
use crate::scheme::{CutProjectScheme, EuclideanScheme, LatticeIndex, PhysicalElement, TorusPoint};
use crate::window::{IntervalWindow, ResidueWindow, Window};

/// Hard cap on the candidate index range of a single enumeration axis.
const MAX_AXIS_RANGE: i64 = 100_000_000;

/// A closed interval of the physical space.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Line { lo: QuadraticNumber, hi: QuadraticNumber },
    Integers { lo: i64, hi: i64 },
}

impl Region {
    pub fn line(lo: QuadraticNumber, hi: QuadraticNumber) -> Result<Self> {
        if lo.field() != hi.field() {
            return Err(Error::FieldMismatch { left: lo.field(), right: hi.field() });
        }
        if lo.cmp_exact(&hi)? == Ordering::Greater {
            return Err(Error::InvalidInterval);
        }
        Ok(Region::Line { lo, hi })
    }

    pub fn integers(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval);
        }
        Ok(Region::Integers { lo, hi })
    }

    /// The centered region `[-n, n]` on the physical line of field `d`.
    pub fn centered_line(n: i64, d: u64) -> Result<Self> {
        Region::line(QuadraticNumber::from_int(-n, d)?, QuadraticNumber::from_int(n, d)?)
    }

    pub fn centered_integers(n: i64) -> Result<Self> {
        Region::integers(-n, n)
    }

    /// Translate by a physical element.
    pub fn translate(&self, g: &PhysicalElement) -> Result<Self> {
        match (self, g) {
            (Region::Line { lo, hi }, PhysicalElement::Line(g)) => {
                Ok(Region::Line { lo: lo.checked_add(g)?, hi: hi.checked_add(g)? })
            }
            (Region::Integers { lo, hi }, PhysicalElement::Integer(g)) => Ok(Region::Integers {
                lo: lo.checked_add(*g).ok_or(Error::RegionTooLarge)?,
                hi: hi.checked_add(*g).ok_or(Error::RegionTooLarge)?,
            }),
            _ => Err(Error::SpaceMismatch("region and shift kinds differ")),
        }
    }

    /// Haar measure of the region: length on the line, cardinality on the
    /// integers (counting measure).
    pub fn measure(&self) -> ExactValue {
        match self {
            Region::Line { lo, hi } => {
                ExactValue::Quadratic(hi.checked_sub(lo).expect("same field"))
            }
            Region::Integers { lo, hi } => {
                ExactValue::Rational(Rational::from_integer(BigInt::from(hi - lo + 1)))
            }
        }
    }
}

/// The points of `(x + lattice) ∩ (region × window)`, listed by lattice
/// index together with their physical coordinates in increasing order.
#[derive(Clone, Debug)]
pub struct Configuration {
    base: TorusPoint,
    window: Window,
    region: Region,
    indices: Vec<LatticeIndex>,
    physical: Vec<PhysicalElement>,
}

impl Configuration {
    pub fn base(&self) -> &TorusPoint {
        &self.base
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[LatticeIndex] {
        &self.indices
    }

    pub fn physical_points(&self) -> &[PhysicalElement] {
        &self.physical
    }

    /// Keep only the points whose physical coordinate satisfies the
    /// predicate.  Restricting a configuration models hereditary
    /// sub-structures (any subset of a point set is again a point set over
    /// the same region).
    pub fn restrict<F: FnMut(&PhysicalElement) -> bool>(&self, mut keep: F) -> Configuration {
        let mut indices = Vec::new();
        let mut physical = Vec::new();
        for (idx, p) in self.indices.iter().zip(&self.physical) {
            if keep(p) {
                indices.push(*idx);
                physical.push(p.clone());
            }
        }
        Configuration {
            base: self.base.clone(),
            window: self.window.clone(),
            region: self.region.clone(),
            indices,
            physical,
        }
    }

    /// CSV rendering of the point list: lattice index columns, then the
    /// physical coordinate exactly and as a decimal.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        match self.region {
            Region::Line { .. } => {
                out.push_str("m,n,physical_exact,physical_decimal\n");
                for (idx, p) in self.indices.iter().zip(&self.physical) {
                    if let (LatticeIndex::Pair { m, n }, PhysicalElement::Line(q)) = (idx, p) {
                        out.push_str(&format!("{m},{n},{q},{}\n", q.to_decimal(precision)));
                    }
                }
            }
            Region::Integers { .. } => {
                out.push_str("n,physical\n");
                for (idx, p) in self.indices.iter().zip(&self.physical) {
                    if let (LatticeIndex::Single(n), PhysicalElement::Integer(g)) = (idx, p) {
                        out.push_str(&format!("{n},{g}\n"));
                    }
                }
            }
        }
        out
    }
}

impl CutProjectScheme {
    /// Materialise the configuration of `x` for `window` on `region`.
    pub fn enumerate(
        &self,
        x: &TorusPoint,
        window: &Window,
        region: &Region,
    ) -> Result<Configuration> {
        let (indices, physical) = match self.prepared(x, window, region)? {
            Prepared::Euclidean(p) => p.materialise()?,
            Prepared::Residue(p) => p.materialise(),
        };
        Ok(Configuration {
            base: x.clone(),
            window: window.clone(),
            region: region.clone(),
            indices,
            physical,
        })
    }

    /// Number of configuration points, without materialising them.
    ///
    /// Identical to `enumerate(..).len()` (the same exact interval bounds
    /// decide membership), but skips point construction and sorting.
    pub fn count_in_region(
        &self,
        x: &TorusPoint,
        window: &Window,
        region: &Region,
    ) -> Result<u64> {
        match self.prepared(x, window, region)? {
            Prepared::Euclidean(p) => p.count(),
            Prepared::Residue(p) => Ok(p.count()),
        }
    }

    fn prepared<'a>(
        &'a self,
        x: &'a TorusPoint,
        window: &'a Window,
        region: &'a Region,
    ) -> Result<Prepared<'a>> {
        match (self, x, window, region) {
            (
                CutProjectScheme::Euclidean(sch),
                TorusPoint::Euclidean { .. },
                Window::Intervals(win),
                Region::Line { lo, hi },
            ) => {
                if win.field() != sch.field() {
                    return Err(Error::FieldMismatch { left: sch.field(), right: win.field() });
                }
                if lo.field() != sch.field() {
                    return Err(Error::FieldMismatch { left: sch.field(), right: lo.field() });
                }
                let (xg, xh) = self.representative_euclidean(x)?;
                Ok(Prepared::Euclidean(EuclideanSweep::new(sch, xg, xh, win, lo, hi)?))
            }
            (
                CutProjectScheme::Residue(sch),
                TorusPoint::Residues(res),
                Window::Residues(win),
                Region::Integers { lo, hi },
            ) => {
                if win.moduli() != sch.moduli() {
                    return Err(Error::SpaceMismatch("window moduli differ from the scheme"));
                }
                if res.len() != sch.moduli().len() {
                    return Err(Error::SpaceMismatch("residue vector length"));
                }
                if hi - lo > MAX_AXIS_RANGE {
                    return Err(Error::RegionTooLarge);
                }
                Ok(Prepared::Residue(ResidueSweep { res, win, lo: *lo, hi: *hi }))
            }
            _ => Err(Error::SpaceMismatch("point, window or region kind differs")),
        }
    }
}

enum Prepared<'a> {
    Euclidean(EuclideanSweep<'a>),
    Residue(ResidueSweep<'a>),
}

/// Per-axis data for the planar sweep.  For the w-coefficient `n` fixed, the
/// v-coefficient `m` solves `lo <= m*c + n*s <= hi` on each axis, i.e. it
/// lies in `[a_lo - n*b, a_hi - n*b]` with `a_* = lo/c, hi/c` (swapped for
/// negative `c`) and `b = s/c`; all divisions happen once, outside the loop.
struct EuclideanSweep<'a> {
    sch: &'a EuclideanScheme,
    xg: QuadraticNumber,
    xh: QuadraticNumber,
    win: &'a IntervalWindow,
    rlo: &'a QuadraticNumber,
    rhi: &'a QuadraticNumber,
    n_range: Option<(i64, i64)>,
    ag_lo: QuadraticNumber,
    ag_hi: QuadraticNumber,
    bg: QuadraticNumber,
    parts: Vec<(QuadraticNumber, QuadraticNumber)>,
    bh: QuadraticNumber,
}

impl<'a> EuclideanSweep<'a> {
    fn new(
        sch: &'a EuclideanScheme,
        xg: QuadraticNumber,
        xh: QuadraticNumber,
        win: &'a IntervalWindow,
        rlo: &'a QuadraticNumber,
        rhi: &'a QuadraticNumber,
    ) -> Result<Self> {
        let (v, w) = sch.basis();
        let inv_g = v.0.inverse()?;
        let (pl, ph) = if v.0.sign() > 0 { (rlo, rhi) } else { (rhi, rlo) };
        let ag_lo = pl.checked_sub(&xg)?.checked_mul(&inv_g)?;
        let ag_hi = ph.checked_sub(&xg)?.checked_mul(&inv_g)?;
        let bg = w.0.checked_mul(&inv_g)?;
        let inv_h = v.1.inverse()?;
        let swap = v.1.sign() < 0;
        let bh = w.1.checked_mul(&inv_h)?;
        let mut parts = Vec::with_capacity(win.parts().len());
        for (plo, phi) in win.parts() {
            let cl = plo.checked_sub(&xh)?.checked_mul(&inv_h)?;
            let ch = phi.checked_sub(&xh)?.checked_mul(&inv_h)?;
            parts.push(if swap { (ch, cl) } else { (cl, ch) });
        }
        let n_range = match win.hull() {
            None => None,
            Some((hlo, hhi)) => {
                // Corners of the region-window box under the inverse basis
                // matrix bound the w-coefficient.
                let mut no: Option<(BigInt, BigInt)> = None;
                for cg in [rlo, rhi] {
                    for ch in [&hlo, &hhi] {
                        let (_, n) =
                            sch.coordinates(&cg.checked_sub(&xg)?, &ch.checked_sub(&xh)?)?;
                        let (lo, hi) = (n.floor(), n.ceil());
                        no = Some(match no {
                            Some((a, b)) => (a.min(lo), b.max(hi)),
                            None => (lo, hi),
                        });
                    }
                }
                let (nlo, nhi) = no.expect("corners visited");
                let nlo = nlo.to_i64().ok_or(Error::RegionTooLarge)?;
                let nhi = nhi.to_i64().ok_or(Error::RegionTooLarge)?;
                if nhi - nlo > MAX_AXIS_RANGE {
                    return Err(Error::RegionTooLarge);
                }
                Some((nlo, nhi))
            }
        };
        Ok(EuclideanSweep { sch, xg, xh, win, rlo, rhi, n_range, ag_lo, ag_hi, bg, parts, bh })
    }

    /// The integer m-range for window part `k` at w-coefficient `n`.
    ///
    /// Reference implementation over rational-backed quadratics; the hot
    /// paths run the equivalent integer sweep and are tested against this.
    #[cfg(test)]
    fn m_range(&self, n: i64, k: usize) -> Result<Option<(i64, i64)>> {
        let nr = Rational::from_integer(BigInt::from(n));
        let nbg = self.bg.scale(&nr);
        let nbh = self.bh.scale(&nr);
        let glo = self.ag_lo.checked_sub(&nbg)?;
        let ghi = self.ag_hi.checked_sub(&nbg)?;
        let (cl, ch) = &self.parts[k];
        let ilo = cl.checked_sub(&nbh)?;
        let ihi = ch.checked_sub(&nbh)?;
        let lo = if glo.cmp_exact(&ilo)? == Ordering::Less { &ilo } else { &glo };
        let hi = if ghi.cmp_exact(&ihi)? == Ordering::Greater { &ihi } else { &ghi };
        let mlo = lo.ceil().to_i64().ok_or(Error::RegionTooLarge)?;
        let mhi = hi.floor().to_i64().ok_or(Error::RegionTooLarge)?;
        if mlo > mhi {
            Ok(None)
        } else {
            Ok(Some((mlo, mhi)))
        }
    }

    /// Lift the sweep to integer pairs over one common denominator.
    fn int_sweep(&self) -> Option<IntSweep> {
        let (nlo, nhi) = self.n_range?;
        let mut den = BigInt::one();
        let mut fold = |v: &QuadraticNumber| {
            den = den.lcm(v.rational_part().denom());
            den = den.lcm(v.surd_part().denom());
        };
        fold(&self.ag_lo);
        fold(&self.ag_hi);
        fold(&self.bg);
        fold(&self.bh);
        for (cl, ch) in &self.parts {
            fold(cl);
            fold(ch);
        }
        let pair = |v: &QuadraticNumber| {
            let scale = |r: &Rational| &den / r.denom() * r.numer();
            (scale(v.rational_part()), scale(v.surd_part()))
        };
        let step_g = pair(&self.bg);
        let step_h = pair(&self.bh);
        // Running values start at n = nlo: endpoint minus nlo times the step.
        let n0 = BigInt::from(nlo);
        let at_start = |v: &QuadraticNumber, step: &(BigInt, BigInt)| {
            let (p, q) = pair(v);
            (p - &n0 * &step.0, q - &n0 * &step.1)
        };
        let glo = at_start(&self.ag_lo, &step_g);
        let ghi = at_start(&self.ag_hi, &step_g);
        let parts = self
            .parts
            .iter()
            .map(|(cl, ch)| (at_start(cl, &step_h), at_start(ch, &step_h)))
            .collect();
        Some(IntSweep { d: self.sch.field(), den, nhi, glo, ghi, step_g, parts, step_h, n: nlo })
    }

    fn count(&self) -> Result<u64> {
        let Some(mut sweep) = self.int_sweep() else { return Ok(0) };
        let mut total: u64 = 0;
        loop {
            for k in 0..sweep.parts.len() {
                if let Some((mlo, mhi)) = sweep.part_range(k)? {
                    total += (mhi - mlo + 1) as u64;
                }
            }
            if !sweep.advance() {
                return Ok(total);
            }
        }
    }

    fn materialise(&self) -> Result<(Vec<LatticeIndex>, Vec<PhysicalElement>)> {
        let Some(mut sweep) = self.int_sweep() else {
            return Ok((Vec::new(), Vec::new()));
        };
        let mut hits: Vec<(LatticeIndex, QuadraticNumber)> = Vec::new();
        loop {
            let n = sweep.n;
            for k in 0..sweep.parts.len() {
                let Some((mlo, mhi)) = sweep.part_range(k)? else { continue };
                for m in mlo..=mhi {
                    let (lg, lh) = self.sch.lattice_point(m, n);
                    let yg = self.xg.checked_add(&lg)?;
                    debug_assert!({
                        let yh = self.xh.checked_add(&lh)?;
                        let (plo, phi) = &self.win.parts()[k];
                        self.rlo.cmp_exact(&yg)? != Ordering::Greater
                            && yg.cmp_exact(self.rhi)? != Ordering::Greater
                            && plo.cmp_exact(&yh)? != Ordering::Greater
                            && yh.cmp_exact(phi)? != Ordering::Greater
                    });
                    hits.push((LatticeIndex::Pair { m, n }, yg));
                }
            }
            if !sweep.advance() {
                break;
            }
        }
        hits.sort_by(|a, b| a.1.cmp_exact(&b.1).expect("same field"));
        let mut indices = Vec::with_capacity(hits.len());
        let mut physical = Vec::with_capacity(hits.len());
        for (idx, yg) in hits {
            indices.push(idx);
            physical.push(PhysicalElement::Line(yg));
        }
        Ok((indices, physical))
    }
}

/// The planar sweep lifted to integers: each endpoint is a pair `(P, Q)`
/// meaning `(P + Q*sqrt(d)) / den` over one fixed denominator, and stepping
/// the w-coefficient subtracts a constant pair.  The inner loop therefore
/// never reduces a fraction; signs and floors go through the squared integer
/// comparisons in the scalar kernels.
struct IntSweep {
    d: u64,
    den: BigInt,
    nhi: i64,
    glo: (BigInt, BigInt),
    ghi: (BigInt, BigInt),
    step_g: (BigInt, BigInt),
    parts: Vec<((BigInt, BigInt), (BigInt, BigInt))>,
    step_h: (BigInt, BigInt),
    n: i64,
}

impl IntSweep {
    /// Integer m-range for window part `k` at the current w-coefficient.
    fn part_range(&self, k: usize) -> Result<Option<(i64, i64)>> {
        let (ilo, ihi) = &self.parts[k];
        let lo = if self.less_than(&self.glo, ilo) { ilo } else { &self.glo };
        let hi = if self.less_than(ihi, &self.ghi) { ihi } else { &self.ghi };
        let mlo =
            scaled_surd_ceil(&lo.0, &lo.1, &self.den, self.d).to_i64().ok_or(Error::RegionTooLarge)?;
        let mhi = scaled_surd_floor(&hi.0, &hi.1, &self.den, self.d)
            .to_i64()
            .ok_or(Error::RegionTooLarge)?;
        if mlo > mhi {
            Ok(None)
        } else {
            Ok(Some((mlo, mhi)))
        }
    }

    fn less_than(&self, a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> bool {
        scaled_surd_sign(&(&a.0 - &b.0), &(&a.1 - &b.1), self.d) < 0
    }

    /// Move to the next w-coefficient; false when the range is exhausted.
    fn advance(&mut self) -> bool {
        if self.n >= self.nhi {
            return false;
        }
        self.n += 1;
        self.glo.0 -= &self.step_g.0;
        self.glo.1 -= &self.step_g.1;
        self.ghi.0 -= &self.step_g.0;
        self.ghi.1 -= &self.step_g.1;
        for (ilo, ihi) in &mut self.parts {
            ilo.0 -= &self.step_h.0;
            ilo.1 -= &self.step_h.1;
            ihi.0 -= &self.step_h.0;
            ihi.1 -= &self.step_h.1;
        }
        true
    }
}

struct ResidueSweep<'a> {
    res: &'a [u64],
    win: &'a ResidueWindow,
    lo: i64,
    hi: i64,
}

impl ResidueSweep<'_> {
    fn member(&self, n: i64) -> bool {
        self.res.iter().zip(self.win.moduli()).zip(self.win.allowed()).all(
            |((&r, &b), allowed)| {
                let n_mod = n.rem_euclid(b as i64) as u64;
                allowed.contains(&((r + n_mod) % b))
            },
        )
    }

    fn count(&self) -> u64 {
        (self.lo..=self.hi).filter(|&n| self.member(n)).count() as u64
    }

    fn materialise(&self) -> (Vec<LatticeIndex>, Vec<PhysicalElement>) {
        let mut indices = Vec::new();
        let mut physical = Vec::new();
        for n in self.lo..=self.hi {
            if self.member(n) {
                indices.push(LatticeIndex::Single(n));
                physical.push(PhysicalElement::Integer(n));
            }
        }
        (indices, physical)
    }
}
