//! Cut-and-project schemes with a one-dimensional physical space.
//!
//! Two kinds are supported.  The planar kind takes a rank-2 lattice spanned
//! by two rows with real quadratic coordinates and projects it to a physical
//! line and an internal line; validity requires a nonzero determinant, an
//! injective physical projection and a dense internal projection, which for
//! quadratic coordinates reduce to exact 2x2 independence tests.  The
//! arithmetic kind pairs the integers with a finite product of residue-class
//! groups through the componentwise remainder map.
//!
//! Points of the quotient torus are stored in canonical fundamental-domain
//! coordinates, so equal points compare equal structurally.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ExactValue, QuadraticNumber, Rational};
use crate::window::InternalPoint;

/// A lattice element, indexed by its integer coordinates in the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeIndex {
    /// `m * v + n * w` in a planar scheme.
    Pair { m: i64, n: i64 },
    /// The element over the integer `n` in a residue scheme.
    Single(i64),
}

/// A point of the physical space.
#[derive(Clone, Debug, PartialEq)]
pub enum PhysicalElement {
    Line(QuadraticNumber),
    Integer(i64),
}

impl PhysicalElement {
    pub fn to_f64(&self) -> f64 {
        match self {
            PhysicalElement::Line(q) => q.to_f64(),
            PhysicalElement::Integer(n) => *n as f64,
        }
    }
}

/// A raw point of the product of physical and internal space, before
/// reduction modulo the lattice.
#[derive(Clone, Debug)]
pub enum AmbientPoint {
    Line { g: QuadraticNumber, h: QuadraticNumber },
    Residue { g: i64, h: Vec<u64> },
}

/// A point of the quotient torus in canonical coordinates.
///
/// Planar schemes store fundamental-domain coordinates `(s, t)` in `[0, 1)^2`
/// with respect to the basis; residue schemes store the internal residues of
/// the unique representative with physical coordinate 0.
#[derive(Clone, Debug, PartialEq)]
pub enum TorusPoint {
    Euclidean { s: QuadraticNumber, t: QuadraticNumber },
    Residues(Vec<u64>),
}

/// Planar lattice scheme over the field Q(sqrt(d)).
#[derive(Clone, Debug)]
pub struct EuclideanScheme {
    d: u64,
    v: (QuadraticNumber, QuadraticNumber),
    w: (QuadraticNumber, QuadraticNumber),
    det: QuadraticNumber,
}

impl EuclideanScheme {
    /// Build from basis rows `v = (v_G, v_H)` and `w = (w_G, w_H)`.
    pub fn new(
        d: u64,
        v: (QuadraticNumber, QuadraticNumber),
        w: (QuadraticNumber, QuadraticNumber),
    ) -> Result<Self> {
        for q in [&v.0, &v.1, &w.0, &w.1] {
            if q.field() != d {
                return Err(Error::FieldMismatch { left: d, right: q.field() });
            }
        }
        let det = v.0.checked_mul(&w.1)?.checked_sub(&w.0.checked_mul(&v.1)?)?;
        if det.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        // Injectivity of the physical projection on the lattice is exactly
        // rational independence of (v_G, w_G) as vectors over (1, sqrt(d)).
        if !rationally_independent(&v.0, &w.0) {
            return Err(Error::DependentPhysical);
        }
        // Density of the internal projection is rational independence of
        // (v_H, w_H): the projected group is then a dense rank-2 subgroup.
        if !rationally_independent(&v.1, &w.1) {
            return Err(Error::DependentInternal);
        }
        Ok(EuclideanScheme { d, v, w, det })
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn basis(&self) -> (&(QuadraticNumber, QuadraticNumber), &(QuadraticNumber, QuadraticNumber)) {
        (&self.v, &self.w)
    }

    pub fn det(&self) -> &QuadraticNumber {
        &self.det
    }

    /// Covolume of the lattice, `|det|`.
    pub fn covolume(&self) -> QuadraticNumber {
        if self.det.sign() < 0 {
            self.det.neg()
        } else {
            self.det.clone()
        }
    }

    /// Lattice density `1 / covolume`, exact in the field.
    pub fn density(&self) -> QuadraticNumber {
        self.covolume().inverse().expect("nonzero determinant")
    }

    /// The lattice element `m*v + n*w` as a coordinate pair.
    pub fn lattice_point(&self, m: i64, n: i64) -> (QuadraticNumber, QuadraticNumber) {
        let m = Rational::from_integer(BigInt::from(m));
        let n = Rational::from_integer(BigInt::from(n));
        (
            self.v.0.scale(&m).checked_add(&self.w.0.scale(&n)).expect("same field"),
            self.v.1.scale(&m).checked_add(&self.w.1.scale(&n)).expect("same field"),
        )
    }

    /// Solve `(g, h) = s*v + t*w` exactly in the field.
    pub fn coordinates(
        &self,
        g: &QuadraticNumber,
        h: &QuadraticNumber,
    ) -> Result<(QuadraticNumber, QuadraticNumber)> {
        let s = g.checked_mul(&self.w.1)?.checked_sub(&self.w.0.checked_mul(h)?)?
            .checked_div(&self.det)?;
        let t = self.v.0.checked_mul(h)?.checked_sub(&g.checked_mul(&self.v.1)?)?
            .checked_div(&self.det)?;
        Ok((s, t))
    }

    /// Canonical representative of `(g, h)` modulo the lattice.
    pub fn reduce(&self, g: &QuadraticNumber, h: &QuadraticNumber) -> Result<TorusPoint> {
        let (s, t) = self.coordinates(g, h)?;
        Ok(TorusPoint::Euclidean { s: frac(&s), t: frac(&t) })
    }

    /// Build a torus point from fundamental-domain coordinates in `[0, 1)^2`.
    pub fn torus_point(&self, s: QuadraticNumber, t: QuadraticNumber) -> Result<TorusPoint> {
        for q in [&s, &t] {
            if q.field() != self.d {
                return Err(Error::FieldMismatch { left: self.d, right: q.field() });
            }
            if q.sign() < 0 || q.checked_sub(&QuadraticNumber::from_int(1, self.d)?)?.sign() >= 0 {
                return Err(Error::SpaceMismatch("torus coordinates must lie in [0,1)"));
            }
        }
        Ok(TorusPoint::Euclidean { s, t })
    }

    /// Decide membership of `h` in the internal projection of the lattice,
    /// returning the witness `(m, n)` with `h = m*v_H + n*w_H`.
    pub fn internal_lattice_witness(
        &self,
        h: &QuadraticNumber,
    ) -> Result<Option<(BigInt, BigInt)>> {
        if h.field() != self.d {
            return Err(Error::FieldMismatch { left: self.d, right: h.field() });
        }
        // Solve over the rationals in the (1, sqrt(d)) coordinates.
        let (a1, b1) = (self.v.1.rational_part(), self.v.1.surd_part());
        let (a2, b2) = (self.w.1.rational_part(), self.w.1.surd_part());
        let (c1, c2) = (h.rational_part(), h.surd_part());
        let det = a1 * b2 - a2 * b1;
        debug_assert!(!det.is_zero(), "validated at construction");
        let m = (c1 * b2 - a2 * c2) / &det;
        let n = (a1 * c2 - c1 * b1) / &det;
        if m.is_integer() && n.is_integer() {
            Ok(Some((m.to_integer(), n.to_integer())))
        } else {
            Ok(None)
        }
    }

    pub fn in_internal_lattice(&self, h: &QuadraticNumber) -> Result<bool> {
        Ok(self.internal_lattice_witness(h)?.is_some())
    }
}

/// Fractional part `x - floor(x)` in `[0, 1)`.
fn frac(x: &QuadraticNumber) -> QuadraticNumber {
    let f = x.floor();
    QuadraticNumber::new(
        x.rational_part() - Rational::from_integer(f),
        x.surd_part().clone(),
        x.field(),
    )
    .expect("valid field")
}

/// Rational independence of two elements of Q(sqrt(d)), viewed as vectors
/// over Q in the basis (1, sqrt(d)).
fn rationally_independent(x: &QuadraticNumber, y: &QuadraticNumber) -> bool {
    let det = x.rational_part() * y.surd_part() - y.rational_part() * x.surd_part();
    !det.is_zero()
}

/// The arithmetic scheme: integers against a truncated product of
/// residue-class groups with pairwise coprime moduli.
#[derive(Clone, Debug)]
pub struct ResidueScheme {
    moduli: Vec<u64>,
    period: u64,
}

impl ResidueScheme {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        let mut period: u64 = 1;
        for (i, &b) in moduli.iter().enumerate() {
            if b < 2 {
                return Err(Error::InvalidModulus(b));
            }
            if i > 0 && moduli[i - 1] >= b {
                return Err(Error::ModuliNotIncreasing);
            }
            for &a in &moduli[..i] {
                if gcd(a, b) != 1 {
                    return Err(Error::ModuliNotCoprime(a, b));
                }
            }
            period = period.checked_mul(b).ok_or(Error::PeriodOverflow)?;
        }
        Ok(ResidueScheme { moduli, period })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Product of the moduli: the period of every derived configuration.
    pub fn period(&self) -> u64 {
        self.period
    }

    /// The diagonal embedding: componentwise remainder of `n`.
    pub fn embed(&self, n: i64) -> Vec<u64> {
        self.moduli.iter().map(|&b| n.rem_euclid(b as i64) as u64).collect()
    }

    fn check_residues(&self, h: &[u64]) -> Result<()> {
        if h.len() != self.moduli.len() {
            return Err(Error::SpaceMismatch("residue vector length"));
        }
        for (&r, &b) in h.iter().zip(&self.moduli) {
            if r >= b {
                return Err(Error::InvalidResidue { residue: r, modulus: b });
            }
        }
        Ok(())
    }

    /// Canonical representative: shift `(g, h)` by the lattice element over
    /// `-g` so the physical coordinate becomes 0.
    pub fn reduce(&self, g: i64, h: &[u64]) -> Result<TorusPoint> {
        self.check_residues(h)?;
        let shifted = h
            .iter()
            .zip(&self.moduli)
            .map(|(&r, &b)| {
                let g_mod = g.rem_euclid(b as i64) as u64;
                (r + b - g_mod) % b
            })
            .collect();
        Ok(TorusPoint::Residues(shifted))
    }

    pub fn torus_point(&self, residues: Vec<u64>) -> Result<TorusPoint> {
        self.check_residues(&residues)?;
        Ok(TorusPoint::Residues(residues))
    }

    /// Density of the lattice (one point per unit of physical space).
    pub fn density(&self) -> Rational {
        Rational::one()
    }

    /// Covolume of the lattice: the internal group has total mass 1.
    pub fn covolume(&self) -> Rational {
        Rational::one()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A cut-and-project scheme of either kind.
#[derive(Clone, Debug)]
pub enum CutProjectScheme {
    Euclidean(EuclideanScheme),
    Residue(ResidueScheme),
}

impl CutProjectScheme {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CutProjectScheme::Euclidean(_) => "euclidean2d",
            CutProjectScheme::Residue(_) => "residue",
        }
    }

    /// The distinguished point 0 of the torus.
    pub fn origin(&self) -> TorusPoint {
        match self {
            CutProjectScheme::Euclidean(s) => TorusPoint::Euclidean {
                s: QuadraticNumber::zero(s.field()).expect("valid field"),
                t: QuadraticNumber::zero(s.field()).expect("valid field"),
            },
            CutProjectScheme::Residue(s) => TorusPoint::Residues(vec![0; s.moduli().len()]),
        }
    }

    pub fn density(&self) -> ExactValue {
        match self {
            CutProjectScheme::Euclidean(s) => ExactValue::Quadratic(s.density()),
            CutProjectScheme::Residue(s) => ExactValue::Rational(s.density()),
        }
    }

    pub fn covolume(&self) -> ExactValue {
        match self {
            CutProjectScheme::Euclidean(s) => ExactValue::Quadratic(s.covolume()),
            CutProjectScheme::Residue(s) => ExactValue::Rational(s.covolume()),
        }
    }

    pub fn reduce(&self, p: &AmbientPoint) -> Result<TorusPoint> {
        match (self, p) {
            (CutProjectScheme::Euclidean(s), AmbientPoint::Line { g, h }) => s.reduce(g, h),
            (CutProjectScheme::Residue(s), AmbientPoint::Residue { g, h }) => s.reduce(*g, h),
            _ => Err(Error::SpaceMismatch("point kind does not match the scheme")),
        }
    }

    /// Translate a torus point by a physical element (internal part zero)
    /// and reduce back to canonical coordinates.
    pub fn shift(&self, x: &TorusPoint, g: &PhysicalElement) -> Result<TorusPoint> {
        match (self, x, g) {
            (CutProjectScheme::Euclidean(s), TorusPoint::Euclidean { .. }, PhysicalElement::Line(g)) => {
                let (xg, xh) = self.representative_euclidean(x)?;
                s.reduce(&xg.checked_add(g)?, &xh)
            }
            (CutProjectScheme::Residue(s), TorusPoint::Residues(r), PhysicalElement::Integer(g)) => {
                if r.len() != s.moduli().len() {
                    return Err(Error::SpaceMismatch("residue vector length"));
                }
                let shifted = r
                    .iter()
                    .zip(s.moduli())
                    .map(|(&h, &b)| {
                        let g_mod = g.rem_euclid(b as i64) as u64;
                        (h + b - g_mod) % b
                    })
                    .collect();
                Ok(TorusPoint::Residues(shifted))
            }
            _ => Err(Error::SpaceMismatch("shift kind does not match the scheme")),
        }
    }

    /// The canonical representative of a planar torus point as a raw
    /// coordinate pair `(x_G, x_H)`.
    pub fn representative_euclidean(
        &self,
        x: &TorusPoint,
    ) -> Result<(QuadraticNumber, QuadraticNumber)> {
        match (self, x) {
            (CutProjectScheme::Euclidean(sch), TorusPoint::Euclidean { s, t }) => {
                let (v, w) = sch.basis();
                let g = s.checked_mul(&v.0)?.checked_add(&t.checked_mul(&w.0)?)?;
                let h = s.checked_mul(&v.1)?.checked_add(&t.checked_mul(&w.1)?)?;
                Ok((g, h))
            }
            _ => Err(Error::SpaceMismatch("expected a planar scheme and point")),
        }
    }

    /// Internal coordinate of `x + lattice(idx)`.
    pub fn internal_of(&self, x: &TorusPoint, idx: &LatticeIndex) -> Result<InternalPoint> {
        match (self, x, idx) {
            (CutProjectScheme::Euclidean(sch), TorusPoint::Euclidean { .. }, LatticeIndex::Pair { m, n }) => {
                let (_, xh) = self.representative_euclidean(x)?;
                let (_, lh) = sch.lattice_point(*m, *n);
                Ok(InternalPoint::Line(xh.checked_add(&lh)?))
            }
            (CutProjectScheme::Residue(sch), TorusPoint::Residues(r), LatticeIndex::Single(n)) => {
                if r.len() != sch.moduli().len() {
                    return Err(Error::SpaceMismatch("residue vector length"));
                }
                let out = r
                    .iter()
                    .zip(sch.moduli())
                    .map(|(&h, &b)| {
                        let n_mod = n.rem_euclid(b as i64) as u64;
                        (h + n_mod) % b
                    })
                    .collect();
                Ok(InternalPoint::Residues(out))
            }
            _ => Err(Error::SpaceMismatch("index kind does not match the scheme")),
        }
    }

    /// Physical coordinate of `x + lattice(idx)`.
    pub fn physical_of(&self, x: &TorusPoint, idx: &LatticeIndex) -> Result<PhysicalElement> {
        match (self, x, idx) {
            (CutProjectScheme::Euclidean(sch), TorusPoint::Euclidean { .. }, LatticeIndex::Pair { m, n }) => {
                let (xg, _) = self.representative_euclidean(x)?;
                let (lg, _) = sch.lattice_point(*m, *n);
                Ok(PhysicalElement::Line(xg.checked_add(&lg)?))
            }
            (CutProjectScheme::Residue(_), TorusPoint::Residues(_), LatticeIndex::Single(n)) => {
                Ok(PhysicalElement::Integer(*n))
            }
            _ => Err(Error::SpaceMismatch("index kind does not match the scheme")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};
    use crate::fixtures::{fibonacci, qn, silver};

    #[test]
    fn silver_density_is_inverse_of_two_root_two() {
        let s = silver();
        assert_eq!(s.covolume(), qn(int(0), int(2), 2));
        // 1/(2 sqrt(2)) = sqrt(2)/4.
        assert_eq!(s.density(), qn(int(0), ratio(1, 4), 2));
    }

    #[test]
    fn fibonacci_density_is_inverse_root_five() {
        let s = fibonacci();
        assert_eq!(s.covolume(), qn(int(0), int(1), 5));
        assert_eq!(s.density(), qn(int(0), ratio(1, 5), 5));
    }

    #[test]
    fn degenerate_bases_are_rejected() {
        let mk = |a: i64, b: i64| qn(int(a), int(b), 2);
        // Parallel rows.
        assert_eq!(
            EuclideanScheme::new(2, (mk(1, 0), mk(0, 1)), (mk(2, 0), mk(0, 2))).unwrap_err(),
            Error::ZeroDeterminant
        );
        // Rational physical projections: not injective on the lattice.
        assert_eq!(
            EuclideanScheme::new(2, (mk(1, 0), mk(0, 1)), (mk(2, 0), mk(1, 1))).unwrap_err(),
            Error::DependentPhysical
        );
        // Rational internal projections: not dense.
        assert_eq!(
            EuclideanScheme::new(2, (mk(0, 1), mk(1, 0)), (mk(1, 1), mk(2, 0))).unwrap_err(),
            Error::DependentInternal
        );
    }

    #[test]
    fn silver_reduction_of_a_lattice_free_point() {
        let s = silver();
        let x = s.reduce(&qn(int(1), int(0), 2), &qn(int(0), int(0), 2)).unwrap();
        // (1, 0) = 1/2 * v + sqrt(2)/4 * w, already inside the fundamental domain.
        assert_eq!(
            x,
            TorusPoint::Euclidean { s: qn(ratio(1, 2), int(0), 2), t: qn(int(0), ratio(1, 4), 2) }
        );
    }

    #[test]
    fn reduction_is_invariant_on_lattice_cosets() {
        let sch = silver();
        let g = qn(ratio(3, 7), ratio(-1, 3), 2);
        let h = qn(ratio(1, 5), ratio(2, 9), 2);
        let base = sch.reduce(&g, &h).unwrap();
        for (m, n) in [(1i64, 0i64), (-3, 2), (7, -5)] {
            let (lg, lh) = sch.lattice_point(m, n);
            let moved = sch
                .reduce(&g.checked_add(&lg).unwrap(), &h.checked_add(&lh).unwrap())
                .unwrap();
            assert_eq!(base, moved);
        }
    }

    #[test]
    fn residue_scheme_validation() {
        assert!(ResidueScheme::new(vec![4, 9, 25]).is_ok());
        assert_eq!(
            ResidueScheme::new(vec![4, 6]).unwrap_err(),
            Error::ModuliNotCoprime(4, 6)
        );
        assert_eq!(
            ResidueScheme::new(vec![9, 4]).unwrap_err(),
            Error::ModuliNotIncreasing
        );
        assert_eq!(ResidueScheme::new(vec![1, 4]).unwrap_err(), Error::InvalidModulus(1));
        assert_eq!(ResidueScheme::new(vec![4, 9]).unwrap().period(), 36);
    }

    #[test]
    fn residue_reduction_shifts_to_physical_origin() {
        let s = ResidueScheme::new(vec![4, 9]).unwrap();
        assert_eq!(
            s.reduce(7, &[0, 0]).unwrap(),
            TorusPoint::Residues(vec![1, 2])
        );
        assert_eq!(s.embed(-7), vec![1, 2]);
    }

    #[test]
    fn shifting_by_a_lattice_physical_part_fixes_the_origin() {
        // For the residue scheme every integer is a lattice physical part.
        let sch = CutProjectScheme::Residue(ResidueScheme::new(vec![4, 9]).unwrap());
        let origin = sch.origin();
        let moved = sch.shift(&origin, &PhysicalElement::Integer(36)).unwrap();
        assert_eq!(moved, origin);
        let moved = sch.shift(&origin, &PhysicalElement::Integer(5)).unwrap();
        assert_eq!(moved, TorusPoint::Residues(vec![3, 4]));
    }

    #[test]
    fn euclidean_shift_by_lattice_vector_is_identity_only_for_full_lattice_translations() {
        let sch = CutProjectScheme::Euclidean(silver());
        let x = sch.origin();
        // Physical translation by v_G + w_G is not a lattice translation of
        // the torus (the internal part moves), so the point changes.
        let g = qn(int(1), int(1), 2);
        let moved = sch.shift(&x, &PhysicalElement::Line(g)).unwrap();
        assert_ne!(moved, x);
        // But translating by any g and back returns to the start.
        let back = sch
            .shift(&moved, &PhysicalElement::Line(qn(int(-1), int(-1), 2)))
            .unwrap();
        assert_eq!(back, x);
    }
}
