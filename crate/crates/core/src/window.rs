//! Compact windows in the internal space.
//!
//! Euclidean internal spaces use finite unions of closed intervals with
//! quadratic endpoints; residue internal spaces use a product of allowed
//! residue sets, one per modulus.  All predicates (membership, boundary,
//! emptiness) and all measures are exact.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ExactValue, QuadraticNumber, Rational};

/// A point of the internal space, matching the scheme kind.
#[derive(Clone, Debug, PartialEq)]
pub enum InternalPoint {
    /// Internal line of a planar scheme.
    Line(QuadraticNumber),
    /// One residue per modulus of a residue scheme.
    Residues(Vec<u64>),
}

/// Finite union of closed intervals `[lo, hi]` on the internal line.
///
/// Parts are kept sorted, pairwise disjoint and non-touching; overlapping or
/// touching input intervals are merged on construction, so the boundary is
/// exactly the set of stored endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalWindow {
    d: u64,
    parts: Vec<(QuadraticNumber, QuadraticNumber)>,
}

impl IntervalWindow {
    pub fn new(d: u64, parts: Vec<(QuadraticNumber, QuadraticNumber)>) -> Result<Self> {
        QuadraticNumber::zero(d)?; // validates the field parameter
        for (lo, hi) in &parts {
            if lo.field() != d {
                return Err(Error::FieldMismatch { left: d, right: lo.field() });
            }
            if hi.field() != d {
                return Err(Error::FieldMismatch { left: d, right: hi.field() });
            }
            if lo.cmp_exact(hi)? == Ordering::Greater {
                return Err(Error::InvalidInterval);
            }
        }
        let mut parts = parts;
        parts.sort_by(|x, y| x.0.cmp_exact(&y.0).expect("same field"));
        let mut merged: Vec<(QuadraticNumber, QuadraticNumber)> = Vec::new();
        for (lo, hi) in parts {
            match merged.last_mut() {
                Some(last) if lo.cmp_exact(&last.1).expect("same field") != Ordering::Greater => {
                    if hi.cmp_exact(&last.1).expect("same field") == Ordering::Greater {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Ok(IntervalWindow { d, parts: merged })
    }

    pub fn interval(lo: QuadraticNumber, hi: QuadraticNumber) -> Result<Self> {
        let d = lo.field();
        Self::new(d, vec![(lo, hi)])
    }

    pub fn empty(d: u64) -> Result<Self> {
        Self::new(d, Vec::new())
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn parts(&self) -> &[(QuadraticNumber, QuadraticNumber)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Some component has nonempty interior.
    pub fn has_interior(&self) -> bool {
        self.parts
            .iter()
            .any(|(lo, hi)| lo.cmp_exact(hi).expect("same field") == Ordering::Less)
    }

    /// Total Lebesgue measure.
    pub fn haar(&self) -> QuadraticNumber {
        let mut total = QuadraticNumber::zero(self.d).expect("valid field");
        for (lo, hi) in &self.parts {
            total = total.checked_add(&hi.checked_sub(lo).expect("same field")).expect("same field");
        }
        total
    }

    /// Smallest closed interval containing the window, `None` when empty.
    pub fn hull(&self) -> Option<(QuadraticNumber, QuadraticNumber)> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some((first.0.clone(), last.1.clone()))
    }

    pub fn contains(&self, h: &QuadraticNumber) -> Result<bool> {
        for (lo, hi) in &self.parts {
            if lo.cmp_exact(h)? != Ordering::Greater && h.cmp_exact(hi)? != Ordering::Greater {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Is `h` a boundary point?  The boundary is the endpoint set; a
    /// degenerate component is all boundary.
    pub fn on_boundary(&self, h: &QuadraticNumber) -> Result<bool> {
        for (lo, hi) in &self.parts {
            if lo.cmp_exact(h)? == Ordering::Equal || hi.cmp_exact(h)? == Ordering::Equal {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// All interval endpoints (a degenerate component contributes one point).
    pub fn endpoints(&self) -> Vec<QuadraticNumber> {
        let mut out = Vec::new();
        for (lo, hi) in &self.parts {
            out.push(lo.clone());
            if lo.cmp_exact(hi).expect("same field") != Ordering::Equal {
                out.push(hi.clone());
            }
        }
        out
    }

    /// The translated window `W - h`.
    pub fn translate(&self, h: &QuadraticNumber) -> Result<Self> {
        let parts = self
            .parts
            .iter()
            .map(|(lo, hi)| Ok((lo.checked_sub(h)?, hi.checked_sub(h)?)))
            .collect::<Result<Vec<_>>>()?;
        IntervalWindow::new(self.d, parts)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::FieldMismatch { left: self.d, right: other.d });
        }
        let mut parts = Vec::new();
        for (alo, ahi) in &self.parts {
            for (blo, bhi) in &other.parts {
                let lo = if alo.cmp_exact(blo)? == Ordering::Less { blo } else { alo };
                let hi = if ahi.cmp_exact(bhi)? == Ordering::Greater { bhi } else { ahi };
                if lo.cmp_exact(hi)? != Ordering::Greater {
                    parts.push((lo.clone(), hi.clone()));
                }
            }
        }
        IntervalWindow::new(self.d, parts)
    }

    /// Topological regularity: the window equals the closure of its interior,
    /// which for interval unions means no degenerate component.
    pub fn is_regular(&self) -> bool {
        self.parts
            .iter()
            .all(|(lo, hi)| lo.cmp_exact(hi).expect("same field") == Ordering::Less)
    }
}

/// Product window over a truncated residue-class space: one allowed set of
/// residues per modulus.  The product topology is discrete, so the window is
/// clopen and its boundary is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueWindow {
    moduli: Vec<u64>,
    allowed: Vec<BTreeSet<u64>>,
}

impl ResidueWindow {
    pub fn new(moduli: Vec<u64>, allowed: Vec<BTreeSet<u64>>) -> Result<Self> {
        if moduli.len() != allowed.len() {
            return Err(Error::SpaceMismatch("one allowed set per modulus"));
        }
        for (&b, set) in moduli.iter().zip(&allowed) {
            if b < 2 {
                return Err(Error::InvalidModulus(b));
            }
            for &r in set {
                if r >= b {
                    return Err(Error::InvalidResidue { residue: r, modulus: b });
                }
            }
        }
        Ok(ResidueWindow { moduli, allowed })
    }

    /// Complement form: everything except the listed residues.
    pub fn from_forbidden(moduli: Vec<u64>, forbidden: Vec<Vec<u64>>) -> Result<Self> {
        if moduli.len() != forbidden.len() {
            return Err(Error::SpaceMismatch("one forbidden set per modulus"));
        }
        let mut allowed = Vec::with_capacity(moduli.len());
        for (&b, bad) in moduli.iter().zip(&forbidden) {
            if b < 2 {
                return Err(Error::InvalidModulus(b));
            }
            for &r in bad {
                if r >= b {
                    return Err(Error::InvalidResidue { residue: r, modulus: b });
                }
            }
            let bad: BTreeSet<u64> = bad.iter().copied().collect();
            allowed.push((0..b).filter(|r| !bad.contains(r)).collect());
        }
        ResidueWindow::new(moduli, allowed)
    }

    /// The window of integers avoiding residue 0 at every modulus.
    pub fn coprime_to_all(moduli: Vec<u64>) -> Result<Self> {
        let forbidden = vec![vec![0]; moduli.len()];
        Self::from_forbidden(moduli, forbidden)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn allowed(&self) -> &[BTreeSet<u64>] {
        &self.allowed
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.iter().any(|s| s.is_empty())
    }

    /// Haar measure with each factor normalised to total mass 1:
    /// the product of |allowed_k| / b_k (1 for the empty product).
    pub fn haar(&self) -> Rational {
        let mut total = Rational::one();
        for (&b, set) in self.moduli.iter().zip(&self.allowed) {
            total *= Rational::new(BigInt::from(set.len()), BigInt::from(b));
        }
        total
    }

    fn check_point(&self, h: &[u64]) -> Result<()> {
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

    pub fn contains(&self, h: &[u64]) -> Result<bool> {
        self.check_point(h)?;
        Ok(h.iter().zip(&self.allowed).all(|(r, set)| set.contains(r)))
    }

    /// The translated window `W - h`, componentwise mod each modulus.
    pub fn translate(&self, h: &[u64]) -> Result<Self> {
        self.check_point(h)?;
        let allowed = self
            .allowed
            .iter()
            .zip(self.moduli.iter().zip(h))
            .map(|(set, (&b, &r))| set.iter().map(|&s| (s + b - r) % b).collect())
            .collect();
        ResidueWindow::new(self.moduli.clone(), allowed)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.moduli != other.moduli {
            return Err(Error::SpaceMismatch("residue moduli differ"));
        }
        let allowed = self
            .allowed
            .iter()
            .zip(&other.allowed)
            .map(|(a, b)| a.intersection(b).copied().collect())
            .collect();
        ResidueWindow::new(self.moduli.clone(), allowed)
    }

    /// Per-modulus stabiliser subgroups `{t : allowed + t = allowed}`.
    pub fn stabilisers(&self) -> Vec<Vec<u64>> {
        self.moduli
            .iter()
            .zip(&self.allowed)
            .map(|(&b, set)| {
                (0..b)
                    .filter(|&t| {
                        let shifted: BTreeSet<u64> = set.iter().map(|&s| (s + t) % b).collect();
                        shifted == *set
                    })
                    .collect()
            })
            .collect()
    }
}

/// The group of internal translations fixing a window.
#[derive(Clone, Debug, PartialEq)]
pub enum PeriodGroup {
    /// Only the zero translation (the aperiodic case).
    Trivial,
    /// Every translation (only the empty window).
    Full,
    /// Product of the listed per-modulus stabiliser subgroups.
    Residues(Vec<Vec<u64>>),
}

/// A window in either kind of internal space.
#[derive(Clone, Debug, PartialEq)]
pub enum Window {
    Intervals(IntervalWindow),
    Residues(ResidueWindow),
}

impl Window {
    pub fn interval(lo: QuadraticNumber, hi: QuadraticNumber) -> Result<Self> {
        Ok(Window::Intervals(IntervalWindow::interval(lo, hi)?))
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Window::Intervals(w) => w.is_empty(),
            Window::Residues(w) => w.is_empty(),
        }
    }

    pub fn haar(&self) -> ExactValue {
        match self {
            Window::Intervals(w) => ExactValue::Quadratic(w.haar()),
            Window::Residues(w) => ExactValue::Rational(w.haar()),
        }
    }

    /// Haar measure of the topological hull: the enclosing interval on the
    /// line, the whole (mass one) group for a clopen residue window.
    pub fn hull_haar(&self) -> ExactValue {
        match self {
            Window::Intervals(w) => match w.hull() {
                Some((lo, hi)) => ExactValue::Quadratic(hi.checked_sub(&lo).expect("same field")),
                None => ExactValue::Quadratic(QuadraticNumber::zero(w.field()).expect("valid")),
            },
            Window::Residues(w) => {
                if w.is_empty() {
                    ExactValue::Rational(Rational::zero())
                } else {
                    ExactValue::Rational(Rational::one())
                }
            }
        }
    }

    pub fn contains(&self, h: &InternalPoint) -> Result<bool> {
        match (self, h) {
            (Window::Intervals(w), InternalPoint::Line(x)) => w.contains(x),
            (Window::Residues(w), InternalPoint::Residues(r)) => w.contains(r),
            _ => Err(Error::SpaceMismatch("window and point kinds differ")),
        }
    }

    pub fn on_boundary(&self, h: &InternalPoint) -> Result<bool> {
        match (self, h) {
            (Window::Intervals(w), InternalPoint::Line(x)) => w.on_boundary(x),
            // Clopen windows have empty boundary.
            (Window::Residues(w), InternalPoint::Residues(r)) => {
                w.check_point(r)?;
                Ok(false)
            }
            _ => Err(Error::SpaceMismatch("window and point kinds differ")),
        }
    }

    pub fn translate(&self, h: &InternalPoint) -> Result<Self> {
        match (self, h) {
            (Window::Intervals(w), InternalPoint::Line(x)) => {
                Ok(Window::Intervals(w.translate(x)?))
            }
            (Window::Residues(w), InternalPoint::Residues(r)) => {
                Ok(Window::Residues(w.translate(r)?))
            }
            _ => Err(Error::SpaceMismatch("window and shift kinds differ")),
        }
    }

    /// The intersection of the translates `W - h` over all listed shifts,
    /// the window that detects simultaneous membership.
    pub fn intersect_translates(&self, shifts: &[InternalPoint]) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut acc = self.translate(&shifts[0])?;
        for h in &shifts[1..] {
            let t = self.translate(h)?;
            acc = match (acc, t) {
                (Window::Intervals(a), Window::Intervals(b)) => Window::Intervals(a.intersect(&b)?),
                (Window::Residues(a), Window::Residues(b)) => Window::Residues(a.intersect(&b)?),
                _ => unreachable!("translate preserves the window kind"),
            };
        }
        Ok(acc)
    }

    /// The group of translations `h` with `h + W = W`.
    ///
    /// A nonempty compact interval union is always aperiodic (translating
    /// moves its supremum), so the interesting cases are the residue windows
    /// with their finite stabiliser products.
    pub fn periods(&self) -> PeriodGroup {
        match self {
            Window::Intervals(w) => {
                if w.is_empty() {
                    PeriodGroup::Full
                } else {
                    // Translating a nonempty compact union by h != 0 moves
                    // its supremum, so only the zero shift fixes it.
                    PeriodGroup::Trivial
                }
            }
            Window::Residues(w) => {
                if w.is_empty() {
                    return PeriodGroup::Full;
                }
                let stabs = w.stabilisers();
                if stabs.iter().all(|s| s.len() == 1) {
                    PeriodGroup::Trivial
                } else {
                    PeriodGroup::Residues(stabs)
                }
            }
        }
    }

    pub fn is_aperiodic(&self) -> bool {
        matches!(self.periods(), PeriodGroup::Trivial)
    }

    /// Topological regularity (window equals the closure of its interior).
    pub fn is_regular(&self) -> bool {
        match self {
            Window::Intervals(w) => w.is_regular(),
            // Discrete internal spaces: every subset is clopen.
            Window::Residues(_) => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};

    fn qn(a: Rational, b: Rational, d: u64) -> QuadraticNumber {
        QuadraticNumber::new(a, b, d).unwrap()
    }

    fn fib_window() -> IntervalWindow {
        // [-1, -tau'] with tau' = (1 - sqrt(5))/2.
        let lo = qn(int(-1), int(0), 5);
        let hi = qn(ratio(-1, 2), ratio(1, 2), 5);
        IntervalWindow::interval(lo, hi).unwrap()
    }

    #[test]
    fn haar_of_fibonacci_window_is_tau() {
        // 1 - tau' = tau.
        assert_eq!(fib_window().haar(), qn(ratio(1, 2), ratio(1, 2), 5));
    }

    #[test]
    fn construction_merges_overlaps_and_rejects_disorder() {
        let d = 2;
        let mk = |a: i64, b: i64| (qn(int(a), int(0), d), qn(int(b), int(0), d));
        let w = IntervalWindow::new(d, vec![mk(1, 2), mk(0, 1), mk(4, 5)]).unwrap();
        assert_eq!(w.parts().len(), 2);
        assert_eq!(w.haar(), qn(int(3), int(0), d));
        assert!(IntervalWindow::new(d, vec![mk(2, 1)]).is_err());
    }

    #[test]
    fn membership_and_boundary_on_the_line() {
        let w = fib_window();
        let hi = qn(ratio(-1, 2), ratio(1, 2), 5);
        assert!(w.contains(&hi).unwrap());
        assert!(w.on_boundary(&hi).unwrap());
        assert!(w.contains(&qn(int(0), int(0), 5)).unwrap());
        assert!(!w.on_boundary(&qn(int(0), int(0), 5)).unwrap());
        assert!(!w.contains(&qn(int(1), int(0), 5)).unwrap());
        // Degenerate window: all boundary, regularity fails.
        let p = IntervalWindow::interval(qn(int(1), int(0), 5), qn(int(1), int(0), 5)).unwrap();
        assert!(p.contains(&qn(int(1), int(0), 5)).unwrap());
        assert!(p.on_boundary(&qn(int(1), int(0), 5)).unwrap());
        assert!(!p.is_regular());
        assert!(w.is_regular());
    }

    #[test]
    fn intersect_translates_on_fibonacci_window() {
        // Shifts {0, 1 + tau'}; the intersection is [-1, -1 - 2 tau'].
        let w = Window::Intervals(fib_window());
        let shifts = vec![
            InternalPoint::Line(qn(int(0), int(0), 5)),
            InternalPoint::Line(qn(ratio(3, 2), ratio(-1, 2), 5)),
        ];
        let got = w.intersect_translates(&shifts).unwrap();
        let want = Window::interval(
            qn(int(-1), int(0), 5),
            qn(int(0), int(1), 5).checked_sub(&qn(int(2), int(0), 5)).unwrap(),
        )
        .unwrap();
        assert_eq!(got, want);
        // haar = -2 tau' = sqrt(5) - 1.
        assert_eq!(
            got.haar(),
            ExactValue::Quadratic(qn(int(-1), int(1), 5))
        );
    }

    #[test]
    fn residue_window_basics() {
        let w = ResidueWindow::coprime_to_all(vec![4, 9]).unwrap();
        assert_eq!(w.haar(), ratio(2, 3));
        assert!(w.contains(&[1, 5]).unwrap());
        assert!(!w.contains(&[0, 5]).unwrap());
        assert!(!w.contains(&[3, 0]).unwrap());
        assert!(w.contains(&[4, 0]).is_err());
        let u = Window::Residues(w);
        assert_eq!(u.haar(), ExactValue::Rational(ratio(2, 3)));
        assert!(!u.on_boundary(&InternalPoint::Residues(vec![0, 0])).unwrap());
    }

    #[test]
    fn residue_intersect_translates_counts_pair_patterns() {
        // Moduli (4, 9), shifts {(0,0), (1,1)}: factor sizes drop to 2 and 7.
        let w = Window::Residues(ResidueWindow::coprime_to_all(vec![4, 9]).unwrap());
        let got = w
            .intersect_translates(&[
                InternalPoint::Residues(vec![0, 0]),
                InternalPoint::Residues(vec![1, 1]),
            ])
            .unwrap();
        assert_eq!(got.haar(), ExactValue::Rational(ratio(7, 18)));
    }

    #[test]
    fn periods_and_aperiodicity() {
        let line = Window::Intervals(fib_window());
        assert!(line.is_aperiodic());
        assert_eq!(
            Window::Intervals(IntervalWindow::empty(5).unwrap()).periods(),
            PeriodGroup::Full
        );
        // Allowed {0, 2} mod 4 is stabilised by the subgroup {0, 2}.
        let s: BTreeSet<u64> = [0u64, 2].into_iter().collect();
        let periodic = Window::Residues(ResidueWindow::new(vec![4], vec![s]).unwrap());
        assert!(!periodic.is_aperiodic());
        assert_eq!(
            periodic.periods(),
            PeriodGroup::Residues(vec![vec![0, 2]])
        );
        let aper = Window::Residues(ResidueWindow::coprime_to_all(vec![4, 9]).unwrap());
        assert!(aper.is_aperiodic());
    }

    #[test]
    fn translation_preserves_haar() {
        let w = fib_window();
        let t = w.translate(&qn(ratio(5, 3), ratio(-2, 7), 5)).unwrap();
        assert_eq!(w.haar(), t.haar());
        let r = ResidueWindow::coprime_to_all(vec![4, 9]).unwrap();
        let rt = r.translate(&[3, 7]).unwrap();
        assert_eq!(r.haar(), rt.haar());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::exactnum::{int, ratio};
    use proptest::prelude::*;

    /// Random residue window over the moduli (4, 9), with at least the
    /// possibility of empty and full factors.
    fn residue_window() -> impl Strategy<Value = ResidueWindow> {
        (0u16..16, 0u16..512).prop_map(|(mask4, mask9)| {
            let pick = |mask: u16, b: u64| -> BTreeSet<u64> {
                (0..b).filter(|r| mask & (1 << r) != 0).collect()
            };
            ResidueWindow::new(vec![4, 9], vec![pick(mask4, 4), pick(mask9, 9)]).unwrap()
        })
    }

    fn shift_4_9() -> impl Strategy<Value = Vec<u64>> {
        (0u64..4, 0u64..9).prop_map(|(a, b)| vec![a, b])
    }

    proptest! {
        /// Translation is a bijection of the internal group, so it cannot
        /// change the Haar measure of a residue window.
        #[test]
        fn residue_translation_preserves_haar(w in residue_window(), h in shift_4_9()) {
            prop_assert_eq!(w.haar(), w.translate(&h).unwrap().haar());
        }

        /// Intersecting with translates only shrinks the window, and the
        /// zero shift changes nothing.
        #[test]
        fn intersect_translates_shrinks(w in residue_window(), h in shift_4_9()) {
            let w = Window::Residues(w);
            let zero = InternalPoint::Residues(vec![0, 0]);
            let shift = InternalPoint::Residues(h);
            let cut = w.intersect_translates(&[zero.clone(), shift]).unwrap();
            let shrunk = w.haar().checked_sub(&cut.haar()).unwrap();
            prop_assert!(shrunk.sign() >= 0);
            prop_assert_eq!(w.intersect_translates(&[zero]).unwrap().haar(), w.haar());
        }

        /// Interval windows: translating moves the endpoints but not the
        /// measure, and membership follows the shift.
        #[test]
        fn interval_translation_preserves_haar_and_membership(
            (lo_n, lo_d, len_n, len_d, sh_n, sh_d) in
                (-99i64..100, 1i64..20, 0i64..50, 1i64..20, -99i64..100, 1i64..20),
        ) {
            let d = 2;
            let lo = QuadraticNumber::new(ratio(lo_n, lo_d), int(0), d).unwrap();
            let hi = lo.checked_add(
                &QuadraticNumber::new(ratio(len_n, len_d), int(0), d).unwrap(),
            ).unwrap();
            let shift = QuadraticNumber::new(ratio(sh_n, sh_d), ratio(sh_n, 7), d).unwrap();
            let w = IntervalWindow::interval(lo.clone(), hi).unwrap();
            // The translate convention is `W - h`, matching the window
            // intersections used for pattern frequencies.
            let t = w.translate(&shift).unwrap();
            prop_assert_eq!(w.haar(), t.haar());
            let probe = lo.checked_sub(&shift).unwrap();
            prop_assert!(t.contains(&probe).unwrap());
        }
    }
}
