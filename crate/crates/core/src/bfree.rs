//! Sieve point sets over coprime moduli: integers avoiding the zero residue
//! class of every modulus.
//!
//! These are the residue schemes with the canonical nonzero-residues window.
//! Because everything is periodic with period `P`, the product of the
//! moduli, densities and pattern frequencies over one period are exact
//! rationals, which makes this family the exact-arithmetic test bed for the
//! asymptotic machinery.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::configuration::{Configuration, Region};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::scheme::{CutProjectScheme, PhysicalElement, ResidueScheme};
use crate::window::{ResidueWindow, Window};

/// Largest period for which exhaustive period scans are attempted.
const MAX_SCAN_PERIOD: u64 = 10_000_000;

/// A sieve basis: pairwise coprime moduli in increasing order.
#[derive(Clone, Debug)]
pub struct BFreeBasis {
    scheme: ResidueScheme,
}

impl BFreeBasis {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        Ok(BFreeBasis { scheme: ResidueScheme::new(moduli)? })
    }

    /// The square-free preset: squares of the first `k` primes, so the
    /// members are exactly the square-free integers up to that truncation.
    pub fn squarefree(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("square-free preset needs at least one prime"));
        }
        let mut moduli = Vec::with_capacity(k);
        let mut candidate: u64 = 2;
        while moduli.len() < k {
            let is_prime = (2..candidate).take_while(|p| p * p <= candidate).all(|p| candidate % p != 0);
            if is_prime {
                moduli.push(candidate * candidate);
            }
            candidate += 1;
        }
        BFreeBasis::new(moduli)
    }

    pub fn moduli(&self) -> &[u64] {
        self.scheme.moduli()
    }

    pub fn period(&self) -> u64 {
        self.scheme.period()
    }

    /// The scheme whose configurations realise the sieve.
    pub fn scheme(&self) -> CutProjectScheme {
        CutProjectScheme::Residue(self.scheme.clone())
    }

    /// The canonical window: all nonzero residues per modulus.
    pub fn window(&self) -> Window {
        Window::Residues(
            ResidueWindow::coprime_to_all(self.scheme.moduli().to_vec())
                .expect("moduli validated at construction"),
        )
    }

    /// Membership in the sieve: no modulus divides `n`.
    pub fn is_bfree(&self, n: i64) -> bool {
        self.scheme.moduli().iter().all(|&b| n.rem_euclid(b as i64) != 0)
    }

    /// The integers of `[lo, hi]` with their membership flags, for export.
    pub fn sieve(&self, lo: i64, hi: i64) -> Result<Vec<(i64, bool)>> {
        if lo > hi {
            return Err(Error::InvalidInterval);
        }
        if hi - lo > 100_000_000 {
            return Err(Error::RegionTooLarge);
        }
        Ok((lo..=hi).map(|n| (n, self.is_bfree(n))).collect())
    }

    /// Density of the sieve: the proportion of allowed residues,
    /// `prod (1 - 1/b_k)`.
    pub fn density(&self) -> Rational {
        let mut out = Rational::one();
        for &b in self.scheme.moduli() {
            out *= Rational::new(BigInt::from(b - 1), BigInt::from(b));
        }
        out
    }

    /// Exact frequency of the pattern among the sieve members: the number of
    /// `t` in one period with `t + p` a member for every `p`, divided by the
    /// period.
    ///
    /// The value is computed twice, by the direct scan and as the residue
    /// count product `prod (b_k - |pattern mod b_k|) / b_k`, and the two
    /// routes are asserted equal.
    pub fn exact_period_frequency(&self, pattern: &[i64]) -> Result<Rational> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let period = self.period();
        if period > MAX_SCAN_PERIOD {
            return Err(Error::Unsupported("period too large for the exhaustive scan"));
        }
        let mut count: u64 = 0;
        for t in 0..period {
            if pattern.iter().all(|&p| self.is_bfree(t as i64 + p)) {
                count += 1;
            }
        }
        let scanned = Rational::new(BigInt::from(count), BigInt::from(period));

        let mut product = Rational::one();
        for &b in self.scheme.moduli() {
            let hit: BTreeSet<u64> = pattern.iter().map(|&p| p.rem_euclid(b as i64) as u64).collect();
            product *= Rational::new(BigInt::from(b - hit.len() as u64), BigInt::from(b));
        }
        assert_eq!(scanned, product, "period scan and residue product disagree");
        Ok(scanned)
    }

    /// Census the configuration's support against the one-missing-residue
    /// criterion.
    ///
    /// The verdict reads the physical support through each modulus.  A
    /// census that already shows all `b_k` residues settles non-membership
    /// from any observation window; the remaining verdicts need a window
    /// spanning at least one period, which is conclusive whenever the
    /// observed point set is `P`-periodic (true for every configuration of
    /// the scheme and for its residue-class restrictions).
    pub fn y_membership(&self, config: &Configuration) -> Result<YVerdict> {
        let Window::Residues(win) = config.window() else {
            return Err(Error::SpaceMismatch("configuration does not come from a residue scheme"));
        };
        if win.moduli() != self.scheme.moduli() {
            return Err(Error::SpaceMismatch("configuration moduli differ from the basis"));
        }
        let Region::Integers { lo, hi } = config.region() else {
            return Err(Error::SpaceMismatch("configuration region is not integer"));
        };
        let span = (hi - lo + 1) as u64;
        let period = self.period();
        let mut seen: Vec<BTreeSet<u64>> =
            self.scheme.moduli().iter().map(|_| BTreeSet::new()).collect();
        for p in config.physical_points() {
            let PhysicalElement::Integer(n) = p else {
                return Err(Error::SpaceMismatch("configuration points are not integers"));
            };
            for (set, &b) in seen.iter_mut().zip(self.scheme.moduli()) {
                set.insert(n.rem_euclid(b as i64) as u64);
            }
        }
        let censuses: Vec<u64> = seen.iter().map(|s| s.len() as u64).collect();
        let targets: Vec<u64> = self.scheme.moduli().iter().map(|&b| b - 1).collect();
        let saturated = censuses.iter().zip(self.scheme.moduli()).any(|(&c, &b)| c == b);
        let status = if saturated {
            YStatus::NonMember
        } else if span < period {
            YStatus::Inconclusive
        } else if censuses == targets {
            YStatus::Member
        } else {
            YStatus::NonMember
        };
        Ok(YVerdict { status, censuses, targets, span, period })
    }
}

/// Outcome of the support census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YStatus {
    /// Every modulus shows exactly one missing residue class over at least
    /// one full period.
    Member,
    /// Some modulus shows too few or too many residue classes on a
    /// conclusive window.
    NonMember,
    /// The observation window is shorter than one period and nothing is
    /// settled yet.
    Inconclusive,
}

impl std::fmt::Display for YStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            YStatus::Member => write!(f, "member"),
            YStatus::NonMember => write!(f, "non_member"),
            YStatus::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// The census behind a [`YStatus`] decision.
#[derive(Clone, Debug)]
pub struct YVerdict {
    pub status: YStatus,
    /// Distinct residues of the support, one count per modulus.
    pub censuses: Vec<u64>,
    /// The required counts `b_k - 1`.
    pub targets: Vec<u64>,
    /// Number of integers in the observation window.
    pub span: u64,
    pub period: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::window::InternalPoint;

    fn four_nine() -> BFreeBasis {
        BFreeBasis::new(vec![4, 9]).unwrap()
    }

    #[test]
    fn squarefree_preset_squares_the_first_primes() {
        assert_eq!(BFreeBasis::squarefree(1).unwrap().moduli(), &[4]);
        let b = BFreeBasis::squarefree(3).unwrap();
        assert_eq!(b.moduli(), &[4, 9, 25]);
        assert_eq!(b.period(), 900);
        assert!(BFreeBasis::squarefree(0).is_err());
    }

    #[test]
    fn membership_agrees_with_the_window_machinery() {
        let basis = four_nine();
        let sch = basis.scheme();
        let win = basis.window();
        for n in -50_i64..=50 {
            let member = win
                .contains(&InternalPoint::Residues(vec![
                    n.rem_euclid(4) as u64,
                    n.rem_euclid(9) as u64,
                ]))
                .unwrap();
            assert_eq!(basis.is_bfree(n), member, "n = {n}");
        }
        // And with the enumeration of the origin configuration.
        let region = Region::integers(-50, 50).unwrap();
        let config = sch.enumerate(&sch.origin(), &win, &region).unwrap();
        let listed: Vec<i64> = config
            .physical_points()
            .iter()
            .map(|p| match p {
                PhysicalElement::Integer(n) => *n,
                PhysicalElement::Line(_) => unreachable!(),
            })
            .collect();
        let sieved: Vec<i64> =
            basis.sieve(-50, 50).unwrap().into_iter().filter(|(_, f)| *f).map(|(n, _)| n).collect();
        assert_eq!(listed, sieved);
    }

    #[test]
    fn density_matches_window_haar_and_the_period_scan() {
        let basis = BFreeBasis::new(vec![4, 9, 25]).unwrap();
        assert_eq!(basis.density(), ratio(16, 25));
        assert_eq!(basis.window().haar(), crate::exactnum::ExactValue::Rational(ratio(16, 25)));
        let period = basis.period();
        let count = (0..period as i64).filter(|&n| basis.is_bfree(n)).count();
        assert_eq!(count, 576);
        assert_eq!(Rational::new(count.into(), BigInt::from(period)), ratio(16, 25));
    }

    #[test]
    fn exact_period_frequencies_of_small_patterns() {
        let basis = four_nine();
        assert_eq!(basis.exact_period_frequency(&[0]).unwrap(), ratio(2, 3));
        assert_eq!(basis.exact_period_frequency(&[0, 1]).unwrap(), ratio(7, 18));
        // Pattern residues cover all of Z/4Z: no placement works.
        assert_eq!(basis.exact_period_frequency(&[0, 1, 2, 3]).unwrap(), ratio(0, 1));
        assert!(basis.exact_period_frequency(&[]).is_err());
    }

    #[test]
    fn census_verdicts_across_window_sizes() {
        let basis = four_nine();
        let sch = basis.scheme();
        let win = basis.window();
        let full = Region::integers(-36, 36).unwrap();
        let config = sch.enumerate(&sch.origin(), &win, &full).unwrap();
        let verdict = basis.y_membership(&config).unwrap();
        assert_eq!(verdict.status, YStatus::Member);
        assert_eq!(verdict.censuses, vec![3, 8]);
        assert_eq!(verdict.targets, vec![3, 8]);

        // Restriction to one residue class mod 4 starves that census.
        let restricted = config.restrict(|p| match p {
            PhysicalElement::Integer(n) => n.rem_euclid(4) == 1,
            PhysicalElement::Line(_) => unreachable!(),
        });
        let verdict = basis.y_membership(&restricted).unwrap();
        assert_eq!(verdict.status, YStatus::NonMember);
        assert_eq!(verdict.censuses[0], 1);

        // A short window decides nothing.
        let short = Region::integers(0, 3).unwrap();
        let config = sch.enumerate(&sch.origin(), &win, &short).unwrap();
        assert_eq!(basis.y_membership(&config).unwrap().status, YStatus::Inconclusive);

        // A full window shows every residue: settled even when short.
        let all = Window::Residues(
            ResidueWindow::new(vec![4, 9], vec![(0..4).collect(), (0..9).collect()]).unwrap(),
        );
        let config = sch.enumerate(&sch.origin(), &all, &Region::integers(0, 20).unwrap()).unwrap();
        assert_eq!(basis.y_membership(&config).unwrap().status, YStatus::NonMember);
    }

    #[test]
    fn mismatched_configurations_are_rejected() {
        let basis = four_nine();
        let other = BFreeBasis::new(vec![4, 25]).unwrap();
        let sch = other.scheme();
        let config = sch
            .enumerate(&sch.origin(), &other.window(), &Region::integers(-5, 5).unwrap())
            .unwrap();
        assert!(matches!(basis.y_membership(&config), Err(Error::SpaceMismatch(_))));
    }
}
