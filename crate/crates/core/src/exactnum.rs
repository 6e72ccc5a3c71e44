//! Exact scalar arithmetic.
//!
//! Two scalar types cover everything the rest of the crate needs: arbitrary
//! precision rationals (backed by `num-rational`) and real quadratic numbers
//! `a + b*sqrt(d)` over them.  All decision procedures (sign, floor, module
//! membership, comparisons) are exact; floating point appears only in the
//! convenience conversions used for report tolerances.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator (invariants maintained by the backing type).
pub type Rational = BigRational;

/// `p/q` from machine integers. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Whole number as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `p/q` or the integer shorthand `p`.  No whitespace, `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    if num.is_empty() {
        return Err(err());
    }
    let p = BigInt::from_str(num).map_err(|_| err())?;
    let q = match den {
        Some(d) => {
            if d.is_empty() || d.starts_with('+') || d.starts_with('-') {
                return Err(err());
            }
            let q = BigInt::from_str(d).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            q
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(p, q))
}

/// Canonical form: `p/q` in lowest terms, or plain `p` for integers.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p.checked_mul(p).map(|sq| sq <= d).unwrap_or(false) {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// An element `a + b*sqrt(d)` of the real quadratic field Q(sqrt(d)).
///
/// `d` is a square-free integer >= 2, carried on every value; operations on
/// values from different fields are errors.  Because `sqrt(d)` is irrational
/// the pair `(a, b)` is unique, so derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidField(d));
        }
        Ok(QuadraticNumber { a, b, d })
    }

    pub fn from_rational(a: Rational, d: u64) -> Result<Self> {
        Self::new(a, Rational::zero(), d)
    }

    pub fn from_int(n: i64, d: u64) -> Result<Self> {
        Self::from_rational(int(n), d)
    }

    /// The generator `sqrt(d)` itself.
    pub fn sqrt_d(d: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero(d: u64) -> Result<Self> {
        Self::from_rational(Rational::zero(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn same_field(&self, rhs: &Self) -> Result<()> {
        if self.d == rhs.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.d, right: rhs.d })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(QuadraticNumber { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(QuadraticNumber { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let d = Rational::from_integer(BigInt::from(self.d));
        Ok(QuadraticNumber {
            a: &self.a * &rhs.a + &self.b * &rhs.b * &d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        })
    }

    /// Multiplicative inverse via the conjugate: 1/(a + b s) = (a - b s)/(a^2 - b^2 d).
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = Rational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * &d;
        // norm == 0 would force sqrt(d) rational; cannot happen for square-free d >= 2.
        debug_assert!(!norm.is_zero());
        Ok(QuadraticNumber { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber { a: -&self.a, b: -&self.b, d: self.d }
    }

    /// Scale by a rational factor.
    pub fn scale(&self, r: &Rational) -> Self {
        QuadraticNumber { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    /// Exact sign in {-1, 0, +1}, decided without approximating sqrt(d).
    ///
    /// When `a` and `b` have opposite signs the comparison `|a| vs |b|*sqrt(d)`
    /// is squared into the rational comparison `a^2 vs b^2 d`.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let d = Rational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * &d;
        sa * rational_sign(&norm)
    }

    /// Sign of `self - n`, an exact test.
    fn cmp_int(&self, n: &BigInt) -> i32 {
        QuadraticNumber {
            a: &self.a - Rational::from_integer(n.clone()),
            b: self.b.clone(),
            d: self.d,
        }
        .sign()
    }

    /// Greatest integer `n <= self`, decided by exact sign tests.
    ///
    /// A floating guess seeds the integer bracket and is verified exactly;
    /// when the guess cannot be trusted the bracket shrinks by exact
    /// bisection from a rational bound on the value.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let est = self.to_f64();
        if est.is_finite() && est.abs() < 9.0e15 {
            let mut guess = BigInt::from(est.floor() as i64);
            for _ in 0..4 {
                if self.cmp_int(&guess) < 0 {
                    guess -= 1;
                    continue;
                }
                if self.cmp_int(&(&guess + 1)) >= 0 {
                    guess += 1;
                    continue;
                }
                return guess;
            }
        }
        // |self| <= |a| + |b| * (isqrt(d) + 1) gives an integer bracket.
        let root_bound = BigInt::from(self.d).sqrt() + 1;
        let bound: BigInt = self.a.abs().ceil().to_integer()
            + (self.b.abs() * Rational::from_integer(root_bound)).ceil().to_integer()
            + BigInt::one();
        let mut lo = -bound.clone();
        let mut hi = bound;
        // Invariant: lo <= self < hi.
        while (&hi - &lo) > BigInt::one() {
            let mid = (&lo + &hi).div_floor(&BigInt::from(2));
            if self.cmp_int(&mid) >= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        let frac = QuadraticNumber {
            a: &self.a - Rational::from_integer(f.clone()),
            b: self.b.clone(),
            d: self.d,
        };
        if frac.is_zero() {
            f
        } else {
            f + 1
        }
    }

    /// Is this value in Z + Z*sqrt(d)?
    pub fn in_integer_span(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Decide `self = m + n*gen` with integers m, n, returning the witness.
    ///
    /// The generator must be irrational; then the coordinates of `self` in the
    /// basis `(1, gen)` are a uniquely solvable 2x2 rational system.
    pub fn in_module(&self, gen: &Self) -> Result<Option<(BigInt, BigInt)>> {
        self.same_field(gen)?;
        if gen.b.is_zero() {
            return Err(Error::DegenerateModule);
        }
        // self = m + n*gen  <=>  n*gen.b = self.b  and  m = self.a - n*gen.a.
        let n = &self.b / &gen.b;
        if !n.is_integer() {
            return Ok(None);
        }
        let m = &self.a - &n * &gen.a;
        if !m.is_integer() {
            return Ok(None);
        }
        Ok(Some((m.to_integer(), n.to_integer())))
    }

    /// Exact comparison within one field.
    pub fn cmp_exact(&self, rhs: &Self) -> Result<Ordering> {
        let diff = self.checked_sub(rhs)?;
        Ok(match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Floating approximation for report tolerances; never used in decisions.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Decimal rendering to `sig` significant digits, rounded half-even.
    ///
    /// The value is bracketed between rationals tight enough that both ends
    /// round to the same string; irrationality guarantees termination.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.b.is_zero() {
            return rational_to_decimal(&self.a, sig);
        }
        let mut prec = sig as u32 + 12;
        loop {
            let scale = BigInt::from(10).pow(prec);
            let lo_root = (BigInt::from(self.d) * &scale * &scale).sqrt();
            let hi_root = &lo_root + 1;
            let lo_root = Rational::new(lo_root, scale.clone());
            let hi_root = Rational::new(hi_root, scale.clone());
            let (blo, bhi) = if self.b.is_negative() {
                (&self.b * hi_root, &self.b * lo_root)
            } else {
                (&self.b * lo_root, &self.b * hi_root)
            };
            let lo = &self.a + blo;
            let hi = &self.a + bhi;
            let slo = rational_to_decimal(&lo, sig);
            let shi = rational_to_decimal(&hi, sig);
            if slo == shi {
                return slo;
            }
            prec *= 2;
        }
    }
}

impl fmt::Display for QuadraticNumber {
    /// Canonical form `p/q+r/s*sqrt(d)` (sign of the surd coefficient folded
    /// into the separator), or a plain rational when the surd part vanishes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", render_rational(&self.a));
        }
        let sep = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            render_rational(&self.a),
            sep,
            render_rational(&self.b.abs()),
            self.d
        )
    }
}

/// Parse `p/q+r/s*sqrt(d)`, a plain rational, or the shorthand `r*sqrt(d)`.
///
/// The expected field `d` is supplied by the caller (scheme files fix it
/// once); a literal naming a different field is rejected.
pub fn parse_quadratic(s: &str, d: u64) -> Result<QuadraticNumber> {
    let err = || Error::Parse(s.to_string());
    match s.find("*sqrt(") {
        None => QuadraticNumber::from_rational(parse_rational(s)?, d),
        Some(star) => {
            let coeffs = &s[..star];
            let rest = &s[star + "*sqrt(".len()..];
            let inner = rest.strip_suffix(')').ok_or_else(err)?;
            let lit_d: u64 = inner.parse().map_err(|_| err())?;
            if lit_d != d {
                return Err(Error::FieldMismatch { left: d, right: lit_d });
            }
            // Split "a+b" / "a-b" at the last sign that terminates the a-part.
            let mut split = None;
            for (i, c) in coeffs.char_indices() {
                if (c == '+' || c == '-') && i > 0 {
                    let prev = coeffs.as_bytes()[i - 1];
                    if prev.is_ascii_digit() {
                        split = Some(i);
                    }
                }
            }
            let (a_str, b_str) = match split {
                Some(i) => (&coeffs[..i], &coeffs[i..]),
                None => ("0", coeffs),
            };
            let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
            let a = parse_rational(a_str)?;
            let b = parse_rational(b_str)?;
            QuadraticNumber::new(a, b, d)
        }
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

fn bigint_sign(n: &BigInt) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_negative() {
        -1
    } else {
        1
    }
}

/// Exact sign of `p + q*sqrt(d)` for integers `p`, `q`.
///
/// The mixed-sign case squares into the integer comparison `p^2 vs q^2 d`,
/// so no rational reduction happens.  This is the kernel behind the hot
/// enumeration loops, where all values share one fixed denominator.
pub(crate) fn scaled_surd_sign(p: &BigInt, q: &BigInt, d: u64) -> i32 {
    let sp = bigint_sign(p);
    let sq = bigint_sign(q);
    if sq == 0 {
        return sp;
    }
    if sp == 0 {
        return sq;
    }
    if sp == sq {
        return sp;
    }
    sp * bigint_sign(&(p * p - q * q * BigInt::from(d)))
}

/// Greatest integer `m <= (p + q*sqrt(d)) / den`, requiring `den > 0`.
///
/// A floating guess seeds the bracket; every answer is certified by exact
/// integer sign tests, with bisection from a coarse bound as the fallback.
pub(crate) fn scaled_surd_floor(p: &BigInt, q: &BigInt, den: &BigInt, d: u64) -> BigInt {
    debug_assert!(den.is_positive());
    if q.is_zero() {
        return p.div_floor(den);
    }
    // Whether m <= (p + q sqrt d)/den, as an exact test.
    let above = |m: &BigInt| scaled_surd_sign(&(p - m * den), q, d) >= 0;
    let est = (p.to_f64().unwrap_or(f64::NAN)
        + q.to_f64().unwrap_or(f64::NAN) * (d as f64).sqrt())
        / den.to_f64().unwrap_or(f64::NAN);
    if est.is_finite() && est.abs() < 9.0e15 {
        let mut guess = BigInt::from(est.floor() as i64);
        for _ in 0..4 {
            if !above(&guess) {
                guess -= 1;
                continue;
            }
            if above(&(&guess + 1)) {
                guess += 1;
                continue;
            }
            return guess;
        }
    }
    let root = BigInt::from(d).sqrt() + 1;
    let reach: BigInt = p.abs() + q.abs() * root;
    let bound = reach.div_floor(den) + 2;
    let mut lo = -&bound;
    let mut hi = bound;
    // Invariant: lo <= x < hi.
    while (&hi - &lo) > BigInt::one() {
        let mid: BigInt = &lo + &hi;
        let mid = mid.div_floor(&BigInt::from(2));
        if above(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Least integer `m >= (p + q*sqrt(d)) / den`, requiring `den > 0`.
pub(crate) fn scaled_surd_ceil(p: &BigInt, q: &BigInt, den: &BigInt, d: u64) -> BigInt {
    -scaled_surd_floor(&-p, &-q, den, d)
}

/// Round a nonnegative rational to the nearest integer, ties to even.
fn round_half_even(x: &Rational) -> BigInt {
    let n = x.floor().to_integer();
    let frac = x - Rational::from_integer(n.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        Ordering::Less => n,
        Ordering::Greater => n + 1,
        Ordering::Equal => {
            if n.is_even() {
                n
            } else {
                n + 1
            }
        }
    }
}

/// Exact decimal rendering of a rational to `sig` significant digits with
/// round-half-even, in plain (non-scientific) notation.
pub fn rational_to_decimal(r: &Rational, sig: usize) -> String {
    let sig = sig.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let mut mag = r.abs();
    // Normalise to 10^(e-1) <= mag < 10^e.
    let ten = Rational::from_integer(BigInt::from(10));
    let one = Rational::one();
    let mut e: i64 = 0;
    while mag >= one {
        mag /= &ten;
        e += 1;
    }
    while mag < &one / &ten {
        mag *= &ten;
        e -= 1;
    }
    // mag in [1/10, 1); digits = round(mag * 10^sig).
    let mut digits = round_half_even(&(&mag * Rational::from_integer(BigInt::from(10).pow(sig as u32))));
    if digits == BigInt::from(10).pow(sig as u32) {
        // 0.999.. rounded all the way up.
        digits = BigInt::from(10).pow(sig.saturating_sub(1) as u32);
        e += 1;
    }
    let ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig);
    let body = if e <= 0 {
        format!("0.{}{}", "0".repeat((-e) as usize), ds)
    } else if (e as usize) >= sig {
        format!("{}{}", ds, "0".repeat(e as usize - sig))
    } else {
        format!("{}.{}", &ds[..e as usize], &ds[e as usize..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// A scalar that is either rational or quadratic, for quantities (densities,
/// measures) whose exact nature depends on the scheme kind.
#[derive(Clone, Debug)]
pub enum ExactValue {
    Rational(Rational),
    Quadratic(QuadraticNumber),
}

/// Equality compares the numbers, not the representations: a quadratic with
/// zero surd part equals the corresponding rational.
impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactValue::Rational(a), ExactValue::Rational(b)) => a == b,
            (ExactValue::Quadratic(a), ExactValue::Quadratic(b)) => {
                if a.field() == b.field() {
                    a == b
                } else {
                    a.is_rational() && b.is_rational() && a.rational_part() == b.rational_part()
                }
            }
            (ExactValue::Rational(r), ExactValue::Quadratic(q))
            | (ExactValue::Quadratic(q), ExactValue::Rational(r)) => {
                q.is_rational() && q.rational_part() == r
            }
        }
    }
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::Rational(Rational::zero())
    }

    /// Canonical form of an arithmetic result: quadratics whose surd part
    /// cancelled drop back to plain rationals.
    fn lower(q: QuadraticNumber) -> Self {
        if q.is_rational() {
            ExactValue::Rational(q.rational_part().clone())
        } else {
            ExactValue::Quadratic(q)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactValue::Rational(r) => r.is_zero(),
            ExactValue::Quadratic(q) => q.is_zero(),
        }
    }

    pub fn sign(&self) -> i32 {
        match self {
            ExactValue::Rational(r) => rational_sign(r),
            ExactValue::Quadratic(q) => q.sign(),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            ExactValue::Rational(r) => ExactValue::Rational(r.abs()),
            ExactValue::Quadratic(q) if q.sign() < 0 => ExactValue::Quadratic(q.neg()),
            ExactValue::Quadratic(_) => self.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactValue::Quadratic(q) => q.to_f64(),
        }
    }

    pub fn to_decimal(&self, sig: usize) -> String {
        match self {
            ExactValue::Rational(r) => rational_to_decimal(r, sig),
            ExactValue::Quadratic(q) => q.to_decimal(sig),
        }
    }

    fn promote(&self, d: u64) -> Result<QuadraticNumber> {
        match self {
            ExactValue::Rational(r) => QuadraticNumber::from_rational(r.clone(), d),
            ExactValue::Quadratic(q) => {
                if q.field() == d {
                    Ok(q.clone())
                } else {
                    Err(Error::FieldMismatch { left: q.field(), right: d })
                }
            }
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (ExactValue::Rational(a), ExactValue::Rational(b)) => {
                Ok(ExactValue::Rational(a * b))
            }
            (ExactValue::Quadratic(q), _) => {
                Ok(Self::lower(q.checked_mul(&rhs.promote(q.field())?)?))
            }
            (_, ExactValue::Quadratic(q)) => {
                Ok(Self::lower(self.promote(q.field())?.checked_mul(q)?))
            }
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (ExactValue::Rational(a), ExactValue::Rational(b)) => {
                Ok(ExactValue::Rational(a + b))
            }
            (ExactValue::Quadratic(q), _) => {
                Ok(Self::lower(q.checked_add(&rhs.promote(q.field())?)?))
            }
            (_, ExactValue::Quadratic(q)) => {
                Ok(Self::lower(self.promote(q.field())?.checked_add(q)?))
            }
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (ExactValue::Rational(a), ExactValue::Rational(b)) => {
                Ok(ExactValue::Rational(a - b))
            }
            (ExactValue::Quadratic(q), _) => {
                Ok(Self::lower(q.checked_sub(&rhs.promote(q.field())?)?))
            }
            (_, ExactValue::Quadratic(q)) => {
                Ok(Self::lower(self.promote(q.field())?.checked_sub(q)?))
            }
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rational(r) => write!(f, "{}", render_rational(r)),
            ExactValue::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(a: Rational, b: Rational, d: u64) -> QuadraticNumber {
        QuadraticNumber::new(a, b, d).unwrap()
    }

    #[test]
    fn rational_parsing_round_trip() {
        let r = parse_rational("-3/4").unwrap();
        assert_eq!(r, ratio(-3, 4));
        assert_eq!(render_rational(&r), "-3/4");
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(render_rational(&int(7)), "7");
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn field_parameter_must_be_square_free() {
        assert!(QuadraticNumber::sqrt_d(12).is_err());
        assert!(QuadraticNumber::sqrt_d(1).is_err());
        assert!(QuadraticNumber::sqrt_d(0).is_err());
        assert!(QuadraticNumber::sqrt_d(2).is_ok());
        assert!(QuadraticNumber::sqrt_d(10).is_ok());
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let x = QuadraticNumber::sqrt_d(2).unwrap();
        let y = QuadraticNumber::sqrt_d(3).unwrap();
        assert_eq!(
            x.checked_add(&y),
            Err(Error::FieldMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn sign_of_mixed_sign_coefficients() {
        // 1 - sqrt(2) < 0 although a > 0.
        let x = qn(int(1), int(-1), 2);
        assert_eq!(x.sign(), -1);
        // 3 - 2*sqrt(2) > 0.
        let y = qn(int(3), int(-2), 2);
        assert_eq!(y.sign(), 1);
        // -1 + sqrt(2) > 0.
        let z = qn(int(-1), int(1), 2);
        assert_eq!(z.sign(), 1);
        assert_eq!(qn(int(0), int(0), 2).sign(), 0);
        assert_eq!(qn(int(0), int(-3), 7).sign(), -1);
    }

    #[test]
    fn floor_of_golden_ratio_values() {
        // tau = (1 + sqrt(5))/2 ~ 1.618.
        let tau = qn(ratio(1, 2), ratio(1, 2), 5);
        assert_eq!(tau.floor(), BigInt::from(1));
        // tau' = (1 - sqrt(5))/2 ~ -0.618.
        let tau_c = qn(ratio(1, 2), ratio(-1, 2), 5);
        assert_eq!(tau_c.floor(), BigInt::from(-1));
        assert_eq!(qn(int(4), int(0), 5).floor(), BigInt::from(4));
        assert_eq!(qn(ratio(-7, 2), int(0), 5).floor(), BigInt::from(-4));
        assert_eq!(tau.ceil(), BigInt::from(2));
        assert_eq!(qn(int(4), int(0), 5).ceil(), BigInt::from(4));
    }

    #[test]
    fn module_membership_in_z_plus_sqrt2_z() {
        let gen = QuadraticNumber::sqrt_d(2).unwrap();
        // 3 - 2*sqrt(2) = 3 + (-2)*gen.
        let x = qn(int(3), int(-2), 2);
        assert_eq!(
            x.in_module(&gen).unwrap(),
            Some((BigInt::from(3), BigInt::from(-2)))
        );
        // sqrt(2)/2 is not in Z + Z*sqrt(2).
        let y = qn(int(0), ratio(-1, 2), 2);
        assert_eq!(y.in_module(&gen).unwrap(), None);
        // Rational generators are degenerate.
        let bad = qn(int(2), int(0), 2);
        assert_eq!(x.in_module(&bad), Err(Error::DegenerateModule));
    }

    #[test]
    fn quadratic_literals_round_trip() {
        let tau_c = parse_quadratic("1/2-1/2*sqrt(5)", 5).unwrap();
        assert_eq!(tau_c, qn(ratio(1, 2), ratio(-1, 2), 5));
        assert_eq!(tau_c.to_string(), "1/2-1/2*sqrt(5)");
        let s = parse_quadratic("0+1*sqrt(2)", 2).unwrap();
        assert_eq!(s, QuadraticNumber::sqrt_d(2).unwrap());
        // Shorthand without the rational part.
        assert_eq!(parse_quadratic("1*sqrt(2)", 2).unwrap(), s);
        assert_eq!(parse_quadratic("-1*sqrt(2)", 2).unwrap(), s.neg());
        // Plain rationals parse with a zero surd part.
        assert_eq!(parse_quadratic("-3/4", 5).unwrap(), qn(ratio(-3, 4), int(0), 5));
        // Tolerated double sign from mechanical serialisers.
        assert_eq!(
            parse_quadratic("1/2+-1/2*sqrt(5)", 5).unwrap(),
            qn(ratio(1, 2), ratio(-1, 2), 5)
        );
        assert!(parse_quadratic("1+1*sqrt(3)", 5).is_err());
        assert!(parse_quadratic("1+1*sqrt(5", 5).is_err());
    }

    #[test]
    fn decimal_rendering_is_half_even() {
        assert_eq!(rational_to_decimal(&ratio(1, 2), 3), "0.500");
        assert_eq!(rational_to_decimal(&ratio(25, 2), 3), "12.5");
        // 0.1235 with 3 digits: tie on the last digit, round to even.
        assert_eq!(rational_to_decimal(&ratio(1235, 10000), 3), "0.124");
        assert_eq!(rational_to_decimal(&ratio(1245, 10000), 3), "0.124");
        assert_eq!(rational_to_decimal(&ratio(-1, 3), 5), "-0.33333");
        assert_eq!(rational_to_decimal(&int(999), 2), "1000");
        assert_eq!(rational_to_decimal(&int(0), 5), "0");
        // sqrt(2) to 15 digits.
        let s = QuadraticNumber::sqrt_d(2).unwrap();
        assert_eq!(s.to_decimal(15), "1.41421356237310");
        let tau = qn(ratio(1, 2), ratio(1, 2), 5);
        assert_eq!(tau.to_decimal(15), "1.61803398874989");
    }

    #[test]
    fn exact_value_promotion() {
        let half = ExactValue::Rational(ratio(1, 2));
        let root = ExactValue::Quadratic(QuadraticNumber::sqrt_d(2).unwrap());
        let prod = half.checked_mul(&root).unwrap();
        assert_eq!(
            prod,
            ExactValue::Quadratic(qn(int(0), ratio(1, 2), 2))
        );
        assert_eq!(prod.to_string(), "0+1/2*sqrt(2)");
        assert_eq!(
            ExactValue::Rational(ratio(2, 3)).to_string(),
            "2/3"
        );
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn square_free_d() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 3, 5, 7, 13])
    }

    fn quadratic(d: u64) -> impl Strategy<Value = QuadraticNumber> {
        let part = (-999i64..1000, 1i64..60);
        (part.clone(), part).prop_map(move |((an, ad), (bn, bd))| {
            QuadraticNumber::new(ratio(an, ad), ratio(bn, bd), d).unwrap()
        })
    }

    fn triple() -> impl Strategy<Value = (QuadraticNumber, QuadraticNumber, QuadraticNumber)> {
        square_free_d()
            .prop_flat_map(|d| (quadratic(d), quadratic(d), quadratic(d)))
    }

    proptest! {
        /// `floor(q) <= q < floor(q) + 1`, checked in exact arithmetic.
        #[test]
        fn floor_brackets_the_value(q in square_free_d().prop_flat_map(quadratic)) {
            let f = q.floor();
            let d = q.field();
            let low = QuadraticNumber::new(Rational::from_integer(f.clone()), int(0), d).unwrap();
            let high = QuadraticNumber::new(
                Rational::from_integer(f + BigInt::one()),
                int(0),
                d,
            )
            .unwrap();
            prop_assert!(q.checked_sub(&low).unwrap().sign() >= 0);
            prop_assert!(q.checked_sub(&high).unwrap().sign() < 0);
        }

        /// The exact sign agrees with a float evaluation whenever the float
        /// is comfortably far from zero.
        #[test]
        fn sign_matches_a_clear_float_verdict(q in square_free_d().prop_flat_map(quadratic)) {
            let approx = q.to_f64();
            if approx.abs() > 1e-6 {
                prop_assert_eq!(q.sign(), if approx > 0.0 { 1 } else { -1 });
            }
        }

        /// Multiplication distributes over addition.
        #[test]
        fn arithmetic_distributes((a, b, c) in triple()) {
            let left = a.checked_add(&b).unwrap().checked_mul(&c).unwrap();
            let right = a
                .checked_mul(&c)
                .unwrap()
                .checked_add(&b.checked_mul(&c).unwrap())
                .unwrap();
            prop_assert_eq!(left, right);
        }

        /// The canonical rendering parses back to the same number.
        #[test]
        fn display_round_trips(q in square_free_d().prop_flat_map(quadratic)) {
            let rendered = q.to_string();
            let reparsed = parse_quadratic(&rendered, q.field()).unwrap();
            prop_assert_eq!(q, reparsed);
        }

        /// Nonzero numbers have exact inverses.
        #[test]
        fn inverse_multiplies_to_one(q in square_free_d().prop_flat_map(quadratic)) {
            if !q.is_zero() {
                let one = QuadraticNumber::from_int(1, q.field()).unwrap();
                prop_assert_eq!(q.checked_mul(&q.inverse().unwrap()).unwrap(), one);
            }
        }

        /// The integer kernel agrees with the rational-backed sign.
        #[test]
        fn scaled_sign_matches_quadratic_sign(
            d in square_free_d(),
            p in -100_000i64..100_001,
            q in -100_000i64..100_001,
        ) {
            let value = QuadraticNumber::new(int(p), int(q), d).unwrap();
            prop_assert_eq!(
                scaled_surd_sign(&BigInt::from(p), &BigInt::from(q), d),
                value.sign()
            );
        }

        /// The integer kernel agrees with the rational-backed floor and ceil,
        /// including huge components that defeat the floating guess.
        #[test]
        fn scaled_floor_matches_quadratic_floor(
            d in square_free_d(),
            p in -100_000i64..100_001,
            q in -100_000i64..100_001,
            den in 1i64..10_000,
            boost in prop::sample::select(vec![0u32, 40]),
        ) {
            let scale = BigInt::from(2).pow(boost);
            let (pb, qb, db) =
                (BigInt::from(p) * &scale, BigInt::from(q) * &scale, BigInt::from(den) * &scale);
            let value =
                QuadraticNumber::new(ratio(p, den), ratio(q, den), d).unwrap();
            prop_assert_eq!(scaled_surd_floor(&pb, &qb, &db, d), value.floor());
            prop_assert_eq!(scaled_surd_ceil(&pb, &qb, &db, d), value.ceil());
        }
    }
}
