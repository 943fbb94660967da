//! Exact scalar arithmetic: big rationals, half-integers and sparse
//! bivariate polynomials over the rationals.
//!
//! All scalars in the crate are either a [`Rat`] (point computations at a
//! fixed rational `(c, h)`) or a [`PolyCH`] (symbolic computations with
//! `c`, `h` as indeterminates).  Both are canonical: rationals are reduced
//! with positive denominator, polynomials store no zero coefficients, so
//! equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number, reduced, with positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.  Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Division returning an error value on a zero divisor.
pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat, ArithError> {
    if b.is_zero() {
        Err(ArithError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Parse a rational in the `p/q` text format (`-3/4`, integers as `5`).
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let s = s.trim();
    let bad = || ArithError::MalformedRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = BigInt::from_str(num).map_err(|_| bad())?;
    let denom = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(Rat::new(numer, denom))
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let ns = num_integer::Roots::sqrt(x.numer());
    let ds = num_integer::Roots::sqrt(x.denom());
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Errors from scalar arithmetic and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    DivisionByZero,
    MalformedRational(String),
    MalformedMonomial(String),
    /// `poly_identity_test` called with a degree bound below the actual degrees.
    DegreeBoundExceeded {
        bound: (u32, u32),
        actual: (u32, u32),
    },
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivisionByZero => write!(f, "division by zero"),
            ArithError::MalformedRational(s) => write!(f, "malformed rational `{s}`"),
            ArithError::MalformedMonomial(s) => write!(f, "malformed monomial `{s}`"),
            ArithError::DegreeBoundExceeded { bound, actual } => write!(
                f,
                "degree bound ({},{}) below actual degrees ({},{})",
                bound.0, bound.1, actual.0, actual.1
            ),
        }
    }
}

impl std::error::Error for ArithError {}

/// An exact half-integer, stored as twice its value so index arithmetic
/// stays integral.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// True for elements of `Z + 1/2`.
    pub fn is_half_odd(self) -> bool {
        self.twice.rem_euclid(2) == 1
    }

    /// The integer value; panics when not an integer.
    pub fn as_int(self) -> i64 {
        assert!(self.is_integer(), "{self} is not an integer");
        self.twice / 2
    }

    pub fn to_rat(self) -> Rat {
        Rat::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn is_positive(self) -> bool {
        self.twice > 0
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let r = parse_rat(s)?;
        let twice = &r * rat_int(2);
        if !twice.is_integer() {
            return Err(ArithError::MalformedRational(s.to_string()));
        }
        let t: i64 = twice
            .to_integer()
            .try_into()
            .map_err(|_| ArithError::MalformedRational(s.to_string()))?;
        Ok(HalfInt::from_twice(t))
    }
}

/// Sparse bivariate polynomial in the indeterminates `c` and `h` over the
/// rationals.  Keys are `(degree in c, degree in h)`; no zero coefficients
/// are stored, so equal polynomials have identical term maps.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyCH {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl PolyCH {
    pub fn zero() -> Self {
        PolyCH::default()
    }

    pub fn one() -> Self {
        PolyCH::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        let mut p = PolyCH::zero();
        p.add_term(0, 0, r);
        p
    }

    /// The indeterminate `c`.
    pub fn var_c() -> Self {
        let mut p = PolyCH::zero();
        p.add_term(1, 0, Rat::one());
        p
    }

    /// The indeterminate `h`.
    pub fn var_h() -> Self {
        let mut p = PolyCH::zero();
        p.add_term(0, 1, Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `r * c^dc * h^dh`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, dc: u32, dh: u32, r: Rat) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry((dc, dh)).or_insert_with(Rat::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&(dc, dh));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dc: u32, dh: u32) -> Rat {
        self.terms.get(&(dc, dh)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dc, dh), r) in &other.terms {
            out.add_term(dc, dh, r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dc, dh), r) in &other.terms {
            out.add_term(dc, dh, -r.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = PolyCH::zero();
        for (&(dc, dh), r) in &self.terms {
            out.add_term(dc, dh, -r.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PolyCH::zero();
        for (&(ac, ah), ar) in &self.terms {
            for (&(bc, bh), br) in &other.terms {
                out.add_term(ac + bc, ah + bh, ar * br);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = PolyCH::zero();
        for (&(dc, dh), coef) in &self.terms {
            out.add_term(dc, dh, coef * r);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = PolyCH::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at rational `(c, h)`.
    pub fn eval(&self, c: &Rat, h: &Rat) -> Rat {
        // Power caches keep repeated evaluation on grids cheap.
        let dc_max = self.degree_c();
        let dh_max = self.degree_h();
        let mut cp = Vec::with_capacity(dc_max as usize + 1);
        let mut hp = Vec::with_capacity(dh_max as usize + 1);
        cp.push(Rat::one());
        hp.push(Rat::one());
        for i in 1..=dc_max {
            let prev = cp[(i - 1) as usize].clone();
            cp.push(prev * c);
        }
        for j in 1..=dh_max {
            let prev = hp[(j - 1) as usize].clone();
            hp.push(prev * h);
        }
        let mut acc = Rat::zero();
        for (&(dc, dh), r) in &self.terms {
            acc += r * &cp[dc as usize] * &hp[dh as usize];
        }
        acc
    }

    /// Degree in `c` (0 for the zero polynomial).
    pub fn degree_c(&self) -> u32 {
        self.terms.keys().map(|&(dc, _)| dc).max().unwrap_or(0)
    }

    /// Degree in `h` (0 for the zero polynomial).
    pub fn degree_h(&self) -> u32 {
        self.terms.keys().map(|&(_, dh)| dh).max().unwrap_or(0)
    }

    /// Leading key under the lexicographic order on `(deg_c, deg_h)`.
    fn leading(&self) -> Option<((u32, u32), Rat)> {
        self.terms
            .iter()
            .next_back()
            .map(|(&k, v)| (k, v.clone()))
    }

    /// Exact polynomial division: returns `self / other` when the division
    /// is exact, `None` otherwise.  `other` must be nonzero.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "polynomial division by zero");
        let (lk, lc) = other.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = PolyCH::zero();
        while let Some((rk, rc)) = rem.leading() {
            if rk.0 < lk.0 || rk.1 < lk.1 {
                return None;
            }
            let qk = (rk.0 - lk.0, rk.1 - lk.1);
            let qc = rc / &lc;
            let mut mono = PolyCH::zero();
            mono.add_term(qk.0, qk.1, qc.clone());
            rem = rem.sub(&mono.mul(other));
            quot.add_term(qk.0, qk.1, qc);
        }
        Some(quot)
    }
}

impl fmt::Display for PolyCH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dc, dh), r) in self.terms.iter().rev() {
            let (sign, mag) = if r.is_negative() {
                ("-", -r.clone())
            } else {
                ("+", r.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mut wrote = false;
            if !mag.is_one() || (dc == 0 && dh == 0) {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (d, v) in [(dc, "c"), (dh, "h")] {
                if d > 0 {
                    if wrote {
                        write!(f, "*")?;
                    }
                    write!(f, "{v}")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                    wrote = true;
                }
            }
        }
        Ok(())
    }
}

/// Deterministic polynomial identity test.
///
/// Requires the true degrees of `a` and `b` to lie within `deg_bound =
/// (deg_c, deg_h)`.  Decides equality both structurally (canonical forms)
/// and by evaluation on a `(deg_c+1) x (deg_h+1)` grid of distinct rational
/// points; the grid decision is sound because a nonzero difference would
/// need more roots per variable than its degree permits.
pub fn poly_identity_test(
    a: &PolyCH,
    b: &PolyCH,
    deg_bound: (u32, u32),
) -> Result<bool, ArithError> {
    let actual = (
        a.degree_c().max(b.degree_c()),
        a.degree_h().max(b.degree_h()),
    );
    if actual.0 > deg_bound.0 || actual.1 > deg_bound.1 {
        return Err(ArithError::DegreeBoundExceeded { bound: deg_bound, actual });
    }
    let diff = a.sub(b);
    let mut grid_equal = true;
    'outer: for i in 0..=deg_bound.0 {
        for j in 0..=deg_bound.1 {
            let c = rat_int(i as i64);
            let h = rat_int(j as i64);
            if !diff.eval(&c, &h).is_zero() {
                grid_equal = false;
                break 'outer;
            }
        }
    }
    debug_assert_eq!(grid_equal, a == b, "grid test disagrees with canonical equality");
    Ok(grid_equal)
}

impl std::ops::Add for PolyCH {
    type Output = PolyCH;
    fn add(self, rhs: PolyCH) -> PolyCH {
        PolyCH::add(&self, &rhs)
    }
}

impl std::ops::Mul for PolyCH {
    type Output = PolyCH;
    fn mul(self, rhs: PolyCH) -> PolyCH {
        PolyCH::mul(&self, &rhs)
    }
}

impl Zero for PolyCH {
    fn zero() -> Self {
        PolyCH::zero()
    }
    fn is_zero(&self) -> bool {
        PolyCH::is_zero(self)
    }
}

impl One for PolyCH {
    fn one() -> Self {
        PolyCH::one()
    }
}

/// The coefficient ring the Verma-module machinery is generic over:
/// rationals in point mode, polynomials in `c`, `h` in symbolic mode.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One {
    fn sum(a: &Self, b: &Self) -> Self;
    fn diff(a: &Self, b: &Self) -> Self;
    fn prod(a: &Self, b: &Self) -> Self;
    fn negate(a: &Self) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// Exact division; panics when the division is not exact.  Used by
    /// fraction-free elimination, which only performs exact divisions.
    fn exact_div(a: &Self, b: &Self) -> Self;
}

impl Scalar for Rat {
    fn sum(a: &Self, b: &Self) -> Self {
        a + b
    }
    fn diff(a: &Self, b: &Self) -> Self {
        a - b
    }
    fn prod(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn negate(a: &Self) -> Self {
        -a
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn exact_div(a: &Self, b: &Self) -> Self {
        assert!(!Zero::is_zero(b), "rational division by zero");
        a / b
    }
}

impl Scalar for PolyCH {
    fn sum(a: &Self, b: &Self) -> Self {
        a.add(b)
    }
    fn diff(a: &Self, b: &Self) -> Self {
        a.sub(b)
    }
    fn prod(a: &Self, b: &Self) -> Self {
        a.mul(b)
    }
    fn negate(a: &Self) -> Self {
        a.neg()
    }
    fn from_rat(r: &Rat) -> Self {
        PolyCH::constant(r.clone())
    }
    fn exact_div(a: &Self, b: &Self) -> Self {
        PolyCH::exact_div(a, b).expect("inexact polynomial division")
    }
}
