//! Exact truncated series calculus: the partition series `chi_NS`, theta
//! functions, the Jacobi triple product, characters of the discrete series
//! and the denominator-free coset identities.
//!
//! Everything is a formal series with exact rational exponents and
//! coefficients, truncated *strictly below* a rational order: terms with
//! exponent `>= truncation` are dropped eagerly, and products propagate
//! the tightest sound truncation.  Characters are stored as an explicit
//! prefactor exponent `h - c/24` times a normalized series with constant
//! term 1, so identities compare normalized parts plus exact offsets.
//! Quotients of theta functions are never formed; every identity that
//! involves one is verified in multiplied-through, denominator-free form.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exactnum::{rat, rat_int, HalfInt, Rat};
use crate::gramkac::{c_from_m_int, gram_matrix, h_from_m_int, rank_kernel_signature, valid_discrete_label};
use crate::nsalgebra::VermaModule;

/// Truncated formal series in one variable `t` with exact rational
/// exponents.  Every exponent times `modulus` must be an integer; the
/// modulus is validated on insert to catch exponent-arithmetic bugs early.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    trunc: Rat,
    modulus: i64,
    terms: BTreeMap<Rat, Rat>,
}

impl PuiseuxSeries {
    pub fn new(trunc: Rat, modulus: i64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        PuiseuxSeries { trunc, modulus, terms: BTreeMap::new() }
    }

    pub fn one(trunc: Rat, modulus: i64) -> Self {
        let mut s = Self::new(trunc, modulus);
        s.add_term(Rat::zero(), Rat::one());
        s
    }

    pub fn truncation(&self) -> &Rat {
        &self.trunc
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Rat) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exp: Rat, coef: Rat) {
        if coef.is_zero() || exp >= self.trunc {
            return;
        }
        assert!(
            (&exp * rat_int(self.modulus)).is_integer(),
            "exponent {exp} violates series modulus {}",
            self.modulus
        );
        let entry = self.terms.entry(exp.clone()).or_insert_with(Rat::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Lowest exponent present, or the truncation when the series has no
    /// visible terms (sound lower bound for the true series).
    fn min_bound(&self) -> Rat {
        self.terms.keys().next().cloned().unwrap_or_else(|| self.trunc.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::new(
            self.trunc.clone().min(other.trunc.clone()),
            self.modulus.lcm(&other.modulus),
        );
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = Self::new(self.trunc.clone(), self.modulus);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc.clone() + other.min_bound())
            .min(other.trunc.clone() + self.min_bound());
        let mut out = Self::new(trunc, self.modulus.lcm(&other.modulus));
        for (ea, ca) in &self.terms {
            if ea + other.min_bound() >= out.trunc {
                break;
            }
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if e >= out.trunc {
                    break; // terms are sorted ascending
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiply by `t^d`.
    pub fn shift(&self, d: &Rat) -> Self {
        let modulus = self.modulus.lcm(
            &i64::try_from(d.denom().clone()).expect("shift denominator fits"),
        );
        let mut out = Self::new(&self.trunc + d, modulus);
        for (e, c) in &self.terms {
            out.add_term(e + d, c.clone());
        }
        out
    }

    /// Same coefficients strictly below the smaller of the two truncations.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let cutoff = self.trunc.clone().min(other.trunc.clone());
        for (e, c) in &self.terms {
            if *e < cutoff && other.coeff(e) != *c {
                return false;
            }
        }
        for (e, c) in &other.terms {
            if *e < cutoff && self.coeff(e) != *c {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (e, c) in &self.terms {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c})t^{{{e}}}")?;
            }
        }
        write!(f, " + O(t^{{{}}})", self.trunc)
    }
}

/// Truncated formal series in `t` and `z`; truncation applies to the
/// `t`-exponent only, and each `t`-exponent carries finitely many
/// `z`-exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoVarSeries {
    trunc: Rat,
    terms: BTreeMap<(Rat, Rat), Rat>,
}

impl TwoVarSeries {
    pub fn new(trunc: Rat) -> Self {
        TwoVarSeries { trunc, terms: BTreeMap::new() }
    }

    pub fn one(trunc: Rat) -> Self {
        let mut s = Self::new(trunc);
        s.add_term(Rat::zero(), Rat::zero(), Rat::one());
        s
    }

    pub fn truncation(&self) -> &Rat {
        &self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rat, Rat), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Rat, z: &Rat) -> Rat {
        self.terms
            .get(&(t.clone(), z.clone()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, t: Rat, z: Rat, coef: Rat) {
        if coef.is_zero() || t >= self.trunc {
            return;
        }
        match self.terms.entry((t, z)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn min_bound(&self) -> Rat {
        self.terms
            .keys()
            .next()
            .map(|(t, _)| t.clone())
            .unwrap_or_else(|| self.trunc.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::new(self.trunc.clone().min(other.trunc.clone()));
        for ((t, z), c) in &self.terms {
            out.add_term(t.clone(), z.clone(), c.clone());
        }
        for ((t, z), c) in &other.terms {
            out.add_term(t.clone(), z.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = Self::new(self.trunc.clone());
        for ((t, z), c) in &self.terms {
            out.add_term(t.clone(), z.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc.clone() + other.min_bound())
            .min(other.trunc.clone() + self.min_bound());
        let mut out = Self::new(trunc);
        for ((ta, za), ca) in &self.terms {
            if ta + other.min_bound() >= out.trunc {
                break;
            }
            for ((tb, zb), cb) in &other.terms {
                let t = ta + tb;
                if t >= out.trunc {
                    break;
                }
                out.add_term(t, za + zb, ca * cb);
            }
        }
        out
    }

    /// Multiply by `t^d`.
    pub fn shift_t(&self, d: &Rat) -> Self {
        let mut out = Self::new(&self.trunc + d);
        for ((t, z), c) in &self.terms {
            out.add_term(t + d, z.clone(), c.clone());
        }
        out
    }

    /// Substitute `z -> 1/z`.
    pub fn z_inverse(&self) -> Self {
        let mut out = Self::new(self.trunc.clone());
        for ((t, z), c) in &self.terms {
            out.add_term(t.clone(), -z, c.clone());
        }
        out
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let cutoff = self.trunc.clone().min(other.trunc.clone());
        for ((t, z), c) in &self.terms {
            if *t < cutoff && other.coeff(t, z) != *c {
                return false;
            }
        }
        for ((t, z), c) in &other.terms {
            if *t < cutoff && self.coeff(t, z) != *c {
                return false;
            }
        }
        true
    }
}

/// Lift a one-variable series to two variables at `z`-exponent 0.
pub fn lift(s: &PuiseuxSeries) -> TwoVarSeries {
    let mut out = TwoVarSeries::new(s.trunc.clone());
    for (e, c) in &s.terms {
        out.add_term(e.clone(), Rat::zero(), c.clone());
    }
    out
}

/// `chi_NS(t) = prod_{n >= 1} (1 + t^{n - 1/2}) / (1 - t^n)`, expanded
/// exactly below the truncation.
pub fn chi_ns(order: &Rat) -> PuiseuxSeries {
    let mut s = PuiseuxSeries::one(order.clone(), 2);
    let top: i64 = order.ceil().to_integer().try_into().expect("desk-scale order");
    for n in 1..=top.max(1) {
        // (1 + t^{n-1/2})
        let mut odd = PuiseuxSeries::one(order.clone(), 2);
        odd.add_term(rat(2 * n - 1, 2), Rat::one());
        // 1/(1 - t^n) = sum_k t^{nk}
        let mut geo = PuiseuxSeries::new(order.clone(), 2);
        let mut k = 0;
        loop {
            let e = rat_int(n * k);
            if e >= *order {
                break;
            }
            geo.add_term(e, Rat::one());
            k += 1;
        }
        s = s.mul(&odd).mul(&geo);
    }
    s
}

/// `theta(t,z) = sum_k t^{k^2/2} z^k`.
pub fn theta(order: &Rat) -> TwoVarSeries {
    let mut s = TwoVarSeries::new(order.clone());
    let mut k = 0i64;
    loop {
        let e = rat(k * k, 2);
        if e >= *order {
            break;
        }
        s.add_term(e.clone(), rat_int(k), Rat::one());
        if k > 0 {
            s.add_term(e, rat_int(-k), Rat::one());
        }
        k += 1;
    }
    s
}

/// `theta_{n,m}(t,z) = sum_{k in n/2m + Z} t^{m k^2} z^{m k}`, `m >= 1`.
pub fn theta_nm(n: i64, m: i64, order: &Rat) -> TwoVarSeries {
    assert!(m >= 1, "theta_nm needs m >= 1");
    let mut s = TwoVarSeries::new(order.clone());
    let base = rat(n, 2 * m);
    // The t-exponent m k^2 is a parabola in the integer offset j with
    // vertex at k = 0; walk outward from the integer nearest the vertex.
    let start: i64 = (-&base).floor().to_integer().try_into().expect("small index");
    let push = |j: i64, s: &mut TwoVarSeries| -> bool {
        let k = &base + rat_int(j);
        let e = rat_int(m) * &k * &k;
        if e >= *order {
            return false;
        }
        s.add_term(e, rat_int(m) * &k, Rat::one());
        true
    };
    let mut j = start;
    while push(j, &mut s) {
        j -= 1;
    }
    let mut j = start + 1;
    while push(j, &mut s) {
        j += 1;
    }
    s
}

/// Verify the Jacobi triple product identity
/// `sum_k t^{k^2/2} z^k = prod_{n>=1} (1 + t^{n-1/2} z)(1 + t^{n-1/2} z^{-1})(1 - t^n)`
/// term-for-term below the truncation.
pub fn jacobi_check(order: &Rat) -> bool {
    let lhs = theta(order);
    let rhs = jacobi_product(order, true);
    lhs.agrees_with(&rhs)
}

/// The triple-product right-hand side; with `complete = false` the
/// `(1 - t^n)` factor is dropped, which breaks the identity (used as the
/// mutation check).
pub fn jacobi_product(order: &Rat, complete: bool) -> TwoVarSeries {
    let mut s = TwoVarSeries::one(order.clone());
    let top: i64 = order.ceil().to_integer().try_into().expect("desk-scale order");
    for n in 1..=top.max(1) {
        let half_exp = rat(2 * n - 1, 2);
        let mut fz = TwoVarSeries::one(order.clone());
        fz.add_term(half_exp.clone(), Rat::one(), Rat::one());
        let mut fzi = TwoVarSeries::one(order.clone());
        fzi.add_term(half_exp, -Rat::one(), Rat::one());
        s = s.mul(&fz).mul(&fzi);
        if complete {
            let mut fe = TwoVarSeries::one(order.clone());
            fe.add_term(rat_int(n), Rat::zero(), -Rat::one());
            s = s.mul(&fe);
        }
    }
    s
}

/// `alpha_pq^m(n) = [2m(m+2)n - (m+2)p + mq]^2 / (8m(m+2))`.
/// Negative `p` selects the `-p` branch.
pub fn alpha(m: i64, p: i64, q: i64, n: i64) -> Rat {
    assert!(m >= 1);
    let a = 2 * m * (m + 2) * n - (m + 2) * p + m * q;
    rat(a * a, 8 * m * (m + 2))
}

/// `gamma_pq^m(n) = alpha_pq^m(n) - 4/(8m(m+2))`; `gamma(m,p,q,0) = h_pq^m`.
pub fn gamma(m: i64, p: i64, q: i64, n: i64) -> Rat {
    assert!(m >= 2);
    alpha(m, p, q, n) - rat(4, 8 * m * (m + 2))
}

/// `sum_{n in Z} t^{alpha_pq^m(n)}`, truncated.
pub fn alpha_sum(m: i64, p: i64, q: i64, order: &Rat) -> PuiseuxSeries {
    let mut s = PuiseuxSeries::new(order.clone(), 8 * m * (m + 2));
    // alpha is a parabola in n; walk outward from the vertex.
    let vertex = rat((m + 2) * p - m * q, 2 * m * (m + 2));
    let start: i64 = vertex.floor().to_integer().try_into().expect("small index");
    let push = |n: i64, s: &mut PuiseuxSeries| -> bool {
        let e = alpha(m, p, q, n);
        if e >= *order {
            return false;
        }
        s.add_term(e, Rat::one());
        true
    };
    let mut n = start;
    while push(n, &mut s) {
        n -= 1;
    }
    let mut n = start + 1;
    while push(n, &mut s) {
        n += 1;
    }
    s
}

/// The normalized numerator `Gamma_pq^m(t) t^{-h_pq^m} =
/// sum_n (t^{gamma_pq(n) - h} - t^{gamma_{-pq}(n) - h})`, truncated.
pub fn gamma_sum_normalized(m: i64, p: i64, q: i64, order: &Rat) -> PuiseuxSeries {
    let h = gamma(m, p, q, 0);
    let mut s = PuiseuxSeries::new(order.clone(), 8 * m * (m + 2));
    for (label, sign) in [(p, Rat::one()), (-p, -Rat::one())] {
        let vertex = rat((m + 2) * label - m * q, 2 * m * (m + 2));
        let start: i64 = vertex.floor().to_integer().try_into().expect("small index");
        let push = |n: i64, s: &mut PuiseuxSeries| -> bool {
            let e = gamma(m, label, q, n) - &h;
            if e >= *order {
                return false;
            }
            s.add_term(e, sign.clone());
            true
        };
        let mut n = start;
        while push(n, &mut s) {
            n -= 1;
        }
        let mut n = start + 1;
        while push(n, &mut s) {
            n += 1;
        }
    }
    s
}

/// A character `t^{prefactor} * normalized`, with `normalized` having
/// lowest exponent 0 (constant term 1 for a highest-weight character).
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSeries {
    pub prefactor_exponent: Rat,
    pub normalized: PuiseuxSeries,
}

impl CharacterSeries {
    pub fn to_json(&self) -> Value {
        json!({
            "prefactor": self.prefactor_exponent.to_string(),
            "terms": self.normalized.terms().map(|(e, c)| {
                json!({"exp": e.to_string(), "coef": c.to_string()})
            }).collect::<Vec<_>>(),
        })
    }
}

/// Errors from character and coset computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSeriesError {
    BadLabel { m: i64, p: i64, q: i64 },
    BadCosetPair { p: i64, m: i64 },
}

impl fmt::Display for QSeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSeriesError::BadLabel { m, p, q } => {
                write!(f, "({m},{p},{q}) is not a discrete-series label")
            }
            QSeriesError::BadCosetPair { p, m } => {
                write!(f, "coset pair needs p = 2j+1 <= m-1 = {}, got p = {p}", m - 1)
            }
        }
    }
}

impl std::error::Error for QSeriesError {}

/// The character of the level-`(m,p,q)` multiplicity space (equally, of
/// the discrete-series representation): prefactor `h_pq^m - c_m/24`,
/// normalized series `chi_NS(t) * Gamma_pq^m(t) t^{-h}`.
pub fn mult_character(m: i64, p: i64, q: i64, order: &Rat) -> Result<CharacterSeries, QSeriesError> {
    if !valid_discrete_label(m, p, q) {
        return Err(QSeriesError::BadLabel { m, p, q });
    }
    let h = h_from_m_int(m, p, q);
    let c = c_from_m_int(m);
    let prefactor = h - c / rat_int(24);
    let normalized = chi_ns(order).mul(&gamma_sum_normalized(m, p, q, order));
    debug_assert!(normalized.coeff(&Rat::zero()).is_one());
    Ok(CharacterSeries { prefactor_exponent: prefactor, normalized })
}

/// For each half-integer level `n <= max_level`, the rank of the Gram
/// matrix at `(c_m, h_pq^m)` must equal the character coefficient at
/// exponent `n`.
pub fn rank_character_crosscheck(
    m: i64,
    p: i64,
    q: i64,
    max_level: HalfInt,
) -> Result<bool, QSeriesError> {
    assert!(
        max_level <= HalfInt::from_int(3),
        "rank/character crosscheck is cost-guarded to levels <= 3"
    );
    let order = max_level.to_rat() + rat(1, 2);
    let ch = mult_character(m, p, q, &order)?;
    let module = VermaModule::point(c_from_m_int(m), h_from_m_int(m, p, q));
    let mut t = 0;
    while t <= max_level.twice() {
        let n = HalfInt::from_twice(t);
        let gm = gram_matrix(&module, n);
        let (rank, _, _) = rank_kernel_signature(&gm);
        if rat_int(rank as i64) != ch.normalized.coeff(&n.to_rat()) {
            return Ok(false);
        }
        t += 1;
    }
    Ok(true)
}

/// Verify the product formula
/// `theta * theta_{p,m} = sum_{0 <= q < 2(m+2), q = p mod 2}
///  (sum_n t^{alpha_pq^m(n)}) theta_{q,m+2}` term-for-term.
pub fn product_formula_check(p: i64, m: i64, order: &Rat) -> bool {
    assert!(m >= 1 && (0..2 * m).contains(&p));
    let lhs = theta(order).mul(&theta_nm(p, m, order));
    let mut rhs = TwoVarSeries::new(order.clone());
    let mut q = p.rem_euclid(2);
    while q < 2 * (m + 2) {
        let coeff = lift(&alpha_sum(m, p, q, order));
        rhs = rhs.add(&coeff.mul(&theta_nm(q, m + 2, order)));
        q += 2;
    }
    lhs.agrees_with(&rhs)
}

/// Verify the denominator-free tensor decomposition identity for the pair
/// `(j, ell)`: with `p = 2j+1`, `m = ell+2`,
///
/// ```text
/// t^{-1/16} chi_NS theta (theta_{p,m} - theta_{-p,m})
///   = sum_{1 <= q <= m+1, q = p mod 2} F_pq^m (theta_{q,m+2} - theta_{-q,m+2})
/// ```
///
/// where `F_pq^m = t^{-1/16} chi_NS sum_n (t^{alpha_pq(n)} - t^{alpha_{-p,q}(n)})`.
/// Both sides are multiplied through by the Weyl-Kac denominator, which
/// cancels, so no series division occurs.
pub fn coset_identity_check(j: HalfInt, ell: i64, order: &Rat) -> Result<bool, QSeriesError> {
    assert!(!j.is_negative() && ell >= 0);
    let p = j.twice() + 1;
    let m = ell + 2;
    if p > m - 1 {
        return Err(QSeriesError::BadCosetPair { p, m });
    }
    let shift = rat(-1, 16);
    let chi = chi_ns(order);
    let lhs = lift(&chi)
        .mul(&theta(order))
        .mul(&theta_nm(p, m, order).sub(&theta_nm(-p, m, order)))
        .shift_t(&shift);
    let mut rhs = TwoVarSeries::new(order + &shift);
    let mut q = if p % 2 == 0 { 2 } else { 1 };
    while q <= m + 1 {
        let f = chi
            .mul(&alpha_sum(m, p, q, order).sub(&alpha_sum(m, -p, q, order)))
            .shift(&shift);
        rhs = rhs.add(&lift(&f).mul(&theta_nm(q, m + 2, order).sub(&theta_nm(-q, m + 2, order))));
        q += 2;
    }
    Ok(lhs.agrees_with(&rhs))
}

/// Verify the free-fermion decomposition
/// `t^{-1/16} chi_NS theta (theta_{1,2} - theta_{-1,2})
///  = (theta_{1,4} - theta_{-1,4}) + (theta_{3,4} - theta_{-3,4})`.
pub fn frenkel_check(order: &Rat) -> bool {
    let lhs = lift(&chi_ns(order))
        .mul(&theta(order))
        .mul(&theta_nm(1, 2, order).sub(&theta_nm(-1, 2, order)))
        .shift_t(&rat(-1, 16));
    let rhs = theta_nm(1, 4, order)
        .sub(&theta_nm(-1, 4, order))
        .add(&theta_nm(3, 4, order).sub(&theta_nm(-3, 4, order)));
    lhs.agrees_with(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsalgebra::dimension_d;

    fn half(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn chi_ns_low_coefficients() {
        let s = chi_ns(&rat(9, 2));
        let expect = [
            (rat_int(0), 1),
            (rat(1, 2), 1),
            (rat_int(1), 1),
            (rat(3, 2), 2),
            (rat_int(2), 3),
            (rat(5, 2), 4),
            (rat_int(3), 5),
            (rat(7, 2), 7),
            (rat_int(4), 10),
        ];
        for (e, c) in expect {
            assert_eq!(s.coeff(&e), rat_int(c), "coefficient at {e}");
        }
    }

    #[test]
    fn chi_ns_tiny_order() {
        let s = chi_ns(&rat(1, 2));
        assert_eq!(s.terms().count(), 1);
        assert_eq!(s.coeff(&Rat::zero()), Rat::one());
    }

    #[test]
    fn chi_ns_counts_pbw_monomials() {
        let s = chi_ns(&rat(21, 2));
        let mut t = 0;
        while t <= 20 {
            let n = half(t);
            assert_eq!(
                s.coeff(&n.to_rat()),
                rat_int(dimension_d(n) as i64),
                "chi_NS coefficient vs d({n})"
            );
            t += 1;
        }
    }

    #[test]
    fn theta_lowest_terms() {
        let s = theta(&rat_int(3));
        assert_eq!(s.coeff(&rat_int(0), &rat_int(0)), rat_int(1));
        assert_eq!(s.coeff(&rat(1, 2), &rat_int(1)), rat_int(1));
        assert_eq!(s.coeff(&rat(1, 2), &rat_int(-1)), rat_int(1));
        assert_eq!(s.coeff(&rat_int(2), &rat_int(2)), rat_int(1));
        assert_eq!(s.coeff(&rat_int(2), &rat_int(-2)), rat_int(1));
        assert_eq!(s.terms().count(), 5);
    }

    #[test]
    fn theta_nm_lowest_terms() {
        let s = theta_nm(1, 2, &rat_int(2));
        assert_eq!(s.coeff(&rat(1, 8), &rat(1, 2)), rat_int(1));
        assert_eq!(s.coeff(&rat(9, 8), &rat(-3, 2)), rat_int(1));
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn theta_nm_period_and_reflection() {
        let order = rat_int(6);
        for m in 1..=4 {
            for n in -3..=7 {
                assert_eq!(theta_nm(n + 2 * m, m, &order), theta_nm(n, m, &order));
                assert_eq!(theta_nm(-n, m, &order), theta_nm(n, m, &order).z_inverse());
            }
        }
        // The folding used by the coset sum.
        for q in 1..=4 {
            assert_eq!(theta_nm(2 * 6 - q, 6, &order), theta_nm(-q, 6, &order));
        }
    }

    #[test]
    fn jacobi_triple_product() {
        assert!(jacobi_check(&rat_int(10)));
        assert!(jacobi_check(&rat(1, 2)));
        // Dropping the (1 - t^n) factors breaks it.
        assert!(!theta(&rat_int(4)).agrees_with(&jacobi_product(&rat_int(4), false)));
    }

    #[test]
    fn alpha_gamma_examples() {
        assert_eq!(gamma(3, 1, 3, 0), rat(1, 10));
        assert_eq!(gamma(3, -1, 3, 0), rat(8, 5));
        assert_eq!(gamma(3, -1, 3, -1), rat(21, 10));
        assert_eq!(gamma(3, -1, 3, 0) - gamma(3, 1, 3, 0), rat(3, 2));
        assert_eq!(alpha(3, 1, 3, 0) - gamma(3, 1, 3, 0), rat(4, 120));
    }

    #[test]
    fn gamma_matches_curve_data() {
        for m in 2..=6 {
            for p in 1..=m - 1 {
                for q in 1..=m + 1 {
                    if (p - q) % 2 != 0 {
                        continue;
                    }
                    assert_eq!(gamma(m, p, q, 0), h_from_m_int(m, p, q));
                }
            }
        }
    }

    #[test]
    fn product_formula_examples() {
        let order = rat_int(6);
        assert!(product_formula_check(1, 2, &order));
        assert!(product_formula_check(1, 3, &order));
        // Mutating alpha (dropping the -(m+2)p term) breaks the lowest term.
        let lhs = theta(&order).mul(&theta_nm(1, 2, &order));
        let mut rhs = TwoVarSeries::new(order.clone());
        let mut q = 1;
        while q < 8 {
            let mut bad = PuiseuxSeries::new(order.clone(), 64);
            for n in -6..=6 {
                let a = 2 * 8 * n + 2 * q;
                bad.add_term(rat(a * a, 64), Rat::one());
            }
            rhs = rhs.add(&lift(&bad).mul(&theta_nm(q, 4, &order)));
            q += 2;
        }
        assert!(!lhs.agrees_with(&rhs));
    }

    #[test]
    fn mult_character_3_1_3() {
        let ch = mult_character(3, 1, 3, &rat(7, 2)).unwrap();
        assert_eq!(ch.prefactor_exponent, rat(1, 10) - rat(7, 240));
        let expect = [
            (rat_int(0), 1),
            (rat(1, 2), 1),
            (rat_int(1), 1),
            (rat(3, 2), 1),
            (rat_int(2), 1),
            (rat(5, 2), 2),
            (rat_int(3), 2),
        ];
        for (e, c) in expect {
            assert_eq!(ch.normalized.coeff(&e), rat_int(c), "coefficient at {e}");
        }
    }

    #[test]
    fn mult_character_trivial_rep() {
        let ch = mult_character(2, 1, 1, &rat_int(2)).unwrap();
        for (e, c) in [
            (rat_int(0), 1),
            (rat(1, 2), 0),
            (rat_int(1), 0),
            (rat(3, 2), 0),
        ] {
            assert_eq!(ch.normalized.coeff(&e), rat_int(c), "coefficient at {e}");
        }
        assert!(mult_character(3, 1, 2, &rat_int(2)).is_err());
    }

    #[test]
    fn gamma_numerator_leading_terms() {
        // Gamma_pq^m t^{-h} = 1 - t^{pq/2} - t^{p'q'/2} + higher, all labels m <= 6.
        for m in 2..=6i64 {
            for p in 1..=m - 1 {
                for q in 1..=m + 1 {
                    if (p - q) % 2 != 0 {
                        continue;
                    }
                    let (pp, qp) = (m - p, m + 2 - q);
                    let lo = rat(p * q, 2).min(rat(pp * qp, 2));
                    let hi = rat(p * q, 2).max(rat(pp * qp, 2));
                    let order = &hi + rat(1, 2);
                    let g = gamma_sum_normalized(m, p, q, &order);
                    let lead: Vec<(Rat, Rat)> =
                        g.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
                    let expect = if lo == hi {
                        vec![(Rat::zero(), rat_int(1)), (lo.clone(), rat_int(-2))]
                    } else {
                        vec![
                            (Rat::zero(), rat_int(1)),
                            (lo.clone(), rat_int(-1)),
                            (hi.clone(), rat_int(-1)),
                        ]
                    };
                    assert_eq!(lead, expect, "leading numerator terms for ({m},{p},{q})");
                }
            }
        }
    }

    #[test]
    fn f_coefficients_vanish_at_the_walls() {
        // F_{p,0}^m = F_{p,m+2}^m = 0: the two alpha branches coincide.
        let order = rat_int(12);
        for m in 2..=4 {
            for p in 1..=m - 1 {
                assert!(alpha_sum(m, p, 0, &order)
                    .sub(&alpha_sum(m, -p, 0, &order))
                    .is_zero());
                assert!(alpha_sum(m, p, m + 2, &order)
                    .sub(&alpha_sum(m, -p, m + 2, &order))
                    .is_zero());
            }
        }
    }

    #[test]
    fn rank_character_crosscheck_examples() {
        assert_eq!(rank_character_crosscheck(3, 1, 3, half(6)), Ok(true));
        assert_eq!(rank_character_crosscheck(2, 1, 1, half(3)), Ok(true));
        assert_eq!(rank_character_crosscheck(2, 1, 3, half(3)), Ok(true));
    }

    #[test]
    fn coset_identity_examples() {
        let order = rat_int(5);
        assert!(coset_identity_check(HalfInt::ZERO, 0, &order).unwrap());
        assert!(coset_identity_check(HalfInt::HALF, 1, &order).unwrap());
        assert!(coset_identity_check(HalfInt::ZERO, 2, &order).unwrap());
        assert!(coset_identity_check(HalfInt::ONE, 1, &order).is_err());

        // Swapping p -> -p in one branch of F breaks the identity.
        let (p, m) = (1, 2);
        let chi = chi_ns(&order);
        let shift = rat(-1, 16);
        let lhs = lift(&chi)
            .mul(&theta(&order))
            .mul(&theta_nm(p, m, &order).sub(&theta_nm(-p, m, &order)))
            .shift_t(&shift);
        let mut rhs = TwoVarSeries::new(&order + &shift);
        let mut q = 1;
        while q <= m + 1 {
            let f = chi
                .mul(&alpha_sum(m, -p, q, &order).sub(&alpha_sum(m, p, q, &order)))
                .shift(&shift);
            rhs = rhs.add(&lift(&f).mul(&theta_nm(q, m + 2, &order).sub(&theta_nm(-q, m + 2, &order))));
            q += 2;
        }
        assert!(!lhs.agrees_with(&rhs));
    }

    #[test]
    fn frenkel_identity() {
        assert!(frenkel_check(&rat_int(6)));
        assert!(frenkel_check(&rat(1, 2)));
        // Keeping only the (1,4) pair on the right breaks it.
        let order = rat_int(3);
        let lhs = lift(&chi_ns(&order))
            .mul(&theta(&order))
            .mul(&theta_nm(1, 2, &order).sub(&theta_nm(-1, 2, &order)))
            .shift_t(&rat(-1, 16));
        let rhs = theta_nm(1, 4, &order).sub(&theta_nm(-1, 4, &order));
        assert!(!lhs.agrees_with(&rhs));
    }

    #[test]
    fn truncation_propagates_through_products() {
        let a = chi_ns(&rat_int(5));
        let b = chi_ns(&rat_int(3));
        let p = a.mul(&b);
        assert_eq!(p.truncation(), &rat_int(3));
        // Against the same product computed at full precision.
        let full = chi_ns(&rat_int(5)).mul(&chi_ns(&rat_int(5)));
        assert!(p.agrees_with(&full));
        // Shifts move the truncation along with the exponents.
        let s = a.shift(&rat(-1, 16));
        assert_eq!(s.truncation(), &(rat_int(5) + rat(-1, 16)));
    }

    #[test]
    #[should_panic(expected = "violates series modulus")]
    fn modulus_violations_are_caught() {
        let mut s = PuiseuxSeries::new(rat_int(2), 2);
        s.add_term(rat(1, 3), Rat::one());
    }
}
