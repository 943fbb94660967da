//! The unitarity classification as executable combinatorics: enumeration
//! of the discrete series, vanishing-curve intersections and first
//! intersectors, and an exact `(c,h)` classifier with ghost witnesses.
//!
//! For `c >= 3/2`, `h >= 0` the contravariant form is positive.  For
//! `0 <= c < 3/2` the only unitary points are the discrete series
//! `(c_m, h_pq^m)` with integers `m >= 2`, `1 <= p <= m-1`,
//! `1 <= q <= m+1`, `p = q mod 2`; everywhere else the module contains a
//! ghost (a vector of negative norm).  The classifier decides membership
//! exactly (inverting `m(m+2) = 24/(3-2c)` with an exact rational square
//! root) and otherwise searches levels for negative inertia, returning an
//! exact witness vector or an honest "undetermined up to level" verdict:
//! the ghost guaranteed by the theory can live above any fixed level bound.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exactnum::{rat, rat_int, rat_sqrt, HalfInt, Rat};
use crate::gramkac::{
    c_from_m, c_from_m_int, congruence_diagonalize, gram_matrix, h_from_m, h_from_m_int,
    valid_discrete_label, vector_to_json,
};
use crate::nsalgebra::{PbwMonomial, VermaModule, VermaVector};

/// A unitary point of the discrete series with its exact `(c,h)` and the
/// dual label `(p', q') = (m-p, m+2-q)`, which parametrizes the same point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSeriesPoint {
    pub m: i64,
    pub p: i64,
    pub q: i64,
    pub p_prime: i64,
    pub q_prime: i64,
    pub c: Rat,
    pub h: Rat,
}

/// Errors from discrete-series and intersection combinatorics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FqsError {
    BadLabel { m: i64, p: i64, q: i64 },
    BadCurve { p: i64, q: i64 },
    SameCurve { p: i64, q: i64 },
}

impl fmt::Display for FqsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FqsError::BadLabel { m, p, q } => {
                write!(f, "({m},{p},{q}) is not a discrete-series label")
            }
            FqsError::BadCurve { p, q } => {
                write!(f, "({p},{q}) is not a curve label (need p,q >= 1, p = q mod 2)")
            }
            FqsError::SameCurve { p, q } => write!(f, "({p},{q}) intersected with itself"),
        }
    }
}

impl std::error::Error for FqsError {}

impl DiscreteSeriesPoint {
    pub fn new(m: i64, p: i64, q: i64) -> Result<Self, FqsError> {
        if !valid_discrete_label(m, p, q) {
            return Err(FqsError::BadLabel { m, p, q });
        }
        Ok(DiscreteSeriesPoint {
            m,
            p,
            q,
            p_prime: m - p,
            q_prime: m + 2 - q,
            c: c_from_m_int(m),
            h: h_from_m_int(m, p, q),
        })
    }

    /// The dual label `(m-p, m+2-q)`, the same `(c,h)` point.
    pub fn dual(&self) -> Self {
        DiscreteSeriesPoint::new(self.m, self.p_prime, self.q_prime)
            .expect("dual of a valid label is valid")
    }

    /// Parity forbids `q = p + 1`, so exactly one of a label and its dual
    /// has `q >= p + 2`; that one is the canonical representative.
    pub fn is_canonical(&self) -> bool {
        self.q - self.p >= 2
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.dual()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "p": self.p,
            "q": self.q,
            "pprime": self.p_prime,
            "qprime": self.q_prime,
            "c": self.c.to_string(),
            "h": self.h.to_string(),
        })
    }
}

/// All discrete-series labels for `2 <= m <= m_max`; with `dedupe`, one
/// representative per `(c,h)` point via the `(p,q) <-> (m-p, m+2-q)`
/// duality.
pub fn discrete_series(m_max: i64, dedupe: bool) -> Vec<DiscreteSeriesPoint> {
    let mut out = Vec::new();
    for m in 2..=m_max {
        for p in 1..=m - 1 {
            for q in 1..=m + 1 {
                if (p - q) % 2 != 0 {
                    continue;
                }
                let pt = DiscreteSeriesPoint::new(m, p, q).expect("enumerated label");
                if !dedupe || pt.is_canonical() {
                    out.push(pt);
                }
            }
        }
    }
    out
}

/// Intersection data of two vanishing curves: the (at most two) rational
/// parameter values `m` at which `h_pq^m = h_{p'q'}^m`.  A branch is
/// `None` when its denominator vanishes (no solution on that branch) or
/// when the solution hits a parametrization pole `m in {0, -2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub first: (i64, i64),
    pub second: (i64, i64),
    pub m_plus: Option<Rat>,
    pub m_minus: Option<Rat>,
}

/// Solve `[(m+2)p - mq]^2 = [(m+2)p' - mq']^2` exactly:
/// `m_{+-} = 2(-+p' - p) / ((p-q) +- (p'-q'))`.
pub fn curve_intersections(
    p: i64,
    q: i64,
    p2: i64,
    q2: i64,
) -> Result<Intersection, FqsError> {
    for (a, b) in [(p, q), (p2, q2)] {
        if a < 1 || b < 1 || (a - b) % 2 != 0 {
            return Err(FqsError::BadCurve { p: a, q: b });
        }
    }
    if (p, q) == (p2, q2) {
        return Err(FqsError::SameCurve { p, q });
    }
    let branch = |numer: i64, denom: i64| -> Option<Rat> {
        if denom == 0 {
            return None;
        }
        let m = rat(numer, denom);
        if m.is_zero() || m == rat_int(-2) {
            return None;
        }
        debug_assert_eq!(
            h_from_m(&m, p, q).unwrap(),
            h_from_m(&m, p2, q2).unwrap(),
            "intersection parameter must equalize the curves"
        );
        Some(m)
    };
    Ok(Intersection {
        first: (p, q),
        second: (p2, q2),
        m_plus: branch(2 * (-p2 - p), (p - q) + (p2 - q2)),
        m_minus: branch(2 * (p2 - p), (p - q) - (p2 - q2)),
    })
}

/// `kappa = 1` if `q < p + 1`, `0` if `q > p + 1`; `q = p + 1` cannot
/// occur for equal-parity labels, so the gap is asserted, not patched.
pub fn kappa(p: i64, q: i64) -> i64 {
    assert_ne!(q, p + 1, "q = p + 1 is excluded by parity");
    if q < p + 1 {
        1
    } else {
        0
    }
}

/// The first intersectors of the curve `(p,q)`: the curves
/// `(q-1+k, p+1+k)` for `k >= kappa`, meeting it at `m = p+q+k-1`.
pub fn first_intersectors(p: i64, q: i64, k_max: i64) -> Vec<(i64, i64, i64)> {
    let k0 = kappa(p, q);
    (k0..=k_max)
        .map(|k| (q - 1 + k, p + 1 + k, p + q + k - 1))
        .collect()
}

/// The set of all first-intersection points with parameter `m <= m_max`
/// equals the discrete-series point set, exactly.
pub fn first_intersections_equal_series(m_max: i64) -> bool {
    first_intersection_points(m_max, 0) == discrete_point_set(m_max)
}

/// First-intersection `(c,h)` points with `m <= m_max`; `k_shift` perturbs
/// the start of the `k` range (0 is the true rule; 1 drops the earliest
/// intersection on every curve, breaking the set identity).
pub fn first_intersection_points(m_max: i64, k_shift: i64) -> BTreeSet<(Rat, Rat)> {
    let mut set = BTreeSet::new();
    for p in 1..=m_max + 1 {
        for q in 1..=m_max + 1 {
            if (p - q) % 2 != 0 {
                continue;
            }
            let mut k = kappa(p, q) + k_shift;
            loop {
                let m = p + q + k - 1;
                if m > m_max {
                    break;
                }
                if m >= 2 {
                    set.insert((c_from_m_int(m), h_from_m_int(m, p, q)));
                }
                k += 1;
            }
        }
    }
    set
}

fn discrete_point_set(m_max: i64) -> BTreeSet<(Rat, Rat)> {
    discrete_series(m_max, false)
        .into_iter()
        .map(|pt| (pt.c, pt.h))
        .collect()
}

/// The classifier's verdict.  A `Ghost` carries an exact witness vector
/// whose norm under the contravariant form is the reported negative
/// rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    UnitaryContinuum,
    UnitaryDiscrete(DiscreteSeriesPoint),
    Ghost {
        level: HalfInt,
        witness: VermaVector<Rat>,
        norm: Rat,
    },
    UndeterminedUpTo(HalfInt),
}

/// Classify a rational `(c, h)`.
///
/// - `h < 0`: ghost `G_{-1/2} Omega` of norm `2h` at level 1/2.
/// - `c < 0`: ghost `L_{-n} Omega` of norm `2nh + c n(n^2-1)/12 < 0` at the
///   first such integer level `n`.
/// - `c >= 3/2, h >= 0`: the unitary continuum.
/// - `0 <= c < 3/2`: invert `m(m+2) = 24/(3-2c)` exactly; an integer
///   `m >= 2` with a matching label gives the discrete series.  Otherwise
///   search levels `1/2 ... max_level` for negative inertia and return the
///   first exact witness, or report the bound honestly.
pub fn classify(c: &Rat, h: &Rat, max_level: HalfInt) -> Classification {
    assert!(max_level >= HalfInt::HALF, "classification needs max_level >= 1/2");
    if h.is_negative() {
        let witness: VermaVector<Rat> =
            VermaVector::monomial(PbwMonomial::new(vec![HalfInt::HALF], vec![]));
        return Classification::Ghost {
            level: HalfInt::HALF,
            witness,
            norm: rat_int(2) * h,
        };
    }
    if c.is_negative() {
        let mut n = 1i64;
        loop {
            let norm = rat_int(2 * n) * h + c * rat(n * (n * n - 1), 12);
            if norm.is_negative() {
                let witness: VermaVector<Rat> =
                    VermaVector::monomial(PbwMonomial::new(vec![], vec![n]));
                return Classification::Ghost { level: HalfInt::from_int(n), witness, norm };
            }
            n += 1;
        }
    }
    if *c >= rat(3, 2) {
        return Classification::UnitaryContinuum;
    }
    if let Some(pt) = match_discrete_point(c, h) {
        return Classification::UnitaryDiscrete(pt);
    }
    let module = VermaModule::point(c.clone(), h.clone());
    let mut t = 1;
    while t <= max_level.twice() {
        let level = HalfInt::from_twice(t);
        let cong = congruence_diagonalize(&gram_matrix(&module, level));
        if let Some((witness, norm)) = cong.negative_vector() {
            return Classification::Ghost {
                level,
                witness: witness.clone(),
                norm: norm.clone(),
            };
        }
        t += 1;
    }
    Classification::UndeterminedUpTo(max_level)
}

/// Exact inversion of the central charge onto the discrete series: for
/// `0 <= c < 3/2` solve `m(m+2) = 24/(3-2c)`, require an integer `m >= 2`
/// and a label with `h = h_pq^m`, and return the canonical representative.
pub fn match_discrete_point(c: &Rat, h: &Rat) -> Option<DiscreteSeriesPoint> {
    // m = -1 + sqrt(1 + 24/(3-2c))
    let denom = rat_int(3) - rat_int(2) * c;
    if denom.is_zero() || !denom.is_positive() {
        return None;
    }
    let disc = Rat::one() + rat_int(24) / denom;
    let root = rat_sqrt(&disc)?;
    let m_rat = root - Rat::one();
    if !m_rat.is_integer() {
        return None;
    }
    let m: i64 = m_rat.to_integer().try_into().ok()?;
    if m < 2 || c_from_m(&m_rat).ok()? != *c {
        return None;
    }
    for p in 1..=m - 1 {
        for q in 1..=m + 1 {
            if (p - q) % 2 == 0 && h_from_m_int(m, p, q) == *h {
                let pt = DiscreteSeriesPoint::new(m, p, q).expect("matched label");
                return Some(pt.canonical());
            }
        }
    }
    None
}

/// Verify, exhaustively over labels with `m <= m_max`, the character-gap
/// inequalities: `h_pq^m + max(pq/2, p'q'/2) > m^2/8` and
/// `h_rs^m <= m(m-2)/8`.
pub fn wassermann_inequalities(m_max: i64) -> bool {
    for pt in discrete_series(m_max, false) {
        let gap = rat(pt.p * pt.q, 2).max(rat(pt.p_prime * pt.q_prime, 2));
        if pt.h.clone() + gap <= rat(pt.m * pt.m, 8) {
            return false;
        }
        if pt.h > rat(pt.m * (pt.m - 2), 8) {
            return false;
        }
    }
    true
}

/// JSON verdict in the CLI format.
pub fn classification_to_json(c: &Rat, h: &Rat, verdict: &Classification) -> Value {
    match verdict {
        Classification::UnitaryContinuum => json!({
            "c": c.to_string(),
            "h": h.to_string(),
            "verdict": "unitary-continuum",
        }),
        Classification::UnitaryDiscrete(pt) => json!({
            "c": c.to_string(),
            "h": h.to_string(),
            "verdict": "unitary-discrete",
            "m": pt.m,
            "p": pt.p,
            "q": pt.q,
        }),
        Classification::Ghost { level, witness, norm } => json!({
            "c": c.to_string(),
            "h": h.to_string(),
            "verdict": "ghost",
            "level": level.to_string(),
            "witness": vector_to_json(witness),
            "norm": norm.to_string(),
        }),
        Classification::UndeterminedUpTo(level) => json!({
            "c": c.to_string(),
            "h": h.to_string(),
            "verdict": "undetermined-up-to",
            "level": level.to_string(),
        }),
    }
}
