//! Gram matrices of the contravariant form, exact determinants, rank /
//! inertia / kernel by symmetric congruence, the vanishing polynomials
//! `phi_pq`, and verification of the Kac determinant factorization
//!
//! ```text
//! det_n(c,h) = A_n  prod_{0 < pq/2 <= n, p == q mod 2} (h - h_pq^c)^{d(n - pq/2)}
//!            = A_n  prod_{p <= q}                      phi_pq(c,h)^{d(n - pq/2)}
//! ```
//!
//! with `A_n > 0` independent of `c` and `h`.
//!
//! The individual roots `h_pq^c` for `p != q` are algebraic in `c`, so they
//! are never materialized; only the symmetric polynomial `phi_pq` and the
//! exact points `(c_m, h_pq^m)` of the rational parametrization
//!
//! ```text
//! c_m = (3/2)(1 - 8/(m(m+2))),     h_pq^m = (((m+2)p - mq)^2 - 4) / (8m(m+2))
//! ```
//!
//! appear.  All arithmetic stays in the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exactnum::{rat, rat_int, HalfInt, PolyCH, Rat, Scalar};
use crate::nsalgebra::{enumerate_basis, dimension_d, Ambient, PbwMonomial, VermaModule, VermaVector};

/// The symmetric matrix of the contravariant form on one level eigenspace,
/// with its deterministic basis list.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<S: Scalar> {
    pub level: HalfInt,
    pub basis: Vec<PbwMonomial>,
    pub entries: Vec<Vec<S>>,
}

/// Compute the Gram matrix at level `n`.  Entries are independent pure
/// computations; only the upper triangle is evaluated and mirrored.
pub fn gram_matrix<A: Ambient>(module: &VermaModule<A>, n: HalfInt) -> GramMatrix<A::S> {
    let basis = enumerate_basis(n);
    let d = basis.len();
    let mut entries = vec![vec![A::S::zero(); d]; d];
    for i in 0..d {
        for j in i..d {
            let v = module.inner_product(&basis[i], &basis[j]);
            entries[i][j] = v.clone();
            entries[j][i] = v;
        }
    }
    GramMatrix { level: n, basis, entries }
}

/// Exact determinant by fraction-free (Bareiss) elimination.  Every
/// division performed is exact in the coefficient ring, so the routine
/// works unchanged over the rationals and over `PolyCH`.
pub fn det<S: Scalar>(m: &GramMatrix<S>) -> S {
    bareiss_det(m.entries.clone())
}

pub fn bareiss_det<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    if n == 0 {
        return S::one();
    }
    let mut sign_flip = false;
    let mut prev = S::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return S::zero();
            };
            m.swap(k, r);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = S::diff(
                    &S::prod(&m[k][k], &m[i][j]),
                    &S::prod(&m[i][k], &m[k][j]),
                );
                m[i][j] = S::exact_div(&num, &prev);
            }
            m[i][k] = S::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        S::negate(&d)
    } else {
        d
    }
}

/// The result of exact symmetric congruence diagonalization of a Gram
/// matrix: a basis of the eigenspace together with the norm of each basis
/// vector.  Zero norms span the kernel; by Sylvester's law the sign counts
/// are the inertia of the form.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub level: HalfInt,
    /// `(vector, (vector, vector))` pairs in elimination order.
    pub diag: Vec<(VermaVector<Rat>, Rat)>,
}

impl Congruence {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|(_, n)| !n.is_zero()).count()
    }

    /// `(n_plus, n_minus, n_zero)`.
    pub fn signature(&self) -> (usize, usize, usize) {
        let mut sig = (0, 0, 0);
        for (_, n) in &self.diag {
            if n.is_zero() {
                sig.2 += 1;
            } else if n.is_positive() {
                sig.0 += 1;
            } else {
                sig.1 += 1;
            }
        }
        sig
    }

    pub fn kernel(&self) -> Vec<&VermaVector<Rat>> {
        self.diag
            .iter()
            .filter(|(_, n)| n.is_zero())
            .map(|(v, _)| v)
            .collect()
    }

    /// A vector of negative norm, when one exists.
    pub fn negative_vector(&self) -> Option<(&VermaVector<Rat>, &Rat)> {
        self.diag
            .iter()
            .find(|(_, n)| n.is_negative())
            .map(|(v, n)| (v, n))
    }
}

/// Exact rank, kernel basis and signature of a point-mode Gram matrix by
/// symmetric congruence (simultaneous row and column) elimination with
/// diagonal pivoting.  When the remaining block has an all-zero diagonal
/// but a nonzero entry `a_ij`, the congruence `v_i += v_j` exposes the
/// pivot `2 a_ij`.
#[allow(clippy::needless_range_loop)] // loops touch two rows of one matrix
pub fn congruence_diagonalize(gm: &GramMatrix<Rat>) -> Congruence {
    let d = gm.basis.len();
    let mut a: Vec<Vec<Rat>> = gm.entries.clone();
    // Columns of `basis_change` express the working basis in the PBW basis.
    let mut basis_change: Vec<Vec<Rat>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    let mut active: Vec<usize> = (0..d).collect();
    let mut processed: Vec<usize> = Vec::new();

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let i = active.remove(pos);
            let pivot = a[i][i].clone();
            for &j in &active {
                if a[j][i].is_zero() {
                    continue;
                }
                let lambda = &a[j][i] / &pivot;
                // v_j <- v_j - lambda v_i, applied to rows and columns.
                for k in 0..d {
                    let t = &a[i][k] * &lambda;
                    a[j][k] -= t;
                }
                for row in a.iter_mut() {
                    let t = &row[i] * &lambda;
                    row[j] -= t;
                }
                for row in basis_change.iter_mut() {
                    let t = &row[i] * &lambda;
                    row[j] -= t;
                }
            }
            processed.push(i);
        } else if let Some((i, j)) = first_offdiag(&a, &active) {
            // v_i <- v_i + v_j
            for k in 0..d {
                let t = a[j][k].clone();
                a[i][k] += t;
            }
            for row in a.iter_mut() {
                let t = row[j].clone();
                row[i] += t;
            }
            for row in basis_change.iter_mut() {
                let t = row[j].clone();
                row[i] += t;
            }
        } else {
            // Remaining block is zero: everything left is kernel.
            processed.append(&mut active);
        }
    }

    let diag = processed
        .into_iter()
        .map(|i| {
            let mut v = VermaVector::zero();
            for (r, row) in basis_change.iter().enumerate() {
                v.add_term(gm.basis[r].clone(), row[i].clone());
            }
            (v, a[i][i].clone())
        })
        .collect();
    Congruence { level: gm.level, diag }
}

fn first_offdiag(a: &[Vec<Rat>], active: &[usize]) -> Option<(usize, usize)> {
    for &i in active {
        for &j in active {
            if i != j && !a[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rank, kernel basis and signature, as a single call.
pub fn rank_kernel_signature(
    gm: &GramMatrix<Rat>,
) -> (usize, Vec<VermaVector<Rat>>, (usize, usize, usize)) {
    let cong = congruence_diagonalize(gm);
    let kernel = cong.kernel().into_iter().cloned().collect();
    (cong.rank(), kernel, cong.signature())
}

/// Errors from curve data, Kac verification and kernel censuses.
#[derive(Clone, Debug, PartialEq)]
pub enum GramKacError {
    /// `p` and `q` must be positive of equal parity with `p <= q`.
    BadCurveLabel { p: i64, q: i64 },
    /// The parametrization has poles at `m = 0` and `m = -2`.
    PoleAtM(Rat),
    /// Not a discrete-series label.
    BadDiscreteLabel { m: i64, p: i64, q: i64 },
    /// Kernel census requested beyond `max(pq/2, p'q'/2)`.
    CensusLevelTooDeep { requested: HalfInt, bound: HalfInt },
    /// Symbolic determinants are limited to level 3.
    SymbolicLevelTooHigh(HalfInt),
    /// The factorization identity failed; carries a description of the residual.
    KacMismatch { level: HalfInt, residual: String },
}

impl fmt::Display for GramKacError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GramKacError::BadCurveLabel { p, q } => {
                write!(f, "invalid curve label ({p},{q}): need 0 < p <= q, p = q mod 2")
            }
            GramKacError::PoleAtM(m) => write!(f, "parametrization pole at m = {m}"),
            GramKacError::BadDiscreteLabel { m, p, q } => {
                write!(f, "({m},{p},{q}) is not a discrete-series label")
            }
            GramKacError::CensusLevelTooDeep { requested, bound } => {
                write!(f, "census level {requested} exceeds the two-singular-vector bound {bound}")
            }
            GramKacError::SymbolicLevelTooHigh(n) => {
                write!(f, "symbolic determinant at level {n} > 3 refused")
            }
            GramKacError::KacMismatch { level, residual } => {
                write!(f, "determinant factorization failed at level {level}: {residual}")
            }
        }
    }
}

impl std::error::Error for GramKacError {}

/// `c_m = (3/2)(1 - 8/(m(m+2)))`.
pub fn c_from_m(m: &Rat) -> Result<Rat, GramKacError> {
    let denom = m * (m + rat_int(2));
    if denom.is_zero() {
        return Err(GramKacError::PoleAtM(m.clone()));
    }
    Ok(rat(3, 2) * (Rat::one() - rat_int(8) / denom))
}

/// `h_pq^m = (((m+2)p - mq)^2 - 4) / (8 m (m+2))`.
pub fn h_from_m(m: &Rat, p: i64, q: i64) -> Result<Rat, GramKacError> {
    let denom = rat_int(8) * m * (m + rat_int(2));
    if denom.is_zero() {
        return Err(GramKacError::PoleAtM(m.clone()));
    }
    let a = (m + rat_int(2)) * rat_int(p) - m * rat_int(q);
    Ok((&a * &a - rat_int(4)) / denom)
}

pub fn c_from_m_int(m: i64) -> Rat {
    c_from_m(&rat_int(m)).expect("integer m outside the poles")
}

pub fn h_from_m_int(m: i64, p: i64, q: i64) -> Rat {
    h_from_m(&rat_int(m), p, q).expect("integer m outside the poles")
}

/// A vanishing curve `h = h_pq^c`, stored with `p <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveData {
    p: i64,
    q: i64,
}

impl CurveData {
    pub fn new(p: i64, q: i64) -> Result<Self, GramKacError> {
        if p < 1 || q < 1 || (p - q) % 2 != 0 {
            return Err(GramKacError::BadCurveLabel { p, q });
        }
        Ok(CurveData { p: p.min(q), q: p.max(q) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn c_at(&self, m: &Rat) -> Result<Rat, GramKacError> {
        c_from_m(m)
    }

    pub fn h_at(&self, m: &Rat) -> Result<Rat, GramKacError> {
        h_from_m(m, self.p, self.q)
    }

    pub fn phi(&self) -> PolyCH {
        phi(self.p, self.q).expect("validated label")
    }
}

/// The sum `h_pq^c + h_qp^c` as a polynomial in `c`:
/// `((p^2 + q^2 - 2)/16)(1 - 2c/3) + (p - q)^2 / 4`.
pub fn h_sum_rule(p: i64, q: i64) -> PolyCH {
    let u = PolyCH::constant(Rat::one()).sub(&PolyCH::var_c().scale(&rat(2, 3)));
    let mut out = u.scale(&rat(p * p + q * q - 2, 16));
    out.add_term(0, 0, rat((p - q) * (p - q), 4));
    out
}

/// A closed-form candidate for the product `h_pq^c * h_qp^c`:
/// `(1/256) [2(p-q)^2 - (1-2c/3)(pq-p-q-1)] [2(p-q)^2 - (1-2c/3)(pq+p+q+1)]`.
///
/// Retained only for the expected-discrepancy check: it disagrees with the
/// exact interpolated product already at `(p,q) = (1,3)`, so [`phi`] never
/// uses it.
pub fn product_closed_form(p: i64, q: i64) -> PolyCH {
    let u = PolyCH::constant(Rat::one()).sub(&PolyCH::var_c().scale(&rat(2, 3)));
    let sq = rat_int(2 * (p - q) * (p - q));
    let f1 = PolyCH::constant(sq.clone()).sub(&u.scale(&rat_int(p * q - p - q - 1)));
    let f2 = PolyCH::constant(sq).sub(&u.scale(&rat_int(p * q + p + q + 1)));
    f1.mul(&f2).scale(&rat(1, 256))
}

/// The product `h_pq^c * h_qp^c` as a polynomial in `c`, built by exact
/// quadratic interpolation through the points `(c_m, h_pq^m h_qp^m)` for
/// `m = 3, 4, 5` and validated on ten further integer values of `m`.
pub fn product_interpolated(p: i64, q: i64) -> PolyCH {
    let sample = |m: i64| -> (Rat, Rat) {
        let c = c_from_m_int(m);
        let y = h_from_m_int(m, p, q) * h_from_m_int(m, q, p);
        (c, y)
    };
    let nodes: Vec<(Rat, Rat)> = (3..=5).map(sample).collect();
    let mut poly = PolyCH::zero();
    for i in 0..nodes.len() {
        let (xi, yi) = &nodes[i];
        let mut term = PolyCH::constant(yi.clone());
        for (j, (xj, _)) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor = PolyCH::var_c().sub(&PolyCH::constant(xj.clone()));
            term = term.mul(&factor).scale(&(Rat::one() / (xi - xj)));
        }
        poly = poly.add(&term);
    }
    for m in 6..=15 {
        let (c, y) = sample(m);
        assert_eq!(
            poly.eval(&c, &Rat::zero()),
            y,
            "interpolated product fails validation at m = {m} for ({p},{q})"
        );
    }
    poly
}

/// The vanishing polynomial `phi_pq`:
/// `h - h_pp^c` for `p = q` (with `h_pp^c = (p^2-1)(3-2c)/48`), and
/// `h^2 - S(c) h + P(c)` for `p < q`, with `S` the sum rule and `P` the
/// interpolated product.
pub fn phi(p: i64, q: i64) -> Result<PolyCH, GramKacError> {
    if p < 1 || q < p || (p - q) % 2 != 0 {
        return Err(GramKacError::BadCurveLabel { p, q });
    }
    let h = PolyCH::var_h();
    if p == q {
        let mut root = PolyCH::constant(rat(3 * (p * p - 1), 48));
        root = root.sub(&PolyCH::var_c().scale(&rat(2 * (p * p - 1), 48)));
        Ok(h.sub(&root))
    } else {
        let s = h_sum_rule(p, q);
        let prod = product_interpolated(p, q);
        Ok(h.mul(&h).sub(&s.mul(&h)).add(&prod))
    }
}

/// The Kac factorization data at one level.
#[derive(Clone, Debug, PartialEq)]
pub struct KacFactorization {
    pub level: HalfInt,
    /// `(p, q, exponent)` over `p <= q`, `p = q mod 2`, `0 < pq/2 <= level`,
    /// with exponent `d(level - pq/2)`.
    pub factors: Vec<(i64, i64, usize)>,
    /// The constant `A_n > 0`.
    pub leading: Rat,
}

/// The factor list with exponents, without verifying anything.
pub fn kac_factors(n: HalfInt) -> Vec<(i64, i64, usize)> {
    let mut out = Vec::new();
    let two_n = n.twice();
    for p in 1..=two_n {
        for q in p..=two_n {
            if (q - p) % 2 != 0 || p * q > two_n {
                continue;
            }
            let rem = n - HalfInt::from_twice(p * q);
            out.push((p, q, dimension_d(rem)));
        }
    }
    out
}

/// The product `prod phi_pq^{d(n - pq/2)}`.
pub fn kac_product(n: HalfInt) -> PolyCH {
    let mut prod = PolyCH::one();
    for (p, q, e) in kac_factors(n) {
        prod = prod.mul(&phi(p, q).expect("factor labels are valid").pow(e as u32));
    }
    prod
}

/// The degree in `h` predicted for `det_n`: the sum of `d(n - pq/2)` over
/// all ordered pairs `p, q >= 1` of equal parity with `pq/2 <= n`.
pub fn predicted_h_degree(n: HalfInt) -> usize {
    let two_n = n.twice();
    let mut total = 0;
    for p in 1..=two_n {
        for q in 1..=two_n {
            if (q - p) % 2 == 0 && p * q <= two_n {
                total += dimension_d(n - HalfInt::from_twice(p * q));
            }
        }
    }
    total
}

/// Verification mode for the Kac determinant formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KacMode {
    /// Full polynomial identity `det_n = A_n prod`; levels up to 3 only.
    Symbolic,
    /// Degree-bounded identity testing on a rational grid; any tractable level.
    Pointwise,
}

/// Verify `det_n = A_n prod phi_pq^{d(n-pq/2)}` and return the
/// factorization with the computed `A_n`.
pub fn kac_verify(n: HalfInt, mode: KacMode) -> Result<KacFactorization, GramKacError> {
    let factors = kac_factors(n);
    let prod = kac_product(n);
    let leading = match mode {
        KacMode::Symbolic => {
            if n > HalfInt::from_int(3) {
                return Err(GramKacError::SymbolicLevelTooHigh(n));
            }
            let module = VermaModule::symbolic();
            let d = det(&gram_matrix(&module, n));
            // prod is monic in h, so A_n is the coefficient of the pure
            // h^M term of the determinant.
            let a = d.coeff(0, prod.degree_h());
            if a.is_zero() || !d.eq(&prod.scale(&a)) {
                return Err(GramKacError::KacMismatch {
                    level: n,
                    residual: format!("det - A*prod = {}", d.sub(&prod.scale(&a))),
                });
            }
            a
        }
        KacMode::Pointwise => pointwise_leading(n, &prod)?,
    };
    if !leading.is_positive() {
        return Err(GramKacError::KacMismatch {
            level: n,
            residual: format!("leading constant {leading} not positive"),
        });
    }
    Ok(KacFactorization { level: n, factors, leading })
}

/// Degree-bounded pointwise identity certification.
///
/// The symbolic Gram entries give sound per-variable degree bounds for the
/// determinant (sum over rows of the row-wise maxima, since the
/// determinant is a sum of products with one entry per row).  Checking
/// `det = A * prod` on `deg_c + 1` lines with `deg_h + 1` points per line,
/// with one constant `A` throughout, then certifies the polynomial
/// identity: on each line both sides are polynomials in `h` of degree at
/// most `deg_h`, and the difference vanishes on more lines than its
/// `c`-degree permits.
fn pointwise_leading(n: HalfInt, prod: &PolyCH) -> Result<Rat, GramKacError> {
    let module = VermaModule::symbolic();
    let gm = gram_matrix(&module, n);
    let d = gm.basis.len();
    let mut deg_c = 0u32;
    let mut deg_h = 0u32;
    for row in &gm.entries {
        deg_c += row.iter().map(|e| e.degree_c()).max().unwrap_or(0);
        deg_h += row.iter().map(|e| e.degree_h()).max().unwrap_or(0);
    }
    deg_c = deg_c.max(prod.degree_c());
    deg_h = deg_h.max(prod.degree_h());

    let mut leading: Option<Rat> = None;
    for ci in 0..=deg_c {
        let c = rat_int(ci as i64);
        let mut confirmed = 0u32;
        let mut hj = 1i64;
        while confirmed <= deg_h {
            let h = rat_int(hj);
            hj += 1;
            let pv = prod.eval(&c, &h);
            if pv.is_zero() {
                continue;
            }
            let mat: Vec<Vec<Rat>> = gm
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.eval(&c, &h)).collect())
                .collect();
            debug_assert_eq!(mat.len(), d);
            let dv = bareiss_det(mat);
            let a = dv / pv;
            match &leading {
                None => leading = Some(a),
                Some(expect) if *expect == a => {}
                Some(expect) => {
                    return Err(GramKacError::KacMismatch {
                        level: n,
                        residual: format!(
                            "ratio det/prod not constant: {expect} vs {a} at (c,h)=({c},{})",
                            hj - 1
                        ),
                    });
                }
            }
            confirmed += 1;
        }
    }
    Ok(leading.expect("grid nonempty"))
}

/// Check that the degree in `h` of `det_n` equals the predicted count
/// (symbolic determinant; level at most 3).
pub fn degree_check(n: HalfInt) -> Result<bool, GramKacError> {
    if n > HalfInt::from_int(3) {
        return Err(GramKacError::SymbolicLevelTooHigh(n));
    }
    let module = VermaModule::symbolic();
    let d = det(&gram_matrix(&module, n));
    Ok(d.degree_h() as usize == predicted_h_degree(n))
}

/// Whether `(m, p, q)` is a discrete-series label.
pub fn valid_discrete_label(m: i64, p: i64, q: i64) -> bool {
    m >= 2 && (1..=m - 1).contains(&p) && (1..=m + 1).contains(&q) && (p - q) % 2 == 0
}

/// Kernel dimensions `dim K_n(c_m, h_pq^m)` for half-integer levels
/// `1/2 <= n <= max_level`, computed by exact congruence elimination.
pub fn kernel_census(
    m: i64,
    p: i64,
    q: i64,
    max_level: HalfInt,
) -> Result<BTreeMap<HalfInt, usize>, GramKacError> {
    let bound = census_bound(m, p, q)?;
    if max_level > bound {
        return Err(GramKacError::CensusLevelTooDeep { requested: max_level, bound });
    }
    let module = VermaModule::point(c_from_m_int(m), h_from_m_int(m, p, q));
    let mut out = BTreeMap::new();
    let mut t = 1;
    while t <= max_level.twice() {
        let n = HalfInt::from_twice(t);
        let gm = gram_matrix(&module, n);
        let (_, _, (_, _, n_zero)) = rank_kernel_signature(&gm);
        out.insert(n, n_zero);
        t += 1;
    }
    Ok(out)
}

/// The level profile the two-singular-vector structure predicts: with
/// `n0 = min(pq, p'q')/2` and `n1 = max(pq, p'q')/2`,
/// `dim K_n = 0` below `n0`, `d(n - n0)` on `[n0, n1)`, and `d(n - n0) + 1`
/// at `n1`.
pub fn kernel_census_expected(
    m: i64,
    p: i64,
    q: i64,
    max_level: HalfInt,
) -> Result<BTreeMap<HalfInt, usize>, GramKacError> {
    let bound = census_bound(m, p, q)?;
    if max_level > bound {
        return Err(GramKacError::CensusLevelTooDeep { requested: max_level, bound });
    }
    let (pp, qp) = (m - p, m + 2 - q);
    let n0 = HalfInt::from_twice((p * q).min(pp * qp));
    let n1 = HalfInt::from_twice((p * q).max(pp * qp));
    let mut out = BTreeMap::new();
    let mut t = 1;
    while t <= max_level.twice() {
        let n = HalfInt::from_twice(t);
        let dim = if n < n0 {
            0
        } else if n < n1 {
            dimension_d(n - n0)
        } else {
            dimension_d(n - n0) + 1
        };
        out.insert(n, dim);
        t += 1;
    }
    Ok(out)
}

fn census_bound(m: i64, p: i64, q: i64) -> Result<HalfInt, GramKacError> {
    if !valid_discrete_label(m, p, q) {
        return Err(GramKacError::BadDiscreteLabel { m, p, q });
    }
    let (pp, qp) = (m - p, m + 2 - q);
    Ok(HalfInt::from_twice((p * q).max(pp * qp)))
}

/// JSON emission of a symbolic Gram matrix; polynomial entries as term
/// lists `[{"dc":1,"dh":2,"coef":"8/3"}]`.
pub fn gram_symbolic_to_json(gm: &GramMatrix<PolyCH>) -> Value {
    json!({
        "level": gm.level.to_string(),
        "basis": gm.basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "entries": gm.entries.iter().map(|row| {
            row.iter().map(poly_to_json).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

/// JSON emission of a point-mode Gram matrix; entries as rational strings.
pub fn gram_point_to_json(gm: &GramMatrix<Rat>) -> Value {
    json!({
        "level": gm.level.to_string(),
        "basis": gm.basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "entries": gm.entries.iter().map(|row| {
            row.iter().map(|e| Value::String(e.to_string())).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn poly_to_json(p: &PolyCH) -> Value {
    Value::Array(
        p.terms()
            .map(|(&(dc, dh), coef)| {
                json!({"dc": dc, "dh": dh, "coef": coef.to_string()})
            })
            .collect(),
    )
}

/// JSON emission of a Verma vector as `[{"mon": ..., "coef": ...}]`.
pub fn vector_to_json(v: &VermaVector<Rat>) -> Value {
    Value::Array(
        v.iter()
            .map(|(m, coef)| json!({"mon": m.to_string(), "coef": coef.to_string()}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::poly_identity_test;
    use crate::nsalgebra::Symbolic;

    fn half(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn sym_gram(t: i64) -> GramMatrix<PolyCH> {
        gram_matrix(&VermaModule::<Symbolic>::symbolic(), half(t))
    }

    #[test]
    fn gram_examples_match_low_levels() {
        let g0 = sym_gram(0);
        assert_eq!(g0.entries, vec![vec![PolyCH::one()]]);

        let two_h = PolyCH::var_h().scale(&rat_int(2));
        assert_eq!(sym_gram(1).entries, vec![vec![two_h.clone()]]);
        assert_eq!(sym_gram(2).entries, vec![vec![two_h.clone()]]);

        let g32 = sym_gram(3);
        let mut e00 = PolyCH::zero();
        e00.add_term(0, 1, rat_int(2));
        e00.add_term(0, 2, rat_int(4));
        let e01 = PolyCH::var_h().scale(&rat_int(4));
        let mut e11 = PolyCH::zero();
        e11.add_term(0, 1, rat_int(2));
        e11.add_term(1, 0, rat(2, 3));
        assert_eq!(g32.entries, vec![vec![e00, e01.clone()], vec![e01, e11]]);
    }

    #[test]
    fn gram_is_symmetric_both_modes() {
        for t in 0..=6 {
            let g = sym_gram(t);
            let module = VermaModule::point(rat(9, 4), rat(-5, 3));
            let gp = gram_matrix(&module, half(t));
            for i in 0..g.basis.len() {
                for j in 0..g.basis.len() {
                    assert_eq!(g.entries[i][j], g.entries[j][i]);
                    assert_eq!(gp.entries[i][j], gp.entries[j][i]);
                }
            }
        }
    }

    #[test]
    fn det_examples() {
        // Symbolic level-3/2 determinant expands as expected.
        let d = det(&sym_gram(3));
        let mut expected = PolyCH::zero();
        expected.add_term(0, 3, rat_int(8));
        expected.add_term(1, 2, rat(8, 3));
        expected.add_term(0, 2, rat_int(-12));
        expected.add_term(1, 1, rat(4, 3));
        assert_eq!(d, expected);

        // (c_3, h_13^3) = (7/10, 1/10) lies on the vanishing set.
        assert_eq!(d.eval(&rat(7, 10), &rat(1, 10)), rat_int(0));
        let module = VermaModule::point(rat(7, 10), rat(1, 10));
        assert!(det(&gram_matrix(&module, half(3))).is_zero());

        let module = VermaModule::point(rat_int(1), rat_int(-1));
        assert_eq!(det(&gram_matrix(&module, half(1))), rat_int(-2));
    }

    #[test]
    fn signature_examples() {
        let module = VermaModule::point(rat(7, 10), rat(1, 10));
        let gm = gram_matrix(&module, half(3));
        let (rank, kernel, sig) = rank_kernel_signature(&gm);
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        assert_eq!(sig, (1, 0, 1));
        // The kernel vector is the level-3/2 singular vector
        // (3 G_{-3/2} - 5 G_{-1/2} L_{-1}) Omega, up to scale.
        assert_eq!(module.is_singular(&kernel[0]), Ok(true));
        let g32: PbwMonomial = "G(-3/2)".parse().unwrap();
        let gl: PbwMonomial = "G(-1/2) L(-1)".parse().unwrap();
        let scale = kernel[0].coeff(&g32) / rat_int(3);
        assert!(!scale.is_zero());
        assert_eq!(kernel[0].coeff(&gl), rat_int(-5) * scale);

        let module = VermaModule::point(rat_int(1), rat_int(-1));
        let (_, _, sig) = rank_kernel_signature(&gram_matrix(&module, half(1)));
        assert_eq!(sig, (0, 1, 0));

        let module = VermaModule::point(rat_int(2), rat_int(5));
        let (_, _, sig) = rank_kernel_signature(&gram_matrix(&module, half(1)));
        assert_eq!(sig, (1, 0, 0));
    }

    #[test]
    fn congruence_diag_norms_match_the_form() {
        let module = VermaModule::point(rat(1, 3), rat(5, 8));
        for t in 1..=6 {
            let gm = gram_matrix(&module, half(t));
            let cong = congruence_diagonalize(&gm);
            for (v, norm) in &cong.diag {
                assert_eq!(&module.form(v, v), norm);
            }
            let (np, nm, nz) = cong.signature();
            assert_eq!(np + nm + nz, gm.basis.len());
        }
    }

    #[test]
    fn curve_evaluations() {
        assert_eq!(c_from_m_int(2), rat_int(0));
        assert_eq!(h_from_m_int(2, 1, 1), rat_int(0));
        assert_eq!(h_from_m_int(2, 1, 3), rat_int(0));
        assert_eq!(c_from_m_int(3), rat(7, 10));
        assert_eq!(h_from_m_int(3, 1, 3), rat(1, 10));
        assert!(matches!(c_from_m(&rat_int(0)), Err(GramKacError::PoleAtM(_))));
        assert!(matches!(h_from_m(&rat_int(-2), 1, 1), Err(GramKacError::PoleAtM(_))));
        // Duality h_pq^m = h_{m-p, m+2-q}^m.
        for m in 2..=12 {
            for p in 1..=m - 1 {
                for q in 1..=m + 1 {
                    if (p - q) % 2 != 0 {
                        continue;
                    }
                    assert_eq!(h_from_m_int(m, p, q), h_from_m_int(m, m - p, m + 2 - q));
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1, 1).unwrap(), PolyCH::var_h());

        let mut expected = PolyCH::zero();
        expected.add_term(0, 2, rat_int(1));
        expected.add_term(0, 1, rat(-3, 2));
        expected.add_term(1, 1, rat(1, 3));
        expected.add_term(1, 0, rat(1, 6));
        assert_eq!(phi(1, 3).unwrap(), expected);

        // m = 2 gives the point (0,0), also a root.
        for m in 2..=6 {
            let c = c_from_m_int(m);
            assert!(phi(1, 3).unwrap().eval(&c, &h_from_m_int(m, 1, 3)).is_zero());
            assert!(phi(1, 3).unwrap().eval(&c, &h_from_m_int(m, 3, 1)).is_zero());
        }

        assert!(matches!(phi(2, 3), Err(GramKacError::BadCurveLabel { .. })));
        assert!(matches!(phi(3, 1), Err(GramKacError::BadCurveLabel { .. })));
    }

    #[test]
    fn phi_13_on_the_free_fermion_line() {
        // The (1,3) curve crosses c = 3/2 at h = (p-q)^2/8 = 1/2.
        assert!(phi(1, 3).unwrap().eval(&rat(3, 2), &rat(1, 2)).is_zero());
    }

    #[test]
    fn sum_rule_matches_samples() {
        for (p, q) in [(1, 3), (1, 5), (2, 4), (3, 5)] {
            let s = h_sum_rule(p, q);
            for m in 3..=12 {
                let c = c_from_m_int(m);
                assert_eq!(
                    s.eval(&c, &Rat::zero()),
                    h_from_m_int(m, p, q) + h_from_m_int(m, q, p),
                    "sum rule at ({p},{q}), m={m}"
                );
            }
        }
    }

    #[test]
    fn product_closed_form_is_inconsistent_at_one_three() {
        // The interpolated product for (1,3) is exactly c/6; the closed
        // form differs from it, which is the documented discrepancy.
        let interp = product_interpolated(1, 3);
        assert_eq!(interp, PolyCH::var_c().scale(&rat(1, 6)));
        let closed = product_closed_form(1, 3);
        assert_ne!(closed, interp);
        // And the disagreement is visible at actual parametrized points.
        let c = c_from_m_int(4);
        assert_ne!(
            closed.eval(&c, &Rat::zero()),
            h_from_m_int(4, 1, 3) * h_from_m_int(4, 3, 1)
        );
    }

    #[test]
    fn kac_factors_and_verification_low_levels() {
        let f1 = kac_verify(half(2), KacMode::Symbolic).unwrap();
        assert_eq!(f1.factors, vec![(1, 1, 1)]);
        assert_eq!(f1.leading, rat_int(2));

        let f3h = kac_verify(half(3), KacMode::Symbolic).unwrap();
        assert_eq!(f3h.factors, vec![(1, 1, 1), (1, 3, 1)]);
        assert_eq!(f3h.leading, rat_int(8));

        let f2 = kac_verify(half(4), KacMode::Symbolic).unwrap();
        assert_eq!(f2.factors, vec![(1, 1, 2), (1, 3, 1), (2, 2, 1)]);
        assert!(f2.leading.is_positive());
        let prod = kac_product(half(4));
        assert_eq!(prod.degree_h(), 5);
    }

    #[test]
    fn mutated_product_constant_is_detected() {
        // Perturbing the constant term of phi_13 leaves no constant A with
        // det_{3/2} = A * 8 phi_11 phi_13'.
        let d = det(&sym_gram(3));
        let bad_phi13 = phi(1, 3).unwrap().add(&PolyCH::constant(rat(1, 100)));
        let bad_prod = phi(1, 1).unwrap().mul(&bad_phi13);
        let a = d.coeff(0, bad_prod.degree_h());
        assert_ne!(d, bad_prod.scale(&a));
        // Point ratios disagree too, so pointwise certification also fails.
        let r1 = d.eval(&rat_int(1), &rat_int(1)) / bad_prod.eval(&rat_int(1), &rat_int(1));
        let r2 = d.eval(&rat_int(1), &rat_int(2)) / bad_prod.eval(&rat_int(1), &rat_int(2));
        assert_ne!(r1, r2);
    }

    #[test]
    fn kac_symbolic_refuses_deep_levels() {
        assert!(matches!(
            kac_verify(half(7), KacMode::Symbolic),
            Err(GramKacError::SymbolicLevelTooHigh(_))
        ));
    }

    #[test]
    fn kac_pointwise_matches_symbolic_at_level_two() {
        let sym = kac_verify(half(4), KacMode::Symbolic).unwrap();
        let pw = kac_verify(half(4), KacMode::Pointwise).unwrap();
        assert_eq!(sym, pw);
    }

    #[test]
    fn degree_check_examples() {
        assert_eq!(predicted_h_degree(half(2)), 1);
        assert_eq!(predicted_h_degree(half(3)), 3);
        assert_eq!(predicted_h_degree(half(4)), 5);
        for t in [1, 2, 3, 4, 5, 6] {
            assert_eq!(degree_check(half(t)), Ok(true), "level {}", half(t));
        }
        assert!(degree_check(half(7)).is_err());
    }

    #[test]
    fn root_property_on_sampled_curves() {
        let module = VermaModule::symbolic();
        for t in 1..=6 {
            let n = half(t);
            let d = det(&gram_matrix(&module, n));
            for (p, q, _) in kac_factors(n) {
                for m in (p.max(q - 1) + 1)..=6 {
                    let c = c_from_m_int(m);
                    for h in [h_from_m_int(m, p, q), h_from_m_int(m, q, p)] {
                        assert!(
                            d.eval(&c, &h).is_zero(),
                            "det_{n} should vanish at m={m}, (p,q)=({p},{q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn no_ghosts_in_the_continuum_samples() {
        for (c, h) in [(rat_int(2), rat_int(5)), (rat(3, 2), rat_int(0)), (rat(3, 2), rat_int(7))] {
            let module = VermaModule::point(c.clone(), h.clone());
            for t in 1..=5 {
                let (_, _, sig) = rank_kernel_signature(&gram_matrix(&module, half(t)));
                assert_eq!(sig.1, 0, "negative direction at ({c},{h}), level {}", half(t));
            }
        }
    }

    #[test]
    fn census_trivial_representation() {
        let dims = kernel_census(2, 1, 1, half(3)).unwrap();
        let expect: Vec<(HalfInt, usize)> =
            vec![(half(1), 1), (half(2), 1), (half(3), 2)];
        assert_eq!(dims.into_iter().collect::<Vec<_>>(), expect);
        assert_eq!(
            kernel_census_expected(2, 1, 1, half(3)).unwrap().into_iter().collect::<Vec<_>>(),
            expect
        );
    }

    #[test]
    fn census_m3_label_13() {
        let dims = kernel_census(3, 1, 3, half(4)).unwrap();
        assert_eq!(dims[&half(2)], 0);
        assert_eq!(dims[&half(3)], 1);
        assert_eq!(dims[&half(4)], 2);
        assert_eq!(dims, kernel_census_expected(3, 1, 3, half(4)).unwrap());
    }

    #[test]
    fn census_input_validation() {
        assert!(matches!(
            kernel_census(3, 1, 2, half(2)),
            Err(GramKacError::BadDiscreteLabel { .. })
        ));
        assert!(matches!(
            kernel_census(3, 1, 3, half(20)),
            Err(GramKacError::CensusLevelTooDeep { .. })
        ));
    }

    #[test]
    fn kac_product_identity_via_grid_test() {
        // Cross-check the level-3/2 identity with the generic polynomial
        // identity tester: 8 phi_11 phi_13 vs the expanded determinant.
        let det32 = det(&sym_gram(3));
        let prod = phi(1, 1).unwrap().mul(&phi(1, 3).unwrap()).scale(&rat_int(8));
        assert_eq!(poly_identity_test(&det32, &prod, (1, 3)), Ok(true));
    }
}
