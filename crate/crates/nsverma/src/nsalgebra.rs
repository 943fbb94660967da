//! The Neveu-Schwarz algebra acting on Verma modules: PBW basis
//! enumeration, generator action by recursive bracket rewriting, the
//! contravariant form, and singular-vector tests.
//!
//! A Verma module `V(c,h)` has the PBW basis of ordered monomials
//! `G_{-g_1} ... G_{-g_b} L_{-l_1} ... L_{-l_a} Omega` with the `G` indices
//! strictly increasing, the `L` indices weakly increasing, and `Omega` the
//! highest-weight vector (`L_0 Omega = h Omega`, `C Omega = c Omega`,
//! raising generators annihilate `Omega`).  Acting with any generator and
//! re-expressing in this basis is a finite recursion over the defining
//! brackets; the recursion is memoized per `(generator, monomial)` pair
//! because inner products reuse enormous numbers of sub-reductions.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::{rat_int, ArithError, HalfInt, PolyCH, Rat, Scalar};

/// A generator of the Neveu-Schwarz algebra: even `L(n)` with integer
/// index, odd `G(r)` with half-odd index, or the central element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    L(HalfInt),
    G(HalfInt),
    Central,
}

impl Generator {
    /// Even generator `L_n`.  Panics unless `n` is an integer.
    pub fn l(n: HalfInt) -> Self {
        assert!(n.is_integer(), "L index must be an integer, got {n}");
        Generator::L(n)
    }

    /// Even generator `L_n` from an integer.
    pub fn l_int(n: i64) -> Self {
        Generator::L(HalfInt::from_int(n))
    }

    /// Odd generator `G_r`.  Panics unless `r` is half-odd.
    pub fn g(r: HalfInt) -> Self {
        assert!(r.is_half_odd(), "G index must be half-odd, got {r}");
        Generator::G(r)
    }

    /// Odd generator `G_{t/2}` from twice the index.
    pub fn g_twice(t: i64) -> Self {
        Generator::g(HalfInt::from_twice(t))
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Generator::G(_))
    }

    pub fn index(self) -> Option<HalfInt> {
        match self {
            Generator::L(n) | Generator::G(n) => Some(n),
            Generator::Central => None,
        }
    }

    /// The adjoint under the contravariant form: negate the index.
    pub fn adjoint(self) -> Self {
        match self {
            Generator::L(n) => Generator::L(-n),
            Generator::G(r) => Generator::G(-r),
            Generator::Central => Generator::Central,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(n) => write!(f, "L({n})"),
            Generator::G(r) => write!(f, "G({r})"),
            Generator::Central => write!(f, "C"),
        }
    }
}

/// A finite word of generators, not necessarily in PBW order.
pub type GeneratorWord = Vec<Generator>;

/// The adjoint of a word: reverse and negate every index.  An involution.
pub fn adjoint(word: &[Generator]) -> GeneratorWord {
    word.iter().rev().map(|g| g.adjoint()).collect()
}

/// An ordered product of lowering generators applied to the highest-weight
/// vector: the basis element of a Verma module.
///
/// `g_parts` holds the (positive, half-odd) indices `j` of the `G_{-j}`
/// factors, strictly increasing; `l_parts` holds the (positive integer)
/// indices `i` of the `L_{-i}` factors, weakly increasing.  As an operator
/// word the parts are applied right to left, `L` factors first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PbwMonomial {
    g_parts: Vec<HalfInt>,
    l_parts: Vec<i64>,
}

impl PbwMonomial {
    /// The empty monomial (the highest-weight vector itself).
    pub fn unit() -> Self {
        PbwMonomial::default()
    }

    pub fn new(g_parts: Vec<HalfInt>, l_parts: Vec<i64>) -> Self {
        for w in g_parts.windows(2) {
            assert!(w[0] < w[1], "G parts must be strictly increasing");
        }
        for &j in &g_parts {
            assert!(j.is_half_odd() && j.is_positive(), "G part {j} invalid");
        }
        for w in l_parts.windows(2) {
            assert!(w[0] <= w[1], "L parts must be weakly increasing");
        }
        for &i in &l_parts {
            assert!(i >= 1, "L part {i} invalid");
        }
        PbwMonomial { g_parts, l_parts }
    }

    pub fn g_parts(&self) -> &[HalfInt] {
        &self.g_parts
    }

    pub fn l_parts(&self) -> &[i64] {
        &self.l_parts
    }

    pub fn is_unit(&self) -> bool {
        self.g_parts.is_empty() && self.l_parts.is_empty()
    }

    pub fn level(&self) -> HalfInt {
        let g: HalfInt = self.g_parts.iter().copied().sum();
        let l: i64 = self.l_parts.iter().sum();
        g + HalfInt::from_int(l)
    }

    /// Parity: odd iff the number of `G` factors is odd.
    pub fn is_odd(&self) -> bool {
        self.g_parts.len() % 2 == 1
    }

    /// The monomial as an operator word, leftmost factor first.
    pub fn word(&self) -> GeneratorWord {
        let mut w: GeneratorWord = self.g_parts.iter().map(|&j| Generator::G(-j)).collect();
        w.extend(self.l_parts.iter().map(|&i| Generator::l_int(-i)));
        w
    }

    /// Split off the leftmost factor of the word.
    fn split_leading(&self) -> Option<(Generator, PbwMonomial)> {
        if let Some((&j, rest)) = self.g_parts.split_first() {
            Some((
                Generator::G(-j),
                PbwMonomial { g_parts: rest.to_vec(), l_parts: self.l_parts.clone() },
            ))
        } else if let Some((&i, rest)) = self.l_parts.split_first() {
            Some((
                Generator::l_int(-i),
                PbwMonomial { g_parts: self.g_parts.clone(), l_parts: rest.to_vec() },
            ))
        } else {
            None
        }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.word().iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for PbwMonomial {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(PbwMonomial::unit());
        }
        let bad = || ArithError::MalformedMonomial(s.to_string());
        let mut g_parts: Vec<HalfInt> = Vec::new();
        let mut l_parts: Vec<i64> = Vec::new();
        for tok in s.split_whitespace() {
            if !tok.is_ascii() || tok.len() < 2 {
                return Err(bad());
            }
            let (kind, rest) = tok.split_at(1);
            let idx = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let idx: HalfInt = idx.parse().map_err(|_| bad())?;
            if !idx.is_negative() {
                return Err(bad());
            }
            match kind {
                "G" if (-idx).is_half_odd() => g_parts.push(-idx),
                "L" if (-idx).is_integer() => l_parts.push((-idx).as_int()),
                _ => return Err(bad()),
            }
        }
        if g_parts.windows(2).any(|w| w[0] >= w[1]) || l_parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad());
        }
        Ok(PbwMonomial { g_parts, l_parts })
    }
}

/// All PBW monomials of level `n`, in a fixed deterministic order: by the
/// number of `G` parts ascending, then lexicographically on the `G` parts,
/// then on the `L` parts.  Empty for `n < 0`.
pub fn enumerate_basis(n: HalfInt) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    if n.is_negative() {
        return out;
    }
    // Distinct half-odd G parts, grouped by count.
    let mut by_count: BTreeMap<usize, Vec<Vec<HalfInt>>> = BTreeMap::new();
    let mut stack: Vec<HalfInt> = Vec::new();
    fn gen_g(
        remaining: HalfInt,
        min_twice: i64,
        stack: &mut Vec<HalfInt>,
        by_count: &mut BTreeMap<usize, Vec<Vec<HalfInt>>>,
    ) {
        if remaining.is_integer() {
            by_count.entry(stack.len()).or_default().push(stack.clone());
        }
        let mut t = min_twice;
        while t <= remaining.twice() {
            let j = HalfInt::from_twice(t);
            stack.push(j);
            gen_g(remaining - j, t + 2, stack, by_count);
            stack.pop();
            t += 2;
        }
    }
    gen_g(n, 1, &mut stack, &mut by_count);

    fn gen_l(remaining: i64, min: i64, stack: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            out.push(stack.clone());
            return;
        }
        for i in min..=remaining {
            stack.push(i);
            gen_l(remaining - i, i, stack, out);
            stack.pop();
        }
    }

    for (_count, g_lists) in by_count {
        for g in g_lists {
            let g_sum: HalfInt = g.iter().copied().sum();
            let rem = n - g_sum;
            debug_assert!(rem.is_integer() && !rem.is_negative());
            let mut l_lists = Vec::new();
            let mut lstack = Vec::new();
            gen_l(rem.as_int(), 1, &mut lstack, &mut l_lists);
            for l in l_lists {
                out.push(PbwMonomial::new(g.clone(), l));
            }
        }
    }
    out
}

/// `d(n)`, the dimension of the level-`n` eigenspace; 0 for `n < 0`.
pub fn dimension_d(n: HalfInt) -> usize {
    enumerate_basis(n).len()
}

/// An element of the Verma module: a finite combination of PBW monomials.
#[derive(Clone, PartialEq, Debug)]
pub struct VermaVector<S: Scalar> {
    terms: BTreeMap<PbwMonomial, S>,
}

impl<S: Scalar> VermaVector<S> {
    pub fn zero() -> Self {
        VermaVector { terms: BTreeMap::new() }
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        Self::term(m, S::one())
    }

    pub fn term(m: PbwMonomial, coef: S) -> Self {
        let mut v = Self::zero();
        v.add_term(m, coef);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, coef: S) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = S::sum(e.get(), &coef);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &S) {
        if scale.is_zero() {
            return;
        }
        for (m, coef) in &other.terms {
            self.add_term(m.clone(), S::prod(coef, scale));
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::negate(&S::one()));
        out
    }

    pub fn coeff(&self, m: &PbwMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common level when the vector is homogeneous and nonzero.
    pub fn level(&self) -> Option<HalfInt> {
        let mut it = self.terms.keys();
        let first = it.next()?.level();
        for m in it {
            if m.level() != first {
                return None;
            }
        }
        Some(first)
    }
}

impl<S: Scalar> fmt::Display for VermaVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, coef) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({coef}) {m}")?;
        }
        Ok(())
    }
}

/// The scalars by which `C` and `L_0` act on the highest-weight vector:
/// fixed rationals in point mode, the indeterminates in symbolic mode.
pub trait Ambient {
    type S: Scalar;
    fn central_charge(&self) -> Self::S;
    fn highest_weight(&self) -> Self::S;
}

/// Point mode: fixed rational `(c, h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub c: Rat,
    pub h: Rat,
}

impl Ambient for Point {
    type S = Rat;
    fn central_charge(&self) -> Rat {
        self.c.clone()
    }
    fn highest_weight(&self) -> Rat {
        self.h.clone()
    }
}

/// Symbolic mode: `c` and `h` as polynomial indeterminates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Symbolic;

impl Ambient for Symbolic {
    type S = PolyCH;
    fn central_charge(&self) -> PolyCH {
        PolyCH::var_c()
    }
    fn highest_weight(&self) -> PolyCH {
        PolyCH::var_h()
    }
}

/// Errors from singular-vector checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularError {
    ZeroOrLevelZero,
    Inhomogeneous,
}

impl fmt::Display for SingularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularError::ZeroOrLevelZero => {
                write!(f, "singular test needs a nonzero vector of positive level")
            }
            SingularError::Inhomogeneous => {
                write!(f, "singular test needs a homogeneous vector")
            }
        }
    }
}

impl std::error::Error for SingularError {}

type ReductionMemo<S> = RefCell<HashMap<(Generator, PbwMonomial), Rc<VermaVector<S>>>>;

/// The Verma module `V(c,h)` together with its reduction cache.
///
/// Reductions are pure; the memo table is interior state only, so a module
/// value is cheap to create per thread (results are plain values and safe
/// to send across threads).
pub struct VermaModule<A: Ambient> {
    ambient: A,
    memo: ReductionMemo<A::S>,
}

impl VermaModule<Point> {
    pub fn point(c: Rat, h: Rat) -> Self {
        VermaModule::new(Point { c, h })
    }
}

impl VermaModule<Symbolic> {
    pub fn symbolic() -> Self {
        VermaModule::new(Symbolic)
    }
}

impl<A: Ambient> VermaModule<A> {
    pub fn new(ambient: A) -> Self {
        VermaModule { ambient, memo: RefCell::new(HashMap::new()) }
    }

    pub fn ambient(&self) -> &A {
        &self.ambient
    }

    /// Act with a single generator on a vector, re-expressed in the PBW basis.
    pub fn apply_generator(&self, g: Generator, v: &VermaVector<A::S>) -> VermaVector<A::S> {
        let mut out = VermaVector::zero();
        for (m, coef) in v.iter() {
            let reduced = self.apply_mono(g, m);
            out.add_scaled(&reduced, coef);
        }
        out
    }

    /// Act with a word of generators (rightmost factor first).
    pub fn apply_word(&self, word: &[Generator], v: &VermaVector<A::S>) -> VermaVector<A::S> {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.apply_generator(*g, &cur);
        }
        cur
    }

    fn apply_mono(&self, g: Generator, m: &PbwMonomial) -> Rc<VermaVector<A::S>> {
        let key = (g, m.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return Rc::clone(hit);
        }
        let result = Rc::new(self.reduce(g, m));
        self.memo.borrow_mut().insert(key, Rc::clone(&result));
        result
    }

    fn reduce(&self, g: Generator, m: &PbwMonomial) -> VermaVector<A::S> {
        match g {
            Generator::Central => VermaVector::term(m.clone(), self.ambient.central_charge()),
            Generator::L(n) if n == HalfInt::ZERO => {
                let eig = A::S::sum(
                    &self.ambient.highest_weight(),
                    &A::S::from_rat(&m.level().to_rat()),
                );
                VermaVector::term(m.clone(), eig)
            }
            Generator::L(n) | Generator::G(n) if n.is_negative() => self.lower(g, m),
            _ => self.raise(g, m),
        }
    }

    /// Multiply by a lowering generator, restoring PBW order by bracket
    /// rewriting.
    fn lower(&self, g: Generator, m: &PbwMonomial) -> VermaVector<A::S> {
        match g {
            Generator::G(r) => {
                let j = -r;
                match m.g_parts.first().copied() {
                    None => VermaVector::monomial(PbwMonomial {
                        g_parts: vec![j],
                        l_parts: m.l_parts.clone(),
                    }),
                    Some(g1) if j < g1 => {
                        let mut g_parts = Vec::with_capacity(m.g_parts.len() + 1);
                        g_parts.push(j);
                        g_parts.extend_from_slice(&m.g_parts);
                        VermaVector::monomial(PbwMonomial { g_parts, l_parts: m.l_parts.clone() })
                    }
                    Some(g1) if j == g1 => {
                        // G_{-j} G_{-j} = L_{-2j}
                        let rest = PbwMonomial {
                            g_parts: m.g_parts[1..].to_vec(),
                            l_parts: m.l_parts.clone(),
                        };
                        let l = Generator::l(-(j + j));
                        (*self.apply_mono(l, &rest)).clone()
                    }
                    Some(g1) => {
                        // G_{-j} G_{-g1} = -G_{-g1} G_{-j} + 2 L_{-j-g1}
                        let rest = PbwMonomial {
                            g_parts: m.g_parts[1..].to_vec(),
                            l_parts: m.l_parts.clone(),
                        };
                        let swapped = self.apply_mono(Generator::G(r), &rest);
                        let mut out = VermaVector::zero();
                        for (mono, coef) in swapped.iter() {
                            let pre = self.apply_mono(Generator::G(-g1), mono);
                            out.add_scaled(&pre, &A::S::negate(coef));
                        }
                        let l = self.apply_mono(Generator::l(-(j + g1)), &rest);
                        out.add_scaled(&l, &A::S::from_rat(&rat_int(2)));
                        out
                    }
                }
            }
            Generator::L(n) => {
                let i = -n;
                if let Some(&g1) = m.g_parts.first() {
                    // L_{-i} G_{-g1} = G_{-g1} L_{-i} + (g1 - i/2) G_{-i-g1}
                    let rest = PbwMonomial {
                        g_parts: m.g_parts[1..].to_vec(),
                        l_parts: m.l_parts.clone(),
                    };
                    let moved = self.apply_mono(Generator::L(n), &rest);
                    let mut out = VermaVector::zero();
                    for (mono, coef) in moved.iter() {
                        let pre = self.apply_mono(Generator::G(-g1), mono);
                        out.add_scaled(&pre, coef);
                    }
                    let coef = Rat::new(BigInt::from(2 * g1.twice() - i.twice()), BigInt::from(4));
                    let bracket = self.apply_mono(Generator::g(-(i + g1)), &rest);
                    out.add_scaled(&bracket, &A::S::from_rat(&coef));
                    out
                } else {
                    let ii = i.as_int();
                    match m.l_parts.first().copied() {
                        None => VermaVector::monomial(PbwMonomial {
                            g_parts: Vec::new(),
                            l_parts: vec![ii],
                        }),
                        Some(l1) if ii <= l1 => {
                            let mut l_parts = Vec::with_capacity(m.l_parts.len() + 1);
                            l_parts.push(ii);
                            l_parts.extend_from_slice(&m.l_parts);
                            VermaVector::monomial(PbwMonomial { g_parts: Vec::new(), l_parts })
                        }
                        Some(l1) => {
                            // L_{-i} L_{-l1} = L_{-l1} L_{-i} + (l1 - i) L_{-i-l1}
                            let rest = PbwMonomial {
                                g_parts: Vec::new(),
                                l_parts: m.l_parts[1..].to_vec(),
                            };
                            let moved = self.apply_mono(Generator::L(n), &rest);
                            let mut out = VermaVector::zero();
                            for (mono, coef) in moved.iter() {
                                let pre = self.apply_mono(Generator::l_int(-l1), mono);
                                out.add_scaled(&pre, coef);
                            }
                            let bracket = self.apply_mono(Generator::l_int(-ii - l1), &rest);
                            out.add_scaled(&bracket, &A::S::from_rat(&rat_int(l1 - ii)));
                            out
                        }
                    }
                }
            }
            Generator::Central => unreachable!(),
        }
    }

    /// Act with a raising generator: `g (x rest) = +/- x (g rest) + [g,x] rest`,
    /// the sign being `-1` exactly when `g` and `x` are both odd (in which
    /// case the bracket is the anticommutator).
    fn raise(&self, g: Generator, m: &PbwMonomial) -> VermaVector<A::S> {
        let Some((x, rest)) = m.split_leading() else {
            // Raising generators annihilate the highest-weight vector.
            return VermaVector::zero();
        };
        let mut out = VermaVector::zero();

        let sub = self.apply_mono(g, &rest);
        let both_odd = g.is_odd() && x.is_odd();
        for (mono, coef) in sub.iter() {
            let pre = self.apply_mono(x, mono);
            let coef = if both_odd { A::S::negate(coef) } else { coef.clone() };
            out.add_scaled(&pre, &coef);
        }

        for (scale, gen) in bracket(g, x) {
            let term = self.apply_mono(gen, &rest);
            out.add_scaled(&term, &A::S::from_rat(&scale));
        }
        out
    }

    /// Contravariant form of two basis monomials: the coefficient of the
    /// highest-weight vector in `adjoint(a) . (b Omega)`.  Zero across
    /// distinct levels.
    pub fn inner_product(&self, a: &PbwMonomial, b: &PbwMonomial) -> A::S {
        if a.level() != b.level() {
            return A::S::zero();
        }
        let w = adjoint(&a.word());
        let v = self.apply_word(&w, &VermaVector::monomial(b.clone()));
        v.coeff(&PbwMonomial::unit())
    }

    /// Contravariant form of two vectors.
    pub fn form(&self, u: &VermaVector<A::S>, v: &VermaVector<A::S>) -> A::S {
        let mut acc = A::S::zero();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                let ip = self.inner_product(a, b);
                acc = A::S::sum(&acc, &A::S::prod(&A::S::prod(ca, cb), &ip));
            }
        }
        acc
    }

    /// Whether a homogeneous vector of positive level is singular, i.e.
    /// annihilated by `G_{1/2}` and `G_{3/2}` (which generate all raising
    /// operators).
    pub fn is_singular(&self, v: &VermaVector<A::S>) -> Result<bool, SingularError> {
        let level = match v.level() {
            None if v.is_zero() => return Err(SingularError::ZeroOrLevelZero),
            None => return Err(SingularError::Inhomogeneous),
            Some(l) => l,
        };
        if !level.is_positive() {
            return Err(SingularError::ZeroOrLevelZero);
        }
        Ok(self
            .apply_generator(Generator::g_twice(1), v)
            .is_zero()
            && self.apply_generator(Generator::g_twice(3), v).is_zero())
    }
}

/// The bracket `[g, x]` (anticommutator when both arguments are odd),
/// as a list of `(rational scale, generator)` terms; `L(0)` and `Central`
/// terms are handled by the caller's base cases.
fn bracket(g: Generator, x: Generator) -> Vec<(Rat, Generator)> {
    let mut out = Vec::new();
    match (g, x) {
        (Generator::L(a), Generator::L(b)) => {
            let diff = a - b;
            let sum = a + b;
            if diff.twice() != 0 {
                out.push((diff.to_rat(), Generator::L(sum)));
            }
            if sum.twice() == 0 {
                // (C/12)(a^3 - a)
                let av = BigInt::from(a.as_int());
                let num = &av * &av * &av - &av;
                out.push((Rat::new(num, BigInt::from(12)), Generator::Central));
            }
        }
        (Generator::G(r), Generator::L(b)) => {
            // [G_r, L_b] = (r - b/2) G_{r+b}
            let scale = Rat::new(BigInt::from(2 * r.twice() - b.twice()), BigInt::from(4));
            out.push((scale, Generator::G(r + b)));
        }
        (Generator::L(a), Generator::G(s)) => {
            // [L_a, G_s] = (a/2 - s) G_{a+s}
            let scale = Rat::new(BigInt::from(a.twice() - 2 * s.twice()), BigInt::from(4));
            out.push((scale, Generator::G(a + s)));
        }
        (Generator::G(r), Generator::G(s)) => {
            let sum = r + s;
            out.push((rat_int(2), Generator::L(sum)));
            if sum.twice() == 0 {
                // (C/3)(r^2 - 1/4) = C (4r^2 - 1)/12
                let t = BigInt::from(r.twice());
                let num = &t * &t - BigInt::from(1);
                out.push((Rat::new(num, BigInt::from(12)), Generator::Central));
            }
        }
        (Generator::Central, _) | (_, Generator::Central) => {}
    }
    out.retain(|(s, _)| !num_traits::Zero::is_zero(s));
    out
}
