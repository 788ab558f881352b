//! Fermionic p-adic q-integrals as exact truncated sums.
//!
//! For an integrand `f` and a measure base `b` (either `q0` or `1/q0`),
//!
//! ```text
//! S_N = 1/[p^N]_{-b} * sum_{x=0}^{p^N - 1} f(x) (-b)^x
//! ```
//!
//! is computed in exact rational arithmetic. As `N` grows, `S_N` converges
//! p-adically to the value of the closed form returned by [`closed_form_of`],
//! and [`probe_convergence`] records how fast by tracking `v_p(S_N - exact)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::{BigRational, Polynomial, RationalFunction};
use crate::qcore::{self, binomial, BernsteinIndex, QBase, QEulerTable};

/// Upper bound on `p^maxN`, the number of terms in the deepest truncation.
pub const MAX_TERMS: u64 = 10_000_000;

/// A p-adic valuation, with `v_p(0)` represented as [`Valuation::Infinite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    /// True when `self >= bound` (infinity exceeds every bound).
    pub fn at_least(&self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => *v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (quo, rem) = n.div_rem(p);
        if !rem.is_zero() {
            return v;
        }
        n = quo;
        v += 1;
    }
}

/// `v_p(x)`; `p` must be prime.
pub fn padic_valuation(x: &BigRational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let pb = BigInt::from(p);
    Valuation::Finite(int_valuation(x.numer(), &pb) - int_valuation(x.denom(), &pb))
}

/// Base of a q-number or of the measure: `q` itself or `1/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Base {
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "1/q")]
    InvQ,
}

impl From<Base> for QBase {
    fn from(b: Base) -> QBase {
        match b {
            Base::Q => QBase::Q,
            Base::InvQ => QBase::InvQ,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Q => "q",
            Base::InvQ => "1/q",
        })
    }
}

impl std::str::FromStr for Base {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Base::Q),
            "1/q" | "inv-q" => Ok(Base::InvQ),
            other => Err(Error::Parse(format!("unknown base {other:?}, expected q or 1/q"))),
        }
    }
}

/// The function being integrated, as a member of a closed family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Integrand {
    /// `x -> [x + shift]_base^exponent`, or `x -> [1 - x + shift]_base^exponent` when reflected.
    ShiftedPower {
        shift: i64,
        exponent: usize,
        base: Base,
        reflected: bool,
    },
    /// `x -> prod_i B_{k_i, n_i}(x, q)`.
    BernsteinProduct { factors: Vec<BernsteinIndex> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntegrandSpec {
    pub integrand: Integrand,
    /// The measure is weighted by `(-b)^x` with `b` this base.
    pub measure: Base,
}

impl IntegrandSpec {
    pub fn shifted_power(shift: i64, exponent: usize, base: Base, reflected: bool, measure: Base) -> Self {
        IntegrandSpec {
            integrand: Integrand::ShiftedPower {
                shift,
                exponent,
                base,
                reflected,
            },
            measure,
        }
    }

    /// `[x]_q^n` against the measure in `q`.
    pub fn power(n: usize) -> Self {
        IntegrandSpec::shifted_power(0, n, Base::Q, false, Base::Q)
    }

    pub fn bernstein_product(factors: Vec<BernsteinIndex>, measure: Base) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Parameter("Bernstein product needs at least one factor".into()));
        }
        Ok(IntegrandSpec {
            integrand: Integrand::BernsteinProduct { factors },
            measure,
        })
    }

    /// The integrand at integer `x` as an element of Q(q), built from qcore.
    pub fn integrand_at(&self, x: i64) -> RationalFunction {
        match &self.integrand {
            Integrand::ShiftedPower {
                shift,
                exponent,
                base,
                reflected,
            } => {
                let arg = if *reflected { 1 - x + shift } else { x + shift };
                qcore::q_number(arg, (*base).into())
                    .pow(*exponent as i64)
                    .expect("non-negative power")
            }
            Integrand::BernsteinProduct { factors } => factors
                .iter()
                .fold(RationalFunction::one(), |acc, idx| &acc * &qcore::bernstein(*idx, x)),
        }
    }
}

impl fmt::Display for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.integrand {
            Integrand::ShiftedPower {
                shift,
                exponent,
                base,
                reflected,
            } => {
                let arg = match (reflected, shift) {
                    (false, 0) => "x".to_string(),
                    (false, a) => format!("x{a:+}"),
                    (true, 0) => "1-x".to_string(),
                    (true, a) => format!("1-x{a:+}"),
                };
                write!(f, "[{arg}]_{base}^{exponent}")?;
            }
            Integrand::BernsteinProduct { factors } => {
                for (i, idx) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "B_{{{},{}}}", idx.k(), idx.n())?;
                }
            }
        }
        write!(f, " d mu_-{}", self.measure)
    }
}

/// Prime, specialization point and truncation depth for a p-adic probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    q0: BigRational,
    max_n: u32,
}

impl PadicContext {
    /// Requires an odd prime `p`, `v_p(q0) = 0`, `v_p(1 - q0) >= 1` and
    /// `p^max_n <= MAX_TERMS`.
    pub fn new(p: u64, q0: BigRational, max_n: u32) -> Result<Self> {
        if p == 2 || !crate::exactfield::zpoly::is_prime_u64(p) {
            return Err(Error::InvalidContext(format!("p = {p} is not an odd prime")));
        }
        if padic_valuation(&q0, p) != Valuation::Finite(0) {
            return Err(Error::InvalidContext(format!("q0 = {q0} is not a {p}-adic unit")));
        }
        if !padic_valuation(&(BigRational::one() - &q0), p).at_least(1) {
            return Err(Error::InvalidContext(format!(
                "v_{p}(1 - q0) < 1 for q0 = {q0}; need |1 - q0|_p < 1"
            )));
        }
        if max_n == 0 {
            return Err(Error::InvalidContext("max N must be positive".into()));
        }
        match p.checked_pow(max_n) {
            Some(t) if t <= MAX_TERMS => {}
            _ => {
                return Err(Error::InvalidContext(format!(
                    "{p}^{max_n} exceeds the enumeration bound {MAX_TERMS}"
                )))
            }
        }
        Ok(PadicContext { p, q0, max_n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q0(&self) -> &BigRational {
        &self.q0
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }
}

/// Integer parts of `q0 = a/c` together with `d = c - a`.
///
/// Every integrand value and measure weight has a denominator of the form
/// `a^i c^j d^k`. Partial sums are therefore kept as one integer over such a
/// monomial and only reduced when a rational is reported, which keeps
/// big-integer gcds out of the per-term loop.
#[derive(Clone, Debug)]
struct Factors {
    base: [BigInt; 3],
}

const A: usize = 0;
const C: usize = 1;
const D: usize = 2;

/// `num / (a^e[0] c^e[1] d^e[2])`
#[derive(Clone, Debug, Default)]
struct Scaled {
    num: BigInt,
    exps: [u64; 3],
}

impl Scaled {
    fn int(num: impl Into<BigInt>) -> Self {
        Scaled {
            num: num.into(),
            exps: [0; 3],
        }
    }

    fn mul(&self, other: &Scaled) -> Scaled {
        Scaled {
            num: &self.num * &other.num,
            exps: [0, 1, 2].map(|i| self.exps[i] + other.exps[i]),
        }
    }

    fn pow(&self, e: usize) -> Scaled {
        Scaled {
            num: num_traits::pow(self.num.clone(), e),
            exps: self.exps.map(|x| x * e as u64),
        }
    }
}

impl Factors {
    fn new(q0: &BigRational) -> Self {
        let a = q0.numer().clone();
        let c = q0.denom().clone();
        let d = &c - &a;
        Factors { base: [a, c, d] }
    }

    fn unit_q0(&self) -> bool {
        self.base[D].is_zero()
    }

    fn monomial(&self, exps: &[u64; 3]) -> BigInt {
        let mut out = BigInt::one();
        for (b, &e) in self.base.iter().zip(exps) {
            if e > 0 {
                out *= num_traits::pow(b.clone(), e as usize);
            }
        }
        out
    }

    fn lift(&self, num: BigInt, from: &[u64; 3], to: &[u64; 3]) -> BigInt {
        let gap = [0, 1, 2].map(|i| to[i] - from[i]);
        if gap == [0; 3] {
            num
        } else {
            num * self.monomial(&gap)
        }
    }

    fn add_into(&self, acc: &mut Scaled, term: &Scaled) {
        let to = [0, 1, 2].map(|i| acc.exps[i].max(term.exps[i]));
        let lhs = self.lift(std::mem::take(&mut acc.num), &acc.exps, &to);
        acc.num = lhs + self.lift(term.num.clone(), &term.exps, &to);
        acc.exps = to;
    }

    #[cfg(test)]
    fn to_rational(&self, s: &Scaled) -> BigRational {
        BigRational::new(s.num.clone(), self.monomial(&s.exps))
    }
}

/// `[m]_beta` along `m = start, start + step, ...` with `beta` equal to `q0` or `1/q0`.
struct QNumberWalk {
    base: Base,
    m: i64,
    step: i64,
    /// `a^|m|` and `c^|m|`
    pa: BigInt,
    pc: BigInt,
}

impl QNumberWalk {
    fn new(base: Base, start: i64, step: i64, f: &Factors) -> Self {
        let j = start.unsigned_abs() as usize;
        QNumberWalk {
            base,
            m: start,
            step,
            pa: num_traits::pow(f.base[A].clone(), j),
            pc: num_traits::pow(f.base[C].clone(), j),
        }
    }

    fn value(&self, f: &Factors) -> Scaled {
        if f.unit_q0() {
            return Scaled::int(self.m);
        }
        let j = self.m.unsigned_abs();
        let (num, exps) = match (self.base, self.m.signum()) {
            (_, 0) => return Scaled::int(0),
            (Base::Q, 1) => (&self.pc - &self.pa, [0, j - 1, 1]),
            (Base::InvQ, 1) => (&self.pc - &self.pa, [j - 1, 0, 1]),
            (Base::Q, _) => (&f.base[C] * (&self.pa - &self.pc), [j, 0, 1]),
            (Base::InvQ, _) => (&f.base[A] * (&self.pa - &self.pc), [0, j, 1]),
        };
        Scaled { num, exps }
    }

    fn advance(&mut self, f: &Factors) {
        let before = self.m.unsigned_abs();
        self.m += self.step;
        if self.m.unsigned_abs() > before {
            self.pa *= &f.base[A];
            self.pc *= &f.base[C];
        } else {
            self.pa /= &f.base[A];
            self.pc /= &f.base[C];
        }
    }
}

enum Shape {
    Power {
        qn: QNumberWalk,
        exponent: usize,
    },
    Bernstein {
        left: QNumberWalk,
        right: QNumberWalk,
        prefactor: BigInt,
        k_total: usize,
        r_total: usize,
    },
}

/// Incremental evaluator of the integrand at `x = 0, 1, 2, ...` at a rational point.
struct IntegrandWalker {
    factors: Factors,
    shape: Shape,
}

impl IntegrandWalker {
    fn new(spec: &IntegrandSpec, q0: &BigRational) -> Self {
        let factors = Factors::new(q0);
        let shape = match &spec.integrand {
            Integrand::ShiftedPower {
                shift,
                exponent,
                base,
                reflected,
            } => {
                let (start, step) = if *reflected { (1 + shift, -1) } else { (*shift, 1) };
                Shape::Power {
                    qn: QNumberWalk::new(*base, start, step, &factors),
                    exponent: *exponent,
                }
            }
            Integrand::BernsteinProduct { factors: idx } => Shape::Bernstein {
                left: QNumberWalk::new(Base::Q, 0, 1, &factors),
                right: QNumberWalk::new(Base::InvQ, 1, -1, &factors),
                prefactor: idx.iter().map(|i| binomial(i.n() as u64, i.k() as u64)).product(),
                k_total: idx.iter().map(|i| i.k()).sum(),
                r_total: idx.iter().map(|i| i.n() - i.k()).sum(),
            },
        };
        IntegrandWalker { factors, shape }
    }

    /// Value at the current point, then advance by one.
    fn next_scaled(&mut self) -> Scaled {
        let f = &self.factors;
        match &mut self.shape {
            Shape::Power { qn, exponent } => {
                let v = qn.value(f).pow(*exponent);
                qn.advance(f);
                v
            }
            Shape::Bernstein {
                left,
                right,
                prefactor,
                k_total,
                r_total,
            } => {
                let mut v = left.value(f).pow(*k_total).mul(&right.value(f).pow(*r_total));
                v.num *= &*prefactor;
                left.advance(f);
                right.advance(f);
                v
            }
        }
    }

    #[cfg(test)]
    fn next_value(&mut self) -> BigRational {
        let s = self.next_scaled();
        self.factors.to_rational(&s)
    }
}

/// Measure weight `(-b)^x` with `b = num/den`, kept as `(-num)^x` over `den^x`.
struct Weight {
    num_idx: usize,
    den_idx: usize,
    current: Scaled,
}

impl Weight {
    fn new(measure: Base) -> Self {
        let (num_idx, den_idx) = match measure {
            Base::Q => (A, C),
            Base::InvQ => (C, A),
        };
        Weight {
            num_idx,
            den_idx,
            current: Scaled::int(1),
        }
    }

    fn advance(&mut self, f: &Factors) {
        self.current.num *= -&f.base[self.num_idx];
        self.current.exps[self.den_idx] += 1;
    }
}

/// `acc / [M]_{-b}` where `[M]_{-b} = (1 - (-b)^M) / (1 + b)` and `b = B1/B2`:
/// the result is `acc * (B1 + B2) * B2^(M-1) / (B2^M - (-B1)^M)`.
fn normalized(acc: &Scaled, f: &Factors, measure: Base, terms: u64) -> Result<BigRational> {
    let w = Weight::new(measure);
    let b1 = &f.base[w.num_idx];
    let b2 = &f.base[w.den_idx];
    let m = terms as usize;
    let b2_pow = num_traits::pow(b2.clone(), m - 1);
    let top = b2 * &b2_pow - num_traits::pow(-b1, m);
    let sum = b1 + b2;
    if sum.is_zero() || top.is_zero() {
        return Err(Error::Pole(BigRational::new(b1.clone(), b2.clone()).to_string()));
    }
    Ok(BigRational::new(&acc.num * sum * b2_pow, f.monomial(&acc.exps) * top))
}

/// Runs the weighted sum up to `p^max_level - 1`, reporting the normalized
/// partial sum at every `p^N - 1` for `N = 1..=max_level`.
fn weighted_partials(spec: &IntegrandSpec, ctx: &PadicContext, max_level: u32) -> Result<Vec<(u32, BigRational)>> {
    let mut walker = IntegrandWalker::new(spec, &ctx.q0);
    let mut weight = Weight::new(spec.measure);
    let mut acc = Scaled::int(0);
    let mut out = Vec::with_capacity(max_level as usize);
    let mut next_checkpoint = ctx.p;
    let mut level = 1;
    let total = ctx.p.pow(max_level);
    for x in 0..total {
        let term = walker.next_scaled().mul(&weight.current);
        walker.factors.add_into(&mut acc, &term);
        weight.advance(&walker.factors);
        if x + 1 == next_checkpoint {
            out.push((level, normalized(&acc, &walker.factors, spec.measure, next_checkpoint)?));
            level += 1;
            next_checkpoint = next_checkpoint.saturating_mul(ctx.p);
        }
    }
    Ok(out)
}

/// `S_N` for a single truncation level.
pub fn truncated_integral(spec: &IntegrandSpec, ctx: &PadicContext, level: u32) -> Result<BigRational> {
    if level == 0 || level > ctx.max_n {
        return Err(Error::Parameter(format!(
            "truncation level {level} outside 1..={}",
            ctx.max_n
        )));
    }
    let mut partials = weighted_partials(spec, ctx, level)?;
    Ok(partials.pop().expect("level >= 1").1)
}

/// Truncated sums `S_1..S_maxN` and their residual valuations against `exact(q0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PadicProbe {
    pub spec: IntegrandSpec,
    pub context: PadicContext,
    pub partials: Vec<(u32, BigRational)>,
    pub exact: RationalFunction,
    pub exact_at_q0: BigRational,
    pub residual_valuations: Vec<(u32, Valuation)>,
}

impl PadicProbe {
    /// No step of the valuation sequence decreases.
    pub fn is_monotone(&self) -> bool {
        self.residual_valuations.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    /// Every residual valuation is at least its truncation level.
    pub fn meets_level_bound(&self) -> bool {
        self.residual_valuations.iter().all(|(n, v)| v.at_least(i64::from(*n)))
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.residual_valuations.iter().map(|(_, v)| *v).collect()
    }
}

pub fn probe_convergence(spec: &IntegrandSpec, ctx: &PadicContext, exact: &RationalFunction) -> Result<PadicProbe> {
    let exact_at_q0 = exact.eval(&ctx.q0)?;
    let partials = weighted_partials(spec, ctx, ctx.max_n)?;
    let residual_valuations = partials
        .iter()
        .map(|(n, s)| (*n, padic_valuation(&(s - &exact_at_q0), ctx.p)))
        .collect();
    Ok(PadicProbe {
        spec: spec.clone(),
        context: ctx.clone(),
        partials,
        exact: exact.clone(),
        exact_at_q0,
        residual_valuations,
    })
}

fn signed(c: BigInt, negative: bool) -> BigInt {
    if negative {
        -c
    } else {
        c
    }
}

/// `sum_{l=0}^{m} C(m,l) (-1)^l xi_{l+offset,q}`, the moment expansion shared
/// by the Bernstein integrals.
pub fn alternating_moment_sum(m: usize, offset: usize, table: &QEulerTable) -> RationalFunction {
    let terms: Vec<RationalFunction> = (0..=m)
        .map(|l| {
            table
                .get(l + offset)
                .scale(&signed(binomial(m as u64, l as u64), l % 2 == 1))
        })
        .collect();
    RationalFunction::sum_all(&terms)
}

/// `int [1 - x + a]_{1/q}^n d mu_{-q}(x)`: expand `[1 - x + a]_{1/q} = [a+1]_{1/q} - q^{-a} [x]_q`.
fn reflected_power_integral(a: i64, n: usize, table: &QEulerTable) -> RationalFunction {
    let head = qcore::q_number(a + 1, QBase::InvQ);
    let tail = -RationalFunction::q_pow(-a);
    let terms: Vec<RationalFunction> = (0..=n)
        .map(|l| {
            let c = head.pow((n - l) as i64).expect("non-negative power")
                * tail.pow(l as i64).expect("non-negative power")
                * table.get(l);
            c.scale(&binomial(n as u64, l as u64))
        })
        .collect();
    RationalFunction::sum_all(&terms)
}

/// `int [x1 + a]_{1/q}^n d mu_{-1/q}(x1)` in Witt form; with `x = 1 - a` this is
/// `(-1)^n q^n [2]_q / (1-q)^n * sum_l C(n,l) (-1)^l q^{lx} / (1 + q^{l+1})`.
fn inverse_witt_integral(a: i64, n: usize) -> RationalFunction {
    let x = 1 - a;
    let terms: Vec<RationalFunction> = (0..=n)
        .map(|l| {
            let den = &RationalFunction::one() + &RationalFunction::q_pow(l as i64 + 1);
            RationalFunction::q_pow(l as i64 * x)
                .checked_div(&den)
                .expect("1 + q^k is non-zero")
                .scale(&signed(binomial(n as u64, l as u64), l % 2 == 1))
        })
        .collect();
    let sum = RationalFunction::sum_all(&terms);
    let one_minus_q = RationalFunction::from_polynomial(&Polynomial::from_integers([1, -1]));
    let prefactor = (qcore::q_number(2, QBase::Q) * RationalFunction::q_pow(n as i64))
        .checked_div(&one_minus_q.pow(n as i64).expect("non-negative power"))
        .expect("(1-q)^n is non-zero")
        .scale(&signed(BigInt::one(), n % 2 == 1));
    prefactor * sum
}

/// Exact value of the fermionic integral for the covered integrand families.
///
/// Covered: unreflected powers whose base matches the measure, reflected powers
/// whose base is opposite to the measure, and products of Bernstein factors
/// sharing one `k` against the measure in `q`.
pub fn closed_form_of(spec: &IntegrandSpec, table: &QEulerTable) -> Result<RationalFunction> {
    match (&spec.integrand, spec.measure) {
        (
            Integrand::ShiftedPower {
                shift,
                exponent,
                base,
                reflected,
            },
            measure,
        ) => match (base, measure, reflected) {
            (Base::Q, Base::Q, false) => Ok(qcore::q_euler_polynomial(*exponent, *shift, table)),
            (Base::InvQ, Base::InvQ, false) => Ok(inverse_witt_integral(*shift, *exponent)),
            (Base::InvQ, Base::Q, true) => Ok(reflected_power_integral(*shift, *exponent, table)),
            (Base::Q, Base::InvQ, true) => Ok(reflected_power_integral(*shift, *exponent, table).subst_inverse()),
            _ => Err(Error::UnsupportedSpec(format!("no closed form for {spec}"))),
        },
        (Integrand::BernsteinProduct { factors }, Base::Q) => {
            let k = factors[0].k();
            if factors.iter().any(|f| f.k() != k) {
                return Err(Error::UnsupportedSpec(format!(
                    "Bernstein factors must share k: {spec}"
                )));
            }
            let s = factors.len();
            let total: usize = factors.iter().map(|f| f.n()).sum();
            let prefactor: BigInt = factors.iter().map(|f| binomial(f.n() as u64, k as u64)).product();
            Ok(alternating_moment_sum(total - s * k, s * k, table).scale(&prefactor))
        }
        (Integrand::BernsteinProduct { .. }, Base::InvQ) => Err(Error::UnsupportedSpec(format!(
            "Bernstein products are only covered against the measure in q: {spec}"
        ))),
    }
}
