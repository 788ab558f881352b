//! q-numbers, classical and q-Euler numbers, q-Euler polynomials and
//! q-Bernstein polynomials as elements of Q(q).
//!
//! The q-Euler numbers are defined by the umbral recurrence
//! `q (q xi + 1)^n + xi_n = 0` (n > 0, `xi_0 = 1`) and cross-checked against the
//! Witt-type closed form under the measure weighted by `(-q)^x`:
//!
//! ```text
//! xi_n = [2]_q / (1-q)^n * sum_{l=0}^{n} C(n,l) (-1)^l / (1 + q^{l+1})
//! ```

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{BigRational, Polynomial, RationalFunction};

/// Which deformation parameter a q-number is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QBase {
    /// `[x]_q = (1 - q^x) / (1 - q)`
    Q,
    /// `[x]_{1/q}`, i.e. `[x]_q` with `q -> 1/q`
    InvQ,
    /// `[x]_{-q} = (1 - (-q)^x) / (1 + q)`
    NegQ,
}

/// Binomial coefficient by the multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `[x]` in the requested base. Negative `x` is allowed.
pub fn q_number(x: i64, base: QBase) -> RationalFunction {
    match base {
        QBase::Q => q_number_q(x),
        QBase::InvQ => q_number_q(x).subst_inverse(),
        QBase::NegQ => {
            let num = &RationalFunction::one() - &neg_q_pow(x);
            let den = RationalFunction::from_polynomial(&Polynomial::from_integers([1, 1]));
            num.checked_div(&den).expect("1 + q is non-zero")
        }
    }
}

fn q_number_q(x: i64) -> RationalFunction {
    let m = x.unsigned_abs() as usize;
    let geometric = RationalFunction::from_polynomial(&Polynomial::from_integers(std::iter::repeat_n(1, m)));
    if x >= 0 {
        geometric
    } else {
        // [-m]_q = -q^{-m} [m]_q
        -(&geometric * &RationalFunction::q_pow(x))
    }
}

fn neg_q_pow(x: i64) -> RationalFunction {
    let p = RationalFunction::q_pow(x);
    if x % 2 == 0 {
        p
    } else {
        -p
    }
}

/// Classical Euler numbers `E_0..=E_n` from `2 E_n = -sum_{l<n} C(n,l) E_l`.
pub fn classical_euler_table(n: usize) -> Vec<BigRational> {
    let mut table: Vec<BigRational> = Vec::with_capacity(n + 1);
    table.push(BigRational::one());
    for m in 1..=n {
        let s: BigRational = (0..m)
            .map(|l| &table[l] * BigRational::from_integer(binomial(m as u64, l as u64)))
            .sum();
        table.push(-s / BigRational::from_integer(2.into()));
    }
    table
}

pub fn classical_euler(n: usize) -> BigRational {
    classical_euler_table(n).pop().expect("table has n + 1 entries")
}

/// Grow-only memo of the q-Euler numbers `xi_{n,q}`.
///
/// Entries are filled lowest index first under a write lock, so concurrent
/// readers always observe the same values.
#[derive(Debug)]
pub struct QEulerTable {
    entries: RwLock<Vec<RationalFunction>>,
}

impl Default for QEulerTable {
    fn default() -> Self {
        QEulerTable::new()
    }
}

impl QEulerTable {
    pub fn new() -> Self {
        QEulerTable {
            entries: RwLock::new(vec![RationalFunction::one()]),
        }
    }

    /// `xi_{n,q}`, computing and caching any missing entries up to `n`.
    pub fn get(&self, n: usize) -> RationalFunction {
        {
            let entries = self.entries.read().expect("table lock poisoned");
            if let Some(v) = entries.get(n) {
                return v.clone();
            }
        }
        let mut entries = self.entries.write().expect("table lock poisoned");
        while entries.len() <= n {
            let next = recurrence_step(&entries);
            entries.push(next);
        }
        entries[n].clone()
    }

    /// Number of cached entries.
    pub fn len(&self) -> usize {
        self.entries.read().expect("table lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Re-derive the recurrence for a cached entry:
    /// `(1 + q^{n+1}) xi_n = -sum_{l<n} C(n,l) q^{l+1} xi_l`.
    pub fn entry_satisfies_recurrence(&self, n: usize) -> bool {
        let entries = self.entries.read().expect("table lock poisoned");
        let Some(xi_n) = entries.get(n) else {
            return false;
        };
        if n == 0 {
            return xi_n.is_one();
        }
        let lhs = xi_n * &one_plus_q_pow(n + 1);
        lhs == -recurrence_sum(&entries[..n])
    }
}

fn one_plus_q_pow(e: usize) -> RationalFunction {
    &RationalFunction::one() + &RationalFunction::q_pow(e as i64)
}

/// `sum_{l<n} C(n,l) q^{l+1} xi_l` where `n = prev.len()`.
fn recurrence_sum(prev: &[RationalFunction]) -> RationalFunction {
    let n = prev.len() as u64;
    let terms: Vec<RationalFunction> = prev
        .iter()
        .enumerate()
        .map(|(l, xi)| (xi * &RationalFunction::q_pow(l as i64 + 1)).scale(&binomial(n, l as u64)))
        .collect();
    RationalFunction::sum_all(&terms)
}

fn recurrence_step(prev: &[RationalFunction]) -> RationalFunction {
    let n = prev.len();
    let s = recurrence_sum(prev);
    (-s).checked_div(&one_plus_q_pow(n + 1)).expect("1 + q^k is non-zero")
}

/// `xi_{n,q}` from the table (the recurrence route).
pub fn q_euler_number(n: usize, table: &QEulerTable) -> RationalFunction {
    table.get(n)
}

/// `xi_{n,q}` from the closed form; independent of the recurrence.
pub fn q_euler_number_closed(n: usize) -> RationalFunction {
    let terms: Vec<RationalFunction> = (0..=n)
        .map(|l| {
            let c = binomial(n as u64, l as u64);
            let c = if l % 2 == 0 { c } else { -c };
            one_plus_q_pow(l + 1).inv().expect("non-zero").scale(&c)
        })
        .collect();
    let sum = RationalFunction::sum_all(&terms);
    let two_q = q_number(2, QBase::Q);
    let one_minus_q = RationalFunction::from_polynomial(&Polynomial::from_integers([1, -1]));
    let prefactor = two_q
        .checked_div(&one_minus_q.pow(n as i64).expect("non-negative power"))
        .expect("(1-q)^n is non-zero");
    &prefactor * &sum
}

/// `xi_{n,q}(x) = sum_{l=0}^n C(n,l) [x]_q^{n-l} q^{lx} xi_{l,q}` for integer `x`.
pub fn q_euler_polynomial(n: usize, x: i64, table: &QEulerTable) -> RationalFunction {
    let qx = q_number(x, QBase::Q);
    let terms: Vec<RationalFunction> = (0..=n)
        .map(|l| {
            let power = qx.pow((n - l) as i64).expect("non-negative power");
            let shift = RationalFunction::q_pow(l as i64 * x);
            (&(&power * &shift) * &table.get(l)).scale(&binomial(n as u64, l as u64))
        })
        .collect();
    RationalFunction::sum_all(&terms)
}

/// Index pair `(k, n)` of a q-Bernstein polynomial `B_{k,n}`, with `k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BernsteinIndex {
    k: usize,
    n: usize,
}

impl BernsteinIndex {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::Parameter(format!(
                "Bernstein index needs k <= n, got k={k}, n={n}"
            )));
        }
        Ok(BernsteinIndex { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `B_{k,n}(x, q) = C(n,k) [x]_q^k [1-x]_{1/q}^{n-k}`.
pub fn bernstein(idx: BernsteinIndex, x: i64) -> RationalFunction {
    let left = q_number(x, QBase::Q).pow(idx.k as i64).expect("non-negative power");
    let right = q_number(1 - x, QBase::InvQ)
        .pow((idx.n - idx.k) as i64)
        .expect("non-negative power");
    (&left * &right).scale(&binomial(idx.n as u64, idx.k as u64))
}

/// Both sides of `[1-x]_{1/q}^n = (-1)^n q^n [x-1]_q^n`.
pub fn reflect_power(n: usize, x: i64) -> (RationalFunction, RationalFunction) {
    let n = n as i64;
    let lhs = q_number(1 - x, QBase::InvQ).pow(n).expect("non-negative power");
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let rhs = &(&RationalFunction::q_pow(n) * &q_number(x - 1, QBase::Q).pow(n).expect("non-negative power"))
        * &RationalFunction::from_integer(sign);
    (lhs, rhs)
}
