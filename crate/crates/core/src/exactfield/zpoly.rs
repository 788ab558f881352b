//! Dense univariate polynomials over the integers.
//!
//! This is the working representation behind [`RationalFunction`]: every
//! normalized rational function has integer numerator and denominator, so the
//! heavy arithmetic (products, gcds, exact quotients) happens here. The gcd is
//! a small-prime modular algorithm with CRT reconstruction and a trial-division
//! certificate, which keeps coefficient growth out of the Euclidean loop.
//!
//! [`RationalFunction`]: super::RationalFunction

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients in ascending order of the power of `q`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// `c * q^exp`
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o += s;
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Exact division of every coefficient by `c`. Caller guarantees divisibility.
    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        if c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Coefficient list reversed, i.e. `q^deg * p(1/q)`.
    pub fn reversed(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// Exact quotient `self / divisor` in Z[q], or `None` if the division leaves
    /// a remainder or a non-integral coefficient.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        if dd == 0 {
            let c = &divisor.coeffs[0];
            return self
                .coeffs
                .iter()
                .map(|x| {
                    let (quo, rem) = x.div_rem(c);
                    rem.is_zero().then_some(quo)
                })
                .collect::<Option<Vec<_>>>()
                .map(IntPoly::new);
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.coeffs.iter().map(|c| residue(c, p)).collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Gcd of two integer polynomials together with both cofactors.
///
/// The gcd is primitive with positive leading coefficient (the monic gcd in
/// Q[q] scaled to Z[q]); the cofactors satisfy `a = g * ca` and `b = g * cb`
/// exactly. Both inputs must be non-zero.
pub(crate) fn gcd_cofactors(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly, IntPoly) {
    debug_assert!(!a.is_zero() && !b.is_zero());
    let g = gcd(a, b);
    if g.is_one() {
        return (g, a.clone(), b.clone());
    }
    let ca = a.div_exact(&g).expect("gcd divides first operand");
    let cb = b.div_exact(&g).expect("gcd divides second operand");
    (g, ca, cb)
}

/// Primitive gcd of two non-zero integer polynomials.
pub(crate) fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let a = a.primitive();
    let b = b.primitive();
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return IntPoly::one();
    }
    if a == b {
        return a;
    }
    // Peel off the common power of q first; it is invisible to reduction
    // modulo primes only in pathological cases, but it is free to handle here.
    let va = a.coeffs.iter().take_while(|c| c.is_zero()).count();
    let vb = b.coeffs.iter().take_while(|c| c.is_zero()).count();
    let common_q = va.min(vb);
    let a = IntPoly::new(a.coeffs[va..].to_vec());
    let b = IntPoly::new(b.coeffs[vb..].to_vec());
    modular_gcd(&a, &b).shift(common_q)
}

fn modular_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return IntPoly::one();
    }
    let la = a.leading().expect("non-zero");
    let lb = b.leading().expect("non-zero");
    let gamma = la.gcd(lb);

    let mut best_deg: Option<usize> = None;
    let mut modulus = BigInt::one();
    let mut image: Vec<BigInt> = Vec::new();
    let mut last_candidate: Option<IntPoly> = None;

    for &p in primes() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let am = a.reduce_mod(p);
        let bm = b.reduce_mod(p);
        let gm = gcd_mod(am, bm, p);
        let d = gm.len() - 1;
        if d == 0 {
            return IntPoly::one();
        }
        let scale = residue(&gamma, p);
        let gm: Vec<u64> = gm.iter().map(|c| mulmod(*c, scale, p)).collect();
        match best_deg {
            Some(bd) if d > bd => continue,
            Some(bd) if d == bd => crt_combine(&mut image, &mut modulus, &gm, p),
            _ => {
                best_deg = Some(d);
                image = gm.iter().map(|&c| BigInt::from(c)).collect();
                modulus = pb;
                last_candidate = None;
                continue;
            }
        }
        let half = &modulus >> 1;
        let symmetric: Vec<BigInt> = image
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        let candidate = IntPoly::new(symmetric).primitive();
        if last_candidate.as_ref() == Some(&candidate)
            && a.div_exact(&candidate).is_some()
            && b.div_exact(&candidate).is_some()
        {
            return candidate;
        }
        last_candidate = Some(candidate);
    }
    unreachable!("prime table exhausted during gcd reconstruction")
}

fn crt_combine(image: &mut [BigInt], modulus: &mut BigInt, residues: &[u64], p: u64) {
    let m_mod_p = residue(modulus, p);
    let inv = powmod(m_mod_p, p - 2, p);
    for (c, &r) in image.iter_mut().zip(residues) {
        let cur = residue(c, p);
        let t = mulmod((r + p - cur) % p, inv, p);
        if t != 0 {
            *c += &*modulus * t;
        }
    }
    *modulus *= p;
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Monic gcd over GF(p). Inputs are trimmed residue vectors.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = powmod(*a.last().expect("non-zero gcd"), p - 2, p);
    a.iter().map(|&c| mulmod(c, inv, p)).collect()
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = powmod(b[db], p - 2, p);
    while a.len() > db {
        let top = *a.last().expect("non-empty");
        let shift = a.len() - 1 - db;
        if top != 0 {
            let c = mulmod(top, inv, p);
            for (j, &bj) in b.iter().enumerate() {
                let sub = mulmod(c, bj, p);
                a[shift + j] = (a[shift + j] + p - sub) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Primes just below 2^31, largest first, so that products fit in a u64.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(4096);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < 4096 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; this base set is exact for every `u64`.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(cs: &[i64]) -> IntPoly {
        IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn primality_matches_trial_division() {
        let slow = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..20_000 {
            assert_eq!(is_prime_u64(n), slow(n), "n={n}");
        }
        // Carmichael numbers and a strong pseudoprime to bases 2, 3, 5, 7.
        for n in [561, 41041, 825265, 3215031751] {
            assert!(!is_prime_u64(n), "n={n}");
        }
        assert!(is_prime_u64((1 << 31) - 1));
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(primes().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(zp(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(zp(&[0, 0]).is_zero());
    }

    #[test]
    fn gcd_of_shared_cyclotomic_factor() {
        // (1+q)(1+q^2) and (1+q)(1-q+q^2)
        let a = zp(&[1, 1]).mul(&zp(&[1, 0, 1]));
        let b = zp(&[1, 1]).mul(&zp(&[1, -1, 1]));
        assert_eq!(gcd(&a, &b), zp(&[1, 1]));
    }

    #[test]
    fn gcd_with_contents_and_powers_of_q() {
        let a = zp(&[0, 0, 6, 6]); // 6 q^2 (1+q)
        let b = zp(&[0, 4, -4]); // 4 q (1-q)
        assert_eq!(gcd(&a, &b), zp(&[0, 1]));
        let c = zp(&[0, 0, 2, -2]);
        assert_eq!(gcd(&b, &c), zp(&[0, -1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert!(gcd(&zp(&[1, 0, 1]), &zp(&[1, 1])).is_one());
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let big = BigInt::parse_bytes(b"123456789012345678901234567890123", 10).unwrap();
        let g = IntPoly::new(vec![big.clone(), BigInt::from(-7), big.clone() * 3 + 1]);
        let a = g.mul(&zp(&[5, 0, 3, 1]));
        let b = g.mul(&zp(&[-2, 9, 1]));
        assert_eq!(gcd(&a, &b), g.primitive());
    }

    #[test]
    fn exact_division_detects_remainders() {
        let a = zp(&[1, 2, 1]);
        assert_eq!(a.div_exact(&zp(&[1, 1])), Some(zp(&[1, 1])));
        assert_eq!(a.div_exact(&zp(&[1, 2])), None);
        assert_eq!(zp(&[2, 4]).div_exact(&zp(&[2])), Some(zp(&[1, 2])));
        assert_eq!(zp(&[2, 3]).div_exact(&zp(&[2])), None);
    }

    #[test]
    fn cofactors_multiply_back() {
        let a = zp(&[1, 0, 0, 0, -1]);
        let b = zp(&[-1, 0, 1]);
        let (g, ca, cb) = gcd_cofactors(&a, &b);
        assert_eq!(g.mul(&ca), a);
        assert_eq!(g.mul(&cb), b);
        assert_eq!(g, zp(&[-1, 0, 1]));
    }
}
