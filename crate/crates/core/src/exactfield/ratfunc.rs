use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::zpoly::{self, IntPoly};
use super::BigRational;
use crate::error::{Error, Result};

/// An element of Q(q) in canonical form.
///
/// Numerator and denominator are coprime integer polynomials, their joint
/// integer content is 1 and the denominator has a positive leading
/// coefficient. Zero is `0 / 1`. Because the form is canonical, `==` decides
/// equality in the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_integer(1)
    }

    pub fn from_integer(c: impl Into<BigInt>) -> Self {
        RationalFunction {
            num: IntPoly::constant(c.into()),
            den: IntPoly::one(),
        }
    }

    pub fn constant(c: &BigRational) -> Self {
        RationalFunction::from_coprime(
            IntPoly::constant(c.numer().clone()),
            IntPoly::constant(c.denom().clone()),
        )
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        RationalFunction::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = |e: i64| IntPoly::monomial(BigInt::one(), e as usize);
        if k >= 0 {
            RationalFunction {
                num: mono(k),
                den: IntPoly::one(),
            }
        } else {
            RationalFunction {
                num: IntPoly::one(),
                den: mono(-k),
            }
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let (num, lcm) = p.to_int_poly();
        RationalFunction::from_coprime(num, IntPoly::constant(lcm))
    }

    /// Build `num / den` and normalize. Fails if `den` is the zero polynomial.
    pub fn from_parts(num: &Polynomial, den: &Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (n, ln) = num.to_int_poly();
        let (d, ld) = den.to_int_poly();
        // num/den = (n/ln) / (d/ld) = (n*ld) / (d*ln)
        Ok(RationalFunction::normalize(n.scale(&ld), d.scale(&ln)))
    }

    /// Full canonicalization: cancel the polynomial gcd, then fix content and sign.
    fn normalize(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let (_, n, d) = zpoly::gcd_cofactors(&num, &den);
        RationalFunction::from_coprime(n, d)
    }

    /// Content and sign normalization for parts already known to be coprime.
    fn from_coprime(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        RationalFunction {
            num: num.div_scalar_exact(&c),
            den: den.div_scalar_exact(&c),
        }
    }

    pub fn numerator(&self) -> Polynomial {
        Polynomial::from_int_poly(&self.num)
    }

    pub fn denominator(&self) -> Polynomial {
        Polynomial::from_int_poly(&self.den)
    }

    /// Integer coefficients of the numerator, ascending.
    pub fn numerator_coeffs(&self) -> &[BigInt] {
        self.num.coeffs()
    }

    /// Integer coefficients of the denominator, ascending.
    pub fn denominator_coeffs(&self) -> &[BigInt] {
        self.den.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Re-run canonicalization on an already canonical value.
    pub fn renormalized(&self) -> Self {
        RationalFunction::normalize(self.num.clone(), self.den.clone())
    }

    /// Largest degree of numerator and denominator.
    pub fn height_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a non-zero base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = RationalFunction::one();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        let g = c.gcd(&self.den.content());
        RationalFunction::from_coprime(self.num.scale(&(c / &g)), self.den.div_scalar_exact(&g))
    }

    /// Exact value at `q = at`. Errors with a pole when the denominator vanishes there.
    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        let (hn, dn) = eval_homogeneous(&self.num, at);
        let (hd, dd) = eval_homogeneous(&self.den, at);
        if hd.is_zero() {
            return Err(Error::Pole(at.to_string()));
        }
        // N(a/b) = hn / b^dn, D(a/b) = hd / b^dd
        let b = at.denom();
        let (num, den) = if dd >= dn {
            (hn * num_traits::pow(b.clone(), dd - dn), hd)
        } else {
            (hn, hd * num_traits::pow(b.clone(), dn - dd))
        };
        Ok(BigRational::new(num, den))
    }

    /// The substitution `q -> 1/q`, renormalized.
    pub fn subst_inverse(&self) -> Self {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let dn = self.num.degree().expect("non-zero numerator");
        let dd = self.den.degree().expect("non-zero denominator");
        // f(1/q) = q^(dd - dn) * rev(num) / rev(den); reversals keep the parts coprime.
        let rn = self.num.reversed();
        let rd = self.den.reversed();
        let (num, den) = if dd >= dn {
            (rn.shift(dd - dn), rd)
        } else {
            (rn, rd.shift(dn - dd))
        };
        RationalFunction::from_coprime(num, den)
    }

    /// Sum over a common denominator built as a running lcm, cancelling once at the end.
    pub fn sum_all<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = &'a RationalFunction>,
    {
        let terms: Vec<&RationalFunction> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => return RationalFunction::zero(),
            1 => return terms[0].clone(),
            2 => return terms[0] + terms[1],
            _ => {}
        }
        let mut lcm = IntPoly::one();
        for t in &terms {
            if t.den.is_one() {
                continue;
            }
            let (_, _, extra) = zpoly::gcd_cofactors(&lcm, &t.den);
            lcm = lcm.mul(&extra);
        }
        let mut num = IntPoly::zero();
        for t in &terms {
            let cof = lcm.div_exact(&t.den).expect("lcm is a multiple of every denominator");
            num = num.add(&t.num.mul(&cof));
        }
        RationalFunction::normalize(num, lcm)
    }
}

/// For `at = a/b` and `p` of degree `d`, returns `(b^d * p(a/b), d)` as an integer.
fn eval_homogeneous(p: &IntPoly, at: &BigRational) -> (BigInt, usize) {
    let Some(d) = p.degree() else {
        return (BigInt::zero(), 0);
    };
    let a = at.numer();
    let b = at.denom();
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    // Horner from the top: acc_{i} = acc_{i+1} * a + c_i * b^{d-i}
    for c in p.coeffs().iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    (acc, d)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        // Henrici: only the common part of the denominators can cancel.
        let (g, ad, bd) = zpoly::gcd_cofactors(&self.den, &rhs.den);
        let t = self.num.mul(&bd).add(&rhs.num.mul(&ad));
        if t.is_zero() {
            return RationalFunction::zero();
        }
        if g.is_one() {
            return RationalFunction::from_coprime(t, ad.mul(&rhs.den));
        }
        let (_, t_red, g_red) = zpoly::gcd_cofactors(&t, &g);
        RationalFunction::from_coprime(t_red, ad.mul(&bd).mul(&g_red))
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let (an, bd) = cancel(&self.num, &rhs.den);
        let (bn, ad) = cancel(&rhs.num, &self.den);
        RationalFunction::from_coprime(an.mul(&bn), ad.mul(&bd))
    }
}

fn cancel(num: &IntPoly, den: &IntPoly) -> (IntPoly, IntPoly) {
    if num.degree() == Some(0) || den.degree() == Some(0) {
        return (num.clone(), den.clone());
    }
    let (_, n, d) = zpoly::gcd_cofactors(num, den);
    (n, d)
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        let terms: Vec<RationalFunction> = iter.collect();
        RationalFunction::sum_all(&terms)
    }
}

impl<'a> Sum<&'a RationalFunction> for RationalFunction {
    fn sum<I: Iterator<Item = &'a RationalFunction>>(iter: I) -> Self {
        RationalFunction::sum_all(iter)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::from_integer(c)
    }
}

impl From<BigInt> for RationalFunction {
    fn from(c: BigInt) -> Self {
        RationalFunction::from_integer(c)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::render::write_rational_function(f, self.num.coeffs(), self.den.coeffs())
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::render::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_cancels_to_one() {
        assert_eq!(rf("q/(1+q)") + rf("1/(1+q)"), RationalFunction::one());
    }

    #[test]
    fn add_zero_is_identity() {
        let f = rf("(3 - q)/(2 + q^4)");
        assert_eq!(&f + &RationalFunction::zero(), f);
    }

    #[test]
    fn add_distinct_denominators() {
        // Cross-multiplied by hand: (1+q^2) + (1+q) over (1+q)(1+q^2).
        let got = rf("1/(1+q)") + rf("1/(1+q^2)");
        let num = Polynomial::from_integers([2, 1, 1]);
        let den = Polynomial::from_integers([1, 1, 1, 1]);
        assert_eq!(got, RationalFunction::from_parts(&num, &den).unwrap());
        assert_eq!(got.to_string(), "(2 + q + q^2) / (1 + q + q^2 + q^3)");
    }

    #[test]
    fn mul_by_inverse_is_one() {
        let a = rf("1 - q");
        assert_eq!(&a * &a.inv().unwrap(), RationalFunction::one());
        assert_eq!(a.checked_div(&a).unwrap(), RationalFunction::one());
    }

    #[test]
    fn negative_power() {
        assert_eq!(RationalFunction::q().pow(-2).unwrap(), RationalFunction::q_pow(-2));
        assert_eq!(RationalFunction::q().pow(-2).unwrap().to_string(), "(1) / (q^2)");
    }

    #[test]
    fn cube_of_one_plus_q() {
        // Binomial expansion: C(3,i) = 1, 3, 3, 1.
        let expect = Polynomial::from_integers([1, 3, 3, 1]);
        let got = rf("1 + q").pow(3).unwrap();
        assert_eq!(got, RationalFunction::from_polynomial(&expect));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(RationalFunction::zero().inv(), Err(Error::DivisionByZero));
        assert!(RationalFunction::zero().pow(-1).is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf("(1+q)/(1-q)").eval(&r(2, 1)).unwrap(), r(-3, 1));
        assert_eq!(rf("q/(1+q^2)").eval(&r(1, 1)).unwrap(), r(1, 2));
        assert_eq!(rf("-q/(1+q^2)").eval(&r(4, 1)).unwrap(), r(-4, 17));
        assert_eq!(rf("1/(3*q - 2)").eval(&r(2, 3)), Err(Error::Pole("2/3".into())));
    }

    #[test]
    fn eval_at_rational_point() {
        let f = rf("(1 + 2*q^3)/(q - 5)");
        // q = -1/2: (1 - 1/4) / (-11/2) = -3/22
        assert_eq!(f.eval(&r(-1, 2)).unwrap(), r(-3, 22));
    }

    #[test]
    fn subst_inverse_examples() {
        assert_eq!(RationalFunction::q().subst_inverse(), RationalFunction::q_pow(-1));
        let xi1 = rf("-q/(1+q^2)");
        assert_eq!(xi1.subst_inverse(), xi1);
        let pal = rf("(1+q+q^2)/(1+q^2)");
        assert_eq!(pal.subst_inverse(), pal);
        assert_eq!(rf("(2+q)/(3*q^4)").subst_inverse(), rf("(2*q^4 + q^3)/3"));
    }

    #[test]
    fn canonical_sign_and_content() {
        let f = RationalFunction::from_parts(
            &Polynomial::from_integers([2, 4]),
            &Polynomial::from_integers([-6, 0, -2]),
        )
        .unwrap();
        assert_eq!(f.numerator(), Polynomial::from_integers([-1, -2]));
        assert_eq!(f.denominator(), Polynomial::from_integers([3, 0, 1]));
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        let half = BigRational::new(1.into(), 2.into());
        let f = RationalFunction::from_polynomial(&Polynomial::new(vec![half.clone(), half]));
        assert_eq!(f.numerator_coeffs(), &[BigInt::from(1), BigInt::from(1)]);
        assert_eq!(f.denominator_coeffs(), &[BigInt::from(2)]);
    }

    #[test]
    fn sum_all_matches_pairwise() {
        let terms: Vec<RationalFunction> = (1..6).map(|j| rf(&format!("{j}/(1 + q^{j})"))).collect();
        let pairwise = terms.iter().fold(RationalFunction::zero(), |acc, t| &acc + t);
        assert_eq!(RationalFunction::sum_all(&terms), pairwise);
    }

    #[test]
    fn scale_reduces_against_denominator() {
        assert_eq!(rf("q/(2 + 4*q)").scale(&BigInt::from(6)), rf("3*q/(1 + 2*q)"));
    }
}
