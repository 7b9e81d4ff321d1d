//! Exact scalars: big integers, rationals, prime-field residues, and the
//! integral coefficient family `C(a, k, l) = a^l * prod_{j<l} (k + j a) / l!`
//! that carries every structure constant of the deformed coproduct.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Coeff;
use crate::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

impl Coeff for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Integer {
    (1..=n).fold(Integer::one(), |acc, j| acc * j)
}

/// Ordinary binomial coefficient `C(n, r)` for `n >= 0`.
pub fn binomial(n: u64, r: u64) -> Integer {
    if r > n {
        return Integer::zero();
    }
    let r = r.min(n - r);
    let mut acc = Integer::one();
    for j in 0..r {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// `C(a, k, l) = a^l * prod_{j=0}^{l-1} (k + j a) / l!`.
///
/// The product is formed in full and divided by `l!` once; a nonzero
/// remainder is reported as [`Error::InexactDivision`].
pub fn int_coeff(a: &Integer, k: &Integer, l: u32) -> Result<Integer, Error> {
    let mut num = num_traits::pow(a.clone(), l as usize);
    for j in 0..l {
        num *= k + a * Integer::from(j);
    }
    let (q, r) = num.div_rem(&factorial(l));
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            a: a.to_string(),
            k: k.to_string(),
            l,
        });
    }
    Ok(q)
}

/// Generalized binomial coefficient `q (q-1) ... (q-n+1) / n!`.
pub fn gen_binomial(q: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..n {
        acc *= q - Rational::from_integer(Integer::from(j));
    }
    acc / Rational::from_integer(factorial(n))
}

/// A validated odd prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, Error> {
        if p < 3 || p.is_multiple_of(2) || (3..).step_by(2).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d))
        {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn elem(self, value: i64) -> FpElem {
        FpElem::new(value, self)
    }
}

/// Residue class modulo an odd prime; the residue is kept in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u32,
    p: u32,
}

impl FpElem {
    pub fn new(value: i64, p: Prime) -> Self {
        let m = p.0 as i64;
        FpElem { value: value.rem_euclid(m) as u32, p: p.0 }
    }

    pub fn from_integer(value: &Integer, p: Prime) -> Self {
        let r = value.mod_floor(&Integer::from(p.0));
        FpElem { value: r.to_u32().expect("residue fits in u32"), p: p.0 }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        Prime(self.p)
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<FpElem> {
        if self.value == 0 {
            return None;
        }
        // Fermat: x^(p-2)
        Some(self.pow(u64::from(self.p) - 2))
    }

    pub fn pow(self, mut e: u64) -> FpElem {
        let p = u64::from(self.p);
        let mut base = u64::from(self.value);
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FpElem { value: acc as u32, p: self.p }
    }

    fn check(self, other: FpElem) -> Result<(), Error> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl std::ops::Add for FpElem {
    type Output = FpElem;
    fn add(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem { value: ((u64::from(self.value) + u64::from(o.value)) % u64::from(self.p)) as u32, p: self.p }
    }
}

impl std::ops::Sub for FpElem {
    type Output = FpElem;
    fn sub(self, o: FpElem) -> FpElem {
        self + (-o)
    }
}

impl std::ops::Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
}

impl std::ops::Mul for FpElem {
    type Output = FpElem;
    fn mul(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem { value: (u64::from(self.value) * u64::from(o.value) % u64::from(self.p)) as u32, p: self.p }
    }
}

impl Coeff for FpElem {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add_assign(&mut self, other: &Self) {
        *self = *self + *other;
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn neg(&self) -> Self {
        -*self
    }
}

/// Arguments of a coefficient lookup. Either all integers or all residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKey {
    Int { a: Integer, k: Integer, l: u32 },
    Residue { a: FpElem, k: FpElem, l: u32 },
}

impl CoeffKey {
    pub fn eval(&self) -> Result<CoeffValue, Error> {
        match self {
            CoeffKey::Int { a, k, l } => int_coeff(a, k, *l).map(CoeffValue::Int),
            CoeffKey::Residue { a, k, l } => n_coeff(*a, *k, *l).map(CoeffValue::Residue),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffValue {
    Int(Integer),
    Residue(FpElem),
}

/// `N(a, k, l)`: the residue of `C(ã, k̃, l)` for the canonical lifts
/// `ã, k̃ ∈ [0, p)`.
pub fn n_coeff(a: FpElem, k: FpElem, l: u32) -> Result<FpElem, Error> {
    a.check(k)?;
    let lifted = int_coeff(&Integer::from(a.value), &Integer::from(k.value), l)?;
    Ok(FpElem::from_integer(&lifted, a.modulus()))
}

/// Residue of an integer coefficient, for comparing char-0 constants with
/// their mod-p counterparts.
pub fn reduce(value: &Integer, p: Prime) -> FpElem {
    FpElem::from_integer(value, p)
}

/// Exact rational as an integer, if its denominator is one.
pub fn as_integer(q: &Rational) -> Option<Integer> {
    q.is_integer().then(|| q.to_integer())
}

/// Reduce a p-integral rational modulo p.
pub fn reduce_rational(q: &Rational, p: Prime) -> Option<FpElem> {
    let den = FpElem::from_integer(q.denom(), p);
    let inv = den.inverse()?;
    Some(FpElem::from_integer(q.numer(), p) * inv)
}

pub fn sign(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    #[test]
    fn int_coeff_examples() {
        assert_eq!(int_coeff(&int(2), &int(1), 0).unwrap(), int(1));
        assert_eq!(int_coeff(&int(3), &int(0), 2).unwrap(), int(0));
        assert_eq!(int_coeff(&int(2), &int(1), 2).unwrap(), int(6));
        assert_eq!(int_coeff(&int(-1), &int(5), 3).unwrap(), int(-10));
    }

    #[test]
    fn n_coeff_examples() {
        let p = Prime::new(5).unwrap();
        assert_eq!(n_coeff(p.elem(2), p.elem(1), 2).unwrap(), p.elem(1));
        // 49 * 6 * 13 / 2 = 1911 from the lifts 7 and 6
        let lifted = int_coeff(&int(7), &int(6), 2).unwrap();
        assert_eq!(lifted, int(1911));
        assert_eq!(reduce(&lifted, p), p.elem(1));
        for a in 0..5 {
            assert!(n_coeff(p.elem(a), p.elem(0), 1).unwrap().is_zero());
        }
    }

    #[test]
    fn n_coeff_rejects_mixed_moduli() {
        let p3 = Prime::new(3).unwrap();
        let p5 = Prime::new(5).unwrap();
        assert!(matches!(n_coeff(p3.elem(1), p5.elem(1), 1), Err(Error::ModulusMismatch(3, 5))));
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&ratio(7, 3), 0), rat(1));
        assert_eq!(gen_binomial(&rat(3), 2), rat(3));
        assert_eq!(gen_binomial(&ratio(1, 2), 2), ratio(-1, 8));
    }

    #[test]
    fn gen_binomial_matches_integral_family() {
        // binom(k/i, n) * (-i^2)^n = C(-i, k, n)
        for i in [-3i64, -1, 1, 2, 3] {
            for k in -6i64..=6 {
                for n in 0..7u32 {
                    let lhs = gen_binomial(&ratio(k, i), n) * rat(-i * i).pow(n as i32);
                    let rhs = int_coeff(&int(-i), &int(k), n).unwrap();
                    assert_eq!(lhs, Rational::from_integer(rhs), "i={i} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn prime_validation() {
        for p in [3, 5, 7, 11, 13, 101] {
            assert!(Prime::new(p).is_ok());
        }
        for p in [0, 1, 2, 4, 9, 15, 21, 25] {
            assert!(Prime::new(p).is_err(), "{p}");
        }
    }

    #[test]
    fn field_ops() {
        let p = Prime::new(7).unwrap();
        let x = p.elem(3);
        assert_eq!(x * x.inverse().unwrap(), p.elem(1));
        assert_eq!(x - p.elem(5), p.elem(5));
        assert_eq!(-p.elem(0), p.elem(0));
        assert_eq!(x.pow(7), x);
        assert!(p.elem(0).inverse().is_none());
        assert_eq!(reduce_rational(&ratio(1, 2), p), Some(p.elem(4)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(3, 4), int(0));
    }
}
