//! Exact coefficient rings: ℤ, ℚ and 𝔽_p.
//!
//! A [`Ring`] is a context object: it carries whatever runtime data the
//! arithmetic needs (the modulus of 𝔽_p) and hands out elements of its
//! associated [`Ring::Elem`] type. Every algorithm in this crate is generic
//! over `R: Ring`, and each ring is also Euclidean, so the same elimination
//! code computes ranks over fields and lattices over ℤ.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which exact coefficient ring a value lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl ScalarRing {
    pub fn is_field(self) -> bool {
        !matches!(self, ScalarRing::Integers)
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Integers => write!(f, "Z"),
            ScalarRing::Rationals => write!(f, "Q"),
            ScalarRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Arithmetic of an exact Euclidean coefficient ring.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;
    /// Euclidean size used for pivot selection; smaller is preferred.
    type Size: Ord;

    fn kind(&self) -> ScalarRing;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }

    fn is_field(&self) -> bool {
        self.kind().is_field()
    }

    /// Inverse of a unit, `None` for non-units.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Euclidean division `a = q·b + r`. Over fields `r = 0`; over ℤ the
    /// remainder is the canonical one, `0 <= r < |b|`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A unit `u` with `u·a` the canonical associate of `a` (1 for zero).
    fn unit_normalizer(&self, a: &Self::Elem) -> Self::Elem;

    fn size(&self, a: &Self::Elem) -> Self::Size;

    /// Parses a decimal scalar such as `"3"`, `"-1/2"`.
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    /// Image in ℚ for characteristic-zero rings.
    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational>;

    /// Number of elements, for finite rings.
    fn order(&self) -> Option<u64> {
        None
    }

    /// The `i`-th element in a fixed enumeration of a finite ring
    /// (residue `i` of 𝔽_p).
    fn nth_element(&self, _i: u64) -> Option<Self::Elem> {
        None
    }
}

fn parse_fraction(s: &str) -> Result<(BigInt, BigInt)> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a decimal scalar: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => {
            (BigInt::from_str(n.trim()).map_err(|_| bad())?, BigInt::from_str(d.trim()).map_err(|_| bad())?)
        }
        None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok((num, den))
}

/// The integers ℤ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    type Size = BigInt;

    fn kind(&self) -> ScalarRing {
        ScalarRing::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn add_assign(&self, acc: &mut BigInt, b: &BigInt) {
        *acc += b;
    }
    fn mul_add_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        *acc += a * b;
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.is_one() || (-a).is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let b_abs = b.abs();
        let (q, r) = a.div_mod_floor(&b_abs);
        if b.is_negative() {
            (-q, r)
        } else {
            (q, r)
        }
    }
    fn unit_normalizer(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn size(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        let (n, d) = parse_fraction(s)?;
        let (q, r) = n.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::Parse(format!("{s:?} is not an integer")));
        }
        Ok(q)
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn to_rational(&self, a: &BigInt) -> Option<BigRational> {
        Some(BigRational::from_integer(a.clone()))
    }
}

/// The rationals ℚ as reduced fractions of unbounded integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;
    /// Total bit length of numerator and denominator.
    type Size = u64;

    fn kind(&self) -> ScalarRing {
        ScalarRing::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn add_assign(&self, acc: &mut BigRational, b: &BigRational) {
        *acc += b;
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn unit_normalizer(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn size(&self, a: &BigRational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let (n, d) = parse_fraction(s)?;
        Ok(BigRational::new(n, d))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

/// The prime field 𝔽_p, elements stored as canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Fails unless `p` is prime.
    pub fn new(p: u64) -> Result<Self> {
        if !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    type Size = u8;

    fn kind(&self) -> ScalarRing {
        ScalarRing::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        self.reduce_bigint(v)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        let inv = self.inverse(b).expect("division by zero in F_p");
        (self.mul(a, &inv), 0)
    }
    fn unit_normalizer(&self, a: &u64) -> u64 {
        self.inverse(a).unwrap_or(1)
    }
    fn size(&self, _a: &u64) -> u8 {
        0
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let (n, d) = parse_fraction(s)?;
        let d = self.reduce_bigint(&d);
        let inv =
            self.inverse(&d).ok_or_else(|| Error::Parse(format!("denominator of {s:?} vanishes mod {}", self.p)))?;
        Ok(self.mul(&self.reduce_bigint(&n), &inv))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_rational(&self, _a: &u64) -> Option<BigRational> {
        None
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn nth_element(&self, i: u64) -> Option<u64> {
        (i < self.p).then_some(i)
    }
}
