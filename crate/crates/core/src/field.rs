//! Exact scalars over Q and GF(p).
//!
//! A [`FieldDescriptor`] names the field; a [`FieldElement`] pairs a
//! canonical value with its descriptor. Matrix kernels do not go through
//! `FieldElement` but through the [`Arith`] trait, which is implemented by
//! [`Fp`] (native `u64` residues) and [`Q`] (big rationals).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Products of two residues fit in `u128`.
pub const MAX_MODULUS: u64 = (1 << 61) - 1;

/// Deterministic RNG used everywhere a seed is accepted.
pub type SeededRng = ChaCha8Rng;

/// A prime modulus that passed the primality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rational,
    Prime(Modulus),
}

impl FieldDescriptor {
    /// GF(p), validated.
    pub fn gf(p: u64) -> Result<Self> {
        Ok(FieldDescriptor::Prime(Modulus::new(p)?))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldDescriptor::Rational => None,
            FieldDescriptor::Prime(m) => Some(m.get()),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldDescriptor::Prime(_))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_i64(*self, 0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_i64(*self, 1)
    }

    /// Parse a decimal scalar string (`"3"`, `"-1/2"`) into this field.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let q = parse_ratio(s)?;
        FieldElement::from_ratio(*self, &q)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime(m) => write!(f, "GF({})", m.get()),
        }
    }
}

/// Canonical representative: a residue in `[0, p)` or a reduced fraction
/// with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Residue(u64),
    Ratio(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldDescriptor,
    value: Value,
}

impl FieldElement {
    pub fn from_i64(field: FieldDescriptor, v: i64) -> Self {
        let value = match field {
            FieldDescriptor::Rational => Value::Ratio(BigRational::from_integer(BigInt::from(v))),
            FieldDescriptor::Prime(m) => Value::Residue(Fp::new(m).from_i64(v)),
        };
        FieldElement { field, value }
    }

    pub fn from_ratio(field: FieldDescriptor, q: &BigRational) -> Result<Self> {
        let value = match field {
            FieldDescriptor::Rational => Value::Ratio(q.clone()),
            FieldDescriptor::Prime(m) => Value::Residue(Fp::new(m).from_ratio(q)?),
        };
        Ok(FieldElement { field, value })
    }

    /// Wraps an already-canonical value; panics if the value kind does not
    /// match the field.
    pub(crate) fn from_value(field: FieldDescriptor, value: Value) -> Self {
        match (&field, &value) {
            (FieldDescriptor::Prime(m), Value::Residue(r)) => assert!(*r < m.get()),
            (FieldDescriptor::Rational, Value::Ratio(_)) => {}
            _ => panic!("value kind does not match {field}"),
        }
        FieldElement { field, value }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Residue(r) => *r == 0,
            Value::Ratio(q) => q.is_zero(),
        }
    }

    fn binary(
        &self,
        other: &Self,
        fp: impl FnOnce(&Fp, u64, u64) -> Result<u64>,
        q: impl FnOnce(&BigRational, &BigRational) -> Result<BigRational>,
    ) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let value = match (&self.field, &self.value, &other.value) {
            (FieldDescriptor::Prime(m), Value::Residue(a), Value::Residue(b)) => {
                Value::Residue(fp(&Fp::new(*m), *a, *b)?)
            }
            (FieldDescriptor::Rational, Value::Ratio(a), Value::Ratio(b)) => Value::Ratio(q(a, b)?),
            _ => unreachable!("descriptor and value kind always agree"),
        };
        Ok(FieldElement { field: self.field, value })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| Ok(f.add(&a, &b)), |a, b| Ok(a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| Ok(f.sub(&a, &b)), |a, b| Ok(a - b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| Ok(f.mul(&a, &b)), |a, b| Ok(a * b))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if self.field == other.field && other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.binary(
            other,
            |f, a, b| Ok(f.mul(&a, &f.inv(&b))),
            |a, b| Ok(a / b),
        )
    }

    pub fn inv(&self) -> Result<Self> {
        self.field.one().div(self)
    }

    pub fn neg(&self) -> Self {
        let value = match (&self.field, &self.value) {
            (FieldDescriptor::Prime(m), Value::Residue(a)) => Value::Residue(Fp::new(*m).neg(a)),
            (_, Value::Ratio(a)) => Value::Ratio(-a),
            _ => unreachable!("descriptor and value kind always agree"),
        };
        FieldElement { field: self.field, value }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Residue(r) => write!(f, "{r}"),
            Value::Ratio(q) => f.write_str(&format_ratio(q)),
        }
    }
}

pub fn format_ratio(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("malformed scalar {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Field arithmetic used by the matrix kernels.
pub trait Arith: Sync {
    type Elem: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - b * c`, the elimination step.
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }
}

/// GF(p) with residues stored as `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(m: Modulus) -> Self {
        Fp { p: m.get() }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    fn from_ratio(&self, q: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            r.try_into().expect("residue below p fits in u64")
        };
        let den = reduce(q.denom());
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&reduce(q.numer()), &self.inv(&den)))
    }
}

impl Arith for Fp {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.reduce_i128(t0)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
}

/// The rationals, arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Q;

impl Arith for Q {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Range used when sampling rationals: numerator in `[-bound, bound]`,
/// denominator in `[-bound, bound] \ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalSampling {
    pub bound: u64,
}

impl Default for RationalSampling {
    fn default() -> Self {
        RationalSampling { bound: 1_000_000 }
    }
}

pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// Derives the seed of sub-task `stream` from a parent seed (splitmix64 of
/// the pair), so parallel workers get independent, reproducible streams.
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn sample_uniform(field: FieldDescriptor, rng: &mut SeededRng) -> FieldElement {
    sample_uniform_with(field, rng, RationalSampling::default())
}

pub fn sample_uniform_with(
    field: FieldDescriptor,
    rng: &mut SeededRng,
    sampling: RationalSampling,
) -> FieldElement {
    let value = sample_value(field, rng, sampling);
    FieldElement { field, value }
}

pub(crate) fn sample_value(
    field: FieldDescriptor,
    rng: &mut SeededRng,
    sampling: RationalSampling,
) -> Value {
    match field {
        FieldDescriptor::Prime(m) => Value::Residue(rng.gen_range(0..m.get())),
        FieldDescriptor::Rational => {
            let b = sampling.bound.min(i64::MAX as u64) as i64;
            let num = rng.gen_range(-b..=b);
            let den = loop {
                let d = rng.gen_range(-b..=b);
                if d != 0 {
                    break d;
                }
            };
            let q = BigRational::new(BigInt::from(num), BigInt::from(den));
            debug_assert!(q.denom().is_positive());
            Value::Ratio(q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::gf(p).unwrap()
    }

    #[test]
    fn worked_examples() {
        let f7 = gf(7);
        let three = FieldElement::from_i64(f7, 3);
        let five = FieldElement::from_i64(f7, 5);
        assert_eq!(three.div(&five).unwrap(), FieldElement::from_i64(f7, 2));

        let q = FieldDescriptor::Rational;
        let a = q.parse("1/3").unwrap();
        let b = q.parse("1/6").unwrap();
        assert_eq!(a.add(&b).unwrap(), q.parse("1/2").unwrap());

        let f5 = gf(5);
        assert_eq!(
            FieldElement::from_i64(f5, 4).inv().unwrap(),
            FieldElement::from_i64(f5, 4)
        );
    }

    #[test]
    fn errors() {
        let a = FieldElement::from_i64(gf(5), 1);
        let b = FieldElement::from_i64(gf(7), 1);
        assert_eq!(a.add(&b), Err(Error::MixedFields));
        assert_eq!(a.div(&gf(5).zero()), Err(Error::DivisionByZero));
        assert_eq!(FieldDescriptor::Rational.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(FieldDescriptor::gf(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldDescriptor::gf(1), Err(Error::NotPrime(1)));
        assert!(matches!(FieldDescriptor::gf(u64::MAX), Err(Error::ModulusTooLarge(_))));
        assert!(FieldDescriptor::gf(MAX_MODULUS).is_ok());
        assert_eq!(gf(5).parse("1/5"), Err(Error::DivisionByZero));
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn inverses_exhaustive_small_primes() {
        for p in (2..=31).filter(|&p| is_prime(p)) {
            let f = gf(p);
            for x in 1..p {
                let e = FieldElement::from_i64(f, x as i64);
                assert_eq!(e.mul(&e.inv().unwrap()).unwrap(), f.one(), "p={p} x={x}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let q = FieldDescriptor::Rational;
        assert_eq!(q.parse("-2/4").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse("6/-3").unwrap().to_string(), "-2");
        assert_eq!(gf(7).parse("-1").unwrap().to_string(), "6");
        assert_eq!(gf(7).parse("1/2").unwrap().to_string(), "4");
        assert!(q.parse("abc").is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let f7 = gf(7);
        let a = sample_uniform(f7, &mut seeded_rng(1));
        let b = sample_uniform(f7, &mut seeded_rng(1));
        assert_eq!(a, b);
        let Value::Residue(r) = a.value() else { panic!() };
        assert!(*r < 7);

        let mut rng = seeded_rng(99);
        for _ in 0..100 {
            let Value::Residue(r) = sample_uniform(gf(2), &mut rng).value().clone() else {
                panic!()
            };
            assert!(r < 2);
        }

        let q = FieldDescriptor::Rational;
        assert_eq!(
            sample_uniform(q, &mut seeded_rng(42)),
            sample_uniform(q, &mut seeded_rng(42))
        );
        assert_ne!(split_seed(42, 0), split_seed(42, 1));
    }

    fn any_field() -> impl Strategy<Value = FieldDescriptor> {
        prop_oneof![
            Just(FieldDescriptor::Rational),
            Just(gf(2)),
            Just(gf(7)),
            Just(gf(101)),
            Just(gf(MAX_MODULUS)),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms(field in any_field(), seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let s = RationalSampling { bound: 1000 };
            let a = sample_uniform_with(field, &mut rng, s);
            let b = sample_uniform_with(field, &mut rng, s);
            let c = sample_uniform_with(field, &mut rng, s);
            prop_assert_eq!(a.add(&b)?.add(&c)?, a.add(&b.add(&c)?)?);
            prop_assert_eq!(a.mul(&b)?.mul(&c)?, a.mul(&b.mul(&c)?)?);
            prop_assert_eq!(a.add(&b)?, b.add(&a)?);
            prop_assert_eq!(a.mul(&b)?, b.mul(&a)?);
            prop_assert_eq!(a.mul(&b.add(&c)?)?, a.mul(&b)?.add(&a.mul(&c)?)?);
            prop_assert_eq!(a.sub(&a)?, field.zero());
            prop_assert_eq!(a.add(&a.neg())?, field.zero());
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b)?.mul(&b)?, a.clone());
            }
            for x in [&a, &b, &c, &a.mul(&b)?, &a.div(&c).unwrap_or(a.clone())] {
                if let Value::Ratio(q) = x.value() {
                    prop_assert!(q.denom().is_positive());
                    prop_assert!(q.numer().gcd(q.denom()).is_one());
                }
            }
        }
    }
}
