//! Exact scalar fields: rationals over big integers and prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero in scalar {0:?}")]
    ZeroDenominator(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
}

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("F"))
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let p: u64 = rest.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
        if !is_prime(p) {
            return Err(ScalarError::Parse(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field. Every matrix and morphism in the crate is generic over it.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn spec() -> FieldSpec;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    /// Parses `"a"` or `"a/b"`.
    fn parse_scalar(s: &str) -> Result<Self, ScalarError>;

    /// Serialized form: `"a"` for integers, `"a/b"` in lowest terms otherwise.
    fn to_scalar_string(&self) -> String {
        self.to_string()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, if finite and at most `bound`.
    fn order(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut x = self.clone();
        for k in 1..=bound {
            if x.is_one() {
                return Some(k);
            }
            x = x * self.clone();
        }
        None
    }
}

fn split_fraction(s: &str) -> Result<(BigInt, BigInt), ScalarError> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
    let d: BigInt = d.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
    if d.is_zero() {
        return Err(ScalarError::ZeroDenominator(s.to_string()));
    }
    Ok((n, d))
}

impl Field for BigRational {
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarError> {
        let (n, d) = split_fraction(s)?;
        Ok(BigRational::new(n, d))
    }

    fn order(&self, bound: u64) -> Option<u64> {
        if self.is_one() {
            Some(1)
        } else if *self == -BigRational::one() {
            (bound >= 2).then_some(2)
        } else {
            None
        }
    }
}

/// Residues modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(&self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn spec() -> FieldSpec {
        FieldSpec::PrimeField(P)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat
            Some(Field::pow(self, P - 2))
        }
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarError> {
        let (n, d) = split_fraction(s)?;
        let p = BigInt::from(P);
        let red = |x: BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            r.to_string().parse().unwrap_or(0)
        };
        let n = Fp::<P>(red(n));
        let d = Fp::<P>(red(d));
        let di = d
            .inv()
            .ok_or_else(|| ScalarError::ZeroDenominator(s.to_string()))?;
        Ok(n * di)
    }
}
