//! Exact scalar arithmetic over a prime field or the rationals.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{EngineError, Result};

/// Coefficient field: `F_p` for an odd prime `p` (the default mode) or the
/// rationals for small certification runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum FieldMode {
    Prime(u64),
    Rationals,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Field {
    mode: FieldMode,
}

/// The prime used when no field is specified. Large enough that accidental
/// characteristic collisions with small examples are implausible.
pub const DEFAULT_PRIME: u64 = 32003;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Prime field `F_p`. Rejects `p = 2` because sign errors are invisible
    /// in characteristic 2; use [`Field::prime_allow_char2`] to override.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(EngineError::CharTwoRejected);
        }
        Field::prime_allow_char2(p)
    }

    pub fn prime_allow_char2(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(EngineError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(EngineError::InvalidAlgebra(format!(
                "prime {p} too large (must fit in 31 bits)"
            )));
        }
        Ok(Field {
            mode: FieldMode::Prime(p),
        })
    }

    pub fn rationals() -> Field {
        Field {
            mode: FieldMode::Rationals,
        }
    }

    pub fn default_prime() -> Field {
        Field::prime(DEFAULT_PRIME).expect("default prime is prime")
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn characteristic(&self) -> u64 {
        match self.mode {
            FieldMode::Prime(p) => p,
            FieldMode::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.mode {
            FieldMode::Prime(_) => Scalar::Fp(0),
            FieldMode::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.mode {
            FieldMode::Prime(_) => Scalar::Fp(1),
            FieldMode::Rationals => Scalar::Rat(Box::new(BigRational::one())),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.mode {
            FieldMode::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp(r)
            }
            FieldMode::Rationals => Scalar::Rat(Box::new(BigRational::from_integer(n.into()))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(EngineError::DimensionMismatch("zero denominator".into()));
        }
        let d = self.from_i64(den);
        let inv = self.inv(&d)?;
        Ok(self.mul(&self.from_i64(num), &inv))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.mode, a, b) {
            (FieldMode::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (FieldMode::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(Box::new(x.as_ref() + y.as_ref()))
            }
            _ => panic!("field/scalar mode mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.mode, a) {
            (FieldMode::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldMode::Rationals, Scalar::Rat(x)) => Scalar::Rat(Box::new(-x.as_ref())),
            _ => panic!("field/scalar mode mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.mode, a, b) {
            (FieldMode::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % p as u128) as u64)
            }
            (FieldMode::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(Box::new(x.as_ref() * y.as_ref()))
            }
            _ => panic!("field/scalar mode mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(EngineError::DimensionMismatch(
                "inverse of zero field element".into(),
            ));
        }
        Ok(match (self.mode, a) {
            (FieldMode::Prime(p), Scalar::Fp(x)) => Scalar::Fp(pow_mod(*x, p - 2, p)),
            (FieldMode::Rationals, Scalar::Rat(x)) => {
                Scalar::Rat(Box::new(BigRational::one() / x.as_ref()))
            }
            _ => panic!("field/scalar mode mismatch"),
        })
    }

    /// Multiplicative sign: `(-1)^k`.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    /// Canonical text form used by the cache and CSV writers.
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || EngineError::DimensionMismatch(format!("bad scalar literal '{text}'"));
        if let Some((n, d)) = text.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            self.from_ratio(n, d)
        } else {
            let n: i64 = text.trim().parse().map_err(|_| bad())?;
            Ok(self.from_i64(n))
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// A field element. Prime-field values are stored reduced to `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Fp(u64),
    Rat(Box<BigRational>),
}

impl Scalar {
    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Signed magnitude used only for deterministic display ordering.
    pub fn display_key(&self) -> String {
        match self {
            Scalar::Fp(x) => format!("{x:020}"),
            Scalar::Rat(r) => format!("{}/{}", r.numer().abs(), r.denom()),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(Box::new(r))
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rat(Box::new(BigRational::from_integer(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(2));
        assert_eq!(f.neg(&a), f.from_i64(2));
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
    }

    #[test]
    fn char_two_rejected_without_override() {
        assert!(matches!(Field::prime(2), Err(EngineError::CharTwoRejected)));
        assert!(Field::prime_allow_char2(2).is_ok());
    }

    #[test]
    fn nonprime_rejected() {
        assert!(matches!(Field::prime(91), Err(EngineError::NotPrime(91))));
    }

    #[test]
    fn rational_arithmetic() {
        let f = Field::rationals();
        let half = f.from_ratio(1, 2).unwrap();
        assert_eq!(f.add(&half, &half), f.one());
        assert_eq!(f.render(&half), "1/2");
    }

    #[test]
    fn default_prime_is_32003() {
        assert_eq!(Field::default_prime().characteristic(), 32003);
    }
}
