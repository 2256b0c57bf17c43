//! Exact scalar arithmetic.
//!
//! Fields are carrier values (contexts), not bare types: a prime field needs
//! its modulus at runtime, so operations go through `&self`. The two
//! implementations are `PrimeField` (F_p, p a u64 prime below 2^31, with
//! u128 intermediates) and `Rationals` (arbitrary-precision Q backed by
//! num-rational). No floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Runtime description of a field, used for dispatch and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

/// Exact field operations over an associated element type.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; None exactly on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Parse "p" or "p/q" (integers, optional sign). Used by the file format.
    fn parse(&self, s: &str) -> Result<Self::Elem, String>;
    fn render(&self, a: &Self::Elem) -> String;
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;
    /// All field elements when the field is small enough to enumerate.
    fn enumerate(&self, limit: usize) -> Option<Vec<Self::Elem>>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// F_p with elements stored as canonical representatives in 0..p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

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

impl PrimeField {
    /// Fails if `p` is not prime or exceeds 2^31 (the bound keeps products in u128 comfortably).
    pub fn new(p: u64) -> Result<Self, String> {
        if p > (1 << 31) {
            return Err(format!("modulus {p} too large (max 2^31)"));
        }
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
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
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on (a, p); p prime so gcd is 1.
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let p = self.p as i128;
        Some((((s0 % p) + p) % p) as u64)
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn parse(&self, s: &str) -> Result<u64, String> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| format!("bad numerator {num:?}"))?;
            let d: i64 = den.trim().parse().map_err(|_| format!("bad denominator {den:?}"))?;
            let dv = self.reduce_i64(d);
            let di = self.inv(&dv).ok_or_else(|| format!("denominator {d} is 0 mod {}", self.p))?;
            Ok(self.mul(&self.reduce_i64(n), &di))
        } else {
            let n: i64 = s.parse().map_err(|_| format!("bad scalar {s:?}"))?;
            Ok(self.reduce_i64(n))
        }
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn enumerate(&self, limit: usize) -> Option<Vec<u64>> {
        if self.p as usize <= limit {
            Some((0..self.p).collect())
        } else {
            None
        }
    }
}

/// The rational numbers with arbitrary-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse(&self, s: &str) -> Result<BigRational, String> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| format!("bad numerator {num:?}"))?;
            let d: BigInt = den.trim().parse().map_err(|_| format!("bad denominator {den:?}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        } else {
            let n: BigInt = s.parse().map_err(|_| format!("bad scalar {s:?}"))?;
            Ok(BigRational::from_integer(n))
        }
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn enumerate(&self, _limit: usize) -> Option<Vec<BigRational>> {
        None
    }
}

/// Signedness helper used by tests that scale rational matrices to integers.
pub fn rational_is_negative(a: &BigRational) -> bool {
    a.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composite_and_large() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new((1 << 31) + 1).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(1_000_000_007).is_ok());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.neg(&3), 4);
        assert_eq!(f.mul(&5, &4), 6);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_int(-1), 6);
        for a in 1..7u64 {
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), 1);
        }
    }

    #[test]
    fn prime_field_parse_handles_fractions() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.parse("3").unwrap(), 3);
        assert_eq!(f.parse("-1").unwrap(), 4);
        assert_eq!(f.parse("1/2").unwrap(), 3); // 2 * 3 = 6 = 1 mod 5
        assert!(f.parse("1/5").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn rational_arithmetic_and_parse() {
        let q = Rationals;
        let half = q.parse("1/2").unwrap();
        let third = q.parse("1/3").unwrap();
        let sum = q.add(&half, &third);
        assert_eq!(q.render(&sum), "5/6");
        assert_eq!(q.render(&q.inv(&sum).unwrap()), "6/5");
        assert_eq!(q.render(&q.from_int(-4)), "-4");
        assert!(q.parse("1/0").is_err());
        assert_eq!(q.parse("-2/4").unwrap(), q.parse("-1/2").unwrap());
    }

    #[test]
    fn field_specs_render() {
        assert_eq!(PrimeField::new(2).unwrap().spec().to_string(), "F2");
        assert_eq!(Rationals.spec().to_string(), "Q");
    }

    #[test]
    fn enumeration_only_for_small_fields() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.enumerate(16).unwrap(), vec![0, 1, 2]);
        assert!(PrimeField::new(101).unwrap().enumerate(16).is_none());
        assert!(Rationals.enumerate(16).is_none());
    }
}
