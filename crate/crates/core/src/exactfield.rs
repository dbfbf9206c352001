//! Exact scalars: reduced rationals of arbitrary precision, or residues
//! modulo a small prime.
//!
//! Rationals whose numerator and denominator fit in `i64` are kept inline;
//! anything larger is promoted to a boxed [`BigRational`] and demoted again
//! as soon as it fits. The representation is canonical, so equality and
//! hashing are structural.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted prime modulus. Residues and their products fit in `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("mixed field operands: {0} and {1}")]
    Mismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported maximum {MAX_PRIME}")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// The coefficient field: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime { p: u64 },
}

impl Field {
    /// A prime field, checked for primality by trial division.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p > MAX_PRIME {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime { p })
    }

    /// Re-validates a field that may have come from deserialization.
    pub fn validated(self) -> Result<Field, FieldError> {
        match self {
            Field::Rational => Ok(self),
            Field::Prime { p } => Field::prime(p),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar(Repr::Small { num: n, den: 1 }),
            Field::Prime { p } => Scalar(Repr::Mod {
                r: n.rem_euclid(p as i64) as u32,
                p: p as u32,
            }),
        }
    }

    /// Embeds the fraction `num/den`.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::from_big(BigRational::new(num.clone(), den.clone()))),
            Field::Prime { p } => {
                let n = self.reduce_big(num, p);
                let d = self.reduce_big(den, p);
                n.try_mul(&d.inv()?)
            }
        }
    }

    fn reduce_big(self, n: &BigInt, p: u64) -> Scalar {
        let r = n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits");
        Scalar(Repr::Mod { r: r as u32, p: p as u32 })
    }

    /// Parses an integer or an `a/b` fraction.
    pub fn parse(self, text: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::Parse(text.to_string());
        let t = text.trim();
        let (n, d) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        self.from_fraction(&n, &d).map_err(|e| match e {
            FieldError::DivisionByZero => bad(),
            other => other,
        })
    }

    pub(crate) fn check(self, other: Field) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self, other))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 || p % 3 == 0 {
        return false;
    }
    let mut k = 5u64;
    while k * k <= p {
        if p % k == 0 || p % (k + 2) == 0 {
            return false;
        }
        k += 6;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced fraction, `den > 0`, `gcd(|num|, den) = 1`.
    Small { num: i64, den: i64 },
    /// Only used when the reduced fraction does not fit `Small`.
    Big(Box<BigRational>),
    /// Residue `r < p`.
    Mod { r: u32, p: u32 },
}

/// An element of a [`Field`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn field(&self) -> Field {
        match self.0 {
            Repr::Small { .. } | Repr::Big(_) => Field::Rational,
            Repr::Mod { p, .. } => Field::Prime { p: p as u64 },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. } | Repr::Mod { r: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 } | Repr::Mod { r: 1, .. })
    }

    fn from_big(q: BigRational) -> Scalar {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(num), Some(den)) => Scalar(Repr::Small { num, den }),
            _ => Scalar(Repr::Big(Box::new(q))),
        }
    }

    fn from_i128(num: i128, den: i128) -> Scalar {
        debug_assert!(den > 0);
        let g = num.gcd(&den);
        let (num, den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Scalar(Repr::Small { num, den }),
            _ => Scalar(Repr::Big(Box::new(BigRational::new_raw(num.into(), den.into())))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw((*num).into(), (*den).into()),
            Repr::Big(q) => (**q).clone(),
            Repr::Mod { .. } => unreachable!("modular scalar has no rational value"),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        use Repr::*;
        Ok(match (&self.0, &other.0) {
            (Small { num: a, den: b }, Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    match a.checked_add(*c) {
                        Some(s) => Scalar(Small { num: s, den: 1 }),
                        None => Scalar::from_i128(*a as i128 + *c as i128, 1),
                    }
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Scalar::from_i128(a * d + c * b, b * d)
                }
            }
            (Mod { r: a, p }, Mod { r: b, p: q }) if p == q => {
                let s = (*a as u64 + *b as u64) % *p as u64;
                Scalar(Mod { r: s as u32, p: *p })
            }
            (Small { .. } | Big(_), Small { .. } | Big(_)) => {
                Scalar::from_big(self.to_big() + other.to_big())
            }
            _ => return Err(FieldError::Mismatch(self.field(), other.field())),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        use Repr::*;
        Ok(match (&self.0, &other.0) {
            (Small { num: a, den: b }, Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    match a.checked_mul(*c) {
                        Some(s) => Scalar(Small { num: s, den: 1 }),
                        None => Scalar::from_i128(*a as i128 * *c as i128, 1),
                    }
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Scalar::from_i128(a * c, b * d)
                }
            }
            (Mod { r: a, p }, Mod { r: b, p: q }) if p == q => {
                let s = (*a as u64 * *b as u64) % *p as u64;
                Scalar(Mod { r: s as u32, p: *p })
            }
            (Small { .. } | Big(_), Small { .. } | Big(_)) => {
                Scalar::from_big(self.to_big() * other.to_big())
            }
            _ => return Err(FieldError::Mismatch(self.field(), other.field())),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_add(&-other)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small { num, den } => {
                let (n, d) = if *num < 0 {
                    (-(*den as i128), -(*num as i128))
                } else {
                    (*den as i128, *num as i128)
                };
                Scalar::from_i128(n, d)
            }
            Repr::Big(q) => Scalar::from_big(q.recip()),
            Repr::Mod { r, p } => Scalar(Repr::Mod { r: mod_inverse(*r, *p), p: *p }),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_mul(&other.inv()?)
    }

    /// `self += a * b`, the inner step of every contraction.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        use Repr::*;
        if let (Small { num: x, den: 1 }, Small { num: y, den: 1 }, Small { num: z, den: 1 }) =
            (&mut self.0, &a.0, &b.0)
        {
            if let Some(s) = y.checked_mul(*z).and_then(|t| t.checked_add(*x)) {
                *x = s;
                return;
            }
        }
        if let (Mod { r: x, p }, Mod { r: y, p: q }, Mod { r: z, p: s }) =
            (&mut self.0, &a.0, &b.0)
        {
            if p == q && q == s {
                *x = ((*x as u64 + *y as u64 * *z as u64) % *p as u64) as u32;
                return;
            }
        }
        *self = &*self + &(a * b);
    }
}

fn mod_inverse(r: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut m, mut new_m) = (p as i64, r as i64);
    while new_m != 0 {
        let q = m / new_m;
        (t, new_t) = (new_t, t - q * new_t);
        (m, new_m) = (new_m, m - q * new_m);
    }
    t.rem_euclid(p as i64) as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Mod { r, .. } => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Mod { p, .. } => write!(f, "{self} (mod {p})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator impls panic on mixed fields; callers that cannot rule that out
// use the `try_*` methods.

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Scalar(Repr::Small { num: n, den: *den }),
                None => Scalar::from_big(-self.to_big()),
            },
            Repr::Big(q) => Scalar::from_big(-(**q).clone()),
            Repr::Mod { r, p } => Scalar(Repr::Mod { r: (*p - *r) % *p, p: *p }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) =
            (&mut self.0, &rhs.0)
        {
            if let Some(s) = a.checked_add(*b) {
                *a = s;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &-rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        Field::Rational.parse(s).unwrap()
    }

    fn fp(p: u64, n: i64) -> Scalar {
        Field::prime(p).unwrap().from_i64(n)
    }

    #[test]
    fn rational_examples() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!(&q("2/3") * &q("3/4"), q("1/2"));
        assert_eq!(q("2/3").inv().unwrap(), q("3/2"));
        assert_eq!(q("1").inv().unwrap(), q("1"));
        assert_eq!(q("-4/6"), q("2/-3"));
        let x = q("-7/9");
        assert_eq!(&x + &Field::Rational.zero(), x);
        assert_eq!(&x * &Field::Rational.one(), x);
    }

    #[test]
    fn modular_examples() {
        assert_eq!(&fp(7, 5) + &fp(7, 4), fp(7, 2));
        assert_eq!(&fp(5, 3) * &fp(5, 4), fp(5, 2));
        assert_eq!(fp(7, 3).inv().unwrap(), fp(7, 5));
        assert_eq!(fp(7, -1), fp(7, 6));
        assert_eq!(Field::prime(7).unwrap().parse("1/3").unwrap(), fp(7, 5));
    }

    #[test]
    fn errors() {
        assert_eq!(q("0").inv(), Err(FieldError::DivisionByZero));
        assert_eq!(fp(11, 22).inv(), Err(FieldError::DivisionByZero));
        assert!(matches!(q("1").try_add(&fp(7, 1)), Err(FieldError::Mismatch(..))));
        assert!(matches!(fp(5, 1).try_mul(&fp(7, 1)), Err(FieldError::Mismatch(..))));
        assert_eq!(Field::prime(10005), Err(FieldError::NotPrime(10005)));
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
        assert!(Field::prime(10007).is_ok());
        assert!(matches!(Field::prime(1 << 33), Err(FieldError::ModulusTooLarge(_))));
        assert!(Field::Rational.parse("1/0").is_err());
        assert!(Field::Rational.parse("0.5").is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Field::Rational.from_i64(i64::MAX);
        let two = Field::Rational.from_i64(2);
        let s = &big * &two;
        assert_eq!(s.to_string(), "18446744073709551614");
        let back = s.try_div(&two).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let mut acc = big.clone();
        acc.add_product(&big, &two);
        assert_eq!(acc, &big * &Field::Rational.from_i64(3));
        let min = Field::Rational.from_i64(i64::MIN);
        assert_eq!(-(-&min), min);
    }

    fn arb_rational() -> impl Strategy<Value = Scalar> {
        (-1_000_000i64..1_000_000, 1i64..1000).prop_map(|(n, d)| {
            Field::Rational.from_fraction(&n.into(), &d.into()).unwrap()
        })
    }

    fn arb_mod() -> impl Strategy<Value = Scalar> {
        (0i64..10007).prop_map(|n| fp(10007, n))
    }

    fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(&(a + b) + c, a + &(b + c));
        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        assert_eq!(a * b, b * a);
        assert_eq!(&(a - b) + b, *a);
        if !a.is_zero() {
            assert!((a * &a.inv().unwrap()).is_one());
        }
        let mut acc = c.clone();
        acc.add_product(a, b);
        assert_eq!(acc, c + &(a * b));
    }

    proptest! {
        #![proptest_config(ProptestConfig { rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            field_axioms(&a, &b, &c);
        }

        #[test]
        fn modular_field_axioms(a in arb_mod(), b in arb_mod(), c in arb_mod()) {
            field_axioms(&a, &b, &c);
        }

        #[test]
        fn normalization_is_canonical(n in -500i64..500, d in 1i64..500, k in 1i64..50) {
            let a = Field::Rational.from_fraction(&n.into(), &d.into()).unwrap();
            let b = Field::Rational.from_fraction(&(n * k).into(), &(d * k).into()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
