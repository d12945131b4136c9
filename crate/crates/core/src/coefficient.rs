//! Exact Gaussian-rational coefficients.
//!
//! Rationals stay in an `i64` fraction while they fit and move to big integers
//! on overflow, so path counts in high wiring powers remain exact.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, One, Signed, ToPrimitive, Zero};

/// An exact rational. `Big` is only used when the reduced fraction does not
/// fit in `i64`, which keeps the representation canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Rational {
        Rational::Small(Ratio::zero())
    }

    pub fn one() -> Rational {
        Rational::Small(Ratio::one())
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational::Small(Ratio::from_integer(n))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Rational {
        Rational::from_big(BigRational::new(numer, denom))
    }

    pub fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(r) if r.is_one())
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_negative(),
            Rational::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.numer()),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.denom()),
            Rational::Big(r) => r.denom().clone(),
        }
    }
}

impl Add for &Rational {
    type Output = Rational;

    fn add(self, other: &Rational) -> Rational {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(s) = a.checked_add(b) {
                return Rational::Small(s);
            }
        }
        Rational::from_big(self.to_big() + other.to_big())
    }
}

impl Mul for &Rational {
    type Output = Rational;

    fn mul(self, other: &Rational) -> Rational {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(p) = a.checked_mul(b) {
                return Rational::Small(p);
            }
        }
        Rational::from_big(self.to_big() * other.to_big())
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(-r),
            _ => Rational::from_big(-self.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => write!(f, "{r}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub re: Rational,
    pub im: Rational,
}

impl Coefficient {
    pub fn new(re: Rational, im: Rational) -> Coefficient {
        Coefficient { re, im }
    }

    pub fn zero() -> Coefficient {
        Coefficient::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Coefficient {
        Coefficient::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Coefficient {
        Coefficient::new(Rational::from_integer(n), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Coefficient {
        Coefficient::new(self.re.clone(), -&self.im)
    }

    /// The value as a positive integer, if it is one and fits.
    pub fn as_positive_integer(&self) -> Option<u64> {
        match (&self.re, self.im.is_zero()) {
            (Rational::Small(r), true) if r.is_integer() && *r.numer() > 0 => {
                Some(*r.numer() as u64)
            }
            _ => None,
        }
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;

    fn add(self, other: &Coefficient) -> Coefficient {
        Coefficient::new(&self.re + &other.re, &self.im + &other.im)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;

    fn mul(self, other: &Coefficient) -> Coefficient {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_real() && other.is_real() {
            return Coefficient::new(&self.re * &other.re, Rational::zero());
        }
        let re = &(&self.re * &other.re) + &-(&(&self.im * &other.im));
        let im = &(&self.re * &other.im) + &(&self.im * &other.re);
        Coefficient::new(re, im)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient::new(-&self.re, -&self.im)
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_integer(n)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{} i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{} - {} i", self.re, -&self.im)
        } else {
            write!(f, "{} + {} i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fractions_are_reduced() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(format!("{}", q(6, 4)), "3/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sum = &big + &big;
        assert!(matches!(sum, Rational::Big(_)));
        let back = &sum + &-&big;
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(_)));
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = Coefficient::new(Rational::one(), Rational::one());
        let b = a.conj();
        assert_eq!(&a * &b, Coefficient::from_integer(2));
        assert_eq!(format!("{a}"), "1 + 1 i");
        assert_eq!(format!("{b}"), "1 - 1 i");
        assert!((&a + &-&a).is_zero());
        assert_eq!(Coefficient::from_integer(3).as_positive_integer(), Some(3));
        assert_eq!(Coefficient::from_integer(-3).as_positive_integer(), None);
    }

    #[test]
    fn powers_of_two_stay_exact() {
        let two = Coefficient::from_integer(2);
        let mut acc = Coefficient::one();
        for _ in 0..200 {
            acc = &acc * &two;
        }
        assert_eq!(acc.re.to_big(), BigRational::from_integer(BigInt::from(2).pow(200)));
    }
}
