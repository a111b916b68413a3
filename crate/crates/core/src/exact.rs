//! Exact scalars: big rationals and the quadratic field `Q(√2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `0!, 1!, …, n!`.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for k in 1..=n {
        acc *= k;
        out.push(acc.clone());
    }
    out
}

pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn rational(a: BigRational) -> Self {
        QSqrt2 { a, b: BigRational::zero() }
    }

    pub fn sqrt2_multiple(b: BigRational) -> Self {
        QSqrt2 { a: BigRational::zero(), b }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            ratio_to_f64(&self.a)
        } else {
            ratio_to_f64(&self.a) + std::f64::consts::SQRT_2 * ratio_to_f64(&self.b)
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if self.b.is_zero() {
            return QSqrt2::rational(&self.a * k);
        }
        QSqrt2 { a: &self.a * k, b: &self.b * k }
    }

    /// Sign of `a + b√2`, decided exactly by comparing `a²` with `2b²`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * BigInt::from(2);
        match a2.cmp(&b2) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::rational(BigRational::one())
    }
}

impl From<BigRational> for QSqrt2 {
    fn from(a: BigRational) -> Self {
        QSqrt2::rational(a)
    }
}

impl From<i64> for QSqrt2 {
    fn from(a: i64) -> Self {
        QSqrt2::rational(BigRational::from_integer(a.into()))
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        if self.b.is_zero() && rhs.b.is_zero() {
            return QSqrt2::rational(&self.a + &rhs.a);
        }
        QSqrt2 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        if self.b.is_zero() && rhs.b.is_zero() {
            return QSqrt2::rational(&self.a - &rhs.a);
        }
        QSqrt2 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        if self.b.is_zero() {
            return rhs.scale(&self.a);
        }
        if rhs.b.is_zero() {
            return self.scale(&rhs.a);
        }
        let two = BigRational::from_integer(2.into());
        QSqrt2 {
            a: &self.a * &rhs.a + &self.b * &rhs.b * two,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for QSqrt2 {
            type Output = QSqrt2;
            fn $f(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for QSqrt2 {
    /// `p/q`, `p/q·√2`, or `p/q + r/s·√2`; integers print without a denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}·√2", self.b),
            (false, false) => write!(f, "{} + {}·√2", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        rational(n, d)
    }

    #[test]
    fn arithmetic() {
        let x = QSqrt2 { a: q(1, 2), b: q(1, 3) };
        let y = QSqrt2::sqrt2_multiple(q(3, 1));
        assert_eq!(&x * &y, QSqrt2 { a: q(2, 1), b: q(3, 2) });
        let s = QSqrt2::sqrt2_multiple(q(1, 1));
        assert_eq!(&s * &s, QSqrt2::from(2));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(QSqrt2 { a: q(-7, 5), b: q(1, 1) }.signum(), 1);
        assert_eq!(QSqrt2 { a: q(-3, 2), b: q(1, 1) }.signum(), -1);
        assert_eq!(QSqrt2 { a: q(2, 1), b: q(-1, 1) }.signum(), 1);
        assert_eq!(QSqrt2::zero().signum(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(QSqrt2::from(q(-3, 8)).to_string(), "-3/8");
        assert_eq!(QSqrt2::sqrt2_multiple(q(3, 4)).to_string(), "3/4·√2");
        assert_eq!(factorials(5)[5], BigInt::from(120));
    }
}
