//! Number types the tableau can run on.
//!
//! [`SmallRational`] keeps numerator and denominator in `i64` and reports
//! overflow instead of wrapping; the solver then restarts on [`Rational`].

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub(crate) trait Scalar: Clone + PartialEq + PartialOrd + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn div(&self, other: &Self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
}

/// `num / den` in lowest terms with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SmallRational {
    num: i64,
    den: i64,
}

impl SmallRational {
    fn reduce(num: i128, den: i128) -> Option<Self> {
        debug_assert!(den != 0);
        if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
            if n != i64::MIN && d != i64::MIN {
                let g = n.gcd(&d);
                let (n, d) = if d < 0 {
                    (-n / g, -d / g)
                } else {
                    (n / g, d / g)
                };
                return SmallRational::checked(n, d);
            }
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        SmallRational::checked(i64::try_from(num).ok()?, i64::try_from(den).ok()?)
    }

    // i64::MIN is excluded so negation never overflows.
    fn checked(num: i64, den: i64) -> Option<Self> {
        (num != i64::MIN).then_some(SmallRational { num, den })
    }
}

impl PartialOrd for SmallRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        Some(lhs.cmp(&rhs))
    }
}

impl Scalar for SmallRational {
    fn zero() -> Self {
        SmallRational { num: 0, den: 1 }
    }
    fn one() -> Self {
        SmallRational { num: 1, den: 1 }
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        SmallRational::checked(r.numer().to_i64()?, r.denom().to_i64()?)
    }
    fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn is_positive(&self) -> bool {
        self.num > 0
    }
    fn is_negative(&self) -> bool {
        self.num < 0
    }
    fn neg(&self) -> Self {
        SmallRational {
            num: -self.num,
            den: self.den,
        }
    }
    fn add(&self, o: &Self) -> Option<Self> {
        if self.den == o.den {
            return SmallRational::reduce(self.num as i128 + o.num as i128, self.den as i128);
        }
        let num = (self.num as i128)
            .checked_mul(o.den as i128)?
            .checked_add((o.num as i128).checked_mul(self.den as i128)?)?;
        SmallRational::reduce(num, self.den as i128 * o.den as i128)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        SmallRational::reduce(
            self.num as i128 * o.num as i128,
            self.den as i128 * o.den as i128,
        )
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if o.num == 0 {
            return None;
        }
        SmallRational::reduce(
            self.num as i128 * o.den as i128,
            self.den as i128 * o.num as i128,
        )
    }
}
