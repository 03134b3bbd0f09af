use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Integer coefficient arithmetic for elimination. Machine integers report
/// overflow as `None` so the caller can restart in arbitrary precision.
pub(crate) trait Coeff: Clone + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Magnitude used to pick pivots; saturating for big values.
    fn magnitude(&self) -> u128;
    fn neg(&self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// Floor quotient.
    fn div_floor(&self, other: &Self) -> Self;
    fn is_multiple_of(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn magnitude(&self) -> u128 {
        self.unsigned_abs() as u128
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn div_floor(&self, other: &Self) -> Self {
        Integer::div_floor(self, other)
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        self % other == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs() == num_traits::One::one()
    }
    fn magnitude(&self) -> u128 {
        self.abs().to_u128().unwrap_or(u128::MAX)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
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
    fn div_floor(&self, other: &Self) -> Self {
        Integer::div_floor(self, other)
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        Zero::is_zero(&(self % other))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}
