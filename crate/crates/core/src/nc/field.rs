use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Q;

/// Coefficient field for the span computations.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
    /// Image of a rational; `None` when the denominator vanishes.
    fn from_q(x: &Q) -> Option<Self>;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_q(x: &Q) -> Option<Self> {
        Some(x.clone())
    }
}

/// Integers modulo the Mersenne prime `2^61 − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub const P: u64 = (1 << 61) - 1;

    pub fn new(x: u64) -> Self {
        Self(x % Self::P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let p = Self::P as u128;
        let folded = (x & p) + (x >> 61);
        let folded = (folded & p) + (folded >> 61);
        (folded as u64) % Self::P
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(x: &BigInt) -> Self {
        let r = (x.abs() % BigInt::from(Self::P)).to_u64().expect("residue fits");
        let r = Self(r);
        if x.is_negative() {
            Field::neg(&r)
        } else {
            r
        }
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Self(0)
    }
    fn one() -> Self {
        Self(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Self(if s >= Self::P { s - Self::P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Self(if self.0 >= other.0 { self.0 - other.0 } else { self.0 + Self::P - other.0 })
    }
    fn mul(&self, other: &Self) -> Self {
        Self(Self::reduce(self.0 as u128 * other.0 as u128))
    }
    fn neg(&self) -> Self {
        Self(if self.0 == 0 { 0 } else { Self::P - self.0 })
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0 != 0);
        self.pow(Self::P - 2)
    }
    fn from_q(x: &Q) -> Option<Self> {
        let den = Self::from_bigint(x.denom());
        if den.is_zero() {
            return None;
        }
        Some(Field::mul(&Self::from_bigint(x.numer()), &den.inv()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn fp_inverse() {
        for x in [1u64, 2, 3, 12345, Fp::P - 1] {
            let a = Fp::new(x);
            assert_eq!(a.mul(&a.inv()), Fp::one());
        }
    }

    #[test]
    fn fp_from_rational() {
        let half = Q::new(BigInt::from(1), BigInt::from(2));
        let h = Fp::from_q(&half).unwrap();
        assert_eq!(h.add(&h), Fp::one());
        let m = Fp::from_q(&Q::from_integer(BigInt::from(-3))).unwrap();
        assert_eq!(m.add(&Fp::new(3)), Fp::zero());
    }
}
