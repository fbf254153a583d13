//! Minimal commutative ring interface shared by every coefficient type in the
//! crate.
//!
//! Elements carry whatever context they need (a field descriptor, a variable
//! count, ...), so constants are produced from an existing element through the
//! `*_like` constructors instead of from a global type-level identity.

use std::fmt;

/// A commutative ring with identity whose elements know their own context.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    #[allow(clippy::wrong_self_convention)]
    fn from_int_like(&self, n: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;

    /// Characteristic of the ring (every ring used here has prime characteristic).
    fn characteristic(&self) -> u64;

    /// Multiplicative inverse, when it exists.
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&self.from_int_like(n))
    }
}

/// Rings in which every non-zero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            self.try_inv()
        }
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Sum of an iterator of ring elements, seeded with an explicit zero.
pub fn sum<'a, R: Ring>(zero: &R, items: impl IntoIterator<Item = &'a R>) -> R {
    items.into_iter().fold(zero.clone(), |acc, x| acc.add(x))
}
