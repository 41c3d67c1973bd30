//! Arithmetic in the prime fields `F_p`, `2 <= p <= 13`.

use core::fmt;

use crate::error::AlgebraError;

/// Largest supported modulus.
pub const MAX_MODULUS: u8 = 13;

/// A field element, always stored reduced into `0..p`.
pub type Scalar = u8;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !(2..=u32::from(MAX_MODULUS)).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u8 })
    }

    #[inline]
    pub fn modulus(self) -> u8 {
        self.p
    }

    /// Reduces an arbitrary integer into `0..p`.
    #[inline]
    pub fn reduce(self, value: i64) -> Scalar {
        value.rem_euclid(i64::from(self.p)) as Scalar
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        ((u16::from(a) + u16::from(b)) % u16::from(self.p)) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((u16::from(a) * u16::from(b)) % u16::from(self.p)) as Scalar
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // p is tiny, so a^(p-2) by repeated multiplication is enough.
        let mut acc = 1;
        for _ in 0..self.p - 2 {
            acc = self.mul(acc, a);
        }
        Some(acc)
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, odd: bool) -> Scalar {
        if odd {
            self.neg(1)
        } else {
            1
        }
    }

    pub fn elements(self) -> impl Iterator<Item = Scalar> + Clone {
        0..self.p
    }

    pub fn nonzero_elements(self) -> impl Iterator<Item = Scalar> + Clone {
        1..self.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
