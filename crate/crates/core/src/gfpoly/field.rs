use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::PolyError;

/// Largest admissible modulus (exclusive). Products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The prime field `F_p`, `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p >= MAX_MODULUS {
            return Err(PolyError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, value: i64) -> FpElem {
        FpElem {
            value: self.reduce(value),
            p: self.p,
        }
    }

    #[inline]
    pub(crate) fn reduce(&self, value: i64) -> u64 {
        value.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub(crate) fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse via Fermat's little theorem. `a` must be nonzero.
    pub(crate) fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = PolyError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

/// A residue in `[0, p)` together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    p: u64,
}

impl FpElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn inv(&self) -> Option<FpElem> {
        self.field().inv(self.value).map(|value| FpElem { value, p: self.p })
    }

    pub fn pow(&self, exp: u64) -> FpElem {
        FpElem {
            value: self.field().pow(self.value, exp),
            p: self.p,
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! fp_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FpElem {
            type Output = FpElem;

            fn $method(self, rhs: FpElem) -> FpElem {
                assert_eq!(self.p, rhs.p, "FpElem moduli differ");
                FpElem {
                    value: self.field().$method(self.value, rhs.value),
                    p: self.p,
                }
            }
        }
    };
}

fp_binop!(Add, add);
fp_binop!(Sub, sub);
fp_binop!(Mul, mul);

impl Neg for FpElem {
    type Output = FpElem;

    fn neg(self) -> FpElem {
        FpElem {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }
}
