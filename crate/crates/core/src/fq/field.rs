use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// The prime field `F_q`, `q < 256`. Elements are stored as `u8` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fq {
    q: u8,
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q > u8::MAX as u64 {
            return Err(Error::NotPrime(q));
        }
        Ok(Fq { q: q as u8 })
    }

    pub fn order(self) -> u64 {
        self.q as u64
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q as u16 - b as u16) % self.q as u16) as u8
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    /// Inverse by Fermat; `a` must be nonzero.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!a.is_multiple_of(self.q));
        let mut base = a;
        let mut exp = self.q - 2;
        let mut acc = 1u8;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn scalar(self, value: u64) -> FqScalar {
        FqScalar { value: (value % self.q as u64) as u8, field: self }
    }
}

/// An element of `F_q` that carries its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FqScalar {
    value: u8,
    field: Fq,
}

impl FqScalar {
    pub fn value(self) -> u8 {
        self.value
    }

    pub fn field(self) -> Fq {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FqScalar> {
        (!self.is_zero()).then(|| FqScalar { value: self.field.inv(self.value), field: self.field })
    }
}

impl std::ops::Add for FqScalar {
    type Output = FqScalar;
    fn add(self, rhs: FqScalar) -> FqScalar {
        assert_eq!(self.field, rhs.field, "mixed fields");
        FqScalar { value: self.field.add(self.value, rhs.value), field: self.field }
    }
}

impl std::ops::Sub for FqScalar {
    type Output = FqScalar;
    fn sub(self, rhs: FqScalar) -> FqScalar {
        assert_eq!(self.field, rhs.field, "mixed fields");
        FqScalar { value: self.field.sub(self.value, rhs.value), field: self.field }
    }
}

impl std::ops::Mul for FqScalar {
    type Output = FqScalar;
    fn mul(self, rhs: FqScalar) -> FqScalar {
        assert_eq!(self.field, rhs.field, "mixed fields");
        FqScalar { value: self.field.mul(self.value, rhs.value), field: self.field }
    }
}

impl std::ops::Neg for FqScalar {
    type Output = FqScalar;
    fn neg(self) -> FqScalar {
        FqScalar { value: self.field.neg(self.value), field: self.field }
    }
}

impl fmt::Display for FqScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
