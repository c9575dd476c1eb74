use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus. Products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    p: u64,
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field { p })
    }

    /// Panics on a non-prime modulus; meant for literals in tests and suites.
    pub fn prime(p: u64) -> Self {
        Field::new(p).expect("modulus must be a prime <= 2^31")
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce_signed(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        assert!(
            !a.is_multiple_of(self.p),
            "zero has no inverse in F_{}",
            self.p
        );
        self.pow(a, self.p - 2)
    }

    pub fn elem(self, value: u64) -> FieldElem {
        FieldElem {
            value: self.reduce(value),
            modulus: self.p,
        }
    }

    /// Number of vectors in `F_p^dim`, or `None` on overflow.
    pub fn space_size(self, dim: usize) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..dim {
            acc = acc.checked_mul(self.p)?;
        }
        Some(acc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    pub value: u64,
    pub modulus: u64,
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Iterates over every vector of `F_p^dim` in lexicographic order
/// (last coordinate fastest).
pub fn all_vectors(field: Field, dim: usize) -> impl Iterator<Item = Vec<u64>> {
    let p = field.modulus();
    let total = field.space_size(dim).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; dim];
        for slot in v.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_tiny_moduli() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(0).is_err());
        assert!(Field::new((1 << 31) + 1).is_err());
        assert!(Field::new(2_147_483_647).is_ok());
    }

    #[test]
    fn inverses_multiply_to_one() {
        let f = Field::prime(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        let big = Field::prime(2_147_483_647);
        let a = 123_456_789;
        assert_eq!(big.mul(a, big.inv(a)), 1);
    }

    #[test]
    fn vector_enumeration_covers_space() {
        let f = Field::prime(3);
        let all: Vec<_> = all_vectors(f, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[8], vec![2, 2]);
        assert_eq!(all_vectors(f, 0).count(), 1);
    }
}
