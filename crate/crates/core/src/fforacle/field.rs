use serde::Serialize;

use crate::error::{Error, Result};

/// The prime field `F_q`, `q ∈ {2, 3, 5, 7}`, with elements `0..q` as `u8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    q: u8,
    #[serde(skip)]
    inv: [u8; 8],
    #[serde(skip)]
    primitive: u8,
    #[serde(skip)]
    product: [u8; 64],
}

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !SUPPORTED_PRIMES.contains(&q) {
            return Err(Error::Unsupported(format!("field size {q}")));
        }
        let q = q as u8;
        let mut inv = [0u8; 8];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| (a as u16 * b as u16) % q as u16 == 1).expect("q is prime");
        }
        let order = |a: u8| {
            let mut x = a;
            let mut k = 1;
            while x != 1 {
                x = ((x as u16 * a as u16) % q as u16) as u8;
                k += 1;
            }
            k
        };
        let primitive = (1..q).find(|&a| order(a) == q - 1).expect("F_q^* is cyclic");
        let mut product = [0u8; 64];
        for a in 0..q {
            for b in 0..q {
                product[(a as usize) << 3 | b as usize] = ((a as u16 * b as u16) % q as u16) as u8;
            }
        }
        Ok(PrimeField {
            q,
            inv,
            primitive,
            product,
        })
    }

    pub fn q(self) -> u8 {
        self.q
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        self.product[((a & 7) as usize) << 3 | (b & 7) as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && a < self.q);
        self.inv[a as usize]
    }

    /// Reduces a signed integer into the field.
    pub fn from_i64(self, a: i64) -> u8 {
        a.rem_euclid(self.q as i64) as u8
    }

    /// A generator of the multiplicative group.
    pub fn primitive(self) -> u8 {
        self.primitive
    }

    pub fn is_square(self, a: u8) -> bool {
        self.elements().any(|b| self.mul(b, b) == a)
    }
}
