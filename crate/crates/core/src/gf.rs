//! Arithmetic in GF(2^r) backed by log/antilog tables.

use crate::error::{Error, Result};

/// Default primitive polynomials indexed by degree, as bitmasks including the
/// leading term. Degree 8 uses x^8 + x^4 + x^3 + x^2 + 1.
const DEFAULT_PRIMITIVE: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

pub fn default_primitive_poly(r: u32) -> Option<u32> {
    DEFAULT_PRIMITIVE
        .get(r as usize)
        .copied()
        .filter(|&p| p != 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    r: u32,
    primitive_poly: u32,
    /// `log_table[a]` is the exponent of the primitive element giving `a`; entry 0 is unused.
    log_table: Vec<u32>,
    /// `antilog_table[i]` is the primitive element raised to `i`, for `i < 2^r - 1`.
    antilog_table: Vec<u32>,
}

impl GaloisField {
    /// Builds GF(2^r) from a primitive polynomial, rejecting polynomials whose
    /// multiplicative cycle is shorter than 2^r - 1.
    pub fn new(r: u32, primitive_poly: u32) -> Result<Self> {
        if !(2..=16).contains(&r) {
            return Err(Error::InvalidField(format!("degree {r} outside 2..=16")));
        }
        if primitive_poly >> r != 1 {
            return Err(Error::InvalidField(format!(
                "polynomial {primitive_poly:#x} does not have degree {r}"
            )));
        }
        let order = (1usize << r) - 1;
        let mut antilog_table = Vec::with_capacity(order);
        let mut log_table = vec![0u32; order + 1];
        let mut a = 1u32;
        for i in 0..order {
            if i > 0 && a == 1 {
                return Err(Error::NonPrimitivePolynomial {
                    degree: r,
                    poly: primitive_poly,
                    cycle: i,
                });
            }
            antilog_table.push(a);
            log_table[a as usize] = i as u32;
            a <<= 1;
            if a >> r == 1 {
                a ^= primitive_poly;
            }
        }
        if a != 1 {
            // the sequence never returned to 1: x is not even a unit, i.e. p(0) = 0
            return Err(Error::NonPrimitivePolynomial {
                degree: r,
                poly: primitive_poly,
                cycle: 0,
            });
        }
        Ok(Self {
            r,
            primitive_poly,
            log_table,
            antilog_table,
        })
    }

    pub fn with_default_poly(r: u32) -> Result<Self> {
        let poly = default_primitive_poly(r)
            .ok_or_else(|| Error::InvalidField(format!("no default polynomial for degree {r}")))?;
        Self::new(r, poly)
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Number of field elements, 2^r.
    pub fn size(&self) -> usize {
        1 << self.r
    }

    /// Multiplicative order 2^r - 1.
    pub fn order(&self) -> usize {
        self.antilog_table.len()
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log_table
    }

    pub fn antilog_table(&self) -> &[u32] {
        &self.antilog_table
    }

    /// Primitive element raised to `e` (any non-negative exponent).
    #[inline]
    pub fn exp(&self, e: usize) -> u32 {
        self.antilog_table[e % self.order()]
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: u32) -> Option<usize> {
        (a != 0).then(|| self.log_table[a as usize] as usize)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = self.log_table[a as usize] as usize + self.log_table[b as usize] as usize;
        self.exp(e)
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        if b == 0 {
            return None;
        }
        if a == 0 {
            return Some(0);
        }
        let order = self.order();
        let e = self.log_table[a as usize] as usize + order - self.log_table[b as usize] as usize;
        Some(self.exp(e))
    }

    pub fn pow(&self, a: u32, e: usize) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = self.order();
        self.exp((self.log_table[a as usize] as usize * (e % order)) % order)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        self.div(1, a)
    }

    /// Square root; unique in characteristic 2.
    pub fn sqrt(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let l = self.log_table[a as usize] as usize;
        let order = self.order();
        // order is odd, so either l or l + order is even
        let e = if l % 2 == 0 { l / 2 } else { (l + order) / 2 };
        self.exp(e)
    }
}
