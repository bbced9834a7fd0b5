//! Bounded-distance decoding of primitive binary BCH codes for up to three
//! errors, using Peterson's direct solution and table-based root finding.

use crate::error::{Error, Result};
use crate::gf::GaloisField;

const NONE: u32 = u32::MAX;

/// Algebraic structure attached to a (possibly extended) primitive BCH code.
#[derive(Debug, Clone)]
pub struct BchStructure {
    field: GaloisField,
    t: usize,
    extended: bool,
    /// `quadratic[c]` is one solution z of z^2 + z = c, or NONE.
    quadratic: Vec<u32>,
    /// Solutions u of u^3 + u = c; `cubic_len[c]` of them are valid.
    cubic: Vec<[u32; 3]>,
    cubic_len: Vec<u8>,
}

impl BchStructure {
    pub fn new(field: GaloisField, t: usize, extended: bool) -> Self {
        let q = field.size();
        let mut quadratic = vec![NONE; q];
        let mut cubic = vec![[0u32; 3]; q];
        let mut cubic_len = vec![0u8; q];
        for z in 0..q as u32 {
            let c = field.mul(z, z) ^ z;
            if quadratic[c as usize] == NONE {
                quadratic[c as usize] = z;
            }
            let c3 = field.mul(field.mul(z, z), z) ^ z;
            let len = &mut cubic_len[c3 as usize];
            cubic[c3 as usize][*len as usize] = z;
            *len += 1;
        }
        Self {
            field,
            t,
            extended,
            quadratic,
            cubic,
            cubic_len,
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn extended(&self) -> bool {
        self.extended
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.field.order() + usize::from(self.extended)
    }

    /// Number of parity rows of the full code.
    pub fn m(&self) -> usize {
        self.t * self.field.degree() as usize + usize::from(self.extended)
    }

    /// Odd-power syndrome S_{2i+1} read from syndrome block `i`.
    #[inline]
    fn block(&self, s: &[u64], i: usize) -> u32 {
        let r = self.field.degree() as usize;
        let start = i * r;
        let mut v = 0u32;
        for b in 0..r {
            let bit = start + b;
            v |= (((s[bit / 64] >> (bit % 64)) & 1) as u32) << b;
        }
        v
    }

    /// Error positions explaining `syndrome` (packed over the full code's
    /// parity rows) under the sub-code formed by the first `t_sub * r` rows
    /// plus the parity row. Returns `None` when no pattern of weight at most
    /// `t_sub` matches.
    pub fn locate(&self, syndrome: &[u64], t_sub: usize) -> Option<Vec<usize>> {
        debug_assert!((1..=3).contains(&t_sub) && t_sub <= self.t);
        let f = &self.field;
        let s1 = self.block(syndrome, 0);
        let s3 = if t_sub >= 2 { self.block(syndrome, 1) } else { 0 };
        let s5 = if t_sub >= 3 { self.block(syndrome, 2) } else { 0 };

        let locators: Vec<u32> = match t_sub {
            1 => {
                if s1 == 0 {
                    vec![]
                } else {
                    vec![s1]
                }
            }
            2 => {
                if s1 == 0 {
                    if s3 != 0 {
                        return None;
                    }
                    vec![]
                } else {
                    let s1_3 = f.pow(s1, 3);
                    if s3 == s1_3 {
                        vec![s1]
                    } else {
                        let sigma2 = f.div(s3 ^ s1_3, s1)?;
                        self.quadratic_roots(s1, sigma2)?.to_vec()
                    }
                }
            }
            _ => {
                let d = f.pow(s1, 3) ^ s3;
                if d == 0 {
                    if s1 == 0 {
                        if s5 != 0 {
                            return None;
                        }
                        vec![]
                    } else if s5 == f.pow(s1, 5) {
                        vec![s1]
                    } else {
                        return None;
                    }
                } else {
                    let sigma1 = s1;
                    let sigma2 = f.div(f.mul(f.mul(s1, s1), s3) ^ s5, d)?;
                    let sigma3 = d ^ f.mul(s1, sigma2);
                    if sigma3 == 0 {
                        if sigma1 == 0 {
                            return None;
                        }
                        self.quadratic_roots(sigma1, sigma2)?.to_vec()
                    } else {
                        self.cubic_roots(sigma1, sigma2, sigma3)?.to_vec()
                    }
                }
            }
        };

        // the odd-power sums of the locators must reproduce every syndrome block
        let expected = [s1, s3, s5];
        for (i, &want) in expected.iter().enumerate().take(t_sub) {
            let power = 2 * i + 1;
            let got = locators.iter().fold(0u32, |acc, &x| acc ^ f.pow(x, power));
            if got != want {
                return None;
            }
        }

        let mut positions: Vec<usize> = locators.iter().map(|&x| f.log(x).unwrap()).collect();
        if self.extended {
            let m = self.m();
            let parity = ((syndrome[(m - 1) / 64] >> ((m - 1) % 64)) & 1) as usize;
            if positions.len() % 2 != parity {
                if positions.len() + 1 > t_sub {
                    return None;
                }
                positions.push(self.n() - 1);
            }
        }
        positions.sort_unstable();
        Some(positions)
    }

    /// Distinct nonzero roots of X^2 + a X + b with a != 0.
    fn quadratic_roots(&self, a: u32, b: u32) -> Option<[u32; 2]> {
        let f = &self.field;
        if a == 0 || b == 0 {
            return None;
        }
        let c = f.div(b, f.mul(a, a))?;
        let z = self.quadratic[c as usize];
        if z == NONE {
            return None;
        }
        Some([f.mul(a, z), f.mul(a, z ^ 1)])
    }

    /// Three distinct nonzero roots of X^3 + a X^2 + b X + c.
    fn cubic_roots(&self, a: u32, b: u32, c: u32) -> Option<[u32; 3]> {
        let f = &self.field;
        // X = Y + a turns the cubic into Y^3 + p Y + q
        let p = f.mul(a, a) ^ b;
        let q = f.mul(a, b) ^ c;
        let ys: [u32; 3] = if p != 0 {
            let sp = f.sqrt(p);
            let scale = f.mul(p, sp);
            let key = f.div(q, scale)?;
            if self.cubic_len[key as usize] != 3 {
                return None;
            }
            let us = self.cubic[key as usize];
            [f.mul(sp, us[0]), f.mul(sp, us[1]), f.mul(sp, us[2])]
        } else {
            // Y^3 = q has three roots only when 3 divides the group order
            let order = f.order();
            let l = f.log(q)?;
            if order % 3 != 0 || l % 3 != 0 {
                return None;
            }
            let base = l / 3;
            let step = order / 3;
            [f.exp(base), f.exp(base + step), f.exp(base + 2 * step)]
        };
        let xs = ys.map(|y| y ^ a);
        if xs.contains(&0) {
            return None;
        }
        Some(xs)
    }
}

pub(crate) fn check_t_sub(bch: &BchStructure, t_sub: usize) -> Result<()> {
    if t_sub == 0 || t_sub > 3 || t_sub > bch.t() {
        return Err(Error::Config(format!(
            "bounded-distance capability {t_sub} must be in 1..=min(3, {})",
            bch.t()
        )));
    }
    Ok(())
}
