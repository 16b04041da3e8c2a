//! Bivariate power series in `s, t` truncated above a total degree.

use serde::{Deserialize, Serialize};

use super::field::PrimeField;

/// Coefficient of `s^i t^j` lives at `tri(i + j) + j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiSeries {
    pub order: u32,
    coeffs: Vec<u64>,
}

#[inline]
fn tri(k: u32) -> usize {
    (k as usize * (k as usize + 1)) / 2
}

#[inline]
pub fn index(i: u32, j: u32) -> usize {
    tri(i + j) + j as usize
}

/// Number of monomials of total degree at most `order`.
pub fn len_for(order: u32) -> usize {
    tri(order + 1)
}

impl BiSeries {
    pub fn zero(order: u32) -> Self {
        Self { order, coeffs: vec![0; len_for(order)] }
    }

    pub fn constant(order: u32, c: u64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c + a s + b t`.
    pub fn affine(order: u32, c: u64, a: u64, b: u64) -> Self {
        let mut s = Self::constant(order, c);
        if order >= 1 {
            s.coeffs[index(1, 0)] = a;
            s.coeffs[index(0, 1)] = b;
        }
        s
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        if i + j > self.order {
            0
        } else {
            self.coeffs[index(i, j)]
        }
    }

    pub fn set(&mut self, i: u32, j: u32, c: u64) {
        self.coeffs[index(i, j)] = c;
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        (0..=self.order).find(|&k| (0..=k).any(|j| self.coeff(k - j, j) != 0))
    }

    pub fn add(&self, f: &PrimeField, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Self { order: self.order, coeffs }
    }

    pub fn mul(&self, f: &PrimeField, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = vec![0u64; self.coeffs.len()];
        for da in 0..=n {
            for ja in 0..=da {
                let a = self.coeffs[index(da - ja, ja)];
                if a == 0 {
                    continue;
                }
                for db in 0..=(n - da) {
                    let base = tri(da + db) + ja as usize;
                    let src = tri(db);
                    for jb in 0..=db as usize {
                        let b = other.coeffs[src + jb];
                        if b != 0 {
                            let slot = &mut out[base + jb];
                            *slot = f.add(*slot, f.mul(a, b));
                        }
                    }
                }
            }
        }
        Self { order: n, coeffs: out }
    }

    /// Powers `self^0 ..= self^k`.
    pub fn powers(&self, f: &PrimeField, k: u32) -> Vec<Self> {
        let mut out = Vec::with_capacity(k as usize + 1);
        out.push(Self::constant(self.order, 1));
        for i in 1..=k as usize {
            let next = out[i - 1].mul(f, self);
            out.push(next);
        }
        out
    }
}
