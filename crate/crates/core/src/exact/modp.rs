//! Raw `u64` residue arithmetic for the enumeration hot loops.
//!
//! Values here are plain residues in `0..p`; the owning [`ModRing`] fixes p.
//! Used where millions of points are scanned and the per-element modulus of
//! [`Fp`](super::Fp) would only cost time.

use super::field::{Fp, PrimeField};

#[derive(Debug, Clone)]
pub struct ModRing {
    p: u64,
    inv: Vec<u64>,
}

impl ModRing {
    /// Inverse table is precomputed, so p should stay well below 2^24.
    pub fn new(field: PrimeField) -> Self {
        let p = field.modulus();
        let mut inv = vec![0u64; p as usize];
        if p > 1 {
            inv[1] = 1;
            for i in 2..p {
                inv[i as usize] = (p - (p / i) * inv[(p % i) as usize] % p) % p;
            }
        }
        Self { p, inv }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("ring built from a prime field")
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        self.inv[a as usize]
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Scales `v` so its first nonzero entry is 1. Returns false for the zero vector.
    pub fn normalize(&self, v: &mut [u64]) -> bool {
        let Some(&lead) = v.iter().find(|&&x| x != 0) else {
            return false;
        };
        if lead != 1 {
            let s = self.inv(lead);
            for x in v.iter_mut() {
                *x = self.mul(*x, s);
            }
        }
        true
    }

    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| (acc + x * y) % self.p)
    }

    pub fn to_fp(&self, v: &[u64]) -> Vec<Fp> {
        let f = self.field();
        v.iter().map(|&x| f.elem(x as i64)).collect()
    }
}

pub fn to_raw(v: &[Fp]) -> Vec<u64> {
    v.iter().map(Fp::value).collect()
}

/// Number of points of P^n(F_p).
pub fn projective_count(p: u64, n: u32) -> u64 {
    (0..=n).map(|k| p.pow(k)).sum()
}

/// The `index`-th normalized point of P^n(F_p), for `index < projective_count(p, n)`.
///
/// Points are ordered by the position of their leading 1, then by the
/// trailing coordinates read as a base-p number.
pub fn projective_point(p: u64, n: u32, mut index: u64) -> Vec<u64> {
    let dim = n as usize + 1;
    let mut out = vec![0u64; dim];
    for lead in 0..dim {
        let block = p.pow((dim - 1 - lead) as u32);
        if index < block {
            out[lead] = 1;
            for j in (lead + 1..dim).rev() {
                out[j] = index % p;
                index /= p;
            }
            return out;
        }
        index -= block;
    }
    panic!("projective index out of range")
}
