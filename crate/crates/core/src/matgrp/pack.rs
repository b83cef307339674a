//! Matrices packed into a single `u128`: `ceil(log2 q)` bits per entry,
//! row-major, entry `(0, 0)` in the lowest bits.

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::Mat;

pub const MAX_ENTRIES: usize = 128;

#[derive(Clone, Debug)]
pub struct Packer {
    pub n: usize,
    pub field: Field,
    bits: u32,
    mask: u128,
    prime: bool,
    p: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl Packer {
    pub fn new(field: &Field, n: usize) -> Result<Packer> {
        let q = field.q();
        let bits = 32 - (q - 1).leading_zeros();
        let bits = bits.max(1);
        if q > 256 || (n * n) as u32 * bits > 128 {
            return Err(Error::PackingOverflow { dim: n, q });
        }
        let prime = field.k() == 1;
        let (mut add, mut mul) = (Vec::new(), Vec::new());
        if !prime {
            add = vec![0u8; (q * q) as usize];
            mul = vec![0u8; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.add(Fe(a), Fe(b)).0 as u8;
                    mul[(a * q + b) as usize] = field.mul(Fe(a), Fe(b)).0 as u8;
                }
            }
        }
        Ok(Packer {
            n,
            field: field.clone(),
            bits,
            mask: (1u128 << bits) - 1,
            prime,
            p: field.p(),
            add,
            mul,
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn pack(&self, m: &Mat) -> u128 {
        debug_assert_eq!(m.rows, self.n);
        m.e.iter().enumerate().fold(0u128, |acc, (i, x)| {
            acc | ((x.0 as u128) << (self.bits * i as u32))
        })
    }

    pub fn unpack(&self, x: u128) -> Mat {
        let mut buf = [0u8; MAX_ENTRIES];
        self.unpack_into(x, &mut buf);
        Mat {
            rows: self.n,
            cols: self.n,
            e: buf[..self.n * self.n]
                .iter()
                .map(|&v| Fe(v as u32))
                .collect(),
        }
    }

    #[inline]
    pub fn unpack_into(&self, mut x: u128, buf: &mut [u8; MAX_ENTRIES]) {
        for slot in buf.iter_mut().take(self.n * self.n) {
            *slot = (x & self.mask) as u8;
            x >>= self.bits;
        }
    }

    #[inline]
    fn pack_buf(&self, buf: &[u8]) -> u128 {
        let mut x = 0u128;
        for &v in buf.iter().rev() {
            x = (x << self.bits) | v as u128;
        }
        x
    }

    pub fn identity(&self) -> u128 {
        self.pack(&Mat::identity(self.n))
    }

    /// Product with a right factor that is already unpacked.
    #[inline]
    pub fn mul_unpacked(&self, a: u128, b: &[u8; MAX_ENTRIES]) -> u128 {
        let n = self.n;
        let mut ua = [0u8; MAX_ENTRIES];
        self.unpack_into(a, &mut ua);
        let mut out = [0u8; MAX_ENTRIES];
        if self.prime {
            let p = self.p;
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0u32;
                    for k in 0..n {
                        s += ua[i * n + k] as u32 * b[k * n + j] as u32;
                    }
                    out[i * n + j] = (s % p) as u8;
                }
            }
        } else {
            let q = self.field.q() as usize;
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0u8;
                    for k in 0..n {
                        let t = self.mul[ua[i * n + k] as usize * q + b[k * n + j] as usize];
                        s = self.add[s as usize * q + t as usize];
                    }
                    out[i * n + j] = s;
                }
            }
        }
        self.pack_buf(&out[..n * n])
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let mut ub = [0u8; MAX_ENTRIES];
        self.unpack_into(b, &mut ub);
        self.mul_unpacked(a, &ub)
    }

    pub fn pow(&self, a: u128, mut e: u64) -> u128 {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self, a: u128) -> u64 {
        let id = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn inverse(&self, a: u128) -> u128 {
        let m = self.unpack(a);
        self.pack(
            &m.inverse(&self.field)
                .expect("group elements are invertible"),
        )
    }
}
