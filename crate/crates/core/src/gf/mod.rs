//! Finite fields GF(p^k) in a polynomial basis.
//!
//! Elements are coefficient vectors over GF(p) packed base p into a `u32`
//! (constant term least significant). The modulus is the lexicographically
//! smallest monic irreducible polynomial of degree `k`, so GF(p) itself is
//! presented modulo `x` and GF(4) modulo `x^2 + x + 1`.

pub mod poly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
pub use poly::Poly;

/// Largest field size accepted by [`Field::new`].
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// Fields at most this large carry log/antilog tables.
const TABLE_BOUND: u32 = 1 << 16;

/// A field element: the base-p packing of its coefficient vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
    primitive: Fe,
    nonsquare: Option<Fe>,
}

/// GF(p^k). Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
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

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Split a prime power into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p as u32, k))
}

impl Field {
    pub fn new(p: u32, k: u32) -> Result<Field> {
        Self::with_bound(p, k, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u32, k: u32, bound: u64) -> Result<Field> {
        if !is_prime(p as u64) || k == 0 {
            return Err(Error::InvalidField { p, k });
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > bound {
            return Err(Error::FieldTooLarge { q, bound });
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let prime = Field::new(p, 1)?;
            poly::smallest_irreducible(&prime, k as usize)
                .c
                .iter()
                .map(|c| c.0)
                .collect()
        };
        let mut inner = Inner {
            p,
            k,
            q: q as u32,
            modulus,
            log: Vec::new(),
            exp: Vec::new(),
            primitive: Fe::ONE,
            nonsquare: None,
        };
        inner.primitive = find_primitive(&inner);
        if inner.q <= TABLE_BOUND {
            let n = inner.q as usize - 1;
            let mut exp = vec![0u32; n.max(1)];
            let mut log = vec![0u32; inner.q as usize];
            let mut x = Fe::ONE;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = x.0;
                log[x.0 as usize] = i as u32;
                x = Fe(poly_mul(&inner, x.0, inner.primitive.0));
            }
            inner.exp = exp;
            inner.log = log;
        }
        let mut f = Field(Arc::new(inner));
        if p != 2 {
            let e = (f.q() as u64 - 1) / 2;
            let ns = f.elements().skip(1).find(|&a| f.pow(a, e) != Fe::ONE);
            Arc::get_mut(&mut f.0).unwrap().nonsquare = ns;
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Coefficients over GF(p), constant term first.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let p = self.0.p;
        let mut x = a.0;
        (0..self.0.k)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        let p = self.0.p;
        Fe(c.iter().rev().fold(0, |acc, &d| acc * p + d % p))
    }

    /// The image of `x` in the polynomial basis.
    pub fn generator(&self) -> Fe {
        if self.0.k == 1 {
            Fe(0)
        } else {
            Fe(self.0.p)
        }
    }

    pub fn primitive(&self) -> Fe {
        self.0.primitive
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.0.k == 1 {
            return Fe((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.0.k == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32);
        }
        if !self.0.exp.is_empty() {
            let n = self.0.q as usize - 1;
            let l = (self.0.log[a.0 as usize] + self.0.log[b.0 as usize]) as usize;
            return Fe(self.0.exp[l % n]);
        }
        Fe(poly_mul(&self.0, a.0, b.0))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        if !self.0.exp.is_empty() {
            let n = self.0.q - 1;
            let l = self.0.log[a.0 as usize];
            return Some(Fe(self.0.exp[((n - l) % n) as usize]));
        }
        Some(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        assert!(!a.is_zero());
        let mut n = self.0.q as u64 - 1;
        for r in prime_divisors(n) {
            while n.is_multiple_of(r) && self.pow(a, n / r) == Fe::ONE {
                n /= r;
            }
        }
        n
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p as u64)
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a.is_zero() || self.0.p == 2 {
            return true;
        }
        self.pow(a, (self.0.q as u64 - 1) / 2) == Fe::ONE
    }

    /// The smallest non-square, for odd `q`.
    pub fn nonsquare(&self) -> Option<Fe> {
        self.0.nonsquare
    }

    /// A square root (Tonelli-Shanks for odd `q`).
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(a);
        }
        let q = self.0.q as u64;
        if self.0.p == 2 {
            return Some(self.pow(a, q / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        let mut s = 0;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = self.0.nonsquare.expect("odd field has a non-square");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        while b != Fe::ONE {
            let mut i = 0;
            let mut bb = b;
            while bb != Fe::ONE {
                bb = self.mul(bb, bb);
                i += 1;
            }
            let mut f = c;
            for _ in 0..(m - i - 1) {
                f = self.mul(f, f);
            }
            x = self.mul(x, f);
            c = self.mul(f, f);
            b = self.mul(b, c);
            m = i;
        }
        Some(x)
    }

    /// Square-class indicator of a nonzero element: `+1` or `-1`.
    pub fn square_class(&self, a: Fe) -> i32 {
        if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// The canonical embedding of `self` into `sup`.
    pub fn embedding_into(&self, sup: &Field) -> Result<FieldEmbedding> {
        FieldEmbedding::new(self, sup)
    }
}

fn poly_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    let k = f.k as usize;
    let digits = |mut x: u32| {
        let mut v = vec![0u64; k];
        for d in v.iter_mut() {
            *d = (x % f.p) as u64;
            x /= f.p;
        }
        v
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k];
    for i in 0..k {
        if da[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for i in 0..k {
            let m = f.modulus[i] as u64;
            prod[d - k + i] = (prod[d - k + i] + p - (c * m) % p) % p;
        }
        prod[d] = 0;
    }
    prod[..k].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

fn find_primitive(f: &Inner) -> Fe {
    let n = f.q as u64 - 1;
    if n == 1 {
        return Fe::ONE;
    }
    let rs = prime_divisors(n);
    let pow = |a: u32, mut e: u64| {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul(f, acc, base);
            }
            base = poly_mul(f, base, base);
            e >>= 1;
        }
        acc
    };
    (2..f.q)
        .find(|&g| rs.iter().all(|&r| pow(g, n / r) != 1))
        .map(Fe)
        .expect("multiplicative group is cyclic")
}

/// The embedding GF(p^a) -> GF(p^b), a | b, sending `x` to the smallest root
/// of the small field's modulus.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub sub: Field,
    pub sup: Field,
    image: Vec<Fe>,
    preimage: Vec<u32>,
}

impl FieldEmbedding {
    pub fn new(sub: &Field, sup: &Field) -> Result<FieldEmbedding> {
        if sub.p() != sup.p() || !sup.k().is_multiple_of(sub.k()) {
            return Err(Error::NotSubfield {
                sub: sub.q(),
                sup: sup.q(),
            });
        }
        let modulus: Vec<Fe> = sub
            .modulus()
            .iter()
            .map(|&c| sup.from_int(c as i64))
            .collect();
        let eval = |x: Fe| {
            modulus
                .iter()
                .rev()
                .fold(Fe::ZERO, |acc, &c| sup.add(sup.mul(acc, x), c))
        };
        let root = sup
            .elements()
            .find(|&x| eval(x).is_zero())
            .expect("a subfield modulus splits in the extension");
        let mut image = Vec::with_capacity(sub.q() as usize);
        let mut preimage = vec![u32::MAX; sup.q() as usize];
        for a in sub.elements() {
            let c = sub.coeffs(a);
            let v = c.iter().rev().fold(Fe::ZERO, |acc, &d| {
                sup.add(sup.mul(acc, root), sup.from_int(d as i64))
            });
            preimage[v.0 as usize] = a.0;
            image.push(v);
        }
        Ok(FieldEmbedding {
            sub: sub.clone(),
            sup: sup.clone(),
            image,
            preimage,
        })
    }

    pub fn degree(&self) -> u32 {
        self.sup.k() / self.sub.k()
    }

    pub fn apply(&self, a: Fe) -> Fe {
        self.image[a.0 as usize]
    }

    /// The element of the subfield mapping to `x`, if any.
    pub fn preimage(&self, x: Fe) -> Option<Fe> {
        match self.preimage[x.0 as usize] {
            u32::MAX => None,
            a => Some(Fe(a)),
        }
    }

    pub fn trace(&self, x: Fe) -> Fe {
        let f = &self.sup;
        let qs = self.sub.q() as u64;
        let mut y = x;
        let mut acc = Fe::ZERO;
        for _ in 0..self.degree() {
            acc = f.add(acc, y);
            y = f.pow(y, qs);
        }
        self.preimage(acc).expect("trace lies in the subfield")
    }

    pub fn norm(&self, x: Fe) -> Fe {
        let f = &self.sup;
        let qs = self.sub.q() as u64;
        let mut y = x;
        let mut acc = Fe::ONE;
        for _ in 0..self.degree() {
            acc = f.mul(acc, y);
            y = f.pow(y, qs);
        }
        self.preimage(acc).expect("norm lies in the subfield")
    }
}
