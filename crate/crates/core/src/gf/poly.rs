//! Dense univariate polynomials over a [`Field`].

use super::{Fe, Field};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    pub c: Vec<Fe>,
}

impl Poly {
    pub fn new(mut c: Vec<Fe>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![Fe::ONE] }
    }

    /// `x - a`
    pub fn linear(f: &Field, a: Fe) -> Poly {
        Poly::new(vec![f.neg(a), Fe::ONE])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `deg 0 = -1` encoded as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let get = |v: &Vec<Fe>, i: usize| v.get(i).copied().unwrap_or(Fe::ZERO);
        Poly::new(
            (0..n)
                .map(|i| f.add(get(&self.c, i), get(&o.c, i)))
                .collect(),
        )
    }

    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        self.add(f, &o.scale(f, f.neg(Fe::ONE)))
    }

    pub fn scale(&self, f: &Field, a: Fe) -> Poly {
        Poly::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match f.inv(self.lead()) {
            Some(li) => self.scale(f, li),
            None => Poly::zero(),
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let li = f.inv(d.lead()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), Poly::new(r));
        }
        let mut quo = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], li);
            if c.is_zero() {
                continue;
            }
            quo[i - dd] = c;
            for (j, &dj) in d.c.iter().enumerate() {
                let t = i - dd + j;
                r[t] = f.sub(r[t], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.c
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// The monic reciprocal `x^n f(1/x) / f(0)`; `None` if `f(0) = 0`.
    pub fn reciprocal(&self, f: &Field) -> Option<Poly> {
        if self.c.first().is_none_or(|c| c.is_zero()) {
            return None;
        }
        let mut c = self.c.clone();
        c.reverse();
        Some(Poly::new(c).monic(f))
    }

    /// Irreducibility by trial division with monic polynomials of degree at
    /// most half the degree.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            for g in monic_polys(f, d) {
                if self.rem(f, &g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self, f: &Field) -> Vec<(Poly, usize)> {
        let mut rest = self.monic(f);
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().is_some_and(|n| n >= 2 * d) {
            for g in monic_polys(f, d) {
                let mut mult = 0;
                loop {
                    let (qq, r) = rest.divrem(f, &g);
                    if !r.is_zero() {
                        break;
                    }
                    rest = qq;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((g, mult));
                }
            }
            d += 1;
        }
        if rest.degree().is_some_and(|n| n > 0) {
            match out.iter_mut().find(|(g, _)| *g == rest) {
                Some(e) => e.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort();
        out
    }
}

/// All monic polynomials of degree `d`, in increasing order of the
/// non-leading coefficients read from the top.
pub fn monic_polys(f: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.q() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut n| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(Fe((n % q) as u32));
            n /= q;
        }
        c.push(Fe::ONE);
        Poly { c }
    })
}

pub fn smallest_irreducible(f: &Field, d: usize) -> Poly {
    monic_polys(f, d)
        .find(|g| g.is_irreducible(f))
        .expect("irreducible polynomials exist in every degree")
}
