//! Exact arithmetic in `Z[zeta_M]`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// The `M`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(m: usize) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i];
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i - db + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// An element `sum c_i zeta^i` of `Z[zeta_M]`, stored unreduced mod
/// `x^M - 1`.
#[derive(Clone, Debug)]
pub struct CycInt {
    pub m: usize,
    pub c: Vec<i64>,
}

impl CycInt {
    pub fn zero(m: usize) -> CycInt {
        CycInt { m, c: vec![0; m] }
    }

    pub fn from_int(m: usize, n: i64) -> CycInt {
        let mut z = CycInt::zero(m);
        z.c[0] = n;
        z
    }

    /// `a * zeta^e`
    pub fn term(m: usize, a: i64, e: i64) -> CycInt {
        let mut z = CycInt::zero(m);
        z.c[e.rem_euclid(m as i64) as usize] = a;
        z
    }

    pub fn add_term(&mut self, a: i64, e: i64) {
        let m = self.m as i64;
        self.c[e.rem_euclid(m) as usize] += a;
    }

    pub fn add(&self, o: &CycInt) -> CycInt {
        assert_eq!(self.m, o.m);
        CycInt {
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &CycInt) -> CycInt {
        assert_eq!(self.m, o.m);
        let m = self.m;
        let mut out = vec![0i64; m];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[(i + j) % m] += a * b;
            }
        }
        CycInt { m, c: out }
    }

    /// Complex conjugate: `zeta -> zeta^-1`.
    pub fn conj(&self) -> CycInt {
        let m = self.m;
        let mut out = vec![0i64; m];
        for (i, &a) in self.c.iter().enumerate() {
            out[(m - i) % m] += a;
        }
        CycInt { m, c: out }
    }

    /// Canonical coordinates in the power basis of length `phi(M)`.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_poly(self.m);
        let d = phi.len() - 1;
        let mut r = self.c.clone();
        for i in (d..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate() {
                r[i - d + j] -= c * pj;
            }
        }
        r.truncate(d);
        r
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        if r.iter().skip(1).all(|&x| x == 0) {
            Some(r.first().copied().unwrap_or(0))
        } else {
            None
        }
    }
}

impl PartialEq for CycInt {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m && self.reduced() == o.reduced()
    }
}

impl Eq for CycInt {}
