//! Dense matrices over a finite field.

use crate::gf::{Fe, Field, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<Fe>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            e: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat {
            rows: r,
            cols: c,
            e: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_ints(f: &Field, rows: &[&[i64]]) -> Mat {
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        Mat::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(n: usize, cols: &[Vec<Fe>]) -> Mat {
        let mut m = Mat::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.e[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.e[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Fe> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), f.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn add(&self, f: &Field, o: &Mat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            e: self
                .e
                .iter()
                .zip(&o.e)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &Mat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            e: self
                .e
                .iter()
                .zip(&o.e)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Field, a: Fe) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(|&x| f.mul(x, a)).collect(),
        }
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// `g - lambda * I`
    pub fn shift(&self, f: &Field, lambda: Fe) -> Mat {
        let mut m = self.clone();
        for i in 0..self.rows {
            m.set(i, i, f.sub(m.get(i, i), lambda));
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.rows)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.e.swap(pr * m.cols + j, r * m.cols + j);
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let a = m.get(i, c);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(a, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : self * x = 0}` as vectors.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Basis of the column space.
    pub fn image(&self, f: &Field) -> Vec<Vec<Fe>> {
        self.transpose().row_space(f)
    }

    /// RREF basis of the row space.
    pub fn row_space(&self, f: &Field) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref(f);
        (0..pivots.len()).map(|i| r.row(i)).collect()
    }

    pub fn det(&self, f: &Field) -> Fe {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut d = Fe::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Fe::ZERO;
            };
            if pr != c {
                for j in 0..n {
                    m.e.swap(pr * n + j, c * n + j);
                }
                d = f.neg(d);
            }
            let piv = m.get(c, c);
            d = f.mul(d, piv);
            let inv = f.inv(piv).unwrap();
            for i in c + 1..n {
                let a = f.mul(m.get(i, c), inv);
                if a.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(a, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        d
    }

    pub fn inverse(&self, f: &Field) -> Option<Mat> {
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Characteristic polynomial `det(x I - A)` via Hessenberg reduction.
    pub fn charpoly(&self, f: &Field) -> Poly {
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i0) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if i0 != j + 1 {
                for c in 0..n {
                    h.e.swap(i0 * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.e.swap(r * n + i0, r * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j)).unwrap();
            for i in j + 2..n {
                let m = f.mul(h.get(i, j), inv);
                if m.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(i, c), f.mul(m, h.get(j + 1, c)));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), f.mul(m, h.get(r, i)));
                    h.set(r, j + 1, v);
                }
            }
        }
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let mut pm = Poly::linear(f, h.get(m, m)).mul(f, &ps[m]);
            let mut prod = Fe::ONE;
            for i in (0..m).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(prod, h.get(i, m));
                if !coef.is_zero() {
                    pm = pm.sub(f, &ps[i].scale(f, coef));
                }
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &Field, p: &Poly) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for &c in p.c.iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
        acc
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Mat::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        m
    }
}

/// Canonical RREF basis of the span of `vecs`.
pub fn span(f: &Field, n: usize, vecs: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Mat {
        rows: vecs.len(),
        cols: n,
        e: vecs.iter().flatten().copied().collect(),
    };
    m.row_space(f)
}

pub fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn axpy(f: &Field, a: Fe, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| f.add(f.mul(a, xi), yi))
        .collect()
}

/// All vectors of `GF(q)^n` in lexicographic order of their encodings.
pub fn all_vectors(f: &Field, n: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let q = f.q() as u64;
    (0..q.pow(n as u32)).map(move |mut x| {
        (0..n)
            .map(|_| {
                let c = Fe((x % q) as u32);
                x /= q;
                c
            })
            .collect()
    })
}

/// Representatives of the 1-dimensional subspaces: first nonzero entry 1.
pub fn projective_points(f: &Field, n: usize) -> Vec<Vec<Fe>> {
    all_vectors(f, n)
        .filter(|v| v.iter().find(|x| !x.is_zero()) == Some(&Fe::ONE))
        .collect()
}
