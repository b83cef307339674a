//! Monomorphisms between classical groups realised on explicit spaces.

use crate::error::{Error, Result};
use crate::gf::{Fe, Field, FieldEmbedding};
use crate::linalg::{self, Mat};
use crate::quadspace::QuadraticSpace;

#[derive(Clone, Debug)]
enum Map {
    /// `g -> P diag(g, 1, ..) P^-1`
    Block { p: Mat, pinv: Mat },
    /// Even `q`: the small space is the hyperplane `t = 0` of the big one;
    /// isometries extend uniquely with Dickson invariant 0.
    Extend { ell: Vec<Fe>, c: Fe },
}

/// An isometric embedding of `small` into `big` together with the induced
/// map on isometries.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub small: QuadraticSpace,
    pub big: QuadraticSpace,
    map: Map,
}

impl Embedding {
    /// `small -> small (+) extra`.
    pub fn sum(small: &QuadraticSpace, extra: &QuadraticSpace) -> Embedding {
        let big = small.orthogonal_sum(extra);
        Embedding {
            small: small.clone(),
            map: Map::Block {
                p: Mat::identity(big.dim),
                pinv: Mat::identity(big.dim),
            },
            big,
        }
    }

    /// `SO(v^perp) -> SO(big)` for an anisotropic `v` and odd `q`.
    pub fn codim1(big: &QuadraticSpace, v: &[Fe]) -> Result<Embedding> {
        let f = &big.field;
        if f.p() == 2 {
            return Err(Error::Unsupported("codim-1 embedding needs odd q".into()));
        }
        if big.value(v).is_zero() {
            return Err(Error::InvalidSpace("vector is singular".into()));
        }
        let perp = big.orthogonal_complement(std::slice::from_ref(&v.to_vec()));
        let mut cols = perp.basis.clone();
        cols.push(v.to_vec());
        let p = Mat::from_cols(big.dim, &cols);
        let pinv = p.inverse(f).ok_or(Error::Degenerate)?;
        Ok(Embedding {
            small: big.restrict(&perp.basis),
            big: big.clone(),
            map: Map::Block { p, pinv },
        })
    }

    /// Even `q`: an odd-dimensional space as the hyperplane `t = 0` of
    /// `Q(x) + t l(x) + c t^2`, where `l(r) = 1` on the radical vector `r`.
    pub fn hyperplane(small: &QuadraticSpace, c: Fe) -> Result<Embedding> {
        let f = &small.field;
        let rad = small.radical();
        if f.p() != 2 || rad.len() != 1 {
            return Err(Error::Unsupported(
                "hyperplane embedding needs even q and odd dimension".into(),
            ));
        }
        let r = &rad[0];
        let j = r.iter().position(|x| !x.is_zero()).unwrap();
        let mut ell = vec![Fe::ZERO; small.dim];
        ell[j] = f.inv(r[j]).unwrap();
        let n = small.dim;
        let mut coef = Mat::zeros(n + 1, n + 1);
        for a in 0..n {
            for b in 0..n {
                coef.set(a, b, small.coef.get(a, b));
            }
            coef.set(a, n, ell[a]);
        }
        coef.set(n, n, c);
        Ok(Embedding {
            small: small.clone(),
            big: QuadraticSpace::new(f, &coef),
            map: Map::Extend { ell, c },
        })
    }

    pub fn apply(&self, g: &Mat) -> Mat {
        let f = &self.big.field;
        match &self.map {
            Map::Block { p, pinv } => {
                let k = self.big.dim - g.rows;
                let d = Mat::block_diag(&[g, &Mat::identity(k)]);
                p.mul(f, &d).mul(f, pinv)
            }
            Map::Extend { .. } => self.extend(g),
        }
    }

    fn extend(&self, g: &Mat) -> Mat {
        let f = &self.big.field;
        let Map::Extend { ell, c } = &self.map else {
            unreachable!()
        };
        let n = self.small.dim;
        let big = &self.big;
        let lift = |v: &[Fe]| {
            let mut w = v.to_vec();
            w.push(Fe::ZERO);
            w
        };
        let e = Mat::identity(n).row_vecs();
        let mut a = Mat::zeros(n, n + 2);
        for (i, b) in e.iter().enumerate() {
            let gb = lift(&g.apply(f, b));
            let row = big.gram().apply(f, &gb);
            for k in 0..=n {
                a.set(i, k, row[k]);
            }
            a.set(i, n + 1, ell[i]);
        }
        let (part, kern) = solve_affine(f, &a).expect("isometries of the hyperplane extend");
        let mut out = Mat::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, g.get(i, j));
            }
        }
        for a0 in f.elements() {
            let y: Vec<Fe> = match kern.first() {
                Some(k) => linalg::axpy(f, a0, k, &part),
                None => part.clone(),
            };
            if big.value(&y) != *c {
                continue;
            }
            for i in 0..=n {
                out.set(i, n, y[i]);
            }
            if crate::matgrp::dickson_invariant(big, &out) == 0 {
                return out;
            }
        }
        panic!("no Dickson-trivial extension found");
    }

    /// `GL_n(q) -> O+_{2n}(q)`, `g -> diag(g, g^-T)` on `sum x_i x_{n+i}`.
    pub fn gl(f: &Field, n: usize) -> (QuadraticSpace, impl Fn(&Mat) -> Mat + '_) {
        let mut coef = Mat::zeros(2 * n, 2 * n);
        for i in 0..n {
            coef.set(i, n + i, Fe::ONE);
        }
        let space = QuadraticSpace::new(f, &coef);
        let map = move |g: &Mat| {
            let git = g.inverse(f).expect("invertible").transpose();
            Mat::block_diag(&[g, &git])
        };
        (space, map)
    }
}

/// Solve `A [y; -1] = 0` for an `r x (m + 1)` augmented matrix: a particular
/// solution and a kernel basis.
pub fn solve_affine(f: &Field, aug: &Mat) -> Option<(Vec<Fe>, Vec<Vec<Fe>>)> {
    let m = aug.cols - 1;
    let (r, piv) = aug.rref(f);
    if piv.contains(&m) {
        return None;
    }
    let mut part = vec![Fe::ZERO; m];
    for (row, &c) in piv.iter().enumerate() {
        part[c] = r.get(row, m);
    }
    let mut coef = aug.clone();
    coef.cols = m;
    coef.e = (0..aug.rows)
        .flat_map(|i| aug.row(i)[..m].to_vec())
        .collect();
    Some((part, coef.kernel(f)))
}

/// `U_n(q)` acting on `GF(q^2)^n` viewed as `GF(q)^{2n}` with basis
/// `(1, x)` in each coordinate and `Q(w) = H(w, w)`.
#[derive(Clone, Debug)]
pub struct UnitaryModel {
    pub n: usize,
    pub ext: Field,
    pub emb: FieldEmbedding,
    pub space: QuadraticSpace,
    /// Multiplication by the generator `x` of GF(q^2).
    pub scalar: Mat,
    coords: Vec<Vec<Fe>>,
}

impl UnitaryModel {
    pub fn new(f: &Field, n: usize) -> Result<UnitaryModel> {
        let ext = Field::new(f.p(), 2 * f.k())?;
        let emb = f.embedding_into(&ext)?;
        let basis = [Fe::ONE, ext.generator()];
        let coords = basis_coordinates(&emb, &basis);
        let q = f.q() as u64;
        let norm = |w: Fe| emb.preimage(ext.mul(w, ext.pow(w, q))).unwrap();
        let mut coef = Mat::zeros(2 * n, 2 * n);
        let x = basis[1];
        let tr = emb.preimage(ext.add(x, ext.pow(x, q))).unwrap();
        for i in 0..n {
            coef.set(2 * i, 2 * i, norm(Fe::ONE));
            coef.set(2 * i, 2 * i + 1, tr);
            coef.set(2 * i + 1, 2 * i + 1, norm(x));
        }
        let space = QuadraticSpace::new(f, &coef);
        let mut model = UnitaryModel {
            n,
            ext: ext.clone(),
            emb,
            space,
            scalar: Mat::zeros(0, 0),
            coords,
        };
        let mut xi = Mat::zeros(n, n);
        for i in 0..n {
            xi.set(i, i, x);
        }
        model.scalar = model.realize(&xi);
        Ok(model)
    }

    /// The `2n x 2n` matrix over GF(q) of a GF(q^2)-linear map.
    pub fn realize(&self, g: &Mat) -> Mat {
        let e = &self.ext;
        let n = self.n;
        let basis = [Fe::ONE, e.generator()];
        let mut out = Mat::zeros(2 * n, 2 * n);
        for j in 0..n {
            for (bj, &beta) in basis.iter().enumerate() {
                for i in 0..n {
                    let v = e.mul(g.get(i, j), beta);
                    let c = &self.coords[v.0 as usize];
                    out.set(2 * i, 2 * j + bj, c[0]);
                    out.set(2 * i + 1, 2 * j + bj, c[1]);
                }
            }
        }
        out
    }

    /// `+1` for even `n`, `-1` for odd `n`.
    pub fn type_sign(&self) -> i64 {
        if self.n.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// For every element of the big field, its coordinates over the small field
/// in the given basis.
pub fn basis_coordinates(emb: &FieldEmbedding, basis: &[Fe]) -> Vec<Vec<Fe>> {
    let sup = &emb.sup;
    let sub = &emb.sub;
    let d = basis.len();
    let mut out = vec![Vec::new(); sup.q() as usize];
    for c in linalg::all_vectors(sub, d) {
        let v = c.iter().zip(basis).fold(Fe::ZERO, |acc, (&ci, &b)| {
            sup.add(acc, sup.mul(emb.apply(ci), b))
        });
        out[v.0 as usize] = c;
    }
    debug_assert!(out.iter().all(|c| c.len() == d));
    out
}
