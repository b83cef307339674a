//! Nondegenerate quadratic spaces over GF(q), Witt decomposition, and the
//! subspaces attached to an isometry.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::{self, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormType {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "odd")]
    Odd,
}

impl FormType {
    pub fn sign(self) -> i64 {
        match self {
            FormType::Minus => -1,
            _ => 1,
        }
    }

    pub fn from_sign(s: i64) -> FormType {
        if s < 0 {
            FormType::Minus
        } else {
            FormType::Plus
        }
    }

    /// Type of an orthogonal sum of two even-dimensional spaces.
    pub fn combine(self, o: FormType) -> FormType {
        FormType::from_sign(self.sign() * o.sign())
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormType::Plus => "+",
            FormType::Minus => "-",
            FormType::Odd => "odd",
        })
    }
}

impl FromStr for FormType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(FormType::Plus),
            "-" | "minus" => Ok(FormType::Minus),
            "odd" | "0" => Ok(FormType::Odd),
            _ => Err(Error::InvalidSpace(format!("unknown form type {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witt {
    pub witt_index: usize,
    /// 0 or 1 in even dimension, absent in odd dimension.
    pub witt_defect: Option<u8>,
    pub anisotropic_dim: usize,
}

/// A subspace given by its canonical reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub n: usize,
    pub basis: Vec<Vec<Fe>>,
}

impl Subspace {
    pub fn span(f: &Field, n: usize, vecs: &[Vec<Fe>]) -> Subspace {
        Subspace {
            n,
            basis: linalg::span(f, n, vecs),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &Field, v: &[Fe]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        linalg::span(f, self.n, &vs).len() == self.dim()
    }

    pub fn image(&self, f: &Field, g: &Mat) -> Subspace {
        let vs: Vec<Vec<Fe>> = self.basis.iter().map(|v| g.apply(f, v)).collect();
        Subspace::span(f, self.n, &vs)
    }
}

/// `Q(x) = sum_{i <= j} coef[i][j] x_i x_j`.
#[derive(Clone, Debug)]
pub struct QuadraticSpace {
    pub field: Field,
    pub dim: usize,
    /// Upper triangular coefficient matrix.
    pub coef: Mat,
}

impl PartialEq for QuadraticSpace {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.coef == o.coef
    }
}

impl QuadraticSpace {
    /// Build from any square coefficient matrix; the lower triangle is folded
    /// onto the upper one.
    pub fn new(field: &Field, m: &Mat) -> QuadraticSpace {
        let n = m.rows;
        let mut coef = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                let v = field.add(coef.get(a, b), m.get(i, j));
                coef.set(a, b, v);
            }
        }
        QuadraticSpace {
            field: field.clone(),
            dim: n,
            coef,
        }
    }

    /// The standard models: hyperbolic planes `x y`, then for the minus type
    /// one anisotropic plane, and for odd dimension one line.
    pub fn standard(dim: usize, ty: FormType, field: &Field) -> Result<QuadraticSpace> {
        let f = field;
        match ty {
            FormType::Odd if dim.is_multiple_of(2) => {
                return Err(Error::InvalidSpace("odd type needs odd dimension".into()))
            }
            FormType::Plus | FormType::Minus if dim % 2 == 1 => {
                return Err(Error::InvalidSpace("+/- type needs even dimension".into()))
            }
            FormType::Minus if dim == 0 => {
                return Err(Error::InvalidSpace(
                    "minus type needs dimension >= 2".into(),
                ))
            }
            _ => {}
        }
        let mut c = Mat::zeros(dim, dim);
        let planes = match ty {
            FormType::Plus => dim / 2,
            FormType::Minus => dim / 2 - 1,
            FormType::Odd => dim / 2,
        };
        for i in 0..planes {
            c.set(2 * i, 2 * i + 1, Fe::ONE);
        }
        match ty {
            FormType::Minus => {
                let (a, b, cc) = anisotropic_plane(f);
                let i = dim - 2;
                c.set(i, i, a);
                c.set(i, i + 1, b);
                c.set(i + 1, i + 1, cc);
            }
            FormType::Odd => c.set(dim - 1, dim - 1, Fe::ONE),
            FormType::Plus => {}
        }
        Ok(QuadraticSpace::new(f, &c))
    }

    /// Orthogonal sum of lines `Q = sum a_i x_i^2`.
    pub fn diagonal(field: &Field, a: &[Fe]) -> QuadraticSpace {
        let n = a.len();
        let mut c = Mat::zeros(n, n);
        for (i, &x) in a.iter().enumerate() {
            c.set(i, i, x);
        }
        QuadraticSpace::new(field, &c)
    }

    pub fn value(&self, v: &[Fe]) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            for j in i..self.dim {
                let c = self.coef.get(i, j);
                if !c.is_zero() {
                    acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])));
                }
            }
        }
        acc
    }

    /// Gram matrix of the polar form `B(u, v) = Q(u + v) - Q(u) - Q(v)`.
    pub fn gram(&self) -> Mat {
        let f = &self.field;
        let n = self.dim;
        let mut b = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    f.add(self.coef.get(i, i), self.coef.get(i, i))
                } else if i < j {
                    self.coef.get(i, j)
                } else {
                    self.coef.get(j, i)
                };
                b.set(i, j, v);
            }
        }
        b
    }

    pub fn bilinear(&self, u: &[Fe], v: &[Fe]) -> Fe {
        let f = &self.field;
        let q1 = self.value(&linalg::axpy(f, Fe::ONE, u, v));
        f.sub(f.sub(q1, self.value(u)), self.value(v))
    }

    pub fn radical(&self) -> Vec<Vec<Fe>> {
        self.gram().kernel(&self.field)
    }

    pub fn is_nondegenerate(&self) -> bool {
        let rad = self.radical();
        match rad.len() {
            0 => true,
            1 => self.field.p() == 2 && self.dim % 2 == 1 && !self.value(&rad[0]).is_zero(),
            _ => false,
        }
    }

    /// `det B` up to squares, for odd `q`: `+1` or `-1`.
    pub fn discriminant_class(&self) -> i32 {
        let d = self.gram().det(&self.field);
        self.field.square_class(d)
    }

    pub fn scaled(&self, lambda: Fe) -> QuadraticSpace {
        QuadraticSpace {
            field: self.field.clone(),
            dim: self.dim,
            coef: self.coef.scale(&self.field, lambda),
        }
    }

    pub fn witt_decompose(&self) -> Result<Witt> {
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        let f = &self.field;
        let n = self.dim;
        let mut basis: Vec<Vec<Fe>> = Mat::identity(n).row_vecs();
        let mut index = 0;
        'outer: loop {
            let m = basis.len();
            for c in linalg::projective_points(f, m) {
                let v = combine(f, n, &c, &basis);
                if !self.value(&v).is_zero() {
                    continue;
                }
                let Some(b) = basis.iter().find(|b| !self.bilinear(&v, b).is_zero()) else {
                    continue;
                };
                let w0 = scale_vec(f, f.inv(self.bilinear(&v, b)).unwrap(), b);
                let w = linalg::axpy(f, f.neg(self.value(&w0)), &v, &w0);
                index += 1;
                let mut sys = Mat::zeros(2, m);
                for (j, bj) in basis.iter().enumerate() {
                    sys.set(0, j, self.bilinear(&v, bj));
                    sys.set(1, j, self.bilinear(&w, bj));
                }
                basis = sys
                    .kernel(f)
                    .iter()
                    .map(|k| combine(f, n, k, &basis))
                    .collect();
                continue 'outer;
            }
            break;
        }
        let a = basis.len();
        Ok(Witt {
            witt_index: index,
            witt_defect: if n.is_multiple_of(2) {
                Some((a / 2) as u8)
            } else {
                None
            },
            anisotropic_dim: a,
        })
    }

    pub fn form_type(&self) -> Result<FormType> {
        Ok(match self.witt_decompose()?.witt_defect {
            None => FormType::Odd,
            Some(0) => FormType::Plus,
            Some(_) => FormType::Minus,
        })
    }

    /// The form restricted to the span of `basis` (rows), in those coordinates.
    pub fn restrict(&self, basis: &[Vec<Fe>]) -> QuadraticSpace {
        let f = &self.field;
        let m = basis.len();
        let mut c = Mat::zeros(m, m);
        for i in 0..m {
            c.set(i, i, self.value(&basis[i]));
            for j in i + 1..m {
                c.set(i, j, self.bilinear(&basis[i], &basis[j]));
            }
        }
        QuadraticSpace::new(f, &c)
    }

    pub fn orthogonal_sum(&self, o: &QuadraticSpace) -> QuadraticSpace {
        QuadraticSpace {
            field: self.field.clone(),
            dim: self.dim + o.dim,
            coef: Mat::block_diag(&[&self.coef, &o.coef]),
        }
    }

    pub fn orthogonal_complement(&self, sub: &[Vec<Fe>]) -> Subspace {
        let f = &self.field;
        if sub.is_empty() {
            return Subspace::span(f, self.dim, &Mat::identity(self.dim).row_vecs());
        }
        let g = self.gram();
        let rows: Vec<Vec<Fe>> = sub.iter().map(|v| g.apply(f, v)).collect();
        let k = Mat::from_rows(&rows).kernel(f);
        Subspace::span(f, self.dim, &k)
    }

    pub fn eigenspace(&self, g: &Mat, lambda: Fe) -> Subspace {
        let f = &self.field;
        Subspace::span(f, self.dim, &g.shift(f, lambda).kernel(f))
    }

    pub fn fixed_space(&self, g: &Mat) -> Subspace {
        self.eigenspace(g, Fe::ONE)
    }

    /// The image of `g - 1`.
    pub fn moved_space(&self, g: &Mat) -> Subspace {
        let f = &self.field;
        Subspace::span(f, self.dim, &g.shift(f, Fe::ONE).image(f))
    }

    pub fn preserves(&self, g: &Mat) -> bool {
        let f = &self.field;
        let cols: Vec<Vec<Fe>> = (0..self.dim).map(|j| g.col(j)).collect();
        let e = Mat::identity(self.dim).row_vecs();
        (0..self.dim).all(|i| {
            self.value(&cols[i]) == self.value(&e[i])
                && (i + 1..self.dim)
                    .all(|j| self.bilinear(&cols[i], &cols[j]) == self.bilinear(&e[i], &e[j]))
        }) && g.det(f) != Fe::ZERO
    }

    pub fn singular_points(&self) -> Vec<Vec<Fe>> {
        linalg::projective_points(&self.field, self.dim)
            .into_iter()
            .filter(|v| self.value(v).is_zero())
            .collect()
    }

    /// Every `k`-dimensional totally singular subspace, sorted.
    pub fn totally_singular_subspaces(&self, k: usize) -> Vec<Subspace> {
        let f = &self.field;
        let pts = self.singular_points();
        let mut level: BTreeSet<Subspace> = BTreeSet::new();
        if k == 0 {
            level.insert(Subspace {
                n: self.dim,
                basis: Vec::new(),
            });
            return level.into_iter().collect();
        }
        for p in &pts {
            level.insert(Subspace::span(f, self.dim, std::slice::from_ref(p)));
        }
        for _ in 1..k {
            let mut next = BTreeSet::new();
            for u in &level {
                for p in &pts {
                    if u.basis.iter().any(|b| !self.bilinear(b, p).is_zero()) || u.contains(f, p) {
                        continue;
                    }
                    let mut vs = u.basis.clone();
                    vs.push(p.clone());
                    next.insert(Subspace::span(f, self.dim, &vs));
                }
            }
            level = next;
        }
        level.into_iter().collect()
    }

    /// A linear map `M` (columns are images of the basis of `self`) with
    /// `Q_dst(M x) = lambda Q_self(x)` for some nonzero `lambda`.
    pub fn find_similarity(&self, dst: &QuadraticSpace) -> Option<(Mat, Fe)> {
        if self.dim != dst.dim {
            return None;
        }
        let f = &self.field;
        let lambda = if f.p() == 2 {
            if self.dim.is_multiple_of(2) && self.form_type().ok()? != dst.form_type().ok()? {
                return None;
            }
            Fe::ONE
        } else if self.discriminant_class() == dst.discriminant_class() {
            Fe::ONE
        } else if self.dim % 2 == 1 {
            f.nonsquare().unwrap()
        } else {
            return None;
        };
        let targets: Vec<(Vec<Fe>, Fe)> = linalg::all_vectors(f, dst.dim)
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .map(|v| {
                let q = dst.value(&v);
                (v, q)
            })
            .collect();
        let src = self.scaled(lambda);
        let e = Mat::identity(self.dim).row_vecs();
        let mut chosen: Vec<Vec<Fe>> = Vec::new();
        if search_isometry(&src, dst, &e, &targets, &mut chosen) {
            return Some((Mat::from_cols(dst.dim, &chosen), lambda));
        }
        None
    }
}

fn search_isometry(
    src: &QuadraticSpace,
    dst: &QuadraticSpace,
    e: &[Vec<Fe>],
    targets: &[(Vec<Fe>, Fe)],
    chosen: &mut Vec<Vec<Fe>>,
) -> bool {
    let f = &src.field;
    let i = chosen.len();
    if i == src.dim {
        return true;
    }
    let want = src.value(&e[i]);
    let wb: Vec<Fe> = (0..i).map(|j| src.bilinear(&e[i], &e[j])).collect();
    for (x, qx) in targets {
        if *qx != want {
            continue;
        }
        if (0..i).any(|j| dst.bilinear(x, &chosen[j]) != wb[j]) {
            continue;
        }
        let mut vs = chosen.clone();
        vs.push(x.clone());
        if linalg::span(f, dst.dim, &vs).len() != i + 1 {
            continue;
        }
        chosen.push(x.clone());
        if search_isometry(src, dst, e, targets, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// `(a, b, c)` with `a x^2 + b x y + c y^2` anisotropic: `x^2 - nu y^2` for
/// odd `q`, `x^2 + x y + c y^2` with `c` of trace one for even `q`.
pub fn anisotropic_plane(f: &Field) -> (Fe, Fe, Fe) {
    if f.p() != 2 {
        let nu = f.nonsquare().unwrap();
        return (Fe::ONE, Fe::ZERO, f.neg(nu));
    }
    let c = f
        .elements()
        .find(|&c| {
            f.elements()
                .all(|x| f.add(f.add(f.mul(x, x), x), c) != Fe::ZERO)
        })
        .unwrap();
    (Fe::ONE, Fe::ONE, c)
}

fn combine(f: &Field, n: usize, c: &[Fe], basis: &[Vec<Fe>]) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; n];
    for (ci, b) in c.iter().zip(basis) {
        if !ci.is_zero() {
            v = linalg::axpy(f, *ci, b, &v);
        }
    }
    v
}

fn scale_vec(f: &Field, a: Fe, v: &[Fe]) -> Vec<Fe> {
    v.iter().map(|&x| f.mul(a, x)).collect()
}

/// Coordinates of `v` in a basis, if it lies in the span.
pub fn coordinates(f: &Field, basis: &[Vec<Fe>], v: &[Fe]) -> Option<Vec<Fe>> {
    let n = v.len();
    let m = basis.len();
    let mut a = Mat::zeros(n, m + 1);
    for i in 0..n {
        for j in 0..m {
            a.set(i, j, basis[j][i]);
        }
        a.set(i, m, v[i]);
    }
    let (r, piv) = a.rref(f);
    if piv.contains(&m) {
        return None;
    }
    let mut out = vec![Fe::ZERO; m];
    for (row, &c) in piv.iter().enumerate() {
        out[c] = r.get(row, m);
    }
    Some(out)
}
