//! Maximal tori of orthogonal groups parametrized by orthogonal
//! decompositions, realized by Singer-type cyclic factors.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::{self, Mat};
use crate::matgrp::embed::basis_coordinates;
use crate::matgrp::{reflection, ClassFunction, MatGroup};
use crate::quadspace::{FormType, QuadraticSpace};
use crate::weyl::{self, ClassLabel};

/// `V = V_0 (+) V_1 (+) .. (+) V_{k+l}`: `d_i` plus blocks of dimension
/// `2i`, `e_j` minus blocks of dimension `2j`, and `dim0` in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrthoDecomp {
    pub label: ClassLabel,
    pub dim0: usize,
}

impl OrthoDecomp {
    pub fn dim(&self) -> usize {
        2 * self.label.rank() + self.dim0
    }
}

impl fmt::Display for OrthoDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusClass {
    Neutral,
    Exceptional,
    Generic,
}

impl fmt::Display for TorusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorusClass::Neutral => "neutral",
            TorusClass::Exceptional => "exceptional",
            TorusClass::Generic => "generic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusSpec {
    pub decomp: OrthoDecomp,
    pub ty: FormType,
    pub dim: usize,
    pub q: u64,
    pub branch: Option<Branch>,
}

fn weyl_ambient(ty: FormType) -> weyl::Ambient {
    match ty {
        FormType::Odd => weyl::Ambient::B,
        FormType::Plus => weyl::Ambient::DPlus,
        FormType::Minus => weyl::Ambient::DMinus,
    }
}

/// Every torus class of `SO(V)` for `V` of the given shape; exceptional
/// decompositions of plus-type spaces appear twice.
pub fn enumerate_decomps(ty: FormType, dim: usize, q: u64) -> Result<Vec<TorusSpec>> {
    let n = dim / 2;
    if (ty == FormType::Odd) != (dim % 2 == 1) {
        return Err(Error::InvalidSpace(format!("type {ty} in dimension {dim}")));
    }
    if n > 6 {
        return Err(Error::Unsupported("torus enumeration needs n <= 6".into()));
    }
    let mut out = Vec::new();
    for label in ClassLabel::all(n) {
        let l = label.l();
        let ok = match ty {
            FormType::Odd => true,
            FormType::Plus => l % 2 == 0,
            FormType::Minus => l % 2 == 1,
        };
        if !ok {
            continue;
        }
        let decomp = OrthoDecomp {
            label: label.clone(),
            dim0: dim % 2,
        };
        let branches = if ty == FormType::Plus && label.is_exceptional() && n > 0 {
            vec![Some(Branch::First), Some(Branch::Second)]
        } else {
            vec![None]
        };
        for branch in branches {
            out.push(TorusSpec {
                decomp: decomp.clone(),
                ty,
                dim,
                q,
                branch,
            });
        }
    }
    Ok(out)
}

impl TorusSpec {
    /// `prod (q^i - 1)^{d_i} prod (q^j + 1)^{e_j}`
    pub fn order(&self) -> u64 {
        let l = &self.decomp.label;
        let plus: u64 =
            l.d.iter()
                .map(|(&i, &c)| (self.q.pow(i as u32) - 1).pow(c as u32))
                .product();
        let minus: u64 =
            l.e.iter()
                .map(|(&j, &c)| (self.q.pow(j as u32) + 1).pow(c as u32))
                .product();
        plus * minus
    }

    pub fn classify(&self) -> TorusClass {
        let l = &self.decomp.label;
        if l.is_exceptional() && l.rank() > 0 {
            TorusClass::Exceptional
        } else if l.is_neutral() {
            TorusClass::Neutral
        } else {
            TorusClass::Generic
        }
    }

    pub fn weyl_order(&self) -> Result<u64> {
        weyl::torus_weyl_order(weyl_ambient(self.ty), &self.decomp.label)
    }

    /// Factor kinds and sizes in block order: plus blocks by `i`, then minus
    /// blocks by `j`.
    pub fn factor_shapes(&self) -> Vec<(FactorSign, usize)> {
        let l = &self.decomp.label;
        let mut v = Vec::new();
        for (&i, &c) in &l.d {
            v.extend(std::iter::repeat_n((FactorSign::Plus, i), c));
        }
        for (&j, &c) in &l.e {
            v.extend(std::iter::repeat_n((FactorSign::Minus, j), c));
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct TorusFactor {
    pub sign: FactorSign,
    pub size: usize,
    pub order: u64,
    pub generator: Mat,
}

/// A torus realized inside an enumerated orthogonal group.
#[derive(Clone, Debug)]
pub struct ExplicitTorus {
    pub spec: TorusSpec,
    pub factors: Vec<TorusFactor>,
    /// `(exponents, packed element)` for every element of the torus.
    pub elements: Vec<(Vec<u64>, u128)>,
    /// Exponent of the torus.
    pub exponent: u64,
}

/// `Q(x) = sum x_a x_{i+a}` on `2i` coordinates with `diag(h, h^-T)`, `h`
/// multiplication by a primitive element of GF(q^i).
fn plus_block(f: &Field, i: usize) -> Result<(QuadraticSpace, Mat)> {
    let ext = Field::new(f.p(), f.k() * i as u32)?;
    let emb = f.embedding_into(&ext)?;
    let x = ext.generator();
    let basis: Vec<Fe> = (0..i).map(|t| ext.pow(x, t as u64)).collect();
    let coords = basis_coordinates(&emb, &basis);
    let g = ext.primitive();
    let cols: Vec<Vec<Fe>> = basis
        .iter()
        .map(|&b| coords[ext.mul(g, b).0 as usize].clone())
        .collect();
    let h = Mat::from_cols(i, &cols);
    let hit = h.inverse(f).ok_or(Error::Degenerate)?.transpose();
    let mut coef = Mat::zeros(2 * i, 2 * i);
    for a in 0..i {
        coef.set(a, i + a, Fe::ONE);
    }
    Ok((QuadraticSpace::new(f, &coef), Mat::block_diag(&[&h, &hit])))
}

/// GF(q^{2j}) with `Q(x) = Tr_{GF(q^j)/GF(q)}(x^{q^j + 1})` and
/// multiplication by an element of order `q^j + 1`.
fn minus_block(f: &Field, j: usize) -> Result<(QuadraticSpace, Mat)> {
    let ext = Field::new(f.p(), f.k() * 2 * j as u32)?;
    let emb = f.embedding_into(&ext)?;
    let q = f.q() as u64;
    let qj = q.pow(j as u32);
    let x = ext.generator();
    let basis: Vec<Fe> = (0..2 * j).map(|t| ext.pow(x, t as u64)).collect();
    let coords = basis_coordinates(&emb, &basis);
    let form = |y: Fe| {
        let nrm = ext.pow(y, qj + 1);
        let tr = (0..j).fold(Fe::ZERO, |acc, t| {
            ext.add(acc, ext.pow(nrm, q.pow(t as u32)))
        });
        emb.preimage(tr).expect("trace lies in the base field")
    };
    let n = 2 * j;
    let mut coef = Mat::zeros(n, n);
    for a in 0..n {
        coef.set(a, a, form(basis[a]));
        for b in a + 1..n {
            let v = f.sub(
                f.sub(form(ext.add(basis[a], basis[b])), form(basis[a])),
                form(basis[b]),
            );
            coef.set(a, b, v);
        }
    }
    let space = QuadraticSpace::new(f, &coef);
    if space.form_type()? != FormType::Minus {
        return Err(Error::Internal("trace form is not of minus type".into()));
    }
    let t = ext.pow(ext.primitive(), qj - 1);
    let cols: Vec<Vec<Fe>> = basis
        .iter()
        .map(|&b| coords[ext.mul(t, b).0 as usize].clone())
        .collect();
    Ok((space, Mat::from_cols(n, &cols)))
}

/// The model space of a decomposition with one generator per factor, in
/// model coordinates.
pub fn model(spec: &TorusSpec, f: &Field) -> Result<(QuadraticSpace, Vec<TorusFactor>)> {
    let mut space: Option<QuadraticSpace> = None;
    let mut blocks = Vec::new();
    for (sign, size) in spec.factor_shapes() {
        let (s, g) = match sign {
            FactorSign::Plus => plus_block(f, size)?,
            FactorSign::Minus => minus_block(f, size)?,
        };
        let q = f.q() as u64;
        let order = match sign {
            FactorSign::Plus => q.pow(size as u32) - 1,
            FactorSign::Minus => q.pow(size as u32) + 1,
        };
        blocks.push((sign, size, order, g, s.dim));
        space = Some(match space {
            None => s,
            Some(acc) => acc.orthogonal_sum(&s),
        });
    }
    if spec.decomp.dim0 == 1 {
        let line = QuadraticSpace::diagonal(f, &[Fe::ONE]);
        space = Some(match space {
            None => line,
            Some(acc) => acc.orthogonal_sum(&line),
        });
    }
    let space = space.ok_or_else(|| Error::InvalidSpace("empty decomposition".into()))?;
    let total = space.dim;
    let mut at = 0;
    let mut factors = Vec::new();
    for (sign, size, order, g, d) in blocks {
        let mut big = Mat::identity(total);
        for a in 0..d {
            for b in 0..d {
                big.set(at + a, at + b, g.get(a, b));
            }
        }
        at += d;
        factors.push(TorusFactor {
            sign,
            size,
            order,
            generator: big,
        });
    }
    Ok((space, factors))
}

fn conjugate(f: &Field, p: &Mat, pinv: &Mat, g: &Mat) -> Mat {
    p.mul(f, g).mul(f, pinv)
}

/// An isometry of determinant -1 (odd `q`) or Dickson invariant 1 (even
/// `q`): the reflection in the first anisotropic point.
pub fn outer_isometry(space: &QuadraticSpace) -> Mat {
    let f = &space.field;
    let v = linalg::projective_points(f, space.dim)
        .into_iter()
        .find(|v| !space.value(v).is_zero())
        .expect("nondegenerate space");
    reflection(space, &v)
}

/// Realizes the torus inside `g`, whose space must match the decomposition's dimension and type.
pub fn build_torus(spec: &TorusSpec, g: &MatGroup) -> Result<ExplicitTorus> {
    let space = g
        .space()
        .ok_or_else(|| Error::Unsupported("torus needs an orthogonal group".into()))?;
    let f = &g.field;
    if space.dim != spec.dim || space.form_type()? != spec.ty {
        return Err(Error::InvalidSpace(format!(
            "{} does not match the torus ambient",
            g.label
        )));
    }
    let (ms, mut factors) = model(spec, f)?;
    let (p, _) = ms
        .find_similarity(space)
        .ok_or_else(|| Error::Internal("model space is not similar to the group space".into()))?;
    let pinv = p.inverse(f).ok_or(Error::Degenerate)?;
    let outer = (spec.branch == Some(Branch::Second)).then(|| outer_isometry(space));
    for fac in factors.iter_mut() {
        let mut x = conjugate(f, &p, &pinv, &fac.generator);
        if let Some(r) = &outer {
            x = conjugate(f, r, r, &x);
        }
        if !space.preserves(&x) || !g.contains(g.pack(&x)) {
            return Err(Error::Internal(format!(
                "torus generator for {} lies outside {}",
                spec.decomp, g.label
            )));
        }
        fac.generator = x;
    }
    let pk = &g.packer;
    let gens: Vec<u128> = factors.iter().map(|x| pk.pack(&x.generator)).collect();
    let mut elements = vec![(Vec::new(), pk.identity())];
    for (r, fac) in factors.iter().enumerate() {
        let mut next = Vec::with_capacity(elements.len() * fac.order as usize);
        for (e, x) in &elements {
            let mut y = *x;
            for a in 0..fac.order {
                let mut e2 = e.clone();
                e2.push(a);
                next.push((e2, y));
                y = pk.mul(y, gens[r]);
            }
        }
        elements = next;
    }
    let distinct: HashSet<u128> = elements.iter().map(|x| x.1).collect();
    if distinct.len() as u64 != spec.order() {
        return Err(Error::Internal(format!(
            "torus {} has order {}",
            spec.decomp,
            distinct.len()
        )));
    }
    let exponent = factors.iter().fold(1u64, |acc, x| acc.lcm(&x.order));
    Ok(ExplicitTorus {
        spec: spec.clone(),
        factors,
        elements,
        exponent,
    })
}

/// A linear character `t -> zeta_M^{sum a_r b_r M / n_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorusCharacter {
    pub index: Vec<u64>,
}

impl ExplicitTorus {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn packed(&self) -> Vec<u128> {
        let mut v: Vec<u128> = self.elements.iter().map(|x| x.1).collect();
        v.sort_unstable();
        v
    }

    pub fn characters(&self) -> Vec<TorusCharacter> {
        let mut out = vec![Vec::new()];
        for fac in &self.factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..fac.order).map(move |b| {
                        let mut w = v.clone();
                        w.push(b);
                        w
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|index| TorusCharacter { index })
            .collect()
    }

    /// Exponent `e` with `theta(t) = zeta_M^e`.
    pub fn value_exponent(&self, theta: &TorusCharacter, exps: &[u64]) -> u64 {
        let m = self.exponent;
        let mut e = 0;
        for (r, fac) in self.factors.iter().enumerate() {
            e += exps[r] * theta.index[r] * (m / fac.order);
        }
        e % m
    }

    pub fn value(&self, theta: &TorusCharacter, exps: &[u64]) -> CycInt {
        CycInt::term(
            self.exponent as usize,
            1,
            self.value_exponent(theta, exps) as i64,
        )
    }

    /// The number of trivial components on plus factors, or `None` when a
    /// minus component is trivial.
    pub fn plus_trivial_count(&self, theta: &TorusCharacter) -> Option<u32> {
        let mut k = 0;
        for (r, fac) in self.factors.iter().enumerate() {
            if theta.index[r] == 0 {
                match fac.sign {
                    FactorSign::Plus => k += 1,
                    FactorSign::Minus => return None,
                }
            }
        }
        Some(k)
    }

    /// `0` if a minus component is trivial, else `2^{k(theta)}`.
    pub fn expected_omega_multiplicity(&self, theta: &TorusCharacter) -> i64 {
        self.plus_trivial_count(theta).map_or(0, |k| 1 << k)
    }

    /// Common fixed space of the torus.
    pub fn fixed_space(&self, space: &QuadraticSpace) -> Vec<Vec<Fe>> {
        let f = &space.field;
        let n = space.dim;
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for fac in &self.factors {
            rows.extend(fac.generator.shift(f, Fe::ONE).row_vecs());
        }
        if rows.is_empty() {
            return Mat::identity(n).row_vecs();
        }
        Mat::from_rows(&rows).kernel(f)
    }

    /// `|C_G(T)|` by direct count.
    pub fn centralizer_order(&self, g: &MatGroup) -> u64 {
        let pk = &g.packer;
        let gens: Vec<u128> = self.factors.iter().map(|x| pk.pack(&x.generator)).collect();
        use rayon::prelude::*;
        g.elements
            .par_iter()
            .filter(|&&x| gens.iter().all(|&t| pk.mul(x, t) == pk.mul(t, x)))
            .count() as u64
    }
}

/// `<f|_T, theta>` for every character of the torus.
pub fn restrict_decompose(
    g: &MatGroup,
    f: &ClassFunction,
    torus: &ExplicitTorus,
) -> Result<Vec<(TorusCharacter, i64)>> {
    if f.group != g.fingerprint() {
        return Err(Error::GroupMismatch);
    }
    let m = torus.exponent as usize;
    let vals: Vec<i64> = torus
        .elements
        .iter()
        .map(|(_, x)| {
            let v = f
                .value_at(g, *x)
                .ok_or_else(|| Error::Internal("torus element outside the group".into()))?;
            if !v.is_integer() {
                return Err(Error::Unsupported(
                    "restriction of a non-integral class function".into(),
                ));
            }
            Ok(v.to_integer() as i64)
        })
        .collect::<Result<_>>()?;
    let order = torus.order() as i64;
    let mut out = Vec::new();
    for theta in torus.characters() {
        let mut acc = CycInt::zero(m);
        for ((exps, _), &v) in torus.elements.iter().zip(&vals) {
            acc.add_term(v, -(torus.value_exponent(&theta, exps) as i64));
        }
        let total = acc.as_integer().ok_or_else(|| {
            Error::Internal(format!("non-rational multiplicity at {:?}", theta.index))
        })?;
        if total % order != 0 {
            return Err(Error::Internal(format!(
                "non-integral multiplicity at {:?}",
                theta.index
            )));
        }
        out.push((theta, total / order));
    }
    Ok(out)
}

/// Whether some element of `conj` carries `t1` onto `t2`.
pub fn tori_conjugate(conj: &MatGroup, t1: &ExplicitTorus, t2: &ExplicitTorus) -> bool {
    if t1.order() != t2.order() {
        return false;
    }
    let pk = &conj.packer;
    let target: HashSet<u128> = t2.elements.iter().map(|x| x.1).collect();
    let gens: Vec<u128> = t1.factors.iter().map(|x| pk.pack(&x.generator)).collect();
    use rayon::prelude::*;
    conj.elements.par_iter().any(|&x| {
        let xi = pk.inverse(x);
        gens.iter()
            .all(|&t| target.contains(&pk.mul(pk.mul(x, t), xi)))
    })
}

/// Sorted element orders and fixed-space dimensions: a conjugacy invariant.
pub fn torus_profile(g: &MatGroup, torus: &ExplicitTorus) -> Vec<(u64, usize)> {
    let space = g.space().expect("orthogonal group");
    let mut v: Vec<(u64, usize)> = torus
        .elements
        .iter()
        .map(|(_, x)| {
            let m = g.unpack(*x);
            (g.packer.order(*x), space.fixed_space(&m).dim())
        })
        .collect();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusRow {
    pub decomp: String,
    pub branch: Option<Branch>,
    pub order: u64,
    pub classification: TorusClass,
    pub weyl_order: u64,
}

pub fn torus_table(ty: FormType, dim: usize, q: u64) -> Result<Vec<TorusRow>> {
    enumerate_decomps(ty, dim, q)?
        .into_iter()
        .map(|s| {
            Ok(TorusRow {
                decomp: s.decomp.to_string(),
                branch: s.branch,
                order: s.order(),
                classification: s.classify(),
                weyl_order: s.weyl_order()?,
            })
        })
        .collect()
}
