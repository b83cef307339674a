//! Centralizer shapes, the Steinberg character, the Curtis dual of the
//! restricted Steinberg character, and its series census.

pub mod census;
pub mod checks;

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::poly::Poly;
use crate::gf::{Fe, Field};
use crate::linalg::Mat;
use crate::matgrp::embed::Embedding;
use crate::matgrp::order::{gl_order, orthogonal_order, sp_order, unitary_order};
use crate::matgrp::{
    inner_product, p_part, BuildOptions, ClassFunction, Form, GroupKind, MatGroup,
};
use crate::quadspace::{FormType, QuadraticSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    GL,
    U,
    SOPlus,
    SOMinus,
    SOOdd,
    Sp,
}

/// `GL_a(q^d)`, `U_a(q^d)`, or a classical group of dimension `a` over
/// GF(q) (`d = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeFactor {
    pub kind: FactorKind,
    pub size: usize,
    pub degree: u32,
}

impl ShapeFactor {
    pub fn rank(&self) -> u32 {
        let a = self.size as u32;
        match self.kind {
            FactorKind::GL => a,
            FactorKind::U => a / 2,
            FactorKind::SOOdd => a.saturating_sub(1) / 2,
            FactorKind::SOPlus | FactorKind::Sp => a / 2,
            FactorKind::SOMinus => (a / 2).saturating_sub(1),
        }
    }

    /// Closed-form order; for orthogonal factors the order of the special
    /// orthogonal group (odd `q`) or of `Omega` (even `q`).
    pub fn order(&self, q: u128) -> u128 {
        let qd = q.pow(self.degree);
        let a = self.size as u32;
        match self.kind {
            FactorKind::GL => gl_order(a, qd),
            FactorKind::U => unitary_order(a, qd),
            FactorKind::SOOdd | FactorKind::Sp => sp_order(a / 2, q),
            FactorKind::SOPlus => orthogonal_order(FormType::Plus, a, q) / 2,
            FactorKind::SOMinus => orthogonal_order(FormType::Minus, a, q) / 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerShape {
    pub factors: Vec<ShapeFactor>,
    pub outer_index: u32,
}

impl CentralizerShape {
    /// Rank of the connected component.
    pub fn rank(&self) -> u32 {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    pub fn eps(&self) -> i32 {
        sign_of_rank(self.rank())
    }

    pub fn predicted_order(&self, q: u128) -> u128 {
        self.outer_index as u128 * self.factors.iter().map(|f| f.order(q)).product::<u128>()
    }
}

impl fmt::Display for CentralizerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                let name = match x.kind {
                    FactorKind::GL => "GL",
                    FactorKind::U => "U",
                    FactorKind::SOPlus => "SO+",
                    FactorKind::SOMinus => "SO-",
                    FactorKind::SOOdd => "SO",
                    FactorKind::Sp => "Sp",
                };
                if x.degree > 1 {
                    format!("{name}{}(q^{})", x.size, x.degree)
                } else {
                    format!("{name}{}(q)", x.size)
                }
            })
            .collect();
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" x ")
        };
        if self.outer_index > 1 {
            write!(f, "({body}).{}", self.outer_index)
        } else {
            f.write_str(&body)
        }
    }
}

/// Exact rationals serialize as `"a"` or `"a/b"`.
pub fn ser_ratio<S: serde::Serializer>(
    x: &Ratio<i128>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn sign_of_rank(r: u32) -> i32 {
    if r.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A classical group described by its form and kind, enumerated or not.
#[derive(Clone, Debug)]
pub struct AmbientGroup {
    pub field: Field,
    pub form: Form,
    pub kind: GroupKind,
}

impl AmbientGroup {
    pub fn of(g: &MatGroup) -> AmbientGroup {
        AmbientGroup {
            field: g.field.clone(),
            form: g.form.clone(),
            kind: g.kind,
        }
    }

    pub fn orthogonal(space: &QuadraticSpace, kind: GroupKind) -> AmbientGroup {
        AmbientGroup {
            field: space.field.clone(),
            form: Form::Quadratic(space.clone()),
            kind,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.form {
            Form::Quadratic(s) => s.dim,
            Form::Alternating(j) => j.rows,
            Form::None => 0,
        }
    }

    fn check_supported(&self) -> Result<()> {
        let even_q = self.field.p() == 2;
        match (&self.form, self.kind) {
            (Form::Alternating(_), _) => Ok(()),
            (Form::Quadratic(_), GroupKind::SO) if !even_q => Ok(()),
            (Form::Quadratic(s), GroupKind::Omega) if even_q || s.dim <= 1 => Ok(()),
            (Form::Quadratic(s), GroupKind::O | GroupKind::SO) if even_q && s.dim % 2 == 1 => {
                Ok(())
            }
            _ => Err(Error::Unsupported(format!(
                "Steinberg character of {} over GF({})",
                self.kind,
                self.field.q()
            ))),
        }
    }

    /// `F_q`-rank of the group.
    pub fn rank(&self) -> Result<u32> {
        let n = (self.dim() / 2) as u32;
        Ok(match &self.form {
            Form::Quadratic(s) => match s.form_type()? {
                FormType::Minus => n - 1,
                _ => n,
            },
            _ => n,
        })
    }

    pub fn eps(&self) -> Result<i32> {
        Ok(sign_of_rank(self.rank()?))
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(self.form, Form::Alternating(_))
    }
}

/// `x - 1` and `x + 1`.
fn unit_polys(f: &Field) -> (Poly, Poly) {
    (Poly::linear(f, Fe::ONE), Poly::linear(f, f.neg(Fe::ONE)))
}

pub fn is_semisimple(f: &Field, g: &Mat) -> bool {
    let rad = g
        .charpoly(f)
        .factor(f)
        .into_iter()
        .fold(Poly::one(), |acc, (p, _)| acc.mul(f, &p));
    g.eval_poly(f, &rad).e.iter().all(|x| x.is_zero())
}

fn eigen_factor(amb: &AmbientGroup, g: &Mat, lambda: Fe) -> Result<Option<(ShapeFactor, usize)>> {
    let f = &amb.field;
    let basis = g.shift(f, lambda).kernel(f);
    let a = basis.len();
    if a == 0 {
        return Ok(None);
    }
    let kind = match &amb.form {
        Form::Alternating(_) => FactorKind::Sp,
        Form::Quadratic(s) => {
            if s.dim % 2 == 1 && f.p() == 2 {
                FactorKind::SOOdd
            } else {
                match s.restrict(&basis).form_type()? {
                    FormType::Odd => FactorKind::SOOdd,
                    FormType::Plus => FactorKind::SOPlus,
                    FormType::Minus => FactorKind::SOMinus,
                }
            }
        }
        Form::None => unreachable!(),
    };
    Ok(Some((
        ShapeFactor {
            kind,
            size: a,
            degree: 1,
        },
        a,
    )))
}

/// The shape of `C_G(g)` for semisimple `g` in the ambient group.
pub fn centralizer_shape(amb: &AmbientGroup, g: &Mat) -> Result<CentralizerShape> {
    amb.check_supported()?;
    let f = &amb.field;
    if !is_semisimple(f, g) {
        return Err(Error::InvalidSpace("element is not semisimple".into()));
    }
    let even_q = f.p() == 2;
    let (xm1, xp1) = unit_polys(f);
    let mut factors = Vec::new();
    let fixed = eigen_factor(amb, g, Fe::ONE)?;
    let minus = if even_q {
        None
    } else {
        eigen_factor(amb, g, f.neg(Fe::ONE))?
    };
    let (has_fixed, has_minus) = (fixed.is_some(), minus.is_some());
    factors.extend(fixed.map(|x| x.0));
    factors.extend(minus.map(|x| x.0));
    for (p, mult) in g.charpoly(f).factor(f) {
        if p == xm1 || p == xp1 {
            continue;
        }
        let r = p.reciprocal(f).expect("invertible element");
        let d = p.degree().unwrap() as u32;
        if r == p {
            factors.push(ShapeFactor {
                kind: FactorKind::U,
                size: mult,
                degree: d / 2,
            });
        } else if p < r {
            factors.push(ShapeFactor {
                kind: FactorKind::GL,
                size: mult,
                degree: d,
            });
        }
    }
    let outer_index = match (&amb.form, amb.kind) {
        (Form::Quadratic(_), GroupKind::SO) if !even_q && has_fixed && has_minus => 2,
        _ => 1,
    };
    Ok(CentralizerShape {
        factors,
        outer_index,
    })
}

fn st_p_part(g: &MatGroup, class: usize) -> u128 {
    let c = &g.classes()[class];
    p_part(c.centralizer_order as u128, g.field.p() as u128)
}

/// The Steinberg character: `eps_G eps_{C(h)} |C_G(h)|_p` on semisimple
/// classes and `0` elsewhere; `1_G` when `dim V <= 2`.
pub fn steinberg(g: &MatGroup) -> Result<ClassFunction> {
    let amb = AmbientGroup::of(g);
    amb.check_supported()?;
    if amb.dim() <= 2 {
        return Ok(ClassFunction::trivial(g));
    }
    let eg = amb.eps()?;
    let classes = g.classes();
    let vals: Vec<Result<i128>> = (0..classes.len())
        .into_par_iter()
        .map(|i| {
            let c = &classes[i];
            if !c.semisimple {
                return Ok(0);
            }
            let shape = centralizer_shape(&amb, &g.unpack(c.rep))?;
            Ok((eg * shape.eps()) as i128 * st_p_part(g, i) as i128)
        })
        .collect();
    let vals: Vec<i128> = vals.into_iter().collect::<Result<_>>()?;
    Ok(ClassFunction::from_ints(g, |i, _| vals[i]))
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeMismatch {
    pub class: usize,
    pub shape: String,
    pub predicted: u128,
    pub brute_force: u64,
}

/// Semisimple classes whose predicted centralizer order differs from the
/// enumerated one.
pub fn shape_mismatches(g: &MatGroup) -> Result<Vec<ShapeMismatch>> {
    let amb = AmbientGroup::of(g);
    let q = g.field.q() as u128;
    let mut out = Vec::new();
    for (i, c) in g.classes().iter().enumerate() {
        if !c.semisimple {
            continue;
        }
        let s = centralizer_shape(&amb, &g.unpack(c.rep))?;
        let predicted = s.predicted_order(q);
        if predicted != c.centralizer_order as u128 {
            out.push(ShapeMismatch {
                class: i,
                shape: s.to_string(),
                predicted,
                brute_force: c.centralizer_order,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SteinbergGates {
    #[serde(serialize_with = "ser_ratio")]
    pub norm: Ratio<i128>,
    #[serde(serialize_with = "ser_ratio")]
    pub with_trivial: Ratio<i128>,
    pub degree: i128,
    pub group_p_part: u128,
    pub pass: bool,
}

pub fn steinberg_gates(g: &MatGroup, st: &ClassFunction) -> Result<SteinbergGates> {
    let norm = inner_product(g, st, st)?;
    let with_trivial = inner_product(g, st, &ClassFunction::trivial(g))?;
    let id = g.class_of(g.packer.identity()).unwrap();
    let degree = st.values[id].to_integer();
    let gp = p_part(g.order() as u128, g.field.p() as u128);
    let pass = norm == Ratio::from_integer(1)
        && with_trivial == Ratio::from_integer(0)
        && degree == gp as i128;
    Ok(SteinbergGates {
        norm,
        with_trivial,
        degree,
        group_p_part: gp,
        pass,
    })
}

/// A group `H` of dimension one more containing `G`, with the embedding.
pub struct Overgroup {
    pub label: String,
    pub ambient: AmbientGroup,
    pub embedding: Embedding,
    pub group: Option<MatGroup>,
}

impl Overgroup {
    /// `eps_H eps_{C_H(x)}` and `|C_H(x)|_p` for semisimple `x` in `H`;
    /// the p-part is enumerated when `H` is, and checked against the shape.
    pub fn steinberg_at(&self, x: &Mat) -> Result<(i32, u128, CentralizerShape)> {
        let shape = centralizer_shape(&self.ambient, x)?;
        let f = &self.ambient.field;
        let q = f.q() as u128;
        let pp = p_part(shape.predicted_order(q), f.p() as u128);
        if let Some(h) = &self.group {
            let c = h
                .class_of_mat(x)
                .ok_or_else(|| Error::Internal(format!("embedded element outside {}", h.label)))?;
            let brute = st_p_part(h, c);
            if brute != pp {
                return Err(Error::Internal(format!(
                    "centralizer p-part in {}: shape {shape} predicts {pp}, enumeration gives {brute}",
                    h.label
                )));
            }
        }
        Ok((self.ambient.eps()? * shape.eps(), pp, shape))
    }

    /// `St_H(x)` for semisimple `x`.
    pub fn steinberg_value(&self, x: &Mat) -> Result<i128> {
        if self.ambient.dim() <= 2 {
            return Ok(1);
        }
        let (s, pp, _) = self.steinberg_at(x)?;
        Ok(s as i128 * pp as i128)
    }
}

#[derive(Clone, Debug)]
pub struct OvergroupOptions {
    /// Enumerate `H` when its order is at most this.
    pub enumerate_up_to: u128,
    pub build: BuildOptions,
}

impl Default for OvergroupOptions {
    fn default() -> Self {
        OvergroupOptions {
            enumerate_up_to: 2_000_000,
            build: BuildOptions::default(),
        }
    }
}

fn maybe_enumerate(
    space: &QuadraticSpace,
    kind: GroupKind,
    opts: &OvergroupOptions,
) -> Result<Option<MatGroup>> {
    let ty = space.form_type()?;
    let q = space.field.q() as u128;
    let order = crate::matgrp::expected_order(kind, ty, space.dim as u32, q).unwrap_or(u128::MAX);
    if order > opts.enumerate_up_to || order > opts.build.max_order {
        return Ok(None);
    }
    MatGroup::orthogonal(space, kind, &opts.build).map(Some)
}

/// The natural overgroups: `SO(V (+) <c>)` for each square class of `c`
/// (odd `q`); `O(V (+) <z>)` for even-dimensional `V` and even `q`; the
/// two `Omega(W)` with `V` a hyperplane of `W` for odd-dimensional `V` and
/// even `q`.
pub fn overgroups(g: &MatGroup, opts: &OvergroupOptions) -> Result<Vec<Overgroup>> {
    let space = g
        .space()
        .ok_or_else(|| Error::Unsupported("overgroups of non-orthogonal groups".into()))?;
    AmbientGroup::of(g).check_supported()?;
    let f = &g.field;
    let mut out = Vec::new();
    if f.p() != 2 {
        for c in [Fe::ONE, f.nonsquare().unwrap()] {
            let emb = Embedding::sum(space, &QuadraticSpace::diagonal(f, &[c]));
            let big = emb.big.clone();
            let ty = big.form_type()?;
            out.push(Overgroup {
                label: format!("SO{}{}({}) with Q(v)={}", big.dim, suffix(ty), f.q(), c),
                ambient: AmbientGroup::orthogonal(&big, GroupKind::SO),
                group: maybe_enumerate(&big, GroupKind::SO, opts)?,
                embedding: emb,
            });
        }
    } else if space.dim % 2 == 0 {
        let emb = Embedding::sum(space, &QuadraticSpace::diagonal(f, &[Fe::ONE]));
        let big = emb.big.clone();
        out.push(Overgroup {
            label: format!("O{}({})", big.dim, f.q()),
            ambient: AmbientGroup::orthogonal(&big, GroupKind::O),
            group: maybe_enumerate(&big, GroupKind::O, opts)?,
            embedding: emb,
        });
    } else {
        let (_, _, cminus) = crate::quadspace::anisotropic_plane(f);
        for c in [Fe::ZERO, cminus] {
            let emb = Embedding::hyperplane(space, c)?;
            let big = emb.big.clone();
            let ty = big.form_type()?;
            out.push(Overgroup {
                label: format!("Omega{}{}({})", big.dim, suffix(ty), f.q()),
                ambient: AmbientGroup::orthogonal(&big, GroupKind::Omega),
                group: maybe_enumerate(&big, GroupKind::Omega, opts)?,
                embedding: emb,
            });
        }
    }
    Ok(out)
}

fn suffix(ty: FormType) -> &'static str {
    match ty {
        FormType::Plus => "+",
        FormType::Minus => "-",
        FormType::Odd => "",
    }
}

/// Steinberg, Curtis dual and restricted Steinberg characters of a group.
pub struct Analysis {
    pub st: ClassFunction,
    /// `St_H(s) / St_G(s)` at the semisimple part.
    pub omega: ClassFunction,
    /// `+- q^{[dim V^s / 2]}` with the sign from centralizer ranks.
    pub omega_signed_power: ClassFunction,
    pub stplus: ClassFunction,
    /// `St_H|_G` for every overgroup, labelled.
    pub stplus_variants: Vec<(String, ClassFunction)>,
    pub overgroups: Vec<String>,
}

/// Computes everything for `G = SO(V)` (odd `q`) or `Omega(V)` (even `q`),
/// failing on any disagreement between the two omega paths or between the
/// overgroups.
pub fn analyze(g: &MatGroup, opts: &OvergroupOptions) -> Result<Analysis> {
    let space = g
        .space()
        .ok_or_else(|| Error::Unsupported("analysis of non-orthogonal groups".into()))?
        .clone();
    let f = g.field.clone();
    let q = f.q() as i128;
    let st = steinberg(g)?;
    let overs = overgroups(g, opts)?;
    let amb = AmbientGroup::of(g);
    let eg = amb.eps()?;
    let classes = g.classes();

    let per_class: Vec<Result<(Ratio<i128>, Ratio<i128>, Vec<i128>)>> = (0..classes.len())
        .into_par_iter()
        .map(|i| {
            let c = &classes[i];
            let (s, _) = g.jordan(c.rep);
            let sm = g.unpack(s);
            let sc = g.class_of(s).unwrap();
            let st_g = st.values[sc].to_integer();
            let shape_g = if amb.dim() <= 2 {
                None
            } else {
                Some(centralizer_shape(&amb, &sm)?)
            };
            let fix = space.fixed_space(&sm).dim() as u32;
            let mut stp = Vec::new();
            let mut path_a = None;
            let mut path_b = None;
            for h in &overs {
                let es = h.embedding.apply(&sm);
                let st_h = h.steinberg_value(&es)?;
                if st_g == 0 || st_h % st_g != 0 {
                    return Err(Error::Internal(format!(
                        "St_H/St_G not integral at class {i}"
                    )));
                }
                let a = st_h / st_g;
                let sign = if h.ambient.dim() <= 2 {
                    1
                } else {
                    let (sh, _, _) = h.steinberg_at(&es)?;
                    let sg = shape_g.as_ref().map_or(1, |x| eg * x.eps());
                    sh * sg
                };
                let b = sign as i128 * q.pow(fix / 2);
                if a != b {
                    return Err(Error::Internal(format!(
                        "omega paths disagree at class {i} via {}: quotient {a}, signed power {b}",
                        h.label
                    )));
                }
                if path_a.is_some_and(|x| x != a) {
                    return Err(Error::Internal(format!(
                        "omega depends on the overgroup at class {i}"
                    )));
                }
                path_a = Some(a);
                path_b = Some(b);
                let g_elt = g.unpack(c.rep);
                stp.push(if c.semisimple {
                    h.steinberg_value(&h.embedding.apply(&g_elt))?
                } else {
                    0
                });
            }
            Ok((
                Ratio::from_integer(path_a.unwrap()),
                Ratio::from_integer(path_b.unwrap()),
                stp,
            ))
        })
        .collect();
    let per_class: Vec<(Ratio<i128>, Ratio<i128>, Vec<i128>)> =
        per_class.into_iter().collect::<Result<_>>()?;
    let omega = ClassFunction::from_fn(g, |i, _| per_class[i].0);
    let omega_signed_power = ClassFunction::from_fn(g, |i, _| per_class[i].1);
    let stplus_variants: Vec<(String, ClassFunction)> = overs
        .iter()
        .enumerate()
        .map(|(k, h)| {
            (
                h.label.clone(),
                ClassFunction::from_ints(g, |i, _| per_class[i].2[k]),
            )
        })
        .collect();
    let stplus = stplus_variants[0].1.clone();
    for (label, v) in &stplus_variants[1..] {
        if v != &stplus {
            return Err(Error::Internal(format!(
                "St_H|_G depends on the overgroup: {} vs {label}",
                stplus_variants[0].0
            )));
        }
    }
    let product = omega.mul(&st)?;
    if product != stplus {
        return Err(Error::Internal("St+ differs from omega * St".into()));
    }
    Ok(Analysis {
        st,
        omega,
        omega_signed_power,
        stplus,
        stplus_variants,
        overgroups: overs.iter().map(|h| h.label.clone()).collect(),
    })
}

/// The linear character `g -> spinor norm` (odd `q`) or `(-1)^Dickson`.
pub fn sign_character(g: &MatGroup) -> ClassFunction {
    ClassFunction::from_ints(g, |_, c| g.sign_character(&g.unpack(c.rep)) as i128)
}

#[derive(Clone, Debug, Serialize)]
pub struct Co4Report {
    #[serde(serialize_with = "ser_ratio")]
    pub st: Ratio<i128>,
    #[serde(serialize_with = "ser_ratio")]
    pub st_minus: Ratio<i128>,
    #[serde(serialize_with = "ser_ratio")]
    pub trivial: Ratio<i128>,
    #[serde(serialize_with = "ser_ratio")]
    pub trivial_minus: Ratio<i128>,
    pub expected: String,
    pub pass: bool,
}

/// `(St+, St)`, `(St+, St-)`, `(St+, 1)`, `(St+, 1-)` against the expected
/// values: `(1, 1, !=0 iff n = 1, 0)` for `SO_{2n+1}`, `(1 + a, 1, 0, 0)`
/// for `SO^a_{2n}`.
pub fn co4(g: &MatGroup, a: &Analysis) -> Result<Co4Report> {
    if g.field.p() == 2 {
        return Err(Error::Unsupported(
            "the spinor-twisted characters need odd q".into(),
        ));
    }
    let sign = sign_character(g);
    let st_minus = a.st.mul(&sign)?;
    let one = ClassFunction::trivial(g);
    let r = |x: &ClassFunction| inner_product(g, &a.stplus, x);
    let (v1, v2, v3, v4) = (r(&a.st)?, r(&st_minus)?, r(&one)?, r(&sign)?);
    let space = g.space().unwrap();
    let n = space.dim / 2;
    let int = Ratio::from_integer;
    let (expected, pass) = match space.form_type()? {
        FormType::Odd => {
            let third_ok = (v3 != int(0)) == (n == 1);
            (
                format!("(1, 1, {}, 0)", if n == 1 { "!=0" } else { "0" }),
                v1 == int(1) && v2 == int(1) && third_ok && v4 == int(0),
            )
        }
        ty => {
            let alpha = ty.sign() as i128;
            (
                format!("({}, 1, 0, 0)", 1 + alpha),
                v1 == int(1 + alpha) && v2 == int(1) && v3 == int(0) && v4 == int(0),
            )
        }
    };
    Ok(Co4Report {
        st: v1,
        st_minus: v2,
        trivial: v3,
        trivial_minus: v4,
        expected,
        pass,
    })
}
