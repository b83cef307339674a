//! Comparisons of omega with closed forms on subgroups: split subspaces,
//! embedded GL and U, codimension-one subgroups, and maximal tori.

use num_rational::Ratio;
use serde::Serialize;

use super::{analyze, is_semisimple, Analysis, OvergroupOptions};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::{self, Mat};
use crate::matgrp::embed::{Embedding, UnitaryModel};
use crate::matgrp::{GroupKind, MatGroup};
use crate::quadspace::QuadraticSpace;
use crate::tori::{build_torus, enumerate_decomps, restrict_decompose};

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub element: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new(name: String) -> CheckReport {
        CheckReport {
            name,
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.checked > 0
    }

    fn record(
        &mut self,
        element: impl FnOnce() -> String,
        expected: Ratio<i128>,
        found: Ratio<i128>,
    ) {
        self.checked += 1;
        if expected != found && self.violations.len() < 20 {
            self.violations.push(Violation {
                element: element(),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
}

/// The kind whose omega is defined on `space`: SO for odd q, Omega for even q.
pub fn natural_kind(f: &Field) -> GroupKind {
    if f.p() == 2 {
        GroupKind::Omega
    } else {
        GroupKind::SO
    }
}

fn omega_at(g: &MatGroup, a: &Analysis, m: &Mat) -> Result<Ratio<i128>> {
    let c = g
        .class_of_mat(m)
        .ok_or_else(|| Error::Internal(format!("element outside {}", g.label)))?;
    Ok(a.omega.values[c])
}

fn mat_str(m: &Mat) -> String {
    let rows: Vec<String> = (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| m.get(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

/// `omega_G(g1 g2) = omega_{G1}(g1) omega_{G2}(g2)`, times `q` exactly when
/// both summands are odd-dimensional, over all of `G1 x G2`.
pub fn verify_mult_theorem(
    v1: &QuadraticSpace,
    v2: &QuadraticSpace,
    opts: &OvergroupOptions,
) -> Result<CheckReport> {
    let f = &v1.field;
    let kind = natural_kind(f);
    let v = v1.orthogonal_sum(v2);
    let g = MatGroup::orthogonal(&v, kind, &opts.build)?;
    let g1 = MatGroup::orthogonal(v1, kind, &opts.build)?;
    let g2 = MatGroup::orthogonal(v2, kind, &opts.build)?;
    let (a, a1, a2) = (analyze(&g, opts)?, analyze(&g1, opts)?, analyze(&g2, opts)?);
    let factor = if v1.dim % 2 == 1 && v2.dim % 2 == 1 {
        f.q() as i128
    } else {
        1
    };
    let mut rep = CheckReport::new(format!("{} = {} + {}", g.label, g1.label, g2.label));
    for &x1 in &g1.elements {
        let m1 = g1.unpack(x1);
        let w1 = a1.omega.values[g1.class_of(x1).unwrap()];
        for &x2 in &g2.elements {
            let m2 = g2.unpack(x2);
            let w2 = a2.omega.values[g2.class_of(x2).unwrap()];
            let m = Mat::block_diag(&[&m1, &m2]);
            let found = omega_at(&g, &a, &m)?;
            rep.record(|| mat_str(&m), w1 * w2 * factor, found);
        }
    }
    Ok(rep)
}

/// omega on `GL_n(q)` embedded in `O+_{2n}(q)` against `q^{dim fix}`.
pub fn verify_gl(f: &Field, n: usize, opts: &OvergroupOptions) -> Result<CheckReport> {
    let (space, embed) = Embedding::gl(f, n);
    let g = MatGroup::orthogonal(&space, natural_kind(f), &opts.build)?;
    let a = analyze(&g, opts)?;
    let mut rep = CheckReport::new(format!("GL{n}({}) in {}", f.q(), g.label));
    for v in linalg::all_vectors(f, n * n) {
        let x = Mat {
            rows: n,
            cols: n,
            e: v,
        };
        if x.det(f).is_zero() || !is_semisimple(f, &x) {
            continue;
        }
        let fix = x.shift(f, Fe::ONE).kernel(f).len() as u32;
        let found = omega_at(&g, &a, &embed(&x))?;
        rep.record(
            || mat_str(&x),
            Ratio::from_integer((f.q() as i128).pow(fix)),
            found,
        );
    }
    Ok(rep)
}

/// omega on `U_n(q)`, realized as the centralizer of the GF(q^2) scalars
/// in `SO(V)`, against `(-1)^n (-q)^{dim W^g}`.
pub fn verify_unitary(f: &Field, n: usize, opts: &OvergroupOptions) -> Result<CheckReport> {
    let model = UnitaryModel::new(f, n)?;
    let kind = natural_kind(f);
    let g = MatGroup::orthogonal(&model.space, kind, &opts.build)?;
    let s = g.pack(&model.scalar);
    let pk = g.packer.clone();
    let u = g.subgroup(&format!("U{n}({})", f.q()), g.form.clone(), |x| {
        pk.mul(x, s) == pk.mul(s, x)
    })?;
    let a = analyze(&g, opts)?;
    let q = f.q() as i128;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut rep = CheckReport::new(format!("{} (order {}) in {}", u.label, u.order(), g.label));
    for &x in &u.elements {
        let m = u.unpack(x);
        if !is_semisimple(f, &m) {
            continue;
        }
        let w = (m.shift(f, Fe::ONE).kernel(f).len() / 2) as u32;
        let expected = sign * (-q).pow(w);
        rep.record(
            || mat_str(&m),
            Ratio::from_integer(expected),
            omega_at(&g, &a, &m)?,
        );
    }
    Ok(rep)
}

/// `omega_G|_X = omega_X` for `X = SO(x)` inside `G` on `x (+) <c>`
/// (`Omega` for even q, where `G` is the odd-dimensional group).
pub fn verify_subgroup_omega(
    x: &QuadraticSpace,
    c: Fe,
    opts: &OvergroupOptions,
) -> Result<CheckReport> {
    let f = &x.field;
    let kind = natural_kind(f);
    let emb = Embedding::sum(x, &QuadraticSpace::diagonal(f, &[c]));
    let g = MatGroup::orthogonal(&emb.big, kind, &opts.build)?;
    let sub = MatGroup::orthogonal(x, kind, &opts.build)?;
    let (ag, ax) = (analyze(&g, opts)?, analyze(&sub, opts)?);
    let mut rep = CheckReport::new(format!("{} in {}", sub.label, g.label));
    for (i, cl) in sub.classes().iter().enumerate() {
        let m = sub.unpack(cl.rep);
        let found = omega_at(&g, &ag, &emb.apply(&m))?;
        rep.record(|| mat_str(&m), ax.omega.values[i], found);
    }
    Ok(rep)
}

/// The multiplicities of omega restricted to every maximal torus of `g`
/// against the closed pattern `0` or `2^{k(theta)}`.
pub fn verify_torus_pattern(g: &MatGroup, a: &Analysis) -> Result<CheckReport> {
    let space = g
        .space()
        .ok_or_else(|| Error::Unsupported("tori of non-orthogonal groups".into()))?;
    let ty = space.form_type()?;
    let mut rep = CheckReport::new(format!("omega on the tori of {}", g.label));
    for spec in enumerate_decomps(ty, space.dim, g.field.q() as u64)? {
        let t = build_torus(&spec, g)?;
        for (theta, mult) in restrict_decompose(g, &a.omega, &t)? {
            let expected = t.expected_omega_multiplicity(&theta);
            rep.record(
                || format!("{} theta={:?}", spec.decomp, theta.index),
                Ratio::from_integer(expected as i128),
                Ratio::from_integer(mult as i128),
            );
        }
    }
    Ok(rep)
}
