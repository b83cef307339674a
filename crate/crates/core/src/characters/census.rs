//! Predicted norms of the series components of St+, summed and compared
//! with the enumerated norm.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{analyze, co4, Co4Report, OvergroupOptions};
use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::matgrp::{inner_product, BuildOptions, MatGroup};
use crate::quadspace::FormType;
use crate::weyl::{cross_norm, self_norm, WeylType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesTag {
    Zero,
    Regular,
    OddInduced,
    EvenMinus1,
    EvenMult2,
    EvenTwolevi,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub s_class_id: usize,
    pub s_rep: Vec<Vec<u32>>,
    pub order_s: u64,
    pub class_size: u64,
    pub dim_fix: usize,
    pub defect: Option<u8>,
    pub tag: SeriesTag,
    pub m: usize,
    pub predicted_norm: u64,
    pub predicted_count: u64,
    pub max_mult: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub predicted_norm_sum: u64,
    pub bruteforce_norm: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub group: String,
    pub dual: String,
    pub q: u32,
    pub dim: usize,
    #[serde(rename = "type")]
    pub ty: FormType,
    pub series: Vec<SeriesReport>,
    pub totals: Totals,
    pub co4: Option<Co4Report>,
}

/// Memoized Weyl norms, all by double-coset counting.
struct Norms(BTreeMap<(usize, u8), u64>);

impl Norms {
    fn new() -> Norms {
        Norms(BTreeMap::new())
    }

    fn get(&mut self, m: usize, which: u8) -> Result<u64> {
        if let Some(v) = self.0.get(&(m, which)) {
            return Ok(*v);
        }
        let v = match which {
            0 => self_norm(m, WeylType::B)?,
            1 => self_norm(m, WeylType::D)?,
            _ => cross_norm(m)?,
        };
        self.0.insert((m, which), v);
        Ok(v)
    }
}

/// The dual group: `Sp_{2n}` for odd-dimensional `V`, the group itself
/// otherwise.
pub fn dual_group(g: &MatGroup, opts: &BuildOptions) -> Result<Option<MatGroup>> {
    let space = g
        .space()
        .ok_or_else(|| Error::Unsupported("census of non-orthogonal groups".into()))?;
    if space.dim % 2 == 1 {
        Ok(Some(MatGroup::symplectic(&g.field, space.dim - 1, opts)?))
    } else {
        Ok(None)
    }
}

pub fn census(g: &MatGroup, opts: &OvergroupOptions) -> Result<Census> {
    let space = g
        .space()
        .ok_or_else(|| Error::Unsupported("census of non-orthogonal groups".into()))?
        .clone();
    let f = g.field.clone();
    let odd = space.dim % 2 == 1;
    let dual_owned = dual_group(g, &opts.build)?;
    let dual = dual_owned.as_ref().unwrap_or(g);
    let mut norms = Norms::new();
    let semisimple: Vec<usize> = (0..dual.classes().len())
        .filter(|&i| dual.classes()[i].semisimple)
        .collect();
    let shapes: Vec<Result<(usize, Option<u8>, bool)>> = semisimple
        .par_iter()
        .map(|&i| {
            let s = dual.unpack(dual.classes()[i].rep);
            let fixed = s.shift(&f, Fe::ONE).kernel(&f);
            let defect = if odd || fixed.is_empty() {
                None
            } else {
                space.restrict(&fixed).witt_decompose()?.witt_defect
            };
            let minus1 = f.p() != 2 && !s.shift(&f, f.neg(Fe::ONE)).kernel(&f).is_empty();
            Ok((fixed.len(), defect, minus1))
        })
        .collect();
    let mut series = Vec::new();
    for (&i, shape) in semisimple.iter().zip(shapes) {
        let (dim_fix, defect, minus1) = shape?;
        let c = &dual.classes()[i];
        let m = dim_fix / 2;
        let (tag, norm, count, mult) = if dim_fix == 0 {
            (SeriesTag::Regular, 1, 1, 1)
        } else if defect == Some(1) {
            (SeriesTag::Zero, 0, 0, 0)
        } else if odd {
            let n = norms.get(m, 0)?;
            (SeriesTag::OddInduced, n, n, 1)
        } else if minus1 {
            let n = norms.get(m, 0)?;
            (SeriesTag::EvenMinus1, n, n, 1)
        } else if m % 2 == 1 {
            let n = norms.get(m, 1)?;
            (SeriesTag::EvenMult2, 4 * n, n, 2)
        } else {
            let n = norms.get(m, 1)?;
            let x = norms.get(m, 2)?;
            (
                SeriesTag::EvenTwolevi,
                2 * n + 2 * x,
                2 * n - x,
                if x > 0 { 2 } else { 1 },
            )
        };
        let rep = dual.unpack(c.rep);
        series.push(SeriesReport {
            s_class_id: i,
            s_rep: (0..rep.rows)
                .map(|r| (0..rep.cols).map(|k| rep.get(r, k).0).collect())
                .collect(),
            order_s: c.order,
            class_size: c.size,
            dim_fix,
            defect,
            tag,
            m,
            predicted_norm: norm,
            predicted_count: count,
            max_mult: mult,
        });
    }
    let a = analyze(g, opts)?;
    let brute = inner_product(g, &a.stplus, &a.stplus)?;
    let sum: u64 = series.iter().map(|s| s.predicted_norm).sum();
    let co4 = if f.p() != 2 { Some(co4(g, &a)?) } else { None };
    Ok(Census {
        group: g.label.clone(),
        dual: dual.label.clone(),
        q: f.q(),
        dim: space.dim,
        ty: space.form_type()?,
        series,
        totals: Totals {
            predicted_norm_sum: sum,
            bruteforce_norm: brute.to_string(),
            matches: brute == num_rational::Ratio::from_integer(sum as i128),
        },
        co4,
    })
}
