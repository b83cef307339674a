//! Batch commands behind the `stplus` binary. Every command returns its
//! rendered output; `verify` also reports whether all checks passed.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::census::census;
use crate::characters::checks::{
    natural_kind, verify_mult_theorem, verify_subgroup_omega, verify_torus_pattern, CheckReport,
};
use crate::characters::{
    analyze, co4, shape_mismatches, steinberg, steinberg_gates, OvergroupOptions,
};
use crate::error::{Error, Result};
use crate::gf::{prime_power, Fe, Field};
use crate::matgrp::{expected_order, BuildOptions, MatGroup, DEFAULT_MAX_ORDER};
use crate::quadspace::{FormType, QuadraticSpace};
use crate::tori::{build_torus, enumerate_decomps, torus_table};
use crate::weyl::{
    centralizer_order_formula, class_table_csv, cross_norm, self_norm, Weyl, WeylType,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fields,
    Spaces,
    Groups,
    Weyl,
    Tori,
    Omega,
    Multiplication,
    Census,
    Co4,
    All,
}

impl Suite {
    const EACH: [Suite; 9] = [
        Suite::Fields,
        Suite::Spaces,
        Suite::Groups,
        Suite::Weyl,
        Suite::Tori,
        Suite::Omega,
        Suite::Multiplication,
        Suite::Census,
        Suite::Co4,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Fields => "fields",
            Suite::Spaces => "spaces",
            Suite::Groups => "groups",
            Suite::Weyl => "weyl",
            Suite::Tori => "tori",
            Suite::Omega => "omega",
            Suite::Multiplication => "multiplication",
            Suite::Census => "census",
            Suite::Co4 => "co4",
            Suite::All => "all",
        }
    }
}

/// Everything a command depends on; echoed into every output.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub p: u32,
    pub k: u32,
    pub q: u32,
    pub dim: usize,
    #[serde(rename = "type")]
    pub ty: FormType,
    pub max_order: u128,
    pub max_n: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
}

impl RunConfig {
    /// Resolves `q` or `(p, k)` and the form type; the type defaults to
    /// `odd` in odd dimension and `+` in even dimension.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        command: &str,
        q: Option<u32>,
        p: Option<u32>,
        k: Option<u32>,
        dim: usize,
        ty: Option<FormType>,
        max_order: Option<u128>,
        cache_dir: Option<PathBuf>,
        format: Format,
    ) -> Result<RunConfig> {
        let (p, k) = match (q, p) {
            (Some(q), _) => prime_power(q as u64).ok_or(Error::InvalidField { p: q, k: 1 })?,
            (None, Some(p)) => (p, k.unwrap_or(1)),
            (None, None) => (3, 1),
        };
        let field = Field::new(p, k)?;
        let ty = ty.unwrap_or(if dim % 2 == 1 {
            FormType::Odd
        } else {
            FormType::Plus
        });
        if (ty == FormType::Odd) != (dim % 2 == 1) {
            return Err(Error::InvalidSpace(format!(
                "type {ty:?} does not fit dimension {dim}"
            )));
        }
        Ok(RunConfig {
            command: command.to_string(),
            p,
            k,
            q: field.q(),
            dim,
            ty,
            max_order: max_order.unwrap_or(DEFAULT_MAX_ORDER),
            max_n: 6,
            cache_dir: cache_dir.or_else(|| std::env::var_os("STB_CACHE_DIR").map(PathBuf::from)),
            format,
            threads: rayon::current_num_threads(),
        })
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p, self.k)
    }

    pub fn build_options(&self) -> BuildOptions {
        BuildOptions {
            max_order: self.max_order,
            cache_dir: self.cache_dir.clone(),
        }
    }

    pub fn overgroup_options(&self) -> OvergroupOptions {
        OvergroupOptions {
            build: self.build_options(),
            ..OvergroupOptions::default()
        }
    }

    pub fn space(&self) -> Result<QuadraticSpace> {
        QuadraticSpace::standard(self.dim, self.ty, &self.field()?)
    }

    /// The group on the configured space, refused before enumeration when
    /// its closed-form order exceeds the cap.
    pub fn group(&self) -> Result<MatGroup> {
        let f = self.field()?;
        let kind = natural_kind(&f);
        if let Some(order) = expected_order(kind, self.ty, self.dim as u32, self.q as u128) {
            if order > self.max_order {
                return Err(Error::OrderExceedsCap {
                    order,
                    cap: self.max_order,
                });
            }
        }
        MatGroup::orthogonal(&self.space()?, kind, &self.build_options())
    }

    fn echo(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        v.as_object_mut().unwrap().remove("threads");
        v
    }

    fn header(&self) -> String {
        format!("# config {}\n", self.echo())
    }
}

fn render_json(cfg: &RunConfig, body: Value) -> String {
    let out = json!({ "config": cfg.echo(), "result": body });
    serde_json::to_string_pretty(&out).expect("json renders") + "\n"
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(crate::weyl::csv_err)?;
    for r in rows {
        w.write_record(r).map_err(crate::weyl::csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn render_table(cfg: &RunConfig, header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    Ok(match cfg.format {
        Format::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Value::Object(
                        header
                            .iter()
                            .zip(r)
                            .map(|(h, c)| (h.to_string(), json!(c)))
                            .collect(),
                    )
                })
                .collect();
            render_json(cfg, json!(objs))
        }
        Format::Csv => cfg.header() + &csv_string(header, &rows)?,
        Format::Text => cfg.header() + &text_table(header, &rows),
    })
}

pub fn cmd_tori(cfg: &RunConfig) -> Result<String> {
    let rows = torus_table(cfg.ty, cfg.dim, cfg.q as u64)?;
    if cfg.format == Format::Json {
        return Ok(render_json(
            cfg,
            serde_json::to_value(&rows).expect("rows serialize"),
        ));
    }
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.decomp.clone(),
                r.branch
                    .map_or(String::new(), |b| format!("{b:?}").to_lowercase()),
                r.order.to_string(),
                r.classification.to_string(),
                r.weyl_order.to_string(),
            ]
        })
        .collect();
    render_table(
        cfg,
        &["decomp", "branch", "order", "classification", "weyl_order"],
        rows,
    )
}

pub fn cmd_weyl(cfg: &RunConfig, ty: WeylType, n: usize, doublecosets: bool) -> Result<String> {
    if n > cfg.max_n {
        return Err(Error::OrderExceedsCap {
            order: crate::weyl::group_order(ty, n) as u128,
            cap: crate::weyl::group_order(ty, cfg.max_n) as u128,
        });
    }
    let w = Weyl::new(ty, n)?;
    let norms = if doublecosets {
        let mut m = serde_json::Map::new();
        m.insert("self_norm_B".into(), json!(self_norm(n, WeylType::B)?));
        m.insert("self_norm_D".into(), json!(self_norm(n, WeylType::D)?));
        m.insert("cross_norm".into(), json!(cross_norm(n)?));
        Some(m)
    } else {
        None
    };
    match cfg.format {
        Format::Csv => {
            let mut out = cfg.header();
            if let Some(m) = &norms {
                for (k, v) in m {
                    writeln!(out, "# {k} {v}").unwrap();
                }
            }
            Ok(out + &class_table_csv(&w)?)
        }
        _ => {
            let split = if ty == WeylType::D {
                Weyl::d_splitting(n)?
            } else {
                Default::default()
            };
            let rows: Vec<Vec<String>> = w
                .classes()
                .iter()
                .map(|c| {
                    vec![
                        c.label.d_str(),
                        c.label.e_str(),
                        c.size.to_string(),
                        c.centralizer.to_string(),
                        split.get(&c.label).copied().unwrap_or(false).to_string(),
                    ]
                })
                .collect();
            let header = ["label_d", "label_e", "size", "centralizer", "splits"];
            if cfg.format == Format::Json {
                let objs: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            header
                                .iter()
                                .zip(r)
                                .map(|(h, c)| (h.to_string(), json!(c)))
                                .collect(),
                        )
                    })
                    .collect();
                return Ok(render_json(
                    cfg,
                    json!({ "type": format!("{ty:?}"), "n": n, "order": w.order(), "classes": objs, "norms": norms }),
                ));
            }
            let mut out = cfg.header();
            if let Some(m) = &norms {
                for (k, v) in m {
                    writeln!(out, "{k} {v}").unwrap();
                }
            }
            Ok(out + &text_table(&header, &rows))
        }
    }
}

pub fn cmd_omega(cfg: &RunConfig) -> Result<String> {
    let g = cfg.group()?;
    let a = analyze(&g, &cfg.overgroup_options())?;
    let rows: Vec<Vec<String>> = g
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![
                i.to_string(),
                c.order.to_string(),
                c.size.to_string(),
                c.centralizer_order.to_string(),
                c.semisimple.to_string(),
                a.st.values[i].to_string(),
                a.omega.values[i].to_string(),
                a.stplus.values[i].to_string(),
            ]
        })
        .collect();
    let header = [
        "class",
        "order",
        "size",
        "centralizer",
        "semisimple",
        "st",
        "omega",
        "stplus",
    ];
    if cfg.format == Format::Json {
        let objs: Vec<Value> = rows
            .iter()
            .map(|r| {
                Value::Object(
                    header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| (h.to_string(), json!(c)))
                        .collect(),
                )
            })
            .collect();
        return Ok(render_json(
            cfg,
            json!({ "group": g.label, "order": g.order(), "overgroups": a.overgroups, "classes": objs }),
        ));
    }
    let mut out = render_table(cfg, &header, rows)?;
    if cfg.format == Format::Text {
        writeln!(out, "overgroups: {}", a.overgroups.join(", ")).unwrap();
    }
    Ok(out)
}

pub fn cmd_census(cfg: &RunConfig) -> Result<String> {
    let g = cfg.group()?;
    let c = census(&g, &cfg.overgroup_options())?;
    match cfg.format {
        Format::Text => {
            let mut out = cfg.header();
            for s in &c.series {
                writeln!(
                    out,
                    "s#{} order {} dim_fix {} {:?} m={} norm {} count {} mult {}",
                    s.s_class_id,
                    s.order_s,
                    s.dim_fix,
                    s.tag,
                    s.m,
                    s.predicted_norm,
                    s.predicted_count,
                    s.max_mult
                )
                .unwrap();
            }
            writeln!(
                out,
                "predicted {} brute force {} {}",
                c.totals.predicted_norm_sum,
                c.totals.bruteforce_norm,
                if c.totals.matches { "PASS" } else { "FAIL" }
            )
            .unwrap();
            Ok(out)
        }
        _ => Ok(render_json(
            cfg,
            serde_json::to_value(&c).expect("census serializes"),
        )),
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub suite: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

struct Lines<'a> {
    suite: &'a str,
    out: Vec<CheckLine>,
}

impl Lines<'_> {
    fn push(&mut self, check: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.out.push(CheckLine {
            suite: self.suite.to_string(),
            check: check.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn push_result<T>(
        &mut self,
        check: &str,
        r: Result<T>,
        judge: impl FnOnce(T) -> (bool, String),
    ) {
        match r {
            Ok(v) => {
                let (pass, detail) = judge(v);
                self.push(check, pass, detail);
            }
            Err(e) => self.push(check, false, format!("error: {e}")),
        }
    }

    fn report(&mut self, r: Result<CheckReport>) {
        match r {
            Ok(rep) => {
                let detail = match rep.violations.first() {
                    None => format!("{} checked", rep.checked),
                    Some(v) => format!(
                        "{} violations of {}, first at {}: expected {}, found {}",
                        rep.violations.len(),
                        rep.checked,
                        v.element,
                        v.expected,
                        v.found
                    ),
                };
                self.push(rep.name.clone(), rep.pass(), detail);
            }
            Err(e) => self.push("check", false, format!("error: {e}")),
        }
    }
}

fn suite_fields(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let f = cfg.field()?;
    let q = f.q() as u64;
    l.push(
        "primitive order",
        f.order(f.primitive()) == q - 1,
        format!("q-1 = {}", q - 1),
    );
    let squares = f.elements().skip(1).filter(|&a| f.is_square(a)).count() as u64;
    let expect = if f.p() == 2 { q - 1 } else { (q - 1) / 2 };
    l.push(
        "nonzero squares",
        squares == expect,
        format!("{squares} of {}", q - 1),
    );
    let frob_ok = f.elements().all(|a| f.pow(a, q) == a);
    l.push("a^q = a", frob_ok, format!("GF({q})"));
    let inv_ok = f
        .elements()
        .skip(1)
        .all(|a| f.mul(a, f.inv(a).unwrap()) == Fe::ONE);
    l.push("inverses", inv_ok, String::new());
    Ok(())
}

fn suite_spaces(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let f = cfg.field()?;
    for dim in 1..=cfg.dim.max(2) {
        let types: &[FormType] = if dim % 2 == 1 {
            &[FormType::Odd]
        } else {
            &[FormType::Plus, FormType::Minus]
        };
        for &ty in types {
            l.push_result(
                &format!("standard {dim}{ty:?}"),
                QuadraticSpace::standard(dim, ty, &f),
                |v| {
                    let ok = v.is_nondegenerate() && v.form_type().ok() == Some(ty);
                    let w = v.witt_decompose().map(|w| w.witt_index).unwrap_or(0);
                    (ok, format!("witt index {w}"))
                },
            );
        }
    }
    if cfg.dim == 4 && cfg.ty == FormType::Plus {
        let v = cfg.space()?;
        let planes = v.totally_singular_subspaces(2);
        let expected = 2 * (cfg.q as usize + 1);
        l.push(
            "maximal totally singular planes",
            planes.len() == expected,
            format!("{} (expected {expected})", planes.len()),
        );
    }
    Ok(())
}

fn suite_groups(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let f = cfg.field()?;
    let kind = natural_kind(&f);
    l.push_result("enumerated order", cfg.group(), |g| {
        let e = expected_order(kind, cfg.ty, cfg.dim as u32, cfg.q as u128);
        (
            e == Some(g.order() as u128),
            format!("{} = {} (closed form {:?})", g.label, g.order(), e),
        )
    });
    l.push_result(
        "centralizer shapes",
        cfg.group().and_then(|g| shape_mismatches(&g)),
        |m| (m.is_empty(), format!("{} mismatches", m.len())),
    );
    Ok(())
}

fn suite_weyl(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let top = cfg.dim.div_ceil(2).clamp(1, cfg.max_n);
    for n in 1..=top {
        for ty in [WeylType::B, WeylType::D] {
            l.push_result(&format!("{ty:?}{n} centralizers"), Weyl::new(ty, n), |w| {
                let classes = w.classes();
                let bad = classes
                    .iter()
                    .filter(|c| centralizer_order_formula(&c.label, ty).ok() != Some(c.centralizer))
                    .count();
                (
                    bad == 0,
                    format!("{} classes, {bad} mismatches", classes.len()),
                )
            });
        }
        l.push_result(&format!("D{n} splitting"), Weyl::d_splitting(n), |s| {
            let bad = s.iter().filter(|(k, &v)| k.is_exceptional() != v).count();
            (bad == 0, format!("{bad} mismatches"))
        });
    }
    for m in [4, 6] {
        l.push_result(
            &format!("norms m={m}"),
            cross_norm(m).and_then(|x| Ok((x, self_norm(m, WeylType::D)?))),
            |(x, s)| {
                (
                    x == m as u64 / 2 && s == (m as u64 + 2) / 2,
                    format!("cross {x}, self {s}"),
                )
            },
        );
    }
    Ok(())
}

fn suite_tori(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let g = cfg.group()?;
    for spec in enumerate_decomps(cfg.ty, cfg.dim, cfg.q as u64)? {
        l.push_result(
            &format!("torus {}", spec.decomp),
            build_torus(&spec, &g),
            |t| {
                (
                    t.order() == spec.order(),
                    format!("order {} (expected {})", t.order(), spec.order()),
                )
            },
        );
    }
    Ok(())
}

fn suite_omega(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let g = cfg.group()?;
    l.push_result(
        "steinberg gates",
        steinberg(&g).and_then(|st| steinberg_gates(&g, &st)),
        |s| {
            (
                s.pass,
                format!(
                    "norm {}, (St,1) {}, St(1) {} = |G|_p {}",
                    s.norm, s.with_trivial, s.degree, s.group_p_part
                ),
            )
        },
    );
    let a = analyze(&g, &cfg.overgroup_options());
    let id = g.class_of(g.packer.identity()).unwrap();
    let expect = num_rational::Ratio::from_integer((cfg.q as i128).pow(cfg.dim as u32 / 2));
    l.push_result(
        "two omega paths, overgroup agreement",
        a.as_ref().map_err(|e| Error::Internal(e.to_string())),
        |a| {
            (
                a.omega == a.omega_signed_power,
                format!("{} overgroups", a.overgroups.len()),
            )
        },
    );
    if let Ok(a) = &a {
        l.push(
            "omega(1)",
            a.omega.values[id] == expect,
            format!("{} (expected {expect})", a.omega.values[id]),
        );
        l.report(verify_torus_pattern(&g, a));
    }
    Ok(())
}

fn splits(cfg: &RunConfig) -> Result<Vec<(QuadraticSpace, QuadraticSpace)>> {
    let f = cfg.field()?;
    let v = cfg.space()?;
    let mut out = Vec::new();
    for d1 in 1..cfg.dim {
        let d2 = cfg.dim - d1;
        if d1 > d2 || (f.p() == 2 && (d1 % 2 == 1 || d2 % 2 == 1)) {
            continue;
        }
        let ty = |d: usize| -> Vec<FormType> {
            if d % 2 == 1 {
                vec![FormType::Odd]
            } else {
                vec![FormType::Plus, FormType::Minus]
            }
        };
        for t1 in ty(d1) {
            for t2 in ty(d2) {
                let lines: Vec<Fe> = if d1 == 1 && f.p() != 2 {
                    vec![Fe::ONE, f.nonsquare().unwrap()]
                } else {
                    vec![Fe::ONE]
                };
                for c in lines {
                    let v1 = if d1 == 1 {
                        QuadraticSpace::diagonal(&f, &[c])
                    } else {
                        QuadraticSpace::standard(d1, t1, &f)?
                    };
                    let v2 = QuadraticSpace::standard(d2, t2, &f)?;
                    let sum = v1.orthogonal_sum(&v2);
                    if sum.form_type()? == v.form_type()? {
                        out.push((v1, v2));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn suite_multiplication(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let opts = cfg.overgroup_options();
    let s = splits(cfg)?;
    if s.is_empty() {
        l.push(
            "splits",
            true,
            "skipped: no nondegenerate orthogonal splits",
        );
    }
    for (v1, v2) in s {
        l.report(verify_mult_theorem(&v1, &v2, &opts));
    }
    if cfg.dim == 4 {
        l.report(verify_subgroup_omega(&cfg.space()?, Fe::ONE, &opts));
    }
    Ok(())
}

fn suite_census(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    let g = cfg.group()?;
    l.push_result("census", census(&g, &cfg.overgroup_options()), |c| {
        let zero_ok = c
            .series
            .iter()
            .all(|s| s.tag != crate::characters::census::SeriesTag::Zero || s.predicted_norm == 0);
        (
            c.totals.matches && zero_ok,
            format!(
                "predicted {} = brute force {}",
                c.totals.predicted_norm_sum, c.totals.bruteforce_norm
            ),
        )
    });
    Ok(())
}

fn suite_co4(cfg: &RunConfig, l: &mut Lines) -> Result<()> {
    if cfg.p == 2 {
        l.push("co4", true, "skipped: needs odd q");
        return Ok(());
    }
    let g = cfg.group()?;
    l.push_result(
        "co4",
        analyze(&g, &cfg.overgroup_options()).and_then(|a| co4(&g, &a)),
        |r| {
            (
                r.pass,
                format!(
                    "({}, {}, {}, {}) expected {}",
                    r.st, r.st_minus, r.trivial, r.trivial_minus, r.expected
                ),
            )
        },
    );
    Ok(())
}

/// Runs the suites; returns the rendered report and whether all passed.
pub fn cmd_verify(cfg: &RunConfig, suites: &[Suite]) -> Result<(String, bool)> {
    let mut chosen: Vec<Suite> = Vec::new();
    for &s in suites {
        if s == Suite::All {
            chosen.extend(Suite::EACH);
        } else {
            chosen.push(s);
        }
    }
    chosen.dedup();
    let mut all = Vec::new();
    for s in chosen {
        let mut l = Lines {
            suite: s.name(),
            out: Vec::new(),
        };
        let r = match s {
            Suite::Fields => suite_fields(cfg, &mut l),
            Suite::Spaces => suite_spaces(cfg, &mut l),
            Suite::Groups => suite_groups(cfg, &mut l),
            Suite::Weyl => suite_weyl(cfg, &mut l),
            Suite::Tori => suite_tori(cfg, &mut l),
            Suite::Omega => suite_omega(cfg, &mut l),
            Suite::Multiplication => suite_multiplication(cfg, &mut l),
            Suite::Census => suite_census(cfg, &mut l),
            Suite::Co4 => suite_co4(cfg, &mut l),
            Suite::All => unreachable!(),
        };
        if let Err(e) = r {
            l.push("setup", false, format!("error: {e}"));
        }
        all.extend(l.out);
    }
    let pass = !all.is_empty() && all.iter().all(|c| c.pass);
    let text = match cfg.format {
        Format::Json => render_json(cfg, json!({ "pass": pass, "checks": all })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = all
                .iter()
                .map(|c| {
                    vec![
                        c.suite.clone(),
                        c.check.clone(),
                        c.pass.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            cfg.header() + &csv_string(&["suite", "check", "pass", "detail"], &rows)?
        }
        Format::Text => {
            let mut out = cfg.header();
            for c in &all {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {}: {} {}", c.suite, c.check, c.detail).unwrap();
            }
            writeln!(
                out,
                "{}",
                if pass {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            )
            .unwrap();
            out
        }
    };
    Ok((text, pass))
}
