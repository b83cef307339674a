use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::Ratio;
use stplus::characters::census::{census, SeriesTag};
use stplus::characters::checks::{
    verify_gl, verify_mult_theorem, verify_subgroup_omega, verify_torus_pattern, verify_unitary,
};
use stplus::characters::{analyze, co4, OvergroupOptions};
use stplus::gf::{Fe, Field};
use stplus::linalg::Mat;
use stplus::matgrp::{
    expected_order, spinor_norm, BuildOptions, GroupKind, MatGroup, DEFAULT_MAX_ORDER,
};
use stplus::quadspace::{FormType, QuadraticSpace};
use stplus::tori::{build_torus, enumerate_decomps};
use stplus::weyl::{centralizer_order_formula, cross_norm, self_norm, Weyl, WeylType};

type Outcome = Result<String, String>;

fn field(p: u32) -> Field {
    Field::new(p, 1).unwrap()
}

fn space(p: u32, dim: usize, ty: FormType) -> QuadraticSpace {
    QuadraticSpace::standard(dim, ty, &field(p)).unwrap()
}

fn group(p: u32, dim: usize, ty: FormType, kind: GroupKind) -> Result<MatGroup, String> {
    MatGroup::orthogonal(&space(p, dim, ty), kind, &BuildOptions::no_cache())
        .map_err(|e| e.to_string())
}

fn natural(p: u32, dim: usize, ty: FormType) -> Result<MatGroup, String> {
    let kind = if p == 2 {
        GroupKind::Omega
    } else {
        GroupKind::SO
    };
    group(p, dim, ty, kind)
}

fn targets() -> Vec<(u32, usize, FormType)> {
    vec![
        (3, 3, FormType::Odd),
        (3, 4, FormType::Plus),
        (3, 4, FormType::Minus),
        (3, 5, FormType::Odd),
        (2, 4, FormType::Plus),
        (2, 4, FormType::Minus),
        (2, 5, FormType::Odd),
    ]
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn types(dim: usize) -> Vec<FormType> {
    if dim % 2 == 1 {
        vec![FormType::Odd]
    } else {
        vec![FormType::Plus, FormType::Minus]
    }
}

fn c1_orders() -> Outcome {
    let mut built = 0;
    let mut skipped = 0;
    for p in [2u32, 3, 5] {
        for dim in 1..=6usize {
            for ty in types(dim) {
                for kind in [GroupKind::O, GroupKind::SO, GroupKind::Omega] {
                    let e = expected_order(kind, ty, dim as u32, p as u128).unwrap();
                    if e > DEFAULT_MAX_ORDER {
                        skipped += 1;
                        continue;
                    }
                    let g = group(p, dim, ty, kind)
                        .map_err(|e| format!("{kind:?} {dim}{ty:?} q={p}: {e}"))?;
                    check(
                        g.order() as u128 == e,
                        format!("{} = {} vs {e}", g.label, g.order()),
                    )?;
                    built += 1;
                }
            }
            if dim % 2 == 0
                && expected_order(GroupKind::Sp, FormType::Plus, dim as u32, p as u128).unwrap()
                    <= DEFAULT_MAX_ORDER
            {
                let g = MatGroup::symplectic(&field(p), dim, &BuildOptions::no_cache())
                    .map_err(|e| e.to_string())?;
                let e =
                    expected_order(GroupKind::Sp, FormType::Plus, dim as u32, p as u128).unwrap();
                check(
                    g.order() as u128 == e,
                    format!("{} = {} vs {e}", g.label, g.order()),
                )?;
                built += 1;
            }
        }
    }
    let named = [
        (group(3, 3, FormType::Odd, GroupKind::SO)?.order(), 24),
        (group(3, 4, FormType::Plus, GroupKind::SO)?.order(), 576),
        (group(3, 4, FormType::Minus, GroupKind::SO)?.order(), 720),
        (group(3, 5, FormType::Odd, GroupKind::SO)?.order(), 51840),
        (group(2, 4, FormType::Minus, GroupKind::Omega)?.order(), 60),
    ];
    check(
        named.iter().all(|(a, b)| a == b),
        format!("named orders {named:?}"),
    )?;
    Ok(format!(
        "{built} groups equal their closed forms, {skipped} above the cap of {DEFAULT_MAX_ORDER}"
    ))
}

fn c2_weyl() -> Outcome {
    let mut classes = 0;
    for n in 1..=6 {
        for ty in [WeylType::B, WeylType::D] {
            for c in Weyl::new(ty, n).map_err(|e| e.to_string())?.classes() {
                let f = centralizer_order_formula(&c.label, ty).map_err(|e| e.to_string())?;
                check(
                    c.centralizer == f,
                    format!("{ty:?}{n} {}: {} vs {f}", c.label, c.centralizer),
                )?;
                classes += 1;
            }
        }
        let split = Weyl::d_splitting(n).map_err(|e| e.to_string())?;
        for (label, s) in &split {
            check(
                *s == label.is_exceptional(),
                format!("D{n} {label} splitting"),
            )?;
        }
    }
    Ok(format!("{classes} classes of B_n and D_n, n <= 6"))
}

fn c3_norms() -> Outcome {
    let got = (
        cross_norm(4).map_err(|e| e.to_string())?,
        self_norm(4, WeylType::D).map_err(|e| e.to_string())?,
        cross_norm(6).map_err(|e| e.to_string())?,
        self_norm(6, WeylType::D).map_err(|e| e.to_string())?,
    );
    check(got == (2, 3, 3, 4), format!("{got:?}"))?;
    Ok(format!("{got:?}"))
}

fn c4_tori() -> Outcome {
    let opts = OvergroupOptions::default();
    let mut n = 0;
    for (p, dim, ty) in [
        (3, 5, FormType::Odd),
        (3, 4, FormType::Plus),
        (3, 4, FormType::Minus),
        (2, 4, FormType::Plus),
        (2, 4, FormType::Minus),
    ] {
        let g = natural(p, dim, ty)?;
        for spec in enumerate_decomps(ty, dim, p as u64).map_err(|e| e.to_string())? {
            let t = build_torus(&spec, &g).map_err(|e| e.to_string())?;
            check(
                t.order() == spec.order(),
                format!("{} {}", g.label, spec.decomp),
            )?;
            n += 1;
        }
        let a = analyze(&g, &opts).map_err(|e| e.to_string())?;
        let r = verify_torus_pattern(&g, &a).map_err(|e| e.to_string())?;
        check(r.pass(), format!("{} {:?}", r.name, r.violations))?;
    }
    Ok(format!("{n} tori built, every restriction pattern exact"))
}

fn c5_omega() -> Outcome {
    let opts = OvergroupOptions::default();
    for (p, dim, ty) in targets() {
        let g = natural(p, dim, ty)?;
        let a = analyze(&g, &opts).map_err(|e| format!("{}: {e}", g.label))?;
        check(
            a.omega == a.omega_signed_power,
            format!("{} paths differ", g.label),
        )?;
        let id = g.class_of(g.packer.identity()).unwrap();
        let top = Ratio::from_integer((p as i128).pow(dim as u32 / 2));
        check(a.omega.values[id] == top, format!("{} omega(1)", g.label))?;
        if p == 3 && dim == 4 {
            let f = &g.field;
            let minus = Mat::identity(4).scale(f, f.neg(Fe::ONE));
            let c = g.class_of_mat(&minus).unwrap();
            check(
                a.omega.values[c] == Ratio::from_integer(ty.sign() as i128),
                format!("{} omega(-1)", g.label),
            )?;
        }
    }
    let g = natural(3, 3, FormType::Odd)?;
    let a = analyze(&g, &opts).map_err(|e| e.to_string())?;
    for (i, c) in g.classes().iter().enumerate() {
        if !c.semisimple || c.order == 1 {
            continue;
        }
        let v = a.omega.values[i];
        let m = g.unpack(c.rep);
        let fix = g.space().unwrap().fixed_space(&m).dim();
        let split_torus = c.order == 2 && c.centralizer_order == 4;
        let expected = if split_torus { 1 } else { -1 };
        check(
            fix == 1 && v == Ratio::from_integer(expected),
            format!("SO3(3) class {i}: {v}"),
        )?;
    }
    Ok("both paths agree on every class of 7 groups".into())
}

fn c6_mult() -> Outcome {
    let opts = OvergroupOptions::default();
    let f = field(3);
    let ns = f.nonsquare().unwrap();
    let line = |c| QuadraticSpace::diagonal(&f, &[c]);
    let splits = [
        (space(3, 2, FormType::Plus), space(3, 2, FormType::Plus)),
        (space(3, 2, FormType::Minus), space(3, 2, FormType::Minus)),
        (space(3, 2, FormType::Plus), space(3, 2, FormType::Minus)),
        (line(Fe::ONE), space(3, 3, FormType::Odd)),
        (line(ns), space(3, 3, FormType::Odd)),
        (line(Fe::ONE), space(3, 4, FormType::Plus)),
        (line(Fe::ONE), space(3, 4, FormType::Minus)),
        (space(3, 2, FormType::Plus), space(3, 3, FormType::Odd)),
        (space(3, 2, FormType::Minus), space(3, 3, FormType::Odd)),
    ];
    let mut pairs = 0;
    for (v1, v2) in &splits {
        let r = verify_mult_theorem(v1, v2, &opts).map_err(|e| e.to_string())?;
        check(r.pass(), format!("{} {:?}", r.name, r.violations))?;
        pairs += r.checked;
    }
    Ok(format!("{} splits, {pairs} pairs", splits.len()))
}

fn c7_restriction() -> Outcome {
    let opts = OvergroupOptions::default();
    let mut labels = Vec::new();
    for (dim, ty) in [
        (3, FormType::Odd),
        (4, FormType::Plus),
        (4, FormType::Minus),
    ] {
        let g = natural(3, dim, ty)?;
        let a = analyze(&g, &opts).map_err(|e| format!("{}: {e}", g.label))?;
        check(
            a.stplus_variants.len() == 2,
            format!("{} has {} overgroups", g.label, a.stplus_variants.len()),
        )?;
        let (l0, s0) = &a.stplus_variants[0];
        let (l1, s1) = &a.stplus_variants[1];
        check(s0 == s1, format!("{l0} vs {l1}"))?;
        labels.push(format!("{l0} = {l1} on {}", g.label));
    }
    Ok(labels.join("; "))
}

fn c8_subgroup() -> Outcome {
    let opts = OvergroupOptions::default();
    let mut names = Vec::new();
    for (p, ty) in [
        (3, FormType::Plus),
        (3, FormType::Minus),
        (2, FormType::Plus),
        (2, FormType::Minus),
    ] {
        let r =
            verify_subgroup_omega(&space(p, 4, ty), Fe::ONE, &opts).map_err(|e| e.to_string())?;
        check(r.pass(), format!("{} {:?}", r.name, r.violations))?;
        names.push(r.name);
    }
    Ok(names.join("; "))
}

fn c9_gl_u() -> Outcome {
    let opts = OvergroupOptions::default();
    let f = field(3);
    let gl = verify_gl(&f, 2, &opts).map_err(|e| e.to_string())?;
    check(gl.pass(), format!("{} {:?}", gl.name, gl.violations))?;
    let u = verify_unitary(&f, 2, &opts).map_err(|e| e.to_string())?;
    check(u.pass(), format!("{} {:?}", u.name, u.violations))?;
    Ok(format!(
        "{} ({} elements); {} ({} elements)",
        gl.name, gl.checked, u.name, u.checked
    ))
}

fn c10_census() -> Outcome {
    let opts = OvergroupOptions::default();
    let mut out = Vec::new();
    for (p, dim, ty) in targets() {
        let g = natural(p, dim, ty)?;
        let c = census(&g, &opts).map_err(|e| format!("{}: {e}", g.label))?;
        check(c.totals.matches, format!("{} {:?}", g.label, c.totals))?;
        check(
            c.series
                .iter()
                .filter(|s| s.tag == SeriesTag::Zero)
                .all(|s| s.predicted_norm == 0),
            format!("{} defect-1 series", g.label),
        )?;
        if p == 3 && dim == 3 {
            check(c.totals.predicted_norm_sum == 4, "SO3(3) total")?;
            let a = analyze(&g, &opts).map_err(|e| e.to_string())?;
            let direct = stplus::matgrp::inner_product(&g, &a.stplus, &a.stplus)
                .map_err(|e| e.to_string())?;
            check(direct == Ratio::from_integer(4), "SO3(3) direct norm")?;
        }
        out.push(format!("{} {}", g.label, c.totals.predicted_norm_sum));
    }
    Ok(out.join(", "))
}

fn c11_co4() -> Outcome {
    let opts = OvergroupOptions::default();
    let mut out = Vec::new();
    for (dim, ty) in [
        (3, FormType::Odd),
        (5, FormType::Odd),
        (4, FormType::Plus),
        (4, FormType::Minus),
    ] {
        let g = natural(3, dim, ty)?;
        let a = analyze(&g, &opts).map_err(|e| e.to_string())?;
        let r = co4(&g, &a).map_err(|e| e.to_string())?;
        check(r.pass, format!("{} {:?}", g.label, r))?;
        if dim == 4 {
            check(
                r.st == Ratio::from_integer(1 + ty.sign() as i128),
                format!("{} (St+, St)", g.label),
            )?;
        }
        out.push(format!(
            "{} ({}, {}, {}, {})",
            g.label, r.st, r.st_minus, r.trivial, r.trivial_minus
        ));
    }
    Ok(out.join("; "))
}

fn c12_structure() -> Outcome {
    let f = field(3);
    let p4 = space(3, 4, FormType::Plus);
    let g = group(3, 4, FormType::Plus, GroupKind::SO)?;
    let planes = p4.totally_singular_subspaces(2);
    let mut orbits: Vec<BTreeSet<_>> = Vec::new();
    for pl in &planes {
        if !orbits.iter().any(|o| o.contains(pl)) {
            orbits.push(
                g.elements
                    .iter()
                    .map(|&x| pl.image(&f, &g.unpack(x)))
                    .collect(),
            );
        }
    }
    check(orbits.len() == 2, format!("{} plane orbits", orbits.len()))?;
    let g = group(3, 5, FormType::Odd, GroupKind::SO)?;
    let v = g.space().unwrap().clone();
    let specs = enumerate_decomps(FormType::Odd, 5, 3).map_err(|e| e.to_string())?;
    for spec in &specs {
        let t = build_torus(spec, &g).map_err(|e| e.to_string())?;
        let has_minus = t
            .elements
            .iter()
            .any(|(_, x)| spinor_norm(&v, &g.unpack(*x)) == -1);
        check(
            has_minus,
            format!("torus {} has no spinor norm -1", spec.decomp),
        )?;
        check(
            !t.fixed_space(&v).is_empty(),
            format!("torus {} fixes no vector", spec.decomp),
        )?;
    }
    Ok(format!(
        "{} plane orbits; {} tori of SO5(3)",
        orbits.len(),
        specs.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("group orders", c1_orders),
        ("Weyl centralizers and splitting", c2_weyl),
        ("Levi norms", c3_norms),
        ("torus catalog and restriction pattern", c4_tori),
        ("omega paths and values", c5_omega),
        ("multiplication law", c6_mult),
        ("restriction independent of overgroup", c7_restriction),
        ("omega restricts to subgroups", c8_subgroup),
        ("GL and U comparisons", c9_gl_u),
        ("census against brute force", c10_census),
        ("inner-product quadruples", c11_co4),
        ("structural spot checks", c12_structure),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {:>2} {name} (exact): {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} (exact): {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
