use stplus::gf::Field;
use stplus::matgrp::{BuildOptions, GroupKind, MatGroup};
use stplus::quadspace::{FormType, QuadraticSpace};
use stplus::tori::{
    build_torus, enumerate_decomps, outer_isometry, tori_conjugate, torus_profile, Branch,
    TorusClass,
};

fn group(p: u32, dim: usize, ty: FormType, kind: GroupKind) -> MatGroup {
    let f = Field::new(p, 1).unwrap();
    let v = QuadraticSpace::standard(dim, ty, &f).unwrap();
    MatGroup::orthogonal(&v, kind, &BuildOptions::no_cache()).unwrap()
}

#[test]
fn catalog_counts() {
    assert_eq!(enumerate_decomps(FormType::Odd, 5, 3).unwrap().len(), 5);
    assert_eq!(enumerate_decomps(FormType::Minus, 4, 3).unwrap().len(), 2);
    let plus = enumerate_decomps(FormType::Plus, 4, 3).unwrap();
    assert_eq!(plus.len(), 4);
    let exc: Vec<_> = plus
        .iter()
        .filter(|s| s.classify() == TorusClass::Exceptional)
        .collect();
    assert_eq!(exc.len(), 2);
    assert_eq!(exc[0].weyl_order().unwrap(), 4);
    let minus = enumerate_decomps(FormType::Minus, 4, 3).unwrap();
    let e2 = minus
        .iter()
        .find(|s| s.decomp.label.e.get(&2) == Some(&1))
        .unwrap();
    assert_eq!(e2.weyl_order().unwrap(), 2);
    let odd = enumerate_decomps(FormType::Odd, 5, 3).unwrap();
    let e2 = odd
        .iter()
        .find(|s| s.decomp.label.e.get(&2) == Some(&1))
        .unwrap();
    assert_eq!(e2.order(), 10);
}

#[test]
fn tori_build_with_expected_orders() {
    let targets = [
        (3, 3, FormType::Odd, GroupKind::SO),
        (3, 4, FormType::Plus, GroupKind::SO),
        (3, 4, FormType::Minus, GroupKind::SO),
        (3, 5, FormType::Odd, GroupKind::SO),
        (2, 4, FormType::Plus, GroupKind::Omega),
        (2, 4, FormType::Minus, GroupKind::Omega),
        (2, 5, FormType::Odd, GroupKind::Omega),
        (5, 3, FormType::Odd, GroupKind::SO),
    ];
    for (p, dim, ty, kind) in targets {
        let g = group(p, dim, ty, kind);
        for spec in enumerate_decomps(ty, dim, p as u64).unwrap() {
            let t = build_torus(&spec, &g).unwrap();
            assert_eq!(t.order(), spec.order(), "{} {}", g.label, spec.decomp);
            let pk = &g.packer;
            for a in &t.elements {
                for b in &t.elements {
                    assert_eq!(pk.mul(a.1, b.1), pk.mul(b.1, a.1));
                }
            }
            if dim % 2 == 1 {
                assert!(!t.fixed_space(g.space().unwrap()).is_empty());
            }
        }
    }
}

#[test]
fn exceptional_branches_split_in_so_but_not_in_o() {
    let g = group(3, 4, FormType::Plus, GroupKind::SO);
    let o = group(3, 4, FormType::Plus, GroupKind::O);
    let specs = enumerate_decomps(FormType::Plus, 4, 3).unwrap();
    let first = specs
        .iter()
        .find(|s| s.branch == Some(Branch::First))
        .unwrap();
    let second = specs
        .iter()
        .find(|s| s.branch == Some(Branch::Second))
        .unwrap();
    let t1 = build_torus(first, &g).unwrap();
    let t2 = build_torus(second, &g).unwrap();
    assert!(!tori_conjugate(&g, &t1, &t2));
    assert!(tori_conjugate(&o, &t1, &t2));
    let r = outer_isometry(g.space().unwrap());
    assert!(o.contains(o.pack(&r)));
    assert!(!g.contains(g.pack(&r)));
}

#[test]
fn distinct_decomps_are_not_conjugate() {
    for (dim, ty) in [
        (3, FormType::Odd),
        (4, FormType::Plus),
        (4, FormType::Minus),
        (5, FormType::Odd),
    ] {
        let g = group(3, dim, ty, GroupKind::SO);
        let tori: Vec<_> = enumerate_decomps(ty, dim, 3)
            .unwrap()
            .iter()
            .map(|s| build_torus(s, &g).unwrap())
            .collect();
        for i in 0..tori.len() {
            for j in i + 1..tori.len() {
                let same_profile = torus_profile(&g, &tori[i]) == torus_profile(&g, &tori[j]);
                assert!(!same_profile || !tori_conjugate(&g, &tori[i], &tori[j]));
            }
        }
    }
}
