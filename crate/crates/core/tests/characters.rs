use num_rational::Ratio;
use stplus::characters::{
    analyze, centralizer_shape, co4, shape_mismatches, steinberg, steinberg_gates, AmbientGroup,
    FactorKind, OvergroupOptions,
};
use stplus::gf::Field;
use stplus::linalg::Mat;
use stplus::matgrp::{inner_product, BuildOptions, GroupKind, MatGroup};
use stplus::quadspace::{FormType, QuadraticSpace};

fn group(p: u32, dim: usize, ty: FormType, kind: GroupKind) -> MatGroup {
    let f = Field::new(p, 1).unwrap();
    let v = QuadraticSpace::standard(dim, ty, &f).unwrap();
    MatGroup::orthogonal(&v, kind, &BuildOptions::no_cache()).unwrap()
}

fn targets() -> Vec<MatGroup> {
    vec![
        group(3, 3, FormType::Odd, GroupKind::SO),
        group(3, 4, FormType::Plus, GroupKind::SO),
        group(3, 4, FormType::Minus, GroupKind::SO),
        group(3, 5, FormType::Odd, GroupKind::SO),
        group(2, 4, FormType::Plus, GroupKind::Omega),
        group(2, 4, FormType::Minus, GroupKind::Omega),
        group(2, 5, FormType::Odd, GroupKind::Omega),
        group(5, 3, FormType::Odd, GroupKind::SO),
    ]
}

fn int(n: i128) -> Ratio<i128> {
    Ratio::from_integer(n)
}

#[test]
fn shapes_match_enumerated_centralizers() {
    for g in targets() {
        assert!(shape_mismatches(&g).unwrap().is_empty(), "{}", g.label);
    }
    let sp =
        MatGroup::symplectic(&Field::new(3, 1).unwrap(), 4, &BuildOptions::no_cache()).unwrap();
    assert!(shape_mismatches(&sp).unwrap().is_empty());
}

#[test]
fn shape_examples() {
    let g = group(3, 5, FormType::Odd, GroupKind::SO);
    let amb = AmbientGroup::of(&g);
    let s = centralizer_shape(&amb, &Mat::identity(5)).unwrap();
    assert_eq!(s.factors.len(), 1);
    assert_eq!(s.factors[0].kind, FactorKind::SOOdd);
    assert_eq!(s.rank(), 2);

    let g = group(3, 4, FormType::Minus, GroupKind::SO);
    let amb = AmbientGroup::of(&g);
    let f = &g.field;
    let minus = Mat::identity(4).scale(f, f.neg(stplus::gf::Fe::ONE));
    let s = centralizer_shape(&amb, &minus).unwrap();
    assert_eq!(s.factors[0].kind, FactorKind::SOMinus);
    let c = g.classes().iter().find(|c| c.order == 10).unwrap();
    let s = centralizer_shape(&amb, &g.unpack(c.rep)).unwrap();
    assert_eq!(s.factors.len(), 1);
    assert_eq!(
        (s.factors[0].kind, s.factors[0].size, s.factors[0].degree),
        (FactorKind::U, 1, 2)
    );
    assert_eq!(s.predicted_order(3), 10);
    assert_eq!(c.centralizer_order, 10);
}

#[test]
fn unipotent_elements_are_rejected() {
    let g = group(3, 3, FormType::Odd, GroupKind::SO);
    let amb = AmbientGroup::of(&g);
    let c = g.classes().iter().find(|c| !c.semisimple).unwrap();
    assert!(centralizer_shape(&amb, &g.unpack(c.rep)).is_err());
}

#[test]
fn steinberg_gates_hold() {
    let mut all = targets();
    all.push(
        MatGroup::symplectic(&Field::new(3, 1).unwrap(), 4, &BuildOptions::no_cache()).unwrap(),
    );
    for g in &all {
        let st = steinberg(g).unwrap();
        let gates = steinberg_gates(g, &st).unwrap();
        assert!(gates.pass, "{} {:?}", g.label, gates);
    }
    let g = group(3, 5, FormType::Odd, GroupKind::SO);
    let st = steinberg(&g).unwrap();
    let id = g.class_of(g.packer.identity()).unwrap();
    assert_eq!(st.values[id], int(81));
}

#[test]
fn steinberg_on_so3_tori() {
    let g = group(3, 3, FormType::Odd, GroupKind::SO);
    let st = steinberg(&g).unwrap();
    for (i, c) in g.classes().iter().enumerate() {
        if c.semisimple && c.order > 1 {
            let expected = match c.order {
                // -1 on a plane; the plane is split iff the centralizer has order 4
                2 if c.centralizer_order == 4 => Some(1),
                2 => Some(-1),
                4 => Some(-1),
                _ => None,
            };
            if let Some(e) = expected {
                assert_eq!(st.values[i], int(e), "class {i} order {}", c.order);
            }
        }
    }
}

#[test]
fn omega_values() {
    let opts = OvergroupOptions::default();
    for g in targets() {
        let a = analyze(&g, &opts).unwrap();
        let dim = g.space().unwrap().dim as u32;
        let q = g.field.q() as i128;
        let id = g.class_of(g.packer.identity()).unwrap();
        assert_eq!(a.omega.values[id], int(q.pow(dim / 2)), "{}", g.label);
        assert_eq!(a.omega, a.omega_signed_power);
    }
    for (ty, alpha) in [(FormType::Plus, 1), (FormType::Minus, -1)] {
        let g = group(3, 4, ty, GroupKind::SO);
        let a = analyze(&g, &opts).unwrap();
        let f = &g.field;
        let minus = Mat::identity(4).scale(f, f.neg(stplus::gf::Fe::ONE));
        let c = g.class_of_mat(&minus).unwrap();
        assert_eq!(a.omega.values[c], int(alpha));
    }
}

#[test]
fn omega_on_so2_minus() {
    let g = group(3, 2, FormType::Minus, GroupKind::SO);
    let a = analyze(&g, &OvergroupOptions::default()).unwrap();
    for (i, c) in g.classes().iter().enumerate() {
        let e = if c.order == 1 { 3 } else { -1 };
        assert_eq!(a.omega.values[i], int(e));
    }
}

#[test]
fn stplus_norm_so3() {
    let g = group(3, 3, FormType::Odd, GroupKind::SO);
    let a = analyze(&g, &OvergroupOptions::default()).unwrap();
    assert_eq!(a.stplus_variants.len(), 2);
    let id = g.class_of(g.packer.identity()).unwrap();
    assert_eq!(a.stplus.values[id], int(9));
    assert_eq!(inner_product(&g, &a.stplus, &a.stplus).unwrap(), int(4));
}

#[test]
fn co4_quadruples() {
    let opts = OvergroupOptions::default();
    for (dim, ty) in [
        (3, FormType::Odd),
        (5, FormType::Odd),
        (4, FormType::Plus),
        (4, FormType::Minus),
    ] {
        let g = group(3, dim, ty, GroupKind::SO);
        let a = analyze(&g, &opts).unwrap();
        let r = co4(&g, &a).unwrap();
        assert!(r.pass, "{} {:?}", g.label, r);
    }
}

#[test]
fn census_matches_brute_force() {
    use stplus::characters::census::{census, SeriesTag};
    let opts = OvergroupOptions::default();
    for g in targets() {
        let c = census(&g, &opts).unwrap();
        let brief: Vec<_> = c
            .series
            .iter()
            .map(|s| (s.tag, s.dim_fix, s.predicted_norm))
            .collect();
        eprintln!("{} {:?} {:?}", g.label, c.totals, brief);
        assert!(c.totals.matches, "{} {:?}", g.label, c.totals);
        assert!(c
            .series
            .iter()
            .filter(|s| s.tag == SeriesTag::Zero)
            .all(|s| s.predicted_norm == 0));
    }
}

fn std_space(p: u32, dim: usize, ty: FormType) -> QuadraticSpace {
    QuadraticSpace::standard(dim, ty, &Field::new(p, 1).unwrap()).unwrap()
}

#[test]
fn multiplication_theorem_on_splits() {
    use stplus::characters::checks::verify_mult_theorem;
    let opts = OvergroupOptions::default();
    let f = Field::new(3, 1).unwrap();
    let ns = f.nonsquare().unwrap();
    let one = stplus::gf::Fe::ONE;
    let line = |c| QuadraticSpace::diagonal(&f, &[c]);
    let splits = [
        (
            std_space(3, 2, FormType::Plus),
            std_space(3, 2, FormType::Minus),
        ),
        (
            std_space(3, 2, FormType::Plus),
            std_space(3, 2, FormType::Plus),
        ),
        (line(one), std_space(3, 3, FormType::Odd)),
        (line(ns), std_space(3, 3, FormType::Odd)),
        (line(one), std_space(3, 4, FormType::Plus)),
        (
            std_space(3, 2, FormType::Minus),
            std_space(3, 3, FormType::Odd),
        ),
    ];
    for (v1, v2) in &splits {
        let r = verify_mult_theorem(v1, v2, &opts).unwrap();
        assert!(r.pass(), "{} {:?}", r.name, r.violations);
    }
}

#[test]
fn gl_and_unitary_comparisons() {
    use stplus::characters::checks::{verify_gl, verify_unitary};
    let opts = OvergroupOptions::default();
    let f = Field::new(3, 1).unwrap();
    let r = verify_gl(&f, 2, &opts).unwrap();
    assert!(r.pass(), "{:?}", r.violations);
    let r = verify_unitary(&f, 2, &opts).unwrap();
    assert!(r.name.contains("order 96"), "{}", r.name);
    assert!(r.pass(), "{:?}", r.violations);
}

#[test]
fn subgroup_omega_restricts() {
    use stplus::characters::checks::verify_subgroup_omega;
    let opts = OvergroupOptions::default();
    for (p, ty) in [
        (3, FormType::Plus),
        (3, FormType::Minus),
        (2, FormType::Plus),
        (2, FormType::Minus),
    ] {
        let x = std_space(p, 4, ty);
        let r = verify_subgroup_omega(&x, stplus::gf::Fe::ONE, &opts).unwrap();
        assert!(r.pass(), "{} {:?}", r.name, r.violations);
    }
}

#[test]
fn torus_restriction_pattern() {
    use stplus::characters::checks::verify_torus_pattern;
    let opts = OvergroupOptions::default();
    for g in targets() {
        let a = analyze(&g, &opts).unwrap();
        let r = verify_torus_pattern(&g, &a).unwrap();
        assert!(r.pass(), "{} {:?}", r.name, r.violations);
    }
}
