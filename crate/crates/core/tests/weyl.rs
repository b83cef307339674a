use stplus::weyl::{
    centralizer_order_formula, closure, cross_norm, group_order, levi_subgroups, self_norm,
    sym_generators, torus_weyl_order, Ambient, ClassLabel, SignedPerm, Weyl, WeylType,
};

#[test]
fn orders() {
    assert_eq!(Weyl::new(WeylType::B, 2).unwrap().order(), 8);
    assert_eq!(Weyl::new(WeylType::D, 4).unwrap().order(), 192);
    assert_eq!(Weyl::new(WeylType::D, 1).unwrap().order(), 1);
    assert_eq!(Weyl::new(WeylType::D, 2).unwrap().order(), 4);
    for n in 0..=6 {
        assert_eq!(
            Weyl::new(WeylType::B, n).unwrap().order(),
            group_order(WeylType::B, n)
        );
    }
}

#[test]
fn identity_label() {
    let l = SignedPerm::identity(3).label();
    assert_eq!(l, ClassLabel::from_parts(&[(1, 3)], &[]));
    let minus = SignedPerm::new(&[0, 1], &[-1, -1]);
    assert_eq!(minus.label(), ClassLabel::from_parts(&[], &[(1, 2)]));
}

#[test]
fn b2_has_five_classes() {
    let w = Weyl::new(WeylType::B, 2).unwrap();
    assert_eq!(w.classes().len(), 5);
}

#[test]
fn b_classes_are_labels() {
    for n in 1..=6 {
        let w = Weyl::new(WeylType::B, n).unwrap();
        let classes = w.classes();
        let labels: Vec<ClassLabel> = classes.iter().map(|c| c.label.clone()).collect();
        assert_eq!(labels, ClassLabel::all(n), "n={n}");
        for c in &classes {
            assert_eq!(
                c.centralizer,
                centralizer_order_formula(&c.label, WeylType::B).unwrap()
            );
            assert_eq!(c.rep.label(), c.label.representative().label());
        }
    }
}

#[test]
fn d_splitting_matches_rule() {
    for n in 1..=6 {
        let split = Weyl::d_splitting(n).unwrap();
        let d = Weyl::new(WeylType::D, n).unwrap();
        for c in d.classes() {
            assert_eq!(
                split[&c.label],
                c.label.is_exceptional(),
                "n={n} {}",
                c.label
            );
            assert_eq!(
                c.centralizer,
                centralizer_order_formula(&c.label, WeylType::D).unwrap()
            );
        }
    }
}

#[test]
fn torus_weyl_orders_by_brute_force() {
    for n in 1..=5 {
        let b = Weyl::new(WeylType::B, n).unwrap();
        for label in ClassLabel::all(n) {
            let w = label.representative();
            let cb: Vec<SignedPerm> = b
                .elements
                .iter()
                .copied()
                .filter(|x| x.mul(&w) == w.mul(x))
                .collect();
            assert_eq!(
                cb.len() as u64,
                torus_weyl_order(Ambient::B, &label).unwrap()
            );
            let in_d = cb.iter().filter(|x| x.in_d()).count() as u64;
            let amb = if label.l() % 2 == 0 {
                Ambient::DPlus
            } else {
                Ambient::DMinus
            };
            assert_eq!(
                in_d,
                torus_weyl_order(amb, &label).unwrap(),
                "n={n} {label}"
            );
        }
    }
}

#[test]
fn worked_examples() {
    let e11 = ClassLabel::from_parts(&[], &[(1, 2)]);
    assert_eq!(centralizer_order_formula(&e11, WeylType::B).unwrap(), 8);
    let d3 = ClassLabel::from_parts(&[(3, 1)], &[]);
    assert_eq!(centralizer_order_formula(&d3, WeylType::B).unwrap(), 6);
    let d22 = ClassLabel::from_parts(&[(2, 2)], &[]);
    assert_eq!(torus_weyl_order(Ambient::DPlus, &d22).unwrap(), 32);
    assert!(Weyl::d_splitting(4).unwrap()[&d22]);
    let d2 = ClassLabel::from_parts(&[(2, 1)], &[]);
    assert_eq!(torus_weyl_order(Ambient::DPlus, &d2).unwrap(), 4);
    let e2 = ClassLabel::from_parts(&[], &[(2, 1)]);
    assert_eq!(torus_weyl_order(Ambient::DMinus, &e2).unwrap(), 2);
    assert!(torus_weyl_order(Ambient::DPlus, &e2).is_err());
}

#[test]
fn levi_norms() {
    assert_eq!(cross_norm(4).unwrap(), 2);
    assert_eq!(self_norm(4, WeylType::D).unwrap(), 3);
    assert_eq!(cross_norm(6).unwrap(), 3);
    assert_eq!(self_norm(6, WeylType::D).unwrap(), 4);
    assert_eq!(self_norm(1, WeylType::B).unwrap(), 2);
    assert_eq!(self_norm(3, WeylType::D).unwrap(), 2);
    for m in (2..=8).step_by(2) {
        assert_eq!(
            self_norm(m, WeylType::D).unwrap(),
            (m as u64 + 2) / 2,
            "m={m}"
        );
        assert_eq!(cross_norm(m).unwrap(), m as u64 / 2, "m={m}");
    }
}

#[test]
fn double_cosets_agree_with_burnside() {
    for m in 1..=5 {
        for ty in [WeylType::B, WeylType::D] {
            let w = Weyl::new(ty, m).unwrap();
            let s = sym_generators(m);
            let sm = closure(m, &s);
            assert_eq!(
                w.double_coset_count(&s, &s).unwrap(),
                w.induced_inner_product(&sm, &sm)
            );
        }
        let w = Weyl::new(WeylType::D, m).unwrap();
        let (w1, w2) = levi_subgroups(m);
        assert_eq!(cross_norm(m).unwrap(), w.induced_inner_product(&w1, &w2));
    }
}

#[test]
fn subgroup_outside_is_rejected() {
    let w = Weyl::new(WeylType::D, 3).unwrap();
    let t = SignedPerm::new(&[0, 1, 2], &[-1, 1, 1]);
    assert!(w.double_coset_count(&[t], &[]).is_err());
}
