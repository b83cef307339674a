use std::collections::BTreeSet;

use stplus::gf::{Fe, Field};
use stplus::linalg::{all_vectors, Mat};
use stplus::matgrp::{BuildOptions, GroupKind, MatGroup};
use stplus::quadspace::{FormType, QuadraticSpace};

fn f(p: u32) -> Field {
    Field::new(p, 1).unwrap()
}

fn singular_count(v: &QuadraticSpace) -> usize {
    all_vectors(&v.field, v.dim)
        .filter(|x| x.iter().any(|c| !c.is_zero()) && v.value(x).is_zero())
        .count()
}

#[test]
fn standard_spaces_and_witt() {
    let f3 = f(3);
    let h = QuadraticSpace::standard(2, FormType::Plus, &f3).unwrap();
    let w = h.witt_decompose().unwrap();
    assert_eq!(
        (w.witt_index, w.witt_defect, w.anisotropic_dim),
        (1, Some(0), 0)
    );
    let a = QuadraticSpace::standard(2, FormType::Minus, &f3).unwrap();
    assert_eq!(singular_count(&a), 0);
    let m4 = QuadraticSpace::standard(4, FormType::Minus, &f3).unwrap();
    let w = m4.witt_decompose().unwrap();
    assert_eq!(
        (w.witt_index, w.witt_defect, w.anisotropic_dim),
        (1, Some(1), 2)
    );
    let o5 = QuadraticSpace::standard(5, FormType::Odd, &f3).unwrap();
    let w = o5.witt_decompose().unwrap();
    assert_eq!(
        (w.witt_index, w.witt_defect, w.anisotropic_dim),
        (2, None, 1)
    );
}

#[test]
fn form_type_matches_singular_vector_count() {
    // nonzero singular vectors: (q^m - e)(q^{m-1} + e) in dimension 2m, q^{2m} - 1 in dimension 2m + 1
    for p in [2, 3, 5] {
        let q = p as i64;
        for dim in 1..=4usize {
            let types: &[FormType] = if dim % 2 == 1 {
                &[FormType::Odd]
            } else {
                &[FormType::Plus, FormType::Minus]
            };
            for &ty in types {
                let v = QuadraticSpace::standard(dim, ty, &f(p)).unwrap();
                assert!(v.is_nondegenerate() || (p == 2 && dim % 2 == 1));
                assert_eq!(v.form_type().unwrap(), ty);
                let m = (dim / 2) as u32;
                let expected = if dim % 2 == 1 {
                    q.pow(2 * m) - 1
                } else {
                    let e = ty.sign();
                    (q.pow(m) - e) * (q.pow(m - 1) + e)
                };
                assert_eq!(
                    singular_count(&v) as i64,
                    expected,
                    "q={q} dim={dim} {ty:?}"
                );
            }
        }
    }
}

#[test]
fn subspaces_and_sums() {
    let f3 = f(3);
    let p4 = QuadraticSpace::standard(4, FormType::Plus, &f3).unwrap();
    let id = Mat::identity(4);
    assert_eq!(p4.fixed_space(&id).dim(), 4);
    let minus = id.scale(&f3, f3.neg(Fe::ONE));
    assert_eq!(p4.fixed_space(&minus).dim(), 0);
    assert_eq!(p4.moved_space(&minus).dim(), 4);
    let plane = vec![
        vec![Fe(1), Fe(0), Fe(0), Fe(0)],
        vec![Fe(0), Fe(1), Fe(0), Fe(0)],
    ];
    let r = p4.restrict(&plane);
    if r.is_nondegenerate() {
        let comp = p4.orthogonal_complement(&plane);
        assert_eq!(comp.dim(), 2);
        let c = p4.restrict(&comp.basis);
        assert_eq!(
            c.form_type().unwrap().combine(r.form_type().unwrap()),
            FormType::Plus
        );
    }
    let sum = QuadraticSpace::standard(2, FormType::Plus, &f3)
        .unwrap()
        .orthogonal_sum(&QuadraticSpace::standard(2, FormType::Minus, &f3).unwrap());
    assert_eq!(sum.witt_decompose().unwrap().witt_defect, Some(1));
    let m4 = QuadraticSpace::standard(4, FormType::Minus, &f3).unwrap();
    let w = m4.witt_decompose().unwrap();
    assert_eq!(w.anisotropic_dim, 2);
}

#[test]
fn totally_singular_subspaces_and_orbits() {
    let f3 = f(3);
    let h = QuadraticSpace::standard(2, FormType::Plus, &f3).unwrap();
    assert_eq!(h.totally_singular_subspaces(1).len(), 2);
    assert_eq!(h.totally_singular_subspaces(0).len(), 1);
    let p4 = QuadraticSpace::standard(4, FormType::Plus, &f3).unwrap();
    let planes = p4.totally_singular_subspaces(2);
    assert_eq!(planes.len(), 8);
    let g = MatGroup::orthogonal(&p4, GroupKind::SO, &BuildOptions::no_cache()).unwrap();
    let mut orbits: Vec<BTreeSet<_>> = Vec::new();
    for pl in &planes {
        if orbits.iter().any(|o| o.contains(pl)) {
            continue;
        }
        let orbit: BTreeSet<_> = g
            .elements
            .iter()
            .map(|&x| pl.image(&f3, &g.unpack(x)))
            .collect();
        orbits.push(orbit);
    }
    assert_eq!(orbits.len(), 2);
    assert!(orbits.iter().all(|o| o.len() == 4));
    let o = MatGroup::orthogonal(&p4, GroupKind::O, &BuildOptions::no_cache()).unwrap();
    let orbit: BTreeSet<_> = o
        .elements
        .iter()
        .map(|&x| planes[0].image(&f3, &o.unpack(x)))
        .collect();
    assert_eq!(orbit.len(), 8);
}

#[test]
fn similarity_between_models() {
    let f5 = f(5);
    let a = QuadraticSpace::standard(3, FormType::Odd, &f5).unwrap();
    let b = QuadraticSpace::diagonal(&f5, &[Fe(2), Fe(2), Fe(3)]);
    let (m, lambda) = a.find_similarity(&b).unwrap();
    for x in all_vectors(&f5, 3) {
        let y = m.apply(&f5, &x);
        assert_eq!(b.value(&y), f5.mul(lambda, a.value(&x)));
    }
}
