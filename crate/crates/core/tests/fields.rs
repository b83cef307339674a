use stplus::gf::poly::Poly;
use stplus::gf::{Fe, Field};

/// Multiplication of coefficient vectors modulo a monic polynomial.
fn mul_mod(p: u32, m: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let k = m.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for t in 0..=k {
            prod[d - k + t] = (prod[d - k + t] + p * p - c * m[t] % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

#[test]
fn field_construction() {
    let f = Field::new(3, 1).unwrap();
    assert_eq!(f.q(), 3);
    assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
    assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    assert!(Field::new(4, 1).is_err());
    assert!(Field::new(2, 0).is_err());
}

#[test]
fn multiplication_matches_polynomial_oracle() {
    for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)] {
        let f = Field::new(p, k).unwrap();
        let m = f.modulus().to_vec();
        for a in f.elements() {
            for b in f.elements() {
                let expect = mul_mod(p, &m, &f.coeffs(a), &f.coeffs(b));
                assert_eq!(f.coeffs(f.mul(a, b)), expect, "GF({p}^{k})");
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (7, 1)] {
        let f = Field::new(p, k).unwrap();
        let q = f.q() as u64;
        assert_eq!(f.order(f.primitive()), q - 1);
        let mut seen = std::collections::BTreeSet::new();
        let mut x = Fe::ONE;
        for _ in 0..q - 1 {
            seen.insert(x);
            x = f.mul(x, f.primitive());
        }
        assert_eq!(seen.len() as u64, q - 1);
    }
}

#[test]
fn squares() {
    let f3 = Field::new(3, 1).unwrap();
    assert!(!f3.is_square(f3.from_int(2)));
    let f9 = Field::new(3, 2).unwrap();
    assert!(f9.is_square(f9.from_int(2)));
    let f4 = Field::new(2, 2).unwrap();
    assert!(f4.elements().all(|x| f4.is_square(x)));
    for (p, k) in [(3, 1), (5, 1), (3, 2), (7, 1), (2, 3)] {
        let f = Field::new(p, k).unwrap();
        for a in f.elements() {
            let brute = f.elements().any(|y| f.mul(y, y) == a);
            assert_eq!(f.is_square(a), brute);
            match f.sqrt(a) {
                Some(r) => assert_eq!(f.mul(r, r), a),
                None => assert!(!brute),
            }
        }
    }
}

#[test]
fn trace_and_norm_gf9() {
    let f3 = Field::new(3, 1).unwrap();
    let f9 = Field::new(3, 2).unwrap();
    let e = f3.embedding_into(&f9).unwrap();
    for x in f9.elements() {
        let t = f9.add(x, f9.pow(x, 3));
        assert_eq!(e.apply(e.trace(x)), t);
        assert_eq!(e.apply(e.norm(x)), f9.pow(x, 4));
    }
    for a in f3.elements() {
        assert_eq!(e.trace(e.apply(a)), f3.mul(f3.from_int(2), a));
    }
    let image: std::collections::BTreeSet<Fe> = f9.elements().skip(1).map(|x| e.norm(x)).collect();
    assert_eq!(image.len(), 2);
    for a in f3.elements() {
        for b in f3.elements() {
            assert_eq!(e.apply(f3.mul(a, b)), f9.mul(e.apply(a), e.apply(b)));
            assert_eq!(e.apply(f3.add(a, b)), f9.add(e.apply(a), e.apply(b)));
        }
    }
    assert!(Field::new(2, 2)
        .unwrap()
        .embedding_into(&Field::new(2, 3).unwrap())
        .is_err());
}

#[test]
fn frobenius_is_an_automorphism() {
    let f = Field::new(2, 3).unwrap();
    for a in f.elements() {
        for b in f.elements() {
            assert_eq!(
                f.frobenius(f.mul(a, b)),
                f.mul(f.frobenius(a), f.frobenius(b))
            );
            assert_eq!(
                f.frobenius(f.add(a, b)),
                f.add(f.frobenius(a), f.frobenius(b))
            );
        }
    }
}

#[test]
fn polynomial_factorization() {
    let f = Field::new(3, 1).unwrap();
    let x2p1 = Poly::new(vec![Fe(1), Fe(0), Fe(1)]);
    assert!(x2p1.is_irreducible(&f));
    let x2m1 = Poly::new(vec![Fe(2), Fe(0), Fe(1)]);
    let fac = x2m1.factor(&f);
    assert_eq!(fac.len(), 2);
    let prod = fac.iter().fold(Poly::one(), |acc, (p, m)| {
        (0..*m).fold(acc, |a, _| a.mul(&f, p))
    });
    assert_eq!(prod, x2m1);
}
