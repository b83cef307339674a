//! Closed-form orders of the classical groups.

use super::GroupKind;
use crate::quadspace::FormType;

fn prod(q: u128, m: u32) -> u128 {
    (1..=m).map(|i| q.pow(2 * i) - 1).product()
}

pub fn sp_order(m: u32, q: u128) -> u128 {
    q.pow(m * m) * prod(q, m)
}

pub fn gl_order(a: u32, q: u128) -> u128 {
    q.pow(a * a.saturating_sub(1) / 2) * (1..=a).map(|i| q.pow(i) - 1).product::<u128>()
}

pub fn unitary_order(a: u32, q: u128) -> u128 {
    let signed: i128 = (1..=a)
        .map(|i| q.pow(i) as i128 - if i % 2 == 0 { 1 } else { -1 })
        .product();
    q.pow(a * a.saturating_sub(1) / 2) * signed as u128
}

/// `|O(V)|` for a nondegenerate space of the given shape.
pub fn orthogonal_order(ty: FormType, dim: u32, q: u128) -> u128 {
    let even_q = q.is_multiple_of(2);
    match ty {
        FormType::Odd => {
            let m = dim / 2;
            if even_q {
                sp_order(m, q)
            } else {
                2 * sp_order(m, q)
            }
        }
        FormType::Plus | FormType::Minus => {
            let m = dim / 2;
            if m == 0 {
                return 1;
            }
            let top = if ty == FormType::Plus {
                q.pow(m) - 1
            } else {
                q.pow(m) + 1
            };
            2 * q.pow(m * (m - 1)) * top * prod(q, m - 1)
        }
    }
}

/// Order of the named group on a space of type `ty` and dimension `dim`
/// over GF(q); `None` for kinds without a closed form here.
pub fn expected_order(kind: GroupKind, ty: FormType, dim: u32, q: u128) -> Option<u128> {
    let even_q = q.is_multiple_of(2);
    let o = orthogonal_order(ty, dim, q);
    Some(match kind {
        GroupKind::O => o,
        GroupKind::SO => {
            if even_q {
                o
            } else {
                o / 2
            }
        }
        GroupKind::Omega => {
            if dim == 1 {
                1
            } else if even_q && ty == FormType::Odd {
                o
            } else if even_q {
                o / 2
            } else {
                o / 4
            }
        }
        GroupKind::Sp => sp_order(dim / 2, q),
        _ => return None,
    })
}

/// The p-part of `n`.
pub fn p_part(mut n: u128, p: u128) -> u128 {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}
