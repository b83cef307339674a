//! Signed permutation groups W(B_n) and W(D_n).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WeylType {
    B,
    D,
}

impl std::str::FromStr for WeylType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(WeylType::B),
            "D" | "d" => Ok(WeylType::D),
            _ => Err(Error::Unsupported(format!("Weyl type {s:?}"))),
        }
    }
}

/// `w(b_i) = sign_i b_{perm[i]}`; bit `i` of `neg` set when `sign_i = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    n: u8,
    perm: [u8; MAX_N],
    neg: u8,
}

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        let mut perm = [0u8; MAX_N];
        for (i, p) in perm.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        SignedPerm {
            n: n as u8,
            perm,
            neg: 0,
        }
    }

    pub fn new(perm: &[usize], signs: &[i8]) -> SignedPerm {
        let mut w = SignedPerm::identity(perm.len());
        for (i, &p) in perm.iter().enumerate() {
            w.perm[i] = p as u8;
            if signs[i] < 0 {
                w.neg |= 1 << i;
            }
        }
        w
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn image(&self, i: usize) -> (usize, i8) {
        let s = if self.neg >> i & 1 == 1 { -1 } else { 1 };
        (self.perm[i] as usize, s)
    }

    /// `self * o`: apply `o` first.
    pub fn mul(&self, o: &SignedPerm) -> SignedPerm {
        let mut out = SignedPerm::identity(self.n());
        for i in 0..self.n() {
            let j = o.perm[i] as usize;
            out.perm[i] = self.perm[j];
            if ((o.neg >> i) ^ (self.neg >> j)) & 1 == 1 {
                out.neg |= 1 << i;
            }
        }
        out
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut out = SignedPerm::identity(self.n());
        for i in 0..self.n() {
            let j = self.perm[i] as usize;
            out.perm[j] = i as u8;
            if self.neg >> i & 1 == 1 {
                out.neg |= 1 << j;
            }
        }
        out
    }

    pub fn sign_product(&self) -> i8 {
        if self.neg.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn in_d(&self) -> bool {
        self.sign_product() == 1
    }

    /// Cycles of the underlying permutation with the sign product along each.
    pub fn cycles(&self) -> Vec<(Vec<usize>, i8)> {
        let mut seen = 0u16;
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut cyc = Vec::new();
            let mut sign = 1;
            let mut i = s;
            while seen >> i & 1 == 0 {
                seen |= 1 << i;
                cyc.push(i);
                sign *= self.image(i).1;
                i = self.perm[i] as usize;
            }
            out.push((cyc, sign));
        }
        out
    }

    pub fn label(&self) -> ClassLabel {
        let mut l = ClassLabel::default();
        for (c, s) in self.cycles() {
            let m = if s == 1 { &mut l.d } else { &mut l.e };
            *m.entry(c.len()).or_insert(0) += 1;
        }
        l
    }
}

/// Positive-cycle multiplicities `d_i` and negative-cycle multiplicities `e_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassLabel {
    pub d: BTreeMap<usize, usize>,
    pub e: BTreeMap<usize, usize>,
}

fn fmt_parts(m: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = m
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(&i, &c)| {
            if c == 1 {
                format!("{i}")
            } else {
                format!("{i}^{c}")
            }
        })
        .collect();
    format!("[{}]", parts.join(" "))
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={},e={}", fmt_parts(&self.d), fmt_parts(&self.e))
    }
}

impl ClassLabel {
    pub fn from_parts(d: &[(usize, usize)], e: &[(usize, usize)]) -> ClassLabel {
        let pick = |v: &[(usize, usize)]| v.iter().filter(|x| x.1 > 0).copied().collect();
        ClassLabel {
            d: pick(d),
            e: pick(e),
        }
    }

    pub fn d_str(&self) -> String {
        fmt_parts(&self.d)
    }

    pub fn e_str(&self) -> String {
        fmt_parts(&self.e)
    }

    pub fn rank(&self) -> usize {
        self.d.iter().chain(&self.e).map(|(i, c)| i * c).sum()
    }

    /// `k = sum d_i`
    pub fn k(&self) -> usize {
        self.d.values().sum()
    }

    /// `l = sum e_j`
    pub fn l(&self) -> usize {
        self.e.values().sum()
    }

    pub fn is_neutral(&self) -> bool {
        self.l() == 0
    }

    /// Neutral with every positive cycle length even.
    pub fn is_exceptional(&self) -> bool {
        self.is_neutral() && self.d.keys().all(|i| i % 2 == 0)
    }

    /// A representative: positive cycles first, then negative ones.
    pub fn representative(&self) -> SignedPerm {
        let n = self.rank();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut signs = vec![1i8; n];
        let mut at = 0;
        let cycles = self
            .d
            .iter()
            .map(|(&i, &c)| (i, c, 1))
            .chain(self.e.iter().map(|(&j, &c)| (j, c, -1)));
        for (len, count, s) in cycles {
            for _ in 0..count {
                for t in 0..len {
                    perm[at + t] = at + (t + 1) % len;
                }
                signs[at + len - 1] = s;
                at += len;
            }
        }
        SignedPerm::new(&perm, &signs)
    }

    /// Every label of rank `n`.
    pub fn all(n: usize) -> Vec<ClassLabel> {
        let mut out = Vec::new();
        for a in 0..=n {
            for pd in partitions(a) {
                for pe in partitions(n - a) {
                    let count = |p: &[usize]| {
                        let mut m = BTreeMap::new();
                        for &x in p {
                            *m.entry(x).or_insert(0) += 1;
                        }
                        m
                    };
                    out.push(ClassLabel {
                        d: count(&pd),
                        e: count(&pe),
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// `prod_i (2i)^{d_i} d_i! * prod_j (2j)^{e_j} e_j!`
    pub fn b_centralizer(&self) -> u64 {
        self.d
            .iter()
            .chain(&self.e)
            .map(|(&i, &c)| (2 * i as u64).pow(c as u32) * factorial(c as u64))
            .product()
    }
}

/// Integer partitions of `n` in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=n.min(max)).rev() {
            cur.push(x);
            go(n - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub fn group_order(ty: WeylType, n: usize) -> u64 {
    let b = (1u64 << n) * factorial(n as u64);
    match ty {
        WeylType::B => b,
        WeylType::D if n == 0 => 1,
        WeylType::D => b / 2,
    }
}

/// `|C_W(w)|` for a class of the given label, from the closed formulas. For
/// type D the label must have `l` even.
pub fn centralizer_order_formula(label: &ClassLabel, ty: WeylType) -> Result<u64> {
    let b = label.b_centralizer();
    match ty {
        WeylType::B => Ok(b),
        WeylType::D => {
            if label.l() % 2 == 1 {
                return Err(Error::InvalidSpace(format!("{label} is not in W(D_n)")));
            }
            Ok(if label.is_exceptional() { b } else { b / 2 })
        }
    }
}

/// Ambient Weyl group of an orthogonal group: `SO_{2n+1}`, `SO+_{2n}`,
/// `SO-_{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ambient {
    B,
    DPlus,
    DMinus,
}

/// `|W(T)| = |N(T)/T|` for the torus with the given label.
pub fn torus_weyl_order(ambient: Ambient, label: &ClassLabel) -> Result<u64> {
    let b = label.b_centralizer();
    let l = label.l();
    match ambient {
        Ambient::B => Ok(b),
        Ambient::DPlus if l.is_multiple_of(2) => Ok(if label.is_exceptional() { b } else { b / 2 }),
        Ambient::DMinus if l % 2 == 1 => Ok(b / 2),
        _ => Err(Error::InvalidSpace(format!(
            "{label} has the wrong parity for {ambient:?}"
        ))),
    }
}

/// Builds a subgroup from generators by closure.
pub fn closure(n: usize, gens: &[SignedPerm]) -> Vec<SignedPerm> {
    let id = SignedPerm::identity(n);
    let mut seen = std::collections::HashSet::new();
    seen.insert(id);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<SignedPerm> = seen.into_iter().collect();
    v.sort();
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylClass {
    #[serde(skip)]
    pub rep: SignedPerm,
    pub label: ClassLabel,
    pub size: u64,
    pub centralizer: u64,
}

/// An exhaustively enumerated W(B_n) or W(D_n).
pub struct Weyl {
    pub ty: WeylType,
    pub n: usize,
    pub elements: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
}

impl Weyl {
    pub fn new(ty: WeylType, n: usize) -> Result<Weyl> {
        if n > MAX_N {
            return Err(Error::OrderExceedsCap {
                order: group_order(ty, n) as u128,
                cap: group_order(ty, MAX_N) as u128,
            });
        }
        let mut elements = Vec::with_capacity(group_order(ty, n) as usize);
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            for neg in 0..1u16 << n {
                let signs: Vec<i8> = (0..n)
                    .map(|i| if neg >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                let w = SignedPerm::new(&perm, &signs);
                if ty == WeylType::B || w.in_d() {
                    elements.push(w);
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        Ok(Weyl {
            ty,
            n,
            elements,
            index,
        })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, w: &SignedPerm) -> bool {
        self.index.contains_key(w)
    }

    pub fn generators(&self) -> Vec<SignedPerm> {
        let n = self.n;
        let mut gens: Vec<SignedPerm> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(i, i + 1);
                SignedPerm::new(&p, &vec![1; n])
            })
            .collect();
        let id: Vec<usize> = (0..n).collect();
        match self.ty {
            WeylType::B if n > 0 => {
                let mut s = vec![1; n];
                s[0] = -1;
                gens.push(SignedPerm::new(&id, &s));
            }
            WeylType::D if n > 1 => {
                let mut s = vec![1; n];
                s[0] = -1;
                s[1] = -1;
                gens.push(SignedPerm::new(&id, &s));
            }
            _ => {}
        }
        gens
    }

    /// Conjugacy classes by orbit computation, sorted by label.
    pub fn classes(&self) -> Vec<WeylClass> {
        let gens: Vec<(SignedPerm, SignedPerm)> = self
            .generators()
            .iter()
            .map(|g| (*g, g.inverse()))
            .collect();
        let mut class_of = vec![usize::MAX; self.elements.len()];
        let mut out = Vec::new();
        for i in 0..self.elements.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = out.len();
            class_of[i] = c;
            let mut stack = vec![i];
            let mut size = 0;
            while let Some(j) = stack.pop() {
                size += 1;
                let x = self.elements[j];
                for (g, gi) in &gens {
                    let k = self.index[&g.mul(&x).mul(gi)];
                    if class_of[k] == usize::MAX {
                        class_of[k] = c;
                        stack.push(k);
                    }
                }
            }
            let rep = self.elements[i];
            out.push(WeylClass {
                rep,
                label: rep.label(),
                size,
                centralizer: self.order() / size,
            });
        }
        out.sort_by(|a, b| a.label.cmp(&b.label).then(a.rep.cmp(&b.rep)));
        out
    }

    /// `|C_W(w)|` by direct count.
    pub fn centralizer_order(&self, w: &SignedPerm) -> u64 {
        self.elements
            .iter()
            .filter(|x| x.mul(w) == w.mul(x))
            .count() as u64
    }

    /// `|A \ W / B|` by orbit counting of `(a, b): w -> a w b^-1`.
    pub fn double_coset_count(&self, a_gens: &[SignedPerm], b_gens: &[SignedPerm]) -> Result<u64> {
        if let Some(g) = a_gens.iter().chain(b_gens).find(|g| !self.contains(g)) {
            return Err(Error::InvalidSpace(format!("{g:?} is not in W")));
        }
        let mut seen = vec![false; self.elements.len()];
        let mut count = 0;
        for i in 0..self.elements.len() {
            if seen[i] {
                continue;
            }
            count += 1;
            seen[i] = true;
            let mut stack = vec![i];
            while let Some(j) = stack.pop() {
                let x = self.elements[j];
                let next = a_gens
                    .iter()
                    .map(|a| a.mul(&x))
                    .chain(b_gens.iter().map(|b| x.mul(b)));
                for y in next {
                    let k = self.index[&y];
                    if !seen[k] {
                        seen[k] = true;
                        stack.push(k);
                    }
                }
            }
        }
        Ok(count)
    }

    /// `<1_A^W, 1_B^W>` from permutation character values; a second oracle
    /// for `double_coset_count`.
    pub fn induced_inner_product(&self, a: &[SignedPerm], b: &[SignedPerm]) -> u64 {
        let classes = self.classes();
        let gens: Vec<(SignedPerm, SignedPerm)> = self
            .generators()
            .iter()
            .map(|g| (*g, g.inverse()))
            .collect();
        let mut class_of: HashMap<SignedPerm, usize> = HashMap::new();
        for (c, cl) in classes.iter().enumerate() {
            let mut stack = vec![cl.rep];
            class_of.insert(cl.rep, c);
            while let Some(x) = stack.pop() {
                for (g, gi) in &gens {
                    let y = g.mul(&x).mul(gi);
                    if class_of.insert(y, c).is_none() {
                        stack.push(y);
                    }
                }
            }
        }
        let hits = |h: &[SignedPerm]| {
            let mut v = vec![0u64; classes.len()];
            for x in h {
                v[class_of[x]] += 1;
            }
            v
        };
        let (ha, hb) = (hits(a), hits(b));
        let mut num: u128 = 0;
        for (c, cl) in classes.iter().enumerate() {
            // pi_A(x) = |C(x)| |A ∩ x^W| / |A|
            let pa = cl.centralizer as u128 * ha[c] as u128;
            let pb = cl.centralizer as u128 * hb[c] as u128;
            num += cl.size as u128 * pa * pb;
        }
        let den = self.order() as u128 * a.len() as u128 * b.len() as u128;
        let (q, r) = num.div_rem(&den);
        assert_eq!(r, 0, "permutation character inner product is not integral");
        q as u64
    }

    /// Which classes of W(B_n) with `l = 0` split into two W(D_n)-classes,
    /// computed by orbits.
    pub fn d_splitting(n: usize) -> Result<BTreeMap<ClassLabel, bool>> {
        let d = Weyl::new(WeylType::D, n)?;
        let mut count: BTreeMap<ClassLabel, usize> = BTreeMap::new();
        for c in d.classes() {
            *count.entry(c.label).or_insert(0) += 1;
        }
        Ok(count.into_iter().map(|(l, c)| (l, c == 2)).collect())
    }
}

/// `S_m`: the permutation matrices.
pub fn sym_generators(m: usize) -> Vec<SignedPerm> {
    (0..m.saturating_sub(1))
        .map(|i| {
            let mut p: Vec<usize> = (0..m).collect();
            p.swap(i, i + 1);
            SignedPerm::new(&p, &vec![1; m])
        })
        .collect()
}

fn flip_first(m: usize) -> SignedPerm {
    let mut s = vec![1; m];
    if m > 0 {
        s[0] = -1;
    }
    SignedPerm::new(&(0..m).collect::<Vec<_>>(), &s)
}

/// `<1_{S_m}^W, 1_{S_m}^W>` in `W(B_m)` or `W(D_m)`.
pub fn self_norm(m: usize, ty: WeylType) -> Result<u64> {
    let w = Weyl::new(ty, m)?;
    let s = sym_generators(m);
    w.double_coset_count(&s, &s)
}

/// `<1_{W_1}^W, 1_{W_2}^W>` in `W(D_m)` with `W_1 = S_m` and
/// `W_2 = t W_1 t^-1`, `t = diag(-1, 1, .., 1)`.
pub fn cross_norm(m: usize) -> Result<u64> {
    let w = Weyl::new(WeylType::D, m)?;
    let s = sym_generators(m);
    let t = flip_first(m);
    let s2: Vec<SignedPerm> = s.iter().map(|x| t.mul(x).mul(&t)).collect();
    w.double_coset_count(&s, &s2)
}

/// Both subgroups of `cross_norm` as element lists.
pub fn levi_subgroups(m: usize) -> (Vec<SignedPerm>, Vec<SignedPerm>) {
    let s = sym_generators(m);
    let t = flip_first(m);
    let s2: Vec<SignedPerm> = s.iter().map(|x| t.mul(x).mul(&t)).collect();
    (closure(m, &s), closure(m, &s2))
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Class table as CSV: `label_d,label_e,size,centralizer,splits`.
pub fn class_table_csv(w: &Weyl) -> Result<String> {
    let split = if w.ty == WeylType::D {
        Weyl::d_splitting(w.n)?
    } else {
        BTreeMap::new()
    };
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["label_d", "label_e", "size", "centralizer", "splits"])
        .map_err(csv_err)?;
    for c in w.classes() {
        let s = split.get(&c.label).copied().unwrap_or(false);
        out.write_record([
            c.label.d_str(),
            c.label.e_str(),
            c.size.to_string(),
            c.centralizer.to_string(),
            s.to_string(),
        ])
        .map_err(csv_err)?;
    }
    String::from_utf8(
        out.into_inner()
            .map_err(|e| Error::Internal(e.to_string()))?,
    )
    .map_err(|e| Error::Internal(e.to_string()))
}

pub fn csv_err(e: csv::Error) -> Error {
    Error::Internal(e.to_string())
}
