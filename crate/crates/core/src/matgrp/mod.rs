//! Exhaustively enumerated matrix groups over small fields.
//!
//! Groups are closed from generators by breadth-first search over packed
//! matrices; conjugacy classes are orbits under conjugation by the
//! generators, each represented by its smallest packed encoding.

pub mod cache;
pub mod embed;
pub mod order;
pub mod pack;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Ratio;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::{self, Mat};
use crate::quadspace::{FormType, QuadraticSpace};
pub use order::{expected_order, p_part};
pub use pack::Packer;

/// Default enumeration cap.
pub const DEFAULT_MAX_ORDER: u128 = 20_000_000;

const SEED: u64 = 0x5eed_0f57;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    O,
    SO,
    Omega,
    Sp,
    GL,
    U,
    Torus,
    Sub,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::O => "O",
            GroupKind::SO => "SO",
            GroupKind::Omega => "Omega",
            GroupKind::Sp => "Sp",
            GroupKind::GL => "GL",
            GroupKind::U => "U",
            GroupKind::Torus => "T",
            GroupKind::Sub => "Sub",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "O" | "o" => GroupKind::O,
            "SO" | "so" => GroupKind::SO,
            "Omega" | "omega" | "Ω" => GroupKind::Omega,
            "Sp" | "sp" => GroupKind::Sp,
            _ => return Err(Error::Unsupported(format!("group kind {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub rep: u128,
    pub size: u64,
    pub order: u64,
    pub semisimple: bool,
    pub centralizer_order: u64,
    /// Index of the class of `rep^-1`.
    pub inverse: usize,
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjClass>,
    /// Class index of each element, aligned with `MatGroup::elements`.
    pub class_of: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_order: u128,
    pub cache_dir: Option<PathBuf>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_order: DEFAULT_MAX_ORDER,
            cache_dir: std::env::var_os("STB_CACHE_DIR").map(PathBuf::from),
        }
    }
}

impl BuildOptions {
    pub fn no_cache() -> Self {
        BuildOptions {
            max_order: DEFAULT_MAX_ORDER,
            cache_dir: None,
        }
    }
}

/// The invariant form a group preserves.
#[derive(Clone, Debug)]
pub enum Form {
    Quadratic(QuadraticSpace),
    Alternating(Mat),
    None,
}

pub struct MatGroup {
    pub label: String,
    pub kind: GroupKind,
    pub field: Field,
    pub n: usize,
    pub form: Form,
    pub packer: Packer,
    pub gens: Vec<u128>,
    /// Sorted packed elements.
    pub elements: Vec<u128>,
    classes: OnceLock<ClassData>,
    orth_basis: OnceLock<Vec<Vec<Fe>>>,
}

impl fmt::Debug for MatGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order())
    }
}

/// Closure of a generating set under right multiplication.
pub struct Enumerator<'a> {
    packer: &'a Packer,
    pub set: FxHashSet<u128>,
    gens: Vec<u128>,
    unpacked: Vec<[u8; pack::MAX_ENTRIES]>,
    cap: u128,
}

impl<'a> Enumerator<'a> {
    pub fn new(packer: &'a Packer, cap: u128) -> Self {
        let mut set = FxHashSet::default();
        set.insert(packer.identity());
        Enumerator {
            packer,
            set,
            gens: Vec::new(),
            unpacked: Vec::new(),
            cap,
        }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn gens(&self) -> &[u128] {
        &self.gens
    }

    /// Adds a generator and extends the closure; `false` if it was already
    /// in the group.
    pub fn add_generator(&mut self, g: u128) -> Result<bool> {
        if self.set.contains(&g) {
            return Ok(false);
        }
        let mut ub = [0u8; pack::MAX_ENTRIES];
        self.packer.unpack_into(g, &mut ub);
        self.gens.push(g);
        self.unpacked.push(ub);
        let start: Vec<u128> = self.set.iter().copied().collect();
        let mut frontier = self.expand(&start, std::slice::from_ref(&ub));
        while !frontier.is_empty() {
            let gens = self.unpacked.clone();
            frontier = self.expand(&frontier, &gens);
        }
        Ok(true)
    }

    fn expand(&mut self, from: &[u128], gens: &[[u8; pack::MAX_ENTRIES]]) -> Vec<u128> {
        let packer = self.packer;
        let products: Vec<u128> = from
            .par_chunks(4096)
            .flat_map_iter(|chunk| {
                let mut out = Vec::with_capacity(chunk.len() * gens.len());
                for &x in chunk {
                    for g in gens {
                        out.push(packer.mul_unpacked(x, g));
                    }
                }
                out
            })
            .collect();
        let mut next = Vec::new();
        for y in products {
            if self.set.insert(y) {
                next.push(y);
            }
        }
        next
    }

    pub fn check_cap(&self) -> Result<()> {
        if self.set.len() as u128 > self.cap {
            return Err(Error::OrderExceedsCap {
                order: self.set.len() as u128,
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub fn into_sorted(self) -> Vec<u128> {
        let mut v: Vec<u128> = self.set.into_iter().collect();
        v.par_sort_unstable();
        v
    }
}

/// `x -> x - (B(x, v) / Q(v)) v`, the reflection (orthogonal transvection in
/// characteristic 2) in an anisotropic vector.
pub fn reflection(space: &QuadraticSpace, v: &[Fe]) -> Mat {
    let f = &space.field;
    let n = space.dim;
    let qi = f.inv(space.value(v)).expect("anisotropic vector");
    let bv = space.gram().apply(f, v);
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = f.mul(f.mul(v[i], bv[j]), qi);
            m.set(i, j, f.sub(m.get(i, j), t));
        }
    }
    m
}

/// `x -> x + a J(x, v) v` for an alternating Gram matrix `J`.
pub fn symplectic_transvection(f: &Field, gram: &Mat, v: &[Fe], a: Fe) -> Mat {
    let n = gram.rows;
    let jv = gram.apply(f, v);
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = f.mul(a, f.mul(v[i], f.neg(jv[j])));
            m.set(i, j, f.add(m.get(i, j), t));
        }
    }
    m
}

/// The standard alternating form `sum x_{2i} y_{2i+1} - x_{2i+1} y_{2i}`.
pub fn standard_alternating(f: &Field, n: usize) -> Mat {
    let mut j = Mat::zeros(n, n);
    for i in 0..n / 2 {
        j.set(2 * i, 2 * i + 1, Fe::ONE);
        j.set(2 * i + 1, 2 * i, f.neg(Fe::ONE));
    }
    j
}

fn word(f: &Field, n: usize, mats: &[Mat]) -> Mat {
    mats.iter().fold(Mat::identity(n), |acc, m| acc.mul(f, m))
}

impl MatGroup {
    /// The group of the given kind on a nondegenerate quadratic space.
    pub fn orthogonal(
        space: &QuadraticSpace,
        kind: GroupKind,
        opts: &BuildOptions,
    ) -> Result<MatGroup> {
        if !space.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        let f = &space.field;
        let n = space.dim;
        let ty = space.form_type()?;
        let target = expected_order(kind, ty, n as u32, f.q() as u128)
            .ok_or_else(|| Error::Unsupported(format!("{kind} on a quadratic space")))?;
        if target > opts.max_order {
            return Err(Error::OrderExceedsCap {
                order: target,
                cap: opts.max_order,
            });
        }
        let packer = Packer::new(f, n)?;
        let label = format!("{kind}{n}{}({})", type_suffix(ty), f.q());
        let key = cache::CacheKey::new(kind, space);
        if let Some(dir) = &opts.cache_dir {
            match cache::load_elements(dir, &key) {
                Ok(Some(elements)) if elements.len() as u128 == target => {
                    let gens = generators_from_elements(&packer, &elements, opts.max_order)?;
                    let g = MatGroup::assemble(
                        label,
                        kind,
                        Form::Quadratic(space.clone()),
                        packer,
                        gens,
                        elements,
                    );
                    if let Ok(Some(cd)) = cache::load_classes(dir, &key, &g) {
                        let _ = g.classes.set(cd);
                    }
                    return Ok(g);
                }
                Ok(Some(_)) | Err(_) => {
                    log::warn!("discarding unusable cache entry for {label}");
                }
                Ok(None) => {}
            }
        }
        let even_q = f.p() == 2;
        if f.q() == 2 && n == 4 && ty == FormType::Plus {
            // reflections generate a subgroup of index 2 here
            let elements = brute_force_isometries(space, kind);
            let gens = generators_from_elements(&packer, &elements, opts.max_order)?;
            return Ok(MatGroup::assemble(
                label,
                kind,
                Form::Quadratic(space.clone()),
                packer,
                gens,
                elements,
            ));
        }
        let rad = space.radical();
        let aniso: Vec<Vec<Fe>> = linalg::projective_points(f, n)
            .into_iter()
            .filter(|v| !space.value(v).is_zero())
            .filter(|v| rad.is_empty() || !space.gram().apply(f, v).iter().all(|x| x.is_zero()))
            .collect();
        let refl: Vec<Mat> = aniso.iter().map(|v| reflection(space, v)).collect();
        let sq: Vec<bool> = aniso.iter().map(|v| f.is_square(space.value(v))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut en = Enumerator::new(&packer, opts.max_order);
        let mut misses = 0;
        while (en.len() as u128) < target {
            if refl.is_empty() || misses > 500 {
                return Err(Error::Internal(format!("could not generate {label}")));
            }
            let len = 2 * n.max(1);
            let mut idx: Vec<usize> = (0..len).map(|_| rng.random_range(0..refl.len())).collect();
            let allow_odd = match kind {
                GroupKind::O => true,
                GroupKind::SO => even_q,
                GroupKind::Omega => even_q && ty == FormType::Odd,
                _ => unreachable!(),
            };
            if allow_odd && rng.random_range(0..2) == 1 {
                idx.pop();
            }
            if kind == GroupKind::Omega && !even_q {
                let want = idx[..len - 1].iter().filter(|&&i| !sq[i]).count() % 2 == 1;
                let pool: Vec<usize> = (0..refl.len()).filter(|&i| !sq[i] == want).collect();
                if pool.is_empty() {
                    misses += 1;
                    continue;
                }
                idx[len - 1] = pool[rng.random_range(0..pool.len())];
            }
            let mats: Vec<Mat> = idx.iter().map(|&i| refl[i].clone()).collect();
            let g = packer.pack(&word(f, n, &mats));
            if en.add_generator(g)? {
                misses = 0;
            } else {
                misses += 1;
            }
            en.check_cap()?;
            if en.len() as u128 > target {
                return Err(Error::Internal(format!(
                    "{label} exceeds its closed-form order"
                )));
            }
        }
        let gens = en.gens().to_vec();
        let elements = en.into_sorted();
        let g = MatGroup::assemble(
            label,
            kind,
            Form::Quadratic(space.clone()),
            packer,
            gens,
            elements,
        );
        if let Some(dir) = &opts.cache_dir {
            if let Err(e) = cache::save_elements(dir, &key, &g.elements) {
                log::warn!("could not write cache: {e}");
            }
        }
        Ok(g)
    }

    /// `Sp_n(q)` on the standard alternating form.
    pub fn symplectic(f: &Field, n: usize, opts: &BuildOptions) -> Result<MatGroup> {
        if n % 2 == 1 {
            return Err(Error::InvalidSpace(
                "symplectic spaces have even dimension".into(),
            ));
        }
        let target = order::sp_order((n / 2) as u32, f.q() as u128);
        if target > opts.max_order {
            return Err(Error::OrderExceedsCap {
                order: target,
                cap: opts.max_order,
            });
        }
        let packer = Packer::new(f, n)?;
        let gram = standard_alternating(f, n);
        let vecs: Vec<Vec<Fe>> = linalg::projective_points(f, n);
        let tv: Vec<Mat> = vecs
            .iter()
            .flat_map(|v| {
                f.elements()
                    .skip(1)
                    .map(|a| symplectic_transvection(f, &gram, v, a))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut en = Enumerator::new(&packer, opts.max_order);
        let mut misses = 0;
        while (en.len() as u128) < target {
            if misses > 500 {
                return Err(Error::Internal("could not generate Sp".into()));
            }
            let len = rng.random_range(1..=2 * n);
            let mats: Vec<Mat> = (0..len)
                .map(|_| tv[rng.random_range(0..tv.len())].clone())
                .collect();
            let g = packer.pack(&word(f, n, &mats));
            if en.add_generator(g)? {
                misses = 0;
            } else {
                misses += 1;
            }
            en.check_cap()?;
        }
        if en.len() as u128 != target {
            return Err(Error::Internal("Sp exceeds its closed-form order".into()));
        }
        let gens = en.gens().to_vec();
        let elements = en.into_sorted();
        Ok(MatGroup::assemble(
            format!("Sp{n}({})", f.q()),
            GroupKind::Sp,
            Form::Alternating(gram),
            packer,
            gens,
            elements,
        ))
    }

    /// The closure of explicit generators.
    pub fn from_generators(
        label: &str,
        kind: GroupKind,
        f: &Field,
        n: usize,
        form: Form,
        gens: &[Mat],
        max_order: u128,
    ) -> Result<MatGroup> {
        let packer = Packer::new(f, n)?;
        let mut en = Enumerator::new(&packer, max_order);
        for g in gens {
            en.add_generator(packer.pack(g))?;
            en.check_cap()?;
        }
        let gens = en.gens().to_vec();
        let elements = en.into_sorted();
        Ok(MatGroup::assemble(
            label.to_string(),
            kind,
            form,
            packer,
            gens,
            elements,
        ))
    }

    /// The subgroup of elements satisfying `pred`, which must be a subgroup.
    pub fn subgroup(
        &self,
        label: &str,
        form: Form,
        pred: impl Fn(u128) -> bool,
    ) -> Result<MatGroup> {
        let elements: Vec<u128> = self.elements.iter().copied().filter(|&x| pred(x)).collect();
        let gens = generators_from_elements(&self.packer, &elements, self.order() as u128)?;
        Ok(MatGroup::assemble(
            label.to_string(),
            GroupKind::Sub,
            form,
            self.packer.clone(),
            gens,
            elements,
        ))
    }

    fn assemble(
        label: String,
        kind: GroupKind,
        form: Form,
        packer: Packer,
        gens: Vec<u128>,
        elements: Vec<u128>,
    ) -> MatGroup {
        MatGroup {
            label,
            kind,
            field: packer.field.clone(),
            n: packer.n,
            form,
            packer,
            gens,
            elements,
            classes: OnceLock::new(),
            orth_basis: OnceLock::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn space(&self) -> Option<&QuadraticSpace> {
        match &self.form {
            Form::Quadratic(s) => Some(s),
            _ => None,
        }
    }

    pub fn index_of(&self, x: u128) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn contains(&self, x: u128) -> bool {
        self.index_of(x).is_some()
    }

    pub fn pack(&self, m: &Mat) -> u128 {
        self.packer.pack(m)
    }

    pub fn unpack(&self, x: u128) -> Mat {
        self.packer.unpack(x)
    }

    pub fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| compute_classes(self))
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn class_of(&self, x: u128) -> Option<usize> {
        self.index_of(x)
            .map(|i| self.class_data().class_of[i] as usize)
    }

    pub fn class_of_mat(&self, m: &Mat) -> Option<usize> {
        self.class_of(self.pack(m))
    }

    /// A hash of the element set, used to tie class functions to groups.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.n.hash(&mut h);
        self.field.q().hash(&mut h);
        self.elements.len().hash(&mut h);
        for x in self
            .elements
            .iter()
            .step_by((self.elements.len() / 64).max(1))
        {
            x.hash(&mut h);
        }
        h.finish()
    }

    /// Semisimple and unipotent parts `(s, u)` with `g = s u = u s`.
    pub fn jordan(&self, g: u128) -> (u128, u128) {
        jordan(&self.packer, g)
    }

    /// Spinor norm (`+1`/`-1`) for odd `q`; `(-1)^Dickson` for even `q`.
    pub fn sign_character(&self, g: &Mat) -> i32 {
        let space = self.space().expect("orthogonal group");
        if self.field.p() == 2 {
            if dickson_invariant(space, g) == 0 {
                1
            } else {
                -1
            }
        } else {
            let basis = self.orth_basis.get_or_init(|| orthogonal_basis(space));
            spinor_norm_with(space, basis, g)
        }
    }
}

fn brute_force_isometries(space: &QuadraticSpace, kind: GroupKind) -> Vec<u128> {
    let f = &space.field;
    let n = space.dim;
    let packer = Packer::new(f, n).unwrap();
    let mut out: Vec<u128> = linalg::all_vectors(f, n * n)
        .map(|e| Mat {
            rows: n,
            cols: n,
            e,
        })
        .filter(|m| space.preserves(m) && m.rank(f) == n)
        .filter(|m| kind != GroupKind::Omega || dickson_invariant(space, m) == 0)
        .map(|m| packer.pack(&m))
        .collect();
    out.sort_unstable();
    out
}

fn type_suffix(ty: FormType) -> &'static str {
    match ty {
        FormType::Plus => "+",
        FormType::Minus => "-",
        FormType::Odd => "",
    }
}

/// A generating set for a known subgroup given by its sorted elements.
pub fn generators_from_elements(
    packer: &Packer,
    elements: &[u128],
    cap: u128,
) -> Result<Vec<u128>> {
    let mut en = Enumerator::new(packer, cap.max(elements.len() as u128));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut tries = 0;
    while en.len() < elements.len() {
        let x = if tries < 64 {
            elements[rng.random_range(0..elements.len())]
        } else {
            *elements.iter().find(|x| !en.set.contains(x)).unwrap()
        };
        tries += 1;
        en.add_generator(x)?;
        if en.len() > elements.len() {
            return Err(Error::Internal("element set is not closed".into()));
        }
    }
    Ok(en.gens().to_vec())
}

fn compute_classes(g: &MatGroup) -> ClassData {
    let p = &g.packer;
    let n = g.elements.len();
    let gens: Vec<(u128, u128)> = g.gens.iter().map(|&x| (x, p.inverse(x))).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    let mut stack = Vec::new();
    for i in 0..n {
        if class_of[i] != u32::MAX {
            continue;
        }
        let c = classes.len() as u32;
        class_of[i] = c;
        stack.push(i);
        let mut size = 0u64;
        while let Some(j) = stack.pop() {
            size += 1;
            let x = g.elements[j];
            for &(s, si) in &gens {
                let y = p.mul(p.mul(s, x), si);
                let k = g.index_of(y).expect("group is closed under conjugation");
                if class_of[k] == u32::MAX {
                    class_of[k] = c;
                    stack.push(k);
                }
            }
        }
        let rep = g.elements[i];
        let order = p.order(rep);
        classes.push(ConjClass {
            rep,
            size,
            order,
            semisimple: !order.is_multiple_of(g.field.p() as u64),
            centralizer_order: n as u64 / size,
            inverse: 0,
        });
    }
    for c in 0..classes.len() {
        let inv = p.inverse(classes[c].rep);
        let k = g.index_of(inv).unwrap();
        classes[c].inverse = class_of[k] as usize;
    }
    ClassData { classes, class_of }
}

pub fn jordan(p: &Packer, g: u128) -> (u128, u128) {
    let n = p.order(g);
    let ch = p.field.p() as u64;
    let mut pa = 1;
    while n.is_multiple_of(pa * ch) {
        pa *= ch;
    }
    let m = n / pa;
    let e = i128::extended_gcd(&(pa as i128), &(m as i128));
    let (a, b) = (e.x, e.y);
    let ni = n as i128;
    let es = ((a * pa as i128) % ni + ni) % ni;
    let eu = ((b * m as i128) % ni + ni) % ni;
    (p.pow(g, es as u64), p.pow(g, eu as u64))
}

/// An orthogonal basis of anisotropic vectors, for odd `q`.
pub fn orthogonal_basis(space: &QuadraticSpace) -> Vec<Vec<Fe>> {
    let f = &space.field;
    let n = space.dim;
    let mut current: Vec<Vec<Fe>> = Mat::identity(n).row_vecs();
    let mut out = Vec::new();
    while !current.is_empty() {
        let m = current.len();
        let v = linalg::projective_points(f, m)
            .into_iter()
            .map(|c| {
                c.iter()
                    .zip(&current)
                    .fold(vec![Fe::ZERO; n], |acc, (ci, b)| {
                        linalg::axpy(f, *ci, b, &acc)
                    })
            })
            .find(|v| !space.value(v).is_zero())
            .expect("nondegenerate space has anisotropic vectors");
        let g = space.gram();
        let bv = g.apply(f, &v);
        let sys = Mat::from_rows(&[current.iter().map(|b| linalg::dot(f, b, &bv)).collect()]);
        current = sys
            .kernel(f)
            .iter()
            .map(|k| {
                k.iter()
                    .zip(&current)
                    .fold(vec![Fe::ZERO; n], |acc, (ci, b)| {
                        linalg::axpy(f, *ci, b, &acc)
                    })
            })
            .collect();
        out.push(v);
    }
    out
}

/// Spinor norm by greedy factorization into reflections along an
/// orthogonal basis.
pub fn spinor_norm(space: &QuadraticSpace, g: &Mat) -> i32 {
    spinor_norm_with(space, &orthogonal_basis(space), g)
}

fn spinor_norm_with(space: &QuadraticSpace, basis: &[Vec<Fe>], g: &Mat) -> i32 {
    let f = &space.field;
    let mut h = g.clone();
    let mut prod = Fe::ONE;
    for b in basis {
        let y = h.apply(f, b);
        if &y == b {
            continue;
        }
        let d: Vec<Fe> = y.iter().zip(b).map(|(&a, &c)| f.sub(a, c)).collect();
        if !space.value(&d).is_zero() {
            prod = f.mul(prod, space.value(&d));
            h = reflection(space, &d).mul(f, &h);
        } else {
            let s: Vec<Fe> = y.iter().zip(b).map(|(&a, &c)| f.add(a, c)).collect();
            prod = f.mul(prod, f.mul(space.value(&s), space.value(b)));
            h = reflection(space, b).mul(f, &reflection(space, &s).mul(f, &h));
        }
    }
    debug_assert!(
        h.is_identity(),
        "reflection factorization did not terminate at 1"
    );
    f.square_class(prod)
}

pub fn dickson_invariant(space: &QuadraticSpace, g: &Mat) -> u32 {
    (g.shift(&space.field, Fe::ONE).rank(&space.field) % 2) as u32
}

/// A rational-valued class function on an enumerated group.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub group: u64,
    pub values: Vec<Ratio<i128>>,
}

impl ClassFunction {
    pub fn from_fn(g: &MatGroup, f: impl Fn(usize, &ConjClass) -> Ratio<i128>) -> ClassFunction {
        ClassFunction {
            group: g.fingerprint(),
            values: g
                .classes()
                .iter()
                .enumerate()
                .map(|(i, c)| f(i, c))
                .collect(),
        }
    }

    pub fn from_ints(g: &MatGroup, f: impl Fn(usize, &ConjClass) -> i128) -> ClassFunction {
        Self::from_fn(g, |i, c| Ratio::from_integer(f(i, c)))
    }

    pub fn trivial(g: &MatGroup) -> ClassFunction {
        Self::from_ints(g, |_, _| 1)
    }

    pub fn mul(&self, o: &ClassFunction) -> Result<ClassFunction> {
        if self.group != o.group {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            group: self.group,
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn value_at(&self, g: &MatGroup, x: u128) -> Option<Ratio<i128>> {
        g.class_of(x).map(|c| self.values[c])
    }
}

/// `(1/|G|) sum size * f1(rep) * f2(rep^-1)`.
pub fn inner_product(g: &MatGroup, f1: &ClassFunction, f2: &ClassFunction) -> Result<Ratio<i128>> {
    let fp = g.fingerprint();
    if f1.group != fp || f2.group != fp {
        return Err(Error::GroupMismatch);
    }
    let mut acc = Ratio::from_integer(0i128);
    for (i, c) in g.classes().iter().enumerate() {
        acc += f1.values[i] * f2.values[c.inverse] * Ratio::from_integer(c.size as i128);
    }
    Ok(acc / Ratio::from_integer(g.order() as i128))
}
