//! On-disk cache of enumerated groups.
//!
//! `<key>.bin`: magic `STBG`, format version, `p`, `k`, `dim`, kind, element
//! count, then the sorted elements as little-endian `u128`.
//! `<key>.classes.csv`: `rep_encoding,size,order,semisimple,centralizer_order`.
//! `<key>.classmap`: the class index of every element as little-endian `u32`.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::{ClassData, ConjClass, GroupKind, MatGroup};
use crate::error::{Error, Result};
use crate::quadspace::QuadraticSpace;

const MAGIC: &[u8; 4] = b"STBG";
const VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct CacheKey {
    pub kind: GroupKind,
    pub p: u32,
    pub k: u32,
    pub dim: u32,
    form: String,
}

impl CacheKey {
    pub fn new(kind: GroupKind, space: &QuadraticSpace) -> CacheKey {
        let form: String = space
            .coef
            .e
            .iter()
            .map(|x| char::from_digit(x.0 % 36, 36).unwrap())
            .collect();
        CacheKey {
            kind,
            p: space.field.p(),
            k: space.field.k(),
            dim: space.dim as u32,
            form,
        }
    }

    fn stem(&self) -> String {
        format!(
            "{}_p{}k{}_n{}_{}",
            self.kind, self.p, self.k, self.dim, self.form
        )
    }

    fn path(&self, dir: &Path, ext: &str) -> PathBuf {
        dir.join(format!("{}.{ext}", self.stem()))
    }

    fn kind_byte(&self) -> u8 {
        self.kind as u8
    }
}

pub fn save_elements(dir: &Path, key: &CacheKey, elements: &[u128]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = key.path(dir, "bin.tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        w.write_all(MAGIC)?;
        for v in [VERSION, key.p, key.k, key.dim] {
            w.write_all(&v.to_le_bytes())?;
        }
        w.write_all(&[key.kind_byte(), 0, 0, 0])?;
        w.write_all(&(elements.len() as u64).to_le_bytes())?;
        for x in elements {
            w.write_all(&x.to_le_bytes())?;
        }
        w.flush()?;
    }
    fs::rename(tmp, key.path(dir, "bin"))?;
    Ok(())
}

fn corrupt(msg: &str) -> Error {
    Error::Io(std::io::Error::new(
        std::io::ErrorKind::InvalidData,
        msg.to_string(),
    ))
}

pub fn load_elements(dir: &Path, key: &CacheKey) -> Result<Option<Vec<u128>>> {
    let path = key.path(dir, "bin");
    if !path.exists() {
        return Ok(None);
    }
    let mut buf = Vec::new();
    fs::File::open(path)?.read_to_end(&mut buf)?;
    if buf.len() < 32 || &buf[..4] != MAGIC {
        return Err(corrupt("bad magic"));
    }
    let word = |i: usize| u32::from_le_bytes(buf[4 + 4 * i..8 + 4 * i].try_into().unwrap());
    if word(0) != VERSION
        || word(1) != key.p
        || word(2) != key.k
        || word(3) != key.dim
        || buf[20] != key.kind_byte()
    {
        return Err(corrupt("header mismatch"));
    }
    let count = u64::from_le_bytes(buf[24..32].try_into().unwrap()) as usize;
    if buf.len() != 32 + 16 * count {
        return Err(corrupt("truncated element list"));
    }
    let elements: Vec<u128> = buf[32..]
        .chunks_exact(16)
        .map(|c| u128::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if elements.windows(2).any(|w| w[0] >= w[1]) {
        return Err(corrupt("elements not sorted"));
    }
    Ok(Some(elements))
}

pub fn save_classes(dir: &Path, key: &CacheKey, g: &MatGroup) -> Result<()> {
    fs::create_dir_all(dir)?;
    let cd = g.class_data();
    let mut w = BufWriter::new(fs::File::create(key.path(dir, "classes.csv"))?);
    writeln!(w, "rep_encoding,size,order,semisimple,centralizer_order")?;
    for c in &cd.classes {
        writeln!(
            w,
            "{:x},{},{},{},{}",
            c.rep, c.size, c.order, c.semisimple, c.centralizer_order
        )?;
    }
    w.flush()?;
    let mut m = BufWriter::new(fs::File::create(key.path(dir, "classmap"))?);
    for &c in &cd.class_of {
        m.write_all(&c.to_le_bytes())?;
    }
    m.flush()?;
    Ok(())
}

pub fn load_classes(dir: &Path, key: &CacheKey, g: &MatGroup) -> Result<Option<ClassData>> {
    let csv = key.path(dir, "classes.csv");
    let map = key.path(dir, "classmap");
    if !csv.exists() || !map.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(csv)?;
    let mut classes = Vec::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(corrupt("bad class row"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| corrupt("bad number"));
        classes.push(ConjClass {
            rep: u128::from_str_radix(f[0], 16).map_err(|_| corrupt("bad encoding"))?,
            size: num(f[1])?,
            order: num(f[2])?,
            semisimple: f[3] == "true",
            centralizer_order: num(f[4])?,
            inverse: 0,
        });
    }
    let raw = fs::read(map)?;
    if raw.len() != 4 * g.elements.len() {
        return Err(corrupt("class map length"));
    }
    let class_of: Vec<u32> = raw
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let total: u64 = classes.iter().map(|c| c.size).sum();
    if total != g.order() || class_of.iter().any(|&c| c as usize >= classes.len()) {
        return Err(corrupt("class data inconsistent"));
    }
    for c in 0..classes.len() {
        let inv = g.packer.inverse(classes[c].rep);
        let i = g
            .index_of(inv)
            .ok_or_else(|| corrupt("class rep not in group"))?;
        classes[c].inverse = class_of[i] as usize;
    }
    Ok(Some(ClassData { classes, class_of }))
}

/// Writes the element list and class data of a group built on `space`.
pub fn store(dir: &Path, space: &QuadraticSpace, g: &MatGroup) -> Result<()> {
    let key = CacheKey::new(g.kind, space);
    save_elements(dir, &key, &g.elements)?;
    save_classes(dir, &key, g)
}
