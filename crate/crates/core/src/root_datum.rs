//! Split root data on the ambient lattice `Z^n`, their root systems and
//! Weyl groups.
//!
//! Roots live in the character lattice `X = Z^n`, coroots in the dual lattice
//! `Z^n`, and the pairing is the standard dot product. Presets choose an
//! embedding: `GLn` uses the ε-basis, the simply connected types use the
//! fundamental weight basis (simple roots are the rows of the Cartan matrix,
//! simple coroots are the unit vectors) and `PGL2` is the adjoint `A1` with
//! `X = Zα`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational, Scalar};
use crate::weight::Weight;

/// Order of `W(E6)`; the default enumeration cap.
pub const DEFAULT_WEYL_CAP: usize = 51840;

/// Square integer matrix, row-major, acting on column vectors of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn apply_scalars(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let m = self.get(i, j);
                    if m != 0 {
                        acc += &x.scale_int(m);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

/// An element of the Weyl group, carried as a word in the simple
/// reflections together with its matrix on `X`. Equality is by matrix.
#[derive(Clone)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: IntMatrix,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            matrix: IntMatrix::identity(rank),
        }
    }

    /// 0-based indices of simple reflections, leftmost factor first.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.matrix.dim())
    }

    /// `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self, rd: &RootDatum) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        rd.element_from_word(&word).expect("word indices already validated")
    }

    pub fn act(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply_scalars(v)
    }

    pub fn act_int(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.apply(v)
    }

    /// `(-1)^{ℓ(w)}` read off the word parity.
    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// JSON form `{"word": [..]}` with 1-based reflection indices.
impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            word: Vec<usize>,
        }
        Out {
            word: self.word.iter().map(|i| i + 1).collect(),
        }
        .serialize(s)
    }
}

/// Input form of a Weyl element: `"e"`, `"w0"` or `{"word": [1-based ..]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylSpec {
    Identity,
    Longest,
    Word(Vec<usize>),
}

impl<'de> Deserialize<'de> for WeylSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Word { word: Vec<usize> },
            Bare(Vec<usize>),
        }
        let word = match Raw::deserialize(d)? {
            Raw::Name(n) => {
                return match n.as_str() {
                    "e" | "id" => Ok(WeylSpec::Identity),
                    "w0" | "longest" => Ok(WeylSpec::Longest),
                    other => Err(de::Error::custom(format!("unknown Weyl element `{other}`"))),
                }
            }
            Raw::Word { word } | Raw::Bare(word) => word,
        };
        if word.contains(&0) {
            return Err(de::Error::custom("Weyl words use 1-based indices"));
        }
        Ok(WeylSpec::Word(word.into_iter().map(|i| i - 1).collect()))
    }
}

/// A root with its coroot and its coordinates in the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub vector: Vec<i64>,
    pub coroot: Vec<i64>,
    pub simple_coords: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.simple_coords.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

/// The full enumeration of `W`, breadth-first so every word is reduced.
#[derive(Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    longest: usize,
}

impl WeylGroup {
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn longest(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    /// The enumerated element (with reduced word) having this matrix.
    pub fn canonical(&self, m: &IntMatrix) -> Option<&WeylElement> {
        self.index.get(m).map(|&i| &self.elements[i])
    }
}

/// How a root datum is requested: a preset name or explicit simple data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Preset {
        preset: String,
    },
    Explicit {
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    },
}

pub struct RootDatum {
    name: Option<String>,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    // positive roots first, in order of height, then their negatives
    roots: Vec<Root>,
    n_positive: usize,
    root_index: HashMap<Vec<i64>, usize>,
    two_rho: Vec<i64>,
    weyl_cap: usize,
    weyl: OnceLock<Result<Arc<WeylGroup>>>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("name", &self.name)
            .field("rank", &self.rank)
            .field("simple_roots", &self.simple_roots)
            .field("simple_coroots", &self.simple_coroots)
            .finish()
    }
}

impl Clone for RootDatum {
    fn clone(&self) -> Self {
        RootDatum {
            name: self.name.clone(),
            rank: self.rank,
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
            cartan: self.cartan.clone(),
            cartan_inv: self.cartan_inv.clone(),
            roots: self.roots.clone(),
            n_positive: self.n_positive,
            root_index: self.root_index.clone(),
            two_rho: self.two_rho.clone(),
            weyl_cap: self.weyl_cap,
            weyl: self.weyl.clone(),
        }
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cartan_matrix(kind: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::UnknownPreset(format!("{kind}{n}"));
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
        c[i][j] = aij;
        c[j][i] = aji;
    };
    match kind {
        'A' if n >= 1 => {
            for i in 0..n.saturating_sub(1) {
                link(&mut c, i, i + 1, -1, -1);
            }
        }
        'B' if n >= 2 => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1, -1, -1);
            }
            link(&mut c, n - 2, n - 1, -2, -1);
        }
        'C' if n >= 2 => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1, -1, -1);
            }
            link(&mut c, n - 2, n - 1, -1, -2);
        }
        'D' if n >= 3 => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1, -1, -1);
            }
            link(&mut c, n - 3, n - 1, -1, -1);
        }
        'E' if (6..=8).contains(&n) => {
            // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4
            link(&mut c, 0, 2, -1, -1);
            link(&mut c, 1, 3, -1, -1);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1, -1, -1);
            }
        }
        'F' if n == 4 => {
            link(&mut c, 0, 1, -1, -1);
            link(&mut c, 1, 2, -2, -1);
            link(&mut c, 2, 3, -1, -1);
        }
        'G' if n == 2 => {
            link(&mut c, 0, 1, -1, -3);
        }
        _ => return Err(bad()),
    }
    Ok(c)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Determinant by fraction-free rational elimination.
#[allow(clippy::needless_range_loop)]
fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for k in col..n {
                let sub = &f * &a[col][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

#[allow(clippy::needless_range_loop)]
fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| int(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..2 * n {
                let sub = &f * &a[col][k];
                a[r][k] -= sub;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Finite type test: diagonal 2, non-positive symmetric-zero off-diagonal,
/// and every principal minor positive.
#[allow(clippy::needless_range_loop)]
fn validate_cartan(c: &[Vec<i64>]) -> Result<()> {
    let r = c.len();
    for i in 0..r {
        if c[i][i] != 2 {
            return Err(Error::InvalidCartan(format!(
                "diagonal entry <a{0}, a{0}^v> = {1}, expected 2",
                i + 1,
                c[i][i]
            )));
        }
        for j in 0..r {
            if i == j {
                continue;
            }
            if c[i][j] > 0 {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entry ({}, {}) = {} is positive",
                    i + 1,
                    j + 1,
                    c[i][j]
                )));
            }
            if (c[i][j] == 0) != (c[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "entries ({0}, {1}) and ({1}, {0}) must vanish together",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if r > 20 {
        return Err(Error::InvalidCartan("semisimple rank above 20 is not supported".into()));
    }
    for mask in 1u32..(1u32 << r) {
        let idx: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| int(c[i][j])).collect())
            .collect();
        if determinant(&sub) <= Rational::zero() {
            return Err(Error::InvalidCartan(format!(
                "principal minor on simple roots {:?} is not positive (not of finite type)",
                idx.iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
    }
    Ok(())
}

impl RootDatum {
    pub fn from_spec(spec: &DatumSpec) -> Result<Self> {
        match spec {
            DatumSpec::Preset { preset } => Self::preset(preset),
            DatumSpec::Explicit {
                rank,
                simple_roots,
                simple_coroots,
            } => Self::new(*rank, simple_roots.clone(), simple_coroots.clone(), None),
        }
    }

    /// Presets: `GLn`, `SLn`, `PGL2`, and simply connected `An`, `Bn`, `Cn`,
    /// `Dn`, `E6`–`E8`, `F4`, `G2`.
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_string());
        let parse_n = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        if name == "PGL2" {
            return Self::new(1, vec![vec![1]], vec![vec![2]], Some(name));
        }
        if let Some(n) = name.strip_prefix("GL") {
            let n = parse_n(n)?;
            if n == 0 {
                return Err(unknown());
            }
            let roots: Vec<Vec<i64>> = (0..n - 1)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    v
                })
                .collect();
            return Self::new(n, roots.clone(), roots, Some(name));
        }
        if let Some(n) = name.strip_prefix("SL") {
            let n = parse_n(n)?;
            if n < 2 {
                return Err(unknown());
            }
            return Self::simply_connected('A', n - 1, name);
        }
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(unknown)?;
        let n = parse_n(chars.as_str())?;
        Self::simply_connected(kind, n, name)
    }

    fn simply_connected(kind: char, n: usize, name: &str) -> Result<Self> {
        let c = cartan_matrix(kind, n).map_err(|_| Error::UnknownPreset(name.to_string()))?;
        let coroots = (0..n).map(|i| unit(n, i)).collect();
        Self::new(n, c, coroots, Some(name))
    }

    pub fn new(
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        name: Option<&str>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::RankMismatch("rank must be positive".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::RankMismatch(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != rank {
                return Err(Error::RankMismatch(format!(
                    "vector of length {} in a datum of rank {rank}",
                    v.len()
                )));
            }
        }
        let r = simple_roots.len();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| dot(&simple_roots[i], &simple_coroots[j])).collect())
            .collect();
        validate_cartan(&cartan)?;
        let cartan_inv = inverse(&cartan).ok_or_else(|| Error::InvalidCartan("singular".into()))?;

        let (roots, n_positive) = Self::close_roots(&simple_roots, &simple_coroots, &cartan)?;
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.vector.clone(), i))
            .collect();
        let mut two_rho = vec![0; rank];
        for root in &roots[..n_positive] {
            for (acc, x) in two_rho.iter_mut().zip(&root.vector) {
                *acc += x;
            }
        }
        Ok(RootDatum {
            name: name.map(str::to_string),
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            cartan_inv,
            roots,
            n_positive,
            root_index,
            two_rho,
            weyl_cap: DEFAULT_WEYL_CAP,
            weyl: OnceLock::new(),
        })
    }

    /// Orbit of the simple (root, coroot) pairs under the simple reflections.
    fn close_roots(
        simple_roots: &[Vec<i64>],
        simple_coroots: &[Vec<i64>],
        cartan: &[Vec<i64>],
    ) -> Result<(Vec<Root>, usize)> {
        let r = simple_roots.len();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut all: Vec<Root> = Vec::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..r {
            let root = Root {
                vector: simple_roots[i].clone(),
                coroot: simple_coroots[i].clone(),
                simple_coords: unit(r, i),
            };
            if seen.insert(root.simple_coords.clone()) {
                queue.push_back(root);
            }
        }
        while let Some(root) = queue.pop_front() {
            for i in 0..r {
                // s_i(β) = β - <β, α_i^v> α_i ; s_i(β^v) = β^v - <α_i, β^v> α_i^v
                let k: i64 = (0..r).map(|j| root.simple_coords[j] * cartan[j][i]).sum();
                let kv = dot(&simple_roots[i], &root.coroot);
                let mut coords = root.simple_coords.clone();
                coords[i] -= k;
                if seen.contains(&coords) {
                    continue;
                }
                let vector = root
                    .vector
                    .iter()
                    .zip(&simple_roots[i])
                    .map(|(b, a)| b - k * a)
                    .collect();
                let coroot = root
                    .coroot
                    .iter()
                    .zip(&simple_coroots[i])
                    .map(|(b, a)| b - kv * a)
                    .collect();
                seen.insert(coords.clone());
                let next = Root {
                    vector,
                    coroot,
                    simple_coords: coords,
                };
                queue.push_back(next);
                if seen.len() > 100_000 {
                    return Err(Error::InvalidCartan("root closure does not terminate".into()));
                }
            }
            all.push(root);
        }
        let (mut pos, neg): (Vec<Root>, Vec<Root>) = all.into_iter().partition(Root::is_positive);
        pos.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.simple_coords.cmp(&a.simple_coords))
        });
        let negs: Vec<Root> = pos
            .iter()
            .map(|p| Root {
                vector: p.vector.iter().map(|x| -x).collect(),
                coroot: p.coroot.iter().map(|x| -x).collect(),
                simple_coords: p.simple_coords.iter().map(|x| -x).collect(),
            })
            .collect();
        debug_assert_eq!(negs.len(), neg.len());
        let n_pos = pos.len();
        pos.extend(negs);
        Ok((pos, n_pos))
    }

    /// Replaces the enumeration cap (resets the cached group).
    pub fn with_weyl_cap(mut self, cap: usize) -> Self {
        self.weyl_cap = cap;
        self.weyl = OnceLock::new();
        self
    }

    pub fn weyl_cap(&self) -> usize {
        self.weyl_cap
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// `cartan()[i][j] = <α_i, α_j^v>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_positive]
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    pub fn is_positive_root_index(&self, i: usize) -> bool {
        i < self.n_positive
    }

    /// `2ρ` as an integer vector.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn rho(&self) -> Weight {
        Weight::new(
            self.two_rho
                .iter()
                .map(|&x| Scalar::from(BigRational::new(x.into(), 2.into())))
                .collect(),
        )
    }

    /// Bilinear extension of the lattice pairing to scalar coordinates.
    pub fn pairing(&self, w: &Weight, coroot: &[i64]) -> Scalar {
        let mut acc = Scalar::zero();
        for (x, &c) in w.coords().iter().zip(coroot) {
            if c != 0 {
                acc += &x.scale_int(c);
            }
        }
        acc
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch(format!(
                "weight of length {} for a datum of rank {}",
                w.rank(),
                self.rank
            )));
        }
        Ok(())
    }

    pub fn simple_reflection(&self, i: usize) -> IntMatrix {
        let n = self.rank;
        let mut m = IntMatrix::identity(n);
        // x -> x - <x, α_i^v> α_i
        for r in 0..n {
            for c in 0..n {
                m.data[r * n + c] -= self.simple_roots[i][r] * self.simple_coroots[i][c];
            }
        }
        m
    }

    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut matrix = IntMatrix::identity(self.rank);
        for &i in word {
            if i >= self.semisimple_rank() {
                return Err(Error::InvalidWord(format!(
                    "reflection index {} out of range 1..={}",
                    i + 1,
                    self.semisimple_rank()
                )));
            }
            matrix = matrix.mul(&self.simple_reflection(i));
        }
        Ok(WeylElement {
            word: word.to_vec(),
            matrix,
        })
    }

    pub fn resolve(&self, spec: &WeylSpec) -> Result<WeylElement> {
        match spec {
            WeylSpec::Identity => Ok(WeylElement::identity(self.rank)),
            WeylSpec::Longest => Ok(self.weyl_group()?.longest().clone()),
            WeylSpec::Word(w) => {
                let e = self.element_from_word(w)?;
                // prefer the reduced word when the group is available
                Ok(match self.weyl_group() {
                    Ok(g) => g.canonical(e.matrix()).cloned().unwrap_or(e),
                    Err(_) => e,
                })
            }
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots()
            .iter()
            .filter(|r| {
                let img = w.act_int(&r.vector);
                let i = self.root_index(&img).expect("W permutes the roots");
                !self.is_positive_root_index(i)
            })
            .count()
    }

    /// Breadth-first enumeration of `W`, memoized per datum.
    pub fn weyl_group(&self) -> Result<Arc<WeylGroup>> {
        self.weyl
            .get_or_init(|| self.enumerate_weyl().map(Arc::new))
            .clone()
    }

    fn enumerate_weyl(&self) -> Result<WeylGroup> {
        let gens: Vec<IntMatrix> = (0..self.semisimple_rank())
            .map(|i| self.simple_reflection(i))
            .collect();
        let id = WeylElement::identity(self.rank);
        let mut index = HashMap::new();
        index.insert(id.matrix.clone(), 0usize);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = g.mul(&elements[head].matrix);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= self.weyl_cap {
                    return Err(Error::GroupTooLarge { cap: self.weyl_cap });
                }
                let mut word = Vec::with_capacity(elements[head].word.len() + 1);
                word.push(i);
                word.extend_from_slice(&elements[head].word);
                index.insert(m.clone(), elements.len());
                elements.push(WeylElement { word, matrix: m });
            }
            head += 1;
        }
        let longest = elements.len() - 1;
        Ok(WeylGroup {
            elements,
            index,
            longest,
        })
    }

    /// Coordinates of a rational vector in the simple roots, if it lies in
    /// their rational span.
    pub fn root_coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let r = self.semisimple_rank();
        let p: Vec<Rational> = self
            .simple_coroots
            .iter()
            .map(|c| v.iter().zip(c).map(|(x, &ci)| x * int(ci)).sum())
            .collect();
        // c^T C = p^T
        let c: Vec<Rational> = (0..r)
            .map(|i| (0..r).map(|j| &p[j] * &self.cartan_inv[j][i]).sum())
            .collect();
        let mut back = vec![Rational::zero(); self.rank];
        for (ci, root) in c.iter().zip(&self.simple_roots) {
            for (b, &a) in back.iter_mut().zip(root) {
                *b += ci * int(a);
            }
        }
        (back.as_slice() == v).then_some(c)
    }

    /// Membership in the root lattice `Λ_r`.
    pub fn in_root_lattice(&self, v: &Weight) -> bool {
        let Some(rats) = v.rational_coords() else {
            return false;
        };
        match self.root_coords(&rats) {
            Some(c) => c.iter().all(|x| x.is_integer()),
            None => false,
        }
    }

    /// Integer simple-root coordinates of an integer vector in `Λ_r`.
    pub fn root_coords_int(&self, v: &[i64]) -> Option<Vec<i64>> {
        let rats: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        let c = self.root_coords(&rats)?;
        c.iter()
            .map(|x| {
                x.is_integer()
                    .then(|| i64::try_from(x.to_integer()).ok())
                    .flatten()
            })
            .collect()
    }
}
