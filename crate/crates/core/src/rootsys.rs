//! Root systems of the compact simple Lie groups.
//!
//! Roots are integer coefficient vectors over the simple roots. The Gram
//! matrix is normalized so that long roots have squared length 2, and all
//! root, weight and Gram computations are exact.
//!
//! Node numbering follows Bourbaki for every family except G₂, where α₁ is
//! the long simple root:
//!
//! | family | numbering |
//! |--------|-----------|
//! | A_ℓ | chain α₁ – … – α_ℓ |
//! | B_ℓ | chain, α_ℓ short |
//! | C_ℓ | chain, α_ℓ long |
//! | D_ℓ | chain α₁ – … – α_{ℓ−2}, which branches to α_{ℓ−1} and α_ℓ |
//! | E_ℓ | chain α₁ – α₃ – α₄ – … – α_ℓ, with α₂ attached to α₄ |
//! | F₄ | chain, α₁ and α₂ long |
//! | G₂ | α₁ long, α₂ short, highest root 2α₁+3α₂ |

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::rational::{q, qf, Q};

/// Largest rank for which the Weyl group is enumerated.
pub const WEYL_RANK_LIMIT: usize = 6;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid rank {rank} for family {family:?}")]
    InvalidRank { family: Family, rank: usize },
    #[error("cannot parse group type `{0}`")]
    Parse(String),
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{0} is not a root of this system")]
    NotARoot(Root),
    #[error("Weyl group enumeration is limited to rank <= {WEYL_RANK_LIMIT}, got rank {0}")]
    WeylGuard(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupType {
    family: Family,
    rank: usize,
}

impl GroupType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSystemError::InvalidRank { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for GroupType {
    type Err = RootSystemError;

    /// Accepts Cartan labels ("B3", "G2") and the classical aliases
    /// SU(n), SO(n), Sp(n).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || RootSystemError::Parse(s.to_string());
        let upper = t.to_ascii_uppercase();
        let alias = |prefix: &str| -> Option<usize> {
            upper
                .strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?
                .parse()
                .ok()
        };
        if let Some(n) = alias("SU") {
            return GroupType::new(Family::A, n.checked_sub(1).ok_or_else(err)?);
        }
        if let Some(n) = alias("SO") {
            return if n % 2 == 1 {
                GroupType::new(Family::B, n / 2)
            } else {
                GroupType::new(Family::D, n / 2)
            };
        }
        if let Some(n) = alias("SP") {
            return GroupType::new(Family::C, n);
        }
        let mut chars = upper.chars();
        let family = match chars.next().ok_or_else(err)? {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        GroupType::new(family, rank)
    }
}

/// A root (or any integer vector) written over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.0, "α")
    }
}

/// Writes `c₁·sym1 + c₂·sym2 + …` with 1-based symbol indices.
pub(crate) fn write_combination(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[i64],
    sym: &str,
) -> fmt::Result {
    write_labelled_combination(f, coeffs.iter().enumerate().map(|(i, &c)| (i + 1, c)), sym)
}

pub(crate) fn write_labelled_combination(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, i64)>,
    sym: &str,
) -> fmt::Result {
    let mut first = true;
    for (label, c) in terms {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if first {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        if mag == 1 {
            write!(f, "{sign}{sym}{label}")?;
        } else {
            write!(f, "{sign}{mag}{sym}{label}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A Weyl group element, stored as the images of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    images: Vec<Root>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            images: (0..rank).map(|i| Root::simple(rank, i)).collect(),
            word: Vec::new(),
        }
    }

    pub fn images(&self) -> &[Root] {
        &self.images
    }

    /// Reduced word as 0-based simple reflection indices; the leftmost entry acts last.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, v: &Root) -> Root {
        let rank = self.images.len();
        let mut out = vec![0i64; rank];
        for (c, img) in v.0.iter().zip(&self.images) {
            for (o, x) in out.iter_mut().zip(&img.0) {
                *o += c * x;
            }
        }
        Root(out)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join("∘"))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    group: GroupType,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<Q>>,
    positive_roots: Vec<Root>,
    highest_root: Root,
    fundamental_weights: Vec<Vec<Q>>,
    index: HashMap<Root, usize>,
}

/// Squared lengths of the simple roots and the edges of the Dynkin diagram
/// (0-based). Adjacent simple roots have inner product −max(|α_i|², |α_j|²)/2.
fn dynkin(group: GroupType) -> (Vec<Q>, Vec<(usize, usize)>) {
    let l = group.rank;
    let chain = |n: usize| -> Vec<(usize, usize)> {
        (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
    };
    match group.family {
        Family::A => (vec![q(2); l], chain(l)),
        Family::B => {
            let mut len = vec![q(2); l];
            len[l - 1] = q(1);
            (len, chain(l))
        }
        Family::C => {
            let mut len = vec![q(1); l];
            len[l - 1] = q(2);
            (len, chain(l))
        }
        Family::D => {
            let mut edges = chain(l - 1);
            edges.push((l - 3, l - 1));
            (vec![q(2); l], edges)
        }
        Family::E => {
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..l - 1).map(|i| (i, i + 1)));
            (vec![q(2); l], edges)
        }
        Family::F => (vec![q(2), q(2), q(1), q(1)], chain(4)),
        Family::G => (vec![q(2), qf(2, 3)], chain(2)),
    }
}

pub fn build_root_system(group: GroupType) -> RootSystem {
    let l = group.rank;
    let (lengths, edges) = dynkin(group);
    let mut gram = vec![vec![q(0); l]; l];
    for (i, len) in lengths.into_iter().enumerate() {
        gram[i][i] = len;
    }
    for (i, j) in edges {
        let bond = -std::cmp::max(gram[i][i].clone(), gram[j][j].clone()) / q(2);
        gram[i][j] = bond.clone();
        gram[j][i] = bond;
    }
    let cartan: Vec<Vec<i64>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let a = q(2) * &gram[i][j] / &gram[j][j];
                    assert!(a.is_integer(), "non-integral Cartan entry");
                    a.to_integer().to_i64().expect("small Cartan entry")
                })
                .collect()
        })
        .collect();

    let positive_roots = generate_positive_roots(&cartan);
    let highest_root = positive_roots
        .iter()
        .max_by_key(|r| r.height())
        .cloned()
        .expect("nonempty root system");

    let cartan_q: Vec<Vec<Q>> = cartan
        .iter()
        .map(|r| r.iter().map(|&a| q(a)).collect())
        .collect();
    let inv = linalg::inverse(&cartan_q).expect("Cartan matrix is invertible");
    // α_i = Σ_j A_ij Λ_j, so Λ = A⁻¹ α.
    let fundamental_weights = inv;

    let index = positive_roots
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, r)| (r, i))
        .collect();
    RootSystem {
        group,
        cartan,
        gram,
        positive_roots,
        highest_root,
        fundamental_weights,
        index,
    }
}

/// ⟨β, α_i^∨⟩ = Σ_j β_j A_ji.
fn pairing_with(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().enumerate().map(|(j, b)| b * cartan[j][i]).sum()
}

/// Root-string closure: β+α_i is a root iff q = p − ⟨β, α_i^∨⟩ > 0, where p is
/// the length of the α_i-string below β.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let l = cartan.len();
    let mut all: HashSet<Root> = HashSet::new();
    let mut layer: Vec<Root> = (0..l).map(|i| Root::simple(l, i)).collect();
    all.extend(layer.iter().cloned());
    let mut out = layer.clone();
    while !layer.is_empty() {
        let mut next: Vec<Root> = Vec::new();
        for beta in &layer {
            for i in 0..l {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down.0[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing_with(cartan, &beta.0, i) > 0 {
                    let mut up = beta.clone();
                    up.0[i] += 1;
                    if all.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    sort_roots(&mut out);
    out
}

/// Height, then descending lexicographic order.
fn sort_roots(v: &mut [Root]) {
    v.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
}

impl RootSystem {
    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest_root
    }

    /// Λ_i as rational vectors over the simple roots.
    pub fn fundamental_weights(&self) -> &[Vec<Q>] {
        &self.fundamental_weights
    }

    /// All roots, positive first.
    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(|r| -r))
    }

    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &Root) -> bool {
        r.0.len() == self.rank() && (self.index.contains_key(r) || self.index.contains_key(&-r))
    }

    /// φ(u, v) for integer vectors over the simple roots.
    pub fn inner(&self, u: &[i64], v: &[i64]) -> Q {
        let mut s = Q::zero();
        for (i, a) in u.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if *b != 0 && !self.gram[i][j].is_zero() {
                    s += &self.gram[i][j] * q(a * b);
                }
            }
        }
        s
    }

    /// φ(u, v) for a rational vector `u` and an integer vector `v`.
    pub fn inner_q(&self, u: &[Q], v: &[i64]) -> Q {
        let mut s = Q::zero();
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                if *b != 0 {
                    s += a * &self.gram[i][j] * q(*b);
                }
            }
        }
        s
    }

    /// ⟨β, α_i^∨⟩ for a 0-based simple index.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        pairing_with(&self.cartan, beta, i)
    }

    /// The mark m_i of the 1-based simple root α_i.
    pub fn height(&self, i: usize) -> Result<i64, RootSystemError> {
        self.check_index(i)?;
        Ok(self.highest_root.0[i - 1])
    }

    pub fn check_index(&self, i: usize) -> Result<(), RootSystemError> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(RootSystemError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    pub fn reflect(&self, mirror: &Root, target: &Root) -> Result<Root, RootSystemError> {
        for r in [mirror, target] {
            if !self.contains(r) {
                return Err(RootSystemError::NotARoot(r.clone()));
            }
        }
        Ok(self.reflect_unchecked(mirror, target))
    }

    fn reflect_unchecked(&self, mirror: &Root, target: &Root) -> Root {
        let k = q(2) * self.inner(&target.0, &mirror.0) / self.inner(&mirror.0, &mirror.0);
        let k = k.to_integer().to_i64().expect("integral root string");
        target - &mirror.scaled(k)
    }

    /// s_i(v) for a 0-based simple index.
    pub fn simple_reflection(&self, i: usize, v: &Root) -> Root {
        let mut out = v.clone();
        out.0[i] -= self.coroot_pairing(&v.0, i);
        out
    }

    /// Breadth-first enumeration of the Weyl group. Elements appear in order of
    /// nondecreasing length, starting with the identity.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>, RootSystemError> {
        let l = self.rank();
        if l > WEYL_RANK_LIMIT {
            return Err(RootSystemError::WeylGuard(l));
        }
        let id = WeylElement::identity(l);
        let mut seen: HashSet<Vec<Root>> = HashSet::new();
        seen.insert(id.images.clone());
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for i in 0..l {
                let images: Vec<Root> = w
                    .images
                    .iter()
                    .map(|r| self.simple_reflection(i, r))
                    .collect();
                if seen.insert(images.clone()) {
                    let mut word = vec![i];
                    word.extend_from_slice(&w.word);
                    queue.push_back(WeylElement { images, word });
                }
            }
            out.push(w);
        }
        Ok(out)
    }
}

pub fn full_flag_summand_count(group: GroupType) -> usize {
    build_root_system(group).positive_roots().len()
}
