//! Painted Dynkin diagrams and the combinatorics of the flag manifold G/K.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::rootsys::{write_labelled_combination, Root, RootSystem, RootSystemError, WeylElement};

/// Largest number of positive t-roots for which orderings are enumerated.
pub const ORDERING_LIMIT: usize = 20;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("painted set is empty")]
    EmptyPainting,
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("no simple root has mark {0}")]
    NoSuchMark(i64),
    #[error("cannot parse painted set `{0}`")]
    Parse(String),
    #[error("ordering enumeration is limited to {ORDERING_LIMIT} positive t-roots, got {0}")]
    OrderingGuard(usize),
    #[error("flags are built on different root systems")]
    DifferentSystems,
}

/// A Dynkin diagram with the nodes of Π_M painted black.
#[derive(Clone, Debug)]
pub struct PaintedDiagram {
    system: Arc<RootSystem>,
    painted: Vec<usize>,
}

impl PaintedDiagram {
    /// `painted` holds 1-based node indices.
    pub fn new(
        system: Arc<RootSystem>,
        painted: impl IntoIterator<Item = usize>,
    ) -> Result<Self, FlagError> {
        let set: BTreeSet<usize> = painted.into_iter().collect();
        if set.is_empty() {
            return Err(FlagError::EmptyPainting);
        }
        for &i in &set {
            system.check_index(i)?;
        }
        Ok(Self {
            system,
            painted: set.into_iter().map(|i| i - 1).collect(),
        })
    }

    pub fn full(system: Arc<RootSystem>) -> Self {
        let painted = (0..system.rank()).collect();
        Self { system, painted }
    }

    /// Paints every node whose mark equals `mark`.
    pub fn by_mark(system: Arc<RootSystem>, mark: i64) -> Result<Self, FlagError> {
        let nodes: Vec<usize> = (1..=system.rank())
            .filter(|&i| system.height(i).ok() == Some(mark))
            .collect();
        if nodes.is_empty() {
            return Err(FlagError::NoSuchMark(mark));
        }
        Self::new(system, nodes)
    }

    /// Parses "1,3", "all" or "mark=5".
    pub fn parse(system: Arc<RootSystem>, spec: &str) -> Result<Self, FlagError> {
        let s = spec.trim();
        if s.eq_ignore_ascii_case("all") || s.eq_ignore_ascii_case("full") {
            return Ok(Self::full(system));
        }
        if let Some(m) = s.strip_prefix("mark=") {
            let m: i64 = m
                .trim()
                .parse()
                .map_err(|_| FlagError::Parse(spec.to_string()))?;
            return Self::by_mark(system, m);
        }
        let nodes = s
            .split(',')
            .map(|t| t.trim().trim_start_matches(['a', 'α']).parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| FlagError::Parse(spec.to_string()))?;
        Self::new(system, nodes)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    /// 1-based painted node indices.
    pub fn painted(&self) -> Vec<usize> {
        self.painted.iter().map(|i| i + 1).collect()
    }

    pub fn painted_zero_based(&self) -> &[usize] {
        &self.painted
    }
}

/// A t-root: integer coefficients over the painted simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TRoot(pub Vec<i64>);

impl TRoot {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> TRoot {
        TRoot(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &TRoot) -> TRoot {
        TRoot(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Display with the painted node labels, e.g. `ᾱ1+2ᾱ3`.
    pub fn display<'a>(&'a self, painted: &'a [usize]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a TRoot, &'a [usize]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_labelled_combination(
                    f,
                    self.1.iter().copied().zip(self.0 .0.iter().copied()),
                    "ᾱ",
                )
            }
        }
        D(self, painted)
    }
}

#[derive(Clone, Debug)]
pub struct FlagManifold {
    diagram: PaintedDiagram,
    r_k_positive: Vec<Root>,
    r_m_positive: Vec<Root>,
    t_roots: Vec<TRoot>,
    fibers: Vec<Vec<Root>>,
    dims: Vec<usize>,
    t_index: HashMap<TRoot, usize>,
}

pub fn build_flag(diagram: PaintedDiagram) -> FlagManifold {
    let system = diagram.system.clone();
    let painted = diagram.painted.clone();
    let kappa = |r: &Root| TRoot(painted.iter().map(|&i| r.0[i]).collect());

    let mut r_k_positive = Vec::new();
    let mut r_m_positive = Vec::new();
    let mut groups: HashMap<TRoot, Vec<Root>> = HashMap::new();
    for r in system.positive_roots() {
        let t = kappa(r);
        if t.is_zero() {
            r_k_positive.push(r.clone());
        } else {
            r_m_positive.push(r.clone());
            groups.entry(t).or_default().push(r.clone());
        }
    }
    let mut t_roots: Vec<TRoot> = groups.keys().cloned().collect();
    t_roots.sort_by(|a, b| a.sum().cmp(&b.sum()).then_with(|| b.0.cmp(&a.0)));
    let fibers: Vec<Vec<Root>> = t_roots.iter().map(|t| groups.remove(t).unwrap()).collect();
    let dims = fibers.iter().map(|f| 2 * f.len()).collect();
    let t_index = t_roots
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    FlagManifold {
        diagram,
        r_k_positive,
        r_m_positive,
        t_roots,
        fibers,
        dims,
        t_index,
    }
}

impl FlagManifold {
    pub fn diagram(&self) -> &PaintedDiagram {
        &self.diagram
    }

    pub fn system(&self) -> &RootSystem {
        &self.diagram.system
    }

    pub fn r_k_positive(&self) -> &[Root] {
        &self.r_k_positive
    }

    pub fn r_m_positive(&self) -> &[Root] {
        &self.r_m_positive
    }

    pub fn t_roots(&self) -> &[TRoot] {
        &self.t_roots
    }

    /// Positive roots in the fiber of the k-th (0-based) positive t-root.
    pub fn fiber(&self, k: usize) -> &[Root] {
        &self.fibers[k]
    }

    pub fn fibers(&self) -> &[Vec<Root>] {
        &self.fibers
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of isotropy summands.
    pub fn s(&self) -> usize {
        self.t_roots.len()
    }

    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn betti(&self) -> usize {
        self.diagram.painted.len()
    }

    pub fn center_dim(&self) -> usize {
        self.diagram.painted.len()
    }

    pub fn kappa(&self, r: &Root) -> TRoot {
        TRoot(self.diagram.painted.iter().map(|&i| r.0[i]).collect())
    }

    /// 0-based summand index and sign of ±ξ_k.
    pub fn summand_of(&self, t: &TRoot) -> Option<(usize, i8)> {
        if let Some(&k) = self.t_index.get(t) {
            return Some((k, 1));
        }
        self.t_index.get(&t.neg()).map(|&k| (k, -1))
    }

    pub fn summand_of_root(&self, r: &Root) -> Option<(usize, i8)> {
        self.summand_of(&self.kappa(r))
    }

    pub fn is_t_root(&self, t: &TRoot) -> bool {
        self.summand_of(t).is_some()
    }

    pub fn kappa_is_bijective(&self) -> bool {
        self.fibers.iter().all(|f| f.len() == 1)
    }

    pub fn display_t_root(&self, t: &TRoot) -> String {
        t.display(&self.diagram.painted()).to_string()
    }

    /// Positive t-roots ±ξ_k that cannot be written as a sum of two positive
    /// t-roots; these are exactly the painted simple roots.
    pub fn t_basis(&self) -> Vec<usize> {
        (0..self.s())
            .filter(|&k| {
                !(0..self.s()).any(|i| {
                    let rest = TRoot(
                        self.t_roots[k]
                            .0
                            .iter()
                            .zip(&self.t_roots[i].0)
                            .map(|(a, b)| a - b)
                            .collect(),
                    );
                    self.t_index.contains_key(&rest)
                })
            })
            .collect()
    }

    pub fn enumerate_invariant_orderings(&self) -> Result<Vec<InvariantOrdering>, FlagError> {
        let s = self.s();
        if s > ORDERING_LIMIT {
            return Err(FlagError::OrderingGuard(s));
        }
        // Sums ξ_a ± ξ_b that are t-roots, as (a, sign_a, b, sign_b, c, sign_c).
        let mut relations = Vec::new();
        for a in 0..s {
            for b in 0..s {
                for (ea, eb) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
                    let sa = if ea > 0 {
                        self.t_roots[a].clone()
                    } else {
                        self.t_roots[a].neg()
                    };
                    let sb = if eb > 0 {
                        self.t_roots[b].clone()
                    } else {
                        self.t_roots[b].neg()
                    };
                    if let Some((c, ec)) = self.summand_of(&sa.add(&sb)) {
                        relations.push((a, ea, b, eb, c, ec));
                    }
                }
            }
        }
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << s) {
            let signs: Vec<i8> = (0..s)
                .map(|k| if mask >> k & 1 == 0 { 1 } else { -1 })
                .collect();
            let closed = relations.iter().all(|&(a, ea, b, eb, c, ec)| {
                !(signs[a] == ea && signs[b] == eb) || signs[c] == ec
            });
            if closed {
                out.push(InvariantOrdering { signs });
            }
        }
        Ok(out)
    }
}

/// An invariant ordering P, recorded as the sign ε_k with ε_k ξ_k ∈ P.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantOrdering {
    signs: Vec<i8>,
}

impl InvariantOrdering {
    pub fn standard(s: usize) -> Self {
        Self { signs: vec![1; s] }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_standard(&self) -> bool {
        self.signs.iter().all(|&e| e > 0)
    }

    pub fn positive_part(&self, flag: &FlagManifold) -> Vec<TRoot> {
        flag.t_roots()
            .iter()
            .zip(&self.signs)
            .map(|(t, &e)| if e > 0 { t.clone() } else { t.neg() })
            .collect()
    }

    pub fn opposite(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|e| -e).collect(),
        }
    }
}

/// A Weyl element carrying R_K(a) onto R_K(b), with the induced summand map.
#[derive(Clone, Debug)]
pub struct DiagramMap {
    pub witness: WeylElement,
    /// `pairing[i] = j` when w maps the fiber of ξ_i in `a` into ±fiber of ξ_j in `b` (0-based).
    pub pairing: Vec<usize>,
}

fn r_k_set(flag: &FlagManifold) -> HashSet<Root> {
    flag.r_k_positive
        .iter()
        .flat_map(|r| [r.clone(), -r])
        .collect()
}

/// The summand permutation induced by `w`, if `w(R_K(a)) = R_K(b)`.
pub(crate) fn induced_pairing(
    a: &FlagManifold,
    b: &FlagManifold,
    rk_b: &HashSet<Root>,
    w: &WeylElement,
) -> Option<Vec<usize>> {
    if a.r_k_positive.len() != b.r_k_positive.len()
        || !a.r_k_positive.iter().all(|r| rk_b.contains(&w.apply(r)))
    {
        return None;
    }
    let mut pairing = Vec::with_capacity(a.s());
    for fiber in &a.fibers {
        let targets: BTreeSet<usize> = fiber
            .iter()
            .map(|r| b.summand_of_root(&w.apply(r)).map(|(k, _)| k))
            .collect::<Option<_>>()?;
        assert_eq!(
            targets.len(),
            1,
            "Weyl image of a fiber spans several summands"
        );
        pairing.push(*targets.first().unwrap());
    }
    Some(pairing)
}

pub fn diagram_equivalence(
    a: &FlagManifold,
    b: &FlagManifold,
) -> Result<Option<DiagramMap>, FlagError> {
    if a.system().group() != b.system().group() {
        return Err(FlagError::DifferentSystems);
    }
    let weyl = a.system().weyl_group()?;
    if a.s() != b.s() || a.r_k_positive.len() != b.r_k_positive.len() {
        return Ok(None);
    }
    let rk_b = r_k_set(b);
    Ok(weyl.into_iter().find_map(|w| {
        induced_pairing(a, b, &rk_b, &w).map(|pairing| DiagramMap {
            witness: w,
            pairing,
        })
    }))
}

/// Summand permutations induced by Weyl elements stabilizing R_K, each with
/// the first witness found in breadth-first order.
pub fn summand_symmetries(flag: &FlagManifold) -> Result<Vec<DiagramMap>, FlagError> {
    let weyl = flag.system().weyl_group()?;
    let rk = r_k_set(flag);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in weyl {
        if let Some(pairing) = induced_pairing(flag, flag, &rk, &w) {
            if seen.insert(pairing.clone()) {
                out.push(DiagramMap {
                    witness: w,
                    pairing,
                });
            }
        }
    }
    Ok(out)
}
