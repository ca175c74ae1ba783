//! Koszul form, Kähler–Einstein metrics, structure constants and the
//! homogeneous Einstein equations.
//!
//! For an invariant metric `x = (x_1, …, x_s)` the Ricci components are
//!
//! ```text
//! r_k = 1/(2x_k) + 1/(4d_k) Σ_{i,j} c[k;ij] x_k/(x_i x_j)
//!                − 1/(2d_k) Σ_{i,j} c[j;ki] x_j/(x_k x_i)
//! ```
//!
//! with both sums over ordered pairs. The structure constants `c` are not
//! computed from bracket tables: they are recovered by requiring that the
//! Kähler–Einstein metrics make every `r_k` equal, which is a linear
//! condition on the `c`s.

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::flag::{FlagError, FlagManifold, InvariantOrdering};
use crate::linalg::{self, LinearSolution};
use crate::poly::{MonomialExport, Polynomial};
use crate::rational::{primitive_integer_vector, q, qf, to_f64, Q};
use crate::rootsys::Root;
use crate::triples::{de_siebenthal, TripleTable};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum EinsteinError {
    #[error("metric component x{0} is not strictly positive")]
    NonPositive(usize),
    #[error("expected {expected} metric components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ordering has {got} signs but the flag has {expected} summands")]
    OrderingMismatch { expected: usize, got: usize },
    #[error("Kähler–Einstein metric is not constant on the fiber of summand {0}")]
    FiberMismatch(usize),
    #[error("Koszul form has a nonzero coefficient {coeff} on unpainted node {node}")]
    UnpaintedKoszul { node: usize, coeff: i64 },
    #[error("structure constants underdetermined: rank {rank} < {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("structure constant system inconsistent (rank {rank}, {unknowns} unknowns)")]
    Inconsistent { rank: usize, unknowns: usize },
    #[error("structure constant for triple {0:?} is not positive")]
    NonPositiveConstant([usize; 3]),
    #[error(transparent)]
    Flag(#[from] FlagError),
}

/// Coefficients c_i of 2δ_𝔪 = Σ c_i Λ_i on the painted nodes (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulForm {
    pub coeffs: Vec<(usize, i64)>,
}

impl std::fmt::Display for KoszulForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        crate::rootsys::write_labelled_combination(f, self.coeffs.iter().copied(), "Λ")
    }
}

pub fn koszul_form(flag: &FlagManifold) -> Result<KoszulForm, EinsteinError> {
    let sys = flag.system();
    let l = sys.rank();
    let mut two_delta_k = Root(vec![0; l]);
    for b in flag.r_k_positive() {
        two_delta_k = &two_delta_k + b;
    }
    let painted = flag.diagram().painted_zero_based();
    let mut coeffs = Vec::new();
    for j in 0..l {
        let c = 2 - sys.coroot_pairing(&two_delta_k.0, j);
        if painted.contains(&j) {
            coeffs.push((j + 1, c));
        } else if c != 0 {
            return Err(EinsteinError::UnpaintedKoszul {
                node: j + 1,
                coeff: c,
            });
        }
    }
    Ok(KoszulForm { coeffs })
}

/// 2δ_P = Σ {α ∈ R_M : κ(α) ∈ P}, over the simple roots.
pub fn two_delta(flag: &FlagManifold, ordering: &InvariantOrdering) -> Result<Root, EinsteinError> {
    check_ordering(flag, ordering)?;
    let mut acc = Root(vec![0; flag.system().rank()]);
    for (fiber, &e) in flag.fibers().iter().zip(ordering.signs()) {
        for r in fiber {
            acc = &acc + &r.scaled(e as i64);
        }
    }
    Ok(acc)
}

fn check_ordering(flag: &FlagManifold, ordering: &InvariantOrdering) -> Result<(), EinsteinError> {
    if ordering.signs().len() != flag.s() {
        return Err(EinsteinError::OrderingMismatch {
            expected: flag.s(),
            got: ordering.signs().len(),
        });
    }
    Ok(())
}

/// The Kähler–Einstein metric x_ξ = φ(δ_P, α) of an invariant ordering,
/// normalized to a primitive positive integer vector.
pub fn kahler_einstein_metric(
    flag: &FlagManifold,
    ordering: &InvariantOrdering,
) -> Result<Vec<BigInt>, EinsteinError> {
    let td = two_delta(flag, ordering)?;
    let sys = flag.system();
    let mut x = Vec::with_capacity(flag.s());
    for (k, (fiber, &e)) in flag.fibers().iter().zip(ordering.signs()).enumerate() {
        let vals: Vec<Q> = fiber
            .iter()
            .map(|r| sys.inner(&td.0, &r.scaled(e as i64).0) / q(2))
            .collect();
        if vals.iter().any(|v| v != &vals[0]) {
            return Err(EinsteinError::FiberMismatch(k + 1));
        }
        if !vals[0].is_positive() {
            return Err(EinsteinError::NonPositive(k + 1));
        }
        x.push(vals[0].clone());
    }
    Ok(primitive_integer_vector(&x).expect("nonzero metric"))
}

pub fn metric_to_q(x: &[BigInt]) -> Vec<Q> {
    x.iter().map(|v| Q::from_integer(v.clone())).collect()
}

/// One term of r_k before multiplying by its structure constant.
#[derive(Clone, Debug)]
struct RicciTerm {
    entry: usize,
    coef: Q,
    exps: Vec<i32>,
}

/// The triple terms of r_k (0-based `k`), expanded over ordered pairs.
fn ricci_terms(dims: &[usize], table: &TripleTable, k: usize) -> Vec<RicciTerm> {
    let s = dims.len();
    let dk = q(dims[k] as i64);
    let mut out = Vec::new();
    for (n, e) in table.entries().iter().enumerate() {
        let Some(pos) = e.iter().position(|&v| v == k + 1) else {
            continue;
        };
        let rest: Vec<usize> = e
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &v)| v - 1)
            .collect();
        let (a, b) = (rest[0], rest[1]);
        let pairs: &[(usize, usize)] = if a == b { &[(a, b)] } else { &[(a, b), (b, a)] };
        for &(i, j) in pairs {
            let mut e1 = vec![0i32; s];
            e1[k] += 1;
            e1[i] -= 1;
            e1[j] -= 1;
            out.push(RicciTerm {
                entry: n,
                coef: q(1) / (q(4) * &dk),
                exps: e1,
            });
            let mut e2 = vec![0i32; s];
            e2[j] += 1;
            e2[k] -= 1;
            e2[i] -= 1;
            out.push(RicciTerm {
                entry: n,
                coef: -q(1) / (q(2) * &dk),
                exps: e2,
            });
        }
    }
    out
}

fn monomial_q(exps: &[i32], x: &[Q]) -> Q {
    exps.iter()
        .zip(x)
        .filter(|(&p, _)| p != 0)
        .map(|(&p, v)| num::pow::Pow::pow(v, p))
        .fold(Q::one(), |a, b| a * b)
}

/// r_k at an exact metric as an affine function of the structure constants:
/// `(constant, coefficient per table entry)`.
fn ricci_affine(dims: &[usize], table: &TripleTable, x: &[Q]) -> Vec<(Q, Vec<Q>)> {
    (0..dims.len())
        .map(|k| {
            let constant = q(1) / (q(2) * &x[k]);
            let mut coeffs = vec![Q::zero(); table.len()];
            for t in ricci_terms(dims, table, k) {
                coeffs[t.entry] += &t.coef * monomial_q(&t.exps, x);
            }
            (constant, coeffs)
        })
        .collect()
}

/// Rank diagnostics of the structure-constant solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsDiagnostics {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Rank of the equations from the standard ordering alone.
    pub standard_rank: usize,
    /// Number of invariant orderings whose Kähler–Einstein metric entered the system.
    pub orderings_used: usize,
}

pub fn structure_constants(flag: &FlagManifold) -> Result<TripleTable, EinsteinError> {
    structure_constants_with_diagnostics(flag).map(|(t, _)| t)
}

/// Solve r_k − r_{k+1} = 0 at the standard Kähler–Einstein metric for the
/// structure constants. When that leaves them underdetermined, the equations
/// from the Kähler–Einstein metrics of all other invariant orderings are added.
pub fn structure_constants_with_diagnostics(
    flag: &FlagManifold,
) -> Result<(TripleTable, ConstantsDiagnostics), EinsteinError> {
    let table = de_siebenthal(flag);
    let unknowns = table.len();
    if table.is_empty() {
        let diag = ConstantsDiagnostics {
            unknowns: 0,
            equations: 0,
            rank: 0,
            standard_rank: 0,
            orderings_used: 0,
        };
        return Ok((table.with_values(Vec::new()), diag));
    }
    let standard = InvariantOrdering::standard(flag.s());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    push_ke_equations(flag, &table, &standard, &mut rows, &mut rhs)?;
    let mut orderings_used = 1;
    let mut result = linalg::solve(&rows, &rhs, unknowns);
    let standard_rank = match result {
        LinearSolution::Unique(_) => unknowns,
        LinearSolution::Underdetermined { rank, .. }
        | LinearSolution::Inconsistent { rank, .. } => rank,
    };
    if let LinearSolution::Underdetermined { .. } = result {
        for ord in flag.enumerate_invariant_orderings()? {
            if ord.is_standard() {
                continue;
            }
            push_ke_equations(flag, &table, &ord, &mut rows, &mut rhs)?;
            orderings_used += 1;
        }
        result = linalg::solve(&rows, &rhs, unknowns);
    }
    let equations = rows.len();
    match result {
        LinearSolution::Unique(values) => {
            if let Some(p) = values.iter().position(|v| !v.is_positive()) {
                return Err(EinsteinError::NonPositiveConstant(table.entries()[p]));
            }
            let diag = ConstantsDiagnostics {
                unknowns,
                equations,
                rank: unknowns,
                standard_rank,
                orderings_used,
            };
            Ok((table.with_values(values), diag))
        }
        LinearSolution::Underdetermined { rank, unknowns } => {
            Err(EinsteinError::Underdetermined { rank, unknowns })
        }
        LinearSolution::Inconsistent { rank, unknowns } => {
            Err(EinsteinError::Inconsistent { rank, unknowns })
        }
    }
}

fn push_ke_equations(
    flag: &FlagManifold,
    table: &TripleTable,
    ordering: &InvariantOrdering,
    rows: &mut Vec<Vec<Q>>,
    rhs: &mut Vec<Q>,
) -> Result<(), EinsteinError> {
    let x = metric_to_q(&kahler_einstein_metric(flag, ordering)?);
    let aff = ricci_affine(flag.dims(), table, &x);
    for k in 0..aff.len().saturating_sub(1) {
        let (c0, r0) = &aff[k];
        let (c1, r1) = &aff[k + 1];
        rows.push(r0.iter().zip(r1).map(|(a, b)| a - b).collect());
        rhs.push(c1 - c0);
    }
    Ok(())
}

/// The Einstein equations of a flag with known structure constants.
#[derive(Clone, Debug)]
pub struct EinsteinSystem {
    dims: Vec<usize>,
    table: TripleTable,
    ricci: Vec<Polynomial>,
    equations: Vec<Polynomial>,
}

impl EinsteinSystem {
    /// Panics if `table` has no values.
    pub fn from_parts(dims: Vec<usize>, table: TripleTable) -> Self {
        let values = table
            .values()
            .expect("structure constants must be set")
            .to_vec();
        let s = dims.len();
        let ricci: Vec<Polynomial> = (0..s)
            .map(|k| {
                let mut e = vec![0i32; s];
                e[k] = -1;
                let mut p = Polynomial::monomial(e, qf(1, 2));
                for t in ricci_terms(&dims, &table, k) {
                    p.add_term(t.exps, t.coef * &values[t.entry]);
                }
                p
            })
            .collect();
        let equations = (0..s.saturating_sub(1))
            .map(|k| {
                ricci[k]
                    .sub(&ricci[k + 1])
                    .substitute_one(0)
                    .clear_denominators()
                    .primitive()
            })
            .collect();
        Self {
            dims,
            table,
            ricci,
            equations,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn s(&self) -> usize {
        self.dims.len()
    }

    pub fn table(&self) -> &TripleTable {
        &self.table
    }

    /// Symbolic r_k as Laurent polynomials in x_1..x_s.
    pub fn ricci_polynomials(&self) -> &[Polynomial] {
        &self.ricci
    }

    /// The s−1 cleared equations in x_2..x_s (x_1 = 1).
    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    fn check(&self, x: &[f64]) -> Result<(), EinsteinError> {
        if x.len() != self.s() {
            return Err(EinsteinError::DimensionMismatch {
                expected: self.s(),
                got: x.len(),
            });
        }
        match x.iter().position(|v| v.is_nan() || *v <= 0.0) {
            Some(i) => Err(EinsteinError::NonPositive(i + 1)),
            None => Ok(()),
        }
    }

    pub fn ricci_components(&self, x: &[f64]) -> Result<Vec<f64>, EinsteinError> {
        self.check(x)?;
        Ok(self.ricci.iter().map(|p| p.eval_f64(x)).collect())
    }

    pub fn ricci_exact(&self, x: &[Q]) -> Result<Vec<Q>, EinsteinError> {
        if x.len() != self.s() {
            return Err(EinsteinError::DimensionMismatch {
                expected: self.s(),
                got: x.len(),
            });
        }
        if let Some(i) = x.iter().position(|v| !v.is_positive()) {
            return Err(EinsteinError::NonPositive(i + 1));
        }
        Ok(self.ricci.iter().map(|p| p.eval_q(x)).collect())
    }

    /// S = ½ Σ d_k/x_k − ¼ Σ_{ordered (i,j,k)} c[k;ij] x_k/(x_i x_j).
    pub fn scalar_curvature(&self, x: &[f64]) -> Result<f64, EinsteinError> {
        self.check(x)?;
        let values = self.table.values().unwrap_or(&[]);
        let mut s: f64 = self
            .dims
            .iter()
            .zip(x)
            .map(|(&d, &v)| d as f64 / v)
            .sum::<f64>()
            / 2.0;
        for (e, c) in self.table.entries().iter().zip(values) {
            let c = to_f64(c);
            let [a, b, d] = e.map(|v| x[v - 1]);
            // Σ over the distinct orderings of the multiset {a, b, d}.
            let sum = distinct_orderings([a, b, d], *e);
            s -= c * sum / 4.0;
        }
        Ok(s)
    }

    pub fn export(&self) -> PolynomialExport {
        PolynomialExport {
            variables: (1..=self.s()).map(|i| format!("x{i}")).collect(),
            normalization: "x1 = 1".to_string(),
            equations: self.equations.iter().map(Polynomial::export).collect(),
        }
    }
}

/// Σ x_k/(x_i x_j) over the distinct orderings (i, j, k) of a triple multiset.
fn distinct_orderings(x: [f64; 3], idx: [usize; 3]) -> f64 {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut seen: Vec<[usize; 3]> = Vec::new();
    let mut s = 0.0;
    for p in perms {
        let key = p.map(|i| idx[i]);
        if !seen.contains(&key) {
            seen.push(key);
            s += x[p[2]] / (x[p[0]] * x[p[1]]);
        }
    }
    s
}

/// Machine-readable form of the cleared equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialExport {
    pub variables: Vec<String>,
    pub normalization: String,
    pub equations: Vec<Vec<MonomialExport>>,
}

pub fn build_einstein_system(flag: &FlagManifold) -> Result<EinsteinSystem, EinsteinError> {
    let table = structure_constants(flag)?;
    Ok(EinsteinSystem::from_parts(flag.dims().to_vec(), table))
}
