//! Kähler detection, the scale invariant H_g and isometry classes of
//! Einstein solutions.

use num::Zero;
use serde::Serialize;

use crate::einstein::{EinsteinError, EinsteinSystem};
use crate::flag::{summand_symmetries, DiagramMap, FlagError, FlagManifold, InvariantOrdering};
use crate::rational::Q;
use crate::solve::RawSolution;

pub const DEFAULT_KAHLER_TOL: f64 = 1e-4;
pub const DEFAULT_H_TOL: f64 = 1e-6;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Einstein(#[from] EinsteinError),
}

/// Additivity relations x_c = x_a + x_b that a Kähler metric for `ordering` must satisfy.
fn kahler_relations(
    flag: &FlagManifold,
    ordering: &InvariantOrdering,
) -> Vec<(usize, usize, usize)> {
    let p = ordering.positive_part(flag);
    let mut out = Vec::new();
    for a in 0..p.len() {
        for b in a..p.len() {
            if let Some((c, e)) = flag.summand_of(&p[a].add(&p[b])) {
                if e == ordering.signs()[c] {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Indices (into `enumerate_invariant_orderings`) of the orderings whose
/// Kähler condition x_{ξ+ζ} = x_ξ + x_ζ holds within `tol` relative.
pub fn is_kahler(flag: &FlagManifold, x: &[f64], tol: f64) -> Result<Vec<usize>, ClassifyError> {
    check_len(flag, x.len())?;
    Ok(flag
        .enumerate_invariant_orderings()?
        .iter()
        .enumerate()
        .filter(|(_, o)| {
            kahler_relations(flag, o)
                .iter()
                .all(|&(a, b, c)| (x[c] - x[a] - x[b]).abs() <= tol * x[c].abs())
        })
        .map(|(i, _)| i)
        .collect())
}

pub fn is_kahler_exact(flag: &FlagManifold, x: &[Q]) -> Result<Vec<usize>, ClassifyError> {
    check_len(flag, x.len())?;
    Ok(flag
        .enumerate_invariant_orderings()?
        .iter()
        .enumerate()
        .filter(|(_, o)| {
            kahler_relations(flag, o)
                .iter()
                .all(|&(a, b, c)| (&x[c] - &x[a] - &x[b]).is_zero())
        })
        .map(|(i, _)| i)
        .collect())
}

fn check_len(flag: &FlagManifold, got: usize) -> Result<(), ClassifyError> {
    if got != flag.s() {
        return Err(EinsteinError::DimensionMismatch {
            expected: flag.s(),
            got,
        }
        .into());
    }
    Ok(())
}

/// H_g = V_g^{1/d} S_g with V_g = ∏ x_i^{d_i} and d = Σ d_i.
pub fn scale_invariant(system: &EinsteinSystem, x: &[f64]) -> Result<f64, EinsteinError> {
    let s = system.scalar_curvature(x)?;
    let d: usize = system.dims().iter().sum();
    let log_v: f64 = system
        .dims()
        .iter()
        .zip(x)
        .map(|(&di, xi)| di as f64 * xi.ln())
        .sum();
    Ok((log_v / d as f64).exp() * s)
}

/// A summand permutation carrying one metric onto a rescaling of another.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryWitness {
    /// Index of the class representative.
    pub representative: usize,
    /// 0-based: summand k of this metric maps to summand `perm[k]` of the representative.
    pub perm: Vec<usize>,
    /// representative ≈ scale · (this metric permuted by `perm`).
    pub scale: f64,
    /// Weyl element inducing `perm`, as a word in simple reflections.
    pub weyl: String,
}

#[derive(Clone, Debug)]
pub struct ClassifiedSolution {
    pub raw: RawSolution,
    pub kahler_orderings: Vec<usize>,
    pub h_invariant: f64,
    pub einstein_constant: f64,
    /// Index of the smallest member of the isometry class.
    pub isometry_class: usize,
    pub witness: Option<IsometryWitness>,
}

impl ClassifiedSolution {
    pub fn is_kahler(&self) -> bool {
        !self.kahler_orderings.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub solutions: Vec<ClassifiedSolution>,
    /// Pairs with equal H_g for which no Weyl witness was found.
    pub unresolved: Vec<(usize, usize)>,
    pub orderings: Vec<InvariantOrdering>,
    pub symmetries: Vec<DiagramMap>,
}

impl Classification {
    pub fn class_count(&self) -> usize {
        let mut labels: Vec<usize> = self.solutions.iter().map(|s| s.isometry_class).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }
}

/// Find `perm` and `scale` with y ≈ scale · π(x), where π(x)[perm[k]] = x[k].
pub fn find_witness<'a>(
    symmetries: &'a [DiagramMap],
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Option<(&'a DiagramMap, f64)> {
    symmetries.iter().find_map(|m| {
        let mut px = vec![0.0; x.len()];
        for (k, &t) in m.pairing.iter().enumerate() {
            px[t] = x[k];
        }
        let scale = y[0] / px[0];
        let ymax = y.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        y.iter()
            .zip(&px)
            .all(|(a, b)| (a - scale * b).abs() <= tol * ymax)
            .then_some((m, scale))
    })
}

pub fn group_isometric(
    flag: &FlagManifold,
    system: &EinsteinSystem,
    solutions: &[RawSolution],
    kahler_tol: f64,
    match_tol: f64,
) -> Result<Classification, ClassifyError> {
    let orderings = flag.enumerate_invariant_orderings()?;
    let symmetries = summand_symmetries(flag)?;
    let mut out: Vec<ClassifiedSolution> = Vec::with_capacity(solutions.len());
    let mut unresolved = Vec::new();
    for (j, raw) in solutions.iter().enumerate() {
        let kahler_orderings = match &raw.exact {
            Some(xq) => is_kahler_exact(flag, xq)?,
            None => is_kahler(flag, &raw.x, kahler_tol)?,
        };
        let h = scale_invariant(system, &raw.x)?;
        let lambda = system.ricci_components(&raw.x)?[0];
        let mut class = j;
        let mut witness = None;
        let mut same_h = Vec::new();
        for (i, prev) in out.iter().enumerate() {
            if prev.isometry_class != i {
                continue;
            }
            if (prev.h_invariant - h).abs() > DEFAULT_H_TOL * h.abs().max(1.0) {
                continue;
            }
            same_h.push(i);
            if let Some((m, scale)) = find_witness(&symmetries, &raw.x, &prev.raw.x, match_tol) {
                class = i;
                witness = Some(IsometryWitness {
                    representative: i,
                    perm: m.pairing.clone(),
                    scale,
                    weyl: m.witness.to_string(),
                });
                break;
            }
        }
        if witness.is_none() {
            unresolved.extend(same_h.into_iter().map(|i| (i, j)));
        }
        out.push(ClassifiedSolution {
            raw: raw.clone(),
            kahler_orderings,
            h_invariant: h,
            einstein_constant: lambda,
            isometry_class: class,
            witness,
        });
    }
    Ok(Classification {
        solutions: out,
        unresolved,
        orderings,
        symmetries,
    })
}
