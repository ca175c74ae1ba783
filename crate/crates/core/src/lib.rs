//! Invariant Einstein metrics on generalized flag manifolds G/K.
//!
//! A flag manifold is given by a painted Dynkin diagram. From it the crate
//! derives the t-root system and isotropy summands, the symmetric t-triples,
//! the Kähler–Einstein metrics of all invariant orderings, the structure
//! constants, and finally the positive solutions of the homogeneous Einstein
//! equations together with their isometry classes.

pub mod classify;
pub mod einstein;
pub mod flag;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod rootsys;
pub mod solve;
pub mod triples;

use std::sync::Arc;

use classify::{Classification, ClassifyError};
use einstein::{ConstantsDiagnostics, EinsteinError, EinsteinSystem};
use flag::{FlagError, FlagManifold, PaintedDiagram};
use rootsys::{GroupType, RootSystemError};
use solve::{SolveError, SolveOutcome, SolverConfig};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Einstein(#[from] EinsteinError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Build the flag manifold for a group name and painted-set selector
/// (`"1,3"`, `"all"` or `"mark=5"`).
pub fn flag_from_spec(group: &str, painted: &str) -> Result<FlagManifold, Error> {
    let group: GroupType = group.parse()?;
    let system = Arc::new(rootsys::build_root_system(group));
    Ok(flag::build_flag(PaintedDiagram::parse(system, painted)?))
}

/// Everything computed for one flag, from structure constants to isometry classes.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub system: EinsteinSystem,
    pub constants: ConstantsDiagnostics,
    pub solve: SolveOutcome,
    pub classification: Classification,
}

pub fn analyze(flag: &FlagManifold, config: &SolverConfig) -> Result<Analysis, Error> {
    let (table, constants) = einstein::structure_constants_with_diagnostics(flag)?;
    let system = EinsteinSystem::from_parts(flag.dims().to_vec(), table);
    let solve = solve::solve_system(&system, config)?;
    let classification = classify::group_isometric(
        flag,
        &system,
        &solve.solutions,
        classify::DEFAULT_KAHLER_TOL,
        config.dedup_tol,
    )?;
    Ok(Analysis {
        system,
        constants,
        solve,
        classification,
    })
}
