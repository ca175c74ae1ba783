//! Versioned run report shared by the human and JSON outputs.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use flag_einstein::classify::Classification;
use flag_einstein::einstein::{self, ConstantsDiagnostics, EinsteinSystem};
use flag_einstein::flag::FlagManifold;
use flag_einstein::rational::{format_q, to_f64};
use flag_einstein::solve::{SolveOutcome, SolverConfig, SolverDiagnostics};
use flag_einstein::triples::{classify_type_ab, enumerate_triples, TripleType};
use flag_einstein::{Analysis, Error};

pub const SCHEMA: u32 = 1;

pub const NUMBERING: &str =
    "Bourbaki numbering for A-F; G2 with alpha1 long and alpha2 short (highest root 2a1+3a2)";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub flag: FlagSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triples: Option<TriplesSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kahler_einstein: Option<KahlerEinsteinSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub einstein: Option<EinsteinSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub group: String,
    pub group_input: String,
    pub painted: Vec<usize>,
    pub numbering: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlagSummary {
    pub rank: usize,
    pub positive_roots: Vec<String>,
    pub r_k_positive: Vec<String>,
    pub r_m_positive: Vec<String>,
    pub t_basis: Vec<String>,
    pub t_roots: Vec<TRootEntry>,
    pub dims: Vec<usize>,
    pub betti: usize,
    pub dimension: usize,
    pub kappa_bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TRootEntry {
    pub index: usize,
    pub t_root: String,
    pub coeffs: Vec<i64>,
    pub dim: usize,
    pub fiber: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriplesSection {
    pub entries: Vec<[usize; 3]>,
    pub triples: Vec<TripleEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleEntry {
    pub indices: [usize; 3],
    /// The three t-roots, summing to zero.
    pub t_roots: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple_type: Option<TripleType>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsSection {
    pub values: Vec<ConstantEntry>,
    pub diagnostics: ConstantsDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub triple: [usize; 3],
    pub value: String,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KahlerEinsteinSection {
    pub koszul_form: String,
    pub metrics: Vec<KeMetricEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KeMetricEntry {
    pub ordering: usize,
    pub signs: Vec<i8>,
    pub standard: bool,
    pub metric: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EinsteinSection {
    pub seed: u64,
    pub config: SolverConfig,
    pub diagnostics: SolverDiagnostics,
    pub solutions: Vec<SolutionEntry>,
    pub classes: Vec<ClassEntry>,
    /// Pairs of solution labels with equal H but no Weyl witness.
    pub same_invariant_witness_not_found: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionEntry {
    /// 1-based label in canonical order.
    pub label: usize,
    pub x: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
    pub residual: f64,
    pub einstein_constant: f64,
    pub h_invariant: f64,
    pub kahler_orderings: Vec<usize>,
    pub isometry_class: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub representative: usize,
    /// 1-based: summand k maps to summand perm[k-1] of the representative.
    pub perm: Vec<usize>,
    pub scale: f64,
    pub weyl: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub label: usize,
    pub members: Vec<usize>,
    pub kahler: bool,
    pub h_invariant: f64,
}

impl RunReport {
    pub fn describe(command: &str, group_input: &str, flag: &FlagManifold) -> Self {
        let sys = flag.system();
        let painted = flag.diagram().painted();
        let t_basis = flag
            .t_basis()
            .into_iter()
            .map(|k| flag.display_t_root(&flag.t_roots()[k]))
            .collect();
        let t_roots = flag
            .t_roots()
            .iter()
            .enumerate()
            .map(|(k, t)| TRootEntry {
                index: k + 1,
                t_root: flag.display_t_root(t),
                coeffs: t.coeffs().to_vec(),
                dim: flag.dims()[k],
                fiber: flag.fiber(k).iter().map(|r| r.to_string()).collect(),
            })
            .collect();
        Self {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input: InputEcho {
                group: sys.group().to_string(),
                group_input: group_input.to_string(),
                painted,
                numbering: NUMBERING.to_string(),
            },
            flag: FlagSummary {
                rank: sys.rank(),
                positive_roots: sys.positive_roots().iter().map(|r| r.to_string()).collect(),
                r_k_positive: flag.r_k_positive().iter().map(|r| r.to_string()).collect(),
                r_m_positive: flag.r_m_positive().iter().map(|r| r.to_string()).collect(),
                t_basis,
                t_roots,
                dims: flag.dims().to_vec(),
                betti: flag.betti(),
                dimension: flag.dimension(),
                kappa_bijective: flag.kappa_is_bijective(),
            },
            triples: None,
            constants: None,
            kahler_einstein: None,
            einstein: None,
        }
    }

    pub fn add_triples(&mut self, flag: &FlagManifold) {
        let triples: Vec<TripleEntry> = enumerate_triples(flag)
            .into_iter()
            .map(|t| TripleEntry {
                indices: t.indices,
                t_roots: [&t.xi, &t.zeta, &t.eta].map(|r| flag.display_t_root(r)),
                triple_type: classify_type_ab(flag, &t).ok(),
            })
            .collect();
        self.triples = Some(TriplesSection {
            entries: triples.iter().map(|t| t.indices).collect(),
            triples,
        });
    }

    pub fn add_constants(&mut self, system: &EinsteinSystem, diagnostics: &ConstantsDiagnostics) {
        let table = system.table();
        let values = table
            .entries()
            .iter()
            .zip(table.values().unwrap_or(&[]))
            .map(|(e, v)| ConstantEntry {
                triple: *e,
                value: format_q(v),
                approx: to_f64(v),
            })
            .collect();
        self.constants = Some(ConstantsSection {
            values,
            diagnostics: diagnostics.clone(),
        });
    }

    pub fn add_kahler_einstein(&mut self, flag: &FlagManifold) -> Result<(), Error> {
        let koszul = einstein::koszul_form(flag)?;
        let metrics = flag
            .enumerate_invariant_orderings()?
            .iter()
            .enumerate()
            .map(|(i, o)| {
                Ok(KeMetricEntry {
                    ordering: i,
                    signs: o.signs().to_vec(),
                    standard: o.is_standard(),
                    metric: einstein::kahler_einstein_metric(flag, o)?
                        .iter()
                        .map(|v| v.to_string())
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        self.kahler_einstein = Some(KahlerEinsteinSection {
            koszul_form: koszul.to_string(),
            metrics,
        });
        Ok(())
    }

    pub fn add_einstein(&mut self, analysis: &Analysis, config: &SolverConfig) {
        self.einstein = Some(einstein_section(
            &analysis.solve,
            &analysis.classification,
            config,
        ));
    }

    /// Canonical file name: group, painted set and a hash of the configuration.
    pub fn file_name(&self) -> String {
        let painted: Vec<String> = self.input.painted.iter().map(|p| p.to_string()).collect();
        let key = serde_json::json!({
            "command": self.command,
            "group": self.input.group,
            "painted": self.input.painted,
            "config": self.einstein.as_ref().map(|e| &e.config),
        });
        let digest = Sha256::digest(key.to_string().as_bytes());
        format!(
            "{}_p{}_{}.json",
            self.input.group,
            painted.join("-"),
            &hex::encode(digest)[..12]
        )
    }

    pub fn write_to_dir(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        let json = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        std::fs::write(&path, json + "\n")?;
        Ok(path)
    }
}

fn einstein_section(
    outcome: &SolveOutcome,
    classification: &Classification,
    config: &SolverConfig,
) -> EinsteinSection {
    let mut reps: Vec<usize> = classification
        .solutions
        .iter()
        .map(|s| s.isometry_class)
        .collect();
    reps.sort_unstable();
    reps.dedup();
    let class_label = |rep: usize| reps.iter().position(|&r| r == rep).map_or(0, |p| p + 1);
    let solutions: Vec<SolutionEntry> = classification
        .solutions
        .iter()
        .enumerate()
        .map(|(i, s)| SolutionEntry {
            label: i + 1,
            x: s.raw.x.clone(),
            exact: s
                .raw
                .exact
                .as_ref()
                .map(|v| v.iter().map(format_q).collect()),
            residual: s.raw.residual,
            einstein_constant: s.einstein_constant,
            h_invariant: s.h_invariant,
            kahler_orderings: s.kahler_orderings.clone(),
            isometry_class: class_label(s.isometry_class),
            witness: s.witness.as_ref().map(|w| WitnessEntry {
                representative: w.representative + 1,
                perm: w.perm.iter().map(|p| p + 1).collect(),
                scale: w.scale,
                weyl: w.weyl.clone(),
            }),
        })
        .collect();
    let mut classes: Vec<ClassEntry> = Vec::new();
    for s in &solutions {
        match classes.iter_mut().find(|c| c.label == s.isometry_class) {
            Some(c) => c.members.push(s.label),
            None => classes.push(ClassEntry {
                label: s.isometry_class,
                members: vec![s.label],
                kahler: !s.kahler_orderings.is_empty(),
                h_invariant: s.h_invariant,
            }),
        }
    }
    EinsteinSection {
        seed: config.seed,
        config: config.clone(),
        diagnostics: outcome.diagnostics.clone(),
        solutions,
        classes,
        same_invariant_witness_not_found: classification
            .unresolved
            .iter()
            .map(|&(a, b)| [a + 1, b + 1])
            .collect(),
    }
}
