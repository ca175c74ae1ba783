//! Symmetric t-triples and the de Siebenthal invariant.

use std::collections::BTreeMap;
use std::fmt;

use num::Signed;
use serde::{Deserialize, Serialize};

use crate::flag::{FlagManifold, TRoot};
use crate::rational::{format_q, Q};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("Type A/B classification needs second Betti number 1, got {0}")]
    BettiNotOne(usize),
    #[error("height {0} outside the supported range 1..=6")]
    HeightOutOfRange(usize),
}

/// Three t-roots summing to zero, stored as (ξ_i, ξ_j, −(ξ_i+ξ_j)) with i ≤ j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricTriple {
    pub xi: TRoot,
    pub zeta: TRoot,
    pub eta: TRoot,
    /// 1-based summand indices, sorted.
    pub indices: [usize; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleType {
    TypeA,
    TypeB,
}

pub fn enumerate_triples(flag: &FlagManifold) -> Vec<SymmetricTriple> {
    let t = flag.t_roots();
    let mut out: BTreeMap<[usize; 3], SymmetricTriple> = BTreeMap::new();
    for i in 0..t.len() {
        for j in i..t.len() {
            let sum = t[i].add(&t[j]);
            if let Some((k, 1)) = flag.summand_of(&sum) {
                let mut idx = [i + 1, j + 1, k + 1];
                idx.sort_unstable();
                out.entry(idx).or_insert_with(|| SymmetricTriple {
                    xi: t[i].clone(),
                    zeta: t[j].clone(),
                    eta: sum.neg(),
                    indices: idx,
                });
            }
        }
    }
    out.into_values().collect()
}

/// The de Siebenthal invariant: unordered index triples with optional values c_ij^k.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleTable {
    entries: Vec<[usize; 3]>,
    values: Option<Vec<Q>>,
}

impl TripleTable {
    pub fn new(entries: Vec<[usize; 3]>) -> Self {
        let mut entries: Vec<[usize; 3]> = entries
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        entries.sort_unstable();
        entries.dedup();
        Self {
            entries,
            values: None,
        }
    }

    pub fn entries(&self) -> &[[usize; 3]] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Option<&[Q]> {
        self.values.as_deref()
    }

    /// Attach values aligned with `entries`. Panics on length mismatch or nonpositive value.
    pub fn with_values(mut self, values: Vec<Q>) -> Self {
        assert_eq!(values.len(), self.entries.len());
        assert!(
            values.iter().all(Signed::is_positive),
            "structure constants must be positive"
        );
        self.values = Some(values);
        self
    }

    pub fn position(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.entries.binary_search(&key).ok()
    }

    /// c[a;bc] for 1-based indices in any order; `None` if the triple is absent
    /// or values are unset.
    pub fn value(&self, a: usize, b: usize, c: usize) -> Option<&Q> {
        let p = self.position(a, b, c)?;
        self.values.as_ref().map(|v| &v[p])
    }
}

impl fmt::Display for TripleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .enumerate()
            .map(|(n, [a, b, c])| match &self.values {
                Some(v) => format!("({a},{b},{c})={}", format_q(&v[n])),
                None => format!("({a},{b},{c})"),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn de_siebenthal(flag: &FlagManifold) -> TripleTable {
    TripleTable::new(
        enumerate_triples(flag)
            .into_iter()
            .map(|t| t.indices)
            .collect(),
    )
}

/// Type A iff the triple contains ±ᾱ (the simple t-root); requires b₂ = 1.
pub fn classify_type_ab(
    flag: &FlagManifold,
    triple: &SymmetricTriple,
) -> Result<TripleType, TripleError> {
    if flag.betti() != 1 {
        return Err(TripleError::BettiNotOne(flag.betti()));
    }
    Ok(type_of_multiples(&[
        triple.xi.0[0],
        triple.zeta.0[0],
        triple.eta.0[0],
    ]))
}

fn type_of_multiples(m: &[i64]) -> TripleType {
    if m.iter().any(|c| c.abs() == 1) {
        TripleType::TypeA
    } else {
        TripleType::TypeB
    }
}

/// Number of symmetric triples in the abstract t-root system {±ᾱ, …, ±rᾱ}.
pub fn count_triples_b2_one(r: usize) -> Result<usize, TripleError> {
    if !(1..=6).contains(&r) {
        return Err(TripleError::HeightOutOfRange(r));
    }
    Ok((1..=r)
        .map(|p| (p..=r).filter(|q| p + q <= r).count())
        .sum())
}

/// Triples (p, q, p+q) of the abstract system, each tagged with its type.
pub fn abstract_triples_b2_one(r: usize) -> Result<Vec<([usize; 3], TripleType)>, TripleError> {
    count_triples_b2_one(r)?;
    let mut out = Vec::new();
    for p in 1..=r {
        for q in p..=r {
            if p + q <= r {
                let ty = type_of_multiples(&[p as i64, q as i64, (p + q) as i64]);
                out.push(([p, q, p + q], ty));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{build_flag, PaintedDiagram};
    use crate::rootsys::build_root_system;
    use std::sync::Arc;

    fn flag(group: &str, painted: &str) -> FlagManifold {
        let sys = Arc::new(build_root_system(group.parse().unwrap()));
        build_flag(PaintedDiagram::parse(sys, painted).unwrap())
    }

    fn entries(f: &FlagManifold) -> Vec<[usize; 3]> {
        de_siebenthal(f).entries().to_vec()
    }

    #[test]
    fn so7_five_summands() {
        let f = flag("B3", "1,3");
        assert_eq!(
            entries(&f),
            vec![[1, 2, 3], [1, 4, 5], [2, 2, 4], [2, 3, 5]]
        );
        for t in enumerate_triples(&f) {
            assert!(t.xi.add(&t.zeta).add(&t.eta).is_zero());
        }
    }

    #[test]
    fn hermitian_symmetric_case_is_empty() {
        assert!(entries(&flag("A3", "2")).is_empty());
        assert!(entries(&flag("B3", "1")).is_empty());
    }

    #[test]
    fn full_flags() {
        assert_eq!(
            entries(&flag("G2", "all")),
            vec![[1, 2, 3], [1, 5, 6], [2, 3, 4], [2, 4, 5], [3, 4, 6]]
        );
        // ξ1+ξ2 = ξ4 in A3, so the first entry is (1,2,4), not (1,2,3).
        assert_eq!(
            entries(&flag("A3", "all")),
            vec![[1, 2, 4], [1, 5, 6], [2, 3, 5], [3, 4, 6]]
        );
        assert_eq!(
            entries(&flag("D3", "all")),
            vec![[1, 2, 4], [1, 3, 5], [2, 5, 6], [3, 4, 6]]
        );
    }

    #[test]
    fn e8_marks() {
        let five = entries(&flag("E8", "mark=5"));
        assert_eq!(five.len(), 6);
        assert!(five.contains(&[2, 3, 5]));
        assert_eq!(entries(&flag("E8", "mark=6")).len(), 9);
    }

    #[test]
    fn type_ab() {
        let f = flag("E8", "mark=5");
        let ts = enumerate_triples(&f);
        let t145 = ts.iter().find(|t| t.indices == [1, 4, 5]).unwrap();
        assert_eq!(classify_type_ab(&f, t145).unwrap(), TripleType::TypeA);
        let g = flag("F4", "3");
        let t224 = enumerate_triples(&g)
            .into_iter()
            .find(|t| t.indices == [2, 2, 4])
            .unwrap();
        assert_eq!(classify_type_ab(&g, &t224).unwrap(), TripleType::TypeB);
        let h = flag("B3", "2");
        let t112 = &enumerate_triples(&h)[0];
        assert_eq!(classify_type_ab(&h, t112).unwrap(), TripleType::TypeA);
        let two = flag("B3", "1,3");
        assert!(classify_type_ab(&two, &enumerate_triples(&two)[0]).is_err());
    }

    #[test]
    fn abstract_counts() {
        let counts: Vec<usize> = (1..=6).map(|r| count_triples_b2_one(r).unwrap()).collect();
        assert_eq!(counts, vec![0, 1, 2, 4, 6, 9]);
        assert!(count_triples_b2_one(0).is_err());
        assert!(count_triples_b2_one(7).is_err());
    }

    #[test]
    fn table_lookup_is_symmetric() {
        let t = TripleTable::new(vec![[2, 4, 2], [3, 1, 2]])
            .with_values(vec![crate::rational::qf(2, 5), crate::rational::q(1)]);
        assert_eq!(t.entries(), &[[1, 2, 3], [2, 2, 4]]);
        assert_eq!(t.value(4, 2, 2), t.value(2, 2, 4));
        assert!(t.value(1, 1, 2).is_none());
    }
}
