#![allow(dead_code)]

use flag_einstein::flag::FlagManifold;
use flag_einstein::flag_from_spec;

pub fn flag(group: &str, painted: &str) -> FlagManifold {
    flag_from_spec(group, painted).unwrap_or_else(|e| panic!("{group} {painted}: {e}"))
}

/// Every b₂ = 1 flag of B4, every full flag of rank ≤ 3, and both
/// five-summand flags of B3.
pub fn property_flags() -> Vec<(String, FlagManifold)> {
    let mut out = Vec::new();
    for node in 1..=4 {
        out.push((format!("B4 {{{node}}}"), flag("B4", &node.to_string())));
    }
    for g in ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "D3"] {
        out.push((format!("{g}/T"), flag(g, "all")));
    }
    out.push(("B3 {1,3}".into(), flag("B3", "1,3")));
    out.push(("B3 {2,3}".into(), flag("B3", "2,3")));
    out
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}
