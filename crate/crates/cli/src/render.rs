//! Plain-text rendering of a [`RunReport`].

use std::fmt::Write;

use crate::report::RunReport;

/// Six significant digits, fixed notation for moderate magnitudes.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let mag: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if !(-4..=8).contains(&mag) {
        return sci;
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn render(report: &RunReport) -> String {
    let mut out = String::new();
    let f = &report.flag;
    let painted: Vec<String> = report.input.painted.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(out, "group        {} (rank {})", report.input.group, f.rank);
    let _ = writeln!(out, "painted      {{{}}}", painted.join(","));
    let _ = writeln!(out, "numbering    {}", report.input.numbering);
    let _ = writeln!(out, "dim G/K      {}", f.dimension);
    let _ = writeln!(out, "b2           {}", f.betti);
    let _ = writeln!(out, "summands s   {}", f.t_roots.len());
    let _ = writeln!(out, "|R_K+|       {}", f.r_k_positive.len());
    let _ = writeln!(out, "|R_M+|       {}", f.r_m_positive.len());
    let _ = writeln!(out, "kappa onto   {}", f.kappa_bijective);
    let _ = writeln!(out, "t-basis      {}", f.t_basis.join(", "));
    let _ = writeln!(out, "t-roots");
    for t in &f.t_roots {
        let _ = writeln!(
            out,
            "  ξ{:<3} {:<16} d={:<3} {}",
            t.index,
            t.t_root,
            t.dim,
            t.fiber.join(", ")
        );
    }

    if let Some(tr) = &report.triples {
        let _ = writeln!(out, "symmetric triples ({})", tr.entries.len());
        if tr.entries.is_empty() {
            let _ = writeln!(out, "  Hermitian symmetric, 𝒯 = ∅");
        }
        for t in &tr.triples {
            let kind = match t.triple_type {
                Some(k) => format!("  {k:?}"),
                None => String::new(),
            };
            let _ = writeln!(
                out,
                "  ({},{},{})  {}, {}, {}{}",
                t.indices[0],
                t.indices[1],
                t.indices[2],
                t.t_roots[0],
                t.t_roots[1],
                t.t_roots[2],
                kind
            );
        }
    }

    if let Some(ke) = &report.kahler_einstein {
        let _ = writeln!(out, "Koszul form  {}", ke.koszul_form);
        let _ = writeln!(
            out,
            "Kähler–Einstein metrics ({} orderings)",
            ke.metrics.len()
        );
        for m in &ke.metrics {
            let signs: String = m
                .signs
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect();
            let mark = if m.standard { "  standard" } else { "" };
            let _ = writeln!(out, "  [{signs}]  ({}){mark}", m.metric.join(", "));
        }
    }

    if let Some(c) = &report.constants {
        let _ = writeln!(out, "structure constants");
        if c.values.is_empty() {
            let _ = writeln!(out, "  none");
        }
        for v in &c.values {
            let _ = writeln!(
                out,
                "  [{}{}{}] = {}",
                v.triple[0], v.triple[1], v.triple[2], v.value
            );
        }
        let d = &c.diagnostics;
        let _ = writeln!(
            out,
            "  rank {}/{} from {} equations over {} ordering(s); standard ordering alone gives rank {}",
            d.rank, d.unknowns, d.equations, d.orderings_used, d.standard_rank
        );
    }

    if let Some(e) = &report.einstein {
        let d = &e.diagnostics;
        let _ = writeln!(
            out,
            "Einstein metrics: {} found (seed {}, {} starts, {} converged, {} rejected at boundary)",
            e.solutions.len(),
            e.seed,
            d.starts,
            d.converged,
            d.boundary
        );
        for s in &e.solutions {
            let coords: Vec<String> = match &s.exact {
                Some(q) => q.clone(),
                None => s.x.iter().map(|&v| sig6(v)).collect(),
            };
            let kahler = if s.kahler_orderings.is_empty() {
                ""
            } else {
                "  Kähler"
            };
            let _ = writeln!(
                out,
                "  #{:<2} ({})  λ={}  H={}  class {}{}",
                s.label,
                coords.join(", "),
                sig6(s.einstein_constant),
                sig6(s.h_invariant),
                s.isometry_class,
                kahler
            );
            if let Some(w) = &s.witness {
                let perm: Vec<String> = w.perm.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(
                    out,
                    "       ≅ #{} via {} (summands → [{}]), scale {}",
                    w.representative,
                    w.weyl,
                    perm.join(","),
                    sig6(w.scale)
                );
            }
        }
        if e.solutions.is_empty() {
            let _ = writeln!(out, "  no positive solutions found");
        }
        let kahler = e
            .solutions
            .iter()
            .filter(|s| !s.kahler_orderings.is_empty())
            .count();
        let _ = writeln!(
            out,
            "Kähler solutions: {kahler} of {}; isometry classes: {}",
            e.solutions.len(),
            e.classes.len()
        );
        for c in &e.classes {
            let members: Vec<String> = c.members.iter().map(|m| format!("#{m}")).collect();
            let _ = writeln!(
                out,
                "  class {}: {{{}}}  H={}{}",
                c.label,
                members.join(", "),
                sig6(c.h_invariant),
                if c.kahler { "  Kähler" } else { "" }
            );
        }
        for [a, b] in &e.same_invariant_witness_not_found {
            let _ = writeln!(out, "  same invariant, witness not found: #{a} and #{b}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(5.923256789), "5.92326");
        assert_eq!(sig6(0.542214), "0.542214");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(0.99999997), "1.00000");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(1.5e-7), "1.50000e-7");
    }
}
