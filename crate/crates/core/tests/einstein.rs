mod common;

use common::{flag, rel_close};
use flag_einstein::einstein::{self, build_einstein_system, EinsteinSystem};
use flag_einstein::flag::{FlagManifold, InvariantOrdering};
use flag_einstein::rational::qf;

const D: [f64; 5] = [4.0, 4.0, 2.0, 2.0, 4.0];

fn so7() -> EinsteinSystem {
    build_einstein_system(&flag("B3", "1,3")).unwrap()
}

/// Hand-expanded Ricci components of the five-summand SO(7) flag.
fn hand_ricci(x: &[f64]) -> [f64; 5] {
    let c = 0.4;
    let [x1, x2, x3, x4, x5] = [x[0], x[1], x[2], x[3], x[4]];
    [
        1.0 / (2.0 * x1)
            + c / (2.0 * D[0]) * (x1 / (x2 * x3) - x2 / (x1 * x3) - x3 / (x1 * x2))
            + c / (2.0 * D[0]) * (x1 / (x4 * x5) - x4 / (x1 * x5) - x5 / (x1 * x4)),
        1.0 / (2.0 * x2)
            + c / (2.0 * D[1]) * (x2 / (x1 * x3) - x1 / (x2 * x3) - x3 / (x1 * x2))
            + c / (2.0 * D[1]) * (x2 / (x3 * x5) - x3 / (x2 * x5) - x5 / (x2 * x3))
            - c / (2.0 * D[1]) * x4 / (x2 * x2),
        1.0 / (2.0 * x3)
            + c / (2.0 * D[2]) * (x3 / (x1 * x2) - x2 / (x1 * x3) - x1 / (x2 * x3))
            + c / (2.0 * D[2]) * (x3 / (x2 * x5) - x2 / (x3 * x5) - x5 / (x2 * x3)),
        1.0 / (2.0 * x4)
            + c / (2.0 * D[3]) * (x4 / (x1 * x5) - x1 / (x4 * x5) - x5 / (x1 * x4))
            + c / (4.0 * D[3]) * (x4 / (x2 * x2) - 2.0 / x4),
        1.0 / (2.0 * x5)
            + c / (2.0 * D[4]) * (x5 / (x1 * x4) - x1 / (x4 * x5) - x4 / (x1 * x5))
            + c / (2.0 * D[4]) * (x5 / (x2 * x3) - x2 / (x3 * x5) - x3 / (x2 * x5)),
    ]
}

/// The four SO(7) differences r_k − r_{k+1} with x₁ = 1, as single fractions.
fn hand_equations(x: &[f64]) -> [f64; 4] {
    let [x2, x3, x4, x5] = [x[1], x[2], x[3], x[4]];
    let den = 20.0 * x2 * x2 * x3 * x4 * x5;
    [
        (x3 * x4 * x4 * x5
            - x2.powi(3) * (x4 + 2.0 * x4 * x5)
            - x2 * x2 * x3 * (-1.0 + x4 * x4 - 10.0 * x4 * x5 + x5 * x5)
            + x2 * x4 * (x3 * x3 - 10.0 * x3 * x5 + x5 * (2.0 + x5)))
            / den,
        (-10.0 * x2 * x2 * x5 - x3 * x4 * x5
            + 3.0 * x2.powi(3) * (1.0 + x5)
            + x2 * (10.0 * x3 * x5 - 3.0 * x3 * x3 * (1.0 + x5) + x5 * (1.0 + x5)))
            / (20.0 * x2 * x2 * x3 * x5),
        (-x3 * x4 * x4 * x5 - 2.0 * x2.powi(3) * x4 * (1.0 + x5)
            + 2.0 * x2 * x4 * (x3 * x3 - x5) * (1.0 + x5)
            + 2.0 * x2 * x2 * (5.0 * x4 * x5 + x3 * (1.0 - x4 * x4 - 4.0 * x5 + x5 * x5)))
            / den,
        (x2.powi(3) * x4
            + x3 * x4 * x4 * x5
            + x2 * x2 * x3 * (-1.0 - 10.0 * x4 + 3.0 * x4 * x4 + 8.0 * x5 - 3.0 * x5 * x5)
            + x2 * x4 * (x3 * x3 - x5 * x5))
            / den,
    ]
}

/// Closed form of H for x₁ = 1.
fn hand_h(x: &[f64]) -> f64 {
    let [x2, x3, x4, x5] = [x[1], x[2], x[3], x[4]];
    let pre = -x2 * x2 * x3 * x4 * x5.powi(3)
        / (10.0 * (x2.powi(4) * x3 * x3 * x4 * x4 * x5.powi(4)).powf(15.0 / 16.0));
    pre * (x3 * x4 * x4 * x5
        + 2.0 * x2.powi(3) * x4 * (1.0 + x5)
        + 2.0 * x2 * x4 * (-10.0 * x3 * x5 + x3 * x3 * (1.0 + x5) + x5 * (1.0 + x5))
        + 2.0
            * x2
            * x2
            * (-5.0 * x4 * x5 + x3 * (1.0 + x4 * x4 - 4.0 * x5 + x5 * x5 - 10.0 * x4 * (1.0 + x5))))
}

fn samples() -> Vec<Vec<f64>> {
    let mut v = vec![
        vec![1.0, 0.7, 1.3, 0.4, 2.2],
        vec![3.0, 2.0, 5.0, 4.0, 7.0],
        vec![1.0, 1.0, 1.0, 1.0, 1.0],
    ];
    let mut t = 0.37f64;
    for _ in 0..20 {
        let mut x = vec![1.0];
        for _ in 0..4 {
            t = (t * 7.31 + 0.113).fract();
            x.push(0.1 + 3.0 * t);
        }
        v.push(x);
    }
    v
}

#[test]
fn ricci_matches_hand_expansion() {
    let sys = so7();
    for x in samples() {
        let got = sys.ricci_components(&x).unwrap();
        for (a, b) in got.iter().zip(hand_ricci(&x)) {
            assert!(
                rel_close(*a, b, 1e-12) || (a - b).abs() < 1e-14,
                "{x:?}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn equations_match_hand_expansion() {
    let sys = so7();
    assert_eq!(sys.equations().len(), 4);
    for x in samples().into_iter().filter(|x| x[0] == 1.0) {
        let r = sys.ricci_components(&x).unwrap();
        for (k, h) in hand_equations(&x).into_iter().enumerate() {
            assert!(rel_close(r[k] - r[k + 1], h, 1e-10), "{x:?} equation {k}");
            // Cleared form differs by a positive factor only.
            assert!(sys.equations()[k].eval_f64(&x) * h > 0.0 || h.abs() < 1e-12);
        }
    }
}

#[test]
fn scale_invariant_matches_closed_form() {
    let sys = so7();
    for x in samples().into_iter().filter(|x| x[0] == 1.0) {
        let h = flag_einstein::classify::scale_invariant(&sys, &x).unwrap();
        assert!(rel_close(h, hand_h(&x), 1e-12), "{x:?}");
    }
}

#[test]
fn scalar_curvature_expansion() {
    // Distinct triples enter with weight c/2 (two orderings per term), the
    // (2,2,4) triple with c/4 on (x₄/x₂² + 2/x₄).
    let sys = so7();
    let x = [1.3, 0.6, 2.1, 0.9, 1.7];
    let got = sys.scalar_curvature(&x).unwrap();
    let c = 0.4;
    let [x1, x2, x3, x4, x5] = x;
    let expect = (0..5).map(|k| D[k] / (2.0 * x[k])).sum::<f64>()
        - c / 2.0 * (x1 / (x2 * x3) + x2 / (x1 * x3) + x3 / (x1 * x2))
        - c / 2.0 * (x1 / (x4 * x5) + x4 / (x1 * x5) + x5 / (x1 * x4))
        - c / 2.0 * (x2 / (x3 * x5) + x3 / (x2 * x5) + x5 / (x2 * x3))
        - c / 4.0 * (x4 / (x2 * x2) + 2.0 / x4);
    assert!(rel_close(got, expect, 1e-12), "{got} vs {expect}");
}

#[test]
fn kahler_einstein_data() {
    let f13 = flag("B3", "1,3");
    let f23 = flag("B3", "2,3");
    assert_eq!(einstein::koszul_form(&f13).unwrap().to_string(), "3Λ1+4Λ3");
    assert_eq!(einstein::koszul_form(&f23).unwrap().to_string(), "3Λ2+2Λ3");
    let ke = |f: &FlagManifold| -> Vec<String> {
        einstein::kahler_einstein_metric(f, &InvariantOrdering::standard(f.s()))
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect()
    };
    assert_eq!(ke(&f13), ["3", "2", "5", "4", "7"]);
    assert_eq!(ke(&f23), ["3", "1", "4", "5", "8"]);
    let full = flag("A3", "all");
    assert_eq!(
        einstein::koszul_form(&full).unwrap().to_string(),
        "2Λ1+2Λ2+2Λ3"
    );
}

#[test]
fn empty_invariant_has_empty_table() {
    let f = flag("A1", "1");
    let sys = build_einstein_system(&f).unwrap();
    assert!(sys.table().is_empty());
    assert_eq!(sys.ricci_components(&[1.0]).unwrap(), vec![0.5]);
    assert_eq!(sys.scalar_curvature(&[1.0]).unwrap(), 1.0);
    let f = flag("B4", "1");
    let sys = build_einstein_system(&f).unwrap();
    let d: usize = f.dims().iter().sum();
    assert_eq!(sys.scalar_curvature(&[1.0]).unwrap(), d as f64 / 2.0);
}

#[test]
fn cross_diagram_constants_agree() {
    let a = einstein::structure_constants(&flag("B3", "1,3")).unwrap();
    let b = einstein::structure_constants(&flag("B3", "2,3")).unwrap();
    let pair = [0usize, 2, 1, 4, 3];
    for e in a.entries() {
        let m = e.map(|i| pair[i - 1] + 1);
        assert_eq!(a.value(e[0], e[1], e[2]), b.value(m[0], m[1], m[2]));
    }
    assert_eq!(a.values().unwrap(), vec![qf(2, 5); 4].as_slice());
}
