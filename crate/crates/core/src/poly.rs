//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

use crate::rational::{format_q, to_f64, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exps: Vec<i32>, coef: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coef);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, coef: Q) {
        debug_assert_eq!(exps.len(), self.nvars);
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Q::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| to_f64(c) * e.iter().zip(x).map(|(&p, &v)| v.powi(p)).product::<f64>())
            .sum()
    }

    pub fn eval_q(&self, x: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&p, v) in e.iter().zip(x) {
                if p != 0 {
                    t *= num::pow::Pow::pow(v, p);
                }
            }
            s += t;
        }
        s
    }

    /// Set variable `var` to 1, merging like terms. The variable is kept with exponent 0.
    pub fn substitute_one(&self, var: usize) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[var] = 0;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Multiply by the monomial that makes every exponent nonnegative and the
    /// minimum exponent of each variable zero.
    pub fn clear_denominators(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let shift: Vec<i32> = (0..self.nvars)
            .map(|v| self.terms.keys().map(|e| e[v]).min().unwrap())
            .collect();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(
                e.iter().zip(&shift).map(|(a, b)| a - b).collect(),
                c.clone(),
            );
        }
        out
    }

    /// Positive rescaling to coprime integer coefficients.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let gcd = self.terms.values().fold(BigInt::zero(), |a, c| {
            a.gcd(&(c * Q::from_integer(lcm.clone())).to_integer())
        });
        self.scale(&Q::new(lcm, gcd))
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] != 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * Q::from_integer(BigInt::from(e[var])));
            }
        }
        out
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (to_f64(c), e.clone()))
                .collect(),
        }
    }

    pub fn export(&self) -> Vec<MonomialExport> {
        self.terms
            .iter()
            .map(|(e, c)| MonomialExport {
                exponents: e.clone(),
                coefficient: format_q(c),
            })
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, p)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialExport {
    pub exponents: Vec<i32>,
    pub coefficient: String,
}

/// Floating-point form of a polynomial for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<i32>)>,
}

impl CompiledPoly {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * e.iter().zip(x).map(|(&p, &v)| v.powi(p)).product::<f64>())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn clear_and_normalize() {
        // 1/(2 x1) - 3/(4 x2^2) + x1/x2
        let mut p = Polynomial::zero(2);
        p.add_term(vec![-1, 0], qf(1, 2));
        p.add_term(vec![0, -2], qf(-3, 4));
        p.add_term(vec![1, -1], q(1));
        let c = p.clear_denominators().primitive();
        let mut want = Polynomial::zero(2);
        want.add_term(vec![0, 2], q(2));
        want.add_term(vec![1, 0], q(-3));
        want.add_term(vec![2, 1], q(4));
        assert_eq!(c, want);
        assert_eq!(c.to_string(), "4*x1^2*x2 - 3*x1 + 2*x2^2");
    }

    #[test]
    fn substitution_merges_terms() {
        let mut p = Polynomial::zero(2);
        p.add_term(vec![1, 1], q(1));
        p.add_term(vec![0, 1], q(-1));
        assert!(p.substitute_one(0).is_zero());
    }

    #[test]
    fn evaluation_and_derivative_agree() {
        let mut p = Polynomial::zero(2);
        p.add_term(vec![2, -1], q(3));
        p.add_term(vec![0, 1], qf(1, 2));
        let x = [1.5, 0.75];
        assert!((p.eval_f64(&x) - p.compile().eval(&x)).abs() < 1e-14);
        let xq = [qf(3, 2), qf(3, 4)];
        assert_eq!(to_f64(&p.eval_q(&xq)), p.eval_f64(&x));
        let h = 1e-6;
        let fd = (p.eval_f64(&[x[0] + h, x[1]]) - p.eval_f64(&[x[0] - h, x[1]])) / (2.0 * h);
        assert!((p.derivative(0).eval_f64(&x) - fd).abs() < 1e-6);
    }
}
