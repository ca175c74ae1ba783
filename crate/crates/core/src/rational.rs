//! Exact rational helpers shared across the crate.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Scale a rational vector by a positive factor so that it becomes a
/// primitive integer vector. Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Q]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &gcd).collect())
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only when it lies within `tol` (relative to `max(1, |x|)`).
pub fn recognize(x: f64, max_den: i64, tol: f64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    let mut best = None;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1).and_then(|p| p.checked_add(h0))?;
        let k2 = a.checked_mul(k1).and_then(|p| p.checked_add(k0))?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        best = Some((h1, k1));
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    let (h, k) = best?;
    let approx = h as f64 / k as f64;
    if (approx - x).abs() <= tol * x.abs().max(1.0) {
        Some(qf(h, k))
    } else {
        None
    }
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_small_fractions() {
        assert_eq!(recognize(0.4, 100, 1e-9), Some(qf(2, 5)));
        assert_eq!(recognize(2.0 / 3.0, 100, 1e-9), Some(qf(2, 3)));
        assert_eq!(recognize(7.0, 100, 1e-9), Some(q(7)));
        assert_eq!(recognize(std::f64::consts::SQRT_2, 100, 1e-9), None);
        assert_eq!(recognize(1.0 / 101.0, 100, 1e-9), None);
    }

    #[test]
    fn primitive_vector_is_coprime() {
        let v = vec![qf(3, 2), q(1), qf(5, 2)];
        let p = primitive_integer_vector(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(2), BigInt::from(5)]);
        assert!(primitive_integer_vector(&[q(0), q(0)]).is_none());
    }
}
