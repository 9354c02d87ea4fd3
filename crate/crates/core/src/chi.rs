//! Euler characteristics of polynomial-count sets.
//!
//! A counter is evaluated at the smallest primes, the counting polynomial is
//! interpolated, one further prime is used as a control, and the polynomial is
//! evaluated at `q = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::primes;
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountPoly {
    /// Coefficients, constant term first.
    #[serde(with = "crate::report::text::vec")]
    pub coeffs: Vec<BigInt>,
    pub bound: usize,
    pub primes: Vec<u64>,
    pub control: u64,
}

impl CountPoly {
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Value at `q = 1`.
    pub fn chi(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Whether the coefficients agree with `expected` (constant term first, trailing zeros ignored).
    pub fn equals(&self, expected: &[i64]) -> bool {
        let n = self.coeffs.len().max(expected.len());
        (0..n).all(|i| {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = BigInt::from(expected.get(i).copied().unwrap_or(0));
            a == b
        })
    }
}

impl fmt::Display for CountPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let coef = if k > 0 && a.is_one() { String::new() } else { a.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            write!(f, "{sign}{coef}{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Sample primes for a degree bound: `bound + 1` samples and one control.
pub fn sample_primes(bound: usize, limits: &Limits) -> Result<(Vec<u64>, u64)> {
    let ps: Vec<u64> = primes().take(bound + 2).collect();
    let control = *ps.last().expect("nonempty");
    if control > limits.max_prime {
        return Err(Error::guard("interpolation sample prime", control, limits.max_prime));
    }
    Ok((ps[..bound + 1].to_vec(), control))
}

/// Coefficients of the interpolating polynomial through `(x_k, y_k)`.
fn lagrange(xs: &[u64], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for k in 0..n {
        // basis polynomial l_k
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j == k {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(xj));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[k])) - xj;
        }
        let scale = BigRational::from_integer(ys[k].clone()) / denom;
        for (o, c) in out.iter_mut().zip(basis) {
            *o += c * &scale;
        }
    }
    out
}

/// Interpolate `counter` as a polynomial of degree at most `bound` in `q`.
pub fn interpolate<F>(counter: F, bound: usize, limits: &Limits) -> Result<CountPoly>
where
    F: Fn(u64) -> Result<BigInt> + Sync,
{
    let (ps, control) = sample_primes(bound, limits)?;
    let all: Vec<u64> = ps.iter().copied().chain(std::iter::once(control)).collect();
    let values: Vec<BigInt> = all.par_iter().map(|&p| counter(p)).collect::<Result<_>>()?;
    from_samples(&ps, &values[..ps.len()], control, &values[ps.len()], bound)
}

/// Build a `CountPoly` from precomputed samples plus one control value.
pub fn from_samples(ps: &[u64], ys: &[BigInt], control: u64, control_value: &BigInt, bound: usize) -> Result<CountPoly> {
    let coeffs = lagrange(ps, ys);
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if !c.is_integer() {
            return Err(Error::NotPolynomial { bound, detail: format!("non-integral coefficient {c}") });
        }
        ints.push(c.to_integer());
    }
    while ints.len() > 1 && ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let poly = CountPoly { coeffs: ints, bound, primes: ps.to_vec(), control };
    let predicted = poly.eval(&BigInt::from(control));
    if &predicted != control_value {
        return Err(Error::NotPolynomial {
            bound,
            detail: format!("control prime {control}: predicted {predicted}, counted {control_value}"),
        });
    }
    Ok(poly)
}

/// χ of a set counted by `counter`.
pub fn chi<F>(counter: F, bound: usize, limits: &Limits) -> Result<BigInt>
where
    F: Fn(u64) -> Result<BigInt> + Sync,
{
    Ok(interpolate(counter, bound, limits)?.chi())
}

/// Counting polynomial of the projectivization of a cone: `(count − [apex]) / (q − 1)`.
pub fn projective_poly<F>(counter: F, zero_included: bool, bound: usize, limits: &Limits) -> Result<CountPoly>
where
    F: Fn(u64) -> Result<BigInt> + Sync,
{
    let pbound = bound.saturating_sub(1);
    interpolate(
        |p| {
            let c = counter(p)? - BigInt::from(u8::from(zero_included));
            let qm1 = BigInt::from(p - 1);
            if !(&c % &qm1).is_zero() {
                return Err(Error::NonFree(format!("count {c} at q={p} is not divisible by q-1")));
            }
            Ok(c / qm1)
        },
        pbound,
        limits,
    )
}

pub fn projective_chi<F>(counter: F, zero_included: bool, bound: usize, limits: &Limits) -> Result<BigInt>
where
    F: Fn(u64) -> Result<BigInt> + Sync,
{
    Ok(projective_poly(counter, zero_included, bound, limits)?.chi())
}

/// Interpolate every entry of a table of counts computed prime by prime.
///
/// Keys missing at some prime count as zero there.
pub fn interpolate_map<K, F>(counter: F, bound: usize, limits: &Limits) -> Result<BTreeMap<K, CountPoly>>
where
    K: Ord + Clone + Send,
    F: Fn(u64) -> Result<BTreeMap<K, BigInt>> + Sync,
{
    let (ps, control) = sample_primes(bound, limits)?;
    let all: Vec<u64> = ps.iter().copied().chain(std::iter::once(control)).collect();
    let tables: Vec<BTreeMap<K, BigInt>> = all.par_iter().map(|&p| counter(p)).collect::<Result<_>>()?;
    let mut keys: Vec<K> = tables.iter().flat_map(|t| t.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut out = BTreeMap::new();
    for k in keys {
        let ys: Vec<BigInt> = tables.iter().map(|t| t.get(&k).cloned().unwrap_or_default()).collect();
        out.insert(k.clone(), from_samples(&ps, &ys[..ps.len()], control, &ys[ps.len()], bound)?);
    }
    Ok(out)
}

/// Pass from a cone to its projectivization: remove the apex from the entry holding it and divide by `q − 1`.
///
/// With `apex = None` the counts are taken to exclude the apex already.
pub fn projectivize<K: Ord>(mut counts: BTreeMap<K, BigInt>, apex: Option<&K>, p: u64) -> Result<BTreeMap<K, BigInt>> {
    if let Some(c) = apex.and_then(|a| counts.get_mut(a)) {
        *c -= 1;
    }
    let qm1 = BigInt::from(p - 1);
    counts
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            if !(&c % &qm1).is_zero() {
                return Err(Error::NonFree(format!("count {c} at q={p} is not divisible by q-1")));
            }
            Ok((k, c / &qm1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn interpolation_examples() {
        let p = interpolate(|q| Ok(BigInt::from(q + 1)), 1, &lim()).unwrap();
        assert!(p.equals(&[1, 1]));
        assert_eq!(p.primes, vec![2, 3]);
        assert_eq!(p.control, 5);
        let c = interpolate(|_| Ok(BigInt::one()), 0, &lim()).unwrap();
        assert!(c.equals(&[1]));
        let lines = interpolate(|q| Ok(BigInt::from(q * q + q + 1)), 2, &lim()).unwrap();
        assert_eq!(lines.chi(), BigInt::from(3));
        assert_eq!(lines.to_string(), "q^2+q+1");
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(|q| Ok(BigInt::from(q + 1)), 1, &lim()).unwrap(), BigInt::from(2));
        assert_eq!(chi(|q| Ok(BigInt::from(q * q)), 2, &lim()).unwrap(), BigInt::from(1));
        let p = interpolate(|q| Ok(BigInt::from(q * (q * q - 1))), 3, &lim()).unwrap();
        assert_eq!(p.chi(), BigInt::zero());
        assert_eq!(p.to_string(), "q^3-q");
    }

    #[test]
    fn projective_examples() {
        assert_eq!(projective_chi(|q| Ok(BigInt::from(q * q)), true, 2, &lim()).unwrap(), BigInt::from(2));
        assert_eq!(projective_chi(|_| Ok(BigInt::one()), true, 0, &lim()).unwrap(), BigInt::zero());
        assert!(matches!(projective_chi(|q| Ok(BigInt::from(q)), false, 1, &lim()), Err(Error::NonFree(_))));
    }

    #[test]
    fn tables_interpolate_per_entry() {
        let t = interpolate_map(
            |q| {
                let mut m = BTreeMap::new();
                m.insert("a", BigInt::from(q * q));
                if q > 2 {
                    m.insert("b", BigInt::from(q - 2));
                }
                Ok(m)
            },
            2,
            &lim(),
        );
        // "b" counts q - 2 at q > 2 and 0 at q = 2: still polynomial
        let t = t.unwrap();
        assert!(t["a"].equals(&[0, 0, 1]));
        assert!(t["b"].equals(&[-2, 1]));
        let pm = projectivize(BTreeMap::from([(0, BigInt::from(9)), (1, BigInt::from(8))]), Some(&0), 3).unwrap();
        assert_eq!(pm[&0], BigInt::from(4));
    }

    #[test]
    fn detects_non_polynomial_counts() {
        let r = interpolate(|q| Ok(BigInt::from(q).pow(3)), 1, &lim());
        assert!(matches!(r, Err(Error::NotPolynomial { .. })));
        let r = interpolate(|q| Ok(BigInt::from(q % 3)), 1, &lim());
        assert!(r.is_err());
    }
}
