//! Multivariate Laurent polynomials with integer coefficients and quotients of them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A Laurent polynomial in `n` variables; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Wire", try_from = "Wire")]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// Serialized form: the display string plus `(exponents, coefficient)` pairs.
#[derive(Serialize, Deserialize)]
struct Wire {
    n: usize,
    text: String,
    terms: Vec<(Vec<i64>, String)>,
}

impl From<LaurentPoly> for Wire {
    fn from(p: LaurentPoly) -> Self {
        Wire { n: p.n, text: p.to_string(), terms: p.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect() }
    }
}

impl TryFrom<Wire> for LaurentPoly {
    type Error = String;

    fn try_from(w: Wire) -> Result<Self, String> {
        let mut terms = Vec::with_capacity(w.terms.len());
        for (e, c) in w.terms {
            if e.len() != w.n {
                return Err(format!("exponent vector {e:?} has the wrong length"));
            }
            terms.push((e, c.parse::<BigInt>().map_err(|err| format!("coefficient {c}: {err}"))?));
        }
        Ok(LaurentPoly::from_terms(w.n, terms))
    }
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigInt::one())
    }

    pub fn constant(n: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; n], c)
    }

    /// `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<i64>, c: BigInt) -> Self {
        let n = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector of wrong length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponents, coefficient)` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    /// Multiply by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// Componentwise minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m = vec![i64::MAX; self.n];
        for e in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m.iter().map(|&v| if v == i64::MAX { 0 } else { v }).collect()
    }

    /// Whether every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&v| v >= 0))
    }

    /// Exact quotient `self / d` in the Laurent ring, if it exists with integer coefficients.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.n, d.n);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.n));
        }
        let sf = self.min_exponents();
        let sd = d.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let f = self.shift(&neg(&sf));
        let g = d.shift(&neg(&sd));
        let q = poly_div(&f, &g)?;
        let back: Vec<i64> = sf.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Some(q.shift(&back))
    }

    /// Evaluate at integer points (all variables non-zero).
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (xi, &k) in x.iter().zip(e) {
                let p = xi.pow(k.unsigned_abs() as i32);
                t = if k >= 0 { t * p } else { t / p };
            }
            acc += t;
        }
        acc
    }
}

/// Exact division of polynomials with non-negative exponents (lex order).
fn poly_div(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    let n = f.n;
    let mut r: BTreeMap<Vec<i64>, BigRational> =
        f.terms.iter().map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone()))).collect();
    let (lg_e, lg_c) = g.terms.iter().next_back().expect("nonzero divisor");
    let lg_c = BigRational::from_integer(lg_c.clone());
    let mut q = LaurentPoly::zero(n);
    while let Some((le, lc)) = r.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let t_e: Vec<i64> = le.iter().zip(lg_e).map(|(a, b)| a - b).collect();
        if t_e.iter().any(|&v| v < 0) {
            return None;
        }
        let t_c = lc / &lg_c;
        if !t_c.is_integer() {
            return None;
        }
        for (ge, gc) in &g.terms {
            let e: Vec<i64> = ge.iter().zip(&t_e).map(|(a, b)| a + b).collect();
            let v = r.entry(e.clone()).or_insert_with(BigRational::zero);
            *v -= &t_c * BigRational::from_integer(gc.clone());
            if v.is_zero() {
                r.remove(&e);
            }
        }
        q.add_term(t_e, t_c.to_integer());
    }
    Some(q)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, o.n);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, o.n);
        let mut r = LaurentPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{k}", i + 1)?;
        }
    }
    Ok(())
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut terms: Vec<(&Vec<i64>, &BigInt)> = p.terms.iter().collect();
    terms.sort_by(|a, b| {
        let da: i64 = a.0.iter().sum();
        let db: i64 = b.0.iter().sum();
        db.cmp(&da).then_with(|| b.0.cmp(a.0))
    });
    for (k, (e, c)) in terms.into_iter().enumerate() {
        let constant = e.iter().all(|&v| v == 0);
        if c.is_negative() {
            write!(f, "-")?;
        } else if k > 0 {
            write!(f, "+")?;
        }
        let a = c.abs();
        if constant {
            write!(f, "{a}")?;
        } else {
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write_monomial(f, e)?;
        }
    }
    Ok(())
}

/// Written as `numerator/denominator` with a monomial denominator, e.g. `(x1*x3+1)/x2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den: Vec<i64> = self.min_exponents().iter().map(|&v| (-v).max(0)).collect();
        let num = self.shift(&den);
        if den.iter().all(|&v| v == 0) {
            return write_poly(f, &num);
        }
        if num.len() > 1 {
            write!(f, "(")?;
            write_poly(f, &num)?;
            write!(f, ")")?;
        } else {
            write_poly(f, &num)?;
        }
        write!(f, "/")?;
        let vars = den.iter().filter(|&&v| v != 0).count();
        if vars > 1 {
            write!(f, "(")?;
            write_monomial(f, &den)?;
            write!(f, ")")
        } else {
            write_monomial(f, &den)
        }
    }
}

/// A quotient of Laurent polynomials, reduced only on demand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalExpr {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalExpr {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RationalExpr { num, den }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        let n = p.nvars();
        RationalExpr { num: p, den: LaurentPoly::one(n) }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::from_laurent(LaurentPoly::var(n, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn add(&self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// The Laurent normal form, when the quotient is a Laurent polynomial.
    pub fn laurent_check(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den)
    }

    /// Replace by the Laurent normal form when it exists.
    pub fn normalized(&self) -> RationalExpr {
        match self.laurent_check() {
            Some(p) => Self::from_laurent(p),
            None => self.clone(),
        }
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RationalExpr {}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.laurent_check() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> LaurentPoly {
        LaurentPoly::constant(n, BigInt::from(v))
    }

    #[test]
    fn display_forms() {
        let n = 3;
        let s2 = (&(&x(n, 0) * &x(n, 2)) + &c(n, 1)).div_exact(&x(n, 1)).unwrap();
        assert_eq!(s2.to_string(), "(x1*x3+1)/x2");
        let p = &(&x(n, 0) * &x(n, 1)) + &c(n, 2);
        assert_eq!(p.to_string(), "x1*x2+2");
        let m = LaurentPoly::monomial(vec![-1, -1, 0], BigInt::from(2));
        assert_eq!(m.to_string(), "2/(x1*x2)");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert_eq!((-&x(2, 1).pow(2)).to_string(), "-x2^2");
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let f = &(&x(n, 0) + &c(n, 1)) * &(&x(n, 1) + &c(n, 1));
        assert_eq!(f.div_exact(&(&x(n, 1) + &c(n, 1))).unwrap(), &x(n, 0) + &c(n, 1));
        let g = &x(n, 0) + &x(n, 1);
        assert!(g.div_exact(&(&x(n, 0) + &c(n, 1))).is_none());
        assert!(c(n, 1).div_exact(&c(n, 2)).is_none());
        let two = RationalExpr::new(c(1, 2), x(1, 0));
        assert_eq!(two.laurent_check().unwrap().to_string(), "2/x1");
    }

    #[test]
    fn rational_equality() {
        let n = 2;
        let a = RationalExpr::new(&x(n, 1) + &c(n, 1), x(n, 0));
        let b = RationalExpr::new(&(&x(n, 1) + &c(n, 1)) * &x(n, 1), &x(n, 0) * &x(n, 1));
        assert_eq!(a, b);
        assert!(RationalExpr::new(&x(n, 0) + &x(n, 1), &x(n, 0) + &c(n, 1)).laurent_check().is_none());
    }
}
