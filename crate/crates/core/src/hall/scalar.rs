use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `a + b·v` with rational `a, b` and `v² = p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistScalar {
    #[serde(with = "crate::report::text")]
    pub a: BigRational,
    #[serde(with = "crate::report::text")]
    pub b: BigRational,
    pub p: u64,
}

impl TwistScalar {
    pub fn new(a: BigRational, b: BigRational, p: u64) -> Self {
        TwistScalar { a, b, p }
    }

    pub fn rational(a: BigRational, p: u64) -> Self {
        TwistScalar { a, b: BigRational::zero(), p }
    }

    pub fn int(a: i64, p: u64) -> Self {
        Self::rational(BigRational::from_integer(a.into()), p)
    }

    pub fn zero(p: u64) -> Self {
        Self::int(0, p)
    }

    pub fn one(p: u64) -> Self {
        Self::int(1, p)
    }

    pub fn v(p: u64) -> Self {
        TwistScalar { a: BigRational::zero(), b: BigRational::one(), p }
    }

    /// `v^k` for any integer `k`; `v⁻¹ = v/p`.
    pub fn v_pow(k: i64, p: u64) -> Self {
        let pr = BigRational::from_integer(BigInt::from(p));
        let half = k.div_euclid(2);
        let base = if half >= 0 { pr.pow(half as i32) } else { BigRational::one() / pr.pow((-half) as i32) };
        if k.rem_euclid(2) == 0 {
            Self::rational(base, p)
        } else {
            TwistScalar { a: BigRational::zero(), b: base, p }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational value when `b = 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        TwistScalar { a: &self.a * r, b: &self.b * r, p: self.p }
    }
}

impl Add for &TwistScalar {
    type Output = TwistScalar;
    fn add(self, o: &TwistScalar) -> TwistScalar {
        debug_assert_eq!(self.p, o.p);
        TwistScalar { a: &self.a + &o.a, b: &self.b + &o.b, p: self.p }
    }
}

impl Sub for &TwistScalar {
    type Output = TwistScalar;
    fn sub(self, o: &TwistScalar) -> TwistScalar {
        TwistScalar { a: &self.a - &o.a, b: &self.b - &o.b, p: self.p }
    }
}

impl Neg for &TwistScalar {
    type Output = TwistScalar;
    fn neg(self) -> TwistScalar {
        TwistScalar { a: -&self.a, b: -&self.b, p: self.p }
    }
}

impl Mul for &TwistScalar {
    type Output = TwistScalar;
    fn mul(self, o: &TwistScalar) -> TwistScalar {
        debug_assert_eq!(self.p, o.p);
        let p = BigRational::from_integer(BigInt::from(self.p));
        TwistScalar { a: &self.a * &o.a + &self.b * &o.b * p, b: &self.a * &o.b + &self.b * &o.a, p: self.p }
    }
}

impl fmt::Display for TwistScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}v", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}v", self.a, self.b.abs())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_with_v_squared_p() {
        for p in [2, 3] {
            let v = TwistScalar::v(p);
            assert_eq!(&v * &v, TwistScalar::int(p as i64, p));
            let vinv = TwistScalar::v_pow(-1, p);
            assert_eq!(&v * &vinv, TwistScalar::one(p));
            assert_eq!(TwistScalar::v_pow(3, p), &(&v * &v) * &v);
            assert_eq!(TwistScalar::v_pow(-2, p), &vinv * &vinv);
        }
        assert_eq!(TwistScalar::v_pow(-1, 2).to_string(), "1/2v");
    }
}
