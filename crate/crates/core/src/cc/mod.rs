//! The Caldero–Chapoton map and the cluster multiplication identities.

mod assoc;
mod mult;

pub use assoc::{higher_assoc_check, higher_assoc_sweep, AssocSide};
pub use mult::{ck_check, cluster_mult_check, ext_shadow_check, MultReport, MultTerm};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::chi::chi;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::limits::Limits;
use crate::object::{Decorated, ModSpec};
use crate::quiver::{mat_vec, DimVector, Quiver};
use crate::report::Comparison;
use crate::rep::{ar_translate, ext1_space, for_each_submodule, middle_term, variety_dimension, Rep};

/// Caldero–Chapoton map of a hereditary quiver, with Grassmannian Euler characteristics counted over prime fields.
#[derive(Debug)]
pub struct CcMap {
    quiver: Arc<Quiver>,
    limits: Limits,
    cache: Mutex<HashMap<ModSpec, LaurentPoly>>,
}

/// Which of the two equivalent expansions to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcForm {
    /// Exponents read off the arrows.
    Product,
    /// Exponents `Φe − d + e` paired against the simples through the Euler form.
    Coxeter,
}

impl CcMap {
    pub fn new(quiver: Arc<Quiver>, limits: Limits) -> Result<Self> {
        if !quiver.is_hereditary() {
            return Err(Error::Precondition("the cluster character needs a hereditary quiver".into()));
        }
        Ok(CcMap { quiver, limits, cache: Mutex::default() })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn nvars(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// `χ(Gr_e(M))` for the module produced by `realize` at each prime.
    pub fn grassmannian_chi<F>(&self, realize: &F, d: &DimVector, e: &DimVector) -> Result<BigInt>
    where
        F: Fn(u64) -> Result<Rep> + Sync,
    {
        chi(
            |p| {
                let m = realize(p)?;
                let mut count = 0u64;
                for_each_submodule(&m, e, &self.limits, |_| {
                    count += 1;
                    Ok(())
                })?;
                Ok(BigInt::from(count))
            },
            variety_dimension(d, e),
            &self.limits,
        )
    }

    fn exponent(&self, form: CcForm, d: &DimVector, e: &DimVector) -> Result<Vec<i64>> {
        let n = self.nvars();
        let di: Vec<i64> = d.iter().map(|&x| x as i64).collect();
        let ei: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        Ok(match form {
            CcForm::Product => {
                let mut out: Vec<i64> = di.iter().map(|x| -x).collect();
                for a in self.quiver.arrows() {
                    out[a.target] += ei[a.source];
                    out[a.source] += di[a.target] - ei[a.target];
                }
                out
            }
            CcForm::Coxeter => {
                let phi_e = mat_vec(&self.quiver.coxeter_matrix()?, &ei);
                let v: Vec<i64> = (0..n).map(|i| phi_e[i] - di[i] + ei[i]).collect();
                mat_vec(&self.quiver.euler_matrix()?, &v)
            }
        })
    }

    /// `X_M` for the module produced by `realize`, in the chosen form.
    pub fn cc_of<F>(&self, realize: F, form: CcForm) -> Result<LaurentPoly>
    where
        F: Fn(u64) -> Result<Rep> + Sync,
    {
        let d = realize(2)?.dims().clone();
        let mut out = LaurentPoly::zero(self.nvars());
        for e in d.below() {
            let c = self.grassmannian_chi(&realize, &d, &e)?;
            if c != BigInt::from(0) {
                out = &out + &LaurentPoly::monomial(self.exponent(form, &d, &e)?, c);
            }
        }
        Ok(out)
    }

    pub fn cc_module(&self, m: &ModSpec) -> Result<LaurentPoly> {
        if let Some(x) = self.cache.lock().expect("poisoned").get(m) {
            return Ok(x.clone());
        }
        let x = match m {
            ModSpec::Sum(parts) => {
                let mut acc = LaurentPoly::one(self.nvars());
                for part in parts {
                    acc = &acc * &self.cc_module(part)?;
                }
                acc
            }
            other => self.cc_of(|p| other.realize(&self.quiver, p), CcForm::Product)?,
        };
        self.cache.lock().expect("poisoned").insert(m.clone(), x.clone());
        Ok(x)
    }

    /// `X_{M ⊕ P[1]} = X_M · Π x_i`.
    pub fn cc(&self, obj: &Decorated) -> Result<LaurentPoly> {
        let mut x = self.cc_module(&obj.module)?;
        for &i in &obj.shifted {
            if i >= self.nvars() {
                return Err(Error::Input(format!("P{}[1] is not a vertex", i + 1)));
            }
            x = &x * &LaurentPoly::var(self.nvars(), i);
        }
        Ok(x)
    }

    /// Both expansions of `X_M` agree.
    pub fn forms_agree(&self, m: &ModSpec) -> Result<Comparison> {
        let realize = |p| m.realize(&self.quiver, p);
        let a = self.cc_of(realize, CcForm::Product)?;
        let b = self.cc_of(realize, CcForm::Coxeter)?;
        Ok(Comparison::new(format!("X_{m} product vs Coxeter form"), a, b))
    }

    fn var_power(&self, exps: Vec<i64>) -> LaurentPoly {
        LaurentPoly::monomial(exps, BigInt::from(1))
    }

    /// `X_M X_{τM} = 1 + X_E` for the almost split sequence `0 → τM → E → M → 0`.
    pub fn ar_identity_check(&self, m: &ModSpec) -> Result<Comparison> {
        let tau = |p| ar_translate(&m.realize(&self.quiver, p)?);
        let middle = |p| {
            let mm = m.realize(&self.quiver, p)?;
            let tm = ar_translate(&mm)?;
            let ext = ext1_space(&mm, &tm);
            if ext.dim() != 1 {
                return Err(Error::Precondition(format!(
                    "Ext¹({m}, τ{m}) has dimension {}; the almost split sequence is not the unique class",
                    ext.dim()
                )));
            }
            Ok(middle_term(&mm, &tm, &ext.combination(&[1])))
        };
        if tau(2)?.is_zero() {
            return Err(Error::Precondition(format!("{m} is projective")));
        }
        let xm = self.cc_module(m)?;
        let lhs = &xm * &self.cc_of(tau, CcForm::Product)?;
        let rhs = &LaurentPoly::one(self.nvars()) + &self.cc_of(middle, CcForm::Product)?;
        Ok(Comparison::new(format!("X_{m} X_τ{m} = 1 + X_E"), lhs, rhs))
    }

    /// `X_{P_i} x_i = 1 + X_{rad P_i} Π_{j→i} x_j` and `X_{I_i} x_i = 1 + X_{I_i/soc} Π_{i→j} x_j`.
    pub fn proj_identity_check(&self, i: usize) -> Result<[Comparison; 2]> {
        let n = self.nvars();
        if i >= n {
            return Err(Error::Input(format!("vertex {} out of range", i + 1)));
        }
        let xi = LaurentPoly::var(n, i);
        let one = LaurentPoly::one(n);
        let into: Vec<i64> = (0..n).map(|j| self.quiver.arrow_count(j, i) as i64).collect();
        let out_of: Vec<i64> = (0..n).map(|j| self.quiver.arrow_count(i, j) as i64).collect();

        let proj = |p| Rep::projective(self.quiver.clone(), p, i);
        let rad = |p| {
            let m = Rep::projective(self.quiver.clone(), p, i)?;
            Ok(m.sub_rep(&m.rad_soc_top().0))
        };
        let lhs = &self.cc_of(proj, CcForm::Product)? * &xi;
        let rhs = &one + &(&self.cc_of(rad, CcForm::Product)? * &self.var_power(into));
        let pc = Comparison::new(format!("X_P{} x{} = 1 + X_radP{}", i + 1, i + 1, i + 1), lhs, rhs);

        let inj = |p| Rep::injective(self.quiver.clone(), p, i);
        let top = |p| {
            let m = Rep::injective(self.quiver.clone(), p, i)?;
            Ok(m.quotient_rep(&m.rad_soc_top().1))
        };
        let lhs = &self.cc_of(inj, CcForm::Product)? * &xi;
        let rhs = &one + &(&self.cc_of(top, CcForm::Product)? * &self.var_power(out_of));
        let ic = Comparison::new(format!("X_I{} x{} = 1 + X_(I{}/soc)", i + 1, i + 1, i + 1), lhs, rhs);
        Ok([pc, ic])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> CcMap {
        let q = Quiver::new(3, vec![(0, 1), (2, 1)], vec![]).unwrap();
        CcMap::new(Arc::new(q), Limits::default()).unwrap()
    }

    fn cc(m: &CcMap, s: &str) -> String {
        m.cc(&Decorated::parse(s).unwrap()).unwrap().to_string()
    }

    #[test]
    fn a3_values() {
        let m = a3();
        assert_eq!(cc(&m, "S2"), "(x1*x3+1)/x2");
        assert_eq!(cc(&m, "S1"), "(x2+1)/x1");
        assert_eq!(cc(&m, "P1[1]"), "x1");
        let i2 = m.cc(&Decorated::parse("thin(1,2,3)").unwrap()).unwrap();
        let expected = LaurentPoly::from_terms(
            3,
            [
                (vec![-1, -1, -1], BigInt::from(1)),
                (vec![-1, 0, -1], BigInt::from(2)),
                (vec![-1, 1, -1], BigInt::from(1)),
                (vec![0, -1, 0], BigInt::from(1)),
            ],
        );
        assert_eq!(i2, expected);
        for s in ["S1", "S2", "thin(1,2)", "thin(2,3)", "thin(1,2,3)"] {
            assert!(m.forms_agree(&ModSpec::parse(s).unwrap()).unwrap().holds);
        }
    }

    #[test]
    fn a3_identities() {
        let m = a3();
        for s in ["S1", "S3", "thin(1,2,3)"] {
            let c = m.ar_identity_check(&ModSpec::parse(s).unwrap()).unwrap();
            assert!(c.holds, "{c}");
        }
        for i in 0..3 {
            for c in m.proj_identity_check(i).unwrap() {
                assert!(c.holds, "{c}");
            }
        }
    }

    #[test]
    fn kronecker_simple() {
        let m = CcMap::new(Arc::new(Quiver::kronecker()), Limits::default()).unwrap();
        assert_eq!(cc(&m, "S1"), "(x2^2+1)/x1");
        assert_eq!(cc(&m, "S2"), "(x1^2+1)/x2");
        assert!(m.forms_agree(&ModSpec::parse("u(1)").unwrap()).unwrap().holds);
    }
}
