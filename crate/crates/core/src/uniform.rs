//! Counts attached to catalog classes, sampled over several primes and
//! interpolated into counting polynomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::catalog::{Catalog, GradeTable, UniformClass};
use crate::chi::{interpolate_map, projectivize, CountPoly};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::ModSpec;
use crate::quiver::DimVector;
use crate::rep::{ar_translate, ext1_space, for_each_submodule, hom_space, middle_term, variety_dimension, Rep};

/// A catalog class: its grade and its index inside the grade.
pub type ClassKey = (DimVector, usize);

type HallTable = BTreeMap<(ClassKey, ClassKey), CountPoly>;

#[derive(Debug)]
pub struct Uniform {
    catalog: Arc<Catalog>,
    limits: Limits,
    tables: Mutex<HashMap<(DimVector, u64), Arc<GradeTable>>>,
    hall: Mutex<HashMap<ClassKey, Arc<HallTable>>>,
}

impl Uniform {
    pub fn new(catalog: Arc<Catalog>, limits: Limits) -> Self {
        Uniform { catalog, limits, tables: Mutex::default(), hall: Mutex::default() }
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Validated classifier for grade `d` over `F_p`.
    pub fn table(&self, d: &DimVector, p: u64) -> Result<Arc<GradeTable>> {
        if let Some(t) = self.tables.lock().expect("poisoned").get(&(d.clone(), p)) {
            return Ok(t.clone());
        }
        let mut t = self.catalog.grade_table(d, p)?;
        if !self.catalog.validate(d, p, &self.limits)? {
            return Err(Error::Invariant(format!("catalog classes of grade {d} do not partition the variety over F_{p}")));
        }
        t.trust_fingerprints();
        let t = Arc::new(t);
        self.tables.lock().expect("poisoned").insert((d.clone(), p), t.clone());
        Ok(t)
    }

    pub fn classify(&self, m: &Rep) -> Result<ClassKey> {
        let t = self.table(m.dims(), m.p())?;
        Ok((m.dims().clone(), t.classify(m, &self.limits)?))
    }

    pub fn class(&self, key: &ClassKey) -> Result<UniformClass> {
        self.catalog
            .classes(&key.0)?
            .into_iter()
            .nth(key.1)
            .ok_or_else(|| Error::Input(format!("no class {} in grade {}", key.1, key.0)))
    }

    pub fn name(&self, key: &ClassKey) -> String {
        self.class(key).map(|c| c.name).unwrap_or_else(|_| format!("{}#{}", key.0, key.1))
    }

    /// The representative of a class over `F_p` (for a family, the member `u(1:0)`).
    pub fn realize(&self, key: &ClassKey, p: u64) -> Result<Rep> {
        self.class(key)?.spec.realize(self.catalog.quiver(), p)
    }

    /// Class of a module descriptor.
    pub fn lookup(&self, descriptor: &str) -> Result<ClassKey> {
        let spec = ModSpec::parse(descriptor)?;
        self.classify(&spec.realize(self.catalog.quiver(), 2)?)
    }

    pub fn classes(&self, d: &DimVector) -> Result<Vec<ClassKey>> {
        Ok((0..self.catalog.classes(d)?.len()).map(|i| (d.clone(), i)).collect())
    }

    /// Submodule counts of `L` by `(class of L/U, class of U)`.
    pub fn hall_table(&self, l: &ClassKey) -> Result<Arc<HallTable>> {
        if let Some(t) = self.hall.lock().expect("poisoned").get(l) {
            return Ok(t.clone());
        }
        let d = &l.0;
        let bound = d.below().iter().map(|e| variety_dimension(d, e)).max().unwrap_or(0);
        let table = interpolate_map(
            |p| {
                let rep = self.realize(l, p)?;
                let mut out: BTreeMap<(ClassKey, ClassKey), BigInt> = BTreeMap::new();
                for e in d.below() {
                    for_each_submodule(&rep, &e, &self.limits, |t| {
                        let y = self.classify(&rep.sub_rep(t))?;
                        let x = self.classify(&rep.quotient_rep(t))?;
                        *out.entry((x, y)).or_default() += 1;
                        Ok(())
                    })?;
                }
                Ok(out)
            },
            bound,
            &self.limits,
        )?;
        let table = Arc::new(table);
        self.hall.lock().expect("poisoned").insert(l.clone(), table.clone());
        Ok(table)
    }

    /// `χ`-valued Hall number `g^L_{XY}`.
    pub fn chi_hall(&self, x: &ClassKey, y: &ClassKey, l: &ClassKey) -> Result<BigInt> {
        if (&x.0 + &y.0) != l.0 {
            return Ok(BigInt::from(0));
        }
        Ok(self.hall_table(l)?.get(&(x.clone(), y.clone())).map(CountPoly::chi).unwrap_or_default())
    }

    fn ext_counts(&self, x: &ClassKey, y: &ClassKey, p: u64) -> Result<(BTreeMap<ClassKey, BigInt>, ClassKey)> {
        let (mx, my) = (self.realize(x, p)?, self.realize(y, p)?);
        let ext = ext1_space(&mx, &my);
        let mut out: BTreeMap<ClassKey, BigInt> = BTreeMap::new();
        for d in ext.classes(self.limits.strata)? {
            *out.entry(self.classify(&middle_term(&mx, &my, &d))?).or_default() += 1;
        }
        let split = self.classify(&mx.direct_sum(&my))?;
        Ok((out, split))
    }

    fn ext_dim(&self, x: &ClassKey, y: &ClassKey) -> Result<usize> {
        Ok(ext1_space(&self.realize(x, 2)?, &self.realize(y, 2)?).dim())
    }

    /// Counting polynomials of the strata `Ext¹(X,Y)_L`, keyed by the class of `L`.
    pub fn ext_strata(&self, x: &ClassKey, y: &ClassKey) -> Result<BTreeMap<ClassKey, CountPoly>> {
        let bound = self.ext_dim(x, y)?;
        interpolate_map(|p| Ok(self.ext_counts(x, y, p)?.0), bound, &self.limits)
    }

    /// The same strata in `ℙExt¹(X,Y)`.
    pub fn projective_ext_strata(&self, x: &ClassKey, y: &ClassKey) -> Result<BTreeMap<ClassKey, CountPoly>> {
        let bound = self.ext_dim(x, y)?.saturating_sub(1);
        interpolate_map(
            |p| {
                let (counts, split) = self.ext_counts(x, y, p)?;
                projectivize(counts, Some(&split), p)
            },
            bound,
            &self.limits,
        )
    }

    fn hom_counts(&self, a: &Rep, b: &Rep, skip_zero: bool) -> Result<BTreeMap<(ClassKey, ClassKey), BigInt>> {
        let mut out: BTreeMap<(ClassKey, ClassKey), BigInt> = BTreeMap::new();
        for g in hom_space(a, b).elements(self.limits.strata, "Hom stratum scan")? {
            if skip_zero && g.is_zero() {
                continue;
            }
            let ker = self.classify(&a.sub_rep(&a.kernel_tuple(&g)))?;
            let coker = self.classify(&b.quotient_rep(&b.image_tuple(&g)))?;
            *out.entry((ker, coker)).or_default() += 1;
        }
        Ok(out)
    }

    /// Counting polynomials of `{f : ker f ≅ Y, coker f ≅ X}` keyed by `(Y, X)`.
    pub fn hom_strata(&self, l1: &ClassKey, l2: &ClassKey) -> Result<BTreeMap<(ClassKey, ClassKey), CountPoly>> {
        let bound = hom_space(&self.realize(l1, 2)?, &self.realize(l2, 2)?).dim();
        interpolate_map(|p| self.hom_counts(&self.realize(l1, p)?, &self.realize(l2, p)?, false), bound, &self.limits)
    }

    /// Hom strata modulo scalars, zero map removed.
    pub fn projective_hom_strata(
        &self,
        l1: &ClassKey,
        l2: &ClassKey,
    ) -> Result<BTreeMap<(ClassKey, ClassKey), CountPoly>> {
        self.projective_hom_strata_into(l1, |p| self.realize(l2, p))
    }

    /// Like [`Uniform::projective_hom_strata`], for a target given only by its realizations
    /// (its own grade need not be catalogued).
    pub fn projective_hom_strata_into<F>(&self, l1: &ClassKey, target: F) -> Result<BTreeMap<(ClassKey, ClassKey), CountPoly>>
    where
        F: Fn(u64) -> Result<Rep> + Sync,
    {
        let bound = hom_space(&self.realize(l1, 2)?, &target(2)?).dim().saturating_sub(1);
        interpolate_map(
            |p| projectivize(self.hom_counts(&self.realize(l1, p)?, &target(p)?, true)?, None, p),
            bound,
            &self.limits,
        )
    }

    /// Class of `X ⊕ Y`.
    pub fn direct_sum(&self, x: &ClassKey, y: &ClassKey) -> Result<ClassKey> {
        self.classify(&self.realize(x, 2)?.direct_sum(&self.realize(y, 2)?))
    }

    /// Ordered pairs of classes `(A, B)` with `A ⊕ B` in class `x`.
    pub fn splittings(&self, x: &ClassKey) -> Result<Vec<(ClassKey, ClassKey)>> {
        let class = self.class(x)?;
        let Some(summands) = class.summands else {
            return Err(Error::Precondition(format!("{} has no known summand decomposition", class.name)));
        };
        if class.family {
            return Err(Error::Precondition("splittings of family classes are not enumerated".into()));
        }
        let mut out = Vec::new();
        let n = summands.len();
        for mask in 0..(1u32 << n) {
            let (a, b): (Vec<usize>, Vec<usize>) = {
                let mut a = Vec::new();
                let mut b = Vec::new();
                for (i, &s) in summands.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        a.push(s);
                    } else {
                        b.push(s);
                    }
                }
                (a, b)
            };
            let ca = self.catalog.class_of(a);
            let cb = self.catalog.class_of(b);
            let ka = self.key_of(&ca)?;
            let kb = self.key_of(&cb)?;
            if !out.contains(&(ka.clone(), kb.clone())) {
                out.push((ka, kb));
            }
        }
        Ok(out)
    }

    /// Class with the given indecomposable summands (catalog indices).
    pub fn key_of_summands(&self, summands: Vec<usize>) -> Result<ClassKey> {
        self.key_of(&self.catalog.class_of(summands))
    }

    /// Class of `τX`.
    pub fn tau(&self, x: &ClassKey) -> Result<ClassKey> {
        self.classify(&ar_translate(&self.realize(x, 2)?)?)
    }

    fn key_of(&self, c: &UniformClass) -> Result<ClassKey> {
        let idx = self
            .catalog
            .classes(&c.dims)?
            .iter()
            .position(|k| k.summands == c.summands)
            .ok_or_else(|| Error::Invariant(format!("class {} is missing from its grade", c.name)))?;
        Ok((c.dims.clone(), idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    #[test]
    fn chi_hall_numbers() {
        let q = Arc::new(Quiver::linear_a(2));
        let u = Uniform::new(Arc::new(Catalog::type_a(q).unwrap()), Limits::default());
        let s1 = u.lookup("S1").unwrap();
        let s2 = u.lookup("S2").unwrap();
        let ss = u.lookup("S1+S1").unwrap();
        let p1 = u.lookup("P1").unwrap();
        assert_eq!(u.chi_hall(&s1, &s1, &ss).unwrap(), BigInt::from(2));
        assert_eq!(u.chi_hall(&s1, &s2, &p1).unwrap(), BigInt::from(1));
        assert_eq!(u.chi_hall(&s2, &s1, &p1).unwrap(), BigInt::from(0));
        let strata = u.ext_strata(&s1, &s2).unwrap();
        assert!(strata[&p1].equals(&[-1, 1]));
        assert_eq!(u.projective_ext_strata(&s1, &s2).unwrap()[&p1].chi(), BigInt::from(1));
        assert_eq!(u.splittings(&ss).unwrap().len(), 3);
    }
}
