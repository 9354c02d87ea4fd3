//! Every isomorphism class up to a total dimension over one prime field,
//! with the Hall numbers and Ext strata among them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, GradeTable};
use crate::error::{Error, Result};
use crate::ff::big_pow;
use crate::limits::Limits;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{ext1_space, for_each_submodule, hom_space, middle_term, Rep};

/// An isomorphism class of a [`Universe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label(pub usize);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub name: String,
    pub dims: DimVector,
    /// Index of the catalog class inside its grade.
    pub class: usize,
    pub rep: Rep,
    pub aut: BigUint,
}

#[derive(Clone, Debug, Default)]
struct PairData {
    hom_dim: usize,
    ext_dim: usize,
    strata: BTreeMap<Label, BigUint>,
}

#[derive(Debug)]
pub struct Universe {
    quiver: Arc<Quiver>,
    p: u64,
    max_total: usize,
    limits: Limits,
    catalog: Arc<Catalog>,
    grades: BTreeMap<DimVector, (GradeTable, usize)>,
    labels: Vec<ClassInfo>,
    by_name: HashMap<String, Label>,
    /// Per `L`: `(quotient X, submodule Y) -> g^L_{XY}`.
    hall: Vec<BTreeMap<(Label, Label), BigUint>>,
    pairs: HashMap<(Label, Label), PairData>,
}

fn member_name(table: &GradeTable, class_name: &str, member: usize) -> String {
    let class = &table.classes[table.member_class[member]];
    if !class.family {
        return class_name.to_string();
    }
    let first = table.member_class.iter().position(|&c| c == table.member_class[member]).unwrap_or(member);
    let k = (member - first) as u64;
    let point = if k < table.p { format!("u(1:{k})") } else { "u(0:1)".to_string() };
    class_name.replace("u(*)", &point)
}

impl Universe {
    /// Build the universe of all grades with total dimension at most `max_total` over `F_p`.
    pub fn build(catalog: Arc<Catalog>, p: u64, max_total: usize, limits: &Limits) -> Result<Self> {
        let quiver = catalog.quiver().clone();
        let n = quiver.vertex_count();
        let grade_list: Vec<DimVector> = (0..=max_total).flat_map(|t| DimVector::with_total(n, t)).collect();
        let tables: Vec<GradeTable> = grade_list
            .par_iter()
            .map(|d| {
                let mut t = catalog.grade_table(d, p)?;
                if !catalog.validate(d, p, limits)? {
                    return Err(Error::Invariant(format!("catalog classes of grade {d} do not partition the variety")));
                }
                t.trust_fingerprints();
                Ok(t)
            })
            .collect::<Result<_>>()?;
        let mut grades = BTreeMap::new();
        let mut labels = Vec::new();
        let mut by_name = HashMap::new();
        for (d, table) in grade_list.into_iter().zip(tables) {
            let offset = labels.len();
            for (i, rep) in table.reps.iter().enumerate() {
                let class = &table.classes[table.member_class[i]];
                let name = member_name(&table, &class.name, i);
                by_name.insert(name.clone(), Label(labels.len()));
                let aut = catalog.aut_order(class, rep, limits)?;
                labels.push(ClassInfo { name, dims: d.clone(), class: table.member_class[i], rep: rep.clone(), aut });
            }
            grades.insert(d, (table, offset));
        }
        let mut u = Universe {
            quiver,
            p,
            max_total,
            limits: *limits,
            catalog,
            grades,
            labels,
            by_name,
            hall: vec![],
            pairs: HashMap::new(),
        };
        u.hall = (0..u.labels.len()).into_par_iter().map(|l| u.compute_hall(Label(l))).collect::<Result<_>>()?;
        let pairs: Vec<(Label, Label)> = u
            .all()
            .flat_map(|x| u.all().map(move |y| (x, y)))
            .filter(|&(x, y)| u.dims(x).total() + u.dims(y).total() <= max_total)
            .collect();
        let data: Vec<PairData> = pairs.par_iter().map(|&(x, y)| u.compute_pair(x, y)).collect::<Result<_>>()?;
        u.pairs = pairs.into_iter().zip(data).collect();
        Ok(u)
    }

    fn compute_hall(&self, l: Label) -> Result<BTreeMap<(Label, Label), BigUint>> {
        let rep = &self.labels[l.0].rep;
        let mut out: BTreeMap<(Label, Label), BigUint> = BTreeMap::new();
        for e in rep.dims().below() {
            for_each_submodule(rep, &e, &self.limits, |t| {
                let y = self.find(&rep.sub_rep(t))?;
                let x = self.find(&rep.quotient_rep(t))?;
                *out.entry((x, y)).or_default() += 1u32;
                Ok(())
            })?;
        }
        Ok(out)
    }

    fn compute_pair(&self, x: Label, y: Label) -> Result<PairData> {
        let (mx, my) = (&self.labels[x.0].rep, &self.labels[y.0].rep);
        let ext = ext1_space(mx, my);
        let mut strata: BTreeMap<Label, BigUint> = BTreeMap::new();
        for d in ext.classes(self.limits.strata)? {
            *strata.entry(self.find(&middle_term(mx, my, &d))?).or_default() += 1u32;
        }
        Ok(PairData { hom_dim: hom_space(mx, my).dim(), ext_dim: ext.dim(), strata })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn all(&self) -> impl Iterator<Item = Label> + Clone + '_ {
        (0..self.labels.len()).map(Label)
    }

    /// Labels of one grade.
    pub fn grade(&self, d: &DimVector) -> Result<impl Iterator<Item = Label> + '_> {
        let (t, off) = self.grades.get(d).ok_or_else(|| Error::MissingGrade(d.to_string()))?;
        Ok((*off..off + t.reps.len()).map(Label))
    }

    pub fn grades(&self) -> impl Iterator<Item = &DimVector> {
        self.grades.keys()
    }

    pub fn info(&self, l: Label) -> &ClassInfo {
        &self.labels[l.0]
    }

    pub fn name(&self, l: Label) -> &str {
        &self.labels[l.0].name
    }

    pub fn dims(&self, l: Label) -> &DimVector {
        &self.labels[l.0].dims
    }

    pub fn rep(&self, l: Label) -> &Rep {
        &self.labels[l.0].rep
    }

    pub fn aut(&self, l: Label) -> &BigUint {
        &self.labels[l.0].aut
    }

    pub fn zero(&self) -> Label {
        Label(0)
    }

    pub fn by_name(&self, name: &str) -> Option<Label> {
        self.by_name.get(name).copied()
    }

    /// Label of a module given by its descriptor.
    pub fn lookup(&self, descriptor: &str) -> Result<Label> {
        if let Some(l) = self.by_name(descriptor) {
            return Ok(l);
        }
        let spec = crate::object::ModSpec::parse(descriptor)?;
        self.find(&spec.realize(&self.quiver, self.p)?)
    }

    /// Label of the class containing `m`.
    pub fn find(&self, m: &Rep) -> Result<Label> {
        let (t, off) = self.grades.get(m.dims()).ok_or_else(|| Error::MissingGrade(m.dims().to_string()))?;
        Ok(Label(off + t.member_of(m, &self.limits)?))
    }

    /// Entries `((X, Y), g^L_{XY})` of the Hall table of `L`.
    pub fn hall_entries(&self, l: Label) -> &BTreeMap<(Label, Label), BigUint> {
        &self.hall[l.0]
    }

    /// `g^L_{XY}`.
    pub fn hall_number(&self, x: Label, y: Label, l: Label) -> BigUint {
        self.hall[l.0].get(&(x, y)).cloned().unwrap_or_default()
    }

    fn pair(&self, x: Label, y: Label) -> Result<&PairData> {
        self.pairs.get(&(x, y)).ok_or_else(|| {
            Error::MissingGrade(format!("pair ({}, {}) exceeds total dimension {}", self.name(x), self.name(y), self.max_total))
        })
    }

    pub fn hom_dim(&self, x: Label, y: Label) -> Result<usize> {
        Ok(self.pair(x, y)?.hom_dim)
    }

    pub fn ext_dim(&self, x: Label, y: Label) -> Result<usize> {
        Ok(self.pair(x, y)?.ext_dim)
    }

    /// `|Ext¹(X,Y)_L|`.
    pub fn ext_stratum(&self, x: Label, y: Label, l: Label) -> Result<BigUint> {
        Ok(self.pair(x, y)?.strata.get(&l).cloned().unwrap_or_default())
    }

    /// All non-empty strata of `Ext¹(X,Y)`.
    pub fn ext_strata(&self, x: Label, y: Label) -> Result<&BTreeMap<Label, BigUint>> {
        Ok(&self.pair(x, y)?.strata)
    }

    pub fn p_pow(&self, e: usize) -> BigUint {
        big_pow(self.p, e)
    }

    /// `|Ext¹(X,Y)| / |Hom(X,Y)|`.
    pub fn ext_hom_ratio(&self, x: Label, y: Label) -> Result<BigRational> {
        let d = self.pair(x, y)?;
        Ok(ratio(self.p_pow(d.ext_dim), self.p_pow(d.hom_dim)))
    }

    /// `h^{XY}_L = |Ext¹(X,Y)_L| / |Hom(X,Y)|`.
    pub fn h_value(&self, x: Label, y: Label, l: Label) -> Result<BigRational> {
        let d = self.pair(x, y)?;
        Ok(ratio(d.strata.get(&l).cloned().unwrap_or_default(), self.p_pow(d.hom_dim)))
    }

    /// Hom strata: `(kernel, cokernel) -> |{f ∈ Hom(L1,L2) : ker f ≅ Y, coker f ≅ X}|`.
    pub fn hom_strata(&self, l1: Label, l2: Label) -> Result<BTreeMap<(Label, Label), BigUint>> {
        let (a, b) = (self.rep(l1), self.rep(l2));
        let hom = hom_space(a, b);
        let mut out: BTreeMap<(Label, Label), BigUint> = BTreeMap::new();
        for g in hom.elements(self.limits.strata, "Hom stratum scan")? {
            let ker = self.find(&a.sub_rep(&a.kernel_tuple(&g)))?;
            let coker = self.find(&b.quotient_rep(&b.image_tuple(&g)))?;
            *out.entry((ker, coker)).or_default() += 1u32;
        }
        Ok(out)
    }

    /// Label of `X ⊕ Y`.
    pub fn direct_sum(&self, x: Label, y: Label) -> Result<Label> {
        self.find(&self.rep(x).direct_sum(self.rep(y)))
    }
}

pub(crate) fn ratio(a: BigUint, b: BigUint) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub(crate) fn int(a: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_universe() {
        let q = Arc::new(Quiver::linear_a(2));
        let cat = Arc::new(Catalog::type_a(q).unwrap());
        let u = Universe::build(cat, 2, 3, &Limits::default()).unwrap();
        let s1 = u.lookup("S1").unwrap();
        let s2 = u.lookup("S2").unwrap();
        let p1 = u.lookup("iv(1,2)").unwrap();
        let ss = u.lookup("2*S1").unwrap();
        assert_eq!(u.hall_number(s1, s2, p1), BigUint::from(1u32));
        assert_eq!(u.hall_number(s1, s1, ss), BigUint::from(3u32));
        assert_eq!(*u.aut(ss), BigUint::from(6u32));
        assert_eq!(u.h_value(s1, s2, p1).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(u.h_value(s1, s1, ss).unwrap(), BigRational::new(1.into(), 2.into()));
        let split = u.direct_sum(s1, s2).unwrap();
        assert_eq!(u.name(split), "S1+S2");
        let strata = u.hom_strata(p1, p1).unwrap();
        let total: BigUint = strata.values().sum();
        assert_eq!(total, BigUint::from(2u32));
    }

    #[test]
    fn kronecker_members_are_named() {
        let q = Arc::new(Quiver::kronecker());
        let cat = Arc::new(Catalog::kronecker(q).unwrap());
        let u = Universe::build(cat, 3, 2, &Limits::default()).unwrap();
        let names: Vec<&str> = u.grade(&DimVector(vec![1, 1])).unwrap().map(|l| u.name(l)).collect();
        assert_eq!(names, vec!["S1+S2", "u(1:0)", "u(1:1)", "u(1:2)", "u(0:1)"]);
    }
}
