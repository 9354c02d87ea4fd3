//! Preprojective algebras, evaluation forms on flag functions, and the
//! multiplication formula in the 2-Calabi–Yau setting.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chi::{chi, CountPoly};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::quiver::{DimVector, Quiver, Relation};
use crate::report::{Comparison, Sweep};
use crate::rep::{composition_types, flag_count, FlagStep, Rep};
use crate::uniform::{ClassKey, Uniform};

/// Sign convention of the mesh relations, echoed in reports.
pub const MESH_CONVENTION: &str = "at each vertex i: Σ_{s(a)=i} a*a − Σ_{t(a)=i} aa*";

/// The double quiver (arrow `m + k` is the reverse of arrow `k`) with the mesh relations.
pub fn preprojective(q: &Quiver) -> Result<Quiver> {
    if q.arrows().iter().any(|a| a.source == a.target) {
        return Err(Error::Input("the preprojective algebra needs a quiver without loops".into()));
    }
    if q.has_relations() {
        return Err(Error::Input("the quiver already has relations".into()));
    }
    let m = q.arrows().len();
    let mut arrows: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
    arrows.extend(q.arrows().iter().map(|a| (a.target, a.source)));
    let mut relations = Vec::new();
    for i in 0..q.vertex_count() {
        let mut terms = Vec::new();
        for (k, a) in q.arrows().iter().enumerate() {
            if a.source == i {
                terms.push((1, vec![m + k, k]));
            }
            if a.target == i {
                terms.push((-1, vec![k, m + k]));
            }
        }
        if !terms.is_empty() {
            relations.push(Relation { terms });
        }
    }
    Quiver::new(q.vertex_count(), arrows, relations)
}

pub fn type_name(steps: &[FlagStep]) -> String {
    let parts: Vec<String> = steps
        .iter()
        .map(|s| if s.mult == 1 { (s.vertex + 1).to_string() } else { format!("{}^{}", s.vertex + 1, s.mult) })
        .collect();
    format!("({})", parts.join(","))
}

/// Dimension bound for the variety of flags of type `steps` in a module of dimension `d`.
fn flag_bound(d: &DimVector, steps: &[FlagStep]) -> usize {
    let mut cur = d.clone();
    let mut total = 0;
    for s in steps {
        let have = cur.0.get(s.vertex).copied().unwrap_or(0);
        if have < s.mult {
            break;
        }
        total += s.mult * (have - s.mult);
        cur.0[s.vertex] -= s.mult;
    }
    total
}

/// `χ` of the variety of flags of type `steps`.
pub fn flag_chi<F>(realize: F, steps: &[FlagStep], limits: &Limits) -> Result<BigInt>
where
    F: Fn(u64) -> Result<Rep> + Sync,
{
    let d = realize(2)?.dims().clone();
    chi(|p| Ok(BigInt::from(flag_count(&realize(p)?, steps, limits)?)), flag_bound(&d, steps), limits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationForm {
    pub module: String,
    pub types: Vec<String>,
    #[serde(with = "crate::report::text::vec")]
    pub values: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableClass {
    pub representative: String,
    pub members: Vec<String>,
    #[serde(skip)]
    pub keys: Vec<ClassKey>,
    #[serde(with = "crate::report::text::vec")]
    pub delta: Vec<BigInt>,
}

/// Nilpotent iso classes of one grade, grouped by their evaluation forms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassTable {
    pub dim: DimVector,
    pub types: Vec<String>,
    pub classes: Vec<TableClass>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm82Report {
    pub m: String,
    pub n: String,
    pub types: Vec<String>,
    pub convention: String,
    #[serde(with = "crate::report::text")]
    pub scalar: BigInt,
    #[serde(with = "crate::report::text::vec")]
    pub lhs: Vec<BigInt>,
    #[serde(with = "crate::report::text::vec")]
    pub rhs: Vec<BigInt>,
    pub terms: Vec<Thm82Term>,
    pub comparison: Comparison,
}

/// One middle-term class with its χ from `ℙExt¹(M,N)` and from `ℙExt¹(N,M)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm82Term {
    pub class: String,
    #[serde(with = "crate::report::text")]
    pub from_mn: BigInt,
    #[serde(with = "crate::report::text")]
    pub from_nm: BigInt,
}

/// Evaluation forms over a nilpotent universe of a preprojective algebra.
#[derive(Debug)]
pub struct TwoCy {
    u: Uniform,
    cache: Mutex<HashMap<(ClassKey, Vec<FlagStep>), BigInt>>,
}

fn render(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl TwoCy {
    pub fn new(u: Uniform) -> Result<Self> {
        if !u.catalog().nilpotent() {
            return Err(Error::Precondition("the universe must consist of nilpotent representations".into()));
        }
        Ok(TwoCy { u, cache: Mutex::default() })
    }

    /// The nilpotent universe of the preprojective algebra of `q` up to total dimension `max_total`.
    pub fn build(q: &Quiver, max_total: usize, limits: Limits) -> Result<Self> {
        let pq = std::sync::Arc::new(preprojective(q)?);
        let catalog = crate::catalog::Catalog::discover(pq, max_total, true, &limits)?;
        Self::new(Uniform::new(std::sync::Arc::new(catalog), limits))
    }

    pub fn uniform(&self) -> &Uniform {
        &self.u
    }

    fn delta_value(&self, key: &ClassKey, steps: &[FlagStep]) -> Result<BigInt> {
        let ck = (key.clone(), steps.to_vec());
        if let Some(v) = self.cache.lock().expect("poisoned").get(&ck) {
            return Ok(v.clone());
        }
        let v = flag_chi(|p| self.u.realize(key, p), steps, self.u.limits())?;
        self.cache.lock().expect("poisoned").insert(ck, v.clone());
        Ok(v)
    }

    pub fn delta(&self, key: &ClassKey, types: &[Vec<FlagStep>]) -> Result<Vec<BigInt>> {
        types.iter().map(|t| self.delta_value(key, t)).collect()
    }

    pub fn delta_form(&self, key: &ClassKey, types: &[Vec<FlagStep>]) -> Result<EvaluationForm> {
        Ok(EvaluationForm {
            module: self.u.name(key),
            types: types.iter().map(|t| type_name(t)).collect(),
            values: self.delta(key, types)?,
        })
    }

    /// Classes of grade `e`; `types` defaults to the full composition-series types of `e`.
    pub fn class_table(&self, e: &DimVector, types: Option<Vec<Vec<FlagStep>>>) -> Result<ClassTable> {
        let types = types.unwrap_or_else(|| composition_types(e));
        let mut buckets: BTreeMap<Vec<BigInt>, Vec<ClassKey>> = BTreeMap::new();
        for key in self.u.classes(e)? {
            buckets.entry(self.delta(&key, &types)?).or_default().push(key);
        }
        let mut classes: Vec<TableClass> = buckets
            .into_iter()
            .map(|(delta, keys)| TableClass {
                representative: self.u.name(&keys[0]),
                members: keys.iter().map(|k| self.u.name(k)).collect(),
                keys,
                delta,
            })
            .collect();
        classes.sort_by(|a, b| a.keys[0].cmp(&b.keys[0]));
        Ok(ClassTable { dim: e.clone(), types: types.iter().map(|t| type_name(t)).collect(), classes })
    }

    /// `χ(ℙExt¹(M,N)) δ_{M⊕N} = Σ_{⟨L⟩} (χ(ℙExt¹(M,N)_{⟨L⟩}) + χ(ℙExt¹(N,M)_{⟨L⟩})) δ_L`.
    pub fn thm82_check(&self, m: &ClassKey, n: &ClassKey, types: Option<Vec<Vec<FlagStep>>>) -> Result<Thm82Report> {
        let e = &m.0 + &n.0;
        let table = self.class_table(&e, types.clone())?;
        let types = types.unwrap_or_else(|| composition_types(&e));
        let mn = self.u.projective_ext_strata(m, n)?;
        let nm = self.u.projective_ext_strata(n, m)?;
        let scalar: BigInt = mn.values().map(CountPoly::chi).sum();
        let sum = self.u.direct_sum(m, n)?;
        let lhs: Vec<BigInt> = self.delta(&sum, &types)?.into_iter().map(|v| v * &scalar).collect();
        let mut rhs = vec![BigInt::zero(); types.len()];
        let mut terms = Vec::new();
        let chi_of = |s: &BTreeMap<ClassKey, CountPoly>, keys: &[ClassKey]| -> BigInt {
            keys.iter().filter_map(|k| s.get(k)).map(CountPoly::chi).sum()
        };
        for class in &table.classes {
            let (a, b) = (chi_of(&mn, &class.keys), chi_of(&nm, &class.keys));
            let c = &a + &b;
            if !c.is_zero() {
                for (r, d) in rhs.iter_mut().zip(&class.delta) {
                    *r += &c * d;
                }
                terms.push(Thm82Term { class: class.representative.clone(), from_mn: a, from_nm: b });
            }
        }
        let case = format!("({}, {}) on types {}", self.u.name(m), self.u.name(n), table.types.join(" "));
        let comparison = Comparison::new(case, render(&lhs), render(&rhs));
        Ok(Thm82Report {
            m: self.u.name(m),
            n: self.u.name(n),
            types: table.types,
            convention: MESH_CONVENTION.into(),
            scalar,
            lhs,
            rhs,
            terms,
            comparison,
        })
    }

    /// Every pair of nonzero classes with `dim M + dim N` of total at most `max_total`.
    pub fn thm82_sweep(&self, max_total: usize) -> Result<Sweep> {
        let nv = self.u.catalog().quiver().vertex_count();
        let mut all = Vec::new();
        for t in 1..max_total {
            for d in DimVector::with_total(nv, t) {
                all.extend(self.u.classes(&d)?);
            }
        }
        let mut s = Sweep::new(format!("2-CY multiplication formula, total dimension ≤ {max_total}"));
        s.note(format!("mesh relations {MESH_CONVENTION}"));
        for m in &all {
            for n in &all {
                if m.0.total() + n.0.total() <= max_total {
                    s.push(self.thm82_check(m, n, None)?.comparison);
                }
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn steps(v: &[usize]) -> Vec<FlagStep> {
        v.iter().map(|&vertex| FlagStep { vertex, mult: 1 }).collect()
    }

    #[test]
    fn preprojective_shapes() {
        let a2 = preprojective(&Quiver::linear_a(2)).unwrap();
        assert_eq!(a2.arrows().len(), 2);
        assert_eq!(a2.relations().len(), 2);
        let a3 = preprojective(&Quiver::linear_a(3)).unwrap();
        assert_eq!((a3.arrows().len(), a3.relations().len()), (4, 3));
        let pt = preprojective(&Quiver::new(1, vec![], vec![]).unwrap()).unwrap();
        assert!(pt.relations().is_empty());
    }

    #[test]
    fn a2_hand_case() {
        let t = TwoCy::build(&Quiver::linear_a(2), 3, Limits::default()).unwrap();
        let u = t.uniform();
        let types = vec![steps(&[0, 1]), steps(&[1, 0])];
        let ea = u.lookup("thin(1,2;a1)").unwrap();
        let eb = u.lookup("thin(1,2;a2)").unwrap();
        assert_eq!(t.delta(&ea, &types).unwrap(), [BigInt::from(1), BigInt::from(0)]);
        assert_eq!(t.delta(&eb, &types).unwrap(), [BigInt::from(0), BigInt::from(1)]);
        let table = t.class_table(&DimVector(vec![1, 1]), None).unwrap();
        assert_eq!(table.classes.len(), 3);
        let (s1, s2) = (u.lookup("S1").unwrap(), u.lookup("S2").unwrap());
        let r = t.thm82_check(&s1, &s2, Some(types)).unwrap();
        assert_eq!(r.comparison.lhs, "(1,1)");
        assert!(r.comparison.holds, "{}", r.comparison);
        let z = t.thm82_check(&s1, &s1, None).unwrap();
        assert!(z.lhs.iter().chain(&z.rhs).all(Zero::is_zero));
        let s = t.thm82_sweep(3).unwrap();
        assert!(s.ok(), "{s}");
    }
}
