//! Isomorphism classes that mean the same thing over every prime field.
//!
//! A catalog lists indecomposables by canonical descriptors (intervals for
//! type A, the small preprojective/preinjective modules and the regular
//! family `u_λ` for the Kronecker quiver) and builds the classes of a grade as
//! multisets of them. For other quivers the classes can be discovered by brute
//! force over `F_2` and carried to other primes through their 0/1 matrices.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::big_pow;
use crate::limits::Limits;
use crate::object::ModSpec;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{group_order, hom_space, iso_classes, is_isomorphic, Fingerprint, Rep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Indec {
    pub name: String,
    pub spec: ModSpec,
    pub dims: DimVector,
    /// `Some(i)` when isomorphic to `P_i`.
    pub projective: Option<usize>,
    /// `Some(i)` when isomorphic to `I_i`.
    pub injective: Option<usize>,
    pub socle: DimVector,
    /// A one-parameter family `u_λ`, `λ ∈ P^1`; `spec` is the member `λ = (1:0)`.
    pub family: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformClass {
    pub name: String,
    pub dims: DimVector,
    /// Indecomposable summands (indices into the catalog, sorted), when known.
    pub summands: Option<Vec<usize>>,
    /// Representative; for a family class, the member with `λ = (1:0)`.
    pub spec: ModSpec,
    pub family: bool,
}

#[derive(Clone, Debug)]
enum Source {
    Indecomposables,
    Discovered(HashMap<DimVector, Vec<UniformClass>>),
}

#[derive(Clone, Debug)]
pub struct Catalog {
    quiver: Arc<Quiver>,
    indecs: Vec<Indec>,
    source: Source,
    nilpotent: bool,
}

fn describe(quiver: &Arc<Quiver>, spec: ModSpec, name: String, family: bool) -> Result<Indec> {
    let rep = spec.realize(quiver, 2)?;
    let lim = Limits::default();
    let n = quiver.vertex_count();
    let mut projective = None;
    let mut injective = None;
    if quiver.is_acyclic() {
        for i in 0..n {
            let pi = Rep::projective(quiver.clone(), 2, i)?;
            if pi.dims() == rep.dims() && is_isomorphic(&pi, &rep, &lim)? {
                projective = Some(i);
            }
            let ii = Rep::injective(quiver.clone(), 2, i)?;
            if ii.dims() == rep.dims() && is_isomorphic(&ii, &rep, &lim)? {
                injective = Some(i);
            }
        }
    }
    let (_, soc, _) = rep.rad_soc_top();
    Ok(Indec {
        name,
        spec,
        dims: rep.dims().clone(),
        projective,
        injective,
        socle: DimVector(soc.iter().map(|s| s.dim()).collect()),
        family,
    })
}

/// Vertex order along the underlying path graph, when the quiver is of type A.
fn path_order(q: &Quiver) -> Option<Vec<usize>> {
    let n = q.vertex_count();
    if q.has_relations() || q.arrows().len() + 1 != n {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        if a.source == a.target {
            return None;
        }
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    if adj.iter().any(|v| v.len() > 2) {
        return None;
    }
    let start = (0..n).find(|&v| adj[v].len() <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        if order.contains(&next) {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

fn indec_name(spec: &ModSpec) -> String {
    match spec {
        ModSpec::Thin { support, arrows: None } if support.len() == 1 => format!("S{}", support[0] + 1),
        other => other.to_string(),
    }
}

impl Catalog {
    /// Interval modules of a type-A quiver (any orientation).
    pub fn type_a(quiver: Arc<Quiver>) -> Result<Self> {
        let order = path_order(&quiver).ok_or_else(|| Error::Input("the quiver is not of type A".into()))?;
        let n = order.len();
        let mut indecs = Vec::new();
        for len in 1..=n {
            for start in 0..=n - len {
                let mut support: Vec<usize> = order[start..start + len].to_vec();
                support.sort_unstable();
                let spec = ModSpec::Thin { support, arrows: None };
                indecs.push(describe(&quiver, spec.clone(), indec_name(&spec), false)?);
            }
        }
        Ok(Catalog { quiver, indecs, source: Source::Indecomposables, nilpotent: false })
    }

    /// The Kronecker quiver: `S_1, S_2, P_1, I_2, τS_1, τ⁻¹S_2` and the family `u_λ`.
    pub fn kronecker(quiver: Arc<Quiver>) -> Result<Self> {
        let a = quiver.arrows();
        if quiver.vertex_count() != 2 || a.len() != 2 || a.iter().any(|x| x.source != 0 || x.target != 1) {
            return Err(Error::Input("the Kronecker catalog needs two arrows 1 -> 2".into()));
        }
        let mut indecs = Vec::new();
        for (s, name) in
            [("S1", "S1"), ("S2", "S2"), ("P1", "P1"), ("I2", "I2"), ("tau(S1)", "tau(S1)"), ("tauinv(S2)", "tauinv(S2)")]
        {
            indecs.push(describe(&quiver, ModSpec::parse(s)?, name.to_string(), false)?);
        }
        indecs.push(describe(&quiver, ModSpec::Regular { a: 1, b: 0 }, "u(*)".into(), true)?);
        Ok(Catalog { quiver, indecs, source: Source::Indecomposables, nilpotent: false })
    }

    /// Classes found by scanning every grade of total dimension at most `max_total` over `F_2`.
    pub fn discover(quiver: Arc<Quiver>, max_total: usize, nilpotent: bool, limits: &Limits) -> Result<Self> {
        let n = quiver.vertex_count();
        let mut classes = HashMap::new();
        for t in 0..=max_total {
            for d in DimVector::with_total(n, t) {
                let table = iso_classes(&quiver, 2, &d, nilpotent, limits)?;
                let mut list = Vec::new();
                for (k, rep) in table.reps.iter().enumerate() {
                    let mats = rep
                        .mats()
                        .iter()
                        .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(|&v| v as i64).collect()).collect())
                        .collect();
                    let spec = ModSpec::Matrices { dims: d.0.clone(), mats };
                    list.push(UniformClass {
                        name: discovered_name(rep, k),
                        dims: d.clone(),
                        summands: None,
                        spec,
                        family: false,
                    });
                }
                classes.insert(d, list);
            }
        }
        Ok(Catalog { quiver, indecs: vec![], source: Source::Discovered(classes), nilpotent })
    }

    /// The catalog matching the shape of `quiver`, if any.
    pub fn for_quiver(quiver: Arc<Quiver>) -> Result<Self> {
        if path_order(&quiver).is_some() {
            return Self::type_a(quiver);
        }
        Self::kronecker(quiver)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn indecs(&self) -> &[Indec] {
        &self.indecs
    }

    pub fn nilpotent(&self) -> bool {
        self.nilpotent
    }

    /// Every class of grade `d`, in a fixed order.
    pub fn classes(&self, d: &DimVector) -> Result<Vec<UniformClass>> {
        match &self.source {
            Source::Discovered(map) => map
                .get(d)
                .cloned()
                .ok_or_else(|| Error::MissingGrade(format!("grade {d} was not discovered"))),
            Source::Indecomposables => {
                if self.indecs.iter().any(|i| i.family) && d.iter().all(|&x| x >= 2) {
                    return Err(Error::MissingGrade(format!("{d}: regular modules of length 2 are not catalogued")));
                }
                let mut out = Vec::new();
                let mut cur = Vec::new();
                self.multisets(0, d.clone(), &mut cur, &mut out);
                Ok(out.into_iter().map(|s| self.class_of(s)).collect())
            }
        }
    }

    fn multisets(&self, from: usize, left: DimVector, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_zero() {
            out.push(cur.clone());
            return;
        }
        for k in from..self.indecs.len() {
            let ind = &self.indecs[k];
            if ind.family && cur.iter().any(|&c| self.indecs[c].family) {
                continue;
            }
            if let Some(rest) = left.checked_sub(&ind.dims) {
                cur.push(k);
                self.multisets(k, rest, cur, out);
                cur.pop();
            }
        }
    }

    /// The class with the given summands.
    pub fn class_of(&self, mut summands: Vec<usize>) -> UniformClass {
        summands.sort_unstable();
        let n = self.quiver.vertex_count();
        let mut dims = DimVector::zero(n);
        for &s in &summands {
            dims = &dims + &self.indecs[s].dims;
        }
        let mut name = String::new();
        let mut i = 0;
        while i < summands.len() {
            let j = summands[i..].iter().take_while(|&&s| s == summands[i]).count();
            if !name.is_empty() {
                name.push('+');
            }
            if j > 1 {
                let _ = write!(name, "{j}*");
            }
            name.push_str(&self.indecs[summands[i]].name);
            i += j;
        }
        if name.is_empty() {
            name.push('0');
        }
        let spec = ModSpec::sum(summands.iter().map(|&s| self.indecs[s].spec.clone()).collect());
        let family = summands.iter().any(|&s| self.indecs[s].family);
        UniformClass { name, dims, summands: Some(summands), spec, family }
    }

    /// All members of a class over `F_p`: one module, or `p + 1` for a family class.
    pub fn members(&self, class: &UniformClass, p: u64) -> Result<Vec<Rep>> {
        if !class.family {
            return Ok(vec![class.spec.realize(&self.quiver, p)?]);
        }
        let summands = class.summands.as_ref().expect("family classes come from indecomposables");
        let points: Vec<(i64, i64)> = (0..p as i64).map(|l| (1, l)).chain(std::iter::once((0, 1))).collect();
        points
            .into_iter()
            .map(|(a, b)| {
                let parts = summands
                    .iter()
                    .map(|&s| if self.indecs[s].family { ModSpec::Regular { a, b } } else { self.indecs[s].spec.clone() })
                    .collect();
                ModSpec::sum(parts).realize(&self.quiver, p)
            })
            .collect()
    }

    /// Classifier for grade `d` over `F_p`.
    pub fn grade_table(&self, d: &DimVector, p: u64) -> Result<GradeTable> {
        let classes = self.classes(d)?;
        let mut reps = Vec::new();
        let mut member_class = Vec::new();
        for (c, class) in classes.iter().enumerate() {
            for m in self.members(class, p)? {
                reps.push(m);
                member_class.push(c);
            }
        }
        let mut by_fp: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        for (i, r) in reps.iter().enumerate() {
            by_fp.entry(r.fingerprint()).or_default().push(i);
        }
        Ok(GradeTable { dim: d.clone(), p, classes, reps, member_class, by_fp, unique_fp: false })
    }

    /// `|Aut M|` for a member of a class with known summands: `|rad End| · Π |GL_{m_i}|`.
    pub fn aut_order(&self, class: &UniformClass, member: &Rep, limits: &Limits) -> Result<BigUint> {
        let Some(summands) = &class.summands else {
            return crate::rep::aut_order(member, limits);
        };
        let p = member.p();
        let end = hom_space(member, member).dim();
        let mut mult: HashMap<usize, usize> = HashMap::new();
        for &s in summands {
            *mult.entry(s).or_default() += 1;
        }
        let squares: usize = mult.values().map(|m| m * m).sum();
        let mut order = big_pow(p, end - squares);
        for m in mult.values() {
            order *= crate::rep::gl_order(p, *m);
        }
        Ok(order)
    }

    /// Partition check at `F_p`: the orbits of the listed classes exhaust the representation space.
    pub fn validate(&self, d: &DimVector, p: u64, limits: &Limits) -> Result<bool> {
        let table = self.grade_table(d, p)?;
        let arrows = self.quiver.arrows();
        let params: usize = arrows.iter().map(|a| d[a.source] * d[a.target]).sum();
        let g = group_order(p, d);
        let mut total = BigUint::from(0u32);
        for (i, r) in table.reps.iter().enumerate() {
            let class = &table.classes[table.member_class[i]];
            total += &g / self.aut_order(class, r, limits)?;
            for other in &table.reps[..i] {
                if is_isomorphic(r, other, limits)? {
                    return Ok(false);
                }
            }
        }
        let expected = if self.nilpotent {
            iso_classes(&self.quiver, p, d, true, limits)?.total_points
        } else if self.quiver.has_relations() {
            iso_classes(&self.quiver, p, d, false, limits)?.total_points
        } else {
            big_pow(p, params)
        };
        Ok(total == expected)
    }
}

fn discovered_name(rep: &Rep, k: usize) -> String {
    let active: Vec<usize> = rep.mats().iter().enumerate().filter(|(_, m)| !m.is_zero()).map(|(i, _)| i).collect();
    let thin = rep.dims().iter().all(|&v| v <= 1);
    if thin && active.is_empty() {
        let parts: Vec<String> =
            rep.dims().iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| format!("S{}", i + 1)).collect();
        return if parts.is_empty() { "0".into() } else { parts.join("+") };
    }
    if thin {
        let sup: Vec<String> =
            rep.dims().iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| (i + 1).to_string()).collect();
        let arr: Vec<String> = active.iter().map(|a| format!("a{}", a + 1)).collect();
        return format!("thin({};{})", sup.join(","), arr.join(","));
    }
    format!("M{}#{}", rep.dims(), k + 1)
}

/// Members of every class of one grade over one prime, ready for classification.
///
/// Once [`GradeTable::trust_fingerprints`] is called, a module whose
/// fingerprint matches a single member is assigned to it without an
/// isomorphism test. That is sound only when the members cover the grade.
#[derive(Clone, Debug)]
pub struct GradeTable {
    pub dim: DimVector,
    pub p: u64,
    pub classes: Vec<UniformClass>,
    pub reps: Vec<Rep>,
    pub member_class: Vec<usize>,
    by_fp: HashMap<Fingerprint, Vec<usize>>,
    /// Set once the listed members are known to exhaust the grade.
    unique_fp: bool,
}

impl GradeTable {
    pub fn trust_fingerprints(&mut self) {
        self.unique_fp = true;
    }

    /// Class index of `m`; an error when no listed class matches.
    pub fn classify(&self, m: &Rep, limits: &Limits) -> Result<usize> {
        Ok(self.member_class[self.member_of(m, limits)?])
    }

    /// Index of the member isomorphic to `m`.
    pub fn member_of(&self, m: &Rep, limits: &Limits) -> Result<usize> {
        if m.dims() == &self.dim {
            if let Some(cands) = self.by_fp.get(&m.fingerprint()) {
                if cands.len() == 1 && self.unique_fp {
                    return Ok(cands[0]);
                }
                for &c in cands {
                    if is_isomorphic(m, &self.reps[c], limits)? {
                        return Ok(c);
                    }
                }
            }
        }
        Err(Error::Invariant(format!("a module of dimension {} over F_{} is not in the catalog", m.dims(), self.p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a_catalogs() {
        let lim = Limits::default();
        let a3 = Arc::new(Quiver::new(3, vec![(0, 1), (2, 1)], vec![]).unwrap());
        let cat = Catalog::type_a(a3).unwrap();
        assert_eq!(cat.indecs().len(), 6);
        let p3 = cat.indecs().iter().find(|i| i.name == "iv(2,3)").unwrap();
        assert_eq!(p3.projective, Some(2));
        let i2 = cat.indecs().iter().find(|i| i.name == "iv(1,3)").unwrap();
        assert_eq!(i2.injective, Some(1));
        assert_eq!(i2.socle, DimVector(vec![0, 1, 0]));
        let d = DimVector(vec![1, 2, 1]);
        for p in [2, 3] {
            assert!(cat.validate(&d, p, &lim).unwrap());
        }
        let a2 = Arc::new(Quiver::linear_a(2));
        let cat = Catalog::type_a(a2).unwrap();
        let classes = cat.classes(&DimVector(vec![2, 1])).unwrap();
        let names: Vec<&str> = classes.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["2*S1+S2", "S1+iv(1,2)"]);
        assert!(cat.validate(&DimVector(vec![2, 2]), 3, &lim).unwrap());
    }

    #[test]
    fn kronecker_catalog() {
        let lim = Limits::default();
        let k = Arc::new(Quiver::kronecker());
        let cat = Catalog::kronecker(k).unwrap();
        for d in [vec![1, 1], vec![3, 1], vec![1, 3], vec![1, 2]] {
            for p in [2, 3] {
                assert!(cat.validate(&DimVector(d.clone()), p, &lim).unwrap(), "{d:?} at {p}");
            }
        }
        let i2 = &cat.indecs()[3];
        assert_eq!(i2.injective, Some(1));
        assert_eq!(cat.indecs()[0].injective, Some(0));
        assert_eq!(cat.indecs()[1].projective, Some(1));
        assert!(cat.classes(&DimVector(vec![3, 1])).unwrap().iter().any(|c| c.name == "2*S1+u(*)"));
        assert_eq!(cat.classes(&DimVector(vec![3, 1])).unwrap().len(), 3);
        assert!(cat.classes(&DimVector(vec![2, 2])).is_err());
    }

    #[test]
    fn discovered_catalog() {
        let lim = Limits::default();
        let a2 = Arc::new(Quiver::linear_a(2));
        let cat = Catalog::discover(a2, 3, false, &lim).unwrap();
        let d = DimVector(vec![2, 1]);
        assert_eq!(cat.classes(&d).unwrap().len(), 2);
        assert!(cat.validate(&d, 3, &lim).unwrap());
    }
}
