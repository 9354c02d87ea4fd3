//! Coefficient-free seeds, mutation, cluster enumeration and the finite type test.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RationalExpr};
use crate::quiver::{cartan_counterpart, check_antisymmetric, IntMatrix, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub vars: Vec<RationalExpr>,
    pub b: IntMatrix,
}

/// `B` of a quiver: `b_ij = #(i→j) − #(j→i)`.
pub fn exchange_matrix(q: &Quiver) -> IntMatrix {
    let n = q.vertex_count();
    (0..n).map(|i| (0..n).map(|j| q.arrow_count(i, j) as i64 - q.arrow_count(j, i) as i64).collect()).collect()
}

pub fn mutate_matrix(b: &IntMatrix, j: usize) -> IntMatrix {
    let n = b.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    if i == j || k == j {
                        -b[i][k]
                    } else {
                        b[i][k] + (b[i][j].abs() * b[j][k] + b[i][j] * b[j][k].abs()) / 2
                    }
                })
                .collect()
        })
        .collect()
}

impl Seed {
    /// The initial seed `(x_1, …, x_n; B)`.
    pub fn initial(b: IntMatrix) -> Result<Seed> {
        check_antisymmetric(&b)?;
        let n = b.len();
        if n == 0 {
            return Err(Error::Input("empty exchange matrix".into()));
        }
        Ok(Seed { vars: (0..n).map(|i| RationalExpr::var(n, i)).collect(), b })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    /// `μ_j` (0-based), with `x_j x_j′ = Π_{b_ij>0} x_i^{b_ij} + Π_{b_ij<0} x_i^{−b_ij}`.
    pub fn mutate(&self, j: usize) -> Result<Seed> {
        let n = self.rank();
        if j >= n {
            return Err(Error::Input(format!("direction {} is out of range 1..={n}", j + 1)));
        }
        let one = RationalExpr::from_laurent(LaurentPoly::one(n));
        let (mut pos, mut neg) = (one.clone(), one);
        for i in 0..n {
            let e = self.b[i][j];
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    pos = pos.mul(&self.vars[i]);
                } else {
                    neg = neg.mul(&self.vars[i]);
                }
            }
        }
        let mut vars = self.vars.clone();
        vars[j] = pos.add(&neg).div(&self.vars[j]).normalized();
        Ok(Seed { vars, b: mutate_matrix(&self.b, j) })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Seed> {
        seq.iter().try_fold(self.clone(), |s, &j| s.mutate(j))
    }

    /// Variables as strings together with `B`, up to simultaneous relabeling.
    fn key(&self) -> (Vec<String>, IntMatrix) {
        let names: Vec<String> = self.vars.iter().map(|v| v.normalized().to_string()).collect();
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let b = order.iter().map(|&i| order.iter().map(|&k| self.b[i][k]).collect()).collect();
        (order.iter().map(|&i| names[i].clone()).collect(), b)
    }

    /// Same cluster and matrix up to a permutation of the labels.
    pub fn same_up_to_relabeling(&self, other: &Seed) -> bool {
        self.key() == other.key()
    }
}

/// Normal form when `e` is a Laurent polynomial.
pub fn laurent_check(e: &RationalExpr) -> Option<LaurentPoly> {
    e.laurent_check()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Closure {
    /// Every seed reachable was visited.
    Closed,
    /// The seed ceiling stopped the search.
    CeilingReached,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Enumeration {
    pub closure: Closure,
    pub seeds: usize,
    /// Cluster variables in normal form, sorted by their string form.
    pub variables: Vec<String>,
    /// Variables that failed the Laurent test, as `num/den`.
    pub non_laurent: Vec<String>,
}

/// Breadth-first search over seeds, deduplicated up to relabeling, visiting at most `ceiling` seeds.
pub fn enumerate_clusters(seed: &Seed, ceiling: usize) -> Result<Enumeration> {
    let mut seen: HashSet<(Vec<String>, IntMatrix)> = HashSet::new();
    let mut vars: BTreeMap<String, bool> = BTreeMap::new();
    let mut frontier = vec![seed.clone()];
    seen.insert(seed.key());
    let mut closure = Closure::Closed;
    while !frontier.is_empty() {
        for s in &frontier {
            for v in &s.vars {
                vars.insert(v.to_string(), v.laurent_check().is_some());
            }
        }
        let next: Vec<Seed> = frontier
            .par_iter()
            .flat_map_iter(|s| (0..s.rank()).map(move |j| s.mutate(j)))
            .collect::<Result<_>>()?;
        frontier = Vec::new();
        for s in next {
            if seen.len() >= ceiling {
                closure = Closure::CeilingReached;
                break;
            }
            if seen.insert(s.key()) {
                frontier.push(s);
            }
        }
        if closure == Closure::CeilingReached {
            for s in &frontier {
                for v in &s.vars {
                    vars.insert(v.to_string(), v.laurent_check().is_some());
                }
            }
            break;
        }
    }
    let non_laurent = vars.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.clone()).collect();
    Ok(Enumeration { closure, seeds: seen.len(), variables: vars.into_keys().collect(), non_laurent })
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k] == BigInt::from(0) {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != BigInt::from(0)) else {
                return BigInt::from(0);
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

fn minor(m: &IntMatrix, idx: &[usize]) -> BigInt {
    determinant(&idx.iter().map(|&i| idx.iter().map(|&j| m[i][j]).collect()).collect())
}

/// Leading principal minors (Sylvester's criterion).
pub fn leading_minors(m: &IntMatrix) -> Vec<BigInt> {
    (1..=m.len()).map(|k| minor(m, &(0..k).collect::<Vec<_>>())).collect()
}

pub fn is_positive_definite(m: &IntMatrix) -> bool {
    leading_minors(m).iter().all(|d| d > &BigInt::from(0))
}

/// All principal minors non-negative.
pub fn is_positive_semidefinite(m: &IntMatrix) -> bool {
    let n = m.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        minor(m, &idx) >= BigInt::from(0)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Finite,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "FINITE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteTypeReport {
    pub verdict: Verdict,
    /// Exchange matrices visited.
    pub explored: usize,
    /// The whole mutation class fit under the bound.
    pub class_exhausted: bool,
    /// For `Finite`, the exchange matrix whose counterpart is positive definite;
    /// otherwise the starting matrix.
    pub matrix: IntMatrix,
    pub counterpart: IntMatrix,
    #[serde(with = "crate::report::text::vec")]
    pub leading_minors: Vec<BigInt>,
    #[serde(with = "crate::report::text")]
    pub determinant: BigInt,
    pub positive_semidefinite: bool,
}

fn canonical(b: &IntMatrix) -> IntMatrix {
    let n = b.len();
    if n > 7 {
        return b.clone();
    }
    let mut best: Option<IntMatrix> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let m: IntMatrix = p.iter().map(|&i| p.iter().map(|&k| b[i][k]).collect()).collect();
        if best.as_ref().is_none_or(|x| &m < x) {
            best = Some(m);
        }
    });
    best.expect("at least one permutation")
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn report(verdict: Verdict, explored: usize, exhausted: bool, b: &IntMatrix) -> Result<FiniteTypeReport> {
    let counterpart = cartan_counterpart(b)?;
    Ok(FiniteTypeReport {
        verdict,
        explored,
        class_exhausted: exhausted,
        matrix: b.clone(),
        leading_minors: leading_minors(&counterpart),
        determinant: determinant(&counterpart),
        positive_semidefinite: is_positive_semidefinite(&counterpart),
        counterpart,
    })
}

/// Search the mutation class of `b` (at most `bound` matrices) for a positive definite Cartan counterpart.
pub fn finite_type_test(b: &IntMatrix, bound: usize) -> Result<FiniteTypeReport> {
    check_antisymmetric(b)?;
    let mut seen = BTreeSet::from([canonical(b)]);
    let mut queue = VecDeque::from([b.clone()]);
    let mut explored = 0;
    while let Some(m) = queue.pop_front() {
        explored += 1;
        if is_positive_definite(&cartan_counterpart(&m)?) {
            return report(Verdict::Finite, explored, false, &m);
        }
        if explored >= bound {
            return report(Verdict::Inconclusive, explored, false, b);
        }
        for j in 0..m.len() {
            let next = mutate_matrix(&m, j);
            if seen.insert(canonical(&next)) {
                queue.push_back(next);
            }
        }
    }
    report(Verdict::Inconclusive, explored, true, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> IntMatrix {
        vec![vec![0, 1], vec![-1, 0]]
    }

    #[test]
    fn a2_mutation() {
        let s = Seed::initial(a2()).unwrap();
        let m = s.mutate(0).unwrap();
        assert_eq!(m.vars[0].to_string(), "(x2+1)/x1");
        assert_eq!(m.b, vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(m.mutate(0).unwrap(), s);
        let seq: Vec<usize> = (0..10).map(|k| k % 2).collect();
        let back = s.mutate_seq(&seq).unwrap();
        assert_eq!(back, s);
        let e = enumerate_clusters(&s, 1000).unwrap();
        assert_eq!(e.closure, Closure::Closed);
        assert_eq!(e.variables.len(), 5);
        assert!(e.non_laurent.is_empty());
    }

    #[test]
    fn counts_and_rank_one() {
        let a3 = exchange_matrix(&Quiver::new(3, vec![(0, 1), (2, 1)], vec![]).unwrap());
        let e = enumerate_clusters(&Seed::initial(a3.clone()).unwrap(), 1000).unwrap();
        assert_eq!(e.variables.len(), 9);
        assert_eq!(finite_type_test(&a3, 100).unwrap().verdict, Verdict::Finite);
        let r1 = enumerate_clusters(&Seed::initial(vec![vec![0]]).unwrap(), 100).unwrap();
        assert_eq!(r1.variables, ["2/x1", "x1"]);
    }

    #[test]
    fn kronecker_is_not_certified() {
        let r = finite_type_test(&vec![vec![0, 2], vec![-2, 0]], 50).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.determinant, BigInt::from(0));
        assert!(r.positive_semidefinite);
        assert_eq!(finite_type_test(&a2(), 10).unwrap().verdict, Verdict::Finite);
        let e = enumerate_clusters(&Seed::initial(vec![vec![0, 2], vec![-2, 0]]).unwrap(), 20).unwrap();
        assert_eq!(e.closure, Closure::CeilingReached);
        assert!(e.non_laurent.is_empty());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]), BigInt::from(4));
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }
}
