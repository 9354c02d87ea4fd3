//! Quivers with relations, dimension vectors and the integral forms attached
//! to them.
//!
//! Vertices are 0-based here. A path is a list of arrow indices written in
//! composition order, so `[a2, a1]` means "first `a1`, then `a2`".

use std::fmt;
use std::ops::{Add, Deref};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Every `e` with `0 <= e <= self`, in lexicographic order.
    pub fn below(&self) -> Vec<DimVector> {
        let mut out = vec![DimVector(vec![])];
        for &d in &self.0 {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=d).map(move |x| {
                        let mut w = v.0.clone();
                        w.push(x);
                        DimVector(w)
                    })
                })
                .collect();
        }
        out
    }

    /// All dimension vectors on `n` vertices with total dimension exactly `t`.
    pub fn with_total(n: usize, t: usize) -> Vec<DimVector> {
        fn rec(n: usize, t: usize, acc: &mut Vec<usize>, out: &mut Vec<DimVector>) {
            if acc.len() + 1 == n {
                acc.push(t);
                out.push(DimVector(acc.clone()));
                acc.pop();
                return;
            }
            for x in 0..=t {
                acc.push(x);
                rec(n, t - x, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if t == 0 {
                out.push(DimVector(vec![]));
            }
            return out;
        }
        rec(n, t, &mut Vec::new(), &mut out);
        out
    }
}

impl Deref for DimVector {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.0.len(), rhs.0.len());
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

/// Integral data of a hereditary quiver: the Euler matrix and `R`, `R'`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EulerData {
    pub euler_matrix: IntMatrix,
    pub r: IntMatrix,
    pub r_prime: IntMatrix,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>, relations: Vec<Relation>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Input("a quiver needs at least one vertex".into()));
        }
        for (k, &(s, t)) in arrows.iter().enumerate() {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::Input(format!(
                    "arrow {} refers to vertex {} but there are only {vertex_count}",
                    k + 1,
                    s.max(t) + 1
                )));
            }
        }
        let q = Quiver {
            vertex_count,
            arrows: arrows.into_iter().map(|(source, target)| Arrow { source, target }).collect(),
            relations: vec![],
        };
        for (r, rel) in relations.iter().enumerate() {
            q.check_relation(rel).map_err(|e| Error::Input(format!("relation {}: {e}", r + 1)))?;
        }
        Ok(Quiver { relations, ..q })
    }

    fn check_relation(&self, rel: &Relation) -> std::result::Result<(), String> {
        if rel.terms.is_empty() {
            return Err("empty relation".into());
        }
        let mut ends = None;
        for (_, path) in &rel.terms {
            if path.len() < 2 {
                return Err("paths in relations must have length at least 2".into());
            }
            let st = self.path_ends(path).ok_or("path is not composable")?;
            match ends {
                None => ends = Some(st),
                Some(e) if e != st => return Err("paths do not share source and target".into()),
                _ => {}
            }
        }
        Ok(())
    }

    /// `(source, target)` of a path in composition order, if composable.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = *path.last()?;
        let last = *path.first()?;
        if first >= self.arrows.len() || last >= self.arrows.len() {
            return None;
        }
        for w in path.windows(2) {
            let (later, earlier) = (w[0], w[1]);
            if later >= self.arrows.len() || self.arrows[later].source != self.arrows[earlier].target {
                return None;
            }
        }
        Some((self.arrows[first].source, self.arrows[last].target))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn has_relations(&self) -> bool {
        !self.relations.is_empty()
    }

    /// Linearly oriented type-A quiver on `n` vertices: `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        Quiver::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(), vec![]).expect("valid")
    }

    /// The Kronecker quiver `1 => 2`.
    pub fn kronecker() -> Self {
        Quiver::new(2, vec![(0, 1), (0, 1)], vec![]).expect("valid")
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_hereditary(&self) -> bool {
        !self.has_relations() && self.is_acyclic()
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count()
    }

    /// All paths of length at most `max_len` (length 0 excluded), in composition order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        for _ in 0..max_len {
            if frontier.is_empty() {
                break;
            }
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for path in &frontier {
                let end = self.arrows[path[0]].target;
                for (b, arr) in self.arrows.iter().enumerate() {
                    if arr.source == end {
                        let mut np = Vec::with_capacity(path.len() + 1);
                        np.push(b);
                        np.extend_from_slice(path);
                        next.push(np);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Paths from `i` to `j` including the trivial path when `i == j`
    /// (represented by the empty list). Requires an acyclic quiver.
    pub fn paths_between(&self, i: usize, j: usize) -> Vec<Vec<usize>> {
        assert!(self.is_acyclic(), "path enumeration needs an acyclic quiver");
        let mut out = Vec::new();
        if i == j {
            out.push(vec![]);
        }
        for path in self.paths_up_to(self.vertex_count) {
            if self.path_ends(&path) == Some((i, j)) {
                out.push(path);
            }
        }
        out
    }

    /// The opposite quiver: every arrow reversed, relation paths reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self.arrows.iter().map(|a| Arrow { source: a.target, target: a.source }).collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation { terms: r.terms.iter().map(|(c, p)| (*c, p.iter().rev().copied().collect())).collect() })
                .collect(),
        }
    }

    fn require_hereditary(&self, what: &str) -> Result<()> {
        if self.has_relations() {
            return Err(Error::Precondition(format!("{what} is only computed for quivers without relations")));
        }
        if !self.is_acyclic() {
            return Err(Error::Precondition(format!("{what} needs an acyclic quiver")));
        }
        Ok(())
    }

    /// `<a,b> = sum a_i b_i - sum_{arrows i->j} a_i b_j`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.require_hereditary("the Euler form")?;
        self.check_dims(a)?;
        self.check_dims(b)?;
        let diag: i64 = a.iter().zip(b.iter()).map(|(x, y)| (x * y) as i64).sum();
        let off: i64 = self.arrows.iter().map(|ar| (a[ar.source] * b[ar.target]) as i64).sum();
        Ok(diag - off)
    }

    pub fn check_dims(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count {
            return Err(Error::Input(format!("dimension vector {d} has the wrong length for {} vertices", self.vertex_count)));
        }
        Ok(())
    }

    pub fn euler_matrix(&self) -> Result<IntMatrix> {
        self.require_hereditary("the Euler matrix")?;
        let n = self.vertex_count;
        Ok((0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j) - self.arrow_count(i, j) as i64).collect())
            .collect())
    }

    pub fn r_matrices(&self) -> Result<EulerData> {
        let euler_matrix = self.euler_matrix()?;
        let n = self.vertex_count;
        let r: IntMatrix = (0..n).map(|i| (0..n).map(|j| self.arrow_count(i, j) as i64).collect()).collect();
        let r_prime = transpose(&r);
        Ok(EulerData { euler_matrix, r, r_prime })
    }

    /// Coxeter matrix `Phi = -E^{-1} E^T`, acting on column vectors; it sends
    /// `dim M` to `dim tau M` for `M` without projective summands.
    pub fn coxeter_matrix(&self) -> Result<IntMatrix> {
        let e = self.euler_matrix()?;
        let einv = integer_inverse(&e)?;
        let prod = mat_mul(&einv, &transpose(&e));
        Ok(prod.into_iter().map(|row| row.into_iter().map(|x| -x).collect()).collect())
    }
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Inverse of an integer matrix that is invertible over the integers.
pub fn integer_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&r| !a[r][c].is_zero()).ok_or_else(|| Error::Precondition("singular matrix".into()))?;
        a.swap(c, pr);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(Error::Precondition("inverse is not integral".into())) })
                .collect()
        })
        .collect()
}

/// Cartan counterpart: `2` on the diagonal, `-|b_ij|` off it.
pub fn cartan_counterpart(b: &IntMatrix) -> Result<IntMatrix> {
    check_antisymmetric(b)?;
    let n = b.len();
    Ok((0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { -b[i][j].abs() }).collect()).collect())
}

pub fn check_antisymmetric(b: &IntMatrix) -> Result<()> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return Err(Error::Input("exchange matrix must be square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if b[i][j] != -b[j][i] {
                return Err(Error::Input(format!("matrix is not antisymmetric at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_sink() -> Quiver {
        Quiver::new(3, vec![(0, 1), (2, 1)], vec![]).unwrap()
    }

    #[test]
    fn euler_form_examples() {
        let a2 = Quiver::linear_a(2);
        assert_eq!(a2.euler_form(&DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap(), -1);
        assert_eq!(a2.euler_form(&DimVector(vec![0, 0]), &DimVector(vec![3, 1])).unwrap(), 0);
        let k = Quiver::kronecker();
        assert_eq!(k.euler_form(&DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap(), -2);
    }

    #[test]
    fn euler_form_refuses_relations() {
        let q = Quiver::new(3, vec![(2, 1), (1, 0)], vec![Relation { terms: vec![(1, vec![1, 0])] }]).unwrap();
        assert!(q.euler_form(&DimVector(vec![1, 0, 0]), &DimVector(vec![0, 0, 1])).is_err());
    }

    #[test]
    fn r_matrix_examples() {
        let d = a3_sink().r_matrices().unwrap();
        assert_eq!(d.r, vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 1, 0]]);
        assert_eq!(d.r_prime, transpose(&d.r));
        assert_eq!(Quiver::new(2, vec![], vec![]).unwrap().r_matrices().unwrap().r, vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(Quiver::kronecker().r_matrices().unwrap().r, vec![vec![0, 2], vec![0, 0]]);
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_counterpart(&vec![vec![0, 1], vec![-1, 0]]).unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_counterpart(&vec![vec![0]]).unwrap(), vec![vec![2]]);
        assert_eq!(cartan_counterpart(&vec![vec![0, 2], vec![-2, 0]]).unwrap(), vec![vec![2, -2], vec![-2, 2]]);
        assert!(cartan_counterpart(&vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn coxeter_sends_s1_to_p3() {
        let phi = a3_sink().coxeter_matrix().unwrap();
        assert_eq!(mat_vec(&phi, &[1, 0, 0]), vec![0, 1, 1]);
    }

    #[test]
    fn validation() {
        assert!(Quiver::new(3, vec![(0, 4)], vec![]).is_err());
        let bad = Relation { terms: vec![(1, vec![0])] };
        assert!(Quiver::new(2, vec![(0, 1)], vec![bad]).is_err());
        let noncomposable = Relation { terms: vec![(1, vec![0, 1])] };
        assert!(Quiver::new(3, vec![(0, 1), (0, 2)], vec![noncomposable]).is_err());
    }

    #[test]
    fn dim_vectors() {
        assert_eq!(DimVector(vec![1, 2]).below().len(), 6);
        assert_eq!(DimVector::with_total(3, 2).len(), 6);
        assert_eq!(DimVector(vec![2, 1]).checked_sub(&DimVector(vec![1, 1])), Some(DimVector(vec![1, 0])));
        assert_eq!(DimVector(vec![0, 1]).checked_sub(&DimVector(vec![1, 0])), None);
    }
}
