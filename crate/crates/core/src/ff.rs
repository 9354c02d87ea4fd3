//! Dense linear algebra over prime fields `F_p`.
//!
//! Entries are stored reduced in `[0, p)`. Everything here is exact; row
//! reduction to RREF doubles as the canonical form for subspaces.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Multiplicative inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The primes in increasing order, starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FfMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FfMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FfMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Build from signed integer rows, reducing mod `p`.
    pub fn from_rows(p: u64, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Input(format!("matrix is not {rows}x{cols}")));
        }
        let data = entries.iter().flatten().map(|&x| reduce(x, p)).collect();
        Ok(FfMatrix { p, rows, cols, data })
    }

    pub fn from_vec(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FfMatrix { p, rows, cols, data: data.into_iter().map(|x| x % p).collect() }
    }

    /// A matrix whose rows are the given vectors.
    pub fn from_row_vectors(p: u64, cols: usize, vecs: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(vecs.len() * cols);
        for v in vecs {
            assert_eq!(v.len(), cols);
            data.extend(v.iter().map(|x| x % p));
        }
        FfMatrix { p, rows: vecs.len(), cols, data }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FfMatrix) -> FfMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b) % p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b) % self.p))
            .collect()
    }

    pub fn add(&self, other: &FfMatrix) -> FfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect();
        FfMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FfMatrix) -> FfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + p - b) % p).collect();
        FfMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u64) -> FfMatrix {
        let p = self.p;
        let s = s % p;
        FfMatrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s % p).collect() }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &FfMatrix, s: u64) {
        let p = self.p;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = (*a + s * b) % p;
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &FfMatrix, b: &FfMatrix, c: &FfMatrix, d: &FfMatrix) -> FfMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (rows, cols) = (a.rows + c.rows, a.cols + b.cols);
        let mut m = Self::zeros(a.p, rows, cols);
        for r in 0..rows {
            for col in 0..cols {
                let v = match (r < a.rows, col < a.cols) {
                    (true, true) => a.get(r, col),
                    (true, false) => b.get(r, col - a.cols),
                    (false, true) => c.get(r - a.rows, col),
                    (false, false) => d.get(r - a.rows, col - a.cols),
                };
                m.data[r * cols + col] = v;
            }
        }
        m
    }

    /// Select rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FfMatrix {
        let mut m = Self::zeros(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    /// Row-reduce in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else { continue };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for k in c..cols {
                self.data[r * cols + k] = self.data[r * cols + k] * inv % p;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for k in c..cols {
                    let sub = f * self.data[r * cols + k] % p;
                    self.data[i * cols + k] = (self.data[i * cols + k] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows dropped, and its pivots.
    pub fn rref(&self) -> (FfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(i, f)) % p;
                }
                v
            })
            .collect()
    }

    /// Solve `self * x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[r * (self.cols + 1) + c] = self.get(r, c);
            }
            aug.data[r * (self.cols + 1) + self.cols] = b[r] % self.p;
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FfMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Self::block(self, &Self::identity(self.p, n), &Self::zeros(self.p, 0, n), &Self::zeros(self.p, 0, n));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(aug.submatrix(&rows, &cols))
    }
}

/// A subspace of `F_p^n` held by its RREF basis (rows).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: FfMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Self {
        Subspace { basis: FfMatrix::zeros(p, 0, n), pivots: vec![] }
    }

    pub fn full(p: u64, n: usize) -> Self {
        Subspace { basis: FfMatrix::identity(p, n), pivots: (0..n).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &FfMatrix) -> Self {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &FfMatrix) -> Self {
        Self::row_span(&m.transpose())
    }

    pub fn from_vectors(p: u64, n: usize, vecs: &[Vec<u64>]) -> Self {
        Self::row_span(&FfMatrix::from_row_vectors(p, n, vecs))
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn basis(&self) -> &FfMatrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the subspace: the representative vanishing on pivots.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.basis.p();
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            for (wk, &bk) in w.iter_mut().zip(self.basis.row(i)) {
                *wk = (*wk + p - f * bk % p) % p;
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` (assumed inside) in the RREF basis.
    pub fn coordinates(&self, v: &[u64]) -> Vec<u64> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    /// Columns not carrying a pivot: coordinates on the quotient `F_p^n / U`.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of the class of `v` in `F_p^n / U`.
    pub fn quotient_coordinates(&self, v: &[u64]) -> Vec<u64> {
        let w = self.reduce(v);
        self.complement_coords().into_iter().map(|c| w[c]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.row_vectors();
        rows.extend(other.basis.row_vectors());
        Subspace::from_vectors(self.basis.p(), self.ambient(), &rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Solve a*A = b*B via the kernel of the stacked matrix.
        let p = self.basis.p();
        let n = self.ambient();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(p, n);
        }
        let mut stacked = FfMatrix::zeros(p, n, a + b);
        for j in 0..a {
            for c in 0..n {
                stacked.set(c, j, self.basis.get(j, c));
            }
        }
        for j in 0..b {
            for c in 0..n {
                stacked.set(c, a + j, (p - other.basis.get(j, c)) % p);
            }
        }
        let vecs: Vec<Vec<u64>> = stacked
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut v = vec![0u64; n];
                for j in 0..a {
                    for (c, vc) in v.iter_mut().enumerate() {
                        *vc = (*vc + k[j] * self.basis.get(j, c)) % p;
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(p, n, &vecs)
    }
}

/// Gaussian binomial `[n choose k]_p`.
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Every `k`-dimensional subspace of `F_p^n`, each once, in RREF.
pub fn subspaces(p: u64, n: usize, k: usize, ceiling: u64) -> Result<Subspaces> {
    if k > n {
        return Err(Error::Input(format!("subspace dimension {k} exceeds ambient {n}")));
    }
    let count = gaussian_binomial(p, n, k);
    if count > BigUint::from(ceiling) {
        return Err(Error::guard("subspace enumeration", count, ceiling));
    }
    Ok(Subspaces { p, n, k, pivots: Some((0..k).collect()), free: vec![], counter: vec![], started: false })
}

/// Iterator over subspaces by pivot pattern, then free entries.
pub struct Subspaces {
    p: u64,
    n: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: Vec<u64>,
    started: bool,
}

impl Subspaces {
    fn free_positions(&self, piv: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, &pc) in piv.iter().enumerate() {
            for c in pc + 1..self.n {
                if !piv.contains(&c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    fn next_pivots(&self, piv: &[usize]) -> Option<Vec<usize>> {
        let mut v = piv.to_vec();
        let k = self.k;
        for i in (0..k).rev() {
            if v[i] < self.n - k + i {
                v[i] += 1;
                for j in i + 1..k {
                    v[j] = v[j - 1] + 1;
                }
                return Some(v);
            }
        }
        None
    }

    fn build(&self, piv: &[usize]) -> Subspace {
        let mut m = FfMatrix::zeros(self.p, self.k, self.n);
        for (r, &pc) in piv.iter().enumerate() {
            m.set(r, pc, 1);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            m.set(r, c, v);
        }
        Subspace { basis: m, pivots: piv.to_vec() }
    }
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let piv = self.pivots.clone()?;
        if !self.started {
            self.started = true;
            self.free = self.free_positions(&piv);
            self.counter = vec![0; self.free.len()];
            return Some(self.build(&piv));
        }
        // advance the free-entry counter
        for i in 0..self.counter.len() {
            self.counter[i] += 1;
            if self.counter[i] < self.p {
                return Some(self.build(&piv));
            }
            self.counter[i] = 0;
        }
        // counter wrapped: next pivot pattern
        if self.k == 0 {
            self.pivots = None;
            return None;
        }
        match self.next_pivots(&piv) {
            Some(np) => {
                self.free = self.free_positions(&np);
                self.counter = vec![0; self.free.len()];
                self.pivots = Some(np.clone());
                Some(self.build(&np))
            }
            None => {
                self.pivots = None;
                None
            }
        }
    }
}

/// All vectors of `F_p^n` in counter order (first coordinate fastest).
pub fn all_vectors(p: u64, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (p as u128).checked_pow(n as u32).and_then(|t| t.to_u64()).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u64; n];
        for x in v.iter_mut() {
            *x = idx % p;
            idx /= p;
        }
        v
    })
}

/// `p^e` as a `BigUint`.
pub fn big_pow(p: u64, e: usize) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

/// `p^e` if it fits under the ceiling, else a guard error naming `what`.
pub fn guarded_pow(p: u64, e: usize, ceiling: u64, what: &'static str) -> Result<u64> {
    let n = big_pow(p, e);
    if n > BigUint::from(ceiling) {
        return Err(Error::guard(what, n, ceiling));
    }
    Ok(n.to_u64().expect("below ceiling"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, rows: &[&[i64]]) -> FfMatrix {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        FfMatrix::from_rows(p, v.len(), v.first().map_or(0, |r| r.len()), &v).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(2, &[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(FfMatrix::zeros(5, 3, 3).rank(), 0);
        assert_eq!(FfMatrix::identity(3, 2).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(m(2, &[&[1, 1]]).kernel_basis(), vec![vec![1, 1]]);
        assert!(m(3, &[&[1, 2], &[0, 1]]).kernel_basis().is_empty());
        assert_eq!(FfMatrix::zeros(7, 1, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(subspaces(2, 2, 1, 1000).unwrap().count(), 3);
        assert_eq!(subspaces(5, 4, 0, 1000).unwrap().count(), 1);
        assert_eq!(subspaces(3, 3, 1, 1000).unwrap().count(), 13);
        assert_eq!(subspaces(3, 4, 2, 1000).unwrap().count(), 130);
        assert!(subspaces(3, 8, 4, 1000).is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let x = a.solve(&[1, 0]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![1, 0]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FfMatrix::identity(5, 2));
        assert_eq!(FfMatrix::zeros(5, 0, 0).inverse(), Some(FfMatrix::zeros(5, 0, 0)));
        assert!(m(2, &[&[1, 1], &[1, 1]]).solve(&[1, 0]).is_none());
    }

    #[test]
    fn intersections() {
        let u = Subspace::from_vectors(3, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::from_vectors(3, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersect(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 2, 0]));
        assert_eq!(u.sum(&w).dim(), 3);
        assert_eq!(u.quotient_coordinates(&[1, 1, 2]), vec![2]);
    }
}
