//! Representations of a quiver with relations over a prime field.
//!
//! A [`Rep`] is a point of the representation variety: one matrix per arrow,
//! of shape `dim(target) x dim(source)`. This module holds the linear algebra
//! of Hom and Ext spaces; enumeration and counting live in the submodules.

mod ar;
mod factor;
mod flags;
mod iso;
mod maps;
mod strata;
mod sub;

pub use ar::{ar_translate, ar_translate_inverse};
pub use factor::factorization_exists;
pub use flags::{composition_types, flag_count, FlagStep};
pub use iso::{gl_order, group_order, iso_classes, IsoTable};
pub use maps::{corestrict, inclusion, projection, section};
pub use strata::{ext_stratum_count, hall_number, hom_stratum_count, variety_dimension};
pub use sub::{for_each_submodule, submodule_count_guard, submodules, SubTuple};

use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ff::{all_vectors, guarded_pow, FfMatrix, Subspace};
use crate::limits::Limits;
use crate::quiver::{DimVector, Quiver};

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap(pub Vec<FfMatrix>);

impl GradedMap {
    pub fn zero(p: u64, from: &DimVector, to: &DimVector) -> Self {
        GradedMap(from.iter().zip(to.iter()).map(|(&m, &n)| FfMatrix::zeros(p, n, m)).collect())
    }

    pub fn identity(p: u64, d: &DimVector) -> Self {
        GradedMap(d.iter().map(|&n| FfMatrix::identity(p, n)).collect())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedMap) -> GradedMap {
        GradedMap(self.0.iter().zip(&first.0).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn is_injective(&self) -> bool {
        self.0.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.0.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_invertible(&self) -> bool {
        self.0.iter().all(|m| m.is_invertible())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|m| m.is_zero())
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        GradedMap(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        GradedMap(self.0.iter().zip(&other.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, s: u64) -> GradedMap {
        GradedMap(self.0.iter().map(|a| a.scale(s)).collect())
    }

    pub fn flatten(&self) -> Vec<u64> {
        self.0.iter().flat_map(|m| m.data().iter().copied()).collect()
    }
}

/// A space of graded maps with a fixed basis.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub p: u64,
    pub zero: GradedMap,
    pub basis: Vec<GradedMap>,
}

impl MapSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[u64]) -> GradedMap {
        let mut out = self.zero.clone();
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                for (o, m) in out.0.iter_mut().zip(&b.0) {
                    o.add_scaled(m, c);
                }
            }
        }
        out
    }

    /// Every element, after checking `p^dim` against the ceiling.
    pub fn elements(&self, ceiling: u64, what: &'static str) -> Result<impl Iterator<Item = GradedMap> + '_> {
        guarded_pow(self.p, self.dim(), ceiling, what)?;
        Ok(all_vectors(self.p, self.dim()).map(move |c| self.combination(&c)))
    }
}

/// Extension data: a complement of the coboundaries inside `D(M,N)`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub p: u64,
    /// Shapes of the arrow maps `d(α): M_s -> N_t`.
    pub zero: Vec<FfMatrix>,
    /// Representatives of a basis of `Ext¹(M,N)`.
    pub basis: Vec<Vec<FfMatrix>>,
    pub d_dim: usize,
    pub coboundary_rank: usize,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[u64]) -> Vec<FfMatrix> {
        let mut out = self.zero.clone();
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                for (o, m) in out.iter_mut().zip(b) {
                    o.add_scaled(m, c);
                }
            }
        }
        out
    }

    /// One representative per extension class.
    pub fn classes(&self, ceiling: u64) -> Result<impl Iterator<Item = Vec<FfMatrix>> + '_> {
        guarded_pow(self.p, self.dim(), ceiling, "Ext¹ scan")?;
        Ok(all_vectors(self.p, self.dim()).map(move |c| self.combination(&c)))
    }
}

#[derive(Clone, Debug)]
pub struct Rep {
    quiver: Arc<Quiver>,
    p: u64,
    dims: DimVector,
    mats: Vec<FfMatrix>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dims == other.dims && self.mats == other.mats && *self.quiver == *other.quiver
    }
}

impl Eq for Rep {}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, p: u64, dims: DimVector, mats: Vec<FfMatrix>) -> Result<Self> {
        quiver.check_dims(&dims)?;
        if mats.len() != quiver.arrows().len() {
            return Err(Error::Input(format!("expected {} arrow matrices, got {}", quiver.arrows().len(), mats.len())));
        }
        for (k, (m, a)) in mats.iter().zip(quiver.arrows()).enumerate() {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.p() != p {
                return Err(Error::Input(format!(
                    "matrix of arrow {} must be {}x{} over F_{p}",
                    k + 1,
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        let rep = Rep { quiver, p, dims, mats };
        if let Some(r) = rep.violated_relation() {
            return Err(Error::Input(format!("relation {} does not vanish", r + 1)));
        }
        Ok(rep)
    }

    /// Construction whose validity is guaranteed by the caller.
    pub(crate) fn from_parts(quiver: Arc<Quiver>, p: u64, dims: DimVector, mats: Vec<FfMatrix>) -> Self {
        let rep = Rep { quiver, p, dims, mats };
        debug_assert!(rep.violated_relation().is_none(), "constructed representation violates a relation");
        rep
    }

    /// Matrices given by signed integers, reduced mod `p`.
    pub fn from_ints(quiver: Arc<Quiver>, p: u64, dims: DimVector, mats: &[Vec<Vec<i64>>]) -> Result<Self> {
        if mats.len() != quiver.arrows().len() {
            return Err(Error::Input(format!("expected {} arrow matrices, got {}", quiver.arrows().len(), mats.len())));
        }
        let ms = mats
            .iter()
            .zip(quiver.arrows())
            .map(|(m, a)| FfMatrix::from_rows(p, dims[a.target], dims[a.source], m))
            .collect::<Result<Vec<_>>>()?;
        Rep::new(quiver, p, dims, ms)
    }

    pub fn zero(quiver: Arc<Quiver>, p: u64) -> Self {
        let n = quiver.vertex_count();
        Self::thin(quiver, p, &vec![false; n]).expect("zero module")
    }

    pub fn simple(quiver: Arc<Quiver>, p: u64, i: usize) -> Result<Self> {
        let n = quiver.vertex_count();
        if i >= n {
            return Err(Error::Input(format!("vertex {} out of range", i + 1)));
        }
        let mut support = vec![false; n];
        support[i] = true;
        Self::thin(quiver, p, &support)
    }

    /// Dimension one on the support, every arrow inside the support acting by 1.
    pub fn thin(quiver: Arc<Quiver>, p: u64, support: &[bool]) -> Result<Self> {
        let dims = DimVector(support.iter().map(|&b| usize::from(b)).collect());
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| {
                let mut m = FfMatrix::zeros(p, dims[a.target], dims[a.source]);
                if support[a.source] && support[a.target] {
                    m.set(0, 0, 1);
                }
                m
            })
            .collect();
        Rep::new(quiver, p, dims, mats)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }
    pub fn mats(&self) -> &[FfMatrix] {
        &self.mats
    }
    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }
    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    /// Action of a path (composition order).
    pub fn path_matrix(&self, path: &[usize]) -> FfMatrix {
        let first = *path.last().expect("nonempty path");
        let mut m = self.mats[first].clone();
        for &a in path.iter().rev().skip(1) {
            m = self.mats[a].mul(&m);
        }
        m
    }

    fn violated_relation(&self) -> Option<usize> {
        self.quiver.relations().iter().position(|rel| {
            let (s, t) = self.quiver.path_ends(&rel.terms[0].1).expect("validated");
            let mut acc = FfMatrix::zeros(self.p, self.dims[t], self.dims[s]);
            for (c, path) in &rel.terms {
                acc.add_scaled(&self.path_matrix(path), crate::ff::reduce(*c, self.p));
            }
            !acc.is_zero()
        })
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        assert_eq!(self.p, other.p);
        let dims = &self.dims + &other.dims;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| {
                FfMatrix::block(
                    x,
                    &FfMatrix::zeros(self.p, x.rows(), y.cols()),
                    &FfMatrix::zeros(self.p, y.rows(), x.cols()),
                    y,
                )
            })
            .collect();
        Rep { quiver: self.quiver.clone(), p: self.p, dims, mats }
    }

    pub fn direct_sum_all(quiver: Arc<Quiver>, p: u64, parts: &[Rep]) -> Rep {
        parts.iter().fold(Rep::zero(quiver, p), |acc, r| acc.direct_sum(r))
    }

    /// The dual representation `D M` of the opposite quiver.
    pub fn dual(&self) -> Rep {
        Rep {
            quiver: Arc::new(self.quiver.opposite()),
            p: self.p,
            dims: self.dims.clone(),
            mats: self.mats.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Re-attach a representation to an equal quiver held in another `Arc`.
    pub fn with_quiver(mut self, quiver: Arc<Quiver>) -> Rep {
        assert_eq!(*self.quiver, *quiver);
        self.quiver = quiver;
        self
    }

    /// Subrepresentation on an arrow-stable tuple of subspaces.
    pub fn sub_rep(&self, tuple: &[Subspace]) -> Rep {
        let dims = DimVector(tuple.iter().map(|u| u.dim()).collect());
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(a, x)| {
                let (us, ut) = (&tuple[a.source], &tuple[a.target]);
                let mut m = FfMatrix::zeros(self.p, ut.dim(), us.dim());
                for r in 0..us.dim() {
                    let img = x.mul_vec(us.basis().row(r));
                    debug_assert!(ut.contains(&img), "tuple is not arrow-stable");
                    for (i, c) in ut.coordinates(&img).into_iter().enumerate() {
                        m.set(i, r, c);
                    }
                }
                m
            })
            .collect();
        Rep::from_parts(self.quiver.clone(), self.p, dims, mats)
    }

    /// Quotient by an arrow-stable tuple, on the non-pivot coordinates.
    pub fn quotient_rep(&self, tuple: &[Subspace]) -> Rep {
        let dims = DimVector(tuple.iter().zip(self.dims.iter()).map(|(u, &d)| d - u.dim()).collect());
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(a, x)| {
                let (us, ut) = (&tuple[a.source], &tuple[a.target]);
                let cs = us.complement_coords();
                let mut m = FfMatrix::zeros(self.p, dims[a.target], cs.len());
                for (j, &c) in cs.iter().enumerate() {
                    let img = x.column(c);
                    for (i, v) in ut.quotient_coordinates(&img).into_iter().enumerate() {
                        m.set(i, j, v);
                    }
                }
                m
            })
            .collect();
        Rep::from_parts(self.quiver.clone(), self.p, dims, mats)
    }

    pub fn is_stable(&self, tuple: &[Subspace]) -> bool {
        self.quiver.arrows().iter().zip(&self.mats).all(|(a, x)| {
            let us = &tuple[a.source];
            (0..us.dim()).all(|r| tuple[a.target].contains(&x.mul_vec(us.basis().row(r))))
        })
    }

    /// Kernel of `g: self -> N` as a tuple of subspaces of `self`.
    pub fn kernel_tuple(&self, g: &GradedMap) -> Vec<Subspace> {
        g.0.iter()
            .zip(self.dims.iter())
            .map(|(m, &d)| Subspace::from_vectors(self.p, d, &m.kernel_basis()))
            .collect()
    }

    /// Image of `g: M -> self` as a tuple of subspaces of `self`.
    pub fn image_tuple(&self, g: &GradedMap) -> Vec<Subspace> {
        g.0.iter().map(Subspace::column_span).collect()
    }

    /// `(radical, socle, top dimension)`.
    pub fn rad_soc_top(&self) -> (Vec<Subspace>, Vec<Subspace>, DimVector) {
        let n = self.quiver.vertex_count();
        let arrows = self.quiver.arrows();
        let rad: Vec<Subspace> = (0..n)
            .map(|i| {
                let vecs: Vec<Vec<u64>> = arrows
                    .iter()
                    .zip(&self.mats)
                    .filter(|(a, _)| a.target == i)
                    .flat_map(|(_, x)| (0..x.cols()).map(|c| x.column(c)).collect::<Vec<_>>())
                    .collect();
                Subspace::from_vectors(self.p, self.dims[i], &vecs)
            })
            .collect();
        let soc: Vec<Subspace> = (0..n)
            .map(|i| {
                arrows.iter().zip(&self.mats).filter(|(a, _)| a.source == i).fold(
                    Subspace::full(self.p, self.dims[i]),
                    |acc, (_, x)| acc.intersect(&Subspace::from_vectors(self.p, self.dims[i], &x.kernel_basis())),
                )
            })
            .collect();
        let top = DimVector(self.dims.iter().zip(&rad).map(|(&d, r)| d - r.dim()).collect());
        (rad, soc, top)
    }

    /// Nilpotent iff the graded span of all paths of length `total_dim` acting on the module vanishes.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.quiver.vertex_count();
        let mut w: Vec<Subspace> = (0..n).map(|i| Subspace::full(self.p, self.dims[i])).collect();
        for _ in 0..self.total_dim() {
            let mut next: Vec<Vec<Vec<u64>>> = vec![vec![]; n];
            for (a, x) in self.quiver.arrows().iter().zip(&self.mats) {
                for r in 0..w[a.source].dim() {
                    next[a.target].push(x.mul_vec(w[a.source].basis().row(r)));
                }
            }
            w = next.iter().enumerate().map(|(i, v)| Subspace::from_vectors(self.p, self.dims[i], v)).collect();
            if w.iter().all(|s| s.dim() == 0) {
                return true;
            }
        }
        w.iter().all(|s| s.dim() == 0)
    }

    /// Iso-invariant data used to narrow isomorphism tests.
    pub fn fingerprint(&self) -> Fingerprint {
        let max_len = self.total_dim().min(3);
        let path_ranks = self.quiver.paths_up_to(max_len).iter().map(|p| self.path_matrix(p).rank()).collect();
        let (rad, soc, _) = self.rad_soc_top();
        Fingerprint {
            dims: self.dims.0.clone(),
            path_ranks,
            end_dim: hom_space(self, self).dim(),
            rad: rad.iter().map(|s| s.dim()).collect(),
            soc: soc.iter().map(|s| s.dim()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    dims: Vec<usize>,
    path_ranks: Vec<usize>,
    end_dim: usize,
    rad: Vec<usize>,
    soc: Vec<usize>,
}

/// Offsets of the blocks `rows_i x cols_i` inside a flattened vector.
fn offsets(rows: &[usize], cols: &[usize]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(rows.len());
    let mut acc = 0;
    for (r, c) in rows.iter().zip(cols) {
        off.push(acc);
        acc += r * c;
    }
    (off, acc)
}

fn same_setting(m: &Rep, n: &Rep) {
    assert_eq!(m.p, n.p, "representations over different primes");
    assert_eq!(*m.quiver, *n.quiver, "representations of different quivers");
}

/// Basis of `Hom(M,N)`.
pub fn hom_space(m: &Rep, n: &Rep) -> MapSpace {
    same_setting(m, n);
    let p = m.p;
    let (off, total) = offsets(&n.dims, &m.dims);
    let arrows = m.quiver.arrows();
    let eq_count: usize = arrows.iter().map(|a| n.dims[a.target] * m.dims[a.source]).sum();
    let mut sys = FfMatrix::zeros(p, eq_count, total);
    let mut row = 0;
    for (k, a) in arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (xm, xn) = (&m.mats[k], &n.mats[k]);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                // (φ_t M_α)[r][c] − (N_α φ_s)[r][c]
                for kk in 0..m.dims[t] {
                    let v = xm.get(kk, c);
                    if v != 0 {
                        let col = off[t] + r * m.dims[t] + kk;
                        sys.set(row, col, (sys.get(row, col) + v) % p);
                    }
                }
                for kk in 0..n.dims[s] {
                    let v = xn.get(r, kk);
                    if v != 0 {
                        let col = off[s] + kk * m.dims[s] + c;
                        sys.set(row, col, (sys.get(row, col) + p - v) % p);
                    }
                }
                row += 1;
            }
        }
    }
    let basis = sys
        .kernel_basis()
        .into_iter()
        .map(|v| unflatten(p, &v, &n.dims, &m.dims, &off))
        .collect();
    MapSpace { p, zero: GradedMap::zero(p, &m.dims, &n.dims), basis }
}

fn unflatten(p: u64, v: &[u64], rows: &[usize], cols: &[usize], off: &[usize]) -> GradedMap {
    GradedMap(
        rows.iter()
            .zip(cols)
            .zip(off)
            .map(|((&r, &c), &o)| FfMatrix::from_vec(p, r, c, v[o..o + r * c].to_vec()))
            .collect(),
    )
}

/// `Ext¹(M,N)`: classes of extensions `0 -> N -> L -> M -> 0`.
pub fn ext1_space(m: &Rep, n: &Rep) -> ExtSpace {
    same_setting(m, n);
    let p = m.p;
    let q = &m.quiver;
    let arrows = q.arrows();
    let d_rows: Vec<usize> = arrows.iter().map(|a| n.dims[a.target]).collect();
    let d_cols: Vec<usize> = arrows.iter().map(|a| m.dims[a.source]).collect();
    let (d_off, d_total) = offsets(&d_rows, &d_cols);
    let zero: Vec<FfMatrix> = d_rows.iter().zip(&d_cols).map(|(&r, &c)| FfMatrix::zeros(p, r, c)).collect();

    // D(M,N): relations vanish on the block matrices L(d).
    let d_space: Vec<Vec<u64>> = if q.has_relations() {
        let mut columns: Vec<Vec<u64>> = Vec::with_capacity(d_total);
        for u in 0..d_total {
            let mut unit = vec![0u64; d_total];
            unit[u] = 1;
            let d = unflatten(p, &unit, &d_rows, &d_cols, &d_off).0;
            let mid = middle_term_unchecked(m, n, &d);
            let mut col = Vec::new();
            for rel in q.relations() {
                let (s, t) = q.path_ends(&rel.terms[0].1).expect("validated");
                let mut acc = FfMatrix::zeros(p, mid.dims[t], mid.dims[s]);
                for (c, path) in &rel.terms {
                    acc.add_scaled(&mid.path_matrix(path), crate::ff::reduce(*c, p));
                }
                // top-right block: rows of N_t, columns of M_s
                for r in 0..n.dims[t] {
                    for cc in 0..m.dims[s] {
                        col.push(acc.get(r, n.dims[s] + cc));
                    }
                }
            }
            columns.push(col);
        }
        let rows = columns.first().map_or(0, |c| c.len());
        let mut cons = FfMatrix::zeros(p, rows, d_total);
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                cons.set(i, j, v);
            }
        }
        cons.kernel_basis()
    } else {
        (0..d_total)
            .map(|u| {
                let mut v = vec![0u64; d_total];
                v[u] = 1;
                v
            })
            .collect()
    };

    // Coboundaries δ(φ)_α = N_α φ_s − φ_t M_α.
    let (c_off, c_total) = offsets(&n.dims, &m.dims);
    let mut cob: Vec<Vec<u64>> = Vec::with_capacity(c_total);
    for u in 0..c_total {
        let mut unit = vec![0u64; c_total];
        unit[u] = 1;
        let phi = unflatten(p, &unit, &n.dims, &m.dims, &c_off);
        let img: Vec<u64> = arrows
            .iter()
            .enumerate()
            .flat_map(|(k, a)| {
                n.mats[k].mul(&phi.0[a.source]).sub(&phi.0[a.target].mul(&m.mats[k])).data().to_vec()
            })
            .collect();
        cob.push(img);
    }
    let image = Subspace::from_vectors(p, d_total, &cob);
    let coboundary_rank = image.dim();

    let mut span = image;
    let mut basis = Vec::new();
    for v in &d_space {
        if !span.contains(v) {
            span = span.sum(&Subspace::from_vectors(p, d_total, std::slice::from_ref(v)));
            basis.push(unflatten(p, v, &d_rows, &d_cols, &d_off).0);
        }
    }
    ExtSpace { p, zero, basis, d_dim: d_space.len(), coboundary_rank }
}

fn middle_term_unchecked(m: &Rep, n: &Rep, d: &[FfMatrix]) -> Rep {
    let dims = &n.dims + &m.dims;
    let mats = m
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            FfMatrix::block(&n.mats[k], &d[k], &FfMatrix::zeros(m.p, m.dims[a.target], n.dims[a.source]), &m.mats[k])
        })
        .collect();
    Rep { quiver: m.quiver.clone(), p: m.p, dims, mats }
}

/// The middle term `L(d)` with matrices `[[N_α, d(α)], [0, M_α]]`; `N` is the submodule block.
pub fn middle_term(m: &Rep, n: &Rep, d: &[FfMatrix]) -> Rep {
    same_setting(m, n);
    let l = middle_term_unchecked(m, n, d);
    debug_assert!(l.violated_relation().is_none(), "d lies outside D(M,N)");
    l
}

/// Deterministic generator for the probing phase of isomorphism tests.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

const PROBES: usize = 64;

/// `M ≅ N`, decided by scanning `Hom(M,N)` for an element invertible at every vertex.
///
/// A fixed pseudo-random probe runs first; a witness found there is
/// conclusive. Otherwise the full space is scanned under the guard.
pub fn is_isomorphic(m: &Rep, n: &Rep, limits: &Limits) -> Result<bool> {
    same_setting(m, n);
    if m.dims != n.dims {
        return Ok(false);
    }
    let hom = hom_space(m, n);
    let h = hom.dim();
    if h != hom_space(m, m).dim() || h != hom_space(n, n).dim() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let mut rng = SplitMix(0x5EED ^ (h as u64) << 8 ^ m.p);
    for _ in 0..PROBES {
        let coeffs: Vec<u64> = (0..h).map(|_| rng.next() % m.p).collect();
        if hom.combination(&coeffs).is_invertible() {
            return Ok(true);
        }
    }
    for g in hom.elements(limits.hom_scan, "isomorphism scan")? {
        if g.is_invertible() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `|Aut M|` by scanning `End(M)`.
pub fn aut_order(m: &Rep, limits: &Limits) -> Result<BigUint> {
    let end = hom_space(m, m);
    let mut count = BigUint::from(0u32);
    for g in end.elements(limits.hom_scan, "automorphism scan")? {
        if g.is_invertible() {
            count += 1u32;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear_a(2))
    }

    fn p1(p: u64) -> Rep {
        Rep::thin(a2(), p, &[true, true]).unwrap()
    }

    #[test]
    fn hom_examples() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), 2, 0).unwrap();
        let s2 = Rep::simple(q.clone(), 2, 1).unwrap();
        assert_eq!(hom_space(&s1, &s2).dim(), 0);
        assert_eq!(hom_space(&s1, &s1).dim(), 1);
        assert_eq!(hom_space(&p1(2), &s1).dim(), 1);
        assert_eq!(hom_space(&s2, &p1(2)).dim(), 1);
        assert_eq!(hom_space(&s1, &p1(2)).dim(), 0);
    }

    #[test]
    fn ext_examples() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), 3, 0).unwrap();
        let s2 = Rep::simple(q.clone(), 3, 1).unwrap();
        assert_eq!(ext1_space(&s1, &s2).dim(), 1);
        assert_eq!(ext1_space(&s2, &s1).dim(), 0);
        let k = Arc::new(Quiver::kronecker());
        let k1 = Rep::simple(k.clone(), 2, 0).unwrap();
        let k2 = Rep::simple(k.clone(), 2, 1).unwrap();
        assert_eq!(ext1_space(&k1, &k2).dim(), 2);
    }

    #[test]
    fn middle_terms() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), 2, 0).unwrap();
        let s2 = Rep::simple(q.clone(), 2, 1).unwrap();
        let ext = ext1_space(&s1, &s2);
        let zero = middle_term(&s1, &s2, &ext.combination(&[0]));
        assert!(is_isomorphic(&zero, &s1.direct_sum(&s2), &Limits::default()).unwrap());
        let nz = middle_term(&s1, &s2, &ext.combination(&[1]));
        assert!(is_isomorphic(&nz, &p1(2), &Limits::default()).unwrap());
        assert!(!is_isomorphic(&s1, &s2, &Limits::default()).unwrap());
    }

    #[test]
    fn aut_examples() {
        let q = a2();
        let lim = Limits::default();
        let s1 = Rep::simple(q.clone(), 2, 0).unwrap();
        assert_eq!(aut_order(&s1, &lim).unwrap(), BigUint::from(1u32));
        assert_eq!(aut_order(&s1.direct_sum(&s1), &lim).unwrap(), BigUint::from(6u32));
        assert_eq!(aut_order(&p1(3), &lim).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn rad_soc_top_examples() {
        let (rad, soc, top) = p1(2).rad_soc_top();
        assert_eq!(rad.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(soc.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(top, DimVector(vec![1, 0]));
        let s = Rep::simple(a2(), 2, 0).unwrap();
        let (_, soc, top) = s.direct_sum(&s).rad_soc_top();
        assert_eq!(soc[0].dim(), 2);
        assert_eq!(top, DimVector(vec![2, 0]));
    }

    #[test]
    fn relations_are_enforced() {
        use crate::quiver::Relation;
        let q = Arc::new(Quiver::new(3, vec![(2, 1), (1, 0)], vec![Relation { terms: vec![(1, vec![1, 0])] }]).unwrap());
        assert!(Rep::thin(q.clone(), 2, &[true, true, true]).is_err());
        assert!(Rep::thin(q, 2, &[false, true, true]).is_ok());
    }
}
