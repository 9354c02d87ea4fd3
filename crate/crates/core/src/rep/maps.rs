//! Kernels, cokernels and block maps with explicit coordinates.

use super::{GradedMap, Rep};
use crate::ff::{FfMatrix, Subspace};

fn vstack(a: &FfMatrix, b: &FfMatrix) -> FfMatrix {
    assert_eq!(a.cols(), b.cols());
    let mut data = a.data().to_vec();
    data.extend_from_slice(b.data());
    FfMatrix::from_vec(a.p(), a.rows() + b.rows(), a.cols(), data)
}

fn hstack(a: &FfMatrix, b: &FfMatrix) -> FfMatrix {
    vstack(&a.transpose(), &b.transpose()).transpose()
}

impl GradedMap {
    /// `x ↦ (a x, b x)` into a direct sum.
    pub fn stack_rows(a: &GradedMap, b: &GradedMap) -> GradedMap {
        GradedMap(a.0.iter().zip(&b.0).map(|(x, y)| vstack(x, y)).collect())
    }

    /// `(y, z) ↦ a y + b z` out of a direct sum.
    pub fn stack_cols(a: &GradedMap, b: &GradedMap) -> GradedMap {
        GradedMap(a.0.iter().zip(&b.0).map(|(x, y)| hstack(x, y)).collect())
    }

    /// Block diagonal map `A ⊕ B -> C ⊕ D`.
    pub fn diagonal(a: &GradedMap, b: &GradedMap) -> GradedMap {
        let p = a.0.first().or(b.0.first()).map_or(2, |m| m.p());
        GradedMap(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| {
                    FfMatrix::block(x, &FfMatrix::zeros(p, x.rows(), y.cols()), &FfMatrix::zeros(p, y.rows(), x.cols()), y)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> GradedMap {
        GradedMap(self.0.iter().map(|m| m.scale(m.p() - 1)).collect())
    }
}

/// Inclusion of the subspaces of `tuple` in their ambient spaces.
pub fn inclusion(tuple: &[Subspace]) -> GradedMap {
    GradedMap(tuple.iter().map(|u| u.basis().transpose()).collect())
}

/// Projection of the ambient spaces onto the quotient coordinates used by [`Rep::quotient_rep`].
pub fn projection(tuple: &[Subspace]) -> GradedMap {
    GradedMap(
        tuple
            .iter()
            .map(|u| {
                let n = u.ambient();
                let cols: Vec<Vec<u64>> = (0..n)
                    .map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        u.quotient_coordinates(&e)
                    })
                    .collect();
                FfMatrix::from_row_vectors(u.basis().p(), n - u.dim(), &cols).transpose()
            })
            .collect(),
    )
}

/// A right inverse of [`projection`]: quotient coordinates placed on the non-pivot columns.
pub fn section(tuple: &[Subspace]) -> GradedMap {
    GradedMap(
        tuple
            .iter()
            .map(|u| {
                let n = u.ambient();
                let cs = u.complement_coords();
                let mut m = FfMatrix::zeros(u.basis().p(), n, cs.len());
                for (j, &c) in cs.iter().enumerate() {
                    m.set(c, j, 1);
                }
                m
            })
            .collect(),
    )
}

/// Factor `g` through the inclusion of `tuple`; the image of `g` must lie inside.
pub fn corestrict(g: &GradedMap, tuple: &[Subspace]) -> GradedMap {
    GradedMap(
        g.0.iter()
            .zip(tuple)
            .map(|(m, u)| {
                let cols: Vec<Vec<u64>> = (0..m.cols())
                    .map(|c| {
                        let v = m.column(c);
                        debug_assert!(u.contains(&v), "map does not land in the subspace");
                        u.coordinates(&v)
                    })
                    .collect();
                FfMatrix::from_row_vectors(m.p(), u.dim(), &cols).transpose()
            })
            .collect(),
    )
}

impl Rep {
    /// `ker g` with its inclusion into `self`.
    pub fn kernel(&self, g: &GradedMap) -> (Rep, GradedMap) {
        let t = self.kernel_tuple(g);
        (self.sub_rep(&t), inclusion(&t))
    }

    /// `coker g` for `g: _ -> self`, with the projection from `self`.
    pub fn cokernel(&self, g: &GradedMap) -> (Rep, GradedMap) {
        let t = self.image_tuple(g);
        (self.quotient_rep(&t), projection(&t))
    }

    /// Whether `g: self -> n` commutes with the arrow maps.
    pub fn is_morphism_to(&self, n: &Rep, g: &GradedMap) -> bool {
        self.quiver().arrows().iter().enumerate().all(|(k, a)| {
            n.mats()[k].mul(&g.0[a.source]) == g.0[a.target].mul(&self.mats()[k])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::hom_space;
    use super::*;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    #[test]
    fn kernel_and_cokernel_maps() {
        let q = Arc::new(Quiver::linear_a(2));
        let p1 = Rep::thin(q.clone(), 3, &[true, true]).unwrap();
        let s2 = Rep::simple(q, 3, 1).unwrap();
        let inc = hom_space(&s2, &p1).basis[0].clone();
        let (c, pr) = p1.cokernel(&inc);
        assert_eq!(c.dims().0, vec![1, 0]);
        assert!(p1.is_morphism_to(&c, &pr));
        assert!(pr.compose(&inc).is_zero());
        let (k, i) = p1.kernel(&pr);
        assert_eq!(k.dims().0, vec![0, 1]);
        assert!(k.is_morphism_to(&p1, &i));
        let t = p1.image_tuple(&inc);
        let back = corestrict(&inc, &t);
        assert!(inclusion(&t).compose(&back) == inc);
        assert!(projection(&t).compose(&section(&t)) == GradedMap::identity(3, c.dims()));
    }
}
