use std::sync::Arc;

use super::{GradedMap, Rep};
use crate::error::{Error, Result};
use crate::ff::{FfMatrix, Subspace};
use crate::quiver::{mat_vec, DimVector, Quiver};

/// Paths `i -> v` for every vertex `v`, modulo the relation ideal: the
/// chosen basis paths and, for every path, its coordinates in that basis.
struct PathBasis {
    basis: Vec<Vec<Vec<usize>>>,
    all: Vec<Vec<Vec<usize>>>,
    quotient: Vec<Subspace>,
}

impl PathBasis {
    fn from_vertex(q: &Quiver, p: u64, i: usize) -> PathBasis {
        let n = q.vertex_count();
        let all: Vec<Vec<Vec<usize>>> = (0..n).map(|v| q.paths_between(i, v)).collect();
        let mut quotient = Vec::with_capacity(n);
        let mut basis = Vec::with_capacity(n);
        for v in 0..n {
            let ideal = ideal_span(q, p, i, v, &all[v]);
            basis.push(ideal.complement_coords().into_iter().map(|c| all[v][c].clone()).collect());
            quotient.push(ideal);
        }
        PathBasis { basis, all, quotient }
    }

    /// Coordinates of a path `i -> v` in the quotient basis.
    fn coords(&self, v: usize, path: &[usize], p: u64) -> Vec<u64> {
        let mut unit = vec![0u64; self.all[v].len()];
        let k = self.all[v].iter().position(|x| x == path).expect("path of the right shape");
        unit[k] = 1 % p;
        self.quotient[v].quotient_coordinates(&unit)
    }
}

/// Span of `u·r·w` inside the paths `i -> v`.
fn ideal_span(q: &Quiver, p: u64, i: usize, v: usize, paths: &[Vec<usize>]) -> Subspace {
    let mut gens = Vec::new();
    for rel in q.relations() {
        let (s, t) = q.path_ends(&rel.terms[0].1).expect("validated");
        for w in q.paths_between(i, s) {
            for u in q.paths_between(t, v) {
                let mut vec = vec![0u64; paths.len()];
                for (c, r) in &rel.terms {
                    let full: Vec<usize> = u.iter().chain(r).chain(&w).copied().collect();
                    let k = paths.iter().position(|x| *x == full).expect("composite path");
                    vec[k] = (vec[k] + crate::ff::reduce(*c, p)) % p;
                }
                gens.push(vec);
            }
        }
    }
    Subspace::from_vectors(p, paths.len(), &gens)
}

impl Rep {
    /// The indecomposable projective `P_i = e_i Λ`-paths starting at `i`.
    pub fn projective(quiver: Arc<Quiver>, p: u64, i: usize) -> Result<Rep> {
        check_vertex(&quiver, i)?;
        if !quiver.is_acyclic() {
            return Err(Error::Precondition("projectives are built for acyclic quivers only".into()));
        }
        let pb = PathBasis::from_vertex(&quiver, p, i);
        let dims = DimVector(pb.basis.iter().map(Vec::len).collect());
        let mats = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut m = FfMatrix::zeros(p, dims[a.target], dims[a.source]);
                for (c, path) in pb.basis[a.source].iter().enumerate() {
                    let mut ext = vec![k];
                    ext.extend_from_slice(path);
                    for (r, x) in pb.coords(a.target, &ext, p).into_iter().enumerate() {
                        m.set(r, c, x);
                    }
                }
                m
            })
            .collect();
        Rep::new(quiver, p, dims, mats)
    }

    /// The indecomposable injective `I_i`, dual to the projective of the opposite quiver.
    pub fn injective(quiver: Arc<Quiver>, p: u64, i: usize) -> Result<Rep> {
        let op = Arc::new(quiver.opposite());
        Ok(Rep::projective(op, p, i)?.dual().with_quiver(quiver))
    }
}

fn check_vertex(q: &Quiver, i: usize) -> Result<()> {
    if i >= q.vertex_count() {
        return Err(Error::Input(format!("vertex {} out of range", i + 1)));
    }
    Ok(())
}

/// Injective `I_i` in the basis dual to the paths `v -> i`, as used by the Nakayama functor.
fn injective_dual_basis(q: &Arc<Quiver>, p: u64, i: usize) -> (Rep, Vec<Vec<Vec<usize>>>) {
    let n = q.vertex_count();
    let paths: Vec<Vec<Vec<usize>>> = (0..n).map(|v| q.paths_between(v, i)).collect();
    let dims = DimVector(paths.iter().map(Vec::len).collect());
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut m = FfMatrix::zeros(p, dims[a.target], dims[a.source]);
            for (r, s) in paths[a.target].iter().enumerate() {
                let mut sa = s.clone();
                sa.push(k);
                if let Some(c) = paths[a.source].iter().position(|x| *x == sa) {
                    m.set(r, c, 1);
                }
            }
            m
        })
        .collect();
    (Rep::from_parts(q.clone(), p, dims, mats), paths)
}

/// Generators of a projective presentation: `(vertex, element of the ambient projective)`.
struct Generator {
    vertex: usize,
    /// Per block of `P_0`: coefficients on the paths `u -> vertex` of that block.
    coeffs: Vec<Vec<u64>>,
}

/// `τM` via a minimal projective presentation and the Nakayama functor.
pub fn ar_translate(m: &Rep) -> Result<Rep> {
    let q = m.quiver().clone();
    if !q.is_hereditary() {
        return Err(Error::Precondition("the AR translate is computed for hereditary quivers only".into()));
    }
    let p = m.p();
    let n = q.vertex_count();
    if m.is_zero() {
        return Ok(m.clone());
    }

    // projective cover P_0 -> M
    let (rad, _, _) = m.rad_soc_top();
    let mut top_blocks: Vec<(usize, Vec<u64>)> = Vec::new();
    for v in 0..n {
        for c in rad[v].complement_coords() {
            let mut e = vec![0u64; m.dims()[v]];
            e[c] = 1;
            top_blocks.push((v, e));
        }
    }
    let block_paths: Vec<Vec<Vec<Vec<usize>>>> =
        top_blocks.iter().map(|(u, _)| (0..n).map(|w| q.paths_between(*u, w)).collect()).collect();
    let p0_dims = DimVector((0..n).map(|w| block_paths.iter().map(|b| b[w].len()).sum()).collect());
    let p0 = Rep::direct_sum_all(
        q.clone(),
        p,
        &top_blocks.iter().map(|(u, _)| Rep::projective(q.clone(), p, *u)).collect::<Result<Vec<_>>>()?,
    );
    debug_assert_eq!(p0.dims(), &p0_dims);
    let pi = GradedMap(
        (0..n)
            .map(|w| {
                let mut mat = FfMatrix::zeros(p, m.dims()[w], p0_dims[w]);
                let mut col = 0;
                for ((_, gen), paths) in top_blocks.iter().zip(&block_paths) {
                    for path in &paths[w] {
                        let img = if path.is_empty() { gen.clone() } else { m.path_matrix(path).mul_vec(gen) };
                        for (r, x) in img.into_iter().enumerate() {
                            mat.set(r, col, x);
                        }
                        col += 1;
                    }
                }
                mat
            })
            .collect(),
    );
    if !pi.is_surjective() {
        return Err(Error::Invariant("projective cover is not surjective".into()));
    }

    // kernel K and its top, lifted into P_0
    let ker = p0.kernel_tuple(&pi);
    let k_rep = p0.sub_rep(&ker);
    let (k_rad, _, _) = k_rep.rad_soc_top();
    let mut gens: Vec<Generator> = Vec::new();
    for v in 0..n {
        for c in k_rad[v].complement_coords() {
            let x = ker[v].basis().row(c).to_vec();
            let mut coeffs = Vec::with_capacity(top_blocks.len());
            let mut off = 0;
            for paths in &block_paths {
                let len = paths[v].len();
                coeffs.push(x[off..off + len].to_vec());
                off += len;
            }
            gens.push(Generator { vertex: v, coeffs });
        }
    }

    // Nakayama: νP_1 -> νP_0
    let inj: Vec<(Rep, Vec<Vec<Vec<usize>>>)> = (0..n).map(|i| injective_dual_basis(&q, p, i)).collect();
    let nu_p1 = Rep::direct_sum_all(q.clone(), p, &gens.iter().map(|g| inj[g.vertex].0.clone()).collect::<Vec<_>>());
    let nu_p0_dims: Vec<usize> =
        (0..n).map(|w| top_blocks.iter().map(|(u, _)| inj[*u].0.dims()[w]).sum()).collect();
    let nu_map = GradedMap(
        (0..n)
            .map(|w| {
                let mut mat = FfMatrix::zeros(p, nu_p0_dims[w], nu_p1.dims()[w]);
                let mut col0 = 0;
                for g in &gens {
                    let src_paths = &inj[g.vertex].1[w];
                    let mut row0 = 0;
                    for (b, (u, _)) in top_blocks.iter().enumerate() {
                        let tgt_paths = &inj[*u].1[w];
                        for (pk, path) in block_paths[b][g.vertex].iter().enumerate() {
                            let c = g.coeffs[b][pk];
                            if c == 0 {
                                continue;
                            }
                            for (qi, qpath) in tgt_paths.iter().enumerate() {
                                let full: Vec<usize> = path.iter().chain(qpath).copied().collect();
                                if let Some(ri) = src_paths.iter().position(|r| *r == full) {
                                    let (row, col) = (row0 + qi, col0 + ri);
                                    mat.set(row, col, (mat.get(row, col) + c) % p);
                                }
                            }
                        }
                        row0 += tgt_paths.len();
                    }
                    col0 += src_paths.len();
                }
                mat
            })
            .collect(),
    );
    let tau = nu_p1.sub_rep(&nu_p1.kernel_tuple(&nu_map));

    let phi = q.coxeter_matrix()?;
    let dm: Vec<i64> = m.dims().iter().map(|&x| x as i64).collect();
    let expected = mat_vec(&phi, &dm);
    let got: Vec<i64> = tau.dims().iter().map(|&x| x as i64).collect();
    if expected != got {
        return Err(Error::Precondition(format!("{} has a projective direct summand", m.dims())));
    }
    Ok(tau)
}

/// `τ⁻¹M = D τ_{Q^op} (DM)`.
pub fn ar_translate_inverse(m: &Rep) -> Result<Rep> {
    let dm = m.dual();
    let t = ar_translate(&dm).map_err(|e| match e {
        Error::Precondition(_) => Error::Precondition(format!("{} has an injective direct summand", m.dims())),
        other => other,
    })?;
    Ok(t.dual().with_quiver(m.quiver().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::rep::is_isomorphic;

    fn a3() -> Arc<Quiver> {
        Arc::new(Quiver::new(3, vec![(0, 1), (2, 1)], vec![]).unwrap())
    }

    #[test]
    fn projectives_and_injectives() {
        let q = a3();
        let dims = |r: Rep| r.dims().0.clone();
        assert_eq!(dims(Rep::projective(q.clone(), 2, 0).unwrap()), vec![1, 1, 0]);
        assert_eq!(dims(Rep::projective(q.clone(), 2, 1).unwrap()), vec![0, 1, 0]);
        assert_eq!(dims(Rep::injective(q.clone(), 2, 1).unwrap()), vec![1, 1, 1]);
        let k = Arc::new(Quiver::kronecker());
        assert_eq!(dims(Rep::projective(k.clone(), 3, 0).unwrap()), vec![1, 2]);
        assert_eq!(dims(Rep::injective(k, 3, 1).unwrap()), vec![2, 1]);
    }

    #[test]
    fn projectives_with_relations() {
        use crate::quiver::Relation;
        let q = Arc::new(Quiver::new(3, vec![(2, 1), (1, 0)], vec![Relation { terms: vec![(1, vec![1, 0])] }]).unwrap());
        assert_eq!(Rep::projective(q.clone(), 2, 2).unwrap().dims().0, vec![0, 1, 1]);
        assert_eq!(Rep::injective(q, 2, 0).unwrap().dims().0, vec![1, 1, 0]);
    }

    #[test]
    fn tau_examples() {
        let lim = Limits::default();
        let q = a3();
        let s1 = Rep::simple(q.clone(), 2, 0).unwrap();
        let t = ar_translate(&s1).unwrap();
        assert!(is_isomorphic(&t, &Rep::projective(q.clone(), 2, 2).unwrap(), &lim).unwrap());
        assert!(ar_translate(&Rep::projective(q.clone(), 2, 0).unwrap()).is_err());
        let back = ar_translate_inverse(&t).unwrap();
        assert!(is_isomorphic(&back, &s1, &lim).unwrap());

        let k = Arc::new(Quiver::kronecker());
        for p in [2, 3] {
            let ks1 = Rep::simple(k.clone(), p, 0).unwrap();
            assert_eq!(ar_translate(&ks1).unwrap().dims().0, vec![3, 2]);
        }
    }

    #[test]
    fn tau_of_a2_simple() {
        let q = Arc::new(Quiver::linear_a(2));
        let s1 = Rep::simple(q.clone(), 3, 0).unwrap();
        let s2 = Rep::simple(q, 3, 1).unwrap();
        assert!(is_isomorphic(&ar_translate(&s1).unwrap(), &s2, &Limits::default()).unwrap());
    }
}
