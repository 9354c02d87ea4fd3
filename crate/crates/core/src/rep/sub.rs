use num_bigint::BigUint;
use num_traits::One;

use super::Rep;
use crate::error::{Error, Result};
use crate::ff::{gaussian_binomial, subspaces, Subspace};
use crate::limits::Limits;
use crate::quiver::DimVector;

/// An arrow-stable tuple of subspaces, one per vertex.
pub type SubTuple = Vec<Subspace>;

/// Product of the Gaussian binomials bounding a submodule scan.
pub fn submodule_count_guard(l: &Rep, e: &DimVector, limits: &Limits) -> Result<()> {
    let mut total = BigUint::one();
    for (&d, &k) in l.dims().iter().zip(e.iter()) {
        total *= gaussian_binomial(l.p(), d, k);
    }
    if total > BigUint::from(limits.subspaces) {
        return Err(Error::guard("submodule scan", total, limits.subspaces));
    }
    Ok(())
}

/// Calls `f` on every submodule of `l` with dimension vector `e`.
pub fn for_each_submodule(
    l: &Rep,
    e: &DimVector,
    limits: &Limits,
    mut f: impl FnMut(&[Subspace]) -> Result<()>,
) -> Result<()> {
    l.quiver().check_dims(e)?;
    if !e.le(l.dims()) {
        return Err(Error::Input(format!("{e} is not below {}", l.dims())));
    }
    submodule_count_guard(l, e, limits)?;
    let n = l.dims().len();
    let candidates: Vec<Vec<Subspace>> = (0..n)
        .map(|i| subspaces(l.p(), l.dims()[i], e[i], limits.subspaces).map(|it| it.collect()))
        .collect::<Result<_>>()?;
    // arrows checked once both endpoints are fixed
    let arrows = l.quiver().arrows();
    let checks: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..arrows.len()).filter(|&k| arrows[k].source.max(arrows[k].target) == v).collect())
        .collect();
    let mut chosen: Vec<Subspace> = Vec::with_capacity(n);
    rec(l, &candidates, &checks, &mut chosen, &mut f)
}

fn rec(
    l: &Rep,
    candidates: &[Vec<Subspace>],
    checks: &[Vec<usize>],
    chosen: &mut Vec<Subspace>,
    f: &mut impl FnMut(&[Subspace]) -> Result<()>,
) -> Result<()> {
    let v = chosen.len();
    if v == candidates.len() {
        return f(chosen);
    }
    let arrows = l.quiver().arrows();
    for u in &candidates[v] {
        chosen.push(u.clone());
        let ok = checks[v].iter().all(|&k| {
            let a = arrows[k];
            let us = &chosen[a.source];
            (0..us.dim()).all(|r| chosen[a.target].contains(&l.mats()[k].mul_vec(us.basis().row(r))))
        });
        if ok {
            rec(l, candidates, checks, chosen, f)?;
        }
        chosen.pop();
    }
    Ok(())
}

pub fn submodules(l: &Rep, e: &DimVector, limits: &Limits) -> Result<Vec<SubTuple>> {
    let mut out = Vec::new();
    for_each_submodule(l, e, limits, |t| {
        out.push(t.to_vec());
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    #[test]
    fn submodule_examples() {
        let q = Arc::new(Quiver::linear_a(2));
        let lim = Limits::default();
        let s1 = Rep::simple(q.clone(), 2, 0).unwrap();
        let s2 = Rep::simple(q.clone(), 2, 1).unwrap();
        let l = s1.direct_sum(&s2);
        assert_eq!(submodules(&l, &DimVector(vec![0, 1]), &lim).unwrap().len(), 1);
        assert_eq!(submodules(&l, &DimVector(vec![0, 0]), &lim).unwrap().len(), 1);
        assert_eq!(submodules(&s1.direct_sum(&s1), &DimVector(vec![1, 0]), &lim).unwrap().len(), 3);
        let p1 = Rep::thin(q, 2, &[true, true]).unwrap();
        assert_eq!(submodules(&p1, &DimVector(vec![1, 0]), &lim).unwrap().len(), 0);
    }
}
