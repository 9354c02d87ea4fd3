use num_bigint::BigUint;

use super::{ext1_space, for_each_submodule, hom_space, is_isomorphic, middle_term, Rep};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::quiver::DimVector;

fn check_grades(x: &Rep, y: &Rep, l: &Rep) -> Result<()> {
    if &(x.dims() + y.dims()) != l.dims() {
        return Err(Error::Input(format!("{} + {} does not match {}", x.dims(), y.dims(), l.dims())));
    }
    Ok(())
}

/// `g^L_{XY}`: submodules `U ⊆ L` with `U ≅ Y` and `L/U ≅ X`.
pub fn hall_number(x: &Rep, y: &Rep, l: &Rep, limits: &Limits) -> Result<BigUint> {
    check_grades(x, y, l)?;
    let mut count = BigUint::from(0u32);
    for_each_submodule(l, y.dims(), limits, |t| {
        if is_isomorphic(&l.sub_rep(t), y, limits)? && is_isomorphic(&l.quotient_rep(t), x, limits)? {
            count += 1u32;
        }
        Ok(())
    })?;
    Ok(count)
}

/// `|Ext¹(X,Y)_L|`: extension classes whose middle term is isomorphic to `L`.
pub fn ext_stratum_count(x: &Rep, y: &Rep, l: &Rep, limits: &Limits) -> Result<BigUint> {
    check_grades(x, y, l)?;
    let ext = ext1_space(x, y);
    let mut count = BigUint::from(0u32);
    for d in ext.classes(limits.strata)? {
        if is_isomorphic(&middle_term(x, y, &d), l, limits)? {
            count += 1u32;
        }
    }
    Ok(count)
}

/// `|Hom(L1,L2)_{Y[1]⊕X}|`: maps with kernel `≅ Y` and cokernel `≅ X`.
pub fn hom_stratum_count(l1: &Rep, l2: &Rep, y: &Rep, x: &Rep, limits: &Limits) -> Result<BigUint> {
    let hom = hom_space(l1, l2);
    let mut count = BigUint::from(0u32);
    for g in hom.elements(limits.strata, "Hom stratum scan")? {
        let ker = l1.sub_rep(&l1.kernel_tuple(&g));
        if ker.dims() != y.dims() || !is_isomorphic(&ker, y, limits)? {
            continue;
        }
        let coker = l2.quotient_rep(&l2.image_tuple(&g));
        if is_isomorphic(&coker, x, limits)? {
            count += 1u32;
        }
    }
    Ok(count)
}

/// Dimension of the Grassmannian variety bounding submodule counts.
pub fn variety_dimension(d: &DimVector, e: &DimVector) -> usize {
    d.iter().zip(e.iter()).map(|(&di, &ei)| ei * (di - ei)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    #[test]
    fn hall_number_examples() {
        let lim = Limits::default();
        let q = Arc::new(Quiver::linear_a(2));
        for p in [2, 3] {
            let s1 = Rep::simple(q.clone(), p, 0).unwrap();
            let s2 = Rep::simple(q.clone(), p, 1).unwrap();
            let p1 = Rep::thin(q.clone(), p, &[true, true]).unwrap();
            assert_eq!(hall_number(&s1, &s2, &p1, &lim).unwrap(), BigUint::from(1u32));
            assert_eq!(hall_number(&s2, &s1, &s1.direct_sum(&s2), &lim).unwrap(), BigUint::from(1u32));
            assert_eq!(hall_number(&s1, &s1, &s1.direct_sum(&s1), &lim).unwrap(), BigUint::from(p + 1));
        }
    }

    #[test]
    fn ext_stratum_examples() {
        let lim = Limits::default();
        let q = Arc::new(Quiver::linear_a(2));
        let s1 = Rep::simple(q.clone(), 2, 0).unwrap();
        let s2 = Rep::simple(q.clone(), 2, 1).unwrap();
        let p1 = Rep::thin(q.clone(), 2, &[true, true]).unwrap();
        assert_eq!(ext_stratum_count(&s1, &s2, &p1, &lim).unwrap(), BigUint::from(1u32));
        assert_eq!(ext_stratum_count(&s2, &s1, &s1.direct_sum(&s2), &lim).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn hom_stratum_counts_automorphisms() {
        let lim = Limits::default();
        let q = Arc::new(Quiver::linear_a(2));
        let s1 = Rep::simple(q.clone(), 3, 0).unwrap();
        let m = s1.direct_sum(&s1);
        let zero = Rep::zero(q, 3);
        assert_eq!(hom_stratum_count(&m, &m, &zero, &zero, &lim).unwrap(), BigUint::from(48u32));
        assert!(hom_stratum_count(&m, &m, &m, &m, &lim).unwrap() >= BigUint::from(1u32));
    }
}
