use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{for_each_submodule, Rep};
use crate::error::Result;
use crate::limits::Limits;
use crate::quiver::DimVector;

/// One step `(j, c)` of a flag type: the subquotient at this level is `c·S_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagStep {
    pub vertex: usize,
    pub mult: usize,
}

/// Number of arrow-stable chains `L = V⁰ ⊇ V¹ ⊇ … ⊇ V^m = 0` with `V^{k−1}/V^k` of dimension `c_k e_{j_k}`.
/// Steps with `c = 0` are skipped levels.
pub fn flag_count(l: &Rep, steps: &[FlagStep], limits: &Limits) -> Result<BigUint> {
    let Some((step, rest)) = steps.split_first() else {
        return Ok(if l.is_zero() { BigUint::one() } else { BigUint::zero() });
    };
    if step.mult == 0 {
        return flag_count(l, rest, limits);
    }
    let mut target: DimVector = l.dims().clone();
    if target.0.get(step.vertex).copied().unwrap_or(0) < step.mult {
        return Ok(BigUint::zero());
    }
    target.0[step.vertex] -= step.mult;
    let mut total = BigUint::zero();
    for_each_submodule(l, &target, limits, |t| {
        total += flag_count(&l.sub_rep(t), rest, limits)?;
        Ok(())
    })?;
    Ok(total)
}

/// Full composition-series types of `d`: every ordering of the simple factors.
pub fn composition_types(d: &DimVector) -> Vec<Vec<FlagStep>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut left = d.clone();
    fn rec(left: &mut DimVector, cur: &mut Vec<FlagStep>, out: &mut Vec<Vec<FlagStep>>) {
        if left.is_zero() {
            out.push(cur.clone());
            return;
        }
        for v in 0..left.len() {
            if left[v] > 0 {
                left.0[v] -= 1;
                cur.push(FlagStep { vertex: v, mult: 1 });
                rec(left, cur, out);
                cur.pop();
                left.0[v] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    fn steps(v: &[usize]) -> Vec<FlagStep> {
        v.iter().map(|&vertex| FlagStep { vertex, mult: 1 }).collect()
    }

    #[test]
    fn flag_examples() {
        let lim = Limits::default();
        let q = Arc::new(Quiver::linear_a(2));
        let p1 = Rep::thin(q.clone(), 2, &[true, true]).unwrap();
        assert_eq!(flag_count(&p1, &steps(&[0, 1]), &lim).unwrap(), BigUint::one());
        assert_eq!(flag_count(&p1, &steps(&[1, 0]), &lim).unwrap(), BigUint::zero());
        let ss = Rep::simple(q.clone(), 2, 0).unwrap().direct_sum(&Rep::simple(q.clone(), 2, 1).unwrap());
        assert_eq!(flag_count(&ss, &steps(&[0, 1]), &lim).unwrap(), BigUint::one());
        assert_eq!(flag_count(&ss, &steps(&[1, 0]), &lim).unwrap(), BigUint::one());
        let s = Rep::simple(q, 3, 0).unwrap();
        let s2 = s.direct_sum(&s);
        assert_eq!(flag_count(&s2, &steps(&[0, 0]), &lim).unwrap(), BigUint::from(4u32));
        assert_eq!(flag_count(&s2, &[FlagStep { vertex: 0, mult: 2 }], &lim).unwrap(), BigUint::one());
        let skip = [FlagStep { vertex: 1, mult: 0 }, FlagStep { vertex: 0, mult: 2 }];
        assert_eq!(flag_count(&s2, &skip, &lim).unwrap(), BigUint::one());
    }

    #[test]
    fn composition_type_listing() {
        assert_eq!(composition_types(&DimVector(vec![1, 1])).len(), 2);
        assert_eq!(composition_types(&DimVector(vec![2, 1])).len(), 3);
    }
}
