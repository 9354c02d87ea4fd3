//! Associativity between Hall numbers and the strata `V(X,Y;L1,L2)` of maps `L1 → L2`
//! with kernel `Y` and cokernel `X`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::chi::CountPoly;
use crate::error::Result;
use crate::quiver::DimVector;
use crate::report::{Comparison, Sweep};
use crate::uniform::{ClassKey, Uniform};

/// Which end of the maps carries the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocSide {
    /// `Σ_Y g^Y_{Y2Y1} h^{L1L2}_{XY} = Σ_{L1′} g^{L1}_{L1′Y1} h^{L1′L2}_{XY2}`.
    Kernel,
    /// `Σ_X g^X_{X2X1} h^{L1L2}_{XY} = Σ_{L2′} g^{L2}_{X2L2′} h^{L1L2′}_{X1Y}`.
    Cokernel,
}

type Strata = BTreeMap<(ClassKey, ClassKey), CountPoly>;

struct H<'a> {
    u: &'a Uniform,
    projective: bool,
    cache: Mutex<HashMap<(ClassKey, ClassKey), Arc<Strata>>>,
}

impl<'a> H<'a> {
    fn new(u: &'a Uniform, projective: bool) -> Self {
        H { u, projective, cache: Mutex::default() }
    }

    /// `χ(V(X,Y;L1,L2))`, or of its projectivization.
    fn h(&self, l1: &ClassKey, l2: &ClassKey, x: &ClassKey, y: &ClassKey) -> Result<BigInt> {
        let key = (l1.clone(), l2.clone());
        let cached = self.cache.lock().expect("poisoned").get(&key).cloned();
        let strata = match cached {
            Some(s) => s,
            None => {
                let s = Arc::new(if self.projective {
                    self.u.projective_hom_strata(l1, l2)?
                } else {
                    self.u.hom_strata(l1, l2)?
                });
                self.cache.lock().expect("poisoned").insert(key, s.clone());
                s
            }
        };
        Ok(strata.get(&(y.clone(), x.clone())).map(CountPoly::chi).unwrap_or_default())
    }

    fn check(
        &self,
        side: AssocSide,
        fixed: &ClassKey,
        a: &ClassKey,
        b: &ClassKey,
        l1: &ClassKey,
        l2: &ClassKey,
    ) -> Result<Comparison> {
        let u = self.u;
        let mut lhs = BigInt::from(0);
        let mut rhs = BigInt::from(0);
        match side {
            AssocSide::Kernel => {
                let (x, y1, y2) = (fixed, a, b);
                for y in u.classes(&(&y1.0 + &y2.0))? {
                    lhs += u.chi_hall(y2, y1, &y)? * self.h(l1, l2, x, &y)?;
                }
                if let Some(d) = l1.0.checked_sub(&y1.0) {
                    for l1p in u.classes(&d)? {
                        rhs += u.chi_hall(&l1p, y1, l1)? * self.h(&l1p, l2, x, y2)?;
                    }
                }
            }
            AssocSide::Cokernel => {
                let (y, x1, x2) = (fixed, a, b);
                for x in u.classes(&(&x1.0 + &x2.0))? {
                    lhs += u.chi_hall(x2, x1, &x)? * self.h(l1, l2, &x, y)?;
                }
                if let Some(d) = l2.0.checked_sub(&x2.0) {
                    for l2p in u.classes(&d)? {
                        rhs += u.chi_hall(x2, &l2p, l2)? * self.h(l1, &l2p, x1, y)?;
                    }
                }
            }
        }
        let tag = if self.projective { "ℙ " } else { "" };
        let case = format!(
            "{tag}{side:?} ({}; {}, {}; {}, {})",
            u.name(fixed),
            u.name(a),
            u.name(b),
            u.name(l1),
            u.name(l2)
        );
        Ok(Comparison::new(case, lhs, rhs))
    }
}

/// One instance: for [`AssocSide::Kernel`] the arguments are `(X, Y1, Y2)`, for
/// [`AssocSide::Cokernel`] they are `(Y, X1, X2)`.
#[allow(clippy::too_many_arguments)]
pub fn higher_assoc_check(
    u: &Uniform,
    side: AssocSide,
    projective: bool,
    fixed: &ClassKey,
    a: &ClassKey,
    b: &ClassKey,
    l1: &ClassKey,
    l2: &ClassKey,
) -> Result<Comparison> {
    H::new(u, projective).check(side, fixed, a, b, l1, l2)
}

fn classes_up_to(u: &Uniform, d: &DimVector) -> Result<Vec<ClassKey>> {
    let mut out = Vec::new();
    for e in d.below() {
        out.extend(u.classes(&e)?);
    }
    Ok(out)
}

/// Both sides, plain and projective, for every `L1, L2` with `dim L1 + dim L2 ≤ max_total`.
pub fn higher_assoc_sweep(u: &Uniform, max_total: usize) -> Result<Sweep> {
    let n = u.catalog().quiver().vertex_count();
    let mut all = Vec::new();
    for t in 0..=max_total {
        for d in DimVector::with_total(n, t) {
            all.extend(u.classes(&d)?);
        }
    }
    let mut s = Sweep::new(format!("higher associativity, dim L1 + dim L2 ≤ {max_total}"));
    for projective in [false, true] {
        let h = H::new(u, projective);
        for l1 in &all {
            for l2 in &all {
                if l1.0.total() + l2.0.total() > max_total {
                    continue;
                }
                // Kernel side: Y1 + Y2 ≤ L1, X = L2 − L1 + Y1 + Y2.
                for y1 in classes_up_to(u, &l1.0)? {
                    let room = l1.0.checked_sub(&y1.0).expect("below");
                    for y2 in classes_up_to(u, &room)? {
                        let y = &y1.0 + &y2.0;
                        let Some(dx) = (&l2.0 + &y).checked_sub(&l1.0) else { continue };
                        for x in u.classes(&dx)? {
                            s.push(h.check(AssocSide::Kernel, &x, &y1, &y2, l1, l2)?);
                        }
                    }
                }
                // Cokernel side: Y ≤ L1, X1 + X2 = L2 − L1 + Y.
                for y in classes_up_to(u, &l1.0)? {
                    let Some(dx) = (&l2.0 + &y.0).checked_sub(&l1.0) else { continue };
                    for e in dx.below() {
                        let rest = dx.checked_sub(&e).expect("below");
                        for x1 in u.classes(&e)? {
                            for x2 in u.classes(&rest)? {
                                s.push(h.check(AssocSide::Cokernel, &y, &x1, &x2, l1, l2)?);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::limits::Limits;
    use crate::quiver::Quiver;

    #[test]
    fn a2_instance_and_sweep() {
        let q = Arc::new(Quiver::linear_a(2));
        let u = Uniform::new(Arc::new(Catalog::type_a(q).unwrap()), Limits::default());
        let k = |s: &str| u.lookup(s).unwrap();
        for projective in [false, true] {
            let c = higher_assoc_check(&u, AssocSide::Kernel, projective, &k("S1"), &k("S2"), &k("0"), &k("P1"), &k("S1"))
                .unwrap();
            assert!(c.holds, "{c}");
        }
        let s = higher_assoc_sweep(&u, 3).unwrap();
        assert!(s.ok(), "{s}");
    }
}
