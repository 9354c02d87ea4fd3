//! The degenerated Green formula with `χ`-valued Hall numbers.

use num_bigint::BigInt;

use crate::error::Result;
use crate::quiver::DimVector;
use crate::report::{Comparison, Sweep};
use crate::uniform::{ClassKey, Uniform};

/// `g^{ξ′⊕η′}_{ξη} = Σ_{α⊕γ≅ξ, β⊕δ≅η} g^{ξ′}_{γδ} g^{η′}_{αβ}`.
pub fn degenerated_green_check(
    u: &Uniform,
    xi: &ClassKey,
    eta: &ClassKey,
    xi2: &ClassKey,
    eta2: &ClassKey,
) -> Result<Comparison> {
    let split = u.direct_sum(xi2, eta2)?;
    let lhs = u.chi_hall(xi, eta, &split)?;
    let mut rhs = BigInt::from(0);
    let mut terms = Vec::new();
    for (alpha, gamma) in u.splittings(xi)? {
        for (beta, delta) in u.splittings(eta)? {
            let t = u.chi_hall(&gamma, &delta, xi2)? * u.chi_hall(&alpha, &beta, eta2)?;
            if t != BigInt::from(0) {
                terms.push(format!(
                    "α={} β={} γ={} δ={}: {t}",
                    u.name(&alpha),
                    u.name(&beta),
                    u.name(&gamma),
                    u.name(&delta)
                ));
            }
            rhs += t;
        }
    }
    let case = format!("({}, {}; {}, {})", u.name(xi), u.name(eta), u.name(xi2), u.name(eta2));
    let mut c = Comparison::new(case, lhs, rhs);
    c.notes = terms;
    Ok(c)
}

fn all_classes(u: &Uniform, max_total: usize) -> Result<Vec<ClassKey>> {
    let n = u.catalog().quiver().vertex_count();
    let mut out = Vec::new();
    for t in 0..=max_total {
        for d in DimVector::with_total(n, t) {
            out.extend(u.classes(&d)?);
        }
    }
    Ok(out)
}

/// Every quadruple with common grade of total dimension at most `max_total`.
pub fn degenerated_green_sweep(u: &Uniform, max_total: usize) -> Result<Sweep> {
    let classes = all_classes(u, max_total)?;
    let mut s = Sweep::new("degenerated Green formula");
    for xi2 in &classes {
        for eta2 in &classes {
            let d = &xi2.0 + &eta2.0;
            if d.total() > max_total {
                continue;
            }
            s.extend(degenerated_green_for(u, xi2, eta2)?);
        }
    }
    Ok(s)
}

/// All `(ξ, η)` in the grade of `ξ′ ⊕ η′`, for fixed `ξ′, η′`.
pub fn degenerated_green_for(u: &Uniform, xi2: &ClassKey, eta2: &ClassKey) -> Result<Sweep> {
    let d = &xi2.0 + &eta2.0;
    let mut s = Sweep::new(format!("degenerated Green formula, ξ′={}, η′={}", u.name(xi2), u.name(eta2)));
    for e in d.below() {
        let rest = d.checked_sub(&e).expect("below");
        for xi in u.classes(&e)? {
            for eta in u.classes(&rest)? {
                s.push(degenerated_green_check(u, &xi, &eta, xi2, eta2)?);
            }
        }
    }
    Ok(s)
}

/// `χ(Ext¹(A,B)_X)` is 1 for `X ≅ A⊕B` and 0 otherwise.
pub fn split_stratum_check(u: &Uniform, a: &ClassKey, b: &ClassKey) -> Result<Sweep> {
    let split = u.direct_sum(a, b)?;
    let mut s = Sweep::new(format!("χ of Ext¹({}, {}) strata", u.name(a), u.name(b)));
    let strata = u.ext_strata(a, b)?;
    for (x, poly) in &strata {
        let expected = i32::from(x == &split);
        s.push(Comparison::new(format!("χ(Ext¹_{}) = {}", u.name(x), poly), poly.chi(), expected));
    }
    if !strata.contains_key(&split) {
        s.push(Comparison::new(format!("split stratum {} present", u.name(&split)), "missing", "present"));
    }
    Ok(s)
}

pub fn split_stratum_sweep(u: &Uniform, max_total: usize) -> Result<Sweep> {
    let classes = all_classes(u, max_total)?;
    let mut s = Sweep::new("χ of Ext¹ strata");
    for a in &classes {
        for b in &classes {
            if a.0.total() + b.0.total() <= max_total && a.0.total() > 0 && b.0.total() > 0 {
                s.extend(split_stratum_check(u, a, b)?);
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
    use std::sync::Arc;

    #[test]
    fn a2_degenerated_green() {
        let q = Arc::new(Quiver::linear_a(2));
        let u = Uniform::new(Arc::new(Catalog::type_a(q).unwrap()), Limits::default());
        let (s1, s2) = (u.lookup("S1").unwrap(), u.lookup("S2").unwrap());
        let c = degenerated_green_check(&u, &s1, &s2, &s1, &s2).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("1", "1"));
        let sweep = degenerated_green_sweep(&u, 3).unwrap();
        assert!(sweep.ok(), "{sweep}");
        assert!(split_stratum_sweep(&u, 3).unwrap().ok());
    }
}
