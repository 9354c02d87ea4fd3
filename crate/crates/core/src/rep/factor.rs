use super::{hom_space, iso_classes, GradedMap, Rep};
use crate::error::Result;
use crate::limits::Limits;
use crate::quiver::DimVector;

/// Whether `f: S -> T` factors as `c∘d` with `d: S -> E` injective and
/// `c: E -> T` surjective for some module `E` of dimension `dim_e`.
pub fn factorization_exists(s: &Rep, t: &Rep, f: &GradedMap, dim_e: &DimVector, limits: &Limits) -> Result<bool> {
    let table = iso_classes(s.quiver(), s.p(), dim_e, false, limits)?;
    for e in &table.reps {
        let ds: Vec<GradedMap> =
            hom_space(s, e).elements(limits.hom_scan, "factorization scan")?.filter(|d| d.is_injective()).collect();
        if ds.is_empty() {
            continue;
        }
        for c in hom_space(e, t).elements(limits.hom_scan, "factorization scan")? {
            if c.is_surjective() && ds.iter().any(|d| c.compose(d) == *f) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    #[test]
    fn isomorphism_factors() {
        let q = Arc::new(Quiver::linear_a(2));
        let p1 = Rep::thin(q, 2, &[true, true]).unwrap();
        let id = GradedMap::identity(2, p1.dims());
        assert!(factorization_exists(&p1, &p1, &id, p1.dims(), &Limits::default()).unwrap());
    }
}
