use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{is_isomorphic, Fingerprint, Rep};
use crate::error::{Error, Result};
use crate::ff::{all_vectors, big_pow, FfMatrix};
use crate::limits::Limits;
use crate::quiver::{DimVector, Quiver};

/// `|GL_n(F_p)|`.
pub fn gl_order(p: u64, n: usize) -> BigUint {
    let q = BigUint::from(p);
    (0..n).fold(BigUint::one(), |acc, k| acc * (q.pow(n as u32) - q.pow(k as u32)))
}

/// `|G_d| = prod_i |GL_{d_i}(F_p)|`.
pub fn group_order(p: u64, d: &DimVector) -> BigUint {
    d.iter().fold(BigUint::one(), |acc, &n| acc * gl_order(p, n))
}

/// Isomorphism classes of one dimension vector over one prime.
#[derive(Clone, Debug)]
pub struct IsoTable {
    pub p: u64,
    pub quiver: Arc<Quiver>,
    pub dim: DimVector,
    pub reps: Vec<Rep>,
    pub orbit_sizes: Vec<BigUint>,
    /// Points of `E_d(Q,R)(F_p)` scanned (after the nilpotency filter).
    pub total_points: BigUint,
    fingerprints: Vec<Fingerprint>,
    by_fingerprint: HashMap<Fingerprint, Vec<usize>>,
}

impl IsoTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `|Aut M| = |G_d| / |orbit|`.
    pub fn aut_order(&self, idx: usize) -> BigUint {
        group_order(self.p, &self.dim) / &self.orbit_sizes[idx]
    }

    /// Index of the class containing `m`, or `None` when no representative matches.
    pub fn classify(&self, m: &Rep, limits: &Limits) -> Result<Option<usize>> {
        if m.dims() != &self.dim {
            return Ok(None);
        }
        let fp = m.fingerprint();
        let Some(cands) = self.by_fingerprint.get(&fp) else { return Ok(None) };
        for &c in cands {
            if is_isomorphic(m, &self.reps[c], limits)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn push(&mut self, rep: Rep, fp: Fingerprint) -> usize {
        let idx = self.reps.len();
        self.reps.push(rep);
        self.orbit_sizes.push(BigUint::zero());
        self.by_fingerprint.entry(fp.clone()).or_default().push(idx);
        self.fingerprints.push(fp);
        idx
    }

    /// A table from known pairwise non-isomorphic representatives with known orbit sizes.
    pub fn from_classes(quiver: Arc<Quiver>, p: u64, dim: DimVector, classes: Vec<(Rep, BigUint)>) -> Self {
        let mut t = IsoTable {
            p,
            quiver,
            dim,
            reps: vec![],
            orbit_sizes: vec![],
            total_points: BigUint::zero(),
            fingerprints: vec![],
            by_fingerprint: HashMap::new(),
        };
        for (rep, orbit) in classes {
            let fp = rep.fingerprint();
            let i = t.push(rep, fp);
            t.total_points += &orbit;
            t.orbit_sizes[i] = orbit;
        }
        t
    }
}

/// Scan every point of `E_d(Q,R)(F_p)` and bucket the points up to isomorphism.
pub fn iso_classes(quiver: &Arc<Quiver>, p: u64, d: &DimVector, nilpotent_only: bool, limits: &Limits) -> Result<IsoTable> {
    quiver.check_dims(d)?;
    let arrows = quiver.arrows();
    let params: usize = arrows.iter().map(|a| d[a.source] * d[a.target]).sum();
    let points = big_pow(p, params);
    if points > BigUint::from(limits.points) {
        return Err(Error::guard("representation-variety scan", points, limits.points));
    }
    let mut table = IsoTable::from_classes(quiver.clone(), p, d.clone(), vec![]);
    for v in all_vectors(p, params) {
        let mut off = 0;
        let mats: Vec<FfMatrix> = arrows
            .iter()
            .map(|a| {
                let (r, c) = (d[a.target], d[a.source]);
                let m = FfMatrix::from_vec(p, r, c, v[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        let Ok(rep) = Rep::new(quiver.clone(), p, d.clone(), mats) else { continue };
        if nilpotent_only && !rep.is_nilpotent() {
            continue;
        }
        table.total_points += 1u32;
        let fp = rep.fingerprint();
        let mut found = None;
        if let Some(cands) = table.by_fingerprint.get(&fp) {
            for &c in cands {
                if is_isomorphic(&rep, &table.reps[c], limits)? {
                    found = Some(c);
                    break;
                }
            }
        }
        let idx = match found {
            Some(c) => c,
            None => table.push(rep, fp),
        };
        table.orbit_sizes[idx] += 1u32;
    }
    Ok(table)
}
