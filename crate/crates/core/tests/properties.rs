use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;

use hallkit::catalog::Catalog;
use hallkit::cc::{CcForm, CcMap};
use hallkit::chi::interpolate;
use hallkit::cluster::{mutate_matrix, Seed};
use hallkit::ff::FfMatrix;
use hallkit::hall::Universe;
use hallkit::laurent::LaurentPoly;
use hallkit::object::ModSpec;
use hallkit::quiver::{check_antisymmetric, IntMatrix, Quiver};
use hallkit::rep::{composition_types, Rep};
use hallkit::twocy::{flag_chi, TwoCy};
use hallkit::uniform::Uniform;
use hallkit::Limits;

fn skew(n: usize, upper: &[i64]) -> IntMatrix {
    let mut b = vec![vec![0; n]; n];
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    for ((i, j), &x) in pairs.zip(upper) {
        b[i][j] = x;
        b[j][i] = -x;
    }
    b
}

/// A unit lower triangular times a unit upper triangular matrix, filled from `seed`.
fn base_change(p: u64, n: usize, seed: &[i64]) -> FfMatrix {
    let mut lower = FfMatrix::identity(p, n);
    let mut upper = FfMatrix::identity(p, n);
    let mut it = seed.iter().cycle();
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, hallkit::ff::reduce(*it.next().unwrap(), p));
            upper.set(j, i, hallkit::ff::reduce(*it.next().unwrap(), p));
        }
    }
    lower.mul(&upper)
}

fn conjugate(m: &Rep, seed: &[i64]) -> Rep {
    let p = m.p();
    let d = m.dims();
    let g: Vec<FfMatrix> = (0..d.len()).map(|i| base_change(p, d[i], &seed[i..])).collect();
    let mats = m
        .quiver()
        .arrows()
        .iter()
        .zip(m.mats())
        .map(|(a, x)| g[a.target].mul(x).mul(&g[a.source].inverse().expect("invertible")))
        .collect();
    Rep::new(m.quiver().clone(), p, d.clone(), mats).expect("conjugate is a representation")
}

fn a3() -> Arc<Quiver> {
    Arc::new(Quiver::new(3, vec![(0, 1), (2, 1)], vec![]).unwrap())
}

fn a3_cc() -> &'static CcMap {
    static CC: OnceLock<CcMap> = OnceLock::new();
    CC.get_or_init(|| CcMap::new(a3(), Limits::default()).unwrap())
}

fn a3_uniform() -> &'static Uniform {
    static U: OnceLock<Uniform> = OnceLock::new();
    U.get_or_init(|| Uniform::new(Arc::new(Catalog::for_quiver(a3()).unwrap()), Limits::default()))
}

fn a2_universe(p: u64) -> &'static Universe {
    static U2: OnceLock<Universe> = OnceLock::new();
    static U3: OnceLock<Universe> = OnceLock::new();
    let build = || {
        let q = Arc::new(Quiver::linear_a(2));
        Universe::build(Arc::new(Catalog::for_quiver(q).unwrap()), p, 3, &Limits::default()).unwrap()
    };
    if p == 2 {
        U2.get_or_init(build)
    } else {
        U3.get_or_init(build)
    }
}

fn two_cy() -> &'static TwoCy {
    static T: OnceLock<TwoCy> = OnceLock::new();
    T.get_or_init(|| TwoCy::build(&Quiver::linear_a(2), 3, Limits::default()).unwrap())
}

const A3_OBJECTS: [&str; 6] = ["S1", "S2", "S3", "P1", "P3", "I2"];

fn laurent_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, 2), -3i64..=3), 0..4)
        .prop_map(|terms| LaurentPoly::from_terms(2, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mutation_is_an_involution(n in 1usize..=3, upper in prop::collection::vec(-2i64..=2, 3), j in 0usize..3) {
        let j = j % n;
        let seed = Seed::initial(skew(n, &upper)).unwrap();
        let back = seed.mutate(j).unwrap().mutate(j).unwrap();
        prop_assert_eq!(back, seed);
    }

    #[test]
    fn mutation_keeps_b_skew(n in 1usize..=4, upper in prop::collection::vec(-2i64..=2, 6), seq in prop::collection::vec(0usize..4, 0..8)) {
        let mut b = skew(n, &upper);
        for j in seq {
            b = mutate_matrix(&b, j % n);
            prop_assert!(check_antisymmetric(&b).is_ok());
        }
    }

    #[test]
    fn cluster_character_ignores_base_change(k in 0usize..6, seed in prop::collection::vec(-5i64..5, 8)) {
        let name = A3_OBJECTS[k];
        let cc = a3_cc();
        let spec = ModSpec::parse(name).unwrap();
        let moved = cc.cc_of(|p| Ok(conjugate(&spec.realize(cc.quiver(), p)?, &seed)), CcForm::Product).unwrap();
        prop_assert_eq!(moved, cc.cc_module(&spec).unwrap());
        let u = a3_uniform();
        let m = conjugate(&spec.realize(cc.quiver(), 3).unwrap(), &seed);
        prop_assert_eq!(u.classify(&m).unwrap(), u.lookup(name).unwrap());
    }

    #[test]
    fn cluster_character_of_direct_sum(a in 0usize..6, b in 0usize..6) {
        let cc = a3_cc();
        let (x, y) = (ModSpec::parse(A3_OBJECTS[a]).unwrap(), ModSpec::parse(A3_OBJECTS[b]).unwrap());
        let sum = ModSpec::sum(vec![x.clone(), y.clone()]);
        let direct = cc.cc_of(|p| sum.realize(cc.quiver(), p), CcForm::Coxeter).unwrap();
        prop_assert_eq!(direct, &cc.cc_module(&x).unwrap() * &cc.cc_module(&y).unwrap());
    }

    #[test]
    fn evaluation_forms_ignore_base_change(grade in 0usize..4, pick in 0usize..8, seed in prop::collection::vec(-5i64..5, 8)) {
        let t = two_cy();
        let u = t.uniform();
        let d = hallkit::quiver::DimVector(vec![[1, 1, 2, 1][grade], [1, 0, 1, 2][grade]]);
        let keys = u.classes(&d).unwrap();
        let key = &keys[pick % keys.len()];
        let types = composition_types(&d);
        let direct = t.delta(key, &types).unwrap();
        for (steps, want) in types.iter().zip(&direct) {
            let moved = flag_chi(|p| Ok(conjugate(&u.realize(key, p)?, &seed)), steps, u.limits()).unwrap();
            prop_assert_eq!(&moved, want);
        }
    }

    #[test]
    fn strata_partition_ext_and_hom(p in prop::sample::select(vec![2u64, 3]), k in 0usize..1000) {
        let u = a2_universe(p);
        let pairs: Vec<_> =
            u.all().flat_map(|x| u.all().map(move |y| (x, y))).filter(|&(x, y)| (u.dims(x) + u.dims(y)).total() <= 3).collect();
        let (x, y) = pairs[k % pairs.len()];
        let (ext, hom) = u.partition_sums(x, y).unwrap();
        prop_assert!(ext.holds, "{}", ext);
        prop_assert!(hom.holds, "{}", hom);
    }

    #[test]
    fn laurent_ring_laws(a in laurent_poly(), b in laurent_poly(), c in laurent_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }

    #[test]
    fn interpolation_recovers_polynomials(coeffs in prop::collection::vec(-4i64..=4, 1..=4)) {
        let f = |p: u64| {
            let q = BigInt::from(p);
            Ok(coeffs.iter().rev().fold(BigInt::from(0), |acc, c| acc * &q + c))
        };
        let poly = interpolate(f, 3, &Limits::default()).unwrap();
        let mut want: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        while want.last().is_some_and(|c| *c == BigInt::from(0)) {
            want.pop();
        }
        let mut got = poly.coeffs.clone();
        while got.last().is_some_and(|c| *c == BigInt::from(0)) {
            got.pop();
        }
        prop_assert_eq!(got, want);
    }
}
