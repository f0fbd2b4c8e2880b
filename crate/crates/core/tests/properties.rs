mod common;

use common::load;
use hodge_forge::bergman::bergman_fan;
use hodge_forge::chow::{linear_function_divisor, ChowSpace, DivisorClass};
use hodge_forge::convexity::{is_strictly_convex, submodular_class, SubmodularFunction};
use hodge_forge::hodge::{hr_check, signature};
use hodge_forge::linalg::Matrix;
use hodge_forge::rational::{int, Rational};
use hodge_forge::weights::standard_degree;
use hodge_forge::Matroid;
use proptest::prelude::*;

const SMALL: [&str; 7] = ["b3", "b4", "u23", "u24", "u34", "u35", "line_plus_point"];

fn class_strategy(n: usize) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| DivisorClass::new(v.into_iter().map(int).collect()))
}

fn symmetric(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        let mut rows = vec![vec![int(0); n]; n];
        for i in 0..n {
            for j in i..n {
                rows[i][j] = int(v[i * n + j]);
                rows[j][i] = int(v[i * n + j]);
            }
        }
        Matrix::from_rows(rows, n)
    })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    // Unit lower-triangular times a signed permutation.
    (prop::collection::vec(-2i64..=2, n * n), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n))
        .prop_map(move |(v, perm, signs)| {
            let mut l = vec![vec![int(0); n]; n];
            for i in 0..n {
                for j in 0..i {
                    l[i][j] = int(v[i * n + j]);
                }
                l[i][i] = int(1);
            }
            let mut p = vec![vec![int(0); n]; n];
            for (i, &j) in perm.iter().enumerate() {
                p[i][j] = int(if signs[i] { 1 } else { -1 });
            }
            Matrix::from_rows(l, n).mul(&Matrix::from_rows(p, n))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inertia_is_a_congruence_invariant((a, p) in (1usize..6).prop_flat_map(|n| (symmetric(n), invertible(n)))) {
        let s = signature(&a).unwrap();
        prop_assert_eq!(s.positive + s.negative + s.zero, a.nrows());
        prop_assert_eq!(s.positive + s.negative, a.rank());
        let b = p.transpose().mul(&a).mul(&p);
        prop_assert_eq!(signature(&b).unwrap(), s);
        prop_assert_eq!(signature(&a.scaled(&int(-1))).unwrap().positive, s.negative);
    }

    #[test]
    fn chow_product_is_commutative_and_associative(
        (idx, a, b, c) in (0..SMALL.len()).prop_flat_map(|i| {
            let n = bergman_fan(&load(SMALL[i])).num_rays();
            (Just(i), class_strategy(n), class_strategy(n), class_strategy(n))
        })
    ) {
        let ch = ChowSpace::new(&bergman_fan(&load(SMALL[idx])));
        let (a, b, c) = (ch.divisor(&a), ch.divisor(&b), ch.divisor(&c));
        prop_assert_eq!(ch.multiply(&a, &b), ch.multiply(&b, &a));
        if ch.top_degree() >= 3 {
            prop_assert_eq!(ch.multiply(&ch.multiply(&a, &b), &c), ch.multiply(&a, &ch.multiply(&b, &c)));
        }
        let deg = standard_degree(&ch).unwrap();
        if ch.top_degree() == 2 {
            prop_assert_eq!(deg.degree(&ch.multiply(&a, &b)).unwrap(), deg.degree(&ch.multiply(&b, &a)).unwrap());
        }
    }

    #[test]
    fn linear_functions_vanish(
        (idx, phi) in (0..SMALL.len()).prop_flat_map(|i| {
            let dim = bergman_fan(&load(SMALL[i])).ambient_dim();
            (Just(i), prop::collection::vec(-5i64..=5, dim))
        })
    ) {
        let fan = bergman_fan(&load(SMALL[idx]));
        let ch = ChowSpace::new(&fan);
        let phi: Vec<Rational> = phi.into_iter().map(int).collect();
        prop_assert!(ch.divisor(&linear_function_divisor(&fan, &phi)).is_zero());
    }

    #[test]
    fn witness_cone_and_linear_shifts(
        (idx, lambda, mu, phi) in (0..SMALL.len()).prop_flat_map(|i| {
            let dim = bergman_fan(&load(SMALL[i])).ambient_dim();
            (Just(i), 1i64..5, 0i64..5, prop::collection::vec(-3i64..=3, dim))
        })
    ) {
        let m = load(SMALL[idx]);
        let fan = bergman_fan(&m);
        let l0 = submodular_class(&m, &SubmodularFunction::Default).unwrap();
        let l1 = submodular_class(&m, &SubmodularFunction::Cubic).unwrap();
        let phi: Vec<Rational> = phi.into_iter().map(int).collect();
        let ell = l0.scale(&int(lambda)).add(&l1.scale(&int(mu))).add(&linear_function_divisor(&fan, &phi));
        prop_assert!(is_strictly_convex(&fan, &ell).unwrap());
        let ch = ChowSpace::new(&fan);
        let deg = standard_degree(&ch).unwrap();
        prop_assert!(hr_check(&ch, &deg, &ch.divisor(&ell)).passed());
    }

    #[test]
    fn matroid_json_round_trip(idx in 0..common::corpus_names().len()) {
        let name = &common::corpus_names()[idx];
        let m = load(name);
        let back = Matroid::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.flats(), m.flats());
        prop_assert_eq!(back.name(), m.name());
    }
}
