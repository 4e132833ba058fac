mod common;

use common::*;
use leeform::exterior::{ExtForm, Vector};
use leeform::random::rng;
use leeform::scalar::qi;
use leeform::{MultiIndex, Q};
use proptest::prelude::*;
use rand::Rng;

fn sign(p: usize) -> Q {
    qi(if p.is_multiple_of(2) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graded_anticommutativity(seed in any::<u64>()) {
        let mut r = rng(seed, 0);
        let n = r.random_range(1..=8);
        let (a, b) = (r.random_range(0..=n), r.random_range(0..=n));
        let x = random_form(&mut r, n, a, 0.3);
        let y = random_form(&mut r, n, b, 0.3);
        let xy = x.wedge(&y).unwrap();
        let yx = y.wedge(&x).unwrap();
        prop_assert_eq!(xy, yx.scale(&sign(a * b)));
    }

    #[test]
    fn wedge_is_bilinear(seed in any::<u64>()) {
        let mut r = rng(seed, 1);
        let n = r.random_range(1..=8);
        let (a, b) = (r.random_range(0..=n), r.random_range(0..=n));
        let x1 = random_form(&mut r, n, a, 0.3);
        let x2 = random_form(&mut r, n, a, 0.3);
        let y = random_form(&mut r, n, b, 0.3);
        let c = small(&mut r, 5);
        let lhs = x1.scale(&c).add(&x2).unwrap().wedge(&y).unwrap();
        let rhs = x1.wedge(&y).unwrap().scale(&c).add(&x2.wedge(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed, 2);
        let n = r.random_range(1..=8);
        let forms: Vec<ExtForm> = (0..3)
            .map(|_| {
                let k = r.random_range(0..=3.min(n));
                random_form(&mut r, n, k, 0.4)
            })
            .collect();
        let left = forms[0].wedge(&forms[1]).unwrap().wedge(&forms[2]).unwrap();
        let right = forms[0].wedge(&forms[1].wedge(&forms[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interior_is_an_antiderivation(seed in any::<u64>()) {
        let mut r = rng(seed, 3);
        let n = r.random_range(1..=7);
        let (a, b) = (r.random_range(0..=n), r.random_range(0..=n));
        let mu = random_form(&mut r, n, a, 0.4);
        let nu = random_form(&mut r, n, b, 0.4);
        let v = random_vector(&mut r, n);
        let lhs = mu.wedge(&nu).unwrap().interior(&v).unwrap();
        if a + b == 0 {
            prop_assert!(lhs.is_zero());
            return Ok(());
        }
        let mut rhs = ExtForm::zero(n, a + b - 1);
        if a > 0 {
            rhs = rhs.add(&mu.interior(&v).unwrap().wedge(&nu).unwrap()).unwrap();
        }
        if b > 0 {
            let t = mu.wedge(&nu.interior(&v).unwrap()).unwrap().scale(&sign(a));
            rhs = rhs.add(&t).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_squares_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed, 4);
        let n = r.random_range(1..=8);
        let k = r.random_range(2..=n.max(2)).min(n);
        let theta = random_form(&mut r, n, k, 0.5);
        let v = random_vector(&mut r, n);
        prop_assert!(theta.interior(&v).unwrap().interior(&v).unwrap().is_zero());
    }

    #[test]
    fn pairing_matches_evaluation(seed in any::<u64>()) {
        let mut r = rng(seed, 5);
        let n = r.random_range(1..=6);
        let k = r.random_range(1..=n);
        let theta = random_form(&mut r, n, k, 0.5);
        let xs: Vec<Vector> = (0..k).map(|_| random_vector(&mut r, n)).collect();
        let expected = reverse_sign(k) * factorial(k) * evaluate_oracle(&theta, &xs);
        prop_assert_eq!(theta.pairing(&xs).unwrap(), expected.clone());
        prop_assert_eq!(theta.evaluate(&xs).unwrap(), evaluate_oracle(&theta, &xs));
    }

    #[test]
    fn pairing_of_decomposable_is_determinant(seed in any::<u64>()) {
        let mut r = rng(seed, 6);
        let n = r.random_range(1..=6);
        let k = r.random_range(1..=n);
        let covs: Vec<Vector> = (0..k).map(|_| random_vector(&mut r, n)).collect();
        let xs: Vec<Vector> = (0..k).map(|_| random_vector(&mut r, n)).collect();
        let theta = covs.iter().fold(ExtForm::constant(n, qi(1)), |acc, a| {
            acc.wedge(&ExtForm::covector(a.components())).unwrap()
        });
        let m: Vec<Vec<Q>> = covs
            .iter()
            .map(|a| {
                xs.iter()
                    .map(|x| a.components().iter().zip(x.components()).map(|(u, v)| u * v).sum())
                    .collect()
            })
            .collect();
        prop_assert_eq!(theta.pairing(&xs).unwrap(), reverse_sign(k) * leibniz_det(&m));
    }

    #[test]
    fn coefficients_are_recovered_from_pairings(seed in any::<u64>()) {
        let mut r = rng(seed, 7);
        let n = r.random_range(1..=7);
        let k = r.random_range(1..=n);
        let theta = random_form(&mut r, n, k, 0.5);
        let mut rebuilt = ExtForm::zero(n, k);
        for m in MultiIndex::combinations(n, k) {
            let xs: Vec<Vector> = m.indices().map(|i| Vector::basis(n, i)).collect();
            rebuilt.add_term(m, reverse_sign(k) * theta.pairing(&xs).unwrap());
        }
        prop_assert_eq!(rebuilt, theta);
    }

    #[test]
    fn interior_division_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed, 8);
        let n = r.random_range(2..=7);
        let k = r.random_range(1..=n);
        let nu = random_form(&mut r, n, k, 0.5);
        let x = random_vector(&mut r, n);
        prop_assume!(!x.is_zero());
        let mu = nu.interior(&x).unwrap();
        let lifted = mu.interior_division(&x).unwrap();
        prop_assert_eq!(lifted.interior(&x).unwrap(), mu);
    }
}

#[test]
fn zero_pairings_force_zero_form() {
    let n = 4;
    for k in 1..=n {
        let theta = ExtForm::<Q>::zero(n, k);
        for m in MultiIndex::combinations(n, k) {
            let xs: Vec<Vector> = m.indices().map(|i| Vector::basis(n, i)).collect();
            assert!(is_zero_q(&theta.pairing(&xs).unwrap()));
        }
    }
}
