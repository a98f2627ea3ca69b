mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssred_core::exactalg::{spin, FieldSpec, Matrix, Subspace};
use ssred_core::matrep::{algebra_basis, in_span, module_iso, Representation};

use common::*;

fn field_and_rng() -> impl Strategy<Value = (FieldSpec, usize, ChaCha8Rng)> {
    (0..FIELDS.len(), 1usize..=4, any::<u64>()).prop_map(|(f, n, s)| (FIELDS[f], n, ChaCha8Rng::seed_from_u64(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent_and_keeps_the_row_space((field, n, mut rng) in field_and_rng(), cols in 1usize..=5) {
        let m = random_matrix(&mut rng, field, n, cols);
        let r = m.rref();
        prop_assert_eq!(&r.matrix.rref().matrix, &r.matrix);
        prop_assert_eq!(r.rank, r.pivots.len());
        prop_assert_eq!(Subspace::row_space(&m), Subspace::row_space(&r.matrix));
    }

    #[test]
    fn spin_is_the_least_invariant_subspace((field, n, mut rng) in field_and_rng(), gens in 1usize..=3) {
        let ops: Vec<Matrix> = (0..gens).map(|_| random_invertible(&mut rng, field, n)).collect();
        let v = random_matrix(&mut rng, field, 1, n).row(0).to_vec();
        let s = spin(field, n, std::slice::from_ref(&v), &ops);
        prop_assert!(s.contains_vector(&v));
        for op in &ops {
            prop_assert!(s.is_invariant(op));
        }
        // Every spun vector lies in any invariant subspace containing v.
        let again = spin(field, n, &s.basis_vectors(), &ops);
        prop_assert_eq!(&again, &s);
        let mut word = v.clone();
        for op in ops.iter().cycle().take(3 * gens) {
            word = op.mul_vec(&word);
            prop_assert!(s.contains_vector(&word));
        }
    }

    #[test]
    fn limit_is_a_homomorphism_on_the_parabolic((field, n, mut rng) in field_and_rng()) {
        let lambda = random_cocharacter(&mut rng, field, n);
        let g = random_parabolic(&mut rng, &lambda);
        let h = random_parabolic(&mut rng, &lambda);
        prop_assert!(lambda.in_parabolic(&g).unwrap());
        let lhs = lambda.limit(&(&g * &h)).unwrap();
        let rhs = &lambda.limit(&g).unwrap() * &lambda.limit(&h).unwrap();
        prop_assert_eq!(lhs, rhs);
        // The limit is a retraction onto the Levi.
        let l = lambda.limit(&g).unwrap();
        prop_assert_eq!(lambda.limit(&l).unwrap(), l);
    }

    #[test]
    fn conjugating_the_cocharacter_conjugates_parabolic_and_limit((field, n, mut rng) in field_and_rng()) {
        let lambda = random_cocharacter(&mut rng, field, n);
        let g = random_invertible(&mut rng, field, n);
        let g_inv = g.inverse().unwrap();
        let mu = lambda.conjugate(&g).unwrap();
        let p = random_parabolic(&mut rng, &lambda);
        let gp = p.conjugate_by(&g, &g_inv);
        prop_assert!(mu.in_parabolic(&gp).unwrap());
        prop_assert_eq!(mu.limit(&gp).unwrap(), lambda.limit(&p).unwrap().conjugate_by(&g, &g_inv));
        prop_assert_eq!(mu.flag(), lambda.flag().image(&g));
        let m = random_matrix(&mut rng, field, n, n);
        prop_assert_eq!(lambda.in_parabolic(&m).unwrap(), mu.in_parabolic(&m.conjugate_by(&g, &g_inv)).unwrap());
    }

    #[test]
    fn limit_depends_on_flag_and_levi_not_weights((field, n, mut rng) in field_and_rng(), stretch in 1i64..=4, shift in -5i64..=5) {
        let lambda = random_cocharacter(&mut rng, field, n);
        let w2: Vec<i64> = lambda.weights().iter().map(|w| stretch * w + shift).collect();
        let mu = ssred_core::cochar::Cocharacter::new(lambda.basis_change().clone(), w2).unwrap();
        let p = random_parabolic(&mut rng, &lambda);
        prop_assert_eq!(mu.limit(&p).unwrap(), lambda.limit(&p).unwrap());
        prop_assert_eq!(mu.flag(), lambda.flag());
    }

    #[test]
    fn module_iso_is_symmetric((field, n, mut rng) in field_and_rng(), gens in 1usize..=2) {
        let a = random_rep(&mut rng, field, n, gens);
        let g = random_invertible(&mut rng, field, n);
        let b = a.conjugate(&g).unwrap();
        let check = |x: &Representation, y: &Representation, t: &Matrix| {
            let t_inv = t.inverse().unwrap();
            x.generators().iter().zip(y.generators()).all(|(u, v)| &u.conjugate_by(t, &t_inv) == v)
        };
        let ab = module_iso(&a, &b).unwrap().expect("conjugate reps are isomorphic");
        let ba = module_iso(&b, &a).unwrap().expect("isomorphism is symmetric");
        prop_assert!(check(&a, &b, &ab));
        prop_assert!(check(&b, &a, &ba));
    }

    #[test]
    fn enveloping_algebra_is_closed_under_products((field, n, mut rng) in field_and_rng(), gens in 1usize..=2) {
        let ops: Vec<Matrix> = (0..gens).map(|_| random_matrix(&mut rng, field, n, n)).collect();
        let basis = algebra_basis(field, n, &ops);
        prop_assert!(in_span(&basis, &Matrix::identity(field, n)));
        for x in &basis {
            for y in &basis {
                prop_assert!(in_span(&basis, &(x * y)));
            }
        }
    }
}

fn big(digits: usize, lead: char) -> BigInt {
    let s: String = std::iter::once(lead).chain((1..digits).map(|i| char::from(b'0' + (i * 7 % 10) as u8))).collect();
    s.parse().unwrap()
}

#[test]
fn two_hundred_digit_fractions_stay_exact() {
    let q = FieldSpec::Rational;
    let a = q.from_ratio(&big(200, '9'), &big(199, '7')).unwrap();
    let b = q.from_ratio(&-big(200, '3'), &big(200, '8')).unwrap();
    let one = q.one();
    let m = Matrix::from_rows(q, 2, &[vec![a.clone(), b.clone()], vec![one.clone(), a.clone()]]);
    let inv = m.inverse().unwrap();
    assert!((&m * &inv).is_identity());
    assert!((&inv * &m).is_identity());
    assert_eq!(inv.inverse().unwrap(), m);
    let text = a.to_string();
    assert_eq!(q.parse_scalar(&text).unwrap(), a);
    assert!(text.len() > 390);
}
