//! Random matrices, weights and representations shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use ssred_core::cochar::Cocharacter;
use ssred_core::exactalg::{FieldSpec, Matrix};
use ssred_core::matrep::Representation;

pub const FIELDS: [FieldSpec; 5] =
    [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5), FieldSpec::Prime(7), FieldSpec::Rational];

fn entry<R: Rng>(rng: &mut R, field: FieldSpec) -> i64 {
    match field {
        FieldSpec::Prime(p) => rng.gen_range(0..p as i64),
        FieldSpec::Rational => rng.gen_range(-3..=3),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.from_i64(entry(rng, field)))
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: FieldSpec, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Non-increasing weights in `-3..=3`.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<i64> {
    let mut w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

pub fn random_cocharacter<R: Rng>(rng: &mut R, field: FieldSpec, n: usize) -> Cocharacter {
    Cocharacter::new(random_invertible(rng, field, n), random_weights(rng, n)).unwrap()
}

/// A random invertible element of `P_λ`.
pub fn random_parabolic<R: Rng>(rng: &mut R, lambda: &Cocharacter) -> Matrix {
    let field = lambda.basis_change().field();
    let n = lambda.n();
    let w = lambda.weights();
    let b = lambda.basis_change();
    let b_inv = b.inverse().unwrap();
    loop {
        let a = Matrix::from_fn(field, n, n, |i, j| {
            if w[i] >= w[j] {
                field.from_i64(entry(rng, field))
            } else {
                field.zero()
            }
        });
        if a.is_invertible() {
            return &(b * &a) * &b_inv;
        }
    }
}

pub fn random_rep<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, gens: usize) -> Representation {
    let gens = (0..gens).map(|_| random_invertible(rng, field, n)).collect();
    Representation::new(field, gens).unwrap()
}

/// Generators inside a random parabolic, so reducible and often non-semisimple.
pub fn random_parabolic_rep<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, gens: usize) -> Representation {
    let lambda = random_cocharacter(rng, field, n);
    let gens = (0..gens).map(|_| random_parabolic(rng, &lambda)).collect();
    Representation::new(field, gens).unwrap()
}
