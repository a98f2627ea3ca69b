use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::field::{FieldSpec, Scalar};
use super::matrix::{linear_combination, Matrix};

/// Grid evaluations allowed when certifying that no invertible intertwiner exists.
pub const MAX_GRID_POINTS: u64 = 1 << 20;
const RANDOM_TRIALS_FINITE: usize = 64;
const RANDOM_TRIALS_PER_HEIGHT: usize = 8;
const MAX_RATIONAL_HEIGHT: i64 = 1 << 10;

/// Outcome of searching for an invertible `g` with `g·lhs_i·g⁻¹ = rhs_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugatorSearch {
    Found(Matrix),
    /// Proven: the intertwiner space contains no invertible element.
    Absent,
    Undecided(String),
}

impl ConjugatorSearch {
    pub fn found(self) -> Option<Matrix> {
        match self {
            ConjugatorSearch::Found(g) => Some(g),
            _ => None,
        }
    }
}

fn check_square_family(lhs: &[Matrix], rhs: &[Matrix]) -> Result<(usize, FieldSpec)> {
    if lhs.len() != rhs.len() {
        return Err(Error::DimensionMismatch(format!("{} vs {} matrices", lhs.len(), rhs.len())));
    }
    let first = lhs.first().or(rhs.first()).ok_or_else(|| Error::DimensionMismatch("empty matrix lists".into()))?;
    let n = first.rows();
    let field = first.field();
    for m in lhs.iter().chain(rhs) {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!("expected {n}x{n}, got {}x{}", m.rows(), m.cols())));
        }
        if m.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    Ok((n, field))
}

/// Basis of `{g ∈ M_n : g·lhs_i = rhs_i·g for all i}`.
pub fn intertwiner_basis(lhs: &[Matrix], rhs: &[Matrix]) -> Result<Vec<Matrix>> {
    let (n, field) = check_square_family(lhs, rhs)?;
    let nn = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(lhs.len() * nn);
    for (l, r) in lhs.iter().zip(rhs) {
        for a in 0..n {
            for b in 0..n {
                let mut eq = vec![field.zero(); nn];
                for k in 0..n {
                    // + g_{ak} l_{kb}
                    let idx = a * n + k;
                    eq[idx] = &eq[idx] + l.get(k, b);
                    // - r_{ak} g_{kb}
                    let idx = k * n + b;
                    eq[idx] = &eq[idx] - r.get(a, k);
                }
                rows.push(eq);
            }
        }
    }
    if rows.is_empty() {
        // No constraints: every matrix intertwines.
        return Ok((0..nn)
            .map(|i| {
                let mut m = Matrix::zeros(field, n, n);
                m.set(i / n, i % n, field.one());
                m
            })
            .collect());
    }
    let system = Matrix::from_rows(field, nn, &rows);
    Ok(system.nullspace().into_iter().map(|v| Matrix::from_flat(field, n, v)).collect())
}

fn verify(g: &Matrix, lhs: &[Matrix], rhs: &[Matrix]) -> bool {
    lhs.iter().zip(rhs).all(|(l, r)| (g * l) == (r * g)) && g.is_invertible()
}

/// Find an invertible `g` with `g·lhs_i·g⁻¹ = rhs_i` for all `i`.
///
/// Random combinations of an intertwiner basis are tried first. Absence is
/// certified by evaluating the determinant polynomial `det(Σ t_j B_j)` on a
/// grid `S^d`: over ℚ and over `F_p` with `p > n`, `|S| = n + 1` exceeds the
/// per-variable degree, so a nonzero polynomial cannot vanish on the grid;
/// when `p ≤ n` the grid is all of `F_p^d`.
pub fn solve_conjugating(lhs: &[Matrix], rhs: &[Matrix]) -> Result<ConjugatorSearch> {
    let (n, field) = check_square_family(lhs, rhs)?;
    for (l, r) in lhs.iter().zip(rhs) {
        if l.trace() != r.trace() || l.det() != r.det() {
            return Ok(ConjugatorSearch::Absent);
        }
    }
    let basis = intertwiner_basis(lhs, rhs)?;
    let d = basis.len();
    if d == 0 {
        return Ok(ConjugatorSearch::Absent);
    }
    // Isomorphic modules have Hom(a, b) ≅ End(a) ≅ End(b).
    if intertwiner_basis(lhs, lhs)?.len() != d || intertwiner_basis(rhs, rhs)?.len() != d {
        return Ok(ConjugatorSearch::Absent);
    }
    let found = |g: Matrix| {
        if !verify(&g, lhs, rhs) {
            return Err(Error::InternalInvariantViolation("conjugator failed verification".into()));
        }
        Ok(ConjugatorSearch::Found(g))
    };
    for g in &basis {
        if g.is_invertible() {
            return found(g.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    match field {
        FieldSpec::Prime(p) => {
            for _ in 0..RANDOM_TRIALS_FINITE {
                let c: Vec<Scalar> = (0..d).map(|_| field.from_i64(rng.gen_range(0..p as i64))).collect();
                let g = linear_combination(&c, &basis);
                if g.is_invertible() {
                    return found(g);
                }
            }
        }
        FieldSpec::Rational => {
            let mut height = 1i64;
            while height <= MAX_RATIONAL_HEIGHT {
                for _ in 0..RANDOM_TRIALS_PER_HEIGHT {
                    let c: Vec<Scalar> = (0..d).map(|_| field.from_i64(rng.gen_range(-height..=height))).collect();
                    let g = linear_combination(&c, &basis);
                    if g.is_invertible() {
                        return found(g);
                    }
                }
                height *= 2;
            }
        }
    }
    let side = match field {
        FieldSpec::Prime(p) => (p as u64).min(n as u64 + 1),
        FieldSpec::Rational => n as u64 + 1,
    };
    let points = (side as f64).powi(d as i32);
    if points > MAX_GRID_POINTS as f64 {
        return Ok(ConjugatorSearch::Undecided(format!(
            "intertwiner space of dimension {d} needs {side}^{d} grid evaluations (cap {MAX_GRID_POINTS})"
        )));
    }
    let mut digits = vec![0u64; d];
    loop {
        // advance odometer; the all-zero point is skipped
        let mut i = 0;
        loop {
            if i == d {
                return Ok(ConjugatorSearch::Absent);
            }
            digits[i] += 1;
            if digits[i] < side {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        let c: Vec<Scalar> = digits.iter().map(|&x| field.from_i64(x as i64)).collect();
        let g = linear_combination(&c, &basis);
        if g.is_invertible() {
            return found(g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_conjugates_equal_tuples() {
        let f = FieldSpec::Prime(2);
        let i = Matrix::identity(f, 2);
        let g = solve_conjugating(std::slice::from_ref(&i), std::slice::from_ref(&i)).unwrap().found().unwrap();
        assert!(g.is_invertible());
    }

    #[test]
    fn transvections_conjugate_by_swap() {
        let f = FieldSpec::Prime(2);
        let a = Matrix::from_i64(f, &[vec![1, 1], vec![0, 1]]);
        let b = Matrix::from_i64(f, &[vec![1, 0], vec![1, 1]]);
        let g = solve_conjugating(std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap().found().unwrap();
        assert_eq!(g, Matrix::from_i64(f, &[vec![0, 1], vec![1, 0]]));
        assert_eq!(&(&g * &a) * &g.inverse().unwrap(), b);
    }

    #[test]
    fn identity_not_conjugate_to_transvection() {
        let f = FieldSpec::Prime(2);
        let a = Matrix::identity(f, 2);
        let b = Matrix::from_i64(f, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(solve_conjugating(&[a], &[b]).unwrap(), ConjugatorSearch::Absent);
    }

    #[test]
    fn endomorphism_dimension_rules_out_conjugacy() {
        let q = FieldSpec::Rational;
        let a = Matrix::from_i64(q, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        let b = Matrix::from_i64(q, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        assert_eq!(solve_conjugating(&[a], &[b]).unwrap(), ConjugatorSearch::Absent);
    }

    #[test]
    fn rational_absence_is_certified_by_grid() {
        // Hom, End(a) and End(b) are all one-dimensional but every intertwiner
        // is diag(0, t): only the grid evaluation can rule conjugacy out.
        let q = FieldSpec::Rational;
        let x = Matrix::diagonal(q, &[1, 2]);
        let y = Matrix::from_i64(q, &[vec![1, 1], vec![0, 1]]);
        let y2 = Matrix::from_i64(q, &[vec![1, 0], vec![1, 1]]);
        assert_eq!(intertwiner_basis(&[x.clone(), y.clone()], &[x.clone(), y2.clone()]).unwrap().len(), 1);
        assert_eq!(solve_conjugating(&[x.clone(), y], &[x, y2]).unwrap(), ConjugatorSearch::Absent);
    }

    #[test]
    fn rational_conjugator_found() {
        let q = FieldSpec::Rational;
        let a = Matrix::from_i64(q, &[vec![1, 1], vec![0, 1]]);
        let s = Matrix::from_i64(q, &[vec![2, 1], vec![1, 1]]);
        let b = a.conjugate_by(&s, &s.inverse().unwrap());
        let g = solve_conjugating(std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap().found().unwrap();
        assert_eq!(a.conjugate_by(&g, &g.inverse().unwrap()), b);
    }

    #[test]
    fn mismatched_lengths_error() {
        let f = FieldSpec::Prime(3);
        let i = Matrix::identity(f, 2);
        assert!(matches!(solve_conjugating(std::slice::from_ref(&i), &[]), Err(Error::DimensionMismatch(_))));
        let j = Matrix::identity(f, 3);
        assert!(matches!(solve_conjugating(&[i], &[j]), Err(Error::DimensionMismatch(_))));
    }
}
