use crate::error::{Error, Result};

use super::field::{FieldSpec, Scalar};
use super::matrix::{EchelonBasis, Matrix};

/// A subspace of `k^n` stored as the reduced row-echelon basis of its rows.
/// The echelon form is unique, so equality of subspaces is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::zeros(field, 0, n) }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::identity(field, n) }
    }

    pub fn span(field: FieldSpec, n: usize, vectors: &[Vec<Scalar>]) -> Self {
        let m = Matrix::from_rows(field, n, vectors);
        Self::row_space(&m)
    }

    pub fn row_space(m: &Matrix) -> Self {
        let r = m.rref();
        Subspace { ambient_dim: m.cols(), basis: r.matrix.submatrix(0..r.rank, 0..m.cols()) }
    }

    /// Build from a matrix already in reduced echelon form without zero rows.
    pub fn from_echelon(basis: Matrix) -> Result<Self> {
        let s = Self::row_space(&basis);
        if s.basis != basis {
            return Err(Error::InvalidInput("basis is not in reduced row-echelon form".into()));
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Leading columns of the echelon basis.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|x| !x.is_zero()).expect("no zero rows"))
            .collect()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut r = v.to_vec();
        for (i, piv) in self.pivots().into_iter().enumerate() {
            if r[piv].is_zero() {
                continue;
            }
            let f = r[piv].clone();
            for (x, b) in r.iter_mut().zip(self.basis.row(i)) {
                *x = &*x - &(&f * b);
            }
        }
        r.iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient_dim, &rows)
    }

    /// `{y : y·x = 0 for all x in self}`, as a subspace of the dual (row vectors).
    pub fn annihilator(&self) -> Subspace {
        let ns = self.basis.nullspace();
        Subspace::span(self.field(), self.ambient_dim, &ns)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // (U ∩ W)^⊥ = U^⊥ + W^⊥
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// `m · self`, for a square matrix acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let imgs: Vec<Vec<Scalar>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Subspace::span(self.field(), self.ambient_dim, &imgs)
    }

    pub fn is_invariant(&self, m: &Matrix) -> bool {
        (0..self.dim()).all(|i| self.contains_vector(&m.mul_vec(self.basis.row(i))))
    }

    /// Echelon rows of `self` whose pivot is not a pivot of `inner`; together
    /// with a basis of `inner` they form a basis of `self` when `inner ⊆ self`.
    pub fn relative_basis(&self, inner: &Subspace) -> Vec<Vec<Scalar>> {
        let inner_piv = inner.pivots();
        self.pivots()
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !inner_piv.contains(p))
            .map(|(i, _)| self.basis.row(i).to_vec())
            .collect()
    }
}

/// Smallest subspace containing `seed` and invariant under every operator.
pub fn spin(field: FieldSpec, n: usize, seed: &[Vec<Scalar>], operators: &[Matrix]) -> Subspace {
    let mut eb = EchelonBasis::new(field, n);
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for v in seed {
        if eb.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if eb.len() == n {
            break;
        }
        for op in operators {
            let w = op.mul_vec(&v);
            if eb.insert(&w) {
                queue.push(w);
            }
        }
    }
    Subspace::row_space(&eb.to_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(f: FieldSpec, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn spin_examples() {
        let f = FieldSpec::Prime(2);
        let h = Matrix::from_i64(f, &[vec![1, 1], vec![0, 1]]);
        let s1 = spin(f, 2, &vecs(f, &[&[1, 0]]), std::slice::from_ref(&h));
        assert_eq!(s1, Subspace::span(f, 2, &vecs(f, &[&[1, 0]])));
        let s2 = spin(f, 2, &vecs(f, &[&[0, 1]]), std::slice::from_ref(&h));
        assert!(s2.is_full());
        let s0 = spin(f, 2, &[], &[h]);
        assert!(s0.is_zero());
    }

    #[test]
    fn intersection_and_sum() {
        let q = FieldSpec::Rational;
        let u = Subspace::span(q, 3, &vecs(q, &[&[1, 0, 0], &[0, 1, 0]]));
        let w = Subspace::span(q, 3, &vecs(q, &[&[0, 1, 0], &[0, 0, 1]]));
        let i = u.intersection(&w);
        assert_eq!(i, Subspace::span(q, 3, &vecs(q, &[&[0, 1, 0]])));
        assert!(u.sum(&w).is_full());
        assert!(u.contains(&i) && w.contains(&i));
    }

    #[test]
    fn relative_basis_completes() {
        let f = FieldSpec::Prime(2);
        let inner = Subspace::span(f, 2, &vecs(f, &[&[1, 1]]));
        let full = Subspace::full(f, 2);
        assert_eq!(full.relative_basis(&inner), vecs(f, &[&[0, 1]]));
    }

    #[test]
    fn from_echelon_rejects_unreduced() {
        let f = FieldSpec::Prime(3);
        assert!(Subspace::from_echelon(Matrix::from_i64(f, &[vec![1, 1], vec![0, 1]])).is_err());
        assert!(Subspace::from_echelon(Matrix::from_i64(f, &[vec![1, 2]])).is_ok());
    }
}
