use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Subspace};

use super::flag::Flag;

/// A cocharacter `λ: G_m → GL_n`, `λ(a) = B·diag(a^{w_1}, …, a^{w_n})·B⁻¹`
/// with non-increasing integer weights `w` and basis change `B` (columns
/// form the adapted basis).
///
/// Conjugating `m` by `λ(a)` scales the `(i, j)` entry of `B⁻¹mB` by
/// `a^{w_i − w_j}`, so the limit at `a → 0` exists iff every entry with
/// `w_i < w_j` vanishes, and it keeps exactly the entries with `w_i = w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocharacter {
    basis_change: Matrix,
    basis_inv: Matrix,
    weights: Vec<i64>,
    canonical: Vec<i64>,
}

/// Shift to mean zero, clear the denominator `n` and divide by the gcd.
pub fn canonical_weights(w: &[i64]) -> Vec<i64> {
    let n = w.len() as i64;
    let sum: i64 = w.iter().sum();
    let shifted: Vec<i64> = w.iter().map(|&x| n * x - sum).collect();
    let g = shifted.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return shifted;
    }
    shifted.into_iter().map(|x| x / g).collect()
}

impl Cocharacter {
    pub fn new(basis_change: Matrix, weights: Vec<i64>) -> Result<Self> {
        let n = basis_change.rows();
        if !basis_change.is_square() || weights.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} basis with {} weights",
                basis_change.rows(),
                basis_change.cols(),
                weights.len()
            )));
        }
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("weights must be non-increasing".into()));
        }
        let basis_inv = basis_change.inverse().ok_or_else(|| Error::NotInvertible("basis change".into()))?;
        let canonical = canonical_weights(&weights);
        Ok(Cocharacter { basis_change, basis_inv, weights, canonical })
    }

    /// Cocharacter adapted to `flag` with one strictly decreasing weight per block.
    pub fn from_flag(flag: &Flag, block_weights: &[i64]) -> Result<Self> {
        let sizes = flag.block_sizes();
        if block_weights.len() != sizes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} block weights for {} blocks",
                block_weights.len(),
                sizes.len()
            )));
        }
        if block_weights.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput("block weights must strictly decrease".into()));
        }
        let weights = sizes.iter().zip(block_weights).flat_map(|(&s, &w)| std::iter::repeat_n(w, s)).collect();
        Self::new(flag.adapted_basis(), weights)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn basis_change(&self) -> &Matrix {
        &self.basis_change
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn canonical_weights(&self) -> &[i64] {
        &self.canonical
    }

    /// Sizes of the runs of equal weights.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 && self.weights[i - 1] == *w {
                *out.last_mut().expect("nonempty") += 1;
            } else {
                out.push(1);
            }
        }
        out
    }

    /// The flag stabilized by `P_λ`: spans of the leading columns of each weight run.
    pub fn flag(&self) -> Flag {
        let field = self.basis_change.field();
        let n = self.n();
        let mut steps = Vec::new();
        let mut upto = 0;
        for b in self.block_sizes() {
            upto += b;
            let cols: Vec<_> = (0..upto).map(|j| self.basis_change.column(j)).collect();
            steps.push(Subspace::span(field, n, &cols));
        }
        Flag::new(steps).expect("columns of an invertible matrix give a flag")
    }

    /// `g·λ·g⁻¹`.
    pub fn conjugate(&self, g: &Matrix) -> Result<Cocharacter> {
        Cocharacter::new(g * &self.basis_change, self.weights.clone())
    }

    /// `B⁻¹·m·B`.
    pub fn adapted(&self, m: &Matrix) -> Result<Matrix> {
        self.check_dim(m)?;
        Ok(&(&self.basis_inv * m) * &self.basis_change)
    }

    fn check_dim(&self, m: &Matrix) -> Result<()> {
        if m.rows() != self.n() || m.cols() != self.n() {
            return Err(Error::DimensionMismatch(format!("{}x{} vs n = {}", m.rows(), m.cols(), self.n())));
        }
        if m.field() != self.basis_change.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Membership in `P_λ`: the limit of `λ(a)·m·λ(a)⁻¹` exists.
    pub fn in_parabolic(&self, m: &Matrix) -> Result<bool> {
        let a = self.adapted(m)?;
        let w = &self.weights;
        Ok((0..self.n()).all(|i| (0..self.n()).all(|j| w[i] >= w[j] || a.get(i, j).is_zero())))
    }

    /// The limit map `c_λ`.
    pub fn limit(&self, m: &Matrix) -> Result<Matrix> {
        let mut a = self.adapted(m)?;
        let w = &self.weights;
        let field = m.field();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if w[i] == w[j] || a.get(i, j).is_zero() {
                    continue;
                }
                if w[i] < w[j] {
                    return Err(Error::LimitDoesNotExist);
                }
                a.set(i, j, field.zero());
            }
        }
        Ok(&(&self.basis_change * &a) * &self.basis_inv)
    }

    pub fn limit_all(&self, ms: &[Matrix]) -> Result<Vec<Matrix>> {
        ms.iter().map(|m| self.limit(m)).collect()
    }

    /// Membership in `L_λ`, the fixed points of `c_λ`.
    pub fn in_levi(&self, m: &Matrix) -> Result<bool> {
        if !self.in_parabolic(m)? {
            return Ok(false);
        }
        Ok(&self.limit(m)? == m)
    }

    /// Membership in `R_u(P_λ)`, the kernel of `c_λ`.
    pub fn in_unipotent_radical(&self, m: &Matrix) -> Result<bool> {
        if !self.in_parabolic(m)? {
            return Ok(false);
        }
        Ok(self.limit(m)?.is_identity())
    }

    /// Move the Levi inside `P_λ` by `u ∈ R_u(P_λ)`.
    pub fn levi_conjugate(&self, u: &Matrix) -> Result<LeviConjugation> {
        if !self.in_unipotent_radical(u)? {
            return Err(Error::NotInUnipotentRadical);
        }
        Ok(LeviConjugation { u: u.clone(), cocharacter: self.conjugate(u)? })
    }
}

/// The cocharacter `u·λ·u⁻¹` for `u ∈ R_u(P_λ)`: same parabolic, Levi `u·L_λ·u⁻¹`,
/// and `c_{u·λ}(h) = u·c_λ(h)·u⁻¹` on `P_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviConjugation {
    pub u: Matrix,
    pub cocharacter: Cocharacter,
}

impl LeviConjugation {
    pub fn limit(&self, m: &Matrix) -> Result<Matrix> {
        self.cocharacter.limit(m)
    }
}

/// The cocharacter of the block filtration: weight `r − i + 1` on block `i`.
pub fn flag_to_cocharacter(flag: &Flag) -> Cocharacter {
    let r = flag.len() as i64;
    let block_weights: Vec<i64> = (0..r).map(|i| r - i).collect();
    Cocharacter::from_flag(flag, &block_weights).expect("strictly decreasing weights on a valid flag")
}
