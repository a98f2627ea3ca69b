use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Matrix, Scalar, Subspace};

/// A flag `0 ⊊ V_1 ⊊ … ⊊ V_r = k^n`. Its stabilizer is the parabolic subgroup
/// it encodes. The zero subspace is implicit; the full space is always the
/// last step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    ambient_dim: usize,
    steps: Vec<Subspace>,
}

impl Flag {
    pub fn new(steps: Vec<Subspace>) -> Result<Self> {
        let last = steps.last().ok_or_else(|| Error::InvalidInput("flag needs at least one step".into()))?;
        let n = last.ambient_dim();
        if !last.is_full() {
            return Err(Error::InvalidInput("last flag step must be the full space".into()));
        }
        let mut prev: Option<&Subspace> = None;
        for s in &steps {
            if s.ambient_dim() != n || s.field() != last.field() {
                return Err(Error::DimensionMismatch("flag steps live in different spaces".into()));
            }
            if s.is_zero() {
                return Err(Error::InvalidInput("flag steps must be nonzero".into()));
            }
            if let Some(p) = prev {
                if s.dim() <= p.dim() || !s.contains(p) {
                    return Err(Error::InvalidInput("flag steps must strictly increase".into()));
                }
            }
            prev = Some(s);
        }
        Ok(Flag { ambient_dim: n, steps })
    }

    /// The flag consisting of `k^n` alone; its stabilizer is all of `GL_n`.
    pub fn trivial(field: FieldSpec, n: usize) -> Self {
        Flag { ambient_dim: n, steps: vec![Subspace::full(field, n)] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.steps[0].field()
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    /// Proper nonzero steps.
    pub fn proper_steps(&self) -> &[Subspace] {
        &self.steps[..self.steps.len() - 1]
    }

    /// Number of steps `r`, at least 1 since the last step is `k^n`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.steps.len() == 1
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.steps
            .iter()
            .map(|s| {
                let b = s.dim() - prev;
                prev = s.dim();
                b
            })
            .collect()
    }

    pub fn is_preserved_by(&self, m: &Matrix) -> bool {
        self.proper_steps().iter().all(|s| s.is_invariant(m))
    }

    /// Columns adapted to the flag: the echelon basis of `V_1`, then for each
    /// later step the echelon rows of `V_i` whose pivots are new. For the last
    /// step these are the standard vectors of the remaining columns.
    pub fn adapted_basis(&self) -> Matrix {
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(self.ambient_dim);
        let zero = Subspace::zero(self.field(), self.ambient_dim);
        let mut prev = &zero;
        for s in &self.steps {
            cols.extend(s.relative_basis(prev));
            prev = s;
        }
        Matrix::from_columns(self.field(), self.ambient_dim, &cols)
    }

    /// `g·F`.
    pub fn image(&self, g: &Matrix) -> Flag {
        Flag { ambient_dim: self.ambient_dim, steps: self.steps.iter().map(|s| s.image(g)).collect() }
    }

    /// True when every step of `self` is a step of `finer`.
    pub fn is_refined_by(&self, finer: &Flag) -> bool {
        self.steps.iter().all(|s| finer.steps.contains(s))
    }
}
