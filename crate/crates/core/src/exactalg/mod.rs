//! Exact scalars, dense matrices and the linear-algebra kernel.

mod field;
mod matrix;
mod solve;
mod subspace;

pub use field::{FieldSpec, Scalar, MAX_PRIME};
pub use matrix::{block_owner, linear_combination, EchelonBasis, Matrix, Rref};
pub use solve::{intertwiner_basis, solve_conjugating, ConjugatorSearch, MAX_GRID_POINTS};
pub use subspace::{spin, Subspace};
