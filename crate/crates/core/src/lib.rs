//! Exact semisimplification of matrix groups `H ⊆ GL_n(k)` for `k = F_p` or `k = ℚ`.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactalg`]: exact scalars, dense matrices, echelon forms, subspaces and
//!   the linear solvers everything else is built on.
//! * [`matrep`]: representations, enveloping algebras, MeatAxe irreducibility,
//!   composition series, semisimplicity and module isomorphism.
//! * [`cochar`]: flags, cocharacters, the parabolic `P_λ`, Levi `L_λ` and the
//!   limit map `c_λ`.
//! * [`ssred`]: the semisimplification pipeline, conjugacy certificates, Levi
//!   descent, joint semisimplification along normal subgroups and the optimal
//!   destabilising flag search.
//! * [`gitoracle`]: brute-force orbit enumeration over small finite fields used
//!   as ground truth for the algebraic routes.

pub mod cochar;
pub mod error;
pub mod exactalg;
pub mod gitoracle;
pub mod matrep;
pub mod ssred;

pub use error::{Error, Result};
