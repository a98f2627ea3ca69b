//! Matrix representations: enveloping algebras, irreducibility, composition
//! series, semisimplicity and isomorphism of modules.

mod iso;
mod meataxe;
mod semisimple;
mod series;

pub use iso::{iso_class_multiset, module_iso, IsoClassMultiset};
pub use meataxe::{find_submodule, verify_witness, IrreducibilityWitness, SubmoduleSearch, RATIONAL_DIM_CAP};
pub use semisimple::{complement_projection, is_semisimple, Semisimplicity};
pub use series::{composition_series, CompositionSeries, SeedOrder};

use crate::error::{Error, Result};
use crate::exactalg::{EchelonBasis, FieldSpec, Matrix, Scalar, Subspace};

/// A subgroup `H ⊆ GL_n(k)` given by invertible generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    n: usize,
    field: FieldSpec,
    generators: Vec<Matrix>,
    name: Option<String>,
}

impl Representation {
    pub fn new(field: FieldSpec, generators: Vec<Matrix>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        let n = first.rows();
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} is {}x{}, expected {n}x{n}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible(format!("generator {i}")));
            }
        }
        Ok(Representation { n, field, generators, name: None })
    }

    /// Convenience constructor from small integer matrices.
    pub fn from_i64(field: FieldSpec, generators: &[Vec<Vec<i64>>]) -> Result<Self> {
        Self::new(field, generators.iter().map(|g| Matrix::from_i64(field, g)).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn inverses(&self) -> Vec<Matrix> {
        self.generators.iter().map(|g| g.inverse().expect("generators are invertible")).collect()
    }

    /// The generic tuple entries: generators followed by their inverses.
    pub fn generic_tuple(&self) -> Vec<Matrix> {
        let mut out = self.generators.clone();
        out.extend(self.inverses());
        out
    }

    /// `g·H·g⁻¹`, generator by generator.
    pub fn conjugate(&self, g: &Matrix) -> Result<Representation> {
        let g_inv = g.inverse().ok_or_else(|| Error::NotInvertible("conjugating matrix".into()))?;
        let gens = self.generators.iter().map(|h| h.conjugate_by(g, &g_inv)).collect();
        let mut r = Representation::new(self.field, gens)?;
        r.name = self.name.clone();
        Ok(r)
    }

    /// Same group acting on the dual space, via transposes (used for Norton's dual check).
    pub fn transposed(&self) -> Representation {
        Representation {
            n: self.n,
            field: self.field,
            generators: self.generators.iter().map(Matrix::transpose).collect(),
            name: None,
        }
    }

    pub fn is_invariant(&self, s: &Subspace) -> bool {
        self.generators.iter().all(|g| s.is_invariant(g))
    }

    /// Action on an invariant subspace, in the coordinates of its echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Representation> {
        if !self.is_invariant(s) {
            return Err(Error::InvalidInput("subspace is not invariant".into()));
        }
        let basis = s.basis_vectors();
        let pivots = s.pivots();
        let d = basis.len();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                // column j = coordinates of g·b_j; echelon coordinates are the pivot entries
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|b| {
                        let img = g.mul_vec(b);
                        pivots.iter().map(|&p| img[p].clone()).collect()
                    })
                    .collect();
                Matrix::from_columns(self.field, d, &cols)
            })
            .collect();
        Representation::new(self.field, gens)
    }
}

/// The generic tuple together with a basis of the algebra it spans.
#[derive(Clone, Debug)]
pub struct GenericTuple {
    pub entries: Vec<Matrix>,
    pub algebra_basis: Vec<Matrix>,
    pub algebra_dim: usize,
}

/// Close `span{I}` under left multiplication by `ops`; the result spans the
/// associative algebra generated by `ops`.
pub fn algebra_basis(field: FieldSpec, n: usize, ops: &[Matrix]) -> Vec<Matrix> {
    let mut eb = EchelonBasis::new(field, n * n);
    let id = Matrix::identity(field, n);
    eb.insert(&id.to_flat());
    let mut basis = vec![id];
    let mut next = 0;
    while next < basis.len() && basis.len() < n * n {
        let b = basis[next].clone();
        next += 1;
        for op in ops {
            let prod = op * &b;
            if eb.insert(&prod.to_flat()) {
                basis.push(prod);
            }
        }
    }
    basis
}

pub fn enveloping_basis(rep: &Representation) -> GenericTuple {
    let entries = rep.generic_tuple();
    let algebra_basis = algebra_basis(rep.field, rep.n, &entries);
    let algebra_dim = algebra_basis.len();
    GenericTuple { entries, algebra_basis, algebra_dim }
}

/// Membership of `m` in the span of `basis` (as vectors of `k^{n²}`).
pub fn in_span(basis: &[Matrix], m: &Matrix) -> bool {
    let Some(first) = basis.first() else {
        return m.is_zero();
    };
    let mut eb = EchelonBasis::new(first.field(), first.rows() * first.cols());
    for b in basis {
        eb.insert(&b.to_flat());
    }
    eb.contains(&m.to_flat())
}
