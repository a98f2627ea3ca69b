use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cochar::{flag_to_cocharacter, Flag};
use crate::error::{Error, Result};
use crate::exactalg::{spin, Matrix, Scalar, Subspace};

use super::meataxe::{find_submodule, IrreducibilityWitness, SubmoduleSearch};
use super::Representation;

/// Controls the order in which spin seeds are tried and seeds every
/// randomized step, so distinct seeds can produce distinct composition
/// series while each seed is fully reproducible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SeedOrder {
    pub seed: u64,
}

impl SeedOrder {
    pub fn new(seed: u64) -> Self {
        SeedOrder { seed }
    }

    /// Seed 0 is the identity order; other seeds shuffle.
    pub fn permutation(&self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        if self.seed != 0 {
            p.shuffle(&mut ChaCha8Rng::seed_from_u64(self.seed));
        }
        p
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ 0x9e37_79b9_7f4a_7c15)
    }
}

#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub flag: Flag,
    /// Block actions on `V_i / V_{i−1}` in the flag's adapted basis.
    pub factors: Vec<Representation>,
    pub witnesses: Vec<IrreducibilityWitness>,
}

fn column_space(field: crate::exactalg::FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Subspace {
    Subspace::span(field, rows, cols)
}

/// Find an irreducible submodule of `module`, returned in its coordinates.
fn irreducible_submodule(module: &Representation, order: &[usize], rng: &mut ChaCha8Rng) -> Result<Subspace> {
    let field = module.field();
    let m = module.n();
    // Columns of `embed` are a basis (in module coordinates) of `current`.
    let mut embed = Matrix::identity(field, m);
    let mut current = module.clone();
    loop {
        let d = current.n();
        let mut best: Option<Subspace> = None;
        for &i in order.iter().filter(|&&i| i < d) {
            let mut e = vec![field.zero(); d];
            e[i] = field.one();
            let s = spin(field, d, &[e], current.generators());
            if s.is_full() {
                continue;
            }
            if best.as_ref().is_none_or(|b| s.dim() < b.dim()) {
                best = Some(s);
            }
        }
        let sub = match best {
            Some(s) => s,
            None => match find_submodule(&current, rng)? {
                SubmoduleSearch::Irreducible(_) => {
                    let cols: Vec<Vec<Scalar>> = (0..embed.cols()).map(|j| embed.column(j)).collect();
                    return Ok(column_space(field, m, &cols));
                }
                SubmoduleSearch::Submodule(s) => s,
            },
        };
        let restricted = current.restrict(&sub)?;
        // new embedding columns: embed · b for each basis vector b of `sub`
        let cols: Vec<Vec<Scalar>> = sub.basis_vectors().iter().map(|b| embed.mul_vec(b)).collect();
        embed = Matrix::from_columns(field, m, &cols);
        current = restricted;
    }
}

/// Block actions of the generators on the successive quotients of `flag`.
pub(crate) fn block_factors(rep: &Representation, flag: &Flag) -> Result<Vec<Representation>> {
    let lam = flag_to_cocharacter(flag);
    let adapted: Vec<Matrix> = rep.generators().iter().map(|g| lam.adapted(g)).collect::<Result<_>>()?;
    let sizes = flag.block_sizes();
    (0..sizes.len())
        .map(|b| {
            let gens = adapted.iter().map(|a| a.diagonal_block(&sizes, b)).collect();
            Representation::new(rep.field(), gens)
        })
        .collect()
}

/// A composition series built bottom-up: repeatedly find an irreducible
/// submodule of the current quotient and lift it.
pub fn composition_series(rep: &Representation, seed: &SeedOrder) -> Result<CompositionSeries> {
    let field = rep.field();
    let n = rep.n();
    let order = seed.permutation(n);
    let mut rng = seed.rng();
    let mut steps: Vec<Subspace> = Vec::new();
    let mut current = Subspace::zero(field, n);
    while !current.is_full() {
        let full = Subspace::full(field, n);
        let mut cols = current.basis_vectors();
        cols.extend(full.relative_basis(&current));
        let t = Matrix::from_columns(field, n, &cols);
        let t_inv = t.inverse().expect("adapted basis is invertible");
        let d = current.dim();
        let quotient_gens: Vec<Matrix> =
            rep.generators().iter().map(|g| (&(&t_inv * g) * &t).submatrix(d..n, d..n)).collect();
        let quotient = Representation::new(field, quotient_gens)?;
        let s = irreducible_submodule(&quotient, &order, &mut rng)?;
        let mut vecs = current.basis_vectors();
        for v in s.basis_vectors() {
            let mut lifted = vec![field.zero(); n];
            lifted[d..].clone_from_slice(&v);
            vecs.push(t.mul_vec(&lifted));
        }
        let next = Subspace::span(field, n, &vecs);
        if !rep.is_invariant(&next) || next.dim() <= current.dim() {
            return Err(Error::InternalInvariantViolation("lifted submodule is not invariant".into()));
        }
        steps.push(next.clone());
        current = next;
    }
    let flag = Flag::new(steps)?;
    let factors = block_factors(rep, &flag)?;
    let mut witnesses = Vec::with_capacity(factors.len());
    for f in &factors {
        match find_submodule(f, &mut rng)? {
            SubmoduleSearch::Irreducible(w) => witnesses.push(w),
            SubmoduleSearch::Submodule(_) => {
                return Err(Error::InternalInvariantViolation("composition factor is reducible".into()))
            }
        }
    }
    Ok(CompositionSeries { flag, factors, witnesses })
}
