use crate::error::Result;
use crate::exactalg::{Matrix, Scalar, Subspace};

use super::meataxe::{find_submodule, SubmoduleSearch};
use super::series::{composition_series, SeedOrder};
use super::Representation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Semisimplicity {
    /// Invariant irreducible summands whose direct sum is `k^n`.
    Semisimple { summands: Vec<Subspace> },
    /// An invariant subspace with no invariant complement.
    NotSemisimple { uncomplemented: Subspace },
}

impl Semisimplicity {
    pub fn is_semisimple(&self) -> bool {
        matches!(self, Semisimplicity::Semisimple { .. })
    }

    /// Re-check the certificate against `rep` from scratch.
    pub fn verify(&self, rep: &Representation) -> Result<bool> {
        let field = rep.field();
        let n = rep.n();
        match self {
            Semisimplicity::Semisimple { summands } => {
                let total: usize = summands.iter().map(Subspace::dim).sum();
                let mut all = Vec::new();
                for s in summands {
                    if s.is_zero() || !rep.is_invariant(s) {
                        return Ok(false);
                    }
                    all.extend(s.basis_vectors());
                }
                if total != n || Subspace::span(field, n, &all).dim() != n {
                    return Ok(false);
                }
                let mut rng = SeedOrder::default().rng();
                for s in summands {
                    if let SubmoduleSearch::Submodule(_) = find_submodule(&rep.restrict(s)?, &mut rng)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Semisimplicity::NotSemisimple { uncomplemented } => Ok(rep.is_invariant(uncomplemented)
                && !uncomplemented.is_zero()
                && !uncomplemented.is_full()
                && complement_projection(rep, uncomplemented).is_none()),
        }
    }
}

/// An idempotent `π` commuting with the generators with image `u`, if one
/// exists; then `ker π` is an invariant complement of `u`.
///
/// The conditions `π·g = g·π`, `π|_u = id` and `im π ⊆ u` are linear in the
/// entries of `π` and already force `π² = π`, so the search is complete.
pub fn complement_projection(rep: &Representation, u: &Subspace) -> Option<Matrix> {
    let field = rep.field();
    let n = rep.n();
    let nn = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for g in rep.generators() {
        for a in 0..n {
            for b in 0..n {
                // (πg − gπ)_{ab} = Σ_k π_{ak} g_{kb} − g_{ak} π_{kb}
                let mut eq = vec![field.zero(); nn];
                for k in 0..n {
                    eq[a * n + k] = &eq[a * n + k] + g.get(k, b);
                    eq[k * n + b] = &eq[k * n + b] - g.get(a, k);
                }
                rows.push(eq);
                rhs.push(field.zero());
            }
        }
    }
    for v in u.basis_vectors() {
        for a in 0..n {
            let mut eq = vec![field.zero(); nn];
            for b in 0..n {
                eq[a * n + b] = v[b].clone();
            }
            rows.push(eq);
            rhs.push(v[a].clone());
        }
    }
    for y in u.annihilator().basis_vectors() {
        for b in 0..n {
            let mut eq = vec![field.zero(); nn];
            for a in 0..n {
                eq[a * n + b] = y[a].clone();
            }
            rows.push(eq);
            rhs.push(field.zero());
        }
    }
    let system = Matrix::from_rows(field, nn, &rows);
    system.solve(&rhs).map(|x| Matrix::from_flat(field, n, x))
}

/// Decide complete reducibility: every step of a composition series must have
/// an invariant complement; then the complements cut out irreducible summands.
pub fn is_semisimple(rep: &Representation) -> Result<Semisimplicity> {
    let series = composition_series(rep, &SeedOrder::default())?;
    let steps = series.flag.steps();
    let mut summands = vec![steps[0].clone()];
    for i in 0..steps.len() - 1 {
        let Some(pi) = complement_projection(rep, &steps[i]) else {
            return Ok(Semisimplicity::NotSemisimple { uncomplemented: steps[i].clone() });
        };
        let kernel = Subspace::span(rep.field(), rep.n(), &pi.nullspace());
        summands.push(kernel.intersection(&steps[i + 1]));
    }
    Ok(Semisimplicity::Semisimple { summands })
}
