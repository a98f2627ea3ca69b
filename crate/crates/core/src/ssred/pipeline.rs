use crate::cochar::{Cocharacter, Flag};
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Scalar, Subspace};
use crate::matrep::{
    complement_projection, composition_series, is_semisimple, module_iso, verify_witness, Representation, SeedOrder,
    Semisimplicity,
};

/// G-complete reducibility over k, i.e. semisimplicity of `k^n`.
pub fn is_gcr_over_k(rep: &Representation) -> Result<Semisimplicity> {
    is_semisimple(rep)
}

/// A k-semisimplification `c_λ(H)` together with the data producing it.
#[derive(Clone, Debug)]
pub struct SsResult {
    pub input: Representation,
    pub flag: Flag,
    pub cocharacter: Cocharacter,
    /// `c_λ(g_i)`, aligned with the input generators.
    pub ss_generators: Vec<Matrix>,
    pub semisimple_certificate: Semisimplicity,
    /// Every block of the flag is an irreducible module.
    pub l_irreducible: bool,
}

impl SsResult {
    pub fn ss_representation(&self) -> Representation {
        let rep = Representation::new(self.input.field(), self.ss_generators.clone())
            .expect("limits of invertible elements are invertible");
        match self.input.name() {
            Some(name) => rep.with_name(name),
            None => rep,
        }
    }
}

/// Columns adapted to `flag` whose Levi contains `H` whenever `H`-invariant
/// complements exist: block `i + 1` spans an invariant complement of `V_i` in
/// `V_{i+1}` if there is one, and the echelon completion otherwise.
pub(crate) fn levi_basis(rep: &Representation, flag: &Flag) -> Result<Matrix> {
    let field = rep.field();
    let n = rep.n();
    let steps = flag.steps();
    let mut cols = steps[0].basis_vectors();
    for i in 0..steps.len() - 1 {
        let (inner, outer) = (&steps[i], &steps[i + 1]);
        let outer_basis = outer.basis_vectors();
        let pivots = outer.pivots();
        let local = rep.restrict(outer)?;
        let coords = |v: &Vec<Scalar>| -> Vec<Scalar> { pivots.iter().map(|&p| v[p].clone()).collect() };
        let inner_local = Subspace::span(field, outer.dim(), &inner.basis_vectors().iter().map(coords).collect::<Vec<_>>());
        match complement_projection(&local, &inner_local) {
            Some(pi) => {
                for c in pi.nullspace() {
                    let mut v = vec![field.zero(); n];
                    for (cj, wj) in c.iter().zip(&outer_basis) {
                        for (vk, wk) in v.iter_mut().zip(wj) {
                            *vk = &*vk + &(cj * wk);
                        }
                    }
                    cols.push(v);
                }
            }
            None => cols.extend(outer.relative_basis(inner)),
        }
    }
    let b = Matrix::from_columns(field, n, &cols);
    if !b.is_invertible() {
        return Err(Error::InternalInvariantViolation("Levi basis is singular".into()));
    }
    Ok(b)
}

/// The cocharacter with weights `r, …, 1` on the blocks of `flag`, in the
/// basis chosen by `levi_basis`.
pub(crate) fn pipeline_cocharacter(rep: &Representation, flag: &Flag) -> Result<Cocharacter> {
    let r = flag.len() as i64;
    let weights = flag.block_sizes().iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(r - i as i64, s)).collect();
    Cocharacter::new(levi_basis(rep, flag)?, weights)
}

/// Semisimplify along the flag of a composition series.
pub fn semisimplify(rep: &Representation, seed: &SeedOrder) -> Result<SsResult> {
    let series = composition_series(rep, seed)?;
    let flag = series.flag.clone();
    let cocharacter = pipeline_cocharacter(rep, &flag)?;
    if cocharacter.flag() != flag {
        return Err(Error::InternalInvariantViolation("cocharacter does not stabilize the series flag".into()));
    }
    let ss_generators = cocharacter.limit_all(rep.generators())?;
    let ss_rep = Representation::new(rep.field(), ss_generators.clone())?;
    let semisimple_certificate = is_semisimple(&ss_rep)?;
    if !semisimple_certificate.is_semisimple() {
        return Err(Error::InternalInvariantViolation("limit along a composition series is not semisimple".into()));
    }
    let l_irreducible = series.factors.iter().zip(&series.witnesses).all(|(f, w)| verify_witness(f, w));
    Ok(SsResult { input: rep.clone(), flag, cocharacter, ss_generators, semisimple_certificate, l_irreducible })
}

/// `g` with `g·lhs.ss_generators[i]·g⁻¹ = rhs.ss_generators[i]`.
#[derive(Clone, Debug)]
pub struct ConjugacyCertificate {
    pub g: Matrix,
    pub lhs: SsResult,
    pub rhs: SsResult,
}

impl ConjugacyCertificate {
    pub fn verify(&self) -> bool {
        let Some(g_inv) = self.g.inverse() else {
            return false;
        };
        self.lhs.ss_generators.len() == self.rhs.ss_generators.len()
            && self.lhs.ss_generators.iter().zip(&self.rhs.ss_generators).all(|(a, b)| &a.conjugate_by(&self.g, &g_inv) == b)
    }
}

pub fn conjugacy_certificate(a: &SsResult, b: &SsResult) -> Result<ConjugacyCertificate> {
    if a.input.field() != b.input.field() {
        return Err(Error::FieldMismatch);
    }
    if a.ss_generators.len() != b.ss_generators.len() {
        return Err(Error::GeneratorCountMismatch { left: a.ss_generators.len(), right: b.ss_generators.len() });
    }
    match module_iso(&a.ss_representation(), &b.ss_representation()) {
        Ok(Some(g)) => {
            let cert = ConjugacyCertificate { g, lhs: a.clone(), rhs: b.clone() };
            if !cert.verify() {
                return Err(Error::InternalInvariantViolation("conjugator failed verification".into()));
            }
            Ok(cert)
        }
        Ok(None) => Err(Error::NotConjugate),
        Err(Error::Undecided(why)) => Err(Error::CertificateSearchExhausted(why)),
        Err(e) => Err(e),
    }
}
