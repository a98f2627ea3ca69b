use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::exactalg::Matrix;
use crate::matrep::{algebra_basis, in_span, is_semisimple, Representation, SeedOrder, Semisimplicity};

use super::pipeline::{semisimplify, SsResult};

/// Largest subgroup enumerated when checking normality over a finite field.
pub const MAX_SUBGROUP_ORDER: usize = 1 << 16;

/// How `H ◁ M` was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityEvidence {
    /// Finite field: `H ⊆ M` and `m·h·m⁻¹ ∈ H` checked on enumerated subgroups.
    Enumerated { m_order: usize, h_order: usize },
    /// Rational field: only `A_H ⊆ A_M` and `g·A_H·g⁻¹ = A_H` were checked;
    /// normality itself is taken on trust.
    AlgebraStable,
}

/// Semisimplification of `M` and the limit of `H` along the same cocharacter.
#[derive(Clone, Debug)]
pub struct CliffordJoint {
    pub m: SsResult,
    pub h: Representation,
    pub h_limits: Vec<Matrix>,
    pub h_certificate: Semisimplicity,
    pub normality: NormalityEvidence,
}

/// Elements of the group generated by `gens`.
pub fn generated_group(gens: &[Matrix], cap: usize) -> Result<HashSet<Matrix>> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let id = Matrix::identity(first.field(), first.rows());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::ResourceBoundExceeded(format!("subgroup has more than {cap} elements")));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

fn check_normal(m: &Representation, h: &Representation) -> Result<NormalityEvidence> {
    if m.field().is_finite() {
        let m_group = generated_group(m.generators(), MAX_SUBGROUP_ORDER)?;
        let h_group = generated_group(h.generators(), MAX_SUBGROUP_ORDER)?;
        if let Some(i) = h.generators().iter().position(|x| !m_group.contains(x)) {
            return Err(Error::NotNormal(format!("generator {i} of H is not in M")));
        }
        for (j, g) in m.generators().iter().enumerate() {
            let g_inv = g.inverse().expect("generators are invertible");
            if let Some(i) = h.generators().iter().position(|x| !h_group.contains(&x.conjugate_by(g, &g_inv))) {
                return Err(Error::NotNormal(format!("generator {j} of M conjugates generator {i} of H out of H")));
            }
        }
        return Ok(NormalityEvidence::Enumerated { m_order: m_group.len(), h_order: h_group.len() });
    }
    let a_m = algebra_basis(m.field(), m.n(), &m.generic_tuple());
    let a_h = algebra_basis(h.field(), h.n(), &h.generic_tuple());
    if let Some(i) = h.generators().iter().position(|x| !in_span(&a_m, x)) {
        return Err(Error::AlgebraNotStable(format!("generator {i} of H is outside the algebra of M")));
    }
    for (j, g) in m.generators().iter().enumerate() {
        let g_inv = g.inverse().expect("generators are invertible");
        if a_h.iter().any(|a| !in_span(&a_h, &a.conjugate_by(g, &g_inv))) {
            return Err(Error::AlgebraNotStable(format!("generator {j} of M does not preserve the algebra of H")));
        }
    }
    Ok(NormalityEvidence::AlgebraStable)
}

/// For `H ◁ M`: the composition-series cocharacter of `M` yields
/// semisimplifications of both.
pub fn clifford_joint_ss(m: &Representation, h: &Representation, seed: &SeedOrder) -> Result<CliffordJoint> {
    if m.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    if m.n() != h.n() {
        return Err(Error::DimensionMismatch(format!("M acts on dimension {}, H on {}", m.n(), h.n())));
    }
    let normality = check_normal(m, h)?;
    let m_ss = semisimplify(m, seed)?;
    let h_limits = m_ss.cocharacter.limit_all(h.generators()).map_err(|e| match e {
        Error::LimitDoesNotExist => Error::InternalInvariantViolation("H is not contained in the parabolic of M".into()),
        e => e,
    })?;
    let h_certificate = is_semisimple(&Representation::new(h.field(), h_limits.clone())?)?;
    if !h_certificate.is_semisimple() {
        return Err(Error::InternalInvariantViolation("limit of the normal subgroup is not semisimple".into()));
    }
    Ok(CliffordJoint { m: m_ss, h: h.clone(), h_limits, h_certificate, normality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FieldSpec, Subspace};

    fn rep(f: FieldSpec, gens: &[Vec<Vec<i64>>]) -> Representation {
        Representation::from_i64(f, gens).unwrap()
    }

    #[test]
    fn h_equals_m() {
        let f = FieldSpec::Prime(2);
        let u = rep(f, &[vec![vec![1, 1], vec![0, 1]]]);
        let j = clifford_joint_ss(&u, &u, &SeedOrder::default()).unwrap();
        assert_eq!(j.h_limits, j.m.ss_generators);
    }

    #[test]
    fn dihedral_irreducible() {
        let f = FieldSpec::Prime(3);
        let m = rep(f, &[vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, -1]]]);
        // ⟨diag(1,−1)⟩ alone is not normal: the swap sends it to diag(−1,1).
        let d = rep(f, &[vec![vec![1, 0], vec![0, -1]]]);
        assert!(matches!(clifford_joint_ss(&m, &d, &SeedOrder::default()), Err(Error::NotNormal(_))));
        let h = rep(f, &[vec![vec![1, 0], vec![0, -1]], vec![vec![-1, 0], vec![0, 1]]]);
        let j = clifford_joint_ss(&m, &h, &SeedOrder::default()).unwrap();
        assert!(j.m.flag.is_trivial());
        assert_eq!(j.h_limits, h.generators());
        assert_eq!(j.normality, NormalityEvidence::Enumerated { m_order: 8, h_order: 4 });
    }

    #[test]
    fn borel_pair() {
        let f = FieldSpec::Prime(3);
        let m = rep(f, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![0, -1]]]);
        let h = rep(f, &[vec![vec![1, 1], vec![0, 1]]]);
        let j = clifford_joint_ss(&m, &h, &SeedOrder::default()).unwrap();
        assert_eq!(j.m.flag.steps()[0], Subspace::span(f, 2, &[vec![f.one(), f.zero()]]));
        assert_eq!(j.h_limits, vec![Matrix::identity(f, 2)]);
        assert!(j.m.semisimple_certificate.is_semisimple());
        // The unipotent part does not contain M.
        assert!(matches!(clifford_joint_ss(&h, &m, &SeedOrder::default()), Err(Error::NotNormal(_))));
    }

    #[test]
    fn rational_algebra_check() {
        let q = FieldSpec::Rational;
        let m = rep(q, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![0, -1]]]);
        let h = rep(q, &[vec![vec![1, 1], vec![0, 1]]]);
        let j = clifford_joint_ss(&m, &h, &SeedOrder::default()).unwrap();
        assert_eq!(j.normality, NormalityEvidence::AlgebraStable);
        let lower = rep(q, &[vec![vec![1, 0], vec![1, 1]]]);
        assert!(matches!(clifford_joint_ss(&h, &lower, &SeedOrder::default()), Err(Error::AlgebraNotStable(_))));
    }
}
