//! A Kempf–Hesselink style optimal destabilizing flag, by exhaustive search.
//!
//! For a cocharacter `λ` with weights `w` in basis `B`, the rate of `λ` on the
//! enveloping algebra `A` is the least `w_i − w_j > 0` over the entries of
//! `B⁻¹aB` (`a ∈ A`) that `λ` kills in the limit; the measure is
//! `rate² / Σ w_i²`, compared exactly. The rate depends on the Levi as well as
//! the flag, so over a finite field it is maximized over all conjugates of the
//! Levi by the unipotent radical; this makes the measure a function of the
//! parabolic and the weights alone.
//!
//! Candidates are flags whose limit is semisimple, i.e. lands in the closed
//! orbit, and is not conjugate to the input.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cochar::{canonical_weights, flag_to_cocharacter, Cocharacter, Flag};
use crate::error::{Error, Result};
use crate::exactalg::{spin, FieldSpec, Matrix, Scalar, Subspace};
use crate::matrep::{
    algebra_basis, composition_series, find_submodule, is_semisimple, module_iso, Representation, SeedOrder,
    SubmoduleSearch,
};

/// Cap on `q^n` for exhaustive submodule enumeration.
pub const MAX_LATTICE_POINTS: u64 = 1 << 14;
/// Caps on the number of submodules and flags considered.
pub const MAX_SUBMODULES: usize = 1 << 12;
pub const MAX_FLAGS: usize = 1 << 16;
/// Cap on the unipotent-radical points enumerated per flag.
pub const MAX_LEVI_CONJUGATES: u64 = 1 << 12;

/// The best cocharacter found for one candidate flag.
#[derive(Clone, Debug)]
pub struct FlagMeasure {
    pub flag: Flag,
    /// Canonical weights, non-increasing along the adapted basis.
    pub weights: Vec<i64>,
    pub cocharacter: Cocharacter,
    /// Squared quotient `rate² / Σ w_i²`.
    pub measure: BigRational,
}

#[derive(Clone, Debug)]
pub struct OptimalFlagReport {
    pub argmax_flags: Vec<Flag>,
    pub measure: BigRational,
    /// One entry per candidate flag, sorted by flag.
    pub per_flag_data: Vec<FlagMeasure>,
    pub search_bound: i64,
    /// Every invariant subspace was enumerated.
    pub lattice_exhaustive: bool,
    /// Every Levi subgroup of every candidate parabolic was examined.
    pub levi_exhaustive: bool,
}

impl OptimalFlagReport {
    pub fn argmax(&self) -> impl Iterator<Item = &FlagMeasure> {
        self.per_flag_data.iter().filter(move |d| d.measure == self.measure)
    }
}

fn proper(s: &Subspace) -> bool {
    !s.is_zero() && !s.is_full()
}

fn close_lattice(mut subs: BTreeSet<Subspace>, with_intersections: bool) -> Result<BTreeSet<Subspace>> {
    loop {
        let list: Vec<Subspace> = subs.iter().cloned().collect();
        let mut added = false;
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                let mut new = vec![a.sum(b)];
                if with_intersections {
                    new.push(a.intersection(b));
                }
                for c in new {
                    if proper(&c) && subs.insert(c) {
                        added = true;
                    }
                }
            }
        }
        if subs.len() > MAX_SUBMODULES {
            return Err(Error::SearchSpaceExceeded(format!("more than {MAX_SUBMODULES} invariant subspaces")));
        }
        if !added {
            return Ok(subs);
        }
    }
}

/// Proper nonzero invariant subspaces, and whether the list is complete.
///
/// Over F_q with `q^n ≤ 2^14` every cyclic submodule is spun (one per
/// projective point) and sums are closed, which is exhaustive. Otherwise the
/// list is grown from kernels of algebra elements, composition series and
/// MeatAxe splittings, then closed under sums and intersections.
pub fn invariant_subspace_lattice(rep: &Representation) -> Result<(Vec<Subspace>, bool)> {
    let field = rep.field();
    let n = rep.n();
    let gens = rep.generators();
    let mut subs = BTreeSet::new();
    let exhaustive = match field {
        FieldSpec::Prime(q) => (q as u64).checked_pow(n as u32).is_some_and(|p| p <= MAX_LATTICE_POINTS),
        FieldSpec::Rational => false,
    };
    if exhaustive {
        let q = field.order().expect("finite field");
        for lead in 0..n {
            let tail = n - lead - 1;
            for code in 0..q.pow(tail as u32) {
                let mut v = vec![field.zero(); n];
                v[lead] = field.one();
                let mut c = code;
                for x in v.iter_mut().skip(lead + 1) {
                    *x = field.from_i64((c % q) as i64);
                    c /= q;
                }
                let s = spin(field, n, &[v], gens);
                if proper(&s) {
                    subs.insert(s);
                }
            }
        }
        return Ok((close_lattice(subs, false)?.into_iter().collect(), true));
    }
    let mut seeds: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            e
        })
        .collect();
    let id = Matrix::identity(field, n);
    for a in algebra_basis(field, n, &rep.generic_tuple()) {
        let mut diag: Vec<Scalar> = (0..n).map(|i| a.get(i, i).clone()).collect();
        diag.sort();
        diag.dedup();
        seeds.extend(a.nullspace());
        for c in diag {
            seeds.extend((&a - &id.scale(&c)).nullspace());
        }
    }
    for s in &seeds {
        let sp = spin(field, n, std::slice::from_ref(s), gens);
        if proper(&sp) {
            subs.insert(sp);
        }
    }
    for seed in 0..4 {
        let cs = composition_series(rep, &SeedOrder::new(seed))?;
        subs.extend(cs.flag.proper_steps().iter().cloned());
    }
    let mut rng = SeedOrder::default().rng();
    if let SubmoduleSearch::Submodule(s) = find_submodule(rep, &mut rng)? {
        subs.insert(s);
    }
    Ok((close_lattice(subs, true)?.into_iter().collect(), false))
}

fn chains(subs: &[Subspace]) -> Result<Vec<Vec<usize>>> {
    let m = subs.len();
    let inside: Vec<Vec<usize>> =
        (0..m).map(|i| (0..m).filter(|&j| subs[i].dim() < subs[j].dim() && subs[j].contains(&subs[i])).collect()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..m).rev().map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty chain");
        for &j in inside[last].iter().rev() {
            let mut next = chain.clone();
            next.push(j);
            stack.push(next);
        }
        out.push(chain);
        if out.len() > MAX_FLAGS {
            return Err(Error::SearchSpaceExceeded(format!("more than {MAX_FLAGS} invariant flags")));
        }
    }
    Ok(out)
}

/// Canonical weight vectors, strictly decreasing across blocks of the given
/// sizes and constant on each block, with entries bounded by `b`.
pub fn block_weight_vectors(sizes: &[usize], b: i64) -> Vec<Vec<i64>> {
    let r = sizes.len();
    let values: Vec<i64> = (-b..=b).rev().collect();
    let mut out = BTreeSet::new();
    let mut pick = Vec::with_capacity(r);
    fn rec(
        values: &[i64],
        start: usize,
        r: usize,
        pick: &mut Vec<i64>,
        sizes: &[usize],
        b: i64,
        out: &mut BTreeSet<Vec<i64>>,
    ) {
        if pick.len() == r {
            let full: Vec<i64> =
                sizes.iter().zip(pick.iter()).flat_map(|(&s, &w)| std::iter::repeat_n(w, s)).collect();
            let c = canonical_weights(&full);
            if c.iter().all(|x| x.abs() <= b) {
                out.insert(c);
            }
            return;
        }
        for i in start..values.len() {
            pick.push(values[i]);
            rec(values, i + 1, r, pick, sizes, b, out);
            pick.pop();
        }
    }
    rec(&values, 0, r, &mut pick, sizes, b, &mut out);
    // Deterministic order: descending lexicographic, so steeper leading weights first.
    out.into_iter().rev().collect()
}

fn block_of(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect()
}

/// Block-upper-unitriangular matrices for the given block sizes over F_q.
fn unipotent_radical(field: FieldSpec, sizes: &[usize]) -> Option<Vec<Matrix>> {
    let n: usize = sizes.iter().sum();
    let blocks = block_of(sizes);
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| blocks[i] < blocks[j]).collect();
    let q = field.order()?;
    let total = q.checked_pow(slots.len() as u32)?;
    if total > MAX_LEVI_CONJUGATES {
        return None;
    }
    Some(
        (0..total)
            .map(|code| {
                let mut u = Matrix::identity(field, n);
                let mut c = code;
                for &(i, j) in &slots {
                    u.set(i, j, field.from_i64((c % q) as i64));
                    c /= q;
                }
                u
            })
            .collect(),
    )
}

/// Block pairs `(i, j)`, `i < j`, where some algebra element has a nonzero entry.
fn carried_pairs(adapted: &[Matrix], blocks: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for a in adapted {
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if blocks[i] < blocks[j] && !a.get(i, j).is_zero() {
                    out.insert((blocks[i], blocks[j]));
                }
            }
        }
    }
    out
}

pub fn optimal_flag(rep: &Representation, max_height: i64) -> Result<OptimalFlagReport> {
    if max_height < 1 {
        return Err(Error::InvalidInput("weight height bound must be at least 1".into()));
    }
    if is_semisimple(rep)?.is_semisimple() {
        return Err(Error::PreconditionNotDestabilizable);
    }
    let field = rep.field();
    let n = rep.n();
    let (subs, lattice_exhaustive) = invariant_subspace_lattice(rep)?;
    let algebra = algebra_basis(field, n, &rep.generic_tuple());
    let mut levi_exhaustive = true;
    let mut per_flag_data = Vec::new();
    for chain in chains(&subs)? {
        let mut steps: Vec<Subspace> = chain.iter().map(|&i| subs[i].clone()).collect();
        steps.push(Subspace::full(field, n));
        let flag = Flag::new(steps)?;
        let base = flag_to_cocharacter(&flag);
        let limit = Representation::new(field, base.limit_all(rep.generators())?)?;
        if !is_semisimple(&limit)?.is_semisimple() || module_iso(rep, &limit)?.is_some() {
            continue;
        }
        let sizes = flag.block_sizes();
        let blocks = block_of(&sizes);
        let b = flag.adapted_basis();
        let b_inv = b.inverse().expect("adapted basis is invertible");
        let adapted: Vec<Matrix> = algebra.iter().map(|a| &(&b_inv * a) * &b).collect();
        let radical = match unipotent_radical(field, &sizes) {
            Some(us) => us,
            None => {
                levi_exhaustive = false;
                vec![Matrix::identity(field, n)]
            }
        };
        // Distinct carried-pair sets, each with the first unipotent element producing it.
        let mut patterns: BTreeMap<BTreeSet<(usize, usize)>, Matrix> = BTreeMap::new();
        for u in radical {
            let u_inv = u.inverse().expect("unitriangular");
            let conj: Vec<Matrix> = adapted.iter().map(|a| &(&u_inv * a) * &u).collect();
            let pairs = carried_pairs(&conj, &blocks);
            if pairs.is_empty() {
                return Err(Error::InternalInvariantViolation(
                    "destabilizing flag has a Levi containing the group".into(),
                ));
            }
            patterns.entry(pairs).or_insert(u);
        }
        let mut best: Option<(BigRational, Vec<i64>, Matrix)> = None;
        for w in block_weight_vectors(&sizes, max_height) {
            let block_w: Vec<i64> = {
                let mut starts = Vec::new();
                let mut at = 0;
                for &s in &sizes {
                    starts.push(w[at]);
                    at += s;
                }
                starts
            };
            let norm: i64 = w.iter().map(|x| x * x).sum();
            for (pairs, u) in &patterns {
                let rate = pairs.iter().map(|&(i, j)| block_w[i] - block_w[j]).min().expect("nonempty pattern");
                let m = BigRational::new(BigInt::from(rate * rate), BigInt::from(norm));
                if best.as_ref().is_none_or(|(bm, _, _)| m > *bm) {
                    best = Some((m, w.clone(), u.clone()));
                }
            }
        }
        let Some((measure, weights, u)) = best else {
            continue;
        };
        let cocharacter = Cocharacter::new(&b * &u, weights.clone())?;
        per_flag_data.push(FlagMeasure { flag, weights, cocharacter, measure });
    }
    per_flag_data.sort_by(|a, b| a.flag.cmp(&b.flag));
    let measure = per_flag_data
        .iter()
        .map(|d| d.measure.clone())
        .max()
        .ok_or_else(|| Error::SearchSpaceExceeded(format!("no destabilizing cocharacter of height at most {max_height}")))?;
    let argmax_flags = per_flag_data.iter().filter(|d| d.measure == measure).map(|d| d.flag.clone()).collect();
    Ok(OptimalFlagReport {
        argmax_flags,
        measure,
        per_flag_data,
        search_bound: max_height,
        lattice_exhaustive,
        levi_exhaustive,
    })
}
