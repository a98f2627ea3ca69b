//! Irreducibility testing and submodule search.
//!
//! Over `F_p` this is the MeatAxe: random algebra elements with small kernel
//! feed Norton's criterion, with an exhaustive scan of lines as fallback for
//! small modules. Over ℚ the random theory does not apply; instead the
//! radical of the enveloping algebra is computed from the trace form, and for
//! semisimple modules the commutant is inspected for zero divisors or a
//! primitive element generating a field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::{intertwiner_basis, linear_combination, spin, EchelonBasis, FieldSpec, Matrix, Scalar, Subspace};

use super::{algebra_basis, in_span, Representation};

/// Largest dimension for which irreducibility over ℚ is attempted.
pub const RATIONAL_DIM_CAP: usize = 8;
const NORTON_TRIALS: usize = 200;
const MAX_KERNEL_LINES: u64 = 4096;
const EXHAUSTIVE_DIM_CAP: usize = 6;
const MAX_EXHAUSTIVE_LINES: u64 = 1 << 20;
const RATIONAL_TRIALS: usize = 64;
const MAX_FACTOR_BOUND: u64 = 1_000_000_000_000;

/// Re-verifiable certificate that a module has no proper nonzero submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityWitness {
    Dimension1,
    /// The enveloping algebra is all of `M_n(k)` (Burnside).
    FullMatrixAlgebra,
    /// Norton's criterion: `element` lies in the enveloping algebra, every
    /// nonzero vector of its kernel spins to the whole space, and
    /// `dual_vector ∈ ker(elementᵀ)` spins to the whole dual space.
    Norton { element: Matrix, kernel: Subspace, dual_vector: Vec<Scalar> },
    /// Every line of `F_p^n` spins to the whole space.
    ExhaustiveLines { lines: u64 },
    /// Over ℚ: the enveloping algebra has zero radical (so the module is
    /// semisimple) and the commutant is the field `ℚ[generator]`.
    CommutantField { generator: Matrix, commutant_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmoduleSearch {
    Irreducible(IrreducibilityWitness),
    Submodule(Subspace),
}

fn is_proper(s: &Subspace) -> bool {
    !s.is_zero() && !s.is_full()
}

fn lines_in(p: u64, d: usize) -> u64 {
    if d == 0 {
        return 0;
    }
    (p.saturating_pow(d as u32) - 1) / (p - 1)
}

/// Visit one coefficient vector per line of `F_p^d` (first nonzero entry 1).
/// Stops early when `visit` returns false.
fn for_each_line(field: FieldSpec, d: usize, mut visit: impl FnMut(&[Scalar]) -> bool) {
    let FieldSpec::Prime(p) = field else {
        panic!("line enumeration needs a finite field");
    };
    for lead in 0..d {
        let tail = d - lead - 1;
        let mut digits = vec![0u32; tail];
        loop {
            let mut c = vec![field.zero(); d];
            c[lead] = field.one();
            for (k, &x) in digits.iter().enumerate() {
                c[lead + 1 + k] = field.from_i64(x as i64);
            }
            if !visit(&c) {
                return;
            }
            let mut i = 0;
            while i < tail {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == tail {
                break;
            }
        }
    }
}

fn combine(coeffs: &[Scalar], vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let field = coeffs[0].field();
    let n = vectors[0].len();
    let mut out = vec![field.zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(c * x);
        }
    }
    out
}

fn spin_one(rep: &Representation, v: &[Scalar]) -> Subspace {
    spin(rep.field(), rep.n(), &[v.to_vec()], rep.generators())
}

/// Search for a proper nonzero invariant subspace, or certify there is none.
pub fn find_submodule<R: Rng>(rep: &Representation, rng: &mut R) -> Result<SubmoduleSearch> {
    let n = rep.n();
    if n == 1 {
        return Ok(SubmoduleSearch::Irreducible(IrreducibilityWitness::Dimension1));
    }
    let algebra = algebra_basis(rep.field(), n, rep.generators());
    if algebra.len() == n * n {
        return Ok(SubmoduleSearch::Irreducible(IrreducibilityWitness::FullMatrixAlgebra));
    }
    match rep.field() {
        FieldSpec::Prime(p) => find_submodule_finite(rep, &algebra, p as u64, rng),
        FieldSpec::Rational => find_submodule_rational(rep, &algebra, rng),
    }
}

/// Spin the kernel lines and a dual kernel vector of `a`; `None` means the
/// element was not usable (kernel trivial or too large to scan).
fn norton_step(rep: &Representation, a: &Matrix, max_lines: u64) -> Option<SubmoduleSearch> {
    let field = rep.field();
    let kernel = a.nullspace();
    if kernel.is_empty() {
        return None;
    }
    // Cheap first probe: a single kernel vector.
    let s = spin_one(rep, &kernel[0]);
    if is_proper(&s) {
        return Some(SubmoduleSearch::Submodule(s));
    }
    let line_count = match field.order() {
        Some(p) => lines_in(p, kernel.len()),
        None if kernel.len() == 1 => 1,
        None => return None,
    };
    if line_count > max_lines {
        return None;
    }
    if kernel.len() > 1 {
        let mut found = None;
        for_each_line(field, kernel.len(), |c| {
            let s = spin_one(rep, &combine(c, &kernel));
            if is_proper(&s) {
                found = Some(s);
                false
            } else {
                true
            }
        });
        if let Some(s) = found {
            return Some(SubmoduleSearch::Submodule(s));
        }
    }
    let dual = rep.transposed();
    let w = a.transpose().nullspace().into_iter().next().expect("square singular matrix");
    let ds = spin(field, rep.n(), std::slice::from_ref(&w), dual.generators());
    if is_proper(&ds) {
        return Some(SubmoduleSearch::Submodule(ds.annihilator()));
    }
    Some(SubmoduleSearch::Irreducible(IrreducibilityWitness::Norton {
        element: a.clone(),
        kernel: Subspace::span(field, rep.n(), &kernel),
        dual_vector: w,
    }))
}

fn find_submodule_finite<R: Rng>(rep: &Representation, algebra: &[Matrix], p: u64, rng: &mut R) -> Result<SubmoduleSearch> {
    let field = rep.field();
    let n = rep.n();
    // Basis elements first: they are often sparse with small kernels.
    for a in algebra.iter().skip(1) {
        if let Some(r) = norton_step(rep, a, MAX_KERNEL_LINES) {
            return Ok(r);
        }
    }
    for _ in 0..NORTON_TRIALS {
        let c: Vec<Scalar> = (0..algebra.len()).map(|_| field.from_i64(rng.gen_range(0..p) as i64)).collect();
        let a = linear_combination(&c, algebra);
        if let Some(r) = norton_step(rep, &a, MAX_KERNEL_LINES) {
            return Ok(r);
        }
    }
    let total = lines_in(p, n);
    if n <= EXHAUSTIVE_DIM_CAP && total <= MAX_EXHAUSTIVE_LINES {
        let mut found = None;
        let id: Vec<Vec<Scalar>> = Matrix::identity(field, n).row_vectors();
        for_each_line(field, n, |c| {
            let s = spin_one(rep, &combine(c, &id));
            if is_proper(&s) {
                found = Some(s);
                false
            } else {
                true
            }
        });
        return Ok(match found {
            Some(s) => SubmoduleSearch::Submodule(s),
            None => SubmoduleSearch::Irreducible(IrreducibilityWitness::ExhaustiveLines { lines: total }),
        });
    }
    Err(Error::Undecided(format!(
        "MeatAxe found no usable algebra element in {NORTON_TRIALS} trials (n = {n}, p = {p})"
    )))
}

/// Jacobson radical of a matrix algebra in characteristic 0: the radical of
/// the trace form `(x, y) ↦ tr(xy)`.
pub(crate) fn rational_radical(algebra: &[Matrix]) -> Vec<Matrix> {
    let d = algebra.len();
    let field = algebra[0].field();
    let gram = Matrix::from_fn(field, d, d, |i, j| (&algebra[i] * &algebra[j]).trace());
    gram.nullspace().into_iter().map(|c| linear_combination(&c, algebra)).collect()
}

fn find_submodule_rational<R: Rng>(rep: &Representation, algebra: &[Matrix], rng: &mut R) -> Result<SubmoduleSearch> {
    let field = rep.field();
    let n = rep.n();
    if n > RATIONAL_DIM_CAP {
        return Err(Error::Undecided(format!(
            "irreducibility over Q is capped at dimension {RATIONAL_DIM_CAP}, got {n}"
        )));
    }
    let radical = rational_radical(algebra);
    if !radical.is_empty() {
        // J·M is a proper nonzero submodule: nonzero since J acts faithfully,
        // proper since J is nilpotent.
        let mut vecs = Vec::new();
        for j in &radical {
            for c in 0..n {
                vecs.push(j.column(c));
            }
        }
        let s = Subspace::span(field, n, &vecs);
        if !is_proper(&s) || !rep.is_invariant(&s) {
            return Err(Error::InternalInvariantViolation("radical image is not a proper submodule".into()));
        }
        return Ok(SubmoduleSearch::Submodule(s));
    }
    // Semisimple from here on.
    for a in algebra.iter().skip(1) {
        if let Some(r) = norton_step(rep, a, 1) {
            return Ok(r);
        }
    }
    for t in 0..RATIONAL_TRIALS {
        let h = 1 + (t as i64) / 16;
        let c: Vec<Scalar> = (0..algebra.len()).map(|_| field.from_i64(rng.gen_range(-h..=h))).collect();
        let a = linear_combination(&c, algebra);
        for shift in [0i64, 1, -1, 2, -2] {
            let shifted = &a - &Matrix::identity(field, n).scale(&field.from_i64(shift));
            if let Some(r) = norton_step(rep, &shifted, 1) {
                return Ok(r);
            }
        }
    }
    let commutant = intertwiner_basis(rep.generators(), rep.generators())?;
    if commutant.len() == 1 {
        // End = ℚ and the module is semisimple, hence simple.
        return Ok(SubmoduleSearch::Irreducible(IrreducibilityWitness::CommutantField {
            generator: Matrix::identity(field, n),
            commutant_dim: 1,
        }));
    }
    // Singular nonzero endomorphisms have invariant kernels.
    let mut candidates: Vec<Matrix> = commutant.clone();
    for i in 0..commutant.len() {
        for j in i + 1..commutant.len() {
            candidates.push(&commutant[i] + &commutant[j]);
            candidates.push(&commutant[i] - &commutant[j]);
        }
    }
    for x in &candidates {
        if !x.is_zero() && !x.is_invertible() {
            let s = Subspace::span(field, n, &x.nullspace());
            return Ok(SubmoduleSearch::Submodule(s));
        }
    }
    let commutative = commutant.iter().all(|a| commutant.iter().all(|b| (a * b) == (b * a)));
    if commutative {
        for t in 0..RATIONAL_TRIALS {
            let h = 1 + (t as i64) / 8;
            let c: Vec<Scalar> = (0..commutant.len()).map(|_| field.from_i64(rng.gen_range(-h..=h))).collect();
            let z = linear_combination(&c, &commutant);
            let poly = minimal_polynomial(&z);
            if poly.len() - 1 != commutant.len() {
                continue;
            }
            match rational_root(&poly) {
                RootSearch::Root(r) => {
                    let shifted = &z - &Matrix::identity(field, n).scale(&Scalar::Rat(r));
                    return Ok(SubmoduleSearch::Submodule(Subspace::span(field, n, &shifted.nullspace())));
                }
                RootSearch::NoRoot if poly.len() - 1 <= 3 => {
                    return Ok(SubmoduleSearch::Irreducible(IrreducibilityWitness::CommutantField {
                        generator: z,
                        commutant_dim: commutant.len(),
                    }));
                }
                _ => {}
            }
        }
    }
    Err(Error::Undecided(format!(
        "semisimple module over Q with commutant of dimension {} could not be split or certified simple",
        commutant.len()
    )))
}

/// Monic minimal polynomial, coefficients from constant term upwards.
pub(crate) fn minimal_polynomial(z: &Matrix) -> Vec<BigRational> {
    let field = z.field();
    let n = z.rows();
    let mut powers = vec![Matrix::identity(field, n)];
    let mut eb = EchelonBasis::new(field, n * n);
    eb.insert(&powers[0].to_flat());
    loop {
        let next = z * powers.last().expect("nonempty");
        if eb.contains(&next.to_flat()) {
            let cols: Vec<Vec<Scalar>> = powers.iter().map(Matrix::to_flat).collect();
            let system = Matrix::from_columns(field, n * n, &cols);
            let coeffs = system.solve(&next.to_flat()).expect("in span");
            let mut poly: Vec<BigRational> = coeffs
                .iter()
                .map(|c| -c.as_rational().expect("rational scalar").clone())
                .collect();
            poly.push(BigRational::one());
            return poly;
        }
        eb.insert(&next.to_flat());
        powers.push(next);
    }
}

enum RootSearch {
    Root(BigRational),
    NoRoot,
    TooLarge,
}

fn divisors(m: &BigInt) -> Option<Vec<BigInt>> {
    let m = m.abs().to_u64()?;
    if m > MAX_FACTOR_BOUND {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d != m / d {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_root(poly: &[BigRational]) -> RootSearch {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let eval = |x: &BigRational| {
        poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    };
    if ints[0].is_zero() {
        return RootSearch::Root(BigRational::zero());
    }
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().expect("nonempty"))) else {
        return RootSearch::TooLarge;
    };
    for a in &num {
        for b in &den {
            for sign in [1, -1] {
                let x = BigRational::new(a * BigInt::from(sign), b.clone());
                if eval(&x).is_zero() {
                    return RootSearch::Root(x);
                }
            }
        }
    }
    RootSearch::NoRoot
}

/// Independently re-check an irreducibility certificate against `rep`.
pub fn verify_witness(rep: &Representation, witness: &IrreducibilityWitness) -> bool {
    let n = rep.n();
    let field = rep.field();
    match witness {
        IrreducibilityWitness::Dimension1 => n == 1,
        IrreducibilityWitness::FullMatrixAlgebra => algebra_basis(field, n, rep.generators()).len() == n * n,
        IrreducibilityWitness::Norton { element, kernel, dual_vector } => {
            let algebra = algebra_basis(field, n, rep.generators());
            if !in_span(&algebra, element) {
                return false;
            }
            let ker = Subspace::span(field, n, &element.nullspace());
            if &ker != kernel || ker.is_zero() {
                return false;
            }
            let kvecs = ker.basis_vectors();
            let all_lines_full = match field {
                FieldSpec::Prime(_) => {
                    let mut ok = true;
                    for_each_line(field, kvecs.len(), |c| {
                        ok = spin_one(rep, &combine(c, &kvecs)).is_full();
                        ok
                    });
                    ok
                }
                FieldSpec::Rational => kvecs.len() == 1 && spin_one(rep, &kvecs[0]).is_full(),
            };
            if !all_lines_full {
                return false;
            }
            let in_dual_kernel = element.transpose().mul_vec(dual_vector).iter().all(Scalar::is_zero);
            let nonzero = dual_vector.iter().any(|x| !x.is_zero());
            in_dual_kernel
                && nonzero
                && spin(field, n, std::slice::from_ref(dual_vector), rep.transposed().generators()).is_full()
        }
        IrreducibilityWitness::ExhaustiveLines { .. } => {
            if !field.is_finite() {
                return false;
            }
            let id = Matrix::identity(field, n).row_vectors();
            let mut ok = true;
            for_each_line(field, n, |c| {
                ok = spin_one(rep, &combine(c, &id)).is_full();
                ok
            });
            ok
        }
        IrreducibilityWitness::CommutantField { generator, commutant_dim } => {
            if field.is_finite() {
                return false;
            }
            let algebra = algebra_basis(field, n, rep.generators());
            if !rational_radical(&algebra).is_empty() {
                return false;
            }
            let Ok(commutant) = intertwiner_basis(rep.generators(), rep.generators()) else {
                return false;
            };
            if commutant.len() != *commutant_dim || !in_span(&commutant, generator) {
                return false;
            }
            if *commutant_dim == 1 {
                return true;
            }
            let poly = minimal_polynomial(generator);
            poly.len() - 1 == *commutant_dim && poly.len() - 1 <= 3 && matches!(rational_root(&poly), RootSearch::NoRoot)
        }
    }
}
