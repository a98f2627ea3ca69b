//! Exact JSON encodings of matrices, subspaces, flags and results.

use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use ssred_core::cochar::{Cocharacter, Flag};
use ssred_core::exactalg::{FieldSpec, Matrix, Scalar, Subspace};
use ssred_core::matrep::Semisimplicity;
use ssred_core::ssred::SsResult;
use ssred_core::Error;

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn matrices(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix).collect())
}

pub fn subspace(s: &Subspace) -> Value {
    Value::Array(s.basis_vectors().iter().map(|v| vector(v)).collect())
}

pub fn flag(f: &Flag) -> Value {
    Value::Array(f.steps().iter().map(subspace).collect())
}

pub fn fraction(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn field(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Prime(p) => json!({"kind": "prime", "p": p}),
        FieldSpec::Rational => json!({"kind": "rational"}),
    }
}

pub fn cocharacter(c: &Cocharacter) -> Value {
    json!({
        "basis_change": matrix(c.basis_change()),
        "weights": c.weights(),
        "canonical_weights": c.canonical_weights(),
    })
}

pub fn semisimplicity(s: &Semisimplicity) -> Value {
    match s {
        Semisimplicity::Semisimple { summands } => {
            json!({"kind": "semisimple", "summands": summands.iter().map(subspace).collect::<Vec<_>>()})
        }
        Semisimplicity::NotSemisimple { uncomplemented } => {
            json!({"kind": "not_semisimple", "uncomplemented": subspace(uncomplemented)})
        }
    }
}

pub fn ss_result(r: &SsResult) -> Value {
    json!({
        "field": field(r.input.field()),
        "flag": flag(&r.flag),
        "block_sizes": r.flag.block_sizes(),
        "cocharacter": cocharacter(&r.cocharacter),
        "ss_generators": matrices(&r.ss_generators),
        "semisimple": r.semisimple_certificate.is_semisimple(),
        "certificate": semisimplicity(&r.semisimple_certificate),
        "l_irreducible": r.l_irreducible,
    })
}

/// Exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Finding,
    InvalidInput,
    ResourceBound,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Finding => 1,
            Status::InvalidInput => 2,
            Status::ResourceBound => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Finding => "finding",
            Status::InvalidInput => "invalid_input",
            Status::ResourceBound => "resource_bound",
        }
    }

    pub fn of_error(e: &Error) -> Status {
        if e.is_resource_bound() {
            return Status::ResourceBound;
        }
        match e {
            Error::NotConjugate | Error::InternalInvariantViolation(_) => Status::Finding,
            _ => Status::InvalidInput,
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidField(_) => "invalid_field",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::FieldMismatch => "field_mismatch",
        Error::GeneratorCountMismatch { .. } => "generator_count_mismatch",
        Error::NotInvertible(_) => "not_invertible",
        Error::InvalidInput(_) => "invalid_input",
        Error::LimitDoesNotExist => "limit_does_not_exist",
        Error::NotInUnipotentRadical => "not_in_unipotent_radical",
        Error::NotBlockDiagonal(_) => "not_block_diagonal",
        Error::NotNormal(_) => "not_normal",
        Error::AlgebraNotStable(_) => "algebra_not_stable",
        Error::PreconditionNotDestabilizable => "precondition_not_destabilizable",
        Error::SearchSpaceExceeded(_) => "search_space_exceeded",
        Error::ResourceBoundExceeded(_) => "resource_bound_exceeded",
        Error::CertificateSearchExhausted(_) => "certificate_search_exhausted",
        Error::NotConjugate => "not_conjugate",
        Error::Undecided(_) => "undecided",
        Error::InternalInvariantViolation(_) => "internal_invariant_violation",
    }
}

pub fn envelope(command: &str, digest: Option<String>, status: Status, result: Value) -> Value {
    json!({
        "command": command,
        "input_digest": digest,
        "status": status.label(),
        "result": result,
    })
}
