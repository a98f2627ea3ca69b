//! The JSON representation file: `{name?, n, field, generators}` with matrix
//! entries as strings.

use serde::Deserialize;
use ssred_core::exactalg::{FieldSpec, Matrix, Scalar};
use ssred_core::matrep::Representation;
use ssred_core::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldJson {
    Prime { p: u64 },
    Rational,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    #[serde(default)]
    pub name: Option<String>,
    pub n: usize,
    pub field: FieldJson,
    pub generators: Vec<Vec<Vec<String>>>,
}

impl RepFile {
    pub fn parse(text: &str) -> Result<RepFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed representation file: {e}")))
    }

    pub fn field(&self) -> Result<FieldSpec> {
        match self.field {
            FieldJson::Prime { p } => FieldSpec::prime(p),
            FieldJson::Rational => Ok(FieldSpec::Rational),
        }
    }

    pub fn to_representation(&self) -> Result<Representation> {
        let field = self.field()?;
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for (g, rows) in self.generators.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch(format!("generator {g} is not {n}x{n}")));
            }
            let parsed: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            gens.push(Matrix::from_rows(field, n, &parsed));
        }
        let rep = Representation::new(field, gens)?;
        Ok(match &self.name {
            Some(name) => rep.with_name(name.clone()),
            None => rep,
        })
    }

    pub fn from_representation(rep: &Representation) -> RepFile {
        let field = match rep.field() {
            FieldSpec::Prime(p) => FieldJson::Prime { p: p as u64 },
            FieldSpec::Rational => FieldJson::Rational,
        };
        let generators = rep
            .generators()
            .iter()
            .map(|g| (0..g.rows()).map(|i| g.row(i).iter().map(Scalar::to_string).collect()).collect())
            .collect();
        RepFile { name: rep.name().map(str::to_string), n: rep.n(), field, generators }
    }

    /// The canonical text form: fixed key order, one generator per line.
    pub fn to_canonical_string(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            out += &format!("  \"name\": {},\n", q(name));
        }
        out += &format!("  \"n\": {},\n", self.n);
        out += &match self.field {
            FieldJson::Prime { p } => format!("  \"field\": {{\"kind\": \"prime\", \"p\": {p}}},\n"),
            FieldJson::Rational => "  \"field\": {\"kind\": \"rational\"},\n".to_string(),
        };
        out += "  \"generators\": [\n";
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let rows: Vec<String> = g
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|s| q(s)).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("    [{}]", rows.join(", "))
            })
            .collect();
        out += &gens.join(",\n");
        out += "\n  ]\n}\n";
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIPOTENT: &str = "{\n  \"name\": \"unipotent\",\n  \"n\": 2,\n  \"field\": {\"kind\": \"prime\", \"p\": 2},\n  \"generators\": [\n    [[\"1\", \"1\"], [\"0\", \"1\"]]\n  ]\n}\n";

    #[test]
    fn canonical_roundtrip() {
        let f = RepFile::parse(UNIPOTENT).unwrap();
        let rep = f.to_representation().unwrap();
        assert_eq!(RepFile::from_representation(&rep).to_canonical_string(), UNIPOTENT);
    }

    #[test]
    fn rational_entries() {
        let text = r#"{"n": 2, "field": {"kind": "rational"}, "generators": [[["1/2", "0"], ["0", "-3/6"]]]}"#;
        let rep = RepFile::parse(text).unwrap().to_representation().unwrap();
        let back = RepFile::from_representation(&rep);
        assert_eq!(back.generators[0], vec![vec!["1/2", "0"], vec!["0", "-1/2"]]);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(RepFile::parse("{").is_err());
        let singular = r#"{"n": 2, "field": {"kind": "prime", "p": 2}, "generators": [[["1", "1"], ["1", "1"]]]}"#;
        assert!(matches!(RepFile::parse(singular).unwrap().to_representation(), Err(Error::NotInvertible(_))));
        let shape = r#"{"n": 2, "field": {"kind": "prime", "p": 2}, "generators": [[["1"]]]}"#;
        assert!(RepFile::parse(shape).unwrap().to_representation().is_err());
        let composite = r#"{"n": 1, "field": {"kind": "prime", "p": 4}, "generators": [[["1"]]]}"#;
        assert!(RepFile::parse(composite).unwrap().to_representation().is_err());
        let empty = r#"{"n": 1, "field": {"kind": "rational"}, "generators": []}"#;
        assert!(RepFile::parse(empty).unwrap().to_representation().is_err());
    }
}
