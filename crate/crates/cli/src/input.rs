//! The group description file.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "backend": "exact",
//!   "generators": [[["0", "-1"], ["1", "0"]]],
//!   "max_group_order": 10000,
//!   "tolerance": 1e-9
//! }
//! ```
//!
//! Exact entries are strings in the scalar literal grammar (`"1/2"`,
//! `"-i"`, `"3/4-2/5i"`); plain JSON integers are accepted too. Float entries
//! may be JSON numbers or strings such as `"0.5-0.866i"`.

use molien::{
    parse_complex_float, parse_scalar, ComplexFloat, Error, GaussianRational, Scalar, SquareMatrix,
};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Number(serde_json::Number),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub dimension: usize,
    pub backend: Backend,
    pub generators: Vec<Vec<Vec<Entry>>>,
    #[serde(default)]
    pub max_group_order: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl GroupSpecFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: GroupSpecFile = serde_json::from_str(text).map_err(CliError::Json)?;
        spec.check_shape()?;
        Ok(spec)
    }

    fn check_shape(&self) -> Result<(), CliError> {
        let n = self.dimension;
        if n == 0 {
            return Err(Error::Validation("dimension must be positive".into()).into());
        }
        if self.generators.is_empty() {
            return Err(Error::Validation("generators must be nonempty".into()).into());
        }
        for (k, g) in self.generators.iter().enumerate() {
            if g.len() != n || g.iter().any(|row| row.len() != n) {
                return Err(
                    Error::Validation(format!("generator {} is not {n}×{n}", k + 1)).into(),
                );
            }
        }
        Ok(())
    }

    pub fn exact_generators(&self) -> Result<Vec<SquareMatrix<GaussianRational>>, CliError> {
        self.generators_with(|entry| match entry {
            Entry::Text(s) => parse_scalar(s),
            Entry::Number(x) => x.as_i64().map(GaussianRational::from_i64).ok_or_else(|| {
                Error::Validation(format!("exact entry {x} must be a string literal"))
            }),
        })
    }

    pub fn float_generators(&self) -> Result<Vec<SquareMatrix<ComplexFloat>>, CliError> {
        self.generators_with(|entry| match entry {
            Entry::Text(s) => parse_complex_float(s),
            Entry::Number(x) => x
                .as_f64()
                .map(ComplexFloat::from)
                .ok_or_else(|| Error::Validation(format!("float entry {x} is out of range"))),
        })
    }

    fn generators_with<S: Scalar>(
        &self,
        parse: impl Fn(&Entry) -> Result<S, Error>,
    ) -> Result<Vec<SquareMatrix<S>>, CliError> {
        self.generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let rows = g
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(c, e)| {
                                parse(e).map_err(|err| CliError::Entry {
                                    generator: k + 1,
                                    row: r + 1,
                                    col: c + 1,
                                    err,
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SquareMatrix::from_rows(rows)?)
            })
            .collect()
    }
}
