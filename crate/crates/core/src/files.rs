//! On-disk algebra format and its validated parsing.
//!
//! An algebra file is UTF-8 JSON describing structure constants (sparse,
//! `i < j`, 1-based indices), an isotropy subalgebra, a metric, and an
//! optional complement strategy. Rationals travel as `"p/q"` strings;
//! unknown keys are rejected. Parsing always ends in a fully validated
//! [`MetricReductiveSpace`].

use serde::{Deserialize, Serialize};

use crate::constructions::CliffordModule;
use crate::error::{Error, Result};
use crate::homspace::{build_reductive, ComplementStrategy, MetricReductiveSpace, MetricSpec};
use crate::liealg::{validate_algebra, LieAlgebra, StructureTable};
use crate::linalg::{QMatrix, Subspace};
use crate::rational::{format_scalar, parse_scalar, Scalar};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub isotropy: Vec<Vec<String>>,
    pub metric: MetricFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<ComplementFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum MetricFile {
    #[serde(rename = "explicit")]
    Explicit { matrix: Vec<Vec<String>> },
    #[serde(rename = "killing_multiple")]
    KillingMultiple { factor: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementFile {
    /// One of `killing_orthogonal`, `explicit`, `levi_split`,
    /// `nilradical_adapted`, `rem1_variant`.
    pub strategy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<Vec<String>>>,
}

/// Standalone Clifford module description (for the generic two-step
/// builder): `z_dim` generator matrices over `R^{a_dim}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliffordModuleFile {
    pub a_dim: usize,
    pub j: Vec<Vec<Vec<String>>>,
}

fn schema_err(path: String, message: impl Into<String>) -> Error {
    Error::SchemaError {
        path,
        message: message.into(),
    }
}

fn parse_at(path: &str, s: &str) -> Result<Scalar> {
    parse_scalar(s).map_err(|e| schema_err(path.to_string(), e.to_string()))
}

fn parse_vector(path: &str, v: &[String], dim: usize) -> Result<Vec<Scalar>> {
    if v.len() != dim {
        return Err(schema_err(
            path.to_string(),
            format!("vector length {} does not match dimension {dim}", v.len()),
        ));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_at(&format!("{path}[{i}]"), s))
        .collect()
}

/// A parsed file together with the validated space it denotes.
#[derive(Debug)]
pub struct ParsedSpace {
    pub file: AlgebraFile,
    pub algebra: LieAlgebra,
    pub space: MetricReductiveSpace,
    pub metric_spec: MetricSpec,
}

pub fn parse_algebra_file(bytes: &[u8]) -> Result<ParsedSpace> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| schema_err("$".into(), format!("not UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: AlgebraFile = serde_path_to_error::deserialize(de)
        .map_err(|e| schema_err(e.path().to_string(), e.inner().to_string()))?;
    let space = realize(&file)?;
    Ok(space)
}

fn realize(file: &AlgebraFile) -> Result<ParsedSpace> {
    let dim = file.dimension;
    if file.basis.len() != dim {
        return Err(schema_err(
            "basis".into(),
            format!("{} names for dimension {dim}", file.basis.len()),
        ));
    }
    let mut table = StructureTable::new();
    for (bi, entry) in file.brackets.iter().enumerate() {
        let path = format!("brackets[{bi}]");
        if entry.i == 0 || entry.j == 0 || entry.i >= entry.j || entry.j > dim {
            return Err(schema_err(
                path,
                format!(
                    "need 1 <= i < j <= {dim}, got i = {}, j = {}",
                    entry.i, entry.j
                ),
            ));
        }
        let mut terms = Vec::with_capacity(entry.terms.len());
        for (ti, term) in entry.terms.iter().enumerate() {
            if term.k == 0 || term.k > dim {
                return Err(schema_err(
                    format!("{path}.terms[{ti}].k"),
                    format!("index {} out of range", term.k),
                ));
            }
            let c = parse_at(&format!("{path}.terms[{ti}].c"), &term.c)?;
            terms.push((term.k - 1, c));
        }
        if table.insert((entry.i - 1, entry.j - 1), terms).is_some() {
            return Err(schema_err(path, "duplicate bracket pair"));
        }
    }
    let algebra = validate_algebra(dim, file.basis.clone(), table, None)?;
    let mut h_vectors = Vec::with_capacity(file.isotropy.len());
    for (i, v) in file.isotropy.iter().enumerate() {
        h_vectors.push(parse_vector(&format!("isotropy[{i}]"), v, dim)?);
    }
    let h = Subspace::from_vectors(dim, h_vectors);
    let metric_spec = match &file.metric {
        MetricFile::Explicit { matrix } => {
            if matrix.len() != dim {
                return Err(schema_err(
                    "metric.matrix".into(),
                    format!("{} rows for dimension {dim}", matrix.len()),
                ));
            }
            let mut rows = Vec::with_capacity(dim);
            for (i, row) in matrix.iter().enumerate() {
                rows.push(parse_vector(&format!("metric.matrix[{i}]"), row, dim)?);
            }
            MetricSpec::Explicit(QMatrix::from_rows(rows))
        }
        MetricFile::KillingMultiple { factor } => {
            MetricSpec::KillingMultiple(parse_at("metric.factor", factor)?)
        }
    };
    let strategy = match &file.complement {
        None => ComplementStrategy::KillingOrthogonal,
        Some(c) => {
            let levi = || -> Result<Subspace> {
                let rows = c.levi.as_ref().ok_or_else(|| {
                    schema_err("complement.levi".into(), "this strategy needs levi vectors")
                })?;
                let mut vs = Vec::with_capacity(rows.len());
                for (i, v) in rows.iter().enumerate() {
                    vs.push(parse_vector(&format!("complement.levi[{i}]"), v, dim)?);
                }
                Ok(Subspace::from_vectors(dim, vs))
            };
            match c.strategy.as_str() {
                "killing_orthogonal" => ComplementStrategy::KillingOrthogonal,
                "explicit" => {
                    let rows = c.vectors.as_ref().ok_or_else(|| {
                        schema_err(
                            "complement.vectors".into(),
                            "explicit strategy needs vectors",
                        )
                    })?;
                    let mut vs = Vec::with_capacity(rows.len());
                    for (i, v) in rows.iter().enumerate() {
                        vs.push(parse_vector(&format!("complement.vectors[{i}]"), v, dim)?);
                    }
                    ComplementStrategy::Explicit(vs)
                }
                "levi_split" => ComplementStrategy::LeviSplit { levi: levi()? },
                "nilradical_adapted" => ComplementStrategy::NilradicalAdapted { levi: levi()? },
                "rem1_variant" => ComplementStrategy::Rem1Variant { levi: levi()? },
                other => {
                    return Err(schema_err(
                        "complement.strategy".into(),
                        format!("unknown strategy {other:?}"),
                    ));
                }
            }
        }
    };
    let space = build_reductive(&algebra, &h, &metric_spec, &strategy)?;
    Ok(ParsedSpace {
        file: file.clone(),
        algebra,
        space,
        metric_spec,
    })
}

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| format_scalar(m.get(r, c))).collect())
        .collect()
}

/// Serializes a space: brackets from the structure table, explicit ambient
/// metric, isotropy and complement spelled out so the round trip rebuilds
/// the identical space.
pub fn space_to_file(name: &str, space: &MetricReductiveSpace) -> AlgebraFile {
    let g = space.algebra();
    algebra_to_file_parts(
        name,
        g,
        space.ambient_metric(),
        space.isotropy().basis_strings(),
        Some(ComplementFile {
            strategy: "explicit".into(),
            vectors: Some(space.complement().basis_strings()),
            levi: None,
        }),
    )
}

/// Serializes a bare metric algebra (trivial isotropy, whole-space
/// complement).
pub fn metric_algebra_to_file(name: &str, g: &LieAlgebra, metric: &QMatrix) -> AlgebraFile {
    algebra_to_file_parts(name, g, metric, Vec::new(), None)
}

fn algebra_to_file_parts(
    name: &str,
    g: &LieAlgebra,
    ambient: &QMatrix,
    isotropy: Vec<Vec<String>>,
    complement: Option<ComplementFile>,
) -> AlgebraFile {
    let mut brackets = Vec::new();
    for (&(i, j), terms) in g.table() {
        brackets.push(BracketEntry {
            i: i + 1,
            j: j + 1,
            terms: terms
                .iter()
                .map(|(k, c)| TermEntry {
                    k: k + 1,
                    c: format_scalar(c),
                })
                .collect(),
        });
    }
    AlgebraFile {
        name: name.into(),
        dimension: g.dim(),
        basis: g.basis_names().to_vec(),
        brackets,
        isotropy,
        metric: MetricFile::Explicit {
            matrix: matrix_strings(ambient),
        },
        complement,
    }
}

/// Canonical JSON bytes: sorted keys, no insignificant whitespace.
pub fn to_canonical_json(file: &AlgebraFile) -> String {
    let value = serde_json::to_value(file).expect("file serializes");
    serde_json::to_string(&value).expect("value prints")
}

pub fn parse_clifford_module_file(bytes: &[u8]) -> Result<CliffordModule> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| schema_err("$".into(), format!("not UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: CliffordModuleFile = serde_path_to_error::deserialize(de)
        .map_err(|e| schema_err(e.path().to_string(), e.inner().to_string()))?;
    let mut j = Vec::with_capacity(file.j.len());
    for (gi, gen) in file.j.iter().enumerate() {
        if gen.len() != file.a_dim {
            return Err(schema_err(
                format!("j[{gi}]"),
                format!("{} rows for a_dim {}", gen.len(), file.a_dim),
            ));
        }
        let mut rows = Vec::with_capacity(file.a_dim);
        for (ri, row) in gen.iter().enumerate() {
            rows.push(parse_vector(&format!("j[{gi}][{ri}]"), row, file.a_dim)?);
        }
        j.push(QMatrix::from_rows(rows));
    }
    CliffordModule::new(file.a_dim, j)
}
