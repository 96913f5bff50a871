//! High-level operations shared by the command line and the C bindings:
//! each takes a parsed space and returns a JSON report body.

use serde_json::{json, Value};

use crate::audit::{
    goodlevi_audit, irred1_audit, quotient_go_construction, skew_centralizer_audit,
    strucnilr_audit, strucrad1_audit, AuditPolicy,
};
use crate::constructions::{construct, Constructed, ConstructionParams, LedgerObataComplement};
use crate::error::{Error, Result};
use crate::files::{
    metric_algebra_to_file, parse_clifford_module_file, space_to_file, AlgebraFile, ParsedSpace,
};
use crate::gocheck::{go_check, nil_go_check, GOVerdict, SampleConfig, TwoStepMetricAlgebra};
use crate::homspace::{
    killing_operator_decomposition, submodule_decomposition, MetricReductiveSpace,
};
use crate::liealg::{nilradical, radical, series_analysis};
use crate::linalg::Subspace;
use crate::rational::parse_scalar;
use crate::report::{series_json, spectrum_json, submodules_json, subspace_json, verdict_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditSuite {
    Strucrad1,
    Strucnilr,
    Skew,
    Irred1,
    Goodlevi,
}

impl std::str::FromStr for AuditSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strucrad1" => Ok(AuditSuite::Strucrad1),
            "strucnilr" => Ok(AuditSuite::Strucnilr),
            "skew" => Ok(AuditSuite::Skew),
            "irred1" => Ok(AuditSuite::Irred1),
            "goodlevi" => Ok(AuditSuite::Goodlevi),
            other => Err(Error::InvalidArgument(format!(
                "unknown audit suite {other:?}"
            ))),
        }
    }
}

pub fn analyze_report(parsed: &ParsedSpace) -> Result<Value> {
    let g = &parsed.algebra;
    let series = series_analysis(g);
    let r = radical(g)?;
    let n = nilradical(g)?;
    let spectrum = killing_operator_decomposition(&parsed.space)?;
    let submodules = submodule_decomposition(&parsed.space)?;
    Ok(json!({
        "name": parsed.file.name,
        "dim_g": g.dim(),
        "dim_h": parsed.space.isotropy().dim(),
        "dim_m": parsed.space.tangent_dim(),
        "series": series_json(&series),
        "radical": subspace_json(&r),
        "nilradical": subspace_json(&n),
        "spectrum": spectrum_json(&spectrum),
        "submodules": submodules_json(&submodules),
    }))
}

pub fn go_check_with_report(
    parsed: &ParsedSpace,
    config: &SampleConfig,
) -> Result<(GOVerdict, Value)> {
    let verdict = go_check(&parsed.space, config)?;
    let body = json!({
        "name": parsed.file.name,
        "verdict": verdict_json(&verdict),
    });
    Ok((verdict, body))
}

pub fn nil_go_check_with_report(
    parsed: &ParsedSpace,
    config: &SampleConfig,
) -> Result<(GOVerdict, Value)> {
    if parsed.space.isotropy().dim() != 0 {
        return Err(Error::InvalidArgument(
            "nil-go-check expects a file with trivial isotropy".into(),
        ));
    }
    let metric = parsed.metric_spec.ambient_matrix(&parsed.algebra)?;
    let two_step = TwoStepMetricAlgebra::new(parsed.algebra.clone(), metric)?;
    let verdict = nil_go_check(&two_step, config)?;
    let body = json!({
        "name": parsed.file.name,
        "center_dim": two_step.center_part.dim(),
        "horizontal_dim": two_step.horizontal.dim(),
        "verdict": verdict_json(&verdict),
    });
    Ok((verdict, body))
}

pub fn audit_with_report(
    parsed: &ParsedSpace,
    suite: AuditSuite,
    config: &SampleConfig,
) -> Result<Value> {
    let verdict = go_check(&parsed.space, config)?;
    let policy = AuditPolicy::RequireGoVerdict;
    let reports: Vec<Value> = match suite {
        AuditSuite::Strucrad1 => {
            vec![strucrad1_audit(&parsed.space, &verdict, policy)?.to_json()]
        }
        AuditSuite::Strucnilr => {
            vec![strucnilr_audit(&parsed.algebra, &verdict, policy)?.to_json()]
        }
        AuditSuite::Skew => {
            vec![skew_centralizer_audit(&parsed.space, &verdict, policy, config)?.to_json()]
        }
        AuditSuite::Irred1 => {
            let decomposition = submodule_decomposition(&parsed.space)?;
            let mut out = Vec::new();
            for module in &decomposition.modules {
                out.push(irred1_audit(&parsed.space, &module.space, &verdict, policy)?.to_json());
            }
            out
        }
        AuditSuite::Goodlevi => {
            let g = &parsed.algebra;
            let centralizer = g.centralizer(parsed.space.isotropy());
            let hh = g.bracket_span(parsed.space.isotropy(), parsed.space.isotropy());
            let k = centralizer.sum(&hh);
            let levi_rows = parsed
                .file
                .complement
                .as_ref()
                .and_then(|c| c.levi.as_ref())
                .ok_or_else(|| {
                    Error::InvalidArgument(
                        "goodlevi suite needs complement.levi vectors in the file".into(),
                    )
                })?;
            let mut vectors = Vec::with_capacity(levi_rows.len());
            for row in levi_rows {
                let mut v = Vec::with_capacity(row.len());
                for s in row {
                    v.push(parse_scalar(s)?);
                }
                vectors.push(v);
            }
            let s = Subspace::from_vectors(g.dim(), vectors);
            vec![goodlevi_audit(g, &k, &s)?.to_json()]
        }
    };
    Ok(json!({
        "name": parsed.file.name,
        "verdict": verdict_json(&verdict),
        "audits": reports,
    }))
}

pub fn quotient_with_report(
    parsed: &ParsedSpace,
    config: &SampleConfig,
) -> Result<(Option<MetricReductiveSpace>, Value)> {
    let verdict = go_check(&parsed.space, config)?;
    let out = quotient_go_construction(
        &parsed.space,
        &verdict,
        config,
        AuditPolicy::RequireGoVerdict,
    )?;
    let body = json!({
        "name": parsed.file.name,
        "verdict": verdict_json(&verdict),
        "collapsed_ideal": subspace_json(&out.collapsed_ideal),
        "normalizer_algebra": subspace_json(&out.normalizer_algebra),
        "quotient_verdict": out.quotient_verdict.as_ref().map(verdict_json),
        "audit": out.report.to_json(),
    });
    Ok((out.space, body))
}

/// Construction request decoded from a JSON object, e.g.
/// `{"kind": "u2_sphere", "alpha": "2"}`. The `module` field, when
/// present, is an inline Clifford module description.
pub fn construct_from_value(request: &Value) -> Result<(String, AlgebraFile)> {
    let obj = request
        .as_object()
        .ok_or_else(|| Error::InvalidArgument("construction request must be an object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidArgument("construction request needs a kind".into()))?;
    let str_field = |name: &str| -> Option<&str> { obj.get(name).and_then(Value::as_str) };
    let module_field = || -> Result<Option<crate::constructions::CliffordModule>> {
        match obj.get("module") {
            None | Some(Value::Null) => Ok(None),
            Some(v) => {
                let bytes = serde_json::to_vec(v).expect("value prints");
                Ok(Some(parse_clifford_module_file(&bytes)?))
            }
        }
    };
    let params = match kind {
        "u2_sphere" => ConstructionParams::U2Sphere {
            alpha: parse_scalar(
                str_field("alpha")
                    .ok_or_else(|| Error::InvalidArgument("u2_sphere needs alpha".into()))?,
            )?,
        },
        "euclidean_go" => ConstructionParams::EuclideanGo {
            n: obj
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::InvalidArgument("euclidean_go needs n".into()))?
                as usize,
        },
        "htype" => ConstructionParams::Htype {
            module: module_field()?
                .ok_or_else(|| Error::InvalidArgument("htype needs a module".into()))?,
        },
        "heisenberg13" => ConstructionParams::Heisenberg13,
        "gonil2_extension" => ConstructionParams::Gonil2Extension {
            base: module_field()?,
            c_scale: parse_scalar(str_field("c_scale").unwrap_or("1"))?,
        },
        "ledger_obata" => {
            let variant = match str_field("variant").unwrap_or("killing_orthogonal") {
                "killing_orthogonal" => LedgerObataComplement::KillingOrthogonal,
                "ideal" => LedgerObataComplement::FactorIdeal,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown ledger_obata variant {other:?}"
                    )));
                }
            };
            ConstructionParams::LedgerObata {
                copies: obj
                    .get("copies")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::InvalidArgument("ledger_obata needs copies".into()))?
                    as usize,
                variant,
            }
        }
        "filiform4" => ConstructionParams::Filiform4,
        "complex_weight_solvable" => ConstructionParams::ComplexWeightSolvable,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown construction kind {other:?}"
            )));
        }
    };
    let name = construction_name(kind, &params);
    let constructed = construct(&params)?;
    let file = match &constructed {
        Constructed::Space(space) => space_to_file(&name, space),
        Constructed::NilmanifoldAlgebra { algebra, metric } => {
            metric_algebra_to_file(&name, algebra, metric)
        }
    };
    Ok((name, file))
}

pub fn construction_name(kind: &str, params: &ConstructionParams) -> String {
    match params {
        ConstructionParams::U2Sphere { alpha } => {
            format!(
                "u2_sphere_a{}",
                crate::rational::format_scalar(alpha).replace('/', "_")
            )
        }
        ConstructionParams::EuclideanGo { n } => format!("euclidean_go_n{n}"),
        ConstructionParams::LedgerObata { copies, variant } => format!(
            "ledger_obata_{copies}_{}",
            match variant {
                LedgerObataComplement::KillingOrthogonal => "killing",
                LedgerObataComplement::FactorIdeal => "ideal",
            }
        ),
        ConstructionParams::Gonil2Extension { c_scale, .. } => format!(
            "gonil2_extension_c{}",
            crate::rational::format_scalar(c_scale).replace('/', "_")
        ),
        _ => kind.to_string(),
    }
}
