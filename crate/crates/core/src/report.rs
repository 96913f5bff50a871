//! Report envelopes and canonical JSON rendering.
//!
//! Reports are deterministic: identical inputs and seed produce identical
//! bytes except for the `timing` field. Canonical form is compact JSON
//! with sorted keys; rationals are rendered as `"p/q"` strings.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::gocheck::{GOVerdict, WitnessKind};
use crate::homspace::{
    Irreducibility, KillingOperatorSpectrum, SpectrumMode, Submodule, SubmoduleDecomposition,
};
use crate::liealg::SeriesReport;
use crate::linalg::Subspace;
use crate::rational::{format_scalar, Scalar};

pub fn input_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis_strings(),
    })
}

pub fn verdict_json(v: &GOVerdict) -> Value {
    match v {
        GOVerdict::CertifiedNaturallyReductive => json!({
            "kind": "certified_naturally_reductive",
        }),
        GOVerdict::SampledGO { samples, seed } => json!({
            "kind": "sampled_go",
            "samples": samples,
            "seed": seed,
            "note": "sampled evidence, not a proof",
        }),
        GOVerdict::NotGO { witness } => {
            let kind_value = match &witness.kind {
                WitnessKind::Direction(x) => json!({ "direction": vector_json(x) }),
                WitnessKind::CentralPair { x, y } => json!({
                    "central": vector_json(x),
                    "horizontal": vector_json(y),
                }),
            };
            json!({
                "kind": "not_go",
                "witness": kind_value,
                "sample_index": witness.sample_index,
                "rank_coefficient": witness.certificate.rank_coefficient,
                "rank_augmented": witness.certificate.rank_augmented,
            })
        }
    }
}

pub fn series_json(series: &SeriesReport) -> Value {
    json!({
        "derived_series_dims": series.derived_series.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "lower_central_series_dims": series.lower_central_series.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "is_solvable": series.is_solvable,
        "is_nilpotent": series.is_nilpotent,
        "nilpotency_class": series.nilpotency_class,
    })
}

pub fn spectrum_json(spectrum: &KillingOperatorSpectrum) -> Value {
    match &spectrum.mode {
        SpectrumMode::Exact {
            eigenvalues,
            eigenspaces,
        } => json!({
            "mode": "exact",
            "eigenvalues": eigenvalues.iter().map(format_scalar).collect::<Vec<_>>(),
            "eigenspaces": eigenspaces.iter().map(subspace_json).collect::<Vec<_>>(),
            "zero_eigenspace_ideal": spectrum.zero_eigenspace_ideal,
        }),
        SpectrumMode::Numeric {
            eigenvalues,
            warning,
        } => json!({
            "mode": "numeric",
            "eigenvalues": eigenvalues,
            "warning": warning,
            "zero_eigenspace_ideal": spectrum.zero_eigenspace_ideal,
        }),
    }
}

pub fn submodule_json(module: &Submodule) -> Value {
    json!({
        "space": subspace_json(&module.space),
        "eigenvalue": module.eigenvalue.as_ref().map(format_scalar),
        "irreducibility": match module.irreducibility {
            Irreducibility::Certified => "irreducible",
            Irreducibility::Unverified => "invariant, irreducibility unverified",
        },
    })
}

pub fn submodules_json(decomposition: &SubmoduleDecomposition) -> Value {
    json!({
        "modules": decomposition.modules.iter().map(submodule_json).collect::<Vec<_>>(),
        "warning": decomposition.warning,
    })
}

/// Wraps a report body in the standard envelope.
pub fn envelope(
    command: &str,
    digest: Option<&str>,
    seed: Option<u64>,
    body: Value,
    elapsed_ms: u128,
) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input_digest": digest,
        "seed": seed,
        "report": body,
        "timing": { "elapsed_ms": elapsed_ms },
    })
}

/// Compact JSON with sorted keys (the default serde_json map is ordered).
pub fn canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("value prints")
}

/// Human-readable rendering of a report value.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, None, &mut out);
    out
}

fn render_into(v: &Value, indent: usize, key: Option<&str>, out: &mut String) {
    let pad = "  ".repeat(indent);
    let label = key.map(|k| format!("{k}: ")).unwrap_or_default();
    match v {
        Value::Object(map) => {
            if let Some(k) = key {
                out.push_str(&format!("{pad}{k}:\n"));
            }
            for (k, val) in map {
                render_into(val, indent + usize::from(key.is_some()), Some(k), out);
            }
        }
        Value::Array(items) => {
            if items
                .iter()
                .all(|i| i.is_string() || i.is_number() || i.is_boolean())
            {
                let inline: Vec<String> = items.iter().map(render_scalar).collect();
                out.push_str(&format!("{pad}{label}[{}]\n", inline.join(", ")));
            } else {
                out.push_str(&format!("{pad}{label}\n"));
                for item in items {
                    render_into(item, indent + 1, Some("-"), out);
                }
            }
        }
        other => {
            out.push_str(&format!("{pad}{label}{}\n", render_scalar(other)));
        }
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}
