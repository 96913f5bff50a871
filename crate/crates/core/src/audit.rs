//! Executable structure audits: each takes a space carrying a geodesic
//! orbit verdict and checks, exactly, the algebraic conclusions that hold
//! on geodesic orbit spaces. Results are machine-readable reports; a failed
//! clause never aborts the remaining ones, and audits never mutate their
//! inputs.
//!
//! Audits are conditional theorems: by default their clauses are skipped
//! when the verdict is a certified negative. `AuditPolicy::Force` evaluates
//! the identities regardless, which is how negative controls demonstrate
//! that a clause can fail.
#![allow(clippy::needless_range_loop)] // index loops mirror the matrix math

use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gocheck::{go_check, totally_geodesic_check, GOVerdict, SampleConfig};
use crate::homspace::{
    certify_module_irreducible, normalizer_structures, submodule_decomposition,
    MetricReductiveSpace,
};
use crate::liealg::{
    killing_gram, nilradical, quotient_algebra, radical, series_of_subspace, subalgebra_structure,
    verify_levi, LieAlgebra,
};
use crate::linalg::{symmetric_definiteness, Definiteness, QMatrix, Subspace};
use crate::poly::degree;
use crate::rational::{format_scalar, int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Pass,
    /// Only necessary conditions of the claim were decidable.
    PassNecessaryOnly,
    Fail,
    Skipped,
}

impl ClauseStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClauseStatus::Pass => "pass",
            ClauseStatus::PassNecessaryOnly => "pass_necessary_conditions",
            ClauseStatus::Fail => "fail",
            ClauseStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditClause {
    pub claim_id: String,
    /// Statement of the identity the clause checks.
    pub anchor: String,
    pub status: ClauseStatus,
    pub witness: Option<serde_json::Value>,
}

impl AuditClause {
    pub fn new(claim_id: &str, anchor: &str) -> Self {
        Self {
            claim_id: claim_id.into(),
            anchor: anchor.into(),
            status: ClauseStatus::Pass,
            witness: None,
        }
    }

    pub fn skipped(claim_id: &str, reason: &str) -> Self {
        Self {
            claim_id: claim_id.into(),
            anchor: String::new(),
            status: ClauseStatus::Skipped,
            witness: Some(json!({ "reason": reason })),
        }
    }

    pub fn fail(&mut self, witness: serde_json::Value) {
        self.status = ClauseStatus::Fail;
        self.witness = Some(witness);
    }

    pub fn set(&mut self, ok: bool, witness_on_fail: serde_json::Value) {
        if !ok {
            self.fail(witness_on_fail);
        }
    }

    pub fn necessary_only(&mut self) {
        if self.status == ClauseStatus::Pass {
            self.status = ClauseStatus::PassNecessaryOnly;
        }
    }

    pub fn note(&mut self, value: serde_json::Value) {
        match &mut self.witness {
            Some(serde_json::Value::Object(map)) => {
                if let serde_json::Value::Object(new) = value {
                    map.extend(new);
                }
            }
            w @ None => *w = Some(value),
            _ => {}
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub audit: String,
    pub target: String,
    /// The geodesic orbit verdict the conclusions are conditional on.
    pub dependency: String,
    pub clauses: Vec<AuditClause>,
}

impl AuditReport {
    pub fn new(audit: &str, target: String, verdict: &GOVerdict) -> Self {
        Self {
            audit: audit.into(),
            target,
            dependency: format!("go_verdict: {}", verdict.label()),
            clauses: Vec::new(),
        }
    }

    pub fn push(&mut self, clause: AuditClause) {
        self.clauses.push(clause);
    }

    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| {
            matches!(
                c.status,
                ClauseStatus::Pass | ClauseStatus::PassNecessaryOnly
            )
        })
    }

    pub fn any_fail(&self) -> bool {
        self.clauses.iter().any(|c| c.status == ClauseStatus::Fail)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "audit": self.audit,
            "target": self.target,
            "dependency": self.dependency,
            "clauses": self.clauses.iter().map(|c| {
                json!({
                    "claim_id": c.claim_id,
                    "anchor": c.anchor,
                    "status": c.status.as_str(),
                    "witness": c.witness,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Whether conditional audits run against a negative verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditPolicy {
    RequireGoVerdict,
    Force,
}

fn gate(
    report: &mut AuditReport,
    verdict: &GOVerdict,
    policy: AuditPolicy,
    claim_ids: &[&str],
) -> bool {
    if policy == AuditPolicy::RequireGoVerdict && !verdict.is_go_evidence() {
        for id in claim_ids {
            report.push(AuditClause::skipped(id, "verdict is a certified negative"));
        }
        return false;
    }
    true
}

fn describe(space: &MetricReductiveSpace) -> String {
    format!(
        "dim g = {}, dim h = {}, dim m = {}",
        space.algebra().dim(),
        space.isotropy().dim(),
        space.tangent_dim()
    )
}

/// Invariant complement within `ambient` taken orthogonally with respect to
/// the extended form (`-B` on `h`, the inner product on `m`).
fn ext_complement(space: &MetricReductiveSpace, ambient: &Subspace, sub: &Subspace) -> Subspace {
    ambient.orthogonal_complement_in(&space.extended_form(), &sub.intersect(ambient))
}

fn is_invariant(space: &MetricReductiveSpace, s: &Subspace) -> bool {
    s.contains(&space.algebra().bracket_span(space.isotropy(), s))
}

/// Radical-structure audit: sign of the Killing form on invariant
/// complements inside the radical, and the splitting of the nilradical as
/// `[g, r]` plus a central summand.
pub fn strucrad1_audit(
    space: &MetricReductiveSpace,
    verdict: &GOVerdict,
    policy: AuditPolicy,
) -> Result<AuditReport> {
    let mut report = AuditReport::new("strucrad1", describe(space), verdict);
    let ids = [
        "complement_to_derived_radical",
        "complement_to_nilradical",
        "nilradical_splitting",
    ];
    if !gate(&mut report, verdict, policy, &ids) {
        return Ok(report);
    }
    let g = space.algebra();
    let r = radical(g)?;
    let n = nilradical(g)?;
    let gr = g.bracket_span(&Subspace::full(g.dim()), &r);
    let center = g.center();

    // (1) B nonpositive on an invariant complement p to [g, r] in r, with
    // null vectors exactly the central ones.
    let mut c1 = AuditClause::new(
        "complement_to_derived_radical",
        "B <= 0 on any invariant complement p to [g,r] in r; B(X,X) = 0 on p iff X is central",
    );
    let p = ext_complement(space, &r, &gr);
    if !is_invariant(space, &p) {
        c1.fail(json!({ "reason": "complement not ad(h)-invariant" }));
    } else {
        let gram = killing_gram(g, &p);
        let sign = symmetric_definiteness(&gram);
        let nonpositive = matches!(
            sign,
            Definiteness::NegativeDefinite
                | Definiteness::NegativeSemidefinite
                | Definiteness::Zero
        );
        let null_space = map_rows(&p, &gram.kernel());
        let kernel_matches = null_space == p.intersect(&center);
        c1.set(
            nonpositive && kernel_matches,
            json!({
                "definiteness": format!("{sign:?}"),
                "null_dim": null_space.dim(),
                "central_dim": p.intersect(&center).dim(),
            }),
        );
    }
    report.push(c1);

    // (2) B negative definite on an invariant complement q to n in r.
    let mut c2 = AuditClause::new(
        "complement_to_nilradical",
        "B < 0 on any invariant complement q to n(g) in r",
    );
    let q = ext_complement(space, &r, &n);
    if !is_invariant(space, &q) {
        c2.fail(json!({ "reason": "complement not ad(h)-invariant" }));
    } else {
        let sign = symmetric_definiteness(&killing_gram(g, &q));
        let ok = q.is_zero() || sign == Definiteness::NegativeDefinite;
        c2.set(
            ok,
            json!({ "definiteness": format!("{sign:?}"), "dim_q": q.dim() }),
        );
    }
    report.push(c2);

    // (3) n(g) = ker B, and n = [g, r] + l orthogonally with l central.
    let mut c3 = AuditClause::new(
        "nilradical_splitting",
        "n(g) = {X : B(X, g) = 0} and n = [g,r] (+) l orthogonally, l central",
    );
    let ker_b = Subspace::from_rref(g.killing_form().kernel());
    let l = ext_complement(space, &n, &gr);
    let orthogonal_split = gr.sum(&l) == n && gr.intersect(&l).is_zero();
    let l_central = g.bracket_span(&Subspace::full(g.dim()), &l).is_zero();
    c3.set(
        n == ker_b && orthogonal_split && l_central,
        json!({
            "ker_b_dim": ker_b.dim(),
            "nilradical_dim": n.dim(),
            "l_dim": l.dim(),
            "l_central": l_central,
        }),
    );
    report.push(c3);
    Ok(report)
}

fn map_rows(sub: &Subspace, coeff_rows: &QMatrix) -> Subspace {
    let vectors = coeff_rows
        .rows_vec()
        .into_iter()
        .map(|coords| crate::liealg::combine(sub.basis(), &coords))
        .collect();
    Subspace::from_vectors(sub.ambient_dim(), vectors)
}

/// Nilradical-class audit: on geodesic orbit spaces the nilradical (and
/// `[g, r]`) is commutative or two-step nilpotent.
pub fn strucnilr_audit(
    g: &LieAlgebra,
    verdict: &GOVerdict,
    policy: AuditPolicy,
) -> Result<AuditReport> {
    let mut report = AuditReport::new(
        "strucnilr",
        format!("algebra of dimension {}", g.dim()),
        verdict,
    );
    let ids = ["nilradical_class", "derived_radical_class"];
    let mut gated = AuditReport::new("strucnilr", String::new(), verdict);
    if !gate(&mut gated, verdict, policy, &ids) {
        report.clauses = gated.clauses;
        return Ok(report);
    }
    let n = nilradical(g)?;
    let r = radical(g)?;
    let mut c1 = AuditClause::new(
        "nilradical_class",
        "n(g) is commutative or two-step nilpotent",
    );
    let class = series_of_subspace(g, &n).nilpotency_class;
    c1.set(
        matches!(class, Some(c) if c <= 2),
        json!({ "class": class }),
    );
    c1.note(json!({ "class": class }));
    report.push(c1);
    let gr = g.bracket_span(&Subspace::full(g.dim()), &r);
    let mut c2 = AuditClause::new(
        "derived_radical_class",
        "[g, r] is commutative or two-step nilpotent",
    );
    let class = series_of_subspace(g, &gr).nilpotency_class;
    c2.set(
        matches!(class, Some(c) if c <= 2),
        json!({ "class": class }),
    );
    c2.note(json!({ "class": class }));
    report.push(c2);
    Ok(report)
}

/// Centralizer skew-symmetry audit: the normalizer algebra
/// `k = C_g(h) + [h, h]` acts by skew operators, the Killing form is
/// nonpositive on it with central kernel, and `C_g(h)` meets the nilradical
/// exactly in the center.
pub fn skew_centralizer_audit(
    space: &MetricReductiveSpace,
    verdict: &GOVerdict,
    policy: AuditPolicy,
    config: &SampleConfig,
) -> Result<AuditReport> {
    let mut report = AuditReport::new("skew", describe(space), verdict);
    let ids = [
        "centralizer_acts_skew",
        "centralizer_directions_geodesic",
        "killing_on_normalizer",
        "centralizer_meets_nilradical_in_center",
    ];
    if !gate(&mut report, verdict, policy, &ids) {
        return Ok(report);
    }
    let g = space.algebra();
    let c = g.centralizer(space.isotropy());
    let hh = g.bracket_span(space.isotropy(), space.isotropy());
    let k = c.sum(&hh);
    let center = g.center();
    let n = nilradical(g)?;

    let mut c1 = AuditClause::new(
        "centralizer_acts_skew",
        "ad(Y)|m is skew-symmetric for every Y in C_g(h) + [h,h]",
    );
    let mut projected = false;
    for y in k.basis_vectors() {
        if !space.complement().contains(&g.bracket_span(
            &Subspace::from_vectors(g.dim(), vec![y.clone()]),
            space.complement(),
        )) {
            projected = true;
        }
        let a = space.action_on_m(&y);
        let skew = space
            .inner_product()
            .mul(&a)
            .add(&a.transpose().mul(space.inner_product()));
        if !skew.is_zero() {
            c1.fail(json!({ "y": y.iter().map(format_scalar).collect::<Vec<_>>() }));
            break;
        }
    }
    if projected {
        c1.note(json!({ "note": "action projected to m; bracket leaves m for some generators" }));
    }
    report.push(c1);

    let mut c2 = AuditClause::new(
        "centralizer_directions_geodesic",
        "([X, Z]_m, X) = 0 for X in C_g(h) ∩ m and every basis Z of g",
    );
    let c_cap_m = c.intersect(space.complement());
    'outer: for coords in crate::gocheck::sample_stream(c_cap_m.dim(), config) {
        let x = crate::liealg::combine(c_cap_m.basis(), &coords);
        for zi in 0..g.dim() {
            let w = space.m_part(&g.bracket(&x, &g.basis_vector(zi)));
            if !space.ip_eval(&w, &x).is_zero() {
                c2.fail(json!({
                    "x": x.iter().map(format_scalar).collect::<Vec<_>>(),
                    "z_index": zi,
                }));
                break 'outer;
            }
        }
    }
    report.push(c2);

    let mut c3 = AuditClause::new(
        "killing_on_normalizer",
        "B <= 0 on k = C_g(h) + [h,h]; B(Y,Y) = 0 on k iff Y is central in g",
    );
    let sign = symmetric_definiteness(&killing_gram(g, &k));
    let nonpositive = matches!(
        sign,
        Definiteness::NegativeDefinite | Definiteness::NegativeSemidefinite | Definiteness::Zero
    );
    let kernel = map_rows(&k, &killing_gram(g, &k).kernel());
    c3.set(
        nonpositive && kernel == center,
        json!({
            "definiteness": format!("{sign:?}"),
            "kernel_dim": kernel.dim(),
            "center_dim": center.dim(),
        }),
    );
    report.push(c3);

    let mut c4 = AuditClause::new(
        "centralizer_meets_nilradical_in_center",
        "C_g(h) ∩ n(g) equals the center of g",
    );
    c4.set(
        c.intersect(&n) == center,
        json!({
            "intersection_dim": c.intersect(&n).dim(),
            "center_dim": center.dim(),
        }),
    );
    report.push(c4);
    Ok(report)
}

/// Output of the quotient construction: the derived space (when
/// nondegenerate), its verdict, and the audit of the structural claims.
pub struct QuotientConstruction {
    pub report: AuditReport,
    pub space: Option<MetricReductiveSpace>,
    pub quotient_verdict: Option<GOVerdict>,
    pub collapsed_ideal: Subspace,
    pub normalizer_algebra: Subspace,
}

/// Builds the quotient space on `k = C_g(h) + [h,h]`: factor out the
/// largest ideal of `g` inside `k`, take `m~ = [h, m]` with the restricted
/// inner product, check it is geodesic orbit, and audit the structure of
/// its radical.
pub fn quotient_go_construction(
    space: &MetricReductiveSpace,
    verdict: &GOVerdict,
    config: &SampleConfig,
    policy: AuditPolicy,
) -> Result<QuotientConstruction> {
    let mut report = AuditReport::new("quotient", describe(space), verdict);
    let g = space.algebra();
    let c = g.centralizer(space.isotropy());
    let hh = g.bracket_span(space.isotropy(), space.isotropy());
    let k = c.sum(&hh);
    let l = g.largest_ideal_in(&k);
    let ids = [
        "submersion_orthogonal",
        "quotient_is_go",
        "no_one_dimensional_modules",
        "nilradical_equals_derived_radical",
        "radical_splits_along_k",
    ];
    if !gate(&mut report, verdict, policy, &ids) {
        return Ok(QuotientConstruction {
            report,
            space: None,
            quotient_verdict: None,
            collapsed_ideal: l,
            normalizer_algebra: k,
        });
    }
    if l.dim() == g.dim() {
        report.push(AuditClause::skipped(
            "degenerate",
            "largest ideal inside k is all of g; quotient is trivial",
        ));
        return Ok(QuotientConstruction {
            report,
            space: None,
            quotient_verdict: None,
            collapsed_ideal: l,
            normalizer_algebra: k,
        });
    }

    // Submersion compatibility on the original space: the projection of m
    // onto [h, m] is orthogonal with kernel C_g(h) ∩ m.
    let mut c0 = AuditClause::new(
        "submersion_orthogonal",
        "m = (C_g(h) ∩ m) (+) [h, m], orthogonal in the inner product",
    );
    let ns = normalizer_structures(space)?;
    let split_ok = ns.checks.iter().take(3).all(|(_, ok)| *ok);
    c0.set(split_ok, json!({ "checks": ns.checks }));
    report.push(c0);

    let quotient = quotient_algebra(g, &l)?;
    let gq = &quotient.algebra;
    let image = |s: &Subspace| -> Subspace {
        Subspace::from_vectors(
            gq.dim(),
            s.basis_vectors()
                .iter()
                .map(|v| quotient.projection.mul_vec(v))
                .collect(),
        )
    };
    let k_image = image(&k);
    let m_tilde = g.bracket_span(space.isotropy(), space.complement());
    let m_image = image(&m_tilde);
    let mut construction_ok =
        m_image.dim() == m_tilde.dim() && k_image.dim() + m_image.dim() == gq.dim();
    let mut quotient_space = None;
    let mut quotient_verdict = None;
    if construction_ok {
        // Pull back the inner product through the (injective) projection.
        let dmi = m_image.dim();
        let proj_cols = quotient.projection.mul(&m_tilde.basis().transpose());
        let mut preimages = Vec::with_capacity(dmi);
        for w in m_image.basis_vectors() {
            match proj_cols.solve(&w) {
                Some(coords) => preimages.push(crate::liealg::combine(m_tilde.basis(), &coords)),
                None => {
                    construction_ok = false;
                    break;
                }
            }
        }
        if construction_ok {
            let ip_gram =
                QMatrix::from_fn(dmi, dmi, |i, j| space.ip_eval(&preimages[i], &preimages[j]));
            let ambient = assemble_ambient(gq, &k_image, &m_image, &ip_gram);
            match MetricReductiveSpace::new(gq.clone(), k_image.clone(), m_image.clone(), ambient) {
                Ok(s) => {
                    let v = go_check(&s, config)?;
                    quotient_verdict = Some(v);
                    quotient_space = Some(s);
                }
                Err(e) => {
                    report.push(AuditClause::skipped(
                        "construction",
                        &format!("quotient space invalid: {e}"),
                    ));
                }
            }
        }
    }

    let mut c1 = AuditClause::new("quotient_is_go", "the quotient space is geodesic orbit");
    match &quotient_verdict {
        Some(v) => c1.set(v.is_go_evidence(), json!({ "verdict": v.label() })),
        None => c1.fail(json!({ "reason": "construction failed" })),
    }
    if let Some(v) = &quotient_verdict {
        c1.note(json!({ "verdict": v.label() }));
    }
    report.push(c1);

    let mut c2 = AuditClause::new(
        "no_one_dimensional_modules",
        "every invariant submodule of the quotient tangent space has dimension >= 2",
    );
    if let Some(qs) = &quotient_space {
        let centralizer_meets = gq.centralizer(&k_image).intersect(&m_image);
        let decomposition = submodule_decomposition(qs)?;
        let dims: Vec<usize> = decomposition
            .modules
            .iter()
            .map(|m| m.space.dim())
            .collect();
        c2.set(
            centralizer_meets.is_zero() && dims.iter().all(|&d| d >= 2),
            json!({ "centralizer_in_m_dim": centralizer_meets.dim(), "module_dims": dims }),
        );
        c2.note(json!({ "module_dims": dims }));
    } else {
        c2.fail(json!({ "reason": "construction failed" }));
    }
    report.push(c2);

    let r_q = radical(gq)?;
    let n_q = nilradical(gq)?;
    let gr_q = gq.bracket_span(&Subspace::full(gq.dim()), &r_q);
    let mut c3 = AuditClause::new(
        "nilradical_equals_derived_radical",
        "n = [g, r] in the quotient",
    );
    c3.set(
        n_q == gr_q,
        json!({ "nilradical_dim": n_q.dim(), "derived_radical_dim": gr_q.dim() }),
    );
    c3.note(json!({ "nilradical_dim": n_q.dim() }));
    report.push(c3);

    let mut c4 = AuditClause::new(
        "radical_splits_along_k",
        "r = n (+) (r ∩ k) in the quotient",
    );
    let r_cap_k = r_q.intersect(&k_image);
    c4.set(
        n_q.sum(&r_cap_k) == r_q && n_q.intersect(&r_cap_k).is_zero(),
        json!({ "radical_dim": r_q.dim(), "r_cap_k_dim": r_cap_k.dim() }),
    );
    report.push(c4);

    Ok(QuotientConstruction {
        report,
        space: quotient_space,
        quotient_verdict,
        collapsed_ideal: l,
        normalizer_algebra: k,
    })
}

/// Block-diagonal ambient form: `-B` on the isotropy block, the given Gram
/// on the complement block, blocks orthogonal.
pub fn assemble_ambient(g: &LieAlgebra, h: &Subspace, m: &Subspace, ip_gram: &QMatrix) -> QMatrix {
    let n = g.dim();
    let dh = h.dim();
    let dm = m.dim();
    let mut cols = h.basis_vectors();
    cols.extend(m.basis_vectors());
    let t = QMatrix::from_rows(cols).transpose();
    let t_inv = t.inverse().expect("h and m span");
    let minus_bh = killing_gram(g, h).scale(&int(-1));
    let mut block = QMatrix::zeros(n, n);
    for r in 0..dh {
        for c in 0..dh {
            block.set(r, c, minus_bh.get(r, c).clone());
        }
    }
    for r in 0..dm {
        for c in 0..dm {
            block.set(dh + r, dh + c, ip_gram.get(r, c).clone());
        }
    }
    t_inv.transpose().mul(&block).mul(&t_inv)
}

/// Totally geodesic audit for a subalgebra normalized by the isotropy: the
/// orbit of `k_sub` is totally geodesic in the adapted decomposition.
pub fn normalized_orbit_audit(
    space: &MetricReductiveSpace,
    k_sub: &Subspace,
    verdict: &GOVerdict,
    policy: AuditPolicy,
) -> Result<AuditReport> {
    let g = space.algebra();
    if !g.is_subalgebra(k_sub) {
        return Err(Error::NotASubalgebra(
            "orbit audit needs a subalgebra".into(),
        ));
    }
    if !k_sub.contains(&g.bracket_span(space.isotropy(), k_sub)) {
        return Err(Error::NotNormalized("[h, k] leaves k".into()));
    }
    let mut report = AuditReport::new("normalized_orbit", describe(space), verdict);
    let ids = [
        "adapted_decomposition",
        "bracket_closure",
        "transverse_skew",
        "induced_go_condition",
    ];
    if !gate(&mut report, verdict, policy, &ids) {
        return Ok(report);
    }
    // Adapted complement: p complements k ∩ h in k, q complements h + k
    // in g, both orthogonally for the extended form.
    let k_cap_h = k_sub.intersect(space.isotropy());
    let p = ext_complement(space, k_sub, &k_cap_h);
    let q = ext_complement(
        space,
        &Subspace::full(g.dim()),
        &space.isotropy().sum(k_sub),
    );
    let m_prime = p.sum(&q);

    let mut c0 = AuditClause::new(
        "adapted_decomposition",
        "g = h (+) (p (+) q) with p = k minus its h-part, q transverse to h + k",
    );
    // Metric on the new complement: pull back through projection along h.
    let proj = space.complement().basis().transpose().mul(&{
        // to_m as a matrix
        let n = g.dim();
        QMatrix::from_fn(space.tangent_dim(), n, |r, c| {
            space.m_coords(&g.basis_vector(c))[r].clone()
        })
    });
    let ambient_prime = proj.transpose().mul(space.ambient_metric()).mul(&proj);
    let adapted = MetricReductiveSpace::new(
        g.clone(),
        space.isotropy().clone(),
        m_prime.clone(),
        ambient_prime,
    );
    let adapted = match adapted {
        Ok(s) => {
            c0.note(json!({ "dim_p": p.dim(), "dim_q": q.dim() }));
            s
        }
        Err(e) => {
            c0.fail(json!({ "reason": e.to_string() }));
            report.push(c0);
            for id in &ids[1..] {
                report.push(AuditClause::skipped(id, "adapted decomposition failed"));
            }
            return Ok(report);
        }
    };
    report.push(c0);
    let tg = totally_geodesic_check(&adapted, &p)?;
    let mut c1 = AuditClause::new("bracket_closure", "[p, p] contained in h + p");
    c1.set(tg.bracket_closes, json!({}));
    report.push(c1);
    let mut c2 = AuditClause::new(
        "transverse_skew",
        "ad(Z) restricted to p is skew for Z orthogonal to p",
    );
    c2.set(tg.transverse_skew, json!({}));
    report.push(c2);
    // Informational: whether the sufficient condition for the orbit to be
    // geodesic orbit under its own group holds. The orbit is geodesic
    // orbit regardless, by totally geodesic inheritance, so this clause
    // reports rather than asserts.
    let mut c3 = AuditClause::new(
        "induced_go_condition",
        "reports whether h' + C_h(p) = h (sufficient for the geodesic orbit property under the orbit's own group)",
    );
    let flat = g.bracket_span(&p, &p).is_zero();
    c3.note(json!({
        "condition_holds": tg.induced_go_condition,
        "flat_orbit": flat,
    }));
    report.push(c3);
    Ok(report)
}

/// Ideal structure of the centralizer and bracket part of an invariant
/// submodule with `[p, p]` inside `p + h`, and their Killing orthogonality
/// under any of four sufficient conditions.
pub fn irred1_audit(
    space: &MetricReductiveSpace,
    p: &Subspace,
    verdict: &GOVerdict,
    policy: AuditPolicy,
) -> Result<AuditReport> {
    let g = space.algebra();
    if !space.complement().contains(p) || !p.contains(&g.bracket_span(space.isotropy(), p)) {
        return Err(Error::InvalidArgument(
            "p must be an invariant submodule of m".into(),
        ));
    }
    let mut report = AuditReport::new("irred1", describe(space), verdict);
    let ids = [
        "centralizer_ideal",
        "bracket_part_ideal",
        "orthogonality",
        "splitting",
    ];
    if !gate(&mut report, verdict, policy, &ids) {
        return Ok(report);
    }
    let h = space.isotropy();
    // The ideal property of [p,p]_h is claimed only when the bracket of p
    // closes into p + h; the remaining identities are checked either way.
    let bracket_closes = space.isotropy().sum(p).contains(&g.bracket_span(p, p));
    let c_h_p = g.centralizer(p).intersect(h);
    let pp_h = Subspace::from_vectors(
        g.dim(),
        g.bracket_span(p, p)
            .basis_vectors()
            .iter()
            .map(|v| space.h_part(v))
            .collect(),
    );

    let mut c1 = AuditClause::new("centralizer_ideal", "C_h(p) is an ideal in h");
    c1.set(
        c_h_p.contains(&g.bracket_span(h, &c_h_p)),
        json!({ "dim": c_h_p.dim() }),
    );
    report.push(c1);

    let mut c2 = AuditClause::new("bracket_part_ideal", "[p,p]_h is an ideal in h");
    if bracket_closes {
        c2.set(
            pp_h.contains(&g.bracket_span(h, &pp_h)),
            json!({ "dim": pp_h.dim() }),
        );
    } else {
        c2.status = ClauseStatus::Skipped;
        c2.note(json!({ "reason": "[p, p] does not lie in p + h" }));
    }
    report.push(c2);

    // The four sufficient conditions.
    let cond1 = p.basis_vectors().iter().all(|x| {
        h.basis_vectors()
            .iter()
            .all(|z| g.killing_eval(x, z).is_zero())
    });
    let cond2 = if c_h_p.is_zero() {
        true
    } else {
        match subalgebra_structure(g, &c_h_p) {
            Ok(pres) => !pres.algebra.killing_form().determinant().is_zero(),
            Err(_) => false,
        }
    };
    let cond3 = certify_module_irreducible(space, p);
    let cond4 = g.centralizer(h).intersect(p).is_zero();
    let any_condition = cond1 || cond2 || cond3 == Some(true) || cond4;

    let mut c3 = AuditClause::new(
        "orthogonality",
        "B(C_h(p), [p,p]_h) = 0 under conditions 1-4",
    );
    c3.note(json!({
        "bracket_closes_into_p_plus_h": bracket_closes,
        "cond1_b_orthogonal_to_h": cond1,
        "cond2_centralizer_semisimple": cond2,
        "cond3_irreducible": cond3,
        "cond4_no_line_submodule": cond4,
    }));
    if !any_condition {
        c3.status = ClauseStatus::Skipped;
        c3.note(json!({ "reason": "no sufficient condition established" }));
    } else {
        let orth = c_h_p.basis_vectors().iter().all(|u| {
            pp_h.basis_vectors()
                .iter()
                .all(|v| g.killing_eval(u, v).is_zero())
        });
        c3.set(
            orth,
            json!({ "dim_centralizer": c_h_p.dim(), "dim_bracket_part": pp_h.dim() }),
        );
    }
    report.push(c3);

    let mut c4 = AuditClause::new(
        "splitting",
        "h = [p,p]_h (+) C_h(p) when B(h, m) = 0 and B is nondegenerate on p",
    );
    let b_nondegenerate_on_p = !p.is_zero() && !killing_gram(g, p).determinant().is_zero();
    if space.is_killing_orthogonal() && b_nondegenerate_on_p && bracket_closes {
        c4.set(
            pp_h.sum(&c_h_p) == *h && pp_h.intersect(&c_h_p).is_zero(),
            json!({ "dim_sum": pp_h.sum(&c_h_p).dim(), "dim_h": h.dim() }),
        );
    } else {
        c4.status = ClauseStatus::Skipped;
        c4.note(json!({
            "reason": "side conditions not met",
            "killing_orthogonal": space.is_killing_orthogonal(),
            "b_nondegenerate_on_p": b_nondegenerate_on_p,
            "bracket_closes": bracket_closes,
        }));
    }
    report.push(c4);
    Ok(report)
}

/// Audit of the adapted Levi decomposition properties for a compactly
/// embedded candidate `k`: four exact bracket conditions, plus the
/// necessary spectral conditions for maximal compactness (full compactness
/// is never claimed).
pub fn goodlevi_audit(g: &LieAlgebra, k: &Subspace, s: &Subspace) -> Result<AuditReport> {
    if !g.is_subalgebra(k) {
        return Err(Error::NotASubalgebra("k must be a subalgebra".into()));
    }
    let levi = verify_levi(g, s)?;
    if !levi.ok() {
        return Err(Error::LeviCheckFailed(format!("{levi:?}")));
    }
    let placeholder = GOVerdict::CertifiedNaturallyReductive;
    let mut report = AuditReport::new(
        "goodlevi",
        format!(
            "dim g = {}, dim k = {}, dim s = {}",
            g.dim(),
            k.dim(),
            s.dim()
        ),
        &placeholder,
    );
    report.dependency = "unconditional (no geodesic orbit verdict required)".into();
    let r = radical(g)?;
    let k_cap_r = k.intersect(&r);
    let k_cap_s = k.intersect(s);

    let mut c1 = AuditClause::new("levi_invariant", "[k, s] contained in s");
    c1.set(s.contains(&g.bracket_span(k, s)), json!({}));
    report.push(c1);

    let mut c2 = AuditClause::new("radical_part_commutes", "[k ∩ r, s] = 0");
    c2.set(g.bracket_span(&k_cap_r, s).is_zero(), json!({}));
    report.push(c2);

    let mut c3 = AuditClause::new("k_splits", "k = (k ∩ r) (+) (k ∩ s)");
    c3.set(
        k_cap_r.sum(&k_cap_s) == *k && k_cap_r.intersect(&k_cap_s).is_zero(),
        json!({ "dim_k": k.dim(), "dim_r_part": k_cap_r.dim(), "dim_s_part": k_cap_s.dim() }),
    );
    report.push(c3);

    let mut c4 = AuditClause::new("derived_in_levi", "[k, k] contained in s");
    let kk = g.bracket_span(k, k);
    c4.set(s.contains(&kk), json!({ "derived_dim": kk.dim() }));
    report.push(c4);

    // (5) maximal compactness: only necessary conditions are decidable
    // here. B must be nonpositive on k and every ad(X), X in k, must have
    // purely imaginary spectrum, which forces the characteristic polynomial
    // to be even/odd with nonnegative even-part coefficients.
    let mut c5 = AuditClause::new(
        "maximal_compact_necessary",
        "necessary conditions: B <= 0 on k; spectra of ad(X) purely imaginary for X in k",
    );
    let sign = symmetric_definiteness(&killing_gram(g, k));
    let nonpositive = matches!(
        sign,
        Definiteness::NegativeDefinite | Definiteness::NegativeSemidefinite | Definiteness::Zero
    );
    let mut spectra_ok = true;
    'spectra: for x in k.basis_vectors() {
        let p = g.ad(&x).char_poly();
        let n = degree(&p);
        for (idx, coeff) in p.iter().enumerate() {
            if idx > n {
                break;
            }
            if (n - idx) % 2 == 1 {
                if !coeff.is_zero() {
                    spectra_ok = false;
                    break 'spectra;
                }
            } else if coeff < &Scalar::zero() {
                spectra_ok = false;
                break 'spectra;
            }
        }
    }
    c5.set(
        nonpositive && spectra_ok,
        json!({ "definiteness": format!("{sign:?}"), "spectra_condition": spectra_ok }),
    );
    c5.necessary_only();
    report.push(c5);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gocheck::SampleConfig;
    use crate::homspace::trivial_isotropy_space;
    use crate::liealg::{validate_algebra, StructureTable};
    use crate::linalg::QMatrix;
    use crate::rational::int;

    fn named(dim: usize) -> Vec<String> {
        (1..=dim).map(|i| format!("e{i}")).collect()
    }

    fn su2_plus_r() -> LieAlgebra {
        let mut t = StructureTable::new();
        t.insert((0, 1), vec![(2, int(1))]);
        t.insert((1, 2), vec![(0, int(1))]);
        t.insert((0, 2), vec![(1, int(-1))]);
        validate_algebra(4, named(4), t, None).unwrap()
    }

    fn sphere_space() -> MetricReductiveSpace {
        let g = su2_plus_r();
        let mut metric = QMatrix::identity(4);
        metric.set(3, 3, int(2));
        let h = Subspace::from_vectors(4, vec![vec![int(0), int(0), int(1), int(1)]]);
        let m = Subspace::full(4).orthogonal_complement_in(&metric, &h);
        MetricReductiveSpace::new(g, h, m, metric).unwrap()
    }

    #[test]
    fn strucrad1_on_sphere_presentation() {
        let space = sphere_space();
        let verdict = crate::gocheck::go_check(&space, &SampleConfig::default()).unwrap();
        assert!(matches!(verdict, GOVerdict::CertifiedNaturallyReductive));
        let report = strucrad1_audit(&space, &verdict, AuditPolicy::RequireGoVerdict).unwrap();
        assert!(report.all_pass(), "{:?}", report.to_json());
    }

    #[test]
    fn strucnilr_skipped_for_negatives() {
        let mut t = StructureTable::new();
        t.insert((0, 1), vec![(2, int(1))]);
        t.insert((0, 2), vec![(3, int(1))]);
        let filiform = validate_algebra(4, named(4), t, None).unwrap();
        let space = trivial_isotropy_space(&filiform, QMatrix::identity(4)).unwrap();
        let verdict = crate::gocheck::go_check(&space, &SampleConfig::default()).unwrap();
        assert!(matches!(verdict, GOVerdict::NotGO { .. }));
        let report = strucnilr_audit(&filiform, &verdict, AuditPolicy::RequireGoVerdict).unwrap();
        assert!(report
            .clauses
            .iter()
            .all(|c| c.status == ClauseStatus::Skipped));
        // Forced, the class-3 nilradical fails the clause: the
        // contrapositive pairing NotGO <-> class > 2.
        let report = strucnilr_audit(&filiform, &verdict, AuditPolicy::Force).unwrap();
        assert!(report
            .clauses
            .iter()
            .any(|c| c.status == ClauseStatus::Fail));
    }

    #[test]
    fn skew_audit_on_sphere() {
        let space = sphere_space();
        let verdict = crate::gocheck::go_check(&space, &SampleConfig::default()).unwrap();
        let report = skew_centralizer_audit(
            &space,
            &verdict,
            AuditPolicy::RequireGoVerdict,
            &SampleConfig::default(),
        )
        .unwrap();
        assert!(report.all_pass(), "{:?}", report.to_json());
    }

    #[test]
    fn quotient_of_sphere_is_round_two_sphere() {
        let space = sphere_space();
        let verdict = crate::gocheck::go_check(&space, &SampleConfig::default()).unwrap();
        let out = quotient_go_construction(
            &space,
            &verdict,
            &SampleConfig::default(),
            AuditPolicy::RequireGoVerdict,
        )
        .unwrap();
        assert!(out.report.all_pass(), "{:?}", out.report.to_json());
        let qs = out.space.expect("nondegenerate quotient");
        assert_eq!(qs.algebra().dim(), 3);
        assert_eq!(qs.tangent_dim(), 2);
        assert!(matches!(
            out.quotient_verdict,
            Some(GOVerdict::CertifiedNaturallyReductive)
        ));
        assert!(radical(qs.algebra()).unwrap().is_zero());
    }

    #[test]
    fn quotient_degenerate_for_trivial_isotropy() {
        let g = su2_plus_r();
        let minus_b_plus = {
            // -B is only positive semidefinite here (center!), so use the
            // identity metric instead.
            QMatrix::identity(4)
        };
        let space = trivial_isotropy_space(&g, minus_b_plus).unwrap();
        let verdict = crate::gocheck::go_check(&space, &SampleConfig::default()).unwrap();
        let out = quotient_go_construction(
            &space,
            &verdict,
            &SampleConfig::default(),
            AuditPolicy::Force,
        )
        .unwrap();
        assert!(out.space.is_none());
        assert_eq!(out.collapsed_ideal.dim(), 4);
    }

    #[test]
    fn irred1_on_sphere_plane_module() {
        let space = sphere_space();
        let verdict = crate::gocheck::go_check(&space, &SampleConfig::default()).unwrap();
        let g_dim = space.algebra().dim();
        let p = Subspace::from_vectors(
            g_dim,
            vec![
                space.algebra().basis_vector(0),
                space.algebra().basis_vector(1),
            ],
        );
        let report = irred1_audit(&space, &p, &verdict, AuditPolicy::RequireGoVerdict).unwrap();
        assert!(!report.any_fail(), "{:?}", report.to_json());
        let orth = report
            .clauses
            .iter()
            .find(|c| c.claim_id == "orthogonality")
            .unwrap();
        assert_eq!(orth.status, ClauseStatus::Pass);
        let w = orth.witness.as_ref().unwrap();
        assert_eq!(w["cond3_irreducible"], serde_json::json!(true));
    }

    #[test]
    fn goodlevi_on_compact_plus_center() {
        let g = su2_plus_r();
        let k = Subspace::full(4);
        let s = Subspace::from_vectors(
            4,
            vec![g.basis_vector(0), g.basis_vector(1), g.basis_vector(2)],
        );
        let report = goodlevi_audit(&g, &k, &s).unwrap();
        assert!(report.all_pass(), "{:?}", report.to_json());
        // A k that fails clause 4: k = span{e1, e4} has [k,k] = 0 in s, so
        // pick instead k not splitting: span{e1 + e4} is a subalgebra with
        // [k,k] = 0; use a k whose bracket leaves s: none here, so check
        // a clause-3 failure with k = span{e3 + e4}.
        let k_bad = Subspace::from_vectors(4, vec![vec![int(0), int(0), int(1), int(1)]]);
        let report = goodlevi_audit(&g, &k_bad, &s).unwrap();
        let c3 = report
            .clauses
            .iter()
            .find(|c| c.claim_id == "k_splits")
            .unwrap();
        assert_eq!(c3.status, ClauseStatus::Fail);
    }

    #[test]
    fn normalized_orbit_line_in_compact_group() {
        let mut t = StructureTable::new();
        t.insert((0, 1), vec![(2, int(1))]);
        t.insert((1, 2), vec![(0, int(1))]);
        t.insert((0, 2), vec![(1, int(-1))]);
        let g = validate_algebra(3, named(3), t, None).unwrap();
        let minus_b = g.killing_form().scale(&int(-1));
        let space = trivial_isotropy_space(&g, minus_b).unwrap();
        let verdict = crate::gocheck::go_check(&space, &SampleConfig::default()).unwrap();
        let line = Subspace::from_vectors(3, vec![g.basis_vector(0)]);
        let report =
            normalized_orbit_audit(&space, &line, &verdict, AuditPolicy::RequireGoVerdict).unwrap();
        assert!(report.all_pass(), "{:?}", report.to_json());
        // The whole algebra is trivially a totally geodesic orbit.
        let report = normalized_orbit_audit(
            &space,
            &Subspace::full(3),
            &verdict,
            AuditPolicy::RequireGoVerdict,
        )
        .unwrap();
        assert!(report.all_pass());
    }
}
