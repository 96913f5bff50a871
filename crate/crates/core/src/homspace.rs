//! Metric reductive decompositions `g = h + m` with an invariant inner
//! product on `m`, and the operators attached to them: the symmetric
//! connection map `U`, the Killing operator `A` with its eigenstructure,
//! invariant submodule decompositions, isotropy splittings along a Levi
//! factor, and centralizer/normalizer structure.
#![allow(clippy::needless_range_loop)] // index loops mirror the matrix math

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{combine, nilradical, radical, verify_levi, LieAlgebra};
use crate::linalg::{
    is_positive_definite, jacobi_eigenvalues, symmetric_definiteness, Definiteness, QMatrix,
    Subspace,
};
use crate::poly::rational_roots;
use crate::rational::{int, scalar_to_f64, Scalar};

/// Numeric tolerance used only when a spectrum fails to split over the
/// rationals and the analysis downgrades to floating point.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

/// A homogeneous Riemannian space at the algebra level: `g = h + m` with
/// `[h, m]` contained in `m` and an `ad(h)`-invariant positive definite
/// inner product on `m`. The Killing form must be negative definite on `h`.
#[derive(Clone)]
pub struct MetricReductiveSpace {
    g: LieAlgebra,
    h: Subspace,
    m: Subspace,
    /// Gram matrix of the inner product on the canonical basis of `m`.
    ip: QMatrix,
    /// Ambient symmetric matrix the inner product was restricted from.
    ambient_metric: QMatrix,
    /// Coordinates: `to_h` and `to_m` split a vector of `g` along `h + m`.
    to_h: QMatrix,
    to_m: QMatrix,
    ip_inv: QMatrix,
    /// Whether `B(h, m) = 0` for this decomposition.
    killing_orthogonal: bool,
}

impl std::fmt::Debug for MetricReductiveSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MetricReductiveSpace(dim g = {}, dim h = {}, dim m = {})",
            self.g.dim(),
            self.h.dim(),
            self.m.dim()
        )
    }
}

impl MetricReductiveSpace {
    /// Validates and builds a space from its raw pieces. `ambient_metric`
    /// is an `n x n` symmetric matrix on `g` whose restriction to `m` is
    /// the inner product.
    pub fn new(g: LieAlgebra, h: Subspace, m: Subspace, ambient_metric: QMatrix) -> Result<Self> {
        let n = g.dim();
        if h.ambient_dim() != n || m.ambient_dim() != n {
            return Err(Error::DimensionMismatch(
                "subspace ambient dimension".into(),
            ));
        }
        if ambient_metric.rows() != n
            || ambient_metric.cols() != n
            || !ambient_metric.is_symmetric()
        {
            return Err(Error::MetricNotPositiveDefinite(
                "ambient metric must be a symmetric n x n matrix".into(),
            ));
        }
        if !g.is_subalgebra(&h) {
            return Err(Error::NotASubalgebra(
                "isotropy must be a subalgebra".into(),
            ));
        }
        if h.dim() > 0 {
            let bh = crate::liealg::killing_gram(&g, &h);
            if symmetric_definiteness(&bh) != Definiteness::NegativeDefinite {
                return Err(Error::IsotropyNotCompactType(
                    "Killing form is not negative definite on the isotropy algebra".into(),
                ));
            }
        }
        if h.dim() + m.dim() != n || !h.intersect(&m).is_zero() {
            return Err(Error::ComplementNotInvariant(
                "h and m do not decompose g as a direct sum".into(),
            ));
        }
        if !m.contains(&g.bracket_span(&h, &m)) {
            return Err(Error::ComplementNotInvariant("[h, m] leaves m".into()));
        }
        let ip = m.basis().mul(&ambient_metric).mul(&m.basis().transpose());
        if !is_positive_definite(&ip) {
            return Err(Error::MetricNotPositiveDefinite(
                "restriction to the complement is not positive definite".into(),
            ));
        }
        // Change of coordinates g -> (h, m).
        let mut cols = h.basis_vectors();
        cols.extend(m.basis_vectors());
        let t = QMatrix::from_rows(cols).transpose();
        let t_inv = t
            .inverse()
            .ok_or_else(|| Error::ComplementNotInvariant("h and m do not span g".into()))?;
        let to_h = QMatrix::from_fn(h.dim(), n, |r, c| t_inv.get(r, c).clone());
        let to_m = QMatrix::from_fn(m.dim(), n, |r, c| t_inv.get(h.dim() + r, c).clone());
        let ip_inv = ip.inverse().expect("positive definite Gram is invertible");
        let killing_orthogonal = h.basis_vectors().iter().all(|z| {
            m.basis_vectors()
                .iter()
                .all(|x| g.killing_eval(z, x).is_zero())
        });
        let space = Self {
            g,
            h,
            m,
            ip,
            ambient_metric,
            to_h,
            to_m,
            ip_inv,
            killing_orthogonal,
        };
        // ad(h)-invariance of the inner product, checked on basis triples.
        for (zi, z) in space.h.basis_vectors().iter().enumerate() {
            let a = space.action_on_m(z);
            let skew = space.ip.mul(&a).add(&a.transpose().mul(&space.ip));
            if !skew.is_zero() {
                let (x, y) = first_nonzero(&skew);
                return Err(Error::MetricNotInvariant { z: zi, x, y });
            }
        }
        Ok(space)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn isotropy(&self) -> &Subspace {
        &self.h
    }

    pub fn complement(&self) -> &Subspace {
        &self.m
    }

    pub fn inner_product(&self) -> &QMatrix {
        &self.ip
    }

    pub fn ambient_metric(&self) -> &QMatrix {
        &self.ambient_metric
    }

    pub fn tangent_dim(&self) -> usize {
        self.m.dim()
    }

    /// Whether `B(h, m) = 0` holds for this decomposition.
    pub fn is_killing_orthogonal(&self) -> bool {
        self.killing_orthogonal
    }

    pub fn h_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.to_h.mul_vec(v)
    }

    pub fn m_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.to_m.mul_vec(v)
    }

    /// The `m`-component of a vector of `g`, in `g` coordinates.
    pub fn m_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        combine(self.m.basis(), &self.m_coords(v))
    }

    pub fn h_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        combine(self.h.basis(), &self.h_coords(v))
    }

    pub fn m_vector_from_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        combine(self.m.basis(), coords)
    }

    pub fn h_vector_from_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        combine(self.h.basis(), coords)
    }

    /// `ad(z)` followed by projection to `m`, as a matrix in `m` coordinates.
    pub fn action_on_m(&self, z: &[Scalar]) -> QMatrix {
        let d = self.m.dim();
        let mut cols = QMatrix::zeros(d, d);
        for (i, b) in self.m.basis_vectors().iter().enumerate() {
            let w = self.g.bracket(z, b);
            for (r, v) in self.m_coords(&w).into_iter().enumerate() {
                cols.set(r, i, v);
            }
        }
        cols
    }

    /// Inner product of two vectors of `g` that lie in `m`.
    pub fn ip_eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let xc = self.m_coords(x);
        let yc = self.m_coords(y);
        let gx = self.ip.mul_vec(&xc);
        gx.iter().zip(&yc).map(|(a, b)| a * b).sum()
    }

    /// Extension of the inner product to all of `g`: `-B` on `h`, the inner
    /// product on `m`, and `h` orthogonal to `m`. Invariant complements are
    /// taken orthogonally with respect to this form.
    pub fn extended_form(&self) -> QMatrix {
        let n = self.g.dim();
        let dh = self.h.dim();
        let dm = self.m.dim();
        let minus_bh = crate::liealg::killing_gram(&self.g, &self.h).scale(&int(-1));
        let mut block = QMatrix::zeros(n, n);
        for r in 0..dh {
            for c in 0..dh {
                block.set(r, c, minus_bh.get(r, c).clone());
            }
        }
        for r in 0..dm {
            for c in 0..dm {
                block.set(dh + r, dh + c, self.ip.get(r, c).clone());
            }
        }
        let t = self.to_h.vstack(&self.to_m);
        t.transpose().mul(&block).mul(&t)
    }

    /// True when the maximal ideal of `g` inside `h` is zero: the strict
    /// effectivity diagnostic, stronger than the definiteness proxy enforced
    /// at construction.
    pub fn effectivity_ideal_check(&self) -> bool {
        self.g.largest_ideal_in(&self.h).is_zero()
    }
}

fn first_nonzero(m: &QMatrix) -> (usize, usize) {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                return (r, c);
            }
        }
    }
    (0, 0)
}

/// How the inner product is specified relative to the algebra basis.
#[derive(Clone, Debug)]
pub enum MetricSpec {
    /// Symmetric `n x n` matrix on the full algebra; restricted to `m`.
    Explicit(QMatrix),
    /// `factor * B` restricted to `m`.
    KillingMultiple(Scalar),
}

impl MetricSpec {
    pub fn ambient_matrix(&self, g: &LieAlgebra) -> Result<QMatrix> {
        match self {
            MetricSpec::Explicit(m) => {
                if m.rows() != g.dim() || m.cols() != g.dim() || !m.is_symmetric() {
                    return Err(Error::MetricNotPositiveDefinite(
                        "explicit metric must be a symmetric n x n matrix".into(),
                    ));
                }
                Ok(m.clone())
            }
            MetricSpec::KillingMultiple(c) => Ok(g.killing_form().scale(c)),
        }
    }
}

/// Choice of reductive complement.
#[derive(Clone, Debug)]
pub enum ComplementStrategy {
    /// `m = {X : B(X, h) = 0}`.
    KillingOrthogonal,
    /// User-supplied complement vectors.
    Explicit(Vec<Vec<Scalar>>),
    /// `m1 + m2` with `m1` an invariant complement to `h ∩ r` in the
    /// radical and `m2` an invariant complement to the `s`-projection of
    /// `h` in the Levi factor `s`.
    LeviSplit { levi: Subspace },
    /// Same, but `m1 = n(g) + u` where `u` complements `n(g) + (h ∩ r)`
    /// invariantly in the radical; `[h, u] = 0` is verified.
    NilradicalAdapted { levi: Subspace },
    /// `m1 = {X : B(X, s + h) = 0} + ` an invariant completion inside the
    /// radical.
    Rem1Variant { levi: Subspace },
}

/// Builds a metric reductive space from an isotropy subalgebra, a metric
/// specification, and a complement strategy.
pub fn build_reductive(
    g: &LieAlgebra,
    h: &Subspace,
    metric: &MetricSpec,
    strategy: &ComplementStrategy,
) -> Result<MetricReductiveSpace> {
    let ambient = metric.ambient_matrix(g)?;
    let m = match strategy {
        ComplementStrategy::KillingOrthogonal => {
            let m = Subspace::full(g.dim()).orthogonal_complement_in(g.killing_form(), h);
            let n = nilradical(g)?;
            if !m.contains(&n) {
                return Err(Error::InternalInconsistency(
                    "nilradical escaped the Killing-orthogonal complement".into(),
                ));
            }
            m
        }
        ComplementStrategy::Explicit(vectors) => Subspace::from_vectors(g.dim(), vectors.clone()),
        ComplementStrategy::LeviSplit { levi }
        | ComplementStrategy::NilradicalAdapted { levi }
        | ComplementStrategy::Rem1Variant { levi } => {
            let check = verify_levi(g, levi)?;
            if !check.ok() {
                return Err(Error::LeviCheckFailed(format!("{check:?}")));
            }
            if !levi.contains(&g.bracket_span(h, levi)) {
                return Err(Error::LeviNotInvariant("[h, s] leaves s".into()));
            }
            let r = radical(g)?;
            let h_cap_r = h.intersect(&r);
            let h_gens = h.basis_vectors();
            let m1 = match strategy {
                ComplementStrategy::LeviSplit { .. } => {
                    invariant_complement(g, &r, &h_cap_r, &h_gens)?
                }
                ComplementStrategy::NilradicalAdapted { .. } => {
                    let n = nilradical(g)?;
                    let u = invariant_complement(g, &r, &n.sum(&h_cap_r), &h_gens)?;
                    if !g.bracket_span(h, &u).is_zero() {
                        return Err(Error::InternalInconsistency(
                            "[h, u] nonzero on the nilradical-adapted complement".into(),
                        ));
                    }
                    n.sum(&u)
                }
                ComplementStrategy::Rem1Variant { .. } => {
                    let s_plus_h = levi.sum(h);
                    let m1p = Subspace::full(g.dim())
                        .orthogonal_complement_in(g.killing_form(), &s_plus_h);
                    let n = nilradical(g)?;
                    if !m1p.contains(&n) || !r.contains(&m1p) {
                        return Err(Error::InternalInconsistency(
                            "B-orthogonal slice misplaced relative to nilradical/radical".into(),
                        ));
                    }
                    let m1pp = invariant_complement(g, &r, &m1p.sum(&h_cap_r), &h_gens)?;
                    m1p.sum(&m1pp)
                }
                _ => unreachable!(),
            };
            // psi(h): projection of h onto s along r.
            let psi_h = project_along(g, levi, &r, h)?;
            let m2 = invariant_complement(g, levi, &psi_h, &h_gens)?;
            m1.sum(&m2)
        }
    };
    MetricReductiveSpace::new(g.clone(), h.clone(), m, ambient)
}

/// Projection of `w` onto `target` along `kernel` (requires
/// `target + kernel = g` directly).
fn project_along(
    g: &LieAlgebra,
    target: &Subspace,
    kernel: &Subspace,
    w: &Subspace,
) -> Result<Subspace> {
    let n = g.dim();
    if target.dim() + kernel.dim() != n || !target.intersect(kernel).is_zero() {
        return Err(Error::DimensionMismatch(
            "projection needs a direct decomposition".into(),
        ));
    }
    let mut cols = kernel.basis_vectors();
    cols.extend(target.basis_vectors());
    let t = QMatrix::from_rows(cols).transpose();
    let t_inv = t
        .inverse()
        .ok_or_else(|| Error::InternalInconsistency("projection basis is singular".into()))?;
    let to_target = QMatrix::from_fn(target.dim(), n, |r, c| {
        t_inv.get(kernel.dim() + r, c).clone()
    });
    let vectors = w
        .basis_vectors()
        .iter()
        .map(|v| combine(target.basis(), &to_target.mul_vec(v)))
        .collect();
    Ok(Subspace::from_vectors(n, vectors))
}

/// An `ad(h)`-invariant complement to `w` inside `v`, found by solving for
/// an equivariant projection of `v` onto `w` and taking its kernel. Exists
/// whenever the `h`-action on `v` is completely reducible.
pub fn invariant_complement(
    g: &LieAlgebra,
    v: &Subspace,
    w: &Subspace,
    h_generators: &[Vec<Scalar>],
) -> Result<Subspace> {
    let n = g.dim();
    let dv = v.dim();
    if !v.contains(w) {
        return Err(Error::DimensionMismatch(
            "complement target not inside ambient".into(),
        ));
    }
    if w.dim() == 0 {
        return Ok(v.clone());
    }
    if w.dim() == dv {
        return Ok(Subspace::zero(n));
    }
    // Everything in v-coordinates.
    let v_rows = v.basis();
    let w_in_v: Vec<Vec<Scalar>> = w
        .basis_vectors()
        .iter()
        .map(|x| v.coordinates_of(x).expect("w inside v"))
        .collect();
    let mut actions = Vec::new();
    for z in h_generators {
        let mut a = QMatrix::zeros(dv, dv);
        for i in 0..dv {
            let img = g.bracket(z, &v_rows.row(i));
            let coords = v.coordinates_of(&img).ok_or_else(|| {
                Error::ComplementNotInvariant("ambient subspace is not h-invariant".into())
            })?;
            for (r, val) in coords.into_iter().enumerate() {
                a.set(r, i, val);
            }
        }
        actions.push(a);
    }
    let w_mat = QMatrix::from_rows(w_in_v.clone());
    let n_w = w_mat.kernel(); // membership constraints for w in v-coords
                              // Unknown projection P (dv x dv), entry index r * dv + c.
    let unknowns = dv * dv;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // (1) image inside w: N_w P = 0.
    for nr in 0..n_w.rows() {
        for c in 0..dv {
            let mut row = vec![Scalar::zero(); unknowns];
            for r in 0..dv {
                row[r * dv + c] = n_w.get(nr, r).clone();
            }
            rows.push(row);
            rhs.push(Scalar::zero());
        }
    }
    // (2) fixes w pointwise: P w = w for each w-basis vector.
    for wv in &w_in_v {
        for r in 0..dv {
            let mut row = vec![Scalar::zero(); unknowns];
            for (c, val) in wv.iter().enumerate() {
                row[r * dv + c] = val.clone();
            }
            rows.push(row);
            rhs.push(wv[r].clone());
        }
    }
    // (3) equivariance: P A = A P for every generator action.
    for a in &actions {
        for r in 0..dv {
            for c in 0..dv {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..dv {
                    // (P A)_{rc} picks up P_{rk} A_{kc}
                    row[r * dv + k] = &row[r * dv + k] + a.get(k, c);
                    // (A P)_{rc} picks up A_{rk} P_{kc}
                    row[k * dv + c] = &row[k * dv + c] - a.get(r, k);
                }
                rows.push(row);
                rhs.push(Scalar::zero());
            }
        }
    }
    let system = QMatrix::from_rows(rows);
    let sol = system
        .solve(&rhs)
        .ok_or_else(|| Error::ComplementNotInvariant("no invariant projection exists".into()))?;
    let p = QMatrix::from_fn(dv, dv, |r, c| sol[r * dv + c].clone());
    let kernel = p.kernel();
    let vectors = kernel
        .rows_vec()
        .into_iter()
        .map(|coords| combine(v_rows, &coords))
        .collect();
    let complement = Subspace::from_vectors(n, vectors);
    debug_assert_eq!(complement.dim() + w.dim(), dv);
    Ok(complement)
}

/// The symmetric bilinear map `U` of the canonical connection:
/// `2 (U(X,Y), Z) = ([Z,X]_m, Y) + (X, [Z,Y]_m)` for all `Z` in `m`.
/// Inputs and output are vectors of `g` lying in `m`.
pub fn u_map(space: &MetricReductiveSpace, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut rhs = Vec::with_capacity(space.m.dim());
    for z in space.m.basis_vectors() {
        let zx = space.m_part(&space.g.bracket(&z, x));
        let zy = space.m_part(&space.g.bracket(&z, y));
        rhs.push(space.ip_eval(&zx, y) + space.ip_eval(x, &zy));
    }
    let half = Scalar::new(1.into(), 2.into());
    let coords: Vec<Scalar> = space
        .ip_inv
        .mul_vec(&rhs)
        .iter()
        .map(|v| v * &half)
        .collect();
    space.m_vector_from_coords(&coords)
}

/// Covariant derivative at the origin: `-1/2 [X,Y]_m + U(X,Y)`.
pub fn nabla_at_origin(space: &MetricReductiveSpace, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let half = Scalar::new(1.into(), 2.into());
    let br = space.m_part(&space.g.bracket(x, y));
    let u = u_map(space, x, y);
    br.iter().zip(&u).map(|(b, u)| u - &half * b).collect()
}

/// Exact or numeric eigenstructure of the Killing operator `A` defined by
/// `B(X, Y) = (A X, Y)` on `m`.
#[derive(Clone, Debug)]
pub enum SpectrumMode {
    Exact {
        /// Distinct eigenvalues, ascending.
        eigenvalues: Vec<Scalar>,
        /// Matching eigenspaces as subspaces of `g`.
        eigenspaces: Vec<Subspace>,
    },
    Numeric {
        eigenvalues: Vec<f64>,
        warning: String,
    },
}

#[derive(Clone, Debug)]
pub struct KillingOperatorSpectrum {
    /// Matrix of `A` in the canonical basis of `m`.
    pub a_matrix: QMatrix,
    pub mode: SpectrumMode,
    /// When `B(h, m) = 0`, records whether the zero eigenspace equals
    /// `ker B` and is an ideal of `g`; `None` when the side condition does
    /// not apply.
    pub zero_eigenspace_ideal: Option<bool>,
}

impl KillingOperatorSpectrum {
    pub fn is_exact(&self) -> bool {
        matches!(self.mode, SpectrumMode::Exact { .. })
    }

    pub fn eigenspace_of(&self, value: &Scalar) -> Option<&Subspace> {
        match &self.mode {
            SpectrumMode::Exact {
                eigenvalues,
                eigenspaces,
            } => eigenvalues
                .iter()
                .position(|v| v == value)
                .map(|i| &eigenspaces[i]),
            SpectrumMode::Numeric { .. } => None,
        }
    }

    /// The zero eigenspace, or the zero subspace when 0 is not an eigenvalue.
    pub fn zero_eigenspace(&self, ambient_dim: usize) -> Subspace {
        self.eigenspace_of(&Scalar::zero())
            .cloned()
            .unwrap_or_else(|| Subspace::zero(ambient_dim))
    }
}

pub fn killing_operator_decomposition(
    space: &MetricReductiveSpace,
) -> Result<KillingOperatorSpectrum> {
    let g = space.algebra();
    let dm = space.m.dim();
    let b_m = space
        .m
        .basis()
        .mul(g.killing_form())
        .mul(&space.m.basis().transpose());
    let a = space.ip_inv.mul(&b_m);
    let char_poly = a.char_poly();
    let (roots, complete) = rational_roots(&char_poly);
    let mut eigenspaces = Vec::new();
    let mut eigenvalues = Vec::new();
    for root in &roots {
        let shifted = a.sub(&QMatrix::identity(dm).scale(root));
        let kernel = shifted.kernel();
        if kernel.rows() == 0 {
            continue;
        }
        let vectors = kernel
            .rows_vec()
            .into_iter()
            .map(|coords| space.m_vector_from_coords(&coords))
            .collect();
        eigenvalues.push(root.clone());
        eigenspaces.push(Subspace::from_vectors(g.dim(), vectors));
    }
    let total: usize = eigenspaces.iter().map(Subspace::dim).sum();
    let mode = if total == dm && complete {
        // Exact mode invariants: pairwise orthogonality in both forms and
        // ad(h)-invariance of each eigenspace.
        for (i, ei) in eigenspaces.iter().enumerate() {
            for ej in eigenspaces.iter().skip(i + 1) {
                for x in ei.basis_vectors() {
                    for y in ej.basis_vectors() {
                        if !space.ip_eval(&x, &y).is_zero() || !g.killing_eval(&x, &y).is_zero() {
                            return Err(Error::InternalInconsistency(
                                "eigenspaces of A are not orthogonal".into(),
                            ));
                        }
                    }
                }
            }
            if !ei.contains(&g.bracket_span(&space.h, ei)) {
                return Err(Error::InternalInconsistency(
                    "eigenspace of A is not ad(h)-invariant".into(),
                ));
            }
        }
        SpectrumMode::Exact {
            eigenvalues,
            eigenspaces,
        }
    } else {
        let eigs = numeric_generalized_eigenvalues(&b_m, &space.ip);
        SpectrumMode::Numeric {
            eigenvalues: eigs,
            warning: "characteristic polynomial does not split over the rationals".into(),
        }
    };
    let zero_eigenspace_ideal = if space.killing_orthogonal {
        match &mode {
            SpectrumMode::Exact {
                eigenvalues,
                eigenspaces,
            } => {
                let a0 = eigenvalues
                    .iter()
                    .position(Zero::is_zero)
                    .map(|i| eigenspaces[i].clone())
                    .unwrap_or_else(|| Subspace::zero(g.dim()));
                let ker_b = Subspace::from_rref(g.killing_form().kernel());
                Some(a0 == ker_b && g.is_ideal(&a0))
            }
            SpectrumMode::Numeric { .. } => None,
        }
    } else {
        None
    };
    Ok(KillingOperatorSpectrum {
        a_matrix: a,
        mode,
        zero_eigenspace_ideal,
    })
}

fn numeric_generalized_eigenvalues(b: &QMatrix, gram: &QMatrix) -> Vec<f64> {
    // Solve B v = t G v via Cholesky: eigenvalues of L^-1 B L^-T.
    let n = b.rows();
    let g = gram.to_f64();
    let bf = b.to_f64();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = g[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                l[i][j] = s.max(0.0).sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    // Forward substitution helpers on columns.
    let solve_lower = |rhs: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; n];
        for i in 0..n {
            let mut s = rhs[i];
            for k in 0..i {
                s -= l[i][k] * x[k];
            }
            x[i] = s / l[i][i];
        }
        x
    };
    // M = L^-1 B L^-T, built column by column.
    let mut m = vec![vec![0.0; n]; n];
    for c in 0..n {
        // y = L^-T e_c  =>  L^T y = e_c  =>  y_i solves upper system.
        let mut y = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = if i == c { 1.0 } else { 0.0 };
            for k in i + 1..n {
                s -= l[k][i] * y[k];
            }
            y[i] = s / l[i][i];
        }
        let by: Vec<f64> = (0..n)
            .map(|r| (0..n).map(|k| bf[r][k] * y[k]).sum())
            .collect();
        let col = solve_lower(&by);
        for r in 0..n {
            m[r][c] = col[r];
        }
    }
    // Symmetrize against rounding before Jacobi.
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = avg;
            m[j][i] = avg;
        }
    }
    jacobi_eigenvalues(&m, NUMERIC_TOLERANCE)
}

/// Certification level for invariant submodules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Symmetric commutant is scalar: irreducible, certified exactly.
    Certified,
    /// Invariant, but splitting analysis left the rationals.
    Unverified,
}

#[derive(Clone, Debug)]
pub struct Submodule {
    pub space: Subspace,
    /// Eigenvalue of the Killing operator on the eigenspace containing the
    /// module; absent when the spectrum is numeric.
    pub eigenvalue: Option<Scalar>,
    pub irreducibility: Irreducibility,
}

#[derive(Clone, Debug)]
pub struct SubmoduleDecomposition {
    pub modules: Vec<Submodule>,
    pub warning: Option<String>,
}

/// Splits `m` into pairwise orthogonal `ad(h)`-invariant submodules
/// refining the eigenspace decomposition of the Killing operator, each
/// either certified irreducible or honestly flagged unverified.
pub fn submodule_decomposition(space: &MetricReductiveSpace) -> Result<SubmoduleDecomposition> {
    let spectrum = killing_operator_decomposition(space)?;
    let mut modules = Vec::new();
    let mut warning = None;
    match &spectrum.mode {
        SpectrumMode::Exact {
            eigenvalues,
            eigenspaces,
        } => {
            for (value, espace) in eigenvalues.iter().zip(eigenspaces) {
                let mut parts = Vec::new();
                refine_module(space, espace, &mut parts);
                parts.sort_by(|a, b| a.0.canonical_cmp(&b.0));
                for (sub, irr) in parts {
                    if irr == Irreducibility::Unverified {
                        warning = Some(
                            "some modules are invariant with irreducibility unverified".into(),
                        );
                    }
                    modules.push(Submodule {
                        space: sub,
                        eigenvalue: Some(value.clone()),
                        irreducibility: irr,
                    });
                }
            }
        }
        SpectrumMode::Numeric { warning: w, .. } => {
            warning = Some(w.clone());
            let mut parts = Vec::new();
            refine_module(space, &space.m, &mut parts);
            parts.sort_by(|a, b| a.0.canonical_cmp(&b.0));
            for (sub, irr) in parts {
                modules.push(Submodule {
                    space: sub,
                    eigenvalue: None,
                    irreducibility: irr,
                });
            }
        }
    }
    // Exactness checks: invariance, pairwise orthogonality, full sum.
    let mut sum = Subspace::zero(space.g.dim());
    for (i, a) in modules.iter().enumerate() {
        if !a.space.contains(&space.g.bracket_span(&space.h, &a.space)) {
            return Err(Error::InternalInconsistency(
                "submodule not invariant".into(),
            ));
        }
        for b in modules.iter().skip(i + 1) {
            for x in a.space.basis_vectors() {
                for y in b.space.basis_vectors() {
                    if !space.ip_eval(&x, &y).is_zero() {
                        return Err(Error::InternalInconsistency(
                            "submodules not orthogonal".into(),
                        ));
                    }
                }
            }
        }
        sum = sum.sum(&a.space);
    }
    if sum != *space.complement() {
        return Err(Error::InternalInconsistency(
            "submodules do not sum to m".into(),
        ));
    }
    Ok(SubmoduleDecomposition { modules, warning })
}

/// Attempts to certify an invariant module irreducible. `Some(true)` when
/// the symmetric commutant is scalar, `Some(false)` when a proper invariant
/// subspace is exhibited, `None` when the analysis leaves the rationals.
pub fn certify_module_irreducible(space: &MetricReductiveSpace, module: &Subspace) -> Option<bool> {
    let mut parts = Vec::new();
    refine_module(space, module, &mut parts);
    match parts.as_slice() {
        [(_, Irreducibility::Certified)] => Some(true),
        [(_, Irreducibility::Unverified)] => None,
        _ => Some(false),
    }
}

fn refine_module(
    space: &MetricReductiveSpace,
    module: &Subspace,
    out: &mut Vec<(Subspace, Irreducibility)>,
) {
    let d = module.dim();
    if d == 0 {
        return;
    }
    if d == 1 {
        out.push((module.clone(), Irreducibility::Certified));
        return;
    }
    let rows = module.basis_vectors();
    // Gram of the inner product on the module and the h-action in module
    // coordinates.
    let gram = QMatrix::from_fn(d, d, |i, j| space.ip_eval(&rows[i], &rows[j]));
    let mut actions = Vec::new();
    for z in space.h.basis_vectors() {
        let mut a = QMatrix::zeros(d, d);
        for (i, b) in rows.iter().enumerate() {
            let img = space.g.bracket(&z, b);
            let coords = module
                .coordinates_of(&img)
                .expect("module is invariant by construction");
            for (r, v) in coords.into_iter().enumerate() {
                a.set(r, i, v);
            }
        }
        actions.push(a);
    }
    if actions.iter().all(QMatrix::is_zero) {
        // Trivial action: orthogonal lines, in deterministic order.
        let mut chosen: Vec<Vec<Scalar>> = Vec::new();
        for b in &rows {
            let mut v = b.clone();
            for c in &chosen {
                let factor = space.ip_eval(&v, c) / space.ip_eval(c, c);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= &factor * ci;
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                chosen.push(v);
            }
        }
        for v in chosen {
            out.push((
                Subspace::from_vectors(space.g.dim(), vec![v]),
                Irreducibility::Certified,
            ));
        }
        return;
    }
    // Symmetric commutant: T with G T symmetric and T A = A T for all
    // generator actions A.
    let unknowns = d * d;
    let mut eq_rows: Vec<Vec<Scalar>> = Vec::new();
    for a in &actions {
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..d {
                    row[r * d + k] = &row[r * d + k] + a.get(k, c);
                    row[k * d + c] = &row[k * d + c] - a.get(r, k);
                }
                eq_rows.push(row);
            }
        }
    }
    for r in 0..d {
        for c in r + 1..d {
            // (G T)_{rc} = (G T)_{cr}
            let mut row = vec![Scalar::zero(); unknowns];
            for k in 0..d {
                row[k * d + c] = &row[k * d + c] + gram.get(r, k);
                row[k * d + r] = &row[k * d + r] - gram.get(c, k);
            }
            eq_rows.push(row);
        }
    }
    let commutant = QMatrix::from_rows(eq_rows).kernel();
    if commutant.rows() <= 1 {
        out.push((module.clone(), Irreducibility::Certified));
        return;
    }
    // Try to split along a rational eigenvalue of a symmetric commutant
    // element: basis elements first, then pairwise sums.
    let basis_ops: Vec<QMatrix> = commutant
        .rows_vec()
        .into_iter()
        .map(|v| QMatrix::from_fn(d, d, |r, c| v[r * d + c].clone()))
        .collect();
    let mut candidates: Vec<QMatrix> = basis_ops.clone();
    for i in 0..basis_ops.len() {
        for j in i + 1..basis_ops.len() {
            candidates.push(basis_ops[i].add(&basis_ops[j]));
        }
    }
    for t in &candidates {
        let (roots, _) = rational_roots(&t.char_poly());
        for root in roots {
            let kernel = t.sub(&QMatrix::identity(d).scale(&root)).kernel();
            if kernel.rows() == 0 || kernel.rows() == d {
                continue;
            }
            let part_vectors: Vec<Vec<Scalar>> = kernel
                .rows_vec()
                .into_iter()
                .map(|coords| combine(module.basis(), &coords))
                .collect();
            let part = Subspace::from_vectors(space.g.dim(), part_vectors);
            // Orthogonal complement of the part inside the module.
            let mut constraints = part
                .basis()
                .mul(&space.to_m.transpose())
                .mul(&space.ip)
                .mul(&space.to_m);
            constraints = constraints.vstack(&module.constraint_matrix());
            let complement = Subspace::from_rref(constraints.kernel());
            if part.dim() + complement.dim() != d {
                continue;
            }
            refine_module(space, &part, out);
            refine_module(space, &complement, out);
            return;
        }
    }
    out.push((module.clone(), Irreducibility::Unverified));
}

/// The isotropy splitting along an invariant Levi decomposition.
#[derive(Clone, Debug)]
pub struct IsotropySplit {
    pub phi_image: Subspace,
    pub psi_image: Subspace,
    pub ker_psi: Subspace,
    pub h_cap_s: Subspace,
    pub h2: Subspace,
}

/// Splits `h` along `g = r + s`: `h = h2 + (h ∩ r) + (h ∩ s)` with `h2`
/// central in `h`, and returns the projections of `h` into the radical and
/// the Levi factor. All stated identities are verified exactly.
pub fn isotropy_levi_split(space: &MetricReductiveSpace, s: &Subspace) -> Result<IsotropySplit> {
    let g = space.algebra();
    let check = verify_levi(g, s)?;
    if !check.ok() {
        return Err(Error::LeviCheckFailed(format!("{check:?}")));
    }
    if !s.contains(&g.bracket_span(&space.h, s)) {
        return Err(Error::LeviNotInvariant("[h, s] leaves s".into()));
    }
    let r = radical(g)?;
    let h = &space.h;
    let h_cap_r = h.intersect(&r);
    let h_cap_s = h.intersect(s);
    let h_gens = h.basis_vectors();
    let h2 = invariant_complement(g, h, &h_cap_r.sum(&h_cap_s), &h_gens)?;
    let phi_image = project_along(g, &r, s, h)?;
    let psi_image = project_along(g, s, &r, h)?;
    // Verified identities.
    let direct =
        h2.dim() + h_cap_r.dim() + h_cap_s.dim() == h.dim() && h2.sum(&h_cap_r).sum(&h_cap_s) == *h;
    if !direct {
        return Err(Error::InternalInconsistency(
            "h does not split into h2 + (h∩r) + (h∩s)".into(),
        ));
    }
    let phi_h2 = project_along(g, &r, s, &h2)?;
    if phi_h2.sum(&h_cap_r) != phi_image {
        return Err(Error::InternalInconsistency("phi image mismatch".into()));
    }
    let psi_h2 = project_along(g, s, &r, &h2)?;
    if psi_h2.sum(&h_cap_s) != psi_image {
        return Err(Error::InternalInconsistency("psi image mismatch".into()));
    }
    if !g.bracket_span(&h2, h).is_zero() {
        return Err(Error::InternalInconsistency(
            "h2 is not central in h".into(),
        ));
    }
    Ok(IsotropySplit {
        phi_image,
        psi_image,
        ker_psi: h_cap_r,
        h_cap_s,
        h2,
    })
}

/// Centralizer/normalizer structure of a space, with the identities that
/// hold on geodesic orbit spaces evaluated as named checks rather than
/// hard errors.
#[derive(Clone, Debug)]
pub struct NormalizerStructures {
    /// `C_g(h)`.
    pub centralizer: Subspace,
    /// `C_g(h) ∩ m`.
    pub centralizer_cap_m: Subspace,
    /// `[h, m]`.
    pub h_bracket_m: Subspace,
    /// `k = C_g(h) + [h, h]`, the algebra of the normalizer of `h`.
    pub k: Subspace,
    /// Inner-product orthocomplement of `[r, g]` inside `r ∩ m`.
    pub q: Subspace,
    /// Named exact checks with outcomes.
    pub checks: Vec<(String, bool)>,
}

pub fn normalizer_structures(space: &MetricReductiveSpace) -> Result<NormalizerStructures> {
    let g = space.algebra();
    let h = &space.h;
    let m = &space.m;
    let centralizer = g.centralizer(h);
    let centralizer_cap_m = centralizer.intersect(m);
    let h_bracket_m = g.bracket_span(h, m);
    let hh = g.bracket_span(h, h);
    let k = centralizer.sum(&hh);
    let r = radical(g)?;
    let rg = g.bracket_span(&r, &Subspace::full(g.dim()));
    let r_cap_m = r.intersect(m);
    let ext = space.extended_form();
    let q = r_cap_m.orthogonal_complement_in(&ext, &rg.intersect(&r_cap_m));

    let mut checks = Vec::new();
    let sum_ok = centralizer_cap_m.sum(&h_bracket_m) == *m
        && centralizer_cap_m.intersect(&h_bracket_m).is_zero();
    checks.push(("m = (C_g(h) ∩ m) ⊕ [h, m]".to_string(), sum_ok));
    let mut ip_orth = true;
    let mut b_orth = true;
    for x in centralizer_cap_m.basis_vectors() {
        for y in h_bracket_m.basis_vectors() {
            if !space.ip_eval(&x, &y).is_zero() {
                ip_orth = false;
            }
            if !g.killing_eval(&x, &y).is_zero() {
                b_orth = false;
            }
        }
    }
    checks.push((
        "(C_g(h) ∩ m) ⊥ [h, m] in the inner product".to_string(),
        ip_orth,
    ));
    checks.push((
        "(C_g(h) ∩ m) ⊥ [h, m] in the Killing form".to_string(),
        b_orth,
    ));
    let normalizer_ok = match g.normalizer(h) {
        Ok(nz) => nz == k,
        Err(_) => false,
    };
    checks.push((
        "normalizer of h equals C_g(h) + [h, h]".to_string(),
        normalizer_ok,
    ));
    // Derived facts about q that hold on geodesic orbit spaces.
    let mut q_skew = true;
    for y in q.basis_vectors() {
        let a = space.action_on_m(&y);
        if !space
            .ip
            .mul(&a)
            .add(&a.transpose().mul(&space.ip))
            .is_zero()
        {
            q_skew = false;
        }
    }
    checks.push(("ad(q)|m skew-symmetric".to_string(), q_skew));
    checks.push(("[q, h] = 0".to_string(), g.bracket_span(&q, h).is_zero()));
    checks.push(("[q, q] = 0".to_string(), g.bracket_span(&q, &q).is_zero()));
    Ok(NormalizerStructures {
        centralizer,
        centralizer_cap_m,
        h_bracket_m,
        k,
        q,
        checks,
    })
}

/// Numeric value of a scalar, for report rendering.
pub fn approx(x: &Scalar) -> f64 {
    scalar_to_f64(x)
}

/// Convenience: the one-dimensional trivial isotropy subspace setups used
/// by nilmanifold analyses (`h = 0`, `m = g`).
pub fn trivial_isotropy_space(
    g: &LieAlgebra,
    ambient_metric: QMatrix,
) -> Result<MetricReductiveSpace> {
    MetricReductiveSpace::new(
        g.clone(),
        Subspace::zero(g.dim()),
        Subspace::full(g.dim()),
        ambient_metric,
    )
}

impl MetricReductiveSpace {
    /// Rebuilds the ambient metric block-diagonally from `-B` on `h` and
    /// the inner product on `m`; used when emitting derived spaces whose
    /// original ambient form is not available.
    pub fn assemble_ambient(&self) -> QMatrix {
        self.extended_form()
    }
}

pub fn scalar_one() -> Scalar {
    Scalar::one()
}
