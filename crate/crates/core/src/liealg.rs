//! Finite-dimensional Lie algebras over the rationals, given by sparse
//! structure constants, together with the classical structure machinery:
//! Killing form, derived and lower central series, radical, nilradical,
//! centralizers, ideals, quotients, derivation algebras and Levi checks.
//!
//! All verdicts are exact. The bracket table stores only pairs `i < j`;
//! antisymmetry is by construction and the Jacobi identity is validated
//! when an algebra is built.
#![allow(clippy::needless_range_loop)] // index loops mirror the matrix math

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{symmetric_definiteness, Definiteness, EchelonBasis, QMatrix, Subspace};
use crate::rational::{format_scalar, Scalar};

pub const DEFAULT_DIMENSION_CAP: usize = 64;

/// Sparse structure table: `(i, j) -> [(k, c)]` with `i < j`, meaning
/// `[e_i, e_j] = sum c e_k`. Indices are 0-based.
pub type StructureTable = BTreeMap<(usize, usize), Vec<(usize, Scalar)>>;

#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    table: StructureTable,
    ad_cache: OnceLock<Vec<QMatrix>>,
    killing_cache: OnceLock<QMatrix>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LieAlgebra(dim {}, {} bracket pairs)",
            self.dim,
            self.table.len()
        )
    }
}

/// Validates a structure table and returns the algebra.
///
/// Checks index ranges, the dimension cap, and the Jacobi identity on all
/// basis triples `i < j < k`; antisymmetry holds by construction since only
/// `i < j` is stored.
pub fn validate_algebra(
    dim: usize,
    basis_names: Vec<String>,
    table: StructureTable,
    cap: Option<usize>,
) -> Result<LieAlgebra> {
    let cap = cap.unwrap_or(DEFAULT_DIMENSION_CAP);
    if dim == 0 {
        return Err(Error::DimensionMismatch(
            "algebra dimension must be positive".into(),
        ));
    }
    if dim > cap {
        return Err(Error::DimensionCapExceeded { dim, cap });
    }
    if basis_names.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{} basis names for dimension {dim}",
            basis_names.len()
        )));
    }
    for (&(i, j), terms) in &table {
        if i >= j || j >= dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket pair ({i}, {j}) out of range for dimension {dim}"
            )));
        }
        for &(k, _) in terms {
            if k >= dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket target {k} out of range for dimension {dim}"
                )));
            }
        }
    }
    let g = LieAlgebra {
        dim,
        basis_names,
        table,
        ad_cache: OnceLock::new(),
        killing_cache: OnceLock::new(),
    };
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let mut residual = g.bracket(&g.bracket_basis(i, j), &g.basis_vector(k));
                for (r, v) in g
                    .bracket(&g.bracket_basis(j, k), &g.basis_vector(i))
                    .into_iter()
                    .enumerate()
                {
                    residual[r] += v;
                }
                for (r, v) in g
                    .bracket(&g.bracket_basis(k, i), &g.basis_vector(j))
                    .into_iter()
                    .enumerate()
                {
                    residual[r] += v;
                }
                if residual.iter().any(|x| !x.is_zero()) {
                    return Err(Error::JacobiViolation {
                        i,
                        j,
                        k,
                        residual: residual.iter().map(format_scalar).collect(),
                    });
                }
            }
        }
    }
    Ok(g)
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::from_integer(1.into());
        v
    }

    /// `[e_i, e_j]` as a dense vector, for any index order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        if i == j {
            return v;
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        if let Some(terms) = self.table.get(&(a, b)) {
            for (k, c) in terms {
                v[*k] = if sign == 1 { c.clone() } else { -c.clone() };
            }
        }
        v
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let coeff = xi * yj;
                let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
                if let Some(terms) = self.table.get(&(a, b)) {
                    for (k, c) in terms {
                        let term = &coeff * c;
                        if neg {
                            out[*k] -= term;
                        } else {
                            out[*k] += term;
                        }
                    }
                }
            }
        }
        out
    }

    /// Adjoint matrices of all basis vectors (column `j` of `ad(e_i)` is
    /// `[e_i, e_j]`). Cached.
    pub fn ad_basis(&self) -> &[QMatrix] {
        self.ad_cache.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    let mut m = QMatrix::zeros(self.dim, self.dim);
                    for j in 0..self.dim {
                        for (k, v) in self.bracket_basis(i, j).into_iter().enumerate() {
                            if !v.is_zero() {
                                m.set(k, j, v);
                            }
                        }
                    }
                    m
                })
                .collect()
        })
    }

    pub fn ad(&self, x: &[Scalar]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.ad_basis()[i].scale(xi));
            }
        }
        m
    }

    /// Killing form `B(x, y) = trace(ad x . ad y)` as a symmetric matrix in
    /// the defining basis. Cached; ad-invariance is checked in the tests.
    pub fn killing_form(&self) -> &QMatrix {
        self.killing_cache.get_or_init(|| {
            let ads = self.ad_basis();
            let mut b = QMatrix::zeros(self.dim, self.dim);
            for i in 0..self.dim {
                for j in i..self.dim {
                    let v = ads[i].trace_mul(&ads[j]);
                    b.set(i, j, v.clone());
                    b.set(j, i, v);
                }
            }
            b
        })
    }

    pub fn killing_eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let bx = self.killing_form().mul_vec(x);
        bx.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// Span of `[a, b]` over all basis pairs of the two subspaces.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                vecs.push(self.bracket(&x, &y));
            }
        }
        Subspace::from_vectors(self.dim, vecs)
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        let full = Subspace::full(self.dim);
        self.bracket_span(&full, &full)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains(&self.bracket_span(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains(&self.bracket_span(&Subspace::full(self.dim), s))
    }

    /// Center of the algebra.
    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim))
    }

    /// `{x : [x, s] = 0}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        if s.dim() == 0 {
            return Subspace::full(self.dim);
        }
        let mut stacked: Option<QMatrix> = None;
        for v in s.basis_vectors() {
            let m = self.ad(&v);
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.vstack(&m),
            });
        }
        Subspace::from_rref(stacked.unwrap().kernel())
    }

    /// `{x : [x, s] subset of s}`; requires `s` to be a subalgebra.
    pub fn normalizer(&self, s: &Subspace) -> Result<Subspace> {
        if !self.is_subalgebra(s) {
            return Err(Error::NotASubalgebra(
                "normalizer requires a bracket-closed subspace".into(),
            ));
        }
        if s.dim() == 0 {
            return Ok(Subspace::full(self.dim));
        }
        let constraints = s.constraint_matrix();
        let mut stacked: Option<QMatrix> = None;
        for v in s.basis_vectors() {
            // [x, v] = -ad(v) x must satisfy the membership constraints of s.
            let m = constraints.mul(&self.ad(&v));
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.vstack(&m),
            });
        }
        Ok(Subspace::from_rref(stacked.unwrap().kernel()))
    }

    /// Largest ideal of the algebra contained in `k`: the fixed point of
    /// `l <- {x in l : [g, x] subset of l}`.
    pub fn largest_ideal_in(&self, k: &Subspace) -> Subspace {
        let mut l = k.clone();
        loop {
            if l.dim() == 0 {
                return l;
            }
            let constraints = l.constraint_matrix();
            let mut stacked = constraints.clone();
            for ad in self.ad_basis() {
                stacked = stacked.vstack(&constraints.mul(ad));
            }
            let next = Subspace::from_rref(stacked.kernel());
            if next == l {
                return next;
            }
            l = next;
        }
    }
}

/// Derived series, lower central series, and the solvability/nilpotency
/// verdicts they determine.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub derived_series: Vec<Subspace>,
    pub lower_central_series: Vec<Subspace>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<usize>,
}

pub fn series_analysis(g: &LieAlgebra) -> SeriesReport {
    series_of_subspace(g, &Subspace::full(g.dim()))
}

/// Series of a bracket-closed subspace, computed as subspace chains inside
/// the ambient algebra.
pub fn series_of_subspace(g: &LieAlgebra, start: &Subspace) -> SeriesReport {
    let mut derived = vec![start.clone()];
    loop {
        let last = derived.last().unwrap();
        let next = g.bracket_span(last, last);
        if &next == last {
            break;
        }
        let stop = next.is_zero();
        derived.push(next);
        if stop {
            break;
        }
    }
    let mut lower = vec![start.clone()];
    loop {
        let last = lower.last().unwrap();
        let next = g.bracket_span(start, last);
        if &next == last {
            break;
        }
        let stop = next.is_zero();
        lower.push(next);
        if stop {
            break;
        }
    }
    let is_solvable = derived.last().unwrap().is_zero();
    let is_nilpotent = lower.last().unwrap().is_zero();
    let nilpotency_class = if is_nilpotent {
        if start.is_zero() {
            Some(0)
        } else {
            Some(lower.len() - 1)
        }
    } else {
        None
    };
    SeriesReport {
        derived_series: derived,
        lower_central_series: lower,
        is_solvable,
        is_nilpotent,
        nilpotency_class,
    }
}

/// Solvable radical: the Killing-orthogonal complement of the derived
/// subalgebra, `r = {X : B(X, [g, g]) = 0}` (valid in characteristic zero).
/// The result is re-verified solvable.
pub fn radical(g: &LieAlgebra) -> Result<Subspace> {
    let derived = g.derived_subalgebra();
    let r = Subspace::full(g.dim()).orthogonal_complement_in(g.killing_form(), &derived);
    let series = series_of_subspace(g, &r);
    if !series.is_solvable {
        return Err(Error::InternalInconsistency(
            "computed radical is not solvable".into(),
        ));
    }
    Ok(r)
}

/// A subalgebra presented in its own coordinates: the restricted algebra
/// plus the row basis embedding it into the parent.
pub struct SubalgebraPresentation {
    pub algebra: LieAlgebra,
    pub basis_rows: QMatrix,
}

/// Restricts the bracket to a bracket-closed subspace and re-expresses it
/// as structure constants on the subspace's canonical basis.
pub fn subalgebra_structure(g: &LieAlgebra, s: &Subspace) -> Result<SubalgebraPresentation> {
    if !g.is_subalgebra(s) {
        return Err(Error::NotASubalgebra("cannot restrict bracket".into()));
    }
    let d = s.dim();
    if d == 0 {
        return Err(Error::DimensionMismatch(
            "zero-dimensional subalgebra".into(),
        ));
    }
    let rows = s.basis_vectors();
    let mut table = StructureTable::new();
    for i in 0..d {
        for j in i + 1..d {
            let w = g.bracket(&rows[i], &rows[j]);
            let coords = s
                .coordinates_of(&w)
                .ok_or_else(|| Error::NotASubalgebra("bracket left the subspace".into()))?;
            let terms: Vec<(usize, Scalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                table.insert((i, j), terms);
            }
        }
    }
    let names = (1..=d).map(|i| format!("x{i}")).collect();
    let algebra = validate_algebra(d, names, table, Some(DEFAULT_DIMENSION_CAP.max(d)))?;
    Ok(SubalgebraPresentation {
        algebra,
        basis_rows: s.basis().clone(),
    })
}

/// Nilradical: the largest nilpotent ideal.
///
/// Computed inside the radical `r` by the trace-form method: let `A` be the
/// associative algebra generated by the adjoint action of `r` on itself
/// together with the identity; in characteristic zero its largest nilpotent
/// ideal is `{a in A : trace(a b) = 0 for all b in A}`, and the nilradical
/// is `{x in r : ad(x)` lies in that radical`}`. The result is cross-checked
/// against the sandwich `[g, r] subset n subset ker(B) and n` nilpotent.
pub fn nilradical(g: &LieAlgebra) -> Result<Subspace> {
    let r = radical(g)?;
    let n = if r.is_zero() {
        Subspace::zero(g.dim())
    } else {
        let pres = subalgebra_structure(g, &r)?;
        let rd = pres.algebra.dim();
        let gens: Vec<QMatrix> = pres.algebra.ad_basis().to_vec();
        let hull = associative_hull(rd, &gens);
        // x in n iff trace(ad_r(x) . b) = 0 for every hull basis element b:
        // rows of the test matrix are the linear functionals x -> tr(ad_r(x) b).
        let mut test = QMatrix::zeros(hull.len(), rd);
        for (row, b) in hull.iter().enumerate() {
            for (col, gen) in gens.iter().enumerate() {
                test.set(row, col, gen.trace_mul(b));
            }
        }
        let in_r_coords = test.kernel();
        let vectors = in_r_coords
            .rows_vec()
            .into_iter()
            .map(|coords| combine(&pres.basis_rows, &coords))
            .collect();
        Subspace::from_vectors(g.dim(), vectors)
    };
    // Sandwich and nilpotency verification.
    let gr = g.bracket_span(&Subspace::full(g.dim()), &r);
    if !n.contains(&gr) {
        return Err(Error::InternalInconsistency(
            "[g, r] not contained in nilradical".into(),
        ));
    }
    let ker_b = Subspace::from_rref(g.killing_form().kernel());
    if !ker_b.contains(&n) || !r.contains(&n) {
        return Err(Error::InternalInconsistency(
            "nilradical not contained in ker(B) intersect radical".into(),
        ));
    }
    if !g.is_ideal(&n) {
        return Err(Error::InternalInconsistency(
            "nilradical is not an ideal".into(),
        ));
    }
    if !n.is_zero() && !series_of_subspace(g, &n).is_nilpotent {
        return Err(Error::InternalInconsistency(
            "nilradical is not nilpotent".into(),
        ));
    }
    Ok(n)
}

/// Basis of the associative algebra with identity generated by `gens`
/// inside End(Q^d).
fn associative_hull(d: usize, gens: &[QMatrix]) -> Vec<QMatrix> {
    let mut span = EchelonBasis::new(d * d);
    let mut basis: Vec<QMatrix> = Vec::new();
    let mut frontier: Vec<QMatrix> = Vec::new();
    let push = |m: QMatrix,
                span: &mut EchelonBasis,
                basis: &mut Vec<QMatrix>,
                frontier: &mut Vec<QMatrix>| {
        let v: Vec<Scalar> = (0..d)
            .flat_map(|r| (0..d).map(move |c| (r, c)))
            .map(|(r, c)| m.get(r, c).clone())
            .collect();
        if span.insert(v) {
            basis.push(m.clone());
            frontier.push(m);
        }
    };
    push(QMatrix::identity(d), &mut span, &mut basis, &mut frontier);
    for gmat in gens {
        push(gmat.clone(), &mut span, &mut basis, &mut frontier);
    }
    while let Some(m) = frontier.pop() {
        for gmat in gens {
            push(m.mul(gmat), &mut span, &mut basis, &mut frontier);
            push(gmat.mul(&m), &mut span, &mut basis, &mut frontier);
        }
    }
    basis
}

/// Linear combination of the rows of `rows` with the given coefficients.
pub fn combine(rows: &QMatrix, coeffs: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(rows.rows(), coeffs.len());
    let mut out = vec![Scalar::zero(); rows.cols()];
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            for j in 0..rows.cols() {
                out[j] += c * rows.get(i, j);
            }
        }
    }
    out
}

/// Bundled centralizer-style queries about a subspace.
pub struct CommutantReport {
    pub center: Subspace,
    pub centralizer: Subspace,
    pub normalizer: Result<Subspace>,
    pub derived_with: Subspace,
}

pub fn commutant_queries(g: &LieAlgebra, s: &Subspace) -> CommutantReport {
    CommutantReport {
        center: g.center(),
        centralizer: g.centralizer(s),
        normalizer: g.normalizer(s),
        derived_with: g.bracket_span(&Subspace::full(g.dim()), s),
    }
}

/// Basis of the derivation algebra `Der(g)`, or of the metric-skew
/// derivations `D(g)` when an inner product is supplied.
///
/// Solves `D[x, y] = [Dx, y] + [x, Dy]` over all basis pairs; with a metric
/// `G` the solution is sought in the space `{G^-1 S : S skew}`, which is
/// exactly the set of operators skew-symmetric with respect to `G`. The
/// returned basis is verified closed under the commutator.
pub fn derivations(g: &LieAlgebra, metric: Option<&QMatrix>) -> Result<Vec<QMatrix>> {
    let n = g.dim();
    let op_basis: Vec<QMatrix> = match metric {
        None => {
            let mut ops = Vec::with_capacity(n * n);
            for r in 0..n {
                for c in 0..n {
                    let mut m = QMatrix::zeros(n, n);
                    m.set(r, c, Scalar::from_integer(1.into()));
                    ops.push(m);
                }
            }
            ops
        }
        Some(gram) => {
            if !crate::linalg::is_positive_definite(gram) {
                return Err(Error::MetricNotPositiveDefinite(
                    "skew derivations need a positive definite metric".into(),
                ));
            }
            let inv = gram
                .inverse()
                .expect("positive definite metric is invertible");
            let mut ops = Vec::with_capacity(n * (n - 1) / 2);
            for r in 0..n {
                for c in r + 1..n {
                    let mut s = QMatrix::zeros(n, n);
                    s.set(r, c, Scalar::from_integer(1.into()));
                    s.set(c, r, Scalar::from_integer((-1).into()));
                    ops.push(inv.mul(&s));
                }
            }
            ops
        }
    };
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut system = QMatrix::zeros(pairs.len() * n, op_basis.len());
    for (col, op) in op_basis.iter().enumerate() {
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let w = g.bracket_basis(i, j);
            let dw = op.mul_vec(&w);
            let dei = op.row_of_column(i);
            let dej = op.row_of_column(j);
            let lhs1 = g.bracket(&dei, &g.basis_vector(j));
            let lhs2 = g.bracket(&g.basis_vector(i), &dej);
            for s in 0..n {
                let v = &dw[s] - &lhs1[s] - &lhs2[s];
                if !v.is_zero() {
                    system.set(p * n + s, col, v);
                }
            }
        }
    }
    let kernel = system.kernel();
    let mut solutions = Vec::with_capacity(kernel.rows());
    for coeffs in kernel.rows_vec() {
        let mut m = QMatrix::zeros(n, n);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&op_basis[k].scale(c));
            }
        }
        solutions.push(m);
    }
    // Closure under commutator, exactly.
    let mut span = EchelonBasis::new(n * n);
    for m in &solutions {
        span.insert(flatten(m));
    }
    for (a, da) in solutions.iter().enumerate() {
        for db in solutions.iter().skip(a + 1) {
            if !span.contains(&flatten(&da.commutator(db))) {
                return Err(Error::InternalInconsistency(
                    "derivation solution space not closed under commutator".into(),
                ));
            }
        }
    }
    Ok(solutions)
}

pub fn flatten(m: &QMatrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            v.push(m.get(r, c).clone());
        }
    }
    v
}

impl QMatrix {
    /// Column `i` as a vector (the image of the `i`-th basis vector).
    pub fn row_of_column(&self, i: usize) -> Vec<Scalar> {
        (0..self.rows()).map(|r| self.get(r, i).clone()).collect()
    }
}

/// Diagnostics for a claimed Levi decomposition `g = r + s`.
#[derive(Debug, Clone)]
pub struct LeviCheck {
    pub is_subalgebra: bool,
    pub complements_radical: bool,
    pub killing_nondegenerate: bool,
}

impl LeviCheck {
    pub fn ok(&self) -> bool {
        self.is_subalgebra && self.complements_radical && self.killing_nondegenerate
    }
}

/// True iff `s` is a subalgebra, complements the radical linearly, and the
/// Killing form is nondegenerate on it (Cartan semisimplicity).
pub fn verify_levi(g: &LieAlgebra, s: &Subspace) -> Result<LeviCheck> {
    let r = radical(g)?;
    let is_subalgebra = g.is_subalgebra(s);
    let complements_radical = r.intersect(s).is_zero() && r.dim() + s.dim() == g.dim();
    let killing_nondegenerate = if s.dim() == 0 {
        r.dim() == g.dim()
    } else {
        let b = s.basis().mul(g.killing_form()).mul(&s.basis().transpose());
        !b.determinant().is_zero()
    };
    Ok(LeviCheck {
        is_subalgebra,
        complements_radical,
        killing_nondegenerate,
    })
}

/// Quotient by an ideal: the induced algebra on coset representatives plus
/// the projection map (rows: quotient coordinates of each parent basis
/// vector) and the representative section.
pub struct QuotientPresentation {
    pub algebra: LieAlgebra,
    /// `q x d` matrix; applying it to a parent coordinate vector yields
    /// quotient coordinates.
    pub projection: QMatrix,
    /// Rows are parent-coordinate representatives of the quotient basis.
    pub section_rows: QMatrix,
}

pub fn quotient_algebra(g: &LieAlgebra, l: &Subspace) -> Result<QuotientPresentation> {
    if !g.is_ideal(l) {
        return Err(Error::NotAnIdeal("quotient requires an ideal".into()));
    }
    let n = g.dim();
    let (_, pivots) = g_pivots(l);
    let reps: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let q = reps.len();
    if q == 0 {
        return Err(Error::DimensionMismatch(
            "quotient by the whole algebra is empty".into(),
        ));
    }
    // Change of basis T: columns are l-basis then representatives; the
    // bottom block of T^-1 gives quotient coordinates.
    let mut cols: Vec<Vec<Scalar>> = l.basis_vectors();
    for &c in &reps {
        cols.push(g.basis_vector(c));
    }
    let t = QMatrix::from_rows(cols).transpose();
    let t_inv = t.inverse().ok_or_else(|| {
        Error::InternalInconsistency("ideal + representatives do not span".into())
    })?;
    let projection = QMatrix::from_fn(q, n, |r, c| t_inv.get(l.dim() + r, c).clone());
    let section_rows = QMatrix::from_rows(reps.iter().map(|&c| g.basis_vector(c)).collect());
    let mut table = StructureTable::new();
    for a in 0..q {
        for b in a + 1..q {
            let w = g.bracket(&section_rows.row(a), &section_rows.row(b));
            let coords = projection.mul_vec(&w);
            let terms: Vec<(usize, Scalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                table.insert((a, b), terms);
            }
        }
    }
    let names = reps
        .iter()
        .map(|&c| format!("{}~", g.basis_names[c]))
        .collect();
    let algebra = validate_algebra(q, names, table, Some(DEFAULT_DIMENSION_CAP.max(q)))?;
    // Projection must be a Lie homomorphism on all basis pairs.
    for i in 0..n {
        for j in i + 1..n {
            let lhs = projection.mul_vec(&g.bracket_basis(i, j));
            let rhs = algebra.bracket(&projection.row_of_column(i), &projection.row_of_column(j));
            if lhs != rhs {
                return Err(Error::InternalInconsistency(
                    "quotient projection is not a homomorphism".into(),
                ));
            }
        }
    }
    Ok(QuotientPresentation {
        algebra,
        projection,
        section_rows,
    })
}

fn g_pivots(l: &Subspace) -> (QMatrix, Vec<usize>) {
    l.basis().rref()
}

/// Killing form restricted to a subspace, as a Gram matrix on its basis.
pub fn killing_gram(g: &LieAlgebra, s: &Subspace) -> QMatrix {
    s.basis().mul(g.killing_form()).mul(&s.basis().transpose())
}

/// Sign of the Killing form on a subspace.
pub fn killing_definiteness(g: &LieAlgebra, s: &Subspace) -> Definiteness {
    symmetric_definiteness(&killing_gram(g, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    type TableEntries<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

    pub fn table(entries: TableEntries) -> StructureTable {
        let mut t = StructureTable::new();
        for &(i, j, terms) in entries {
            t.insert((i, j), terms.iter().map(|&(k, c)| (k, int(c))).collect());
        }
        t
    }

    pub fn named(dim: usize) -> Vec<String> {
        (1..=dim).map(|i| format!("e{i}")).collect()
    }

    pub fn su2() -> LieAlgebra {
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
        validate_algebra(
            3,
            named(3),
            table(&[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])]),
            None,
        )
        .unwrap()
    }

    pub fn su2_plus_r() -> LieAlgebra {
        validate_algebra(
            4,
            named(4),
            table(&[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])]),
            None,
        )
        .unwrap()
    }

    pub fn heisenberg3() -> LieAlgebra {
        validate_algebra(3, named(3), table(&[(0, 1, &[(2, 1)])]), None).unwrap()
    }

    pub fn filiform4() -> LieAlgebra {
        validate_algebra(
            4,
            named(4),
            table(&[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])]),
            None,
        )
        .unwrap()
    }

    fn abelian(n: usize) -> LieAlgebra {
        validate_algebra(n, named(n), StructureTable::new(), None).unwrap()
    }

    fn span(g: &LieAlgebra, idxs: &[usize]) -> Subspace {
        Subspace::from_vectors(g.dim(), idxs.iter().map(|&i| g.basis_vector(i)).collect())
    }

    #[test]
    fn validation_accepts_and_rejects() {
        assert!(validate_algebra(3, named(3), StructureTable::new(), None).is_ok());
        su2();
        // [e1,e2]=e3, [e1,e3]=e1 violates Jacobi.
        let bad = validate_algebra(
            3,
            named(3),
            table(&[(0, 1, &[(2, 1)]), (0, 2, &[(0, 1)])]),
            None,
        );
        assert!(matches!(bad, Err(Error::JacobiViolation { .. })));
        let capped = validate_algebra(5, named(5), StructureTable::new(), Some(4));
        assert!(matches!(capped, Err(Error::DimensionCapExceeded { .. })));
    }

    #[test]
    fn killing_form_values() {
        let g = abelian(3);
        assert!(g.killing_form().is_zero());
        let s = su2();
        assert_eq!(s.killing_form(), &QMatrix::identity(3).scale(&int(-2)));
        let sr = su2_plus_r();
        let b = sr.killing_form();
        assert_eq!(b.get(0, 0), &int(-2));
        assert_eq!(b.get(3, 3), &int(0));
    }

    #[test]
    fn killing_form_ad_invariant() {
        for g in [su2(), su2_plus_r(), filiform4(), heisenberg3()] {
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    for k in 0..g.dim() {
                        let lhs = g.killing_eval(&g.bracket_basis(i, j), &g.basis_vector(k));
                        let rhs = g.killing_eval(&g.basis_vector(j), &g.bracket_basis(i, k));
                        assert_eq!(lhs, -rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn series_classification() {
        let report = series_analysis(&abelian(3));
        assert!(report.is_solvable && report.is_nilpotent);
        assert_eq!(report.nilpotency_class, Some(1));

        let report = series_analysis(&heisenberg3());
        assert_eq!(report.nilpotency_class, Some(2));

        let report = series_analysis(&filiform4());
        assert_eq!(report.nilpotency_class, Some(3));

        let report = series_analysis(&su2());
        assert!(!report.is_solvable && !report.is_nilpotent);
    }

    #[test]
    fn radical_and_nilradical() {
        let s = su2();
        assert!(radical(&s).unwrap().is_zero());
        assert!(nilradical(&s).unwrap().is_zero());

        let sr = su2_plus_r();
        let r = radical(&sr).unwrap();
        assert_eq!(r, span(&sr, &[3]));
        assert_eq!(nilradical(&sr).unwrap(), span(&sr, &[3]));

        let h = heisenberg3();
        assert_eq!(nilradical(&h).unwrap(), Subspace::full(3));
    }

    #[test]
    fn nilradical_strict_inside_killing_kernel() {
        // One acting element with two rotate-and-scale planes whose weight
        // squares cancel, so B vanishes identically while the algebra is
        // not nilpotent: ker B strictly exceeds the nilradical.
        let g = validate_algebra(
            5,
            named(5),
            table(&[
                (0, 1, &[(1, 1), (2, 1)]),
                (0, 2, &[(1, -1), (2, 1)]),
                (0, 3, &[(3, -1), (4, 1)]),
                (0, 4, &[(3, -1), (4, -1)]),
            ]),
            None,
        )
        .unwrap();
        assert!(g.killing_form().is_zero());
        let n = nilradical(&g).unwrap();
        assert_eq!(n, span(&g, &[1, 2, 3, 4]));
    }

    #[test]
    fn commutant_and_ideals() {
        let sr = su2_plus_r();
        assert_eq!(sr.center(), span(&sr, &[3]));
        let h = Subspace::from_vectors(
            4,
            vec![{
                let mut v = sr.basis_vector(2);
                v[3] = int(1);
                v
            }],
        );
        let c = sr.centralizer(&h);
        assert_eq!(c, span(&sr, &[2, 3]));
        assert_eq!(sr.normalizer(&h).unwrap(), span(&sr, &[2, 3]));
        // Non-subalgebra input for the normalizer errors out.
        let f = filiform4();
        let not_closed = span(&f, &[0, 1]);
        assert!(matches!(
            f.normalizer(&not_closed),
            Err(Error::NotASubalgebra(_))
        ));

        let k = span(&sr, &[2, 3]);
        assert_eq!(sr.largest_ideal_in(&k), span(&sr, &[3]));
        assert_eq!(sr.largest_ideal_in(&Subspace::full(4)), Subspace::full(4));
        assert_eq!(sr.largest_ideal_in(&Subspace::zero(4)), Subspace::zero(4));
    }

    #[test]
    fn quotients() {
        let sr = su2_plus_r();
        let q = quotient_algebra(&sr, &Subspace::zero(4)).unwrap();
        assert_eq!(q.algebra.dim(), 4);
        let q = quotient_algebra(&sr, &span(&sr, &[3])).unwrap();
        assert_eq!(q.algebra.dim(), 3);
        assert!(radical(&q.algebra).unwrap().is_zero());
        // Quotient by a non-ideal is rejected.
        let bad = quotient_algebra(&sr, &span(&sr, &[0]));
        assert!(matches!(bad, Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn derivation_dimensions() {
        let a3 = abelian(3);
        assert_eq!(derivations(&a3, None).unwrap().len(), 9);
        assert_eq!(
            derivations(&a3, Some(&QMatrix::identity(3))).unwrap().len(),
            3
        );

        let s = su2();
        assert_eq!(derivations(&s, None).unwrap().len(), 3);
        let minus_b = s.killing_form().scale(&int(-1));
        assert_eq!(derivations(&s, Some(&minus_b)).unwrap().len(), 3);
    }

    #[test]
    fn levi_verification() {
        let sr = su2_plus_r();
        let s = span(&sr, &[0, 1, 2]);
        assert!(verify_levi(&sr, &s).unwrap().ok());
        let bad = span(&sr, &[3]);
        let check = verify_levi(&sr, &bad).unwrap();
        assert!(!check.ok());
        assert!(!check.killing_nondegenerate);
    }
}
