//! Builders for the example spaces: the compact 4-dimensional family with
//! one-dimensional isotropy, the Euclidean space presented with a solvable
//! transitive group, Heisenberg-type algebras from Clifford modules, the
//! one-dimensional solvable extensions of such algebras, products of a
//! simple compact algebra with diagonal isotropy, and the negative
//! controls. Everything is validated eagerly.
#![allow(clippy::needless_range_loop)] // index loops mirror the matrix math

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gocheck::{nil_sample_pairs, solve_derivation_pair, SampleConfig, TwoStepMetricAlgebra};
use crate::homspace::{trivial_isotropy_space, MetricReductiveSpace};
use crate::liealg::{derivations, flatten, validate_algebra, LieAlgebra, StructureTable};
use crate::linalg::{EchelonBasis, QMatrix, Subspace};
use crate::rational::{format_scalar, int, Scalar};

/// A module over a Clifford algebra: `z_dim` pairwise anticommuting skew
/// complex structures on `R^{a_dim}`.
#[derive(Clone, Debug)]
pub struct CliffordModule {
    pub z_dim: usize,
    pub a_dim: usize,
    pub j: Vec<QMatrix>,
}

impl CliffordModule {
    /// Validates the relations `J_i^2 = -I`, `J_i J_j + J_j J_i = 0`, and
    /// skewness of each generator.
    pub fn new(a_dim: usize, j: Vec<QMatrix>) -> Result<Self> {
        let z_dim = j.len();
        let id = QMatrix::identity(a_dim);
        for (i, ji) in j.iter().enumerate() {
            if ji.rows() != a_dim || ji.cols() != a_dim {
                return Err(Error::CliffordRelationViolation(format!(
                    "generator {i} is not {a_dim} x {a_dim}"
                )));
            }
            if !ji.add(&ji.transpose()).is_zero() {
                return Err(Error::CliffordRelationViolation(format!(
                    "generator {i} is not skew-symmetric"
                )));
            }
            if !ji.mul(ji).add(&id).is_zero() {
                return Err(Error::CliffordRelationViolation(format!(
                    "generator {i} does not square to -identity"
                )));
            }
            for (k, jk) in j.iter().enumerate().skip(i + 1) {
                if !ji.mul(jk).add(&jk.mul(ji)).is_zero() {
                    return Err(Error::CliffordRelationViolation(format!(
                        "generators {i} and {k} do not anticommute"
                    )));
                }
            }
        }
        Ok(Self { z_dim, a_dim, j })
    }
}

/// Basis multiplication table of a composition algebra: `e_i e_j` is a
/// signed basis element.
type SignedTable = Vec<Vec<(usize, i64)>>;

/// One Cayley-Dickson doubling step. Conjugation fixes `e_0` and negates
/// the other basis elements throughout the tower.
fn cayley_dickson(table: &SignedTable) -> SignedTable {
    let n = table.len();
    let conj = |idx: usize, sign: i64| -> (usize, i64) {
        if idx == 0 {
            (idx, sign)
        } else {
            (idx, -sign)
        }
    };
    let mut out = vec![vec![(0usize, 0i64); 2 * n]; 2 * n];
    for i in 0..2 * n {
        for j in 0..2 * n {
            // (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
            out[i][j] = match (i < n, j < n) {
                (true, true) => table[i][j],
                (true, false) => {
                    // (e_i, 0)(0, e_{j-n}) = (0, e_{j-n} e_i)
                    let (k, s) = table[j - n][i];
                    (k + n, s)
                }
                (false, true) => {
                    // (0, e_{i-n})(e_j, 0) = (0, e_{i-n} conj(e_j))
                    let (jc, sc) = conj(j, 1);
                    let (k, s) = table[i - n][jc];
                    (k + n, s * sc)
                }
                (false, false) => {
                    // (0, e_{i-n})(0, e_{j-n}) = (-conj(e_{j-n}) e_{i-n}, 0)
                    let (jc, sc) = conj(j - n, 1);
                    let (k, s) = table[jc][i - n];
                    (k, -s * sc)
                }
            };
        }
    }
    out
}

/// Left multiplication matrices by the first five imaginary units of the
/// octonions: five integer skew 8x8 matrices satisfying the Clifford
/// relations, re-verified at construction.
pub fn clifford_module_cl5_r8() -> Result<CliffordModule> {
    let reals: SignedTable = vec![vec![(0, 1)]];
    let complexes = cayley_dickson(&reals);
    let quaternions = cayley_dickson(&complexes);
    let octonions = cayley_dickson(&quaternions);
    let mut generators = Vec::with_capacity(5);
    for unit in 1..=5 {
        let mut m = QMatrix::zeros(8, 8);
        for col in 0..8 {
            let (row, sign) = octonions[unit][col];
            m.set(row, col, int(sign));
        }
        generators.push(m);
    }
    CliffordModule::new(8, generators)
}

/// Heisenberg-type metric algebra attached to a Clifford module: the
/// bracket of horizontal vectors is `([X, Y], Z) = (J_Z X, Y)`, the center
/// is the `z`-block, and the metric is Euclidean on both blocks.
pub fn htype_algebra(module: &CliffordModule) -> Result<(LieAlgebra, QMatrix)> {
    let a = module.a_dim;
    let z = module.z_dim;
    let dim = a + z;
    let mut table = StructureTable::new();
    for i in 0..a {
        for jdx in i + 1..a {
            let mut terms = Vec::new();
            for (k, jk) in module.j.iter().enumerate() {
                // ([a_i, a_j], z_k) = (J_k a_i, a_j) = (J_k)_{j, i}
                let c = jk.get(jdx, i).clone();
                if !c.is_zero() {
                    terms.push((a + k, c));
                }
            }
            if !terms.is_empty() {
                table.insert((i, jdx), terms);
            }
        }
    }
    let names: Vec<String> = (1..=a)
        .map(|i| format!("a{i}"))
        .chain((1..=z).map(|i| format!("z{i}")))
        .collect();
    let algebra = validate_algebra(dim, names, table, None)?;
    // The center must be exactly the z-block (the J-map is injective).
    let z_span = Subspace::from_vectors(dim, (a..dim).map(|i| algebra.basis_vector(i)).collect());
    if algebra.center() != z_span {
        return Err(Error::CliffordRelationViolation(
            "center of the constructed algebra differs from the z-block".into(),
        ));
    }
    Ok((algebra, QMatrix::identity(dim)))
}

/// Which reductive complement a diagonal-isotropy product space uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LedgerObataComplement {
    /// The Killing-orthogonal complement (coefficient sums zero).
    KillingOrthogonal,
    /// The ideal spanned by all factors but the last.
    FactorIdeal,
}

#[derive(Clone, Debug)]
pub enum ConstructionParams {
    /// Compact group su(2) (+) R with one-dimensional diagonal isotropy and
    /// the invariant metric scaling the central direction by `alpha`;
    /// complement taken metric-orthogonally, so the nilradical escapes it.
    U2Sphere { alpha: Scalar },
    /// Euclidean space `R^{2n+1}` presented with a solvable transitive
    /// group: `(R^{2n} x| z) x| su(n)` with isotropy su(n).
    EuclideanGo { n: usize },
    /// Heisenberg-type algebra of an arbitrary validated Clifford module.
    Htype { module: CliffordModule },
    /// The 13-dimensional Heisenberg-type algebra on the fixed Cl(5)
    /// module over R^8.
    Heisenberg13,
    /// One-dimensional solvable extension of a Heisenberg-type algebra by
    /// the central skew derivation, presented with the residual derivation
    /// algebra as isotropy. Defaults to the 13-dimensional base.
    Gonil2Extension {
        base: Option<CliffordModule>,
        c_scale: Scalar,
    },
    /// `copies`-fold product of su(2) with diagonal isotropy and metric
    /// `-B`, with a choice of invariant complement.
    LedgerObata {
        copies: usize,
        variant: LedgerObataComplement,
    },
    /// Negative control: class-3 filiform algebra, trivial isotropy.
    Filiform4,
    /// Negative control: solvable algebra whose Killing form vanishes
    /// identically while the algebra is not nilpotent.
    ComplexWeightSolvable,
}

/// A finished construction: either a full metric reductive space or a
/// nilpotent metric algebra meant for the derivation-based check.
pub enum Constructed {
    Space(Box<MetricReductiveSpace>),
    NilmanifoldAlgebra {
        algebra: LieAlgebra,
        metric: QMatrix,
    },
}

impl Constructed {
    pub fn space(&self) -> Option<&MetricReductiveSpace> {
        match self {
            Constructed::Space(s) => Some(s),
            Constructed::NilmanifoldAlgebra { .. } => None,
        }
    }

    pub fn into_space(self) -> Option<MetricReductiveSpace> {
        match self {
            Constructed::Space(s) => Some(*s),
            Constructed::NilmanifoldAlgebra { .. } => None,
        }
    }
}

pub fn construct(params: &ConstructionParams) -> Result<Constructed> {
    match params {
        ConstructionParams::U2Sphere { alpha } => {
            u2_sphere(alpha).map(|s| Constructed::Space(Box::new(s)))
        }
        ConstructionParams::EuclideanGo { n } => {
            euclidean_go(*n).map(|s| Constructed::Space(Box::new(s)))
        }
        ConstructionParams::Htype { module } => {
            let (algebra, metric) = htype_algebra(module)?;
            Ok(Constructed::NilmanifoldAlgebra { algebra, metric })
        }
        ConstructionParams::Heisenberg13 => {
            let (algebra, metric) = htype_algebra(&clifford_module_cl5_r8()?)?;
            Ok(Constructed::NilmanifoldAlgebra { algebra, metric })
        }
        ConstructionParams::Gonil2Extension { base, c_scale } => {
            let module = match base {
                Some(m) => m.clone(),
                None => clifford_module_cl5_r8()?,
            };
            gonil2_extension(&module, c_scale).map(|s| Constructed::Space(Box::new(s)))
        }
        ConstructionParams::LedgerObata { copies, variant } => {
            ledger_obata(*copies, *variant).map(|s| Constructed::Space(Box::new(s)))
        }
        ConstructionParams::Filiform4 => {
            let mut t = StructureTable::new();
            t.insert((0, 1), vec![(2, int(1))]);
            t.insert((0, 2), vec![(3, int(1))]);
            let names = (1..=4).map(|i| format!("e{i}")).collect();
            let g = validate_algebra(4, names, t, None)?;
            trivial_isotropy_space(&g, QMatrix::identity(4))
                .map(|s| Constructed::Space(Box::new(s)))
        }
        ConstructionParams::ComplexWeightSolvable => {
            complex_weight_solvable().map(|s| Constructed::Space(Box::new(s)))
        }
    }
}

fn u2_sphere(alpha: &Scalar) -> Result<MetricReductiveSpace> {
    if !alpha.is_positive() {
        return Err(Error::Construction("alpha must be positive".into()));
    }
    let mut t = StructureTable::new();
    t.insert((0, 1), vec![(2, int(1))]);
    t.insert((1, 2), vec![(0, int(1))]);
    t.insert((0, 2), vec![(1, int(-1))]);
    let names = (1..=4).map(|i| format!("e{i}")).collect();
    let g = validate_algebra(4, names, t, None)?;
    let mut metric = QMatrix::identity(4);
    metric.set(3, 3, alpha.clone());
    let h = Subspace::from_vectors(4, vec![vec![int(0), int(0), int(1), int(1)]]);
    let m = Subspace::full(4).orthogonal_complement_in(&metric, &h);
    MetricReductiveSpace::new(g, h, m, metric)
}

/// Complex matrix as a pair of integer real/imaginary parts.
#[derive(Clone)]
struct ComplexMat {
    re: Vec<Vec<i64>>,
    im: Vec<Vec<i64>>,
}

impl ComplexMat {
    fn zeros(n: usize) -> Self {
        Self {
            re: vec![vec![0; n]; n],
            im: vec![vec![0; n]; n],
        }
    }

    /// Realification: `a + bi` becomes the block `[[a, -b], [b, a]]`.
    fn realify(&self) -> QMatrix {
        let n = self.re.len();
        let mut m = QMatrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                let (a, b) = (self.re[r][c], self.im[r][c]);
                if a != 0 {
                    m.set(2 * r, 2 * c, int(a));
                    m.set(2 * r + 1, 2 * c + 1, int(a));
                }
                if b != 0 {
                    m.set(2 * r, 2 * c + 1, int(-b));
                    m.set(2 * r + 1, 2 * c, int(b));
                }
            }
        }
        m
    }
}

/// Real matrices of the standard su(n) basis acting on `R^{2n}`.
fn su_n_real_basis(n: usize) -> Vec<QMatrix> {
    let mut out = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            let mut m = ComplexMat::zeros(n);
            m.re[j][k] = 1;
            m.re[k][j] = -1;
            out.push(m.realify());
            let mut m = ComplexMat::zeros(n);
            m.im[j][k] = 1;
            m.im[k][j] = 1;
            out.push(m.realify());
        }
    }
    for j in 0..n - 1 {
        let mut m = ComplexMat::zeros(n);
        m.im[j][j] = 1;
        m.im[j + 1][j + 1] = -1;
        out.push(m.realify());
    }
    out
}

fn coords_in_matrix_span(basis: &[QMatrix], target: &QMatrix) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let cols = QMatrix::from_rows(basis.iter().map(flatten).collect()).transpose();
    cols.solve(&flatten(target))
}

fn euclidean_go(n: usize) -> Result<MetricReductiveSpace> {
    if n < 2 {
        return Err(Error::Construction("need n >= 2".into()));
    }
    let su_basis = su_n_real_basis(n);
    let su_dim = su_basis.len();
    let dim = 2 * n + 1 + su_dim;
    let z_index = 2 * n;
    // The central complex structure J = realification of i * identity.
    let j_full = {
        let mut m = ComplexMat::zeros(n);
        for d in 0..n {
            m.im[d][d] = 1;
        }
        m.realify()
    };
    let mut table = StructureTable::new();
    // [z, x_i] = J x_i
    for i in 0..2 * n {
        let col = j_full.row_of_column(i);
        let terms: Vec<(usize, Scalar)> = col
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if !terms.is_empty() {
            table.insert(
                (i, z_index),
                terms.into_iter().map(|(k, c)| (k, -c)).collect(),
            );
        }
    }
    // [A_t, x_i] = A_t x_i, stored as (x_i, A_t) with a sign flip.
    for (t, a) in su_basis.iter().enumerate() {
        for i in 0..2 * n {
            let col = a.row_of_column(i);
            let terms: Vec<(usize, Scalar)> = col
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, -c))
                .collect();
            if !terms.is_empty() {
                table.insert((i, z_index + 1 + t), terms);
            }
        }
    }
    // [A_s, A_t] = matrix commutator, expanded in the su basis.
    for s in 0..su_dim {
        for t in s + 1..su_dim {
            let comm = su_basis[s].commutator(&su_basis[t]);
            let coords = coords_in_matrix_span(&su_basis, &comm).ok_or_else(|| {
                Error::Construction("su(n) commutator left the chosen basis span".into())
            })?;
            let terms: Vec<(usize, Scalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (z_index + 1 + k, c))
                .collect();
            if !terms.is_empty() {
                table.insert((z_index + 1 + s, z_index + 1 + t), terms);
            }
        }
    }
    let names: Vec<String> = (1..=2 * n)
        .map(|i| format!("x{i}"))
        .chain(std::iter::once("z".to_string()))
        .chain((1..=su_dim).map(|i| format!("A{i}")))
        .collect();
    let g = validate_algebra(dim, names, table, None)?;
    let h = Subspace::from_vectors(dim, (z_index + 1..dim).map(|i| g.basis_vector(i)).collect());
    let m = Subspace::from_vectors(dim, (0..=z_index).map(|i| g.basis_vector(i)).collect());
    MetricReductiveSpace::new(g, h, m, QMatrix::identity(dim))
}

/// Skew derivation algebra of a two-step metric algebra, split into its
/// (required one-dimensional) center and the complementary derived ideal.
pub struct DerivationSplit {
    pub all: Vec<QMatrix>,
    pub central: QMatrix,
    pub derived_basis: Vec<QMatrix>,
    /// Coefficient-space presentation of the derived ideal inside `all`.
    pub derived_coefficients: Subspace,
}

pub fn split_derivation_algebra(algebra: &LieAlgebra, metric: &QMatrix) -> Result<DerivationSplit> {
    let all = derivations(algebra, Some(metric))?;
    let d = all.len();
    if d == 0 {
        return Err(Error::Construction("no skew derivations".into()));
    }
    // Center of the derivation algebra: kernel of c -> [sum c_t D_t, D_s].
    let n2 = algebra.dim() * algebra.dim();
    let mut rows = Vec::new();
    for s in 0..d {
        // block of n^2 rows: commutator with D_s
        for entry in 0..n2 {
            let mut row = vec![Scalar::zero(); d];
            for (t, dt) in all.iter().enumerate() {
                let comm = dt.commutator(&all[s]);
                row[t] = flatten(&comm)[entry].clone();
            }
            rows.push(row);
        }
    }
    let center_coeffs = QMatrix::from_rows(rows).kernel();
    if center_coeffs.rows() != 1 {
        return Err(Error::Construction(format!(
            "derivation algebra center has dimension {}, need 1",
            center_coeffs.rows()
        )));
    }
    let central = combine_matrices(&all, &center_coeffs.row(0));
    // Derived ideal in coefficient space.
    let mut derived = EchelonBasis::new(d);
    for s in 0..d {
        for t in s + 1..d {
            let comm = all[s].commutator(&all[t]);
            let coords = coords_in_matrix_span(&all, &comm).ok_or_else(|| {
                Error::Construction("derivation commutator left the solution span".into())
            })?;
            derived.insert(coords);
        }
    }
    let derived_coefficients = derived.to_subspace();
    if derived_coefficients.dim() + 1 != d
        || derived_coefficients.contains_vector(&center_coeffs.row(0))
    {
        return Err(Error::Construction(
            "derivation algebra does not split as center (+) derived ideal".into(),
        ));
    }
    let derived_basis = derived_coefficients
        .basis_vectors()
        .iter()
        .map(|coeffs| combine_matrices(&all, coeffs))
        .collect();
    Ok(DerivationSplit {
        all,
        central,
        derived_basis,
        derived_coefficients,
    })
}

fn combine_matrices(basis: &[QMatrix], coeffs: &[Scalar]) -> QMatrix {
    let mut out = QMatrix::zeros(basis[0].rows(), basis[0].cols());
    for (m, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// Verifies the two hypotheses of the solvable-extension construction at
/// the default deterministic sample set: (1) each `J_X(Y)` is matched by a
/// derivation from the derived ideal vanishing on `X`; (2) the joint
/// annihilator of `(X, Y)` in the full derivation algebra never lies
/// inside the derived ideal.
pub fn verify_gonil2_hypotheses(
    two_step: &TwoStepMetricAlgebra,
    split: &DerivationSplit,
    config: &SampleConfig,
) -> Result<()> {
    let pairs = nil_sample_pairs(two_step, config);
    for (x, y) in &pairs {
        let target = two_step.j_apply(x, y);
        if solve_derivation_pair(&two_step.algebra, &split.derived_basis, x, y, &target).is_none() {
            return Err(Error::Gonil2HypothesisFailed {
                which: 1,
                sample: sample_label(x, y),
            });
        }
        // Joint annihilator inside the full derivation algebra.
        let n = two_step.algebra.dim();
        let d = split.all.len();
        let mut lhs = QMatrix::zeros(2 * n, d);
        for (col, dm) in split.all.iter().enumerate() {
            let dx = dm.mul_vec(x);
            let dy = dm.mul_vec(y);
            for r in 0..n {
                lhs.set(r, col, dx[r].clone());
                lhs.set(n + r, col, dy[r].clone());
            }
        }
        let annihilator = lhs.kernel();
        let escapes = (0..annihilator.rows()).any(|r| {
            !split
                .derived_coefficients
                .contains_vector(&annihilator.row(r))
        });
        if !escapes {
            return Err(Error::Gonil2HypothesisFailed {
                which: 2,
                sample: sample_label(x, y),
            });
        }
    }
    Ok(())
}

fn sample_label(x: &[Scalar], y: &[Scalar]) -> String {
    format!(
        "x = [{}], y = [{}]",
        x.iter().map(format_scalar).collect::<Vec<_>>().join(", "),
        y.iter().map(format_scalar).collect::<Vec<_>>().join(", ")
    )
}

/// Solvable extension of a Heisenberg-type algebra by the central skew
/// derivation, presented with the derived derivation ideal as isotropy:
/// `g = (n (+) c) x| d`, `m = n (+) c`, metric Euclidean on `n` and
/// `c_scale` on `c`. Both hypotheses are verified at the default sample
/// set before the space is emitted.
fn gonil2_extension(module: &CliffordModule, c_scale: &Scalar) -> Result<MetricReductiveSpace> {
    if !c_scale.is_positive() {
        return Err(Error::Construction("c_scale must be positive".into()));
    }
    let (nil, nil_metric) = htype_algebra(module)?;
    let two_step = TwoStepMetricAlgebra::new(nil.clone(), nil_metric.clone())?;
    let split = split_derivation_algebra(&nil, &nil_metric)?;
    verify_gonil2_hypotheses(&two_step, &split, &SampleConfig::default())?;
    let nd = nil.dim();
    let dd = split.derived_basis.len();
    let dim = nd + 1 + dd;
    let u_index = nd;
    let mut table = StructureTable::new();
    for (&(i, j), terms) in nil.table() {
        table.insert((i, j), terms.clone());
    }
    // [x, u] = -central(x) for x in n (stored with i < j).
    for i in 0..nd {
        let col = split.central.row_of_column(i);
        let terms: Vec<(usize, Scalar)> = col
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, -c))
            .collect();
        if !terms.is_empty() {
            table.insert((i, u_index), terms);
        }
    }
    // [x, d_t] = -D_t(x); [u, d_t] = 0.
    for (t, dm) in split.derived_basis.iter().enumerate() {
        for i in 0..nd {
            let col = dm.row_of_column(i);
            let terms: Vec<(usize, Scalar)> = col
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, -c))
                .collect();
            if !terms.is_empty() {
                table.insert((i, u_index + 1 + t), terms);
            }
        }
    }
    // [d_s, d_t] expanded over the derived basis.
    for s in 0..dd {
        for t in s + 1..dd {
            let comm = split.derived_basis[s].commutator(&split.derived_basis[t]);
            let coords = coords_in_matrix_span(&split.derived_basis, &comm).ok_or_else(|| {
                Error::Construction("derived derivation ideal is not bracket-closed".into())
            })?;
            let terms: Vec<(usize, Scalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (u_index + 1 + k, c))
                .collect();
            if !terms.is_empty() {
                table.insert((u_index + 1 + s, u_index + 1 + t), terms);
            }
        }
    }
    let names: Vec<String> = nil
        .basis_names()
        .iter()
        .cloned()
        .chain(std::iter::once("u".to_string()))
        .chain((1..=dd).map(|i| format!("d{i}")))
        .collect();
    let g = validate_algebra(dim, names, table, None)?;
    let h = Subspace::from_vectors(dim, (u_index + 1..dim).map(|i| g.basis_vector(i)).collect());
    let m = Subspace::from_vectors(dim, (0..=u_index).map(|i| g.basis_vector(i)).collect());
    let mut metric = QMatrix::identity(dim);
    metric.set(u_index, u_index, c_scale.clone());
    MetricReductiveSpace::new(g, h, m, metric)
}

fn ledger_obata(copies: usize, variant: LedgerObataComplement) -> Result<MetricReductiveSpace> {
    if copies < 2 {
        return Err(Error::Construction("need at least two factors".into()));
    }
    let dim = 3 * copies;
    let mut table = StructureTable::new();
    for block in 0..copies {
        let b = 3 * block;
        table.insert((b, b + 1), vec![(b + 2, int(1))]);
        table.insert((b + 1, b + 2), vec![(b, int(1))]);
        table.insert((b, b + 2), vec![(b + 1, int(-1))]);
    }
    let names: Vec<String> = (0..copies)
        .flat_map(|c| (1..=3).map(move |i| format!("e{i}_{}", c + 1)))
        .collect();
    let g = validate_algebra(dim, names, table, None)?;
    let mut h_vectors = Vec::new();
    for i in 0..3 {
        let mut v = vec![Scalar::zero(); dim];
        for block in 0..copies {
            v[3 * block + i] = Scalar::one();
        }
        h_vectors.push(v);
    }
    let h = Subspace::from_vectors(dim, h_vectors);
    let metric = g.killing_form().scale(&int(-1));
    let m = match variant {
        LedgerObataComplement::KillingOrthogonal => {
            Subspace::full(dim).orthogonal_complement_in(g.killing_form(), &h)
        }
        LedgerObataComplement::FactorIdeal => Subspace::from_vectors(
            dim,
            (0..3 * (copies - 1)).map(|i| g.basis_vector(i)).collect(),
        ),
    };
    MetricReductiveSpace::new(g, h, m, metric)
}

fn complex_weight_solvable() -> Result<MetricReductiveSpace> {
    // One acting element with two rotate-and-scale planes of weights 1 + i
    // and -1 + i: the squares cancel, so B vanishes identically while
    // ad(e1) is not nilpotent. This makes ker B strictly larger than the
    // nilradical.
    let mut t = StructureTable::new();
    t.insert((0, 1), vec![(1, int(1)), (2, int(1))]);
    t.insert((0, 2), vec![(1, int(-1)), (2, int(1))]);
    t.insert((0, 3), vec![(3, int(-1)), (4, int(1))]);
    t.insert((0, 4), vec![(3, int(-1)), (4, int(-1))]);
    let names = (1..=5).map(|i| format!("e{i}")).collect();
    let g = validate_algebra(5, names, t, None)?;
    trivial_isotropy_space(&g, QMatrix::identity(5))
}
