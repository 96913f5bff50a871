//! Property and cross-oracle tests: the exact identities every constructed
//! object must satisfy, sampled-invariant checks on the geodesic orbit
//! corpus, and agreement between the two independent geodesic orbit
//! criteria on the small nilpotent corpus.

use num_traits::Zero;
use proptest::prelude::*;

use gorbit::audit::{strucrad1_audit, AuditPolicy, ClauseStatus};
use gorbit::constructions::{
    clifford_module_cl5_r8, construct, htype_algebra, Constructed, ConstructionParams,
    LedgerObataComplement,
};
use gorbit::gocheck::{
    geodesic_graph_solve, go_check, nil_go_check, principal_isotropy_dim, GOVerdict, GraphOutcome,
    SampleConfig, SampleRng, TwoStepMetricAlgebra,
};
use gorbit::homspace::{
    killing_operator_decomposition, submodule_decomposition, trivial_isotropy_space, u_map,
    MetricReductiveSpace, SpectrumMode,
};
use gorbit::liealg::{nilradical, radical, validate_algebra, LieAlgebra, StructureTable};
use gorbit::linalg::{QMatrix, Subspace};
use gorbit::rational::{format_scalar, int, parse_scalar, Scalar};

fn named(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

type TableEntries<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

fn algebra(dim: usize, entries: TableEntries) -> LieAlgebra {
    let mut t = StructureTable::new();
    for &(i, j, terms) in entries {
        t.insert((i, j), terms.iter().map(|&(k, c)| (k, int(c))).collect());
    }
    validate_algebra(dim, named(dim), t, None).unwrap()
}

fn su2_plus_r() -> LieAlgebra {
    algebra(
        4,
        &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])],
    )
}

fn space_of(params: &ConstructionParams) -> MetricReductiveSpace {
    match construct(params).unwrap() {
        Constructed::Space(s) => *s,
        _ => panic!("expected a space"),
    }
}

fn go_corpus() -> Vec<(String, MetricReductiveSpace)> {
    vec![
        (
            "u2_sphere_a2".into(),
            space_of(&ConstructionParams::U2Sphere { alpha: int(2) }),
        ),
        (
            "euclidean_go_n2".into(),
            space_of(&ConstructionParams::EuclideanGo { n: 2 }),
        ),
        (
            "ledger_obata_3_killing".into(),
            space_of(&ConstructionParams::LedgerObata {
                copies: 3,
                variant: LedgerObataComplement::KillingOrthogonal,
            }),
        ),
        (
            "ledger_obata_3_ideal".into(),
            space_of(&ConstructionParams::LedgerObata {
                copies: 3,
                variant: LedgerObataComplement::FactorIdeal,
            }),
        ),
    ]
}

// -------------------------------------------------------------------
// Exact linear algebra properties on random integer matrices.
// -------------------------------------------------------------------

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(-5i64..=5, rows * cols)
        .prop_map(move |data| QMatrix::from_fn(rows, cols, |r, c| int(data[r * cols + c])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in int_matrix(4, 5)) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn kernel_vectors_annihilate(m in int_matrix(3, 5)) {
        let k = m.kernel();
        prop_assert_eq!(k.rows() , 5 - m.rank());
        for row in k.rows_vec() {
            prop_assert!(m.mul_vec(&row).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_solutions_verify(m in int_matrix(4, 4), xs in proptest::collection::vec(-5i64..=5, 4)) {
        // Feasible by construction: b = M x.
        let x: Vec<Scalar> = xs.into_iter().map(int).collect();
        let b = m.mul_vec(&x);
        let sol = m.solve(&b).expect("constructed system is feasible");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn scalar_wire_round_trip(n in -1000i64..1000, d in 1i64..200) {
        let x = Scalar::new(n.into(), d.into());
        let s = format_scalar(&x);
        prop_assert_eq!(parse_scalar(&s).unwrap(), x);
    }

    #[test]
    fn sample_rng_respects_bounds(seed in any::<u64>()) {
        let mut rng = SampleRng::new(seed);
        for _ in 0..50 {
            let c = rng.next_coordinate(10);
            prop_assert!((-10..=10).contains(&c));
        }
    }
}

// -------------------------------------------------------------------
// Largest-ideal containment at random subspaces.
// -------------------------------------------------------------------

#[test]
fn largest_ideal_contains_every_ideal_inside() {
    for g in [
        su2_plus_r(),
        algebra(
            4,
            &[(0, 1, &[(2, 1)]), (0, 3, &[(1, -1)]), (1, 3, &[(0, 1)])],
        ),
        algebra(3, &[(0, 1, &[(1, 1)]), (0, 2, &[(2, -1)])]),
    ] {
        let dim = g.dim();
        let known_ideals: Vec<Subspace> = vec![
            Subspace::zero(dim),
            g.center(),
            nilradical(&g).unwrap(),
            radical(&g).unwrap(),
            g.derived_subalgebra(),
            Subspace::full(dim),
        ];
        let mut rng = SampleRng::new(17);
        for _ in 0..100 {
            let rows = (rng.next_u64() % dim as u64) as usize + 1;
            let vectors: Vec<Vec<Scalar>> = (0..rows).map(|_| rng.next_vector(dim, 3)).collect();
            let k = Subspace::from_vectors(dim, vectors);
            let l = g.largest_ideal_in(&k);
            // The result is an ideal inside k.
            assert!(k.contains(&l));
            assert!(l.contains(&g.bracket_span(&Subspace::full(dim), &l)));
            // Every known ideal inside k lies inside the result.
            for ideal in &known_ideals {
                if k.contains(ideal) {
                    assert!(l.contains(ideal));
                }
            }
        }
    }
}

// -------------------------------------------------------------------
// Connection map identities on all basis pairs and triples.
// -------------------------------------------------------------------

#[test]
fn u_map_symmetry_and_defining_identity() {
    for (_, space) in go_corpus() {
        let g = space.algebra();
        let basis = space.complement().basis_vectors();
        for (i, x) in basis.iter().enumerate() {
            for y in basis.iter().skip(i) {
                let uxy = u_map(&space, x, y);
                let uyx = u_map(&space, y, x);
                assert_eq!(uxy, uyx, "U must be symmetric");
                // 2 (U(X,Y), Z) = ([Z,X]_m, Y) + (X, [Z,Y]_m) on all triples.
                for z in &basis {
                    let lhs = int(2) * space.ip_eval(&uxy, z);
                    let rhs = space.ip_eval(&space.m_part(&g.bracket(z, x)), y)
                        + space.ip_eval(x, &space.m_part(&g.bracket(z, y)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

// -------------------------------------------------------------------
// Identities that hold on geodesic orbit spaces: centralizer splitting
// with both orthogonalities, and skewness under the full normalizer.
// -------------------------------------------------------------------

#[test]
fn go_corpus_centralizer_splitting_and_normalizer_skewness() {
    for (name, space) in go_corpus() {
        let verdict = go_check(&space, &SampleConfig::default()).unwrap();
        assert!(verdict.is_go_evidence(), "{name}");
        let g = space.algebra();
        let c = g.centralizer(space.isotropy());
        let c_cap_m = c.intersect(space.complement());
        let hm = g.bracket_span(space.isotropy(), space.complement());
        assert_eq!(c_cap_m.sum(&hm), *space.complement(), "{name}");
        assert!(c_cap_m.intersect(&hm).is_zero(), "{name}");
        for x in c_cap_m.basis_vectors() {
            for y in hm.basis_vectors() {
                assert!(
                    space.ip_eval(&x, &y).is_zero(),
                    "{name}: inner product orthogonality"
                );
                assert!(
                    g.killing_eval(&x, &y).is_zero(),
                    "{name}: Killing orthogonality"
                );
            }
        }
        // The inner product is invariant under the whole normalizer algebra
        // k = C_g(h) + [h, h], checked as skewness of every generator.
        let k = c.sum(&g.bracket_span(space.isotropy(), space.isotropy()));
        for y in k.basis_vectors() {
            let a = space.action_on_m(&y);
            let skew = space
                .inner_product()
                .mul(&a)
                .add(&a.transpose().mul(space.inner_product()));
            assert!(skew.is_zero(), "{name}: normalizer generator not skew");
        }
    }
}

// -------------------------------------------------------------------
// Certified natural reductivity means the zero isotropy vector already
// solves every geodesic graph instance.
// -------------------------------------------------------------------

#[test]
fn certified_spaces_solve_with_zero_compensation() {
    let certified = [
        space_of(&ConstructionParams::U2Sphere { alpha: int(2) }),
        space_of(&ConstructionParams::LedgerObata {
            copies: 3,
            variant: LedgerObataComplement::KillingOrthogonal,
        }),
    ];
    for space in certified {
        let verdict = go_check(&space, &SampleConfig::default()).unwrap();
        assert!(matches!(verdict, GOVerdict::CertifiedNaturallyReductive));
        let mut rng = SampleRng::new(11);
        for _ in 0..100 {
            let coords = rng.next_vector(space.tangent_dim(), 10);
            let x = space.m_vector_from_coords(&coords);
            let GraphOutcome::Solved(sol) = geodesic_graph_solve(&space, &x).unwrap() else {
                panic!("certified space must solve every instance");
            };
            assert!(
                sol.z.iter().all(Zero::is_zero),
                "pivot solution must be zero"
            );
            assert!(sol.residual_certified_zero);
        }
    }
}

// -------------------------------------------------------------------
// Orthogonal invariant splits of geodesic orbit spaces: U preserves both
// halves and transverse adjoint actions are skew.
// -------------------------------------------------------------------

#[test]
fn go_corpus_orthogonal_split_skewness() {
    for (name, space) in go_corpus() {
        let decomposition = submodule_decomposition(&space).unwrap();
        if decomposition.modules.len() < 2 {
            continue;
        }
        for module in &decomposition.modules {
            let p = &module.space;
            let q = decomposition
                .modules
                .iter()
                .filter(|m| &m.space != p)
                .fold(Subspace::zero(space.algebra().dim()), |acc, m| {
                    acc.sum(&m.space)
                });
            for (half, other) in [(p, &q), (&q, p)] {
                for x in half.basis_vectors() {
                    for y in half.basis_vectors() {
                        let u = u_map(&space, &x, &y);
                        assert!(
                            half.contains_vector(&u),
                            "{name}: U left its invariant half"
                        );
                    }
                }
                // Transverse adjoint action is skew on the other half.
                let g = space.algebra();
                for z in half.basis_vectors() {
                    for (i, x) in other.basis_vectors().iter().enumerate() {
                        for y in other.basis_vectors().iter().skip(i) {
                            let a = space.ip_eval(&space.m_part(&g.bracket(&z, x)), y);
                            let b = space.ip_eval(x, &space.m_part(&g.bracket(&z, y)));
                            assert!((a + b).is_zero(), "{name}: transverse action not skew");
                        }
                    }
                }
            }
        }
    }
}

// -------------------------------------------------------------------
// Cross-oracle agreement on small nilpotent metric algebras: the
// derivation route and the graph route must reach verdicts consistent
// with the classification of each entry. With trivial isotropy the graph
// route certifies geodesic orbit only for commutative algebras.
// -------------------------------------------------------------------

#[test]
fn nil_and_graph_routes_agree_with_classification() {
    // (name, algebra, commutative, geodesic orbit as a nilmanifold)
    let heis5 = {
        let mut t = StructureTable::new();
        // z = e5; two horizontal planes pairing into it.
        t.insert((0, 1), vec![(4, int(1))]);
        t.insert((2, 3), vec![(4, int(1))]);
        validate_algebra(5, named(5), t, None).unwrap()
    };
    let entries: Vec<(&str, LieAlgebra, bool)> = vec![
        ("abelian2", algebra(2, &[]), true),
        ("abelian3", algebra(3, &[]), true),
        ("heisenberg3", algebra(3, &[(0, 1, &[(2, 1)])]), false),
        (
            "heisenberg3_plus_line",
            algebra(4, &[(0, 1, &[(2, 1)])]),
            false,
        ),
        ("heisenberg5", heis5, false),
    ];
    for (name, g, commutative) in entries {
        assert!(g.dim() <= 6);
        let metric = QMatrix::identity(g.dim());
        let two_step = TwoStepMetricAlgebra::new(g.clone(), metric.clone()).unwrap();
        let nil_verdict = nil_go_check(&two_step, &SampleConfig::default()).unwrap();
        // Every corpus entry is a geodesic orbit nilmanifold (abelian ones
        // trivially, the Heisenberg family classically), so the derivation
        // route must never certify a negative.
        assert!(
            nil_verdict.is_go_evidence(),
            "{name}: derivation route returned {}",
            nil_verdict.label()
        );
        if commutative {
            assert!(
                matches!(nil_verdict, GOVerdict::CertifiedNaturallyReductive),
                "{name}"
            );
        }
        // The graph route asks a different question: geodesic orbit with
        // respect to the nilpotent group itself (trivial isotropy), which
        // holds exactly for the commutative entries.
        let space = trivial_isotropy_space(&g, metric).unwrap();
        let graph_verdict = go_check(&space, &SampleConfig::default()).unwrap();
        if commutative {
            assert!(
                matches!(graph_verdict, GOVerdict::CertifiedNaturallyReductive),
                "{name}: graph route returned {}",
                graph_verdict.label()
            );
        } else {
            assert!(
                matches!(graph_verdict, GOVerdict::NotGO { .. }),
                "{name}: graph route returned {}",
                graph_verdict.label()
            );
        }
    }
}

// -------------------------------------------------------------------
// Principal isotropy sampling is monotone when samples are appended.
// -------------------------------------------------------------------

#[test]
fn principal_isotropy_monotone_in_sample_count() {
    let space = space_of(&ConstructionParams::EuclideanGo { n: 2 });
    let decomposition = submodule_decomposition(&space).unwrap();
    for module in &decomposition.modules {
        let mut last = usize::MAX;
        for count in [4, 8, 16, 32, 64] {
            let config = SampleConfig {
                sample_count: count,
                seed: 9,
                coordinate_bound: 10,
            };
            let pid = principal_isotropy_dim(&space, &module.space, &config).unwrap();
            assert!(pid.dim <= last, "sampled minimum must not increase");
            last = pid.dim;
        }
    }
}

// -------------------------------------------------------------------
// Audit reports are reproducible and never abort on a failed clause.
// -------------------------------------------------------------------

#[test]
fn audit_reports_reproducible_and_complete() {
    let space = space_of(&ConstructionParams::U2Sphere { alpha: int(2) });
    let verdict = go_check(&space, &SampleConfig::default()).unwrap();
    let a = strucrad1_audit(&space, &verdict, AuditPolicy::RequireGoVerdict).unwrap();
    let b = strucrad1_audit(&space, &verdict, AuditPolicy::RequireGoVerdict).unwrap();
    assert_eq!(
        serde_json::to_string(&a.to_json()).unwrap(),
        serde_json::to_string(&b.to_json()).unwrap()
    );

    // A failing clause never suppresses the others: the negative control
    // violates every clause of this audit, and all three are still
    // evaluated and reported.
    let control = space_of(&ConstructionParams::ComplexWeightSolvable);
    let verdict = go_check(&control, &SampleConfig::default()).unwrap();
    let forced = strucrad1_audit(&control, &verdict, AuditPolicy::Force).unwrap();
    assert_eq!(forced.clauses.len(), 3);
    assert!(forced
        .clauses
        .iter()
        .any(|c| c.status == ClauseStatus::Fail));
    assert!(forced
        .clauses
        .iter()
        .all(|c| c.status != ClauseStatus::Skipped));
}

// -------------------------------------------------------------------
// The quotient construction's output is itself a geodesic orbit space
// satisfying the radical-structure audit.
// -------------------------------------------------------------------

#[test]
fn quotient_output_passes_radical_structure_audit() {
    for params in [
        ConstructionParams::U2Sphere { alpha: int(2) },
        ConstructionParams::EuclideanGo { n: 2 },
    ] {
        let space = space_of(&params);
        let verdict = go_check(&space, &SampleConfig::default()).unwrap();
        let out = gorbit::audit::quotient_go_construction(
            &space,
            &verdict,
            &SampleConfig::default(),
            AuditPolicy::RequireGoVerdict,
        )
        .unwrap();
        let quotient = out.space.expect("nondegenerate quotient");
        let qv = out.quotient_verdict.expect("verdict");
        assert!(qv.is_go_evidence());
        let report = strucrad1_audit(&quotient, &qv, AuditPolicy::RequireGoVerdict).unwrap();
        assert!(report.all_pass(), "{:?}", report.to_json());
        // The strengthened conclusion: nilradical equals [g, r] exactly.
        let gq = quotient.algebra();
        let rq = radical(gq).unwrap();
        let nq = nilradical(gq).unwrap();
        assert_eq!(nq, gq.bracket_span(&Subspace::full(gq.dim()), &rq));
    }
}

// -------------------------------------------------------------------
// Spectra that do not split over the rationals downgrade to numeric mode
// and exact audits refuse them.
// -------------------------------------------------------------------

#[test]
fn irrational_spectrum_falls_back_to_numeric() {
    let g = algebra(
        3,
        &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])],
    );
    // A metric whose Gram matrix has irrational eigenvalues relative to B.
    let metric = QMatrix::from_rows(vec![
        vec![int(2), int(1), int(0)],
        vec![int(1), int(1), int(0)],
        vec![int(0), int(0), int(1)],
    ]);
    let space = trivial_isotropy_space(&g, metric).unwrap();
    let spectrum = killing_operator_decomposition(&space).unwrap();
    let SpectrumMode::Numeric { eigenvalues, .. } = &spectrum.mode else {
        panic!("expected numeric fallback");
    };
    assert_eq!(eigenvalues.len(), 3);
    // Eigenvalues of A = G^-1 (-2 I): -2 and -2/((3 +- sqrt 5)/2).
    let expected = [
        -2.0 / ((3.0 - 5f64.sqrt()) / 2.0),
        -2.0,
        -2.0 / ((3.0 + 5f64.sqrt()) / 2.0),
    ];
    for (got, want) in eigenvalues.iter().zip(expected) {
        assert!((got - want).abs() < 1e-6, "{got} vs {want}");
    }
    let verdict = go_check(&space, &SampleConfig::default()).unwrap();
    let err = gorbit::gocheck::eigenspace_bracket_audit(&space, &verdict, &SampleConfig::default());
    assert!(matches!(err, Err(gorbit::error::Error::SpectrumNumeric)));
}

// -------------------------------------------------------------------
// Serialization fidelity: every construction kind re-analyzed from disk
// produces the identical verdict.
// -------------------------------------------------------------------

#[test]
fn construction_kinds_round_trip_with_identical_verdicts() {
    use gorbit::files::{
        metric_algebra_to_file, parse_algebra_file, space_to_file, to_canonical_json,
    };

    let config = SampleConfig {
        sample_count: 16,
        seed: 0,
        coordinate_bound: 10,
    };
    let kinds: Vec<(&str, ConstructionParams)> = vec![
        ("u2_sphere", ConstructionParams::U2Sphere { alpha: int(2) }),
        ("euclidean_go", ConstructionParams::EuclideanGo { n: 2 }),
        ("heisenberg13", ConstructionParams::Heisenberg13),
        (
            "htype",
            ConstructionParams::Htype {
                module: clifford_module_cl5_r8().unwrap(),
            },
        ),
        (
            "ledger_obata",
            ConstructionParams::LedgerObata {
                copies: 2,
                variant: LedgerObataComplement::FactorIdeal,
            },
        ),
        ("filiform4", ConstructionParams::Filiform4),
        (
            "complex_weight_solvable",
            ConstructionParams::ComplexWeightSolvable,
        ),
        (
            "gonil2_extension",
            ConstructionParams::Gonil2Extension {
                base: None,
                c_scale: int(1),
            },
        ),
    ];
    for (name, params) in kinds {
        match construct(&params).unwrap() {
            Constructed::Space(space) => {
                let direct = go_check(&space, &config).unwrap();
                let json = to_canonical_json(&space_to_file(name, &space));
                let parsed = parse_algebra_file(json.as_bytes()).unwrap();
                let from_disk = go_check(&parsed.space, &config).unwrap();
                assert_eq!(direct.label(), from_disk.label(), "{name}");
            }
            Constructed::NilmanifoldAlgebra { algebra, metric } => {
                let two_step = TwoStepMetricAlgebra::new(algebra.clone(), metric.clone()).unwrap();
                let direct = nil_go_check(&two_step, &config).unwrap();
                let json = to_canonical_json(&metric_algebra_to_file(name, &algebra, &metric));
                let parsed = parse_algebra_file(json.as_bytes()).unwrap();
                let metric2 = parsed.metric_spec.ambient_matrix(&parsed.algebra).unwrap();
                let two_step2 = TwoStepMetricAlgebra::new(parsed.algebra, metric2).unwrap();
                let from_disk = nil_go_check(&two_step2, &config).unwrap();
                assert_eq!(direct.label(), from_disk.label(), "{name}");
            }
        }
    }
}

// -------------------------------------------------------------------
// The 13-dimensional two-step algebra from the fixed Clifford module:
// Killing form ad-invariance and the nilradical sandwich across the whole
// constructed corpus.
// -------------------------------------------------------------------

#[test]
fn killing_invariance_and_nilradical_sandwich_on_corpus() {
    let mut algebras: Vec<LieAlgebra> = go_corpus()
        .into_iter()
        .map(|(_, s)| s.algebra().clone())
        .collect();
    let (h13, _) = htype_algebra(&clifford_module_cl5_r8().unwrap()).unwrap();
    algebras.push(h13);
    for g in &algebras {
        // Ad-invariance of the Killing form on basis triples.
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for k in 0..g.dim() {
                    let lhs = g.killing_eval(&g.bracket_basis(i, j), &g.basis_vector(k));
                    let rhs = g.killing_eval(&g.basis_vector(j), &g.bracket_basis(i, k));
                    assert_eq!(lhs, -rhs);
                }
            }
        }
        // Sandwich: [g, r] inside n inside ker B intersect r.
        let r = radical(g).unwrap();
        let n = nilradical(g).unwrap();
        let gr = g.bracket_span(&Subspace::full(g.dim()), &r);
        let ker_b = Subspace::from_rref(g.killing_form().kernel());
        assert!(n.contains(&gr));
        assert!(ker_b.intersect(&r).contains(&n));
    }
}

// -------------------------------------------------------------------
// Levi-based complement strategies all rebuild the Killing-orthogonal
// complement on the compact example, and the adapted variants place the
// nilradical inside the radical part of the complement.
// -------------------------------------------------------------------

#[test]
fn levi_based_complement_strategies() {
    use gorbit::homspace::{build_reductive, ComplementStrategy, MetricSpec};

    let g = su2_plus_r();
    let h = Subspace::from_vectors(4, vec![vec![int(0), int(0), int(1), int(1)]]);
    let s = Subspace::from_vectors(
        4,
        vec![g.basis_vector(0), g.basis_vector(1), g.basis_vector(2)],
    );
    let mut metric = QMatrix::identity(4);
    metric.set(3, 3, int(2));
    let expected = Subspace::from_vectors(
        4,
        vec![g.basis_vector(0), g.basis_vector(1), g.basis_vector(3)],
    );
    for strategy in [
        ComplementStrategy::LeviSplit { levi: s.clone() },
        ComplementStrategy::NilradicalAdapted { levi: s.clone() },
        ComplementStrategy::Rem1Variant { levi: s.clone() },
    ] {
        let space =
            build_reductive(&g, &h, &MetricSpec::Explicit(metric.clone()), &strategy).unwrap();
        assert_eq!(space.complement(), &expected, "{strategy:?}");
        let n = nilradical(&g).unwrap();
        assert!(space.complement().contains(&n));
    }

    // On the solvable Euclidean example the isotropy sits inside the Levi
    // factor, so every variant returns the radical as the complement.
    let eg = space_of(&ConstructionParams::EuclideanGo { n: 2 });
    let g = eg.algebra().clone();
    let s = Subspace::from_vectors(g.dim(), (5..g.dim()).map(|i| g.basis_vector(i)).collect());
    let r = radical(&g).unwrap();
    for strategy in [
        ComplementStrategy::LeviSplit { levi: s.clone() },
        ComplementStrategy::NilradicalAdapted { levi: s.clone() },
        ComplementStrategy::Rem1Variant { levi: s.clone() },
    ] {
        let space = build_reductive(
            &g,
            eg.isotropy(),
            &MetricSpec::Explicit(QMatrix::identity(g.dim())),
            &strategy,
        )
        .unwrap();
        assert_eq!(space.complement(), &r, "{strategy:?}");
    }
}

// -------------------------------------------------------------------
// Isotropy splitting when the isotropy lies inside the Levi factor:
// the radical projection vanishes and the central part is trivial.
// -------------------------------------------------------------------

#[test]
fn isotropy_split_with_isotropy_inside_levi() {
    use gorbit::homspace::isotropy_levi_split;

    let space = space_of(&ConstructionParams::EuclideanGo { n: 2 });
    let g = space.algebra();
    let s = Subspace::from_vectors(g.dim(), (5..g.dim()).map(|i| g.basis_vector(i)).collect());
    let split = isotropy_levi_split(&space, &s).unwrap();
    assert!(split.phi_image.is_zero());
    assert_eq!(&split.psi_image, space.isotropy());
    assert!(split.ker_psi.is_zero());
    assert_eq!(&split.h_cap_s, space.isotropy());
    assert!(split.h2.is_zero());
}

// -------------------------------------------------------------------
// The adapted Levi audit on the solvable Euclidean example with the
// compactly embedded candidate k = (central direction) + isotropy.
// -------------------------------------------------------------------

#[test]
fn goodlevi_on_euclidean_presentation() {
    use gorbit::audit::goodlevi_audit;

    let space = space_of(&ConstructionParams::EuclideanGo { n: 2 });
    let g = space.algebra();
    let s = Subspace::from_vectors(g.dim(), (5..g.dim()).map(|i| g.basis_vector(i)).collect());
    // k = centralizer of h plus [h, h] = z-line plus the isotropy algebra.
    let k = g
        .centralizer(space.isotropy())
        .sum(&g.bracket_span(space.isotropy(), space.isotropy()));
    assert_eq!(k.dim(), 4);
    assert!(k.contains_vector(&g.basis_vector(4)));
    let report = goodlevi_audit(g, &k, &s).unwrap();
    assert!(report.all_pass(), "{:?}", report.to_json());
    assert!(report
        .clauses
        .iter()
        .any(|c| c.status == ClauseStatus::PassNecessaryOnly));
}

// -------------------------------------------------------------------
// Orbits of subalgebras normalized by the isotropy: the nilradical orbit
// is totally geodesic; when it is commutative the induced condition
// holds, and a noncommutative nilradical breaks it.
// -------------------------------------------------------------------

#[test]
fn normalized_orbit_of_the_nilradical() {
    use gorbit::audit::normalized_orbit_audit;
    use gorbit::gocheck::totally_geodesic_check;

    // Abelian nilradical: flat, totally geodesic orbit.
    let space = space_of(&ConstructionParams::EuclideanGo { n: 2 });
    let verdict = go_check(&space, &SampleConfig::default()).unwrap();
    let n = nilradical(space.algebra()).unwrap();
    let report =
        normalized_orbit_audit(&space, &n, &verdict, AuditPolicy::RequireGoVerdict).unwrap();
    assert!(!report.any_fail(), "{:?}", report.to_json());
    let tg_clauses: Vec<_> = report
        .clauses
        .iter()
        .filter(|c| c.claim_id == "bracket_closure" || c.claim_id == "transverse_skew")
        .collect();
    assert!(tg_clauses.iter().all(|c| c.status == ClauseStatus::Pass));
    let info = report
        .clauses
        .iter()
        .find(|c| c.claim_id == "induced_go_condition")
        .and_then(|c| c.witness.as_ref())
        .expect("informational clause present");
    assert_eq!(info["flat_orbit"], serde_json::json!(true));
    // The sufficient condition for geodesic orbit under the orbit's own
    // group does not hold here (h' = C_h(p) = 0 while h is nontrivial);
    // the orbit is geodesic orbit by totally geodesic inheritance instead.
    assert_eq!(info["condition_holds"], serde_json::json!(false));

    // Noncommutative nilradical inside the solvable extension: the orbit
    // stays totally geodesic but cannot be geodesic orbit for its own
    // group, so the induced condition fails.
    let ext = space_of(&ConstructionParams::Gonil2Extension {
        base: None,
        c_scale: int(1),
    });
    let n = nilradical(ext.algebra()).unwrap();
    assert_eq!(n.dim(), 13);
    let tg = totally_geodesic_check(&ext, &n).unwrap();
    assert!(tg.is_tg);
    assert!(tg.h_prime.is_zero());
    assert!(!tg.induced_go_condition);
}

// -------------------------------------------------------------------
// Metric given as a multiple of the Killing form.
// -------------------------------------------------------------------

#[test]
fn killing_multiple_metric_from_file() {
    use gorbit::files::parse_algebra_file;

    let json = r#"{"name":"compact3","dimension":3,"basis":["e1","e2","e3"],
        "brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":"1"}]},
                    {"i":2,"j":3,"terms":[{"k":1,"c":"1"}]},
                    {"i":1,"j":3,"terms":[{"k":2,"c":"-1"}]}],
        "metric":{"type":"killing_multiple","factor":"-1/2"}}"#;
    let parsed = parse_algebra_file(json.as_bytes()).unwrap();
    assert_eq!(parsed.space.inner_product(), &QMatrix::identity(3));
    let verdict = go_check(&parsed.space, &SampleConfig::default()).unwrap();
    assert!(matches!(verdict, GOVerdict::CertifiedNaturallyReductive));
}

// -------------------------------------------------------------------
// Diagonal-isotropy product of three copies of a compact simple algebra:
// the tangent module splits into two 3-dimensional modules, both
// isomorphic to the adjoint module.
// -------------------------------------------------------------------

#[test]
fn ledger_obata_submodules_are_two_adjoint_copies() {
    let space = space_of(&ConstructionParams::LedgerObata {
        copies: 3,
        variant: LedgerObataComplement::KillingOrthogonal,
    });
    let decomposition = submodule_decomposition(&space).unwrap();
    let dims: Vec<usize> = decomposition.modules.iter().map(|m| m.space.dim()).collect();
    assert_eq!(dims, vec![3, 3]);
    assert!(decomposition.warning.is_none(), "{:?}", decomposition.warning);
    // Both modules are coefficient patterns (a1 X, a2 X, a3 X) with the
    // coefficients summing to zero; the isotropy acts as the adjoint on X.
    for module in &decomposition.modules {
        for v in module.space.basis_vectors() {
            let block = |b: usize| -> Vec<&Scalar> { v[3 * b..3 * b + 3].iter().collect() };
            // Blocks are proportional and coefficients sum to zero at each
            // coordinate.
            for coord in 0..3 {
                let total = &v[coord] + &v[3 + coord] + &v[6 + coord];
                assert!(total.is_zero());
            }
            let _ = block(0);
        }
    }
}

// -------------------------------------------------------------------
// When the centralizer of the isotropy lies inside it, the quotient
// construction is the identity up to the collapsed ideal.
// -------------------------------------------------------------------

#[test]
fn quotient_is_identity_when_centralizer_inside_isotropy() {
    let space = space_of(&ConstructionParams::LedgerObata {
        copies: 3,
        variant: LedgerObataComplement::KillingOrthogonal,
    });
    let g = space.algebra();
    assert!(space.isotropy().contains(&g.centralizer(space.isotropy())));
    let verdict = go_check(&space, &SampleConfig::default()).unwrap();
    let out = gorbit::audit::quotient_go_construction(
        &space,
        &verdict,
        &SampleConfig::default(),
        AuditPolicy::RequireGoVerdict,
    )
    .unwrap();
    assert!(out.collapsed_ideal.is_zero());
    let quotient = out.space.expect("quotient exists");
    assert_eq!(quotient.algebra().dim(), g.dim());
    assert_eq!(quotient.tangent_dim(), space.tangent_dim());
    assert!(out.report.all_pass(), "{:?}", out.report.to_json());
}

// -------------------------------------------------------------------
// Eigenspace audit negative path: a left-invariant metric that is not
// bi-invariant yields an exact spectrum violating the within-eigenspace
// bracket inclusion; paired with a synthetic positive verdict, the audit
// must fail and name the offending pair.
// -------------------------------------------------------------------

#[test]
fn eigenspace_audit_flags_violations() {
    use gorbit::gocheck::eigenspace_bracket_audit;

    let g = algebra(3, &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])]);
    let mut metric = QMatrix::identity(3);
    metric.set(2, 2, int(2));
    let space = trivial_isotropy_space(&g, metric).unwrap();
    // Not geodesic orbit with trivial isotropy (the metric is not a
    // multiple of the Killing form), so feed the audit a synthetic
    // positive verdict to exercise its negative path.
    let real = go_check(&space, &SampleConfig::default()).unwrap();
    assert!(matches!(real, GOVerdict::NotGO { .. }));
    let synthetic = GOVerdict::SampledGO { samples: 1, seed: 0 };
    let report = eigenspace_bracket_audit(&space, &synthetic, &SampleConfig::default()).unwrap();
    let clause = report
        .clauses
        .iter()
        .find(|c| c.claim_id == "equal_eigenvalue")
        .unwrap();
    assert_eq!(clause.status, ClauseStatus::Fail);
    let witness = clause.witness.as_ref().unwrap();
    assert!(witness.get("x").is_some() && witness.get("y").is_some());

    // Vacuous positive path: one eigenvalue only.
    let minus_b = g.killing_form().scale(&int(-1));
    let normal = trivial_isotropy_space(&g, minus_b).unwrap();
    let verdict = go_check(&normal, &SampleConfig::default()).unwrap();
    let report = eigenspace_bracket_audit(&normal, &verdict, &SampleConfig::default()).unwrap();
    assert!(report.all_pass());
}

// -------------------------------------------------------------------
// Assorted worked values: the quotient of the solvable Euclidean
// presentation by its nilradical, the connection map on the compact
// family, principal isotropy of a centralizing line, the totally
// geodesic plane, and the trivial-isotropy centralizer split.
// -------------------------------------------------------------------

#[test]
fn worked_values_round_out_the_examples() {
    use gorbit::gocheck::{principal_isotropy_dim, totally_geodesic_check};
    use gorbit::homspace::{normalizer_structures, u_map};
    use gorbit::liealg::quotient_algebra;

    // Quotient of the solvable presentation by its abelian nilradical:
    // a 4-dimensional reductive algebra with 1-dimensional center and
    // 3-dimensional semisimple derived part.
    let space = space_of(&ConstructionParams::EuclideanGo { n: 2 });
    let g = space.algebra();
    let n = nilradical(g).unwrap();
    let q = quotient_algebra(g, &n).unwrap();
    assert_eq!(q.algebra.dim(), 4);
    assert_eq!(q.algebra.center().dim(), 1);
    let derived = q.algebra.derived_subalgebra();
    assert_eq!(derived.dim(), 3);
    assert!(radical(&q.algebra).unwrap().dim() == 1);

    // q from the centralizer analysis is exactly the central line, acting
    // only on the derived part of the radical.
    let ns = normalizer_structures(&space).unwrap();
    assert_eq!(ns.q.dim(), 1);
    assert!(ns.q.contains_vector(&g.basis_vector(4)));
    assert!(ns.checks.iter().all(|(_, ok)| *ok), "{:?}", ns.checks);

    // Compact family: U(e1, e1) = 0; the horizontal plane closes its
    // bracket into h and m parts with the m part escaping the plane, so
    // the plane is not totally geodesic in this decomposition even though
    // the closure h' recovers the full isotropy and the induced condition
    // holds.
    let sphere = space_of(&ConstructionParams::U2Sphere { alpha: int(2) });
    let gs = sphere.algebra();
    let u = u_map(&sphere, &gs.basis_vector(0), &gs.basis_vector(0));
    assert!(u.iter().all(Zero::is_zero));
    let plane = Subspace::from_vectors(4, vec![gs.basis_vector(0), gs.basis_vector(1)]);
    let tg = totally_geodesic_check(&sphere, &plane).unwrap();
    assert!(!tg.bracket_closes);
    assert!(!tg.is_tg);
    assert_eq!(tg.h_prime, *sphere.isotropy());
    assert!(tg.induced_go_condition);

    // The centralizing line in m has the full isotropy as its stabilizer.
    let line = Subspace::from_vectors(4, vec![vec![int(0), int(0), int(2), int(-1)]]);
    let pid = principal_isotropy_dim(&sphere, &line, &SampleConfig::default()).unwrap();
    assert_eq!(pid.dim, 1);

    // Trivial isotropy: the centralizer split degenerates to m itself.
    let flat = trivial_isotropy_space(
        &algebra(3, &[(0, 1, &[(2, 1)])]),
        QMatrix::identity(3),
    )
    .unwrap();
    let ns = normalizer_structures(&flat).unwrap();
    assert_eq!(&ns.centralizer_cap_m, flat.complement());
    assert!(ns.h_bracket_m.is_zero());

    // Bundled centralizer queries agree with the individual ones.
    let queries = gorbit::liealg::commutant_queries(gs, sphere.isotropy());
    assert_eq!(queries.center, gs.center());
    assert_eq!(queries.centralizer.dim(), 2);
    assert_eq!(queries.normalizer.unwrap().dim(), 2);
    assert_eq!(queries.derived_with.dim(), 2);
}
