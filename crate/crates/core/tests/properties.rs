use std::f64::consts::PI;

use nalgebra::{DVector, Rotation3, Vector3};
use proptest::prelude::*;

use curvadapt::cayley::{self, SpaceSign, TangentPair};
use curvadapt::certificate::Certificate;
use curvadapt::grassmannian::{self, StructureBundle};
use curvadapt::isoparametric::{self, ProfileSystem};
use curvadapt::newton;
use curvadapt::octonion::{associator, Octonion};
use curvadapt::tube::{self, Ambient, Core, CurvatureBranch, PcSystem, TubeDescriptor};
use curvadapt::Verdict;

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-3.0..3.0f64).prop_map(Octonion::new)
}

fn unit16() -> impl Strategy<Value = DVector<f64>> {
    prop::collection::vec(-1.0..1.0f64, 16)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let v = DVector::from_vec(v);
            let n = v.norm();
            v / n
        })
}

fn close(a: &Octonion, b: &Octonion, tol: f64) -> bool {
    (*a - *b).max_abs() <= tol * (1.0 + a.max_abs().max(b.max_abs()))
}

/// Any branch; the noncompact initial values cover all three regimes.
fn branch() -> impl Strategy<Value = CurvatureBranch> {
    prop_oneof![
        (0.5..2.5f64, 0.1..PI - 0.1, 1u32..4)
            .prop_map(|(k, th, m)| CurvatureBranch::compact(k, th, m).unwrap()),
        (-2.0..2.0f64, 1u32..4).prop_map(|(l, m)| CurvatureBranch::flat(l, m).unwrap()),
        (0.5..2.5f64, -3.0..3.0f64, 1u32..4).prop_map(|(k, r, m)| CurvatureBranch::noncompact(
            k,
            k * r,
            m
        )
        .unwrap()),
    ]
}

fn compact_raw() -> impl Strategy<Value = Vec<(f64, f64, u32)>> {
    prop::collection::vec(
        (prop_oneof![Just(1.0), Just(2.0)], 0.05..PI - 0.05, 1u32..4),
        1..=4,
    )
}

fn system(raw: &[(f64, f64, u32)]) -> ProfileSystem {
    let branches = raw
        .iter()
        .map(|&(k, th, m)| CurvatureBranch::compact(k, th, m).unwrap())
        .collect();
    ProfileSystem::new("s", PcSystem::from_branches(branches))
}

fn equivalent(p: &ProfileSystem, q: &ProfileSystem) -> bool {
    let w = isoparametric::default_window(&[p, q]);
    isoparametric::profiles_equivalent(p, q, w).unwrap().verdict == Verdict::Equivalent
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn octonion_norm_is_multiplicative(a in octonion(), b in octonion()) {
        let lhs = (a * b).norm();
        let rhs = a.norm() * b.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300) + 1e-300);
    }

    #[test]
    fn octonion_alternative_laws(a in octonion(), b in octonion()) {
        let zero = Octonion::ZERO;
        prop_assert!(close(&associator(&a, &a, &b), &zero, 1e-12 * (1.0 + a.norm_squared() * b.norm())));
        prop_assert!(close(&associator(&a, &b, &b), &zero, 1e-12 * (1.0 + b.norm_squared() * a.norm())));
        prop_assert!(close(&associator(&a, &b, &a), &zero, 1e-12 * (1.0 + a.norm_squared() * b.norm())));
    }

    #[test]
    fn octonion_conjugation_reverses_products(a in octonion(), b in octonion()) {
        let lhs = (a * b).conjugate();
        let rhs = b.conjugate() * a.conjugate();
        prop_assert!(close(&lhs, &rhs, 1e-13));
    }

    #[test]
    fn octonion_moufang(a in octonion(), b in octonion(), c in octonion()) {
        // (ab)(ca) = a((bc)a)
        let lhs = (a * b) * (c * a);
        let rhs = a * ((b * c) * a);
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn jacobi_operator_kills_xi_and_is_symmetric(v in unit16(), compact in any::<bool>()) {
        let sign = if compact { SpaceSign::Compact } else { SpaceSign::Noncompact };
        let xi = TangentPair::from_vector(&v).unwrap();
        let k = cayley::jacobi_operator(&xi, sign).unwrap();
        prop_assert!(k.apply(&v).amax() <= 1e-12);
        prop_assert!(k.symmetry_defect() <= 1e-12);
    }

    #[test]
    fn sectional_curvature_is_pinched(x in unit16(), y in unit16(), compact in any::<bool>()) {
        let sign = if compact { SpaceSign::Compact } else { SpaceSign::Noncompact };
        let (x, y) = (TangentPair::from_vector(&x).unwrap(), TangentPair::from_vector(&y).unwrap());
        if let Ok(k) = cayley::sectional_curvature(&x, &y, sign) {
            let k = k * sign.value();
            prop_assert!((1.0 - 1e-9..=4.0 + 1e-9).contains(&k), "{k}");
        }
    }

    #[test]
    fn grassmannian_data_ignore_the_quaternionic_frame(
        raw in prop::collection::vec(-1.0..1.0f64, 32),
        axis in prop::array::uniform3(-PI..PI),
    ) {
        let s = StructureBundle::quaternionic_model(2).unwrap();
        let v = DVector::from_row_slice(&raw[..s.dim()]);
        prop_assume!(v.norm() > 1e-2);
        let v = v.normalize();
        let rot = Rotation3::from_scaled_axis(Vector3::from(axis)).into_inner();
        let r = s.rotated(&rot);
        prop_assert!(r.verify().max() <= 1e-12);
        let (a, b) = (grassmannian::alpha_of(&v, &s).unwrap(), grassmannian::alpha_of(&v, &r).unwrap());
        prop_assert!((a.alpha - b.alpha).abs() <= 1e-9);
        let (ka, kb) = (
            grassmannian::jacobi_operator_g2(&v, &s).unwrap(),
            grassmannian::jacobi_operator_g2(&v, &r).unwrap(),
        );
        prop_assert!((ka.matrix() - kb.matrix()).amax() <= 1e-12);
    }

    #[test]
    fn hopf_eigenvalue_ratio(alpha in 0.05..1.5f64) {
        let s = StructureBundle::quaternionic_model(2).unwrap();
        let xi = grassmannian::normal_with_alpha(&s, alpha).unwrap();
        let h = grassmannian::hopf_eigenvalues(&xi, &s).unwrap();
        prop_assert!((h.ratio - h.ratio_expected).abs() <= 1e-9 * h.ratio_expected);
        prop_assert!((h.scale - 4.0).abs() <= 1e-10);
    }

    #[test]
    fn riccati_semigroup(b in branch(), s in -0.4..0.4f64, t in -0.4..0.4f64) {
        if let (Ok(_), Ok(direct)) = (b.evolve(s), b.evolve(s + t)) {
            if direct.abs() < 1e6 {
                let stepped = b.advanced(s).unwrap().evolve(t).unwrap();
                prop_assert!((stepped - direct).abs() <= 1e-9 * direct.abs().max(1.0));
            }
        }
    }

    #[test]
    fn riccati_derivative(b in branch(), t in -0.5..0.5f64) {
        let h = 1e-5;
        let vals = [b.evolve(t - h), b.evolve(t), b.evolve(t + h)];
        if let [Ok(lo), Ok(l), Ok(hi)] = vals {
            if l.abs() < 20.0 && lo.abs() < 20.0 && hi.abs() < 20.0 {
                let fd = (hi - lo) / (2.0 * h);
                let rhs = b.derivative(t).unwrap();
                prop_assert!((fd - rhs).abs() <= 1e-6 * rhs.abs().max(1.0), "{fd} vs {rhs}");
            }
        }
    }

    #[test]
    fn tube_multiplicities_sum_to_fifteen(frac in 0.01..0.99f64, core in 0usize..3, compact in any::<bool>()) {
        let core = [Core::Point, Core::Line, Core::Hp2][core];
        let ambient = if compact { Ambient::Op2 } else { Ambient::Oh2 };
        let r = frac * core.focal_limit(Ambient::Op2);
        let sys = tube::tube_spectrum(&TubeDescriptor::new(ambient, core, r)).unwrap();
        prop_assert_eq!(sys.branches.iter().map(|b| b.multiplicity).sum::<u32>(), 15);
    }

    #[test]
    fn tube_flow_matches_jacobi_fields(f1 in 0.05..0.95f64, f2 in 0.05..0.95f64, core in 0usize..3, compact in any::<bool>()) {
        let core = [Core::Point, Core::Line, Core::Hp2][core];
        let ambient = if compact { Ambient::Op2 } else { Ambient::Oh2 };
        let limit = core.focal_limit(Ambient::Op2);
        let (r1, r2) = (f1 * limit, f2 * limit);
        let sys = tube::tube_spectrum(&TubeDescriptor::new(ambient, core, r1)).unwrap();
        let rows = tube::tube_table(&TubeDescriptor::new(ambient, core, r2)).unwrap();
        for (b, row) in sys.branches.iter().zip(&rows) {
            let v = b.evolve(r1 - r2).unwrap();
            prop_assert!((v - row.value).abs() <= 1e-9 * row.value.abs().max(1.0), "{} vs {}", v, row.value);
        }
    }

    #[test]
    fn profile_equivalence_is_an_equivalence(
        base in compact_raw(),
        other in compact_raw(),
        seed in any::<u64>(),
    ) {
        let mut shuffled = base.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        let (p, q, r) = (system(&base), system(&shuffled), system(&other));
        prop_assert!(equivalent(&p, &p));
        prop_assert!(equivalent(&p, &q) && equivalent(&q, &p));
        prop_assert_eq!(equivalent(&p, &r), equivalent(&r, &p));
        prop_assert_eq!(equivalent(&p, &r), equivalent(&q, &r));
    }

    #[test]
    fn certificates_are_well_formed(p in compact_raw(), q in compact_raw()) {
        let (p, q) = (system(&p), system(&q));
        let w = isoparametric::default_window(&[&p, &q]);
        let c = isoparametric::profiles_equivalent(&p, &q, w).unwrap();
        prop_assert!(c.is_well_formed());
        let text = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.verdict, c.verdict);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn separating_time_is_monotone_in_the_phase_gap(
        mut phases in prop::array::uniform3(0.05..PI - 0.05),
        kappa in prop_oneof![Just(1.0), Just(2.0)],
    ) {
        phases.sort_by(f64::total_cmp);
        let [a, b, c] = phases;
        prop_assume!(b - a > 1e-3 && c - b > 1e-3);
        let wide = isoparametric::separating_time(c, kappa, a, kappa);
        let narrow = isoparametric::separating_time(b, kappa, a, kappa);
        match (wide, narrow) {
            (Some(w), Some(n)) => prop_assert!(n >= w, "{n} < {w}"),
            (w, n) => prop_assert!(w.is_some() || n.is_none()),
        }
    }

    #[test]
    fn newton_round_trip(values in prop::collection::vec(-12i32..=12, 1..=8)) {
        let xs: Vec<f64> = values.iter().map(|&v| f64::from(v) / 4.0).collect();
        let got = newton::newton_recover(&newton::power_sums(&xs, xs.len()), xs.len()).unwrap();
        let mut want = xs.clone();
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() <= 1e-8, "{got:?} vs {want:?}");
        }
    }
}
