use homgeo::curvature::{curvature_tensor, ricci};
use homgeo::io::SpaceFile;
use homgeo::lie::{milnor_algebra, solvable_algebra};
use homgeo::structure::{classify, decompose, StructureTensor, TorsionOrStructure, TorsionTensor, torsion_structure_convert};
use homgeo::{HomogeneousSpace, InvariantMetric, Tensor3, DEFAULT_TOL};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn structure_tensor(n: usize, raw: &[f64]) -> StructureTensor {
    let a = Tensor3::from_fn(n, |x, y, z| raw[(x * n + y) * n + z]);
    let s = Tensor3::from_fn(n, |x, y, z| a[(x, y, z)] - a[(x, z, y)]);
    StructureTensor::new(s, 1e-12).unwrap()
}

fn arb_structure() -> impl Strategy<Value = StructureTensor> {
    (4usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(-1.0..1.0f64, n * n * n).prop_map(move |raw| structure_tensor(n, &raw))
    })
}

fn spd(n: usize, raw: &[f64]) -> InvariantMetric {
    let a = DMatrix::from_fn(n, n, |i, j| raw[i * n + j]);
    InvariantMetric::new(a.transpose() * &a + DMatrix::identity(n, n)).unwrap()
}

fn arb_group() -> impl Strategy<Value = HomogeneousSpace> {
    let solvable = (2usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(-2.0..2.0f64, n - 1),
            proptest::collection::vec(-1.0..1.0f64, n * n),
        )
            .prop_map(move |(alpha, raw)| {
                HomogeneousSpace::lie_group(solvable_algebra(&alpha), spd(n, &raw), DEFAULT_TOL).unwrap()
            })
    });
    let milnor = (
        proptest::array::uniform3(-3.0..3.0f64),
        proptest::collection::vec(-1.0..1.0f64, 9),
    )
        .prop_map(|(l, raw)| HomogeneousSpace::lie_group(milnor_algebra(l), spd(3, &raw), DEFAULT_TOL).unwrap());
    prop_oneof![solvable, milnor]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_reconstructs_orthogonally(s in arb_structure()) {
        let d = decompose(&s);
        prop_assert!(d.reconstruction_error(&s) <= 1e-10);
        prop_assert!(d.max_cross_inner() <= 1e-10);
        let total = s.tensor().norm().powi(2);
        let parts = d.norms.s1.powi(2) + d.norms.s2.powi(2) + d.norms.s3.powi(2);
        prop_assert!((total - parts).abs() <= 1e-9 * total.max(1.0));
    }

    #[test]
    fn projectors_are_idempotent(s in arb_structure()) {
        let d = decompose(&s);
        for (i, part) in [&d.s1, &d.s2, &d.s3].into_iter().enumerate() {
            let again = decompose(&StructureTensor::new(part.clone(), 1e-10).unwrap());
            let comps = [&again.s1, &again.s2, &again.s3];
            for (j, c) in comps.into_iter().enumerate() {
                let target = if i == j { (c - part).max_abs() } else { c.max_abs() };
                prop_assert!(target <= 1e-10, "component {j} of part {i}: {target}");
            }
        }
    }

    #[test]
    fn torsion_structure_round_trip(s in arb_structure()) {
        let t = match torsion_structure_convert(&TorsionOrStructure::Structure(s.clone())) {
            TorsionOrStructure::Torsion(t) => t,
            _ => unreachable!(),
        };
        prop_assert!(TorsionTensor::new(t.tensor().clone(), 1e-12).is_ok());
        let back = t.to_structure();
        prop_assert!((back.tensor() - s.tensor()).max_abs() <= 1e-12);
    }

    #[test]
    fn bracket_and_norm_routes_agree(space in arb_group()) {
        let r = classify(&space);
        prop_assert!(r.consistent, "{:?} vs {:?}", r.flags, r.flags_from_norms);
    }

    #[test]
    fn curvature_has_algebraic_symmetries(space in arb_group()) {
        let r = curvature_tensor(&space);
        let scale = r.0.max_abs().max(1.0);
        prop_assert!(r.symmetry_residuals().max() <= 1e-10 * scale);
        let ric = ricci(&space);
        prop_assert!(ric.route_residual() <= 1e-9 * scale);
    }

    #[test]
    fn space_files_round_trip(space in arb_group()) {
        let text = SpaceFile::from_space(&space, Some("x".into())).to_json();
        let parsed = SpaceFile::parse(&text).unwrap();
        prop_assert_eq!(parsed.to_json(), text);
        let rebuilt = parsed.to_space(DEFAULT_TOL).unwrap();
        prop_assert_eq!(rebuilt.algebra().structure_constants(), space.algebra().structure_constants());
        prop_assert_eq!(rebuilt.metric().matrix(), space.metric().matrix());
        prop_assert_eq!(classify(&rebuilt), classify(&space));
    }

    #[test]
    fn milnor_jacobi_holds(l in proptest::array::uniform3(-5.0..5.0f64)) {
        prop_assert!(milnor_algebra(l).jacobi_residual() <= 1e-12);
    }
}
