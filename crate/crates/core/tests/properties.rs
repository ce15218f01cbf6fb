use proptest::prelude::*;
use quasifold_core::affine::{decompose_affine_root, extension_by_name, BorderedCartan};
use quasifold_core::coxeter::diagram_automorphisms;
use quasifold_core::{
    cartan_matrix, gram_matrix, lift, project, reflect, tau_pow, GoldenRat, GroupId, ProjectionMap, RootVector,
    Subspace,
};

fn golden() -> impl Strategy<Value = GoldenRat> {
    (-60i64..60, -60i64..60, 1i64..24).prop_map(|(a, b, d)| GoldenRat::new(a, b, d))
}

fn nonzero_golden() -> impl Strategy<Value = GoldenRat> {
    golden().prop_filter("nonzero", |x| !x.is_zero())
}

fn rational() -> impl Strategy<Value = GoldenRat> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| GoldenRat::from_ratio(p, q))
}

fn source_vector(group: GroupId) -> impl Strategy<Value = RootVector> {
    prop::collection::vec(rational(), group.rank()).prop_map(move |c| RootVector::new(group, c).unwrap())
}

fn target_vector(group: GroupId) -> impl Strategy<Value = RootVector> {
    prop::collection::vec(golden(), group.rank()).prop_map(move |c| RootVector::new(group, c).unwrap())
}

fn any_group() -> impl Strategy<Value = GroupId> {
    prop::sample::select(GroupId::ALL.to_vec())
}

fn folding_source() -> impl Strategy<Value = GroupId> {
    prop::sample::select(vec![GroupId::A4, GroupId::D6, GroupId::E8])
}

fn subspace() -> impl Strategy<Value = Subspace> {
    prop::sample::select(vec![Subspace::Parallel, Subspace::Perpendicular])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &GoldenRat::zero(), x.clone());
        prop_assert_eq!(&x * &GoldenRat::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn field_inverse(x in nonzero_golden()) {
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn conjugation_is_a_ring_automorphism(x in golden(), y in golden()) {
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(GoldenRat::tau().conj(), GoldenRat::sigma());
    }

    #[test]
    fn order_agrees_with_floats(x in golden(), y in golden()) {
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(x < y, fx < fy);
        }
    }

    #[test]
    fn tau_powers_round_trip(k in -40i64..40, j in -40i64..40) {
        prop_assert!((&tau_pow(k) * &tau_pow(-k)).is_one());
        prop_assert_eq!(&tau_pow(k) * &tau_pow(j), tau_pow(k + j));
        prop_assert_eq!(GoldenRat::tau().pow(k).unwrap(), tau_pow(k));
        prop_assert!(tau_pow(k).numer().is_unit());
    }

    #[test]
    fn project_lift_round_trip((map, v, w) in folding_case()) {
        prop_assert_eq!(lift(&map, &project(&map, &v).unwrap()).unwrap(), v);
        prop_assert_eq!(project(&map, &lift(&map, &w).unwrap()).unwrap(), w);
    }

    #[test]
    fn reflections_are_involutive_isometries((u, v) in vector_pair()) {
        let group = u.group;
        let g = gram_matrix(group).entries;
        for i in 0..group.rank() {
            let su = reflect(i, &u).unwrap();
            let sv = reflect(i, &v).unwrap();
            prop_assert_eq!(reflect(i, &su).unwrap(), u.clone());
            prop_assert_eq!(g.bilinear(&su.coords, &sv.coords), g.bilinear(&u.coords, &v.coords));
        }
    }
}

fn folding_case() -> impl Strategy<Value = (ProjectionMap, RootVector, RootVector)> {
    (folding_source(), subspace()).prop_flat_map(|(src, sub)| {
        let map = ProjectionMap::for_source(src, sub).unwrap();
        let target = map.target;
        (Just(map), source_vector(src), target_vector(target))
    })
}

fn vector_pair() -> impl Strategy<Value = (RootVector, RootVector)> {
    any_group().prop_flat_map(|g| (target_vector(g), target_vector(g)))
}

fn permuted(v: &[GoldenRat], p: &[usize]) -> Vec<GoldenRat> {
    let mut out = v.to_vec();
    for (i, x) in v.iter().enumerate() {
        out[p[i]] = x.clone();
    }
    out
}

/// Base diagram automorphisms move the border of a standard extension; the
/// projected affine root must not notice.
#[test]
fn induced_roots_are_invariant_under_base_automorphisms() {
    for name in ["A4=", "D6<", "D6=", "D6>", "E8="] {
        let ext = extension_by_name(name).unwrap();
        let reference: Vec<_> = [Subspace::Parallel, Subspace::Perpendicular]
            .iter()
            .map(|&s| project(&ProjectionMap::for_source(ext.base, s).unwrap(), &ext.affine_root().unwrap()).unwrap())
            .collect();
        for p in diagram_automorphisms(&cartan_matrix(ext.base).entries) {
            let moved = BorderedCartan::new(ext.base, permuted(&ext.v, &p), permuted(&ext.w, &p)).unwrap();
            assert!(moved.det().is_zero());
            for (k, &s) in [Subspace::Parallel, Subspace::Perpendicular].iter().enumerate() {
                let map = ProjectionMap::for_source(ext.base, s).unwrap();
                assert_eq!(project(&map, &moved.affine_root().unwrap()).unwrap(), reference[k], "{name} {p:?}");
            }
        }
    }
}

/// Automorphisms of the extended diagram may make any node the affine one.
/// The null vector `delta` (with `sum delta_i alpha_i = 0`) is invariant,
/// so the new affine root has the same coordinates over the relabelled base
/// and projects to the same vector.
#[test]
fn induced_roots_are_invariant_under_extended_automorphisms() {
    for name in ["A4=", "D6<", "D6=", "D6>", "E8="] {
        let ext = extension_by_name(name).unwrap();
        let full = ext.full().entries;
        let c = decompose_affine_root(&ext).unwrap().coords;
        let mut delta = vec![GoldenRat::one()];
        delta.extend(c.iter().cloned());
        assert!(full.mul_vec(&delta).iter().all(GoldenRat::is_zero));
        let map = ProjectionMap::for_source(ext.base, Subspace::Parallel).unwrap();
        let reference = project(&map, &ext.affine_root().unwrap()).unwrap();
        let autos = diagram_automorphisms(&full);
        if name == "A4=" {
            assert_eq!(autos.len(), 10);
        }
        if name == "D6=" {
            assert_eq!(autos.len(), 8);
        }
        for pi in autos {
            let j = pi[0];
            // alpha_j = -(1/delta_j) sum_{k != j} delta_k alpha_k, read on the base pi(1..r)
            let coords: Vec<GoldenRat> = (1..full.rows()).map(|k| -(&delta[pi[k]] / &delta[j])).collect();
            let moved = RootVector::new(ext.base, coords).unwrap();
            assert_eq!(project(&map, &moved).unwrap(), reference, "{name} {pi:?}");
        }
    }
}
