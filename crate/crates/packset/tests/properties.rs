//! Property tests over generated inputs: conversion round trips, order
//! laws, and serialization exactness.

use proptest::prelude::*;

use packset::packset::{lattice_box, ExtNat, ExtPoint, PackingSet};
use packset::poly::{h_to_v, poly_equal, v_to_h, Halfspace, HPolyhedron};
use packset::wqo::{higman_leq, OrdLeq};
use packset::{Limits, QVector, Rational};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn hpoly_strategy() -> impl Strategy<Value = HPolyhedron> {
    (2usize..=3).prop_flat_map(|dim| {
        proptest::collection::vec(
            (
                proptest::collection::vec(-2i64..=4, dim),
                0i64..=5,
            ),
            1..=3,
        )
        .prop_map(move |rows| {
            HPolyhedron::new(
                dim,
                rows.into_iter()
                    .map(|(normal, rhs)| {
                        Halfspace::new(QVector::from_ints(&normal), Rational::from_int(rhs))
                    })
                    .collect(),
                true,
            )
            .unwrap()
        })
    })
}

fn packset_strategy() -> impl Strategy<Value = PackingSet> {
    (1usize..=3).prop_flat_map(|dim| {
        proptest::collection::vec(
            proptest::collection::vec(
                prop_oneof![(0u64..=6).prop_map(ExtNat::Fin), Just(ExtNat::Inf)],
                dim,
            ),
            1..=4,
        )
        .prop_map(move |gens| {
            PackingSet::new(dim, gens.into_iter().map(ExtPoint::new).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_display_parse_round_trip(r in rational_strategy()) {
        let shown = r.to_string();
        let back: Rational = shown.parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn conversion_round_trip(p in hpoly_strategy()) {
        let limits = Limits::default();
        let gens = h_to_v(&p, &limits).unwrap();
        if !gens.is_empty() {
            let back = v_to_h(&gens, &limits).unwrap();
            prop_assert!(poly_equal(&p, &back, &limits).unwrap());
        }
    }

    #[test]
    fn higman_embedding_laws(
        a in proptest::collection::vec(0u64..=3, 0..=5),
        b in proptest::collection::vec(0u64..=3, 0..=5),
        c in proptest::collection::vec(0u64..=3, 0..=5),
    ) {
        // Reflexivity.
        prop_assert!(higman_leq(&a, &a, &OrdLeq).is_some());
        // Transitivity via witness composition.
        if let (Some(ab), Some(bc)) = (higman_leq(&a, &b, &OrdLeq), higman_leq(&b, &c, &OrdLeq)) {
            prop_assert!(higman_leq(&a, &c, &OrdLeq).is_some());
            let composed: Vec<usize> = ab.mapping.iter().map(|&i| bc.mapping[i]).collect();
            for w in composed.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for (i, &j) in composed.iter().enumerate() {
                prop_assert!(a[i] <= c[j]);
            }
        }
    }

    #[test]
    fn packing_set_serde_is_bit_exact(s in packset_strategy()) {
        let json = serde_json::to_string(&s).unwrap();
        let back: PackingSet = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn membership_respects_the_lattice_laws(
        a in packset_strategy(),
        b in packset_strategy(),
    ) {
        if a.dim() != b.dim() {
            return Ok(());
        }
        let union = a.union(&b).unwrap();
        let inter = a.intersect(&b).unwrap();
        let mut bounds = a.finite_bounds();
        for (bb, v) in bounds.iter_mut().zip(b.finite_bounds()) {
            *bb = (*bb).max(v) + 1;
        }
        for x in lattice_box(&bounds) {
            let (ia, ib) = (a.contains_point(&x), b.contains_point(&x));
            prop_assert_eq!(union.contains_point(&x), ia || ib);
            prop_assert_eq!(inter.contains_point(&x), ia && ib);
        }
    }

    #[test]
    fn downward_closure_always_holds(s in packset_strategy()) {
        let bounds = s.finite_bounds();
        for x in lattice_box(&bounds) {
            if !s.contains_point(&x) {
                continue;
            }
            for (j, &v) in x.iter().enumerate() {
                if v > 0 {
                    let mut y = x.clone();
                    y[j] = v - 1;
                    prop_assert!(s.contains_point(&y));
                }
            }
        }
    }
}
