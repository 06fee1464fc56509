use proptest::prelude::*;

use orderdim::geometry::permutations;
use orderdim::{
    back_and_forth_iso, check_dpo_fragment, induced_structure, pick_in_region, regions_of, sample_dn, symmetric_sample,
    Error, Fragment, Point, PointCloud,
};

proptest! {
    #[test]
    fn region_law_and_picks(n in 1usize..=3, k in 0usize..=5, seed in any::<u64>()) {
        let c = sample_dn(n, k, seed);
        let regions = regions_of(&c);
        prop_assert_eq!(regions.len(), (k + 1).pow(n as u32));
        for r in &regions {
            let p = pick_in_region(&c, r);
            prop_assert_eq!(regions.iter().filter(|o| o.contains(&p)).count(), 1);
            prop_assert!(r.contains(&p));
            prop_assert!(c.with_point(p).is_ok());
        }
    }

    #[test]
    fn samples_are_prefixes(n in 1usize..=3, k in 0usize..=8, seed in any::<u64>()) {
        let short = sample_dn(n, k, seed);
        let long = sample_dn(n, k + 3, seed);
        prop_assert_eq!(short.points(), &long.points()[..k]);
        prop_assert_eq!(long.len(), k + 3);
    }

    #[test]
    fn back_and_forth_verifies(seed_a in 0u64..1000, seed_b in 0u64..1000, steps in 0usize..16) {
        let iso = back_and_forth_iso(&sample_dn(2, 5, seed_a), &sample_dn(2, 7, seed_b), steps).unwrap();
        prop_assert!(iso.verify());
        prop_assert_eq!(iso.pairs.len(), steps);
        prop_assert!(iso.forward().unwrap().validate().is_ok());
        prop_assert!(iso.inverse().unwrap().validate().is_ok());
    }
}

#[test]
fn samples_are_deterministic_and_colinear_free() {
    let a = sample_dn(3, 20, 7);
    assert_eq!(a, sample_dn(3, 20, 7));
    for i in 0..a.len() {
        for j in 0..i {
            assert!(a.point(i).0.iter().zip(&a.point(j).0).all(|(x, y)| x != y));
        }
    }
}

#[test]
fn symmetric_samples_are_closed() {
    for count in 0..=7 {
        let c = symmetric_sample(2, count, count as u64).unwrap();
        assert_eq!(c.len(), count.div_ceil(2) * 2);
        for p in c.points() {
            for perm in permutations(2) {
                assert!(c.index_of(&p.permuted(&perm)).is_some());
            }
        }
    }
    assert!(matches!(symmetric_sample(3, 6, 0), Err(Error::InvalidArgument(_))));
    assert_eq!(symmetric_sample(1, 3, 0).unwrap().len(), 3);
}

#[test]
fn colinear_points_are_rejected() {
    let err = PointCloud::new(2, vec![Point::from_ints(&[1, 2]), Point::from_ints(&[1, 3])]).unwrap_err();
    assert_eq!(err, Error::Colinear(0, 1));
}

#[test]
fn sampled_clouds_satisfy_the_finite_axioms() {
    let c = sample_dn(2, 5, 3);
    let report = check_dpo_fragment(Fragment::Cloud(&c));
    assert!(report.universal_ok());
    assert_eq!(report.density_defects.len(), 36);
    assert!(report.density_defects.iter().all(|d| d.fillable));
    let s = induced_structure(&c);
    assert!(check_dpo_fragment(Fragment::Structure(&s)).universal_ok());
}
