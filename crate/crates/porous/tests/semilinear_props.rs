mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use porous::affine1d::AffineFn;
use porous::semilinear::{
    integral_points, Glyphs, LinearSet1D, SemiLinear1D, DEFAULT_ZONOTOPE_CAP,
};

const W: i64 = 200;

fn set_strategy() -> impl Strategy<Value = LinearSet1D> {
    prop_oneof![
        (-30i64..=30).prop_map(LinearSet1D::singleton),
        (-30i64..=30, 1i64..=12).prop_map(|(b, p)| LinearSet1D::nat(b, p)),
        (-30i64..=30, 1i64..=12).prop_map(|(b, p)| LinearSet1D::nat(b, -p)),
        (-30i64..=30, 1i64..=12).prop_map(|(b, p)| LinearSet1D::int(b, p)),
    ]
}

/// Membership read off the definition.
fn member(s: &LinearSet1D, x: i64) -> bool {
    let b: i64 = s.base().try_into().unwrap();
    let p: i64 = s.period().try_into().unwrap();
    if s.is_singleton() {
        return x == b;
    }
    let k = x - b;
    if k % p != 0 {
        return false;
    }
    s.is_int_span() || k / p >= 0
}

/// Far-away points behave like the nearest window edge for every pair we
/// generate (bases within ±30, periods ≤ 12), so a window of ±200 decides
/// inclusion and disjointness.
fn window(s: &LinearSet1D) -> Vec<bool> {
    (-W..=W).map(|x| member(s, x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn membership_agrees(s in set_strategy(), x in -W..=W) {
        prop_assert_eq!(s.contains(&BigInt::from(x)), member(&s, x));
    }

    #[test]
    fn subset_agrees(s in set_strategy(), t in set_strategy()) {
        let (a, b) = (window(&s), window(&t));
        let brute = a.iter().zip(&b).all(|(x, y)| !x || *y);
        prop_assert_eq!(s.is_subset_of(&t), brute, "{} <= {}", s, t);
    }

    #[test]
    fn disjoint_agrees(s in set_strategy(), t in set_strategy()) {
        let (a, b) = (window(&s), window(&t));
        let brute = a.iter().zip(&b).all(|(x, y)| !(x & y));
        prop_assert_eq!(s.is_disjoint_from(&t), brute, "{} vs {}", s, t);
        prop_assert_eq!(t.is_disjoint_from(&s), brute);
    }

    #[test]
    fn image_is_exact(s in set_strategy(), a in -4i64..=4, c in -9i64..=9) {
        let f = AffineFn::new(a, c);
        let img = s.image(&f);
        for x in -40i64..=40 {
            if member(&s, x) {
                prop_assert!(img.contains(&BigInt::from(a * x + c)));
            }
        }
        // every image point near the origin has a preimage
        for y in -40i64..=40 {
            if img.contains(&BigInt::from(y)) {
                let pre = (-400i64..=400).any(|x| member(&s, x) && a * x + c == y);
                prop_assert!(pre, "{} has no preimage of {}", img, y);
            }
        }
    }

    #[test]
    fn union_is_canonical(parts in prop::collection::vec(set_strategy(), 0..6)) {
        let u = SemiLinear1D::new(parts.clone());
        let mut rev = parts.clone();
        rev.reverse();
        prop_assert_eq!(&u, &SemiLinear1D::new(rev));
        prop_assert_eq!(&u, &SemiLinear1D::new(u.components().to_vec()));
        for x in -W..=W {
            let want = parts.iter().any(|p| member(p, x));
            prop_assert_eq!(u.contains(&BigInt::from(x)), want);
        }
        for (i, c) in u.components().iter().enumerate() {
            for (j, d) in u.components().iter().enumerate() {
                prop_assert!(i == j || !c.is_subset_of(d));
            }
        }
        prop_assert_eq!(u.render(Glyphs::Ascii).replace(" U ", " ∪ "), u.render(Glyphs::Unicode));
    }

    #[test]
    fn negation_mirrors(s in set_strategy(), x in -W..=W) {
        prop_assert_eq!(s.negated().contains(&BigInt::from(-x)), member(&s, x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cone_points_agree(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cone = common::random_cone(&mut rng);
        let set = integral_points(&cone, DEFAULT_ZONOTOPE_CAP).unwrap();
        let members = common::nlinear_members(&set, 8);
        for x in common::box_points(cone.dim(), 8) {
            prop_assert_eq!(common::cone_contains(&cone, &x), members.contains(&x), "at {}", x);
        }
    }
}
