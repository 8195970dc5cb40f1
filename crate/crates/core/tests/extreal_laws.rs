mod common;

use common::{ext, finite};
use conedual::extreal::{ExtReal, ExtRealError};
use proptest::prelude::*;

proptest! {
    #[test]
    fn addition_is_a_commutative_monoid(a in ext(), b in ext(), c in ext()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b) + c.clone(), a.clone() + (&b + &c));
        prop_assert_eq!(&a + &ExtReal::zero(), a);
    }

    #[test]
    fn multiplication_distributes(a in ext(), b in ext(), c in ext()) {
        prop_assert_eq!(&a * &(&b + &c), (&a * &b) + (&a * &c));
        prop_assert_eq!((&a * &b) * c.clone(), a.clone() * (&b * &c));
    }

    #[test]
    fn order_is_compatible(a in ext(), b in ext(), c in ext()) {
        if a <= b {
            prop_assert!(&a + &c <= &b + &c);
            prop_assert!(&a * &c <= &b * &c);
        }
        prop_assert_eq!(a.leq(&b), a <= b);
    }

    #[test]
    fn partial_difference_inverts_addition(a in ext(), b in finite()) {
        let s = &a + &b;
        prop_assert_eq!(s.sub_partial(&b).unwrap(), a);
    }

    #[test]
    fn difference_below_is_undefined(a in finite(), b in finite()) {
        if a < b {
            prop_assert!(a.sub_partial(&b).is_err());
        }
    }

    #[test]
    fn text_round_trip(a in ext()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<ExtReal>().unwrap(), a.clone());
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExtReal>(&j).unwrap(), a);
    }

    #[test]
    fn extrema_bound_every_element(xs in prop::collection::vec(ext(), 1..6)) {
        let lo = ExtReal::min_of(&xs).unwrap();
        let hi = ExtReal::max_of(&xs).unwrap();
        prop_assert!(xs.iter().all(|x| &lo <= x && x <= &hi));
        prop_assert!(xs.contains(&lo) && xs.contains(&hi));
    }
}

#[test]
fn infinity_edge_cases() {
    let inf = ExtReal::Infinity;
    assert_eq!(ExtReal::zero() * inf.clone(), ExtReal::zero());
    assert_eq!(ExtReal::ratio(1, 1000) * inf.clone(), inf);
    assert_eq!(ExtReal::from(5) + inf.clone(), inf);
    assert!(matches!(inf.sub_partial(&inf), Err(ExtRealError::UndefinedDifference { .. })));
    assert_eq!(inf.sub_partial(&ExtReal::from(7)).unwrap(), inf);
    assert!(ExtReal::min_of(&[] as &[ExtReal]).is_err());
    assert!("-1".parse::<ExtReal>().is_err());
    assert!("1/0".parse::<ExtReal>().is_err());
}
