mod common;

use common::{coords, Desk};
use filtra_core::conflation::{
    class_of, et4_compose, ext_space, long_exact_sequence, pullback, pushforward, realize, ExtClass, Side,
};
use filtra_core::quiverrep::direct_sum;
use proptest::prelude::*;

#[test]
fn realize_then_class_round_trips_on_the_desk() {
    let desk = Desk::new(2, 3);
    let reps = desk.enumerate(&[2, 2]);
    for c in &reps {
        for a in &reps {
            let space = ext_space(c, a).unwrap();
            for (k, co) in filtra_core::search::Tuples::new(3, space.dim()).enumerate() {
                if k > 9 {
                    break;
                }
                let delta = ExtClass::new(space.clone(), co).unwrap();
                assert_eq!(class_of(&realize(&delta).unwrap()).unwrap(), delta);
            }
        }
    }
}

#[test]
fn six_term_sequences_are_exact() {
    let desk = Desk::new(2, 2);
    let reps = desk.enumerate(&[1, 2]);
    for c in &reps {
        for a in &reps {
            let space = ext_space(c, a).unwrap();
            let n = space.dim();
            let conf = realize(&ExtClass::new(space, vec![1; n]).unwrap()).unwrap();
            for x in &reps {
                assert!(long_exact_sequence(&conf, x, Side::Left).unwrap().is_exact());
                assert!(long_exact_sequence(&conf, x, Side::Right).unwrap().is_exact());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ext_is_biadditive(s in any::<[u64; 3]>(), n in 2usize..=3) {
        let desk = Desk::new(n, 2);
        let (c, a, b) = (desk.random(s[0], 2), desk.random(s[1], 2), desk.random(s[2], 2));
        let ab = direct_sum(&a, &b).unwrap().sum;
        let e = |x: &_, y: &_| ext_space(x, y).unwrap().dim();
        prop_assert_eq!(e(&c, &ab), e(&c, &a) + e(&c, &b));
        prop_assert_eq!(e(&ab, &c), e(&a, &c) + e(&b, &c));
    }

    #[test]
    fn direct_sum_of_conflations_has_the_componentwise_class(s in any::<[u64; 6]>(), n in 2usize..=3) {
        let desk = Desk::new(n, 3);
        let (a, c, a2, c2) = (desk.random(s[0], 1), desk.random(s[1], 2), desk.random(s[2], 1), desk.random(s[3], 2));
        let sp = ext_space(&c, &a).unwrap();
        let sp2 = ext_space(&c2, &a2).unwrap();
        let d = ExtClass::new(sp.clone(), coords(s[4], 3, sp.dim())).unwrap();
        let d2 = ExtClass::new(sp2.clone(), coords(s[5], 3, sp2.dim())).unwrap();
        let sum = realize(&d).unwrap().direct_sum(&realize(&d2).unwrap()).unwrap();
        let big = class_of(&sum).unwrap();
        let sa = direct_sum(&a, &a2).unwrap();
        let sc = direct_sum(&c, &c2).unwrap();
        let restrict = |pa: usize, ic: usize| pushforward(&sa.proj[pa], &pullback(&sc.inj[ic], &big).unwrap()).unwrap();
        prop_assert_eq!(restrict(0, 0), d);
        prop_assert_eq!(restrict(1, 1), d2);
        prop_assert!(restrict(0, 1).is_zero());
        prop_assert!(restrict(1, 0).is_zero());
    }

    #[test]
    fn octahedral_compatibilities(s in any::<[u64; 5]>(), n in 2usize..=3, p in prop::sample::select(vec![2u32, 3])) {
        let desk = Desk::new(n, p);
        let (a, d, f) = (desk.random(s[0], 1), desk.random(s[1], 2), desk.random(s[2], 1));
        let sp = ext_space(&d, &a).unwrap();
        let c1 = realize(&ExtClass::new(sp.clone(), coords(s[3], p, sp.dim())).unwrap()).unwrap();
        let sp2 = ext_space(&f, c1.b()).unwrap();
        let c2 = realize(&ExtClass::new(sp2.clone(), coords(s[4], p, sp2.dim())).unwrap()).unwrap();
        let et = et4_compose(&c1, &c2).unwrap();
        let (delta, delta1, delta2) = (class_of(&c1).unwrap(), class_of(&c2).unwrap(), class_of(&et.c3).unwrap());
        prop_assert_eq!(class_of(&et.c4).unwrap(), pushforward(c1.y(), &delta1).unwrap());
        prop_assert_eq!(pullback(&et.d, &delta2).unwrap(), delta);
        prop_assert_eq!(pushforward(c1.x(), &delta2).unwrap(), pullback(&et.e, &delta1).unwrap());
    }
}
