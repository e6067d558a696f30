mod common;

use common::{coords, Desk};
use filtra_core::conflation::{ext_space, realize_cocycle, ExtClass};
use filtra_core::filtration::{decide_filtered, extend, group, oracle_filtered, reorder, Filtration};
use filtra_core::quiverrep::{direct_sum, hom_space, Representation, ThetaFamily};
use filtra_core::search::Budget;
use proptest::prelude::*;

fn theta(ms: &[Representation]) -> Option<ThetaFamily> {
    ThetaFamily::new(ms.to_vec()).ok()
}

fn random_filtration(theta: &ThetaFamily, seed: u64, len: usize) -> Filtration {
    let p = theta.member(0).field().modulus();
    let mut f = Filtration::from_extensions(theta, &[]).unwrap();
    for i in 0..len {
        let label = (seed as usize / (i + 1)) % theta.len();
        let dim = ext_space(theta.member(label), f.object()).unwrap().dim();
        f.push_extension(theta, label, coords(seed ^ i as u64, p, dim)).unwrap();
    }
    f
}

fn dims_add_up(f: &Filtration, theta: &ThetaFamily) -> bool {
    let mut total = vec![0; f.object().dims().len()];
    for (i, m) in f.multiplicities(theta.len()).into_iter().enumerate() {
        for (t, d) in total.iter_mut().zip(theta.member(i).dims()) {
            *t += m * d;
        }
    }
    total == f.object().dims()
}

#[test]
fn direct_sums_of_members_do_not_change_the_filtered_class() {
    let desk = Desk::new(2, 2);
    let (s1, s2, p1) = (desk.s(0), desk.s(1), desk.p(0));
    let s1s1 = s1.power(2);
    let s2p1 = direct_sum(&s2, &p1).unwrap().sum;
    let pairs = [
        (vec![s1.clone(), s2.clone()], vec![s1.clone(), s1s1.clone(), s2.clone()]),
        (vec![s1.clone(), p1.clone()], vec![s1.clone(), s1s1, p1.clone()]),
        (vec![s2.clone(), p1.clone()], vec![s2.clone(), s2p1, p1]),
    ];
    for (small, large) in pairs {
        let (small, large) = (theta(&small).unwrap(), theta(&large).unwrap());
        for m in desk.enumerate(&[2, 2]) {
            let a = decide_filtered(&m, &small, &mut Budget::default()).unwrap().is_some();
            let b = decide_filtered(&m, &large, &mut Budget::default()).unwrap().is_some();
            assert_eq!(a, b, "{:?}", m.dims());
        }
    }
}

#[test]
fn successful_decisions_group_into_at_most_t_layers() {
    let desk = Desk::new(3, 2);
    let fams = [
        vec![desk.s(0), desk.s(1), desk.s(2)],
        vec![desk.s(0), desk.p(0)],
        vec![desk.s(0), desk.p(1)],
    ];
    for fam in fams.iter().filter_map(|f| theta(f)) {
        for m in desk.enumerate(&[1, 2, 1]) {
            if let Some(f) = decide_filtered(&m, &fam, &mut Budget::default()).unwrap() {
                assert!(dims_add_up(&f, &fam));
                let g = group(&reorder(&f, &fam).unwrap(), &fam).unwrap();
                assert!(g.len() <= fam.len());
            }
        }
    }
}

#[test]
fn orthogonality_propagates_to_filtered_objects() {
    let desk = Desk::new(2, 2);
    let (s1, s2, p1) = (desk.s(0), desk.s(1), desk.p(0));
    let desk_set = desk.enumerate(&[2, 2]);
    let classes = [vec![s1.clone()], vec![s2.clone()], vec![p1.clone()], vec![s1.clone(), p1.clone()], vec![s2, p1]];
    let filtered: Vec<Vec<Representation>> = classes
        .iter()
        .map(|c| {
            let fam = theta(c).unwrap();
            desk_set
                .iter()
                .filter(|m| oracle_filtered(m, &fam, &mut Budget::default()).unwrap())
                .cloned()
                .collect()
        })
        .collect();
    for (y, fy) in classes.iter().zip(&filtered) {
        for (z, fz) in classes.iter().zip(&filtered) {
            let hom_vanishes = y.iter().all(|a| z.iter().all(|b| hom_space(a, b).unwrap().dim() == 0));
            let ext_vanishes = y.iter().all(|a| z.iter().all(|b| ext_space(a, b).unwrap().dim() == 0));
            for n in fy {
                for m in fz {
                    if hom_vanishes {
                        assert_eq!(hom_space(n, m).unwrap().dim(), 0);
                    }
                    if ext_vanishes {
                        assert_eq!(ext_space(n, m).unwrap().dim(), 0);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn extend_is_a_valid_filtration(s in any::<[u64; 3]>(), la in 0usize..=3, lc in 0usize..=3) {
        let desk = Desk::new(3, 3);
        let fam = theta(&[desk.s(0), desk.s(1), desk.s(2)]).unwrap();
        let fa = random_filtration(&fam, s[0], la);
        let fc = random_filtration(&fam, s[1], lc);
        let space = ext_space(fc.object(), fa.object()).unwrap();
        let class = ExtClass::new(space.clone(), coords(s[2], 3, space.dim())).unwrap();
        let conf = realize_cocycle(fc.object(), fa.object(), &class.cocycle()).unwrap();
        let fb = extend(&conf, &fa, &fc).unwrap();
        prop_assert!(fb.validate(&fam).is_ok());
        prop_assert_eq!(fb.object(), conf.b());
        let sum: Vec<usize> = fa.multiplicities(3).iter().zip(fc.multiplicities(3)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(fb.multiplicities(3), sum);
        prop_assert!(dims_add_up(&fb, &fam));
    }

    #[test]
    fn reorder_keeps_object_and_multiplicities(seed in any::<u64>(), len in 0usize..=5) {
        let desk = Desk::new(2, 3);
        let fam = theta(&[desk.s(0), desk.s(1)]).unwrap();
        let f = random_filtration(&fam, seed, len);
        let r = reorder(&f, &fam).unwrap();
        prop_assert!(r.is_ordered());
        prop_assert_eq!(r.object(), f.object());
        prop_assert_eq!(r.multiplicities(2), f.multiplicities(2));
    }
}
