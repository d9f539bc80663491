mod common;

use common::polyfn;
use dirac_groupoids::dirac::{
    check_lagrangian, courant_bracket_skew, courant_tensor, dorfman_bracket, from_bivector, from_two_form, Bivector,
    PSection,
};
use dirac_groupoids::geometry::{exterior_derivative, Chart, KForm, PointP, RF};
use proptest::prelude::*;

fn m3() -> Chart {
    Chart::new("M", ["x", "y", "z"]).unwrap()
}

fn fun() -> impl Strategy<Value = RF> {
    polyfn(m3().vars().clone(), 3, 3)
}

fn funs(k: usize) -> impl Strategy<Value = Vec<RF>> {
    prop::collection::vec(fun(), k)
}

fn section(v: Vec<RF>, a: Vec<RF>) -> PSection {
    PSection::from_columns(&m3(), dirac_groupoids::dirac::PVec::new(v, a)).unwrap()
}

fn two_form(c: Vec<RF>) -> KForm {
    let m = m3();
    let entries = vec![(vec![0, 1], c[0].clone()), (vec![0, 2], c[1].clone()), (vec![1, 2], c[2].clone())];
    KForm::from_entries(&m, 2, entries).unwrap()
}

fn origin() -> PointP {
    let z = common::rat(0, 1);
    PointP::new(&m3(), vec![z.clone(), z.clone(), z]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dorfman_leibniz(a in funs(6), b in funs(6), f in fun()) {
        let a = section(a[..3].to_vec(), a[3..].to_vec());
        let b = section(b[..3].to_vec(), b[3..].to_vec());
        let lhs = dorfman_bracket(&a, &b.scale(&f)).unwrap();
        let rhs = dorfman_bracket(&a, &b).unwrap().scale(&f).add(&b.scale(&a.vector.apply(&f))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn courant_tensor_is_alternating(c in funs(3)) {
        // any 2-form, closed or not, has a Lagrangian graph
        let t = courant_tensor(&from_two_form(&two_form(c)).unwrap()).unwrap();
        let e = &t.entries;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    prop_assert_eq!(&e[i][j][k], &-e[j][i][k].clone());
                    prop_assert_eq!(&e[i][j][k], &-e[i][k][j].clone());
                }
            }
        }
    }

    #[test]
    fn graphs_are_lagrangian(c in funs(3)) {
        let m = m3();
        let pi = Bivector::from_entries(&m, vec![((0, 1), c[0].clone()), ((0, 2), c[1].clone()), ((1, 2), c[2].clone())]).unwrap();
        prop_assert!(check_lagrangian(&from_bivector(&pi), &origin()).unwrap().passed());
        prop_assert!(check_lagrangian(&from_two_form(&two_form(c)).unwrap(), &origin()).unwrap().passed());
    }

    #[test]
    fn jacobi_on_closed_frames(theta in funs(3), f in fun()) {
        let m = m3();
        let omega = exterior_derivative(&KForm::one_form(&m, theta).unwrap()).unwrap();
        let pi = Bivector::from_entries(&m, vec![((0, 1), f)]).unwrap();
        for frame in [from_two_form(&omega).unwrap(), from_bivector(&pi)] {
            prop_assert!(courant_tensor(&frame).unwrap().closed);
            let e = &frame.sections;
            let br = |a: &PSection, b: &PSection| courant_bracket_skew(a, b).unwrap();
            let jac = br(&br(&e[0], &e[1]), &e[2])
                .add(&br(&br(&e[1], &e[2]), &e[0])).unwrap()
                .add(&br(&br(&e[2], &e[0]), &e[1])).unwrap();
            prop_assert!(jac.is_zero(), "jacobiator {:?}", jac.columns());
        }
    }
}
