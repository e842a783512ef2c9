mod common;

use std::sync::Arc;

use proptest::prelude::*;
use sumrank::codes::{self, dimension_identities};
use sumrank::field::{Elem, FieldTower};
use sumrank::lattice::enumerate_supports;
use sumrank::linalg::{self, Matrix};
use sumrank::metric;
use sumrank::{Budget, Error, LinearCode, SupportList};

fn towers() -> Vec<Arc<FieldTower>> {
    let mut out: Vec<Arc<FieldTower>> = [&[1][..], &[2], &[1, 1]].iter().map(|l| common::f4_tower(l)).collect();
    out.push(common::tower(&common::f9(), &[(2, 1)]));
    out.push(common::tower(&common::f9(), &[(1, 1), (1, 1)]));
    out.push(common::tower(&common::f16(), &[(1, 2), (1, 1)]));
    out
}

fn supports(t: &Arc<FieldTower>) -> Vec<SupportList> {
    enumerate_supports(t, None, Budget::DEFAULT).unwrap().collect()
}

#[test]
fn restriction_and_shortening_are_dual() {
    for t in towers() {
        for c in common::all_codes(&t) {
            for l in supports(&t) {
                let lhs = c.restrict(&l).unwrap().dual();
                let rhs = c.dual().shorten(&l).unwrap();
                assert_eq!(lhs, rhs);
                let lhs = c.shorten(&l).unwrap().dual();
                let rhs = c.dual().restrict(&l).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn dimension_identities_hold() {
    for t in towers() {
        for c in common::all_codes(&t) {
            for l in supports(&t) {
                let ids = dimension_identities(&c, &l, Budget::DEFAULT).unwrap();
                assert_eq!(ids.restricted, ids.via_dual);
                assert_eq!(ids.restricted, ids.via_complement);
                assert_eq!(ids.shortened, ids.pre_shortened);
                assert!(ids.restricted <= l.rank().min(c.dim()));
            }
        }
    }
}

#[test]
fn complement_pairs_with_support_generators() {
    for t in towers() {
        let f = t.field();
        for l in supports(&t) {
            let a = metric::support_space_generators(&l);
            let a_prime = codes::complement_generators(&l);
            assert_eq!(linalg::mul(f, &a_prime, &a.transpose()), Matrix::identity(l.rank()));
        }
    }
}

#[test]
fn shortening_preserves_weights_on_support_spaces() {
    for t in towers() {
        let f = t.field();
        let scalars: Vec<Elem> = f.elements().collect();
        for l in supports(&t) {
            let a_prime = codes::complement_generators(&l);
            let short = Arc::new(t.with_lengths(&l.dims()).unwrap());
            let space = metric::support_space_generators(&l);
            for v in common::span_set(f, &space, &scalars) {
                let image = linalg::vec_mul(f, &v, &a_prime.transpose());
                assert_eq!(metric::weight(&short, &image), metric::weight(&t, &v));
            }
        }
    }
}

#[test]
fn shortening_rejects_unpaired_complement() {
    let t = common::f4_tower(&[2]);
    let l = SupportList::from_rows(t.clone(), vec![vec![vec![Elem(1), Elem(1)]]]).unwrap();
    let c = LinearCode::full(t);
    let bad = Matrix::from_rows(2, vec![vec![Elem(0), Elem(0)]]);
    assert_eq!(c.shorten_with(&l, &bad), Err(Error::BadComplement));
    let other = Matrix::from_rows(2, vec![vec![Elem(0), Elem(1)]]);
    assert_eq!(c.shorten_with(&l, &other).unwrap().dim(), 1);
}

#[test]
fn change_of_bases_preserves_weight_distribution() {
    for t in towers() {
        let f = t.field();
        let choices: Vec<Vec<Matrix>> = t
            .blocks()
            .iter()
            .map(|b| metric::invertible_matrices(&t, b.subfield().elements(f), b.len))
            .collect();
        for c in common::all_codes(&t) {
            let dist = c.weight_distribution(Budget::DEFAULT).unwrap();
            for (i, pick) in [0usize, 1, 5].into_iter().enumerate() {
                let bs: Vec<Matrix> =
                    choices.iter().map(|ms| ms[(pick + i * 7) % ms.len()].clone()).collect();
                let image = c.change_of_bases(&bs).unwrap();
                assert_eq!(image.dim(), c.dim());
                assert_eq!(image.weight_distribution(Budget::DEFAULT).unwrap(), dist);
            }
        }
    }
}

#[test]
fn change_of_bases_rejects_bad_matrices() {
    let t = common::f4_tower(&[2]);
    let c = LinearCode::full(t);
    let singular = Matrix::from_rows(2, vec![vec![Elem(1), Elem(1)], vec![Elem(1), Elem(1)]]);
    assert_eq!(c.change_of_bases(&[singular]), Err(Error::SingularMatrix));
    let outside = Matrix::from_rows(2, vec![vec![Elem(2), Elem(0)], vec![Elem(0), Elem(1)]]);
    assert!(matches!(c.change_of_bases(&[outside]), Err(Error::NotInSubfield { .. })));
}

#[test]
fn code_sizes_and_distributions() {
    for t in towers() {
        for c in common::all_codes(&t) {
            let dist = c.weight_distribution(Budget::DEFAULT).unwrap();
            assert_eq!(dist.iter().sum::<u128>(), c.size());
            assert_eq!(dist[0], 1);
            let d = c.min_distance(Budget::DEFAULT).unwrap();
            assert_eq!(d, dist.iter().enumerate().skip(1).find(|(_, &a)| a > 0).map(|(w, _)| w));
            if let Some(d) = d {
                assert!(d + c.dim() <= c.len() + 1);
            }
        }
    }
}

proptest! {
    #[test]
    fn dual_is_an_involution(which in 0usize..6, pick in any::<usize>()) {
        let ts = towers();
        let t = &ts[which];
        let all = common::all_codes(t);
        let c = &all[pick % all.len()];
        prop_assert_eq!(&c.dual().dual(), c);
        prop_assert_eq!(c.dim() + c.dual().dim(), c.len());
        let json = c.to_json();
        prop_assert_eq!(&LinearCode::from_json(t.clone(), &json).unwrap(), c);
    }
}
