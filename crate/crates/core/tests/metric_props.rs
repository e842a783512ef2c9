mod common;

use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;
use sumrank::field::{Elem, FieldTower};
use sumrank::lattice::{enumerate_supports, SupportList};
use sumrank::linalg::{self, Matrix};
use sumrank::metric::{self, SupportSpace};
use sumrank::Budget;

fn small_towers() -> Vec<Arc<FieldTower>> {
    let mut out = Vec::new();
    for lengths in [&[1][..], &[2], &[1, 1], &[2, 1], &[2, 2]] {
        out.push(common::f4_tower(lengths));
    }
    for blocks in [&[(1, 1)][..], &[(2, 1)], &[(1, 1), (1, 1)], &[(2, 1), (1, 1)]] {
        out.push(common::tower(&common::f9(), blocks));
    }
    for blocks in [&[(2, 2)][..], &[(1, 1), (1, 2)], &[(2, 2), (1, 4)], &[(2, 1)]] {
        out.push(common::tower(&common::f16(), blocks));
    }
    out
}

fn supports(t: &Arc<FieldTower>) -> Vec<SupportList> {
    enumerate_supports(t, None, Budget::DEFAULT).unwrap().collect()
}

#[test]
fn support_space_round_trip() {
    for t in small_towers() {
        for l in supports(&t) {
            let a = metric::support_space_generators(&l);
            assert_eq!(linalg::rank(t.field(), &a), l.rank());
            assert_eq!(metric::support_space_of(&t, &a).unwrap(), SupportSpace::Support(l.clone()));
        }
    }
}

#[test]
fn dual_support_space_is_orthogonal_complement() {
    for t in small_towers() {
        let f = t.field();
        for l in supports(&t) {
            let a = metric::support_space_generators(&l);
            let b = metric::support_space_generators(&l.dual());
            assert_eq!(b.nrows(), t.len() - l.rank());
            for x in a.rows() {
                for y in b.rows() {
                    assert!(f.dot(x, y).is_zero());
                }
            }
            assert_eq!(linalg::row_space(f, &b), linalg::nullspace(f, &a));
        }
    }
}

#[test]
fn support_spaces_respect_sums_and_intersections() {
    for t in small_towers().into_iter().filter(|t| t.len() <= 3) {
        let f = t.field();
        let all = supports(&t);
        for l in &all {
            for m in &all {
                let (vl, vm) = (metric::support_space_generators(l), metric::support_space_generators(m));
                let sum = metric::support_space_generators(&l.sum(m).unwrap());
                let meet = metric::support_space_generators(&l.intersect(m).unwrap());
                assert_eq!(linalg::row_space(f, &sum), linalg::sum(f, &vl, &vm));
                assert_eq!(linalg::row_space(f, &meet), linalg::intersect(f, &vl, &vm));
            }
        }
    }
}

#[test]
fn weight_matches_span_oracle() {
    for t in small_towers().into_iter().filter(|t| t.len() <= 3 && t.field().order() <= 9) {
        let scalars: Vec<Elem> = t.field().elements().collect();
        for v in common::all_vectors(&scalars, t.len()) {
            let w = metric::weight(&t, &v);
            assert_eq!(w, common::oracle_weight(&t, &v), "{v:?}");
            assert_eq!(metric::support(&t, &v).rank(), w);
            assert!(metric::hamming_weight(&v) >= w);
        }
    }
}

#[test]
fn support_dual_matches_annihilator_oracle() {
    // supp(c)^⊥ = {x ∈ K^n : Σ c_j x_j = 0}, blockwise.
    for t in small_towers().into_iter().filter(|t| t.len() <= 3 && t.field().order() <= 9) {
        let f = t.field();
        let scalars: Vec<Elem> = f.elements().collect();
        for v in common::all_vectors(&scalars, t.len()) {
            let dual = metric::support(&t, &v).dual();
            for i in 0..t.num_blocks() {
                let k = t.blocks()[i].subfield().elements(f);
                let ci = &v[t.range(i)];
                let expected: HashSet<Vec<Elem>> =
                    common::all_vectors(k, ci.len()).into_iter().filter(|x| f.dot(ci, x).is_zero()).collect();
                let got = common::span_set(f, dual.part(i).basis(), k);
                assert_eq!(got, expected);
            }
        }
    }
}

#[test]
fn subspace_support_is_sum_over_all_vectors() {
    for t in [common::f4_tower(&[2]), common::f4_tower(&[1, 1]), common::tower(&common::f9(), &[(2, 1)])] {
        let f = t.field();
        let scalars: Vec<Elem> = f.elements().collect();
        for gens in sumrank::lattice::all_subspaces(&scalars, t.len()) {
            let from_gens = metric::subspace_support(&t, &gens);
            let mut acc = SupportList::zero(t.clone());
            for v in common::span_set(f, &gens, &scalars) {
                acc = acc.sum(&metric::support(&t, &v)).unwrap();
            }
            assert_eq!(from_gens, acc);
        }
    }
}

#[test]
fn membership_agrees_with_row_space() {
    for t in small_towers().into_iter().filter(|t| t.len() <= 2) {
        let f = t.field();
        let scalars: Vec<Elem> = f.elements().collect();
        let vectors = common::all_vectors(&scalars, t.len());
        for l in supports(&t) {
            let a = metric::support_space_generators(&l);
            for v in &vectors {
                assert_eq!(metric::in_support_space(v, &l).unwrap(), linalg::in_row_space(f, &a, v));
            }
        }
    }
}

#[test]
fn hamming_minimum_matches_weight() {
    for t in [common::f4_tower(&[2]), common::f4_tower(&[1, 2]), common::tower(&common::f9(), &[(2, 1)])] {
        let scalars: Vec<Elem> = t.field().elements().collect();
        for d in sumrank::lattice::all_subspaces(&scalars, t.len()).into_iter().filter(|d| d.nrows() <= 2) {
            let expected = metric::subspace_support(&t, &d).rank();
            assert_eq!(metric::weight_via_hamming_minimum(&t, &d, Budget::DEFAULT).unwrap(), expected);
        }
    }
}

proptest! {
    #[test]
    fn support_spaces_are_left_modules(which in 0usize..13, pick in any::<usize>(), coeffs in proptest::collection::vec(any::<u32>(), 8), mats in proptest::collection::vec(any::<u32>(), 64)) {
        let towers = small_towers();
        let t = &towers[which % towers.len()];
        let f = t.field();
        let all = supports(t);
        let l = &all[pick % all.len()];
        let a = metric::support_space_generators(l);
        let c: Vec<Elem> = (0..a.nrows()).map(|i| Elem(coeffs[i % coeffs.len()] % f.order())).collect();
        let v = if a.nrows() == 0 { vec![Elem::ZERO; t.len()] } else { linalg::vec_mul(f, &c, &a) };
        let mut w = Vec::new();
        let mut cursor = 0;
        for i in 0..t.num_blocks() {
            let b = &t.blocks()[i];
            let k = b.subfield().elements(f);
            let mi = b.ext_degree();
            let rows = (0..mi).map(|_| (0..mi).map(|_| { cursor += 1; k[mats[cursor % mats.len()] as usize % k.len()] }).collect()).collect();
            let r = Matrix::from_rows(mi, rows);
            let m = t.matrix_representation(&v[t.range(i)], i).unwrap();
            w.extend(t.from_matrix_representation(&linalg::mul(f, &r, &m), i).unwrap());
        }
        prop_assert!(metric::in_support_space(&w, l).unwrap());
    }

    #[test]
    fn metric_axioms(which in 0usize..13, a in proptest::collection::vec(any::<u32>(), 6), b in proptest::collection::vec(any::<u32>(), 6), c in proptest::collection::vec(any::<u32>(), 6)) {
        let towers = small_towers();
        let t = &towers[which % towers.len()];
        let q = t.field().order();
        let take = |v: &[u32]| -> Vec<Elem> { v.iter().take(t.len()).map(|&x| Elem(x % q)).collect() };
        let (a, b, c) = (take(&a), take(&b), take(&c));
        prop_assert_eq!(metric::distance(t, &a, &a), 0);
        prop_assert_eq!(metric::distance(t, &a, &b), metric::distance(t, &b, &a));
        prop_assert!(metric::distance(t, &a, &c) <= metric::distance(t, &a, &b) + metric::distance(t, &b, &c));
        prop_assert_eq!(metric::distance(t, &a, &b) == 0, a == b);
        prop_assert_eq!(metric::weight(t, &a), metric::support(t, &a).rank());
    }
}
