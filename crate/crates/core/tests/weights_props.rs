mod common;

use std::sync::Arc;

use proptest::prelude::*;
use sumrank::field::{Elem, FieldTower};
use sumrank::lattice::enumerate_supports;
use sumrank::linalg::Matrix;
use sumrank::metric;
use sumrank::weights::{self, Algorithm};
use sumrank::{Budget, LinearCode};

fn towers() -> Vec<Arc<FieldTower>> {
    let mut out: Vec<Arc<FieldTower>> = common::PATTERNS.iter().map(|l| common::f4_tower(l)).collect();
    out.push(common::tower(&common::f9(), &[(2, 1)]));
    out.push(common::tower(&common::f9(), &[(1, 1), (1, 1)]));
    out.push(common::tower(&common::f16(), &[(2, 2)]));
    out.push(common::tower(&common::f16(), &[(1, 2), (1, 1)]));
    out
}

fn codes() -> Vec<LinearCode> {
    towers().iter().flat_map(common::all_codes).collect()
}

fn zero_of(c: &LinearCode) -> LinearCode {
    LinearCode::zero(c.tower().clone())
}

/// `d_1` as the least span-oracle weight over the nonzero codewords.
fn oracle_distance(c: &LinearCode) -> Option<usize> {
    c.codewords(Budget::DEFAULT)
        .unwrap()
        .iter()
        .filter(|v| v.iter().any(|e| !e.is_zero()))
        .map(|v| common::oracle_weight(c.tower(), v))
        .min()
}

#[test]
fn first_weight_is_minimum_distance() {
    for c in codes() {
        let h = weights::hierarchy(&c, Budget::DEFAULT).unwrap();
        assert_eq!(h.first().copied(), oracle_distance(&c));
        assert_eq!(weights::min_distance(&c, Budget::DEFAULT).unwrap(), oracle_distance(&c));
    }
}

#[test]
fn algorithms_agree_on_nested_pairs() {
    for t in towers().into_iter().filter(|t| t.len() <= 2 || t.field().order() == 4) {
        let all = common::all_codes(&t);
        for c1 in &all {
            for c2 in all.iter().filter(|c2| c2.dim() < c1.dim() && c1.includes(c2).unwrap()) {
                let a = weights::generalized_weights(c1, c2, Algorithm::SupportScan, Budget::DEFAULT).unwrap();
                let b = weights::generalized_weights(c1, c2, Algorithm::SubspaceScan, Budget::DEFAULT).unwrap();
                assert_eq!(a, b);
                for r in 1..=a.len() {
                    let single = weights::generalized_weight(c1, c2, r, Algorithm::SupportScan, Budget::DEFAULT);
                    assert_eq!(single.unwrap(), a[r - 1]);
                }
            }
        }
    }
}

#[test]
fn monotone_and_singleton() {
    for c in codes() {
        let d = weights::hierarchy(&c, Budget::DEFAULT).unwrap();
        let (n, k) = (c.len(), c.dim());
        for r in 1..=k {
            assert!(d[r - 1] >= r);
            assert!(d[r - 1] <= n - k + r);
            if r > 1 {
                assert!(d[r - 1] > d[r - 2]);
            }
        }
    }
}

#[test]
fn profile_and_weights_determine_each_other() {
    for c in codes().into_iter().filter(|c| c.dim() > 0) {
        let zero = zero_of(&c);
        let prof = weights::k_profile_all(&c, &zero, Budget::DEFAULT).unwrap();
        assert_eq!(prof[0], 0);
        assert_eq!(prof[c.len()], c.dim());
        for mu in 0..=c.len() {
            assert_eq!(weights::k_profile(&c, &zero, mu, Budget::DEFAULT).unwrap(), prof[mu]);
        }
        let d = weights::weights_from_profile(&prof, c.dim());
        assert_eq!(weights::profile_from_weights(&d, c.len()), prof);
        assert_eq!(d, weights::hierarchy(&c, Budget::DEFAULT).unwrap());
    }
}

#[test]
fn wei_duality_partitions_lengths() {
    for c in codes() {
        let w = weights::wei_duality(&c, Budget::DEFAULT).unwrap();
        assert!(w.holds, "{w:?}");
        assert_eq!(w.primal.len() + w.dual.len(), c.len());
    }
}

#[test]
fn classical_bounds_hold() {
    for c in codes() {
        let d = weights::hierarchy(&c, Budget::DEFAULT).unwrap();
        for check in weights::check_bounds(&d, c.len(), c.tower().field().order() as u64).unwrap() {
            assert!(check.holds, "{check:?} for {d:?}");
        }
    }
}

#[test]
fn msrd_codes_have_msrd_duals_restrictions_and_shortenings() {
    for c in codes().into_iter().filter(|c| c.dim() > 0) {
        let rank = weights::msrd_rank(&c, Budget::DEFAULT).unwrap();
        let d = weights::min_distance(&c, Budget::DEFAULT).unwrap().unwrap();
        assert_eq!(rank == Some(1), d == c.len() - c.dim() + 1);
        if rank != Some(1) {
            continue;
        }
        let dual = c.dual();
        if dual.dim() > 0 {
            assert_eq!(weights::msrd_rank(&dual, Budget::DEFAULT).unwrap(), Some(1));
        }
        for l in enumerate_supports(c.tower(), None, Budget::DEFAULT).unwrap() {
            for sub in [c.restrict(&l).unwrap(), c.shorten(&l).unwrap()] {
                if let Some(ds) = sub.min_distance(Budget::DEFAULT).unwrap() {
                    assert_eq!(ds, sub.len() - sub.dim() + 1);
                }
            }
        }
    }
}

#[test]
fn msrd_support_conditions_agree() {
    for c in codes().into_iter().filter(|c| c.dim() > 0) {
        for r in 1..=c.dim() {
            let cond = weights::msrd_support_characterization(&c, r, Budget::DEFAULT).unwrap();
            assert!(cond.agree, "{cond:?}");
            let dual = weights::hierarchy(&c.dual(), Budget::DEFAULT).unwrap();
            let dual_r_msrd = dual.get(r - 1).is_none_or(|&w| w == c.dim() + r);
            assert_eq!(cond.dual_weight, dual_r_msrd);
        }
    }
}

#[test]
fn effective_length_characterisations() {
    for c in codes() {
        let e = weights::effective_length(&c, Budget::DEFAULT).unwrap();
        assert_eq!(e.length, e.support_rank);
        assert_eq!(e.length, e.via_dual);
        assert_eq!(e.degenerate, e.length < c.len());
        let report = weights::weight_report(&c, Budget::DEFAULT).unwrap();
        assert_eq!(report.effective_length, e.length);
        assert_eq!(report.degenerate, e.degenerate);
    }
}

#[test]
fn weights_invariant_under_change_of_bases() {
    for t in towers().into_iter().filter(|t| t.len() <= 2) {
        let f = t.field();
        let choices: Vec<Vec<Matrix>> = t
            .blocks()
            .iter()
            .map(|b| metric::invertible_matrices(&t, b.subfield().elements(f), b.len))
            .collect();
        for c in common::all_codes(&t) {
            let d = weights::hierarchy(&c, Budget::DEFAULT).unwrap();
            for pick in [1usize, 3, 4] {
                let bs: Vec<Matrix> = choices.iter().map(|ms| ms[pick % ms.len()].clone()).collect();
                let image = c.change_of_bases(&bs).unwrap();
                assert_eq!(weights::hierarchy(&image, Budget::DEFAULT).unwrap(), d);
            }
        }
    }
}

#[test]
fn refined_partition_weights_match() {
    let cases: [(&[usize], Vec<Vec<usize>>); 3] =
        [(&[2], vec![vec![1, 1]]), (&[2], vec![vec![2]]), (&[2, 1], vec![vec![1, 1], vec![1]])];
    for (lengths, refinement) in cases {
        let t = common::f4_tower(lengths);
        for c in common::all_codes(&t).into_iter().filter(|c| c.dim() > 0) {
            let zero = zero_of(&c);
            let d = weights::hierarchy(&c, Budget::DEFAULT).unwrap();
            for r in 1..=c.dim() {
                let w = weights::refined_partition_weight(&c, &zero, &refinement, r, Budget::DEFAULT).unwrap();
                assert_eq!(w, d[r - 1]);
            }
        }
    }
}

proptest! {
    #[test]
    fn relative_weights_dominate_absolute(which in 0usize..11, a in any::<usize>(), b in any::<usize>()) {
        let ts = towers();
        let t = &ts[which];
        let all = common::all_codes(t);
        let c1 = &all[a % all.len()];
        let subs: Vec<&LinearCode> = all.iter().filter(|c2| c2.dim() < c1.dim() && c1.includes(c2).unwrap()).collect();
        prop_assume!(!subs.is_empty());
        let c2 = subs[b % subs.len()];
        let rel = weights::generalized_weights(c1, c2, Algorithm::SupportScan, Budget::DEFAULT).unwrap();
        let abs = weights::hierarchy(c1, Budget::DEFAULT).unwrap();
        for (r, w) in rel.iter().enumerate() {
            prop_assert!(*w >= abs[r]);
        }
    }

    #[test]
    fn weight_of_span_is_support_rank(which in 0usize..11, coeffs in proptest::collection::vec(any::<u32>(), 6)) {
        let ts = towers();
        let t = &ts[which];
        let q = t.field().order();
        let v: Vec<Elem> = coeffs.iter().take(t.len()).map(|&x| Elem(x % q)).collect();
        prop_assume!(v.iter().any(|e| !e.is_zero()));
        let c = LinearCode::new(t.clone(), vec![v.clone()]).unwrap();
        prop_assert_eq!(weights::hierarchy(&c, Budget::DEFAULT).unwrap(), vec![common::oracle_weight(t, &v)]);
    }
}
