#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use sumrank::field::{BlockSpec, Elem, Field, FieldTower};
use sumrank::lattice;
use sumrank::linalg::Matrix;
use sumrank::LinearCode;

pub fn f4() -> Arc<Field> {
    Arc::new(Field::new(2, &[1, 1, 1]).unwrap())
}

pub fn f9() -> Arc<Field> {
    Arc::new(Field::new(3, &[1, 0, 1]).unwrap())
}

pub fn f16() -> Arc<Field> {
    Arc::new(Field::new(2, &[1, 1, 0, 0, 1]).unwrap())
}

pub fn tower(field: &Arc<Field>, blocks: &[(usize, usize)]) -> Arc<FieldTower> {
    let specs: Vec<BlockSpec> = blocks.iter().map(|&(n, d)| BlockSpec { n, d, basis: None }).collect();
    Arc::new(FieldTower::new(field.clone(), &specs).unwrap())
}

/// Block patterns of total length at most 3.
pub const PATTERNS: &[&[usize]] = &[&[1], &[2], &[1, 1], &[3], &[2, 1], &[1, 2], &[1, 1, 1]];

/// F4 over F2 with the given block lengths.
pub fn f4_tower(lengths: &[usize]) -> Arc<FieldTower> {
    let blocks: Vec<(usize, usize)> = lengths.iter().map(|&n| (n, 1)).collect();
    tower(&f4(), &blocks)
}

/// Every linear code of the tower's length.
pub fn all_codes(t: &Arc<FieldTower>) -> Vec<LinearCode> {
    let scalars: Vec<Elem> = t.field().elements().collect();
    lattice::all_subspaces(&scalars, t.len())
        .into_iter()
        .map(|m| LinearCode::new(t.clone(), m.into_rows()).unwrap())
        .collect()
}

/// All `F`-linear combinations of the rows, as a set.
pub fn span_set(field: &Field, rows: &Matrix, scalars: &[Elem]) -> HashSet<Vec<Elem>> {
    let mut out = HashSet::new();
    let n = rows.ncols();
    let k = rows.nrows();
    let mut idx = vec![0usize; k];
    loop {
        let mut v = vec![Elem::ZERO; n];
        for (i, &c) in idx.iter().enumerate() {
            for (j, x) in v.iter_mut().enumerate() {
                *x = field.add(*x, field.mul(scalars[c], rows.get(i, j)));
            }
        }
        out.insert(v);
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < scalars.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Every vector of `F^n` with entries from `scalars`.
pub fn all_vectors(scalars: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| scalars.iter().map(move |&s| {
                let mut w = v.clone();
                w.push(s);
                w
            }))
            .collect();
    }
    out
}

/// Rank of `{x_1, .., x_r} ⊆ F` over the subfield with elements `k`,
/// computed as the log of the size of their `K`-span.
pub fn k_rank(field: &Field, xs: &[Elem], k: &[Elem]) -> usize {
    let mut span: HashSet<Elem> = HashSet::from([Elem::ZERO]);
    for &x in xs {
        let mut next = HashSet::new();
        for &s in &span {
            for &c in k {
                next.insert(field.add(s, field.mul(c, x)));
            }
        }
        span = next;
    }
    let mut size = 1;
    let mut r = 0;
    while size < span.len() {
        size *= k.len();
        r += 1;
    }
    assert_eq!(size, span.len());
    r
}

/// Sum-rank weight from the definition, without any matrix code.
pub fn oracle_weight(t: &FieldTower, v: &[Elem]) -> usize {
    let f = t.field();
    (0..t.num_blocks())
        .map(|i| k_rank(f, &v[t.range(i)], t.blocks()[i].subfield().elements(f)))
        .sum()
}
