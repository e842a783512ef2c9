//! The support lattice: lists of subspaces `(L_1, .., L_ℓ)` with
//! `L_i ⊆ K_i^{n_i}`, ordered blockwise by inclusion.
//!
//! Every subspace is stored by its RREF basis, so equality of supports is
//! syntactic equality.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::field::{Elem, Field, FieldTower};
use crate::linalg::{self, Matrix};

/// A `K_i`-subspace of `K_i^{n_i}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    block: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn block(&self) -> usize {
        self.block
    }

    /// Canonical RREF basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// JSON form of one block of a support: `{block, rows}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub block: usize,
    pub rows: Vec<Vec<Elem>>,
}

/// An element of the lattice of sum-rank supports.
#[derive(Debug, Clone)]
pub struct SupportList {
    tower: Arc<FieldTower>,
    parts: Vec<Subspace>,
}

impl PartialEq for SupportList {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts && same_tower(&self.tower, &other.tower)
    }
}

impl Eq for SupportList {}

pub(crate) fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> Result<()> {
    if same_tower(a, b) {
        Ok(())
    } else {
        Err(Error::TowerMismatch)
    }
}

impl SupportList {
    /// Builds a support from arbitrary spanning rows per block; rows must
    /// have entries in the block's subfield.
    pub fn from_rows(tower: Arc<FieldTower>, blocks: Vec<Vec<Vec<Elem>>>) -> Result<SupportList> {
        if blocks.len() != tower.num_blocks() {
            return Err(Error::DimensionMismatch { expected: tower.num_blocks(), found: blocks.len() });
        }
        let f = tower.field().clone();
        let mut parts = Vec::with_capacity(blocks.len());
        for (i, rows) in blocks.into_iter().enumerate() {
            let b = tower.block(i)?;
            for &e in rows.iter().flatten() {
                f.element(e.0 as u64)?;
                if !f.in_subfield(e, b.degree()) {
                    return Err(Error::NotInSubfield { code: e.0, degree: b.degree() });
                }
            }
            let m = Matrix::try_from_rows(b.len, rows)?;
            parts.push(Subspace { block: i, basis: linalg::row_space(&f, &m) });
        }
        Ok(SupportList { tower, parts })
    }

    pub fn from_json(tower: Arc<FieldTower>, parts: &[SubspaceJson]) -> Result<SupportList> {
        let mut blocks = vec![Vec::new(); tower.num_blocks()];
        for p in parts {
            if p.block >= blocks.len() {
                return Err(Error::BadBlock(p.block));
            }
            blocks[p.block].extend(p.rows.iter().cloned());
        }
        SupportList::from_rows(tower, blocks)
    }

    pub fn to_json(&self) -> Vec<SubspaceJson> {
        self.parts
            .iter()
            .map(|p| SubspaceJson { block: p.block, rows: p.basis.rows().to_vec() })
            .collect()
    }

    /// Internal constructor for already canonical matrices.
    pub(crate) fn from_canonical(tower: Arc<FieldTower>, bases: Vec<Matrix>) -> SupportList {
        let parts = bases.into_iter().enumerate().map(|(block, basis)| Subspace { block, basis }).collect();
        SupportList { tower, parts }
    }

    /// The zero support `0`.
    pub fn zero(tower: Arc<FieldTower>) -> SupportList {
        let bases = tower.blocks().iter().map(|b| Matrix::empty(b.len)).collect();
        SupportList::from_canonical(tower, bases)
    }

    /// The total support `T = (K_1^{n_1}, .., K_ℓ^{n_ℓ})`.
    pub fn total(tower: Arc<FieldTower>) -> SupportList {
        let bases = tower.blocks().iter().map(|b| Matrix::identity(b.len)).collect();
        SupportList::from_canonical(tower, bases)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Subspace {
        &self.parts[i]
    }

    fn field(&self) -> &Field {
        self.tower.field()
    }

    /// `Rk(L) = Σ dim L_i`.
    pub fn rank(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    /// Whether `other ⊆ self`.
    pub fn includes(&self, other: &SupportList) -> Result<bool> {
        check_tower(&self.tower, &other.tower)?;
        let f = self.field();
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| {
            b.dim() <= a.dim() && linalg::rank(f, &a.basis.stack(&b.basis)) == a.dim()
        }))
    }

    fn blockwise(
        &self,
        other: &SupportList,
        op: impl Fn(&Field, &Matrix, &Matrix) -> Matrix,
    ) -> Result<SupportList> {
        check_tower(&self.tower, &other.tower)?;
        let f = self.field();
        let bases = self.parts.iter().zip(&other.parts).map(|(a, b)| op(f, &a.basis, &b.basis)).collect();
        Ok(SupportList::from_canonical(self.tower.clone(), bases))
    }

    pub fn sum(&self, other: &SupportList) -> Result<SupportList> {
        self.blockwise(other, linalg::sum)
    }

    pub fn intersect(&self, other: &SupportList) -> Result<SupportList> {
        self.blockwise(other, linalg::intersect)
    }

    /// Blockwise orthogonal complement under the standard bilinear form.
    pub fn dual(&self) -> SupportList {
        let f = self.field();
        let bases = self.parts.iter().map(|p| linalg::nullspace(f, &p.basis)).collect();
        SupportList::from_canonical(self.tower.clone(), bases)
    }

    /// A complement `L''` of `self` inside `inside`, obtained by extending the
    /// basis of `self` greedily with the rows of `inside`'s canonical basis
    /// (standard basis vectors when `inside = T`).
    pub fn complementary(&self, inside: &SupportList) -> Result<SupportList> {
        if !inside.includes(self)? {
            return Err(Error::NotASubspace);
        }
        let f = self.field();
        let mut bases = Vec::with_capacity(self.parts.len());
        for (l, big) in self.parts.iter().zip(&inside.parts) {
            let mut span = l.basis.clone();
            let mut ext = Matrix::empty(l.ambient_dim());
            for row in big.basis.rows() {
                if !linalg::in_row_space(f, &span, row) {
                    span.push_row(row.clone());
                    ext.push_row(row.clone());
                }
            }
            bases.push(linalg::row_space(f, &ext));
        }
        Ok(SupportList::from_canonical(self.tower.clone(), bases))
    }

    /// `A = diag(A_1, .., A_ℓ)` built from the canonical bases; its row space
    /// over `F` is the support space `V_L`.
    pub fn generator_matrix(&self) -> Matrix {
        let blocks: Vec<Matrix> = self.parts.iter().map(|p| p.basis.clone()).collect();
        Matrix::block_diag(&blocks)
    }
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// Number of subspaces of `K^n` with `|K| = q`.
pub fn subspace_count(n: usize, q: u64) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(n, k, q)))
}

/// Number of supports in the lattice of `tower`.
pub fn support_count(tower: &FieldTower) -> u128 {
    let f = tower.field();
    tower
        .blocks()
        .iter()
        .fold(1u128, |acc, b| acc.saturating_mul(subspace_count(b.len, b.subfield().size(f))))
}

/// Advances a mixed-radix counter, last digit fastest. Returns `false` once
/// it wraps around to all zeros.
pub(crate) fn advance(idx: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < radix(k) {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// Advances a strictly increasing `k`-subset of `0..n`.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `dim`-dimensional subspaces of `K^n`, as RREF matrices sorted by
/// their flattened codes. `scalars` lists the elements of `K`.
pub fn subspaces_of_dim(scalars: &[Elem], n: usize, dim: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    if dim > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut m = Matrix::zeros(dim, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, Elem::ONE);
            }
            for (&(r, c), &i) in free.iter().zip(&idx) {
                m.set(r, c, scalars[i]);
            }
            out.push(m);
            if !advance(&mut idx, |_| scalars.len()) {
                break;
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    out.sort_by_key(Matrix::flat);
    out
}

/// Every subspace of `K^n`, ordered by dimension then lexicographically.
pub fn all_subspaces(scalars: &[Elem], n: usize) -> Vec<Matrix> {
    (0..=n).flat_map(|d| subspaces_of_dim(scalars, n, d)).collect()
}

/// Stream over the support lattice in a fixed order: the first block varies
/// slowest, and within a block subspaces are ordered by dimension and then
/// lexicographically by their RREF entries.
pub struct SupportIter {
    tower: Arc<FieldTower>,
    lists: Vec<Vec<Matrix>>,
    idx: Vec<usize>,
    target: Option<usize>,
    done: bool,
}

impl Iterator for SupportIter {
    type Item = SupportList;

    fn next(&mut self) -> Option<SupportList> {
        loop {
            if self.done {
                return None;
            }
            let rank: usize = self.idx.iter().zip(&self.lists).map(|(&i, l)| l[i].nrows()).sum();
            let current = if self.target.is_none_or(|t| t == rank) {
                let bases = self.idx.iter().zip(&self.lists).map(|(&i, l)| l[i].clone()).collect();
                Some(SupportList::from_canonical(self.tower.clone(), bases))
            } else {
                None
            };
            let lists = &self.lists;
            if !advance(&mut self.idx, |k| lists[k].len()) {
                self.done = true;
            }
            if current.is_some() {
                return current;
            }
        }
    }
}

/// Enumerates the supports of `tower`, optionally only those of a given rank.
/// Fails with `BudgetExceeded` when the lattice has more than `budget` elements.
pub fn enumerate_supports(
    tower: &Arc<FieldTower>,
    target_rank: Option<usize>,
    budget: Budget,
) -> Result<SupportIter> {
    budget.check(support_count(tower))?;
    let f = tower.field();
    let lists = tower
        .blocks()
        .iter()
        .map(|b| all_subspaces(b.subfield().elements(f), b.len))
        .collect::<Vec<_>>();
    let n = lists.len();
    Ok(SupportIter { tower: tower.clone(), lists, idx: vec![0; n], target: target_rank, done: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BlockSpec;

    fn tower(lengths: &[usize]) -> Arc<FieldTower> {
        let f = Arc::new(Field::new(2, &[1, 1, 1]).unwrap());
        let specs: Vec<BlockSpec> = lengths.iter().map(|&n| BlockSpec { n, d: 1, basis: None }).collect();
        Arc::new(FieldTower::new(f, &specs).unwrap())
    }

    fn e(rows: &[&[u32]]) -> Vec<Vec<Elem>> {
        rows.iter().map(|r| r.iter().map(|&c| Elem(c)).collect()).collect()
    }

    fn line(t: &Arc<FieldTower>, v: &[u32]) -> SupportList {
        SupportList::from_rows(t.clone(), vec![e(&[v])]).unwrap()
    }

    #[test]
    fn ranks() {
        let t = tower(&[1, 1]);
        assert_eq!(SupportList::total(t.clone()).rank(), 2);
        assert_eq!(SupportList::zero(t).rank(), 0);
        let t2 = tower(&[2]);
        assert_eq!(line(&t2, &[1, 1]).rank(), 1);
    }

    #[test]
    fn inclusions() {
        let t = tower(&[2]);
        let full = SupportList::total(t.clone());
        let zero = SupportList::zero(t.clone());
        let l = line(&t, &[1, 1]);
        assert!(full.includes(&l).unwrap());
        assert!(full.includes(&zero).unwrap());
        assert!(!zero.includes(&full).unwrap());
        let e12 = SupportList::from_rows(t.clone(), vec![e(&[&[1, 0], &[0, 1]])]).unwrap();
        assert!(e12.includes(&l).unwrap());
    }

    #[test]
    fn sums_intersections_duals() {
        let t = tower(&[2]);
        let a = line(&t, &[1, 0]);
        let b = line(&t, &[0, 1]);
        let c = line(&t, &[1, 1]);
        let full = SupportList::total(t.clone());
        assert_eq!(a.sum(&b).unwrap(), full);
        assert_eq!(a.intersect(&b).unwrap(), SupportList::zero(t.clone()));
        assert_eq!(c.intersect(&full).unwrap(), c);
        assert_eq!(full.dual(), SupportList::zero(t.clone()));
        assert_eq!(a.dual(), b);
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn complements() {
        let t = tower(&[2]);
        let full = SupportList::total(t.clone());
        let zero = SupportList::zero(t.clone());
        assert_eq!(line(&t, &[1, 0]).complementary(&full).unwrap(), line(&t, &[0, 1]));
        assert_eq!(full.complementary(&full).unwrap(), zero);
        assert_eq!(zero.complementary(&full).unwrap(), full);
        assert_eq!(full.complementary(&line(&t, &[1, 0])), Err(Error::NotASubspace));
    }

    #[test]
    fn enumeration_counts() {
        let t = tower(&[2]);
        assert_eq!(enumerate_supports(&t, None, Budget::DEFAULT).unwrap().count(), 5);
        let t = tower(&[1, 1]);
        assert_eq!(enumerate_supports(&t, None, Budget::DEFAULT).unwrap().count(), 4);
        let zeros: Vec<_> = enumerate_supports(&t, Some(0), Budget::DEFAULT).unwrap().collect();
        assert_eq!(zeros, vec![SupportList::zero(t.clone())]);
        assert!(matches!(
            enumerate_supports(&t, None, Budget(3)),
            Err(Error::BudgetExceeded { count: 4, budget: 3 })
        ));
    }

    #[test]
    fn enumeration_order_is_dimension_then_lex() {
        let t = tower(&[2]);
        let all: Vec<_> = enumerate_supports(&t, None, Budget::DEFAULT).unwrap().collect();
        let rows: Vec<Vec<Vec<Elem>>> = all.iter().map(|l| l.part(0).basis().rows().to_vec()).collect();
        assert_eq!(
            rows,
            vec![e(&[]), e(&[&[0, 1]]), e(&[&[1, 0]]), e(&[&[1, 1]]), e(&[&[1, 0], &[0, 1]])]
        );
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 2), 3);
        assert_eq!(gaussian_binomial(3, 1, 4), 21);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(subspace_count(2, 2), 5);
    }

    #[test]
    fn rejects_entries_outside_subfield() {
        let t = tower(&[2]);
        let err = SupportList::from_rows(t, vec![e(&[&[1, 2]])]);
        assert_eq!(err, Err(Error::NotInSubfield { code: 2, degree: 1 }));
    }

    #[test]
    fn tower_mismatch_detected() {
        let a = SupportList::total(tower(&[2]));
        let b = SupportList::total(tower(&[1, 1]));
        assert_eq!(a.includes(&b), Err(Error::TowerMismatch));
    }
}
