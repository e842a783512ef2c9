//! Sum-rank weights and supports of vectors and subspaces.

use std::sync::Arc;

use crate::error::{Budget, Error, Result};
use crate::field::{Elem, FieldTower};
use crate::lattice::{self, SupportList};
use crate::linalg::{self, Matrix};

/// A vector of `F^n` split into the blocks of its tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockVector {
    tower: Arc<FieldTower>,
    data: Vec<Elem>,
}

impl BlockVector {
    pub fn new(tower: Arc<FieldTower>, data: Vec<Elem>) -> Result<BlockVector> {
        check_vector(&tower, &data)?;
        Ok(BlockVector { tower, data })
    }

    pub fn zero(tower: Arc<FieldTower>) -> BlockVector {
        let data = vec![Elem::ZERO; tower.len()];
        BlockVector { tower, data }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    /// The component `c^(i)`.
    pub fn block(&self, i: usize) -> &[Elem] {
        &self.data[self.tower.range(i)]
    }

    pub fn weight(&self) -> usize {
        weight(&self.tower, &self.data)
    }

    pub fn support(&self) -> SupportList {
        support(&self.tower, &self.data)
    }

    pub fn distance(&self, other: &BlockVector) -> Result<usize> {
        if !lattice::same_tower(&self.tower, &other.tower) {
            return Err(Error::TowerMismatch);
        }
        Ok(distance(&self.tower, &self.data, &other.data))
    }
}

pub(crate) fn check_vector(tower: &FieldTower, v: &[Elem]) -> Result<()> {
    if v.len() != tower.len() {
        return Err(Error::DimensionMismatch { expected: tower.len(), found: v.len() });
    }
    let f = tower.field();
    for e in v {
        f.element(e.0 as u64)?;
    }
    Ok(())
}

fn block_matrix(tower: &FieldTower, v: &[Elem], i: usize) -> Matrix {
    tower.matrix_representation(&v[tower.range(i)], i).expect("block index in range")
}

/// `wt_SR(v) = Σ_i Rk(M_i(v^(i)))`.
pub fn weight(tower: &FieldTower, v: &[Elem]) -> usize {
    let f = tower.field();
    (0..tower.num_blocks()).map(|i| linalg::rank(f, &block_matrix(tower, v, i))).sum()
}

pub fn distance(tower: &FieldTower, a: &[Elem], b: &[Elem]) -> usize {
    let f = tower.field();
    let diff: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect();
    weight(tower, &diff)
}

/// Hamming weight, for comparison with the sum-rank weight.
pub fn hamming_weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

/// Blockwise row spaces of the matrix representations of `v`.
pub fn support(tower: &Arc<FieldTower>, v: &[Elem]) -> SupportList {
    let f = tower.field();
    let bases = (0..tower.num_blocks()).map(|i| linalg::row_space(f, &block_matrix(tower, v, i))).collect();
    SupportList::from_canonical(tower.clone(), bases)
}

/// Support of the `F`-span of the rows of `d`; its rank is the weight of the
/// subspace.
pub fn subspace_support(tower: &Arc<FieldTower>, d: &Matrix) -> SupportList {
    let f = tower.field();
    let bases = (0..tower.num_blocks())
        .map(|i| {
            let mut stacked = Matrix::empty(tower.blocks()[i].len);
            for row in d.rows() {
                for r in block_matrix(tower, row, i).into_rows() {
                    stacked.push_row(r);
                }
            }
            linalg::row_space(f, &stacked)
        })
        .collect();
    SupportList::from_canonical(tower.clone(), bases)
}

/// `diag(A_1, .., A_ℓ)`; its `F`-row space is the support space `V_L`.
pub fn support_space_generators(l: &SupportList) -> Matrix {
    l.generator_matrix()
}

pub fn in_support_space(v: &[Elem], l: &SupportList) -> Result<bool> {
    check_vector(l.tower(), v)?;
    l.includes(&support(l.tower(), v))
}

/// Result of asking which support space a subspace is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportSpace {
    /// The span equals `V_L`.
    Support(SupportList),
    /// The span is strictly smaller than `V_closure`, the least support
    /// space containing it.
    NotASupportSpace { dim: usize, rank: usize, closure: SupportList },
}

/// Decides whether the `F`-span of the rows of `v` is a support space.
pub fn support_space_of(tower: &Arc<FieldTower>, v: &Matrix) -> Result<SupportSpace> {
    if v.ncols() != tower.len() {
        return Err(Error::DimensionMismatch { expected: tower.len(), found: v.ncols() });
    }
    for row in v.rows() {
        check_vector(tower, row)?;
    }
    let closure = subspace_support(tower, v);
    let dim = linalg::rank(tower.field(), v);
    let rank = closure.rank();
    Ok(if dim == rank {
        SupportSpace::Support(closure)
    } else {
        SupportSpace::NotASupportSpace { dim, rank, closure }
    })
}

/// All invertible `n × n` matrices with entries in `scalars`.
pub fn invertible_matrices(tower: &FieldTower, scalars: &[Elem], n: usize) -> Vec<Matrix> {
    let f = tower.field();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n * n];
    loop {
        let rows = (0..n).map(|r| (0..n).map(|c| scalars[idx[r * n + c]]).collect()).collect();
        let m = Matrix::from_rows(n, rows);
        if linalg::rank(f, &m) == n {
            out.push(m);
        }
        if !lattice::advance(&mut idx, |_| scalars.len()) {
            break;
        }
    }
    out
}

/// `min wt_H(D A)` over block-diagonal invertible `A` with blocks over the
/// `K_i`. The Hamming weight of `D A` splits over blocks, so each block is
/// minimised on its own; the budget bounds the matrices inspected.
pub fn weight_via_hamming_minimum(tower: &Arc<FieldTower>, d: &Matrix, budget: Budget) -> Result<usize> {
    if d.ncols() != tower.len() {
        return Err(Error::DimensionMismatch { expected: tower.len(), found: d.ncols() });
    }
    let f = tower.field();
    let count = tower.blocks().iter().fold(0u128, |acc, b| {
        let q = b.subfield().size(f) as u128;
        acc.saturating_add(q.saturating_pow((b.len * b.len) as u32))
    });
    budget.check(count)?;
    let mut total = 0;
    for (i, b) in tower.blocks().iter().enumerate() {
        let di = d.columns(tower.range(i));
        let best = invertible_matrices(tower, b.subfield().elements(f), b.len)
            .iter()
            .map(|a| {
                let prod = linalg::mul(f, &di, a);
                (0..b.len).filter(|&c| prod.rows().iter().any(|r| !r[c].is_zero())).count()
            })
            .min()
            .unwrap_or(0);
        total += best;
    }
    Ok(total)
}
