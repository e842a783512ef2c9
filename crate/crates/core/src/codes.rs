//! Linear codes over `F` and the codes derived from them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::field::{Elem, FieldTower};
use crate::lattice::{self, SupportList};
use crate::linalg::{self, Matrix};
use crate::metric;

/// An `F`-linear code of length `n` stored by its RREF generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    tower: Arc<FieldTower>,
    generators: Matrix,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && lattice::same_tower(&self.tower, &other.tower)
    }
}

impl Eq for LinearCode {}

/// JSON form `{k, n, blocks, rows}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub k: usize,
    pub n: usize,
    pub blocks: Vec<usize>,
    pub rows: Vec<Vec<Elem>>,
}

/// The quantities compared by [`dimension_identities`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionIdentities {
    /// `dim C_L`.
    pub restricted: usize,
    /// `Rk(L) - dim (C^⊥)^L`.
    pub via_dual: usize,
    /// `dim C - dim C^(L^⊥)`.
    pub via_complement: usize,
    /// `dim C^L`.
    pub shortened: usize,
    /// `dim (C ∩ V_L)`.
    pub pre_shortened: usize,
    pub min_distance: Option<usize>,
    pub restricted_distance: Option<usize>,
    pub shortened_distance: Option<usize>,
}

impl LinearCode {
    /// The code spanned by `rows`.
    pub fn new(tower: Arc<FieldTower>, rows: Vec<Vec<Elem>>) -> Result<LinearCode> {
        for r in &rows {
            metric::check_vector(&tower, r)?;
        }
        let m = Matrix::from_rows(tower.len(), rows);
        Ok(LinearCode::from_matrix(tower, &m))
    }

    pub(crate) fn from_matrix(tower: Arc<FieldTower>, m: &Matrix) -> LinearCode {
        let generators = linalg::row_space(tower.field(), m);
        LinearCode { tower, generators }
    }

    pub fn zero(tower: Arc<FieldTower>) -> LinearCode {
        let generators = Matrix::empty(tower.len());
        LinearCode { tower, generators }
    }

    /// The whole space `F^n`.
    pub fn full(tower: Arc<FieldTower>) -> LinearCode {
        let generators = Matrix::identity(tower.len());
        LinearCode { tower, generators }
    }

    pub fn from_json(tower: Arc<FieldTower>, json: &CodeJson) -> Result<LinearCode> {
        LinearCode::new(tower, json.rows.clone())
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            k: self.dim(),
            n: self.len(),
            blocks: self.tower.lengths(),
            rows: self.generators.rows().to_vec(),
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.nrows()
    }

    pub fn len(&self) -> usize {
        self.tower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        linalg::in_row_space(self.tower.field(), &self.generators, v)
    }

    /// Whether `other ⊆ self`.
    pub fn includes(&self, other: &LinearCode) -> Result<bool> {
        self.check_tower(other)?;
        Ok(other.generators.rows().iter().all(|r| self.contains(r)))
    }

    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_tower(other)?;
        let generators = linalg::intersect(self.tower.field(), &self.generators, &other.generators);
        Ok(LinearCode { tower: self.tower.clone(), generators })
    }

    fn check_tower(&self, other: &LinearCode) -> Result<()> {
        if lattice::same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    fn check_support(&self, l: &SupportList) -> Result<()> {
        if lattice::same_tower(&self.tower, l.tower()) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn dual(&self) -> LinearCode {
        let generators = linalg::nullspace(self.tower.field(), &self.generators);
        LinearCode { tower: self.tower.clone(), generators }
    }

    /// `C · B^T` with `B = diag(B_1, .., B_ℓ)`, each `B_i` invertible over `K_i`.
    pub fn change_of_bases(&self, bs: &[Matrix]) -> Result<LinearCode> {
        let f = self.tower.field();
        if bs.len() != self.tower.num_blocks() {
            return Err(Error::DimensionMismatch { expected: self.tower.num_blocks(), found: bs.len() });
        }
        for (b, blk) in bs.iter().zip(self.tower.blocks()) {
            if b.nrows() != blk.len || b.ncols() != blk.len {
                return Err(Error::DimensionMismatch { expected: blk.len, found: b.nrows().max(b.ncols()) });
            }
            for &e in b.rows().iter().flatten() {
                f.element(e.0 as u64)?;
                if !f.in_subfield(e, blk.degree()) {
                    return Err(Error::NotInSubfield { code: e.0, degree: blk.degree() });
                }
            }
            if linalg::rank(f, b) != blk.len {
                return Err(Error::SingularMatrix);
            }
        }
        let big = Matrix::block_diag(bs);
        let image = linalg::mul(f, &self.generators, &big.transpose());
        Ok(LinearCode::from_matrix(self.tower.clone(), &image))
    }

    /// `C ∩ V_L`, still of length `n`.
    pub fn pre_shorten(&self, l: &SupportList) -> Result<LinearCode> {
        self.check_support(l)?;
        let generators = linalg::intersect(self.tower.field(), &self.generators, &l.generator_matrix());
        Ok(LinearCode { tower: self.tower.clone(), generators })
    }

    /// `C_L = C A^T`, a code over the tower with block lengths `dim L_i`.
    pub fn restrict(&self, l: &SupportList) -> Result<LinearCode> {
        self.check_support(l)?;
        let tower = Arc::new(self.tower.with_lengths(&l.dims())?);
        let image = linalg::mul(self.tower.field(), &self.generators, &l.generator_matrix().transpose());
        Ok(LinearCode::from_matrix(tower, &image))
    }

    /// `C^L = (C ∩ V_L) A'^T` where `A'` has the standard rows at the pivot
    /// columns of each canonical basis, so that `A' A^T = I`.
    pub fn shorten(&self, l: &SupportList) -> Result<LinearCode> {
        self.shorten_with(l, &complement_generators(l))
    }

    /// Shortening with a caller-supplied `A'`; fails unless `A' A^T = I`.
    pub fn shorten_with(&self, l: &SupportList, a_prime: &Matrix) -> Result<LinearCode> {
        self.check_support(l)?;
        let f = self.tower.field();
        let a = l.generator_matrix();
        if a_prime.nrows() != a.nrows()
            || a_prime.ncols() != a.ncols()
            || linalg::mul(f, a_prime, &a.transpose()) != Matrix::identity(a.nrows())
        {
            return Err(Error::BadComplement);
        }
        let tower = Arc::new(self.tower.with_lengths(&l.dims())?);
        let pre = self.pre_shorten(l)?;
        let image = linalg::mul(f, &pre.generators, &a_prime.transpose());
        Ok(LinearCode::from_matrix(tower, &image))
    }

    /// Number of codewords, saturating.
    pub fn size(&self) -> u128 {
        (self.tower.field().order() as u128).saturating_pow(self.dim() as u32)
    }

    /// Every codeword, in the order of their coefficient vectors.
    pub fn codewords(&self, budget: Budget) -> Result<Vec<Vec<Elem>>> {
        budget.check(self.size())?;
        let f = self.tower.field();
        let q = f.order() as usize;
        let k = self.dim();
        let mut idx = vec![0usize; k];
        let mut out = Vec::new();
        loop {
            let coeffs: Vec<Elem> = idx.iter().map(|&i| Elem(i as u32)).collect();
            out.push(linalg::vec_mul(f, &coeffs, &self.generators));
            if !lattice::advance(&mut idx, |_| q) {
                break;
            }
        }
        Ok(out)
    }

    /// One nonzero codeword per `F`-line: the coefficient vectors whose
    /// first nonzero entry is 1.
    pub fn projective_codewords(&self, budget: Budget) -> Result<Vec<Vec<Elem>>> {
        let q = self.tower.field().order() as u128;
        let k = self.dim() as u32;
        let count = if k == 0 { 0 } else { (q.saturating_pow(k) - 1) / (q - 1) };
        budget.check(count)?;
        let f = self.tower.field();
        let mut out = Vec::new();
        for lead in 0..self.dim() {
            let tail = self.dim() - lead - 1;
            let mut idx = vec![0usize; tail];
            loop {
                let mut coeffs = vec![Elem::ZERO; self.dim()];
                coeffs[lead] = Elem::ONE;
                for (c, &i) in coeffs[lead + 1..].iter_mut().zip(&idx) {
                    *c = Elem(i as u32);
                }
                out.push(linalg::vec_mul(f, &coeffs, &self.generators));
                if !lattice::advance(&mut idx, |_| q as usize) {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Minimum sum-rank distance, or `None` for the zero code.
    pub fn min_distance(&self, budget: Budget) -> Result<Option<usize>> {
        Ok(self
            .projective_codewords(budget)?
            .iter()
            .map(|c| metric::weight(&self.tower, c))
            .min())
    }

    /// `A_w` = number of codewords of sum-rank weight `w`, for `w = 0..=n`.
    pub fn weight_distribution(&self, budget: Budget) -> Result<Vec<u128>> {
        let mut dist = vec![0u128; self.len() + 1];
        for c in self.codewords(budget)? {
            dist[metric::weight(&self.tower, &c)] += 1;
        }
        Ok(dist)
    }
}

/// The matrix `A'` used by [`LinearCode::shorten`].
pub fn complement_generators(l: &SupportList) -> Matrix {
    let tower = l.tower();
    let blocks: Vec<Matrix> = l
        .parts()
        .iter()
        .map(|p| {
            let n = p.ambient_dim();
            let mut m = Matrix::empty(n);
            for c in linalg::pivots_of(p.basis()) {
                let mut row = vec![Elem::ZERO; n];
                row[c] = Elem::ONE;
                m.push_row(row);
            }
            m
        })
        .collect();
    debug_assert_eq!(blocks.len(), tower.num_blocks());
    Matrix::block_diag(&blocks)
}

/// Computes the three expressions for `dim C_L`, the shortened dimensions and
/// the minimum distances, and checks the identities and bounds among them.
pub fn dimension_identities(c: &LinearCode, l: &SupportList, budget: Budget) -> Result<DimensionIdentities> {
    let restricted_code = c.restrict(l)?;
    let shortened_code = c.shorten(l)?;
    let restricted = restricted_code.dim();
    let rk = l.rank();
    let via_dual = rk - c.dual().shorten(l)?.dim();
    let via_complement = c.dim() - c.shorten(&l.dual())?.dim();
    let shortened = shortened_code.dim();
    let pre_shortened = c.pre_shorten(l)?.dim();
    let d = c.min_distance(budget)?;
    let d_r = restricted_code.min_distance(budget)?;
    let d_s = shortened_code.min_distance(budget)?;
    let out = DimensionIdentities {
        restricted,
        via_dual,
        via_complement,
        shortened,
        pre_shortened,
        min_distance: d,
        restricted_distance: d_r,
        shortened_distance: d_s,
    };
    if restricted != via_dual || restricted != via_complement {
        return Err(Error::IdentityViolated(format!(
            "restricted dimensions differ: {restricted}, {via_dual}, {via_complement}"
        )));
    }
    if shortened != pre_shortened {
        return Err(Error::IdentityViolated(format!(
            "shortened dimension {shortened} differs from pre-shortened {pre_shortened}"
        )));
    }
    let co = c.len() - rk;
    if restricted + co < c.dim() || shortened + co < c.dim() {
        return Err(Error::IdentityViolated("dimension lower bound".into()));
    }
    if let (Some(d), Some(ds)) = (d, d_s) {
        if ds < d {
            return Err(Error::IdentityViolated(format!("shortened distance {ds} < {d}")));
        }
    }
    if let (Some(d), Some(dr)) = (d, d_r) {
        if dr + co < d {
            return Err(Error::IdentityViolated(format!("restricted distance {dr} < {d} - {co}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BlockSpec, Field};

    fn tower(lengths: &[usize]) -> Arc<FieldTower> {
        let f = Arc::new(Field::new(2, &[1, 1, 1]).unwrap());
        let specs: Vec<BlockSpec> = lengths.iter().map(|&n| BlockSpec { n, d: 1, basis: None }).collect();
        Arc::new(FieldTower::new(f, &specs).unwrap())
    }

    fn v(codes: &[u32]) -> Vec<Elem> {
        codes.iter().map(|&c| Elem(c)).collect()
    }

    fn code(t: &Arc<FieldTower>, rows: &[&[u32]]) -> LinearCode {
        LinearCode::new(t.clone(), rows.iter().map(|r| v(r)).collect()).unwrap()
    }

    fn supp(t: &Arc<FieldTower>, rows: &[&[u32]]) -> SupportList {
        SupportList::from_rows(t.clone(), vec![rows.iter().map(|r| v(r)).collect()]).unwrap()
    }

    fn mat(rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| v(r)).collect())
    }

    #[test]
    fn duals() {
        let t = tower(&[2]);
        // (α, 1) scaled to RREF is (1, α²).
        assert_eq!(code(&t, &[&[1, 2]]).dual(), code(&t, &[&[2, 1]]));
        assert_eq!(code(&t, &[&[2, 1]]).generators().row(0), &v(&[1, 3])[..]);
        assert_eq!(LinearCode::full(t.clone()).dual(), LinearCode::zero(t.clone()));
        assert_eq!(LinearCode::zero(t.clone()).dual(), LinearCode::full(t.clone()));
    }

    #[test]
    fn change_of_bases_examples() {
        let t = tower(&[2]);
        let c = code(&t, &[&[1, 1]]);
        assert_eq!(c.change_of_bases(&[Matrix::identity(2)]).unwrap(), c);
        let b = mat(&[&[1, 1], &[0, 1]]);
        let moved = c.change_of_bases(&[b]).unwrap();
        assert_eq!(moved, code(&t, &[&[0, 1]]));
        assert_eq!(moved.min_distance(Budget::DEFAULT).unwrap(), c.min_distance(Budget::DEFAULT).unwrap());
        let t11 = tower(&[1, 1]);
        let c11 = code(&t11, &[&[1, 2]]);
        assert_eq!(c11.change_of_bases(&[Matrix::identity(1), Matrix::identity(1)]).unwrap(), c11);
        assert_eq!(c.change_of_bases(&[mat(&[&[1, 1], &[1, 1]])]), Err(Error::SingularMatrix));
        assert!(matches!(c.change_of_bases(&[mat(&[&[2, 0], &[0, 1]])]), Err(Error::NotInSubfield { .. })));
    }

    #[test]
    fn pre_shortening() {
        let t = tower(&[2]);
        let l = supp(&t, &[&[1, 1]]);
        assert_eq!(LinearCode::full(t.clone()).pre_shorten(&l).unwrap(), code(&t, &[&[1, 1]]));
        assert_eq!(code(&t, &[&[1, 2]]).pre_shorten(&l).unwrap().dim(), 0);
        let c = code(&t, &[&[1, 3]]);
        assert_eq!(c.pre_shorten(&SupportList::total(t.clone())).unwrap(), c);
    }

    #[test]
    fn restriction() {
        let t = tower(&[2]);
        let c = code(&t, &[&[1, 3]]);
        assert_eq!(c.restrict(&SupportList::total(t.clone())).unwrap(), c);
        let r = LinearCode::full(t.clone()).restrict(&supp(&t, &[&[1, 0]])).unwrap();
        assert_eq!((r.len(), r.dim()), (1, 1));
        assert_eq!(LinearCode::zero(t.clone()).restrict(&supp(&t, &[&[1, 1]])).unwrap().dim(), 0);
    }

    #[test]
    fn shortening() {
        let t = tower(&[2]);
        let s = LinearCode::full(t.clone()).shorten(&supp(&t, &[&[1, 0]])).unwrap();
        assert_eq!((s.len(), s.dim()), (1, 1));
        let z = code(&t, &[&[1, 2]]).shorten(&SupportList::zero(t.clone())).unwrap();
        assert_eq!((z.len(), z.dim()), (0, 0));
        assert_eq!(code(&t, &[&[1, 2]]).shorten(&supp(&t, &[&[1, 1]])).unwrap().dim(), 0);
    }

    #[test]
    fn shortening_with_other_complement() {
        let t = tower(&[2]);
        let l = supp(&t, &[&[1, 1]]);
        let c = LinearCode::full(t.clone());
        // Both (1,0) and (0,1) pair with (1,1) to give 1.
        let a = c.shorten_with(&l, &mat(&[&[0, 1]])).unwrap();
        assert_eq!(a, c.shorten(&l).unwrap());
        assert_eq!(c.shorten_with(&l, &mat(&[&[1, 1]])), Err(Error::BadComplement));
    }

    #[test]
    fn identities_examples() {
        let t = tower(&[2]);
        let b = Budget::DEFAULT;
        let d = dimension_identities(&LinearCode::full(t.clone()), &supp(&t, &[&[1, 0]]), b).unwrap();
        assert_eq!((d.restricted, d.via_dual, d.via_complement), (1, 1, 1));
        let d = dimension_identities(&LinearCode::zero(t.clone()), &supp(&t, &[&[1, 1]]), b).unwrap();
        assert_eq!((d.restricted, d.via_dual, d.via_complement), (0, 0, 0));
        let d = dimension_identities(&code(&t, &[&[1, 2]]), &SupportList::total(t.clone()), b).unwrap();
        assert_eq!((d.restricted, d.via_dual, d.via_complement), (1, 1, 1));
    }

    #[test]
    fn counts_and_distributions() {
        let t = tower(&[2]);
        let c = code(&t, &[&[1, 2]]);
        assert_eq!(c.codewords(Budget::DEFAULT).unwrap().len(), 4);
        assert_eq!(c.projective_codewords(Budget::DEFAULT).unwrap().len(), 1);
        assert_eq!(c.weight_distribution(Budget::DEFAULT).unwrap(), vec![1, 0, 3]);
        assert_eq!(LinearCode::zero(t).min_distance(Budget::DEFAULT).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let t = tower(&[1, 1]);
        let c = code(&t, &[&[1, 3]]);
        let j = c.to_json();
        assert_eq!((j.k, j.n, j.blocks.clone()), (1, 2, vec![1, 1]));
        assert_eq!(LinearCode::from_json(t, &j).unwrap(), c);
    }
}
