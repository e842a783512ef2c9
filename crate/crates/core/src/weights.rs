//! Generalized sum-rank weights of nested code pairs, the profile `K_μ`,
//! duality, bounds, MSRD ranks and effective lengths.
//!
//! Weights are computed exhaustively in one of two ways: by scanning the
//! support lattice, or by scanning subspaces of the larger code. The two
//! serve as oracles for each other.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{Budget, Error, Result};
use crate::field::{Block, Elem, FieldTower};
use crate::lattice::{self, SupportList};
use crate::linalg::{self, Matrix};
use crate::metric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    SupportScan,
    SubspaceScan,
}

/// Summary of the weight hierarchy of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub k: usize,
    pub n: usize,
    /// `d_1, .., d_k`.
    pub d: Vec<usize>,
    /// `K_0, .., K_n`.
    pub k_profile: Vec<usize>,
    pub msrd_rank: Option<usize>,
    pub effective_length: usize,
    pub degenerate: bool,
}

/// Outcome of the duality check for one code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeiDuality {
    /// `d_r(C)` for `r = 1..=k`.
    pub primal: Vec<usize>,
    /// `n + 1 - d_r(C^⊥)` for `r = 1..=n-k`.
    pub dual: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Monotonicity,
    RefinedMonotonicity,
    GeneralizedGriesmer,
    FloorBound,
}

/// One bound evaluated on a pair `r < s`; `slack` is the difference between
/// the two sides, nonnegative when the bound holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub bound: BoundKind,
    pub r: usize,
    pub s: usize,
    pub holds: bool,
    pub slack: i128,
}

/// The equivalent conditions characterising `r`-MSRD codes through supports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MsrdConditions {
    pub r: usize,
    /// `d_r(C^⊥) = k + r`.
    pub dual_weight: bool,
    /// `d(C) > n - k - r + 1`.
    pub distance: bool,
    /// `C ∩ V_L = 0` whenever `Rk(L) ≤ n - k - r + 1`.
    pub small_supports: bool,
    /// The same through shortening of `C` and restriction of `C^⊥`.
    pub small_supports_codes: bool,
    /// `C ∩ V_L^⊥ = 0` whenever `Rk(L) ≥ k + r - 1`.
    pub large_supports: bool,
    /// The same through shortening on `L^⊥` and restriction of `C`.
    pub large_supports_codes: bool,
    pub agree: bool,
}

/// The effective length computed several ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EffectiveLength {
    pub length: usize,
    /// `Rk(Supp C)`.
    pub support_rank: usize,
    /// `d_k(C)`, zero for the zero code.
    pub last_weight: usize,
    /// `n - max{r : d_r(C^⊥) = r}`.
    pub via_dual: usize,
    pub degenerate: bool,
    pub dual_distance_one: bool,
    /// `Σ k_i m_i` with `k_i` the dimension of the projection on block `i`.
    pub projection_bound: usize,
    /// Whether `Σ k_i m_i < n`, which forces degeneracy.
    pub projection_condition: bool,
}

fn check_nested(c1: &LinearCode, c2: &LinearCode) -> Result<usize> {
    if !c1.includes(c2)? || c1.dim() == c2.dim() {
        return Err(Error::NotNested);
    }
    Ok(c1.dim() - c2.dim())
}

fn check_index(r: usize, k: usize) -> Result<()> {
    if r == 0 || r > k {
        return Err(Error::BadIndex { index: r, max: k });
    }
    Ok(())
}

/// `dim(C1 ∩ V_L) - dim(C2 ∩ V_L)`.
fn gap(c1: &LinearCode, c2: &LinearCode, l: &SupportList) -> Result<usize> {
    Ok(c1.pre_shorten(l)?.dim() - c2.pre_shorten(l)?.dim())
}

/// `K_0, .., K_n` by one pass over the support lattice; `C2 ⊆ C1` assumed.
fn profile_scan(c1: &LinearCode, c2: &LinearCode, budget: Budget) -> Result<Vec<usize>> {
    let mut prof = vec![0; c1.len() + 1];
    for l in lattice::enumerate_supports(c1.tower(), None, budget)? {
        let g = gap(c1, c2, &l)?;
        let slot = &mut prof[l.rank()];
        *slot = (*slot).max(g);
    }
    Ok(prof)
}

/// `d_r = min{μ : K_μ ≥ r}` for `r = 1..=k`.
pub fn weights_from_profile(profile: &[usize], k: usize) -> Vec<usize> {
    (1..=k)
        .map(|r| profile.iter().position(|&km| km >= r).expect("profile reaches k at μ = n"))
        .collect()
}

/// `K_μ = max{r : d_r ≤ μ}` for `μ = 0..=n`.
pub fn profile_from_weights(d: &[usize], n: usize) -> Vec<usize> {
    (0..=n).map(|mu| d.iter().filter(|&&w| w <= mu).count()).collect()
}

/// The full relative profile `K_0, .., K_n` of a nested pair.
pub fn k_profile_all(c1: &LinearCode, c2: &LinearCode, budget: Budget) -> Result<Vec<usize>> {
    check_nested(c1, c2)?;
    profile_scan(c1, c2, budget)
}

/// `K_μ(C1, C2)`.
pub fn k_profile(c1: &LinearCode, c2: &LinearCode, mu: usize, budget: Budget) -> Result<usize> {
    check_nested(c1, c2)?;
    if mu > c1.len() {
        return Err(Error::BadIndex { index: mu, max: c1.len() });
    }
    let mut best = 0;
    for l in lattice::enumerate_supports(c1.tower(), Some(mu), budget)? {
        best = best.max(gap(c1, c2, &l)?);
    }
    Ok(best)
}

/// Least weight of an `r`-dimensional subspace of `C1` meeting `C2` trivially.
fn subspace_scan(c1: &LinearCode, c2: &LinearCode, r: usize, budget: Budget) -> Result<usize> {
    let tower = c1.tower();
    let f = tower.field();
    budget.check(lattice::gaussian_binomial(c1.dim(), r, f.order() as u64))?;
    let scalars: Vec<Elem> = f.elements().collect();
    let mut best: Option<usize> = None;
    for coeffs in lattice::subspaces_of_dim(&scalars, c1.dim(), r) {
        let d = linalg::mul(f, &coeffs, c1.generators());
        if linalg::rank(f, &d.stack(c2.generators())) != r + c2.dim() {
            continue;
        }
        let w = metric::subspace_support(tower, &d).rank();
        best = Some(best.map_or(w, |b| b.min(w)));
    }
    best.ok_or_else(|| Error::CrossCheck("no admissible subspace".into()))
}

/// `d_r(C1, C2)`.
pub fn generalized_weight(
    c1: &LinearCode,
    c2: &LinearCode,
    r: usize,
    algorithm: Algorithm,
    budget: Budget,
) -> Result<usize> {
    let k = check_nested(c1, c2)?;
    check_index(r, k)?;
    match algorithm {
        Algorithm::SupportScan => {
            let mut best = usize::MAX;
            for l in lattice::enumerate_supports(c1.tower(), None, budget)? {
                if l.rank() < best && gap(c1, c2, &l)? >= r {
                    best = l.rank();
                }
            }
            Ok(best)
        }
        Algorithm::SubspaceScan => subspace_scan(c1, c2, r, budget),
    }
}

/// `d_1(C1, C2), .., d_k(C1, C2)`.
pub fn generalized_weights(
    c1: &LinearCode,
    c2: &LinearCode,
    algorithm: Algorithm,
    budget: Budget,
) -> Result<Vec<usize>> {
    let k = check_nested(c1, c2)?;
    match algorithm {
        Algorithm::SupportScan => Ok(weights_from_profile(&profile_scan(c1, c2, budget)?, k)),
        Algorithm::SubspaceScan => (1..=k).map(|r| subspace_scan(c1, c2, r, budget)).collect(),
    }
}

/// Runs both algorithms and fails with `CrossCheck` if they disagree.
pub fn generalized_weights_checked(c1: &LinearCode, c2: &LinearCode, budget: Budget) -> Result<Vec<usize>> {
    let a = generalized_weights(c1, c2, Algorithm::SupportScan, budget)?;
    let b = generalized_weights(c1, c2, Algorithm::SubspaceScan, budget)?;
    if a != b {
        return Err(Error::CrossCheck(format!("support scan {a:?} vs subspace scan {b:?}")));
    }
    Ok(a)
}

/// The weight hierarchy `d_1(C), .., d_k(C)`; empty for the zero code.
pub fn hierarchy(c: &LinearCode, budget: Budget) -> Result<Vec<usize>> {
    if c.dim() == 0 {
        return Ok(Vec::new());
    }
    generalized_weights(c, &LinearCode::zero(c.tower().clone()), Algorithm::SupportScan, budget)
}

/// Minimum distance, by listing codewords when they fit in the budget and
/// by a support scan otherwise. `None` for the zero code.
pub fn min_distance(c: &LinearCode, budget: Budget) -> Result<Option<usize>> {
    if c.dim() == 0 {
        return Ok(None);
    }
    match c.min_distance(budget) {
        Err(Error::BudgetExceeded { .. }) => {
            let zero = LinearCode::zero(c.tower().clone());
            generalized_weight(c, &zero, 1, Algorithm::SupportScan, budget).map(Some)
        }
        other => other,
    }
}

/// Checks that the weights of `C` and the shifted weights of `C^⊥`
/// partition `{1, .., n}`.
pub fn wei_duality(c: &LinearCode, budget: Budget) -> Result<WeiDuality> {
    let n = c.len();
    let primal = hierarchy(c, budget)?;
    let dual: Vec<usize> = hierarchy(&c.dual(), budget)?.iter().map(|d| n + 1 - d).collect();
    let mut all: Vec<usize> = primal.iter().chain(&dual).copied().collect();
    all.sort_unstable();
    let holds = all == (1..=n).collect::<Vec<_>>();
    Ok(WeiDuality { primal, dual, holds })
}

fn pow(q: i128, e: usize) -> Result<i128> {
    q.checked_pow(e as u32).ok_or(Error::Overflow("power of q"))
}

fn ceil_div(a: i128, b: i128) -> i128 {
    (a + b - 1).div_euclid(b)
}

/// Evaluates the four classical bounds on every pair `1 ≤ r < s ≤ k` of the
/// hierarchy `d` of a code pair of length `n` over a field with `q` elements.
pub fn check_bounds(d: &[usize], n: usize, q: u64) -> Result<Vec<BoundCheck>> {
    let k = d.len();
    let q = q as i128;
    let n = n as i128;
    let mut out = Vec::new();
    for r in 1..=k {
        for s in r + 1..=k {
            let (dr, ds) = (d[r - 1] as i128, d[s - 1] as i128);
            let mut push = |bound, slack: i128| out.push(BoundCheck { bound, r, s, holds: slack >= 0, slack });

            push(BoundKind::Monotonicity, ds - dr - (s - r) as i128);

            let qs = pow(q, s)?;
            let lhs = (qs - pow(q, s - r)?).checked_mul(ds).ok_or(Error::Overflow("refined monotonicity"))?;
            let rhs = (qs - 1).checked_mul(dr).ok_or(Error::Overflow("refined monotonicity"))?;
            push(BoundKind::RefinedMonotonicity, lhs - rhs);

            let mut sum = 0i128;
            let qr1 = pow(q, r)? - 1;
            for i in 1..=s - r {
                let den = qr1.checked_mul(pow(q, i)?).ok_or(Error::Overflow("generalized griesmer"))?;
                sum += ceil_div((q - 1) * dr, den);
            }
            push(BoundKind::GeneralizedGriesmer, ds - dr - sum);

            if s < k {
                let num = (pow(q, k - r)? - 1)
                    .checked_mul(n - ds)
                    .ok_or(Error::Overflow("floor bound"))?;
                let den = pow(q, k - s)? - 1;
                push(BoundKind::FloorBound, dr - (n - num.div_euclid(den)));
            }
        }
    }
    Ok(out)
}

/// Least `r` with `d_r = n - k + r` read off a hierarchy.
fn msrd_rank_from_weights(d: &[usize], n: usize) -> Option<usize> {
    let k = d.len();
    (1..=k).find(|&r| d[r - 1] == n - k + r)
}

/// MSRD rank, computed from the hierarchy and from the dual distance and
/// cross-checked. `None` for degenerate codes and the zero code.
pub fn msrd_rank(c: &LinearCode, budget: Budget) -> Result<Option<usize>> {
    let d = hierarchy(c, budget)?;
    msrd_rank_with(c, &d, budget)
}

fn msrd_rank_with(c: &LinearCode, d: &[usize], budget: Budget) -> Result<Option<usize>> {
    let k = c.dim();
    if k == 0 {
        return Ok(None);
    }
    let scanned = msrd_rank_from_weights(d, c.len());
    let formula = match min_distance(&c.dual(), budget)? {
        None => Some(1),
        Some(dd) => {
            let r = k as i64 - dd as i64 + 2;
            (1..=k as i64).contains(&r).then_some(r as usize)
        }
    };
    if scanned != formula {
        return Err(Error::CrossCheck(format!("msrd rank: scan {scanned:?} vs dual formula {formula:?}")));
    }
    Ok(scanned)
}

/// Evaluates the equivalent support conditions for `C` being `r`-MSRD.
pub fn msrd_support_characterization(c: &LinearCode, r: usize, budget: Budget) -> Result<MsrdConditions> {
    let k = c.dim();
    let n = c.len();
    check_index(r, k)?;
    let dual = c.dual();
    let dual_weight = if r > n - k {
        true
    } else {
        let zero = LinearCode::zero(c.tower().clone());
        generalized_weight(&dual, &zero, r, Algorithm::SupportScan, budget)? == k + r
    };
    let threshold = n as i64 - k as i64 - r as i64 + 1;
    let distance = min_distance(c, budget)?.is_some_and(|d| d as i64 > threshold);
    let (mut small, mut small_codes, mut large, mut large_codes) = (true, true, true, true);
    for l in lattice::enumerate_supports(c.tower(), None, budget)? {
        let rk = l.rank();
        if rk as i64 <= threshold {
            small &= c.pre_shorten(&l)?.dim() == 0;
            small_codes &= c.shorten(&l)?.dim() == 0 && dual.restrict(&l)?.dim() == rk;
        }
        if rk + 1 >= k + r {
            let perp = l.dual();
            large &= c.pre_shorten(&perp)?.dim() == 0;
            large_codes &= c.shorten(&perp)?.dim() == 0 && c.restrict(&l)?.dim() == k;
        }
    }
    let all = [dual_weight, distance, small, small_codes, large, large_codes];
    let agree = all.iter().all(|&b| b == all[0]);
    Ok(MsrdConditions {
        r,
        dual_weight,
        distance,
        small_supports: small,
        small_supports_codes: small_codes,
        large_supports: large,
        large_supports_codes: large_codes,
        agree,
    })
}

/// Effective length and degeneracy, cross-checked across their
/// characterisations.
pub fn effective_length(c: &LinearCode, budget: Budget) -> Result<EffectiveLength> {
    let d = hierarchy(c, budget)?;
    effective_length_with(c, &d, budget)
}

fn effective_length_with(c: &LinearCode, d: &[usize], budget: Budget) -> Result<EffectiveLength> {
    let tower = c.tower();
    let n = c.len();
    let support_rank = metric::subspace_support(tower, c.generators()).rank();
    let last_weight = d.last().copied().unwrap_or(0);
    let dual_d = hierarchy(&c.dual(), budget)?;
    let max_r = (1..=dual_d.len()).filter(|&r| dual_d[r - 1] == r).max().unwrap_or(0);
    let via_dual = n - max_r;
    if support_rank != last_weight || support_rank != via_dual {
        return Err(Error::CrossCheck(format!(
            "effective length: support {support_rank}, last weight {last_weight}, dual {via_dual}"
        )));
    }
    let degenerate = support_rank < n;
    let dual_distance_one = dual_d.first() == Some(&1);
    if degenerate != dual_distance_one {
        return Err(Error::CrossCheck("degeneracy disagrees with the dual distance".into()));
    }
    let f = tower.field();
    let projection_bound: usize = tower
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| linalg::rank(f, &c.generators().columns(tower.range(i))) * b.ext_degree())
        .sum();
    let projection_condition = projection_bound < n;
    if last_weight > projection_bound || (projection_condition && !degenerate) {
        return Err(Error::CrossCheck("projection bound violated".into()));
    }
    Ok(EffectiveLength {
        length: support_rank,
        support_rank,
        last_weight,
        via_dual,
        degenerate,
        dual_distance_one,
        projection_bound,
        projection_condition,
    })
}

/// Full weight report of a code.
pub fn weight_report(c: &LinearCode, budget: Budget) -> Result<WeightReport> {
    let k = c.dim();
    let n = c.len();
    let (d, k_profile) = if k == 0 {
        (Vec::new(), vec![0; n + 1])
    } else {
        let prof = profile_scan(c, &LinearCode::zero(c.tower().clone()), budget)?;
        (weights_from_profile(&prof, k), prof)
    };
    let msrd_rank = msrd_rank_with(c, &d, budget)?;
    let eff = effective_length_with(c, &d, budget)?;
    Ok(WeightReport {
        k,
        n,
        d,
        k_profile,
        msrd_rank,
        effective_length: eff.length,
        degenerate: eff.degenerate,
    })
}

/// The tower obtained by splitting each block `i` into parts of the given
/// lengths, keeping `K_i` and `A_i`.
pub fn refine_tower(tower: &FieldTower, refinement: &[Vec<usize>]) -> Result<FieldTower> {
    if refinement.len() != tower.num_blocks() {
        return Err(Error::BadRefinement(format!(
            "expected {} blocks, found {}",
            tower.num_blocks(),
            refinement.len()
        )));
    }
    let mut blocks = Vec::new();
    for (i, (b, parts)) in tower.blocks().iter().zip(refinement).enumerate() {
        if parts.iter().sum::<usize>() != b.len || parts.contains(&0) {
            return Err(Error::BadRefinement(format!("parts {parts:?} do not split block {i} of length {}", b.len)));
        }
        blocks.extend(parts.iter().map(|&len| Block::new(len, b.data().clone())));
    }
    Ok(FieldTower::from_blocks(tower.field().clone(), blocks))
}

/// `min d^ref_r(C1 A, C2 A)` over block-diagonal invertible `A` with blocks
/// over the `K_i`, where `d^ref` uses the refined partition.
pub fn refined_partition_weight(
    c1: &LinearCode,
    c2: &LinearCode,
    refinement: &[Vec<usize>],
    r: usize,
    budget: Budget,
) -> Result<usize> {
    let k = check_nested(c1, c2)?;
    check_index(r, k)?;
    let tower = c1.tower();
    let fine = Arc::new(refine_tower(tower, refinement)?);
    let f = tower.field();
    let per_block: Vec<Vec<Matrix>> = tower
        .blocks()
        .iter()
        .map(|b| {
            let q = b.subfield().size(f) as u128;
            budget.check(q.saturating_pow((b.len * b.len) as u32))?;
            Ok(metric::invertible_matrices(tower, b.subfield().elements(f), b.len))
        })
        .collect::<Result<_>>()?;
    let count = per_block
        .iter()
        .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128))
        .saturating_mul(lattice::support_count(&fine));
    budget.check(count)?;
    let mut idx = vec![0usize; per_block.len()];
    let mut best = usize::MAX;
    loop {
        let blocks: Vec<Matrix> = idx.iter().zip(&per_block).map(|(&i, l)| l[i].clone()).collect();
        let a = Matrix::block_diag(&blocks);
        let d1 = LinearCode::from_matrix(fine.clone(), &linalg::mul(f, c1.generators(), &a));
        let d2 = LinearCode::from_matrix(fine.clone(), &linalg::mul(f, c2.generators(), &a));
        best = best.min(generalized_weight(&d1, &d2, r, Algorithm::SupportScan, budget)?);
        if !lattice::advance(&mut idx, |i| per_block[i].len()) {
            break;
        }
    }
    Ok(best)
}
