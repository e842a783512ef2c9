//! Skew polynomials `F[x; σ]` with `σ(a) = a^(p^t)` and zero derivation,
//! together with P-closed sets and the isometry between the skew
//! metric on function tables over a P-basis and the sum-rank metric.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::{BlockBasis, BlockSpec, Elem, Field, FieldTower};
use crate::lattice::SupportList;
use crate::linalg::{self, Matrix};
use crate::metric::{self, SupportSpace};

/// Largest field on which element-by-element scans are run.
pub const SCAN_LIMIT: u64 = 1 << 16;

fn check_scan(field: &Field) -> Result<()> {
    if field.order() as u64 > SCAN_LIMIT {
        return Err(Error::FieldTooLarge { order: field.order() as u64, limit: SCAN_LIMIT });
    }
    Ok(())
}

/// A skew polynomial, coefficients lowest degree first with no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    field: Arc<Field>,
    sigma_power: usize,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly(t={}, {:?})", self.sigma_power, self.coeffs)
    }
}

/// JSON form `{sigma_power, coeffs}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewPolyJson {
    pub sigma_power: usize,
    pub coeffs: Vec<Elem>,
}

impl SkewPoly {
    pub fn new(field: Arc<Field>, sigma_power: usize, mut coeffs: Vec<Elem>) -> Result<SkewPoly> {
        for c in &coeffs {
            field.element(c.0 as u64)?;
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(SkewPoly { field, sigma_power, coeffs })
    }

    pub fn zero(field: Arc<Field>, sigma_power: usize) -> SkewPoly {
        SkewPoly { field, sigma_power, coeffs: Vec::new() }
    }

    pub fn constant(field: Arc<Field>, sigma_power: usize, c: Elem) -> SkewPoly {
        SkewPoly::new(field, sigma_power, vec![c]).expect("valid constant")
    }

    /// `x^j`.
    pub fn monomial(field: Arc<Field>, sigma_power: usize, j: usize) -> SkewPoly {
        let mut coeffs = vec![Elem::ZERO; j + 1];
        coeffs[j] = Elem::ONE;
        SkewPoly { field, sigma_power, coeffs }
    }

    /// `x - a`.
    pub fn linear(field: Arc<Field>, sigma_power: usize, a: Elem) -> SkewPoly {
        let coeffs = vec![field.neg(a), Elem::ONE];
        SkewPoly { field, sigma_power, coeffs }
    }

    pub fn from_json(field: Arc<Field>, json: &SkewPolyJson) -> Result<SkewPoly> {
        SkewPoly::new(field, json.sigma_power, json.coeffs.clone())
    }

    pub fn to_json(&self) -> SkewPolyJson {
        SkewPolyJson { sigma_power: self.sigma_power, coeffs: self.coeffs.clone() }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn sigma_power(&self) -> usize {
        self.sigma_power
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn check(&self, other: &SkewPoly) -> Result<()> {
        if self.sigma_power != other.sigma_power || *self.field != *other.field {
            return Err(Error::SkewMismatch);
        }
        Ok(())
    }

    fn sigma(&self, a: Elem, i: usize) -> Elem {
        self.field.frobenius(a, self.sigma_power * i)
    }

    fn with(&self, coeffs: Vec<Elem>) -> SkewPoly {
        let mut out = SkewPoly { field: self.field.clone(), sigma_power: self.sigma_power, coeffs };
        while out.coeffs.last().is_some_and(|c| c.is_zero()) {
            out.coeffs.pop();
        }
        out
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &SkewPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
        Ok(self.with((0..len).map(|i| f.add(get(self, i), get(other, i))).collect()))
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        let neg = other.with(other.coeffs.iter().map(|&c| other.field.neg(c)).collect());
        self.add(&neg)
    }

    /// `self · other` under `x a = σ(a) x`.
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.with(Vec::new()));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, self.sigma(b, i)));
            }
        }
        Ok(self.with(out))
    }

    /// `(Q, R)` with `self = Q · g + R` and `deg R < deg g`.
    pub fn right_divide(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead = *g.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(dg)];
        while rem.len() > dg && !rem.is_empty() {
            let dr = rem.len() - 1;
            let d = dr - dg;
            let c = f.div(rem[dr], self.sigma(lead, d))?;
            quot[d] = c;
            for (j, &b) in g.coeffs.iter().enumerate() {
                let t = f.mul(c, self.sigma(b, d));
                rem[d + j] = f.sub(rem[d + j], t);
            }
            debug_assert!(rem[dr].is_zero());
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((self.with(quot), self.with(rem)))
    }

    /// `N_0(a), .., N_{len-1}(a)` with `N_0 = 1` and `N_{i+1} = σ(N_i) a`.
    pub fn norms(field: &Field, sigma_power: usize, a: Elem, len: usize) -> Vec<Elem> {
        let mut out = Vec::with_capacity(len);
        let mut n = Elem::ONE;
        for _ in 0..len {
            out.push(n);
            n = field.mul(field.frobenius(n, sigma_power), a);
        }
        out
    }

    /// The remainder of right division by `x - a`, via norms.
    pub fn evaluate(&self, a: Elem) -> Elem {
        let f = &self.field;
        let norms = SkewPoly::norms(f, self.sigma_power, a, self.coeffs.len());
        f.dot(&self.coeffs, &norms)
    }

    /// The same value through explicit right division.
    pub fn evaluate_by_division(&self, a: Elem) -> Elem {
        let lin = SkewPoly::linear(self.field.clone(), self.sigma_power, a);
        let (_, r) = self.right_divide(&lin).expect("x - a is nonzero");
        r.coeffs.first().copied().unwrap_or(Elem::ZERO)
    }
}

/// `a^β = σ(β) β^{-1} a`.
pub fn conjugate(field: &Field, sigma_power: usize, a: Elem, beta: Elem) -> Result<Elem> {
    if beta.is_zero() {
        return Err(Error::ZeroBeta);
    }
    let ratio = field.div(field.frobenius(beta, sigma_power), beta)?;
    Ok(field.mul(ratio, a))
}

/// Degree over `GF(p)` of `{β : a^β = a} ∪ {0}`, found by scanning units.
pub fn centralizer_degree(field: &Field, sigma_power: usize, a: Elem) -> Result<usize> {
    check_scan(field)?;
    let members: Vec<Elem> = field
        .elements()
        .filter(|&b| b.is_zero() || conjugate(field, sigma_power, a, b).expect("nonzero") == a)
        .collect();
    let p = field.characteristic() as usize;
    let (mut size, mut d) = (1usize, 0usize);
    while size < members.len() {
        size *= p;
        d += 1;
    }
    if size != members.len() || !field.degree().is_multiple_of(d.max(1)) || !members.iter().all(|&b| field.in_subfield(b, d)) {
        return Err(Error::CrossCheck(format!("centralizer of {a} is not a subfield")));
    }
    Ok(d)
}

/// A P-closed set given by its minimal skew polynomial and a P-basis.
#[derive(Debug, Clone)]
pub struct PClosedSet {
    minimal_poly: SkewPoly,
    witness: Vec<Elem>,
}

impl PartialEq for PClosedSet {
    fn eq(&self, other: &Self) -> bool {
        self.minimal_poly == other.minimal_poly
    }
}

impl Eq for PClosedSet {}

/// JSON form of a P-closed set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PClosedSetJson {
    pub rank: usize,
    pub minimal_poly: SkewPolyJson,
    pub pbasis: Vec<Elem>,
}

impl PClosedSet {
    pub fn minimal_poly(&self) -> &SkewPoly {
        &self.minimal_poly
    }

    /// The points that raised the degree while building the polynomial.
    pub fn witness(&self) -> &[Elem] {
        &self.witness
    }

    pub fn rank(&self) -> usize {
        self.witness.len()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.minimal_poly.evaluate(a).is_zero()
    }

    /// Every member, by scanning the field.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let f = self.minimal_poly.field();
        check_scan(f)?;
        Ok(f.elements().filter(|&a| self.contains(a)).collect())
    }

    /// Closure of the union.
    pub fn sum(&self, other: &PClosedSet) -> Result<PClosedSet> {
        self.minimal_poly.check(&other.minimal_poly)?;
        let pts: Vec<Elem> = self.witness.iter().chain(&other.witness).copied().collect();
        Ok(minimal_skew_poly(self.minimal_poly.field(), self.minimal_poly.sigma_power(), &pts))
    }

    pub fn to_json(&self) -> PClosedSetJson {
        PClosedSetJson { rank: self.rank(), minimal_poly: self.minimal_poly.to_json(), pbasis: self.witness.clone() }
    }
}

/// Minimal skew polynomial of `points`, built one point at a time.
pub fn minimal_skew_poly(field: &Arc<Field>, sigma_power: usize, points: &[Elem]) -> PClosedSet {
    let mut poly = SkewPoly::constant(field.clone(), sigma_power, Elem::ONE);
    let mut witness = Vec::new();
    for &a in points {
        let v = poly.evaluate(a);
        if v.is_zero() {
            continue;
        }
        let shifted = conjugate(field, sigma_power, a, v).expect("v is nonzero");
        poly = SkewPoly::linear(field.clone(), sigma_power, shifted).mul(&poly).expect("same ring");
        witness.push(a);
    }
    PClosedSet { minimal_poly: poly, witness }
}

/// Values of a function on a P-basis, as `(point, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FunctionTable(pub Vec<(Elem, Elem)>);

impl FunctionTable {
    pub fn points(&self) -> Vec<Elem> {
        self.0.iter().map(|p| p.0).collect()
    }

    pub fn values(&self) -> Vec<Elem> {
        self.0.iter().map(|p| p.1).collect()
    }

    pub fn value_at(&self, a: Elem) -> Option<Elem> {
        self.0.iter().find(|p| p.0 == a).map(|p| p.1)
    }
}

/// Splitting of a P-basis into conjugacy classes `(a^(i))^{β_j^(i)}`.
#[derive(Debug, Clone)]
pub struct ConjugacyDecomposition {
    field: Arc<Field>,
    sigma_power: usize,
    reps: Vec<Elem>,
    betas: Vec<Vec<Elem>>,
    centralizer_degrees: Vec<usize>,
    tower: Arc<FieldTower>,
}

/// JSON form of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionJson {
    pub reps: Vec<Elem>,
    pub betas: Vec<Vec<Elem>>,
    pub centralizer_degrees: Vec<usize>,
    pub points: Vec<Elem>,
}

impl ConjugacyDecomposition {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn sigma_power(&self) -> usize {
        self.sigma_power
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn betas(&self) -> &[Vec<Elem>] {
        &self.betas
    }

    pub fn centralizer_degrees(&self) -> &[usize] {
        &self.centralizer_degrees
    }

    /// Tower with one block per class: length `n_i`, subfield the
    /// centralizer of `a^(i)`, default basis.
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn len(&self) -> usize {
        self.betas.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The P-basis in block order.
    pub fn points(&self) -> Vec<Elem> {
        self.reps
            .iter()
            .zip(&self.betas)
            .flat_map(|(&a, bs)| bs.iter().map(move |&b| conjugate(&self.field, self.sigma_power, a, b).unwrap()))
            .collect()
    }

    /// `(point, β)` pairs in block order.
    fn pairs(&self) -> Vec<(Elem, Elem)> {
        let betas = self.betas.iter().flatten().copied();
        self.points().into_iter().zip(betas).collect()
    }

    /// The P-closed set spanned by the basis.
    pub fn omega(&self) -> PClosedSet {
        minimal_skew_poly(&self.field, self.sigma_power, &self.points())
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            reps: self.reps.clone(),
            betas: self.betas.clone(),
            centralizer_degrees: self.centralizer_degrees.clone(),
            points: self.points(),
        }
    }
}

/// The least-code element of the conjugacy class of `b`.
fn class_rep(field: &Field, t: usize, b: Elem) -> Elem {
    field
        .elements()
        .skip(1)
        .map(|beta| conjugate(field, t, b, beta).unwrap())
        .min()
        .unwrap_or(b)
}

/// Decomposes a P-independent set into conjugacy classes. Classes are
/// ordered by representative, and points keep their input order within a
/// class.
pub fn p_basis_decompose(field: &Arc<Field>, sigma_power: usize, points: &[Elem]) -> Result<ConjugacyDecomposition> {
    check_scan(field)?;
    for p in points {
        field.element(p.0 as u64)?;
    }
    if minimal_skew_poly(field, sigma_power, points).rank() != points.len() {
        return Err(Error::NotPIndependent);
    }
    let mut classes: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
    for &b in points {
        let rep = class_rep(field, sigma_power, b);
        let beta = field
            .elements()
            .skip(1)
            .find(|&beta| conjugate(field, sigma_power, rep, beta).unwrap() == b)
            .expect("b is conjugate to its representative");
        classes.entry(rep).or_default().push(beta);
    }
    let mut reps = Vec::new();
    let mut betas = Vec::new();
    let mut degrees = Vec::new();
    let mut specs = Vec::new();
    for (rep, bs) in classes {
        let d = centralizer_degree(field, sigma_power, rep)?;
        let basis = BlockBasis::new(field, d, None)?;
        let coords = Matrix::from_rows(
            basis.ext_degree(),
            bs.iter().map(|&b| basis.coordinates(field, b)).collect(),
        );
        if linalg::rank(field, &coords) != bs.len() {
            return Err(Error::CrossCheck(format!("betas of class {rep} are dependent")));
        }
        specs.push(BlockSpec { n: bs.len(), d, basis: None });
        reps.push(rep);
        betas.push(bs);
        degrees.push(d);
    }
    let tower = Arc::new(FieldTower::new(field.clone(), &specs)?);
    Ok(ConjugacyDecomposition { field: field.clone(), sigma_power, reps, betas, centralizer_degrees: degrees, tower })
}

/// `φ_B(c)`: the table `f((a^(i))^{β_j}) = c_j^(i) β_j^{-1}`.
pub fn phi_b(decomp: &ConjugacyDecomposition, c: &[Elem]) -> Result<FunctionTable> {
    if c.len() != decomp.len() {
        return Err(Error::StructureMismatch);
    }
    let f = &decomp.field;
    let mut out = Vec::with_capacity(c.len());
    for (&ci, (pt, beta)) in c.iter().zip(decomp.pairs()) {
        f.element(ci.0 as u64)?;
        out.push((pt, f.div(ci, beta)?));
    }
    Ok(FunctionTable(out))
}

/// Inverse of [`phi_b`]; the table may list the basis in any order.
pub fn phi_b_inverse(decomp: &ConjugacyDecomposition, table: &FunctionTable) -> Result<Vec<Elem>> {
    if table.0.len() != decomp.len() {
        return Err(Error::NotAPBasis);
    }
    let f = &decomp.field;
    decomp
        .pairs()
        .into_iter()
        .map(|(pt, beta)| {
            let v = table.value_at(pt).ok_or(Error::NotAPBasis)?;
            f.element(v.0 as u64)?;
            Ok(f.mul(v, beta))
        })
        .collect()
}

/// The unique `F` of degree `< |B|` with `F(b) = f(b)` on the table's points.
pub fn interpolate(field: &Arc<Field>, sigma_power: usize, table: &FunctionTable) -> Result<SkewPoly> {
    let n = table.0.len();
    let rows = table.0.iter().map(|&(b, _)| SkewPoly::norms(field, sigma_power, b, n)).collect();
    let m = Matrix::from_rows(n, rows);
    let coeffs = linalg::solve(field, &m, &table.values()).map_err(|_| Error::NotAPBasis)?;
    SkewPoly::new(field.clone(), sigma_power, coeffs)
}

fn check_table_basis(omega: &PClosedSet, table: &FunctionTable) -> Result<()> {
    let poly = omega.minimal_poly();
    let basis = minimal_skew_poly(poly.field(), poly.sigma_power(), &table.points());
    if basis.rank() != table.0.len() || basis != *omega {
        return Err(Error::NotAPBasis);
    }
    Ok(())
}

/// Zeros of `poly` inside `omega`, as a P-closed set.
pub fn zeros_in(poly: &SkewPoly, omega: &PClosedSet) -> Result<PClosedSet> {
    let f = poly.field();
    check_scan(f)?;
    let zeros: Vec<Elem> = f.elements().filter(|&a| omega.contains(a) && poly.evaluate(a).is_zero()).collect();
    Ok(minimal_skew_poly(f, poly.sigma_power(), &zeros))
}

/// `wt_B(f) = n - Rk(Z_Ω(F))` where `F` interpolates `f`.
pub fn skew_weight(table: &FunctionTable, omega: &PClosedSet) -> Result<usize> {
    check_table_basis(omega, table)?;
    let poly = omega.minimal_poly();
    let interp = interpolate(poly.field(), poly.sigma_power(), table)?;
    Ok(table.0.len() - zeros_in(&interp, omega)?.rank())
}

/// Maps a list of `K_i`-vectors per block to the P-closed set generated by
/// `(a^(i))^γ` with `γ = Σ_j v_j β_j^(i)`, keeping a `K_i`-basis of the γ's.
fn closure_of_gammas(decomp: &ConjugacyDecomposition, rows: &[Vec<Vec<Elem>>]) -> Result<PClosedSet> {
    let f = &decomp.field;
    let mut pts = Vec::new();
    for (i, block_rows) in rows.iter().enumerate() {
        let basis = decomp.tower.block(i)?.data();
        let mut span = Matrix::empty(basis.ext_degree());
        for row in block_rows {
            let gamma = f.dot(row, &decomp.betas[i]);
            if gamma.is_zero() {
                continue;
            }
            let coords = basis.coordinates(f, gamma);
            if !linalg::in_row_space(f, &span, &coords) {
                span.push_row(coords);
                pts.push(conjugate(f, decomp.sigma_power, decomp.reps[i], gamma)?);
            }
        }
    }
    Ok(minimal_skew_poly(f, decomp.sigma_power, &pts))
}

/// The skew support of `f`.
pub fn skew_support(table: &FunctionTable, decomp: &ConjugacyDecomposition) -> Result<PClosedSet> {
    let c = phi_b_inverse(decomp, table)?;
    let tower = &decomp.tower;
    let rows: Vec<Vec<Vec<Elem>>> = (0..tower.num_blocks())
        .map(|i| Ok(tower.matrix_representation(&c[tower.range(i)], i)?.into_rows()))
        .collect::<Result<_>>()?;
    closure_of_gammas(decomp, &rows)
}

/// The P-closed set corresponding to a sum-rank support on the
/// decomposition tower.
pub fn support_to_pclosed(decomp: &ConjugacyDecomposition, l: &SupportList) -> Result<PClosedSet> {
    let rows: Vec<Vec<Vec<Elem>>> = l.parts().iter().map(|p| p.basis().rows().to_vec()).collect();
    closure_of_gammas(decomp, &rows)
}

/// Whether a span of function tables is a skew support space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkewSupportSpace {
    Support(PClosedSet),
    NotASupportSpace { dim: usize, rank: usize, closure: PClosedSet },
}

/// Decides the question by pulling back through `φ_B^{-1}`.
pub fn skew_support_space_check(tables: &[FunctionTable], decomp: &ConjugacyDecomposition) -> Result<SkewSupportSpace> {
    let rows = tables.iter().map(|t| phi_b_inverse(decomp, t)).collect::<Result<Vec<_>>>()?;
    let v = Matrix::from_rows(decomp.len(), rows);
    Ok(match metric::support_space_of(&decomp.tower, &v)? {
        SupportSpace::Support(l) => SkewSupportSpace::Support(support_to_pclosed(decomp, &l)?),
        SupportSpace::NotASupportSpace { dim, rank, closure } => {
            SkewSupportSpace::NotASupportSpace { dim, rank, closure: support_to_pclosed(decomp, &closure)? }
        }
    })
}

/// `f g` with `(f g)(a) = (F G)(a)` on the basis points.
pub fn table_product(decomp: &ConjugacyDecomposition, f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable> {
    let field = &decomp.field;
    let t = decomp.sigma_power;
    let ff = interpolate(field, t, f)?;
    let gg = interpolate(field, t, g)?;
    let prod = ff.mul(&gg)?;
    Ok(FunctionTable(f.points().into_iter().map(|a| (a, prod.evaluate(a))).collect()))
}

/// Whether the span of `tables` is a left ideal of `F^B`. The product is
/// left-linear in the first factor, and `g (λ f) = (g λ) f`, so testing
/// `E_B(x^j) · w` over `j < n` and a basis `w` of the span suffices.
pub fn is_left_ideal(tables: &[FunctionTable], decomp: &ConjugacyDecomposition) -> Result<bool> {
    let field = &decomp.field;
    let t = decomp.sigma_power;
    let pts = decomp.points();
    let n = pts.len();
    let align = |tab: &FunctionTable| -> Result<Vec<Elem>> {
        pts.iter().map(|&a| tab.value_at(a).ok_or(Error::NotAPBasis)).collect()
    };
    let rows = tables.iter().map(align).collect::<Result<Vec<_>>>()?;
    let span = linalg::row_space(field, &Matrix::from_rows(n, rows));
    for j in 0..n {
        let xj = SkewPoly::monomial(field.clone(), t, j);
        for w in span.rows() {
            let wf = interpolate(field, t, &FunctionTable(pts.iter().copied().zip(w.iter().copied()).collect()))?;
            let prod = xj.mul(&wf)?;
            let vals: Vec<Elem> = pts.iter().map(|&a| prod.evaluate(a)).collect();
            if !linalg::in_row_space(field, &span, &vals) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The pullback under `φ_B^{-1}` of `{E_B(F) : deg F < k}`: row `j` is
/// `(N_j(b) β_b)` over the basis.
pub fn skew_evaluation_code(decomp: &ConjugacyDecomposition, k: usize) -> Result<LinearCode> {
    let n = decomp.len();
    if k == 0 || k > n {
        return Err(Error::BadDimension { k, n });
    }
    let f = &decomp.field;
    let pairs = decomp.pairs();
    let rows = (0..k)
        .map(|j| {
            pairs
                .iter()
                .map(|&(b, beta)| f.mul(SkewPoly::norms(f, decomp.sigma_power, b, j + 1)[j], beta))
                .collect()
        })
        .collect();
    LinearCode::new(decomp.tower.clone(), rows)
}
