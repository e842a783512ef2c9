//! Arithmetic in `F = GF(p^m)`, its subfields, and the block data of a
//! field tower.
//!
//! Elements are encoded as integers in `[0, p^m)` whose base-`p` digits are
//! the coefficients of the element in the polynomial basis `1, x, .., x^(m-1)`
//! of `GF(p)[x] / (modulus)`. Fields of order up to 2^20 use log/exp tables,
//! larger ones fall back to schoolbook polynomial multiplication.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;
const TABLE_LIMIT: u32 = 1 << 20;
const MAX_DEGREE: usize = 31;

/// An element of `F`, stored as its base-`p` integer code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Operation selector for [`Field::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field `GF(p^m)` in a polynomial basis.
pub struct Field {
    p: u32,
    m: usize,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `num` modulo the monic `den` over GF(p); coefficients lowest first.
fn poly_rem(mut num: Vec<u64>, den: &[u32], p: u64) -> Vec<u64> {
    let dd = den.len() - 1;
    while num.len() > dd {
        let top = num.len() - 1;
        let c = num[top] % p;
        if c != 0 {
            let shift = top - dd;
            for (i, &d) in den.iter().enumerate() {
                let sub = c * d as u64 % p;
                num[shift + i] = (num[shift + i] + p - sub) % p;
            }
        }
        num.pop();
    }
    num
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    let p64 = p as u64;
    let num: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
    for d in 1..=m / 2 {
        let count = (p64).pow(d as u32);
        for idx in 0..count {
            let mut den = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                den.push((t % p64) as u32);
                t /= p64;
            }
            den.push(1);
            let r = poly_rem(num.clone(), &den, p64);
            if r.iter().all(|&c| c % p64 == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `GF(p)[x] / (modulus)`; `modulus` lists coefficients lowest
    /// degree first and must be monic and irreducible.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let m = modulus.len() - 1;
        if m > MAX_DEGREE {
            return Err(Error::InvalidField(format!("degree {m} is too large")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient not reduced mod p".into()));
        }
        if modulus[m] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let order = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::InvalidField(format!("field order {order} exceeds 2^31")));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let mut field = Field { p, m, q: order as u32, modulus: modulus.to_vec(), tables: None };
        if field.q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, &[0, 1])
    }

    fn build_tables(&self) -> LogTables {
        let q = self.q;
        let n = (q - 1) as u64;
        let gen = if q == 2 {
            Elem::ONE
        } else {
            let factors = prime_factors(n);
            (2..q)
                .map(Elem)
                .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != Elem::ONE))
                .expect("multiplicative group of a finite field is cyclic")
        };
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = Elem::ONE;
        for i in 0..(q - 1) as usize {
            exp[i] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.slow_mul(x, gen);
        }
        for i in (q - 1) as usize..exp.len() {
            exp[i] = exp[i - (q - 1) as usize];
        }
        LogTables { exp, log }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Validates an integer code.
    pub fn element(&self, code: u64) -> Result<Elem> {
        if code < self.q as u64 {
            Ok(Elem(code as u32))
        } else {
            Err(Error::ElementOutOfRange { code, order: self.q as u64 })
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// The class of `x` in `GF(p)[x] / (modulus)`.
    pub fn generator(&self) -> Elem {
        if self.m == 1 {
            Elem((self.p - self.modulus[0]) % self.p)
        } else {
            Elem(self.p)
        }
    }

    /// Base-`p` digits of `a`, lowest first (`m` entries).
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m);
        let mut c = a.0;
        for _ in 0..self.m {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let mut c = 0u32;
        for &d in digits.iter().rev() {
            c = c * self.p + d % self.p;
        }
        Elem(c)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = (self.p - x % self.p) % self.p;
            out += d * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let r = poly_rem(prod, &self.modulus, p);
        let digits: Vec<u32> = r.iter().map(|&c| c as u32).collect();
        self.from_digits(&digits)
    }

    fn slow_pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.slow_mul(a, b),
        }
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = (self.q - 1) as u64;
                let l = t.log[a.0 as usize] as u64 * (e % n) % n;
                Elem(t.exp[l as usize])
            }
            None => self.slow_pow(a, e),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                Elem(t.exp[((n - t.log[a.0 as usize]) % n) as usize])
            }
            None => self.slow_pow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(p^t)`.
    pub fn frobenius(&self, a: Elem, t: usize) -> Elem {
        let mut x = a;
        for _ in 0..t % self.m {
            x = self.pow(x, self.p as u64);
        }
        x
    }

    /// Dispatches one of the four basic operations; `b` is used by `add`
    /// and `mul` only.
    pub fn apply(&self, op: ArithOp, a: Elem, b: Option<Elem>) -> Result<Elem> {
        self.element(a.0 as u64)?;
        let need_b = || -> Result<Elem> {
            let b = b.ok_or(Error::DimensionMismatch { expected: 2, found: 1 })?;
            self.element(b.0 as u64)
        };
        match op {
            ArithOp::Add => Ok(self.add(a, need_b()?)),
            ArithOp::Mul => Ok(self.mul(a, need_b()?)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Neg => Ok(self.neg(a)),
        }
    }

    /// Whether `a` lies in the subfield `GF(p^d)`.
    pub fn in_subfield(&self, a: Elem, d: usize) -> bool {
        self.frobenius(a, d) == a
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

// ---------------------------------------------------------------------------
// Linear algebra over GF(p), used for coordinates with respect to subfields.

fn gfp_rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = mod_inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = f * rows[r][j] % p;
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a square matrix over GF(p).
fn gfp_invert(mat: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<u64>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = gfp_rref(&mut aug, p);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Kernel of a GF(p) matrix given by rows, as a list of vectors.
fn gfp_kernel(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut r = rows.to_vec();
    let pivots = if r.is_empty() { Vec::new() } else { gfp_rref(&mut r, p) };
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - r[i][free] % p) % p;
        }
        out.push(v);
    }
    out
}

// ---------------------------------------------------------------------------
// Subfields and tower blocks.

/// The subfield `GF(p^d) ⊆ F`, realised as the fixed field of `a ↦ a^(p^d)`.
#[derive(Debug)]
pub struct Subfield {
    degree: usize,
    prime_basis: Vec<Elem>,
    elements: OnceLock<Vec<Elem>>,
}

impl Subfield {
    pub fn new(field: &Field, degree: usize) -> Result<Subfield> {
        let m = field.degree();
        if degree == 0 || !m.is_multiple_of(degree) {
            return Err(Error::InvalidTower(format!("subfield degree {degree} does not divide {m}")));
        }
        let p = field.characteristic() as u64;
        // Kernel of a ↦ a^(p^d) - a, as a GF(p)-linear map on GF(p)^m.
        let mut cols = Vec::with_capacity(m);
        let mut xj = Elem::ONE;
        let gen = field.generator();
        for _ in 0..m {
            let img = field.sub(field.frobenius(xj, degree), xj);
            cols.push(field.digits(img));
            xj = field.mul(xj, gen);
        }
        let rows: Vec<Vec<u64>> =
            (0..m).map(|i| (0..m).map(|j| cols[j][i] as u64).collect()).collect();
        let kernel = gfp_kernel(&rows, m, p);
        let mut prime_basis: Vec<Elem> = Vec::with_capacity(kernel.len());
        for v in kernel {
            // v holds coordinates in the power basis x^0..x^(m-1), i.e. digits.
            let digits: Vec<u32> = v.iter().map(|&c| c as u32).collect();
            prime_basis.push(field.from_digits(&digits));
        }
        if prime_basis.len() != degree {
            return Err(Error::InvalidTower(format!(
                "fixed field has dimension {} instead of {degree}",
                prime_basis.len()
            )));
        }
        Ok(Subfield { degree, prime_basis, elements: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// A basis of the subfield over GF(p).
    pub fn prime_basis(&self) -> &[Elem] {
        &self.prime_basis
    }

    /// All subfield elements sorted by code.
    pub fn elements(&self, field: &Field) -> &[Elem] {
        self.elements.get_or_init(|| {
            let p = field.characteristic();
            let count = (p as u64).pow(self.degree as u32);
            let mut out: Vec<Elem> = (0..count)
                .map(|idx| {
                    let mut t = idx;
                    let mut acc = Elem::ZERO;
                    for &b in &self.prime_basis {
                        let c = Elem((t % p as u64) as u32);
                        acc = field.add(acc, field.mul(c, b));
                        t /= p as u64;
                    }
                    acc
                })
                .collect();
            out.sort();
            out
        })
    }

    pub fn size(&self, field: &Field) -> u64 {
        (field.characteristic() as u64).pow(self.degree as u32)
    }
}

/// A subfield together with an ordered basis of `F` over it.
#[derive(Debug)]
pub struct BlockBasis {
    subfield: Subfield,
    basis: Vec<Elem>,
    // Inverse of the GF(p)-matrix whose column j*d + s holds the digits of
    // basis[j] * prime_basis[s].
    inverse: Vec<Vec<u64>>,
}

impl BlockBasis {
    pub fn new(field: &Field, degree: usize, basis: Option<Vec<Elem>>) -> Result<BlockBasis> {
        let subfield = Subfield::new(field, degree)?;
        let m = field.degree();
        let mi = m / degree;
        let basis = match basis {
            Some(b) => {
                for &e in &b {
                    field.element(e.0 as u64)?;
                }
                if b.len() != mi {
                    return Err(Error::InvalidTower(format!(
                        "basis has {} elements, expected {mi}",
                        b.len()
                    )));
                }
                b
            }
            None => default_basis(field, &subfield, mi),
        };
        let p = field.characteristic() as u64;
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(m);
        for &a in &basis {
            for &k in subfield.prime_basis() {
                cols.push(field.digits(field.mul(a, k)));
            }
        }
        let mat: Vec<Vec<u64>> =
            (0..m).map(|i| (0..m).map(|j| cols[j][i] as u64).collect()).collect();
        let inverse = gfp_invert(&mat, p).ok_or_else(|| {
            Error::InvalidTower("basis is not linearly independent over the subfield".into())
        })?;
        Ok(BlockBasis { subfield, basis, inverse })
    }

    pub fn subfield(&self) -> &Subfield {
        &self.subfield
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.subfield.degree
    }

    /// `m_i = m / d_i`.
    pub fn ext_degree(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients `c_j ∈ K` with `a = Σ_j basis[j] c_j`.
    pub fn coordinates(&self, field: &Field, a: Elem) -> Vec<Elem> {
        let p = field.characteristic() as u64;
        let digits = field.digits(a);
        let d = self.degree();
        let mut out = Vec::with_capacity(self.basis.len());
        let x: Vec<u64> = self
            .inverse
            .iter()
            .map(|row| row.iter().zip(&digits).map(|(&r, &g)| r * g as u64 % p).sum::<u64>() % p)
            .collect();
        for j in 0..self.basis.len() {
            let mut c = Elem::ZERO;
            for (s, &k) in self.subfield.prime_basis.iter().enumerate() {
                c = field.add(c, field.mul(Elem(x[j * d + s] as u32), k));
            }
            out.push(c);
        }
        out
    }
}

/// First `count` powers of the field generator that are independent over the
/// subfield, picked greedily.
fn default_basis(field: &Field, sub: &Subfield, count: usize) -> Vec<Elem> {
    let p = field.characteristic() as u64;
    let gen = field.generator();
    let mut picked: Vec<Elem> = Vec::with_capacity(count);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut power = Elem::ONE;
    for _ in 0..field.order() {
        if picked.len() == count {
            break;
        }
        let mut trial = rows.clone();
        for &k in sub.prime_basis() {
            trial.push(field.digits(field.mul(power, k)).iter().map(|&c| c as u64).collect());
        }
        let mut t = trial.clone();
        if gfp_rref(&mut t, p).len() == trial.len() {
            rows = trial;
            picked.push(power);
        }
        power = field.mul(power, gen);
    }
    picked
}

/// One block of a tower: its length `n_i` and shared subfield/basis data.
#[derive(Debug, Clone)]
pub struct Block {
    pub len: usize,
    data: Arc<BlockBasis>,
}

impl Block {
    pub fn new(len: usize, data: Arc<BlockBasis>) -> Block {
        Block { len, data }
    }

    pub fn data(&self) -> &Arc<BlockBasis> {
        &self.data
    }

    pub fn degree(&self) -> usize {
        self.data.degree()
    }

    pub fn ext_degree(&self) -> usize {
        self.data.ext_degree()
    }

    pub fn basis(&self) -> &[Elem] {
        self.data.basis()
    }

    pub fn subfield(&self) -> &Subfield {
        self.data.subfield()
    }
}

/// User-facing block description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Elem>>,
}

/// The ambient field together with the block partition `n = n_1 + .. + n_ℓ`,
/// the subfields `K_i` and the ordered bases `A_i`. Immutable once built.
#[derive(Debug, Clone)]
pub struct FieldTower {
    field: Arc<Field>,
    blocks: Vec<Block>,
    offsets: Vec<usize>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.blocks.len() == other.blocks.len()
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| {
                a.len == b.len && a.degree() == b.degree() && a.basis() == b.basis()
            })
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    pub fn new(field: Arc<Field>, specs: &[BlockSpec]) -> Result<FieldTower> {
        let mut blocks = Vec::with_capacity(specs.len());
        for spec in specs {
            let data = BlockBasis::new(&field, spec.d, spec.basis.clone())?;
            blocks.push(Block::new(spec.n, Arc::new(data)));
        }
        Ok(FieldTower::from_blocks(field, blocks))
    }

    pub fn from_blocks(field: Arc<Field>, blocks: Vec<Block>) -> FieldTower {
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for b in &blocks {
            acc += b.len;
            offsets.push(acc);
        }
        FieldTower { field, blocks, offsets }
    }

    /// Same subfields and bases with new block lengths.
    pub fn with_lengths(&self, lengths: &[usize]) -> Result<FieldTower> {
        if lengths.len() != self.blocks.len() {
            return Err(Error::DimensionMismatch { expected: self.blocks.len(), found: lengths.len() });
        }
        let blocks = self
            .blocks
            .iter()
            .zip(lengths)
            .map(|(b, &len)| Block::new(len, b.data.clone()))
            .collect();
        Ok(FieldTower::from_blocks(self.field.clone(), blocks))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> Result<&Block> {
        self.blocks.get(i).ok_or(Error::BadBlock(i))
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Total length `n`.
    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len).collect()
    }

    /// Coordinate range of block `i`.
    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn specs(&self) -> Vec<BlockSpec> {
        self.blocks
            .iter()
            .map(|b| BlockSpec { n: b.len, d: b.degree(), basis: Some(b.basis().to_vec()) })
            .collect()
    }

    /// Coefficients of `a` over `K_i` with respect to `A_i`.
    pub fn subfield_coordinates(&self, a: Elem, block: usize) -> Result<Vec<Elem>> {
        let b = self.block(block)?;
        Ok(b.data.coordinates(&self.field, a))
    }

    /// The `m_i × r` matrix over `K_i` whose column `j` holds the coordinates
    /// of `v[j]`.
    pub fn matrix_representation(&self, v: &[Elem], block: usize) -> Result<Matrix> {
        let b = self.block(block)?;
        let mi = b.ext_degree();
        let mut rows = vec![vec![Elem::ZERO; v.len()]; mi];
        for (j, &a) in v.iter().enumerate() {
            for (i, c) in b.data.coordinates(&self.field, a).into_iter().enumerate() {
                rows[i][j] = c;
            }
        }
        Ok(Matrix::from_rows(v.len(), rows))
    }

    /// Inverse of [`FieldTower::matrix_representation`]: `Σ_j α_j · row_j`.
    pub fn from_matrix_representation(&self, mat: &Matrix, block: usize) -> Result<Vec<Elem>> {
        let b = self.block(block)?;
        if mat.nrows() != b.ext_degree() {
            return Err(Error::DimensionMismatch { expected: b.ext_degree(), found: mat.nrows() });
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; mat.ncols()];
        for (alpha, row) in b.basis().iter().zip(mat.rows()) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(*alpha, x));
            }
        }
        Ok(out)
    }

    pub fn in_subfield(&self, a: Elem, block: usize) -> Result<bool> {
        let b = self.block(block)?;
        Ok(self.field.in_subfield(a, b.degree()))
    }
}
