//! Batch JSON front end for `sumrank`.
//!
//! A job names a field tower and an ordered list of commands over the codes
//! and supports it defines. Each command produces one report entry. Commands that yield a
//! code or a support may store it under a new name with `"as"`, and later
//! commands can refer to it.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use sumrank::codes;
use sumrank::field::{ArithOp, BlockSpec, Elem, Field, FieldTower};
use sumrank::lattice::{self, SupportList};
use sumrank::linalg::Matrix;
use sumrank::metric::{self, SupportSpace};
use sumrank::skew::{self, ConjugacyDecomposition, FunctionTable, SkewPoly, SkewPolyJson, SkewSupportSpace};
use sumrank::weights::{self, Algorithm};
use sumrank::{Budget, ErrorClass, LinearCode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// Samples drawn by `isometry-check` unless told otherwise.
pub const DEFAULT_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Math(#[from] sumrank::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Math(e) => match e.class() {
                ErrorClass::Budget => EXIT_BUDGET,
                ErrorClass::Domain => EXIT_DOMAIN,
            },
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Schema(_) => "schema",
            CliError::Math(e) => e.code(),
        }
    }

    pub fn class(&self) -> &'static str {
        match self.exit_code() {
            EXIT_SCHEMA => "schema",
            EXIT_BUDGET => "budget",
            _ => "domain",
        }
    }

    fn report(&self) -> ErrorReport {
        ErrorReport { code: self.code().into(), class: self.class().into(), message: self.to_string() }
    }
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

type CliResult<T> = std::result::Result<T, CliError>;

/// `{p, modulus, blocks: [{n, d, basis?}]}`; `modulus` lists the
/// coefficients of the defining polynomial, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub p: u32,
    pub modulus: Vec<u32>,
    pub blocks: Vec<BlockSpec>,
}

impl TowerSpec {
    pub fn build(&self) -> CliResult<Arc<FieldTower>> {
        let field = Arc::new(Field::new(self.p, &self.modulus)?);
        Ok(Arc::new(FieldTower::new(field, &self.blocks)?))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Largest number of items an exhaustive scan may visit.
    #[serde(default)]
    pub enumeration: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandSpec {
    pub command: String,
    #[serde(default)]
    pub args: Map<String, Value>,
    #[serde(default, rename = "as", skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub tower: TowerSpec,
    /// Codes by name, each given by generator rows.
    #[serde(default)]
    pub codes: BTreeMap<String, Vec<Vec<Elem>>>,
    /// Supports by name, each given as one list of rows per block.
    #[serde(default)]
    pub supports: BTreeMap<String, Vec<Vec<Vec<Elem>>>>,
    #[serde(default)]
    pub commands: Vec<CommandSpec>,
    #[serde(default)]
    pub budgets: Budgets,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Overrides `budgets.enumeration` when set.
    pub budget: Option<u64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub code: String,
    pub class: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub command: String,
    #[serde(rename = "as", skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub results: Vec<Entry>,
    /// Exit status of the first failing command, or 0.
    pub exit_code: i32,
}

/// Commands accepted by [`run`].
pub const COMMANDS: &[&str] = &[
    "weight",
    "distance",
    "support",
    "support-space",
    "dual",
    "change-bases",
    "pre-shorten",
    "restrict",
    "shorten",
    "dimension-identities",
    "hierarchy",
    "wei-check",
    "bounds",
    "msrd-check",
    "effective-length",
    "hamming-minimum",
    "refined-weight",
    "skew-eval-code",
    "skew-weight",
    "skew-support-space",
    "isometry-check",
    "enumerate",
    "field-op",
    "lattice-op",
    "skew-op",
];

/// Argument keys that name a code.
const CODE_KEYS: &[&str] = &["code", "sub"];

struct Context {
    tower: Arc<FieldTower>,
    budget: Budget,
    seed: u64,
    codes: BTreeMap<String, LinearCode>,
    supports: BTreeMap<String, SupportList>,
}

/// Validates names up front: every code or support referenced by name must
/// be defined by the job or by an earlier `"as"`.
fn validate(job: &JobSpec) -> CliResult<()> {
    if job.budgets.enumeration == Some(0) {
        return Err(schema("budgets.enumeration must be positive"));
    }
    let mut codes: Vec<&str> = job.codes.keys().map(String::as_str).collect();
    let mut supports: Vec<&str> = job.supports.keys().map(String::as_str).collect();
    for (i, c) in job.commands.iter().enumerate() {
        if !COMMANDS.contains(&c.command.as_str()) {
            return Err(schema(format!("command {i}: unknown command {:?}", c.command)));
        }
        for key in CODE_KEYS {
            if let Some(Value::String(name)) = c.args.get(*key) {
                if !codes.contains(&name.as_str()) {
                    return Err(schema(format!("command {i}: undefined code {name:?}")));
                }
            }
        }
        for (key, v) in &c.args {
            if key.starts_with("support") || key == "inside" {
                if let Value::String(name) = v {
                    if !supports.contains(&name.as_str()) {
                        return Err(schema(format!("command {i}: undefined support {name:?}")));
                    }
                }
            }
        }
        if let Some(name) = &c.name {
            match c.command.as_str() {
                "support" | "lattice-op" => supports.push(name),
                _ => codes.push(name),
            }
        }
    }
    Ok(())
}

/// Runs a parsed job. Job-level problems (bad tower, undefined names) are
/// returned as errors; command failures are recorded in the report.
pub fn run(job: &JobSpec, opts: &RunOptions) -> CliResult<Report> {
    validate(job)?;
    let tower = job.tower.build()?;
    let budget = Budget(opts.budget.or(job.budgets.enumeration).unwrap_or(Budget::DEFAULT.0));
    if budget.0 == 0 {
        return Err(schema("budget must be positive"));
    }
    let mut ctx = Context { tower: tower.clone(), budget, seed: opts.seed, codes: BTreeMap::new(), supports: BTreeMap::new() };
    for (name, rows) in &job.codes {
        ctx.codes.insert(name.clone(), LinearCode::new(tower.clone(), rows.clone())?);
    }
    for (name, rows) in &job.supports {
        ctx.supports.insert(name.clone(), SupportList::from_rows(tower.clone(), rows.clone())?);
    }
    let mut results = Vec::with_capacity(job.commands.len());
    let mut exit_code = EXIT_OK;
    for cmd in &job.commands {
        let entry = match ctx.execute(cmd) {
            Ok(result) => Entry { command: cmd.command.clone(), name: cmd.name.clone(), status: "ok", result: Some(result), error: None },
            Err(e) => {
                if exit_code == EXIT_OK {
                    exit_code = e.exit_code();
                }
                Entry { command: cmd.command.clone(), name: cmd.name.clone(), status: "error", result: None, error: Some(e.report()) }
            }
        };
        results.push(entry);
    }
    Ok(Report { results, exit_code })
}

/// Parses and runs a JSON job, returning the pretty-printed report and the
/// process exit status.
pub fn run_json(input: &str, opts: &RunOptions) -> (String, i32) {
    let outcome = serde_json::from_str::<JobSpec>(input)
        .map_err(|e| schema(format!("invalid job: {e}")))
        .and_then(|job| run(&job, opts));
    match outcome {
        Ok(report) => (to_pretty(&report), report.exit_code),
        Err(e) => {
            let body = json!({ "error": e.report(), "exit_code": e.exit_code(), "results": [] });
            (to_pretty(&body), e.exit_code())
        }
    }
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

struct Args<'a> {
    command: &'a str,
    map: &'a Map<String, Value>,
}

impl<'a> Args<'a> {
    fn allow(&self, keys: &[&str]) -> CliResult<()> {
        for k in self.map.keys() {
            if !keys.contains(&k.as_str()) {
                return Err(schema(format!("{}: unexpected argument {k:?}", self.command)));
            }
        }
        Ok(())
    }

    fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    fn raw(&self, key: &str) -> CliResult<&'a Value> {
        self.map.get(key).ok_or_else(|| schema(format!("{}: missing argument {key:?}", self.command)))
    }

    fn get<T: DeserializeOwned>(&self, key: &str) -> CliResult<T> {
        serde_json::from_value(self.raw(key)?.clone())
            .map_err(|e| schema(format!("{}: argument {key:?}: {e}", self.command)))
    }

    fn opt<T: DeserializeOwned>(&self, key: &str) -> CliResult<Option<T>> {
        if self.has(key) {
            self.get(key).map(Some)
        } else {
            Ok(None)
        }
    }
}

fn code_json(c: &LinearCode) -> Value {
    to_value(&c.to_json())
}

fn support_json(l: &SupportList) -> Value {
    json!({ "rank": l.rank(), "parts": to_value(&l.to_json()) })
}

fn decomposition(field: &Arc<Field>, args: &Args) -> CliResult<ConjugacyDecomposition> {
    let t: usize = args.opt("sigma_power")?.unwrap_or(1);
    let points: Vec<Elem> = args.get("points")?;
    Ok(skew::p_basis_decompose(field, t, &points)?)
}

impl Context {
    fn code(&self, args: &Args, key: &str) -> CliResult<LinearCode> {
        match args.raw(key)? {
            Value::String(name) => {
                self.codes.get(name).cloned().ok_or_else(|| schema(format!("undefined code {name:?}")))
            }
            _ => {
                let rows: Vec<Vec<Elem>> = args.get(key)?;
                Ok(LinearCode::new(self.tower.clone(), rows)?)
            }
        }
    }

    /// A support by name, or literal rows on `tower`.
    fn support(&self, args: &Args, key: &str, tower: &Arc<FieldTower>) -> CliResult<SupportList> {
        match args.raw(key)? {
            Value::String(name) => {
                self.supports.get(name).cloned().ok_or_else(|| schema(format!("undefined support {name:?}")))
            }
            _ => Ok(SupportList::from_rows(tower.clone(), args.get(key)?)?),
        }
    }

    fn vector(&self, args: &Args, key: &str) -> CliResult<Vec<Elem>> {
        let v: Vec<Elem> = args.get(key)?;
        if v.len() != self.tower.len() {
            return Err(sumrank::Error::DimensionMismatch { expected: self.tower.len(), found: v.len() }.into());
        }
        for e in &v {
            self.tower.field().element(e.0 as u64)?;
        }
        Ok(v)
    }

    fn rows(&self, args: &Args, key: &str) -> CliResult<Matrix> {
        let rows: Vec<Vec<Elem>> = args.get(key)?;
        for e in rows.iter().flatten() {
            self.tower.field().element(e.0 as u64)?;
        }
        Ok(Matrix::try_from_rows(self.tower.len(), rows)?)
    }

    fn store_code(&mut self, cmd: &CommandSpec, c: LinearCode) -> Value {
        let out = code_json(&c);
        if let Some(name) = &cmd.name {
            self.codes.insert(name.clone(), c);
        }
        out
    }

    fn execute(&mut self, cmd: &CommandSpec) -> CliResult<Value> {
        let args = Args { command: &cmd.command, map: &cmd.args };
        let budget = self.budget;
        let field = self.tower.field().clone();
        match cmd.command.as_str() {
            "weight" => {
                args.allow(&["vector"])?;
                let v = self.vector(&args, "vector")?;
                Ok(json!({ "weight": metric::weight(&self.tower, &v) }))
            }
            "distance" => {
                if args.has("code") {
                    args.allow(&["code"])?;
                    let c = self.code(&args, "code")?;
                    Ok(json!({ "min_distance": weights::min_distance(&c, budget)? }))
                } else {
                    args.allow(&["a", "b"])?;
                    let (a, b) = (self.vector(&args, "a")?, self.vector(&args, "b")?);
                    Ok(json!({ "distance": metric::distance(&self.tower, &a, &b) }))
                }
            }
            "support" => {
                args.allow(&["vector", "rows", "code"])?;
                let l = if args.has("vector") {
                    metric::support(&self.tower, &self.vector(&args, "vector")?)
                } else if args.has("rows") {
                    metric::subspace_support(&self.tower, &self.rows(&args, "rows")?)
                } else {
                    let c = self.code(&args, "code")?;
                    metric::subspace_support(c.tower(), c.generators())
                };
                let out = support_json(&l);
                if let Some(name) = &cmd.name {
                    self.supports.insert(name.clone(), l);
                }
                Ok(out)
            }
            "support-space" => {
                if args.has("rows") {
                    args.allow(&["rows"])?;
                    let v = self.rows(&args, "rows")?;
                    Ok(match metric::support_space_of(&self.tower, &v)? {
                        SupportSpace::Support(l) => json!({
                            "is_support_space": true,
                            "dim": l.rank(),
                            "rank": l.rank(),
                            "support": support_json(&l),
                        }),
                        SupportSpace::NotASupportSpace { dim, rank, closure } => json!({
                            "is_support_space": false,
                            "dim": dim,
                            "rank": rank,
                            "closure": support_json(&closure),
                        }),
                    })
                } else {
                    args.allow(&["support", "vector"])?;
                    let l = self.support(&args, "support", &self.tower)?;
                    let gens = metric::support_space_generators(&l);
                    let mut out = json!({ "dim": gens.nrows(), "generators": gens.rows() });
                    if args.has("vector") {
                        let v = self.vector(&args, "vector")?;
                        out["contains"] = json!(metric::in_support_space(&v, &l)?);
                    }
                    Ok(out)
                }
            }
            "dual" => {
                args.allow(&["code"])?;
                let c = self.code(&args, "code")?.dual();
                Ok(self.store_code(cmd, c))
            }
            "change-bases" => {
                args.allow(&["code", "matrices"])?;
                let c = self.code(&args, "code")?;
                let raw: Vec<Vec<Vec<Elem>>> = args.get("matrices")?;
                let mats = raw
                    .into_iter()
                    .map(|rows| {
                        let cols = rows.first().map_or(0, Vec::len);
                        Matrix::try_from_rows(cols, rows)
                    })
                    .collect::<sumrank::Result<Vec<_>>>()?;
                let image = c.change_of_bases(&mats)?;
                Ok(self.store_code(cmd, image))
            }
            "pre-shorten" | "restrict" | "shorten" => {
                args.allow(&["code", "support"])?;
                let c = self.code(&args, "code")?;
                let l = self.support(&args, "support", c.tower())?;
                let out = match cmd.command.as_str() {
                    "pre-shorten" => c.pre_shorten(&l)?,
                    "restrict" => c.restrict(&l)?,
                    _ => c.shorten(&l)?,
                };
                Ok(self.store_code(cmd, out))
            }
            "dimension-identities" => {
                args.allow(&["code", "support"])?;
                let c = self.code(&args, "code")?;
                let l = self.support(&args, "support", c.tower())?;
                Ok(to_value(&codes::dimension_identities(&c, &l, budget)?))
            }
            "hierarchy" => {
                args.allow(&["code", "sub", "algorithm"])?;
                let c = self.code(&args, "code")?;
                let algorithm: Option<String> = args.opt("algorithm")?;
                if !args.has("sub") && algorithm.is_none() {
                    return Ok(to_value(&weights::weight_report(&c, budget)?));
                }
                let sub = if args.has("sub") { self.code(&args, "sub")? } else { LinearCode::zero(c.tower().clone()) };
                let d = match algorithm.as_deref().unwrap_or("support_scan") {
                    "support_scan" => weights::generalized_weights(&c, &sub, Algorithm::SupportScan, budget)?,
                    "subspace_scan" => weights::generalized_weights(&c, &sub, Algorithm::SubspaceScan, budget)?,
                    "checked" => weights::generalized_weights_checked(&c, &sub, budget)?,
                    other => return Err(schema(format!("hierarchy: unknown algorithm {other:?}"))),
                };
                let profile = weights::k_profile_all(&c, &sub, budget)?;
                Ok(json!({ "k": c.dim() - sub.dim(), "n": c.len(), "d": d, "k_profile": profile }))
            }
            "wei-check" => {
                args.allow(&["code"])?;
                Ok(to_value(&weights::wei_duality(&self.code(&args, "code")?, budget)?))
            }
            "bounds" => {
                args.allow(&["code"])?;
                let c = self.code(&args, "code")?;
                let d = weights::hierarchy(&c, budget)?;
                let checks = weights::check_bounds(&d, c.len(), field.order() as u64)?;
                let all_hold = checks.iter().all(|b| b.holds);
                Ok(json!({ "d": d, "checks": to_value(&checks), "all_hold": all_hold }))
            }
            "msrd-check" => {
                args.allow(&["code", "r"])?;
                let c = self.code(&args, "code")?;
                let rank = weights::msrd_rank(&c, budget)?;
                let rs: Vec<usize> = match args.opt::<usize>("r")? {
                    Some(r) => vec![r],
                    None => (1..=c.dim()).collect(),
                };
                let conditions = rs
                    .into_iter()
                    .map(|r| weights::msrd_support_characterization(&c, r, budget))
                    .collect::<sumrank::Result<Vec<_>>>()?;
                Ok(json!({ "msrd_rank": rank, "conditions": to_value(&conditions) }))
            }
            "effective-length" => {
                args.allow(&["code"])?;
                Ok(to_value(&weights::effective_length(&self.code(&args, "code")?, budget)?))
            }
            "hamming-minimum" => {
                args.allow(&["rows"])?;
                let d = self.rows(&args, "rows")?;
                let w = metric::weight_via_hamming_minimum(&self.tower, &d, budget)?;
                Ok(json!({ "weight": w, "sum_rank_weight": metric::subspace_support(&self.tower, &d).rank() }))
            }
            "refined-weight" => {
                args.allow(&["code", "sub", "refinement", "r"])?;
                let c = self.code(&args, "code")?;
                let sub = if args.has("sub") { self.code(&args, "sub")? } else { LinearCode::zero(c.tower().clone()) };
                let refinement: Vec<Vec<usize>> = args.get("refinement")?;
                let r: usize = args.get("r")?;
                let refined = weights::refined_partition_weight(&c, &sub, &refinement, r, budget)?;
                let coarse = weights::generalized_weight(&c, &sub, r, Algorithm::SupportScan, budget)?;
                Ok(json!({ "refined": refined, "coarse": coarse }))
            }
            "skew-eval-code" => {
                args.allow(&["points", "sigma_power", "k"])?;
                let d = decomposition(&field, &args)?;
                let c = skew::skew_evaluation_code(&d, args.get("k")?)?;
                let dist = c.min_distance(budget)?;
                let msrd = dist == Some(c.len() + 1 - c.dim());
                let mut out = json!({ "decomposition": to_value(&d.to_json()), "min_distance": dist, "msrd": msrd });
                out["code"] = self.store_code(cmd, c);
                Ok(out)
            }
            "skew-weight" => {
                args.allow(&["points", "sigma_power", "vector", "table"])?;
                let d = decomposition(&field, &args)?;
                let (c, table) = if args.has("table") {
                    let table: FunctionTable = args.get("table")?;
                    (skew::phi_b_inverse(&d, &table)?, table)
                } else {
                    let c: Vec<Elem> = args.get("vector")?;
                    let table = skew::phi_b(&d, &c)?;
                    (c, table)
                };
                Ok(json!({
                    "vector": c,
                    "table": to_value(&table),
                    "skew_weight": skew::skew_weight(&table, &d.omega())?,
                    "sum_rank_weight": metric::weight(d.tower(), &c),
                    "skew_support": to_value(&skew::skew_support(&table, &d)?.to_json()),
                }))
            }
            "skew-support-space" => {
                args.allow(&["points", "sigma_power", "tables"])?;
                let d = decomposition(&field, &args)?;
                let tables: Vec<FunctionTable> = args.get("tables")?;
                let left_ideal = skew::is_left_ideal(&tables, &d)?;
                Ok(match skew::skew_support_space_check(&tables, &d)? {
                    SkewSupportSpace::Support(p) => json!({
                        "is_support_space": true,
                        "left_ideal": left_ideal,
                        "support": to_value(&p.to_json()),
                    }),
                    SkewSupportSpace::NotASupportSpace { dim, rank, closure } => json!({
                        "is_support_space": false,
                        "left_ideal": left_ideal,
                        "dim": dim,
                        "rank": rank,
                        "closure": to_value(&closure.to_json()),
                    }),
                })
            }
            "isometry-check" => {
                args.allow(&["points", "sigma_power", "samples", "exhaustive"])?;
                let d = decomposition(&field, &args)?;
                let exhaustive: bool = args.opt("exhaustive")?.unwrap_or(false);
                let samples: usize = args.opt("samples")?.unwrap_or(DEFAULT_SAMPLES);
                let vectors = if exhaustive {
                    let count = (field.order() as u128).saturating_pow(d.len() as u32);
                    budget.check(count)?;
                    all_vectors(&field, d.len())
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                    (0..samples)
                        .map(|_| (0..d.len()).map(|_| Elem(rng.gen_range(0..field.order()))).collect())
                        .collect()
                };
                let omega = d.omega();
                let mut mismatches = Vec::new();
                for c in &vectors {
                    let wb = skew::skew_weight(&skew::phi_b(&d, c)?, &omega)?;
                    let wsr = metric::weight(d.tower(), c);
                    if wb != wsr {
                        mismatches.push(json!({ "vector": c, "skew_weight": wb, "sum_rank_weight": wsr }));
                    }
                }
                Ok(json!({
                    "checked": vectors.len(),
                    "exhaustive": exhaustive,
                    "seed": if exhaustive { None } else { Some(self.seed) },
                    "holds": mismatches.is_empty(),
                    "mismatches": mismatches,
                }))
            }
            "enumerate" => {
                args.allow(&["rank", "list"])?;
                let rank: Option<usize> = args.opt("rank")?;
                let list: bool = args.opt("list")?.unwrap_or(false);
                let mut by_rank = vec![0u64; self.tower.len() + 1];
                let mut listed = Vec::new();
                for l in lattice::enumerate_supports(&self.tower, rank, budget)? {
                    by_rank[l.rank()] += 1;
                    if list {
                        listed.push(support_json(&l));
                    }
                }
                let mut out = json!({
                    "total": by_rank.iter().sum::<u64>(),
                    "by_rank": by_rank,
                    "lattice_size": lattice::support_count(&self.tower).to_string(),
                });
                if list {
                    out["supports"] = Value::Array(listed);
                }
                Ok(out)
            }
            "field-op" => self.field_op(&args),
            "lattice-op" => {
                args.allow(&["op", "support", "support2", "inside"])?;
                let op: String = args.get("op")?;
                let l = self.support(&args, "support", &self.tower)?;
                let result = match op.as_str() {
                    "rank" => return Ok(json!({ "rank": l.rank() })),
                    "dual" => l.dual(),
                    "includes" => {
                        let m = self.support(&args, "support2", &self.tower)?;
                        return Ok(json!({ "includes": l.includes(&m)? }));
                    }
                    "sum" => l.sum(&self.support(&args, "support2", &self.tower)?)?,
                    "intersect" => l.intersect(&self.support(&args, "support2", &self.tower)?)?,
                    "complementary" => l.complementary(&self.support(&args, "inside", &self.tower)?)?,
                    other => return Err(schema(format!("lattice-op: unknown op {other:?}"))),
                };
                let out = support_json(&result);
                if let Some(name) = &cmd.name {
                    self.supports.insert(name.clone(), result);
                }
                Ok(out)
            }
            "skew-op" => skew_op(&field, &args),
            other => Err(schema(format!("unknown command {other:?}"))),
        }
    }

    fn field_op(&self, args: &Args) -> CliResult<Value> {
        args.allow(&["op", "a", "b", "t", "block", "vector"])?;
        let f = self.tower.field();
        let op: String = args.get("op")?;
        let elem = |key: &str| -> CliResult<Elem> { Ok(f.element(args.get::<u64>(key)?)?) };
        match op.as_str() {
            "add" | "mul" | "inv" | "neg" => {
                let arith: ArithOp = serde_json::from_value(json!(op)).expect("known op");
                let b = if args.has("b") { Some(elem("b")?) } else { None };
                Ok(json!({ "value": f.apply(arith, elem("a")?, b)? }))
            }
            "frobenius" => Ok(json!({ "value": f.frobenius(elem("a")?, args.get("t")?) })),
            "coordinates" => {
                Ok(json!({ "coordinates": self.tower.subfield_coordinates(elem("a")?, args.get("block")?)? }))
            }
            "matrix" => {
                let v: Vec<Elem> = args.get("vector")?;
                let m = self.tower.matrix_representation(&v, args.get("block")?)?;
                Ok(json!({ "rows": m.nrows(), "cols": m.ncols(), "matrix": m.rows() }))
            }
            other => Err(schema(format!("field-op: unknown op {other:?}"))),
        }
    }
}

fn skew_op(field: &Arc<Field>, args: &Args) -> CliResult<Value> {
    args.allow(&["op", "sigma_power", "f", "g", "a", "beta", "points"])?;
    let op: String = args.get("op")?;
    let t: usize = args.opt("sigma_power")?.unwrap_or(1);
    let poly = |key: &str| -> CliResult<SkewPoly> {
        let coeffs: Vec<Elem> = args.get(key)?;
        Ok(SkewPoly::from_json(field.clone(), &SkewPolyJson { sigma_power: t, coeffs })?)
    };
    let elem = |key: &str| -> CliResult<Elem> { Ok(field.element(args.get::<u64>(key)?)?) };
    match op.as_str() {
        "mul" => Ok(json!({ "coeffs": poly("f")?.mul(&poly("g")?)?.coeffs() })),
        "evaluate" => {
            let f = poly("f")?;
            let a = elem("a")?;
            Ok(json!({ "value": f.evaluate(a), "by_division": f.evaluate_by_division(a) }))
        }
        "right-divide" => {
            let (q, r) = poly("f")?.right_divide(&poly("g")?)?;
            Ok(json!({ "quotient": q.coeffs(), "remainder": r.coeffs() }))
        }
        "conjugate" => Ok(json!({ "value": skew::conjugate(field, t, elem("a")?, elem("beta")?)? })),
        "centralizer" => Ok(json!({ "degree": skew::centralizer_degree(field, t, elem("a")?)? })),
        "minimal-poly" => {
            let points: Vec<Elem> = args.get("points")?;
            let p = skew::minimal_skew_poly(field, t, &points);
            let mut out = to_value(&p.to_json());
            if args.has("a") {
                out["contains"] = json!(p.contains(elem("a")?));
            }
            Ok(out)
        }
        "decompose" => {
            let points: Vec<Elem> = args.get("points")?;
            Ok(to_value(&skew::p_basis_decompose(field, t, &points)?.to_json()))
        }
        other => Err(schema(format!("skew-op: unknown op {other:?}"))),
    }
}

fn all_vectors(field: &Field, n: usize) -> Vec<Vec<Elem>> {
    let q = field.order();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..q).map(move |x| [v.clone(), vec![Elem(x)]].concat())).collect();
    }
    out
}
