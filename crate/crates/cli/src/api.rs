//! Operations shared by the command line and the HTTP service.
//!
//! Every vertex in a request or a result is 1-based. Results are plain JSON
//! values so both front ends emit the same bytes.

use quiverlab::budget::{ClassBudget, SeedBudget};
use quiverlab::class::{
    explore_class, find_counter_sequence, has_simply_laced_avenue, is_symmetric_algebra, is_vv_sigma_symmetric,
    symmetric_cluster_variables, ClassReport, ClassStatus, NotSymmetric, SymmetricAlgebra,
};
use quiverlab::class::detect::detect_rigid_vertices;
use quiverlab::seed::{enumerate_cluster_variables, SeedJson};
use quiverlab::{catalog, Error, Exec, MutationWord, QuiverSpec, Seed, ValuedQuiver, Violation};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Cap on the seed closure run alongside a symmetric-algebra verdict.
pub const SYMMETRIC_MAX_TERMS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Validate,
    Mutate,
    Word,
    Class,
    Analyze,
    Symmetric,
    Variables,
    Counter,
}

impl Op {
    pub fn parse(name: &str) -> Option<Op> {
        Some(match name {
            "validate" => Op::Validate,
            "mutate" => Op::Mutate,
            "word" => Op::Word,
            "class" => Op::Class,
            "analyze" => Op::Analyze,
            "symmetric" => Op::Symmetric,
            "variables" => Op::Variables,
            "counter" => Op::Counter,
            _ => return None,
        })
    }
}

/// A quiver given inline or by catalog name (`"a2"` or `"@a2"`).
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum QuiverInput {
    Name(String),
    Spec(QuiverSpec),
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    pub max_seeds: Option<usize>,
    pub max_depth: Option<usize>,
    pub max_members: Option<usize>,
    pub max_terms: Option<usize>,
    /// Bound on search word lengths (counter sequences, pre-unbounded depth).
    pub max_len: Option<usize>,
}

impl Budget {
    pub fn class(&self) -> ClassBudget {
        let d = ClassBudget::default();
        ClassBudget {
            max_members: self.max_members.unwrap_or(d.max_members),
            max_depth: self.max_depth.unwrap_or(d.max_depth),
        }
    }

    pub fn seeds(&self) -> SeedBudget {
        let d = SeedBudget::default();
        SeedBudget {
            max_seeds: self.max_seeds.unwrap_or(d.max_seeds),
            max_depth: self.max_depth.unwrap_or(d.max_depth),
            max_terms: self.max_terms.unwrap_or(d.max_terms),
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len.unwrap_or(4)
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub modulo_sign: bool,
    pub initial_only: bool,
    /// Also return the seed when mutating a bare quiver.
    pub seed: bool,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Request {
    pub quiver: Option<QuiverInput>,
    pub seed: Option<SeedJson>,
    /// Class member for counter-sequence searches; the root is `quiver`.
    pub member: Option<QuiverInput>,
    pub vertex: Option<usize>,
    /// Letters in written order; the rightmost is applied first.
    pub word: Option<Vec<usize>>,
    pub budget: Budget,
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    Malformed,
    UnknownCatalog,
    InvalidQuiver,
    Precondition,
    Internal,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
}

impl ApiError {
    pub fn malformed(message: impl Into<String>) -> Self {
        ApiError { code: ErrorCode::Malformed, message: message.into(), violations: Vec::new() }
    }

    fn precondition(message: impl Into<String>) -> Self {
        ApiError { code: ErrorCode::Precondition, message: message.into(), violations: Vec::new() }
    }

    pub fn status(&self) -> u16 {
        match self.code {
            ErrorCode::Malformed | ErrorCode::UnknownCatalog => 400,
            ErrorCode::InvalidQuiver | ErrorCode::Precondition => 422,
            ErrorCode::Internal => 500,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.code {
            ErrorCode::Internal => 3,
            _ => 1,
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (code, violations) = match e {
            Error::Invalid(v) => (ErrorCode::InvalidQuiver, v),
            Error::UnknownCatalog(_) => (ErrorCode::UnknownCatalog, Vec::new()),
            Error::NotExchangeable { .. }
            | Error::Precondition(_)
            | Error::BadPermutation(_)
            | Error::FreezeAll
            | Error::TooLarge { .. }
            | Error::NotSkewSymmetrizable => (ErrorCode::Precondition, Vec::new()),
            Error::Overflow | Error::LaurentViolation(_) | Error::Laurent(_) => (ErrorCode::Internal, Vec::new()),
        };
        ApiError { code, message, violations }
    }
}

/// A result and whether a budget cut it short.
#[derive(Clone, Debug)]
pub struct Response {
    pub result: Value,
    pub truncated: bool,
}

impl Response {
    fn complete(result: Value) -> Self {
        Response { result, truncated: false }
    }

    /// The HTTP envelope.
    pub fn envelope(&self) -> Value {
        json!({ "ok": true, "result": self.result, "truncated": self.truncated })
    }
}

pub fn error_envelope(e: &ApiError) -> Value {
    json!({ "ok": false, "error": e })
}

/// Quiver and display names of its vertices (catalog names or "1".."n").
struct Resolved {
    quiver: ValuedQuiver,
    names: Vec<String>,
}

fn resolve(input: &QuiverInput) -> Result<Resolved, ApiError> {
    match input {
        QuiverInput::Name(name) => {
            let e = catalog::get(name.strip_prefix('@').unwrap_or(name))?;
            Ok(Resolved { quiver: e.quiver, names: e.vertex_names })
        }
        QuiverInput::Spec(spec) => {
            let violations = ValuedQuiver::validate_spec(spec);
            if !violations.is_empty() {
                return Err(Error::Invalid(violations).into());
            }
            let quiver = ValuedQuiver::from_spec(spec)?;
            let names = (1..=quiver.size()).map(|i| i.to_string()).collect();
            Ok(Resolved { quiver, names })
        }
    }
}

fn need_quiver(req: &Request) -> Result<Resolved, ApiError> {
    req.quiver.as_ref().map(resolve).unwrap_or_else(|| Err(ApiError::malformed("missing field `quiver`")))
}

fn exchangeable(q: &ValuedQuiver, v: usize) -> Result<usize, ApiError> {
    if v == 0 || v > q.n() {
        return Err(Error::NotExchangeable { vertex: v, rank: q.n() }.into());
    }
    Ok(v - 1)
}

fn word_of(q: &ValuedQuiver, labels: &[usize]) -> Result<MutationWord, ApiError> {
    Ok(MutationWord::from_labels(labels, q.n())?)
}

fn edge_json(e: (usize, usize, u64, u64)) -> Value {
    json!({ "from": e.0 + 1, "to": e.1 + 1, "v": [e.2, e.3] })
}

pub fn run(op: Op, req: &Request) -> Result<Response, ApiError> {
    let exec = Exec::Parallel;
    match op {
        Op::Validate => validate(req),
        Op::Mutate => {
            let v = req.vertex.ok_or_else(|| ApiError::malformed("missing field `vertex`"))?;
            transform(req, |q| Ok(MutationWord::single(exchangeable(q, v)?)))
        }
        Op::Word => {
            let labels = req.word.as_ref().ok_or_else(|| ApiError::malformed("missing field `word`"))?;
            transform(req, |q| word_of(q, labels))
        }
        Op::Class => {
            let r = need_quiver(req)?;
            let report = explore_class(&r.quiver, &req.budget.class(), exec)?;
            let truncated = report.status == ClassStatus::BudgetExceeded;
            Ok(Response { result: serde_json::to_value(report.to_json()).expect("serializable"), truncated })
        }
        Op::Analyze => analyze(req, exec),
        Op::Symmetric => symmetric(req, exec),
        Op::Variables => {
            let r = need_quiver(req)?;
            let c = enumerate_cluster_variables(&r.quiver, &req.budget.seeds(), exec)?;
            let result = json!({
                "count": c.variables.len(),
                "seeds": c.nodes.len(),
                "complete": c.is_complete(),
                "stopped_by": c.truncated,
                "variables": c.variables.iter().map(|x| x.to_fraction_string()).collect::<Vec<_>>(),
            });
            Ok(Response { result, truncated: !c.is_complete() })
        }
        Op::Counter => {
            let r = need_quiver(req)?;
            let member = match &req.member {
                Some(m) => resolve(m)?.quiver,
                None => r.quiver.clone(),
            };
            if member.n() != r.quiver.n() || member.m() != r.quiver.m() {
                return Err(ApiError::precondition("member and root differ in shape"));
            }
            let v = req.vertex.ok_or_else(|| ApiError::malformed("missing field `vertex`"))?;
            let i = exchangeable(&member, v)?;
            let found = find_counter_sequence(&r.quiver, &member, i, req.budget.max_len(), exec)?;
            let result = match found {
                Some(c) => json!({
                    "found": true,
                    "word": c.word,
                    "full_word": c.word.then_after(&MutationWord::single(i)),
                    "permutation": c.permutation,
                    "sign": c.sign.as_char().to_string(),
                }),
                None => json!({ "found": false }),
            };
            Ok(Response::complete(result))
        }
    }
}

fn validate(req: &Request) -> Result<Response, ApiError> {
    let violations = match &req.quiver {
        Some(QuiverInput::Spec(spec)) => ValuedQuiver::validate_spec(spec),
        Some(QuiverInput::Name(_)) => Vec::new(),
        None => match &req.seed {
            Some(s) => match Seed::from_json(s) {
                Ok(_) => Vec::new(),
                Err(Error::Invalid(v)) => v,
                Err(e) => return Err(e.into()),
            },
            None => return Err(ApiError::malformed("missing field `quiver` or `seed`")),
        },
    };
    if let Some(q @ QuiverInput::Name(_)) = &req.quiver {
        resolve(q)?;
    }
    Ok(Response::complete(json!({ "valid": violations.is_empty(), "violations": violations })))
}

/// Mutation along a word, on a seed when one is given or asked for.
fn transform(
    req: &Request,
    word: impl Fn(&ValuedQuiver) -> Result<MutationWord, ApiError>,
) -> Result<Response, ApiError> {
    if let Some(s) = &req.seed {
        let seed = Seed::from_json(s)?;
        let w = word(seed.quiver())?;
        let out = seed.apply_word(&w)?;
        return Ok(Response::complete(json!({ "word": w, "seed": out.to_json() })));
    }
    let r = need_quiver(req)?;
    let w = word(&r.quiver)?;
    let mut result = json!({ "word": w, "quiver": r.quiver.apply_word(&w)?.to_spec() });
    if req.options.seed {
        let seed = Seed::initial(&r.quiver)?.apply_word(&w)?;
        result["seed"] = serde_json::to_value(seed.to_json()).expect("serializable");
    }
    Ok(Response::complete(result))
}

fn status_json(report: &ClassReport) -> (Value, Value) {
    match &report.status {
        ClassStatus::Finite => (json!("finite"), Value::Null),
        ClassStatus::BudgetExceeded => (json!("budget_exceeded"), Value::Null),
        ClassStatus::InfiniteWitness { word, edge } => {
            (json!("infinite_witness"), json!({ "word": word, "edge": edge_json(*edge) }))
        }
    }
}

fn analyze(req: &Request, exec: Exec) -> Result<Response, ApiError> {
    let r = need_quiver(req)?;
    let q = &r.quiver;
    let report = explore_class(q, &req.budget.class(), exec)?;
    let (status, witness) = status_json(&report);
    let finite = match report.status {
        ClassStatus::Finite => json!(true),
        ClassStatus::InfiniteWitness { .. } => json!(false),
        ClassStatus::BudgetExceeded => Value::Null,
    };
    let rigid = detect_rigid_vertices(q)?;
    let mut rigid_vertices: Vec<usize> = rigid.iter().map(|m| m.vertex + 1).collect();
    rigid_vertices.dedup();
    let vv = is_vv_sigma_symmetric(q)?;
    let certificates: Vec<Value> = vv
        .certificates
        .iter()
        .map(|c| {
            json!({
                "vertex": c.vertex + 1,
                "counter": c.counter.map(|j| j + 1),
                "permutation": c.permutation,
                "sign": c.sign.as_char().to_string(),
            })
        })
        .collect();
    let mut avenues = Vec::new();
    for i in 0..q.n() {
        avenues.push(match has_simply_laced_avenue(q, i, req.budget.max_len(), exec)? {
            Some(a) => json!({ "vertex": i + 1, "k": a.k + 1, "far": a.far.map(|f| f + 1), "word": a.word(i) }),
            None => json!({ "vertex": i + 1, "k": null }),
        });
    }
    let result = json!({
        "vertex_names": r.names,
        "weight": q.weight(),
        "class_weight": report.class_weight,
        "finite": finite,
        "status": status,
        "witness": witness,
        "members": report.members.len(),
        "simply_laced": q.is_simply_laced(),
        "zigzag": q.is_zigzag(),
        "rigid_vertices": rigid_vertices,
        "rigid": rigid.iter().map(|m| json!({
            "vertex": m.vertex + 1,
            "pattern": m.pattern,
            "support": m.support.iter().map(|v| v + 1).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "vv_symmetric": vv.symmetric,
        "vv_failing_vertex": vv.failing_vertex.map(|v| v + 1),
        "vv_certificates": certificates,
        "avenues": avenues,
    });
    Ok(Response { result, truncated: report.status == ClassStatus::BudgetExceeded })
}

fn verdict_json(v: &SymmetricAlgebra) -> Value {
    match v {
        SymmetricAlgebra::Yes => json!({ "verdict": "yes" }),
        SymmetricAlgebra::Unknown => json!({ "verdict": "unknown" }),
        SymmetricAlgebra::No(NotSymmetric::Infinite { word, edge }) => {
            json!({ "verdict": "no", "reason": "infinite", "word": word, "edge": edge_json(*edge) })
        }
        SymmetricAlgebra::No(NotSymmetric::Rigid { vertex, pattern, member, word }) => json!({
            "verdict": "no",
            "reason": "rigid",
            "vertex": vertex + 1,
            "pattern": pattern,
            "member": member,
            "word": word,
        }),
    }
}

fn symmetric(req: &Request, exec: Exec) -> Result<Response, ApiError> {
    let r = need_quiver(req)?;
    let verdict = is_symmetric_algebra(&r.quiver, &req.budget.class(), req.options.initial_only, exec)?;
    // a partial comparison is marked inside the variables block
    let truncated = verdict == SymmetricAlgebra::Unknown;
    // the variable comparison only makes sense for a finite class
    let variables = if matches!(verdict, SymmetricAlgebra::No(NotSymmetric::Infinite { .. })) {
        Value::Null
    } else {
        let mut budget = req.budget.seeds();
        if req.budget.max_terms.is_none() {
            budget.max_terms = SYMMETRIC_MAX_TERMS;
        }
        let s = symmetric_cluster_variables(&r.quiver, &budget, req.options.modulo_sign, exec)?;
        json!({
            "symmetric": s.symmetric.len(),
            "total": s.total(),
            "equal": s.equal,
            "complete": s.closure.is_complete(),
            "stopped_by": s.truncated(),
            "missing": s.missing().iter().map(|&i| s.closure.variables[i as usize].to_fraction_string()).collect::<Vec<_>>(),
        })
    };
    let mut result = verdict_json(&verdict);
    result["variables"] = variables;
    Ok(Response { result, truncated })
}

/// Catalog listing, or one entry with its quiver.
pub fn catalog_json(name: Option<&str>) -> Result<Value, ApiError> {
    let entry = |e: &catalog::CatalogEntry, with_quiver: bool| {
        let mut v = json!({
            "name": e.name,
            "description": e.description,
            "n": e.quiver.n(),
            "m": e.quiver.m(),
            "vertex_names": e.vertex_names,
            "finite_mutation": catalog::FINITE_MUTATION.contains(&e.name.as_str()),
        });
        if with_quiver {
            v["quiver"] = serde_json::to_value(e.quiver.to_spec()).expect("serializable");
        }
        v
    };
    match name {
        Some(n) => Ok(entry(&catalog::get(n.strip_prefix('@').unwrap_or(n))?, true)),
        None => Ok(Value::Array(catalog::all().iter().map(|e| entry(e, false)).collect())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(name: &str) -> Request {
        Request { quiver: Some(QuiverInput::Name(format!("@{name}"))), ..Request::default() }
    }

    #[test]
    fn mutating_the_a2_seed() {
        let req: Request =
            serde_json::from_value(json!({ "seed": { "quiver": { "n": 2, "edges": [{ "from": 1, "to": 2, "v": [1, 1] }] } }, "vertex": 1 }))
                .unwrap();
        let r = run(Op::Mutate, &req).unwrap();
        assert_eq!(r.result["seed"]["cluster"][0], "(x2 + 1)/x1");
    }

    #[test]
    fn rigid_vertex_is_reported_by_name() {
        let r = run(Op::Analyze, &named("rigid_3_2_b")).unwrap().result;
        let names = r["vertex_names"].as_array().unwrap();
        let rigid: Vec<&Value> = r["rigid_vertices"].as_array().unwrap().iter().map(|v| &names[v.as_u64().unwrap() as usize - 1]).collect();
        assert_eq!(rigid, [&json!("i")]);
    }

    #[test]
    fn bad_vertex_is_a_precondition_failure() {
        let mut req = named("a2");
        req.vertex = Some(3);
        let e = run(Op::Mutate, &req).unwrap_err();
        assert_eq!(e.status(), 422);
    }

    #[test]
    fn invalid_quiver_lists_violations() {
        let req: Request =
            serde_json::from_value(json!({ "quiver": { "n": 2, "edges": [{ "from": 1, "to": 1, "v": [1, 1] }] } })).unwrap();
        let e = run(Op::Analyze, &req).unwrap_err();
        assert_eq!(e.code, ErrorCode::InvalidQuiver);
        assert!(!e.violations.is_empty());
        let v = run(Op::Validate, &req).unwrap().result;
        assert_eq!(v["valid"], false);
    }

    #[test]
    fn small_class_budget_marks_truncation() {
        let mut req = named("e8");
        req.budget.max_members = Some(10);
        assert!(run(Op::Class, &req).unwrap().truncated);
    }
}
