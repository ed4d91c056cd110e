//! Request/response dispatch behind the `sl2kit` binary.
//!
//! A request is a JSON object with a `"command"` and the command's fields at
//! the top level, e.g. `{"command": "valuate", "p": 3, "x": "9/2"}`. The
//! response always has `status`, `result` and `diagnostics`; errors add an
//! `error` object with a class (which fixes the exit code) and a code naming
//! the module error.

use crate::arith::{FieldElement, Mat2, NumberField};
use crate::hyperbolic::{displacement_hyp, hyp_distance, ArchimedeanEmbedding, HypError};
use crate::json::{self, float, JsonError, Payload};
use crate::proper::{random_word, word_ball, MarkedGroup, ProperError, DEFAULT_BUDGET};
use crate::sl2::{self, ClassifyError, Factor, LieElement};
use crate::trace_embed::{integral_characteristic, select_basis, verify_embedding, EmbedError, Rep4};
use crate::tree::{TreeContext, TreeError};
use crate::valuation::{extend, ValuationError, ValuationValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "SL2KIT_ENUM_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Valuate,
    TreeDist,
    TreeBall,
    TreeAct,
    HypDist,
    Displacement,
    Enumerate,
    CheckProper,
    Embed,
    CheckIntegral,
    Classify,
    Normalizer,
    FactorMaximal,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::Valuate,
        Command::TreeDist,
        Command::TreeBall,
        Command::TreeAct,
        Command::HypDist,
        Command::Displacement,
        Command::Enumerate,
        Command::CheckProper,
        Command::Embed,
        Command::CheckIntegral,
        Command::Classify,
        Command::Normalizer,
        Command::FactorMaximal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Valuate => "valuate",
            Command::TreeDist => "tree-dist",
            Command::TreeBall => "tree-ball",
            Command::TreeAct => "tree-act",
            Command::HypDist => "hyp-dist",
            Command::Displacement => "displacement",
            Command::Enumerate => "enumerate",
            Command::CheckProper => "check-proper",
            Command::Embed => "embed",
            Command::CheckIntegral => "check-integral",
            Command::Classify => "classify",
            Command::Normalizer => "normalizer",
            Command::FactorMaximal => "factor-maximal",
        }
    }

    /// Payload fields, which the binary exposes as `--<field>` flags.
    pub fn fields(self) -> &'static [&'static str] {
        match self {
            Command::Valuate => &["p", "minpoly", "x"],
            Command::TreeDist => &["p", "minpoly", "g", "u", "v"],
            Command::TreeBall => &["p", "minpoly", "r", "center"],
            Command::TreeAct => &["p", "minpoly", "g", "v"],
            Command::HypDist => &["p1", "p2"],
            Command::Displacement => &["group", "g", "minpoly", "root"],
            Command::Enumerate => &["group", "C", "budget"],
            Command::CheckProper => &["group", "C", "max-len", "budget"],
            Command::Embed => &["group", "samples", "ball", "seed"],
            Command::CheckIntegral => &["minpoly", "g"],
            Command::Classify => &["minpoly", "basis"],
            Command::Normalizer => &["minpoly", "which", "g"],
            Command::FactorMaximal => &["minpoly", "g", "target"],
        }
    }

    /// Payload fields and result shape, as printed by `--help`.
    pub fn schema(self) -> &'static str {
        match self {
            Command::Valuate => r#"{"p": prime, "minpoly"?: [int], "x": element} -> {"value": int | "inf"}"#,
            Command::TreeDist => {
                r#"{"p", "minpoly"?, "g": matrix} | {"p", "minpoly"?, "u": vertex, "v": vertex} -> {"distance": int}"#
            }
            Command::TreeBall => {
                r#"{"p", "minpoly"?, "r": int, "center"?: vertex} -> {"size": int, "formula": int, "vertices": [vertex]}"#
            }
            Command::TreeAct => r#"{"p", "minpoly"?, "g": matrix, "v"?: vertex} -> {"vertex": vertex}"#,
            Command::HypDist => r#"{"p1": point, "p2": point} -> {"distance": float}"#,
            Command::Displacement => {
                r#"{"group": group, "g": matrix} -> {"tree": [{"p", "d"}], "hyp": float} | {"minpoly"?, "root"?: int, "g": matrix} -> {"hyp": float}"#
            }
            Command::Enumerate => {
                r#"{"group": group, "C": float, "budget"?: int} -> {"bound", "count", "complete", "elements": [matrix]}"#
            }
            Command::CheckProper => {
                r#"{"group": group, "C": float, "max-len": int, "budget"?: int} -> {"word_count", "enumerated_count", "contained", "certificate", "missing"}"#
            }
            Command::Embed => {
                r#"{"group": group, "samples"?: int, "ball"?: int, "seed"?: int} -> {"basis", "alpha_tables", "checks"}"#
            }
            Command::CheckIntegral => {
                r#"{"minpoly"?, "g": matrix} -> {"integral": bool, "trace": element, "trace_minpoly": [rational]}"#
            }
            Command::Classify => {
                r#"{"minpoly"?, "basis": [matrix, matrix]} -> {"conjugator", "form", "x1", "x2", "conjugated"}"#
            }
            Command::Normalizer => {
                r#"{"minpoly"?, "which": "torus" | "unipotent", "g": matrix} -> {"normalizes": bool}"#
            }
            Command::FactorMaximal => {
                r#"{"minpoly"?, "g": matrix, "target": matrix} -> {"word": [{"h": matrix} | "g" | "g^-1"]}"#
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub command: Command,
    #[serde(flatten)]
    pub payload: Map<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorClass {
    UsageError,
    DomainError,
    CheckFailed,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::UsageError => 1,
            ErrorClass::DomainError => 2,
            ErrorClass::CheckFailed => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub class: ErrorClass,
    /// Variant name of the module error, e.g. `NotAValuation`.
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub status: Status,
    pub result: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorInfo>,
}

impl Response {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.class.exit_code())
    }

    /// Single-line JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn usage(message: impl Into<String>) -> Response {
        Failure::new(ErrorClass::UsageError, "UsageError", message).into_response()
    }
}

/// Error on the way to a response, with any partial result.
#[derive(Debug)]
struct Failure {
    info: ErrorInfo,
    result: Value,
    diagnostics: Vec<String>,
}

impl Failure {
    fn new(class: ErrorClass, code: &str, message: impl Into<String>) -> Self {
        Failure {
            info: ErrorInfo { class, code: code.to_string(), message: message.into() },
            result: Value::Null,
            diagnostics: Vec::new(),
        }
    }

    fn domain(code: &str, e: impl std::fmt::Display) -> Self {
        Failure::new(ErrorClass::DomainError, code, e.to_string())
    }

    fn into_response(self) -> Response {
        Response {
            status: Status::Error,
            result: self.result,
            diagnostics: self.diagnostics,
            error: Some(self.info),
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::new(ErrorClass::UsageError, "UsageError", e.0)
    }
}

impl From<ValuationError> for Failure {
    fn from(e: ValuationError) -> Self {
        let code = match e {
            ValuationError::NotPrime(_) => "NotPrime",
            ValuationError::NotAValuation { .. } => "NotAValuation",
        };
        let mut f = Failure::domain(code, &e);
        if let ValuationError::NotAValuation { x, y, factor_mod_p, .. } = &e {
            f.result = json!({
                "factor_mod_p": factor_mod_p,
                "x": json::element_to_json(x),
                "y": json::element_to_json(y),
            });
        }
        f
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Self {
        let code = match e {
            TreeError::Singular => "Singular",
            TreeError::FieldMismatch => "FieldMismatch",
        };
        Failure::domain(code, e)
    }
}

impl From<HypError> for Failure {
    fn from(e: HypError) -> Self {
        let code = match e {
            HypError::DegenerateInput(_) => "DegenerateInput",
            HypError::DeterminantNotOne(_) => "DeterminantNotOne",
            HypError::RootIndexOutOfRange { .. } => "RootIndexOutOfRange",
            HypError::RootRefinementFailed(_) => "RootRefinementFailed",
        };
        Failure::domain(code, e)
    }
}

impl From<ProperError> for Failure {
    fn from(e: ProperError) -> Self {
        let code = match e {
            ProperError::Valuation(v) => return v.into(),
            ProperError::Hyperbolic(h) => return h.into(),
            ProperError::DetNotOne { .. } => "DetNotOne",
            ProperError::EntryOutsideRing { .. } => "EntryOutsideRing",
            ProperError::FieldMismatch => "FieldMismatch",
            ProperError::Unsupported(_) => "Unsupported",
            ProperError::BudgetExceeded { .. } => "BudgetExceeded",
        };
        Failure::domain(code, e)
    }
}

impl From<EmbedError> for Failure {
    fn from(e: EmbedError) -> Self {
        let code = match e {
            EmbedError::DetNotOne => "DetNotOne",
            EmbedError::RankDeficient { .. } => "RankDeficient",
        };
        Failure::domain(code, e)
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let code = match &e {
            ClassifyError::NotTraceless => "NotTraceless",
            ClassifyError::IndependenceFailure => "IndependenceFailure",
            ClassifyError::NotASubalgebra { .. } => "NotASubalgebra",
            ClassifyError::Commutative(_) => "Commutative",
            ClassifyError::DetNotOne => "DetNotOne",
            ClassifyError::GIsInH => "GIsInH",
        };
        let mut f = Failure::domain(code, &e);
        match &e {
            ClassifyError::NotASubalgebra { bracket } => {
                f.result = json!({ "bracket": json::matrix_to_json(bracket) });
            }
            ClassifyError::Commutative(rel) => {
                f.result = json!({ "multiple": rel.multiple, "lambda": json::element_to_json(&rel.lambda) });
            }
            _ => {}
        }
        f
    }
}

type Outcome = Result<(Value, Vec<String>), Failure>;

/// Parses a request document and dispatches it.
pub fn dispatch_str(request: &str) -> Response {
    match serde_json::from_str::<Request>(request) {
        Ok(r) => dispatch(&r),
        Err(e) => Response::usage(format!("malformed request: {e}")),
    }
}

pub fn dispatch(request: &Request) -> Response {
    let p = Payload(&request.payload);
    let outcome = match request.command {
        Command::Valuate => valuate(&p),
        Command::TreeDist => tree_dist(&p),
        Command::TreeBall => tree_ball(&p),
        Command::TreeAct => tree_act(&p),
        Command::HypDist => hyp_dist(&p),
        Command::Displacement => displacement(&p),
        Command::Enumerate => enumerate(&p),
        Command::CheckProper => check_proper(&p),
        Command::Embed => embed(&p),
        Command::CheckIntegral => check_integral(&p),
        Command::Classify => classify(&p),
        Command::Normalizer => normalizer(&p),
        Command::FactorMaximal => factor_maximal(&p),
    };
    match outcome {
        Ok((result, diagnostics)) => Response { status: Status::Ok, result, diagnostics, error: None },
        Err(f) => f.into_response(),
    }
}

fn valuation_json(v: ValuationValue) -> Value {
    match v {
        ValuationValue::Finite(n) => json!(n),
        ValuationValue::Infinity => json!("inf"),
    }
}

fn prime(p: &Payload) -> Result<u64, Failure> {
    Ok(p.u64("p")?.ok_or_else(|| JsonError("missing field \"p\"".into()))?)
}

fn valuate(p: &Payload) -> Outcome {
    let field = json::parse_minpoly(p.get("minpoly"))?;
    let x = json::parse_element(p.require("x")?, &field)?;
    let val = extend(prime(p)?, &field)?;
    Ok((json!({ "value": valuation_json(val.nu_ext(&x)) }), vec![]))
}

fn tree_context(p: &Payload) -> Result<TreeContext, Failure> {
    let field = json::parse_minpoly(p.get("minpoly"))?;
    Ok(TreeContext::new(extend(prime(p)?, &field)?))
}

fn vertex_or_base(p: &Payload, key: &str, tree: &TreeContext) -> Result<crate::tree::TreeVertex, Failure> {
    match p.get(key) {
        Some(v) => Ok(tree.canonicalize(&tree.vertex_matrix(&json::parse_vertex(v, tree.field())?))?),
        None => Ok(tree.base_vertex()),
    }
}

fn tree_dist(p: &Payload) -> Outcome {
    let tree = tree_context(p)?;
    let (u, v) = match p.get("g") {
        Some(g) => {
            let g = json::parse_matrix(g, tree.field())?;
            let base = tree.base_vertex();
            let image = tree.act(&g, &base)?;
            (base, image)
        }
        None => (vertex_or_base(p, "u", &tree)?, vertex_or_base(p, "v", &tree)?),
    };
    Ok((json!({ "distance": tree.distance(&u, &v) }), vec![]))
}

/// Larger balls are refused; a radius-8 ball at q = 5 already has ~470k vertices.
const MAX_BALL_VERTICES: u64 = 100_000;

fn tree_ball(p: &Payload) -> Outcome {
    let tree = tree_context(p)?;
    let r = p.u64("r")?.ok_or_else(|| JsonError("missing field \"r\"".into()))?;
    let r = u32::try_from(r).map_err(|_| JsonError("\"r\" is too large".into()))?;
    let formula = tree.ball_size(r);
    if formula > MAX_BALL_VERTICES {
        return Err(Failure::new(
            ErrorClass::UsageError,
            "UsageError",
            format!("ball has {formula} vertices, more than the limit of {MAX_BALL_VERTICES}"),
        ));
    }
    let center = vertex_or_base(p, "center", &tree)?;
    let ball = tree.ball(&center, r);
    let vertices: Vec<Value> = ball.iter().map(json::vertex_to_json).collect();
    Ok((json!({ "size": ball.len(), "formula": formula, "vertices": vertices }), vec![]))
}

fn tree_act(p: &Payload) -> Outcome {
    let tree = tree_context(p)?;
    let g = json::parse_matrix(p.require("g")?, tree.field())?;
    let v = vertex_or_base(p, "v", &tree)?;
    Ok((json!({ "vertex": json::vertex_to_json(&tree.act(&g, &v)?) }), vec![]))
}

fn hyp_dist(p: &Payload) -> Outcome {
    let a = json::parse_point(p.require("p1")?)?;
    let b = json::parse_point(p.require("p2")?)?;
    Ok((json!({ "distance": float(hyp_distance(&a, &b)) }), vec![]))
}

fn group(p: &Payload) -> Result<MarkedGroup, Failure> {
    let (field, gens) = json::parse_group(p.require("group")?)?;
    Ok(MarkedGroup::new(&field, gens)?)
}

fn displacement(p: &Payload) -> Outcome {
    if p.get("group").is_some() {
        let grp = group(p)?;
        let g = json::parse_matrix(p.require("g")?, grp.field())?;
        let prof = grp.displacement(&g)?;
        let tree: Vec<Value> =
            prof.tree_displacements.iter().map(|(p, d)| json!({ "p": p, "d": d })).collect();
        return Ok((json!({ "tree": tree, "hyp": float(prof.hyp_displacement) }), vec![]));
    }
    let field = json::parse_minpoly(p.get("minpoly"))?;
    let g = json::parse_matrix(p.require("g")?, &field)?;
    let root = p.u64("root")?.unwrap_or(0) as usize;
    let emb = ArchimedeanEmbedding::new(&field, root)?;
    let diagnostics = if field.is_rationals() {
        vec![]
    } else {
        let r = emb.root();
        vec![format!("embedding γ ↦ {:.12} {:+.12}i", r.re, r.im)]
    };
    Ok((json!({ "hyp": float(displacement_hyp(&g, &emb)) }), diagnostics))
}

fn bound(p: &Payload) -> Result<f64, Failure> {
    let c = p.f64("C")?.ok_or_else(|| JsonError("missing field \"C\"".into()))?;
    if !(c.is_finite() && c > 0.0) {
        return Err(JsonError(format!("\"C\" must be positive, got {c}")).into());
    }
    Ok(c)
}

/// Payload `"budget"`, else the environment variable, else the default.
fn budget(p: &Payload) -> Result<u64, Failure> {
    if let Some(b) = p.u64("budget")? {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| JsonError(format!("{BUDGET_ENV} must be a nonnegative integer, got {s:?}")).into()),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn ring_diagnostics(grp: &MarkedGroup) -> Vec<String> {
    let ring = grp.ring();
    if ring.s == 1 {
        vec!["ring Z, no primes inverted".to_string()]
    } else {
        vec![format!("ring Z[1/{}], primes {:?}", ring.s, ring.primes)]
    }
}

fn enumerate(p: &Payload) -> Outcome {
    let grp = group(p)?;
    let res = grp.enumerate_bounded(bound(p)?, budget(p)?)?;
    let elements: Vec<Value> = res.elements.iter().map(json::matrix_to_json).collect();
    let result = json!({
        "bound": float(res.bound),
        "count": res.elements.len(),
        "complete": res.complete,
        "elements": elements,
    });
    Ok((result, ring_diagnostics(&grp)))
}

fn check_proper(p: &Payload) -> Outcome {
    let grp = group(p)?;
    let max_len = p.u64("max-len")?.ok_or_else(|| JsonError("missing field \"max-len\"".into()))?;
    let report = grp.properness_check(bound(p)?, max_len as usize, budget(p)?)?;
    let missing: Vec<Value> = report.missing.iter().map(json::matrix_to_json).collect();
    let result = json!({
        "bound": float(report.bound),
        "max_len": report.max_len,
        "word_count": report.word_count,
        "enumerated_count": report.enumerated_count,
        "contained": report.contained,
        "certificate": report.certificate(),
        "missing": missing,
    });
    if !report.contained {
        let mut f = Failure::new(
            ErrorClass::CheckFailed,
            "ContainmentViolated",
            format!("{} short words are missing from the enumeration", report.missing.len()),
        );
        f.result = result;
        f.diagnostics = ring_diagnostics(&grp);
        return Err(f);
    }
    Ok((result, ring_diagnostics(&grp)))
}

fn embed(p: &Payload) -> Outcome {
    let (field, gens) = json::parse_group(p.require("group")?)?;
    let samples = p.u64("samples")?.unwrap_or(100) as usize;
    let radius = p.u64("ball")?.unwrap_or(3) as usize;
    let seed = p.u64("seed")?.unwrap_or(0);
    for g in &gens {
        if !g.det().is_one() {
            return Err(EmbedError::DetNotOne.into());
        }
    }
    let basis = select_basis(word_ball(&field, &gens, radius))?;
    let rep = Rep4::new(basis);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Mat2> = (0..samples)
        .map(|_| {
            let len = rng.random_range(1..=2 * radius.max(1));
            random_word(&field, &gens, len, &mut rng)
        })
        .collect();
    let report = verify_embedding(&rep, &words);
    let mut tables = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let a = rep.alpha(g);
        let rows: Vec<Value> =
            a.rows().iter().map(|r| Value::Array(r.iter().map(json::element_to_json).collect())).collect();
        tables.push(json!({ "generator": i, "alpha": rows }));
    }
    let basis_json: Vec<Value> = rep.basis().elements().iter().map(json::matrix_to_json).collect();
    let checks = json!({
        "samples": report.samples,
        "pairs_checked": report.pairs_checked,
        "homomorphism_failures": report.homomorphism_failures,
        "inverse_failures": report.inverse_failures,
        "charpoly_failures": report.charpoly_failures,
        "determinant_failures": report.determinant_failures,
        "kernel_witnesses": report.kernel_witnesses,
        "non_integral": report.non_integral,
        "passed": report.passed(),
    });
    let result = json!({ "basis": basis_json, "alpha_tables": tables, "checks": checks });
    let mut diagnostics = vec![format!("seed {seed}")];
    if !report.non_integral.is_empty() {
        diagnostics.push(format!(
            "{} samples have α entries that are not algebraic integers",
            report.non_integral.len()
        ));
    }
    if !report.passed() {
        let mut f = Failure::new(ErrorClass::CheckFailed, "EmbeddingCheckFailed", "trace embedding checks failed");
        f.result = result;
        f.diagnostics = diagnostics;
        return Err(f);
    }
    Ok((result, diagnostics))
}

fn field_and_matrix(p: &Payload, key: &str) -> Result<(NumberField, Mat2), Failure> {
    let field = json::parse_minpoly(p.get("minpoly"))?;
    let m = json::parse_matrix(p.require(key)?, &field)?;
    Ok((field, m))
}

fn check_integral(p: &Payload) -> Outcome {
    let (_, g) = field_and_matrix(p, "g")?;
    let integral = integral_characteristic(&g)?;
    let tr: FieldElement = g.trace();
    let mp: Vec<Value> =
        tr.minimal_polynomial().coeffs().iter().map(|c| json!(json::rational_to_string(c))).collect();
    Ok((json!({ "integral": integral, "trace": json::element_to_json(&tr), "trace_minpoly": mp }), vec![]))
}

fn classify(p: &Payload) -> Outcome {
    let field = json::parse_minpoly(p.get("minpoly"))?;
    let basis = p.require("basis")?.as_array().filter(|b| b.len() == 2);
    let Some(basis) = basis else {
        return Err(JsonError("\"basis\" must be a pair of matrices".into()).into());
    };
    let x = LieElement::new(json::parse_matrix(&basis[0], &field)?)?;
    let y = LieElement::new(json::parse_matrix(&basis[1], &field)?)?;
    let out = sl2::classify_2dim(x, y)?;
    let conjugated: Vec<Value> = out.conjugated.iter().map(|z| json::matrix_to_json(z.matrix())).collect();
    let result = json!({
        "conjugator": json::matrix_to_json(&out.conjugator),
        "form": "upper-triangular",
        "x1": json::matrix_to_json(out.normalized.0.matrix()),
        "x2": json::matrix_to_json(out.normalized.1.matrix()),
        "conjugated": conjugated,
    });
    Ok((result, vec![]))
}

fn normalizer(p: &Payload) -> Outcome {
    let (_, g) = field_and_matrix(p, "g")?;
    let normalizes = match p.str("which")? {
        Some("torus") => sl2::normalizes_torus(&g),
        Some("unipotent") => sl2::normalizes_unipotent(&g),
        other => {
            let got = other.unwrap_or("nothing");
            return Err(JsonError(format!("\"which\" must be \"torus\" or \"unipotent\", got {got:?}")).into());
        }
    };
    Ok((json!({ "normalizes": normalizes }), vec![]))
}

fn factor_maximal(p: &Payload) -> Outcome {
    let (field, g) = field_and_matrix(p, "g")?;
    let target = json::parse_matrix(p.require("target")?, &field)?;
    let word = sl2::maximality_factor(&g, &target)?;
    let word: Vec<Value> = word
        .iter()
        .map(|f| match f {
            Factor::H(h) => json!({ "h": json::matrix_to_json(h) }),
            Factor::G => json!("g"),
            Factor::GInverse => json!("g^-1"),
        })
        .collect();
    Ok((json!({ "word": word }), vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_examples() {
        let r = dispatch_str(r#"{"command": "valuate", "p": 3, "x": "9/2"}"#);
        assert_eq!(r.result, json!({"value": 2}));

        let r = dispatch_str(r#"{"command": "tree-dist", "p": 3, "g": [["3", 0], [0, "1/3"]]}"#);
        assert_eq!(r.result, json!({"distance": 2}));

        let r = dispatch_str(r#"{"command": "valuate", "p": 2, "minpoly": [-2, 0, 1], "x": "γ"}"#);
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.error.unwrap().code, "NotAValuation");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(dispatch_str("{").exit_code(), 1);
        assert_eq!(dispatch_str(r#"{"command": "frobnicate"}"#).exit_code(), 1);
        assert_eq!(dispatch_str(r#"{"command": "valuate", "p": 3}"#).exit_code(), 1);
        assert_eq!(dispatch_str(r#"{"command": "valuate", "p": 4, "x": 1}"#).exit_code(), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(ErrorClass::UsageError.exit_code(), 1);
        assert_eq!(ErrorClass::DomainError.exit_code(), 2);
        assert_eq!(ErrorClass::CheckFailed.exit_code(), 3);
        let f = Failure::new(ErrorClass::CheckFailed, "ContainmentViolated", "x").into_response();
        assert_eq!((f.status, f.exit_code()), (Status::Error, 3));
    }

    #[test]
    fn responses_round_trip() {
        let r = dispatch_str(r#"{"command": "hyp-dist", "p1": {"z": [0, 0], "t": 1}, "p2": {"z": [0, 0], "t": 4}}"#);
        let back: Response = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(back, r);
    }
}
