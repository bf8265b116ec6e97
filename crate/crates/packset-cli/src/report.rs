//! Command dispatch, instance ingestion, and deterministic report
//! emission.
//!
//! Exit codes: 0 success, 2 parse error, 3 not a downset, 4 budget
//! exceeded, 5 verification failure (1 for anything else).

use std::io::Read;
use std::path::PathBuf;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use packset::{
    closure_inf, closure_k, closure_k_downset, normalize_downset, verify_closure, Block,
    ClosureResult, ClosureSource, DownsetModel, Error, HPolyhedron, Halfspace, KnapsackIneq,
    Limits, PackingSet, QVector, Rational, SetInclusion,
};

use crate::{Command, OutputOpts, PacksetOp};

pub struct CliError {
    /// A JSON document to emit on stdout before exiting, when the failure
    /// itself is reportable (for example a downset witness).
    pub document: Option<String>,
    pub message: String,
    pub code: u8,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            document: None,
            message: message.into(),
            code: 2,
        }
    }
}

pub enum Output {
    Stdout(String),
    File(PathBuf, String),
}

/// The single JSON document a run emits.
#[derive(Serialize)]
struct RunReport {
    command: String,
    input_digest: String,
    result: Value,
    warnings: Vec<String>,
}

fn limits_from_env() -> Result<Limits, CliError> {
    match std::env::var("PACKSET_BUDGET") {
        Ok(v) => v
            .parse::<u64>()
            .map(Limits::with_budget)
            .map_err(|_| CliError::parse(format!("PACKSET_BUDGET must be an integer, got {v:?}"))),
        Err(_) => Ok(Limits::default()),
    }
}

pub fn run(command: Command) -> Result<Output, CliError> {
    let limits = limits_from_env()?;
    match command {
        Command::Hull { instance, output } => {
            let (model, bytes, warnings) = load_model(&instance, &limits)?;
            if model.pieces().len() != 1 {
                return Err(CliError::parse(format!(
                    "hull needs a single-piece instance, got {} pieces",
                    model.pieces().len()
                )));
            }
            let hull = model.pieces()[0]
                .integer_hull(&limits)
                .map_err(core_error)?;
            finish(
                "hull".to_string(),
                &[bytes],
                json!({ "hull": hull }),
                warnings,
                output,
            )
        }
        Command::Closure {
            instance,
            k,
            r#box,
            verify,
            seed,
            output,
        } => {
            let (model, bytes, mut warnings) = load_model(&instance, &limits)?;
            let boxed = r#box.as_deref();
            let result = if model.pieces().len() == 1 {
                let piece = &model.pieces()[0];
                let out = closure_k(piece, k as usize, boxed, &limits).map_err(core_error)?;
                if boxed.is_some() && out.exact {
                    warnings.push(
                        "instance is certified exact; --box was ignored".to_string(),
                    );
                }
                out
            } else {
                closure_k_downset(&model, k as usize, boxed, &limits).map_err(core_error)?
            };
            let mut doc = json!({ "closure": result });
            let mut command_echo = format!("closure --k {k}");
            if let Some(b) = &r#box {
                command_echo.push_str(&format!(
                    " --box {}",
                    b.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                ));
            }
            let mut verification_failed = false;
            if let Some(samples) = verify {
                command_echo.push_str(&format!(" --verify {samples} --seed {seed}"));
                let source = closure_source(&model);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let report =
                    verify_closure(&result, source, samples, &mut rng, &limits).map_err(core_error)?;
                verification_failed = !report.passed;
                doc["verification"] = serde_json::to_value(&report).expect("report serializes");
            }
            let out = finish(command_echo, &[bytes], doc, warnings, output)?;
            if verification_failed {
                let rendered = match out {
                    Output::Stdout(d) => d,
                    Output::File(path, d) => {
                        std::fs::write(&path, format!("{d}\n")).ok();
                        format!("written to {}", path.display())
                    }
                };
                return Err(CliError {
                    document: Some(rendered),
                    message: "verification failed".to_string(),
                    code: 5,
                });
            }
            Ok(out)
        }
        Command::ClosureInf { instance, output } => {
            let (model, bytes, warnings) = load_model(&instance, &limits)?;
            let result = closure_inf(&model, &limits).map_err(core_error)?;
            finish(
                "closure-inf".to_string(),
                &[bytes],
                json!({ "closure": result }),
                warnings,
                output,
            )
        }
        Command::Packset { op } => run_packset(op, &limits),
        Command::Blocks { set, output } => {
            let (s, bytes) = load_packing_set(&set)?;
            finish(
                "blocks".to_string(),
                &[bytes],
                blocks_document(&s),
                vec![],
                output,
            )
        }
        Command::WqoBasis { stream, output } => {
            let (sets, bytes) = load_stream(&stream)?;
            let mut state = packset::BasisState::new(SetInclusion);
            let mut absorbed = Vec::with_capacity(sets.len());
            for s in &sets {
                absorbed.push(state.insert(s.clone()));
            }
            let doc = json!({
                "seen": state.seen_count(),
                "last_change_index": state.last_change_index(),
                "basis": state.basis(),
                "absorbed": absorbed,
            });
            finish("wqo-basis".to_string(), &[bytes], doc, vec![], output)
        }
        Command::Verify {
            result,
            instance,
            samples,
            seed,
            output,
        } => {
            let result_bytes = read_input(&result)?;
            let closure: ClosureResult = parse_json(&result_bytes, &result)?;
            let (model, instance_bytes, warnings) = load_model(&instance, &limits)?;
            let source = closure_source(&model);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let report = verify_closure(&closure, source, samples, &mut rng, &limits)
                .map_err(core_error)?;
            let passed = report.passed;
            let out = finish(
                format!("verify --samples {samples} --seed {seed}"),
                &[result_bytes, instance_bytes],
                json!({ "verification": report }),
                warnings,
                output,
            )?;
            if !passed {
                let rendered = match out {
                    Output::Stdout(d) => d,
                    Output::File(path, d) => {
                        std::fs::write(&path, format!("{d}\n")).ok();
                        format!("written to {}", path.display())
                    }
                };
                return Err(CliError {
                    document: Some(rendered),
                    message: "verification failed".to_string(),
                    code: 5,
                });
            }
            Ok(out)
        }
    }
}

fn run_packset(op: PacksetOp, limits: &Limits) -> Result<Output, CliError> {
    match op {
        PacksetOp::Subset { left, right, output } => {
            let (a, ab) = load_packing_set(&left)?;
            let (b, bb) = load_packing_set(&right)?;
            check_dims(&a, &b)?;
            finish(
                "packset subset".to_string(),
                &[ab, bb],
                json!({ "subset": a.is_subset_of(&b) }),
                vec![],
                output,
            )
        }
        PacksetOp::Union { left, right, output } => {
            let (a, ab) = load_packing_set(&left)?;
            let (b, bb) = load_packing_set(&right)?;
            check_dims(&a, &b)?;
            let u = a.union(&b).map_err(core_error)?;
            finish(
                "packset union".to_string(),
                &[ab, bb],
                json!({ "set": u }),
                vec![],
                output,
            )
        }
        PacksetOp::Intersect { left, right, output } => {
            let (a, ab) = load_packing_set(&left)?;
            let (b, bb) = load_packing_set(&right)?;
            check_dims(&a, &b)?;
            let i = a.intersect(&b).map_err(core_error)?;
            finish(
                "packset intersect".to_string(),
                &[ab, bb],
                json!({ "set": i }),
                vec![],
                output,
            )
        }
        PacksetOp::Slice { set, level, output } => {
            let (s, bytes) = load_packing_set(&set)?;
            let sliced = s.slice(level).map_err(core_error)?;
            finish(
                format!("packset slice {level}"),
                &[bytes],
                json!({ "set": sliced }),
                vec![],
                output,
            )
        }
        PacksetOp::Blocks { set, output } => {
            let (s, bytes) = load_packing_set(&set)?;
            finish(
                "packset blocks".to_string(),
                &[bytes],
                blocks_document(&s),
                vec![],
                output,
            )
        }
        PacksetOp::FromKnapsack { ineq, output } => {
            let bytes = read_input(&ineq)?;
            let knap: KnapsackIneq = parse_json(&bytes, &ineq)?;
            let s = PackingSet::from_knapsack(&knap, limits).map_err(core_error)?;
            finish(
                "packset from-knapsack".to_string(),
                &[bytes],
                json!({ "set": s }),
                vec![],
                output,
            )
        }
    }
}

fn blocks_document(s: &PackingSet) -> Value {
    let blocks: Vec<Block> = s.blocks();
    let rendered: Vec<String> = blocks.iter().map(Block::to_string).collect();
    json!({ "blocks": blocks, "rendered": rendered })
}

fn check_dims(a: &PackingSet, b: &PackingSet) -> Result<(), CliError> {
    if a.dim() != b.dim() {
        return Err(CliError::parse(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

fn closure_source(model: &DownsetModel) -> ClosureSource<'_> {
    if model.pieces().len() == 1 {
        ClosureSource::Polyhedron(&model.pieces()[0])
    } else {
        ClosureSource::Downset(model)
    }
}

/// Raw instance pieces may carry mixed-sign rows; each piece is normalized
/// into packing form, and a failed normalization reports the witness.
#[derive(Deserialize)]
struct RawPiece {
    #[serde(rename = "A")]
    a: Vec<QVector>,
    b: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawModel {
    dim: usize,
    pieces: Vec<RawPiece>,
}

fn load_model(input: &str, limits: &Limits) -> Result<(DownsetModel, Vec<u8>, Vec<String>), CliError> {
    let bytes = read_input(input)?;
    let raw: RawModel = parse_json(&bytes, input)?;
    if raw.pieces.is_empty() {
        return Err(CliError::parse("instance has no pieces"));
    }
    let mut warnings = Vec::new();
    let mut pieces = Vec::with_capacity(raw.pieces.len());
    for (idx, piece) in raw.pieces.iter().enumerate() {
        if piece.a.len() != piece.b.len() {
            return Err(CliError::parse(format!(
                "piece {idx}: {} rows but {} bounds",
                piece.a.len(),
                piece.b.len()
            )));
        }
        let halfspaces: Vec<Halfspace> = piece
            .a
            .iter()
            .zip(&piece.b)
            .map(|(r, b)| Halfspace::new(r.clone(), b.clone()))
            .collect();
        let h = HPolyhedron::new(raw.dim, halfspaces, true).map_err(core_error)?;
        let normalized = normalize_downset(&h, limits).map_err(core_error)?;
        if normalized.rows().len() != piece.a.len() {
            warnings.push(format!(
                "piece {idx}: normalized to {} packing rows",
                normalized.rows().len()
            ));
        }
        pieces.push(normalized);
    }
    let model = DownsetModel::new(raw.dim, pieces).map_err(core_error)?;
    Ok((model, bytes, warnings))
}

fn load_packing_set(input: &str) -> Result<(PackingSet, Vec<u8>), CliError> {
    let bytes = read_input(input)?;
    let set: PackingSet = parse_json(&bytes, input)?;
    Ok((set, bytes))
}

fn load_stream(input: &str) -> Result<(Vec<PackingSet>, Vec<u8>), CliError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Stream {
        Bare(Vec<PackingSet>),
        Wrapped { sets: Vec<PackingSet> },
    }
    let bytes = read_input(input)?;
    let stream: Stream = parse_json(&bytes, input)?;
    let sets = match stream {
        Stream::Bare(sets) => sets,
        Stream::Wrapped { sets } => sets,
    };
    if let Some(first) = sets.first() {
        if let Some(bad) = sets.iter().find(|s| s.dim() != first.dim()) {
            return Err(CliError::parse(format!(
                "stream mixes dimensions {} and {}",
                first.dim(),
                bad.dim()
            )));
        }
    }
    Ok((sets, bytes))
}

/// Inline JSON (starts with '{' or '['), "-" for stdin, or a file path.
fn read_input(input: &str) -> Result<Vec<u8>, CliError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.as_bytes().to_vec());
    }
    if input == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::parse(format!("cannot read stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(input).map_err(|e| CliError::parse(format!("cannot read {input}: {e}")))
}

fn parse_json<'a, T: Deserialize<'a>>(bytes: &'a [u8], origin: &str) -> Result<T, CliError> {
    serde_json::from_slice(bytes).map_err(|e| {
        CliError::parse(format!(
            "{origin}: parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn core_error(e: Error) -> CliError {
    let code = match &e {
        Error::BudgetExceeded { .. } | Error::DimensionCapExceeded { .. } => 4,
        Error::NotADownset { .. } => 3,
        Error::BadRational(_) | Error::ZeroDenominator => 2,
        _ => 1,
    };
    let document = match &e {
        Error::NotADownset { witness } => Some(
            serde_json::to_string_pretty(&json!({
                "error": "not-a-downset",
                "witness": {
                    "inside": witness.inside,
                    "below": witness.below,
                }
            }))
            .expect("witness serializes"),
        ),
        _ => None,
    };
    CliError {
        document,
        message: e.to_string(),
        code,
    }
}

fn finish(
    command: String,
    inputs: &[Vec<u8>],
    result: Value,
    warnings: Vec<String>,
    output: OutputOpts,
) -> Result<Output, CliError> {
    let mut hasher = Sha256::new();
    for bytes in inputs {
        hasher.update(bytes);
    }
    let hex: String = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let report = RunReport {
        command,
        input_digest: format!("sha256:{hex}"),
        result,
        warnings,
    };
    let doc = serde_json::to_string_pretty(&report).expect("report serializes");
    Ok(match output.out {
        Some(path) => Output::File(path, doc),
        None => Output::Stdout(doc),
    })
}
