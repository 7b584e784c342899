//! Batch front end for the `qlogic` library.
//!
//! [`run`] parses arguments, executes one command and returns the rendered
//! report together with the exit code, so the binary is a thin wrapper.

pub mod report;
mod text;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qlogic::catalog::CatalogSpec;
use qlogic::cloning::{check_witness_lemmas, find_cloning_bimorphism, SearchConfig, SearchStatus};
use qlogic::hidden::{
    check_decomposition, find_chain_decomposition, hidden_variable_construct, verify_hidden_variable,
    ChainDecomposition, CHAIN_IDEAL_READING,
};
use qlogic::states::{enumerate_vertex_states, is_separating, StateError};
use qlogic::structure::Verdict;
use qlogic::{AlgebraError, AlgebraFile, ElementId, FiniteEffectAlgebra};
use sha2::{Digest, Sha256};

use report::*;

pub const DEFAULT_SEED: u64 = 20240901;
pub const DEFAULT_MIXTURES: usize = 100;

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILS: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qlogic", version, about = "Finite effect algebras, orthoalgebras and cloning maps")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the effect-algebra axioms on an algebra file.
    Validate { file: PathBuf },
    /// Report order, sharpness, atoms, isotropic indices and compatibility.
    Analyze { file: PathBuf },
    /// Search for a cloning bimorphism.
    CloneSearch {
        file: PathBuf,
        /// Enumerate every witness instead of stopping at the first.
        #[arg(long)]
        all: bool,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = qlogic::cloning::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Enumerate the vertex states and decide separation.
    States { file: PathBuf },
    /// Build and verify the hidden-variable model.
    Hidden {
        file: PathBuf,
        /// Comma-separated labels p_1,…,p_N; commas inside braces or
        /// parentheses belong to the label.
        #[arg(long)]
        parts: Option<String>,
        /// Number of random convex combinations of vertex states to lift.
        #[arg(long, default_value_t = DEFAULT_MIXTURES)]
        mixtures: usize,
    },
    /// Emit a catalog algebra, e.g. `boolean_powerset 3` or
    /// `"product(chain(2),chain(2))"`.
    Catalog {
        name: String,
        params: Vec<usize>,
        /// Write the algebra here instead of standard output.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Splits a `--parts` list at commas outside `{}` and `()`.
pub fn split_parts(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in list.chars() {
        match ch {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(current.trim().to_string());
            current.clear();
        } else {
            current.push(ch);
        }
    }
    out.push(current.trim().to_string());
    out
}

struct Outcome {
    exit_code: i32,
    result: CommandResult,
    input_digest: Option<String>,
    seed: Option<u64>,
    /// Raw payload printed instead of the report.
    payload: Option<String>,
}

fn error_outcome(code: i32, category: &str, message: impl Into<String>, digest: Option<String>) -> Outcome {
    Outcome {
        exit_code: code,
        result: CommandResult::Error(ErrorResult { category: category.into(), message: message.into() }),
        input_digest: digest,
        seed: None,
        payload: None,
    }
}

fn variant_name(e: &AlgebraError) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

enum Loaded {
    Ok(FiniteEffectAlgebra, String),
    /// Malformed input or an axiom violation, already packaged.
    Failed(Outcome),
}

fn load(path: &Path) -> Loaded {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) => return Loaded::Failed(error_outcome(exit::INVALID_INPUT, "io", format!("{}: {e}", path.display()), None)),
    };
    let digest = hex::encode(Sha256::digest(&bytes));
    let file: AlgebraFile = match serde_json::from_slice(&bytes) {
        Ok(f) => f,
        Err(e) => return Loaded::Failed(error_outcome(exit::INVALID_INPUT, "parse", e.to_string(), Some(digest))),
    };
    match FiniteEffectAlgebra::from_file(&file) {
        Ok(alg) => Loaded::Ok(alg, digest),
        Err(e) if e.is_malformed() => {
            Loaded::Failed(error_outcome(exit::INVALID_INPUT, "malformed", e.to_string(), Some(digest)))
        }
        Err(e) => Loaded::Failed(error_outcome(exit::FAILS, "invalid-algebra", e.to_string(), Some(digest))),
    }
}

macro_rules! load_or_return {
    ($path:expr) => {
        match load($path) {
            Loaded::Ok(alg, digest) => (alg, digest),
            Loaded::Failed(outcome) => return outcome,
        }
    };
}

fn labels(alg: &FiniteEffectAlgebra, ids: &[ElementId]) -> Vec<String> {
    ids.iter().map(|&p| alg.label(p).to_string()).collect()
}

fn label_pairs(alg: &FiniteEffectAlgebra, pairs: &[(ElementId, ElementId)]) -> Vec<(String, String)> {
    pairs.iter().map(|&(p, q)| (alg.label(p).to_string(), alg.label(q).to_string())).collect()
}

fn cmd_validate(path: &Path) -> Outcome {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) => return error_outcome(exit::INVALID_INPUT, "io", format!("{}: {e}", path.display()), None),
    };
    let digest = hex::encode(Sha256::digest(&bytes));
    let file: AlgebraFile = match serde_json::from_slice(&bytes) {
        Ok(f) => f,
        Err(e) => return error_outcome(exit::INVALID_INPUT, "parse", e.to_string(), Some(digest)),
    };
    let (code, result) = match FiniteEffectAlgebra::from_file(&file) {
        Ok(alg) => (exit::OK, ValidateResult { valid: true, size: Some(alg.size()), violation: None }),
        Err(e) => {
            let code = if e.is_malformed() { exit::INVALID_INPUT } else { exit::FAILS };
            let violation = AxiomViolation { kind: variant_name(&e), message: e.to_string() };
            (code, ValidateResult { valid: false, size: None, violation: Some(violation) })
        }
    };
    Outcome { exit_code: code, result: CommandResult::Validate(result), input_digest: Some(digest), seed: None, payload: None }
}

fn cmd_analyze(path: &Path) -> Outcome {
    let (alg, digest) = load_or_return!(path);
    let report = alg.structure_report();
    let is_coherent = alg.check_coherence().map(|v| v.holds()).unwrap_or(false);
    let result = AnalyzeResult {
        size: alg.size(),
        is_effect_algebra: report.is_effect_algebra,
        is_orthoalgebra: report.is_orthoalgebra,
        is_orthomodular_poset: report.is_orthomodular_poset,
        is_coherent,
        is_boolean: report.is_boolean,
        is_boolean_lattice: alg.is_boolean_lattice(),
        is_atomic: report.is_atomic,
        is_archimedean: report.is_archimedean,
        sharp_elements: labels(&alg, &report.sharp_elements),
        atoms: labels(&alg, &report.atoms),
        iota: report.iota.iter().map(|(&p, &i)| (alg.label(p).to_string(), i)).collect(),
        incompatible_pairs: label_pairs(&alg, &report.incompatible_pairs),
    };
    Outcome {
        exit_code: exit::OK,
        result: CommandResult::Analyze(result),
        input_digest: Some(digest),
        seed: None,
        payload: None,
    }
}

fn cmd_clone_search(path: &Path, all: bool, budget: u64) -> Outcome {
    let (alg, digest) = load_or_return!(path);
    let config = SearchConfig { enumerate_all: all, node_budget: budget };
    let outcome = find_cloning_bimorphism(&alg, config);
    let lemmas = (outcome.status == SearchStatus::WitnessFound && alg.is_orthoalgebra()).then(|| {
        let mut summary = LemmaSummary {
            witnesses_checked: 0,
            zero_iff_orthogonal_violations: Vec::new(),
            idempotence_violations: Vec::new(),
        };
        for w in &outcome.witnesses {
            let report = check_witness_lemmas(&alg, w).expect("verified witness on an orthoalgebra");
            summary.witnesses_checked += 1;
            summary.zero_iff_orthogonal_violations.extend(label_pairs(&alg, &report.zero_iff_orthogonal_violations));
            summary.idempotence_violations.extend(labels(&alg, &report.idempotence_violations));
        }
        summary
    });
    let (separating_states, interpretation_note) = match enumerate_vertex_states(&alg) {
        Ok(poly) if is_separating(&alg, &poly).holds() => (Some(true), None),
        Ok(_) => (
            Some(false),
            Some("state space is not separating: the bimorphism is decided, but reading it as a cloning map assumes enough states".to_string()),
        ),
        Err(StateError::EmptyStateSpace) => (
            Some(false),
            Some("algebra has no states: the bimorphism is decided, but reading it as a cloning map assumes enough states".to_string()),
        ),
        Err(e) => (None, Some(format!("separation not checked: {e}"))),
    };
    let code = match outcome.status {
        SearchStatus::WitnessFound => exit::OK,
        SearchStatus::NoWitness => exit::FAILS,
        SearchStatus::Aborted => exit::RESOURCE,
    };
    let result = CloneSearchResult {
        status: outcome.status,
        enumerate_all: all,
        node_budget: budget,
        nodes_explored: outcome.nodes_explored,
        wall_time_ms: outcome.wall_time.as_millis() as u64,
        witness_count: outcome.witnesses.len(),
        witnesses: outcome.witnesses.iter().map(|w| w.to_file(&alg)).collect(),
        symmetric: outcome.witnesses.iter().map(|w| w.is_symmetric()).collect(),
        lemmas,
        separating_states,
        interpretation_note,
    };
    Outcome {
        exit_code: code,
        result: CommandResult::CloneSearch(result),
        input_digest: Some(digest),
        seed: None,
        payload: None,
    }
}

fn cmd_states(path: &Path) -> Outcome {
    let (alg, digest) = load_or_return!(path);
    let result = match enumerate_vertex_states(&alg) {
        Ok(poly) => {
            let merged = match is_separating(&alg, &poly) {
                Verdict::Holds => Vec::new(),
                Verdict::Fails(pairs) => label_pairs(&alg, &pairs),
            };
            StatesResult {
                empty: false,
                dimension: Some(poly.dimension),
                vertex_count: poly.vertices.len(),
                vertices: poly.vertices.iter().map(|v| v.to_labelled(&alg)).collect(),
                separating: merged.is_empty(),
                merged_pairs: merged,
            }
        }
        Err(StateError::EmptyStateSpace) => StatesResult {
            empty: true,
            dimension: None,
            vertex_count: 0,
            vertices: Vec::new(),
            separating: false,
            merged_pairs: Vec::new(),
        },
        Err(e) => return error_outcome(exit::RESOURCE, "resource", e.to_string(), Some(digest)),
    };
    Outcome { exit_code: exit::OK, result: CommandResult::States(result), input_digest: Some(digest), seed: None, payload: None }
}

fn cmd_hidden(path: &Path, parts: Option<&str>, mixtures: usize, seed: u64) -> Outcome {
    let (alg, digest) = load_or_return!(path);
    let finish = |code: i32, result: HiddenResult| Outcome {
        exit_code: code,
        result: CommandResult::Hidden(result),
        input_digest: Some(digest.clone()),
        seed: Some(seed),
        payload: None,
    };
    let unmet = |decomposition: Vec<String>, reason: String| HiddenResult {
        status: HiddenStatus::HypothesisUnmet,
        interpretation: CHAIN_IDEAL_READING.to_string(),
        reason: Some(reason),
        decomposition,
        model: None,
        verification: None,
    };

    let decomposition = match parts {
        Some(list) => {
            let names = split_parts(list);
            let mut ids = Vec::with_capacity(names.len());
            for name in &names {
                match alg.id_of(name) {
                    Some(p) => ids.push(p),
                    None => {
                        return error_outcome(
                            exit::INVALID_INPUT,
                            "malformed",
                            format!("unknown element label `{name}` in --parts"),
                            Some(digest),
                        )
                    }
                }
            }
            if let Err(e) = check_decomposition(&alg, &ids) {
                return finish(exit::FAILS, unmet(names, e.to_string()));
            }
            ChainDecomposition { parts: ids }
        }
        None => match find_chain_decomposition(&alg).into_iter().next() {
            Some(d) => d,
            None => return finish(exit::FAILS, unmet(Vec::new(), "no chain decomposition of the unit exists".into())),
        },
    };
    let decomposition_labels = decomposition.labels(&alg);

    let search = find_cloning_bimorphism(&alg, SearchConfig::default());
    let witness = match search.status {
        SearchStatus::WitnessFound => &search.witnesses[0],
        SearchStatus::NoWitness => {
            return finish(exit::FAILS, unmet(decomposition_labels, "the algebra has no cloning bimorphism".into()))
        }
        SearchStatus::Aborted => {
            return error_outcome(exit::RESOURCE, "resource", "cloning search exceeded its node budget", Some(digest))
        }
    };

    let model = match hidden_variable_construct(&alg, witness, &decomposition) {
        Ok(m) => m,
        Err(e) => {
            return finish(
                exit::FAILS,
                HiddenResult {
                    status: HiddenStatus::ConstructionFailed,
                    interpretation: CHAIN_IDEAL_READING.to_string(),
                    reason: Some(e.to_string()),
                    decomposition: decomposition_labels,
                    model: None,
                    verification: None,
                },
            )
        }
    };
    let states = match enumerate_vertex_states(&alg) {
        Ok(s) => s,
        Err(StateError::EmptyStateSpace) => {
            return finish(exit::FAILS, unmet(decomposition_labels, "the algebra has no states to lift".into()))
        }
        Err(e) => return error_outcome(exit::RESOURCE, "resource", e.to_string(), Some(digest)),
    };
    let verification = verify_hidden_variable(&alg, &model, &states, mixtures, seed);
    let passes = verification.passes();
    finish(
        if passes { exit::OK } else { exit::FAILS },
        HiddenResult {
            status: if passes { HiddenStatus::Verified } else { HiddenStatus::VerificationFailed },
            interpretation: CHAIN_IDEAL_READING.to_string(),
            reason: None,
            decomposition: decomposition_labels,
            model: Some(model.to_file(&alg)),
            verification: Some(verification),
        },
    )
}

fn cmd_catalog(name: &str, params: &[usize], output: Option<&Path>) -> Outcome {
    let expr = if params.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", params.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    };
    let spec: CatalogSpec = match expr.parse() {
        Ok(s) => s,
        Err(e) => return error_outcome(exit::INVALID_INPUT, "parse", format!("{e}"), None),
    };
    let alg = match spec.build() {
        Ok(a) => a,
        Err(e) => return error_outcome(exit::INVALID_INPUT, "bound", e.to_string(), None),
    };
    let json = alg.to_json();
    let destination = match output {
        Some(path) => {
            if let Err(e) = fs::write(path, format!("{json}\n")) {
                return error_outcome(exit::INVALID_INPUT, "io", format!("{}: {e}", path.display()), None);
            }
            path.display().to_string()
        }
        None => "-".to_string(),
    };
    Outcome {
        exit_code: exit::OK,
        result: CommandResult::Catalog(CatalogResult { spec: spec.to_string(), size: alg.size(), output: destination }),
        input_digest: None,
        seed: None,
        payload: output.is_none().then_some(json),
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Execution
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("qlogic".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), rendered) } else { (rendered, String::new()) };
            return Execution { exit_code: code, stdout, stderr };
        }
    };
    let outcome = match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Analyze { file } => cmd_analyze(file),
        Command::CloneSearch { file, all, budget } => cmd_clone_search(file, *all, *budget),
        Command::States { file } => cmd_states(file),
        Command::Hidden { file, parts, mixtures } => cmd_hidden(file, parts.as_deref(), *mixtures, cli.seed),
        Command::Catalog { name, params, output } => cmd_catalog(name, params, output.as_deref()),
    };
    let document = ReportDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: args,
        input_digest: outcome.input_digest,
        seed: outcome.seed,
        exit_code: outcome.exit_code,
        result: outcome.result,
    };
    let stdout = match (&outcome.payload, cli.format) {
        (Some(payload), _) => format!("{payload}\n"),
        (None, Format::Json) => {
            format!("{}\n", serde_json::to_string_pretty(&document).expect("reports serialize"))
        }
        (None, Format::Text) if matches!(document.result, CommandResult::Error(_)) => String::new(),
        (None, Format::Text) => text::render(&document),
    };
    let stderr = match &document.result {
        CommandResult::Error(e) => format!("error: {}\n", e.message),
        _ => String::new(),
    };
    Execution { exit_code: outcome.exit_code, stdout, stderr }
}
