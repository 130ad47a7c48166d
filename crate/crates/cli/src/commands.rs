//! Argument definitions and command dispatch.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spinfluct::algebra::{local_two_qubit_basis, spin_generators};
use spinfluct::fluctuations::{is_completely_entangled, DEFAULT_CE_TOLERANCE};
use spinfluct::spin1::{to_cartesian, to_spherical};
use spinfluct::twoqubit::decompose;
use spinfluct::variational::search;
use spinfluct::{BasisLabel, SearchConfig, SearchMode, Spin, StateVector, TwoQubitState};

use crate::analysis::{analyze, check_preset, AnalysisDocument, CeSection, DeltaScale, System};
use crate::error::{CliError, EXIT_INCONSISTENT, EXIT_USAGE};
use crate::presets::{self, Preset};
use crate::schema::{parse_state_json, StateJson, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "spinfluct",
    version,
    about = "Entanglement of pure states as extremal quantum fluctuations"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Rescale unnormalized input states instead of rejecting them
    #[arg(long, global = true)]
    pub normalize: bool,

    /// Tolerance of the CE test (max |⟨O_i⟩|)
    #[arg(long, global = true, default_value_t = DEFAULT_CE_TOLERANCE)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fluctuations, canonical form, CE verdict and concurrences of a state
    Analyze {
        /// Defaults to spin1 for spherical/cartesian input, two-qubit for qubit-pair
        #[arg(long, value_enum)]
        system: Option<System>,
        /// Read the state from a file instead of stdin
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Maximize (CE) or minimize (coherent) the total variance
    Search(SearchArgs),
    /// Named physical states
    #[command(subcommand)]
    Preset(PresetCommand),
    /// Convert a spin-1 state between spherical and cartesian components
    Convert {
        #[arg(long, value_enum)]
        to: ConvertTarget,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Split a two-qubit state into triplet and singlet sectors
    Decompose {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchSystem {
    Spin1,
    TwoQubit,
    /// Spin-j irrep; requires --j
    Spin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Maximize,
    Minimize,
}

#[derive(Debug, clap::Args)]
pub struct SearchArgs {
    #[arg(long, value_enum)]
    pub system: SearchSystem,
    /// Spin quantum number for --system spin, e.g. 3/2
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Maximize)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-iter", default_value_t = 2000)]
    pub max_iter: usize,
    #[arg(long = "step-tol", default_value_t = 1e-12)]
    pub step_tol: f64,
    #[arg(long = "value-tol", default_value_t = 1e-11)]
    pub value_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum PresetCommand {
    List,
    Show { id: String },
    Analyze { id: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    Spherical,
    Cartesian,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self::with_code(stdout, 0)
    }

    fn with_code(stdout: String, code: i32) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_args<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            }
        }
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    match dispatch(cli, stdin) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze { system, file } => {
            let (state, norm) = read_state(file.as_ref(), stdin, cli.normalize)?;
            let doc = analyze(&state, norm, cli.normalize && norm != 1.0, *system, cli.tol)?;
            Ok(emit_analysis(&doc, cli.format))
        }
        Command::Search(args) => cmd_search(args, cli),
        Command::Preset(cmd) => cmd_preset(cmd, cli),
        Command::Convert { to, file } => {
            let (state, _) = read_state(file.as_ref(), stdin, cli.normalize)?;
            cmd_convert(&state, *to, cli.format)
        }
        Command::Decompose { file } => {
            let (state, _) = read_state(file.as_ref(), stdin, cli.normalize)?;
            cmd_decompose(&state, cli.format)
        }
    }
}

fn read_state(
    file: Option<&PathBuf>,
    stdin: &mut dyn Read,
    normalize: bool,
) -> Result<(StateVector, f64), CliError> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf)?;
            buf
        }
    };
    parse_state_json(&text)?.to_state(normalize)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn emit_analysis(doc: &AnalysisDocument, format: Format) -> Outcome {
    let body = match format {
        Format::Json => to_json(doc),
        Format::Text => render_analysis(doc),
    };
    let code = if doc.consistent { 0 } else { EXIT_INCONSISTENT };
    let mut out = Outcome::with_code(body, code);
    if !doc.consistent {
        out.stderr = "error: concurrence cross-check or preset expectation failed\n".into();
    }
    out
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<24}{value}");
}

fn fmt_components(components: &[[f64; 2]]) -> String {
    let parts: Vec<String> = components
        .iter()
        .map(|[re, im]| format!("{re:+.12}{im:+.12}i"))
        .collect();
    format!("({})", parts.join(", "))
}

fn fmt_vec3(v: &[f64; 3]) -> String {
    format!("({:+.12}, {:+.12}, {:+.12})", v[0], v[1], v[2])
}

pub fn render_analysis(doc: &AnalysisDocument) -> String {
    let mut out = String::new();
    row(&mut out, "system", doc.system.as_str());
    if let Some(p) = &doc.preset {
        row(&mut out, "preset", &p.id);
    }
    let basis = serde_json::to_value(doc.input.state.basis).unwrap_or_default();
    row(&mut out, "input basis", basis.as_str().unwrap_or("?"));
    row(
        &mut out,
        "input state",
        fmt_components(&doc.input.state.components),
    );
    if doc.input.normalized {
        row(
            &mut out,
            "original norm",
            format!("{:.12}", doc.input.original_norm),
        );
    }
    if let Some(r) = &doc.representations {
        row(
            &mut out,
            "spherical",
            fmt_components(&r.spherical.components),
        );
        row(
            &mut out,
            "cartesian",
            fmt_components(&r.cartesian.components),
        );
    }
    out.push('\n');
    let f = &doc.fluctuations;
    row(&mut out, "algebra", &f.algebra);
    let ev: Vec<String> = f.expectations.iter().map(|x| format!("{x:+.12}")).collect();
    row(&mut out, "expectations", ev.join(" "));
    row(&mut out, "V_tot", format!("{:.12}", f.v_tot));
    if let (Some(lo), Some(hi)) = (f.v_min, f.v_max) {
        row(&mut out, "V_min / V_max", format!("{lo} / {hi}"));
    }
    if let Some(form) = &doc.canonical_form {
        out.push('\n');
        row(&mut out, "theta", format!("{:.12}", form.theta));
        row(&mut out, "phi", format!("{:.12}", form.phi));
        row(&mut out, "mu", fmt_vec3(&form.mu));
        let nu = if form.nu_defined {
            fmt_vec3(&form.nu)
        } else {
            "undetermined".to_string()
        };
        row(&mut out, "nu", nu);
    }
    if let Some(s) = &doc.sectors {
        out.push('\n');
        row(
            &mut out,
            "symmetric weight",
            format!("{:.12}", s.symmetric_weight),
        );
        row(
            &mut out,
            "antisymmetric weight",
            format!("{:.12}", s.antisymmetric_weight),
        );
    }
    out.push('\n');
    out.push_str("concurrence\n");
    for m in &doc.concurrence.values {
        row(
            &mut out,
            &format!("  {}", m.method),
            format!("{:.12}", m.value),
        );
    }
    let worst = doc
        .concurrence
        .deltas
        .iter()
        .max_by(|a, b| a.delta.total_cmp(&b.delta));
    if let Some(d) = worst {
        let scale = match d.scale {
            DeltaScale::Linear => "",
            DeltaScale::Squared => " (squared)",
        };
        row(
            &mut out,
            "  max delta",
            format!(
                "{:.3e}{scale} [{} vs {}], tol {:e}",
                d.delta, d.a, d.b, doc.concurrence.cross_check_tolerance
            ),
        );
    }
    out.push('\n');
    let verdict = if doc.ce.verdict { "yes" } else { "no" };
    row(
        &mut out,
        "completely entangled",
        format!(
            "{verdict} (residual {:.3e}, tol {:e})",
            doc.ce.residual, doc.ce.tolerance
        ),
    );
    if let Some(axis) = &doc.ce.zero_projection_axis {
        row(&mut out, "zero-projection axis", fmt_vec3(axis));
    }
    if let Some(p) = &doc.preset {
        row(
            &mut out,
            "preset expectation",
            if p.matches { "matched" } else { "MISMATCH" },
        );
    }
    row(&mut out, "consistent", doc.consistent);
    out
}

#[derive(Debug, Serialize)]
struct ConfigEcho {
    restarts: usize,
    max_iterations: usize,
    step_tolerance: f64,
    value_tolerance: f64,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct SearchDocument {
    schema_version: u32,
    command: &'static str,
    system: String,
    algebra: String,
    mode: &'static str,
    config: ConfigEcho,
    best_value: f64,
    state: StateJson,
    converged: bool,
    iterations_used: usize,
    best_restart: usize,
    restart_values: Vec<f64>,
    restart_converged: Vec<bool>,
    ce: CeSection,
}

fn cmd_search(args: &SearchArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let (system, basis) = match args.system {
        SearchSystem::Spin1 => ("spin1".to_string(), spin_generators(Spin::ONE)),
        SearchSystem::TwoQubit => ("two-qubit".to_string(), local_two_qubit_basis()),
        SearchSystem::Spin => {
            let j = args
                .j
                .as_deref()
                .ok_or_else(|| CliError::Input("--system spin requires --j".into()))?;
            let spin: Spin = j
                .parse()
                .map_err(|_| CliError::Input(format!("invalid spin quantum number '{j}'")))?;
            (format!("spin-{spin}"), spin_generators(spin))
        }
    };
    if args.j.is_some() && args.system != SearchSystem::Spin {
        return Err(CliError::Input("--j only applies to --system spin".into()));
    }
    let mode = match args.mode {
        ModeArg::Maximize => SearchMode::Maximize,
        ModeArg::Minimize => SearchMode::Minimize,
    };
    let config = SearchConfig {
        restarts: args.restarts,
        max_iterations: args.max_iter,
        step_tolerance: args.step_tol,
        value_tolerance: args.value_tol,
        seed: args.seed,
        mode,
    };
    config
        .validate()
        .map_err(|e| CliError::Input(e.to_string()))?;
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(CliError::Input(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    let result = search(&basis, &config)?;
    let verdict = is_completely_entangled(&result.best_state, &basis, cli.tol)?;
    let doc = SearchDocument {
        schema_version: SCHEMA_VERSION,
        command: "search",
        system,
        algebra: basis.label(),
        mode: match mode {
            SearchMode::Maximize => "maximize",
            SearchMode::Minimize => "minimize",
        },
        config: ConfigEcho {
            restarts: config.restarts,
            max_iterations: config.max_iterations,
            step_tolerance: config.step_tolerance,
            value_tolerance: config.value_tolerance,
            seed: config.seed,
        },
        best_value: result.best_value,
        state: StateJson::from_state(&result.best_state),
        converged: result.converged,
        iterations_used: result.iterations_used,
        best_restart: result.best_restart,
        restart_values: result.restart_values,
        restart_converged: result.restart_converged,
        ce: CeSection {
            verdict: verdict.is_ce,
            residual: verdict.residual,
            tolerance: cli.tol,
            zero_projection_axis: None,
        },
    };
    let body = match cli.format {
        Format::Json => to_json(&doc),
        Format::Text => {
            let mut out = String::new();
            row(&mut out, "system", &doc.system);
            row(&mut out, "algebra", &doc.algebra);
            row(&mut out, "mode", doc.mode);
            row(
                &mut out,
                "restarts / seed",
                format!("{} / {}", config.restarts, config.seed),
            );
            row(&mut out, "best value", format!("{:.12}", doc.best_value));
            row(
                &mut out,
                "best state",
                fmt_components(&doc.state.components),
            );
            row(&mut out, "converged", doc.converged);
            row(&mut out, "iterations used", doc.iterations_used);
            row(&mut out, "best restart", doc.best_restart);
            let verdict = if doc.ce.verdict { "yes" } else { "no" };
            row(
                &mut out,
                "completely entangled",
                format!("{verdict} (residual {:.3e})", doc.ce.residual),
            );
            out
        }
    };
    let mut outcome = Outcome::with_code(body, if doc.converged { 0 } else { EXIT_INCONSISTENT });
    if !doc.converged {
        outcome.stderr = "error: no restart met the stopping tolerances\n".into();
    }
    Ok(outcome)
}

#[derive(Debug, Serialize)]
struct PresetSummary {
    id: &'static str,
    description: &'static str,
    system: presets::PresetSystem,
    state: Option<StateJson>,
    expected_concurrence: Option<f64>,
    expected_ce: Option<bool>,
    expected_phi: Option<f64>,
    source_note: &'static str,
}

impl From<&Preset> for PresetSummary {
    fn from(p: &Preset) -> Self {
        Self {
            id: p.id,
            description: p.description,
            system: p.system,
            state: p.state.as_ref().map(StateJson::from_state),
            expected_concurrence: p.expected_concurrence,
            expected_ce: p.expected_ce,
            expected_phi: p.expected_phi,
            source_note: p.source_note,
        }
    }
}

fn lookup(id: &str) -> Result<Preset, CliError> {
    presets::find(id).ok_or_else(|| CliError::UnknownPreset(id.to_string()))
}

/// Analysis document for a preset, with its expectations checked.
pub fn analyze_preset(id: &str, tol: f64) -> Result<AnalysisDocument, CliError> {
    let preset = lookup(id)?;
    let state = preset.state.as_ref().ok_or_else(|| {
        CliError::Input(format!(
            "preset '{id}' is label-only: {}",
            preset.source_note
        ))
    })?;
    let system = match preset.system {
        presets::PresetSystem::Spin1 => System::Spin1,
        presets::PresetSystem::TwoQubit => System::TwoQubit,
    };
    let mut doc = analyze(state, 1.0, false, Some(system), tol)?;
    check_preset(&mut doc, &preset);
    Ok(doc)
}

fn cmd_preset(cmd: &PresetCommand, cli: &Cli) -> Result<Outcome, CliError> {
    match cmd {
        PresetCommand::List => {
            let catalog = presets::catalog();
            let body = match cli.format {
                Format::Json => {
                    let list: Vec<PresetSummary> = catalog.iter().map(Into::into).collect();
                    to_json(&serde_json::json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": "preset-list",
                        "presets": list,
                    }))
                }
                Format::Text => {
                    let mut out = String::new();
                    for p in &catalog {
                        let c = p
                            .expected_concurrence
                            .map_or("-".to_string(), |c| format!("{c}"));
                        let _ = writeln!(
                            out,
                            "{:<20}{:<11}C={:<4} {}",
                            p.id,
                            system_name(p.system),
                            c,
                            p.description
                        );
                    }
                    out
                }
            };
            Ok(Outcome::ok(body))
        }
        PresetCommand::Show { id } => {
            let preset = lookup(id)?;
            let summary = PresetSummary::from(&preset);
            let body = match cli.format {
                Format::Json => to_json(&serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "preset-show",
                    "preset": summary,
                })),
                Format::Text => {
                    let mut out = String::new();
                    row(&mut out, "id", preset.id);
                    row(&mut out, "description", preset.description);
                    row(&mut out, "system", system_name(preset.system));
                    match &summary.state {
                        Some(s) => {
                            let basis = serde_json::to_value(s.basis).unwrap_or_default();
                            row(&mut out, "basis", basis.as_str().unwrap_or("?"));
                            row(&mut out, "state", fmt_components(&s.components));
                        }
                        None => row(&mut out, "state", "none (label only)"),
                    }
                    if let Some(c) = preset.expected_concurrence {
                        row(&mut out, "expected concurrence", c);
                    }
                    if let Some(ce) = preset.expected_ce {
                        row(&mut out, "expected CE", ce);
                    }
                    row(&mut out, "note", preset.source_note);
                    out
                }
            };
            Ok(Outcome::ok(body))
        }
        PresetCommand::Analyze { id } => {
            Ok(emit_analysis(&analyze_preset(id, cli.tol)?, cli.format))
        }
    }
}

fn system_name(system: presets::PresetSystem) -> &'static str {
    match system {
        presets::PresetSystem::Spin1 => "spin1",
        presets::PresetSystem::TwoQubit => "two-qubit",
    }
}

fn cmd_convert(
    state: &StateVector,
    to: ConvertTarget,
    format: Format,
) -> Result<Outcome, CliError> {
    let converted = match (state.basis(), to) {
        (BasisLabel::Spherical, ConvertTarget::Cartesian) => to_cartesian(state)?,
        (BasisLabel::Cartesian, ConvertTarget::Spherical) => to_spherical(state)?,
        (BasisLabel::Spherical, ConvertTarget::Spherical)
        | (BasisLabel::Cartesian, ConvertTarget::Cartesian) => state.clone(),
        (BasisLabel::QubitPair, _) => {
            return Err(CliError::Input("convert needs a spin-1 state".into()))
        }
    };
    if converted.dim() != 3 {
        return Err(CliError::Input("convert needs a 3-component state".into()));
    }
    let json = StateJson::from_state(&converted);
    let body = match format {
        Format::Json => to_json(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "command": "convert",
            "from": StateJson::from_state(state).basis,
            "to": json.basis,
            "state": json,
        })),
        Format::Text => {
            let mut out = String::new();
            let basis = serde_json::to_value(json.basis).unwrap_or_default();
            row(&mut out, "basis", basis.as_str().unwrap_or("?"));
            row(&mut out, "state", fmt_components(&json.components));
            out
        }
    };
    Ok(Outcome::ok(body))
}

#[derive(Debug, Serialize)]
struct DecomposeDocument {
    schema_version: u32,
    command: &'static str,
    input: StateJson,
    symmetric: [[f64; 2]; 3],
    antisymmetric: [f64; 2],
    symmetric_weight: f64,
    antisymmetric_weight: f64,
    spin1_state: Option<StateJson>,
}

fn cmd_decompose(state: &StateVector, format: Format) -> Result<Outcome, CliError> {
    let chi = TwoQubitState::from_state(state.clone())
        .map_err(|_| CliError::Input("decompose needs a 4-component qubit-pair state".into()))?;
    let parts = decompose(&chi);
    let spin1_state = (parts.symmetric_weight() > 0.0)
        .then(|| {
            StateVector::normalized(
                nalgebra::DVector::from_row_slice(&parts.symmetric),
                BasisLabel::Spherical,
            )
            .ok()
        })
        .flatten()
        .map(|(s, _)| StateJson::from_state(&s));
    let doc = DecomposeDocument {
        schema_version: SCHEMA_VERSION,
        command: "decompose",
        input: StateJson::from_state(state),
        symmetric: parts.symmetric.map(|z| [z.re, z.im]),
        antisymmetric: [parts.antisymmetric.re, parts.antisymmetric.im],
        symmetric_weight: parts.symmetric_weight(),
        antisymmetric_weight: parts.antisymmetric_weight(),
        spin1_state,
    };
    let body = match format {
        Format::Json => to_json(&doc),
        Format::Text => {
            let mut out = String::new();
            row(&mut out, "input", fmt_components(&doc.input.components));
            row(
                &mut out,
                "triplet (+1, 0, -1)",
                fmt_components(&doc.symmetric),
            );
            row(
                &mut out,
                "singlet amplitude",
                fmt_components(&[doc.antisymmetric]),
            );
            row(
                &mut out,
                "symmetric weight",
                format!(
                    "{:.12} ({:.4}%)",
                    doc.symmetric_weight,
                    100.0 * doc.symmetric_weight
                ),
            );
            row(
                &mut out,
                "antisymmetric weight",
                format!(
                    "{:.12} ({:.4}%)",
                    doc.antisymmetric_weight,
                    100.0 * doc.antisymmetric_weight
                ),
            );
            if let Some(s) = &doc.spin1_state {
                row(&mut out, "spin-1 projection", fmt_components(&s.components));
            }
            out
        }
    };
    Ok(Outcome::ok(body))
}
