//! Command-line front end: loads a model, runs the requested computation and
//! renders the result as text or JSON.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use akh_core::harmonic::{
    self, hard_lefschetz, hodge_index, mu_bar_cohomology, obstruction_report, Diamond, HodgeIndex, LefschetzReport,
    ObstructionReport,
};
use akh_core::model::{catalog, catalog_names, load_model_str, validate, StructureReport};
use akh_core::operators::{verify_identities, IdentityLedger};
use akh_core::{Geometry, GeometryError, LieModel, ModelError};

/// Exit status of a clean run.
pub const EXIT_OK: i32 = 0;
/// Malformed input, unreadable file or unsupported request.
pub const EXIT_INPUT: i32 = 1;
/// An obstruction fired, or an identity failed on an almost Kähler model.
pub const EXIT_OBSTRUCTION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "akh", version, about = "Exact almost Kähler identities and harmonic invariants of Lie-algebra models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Validate,
    Identities,
    Diamond,
    Betti,
    Lefschetz,
    Obstructions,
    Report,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural checks: Jacobi, J² = -1, compatibility, integrability, closedness of ω.
    Validate(RunArgs),
    /// The almost Kähler identity ledger and the pieces of d² = 0.
    Identities(RunArgs),
    /// The numbers ℓ^{p,q} as a staggered diamond.
    Diamond(RunArgs),
    /// Betti numbers of the invariant complex.
    Betti(RunArgs),
    /// Hard Lefschetz maps on harmonic forms and on cohomology.
    Lefschetz(RunArgs),
    /// Obstructions to a compatible invariant almost Kähler structure.
    Obstructions(RunArgs),
    /// Everything above in one document.
    Report(RunArgs),
}

#[derive(Args, Debug, Clone)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).multiple(false).args(["catalog", "model"])))]
pub struct RunArgs {
    /// Built-in model name (torus2, torus4, kodaira_thurston, ...).
    #[arg(long)]
    pub catalog: Option<String>,
    /// Path to a model JSON document.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print progress to stderr; repeat for more.
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A fully parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub args: RunArgs,
}

impl From<Command> for RunConfig {
    fn from(c: Command) -> Self {
        let (command, args) = match c {
            Command::Validate(a) => (CommandKind::Validate, a),
            Command::Identities(a) => (CommandKind::Identities, a),
            Command::Diamond(a) => (CommandKind::Diamond, a),
            Command::Betti(a) => (CommandKind::Betti, a),
            Command::Lefschetz(a) => (CommandKind::Lefschetz, a),
            Command::Obstructions(a) => (CommandKind::Obstructions, a),
            Command::Report(a) => (CommandKind::Report, a),
        };
        RunConfig { command, args }
    }
}

/// Output of one run: the report on stdout, diagnostics on stderr and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum RunError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Model { path: String, source: ModelError },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("JSON encoding failed: {0}")]
    Encode(#[from] serde_json::Error),
}

fn load(args: &RunArgs) -> Result<LieModel, RunError> {
    match (&args.catalog, &args.model) {
        (Some(name), _) => catalog(name).map_err(|source| RunError::Model {
            path: format!("catalog (known: {}, torusN for even N ≤ 12)", catalog_names().join(", ")),
            source,
        }),
        (None, Some(path)) => {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|source| RunError::Io { path: shown.clone(), source })?;
            load_model_str(&text).map_err(|source| RunError::Model { path: shown, source })
        }
        (None, None) => unreachable!("clap requires a model source"),
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let mut log = String::new();
    match execute(config, &mut log) {
        Ok((status, stdout)) => Outcome { status, stdout, stderr: log },
        Err(e) => {
            let _ = writeln!(log, "error: {e}");
            Outcome { status: EXIT_INPUT, stdout: String::new(), stderr: log }
        }
    }
}

fn note(config: &RunConfig, log: &mut String, msg: &str) {
    if config.args.verbose > 0 {
        let _ = writeln!(log, "akh: {msg}");
    }
}

#[derive(Serialize)]
struct ValidateDoc<'a> {
    model: &'a str,
    dim: usize,
    structure: &'a StructureReport,
}

#[derive(Serialize)]
struct BettiDoc<'a> {
    model: &'a str,
    betti: &'a [usize],
}

/// Everything computed for one model.
#[derive(Serialize)]
pub struct FullReport {
    pub model: String,
    pub dim: usize,
    pub structure: StructureReport,
    pub betti: Vec<usize>,
    pub diamond: Diamond,
    /// `mu_bar_cohomology[p][q]`.
    pub mu_bar_cohomology: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_index: Option<HodgeIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzReport>,
    pub identities: IdentityLedger,
    pub obstructions: ObstructionReport,
}

fn ledger_status(ledger: &IdentityLedger) -> i32 {
    if ledger.almost_kahler && !ledger.all_hold() {
        EXIT_OBSTRUCTION
    } else {
        EXIT_OK
    }
}

fn diamond_status(d: &Diamond) -> i32 {
    match &d.flags {
        Some(f)
            if !(f.duality_ok
                && f.star_ok
                && f.bounds_ok
                && f.diagonal_ok
                && f.omega_powers_harmonic
                && f.off_diagonal_betti_ok
                && f.lefschetz_ok) =>
        {
            EXIT_OBSTRUCTION
        }
        _ => EXIT_OK,
    }
}

fn encode<T: Serialize>(value: &T) -> Result<String, RunError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn execute(config: &RunConfig, log: &mut String) -> Result<(i32, String), RunError> {
    let model = load(&config.args)?;
    let json = config.args.format == Format::Json;
    note(config, log, &format!("loaded {} (dimension {})", model.name(), model.dim()));
    if config.command == CommandKind::Validate {
        let structure = validate(&model);
        let status = if structure.is_almost_hermitian() { EXIT_OK } else { EXIT_INPUT };
        let out = if json {
            encode(&ValidateDoc { model: model.name(), dim: model.dim(), structure: &structure })?
        } else {
            text_structure(&model, &structure)
        };
        return Ok((status, out));
    }
    if config.command == CommandKind::Betti {
        let b = harmonic::betti(&model);
        let out = if json {
            encode(&BettiDoc { model: model.name(), betti: &b })?
        } else {
            format!("{}: betti {}\n", model.name(), join(&b))
        };
        return Ok((EXIT_OK, out));
    }
    let geo = Geometry::new(&model)?;
    note(config, log, "built bigraded algebra and operators");
    match config.command {
        CommandKind::Identities => {
            let ledger = verify_identities(&geo);
            let out = if json { encode(&ledger)? } else { text_ledger(&ledger) };
            Ok((ledger_status(&ledger), out))
        }
        CommandKind::Diamond => {
            let d = harmonic::ell_diamond(&geo)?;
            let out = if json { encode(&d)? } else { text_diamond(model.name(), &d) };
            Ok((diamond_status(&d), out))
        }
        CommandKind::Lefschetz => {
            let r = hard_lefschetz(&geo)?;
            let status = if r.maps.iter().all(|f| f.iso) && r.monotone { EXIT_OK } else { EXIT_OBSTRUCTION };
            let out = if json { encode(&r)? } else { text_lefschetz(&r) };
            Ok((status, out))
        }
        CommandKind::Obstructions => {
            let r = obstruction_report(&geo)?;
            let status = if r.fires() { EXIT_OBSTRUCTION } else { EXIT_OK };
            let out = if json { encode(&r)? } else { text_obstructions(&r) };
            Ok((status, out))
        }
        CommandKind::Report => {
            let report = full_report(&geo, config, log)?;
            let mut status = ledger_status(&report.identities).max(diamond_status(&report.diamond));
            if report.obstructions.fires() {
                status = EXIT_OBSTRUCTION;
            }
            let out = if json { encode(&report)? } else { text_report(&report) };
            Ok((status, out))
        }
        CommandKind::Validate | CommandKind::Betti => unreachable!("handled before building the geometry"),
    }
}

pub fn full_report_for(geo: &Geometry) -> Result<FullReport, GeometryError> {
    let config = RunConfig {
        command: CommandKind::Report,
        args: RunArgs { catalog: None, model: None, format: Format::Json, verbose: 0 },
    };
    full_report(geo, &config, &mut String::new())
}

fn full_report(geo: &Geometry, config: &RunConfig, log: &mut String) -> Result<FullReport, GeometryError> {
    let model = geo.model();
    let m = geo.m();
    let diamond = harmonic::ell_diamond(geo)?;
    note(config, log, "computed harmonic diamond");
    let mut mu_bar = vec![vec![0; m + 1]; m + 1];
    for (p, row) in mu_bar.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            *cell = mu_bar_cohomology(geo, (p, q))?;
        }
    }
    let ak = geo.is_almost_kahler();
    let hodge_index = if ak && model.dim() == 4 { Some(hodge_index(geo)?) } else { None };
    let lefschetz = if ak { Some(hard_lefschetz(geo)?) } else { None };
    let identities = verify_identities(geo);
    note(config, log, "checked identity ledger");
    let obstructions = obstruction_report(geo)?;
    note(config, log, "evaluated obstructions");
    Ok(FullReport {
        model: model.name().to_string(),
        dim: model.dim(),
        structure: geo.structure().clone(),
        betti: diamond.betti.clone(),
        diamond,
        mu_bar_cohomology: mu_bar,
        hodge_index,
        lefschetz,
        identities,
        obstructions,
    })
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Staggered triangle: row `k` holds `ℓ^{p,k-p}` with `p` descending, and
/// `ℓ^{p,q}` sits in column `m - p + q`.
pub fn render_diamond(d: &Diamond) -> String {
    let m = d.m;
    let width = d.ell.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let step = (width + 2) / 2;
    let mut out = String::new();
    for k in 0..=2 * m {
        let mut line = String::new();
        for p in (k.saturating_sub(m)..=k.min(m)).rev() {
            let q = k - p;
            let col = (m + q - p) * step;
            while line.chars().count() < col {
                line.push(' ');
            }
            let _ = write!(line, "{:>width$}", d.ell[p][q]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn text_structure(model: &LieModel, s: &StructureReport) -> String {
    let mut out = format!("model {} (dimension {})\n", model.name(), model.dim());
    let _ = writeln!(out, "  Jacobi identity      {}", yes(s.jacobi_ok));
    if let Some((i, j, k)) = s.jacobi_violation {
        let _ = writeln!(out, "    fails on (X{i}, X{j}, X{k})");
    }
    let _ = writeln!(out, "  J² = -1              {}", yes(s.acs_ok));
    let _ = writeln!(out, "  J orthogonal         {}", yes(s.compatible_ok));
    let _ = writeln!(out, "  integrable           {}", yes(s.integrable));
    let _ = writeln!(out, "  almost Kähler (dω=0) {}", yes(s.almost_kahler));
    let _ = writeln!(out, "  nilpotent            {}", yes(s.nilpotent));
    out
}

fn text_ledger(l: &IdentityLedger) -> String {
    let mut out = format!("identity ledger for {} (almost Kähler: {})\n", l.model, yes(l.almost_kahler));
    for r in &l.d_squared {
        let _ = writeln!(out, "  {:<6} {}", if r.holds { "ok" } else { "FAIL" }, r.relation);
    }
    for e in &l.entries {
        let _ = writeln!(out, "  {:<6} {:<28} {}", if e.holds { "ok" } else { "FAIL" }, e.id, e.statement);
        if let Some(w) = &e.witness {
            let _ = writeln!(out, "         on {} in A^{{{},{}}}: {} vs {}", w.form, w.bidegree.0, w.bidegree.1, w.lhs, w.rhs);
        }
    }
    out
}

fn text_diamond(name: &str, d: &Diamond) -> String {
    let mut out = format!("ℓ^{{p,q}} for {name} (invariant forms)\n");
    out.push_str(&render_diamond(d));
    let _ = writeln!(out, "betti {}", join(&d.betti));
    match &d.flags {
        Some(f) => {
            let _ = writeln!(
                out,
                "duality {} | star {} | betti bounds {} | ℓ^{{k,k}} ≥ 1 {} | ω^k harmonic {} | off-diagonal betti {} (printed parity {}) | hard Lefschetz {}",
                yes(f.duality_ok),
                yes(f.star_ok),
                yes(f.bounds_ok),
                yes(f.diagonal_ok),
                yes(f.omega_powers_harmonic),
                yes(f.off_diagonal_betti_ok),
                yes(f.off_diagonal_betti_as_stated),
                yes(f.lefschetz_ok)
            );
        }
        None => out.push_str("not almost Kähler: consistency flags not evaluated\n"),
    }
    out
}

fn text_lefschetz(r: &LefschetzReport) -> String {
    let mut out = String::from("hard Lefschetz on harmonic forms\n");
    for f in &r.maps {
        let _ = writeln!(
            out,
            "  k={} A^{{{},{}}} -> A^{{{},{}}}: {} -> {} rank {} {}",
            f.k,
            f.source.0,
            f.source.1,
            f.target.0,
            f.target.1,
            f.source_dim,
            f.target_dim,
            f.rank,
            if f.iso { "iso" } else { "NOT iso" }
        );
    }
    let _ = writeln!(out, "  monotone along diagonals: {}", yes(r.monotone));
    out.push_str("on cohomology\n");
    for c in &r.cohomology {
        let _ = writeln!(
            out,
            "  H^{} -> H^{}: b={} rank {} {}",
            c.k,
            2 * (r.cohomology.len() - 1) - c.k,
            c.betti,
            c.rank,
            if c.iso { "iso" } else { "NOT iso" }
        );
    }
    out
}

fn text_obstructions(r: &ObstructionReport) -> String {
    let mut out = format!("obstructions for {}\n", r.model);
    let _ = writeln!(out, "  holomorphic forms dim Ω^p: {}", join(&r.hol_dims));
    let dim1 = r.hol_dims.get(1).copied().unwrap_or(0);
    let _ = writeln!(
        out,
        "  2·dim Ω¹ ≤ b¹: 2·{} {} {} {}",
        dim1,
        if r.cor45_ok { "≤" } else { ">" },
        r.betti1,
        if r.cor45_ok { "ok" } else { "VIOLATED" }
    );
    let _ = writeln!(out, "  dim Ω¹ > dim Ω² + 1: {}", yes(r.chen_hypothesis));
    match &r.laplacian_witness {
        Some(w) => {
            let (first, second) = if w.in_first_kernel { ("Δ_∂̄+Δ_μ", "Δ_∂+Δ_μ̄") } else { ("Δ_∂+Δ_μ̄", "Δ_∂̄+Δ_μ") };
            let _ = writeln!(out, "  Laplacian asymmetry witness: {} is {first}-harmonic but not {second}-harmonic", w.form);
        }
        None => out.push_str("  Laplacian asymmetry witness: none\n"),
    }
    let _ = writeln!(out, "  closed J-invariant 2-forms: {}", r.ak_nonexistence.closed_invariant_forms.len());
    let _ = writeln!(out, "  verdict: {}", r.ak_nonexistence.statement);
    if let Some(p) = &r.ak_nonexistence.top_power {
        let _ = writeln!(out, "  ω^m on surviving family: {p}");
    }
    let _ = writeln!(out, "  obstruction fires: {}", yes(r.fires()));
    out
}

fn text_report(r: &FullReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {} (dimension {})", r.model, r.dim);
    let s = &r.structure;
    let _ = writeln!(
        out,
        "integrable {} | almost Kähler {} | nilpotent {}",
        yes(s.integrable),
        yes(s.almost_kahler),
        yes(s.nilpotent)
    );
    out.push('\n');
    out.push_str(&text_diamond(&r.model, &r.diamond));
    out.push_str("\nμ̄-cohomology dimensions (rows p, columns q)\n");
    for row in &r.mu_bar_cohomology {
        let _ = writeln!(out, "  {}", join(row));
    }
    if let Some(h) = &r.hodge_index {
        let _ = writeln!(
            out,
            "\nHodge index (b₂⁺, b₂⁻) = ({}, {}); ℓ^{{1,1}} = {} = b₂⁻ + 1: {}; ℓ^{{2,0}} = {}",
            h.b2_plus,
            h.b2_minus,
            h.ell11,
            yes(h.relation_ok),
            h.ell20
        );
    }
    if let Some(l) = &r.lefschetz {
        out.push('\n');
        out.push_str(&text_lefschetz(l));
    }
    out.push('\n');
    out.push_str(&text_ledger(&r.identities));
    out.push('\n');
    out.push_str(&text_obstructions(&r.obstructions));
    out
}

/// Caps the global thread pool from `AKH_THREADS`, if set.
pub fn configure_threads(value: Option<&str>) -> Result<(), String> {
    let Some(v) = value else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("AKH_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("AKH_THREADS must be a positive integer, got 0".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(command: CommandKind, name: &str, format: Format) -> RunConfig {
        RunConfig { command, args: RunArgs { catalog: Some(name.into()), model: None, format, verbose: 0 } }
    }

    #[test]
    fn diamond_layout() {
        let geo = Geometry::new(&catalog("kodaira_thurston").unwrap()).unwrap();
        let text = render_diamond(&harmonic::ell_diamond(&geo).unwrap());
        assert_eq!(text, "  1\n 1 1\n0 3 0\n 1 1\n  1\n");
    }

    #[test]
    fn wide_entries_stay_aligned() {
        let geo = Geometry::new(&catalog("torus8").unwrap()).unwrap();
        let text = render_diamond(&harmonic::ell_diamond(&geo).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[4], " 1  16  36  16   1");
        // two-digit cells: column m - p + q starts at character (m - p + q) * 2
        assert_eq!(lines[0], "         1");
        assert_eq!(lines[1], "       4   4");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&config(CommandKind::Validate, "torus4", Format::Text)).status, EXIT_OK);
        assert_eq!(run(&config(CommandKind::Obstructions, "h5_J", Format::Text)).status, EXIT_OBSTRUCTION);
        assert_eq!(run(&config(CommandKind::Identities, "h5_J", Format::Text)).status, EXIT_OK);
        let bad = run(&config(CommandKind::Betti, "nonesuch", Format::Text));
        assert_eq!(bad.status, EXIT_INPUT);
        assert!(bad.stderr.contains("nonesuch"));
        assert_eq!(run(&config(CommandKind::Lefschetz, "h5_J", Format::Text)).status, EXIT_INPUT);
    }

    #[test]
    fn thread_cap_rejects_garbage() {
        assert!(configure_threads(Some("zero")).is_err());
        assert!(configure_threads(Some("0")).is_err());
        assert!(configure_threads(None).is_ok());
    }
}
