use std::fs;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use wishart_core::existence::{ExistenceStatus, GindikinVerdict};
use wishart_core::io::{
    rows_from_sym, sym_from_rows, AnyParamsDoc, LetacDoc, ParamsDoc, ProcessDoc,
};
use wishart_core::montecarlo::{
    sample_noncentral, sde_euler_path, RngState, EULER_STEPS_PER_UNIT_TIME,
};
use wishart_core::process::WishartProcessParams;
use wishart_core::symcone::{PsdMatrix, SymMatrix};
use wishart_core::verify::{run_verify, transform_grid, VerifyConfig};
use wishart_core::wishart::WishartParams;

use crate::{
    CliFailure, IoArgs, OutputFormat, EXIT_INVALID_INPUT, EXIT_OPEN_PROBLEM, EXIT_VERDICT_BLOCKED,
};

type CliResult = Result<(), CliFailure>;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Formal,
}

impl ModeArg {
    fn as_str(&self) -> &'static str {
        match self {
            ModeArg::Strict => "strict",
            ModeArg::Formal => "formal",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    /// Native (p, omega, sigma) document.
    Gamma,
    /// a = σ⁻¹ωσ⁻¹ document; requires invertible σ.
    Letac,
}

#[derive(Serialize)]
struct Meta {
    tool_version: String,
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rng: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method_tags: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<GindikinVerdict>,
    params: serde_json::Value,
}

impl Meta {
    fn new(command: &str, params: serde_json::Value) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            rng: None,
            seed: None,
            n: None,
            t: None,
            steps: None,
            method_tags: None,
            verdict: None,
            params,
        }
    }

    fn seeded(mut self, seed: u64) -> Self {
        self.rng = Some("chacha12".to_string());
        self.seed = Some(seed);
        self
    }
}

/// 0 means "derive from entropy"; the effective value lands in the metadata.
fn resolve_seed(seed: u64) -> u64 {
    if seed == 0 {
        rand::random()
    } else {
        seed
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliFailure> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliFailure::new(
            EXIT_INVALID_INPUT,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn read_params(path: &Path) -> Result<WishartParams, CliFailure> {
    let doc: AnyParamsDoc = read_json(path)?;
    Ok(doc.to_native()?)
}

fn write_text(output: Option<&Path>, content: &str) -> CliResult {
    match output {
        Some(path) => {
            fs::write(path, content).map_err(|e| {
                CliFailure::new(
                    EXIT_INVALID_INPUT,
                    format!("cannot write {}: {e}", path.display()),
                )
            })?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

/// CSV artifact plus a sibling `<output>.meta.json`; JSON embeds the
/// metadata in one document.
fn write_table(
    io: &IoArgs,
    format: OutputFormat,
    header: &[String],
    rows: &[Vec<String>],
    json_rows: serde_json::Value,
    meta: &Meta,
) -> CliResult {
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(&header.join(", "));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(", "));
                out.push('\n');
            }
            write_text(io.output.as_deref(), &out)?;
            if let Some(path) = &io.output {
                let meta_path = meta_path_for(path);
                let meta_text = serde_json::to_string_pretty(meta)? + "\n";
                fs::write(&meta_path, meta_text).map_err(|e| {
                    CliFailure::new(
                        EXIT_INVALID_INPUT,
                        format!("cannot write {}: {e}", meta_path.display()),
                    )
                })?;
            }
        }
        OutputFormat::Json => {
            let doc = json!({ "meta": meta, "rows": json_rows });
            write_text(
                io.output.as_deref(),
                &(serde_json::to_string_pretty(&doc)? + "\n"),
            )?;
        }
    }
    Ok(())
}

fn meta_path_for(output: &Path) -> std::path::PathBuf {
    let mut name = output
        .file_name()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    name.push(".meta.json");
    output.with_file_name(name)
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

/// "COUNTxSCALE[,SCALE...]" → (count, scales).
fn parse_grid(
    spec: Option<&str>,
    default: (usize, &[f64]),
) -> Result<(usize, Vec<f64>), CliFailure> {
    let Some(spec) = spec else {
        return Ok((default.0, default.1.to_vec()));
    };
    let bad = || {
        CliFailure::new(
            EXIT_INVALID_INPUT,
            format!("grid spec {spec:?} should look like \"10x0.5,2\""),
        )
    };
    let (count, scales) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    let scales: Vec<f64> = scales
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    if count == 0 || scales.is_empty() || scales.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(bad());
    }
    Ok((count, scales))
}

fn matrix_headers(prefix: &str, d: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(d * d);
    for i in 1..=d {
        for j in 1..=d {
            out.push(format!("{prefix}_{i}{j}"));
        }
    }
    out
}

fn matrix_cells(m: &SymMatrix) -> Vec<String> {
    let d = m.dim();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(fmt(m.at(i, j)));
        }
    }
    out
}

/// Gate shared by the verdict-sensitive commands: open-problem parameters
/// exit 4 unless --allow-open was passed.
fn open_problem_gate(verdict: &GindikinVerdict, allow_open: bool) -> CliResult {
    if verdict.status == ExistenceStatus::OpenProblem && !allow_open {
        return Err(CliFailure::new(
            EXIT_OPEN_PROBLEM,
            format!(
                "parameters fall in the open region ({}); pass --allow-open to proceed",
                verdict.rule
            ),
        ));
    }
    Ok(())
}

pub fn validate(io: &IoArgs, allow_open: bool) -> CliResult {
    let params = read_params(&io.input)?;
    let verdict = params.verdict()?;
    let mut meta = Meta::new(
        "validate",
        serde_json::to_value(ParamsDoc::from_params(&params))?,
    );
    meta.verdict = Some(verdict.clone());
    let doc = json!({ "meta": meta, "verdict": verdict });
    write_text(
        io.output.as_deref(),
        &(serde_json::to_string_pretty(&doc)? + "\n"),
    )?;
    open_problem_gate(&verdict, allow_open)
}

pub fn laplace(io: &IoArgs, seed: u64, grid: Option<&str>, format: OutputFormat) -> CliResult {
    let params = read_params(&io.input)?;
    let seed = resolve_seed(seed);
    let (count, scales) = parse_grid(grid, (10, &[0.1, 1.0, 10.0]))?;
    let d = params.dim();
    let grid = transform_grid(d, seed, count, &scales);

    let mut header = vec!["u_id".to_string(), "scale".to_string()];
    header.extend(matrix_headers("u", d));
    header.push("value".to_string());
    let mut rows = Vec::with_capacity(grid.len());
    let mut json_rows = Vec::with_capacity(grid.len());
    for (u_id, scale, u) in &grid {
        let value = params.laplace(u)?;
        let mut row = vec![u_id.clone(), fmt(*scale)];
        row.extend(matrix_cells(u.base()));
        row.push(fmt(value));
        rows.push(row);
        json_rows.push(json!({
            "u_id": u_id,
            "scale": scale,
            "u": rows_from_sym(u.base()),
            "value": value,
        }));
    }

    let mut meta = Meta::new(
        "laplace",
        serde_json::to_value(ParamsDoc::from_params(&params))?,
    )
    .seeded(seed);
    // The transform is a formula; it is evaluable whatever the verdict says,
    // so the verdict is stamped rather than enforced.
    meta.verdict = Some(params.verdict()?);
    write_table(
        io,
        format,
        &header,
        &rows,
        serde_json::Value::Array(json_rows),
        &meta,
    )
}

pub fn sample(
    io: &IoArgs,
    seed: u64,
    n: usize,
    allow_open: bool,
    format: OutputFormat,
) -> CliResult {
    if n == 0 {
        return Err(CliFailure::new(
            EXIT_INVALID_INPUT,
            "sample count must be at least 1",
        ));
    }
    let params = read_params(&io.input)?;
    let verdict = params.verdict()?;
    open_problem_gate(&verdict, allow_open)?;
    if verdict.status == ExistenceStatus::NotExists {
        return Err(CliFailure::new(
            EXIT_VERDICT_BLOCKED,
            format!(
                "no such probability law ({}); sampling refused",
                verdict.rule
            ),
        ));
    }

    let seed = resolve_seed(seed);
    let d = params.dim();
    let mut samples = Vec::with_capacity(n);
    let mut method_tags: Vec<String> = Vec::new();
    if verdict.status == ExistenceStatus::Trivial {
        // Point mass at zero.
        samples.resize(n, PsdMatrix::zeros(d));
        method_tags.push("exact".to_string());
    } else {
        let mut rng = RngState::from_seed(seed).rng();
        for _ in 0..n {
            let (x, method) = sample_noncentral(&params, &mut rng)?;
            let tag = method.tag().to_string();
            if !method_tags.contains(&tag) {
                method_tags.push(tag);
            }
            samples.push(x);
        }
    }

    let mut header = vec!["k".to_string()];
    header.extend(matrix_headers("x", d));
    let mut rows = Vec::with_capacity(n);
    let mut json_rows = Vec::with_capacity(n);
    for (k, x) in samples.iter().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(matrix_cells(x.base()));
        rows.push(row);
        json_rows.push(json!({ "k": k, "x": rows_from_sym(x.base()) }));
    }

    let mut meta = Meta::new(
        "sample",
        serde_json::to_value(ParamsDoc::from_params(&params))?,
    )
    .seeded(seed);
    meta.n = Some(n);
    meta.method_tags = Some(method_tags);
    meta.verdict = Some(verdict);
    write_table(
        io,
        format,
        &header,
        &rows,
        serde_json::Value::Array(json_rows),
        &meta,
    )
}

/// Process document with the optional simulation extras.
#[derive(serde::Deserialize)]
struct ProcessInputDoc {
    #[serde(flatten)]
    process: ProcessDoc,
    /// Initial state for `simulate`; zero matrix when omitted.
    x0: Option<Vec<Vec<f64>>>,
    /// Transform argument for `riccati`; identity when omitted.
    u: Option<Vec<Vec<f64>>>,
}

fn read_process(
    path: &Path,
    mode_override: Option<ModeArg>,
) -> Result<(WishartProcessParams, ProcessInputDoc), CliFailure> {
    let mut doc: ProcessInputDoc = read_json(path)?;
    if let Some(mode) = mode_override {
        doc.process.mode = mode.as_str().to_string();
    }
    let params = doc.process.to_params()?;
    Ok((params, doc))
}

pub fn simulate(
    io: &IoArgs,
    seed: u64,
    t: f64,
    steps: Option<usize>,
    mode: Option<ModeArg>,
    format: OutputFormat,
) -> CliResult {
    if t < 0.0 || !t.is_finite() {
        return Err(CliFailure::new(
            EXIT_INVALID_INPUT,
            format!("horizon {t} must be ≥ 0"),
        ));
    }
    let (params, doc) = read_process(&io.input, mode)?;
    let d = params.dim();
    let x0 = match &doc.x0 {
        Some(rows) => PsdMatrix::new(sym_from_rows(d, rows, "x0")?)?,
        None => PsdMatrix::zeros(d),
    };
    let steps =
        steps.unwrap_or_else(|| ((EULER_STEPS_PER_UNIT_TIME as f64 * t).ceil() as usize).max(1));
    if steps == 0 {
        return Err(CliFailure::new(
            EXIT_INVALID_INPUT,
            "steps must be at least 1",
        ));
    }
    let seed = resolve_seed(seed);
    let mut rng = RngState::from_seed(seed).rng();
    let path = sde_euler_path(&params, &x0, t, steps, &mut rng)?;

    let mut header = vec!["t".to_string()];
    header.extend(matrix_headers("x", d));
    let mut rows = Vec::with_capacity(path.states.len());
    let mut json_rows = Vec::with_capacity(path.states.len());
    for (time, state) in path.times.iter().zip(&path.states) {
        let mut row = vec![fmt(*time)];
        row.extend(matrix_cells(state.base()));
        rows.push(row);
        json_rows.push(json!({ "t": time, "x": rows_from_sym(state.base()) }));
    }

    let mut meta = Meta::new(
        "simulate",
        serde_json::to_value(ProcessDoc::from_params(&params))?,
    )
    .seeded(seed);
    meta.t = Some(t);
    meta.steps = Some(steps);
    write_table(
        io,
        format,
        &header,
        &rows,
        serde_json::Value::Array(json_rows),
        &meta,
    )
}

pub fn verify(io: &IoArgs, seed: u64, grid: Option<&str>, n: usize, allow_open: bool) -> CliResult {
    if n == 0 {
        return Err(CliFailure::new(
            EXIT_INVALID_INPUT,
            "sample count must be at least 1",
        ));
    }
    let params = read_params(&io.input)?;
    let verdict = params.verdict()?;
    open_problem_gate(&verdict, allow_open)?;
    let seed = resolve_seed(seed);
    let (count, scales) = parse_grid(grid, (10, &[0.5, 2.0]))?;
    let mut config = VerifyConfig::new(seed);
    config.n_samples = n;
    config.grid_directions = count;
    config.grid_scales = scales;
    let report = run_verify(&params, &config)?;
    write_text(
        io.output.as_deref(),
        &(serde_json::to_string_pretty(&report)? + "\n"),
    )
}

pub fn convert(io: &IoArgs, to: ConvertTarget) -> CliResult {
    let params = read_params(&io.input)?;
    let text = match to {
        ConvertTarget::Gamma => {
            serde_json::to_string_pretty(&ParamsDoc::from_params(&params))? + "\n"
        }
        ConvertTarget::Letac => {
            serde_json::to_string_pretty(&LetacDoc::from_params(&params.to_letac()?))? + "\n"
        }
    };
    write_text(io.output.as_deref(), &text)
}

pub fn riccati(
    io: &IoArgs,
    t: f64,
    steps: usize,
    mode: Option<ModeArg>,
    format: OutputFormat,
) -> CliResult {
    if t <= 0.0 || !t.is_finite() {
        return Err(CliFailure::new(
            EXIT_INVALID_INPUT,
            format!("horizon {t} must be > 0"),
        ));
    }
    if steps == 0 {
        return Err(CliFailure::new(
            EXIT_INVALID_INPUT,
            "steps must be at least 1",
        ));
    }
    let (params, doc) = read_process(&io.input, mode)?;
    let d = params.dim();
    let u = match &doc.u {
        Some(rows) => PsdMatrix::new(sym_from_rows(d, rows, "u")?)?,
        None => PsdMatrix::identity(d),
    };

    let table_rows = steps.min(50);
    let mut header = vec![
        "t".to_string(),
        "phi_closed".to_string(),
        "phi_rk".to_string(),
    ];
    header.extend(matrix_headers("psi_closed", d));
    header.extend(matrix_headers("psi_rk", d));
    header.push("max_rel_dev".to_string());

    let mut rows = Vec::with_capacity(table_rows);
    let mut json_rows = Vec::with_capacity(table_rows);
    for k in 1..=table_rows {
        let tk = t * k as f64 / table_rows as f64;
        let rk_steps = ((steps as f64 * k as f64 / table_rows as f64).ceil() as usize).max(1);
        let closed = params.char_exponents_closed(tk, &u)?;
        let rk = params.riccati_integrate(tk, &u, rk_steps)?;
        let phi_dev = (closed.phi - rk.phi).abs() / closed.phi.abs().max(1.0);
        let psi_dev = closed.psi.max_abs_diff(&rk.psi) / closed.psi.max_abs().max(1.0);
        let dev = phi_dev.max(psi_dev);

        let mut row = vec![fmt(tk), fmt(closed.phi), fmt(rk.phi)];
        row.extend(matrix_cells(&closed.psi));
        row.extend(matrix_cells(&rk.psi));
        row.push(fmt(dev));
        rows.push(row);
        json_rows.push(json!({
            "t": tk,
            "phi_closed": closed.phi,
            "phi_rk": rk.phi,
            "psi_closed": rows_from_sym(&closed.psi),
            "psi_rk": rows_from_sym(&rk.psi),
            "max_rel_dev": dev,
        }));
    }

    let mut meta = Meta::new(
        "riccati",
        serde_json::to_value(ProcessDoc::from_params(&params))?,
    );
    meta.t = Some(t);
    meta.steps = Some(steps);
    write_table(
        io,
        format,
        &header,
        &rows,
        serde_json::Value::Array(json_rows),
        &meta,
    )
}
