//! Subcommand implementations. Each returns the process exit code.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use serde::Serialize;
use xlaguerre::exactnum::{complex_roots, format_rat, sturm_nonneg_root_count, Poly};
use xlaguerre::factorization::{verify_suite, Certificate, Residual, SuiteOptions};
use xlaguerre::quadrature::{gram_matrix, GramReport, QuadConfig};
use xlaguerre::schrodinger::{build_potentials, isospectral_study, sample_potential, PotentialRecord};
use xlaguerre::xcore::{ParamsRecord, PolyRecord, XLParams};
use xlaguerre::Error;

use crate::args::{Format, OutputArgs, ParamArgs, SampleGrid};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Off-diagonal and diagonal tolerance for `gram`'s pass/fail exit code.
const GRAM_CHECK_TOL: f64 = 1e-8;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(io::Error),
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                Error::InvalidParams(_)
                | Error::DegenerateParams(_)
                | Error::WeightNotRegular(_)
                | Error::Parse(_)
                | Error::PoleInC { .. },
            ) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Output(e) => write!(f, "output error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

type CliResult = Result<u8, CliError>;

fn params_of(p: &ParamArgs) -> Result<XLParams, CliError> {
    Ok(XLParams::new(p.k.clone(), p.m1, p.m2)?)
}

fn write_out(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn json_pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// One `#` metadata line followed by CSV rows.
fn csv_text(meta: &str, header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| CliError::Output(e.to_string()))?)
        .map_err(|e| CliError::Output(e.to_string()))?;
    Ok(format!("# {meta}\n{body}"))
}

fn meta(cmd: &str, p: &XLParams, extra: &str) -> String {
    let base = format!("xlaguerre {cmd} k={} m1={} m2={}", format_rat(p.k()), p.m1(), p.m2());
    if extra.is_empty() {
        base
    } else {
        format!("{base} {extra}")
    }
}

fn range_text(r: &RangeInclusive<usize>) -> String {
    format!("{}..{}", r.start(), r.end())
}

fn join_coeffs(p: &Poly) -> String {
    p.to_strings().join(" ")
}

pub fn gen(params: &ParamArgs, n: Option<RangeInclusive<usize>>, out: &OutputArgs) -> CliResult {
    let p = params_of(params)?;
    let range = n.unwrap_or(p.ell()..=p.ell() + 8);
    let mut records = Vec::new();
    let mut code = EXIT_OK;
    for n in range.clone() {
        let y = p.xlaguerre(n)?;
        if y.degree() != Some(n) || y.leading() != p.expected_leading(n) {
            eprintln!("degree or leading coefficient of hat L_{n} is off");
            code = EXIT_FAILED;
        }
        records.push(PolyRecord::new(&p, n, y));
    }
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = String::new();
            for r in &records {
                s.push_str(&serde_json::to_string(r)?);
                s.push('\n');
            }
            s
        }
        Format::Csv => csv_text(
            &meta("gen", &p, &format!("n={}", range_text(&range))),
            &["n", "degree", "leading", "coeffs"],
            records
                .iter()
                .map(|r| vec![r.n.to_string(), r.degree.to_string(), format_rat(&r.leading), join_coeffs(&r.coeffs)])
                .collect(),
        )?,
    };
    write_out(out, &text)?;
    Ok(code)
}

pub struct VerifyArgs {
    pub n: Option<RangeInclusive<usize>>,
    pub seed: u64,
    pub tol: f64,
    pub inject_fault: bool,
}

pub fn verify(params: &ParamArgs, v: VerifyArgs, out: &OutputArgs) -> CliResult {
    let p = params_of(params)?;
    let mut opts = SuiteOptions::for_params(&p);
    if let Some(r) = v.n {
        opts.n_range = r;
    }
    opts.constraint_tol = v.tol;
    opts.seed = v.seed;
    opts.inject_fault = v.inject_fault;
    let certs = verify_suite(&p, &opts)?;
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => json_pretty(&certs)?,
        Format::Csv => csv_text(
            &meta("verify", &p, &format!("n={} seed={} tol={}", range_text(&opts.n_range), v.seed, v.tol)),
            &["identity", "n", "status", "max_residual"],
            certs.iter().map(cert_row).collect(),
        )?,
    };
    write_out(out, &text)?;
    Ok(if certs.iter().all(Certificate::passed) { EXIT_OK } else { EXIT_FAILED })
}

fn cert_row(c: &Certificate) -> Vec<String> {
    let status = serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let residual = match &c.residual {
        None => String::new(),
        Some(Residual::Coeffs(p)) => join_coeffs(p),
        Some(Residual::Complex(v)) => {
            let m = v.iter().map(|[re, im]| re.hypot(*im)).fold(0.0, f64::max);
            m.to_string()
        }
    };
    vec![c.identity.clone(), c.n.map(|n| n.to_string()).unwrap_or_default(), status, residual]
}

pub struct GramArgs {
    pub nmax: Option<usize>,
    pub radius: Option<f64>,
    pub panels: usize,
    pub nodes: usize,
    pub tol: f64,
    pub fixed_radius: bool,
}

#[derive(Serialize)]
struct GramOutput<'a> {
    config: &'a QuadConfig,
    report: &'a GramReport,
}

pub fn gram(params: &ParamArgs, g: GramArgs, out: &OutputArgs) -> CliResult {
    let p = params_of(params)?;
    let nmax = g.nmax.unwrap_or(p.ell() + 5);
    let mut cfg = QuadConfig::default_for(nmax);
    if let Some(r) = g.radius {
        cfg.radius = r;
    }
    cfg.panels = g.panels;
    cfg.nodes_per_panel = g.nodes;
    cfg.tol = g.tol;
    cfg.grow_radius = !g.fixed_radius;
    let report = gram_matrix(&p, nmax, &cfg)?;
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => json_pretty(&GramOutput { config: &cfg, report: &report })?,
        Format::Csv => {
            let mut rows = Vec::new();
            for (a, &n) in report.degrees.iter().enumerate() {
                for (b, &j) in report.degrees.iter().enumerate() {
                    rows.push(vec![
                        n.to_string(),
                        j.to_string(),
                        report.matrix[a][b].to_string(),
                        report.errors[a][b].to_string(),
                    ]);
                }
            }
            let extra = format!(
                "nmax={nmax} radius={} panels={} nodes={} tol={}",
                cfg.radius, cfg.panels, cfg.nodes_per_panel, cfg.tol
            );
            csv_text(&meta("gram", &p, &extra), &["n", "j", "value", "error"], rows)?
        }
    };
    write_out(out, &text)?;
    let d = &report.diagnosis;
    Ok(if d.max_offdiag_ratio <= GRAM_CHECK_TOL && d.max_diag_rel_error <= GRAM_CHECK_TOL {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

#[derive(Serialize)]
struct Sample {
    x: f64,
    u0: f64,
    u2: f64,
}

#[derive(Serialize)]
struct PotentialOutput {
    params: ParamsRecord,
    u0: PotentialRecord,
    u2: PotentialRecord,
    samples: Vec<Sample>,
}

pub fn potential(params: &ParamArgs, grid: SampleGrid, out: &OutputArgs) -> CliResult {
    let p = params_of(params)?;
    let data = build_potentials(&p)?;
    let xs = grid.points();
    let u0 = sample_potential(&data.u0, &xs);
    let u2 = sample_potential(&data.u2, &xs);
    let samples: Vec<Sample> =
        xs.iter().zip(u0.iter().zip(&u2)).map(|(&x, (&a, &b))| Sample { x, u0: a, u2: b }).collect();
    let text = match out.format.unwrap_or(Format::Csv) {
        Format::Json => json_pretty(&PotentialOutput {
            params: p.record(),
            u0: PotentialRecord::from(&data.u0),
            u2: PotentialRecord::from(&data.u2),
            samples,
        })?,
        Format::Csv => csv_text(
            &meta("potential", &p, &format!("grid={}:{}:{}", grid.start, grid.end, grid.count)),
            &["x", "u0", "u2"],
            samples.iter().map(|s| vec![s.x.to_string(), s.u0.to_string(), s.u2.to_string()]).collect(),
        )?,
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

pub fn spectrum(params: &ParamArgs, h: f64, count: usize, out: &OutputArgs) -> CliResult {
    let p = params_of(params)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParams(format!("grid step must be positive, got {h}")).into());
    }
    let report = isospectral_study(&p, h, count)?;
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => json_pretty(&report)?,
        Format::Csv => {
            let rows = (0..count)
                .map(|i| {
                    vec![
                        i.to_string(),
                        report.u0[0].eigenvalues[i].to_string(),
                        report.u2[0].eigenvalues[i].to_string(),
                        report.u0[1].eigenvalues[i].to_string(),
                        report.u2[1].eigenvalues[i].to_string(),
                    ]
                })
                .collect();
            let extra = format!("h={} L={} count={count}", report.u0[0].h, report.u0[0].grid.x_max);
            csv_text(&meta("spectrum", &p, &extra), &["level", "u0_h", "u2_h", "u0_h2", "u2_h2"], rows)?
        }
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RootsOutput {
    params: ParamsRecord,
    polynomial: String,
    coeffs: Poly,
    roots: Vec<[f64; 2]>,
    nonneg_real_roots: usize,
}

pub fn roots(params: &ParamArgs, n: Option<usize>, tol: f64, out: &OutputArgs) -> CliResult {
    let p = params_of(params)?;
    let (name, poly) = match n {
        Some(n) => (format!("hat L_{n}"), p.xlaguerre(n)?),
        None => ("eta12".to_string(), p.eta12()),
    };
    let roots: Vec<[f64; 2]> = complex_roots(&poly, tol)?.into_iter().map(|z| [z.re, z.im]).collect();
    let nonneg = sturm_nonneg_root_count(&poly);
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => json_pretty(&RootsOutput {
            params: p.record(),
            polynomial: name,
            coeffs: poly,
            roots,
            nonneg_real_roots: nonneg,
        })?,
        Format::Csv => csv_text(
            &meta("roots", &p, &format!("polynomial=\"{name}\" nonneg_real_roots={nonneg}")),
            &["re", "im"],
            roots.iter().map(|[re, im]| vec![re.to_string(), im.to_string()]).collect(),
        )?,
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}
