//! Command-line front end. All logic lives in [`run`] so that it can be
//! driven from tests with in-memory streams.
//!
//! Exit codes: 0 success, 1 malformed input, 2 violated precondition (or a
//! certificate that fails verification). Errors are written to stderr as a
//! single JSON line `{"error":{"code":...,"message":...}}`.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::crystal::{phi_invert, phi_map, transport, DeformationPoint};
use crate::error::Error;
use crate::hensel::isotropic_combination;
use crate::lattice::WittLattice;
use crate::lift::{
    lift_finite_height, lift_ss_nonsymplectic, lift_ss_symplectic, verify_certificate, SlopeDecomposition,
    SupersingularInput,
};
use crate::period::{check_conditions, complete_period_line, FrobeniusCheck};
use crate::ring::RingContext;
use crate::spectral::{char_poly, eigen_split, verify_isometry, Isometry};
use crate::synthetic::perturb_certificate;
use crate::wire::*;

#[derive(Debug, Parser)]
#[command(
    name = "k3lift",
    version,
    about = "Exact truncated Witt-vector tools for lifting K3 automorphisms"
)]
struct Cli {
    /// Ring context `p,n,m[,c0:c1:...:1]`; overrides any `ctx` in the input.
    #[arg(long, global = true)]
    ctx: Option<String>,
    /// Read the JSON input from FILE instead of stdin.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Seed for randomized demos.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    FiniteHeight,
    SsNonsymplectic,
    SsSymplectic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenspace splitting of a finite-order matrix.
    EigSplit,
    /// Isotropic correction u + p a v.
    IsotropicLift,
    /// Complete period coordinates to an isotropic line.
    PeriodComplete,
    /// Local Torelli map of a deformation point.
    PhiMap,
    /// Inverse local Torelli map of period coordinates.
    PhiInvert,
    /// Build a lifting certificate.
    LiftSearch {
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Re-verify a lifting certificate.
    Verify {
        /// Corrupt the generator by p^(n-1) times a seeded random vector first.
        #[arg(long)]
        perturb: bool,
    },
    /// Arithmetic facts.
    Constraints {
        #[arg(long, value_name = "N")]
        phi: Option<u64>,
        #[arg(long, num_args = 2, value_names = ["N", "P"])]
        sigma: Option<Vec<u64>>,
        #[arg(long = "scan-remark38", value_name = "P_MAX")]
        scan_remark38: Option<u64>,
        #[arg(long, value_name = "P")]
        thresholds: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug)]
struct Failure {
    code: String,
    message: String,
    exit: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code().to_string(),
            message: e.to_string(),
            exit: if e.is_precondition() { 2 } else { 1 },
        }
    }
}

fn input_error(code: &str, message: impl Into<String>) -> Failure {
    Failure {
        code: code.to_string(),
        message: message.into(),
        exit: 1,
    }
}

enum Rendered {
    Json(serde_json::Value),
    Text(String),
}

type Out = std::result::Result<(Rendered, i32), Failure>;

/// Runs the CLI with the given arguments (including the program name) and
/// streams; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            report(stderr, &input_error("Usage", e.render().to_string().trim()));
            return 1;
        }
    };
    match dispatch(&cli, stdin) {
        Ok((rendered, code)) => {
            match rendered {
                Rendered::Json(value) => {
                    let mut text = String::new();
                    render(&value, 0, &mut text);
                    let _ = writeln!(stdout, "{text}");
                }
                Rendered::Text(text) => {
                    let _ = write!(stdout, "{text}");
                }
            }
            if code != 0 {
                report(
                    stderr,
                    &Failure {
                        code: "VerificationFailed".into(),
                        message: "certificate does not verify".into(),
                        exit: code,
                    },
                );
            }
            code
        }
        Err(f) => {
            report(stderr, &f);
            f.exit
        }
    }
}

/// Pretty JSON with objects indented and arrays without nested objects kept
/// on one line, so scalars, vectors and matrix rows stay readable.
pub fn render(value: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |k: usize| "  ".repeat(k);
    let flat = |v: &Value| {
        !matches!(v, Value::Object(_)) && !(matches!(v, Value::Array(a) if a.iter().any(|x| x.is_object())))
    };
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push_str(": ");
                render(v, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !flat(value) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(v, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&serde_json::to_string(other).expect("serializable")),
    }
}

fn report(stderr: &mut dyn Write, f: &Failure) {
    let v = serde_json::json!({"error": {"code": f.code, "message": f.message}});
    let _ = writeln!(stderr, "{v}");
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> std::result::Result<serde_json::Value, Failure> {
    let mut text = String::new();
    match &cli.input {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| input_error("Io", format!("cannot read {}: {e}", path.display())))?;
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| input_error("Io", format!("cannot read stdin: {e}")))?;
        }
    }
    serde_json::from_str(&text).map_err(|e| input_error("Json", e.to_string()))
}

// `kind`, when present, must be one of `kinds`
fn parse_payload<T: DeserializeOwned>(value: serde_json::Value, kinds: &[&str]) -> std::result::Result<T, Failure> {
    if let Some(k) = value.get("kind").and_then(|k| k.as_str()) {
        if !kinds.contains(&k) {
            return Err(input_error(
                "KindMismatch",
                format!("input is of kind {k:?}, expected one of {kinds:?}"),
            ));
        }
    }
    serde_json::from_value(value).map_err(|e| input_error("Json", e.to_string()))
}

fn resolve_ctx(cli: &Cli, from_input: &Option<ContextDto>) -> std::result::Result<Arc<RingContext>, Failure> {
    let dto = match (&cli.ctx, from_input) {
        (Some(s), _) => ContextDto::parse(s)?,
        (None, Some(c)) => c.clone(),
        (None, None) => {
            return Err(input_error(
                "InvalidContext",
                "no ring context: pass --ctx or a ctx field",
            ))
        }
    };
    Ok(dto.build()?)
}

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("serializable")
}

fn json<T: Serialize>(t: &T) -> Rendered {
    Rendered::Json(to_value(t))
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Out {
    if let Some(s) = &cli.ctx {
        ContextDto::parse(s)?;
    }
    match &cli.command {
        Command::Constraints {
            phi,
            sigma,
            scan_remark38,
            thresholds,
            format,
        } => constraints(*phi, sigma.as_deref(), *scan_remark38, *thresholds, *format),
        Command::EigSplit => eig_split_cmd(cli, read_input(cli, stdin)?),
        Command::IsotropicLift => isotropic_cmd(cli, read_input(cli, stdin)?),
        Command::PeriodComplete => period_cmd(cli, read_input(cli, stdin)?),
        Command::PhiMap => phi_map_cmd(cli, read_input(cli, stdin)?),
        Command::PhiInvert => phi_invert_cmd(cli, read_input(cli, stdin)?),
        Command::LiftSearch { mode } => lift_cmd(cli, *mode, read_input(cli, stdin)?),
        Command::Verify { perturb } => verify_cmd(cli, *perturb, read_input(cli, stdin)?),
    }
}

#[derive(Deserialize)]
struct EigSplitIn {
    ctx: Option<ContextDto>,
    matrix: MatrixDto,
    order: u64,
    gram: Option<MatrixDto>,
}

#[derive(Serialize)]
struct ComponentOut {
    eigenvalue: ScalarDto,
    rank: usize,
    basis: Vec<VectorDto>,
    projector: MatrixDto,
}

#[derive(Serialize)]
struct EigSplitOut {
    kind: &'static str,
    ctx: ContextDto,
    order: u64,
    char_poly: VectorDto,
    components: Vec<ComponentOut>,
    direct_sum: bool,
}

fn eig_split_cmd(cli: &Cli, value: serde_json::Value) -> Out {
    let inp: EigSplitIn = parse_payload(value, &["eig-split"])?;
    let ctx = resolve_ctx(cli, &inp.ctx)?;
    let a = matrix_in(&ctx, &inp.matrix)?;
    if let Some(g) = &inp.gram {
        let l = WittLattice::new(matrix_in(&ctx, g)?)?;
        if !verify_isometry(&l, &a) {
            return Err(Error::InvalidInput("matrix does not preserve the Gram form".into()).into());
        }
    }
    let split = eigen_split(&a, inp.order)?;
    let out = EigSplitOut {
        kind: "eig-split",
        ctx: ContextDto::of(&ctx),
        order: inp.order,
        char_poly: vector_out(&char_poly(&a).coeffs),
        direct_sum: split.is_direct_sum(),
        components: split
            .components
            .iter()
            .map(|c| ComponentOut {
                eigenvalue: scalar_out(&c.eigenvalue),
                rank: c.basis.len(),
                basis: vectors_out(&c.basis),
                projector: matrix_out(&c.projector),
            })
            .collect(),
    };
    Ok((json(&out), 0))
}

#[derive(Deserialize)]
struct IsotropicIn {
    ctx: Option<ContextDto>,
    gram: MatrixDto,
    u: VectorDto,
    v: VectorDto,
}

#[derive(Serialize)]
struct IsotropicOut {
    kind: &'static str,
    ctx: ContextDto,
    a: ScalarDto,
    w: VectorDto,
    norm: ScalarDto,
}

fn isotropic_cmd(cli: &Cli, value: serde_json::Value) -> Out {
    let inp: IsotropicIn = parse_payload(value, &["isotropic-lift"])?;
    let ctx = resolve_ctx(cli, &inp.ctx)?;
    let l = WittLattice::new(matrix_in(&ctx, &inp.gram)?)?;
    let lift = isotropic_combination(&l, &vector_in(&ctx, &inp.u)?, &vector_in(&ctx, &inp.v)?)?;
    let out = IsotropicOut {
        kind: "isotropic-lift",
        ctx: ContextDto::of(&ctx),
        a: scalar_out(&lift.a),
        norm: scalar_out(&l.norm(&lift.w)),
        w: vector_out(&lift.w),
    };
    Ok((json(&out), 0))
}

#[derive(Deserialize)]
struct PeriodIn {
    ctx: Option<ContextDto>,
    frame: FrameDto,
    coordinates: VectorDto,
    frobenius: Option<MatrixDto>,
}

#[derive(Serialize)]
struct ConditionsOut {
    reduces_to_hodge_line: bool,
    isotropic: bool,
    valuations_ok: bool,
    frobenius: String,
}

#[derive(Serialize)]
struct PeriodOut {
    kind: &'static str,
    ctx: ContextDto,
    frame: FrameDto,
    coordinates: VectorDto,
    top: ScalarDto,
    generator: VectorDto,
    conditions: ConditionsOut,
}

fn period_cmd(cli: &Cli, value: serde_json::Value) -> Out {
    let inp: PeriodIn = parse_payload(value, &["period-complete"])?;
    let ctx = resolve_ctx(cli, &inp.ctx)?;
    let frame = inp.frame.build(&ctx)?;
    let line = complete_period_line(&frame, &vector_in(&ctx, &inp.coordinates)?)?;
    let frob = inp.frobenius.as_ref().map(|f| matrix_in(&ctx, f)).transpose()?;
    let report = check_conditions(&line, frob.as_ref())?;
    let frobenius = match report.frobenius {
        FrobeniusCheck::NotChecked => "not checked: automatic for lines in a filtration-compatible frame".to_string(),
        FrobeniusCheck::Passed => "passed".to_string(),
        FrobeniusCheck::Failed { valuation } => format!("failed: valuation {valuation:?}"),
        FrobeniusCheck::Indeterminate => "indeterminate at this precision".to_string(),
    };
    let out = PeriodOut {
        kind: "period-complete",
        ctx: ContextDto::of(&ctx),
        frame: inp.frame.clone(),
        coordinates: vector_out(line.coordinates()),
        top: scalar_out(line.top()),
        generator: vector_out(&line.generator()),
        conditions: ConditionsOut {
            reduces_to_hodge_line: report.reduces_to_hodge_line,
            isotropic: report.isotropic,
            valuations_ok: report.valuations_ok,
            frobenius,
        },
    };
    Ok((json(&out), 0))
}

#[derive(Deserialize)]
struct PhiMapIn {
    ctx: Option<ContextDto>,
    connection: ConnectionDto,
    point: VectorDto,
}

#[derive(Serialize)]
struct PhiMapOut {
    kind: &'static str,
    ctx: ContextDto,
    connection: ConnectionDto,
    point: VectorDto,
    transport: VectorDto,
    target: VectorDto,
}

fn phi_map_cmd(cli: &Cli, value: serde_json::Value) -> Out {
    let inp: PhiMapIn = parse_payload(value, &["phi-map", "phi-invert"])?;
    let ctx = resolve_ctx(cli, &inp.ctx)?;
    let conn = inp.connection.build(&ctx)?;
    let g = DeformationPoint::new(vector_in(&ctx, &inp.point)?)?;
    let h = transport(&conn, &g, &conn.frame().hodge_vector())?;
    let target = phi_map(&conn, &g)?;
    let out = PhiMapOut {
        kind: "phi-map",
        ctx: ContextDto::of(&ctx),
        connection: inp.connection.clone(),
        point: vector_out(g.entries()),
        transport: vector_out(&h),
        target: vector_out(&target),
    };
    Ok((json(&out), 0))
}

#[derive(Deserialize)]
struct PhiInvertIn {
    ctx: Option<ContextDto>,
    connection: ConnectionDto,
    target: VectorDto,
}

#[derive(Serialize)]
struct PhiInvertOut {
    kind: &'static str,
    ctx: ContextDto,
    connection: ConnectionDto,
    target: VectorDto,
    point: VectorDto,
    iterations: usize,
}

fn phi_invert_cmd(cli: &Cli, value: serde_json::Value) -> Out {
    let inp: PhiInvertIn = parse_payload(value, &["phi-invert", "phi-map"])?;
    let ctx = resolve_ctx(cli, &inp.ctx)?;
    let conn = inp.connection.build(&ctx)?;
    let target = vector_in(&ctx, &inp.target)?;
    let inv = phi_invert(&conn, &target)?;
    let out = PhiInvertOut {
        kind: "phi-invert",
        ctx: ContextDto::of(&ctx),
        connection: inp.connection.clone(),
        target: vector_out(&target),
        point: vector_out(inv.point.entries()),
        iterations: inv.iterations,
    };
    Ok((json(&out), 0))
}

#[derive(Deserialize)]
struct SlopesIn {
    lower: Vec<VectorDto>,
    #[serde(default)]
    middle: Vec<VectorDto>,
    upper: Vec<VectorDto>,
    frobenius: Option<MatrixDto>,
}

#[derive(Deserialize)]
struct LiftIn {
    ctx: Option<ContextDto>,
    gram: MatrixDto,
    isometry: MatrixDto,
    order: u64,
    hodge: VectorDto,
    slopes: Option<SlopesIn>,
    ample: Option<VectorDto>,
    artin_invariant: Option<u32>,
    symplectic: Option<bool>,
}

fn lift_cmd(cli: &Cli, mode: Mode, value: serde_json::Value) -> Out {
    let inp: LiftIn = parse_payload(value, &["lift-search"])?;
    let ctx = resolve_ctx(cli, &inp.ctx)?;
    let l = WittLattice::new(matrix_in(&ctx, &inp.gram)?)?;
    let a = matrix_in(&ctx, &inp.isometry)?;
    let hodge = vector_in(&ctx, &inp.hodge)?;
    let cert = match mode {
        Mode::FiniteHeight => {
            let s = inp
                .slopes
                .as_ref()
                .ok_or_else(|| input_error("InvalidInput", "finite-height mode needs a slopes field"))?;
            let sd = SlopeDecomposition::new(
                l.clone(),
                vectors_in(&ctx, &s.lower)?,
                vectors_in(&ctx, &s.middle)?,
                vectors_in(&ctx, &s.upper)?,
                s.frobenius.as_ref().map(|f| matrix_in(&ctx, f)).transpose()?,
            )?;
            let iso = Isometry::new(l, a, None)?;
            lift_finite_height(&sd, &iso, inp.order, &hodge)?
        }
        Mode::SsNonsymplectic | Mode::SsSymplectic => {
            let ample = inp
                .ample
                .as_ref()
                .ok_or_else(|| input_error("InvalidInput", "supersingular modes need an ample field"))?;
            let ss = SupersingularInput::new(
                l,
                a,
                hodge,
                vector_in(&ctx, ample)?,
                inp.artin_invariant,
                inp.symplectic,
            )?;
            match mode {
                Mode::SsNonsymplectic => lift_ss_nonsymplectic(&ss, inp.order)?,
                _ => lift_ss_symplectic(&ss, inp.order)?,
            }
        }
    };
    let valid = verify_certificate(&cert).valid;
    Ok((json(&CertificateDto::of(&cert)), if valid { 0 } else { 2 }))
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyOut {
    valid: bool,
    perturbed: bool,
    checks: Vec<CheckOut>,
}

fn verify_cmd(cli: &Cli, perturb: bool, value: serde_json::Value) -> Out {
    let dto: CertificateDto = parse_payload(value, &["certificate"])?;
    let mut cert = dto.build()?;
    if let Some(s) = &cli.ctx {
        let ctx = ContextDto::parse(s)?.build()?;
        if *ctx != **cert.lattice.ctx() {
            return Err(Error::ContextMismatch.into());
        }
    }
    if perturb {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        cert = perturb_certificate(&cert, &mut rng);
    }
    let report = verify_certificate(&cert);
    let out = VerifyOut {
        valid: report.valid,
        perturbed: perturb,
        checks: report
            .checks
            .into_iter()
            .map(|c| CheckOut {
                name: c.name,
                passed: c.passed,
            })
            .collect(),
    };
    Ok((json(&out), if out.valid { 0 } else { 2 }))
}

fn constraints(
    phi: Option<u64>,
    sigma: Option<&[u64]>,
    scan: Option<u64>,
    thresholds: Option<u64>,
    format: Format,
) -> Out {
    let given = [phi.is_some(), sigma.is_some(), scan.is_some(), thresholds.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(input_error(
            "Usage",
            "constraints takes exactly one of --phi, --sigma, --scan-remark38, --thresholds",
        ));
    }
    let value = if let Some(n) = phi {
        if n == 0 {
            return Err(input_error("InvalidInput", "--phi needs N >= 1"));
        }
        serde_json::json!({"phi": arith::euler_phi(n)})
    } else if let Some(s) = sigma {
        to_value(&arith::sigma_check(s[0], s[1]))
    } else if let Some(p_max) = scan {
        if p_max < 61 {
            return Err(input_error("InvalidInput", "--scan-remark38 needs P_MAX >= 61"));
        }
        to_value(&arith::remark38_scan(p_max))
    } else {
        let p = thresholds.expect("one flag given");
        if p < 3 || !arith::is_prime(p) {
            return Err(input_error("InvalidInput", "--thresholds needs an odd prime"));
        }
        to_value(&arith::surface_thresholds(p))
    };
    match format {
        Format::Json => Ok((Rendered::Json(value), 0)),
        Format::Table => Ok((Rendered::Text(table(&value)), 0)),
    }
}

// flat `key  value` rows; arrays of objects become one row per element
fn table(value: &serde_json::Value) -> String {
    let mut out = String::new();
    let obj = value.as_object().expect("object output");
    for (k, v) in obj {
        match v {
            serde_json::Value::Array(rows) if rows.iter().all(|r| r.is_object()) => {
                if let Some(first) = rows.first().and_then(|r| r.as_object()) {
                    out.push_str(&first.keys().cloned().collect::<Vec<_>>().join("\t"));
                    out.push('\n');
                }
                for r in rows {
                    let cells: Vec<String> = r.as_object().expect("object").values().map(|c| c.to_string()).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
            }
            _ => out.push_str(&format!("{k}\t{v}\n")),
        }
    }
    out
}
