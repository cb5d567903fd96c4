//! Batch command-line interface.
//!
//! Exit codes: 0 on success, 1 for domain errors (diagnostic JSON on
//! stderr), 2 for malformed input or usage errors.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::gcy::plane::{cross_pairings, four_space, is_hk_pair, plane_of, PositivePlane};
use crate::gcy::random::{random_gcy, GcyKind};
use crate::gcy::reduction::classical_reduction;
use crate::gcy::{classify, validate, GcyClass, NormalForm};
use crate::hodge::{verify_eta_hodge_isometry, BrauerData, HodgeData};
use crate::hodge::twisted_transcendental;
use crate::json::{
    array, field, parse_class, parse_crat_h2, parse_document, parse_rat_h2, parse_sublattice, schema, sparse_text,
    vec_to_json, JsonError, ToJson,
};
use crate::lattice::Sublattice;
use crate::moduli::{hermitian_h, lagrangian_check, tangent_basis, tangent_omega_rank};
use crate::selftest;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Symplectic,
    Complex,
}

#[derive(Parser, Debug)]
#[command(name = "mukai", version, about = "Exact computations in the Mukai lattice of a K3 surface")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Box radius for the enumeration oracle.
    #[arg(long = "box", global = true, default_value_t = 2)]
    pub box_radius: i64,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a generalized Calabi-Yau class.
    Classify { input: Option<PathBuf> },
    /// Picard lattice of a class.
    Pic { input: Option<PathBuf> },
    /// Transcendental lattice of a class.
    Transc { input: Option<PathBuf> },
    /// Twisted transcendental lattice from {"tx","B"} or {"sigma","B"}.
    Twisted { input: Option<PathBuf> },
    /// Checks that eta is a Hodge isometry for {"sigma","B"}.
    EtaVerify { input: Option<PathBuf> },
    /// Checks whether {"phi","phi_prime"} is a generalized K3 pair.
    Gk3Check { input: Option<PathBuf> },
    /// Classical reduction of a generalized K3 pair {"phi","phi_prime"}.
    Reduce { input: Option<PathBuf> },
    /// H and Omega of {"x","y"}, or the tangent data at {"phi"}.
    Omega { input: Option<PathBuf> },
    /// Lagrangian check for {"omega","alphas"}.
    Lagrangian { input: Option<PathBuf> },
    /// Random valid class.
    Gen {
        #[arg(long, value_enum, default_value = "symplectic")]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        size: i64,
    },
    /// Runs the oracle gates.
    Selftest,
}

#[derive(Debug)]
pub enum CliError {
    Input(JsonError),
    Io(String),
    Domain { kind: String, message: String, detail: Value },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Input(JsonError::Syntax { line, column, message }) => {
                json!({"error": "syntax", "line": line, "column": column, "message": message})
            }
            CliError::Input(JsonError::Schema { path, message }) => {
                json!({"error": "schema", "path": path, "message": message})
            }
            CliError::Io(m) => json!({"error": "io", "message": m}),
            CliError::Domain { kind, message, detail } => {
                json!({"error": "domain", "kind": kind, "message": message, "detail": detail})
            }
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Input(e)
    }
}

fn domain<E: std::fmt::Debug + std::fmt::Display>(e: E) -> CliError {
    let debug = format!("{e:?}");
    let kind = debug.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or("").to_string();
    CliError::Domain { kind, message: e.to_string(), detail: Value::Null }
}

/// Command output in both renderings.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Exit code on success paths; selftest failures use 1.
    pub code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string(&self.json).expect("serializable")),
            Format::Text => self.text.clone(),
        }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Value, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
            s
        }
    };
    Ok(parse_document(&text)?)
}

fn gcy_at(v: &Value, path: &str) -> Result<GcyClass, CliError> {
    validate(&parse_class(v, path)?.to_complex()).map_err(domain)
}

fn plane_json(p: &PositivePlane) -> Value {
    json!({"u": vec_to_json(p.u()), "v": vec_to_json(p.v()), "ratio_d": p.ratio_d().to_json()})
}

fn lattice_text(title: &str, l: &Sublattice) -> String {
    let mut s = format!("{title}: rank {}, {}\n", l.rank(), if l.is_saturated() { "saturated" } else { "not saturated" });
    for row in l.rows() {
        let _ = writeln!(s, "  {}", sparse_text(&row));
    }
    s
}

fn opt_json<T: ToJson>(v: &Option<Vec<T>>) -> Value {
    v.as_ref().map_or(Value::Null, |x| vec_to_json(x))
}

fn cmd_classify(v: &Value) -> Result<Output, CliError> {
    let phi = gcy_at(v, "$")?;
    let nf = classify(&phi).map_err(domain)?;
    let text = match &nf {
        NormalForm::Symplectic { lambda, b, omega } => format!(
            "symplectic\n  lambda = {lambda}\n  B = {}\n  omega = {}\n",
            sparse_text(b),
            sparse_text(omega)
        ),
        NormalForm::Complex { sigma, b } => {
            format!("complex\n  sigma = {}\n  B = {}\n", sparse_text(sigma), sparse_text(b))
        }
    };
    Ok(Output::ok(nf.to_json(), text))
}

fn cmd_lattice(v: &Value, transc: bool) -> Result<Output, CliError> {
    let data = HodgeData::new(&gcy_at(v, "$")?);
    let (name, l) = if transc { ("T", &data.transc) } else { ("pic", &data.pic) };
    Ok(Output::ok(l.to_json(), lattice_text(name, l)))
}

fn cmd_twisted(v: &Value) -> Result<Output, CliError> {
    let b = parse_rat_h2(field(v, "B", "$")?, "$.B")?;
    let (tx, r) = match (v.get("tx"), v.get("sigma")) {
        (Some(tx), None) => (parse_sublattice(tx, "$.tx")?, None),
        (None, Some(sigma)) => {
            let data = BrauerData::new(&parse_crat_h2(sigma, "$.sigma")?, &b).map_err(domain)?;
            (data.tx, Some(data.order_r))
        }
        _ => return Err(schema("$", "expected exactly one of \"tx\" or \"sigma\"").into()),
    };
    let twisted = twisted_transcendental(&tx, &b).map_err(domain)?;
    let index = twisted.index_in(&tx).ok_or_else(|| domain("twisted lattice has infinite index"))?;
    let mut out = json!({"tx": tx.to_json(), "twisted": twisted.to_json(), "index": index.to_json()});
    let mut text = lattice_text("T(X)", &tx) + &lattice_text("T(X, alpha_B)", &twisted);
    let _ = writeln!(text, "index = {index}");
    if let Some(r) = r {
        out["r"] = r.to_json();
        let _ = writeln!(text, "r = {r}");
    }
    Ok(Output::ok(out, text))
}

fn cmd_eta(v: &Value) -> Result<Output, CliError> {
    let sigma = parse_crat_h2(field(v, "sigma", "$")?, "$.sigma")?;
    let b = parse_rat_h2(field(v, "B", "$")?, "$.B")?;
    let rep = verify_eta_hodge_isometry(&sigma, &b).map_err(domain)?;
    let json = json!({
        "eta_bijective": rep.eta_bijective,
        "isometry": rep.isometry,
        "hodge": rep.hodge,
        "index": rep.index.to_json(),
        "r": rep.r.to_json(),
    });
    let text = format!(
        "eta bijective: {}\nisometry: {}\nhodge: {}\nindex = {}\nr = {}\n",
        rep.eta_bijective, rep.isometry, rep.hodge, rep.index, rep.r
    );
    Ok(Output::ok(json, text))
}

fn pair_input(v: &Value) -> Result<(GcyClass, GcyClass), CliError> {
    Ok((gcy_at(field(v, "phi", "$")?, "$.phi")?, gcy_at(field(v, "phi_prime", "$")?, "$.phi_prime")?))
}

fn cmd_gk3(v: &Value) -> Result<Output, CliError> {
    let (phi, phi_prime) = pair_input(v)?;
    let pairings = cross_pairings(&plane_of(&phi), &plane_of(&phi_prime));
    let orthogonal = pairings.iter().all(num_traits::Zero::is_zero);
    let norms_equal = phi.norm() == phi_prime.norm();
    let ok = is_hk_pair(&phi, &phi_prime).is_ok();
    let json = json!({
        "is_gk3": ok,
        "orthogonal": orthogonal,
        "norms_equal": norms_equal,
        "pairings": vec_to_json(&pairings),
        "norms": [phi.norm().to_json(), phi_prime.norm().to_json()],
    });
    let text = format!(
        "generalized K3 pair: {ok}\n  planes orthogonal: {orthogonal}\n  norms: {} and {}\n",
        phi.norm(),
        phi_prime.norm()
    );
    Ok(Output::ok(json, text))
}

fn cmd_reduce(v: &Value) -> Result<Output, CliError> {
    let (phi, phi_prime) = pair_input(v)?;
    let pair = is_hk_pair(&phi, &phi_prime).map_err(|e| {
        let detail = json!({"orthogonal": e.orthogonal, "norms_equal": e.norms_equal, "pairings": vec_to_json(&e.pairings)});
        CliError::Domain { kind: "HkError".into(), message: e.to_string(), detail }
    })?;
    let red = classical_reduction(&four_space(&pair)).map_err(domain)?;
    let plane = red.classical_plane();
    let json = json!({
        "H": plane_json(&red.h),
        "sigma": opt_json(&red.sigma_if_rational),
        "complement": plane_json(&red.complement),
        "complex_type_complement": red.complex_type_complement,
        "B_prime": opt_json(&red.b_prime),
        "omega_direction": opt_json(&red.omega_direction),
        "omega_scale_sq": red.omega_scale_sq.as_ref().map_or(Value::Null, ToJson::to_json),
        "omega": opt_json(&red.omega_if_rational),
        "classical_plane": plane.as_ref().map_or(Value::Null, |[a, b]| json!([vec_to_json(a), vec_to_json(b)])),
    });
    let mut text = format!("H: u = {}\n   v = {}\n", sparse_text(red.h.u()), sparse_text(red.h.v()));
    match &red.b_prime {
        Some(b) => {
            let _ = writeln!(text, "B' = {}", sparse_text(b));
        }
        None => text.push_str("complement is of complex type\n"),
    }
    if let Some(w) = &red.omega_direction {
        let _ = writeln!(
            text,
            "omega = t * ({}) with t^2 = {}",
            sparse_text(w),
            red.omega_scale_sq.as_ref().map_or("?".into(), ToString::to_string)
        );
    }
    Ok(Output::ok(json, text))
}

fn cmd_omega(v: &Value) -> Result<Output, CliError> {
    if let (Some(x), Some(y)) = (v.get("x"), v.get("y")) {
        let x = parse_class(x, "$.x")?.to_complex();
        let y = parse_class(y, "$.y")?.to_complex();
        let h = hermitian_h(&x, &y);
        let text = format!("H = {h}\nOmega = {}\n", h.im);
        return Ok(Output::ok(json!({"H": h.to_json(), "Omega": h.im.to_json()}), text));
    }
    if let Some(phi) = v.get("phi") {
        let phi = gcy_at(phi, "$.phi")?;
        let dim = tangent_basis(&phi).len();
        let rank = tangent_omega_rank(&phi);
        let text = format!("tangent dimension = {dim}\nOmega rank (real) = {rank}\n");
        return Ok(Output::ok(json!({"tangent_dim": dim, "omega_rank": rank}), text));
    }
    Err(schema("$", "expected {\"x\",\"y\"} or {\"phi\"}").into())
}

fn cmd_lagrangian(v: &Value) -> Result<Output, CliError> {
    let omega = parse_rat_h2(field(v, "omega", "$")?, "$.omega")?;
    let alphas = array(field(v, "alphas", "$")?, "$.alphas", None)?
        .iter()
        .enumerate()
        .map(|(i, a)| parse_rat_h2(a, &format!("$.alphas[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = lagrangian_check(&omega, &alphas).map_err(domain)?;
    let json = json!({"raw": rep.raw, "projected": rep.projected, "holds": rep.holds()});
    let text = format!("raw images isotropic: {}\nprojected images isotropic: {}\n", rep.raw, rep.projected);
    Ok(Output::ok(json, text))
}

fn cmd_gen(kind: Kind, size: i64, seed: u64) -> Result<Output, CliError> {
    let kind = match kind {
        Kind::Symplectic => GcyKind::Symplectic,
        Kind::Complex => GcyKind::Complex,
    };
    let phi = random_gcy(seed, kind, size);
    let x = phi.phi();
    let text = format!("r = {}\nc = {}\ns = {}\n", x.r(), sparse_text(x.c()), x.s());
    Ok(Output::ok(x.to_json(), text))
}

fn cmd_selftest(seed: u64, box_radius: i64) -> Result<Output, CliError> {
    if !(0..=3).contains(&box_radius) {
        return Err(domain(crate::oracle::OracleError::BadRadius(box_radius)));
    }
    let gates = selftest::run(seed, box_radius);
    let passed = gates.iter().all(|g| g.passed);
    let mut text = String::new();
    for g in &gates {
        let _ = writeln!(text, "{} {}: {}", if g.passed { "PASS" } else { "FAIL" }, g.name, g.detail);
    }
    let json = json!({"passed": passed, "gates": gates.iter().map(selftest::GateResult::to_json).collect::<Vec<_>>()});
    Ok(Output { json, text, code: if passed { 0 } else { 1 } })
}

/// Runs a parsed command; `stdin` is read only when no input file is given.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output, CliError> {
    match &cli.command {
        Command::Classify { input } => cmd_classify(&read_input(input, stdin)?),
        Command::Pic { input } => cmd_lattice(&read_input(input, stdin)?, false),
        Command::Transc { input } => cmd_lattice(&read_input(input, stdin)?, true),
        Command::Twisted { input } => cmd_twisted(&read_input(input, stdin)?),
        Command::EtaVerify { input } => cmd_eta(&read_input(input, stdin)?),
        Command::Gk3Check { input } => cmd_gk3(&read_input(input, stdin)?),
        Command::Reduce { input } => cmd_reduce(&read_input(input, stdin)?),
        Command::Omega { input } => cmd_omega(&read_input(input, stdin)?),
        Command::Lagrangian { input } => cmd_lagrangian(&read_input(input, stdin)?),
        Command::Gen { kind, size } => cmd_gen(*kind, *size, cli.seed),
        Command::Selftest => cmd_selftest(cli.seed, cli.box_radius),
    }
}

/// Parses `args`, runs, writes output and diagnostics; returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, &mut std::io::stdin()) {
        Ok(out) => {
            let rendered = out.render(cli.format);
            let written = match &cli.out {
                Some(p) => std::fs::write(p, rendered).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.code,
                Err(m) => {
                    eprintln!("{}", CliError::Io(m).to_json());
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
