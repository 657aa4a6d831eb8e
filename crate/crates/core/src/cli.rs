//! Command-line front end. Every verb writes one JSON document to stdout; `--pretty`
//! adds an indented rendering on stderr.
//!
//! Exit codes: 0 success or accept, 1 a checker found a violation, 2 usage or input error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::forms::{
    anisotropic_kernel, invariants, is_anisotropic, split_rank, witt_decompose, FormSpec, FormType,
    SpaceClass, SpaceKind,
};
use crate::kudla::{
    anti_split_tower_u, kernel_report, kudla_xi, tables_json, EnhancedGroup, PsiConvention,
};
use crate::localfield::{CoefficientSystem, DivisionKind, LocalField};
use crate::oracle::{default_level_budget, isotropy_search, reduce_diagonal, regenerate_constants};
use crate::theta::{
    arch_case, arch_case3_check, conserve_predict, default_tower, n_trivial_antisplit,
    trivial_interval, Case3Assignment, OccurrenceQuery, VerdictStatus,
};
use crate::verify::{acceptance_suite, field_battery, report_json};
use crate::witt::{
    anti_split_tower0, check_conserv0, split_tower, tower_group, tower_of, WittTower,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "witt-theta",
    version,
    about = "Witt towers, Kudla characters and first-occurrence arithmetic"
)]
struct Cli {
    /// Also render the result on stderr.
    #[arg(long, global = true)]
    pretty: bool,
    /// File of `key=value` lines supplying defaults for flags not given on the command line.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Invariants of a diagonal form.
    Classify(FormArgs),
    /// Witt decomposition into anisotropic kernel plus hyperbolic planes.
    Decompose(FormArgs),
    /// Witt towers of a type with degrees and the group CW_0.
    Towers(TowerArgs),
    /// Enhanced Witt group and Kudla character of an element.
    Kudla(KudlaArgs),
    /// Predicted first occurrence on the partner tower.
    Conserve(ConserveArgs),
    /// Verdict on first occurrences over one coset in archimedean case 3.
    #[command(name = "check-arch3")]
    CheckArch3(Arch3Args),
    /// All structure tables for a field.
    Tables(FieldArg),
    /// The verification battery.
    Check(CheckArgs),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleVerb),
}

#[derive(Args, Debug)]
struct FieldArg {
    /// `p3`, `Q_3`, `real`, `complex` or `{"kind":"padic","p":3}`.
    #[arg(long, default_value = "p3")]
    field: String,
}

#[derive(Args, Debug)]
struct TypeArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long = "type")]
    ty: String,
    /// Quadratic datum `d` of `E = F(sqrt d)` for (skew-)Hermitian types.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
}

#[derive(Args, Debug)]
struct FormArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Comma-separated integer Gram entries.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "dim")]
    diag: Option<String>,
    /// Dimension, for types whose forms carry no further invariant.
    #[arg(long)]
    dim: Option<i64>,
}

#[derive(Args, Debug)]
struct TowerArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Largest |signature index| listed for real types.
    #[arg(long, default_value_t = 4)]
    bound: i64,
}

#[derive(Args, Debug)]
struct KudlaArgs {
    #[command(flatten)]
    field: FieldArg,
    /// `D,eps` with D one of `F`, `H` (quaternions) or an integer d for `F(sqrt d)`; eps is the U-side sign.
    #[arg(long, allow_hyphen_values = true)]
    pair: String,
    /// `m,a`: the V-side form `<1,...,1,a>` of dimension m (just `m` for dimension-only types).
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    /// Coordinates in the presentation of the enhanced group.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "element")]
    coords: Option<String>,
    /// Square class `a` of the additive character `x -> psi(a x)`.
    #[arg(long = "psi-scale", allow_hyphen_values = true)]
    psi_scale: Option<i64>,
}

#[derive(Args, Debug)]
struct ConserveArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long)]
    utype: String,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long = "dimU")]
    dim_u: i64,
    /// Known first occurrence index on the given tower.
    #[arg(long)]
    known: i64,
    /// `t1`/`auto` (least degree compatible with --known), `split`, `anti`, `diag:a,b,..`, `dim:n` or `sig:p,q`.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    tower: String,
    /// Parity of dim V for which the representation is genuine.
    #[arg(long)]
    parity: Option<i64>,
}

#[derive(Args, Debug)]
struct Arch3Args {
    /// JSON file `{"u_type":..,"dim_u":..,"values":{"<signature index>": n,..}}`.
    #[arg(long)]
    assignment: PathBuf,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    field: FieldArg,
    /// Restrict the per-type checks to one kind.
    #[arg(long = "type", conflicts_with = "all_types")]
    ty: Option<String>,
    /// Run the per-type checks on every kind (the default).
    #[arg(long = "all-types")]
    all_types: bool,
    /// Run the full acceptance suite instead of the per-field battery.
    #[arg(long, conflicts_with_all = ["ty", "all_types"])]
    acceptance: bool,
}

#[derive(Subcommand, Debug)]
enum OracleVerb {
    /// Hensel-certified isotropy search for a diagonal form over Q_p.
    Isotropy {
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
        #[arg(long)]
        p: u64,
        /// Level budget; defaults to WITT_THETA_PRECISION or 24.
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Recompute the frozen constants and compare with the compiled table.
    #[command(name = "regen-constants")]
    RegenConstants {
        /// Write the regenerated source here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// The outcome of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub code: i32,
    pub stdout: Value,
    pub stderr: Option<String>,
}

struct Failure {
    code: i32,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let kind = match &e {
            Error::InvalidField(_) => "invalid_field",
            Error::UnsupportedField(_) => "unsupported_field",
            Error::FieldMismatch(_) => "field_mismatch",
            Error::InvalidCoefficientSystem(_) => "invalid_coefficient_system",
            Error::InvalidForm(_) => "invalid_form",
            Error::TypeMismatch(_) => "type_mismatch",
            Error::InvalidClass(_) => "invalid_class",
            Error::InvalidGroup(_) => "invalid_group",
            Error::Numerics(_) => "numerics",
            Error::Inconsistent(_) => "inconsistent",
            Error::NotApplicable(_) => "not_applicable",
            Error::Parse(_) => "parse",
        };
        let code = if matches!(e, Error::Inconsistent(_)) {
            EXIT_REJECT
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            body: json!({ "error": { "kind": kind, "message": e.to_string() } }),
        }
    }
}

fn parse_failure(message: String, position: Option<Value>) -> Failure {
    let mut err = json!({ "kind": "parse", "message": message });
    if let Some(p) = position {
        err["position"] = p;
    }
    Failure {
        code: EXIT_USAGE,
        body: json!({ "error": err }),
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Runs the command line `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let argv = match apply_config(argv) {
        Ok(a) => a,
        Err(f) => {
            return Output {
                code: f.code,
                stdout: f.body,
                stderr: None,
            }
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(
                e.kind(),
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let code = if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand {
                    EXIT_USAGE
                } else {
                    EXIT_OK
                };
                return Output {
                    code,
                    stdout: json!({ "usage": e.to_string() }),
                    stderr: None,
                };
            }
            let usage = Cli::try_parse_from(["witt-theta", "--help"])
                .err()
                .map(|h| h.to_string())
                .unwrap_or_default();
            return Output {
                code: EXIT_USAGE,
                stdout: json!({ "error": { "kind": "usage", "message": e.to_string().trim(), "usage": usage } }),
                stderr: None,
            };
        }
    };
    let pretty = cli.pretty;
    let (code, stdout) = match dispatch(cli.verb) {
        Ok((code, v)) => (code, v),
        Err(f) => (f.code, f.body),
    };
    let stderr = pretty.then(|| render(&stdout, 0));
    Output {
        code,
        stdout,
        stderr,
    }
}

/// Appends `--key value` for every config entry whose flag is absent from `argv`.
fn apply_config(mut argv: Vec<String>) -> Res<Vec<String>> {
    let Some(i) = argv
        .iter()
        .position(|a| a == "--config" || a.starts_with("--config="))
    else {
        return Ok(argv);
    };
    let path = match argv[i].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => argv
            .get(i + 1)
            .cloned()
            .ok_or_else(|| parse_failure("--config needs a path".into(), None))?,
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Failure {
        code: EXIT_USAGE,
        body: json!({ "error": { "kind": "io", "message": format!("{path}: {e}") } }),
    })?;
    let mut extra = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            parse_failure(
                format!("{path}: expected key=value"),
                Some(json!({ "line": lineno + 1 })),
            )
        })?;
        let key = key.trim();
        let value = value.trim().trim_matches('"');
        let flag = format!("--{key}");
        if argv
            .iter()
            .any(|a| a == &flag || a.starts_with(&format!("{flag}=")))
        {
            continue;
        }
        match value {
            "true" => extra.push(flag),
            "false" => {}
            v => extra.push(format!("{flag}={v}")),
        }
    }
    argv.extend(extra);
    Ok(argv)
}

fn dispatch(verb: Verb) -> Res<(i32, Value)> {
    match verb {
        Verb::Classify(a) => classify(&a).map(|v| (EXIT_OK, v)),
        Verb::Decompose(a) => decompose(&a).map(|v| (EXIT_OK, v)),
        Verb::Towers(a) => towers(&a).map(|v| (EXIT_OK, v)),
        Verb::Kudla(a) => kudla(&a).map(|v| (EXIT_OK, v)),
        Verb::Conserve(a) => conserve(&a),
        Verb::CheckArch3(a) => check_arch3(&a),
        Verb::Tables(a) => Ok((EXIT_OK, tables_json(field(&a)?)?)),
        Verb::Check(a) => check(&a),
        Verb::Oracle(o) => oracle(o),
    }
}

fn field(a: &FieldArg) -> Res<LocalField> {
    Ok(LocalField::parse(&a.field)?)
}

fn form_type(a: &TypeArgs) -> Res<FormType> {
    Ok(FormType::parse(&a.ty, field(&a.field)?, a.d)?)
}

/// Parses `1,-1,3`, reporting the index of the first bad entry.
fn int_list(flag: &str, s: &str) -> Res<Vec<i64>> {
    s.split(',')
        .enumerate()
        .map(|(i, x)| {
            x.trim().parse::<i64>().map_err(|_| {
                parse_failure(
                    format!("--{flag}: entry {i} ('{}') is not an integer", x.trim()),
                    Some(json!({ "flag": flag, "index": i })),
                )
            })
        })
        .collect()
}

fn form_spec(a: &FormArgs) -> Res<FormSpec> {
    let ty = form_type(&a.ty)?;
    match (&a.diag, a.dim) {
        (Some(d), _) => Ok(FormSpec::diagonal(ty, int_list("diag", d)?)?),
        (None, Some(n)) => Ok(FormSpec::of_dim(ty, n)?),
        (None, None) => Err(parse_failure("a form needs --diag or --dim".into(), None)),
    }
}

fn classify(a: &FormArgs) -> Res<Value> {
    let spec = form_spec(a)?;
    let c = invariants(&spec)?;
    Ok(json!({
        "input": { "type": spec.ty.to_json(), "reduced_entries": spec.reduced_entries()? },
        "class": c.to_json(),
        "split_rank": split_rank(&c)?,
        "anisotropic": is_anisotropic(&c)?,
        "anisotropic_kernel": anisotropic_kernel(&c)?.to_json(),
    }))
}

fn decompose(a: &FormArgs) -> Res<Value> {
    let spec = form_spec(a)?;
    let c = invariants(&spec)?;
    let (kernel, rank) = witt_decompose(&c)?;
    Ok(json!({
        "input": { "type": spec.ty.to_json(), "reduced_entries": spec.reduced_entries()? },
        "class": c.to_json(),
        "anisotropic_kernel": kernel.to_json(),
        "hyperbolic_planes": rank,
        "tower": tower_of(&c)?.to_json(),
    }))
}

fn towers(a: &TowerArgs) -> Res<Value> {
    let ty = form_type(&a.ty)?;
    let tg = tower_group(ty, Some(a.bound))?;
    let mut v = tg.to_json();
    v["d"] = json!(ty.d_max());
    v["split_tower"] = split_tower(ty).to_json();
    if let Ok(anti) = anti_split_tower0(ty) {
        v["anti_split_tower"] = anti.to_json();
    }
    if tg.order().is_some() {
        v["conservation"] = check_conserv0(ty)?.to_json();
    }
    Ok(v)
}

fn coefficient_system(f: LocalField, pair: &str) -> Res<CoefficientSystem> {
    let (d, eps) = pair.rsplit_once(',').ok_or_else(|| {
        parse_failure(
            format!("--pair '{pair}': expected D,eps"),
            Some(json!({ "flag": "pair" })),
        )
    })?;
    let eps: i8 = eps.trim().parse().map_err(|_| {
        parse_failure(
            format!("--pair: sign '{}' is not 1 or -1", eps.trim()),
            Some(json!({ "flag": "pair", "index": 1 })),
        )
    })?;
    let division = match d.trim() {
        "F" | "f" | "field" => DivisionKind::Field,
        "H" | "h" | "quat" | "quaternion" => DivisionKind::Quaternion,
        t => {
            let n = t
                .trim_start_matches("d=")
                .trim_start_matches('E')
                .parse::<i64>()
                .map_err(|_| {
                    parse_failure(
                        format!("--pair: division algebra '{t}' is not F, H or an integer"),
                        Some(json!({ "flag": "pair", "index": 0 })),
                    )
                })?;
            DivisionKind::Quadratic(f.class_of(n)?)
        }
    };
    Ok(CoefficientSystem::new(f, division, eps)?)
}

fn kudla(a: &KudlaArgs) -> Res<Value> {
    let f = field(&a.field)?;
    let cs = coefficient_system(f, &a.pair)?;
    let psi = match a.psi_scale {
        Some(s) => PsiConvention::with_scale(f, s)?,
        None => PsiConvention::standard(f),
    };
    let eg = EnhancedGroup::new(&cs, psi)?;
    let mut out = json!({
        "enhanced_group": eg.to_json()?,
        "psi_scale": eg.psi.scale.to_json(),
        "kernel": kernel_report(&eg)?.to_json(),
    });
    out["anti_split"] = match anti_split_tower_u(&eg, &eg.psi) {
        Ok(t) => t.to_json(),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    if f.is_archimedean() {
        out["archimedean_case"] = json!(arch_case(eg.v_type.partner())?.name());
    }
    let x = match (&a.element, &a.coords) {
        (Some(e), _) => {
            let c = element_class(eg.v_type, e)?;
            let x = eg
                .from_parts(&eg.w0.coords(&c)?, &eg.extra.zero())
                .ok_or_else(|| {
                    Failure::from(Error::InvalidClass(
                        "the element fails the parity condition of the fibre product".into(),
                    ))
                })?;
            Some(x)
        }
        (None, Some(c)) => Some(crate::abgroups::GroupElem(int_list("coords", c)?)),
        (None, None) => None,
    };
    if let Some(x) = x {
        let chi = kudla_xi(&eg, &x, &eg.psi)?;
        out["element"] =
            json!({ "coords": eg.group.normalize(&x.0).0, "class": eg.class(&x)?.to_json() });
        out["xi"] = json!({ "coords": chi.0, "character": eg.chars.describe(&chi)? });
    }
    Ok(out)
}

fn element_class(v: FormType, spec: &str) -> Res<SpaceClass> {
    let parts = int_list("element", spec)?;
    let m = parts[0];
    let form = match parts.as_slice() {
        [_] => FormSpec::of_dim(v, m)?,
        [_, a] if m >= 1 => {
            let mut diag = vec![1; (m - 1) as usize];
            diag.push(*a);
            FormSpec::diagonal(v, diag)?
        }
        [0, 1] => FormSpec::diagonal(v, vec![])?,
        _ => {
            return Err(parse_failure(
                format!("--element '{spec}': expected m or m,a with m >= 1"),
                Some(json!({ "flag": "element" })),
            ))
        }
    };
    Ok(invariants(&form)?)
}

fn tower_arg(u: FormType, spec: &str, known: i64) -> Res<WittTower> {
    let v = u.partner();
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let t =
        match head {
            "t1" | "auto" => default_tower(u, known)?,
            "split" => split_tower(v),
            "anti" => anti_split_tower0(v)?,
            "diag" => tower_of(&invariants(&FormSpec::diagonal(
                v,
                int_list("tower", rest)?,
            )?)?)?,
            "dim" => tower_of(&invariants(&FormSpec::of_dim(
                v,
                rest.trim().parse().map_err(|_| {
                    parse_failure(
                        format!("--tower '{spec}': bad dimension"),
                        Some(json!({ "flag": "tower" })),
                    )
                })?,
            )?)?)?,
            "sig" => match int_list("tower", rest)?.as_slice() {
                [p, q] => tower_of(&SpaceClass::from_signature(v, *p, *q)?)?,
                _ => {
                    return Err(parse_failure(
                        format!("--tower '{spec}': expected sig:p,q"),
                        Some(json!({ "flag": "tower" })),
                    ))
                }
            },
            _ => return Err(parse_failure(
                format!(
                    "--tower '{spec}': expected t1, auto, split, anti, diag:.., dim:n or sig:p,q"
                ),
                Some(json!({ "flag": "tower" })),
            )),
        };
    Ok(t)
}

fn conserve(a: &ConserveArgs) -> Res<(i32, Value)> {
    let f = field(&a.field)?;
    let u = FormType::parse(&a.utype, f, a.d)?;
    let tower = tower_arg(u, &a.tower, a.known)?;
    let q = OccurrenceQuery {
        u_type: u,
        dim_u: a.dim_u,
        tower,
        known_n: Some(a.known),
        parity: a.parity,
    };
    let p = conserve_predict(&q)?;
    let mut v = p.to_json();
    v["query"] = json!({
        "u_type": u.to_json(),
        "dim_u": a.dim_u,
        "tower": tower.to_json(),
        "known_n": a.known,
    });
    let mut trivial = n_trivial_antisplit(u, a.dim_u)?.to_json();
    trivial["on_query_tower"] = trivial_interval(u, a.dim_u, &tower)?.to_json();
    trivial["on_partner_tower"] = trivial_interval(u, a.dim_u, &p.partner)?.to_json();
    v["trivial_representation"] = trivial;
    Ok((if p.consistent() { EXIT_OK } else { EXIT_REJECT }, v))
}

fn check_arch3(a: &Arch3Args) -> Res<(i32, Value)> {
    let path = a.assignment.display().to_string();
    let text = std::fs::read_to_string(&a.assignment).map_err(|e| Failure {
        code: EXIT_USAGE,
        body: json!({ "error": { "kind": "io", "message": format!("{path}: {e}") } }),
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| {
        parse_failure(
            format!("{path}: {e}"),
            Some(json!({ "line": e.line(), "column": e.column() })),
        )
    })?;
    let assignment = Case3Assignment::from_json(&v)?;
    let verdict = arch_case3_check(&assignment)?;
    let code = if verdict.status == VerdictStatus::Reject {
        EXIT_REJECT
    } else {
        EXIT_OK
    };
    let mut out = verdict.to_json();
    out["assignment"] = assignment.to_json();
    Ok((code, out))
}

fn check(a: &CheckArgs) -> Res<(i32, Value)> {
    let criteria = if a.acceptance {
        acceptance_suite()
    } else {
        let kind = a.ty.as_deref().map(SpaceKind::parse).transpose()?;
        field_battery(field(&a.field)?, kind)
    };
    let mut report = report_json(&criteria);
    if !a.acceptance {
        report["field"] = json!(field(&a.field)?);
    }
    let code = if criteria.iter().all(|c| c.passed()) {
        EXIT_OK
    } else {
        EXIT_REJECT
    };
    Ok((code, report))
}

fn oracle(o: OracleVerb) -> Res<(i32, Value)> {
    match o {
        OracleVerb::Isotropy { diag, p, kmax } => {
            let diag = int_list("diag", &diag)?;
            LocalField::padic(p)?;
            let kmax = kmax.unwrap_or_else(default_level_budget);
            let r = isotropy_search(&diag, p, kmax)?;
            Ok((
                EXIT_OK,
                json!({
                    "diag": diag,
                    "p": p,
                    "k_max": kmax,
                    "reduced": reduce_diagonal(&diag, p),
                    "isotropic": r.is_isotropic(),
                    "certificate": serde_json::to_value(&r).map_err(|e| Failure::from(Error::Parse(e.to_string())))?,
                }),
            ))
        }
        OracleVerb::RegenConstants { output } => {
            let fresh = regenerate_constants()?;
            let frozen = include_str!("constants.rs");
            let changed: Vec<Value> = fresh
                .lines()
                .zip(frozen.lines())
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(i, (a, b))| json!({ "line": i + 1, "frozen": b, "regenerated": a }))
                .collect();
            let identical = fresh.trim_end() == frozen.trim_end();
            if let Some(path) = &output {
                std::fs::write(path, &fresh).map_err(|e| Failure {
                    code: EXIT_USAGE,
                    body: json!({ "error": { "kind": "io", "message": format!("{}: {e}", path.display()) } }),
                })?;
            }
            Ok((
                if identical { EXIT_OK } else { EXIT_REJECT },
                json!({
                    "identical": identical,
                    "changed_lines": changed,
                    "frozen_lines": frozen.lines().count(),
                    "regenerated_lines": fresh.lines().count(),
                    "written_to": output.map(|p| p.display().to_string()),
                }),
            ))
        }
    }
}

/// Indented `key: value` rendering.
fn render(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                    format!("{pad}{k}:\n{}", render(x, indent + 1))
                }
                _ => format!("{pad}{k}: {}\n", scalar(x)),
            })
            .collect(),
        Value::Array(a) => a
            .iter()
            .map(|x| match x {
                Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                    format!("{pad}-\n{}", render(x, indent + 1))
                }
                _ => format!("{pad}- {}\n", scalar(x)),
            })
            .collect(),
        x => format!("{pad}{}\n", scalar(x)),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Output {
        run(std::iter::once("witt-theta").chain(args.iter().copied()))
    }

    #[test]
    fn classify_example() {
        let o = go(&[
            "classify",
            "--field",
            r#"{"kind":"padic","p":3}"#,
            "--type",
            "symmetric",
            "--diag",
            "1,-1,3",
        ]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(o.stdout["class"]["dim"], 3);
        assert_eq!(o.stdout["split_rank"], 1);
        assert_eq!(
            o.stdout["input"]["reduced_entries"]
                .as_array()
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn conserve_example() {
        let o = go(&[
            "conserve",
            "--utype",
            "symplectic",
            "--dimU",
            "2",
            "--known",
            "3",
            "--tower",
            "t1",
        ]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(o.stdout["predicted_n"], 5);
        assert_eq!(o.stdout["trivial_representation"]["n_trivial_antisplit"], 8);
    }

    #[test]
    fn errors_and_usage() {
        let o = go(&["frobnicate"]);
        assert_eq!(o.code, 2);
        assert!(o.stdout["error"]["usage"]
            .as_str()
            .unwrap()
            .contains("classify"));
        let o = go(&["classify", "--type", "symmetric", "--diag", "1,x,3"]);
        assert_eq!(o.code, 2);
        assert_eq!(o.stdout["error"]["position"]["index"], 1);
        let o = go(&[
            "classify",
            "--field",
            "p4",
            "--type",
            "symmetric",
            "--diag",
            "1",
        ]);
        assert_eq!(o.code, 2);
        let o = go(&[
            "conserve",
            "--utype",
            "symplectic",
            "--dimU",
            "2",
            "--known",
            "5",
            "--tower",
            "split",
        ]);
        assert_eq!(o.code, 1);
    }

    #[test]
    fn kudla_and_tables() {
        let o = go(&[
            "kudla",
            "--field",
            "p3",
            "--pair",
            "F,-1",
            "--element",
            "2,3",
            "--psi-scale",
            "2",
        ]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout["xi"]["character"].is_object());
        assert_eq!(o.stdout["kernel"]["kernel_order"], 2);
        let o = go(&["kudla", "--field", "real", "--pair", "F,-1"]);
        assert_eq!(o.stdout["anti_split"]["kind"], "kernel_generator");
        let o = go(&["tables", "--field", "p5"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout["rows"].as_array().unwrap().len() >= 8);
    }

    #[test]
    fn towers_and_decompose() {
        let o = go(&["towers", "--field", "p3", "--type", "hermitian", "--d", "3"]);
        assert_eq!(o.stdout["order"], 4);
        assert_eq!(o.stdout["conservation"]["passed"], true);
        let o = go(&[
            "decompose",
            "--field",
            "p5",
            "--type",
            "symmetric",
            "--diag",
            "1,-1,1,2",
        ]);
        assert_eq!(o.stdout["hyperbolic_planes"], 1);
        assert_eq!(o.stdout["anisotropic_kernel"]["dim"], 2);
    }

    #[test]
    fn check_field_passes() {
        let o = go(&["check", "--field", "p3", "--all-types"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(o.stdout["total_failures"], 0);
    }

    #[test]
    fn arch3_file_and_config() {
        let dir = std::env::temp_dir().join(format!("witt-theta-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let good = dir.join("good.json");
        std::fs::write(
            &good,
            r#"{"u_type":"hermitian","dim_u":0,"values":{"0":0,"2":2,"-2":2}}"#,
        )
        .unwrap();
        let o = go(&["check-arch3", "--assignment", good.to_str().unwrap()]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(o.stdout["verdict"], "accept");
        let bad = dir.join("bad.json");
        std::fs::write(
            &bad,
            r#"{"u_type":"hermitian","dim_u":0,"values":{"0":0,"2":0}}"#,
        )
        .unwrap();
        let o = go(&["check-arch3", "--assignment", bad.to_str().unwrap()]);
        assert_eq!(o.code, 1);
        let broken = dir.join("broken.json");
        std::fs::write(&broken, "{\n \"u_type\": }").unwrap();
        let o = go(&["check-arch3", "--assignment", broken.to_str().unwrap()]);
        assert_eq!(o.code, 2);
        assert_eq!(o.stdout["error"]["position"]["line"], 2);
        let cfg = dir.join("cfg");
        std::fs::write(&cfg, "# defaults\nfield = p5\npretty = true\n").unwrap();
        let o = go(&[
            "--config",
            cfg.to_str().unwrap(),
            "classify",
            "--type",
            "symmetric",
            "--diag",
            "1,2",
        ]);
        assert_eq!(o.stdout["class"]["field"]["p"], 5);
        assert!(o.stderr.is_some());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn oracle_verbs() {
        let o = go(&[
            "oracle", "isotropy", "--diag", "1,1,1", "--p", "5", "--kmax", "6",
        ]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(o.stdout["isotropic"], true);
        let o = go(&["oracle", "regen-constants"]);
        assert_eq!(o.stdout["identical"], true);
    }
}
