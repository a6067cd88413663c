//! Command-line surface for the quadleib library: identity and invariance
//! checking, the extension constructors with their validators, core
//! extraction, the built-in catalog with its verification harness,
//! derivation-space dimensions and fingerprints.
//!
//! Exit codes: 0 success / claims hold, 1 claims or verifications fail,
//! 2 malformed input.

use clap::{Args, Parser, Subcommand};
use quadleib::algebra::{Algebra, IdentityKind};
use quadleib::bilinear::{
    cartan, check_invariance, killing, signature_class, Invariance, KillingKind, Metric,
};
use quadleib::catalog;
use quadleib::construct::{
    construct_cotangent, construct_extension, construct_lorentz_l, construct_metrised_commutative,
    construct_metrised_from_quadratic, construct_nondeg_l, derivation_spaces, double_extension,
    validate_extension, CotangentKind,
};
use quadleib::core::{classify, fingerprint, Branch, Fingerprint, Side};
use quadleib::exactlin::{rat_from_string, rat_to_string, Subspace};
use quadleib::json;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quadleib",
    version,
    about = "Exact-arithmetic toolkit for Leibniz algebras with invariant metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CommonOut {
    /// Output format for the report.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks, invariance checks, Killing forms, Cartan
    /// verdicts and the fingerprint on an algebra file.
    Check {
        /// Algebra file: either a bare algebra or {"algebra":…, "metric":…}.
        path: PathBuf,
        /// Metric file (overrides a bundled metric).
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Claims that must hold for exit code 0. Repeatable. One of:
        /// left-leibniz, right-leibniz, symmetric-leibniz, lie, not-lie,
        /// L-invariant, R-invariant, assoc-invariant, solvable,
        /// not-solvable, semisimple, nilpotent, euclidean, lorentzian.
        #[arg(long = "expect")]
        expect: Vec<String>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Build an algebra and metric from construction data.
    Construct {
        /// One of: double-ext, L, R, SYM, cotangent, metrised, lorentz-L,
        /// nondeg-L.
        kind: String,
        /// Construction data file (schema depends on the kind).
        datapath: PathBuf,
        /// For L/R/SYM: print the violated-equation list instead of
        /// constructing.
        #[arg(long)]
        validate: bool,
        /// Write the constructed {"algebra":…, "metric":…} bundle here
        /// instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Core extraction and structural classification.
    Core {
        path: PathBuf,
        #[arg(long)]
        metric: Option<PathBuf>,
        #[arg(long, default_value = "L")]
        side: String,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Access the built-in catalog.
    Catalog {
        #[command(subcommand)]
        sub: CatalogCmd,
    },
    /// Verify every catalog entry against its claims at the default
    /// parameter samples; exit nonzero iff an undocumented discrepancy
    /// appears.
    VerifyTables {
        /// Master seed for the randomized transport spot-check.
        #[arg(long, default_value_t = quadleib::sample::MASTER_SEED)]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Derivation-space dimensions and H² of a (quadratic Lie) algebra.
    H2 {
        path: PathBuf,
        #[arg(long)]
        metric: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Isomorphism-invariant fingerprint of an algebra (and metric).
    Fingerprint {
        path: PathBuf,
        #[arg(long)]
        metric: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List all entry names.
    List {
        #[command(flatten)]
        out: CommonOut,
    },
    /// Print one entry at given parameter values.
    Get {
        name: String,
        /// Parameter assignment, repeatable: --param lambda=1 --param mu=2.
        #[arg(long = "param")]
        params: Vec<String>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Write one entry to a file in the algebra/metric bundle format.
    Export {
        name: String,
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(AppError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum AppError {
    Input(String),
}

impl From<quadleib::Error> for AppError {
    fn from(e: quadleib::Error) -> Self {
        AppError::Input(e.to_string())
    }
}

fn read_json<T: for<'a> Deserialize<'a>>(path: &Path) -> Result<T, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| AppError::Input(format!("cannot parse {}: {e}", path.display())))
}

/// Accepts a bare algebra file or an {"algebra":…, "metric":…} bundle.
fn load_algebra_bundle(
    path: &Path,
    metric_path: Option<&Path>,
) -> Result<(Algebra, Option<Metric>), AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| AppError::Input(format!("cannot parse {}: {e}", path.display())))?;
    let (alg_js, bundled_metric): (json::AlgebraJson, Option<json::MetricJson>) =
        if value.get("algebra").is_some() {
            let bundle: json::BundleJson = serde_json::from_value(value)
                .map_err(|e| AppError::Input(format!("bad bundle in {}: {e}", path.display())))?;
            (bundle.algebra, bundle.metric)
        } else {
            let alg: json::AlgebraJson = serde_json::from_value(value)
                .map_err(|e| AppError::Input(format!("bad algebra in {}: {e}", path.display())))?;
            (alg, None)
        };
    let algebra = json::algebra_from_json(&alg_js)?;
    let metric = match metric_path {
        Some(p) => {
            let mj: json::MetricJson = read_json(p)?;
            Some(json::metric_from_json(&mj)?)
        }
        None => match bundled_metric {
            Some(mj) => Some(json::metric_from_json(&mj)?),
            None => None,
        },
    };
    if let Some(m) = &metric {
        if m.dim() != algebra.dim() {
            return Err(AppError::Input(format!(
                "metric dimension {} does not match algebra dimension {}",
                m.dim(),
                algebra.dim()
            )));
        }
    }
    Ok((algebra, metric))
}

fn parse_params(params: &[String]) -> Result<catalog::ParamMap, AppError> {
    let mut map = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| AppError::Input(format!("bad --param {p:?}, expected name=value")))?;
        let r = rat_from_string(v).map_err(AppError::Input)?;
        map.insert(k.trim().to_string(), r);
    }
    Ok(map)
}

#[derive(Serialize)]
struct WitnessReport {
    indices: Vec<usize>,
    defect: Vec<String>,
}

#[derive(Serialize)]
struct CheckItem {
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessReport>,
}

fn check_item(res: &quadleib::CheckResult) -> CheckItem {
    CheckItem {
        passed: res.passed,
        witness: res.witness.as_ref().map(|w| WitnessReport {
            indices: w.indices.iter().map(|i| i + 1).collect(),
            defect: w.defect.iter().map(rat_to_string).collect(),
        }),
    }
}

#[derive(Serialize)]
struct FingerprintReport {
    dim: usize,
    leib_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    leib_cap_perp_dim: Option<usize>,
    zl_dim: usize,
    zr_dim: usize,
    z_dim: usize,
    gg_dim: usize,
    derived_length: Option<usize>,
    nilpotency_class: Option<usize>,
    k_rank: usize,
    k_inertia: (usize, usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    metric_inertia: Option<(usize, usize)>,
}

fn fingerprint_report(fp: &Fingerprint) -> FingerprintReport {
    FingerprintReport {
        dim: fp.dim,
        leib_dim: fp.leib_dim,
        leib_cap_perp_dim: fp.leib_cap_perp_dim,
        zl_dim: fp.zl_dim,
        zr_dim: fp.zr_dim,
        z_dim: fp.z_dim,
        gg_dim: fp.gg_dim,
        derived_length: fp.derived_length,
        nilpotency_class: fp.nilpotency_class,
        k_rank: fp.k_rank,
        k_inertia: fp.k_inertia,
        metric_inertia: fp.metric_inertia,
    }
}

#[derive(Serialize)]
struct CheckReport {
    identities: BTreeMap<String, CheckItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariances: Option<BTreeMap<String, CheckItem>>,
    killing_b: Vec<Vec<String>>,
    killing_k: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cartan: Option<CartanReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signature: Option<SignatureReport>,
    fingerprint: FingerprintReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    expectations: Vec<ExpectReport>,
}

#[derive(Serialize)]
struct CartanReport {
    semisimple: bool,
    solvable: bool,
}

#[derive(Serialize)]
struct SignatureReport {
    inertia: (usize, usize),
    euclidean: bool,
    lorentzian: bool,
}

#[derive(Serialize)]
struct ExpectReport {
    claim: String,
    holds: bool,
}

fn emit<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("report serializes")
        ),
        Format::Text => println!("{}", text()),
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn run_check(
    path: &Path,
    metric: Option<&Path>,
    expect: &[String],
    format: Format,
) -> Result<ExitCode, AppError> {
    let (alg, metric) = load_algebra_bundle(path, metric)?;
    let mut identities = BTreeMap::new();
    let left = alg.check_identity(IdentityKind::LeftLeibniz);
    let right = alg.check_identity(IdentityKind::RightLeibniz);
    let lie = alg.check_identity(IdentityKind::Lie);
    let sym = alg.check_identity(IdentityKind::SymmetricLeibniz);
    identities.insert("left_leibniz".to_string(), check_item(&left));
    identities.insert("right_leibniz".to_string(), check_item(&right));
    identities.insert("lie".to_string(), check_item(&lie));
    identities.insert("symmetric_leibniz".to_string(), check_item(&sym));

    let invariances = metric.as_ref().map(|m| {
        let mut map = BTreeMap::new();
        for (name, kind) in [
            ("L", Invariance::L),
            ("R", Invariance::R),
            ("assoc", Invariance::Assoc),
        ] {
            let res = check_invariance(&alg, m.form(), kind).expect("dims agree");
            map.insert(name.to_string(), check_item(&res));
        }
        map
    });

    let b = killing(&alg, KillingKind::B);
    let k = killing(&alg, KillingKind::K);
    let cartan_report = if left.passed {
        let v = cartan(&alg).expect("left Leibniz checked");
        Some(CartanReport {
            semisimple: v.semisimple,
            solvable: v.solvable,
        })
    } else {
        None
    };
    let signature = metric.as_ref().map(|m| {
        let sc = signature_class(m);
        SignatureReport {
            inertia: sc.inertia,
            euclidean: sc.euclidean,
            lorentzian: sc.lorentzian,
        }
    });
    let fp = fingerprint(&alg, metric.as_ref());

    let mut expectations = Vec::new();
    let mut all_hold = true;
    for claim in expect {
        let holds = match claim.as_str() {
            "left-leibniz" => left.passed,
            "right-leibniz" => right.passed,
            "symmetric-leibniz" => sym.passed,
            "lie" => lie.passed,
            "not-lie" => !lie.passed,
            "L-invariant" => metric
                .as_ref()
                .map(|m| {
                    check_invariance(&alg, m.form(), Invariance::L)
                        .unwrap()
                        .passed
                })
                .unwrap_or(false),
            "R-invariant" => metric
                .as_ref()
                .map(|m| {
                    check_invariance(&alg, m.form(), Invariance::R)
                        .unwrap()
                        .passed
                })
                .unwrap_or(false),
            "assoc-invariant" => metric
                .as_ref()
                .map(|m| {
                    check_invariance(&alg, m.form(), Invariance::Assoc)
                        .unwrap()
                        .passed
                })
                .unwrap_or(false),
            "solvable" => alg.is_solvable(),
            "not-solvable" => !alg.is_solvable(),
            "nilpotent" => alg.is_nilpotent(),
            "semisimple" => cartan_report
                .as_ref()
                .map(|c| c.semisimple)
                .unwrap_or(false),
            "euclidean" => signature.as_ref().map(|s| s.euclidean).unwrap_or(false),
            "lorentzian" => signature.as_ref().map(|s| s.lorentzian).unwrap_or(false),
            other => {
                return Err(AppError::Input(format!("unknown claim {other:?}")));
            }
        };
        all_hold &= holds;
        expectations.push(ExpectReport {
            claim: claim.clone(),
            holds,
        });
    }

    let report = CheckReport {
        identities,
        invariances,
        killing_b: json::matrix_to_strings(b.matrix()),
        killing_k: json::matrix_to_strings(k.matrix()),
        cartan: cartan_report,
        signature,
        fingerprint: fingerprint_report(&fp),
        expectations,
    };
    emit(&report, format, || {
        let mut lines = Vec::new();
        lines.push(format!("left Leibniz:      {}", mark(left.passed)));
        lines.push(format!("right Leibniz:     {}", mark(right.passed)));
        lines.push(format!("Lie:               {}", mark(lie.passed)));
        lines.push(format!("symmetric Leibniz: {}", mark(sym.passed)));
        if let Some(inv) = &report.invariances {
            for (k, v) in inv {
                lines.push(format!("{k}-invariant: {}", mark(v.passed)));
            }
        }
        if let Some(c) = &report.cartan {
            lines.push(format!(
                "Cartan: semisimple {} / solvable {}",
                mark(c.semisimple),
                mark(c.solvable)
            ));
        }
        for e in &report.expectations {
            lines.push(format!("expect {}: {}", e.claim, mark(e.holds)));
        }
        lines.join("\n")
    });
    Ok(if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Deserialize)]
struct DoubleExtJson {
    h: json::AlgebraJson,
    metric: json::MetricJson,
    amap: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct CotangentJson {
    kind: String,
    g: json::AlgebraJson,
    #[serde(default, rename = "Omega")]
    omega: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Deserialize)]
struct MetrisedJson {
    kind: String,
    #[serde(default)]
    dim_h: Option<usize>,
    #[serde(default)]
    metric_a: Option<json::MetricJson>,
    #[serde(default)]
    g: Option<json::AlgebraJson>,
    #[serde(default)]
    metric: Option<json::MetricJson>,
    #[serde(default, rename = "I")]
    isotropic: Option<Vec<Vec<String>>>,
    #[serde(rename = "T")]
    t: Vec<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
struct LorentzJson {
    #[serde(rename = "A")]
    a: json::MetricAlgebraJson,
    #[serde(rename = "F")]
    f: Vec<Vec<String>>,
    #[serde(rename = "G")]
    g: Vec<Vec<String>>,
    delta: Vec<String>,
}

#[derive(Deserialize)]
struct NondegJson {
    h: json::MetricAlgebraJson,
    #[serde(rename = "mN")]
    mn: json::MetricJson,
    rho: Vec<Vec<Vec<String>>>,
}

fn tensor3_from_file(t: &[Vec<Vec<String>>]) -> Result<quadleib::construct::Tensor3, AppError> {
    let mut out = Vec::new();
    for plane in t {
        let mut rows = Vec::new();
        for row in plane {
            let mut vals = Vec::new();
            for v in row {
                vals.push(rat_from_string(v).map_err(AppError::Input)?);
            }
            rows.push(vals);
        }
        out.push(rows);
    }
    Ok(out)
}

#[derive(Serialize)]
struct ViolationReport {
    equation: String,
    indices: Vec<usize>,
    defect: Vec<String>,
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    violations: Vec<ViolationReport>,
    notes: Vec<String>,
}

fn run_construct(
    kind: &str,
    datapath: &Path,
    validate: bool,
    output: Option<&Path>,
    format: Format,
) -> Result<ExitCode, AppError> {
    let (alg, metric) = match kind {
        "L" | "R" | "SYM" => {
            let js: json::ExtDataJson = read_json(datapath)?;
            if js.kind != kind {
                return Err(AppError::Input(format!(
                    "file has kind {:?} but the command asked for {kind:?}",
                    js.kind
                )));
            }
            let data = json::ext_data_from_json(&js)?;
            if validate {
                let report = validate_extension(data.kind(), &data);
                let vr = ValidateReport {
                    valid: report.is_valid(),
                    violations: report
                        .violations
                        .iter()
                        .map(|v| ViolationReport {
                            equation: v.equation.clone(),
                            indices: v.indices.iter().map(|i| i + 1).collect(),
                            defect: v.defect.iter().map(rat_to_string).collect(),
                        })
                        .collect(),
                    notes: report.notes.clone(),
                };
                emit(&vr, format, || {
                    if vr.valid {
                        "valid: all compatibility equations hold".to_string()
                    } else {
                        let mut lines = vec![format!("{} violation(s):", vr.violations.len())];
                        for v in &vr.violations {
                            lines.push(format!("  {} at {:?}", v.equation, v.indices));
                        }
                        lines.join("\n")
                    }
                });
                return Ok(if vr.valid {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            construct_extension(&data, true)?
        }
        "double-ext" => {
            let js: DoubleExtJson = read_json(datapath)?;
            let h = json::algebra_from_json(&js.h)?;
            let mh = json::metric_from_json(&js.metric)?;
            let amap = json::matrix_from_strings(&js.amap)?;
            double_extension(&h, &mh, &amap)?
        }
        "cotangent" => {
            let js: CotangentJson = read_json(datapath)?;
            let g = json::algebra_from_json(&js.g)?;
            let ckind = match js.kind.as_str() {
                "cor_zero" => CotangentKind::CorZero,
                "coadjoint_L" => CotangentKind::CoadjointL,
                "two_step_R" => CotangentKind::TwoStepR,
                other => return Err(AppError::Input(format!("unknown cotangent kind {other:?}"))),
            };
            let omega = match &js.omega {
                Some(t) => Some(tensor3_from_file(t)?),
                None => None,
            };
            construct_cotangent(ckind, &g, omega.as_ref())?
        }
        "metrised" => {
            let js: MetrisedJson = read_json(datapath)?;
            let t = tensor3_from_file(&js.t)?;
            match js.kind.as_str() {
                "commutative" => {
                    let dim_h = js
                        .dim_h
                        .ok_or_else(|| AppError::Input("missing dim_h".to_string()))?;
                    let ma = match &js.metric_a {
                        Some(mj) => Some(json::metric_from_json(mj)?),
                        None => None,
                    };
                    construct_metrised_commutative(dim_h, ma.as_ref(), &t)?
                }
                "from_quadratic" => {
                    let g = json::algebra_from_json(
                        js.g.as_ref()
                            .ok_or_else(|| AppError::Input("missing g".to_string()))?,
                    )?;
                    let m = json::metric_from_json(
                        js.metric
                            .as_ref()
                            .ok_or_else(|| AppError::Input("missing metric".to_string()))?,
                    )?;
                    let rows = js
                        .isotropic
                        .as_ref()
                        .ok_or_else(|| AppError::Input("missing I".to_string()))?;
                    let mat = json::matrix_from_strings(rows)?;
                    let iso = Subspace::from_rows(
                        g.dim(),
                        (0..mat.rows()).map(|i| mat.row_vec(i)).collect(),
                    );
                    construct_metrised_from_quadratic(&g, &m, &iso, &t)?
                }
                other => return Err(AppError::Input(format!("unknown metrised kind {other:?}"))),
            }
        }
        "lorentz-L" => {
            let js: LorentzJson = read_json(datapath)?;
            let a = json::metric_algebra_from_json(&js.a)?;
            let f = json::matrix_from_strings(&js.f)?;
            let g = json::matrix_from_strings(&js.g)?;
            let mut delta = Vec::new();
            for v in &js.delta {
                delta.push(rat_from_string(v).map_err(AppError::Input)?);
            }
            construct_lorentz_l(&a, &f, &g, &delta)?
        }
        "nondeg-L" => {
            let js: NondegJson = read_json(datapath)?;
            let h = json::metric_algebra_from_json(&js.h)?;
            let mn = json::metric_from_json(&js.mn)?;
            let mut rho = Vec::new();
            for m in &js.rho {
                rho.push(json::matrix_from_strings(m)?);
            }
            construct_nondeg_l(&h, &mn, &rho)?
        }
        other => {
            return Err(AppError::Input(format!(
                "unknown construction kind {other:?}"
            )))
        }
    };
    let bundle = json::BundleJson {
        algebra: json::algebra_to_json(&alg),
        metric: Some(json::metric_to_json(&metric)),
    };
    let text = serde_json::to_string_pretty(&bundle).expect("bundle serializes");
    match output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| AppError::Input(format!("cannot write {}: {e}", p.display())))?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CoreReport {
    side: String,
    branch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    leib_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    core_i_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    core_a: Option<json::MetricAlgebraJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    core_h: Option<json::AlgebraJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proj_a: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proj_h: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metrised: Option<MetrisedReportJson>,
    fingerprint: FingerprintReport,
}

#[derive(Serialize)]
struct MetrisedReportJson {
    symmetric_leibniz: bool,
    assoc_invariant: bool,
    lie_part_is_lie: bool,
    omega_into_center: bool,
    eq_bracket_kills_omega: bool,
    eq_omega_kills_omega: bool,
    center_nondegenerate: bool,
    omega_support: Vec<usize>,
}

fn run_core(
    path: &Path,
    metric: Option<&Path>,
    side: &str,
    format: Format,
) -> Result<ExitCode, AppError> {
    let (alg, metric) = load_algebra_bundle(path, metric)?;
    let metric = metric.ok_or_else(|| {
        AppError::Input("core extraction needs a metric (bundle it or pass --metric)".to_string())
    })?;
    let side = match side {
        "L" => Side::L,
        "R" => Side::R,
        other => {
            return Err(AppError::Input(format!(
                "side must be L or R, got {other:?}"
            )))
        }
    };
    let report = classify(&alg, &metric, side)?;
    let metrised = report.metrised.as_ref().map(|m| MetrisedReportJson {
        symmetric_leibniz: m.symmetric_leibniz,
        assoc_invariant: m.assoc_invariant,
        lie_part_is_lie: m.lie_part_is_lie,
        omega_into_center: m.omega_into_center,
        eq_bracket_kills_omega: m.eq_bracket_kills_omega,
        eq_omega_kills_omega: m.eq_omega_kills_omega,
        center_nondegenerate: m.center_nondegenerate,
        omega_support: m.omega_support.clone(),
    });
    let out = match &report.branch {
        Branch::Lie => CoreReport {
            side: side.to_string(),
            branch: "lie".to_string(),
            leib_dim: Some(0),
            core_i_dim: None,
            core_a: None,
            core_h: None,
            proj_a: None,
            proj_h: None,
            rho: None,
            metrised,
            fingerprint: fingerprint_report(&report.fingerprint),
        },
        Branch::NondegLeib { leib, rho, .. } => CoreReport {
            side: side.to_string(),
            branch: "nondeg_leib".to_string(),
            leib_dim: Some(leib.dim()),
            core_i_dim: Some(0),
            core_a: None,
            core_h: None,
            proj_a: None,
            proj_h: None,
            rho: Some(rho.iter().map(json::matrix_to_strings).collect()),
            metrised,
            fingerprint: fingerprint_report(&report.fingerprint),
        },
        Branch::Metrised => CoreReport {
            side: side.to_string(),
            branch: "metrised".to_string(),
            leib_dim: Some(alg.leib_ideal().dim()),
            core_i_dim: None,
            core_a: None,
            core_h: None,
            proj_a: None,
            proj_h: None,
            rho: None,
            metrised,
            fingerprint: fingerprint_report(&report.fingerprint),
        },
        Branch::Degenerate { core, .. } => CoreReport {
            side: side.to_string(),
            branch: "degenerate".to_string(),
            leib_dim: Some(alg.leib_ideal().dim()),
            core_i_dim: Some(core.i.dim()),
            core_a: Some(json::metric_algebra_to_json(&core.a)),
            core_h: Some(json::algebra_to_json(&core.h)),
            proj_a: Some(json::matrix_to_strings(&core.proj_a)),
            proj_h: Some(json::matrix_to_strings(&core.proj_h)),
            rho: None,
            metrised,
            fingerprint: fingerprint_report(&report.fingerprint),
        },
    };
    emit(&out, format, || {
        format!(
            "branch: {} (dim I = {:?}, Leib dim {:?})",
            out.branch, out.core_i_dim, out.leib_dim
        )
    });
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CatalogEntryReport {
    name: String,
    params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reading: Option<String>,
    algebra: json::AlgebraJson,
    metric: json::MetricJson,
}

/// Missing parameters fall back to the first default sample of the entry.
fn fill_defaults(name: &str, mut params: catalog::ParamMap) -> catalog::ParamMap {
    if let Some(first) = catalog::default_samples(name).into_iter().next() {
        for (k, v) in first {
            params.entry(k).or_insert(v);
        }
    }
    params
}

fn run_catalog(sub: CatalogCmd) -> Result<ExitCode, AppError> {
    match sub {
        CatalogCmd::List { out } => {
            let names = catalog::names();
            emit(&names, out.format, || names.join("\n"));
            Ok(ExitCode::SUCCESS)
        }
        CatalogCmd::Get { name, params, out } => {
            let params = parse_params(&params)?;
            let params = fill_defaults(&name, params);
            let entry = catalog::get(&name, &params)?;
            let report = CatalogEntryReport {
                name: entry.name.clone(),
                params: entry
                    .params
                    .iter()
                    .map(|(k, v)| (k.clone(), rat_to_string(v)))
                    .collect(),
                reading: entry.reading.clone(),
                algebra: json::algebra_to_json(&entry.algebra),
                metric: json::metric_to_json(&entry.metric),
            };
            emit(&report, out.format, || {
                format!(
                    "{} (dim {}), reading note: {}",
                    report.name,
                    entry.algebra.dim(),
                    report.reading.clone().unwrap_or_else(|| "none".into())
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        CatalogCmd::Export {
            name,
            params,
            output,
        } => {
            let params = parse_params(&params)?;
            let params = fill_defaults(&name, params);
            let entry = catalog::get(&name, &params)?;
            let bundle = json::BundleJson {
                algebra: json::algebra_to_json(&entry.algebra),
                metric: Some(json::metric_to_json(&entry.metric)),
            };
            let text = serde_json::to_string_pretty(&bundle).expect("bundle serializes");
            std::fs::write(&output, text)
                .map_err(|e| AppError::Input(format!("cannot write {}: {e}", output.display())))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct TableRowReport {
    name: String,
    params: BTreeMap<String, String>,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reading: Option<String>,
    failed_claims: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    literal_failures: Vec<String>,
}

fn run_verify_tables(seed: u64, format: Format) -> Result<ExitCode, AppError> {
    let reports = catalog::verify(None)?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for r in &reports {
        let failed: Vec<String> = r
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{} ({})", c.claim, c.witness.clone().unwrap_or_default()))
            .collect();
        all_ok &= r.all_ok;
        rows.push(TableRowReport {
            name: r.name.clone(),
            params: r.params.iter().cloned().collect(),
            ok: r.all_ok,
            reading: r.reading.clone(),
            failed_claims: failed,
            literal_failures: r.literal_failures.clone(),
        });
    }
    // seeded transport spot-check: fingerprints must not move under a
    // random change of basis
    use rand::Rng;
    let mut rng = quadleib::sample::rng_from(seed);
    for entry in catalog::all_sampled_entries() {
        let n = entry.algebra.dim();
        if n == 0 {
            continue;
        }
        let mut p = quadleib::RMatrix::identity(n);
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                p[(i, j)] = quadleib::sample::pool_value(&mut rng);
            }
        }
        if p.inverse().is_none() {
            continue;
        }
        let (talg, tm) = quadleib::construct::transport(&entry.algebra, &entry.metric, &p)?;
        if fingerprint(&entry.algebra, Some(&entry.metric)) != fingerprint(&talg, Some(&tm)) {
            all_ok = false;
            rows.push(TableRowReport {
                name: entry.name.clone(),
                params: entry
                    .params
                    .iter()
                    .map(|(k, v)| (k.clone(), rat_to_string(v)))
                    .collect(),
                ok: false,
                reading: None,
                failed_claims: vec!["fingerprint changed under transport".to_string()],
                literal_failures: vec![],
            });
        }
    }
    emit(&rows, format, || {
        rows.iter()
            .map(|r| {
                format!(
                    "{} {} {:?}{}",
                    if r.ok { "ok  " } else { "FAIL" },
                    r.name,
                    r.params,
                    if r.failed_claims.is_empty() {
                        String::new()
                    } else {
                        format!(" -- {}", r.failed_claims.join("; "))
                    }
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct H2Report {
    der_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    skew_der_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h2_dim: Option<usize>,
}

fn run_h2(path: &Path, metric: Option<&Path>, format: Format) -> Result<ExitCode, AppError> {
    let (alg, metric) = load_algebra_bundle(path, metric)?;
    let spaces = derivation_spaces(&alg, metric.as_ref())?;
    let report = H2Report {
        der_dim: spaces.der.dim(),
        skew_der_dim: spaces.skew_der.as_ref().map(|s| s.dim()),
        inner_dim: spaces.inner.as_ref().map(|s| s.dim()),
        h2_dim: spaces.h2_dim,
    };
    emit(&report, format, || {
        format!(
            "dim Der = {}, dim skew Der = {:?}, dim Inner = {:?}, dim H2 = {:?}",
            report.der_dim, report.skew_der_dim, report.inner_dim, report.h2_dim
        )
    });
    Ok(ExitCode::SUCCESS)
}

fn run_fingerprint(
    path: &Path,
    metric: Option<&Path>,
    format: Format,
) -> Result<ExitCode, AppError> {
    let (alg, metric) = load_algebra_bundle(path, metric)?;
    let fp = fingerprint(&alg, metric.as_ref());
    let report = fingerprint_report(&fp);
    emit(&report, format, || format!("{fp:?}"));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Check {
            path,
            metric,
            expect,
            out,
        } => run_check(&path, metric.as_deref(), &expect, out.format),
        Command::Construct {
            kind,
            datapath,
            validate,
            output,
            out,
        } => run_construct(&kind, &datapath, validate, output.as_deref(), out.format),
        Command::Core {
            path,
            metric,
            side,
            out,
        } => run_core(&path, metric.as_deref(), &side, out.format),
        Command::Catalog { sub } => run_catalog(sub),
        Command::VerifyTables { seed, out } => run_verify_tables(seed, out.format),
        Command::H2 { path, metric, out } => run_h2(&path, metric.as_deref(), out.format),
        Command::Fingerprint { path, metric, out } => {
            run_fingerprint(&path, metric.as_deref(), out.format)
        }
    }
}
