//! Command implementations. Each returns rendered text, a JSON value with a
//! stable schema, and the process exit code: 0 for pass verdicts, 1 for fail
//! verdicts, 2 for input errors.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use paracontact_core::catalog;
use paracontact_core::classify::{
    canonical_basis_at_point, rank_at_point, rank_stratification, verify_canonical,
    CanonicalBasis, DEFAULT_TOL,
};
use paracontact_core::curvature::{
    curvature_data, nullity_infer, nullity_verify, parasasakian_curvature_check,
    NullityVerdict,
};
use paracontact_core::deform::{dc_deform, deform_roundtrip_check};
use paracontact_core::frame::FrameContext;
use paracontact_core::structure::{
    compute_h, h_properties, is_k_paracontact, nijenhuis_normality,
    validate_almost_paracontact, validate_metric,
};
use paracontact_core::{
    AxiomReport, CanonicalError, DeformError, FieldVec, ParacontactData, Scalar,
};

use crate::file::{emit_structure, load_structure, structure_radicand};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Rendered result of one command.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

fn input_error(command: &str, msg: impl Into<String>) -> Outcome {
    let msg = msg.into();
    Outcome {
        text: format!("error: {msg}\n"),
        json: json!({"command": command, "error": msg}),
        exit: EXIT_INPUT,
    }
}

fn load(command: &str, path: &str) -> Result<(ParacontactData, u32), Box<Outcome>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Box::new(input_error(command, format!("{path}: {e}"))))?;
    let s = load_structure(&text)
        .map_err(|e| Box::new(input_error(command, format!("{path}:{e}"))))?;
    let radicand = structure_radicand(&s);
    Ok((s, radicand))
}

fn checks_json(report: &AxiomReport) -> Value {
    Value::Array(
        report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "witness": c.witness,
                })
            })
            .collect(),
    )
}

fn render_report(out: &mut String, report: &AxiomReport) {
    out.push_str(&format!("{report}"));
}

fn finish(
    command: &str,
    input: Option<&str>,
    started: Instant,
    text: String,
    mut json: Value,
    exit: i32,
) -> Outcome {
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    if let Value::Object(map) = &mut json {
        map.insert("command".into(), json!(command));
        map.insert("input".into(), json!(input));
        map.insert("elapsed_ms".into(), json!(elapsed_ms));
        map.insert("exit".into(), json!(exit));
    }
    Outcome { text, json, exit }
}

fn parse_scalar_arg(command: &str, what: &str, text: &str, radicand: u32) -> Result<Scalar, Box<Outcome>> {
    paracontact_core::parse::parse_scalar(text, radicand)
        .map_err(|e| Box::new(input_error(command, format!("{what}: {e}"))))
}

fn parse_point(
    command: &str,
    text: &str,
    expected: usize,
    radicand: u32,
) -> Result<Vec<BigRational>, Box<Outcome>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let scalar = paracontact_core::parse::parse_scalar(part.trim(), radicand)
            .map_err(|e| Box::new(input_error(command, format!("point: {e}"))))?;
        let value = scalar.as_rational().cloned().ok_or_else(|| {
            Box::new(input_error(command, "point coordinates must be rational"))
        })?;
        out.push(value);
    }
    if out.len() != expected {
        return Err(Box::new(input_error(
            command,
            format!("point has {} coordinates, expected {expected}", out.len()),
        )));
    }
    Ok(out)
}

// ---- commands ----

pub fn validate(path: &str) -> Outcome {
    let started = Instant::now();
    let (s, _) = match load("validate", path) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let almost = validate_almost_paracontact(&s);
    let metric = validate_metric(&s);
    let h = compute_h(&s);
    let hp = h_properties(&s, &h);
    let normality = nijenhuis_normality(&s);
    let k_para = is_k_paracontact(&s);

    let passed = almost.all_passed() && metric.all_passed() && hp.all_passed();
    let mut text = String::new();
    for r in [&almost, &metric, &hp] {
        render_report(&mut text, r);
    }
    let normal = normality.check("normality_tensor").is_some_and(|c| c.passed);
    let parasasakian = normality.check("parasasakian").is_some_and(|c| c.passed);
    text.push_str(&format!(
        "classification\n  normal: {}\n  K-paracontact: {}\n  paraSasakian: {}\n",
        if normal { "yes" } else { "no" },
        if k_para { "yes" } else { "no" },
        if parasasakian { "yes" } else { "no" },
    ));
    text.push_str(&format!(
        "RESULT: {}\n",
        if passed { "PASS" } else { "FAIL" }
    ));

    let json = json!({
        "passed": passed,
        "almost_paracontact": checks_json(&almost),
        "metric": checks_json(&metric),
        "h_properties": checks_json(&hp),
        "normal": normal,
        "k_paracontact": k_para,
        "parasasakian": parasasakian,
    });
    finish(
        "validate",
        Some(path),
        started,
        text,
        json,
        if passed { EXIT_PASS } else { EXIT_FAIL },
    )
}

pub fn h_tensor(path: &str) -> Outcome {
    let started = Instant::now();
    let (s, _) = match load("h", path) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let h = compute_h(&s);
    let names = s.frame.names().to_vec();
    let mut text = String::new();
    let mut cols = Vec::new();
    for j in 0..s.dim() {
        let col = FieldVec::from_components(h.col(j));
        text.push_str(&format!("h {} = {}\n", names[j], col.display(&names)));
        cols.push(col.display(&names));
    }
    let rank = h.rank();
    let k_para = h.is_zero_matrix();
    text.push_str(&format!("generic rank: {rank}\n"));
    text.push_str(&format!("K-paracontact: {}\n", if k_para { "yes" } else { "no" }));
    let json = json!({
        "columns": cols,
        "generic_rank": rank,
        "k_paracontact": k_para,
    });
    finish("h", Some(path), started, text, json, EXIT_PASS)
}

pub fn nullity(path: &str, kappa: &str, mu: &str) -> Outcome {
    let started = Instant::now();
    let (s, radicand) = match load("nullity", path) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let kappa = match parse_scalar_arg("nullity", "--kappa", kappa, radicand) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let mu = match parse_scalar_arg("nullity", "--mu", mu, radicand) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let data = curvature_data(&s);
    let report = nullity_verify(&s, &data.h, &data.riemann, &kappa, &mu);
    let passed = report.all_passed();
    let mut text = String::new();
    render_report(&mut text, &report);
    text.push_str(&format!("RESULT: {}\n", if passed { "PASS" } else { "FAIL" }));
    let json = json!({
        "kappa": kappa.to_string(),
        "mu": mu.to_string(),
        "passed": passed,
        "checks": checks_json(&report),
    });
    finish(
        "nullity",
        Some(path),
        started,
        text,
        json,
        if passed { EXIT_PASS } else { EXIT_FAIL },
    )
}

pub fn infer(path: &str) -> Outcome {
    let started = Instant::now();
    let (s, _) = match load("infer", path) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let data = curvature_data(&s);
    let verdict = nullity_infer(&s, &data.h, &data.riemann);
    let (text, json, exit) = match &verdict {
        NullityVerdict::Constants { kappa, mu } => {
            let mut text = format!("(kappa, mu) = ({kappa}, {mu})\n");
            let mut extra = Value::Null;
            if mu.is_zero() && !data.h.is_zero_matrix() {
                let eq2 = parasasakian_curvature_check(&s, &data.h, &data.riemann);
                if eq2.check("parasasakian_curvature").is_some_and(|c| c.passed) {
                    text.push_str(
                        "note: satisfies the paraSasakian curvature equation while h != 0 \
                         (not paraSasakian)\n",
                    );
                    extra = json!(true);
                }
            }
            (
                text,
                json!({
                    "kappa": kappa.to_string(),
                    "mu": mu.to_string(),
                    "verdict": "constants",
                    "parasasakian_equation_with_nonzero_h": extra,
                }),
                EXIT_PASS,
            )
        }
        NullityVerdict::Family { kappa } => (
            format!("kappa = {kappa}, mu free (h = 0)\n"),
            json!({
                "kappa": kappa.to_string(),
                "mu": Value::Null,
                "verdict": "family",
            }),
            EXIT_PASS,
        ),
        NullityVerdict::NotNullity { witness } => (
            format!("not a (kappa, mu)-space: {witness}\n"),
            json!({
                "verdict": "not_nullity",
                "witness": witness,
            }),
            EXIT_FAIL,
        ),
    };
    finish("infer", Some(path), started, text, json, exit)
}

pub fn deform(path: &str, c: &str, verify: bool, emit: Option<&str>) -> Outcome {
    let started = Instant::now();
    let (s, radicand) = match load("deform", path) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let c = match parse_scalar_arg("deform", "--c", c, radicand) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    if c.is_zero() {
        return input_error("deform", "c must be nonzero");
    }
    let deformed = match dc_deform(&s, &c) {
        Ok(d) => d,
        Err(DeformError::ZeroC) => return input_error("deform", "c must be nonzero"),
        Err(e @ DeformError::NonConstantMetric { .. }) => {
            return input_error("deform", e.to_string())
        }
        Err(e) => {
            let msg = e.to_string();
            let json = json!({"passed": false, "error": msg});
            return finish(
                "deform",
                Some(path),
                started,
                format!("deformation failed: {msg}\n"),
                json,
                EXIT_FAIL,
            );
        }
    };

    let mut text = format!("deformed structure revalidates (c = {c})\n");
    let mut passed = true;
    let mut verify_json = Value::Null;
    if verify {
        match deform_roundtrip_check(&s, &c) {
            Ok(report) => {
                passed = report.all_passed();
                render_report(&mut text, &report);
                verify_json = checks_json(&report);
            }
            Err(e) => {
                return finish(
                    "deform",
                    Some(path),
                    started,
                    format!("round-trip check failed: {e}\n"),
                    json!({"passed": false, "error": e.to_string()}),
                    EXIT_FAIL,
                )
            }
        }
    }
    let mut emitted = Value::Null;
    if let Some(out_path) = emit {
        let contents = emit_structure(&deformed);
        if let Err(e) = std::fs::write(out_path, contents) {
            return input_error("deform", format!("{out_path}: {e}"));
        }
        text.push_str(&format!("wrote {out_path}\n"));
        emitted = json!(out_path);
    }
    text.push_str(&format!("RESULT: {}\n", if passed { "PASS" } else { "FAIL" }));
    let json = json!({
        "c": c.to_string(),
        "passed": passed,
        "verify": verify_json,
        "emitted": emitted,
    });
    finish(
        "deform",
        Some(path),
        started,
        text,
        json,
        if passed { EXIT_PASS } else { EXIT_FAIL },
    )
}

pub fn rank(path: &str, point: Option<&str>) -> Outcome {
    let started = Instant::now();
    let (s, radicand) = match load("rank", path) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let h = compute_h(&s);
    let report = rank_stratification(&h);
    let mut text = format!("generic rank: {}\n", report.generic_rank);
    let mut strata_json = Vec::new();
    for stratum in &report.strata {
        let gens: Vec<String> = stratum.generators.iter().map(|p| p.to_string()).collect();
        text.push_str(&format!(
            "rank {} stratum: {{ {} }}{}\n",
            stratum.rank,
            gens.join(", "),
            if stratum.empty { " (empty)" } else { "" }
        ));
        strata_json.push(json!({
            "rank": stratum.rank,
            "generators": gens,
            "empty": stratum.empty,
        }));
    }
    let mut sample_json = Value::Null;
    if let Some(point_text) = point {
        let chart_len = s.frame.chart().len();
        let point = match parse_point("rank", point_text, chart_len, radicand) {
            Ok(p) => p,
            Err(e) => return *e,
        };
        match rank_at_point(&h, &point) {
            Ok(r) => {
                let coords: Vec<String> = point.iter().map(|v| v.to_string()).collect();
                let stratum = report
                    .strata
                    .iter()
                    .find(|st| st.rank == r)
                    .map(|st| {
                        let gens: Vec<String> =
                            st.generators.iter().map(|p| format!("{p} = 0")).collect();
                        format!(" (stratum {})", gens.join(", "))
                    })
                    .unwrap_or_default();
                text.push_str(&format!(
                    "rank at ({}) = {r}{stratum}\n",
                    coords.join(", ")
                ));
                sample_json = json!({"point": coords, "rank": r});
            }
            Err(e) => return input_error("rank", e.to_string()),
        }
    }
    let json = json!({
        "generic_rank": report.generic_rank,
        "strata": strata_json,
        "sample": sample_json,
    });
    finish("rank", Some(path), started, text, json, EXIT_PASS)
}

fn basis_json(cb: &CanonicalBasis) -> Value {
    json!({
        "xi": cb.xi,
        "pairs": cb.pairs.iter().map(|p| json!({
            "x": p.x,
            "y": p.y,
            "epsilon": p.epsilon,
            "h_block": p.h_block,
        })).collect::<Vec<_>>(),
        "residual": cb.residual,
    })
}

pub fn canonical(path: &str, point: Option<&str>, tol: Option<f64>) -> Outcome {
    let started = Instant::now();
    let (s, radicand) = match load("canonical", path) {
        Ok(v) => v,
        Err(e) => return *e,
    };
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let chart_len = s.frame.chart().len();
    let point = match point {
        Some(text) => match parse_point("canonical", text, chart_len, radicand) {
            Ok(p) => p,
            Err(e) => return *e,
        },
        None if chart_len == 0 => Vec::new(),
        None => {
            return input_error(
                "canonical",
                "coordinate structures need --point \"x,y,...\"",
            )
        }
    };
    match canonical_basis_at_point(&s, &point, tol) {
        Ok(cb) => {
            let names = s.frame.names().to_vec();
            let fmt_vec = |v: &[f64]| {
                let parts: Vec<String> = v
                    .iter()
                    .zip(&names)
                    .filter(|(c, _)| c.abs() > 1e-13)
                    .map(|(c, n)| format!("{c:+.6} {n}"))
                    .collect();
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" ")
                }
            };
            let mut text = String::new();
            text.push_str(&format!("xi  = {}\n", fmt_vec(&cb.xi)));
            for (i, pair) in cb.pairs.iter().enumerate() {
                text.push_str(&format!(
                    "X_{} = {}\nY_{} = {}\n  epsilon = {:+}, {}\n",
                    i + 1,
                    fmt_vec(&pair.x),
                    i + 1,
                    fmt_vec(&pair.y),
                    pair.epsilon,
                    if pair.h_block { "h-block" } else { "zero block" },
                ));
            }
            text.push_str(&format!(
                "h-blocks: {}, residual: {:.3e}\n",
                cb.h_block_count(),
                cb.residual
            ));
            let report = match verify_canonical(&s, &cb, tol) {
                Ok(r) => r,
                Err(e) => return input_error("canonical", e.to_string()),
            };
            let passed = report.all_passed();
            render_report(&mut text, &report);
            text.push_str(&format!("RESULT: {}\n", if passed { "PASS" } else { "FAIL" }));
            let json = json!({
                "passed": passed,
                "tol": tol,
                "basis": basis_json(&cb),
                "checks": checks_json(&report),
            });
            finish(
                "canonical",
                Some(path),
                started,
                text,
                json,
                if passed { EXIT_PASS } else { EXIT_FAIL },
            )
        }
        Err(e @ (CanonicalError::NotApplicable(_) | CanonicalError::Degenerate(_))) => {
            let msg = e.to_string();
            finish(
                "canonical",
                Some(path),
                started,
                format!("{msg}\nRESULT: FAIL\n"),
                json!({"passed": false, "error": msg}),
                EXIT_FAIL,
            )
        }
        Err(e) => input_error("canonical", e.to_string()),
    }
}

pub fn catalog_cmd(name: &str, emit: Option<&str>) -> Outcome {
    let started = Instant::now();
    let (s, note) = match build_catalog(name) {
        Ok(v) => v,
        Err(msg) => return input_error("catalog", msg),
    };
    let mut text = format!(
        "catalog `{name}`: dimension {}, frame {}\n",
        s.dim(),
        s.frame.names().join(", ")
    );
    if let Some(note) = &note {
        text.push_str(&format!("note: {note}\n"));
    }
    let mut emitted = Value::Null;
    match emit {
        Some(path) => {
            if let Err(e) = std::fs::write(path, emit_structure(&s)) {
                return input_error("catalog", format!("{path}: {e}"));
            }
            text.push_str(&format!("wrote {path}\n"));
            emitted = json!(path);
        }
        None => {
            text.push('\n');
            text.push_str(&emit_structure(&s));
        }
    }
    let json = json!({
        "name": name,
        "dim": s.dim(),
        "note": note,
        "emitted": emitted,
    });
    finish("catalog", None, started, text, json, EXIT_PASS)
}

/// `r3`, `mu0`, or `lie:n=<n>,m=<m>`.
fn build_catalog(name: &str) -> Result<(ParacontactData, Option<String>), String> {
    match name {
        "r3" => Ok((catalog::example_r3(), None)),
        "mu0" => Ok((
            catalog::example_mu0(),
            Some("3-dimensional (-1, 0)-space with rank(h) = 1".into()),
        )),
        _ => {
            let params = name
                .strip_prefix("lie:")
                .ok_or_else(|| format!("unknown catalog entry `{name}` (try r3, mu0, lie:n=2,m=1)"))?;
            let mut n = None;
            let mut m = None;
            for part in params.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| format!("malformed parameter `{part}`"))?;
                let value: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| format!("malformed parameter `{part}`"))?;
                match key.trim() {
                    "n" => n = Some(value),
                    "m" => m = Some(value),
                    other => return Err(format!("unknown parameter `{other}`")),
                }
            }
            let n = n.ok_or("missing parameter n")?;
            let m = m.ok_or("missing parameter m")?;
            let s = catalog::example_lie(n, m).map_err(|e| e.to_string())?;
            let note = (m == 0).then(|| {
                "m = 0 is the degenerate h = 0 variant (K-paracontact extension of the \
                 family, which has m >= 1)"
                    .to_string()
            });
            Ok((s, note))
        }
    }
}
