//! Command dispatch. Every command returns a JSON document and an exit code;
//! library errors are mapped to exit codes by [`exit_code`].

use std::sync::Arc;

use serde_json::{json, Map, Value};
use tadic_core::arith::FieldCtx;
use tadic_core::dwork::{
    char_series, compare_char_series, facial_criterion, ordinariness_determinants, psi_a_matrix,
    verify_trace_formula, DworkCaps, MinorReport, TwoPathReport,
};
use tadic_core::parse::parse_laurent;
use tadic_core::polytope::{
    exponent_i, face_lattice, is_nondegenerate, normalized_volume, DegreeData, LaurentPoly, Nondegeneracy,
    OriginPosition,
};
use tadic_core::series::Q;
use tadic_core::sums::{
    c_function, congruence_check, degree_bound, l_function, np_report, s_f_psi, s_f_t, specialize_series,
    survey_family, Attestation, Caps,
};
use tadic_core::Error;
use thiserror::Error as ThisError;

use crate::config::{Check, Command, ConfigError, RunConfig};
use crate::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PRECISION: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, ThisError)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Core(e) => exit_code(e),
            _ => EXIT_FAILURE,
        }
    }
}

/// 2 when precision could not be certified, 3 for internal consistency
/// failures, 1 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionUnderflow { .. } | Error::PrecisionRule(_) | Error::TruncationInsufficient(_) => {
            EXIT_PRECISION
        }
        Error::TheoremViolation(_)
        | Error::IntegralityViolation(_)
        | Error::DivisionNotExact(_)
        | Error::Internal(_) => EXIT_VIOLATION,
        _ => EXIT_FAILURE,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub exit: i32,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, exit: EXIT_OK }
    }

    /// Compact document with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string(&self.json).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

pub fn load_poly(cfg: &RunConfig) -> Result<LaurentPoly, Error> {
    let ctx = Arc::new(FieldCtx::new(cfg.p, cfg.a)?);
    parse_laurent(&cfg.poly, &ctx, None)
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let f = load_poly(cfg)?;
    let mut out = match cfg.command {
        Command::Hodge => hodge(cfg, &f)?,
        Command::Sum => sum(cfg, &f)?,
        Command::Lfun => lfun(cfg, &f)?,
        Command::Cfun => cfun(cfg, &f)?,
        Command::Np => np(cfg, &f)?,
        Command::Dwork => dwork(cfg, &f)?,
        Command::Verify => verify(cfg, &f)?,
        Command::Congruence => congruence(cfg, &f)?,
        Command::Survey => survey(cfg, &f)?,
        Command::Faces => faces(cfg, &f)?,
    };
    if let Value::Object(m) = &mut out.json {
        m.insert("command".into(), json!(cfg.command.name()));
        m.insert("input".into(), input_json(cfg));
    }
    Ok(out)
}

fn input_json(cfg: &RunConfig) -> Value {
    json!({ "poly": cfg.poly, "p": cfg.p, "a": cfg.a })
}

fn caps(cfg: &RunConfig) -> Caps {
    Caps {
        prec_p: cfg.prec_p,
        prec_t: cfg.prec_t,
        deg_s: cfg.deg_s,
    }
}

fn ks(cfg: &RunConfig) -> Vec<u32> {
    cfg.k.clone().unwrap_or_else(|| vec![1])
}

fn exponents(points: &[Vec<i64>]) -> Value {
    json!(points)
}

fn hodge(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let dd = DegreeData::new(f)?;
    let depth = cfg.hodge_depth.unwrap_or((dd.den - 1).max(dd.n as i64));
    if depth < 0 {
        return Err(ConfigError::BadValue {
            key: "hodge_depth".into(),
            message: "must be non-negative".into(),
        }
        .into());
    }
    let hp = dd.hodge_polygon(cfg.p, cfg.a, depth);
    Ok(Outcome::ok(json!({
        "D": dd.den,
        "hodge_depth": depth,
        "weights": dd.weight_counts(depth),
        "vertices": hp.vertices.iter().map(|(x, y)| json!([x, json::ordinate(*y)])).collect::<Vec<_>>(),
        "certified_upto": hp.certified_upto,
        "absolute": json::polygon(&dd.absolute_hodge_polygon(depth)),
    })))
}

fn sum(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let mut sums = Map::new();
    for k in ks(cfg) {
        let (ring, s) = s_f_t(f, k, cfg.prec_p, cfg.prec_t)?;
        let mut psi = Map::new();
        for &m in &cfg.m {
            let (cr, x) = s_f_psi(f, k, m, cfg.prec_p)?;
            psi.insert(m.to_string(), json::cyc_value(&cr, &x));
        }
        sums.insert(k.to_string(), json!({ "t": json::t_series(&ring, &s), "psi": psi }));
    }
    Ok(Outcome::ok(json!({ "sums": sums })))
}

fn lfun(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let l = l_function(f, cfg.deg_s, cfg.prec_p, cfg.prec_t)?;
    let mut psi = Map::new();
    for &m in &cfg.m {
        psi.insert(m.to_string(), json::s_over_cyc(&specialize_series(&l, m)?));
    }
    Ok(Outcome::ok(json!({ "l": json::s_over_t(&l), "psi": psi })))
}

fn cfun(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let c = c_function(f, cfg.deg_s, cfg.prec_p, cfg.prec_t)?;
    let mut psi = Map::new();
    for &m in &cfg.m {
        psi.insert(m.to_string(), json::s_over_cyc(&specialize_series(&c, m)?));
    }
    Ok(Outcome::ok(json!({ "c": json::s_over_t(&c), "psi": psi })))
}

fn np(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let r = np_report(f, &cfg.m, caps(cfg))?;
    let psi: Map<String, Value> = r
        .psi
        .iter()
        .map(|p| {
            (
                p.m.to_string(),
                json!({
                    "np": json::polygon(&p.np),
                    "rigid": json::flag(p.rigid),
                    "rigid_upto": p.rigid_upto,
                    "ordinary": json::flag(p.ordinary),
                }),
            )
        })
        .collect();
    Ok(Outcome::ok(json!({
        "np_t": json::polygon(&r.np_t),
        "hp": json::polygon(&r.hp),
        "hp_absolute": json::polygon(&r.hp_absolute),
        "t_ordinary": json::flag(r.t_ordinary),
        "t_ordinary_vertices": r.t_ordinary_vertices,
        "psi": psi,
    })))
}

fn dwork_caps(cfg: &RunConfig) -> DworkCaps {
    let mut c = DworkCaps::minimal(cfg.p, cfg.prec_p, cfg.prec_t);
    if let Some(b) = cfg.basis {
        c.basis = b;
    }
    c
}

fn dwork(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let caps = dwork_caps(cfg);
    let mx = psi_a_matrix(f, caps.basis, caps.prec, caps.n_pi)?;
    let basis: Vec<Value> = mx
        .basis
        .iter()
        .map(|(u, d)| json!({ "point": u, "degree": json::rational(Q::new(*d, mx.den)) }))
        .collect();
    let cs = char_series(&mx, cfg.deg_s);
    Ok(Outcome::ok(json!({
        "dim": mx.dim(),
        "basis_degree": json::rational(caps.basis),
        "basis": basis,
        "certified": json::pi_power(mx.certified_pi()),
        "char_series": json::s_over_rho(&cs),
    })))
}

fn two_path(r: &TwoPathReport) -> Value {
    json!({
        "pass": r.pass,
        "agree": r.agree,
        "modulus": json::pi_power(r.modulus_pi),
        "digits": r.digits,
    })
}

fn minors_json(ms: &[MinorReport]) -> Value {
    Value::Array(
        ms.iter()
            .map(|m| {
                json!({
                    "degree": json::rational(m.degree),
                    "size": m.size,
                    "valuation": m.valuation,
                    "nonvanishing": m.nonvanishing(),
                })
            })
            .collect(),
    )
}

/// Degree cut-off for the determinant checks: `--basis` if given, else 1.
fn max_degree(cfg: &RunConfig) -> Q {
    cfg.basis.unwrap_or(Q::from_integer(1))
}

fn verify(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    match cfg.what {
        Check::Trace => {
            let caps = dwork_caps(cfg);
            let mut per_k = Map::new();
            let mut all = true;
            let mut first = None;
            for k in ks(cfg) {
                let r = verify_trace_formula(f, k, caps)?;
                all &= r.pass;
                first.get_or_insert((r.modulus_pi, r.digits));
                per_k.insert(k.to_string(), two_path(&r));
            }
            let (modulus_pi, digits) = first.unwrap_or((Q::from_integer(0), 0));
            let doc = json!({
                "what": "trace",
                "pass": all,
                "modulus": json::pi_power(modulus_pi),
                "digits": digits,
                "k": per_k,
            });
            Ok(Outcome {
                json: doc,
                exit: if all { EXIT_OK } else { EXIT_VIOLATION },
            })
        }
        Check::Char => {
            let r = compare_char_series(f, cfg.deg_s, dwork_caps(cfg))?;
            let mut doc = two_path(&r);
            doc["what"] = json!("char");
            Ok(Outcome {
                json: doc,
                exit: if r.pass { EXIT_OK } else { EXIT_VIOLATION },
            })
        }
        Check::Ordinary => {
            let ms = ordinariness_determinants(f, max_degree(cfg), cfg.prec_p)?;
            let ordinary = ms.iter().all(MinorReport::nonvanishing);
            Ok(Outcome::ok(json!({
                "what": "ordinary",
                "max_degree": json::rational(max_degree(cfg)),
                "ordinary": ordinary,
                "minors": minors_json(&ms),
            })))
        }
        Check::Facial => {
            let r = facial_criterion(f, max_degree(cfg), cfg.prec_p)?;
            let faces: Vec<Value> = r
                .faces
                .iter()
                .map(|fv| json!({ "exponents": exponents(&fv.exponents), "minors": minors_json(&fv.minors) }))
                .collect();
            let cutoffs: Vec<Value> = r
                .cutoffs
                .iter()
                .map(|c| json!({ "degree": json::rational(c.degree), "whole": c.whole, "faces": c.faces }))
                .collect();
            Ok(Outcome::ok(json!({
                "what": "facial",
                "max_degree": json::rational(max_degree(cfg)),
                "whole": minors_json(&r.whole),
                "faces": faces,
                "cutoffs": cutoffs,
                "block_triangular": r.block_triangular,
                "agree": r.agree,
            })))
        }
    }
}

fn congruence(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let dd = DegreeData::new(f)?;
    let mut reports = Map::new();
    let mut failed = false;
    for &m in &cfg.m {
        let bound = degree_bound(&dd, cfg.p, m) as usize;
        let k_list: Vec<usize> = match &cfg.k {
            Some(v) => v.iter().map(|&k| k as usize).collect(),
            None => vec![bound + 1, bound + 2],
        };
        let r = congruence_check(f, m, &k_list, caps(cfg), cfg.override_nondegenerate, cfg.r_max)?;
        let entries: Vec<Value> = r
            .entries
            .iter()
            .map(|e| {
                json!({
                    "k": e.k,
                    "checked": e.checked,
                    "certified_digits": e.certified_digits,
                    "remainder": json::t_terms(&e.remainder),
                    "pass": json::flag(e.pass),
                })
            })
            .collect();
        if r.attestation == Attestation::Certified && r.entries.iter().any(|e| e.pass == Some(false)) {
            failed = true;
        }
        let attestation = match r.attestation {
            Attestation::Certified => "certified",
            Attestation::Override => "override",
        };
        reports.insert(
            m.to_string(),
            json!({ "bound": r.bound, "attestation": attestation, "entries": entries }),
        );
    }
    Ok(Outcome {
        json: json!({ "m": reports }),
        exit: if failed { EXIT_VIOLATION } else { EXIT_OK },
    })
}

fn survey(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let r = survey_family(f, cfg.samples, cfg.seed, caps(cfg))?;
    Ok(Outcome::ok(json!({
        "seed": cfg.seed,
        "samples": r.samples,
        "histogram": r.histogram,
        "t_ordinary": r.t_ordinary,
        "uncertified": r.uncertified,
    })))
}

fn faces(cfg: &RunConfig, f: &LaurentPoly) -> Result<Outcome, RunError> {
    let dd = DegreeData::new(f)?;
    let origin = match dd.origin {
        OriginPosition::Interior => "interior",
        OriginPosition::Boundary => "boundary",
        OriginPosition::Vertex => "vertex",
    };
    let facets: Vec<Value> = dd
        .facets_no_origin()
        .map(|fc| json!({ "normal": fc.normal, "height": fc.height }))
        .collect();
    let faces: Vec<Value> = face_lattice(&dd)
        .iter()
        .map(|fc| {
            json!({
                "dim": fc.dim,
                "points": fc.points(&dd),
                "contains_origin": fc.contains_origin,
            })
        })
        .collect();
    let i_bound = dd.den * (dd.n as i64 + 1);
    let nondeg = match is_nondegenerate(f, cfg.r_max)? {
        Nondegeneracy::Nondegenerate => json!({ "verdict": "nondegenerate" }),
        Nondegeneracy::Degenerate {
            face,
            extension,
            point_logs,
        } => json!({
            "verdict": "degenerate",
            "face": face,
            "extension": extension,
            "point_logs": point_logs,
        }),
        Nondegeneracy::Unknown { searched_upto } => json!({ "verdict": "unknown", "searched_upto": searched_upto }),
    };
    Ok(Outcome::ok(json!({
        "dimension": dd.n,
        "D": dd.den,
        "origin": origin,
        "vertices": dd.vertices,
        "facets_no_origin": facets,
        "faces": faces,
        "normalized_volume": normalized_volume(&dd),
        "exponent_i": exponent_i(&dd, i_bound),
        "exponent_i_searched_upto": i_bound,
        "nondegeneracy": nondeg,
    })))
}
