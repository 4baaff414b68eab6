//! JSON encodings. Exact values only: rationals and residues are decimal
//! strings, maps are keyed by exponent, and object keys come out sorted.

use serde_json::{json, Map, Value};
use tadic_core::arith::{CycElem, CycRing, PadicRing, ZqElem};
use tadic_core::dwork::RhoRing;
use tadic_core::series::{NewtonPolygon, SSeries, TRing, Q};

pub fn rational(q: Q) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

/// Integers stay JSON integers; anything else becomes a rational object.
pub fn ordinate(q: Q) -> Value {
    if q.is_integer() {
        json!(q.to_integer())
    } else {
        rational(q)
    }
}

pub fn polygon(np: &NewtonPolygon) -> Value {
    let vertices: Vec<Value> = np.vertices.iter().map(|(x, y)| json!([x, ordinate(*y)])).collect();
    json!({ "vertices": vertices, "certified_upto": np.certified_upto })
}

pub fn flag(b: Option<bool>) -> Value {
    b.map_or(Value::Null, Value::Bool)
}

fn modulus(p: u64, digits: u32) -> String {
    format!("{p}^{digits}")
}

/// Nonzero terms of a `T`-series as `{exponent: residue}`.
pub fn t_terms(x: &[u64]) -> Value {
    let mut m = Map::new();
    for (i, c) in x.iter().enumerate() {
        if *c != 0 {
            m.insert(i.to_string(), json!(c.to_string()));
        }
    }
    Value::Object(m)
}

pub fn t_series(ring: &TRing, x: &[u64]) -> Value {
    json!({
        "modulus": modulus(ring.prime(), ring.precision()),
        "truncation": format!("T^{}", ring.len()),
        "terms": t_terms(x),
    })
}

/// A series in `s` whose coefficients are `T`-series.
pub fn s_over_t(s: &SSeries<TRing>) -> Value {
    let mut m = Map::new();
    for (k, c) in s.coeffs.iter().enumerate() {
        m.insert(k.to_string(), t_terms(c));
    }
    json!({
        "modulus": modulus(s.ring.prime(), s.ring.precision()),
        "truncation": format!("T^{}", s.ring.len()),
        "coefficients": Value::Object(m),
    })
}

/// Coordinates in the basis `(ζ - 1)^i`.
pub fn cyc_terms(x: &CycElem) -> Value {
    t_terms(x)
}

pub fn cyc_value(ring: &CycRing, x: &CycElem) -> Value {
    json!({
        "modulus": modulus(ring.prime(), ring.precision()),
        "basis": "(zeta-1)^i",
        "order": ring.order().to_string(),
        "terms": cyc_terms(x),
    })
}

pub fn s_over_cyc(s: &SSeries<CycRing>) -> Value {
    let mut m = Map::new();
    for (k, c) in s.coeffs.iter().enumerate() {
        m.insert(k.to_string(), cyc_terms(c));
    }
    json!({
        "modulus": modulus(s.ring.prime(), s.ring.precision()),
        "basis": "(zeta-1)^i",
        "order": s.ring.order().to_string(),
        "coefficients": Value::Object(m),
    })
}

fn zq_value(x: &ZqElem) -> Value {
    Value::Array(x.iter().map(|c| json!(c.to_string())).collect())
}

/// Nonzero terms of a `π^(1/D)`-series, each an array of `Z_q` coordinates.
pub fn rho_terms(x: &[ZqElem]) -> Value {
    let mut m = Map::new();
    for (i, c) in x.iter().enumerate() {
        if c.iter().any(|d| *d != 0) {
            m.insert(i.to_string(), zq_value(c));
        }
    }
    Value::Object(m)
}

pub fn s_over_rho(s: &SSeries<RhoRing>) -> Value {
    let mut m = Map::new();
    for (k, c) in s.coeffs.iter().enumerate() {
        m.insert(k.to_string(), rho_terms(c));
    }
    json!({
        "modulus": modulus(s.ring.prime(), s.ring.precision()),
        "variable": format!("pi^(1/{})", s.ring.den()),
        "truncation": format!("pi^({}/{})", s.ring.len(), s.ring.den()),
        "coefficients": Value::Object(m),
    })
}

pub fn pi_power(q: Q) -> String {
    if q.is_integer() {
        format!("pi^{}", q.to_integer())
    } else {
        format!("pi^({q})")
    }
}
