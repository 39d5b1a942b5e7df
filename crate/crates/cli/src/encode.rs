//! JSON encodings. Objects are `serde_json::Map` (sorted keys), rationals are
//! strings "n" or "p/q", integers stay integers.

use kres_core::characters::VirtualCharacter;
use kres_core::grothendieck::{PSParam, StandardClass};
use kres_core::rootdata::{RationalWeight, Weight};
use num_rational::BigRational;
use serde_json::{json, Value};

pub fn weight(w: &Weight) -> Value {
    json!(w.0)
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn rational_weight(w: &RationalWeight) -> Value {
    Value::Array(w.0.iter().map(rational).collect())
}

pub fn standard_class(c: &StandardClass) -> Value {
    let side = match c.side() {
        kres_core::grothendieck::Side::Complex => "complex",
        kres_core::grothendieck::Side::Real => "real",
    };
    let terms: Vec<Value> = c
        .terms()
        .iter()
        .map(|(p, m)| {
            let lambda_key = match p {
                PSParam::Complex(_) => "lambda",
                PSParam::Real(_) => "lambda_bar",
            };
            json!({ lambda_key: weight(p.lambda()), "nu": rational_weight(p.nu()), "mult": m })
        })
        .collect();
    json!({ "side": side, "terms": terms })
}

pub fn character(c: &VirtualCharacter) -> Value {
    Value::Array(
        c.iter()
            .map(|(w, m)| json!({ "weight": weight(w), "mult": m }))
            .collect(),
    )
}
