//! Canonical serialized form of a convertible code.
//!
//! A code manifest is a JSON document with sorted keys, no insignificant
//! whitespace, and integer-only leaves (field elements appear as their
//! canonical integer encodings, which may exceed 64 bits). Serializing is
//! deterministic, and deserializing followed by re-serializing is
//! byte-identical, so the SHA-256 of the manifest ([`code_hash`]) is a
//! stable identity for a code. Stripes carry that hash so mismatched
//! code/stripe pairings are caught early.

use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};

use crate::constructions::{
    ConversionPlan, ConvertibleCode, MergeParams, PlanSource, Scheme,
};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::hankel::HankelArray;
use crate::matrix::Matrix;

pub const FORMAT_VERSION: u64 = 1;

fn err(detail: impl Into<String>) -> Error {
    Error::Format { what: "manifest".into(), detail: detail.into() }
}

fn big_number(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer"))
}

fn element_value(e: &FieldElement) -> Value {
    big_number(&e.encoding())
}

fn matrix_values(m: &Matrix) -> Value {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(element_value(m.get(i, j)));
        }
    }
    Value::Array(out)
}

/// Canonical JSON manifest of a code.
pub fn to_manifest_string(code: &ConvertibleCode) -> String {
    let params = code.params();
    let field = code.field();

    let mut field_obj = Map::new();
    field_obj.insert("m".into(), Value::from(field.m() as u64));
    field_obj.insert(
        "modulus".into(),
        Value::Array(field.modulus().iter().map(|&c| Value::from(c)).collect()),
    );
    field_obj.insert("p".into(), Value::from(field.p()));

    let mut params_obj = Map::new();
    params_obj.insert("kI".into(), Value::from(params.k_i as u64));
    params_obj.insert("lambda".into(), Value::from(params.lambda as u64));
    params_obj.insert("rF".into(), Value::from(params.r_f as u64));
    params_obj.insert("rI".into(), Value::from(params.r_i as u64));

    let plan = code.plan();
    let new_blocks: Vec<Value> = plan
        .new_blocks
        .iter()
        .map(|sources| {
            Value::Array(
                sources
                    .iter()
                    .map(|s| {
                        let mut src = Map::new();
                        src.insert("block".into(), Value::from(s.block as u64));
                        src.insert("coeff".into(), element_value(&s.coeff));
                        src.insert("stripe".into(), Value::from(s.stripe as u64));
                        Value::Object(src)
                    })
                    .collect(),
            )
        })
        .collect();
    let read_sets: Vec<Value> = plan
        .read_sets
        .iter()
        .map(|set| Value::Array(set.iter().map(|&b| Value::from(b as u64)).collect()))
        .collect();
    let unchanged: Vec<Value> = plan
        .unchanged
        .iter()
        .map(|&(i, j)| Value::Array(vec![Value::from(i as u64), Value::from(j as u64)]))
        .collect();
    let mut plan_obj = Map::new();
    plan_obj.insert("newBlocks".into(), Value::Array(new_blocks));
    plan_obj.insert("readAccessSet".into(), Value::Array(read_sets));
    plan_obj.insert("unchanged".into(), Value::Array(unchanged));

    let mut root = Map::new();
    root.insert("field".into(), Value::Object(field_obj));
    root.insert("formatVersion".into(), Value::from(FORMAT_VERSION));
    if let Some(t) = code.hankel() {
        root.insert(
            "hankelB".into(),
            Value::Array(t.values().iter().map(element_value).collect()),
        );
    }
    root.insert("pF".into(), matrix_values(code.p_f()));
    root.insert("pI".into(), matrix_values(code.p_i()));
    root.insert("params".into(), Value::Object(params_obj));
    root.insert("plan".into(), Value::Object(plan_obj));
    if let Some(s) = code.scheme().s() {
        root.insert("s".into(), Value::from(s as u64));
    }
    root.insert("scheme".into(), Value::from(code.scheme().name()));

    serde_json::to_string(&Value::Object(root)).expect("JSON serialization cannot fail")
}

/// SHA-256 (hex) of the canonical manifest — the code's stable identity.
pub fn code_hash(code: &ConvertibleCode) -> String {
    hex::encode(Sha256::digest(to_manifest_string(code).as_bytes()))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(format!("missing key {key}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| err(format!("{what} must be a small nonnegative integer")))
}

fn as_element(v: &Value, field: &Field, what: &str) -> Result<FieldElement> {
    let n = match v {
        Value::Number(n) => n,
        _ => return Err(err(format!("{what} must be an integer"))),
    };
    let digits = n.to_string();
    let enc = BigUint::from_str(&digits)
        .map_err(|_| err(format!("{what} must be a nonnegative integer")))?;
    field
        .from_encoding(&enc)
        .map_err(|_| err(format!("{what} encoding {digits} out of range for {field}")))
}

/// Parse a manifest back into a code. Structural facts are validated
/// (shapes, index ranges, derived plan fields); mathematical invariants are
/// the verify module's job.
pub fn from_manifest_str(text: &str) -> Result<ConvertibleCode> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let root = as_object(&root, "manifest")?;

    if as_usize(get(root, "formatVersion")?, "formatVersion")? != FORMAT_VERSION as usize {
        return Err(err("unsupported formatVersion"));
    }

    let field_obj = as_object(get(root, "field")?, "field")?;
    let p = get(field_obj, "p")?
        .as_u64()
        .ok_or_else(|| err("field.p must be an integer"))?;
    let m = as_usize(get(field_obj, "m")?, "field.m")?;
    let modulus: Vec<u64> = as_array(get(field_obj, "modulus")?, "field.modulus")?
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| err("field.modulus entries must be integers")))
        .collect::<Result<_>>()?;
    let field = Field::new(p, m, Some(modulus))?;

    let params_obj = as_object(get(root, "params")?, "params")?;
    let params = MergeParams::new(
        as_usize(get(params_obj, "lambda")?, "params.lambda")?,
        as_usize(get(params_obj, "kI")?, "params.kI")?,
        as_usize(get(params_obj, "rI")?, "params.rI")?,
        as_usize(get(params_obj, "rF")?, "params.rF")?,
    )?;

    let read_matrix = |key: &str, rows: usize, cols: usize| -> Result<Matrix> {
        let entries = as_array(get(root, key)?, key)?;
        if entries.len() != rows * cols {
            return Err(err(format!("{key} must have {} entries", rows * cols)));
        }
        let elems = entries
            .iter()
            .map(|v| as_element(v, &field, key))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::new(field.clone(), rows, cols, elems).expect("validated shape"))
    };
    let p_i = read_matrix("pI", params.k_i, params.r_i)?;
    let p_f = read_matrix("pF", params.k_f(), params.r_f)?;

    let scheme_name = get(root, "scheme")?
        .as_str()
        .ok_or_else(|| err("scheme must be a string"))?;
    let scheme = match scheme_name {
        "general" => Scheme::General,
        "hankel1" => Scheme::Hankel1,
        "hankel2" => Scheme::Hankel2,
        "hankel-s" => Scheme::HankelS(as_usize(get(root, "s")?, "s")?),
        "trivial" => Scheme::Trivial,
        other => return Err(err(format!("unknown scheme {other}"))),
    };
    if scheme.s().is_none() && root.contains_key("s") {
        return Err(err("key s is only valid for scheme hankel-s"));
    }

    let hankel = match root.get("hankelB") {
        Some(v) => {
            let values = as_array(v, "hankelB")?
                .iter()
                .map(|x| as_element(x, &field, "hankelB"))
                .collect::<Result<Vec<_>>>()?;
            Some(HankelArray::from_values(&field, values)?)
        }
        None => None,
    };
    match scheme {
        Scheme::General | Scheme::Trivial => {
            if hankel.is_some() {
                return Err(err(format!("scheme {scheme_name} must not carry hankelB")));
            }
        }
        _ => {
            if hankel.is_none() {
                return Err(err(format!("scheme {scheme_name} requires hankelB")));
            }
        }
    }

    let plan_obj = as_object(get(root, "plan")?, "plan")?;
    let new_blocks_val = as_array(get(plan_obj, "newBlocks")?, "plan.newBlocks")?;
    if new_blocks_val.len() != params.r_f {
        return Err(err("plan.newBlocks must have rF entries"));
    }
    let mut new_blocks = Vec::with_capacity(params.r_f);
    for sources_val in new_blocks_val {
        let sources = as_array(sources_val, "plan.newBlocks entry")?
            .iter()
            .map(|sv| {
                let src = as_object(sv, "plan source")?;
                let stripe = as_usize(get(src, "stripe")?, "plan source stripe")?;
                let block = as_usize(get(src, "block")?, "plan source block")?;
                if stripe == 0 || stripe > params.lambda {
                    return Err(err("plan source stripe out of range"));
                }
                if block == 0 || block > params.n_i() {
                    return Err(err("plan source block out of range"));
                }
                Ok(PlanSource {
                    stripe,
                    block,
                    coeff: as_element(get(src, "coeff")?, &field, "plan source coeff")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        new_blocks.push(sources);
    }
    let plan = ConversionPlan::from_new_blocks(&params, new_blocks);

    // the stored derived fields must match what the recipes imply
    let stored_reads: Vec<Vec<usize>> = as_array(get(plan_obj, "readAccessSet")?, "readAccessSet")?
        .iter()
        .map(|set| {
            as_array(set, "readAccessSet entry")?
                .iter()
                .map(|v| as_usize(v, "readAccessSet block"))
                .collect()
        })
        .collect::<Result<_>>()?;
    if stored_reads != plan.read_sets {
        return Err(err("readAccessSet is inconsistent with newBlocks"));
    }
    let stored_unchanged: Vec<(usize, usize)> = as_array(get(plan_obj, "unchanged")?, "unchanged")?
        .iter()
        .map(|pair| {
            let pair = as_array(pair, "unchanged entry")?;
            if pair.len() != 2 {
                return Err(err("unchanged entries must be [stripe, block] pairs"));
            }
            Ok((as_usize(&pair[0], "unchanged stripe")?, as_usize(&pair[1], "unchanged block")?))
        })
        .collect::<Result<_>>()?;
    if stored_unchanged != plan.unchanged {
        return Err(err("unchanged map is inconsistent with the parameters"));
    }

    Ok(ConvertibleCode::assemble_parts(params, field, p_i, p_f, plan, scheme, hankel))
}
