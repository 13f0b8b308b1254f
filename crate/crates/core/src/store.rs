//! On-disk formats: stripe store directories and raw message files.
//!
//! A stripe store is a directory holding `stripe.json` — the stripe's shape,
//! field, code reference, and one file name per present block — plus one
//! binary file per block. A block file is exactly `B * w` bytes: the payload's
//! `B` integer encodings as big-endian `w`-byte chunks, no header, where `w`
//! is the field's fixed element width. Raw message files use the same chunks,
//! position-major: the `lambda * kI` row symbols of position 0 first, then
//! position 1, and so on. Out-of-range chunks are rejected, never reduced, so
//! encode/decode round trips are byte-exact.

use crate::conversion::{Block, BlockRole, MessageBuffer, Stripe};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use num_bigint::BigUint;
use num_traits::One;
use serde_json::{Map, Value};
use std::fs;
use std::path::Path;

pub const FORMAT_VERSION: u64 = 1;

/// Serialized width of one field element in bytes: enough for the largest
/// encoding `q - 1`.
pub fn element_width(field: &Field) -> usize {
    let max = field.order() - BigUint::one();
    ((max.bits().max(1) + 7) / 8) as usize
}

/// Canonical file name of a block within an `n`-block stripe.
pub fn block_file_name(index: usize, n: usize) -> String {
    let digits = n.to_string().len();
    format!("block-{index:0digits$}.bin")
}

fn element_bytes(sym: &FieldElement, width: usize, out: &mut Vec<u8>) {
    let raw = sym.encoding().to_bytes_be();
    debug_assert!(raw.len() <= width);
    out.resize(out.len() + (width - raw.len()), 0);
    out.extend_from_slice(&raw);
}

fn corrupt(detail: impl Into<String>) -> Error {
    Error::Format {
        what: "stripe store".to_string(),
        detail: detail.into(),
    }
}

/// Attach the offending path to an I/O error.
pub fn io_at(path: &Path, err: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(
        err.kind(),
        format!("{}: {err}", path.display()),
    ))
}

/// Write the stripe into `dir` (created if needed): block files first, the
/// stripe manifest last as the commit point.
pub fn write_stripe(dir: &Path, stripe: &Stripe, field: &Field) -> Result<()> {
    let width = element_width(field);
    for b in &stripe.blocks {
        if b.payload.len() != stripe.block_length {
            return Err(Error::DimensionMismatch(format!(
                "block {} payload has {} symbols, stripe block length is {}",
                b.index,
                b.payload.len(),
                stripe.block_length
            )));
        }
        if b.payload.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
    }
    fs::create_dir_all(dir).map_err(|e| io_at(dir, e))?;

    let mut entries: Vec<&Block> = stripe.blocks.iter().collect();
    entries.sort_by_key(|b| b.index);
    let mut listed = Vec::with_capacity(entries.len());
    for b in &entries {
        let name = block_file_name(b.index, stripe.n);
        let mut bytes = Vec::with_capacity(stripe.block_length * width);
        for sym in &b.payload {
            element_bytes(sym, width, &mut bytes);
        }
        let path = dir.join(&name);
        fs::write(&path, bytes).map_err(|e| io_at(&path, e))?;
        let mut entry = Map::new();
        entry.insert("file".into(), Value::String(name));
        entry.insert("index".into(), Value::from(b.index as u64));
        listed.push(Value::Object(entry));
    }

    let mut field_obj = Map::new();
    field_obj.insert("m".into(), Value::from(field.m() as u64));
    field_obj.insert(
        "modulus".into(),
        Value::Array(field.modulus().iter().map(|&c| Value::from(c)).collect()),
    );
    field_obj.insert("p".into(), Value::from(field.p()));

    let mut root = Map::new();
    root.insert(
        "blockLength".into(),
        Value::from(stripe.block_length as u64),
    );
    root.insert("blocks".into(), Value::Array(listed));
    root.insert("codeRef".into(), Value::String(stripe.code_ref.clone()));
    root.insert("field".into(), Value::Object(field_obj));
    root.insert("formatVersion".into(), Value::from(FORMAT_VERSION));
    root.insert("k".into(), Value::from(stripe.k as u64));
    root.insert("n".into(), Value::from(stripe.n as u64));
    let path = dir.join("stripe.json");
    fs::write(&path, Value::Object(root).to_string()).map_err(|e| io_at(&path, e))?;
    Ok(())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| corrupt(format!("missing key {key}")))
}

fn as_u64(v: &Value, key: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| corrupt(format!("{key} must be a nonnegative integer")))
}

/// Read a stripe store written for `field`, tolerating absent blocks.
pub fn read_stripe(dir: &Path, field: &Field) -> Result<Stripe> {
    let path = dir.join("stripe.json");
    let text = fs::read_to_string(&path).map_err(|e| io_at(&path, e))?;
    let root: Value =
        serde_json::from_str(&text).map_err(|e| corrupt(format!("stripe.json: {e}")))?;
    let root = root
        .as_object()
        .ok_or_else(|| corrupt("stripe.json must hold an object"))?;

    if as_u64(get(root, "formatVersion")?, "formatVersion")? != FORMAT_VERSION {
        return Err(corrupt("unsupported formatVersion"));
    }
    let n = as_u64(get(root, "n")?, "n")? as usize;
    let k = as_u64(get(root, "k")?, "k")? as usize;
    let block_length = as_u64(get(root, "blockLength")?, "blockLength")? as usize;
    let code_ref = get(root, "codeRef")?
        .as_str()
        .ok_or_else(|| corrupt("codeRef must be a string"))?
        .to_string();

    let fobj = get(root, "field")?
        .as_object()
        .ok_or_else(|| corrupt("field must be an object"))?;
    let p = as_u64(get(fobj, "p")?, "field.p")?;
    let m = as_u64(get(fobj, "m")?, "field.m")? as usize;
    let modulus = get(fobj, "modulus")?
        .as_array()
        .ok_or_else(|| corrupt("field.modulus must be an array"))?
        .iter()
        .map(|c| as_u64(c, "field.modulus entry"))
        .collect::<Result<Vec<u64>>>()?;
    if p != field.p() || m != field.m() || modulus != field.modulus() {
        return Err(Error::FieldMismatch);
    }

    let width = element_width(field);
    let mut blocks = Vec::new();
    for entry in get(root, "blocks")?
        .as_array()
        .ok_or_else(|| corrupt("blocks must be an array"))?
    {
        let entry = entry
            .as_object()
            .ok_or_else(|| corrupt("each block entry must be an object"))?;
        let index = as_u64(get(entry, "index")?, "block index")? as usize;
        let file = get(entry, "file")?
            .as_str()
            .ok_or_else(|| corrupt("block file must be a string"))?;
        let path = dir.join(file);
        let bytes = fs::read(&path).map_err(|e| io_at(&path, e))?;
        if bytes.len() != block_length * width {
            return Err(corrupt(format!(
                "{file}: {} bytes, expected {}",
                bytes.len(),
                block_length * width
            )));
        }
        let payload = bytes
            .chunks(width)
            .map(|chunk| {
                field
                    .from_encoding(&BigUint::from_bytes_be(chunk))
                    .map_err(|_| corrupt(format!("{file}: element encoding out of range")))
            })
            .collect::<Result<Vec<FieldElement>>>()?;
        let role = if index >= 1 && index <= k {
            BlockRole::Data
        } else {
            BlockRole::Parity
        };
        blocks.push(Block {
            index,
            role,
            payload,
        });
    }
    Stripe::new(n, k, block_length, blocks, code_ref)
        .map_err(|e| corrupt(format!("inconsistent stripe layout: {e}")))
}

/// Parse a raw message file: fixed-width big-endian chunks, position-major
/// over `rows` rows. The block length is inferred from the file size.
pub fn raw_to_message(field: &Field, rows: usize, bytes: &[u8]) -> Result<MessageBuffer> {
    let width = element_width(field);
    let stride = rows * width;
    if stride == 0 {
        return Err(Error::InvalidParams(
            "a raw message needs at least one row".to_string(),
        ));
    }
    if bytes.len() % stride != 0 {
        return Err(Error::InvalidParams(format!(
            "raw input of {} bytes is not a multiple of rows x width = {rows} x {width}",
            bytes.len()
        )));
    }
    let cols = bytes.len() / stride;
    let mut data = vec![Vec::with_capacity(cols); rows];
    for pos in 0..cols {
        for (row, out) in data.iter_mut().enumerate() {
            let start = pos * stride + row * width;
            let sym = field.from_encoding(&BigUint::from_bytes_be(&bytes[start..start + width]))?;
            out.push(sym);
        }
    }
    MessageBuffer::from_rows(field, data)
}

/// Serialize message rows back to the raw byte format ([`raw_to_message`]'s
/// inverse).
pub fn message_to_raw(msg: &MessageBuffer) -> Vec<u8> {
    let width = element_width(msg.field());
    let mut out = Vec::with_capacity(msg.rows() * msg.cols() * width);
    for pos in 0..msg.cols() {
        for row in 0..msg.rows() {
            element_bytes(msg.get(row, pos), width, &mut out);
        }
    }
    out
}
