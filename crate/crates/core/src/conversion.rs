//! Stripe model, systematic encoding and decoding, execution of the merge
//! conversion with access accounting, and the full re-encoding baseline.
//!
//! Blocks are scalar codewords applied independently at every payload
//! position: a stripe of block length `B` is `B` parallel codewords of the
//! same `[n, k]` code. The merge conversion keeps every data block in place
//! (stripe-major order) and synthesises the `rF` new parities from the reads
//! listed in the code's [`ConversionPlan`], counting each distinct
//! `(stripe, block)` read once and each new block written once.

use crate::bounds;
use crate::constructions::{ConvertibleCode, MergeParams};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::manifest;
use crate::matrix::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde_json::{Map, Value};

/// Role of a block within a systematic stripe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockRole {
    Data,
    Parity,
}

/// One intact block: its 1-based position in the stripe and `B` payload
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub index: usize,
    pub role: BlockRole,
    pub payload: Vec<FieldElement>,
}

/// A stripe of a systematic `[n, k]` code: data blocks sit at positions
/// `1..=k`, parities at `k+1..=n`. Blocks may be absent (erased); the ones
/// present are kept sorted by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripe {
    pub n: usize,
    pub k: usize,
    pub block_length: usize,
    pub blocks: Vec<Block>,
    /// Hash of the manifest of the code this stripe was encoded under.
    pub code_ref: String,
}

impl Stripe {
    /// Assemble a stripe, sorting the blocks and validating the layout.
    pub fn new(
        n: usize,
        k: usize,
        block_length: usize,
        mut blocks: Vec<Block>,
        code_ref: String,
    ) -> Result<Stripe> {
        if k > n {
            return Err(Error::InvalidParams(format!(
                "stripe dimension k = {k} exceeds its length n = {n}"
            )));
        }
        blocks.sort_by_key(|b| b.index);
        for pair in blocks.windows(2) {
            if pair[0].index == pair[1].index {
                return Err(Error::InvalidParams(format!(
                    "duplicate block index {}",
                    pair[0].index
                )));
            }
        }
        for b in &blocks {
            if b.index < 1 || b.index > n {
                return Err(Error::InvalidParams(format!(
                    "block index {} outside 1..={n}",
                    b.index
                )));
            }
            if b.payload.len() != block_length {
                return Err(Error::DimensionMismatch(format!(
                    "block {} payload has {} symbols, stripe block length is {}",
                    b.index,
                    b.payload.len(),
                    block_length
                )));
            }
            let want = if b.index <= k {
                BlockRole::Data
            } else {
                BlockRole::Parity
            };
            if b.role != want {
                return Err(Error::InvalidParams(format!(
                    "block {} of a ({n};{k}) stripe must be a {} block",
                    b.index,
                    match want {
                        BlockRole::Data => "data",
                        BlockRole::Parity => "parity",
                    }
                )));
            }
        }
        Ok(Stripe {
            n,
            k,
            block_length,
            blocks,
            code_ref,
        })
    }

    /// The block at 1-based position `index`, if present.
    pub fn block(&self, index: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.index == index)
    }

    /// Sorted indices of the blocks present.
    pub fn present_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self.blocks.iter().map(|b| b.index).collect();
        idx.sort_unstable();
        idx
    }

    /// A copy of the stripe with the listed block positions erased.
    pub fn without_blocks(&self, drop: &[usize]) -> Stripe {
        Stripe {
            n: self.n,
            k: self.k,
            block_length: self.block_length,
            blocks: self
                .blocks
                .iter()
                .filter(|b| !drop.contains(&b.index))
                .cloned()
                .collect(),
            code_ref: self.code_ref.clone(),
        }
    }
}

/// The merged message: `lambda * kI` rows of `B` symbols each, stored
/// row-major. Row `g * kI + t` (0-based `g`, `t`) is data row `t` of initial
/// stripe `g + 1`; equivalently, row `f` feeds data block `f + 1` of the final
/// stripe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageBuffer {
    field: Field,
    rows: usize,
    cols: usize,
    symbols: Vec<FieldElement>,
}

impl MessageBuffer {
    /// Build a buffer from explicit rows (all rows one length).
    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<MessageBuffer> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut symbols = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "message rows must share one length: found {} and {}",
                    ncols,
                    row.len()
                )));
            }
            for sym in &row {
                if sym.field() != field {
                    return Err(Error::FieldMismatch);
                }
            }
            symbols.extend(row);
        }
        Ok(MessageBuffer {
            field: field.clone(),
            rows: nrows,
            cols: ncols,
            symbols,
        })
    }

    /// The all-zero message.
    pub fn zero(field: &Field, rows: usize, cols: usize) -> MessageBuffer {
        MessageBuffer {
            field: field.clone(),
            rows,
            cols,
            symbols: vec![field.zero(); rows * cols],
        }
    }

    /// A uniformly random message, reproducible from the seed.
    pub fn random(field: &Field, rows: usize, cols: usize, seed: u64) -> MessageBuffer {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let symbols = (0..rows * cols)
            .map(|_| {
                let coeffs = (0..field.m()).map(|_| rng.gen_range(0..field.p())).collect();
                field
                    .element(coeffs)
                    .expect("coefficients below p give a valid element")
            })
            .collect();
        MessageBuffer {
            field: field.clone(),
            rows,
            cols,
            symbols,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row `r` (0-based).
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.symbols[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.symbols[r * self.cols + c]
    }
}

/// Access accounting for one executed conversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessCostReport {
    /// Distinct blocks read from each initial stripe.
    pub reads_per_stripe: Vec<usize>,
    /// Total distinct reads across stripes.
    pub reads: usize,
    /// New blocks written.
    pub writes: usize,
    /// reads + writes.
    pub total_access: usize,
    /// Data blocks carried over in place (not counted as accesses).
    pub unchanged: usize,
    /// Closed-form minimum for these parameters.
    pub lower_bound: usize,
    /// Whether total_access met the minimum.
    pub access_optimal: bool,
    /// Cost of the full re-encode for comparison: lambda * kI + rF.
    pub baseline_access: usize,
}

impl AccessCostReport {
    /// Canonical JSON rendering: compact, keys sorted.
    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        map.insert("accessOptimal".into(), Value::Bool(self.access_optimal));
        map.insert(
            "baselineAccess".into(),
            Value::from(self.baseline_access as u64),
        );
        map.insert("lowerBound".into(), Value::from(self.lower_bound as u64));
        map.insert("reads".into(), Value::from(self.reads as u64));
        map.insert(
            "readsPerStripe".into(),
            Value::Array(
                self.reads_per_stripe
                    .iter()
                    .map(|&r| Value::from(r as u64))
                    .collect(),
            ),
        );
        map.insert("totalAccess".into(), Value::from(self.total_access as u64));
        map.insert("writes".into(), Value::from(self.writes as u64));
        Value::Object(map).to_string()
    }
}

fn build_report(params: &MergeParams, reads_per_stripe: Vec<usize>) -> AccessCostReport {
    let reads: usize = reads_per_stripe.iter().sum();
    let writes = params.r_f;
    let total_access = reads + writes;
    let lower_bound = bounds::access_lower_bound(params);
    debug_assert!(total_access >= lower_bound);
    AccessCostReport {
        reads_per_stripe,
        reads,
        writes,
        total_access,
        unchanged: bounds::max_unchanged(params),
        lower_bound,
        access_optimal: total_access == lower_bound,
        baseline_access: params.n_f(),
    }
}

fn check_message(msg: &MessageBuffer, code: &ConvertibleCode) -> Result<()> {
    let want = code.params().k_f();
    if msg.rows() != want {
        return Err(Error::DimensionMismatch(format!(
            "message has {} rows, the merge needs lambda * kI = {}",
            msg.rows(),
            want
        )));
    }
    if msg.field() != code.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Systematic stripe for one parity matrix: data rows verbatim, parity `j`
/// equal to `sum_t parity[t, j] * data[t]` at every payload position.
fn systematic_stripe(
    field: &Field,
    parity: &Matrix,
    data_rows: &[&[FieldElement]],
    n: usize,
    k: usize,
    block_length: usize,
    code_ref: &str,
) -> Stripe {
    debug_assert_eq!(parity.rows(), k);
    debug_assert_eq!(n, k + parity.cols());
    let mut blocks: Vec<Block> = data_rows
        .iter()
        .enumerate()
        .map(|(t, row)| Block {
            index: t + 1,
            role: BlockRole::Data,
            payload: row.to_vec(),
        })
        .collect();
    for j in 0..parity.cols() {
        let mut payload = vec![field.zero(); block_length];
        for t in 0..k {
            let c = parity.get(t, j);
            if c.is_zero() {
                continue;
            }
            for (acc, sym) in payload.iter_mut().zip(data_rows[t].iter()) {
                *acc = acc.add(&c.mul(sym));
            }
        }
        blocks.push(Block {
            index: k + j + 1,
            role: BlockRole::Parity,
            payload,
        });
    }
    Stripe {
        n,
        k,
        block_length,
        blocks,
        code_ref: code_ref.to_string(),
    }
}

/// Encode the message into the `lambda` initial stripes.
pub fn encode_initial(msg: &MessageBuffer, code: &ConvertibleCode) -> Result<Vec<Stripe>> {
    check_message(msg, code)?;
    let params = code.params();
    let hash = manifest::code_hash(code);
    let mut out = Vec::with_capacity(params.lambda);
    for g in 0..params.lambda {
        let data_rows: Vec<&[FieldElement]> = (0..params.k_i)
            .map(|t| msg.row(g * params.k_i + t))
            .collect();
        out.push(systematic_stripe(
            code.field(),
            code.p_i(),
            &data_rows,
            params.n_i(),
            params.k_i,
            msg.cols(),
            &hash,
        ));
    }
    Ok(out)
}

/// Encode the message directly into the final stripe.
pub fn encode_final(msg: &MessageBuffer, code: &ConvertibleCode) -> Result<Stripe> {
    check_message(msg, code)?;
    let params = code.params();
    let hash = manifest::code_hash(code);
    let data_rows: Vec<&[FieldElement]> = (0..params.k_f()).map(|r| msg.row(r)).collect();
    Ok(systematic_stripe(
        code.field(),
        code.p_f(),
        &data_rows,
        params.n_f(),
        params.k_f(),
        msg.cols(),
        &hash,
    ))
}

/// Check the inputs to a conversion: `lambda` stripes of the initial code,
/// all under this code's manifest hash, with one shared block length.
fn check_initial_stripes(
    stripes: &[Stripe],
    code: &ConvertibleCode,
) -> Result<(usize, String)> {
    let params = code.params();
    if stripes.len() != params.lambda {
        return Err(Error::CodeMismatch(format!(
            "the merge takes {} initial stripes, got {}",
            params.lambda,
            stripes.len()
        )));
    }
    let hash = manifest::code_hash(code);
    let block_length = stripes[0].block_length;
    for (g, stripe) in stripes.iter().enumerate() {
        if stripe.n != params.n_i() || stripe.k != params.k_i {
            return Err(Error::CodeMismatch(format!(
                "stripe {} is a ({};{}) stripe, the initial code is ({};{})",
                g + 1,
                stripe.n,
                stripe.k,
                params.n_i(),
                params.k_i
            )));
        }
        if stripe.code_ref != hash {
            return Err(Error::CodeMismatch(format!(
                "stripe {} carries code reference {}.., expected {}..",
                g + 1,
                &stripe.code_ref[..stripe.code_ref.len().min(12)],
                &hash[..12]
            )));
        }
        if stripe.block_length != block_length {
            return Err(Error::CodeMismatch(format!(
                "stripe {} has block length {}, stripe 1 has {}",
                g + 1,
                stripe.block_length,
                block_length
            )));
        }
        for b in &stripe.blocks {
            if b.payload.len() != stripe.block_length {
                return Err(Error::DimensionMismatch(format!(
                    "stripe {} block {} payload has {} symbols, expected {}",
                    g + 1,
                    b.index,
                    b.payload.len(),
                    stripe.block_length
                )));
            }
        }
    }
    Ok((block_length, hash))
}

/// Execute the merge: carry every data block over unchanged and synthesise
/// the `rF` new parities from the plan's reads. Returns the final stripe and
/// the access accounting.
pub fn convert(
    stripes: &[Stripe],
    code: &ConvertibleCode,
) -> Result<(Stripe, AccessCostReport)> {
    let params = code.params();
    let (block_length, hash) = check_initial_stripes(stripes, code)?;
    let field = code.field();
    let plan = code.plan();

    let require = |g: usize, idx: usize| -> Result<&Block> {
        stripes[g - 1].block(idx).ok_or(Error::MissingBlock {
            stripe: g,
            block: idx,
        })
    };

    let mut blocks = Vec::with_capacity(params.n_f());
    for (f, &(g, t)) in plan.unchanged.iter().enumerate() {
        let src = require(g, t)?;
        blocks.push(Block {
            index: f + 1,
            role: BlockRole::Data,
            payload: src.payload.clone(),
        });
    }
    for (l, sources) in plan.new_blocks.iter().enumerate() {
        let mut payload = vec![field.zero(); block_length];
        for s in sources {
            let src = require(s.stripe, s.block)?;
            for (acc, sym) in payload.iter_mut().zip(&src.payload) {
                *acc = acc.add(&s.coeff.mul(sym));
            }
        }
        blocks.push(Block {
            index: params.k_f() + l + 1,
            role: BlockRole::Parity,
            payload,
        });
    }

    let out = Stripe {
        n: params.n_f(),
        k: params.k_f(),
        block_length,
        blocks,
        code_ref: hash,
    };
    Ok((out, build_report(params, plan.reads_per_stripe())))
}

/// The naive alternative: read the `kI` data blocks of every stripe and
/// re-encode all final parities from scratch. Produces the same stripe as
/// [`convert`], at access cost `lambda * kI + rF = nF`.
pub fn reencode_baseline(
    stripes: &[Stripe],
    code: &ConvertibleCode,
) -> Result<(Stripe, AccessCostReport)> {
    let params = code.params();
    check_initial_stripes(stripes, code)?;
    let mut rows = Vec::with_capacity(params.k_f());
    for (g, stripe) in stripes.iter().enumerate() {
        for t in 1..=params.k_i {
            let b = stripe.block(t).ok_or(Error::MissingBlock {
                stripe: g + 1,
                block: t,
            })?;
            rows.push(b.payload.clone());
        }
    }
    let msg = MessageBuffer::from_rows(code.field(), rows)?;
    let out = encode_final(&msg, code)?;
    let report = build_report(params, vec![params.k_i; params.lambda]);
    Ok((out, report))
}

/// Recover the `k` data rows of a stripe from any `k` of its available
/// blocks (the smallest listed indices are used), solving one `k x k` system
/// across all payload positions at once.
pub fn decode(
    stripe: &Stripe,
    code: &ConvertibleCode,
    available: &[usize],
) -> Result<Vec<Vec<FieldElement>>> {
    let params = code.params();
    let generator = if stripe.n == params.n_i() && stripe.k == params.k_i {
        code.generator_initial()
    } else if stripe.n == params.n_f() && stripe.k == params.k_f() {
        code.generator_final()
    } else {
        return Err(Error::CodeMismatch(format!(
            "stripe shape ({};{}) matches neither the initial ({};{}) nor the final ({};{}) code",
            stripe.n,
            stripe.k,
            params.n_i(),
            params.k_i,
            params.n_f(),
            params.k_f()
        )));
    };
    if stripe.code_ref != manifest::code_hash(code) {
        return Err(Error::CodeMismatch(
            "stripe was encoded under a different code".to_string(),
        ));
    }

    let mut avail: Vec<usize> = available.to_vec();
    avail.sort_unstable();
    avail.dedup();
    if let Some(&bad) = avail.iter().find(|&&i| i < 1 || i > stripe.n) {
        return Err(Error::InvalidParams(format!(
            "block index {bad} outside 1..={}",
            stripe.n
        )));
    }
    if avail.len() < stripe.k {
        return Err(Error::TooFewBlocks {
            available: avail.len(),
            needed: stripe.k,
        });
    }
    avail.truncate(stripe.k);

    let field = code.field();
    let k = stripe.k;
    // Block c_j holds m . G[:, c_j], so the rows stack to (M^T) m^T = y^T
    // with M the chosen generator columns.
    let mt = Matrix::from_fn(field.clone(), k, k, |j, r| {
        generator.get(r, avail[j] - 1).clone()
    });
    let mut rhs_rows: Vec<&[FieldElement]> = Vec::with_capacity(k);
    for &idx in &avail {
        let blk = stripe
            .block(idx)
            .ok_or(Error::MissingBlock { stripe: 1, block: idx })?;
        rhs_rows.push(&blk.payload);
    }
    let rhs = Matrix::from_fn(field.clone(), k, stripe.block_length, |i, j| {
        rhs_rows[i][j].clone()
    });
    let solution = mt.solve(&rhs).map_err(|_| Error::SingularSubmatrix)?;
    Ok((0..k).map(|r| solution.row(r).to_vec()).collect())
}

/// True iff the stripe is exactly the systematic final-code encoding of the
/// message.
pub fn verify_conversion(
    msg: &MessageBuffer,
    final_stripe: &Stripe,
    code: &ConvertibleCode,
) -> bool {
    match encode_final(msg, code) {
        Ok(expected) => expected == *final_stripe,
        Err(_) => false,
    }
}
