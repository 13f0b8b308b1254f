//! Independent brute-force oracles for desk-scale validation: exhaustive MDS
//! checks, block-constructibility search, the embedded-generator view of a
//! merge, and minimal read-access-set search.
//!
//! Everything here recomputes from the matrices alone — none of it shares
//! logic with the construction code paths, so a bug in a construction shows
//! up as a disagreement rather than being reproduced.

use crate::combin::combinations;
use crate::constructions::ConvertibleCode;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::matrix::Matrix;

/// Most columns a per-stripe exhaustive subset search will take on.
pub const MAX_SEARCH_COLUMNS: usize = 16;

/// Most embedded columns the joint (non-decomposed) search will take on.
pub const MAX_JOINT_SEARCH_COLUMNS: usize = 14;

/// The `lambda * kI x lambda * nI` matrix whose column for (stripe i,
/// block j) is the initial generator's column j placed into coordinate band
/// `(i-1)*kI+1 ..= i*kI`, zero elsewhere. Conversions read initial blocks;
/// this matrix is those blocks' coefficient vectors over the merged message.
pub struct EmbeddedGenerator {
    matrix: Matrix,
    n_i: usize,
}

impl EmbeddedGenerator {
    pub fn new(code: &ConvertibleCode) -> EmbeddedGenerator {
        let params = code.params();
        let g_i = code.generator_initial();
        let (lambda, k_i, n_i) = (params.lambda, params.k_i, params.n_i());
        let field = code.field().clone();
        let zero = field.zero();
        let matrix = Matrix::from_fn(field, lambda * k_i, lambda * n_i, |r, c| {
            if r / k_i == c / n_i {
                g_i.get(r % k_i, c % n_i).clone()
            } else {
                zero.clone()
            }
        });
        EmbeddedGenerator { matrix, n_i }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// 0-based column position of block `block` of stripe `stripe` (1-based).
    pub fn column_position(&self, stripe: usize, block: usize) -> usize {
        (stripe - 1) * self.n_i + (block - 1)
    }

    /// The embedded coefficient vector of one initial block.
    pub fn column(&self, stripe: usize, block: usize) -> Vec<FieldElement> {
        self.matrix.column(self.column_position(stripe, block))
    }
}

/// True iff every `k`-subset of the generator's columns is nonsingular —
/// the exhaustive erasure-tolerance check.
pub fn is_mds_by_erasure(generator: &Matrix) -> bool {
    let (k, n) = (generator.rows(), generator.cols());
    if k > n {
        return false;
    }
    let rows: Vec<usize> = (0..k).collect();
    combinations(n, k).all(|cols| {
        generator
            .submatrix(&rows, &cols)
            .det()
            .map(|d| !d.is_zero())
            .unwrap_or(false)
    })
}

/// Do all columns of `targets` lie in the column span of `candidate`?
fn spans(candidate: &Matrix, targets: &Matrix) -> bool {
    match candidate.hconcat(targets) {
        Ok(aug) => aug.rank() == candidate.rank(),
        Err(_) => false,
    }
}

/// Search, band by band, for size-`t` subsets of the initial parity columns
/// whose span contains that band of the final parity matrix. Returns the
/// lexicographically least witness per band (1-based column indices), or
/// `None` if some band has no witness of size `t`.
pub fn is_block_constructible(
    p_f: &Matrix,
    p_i: &Matrix,
    t: usize,
) -> Option<Vec<Vec<usize>>> {
    let k_i = p_i.rows();
    if k_i == 0 || p_f.rows() % k_i != 0 || t > p_i.cols() {
        return None;
    }
    let lambda = p_f.rows() / k_i;
    let r_i = p_i.cols();
    let pf_cols: Vec<usize> = (0..p_f.cols()).collect();
    let pi_rows: Vec<usize> = (0..k_i).collect();
    let mut witnesses = Vec::with_capacity(lambda);
    for band in 0..lambda {
        let band_rows: Vec<usize> = (band * k_i..(band + 1) * k_i).collect();
        let block = p_f.submatrix(&band_rows, &pf_cols);
        let witness = combinations(r_i, t).find(|cols| {
            let sub = p_i.submatrix(&pi_rows, cols);
            spans(&sub, &block)
        })?;
        witnesses.push(witness.iter().map(|c| c + 1).collect());
    }
    Some(witnesses)
}

/// Smallest number of columns of `columns` whose span contains every column
/// of `targets`, by exhaustive subset search in increasing size.
fn min_covering_subset(columns: &Matrix, targets: &Matrix) -> usize {
    let n = columns.cols();
    let rows: Vec<usize> = (0..columns.rows()).collect();
    for d in 0..=n {
        for cols in combinations(n, d) {
            if spans(&columns.submatrix(&rows, &cols), targets) {
                return d;
            }
        }
    }
    unreachable!("a full-rank generator spans every target");
}

/// Minimum read-access-set size over all conversion procedures for this code:
/// the fewest initial blocks whose embedded columns span every new final
/// column. Initial blocks live in a single coordinate band each, so the
/// joint minimum decomposes exactly into independent per-stripe searches.
pub fn min_read_set_search(code: &ConvertibleCode) -> Result<usize> {
    let params = code.params();
    if params.r_f == 0 {
        return Ok(0);
    }
    let n_i = params.n_i();
    if n_i > MAX_SEARCH_COLUMNS {
        return Err(Error::InstanceTooLarge(format!(
            "per-stripe search over {n_i} columns exceeds the limit of {MAX_SEARCH_COLUMNS}"
        )));
    }
    let g_i = code.generator_initial();
    let p_f = code.p_f();
    let pf_cols: Vec<usize> = (0..p_f.cols()).collect();
    let mut total = 0;
    for i in 0..params.lambda {
        let band_rows: Vec<usize> = (i * params.k_i..(i + 1) * params.k_i).collect();
        let targets = p_f.submatrix(&band_rows, &pf_cols);
        total += min_covering_subset(&g_i, &targets);
    }
    Ok(total)
}

/// The same minimum computed without the band decomposition: one subset
/// search over all `lambda * nI` embedded columns at once. Exponentially
/// slower; kept as an independent cross-check of [`min_read_set_search`].
pub fn min_read_set_search_joint(code: &ConvertibleCode) -> Result<usize> {
    let params = code.params();
    if params.r_f == 0 {
        return Ok(0);
    }
    let total_cols = params.lambda * params.n_i();
    if total_cols > MAX_JOINT_SEARCH_COLUMNS {
        return Err(Error::InstanceTooLarge(format!(
            "joint search over {total_cols} embedded columns exceeds the limit of {MAX_JOINT_SEARCH_COLUMNS}"
        )));
    }
    let embedded = EmbeddedGenerator::new(code);
    Ok(min_covering_subset(embedded.matrix(), code.p_f()))
}

/// A conversion is stable when it carries every data block over unchanged —
/// `lambda * kI` unchanged blocks, hence exactly `rF` new ones. Recomputed
/// from the plan's raw entries.
pub fn check_stability(code: &ConvertibleCode) -> bool {
    let params = code.params();
    let plan = code.plan();
    if plan.new_blocks.len() != params.r_f {
        return false;
    }
    if plan.unchanged.len() != params.lambda * params.k_i {
        return false;
    }
    let mut seen = vec![vec![false; params.k_i]; params.lambda];
    for &(g, t) in &plan.unchanged {
        if g < 1 || g > params.lambda || t < 1 || t > params.k_i {
            return false;
        }
        if seen[g - 1][t - 1] {
            return false;
        }
        seen[g - 1][t - 1] = true;
    }
    true
}

/// Replay the plan against the embedded generator: every unchanged mapping
/// must reproduce the matching final data column, and every new block's
/// linear combination must equal its final parity column exactly.
pub fn check_plan_soundness(code: &ConvertibleCode) -> bool {
    let params = code.params();
    let plan = code.plan();
    let embedded = EmbeddedGenerator::new(code);
    let g_f = code.generator_final();
    let height = params.k_f();
    let field = code.field();

    if plan.unchanged.len() != height {
        return false;
    }
    for (f, &(g, t)) in plan.unchanged.iter().enumerate() {
        if g < 1 || g > params.lambda || t < 1 || t > params.k_i {
            return false;
        }
        let want: Vec<FieldElement> = (0..height).map(|r| g_f.get(r, f).clone()).collect();
        if embedded.column(g, t) != want {
            return false;
        }
    }

    if plan.new_blocks.len() != params.r_f {
        return false;
    }
    for (l, sources) in plan.new_blocks.iter().enumerate() {
        let mut acc = vec![field.zero(); height];
        for s in sources {
            if s.stripe < 1 || s.stripe > params.lambda || s.block < 1 || s.block > params.n_i()
            {
                return false;
            }
            let col = embedded.column(s.stripe, s.block);
            for (a, c) in acc.iter_mut().zip(&col) {
                *a = a.add(&s.coeff.mul(c));
            }
        }
        let want: Vec<FieldElement> =
            (0..height).map(|r| g_f.get(r, height + l).clone()).collect();
        if acc != want {
            return false;
        }
    }
    true
}
