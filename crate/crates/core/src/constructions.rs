//! Constructions of merge-regime convertible code pairs.
//!
//! A merge conversion turns `lambda` initial stripes of a systematic
//! [nI, kI] MDS code into one final stripe of a systematic [nF, kF] MDS code
//! with kF = lambda * kI. Every constructor returns a [`ConvertibleCode`]:
//! the two parity generator matrices plus an explicit [`ConversionPlan`]
//! saying which blocks to read and how to combine them into each new parity
//! block.
//!
//! Available schemes, each access-optimal within its precondition range:
//!
//! * `general` — Vandermonde-power parities theta^((i-1)(j-1)) over
//!   GF(char^D); works whenever rF <= min(rI, kI) but needs a large
//!   extension degree D = [`degree_bound_e`] + 1.
//! * `hankel1` — carves both parity matrices out of one superregular Hankel
//!   array of size nF - 1; needs rF <= floor(rI / lambda) but only a field
//!   of size max(nI, nF) - 1.
//! * `hankel2` — array of size kI * rI; relaxes the rate constraint to
//!   rF <= rI - lambda + 1 at the cost of the larger field.
//! * `hankel_family(s)` — interpolates between the two: the rI initial
//!   parity columns are split into `s` groups laid out at staggered row
//!   offsets; s = lambda reproduces `hankel1` and s = rI reproduces
//!   `hankel2` exactly.
//! * `trivial` — independent Cauchy code pair; conversion reads all data
//!   blocks. The only choice when rF > min(rI, kI), and access-optimal
//!   exactly there.
//!
//! All selections (columns, fields, Hankel entries) are deterministic so
//! that serialized codes are reproducible bit-for-bit.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::hankel::HankelArray;
use crate::matrix::Matrix;

/// Parameters of a merge conversion: `lambda` initial stripes with
/// dimension `k_i` and `r_i` parities become one final stripe with
/// dimension `lambda * k_i` and `r_f` parities.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MergeParams {
    pub lambda: usize,
    pub k_i: usize,
    pub r_i: usize,
    pub r_f: usize,
}

impl MergeParams {
    pub fn new(lambda: usize, k_i: usize, r_i: usize, r_f: usize) -> Result<MergeParams> {
        if lambda < 2 {
            return Err(Error::InvalidParams(format!("lambda must be at least 2, got {lambda}")));
        }
        if k_i < 1 {
            return Err(Error::InvalidParams("kI must be at least 1".into()));
        }
        Ok(MergeParams { lambda, k_i, r_i, r_f })
    }

    /// Initial code length nI = kI + rI.
    pub fn n_i(&self) -> usize {
        self.k_i + self.r_i
    }

    /// Final code dimension kF = lambda * kI.
    pub fn k_f(&self) -> usize {
        self.lambda * self.k_i
    }

    /// Final code length nF = kF + rF.
    pub fn n_f(&self) -> usize {
        self.k_f() + self.r_f
    }
}

impl fmt::Display for MergeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({};{}) -> ({};{})",
            self.n_i(),
            self.k_i,
            self.n_f(),
            self.k_f()
        )
    }
}

/// Which construction produced a code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scheme {
    General,
    Hankel1,
    Hankel2,
    HankelS(usize),
    Trivial,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::General => "general",
            Scheme::Hankel1 => "hankel1",
            Scheme::Hankel2 => "hankel2",
            Scheme::HankelS(_) => "hankel-s",
            Scheme::Trivial => "trivial",
        }
    }

    /// Group count for the s-family, if applicable.
    pub fn s(&self) -> Option<usize> {
        match self {
            Scheme::HankelS(s) => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One read feeding a new block: take the block at position `block`
/// (1-based within the stripe, parities start at kI + 1) of initial stripe
/// `stripe` (1-based) and add it scaled by `coeff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanSource {
    pub stripe: usize,
    pub block: usize,
    pub coeff: FieldElement,
}

/// The explicit conversion recipe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConversionPlan {
    /// Per new parity block (rF of them): the list of reads to combine.
    pub new_blocks: Vec<Vec<PlanSource>>,
    /// Per initial stripe (lambda entries): sorted distinct block positions
    /// read during conversion — the read access set.
    pub read_sets: Vec<Vec<usize>>,
    /// Unchanged-block map in final-stripe order: entry f (0-based) says
    /// final data block f + 1 is initial block `(stripe, block)` unchanged.
    pub unchanged: Vec<(usize, usize)>,
}

impl ConversionPlan {
    /// Build a plan from its new-block recipes, deriving the read sets and
    /// the canonical unchanged map (all data blocks, stripe-major order).
    pub(crate) fn from_new_blocks(params: &MergeParams, new_blocks: Vec<Vec<PlanSource>>) -> ConversionPlan {
        let mut read_sets = vec![Vec::new(); params.lambda];
        for sources in &new_blocks {
            for s in sources {
                read_sets[s.stripe - 1].push(s.block);
            }
        }
        for set in &mut read_sets {
            set.sort_unstable();
            set.dedup();
        }
        let mut unchanged = Vec::with_capacity(params.k_f());
        for i in 1..=params.lambda {
            for j in 1..=params.k_i {
                unchanged.push((i, j));
            }
        }
        ConversionPlan { new_blocks, read_sets, unchanged }
    }

    /// |D_i| for each stripe.
    pub fn reads_per_stripe(&self) -> Vec<usize> {
        self.read_sets.iter().map(Vec::len).collect()
    }

    /// |D|: total distinct blocks read.
    pub fn reads(&self) -> usize {
        self.read_sets.iter().map(Vec::len).sum()
    }
}

/// A matched pair of systematic MDS codes plus the plan converting between
/// them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvertibleCode {
    params: MergeParams,
    field: Field,
    p_i: Matrix,
    p_f: Matrix,
    plan: ConversionPlan,
    scheme: Scheme,
    hankel: Option<HankelArray>,
}

impl ConvertibleCode {
    pub(crate) fn assemble_parts(
        params: MergeParams,
        field: Field,
        p_i: Matrix,
        p_f: Matrix,
        plan: ConversionPlan,
        scheme: Scheme,
        hankel: Option<HankelArray>,
    ) -> ConvertibleCode {
        debug_assert_eq!((p_i.rows(), p_i.cols()), (params.k_i, params.r_i));
        debug_assert_eq!((p_f.rows(), p_f.cols()), (params.k_f(), params.r_f));
        ConvertibleCode { params, field, p_i, p_f, plan, scheme, hankel }
    }

    pub fn params(&self) -> &MergeParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Initial parity generator, kI x rI.
    pub fn p_i(&self) -> &Matrix {
        &self.p_i
    }

    /// Final parity generator, kF x rF.
    pub fn p_f(&self) -> &Matrix {
        &self.p_f
    }

    pub fn plan(&self) -> &ConversionPlan {
        &self.plan
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// The shared Hankel array, for schemes built from one.
    pub fn hankel(&self) -> Option<&HankelArray> {
        self.hankel.as_ref()
    }

    /// Systematic initial generator [I | PI], kI x nI.
    pub fn generator_initial(&self) -> Matrix {
        Matrix::identity(self.field.clone(), self.params.k_i)
            .hconcat(&self.p_i)
            .expect("shapes agree")
    }

    /// Systematic final generator [I | PF], kF x nF.
    pub fn generator_final(&self) -> Matrix {
        Matrix::identity(self.field.clone(), self.params.k_f())
            .hconcat(&self.p_f)
            .expect("shapes agree")
    }
}

/// Sum of i * (c + i) for i in 0..t — the largest total degree of a size-t
/// diagonal product in a grid of monomial degrees (i-1)(j-1).
fn diagonal_degree_sum(t: usize, c: i128) -> i128 {
    (0..t as i128).map(|i| i * (c + i)).sum()
}

/// The degree bound E*: the largest exponent of theta appearing in any
/// minor of the Vandermonde-power parity matrices, so every such minor is a
/// nonzero polynomial of degree <= E* and a field of size > 2^E* (degree
/// E* + 1) guarantees superregularity.
pub fn degree_bound_e(params: &MergeParams) -> u128 {
    let k_i = params.k_i as i128;
    let r_i = params.r_i as i128;
    let k_f = params.k_f() as i128;
    let e = diagonal_degree_sum(params.r_f, k_f - params.r_f as i128)
        .max(diagonal_degree_sum(params.r_i, k_i - r_i))
        .max(diagonal_degree_sum(params.k_i, r_i - k_i))
        .max(0);
    e as u128
}

/// General construction over GF(char^D), D = E* + 1: PI and PF have entries
/// theta^((i-1)(j-1)) for a primitive theta; new block l combines parity l
/// of stripe i with coefficient theta^((i-1) kI (l-1)).
pub fn general_construction(params: &MergeParams, characteristic: u64) -> Result<ConvertibleCode> {
    if params.r_f > params.r_i.min(params.k_i) {
        return Err(Error::PreconditionViolated {
            scheme: "general".into(),
            inequality: "rF <= min(rI, kI)".into(),
        });
    }
    let degree: usize = (degree_bound_e(params) + 1)
        .try_into()
        .map_err(|_| Error::InvalidParams("degree bound does not fit in usize".into()))?;
    let field = Field::new(characteristic, degree, None)?;
    let theta = field.primitive_element()?;
    let power = |i: usize, j: usize| theta.pow((i as i128) * (j as i128));
    let p_i = Matrix::from_fn(field.clone(), params.k_i, params.r_i, &power);
    let p_f = Matrix::from_fn(field.clone(), params.k_f(), params.r_f, &power);

    let mut new_blocks = Vec::with_capacity(params.r_f);
    for ell in 1..=params.r_f {
        let sources = (1..=params.lambda)
            .map(|i| PlanSource {
                stripe: i,
                block: params.k_i + ell,
                coeff: theta.pow(((i - 1) * params.k_i * (ell - 1)) as i128),
            })
            .collect();
        new_blocks.push(sources);
    }
    let plan = ConversionPlan::from_new_blocks(params, new_blocks);

    // The degree bound makes both matrices superregular; check it anyway so
    // a construction bug can never escape as a silently non-MDS code.
    assert!(p_i.is_superregular(), "initial parity matrix must be superregular");
    assert!(p_f.is_superregular(), "final parity matrix must be superregular");

    Ok(ConvertibleCode::assemble_parts(
        *params,
        field,
        p_i,
        p_f,
        plan,
        Scheme::General,
        None,
    ))
}

fn check_field_size(field: &Field, need: usize) -> Result<()> {
    if num_bigint::BigUint::from(need) > *field.order() {
        return Err(Error::SizeExceedsField { m: need, q: field.order().to_string() });
    }
    Ok(())
}

/// First Hankel construction: both parity matrices carved out of one
/// superregular array of size m = nF - 1. Each new block is the plain sum
/// of one designated parity from each stripe.
pub fn hankel1(params: &MergeParams, field: &Field) -> Result<ConvertibleCode> {
    let MergeParams { lambda, k_i, r_i, r_f } = *params;
    if r_f > r_i / lambda {
        return Err(Error::PreconditionViolated {
            scheme: "hankel1".into(),
            inequality: "rF <= floor(rI / lambda)".into(),
        });
    }
    // PI is chosen among the (lambda - 1) kI + rF columns that fit next to
    // the kI x * top band of the array, so rI may not exceed that count.
    if r_i > (lambda - 1) * k_i + r_f {
        return Err(Error::PreconditionViolated {
            scheme: "hankel1".into(),
            inequality: "rI <= (lambda - 1) * kI + rF".into(),
        });
    }
    let m = params.n_f() - 1;
    check_field_size(field, (params.n_i() - 1).max(m))?;
    let t = HankelArray::superregular(field, m)?;
    let b = t.values();

    // Q = top-left kI x ((lambda - 1) kI + rF) block. Column c of Q holds
    // b[c .. c + kI - 1]. The designated columns (i - 1) kI + l (for stripe
    // i, new block l) must all be picked; the remaining PI columns are the
    // smallest-index unused ones.
    let q_cols = (lambda - 1) * k_i + r_f;
    let mut selected: Vec<usize> = (1..=lambda)
        .flat_map(|i| (1..=r_f).map(move |ell| (i - 1) * k_i + ell))
        .collect();
    selected.sort_unstable();
    for c in 1..=q_cols {
        if selected.len() == r_i {
            break;
        }
        if !selected.contains(&c) {
            selected.push(c);
        }
    }
    selected.sort_unstable();
    debug_assert_eq!(selected.len(), r_i);

    let p_i = Matrix::from_fn(field.clone(), k_i, r_i, |i0, j0| b[i0 + selected[j0] - 1].clone());
    // PF = top-left kF x rF of the array; its band for stripe i at column l
    // equals Q column (i - 1) kI + l, which is what the plan reads.
    let p_f = t.submatrix(1, params.k_f(), 1, r_f)?;

    let mut new_blocks = Vec::with_capacity(r_f);
    for ell in 1..=r_f {
        let sources = (1..=lambda)
            .map(|i| {
                let q_col = (i - 1) * k_i + ell;
                let pos = selected.binary_search(&q_col).expect("designated column selected") + 1;
                PlanSource { stripe: i, block: k_i + pos, coeff: field.one() }
            })
            .collect();
        new_blocks.push(sources);
    }
    let plan = ConversionPlan::from_new_blocks(params, new_blocks);

    Ok(ConvertibleCode::assemble_parts(
        *params,
        field.clone(),
        p_i,
        p_f,
        plan,
        Scheme::Hankel1,
        Some(t),
    ))
}

/// Second Hankel construction: array of size m = kI * rI; PI column j is
/// the kI-window at offset (j - 1) kI, PF column l the lambda kI-window at
/// offset (l - 1) kI, i.e. the concatenation of PI columns l .. l+lambda-1.
pub fn hankel2(params: &MergeParams, field: &Field) -> Result<ConvertibleCode> {
    let MergeParams { lambda, k_i, r_i, r_f } = *params;
    if r_f + lambda > r_i + 1 {
        return Err(Error::PreconditionViolated {
            scheme: "hankel2".into(),
            inequality: "rF <= rI - lambda + 1".into(),
        });
    }
    // Conversion reads rF parities per stripe, which is only access-optimal
    // when that does not exceed min(kI, rF).
    if r_f > k_i {
        return Err(Error::PreconditionViolated {
            scheme: "hankel2".into(),
            inequality: "rF <= kI".into(),
        });
    }
    let m = k_i * r_i;
    check_field_size(field, m)?;
    let t = HankelArray::superregular(field, m)?;
    let b = t.values();

    let window = |i0: usize, j0: usize| b[j0 * k_i + i0].clone();
    let p_i = Matrix::from_fn(field.clone(), k_i, r_i, window);
    let p_f = Matrix::from_fn(field.clone(), params.k_f(), r_f, window);

    let mut new_blocks = Vec::with_capacity(r_f);
    for ell in 1..=r_f {
        let sources = (1..=lambda)
            .map(|i| PlanSource { stripe: i, block: k_i + ell + i - 1, coeff: field.one() })
            .collect();
        new_blocks.push(sources);
    }
    let plan = ConversionPlan::from_new_blocks(params, new_blocks);

    Ok(ConvertibleCode::assemble_parts(
        *params,
        field.clone(),
        p_i,
        p_f,
        plan,
        Scheme::Hankel2,
        Some(t),
    ))
}

/// Largest rF the s-group family supports: (s - lambda + 1) groups of
/// floor(rI / s) aligned columns, plus the oversized-group surplus.
pub fn hankel_family_bound(params: &MergeParams, s: usize) -> usize {
    let f = params.r_i / s;
    let rem = params.r_i % s;
    (s + 1).saturating_sub(params.lambda) * f + rem.saturating_sub(params.lambda - 1)
}

/// The s-group family interpolating between [`hankel1`] (s = lambda) and
/// [`hankel2`] (s = rI); both endpoints delegate so the identities hold
/// bit-for-bit. In between, the rI parity columns form s consecutive groups
/// (larger groups first) laid out at row offsets 0, kI, .., (s-1) kI in an
/// array of size s kI + floor(rI / s) - 1, and a final column is any
/// group-aligned window spanning lambda adjacent groups.
pub fn hankel_family(params: &MergeParams, field: &Field, s: usize) -> Result<ConvertibleCode> {
    let MergeParams { lambda, k_i, r_i, r_f } = *params;
    if s < lambda || s > r_i {
        return Err(Error::PreconditionViolated {
            scheme: "hankel-s".into(),
            inequality: "lambda <= s <= rI".into(),
        });
    }
    if s == lambda {
        return hankel1(params, field);
    }
    if s == r_i {
        return hankel2(params, field);
    }
    if r_f > hankel_family_bound(params, s) {
        return Err(Error::PreconditionViolated {
            scheme: "hankel-s".into(),
            inequality: "rF <= (s - lambda + 1) * floor(rI / s) + max(rI mod s - lambda + 1, 0)"
                .into(),
        });
    }
    if r_f > k_i {
        return Err(Error::PreconditionViolated {
            scheme: "hankel-s".into(),
            inequality: "rF <= kI".into(),
        });
    }
    let f = r_i / s;
    let rem = r_i % s;
    let m = s * k_i + f - 1;
    check_field_size(field, m)?;
    let t = HankelArray::superregular(field, m)?;
    let b = t.values();

    // group g (1-based) has size sizes[g-1], larger groups first; its
    // member t is the kI-window starting at b index (g - 1) kI + t.
    let sizes: Vec<usize> = (0..s).map(|g0| if g0 < rem { f + 1 } else { f }).collect();
    let mut col_start = Vec::with_capacity(r_i); // 1-based b index per PI column
    let mut group_offset = vec![0usize; s + 1]; // PI position offset per group
    for g in 1..=s {
        group_offset[g] = col_start.len();
        for tt in 1..=sizes[g - 1] {
            col_start.push((g - 1) * k_i + tt);
        }
    }
    debug_assert_eq!(col_start.len(), r_i);
    let p_i = Matrix::from_fn(field.clone(), k_i, r_i, |i0, j0| b[col_start[j0] - 1 + i0].clone());

    // valid final columns, in (g, t) order: window of lambda adjacent
    // groups starting at group g, member t present in all of them.
    let mut finals = Vec::new();
    for g in 1..=s - lambda + 1 {
        for tt in 1..=sizes[g + lambda - 2] {
            finals.push((g, tt));
        }
    }
    debug_assert!(finals.len() >= r_f);
    finals.truncate(r_f);
    let p_f = Matrix::from_fn(field.clone(), params.k_f(), r_f, |i0, l0| {
        let (g, tt) = finals[l0];
        b[(g - 1) * k_i + tt - 1 + i0].clone()
    });

    let mut new_blocks = Vec::with_capacity(r_f);
    for &(g, tt) in &finals {
        let sources = (1..=lambda)
            .map(|i| {
                let pos = group_offset[g + i - 1] + tt;
                PlanSource { stripe: i, block: k_i + pos, coeff: field.one() }
            })
            .collect();
        new_blocks.push(sources);
    }
    let plan = ConversionPlan::from_new_blocks(params, new_blocks);

    Ok(ConvertibleCode::assemble_parts(
        *params,
        field.clone(),
        p_i,
        p_f,
        plan,
        Scheme::HankelS(s),
        Some(t),
    ))
}

/// Independent Cauchy code pair; the conversion plan reads every data block
/// and re-encodes. Access-optimal exactly when rF > rI or rF >= kI — the
/// range the other schemes cannot reach.
pub fn trivial_construction(params: &MergeParams, field: &Field) -> Result<ConvertibleCode> {
    let MergeParams { lambda, k_i, r_i, r_f } = *params;
    let need = params.n_i().max(params.n_f());
    check_field_size(field, need)?;
    let points: Vec<FieldElement> = field.iter_elements().take(need).collect();
    let pts = &points;
    let cauchy = |k: usize| {
        move |i0: usize, j0: usize| (&pts[i0] - &pts[k + j0]).inv().expect("distinct points")
    };
    let p_i = Matrix::from_fn(field.clone(), k_i, r_i, cauchy(k_i));
    let p_f = Matrix::from_fn(field.clone(), params.k_f(), r_f, cauchy(params.k_f()));

    let mut new_blocks = Vec::with_capacity(r_f);
    for ell in 0..r_f {
        let mut sources = Vec::with_capacity(params.k_f());
        for i in 1..=lambda {
            for j in 1..=k_i {
                sources.push(PlanSource {
                    stripe: i,
                    block: j,
                    coeff: p_f.get((i - 1) * k_i + j - 1, ell).clone(),
                });
            }
        }
        new_blocks.push(sources);
    }
    let plan = ConversionPlan::from_new_blocks(params, new_blocks);

    Ok(ConvertibleCode::assemble_parts(
        *params,
        field.clone(),
        p_i,
        p_f,
        plan,
        Scheme::Trivial,
        None,
    ))
}

/// Re-target a Hankel-backed code to fewer stripes and/or fewer final
/// parities without touching the initial code: PF shrinks to its top-left
/// lambda' kI x rF' corner and the plan is sliced accordingly. The identity
/// restriction returns an identical code.
pub fn restrict(code: &ConvertibleCode, lambda_new: usize, r_f_new: usize) -> Result<ConvertibleCode> {
    if code.hankel.is_none() {
        return Err(Error::NotRestrictable(code.scheme.name().into()));
    }
    let params = *code.params();
    if lambda_new < 2 || lambda_new > params.lambda {
        return Err(Error::PreconditionViolated {
            scheme: "restrict".into(),
            inequality: "2 <= lambda' <= lambda".into(),
        });
    }
    if r_f_new > params.r_f {
        return Err(Error::PreconditionViolated {
            scheme: "restrict".into(),
            inequality: "rF' <= rF".into(),
        });
    }
    let new_params = MergeParams::new(lambda_new, params.k_i, params.r_i, r_f_new)?;
    let row_idx: Vec<usize> = (0..new_params.k_f()).collect();
    let col_idx: Vec<usize> = (0..r_f_new).collect();
    let p_f = code.p_f.submatrix(&row_idx, &col_idx);
    let new_blocks: Vec<Vec<PlanSource>> = code.plan.new_blocks[..r_f_new]
        .iter()
        .map(|sources| sources.iter().filter(|s| s.stripe <= lambda_new).cloned().collect())
        .collect();
    let plan = ConversionPlan::from_new_blocks(&new_params, new_blocks);

    Ok(ConvertibleCode::assemble_parts(
        new_params,
        code.field.clone(),
        code.p_i.clone(),
        p_f,
        plan,
        code.scheme,
        code.hankel.clone(),
    ))
}

/// Smallest field order a scheme needs for the given parameters. `General`
/// picks its own field, so it is not covered here.
pub fn required_field_order(params: &MergeParams, scheme: Scheme) -> Result<u128> {
    let q = match scheme {
        Scheme::Hankel1 => (params.n_i().max(params.n_f()) - 1) as u128,
        Scheme::Hankel2 => (params.k_i * params.r_i) as u128,
        Scheme::HankelS(s) if s == params.lambda => {
            return required_field_order(params, Scheme::Hankel1)
        }
        Scheme::HankelS(s) if s == params.r_i => {
            return required_field_order(params, Scheme::Hankel2)
        }
        Scheme::HankelS(s) => {
            if s == 0 {
                return Err(Error::InvalidParams("s must be positive".into()));
            }
            (s * params.k_i + params.r_i / s - 1) as u128
        }
        Scheme::Trivial => params.n_i().max(params.n_f()) as u128,
        Scheme::General => {
            return Err(Error::InvalidParams(
                "the general scheme derives its field from the degree bound".into(),
            ))
        }
    };
    Ok(q.max(2))
}

/// Smallest prime power >= n, as a field.
pub fn smallest_field_of_order_at_least(n: u128) -> Result<Field> {
    let mut q = n.max(2);
    loop {
        if let Ok(field) = Field::of_order(q) {
            return Ok(field);
        }
        q += 1;
    }
}

/// Pick the best applicable scheme: Hankel constructions in increasing
/// group count (hankel1 first, hankel2 last), then the general
/// construction, then the trivial pair — each over its smallest admissible
/// field (characteristic 2 for general). The result is always
/// access-optimal.
pub fn auto_construction(params: &MergeParams) -> Result<ConvertibleCode> {
    for s in params.lambda..=params.r_i {
        let Ok(need) = required_field_order(params, Scheme::HankelS(s)) else {
            continue;
        };
        let field = smallest_field_of_order_at_least(need)?;
        if let Ok(code) = hankel_family(params, &field, s) {
            return Ok(code);
        }
    }
    if params.r_f <= params.r_i.min(params.k_i) {
        return general_construction(params, 2);
    }
    let field = smallest_field_of_order_at_least(required_field_order(params, Scheme::Trivial)?)?;
    trivial_construction(params, &field)
}
