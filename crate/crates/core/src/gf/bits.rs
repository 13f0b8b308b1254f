//! Bit-packed polynomials over GF(2).
//!
//! Coefficient i lives at bit (i % 64) of limb (i / 64). The characteristic-2
//! fast path matters: the headline parameters put the code over GF(2^111),
//! where coefficient-vector arithmetic would make the superregularity sweep
//! and decode loops needlessly slow.

/// Pack a 0/1 coefficient slice.
pub fn pack(coeffs: &[u64]) -> Vec<u64> {
    let mut limbs = vec![0u64; coeffs.len().div_ceil(64).max(1)];
    for (i, &c) in coeffs.iter().enumerate() {
        debug_assert!(c < 2);
        limbs[i / 64] |= (c & 1) << (i % 64);
    }
    limbs
}

/// Unpack the low `n` coefficients.
pub fn unpack(limbs: &[u64], n: usize) -> Vec<u64> {
    (0..n).map(|i| get(limbs, i) as u64).collect()
}

pub fn get(limbs: &[u64], i: usize) -> bool {
    limbs.get(i / 64).is_some_and(|&w| w >> (i % 64) & 1 == 1)
}

pub fn is_zero(limbs: &[u64]) -> bool {
    limbs.iter().all(|&w| w == 0)
}

/// Degree of the polynomial, or None for the zero polynomial.
pub fn degree(limbs: &[u64]) -> Option<usize> {
    for (i, &w) in limbs.iter().enumerate().rev() {
        if w != 0 {
            return Some(i * 64 + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

/// dst ^= src << shift. dst must already be long enough.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (words, bits) = (shift / 64, shift % 64);
    for (i, &s) in src.iter().enumerate() {
        if s == 0 {
            continue;
        }
        dst[i + words] ^= s << bits;
        if bits > 0 {
            let spill = s >> (64 - bits);
            if spill != 0 {
                dst[i + words + 1] ^= spill;
            }
        }
    }
}

/// Carry-less product a * b.
pub fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (da, db) = match (degree(a), degree(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return vec![0],
    };
    let mut out = vec![0u64; (da + db + 1).div_ceil(64) + 1];
    for i in 0..=da {
        if get(a, i) {
            xor_shifted(&mut out, &b[..db / 64 + 1], i);
        }
    }
    out
}

/// Reduce r in place modulo f (deg f = df, bit df of f is set).
pub fn rem(r: &mut Vec<u64>, f: &[u64], df: usize) {
    while let Some(d) = degree(r) {
        if d < df {
            break;
        }
        xor_shifted(r, &f[..df / 64 + 1], d - df);
    }
    r.truncate(df.div_ceil(64).max(1));
    while r.len() < df.div_ceil(64).max(1) {
        r.push(0);
    }
}

/// a * b mod f.
pub fn modmul(a: &[u64], b: &[u64], f: &[u64], df: usize) -> Vec<u64> {
    let mut prod = mul(a, b);
    rem(&mut prod, f, df);
    prod
}

/// Inverse of a modulo f, None when a == 0. Binary-polynomial extended
/// Euclid; f is irreducible so every nonzero residue is invertible.
pub fn inv(a: &[u64], f: &[u64], df: usize) -> Option<Vec<u64>> {
    degree(a)?;
    let width = (df + 1).div_ceil(64).max(1);
    let grow = |v: &[u64]| {
        let mut v = v.to_vec();
        v.resize(width + 1, 0);
        v
    };
    let mut u = grow(a);
    let mut v = grow(f);
    let mut g1 = grow(&[1]);
    let mut g2 = grow(&[0]);
    while degree(&u) != Some(0) {
        let du = degree(&u).expect("gcd(a, f) = 1 so u never vanishes");
        let dv = degree(&v).expect("f is nonzero");
        if du < dv {
            std::mem::swap(&mut u, &mut v);
            std::mem::swap(&mut g1, &mut g2);
            continue;
        }
        let j = du - dv;
        let vc = v.clone();
        let gc = g2.clone();
        xor_shifted(&mut u, &vc, j);
        xor_shifted(&mut g1, &gc, j);
    }
    rem(&mut g1, f, df);
    Some(g1)
}

/// gcd(a, b), normalized (monic is automatic over GF(2)).
pub fn gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let Some(db) = degree(&b) else { return a };
        rem(&mut a, &b, db);
        // now deg a < deg b (rem leaves the remainder below deg b)
        std::mem::swap(&mut a, &mut b);
    }
}
