//! Dense polynomials over GF(p) as coefficient vectors (index = degree).
//! This is the generic-characteristic path; characteristic 2 uses the
//! bit-packed routines in `bits` instead.

/// Degree, or None for the zero polynomial. Trailing zero coefficients are
/// tolerated everywhere.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn is_zero(a: &[u64]) -> bool {
    degree(a).is_none()
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    let len = degree(&a).map_or(1, |d| d + 1);
    a.truncate(len);
    a
}

/// Inverse of a modulo prime p (extended Euclid on integers).
pub fn inv_mod_p(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128 % p as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of {a} mod {p} requires gcd 1");
    old_s.rem_euclid(p as i128) as u64
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| mulp(x, c, p)).collect())
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return vec![0];
    };
    let mut out = vec![0u64; da + db + 1];
    for i in 0..=da {
        if a[i] == 0 {
            continue;
        }
        for j in 0..=db {
            out[i + j] = (out[i + j] + mulp(a[i], b[j], p)) % p;
        }
    }
    out
}

/// Quotient and remainder of a by b (b nonzero).
pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod_p(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mulp(r[dr], lead_inv, p);
        q[dr - db] = c;
        for j in 0..=db {
            let sub = mulp(c, b[j], p);
            r[dr - db + j] = (r[dr - db + j] + p - sub) % p;
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    divmod(a, f, p).1
}

pub fn modmul(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

/// a^e mod f.
pub fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = rem(a, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = modmul(&acc, &base, f, p);
        }
        base = modmul(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

/// Monic gcd of a and b.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero(&b) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    match degree(&a) {
        Some(d) => scale(&a, inv_mod_p(a[d], p), p),
        None => a,
    }
}

/// Inverse of a modulo f (f irreducible), None for a == 0.
pub fn inv(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
    if is_zero(a) {
        return None;
    }
    // Extended Euclid: maintain s with s * a = r (mod f).
    let (mut r0, mut r1) = (f.to_vec(), rem(a, f, p));
    let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
    while !is_zero(&r1) {
        let (q, r) = divmod(&r0, &r1, p);
        let qs = mul(&q, &s1, p);
        let neg_qs = scale(&qs, p - 1, p);
        let s = add(&s0, &neg_qs, p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
    }
    let d = degree(&r0).expect("gcd of nonzero polynomials is nonzero");
    debug_assert_eq!(d, 0, "f must be irreducible and a nonzero");
    Some(rem(&scale(&s0, inv_mod_p(r0[0], p), p), f, p))
}
