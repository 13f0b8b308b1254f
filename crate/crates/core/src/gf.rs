//! Arithmetic in GF(p^m).
//!
//! A [`Field`] is defined by a prime characteristic `p`, an extension degree
//! `m`, and a monic irreducible modulus of degree `m` over GF(p). Elements
//! are coefficient vectors of length `m` (index = degree). Every derived
//! choice is deterministic:
//!
//! * omitted modulus: the first irreducible polynomial in increasing order of
//!   the integer encoding of its low `m` coefficients (base p),
//! * primitive element: the first element in encoding order whose
//!   multiplicative order is q - 1, verified against the factorization of
//!   q - 1.
//!
//! The canonical integer encoding of an element is `sum coeffs[i] * p^i`;
//! all serialized formats use it.

mod bits;
mod nt;
mod poly;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parameters and caches shared by all elements of one field.
pub struct FieldSpec {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    packed_modulus: Vec<u64>, // populated only for p == 2
    order: BigUint,
    qm1_primes: OnceLock<Vec<u128>>,
    primitive: OnceLock<Vec<u64>>,
}

/// A finite field GF(p^m). Cheap to clone (shared spec).
#[derive(Clone)]
pub struct Field {
    spec: Arc<FieldSpec>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec)
            || (self.spec.p == other.spec.p
                && self.spec.m == other.spec.m
                && self.spec.modulus == other.spec.modulus)
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.m == 1 {
            write!(f, "GF({})", self.spec.p)
        } else {
            write!(f, "GF({}^{})", self.spec.p, self.spec.m)
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Field {
    /// Build GF(p^m). With `modulus: None` the canonical modulus is chosen
    /// deterministically; an explicit modulus must be monic of degree m with
    /// coefficients below p, and is checked for irreducibility.
    pub fn new(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
        if p < 2 || !nt::is_prime(p as u128) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch {
                detail: "extension degree m must be at least 1".into(),
            });
        }
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m + 1 {
                    return Err(Error::DegreeMismatch {
                        detail: format!("expected {} coefficients, got {}", m + 1, f.len()),
                    });
                }
                if f[m] != 1 {
                    return Err(Error::DegreeMismatch {
                        detail: "modulus must be monic".into(),
                    });
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(Error::DegreeMismatch {
                        detail: format!("modulus coefficients must be below p = {p}"),
                    });
                }
                if !is_irreducible(p, &f) {
                    return Err(Error::NotIrreducible { p });
                }
                f
            }
            None => find_modulus(p, m),
        };
        let mut order = BigUint::one();
        for _ in 0..m {
            order *= p;
        }
        let packed_modulus = if p == 2 { bits::pack(&modulus) } else { Vec::new() };
        Ok(Field {
            spec: Arc::new(FieldSpec {
                p,
                m,
                modulus,
                packed_modulus,
                order,
                qm1_primes: OnceLock::new(),
                primitive: OnceLock::new(),
            }),
        })
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// The field of order q, which must be a prime power p^m; extension
    /// fields use the canonical modulus.
    pub fn of_order(q: u128) -> Result<Field> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("{q} is not a prime power")));
        }
        let p = *nt::distinct_prime_factors(q).iter().min().expect("q >= 2 has a factor");
        let mut m = 0usize;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidParams(format!("{q} is not a prime power")));
        }
        let p: u64 =
            p.try_into().map_err(|_| Error::InvalidParams(format!("characteristic of {q} exceeds 64 bits")))?;
        Field::new(p, m, None)
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    /// Extension degree m.
    pub fn m(&self) -> usize {
        self.spec.m
    }

    /// Monic modulus, m + 1 coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.spec.modulus
    }

    /// Field order q = p^m.
    pub fn order(&self) -> &BigUint {
        &self.spec.order
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.spec.order.to_u128()
    }

    fn make(&self, mut coeffs: Vec<u64>) -> FieldElement {
        coeffs.resize(self.spec.m, 0);
        FieldElement { field: self.clone(), coeffs }
    }

    pub fn zero(&self) -> FieldElement {
        self.make(Vec::new())
    }

    pub fn one(&self) -> FieldElement {
        self.make(vec![1])
    }

    /// Element from explicit coefficients (constant term first, at most m of
    /// them, each below p).
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() > self.spec.m {
            return Err(Error::DegreeMismatch {
                detail: format!(
                    "element needs at most {} coefficients, got {}",
                    self.spec.m,
                    coeffs.len()
                ),
            });
        }
        if coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::EncodingOutOfRange {
                encoding: format!("{coeffs:?}"),
                field: self.to_string(),
            });
        }
        Ok(self.make(coeffs))
    }

    /// Element with integer encoding v. Panics when v >= q; intended for
    /// literals and small-field loops.
    pub fn from_int(&self, v: u128) -> FieldElement {
        let p = self.spec.p as u128;
        let mut coeffs = Vec::with_capacity(self.spec.m);
        let mut v = v;
        for _ in 0..self.spec.m {
            coeffs.push((v % p) as u64);
            v /= p;
        }
        assert_eq!(v, 0, "encoding exceeds field order {}", self.spec.order);
        self.make(coeffs)
    }

    /// Element with the given canonical integer encoding.
    pub fn from_encoding(&self, enc: &BigUint) -> Result<FieldElement> {
        if *enc >= self.spec.order {
            return Err(Error::EncodingOutOfRange {
                encoding: enc.to_string(),
                field: self.to_string(),
            });
        }
        let p = BigUint::from(self.spec.p);
        let mut coeffs = Vec::with_capacity(self.spec.m);
        let mut v = enc.clone();
        for _ in 0..self.spec.m {
            coeffs.push((&v % &p).to_u64().expect("digit below p fits in u64"));
            v /= &p;
        }
        Ok(self.make(coeffs))
    }

    /// All field elements in increasing encoding order, starting from zero.
    pub fn iter_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let mut next = Some(vec![0u64; self.spec.m]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            // base-p odometer; stop after the last element wraps around
            let mut carry = true;
            for digit in succ.iter_mut() {
                if !carry {
                    break;
                }
                *digit += 1;
                if *digit == self.spec.p {
                    *digit = 0;
                } else {
                    carry = false;
                }
            }
            if !carry {
                next = Some(succ);
            }
            Some(self.make(cur))
        })
    }

    /// The canonical generator of the multiplicative group: the element with
    /// the smallest encoding whose order is exactly q - 1, verified against
    /// the prime factorization of q - 1. Needs q - 1 to fit in 128 bits.
    pub fn primitive_element(&self) -> Result<FieldElement> {
        if let Some(cached) = self.spec.primitive.get() {
            return Ok(self.make(cached.clone()));
        }
        let qm1 = (&self.spec.order - BigUint::one())
            .to_u128()
            .ok_or_else(|| Error::FieldTooLarge { q: self.spec.order.to_string() })?;
        let primes = self.spec.qm1_primes.get_or_init(|| nt::distinct_prime_factors(qm1));
        for cand in self.iter_elements().skip(1) {
            if primes.iter().all(|&l| !cand.pow_u128(qm1 / l).is_one()) {
                let _ = self.spec.primitive.set(cand.coeffs.clone());
                return Ok(cand);
            }
        }
        unreachable!("every finite field has a primitive element")
    }
}

/// An element of a [`Field`]: a coefficient vector of length m, constant
/// term first.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Canonical integer encoding sum(coeffs[i] * p^i).
    pub fn encoding(&self) -> BigUint {
        let p = BigUint::from(self.field.spec.p);
        let mut acc = BigUint::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * &p + c;
        }
        acc
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let p = self.field.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        self.field.make(coeffs)
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.spec.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        self.field.make(coeffs)
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let p = self.field.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        self.field.make(coeffs)
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let s = &self.field.spec;
        if s.p == 2 {
            let prod = bits::modmul(
                &bits::pack(&self.coeffs),
                &bits::pack(&other.coeffs),
                &s.packed_modulus,
                s.m,
            );
            self.field.make(bits::unpack(&prod, s.m))
        } else {
            self.field.make(poly::modmul(&self.coeffs, &other.coeffs, &s.modulus, s.p))
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<FieldElement> {
        let s = &self.field.spec;
        let coeffs = if s.p == 2 {
            bits::inv(&bits::pack(&self.coeffs), &s.packed_modulus, s.m)
                .map(|v| bits::unpack(&v, s.m))
        } else {
            poly::inv(&self.coeffs, &s.modulus, s.p)
        };
        coeffs.map(|c| self.field.make(c)).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }

    /// a^e with negative exponents allowed for nonzero a (panics on a
    /// negative power of zero). 0^0 = 1 by convention.
    pub fn pow(&self, e: i128) -> FieldElement {
        if e < 0 {
            let inv = self.inv().expect("negative power of zero");
            inv.pow_u128(e.unsigned_abs())
        } else {
            self.pow_u128(e as u128)
        }
    }

    fn pow_u128(&self, mut e: u128) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encoding())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.encoding(), self.field)
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Irreducibility and the canonical modulus scan
// ---------------------------------------------------------------------------

/// Rabin's test: f (monic, degree m) is irreducible over GF(p) iff
/// x^(p^m) = x (mod f) and gcd(x^(p^(m/t)) - x, f) = 1 for every prime t | m.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let checkpoints: Vec<usize> = nt::small_prime_factors(m).iter().map(|t| m / t).collect();
    if p == 2 {
        let fp = bits::pack(f);
        let x = bits::pack(&[0, 1]);
        let mut cur = x.clone();
        let minus_x = |v: &[u64]| {
            let mut d = v.to_vec();
            d[0] ^= 2; // toggle the coefficient of x; m >= 2 so bit 1 is in range
            d
        };
        for j in 1..=m {
            cur = bits::modmul(&cur, &cur, &fp, m);
            if j < m && checkpoints.contains(&j) {
                if bits::degree(&bits::gcd(&minus_x(&cur), &fp)) != Some(0) {
                    return false;
                }
            }
        }
        bits::is_zero(&minus_x(&cur))
    } else {
        let x = vec![0, 1];
        let mut cur = x.clone();
        for j in 1..=m {
            cur = poly::powmod(&cur, p, f, p);
            if j < m && checkpoints.contains(&j) {
                let diff = poly::add(&cur, &poly::scale(&x, p - 1, p), p);
                if poly::degree(&poly::gcd(&diff, f, p)) != Some(0) {
                    return false;
                }
            }
        }
        poly::degree(&cur) == Some(1) && cur[0] == 0 && cur[1] == 1
    }
}

/// First irreducible monic polynomial of degree m over GF(p), scanning the
/// integer encoding of the low m coefficients upward.
fn find_modulus(p: u64, m: usize) -> Vec<u64> {
    let mut low = vec![0u64; m];
    loop {
        let mut f = low.clone();
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
        let mut i = 0;
        loop {
            assert!(i < m, "no irreducible polynomial found (impossible)");
            low[i] += 1;
            if low[i] == p {
                low[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}
