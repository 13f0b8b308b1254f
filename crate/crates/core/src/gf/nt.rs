//! Integer number theory at desk scale: modular arithmetic, Miller-Rabin,
//! Pollard rho. Used for primality of p, irreducibility degree splits, and
//! factoring q - 1 during primitive-element search.

/// (a + b) mod n without overflow; requires a, b < n.
pub fn addmod(a: u128, b: u128, n: u128) -> u128 {
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

/// (a * b) mod n without overflow.
pub fn mulmod(a: u128, b: u128, n: u128) -> u128 {
    let (a, b) = (a % n, b % n);
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return a * b % n;
    }
    // Russian-peasant fallback for operands above 64 bits.
    let (mut acc, mut a, mut b) = (0u128, a, b);
    while b > 0 {
        if b & 1 == 1 {
            acc = addmod(acc, a, n);
        }
        a = addmod(a, a, n);
        b >>= 1;
    }
    acc
}

/// a^e mod n.
pub fn powmod(mut a: u128, mut e: u128, n: u128) -> u128 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u128;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, n);
        }
        a = mulmod(a, a, n);
        e >>= 1;
    }
    acc
}

fn miller_rabin_round(n: u128, base: u128, d: u128, r: u32) -> bool {
    let base = base % n;
    if base == 0 {
        return true;
    }
    let mut x = powmod(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..r {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin below 2^64; the fixed witness set is known to
/// be exact there. Above 2^64 we add rounds with bases derived from n, which
/// is overwhelming certainty at the sizes this crate ever sees.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let d = n - 1;
    let r = d.trailing_zeros();
    let d = d >> r;
    const WITNESSES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if !WITNESSES.iter().all(|&w| miller_rabin_round(n, w, d, r)) {
        return false;
    }
    if n < 1u128 << 64 {
        return true;
    }
    let mut seed = (n as u64) ^ ((n >> 64) as u64) ^ 0x9e37_79b9_7f4a_7c15;
    (0..32).all(|_| {
        seed = splitmix64(seed);
        miller_rabin_round(n, 2 + seed as u128 % (n - 3), d, r)
    })
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One nontrivial factor of an odd composite n (Brent's cycle variant).
fn pollard_rho(n: u128) -> u128 {
    debug_assert!(n > 3 && !is_prime(n));
    let mut c = 1u128;
    loop {
        let f = |x: u128| addmod(mulmod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors of n, ascending.
pub fn distinct_prime_factors(n: u128) -> Vec<u128> {
    let mut n = n;
    let mut primes = Vec::new();
    let push = |p: u128, primes: &mut Vec<u128>| {
        if !primes.contains(&p) {
            primes.push(p);
        }
    };
    for d in [2u128, 3, 5] {
        while n % d == 0 {
            push(d, &mut primes);
            n /= d;
        }
    }
    let mut d = 7u128;
    while d * d <= n && d < 100_000 {
        while n % d == 0 {
            push(d, &mut primes);
            n /= d;
        }
        d += 2;
    }
    let mut pending = vec![n];
    while let Some(m) = pending.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut primes);
        } else {
            let f = pollard_rho(m);
            pending.push(f);
            pending.push(m / f);
        }
    }
    primes.sort_unstable();
    primes
}

/// Prime factors of a small integer (used for degree splits in the
/// irreducibility test).
pub fn small_prime_factors(n: usize) -> Vec<usize> {
    distinct_prime_factors(n as u128)
        .into_iter()
        .map(|p| p as usize)
        .collect()
}
