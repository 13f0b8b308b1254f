//! Lexicographic combination enumeration shared by the superregularity sweep
//! and the exhaustive verification oracles.

/// All t-subsets of {0, .., n-1} in lexicographic order.
pub fn combinations(n: usize, t: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if t <= n { Some((0..t).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.take()?;
        if t > 0 {
            let mut next = out.clone();
            // rightmost index that can still move right
            let mut i = t;
            while i > 0 {
                i -= 1;
                if next[i] < n - (t - i) {
                    next[i] += 1;
                    for j in i + 1..t {
                        next[j] = next[j - 1] + 1;
                    }
                    cur = Some(next);
                    break;
                }
            }
        }
        Some(out)
    })
}

/// Binomial coefficient, saturating; used only for search-size guards.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
