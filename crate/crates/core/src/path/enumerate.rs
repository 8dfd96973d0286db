use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::FareyPath;

/// All `⊲`-sets of degree `1..=max_m`, level `k` holding degree `k + 1`,
/// each level sorted by canonical key. Level `m` is obtained from level
/// `m − 1` by inserting one mediant in every possible edge.
pub fn enumerate_paths(max_m: usize) -> Vec<Vec<FareyPath>> {
    let mut levels: Vec<Vec<FareyPath>> = Vec::new();
    if max_m == 0 {
        return levels;
    }
    levels.push(vec![FareyPath::empty()]);
    for _ in 2..=max_m {
        let mut next = BTreeMap::new();
        for c in levels.last().expect("nonempty") {
            for i in 1..=c.degree() {
                let d = c.insert_mediant(i);
                next.entry(d.key()).or_insert(d);
            }
        }
        levels.push(next.into_values().collect());
    }
    levels
}

/// The Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> BigUint {
    let mut c = BigUint::from(1u32);
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}
