//! Fibonacci numbers, binary and Zeckendorf expansions, and carry-rule
//! arithmetic on both.
//!
//! Fibonacci numbers are indexed `a₀ = 0, a₁ = a₂ = 1`, and the Zeckendorf
//! digits use `φᵏ = a_{k+1}`, so `φ¹ = 1, φ² = 2, φ³ = 3, φ⁴ = 5`. Canonical
//! expansions use exponents `≥ 1`, no two adjacent.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

static FIB: RwLock<Vec<BigUint>> = RwLock::new(Vec::new());

/// `a_k`, memoised in a table that only ever grows.
pub fn fib(k: usize) -> BigUint {
    {
        let table = FIB.read().expect("fibonacci table poisoned");
        if let Some(a) = table.get(k) {
            return a.clone();
        }
    }
    let mut table = FIB.write().expect("fibonacci table poisoned");
    if table.is_empty() {
        table.push(BigUint::zero());
        table.push(BigUint::one());
    }
    while table.len() <= k {
        let n = table.len();
        let next = &table[n - 1] + &table[n - 2];
        table.push(next);
    }
    table[k].clone()
}

/// `φᵏ = a_{k+1}`.
pub fn phi_pow(k: u32) -> BigUint {
    fib(k as usize + 1)
}

fn fib_u128(k: usize) -> Option<u128> {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..k {
        let c = a.checked_add(b)?;
        a = b;
        b = c;
    }
    Some(a)
}

/// A canonical Zeckendorf expansion `Σ φ^{nⱼ}`, exponents strictly
/// decreasing with gaps of at least two, all `≥ 1`. Zero is the empty sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Zeck {
    exponents: Vec<u32>,
}

impl Zeck {
    pub fn encode(n: &BigUint) -> Zeck {
        let mut rest = n.clone();
        let mut exponents = Vec::new();
        if rest.is_zero() {
            return Zeck { exponents };
        }
        let mut k = 1u32;
        while phi_pow(k + 1) <= rest {
            k += 1;
        }
        loop {
            let p = phi_pow(k);
            if p <= rest {
                rest -= p;
                exponents.push(k);
                if rest.is_zero() || k < 3 {
                    break;
                }
                k -= 2;
            } else {
                k -= 1;
            }
            if k == 0 {
                break;
            }
        }
        debug_assert!(rest.is_zero());
        Zeck { exponents }
    }

    pub fn from_u64(n: u64) -> Zeck {
        Zeck::encode(&BigUint::from(n))
    }

    /// Checks a descending exponent list for canonical form.
    pub fn from_exponents(exponents: Vec<u32>) -> Result<Zeck> {
        if exponents.contains(&0) {
            return Err(Error::Precondition("Zeckendorf exponents start at 1".into()));
        }
        if exponents.windows(2).any(|w| w[0] < w[1] + 2) {
            return Err(Error::Precondition(format!(
                "{exponents:?} is not strictly decreasing with gaps of at least 2"
            )));
        }
        Ok(Zeck { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn decode(&self) -> BigUint {
        self.exponents.iter().map(|&e| phi_pow(e)).sum()
    }

    pub fn is_canonical(&self) -> bool {
        Zeck::from_exponents(self.exponents.clone()).is_ok()
    }

    /// Digits from `φ^{max}` down to `φ¹`.
    pub fn to_bits(&self) -> String {
        bits(&self.exponents, 1)
    }

    pub fn add(&self, other: &Zeck) -> Zeck {
        let top = self.exponents.first().max(other.exponents.first()).copied().unwrap_or(0);
        let mut counts = vec![0u32; top as usize + 4];
        for &e in self.exponents.iter().chain(&other.exponents) {
            counts[e as usize] += 1;
        }
        Zeck {
            exponents: normalize_fib(counts),
        }
    }

    /// Product, by decoding, multiplying and re-encoding.
    pub fn mul(&self, other: &Zeck) -> Zeck {
        Zeck::encode(&(self.decode() * other.decode()))
    }
}

fn bits(exponents: &[u32], low: u32) -> String {
    let Some(&top) = exponents.first() else {
        return "0".into();
    };
    (low..=top)
        .rev()
        .map(|k| if exponents.contains(&k) { '1' } else { '0' })
        .collect()
}

/// Rewrites a digit-count vector to canonical form with
/// `φⁿ + φ^{n+1} → φ^{n+2}`, `2φⁿ → φ^{n+1} + φ^{n−2}` (`n ≥ 3`) and the
/// low cases `2φ² → φ³ + φ¹`, `2φ¹ → φ²`, `φ⁰ → φ¹`. Every rewrite moves the
/// count vector up in the order that compares the highest digits first, so
/// the loop ends.
fn normalize_fib(mut c: Vec<u32>) -> Vec<u32> {
    let grow = |c: &mut Vec<u32>, n: usize| {
        if c.len() <= n + 2 {
            c.resize(n + 3, 0);
        }
    };
    loop {
        let mut changed = false;
        if c[0] > 0 {
            c[1] += c[0];
            c[0] = 0;
            changed = true;
        }
        let mut n = c.len();
        while n > 1 {
            n -= 1;
            if c[n] >= 2 {
                grow(&mut c, n);
                c[n] -= 2;
                c[n + 1] += 1;
                match n {
                    1 => {}
                    2 => c[1] += 1,
                    _ => c[n - 2] += 1,
                }
                debug_assert!(local_doubling_holds(n));
                changed = true;
                break;
            }
            if c[n] >= 1 && n + 1 < c.len() && c[n + 1] >= 1 {
                grow(&mut c, n);
                c[n] -= 1;
                c[n + 1] -= 1;
                c[n + 2] += 1;
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    (1..c.len()).rev().filter(|&k| c[k] > 0).map(|k| k as u32).collect()
}

fn local_doubling_holds(n: usize) -> bool {
    let value = |k: usize| fib_u128(k + 1);
    let rhs = match n {
        1 => value(2),
        2 => value(3).zip(value(1)).map(|(a, b)| a + b),
        _ => value(n + 1).zip(value(n - 2)).map(|(a, b)| a + b),
    };
    match (value(n), rhs) {
        (Some(a), Some(b)) => 2 * a == b,
        _ => true,
    }
}

impl fmt::Display for Zeck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.exponents.iter().map(|e| format!("φ^{e}")).collect();
        f.write_str(&terms.join("+"))
    }
}

/// A binary expansion `Σ 2^{nⱼ}`, exponents strictly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bin {
    exponents: Vec<u32>,
}

impl Bin {
    pub fn encode(n: &BigUint) -> Bin {
        let exponents = (0..n.bits()).rev().filter(|&k| n.bit(k)).map(|k| k as u32).collect();
        Bin { exponents }
    }

    pub fn from_u64(n: u64) -> Bin {
        Bin::encode(&BigUint::from(n))
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Result<Bin> {
        if exponents.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Precondition(format!(
                "{exponents:?} is not strictly decreasing"
            )));
        }
        Ok(Bin { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn decode(&self) -> BigUint {
        let mut n = BigUint::zero();
        for &e in &self.exponents {
            n.set_bit(e as u64, true);
        }
        n
    }

    pub fn to_bits(&self) -> String {
        bits(&self.exponents, 0)
    }

    pub fn add(&self, other: &Bin) -> Bin {
        let mut counts = Vec::new();
        for &e in self.exponents.iter().chain(&other.exponents) {
            bump(&mut counts, e as usize, 1);
        }
        Bin {
            exponents: normalize_bin(counts),
        }
    }

    /// `2ⁿ·2ᵐ = 2^{n+m}` on every pair of digits, then carries.
    pub fn mul(&self, other: &Bin) -> Bin {
        let mut counts = Vec::new();
        for &a in &self.exponents {
            for &b in &other.exponents {
                bump(&mut counts, (a + b) as usize, 1);
            }
        }
        Bin {
            exponents: normalize_bin(counts),
        }
    }
}

fn bump(c: &mut Vec<u64>, k: usize, by: u64) {
    if c.len() <= k {
        c.resize(k + 1, 0);
    }
    c[k] += by;
}

/// Carries with `2ⁿ + 2ⁿ = 2^{n+1}` from the bottom up.
fn normalize_bin(mut c: Vec<u64>) -> Vec<u32> {
    let mut k = 0;
    while k < c.len() {
        if c[k] >= 2 {
            let carry = c[k] / 2;
            c[k] %= 2;
            bump(&mut c, k + 1, carry);
        }
        k += 1;
    }
    (0..c.len()).rev().filter(|&k| c[k] == 1).map(|k| k as u32).collect()
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.exponents.iter().map(|e| format!("2^{e}")).collect();
        f.write_str(&terms.join("+"))
    }
}

/// How the product pattern `φⁿ·φᵐ = φ^{n+m} + φ^{n+m−4} + ⋯ + tail` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarConvention {
    /// `φᵏ = a_{k+1}` when true, `φᵏ = a_k` otherwise.
    pub shifted_index: bool,
    /// When true the descending run stops above the tail; otherwise it runs
    /// down to the tail's top exponent and the tail is added on top of it.
    pub tail_replaces: bool,
}

impl StarConvention {
    pub const ALL: [StarConvention; 4] = [
        StarConvention { shifted_index: true, tail_replaces: true },
        StarConvention { shifted_index: true, tail_replaces: false },
        StarConvention { shifted_index: false, tail_replaces: true },
        StarConvention { shifted_index: false, tail_replaces: false },
    ];

    pub fn name(&self) -> &'static str {
        match (self.shifted_index, self.tail_replaces) {
            (true, true) => "a(k+1)/replace",
            (true, false) => "a(k+1)/extend",
            (false, true) => "a(k)/replace",
            (false, false) => "a(k)/extend",
        }
    }

    fn value(&self, k: u32) -> BigUint {
        fib(k as usize + usize::from(self.shifted_index))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarRow {
    pub convention: StarConvention,
    pub terms: Vec<u32>,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub matches: bool,
}

/// Evaluation of the product pattern for one `(n, m)` under every reading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub n: u32,
    pub m: u32,
    /// `φⁿ·φᵐ` with `φᵏ = a_{k+1}`, expanded.
    pub oracle: Zeck,
    pub rows: Vec<StarRow>,
}

/// Tail exponents: `φ^{m−n+4} + φ^{m−n}` for even `n`, `φ^{m−n+2} + φ^{m−n−1}`
/// for odd `n < m`, `φ² + φ⁰` for odd `n = m`.
fn star_tail(n: u32, m: u32) -> [u32; 2] {
    if n.is_multiple_of(2) {
        [m - n + 4, m - n]
    } else if n < m {
        [m - n + 2, m - n - 1]
    } else {
        [2, 0]
    }
}

pub fn star_pattern_report(n: u32, m: u32) -> Result<StarReport> {
    if n == 0 || n > m {
        return Err(Error::Precondition(format!("need 1 <= n <= m, got n={n} m={m}")));
    }
    let tail = star_tail(n, m);
    let oracle = Zeck::encode(&(phi_pow(n) * phi_pow(m)));
    let rows = StarConvention::ALL
        .iter()
        .map(|&conv| {
            let mut terms: Vec<u32> = (0..)
                .map(|j| i64::from(n + m) - 4 * j)
                .take_while(|&e| if conv.tail_replaces { e > i64::from(tail[0]) } else { e >= i64::from(tail[0]) })
                .map(|e| e as u32)
                .collect();
            terms.extend(tail);
            let lhs = conv.value(n) * conv.value(m);
            let rhs: BigUint = terms.iter().map(|&k| conv.value(k)).sum();
            StarRow {
                convention: conv,
                matches: lhs == rhs,
                terms,
                lhs,
                rhs,
            }
        })
        .collect();
    Ok(StarReport { n, m, oracle, rows })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn z(xs: &[u32]) -> Zeck {
        Zeck::from_exponents(xs.to_vec()).unwrap()
    }

    #[test]
    fn fibonacci_table() {
        let want = [0u32, 1, 1, 2, 3, 5, 8, 13, 21, 34];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(fib(k), BigUint::from(*w));
        }
        assert_eq!(phi_pow(1), BigUint::from(1u32));
        assert_eq!(phi_pow(5), BigUint::from(8u32));
        assert_eq!(fib(100).to_string(), "354224848179261915075");
    }

    #[test]
    fn encode_examples() {
        assert_eq!(Zeck::from_u64(1), z(&[1]));
        assert_eq!(Zeck::from_u64(4), z(&[3, 1]));
        assert_eq!(Zeck::from_u64(10), z(&[5, 2]));
        assert_eq!(Zeck::from_u64(10).to_string(), "φ^5+φ^2");
        assert_eq!(Zeck::from_u64(10).to_bits(), "10010");
        assert_eq!(Zeck::from_u64(0).to_bits(), "0");
        assert!(Zeck::from_exponents(vec![3, 2]).is_err());
        assert!(Zeck::from_exponents(vec![2, 0]).is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(z(&[3]).add(&z(&[2])), z(&[4]));
        assert_eq!(z(&[2]).add(&z(&[2])), z(&[3, 1]));
        assert_eq!(z(&[1]).add(&z(&[1])), z(&[2]));
        assert_eq!(Zeck::from_u64(4).add(&Zeck::from_u64(3)), z(&[4, 2]));
    }

    #[test]
    fn mul_examples() {
        for k in [1, 3, 6] {
            assert_eq!(z(&[1]).mul(&z(&[k])), z(&[k]));
        }
        assert_eq!(z(&[2]).mul(&z(&[4])), z(&[5, 2]));
        assert_eq!(z(&[3]).mul(&z(&[3])), z(&[5, 1]));
    }

    #[test]
    fn binary_examples() {
        assert_eq!(Bin::from_u64(5).exponents(), &[2, 0]);
        let one = Bin::from_exponents(vec![1]).unwrap();
        assert_eq!(one.add(&one).exponents(), &[2]);
        assert_eq!(Bin::from_u64(5).mul(&one), Bin::from_u64(10));
        assert_eq!(Bin::from_u64(10).exponents(), &[3, 1]);
        assert_eq!(Bin::from_u64(10).to_bits(), "1010");
        assert!(Bin::from_exponents(vec![1, 1]).is_err());
    }

    #[test]
    fn exhaustive_small_arithmetic() {
        let zs: Vec<Zeck> = (0..=300u64).map(Zeck::from_u64).collect();
        let bs: Vec<Bin> = (0..=300u64).map(Bin::from_u64).collect();
        for a in 0..=300usize {
            for b in 0..=300usize {
                let s = zs[a].add(&zs[b]);
                assert!(s.is_canonical());
                assert_eq!(s.decode(), BigUint::from(a + b));
                assert_eq!(zs[a].mul(&zs[b]).decode(), BigUint::from(a * b));
                assert_eq!(bs[a].add(&bs[b]).decode(), BigUint::from(a + b));
                assert_eq!(bs[a].mul(&bs[b]).decode(), BigUint::from(a * b));
            }
        }
    }

    #[test]
    fn star_report_examples() {
        let r = star_pattern_report(1, 1).unwrap();
        assert_eq!(r.oracle, z(&[1]));
        let r = star_pattern_report(2, 4).unwrap();
        assert_eq!(r.oracle, z(&[5, 2]));
        assert_eq!(r.rows.len(), 4);
        let r = star_pattern_report(3, 3).unwrap();
        assert_eq!(r.oracle, z(&[5, 1]));
        // n = m = 2: the stated pattern gives φ⁶ + φ² = 13 + 2 against 4.
        let r = star_pattern_report(2, 2).unwrap();
        let row = &r.rows[0];
        assert_eq!(row.terms, vec![4, 0]);
        assert!(!row.matches);
        assert!(star_pattern_report(3, 2).is_err());
        assert!(star_pattern_report(0, 2).is_err());
    }

    proptest! {
        #[test]
        fn round_trips(n in any::<u64>()) {
            let big = BigUint::from(n);
            prop_assert_eq!(Zeck::encode(&big).decode(), big.clone());
            prop_assert!(Zeck::encode(&big).is_canonical());
            prop_assert_eq!(Bin::encode(&big).decode(), big);
        }

        #[test]
        fn large_arithmetic(a in any::<u64>(), b in any::<u64>()) {
            let (za, zb) = (Zeck::from_u64(a), Zeck::from_u64(b));
            let sum = za.add(&zb);
            prop_assert!(sum.is_canonical());
            prop_assert_eq!(sum.decode(), BigUint::from(a) + b);
            prop_assert_eq!(za.mul(&zb).decode(), BigUint::from(a) * b);
            let (ba, bb) = (Bin::from_u64(a), Bin::from_u64(b));
            prop_assert_eq!(ba.add(&bb).decode(), BigUint::from(a) + b);
            prop_assert_eq!(ba.mul(&bb).decode(), BigUint::from(a) * b);
        }
    }
}
