use num_bigint::BigInt;

use super::{build_c_leq_path, build_level, linear_weights, NormSpec};
use crate::error::{Error, Result};
use crate::path::FareyPath;
use crate::sb::{Sl2Word, Vertex};
use crate::zeck::fib;
use crate::Rational;

fn phi_iterate(c: FareyPath, n: u32) -> FareyPath {
    (0..n).fold(c, |c, _| c.phi_path())
}

fn is_subset(small: &FareyPath, big: &FareyPath) -> bool {
    small.interior().iter().all(|w| big.contains(w))
}

/// `Φⁿ c(|·| ≤ R) = c(|·|ₙ ≤ R)`, both sides built independently.
pub fn phi_iterate_check(norm: &NormSpec, r: &Rational, n: u32, max_vertices: usize) -> Result<bool> {
    let lhs = phi_iterate(build_c_leq_path(norm, r, max_vertices)?, n);
    let rhs = build_level(norm, r, n, max_vertices)?;
    Ok(lhs == rhs)
}

/// [`phi_iterate_check`] for `n = 0..=n_max`, sharing one build of `c`.
pub fn phi_iterate_chain(norm: &NormSpec, r: &Rational, n_max: u32, max_vertices: usize) -> Result<Vec<bool>> {
    let mut c = build_c_leq_path(norm, r, max_vertices)?;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        out.push(c == build_level(norm, r, n, max_vertices)?);
        c = c.phi_path();
    }
    Ok(out)
}

/// [`sandwich_check`] for `n = 0..=n_max`, sharing one build of `c`.
pub fn sandwich_chain(norm: &NormSpec, r: &Rational, n_max: u32, max_vertices: usize) -> Result<Vec<bool>> {
    if !norm.is_subadditive() {
        return Err(Error::Precondition(format!("{norm} is not a subadditive vector norm")));
    }
    let fib_r = |k: u32| Rational::from_integer(BigInt::from(fib(k as usize)));
    let two = Rational::from_integer(BigInt::from(2));
    let mut mid = build_c_leq_path(norm, r, max_vertices)?;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let inner = build_c_leq_path(norm, &(r / fib_r(n + 2)), max_vertices)?;
        let outer = build_c_leq_path(norm, &(&two * r / fib_r(n + 3)), max_vertices)?;
        out.push(is_subset(&inner, &mid) && is_subset(&mid, &outer));
        mid = mid.phi_path();
    }
    Ok(out)
}

/// `c(|·| ≤ R/a_{n+2}) ⊆ Φⁿ c(|·| ≤ R) ⊆ c(|·| ≤ 2R/a_{n+3})` for a
/// homogeneous subadditive norm.
pub fn sandwich_check(norm: &NormSpec, r: &Rational, n: u32, max_vertices: usize) -> Result<bool> {
    if !norm.is_subadditive() {
        return Err(Error::Precondition(format!("{norm} is not a subadditive vector norm")));
    }
    let fib_r = |k: u32| Rational::from_integer(BigInt::from(fib(k as usize)));
    let inner = build_c_leq_path(norm, &(r / fib_r(n + 2)), max_vertices)?;
    let mid = phi_iterate(build_c_leq_path(norm, r, max_vertices)?, n);
    let two = Rational::from_integer(BigInt::from(2));
    let outer = build_c_leq_path(norm, &(two * r / fib_r(n + 3)), max_vertices)?;
    Ok(is_subset(&inner, &mid) && is_subset(&mid, &outer))
}

/// `c⁽¹⁾_R ⊆ c⁽²⁾_R ⊆ c⁽∞⁾_R ⊆ c⁽¹⁾_{2R} ⊆ ⋯` for `rounds` doublings of `R`.
pub fn nesting_chain_check(r: &Rational, rounds: u32, max_vertices: usize) -> Result<bool> {
    let chain = [NormSpec::PPower { p: 1 }, NormSpec::PPower { p: 2 }, NormSpec::Max];
    let mut radius = r.clone();
    let mut prev: Option<FareyPath> = None;
    for _ in 0..=rounds {
        for norm in &chain {
            let c = build_c_leq_path(norm, &radius, max_vertices)?;
            if let Some(p) = &prev {
                if !is_subset(p, &c) {
                    return Ok(false);
                }
            }
            prev = Some(c);
        }
        radius = &radius * Rational::from_integer(BigInt::from(2));
    }
    Ok(true)
}

/// Transport of a linear-norm corona along a word `g`: the part of
/// `c_R^{(α,β)}` strictly between `0̲g` and `∞̲g` equals `c_R^{(α,β)gᵗ}·g`.
pub fn subcorona_transform(norm: &NormSpec, r: &Rational, g: &Sl2Word, max_vertices: usize) -> Result<bool> {
    let (alpha, beta) = linear_weights(norm)?;
    let c = build_c_leq_path(norm, r, max_vertices)?;
    let (lo, hi) = (g.lower(), g.upper());
    for end in [lo, hi] {
        if end.is_interior() && !c.contains(end) {
            return Err(Error::Precondition(format!("{end} is outside c_R")));
        }
    }
    let slice: Vec<&Vertex> = c
        .interior()
        .iter()
        .filter(|w| w.cmp_real(lo).is_gt() && w.cmp_real(hi).is_lt())
        .collect();
    let q = |n: &num_bigint::BigUint| Rational::from_integer(BigInt::from(n.clone()));
    let transported = NormSpec::linear(
        alpha * q(lo.x()) + beta * q(lo.y()),
        alpha * q(hi.x()) + beta * q(hi.y()),
    )?;
    let image = build_c_leq_path(&transported, r, max_vertices)?;
    let moved: Vec<Vertex> = image.interior().iter().map(|w| g.act(w)).collect();
    Ok(slice.len() == moved.len() && slice.iter().zip(&moved).all(|(a, b)| *a == b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sb::Sign;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn phi_iterates() {
        let l11 = NormSpec::linear_int(1, 1).unwrap();
        assert!(phi_iterate_check(&l11, &r(4), 1, 1000).unwrap());
        assert_eq!(build_level(&l11, &r(4), 1, 1000).unwrap().interior(), &[crate::sb::v(1, 1)]);
        assert!(phi_iterate_check(&l11, &r(9), 0, 1000).unwrap());
        let l12 = NormSpec::linear_int(1, 2).unwrap();
        assert!(phi_iterate_check(&l12, &r(10), 2, 1000).unwrap());
        for norm in NormSpec::builtins() {
            for n in 0..4 {
                assert!(phi_iterate_check(&norm, &r(40), n, 100_000).unwrap(), "{norm} n={n}");
            }
        }
    }

    #[test]
    fn sandwiches() {
        let l11 = NormSpec::linear_int(1, 1).unwrap();
        assert!(sandwich_check(&l11, &r(20), 2, 1000).unwrap());
        assert!(sandwich_check(&l11, &r(20), 0, 1000).unwrap());
        assert!(sandwich_check(&NormSpec::Max, &r(50), 3, 100_000).unwrap());
        let m = NormSpec::matrix([[r(1), r(1)], [r(1), r(1)]]).unwrap();
        assert!(sandwich_check(&m, &r(5), 1, 1000).is_err());
    }

    #[test]
    fn chains_agree_with_single_checks() {
        let l12 = NormSpec::linear_int(1, 2).unwrap();
        let chain = phi_iterate_chain(&l12, &r(30), 4, 10_000).unwrap();
        let sand = sandwich_chain(&l12, &r(30), 4, 10_000).unwrap();
        for n in 0..=4 {
            assert_eq!(chain[n as usize], phi_iterate_check(&l12, &r(30), n, 10_000).unwrap());
            assert_eq!(sand[n as usize], sandwich_check(&l12, &r(30), n, 10_000).unwrap());
        }
        assert!(chain.iter().chain(&sand).all(|&b| b));
    }

    #[test]
    fn nesting() {
        assert!(nesting_chain_check(&r(3), 2, 100_000).unwrap());
        assert!(nesting_chain_check(&r(25), 1, 100_000).unwrap());
    }

    #[test]
    fn transport() {
        let l11 = NormSpec::linear_int(1, 1).unwrap();
        assert!(subcorona_transform(&l11, &r(7), &Sl2Word::identity(), 1000).unwrap());
        assert!(subcorona_transform(&l11, &r(6), &Sl2Word::g_plus(), 1000).unwrap());
        let gmgp = Sl2Word::from_letters(&[Sign::Minus, Sign::Plus]);
        assert!(subcorona_transform(&l11, &r(10), &gmgp, 1000).unwrap());
        let l23 = NormSpec::linear_int(2, 3).unwrap();
        let g = Sl2Word::from_letters(&[Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus]);
        assert!(subcorona_transform(&l23, &r(80), &g, 100_000).unwrap());
        let far = Sl2Word::from_letters(&[Sign::Plus; 6]);
        assert!(matches!(
            subcorona_transform(&l11, &r(4), &far, 1000),
            Err(Error::Precondition(_))
        ));
        assert!(subcorona_transform(&NormSpec::Max, &r(4), &Sl2Word::identity(), 1000).is_err());
    }
}
