//! Potential and height functions on the Farey graph, discrepancy
//! statistics `δ_p`, and the finite totient identity.
//!
//! The height of a vertex is `H(x, y) = y / (x + y) ∈ [0, 1]` and the
//! potential of an edge is `h(v₋, v₊) = 1 / (|v₋|·|v₊|)` with `|(x,y)| = x+y`,
//! so that `H(v₊) − H(v₋) = h(v₋, v₊)` along every Farey edge.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::corona::zero_dna_corona;
use crate::error::{Error, Result};
use crate::norm::{build_c_leq_path, NormSpec};
use crate::path::FareyPath;
use crate::sb::{bounds, det, Vertex};
use crate::Rational;

fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `h(a, b) = 1 / (|a|·|b|)` for a Farey edge `a < b`.
pub fn potential(a: &Vertex, b: &Vertex) -> Result<Rational> {
    if det(a, b) != BigInt::one() {
        return Err(Error::NotAFareyEdge(a.to_string(), b.to_string()));
    }
    Ok(Rational::new(BigInt::one(), BigInt::from(a.l1() * b.l1())))
}

/// `h(v₋, v₊) = h(v₋, v) + h(v, v₊)` at an interior vertex `v`.
pub fn exactness_check(v: &Vertex) -> Result<bool> {
    let (lo, hi) = bounds(v)?;
    Ok(potential(&lo, &hi)? == potential(&lo, v)? + potential(v, &hi)?)
}

/// `H(x, y) = y / (x + y)`.
pub fn height(v: &Vertex) -> Rational {
    Rational::new(BigInt::from(v.y().clone()), BigInt::from(v.l1()))
}

/// `δ_p(c) = Σ_{j=1}^{m−1} |j/m − H(c_j)|ᵖ` for a path of degree `m`.
///
/// Terms are grouped by `s = x + y`: each contributes `|j·s − y·m|ᵖ / (m·s)ᵖ`,
/// so only one rational addition per distinct `s` is needed.
pub fn delta_p(c: &FareyPath, p: u32) -> Rational {
    let m = BigInt::from(c.degree());
    let mut by_s: BTreeMap<BigUint, BigInt> = BTreeMap::new();
    for (j, w) in c.interior().iter().enumerate() {
        let s = w.l1();
        let d = BigInt::from(j + 1) * BigInt::from(s.clone()) - BigInt::from(w.y().clone()) * &m;
        *by_s.entry(s).or_default() += d.abs().pow(p);
    }
    by_s.into_iter()
        .map(|(s, total)| Rational::new(total, (&m * BigInt::from(s)).pow(p)))
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// A path `c₀ < c₁ < ⋯ < c_m` in the Farey graph with arbitrary end points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPath {
    pts: Vec<Vertex>,
}

impl PartialPath {
    pub fn new(pts: Vec<Vertex>) -> Result<Self> {
        if pts.len() < 2 {
            return Err(Error::Precondition("a partial path has at least one edge".into()));
        }
        for w in pts.windows(2) {
            if det(&w[0], &w[1]) != BigInt::one() {
                return Err(Error::NotAFareyEdge(w[0].to_string(), w[1].to_string()));
            }
        }
        Ok(PartialPath { pts })
    }

    pub fn from_path(c: &FareyPath) -> Self {
        PartialPath {
            pts: c.points().to_vec(),
        }
    }

    /// `c_i, …, c_j` of a full path.
    pub fn window(c: &FareyPath, i: usize, j: usize) -> Result<Self> {
        if i >= j || j > c.degree() {
            return Err(Error::Precondition(format!("bad window {i}..={j} of degree {}", c.degree())));
        }
        Ok(PartialPath {
            pts: c.points()[i..=j].to_vec(),
        })
    }

    pub fn points(&self) -> &[Vertex] {
        &self.pts
    }

    /// `M(c) = m`, the number of edges.
    pub fn degree(&self) -> usize {
        self.pts.len() - 1
    }

    /// `h(c) = H(c_m) − H(c₀)`.
    pub fn real_length(&self) -> Rational {
        height(&self.pts[self.pts.len() - 1]) - height(&self.pts[0])
    }

    /// `Σ_i |H(c₀) + (i/m)·h(c) − H(c_i)|ᵖ`.
    pub fn delta_p(&self, p: u32) -> Rational {
        let m = qi(self.degree() as i64);
        let (h0, len) = (height(&self.pts[0]), self.real_length());
        self.pts[1..self.pts.len() - 1]
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let line = &h0 + qi(k as i64 + 1) / &m * &len;
                num_traits::pow((line - height(w)).abs(), p as usize)
            })
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// `c̃`: every mediant `c_{i−1} + c_i` added.
    pub fn refined(&self) -> PartialPath {
        let mut pts = Vec::with_capacity(2 * self.pts.len() - 1);
        for w in self.pts.windows(2) {
            pts.push(w[0].clone());
            pts.push(w[0].mediant(&w[1]));
        }
        pts.push(self.pts[self.pts.len() - 1].clone());
        PartialPath { pts }
    }

    /// Splits at the given interior point indices (strictly increasing).
    pub fn split(&self, cuts: &[usize]) -> Result<Vec<PartialPath>> {
        let mut bounds = vec![0];
        bounds.extend_from_slice(cuts);
        bounds.push(self.degree());
        if bounds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("cuts {cuts:?} are not interior and increasing")));
        }
        Ok(bounds
            .windows(2)
            .map(|w| PartialPath {
                pts: self.pts[w[0]..=w[1]].to_vec(),
            })
            .collect())
    }
}

/// `δ₁(c̃) ≤ 2·δ₁(c) + h(c)/2`.
pub fn refine_bound_check(c: &PartialPath) -> bool {
    c.refined().delta_p(1) <= qi(2) * c.delta_p(1) + c.real_length() / qi(2)
}

/// For consecutive pieces `c_j` of `c`:
/// `|δ₁(c) − Σ δ₁(c_j)| ≤ ½ Σ_{j₁<j₂} |h(c_{j₁})M(c_{j₂}) − h(c_{j₂})M(c_{j₁})|`.
pub fn concat_bound_check(parts: &[PartialPath]) -> Result<bool> {
    let Some(first) = parts.first() else {
        return Err(Error::Precondition("no pieces".into()));
    };
    let mut pts = first.pts.clone();
    for part in &parts[1..] {
        if pts.last() != part.pts.first() {
            return Err(Error::Precondition(format!(
                "piece starting at {} does not continue from {}",
                part.pts[0],
                pts[pts.len() - 1]
            )));
        }
        pts.extend_from_slice(&part.pts[1..]);
    }
    let whole = PartialPath { pts };
    let pieces: Rational = parts.iter().map(|c| c.delta_p(1)).fold(Rational::zero(), |a, b| a + b);
    let lhs = (whole.delta_p(1) - pieces).abs();
    let stats: Vec<(Rational, Rational)> = parts.iter().map(|c| (c.real_length(), qi(c.degree() as i64))).collect();
    let mut rhs = Rational::zero();
    for (i, (h1, m1)) in stats.iter().enumerate() {
        for (h2, m2) in &stats[i + 1..] {
            rhs += (h1 * m2 - h2 * m1).abs();
        }
    }
    Ok(lhs <= rhs / qi(2))
}

/// The terms `|i/2ⁿ − H(c_i)|²` of `Sₙ` over `c(n)`, the corona of height
/// `n` with vanishing d.n.a.
pub fn s_n_terms(n: u32) -> Result<Vec<Rational>> {
    let c = zero_dna_corona(n)?;
    let m = qi(c.degree() as i64);
    Ok(c.interior()
        .iter()
        .enumerate()
        .map(|(i, w)| num_traits::pow((qi(i as i64 + 1) / &m - height(w)).abs(), 2))
        .collect())
}

/// `Sₙ = δ₂(c(n))`.
pub fn s_n(n: u32) -> Result<Rational> {
    Ok(delta_p(zero_dna_corona(n)?.path(), 2))
}

/// Euler's totient `φ(0..=limit)` by a linear sieve.
pub fn totients(limit: usize) -> Vec<u64> {
    let mut phi = vec![0u64; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    if limit >= 1 {
        phi[1] = 1;
    }
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = i as u64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    phi
}

/// `#{(x, y) : x, y ≥ 1, gcd(x, y) = 1, x + y = s}` for `s = 0..=limit`,
/// counted stratum by stratum with gcds.
pub fn coprime_strata(limit: usize) -> Vec<u64> {
    (0..=limit)
        .map(|s| (1..s).filter(|&x| x.gcd(&(s - x)) == 1).count() as u64)
        .collect()
}

/// `Σ_{n≤R} φ(n)` against `1 + #c_R^{(1,1)}` for every `1 ≤ R ≤ limit`;
/// returns the radii where they differ.
pub fn totient_identity_failures(limit: usize) -> Vec<usize> {
    let phi = totients(limit);
    let strata = coprime_strata(limit);
    let (mut lhs, mut rhs) = (0u64, 1u64);
    let mut failures = Vec::new();
    for r in 1..=limit {
        lhs += phi[r];
        rhs += strata[r];
        if lhs != rhs {
            failures.push(r);
        }
    }
    failures
}

/// The identity at one radius, with `#c_R^{(1,1)}` materialised.
pub fn totient_identity_check(r: usize) -> Result<bool> {
    if r == 0 {
        return Err(Error::Precondition("R >= 1".into()));
    }
    let lhs: u64 = totients(r).iter().sum();
    let norm = NormSpec::linear_int(1, 1)?;
    let c = build_c_leq_path(&norm, &qi(r as i64), usize::MAX)?;
    Ok(lhs == 1 + c.interior().len() as u64)
}

/// Gaps at the `0̲` end of `c_{R+1}^{(1,1)}`, whose first points are
/// `(R, 1)` and `(R − 1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSpacing {
    pub r: u64,
    pub first: Rational,
    pub second: Rational,
}

impl LocalSpacing {
    /// `first = 1/(R+1)` and `second = 1/(R(R+1))`.
    pub fn holds(&self) -> bool {
        let r = qi(self.r as i64);
        self.first == Rational::one() / (&r + qi(1)) && self.second == Rational::one() / (&r * (&r + qi(1)))
    }
}

pub fn local_spacing(r: u64) -> Result<LocalSpacing> {
    if r < 2 {
        return Err(Error::Precondition("R >= 2".into()));
    }
    let norm = NormSpec::linear_int(1, 1)?;
    let c = build_c_leq_path(&norm, &qi(r as i64 + 1), usize::MAX)?;
    let pts = c.points();
    let h: Vec<Rational> = pts[..3].iter().map(height).collect();
    Ok(LocalSpacing {
        r,
        first: (&h[1] - &h[0]).abs(),
        second: (&h[2] - &h[1]).abs(),
    })
}

/// `δ₁` and `δ₂` of `c_R^{(1,1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrendRow {
    pub r: u64,
    pub degree: usize,
    pub delta1: Rational,
    pub delta2: Rational,
}

pub fn trend_row(r: u64) -> Result<TrendRow> {
    let norm = NormSpec::linear_int(1, 1)?;
    let c = build_c_leq_path(&norm, &qi(r as i64), usize::MAX)?;
    Ok(TrendRow {
        r,
        degree: c.degree(),
        delta1: delta_p(&c, 1),
        delta2: delta_p(&c, 2),
    })
}

fn decimal(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// CSV with exact numerators / denominators first, then decimal renderings
/// of `δ₁`, `δ₂`, `δ₂·R/log R` and `δ₁/(√R·log R)`.
pub fn trend_csv(rows: &[TrendRow]) -> String {
    let mut out = String::from(
        "R,delta1_num,delta1_den,delta2_num,delta2_den,delta1,delta2,delta2_R_over_logR,delta1_over_sqrtR_logR\n",
    );
    for row in rows {
        let (d1, d2) = (decimal(&row.delta1), decimal(&row.delta2));
        let r = row.r as f64;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.12e},{:.12e},{:.12e},{:.12e}",
            row.r,
            row.delta1.numer(),
            row.delta1.denom(),
            row.delta2.numer(),
            row.delta2.denom(),
            d1,
            d2,
            d2 * r / r.ln(),
            d1 / (r.sqrt() * r.ln()),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::enumerate_paths;
    use crate::sb::v;

    fn frac(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn naive_delta(c: &FareyPath, p: u32) -> Rational {
        let m = c.degree() as i64;
        c.interior()
            .iter()
            .enumerate()
            .map(|(j, w)| num_traits::pow((frac(j as i64 + 1, m) - height(w)).abs(), p as usize))
            .fold(Rational::zero(), |a, b| a + b)
    }

    #[test]
    fn potential_and_height() {
        assert_eq!(potential(&Vertex::zero(), &Vertex::infinity()).unwrap(), frac(1, 1));
        assert_eq!(potential(&Vertex::zero(), &v(1, 1)).unwrap(), frac(1, 2));
        assert!(potential(&v(1, 1), &Vertex::zero()).is_err());
        assert!(exactness_check(&v(1, 1)).unwrap());
        assert_eq!(height(&v(1, 1)), frac(1, 2));
        assert_eq!(height(&Vertex::zero()), frac(0, 1));
        assert_eq!(height(&Vertex::infinity()), frac(1, 1));
        assert_eq!(height(&v(2, 3)), frac(3, 5));
    }

    #[test]
    fn height_differences_are_potentials() {
        let c = build_c_leq_path(&NormSpec::linear_int(1, 1).unwrap(), &qi(200), usize::MAX).unwrap();
        for w in c.points().windows(2) {
            assert_eq!(height(&w[1]) - height(&w[0]), potential(&w[0], &w[1]).unwrap());
        }
        for w in c.interior().iter().take(2000) {
            assert!(exactness_check(w).unwrap());
        }
    }

    #[test]
    fn potential_sums_are_path_independent() {
        for level in enumerate_paths(6) {
            for c in level {
                let mut acc = Rational::zero();
                for (i, w) in c.points().windows(2).enumerate() {
                    acc += potential(&w[0], &w[1]).unwrap();
                    assert_eq!(acc, height(&c.points()[i + 1]));
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        let c2 = zero_dna_corona(2).unwrap();
        assert_eq!(delta_p(c2.path(), 2), frac(2, 144));
        let one = FareyPath::from_interior([v(1, 1)]).unwrap();
        assert_eq!(delta_p(&one, 2), Rational::zero());
        let c4 = build_c_leq_path(&NormSpec::linear_int(1, 1).unwrap(), &qi(4), 100).unwrap();
        assert_eq!(delta_p(&c4, 1), naive_delta(&c4, 1));
        for level in enumerate_paths(7) {
            for c in level.iter().step_by(7) {
                for p in 1..=3 {
                    assert_eq!(delta_p(c, p), naive_delta(c, p));
                    assert_eq!(PartialPath::from_path(c).delta_p(p), naive_delta(c, p));
                }
            }
        }
    }

    #[test]
    fn partial_paths() {
        let edge = PartialPath::new(vec![v(1, 1), v(1, 2)]).unwrap();
        assert_eq!(edge.delta_p(1), Rational::zero());
        assert_eq!(edge.real_length(), frac(1, 6));
        // (1,1) < (2,3) < (1,2): H = 1/2, 3/5, 2/3 against the line 1/2, 7/12, 2/3.
        let refined = edge.refined();
        assert_eq!(refined.points(), &[v(1, 1), v(2, 3), v(1, 2)]);
        assert_eq!(refined.delta_p(1), frac(1, 60));
        assert!(refine_bound_check(&edge));
        assert!(PartialPath::new(vec![v(1, 2), v(1, 1)]).is_err());
        assert!(PartialPath::new(vec![v(1, 1)]).is_err());
        let c = PartialPath::from_path(&FareyPath::from_interior([v(1, 1)]).unwrap());
        assert!(refine_bound_check(&c));
    }

    #[test]
    fn concat_bound() {
        let c10 = build_c_leq_path(&NormSpec::linear_int(1, 1).unwrap(), &qi(10), 100).unwrap();
        let whole = PartialPath::from_path(&c10);
        let parts = whole.split(&[5, 17]).unwrap();
        assert!(concat_bound_check(&parts).unwrap());
        assert!(concat_bound_check(&[parts[0].clone(), parts[2].clone()]).is_err());
        assert!(whole.split(&[0]).is_err());
    }

    #[test]
    fn s_sequence() {
        assert_eq!(s_n(1).unwrap(), Rational::zero());
        assert_eq!(s_n(2).unwrap(), frac(2, 144));
        assert_eq!(s_n(3).unwrap(), frac(668, 14400));
        let mut prev = s_n(1).unwrap();
        for n in 2..=8 {
            let next = s_n(n).unwrap();
            assert!(prev < next);
            prev = next;
        }
    }

    #[test]
    fn s_terms_reappear_at_even_places() {
        for n in 1..=8 {
            let (small, big) = (s_n_terms(n).unwrap(), s_n_terms(n + 1).unwrap());
            for (i, t) in small.iter().enumerate() {
                assert_eq!(t, &big[2 * i + 1]);
            }
            let sum = small.iter().fold(Rational::zero(), |a, b| a + b);
            assert_eq!(sum, s_n(n).unwrap());
        }
    }

    #[test]
    fn totient_examples() {
        assert_eq!(&totients(10)[1..], &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
        assert!(totient_identity_check(1).unwrap());
        assert!(totient_identity_check(4).unwrap());
        assert!(totient_identity_check(100).unwrap());
        assert!(totient_identity_failures(1000).is_empty());
        let brute: Vec<u64> = (0..=200u64)
            .map(|n| (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64)
            .collect();
        assert_eq!(totients(200), brute);
    }

    #[test]
    fn spacing_at_zero() {
        for r in [2, 10, 37] {
            let s = local_spacing(r).unwrap();
            assert!(s.holds(), "{s:?}");
        }
    }

    #[test]
    fn trend_rows() {
        let row = trend_row(20).unwrap();
        let c = build_c_leq_path(&NormSpec::linear_int(1, 1).unwrap(), &qi(20), 1000).unwrap();
        assert_eq!(row.delta1, naive_delta(&c, 1));
        assert_eq!(row.delta2, naive_delta(&c, 2));
        let csv = trend_csv(&[row]);
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("R,delta1_num,delta1_den,delta2_num,delta2_den"));
        assert!(lines.next().unwrap().starts_with("20,"));
    }
}
