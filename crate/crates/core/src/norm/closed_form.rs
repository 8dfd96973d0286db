use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{build_level, linear_weights, NormSpec};
use crate::error::{Error, Result};
use crate::path::FareyPath;
use crate::sb::Vertex;
use crate::zeck::fib;
use crate::Rational;

/// Where a closed-form entry comes from: the plus fin of `0̲`, the minus fin
/// of `∞̲`, or one of the two fins of a local minimum (index into the points
/// of `Φⁿc`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSource {
    Zero,
    Infinity,
    MinimumPlus(usize),
    MinimumMinus(usize),
}

/// One fin of the closed form, with both floor expressions kept for
/// comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormEntry {
    pub edge: usize,
    pub source: EdgeSource,
    /// The non-vanishing condition `a_{n+2}|c| + a_{n+1}|neighbour| ≤ R`.
    pub active: bool,
    /// `⌊R/(a_{n+1}|c|) − |c_±|/|c| − a_n/a_{n+1}⌋ − ⌊R/(a_{n+2}|c|) − |c_±|/|c| − a_{n+1}/a_{n+2}⌋ − 1`.
    pub two_floor: i64,
    /// `⌊(R − a_{n+1}|neighbour| − a_n|c|) / (a_{n+1}|c|)⌋`.
    pub one_floor: i64,
    /// `⌊(R − a_{n+1}|c_±| − a_n|c|) / (a_{n+1}|c|)⌋ − k₀`.
    pub shifted_floor: Option<i64>,
    /// `k₀` with `neighbour = c_± + k₀·c`, when the neighbour lies on that fin.
    pub k0: Option<u64>,
    /// Signed contribution to the layer: negative on plus fins, positive on
    /// minus fins, zero when inactive.
    pub value: i64,
}

impl ClosedFormEntry {
    /// For active entries, all floor expressions agree.
    pub fn forms_agree(&self) -> bool {
        !self.active || (self.one_floor == self.two_floor && self.shifted_floor == Some(self.one_floor))
    }

    /// For active entries, `k₀ ≥ 1` and `k₁ = |λ| + k₀ + 1 ≥ 3`.
    pub fn k_bounds_hold(&self) -> bool {
        !self.active || matches!(self.k0, Some(k0) if k0 >= 1 && self.value.unsigned_abs() + k0 + 1 >= 3)
    }
}

/// The closed-form layer `λⁿ` over the edges of `Φⁿc_R^{(α,β)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormLayer {
    pub n: u32,
    pub lambda: Vec<i64>,
    pub entries: Vec<ClosedFormEntry>,
}

impl ClosedFormLayer {
    pub fn forms_agree(&self) -> bool {
        self.entries.iter().all(ClosedFormEntry::forms_agree)
    }

    pub fn k_bounds_hold(&self) -> bool {
        self.entries.iter().all(ClosedFormEntry::k_bounds_hold)
    }
}

/// Integers for the floor formulas: `i128` with overflow checks, or `BigInt`.
trait Int: Clone + Ord + Sized {
    fn from_big(n: &BigInt) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    /// `⌊self / d⌋` for `d > 0`, when it fits in `i64`.
    fn floor_div(&self, d: &Self) -> Option<i64>;
}

impl Int for i128 {
    fn from_big(n: &BigInt) -> Option<Self> {
        n.to_i128()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn floor_div(&self, d: &Self) -> Option<i64> {
        i64::try_from(Integer::div_floor(self, d)).ok()
    }
}

impl Int for BigInt {
    fn from_big(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn floor_div(&self, d: &Self) -> Option<i64> {
        Integer::div_floor(self, d).to_i64()
    }
}

/// The norm, the radius and `a_n, a_{n+1}, a_{n+2}`, all scaled by one
/// common positive integer so that every floor is taken on integers.
struct Weights<T> {
    alpha: T,
    beta: T,
    a: [T; 3],
    r: T,
}

impl Weights<BigInt> {
    fn new(norm: &NormSpec, r: &Rational, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("layers are numbered from 1".into()));
        }
        let (alpha, beta) = linear_weights(norm)?;
        let den = alpha.denom().lcm(beta.denom()).lcm(r.denom());
        let scaled = |q: &Rational| q.numer() * (&den / q.denom());
        let a = |k: u32| BigInt::from(fib(k as usize));
        Ok(Weights {
            alpha: scaled(alpha),
            beta: scaled(beta),
            a: [a(n), a(n + 1), a(n + 2)],
            r: scaled(r),
        })
    }

    /// `Φ^{n−1}c_R` is empty exactly when the root has `|(1,1)|_{n−1} > R`.
    fn previous_level_empty(&self) -> bool {
        let [an, an1, _] = &self.a;
        let first = an * &self.alpha + an1 * &self.beta;
        let second = an1 * &self.alpha + an * &self.beta;
        first.max(second) > self.r
    }

    fn narrow<T: Int>(&self) -> Option<Weights<T>> {
        let [a0, a1, a2] = &self.a;
        Some(Weights {
            alpha: T::from_big(&self.alpha)?,
            beta: T::from_big(&self.beta)?,
            a: [T::from_big(a0)?, T::from_big(a1)?, T::from_big(a2)?],
            r: T::from_big(&self.r)?,
        })
    }
}

impl<T: Int> Weights<T> {
    fn norm(&self, w: &Vertex) -> Option<T> {
        let x = T::from_big(&BigInt::from(w.x().clone()))?;
        let y = T::from_big(&BigInt::from(w.y().clone()))?;
        self.alpha.mul(&x)?.add(&self.beta.mul(&y)?)
    }

    /// `active`, the two-floor, one-floor and unshifted floor for one centre
    /// `c`, its bound `c_±` on the fin side and its path neighbour.
    fn floors(&self, c: &T, p: &T, nb: &T) -> Option<(bool, i64, i64, i64)> {
        let [an, an1, an2] = &self.a;
        let active = an2.mul(c)?.add(&an1.mul(nb)?)? <= self.r;
        // R/(a c) − p/c − a'/a = (R − a p − a' c) / (a c)
        let lower_den = an1.mul(c)?;
        let base = self.r.sub(&an1.mul(p)?)?.sub(&an.mul(c)?)?.floor_div(&lower_den)?;
        let upper = self.r.sub(&an2.mul(p)?)?.sub(&an1.mul(c)?)?.floor_div(&an2.mul(c)?)?;
        let one = self.r.sub(&an1.mul(nb)?)?.sub(&an.mul(c)?)?.floor_div(&lower_den)?;
        Some((active, base - upper - 1, one, base))
    }
}

/// `k` with `neighbour = partner + k·center`.
fn fin_offset(center: &Vertex, partner: &Vertex, neighbour: &Vertex) -> Option<u64> {
    let diff = neighbour.checked_sub(partner)?;
    let l = center.l1();
    let total = diff.l1();
    if (&total % &l) != BigUint::zero() {
        return None;
    }
    let k = &total / &l;
    (partner.plus_multiple(&k, center) == *neighbour).then(|| k.to_u64()).flatten()
}

/// `(edge, source, centre, partner, neighbour, sign)` for every fin, as
/// indices into the points of `Φⁿc`.
fn layout(cn: &FareyPath) -> Vec<(usize, EdgeSource, usize, usize, usize, i64)> {
    let m = cn.degree();
    let bounds = cn.bound_indices();
    let mut out = vec![(0, EdgeSource::Zero, 0, m, 1, -1), (m - 1, EdgeSource::Infinity, m, 0, m - 1, 1)];
    for i in cn.phi_indices() {
        let (lo, hi) = bounds[i].expect("minima are interior");
        out.push((i, EdgeSource::MinimumPlus(i), i, hi, i + 1, -1));
        out.push((i - 1, EdgeSource::MinimumMinus(i), i, lo, i - 1, 1));
    }
    out
}

fn entries_with<T: Int>(cn: &FareyPath, w: &Weights<T>) -> Option<Vec<ClosedFormEntry>> {
    let pts = cn.points();
    let norms: Vec<T> = pts.iter().map(|v| w.norm(v)).collect::<Option<_>>()?;
    layout(cn)
        .into_iter()
        .map(|(edge, source, c, p, nb, sign)| {
            let (active, two_floor, one_floor, base) = w.floors(&norms[c], &norms[p], &norms[nb])?;
            let k0 = fin_offset(&pts[c], &pts[p], &pts[nb]);
            Some(ClosedFormEntry {
                edge,
                source,
                active,
                two_floor,
                one_floor,
                shifted_floor: k0.map(|k| base - k as i64),
                k0,
                value: if active { sign * two_floor } else { 0 },
            })
        })
        .collect()
}

fn entries(cn: &FareyPath, w: &Weights<BigInt>) -> Result<Vec<ClosedFormEntry>> {
    if let Some(out) = w.narrow::<i128>().and_then(|small| entries_with(cn, &small)) {
        return Ok(out);
    }
    entries_with(cn, w).ok_or_else(|| Error::ResourceBound("a fin length exceeds i64".into()))
}

/// The layer `λⁿ` of the d.n.a. of `c_R^{(α,β)}` from the floor formulas,
/// placed on the edges of `Φⁿc_R^{(α,β)} = c(|·|ₙ ≤ R)`.
pub fn closed_form_layer(norm: &NormSpec, r: &Rational, n: u32, max_vertices: usize) -> Result<ClosedFormLayer> {
    let w = Weights::new(norm, r, n)?;
    if w.previous_level_empty() {
        return Err(Error::Precondition(format!("Φ^{}c_R is empty, so there is no layer {n}", n - 1)));
    }
    let cn = build_level(norm, r, n, max_vertices)?;
    let entries = entries(&cn, &w)?;
    let mut lambda = vec![0i64; cn.degree()];
    for e in &entries {
        lambda[e.edge] += e.value;
    }
    Ok(ClosedFormLayer { n, lambda, entries })
}

impl ClosedFormLayer {
    /// The degree of `Φ^{n−1}c_R^{(α,β)}` by the counting formula
    /// `2·m(Φⁿc) + Σ ⌊R/(a_{n+1}|c|) − |neighbour|/|c| − a_n/a_{n+1}⌋₊`, the
    /// sum running over the same centres and neighbours as the entries.
    pub fn degree(&self) -> u128 {
        let floors: u128 = self.entries.iter().map(|e| e.one_floor.max(0) as u128).sum();
        2 * self.lambda.len() as u128 + floors
    }
}

/// [`ClosedFormLayer::degree`], or `1` when `Φ^{n−1}c_R` is empty.
pub fn closed_form_degree(norm: &NormSpec, r: &Rational, n: u32, max_vertices: usize) -> Result<u128> {
    if Weights::new(norm, r, n)?.previous_level_empty() {
        return Ok(1);
    }
    Ok(closed_form_layer(norm, r, n, max_vertices)?.degree())
}
