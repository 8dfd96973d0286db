//! Coronas cut out by norm balls `c(|·| ≤ R)`, iterated norms and the closed
//! form for the d.n.a. of linear-norm coronas.

mod checks;
mod closed_form;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::corona::Corona;
use crate::error::{Error, Result};
use crate::path::FareyPath;
use crate::sb::{bounds, Vertex};
use crate::zeck::fib;
use crate::Rational;

pub use checks::{
    nesting_chain_check, phi_iterate_chain, phi_iterate_check, sandwich_chain, sandwich_check,
    subcorona_transform,
};
pub use closed_form::{
    closed_form_degree, closed_form_layer, ClosedFormEntry, ClosedFormLayer, EdgeSource,
};

/// Vertex budget used when callers have no better bound.
pub const DEFAULT_MAX_VERTICES: usize = 20_000_000;

/// A user-supplied functional on lattice vectors. It must be fundamentally
/// monotone for [`build_c_leq`] to return the whole sub-level set.
pub type CustomFn = dyn Fn(&BigUint, &BigUint) -> Rational + Send + Sync;

/// A fundamentally monotone functional on vertices.
#[derive(Clone)]
pub enum NormSpec {
    /// `α·x + β·y`.
    Linear { alpha: Rational, beta: Rational },
    /// `(xᵖ + yᵖ)^{1/p}`, compared through `xᵖ + yᵖ ≤ Rᵖ`.
    PPower { p: u32 },
    /// `max(x, y)`.
    Max,
    /// `tr(g_v·Aᵗ) = x₋a₁₁ + y₋a₁₂ + x₊a₂₁ + y₊a₂₂` on the word of the vertex.
    Matrix { a: [[Rational; 2]; 2] },
    Custom { name: String, f: Arc<CustomFn> },
}

impl fmt::Debug for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Linear { alpha, beta } => write!(f, "linear({alpha},{beta})"),
            NormSpec::PPower { p } => write!(f, "p{p}"),
            NormSpec::Max => f.write_str("max"),
            NormSpec::Matrix { a } => {
                write!(f, "matrix({},{};{},{})", a[0][0], a[0][1], a[1][0], a[1][1])
            }
            NormSpec::Custom { name, .. } => write!(f, "custom({name})"),
        }
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn to_rational(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

impl NormSpec {
    pub fn linear(alpha: Rational, beta: Rational) -> Result<NormSpec> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidNorm(format!("linear norm needs α, β > 0, got {alpha}, {beta}")));
        }
        Ok(NormSpec::Linear { alpha, beta })
    }

    /// `linear(α, β)` with integer weights.
    pub fn linear_int(alpha: i64, beta: i64) -> Result<NormSpec> {
        NormSpec::linear(int(alpha), int(beta))
    }

    pub fn p_power(p: u32) -> Result<NormSpec> {
        if p == 0 {
            return Err(Error::InvalidNorm("p-norm needs p >= 1".into()));
        }
        Ok(NormSpec::PPower { p })
    }

    pub fn matrix(a: [[Rational; 2]; 2]) -> Result<NormSpec> {
        if a.iter().flatten().any(|e| !e.is_positive()) {
            return Err(Error::InvalidNorm("matrix norm needs positive entries".into()));
        }
        Ok(NormSpec::Matrix { a })
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(&BigUint, &BigUint) -> Rational + Send + Sync + 'static) -> NormSpec {
        NormSpec::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// The five norms used throughout the test grids.
    pub fn builtins() -> Vec<NormSpec> {
        vec![
            NormSpec::linear_int(1, 1).expect("valid"),
            NormSpec::linear_int(1, 2).expect("valid"),
            NormSpec::linear_int(2, 3).expect("valid"),
            NormSpec::PPower { p: 2 },
            NormSpec::Max,
        ]
    }

    /// Homogeneous and subadditive on vectors.
    pub fn is_subadditive(&self) -> bool {
        matches!(self, NormSpec::Linear { .. } | NormSpec::PPower { .. } | NormSpec::Max)
    }

    /// Exact value on a vertex; `None` for p-norms with `p ≥ 2`, whose
    /// values are irrational in general.
    pub fn value(&self, w: &Vertex) -> Result<Option<Rational>> {
        let (x, y) = (to_rational(w.x()), to_rational(w.y()));
        Ok(Some(match self {
            NormSpec::Linear { alpha, beta } => alpha * x + beta * y,
            NormSpec::PPower { p: 1 } => x + y,
            NormSpec::PPower { .. } => return Ok(None),
            NormSpec::Max => x.max(y),
            NormSpec::Matrix { a } => {
                let (lo, hi) = bounds(w)?;
                &a[0][0] * to_rational(lo.x())
                    + &a[0][1] * to_rational(lo.y())
                    + &a[1][0] * to_rational(hi.x())
                    + &a[1][1] * to_rational(hi.y())
            }
            NormSpec::Custom { f, .. } => f(w.x(), w.y()),
        }))
    }

    pub(crate) fn ball(&self, r: &Rational) -> Ball<'_> {
        Ball::new(self, r)
    }
}

/// `|·| ≤ R` prepared for repeated membership tests.
pub(crate) struct Ball<'a> {
    norm: &'a NormSpec,
    r: Rational,
    /// Integer form of linear and power tests: `num(w) ≤ bound`.
    scaled: Option<Scaled>,
}

enum Scaled {
    /// `a·x + b·y ≤ bound`.
    Linear { a: BigUint, b: BigUint, bound: BigInt },
    /// `xᵖ + yᵖ ≤ bound / scale`, i.e. `scale·(xᵖ + yᵖ) ≤ bound`.
    Power { p: u32, scale: BigUint, bound: BigInt },
    /// `scale·max(x, y) ≤ bound`.
    Max { scale: BigUint, bound: BigInt },
}

impl<'a> Ball<'a> {
    fn new(norm: &'a NormSpec, r: &Rational) -> Self {
        let (rn, rd) = (r.numer().clone(), r.denom().magnitude().clone());
        let scaled = match norm {
            NormSpec::Linear { alpha, beta } => {
                let d = num_integer::Integer::lcm(alpha.denom(), beta.denom());
                let a = (alpha * Rational::from_integer(d.clone())).to_integer();
                let b = (beta * Rational::from_integer(d.clone())).to_integer();
                Some(Scaled::Linear {
                    a: a.magnitude() * &rd,
                    b: b.magnitude() * &rd,
                    bound: rn * d,
                })
            }
            NormSpec::PPower { p } => Some(Scaled::Power {
                p: *p,
                scale: num_traits::pow(rd, *p as usize),
                bound: if rn.is_negative() && p % 2 == 0 {
                    BigInt::from(-1)
                } else {
                    num_traits::pow(rn, *p as usize)
                },
            }),
            NormSpec::Max => Some(Scaled::Max { scale: rd, bound: rn }),
            _ => None,
        };
        Ball {
            norm,
            r: r.clone(),
            scaled,
        }
    }

    /// `|(x, y)| ≤ R` for a vertex `(x, y)`.
    fn contains_xy(&self, x: &BigUint, y: &BigUint) -> bool {
        let le = |lhs: BigUint, bound: &BigInt| bound.sign() != num_bigint::Sign::Minus && &BigInt::from(lhs) <= bound;
        match &self.scaled {
            Some(Scaled::Linear { a, b, bound }) => le(a * x + b * y, bound),
            Some(Scaled::Power { p, scale, bound }) => le(scale * (x.pow(*p) + y.pow(*p)), bound),
            Some(Scaled::Max { scale, bound }) => le(scale * x.max(y), bound),
            None => {
                let w = Vertex::from_parts(x.clone(), y.clone());
                match self.norm.value(&w) {
                    Ok(Some(v)) => v <= self.r,
                    _ => false,
                }
            }
        }
    }

    pub(crate) fn contains(&self, w: &Vertex) -> bool {
        self.contains_xy(w.x(), w.y())
    }

    /// `|v|ₙ ≤ R` for `v = v₋ + v₊`: both `|a_{n+2}v₊ + a_{n+1}v₋|` and
    /// `|a_{n+1}v₊ + a_{n+2}v₋|` are at most `R`.
    pub(crate) fn contains_iterated(&self, lo: &Vertex, hi: &Vertex, level: &Level) -> bool {
        if level.n == 0 {
            return self.contains_xy(&(lo.x() + hi.x()), &(lo.y() + hi.y()));
        }
        let (big, small) = (&level.big, &level.small);
        self.contains_xy(&(big * hi.x() + small * lo.x()), &(big * hi.y() + small * lo.y()))
            && self.contains_xy(&(small * hi.x() + big * lo.x()), &(small * hi.y() + big * lo.y()))
    }
}

/// Fibonacci weights `(a_{n+2}, a_{n+1})` of the iterated norm `|·|ₙ`.
pub(crate) struct Level {
    n: u32,
    big: BigUint,
    small: BigUint,
}

impl Level {
    pub(crate) fn new(n: u32) -> Level {
        Level {
            n,
            big: fib(n as usize + 2),
            small: fib(n as usize + 1),
        }
    }
}

/// `|·|ₙ` over a base norm: `|v|ₙ = sup{|a_{n+2}v₊ + a_{n+1}v₋|, |a_{n+1}v₊ + a_{n+2}v₋|}`.
#[derive(Clone, Debug)]
pub struct IteratedNorm {
    pub base: NormSpec,
    pub level: u32,
}

impl IteratedNorm {
    pub fn new(base: NormSpec, level: u32) -> Self {
        IteratedNorm { base, level }
    }

    pub fn value(&self, v: &Vertex) -> Result<Rational> {
        iterated_norm_value(&self.base, v, self.level)
    }

    pub fn build(&self, r: &Rational, max_vertices: usize) -> Result<FareyPath> {
        build_level(&self.base, r, self.level, max_vertices)
    }
}

/// `|v|ₙ` for an interior vertex. Fails for norms without rational values.
pub fn iterated_norm_value(norm: &NormSpec, v: &Vertex, n: u32) -> Result<Rational> {
    let (lo, hi) = bounds(v)?;
    let (big, small) = (fib(n as usize + 2), fib(n as usize + 1));
    let combo = |a: &BigUint, b: &BigUint| Vertex::from_parts(a * hi.x() + b * lo.x(), a * hi.y() + b * lo.y());
    let value = |w: Vertex| {
        norm.value(&w)?
            .ok_or_else(|| Error::Precondition(format!("{norm} has no exact value; compare with a ball instead")))
    };
    let first = value(combo(&big, &small))?;
    let second = value(combo(&small, &big))?;
    Ok(first.max(second))
}

/// `c(|·| ≤ R)` as a path, by walking the Stern-Brocot tree from the root
/// and pruning below every vertex outside the ball.
pub fn build_c_leq_path(norm: &NormSpec, r: &Rational, max_vertices: usize) -> Result<FareyPath> {
    build_level(norm, r, 0, max_vertices)
}

/// `c(|·| ≤ R)` as a corona.
pub fn build_c_leq(norm: &NormSpec, r: &Rational, max_vertices: usize) -> Result<Corona> {
    Corona::new(build_c_leq_path(norm, r, max_vertices)?)
}

/// `c(|·|ₙ ≤ R)`.
pub(crate) fn build_level(norm: &NormSpec, r: &Rational, n: u32, max_vertices: usize) -> Result<FareyPath> {
    let ball = norm.ball(r);
    let level = Level::new(n);
    let mut out = vec![Vertex::zero()];
    enum Step {
        Visit(Vertex, Vertex),
        Emit(Vertex),
    }
    let mut stack = vec![Step::Visit(Vertex::zero(), Vertex::infinity())];
    while let Some(step) = stack.pop() {
        match step {
            Step::Emit(v) => out.push(v),
            Step::Visit(lo, hi) => {
                if !ball.contains_iterated(&lo, &hi, &level) {
                    continue;
                }
                if out.len() + stack.len() > max_vertices {
                    return Err(Error::Unbounded(max_vertices));
                }
                let v = lo.mediant(&hi);
                stack.push(Step::Visit(v.clone(), hi));
                stack.push(Step::Emit(v.clone()));
                stack.push(Step::Visit(lo, v));
            }
        }
    }
    out.push(Vertex::infinity());
    Ok(FareyPath::from_points_unchecked(out))
}

/// `(α, β)`: positive rationals of a linear norm.
pub(crate) fn linear_weights(norm: &NormSpec) -> Result<(&Rational, &Rational)> {
    match norm {
        NormSpec::Linear { alpha, beta } => Ok((alpha, beta)),
        other => Err(Error::Precondition(format!("{other} is not a linear norm"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corona::is_corona;
    use crate::sb::v;

    fn r(n: i64) -> Rational {
        int(n)
    }

    fn brute(norm: &NormSpec, bound: i64, r_: &Rational) -> Vec<Vertex> {
        let ball = norm.ball(r_);
        let mut pts = vec![];
        for x in 1..=bound as u64 {
            for y in 1..=bound as u64 {
                if num_integer::gcd(x, y) == 1 && ball.contains(&v(x, y)) {
                    pts.push(v(x, y));
                }
            }
        }
        pts
    }

    #[test]
    fn build_examples() {
        let l11 = NormSpec::linear_int(1, 1).unwrap();
        let c3 = build_c_leq_path(&l11, &r(3), 100).unwrap();
        assert_eq!(c3.interior(), &[v(2, 1), v(1, 1), v(1, 2)]);
        assert_eq!(build_c_leq_path(&l11, &r(4), 100).unwrap().interior().len(), 5);
        let cmax = build_c_leq_path(&NormSpec::Max, &r(2), 100).unwrap();
        assert_eq!(cmax.interior(), &[v(2, 1), v(1, 1), v(1, 2)]);
        assert!(build_c_leq_path(&l11, &r(1), 100).unwrap().is_empty());
    }

    #[test]
    fn build_matches_exhaustive_scan() {
        let mut norms = NormSpec::builtins();
        norms.push(NormSpec::linear(Rational::new(1.into(), 1.into()), Rational::new(5.into(), 2.into())).unwrap());
        norms.push(NormSpec::p_power(3).unwrap());
        let half = Rational::new(1.into(), 2.into());
        norms.push(NormSpec::matrix([[int(1), half.clone()], [int(2), int(1)]]).unwrap());
        for norm in &norms {
            for rr in [2, 5, 11, 17] {
                let rad = r(rr);
                let built = build_c_leq_path(norm, &rad, 10_000).unwrap();
                let mut want = brute(norm, 2 * rr, &rad);
                want.sort_by(|a, b| a.cmp_real(b));
                assert_eq!(built.interior(), want.as_slice(), "{norm} R={rr}");
                assert!(is_corona(&built), "{norm} R={rr}");
            }
        }
    }

    #[test]
    fn rational_radius() {
        let l11 = NormSpec::linear_int(1, 1).unwrap();
        let c = build_c_leq_path(&l11, &Rational::new(7.into(), 2.into()), 100).unwrap();
        assert_eq!(c.interior().len(), 3);
        let p2 = NormSpec::p_power(2).unwrap();
        // 1² + 2² = 5 ≤ (9/4)² = 81/16; 2² + 2² is not coprime; 1² + 3² = 10 > 81/16.
        let c = build_c_leq_path(&p2, &Rational::new(9.into(), 4.into()), 100).unwrap();
        assert_eq!(c.interior(), &[v(2, 1), v(1, 1), v(1, 2)]);
    }

    #[test]
    fn unbounded_sublevel_set() {
        let first = NormSpec::custom("x", |x, _| Rational::from_integer(BigInt::from(x.clone())));
        assert!(matches!(
            build_c_leq_path(&first, &r(2), 1000),
            Err(Error::Unbounded(1000))
        ));
        let sum = NormSpec::custom("x+y", |x, y| Rational::from_integer(BigInt::from(x + y)));
        assert_eq!(build_c_leq_path(&sum, &r(6), 1000).unwrap().interior().len(), 11);
    }

    #[test]
    fn iterated_values() {
        let l11 = NormSpec::linear_int(1, 1).unwrap();
        assert_eq!(iterated_norm_value(&l11, &v(1, 1), 1).unwrap(), r(3));
        assert_eq!(iterated_norm_value(&l11, &v(1, 1), 0).unwrap(), r(2));
        assert_eq!(iterated_norm_value(&l11, &v(2, 1), 1).unwrap(), r(5));
        assert!(iterated_norm_value(&NormSpec::PPower { p: 2 }, &v(1, 1), 1).is_err());
        assert!(iterated_norm_value(&l11, &Vertex::zero(), 1).is_err());
    }

    #[test]
    fn iterated_build_agrees_with_values() {
        let norm = NormSpec::linear_int(2, 3).unwrap();
        for n in 0..4 {
            let it = IteratedNorm::new(norm.clone(), n);
            let built = it.build(&r(60), 10_000).unwrap();
            let full = build_c_leq_path(&norm, &r(60), 10_000).unwrap();
            let want: Vec<Vertex> = full
                .interior()
                .iter()
                .filter(|w| it.value(w).unwrap() <= r(60))
                .cloned()
                .collect();
            assert_eq!(built.interior(), want.as_slice(), "n={n}");
        }
    }

    #[test]
    fn invalid_norms() {
        assert!(NormSpec::linear_int(0, 1).is_err());
        assert!(NormSpec::p_power(0).is_err());
        assert!(NormSpec::matrix([[int(1), int(0)], [int(1), int(1)]]).is_err());
    }
}
