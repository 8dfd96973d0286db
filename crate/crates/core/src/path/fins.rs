use num_bigint::BigUint;
use num_traits::Zero;

use super::FareyPath;
use crate::error::{Error, Result};
use crate::sb::{bounds, Sign, Vertex};

/// `c ∘ ν`: edge `[lo, hi]` with entry `n` is filled by the straight line
/// `lo + k·hi` (`k = 1..=n+1`) when `n ≥ 0`, or `hi + k·lo`
/// (`k = 1..=|n|+1`) when `n < 0`. The result has degree `2m + |ν|` and its
/// local minima are exactly the points of `c`.
pub fn expand(c: &FareyPath, nu: &[i64]) -> Result<FareyPath> {
    let m = c.degree();
    if nu.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: nu.len(),
        });
    }
    let pts = c.points();
    let mut out = Vec::with_capacity(2 * m + 1);
    out.push(pts[0].clone());
    for i in 1..=m {
        let (lo, hi) = (&pts[i - 1], &pts[i]);
        let n = nu[i - 1];
        let count = usize::try_from(n.unsigned_abs() + 1).map_err(|_| {
            Error::ResourceBound(format!("fin of length {n} cannot be materialised"))
        })?;
        if n >= 0 {
            let mut q = lo.clone();
            for _ in 0..count {
                q = q.mediant(hi);
                out.push(q.clone());
            }
        } else {
            let mut q = hi.clone();
            let mut line = Vec::with_capacity(count);
            for _ in 0..count {
                q = q.mediant(lo);
                line.push(q.clone());
            }
            out.extend(line.into_iter().rev());
        }
        out.push(hi.clone());
    }
    Ok(FareyPath::from_points_unchecked(out))
}

/// Shape of the points strictly between two consecutive minima `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinKind {
    /// A single mediant.
    Mediant,
    /// `hi + k·lo`: part of the plus fin of `lo`.
    Plus,
    /// `lo + k·hi`: part of the minus fin of `hi`.
    Minus,
}

/// `c = Φc ∘ λ_c` for a ★-set `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub phi: FareyPath,
    pub lambda: Vec<i64>,
    pub kinds: Vec<FinKind>,
}

/// Splits a ★-set into `Φc` and the signed fin lengths `λ_c` over `∂Φc`.
pub fn extract_lambda(c: &FareyPath) -> Result<Extraction> {
    if !c.is_star() {
        return Err(Error::NotStar);
    }
    let pts = c.points();
    let mut cuts = vec![0];
    cuts.extend(c.phi_indices());
    cuts.push(c.degree());
    let mut lambda = Vec::with_capacity(cuts.len() - 1);
    let mut kinds = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (lo, hi) = (&pts[a], &pts[b]);
        let gap = &pts[a + 1..b];
        let k = gap.len();
        let up = || (1..=k).all(|j| gap[j - 1] == lo.plus_multiple(&BigUint::from(j), hi));
        let down = || (1..=k).all(|j| gap[k - j] == hi.plus_multiple(&BigUint::from(j), lo));
        let (kind, l) = if k == 1 && gap[0] == lo.mediant(hi) {
            (FinKind::Mediant, 0)
        } else if k >= 2 && up() {
            (FinKind::Minus, k as i64 - 1)
        } else if k >= 2 && down() {
            (FinKind::Plus, 1 - k as i64)
        } else {
            return Err(Error::NotStar);
        };
        kinds.push(kind);
        lambda.push(l);
    }
    let phi = FareyPath::from_points_unchecked(cuts.iter().map(|&i| pts[i].clone()).collect());
    Ok(Extraction { phi, lambda, kinds })
}

/// Fin labelling of one gap between consecutive minima `lo < hi`, read off
/// the fins of the endpoints: either the gap is `lo₊ + k·lo` for
/// `n < k ≤ top` (the plus fin of `lo`, valued `n − top + 1`) or it is
/// `hi₋ + k·hi` likewise (the minus fin of `hi`, valued `top − n − 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLabel {
    pub side: Option<Sign>,
    pub value: Option<i64>,
    pub extracted: i64,
}

impl FinLabel {
    pub fn agrees(&self) -> bool {
        self.value == Some(self.extracted)
    }
}

/// Labels every gap of a ★-set by fin side and compares the labelled value
/// with the extracted `λ`. When both fins fit (a lone mediant) the plus side
/// is reported.
pub fn fin_label_report(c: &FareyPath) -> Result<Vec<FinLabel>> {
    let ex = extract_lambda(c)?;
    let pts = c.points();
    let mut cuts = vec![0];
    cuts.extend(c.phi_indices());
    cuts.push(c.degree());
    let mut out = Vec::new();
    for (w, l) in cuts.windows(2).zip(&ex.lambda) {
        let (lo, hi) = (&pts[w[0]], &pts[w[1]]);
        let gap = &pts[w[0] + 1..w[1]];
        let mut label = FinLabel {
            side: None,
            value: None,
            extracted: *l,
        };
        // Plus fin of lo: hi = lo₊ + n·lo, the gap continues the fin and the
        // leaf next to lo is lo₊ + top·lo.
        let lo_up = if lo.is_zero_end() {
            Some(Vertex::infinity())
        } else if lo.is_interior() {
            Some(bounds(lo)?.1)
        } else {
            None
        };
        let hi_down = if hi.is_infinity_end() {
            Some(Vertex::zero())
        } else if hi.is_interior() {
            Some(bounds(hi)?.0)
        } else {
            None
        };
        if let Some((n, top)) = lo_up.and_then(|b| fin_fit(hi, gap, gap.first(), &b, lo)) {
            label.side = Some(Sign::Plus);
            label.value = Some(n - top + 1);
        } else if let Some((n, top)) = hi_down.and_then(|b| fin_fit(lo, gap, gap.last(), &b, hi)) {
            label.side = Some(Sign::Minus);
            label.value = Some(top - n - 1);
        }
        out.push(label);
    }
    Ok(out)
}

/// Offsets `(n, top)` of the far minimum and of the leaf on the fin
/// `base + k·step`, provided every gap point lies on that fin.
fn fin_fit(
    far: &Vertex,
    gap: &[Vertex],
    leaf: Option<&Vertex>,
    base: &Vertex,
    step: &Vertex,
) -> Option<(i64, i64)> {
    let n = fin_offset(far, base, step)?;
    if !gap.iter().all(|q| fin_offset(q, base, step).is_some()) {
        return None;
    }
    let top = fin_offset(leaf?, base, step)?;
    Some((i64::try_from(&n).ok()?, i64::try_from(&top).ok()?))
}

/// The `n ≥ 0` with `q = base + n·step`, if any.
fn fin_offset(q: &Vertex, base: &Vertex, step: &Vertex) -> Option<BigUint> {
    let d = q.checked_sub(base)?;
    let n = if !step.x().is_zero() {
        d.x() / step.x()
    } else {
        d.y() / step.y()
    };
    (base.plus_multiple(&n, step) == *q).then_some(n)
}
