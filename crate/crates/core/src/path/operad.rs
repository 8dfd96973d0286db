use num_bigint::BigUint;

use super::FareyPath;
use crate::error::{Error, Result};
use crate::sb::Vertex;

/// `c ∘ (b⁽¹⁾, …, b⁽ᵐ⁾)`: block `i` is carried onto edge `[c_{i−1}, cᵢ]` by
/// `u ↦ u_x·c_{i−1} + u_y·cᵢ`. Degrees add.
pub fn operad_compose(c: &FareyPath, blocks: &[FareyPath]) -> Result<FareyPath> {
    let m = c.degree();
    if blocks.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: blocks.len(),
        });
    }
    let pts = c.points();
    let total: usize = blocks.iter().map(FareyPath::degree).sum();
    let mut out = Vec::with_capacity(total + 1);
    out.push(pts[0].clone());
    for (i, b) in blocks.iter().enumerate() {
        let (lo, hi) = (&pts[i], &pts[i + 1]);
        for u in b.interior() {
            let x = u.x() * lo.x() + u.y() * hi.x();
            let y = u.x() * lo.y() + u.y() * hi.y();
            out.push(Vertex::from_parts(x, y));
        }
        out.push(hi.clone());
    }
    Ok(FareyPath::from_points_unchecked(out))
}

/// `ν_n`: `{(1,1), …, (1,n+1)}` for `n ≥ 0` and `{(1,1), …, (|n|+1,1)}` for
/// `n < 0`; a straight line up to the single leaf and straight back.
pub fn nu_path(n: i64) -> FareyPath {
    let k = n.unsigned_abs();
    let mut inner: Vec<Vertex> = (1..=k + 1)
        .map(|j| {
            let (a, b) = (BigUint::from(1u32), BigUint::from(j));
            if n >= 0 {
                Vertex::from_parts(a, b)
            } else {
                Vertex::from_parts(b, a)
            }
        })
        .collect();
    if n < 0 {
        inner.reverse();
    }
    let mut pts = vec![Vertex::zero()];
    pts.extend(inner);
    pts.push(Vertex::infinity());
    FareyPath::from_points_unchecked(pts)
}
