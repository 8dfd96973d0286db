use super::tree::{bounds, is_ancestor_or_self};
use super::vertex::Vertex;
use crate::error::Result;

/// The four partial orders on vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ordering4 {
    /// `y/x ≤ y'/x'` on `[0, ∞]`.
    Real,
    /// `⊲`: ancestor in the Stern-Brocot tree.
    Tree,
    /// `≺`: componentwise.
    Pointwise,
    /// `≪`: both bounds componentwise.
    Fundamental,
}

/// Outcome of [`compare`]: `a < b`, `a = b`, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    Equal,
    Other,
}

impl Relation {
    pub fn is_le(self) -> bool {
        self != Relation::Other
    }
}

pub fn compare(a: &Vertex, b: &Vertex, order: Ordering4) -> Result<Relation> {
    if a == b {
        return Ok(Relation::Equal);
    }
    let less = match order {
        Ordering4::Real => a.cmp_real(b).is_lt(),
        Ordering4::Pointwise => a.le_pointwise(b),
        Ordering4::Tree => is_ancestor_or_self(a, b)?,
        Ordering4::Fundamental => {
            let (al, ah) = bounds(a)?;
            let (bl, bh) = bounds(b)?;
            al.le_pointwise(&bl) && ah.le_pointwise(&bh)
        }
    };
    Ok(if less { Relation::Less } else { Relation::Other })
}
