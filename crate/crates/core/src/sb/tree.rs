use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::vertex::Vertex;
use super::word::{cf_to_vertex, Sign, Sl2Word};
use crate::error::{Error, Result};

/// Lower and upper bounds `(v₋, v₊)` of an interior vertex: the rows of `g_v`,
/// i.e. its two neighbours of smaller `x + y` in the Farey graph.
pub fn bounds(v: &Vertex) -> Result<(Vertex, Vertex)> {
    let w = Sl2Word::of_vertex(v)?;
    Ok((w.lower().clone(), w.upper().clone()))
}

/// A parent of a vertex. The root `(1,1)` has both endpoints as mothers and
/// as fathers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parent {
    Vertex(Vertex),
    Endpoints,
}

impl Parent {
    pub fn vertex(&self) -> Option<&Vertex> {
        match self {
            Parent::Vertex(v) => Some(v),
            Parent::Endpoints => None,
        }
    }
}

/// Mother, father and sign of a vertex, all read off one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parents {
    pub mother: Parent,
    pub father: Parent,
    pub sign: Sign,
}

pub fn parents(v: &Vertex) -> Result<Parents> {
    let w = Sl2Word::of_vertex(v)?;
    if w.is_identity() {
        return Ok(Parents {
            mother: Parent::Endpoints,
            father: Parent::Endpoints,
            sign: Sign::Plus,
        });
    }
    let (lo, hi) = (w.lower().clone(), w.upper().clone());
    let (mother, father) = match w.sign() {
        Sign::Plus => (lo, hi),
        Sign::Minus => (hi, lo),
    };
    Ok(Parents {
        mother: Parent::Vertex(mother),
        father: Parent::Vertex(father),
        sign: w.sign(),
    })
}

pub fn mother(v: &Vertex) -> Result<Parent> {
    Ok(parents(v)?.mother)
}

pub fn father(v: &Vertex) -> Result<Parent> {
    Ok(parents(v)?.father)
}

/// `δ(v)`, the sign of `g_v`.
pub fn sign(v: &Vertex) -> Result<Sign> {
    Ok(Sl2Word::of_vertex(v)?.sign())
}

/// The mother as a plain vertex, `None` at the root.
pub fn mother_of(v: &Vertex) -> Result<Option<Vertex>> {
    Ok(match mother(v)? {
        Parent::Vertex(m) => Some(m),
        Parent::Endpoints => None,
    })
}

/// The strict ancestors of `v`, nearest first, ending at the root.
pub fn ancestors(v: &Vertex) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = v.clone();
    while let Some(m) = mother_of(&cur)? {
        out.push(m.clone());
        cur = m;
    }
    Ok(out)
}

/// Result of [`father_grandmother_index`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrandmotherIndex {
    /// `F(v) = M^{1+m}(v)`.
    Index(BigUint),
    /// The father is `0` or `∞`, which no power of `M` reaches.
    EndpointFather,
}

/// The `m ≥ 1` with `F(v) = M^{1+m}(v)`; it is the last exponent `a_ℓ` of `g_v`.
pub fn father_grandmother_index(v: &Vertex) -> Result<GrandmotherIndex> {
    let w = Sl2Word::of_vertex(v)?;
    if w.is_identity() {
        return Err(Error::Precondition(
            "the root has no grandmother index".into(),
        ));
    }
    let father = match w.sign() {
        Sign::Plus => w.upper(),
        Sign::Minus => w.lower(),
    };
    if father.is_endpoint() {
        return Ok(GrandmotherIndex::EndpointFather);
    }
    let m = w.exponents()[w.ell()].clone();
    debug_assert_eq!(
        reconstruct_from_father(father, &m, w.sign()).ok().as_ref(),
        Some(v)
    );
    Ok(GrandmotherIndex::Index(m))
}

/// Rebuilds `v` from its father `F`, index `m` and sign:
/// `(1+m)·F + F₋` when `δ = +` and `(1+m)·F + F₊` when `δ = −`.
pub fn reconstruct_from_father(father: &Vertex, m: &BigUint, sign: Sign) -> Result<Vertex> {
    let (lo, hi) = bounds(father)?;
    let tail = match sign {
        Sign::Plus => lo,
        Sign::Minus => hi,
    };
    Ok(tail.plus_multiple(&(m + 1u32), father))
}

/// Point `n` of the fin of `v` on the given side: `v₊ + n·v` or `v₋ + n·v`.
///
/// The endpoints have one-sided fins: `∞` only on the minus side, giving
/// `(1, n)`, and `0` only on the plus side, giving `(n, 1)`.
pub fn fin(v: &Vertex, side: Sign, n: &BigUint) -> Result<Vertex> {
    if n.is_zero() {
        return Err(Error::Precondition("fin index starts at 1".into()));
    }
    if v.is_infinity_end() {
        return match side {
            Sign::Minus => Ok(Vertex::zero().plus_multiple(n, v)),
            Sign::Plus => Err(Error::InvalidFinSide {
                vertex: v.to_string(),
                allowed: "-",
            }),
        };
    }
    if v.is_zero_end() {
        return match side {
            Sign::Plus => Ok(Vertex::infinity().plus_multiple(n, v)),
            Sign::Minus => Err(Error::InvalidFinSide {
                vertex: v.to_string(),
                allowed: "+",
            }),
        };
    }
    let (lo, hi) = bounds(v)?;
    let base = match side {
        Sign::Plus => hi,
        Sign::Minus => lo,
    };
    Ok(base.plus_multiple(n, v))
}

/// `v ⊲ w` or `v = w`: `w` lies in the subtree rooted at `v`, which is the
/// set of vertices strictly between `v₋` and `v₊`.
pub fn is_ancestor_or_self(v: &Vertex, w: &Vertex) -> Result<bool> {
    w.require_interior()?;
    let (lo, hi) = bounds(v)?;
    Ok(lo.cmp_real(w).is_lt() && w.cmp_real(&hi).is_lt())
}

/// The meet `v₁ Λ v₂`: the deepest common ancestor (or self) of both.
///
/// Paths from the root are the exponent blocks read from `a₀` on, so the
/// meet is the longest common prefix of the two block sequences.
pub fn meet(a: &Vertex, b: &Vertex) -> Result<Vertex> {
    let wa = Sl2Word::of_vertex(a)?;
    let wb = Sl2Word::of_vertex(b)?;
    let (ea, eb) = (wa.exponents(), wb.exponents());
    let mut prefix = Vec::new();
    for (x, y) in ea.iter().zip(eb) {
        if x == y {
            prefix.push(x.clone());
        } else {
            prefix.push(x.min(y).clone());
            break;
        }
    }
    // A zero block past a₀ cannot occur: blocks there are ≥ 1 on both sides.
    cf_to_vertex(&prefix)
}

/// `v* = (y, x)`.
pub fn involution_star(v: &Vertex) -> Result<Vertex> {
    v.require_interior()?;
    Ok(v.swapped())
}

/// `vᵗ = (1,1)·g_vᵗ = (x₋ + y₋, x₊ + y₊)`.
pub fn involution_transpose(v: &Vertex) -> Result<Vertex> {
    Ok(Sl2Word::of_vertex(v)?.transpose().vertex())
}

/// Mother and father as predicted by the closed continued-fraction formulas,
/// set against the structural values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfParentReport {
    pub vertex: Vertex,
    pub exponents: Vec<BigUint>,
    pub mother: Parent,
    pub father: Parent,
    pub mother_formula: Option<Vertex>,
    pub father_formula: Option<Vertex>,
}

impl CfParentReport {
    pub fn mother_agrees(&self) -> bool {
        self.mother.vertex().is_some() && self.mother.vertex() == self.mother_formula.as_ref()
    }

    pub fn father_agrees(&self) -> bool {
        self.father.vertex().is_some() && self.father.vertex() == self.father_formula.as_ref()
    }
}

/// Evaluates the continued-fraction shortcuts
///
/// * `a_ℓ > 1`: `M = ⟦a₀, …, a_ℓ − 1⟧`, `F = ⟦a₀, …, a_{ℓ−1}⟧`;
/// * `a_ℓ = 1`, `ℓ ≥ 2`: `M = ⟦a₀, …, a_{ℓ−1}⟧`, `F = ⟦a₀, …, a_{ℓ−2}⟧`;
/// * `ℓ = 1`: `F = a₀`; `ℓ = 0`: `F = ∞`;
///
/// and records them next to the mother and father from the bounds. The
/// formulas are not trusted: at `(5,2) = ⟦0,2,1⟧` the father formula gives
/// `(1,1)` while the structural father is `(2,1)`.
pub fn cf_parent_report(v: &Vertex) -> Result<CfParentReport> {
    let w = Sl2Word::of_vertex(v)?;
    let p = parents(v)?;
    let a = w.exponents();
    let ell = w.ell();
    let last = &a[ell];
    let one = BigUint::one();
    let (mut mother_formula, mut father_formula) = (None, None);
    if !w.is_identity() {
        if *last > one || ell == 0 {
            let mut m = a.to_vec();
            m[ell] -= 1u32;
            mother_formula = cf_to_vertex(&m).ok();
            if ell >= 2 {
                father_formula = cf_to_vertex(&a[..ell]).ok();
            }
        } else {
            mother_formula = cf_to_vertex(&a[..ell]).ok();
            if ell >= 2 {
                father_formula = cf_to_vertex(&a[..ell - 1]).ok();
            }
        }
        if ell == 1 {
            father_formula = Some(if a[0].is_zero() {
                Vertex::zero()
            } else {
                Vertex::from_parts(BigUint::one(), a[0].clone())
            });
        }
        if ell == 0 {
            father_formula = Some(Vertex::infinity());
        }
    }
    Ok(CfParentReport {
        vertex: v.clone(),
        exponents: a.to_vec(),
        mother: p.mother,
        father: p.father,
        mother_formula,
        father_formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sb::vertex::v;

    fn pv(x: u64, y: u64) -> Parent {
        Parent::Vertex(v(x, y))
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(bounds(&v(1, 1)).unwrap(), (Vertex::zero(), Vertex::infinity()));
        assert_eq!(bounds(&v(2, 3)).unwrap(), (v(1, 1), v(1, 2)));
        assert_eq!(bounds(&v(1, 4)).unwrap(), (v(1, 3), Vertex::infinity()));
        assert_eq!(bounds(&v(4, 1)).unwrap(), (Vertex::zero(), v(3, 1)));
    }

    #[test]
    fn parents_examples() {
        let p = parents(&v(1, 2)).unwrap();
        assert_eq!((p.mother, p.father, p.sign), (pv(1, 1), Parent::Vertex(Vertex::infinity()), Sign::Plus));
        let p = parents(&v(2, 3)).unwrap();
        assert_eq!((p.mother, p.father, p.sign), (pv(1, 2), pv(1, 1), Sign::Minus));
        let p = parents(&v(5, 2)).unwrap();
        assert_eq!((p.mother, p.father, p.sign), (pv(3, 1), pv(2, 1), Sign::Plus));
        let p = parents(&v(1, 1)).unwrap();
        assert_eq!((p.mother, p.father), (Parent::Endpoints, Parent::Endpoints));
        assert!(parents(&Vertex::zero()).is_err());
    }

    #[test]
    fn grandmother_index_examples() {
        let one = GrandmotherIndex::Index(BigUint::one());
        assert_eq!(father_grandmother_index(&v(2, 3)).unwrap(), one);
        assert_eq!(father_grandmother_index(&v(5, 2)).unwrap(), one);
        assert_eq!(
            father_grandmother_index(&v(1, 2)).unwrap(),
            GrandmotherIndex::EndpointFather
        );
        assert_eq!(
            father_grandmother_index(&v(7, 1)).unwrap(),
            GrandmotherIndex::EndpointFather
        );
        assert!(father_grandmother_index(&v(1, 1)).is_err());
    }

    #[test]
    fn fin_examples() {
        let n = |k: u32| BigUint::from(k);
        assert_eq!(fin(&v(1, 1), Sign::Plus, &n(2)).unwrap(), v(2, 3));
        assert_eq!(fin(&v(1, 1), Sign::Minus, &n(1)).unwrap(), v(2, 1));
        assert_eq!(fin(&Vertex::infinity(), Sign::Minus, &n(3)).unwrap(), v(1, 3));
        assert_eq!(fin(&Vertex::zero(), Sign::Plus, &n(3)).unwrap(), v(3, 1));
        assert!(fin(&Vertex::infinity(), Sign::Plus, &n(1)).is_err());
        assert!(fin(&Vertex::zero(), Sign::Minus, &n(1)).is_err());
        assert!(fin(&v(1, 1), Sign::Plus, &n(0)).is_err());
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&v(1, 3), &v(2, 3)).unwrap(), v(1, 2));
        assert_eq!(meet(&v(2, 3), &v(2, 3)).unwrap(), v(2, 3));
        assert_eq!(meet(&v(2, 1), &v(1, 2)).unwrap(), v(1, 1));
        assert_eq!(meet(&v(1, 2), &v(2, 3)).unwrap(), v(1, 2));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involution_star(&v(2, 3)).unwrap(), v(3, 2));
        assert_eq!(involution_transpose(&v(1, 1)).unwrap(), v(1, 1));
        assert_eq!(involution_transpose(&v(2, 3)).unwrap(), v(2, 3));
    }

    #[test]
    fn cf_parent_report_mismatches_are_confined() {
        // The mother shortcut always holds; the father shortcut is only
        // reliable for ℓ ≤ 1.
        for w in interior_upto(80) {
            if w.is_root() {
                continue;
            }
            let r = cf_parent_report(&w).unwrap();
            assert!(r.mother_agrees(), "{w}");
            let ell = r.exponents.len() - 1;
            if ell <= 1 {
                assert!(r.father_agrees(), "{w} {:?}", r);
            }
        }
    }

    #[test]
    fn cf_parent_report_flags_known_mismatch() {
        let r = cf_parent_report(&v(5, 2)).unwrap();
        assert!(r.mother_agrees());
        assert_eq!(r.father_formula, Some(v(1, 1)));
        assert!(!r.father_agrees());
        let r = cf_parent_report(&v(4, 3)).unwrap();
        assert_eq!(r.father_formula, Some(v(2, 1)));
        assert!(!r.father_agrees());
        let r = cf_parent_report(&v(1, 3)).unwrap();
        assert!(r.mother_agrees() && r.father_agrees());
    }

    fn mother_walk(v: &Vertex) -> Vec<Vertex> {
        // Oracle: mothers from the plain definition via one-step bounds.
        let mut out = vec![];
        let mut cur = v.clone();
        while !cur.is_root() {
            let (lo, hi) = bounds(&cur).unwrap();
            // The mother is the bound of larger x + y.
            let m = if lo.l1() > hi.l1() { lo } else { hi };
            out.push(m.clone());
            cur = m;
        }
        out
    }

    fn interior_upto(s: u64) -> Vec<Vertex> {
        let mut out = vec![];
        for t in 2..=s {
            for x in 1..t {
                if let Ok(w) = Vertex::new(x, t - x) {
                    out.push(w);
                }
            }
        }
        out
    }

    #[test]
    fn mother_is_larger_bound_and_children_are_fins() {
        for w in interior_upto(60) {
            if w.is_root() {
                continue;
            }
            let (lo, hi) = bounds(&w).unwrap();
            let m = mother_of(&w).unwrap().unwrap();
            assert_eq!(m, if lo.l1() > hi.l1() { lo.clone() } else { hi.clone() });
            let kids = [w.mediant(&hi), w.mediant(&lo)];
            for k in kids {
                assert_eq!(mother_of(&k).unwrap().as_ref(), Some(&w));
            }
        }
    }

    #[test]
    fn grandmother_index_matches_mother_iteration() {
        for w in interior_upto(200) {
            if w.l1() < BigUint::from(3u32) {
                continue;
            }
            let p = parents(&w).unwrap();
            let f = p.father.vertex().unwrap().clone();
            match father_grandmother_index(&w).unwrap() {
                GrandmotherIndex::EndpointFather => assert!(f.is_endpoint()),
                GrandmotherIndex::Index(m) => {
                    let walk = mother_walk(&w);
                    let k: usize = (&m).try_into().unwrap();
                    assert_eq!(walk[k], f, "{w}");
                    assert!(!walk[..k].contains(&f));
                    assert_eq!(reconstruct_from_father(&f, &m, p.sign).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn subtree_interval_matches_mother_walk() {
        let all = interior_upto(30);
        for a in &all {
            for b in &all {
                let walk = a == b || mother_walk(b).contains(a);
                assert_eq!(is_ancestor_or_self(a, b).unwrap(), walk, "{a} {b}");
            }
        }
    }

    #[test]
    fn meet_is_deepest_common_ancestor() {
        let all = interior_upto(24);
        for a in &all {
            let mut la = mother_walk(a);
            la.insert(0, a.clone());
            for b in &all {
                let mut lb = mother_walk(b);
                lb.insert(0, b.clone());
                let oracle = la.iter().find(|x| lb.contains(x)).unwrap();
                assert_eq!(&meet(a, b).unwrap(), oracle);
            }
        }
    }
}
