//! `⊲`-sets: finite mother-closed subtrees of the Stern-Brocot tree, stored as
//! the Farey path `0 = c₀ < c₁ < ⋯ < c_m = ∞` through their points.

mod enumerate;
pub(crate) mod fins;
mod ops;
mod operad;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sb::{is_farey_edge, mother_of, Vertex};

pub use enumerate::{catalan, enumerate_paths};
pub use fins::{expand, extract_lambda, fin_label_report, Extraction, FinKind, FinLabel};
pub use ops::{annihilate, create, number, FormalSum};
pub use operad::{nu_path, operad_compose};

/// A `⊲`-set `c`, kept as its boundary path `∂c` including both endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FareyPath {
    pts: Vec<Vertex>,
}

/// Friez indices of a path, indexed by position `0..=m`.
///
/// For interior `cᵢ = v`: `c_{i−1} = v₋ + n⁻ᵢ·v`, `c_{i+1} = v₊ + n⁺ᵢ·v` and
/// `fᵢ = 1 + n⁺ᵢ + n⁻ᵢ`. At the endpoints only the inward index is defined:
/// `c₁ = ∞ + n⁺₀·0`, `c_{m−1} = 0 + n⁻_m·∞`, and `f` is that index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriezData {
    pub minus: Vec<BigUint>,
    pub plus: Vec<BigUint>,
    pub f: Vec<BigUint>,
}

impl FareyPath {
    /// The empty `⊲`-set `φ`, whose path is the single edge `[0, ∞]`.
    pub fn empty() -> Self {
        FareyPath {
            pts: vec![Vertex::zero(), Vertex::infinity()],
        }
    }

    /// Builds the path through a finite set of interior vertices.
    pub fn from_interior<I: IntoIterator<Item = Vertex>>(set: I) -> Result<Self> {
        let mut inner: Vec<Vertex> = set.into_iter().collect();
        for w in &inner {
            w.require_interior()?;
        }
        inner.sort_by(|a, b| a.cmp_real(b));
        if let Some(w) = inner.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        let mut pts = Vec::with_capacity(inner.len() + 2);
        pts.push(Vertex::zero());
        pts.extend(inner);
        pts.push(Vertex::infinity());
        let path = FareyPath { pts };
        // A finite set is mother-closed exactly when its sorted points form a
        // Farey path, so the determinant check decides closure.
        if path.pts.windows(2).all(|e| is_farey_edge(&e[0], &e[1])) {
            return Ok(path);
        }
        Err(Error::NotMotherClosed(path.missing_mother_witness()))
    }

    fn missing_mother_witness(&self) -> String {
        let set: HashSet<&Vertex> = self.interior().iter().collect();
        for w in self.interior() {
            if let Ok(Some(m)) = mother_of(w) {
                if !set.contains(&m) {
                    return format!("{w} is present but its mother {m} is not");
                }
            }
        }
        "points do not form a Farey path".into()
    }

    /// Wraps a point sequence already known to be a Farey path from `0` to `∞`.
    pub(crate) fn from_points_unchecked(pts: Vec<Vertex>) -> Self {
        debug_assert!(pts.len() >= 2);
        debug_assert!(pts[0].is_zero_end() && pts[pts.len() - 1].is_infinity_end());
        FareyPath { pts }
    }

    /// Checks a full point sequence `c₀, …, c_m`.
    pub fn from_points(pts: Vec<Vertex>) -> Result<Self> {
        if pts.len() < 2 || !pts[0].is_zero_end() || !pts[pts.len() - 1].is_infinity_end() {
            return Err(Error::Precondition(
                "a path must run from (1,0) to (0,1)".into(),
            ));
        }
        FareyPath::from_interior(pts[1..pts.len() - 1].iter().cloned())
    }

    /// Degree `m`: the number of edges, one more than the number of points.
    pub fn degree(&self) -> usize {
        self.pts.len() - 1
    }

    pub fn len(&self) -> usize {
        self.pts.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.pts.len() == 2
    }

    /// All of `c₀, …, c_m`.
    pub fn points(&self) -> &[Vertex] {
        &self.pts
    }

    /// `c₁, …, c_{m−1}`.
    pub fn interior(&self) -> &[Vertex] {
        &self.pts[1..self.pts.len() - 1]
    }

    pub fn into_points(self) -> Vec<Vertex> {
        self.pts
    }

    /// Edge `i` is `[c_{i−1}, cᵢ]`, for `1 ≤ i ≤ m`.
    pub fn edge(&self, i: usize) -> (&Vertex, &Vertex) {
        (&self.pts[i - 1], &self.pts[i])
    }

    /// Position of `w` in the path, by binary search on the real order.
    pub fn position(&self, w: &Vertex) -> Option<usize> {
        self.pts.binary_search_by(|p| p.cmp_real(w)).ok()
    }

    pub fn contains(&self, w: &Vertex) -> bool {
        w.is_interior() && self.position(w).is_some()
    }

    /// `x + y` at every position.
    pub fn l1s(&self) -> Vec<BigUint> {
        self.pts.iter().map(Vertex::l1).collect()
    }

    /// Interior positions of the leaves `c^max`: points heavier than both
    /// neighbours.
    pub fn maxima_indices(&self) -> Vec<usize> {
        let l = self.l1s();
        (1..self.degree())
            .filter(|&i| l[i] > l[i - 1] && l[i] > l[i + 1])
            .collect()
    }

    /// Interior positions of the local minima `Φc`: points lighter than both
    /// neighbours.
    pub fn phi_indices(&self) -> Vec<usize> {
        let l = self.l1s();
        (1..self.degree())
            .filter(|&i| l[i] < l[i - 1] && l[i] < l[i + 1])
            .collect()
    }

    /// Positions of the bounds `(v₋, v₊)` of every point, `None` at the two
    /// endpoints. In a `⊲`-closed set the bounds of `v` are the nearest
    /// lighter points on either side: everything strictly between two Farey
    /// neighbours is heavier than both.
    pub fn bound_indices(&self) -> Vec<Option<(usize, usize)>> {
        let l = self.l1s();
        let m = self.degree();
        let nearest = |order: &mut dyn Iterator<Item = usize>| {
            let mut out = vec![0; m + 1];
            let mut stack: Vec<usize> = Vec::new();
            for i in order {
                while stack.last().is_some_and(|&j| l[j] >= l[i]) {
                    stack.pop();
                }
                out[i] = stack.last().copied().unwrap_or(i);
                stack.push(i);
            }
            out
        };
        let left = nearest(&mut (0..=m));
        let right = nearest(&mut (0..=m).rev());
        (0..=m)
            .map(|i| (i != 0 && i != m).then(|| (left[i], right[i])))
            .collect()
    }

    pub fn maxima(&self) -> Vec<Vertex> {
        self.pick(&self.maxima_indices())
    }

    pub fn phi(&self) -> Vec<Vertex> {
        self.pick(&self.phi_indices())
    }

    /// `c^min = Φc ∪ {0, ∞}`, in path order.
    pub fn minima(&self) -> Vec<Vertex> {
        let mut out = vec![Vertex::zero()];
        out.extend(self.phi());
        out.push(Vertex::infinity());
        out
    }

    fn pick(&self, idx: &[usize]) -> Vec<Vertex> {
        idx.iter().map(|&i| self.pts[i].clone()).collect()
    }

    /// `Φc` as a path; again a `⊲`-set.
    pub fn phi_path(&self) -> FareyPath {
        FareyPath::from_points_unchecked(self.minima())
    }

    pub fn friez(&self) -> FriezData {
        let l = self.l1s();
        let m = self.degree();
        let mut minus = vec![BigUint::zero(); m + 1];
        let mut plus = vec![BigUint::zero(); m + 1];
        // A neighbour is v_± + n·v with 1 ≤ |v_±| < |v|, so n = (|nb| − 1) div |v|.
        for i in 1..m {
            minus[i] = (&l[i - 1] - 1u32) / &l[i];
            plus[i] = (&l[i + 1] - 1u32) / &l[i];
        }
        if m > 1 {
            plus[0] = self.pts[1].x().clone();
            minus[m] = self.pts[m - 1].y().clone();
        }
        let mut f: Vec<BigUint> = (0..=m).map(|i| &minus[i] + &plus[i] + 1u32).collect();
        f[0] = plus[0].clone();
        f[m] = minus[m].clone();
        FriezData { minus, plus, f }
    }

    /// ★-set test: every interior point is a leaf, a local minimum, or the
    /// midpoint of its neighbours.
    pub fn is_star(&self) -> bool {
        let l = self.l1s();
        (1..self.degree()).all(|i| {
            let leaf = l[i] > l[i - 1] && l[i] > l[i + 1];
            let min = l[i] < l[i - 1] && l[i] < l[i + 1];
            leaf || min || self.is_straight_at(i)
        })
    }

    /// `2·cᵢ = c_{i−1} + c_{i+1}`.
    pub(crate) fn is_straight_at(&self, i: usize) -> bool {
        let (a, b, c) = (&self.pts[i - 1], &self.pts[i], &self.pts[i + 1]);
        b.x() * 2u32 == a.x() + c.x() && b.y() * 2u32 == a.y() + c.y()
    }

    /// `c ∪ {c_{i−1} + cᵢ}` for edge `1 ≤ i ≤ m`.
    pub fn insert_mediant(&self, i: usize) -> FareyPath {
        let mut pts = Vec::with_capacity(self.pts.len() + 1);
        pts.extend_from_slice(&self.pts[..i]);
        pts.push(self.pts[i - 1].mediant(&self.pts[i]));
        pts.extend_from_slice(&self.pts[i..]);
        FareyPath { pts }
    }

    /// `c ∖ {cⱼ}`; `cⱼ` must be a leaf.
    pub fn remove_leaf(&self, j: usize) -> Result<FareyPath> {
        if j == 0 || j >= self.degree() || !self.is_leaf_at(j) {
            return Err(Error::Precondition(format!("position {j} is not a leaf")));
        }
        let mut pts = self.pts.clone();
        pts.remove(j);
        Ok(FareyPath { pts })
    }

    pub(crate) fn is_leaf_at(&self, j: usize) -> bool {
        let (a, b, c) = (&self.pts[j - 1], &self.pts[j], &self.pts[j + 1]);
        a.mediant(c) == *b
    }

    /// Canonical text key: interior points in real order, `x,y` joined by `;`.
    pub fn key(&self) -> String {
        let mut s = String::new();
        for (k, w) in self.interior().iter().enumerate() {
            if k > 0 {
                s.push(';');
            }
            s.push_str(&format!("{},{}", w.x(), w.y()));
        }
        s
    }
}

impl fmt::Display for FareyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, w) in self.interior().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FareyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PathWire {
    interior: Vec<Vertex>,
}

impl Serialize for FareyPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathWire {
            interior: self.interior().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FareyPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = PathWire::deserialize(d)?;
        FareyPath::from_interior(wire.interior).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::sb::{bounds, v};

    pub(crate) fn p(pts: &[(u64, u64)]) -> FareyPath {
        FareyPath::from_interior(pts.iter().map(|&(x, y)| v(x, y))).unwrap()
    }

    pub(crate) fn c3() -> FareyPath {
        p(&[(2, 1), (1, 1), (1, 2)])
    }

    #[test]
    fn bound_indices_match_words() {
        for level in enumerate_paths(9) {
            for c in level {
                let pts = c.points();
                for (i, b) in c.bound_indices().into_iter().enumerate() {
                    match b {
                        None => assert!(pts[i].is_endpoint()),
                        Some((lo, hi)) => assert_eq!(bounds(&pts[i]).unwrap(), (pts[lo].clone(), pts[hi].clone()), "{c} at {i}"),
                    }
                }
            }
        }
    }

    #[test]
    fn construction() {
        let e = FareyPath::from_interior([]).unwrap();
        assert_eq!((e.degree(), e.is_empty()), (1, true));
        let r = p(&[(1, 1)]);
        assert_eq!(r.points(), &[Vertex::zero(), v(1, 1), Vertex::infinity()]);
        let err = FareyPath::from_interior([v(1, 2), v(2, 1)]).unwrap_err();
        assert!(matches!(err, Error::NotMotherClosed(_)), "{err}");
        assert!(matches!(
            FareyPath::from_interior([v(1, 1), v(1, 1)]),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(FareyPath::from_interior([Vertex::zero()]).is_err());
    }

    #[test]
    fn maxima_and_minima_examples() {
        let c = c3();
        assert_eq!(c.maxima(), vec![v(2, 1), v(1, 2)]);
        assert_eq!(c.phi(), vec![v(1, 1)]);
        let r = p(&[(1, 1)]);
        assert_eq!((r.maxima(), r.phi()), (vec![v(1, 1)], vec![]));
        let e = FareyPath::empty();
        assert!(e.maxima().is_empty() && e.phi().is_empty());
    }

    #[test]
    fn friez_examples() {
        let f = c3().friez();
        let n = |k: u32| BigUint::from(k);
        assert_eq!((f.minus[2].clone(), f.plus[2].clone(), f.f[2].clone()), (n(1), n(1), n(3)));
        assert_eq!((f.minus[1].clone(), f.plus[1].clone(), f.f[1].clone()), (n(0), n(0), n(1)));
        assert_eq!(p(&[(1, 1)]).friez().f[1], n(1));
    }

    #[test]
    fn star_examples() {
        assert!(p(&[(1, 1), (1, 2)]).is_star());
        assert!(c3().is_star());
        assert!(FareyPath::empty().is_star());
        // (1,2) sits between (1,1) and (2,3): neither leaf, minimum nor midpoint.
        assert!(!p(&[(1, 1), (1, 2), (1, 3), (2, 3)]).is_star());
    }

    #[test]
    fn json_round_trip() {
        let c = c3();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"interior":[["2","1"],["1","1"],["1","2"]]}"#);
        assert_eq!(serde_json::from_str::<FareyPath>(&s).unwrap(), c);
        assert!(serde_json::from_str::<FareyPath>(r#"{"interior":[["1","2"]]}"#).is_err());
        assert_eq!(c.key(), "2,1;1,1;1,2");
    }

    fn direct_sets(c: &FareyPath) -> (Vec<Vertex>, Vec<Vertex>) {
        let set: HashSet<&Vertex> = c.interior().iter().collect();
        let mut max = vec![];
        let mut phi = vec![];
        for w in c.interior() {
            let (lo, hi) = bounds(w).unwrap();
            let up = set.contains(&w.mediant(&hi));
            let down = set.contains(&w.mediant(&lo));
            if !up && !down {
                max.push(w.clone());
            }
            if up && down {
                phi.push(w.clone());
            }
        }
        (max, phi)
    }

    fn bound_incidence_count(c: &FareyPath) -> Vec<BigUint> {
        c.points()
            .iter()
            .map(|cj| {
                let k = c
                    .interior()
                    .iter()
                    .filter(|w| {
                        let (lo, hi) = bounds(w).unwrap();
                        *w == cj || lo == *cj || hi == *cj
                    })
                    .count();
                BigUint::from(k)
            })
            .collect()
    }

    #[test]
    fn structure_matches_direct_definitions() {
        for level in enumerate_paths(7) {
            for c in level {
                let (max, phi) = direct_sets(&c);
                assert_eq!(c.maxima(), max, "{c}");
                assert_eq!(c.phi(), phi, "{c}");
                let f = c.friez();
                assert_eq!(f.f, bound_incidence_count(&c), "{c}");
                let ones: Vec<Vertex> = (1..c.degree())
                    .filter(|&i| f.f[i] == BigUint::from(1u32))
                    .map(|i| c.points()[i].clone())
                    .collect();
                assert_eq!(ones, max);
                for i in 1..c.degree() {
                    assert_eq!(
                        c.phi_indices().contains(&i),
                        !f.minus[i].is_zero() && !f.plus[i].is_zero()
                    );
                }
                // Maxima and minima alternate, starting and ending with a leaf.
                let mut kinds = vec![];
                for i in 1..c.degree() {
                    if c.maxima_indices().contains(&i) {
                        kinds.push('M');
                    } else if c.phi_indices().contains(&i) {
                        kinds.push('m');
                    }
                }
                let s: String = kinds.into_iter().collect();
                if !c.is_empty() {
                    assert!(s.starts_with('M') && s.ends_with('M'), "{c}");
                    assert!(!s.contains("MM") && !s.contains("mm"), "{c}");
                }
            }
        }
    }

    #[test]
    fn fin_points_appear_in_order() {
        for level in enumerate_paths(7) {
            for c in level {
                let f = c.friez();
                for i in 1..c.degree() {
                    let w = &c.points()[i];
                    let (lo, hi) = bounds(w).unwrap();
                    let mut last = 0;
                    let n: u32 = (&f.minus[i]).try_into().unwrap();
                    for k in 0..=n {
                        let q = lo.plus_multiple(&BigUint::from(k), w);
                        let at = c.position(&q).unwrap();
                        assert!(k == 0 || at > last);
                        last = at;
                    }
                    assert!(n == 0 || last == i - 1);
                    let n: u32 = (&f.plus[i]).try_into().unwrap();
                    let mut last = usize::MAX;
                    for k in 0..=n {
                        let q = hi.plus_multiple(&BigUint::from(k), w);
                        let at = c.position(&q).unwrap();
                        assert!(k == 0 || at < last);
                        last = at;
                    }
                    assert!(n == 0 || last == i + 1);
                }
            }
        }
    }

    #[test]
    fn closure_check_agrees_with_mother_walk() {
        use crate::sb::ancestors;
        let mut pool = vec![];
        for s in 2..=7u64 {
            for x in 1..s {
                if let Ok(w) = Vertex::new(x, s - x) {
                    pool.push(w);
                }
            }
        }
        // Every subset of the 10 lightest interior vertices.
        let pool = &pool[..10];
        for mask in 0u32..(1 << pool.len()) {
            let set: Vec<Vertex> = (0..pool.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| pool[k].clone())
                .collect();
            let closed = set
                .iter()
                .all(|w| ancestors(w).unwrap().iter().all(|a| set.contains(a)));
            assert_eq!(FareyPath::from_interior(set.clone()).is_ok(), closed, "{set:?}");
        }
    }
}
