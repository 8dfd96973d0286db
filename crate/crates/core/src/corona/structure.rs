use super::{is_corona, Corona};
use crate::path::{FareyPath, FormalSum};
use crate::sb::{is_ancestor_or_self, Vertex};

/// `cl(c)`: positions of leaves whose removal leaves a corona.
pub fn closed_points(c: &Corona) -> Vec<usize> {
    let p = c.path();
    p.maxima_indices()
        .into_iter()
        .filter(|&j| is_corona(&p.remove_leaf(j).expect("leaf")))
        .collect()
}

/// `Op(c)`: edges `i` (joining `c_{i−1}` and `cᵢ`) whose mediant can be
/// added while staying a corona.
pub fn open_edges(c: &Corona) -> Vec<usize> {
    let p = c.path();
    (1..=p.degree())
        .filter(|&i| is_corona(&p.insert_mediant(i)))
        .collect()
}

/// `h⁰(c) = 1 + #Φc − #cl(c)`.
pub fn h0(c: &Corona) -> i64 {
    1 + c.path().phi_indices().len() as i64 - closed_points(c).len() as i64
}

/// `h¹(c) = 2 + 2·#Φc − #Op(c)`.
pub fn h1(c: &Corona) -> i64 {
    2 + 2 * c.path().phi_indices().len() as i64 - open_edges(c).len() as i64
}

/// `e_c = #Op(c) − #cl(c)`, the eigenvalue of the corona number operator.
pub fn eigenvalue(c: &Corona) -> i64 {
    open_edges(c).len() as i64 - closed_points(c).len() as i64
}

fn as_corona(p: &FareyPath) -> Corona {
    Corona::new(p.clone()).expect("formal sums of coronas hold coronas")
}

/// `d*[c] = Σ_{Op(c)} [c ∪ {c_{i−1} + cᵢ}]`; terms must be coronas.
pub fn corona_create(s: &FormalSum) -> FormalSum {
    s.map_linear(|p| {
        let mut out = FormalSum::new();
        for i in open_edges(&as_corona(p)) {
            out.add(p.insert_mediant(i), 1);
        }
        out
    })
}

/// `d[c] = Σ_{cl(c)} [c ∖ {cⱼ}]`; terms must be coronas.
pub fn corona_annihilate(s: &FormalSum) -> FormalSum {
    s.map_linear(|p| {
        let mut out = FormalSum::new();
        for j in closed_points(&as_corona(p)) {
            out.add(p.remove_leaf(j).expect("leaf"), 1);
        }
        out
    })
}

/// `N = d∘d* − d*∘d` on coronas.
pub fn corona_number(s: &FormalSum) -> FormalSum {
    let mut out = corona_annihilate(&corona_create(s));
    out.add_sum(&corona_create(&corona_annihilate(s)), -1);
    out
}

/// Leaf-by-leaf comparison of the removal test with the neighbour rule: a
/// leaf `cⱼ` is predicted closed unless both neighbours are minima and
/// either `c_{j+1} ⊲ c_{j−1} ⊲ c_{j−2}` with `c_{j−1}` off the midpoint of
/// `c_{j+1}, c_{j−2}`, or the mirror condition on the other side holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborReport {
    pub leaf: Vertex,
    pub position: usize,
    pub predicted_closed: bool,
    pub closed: bool,
}

impl NeighborReport {
    pub fn agrees(&self) -> bool {
        self.predicted_closed == self.closed
    }
}

pub fn closed_point_neighbor_report(c: &Corona) -> Vec<NeighborReport> {
    let p = c.path();
    let pts = p.points();
    let m = p.degree();
    let cl = closed_points(c);
    let phi = p.phi_indices();
    let is_min = |i: usize| i == 0 || i == m || phi.contains(&i);
    // a ⊲ b: endpoints sit below every interior vertex, nothing sits below an endpoint.
    let below = |a: usize, b: usize| -> bool {
        let (va, vb) = (&pts[a], &pts[b]);
        if vb.is_endpoint() || va == vb {
            return false;
        }
        va.is_endpoint() || is_ancestor_or_self(va, vb).unwrap_or(false)
    };
    let midpoint = |a: usize, b: usize, c: usize| -> bool {
        let (x, y, z) = (&pts[a], &pts[b], &pts[c]);
        y.x() * 2u32 == x.x() + z.x() && y.y() * 2u32 == x.y() + z.y()
    };
    p.maxima_indices()
        .into_iter()
        .map(|j| {
            let open = is_min(j - 1) && is_min(j + 1) && {
                let left = j >= 2 && below(j + 1, j - 1) && below(j - 1, j - 2) && !midpoint(j + 1, j - 1, j - 2);
                let right = j + 2 <= m && below(j - 1, j + 1) && below(j + 1, j + 2) && !midpoint(j - 1, j + 1, j + 2);
                left || right
            };
            NeighborReport {
                leaf: pts[j].clone(),
                position: j,
                predicted_closed: !open,
                closed: cl.contains(&j),
            }
        })
        .collect()
}
