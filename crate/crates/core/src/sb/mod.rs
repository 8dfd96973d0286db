//! Vertices, `SL₂(ℕ)` words and navigation in the Stern-Brocot tree.

mod order;
mod tree;
mod vertex;
mod word;

pub use order::{compare, Ordering4, Relation};
pub use tree::{
    ancestors, bounds, cf_parent_report, father, father_grandmother_index, fin,
    involution_star, involution_transpose, is_ancestor_or_self, meet, mother, mother_of,
    parents, reconstruct_from_father, sign, CfParentReport, GrandmotherIndex, Parent, Parents,
};
pub use vertex::{det, is_farey_edge, v, Vertex};
pub use word::{cf_to_vertex, cf_value, continued_fraction, Sign, Sl2Word};
