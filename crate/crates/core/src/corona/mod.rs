//! Coronas: `⊲`-sets whose whole Φ-tower consists of ★-sets.

mod dna;
mod enumerate;
mod structure;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::path::{nu_path, FareyPath};
use crate::sb::Vertex;

pub use dna::Dna;
pub use enumerate::{enumerate_coronas, CoronaLevels};
pub use structure::{
    closed_point_neighbor_report, closed_points, corona_annihilate, corona_create, corona_number,
    eigenvalue, h0, h1, open_edges, NeighborReport,
};

/// A corona together with its Φ-tower `c, Φc, Φ²c, …, φ`.
#[derive(Clone, PartialEq, Eq)]
pub struct Corona {
    tower: Vec<FareyPath>,
}

/// The Φ-tower of `c` down to `φ`, or `None` as soon as a member fails to be
/// a ★-set.
pub fn star_tower(c: &FareyPath) -> Option<Vec<FareyPath>> {
    let mut tower = vec![c.clone()];
    loop {
        let top = tower.last().expect("nonempty");
        if top.is_empty() {
            return Some(tower);
        }
        if !top.is_star() {
            return None;
        }
        let next = top.phi_path();
        tower.push(next);
    }
}

pub fn is_corona(c: &FareyPath) -> bool {
    star_tower(c).is_some()
}

impl Corona {
    pub fn new(c: FareyPath) -> Result<Self> {
        star_tower(&c).map(|tower| Corona { tower }).ok_or(Error::NotCorona)
    }

    pub fn empty() -> Self {
        Corona {
            tower: vec![FareyPath::empty()],
        }
    }

    pub fn path(&self) -> &FareyPath {
        &self.tower[0]
    }

    pub fn into_path(mut self) -> FareyPath {
        self.tower.swap_remove(0)
    }

    /// `Φ⁰c = c, Φ¹c, …, Φ^{ht}c = φ`.
    pub fn tower(&self) -> &[FareyPath] {
        &self.tower
    }

    /// `ht(c) = min{n : Φⁿc = φ}`.
    pub fn height(&self) -> usize {
        self.tower.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.path().degree()
    }

    pub fn interior(&self) -> &[Vertex] {
        self.path().interior()
    }

    /// `Φc` as a corona.
    pub fn phi(&self) -> Corona {
        if self.tower.len() == 1 {
            return self.clone();
        }
        Corona {
            tower: self.tower[1..].to_vec(),
        }
    }
}

/// `ν_n` as a corona.
pub fn nu(n: i64) -> Corona {
    Corona::new(nu_path(n)).expect("ν_n is a corona")
}

/// `c(n)`: `n` rounds of inserting every mediant into `φ`; `2ⁿ − 1` points,
/// all of whose d.n.a. entries vanish.
pub fn zero_dna_corona(n: u32) -> Result<Corona> {
    if n > 24 {
        return Err(Error::ResourceBound(format!(
            "c({n}) would have 2^{n} - 1 points"
        )));
    }
    let mut pts = FareyPath::empty().into_points();
    let mut tower = vec![FareyPath::from_points_unchecked(pts.clone())];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * pts.len() - 1);
        for e in pts.windows(2) {
            next.push(e[0].clone());
            next.push(e[0].mediant(&e[1]));
        }
        next.push(pts[pts.len() - 1].clone());
        pts = next;
        tower.push(FareyPath::from_points_unchecked(pts.clone()));
    }
    tower.reverse();
    Ok(Corona { tower })
}

impl fmt::Display for Corona {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.path(), f)
    }
}

impl fmt::Debug for Corona {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.path(), f)
    }
}

impl Serialize for Corona {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.path().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Corona {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let path = FareyPath::deserialize(d)?;
        Corona::new(path).map_err(serde::de::Error::custom)
    }
}
