use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FareyPath;

/// A finitely supported integer combination of `⊲`-sets, keyed by
/// [`FareyPath::key`]. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<String, (FareyPath, i64)>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    path: FareyPath,
    coefficient: i64,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    pub fn single(c: FareyPath) -> Self {
        let mut s = FormalSum::new();
        s.add(c, 1);
        s
    }

    pub fn add(&mut self, c: FareyPath, k: i64) {
        if k == 0 {
            return;
        }
        let key = c.key();
        let entry = self.terms.entry(key.clone()).or_insert((c, 0));
        entry.1 += k;
        if entry.1 == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum, k: i64) {
        for (c, a) in other.terms.values() {
            self.add(c.clone(), a * k);
        }
    }

    pub fn coefficient(&self, c: &FareyPath) -> i64 {
        self.terms.get(&c.key()).map_or(0, |t| t.1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (&FareyPath, i64)> {
        self.terms.values().map(|(c, k)| (c, *k))
    }

    /// `Σ kᵢ·[cᵢ]` with every `cᵢ` replaced by `f(cᵢ)`, extended linearly.
    pub fn map_linear(&self, mut f: impl FnMut(&FareyPath) -> FormalSum) -> FormalSum {
        let mut out = FormalSum::new();
        for (c, k) in self.iter() {
            out.add_sum(&f(c), k);
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (c, k)) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{k}·[{c}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FormalSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .iter()
            .map(|(c, k)| Term {
                path: c.clone(),
                coefficient: k,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        let mut out = FormalSum::new();
        for t in terms {
            out.add(t.path, t.coefficient);
        }
        Ok(out)
    }
}

/// Creation operator `d*[c] = Σᵢ [c ∪ {c_{i−1} + cᵢ}]`.
pub fn create(s: &FormalSum) -> FormalSum {
    s.map_linear(|c| {
        let mut out = FormalSum::new();
        for i in 1..=c.degree() {
            out.add(c.insert_mediant(i), 1);
        }
        out
    })
}

/// Annihilation operator `d[c] = Σ_{cⱼ ∈ c^max} [c ∖ {cⱼ}]`.
pub fn annihilate(s: &FormalSum) -> FormalSum {
    s.map_linear(|c| {
        let mut out = FormalSum::new();
        for j in c.maxima_indices() {
            out.add(c.remove_leaf(j).expect("leaf"), 1);
        }
        out
    })
}

/// Number operator `N = d∘d* − d*∘d`.
pub fn number(s: &FormalSum) -> FormalSum {
    let mut out = annihilate(&create(s));
    out.add_sum(&create(&annihilate(s)), -1);
    out
}
