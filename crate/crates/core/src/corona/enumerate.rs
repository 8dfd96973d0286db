use std::collections::BTreeMap;

use super::{open_edges, Corona};

/// Coronas of degree `1..=max_m` with the single-insertion relation.
///
/// `levels[k]` holds degree `k + 1` sorted by canonical key; `edges[k]` lists
/// pairs `(a, b)` with `levels[k][a] ⊂ levels[k + 1][b]`.
#[derive(Clone, Debug)]
pub struct CoronaLevels {
    pub levels: Vec<Vec<Corona>>,
    pub edges: Vec<Vec<(usize, usize)>>,
}

/// Every corona of degree `m + 1` arises from one of degree `m` by adding a
/// mediant across an open edge (there is always a closed point to remove),
/// so growing from `φ` along open edges reaches them all.
pub fn enumerate_coronas(max_m: usize) -> CoronaLevels {
    let mut levels = vec![vec![Corona::empty()]];
    let mut edges = Vec::new();
    for _ in 1..max_m {
        let cur = levels.last().expect("nonempty");
        let mut next: BTreeMap<String, Corona> = BTreeMap::new();
        let mut links = Vec::new();
        for (a, c) in cur.iter().enumerate() {
            for i in open_edges(c) {
                let d = c.path().insert_mediant(i);
                let key = d.key();
                next.entry(key.clone())
                    .or_insert_with(|| Corona::new(d).expect("open edge keeps a corona"));
                links.push((a, key));
            }
        }
        let index: BTreeMap<&str, usize> = next.keys().enumerate().map(|(b, k)| (k.as_str(), b)).collect();
        let mut level_edges: Vec<(usize, usize)> = links.iter().map(|(a, k)| (*a, index[k.as_str()])).collect();
        level_edges.sort_unstable();
        level_edges.dedup();
        edges.push(level_edges);
        levels.push(next.into_values().collect());
    }
    if max_m == 0 {
        levels.clear();
    }
    CoronaLevels { levels, edges }
}
