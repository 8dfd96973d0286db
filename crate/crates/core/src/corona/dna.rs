use serde::{Deserialize, Serialize};

use super::Corona;
use crate::error::{Error, Result};
use crate::path::{expand, extract_lambda, FareyPath};

/// The d.n.a. `λ^{ht}, …, λ¹` of a corona, top layer first: `λⁿ` lives on
/// the edges of `Φⁿc` and `Φ^{n−1}c = Φⁿc ∘ λⁿ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dna {
    pub layers: Vec<Vec<i64>>,
}

impl Dna {
    pub fn encode(c: &Corona) -> Dna {
        let tower = c.tower();
        let layers = tower[..tower.len() - 1]
            .iter()
            .rev()
            .map(|level| extract_lambda(level).expect("tower members are ★-sets").lambda)
            .collect();
        Dna { layers }
    }

    /// Rebuilds `φ ∘ λ^{ht} ∘ ⋯ ∘ λ¹`, checking `ℓ_n = 2ℓ_{n+1} + |λ^{n+1}|`.
    pub fn decode(&self) -> Result<Corona> {
        let mut tower = vec![FareyPath::empty()];
        for (k, layer) in self.layers.iter().enumerate() {
            let top = tower.last().expect("nonempty");
            if layer.len() != top.degree() {
                return Err(Error::DnaLayerLength {
                    layer: self.layers.len() - k,
                    expected: top.degree(),
                    got: layer.len(),
                });
            }
            let next = expand(top, layer)?;
            tower.push(next);
        }
        tower.reverse();
        let c = Corona::new(tower[0].clone())?;
        debug_assert_eq!(c.tower(), tower.as_slice());
        Ok(c)
    }

    pub fn height(&self) -> usize {
        self.layers.len()
    }

    /// `λⁿ`, for `1 ≤ n ≤ ht`.
    pub fn layer(&self, n: usize) -> &[i64] {
        &self.layers[self.layers.len() - n]
    }

    /// `m = 2^{ht} + Σₙ 2ⁿ·|λ^{n+1}|`.
    pub fn degree(&self) -> u128 {
        let ht = self.layers.len();
        let mut m = 1u128 << ht;
        for n in 0..ht {
            let size: u128 = self.layer(n + 1).iter().map(|x| x.unsigned_abs() as u128).sum();
            m += size << n;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corona::{enumerate_coronas, nu, zero_dna_corona};
    use crate::path::tests::p;

    #[test]
    fn encode_examples() {
        let c2 = zero_dna_corona(2).unwrap();
        assert_eq!(Dna::encode(&c2).layers, vec![vec![0], vec![0, 0]]);
        let c4 = Corona::new(p(&[(3, 1), (2, 1), (1, 1), (1, 2), (1, 3)])).unwrap();
        assert_eq!(Dna::encode(&c4).layers, vec![vec![0], vec![-1, 1]]);
        assert_eq!(Dna::encode(&nu(1)).layers, vec![vec![1]]);
        assert_eq!(Dna::encode(&Corona::empty()).layers, Vec::<Vec<i64>>::new());
    }

    #[test]
    fn decode_checks_lengths() {
        let bad = Dna {
            layers: vec![vec![0], vec![1]],
        };
        assert!(matches!(
            bad.decode(),
            Err(Error::DnaLayerLength {
                layer: 1,
                expected: 2,
                got: 1
            })
        ));
        let d = Dna {
            layers: vec![vec![0], vec![-1, 1]],
        };
        assert_eq!(d.decode().unwrap().interior().len(), 5);
        let j = serde_json::to_string(&d).unwrap();
        assert_eq!(j, r#"{"layers":[[0],[-1,1]]}"#);
        assert_eq!(serde_json::from_str::<Dna>(&j).unwrap(), d);
    }

    #[test]
    fn round_trip_and_size_law() {
        let levels = enumerate_coronas(12);
        for level in &levels.levels {
            for c in level {
                let d = Dna::encode(c);
                assert_eq!(&d.decode().unwrap(), c);
                assert_eq!(d.degree(), c.degree() as u128);
                assert_eq!(d.height(), c.height());
                // ℓ recursion
                let mut ell = 1usize;
                for layer in &d.layers {
                    assert_eq!(layer.len(), ell);
                    ell = 2 * ell + layer.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>();
                }
                assert_eq!(ell, c.degree());
            }
        }
    }
}
