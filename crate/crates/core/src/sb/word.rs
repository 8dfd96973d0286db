use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::vertex::{is_farey_edge, Vertex};
use crate::error::{Error, Result};
use crate::Rational;

/// The sign `δ = (−1)^ℓ` of a word, also used to label fin sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// An element of `SL₂(ℕ)`, the free monoid on `g₊ = [[1,1],[0,1]]` and
/// `g₋ = [[1,0],[1,1]]`.
///
/// Stored both as its reduced word `g₍δ₎^{a_ℓ} ⋯ g₋^{a₁} g₊^{a₀}` (exponents
/// listed from `a₀`, with `a₀ ≥ 0` and every later `aᵢ ≥ 1`) and as its
/// matrix, whose rows are the Farey edge `(v₋, v₊)`.
///
/// Reading the exponents from `a₀` onwards gives the path from the root of
/// the Stern-Brocot tree: `a₀` steps towards `∞`, then `a₁` steps towards
/// `0`, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sl2Word {
    exponents: Vec<BigUint>,
    lower: Vertex,
    upper: Vertex,
}

impl Sl2Word {
    pub fn identity() -> Self {
        Sl2Word {
            exponents: vec![BigUint::zero()],
            lower: Vertex::zero(),
            upper: Vertex::infinity(),
        }
    }

    pub fn g_plus() -> Self {
        Sl2Word::from_exponents(vec![BigUint::one()]).expect("valid word")
    }

    pub fn g_minus() -> Self {
        Sl2Word::from_exponents(vec![BigUint::zero(), BigUint::one()]).expect("valid word")
    }

    /// Builds the word from `[a₀, a₁, …, a_ℓ]`.
    pub fn from_exponents(exponents: Vec<BigUint>) -> Result<Self> {
        validate_exponents(&exponents)?;
        // Row action: (p, q)·g₊ᵏ = (p, q + kp) and (p, q)·g₋ᵏ = (p + kq, q);
        // the leftmost block acts first.
        let mut lower = (BigUint::one(), BigUint::zero());
        let mut upper = (BigUint::zero(), BigUint::one());
        for (i, a) in exponents.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            for row in [&mut lower, &mut upper] {
                if i % 2 == 0 {
                    row.1 += a * &row.0;
                } else {
                    row.0 += a * &row.1;
                }
            }
        }
        Ok(Sl2Word {
            exponents,
            lower: Vertex::from_parts(lower.0, lower.1),
            upper: Vertex::from_parts(upper.0, upper.1),
        })
    }

    /// The word `g_v` with `(1,1)·g_v = v`, found by peeling whole blocks of
    /// generators off the right (Euclid's algorithm on `(x, y)`).
    pub fn of_vertex(v: &Vertex) -> Result<Self> {
        v.require_interior()?;
        let (mut x, mut y) = (v.x().clone(), v.y().clone());
        let mut exponents = Vec::new();
        // Even positions strip g₊ (reduce y by multiples of x), odd ones g₋.
        loop {
            let even = exponents.len() % 2 == 0;
            let (big, small) = if even { (&mut y, &x) } else { (&mut x, &y) };
            if *big < *small {
                debug_assert!(even && exponents.is_empty());
                exponents.push(BigUint::zero());
                continue;
            }
            let (q, r) = big.div_rem(small);
            if r.is_zero() {
                // small == 1 by coprimality; one step is left for the root.
                exponents.push(q - 1u32);
                break;
            }
            exponents.push(q);
            *big = r;
        }
        let word = Sl2Word::from_exponents(exponents)?;
        debug_assert_eq!(&word.vertex(), v);
        Ok(word)
    }

    /// The word with matrix rows `(lower, upper)`; they must form a Farey edge.
    pub fn from_rows(lower: Vertex, upper: Vertex) -> Result<Self> {
        if !is_farey_edge(&lower, &upper) {
            return Err(Error::NotAFareyEdge(lower.to_string(), upper.to_string()));
        }
        Ok(Self::from_rows_unchecked(lower, upper))
    }

    fn from_rows_unchecked(lower: Vertex, upper: Vertex) -> Self {
        let w = lower.mediant(&upper);
        let word = Sl2Word::of_vertex(&w).expect("mediant of an edge is interior");
        debug_assert!(word.lower == lower && word.upper == upper);
        word
    }

    pub fn exponents(&self) -> &[BigUint] {
        &self.exponents
    }

    /// First matrix row `v₋ = 0·g`.
    pub fn lower(&self) -> &Vertex {
        &self.lower
    }

    /// Second matrix row `v₊ = ∞·g`.
    pub fn upper(&self) -> &Vertex {
        &self.upper
    }

    /// Matrix `[[a, b], [c, d]]`.
    pub fn matrix(&self) -> [[BigUint; 2]; 2] {
        [
            [self.lower.x().clone(), self.lower.y().clone()],
            [self.upper.x().clone(), self.upper.y().clone()],
        ]
    }

    /// `ℓ`, one less than the number of exponent blocks.
    pub fn ell(&self) -> usize {
        self.exponents.len() - 1
    }

    /// `δ(g) = (−1)^ℓ`.
    pub fn sign(&self) -> Sign {
        if self.ell().is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.len() == 1 && self.exponents[0].is_zero()
    }

    /// Number of generator letters, i.e. the depth of `(1,1)·g` in the tree.
    pub fn letter_count(&self) -> BigUint {
        self.exponents.iter().sum()
    }

    /// `(1,1)·g = v₋ + v₊`.
    pub fn vertex(&self) -> Vertex {
        self.lower.mediant(&self.upper)
    }

    /// Right action `(x, y)·g = x·v₋ + y·v₊`; sends `0` to `v₋` and `∞` to `v₊`.
    pub fn act(&self, u: &Vertex) -> Vertex {
        let x = u.x() * self.lower.x() + u.y() * self.upper.x();
        let y = u.x() * self.lower.y() + u.y() * self.upper.y();
        Vertex::from_parts(x, y)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Sl2Word) -> Sl2Word {
        let lower = other.act(&self.lower);
        let upper = other.act(&self.upper);
        Sl2Word::from_rows_unchecked(lower, upper)
    }

    /// `g* = J g J` with `J` the coordinate swap; exchanges `g₊` and `g₋`.
    pub fn star(&self) -> Sl2Word {
        Sl2Word::from_rows_unchecked(self.upper.swapped(), self.lower.swapped())
    }

    /// Matrix transpose; an anti-automorphism exchanging `g₊` and `g₋`.
    pub fn transpose(&self) -> Sl2Word {
        let lower = Vertex::from_parts(self.lower.x().clone(), self.upper.x().clone());
        let upper = Vertex::from_parts(self.lower.y().clone(), self.upper.y().clone());
        Sl2Word::from_rows_unchecked(lower, upper)
    }

    /// Expands the word into single letters, leftmost factor first.
    pub fn letters(&self) -> Vec<Sign> {
        let mut out = Vec::new();
        for (i, a) in self.exponents.iter().enumerate().rev() {
            let s = if i % 2 == 0 { Sign::Plus } else { Sign::Minus };
            let n: usize = a.try_into().expect("word too long to expand");
            out.extend(std::iter::repeat_n(s, n));
        }
        out
    }

    /// Product of single letters, leftmost first.
    pub fn from_letters(letters: &[Sign]) -> Sl2Word {
        let mut w = Sl2Word::identity();
        for s in letters.iter().rev() {
            let g = match s {
                Sign::Plus => Sl2Word::g_plus(),
                Sign::Minus => Sl2Word::g_minus(),
            };
            w = g.compose(&w);
        }
        w
    }
}

fn validate_exponents(exponents: &[BigUint]) -> Result<()> {
    if exponents.is_empty() {
        return Err(Error::MalformedExponents("empty sequence".into()));
    }
    if let Some(i) = exponents.iter().skip(1).position(Zero::is_zero) {
        return Err(Error::MalformedExponents(format!(
            "a{} = 0; only a0 may vanish",
            i + 1
        )));
    }
    Ok(())
}

impl fmt::Display for Sl2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, a) in self.exponents.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str("·")?;
            }
            first = false;
            let g = if i % 2 == 0 { "g+" } else { "g-" };
            if a.is_one() {
                f.write_str(g)?;
            } else {
                write!(f, "{g}^{a}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Sl2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{} ; {}]", self.lower, self.upper)
    }
}

/// Exponents of `g_v`, which are the continued fraction `y/x = ⟦a₀, …, a_ℓ⟧`
/// in the convention whose innermost term is `a_ℓ + 1`.
pub fn continued_fraction(v: &Vertex) -> Result<Vec<BigUint>> {
    Ok(Sl2Word::of_vertex(v)?.exponents)
}

/// Inverse of [`continued_fraction`].
pub fn cf_to_vertex(seq: &[BigUint]) -> Result<Vertex> {
    Ok(Sl2Word::from_exponents(seq.to_vec())?.vertex())
}

/// Evaluates `⟦a₀, …, a_ℓ⟧ = a₀ + 1/(a₁ + 1/(⋯ + 1/(a_ℓ + 1)))` as a rational.
pub fn cf_value(seq: &[BigUint]) -> Result<Rational> {
    validate_exponents(seq)?;
    let last = seq.len() - 1;
    let mut acc = Rational::from_integer((&seq[last] + 1u32).into());
    for a in seq[..last].iter().rev() {
        acc = Rational::from_integer(a.clone().into()) + acc.recip();
    }
    Ok(acc)
}
