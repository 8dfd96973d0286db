use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A vertex of the Farey graph: a coprime pair `(x, y)` standing for `y / x`.
///
/// The two endpoints `0 = (1,0)` and `∞ = (0,1)` are vertices too; every
/// other vertex has `x, y ≥ 1` and is called interior.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    x: BigUint,
    y: BigUint,
}

impl Vertex {
    pub fn new(x: impl Into<BigUint>, y: impl Into<BigUint>) -> Result<Self> {
        let (x, y) = (x.into(), y.into());
        if !x.gcd(&y).is_one() {
            return Err(Error::NotCoprime {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(Vertex { x, y })
    }

    /// Builds a vertex the caller knows to be reduced (a mediant of a Farey
    /// edge, a fin point, the image of a vertex under `SL₂(ℕ)`).
    pub(crate) fn from_parts(x: BigUint, y: BigUint) -> Self {
        Vertex { x, y }
    }

    /// The endpoint `0 = (1,0)`.
    pub fn zero() -> Self {
        Vertex {
            x: BigUint::one(),
            y: BigUint::zero(),
        }
    }

    /// The endpoint `∞ = (0,1)`.
    pub fn infinity() -> Self {
        Vertex {
            x: BigUint::zero(),
            y: BigUint::one(),
        }
    }

    /// The root `(1,1)` of the Stern-Brocot tree.
    pub fn root() -> Self {
        Vertex {
            x: BigUint::one(),
            y: BigUint::one(),
        }
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn into_parts(self) -> (BigUint, BigUint) {
        (self.x, self.y)
    }

    pub fn is_zero_end(&self) -> bool {
        self.y.is_zero()
    }

    pub fn is_infinity_end(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_endpoint(&self) -> bool {
        self.x.is_zero() || self.y.is_zero()
    }

    pub fn is_interior(&self) -> bool {
        !self.is_endpoint()
    }

    pub fn is_root(&self) -> bool {
        self.x.is_one() && self.y.is_one()
    }

    pub(crate) fn require_interior(&self) -> Result<()> {
        if self.is_endpoint() {
            Err(Error::EndpointInput(self.to_string()))
        } else {
            Ok(())
        }
    }

    /// Componentwise sum. For a Farey edge (`det = ±1`) the sum is again a
    /// reduced vertex, the mediant splitting that edge; for other pairs the
    /// sum is returned as is and need not be reduced.
    pub fn mediant(&self, other: &Vertex) -> Vertex {
        Vertex {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }

    /// `self + k·other`.
    pub fn plus_multiple(&self, k: &BigUint, other: &Vertex) -> Vertex {
        Vertex {
            x: &self.x + k * &other.x,
            y: &self.y + k * &other.y,
        }
    }

    /// `self - other`, if both coordinates stay non-negative.
    pub fn checked_sub(&self, other: &Vertex) -> Option<Vertex> {
        if self.x < other.x || self.y < other.y {
            return None;
        }
        Some(Vertex {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        })
    }

    /// `|v|₁ = x + y`; strictly increases from a vertex to its descendants.
    pub fn l1(&self) -> BigUint {
        &self.x + &self.y
    }

    /// Total order of the rationals `y / x` on `[0, ∞]`.
    pub fn cmp_real(&self, other: &Vertex) -> Ordering {
        (&self.y * &other.x).cmp(&(&other.y * &self.x))
    }

    /// Componentwise comparison `self ≺ other`.
    pub fn le_pointwise(&self, other: &Vertex) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// The coordinate swap `(y, x)`, i.e. the rational `x / y`.
    pub fn swapped(&self) -> Vertex {
        Vertex {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    /// Decimal-string pair, the wire format for vertices.
    pub fn to_strings(&self) -> [String; 2] {
        [self.x.to_string(), self.y.to_string()]
    }

    pub fn from_strings(x: &str, y: &str) -> Result<Self> {
        let parse = |s: &str| {
            s.trim()
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("not a natural number: {s:?}")))
        };
        Vertex::new(parse(x)?, parse(y)?)
    }
}

/// `x_a·y_b − y_a·x_b`; equals 1 exactly when `(a, b)` is a Farey edge.
pub fn det(a: &Vertex, b: &Vertex) -> BigInt {
    BigInt::from(&a.x * &b.y) - BigInt::from(&a.y * &b.x)
}

/// `det(a, b) == 1` without going through signed integers.
pub fn is_farey_edge(a: &Vertex, b: &Vertex) -> bool {
    let lhs = &a.x * &b.y;
    let rhs = &a.y * &b.x;
    lhs > rhs && (lhs - rhs).is_one()
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Vertex::from_strings(&x, &y).map_err(D::Error::custom)
    }
}

/// Shorthand for small literal vertices in tests and examples.
///
/// Panics when the pair is not reduced.
pub fn v(x: u64, y: u64) -> Vertex {
    Vertex::new(x, y).expect("reduced pair")
}
