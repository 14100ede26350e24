use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::f2core::BitVector;
use crate::rational::{fmt_rat, frac, norm, Rat};

/// Point of 𝕋^d with exact coordinates in [0, 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<Rat>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("torus points need at least one coordinate"));
        }
        Ok(TorusPoint { coords: coords.iter().map(frac).collect() })
    }

    pub fn zero(dim: usize) -> Self {
        TorusPoint { coords: vec![Rat::zero(); dim] }
    }

    /// The point of G_d = {0, 1/2}^d matching a bit vector.
    pub fn from_bits(x: &BitVector) -> Self {
        let h = Rat::new(1.into(), 2.into());
        TorusPoint {
            coords: (0..x.dim()).map(|i| if x.bit(i) { h.clone() } else { Rat::zero() }).collect(),
        }
    }

    pub fn all_halves(dim: usize) -> Self {
        TorusPoint { coords: vec![Rat::new(1.into(), 2.into()); dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn add(&self, o: &TorusPoint) -> TorusPoint {
        TorusPoint { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| frac(&(a + b))).collect() }
    }

    pub fn sub(&self, o: &TorusPoint) -> TorusPoint {
        TorusPoint { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| frac(&(a - b))).collect() }
    }

    pub fn scale(&self, n: &num_bigint::BigInt) -> TorusPoint {
        let n = Rat::from_integer(n.clone());
        TorusPoint { coords: self.coords.iter().map(|a| frac(&(a * &n))).collect() }
    }

    /// max_i ‖x_i‖.
    pub fn sup_norm(&self) -> Rat {
        self.coords.iter().map(norm).max().unwrap_or_else(Rat::zero)
    }

    pub fn sup_dist(&self, o: &TorusPoint) -> Rat {
        self.sub(o).sup_norm()
    }

    /// Common denominator of the coordinates.
    pub fn denominator(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}
