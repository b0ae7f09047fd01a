//! The algebraic Mukai lattice of a K3 surface with `Pic = ZH` and `H^2 = 2n`.
//!
//! A class `(r, dH, a)` is stored as the integer triple `(r, d, a)`; the surface
//! parameter `n` lives in [`K3Context`] and every operation that needs the
//! intersection form takes the context explicitly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer type used for every lattice coordinate.
pub type Int = i128;

/// A polarized K3 surface of Picard rank one, remembered only through `n = H^2 / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct K3Context {
    n: Int,
}

impl K3Context {
    pub fn new(n: Int) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidContext { n });
        }
        Ok(K3Context { n })
    }

    #[inline]
    pub fn n(&self) -> Int {
        self.n
    }

    /// `<u, v> = 2n d d' - r a' - r' a`.
    #[inline]
    pub fn pairing(&self, u: MukaiVector, v: MukaiVector) -> Int {
        2 * self.n * u.d * v.d - u.r * v.a - v.r * u.a
    }

    #[inline]
    pub fn square(&self, v: MukaiVector) -> Int {
        self.pairing(v, v)
    }

    /// Reflection in the spherical class `u`: `v + <v, u> u`.
    pub fn reflect(&self, v: MukaiVector, u: MukaiVector) -> Result<MukaiVector> {
        let square = self.square(u);
        if square != -2 {
            return Err(Error::NotSpherical { v: u, square });
        }
        Ok(v + u * self.pairing(v, u))
    }

    /// Tensor by `O(pH)`: `(r, d + rp, a + 2ndp + rnp^2)`.
    #[inline]
    pub fn twist(&self, v: MukaiVector, p: Int) -> MukaiVector {
        MukaiVector::new(
            v.r,
            v.d + v.r * p,
            v.a + 2 * self.n * v.d * p + v.r * self.n * p * p,
        )
    }

    pub fn is_spherical(&self, v: MukaiVector) -> bool {
        self.square(v) == -2
    }

    pub fn is_isotropic(&self, v: MukaiVector) -> bool {
        self.square(v) == 0
    }

    /// Primitive classes of square at least `-2` in the positive cone: positive
    /// rank, or rank zero with effective `dH` and `a != 0`, or `(0, 0, a > 0)`.
    pub fn is_positive(&self, v: MukaiVector) -> bool {
        if !v.is_primitive() || self.square(v) < -2 {
            return false;
        }
        if v.r > 0 {
            true
        } else if v.r == 0 && v.d > 0 {
            v.a != 0
        } else {
            v.r == 0 && v.d == 0 && v.a > 0
        }
    }
}

/// The class `(r, dH, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Int; 3]", into = "[Int; 3]")]
pub struct MukaiVector {
    pub r: Int,
    pub d: Int,
    pub a: Int,
}

impl MukaiVector {
    #[inline]
    pub const fn new(r: Int, d: Int, a: Int) -> Self {
        MukaiVector { r, d, a }
    }

    /// The Mukai vector of the structure sheaf.
    pub const STRUCTURE_SHEAF: MukaiVector = MukaiVector::new(1, 0, 1);

    pub fn dual(self) -> Self {
        MukaiVector::new(self.r, -self.d, self.a)
    }

    /// Swap rank and `a`, the numerical shadow of the derived dual followed by a shift.
    pub fn transpose(self) -> Self {
        MukaiVector::new(self.a, self.d, self.r)
    }

    /// `chi = r + a`, the Euler characteristic of a sheaf with this class.
    #[inline]
    pub fn euler_char(self) -> Int {
        self.r + self.a
    }

    pub fn content(self) -> Int {
        self.r.gcd(&self.d).gcd(&self.a)
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    pub fn is_zero(self) -> bool {
        self.r == 0 && self.d == 0 && self.a == 0
    }
}

impl From<[Int; 3]> for MukaiVector {
    fn from([r, d, a]: [Int; 3]) -> Self {
        MukaiVector::new(r, d, a)
    }
}

impl From<MukaiVector> for [Int; 3] {
    fn from(v: MukaiVector) -> Self {
        [v.r, v.d, v.a]
    }
}

impl From<(Int, Int, Int)> for MukaiVector {
    fn from((r, d, a): (Int, Int, Int)) -> Self {
        MukaiVector::new(r, d, a)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.d, self.a)
    }
}

impl Add for MukaiVector {
    type Output = MukaiVector;
    fn add(self, o: MukaiVector) -> MukaiVector {
        MukaiVector::new(self.r + o.r, self.d + o.d, self.a + o.a)
    }
}

impl Sub for MukaiVector {
    type Output = MukaiVector;
    fn sub(self, o: MukaiVector) -> MukaiVector {
        MukaiVector::new(self.r - o.r, self.d - o.d, self.a - o.a)
    }
}

impl Mul<Int> for MukaiVector {
    type Output = MukaiVector;
    fn mul(self, c: Int) -> MukaiVector {
        MukaiVector::new(self.r * c, self.d * c, self.a * c)
    }
}

impl Neg for MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector::new(-self.r, -self.d, -self.a)
    }
}
