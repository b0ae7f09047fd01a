use thiserror::Error;

use crate::lattice::{Int, MukaiVector};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 1, got {n}")]
    InvalidContext { n: Int },

    #[error("{v} is not spherical: its square is {square}, not -2")]
    NotSpherical { v: MukaiVector, square: Int },

    #[error("{v} and {v1} are proportional and define no wall")]
    DegenerateWall { v: MukaiVector, v1: MukaiVector },

    #[error("the wall of {v1} for {v} is vertical and never meets s = 0")]
    VerticalWall { v: MukaiVector, v1: MukaiVector },

    #[error("cannot order a vertical wall against a semicircle")]
    MixedWalls,

    #[error("{v} has d = {}; only d > 0 is handled (apply Serre duality first)", v.d)]
    NonPositiveDegree { v: MukaiVector },

    #[error("{v} has negative rank")]
    NegativeRank { v: MukaiVector },

    #[error("{v} has square {square} < -2, so its moduli space is empty")]
    EmptyModuli { v: MukaiVector, square: Int },

    #[error("parameter {name} = {value} is out of range")]
    InvalidParameter { name: &'static str, value: Int },

    #[error("{v}: h1 of the generic sheaf is only known to lie in [{lo}, {}]", hi.map_or("inf".to_string(), |h| h.to_string()))]
    Undetermined {
        v: MukaiVector,
        lo: Int,
        hi: Option<Int>,
    },

    #[error("{v}: no destabilizer on the largest wall leaves a quotient of known shape")]
    UnknownPattern { v: MukaiVector },

    #[error("cannot start the worker pool: {0}")]
    WorkerPool(String),

    #[error("inconsistent answers for {v}: {detail}")]
    Inconsistent { v: MukaiVector, detail: String },
}

impl Error {
    /// True when the failure comes from the input rather than from a bug.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Inconsistent { .. } | Error::WorkerPool(_))
    }
}
