//! Weak Brill-Noether decisions and the cohomology of the generic stable sheaf.
//!
//! A [`Classifier`] first tries the cheap numerical criteria that force weak
//! Brill-Noether. When none applies it bounds `h1` in two independent ways and
//! intersects the intervals:
//!
//! * crossing the largest totally semistable wall, where the generic sheaf is an
//!   extension of a quotient by copies of a spherical bundle, and
//! * twisting down by `O(-pH)` and counting maps into the rank `np^2 + 1`
//!   sheaf attached to `O(pH)`.
//!
//! Closed-form families are matched independently and must agree with the engine.

mod engine;
mod enumerate;
mod families;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::lattice::{Int, K3Context, MukaiVector};

pub use engine::Classifier;
pub use enumerate::{enumerate_counterexamples, enumerate_counterexamples_with, Counterexample};
pub use families::{match_families, match_family, FamilyKind, FamilyMatch};

/// What justified a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    NonPositiveA,
    AAtMostOne,
    RankAtMostOne,
    NAtLeastRank,
    LargeDegree,
    NoBnDestabilizer,
    WallsAtOx1,
    Resolution,
    Tensor,
    ResolutionAndTensor,
    Family(FamilyKind),
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::NonPositiveA => "a-nonpositive",
            Rule::AAtMostOne => "a-at-most-one",
            Rule::RankAtMostOne => "rank-at-most-one",
            Rule::NAtLeastRank => "n-at-least-rank",
            Rule::LargeDegree => "degree-above-bound",
            Rule::NoBnDestabilizer => "no-bn-destabilizer",
            Rule::WallsAtOx1 => "walls-at-ox1",
            Rule::Resolution => "resolution",
            Rule::Tensor => "tensor",
            Rule::ResolutionAndTensor => "resolution+tensor",
            Rule::Family(f) => f.as_str(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The shape of the quotient left after splitting off the destabilizing subobject.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum QuotientKind {
    Sheaf,
    /// `O(pH)[1]^k`.
    ShiftedLineBundle { p: Int, k: Int },
    /// `O_X[1]^k`.
    ShiftedStructure { k: Int },
    Torsion,
}

/// One wall crossing: `T^c -> E -> F` with `v(T) = sub` and `v(F) = quotient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub v: MukaiVector,
    pub sub: MukaiVector,
    pub multiplicity: Int,
    pub quotient: MukaiVector,
    pub quotient_kind: QuotientKind,
    pub children: Vec<ResolutionTree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResolutionTree {
    LeafWbn {
        v: MukaiVector,
        rule: Rule,
    },
    SubPowersThenQuotient(Step),
    SphericalChain(Step),
    /// `h1(E)` read off from `E(-pH)` with class `untwisted`.
    TwistReduction {
        v: MukaiVector,
        p: Int,
        untwisted: MukaiVector,
        hom: Int,
        child: Box<ResolutionTree>,
    },
}

impl ResolutionTree {
    pub fn v(&self) -> MukaiVector {
        match self {
            ResolutionTree::LeafWbn { v, .. } | ResolutionTree::TwistReduction { v, .. } => *v,
            ResolutionTree::SubPowersThenQuotient(s) | ResolutionTree::SphericalChain(s) => s.v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub wbn: bool,
    pub h: [Int; 3],
    pub rule: Rule,
    pub resolution: Option<ResolutionTree>,
}

impl Verdict {
    pub fn h1(&self) -> Int {
        self.h[1]
    }
}

/// `floor((n d^2 + 1) / r)`, the largest `a` with `(r, d, a)^2 >= -2`.
pub fn minimal_a(ctx: &K3Context, r: Int, d: Int) -> Result<Int> {
    use crate::error::Error;
    if r < 1 {
        return Err(Error::InvalidParameter { name: "r", value: r });
    }
    if d < 1 {
        return Err(Error::InvalidParameter { name: "d", value: d });
    }
    Ok((ctx.n() * d * d + 1).div_euclid(r))
}

pub fn weak_bn(ctx: &K3Context, v: MukaiVector) -> Result<Verdict> {
    Classifier::new(*ctx).weak_bn(v)
}

pub fn generic_cohomology(ctx: &K3Context, v: MukaiVector) -> Result<[Int; 3]> {
    Ok(weak_bn(ctx, v)?.h)
}

/// The wall-crossing resolution across the largest totally semistable wall at
/// or above `O_X[1]`. `None` when there is no such wall; an error when no
/// candidate on that wall leaves a quotient of a recognised shape.
pub fn resolve(ctx: &K3Context, v: MukaiVector) -> Result<Option<ResolutionTree>> {
    Classifier::new(*ctx).resolve(v)
}
