//! Auxiliary numerical criteria: slope stability, local freeness, global
//! generation, Ulrich classes and the cohomology of twists.

use num_integer::{Integer, Roots};
use serde::Serialize;

use crate::classify::{match_families, Classifier};
use crate::destabilizers::find_dv;
use crate::error::{Error, Result};
use crate::lattice::{Int, K3Context, MukaiVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GgStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GgVerdict {
    pub status: GgStatus,
    pub rule: &'static str,
}

impl GgVerdict {
    fn new(status: GgStatus, rule: &'static str) -> Self {
        GgVerdict { status, rule }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TwistedH1 {
    Exact { h1: Int, rule: String },
    Unknown { lo: Int, hi: Option<Int> },
}

impl TwistedH1 {
    pub fn exact(&self) -> Option<Int> {
        match self {
            TwistedH1::Exact { h1, .. } => Some(*h1),
            TwistedH1::Unknown { .. } => None,
        }
    }
}

fn primitive_part(v: MukaiVector) -> MukaiVector {
    let c = v.content();
    if c == 0 {
        v
    } else {
        MukaiVector::new(v.r / c, v.d / c, v.a / c)
    }
}

/// Whether the moduli space of `v = (l r0, l d0, a)`, `gcd(r0, d0) = 1`,
/// contains a slope-stable sheaf.
pub fn has_mu_stable(ctx: &K3Context, v: MukaiVector) -> Result<bool> {
    if v.r < 1 {
        return Err(Error::InvalidParameter { name: "r", value: v.r });
    }
    let prim = primitive_part(v);
    let square = ctx.square(prim);
    if square < -2 {
        return Err(Error::EmptyModuli { v, square });
    }
    let l = v.r.gcd(&v.d);
    let (r0, d0) = (v.r / l, v.d / l);
    let divides = (ctx.n() * d0 * d0 + 1) % r0 == 0;
    let sq = ctx.square(v);
    let empty = if divides {
        sq < 2 * l * l
    } else {
        sq == 0 && !v.is_primitive()
    };
    Ok(!empty)
}

/// Whether every sheaf in the moduli space of `v` fails to be locally free.
pub fn only_non_locally_free(ctx: &K3Context, v: MukaiVector) -> bool {
    let n = ctx.n();
    let sq = ctx.square(v);
    if sq > 0 {
        if v.r >= 1 && v.d % v.r == 0 {
            let p = v.d / v.r;
            if v.a == v.r * p * p * n - 1 {
                return true;
            }
        }
        return v.r == 1;
    }
    if sq == 0 && v.r > 0 {
        let content = v.content();
        for m in 1..=content {
            if content % m != 0 {
                continue;
            }
            let (r, d, a) = (v.r / m, v.d / m, v.a / m);
            let r0 = r.sqrt();
            if r0 * r0 != r || d % r0 != 0 {
                continue;
            }
            let d0 = d / r0;
            if a == d0 * d0 * n && (n * d0 * d0 + 1) % r0 == 0 {
                return true;
            }
        }
    }
    false
}

/// Whether the generic sheaf of class `v` is globally generated, when known.
pub fn globally_generated(ctx: &K3Context, v: MukaiVector) -> Result<GgVerdict> {
    use GgStatus::*;
    if v.d <= 0 {
        return Err(Error::NonPositiveDegree { v });
    }
    if v.r < 0 {
        return Err(Error::NegativeRank { v });
    }
    let square = ctx.square(v);
    if square < -2 {
        return Err(Error::EmptyModuli { v, square });
    }
    let n = ctx.n();
    if v.a <= 0 {
        return Ok(GgVerdict::new(No, "a-nonpositive"));
    }
    if v.a == 1 {
        return Ok(if v == MukaiVector::new(n * v.d * v.d + 1, v.d, 1) {
            GgVerdict::new(Unknown, "a-one-spherical")
        } else {
            GgVerdict::new(No, "a-one")
        });
    }
    if v.r == 0 {
        return Ok(GgVerdict::new(Unknown, "torsion"));
    }
    if v.r == 1 {
        return Ok(if n == 1 && v.d == 2 && (2..=4).contains(&v.a) {
            GgVerdict::new(No, "rank-one-double-plane")
        } else {
            GgVerdict::new(Yes, "rank-one")
        });
    }
    if n >= 2 * v.r {
        return Ok(GgVerdict::new(Yes, "n-at-least-twice-rank"));
    }
    if v.d >= v.r * (2 * v.r / n) + v.r && (n > 1 || 2 * v.d >= 2 * v.a + v.r) {
        return Ok(GgVerdict::new(Yes, "degree-above-bound"));
    }
    if find_dv(ctx, v)?.is_empty() && !only_non_locally_free(ctx, v.transpose()) {
        return Ok(GgVerdict::new(Yes, "no-destabilizer"));
    }
    Ok(GgVerdict::new(Unknown, "no-criterion"))
}

/// The Mukai vector of an Ulrich bundle of rank `r` for the polarization `mH`,
/// which exists exactly when `rm` is even.
pub fn ulrich_vector(ctx: &K3Context, r: Int, m: Int) -> Result<Option<MukaiVector>> {
    if r < 1 {
        return Err(Error::InvalidParameter { name: "r", value: r });
    }
    if m < 1 {
        return Err(Error::InvalidParameter { name: "m", value: m });
    }
    if (r * m).is_odd() {
        return Ok(None);
    }
    Ok(Some(MukaiVector::new(r, 3 * r * m / 2, r * (2 * m * m * ctx.n() - 1))))
}

/// `h1(E(pH))` for the generic `E` of class `v`, `p >= 0`.
pub fn twisted_h1(ctx: &K3Context, v: MukaiVector, p: Int) -> Result<TwistedH1> {
    if p < 0 {
        return Err(Error::InvalidParameter { name: "p", value: p });
    }
    let mut classifier = Classifier::new(*ctx);
    if p == 0 {
        return Ok(match classifier.h1_or_bounds(v)? {
            Ok(h1) => TwistedH1::Exact {
                h1,
                rule: "generic".into(),
            },
            Err((lo, hi)) => TwistedH1::Unknown { lo, hi },
        });
    }
    let w = ctx.twist(v, p);
    classifier.check_input(v)?;
    let families = match_families(ctx, w);
    if let Some(f) = families.iter().find(|f| f.base == v && f.p == p) {
        return Ok(TwistedH1::Exact {
            h1: f.h1,
            rule: f.family.as_str().into(),
        });
    }
    Ok(match classifier.h1_or_bounds(w)? {
        Ok(h1) => TwistedH1::Exact {
            h1,
            rule: "engine".into(),
        },
        Err((lo, hi)) => TwistedH1::Unknown { lo, hi },
    })
}
