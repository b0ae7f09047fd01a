//! The sets `D_v` and `D_v^BN` of spherical or isotropic classes that can
//! produce totally semistable walls, and the choice of the largest such wall.

use num_integer::Roots;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Int, K3Context, MukaiVector};
use crate::walls::Rational;

/// A class `v1 = (r1, d1, a1)` in `D_v` with `m = r1 d - r d1` and `k = a1 d - a d1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Destabilizer {
    pub r1: Int,
    pub d1: Int,
    pub a1: Int,
    pub m: Int,
    pub k: Int,
    /// 1 when `v1` is spherical, 0 when isotropic.
    pub epsilon: u8,
}

impl Destabilizer {
    pub fn v1(&self) -> MukaiVector {
        MukaiVector::new(self.r1, self.d1, self.a1)
    }

    /// `k / m`, which is `n` times the squared height of the wall at `s = 0`.
    pub fn slope_ratio(&self) -> Rational {
        Ratio::new(self.k, self.m)
    }

    pub fn is_bn(&self) -> bool {
        0 < self.m && self.m <= self.k
    }
}

/// Search box for [`brute_force_dv`]: `|r1| <= r1_max`, `1 <= d1 <= d1_max`, `|a1| <= a1_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBox {
    pub r1_max: Int,
    pub d1_max: Int,
    pub a1_max: Int,
}

fn validate(ctx: &K3Context, v: MukaiVector) -> Result<()> {
    if v.d <= 0 {
        return Err(Error::NonPositiveDegree { v });
    }
    let square = ctx.square(v);
    if square < -2 {
        return Err(Error::EmptyModuli { v, square });
    }
    Ok(())
}

/// Apply the membership conditions to a candidate `v1` already known to have
/// square `-2 * epsilon` and `1 <= d1 <= d`.
fn admit(ctx: &K3Context, v: MukaiVector, v1: MukaiVector, epsilon: u8) -> Option<Destabilizer> {
    let bound = 2 - 2 * Int::from(epsilon);
    if ctx.pairing(v, v1) >= bound {
        return None;
    }
    let m = v1.r * v.d - v.r * v1.d;
    let k = v1.a * v.d - v.a * v1.d;
    if m == 0 || k == 0 || (m > 0) != (k > 0) {
        return None;
    }
    Some(Destabilizer {
        r1: v1.r,
        d1: v1.d,
        a1: v1.a,
        m,
        k,
        epsilon,
    })
}

fn positive_divisors(x: Int) -> Vec<Int> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = x.sqrt();
    for q in 1..=root {
        if x % q == 0 {
            small.push(q);
            if q * q != x {
                large.push(x / q);
            }
        }
    }
    small.extend(large.into_iter().rev());
    small
}

fn sort_members(members: &mut [Destabilizer]) {
    members.sort_by_key(|x| (x.d1, x.r1, x.epsilon));
}

/// All of `D_v`, found by running `r1` over the signed divisors of `n d1^2 + epsilon`.
pub fn find_dv(ctx: &K3Context, v: MukaiVector) -> Result<Vec<Destabilizer>> {
    validate(ctx, v)?;
    let n = ctx.n();
    let mut out = Vec::new();
    for d1 in 1..=v.d {
        for epsilon in [0u8, 1] {
            let target = n * d1 * d1 + Int::from(epsilon);
            for q in positive_divisors(target) {
                for r1 in [q, -q] {
                    let v1 = MukaiVector::new(r1, d1, target / r1);
                    if let Some(x) = admit(ctx, v, v1, epsilon) {
                        out.push(x);
                    }
                }
            }
        }
    }
    sort_members(&mut out);
    Ok(out)
}

/// The members of `D_v` whose walls lie at or above the wall of `O_X[1]`.
pub fn find_dv_bn(ctx: &K3Context, v: MukaiVector) -> Result<Vec<Destabilizer>> {
    if v.r < 0 {
        return Err(Error::NegativeRank { v });
    }
    let mut all = find_dv(ctx, v)?;
    all.retain(Destabilizer::is_bn);
    Ok(all)
}

/// Members of `D_v^BN` on the largest wall, in tie-break order: smallest `d1`
/// first, then smallest `r1`.
pub fn tss_wall_candidates(ctx: &K3Context, v: MukaiVector) -> Result<Vec<Destabilizer>> {
    let bn = find_dv_bn(ctx, v)?;
    Ok(top_of(&bn))
}

pub(crate) fn top_of(bn: &[Destabilizer]) -> Vec<Destabilizer> {
    let Some(top) = bn.iter().map(Destabilizer::slope_ratio).max() else {
        return Vec::new();
    };
    let mut out: Vec<Destabilizer> = bn.iter().copied().filter(|x| x.slope_ratio() == top).collect();
    out.sort_by_key(|x| (x.d1, x.r1));
    out
}

/// The destabilizer defining the largest totally semistable wall, if any.
///
/// When several classes give the same circle the one with smallest `d1`, then
/// smallest `r1`, is returned. The classifier may move on to later candidates
/// from [`tss_wall_candidates`] when this one does not lead to a known pattern.
pub fn largest_tss_wall(ctx: &K3Context, v: MukaiVector) -> Result<Option<Destabilizer>> {
    Ok(tss_wall_candidates(ctx, v)?.into_iter().next())
}

/// Literal scan of a box of integer triples, kept as an independent check on [`find_dv`].
pub fn brute_force_dv(ctx: &K3Context, v: MukaiVector, bounds: SearchBox) -> Vec<Destabilizer> {
    let mut out = Vec::new();
    if v.d <= 0 {
        return out;
    }
    let n = ctx.n();
    for d1 in 1..=bounds.d1_max.min(v.d) {
        for r1 in -bounds.r1_max..=bounds.r1_max {
            for a1 in -bounds.a1_max..=bounds.a1_max {
                let v1 = MukaiVector::new(r1, d1, a1);
                let square = 2 * n * d1 * d1 - 2 * r1 * a1;
                let epsilon = match square {
                    0 => 0,
                    -2 => 1,
                    _ => continue,
                };
                if let Some(x) = admit(ctx, v, v1, epsilon) {
                    out.push(x);
                }
            }
        }
    }
    sort_members(&mut out);
    out
}
