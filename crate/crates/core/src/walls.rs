//! Exact numerical walls in the `(s, t)` upper half-plane.
//!
//! Walls for a fixed `v` are nested semicircles centred on the `s`-axis, plus
//! possibly vertical lines. Everything here is computed with exact rationals.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Int, K3Context, MukaiVector};

pub type Rational = Ratio<Int>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wall {
    Semicircle { center: Rational, radius_sq: Rational },
    Vertical { s0: Rational },
}

/// Position of a wall relative to the wall of `O_X[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WallPosition {
    Above,
    Equal,
    Below,
}

fn proportional(v: MukaiVector, w: MukaiVector) -> bool {
    v.r * w.d == w.r * v.d && v.r * w.a == w.r * v.a && v.d * w.a == w.d * v.a
}

/// The numerical wall along which `Z(v)` and `Z(v1)` align.
pub fn wall_between(ctx: &K3Context, v: MukaiVector, v1: MukaiVector) -> Result<Wall> {
    if proportional(v, v1) {
        return Err(Error::DegenerateWall { v, v1 });
    }
    let n = ctx.n();
    let slope_gap = v.r * v1.d - v1.r * v.d;
    if slope_gap == 0 {
        let den = v1.r * v.a - v.r * v1.a;
        if den == 0 {
            return Err(Error::DegenerateWall { v, v1 });
        }
        return Ok(Wall::Vertical {
            s0: Ratio::new(v.a * v1.d - v1.a * v.d, den),
        });
    }
    let center = Ratio::new(v.r * v1.a - v1.r * v.a, 2 * n * slope_gap);
    let radius_sq = center * center - Ratio::new(v1.a * v.d - v.a * v1.d, n * slope_gap);
    Ok(Wall::Semicircle { center, radius_sq })
}

/// `t^2` where the wall of `v1` meets `s = 0`; positive exactly when it does.
pub fn height_at_s_zero_sq(ctx: &K3Context, v: MukaiVector, v1: MukaiVector) -> Result<Rational> {
    let m = v1.r * v.d - v.r * v1.d;
    if m == 0 {
        return Err(Error::VerticalWall { v, v1 });
    }
    let k = v1.a * v.d - v.a * v1.d;
    Ok(Ratio::new(k, ctx.n() * m))
}

/// The wall of `O_X[1]` crosses `s = 0` at `t^2 = 1/n`.
pub fn ox1_wall_height_sq(ctx: &K3Context) -> Rational {
    Ratio::new(1, ctx.n())
}

pub fn is_at_or_above_ox1(ctx: &K3Context, v: MukaiVector, v1: MukaiVector) -> Result<WallPosition> {
    let h = height_at_s_zero_sq(ctx, v, v1)?;
    Ok(match h.cmp(&ox1_wall_height_sq(ctx)) {
        Ordering::Greater => WallPosition::Above,
        Ordering::Equal => WallPosition::Equal,
        Ordering::Less => WallPosition::Below,
    })
}

/// Order two walls of `v` by how far they reach up the `t`-axis.
///
/// Walls of one class are nested, so equal heights mean the same circle.
/// Two vertical walls compare by their `s` coordinate; a vertical wall and a
/// semicircle are not comparable.
pub fn compare_walls(
    ctx: &K3Context,
    v: MukaiVector,
    v1: MukaiVector,
    v2: MukaiVector,
) -> Result<Ordering> {
    match (wall_between(ctx, v, v1)?, wall_between(ctx, v, v2)?) {
        (Wall::Vertical { s0: a }, Wall::Vertical { s0: b }) => Ok(a.cmp(&b)),
        (Wall::Semicircle { .. }, Wall::Semicircle { .. }) => {
            let h1 = height_at_s_zero_sq(ctx, v, v1)?;
            let h2 = height_at_s_zero_sq(ctx, v, v2)?;
            Ok(h1.cmp(&h2))
        }
        _ => Err(Error::MixedWalls),
    }
}
