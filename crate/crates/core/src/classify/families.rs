//! Closed-form families of vectors with known `h1`, matched directly from `(n, v)`.
//!
//! Most families are twists `v = u(pH)` of a class `u = (r, j, c - i)` with
//! small `a`-coordinate `c - i`, `c` in `{0, 1, 2}`, for which
//! `h1(E(pH))` has an explicit formula.

use serde::Serialize;

use crate::lattice::{Int, K3Context, MukaiVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `(n + r1^2, (n+1)/r1 + r1, ((n+1)/r1)^2 + n)` for `r1 | n + 1`, with `h1 = 1`.
    SphericalOverStructure,
    /// Twists of `(r, j, -i)`.
    NonPositiveTwist,
    /// Twists of `(r, j, 1 - i)`.
    AOneTwist,
    /// Twists of `(r, j, 2 - i)` away from the sporadic list.
    ATwoTwist,
    /// `O(H)`-twists of `(r, r/(n+1), a)`.
    SlopeRatioTwist,
    /// Twists of the sporadic `a = 2` classes.
    ExceptionalTwist,
}

impl FamilyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyKind::SphericalOverStructure => "family-1",
            FamilyKind::NonPositiveTwist => "family-2",
            FamilyKind::AOneTwist => "family-3",
            FamilyKind::ATwoTwist => "family-4",
            FamilyKind::SlopeRatioTwist => "family-5",
            FamilyKind::ExceptionalTwist => "exceptional-twist",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub family: FamilyKind,
    /// The untwisted class; `v` itself for the first family.
    pub base: MukaiVector,
    /// Twist `p` with `v = base(pH)`; 0 for the first family.
    pub p: Int,
    /// `i` for the twisted families, `r1` for the first family.
    pub index: Int,
    pub h1: Int,
}

/// `h1(E(pH))`, `p >= 1`, for the sporadic `a = 2` classes with totally
/// semistable walls; `None` when `u` is not one of them.
fn sporadic_a_two(n: Int, u: MukaiVector, p: Int) -> Option<Int> {
    let (r, d) = (u.r, u.d);
    if u.a != 2 {
        return None;
    }
    let table: &[((Int, Int), &[Int])] = match n {
        1 => &[((5, 3), &[3]), ((11, 5), &[5]), ((23, 7), &[13, 5]), ((12, 5), &[6])],
        _ => &[],
    };
    for &((tr, td), values) in table {
        if (r, d) == (tr, td) {
            return Some(values.get((p - 1) as usize).copied().unwrap_or(0));
        }
    }
    let vanishing = match n {
        1 => d >= 3 && 2 * d - 3 <= r && r < 2 * d,
        2 => matches!((r, d), (11, 4) | (7, 3) | (8, 3)),
        3 => (r, d) == (11, 3),
        _ => false,
    };
    vanishing.then_some(0)
}

fn first_family(ctx: &K3Context, v: MukaiVector) -> Option<FamilyMatch> {
    let n = ctx.n();
    let r1_sq = v.r - n;
    if r1_sq < 1 {
        return None;
    }
    let r1 = num_integer::Roots::sqrt(&r1_sq);
    if r1 * r1 != r1_sq || (n + 1) % r1 != 0 {
        return None;
    }
    let q = (n + 1) / r1;
    (v == MukaiVector::new(n + r1 * r1, q + r1, q * q + n)).then_some(FamilyMatch {
        family: FamilyKind::SphericalOverStructure,
        base: v,
        p: 0,
        index: r1,
        h1: 1,
    })
}

/// Every family description of `v`, in a fixed order.
pub fn match_families(ctx: &K3Context, v: MukaiVector) -> Vec<FamilyMatch> {
    let n = ctx.n();
    let mut out = Vec::new();
    out.extend(first_family(ctx, v));
    if v.r < 1 || v.d < 1 {
        return out;
    }
    let r = v.r;
    let square = ctx.square(v);
    let push = |out: &mut Vec<FamilyMatch>, family, base, p, index, h1: Int| {
        out.push(FamilyMatch {
            family,
            base,
            p,
            index,
            h1: h1.max(0),
        })
    };
    for p in 1..=(v.d - 1) / r {
        let u = ctx.twist(v, -p);
        let j = u.d;
        let cross = r - 2 * n * p * j;
        let step = n * p * p + 1;

        let i = -u.a;
        if (0..=r).contains(&i) {
            push(&mut out, FamilyKind::NonPositiveTwist, u, p, i, cross - step * i);
        }

        let i = 1 - u.a;
        if (0..=r + 1).contains(&i) && square >= -2 {
            if n == 1 && u == MukaiVector::new(2 * j - 1, j, 1) {
                push(&mut out, FamilyKind::AOneTwist, u, p, i, 0);
            } else if p < j {
                push(&mut out, FamilyKind::AOneTwist, u, p, i, cross - step * (i - 1));
            } else if p == j && square == -2 {
                push(&mut out, FamilyKind::AOneTwist, u, p, i, 1);
            }
        }

        let i = 2 - u.a;
        if (0..=r + 2).contains(&i) && square >= -2 {
            if let Some(h1) = sporadic_a_two(n, u, p) {
                push(&mut out, FamilyKind::ExceptionalTwist, u, p, i, h1);
            } else if 2 * p < j {
                let h1 = if n == 1 && i == 0 && 2 * r == j * j + 1 && 2 * p == j - 3 {
                    8
                } else if n == 1 && i == 1 && r == 2 * j - 1 {
                    0
                } else {
                    cross - step * (i - 2)
                };
                let family = if h1 == 8 && i == 0 {
                    FamilyKind::ExceptionalTwist
                } else {
                    FamilyKind::ATwoTwist
                };
                push(&mut out, family, u, p, i, h1);
            }
        }

        if r % (n + 1) == 0 && j == r / (n + 1) {
            if p == 1 && u.a > 0 && (n + 1) * u.a <= n * j {
                push(&mut out, FamilyKind::SlopeRatioTwist, u, p, u.a, (n + 1) * u.a - (n - 1) * j);
            } else if p >= 2 && u.a > 0 && (n + 1) * u.a <= n * j {
                push(&mut out, FamilyKind::SlopeRatioTwist, u, p, u.a, 0);
            }
        }
    }
    out
}

/// The first family description of `v`, if any.
pub fn match_family(ctx: &K3Context, v: MukaiVector) -> Option<FamilyMatch> {
    match_families(ctx, v).into_iter().next()
}
