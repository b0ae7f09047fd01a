use std::collections::HashMap;

use num_rational::Ratio;

use super::families::match_families;
use super::{QuotientKind, ResolutionTree, Rule, Step, Verdict};
use crate::destabilizers::{find_dv, top_of, Destabilizer};
use crate::error::{Error, Result};
use crate::lattice::{Int, K3Context, MukaiVector};
use crate::walls::height_at_s_zero_sq;

/// Recursion deeper than this is reported as undetermined.
const MAX_DEPTH: usize = 4096;

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub h1: Int,
    pub rule: Rule,
    pub tree: ResolutionTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Bounds {
    pub lo: Int,
    pub hi: Option<Int>,
}

impl Bounds {
    const OPEN: Bounds = Bounds { lo: 0, hi: None };
}

type Eval = std::result::Result<Outcome, Bounds>;

enum Slot {
    Pending,
    Done(Box<Eval>),
}

/// An `h1` interval from one rule, with the tree that explains it.
struct Interval {
    lo: Int,
    hi: Int,
    tree: ResolutionTree,
}

impl Interval {
    fn exact(&self) -> bool {
        self.lo == self.hi
    }
}

struct Quotient {
    h0: Int,
    h1: Int,
    kind: QuotientKind,
    tree: Option<ResolutionTree>,
}

/// Memoizing classifier for one surface.
///
/// Reusing a classifier across many vectors shares the cached answers for the
/// classes met during recursion.
pub struct Classifier {
    ctx: K3Context,
    memo: HashMap<MukaiVector, Slot>,
    dv: HashMap<MukaiVector, Vec<Destabilizer>>,
}

fn h0_line_bundle(n: Int, p: Int) -> Int {
    match p {
        p if p < 0 => 0,
        0 => 1,
        p => n * p * p + 2,
    }
}

impl Classifier {
    pub fn new(ctx: K3Context) -> Self {
        Classifier {
            ctx,
            memo: HashMap::new(),
            dv: HashMap::new(),
        }
    }

    pub fn context(&self) -> K3Context {
        self.ctx
    }

    pub(crate) fn check_input(&self, v: MukaiVector) -> Result<()> {
        if v.d <= 0 {
            return Err(Error::NonPositiveDegree { v });
        }
        if v.r < 0 {
            return Err(Error::NegativeRank { v });
        }
        let square = self.ctx.square(v);
        if square < -2 {
            return Err(Error::EmptyModuli { v, square });
        }
        Ok(())
    }

    pub fn weak_bn(&mut self, v: MukaiVector) -> Result<Verdict> {
        self.check_input(v)?;
        let eval = self.evaluate(v, 0)?;
        let families = match_families(&self.ctx, v);
        let chi = v.euler_char();
        match eval {
            Ok(out) => {
                if let Some(f) = families.iter().find(|f| f.h1 != out.h1) {
                    return Err(Error::Inconsistent {
                        v,
                        detail: format!(
                            "rule {} gives h1 = {} but {} gives h1 = {}",
                            out.rule,
                            out.h1,
                            f.family.as_str(),
                            f.h1
                        ),
                    });
                }
                let h = [chi + out.h1, out.h1, 0];
                Ok(Verdict {
                    wbn: h[0] == 0 || h[1] == 0,
                    h,
                    rule: out.rule,
                    resolution: Some(out.tree),
                })
            }
            Err(bounds) => {
                let Some(f) = families.first() else {
                    return Err(Error::Undetermined {
                        v,
                        lo: bounds.lo,
                        hi: bounds.hi,
                    });
                };
                let h = [chi + f.h1, f.h1, 0];
                Ok(Verdict {
                    wbn: h[0] == 0 || h[1] == 0,
                    h,
                    rule: Rule::Family(f.family),
                    resolution: None,
                })
            }
        }
    }

    pub fn resolve(&mut self, v: MukaiVector) -> Result<Option<ResolutionTree>> {
        self.check_input(v)?;
        let bn = self.bn(v);
        if bn.is_empty() {
            return Ok(None);
        }
        match self.resolution(v, &bn, 0)? {
            Some(iv) => Ok(Some(iv.tree)),
            None => Err(Error::UnknownPattern { v }),
        }
    }

    fn dv(&mut self, v: MukaiVector) -> &[Destabilizer] {
        let ctx = self.ctx;
        self.dv
            .entry(v)
            .or_insert_with(|| find_dv(&ctx, v).unwrap_or_default())
    }

    fn bn(&mut self, v: MukaiVector) -> Vec<Destabilizer> {
        if v.r < 0 {
            return Vec::new();
        }
        self.dv(v).iter().copied().filter(Destabilizer::is_bn).collect()
    }

    /// `h1` of the generic sheaf of class `v`, for `r >= 0`, `d > 0`, `v^2 >= -2`.
    fn evaluate(&mut self, v: MukaiVector, depth: usize) -> Result<Eval> {
        match self.memo.get(&v) {
            Some(Slot::Done(e)) => return Ok((**e).clone()),
            Some(Slot::Pending) => return Ok(Err(Bounds::OPEN)),
            None => {}
        }
        if depth > MAX_DEPTH {
            return Ok(Err(Bounds::OPEN));
        }
        self.memo.insert(v, Slot::Pending);
        let result = self.compute(v, depth);
        match &result {
            Ok(e) => {
                self.memo.insert(v, Slot::Done(Box::new(e.clone())));
            }
            Err(_) => {
                self.memo.remove(&v);
            }
        }
        result
    }

    fn fast_rule(&mut self, v: MukaiVector) -> Option<Rule> {
        let n = self.ctx.n();
        if v.a <= 0 {
            return Some(Rule::NonPositiveA);
        }
        if v.r > 0 && v.a <= 1 {
            return Some(Rule::AAtMostOne);
        }
        if v.r <= 1 {
            return Some(Rule::RankAtMostOne);
        }
        if n >= v.r {
            return Some(Rule::NAtLeastRank);
        }
        if v.d >= v.r * (v.r / n) + 2 {
            return Some(Rule::LargeDegree);
        }
        let bn = self.bn(v);
        if bn.is_empty() {
            return Some(Rule::NoBnDestabilizer);
        }
        if self.ctx.square(v) >= 0 && bn.iter().all(|x| x.k == x.m) {
            return Some(Rule::WallsAtOx1);
        }
        None
    }

    fn compute(&mut self, v: MukaiVector, depth: usize) -> Result<Eval> {
        if let Some(rule) = self.fast_rule(v) {
            return Ok(Ok(Outcome {
                h1: (-v.euler_char()).max(0),
                rule,
                tree: ResolutionTree::LeafWbn { v, rule },
            }));
        }
        let bn = self.bn(v);
        let res = self.resolution(v, &bn, depth)?;
        let ten = self.tensor(v, depth)?;

        if let (Some(a), Some(b)) = (&res, &ten) {
            if a.exact() && b.exact() && a.lo != b.lo {
                return Err(Error::Inconsistent {
                    v,
                    detail: format!("wall crossing gives h1 = {}, twisting gives h1 = {}", a.lo, b.lo),
                });
            }
        }
        let mut lo: Int = 0;
        let mut hi: Option<Int> = None;
        for iv in res.iter().chain(ten.iter()) {
            lo = lo.max(iv.lo);
            hi = Some(hi.map_or(iv.hi, |h| h.min(iv.hi)));
        }
        if hi.is_some_and(|h| h < lo) {
            return Err(Error::Inconsistent {
                v,
                detail: format!("empty h1 interval [{lo}, {}]", hi.unwrap_or_default()),
            });
        }
        if hi != Some(lo) {
            return Ok(Err(Bounds { lo, hi }));
        }
        let (rule, tree) = match (res, ten) {
            (Some(a), _) if a.exact() => (Rule::Resolution, a.tree),
            (_, Some(b)) if b.exact() => (Rule::Tensor, b.tree),
            (Some(a), _) => (Rule::ResolutionAndTensor, a.tree),
            (None, Some(b)) => (Rule::Tensor, b.tree),
            (None, None) => unreachable!("an exact interval needs at least one rule"),
        };
        Ok(Ok(Outcome { h1: lo, rule, tree }))
    }

    /// Cross the largest totally semistable wall: the generic `E` sits in
    /// `T^c -> E -> F` with `T` spherical, `c = -<v, v(T)>`, and `v(F)` the
    /// reflection of `v`. The long exact sequence bounds `h1(E)` between
    /// `h1(F) + max(0, c h1(T) - h0(F))` and `h1(F) + c h1(T)`.
    fn resolution(&mut self, v: MukaiVector, bn: &[Destabilizer], depth: usize) -> Result<Option<Interval>> {
        for cand in top_of(bn) {
            let v1 = cand.v1();
            if v1.r <= 0 {
                continue;
            }
            let c = -self.ctx.pairing(v, v1);
            let w = v - v1 * c;
            let Ok(sub) = self.evaluate(v1, depth + 1)? else {
                continue;
            };
            let Some(q) = self.classify_quotient(w, v1, depth)? else {
                continue;
            };
            let lo = q.h1 + (c * sub.h1 - q.h0).max(0);
            let hi = q.h1 + c * sub.h1;
            let mut children = vec![sub.tree];
            children.extend(q.tree);
            let step = Step {
                v,
                sub: v1,
                multiplicity: c,
                quotient: w,
                quotient_kind: q.kind,
                children,
            };
            let chain = self.ctx.is_spherical(v) && matches!(q.kind, QuotientKind::ShiftedStructure { .. });
            let tree = if chain {
                ResolutionTree::SphericalChain(step)
            } else {
                ResolutionTree::SubPowersThenQuotient(step)
            };
            return Ok(Some(Interval { lo, hi, tree }));
        }
        Ok(None)
    }

    /// `(h0, h1)` of the generic object of class `w` on the far side of the wall of `v1`.
    fn classify_quotient(&mut self, w: MukaiVector, v1: MukaiVector, depth: usize) -> Result<Option<Quotient>> {
        let n = self.ctx.n();
        if w.r < 0 {
            let k = -w.r;
            if w.d % k != 0 {
                return Ok(None);
            }
            let p = w.d / k;
            if w.a != -k * (n * p * p + 1) {
                return Ok(None);
            }
            let kind = if p == 0 {
                QuotientKind::ShiftedStructure { k }
            } else {
                QuotientKind::ShiftedLineBundle { p, k }
            };
            return Ok(Some(Quotient {
                h0: 0,
                h1: k * h0_line_bundle(n, p),
                kind,
                tree: None,
            }));
        }
        if w.r == 0 {
            let (h0, h1) = if w.d > 0 {
                (w.a.max(0), (-w.a).max(0))
            } else if w.d == 0 && w.a > 0 {
                (w.a, 0)
            } else {
                return Ok(None);
            };
            return Ok(Some(Quotient {
                h0,
                h1,
                kind: QuotientKind::Torsion,
                tree: None,
            }));
        }
        if w.d <= 0 {
            return Ok(None);
        }
        let Ok(out) = self.evaluate(w, depth + 1)? else {
            return Ok(None);
        };
        if w.a > 0 {
            let wall = height_at_s_zero_sq(&self.ctx, w, v1).ok();
            for x in self.bn(w) {
                let own = Ratio::new(x.k, n * x.m);
                if wall.is_none_or(|h| own >= h) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(Quotient {
            h0: w.euler_char() + out.h1,
            h1: out.h1,
            kind: QuotientKind::Sheaf,
            tree: Some(out.tree),
        }))
    }

    /// Bound `h1(E)` through `E(-pH)`: with `u = v(E(-pH))`,
    /// `hom(E(-pH), F_p) <= h1(E) <= hom(E(-pH), F_p) + h1(E(-pH)) h0(O(pH))`,
    /// where `F_p` has class `(np^2 + 1, p, 1)`.
    fn tensor(&mut self, v: MukaiVector, depth: usize) -> Result<Option<Interval>> {
        let n = self.ctx.n();
        let mut best: Option<Interval> = None;
        for p in 1..=(v.d - 1) / v.r {
            let u = self.ctx.twist(v, -p);
            let Ok(inner) = self.evaluate(u, depth + 1)? else {
                continue;
            };
            let Some(hom) = self.hom_to_fp(u, p, depth)? else {
                continue;
            };
            let width = inner.h1 * (n * p * p + 2);
            if best.as_ref().is_none_or(|b| width < b.hi - b.lo) {
                best = Some(Interval {
                    lo: hom,
                    hi: hom + width,
                    tree: ResolutionTree::TwistReduction {
                        v,
                        p,
                        untwisted: u,
                        hom,
                        child: Box::new(inner.tree),
                    },
                });
            }
            if width == 0 {
                break;
            }
        }
        Ok(best)
    }

    /// `hom(E, F_p)` for the generic `E` of class `u`.
    fn hom_to_fp(&mut self, u: MukaiVector, p: Int, depth: usize) -> Result<Option<Int>> {
        let n = self.ctx.n();
        let fp = MukaiVector::new(n * p * p + 1, p, 1);
        if u.d * fp.r > p * u.r {
            return Ok(Some(0));
        }
        let count = (-self.ctx.pairing(u, fp)).max(0);
        if !self.dv(u).is_empty() {
            return Ok(Some(count));
        }
        // hom(E, F_p) = h0 of the generic sheaf of class (a, d, r) twisted by -p.
        if u.a < 0 {
            return Ok((u.euler_char() >= 0).then_some(count));
        }
        if u.a == 0 {
            return Ok(Some((u.r - 2 * n * u.d * p).max(0)));
        }
        let g = self.ctx.twist(u.transpose(), -p);
        if g.d <= 0 {
            return Ok(Some(Int::from(g == MukaiVector::STRUCTURE_SHEAF)));
        }
        Ok(match self.evaluate(g, depth + 1)? {
            Ok(out) => Some(g.euler_char() + out.h1),
            Err(_) => None,
        })
    }

    /// `h1` of the generic sheaf, or the best interval when it is not pinned down.
    pub(crate) fn h1_or_bounds(&mut self, v: MukaiVector) -> Result<std::result::Result<Int, (Int, Option<Int>)>> {
        self.check_input(v)?;
        Ok(match self.evaluate(v, 0)? {
            Ok(out) => Ok(out.h1),
            Err(b) => Err((b.lo, b.hi)),
        })
    }
}
