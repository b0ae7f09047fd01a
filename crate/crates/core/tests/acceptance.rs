//! End-to-end acceptance checks. Each check prints one `PASS`/`FAIL` line and
//! the process exits nonzero if any check fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use mukai_bn::criteria::{twisted_h1, ulrich_vector};
use mukai_bn::{
    brute_force_dv, enumerate_counterexamples, find_dv, minimal_a, Classifier, Int, K3Context, MukaiVector,
    SearchBox,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Triple = (Int, Int, Int);

fn mv((r, d, a): Triple) -> MukaiVector {
    MukaiVector::new(r, d, a)
}

fn ctx(n: Int) -> K3Context {
    K3Context::new(n).unwrap()
}

/// Square of `(r, d, a)` computed straight from the definition.
fn sq(n: Int, (r, d, a): Triple) -> Int {
    2 * n * d * d - 2 * r * a
}

const EXCEPTIONAL: &[(Int, Triple, &[Triple], Int)] = &[
    (1, (11, 6, 3), &[(2, 1, 1)], 1),
    (1, (11, 17, 26), &[(1, 1, 2), (2, 3, 5)], 3),
    (2, (11, 15, 41), &[(1, 1, 3), (3, 4, 11)], 4),
    (1, (12, 7, 4), &[(2, 1, 1)], 2),
    (1, (12, 19, 30), &[(1, 1, 2), (2, 3, 5)], 6),
    (1, (13, 8, 5), &[(2, 1, 1), (5, 3, 2)], 3),
    (1, (13, 21, 34), &[(1, 1, 2), (2, 3, 5), (5, 8, 13)], 8),
    (1, (15, 8, 4), &[(2, 1, 1)], 2),
    (1, (15, 9, 5), &[(2, 1, 1)], 1),
    (1, (15, 22, 32), &[(1, 1, 2)], 7),
    (1, (15, 23, 35), &[(1, 1, 2), (2, 3, 5)], 6),
    (1, (15, 24, 38), &[(1, 1, 2), (2, 3, 5)], 3),
    (1, (16, 9, 5), &[(2, 1, 1)], 3),
    (3, (16, 9, 15), &[(2, 1, 2)], 1),
    (1, (16, 23, 33), &[(1, 1, 2)], 8),
    (1, (16, 25, 39), &[(1, 1, 2), (2, 3, 5)], 9),
    (2, (16, 21, 55), &[(1, 1, 3)], 5),
    (3, (17, 9, 14), &[(2, 1, 2)], 1),
    (2, (17, 12, 17), &[(3, 2, 3)], 1),
    (1, (17, 25, 36), &[(1, 1, 2)], 7),
    (2, (17, 22, 57), &[(1, 1, 3)], 6),
    (1, (18, 10, 5), &[(2, 1, 1)], 1),
    (1, (18, 26, 37), &[(1, 1, 2), (5, 7, 10)], 8),
    (1, (18, 28, 43), &[(1, 1, 2), (2, 3, 5)], 3),
    (1, (19, 10, 5), &[(2, 1, 1)], 3),
    (1, (19, 11, 6), &[(2, 1, 1)], 2),
    (1, (19, 27, 38), &[(1, 1, 2), (5, 7, 10)], 9),
    (1, (19, 28, 41), &[(1, 1, 2)], 9),
    (1, (19, 28, 40), &[(1, 1, 2)], 7),
    (1, (19, 29, 44), &[(1, 1, 2), (2, 3, 5)], 9),
    (1, (19, 30, 47), &[(1, 1, 2), (2, 3, 5)], 6),
    (2, (19, 25, 65), &[(1, 1, 3)], 4),
    (3, (19, 24, 91), &[(1, 1, 4), (4, 5, 19)], 5),
    (1, (20, 11, 6), &[(2, 1, 1)], 4),
    (1, (20, 12, 7), &[(2, 1, 1)], 3),
    (3, (20, 11, 18), &[(2, 1, 2)], 2),
    (1, (20, 28, 39), &[(1, 1, 2)], 10),
    (1, (20, 29, 42), &[(1, 1, 2)], 10),
    (1, (20, 29, 41), &[(1, 1, 2)], 8),
    (1, (20, 31, 48), &[(1, 1, 2), (2, 3, 5)], 12),
    (1, (20, 32, 51), &[(1, 1, 2), (2, 3, 5)], 9),
    (2, (20, 26, 67), &[(1, 1, 3)], 5),
    (1, (20, 48, 115), &[(1, 2, 5)], 3),
];

/// Twisted exceptional cases for `n = 1`: base class, twist, expected `h1`.
fn twisted_exceptions() -> Vec<(Triple, Int, Int)> {
    let mut rows = Vec::new();
    for d in [5, 7] {
        rows.push((((d * d + 1) / 2, d, 2), (d - 3) / 2, 8));
    }
    rows.extend([
        ((5, 3, 2), 1, 3),
        ((11, 5, 2), 1, 5),
        ((23, 7, 2), 1, 13),
        ((23, 7, 2), 2, 5),
        ((12, 5, 2), 1, 6),
    ]);
    rows
}

fn twist(n: Int, (r, d, a): Triple, p: Int) -> Triple {
    (r, d + r * p, a + 2 * n * d * p + r * n * p * p)
}

/// `h1` of an `a = 2` base class whose twists do not follow the generic formula.
fn sporadic_a_two(n: Int, (r, d, a): Triple, p: Int) -> Option<Int> {
    let table: Option<&[(Int, Int)]> = match (n, r, d, a) {
        (1, 5, 3, 2) => Some(&[(1, 3)]),
        (1, 11, 5, 2) => Some(&[(1, 5)]),
        (1, 23, 7, 2) => Some(&[(1, 13), (2, 5)]),
        (1, 12, 5, 2) => Some(&[(1, 6)]),
        _ => None,
    };
    if let Some(t) = table {
        return Some(t.iter().find(|x| x.0 == p).map_or(0, |x| x.1));
    }
    let vanishing = (n == 1 && d >= 3 && 2 * d - 3 <= r && r < 2 * d)
        || (n == 2 && [(11, 4), (7, 3), (8, 3)].contains(&(r, d)))
        || (n == 3 && (r, d) == (11, 3));
    vanishing.then_some(0)
}

/// Every failure of weak Brill-Noether with rank at most `max_rank`, generated
/// from the closed-form families plus the sporadic lists, keyed by `(n, v)`.
fn predicted(max_rank: Int) -> BTreeMap<(Int, Triple), Int> {
    let mut out: BTreeMap<(Int, Triple), Int> = BTreeMap::new();
    let mut add = |n: Int, v: Triple, h: Int| {
        if v.0 > max_rank || n >= v.0 || h <= 0 || v.1 <= 0 || sq(n, v) < -2 {
            return;
        }
        out.entry((n, v)).or_insert(h);
    };
    for n in 1..max_rank {
        for r1 in 1..=n + 1 {
            if (n + 1) % r1 == 0 {
                let q = (n + 1) / r1;
                add(n, (n + r1 * r1, q + r1, q * q + n), 1);
            }
        }
        for r in n + 1..=max_rank {
            for p in 1..60 {
                for j in 1..60 {
                    for i in 0..r + 3 {
                        let base = n * p * p * r + 2 * n * j * p;
                        if i <= r {
                            add(n, (r, r * p + j, base - i), (r - 2 * n * p * j - (n * p * p + 1) * i).max(0));
                        }
                        if i <= r + 1 && !(n == 1 && r == 2 * j - 1 && i == 0) && sq(n, (r, j, 1 - i)) >= -2 {
                            let v = (r, r * p + j, base + 1 - i);
                            if p < j {
                                add(n, v, (r - 2 * n * p * j - (n * p * p + 1) * (i - 1)).max(0));
                            } else if p == j && sq(n, v) == -2 {
                                add(n, v, 1);
                            }
                        }
                        if i <= r + 2 && 2 * p < j && sq(n, (r, j, 2 - i)) >= -2 {
                            let v = (r, r * p + j, base + 2 - i);
                            let sporadic = if i == 0 { sporadic_a_two(n, (r, j, 2), p) } else { None };
                            let h = if let Some(h) = sporadic {
                                h
                            } else if n == 1 && i == 0 && 2 * r == j * j + 1 && 2 * p == j - 3 {
                                8
                            } else if n == 1 && i == 1 && r == 2 * j - 1 {
                                0
                            } else {
                                (r - 2 * n * p * j - (n * p * p + 1) * (i - 2)).max(0)
                            };
                            add(n, v, h);
                        }
                    }
                }
            }
            if r % (n + 1) == 0 {
                let e = r / (n + 1);
                for a in 1..=r * n / ((n + 1) * (n + 1)) {
                    add(n, (r, r + e, a + r * n + 2 * n * e), ((n + 1) * a - (n - 1) * e).max(0));
                }
            }
        }
    }
    for (base, p, h) in twisted_exceptions() {
        add(1, twist(1, base, p), h);
    }
    for &(n, v, _, h) in EXCEPTIONAL {
        add(n, v, h);
    }
    out
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn exceptional_rows() -> Check {
    let start = Instant::now();
    for &(n, v, dv, h1) in EXCEPTIONAL {
        let c = ctx(n);
        let verdict = Classifier::new(c).weak_bn(mv(v)).map_err(|e| format!("{v:?}: {e}"))?;
        if verdict.wbn || verdict.h1() != h1 {
            return Err(format!("n={n} {v:?}: got h={:?}, want h1={h1}", verdict.h));
        }
        let got: BTreeSet<Triple> = find_dv(&c, mv(v)).unwrap().iter().map(|x| (x.r1, x.d1, x.a1)).collect();
        let want: BTreeSet<Triple> = dv.iter().copied().collect();
        if got != want {
            return Err(format!("n={n} {v:?}: D_v {got:?}, want {want:?}"));
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(10) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} rows in {took:.2?}", EXCEPTIONAL.len()))
}

fn twisted_rows() -> Check {
    let c = ctx(1);
    let mut seen = Vec::new();
    for (base, p, h1) in twisted_exceptions() {
        let via_twist = twisted_h1(&c, mv(base), p).map_err(|e| e.to_string())?.exact();
        let via_classify = Classifier::new(c).weak_bn(mv(twist(1, base, p))).map_err(|e| e.to_string())?;
        if via_twist != Some(h1) || via_classify.h1() != h1 {
            return Err(format!(
                "{base:?} twisted by {p}: twist-h1 {via_twist:?}, classify {}, want {h1}",
                via_classify.h1()
            ));
        }
        seen.push(h1);
    }
    Ok(format!("h1 {seen:?}"))
}

fn rank_three() -> Check {
    let got: Vec<(Int, Triple, Int)> = enumerate_counterexamples(3, None)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|c| (c.n, (c.v.r, c.v.d, c.v.a), c.verdict.h1()))
        .collect();
    let want = vec![(1, (2, 3, 5), 1), (1, (3, 4, 5), 1), (2, (3, 4, 11), 1)];
    if got == want {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("got {got:?}"))
    }
}

fn rank_twenty() -> Check {
    let start = Instant::now();
    let found = enumerate_counterexamples(20, None).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let got: BTreeMap<(Int, Triple), Int> = found
        .iter()
        .map(|c| ((c.n, (c.v.r, c.v.d, c.v.a)), c.verdict.h1()))
        .collect();
    let want = predicted(20);
    let mut problems = Vec::new();
    for (k, h) in &want {
        match got.get(k) {
            None => problems.push(format!("missing {k:?}")),
            Some(g) if g != h => problems.push(format!("{k:?}: h1 {g}, want {h}")),
            _ => {}
        }
    }
    problems.extend(got.keys().filter(|k| !want.contains_key(k)).map(|k| format!("extra {k:?}")));
    if !problems.is_empty() {
        return Err(format!("{} problems, first: {:?}", problems.len(), &problems[..problems.len().min(5)]));
    }
    if took > Duration::from_secs(300) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} vectors in {took:.2?}", got.len()))
}

fn first_family_sweep() -> Check {
    let mut count = 0;
    for n in 1..=30 {
        let c = ctx(n);
        let mut classifier = Classifier::new(c);
        for r1 in 1..=n + 1 {
            if (n + 1) % r1 != 0 || n + r1 * r1 > 20 {
                continue;
            }
            let q = (n + 1) / r1;
            let v = (n + r1 * r1, q + r1, q * q + n);
            let fails = classifier.weak_bn(mv(v)).map_err(|e| e.to_string())?;
            let neighbour = classifier.weak_bn(mv((v.0, v.1, v.2 - 1))).map_err(|e| e.to_string())?;
            if fails.wbn || fails.h1() != 1 || !neighbour.wbn || neighbour.h1() != 0 {
                return Err(format!("n={n} r1={r1} {v:?}: {:?} / {:?}", fails.h, neighbour.h));
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn random_class(rng: &mut StdRng, n_max: Int, r_max: Int, d_max: Int) -> (Int, Triple) {
    let n = rng.gen_range(1..=n_max);
    let r = rng.gen_range(1..=r_max);
    let d = rng.gen_range(1..=d_max);
    let top = (n * d * d + 1).div_euclid(r);
    let a = rng.gen_range(-r..=top);
    (n, (r, d, a))
}

fn fast_paths() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    let mut samples: Vec<(Int, Triple)> = (0..10_000).map(|_| random_class(&mut rng, 8, 12, 15)).collect();
    for n in 1..=8 {
        for r in 1..=12 {
            for d in 1..=15 {
                if sq(n, (r, d, 2)) >= -2 {
                    samples.push((n, (r, d, 2)));
                }
                if d <= 3 {
                    for a in -r..=(n * d * d + 1) / r {
                        samples.push((n, (r, d, a)));
                    }
                }
            }
        }
    }
    let mut classifiers: BTreeMap<Int, Classifier> = (1..=8).map(|n| (n, Classifier::new(ctx(n)))).collect();
    for &(n, v) in &samples {
        let (r, d, a) = v;
        let verdict = classifiers
            .get_mut(&n)
            .unwrap()
            .weak_bn(mv(v))
            .map_err(|e| format!("n={n} {v:?}: {e}"))?;
        let [h0, h1, h2] = verdict.h;
        if h0 - h1 + h2 != r + a {
            return Err(format!("n={n} {v:?}: Euler characteristic broken by {:?}", verdict.h));
        }
        let must_hold = n >= r || d >= r * (r / n) + 2 || a <= 1;
        let allowed_failure = match (a, d) {
            (2, _) => (n, v) == (1, (5, 3, 2)),
            (_, 1..=3) => (n, v) == (1, (2, 3, 5)) || (n, v) == (1, (5, 3, 2)),
            _ => true,
        };
        if !verdict.wbn && (must_hold || !allowed_failure) {
            return Err(format!("n={n} {v:?} fails with h={:?}", verdict.h));
        }
    }
    Ok(format!("{} samples", samples.len()))
}

fn oracle_agreement() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 1_000 {
        let (n, v) = random_class(&mut rng, 4, 12, 12);
        if v.0 < 2 || v.2 < 1 {
            continue;
        }
        let c = ctx(n);
        let d1_max = v.1.min(2 * v.0 / n + 1);
        let bounds = SearchBox {
            r1_max: v.0,
            d1_max,
            a1_max: n * d1_max * d1_max + 1,
        };
        let fast = find_dv(&c, mv(v)).map_err(|e| e.to_string())?;
        let mut slow = brute_force_dv(&c, mv(v), bounds);
        slow.sort_by_key(|x| (x.d1, x.r1, x.epsilon));
        if fast != slow {
            return Err(format!("n={n} {v:?}: {fast:?} vs {slow:?}"));
        }
        if let Some(x) = fast.iter().find(|x| x.epsilon == 0 || x.m <= 0 || x.r1 >= v.0) {
            return Err(format!("n={n} {v:?}: unexpected member {x:?}"));
        }
        tested += 1;
    }
    Ok(format!("{tested} vectors"))
}

fn lattice_identities() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let draw = |rng: &mut StdRng| MukaiVector::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50), rng.gen_range(-50..=50));
    let sphericals: Vec<(Int, MukaiVector)> = (1..=6)
        .flat_map(|n| {
            (1..=5).flat_map(move |d1: Int| {
                let m = n * d1 * d1 + 1;
                (1..=m).filter(move |r1| m % r1 == 0).map(move |r1| (n, MukaiVector::new(r1, d1, m / r1)))
            })
        })
        .collect();
    for trial in 0..10_000 {
        let n = rng.gen_range(1..=10);
        let c = ctx(n);
        let (u, v, w) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let (x, y) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        let fail = |what: &str| Err(format!("trial {trial}, n={n}: {what} for {u} {v} {w}"));
        if c.pairing(u, v) != c.pairing(v, u) {
            return fail("symmetry");
        }
        if c.pairing(u * x + v * y, w) != x * c.pairing(u, w) + y * c.pairing(v, w) {
            return fail("bilinearity");
        }
        let (p, q) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
        if c.pairing(c.twist(u, p), c.twist(v, p)) != c.pairing(u, v) {
            return fail("twist isometry");
        }
        if c.twist(c.twist(u, p), q) != c.twist(u, p + q) || c.twist(u, 0) != u {
            return fail("twist group law");
        }
        let (sn, s) = sphericals[rng.gen_range(0..sphericals.len())];
        let cs = ctx(sn);
        let (ru, rv) = (cs.reflect(u, s).unwrap(), cs.reflect(v, s).unwrap());
        if cs.reflect(ru, s).unwrap() != u {
            return fail("reflection involution");
        }
        if cs.pairing(ru, rv) != cs.pairing(u, v) {
            return fail("reflection isometry");
        }
    }
    Ok("10000 triples".into())
}

fn shift_containment() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    let mut tested = 0;
    while tested < 1_000 {
        let (n, v) = random_class(&mut rng, 5, 12, 10);
        let p = rng.gen_range(1..=3);
        let floor = -p * v.1 * n;
        if v.2 < floor || (n == 1 && p == 1 && v.2 == floor) {
            continue;
        }
        let c = ctx(n);
        let allowed: BTreeSet<Triple> = find_dv(&c, mv(v))
            .unwrap()
            .iter()
            .map(|x| (x.r1, x.d1, x.a1))
            .chain([(1, 0, 1)])
            .map(|x| twist(n, x, p))
            .collect();
        let shifted = find_dv(&c, mv(twist(n, v, p))).unwrap();
        if let Some(x) = shifted.iter().find(|x| !allowed.contains(&(x.r1, x.d1, x.a1))) {
            return Err(format!("n={n} {v:?} p={p}: {x:?} not a shifted member"));
        }
        tested += 1;
    }
    let c = ctx(1);
    let got: Vec<Option<Int>> = (0..3)
        .map(|p| twisted_h1(&c, mv((5, 3, 2)), p).unwrap().exact())
        .collect();
    if got != [Some(1), Some(3), Some(0)] {
        return Err(format!("twists of (5,3,2): {got:?}"));
    }
    Ok(format!("{tested} samples, twists of (5,3,2) {got:?}"))
}

fn ulrich() -> Check {
    for n in 1..=4 {
        let c = ctx(n);
        for r in 2..=6 {
            for m in 1..=2 {
                let got = ulrich_vector(&c, r, m).map_err(|e| e.to_string())?;
                let want = ((r * m) % 2 == 0).then(|| mv((r, 3 * r * m / 2, r * (2 * m * m * n - 1))));
                if got != want || got.is_some_and(|v| c.square(v) <= 0) || (m == 2 && got.is_none()) {
                    return Err(format!("n={n} r={r} m={m}: {got:?}"));
                }
            }
        }
    }
    Ok("r in 2..=6, m in 1..=2, n in 1..=4".into())
}

fn minimal_a_monotone() -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..1_000 {
        let (n, r, d) = (rng.gen_range(1..=6), rng.gen_range(2..=12), rng.gen_range(1..=12));
        let c = ctx(n);
        let mut classifier = Classifier::new(c);
        let top = minimal_a(&c, r, d).map_err(|e| e.to_string())?;
        let mut holding = false;
        for a in (-r..=top).rev() {
            let wbn = classifier.weak_bn(mv((r, d, a))).map_err(|e| e.to_string())?.wbn;
            if holding && !wbn {
                return Err(format!("n={n} ({r},{d},{a}) fails below a passing class"));
            }
            holding |= wbn;
        }
    }
    Ok("1000 columns".into())
}

fn main() {
    let checks: [Criterion; 11] = [
        ("exceptional table", exceptional_rows),
        ("twisted exceptions", twisted_rows),
        ("ranks two and three", rank_three),
        ("rank <= 20 against families", rank_twenty),
        ("first family sweep", first_family_sweep),
        ("fast-path properties", fast_paths),
        ("destabilizer oracle", oracle_agreement),
        ("lattice identities", lattice_identities),
        ("shift containment", shift_containment),
        ("ulrich classes", ulrich),
        ("minimal a monotonicity", minimal_a_monotone),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
