use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mukai_bn::classify::{enumerate_counterexamples_with, ResolutionTree};
use mukai_bn::criteria::{globally_generated, twisted_h1, ulrich_vector, TwistedH1};
use mukai_bn::walls::{height_at_s_zero_sq, is_at_or_above_ox1, wall_between};
use mukai_bn::{
    brute_force_dv, find_dv, largest_tss_wall, Classifier, Destabilizer, Int, K3Context, MukaiVector,
    SearchBox, Wall, WallPosition,
};
use serde::Serialize;

use crate::args::{parse_int, parse_vector};
use crate::config::{parse_config, Config};
use crate::golden::{compare, GoldenSet};
use crate::output::{write_csv, write_records_csv, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const WORKERS_ENV: &str = "MUKAI_BN_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "mukai-bn", version, about = "Weak Brill-Noether for Mukai vectors on K3 surfaces of Picard rank one")]
struct Cli {
    /// `key = value` file supplying defaults for n, max-rank, workers and search bounds.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// Half the degree of the polarization, H^2 = 2n.
    #[arg(long, value_parser = parse_int)]
    n: Option<Int>,
    #[arg(long, value_parser = parse_int, conflicts_with = "v")]
    r: Option<Int>,
    #[arg(long, value_parser = parse_int, conflicts_with = "v")]
    d: Option<Int>,
    #[arg(long, value_parser = parse_int, conflicts_with = "v")]
    a: Option<Int>,
    /// The whole vector as `r,d,a`.
    #[arg(long, value_parser = parse_vector)]
    v: Option<MukaiVector>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide weak Brill-Noether and compute (h0, h1, h2) of the generic sheaf.
    Classify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        format: Format,
    },
    /// List every failure of weak Brill-Noether up to a rank bound.
    Enumerate {
        #[arg(long, value_parser = parse_int)]
        max_rank: Option<Int>,
        /// Only this value of n.
        #[arg(long, value_parser = parse_int)]
        n: Option<Int>,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// List the destabilizing classes D_v and D_v^BN.
    Destab {
        #[command(flatten)]
        target: Target,
        /// Scan an explicit box instead of using the divisor search.
        #[arg(long)]
        brute: bool,
        #[arg(long, value_parser = parse_int)]
        r1_max: Option<Int>,
        #[arg(long, value_parser = parse_int)]
        d1_max: Option<Int>,
        #[arg(long, value_parser = parse_int)]
        a1_max: Option<Int>,
        #[command(flatten)]
        format: Format,
    },
    /// The numerical wall of each destabilizing class.
    Walls {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        format: Format,
    },
    /// Whether the generic sheaf is globally generated.
    Gg {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        format: Format,
    },
    /// The Mukai vector of an Ulrich bundle for the polarization mH.
    Ulrich {
        #[arg(long, value_parser = parse_int)]
        n: Option<Int>,
        #[arg(long, value_parser = parse_int)]
        r: Int,
        #[arg(long, value_parser = parse_int)]
        m: Int,
        #[command(flatten)]
        format: Format,
    },
    /// h1 of the generic sheaf twisted by O(pH).
    TwistH1 {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_int)]
        p: Int,
        #[command(flatten)]
        format: Format,
    },
    /// Check the enumeration and the exceptional tables against golden CSV files.
    Golden {
        #[arg(long, value_parser = parse_int)]
        max_rank: Option<Int>,
        /// Directory holding the golden files; the bundled copies are used otherwise.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl From<mukai_bn::Error> for Failure {
    fn from(e: mukai_bn::Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

struct Settings {
    config: Config,
}

impl Settings {
    fn n(&self, flag: Option<Int>) -> Result<K3Context, Failure> {
        let n = flag
            .or(self.config.n)
            .ok_or_else(|| Failure::Usage("missing --n (or `n` in the config file)".into()))?;
        Ok(K3Context::new(n)?)
    }

    fn max_rank(&self, flag: Option<Int>) -> Result<Int, Failure> {
        flag.or(self.config.max_rank)
            .ok_or_else(|| Failure::Usage("missing --max-rank (or `max-rank` in the config file)".into()))
    }

    /// Flag, then environment, then config file; 0 means one per logical CPU.
    fn workers(&self, flag: Option<usize>) -> Result<usize, Failure> {
        if let Some(w) = flag {
            return Ok(w);
        }
        if let Some(raw) = std::env::var_os(WORKERS_ENV) {
            let text = raw.to_string_lossy();
            return text
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{WORKERS_ENV}={text} is not a worker count")));
        }
        Ok(self.config.workers.unwrap_or(0))
    }
}

fn vector(target: &Target) -> Result<MukaiVector, Failure> {
    if let Some(v) = target.v {
        return Ok(v);
    }
    match (target.r, target.d, target.a) {
        (Some(r), Some(d), Some(a)) => Ok(MukaiVector::new(r, d, a)),
        _ => Err(Failure::Usage("give the class as --r --d --a or as --v r,d,a".into())),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_text<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String, Failure> {
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    String::from_utf8(buf).map_err(|e| Failure::Internal(e.to_string()))
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    #[serde(flatten)]
    record: &'a OutputRecord,
    resolution: Option<&'a ResolutionTree>,
}

fn classify(ctx: K3Context, v: MukaiVector, format: Format) -> Result<String, Failure> {
    let verdict = Classifier::new(ctx).weak_bn(v)?;
    let record = OutputRecord::new(&ctx, v, &verdict, &find_dv(&ctx, v)?);
    if format.json {
        return json(&ClassifyJson {
            record: &record,
            resolution: verdict.resolution.as_ref(),
        });
    }
    if format.csv {
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &[record])?;
        return String::from_utf8(buf).map_err(|e| Failure::Internal(e.to_string()));
    }
    let [h0, h1, h2] = verdict.h;
    let status = if verdict.wbn { "satisfies" } else { "fails" };
    Ok(format!(
        "n={} v={v}: {status} weak Brill-Noether\nh = ({h0}, {h1}, {h2}) [{}]\n",
        ctx.n(),
        verdict.rule
    ))
}

fn enumerate(max_rank: Int, n: Option<Int>, workers: usize, format: Format) -> Result<String, Failure> {
    let found = enumerate_counterexamples_with(max_rank, n, workers)?;
    let mut records = Vec::with_capacity(found.len());
    for c in &found {
        let ctx = K3Context::new(c.n)?;
        records.push(OutputRecord::from_counterexample(c, &find_dv(&ctx, c.v)?));
    }
    if format.json {
        return json(&records);
    }
    let mut buf = Vec::new();
    write_records_csv(&mut buf, &records)?;
    String::from_utf8(buf).map_err(|e| Failure::Internal(e.to_string()))
}

#[derive(Serialize)]
struct DestabRow {
    #[serde(flatten)]
    x: Destabilizer,
    bn: bool,
}

#[derive(Serialize)]
struct DestabJson {
    n: Int,
    v: MukaiVector,
    dv: Vec<Destabilizer>,
    dv_bn: Vec<Destabilizer>,
    largest: Option<Destabilizer>,
}

fn destab(ctx: K3Context, v: MukaiVector, bounds: Option<SearchBox>, format: Format) -> Result<String, Failure> {
    let dv = match bounds {
        Some(b) => brute_force_dv(&ctx, v, b),
        None => find_dv(&ctx, v)?,
    };
    let dv_bn: Vec<Destabilizer> = dv.iter().copied().filter(Destabilizer::is_bn).collect();
    let largest = if v.r >= 0 && v.a >= 0 { largest_tss_wall(&ctx, v)? } else { None };
    if format.json {
        return json(&DestabJson {
            n: ctx.n(),
            v,
            dv,
            dv_bn,
            largest,
        });
    }
    let rows: Vec<DestabRow> = dv.iter().map(|&x| DestabRow { x, bn: x.is_bn() }).collect();
    if format.csv {
        return csv_text(&["r1", "d1", "a1", "m", "k", "epsilon", "bn"], &rows);
    }
    let mut out = format!("n={} v={v}: {} destabilizing classes, {} at or above O_X[1]\n", ctx.n(), dv.len(), dv_bn.len());
    for row in &rows {
        let x = row.x;
        let mark = if Some(x) == largest { "  largest wall" } else { "" };
        let _ = writeln!(out, "  {}  m={} k={} bn={}{mark}", x.v1(), x.m, x.k, row.bn);
    }
    Ok(out)
}

#[derive(Serialize)]
struct WallRow {
    r1: Int,
    d1: Int,
    a1: Int,
    alpha_num: Int,
    alpha_den: Int,
    rho_sq_num: Int,
    rho_sq_den: Int,
    height_sq_num: Int,
    height_sq_den: Int,
    position: WallPosition,
}

fn walls(ctx: K3Context, v: MukaiVector, format: Format) -> Result<String, Failure> {
    let mut rows = Vec::new();
    for x in find_dv(&ctx, v)? {
        let v1 = x.v1();
        let Wall::Semicircle { center, radius_sq } = wall_between(&ctx, v, v1)? else {
            continue;
        };
        let height = height_at_s_zero_sq(&ctx, v, v1)?;
        rows.push(WallRow {
            r1: v1.r,
            d1: v1.d,
            a1: v1.a,
            alpha_num: *center.numer(),
            alpha_den: *center.denom(),
            rho_sq_num: *radius_sq.numer(),
            rho_sq_den: *radius_sq.denom(),
            height_sq_num: *height.numer(),
            height_sq_den: *height.denom(),
            position: is_at_or_above_ox1(&ctx, v, v1)?,
        });
    }
    if format.json {
        return json(&rows);
    }
    csv_text(
        &[
            "r1",
            "d1",
            "a1",
            "alpha_num",
            "alpha_den",
            "rho_sq_num",
            "rho_sq_den",
            "height_sq_num",
            "height_sq_den",
            "position",
        ],
        &rows,
    )
}

fn gg(ctx: K3Context, v: MukaiVector, format: Format) -> Result<String, Failure> {
    let verdict = globally_generated(&ctx, v)?;
    if format.json {
        return json(&verdict);
    }
    if format.csv {
        return csv_text(&["status", "rule"], &[verdict]);
    }
    let status = serde_json::to_value(verdict.status)?;
    Ok(format!("{} ({})\n", status.as_str().unwrap_or("unknown"), verdict.rule))
}

#[derive(Serialize)]
struct UlrichJson {
    n: Int,
    r: Int,
    m: Int,
    v: Option<MukaiVector>,
}

fn ulrich(ctx: K3Context, r: Int, m: Int, format: Format) -> Result<String, Failure> {
    let v = ulrich_vector(&ctx, r, m)?;
    if format.json {
        return json(&UlrichJson { n: ctx.n(), r, m, v });
    }
    Ok(match v {
        Some(v) => format!("{v}\n"),
        None => "none\n".into(),
    })
}

#[derive(Serialize)]
struct TwistJson {
    n: Int,
    v: MukaiVector,
    p: Int,
    #[serde(flatten)]
    h1: TwistedH1,
}

fn twist_h1(ctx: K3Context, v: MukaiVector, p: Int, format: Format) -> Result<String, Failure> {
    let h1 = twisted_h1(&ctx, v, p)?;
    if format.json {
        return json(&TwistJson { n: ctx.n(), v, p, h1 });
    }
    Ok(match h1 {
        TwistedH1::Exact { h1, rule } => format!("{h1} ({rule})\n"),
        TwistedH1::Unknown { lo, hi: Some(hi) } => format!("unknown, between {lo} and {hi}\n"),
        TwistedH1::Unknown { lo, hi: None } => format!("unknown, at least {lo}\n"),
    })
}

fn golden(max_rank: Int, dir: Option<PathBuf>, workers: usize) -> Result<(String, bool), Failure> {
    let set = match dir {
        Some(d) => GoldenSet::load(&d),
        None => GoldenSet::bundled(),
    }
    .map_err(|e| Failure::Internal(e.to_string()))?;
    let report = compare(&set, max_rank, workers)?;
    let mut out = report.lines.join("\n");
    let _ = write!(out, "\n{} checks, {} mismatches\n", report.checked, report.mismatches);
    Ok((out, report.mismatches == 0))
}

fn dispatch(cli: Cli) -> Result<(String, bool), Failure> {
    let config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => Config::default(),
    };
    let s = Settings { config };
    let text = match cli.command {
        Command::Classify { target, format } => classify(s.n(target.n)?, vector(&target)?, format)?,
        Command::Enumerate {
            max_rank,
            n,
            workers,
            format,
        } => enumerate(s.max_rank(max_rank)?, n.or(s.config.n), s.workers(workers)?, format)?,
        Command::Destab {
            target,
            brute,
            r1_max,
            d1_max,
            a1_max,
            format,
        } => {
            let ctx = s.n(target.n)?;
            let v = vector(&target)?;
            let bounds = brute.then(|| {
                let d1 = d1_max.or(s.config.d1_max).unwrap_or(v.d);
                SearchBox {
                    r1_max: r1_max.or(s.config.r1_max).unwrap_or(v.r.abs().max(1)),
                    d1_max: d1,
                    a1_max: a1_max.or(s.config.a1_max).unwrap_or(ctx.n() * d1 * d1 + 1),
                }
            });
            destab(ctx, v, bounds, format)?
        }
        Command::Walls { target, format } => walls(s.n(target.n)?, vector(&target)?, format)?,
        Command::Gg { target, format } => gg(s.n(target.n)?, vector(&target)?, format)?,
        Command::Ulrich { n, r, m, format } => ulrich(s.n(n)?, r, m, format)?,
        Command::TwistH1 { target, p, format } => twist_h1(s.n(target.n)?, vector(&target)?, p, format)?,
        Command::Golden { max_rank, dir, workers } => {
            return golden(s.max_rank(max_rank).unwrap_or(20), dir, s.workers(workers)?);
        }
    };
    Ok((text, true))
}

fn emit(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Run the tool on `argv` (including the program name) and return the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = cli.out.clone();
    match dispatch(cli) {
        Ok((text, clean)) => {
            if let Err(e) = emit(out.as_ref(), &text) {
                eprintln!("error: {e}");
                return EXIT_INTERNAL;
            }
            if clean {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

