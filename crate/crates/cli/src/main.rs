use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use permclass::sampler::{Class, Sampler};
use permclass::series::class_counts;
use permclass::series::{
    closed_form_d, closed_form_d_left, closed_form_d_top, closed_form_h, closed_form_h_with,
    grammar_d, Poly, Series, Statistic, Trivariate,
};
use permclass::structure::{
    canonical_gridding_d, canonical_gridding_h, render_ascii, CanonicalGridding, TreeNode,
};
use permclass::verify::{run_suite, Suite};
use permclass::{enumerate_class, CountTable, Error, PatternBasis, Permutation};

/// Exact enumeration, structure and random generation for Av(4213, 2143)
/// and Av(4213, 2413, 2143).
#[derive(Parser, Debug)]
#[command(name = "permclass", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count class members of each size.
    Count(CountArgs),
    /// Show the canonical gridding of a permutation.
    Grid(GridArgs),
    /// Print generating-function coefficients.
    Series(SeriesArgs),
    /// Print the exact distribution of a statistic.
    Stats(StatsArgs),
    /// Draw uniform random class members.
    Sample(SampleArgs),
    /// Run the cross-check suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMethod {
    Brute,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "D", alias = "d")]
    D,
}

impl ClassArg {
    fn class(self) -> Class {
        match self {
            ClassArg::H => Class::H,
            ClassArg::D => Class::D,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StatArg {
    Top,
    Left,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Fast,
    All,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Comma-separated basis patterns.
    #[arg(long, default_value = "4213,2143")]
    basis: PatternBasis,
    /// Largest size.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "brute")]
    method: CountMethod,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// One-line notation, e.g. "2 4 1 3".
    #[arg(long)]
    perm: Permutation,
    /// Class whose canonical gridding is shown.
    #[arg(long, value_enum, default_value = "D")]
    class: ClassArg,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, value_enum, default_value = "D")]
    class: ClassArg,
    /// Truncation order in z.
    #[arg(long)]
    order: usize,
    /// Markers kept symbolic: any of t, l (comma-separated); none means all set to 1.
    #[arg(long, value_delimiter = ',')]
    markers: Vec<String>,
    /// Allow orders beyond the default cost limits.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long, value_enum, default_value = "D")]
    class: ClassArg,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "top")]
    stat: StatArg,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "D")]
    class: ClassArg,
    /// Print summary statistics of the batch as JSON instead of the samples.
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    suite: SuiteArg,
}

/// Orders above these need `--force`.
const TRIVARIATE_LIMIT: usize = 60;
const SERIES_LIMIT: usize = 1000;

enum Failure {
    Domain(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let json = cli.json;
    let result = match &cli.command {
        Command::Count(a) => count(a, json),
        Command::Grid(a) => grid(a, json),
        Command::Series(a) => series(a, json),
        Command::Stats(a) => stats(a, json),
        Command::Sample(a) => sample(a, json),
        Command::Verify(a) => verify(a, json),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn count(a: &CountArgs, json: bool) -> Outcome {
    let table = match a.method {
        CountMethod::Brute => enumerate_class(&a.basis, a.n)?,
        CountMethod::Series => {
            let class = if a.basis == PatternBasis::class_d() {
                Class::D
            } else if a.basis == PatternBasis::class_h() {
                Class::H
            } else {
                return Err(Failure::Domain(format!(
                    "no generating function for basis {}; series counts cover {} and {}",
                    a.basis,
                    PatternBasis::class_d(),
                    PatternBasis::class_h()
                )));
            };
            let (h, d) = class_counts(a.n + 1)?;
            let mut counts = match class {
                Class::H => h,
                Class::D => d,
            };
            counts.truncate(a.n + 1);
            counts[0] = BigInt::from(1);
            CountTable::new(counts)
        }
    };
    if json {
        let counts: Vec<String> = table.from_one().iter().map(BigInt::to_string).collect();
        let method = match a.method {
            CountMethod::Brute => "brute",
            CountMethod::Series => "series",
        };
        return Ok(to_json(
            &json!({ "basis": a.basis.to_string(), "method": method, "n": a.n, "counts": counts }),
        ));
    }
    Ok(format!("{table}\n"))
}

fn tree_json(t: &TreeNode) -> Value {
    let children: Vec<Value> = t.children.iter().map(tree_json).collect();
    json!([t.point.pos, t.point.val, children])
}

fn grid(a: &GridArgs, json: bool) -> Outcome {
    let cg: CanonicalGridding = match a.class {
        ClassArg::D => canonical_gridding_d(&a.perm)?,
        ClassArg::H => canonical_gridding_h(&a.perm)?,
    };
    let g = &cg.gridded;
    let tops: Vec<usize> = g.top_points().iter().map(|p| p.val).collect();
    let lefts: Vec<usize> = g.left_points().iter().map(|p| p.val).collect();
    if json {
        let trees: Vec<Value> = cg.forest.trees.iter().map(tree_json).collect();
        return Ok(to_json(&json!({
            "perm": a.perm.values(),
            "c": g.col_cut(),
            "r": g.row_cut(),
            "top_values": tops,
            "left_values": lefts,
            "trees": trees,
        })));
    }
    let set = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let mut out = String::new();
    writeln!(out, "perm: {}", a.perm).unwrap();
    writeln!(out, "c={} r={}", g.col_cut(), g.row_cut()).unwrap();
    writeln!(out, "left={{{}}}", set(&lefts)).unwrap();
    writeln!(out, "top={{{}}}", set(&tops)).unwrap();
    for (i, t) in cg.forest.trees.iter().enumerate() {
        writeln!(out, "tree {}: {}", i + 1, tree_text(t)).unwrap();
    }
    out.push_str(&render_ascii(g));
    Ok(out)
}

fn tree_text(t: &TreeNode) -> String {
    let me = format!("({},{})", t.point.pos, t.point.val);
    if t.children.is_empty() {
        return me;
    }
    let kids: Vec<String> = t.children.iter().map(tree_text).collect();
    format!("{me}[{}]", kids.join(" "))
}

fn power(name: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn monomial(parts: &[(&str, usize)]) -> String {
    let names: Vec<String> = parts.iter().filter_map(|&(n, e)| power(n, e)).collect();
    if names.is_empty() {
        "1".into()
    } else {
        names.join("*")
    }
}

/// Nonzero terms of one coefficient as `(monomial, value)`.
trait Terms {
    fn terms(&self, names: &[&str]) -> Vec<(String, BigInt)>;
}

impl Terms for BigInt {
    fn terms(&self, _: &[&str]) -> Vec<(String, BigInt)> {
        vec![("1".into(), self.clone())]
    }
}

impl Terms for Poly<BigInt> {
    fn terms(&self, names: &[&str]) -> Vec<(String, BigInt)> {
        self.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| c != &&BigInt::from(0))
            .map(|(a, c)| (monomial(&[(names[0], a)]), c.clone()))
            .collect()
    }
}

impl Terms for Trivariate {
    fn terms(&self, names: &[&str]) -> Vec<(String, BigInt)> {
        let mut out = Vec::new();
        for (a, inner) in self.coeffs().iter().enumerate() {
            for (b, c) in inner.coeffs().iter().enumerate() {
                if c != &BigInt::from(0) {
                    out.push((monomial(&[(names[0], a), (names[1], b)]), c.clone()));
                }
            }
        }
        out
    }
}

fn render_series<C: Terms + permclass::series::Ring>(
    s: &Series<C>,
    names: &[&str],
    class: &str,
    spec: &str,
    json: bool,
) -> String {
    let scalar = names.is_empty();
    if json {
        let coefficients: Vec<Value> = s
            .coeffs()
            .iter()
            .map(|c| {
                let terms = c.terms(names);
                if scalar {
                    Value::String(terms[0].1.to_string())
                } else {
                    Value::Object(
                        terms
                            .into_iter()
                            .map(|(m, v)| (m, Value::String(v.to_string())))
                            .collect(),
                    )
                }
            })
            .collect();
        return to_json(&json!({
            "class": class,
            "order": s.order(),
            "marker_spec": spec,
            "coefficients": coefficients,
        }));
    }
    let mut out = String::new();
    for (n, c) in s.coeffs().iter().enumerate() {
        let terms = c.terms(names);
        let text = if scalar {
            terms[0].1.to_string()
        } else if terms.is_empty() {
            "0".into()
        } else {
            terms
                .iter()
                .map(|(m, v)| match (m.as_str(), v == &BigInt::from(1)) {
                    ("1", _) => v.to_string(),
                    (_, true) => m.clone(),
                    _ => format!("{v}*{m}"),
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        writeln!(out, "{n}: {text}").unwrap();
    }
    out
}

fn series(a: &SeriesArgs, json: bool) -> Outcome {
    let mut top = false;
    let mut left = false;
    for m in &a.markers {
        match m.trim() {
            "t" => top = true,
            "l" => left = true,
            "" => {}
            other => {
                return Err(Failure::Domain(format!(
                    "unknown marker {other:?}, expected t or l"
                )))
            }
        }
    }
    let limit = if top && left {
        TRIVARIATE_LIMIT
    } else {
        SERIES_LIMIT
    };
    if a.order > limit && !a.force {
        return Err(Failure::Domain(format!(
            "order {} exceeds {limit} for these markers; pass --force",
            a.order
        )));
    }
    let class = match a.class {
        ClassArg::H => "H",
        ClassArg::D => "D",
    };
    if a.class == ClassArg::H && left {
        return Err(Failure::Domain(
            "members of H have no left points; drop the l marker".into(),
        ));
    }
    let spec = match (top, left) {
        (false, false) => "t=1,l=1",
        (true, false) => "t,l=1",
        (false, true) => "t=1,l",
        (true, true) => "t,l",
    };
    let out = match (a.class, top, left) {
        (ClassArg::H, false, _) => render_series(
            &closed_form_h_with(a.order, &BigInt::from(1), Default::default())?,
            &[],
            class,
            spec,
            json,
        ),
        (ClassArg::H, true, _) => {
            render_series(&closed_form_h(a.order)?, &["t"], class, spec, json)
        }
        (ClassArg::D, false, false) => {
            render_series(&closed_form_d(a.order)?, &[], class, spec, json)
        }
        (ClassArg::D, true, false) => {
            render_series(&closed_form_d_top(a.order)?, &["t"], class, spec, json)
        }
        (ClassArg::D, false, true) => {
            render_series(&closed_form_d_left(a.order)?, &["l"], class, spec, json)
        }
        (ClassArg::D, true, true) => {
            render_series(&grammar_d(a.order)?, &["t", "l"], class, spec, json)
        }
    };
    Ok(out)
}

fn stats(a: &StatsArgs, json: bool) -> Outcome {
    let stat = match (a.class, a.stat) {
        (ClassArg::H, StatArg::Top) => Statistic::HTop,
        (ClassArg::D, StatArg::Top) => Statistic::DTop,
        (ClassArg::D, StatArg::Left) => Statistic::DLeft,
        (ClassArg::H, StatArg::Left) => {
            return Err(Failure::Domain("members of H have no left points".into()));
        }
    };
    let dist = stat.distribution(a.n)?;
    let rows: Vec<(usize, BigInt, BigInt, f64)> = (0..=dist.max_value())
        .map(|k| {
            let p = dist.probability(k);
            (
                k,
                p.numer().clone(),
                p.denom().clone(),
                dist.probability_f64(k),
            )
        })
        .collect();
    if json {
        let mean = dist.mean();
        let variance = dist.variance();
        let rows: Vec<Value> = rows
            .iter()
            .map(|(k, num, den, f)| json!({ "k": k, "num": num.to_string(), "den": den.to_string(), "float": f }))
            .collect();
        return Ok(to_json(&json!({
            "class": stat.class_name(),
            "stat": stat.marker_name(),
            "n": a.n,
            "total": dist.total().to_string(),
            "mean": mean.to_string(),
            "variance": variance.to_string(),
            "rows": rows,
        })));
    }
    let mut out = String::from("n,k,num,den,float\n");
    for (k, num, den, f) in rows {
        writeln!(out, "{},{k},{num},{den},{f}", a.n).unwrap();
    }
    Ok(out)
}

fn sample(a: &SampleArgs, json: bool) -> Outcome {
    let sampler = Sampler::new(a.class.class(), a.n);
    if a.stats {
        return Ok(to_json(&sampler.sample_stats(a.n, a.count, a.seed)?));
    }
    let perms = sampler.sample_many(a.n, a.count, a.seed)?;
    if json {
        return Ok(to_json(&perms));
    }
    let mut out = String::new();
    for p in perms {
        writeln!(out, "{p}").unwrap();
    }
    Ok(out)
}

fn verify(a: &VerifyArgs, json: bool) -> Outcome {
    let suite = match a.suite {
        SuiteArg::Fast => Suite::Fast,
        SuiteArg::All => Suite::All,
    };
    let checks = run_suite(suite);
    let ok = checks.iter().all(|c| c.passed);
    let out = if json {
        to_json(&checks)
    } else {
        let mut out = String::new();
        for c in &checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{mark} {:<22} {} ({:.2}s)",
                c.name, c.detail, c.seconds
            )
            .unwrap();
        }
        out
    };
    if ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Checks)
    }
}
