use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use qcol::bounds::{bound_report, prime_scan, scan_csv, BoundReport};
use qcol::coloring::{collapse_and_check, colorability, kh_check, min_colors_on_diagram, verify_coloring};
use qcol::families::{
    pretzel_alexander, pretzel_mincol_report, torus_alexander, torus_mincol_interval, PretzelParams, TorusParams,
};
use qcol::laurent::{alexander_matrix, reduce_normalize};
use qcol::primes::{is_odd_prime, trial_factor};
use qcol::registry::{resolve, Registry, Resolved};
use qcol::{Coloring, Diagram, LaurentPoly, QuandleParams};

/// Alexander quandle colorings, reduced Alexander polynomials and
/// minimum-color bounds for knot and link diagrams.
///
/// INPUT is a registry name (`7_3`, `L4a1_1`), a PD code, `torus:a,b`,
/// `pretzel:a`, or a file containing a PD code. The registry file can be
/// replaced through the QF_REGISTRY environment variable.
#[derive(Parser)]
#[command(name = "qcol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a diagram and print its arcs and crossings.
    Parse(Input),
    /// Reduced Alexander polynomial and the raw first minor.
    Alexander(Input),
    /// Lower bounds on the minimum number of colors.
    Bounds(BoundsOpts),
    /// Colorability, minimum colorings, the arc-distinct check, or
    /// verification of a coloring file.
    Color(ColorOpts),
    /// Collapse the coloring matrix along a minimal coloring and check the
    /// determinant bounds.
    Collapse(CollapseOpts),
    /// Torus and pretzel family data.
    Families(FamilyOpts),
    /// Values of m in a range where the reduced polynomial is an odd prime.
    Scan(ScanOpts),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Input {
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[command(group = ArgGroup::new("mode").required(true).args(["m", "scan"]))]
struct BoundsOpts {
    #[command(flatten)]
    input: Input,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = parse_range)]
    scan: Option<RangeInclusive<i64>>,
    /// Prime modulus; defaults to the polynomial value at m.
    #[arg(long, conflicts_with = "scan")]
    p: Option<BigInt>,
}

#[derive(Args)]
#[command(group = ArgGroup::new("action").args(["min", "kh", "verify"]))]
struct ColorOpts {
    #[command(flatten)]
    input: Input,
    /// Defaults to the reduced polynomial value at m when that is an odd prime.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "verify")]
    m: Option<i64>,
    /// Find a coloring with the fewest distinct colors.
    #[arg(long)]
    min: bool,
    /// Look for a coloring with a different color on every arc.
    #[arg(long)]
    kh: bool,
    /// JSON coloring file to check against the diagram.
    #[arg(long, value_name = "FILE")]
    verify: Option<PathBuf>,
}

#[derive(Args)]
struct CollapseOpts {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "coloring")]
    m: Option<i64>,
    /// JSON coloring file; a minimal coloring is searched for otherwise.
    #[arg(long, value_name = "FILE")]
    coloring: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyOpts {
    /// `torus:a,b` or `pretzel:a`.
    input: String,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ScanOpts {
    #[command(flatten)]
    input: Input,
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = parse_range, default_value = "2..20")]
    range: RangeInclusive<i64>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn load(input: &str) -> Result<Resolved> {
    let registry = Registry::from_env()?;
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut r = resolve(text.trim(), &registry).with_context(|| format!("in {}", path.display()))?;
        if r.name == "<pd>" {
            r.name = path.file_stem().map_or(r.name, |s| s.to_string_lossy().into_owned());
            r.diagram = r.diagram.with_name(r.name.clone());
        }
        return Ok(r);
    }
    Ok(resolve(input, &registry)?)
}

fn reduced(d: &Diagram) -> Result<(LaurentPoly, LaurentPoly)> {
    let minor = alexander_matrix(d)?.first_minor(0, 0)?;
    let reduced = reduce_normalize(&minor, d.components)?;
    Ok((minor, reduced))
}

fn composite_note(v: &BigInt) -> String {
    let (factors, rest) = trial_factor(v, 1 << 16);
    let mut parts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    if rest != BigInt::from(1) {
        parts.push(rest.to_string());
    }
    if parts.len() > 1 {
        format!("{v} = {}", parts.join(" * "))
    } else {
        v.to_string()
    }
}

/// The explicit `--p`, or the reduced polynomial value at `m` when it is an
/// odd prime. The flag records whether `p` was derived.
fn choose_p(d: &Diagram, m: i64, p: Option<u64>) -> Result<(u64, bool)> {
    if let Some(p) = p {
        return Ok((p, false));
    }
    let (_, poly) = reduced(d)?;
    let v = poly.evaluate(&BigInt::from(m))?;
    ensure!(is_odd_prime(&v), "--p is required: the reduced polynomial at m = {m} is {}, not an odd prime", composite_note(&v));
    let p = u64::try_from(&v).map_err(|_| anyhow!("p = {v} does not fit in 64 bits"))?;
    Ok((p, true))
}

fn colors_text(d: &Diagram, c: &Coloring) -> String {
    d.arcs.iter().map(|a| format!("{a}:{}", c.colors[a])).collect::<Vec<_>>().join(" ")
}

fn emit(format: Format, value: Value, text: String) -> Result<()> {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value)?),
        Format::Csv => bail!("csv output is only available for scans"),
    }
    Ok(())
}

fn cmd_parse(o: &Input) -> Result<()> {
    let r = load(&o.input)?;
    let d = &r.diagram;
    let signs: Vec<&str> = d.crossings.iter().map(|x| if x.sign.value() > 0 { "+" } else { "-" }).collect();
    let mut text = String::new();
    writeln!(text, "name: {}", r.name)?;
    writeln!(text, "crossings: {}", d.crossing_count())?;
    writeln!(text, "arcs: {}", d.arc_count())?;
    writeln!(text, "components: {}", d.components)?;
    writeln!(text, "alternating: {}", r.pd.is_alternating())?;
    writeln!(text, "reduced: {}", r.pd.is_reduced())?;
    writeln!(text, "signs: {}", signs.join(" "))?;
    for x in &d.crossings {
        writeln!(text, "  {} under {} -> {}", x.over, x.under_in, x.under_out)?;
    }
    writeln!(text, "pd: {}", r.pd)?;
    let value = json!({
        "name": r.name,
        "pd": r.pd.to_string(),
        "crossings": d.crossing_count(),
        "arcs": d.arc_count(),
        "components": d.components,
        "alternating": r.pd.is_alternating(),
        "reduced": r.pd.is_reduced(),
        "diagram": d,
    });
    emit(o.format, value, text)
}

fn cmd_alexander(o: &Input) -> Result<()> {
    let r = load(&o.input)?;
    let (minor, poly) = reduced(&r.diagram)?;
    let text = format!("{poly}\nminor: {minor}\n");
    let value = json!({ "name": r.name, "reduced": poly, "reduced_text": poly.to_string(), "minor": minor, "minor_text": minor.to_string() });
    emit(o.format, value, text)
}

fn report_text(r: &BoundReport) -> Result<String> {
    let show = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    let mut t = String::new();
    if let Some(name) = &r.knot_name {
        writeln!(t, "knot: {name}")?;
    }
    writeln!(t, "polynomial: {}", r.poly)?;
    writeln!(t, "m: {}", r.m)?;
    writeln!(t, "value: {}", r.value)?;
    writeln!(t, "p: {} ({})", r.p, serde_json::to_value(r.primality)?.as_str().unwrap_or("?"))?;
    writeln!(t, "degree k: {}", r.k)?;
    writeln!(t, "hypothesis: {}", serde_json::to_value(r.hypothesis)?.as_str().unwrap_or("?"))?;
    writeln!(t, "improved: {}", show(r.improved))?;
    writeln!(t, "kl: {}", show(r.kl))?;
    writeln!(t, "lower: {}", show(r.best_lower()))?;
    if let Some(u) = &r.upper_bound {
        writeln!(t, "upper: {} ({})", u.value, u.source)?;
    }
    for n in &r.notes {
        writeln!(t, "note: {n}")?;
    }
    Ok(t)
}

fn cmd_bounds(o: &BoundsOpts) -> Result<()> {
    let r = load(&o.input.input)?;
    let (_, poly) = reduced(&r.diagram)?;
    let components = r.diagram.components;
    if let Some(m) = o.m {
        let report = bound_report(&poly, components, m, o.p.as_ref())?.with_name(&r.name);
        let text = report_text(&report)?;
        return emit(o.input.format, serde_json::to_value(&report)?, text);
    }
    let range = o.scan.clone().expect("clap requires --m or --scan");
    let rows = prime_scan(&poly, *range.start(), *range.end())?;
    if o.input.format == Format::Csv {
        print!("{}", scan_csv(&rows));
        return Ok(());
    }
    let reports = rows
        .iter()
        .map(|row| Ok(bound_report(&poly, components, row.m, None)?.with_name(&r.name)))
        .collect::<Result<Vec<_>>>()?;
    let show = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    let mut text = format!("{}: {poly}\n{:>6} {:>24} {:>8} {:>4}\n", r.name, "m", "p", "improved", "kl");
    for rep in &reports {
        writeln!(text, "{:>6} {:>24} {:>8} {:>4}", rep.m, rep.p.to_string(), show(rep.improved), show(rep.kl))?;
    }
    emit(o.input.format, serde_json::to_value(&reports)?, text)
}

fn read_coloring(path: &Path) -> Result<Coloring> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing coloring {}", path.display()))
}

fn cmd_color(o: &ColorOpts) -> Result<()> {
    let r = load(&o.input.input)?;
    let d = &r.diagram;
    if let Some(path) = &o.verify {
        let c = read_coloring(path)?;
        ensure!(o.m.is_none_or(|m| m == c.m), "--m {} differs from the coloring file's m = {}", o.m.unwrap(), c.m);
        ensure!(o.p.is_none_or(|p| p == c.p), "--p {} differs from the coloring file's p = {}", o.p.unwrap(), c.p);
        c.params()?;
        ensure!(d.arcs.iter().all(|a| c.colors.contains_key(a)), "coloring does not assign every arc");
        ensure!(verify_coloring(d, &c), "coloring violates a crossing relation");
        let text = format!("valid: true\np: {}\nm: {}\ncolors: {}\ntrivial: {}\n", c.p, c.m, c.distinct_count(), c.is_trivial());
        let value = json!({ "valid": true, "p": c.p, "m": c.m, "colors": c.distinct_count(), "trivial": c.is_trivial() });
        return emit(o.input.format, value, text);
    }
    let m = o.m.expect("clap requires --m");
    let (p, auto) = choose_p(d, m, o.p)?;
    let params = QuandleParams::new(p, m)?;
    let p_line = format!("p: {p}{}\nm: {m}\n", if auto { " (reduced polynomial value)" } else { "" });
    if o.min {
        let mc = min_colors_on_diagram(d, &params)?;
        let text = format!("{p_line}colors: {}\nwitness: {}\n", mc.count, colors_text(d, &mc.witness));
        let value = json!({ "name": r.name, "p": p, "p_derived": auto, "m": m, "colors": mc.count, "witness": mc.witness, "classes_examined": mc.classes_examined.to_string() });
        return emit(o.input.format, value, text);
    }
    if o.kh {
        ensure!(r.pd.is_alternating(), "the arc-distinct check needs an alternating diagram");
        ensure!(r.pd.is_reduced(), "the arc-distinct check needs a reduced diagram");
        let kh = kh_check(d, &params, true)?;
        let mut text = format!("{p_line}kh: {}\n", kh.holds);
        if let Some(w) = &kh.witness {
            writeln!(text, "witness: {}", colors_text(d, w))?;
        }
        writeln!(text, "scope: {}", kh.scope)?;
        let value = json!({ "name": r.name, "p_derived": auto, "report": kh });
        return emit(o.input.format, value, text);
    }
    let c = colorability(d, &params)?;
    let text = format!(
        "{p_line}colorable: {}\nkernel dimension: {}\nrank: {}\nreduced value: {}\n",
        c.colorable, c.kernel_dim, c.rank, c.reduced_value
    );
    let value = json!({ "name": r.name, "p_derived": auto, "report": c });
    emit(o.input.format, value, text)
}

fn cmd_collapse(o: &CollapseOpts) -> Result<()> {
    let r = load(&o.input.input)?;
    let d = &r.diagram;
    let coloring = match &o.coloring {
        Some(path) => read_coloring(path)?,
        None => {
            let m = o.m.expect("clap requires --m");
            let (p, _) = choose_p(d, m, o.p)?;
            min_colors_on_diagram(d, &QuandleParams::new(p, m)?)?.witness
        }
    };
    let rep = collapse_and_check(d, &coloring)?;
    let mut text = String::new();
    writeln!(text, "p: {}\nm: {}\nd: {}", rep.p, rep.m, rep.d)?;
    writeln!(text, "coloring: {}", colors_text(d, &coloring))?;
    writeln!(text, "rank A1: {}", rep.rank_a1)?;
    writeln!(text, "B rows: {:?}", rep.a2_rows)?;
    for row in &rep.b {
        writeln!(text, "  {}", row.iter().map(|x| format!("{x:>5}")).collect::<String>())?;
    }
    writeln!(text, "det B: {}", rep.det_b)?;
    writeln!(text, "p divides det B: {}", rep.p_divides_det)?;
    writeln!(text, "bound M^(d-1): {}", rep.bound)?;
    writeln!(text, "|det B| <= bound: {}", rep.det_within_bound)?;
    writeln!(text, "difference vector in kernel: {}", rep.difference_vector_in_kernel)?;
    emit(o.input.format, serde_json::to_value(&rep)?, text)?;
    ensure!(rep.bounds_hold(), "collapse check failed for this coloring");
    ensure!(rep.rank_a1 + 1 == rep.d, "rank A1 = {} but d - 1 = {}", rep.rank_a1, rep.d - 1);
    Ok(())
}

fn family_ints(input: &str, body: &str) -> Result<Vec<i64>> {
    body.split(',').map(|s| s.trim().parse::<i64>().with_context(|| format!("bad family specifier {input:?}"))).collect()
}

fn cmd_families(o: &FamilyOpts) -> Result<()> {
    let input = o.input.trim();
    let mut text = String::new();
    let mut value = serde_json::Map::new();
    if let Some(body) = input.strip_prefix("torus:") {
        let [a, b] = family_ints(input, body)?[..] else { bail!("expected torus:a,b") };
        let tp = TorusParams::new(a, b)?;
        let poly = torus_alexander(&tp)?;
        let (lo, hi) = tp.interval_formula();
        writeln!(text, "name: {}\ncrossing number: {}\npolynomial: {poly}", tp.name(), tp.crossing_number())?;
        writeln!(text, "interval: {lo}..{hi}\npd: {}", tp.pd_code())?;
        value.insert("name".into(), json!(tp.name()));
        value.insert("crossing_number".into(), json!(tp.crossing_number()));
        value.insert("polynomial".into(), json!(poly.to_string()));
        value.insert("interval_formula".into(), json!([lo, hi]));
        value.insert("pd".into(), json!(tp.pd_code().to_string()));
        if let Some(m) = o.m {
            let iv = torus_mincol_interval(&tp, m)?;
            writeln!(text, "m: {m}\np: {}\nmincol: {}..{}\nkl: {}", iv.p, iv.lower, iv.upper, iv.kl)?;
            value.insert("interval".into(), serde_json::to_value(&iv)?);
        }
    } else if let Some(body) = input.strip_prefix("pretzel:") {
        let [a] = family_ints(input, body)?[..] else { bail!("expected pretzel:a") };
        let pp = PretzelParams::from_a(a)?;
        let poly = pretzel_alexander(&pp)?;
        writeln!(text, "name: {}\npolynomial: {poly}\npd: {}", pp.name(), pp.pd_code())?;
        value.insert("name".into(), json!(pp.name()));
        value.insert("polynomial".into(), json!(poly.to_string()));
        value.insert("pd".into(), json!(pp.pd_code().to_string()));
        if let Some(m) = o.m {
            let report = pretzel_mincol_report(&pp, m)?;
            text.push_str(&report_text(&report)?);
            value.insert("report".into(), serde_json::to_value(&report)?);
        }
    } else {
        bail!("unknown family {input:?}; expected torus:a,b or pretzel:a");
    }
    emit(o.format, Value::Object(value), text)
}

fn cmd_scan(o: &ScanOpts) -> Result<()> {
    let r = load(&o.input.input)?;
    let (_, poly) = reduced(&r.diagram)?;
    let rows = prime_scan(&poly, *o.range.start(), *o.range.end())?;
    match o.input.format {
        Format::Csv => print!("{}", scan_csv(&rows)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json!({ "name": r.name, "polynomial": poly.to_string(), "rows": rows }))?),
        Format::Text => {
            println!("{}: {poly}", r.name);
            for row in &rows {
                println!("m = {:>4}  p = {}", row.m, row.value);
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Parse(o) => cmd_parse(o),
        Command::Alexander(o) => cmd_alexander(o),
        Command::Bounds(o) => cmd_bounds(o),
        Command::Color(o) => cmd_color(o),
        Command::Collapse(o) => cmd_collapse(o),
        Command::Families(o) => cmd_families(o),
        Command::Scan(o) => cmd_scan(o),
    }
}
