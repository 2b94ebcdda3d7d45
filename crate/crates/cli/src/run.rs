use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use burnside::bounds::{
    self, compare_bounds, default_grid, evaluate_bound, load_catalog, verify_bound_on_grid, BoundRow, BoundSpec,
    SpecSummary,
};
use burnside::expoly::{catalog, certify_absolutely_monotonic, parse_expoly, FailureReason};
use burnside::gamma_ref::{CatalogFunction, EvalPrecision};
use burnside::monotonicity::{
    check_cm, check_lcm, check_lcm_ln, check_region_claims, region_representatives, theorem1_claims,
    theorem2_claims, witness_claims, CMReport, Claim, ClaimKind, ClaimOutcome, Expectation, Grid, RegionFamily, RegionReport,
};
use burnside::suite::{run_criterion, CRITERIA};
use burnside::{Dd, Error};
use serde::Serialize;

use crate::cli::{Command, Format, GridArgs, Output, Selector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
/// Failures that are not the caller's fault, such as an unwritable output file.
pub const EXIT_RUNTIME: i32 = 1;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Json(_) | Error::Csv(_) | Error::Io(_) | Error::Overflow(_) | Error::Envelope { .. } => {
                Failure::Runtime(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Failure {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(output: &Output, verb: &str, body: &[u8]) -> Result<(), Failure> {
    let mut buf = Vec::new();
    if output.format == Format::Csv && !output.no_header {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        writeln!(buf, "# burnside {} {verb} generated_at_unix={now}", env!("CARGO_PKG_VERSION"))?;
    }
    buf.extend_from_slice(body);
    write_to(output.out.as_deref(), &buf)
}

fn write_to(path: Option<&std::path::Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn csv_rows<R: Serialize>(rows: &[R]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| Failure::Runtime(e.to_string()))
}

fn json<T: Serialize + ?Sized>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("serializable");
    s.push(b'\n');
    s
}

fn render<R: Serialize>(output: &Output, verb: &str, rows: &[R]) -> Result<(), Failure> {
    let body = match output.format {
        Format::Csv => csv_rows(rows)?,
        Format::Json => json(rows),
    };
    emit(output, verb, &body)
}

pub fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Eval { function, params, x, output } => eval(&function, params, &x, &output),
        Command::CertifyAm { function, expr, max_depth, out } => certify(function, expr, max_depth, out),
        Command::VerifyCm { selector, grid, max_order, negate, digits, output } => {
            verify(ClaimKind::Cm, &selector, &grid, max_order, negate, digits, &output)
        }
        Command::VerifyLcm { selector, grid, max_order, digits, output } => {
            verify(ClaimKind::Lcm, &selector, &grid, max_order, false, digits, &output)
        }
        Command::Regions { family, p, q, representatives, lo, hi, count, output } => {
            regions(family, p, q, representatives, Grid::spanning(lo, hi, count)?, &output)
        }
        Command::Bounds { spec, k, catalog, summary, lo, hi, count, output } => {
            let grid = match (lo, hi) {
                (Some(lo), Some(hi)) => Some(Grid::spanning(lo, hi, count)?),
                _ => None,
            };
            bounds_cmd(&spec, k, catalog, summary, grid, &output)
        }
        Command::Compare { a, b, side, lo, hi, k, output } => compare(&a, &b, &side, lo, hi, k, &output),
        Command::Report { criterion, output } => report(&criterion, &output),
    }
}

fn param_map(params: Vec<(String, f64)>) -> BTreeMap<String, f64> {
    params.into_iter().collect()
}

#[derive(Serialize)]
struct EvalRow<'a> {
    function: &'a str,
    x: f64,
    value: f64,
}

fn eval(name: &str, params: Vec<(String, f64)>, xs: &[f64], output: &Output) -> Outcome {
    let f = CatalogFunction::from_name(name, &param_map(params))?;
    let p = EvalPrecision::default();
    let label = f.label();
    let rows = xs
        .iter()
        .map(|&x| Ok(EvalRow { function: &label, x, value: f.eval(Dd::from_f64(x), &p)?.hi() }))
        .collect::<Result<Vec<_>, Failure>>()?;
    render(output, "eval", &rows)?;
    Ok(EXIT_OK)
}

fn certify(function: Option<String>, expr: Option<String>, max_depth: u32, out: Option<std::path::PathBuf>) -> Outcome {
    let f = match (&function, &expr) {
        (Some(name), _) => catalog::named(name)?,
        (None, Some(text)) => parse_expoly(text)?,
        (None, None) => return Err(usage("give --function or --expr")),
    };
    match certify_absolutely_monotonic(&f, max_depth) {
        Ok(c) => {
            let mut text = c.to_json().into_bytes();
            text.push(b'\n');
            write_to(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("certification failed: {e}");
            Ok(match e.reason {
                FailureReason::DepthExhausted(_) => EXIT_EXHAUSTED,
                FailureReason::NegativeLimit(_) => EXIT_CHECK_FAILED,
            })
        }
    }
}

#[derive(Serialize)]
struct ClaimRow {
    id: String,
    kind: &'static str,
    expectation: &'static str,
    passed: bool,
    flagged: bool,
    consistent: bool,
    first_failure: Option<u32>,
}

fn item_matches(id: &str, item: &str) -> bool {
    id == item || id.ends_with(&format!("-{item}")) || id.ends_with(&format!("-item{item}")) || id.ends_with(&format!("-fn{item}"))
}

fn select_claims(kind: ClaimKind, s: &Selector) -> Result<Vec<Claim>, Failure> {
    let theorem = match (kind, s.theorem1, s.theorem2) {
        (_, true, true) => return Err(usage("choose one of --theorem1 and --theorem2")),
        (ClaimKind::Cm, _, true) => return Err(usage("--theorem2 claims are LCM claims; use verify-lcm")),
        (ClaimKind::Lcm, true, _) => return Err(usage("--theorem1 claims are CM claims; use verify-cm")),
        (_, true, _) => Some(theorem1_claims()),
        (_, _, true) => Some(theorem2_claims()),
        _ => None,
    };
    let mut claims = Vec::new();
    if let Some(all) = theorem {
        if !s.all && s.item.is_empty() {
            return Err(usage("give --item or --all with a theorem selector"));
        }
        if s.all {
            claims.extend(all);
        } else {
            for item in &s.item {
                let c = all
                    .iter()
                    .find(|c| item_matches(&c.id, item))
                    .ok_or_else(|| usage(format!("unknown item `{item}`")))?;
                claims.push(c.clone());
            }
        }
    }
    if s.witnesses {
        claims.extend(witness_claims().into_iter().filter(|c| c.kind == kind));
    }
    if claims.is_empty() {
        return Err(usage("give --function, --theorem1/--theorem2, or --witnesses"));
    }
    Ok(claims)
}

fn custom_grid(g: &GridArgs, lo: f64) -> Result<Option<Grid>, Failure> {
    match g.step {
        Some(step) => Ok(Some(Grid::new(g.start.unwrap_or(lo + 0.01), step, g.count)?)),
        None if g.start.is_some() => Err(usage("--start needs --step")),
        None => Ok(None),
    }
}

fn verify(
    kind: ClaimKind,
    s: &Selector,
    g: &GridArgs,
    max_order: u32,
    negate: bool,
    digits: u32,
    output: &Output,
) -> Outcome {
    EvalPrecision::new(digits, 20.0)?;
    let verb = if kind == ClaimKind::Cm { "verify-cm" } else { "verify-lcm" };
    if let Some(name) = &s.function {
        if s.theorem1 || s.theorem2 || s.witnesses {
            return Err(usage("--function cannot be combined with claim selectors"));
        }
        let f = CatalogFunction::from_name(name, &param_map(s.params.clone()))?;
        let dom = f.domain();
        let grid = Grid::new(g.start.unwrap_or(dom.lo + 0.01), g.step.unwrap_or(0.125), g.count)?;
        grid.check_within(&dom, max_order as usize)?;
        let p = EvalPrecision::default();
        let label = f.label();
        let eval = |x: Dd| f.eval(x, &p);
        let report: CMReport = match kind {
            ClaimKind::Cm => check_cm(&label, &eval, &grid, max_order, if negate { -1 } else { 1 })?,
            ClaimKind::Lcm => match f.ln_eval(Dd::from_f64(grid.start), &p) {
                Some(_) => {
                    let ln = |x: Dd| f.ln_eval(x, &p).expect("has a log form");
                    check_lcm_ln(&label, &ln, &grid, max_order)?
                }
                None => check_lcm(&label, &eval, &grid, max_order)?,
            },
        };
        let body = match output.format {
            Format::Csv => {
                let mut b = Vec::new();
                report.write_csv(true, &mut b)?;
                b
            }
            Format::Json => {
                let mut b = report.to_json().into_bytes();
                b.push(b'\n');
                b
            }
        };
        emit(output, verb, &body)?;
        return Ok(if report.flagged() { EXIT_CHECK_FAILED } else { EXIT_OK });
    }
    let claims = select_claims(kind, s)?;
    let mut rows = Vec::new();
    let mut outcomes = Vec::new();
    for c in &claims {
        let out = match custom_grid(g, c.domain.lo)? {
            Some(grid) => {
                let r = c.run_on(&grid, max_order)?;
                let (passed, flagged) = (r.passed(), r.flagged());
                let consistent = match c.expectation {
                    Expectation::Holds => passed && !flagged,
                    Expectation::Fails => flagged,
                };
                ClaimOutcome { id: c.id.clone(), kind: c.kind, expectation: c.expectation, passed, flagged, consistent, reports: vec![r] }
            }
            None => c.run()?,
        };
        rows.push(ClaimRow {
            id: out.id.clone(),
            kind: if c.kind == ClaimKind::Cm { "cm" } else { "lcm" },
            expectation: if c.expectation == Expectation::Holds { "holds" } else { "fails" },
            passed: out.passed,
            flagged: out.flagged,
            consistent: out.consistent,
            first_failure: out.reports.iter().filter_map(CMReport::first_failure).min(),
        });
        outcomes.push(out);
    }
    let code = if rows.iter().all(|r| r.consistent) { EXIT_OK } else { EXIT_CHECK_FAILED };
    match output.format {
        Format::Csv => render(output, verb, &rows)?,
        Format::Json => emit(output, verb, &json(&outcomes))?,
    }
    Ok(code)
}

#[derive(Serialize)]
struct RegionRow {
    family: &'static str,
    p: f64,
    q: f64,
    regions: String,
    claim: String,
    min_value: f64,
    max_value: f64,
    sign_ok: bool,
    monotone_ok: bool,
    holds: Option<bool>,
}

impl From<&RegionReport> for RegionRow {
    fn from(r: &RegionReport) -> RegionRow {
        RegionRow {
            family: if r.family == RegionFamily::Lambda { "lambda" } else { "phi" },
            p: r.p,
            q: r.q,
            regions: r.regions.join(";"),
            claim: r.claim.map(|c| serde_json::to_value(c).expect("enum").as_str().unwrap_or("").to_string()).unwrap_or_default(),
            min_value: r.min_value,
            max_value: r.max_value,
            sign_ok: r.sign_ok,
            monotone_ok: r.monotone_ok,
            holds: r.holds,
        }
    }
}

fn regions(
    family: Option<String>,
    p: Option<f64>,
    q: Option<f64>,
    representatives: bool,
    grid: Grid,
    output: &Output,
) -> Outcome {
    let cases: Vec<(RegionFamily, f64, f64)> = if representatives {
        region_representatives().into_iter().map(|(f, _, p, q)| (f, p, q)).collect()
    } else {
        let fam: RegionFamily = family.as_deref().unwrap_or_default().parse()?;
        match (p, q) {
            (Some(p), Some(q)) => vec![(fam, p, q)],
            _ => return Err(usage("--family needs --p and --q")),
        }
    };
    let reports =
        cases.iter().map(|&(f, p, q)| check_region_claims(f, p, q, &grid)).collect::<Result<Vec<_>, _>>()?;
    let code = if reports.iter().any(|r| r.holds == Some(false)) { EXIT_CHECK_FAILED } else { EXIT_OK };
    match output.format {
        Format::Csv => render(output, "regions", &reports.iter().map(RegionRow::from).collect::<Vec<_>>())?,
        Format::Json => emit(output, "regions", &json(&reports))?,
    }
    Ok(code)
}

fn with_k(s: BoundSpec, k: Option<f64>) -> BoundSpec {
    match k {
        Some(k) if s.params.contains_key("k") => s.with_param("k", k),
        _ => s,
    }
}

fn bounds_cmd(
    names: &[String],
    k: Option<f64>,
    catalog_path: Option<std::path::PathBuf>,
    summary: bool,
    grid: Option<Grid>,
    output: &Output,
) -> Outcome {
    let all = match catalog_path {
        Some(p) => load_catalog(&std::fs::read_to_string(&p).map_err(|e| usage(format!("{}: {e}", p.display())))?)?,
        None => bounds::catalog(),
    };
    let specs: Vec<BoundSpec> = if names.is_empty() {
        all
    } else {
        names
            .iter()
            .map(|n| {
                all.iter().find(|s| &s.name == n).cloned().ok_or_else(|| usage(format!("unknown bound `{n}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut rows = Vec::new();
    let mut sums = Vec::new();
    let mut code = EXIT_OK;
    for s in specs.into_iter().map(|s| with_k(s, k)) {
        let g = grid.unwrap_or_else(|| default_grid(&s));
        let violations = verify_bound_on_grid(&s, &g)?;
        if s.asserted && !violations.is_empty() {
            code = EXIT_CHECK_FAILED;
        }
        let evals = g.points(0).iter().map(|&x| evaluate_bound(&s, x)).collect::<Result<Vec<_>, _>>()?;
        sums.push(SpecSummary {
            spec: s.name.clone(),
            asserted: s.asserted,
            points: evals.len(),
            violations: violations.len(),
            min_margin: evals.iter().map(|e| e.margin()).fold(f64::INFINITY, f64::min),
        });
        rows.extend(evals.iter().map(|e| BoundRow::new(&s, e)));
    }
    match (summary, output.format) {
        (true, Format::Csv) => render(output, "bounds", &sums)?,
        (true, Format::Json) => emit(output, "bounds", &json(&sums))?,
        (false, Format::Csv) => {
            let mut b = Vec::new();
            bounds::write_csv(&rows, true, &mut b)?;
            emit(output, "bounds", &b)?
        }
        (false, Format::Json) => emit(output, "bounds", &json(&rows))?,
    }
    Ok(code)
}

#[derive(Serialize)]
struct IntervalRow<'a> {
    spec_a: &'a str,
    spec_b: &'a str,
    side: &'a str,
    lo: f64,
    hi: f64,
    winner: &'a str,
}

fn compare(a: &str, b: &str, side: &str, lo: f64, hi: f64, k: Option<f64>, output: &Output) -> Outcome {
    let (sa, sb) = (with_k(bounds::bound(a)?, k), with_k(bounds::bound(b)?, k));
    let r = compare_bounds(&sa, &sb, side.parse()?, &Grid::spanning(lo, hi, 2)?)?;
    match output.format {
        Format::Csv => {
            let rows: Vec<IntervalRow> = r
                .intervals
                .iter()
                .map(|i| IntervalRow { spec_a: a, spec_b: b, side, lo: i.lo, hi: i.hi, winner: &i.winner })
                .collect();
            render(output, "compare", &rows)?
        }
        Format::Json => emit(output, "compare", &json(&r))?,
    }
    Ok(EXIT_OK)
}

fn report(ids: &[usize], output: &Output) -> Outcome {
    let ids: Vec<usize> = if ids.is_empty() { (1..=CRITERIA.len()).collect() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > CRITERIA.len()) {
        return Err(usage(format!("criterion {bad} is not in 1..={}", CRITERIA.len())));
    }
    let results: Vec<_> = ids.iter().map(|&i| run_criterion(i)).collect();
    for r in &results {
        eprintln!("{r}");
    }
    render(output, "report", &results)?;
    Ok(if results.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_CHECK_FAILED })
}
