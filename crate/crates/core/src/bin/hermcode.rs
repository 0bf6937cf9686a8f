use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hermcode::agcode::{build_code, dual_basis, matrix_csv};
use hermcode::curve::CurveContext;
use hermcode::distance::{hk_distance, hk_matches, park_distance};
use hermcode::multiplicity::{
    mult_closed, mult_definition_oracle, mult_excess_form, mult_lattice_count, BasePoint, ShiftedParams,
};
use hermcode::orderbound::{BoundConfig, OrderBoundSolver, StepRule, TerminalRule};
use hermcode::rrspace::{basis_entries, monomial_basis};
use hermcode::table::{hk_grid_csv, park_grid_csv, Span};
use hermcode::verify::{verify_distances, verify_hk, verify_multiplicities, verify_segments, DistanceOptions};
use hermcode::witness::{build_witness_support, enumerate_conics, enumerate_lines, LineKind};

/// Two-point codes on the Hermitian curve y^q + y = x^{q+1}.
///
/// --A/--B are the coefficients of G = A·P∞ + B·P0. --a/--b are shifted
/// arguments, G = K + a·P∞ + b·P0. --hk takes the (m, n) of the primal codes.
#[derive(Parser)]
#[command(name = "hermcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance table as CSV, rows m and columns n.
    Table(TableArgs),
    /// Sweep formulas against oracles; exit status 1 on any mismatch.
    Verify(VerifyArgs),
    /// Multiplicities m_P∞ and m_P0.
    Mult(MultArgs),
    /// Order bound and an optimal path.
    Bound(BoundArgs),
    /// Closed-form distance of C(A, B)^⊥, or of C(m, n) with --hk.
    Distance(DistanceArgs),
    /// Certified support of a minimum-weight dual word.
    Witness(Divisor),
    /// Conic and line censuses.
    Census(QArg),
    /// Rational points as CSV.
    Points(QArg),
    /// Monomial basis of L(A·P∞ + B·P0).
    Basis(Divisor),
    /// Generator (or dual) matrix as CSV of field indices.
    Matrix(MatrixArgs),
}

#[derive(Args)]
struct QArg {
    #[arg(long)]
    q: u32,
}

#[derive(Args)]
struct Divisor {
    #[arg(long)]
    q: u32,
    #[arg(long = "A", allow_negative_numbers = true)]
    big_a: i64,
    #[arg(long = "B", allow_negative_numbers = true)]
    big_b: i64,
}

fn parse_span(s: &str) -> Result<Span, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo = lo.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<i64>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Family {
    /// Dual distances d(C(m, n)^⊥) from the closed forms.
    #[arg(long)]
    park_grid: bool,
    /// Primal distances d(C(m, n)) from the primal formulas.
    #[arg(long)]
    hk_grid: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    q: u32,
    #[command(flatten)]
    family: Family,
    /// Row range lo:hi (inclusive); empty when lo > hi.
    #[arg(long, value_parser = parse_span, allow_hyphen_values = true)]
    rows: Span,
    /// Column range lo:hi (inclusive).
    #[arg(long, value_parser = parse_span, allow_hyphen_values = true)]
    cols: Span,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Mult,
    Distance,
    Hk,
    Segments,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    q: u32,
    /// Largest dimension handed to exhaustive search (dual dimension for
    /// distance sweeps, code dimension for primal sweeps).
    #[arg(long)]
    k_max: Option<usize>,
    /// Defaults to all for q <= 3 and mult for q = 4.
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Operation budget per exhaustive search.
    #[arg(long)]
    budget: Option<f64>,
    /// Include one record per cell.
    #[arg(long)]
    records: bool,
}

#[derive(Args)]
struct MultArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, allow_negative_numbers = true, requires = "b", conflicts_with_all = ["big_a", "big_b"])]
    a: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "a")]
    b: Option<i64>,
    #[arg(long = "A", allow_negative_numbers = true, requires = "big_b")]
    big_a: Option<i64>,
    #[arg(long = "B", allow_negative_numbers = true, requires = "big_a")]
    big_b: Option<i64>,
    /// pinf or p0; both when omitted.
    #[arg(long)]
    point: Option<BasePoint>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    divisor: Divisor,
    /// Count every step, including those where the code does not grow.
    #[arg(long)]
    every_step: bool,
    /// Stop at A + B >= n + 2g - 1 instead of at full rank.
    #[arg(long)]
    degree_terminal: bool,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    q: u32,
    #[arg(long = "A", allow_negative_numbers = true, required_unless_present = "hk")]
    big_a: Option<i64>,
    #[arg(long = "B", allow_negative_numbers = true, required_unless_present = "hk")]
    big_b: Option<i64>,
    #[arg(long, num_args = 2, value_names = ["M", "N"], allow_negative_numbers = true, conflicts_with_all = ["big_a", "big_b"])]
    hk: Option<Vec<i64>>,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    divisor: Divisor,
    /// Rows spanning the dual instead of the generator.
    #[arg(long)]
    dual: bool,
}

enum Failure {
    Mismatch,
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

/// Writes to stdout; a closed pipe ends the program quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn print_json<T: Serialize>(v: &T) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(cli.command);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Table(t) => {
            CurveContext::new(t.q)?;
            let csv = if t.family.park_grid {
                park_grid_csv(t.q, t.rows, t.cols)?
            } else {
                hk_grid_csv(t.q, t.rows, t.cols)?
            };
            emit(&csv);
        }
        Command::Verify(v) => return verify(v),
        Command::Mult(m) => mult(m)?,
        Command::Bound(b) => {
            let d = b.divisor;
            let curve = CurveContext::new(d.q)?;
            let mut config = BoundConfig::for_q(d.q);
            if b.every_step {
                config.steps = StepRule::Every;
            }
            if b.degree_terminal {
                config.terminal = TerminalRule::DegreeCriterion;
            }
            let mut solver = OrderBoundSolver::new(&curve, config);
            print_json(&solver.order_bound(d.big_a, d.big_b)?);
        }
        Command::Distance(d) => {
            let curve = CurveContext::new(d.q)?;
            let q = curve.q() as i64;
            if let Some(hk) = d.hk {
                let (m, n) = (hk[0], hk[1]);
                let matches = hk_matches(q, m, n)?;
                let labels: Vec<&str> = matches.iter().map(|&(l, _)| l).collect();
                let d = hk_distance(q, m, n)?;
                print_json(&json!({ "q": q, "m": m, "n": n, "d": d, "cases": labels }));
            } else {
                let (a, b) = (d.big_a.expect("required"), d.big_b.expect("required"));
                let p = park_distance(q, a, b);
                print_json(&json!({ "q": q, "A": a, "B": b, "d": p.d, "regime": p.tag }));
            }
        }
        Command::Witness(d) => {
            let curve = CurveContext::new(d.q)?;
            print_json(&build_witness_support(&curve, d.big_a, d.big_b)?);
        }
        Command::Census(QArg { q }) => {
            let curve = CurveContext::new(q)?;
            let census = enumerate_conics(&curve);
            let lines: Vec<_> = [LineKind::ThroughP0, LineKind::ThroughPinf, LineKind::Horizontal]
                .into_iter()
                .map(|k| json!({ "kind": k, "count": enumerate_lines(&curve, k).len() }))
                .collect();
            print_json(&json!({
                "q": q,
                "conics": census.conics.len(),
                "eligiblePoints": census.eligible_points,
                "lines": lines,
                "alphas": census.conics.iter().map(|c| c.alpha).collect::<Vec<_>>(),
            }));
        }
        Command::Points(QArg { q }) => emit(&CurveContext::new(q)?.points_csv()),
        Command::Basis(d) => {
            CurveContext::new(d.q)?;
            let q = d.q as i64;
            let basis = monomial_basis(q, d.big_a, d.big_b);
            print_json(
                &json!({ "q": q, "A": d.big_a, "B": d.big_b, "dim": basis.dim(), "basis": basis_entries(q, &basis) }),
            );
        }
        Command::Matrix(m) => {
            let d = m.divisor;
            let curve = CurveContext::new(d.q)?;
            let code = build_code(&curve, d.big_a, d.big_b);
            let out = if m.dual { dual_basis(&curve, &code).matrix } else { code.matrix };
            emit(&matrix_csv(&out));
        }
    }
    Ok(())
}

fn mult(m: MultArgs) -> Result<(), Failure> {
    CurveContext::new(m.q)?;
    let q = m.q as i64;
    let shift = q * q - q - 2;
    let (a, b) = match (m.a, m.b, m.big_a, m.big_b) {
        (Some(a), Some(b), _, _) => (a, b),
        (_, _, Some(big_a), Some(big_b)) => (big_a - shift, big_b),
        _ => return Err(Failure::Error("give either --a/--b or --A/--B".into())),
    };
    let points = match m.point {
        Some(p) => vec![p],
        None => vec![BasePoint::Pinf, BasePoint::P0],
    };
    let p = ShiftedParams::new(q, a, b);
    let rows: Vec<_> = points
        .iter()
        .map(|&point| {
            json!({
                "point": point,
                "multiplicity": mult_closed(q, a, b, point),
                "lattice": mult_lattice_count(q, a, b, point),
                "excessForm": mult_excess_form(q, a, b, point),
                "definition": mult_definition_oracle(q, a + shift, b, point).ok(),
            })
        })
        .collect();
    match m.format {
        Format::Json => print_json(&json!({
            "q": q, "a": a, "b": b, "A": a + shift, "B": b, "params": p, "multiplicities": rows,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["q", "a", "b", "point", "multiplicity"])?;
            for &point in &points {
                let name = if point == BasePoint::Pinf { "pinf" } else { "p0" };
                w.write_record([
                    q.to_string(),
                    a.to_string(),
                    b.to_string(),
                    name.into(),
                    mult_closed(q, a, b, point).to_string(),
                ])?;
            }
            emit(&String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)?);
        }
    }
    Ok(())
}

fn verify(v: VerifyArgs) -> Result<(), Failure> {
    if !(2..=4).contains(&v.q) {
        return Err(Failure::Error(format!("verify supports q in 2..=4, got {}", v.q)));
    }
    let curve = CurveContext::new(v.q)?;
    let suite = v.suite.unwrap_or(if v.q <= 3 { Suite::All } else { Suite::Mult });
    let runs = |s: Suite| suite == Suite::All || suite == s;
    let mut out = serde_json::Map::new();
    out.insert("command".into(), json!("verify"));
    out.insert("q".into(), json!(v.q));
    let mut mismatched = 0;

    if runs(Suite::Mult) {
        let r = verify_multiplicities(v.q);
        mismatched += r.mismatched();
        out.insert("multiplicities".into(), serde_json::to_value(&r)?);
    }
    if runs(Suite::Segments) {
        let r = verify_segments(v.q);
        mismatched += r.climb.mismatched + r.plateau.mismatched;
        out.insert("segments".into(), serde_json::to_value(&r)?);
    }
    if runs(Suite::Distance) {
        let mut opts = DistanceOptions::for_q(v.q);
        if let Some(k) = v.k_max {
            opts.dual_dim_max = Some(k);
        }
        if let Some(b) = v.budget {
            opts.budget = b;
        }
        let r = verify_distances(&curve, &opts)?;
        mismatched += r.mismatched();
        let mut value = serde_json::to_value(&r)?;
        if v.records {
            value["records"] = serde_json::to_value(&r.records)?;
        }
        out.insert("distances".into(), value);
    }
    if runs(Suite::Hk) {
        let q = v.q as i64;
        let k_max = v.k_max.unwrap_or(14);
        let r = verify_hk(&curve, (-1, q * q * q + q * q), k_max, v.budget.unwrap_or(1e12))?;
        mismatched += r.tally.mismatched;
        let mut value = serde_json::to_value(&r)?;
        if v.records {
            value["records"] = serde_json::to_value(&r.records)?;
        }
        out.insert("primal".into(), value);
    }
    out.insert("mismatched".into(), json!(mismatched));
    print_json(&out);
    if mismatched > 0 {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}
