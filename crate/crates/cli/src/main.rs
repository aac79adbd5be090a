use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use quadpower_core::bound::{self, CheckStatus, ExponentPlan, Regime};
use quadpower_core::classnum::{class_number, reduced_forms};
use quadpower_core::lucas::{
    has_primitive_prime_divisor, lucas_terms, verify_bhv_rows, BhvEntry, BhvSweep, FactorBudget,
    LucasSpec,
};
use quadpower_core::solver::solve_all;
use quadpower_core::sylvester::{generate, scan_powers_with, Certificate, PowerScan};
use quadpower_core::{
    Completeness, MonicQuadratic, SearchVariable, SolutionSet, SolveOptions, DEFAULT_SEARCH_BOUND,
};

/// Integer solutions of y^q = x^2 + ax + b and related computations.
#[derive(Parser)]
#[command(name = "quadpower", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve y^q = x^2 + ax + b over every exponent that can contribute.
    Solve {
        /// Coefficients "a,b" of x^2 + ax + b.
        #[arg(long, allow_hyphen_values = true)]
        poly: MonicQuadratic,
        #[arg(long, env = "QUADPOWER_SEARCH_BOUND", default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
        /// Keep solutions with |y| <= 1.
        #[arg(long)]
        include_trivial: bool,
    },
    /// Show which exponents need checking.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        poly: MonicQuadratic,
    },
    /// Class number of a negative fundamental discriminant.
    Classnumber {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Terms u_1..u_N of a Lucas sequence and their primitive divisors.
    Lucas {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        n: u32,
    },
    /// Compare defective Lucas pairs against the exception table.
    BhvVerify {
        /// Bound on |P|.
        #[arg(long)]
        height: i64,
        /// Bound on Q.
        #[arg(long, default_value_t = 50)]
        qmax: i64,
        #[arg(long, default_value_t = 30)]
        nmax: u32,
        /// Explicit comma-separated indices instead of 5..=nmax.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<u32>>,
    },
    /// Terms of a generalised Sylvester sequence.
    Sylvester {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, default_value_t = quadpower_core::sylvester::DEFAULT_TERMS)]
        terms: usize,
        /// Report perfect-power terms.
        #[arg(long)]
        scan: bool,
        #[arg(long, env = "QUADPOWER_SEARCH_BOUND", default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
}

struct Output {
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> quadpower_core::Result<Output> {
    match cmd {
        Command::Solve {
            poly,
            search_bound,
            include_trivial,
        } => {
            let opts = SolveOptions {
                search_bound,
                include_trivial,
            };
            Ok(solve_output(&solve_all(&poly, &opts)?))
        }
        Command::Bound { poly } => Ok(plan_output(&poly, &bound::plan(&poly)?)),
        Command::Classnumber { disc } => {
            let h = class_number(disc)?;
            let forms = reduced_forms(disc)?;
            let mut text = format!("h({disc}) = {h}\n");
            for f in &forms {
                text += &format!("  ({}, {}, {})\n", f.a, f.b, f.c);
            }
            let json = json!({
                "disc": disc,
                "class_number": h,
                "forms": forms.iter().map(|f| json!([f.a, f.b, f.c])).collect::<Vec<_>>(),
            });
            Ok(Output { text, json })
        }
        Command::Lucas { trace, disc, n } => lucas_output(trace, disc, n),
        Command::BhvVerify {
            height,
            qmax,
            nmax,
            indices,
        } => {
            let sweep = match indices {
                Some(idx) => BhvSweep::with_indices(height, qmax, &idx),
                None => BhvSweep::up_to(height, qmax, nmax),
            };
            let report = verify_bhv_rows(&sweep)?;
            let rows = |set: &mut dyn Iterator<Item = &BhvEntry>| -> Vec<Value> {
                set.map(|e| json!({"n": e.n, "p": e.p, "b": e.b})).collect()
            };
            let mut text = format!(
                "swept |P| <= {height}, Q <= {qmax}, n in {:?}: {} pairs\n",
                sweep.indices, report.pairs_checked
            );
            for e in &report.found {
                let tag = if report.expected.contains(e) { "table" } else { "NOT IN TABLE" };
                text += &format!("  n = {:>2}  (P, b) = ({}, {})  {tag}\n", e.n, e.p, e.b);
            }
            for e in report.missing() {
                text += &format!("  n = {:>2}  (P, b) = ({}, {})  missing\n", e.n, e.p, e.b);
            }
            text += if report.matches() { "match\n" } else { "MISMATCH\n" };
            let json = json!({
                "height": height,
                "qmax": qmax,
                "indices": sweep.indices,
                "pairs_checked": report.pairs_checked,
                "found": rows(&mut report.found.iter()),
                "missing": rows(&mut report.missing().iter()),
                "unexpected": rows(&mut report.unexpected().iter()),
                "matches": report.matches(),
            });
            Ok(Output { text, json })
        }
        Command::Sylvester {
            m,
            a,
            terms,
            scan,
            search_bound,
        } => {
            let seq = generate(m, a.clone(), terms)?;
            let mut text = format!("G^({m})({a}), {} terms\n", seq.terms.len());
            for (i, t) in seq.terms.iter().enumerate() {
                text += &format!("  {i:>3}  {}\n", abbreviate(t));
            }
            let mut json = json!({
                "m": m,
                "a": a.to_string(),
                "terms": seq.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            });
            if scan {
                let opts = SolveOptions {
                    search_bound,
                    include_trivial: false,
                };
                let result = scan_powers_with(m, a, terms, &opts)?;
                text += &scan_text(&result);
                json["scan"] = scan_json(&result);
            }
            Ok(Output { text, json })
        }
    }
}

fn abbreviate(t: &BigInt) -> String {
    let s = t.to_string();
    let digits = s.trim_start_matches('-').len();
    if digits <= 60 {
        s
    } else {
        format!("{}...{} ({digits} digits)", &s[..25], &s[s.len() - 25..])
    }
}

fn completeness_text(c: &Completeness) -> String {
    c.to_string()
}

fn completeness_json(c: &Completeness) -> Value {
    match c {
        Completeness::ProvablyComplete => json!({"kind": "provably_complete"}),
        Completeness::CompleteUpToBound { bound, over } => json!({
            "kind": "complete_up_to_bound",
            "bound": bound,
            "over": match over {
                SearchVariable::X => "x",
                SearchVariable::GeneratorV => "generator_v",
            },
        }),
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::SpecialList => "special_list",
        Regime::ClassNumber => "class_number",
    }
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::ProvablyComplete => "provably_complete",
        CheckStatus::BoundedSearchOnly => "bounded_search_only",
    }
}

fn plan_json(plan: &ExponentPlan) -> Value {
    json!({
        "disc": plan.disc,
        "regime": regime_name(plan.regime),
        "class_number": plan.class_number,
        "q0": plan.q0,
        "checks": plan.checks.iter().map(|c| json!({"q": c.q, "status": status_name(c.status)})).collect::<Vec<_>>(),
        "no_solutions": plan.no_solutions,
    })
}

fn plan_output(f: &MonicQuadratic, plan: &ExponentPlan) -> Output {
    let mut text = format!("f = {f}\nD = {}\nregime: {}\n", plan.disc, regime_name(plan.regime));
    if let Some(h) = plan.class_number {
        text += &format!("class number: {h}\n");
    }
    if let Some(q0) = plan.q0 {
        text += &format!("q0: {q0}\n");
    }
    if plan.no_solutions {
        text += "no solutions with |y| > 1\n";
    }
    for c in &plan.checks {
        text += &format!("  q = {:<3} {}\n", c.q, status_name(c.status));
    }
    let mut json = plan_json(plan);
    json["polynomial"] = json!({"a": f.a.to_string(), "b": f.b.to_string()});
    Output { text, json }
}

fn solve_output(set: &SolutionSet) -> Output {
    let mut text = format!("f = {}\nD = {}\n", set.f, set.plan.disc);
    if set.plan.no_solutions {
        text += "no solutions with |y| > 1\n";
    }
    for e in &set.exponents {
        text += &format!("q = {}: {}\n", e.q, completeness_text(&e.completeness));
        for s in set.for_exponent(e.q) {
            text += &format!("  x = {:>8}  y = {:>6}\n", s.x, s.y);
        }
    }
    let json = json!({
        "polynomial": {"a": set.f.a.to_string(), "b": set.f.b.to_string()},
        "plan": plan_json(&set.plan),
        "solutions": set.solutions.iter().map(|s| json!({
            "x": s.x.to_string(),
            "y": s.y.to_string(),
            "q": s.q,
        })).collect::<Vec<_>>(),
        "exponents": set.exponents.iter().map(|e| json!({
            "q": e.q,
            "completeness": completeness_json(&e.completeness),
        })).collect::<Vec<_>>(),
    });
    Output { text, json }
}

fn lucas_output(trace: i64, disc: i64, n: u32) -> quadpower_core::Result<Output> {
    let spec = LucasSpec::new(trace, disc)?;
    let terms = lucas_terms(&spec, n);
    let budget = FactorBudget::default();
    let mut text = format!("P = {trace}, b = {disc}, Q = {}\n", spec.norm());
    let mut rows = Vec::new();
    for k in 1..=n {
        let u = &terms[k as usize];
        let (primitive, witness) = match has_primitive_prime_divisor(&spec, k, &budget) {
            Ok(pd) => (Some(pd.present), pd.witness),
            Err(quadpower_core::Error::FactoringLimitExceeded { .. }) => (None, None),
            Err(e) => return Err(e),
        };
        let status = match (primitive, &witness) {
            (Some(true), Some(p)) => format!("primitive prime {p}"),
            (Some(true), None) => "primitive prime (not named)".to_string(),
            (Some(false), _) => "no primitive prime".to_string(),
            (None, _) => "over factoring budget".to_string(),
        };
        text += &format!("  u_{k:<3} = {:<40} {status}\n", abbreviate(u));
        rows.push(json!({
            "n": k,
            "u": u.to_string(),
            "primitive": primitive,
            "witness": witness.map(|w| w.to_string()),
        }));
    }
    let json = json!({"p": trace, "b": disc, "q": spec.norm(), "terms": rows});
    Ok(Output { text, json })
}

fn certificate_json(cert: &Certificate) -> Value {
    json!({
        "levels": cert.levels.iter().map(|l| l.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "completeness": completeness_json(&cert.completeness),
    })
}

fn scan_text(scan: &PowerScan) -> String {
    let mut text = String::new();
    if scan.hits.is_empty() {
        text += "no perfect powers\n";
    }
    for h in &scan.hits {
        text += &format!("  hit at n = {}: {}^{}\n", h.index, h.base, h.exponent);
    }
    match &scan.certificate {
        None => text += "checked term by term; no certificate for later terms\n",
        Some(cert) => {
            for (k, level) in cert.levels.iter().enumerate() {
                let xs: Vec<String> = level.iter().map(|x| x.to_string()).collect();
                text += &format!("  seeds with a power at n = {}: {{{}}}\n", k + 1, xs.join(", "));
            }
            text += &format!("  solver: {}\n", cert.completeness);
        }
    }
    text
}

fn scan_json(scan: &PowerScan) -> Value {
    json!({
        "hits": scan.hits.iter().map(|h| json!({
            "index": h.index,
            "base": h.base.to_string(),
            "exponent": h.exponent,
        })).collect::<Vec<_>>(),
        "certificate": scan.certificate.as_ref().map(certificate_json),
    })
}
