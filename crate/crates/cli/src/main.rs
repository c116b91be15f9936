use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ddcrit::cartier::Quadruple;
use ddcrit::construct::{construct_small, construct_trace, d9_witnesses};
use ddcrit::criterion::{certify, certify_residue_data, Certificate};
use ddcrit::gf::make_field;
use ddcrit::laurent::parse_laurent;
use ddcrit::planner::plan_group;
use ddcrit::poly::parse_coefficients;
use ddcrit::search::{brute_search, search_group, SearchConfig};
use ddcrit::witt::{
    different_degree, gamma_congruence, kgb_vanishes, reduce_jumps, standard_form, upper_breaks,
    WittVector,
};

/// Verify, construct and search for solutions of the differential data
/// criterion; Witt-vector and jump utilities.
#[derive(Parser)]
#[command(name = "ddcrit", version)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    /// The integer u~ (pole order minus one).
    #[arg(long = "u")]
    u_tilde: u64,
    #[arg(long)]
    n1: u64,
    /// Degree k of the coefficient field F_{p^k}.
    #[arg(long, default_value_t = 1)]
    field_degree: usize,
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop after this many candidates.
    #[arg(long)]
    max_candidates: Option<u128>,
    /// Stop after this many seconds.
    #[arg(long)]
    time_limit: Option<u64>,
    /// Largest coefficient field degree accepted.
    #[arg(long, default_value_t = 8)]
    field_degree_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Certify one polynomial.
    Check {
        #[command(flatten)]
        quad: QuadArgs,
        /// Ascending comma-separated coefficients.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Exit 0 only if the isolated criterion holds.
        #[arg(long)]
        isolated: bool,
    },
    /// Exhaustive search over F_{p^k} for one quadruple.
    Search {
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        isolated: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search every quadruple of Z/p^n ⋊ Z/m; JSON lines plus a summary line.
    SearchGroup {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        field_degree: usize,
        #[arg(long)]
        isolated: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Quadruples, jump profiles and radii for Z/p^n ⋊ Z/m.
    Plan {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u32,
    },
    /// Closed-form solutions.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Witt-vector utilities.
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Reduce a jump sequence to one without essential ramification.
    ReduceJumps {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        jumps: String,
    },
}

#[derive(Subcommand)]
enum Family {
    /// (p, 2, 1, n1) with n1 in {p-1, p-3}.
    Small {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n1: u64,
    },
    /// (p, m, u~, (p-1)u~) from roots of unity with nonzero trace.
    Trace {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long = "u")]
        u_tilde: u64,
    },
    /// The four witnesses for p = 3, m = 2, n = 2.
    D9,
}

#[derive(Subcommand)]
enum WittOp {
    /// Standard form and upper ramification breaks.
    Breaks {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Entries separated by `;`, e.g. "t^-1;2*t^-5".
        #[arg(long, allow_hyphen_values = true)]
        entries: String,
        /// Also report the congruence class and KGB test for this m.
        #[arg(long)]
        m: Option<u64>,
    },
}

/// Exit status 2 with a message.
struct InputError(String);

impl From<ddcrit::Error> for InputError {
    fn from(e: ddcrit::Error) -> Self {
        InputError(e.to_string())
    }
}

enum Output {
    Json(Value, bool),
    Lines(Vec<Value>, bool),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn config(isolated: bool, budget: &BudgetArgs) -> SearchConfig {
    SearchConfig {
        require_isolated: isolated,
        field_degree_cap: budget.field_degree_cap,
        max_candidates: budget.max_candidates,
        time_limit: budget.time_limit.map(Duration::from_secs),
        ..SearchConfig::default()
    }
}

fn cert_ok(c: &Certificate) -> bool {
    c.ddc_ok && c.power_sum_ok
}

fn run(cmd: Command) -> Result<Output, InputError> {
    Ok(match cmd {
        Command::Check { quad, f, isolated } => {
            let q = Quadruple::new(quad.p, quad.m, quad.u_tilde, quad.n1)?;
            let field = make_field(quad.p, quad.field_degree)?;
            let f = parse_coefficients(&field, &f)?;
            let c = certify(&q, &f)?;
            Output::Json(to_value(&c.to_record()), c.passes(isolated))
        }
        Command::Search {
            quad,
            isolated,
            budget,
        } => {
            let q = Quadruple::new(quad.p, quad.m, quad.u_tilde, quad.n1)?;
            let r = brute_search(&q, quad.field_degree, &config(isolated, &budget))?;
            Output::Json(to_value(&r.to_record()), r.found())
        }
        Command::SearchGroup {
            p,
            m,
            n,
            field_degree,
            isolated,
            budget,
        } => {
            let g = search_group(p, m, n, field_degree, &config(isolated, &budget))?;
            let mut lines: Vec<Value> = g.reports.iter().map(|r| to_value(&r.to_record())).collect();
            lines.push(json!({ "summary": g.summary() }));
            Output::Lines(lines, g.complete())
        }
        Command::Plan { p, m, n } => Output::Json(to_value(&plan_group(p, m, n)?), true),
        Command::Construct { family } => match family {
            Family::Small { p, n1 } => {
                let c = certify_residue_data(&construct_small(p, n1)?)?;
                Output::Json(to_value(&c.to_record()), cert_ok(&c))
            }
            Family::Trace { p, m, u_tilde } => {
                let c = certify_residue_data(&construct_trace(p, m, u_tilde)?)?;
                Output::Json(to_value(&c.to_record()), cert_ok(&c))
            }
            Family::D9 => {
                let certs = d9_witnesses()?;
                let ok = certs.iter().all(|c| c.passes(true));
                let recs: Vec<_> = certs.iter().map(Certificate::to_record).collect();
                Output::Json(to_value(&recs), ok)
            }
        },
        Command::Witt {
            op: WittOp::Breaks { p, k, entries, m },
        } => {
            let field = make_field(p, k)?;
            let parsed = entries
                .split(';')
                .map(|e| parse_laurent(&field, e))
                .collect::<ddcrit::Result<Vec<_>>>()?;
            let v = WittVector::new(&field, parsed)?;
            let sf = standard_form(&v)?;
            let breaks = upper_breaks(&sf.vector)?;
            let mut out = json!({
                "input": v.to_record(),
                "standard_form": sf.vector.to_record(),
                "extension_degree": sf.extension_degree,
                "breaks": breaks,
                "different_degree": different_degree(&breaks, p).to_string(),
            });
            if let Some(m) = m {
                out["congruence_class"] = match gamma_congruence(&sf.vector, m) {
                    Ok(c) => json!(c),
                    Err(_) => Value::Null,
                };
                out["kgb_vanishes"] = json!(kgb_vanishes(&breaks, m));
            }
            Output::Json(out, true)
        }
        Command::ReduceJumps { p, m, jumps } => {
            let js = jumps
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| InputError(format!("bad jump {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Output::Json(to_value(&reduce_jumps(&js, p, m)?), true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("DDCRIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = match run(cli.command) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let ok = match out {
        Output::Json(v, ok) => {
            let s = if cli.pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            }
            .unwrap();
            let _ = writeln!(w, "{s}");
            ok
        }
        Output::Lines(lines, ok) => {
            for l in lines {
                let _ = writeln!(w, "{}", serde_json::to_string(&l).unwrap());
            }
            ok
        }
    };
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
