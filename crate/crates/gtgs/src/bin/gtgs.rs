use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gtgs::charexp::CharExponent;
use gtgs::cumulants::cumulant_report;
use gtgs::limits::{long_time_limit, mutual_equivalence, scaling_convergence_check, short_time_limit, stable_equivalence, LimitLaw};
use gtgs::model::{canonical_density, figure1_row, levy_density, tempering_function};
use gtgs::montecarlo::{SimConfig, Simulator};
use gtgs::oracle::{fft_pdf_at, gil_pelaez_cdf, QuadratureConfig};
use gtgs::{GtgsError, GtgsParams};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "gtgs", version, about = "GTGS distributions: exponents, densities, cumulants, limits, simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Parameter record (JSON).
    #[arg(long)]
    params: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// a:b:n[:log]
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Relative tolerance for quadratures.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic exponent and function on a z grid.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Lévy density, tempering function and canonical density on an x grid.
    Density {
        #[command(flatten)]
        common: Common,
    },
    /// Cumulants of orders 1..=n.
    Cumulants {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// A sample path on the grid times, or i.i.d. draws of X_t with --draws.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long)]
        draws: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// CDF (Gil-Pelaez) and density (FFT) of X_t on an x grid.
    Invert {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Short- and long-time scaling limits with convergence tables.
    Limits {
        #[command(flatten)]
        common: Common,
    },
    /// Absolute continuity w.r.t. the stable law, or w.r.t. a second GTGS law.
    Abscont {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        params2: Option<PathBuf>,
    },
    /// Lévy densities and tempering functions of the stable, CTS, GTGS and GTGS⁰ comparison laws.
    Figure1 {
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Validation(String),
    Numerical(String),
}

impl From<GtgsError> for Failure {
    fn from(e: GtgsError) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

type Out<T> = std::result::Result<T, Failure>;

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

fn fmt_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn opt(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r.iter().map(fmt_cell)).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect::<Map<_, _>>()))
                    .collect();
                serde_json::to_string_pretty(&rows).unwrap() + "\n"
            }
        }
    }
}

fn parse_grid(spec: &str) -> Out<Vec<f64>> {
    let bad = || Failure::Validation(format!("--grid '{spec}' must be a:b:n[:log]"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    let log = match parts.get(3) {
        None => false,
        Some(&"log") => true,
        Some(_) => return Err(bad()),
    };
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    if log && !(a > 0.0 && b > 0.0) {
        return Err(Failure::Validation("a log grid needs positive endpoints".into()));
    }
    Ok((0..n)
        .map(|k| {
            let f = k as f64 / (n - 1) as f64;
            if k == n - 1 {
                b
            } else if k == 0 {
                a
            } else if log {
                (a.ln() + f * (b.ln() - a.ln())).exp()
            } else {
                a + f * (b - a)
            }
        })
        .collect())
}

fn load(path: &Option<PathBuf>, flag: &str) -> Out<GtgsParams> {
    let path = path.as_ref().ok_or_else(|| Failure::Validation(format!("{flag} <file.json> is required")))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(GtgsParams::from_json(&text)?)
}

fn grid_or(c: &Common, default: &str) -> Out<Vec<f64>> {
    parse_grid(c.grid.as_deref().unwrap_or(default))
}

fn quad(c: &Common) -> Out<QuadratureConfig> {
    let mut q = QuadratureConfig::default();
    if let Some(t) = c.tol {
        q.rel_tol = t;
    }
    q.validate()?;
    Ok(q)
}

fn emit(c: &Common, body: String) -> Out<()> {
    match &c.out {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Numerical(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn law_row(name: &str, law: &std::result::Result<LimitLaw, GtgsError>, h: Option<(f64, f64)>) -> Vec<Value> {
    match law {
        Ok(l) => {
            let (dp, dm) = l.deltas.map(|(a, b)| (Some(a), Some(b))).unwrap_or((None, None));
            vec![
                json!(name),
                json!(format!("{:?}", l.kind)),
                num(l.index),
                opt(dp),
                opt(dm),
                opt(l.variance),
                opt(h.map(|x| x.0)),
                opt(h.map(|x| x.1)),
                json!(l.drift_note),
            ]
        }
        Err(e) => vec![json!(name), Value::Null, Value::Null, Value::Null, Value::Null, Value::Null, Value::Null, Value::Null, json!(e.to_string())],
    }
}

fn run(cli: Cli) -> Out<()> {
    match cli.command {
        Command::Eval { common, z, t } => {
            let p = load(&common.params, "--params")?;
            let zs = match z {
                Some(z) => vec![z],
                None => grid_or(&common, "-10:10:21")?,
            };
            let ce = CharExponent::new(&p)?;
            let mut rows = Vec::new();
            for z in zs {
                let psi = ce.eval(z)?;
                let cf = (t * psi).exp();
                rows.push(vec![num(z), num(psi.re), num(psi.im), num(cf.re), num(cf.im)]);
            }
            let tab = Table { columns: vec!["z", "psi_re", "psi_im", "cf_re", "cf_im"], rows };
            emit(&common, tab.render(common.format))
        }
        Command::Density { common } => {
            let p = load(&common.params, "--params")?;
            let mut rows = Vec::new();
            for x in grid_or(&common, "0.01:10:100:log")? {
                rows.push(vec![num(x), num(levy_density(&p, x)?), num(tempering_function(&p, x)?), num(canonical_density(&p, x)?)]);
            }
            let tab = Table { columns: vec!["x", "levy", "tempering", "canonical"], rows };
            emit(&common, tab.render(common.format))
        }
        Command::Cumulants { common, n } => {
            let p = load(&common.params, "--params")?;
            let q = quad(&common)?;
            let mut rows = Vec::new();
            for k in 1..=n {
                let r = cumulant_report(&p, k, &q)?;
                rows.push(vec![json!(k), json!(r.finite), opt(r.value), json!(r.criterion)]);
            }
            let tab = Table { columns: vec!["order", "finite", "value", "criterion"], rows };
            emit(&common, tab.render(common.format))
        }
        Command::Simulate { common, eps, draws, t } => {
            let p = load(&common.params, "--params")?;
            let sim = Simulator::new(&p, SimConfig { epsilon: eps, ..Default::default() })?;
            if let Some(n) = draws {
                let xs = sim.sample(t, n, common.seed)?;
                let tab = Table { columns: vec!["value"], rows: xs.into_iter().map(|x| vec![num(x)]).collect() };
                return emit(&common, tab.render(common.format));
            }
            let path = sim.path(&grid_or(&common, "0:1:101")?, common.seed)?;
            let body = match common.format {
                Format::Csv => path.to_csv(),
                Format::Json => path.to_json() + "\n",
            };
            emit(&common, body)
        }
        Command::Invert { common, t } => {
            let p = load(&common.params, "--params")?;
            let q = quad(&common)?;
            let ce = CharExponent::new(&p)?;
            let xs = grid_or(&common, "-5:5:41")?;
            let pdf = fft_pdf_at(|z| ce.eval(z), &xs, t, 1 << 16)?;
            let mut rows = Vec::new();
            for (x, f) in xs.iter().zip(pdf) {
                let c = gil_pelaez_cdf(|z| ce.eval(z), *x, t, &q)?;
                rows.push(vec![num(*x), num(c.value), num(f), json!(c.slow_decay)]);
            }
            let tab = Table { columns: vec!["x", "cdf", "pdf", "slow_decay"], rows };
            emit(&common, tab.render(common.format))
        }
        Command::Limits { common } => {
            let p = load(&common.params, "--params")?;
            let z = grid_or(&common, "-2:2:9")?;
            let hs = [1e2, 1e3, 1e4, 1e5, 1e6];
            let short = short_time_limit(&p);
            let long = long_time_limit(&p);
            let table = |law: &std::result::Result<LimitLaw, GtgsError>, small: bool| -> Out<Vec<(f64, f64)>> {
                match law {
                    Ok(l) => {
                        let h: Vec<f64> = hs.iter().map(|h| if small { 1.0 / h } else { *h }).collect();
                        Ok(scaling_convergence_check(&p, l, &h, &z)?)
                    }
                    Err(_) => Ok(Vec::new()),
                }
            };
            let (ts, tl) = (table(&short, true)?, table(&long, false)?);
            let mut rows = Vec::new();
            for (name, law, tab) in [("short", &short, &ts), ("long", &long, &tl)] {
                if tab.is_empty() {
                    rows.push(law_row(name, law, None));
                }
                for &e in tab {
                    rows.push(law_row(name, law, Some(e)));
                }
            }
            let tab = Table {
                columns: vec!["limit", "kind", "index", "delta_plus", "delta_minus", "variance", "h", "deviation", "note"],
                rows,
            };
            emit(&common, tab.render(common.format))
        }
        Command::Abscont { common, params2 } => {
            let p = load(&common.params, "--params")?;
            let (name, v) = match &params2 {
                Some(_) => ("mutual", mutual_equivalence(&p, &load(&params2, "--params2")?)?),
                None => ("stable", stable_equivalence(&p)?),
            };
            let tab = Table {
                columns: vec!["test", "equivalent", "reason", "required_drift", "hellinger_estimate"],
                rows: vec![vec![json!(name), json!(v.equivalent), json!(v.reason), opt(v.required_drift), opt(v.hellinger_estimate)]],
            };
            emit(&common, tab.render(common.format))
        }
        Command::Figure1 { common } => {
            let mut rows = Vec::new();
            for x in grid_or(&common, "0.001:10:200:log")? {
                let r = figure1_row(x)?;
                rows.push(
                    [r.x, r.levy_s, r.levy_cts, r.levy_gtgs, r.levy_gtgs0, r.q_s, r.q_cts, r.q_gtgs, r.q_gtgs0]
                        .into_iter()
                        .map(num)
                        .collect(),
                );
            }
            let tab = Table {
                columns: vec!["x", "levy_s", "levy_cts", "levy_gtgs", "levy_gtgs0", "q_s", "q_cts", "q_gtgs", "q_gtgs0"],
                rows,
            };
            emit(&common, tab.render(common.format))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(3)
        }
    }
}
