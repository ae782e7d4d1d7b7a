//! `qh`: build quantum cohomology rings and study handle-element dynamics.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qh_core::complexity::{approx_complexity, exact_complexity, parse_state, s_infinity, trajectory, SInfinityOptions};
use qh_core::frobenius::{Element, FrobeniusRing};
use qh_core::linalg::rational;
use qh_core::partition::est_bound;
use qh_core::rings::{self, RingId};
use qh_core::verify;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qh", version, about = "Quantum cohomology rings, handle elements and state complexity")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Iteration bound for orbit searches (default: 10 * rank).
    #[arg(long, global = true)]
    kmax: Option<usize>,
    /// Tolerance for approximate complexity.
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Float tolerance for limit points.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Basis, degrees, grading and pairing of a ring.
    Ring {
        ring: String,
        /// Emit the full importable ring description instead.
        #[arg(long)]
        export: bool,
    },
    /// The handle element, from every available formula.
    Delta { ring: String },
    /// Powers of the handle element up to `--k`.
    Powers {
        ring: String,
        #[arg(long)]
        k: u32,
    },
    /// Exact (and with `--eps`, approximate) complexity of a state.
    Complexity {
        ring: String,
        #[arg(long, default_value = "unit")]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The orbit of a state under the handle element.
    Orbit {
        ring: String,
        #[arg(long, default_value = "unit")]
        from: String,
    },
    /// Limit points of the orbit that are never reached.
    Sinfty {
        ring: String,
        #[arg(long, default_value = "unit")]
        from: String,
    },
    /// Dimension of the span of the handle powers: computed, closed form, bound.
    Dimf {
        ring: Option<String>,
        /// Reproduce the Grassmannian estimate table instead.
        #[arg(long, conflicts_with = "ring")]
        table: bool,
    },
    /// Matrix of handle / point with symmetry and positivity certificates.
    Amatrix { ring: String },
    /// The upper bound Est(k, n) for Gr(k, n).
    Estimate { k: u32, n: u32 },
    /// Run the acceptance suite; exits 1 if any criterion fails.
    Verify {
        /// Criterion ids (default: all).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
    },
}

enum Failure {
    Usage(String),
    Compute(qh_core::Error),
}

impl From<qh_core::Error> for Failure {
    fn from(e: qh_core::Error) -> Self {
        Failure::Compute(e)
    }
}

type Res<T> = Result<T, Failure>;

/// What a command produces; `text` and `csv` fall back to JSON when absent.
struct Report {
    json: Value,
    text: Option<String>,
    csv: Option<Vec<Vec<String>>>,
}

impl Report {
    fn json(json: Value) -> Self {
        Self { json, text: None, csv: None }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut report_failed = false;
    let result = run(&cli).and_then(|(rep, failed)| {
        report_failed = failed;
        emit(&cli.opts, &rep)
    });
    match result {
        Ok(()) if report_failed => ExitCode::from(1),
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            let obj = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            println!("{obj}");
            ExitCode::from(1)
        }
    }
}

fn emit(opts: &Opts, rep: &Report) -> Res<()> {
    let body = match opts.format {
        Format::Json => serde_json::to_string_pretty(&rep.json).expect("json") + "\n",
        Format::Text => match &rep.text {
            Some(t) => t.clone(),
            None => serde_json::to_string_pretty(&rep.json).expect("json") + "\n",
        },
        Format::Csv => {
            let rows = rep
                .csv
                .as_ref()
                .ok_or_else(|| Failure::Usage("this command has no CSV form; use --format json or text".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.write_record(r).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().expect("csv buffer")).expect("utf8")
        }
    };
    match &opts.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn ring_id(s: &str) -> Res<RingId> {
    RingId::parse(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn build(s: &str) -> Res<(RingId, FrobeniusRing)> {
    let id = ring_id(s)?;
    let ring = id.build()?;
    Ok((id, ring))
}

fn state(ring: &FrobeniusRing, s: &str) -> Res<qh_core::complexity::ProjState> {
    parse_state(ring, s).map_err(|e| match e {
        qh_core::Error::Unsupported(_) => Failure::Compute(e),
        _ => Failure::Usage(e.to_string()),
    })
}

fn element_json(ring: &FrobeniusRing, x: &Element) -> Value {
    let terms: serde_json::Map<String, Value> = x
        .terms()
        .map(|(i, c)| (ring.label(i).to_string(), Value::String(c.to_string())))
        .collect();
    json!({"text": ring.format(x), "terms": terms})
}

fn kmax(opts: &Opts, ring: &FrobeniusRing) -> usize {
    opts.kmax.unwrap_or(10 * ring.rank())
}

fn run(cli: &Cli) -> Res<(Report, bool)> {
    let o = &cli.opts;
    let rep = match &cli.cmd {
        Cmd::Ring { ring, export } => cmd_ring(ring, *export)?,
        Cmd::Delta { ring } => cmd_delta(ring)?,
        Cmd::Powers { ring, k } => cmd_powers(ring, *k)?,
        Cmd::Complexity { ring, from, to } => cmd_complexity(o, ring, from, to)?,
        Cmd::Orbit { ring, from } => cmd_orbit(o, ring, from)?,
        Cmd::Sinfty { ring, from } => cmd_sinfty(o, ring, from)?,
        Cmd::Dimf { ring: Some(r), .. } => cmd_dimf(r)?,
        Cmd::Dimf { ring: None, table } => {
            if !table {
                return Err(Failure::Usage("dimf needs a ring or --table".into()));
            }
            cmd_table()?
        }
        Cmd::Amatrix { ring } => cmd_amatrix(ring)?,
        Cmd::Estimate { k, n } => {
            let est = est_bound(*k, *n).map_err(|e| Failure::Usage(e.to_string()))?;
            Report {
                json: json!({"k": k, "n": n, "est": est}),
                text: Some(format!("{est}\n")),
                csv: Some(vec![vec!["k".into(), "n".into(), "Est".into()], vec![k.to_string(), n.to_string(), est.to_string()]]),
            }
        }
        Cmd::Verify { criteria } => {
            if let Some(bad) = criteria.iter().find(|i| !verify::CRITERIA.iter().any(|c| c.0 == **i)) {
                return Err(Failure::Usage(format!("no criterion {bad}; ids are 1..={}", verify::CRITERIA.len())));
            }
            let r = verify::run(criteria);
            let mut text = String::new();
            let mut csv = vec![vec!["criterion".into(), "title".into(), "pass".into(), "checks".into(), "failed".into()]];
            for c in &r.criteria {
                text.push_str(&c.summary_line());
                text.push('\n');
                csv.push(vec![
                    c.id.to_string(),
                    c.title.clone(),
                    c.pass.to_string(),
                    c.checks.len().to_string(),
                    c.failures().map(|f| f.name.clone()).collect::<Vec<_>>().join("; "),
                ]);
            }
            let failed = !r.pass;
            let json = serde_json::to_value(&r).expect("json");
            return Ok((Report { json, text: Some(text), csv: Some(csv) }, failed));
        }
    };
    Ok((rep, false))
}

fn cmd_ring(s: &str, export: bool) -> Res<Report> {
    let (_, ring) = build(s)?;
    if export {
        return Ok(Report::json(serde_json::to_value(ring.export()).expect("json")));
    }
    let pairing: Vec<Vec<String>> = ring
        .pairing()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    let mut text = format!("{}  rank {}  tau {}  dim {}\n", ring.name(), ring.rank(), ring.tau(), ring.dim());
    for (l, d) in ring.labels().iter().zip(ring.degrees()) {
        text.push_str(&format!("  {l}  deg {d}\n"));
    }
    let mut csv = vec![vec!["label".to_string(), "degree".to_string()]];
    csv.extend(ring.labels().iter().zip(ring.degrees()).map(|(l, d)| vec![l.clone(), d.to_string()]));
    Ok(Report {
        json: json!({
            "ring": ring.name(),
            "rank": ring.rank(),
            "labels": ring.labels(),
            "degrees": ring.degrees(),
            "tau": ring.tau(),
            "dim": ring.dim(),
            "unit": ring.label(ring.unit()),
            "point": ring.point().map(|p| ring.label(p)),
            "pairing": pairing,
        }),
        text: Some(text),
        csv: Some(csv),
    })
}

fn cmd_delta(s: &str) -> Res<Report> {
    let (id, ring) = build(s)?;
    let h = ring.handle_element();
    let closed = id.closed_form_delta(&ring)?;
    let delta = ring.delta();
    // With an installed element the pairing sum only sees the restricted
    // classes, so agreement is judged against the installed one.
    let closed_agrees = closed.as_ref().map(|c| c == delta);
    let formulas_agree = if ring.has_installed_delta() {
        closed_agrees.unwrap_or(true)
    } else {
        h.forms_agree && closed_agrees.unwrap_or(true)
    };
    let mut text = format!("Δ = {}\n", ring.format(delta));
    if let Some(c) = &closed {
        text.push_str(&format!("closed form: {}\n", ring.format(c)));
    }
    text.push_str(&format!("formulas agree: {formulas_agree}\n"));
    Ok(Report {
        json: json!({
            "ring": ring.name(),
            "delta": element_json(&ring, delta),
            "pairing_sum": element_json(&ring, &h.delta),
            "dual_basis_agrees": h.forms_agree,
            "installed": ring.has_installed_delta(),
            "pairing_sum_matches_installed": h.matches_installed,
            "closed_form": closed.as_ref().map(|c| element_json(&ring, c)),
            "closed_form_agrees": closed_agrees,
            "formulas_agree": formulas_agree,
        }),
        text: Some(text),
        csv: None,
    })
}

fn cmd_powers(s: &str, k: u32) -> Res<Report> {
    let (_, ring) = build(s)?;
    let powers = ring.delta_powers(k as usize);
    let mut text = String::new();
    let mut csv = vec![vec!["k".to_string(), "power".to_string()]];
    let list: Vec<Value> = powers
        .iter()
        .enumerate()
        .map(|(j, p)| {
            text.push_str(&format!("Δ^{j} = {}\n", ring.format(p)));
            csv.push(vec![j.to_string(), ring.format(p)]);
            json!({"k": j, "power": element_json(&ring, p)})
        })
        .collect();
    Ok(Report {
        json: json!({"ring": ring.name(), "powers": list}),
        text: Some(text),
        csv: Some(csv),
    })
}

fn cmd_complexity(o: &Opts, s: &str, from: &str, to: &str) -> Res<Report> {
    let (_, ring) = build(s)?;
    let (a, b) = (state(&ring, from)?, state(&ring, to)?);
    let km = kmax(o, &ring);
    let exact = exact_complexity(&ring, &a, &b, km)?;
    let approx = match o.eps {
        Some(eps) => Some(approx_complexity(&ring, &a, &b, eps, km)?),
        None => None,
    };
    let show = |k: Option<usize>, definitive: bool| match k {
        Some(k) => k.to_string(),
        None if definitive => "infinite".into(),
        None => format!("not found within {km}"),
    };
    let mut text = format!("exact: {}\n", show(exact.k, exact.definitive));
    if let Some(a) = &approx {
        text.push_str(&format!("approx (eps {}): {}\n", a.eps, show(a.k, false)));
    }
    Ok(Report {
        json: json!({
            "ring": ring.name(),
            "from": a.format(&ring),
            "to": b.format(&ring),
            "kmax": km,
            "exact": exact,
            "approx": approx,
        }),
        text: Some(text),
        csv: None,
    })
}

fn cmd_orbit(o: &Opts, s: &str, from: &str) -> Res<Report> {
    let (_, ring) = build(s)?;
    let z = state(&ring, from)?;
    let t = trajectory(&ring, &z, kmax(o, &ring))?;
    let states: Vec<String> = t.states.iter().map(|x| x.format(&ring)).collect();
    let mut text = String::new();
    let mut csv = vec![vec!["k".to_string(), "state".to_string()]];
    for (k, st) in states.iter().enumerate() {
        text.push_str(&format!("{k}: {st}\n"));
        csv.push(vec![k.to_string(), st.clone()]);
    }
    match (t.cycle, t.hits_zero_at) {
        (Some((start, period)), _) => text.push_str(&format!("cycle: returns to step {start}, period {period}\n")),
        (_, Some(k)) => text.push_str(&format!("reaches 0 at step {k}\n")),
        _ => text.push_str(&format!("open after {} steps\n", t.kmax)),
    }
    Ok(Report {
        json: json!({
            "ring": ring.name(),
            "from": z.format(&ring),
            "states": states,
            "coords": t.states,
            "cycle": t.cycle.map(|(s, p)| json!({"start": s, "period": p})),
            "hits_zero_at": t.hits_zero_at,
            "closed": t.is_closed(),
            "kmax": t.kmax,
        }),
        text: Some(text),
        csv: Some(csv),
    })
}

fn cmd_sinfty(o: &Opts, s: &str, from: &str) -> Res<Report> {
    let (_, ring) = build(s)?;
    let z = state(&ring, from)?;
    let mut opts = SInfinityOptions::for_ring(&ring);
    if let Some(k) = o.kmax {
        opts.kmax = k;
    }
    if let Some(t) = o.tol {
        opts.tol = t;
    }
    let si = s_infinity(&ring, &z, &opts)?;
    let points: Vec<String> = si.points.iter().map(|p| p.format(&ring)).collect();
    let mut text = format!("{} point(s) [{}]\n", points.len(), serde_json::to_value(si.method).expect("json").as_str().unwrap_or(""));
    for p in &points {
        text.push_str(&format!("  {p}\n"));
    }
    let mut csv = vec![vec!["point".to_string()]];
    csv.extend(points.iter().map(|p| vec![p.clone()]));
    Ok(Report {
        json: json!({
            "ring": ring.name(),
            "from": z.format(&ring),
            "count": points.len(),
            "points": points,
            "result": si,
        }),
        text: Some(text),
        csv: Some(csv),
    })
}

/// Closed-form dim F where one is known.
fn dim_f_closed_form(id: &RingId) -> Res<Option<usize>> {
    Ok(match id {
        RingId::Projective(n) => Some(n + 1),
        RingId::Grassmannian(2, n) => Some(rings::gr2_dim_f_closed_form(*n)),
        RingId::Fci(m) => rings::fci_report(m)?.predicted_dim_f,
        _ => None,
    })
}

fn cmd_dimf(s: &str) -> Res<Report> {
    let (id, ring) = build(s)?;
    let span = ring.f_span_dim();
    let closed = dim_f_closed_form(&id)?;
    let bound = ring.dim_bound();
    let mut text = format!("{}: dim F = {}", ring.name(), span.dim);
    if let Some(c) = closed {
        text.push_str(&format!(", closed form {c}"));
    }
    text.push_str(&format!(", bound {bound}\n"));
    Ok(Report {
        json: json!({
            "ring": ring.name(),
            "computed": span.dim,
            "closed_form": closed,
            "closed_form_agrees": closed.map(|c| c == span.dim),
            "bound": bound,
            "within_bound": span.dim <= bound,
            "span": span,
        }),
        text: Some(text),
        csv: Some(vec![
            vec!["ring".into(), "computed".into(), "closed_form".into(), "bound".into()],
            vec![ring.name().into(), span.dim.to_string(), closed.map(|c| c.to_string()).unwrap_or_default(), bound.to_string()],
        ]),
    })
}

fn cmd_table() -> Res<Report> {
    let mut rows = Vec::new();
    let mut csv = vec![vec!["ring".to_string(), "dimH".into(), "Est".into(), "dimF-computed".into()]];
    let mut text = String::new();
    for (k, n, _, _) in verify::EST_TABLE {
        let ring = rings::grassmannian(k as usize, n as usize)?;
        let est = est_bound(k, n)?;
        let dim = ring.f_span_dim().dim;
        let name = format!("Gr({k},{n})");
        text.push_str(&format!("{name:<8} dimH {:>3}  Est {est:>3}  dimF {dim:>3}\n", ring.rank()));
        csv.push(vec![name.clone(), ring.rank().to_string(), est.to_string(), dim.to_string()]);
        rows.push(json!({"ring": name, "dimH": ring.rank(), "Est": est, "dimF_computed": dim}));
    }
    Ok(Report {
        json: Value::Array(rows),
        text: Some(text),
        csv: Some(csv),
    })
}

fn cmd_amatrix(s: &str) -> Res<Report> {
    let (id, ring) = build(s)?;
    if let RingId::Fci(m) = &id {
        let rep = rings::fci_report(m)?;
        let hat = rep.hat.ok_or_else(|| {
            qh_core::Error::Unsupported(format!("{} has no point class; the A matrix exists only in the hat basis", ring.name()))
        })?;
        let text = hat.a_matrix.iter().map(|r| r.join("\t")).collect::<Vec<_>>().join("\n") + "\n";
        return Ok(Report {
            json: json!({"ring": ring.name(), "basis": "hat", "hat": hat}),
            text: Some(text),
            csv: None,
        });
    }
    let theta = ring.theta_order(4 * ring.rank() as u32 + 8)?;
    let a = ring.a_matrix(None)?;
    let minors: Vec<String> = a.leading_minors()?.iter().map(rational::to_string).collect();
    let pd = a.is_positive_definite()?;
    let rows = a.to_string_rows();
    let mut csv = vec![ring.labels().to_vec()];
    csv.extend(rows.iter().cloned());
    Ok(Report {
        json: json!({
            "ring": ring.name(),
            "labels": ring.labels(),
            "theta": theta,
            "matrix": rows,
            "symmetric": a.is_symmetric(),
            "leading_minors": minors,
            "positive_definite": pd,
        }),
        text: Some(format!("{a}symmetric: {}\npositive definite: {pd}\n", a.is_symmetric())),
        csv: Some(csv),
    })
}
