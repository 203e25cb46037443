use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mbs_core::billiard::Billiard;
use mbs_core::exact::{ExtendedReal, QuadSurd};
use mbs_core::literal::{parse_billiard, parse_form, parse_surd};
use mbs_core::render::{draw_billiard, draw_ford, draw_orbit_disks, figure, Viewport, FIGURES};
use mbs_core::spectra::{
    approximants, lambda_i, lambda_inf, lambda_point, markov_numbers, markov_triples, markov_value, spectrum_low,
    PointForm, SpectrumId, SpectrumPoint,
};
use mbs_core::verify;

/// Modular billiards and the Markov-type spectra M_inf, M_i, M_rho, M_2i.
#[derive(Parser)]
#[command(name = "mbs", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Smallest proven points of a spectrum.
    Spectrum {
        /// inf, i, rho or 2i
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Also evaluate the approximant family at these indices, e.g. 1,2,10.
        #[arg(long, value_delimiter = ',')]
        approximants: Vec<u32>,
    },
    /// Lagrange-type value of one billiard at a point.
    Lambda {
        /// inf, i, rho, 2i, sqrt-2, or a definite form such as form(1,1,1)
        #[arg(long)]
        point: String,
        #[command(flatten)]
        input: BilliardInput,
        /// Segment cap when the value is found by folding.
        #[arg(long, default_value_t = 100_000)]
        segments: usize,
    },
    /// Classify a billiard and fold its trajectory into the modular triangle.
    Billiard {
        #[command(flatten)]
        input: BilliardInput,
        #[arg(long, default_value_t = 1000)]
        segments: usize,
    },
    /// Markov triples up to a bound, or the first Markov numbers.
    Markov {
        #[arg(long, conflicts_with = "count")]
        bound: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Write an SVG figure.
    Render(RenderArgs),
    /// Run reproduction checks: suites theorems, lemmas, chains, render, or
    /// criterion numbers and keys. Runs everything when none is given.
    Verify {
        #[arg(long = "suite")]
        suites: Vec<String>,
        names: Vec<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BilliardInput {
    /// form(a,b,c)
    #[arg(long)]
    form: Option<String>,
    /// per(..);core;per(..) or per(..)
    #[arg(long)]
    seq: Option<String>,
    /// <alpha, beta>
    #[arg(long)]
    geodesic: Option<String>,
    /// Any of the three literal kinds.
    #[arg(long)]
    billiard: Option<String>,
}

#[derive(Args)]
struct RenderArgs {
    /// billiard, ford, disks, or a named figure (fig1, fig4, fig5, fig6-left, fig3-left, fig7)
    #[arg(long)]
    figure: String,
    /// Billiard literal for --figure billiard.
    #[arg(long)]
    billiard: Option<String>,
    #[arg(long, default_value_t = 100)]
    segments: usize,
    /// Ford radius scale (rational) for --figure ford.
    #[arg(long, default_value = "1/2")]
    scale: String,
    #[arg(long, default_value_t = 20)]
    qmax: u64,
    /// Orbit point for --figure disks.
    #[arg(long, default_value = "rho")]
    point: String,
    /// cosh of the hyperbolic disk radius, exact; defaults to the packing radius of the named points.
    #[arg(long)]
    cosh_radius: Option<String>,
    /// Real-axis window "x0,x1" as exact literals.
    #[arg(long)]
    window: Option<String>,
    /// Height cap, exact literal.
    #[arg(long)]
    height: Option<String>,
    #[arg(long, default_value_t = 600)]
    width: u32,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Math(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Math(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Math(m) | Failure::Verify(m) => m,
        }
    }
}

fn parse_err(e: impl Display) -> Failure {
    Failure::Parse(e.to_string())
}

fn math_err(e: impl Display) -> Failure {
    Failure::Math(e.to_string())
}

type Out = Result<String, Failure>;

fn precision() -> Result<usize, Failure> {
    match std::env::var("MBS_PRECISION") {
        Err(_) => Ok(15),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if (1..=10_000).contains(&n) => Ok(n),
            _ => Err(Failure::Parse(format!("MBS_PRECISION must be a positive integer, got '{s}'"))),
        },
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn show(x: &ExtendedReal, digits: usize) -> String {
    match x {
        ExtendedReal::Infinity => "inf".into(),
        ExtendedReal::Finite(v) if v.is_rational() => v.to_string(),
        ExtendedReal::Finite(v) => format!("{v} ≈ {}", v.to_decimal(digits)),
    }
}

fn point_line(pt: &SpectrumPoint, digits: usize) -> String {
    let attained = if pt.attained { "attained" } else { "limit" };
    format!(
        "{}  [{}, {}]  witness {}",
        show(&pt.value, digits),
        pt.certificate.name(),
        attained,
        witness_literal(&pt.witness)
    )
}

fn witness_literal(b: &Billiard) -> String {
    match &b.seq {
        Some(k) => k.to_string(),
        None => b.geodesic.to_string(),
    }
}

fn spectrum_id(s: &str) -> Result<SpectrumId, Failure> {
    SpectrumId::parse(s).ok_or_else(|| Failure::Parse(format!("unknown spectrum '{s}', expected inf, i, rho or 2i")))
}

fn input_billiard(i: &BilliardInput) -> Result<Billiard, Failure> {
    let lit = [&i.form, &i.seq, &i.geodesic, &i.billiard]
        .into_iter()
        .flatten()
        .next()
        .ok_or_else(|| Failure::Parse("a billiard literal is required".into()))?;
    if let Some(f) = &i.form {
        if !f.trim_start().starts_with("form") && !f.trim_start().starts_with('(') {
            return Err(Failure::Parse(format!("'{f}' is not a form literal")));
        }
    }
    billiard_literal(lit)
}

/// Syntax errors exit 2; literals that parse but describe no billiard exit 3.
fn billiard_literal(s: &str) -> Result<Billiard, Failure> {
    use mbs_core::literal::LiteralError;
    parse_billiard(s).map_err(|e| match e {
        LiteralError::Value(..) => math_err(e),
        e => parse_err(e),
    })
}

fn spectrum(id: &str, count: usize, ells: &[u32], as_json: bool, digits: usize) -> Out {
    let id = spectrum_id(id)?;
    let pts = spectrum_low(id, count).map_err(math_err)?;
    let approx = if ells.is_empty() {
        Vec::new()
    } else {
        approximants(id, ells).map_err(math_err)?
    };
    if as_json {
        let v = json!({
            "spectrum": id.name(),
            "points": pts.iter().map(|p| p.to_json(digits)).collect::<Vec<_>>(),
            "approximants": approx.iter().map(|(l, p)| json!({"ell": l, "point": p.to_json(digits)})).collect::<Vec<_>>(),
        });
        return Ok(pretty(&v));
    }
    let mut s = String::new();
    for (n, p) in pts.iter().enumerate() {
        s += &format!("{id}[{}] = {}\n", n + 1, point_line(p, digits));
    }
    for (l, p) in &approx {
        s += &format!("{id} approximant l={l}: {}\n", point_line(p, digits));
    }
    Ok(s)
}

fn point_form(s: &str) -> Result<PointForm, Failure> {
    if let Some(z) = SpectrumId::parse(s).and_then(SpectrumId::point) {
        return Ok(z);
    }
    if let Some(z) = PointForm::by_name(s) {
        return Ok(z);
    }
    let f = parse_form(s).map_err(parse_err)?;
    PointForm::new(f).map_err(math_err)
}

fn lambda(point: &str, input: &BilliardInput, segments: usize, as_json: bool, digits: usize) -> Out {
    let b = input_billiard(input)?;
    let pt = if point == "inf" || point == "M_inf" {
        lambda_inf(&b).map_err(math_err)?
    } else {
        let z = point_form(point)?;
        if z.name() == Some("i") && b.proper {
            lambda_i(&b).map_err(math_err)?
        } else {
            lambda_point(&z, &b, segments).map_err(math_err)?
        }
    };
    if as_json {
        let mut v = pt.to_json(digits);
        v["point"] = json!(point);
        return Ok(pretty(&v));
    }
    Ok(format!("lambda_{point} = {}\n", point_line(&pt, digits)))
}

fn billiard(input: &BilliardInput, segments: usize, as_json: bool, digits: usize) -> Out {
    let b = input_billiard(input)?;
    let rep = b.fold(segments).map_err(math_err)?;
    let segs = rep.all_segments().map_err(math_err)?;
    let total: f64 = segs.iter().map(|s| s.length()).sum();
    let word: String = rep.exits.iter().map(|s| s.name()).collect::<Vec<_>>().join(" ");
    if as_json {
        let mut v = b.to_json(digits);
        v["fold"] = json!({
            "segments": segs.iter().enumerate().map(|(n, s)| s.to_json(n + 1, digits)).collect::<Vec<_>>(),
            "exits": rep.exits.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "closed": rep.closed,
            "cusp": rep.cusp,
            "length": total,
        });
        return Ok(pretty(&v));
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = String::new();
    s += &format!("geodesic     {}\n", b.geodesic);
    s += &format!("form         {}\n", b.form);
    if let Some(k) = &b.seq {
        s += &format!("sequence     {k}\n");
    }
    s += &format!("proper       {}\n", yes(b.proper));
    s += &format!("orientable   {}\n", yes(b.orientable));
    s += &format!("periodic     {}\n", yes(b.periodic));
    if let (Some(d), Some(p)) = (&b.disc, &b.pell) {
        s += &format!("disc         {d}\n");
        s += &format!("unit         {}\n", p.epsilon);
        s += &format!("length       {:.12}\n", p.length());
    }
    let end = if rep.closed {
        "closed"
    } else if rep.cusp {
        "reached the cusp"
    } else {
        "cut off"
    };
    s += &format!("fold         {} segments, {end}, length {total:.12}\n", rep.len());
    s += &format!("exits        {word}\n");
    Ok(s)
}

fn markov(bound: Option<u64>, count: Option<usize>, as_json: bool, digits: usize) -> Out {
    if let Some(n) = count {
        let nums = markov_numbers(n);
        let vals = nums
            .iter()
            .map(|&p| markov_value(p).map(|v| (p, v)))
            .collect::<Result<Vec<(u64, QuadSurd)>, _>>()
            .map_err(math_err)?;
        if as_json {
            let v: Vec<Value> = vals.iter().map(|(p, v)| json!({"p": p, "value": v.to_json(digits)})).collect();
            return Ok(pretty(&json!(v)));
        }
        return Ok(vals.iter().map(|(p, v)| format!("{p}  {v} ≈ {}\n", v.to_decimal(digits))).collect());
    }
    let triples = markov_triples(bound.unwrap_or(1000));
    if as_json {
        return Ok(pretty(&json!(triples.iter().map(|t| t.to_json()).collect::<Vec<_>>())));
    }
    Ok(triples.iter().map(|t| format!("({}, {}, {})\n", t.p, t.q, t.r)).collect())
}

fn exact_f64(s: &str) -> Result<f64, Failure> {
    Ok(parse_surd(s).map_err(parse_err)?.to_f64())
}

fn viewport(a: &RenderArgs, default: (f64, f64, f64)) -> Result<Viewport, Failure> {
    let (mut x0, mut x1, mut y) = default;
    if let Some(w) = &a.window {
        let (l, r) = w
            .split_once(',')
            .ok_or_else(|| Failure::Parse(format!("window '{w}' must be 'x0,x1'")))?;
        x0 = exact_f64(l)?;
        x1 = exact_f64(r)?;
    }
    if let Some(h) = &a.height {
        y = exact_f64(h)?;
    }
    Viewport::new(x0, x1, y, a.width as f64).map_err(math_err)
}

fn default_cosh(z: &PointForm) -> Option<&'static str> {
    match z.name() {
        Some("rho") => Some("2*sqrt(3)/3"),
        Some("i") => Some("sqrt(5)/2"),
        Some("sqrt-2") => Some("3*sqrt(2)/4"),
        _ => None,
    }
}

fn render(a: &RenderArgs) -> Out {
    let svg = match a.figure.as_str() {
        "billiard" => {
            let lit = a
                .billiard
                .as_deref()
                .ok_or_else(|| Failure::Parse("--figure billiard needs --billiard".into()))?;
            let b = billiard_literal(lit)?;
            let mut scene = draw_billiard(&b, a.segments, viewport(a, (-0.1, 0.6, 2.2))?).map_err(math_err)?;
            scene.axis();
            scene.to_svg()
        }
        "ford" => {
            let scale = parse_surd(&a.scale)
                .map_err(parse_err)?
                .to_rational()
                .ok_or_else(|| Failure::Parse("--scale must be rational".into()))?;
            let mut scene = draw_ford(viewport(a, (0.0, 1.0, 1.05))?, &scale, a.qmax).map_err(math_err)?;
            scene.axis();
            scene.to_svg()
        }
        "disks" => {
            let z = point_form(&a.point)?;
            let c = match (&a.cosh_radius, default_cosh(&z)) {
                (Some(c), _) => parse_surd(c).map_err(parse_err)?,
                (None, Some(c)) => parse_surd(c).expect("default radius"),
                (None, None) => return Err(Failure::Parse("--cosh-radius is required for this point".into())),
            };
            if c <= QuadSurd::one() {
                return Err(Failure::Math("cosh of the radius must exceed 1".into()));
            }
            let r = c.to_f64().acosh();
            let mut scene = draw_orbit_disks(&z, r, viewport(a, (-1.0, 1.0, 1.6))?, 0.25).map_err(math_err)?;
            scene.axis();
            scene.to_svg()
        }
        name if FIGURES.contains(&name) => figure(name).map_err(math_err)?,
        other => return Err(Failure::Parse(format!("unknown figure '{other}'"))),
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, &svg).map_err(|e| Failure::Math(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(svg),
    }
}

fn run_verify(suites: &[String], names: &[String], as_json: bool) -> Out {
    let all: Vec<String> = suites.iter().chain(names).cloned().collect();
    let picked = verify::select(&all).map_err(Failure::Parse)?;
    let outcomes: Vec<verify::Outcome> = picked.iter().map(|c| c.run()).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let text = if as_json {
        pretty(&json!({
            "passed": failed == 0,
            "criteria": outcomes.iter().map(verify::Outcome::to_json).collect::<Vec<_>>(),
        }))
    } else {
        let mut s: String = outcomes.iter().map(|o| o.line() + "\n").collect();
        s += &format!("{} of {} passed\n", outcomes.len() - failed, outcomes.len());
        s
    };
    if failed > 0 {
        return Err(Failure::Verify(text));
    }
    Ok(text)
}

fn run(cli: Cli) -> Out {
    let digits = precision()?;
    let j = cli.json;
    match &cli.cmd {
        Cmd::Spectrum {
            point,
            count,
            approximants,
        } => spectrum(point, *count, approximants, j, digits),
        Cmd::Lambda { point, input, segments } => lambda(point, input, *segments, j, digits),
        Cmd::Billiard { input, segments } => billiard(input, *segments, j, digits),
        Cmd::Markov { bound, count } => markov(*bound, *count, j, digits),
        Cmd::Render(a) => render(a),
        Cmd::Verify { suites, names } => run_verify(suites, names, j),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(s) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Failure::Verify(report) = &f {
                let _ = std::io::stdout().write_all(report.as_bytes());
                eprintln!("mbs: verification failed");
            } else {
                eprintln!("mbs: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
