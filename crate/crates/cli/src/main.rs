//! `krh`: filtered Khovanov–Rozansky homology from the command line.
//!
//! Exit codes: 0 success, 1 parse error, 2 invalid configuration,
//! 3 computation failure or a failed check.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use krh_core::algebra::rational::Q;
use krh_core::algebra::Potential;
use krh_core::invariants::{gornik_dimension_check, link_states, s_n_of, slice_bound_report, state_bits_for, Check, Report};
use krh_core::link::homology::build_complex_with;
use krh_core::link::{homology_of, pages_of, parse_diagram, LinkDiagram};
use krh_core::mf::CohomOptions;
use krh_core::moy::{admissible_states, graph_cohomology, moy_dimension, PlanarGraph};
use krh_core::{suites, Error};

#[derive(Parser)]
#[command(name = "krh", version, about = "Filtered sl(n) link homology from matrix factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a link diagram: bigraded for x^{n+1}, filtered otherwise.
    Homology(Common),
    /// Graded dimension of a closed MOY graph by the MOY calculus.
    MoyDim(Common),
    /// Admissible states of a graph, or the Gornik labelings of a link.
    States(Common),
    /// Pages E_1, E_2, … of the filtration spectral sequence.
    Pages(Common),
    /// g^max, g^min and s_n, with the Gornik basis check.
    Invariants(Common),
    /// Runs a bundled verification suite.
    Verify(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// n ≥ 2.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// `slN`, `gornik`, or coefficients c_0,…,c_n of the lower terms.
    #[arg(long)]
    potential: Option<String>,
    /// PD code, as a file, a bundled fixture name or inline text.
    #[arg(long, group = "input")]
    pd: Option<String>,
    /// Braid word such as "s1 s2^-1 s1".
    #[arg(long, group = "input")]
    braid: Option<String>,
    /// MOY graph file or bundled fixture name.
    #[arg(long, group = "input")]
    graph: Option<String>,
    #[arg(long)]
    json: bool,
    /// Ceiling on the truncation degree; beats KRH_MAX_DEGREE.
    #[arg(long)]
    truncation: Option<i32>,
    /// Suite for `verify`; all suites when absent.
    #[arg(long)]
    suite: Option<String>,
    /// Last page for `pages`.
    #[arg(long)]
    max_page: Option<usize>,
    /// Euler characteristic of a candidate slice surface, for `invariants`.
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<i32>,
}

enum Fail {
    Core(Error),
    Config(String),
    Checks(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Core(e)
    }
}

type Out = Result<String, Fail>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ParseError { .. } | Error::InconsistentOrientation(_) | Error::UnmarkedEdge(_) => 1,
        Error::InvalidPotential(_) | Error::InvalidConfig(_) | Error::LabelOutOfRange { .. } | Error::NotAKnot(_) => 2,
        _ => 3,
    }
}

fn potential(c: &Common, default: &str) -> Result<Potential, Fail> {
    let text = c.potential.as_deref().unwrap_or(default);
    let p = match text.to_ascii_lowercase().as_str() {
        "sln" | "sl" | "homogeneous" => Potential::sl(c.n)?,
        "gornik" => Potential::gornik(c.n)?,
        _ => {
            let cs: Option<Vec<Q>> = text.split(',').map(|s| Q::parse(s.trim())).collect();
            let cs = cs.ok_or_else(|| Fail::Config(format!("cannot read potential `{text}`")))?;
            if cs.len() != c.n + 1 {
                return Err(Fail::Config(format!("custom potential needs c_0..c_{} ({} values), got {}", c.n, c.n + 1, cs.len())));
            }
            Potential::new(c.n, cs)?
        }
    };
    Ok(p)
}

fn options(c: &Common) -> CohomOptions {
    let mut o = CohomOptions::default();
    if c.truncation.is_some() {
        o.max_degree = c.truncation;
    }
    o
}

const ALIASES: &[(&str, &str)] = &[("unknot.pd", "unknot-0.pd"), ("trefoil.braid", "trefoil-a.braid")];

/// Text of an input: an existing file, a bundled fixture, or the argument itself.
fn read_input(arg: &str, fixtures: &[(&str, &str)]) -> Result<String, Fail> {
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Fail::Config(format!("{arg}: {e}")));
    }
    let base = path.file_name().and_then(|s| s.to_str()).unwrap_or(arg);
    let base = ALIASES.iter().find(|a| a.0 == base).map_or(base, |a| a.1);
    if let Some((_, text)) = fixtures.iter().find(|f| f.0 == base) {
        return Ok(text.to_string());
    }
    let looks_like_file = arg.contains('/') || [".pd", ".braid", ".g"].iter().any(|x| arg.ends_with(x));
    if looks_like_file {
        return Err(Fail::Config(format!("no such file or bundled fixture: {arg}")));
    }
    Ok(arg.to_string())
}

fn diagram(c: &Common) -> Result<(String, LinkDiagram), Fail> {
    let text = match (&c.pd, &c.braid) {
        (Some(a), _) | (None, Some(a)) => read_input(a, suites::LINKS)?,
        _ => return Err(Fail::Config("this command needs --pd or --braid".into())),
    };
    let d = parse_diagram(&text)?;
    Ok((text.trim().to_string(), d))
}

fn graph(c: &Common) -> Result<(String, PlanarGraph), Fail> {
    let arg = c.graph.as_deref().ok_or_else(|| Fail::Config("this command needs --graph".into()))?;
    let text = read_input(arg, suites::GRAPHS)?;
    let g = PlanarGraph::parse(&text)?;
    Ok((text.trim().to_string(), g))
}

fn report(diagram: String, p: &Potential) -> Report {
    Report {
        diagram,
        n: p.n(),
        potential: p.to_text(),
        dims: vec![],
        poincare: String::new(),
        gmax: None,
        gmin: None,
        s_n: None,
        checks: vec![],
    }
}

fn table(dims: &[(i32, i32, usize)]) -> String {
    let mut s = String::from("   i     q   dim\n");
    for (i, q, d) in dims {
        s += &format!("{i:>4} {q:>5} {d:>5}\n");
    }
    s
}

fn homology_cmd(c: &Common) -> Out {
    let (text, d) = diagram(c)?;
    let p = potential(c, "slN")?;
    let h = homology_of(&build_complex_with(&d, &p, &options(c))?);
    let mut r = report(text, &p);
    r.dims = h.dims.clone();
    r.poincare = h.poincare();
    if !p.is_homogeneous() {
        let (hi, lo) = h.gmax_gmin()?;
        r.gmax = Some(hi);
        r.gmin = Some(lo);
    }
    if c.json {
        return Ok(r.to_json());
    }
    let kind = if p.is_homogeneous() { "bigraded" } else { "filtered" };
    Ok(format!("p = {}, n = {}, {kind}, total dimension {}\n{}\n{}", r.potential, r.n, h.total(), r.poincare, table(&r.dims)))
}

fn moy_cmd(c: &Common) -> Out {
    let (text, g) = graph(c)?;
    let dim = moy_dimension(&g, c.n)?;
    let mut r = report(text, &Potential::sl(c.n)?);
    r.dims = dim.0.iter().map(|(q, k)| (0, *q, *k as usize)).collect();
    r.poincare = dim.to_string();
    // with an explicit potential, compare against direct cohomology
    if c.potential.is_some() {
        let p = potential(c, "slN")?;
        let mut o = options(c);
        o.certificate = None;
        let direct = graph_cohomology(&g, &p, &o)?.coh.filtered_total();
        r.potential = p.to_text();
        r.checks.push(Check::new("direct cohomology", direct == dim, direct.to_string()));
    }
    let out = if c.json {
        r.to_json()
    } else {
        let mut s = format!("{dim}\n");
        for ch in &r.checks {
            s += &format!("{} {}: {}\n", if ch.pass { "pass" } else { "FAIL" }, ch.name, ch.detail);
        }
        s
    };
    if r.all_pass() {
        Ok(out)
    } else {
        Err(Fail::Checks(out))
    }
}

fn states_cmd(c: &Common) -> Out {
    if c.graph.is_some() {
        let (text, g) = graph(c)?;
        let states = admissible_states(&g, c.n);
        let lines: Vec<String> = states.iter().map(|s| s.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")).collect();
        if c.json {
            let v = serde_json::json!({ "graph": text, "n": c.n, "count": states.len(), "states": states });
            return Ok(serde_json::to_string_pretty(&v).expect("states serialize"));
        }
        return Ok(format!("{} admissible states\n{}\n", states.len(), lines.join("\n")));
    }
    let (text, d) = diagram(c)?;
    let states = link_states(d.component_count(), c.n);
    let rows: Vec<(Vec<usize>, u64)> = states.iter().map(|s| Ok((s.clone(), state_bits_for(&d, c.n, s)?))).collect::<Result<_, Error>>()?;
    if c.json {
        let v: Vec<_> = rows.iter().map(|(s, b)| serde_json::json!({ "labels": s, "resolution": b, "degree": d.vertex_degree(*b) })).collect();
        let v = serde_json::json!({ "diagram": text, "n": c.n, "count": rows.len(), "states": v });
        return Ok(serde_json::to_string_pretty(&v).expect("states serialize"));
    }
    let mut s = format!("{} Gornik states (labels per component → resolution, degree)\n", rows.len());
    for (l, b) in &rows {
        s += &format!("{l:?} → {b:0w$b}, {}\n", d.vertex_degree(*b), w = d.crossings.len().max(1));
    }
    Ok(s)
}

fn pages_cmd(c: &Common) -> Out {
    let (text, d) = diagram(c)?;
    let p = potential(c, "gornik")?;
    let cube = build_complex_with(&d, &p, &options(c))?;
    let pages: Vec<_> = pages_of(&cube, c.max_page).into_iter().skip(1).collect();
    if c.json {
        let v = serde_json::json!({ "diagram": text, "n": p.n(), "potential": p.to_text(), "pages": pages });
        return Ok(serde_json::to_string_pretty(&v).expect("pages serialize"));
    }
    let mut s = format!("p = {}, n = {}\n", p.to_text(), p.n());
    for pg in &pages {
        s += &format!("E_{} (total {})\n{}", pg.r, pg.total(), table(&pg.dims));
    }
    Ok(s)
}

fn invariants_cmd(c: &Common) -> Out {
    let (text, d) = diagram(c)?;
    let p = potential(c, "gornik")?;
    let opts = options(c);
    let cube = build_complex_with(&d, &p, &opts)?;
    let h = homology_of(&cube);
    let (hi, lo) = h.gmax_gmin()?;
    let mut r = report(text, &p);
    r.dims = h.dims.clone();
    r.poincare = h.poincare();
    r.gmax = Some(hi);
    r.gmin = Some(lo);
    if p.is_gornik() {
        if d.is_knot() {
            r.s_n = Some(s_n_of(&d, &h)?.to_string());
        }
        let g = gornik_dimension_check(&cube)?;
        r.checks.push(Check::new("gornik basis", g.pass(), format!("dim {} = n^m {}, rank {}", g.dimension, g.expected, g.independent_rank)));
        let top = homology_of(&build_complex_with(&d, &p.top(), &opts)?).gmax_gmin()?.0;
        r.checks.push(Check::new("g^max dominance", hi <= top, format!("{hi} ≤ {top}")));
        if let Some(chi) = c.chi {
            let b = slice_bound_report(&d, p.n(), chi)?;
            let pass = b.holds && b.genus_bound.unwrap_or(true);
            r.checks.push(Check::new("slice bound", pass, format!("g^max {} ≥ (n-1)χ = {}, χ ≤ {}", b.gmax, (p.n() as i32 - 1) * chi, b.chi_upper)));
        }
    } else if c.chi.is_some() {
        return Err(Fail::Config("--chi needs the Gornik potential".into()));
    }
    let failed = !r.all_pass();
    let out = if c.json {
        r.to_json()
    } else {
        let mut s = format!("p = {}, n = {}\ngmax = {hi}\ngmin = {lo}\n", r.potential, r.n);
        if let Some(v) = &r.s_n {
            s += &format!("s_{} = {v}\n", r.n);
        }
        for ch in &r.checks {
            s += &format!("{} {}: {}\n", if ch.pass { "pass" } else { "FAIL" }, ch.name, ch.detail);
        }
        s
    };
    if failed {
        return Err(Fail::Checks(out));
    }
    Ok(out)
}

fn verify_cmd(c: &Common) -> Out {
    let names: Vec<&str> = match &c.suite {
        Some(s) => vec![s.as_str()],
        None => suites::SUITES.to_vec(),
    };
    if !names.iter().all(|s| suites::SUITES.contains(s)) {
        return Err(Fail::Config(format!("unknown suite; expected one of {}", suites::SUITES.join(", "))));
    }
    let mut r = report(format!("suite:{}", names.join(",")), &Potential::sl(c.n)?);
    r.potential = String::new();
    for s in names {
        for mut ch in suites::run(s, c.n)? {
            ch.name = format!("{s}: {}", ch.name);
            r.checks.push(ch);
        }
    }
    let out = if c.json {
        r.to_json()
    } else {
        let pass = r.checks.iter().filter(|c| c.pass).count();
        let mut s = String::new();
        for ch in &r.checks {
            s += &format!("{} {}{}\n", if ch.pass { "pass" } else { "FAIL" }, ch.name, if ch.detail.is_empty() { String::new() } else { format!(" ({})", ch.detail) });
        }
        s + &format!("{pass}/{} passed\n", r.checks.len())
    };
    if r.all_pass() {
        Ok(out)
    } else {
        Err(Fail::Checks(out))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Homology(c) => homology_cmd(c),
        Command::MoyDim(c) => moy_cmd(c),
        Command::States(c) => states_cmd(c),
        Command::Pages(c) => pages_cmd(c),
        Command::Invariants(c) => invariants_cmd(c),
        Command::Verify(c) => verify_cmd(c),
    };
    match res {
        Ok(s) => {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Fail::Checks(s)) => {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
            ExitCode::from(3)
        }
        Err(Fail::Config(m)) => {
            eprintln!("krh: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Core(e)) => {
            eprintln!("krh: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
