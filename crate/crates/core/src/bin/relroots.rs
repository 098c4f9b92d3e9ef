use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use relroots::chip_firing::h_vector_chip;
use relroots::closed_forms::{build_family_graph, rel_family, FamilyParams};
use relroots::driver::{certify_with_box, default_box, table1, table1_csv};
use relroots::poly::{HVector, RatPoly};
use relroots::reliability::{
    f_vector, rel_bruteforce, rel_deletion_contraction, reliability, DEFAULT_BUDGET,
};
use relroots::roots::{find_roots, roots_svg, write_roots_csv};
use relroots::stability::{
    build_fn, complexify, schur_cohn, schur_cohn_box, ParamBox, DEFAULT_MAX_DEPTH,
};
use relroots::substitution::{edge_substitute_graph, edge_substitute_poly, Gadget};
use relroots::{Error, Multigraph, Result};

#[derive(Parser)]
#[command(
    name = "relroots",
    version,
    about = "All-terminal reliability polynomials and their roots"
)]
struct Cli {
    /// Working precision for root polishing, in bits.
    #[arg(long, global = true, default_value_t = 256)]
    precision_bits: u32,
    /// Decimal places in printed roots.
    #[arg(long, global = true, default_value_t = 10)]
    digits: usize,
    /// Force a reliability method.
    #[arg(long, global = true, value_enum)]
    method: Option<Method>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest number of distinct edge pairs for subset enumeration.
    #[arg(long, global = true, default_value_t = 24)]
    guard_m: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Dc,
    Family,
}

#[derive(Subcommand)]
enum Command {
    /// Reliability polynomial of a graph file.
    Rel {
        graph: PathBuf,
        /// Family parameters `m,n,a,b` for `--method family`.
        #[arg(long)]
        family: Option<String>,
    },
    /// Roots of a polynomial (JSON file, graph file or literal such as `q^2-2`) as CSV.
    Roots {
        input: String,
        /// Also write an SVG scatter plot.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// H-vector of a graph, from the F-vector or from critical configurations.
    Hvector {
        graph: PathBuf,
        /// Count critical configurations with this sink instead.
        #[arg(long)]
        sink: Option<usize>,
    },
    /// Reliability (or the graph) of two joined cliques.
    Family {
        m: usize,
        n: usize,
        a: u64,
        b: u64,
        #[arg(long)]
        graph: bool,
    },
    /// Replace every edge of a graph by a gadget.
    Substitute {
        graph: PathBuf,
        gadget: PathBuf,
        #[arg(long, default_value_t = 0)]
        u: usize,
        #[arg(long, default_value_t = 1)]
        v: usize,
        /// Emit the substituted graph instead of its reliability.
        #[arg(long)]
        graph_out: bool,
    },
    /// Schur-Cohn signs of a polynomial, or of f_n over a parameter box.
    SchurCohn {
        /// Polynomial JSON file or literal.
        input: Option<String>,
        #[arg(long, conflicts_with = "input")]
        fn_n: Option<usize>,
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["A_LO", "A_HI", "B_LO", "B_HI"], requires = "fn_n")]
        r#box: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: u32,
    },
    /// Certify a root outside the unit disk for the substituted graph G^(k,n).
    Certify {
        k: u64,
        n: usize,
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["A_LO", "A_HI", "B_LO", "B_HI"])]
        r#box: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: u32,
    },
    /// Largest-modulus roots of G_{n,n}^{1,6}.
    Table1 {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    Multigraph::parse_json(&read(path)?)
}

fn parse_family(s: &str) -> Result<FamilyParams> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Parse(format!("expected m,n,a,b, got {s:?}"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let m = parts[0].parse().map_err(|_| bad())?;
    let n = parts[1].parse().map_err(|_| bad())?;
    let a = parts[2].parse().map_err(|_| bad())?;
    let b = parts[3].parse().map_err(|_| bad())?;
    FamilyParams::new(m, n, a, b)
}

fn parse_box(v: &[String]) -> Result<ParamBox> {
    ParamBox::parse(&v[0], &v[1], &v[2], &v[3])
}

/// Polynomial from a JSON file, a graph file (its reliability), or a literal.
fn read_poly(input: &str, cli: &Cli) -> Result<RatPoly> {
    let path = Path::new(input);
    if path.is_file() {
        let text = read(path)?;
        if let Ok(p) = RatPoly::parse_json(&text) {
            return Ok(p);
        }
        let g = Multigraph::parse_json(&text)?;
        return rel_with(&g, cli, None);
    }
    RatPoly::parse_literal(input)
}

fn rel_with(g: &Multigraph, cli: &Cli, family: Option<&str>) -> Result<RatPoly> {
    match cli.method {
        None => reliability(g, cli.guard_m, DEFAULT_BUDGET),
        Some(Method::Brute) => rel_bruteforce(g, cli.guard_m),
        Some(Method::Dc) => rel_deletion_contraction(g, DEFAULT_BUDGET),
        Some(Method::Family) => {
            let spec = family.ok_or_else(|| {
                Error::InvalidArgument("--method family needs --family m,n,a,b".into())
            })?;
            let params = parse_family(spec)?;
            if build_family_graph(&params)? != *g {
                return Err(Error::InvalidArgument(format!(
                    "graph is not G_{{{},{}}}^{{{},{}}}",
                    params.m, params.n, params.a, params.b
                )));
            }
            rel_family(&params)
        }
    }
}

fn h_json(h: &HVector) -> String {
    json!({
        "n": h.n,
        "m": h.m,
        "h": h.values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
    .to_string()
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match &cli.out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Rel { graph, family } => {
            let g = read_graph(graph)?;
            emit(cli, &rel_with(&g, cli, family.as_deref())?.to_json())
        }
        Command::Roots { input, svg } => {
            let p = read_poly(input, cli)?;
            let rs = find_roots(&p, cli.precision_bits)?;
            let mut buf = Vec::new();
            write_roots_csv(&rs, &mut buf)?;
            if let Some(path) = svg {
                fs::write(path, roots_svg(&rs))?;
            }
            emit(cli, &String::from_utf8_lossy(&buf))
        }
        Command::Hvector { graph, sink } => {
            let g = read_graph(graph)?;
            let h = match sink {
                Some(s) => h_vector_chip(&g, *s)?,
                None => f_vector(&g, cli.guard_m)?.to_h()?,
            };
            emit(cli, &h_json(&h))
        }
        Command::Family { m, n, a, b, graph } => {
            let params = FamilyParams::new(*m, *n, *a, *b)?;
            if *graph {
                emit(cli, &build_family_graph(&params)?.to_json())
            } else {
                emit(cli, &rel_family(&params)?.to_json())
            }
        }
        Command::Substitute {
            graph,
            gadget,
            u,
            v,
            graph_out,
        } => {
            let g = read_graph(graph)?;
            let h = Gadget::new(read_graph(gadget)?, *u, *v)?;
            if *graph_out {
                emit(cli, &edge_substitute_graph(&g, &h)?.to_json())
            } else {
                emit(cli, &edge_substitute_poly(&g, &h, cli.guard_m)?.to_json())
            }
        }
        Command::SchurCohn {
            input,
            fn_n,
            r#box,
            max_depth,
        } => {
            let report = match (input, fn_n) {
                (Some(input), _) => schur_cohn(&complexify(&read_poly(input, cli)?))?,
                (None, Some(n)) => {
                    let b = r#box
                        .as_deref()
                        .ok_or_else(|| Error::InvalidArgument("--fn-n needs --box".into()))?;
                    schur_cohn_box(&build_fn(*n)?.on_box(parse_box(b)?), *max_depth)?
                }
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "give a polynomial or --fn-n with --box".into(),
                    ))
                }
            };
            emit(cli, &report.to_json().to_string())?;
            report.require_determinate().map(|_| ())
        }
        Command::Certify {
            k,
            n,
            r#box,
            max_depth,
        } => {
            let b = match r#box {
                Some(v) => parse_box(v)?,
                None => default_box(*k, *n)?,
            };
            let cert = certify_with_box(*k, *n, b, *max_depth, cli.precision_bits, true)?;
            emit(
                cli,
                &serde_json::to_string_pretty(&cert.to_json()).expect("json"),
            )?;
            cert.report.clone().require_determinate()?;
            if cert.pass() {
                Ok(())
            } else {
                Err(Error::Indeterminate(cert.report.subdivision_depth))
            }
        }
        Command::Table1 { max_n } => {
            let rows = table1(*max_n, cli.precision_bits)?;
            emit(cli, &table1_csv(&rows, cli.digits))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("relroots: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
