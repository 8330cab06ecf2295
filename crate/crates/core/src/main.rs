use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hochop::complexes::models::build_d;
use hochop::complexes::GradedHomology;
use hochop::hochschild::build_l9_witness;
use hochop::operad::basis::{enumerate_basis, types_in_window};
use hochop::operad::braces::brace_complex;
use hochop::operad::complex::{row_complex, suboperad_filter, truncated_complex, Suboperad};
use hochop::operad::{differential, NatTree, SignConvention, TreeType};
use hochop::verify::{run_suite, Params, Report, SUITES};
use hochop::Error;

#[derive(Parser)]
#[command(name = "hochop", version, about = "Trees, differentials and homology of operations on Hochschild cochains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count basis trees of one type `l;k1,..,kn` or of every type in a window.
    Enumerate {
        /// A type such as `1;1`, `0;2,0` or `1;`.
        #[arg(value_name = "TYPE")]
        tree_type: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "K")]
        k_max: Option<usize>,
        #[arg(long = "L")]
        l_max: Option<usize>,
        #[arg(long, default_value = "B")]
        suboperad: String,
    },
    /// The differential of a tree given in the notation `m(1,f1(2,e))`,
    /// or `example` for the worked example.
    Diff {
        tree: String,
        #[arg(long, default_value = "B")]
        suboperad: String,
    },
    /// Homology of a truncated component, a single row, or the brace complex (`--suboperad Br`).
    Homology {
        #[arg(long)]
        n: usize,
        #[arg(long = "K")]
        k_max: usize,
        #[arg(long = "L")]
        l_max: usize,
        /// One of B, T, Bhat, NormB, Br.
        #[arg(long, default_value = "B")]
        suboperad: String,
        /// Only the row with these arities, e.g. `1` or `2,0`.
        #[arg(long)]
        row: Option<String>,
    },
    /// Run a named suite of exact checks, or `all`.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long = "N")]
        n_max: Option<i64>,
        #[arg(long = "K")]
        k_max: Option<usize>,
        #[arg(long = "L")]
        l_max: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write an object as JSON: `D` (needs --q, --N), `component` (needs --n,
    /// --K, --L), `example` (the worked example tree) or `witness`.
    Export {
        object: String,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long = "N")]
        n_max: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "K")]
        k_max: Option<usize>,
        #[arg(long = "L")]
        l_max: Option<usize>,
        #[arg(long, default_value = "B")]
        suboperad: String,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| usage(format!("{flag} is required")))
}

/// Columns padded to the widest cell; the first row is the header.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> =
            r.iter().enumerate().map(|(c, s)| format!("{s}{}", " ".repeat(widths[c] - s.chars().count()))).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn parse_type(s: &str) -> std::result::Result<TreeType, Failure> {
    let (l, ks) = s.split_once(';').ok_or_else(|| usage(format!("type {s} should look like l;k1,k2")))?;
    let l = l.trim().parse().map_err(|_| usage(format!("bad output colour in {s}")))?;
    let ks = ks
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| usage(format!("bad input colour {x}"))))
        .collect::<std::result::Result<Vec<usize>, _>>()?;
    Ok(TreeType::new(l, ks))
}

fn parse_tree(s: &str) -> std::result::Result<NatTree, Failure> {
    if s == "example" {
        return Ok(NatTree::worked_example());
    }
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

fn parse_sub(s: &str) -> std::result::Result<Suboperad, Failure> {
    s.parse().map_err(Failure::from)
}

fn homology_json(h: &GradedHomology) -> Value {
    Value::Array(
        h.iter()
            .map(|(t, g)| {
                json!({"degree": t, "rank": g.rank, "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()})
            })
            .collect(),
    )
}

fn homology_rows(h: &GradedHomology) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["degree".into(), "rank".into(), "torsion".into()]];
    for (t, g) in h {
        let tor: Vec<String> = g.torsion.iter().map(|x| format!("Z/{x}")).collect();
        rows.push(vec![t.to_string(), g.rank.to_string(), if tor.is_empty() { "-".into() } else { tor.join(" ") }]);
    }
    rows
}

fn render(fmt: Format, v: &Value, text: impl FnOnce() -> String) -> String {
    match fmt {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).unwrap()),
        Format::Table => text(),
    }
}

fn enumerate(
    fmt: Format,
    tree_type: Option<String>,
    n: Option<usize>,
    k_max: Option<usize>,
    l_max: Option<usize>,
    sub: &str,
) -> Outcome {
    let sub = parse_sub(sub)?;
    let types = match tree_type {
        Some(t) => vec![parse_type(&t)?],
        None => types_in_window(need(n, "--n")?, need(k_max, "--K")?, need(l_max, "--L")?),
    };
    let counts: Vec<(TreeType, usize)> = types
        .into_iter()
        .map(|tt| {
            let c = enumerate_basis(&tt).iter().filter(|t| sub.contains(t)).count();
            (tt, c)
        })
        .collect();
    let v = Value::Array(
        counts.iter().map(|(tt, c)| json!({"l": tt.l, "ks": tt.ks, "degree": tt.degree(), "count": c})).collect(),
    );
    let text = || {
        let mut rows = vec![vec!["type".into(), "degree".into(), "count".into()]];
        rows.extend(counts.iter().map(|(tt, c)| vec![tt.to_string(), tt.degree().to_string(), c.to_string()]));
        table(&rows)
    };
    Ok((render(fmt, &v, text), true))
}

fn diff(fmt: Format, tree: &str, sub: &str) -> Outcome {
    let t = parse_tree(tree)?;
    let sub = parse_sub(sub)?;
    let d = suboperad_filter(&differential(&t, &SignConvention::CHOSEN), sub);
    let v = json!({"tree": t.to_json(), "differential": d.to_json()});
    let text = || {
        let mut rows = vec![vec!["coeff".into(), "type".into(), "tree".into()]];
        rows.extend(d.iter().map(|(x, c)| vec![format!("{c:+}"), x.tree_type().to_string(), x.to_string()]));
        format!("d({t}) = {} terms\n{}", d.len(), table(&rows))
    };
    Ok((render(fmt, &v, text), true))
}

fn restrict(h: &GradedHomology, lo: i64, hi: i64) -> GradedHomology {
    h.range(lo..=hi).map(|(&t, g)| (t, g.clone())).collect()
}

fn homology(fmt: Format, n: usize, k_max: usize, l_max: usize, sub: &str, row: Option<String>) -> Outcome {
    let conv = SignConvention::CHOSEN;
    let (label, window, h, stable): (String, (i64, i64), GradedHomology, Option<bool>) = if let Some(r) = row {
        let ks = parse_type(&format!("0;{r}"))?.ks;
        if ks.len() != n {
            return Err(usage(format!("--row has {} arities but --n is {n}", ks.len())));
        }
        if l_max == 0 {
            return Err(usage("window is empty"));
        }
        let c = row_complex(&ks, l_max, parse_sub(sub)?, &conv)?;
        let hi = l_max as i64 - 1;
        (format!("row {ks:?} of {sub}({n}), L={l_max}"), (0, hi), c.homology_in(0, hi), None)
    } else if sub == "Br" {
        let c = brace_complex(n, k_max, l_max, &conv)?;
        let h = c.homology();
        let lo = *h.keys().next().unwrap_or(&0);
        let hi = *h.keys().last().unwrap_or(&0);
        let stable = (k_max > 0 && l_max > 0)
            .then(|| brace_complex(n, k_max - 1, l_max - 1, &conv).ok())
            .flatten()
            .map(|s| s.homology() == h);
        (format!("Br({n}), K={k_max}, L={l_max}"), (lo, hi), h, stable)
    } else {
        let s = parse_sub(sub)?;
        let c = truncated_complex(n, k_max, l_max, s, &conv)?;
        let (lo, hi) = c.window();
        if lo > hi {
            return Err(usage(format!("window {lo}..{hi} is empty")));
        }
        let h = c.windowed_homology();
        let stable = if k_max > 0 && l_max > 0 {
            let small = truncated_complex(n, k_max - 1, l_max - 1, s, &conv)?;
            let (a, b) = small.window();
            let (a, b) = (a.max(lo), b.min(hi));
            (a <= b).then(|| restrict(&small.windowed_homology(), a, b) == restrict(&h, a, b))
        } else {
            None
        };
        (format!("{s}({n}), K={k_max}, L={l_max}"), (lo, hi), h, stable)
    };
    let v = json!({"complex": label, "window": [window.0, window.1], "homology": homology_json(&h), "stable": stable});
    let text = || {
        let st = match stable {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        format!("{label}, window {}..{}, stable: {st}\n{}", window.0, window.1, table(&homology_rows(&h)))
    };
    Ok((render(fmt, &v, text), true))
}

fn verify(fmt: Format, suite: &str, p: &Params) -> Outcome {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(usage(format!("unknown suite {suite}; known: all, {}", SUITES.join(", "))));
    };
    let reports: Vec<Report> = names.iter().map(|s| run_suite(s, p)).collect::<hochop::Result<_>>()?;
    let ok = reports.iter().all(|r| r.passed);
    let v = json!({"seed": p.seed, "passed": ok, "suites": reports});
    let text = || {
        let mut rows = vec![vec!["suite".into(), "status".into(), "check".into(), "detail".into()]];
        for r in &reports {
            for c in &r.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                rows.push(vec![r.suite.clone(), status.into(), c.name.clone(), c.detail.clone()]);
            }
        }
        format!("seed {}\n{}", p.seed, table(&rows))
    };
    Ok((render(fmt, &v, text), ok))
}

#[allow(clippy::too_many_arguments)]
fn export(
    object: &str,
    q: Option<usize>,
    n_max: Option<i64>,
    n: Option<usize>,
    k_max: Option<usize>,
    l_max: Option<usize>,
    sub: &str,
) -> Outcome {
    let v = match object {
        "D" => {
            let (q, n_max) = (need(q, "--q")?, need(n_max, "--N")?);
            if n_max < 0 {
                return Err(usage("--N must be >= 0"));
            }
            json!({"q": q, "N": n_max, "complex": build_d(q, n_max).nerve().totalize().to_json()})
        }
        "component" => {
            let s = parse_sub(sub)?;
            let c = truncated_complex(need(n, "--n")?, need(k_max, "--K")?, need(l_max, "--L")?, s, &SignConvention::CHOSEN)?;
            json!({"n": c.n, "K": c.k_max, "L": c.l_max, "suboperad": s.name(), "complex": c.complex.to_json()})
        }
        "example" => {
            let t = NatTree::worked_example();
            let v = t.to_json();
            let back = NatTree::from_json(&v)?;
            let reparsed: NatTree = t.to_string().parse()?;
            if back != t || reparsed != t {
                return Ok((String::new(), false));
            }
            json!({"text": t.to_string(), "tree": v})
        }
        "witness" => {
            let t = NatTree::worked_example();
            json!({"tree": t.to_string(), "witness": build_l9_witness(&t).to_json()})
        }
        other => return Err(usage(format!("unknown object {other}; known: D, component, example, witness"))),
    };
    Ok((format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), true))
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Enumerate { tree_type, n, k_max, l_max, suboperad } => {
            enumerate(fmt, tree_type, n, k_max, l_max, &suboperad)
        }
        Command::Diff { tree, suboperad } => diff(fmt, &tree, &suboperad),
        Command::Homology { n, k_max, l_max, suboperad, row } => homology(fmt, n, k_max, l_max, &suboperad, row),
        Command::Verify { suite, q, n_max, k_max, l_max, seed } => {
            verify(fmt, &suite, &Params { q, n_max, k_max, l_max, seed })
        }
        Command::Export { object, q, n_max, n, k_max, l_max, suboperad } => {
            export(&object, q, n_max, n, k_max, l_max, &suboperad)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, ok)) => {
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
