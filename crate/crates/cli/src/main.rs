use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eggers::doc::{line_to_x, substitute_poly, GermDocument, LambdaSpec};
use eggers::eggers::{build_tree, to_dot};
use eggers::ext::{parse_q, Q};
use eggers::newton::tree::germ_from_text;
use eggers::newton::verify::{check_against, cross_verify};
use eggers::random::{check_bounds, random_germ, Bounds};
use eggers::report::{build_report, partial_report, ReportDocument};
use eggers::Error;

#[derive(Parser)]
#[command(name = "eggers", version, about = "Exact invariants of plane curve germs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eggers tree, polar invariants, Lojasiewicz exponents and probe reports.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Print the JSON report instead of the summary.
        #[arg(long)]
        json: bool,
        /// Write the JSON report to a file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// On failure of the symbolic pipeline, still emit what is known.
        #[arg(long)]
        partial: bool,
        /// Add the symbolic cross-check section (polynomial input).
        #[arg(long)]
        symbolic: bool,
    },
    /// The Eggers tree as text or DOT.
    Tree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dot: bool,
    },
    /// Cross-checks the combinatorial formulas against root counting.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Abstract germ document claimed to describe the polynomial.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// A random abstract germ document.
    RandomGerm {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_branches: usize,
        #[arg(long, default_value_t = 2)]
        max_pairs: usize,
        #[arg(long, default_value_t = 60)]
        max_beta: u64,
    },
}

#[derive(Args)]
struct Input {
    /// A germ document (JSON), or a polynomial with --poly.
    input: String,
    /// Treat INPUT as a polynomial in X and Y.
    #[arg(long)]
    poly: bool,
    /// Probe: a branch label, transversal, X, Y or linear:a,b (the line aX + bY).
    #[arg(long = "lambda")]
    lambdas: Vec<String>,
    /// Apply X → aX + bY, Y → cX + dY to polynomial input first.
    #[arg(long, value_name = "a,b,c,d")]
    change_coords: Option<String>,
}

fn rationals(s: &str, n: usize) -> Result<Vec<Q>, Error> {
    let v: Vec<Q> = s
        .split(',')
        .map(|x| parse_q(x.trim()).map_err(|e| Error::Document(e.to_string())))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(Error::Document(format!("expected {n} comma separated rationals, got {s:?}")));
    }
    Ok(v)
}

impl Input {
    /// The document to analyze, with coordinate changes applied and the
    /// command-line probes appended.
    fn document(&self) -> Result<GermDocument, Error> {
        let mut doc = if self.poly {
            GermDocument::poly(self.input.clone())
        } else {
            let text = fs::read_to_string(&self.input).map_err(|e| Error::Document(format!("{}: {e}", self.input)))?;
            GermDocument::from_json(&text)?
        };
        let mut moved = false;
        if let Some(c) = &self.change_coords {
            let v = rationals(c, 4)?;
            let p = doc.poly.as_ref().ok_or_else(|| Error::Document("--change-coords needs polynomial input".into()))?;
            doc.poly = Some(substitute_poly(p, &v[0], &v[1], &v[2], &v[3])?);
            moved = true;
        }
        for l in &self.lambdas {
            let line = match l.as_str() {
                "Y" => Some("0,1"),
                s => s.strip_prefix("linear:"),
            };
            let spec = match (l.as_str(), line) {
                (_, Some(ab)) => {
                    if moved {
                        return Err(Error::Document("only one coordinate change per run".into()));
                    }
                    let v = rationals(ab, 2)?;
                    let p = doc.poly.as_ref().ok_or_else(|| Error::Document(format!("--lambda {l} needs polynomial input")))?;
                    doc.poly = Some(line_to_x(p, &v[0], &v[1])?);
                    moved = true;
                    LambdaSpec::keyword(l.clone(), "X")
                }
                ("transversal" | "X", None) => LambdaSpec::keyword(l.clone(), l.clone()),
                (label, None) => LambdaSpec::keyword(label, format!("branch: {label}")),
            };
            doc.lambdas.push(spec);
        }
        Ok(doc)
    }
}

fn summary(rep: &ReportDocument) -> String {
    let mut s = String::new();
    if let Some(p) = &rep.germ.poly {
        s.push_str(&format!("f = {p}\n"));
    }
    let Some(a) = &rep.analysis else { return s };
    let labels: Vec<&str> = a.tree.vertices.iter().filter_map(|v| v.branch.as_deref()).collect();
    s.push_str(&format!("branches: {}\n", labels.join(" ")));
    let q: Vec<String> = a.polar_invariants.iter().map(|m| format!("{}:{}", m.value, m.multiplicity)).collect();
    s.push_str(&format!("Q(f) = {{{}}}\n", q.join(", ")));
    s.push_str(&format!("L0 = {}\n", a.l0));
    for (i, c) in a.components.iter().enumerate() {
        s.push_str(&format!("component {i}: [{}] ord {} L0 {} M {}\n", c.branches.join(" "), c.ord, c.l0, c.m));
    }
    match a.special_component {
        Some(i) => s.push_str(&format!("special direction: tangent of component {i}\n")),
        None => s.push_str(&format!("special direction: {}\n", a.special_direction)),
    }
    for l in &a.lambdas {
        let qs: Vec<String> = l.polar_quotients.iter().map(|m| format!("{}:{}", m.value, m.multiplicity)).collect();
        let polar = if l.l_on_polar.class_dependent {
            format!(
                "class dependent in [{}, {}]",
                l.l_on_polar.lower.as_ref().map(|x| x.to_string()).unwrap_or_default(),
                l.l_on_polar.upper.as_ref().map(|x| x.to_string()).unwrap_or_default()
            )
        } else {
            l.l_on_polar.value.as_ref().map(|x| x.to_string()).unwrap_or_default()
        };
        s.push_str(&format!(
            "lambda {}: Q(f,lambda) = {{{}}} q0 = {} L on polar = {} tilde L0 = {} special = {}\n",
            l.label,
            qs.join(", "),
            l.q0,
            polar,
            l.tilde_l,
            l.is_special
        ));
    }
    if let Some(sym) = &a.symbolic {
        s.push_str(&format!("symbolic cross-check: {} (ledger total {})\n", if sym.passed { "PASS" } else { "FAIL" }, sym.ledger_total));
    }
    s
}

fn tree_text(doc: &GermDocument) -> Result<String, Error> {
    let r = doc.resolve()?;
    let t = build_tree(&r.germ)?;
    let mut s = String::new();
    for (k, v) in t.vertices.iter().enumerate() {
        let parent = v.parent.map(|p| format!("v{p}")).unwrap_or_else(|| "-".into());
        match v.branch {
            Some(b) => s.push_str(&format!("v{k} parent {parent} branch {}\n", t.labels[b])),
            None => s.push_str(&format!(
                "v{k} parent {parent} d {} n {} order {} q {} m {}\n",
                v.data.d,
                v.data.n,
                v.data.order,
                v.data.q.as_ref().map(eggers::ext::fmt_q).unwrap_or_default(),
                v.data.m.map(|m| m.to_string()).unwrap_or_default()
            )),
        }
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Analyze { input, json, out, partial, symbolic } => {
            let doc = input.document()?;
            let rep = match build_report(&doc, symbolic) {
                Ok(r) => r,
                Err(e) if partial => {
                    let rep = partial_report(&doc, &e);
                    emit(&rep, json || out.is_none(), out.as_ref())?;
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(e.exit_code() as u8));
                }
                Err(e) => return Err(e),
            };
            emit(&rep, json, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tree { input, dot } => {
            let doc = input.document()?;
            if dot {
                print!("{}", to_dot(&build_tree(&doc.resolve()?.germ)?));
            } else {
                print!("{}", tree_text(&doc)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { input, against } => {
            let doc = input.document()?;
            let p = doc.poly.as_ref().ok_or_else(|| Error::Document("verify needs polynomial input".into()))?;
            if doc.lambdas.iter().any(|l| l.of.as_deref() != Some("X")) {
                return Err(Error::Document("verify probes along X; use X, Y or linear:a,b".into()));
            }
            let pg = germ_from_text(p)?;
            let mut rep = cross_verify(&pg)?;
            if let Some(path) = against {
                let text = fs::read_to_string(&path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
                let claimed = GermDocument::from_json(&text)?.resolve()?.germ;
                check_against(&mut rep, &pg, &claimed);
            }
            println!("f = {p}");
            if pg.delta_x > 0 {
                println!("note: X divides f, lambda = X is a branch of the germ");
            }
            for c in &rep.checks {
                println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(if rep.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::RandomGerm { seed, max_branches, max_pairs, max_beta } => {
            let bounds = Bounds { max_branches, max_pairs, max_beta };
            check_bounds(&bounds)?;
            let g = random_germ(seed, bounds)?;
            println!("{}", GermDocument::from_germ(&g.germ)?.to_json());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(rep: &ReportDocument, json: bool, out: Option<&PathBuf>) -> Result<(), Error> {
    if let Some(path) = out {
        fs::write(path, rep.to_json() + "\n").map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    }
    if json {
        println!("{}", rep.to_json());
    } else if out.is_none() {
        print!("{}", summary(rep));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
