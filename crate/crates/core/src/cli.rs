//! The `qres` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checks::{run_suite, SuiteReport, SUITES};
use crate::error::Error;
use crate::exactnum::Rat;
use crate::invariants::report_and_tree;
use crate::poly::{parse_poly, SparsePoly};
use crate::quotsing::{parse_type_triple, QuotType};
use crate::resolve::{
    normalize_germ, resolve_with, tree_to_dot, tree_to_json, Location, Mode, ResolutionTree,
    ResolveOptions, SCHEMA_VERSION,
};
use crate::wproj::{genus_with, parse_curve, GenusReport, ProjPoint, Weights};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qres",
    version,
    about = "Exact invariants of curve germs on cyclic quotient singularities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strong,
    Plain,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strong => Mode::Strong,
            ModeArg::Plain => Mode::Plain,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct GermArgs {
    /// Polynomial in x, y, e.g. "x^2 - y^4".
    pub poly: String,
    /// Ambient type "X(d;a,b)"; smooth when omitted.
    #[arg(long = "type", default_value = "X(1;0,0)")]
    pub ty: String,
    #[arg(long, value_enum, default_value = "strong")]
    pub mode: ModeArg,
    /// Weights for the first blow-ups in depth-first order, e.g. "(1,5),(2,1)".
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of a germ and its resolution trace.
    Germ {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        json: bool,
    },
    /// Genus of a curve in a weighted projective plane.
    Curve {
        /// Quasi-homogeneous polynomial in x0, x1, x2, optionally followed by "| w0,w1,w2".
        poly: String,
        /// Weights "w0,w1,w2".
        #[arg(long = "w")]
        weights: Option<String>,
        /// Explicit non-vertex singular points "[c0:c1:c2];..." replacing the search.
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Writes the resolution tree as DOT or JSON ("-" for stdout).
    Resolve {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Runs an oracle suite.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(["deltaw", "noether", "lattice", "quasihom", "additivity", "modes", "all"]))]
        suite: String,
    },
}

enum Failure {
    Lib(Error),
    Input(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ExtensionOverflow { .. } => EXIT_OVERFLOW,
        Error::InternalInconsistency(_) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

/// Parses `(p,q),(p,q),...`.
pub fn parse_weight_list(s: &str) -> Result<Vec<(u64, u64)>, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let inner_end = rest
            .find(')')
            .ok_or_else(|| format!("unbalanced parentheses in `{s}`"))?;
        let pair = rest[..inner_end]
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(p,q)` in `{s}`"))?;
        let (p, q) = pair
            .split_once(',')
            .ok_or_else(|| format!("expected `(p,q)` in `{s}`"))?;
        let p: u64 = p.parse().map_err(|_| format!("bad weight `{p}`"))?;
        let q: u64 = q.parse().map_err(|_| format!("bad weight `{q}`"))?;
        if p == 0 || q == 0 {
            return Err("weights must be positive".into());
        }
        out.push((p, q));
        rest = &rest[inner_end + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    Ok(out)
}

/// Parses `[a:b:c]` entries separated by `;`, `,` or spaces.
pub fn parse_points(s: &str) -> Result<Vec<ProjPoint>, Error> {
    let mut out = Vec::new();
    let mut rest = s;
    while let Some(start) = rest.find('[') {
        let end = rest[start..]
            .find(']')
            .ok_or_else(|| Error::Degenerate(format!("unterminated point in `{s}`")))?
            + start;
        out.push(rest[start..=end].parse()?);
        rest = &rest[end + 1..];
    }
    if out.is_empty() && !s.trim().is_empty() {
        return Err(Error::Degenerate(format!("no points found in `{s}`")));
    }
    Ok(out)
}

struct GermInput {
    germ: SparsePoly,
    input_type: String,
    ambient: QuotType,
    opts: ResolveOptions,
}

fn germ_input(a: &GermArgs) -> Result<GermInput, Failure> {
    let f = parse_poly(&a.poly, &["x", "y"])?;
    let (d, aa, b) = parse_type_triple(&a.ty)?;
    let (germ, ambient) = normalize_germ(&f, d, aa, b)?;
    let overrides = match &a.weights {
        Some(w) => parse_weight_list(w).map_err(Failure::Input)?,
        None => Vec::new(),
    };
    let opts = ResolveOptions {
        mode: a.mode.into(),
        overrides,
        ..ResolveOptions::default()
    };
    Ok(GermInput {
        germ,
        input_type: a.ty.clone(),
        ambient,
        opts,
    })
}

fn location_text(l: &Location) -> String {
    match l {
        Location::Root => "root".into(),
        Location::Chart1Origin => "chart 1 origin".into(),
        Location::Chart2Origin => "chart 2 origin".into(),
        Location::OnExceptional { minpoly } => format!("on E at {minpoly} = 0"),
    }
}

fn trace(tree: &ResolutionTree, out: &mut String) {
    fn walk(tree: &ResolutionTree, id: usize, depth: usize, out: &mut String) {
        let n = &tree.nodes[id];
        let pad = "  ".repeat(depth + 1);
        let mult = if n.weight > 1 {
            format!(" ×{}", n.weight)
        } else {
            String::new()
        };
        match &n.blowup {
            Some(b) => out.push_str(&format!(
                "{pad}#{} {} {}{} (p,q)=({},{}) e={} ν={} contribution {}\n",
                n.id,
                n.ambient,
                location_text(&n.location),
                mult,
                b.weights.0,
                b.weights.1,
                b.e,
                b.nu,
                &b.contribution * Rat::from_integer(n.weight.into())
            )),
            None => out.push_str(&format!(
                "{pad}#{} {} {}{} leaf\n",
                n.id,
                n.ambient,
                location_text(&n.location),
                mult
            )),
        }
        for &c in &n.children {
            walk(tree, c, depth + 1, out);
        }
    }
    for &r in &tree.roots {
        walk(tree, r, 0, out);
    }
}

fn run_germ(a: &GermArgs, as_json: bool) -> Result<String, Failure> {
    let gi = germ_input(a)?;
    let (tree, rep) = report_and_tree(&gi.germ, gi.ambient, &gi.opts)?;
    if as_json {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "germ": gi.germ.to_string(),
            "input_type": gi.input_type,
            "report": rep,
            "tree": tree_to_json(&tree),
        });
        return Ok(serde_json::to_string_pretty(&v).unwrap() + "\n");
    }
    let mut s = String::new();
    s.push_str(&format!(
        "germ     {}\nambient  {}\nmode     {}\n",
        gi.germ,
        gi.ambient,
        if rep.mode == Mode::Strong {
            "strong"
        } else {
            "plain"
        }
    ));
    s.push_str(&format!(
        "δ^ω      {}\nμ^ω      {}\nr^ω      {}\n",
        rep.delta_w, rep.mu_w, rep.r_w
    ));
    s.push_str(&format!(
        "δ        {}\nμ        {}\nr        {}\nχ^orb    {}\n",
        rep.delta_classical, rep.mu_classical, rep.r_classical, rep.euler_orb
    ));
    if rep.mode == Mode::Plain {
        s.push_str(&format!("leaf correction {}\n", rep.leaf_correction));
    }
    s.push_str("resolution\n");
    trace(&tree, &mut s);
    Ok(s)
}

fn genus_text(r: &GenusReport) -> String {
    let mut s = format!(
        "curve    {}\nweights  {}\ndegree   {}\ng_(d,ω)  {}\n",
        r.curve, r.weights, r.degree, r.virtual_genus
    );
    if r.weights != r.input_weights {
        s.push_str(&format!("(normalized from {})\n", r.input_weights));
    }
    s.push_str("singular points\n");
    if r.points.is_empty() {
        s.push_str("  none\n");
    }
    for p in &r.points {
        s.push_str(&format!(
            "  {}  {}  germ {}  δ^ω {}",
            p.point, p.ambient, p.germ, p.delta_w
        ));
        if p.affine_points > 1 {
            s.push_str(&format!(
                "  ({} chart points, δ total {})",
                p.affine_points, p.delta_total
            ));
        }
        s.push('\n');
    }
    s.push_str(&format!("Σ δ^ω    {}\ngenus    {}\n", r.delta_sum, r.genus));
    if let Some(w) = &r.warning {
        s.push_str(&format!("warning: {w}\n"));
    }
    s
}

fn run_curve(
    poly: &str,
    weights: Option<&str>,
    points: Option<&str>,
    as_json: bool,
) -> Result<String, Failure> {
    let (ftext, inline) = match poly.split_once('|') {
        Some((f, w)) => (f, Some(w)),
        None => (poly, None),
    };
    let wtext = weights
        .or(inline)
        .ok_or_else(|| Failure::Input("weights missing: use --w or \"F | w0,w1,w2\"".into()))?;
    let w: Weights = wtext.parse()?;
    let f = parse_curve(ftext)?;
    let pts = points.map(parse_points).transpose()?;
    let r = genus_with(&f, &w, pts.as_deref())?;
    if as_json {
        return Ok(serde_json::to_string_pretty(&r).unwrap() + "\n");
    }
    Ok(genus_text(&r))
}

fn write_target(path: &PathBuf, content: &str, out: &mut dyn Write) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        out.write_all(content.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))
    } else {
        std::fs::write(path, content).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn run_resolve(
    a: &GermArgs,
    dot: Option<&PathBuf>,
    js: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<String, Failure> {
    if dot.is_none() && js.is_none() {
        return Err(Failure::Input("one of --dot or --json is required".into()));
    }
    let gi = germ_input(a)?;
    let tree = resolve_with(&gi.germ, gi.ambient, &gi.opts)?;
    if let Some(p) = dot {
        write_target(p, &tree_to_dot(&tree), out)?;
    }
    if let Some(p) = js {
        write_target(
            p,
            &(serde_json::to_string_pretty(&tree_to_json(&tree)).unwrap() + "\n"),
            out,
        )?;
    }
    Ok(String::new())
}

fn suite_table(reports: &[SuiteReport]) -> String {
    let mut s = format!(
        "{:<12} {:>8} {:>8} {:>8}  status\n",
        "suite", "passed", "total", "skipped"
    );
    for r in reports {
        s.push_str(&format!(
            "{:<12} {:>8} {:>8} {:>8}  {}\n",
            r.name,
            r.passed,
            r.total,
            r.skipped,
            if r.ok() { "ok" } else { "FAILED" }
        ));
    }
    for r in reports.iter().filter(|r| !r.ok()) {
        s.push_str(&format!("counterexamples for {}:\n", r.name));
        for f in r.failures.iter().take(20) {
            s.push_str(&format!("  {f}\n"));
        }
    }
    s
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Germ { germ, json } => run_germ(germ, *json),
        Command::Curve {
            poly,
            weights,
            points,
            json,
        } => run_curve(poly, weights.as_deref(), points.as_deref(), *json),
        Command::Resolve { germ, dot, json } => run_resolve(germ, dot.as_ref(), json.as_ref(), out),
        Command::Check { suite } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let reports: Vec<SuiteReport> = names.iter().filter_map(|n| run_suite(n)).collect();
            let _ = out.write_all(suite_table(&reports).as_bytes());
            return if reports.iter().all(|r| r.ok()) {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
        }
    };
    match result {
        Ok(s) => {
            if out.write_all(s.as_bytes()).is_err() {
                return EXIT_IO;
            }
            EXIT_OK
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_IO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_lists() {
        assert_eq!(
            parse_weight_list("(1,5),(2,1)").unwrap(),
            vec![(1, 5), (2, 1)]
        );
        assert_eq!(parse_weight_list(" (1, 5) ").unwrap(), vec![(1, 5)]);
        assert!(parse_weight_list("(1,5").is_err());
        assert!(parse_weight_list("(0,5)").is_err());
    }

    #[test]
    fn point_lists() {
        let p = parse_points("[1:0:0]; [0:1:1/2]").unwrap();
        assert_eq!(p.len(), 2);
        assert!(parse_points("[1:0]").is_err());
    }
}
