//! `grothdeg`: command-line access to the grothdeg library.
//!
//! Exit codes: 0 on success, 1 on domain errors and failed verifications,
//! 2 on parse and usage errors.

mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grothdeg::grothendieck::{degree_report, g_polynomial, gp_polynomial, gq_polynomial};
use grothdeg::ideals::{
    msv_generators, reg_from_kpoly, reg_grassmannian, reg_skew_upper, ssmsv_generators,
};
use grothdeg::permutations::{FpfInvolution, Permutation};
use grothdeg::symplectic::gsp_all;
use grothdeg::tableaux::{count, enumerate, max_degree_with_witness};
use grothdeg::transforms::{
    shifted_grow, shifted_push, shifted_squish, type_a_grow, type_a_push, type_a_squish, PushStep,
    RibbonTrace,
};
use grothdeg::{Flavor, Partition, StrictPartition, Tableau};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "grothdeg",
    version,
    about = "Degrees of Grothendieck polynomials and related computations"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "GROTHDEG_FORMAT", value_enum, default_value_t = Format::Text)]
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
    /// Degree of G, GP or GQ from the closed formula (GQ: bounds).
    Deg {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Also search all tableaux for the largest degree.
        #[arg(long)]
        brute: bool,
    },
    /// Full polynomial, or a symplectic polynomial with `gsp --fpf`.
    Poly {
        #[arg(value_enum)]
        family: PolyFamily,
        #[arg(long, required_if_eq_any([("family", "g"), ("family", "gp"), ("family", "gq")]))]
        shape: Option<Partition>,
        #[arg(long, required_if_eq_any([("family", "g"), ("family", "gp"), ("family", "gq")]))]
        vars: Option<usize>,
        #[arg(long, required_if_eq("family", "gsp"))]
        fpf: Option<FpfInvolution>,
    },
    /// List, count or maximize over set-valued tableaux.
    Enumerate {
        #[arg(value_enum)]
        flavor: FlavorArg,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, conflicts_with_all = ["max_degree", "witness"])]
        count: bool,
        #[arg(long, conflicts_with = "witness")]
        max_degree: bool,
        /// A tableau of largest degree.
        #[arg(long)]
        witness: bool,
    },
    /// Apply grow, squish or push to a tableau.
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        #[arg(long, value_enum, default_value_t = Geometry::Shifted)]
        flavor: Geometry,
        /// Rows top to bottom, separated by `/` or newlines; boxes by `|`.
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        vars: usize,
        /// Target shape for grow.
        #[arg(long, required_if_eq("op", "grow"))]
        target: Option<Partition>,
        /// Print every intermediate filling.
        #[arg(long)]
        trace: bool,
    },
    /// Permutation statistics.
    Perm {
        #[command(subcommand)]
        op: PermOp,
    },
    /// Symplectic code and shape of a fixed-point-free involution.
    Spcode {
        #[arg(long)]
        fpf: FpfInvolution,
    },
    /// Castelnuovo-Mumford regularity.
    Reg {
        #[command(subcommand)]
        route: RegRoute,
    },
    /// Generators of a matrix Schubert ideal or its skew-symmetric analogue.
    Ideal {
        #[command(subcommand)]
        kind: IdealKind,
    },
    /// Exhaustive checks over bounded ranges.
    Verify {
        #[command(subcommand)]
        check: verify::Check,
    },
}

#[derive(Args)]
struct ShapeArgs {
    /// Comma-separated parts, e.g. 3,1.
    #[arg(long)]
    shape: Partition,
    /// Number of variables.
    #[arg(long)]
    vars: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    G,
    Gp,
    Gq,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFamily {
    G,
    Gp,
    Gq,
    Gsp,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Svt,
    Psvt,
    Qsvt,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Svt => Flavor::Svt,
            FlavorArg::Psvt => Flavor::Psvt,
            FlavorArg::Qsvt => Flavor::Qsvt,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Grow,
    Squish,
    Push,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Geometry {
    Shifted,
    #[value(name = "typeA")]
    TypeA,
}

#[derive(Subcommand)]
enum PermOp {
    /// Lehmer code and shape.
    Code {
        #[arg(long)]
        perm: Permutation,
    },
    /// Rank matrix.
    Rank {
        #[arg(long)]
        perm: Permutation,
    },
    /// Rothe diagram.
    Rothe {
        #[arg(long)]
        perm: Permutation,
    },
    /// Whether the inverse has increasing run heads.
    Fireworks {
        #[arg(long)]
        perm: Permutation,
    },
    /// The Grassmannian permutation with the given shape and descent.
    Grassmannian {
        #[command(flatten)]
        shape: ShapeArgs,
    },
}

#[derive(Subcommand)]
enum RegRoute {
    Grassmannian {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    SkewBound {
        #[arg(long)]
        fpf: FpfInvolution,
    },
    SkewKpoly {
        #[arg(long)]
        fpf: FpfInvolution,
    },
}

#[derive(Subcommand)]
enum IdealKind {
    Msv {
        #[arg(long)]
        perm: Permutation,
    },
    Ssmsv {
        #[arg(long)]
        fpf: FpfInvolution,
    },
}

/// What a command produced, in both formats.
pub struct Report {
    text: String,
    json: Value,
    /// False when a verification found a discrepancy.
    ok: bool,
}

impl Report {
    pub fn new(text: impl Into<String>, json: impl Serialize) -> Result<Report, CliError> {
        let json = serde_json::to_value(json).map_err(|e| CliError::Domain(e.to_string()))?;
        Ok(Report {
            text: text.into(),
            json,
            ok: true,
        })
    }

    pub fn failed(mut self) -> Report {
        self.ok = false;
        self
    }
}

pub enum CliError {
    Parse(String),
    Domain(String),
}

impl From<grothdeg::Error> for CliError {
    fn from(e: grothdeg::Error) -> Self {
        if e.is_parse() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Text => {
                    let text = report.text.trim_end_matches('\n');
                    if !text.is_empty() {
                        println!("{text}");
                    }
                }
                Format::Json => println!("{}", report.json),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn strict(shape: &Partition) -> Result<StrictPartition, CliError> {
    Ok(StrictPartition::strict(shape.clone())?)
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Deg {
            family,
            shape,
            brute,
        } => deg(family, &shape, brute),
        Command::Poly {
            family,
            shape,
            vars,
            fpf,
        } => {
            let poly = match family {
                PolyFamily::Gsp => {
                    let z = fpf.expect("required by clap");
                    let table = gsp_all(z.size())?;
                    table
                        .get(&z)
                        .expect("every involution is in the table")
                        .clone()
                }
                _ => {
                    let (shape, n) = (
                        shape.expect("required by clap"),
                        vars.expect("required by clap"),
                    );
                    match family {
                        PolyFamily::G => g_polynomial(&shape, n)?,
                        PolyFamily::Gp => gp_polynomial(&strict(&shape)?, n)?,
                        _ => gq_polynomial(&strict(&shape)?, n)?,
                    }
                }
            };
            Report::new(poly.to_string(), &poly)
        }
        Command::Enumerate {
            flavor,
            shape,
            count: only_count,
            max_degree,
            witness,
        } => {
            let (lambda, n, flavor) = (&shape.shape, shape.vars, Flavor::from(flavor));
            if only_count {
                let c = count(lambda, n, flavor)?;
                Report::new(c.to_string(), c)
            } else if max_degree || witness {
                let (d, w) = max_degree_with_witness(lambda, n, flavor)?;
                if witness {
                    Report::new(w.to_text(), json!({ "max_degree": d, "witness": w }))
                } else {
                    Report::new(d.to_string(), d)
                }
            } else {
                let all: Vec<Tableau> = enumerate(lambda, n, flavor)?.collect();
                let text = all
                    .iter()
                    .map(Tableau::to_text)
                    .collect::<Vec<_>>()
                    .join("\n\n");
                Report::new(text, &all)
            }
        }
        Command::Transform {
            op,
            flavor,
            tableau,
            vars,
            target,
            trace,
        } => transform(op, flavor, &tableau, vars, target, trace),
        Command::Perm { op } => perm(op),
        Command::Spcode { fpf } => {
            let (code, shape) = (fpf.spcode(), fpf.shape());
            let text = format!("code: {}\nshape: {shape}", join(&code, " "));
            Report::new(
                text,
                json!({ "involution": fpf, "spcode": code, "shape": shape, "last_nonzero_position": fpf.last_nonzero_position() }),
            )
        }
        Command::Reg { route } => {
            let report = match route {
                RegRoute::Grassmannian { shape } => reg_grassmannian(&shape.shape, shape.vars)?,
                RegRoute::SkewBound { fpf } => reg_skew_upper(&fpf),
                RegRoute::SkewKpoly { fpf } => reg_from_kpoly(&fpf)?,
            };
            Report::new(report.regularity.to_string(), &report)
        }
        Command::Ideal { kind } => {
            let set = match kind {
                IdealKind::Msv { perm } => msv_generators(&perm),
                IdealKind::Ssmsv { fpf } => ssmsv_generators(&fpf),
            };
            Report::new(set.to_text(), &set)
        }
        Command::Verify { check } => verify::run(check),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn deg(family: Family, shape: &ShapeArgs, brute: bool) -> Result<Report, CliError> {
    let flavor = match family {
        Family::G => Flavor::Svt,
        Family::Gp => Flavor::Psvt,
        Family::Gq => Flavor::Qsvt,
    };
    let r = degree_report(&shape.shape, shape.vars, flavor, brute)?;
    let mut text = match (r.formula_degree, &r.gq_bounds) {
        (Some(d), _) => d.to_string(),
        (None, Some(b)) => format!("{}..{}", b.lower, b.upper),
        (None, None) => String::new(),
    };
    if let Some(b) = r.brute_degree {
        text.push_str(&format!(" (brute force: {b})"));
    }
    let report = Report::new(text, &r)?;
    Ok(if r.discrepant {
        report.failed()
    } else {
        report
    })
}

fn transform(
    op: TransformOp,
    geometry: Geometry,
    text: &str,
    n: usize,
    target: Option<Partition>,
    trace: bool,
) -> Result<Report, CliError> {
    let shifted = geometry == Geometry::Shifted;
    let t = Tableau::parse(text, if shifted { Flavor::Psvt } else { Flavor::Svt }, n)?;
    if op == TransformOp::Push {
        let steps = if shifted {
            shifted_push(&t)?
        } else {
            type_a_push(&t)?
        };
        let result = steps.last().map_or(&t, |s| &s.tableau).clone();
        let mut out = result.to_text();
        if trace {
            out = steps.iter().map(push_text).collect::<Vec<_>>().join("\n\n");
        }
        let json = if trace {
            json!({ "result": result, "steps": steps })
        } else {
            json!({ "result": result })
        };
        return Report::new(out, json);
    }
    let (result, traces) = match (op, shifted) {
        (TransformOp::Grow, true) => {
            shifted_grow(&t, &strict(&target.expect("required by clap"))?)?
        }
        (TransformOp::Grow, false) => type_a_grow(&t, &target.expect("required by clap"))?,
        (_, true) => shifted_squish(&t)?,
        (_, false) => type_a_squish(&t)?,
    };
    let mut out = result.to_text();
    if trace {
        out = traces
            .iter()
            .enumerate()
            .map(|(i, tr)| trace_text(i + 1, tr))
            .collect::<Vec<_>>()
            .join("\n\n");
    }
    let json = if trace {
        json!({ "result": result, "traces": traces })
    } else {
        json!({ "result": result })
    };
    Report::new(out, json)
}

fn trace_text(index: usize, trace: &RibbonTrace) -> String {
    let cells = trace
        .ribbon()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let mut out = format!("# step {index}: {:?} ribbon {cells}", trace.kind);
    for stage in &trace.stages {
        out.push_str("\n\n");
        out.push_str(&stage.to_text());
    }
    out
}

fn push_text(step: &PushStep) -> String {
    format!(
        "# {:?} at {}\n{}",
        step.case,
        step.cell,
        step.tableau.to_text()
    )
}

fn perm(op: PermOp) -> Result<Report, CliError> {
    match op {
        PermOp::Code { perm } => {
            let (code, shape) = (perm.bcode(), perm.shape());
            Report::new(
                format!("code: {}\nshape: {shape}", join(&code, " ")),
                json!({ "code": code, "shape": shape }),
            )
        }
        PermOp::Rank { perm } => {
            let m = perm.rank_matrix();
            Report::new(m.to_string(), &m)
        }
        PermOp::Rothe { perm } => {
            let cells = perm.rothe_diagram();
            let n = perm.len();
            let grid: Vec<String> = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| if cells.contains(&(i, j)) { '#' } else { '.' })
                        .collect()
                })
                .collect();
            Report::new(grid.join("\n"), &cells)
        }
        PermOp::Fireworks { perm } => {
            let runs = perm.inverse().decreasing_runs();
            let value = perm.is_inverse_fireworks();
            let json = json!({
                "permutation": perm,
                "inverse_runs": runs,
                "inverse_fireworks": value,
                "by_diagram": perm.is_inverse_fireworks_by_diagram(),
            });
            Report::new(value.to_string(), json)
        }
        PermOp::Grassmannian { shape } => {
            let w = Permutation::grassmannian(&shape.shape, shape.vars)?;
            Report::new(w.to_string(), &w)
        }
    }
}
