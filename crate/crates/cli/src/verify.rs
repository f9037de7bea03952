//! `grothdeg verify`: bounded exhaustive checks. Cases run in parallel and
//! are reported in a fixed order, smallest shape first, so the first
//! failure printed is the smallest counterexample.

use clap::Subcommand;
use grothdeg::grothendieck::{g_degree_formula, gp_degree_formula};
use grothdeg::ideals::{determinant, pfaffian};
use grothdeg::permutations::{FpfInvolution, Permutation};
use grothdeg::symplectic::{compare_degree, compare_with_direct_sum, gsp_all, SymplecticTable};
use grothdeg::tableaux::max_degree_brute;
use grothdeg::{Flavor, Partition, StrictPartition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::{CliError, Report};

#[derive(Subcommand)]
pub enum Check {
    /// Closed-form GP degree against the largest P-shifted tableau degree.
    GpDegree {
        #[command(flatten)]
        range: Range<5, 3, 4>,
    },
    /// Closed-form G degree against the largest set-valued tableau degree.
    GDegree {
        #[command(flatten)]
        range: Range<4, 4, 4>,
    },
    /// deg GQ - deg GP lies in [length, n], with n attained when n = length.
    GqWindow {
        #[command(flatten)]
        range: Range<5, 3, 4>,
    },
    /// The symplectic polynomial of z precedes that of 21 x z.
    DirectSum {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Symplectic degree is at most the GP degree of the same shape.
    DegreeBound {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Grassmannian permutations are inverse fireworks exactly for strict
    /// shapes, and the run and diagram tests agree on all small permutations.
    Fireworks {
        #[command(flatten)]
        range: Range<4, 4, 5>,
        #[arg(long, default_value_t = 6)]
        max_perm_size: usize,
    },
    /// Pfaffian squared equals determinant on random skew-symmetric matrices.
    Pfaffian {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
}

#[derive(clap::Args)]
pub struct Range<const PART: usize, const LEN: usize, const VARS: usize> {
    #[arg(long, default_value_t = PART)]
    max_part: usize,
    #[arg(long, default_value_t = LEN)]
    max_len: usize,
    #[arg(long, default_value_t = VARS)]
    max_vars: usize,
}

/// Nonempty shapes in the box, each paired with every admissible variable
/// count, ordered by size, then shape, then variable count.
fn sweep(
    max_part: usize,
    max_len: usize,
    max_vars: usize,
    strict_only: bool,
) -> Vec<(Partition, usize)> {
    let mut shapes: Vec<Partition> = Partition::all_in_box(max_part, max_len)
        .into_iter()
        .filter(|l| !l.is_empty() && (!strict_only || l.is_strict()))
        .collect();
    shapes.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    shapes
        .into_iter()
        .flat_map(|l| (l.len()..=max_vars).map(move |n| (l.clone(), n)))
        .collect()
}

/// `Ok(None)` for a passing case, `Ok(Some(detail))` for a discrepancy.
type Outcome = Result<Option<String>, CliError>;

fn summarize(check: &str, noun: &str, cases: Vec<(String, Outcome)>) -> Result<Report, CliError> {
    let mut failures = Vec::new();
    for (label, outcome) in &cases {
        match outcome {
            Ok(None) => {}
            Ok(Some(detail)) => failures.push((label.clone(), detail.clone())),
            Err(CliError::Parse(m) | CliError::Domain(m)) => {
                failures.push((label.clone(), format!("error: {m}")))
            }
        }
    }
    let total = cases.len();
    let first = failures.first();
    let text = match first {
        None => format!("OK: {total} {noun} checked, 0 discrepancies"),
        Some((label, detail)) => format!(
            "FAIL: {total} {noun} checked, {} discrepancies\ncounterexample: {label}: {detail}",
            failures.len()
        ),
    };
    let json = json!({
        "check": check,
        "checked": total,
        "discrepancies": failures.len(),
        "counterexample": first.map(|(case, detail)| json!({ "case": case, "detail": detail })),
    });
    let report = Report::new(text, json)?;
    Ok(if failures.is_empty() {
        report
    } else {
        report.failed()
    })
}

fn shape_cases(
    cases: Vec<(Partition, usize)>,
    check: impl Fn(&Partition, usize) -> Outcome + Sync,
) -> Vec<(String, Outcome)> {
    cases
        .par_iter()
        .map(|(l, n)| (format!("{l} n={n}"), check(l, *n)))
        .collect()
}

fn tables(max_size: usize) -> Result<Vec<SymplecticTable>, CliError> {
    (1..=max_size / 2)
        .map(|k| gsp_all(2 * k).map_err(CliError::from))
        .collect()
}

#[allow(clippy::needless_range_loop)]
pub fn run(check: Check) -> Result<Report, CliError> {
    match check {
        Check::GpDegree { range } => {
            let cases = sweep(range.max_part, range.max_len, range.max_vars, true);
            let results = shape_cases(cases, |l, n| {
                let formula = gp_degree_formula(&StrictPartition::strict(l.clone())?, n)?;
                let brute = max_degree_brute(l, n, Flavor::Psvt)?;
                Ok((formula != brute).then(|| format!("formula {formula}, brute force {brute}")))
            });
            summarize("gp-degree", "shapes", results)
        }
        Check::GDegree { range } => {
            let cases = sweep(range.max_part, range.max_len, range.max_vars, false);
            let results = shape_cases(cases, |l, n| {
                let formula = g_degree_formula(l, n)?;
                let brute = max_degree_brute(l, n, Flavor::Svt)?;
                Ok((formula != brute).then(|| format!("formula {formula}, brute force {brute}")))
            });
            summarize("g-degree", "shapes", results)
        }
        Check::GqWindow { range } => {
            let cases = sweep(range.max_part, range.max_len, range.max_vars, true);
            let results = shape_cases(cases, |l, n| {
                let q = max_degree_brute(l, n, Flavor::Qsvt)?;
                let p = max_degree_brute(l, n, Flavor::Psvt)?;
                let diff = q - p;
                let ok = diff >= l.len() && diff <= n && (n != l.len() || diff == n);
                Ok((!ok).then(|| format!("deg GQ {q} - deg GP {p} = {diff}")))
            });
            summarize("gq-window", "shapes", results)
        }
        Check::DirectSum { max_size } => {
            let tables = tables(max_size + 2)?;
            let mut results = Vec::new();
            for pair in tables.windows(2) {
                for z in FpfInvolution::all(pair[0].size())? {
                    let outcome = compare_with_direct_sum(&z, &pair[0], &pair[1])
                        .map(|ok| (!ok).then(|| "does not precede the direct sum".to_string()))
                        .map_err(CliError::from);
                    results.push((z.to_string(), outcome));
                }
            }
            summarize("direct-sum", "involutions", results)
        }
        Check::DegreeBound { max_size } => {
            let mut results = Vec::new();
            for table in tables(max_size)? {
                for z in FpfInvolution::all(table.size())? {
                    let outcome = compare_degree(&z, &table)
                        .map(|c| {
                            (!c.holds).then(|| {
                                format!("degree {} exceeds GP degree {}", c.gsp_degree, c.gp_degree)
                            })
                        })
                        .map_err(CliError::from);
                    results.push((z.to_string(), outcome));
                }
            }
            summarize("degree-bound", "involutions", results)
        }
        Check::Fireworks {
            range,
            max_perm_size,
        } => {
            let cases = sweep(range.max_part, range.max_len, range.max_vars, false);
            let mut results = shape_cases(cases, |l, n| {
                let w = Permutation::grassmannian(l, n)?;
                let value = w.is_inverse_fireworks();
                Ok((value != l.is_strict()).then(|| format!("{w} inverse fireworks: {value}")))
            });
            for n in 1..=max_perm_size {
                let perms: Vec<(String, Outcome)> = Permutation::all(n)
                    .par_iter()
                    .map(|w| {
                        let agree = w.is_inverse_fireworks() == w.is_inverse_fireworks_by_diagram();
                        (
                            w.to_string(),
                            Ok((!agree).then(|| "run and diagram tests disagree".to_string())),
                        )
                    })
                    .collect();
                results.extend(perms);
            }
            summarize("fireworks", "cases", results)
        }
        Check::Pfaffian {
            samples,
            seed,
            max_size,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut results = Vec::new();
            for size in (2..=max_size).step_by(2) {
                for k in 0..samples {
                    let mut m = vec![vec![0i64; size]; size];
                    for i in 0..size {
                        for j in i + 1..size {
                            let v = rng.gen_range(-20..=20);
                            m[i][j] = v;
                            m[j][i] = -v;
                        }
                    }
                    let outcome = pfaffian(&m).map_err(CliError::from).map(|pf| {
                        let det = determinant(&m);
                        (&pf * &pf != det).then(|| format!("pf = {pf}, det = {det}, matrix {m:?}"))
                    });
                    results.push((format!("size {size} sample {k}"), outcome));
                }
            }
            summarize("pfaffian", "matrices", results)
        }
    }
}
