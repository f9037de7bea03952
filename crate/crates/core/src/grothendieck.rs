//! The tableau generating functions G, GP and GQ, closed-form degrees and the
//! explicit top-degree tableaux.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polys::{Monomial, MultiPoly};
use crate::shapes::{
    largest_d_subpartition, largest_strict_subpartition, DPartition, Diagram, Partition,
    StrictPartition,
};
use crate::tableaux::{self, content_of, EntrySet, Flavor, Search, Tableau};

/// Sum of `beta^(d(T) - |shape|) x^c(T)` over all tableaux of the flavor.
///
/// Returns the zero polynomial when there are no tableaux (`n < len`).
pub fn tableau_polynomial(shape: &Partition, n: usize, flavor: Flavor) -> Result<MultiPoly> {
    let search = Search::new(shape, n, flavor)?;
    let counts: BTreeMap<Vec<u32>, u64> = search.fold(
        BTreeMap::new,
        |acc, boxes| {
            let c: Vec<u32> = content_of(boxes, n).into_iter().map(|v| v as u32).collect();
            *acc.entry(c).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let size = shape.size() as u32;
    Ok(MultiPoly::from_terms(
        n,
        counts.into_iter().map(|(x, c)| {
            let beta = x.iter().sum::<u32>() - size;
            (Monomial { x, beta }, BigInt::from(c))
        }),
    ))
}

pub fn g_polynomial(shape: &Partition, n: usize) -> Result<MultiPoly> {
    tableau_polynomial(shape, n, Flavor::Svt)
}

pub fn gp_polynomial(shape: &StrictPartition, n: usize) -> Result<MultiPoly> {
    tableau_polynomial(shape.as_partition(), n, Flavor::Psvt)
}

pub fn gq_polynomial(shape: &StrictPartition, n: usize) -> Result<MultiPoly> {
    tableau_polynomial(shape.as_partition(), n, Flavor::Qsvt)
}

fn check_formula_input(shape: &Partition, n: usize) -> Result<()> {
    if shape.is_empty() {
        return Err(Error::EmptyShape);
    }
    if n < shape.len() {
        return Err(Error::TooFewVariables {
            needed: shape.len(),
            given: n,
        });
    }
    Ok(())
}

/// Degree of GP for a strict shape, read off its largest D-partition
/// subshape `D` of length `l`: `|D| + 2nl - l^2 - l` when the last part of
/// `D` exceeds 1, else `|D| + 2nl - l^2 - n`.
pub fn gp_degree_formula(shape: &StrictPartition, n: usize) -> Result<usize> {
    check_formula_input(shape, n)?;
    let d = largest_d_subpartition(shape);
    let l = d.len();
    let base = d.size() + 2 * n * l - l * l;
    Ok(if d.last_part() > Some(1) {
        base - l
    } else {
        base - n
    })
}

/// Degree of G: with `m` the largest strict subshape of length `l`,
/// `|m| + ln - l(l+1)/2`.
pub fn g_degree_formula(shape: &Partition, n: usize) -> Result<usize> {
    check_formula_input(shape, n)?;
    let m = largest_strict_subpartition(shape);
    let l = m.len();
    Ok(m.size() + l * n - l * (l + 1) / 2)
}

/// What is known about the degree of GQ from the degree of GP.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GqBounds {
    pub gp_degree: usize,
    pub lower: usize,
    pub upper: usize,
    /// Set when `n` equals the number of parts, where the upper end is attained.
    pub exact: Option<usize>,
    /// Set when the largest D-partition subshape has as many parts as the
    /// shape itself, in which case GQ of the shape and of that subshape have
    /// equal degree.
    pub equals_d_partition_degree: bool,
}

pub fn gq_degree_bounds(shape: &StrictPartition, n: usize) -> Result<GqBounds> {
    let gp = gp_degree_formula(shape, n)?;
    let l = shape.len();
    Ok(GqBounds {
        gp_degree: gp,
        lower: gp + l,
        upper: gp + n,
        exact: (n == l).then_some(gp + n),
        equals_d_partition_degree: largest_d_subpartition(shape).len() == l,
    })
}

/// The P-shifted tableau on a D-partition whose row `i` holds the constant
/// `i` except for its rightmost box, which holds every letter from `i` to `n`
/// (unprimed only when that box is on the diagonal).
pub fn maximal_tableau(shape: &DPartition, n: usize) -> Result<Tableau> {
    check_formula_input(shape, n)?;
    let diagram = Diagram::new(shape.as_partition().clone(), true)?;
    let mut boxes = Vec::with_capacity(diagram.num_cells());
    for c in diagram.cells() {
        let last = Some(c) == diagram.rightmost(c.row);
        boxes.push(match (last, diagram.is_diagonal(c)) {
            (false, _) => EntrySet::plain(c.row),
            (true, false) => EntrySet::shifted_interval(c.row, n),
            (true, true) => EntrySet::plain_interval(c.row, n),
        });
    }
    Tableau::new(diagram, Flavor::Psvt, n, boxes)
}

/// The ordinary tableau on a strict shape whose row `i` holds the constant
/// `i` except for its rightmost box, which holds `i, i+1, ..., n`.
pub fn maximal_tableau_type_a(shape: &StrictPartition, n: usize) -> Result<Tableau> {
    check_formula_input(shape, n)?;
    let diagram = Diagram::unshifted(shape.as_partition().clone());
    let boxes = diagram
        .cells()
        .map(|c| {
            if Some(c) == diagram.rightmost(c.row) {
                EntrySet::plain_interval(c.row, n)
            } else {
                EntrySet::plain(c.row)
            }
        })
        .collect();
    Tableau::new(diagram, Flavor::Svt, n, boxes)
}

/// Closed-form and brute-force degrees side by side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub shape: Partition,
    pub nvars: usize,
    pub flavor: Flavor,
    pub formula_degree: Option<usize>,
    pub gq_bounds: Option<GqBounds>,
    pub brute_degree: Option<usize>,
    pub witness: Option<Tableau>,
    pub discrepant: bool,
}

/// Builds a report; `brute` also runs the exhaustive search.
///
/// For GQ there is no closed form, so the report carries bounds, and it is
/// discrepant when the brute-force degree falls outside them.
pub fn degree_report(
    shape: &Partition,
    n: usize,
    flavor: Flavor,
    brute: bool,
) -> Result<DegreeReport> {
    let (formula_degree, gq_bounds) = match flavor {
        Flavor::Svt => (Some(g_degree_formula(shape, n)?), None),
        Flavor::Psvt => (
            Some(gp_degree_formula(
                &StrictPartition::strict(shape.clone())?,
                n,
            )?),
            None,
        ),
        Flavor::Qsvt => {
            let b = gq_degree_bounds(&StrictPartition::strict(shape.clone())?, n)?;
            (b.exact, Some(b))
        }
    };
    let (brute_degree, witness) = if brute {
        let (d, w) = tableaux::max_degree_with_witness(shape, n, flavor)?;
        (Some(d), Some(w))
    } else {
        (None, None)
    };
    let discrepant = match (formula_degree, brute_degree, &gq_bounds) {
        (Some(f), Some(b), _) if f != b => true,
        (_, Some(b), Some(bounds)) => b < bounds.lower || b > bounds.upper,
        _ => false,
    };
    Ok(DegreeReport {
        shape: shape.clone(),
        nvars: n,
        flavor,
        formula_degree,
        gq_bounds,
        brute_degree,
        witness,
        discrepant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::max_degree_brute;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sp(parts: &[usize]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn polynomial_examples() {
        let b = MultiPoly::beta(2);
        let expected = &(&x(2, 1) + &x(2, 2)) + &(&b * &(&x(2, 1) * &x(2, 2)));
        assert_eq!(g_polynomial(&p(&[1]), 2).unwrap(), expected);
        assert_eq!(gp_polynomial(&sp(&[1]), 2).unwrap(), expected);
        assert_eq!(
            g_polynomial(&Partition::empty(), 3).unwrap(),
            MultiPoly::one(3)
        );
        assert_eq!(g_polynomial(&p(&[2, 2]), 2).unwrap().x_degree(), Some(4));
        assert_eq!(gp_polynomial(&sp(&[1]), 1).unwrap(), x(1, 1));
        assert_eq!(gp_polynomial(&sp(&[2]), 1).unwrap(), &x(1, 1) * &x(1, 1));
        let gq = &x(1, 1).scale(&BigInt::from(2)) + &(&MultiPoly::beta(1) * &(&x(1, 1) * &x(1, 1)));
        assert_eq!(gq_polynomial(&sp(&[1]), 1).unwrap(), gq);
        assert!(g_polynomial(&p(&[1, 1]), 1).unwrap().is_zero());
    }

    #[test]
    fn q_degree_values() {
        assert_eq!(gq_polynomial(&sp(&[4, 2]), 3).unwrap().x_degree(), Some(14));
        assert_eq!(
            gq_polynomial(&sp(&[4, 2, 1]), 3).unwrap().x_degree(),
            Some(15)
        );
    }

    #[test]
    fn formula_examples() {
        assert_eq!(gp_degree_formula(&sp(&[3, 1]), 2), Ok(6));
        assert_eq!(gp_degree_formula(&sp(&[2]), 1), Ok(2));
        assert_eq!(gp_degree_formula(&sp(&[6, 4, 2, 1]), 4), Ok(24));
        for n in 1..6 {
            assert_eq!(g_degree_formula(&p(&[1]), n), Ok(n));
        }
        assert_eq!(g_degree_formula(&p(&[2, 2]), 2), Ok(4));
        assert_eq!(g_degree_formula(&p(&[6, 4, 2, 1]), 6), Ok(27));
        assert_eq!(
            gp_degree_formula(&sp(&[3, 1]), 1),
            Err(Error::TooFewVariables {
                needed: 2,
                given: 1
            })
        );
        assert_eq!(
            g_degree_formula(&Partition::empty(), 2),
            Err(Error::EmptyShape)
        );
    }

    #[test]
    fn gq_bound_examples() {
        let b = gq_degree_bounds(&sp(&[3, 1]), 2).unwrap();
        assert_eq!(b.exact, Some(8));
        assert_eq!(max_degree_brute(&p(&[3, 1]), 2, Flavor::Qsvt), Ok(8));
        let b = gq_degree_bounds(&sp(&[4, 2]), 3).unwrap();
        assert_eq!((b.gp_degree, b.lower, b.upper, b.exact), (12, 14, 15, None));
        assert_eq!(gq_degree_bounds(&sp(&[1]), 1).unwrap().exact, Some(2));
    }

    #[test]
    fn maximal_tableau_examples() {
        let m = maximal_tableau(&DPartition::new(vec![3, 1]).unwrap(), 3).unwrap();
        assert_eq!(m.to_text(), "  23\n1|1|12'23'3");
        assert!(m.is_valid());
        assert_eq!(m.degree(), 9);
        let m = maximal_tableau(&DPartition::new(vec![2]).unwrap(), 1).unwrap();
        assert_eq!(m.to_text(), "1|1");
        let m = maximal_tableau(&DPartition::new(vec![6, 4, 2]).unwrap(), 4).unwrap();
        assert_eq!(m.degree(), 24);
        let nt = maximal_tableau_type_a(&sp(&[2, 1]), 2).unwrap();
        assert_eq!(nt.to_text(), "2\n1|12");
        assert_eq!(nt.degree(), 4);
        let nt = maximal_tableau_type_a(&sp(&[6, 4, 2, 1]), 6).unwrap();
        assert!(nt.is_valid());
        assert_eq!(nt.degree(), 27);
    }

    #[test]
    fn maximal_tableaux_match_formulas() {
        for lambda in Partition::all_in_box(7, 4) {
            for n in lambda.len().max(1)..=6 {
                if lambda.is_empty() {
                    continue;
                }
                if lambda.is_d_partition() {
                    let d = DPartition::new(lambda.parts().to_vec()).unwrap();
                    let m = maximal_tableau(&d, n).unwrap();
                    assert!(m.is_valid(), "{m:?}");
                    assert_eq!(m.degree(), gp_degree_formula(&d.clone().into(), n).unwrap());
                }
                if lambda.is_strict() {
                    let s = sp(lambda.parts());
                    let m = maximal_tableau_type_a(&s, n).unwrap();
                    assert!(m.is_valid());
                    assert_eq!(m.degree(), g_degree_formula(&lambda, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn symmetry_and_lowest_part() {
        for lambda in Partition::all_in_box(6, 6)
            .into_iter()
            .filter(|l| l.size() <= 6 && !l.is_empty())
        {
            for n in lambda.len()..=3 {
                let g = g_polynomial(&lambda, n).unwrap();
                assert!(g.is_symmetric(), "G {lambda} n={n}");
                if lambda.is_strict() {
                    let gp = gp_polynomial(&sp(lambda.parts()), n).unwrap();
                    assert!(gp.is_symmetric(), "GP {lambda} n={n}");
                    assert_eq!(gp.min_x_degree(), Some(lambda.size() as u32));
                    let lowest = gp.homogeneous_part(lambda.size() as u32);
                    assert!(lowest.terms().all(|(m, _)| m.beta == 0));
                    // beta exponent is determined by the monomial
                    assert!(gp
                        .terms()
                        .all(|(m, _)| m.beta + lambda.size() as u32 == m.x_degree()));
                }
            }
        }
    }

    #[test]
    fn report_flags_agreement() {
        let r = degree_report(&p(&[3, 1]), 2, Flavor::Psvt, true).unwrap();
        assert_eq!(
            (r.formula_degree, r.brute_degree, r.discrepant),
            (Some(6), Some(6), false)
        );
        assert_eq!(r.witness.as_ref().unwrap().degree(), 6);
        let r = degree_report(&p(&[4, 2]), 3, Flavor::Qsvt, true).unwrap();
        assert_eq!(
            (r.formula_degree, r.brute_degree, r.discrepant),
            (None, Some(14), false)
        );
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<DegreeReport>(&json).unwrap(), r);
    }
}
