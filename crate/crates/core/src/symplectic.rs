//! Symplectic Grothendieck polynomials, built top-down from the reverse
//! involution by the operators `f -> d_i((1 - x_{i+1}) f)`.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grothendieck::{gp_degree_formula, gp_polynomial};
use crate::permutations::FpfInvolution;
use crate::polys::{precede, MultiPoly};
use crate::shapes::{Partition, StrictPartition};

/// Largest size computed unless the caller asks for more explicitly.
pub const DEFAULT_CEILING: usize = 8;

/// `prod (x_i + x_j - x_i x_j)` over `1 <= i < j <= size - i`.
pub fn gsp_top(size: usize) -> Result<MultiPoly> {
    if size % 2 == 1 {
        return Err(Error::OddSize(size));
    }
    let mut out = MultiPoly::one(size);
    for i in 1..size {
        for j in i + 1..=size - i {
            let (xi, xj) = (MultiPoly::var(size, i), MultiPoly::var(size, j));
            out = &out * &(&(&xi + &xj) - &(&xi * &xj));
        }
    }
    Ok(out)
}

/// Whether `f -> d_i((1 - x_{i+1}) f)` takes the polynomial of `z` to that
/// of `s_i z s_i`: `z(i) > z(i+1)` and `i`, `i+1` are not paired by `z`.
pub fn step_allowed(z: &FpfInvolution, i: usize) -> bool {
    z.get(i) != i + 1 && z.get(i) > z.get(i + 1)
}

/// All symplectic Grothendieck polynomials of one size.
#[derive(Clone, Debug)]
pub struct SymplecticTable {
    size: usize,
    polys: BTreeMap<FpfInvolution, MultiPoly>,
    /// Number of operator applications that were compared against an
    /// existing entry.
    checked_paths: usize,
}

impl SymplecticTable {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, z: &FpfInvolution) -> Option<&MultiPoly> {
        self.polys.get(z)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FpfInvolution, &MultiPoly)> {
        self.polys.iter()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn checked_paths(&self) -> usize {
        self.checked_paths
    }
}

/// Keyed by one-line notation.
impl Serialize for SymplecticTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, &MultiPoly> = self
            .polys
            .iter()
            .map(|(z, p)| (z.permutation().to_csv(), p))
            .collect();
        map.serialize(serializer)
    }
}

/// [`gsp_all_with_ceiling`] with [`DEFAULT_CEILING`].
pub fn gsp_all(size: usize) -> Result<SymplecticTable> {
    gsp_all_with_ceiling(size, DEFAULT_CEILING)
}

/// Applies every allowed operator from every involution, largest inversion
/// count first. Each result is either new or compared with the polynomial
/// already found by another route; a mismatch is an error.
pub fn gsp_all_with_ceiling(size: usize, ceiling: usize) -> Result<SymplecticTable> {
    if size % 2 == 1 {
        return Err(Error::OddSize(size));
    }
    if size > ceiling {
        return Err(Error::SizeTooLarge { size, ceiling });
    }
    let top = FpfInvolution::reverse(size)?;
    let mut polys = BTreeMap::new();
    polys.insert(top.clone(), gsp_top(size)?);
    let mut pending: BTreeMap<(Reverse<usize>, FpfInvolution), ()> = BTreeMap::new();
    pending.insert((Reverse(top.permutation().inversions()), top), ());
    let mut checked_paths = 0;
    while let Some(((_, z), ())) = pending.pop_first() {
        let f = polys[&z].clone();
        for i in 1..size {
            if !step_allowed(&z, i) {
                continue;
            }
            let y = z.conjugate(i)?;
            let g = f.beta_divided_difference(i)?;
            match polys.get(&y) {
                Some(existing) => {
                    checked_paths += 1;
                    if existing != &g {
                        return Err(Error::InconsistentRecursion(y.to_string()));
                    }
                }
                None => {
                    pending.insert((Reverse(y.permutation().inversions()), y.clone()), ());
                    polys.insert(y, g);
                }
            }
        }
    }
    let expected = FpfInvolution::all(size)?.len();
    if polys.len() != expected {
        return Err(Error::Internal(format!(
            "reached {} of {expected} involutions",
            polys.len()
        )));
    }
    Ok(SymplecticTable {
        size,
        polys,
        checked_paths,
    })
}

/// Compares `z` with `21 × z`: the polynomial of `z`, read in the larger
/// ring, must precede that of `21 × z`.
pub fn compare_with_direct_sum(
    z: &FpfInvolution,
    small: &SymplecticTable,
    large: &SymplecticTable,
) -> Result<bool> {
    if large.size() != small.size() + 2 || z.size() != small.size() {
        return Err(Error::ShapeMismatch(format!(
            "tables of sizes {} and {} do not fit {z}",
            small.size(),
            large.size()
        )));
    }
    let missing = |w: &FpfInvolution| Error::Internal(format!("{w} missing from table"));
    let f = small
        .get(z)
        .ok_or_else(|| missing(z))?
        .extended(large.size());
    let bigger = z.direct_sum_21();
    let g = large.get(&bigger).ok_or_else(|| missing(&bigger))?;
    Ok(precede(&f, g))
}

/// Degree of a symplectic polynomial next to the GP degree it is expected
/// not to exceed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub involution: FpfInvolution,
    pub shape: Partition,
    /// Last nonzero position of the symplectic code.
    pub k: Option<usize>,
    pub gsp_degree: usize,
    pub gp_degree: usize,
    pub holds: bool,
    /// Empty shape: both sides are the constant 1.
    pub trivial: bool,
}

pub fn compare_degree(z: &FpfInvolution, table: &SymplecticTable) -> Result<DegreeComparison> {
    let f = table
        .get(z)
        .ok_or_else(|| Error::Internal(format!("{z} missing from table")))?;
    let gsp_degree = f.x_degree().unwrap_or(0) as usize;
    let shape = z.shape();
    let k = z.last_nonzero_position();
    let (gp_degree, trivial) = match k {
        None => (0, true),
        Some(k) => (
            gp_degree_formula(&StrictPartition::strict(shape.clone())?, k)?,
            false,
        ),
    };
    Ok(DegreeComparison {
        involution: z.clone(),
        shape,
        k,
        gsp_degree,
        gp_degree,
        holds: gsp_degree <= gp_degree,
        trivial,
    })
}

/// Heuristic necessary condition for the stable limit of `z` to be a single
/// GP polynomial: the polynomial of `z` must precede `GP_{shape, k}` taken
/// with beta = -1. `None` for the empty shape. A `true` answer proves
/// nothing; a `false` one rules the single-GP limit out only if the
/// comparison with GP truncations is known to hold, which is not checked.
pub fn precedes_gp_truncation(z: &FpfInvolution, table: &SymplecticTable) -> Result<Option<bool>> {
    let f = table
        .get(z)
        .ok_or_else(|| Error::Internal(format!("{z} missing from table")))?;
    let Some(k) = z.last_nonzero_position() else {
        return Ok(None);
    };
    let gp = gp_polynomial(&StrictPartition::strict(z.shape())?, k)?.specialize_beta(-1);
    Ok(Some(precede(f, &gp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(s: &str) -> FpfInvolution {
        s.parse().unwrap()
    }

    /// `x_i + x_j - x_i x_j` in `nvars` variables.
    fn pair(nvars: usize, i: usize, j: usize) -> MultiPoly {
        let (a, b) = (MultiPoly::var(nvars, i), MultiPoly::var(nvars, j));
        &(&a + &b) - &(&a * &b)
    }

    #[test]
    fn top_elements() {
        assert_eq!(gsp_top(2).unwrap(), MultiPoly::one(2));
        assert_eq!(gsp_top(4).unwrap(), &pair(4, 1, 2) * &pair(4, 1, 3));
        let six = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)]
            .iter()
            .fold(MultiPoly::one(6), |acc, &(i, j)| &acc * &pair(6, i, j));
        assert_eq!(gsp_top(6).unwrap(), six);
        assert_eq!(gsp_top(5).unwrap_err(), Error::OddSize(5));
    }

    #[test]
    fn size_four_by_hand() {
        // With a = 1 - x1, b = 1 - x2, c = 1 - x3 the top polynomial is
        // (1 - ab)(1 - ac). The first factor is symmetric in x1, x2 and
        // d_1(b(1 - ac)) = d_1(b - abc) = (b - a)/(x1 - x2) = 1, leaving
        // 1 - ab = x1 + x2 - x1 x2. Next d_2(c(1 - ab)) = (c - b)/(x2 - x3) = 1.
        let t = gsp_all(4).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(
            t.get(&z("4321")).unwrap(),
            &(&pair(4, 1, 2) * &pair(4, 1, 3))
        );
        assert_eq!(t.get(&z("3412")).unwrap(), &pair(4, 1, 2));
        assert_eq!(t.get(&z("2143")).unwrap(), &MultiPoly::one(4));
        assert_eq!(
            gsp_all(2).unwrap().get(&z("21")).unwrap(),
            &MultiPoly::one(2)
        );
    }

    #[test]
    fn size_six_is_consistent_and_supported() {
        let t = gsp_all(6).unwrap();
        assert_eq!(t.len(), 15);
        assert!(t.checked_paths() > 0);
        for (inv, f) in t.iter() {
            let lowest = f.min_x_degree().unwrap() as usize;
            assert_eq!(lowest, inv.shape().size(), "{inv}");
            let k = inv.last_nonzero_position().unwrap_or(0);
            assert!(f.support().iter().all(|&v| v <= k), "{inv}: {f}");
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        assert_eq!(
            gsp_all(10).unwrap_err(),
            Error::SizeTooLarge {
                size: 10,
                ceiling: 8
            }
        );
        assert_eq!(gsp_all(3).unwrap_err(), Error::OddSize(3));
    }

    #[test]
    fn direct_sum_comparisons() {
        let (t2, t4, t6) = (
            gsp_all(2).unwrap(),
            gsp_all(4).unwrap(),
            gsp_all(6).unwrap(),
        );
        assert!(compare_with_direct_sum(&z("21"), &t2, &t4).unwrap());
        for inv in FpfInvolution::all(4).unwrap() {
            assert!(compare_with_direct_sum(&inv, &t4, &t6).unwrap(), "{inv}");
        }
        assert!(compare_with_direct_sum(&z("21"), &t2, &t6).is_err());
        assert_eq!(
            t6.get(&z("214365"))
                .unwrap()
                .coeff(&crate::polys::Monomial::one(6)),
            BigInt::from(1)
        );
    }

    #[test]
    fn degree_comparisons() {
        let t4 = gsp_all(4).unwrap();
        let c = compare_degree(&z("3412"), &t4).unwrap();
        assert_eq!(
            (c.gsp_degree, c.gp_degree, c.holds, c.k),
            (2, 2, true, Some(2))
        );
        let c = compare_degree(&z("4321"), &t4).unwrap();
        assert_eq!((c.gsp_degree, c.gp_degree, c.holds), (4, 6, true));
        let c = compare_degree(&z("2143"), &t4).unwrap();
        assert!(c.trivial && c.holds);
        assert_eq!((c.gsp_degree, c.gp_degree), (0, 0));
    }

    #[test]
    fn table_json_uses_one_line_keys() {
        let json = serde_json::to_value(gsp_all(4).unwrap()).unwrap();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["2,1,4,3", "3,4,1,2", "4,3,2,1"]);
    }
}
