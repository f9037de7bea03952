//! Generators of matrix Schubert ideals (minors) and of skew-symmetric
//! matrix Schubert ideals (Pfaffians), plus the regularity values that the
//! degree formulas give for them.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grothendieck::g_degree_formula;
use crate::permutations::{FpfInvolution, Permutation};
use crate::polys::MultiPoly;
use crate::shapes::{largest_d_subpartition, largest_strict_subpartition, Partition};
use crate::symplectic::{gsp_all, SymplecticTable};

/// Variables `x_{i,j}` with `i > j` below the diagonal of a `size × size`
/// skew-symmetric matrix; entry `(j, i)` is `-x_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    size: usize,
}

impl SkewMatrix {
    pub fn new(size: usize) -> Self {
        SkewMatrix { size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.size * self.size.saturating_sub(1) / 2
    }

    /// 1-based position of `x_{i,j}` (`i > j`) in the variable list.
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        assert!(
            j < i && i <= self.size,
            "x_{i}_{j} is not below the diagonal"
        );
        (i - 1) * (i - 2) / 2 + j
    }

    pub fn var_names(&self) -> Vec<String> {
        (2..=self.size)
            .flat_map(|i| (1..i).map(move |j| format!("x_{i}_{j}")))
            .collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> MultiPoly {
        let n = self.nvars();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => MultiPoly::zero(n),
            std::cmp::Ordering::Greater => MultiPoly::var(n, self.var_index(i, j)),
            std::cmp::Ordering::Less => -MultiPoly::var(n, self.var_index(j, i)),
        }
    }

    /// Pfaffian of the principal submatrix on the sorted index set `rows`;
    /// zero for odd sizes.
    pub fn pfaffian(&self, rows: &[usize]) -> MultiPoly {
        pfaffian_by_matchings(
            rows,
            &MultiPoly::one(self.nvars()),
            &MultiPoly::zero(self.nvars()),
            &|a, b| self.entry(a, b),
        )
    }
}

/// Expansion along the first index: `pf = sum_k (-1)^k a_{1,k} pf(rest)`,
/// which sums the crossing sign over all perfect matchings.
fn pfaffian_by_matchings<T, F>(indices: &[usize], one: &T, zero: &T, entry: &F) -> T
where
    T: Clone,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>
        + std::ops::Add<&'a T, Output = T>
        + std::ops::Sub<&'a T, Output = T>,
    F: Fn(usize, usize) -> T,
{
    if indices.is_empty() {
        return one.clone();
    }
    if indices.len() % 2 == 1 {
        return zero.clone();
    }
    let first = indices[0];
    let mut total = zero.clone();
    for k in 1..indices.len() {
        let rest: Vec<usize> = indices[1..]
            .iter()
            .copied()
            .filter(|&v| v != indices[k])
            .collect();
        let term = &entry(first, indices[k]) * &pfaffian_by_matchings(&rest, one, zero, entry);
        total = if k % 2 == 1 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

/// Pfaffian of an integer skew-symmetric matrix.
pub fn pfaffian(m: &[Vec<i64>]) -> Result<BigInt> {
    check_skew(m)?;
    let indices: Vec<usize> = (0..m.len()).collect();
    Ok(pfaffian_by_matchings(
        &indices,
        &BigInt::one(),
        &BigInt::zero(),
        &|a, b| BigInt::from(m[a][b]),
    ))
}

fn check_skew(m: &[Vec<i64>]) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        for j in 0..n {
            if m[i][j] != -m[j][i] {
                return Err(Error::ShapeMismatch(format!(
                    "entries ({},{}) and ({},{}) are not opposite",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Generic `size × size` matrix with variables `x_{i,j}` in row-major order.
fn generic_entry(size: usize, i: usize, j: usize) -> MultiPoly {
    MultiPoly::var(size * size, (i - 1) * size + j)
}

/// Determinant of the generic matrix restricted to `rows × cols`, by
/// expansion along the first row.
fn generic_minor(size: usize, rows: &[usize], cols: &[usize]) -> MultiPoly {
    if rows.is_empty() {
        return MultiPoly::one(size * size);
    }
    let mut total = MultiPoly::zero(size * size);
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&v| v != c).collect();
        let term = &generic_entry(size, rows[0], c) * &generic_minor(size, &rows[1..], &rest);
        total = if k % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

fn subsets_of_size(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if pool.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (idx, &first) in pool.iter().enumerate() {
        for mut tail in subsets_of_size(&pool[idx + 1..], k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generator {
    pub poly: MultiPoly,
    /// Which rank condition produced it first.
    pub source: String,
}

/// Polynomials generating an ideal, up to sign and repetition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorSet {
    pub variables: Vec<String>,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    fn new(variables: Vec<String>) -> Self {
        GeneratorSet {
            variables,
            generators: Vec::new(),
        }
    }

    /// Adds `poly` with its largest monomial made positive, unless it is zero
    /// or already present.
    fn push(&mut self, poly: MultiPoly, source: impl FnOnce() -> String) {
        let negative = match poly.terms().last() {
            None => return,
            Some((_, c)) => c.is_negative(),
        };
        let poly = if negative { -poly } else { poly };
        if !self.generators.iter().any(|g| g.poly == poly) {
            self.generators.push(Generator {
                poly,
                source: source(),
            });
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// One generator per line, variables named as in [`GeneratorSet::variables`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            let _ = writeln!(
                out,
                "{}",
                g.poly.to_text_with(|i| self.variables[i - 1].clone())
            );
        }
        out
    }

    /// Height of the ideal when it is generated by its linear members: the
    /// rank of the linear generators. Other generators are accepted only if
    /// the linear ones are single variables and every term of the others
    /// contains one of those variables. `None` otherwise.
    pub fn linear_height(&self) -> Option<usize> {
        let nvars = self.variables.len();
        let is_linear = |p: &MultiPoly| p.terms().all(|(m, _)| m.x_degree() == 1 && m.beta == 0);
        let mut rows = Vec::new();
        let mut single = vec![false; nvars];
        let mut all_single = true;
        for g in self.generators.iter().filter(|g| is_linear(&g.poly)) {
            let mut row = vec![BigInt::zero(); nvars];
            for (m, c) in g.poly.terms() {
                row[m.x.iter().position(|&e| e == 1).unwrap()] = c.clone();
            }
            if g.poly.num_terms() == 1 {
                single[row.iter().position(|c| !c.is_zero()).unwrap()] = true;
            } else {
                all_single = false;
            }
            rows.push(row);
        }
        for g in self.generators.iter().filter(|g| !is_linear(&g.poly)) {
            let covered = g
                .poly
                .terms()
                .all(|(m, _)| m.x.iter().zip(&single).any(|(&e, &s)| s && e > 0));
            if !all_single || !covered {
                return None;
            }
        }
        Some(rank(rows))
    }
}

fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let (a, b) = (rows[r][c].clone(), rows[i][c].clone());
            for j in 0..ncols {
                rows[i][j] = &rows[i][j] * &a - &rows[r][j] * &b;
            }
        }
        r += 1;
    }
    r
}

/// All minors of size `R(i,j) + 1` of every upper-left `i × j` block of the
/// generic matrix.
pub fn msv_generators(w: &Permutation) -> GeneratorSet {
    let n = w.len();
    let ranks = w.rank_matrix();
    let names = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| format!("x_{i}_{j}")))
        .collect();
    let mut set = GeneratorSet::new(names);
    for i in 1..=n {
        for j in 1..=n {
            let r = ranks.get(i, j);
            let rows: Vec<usize> = (1..=i).collect();
            let cols: Vec<usize> = (1..=j).collect();
            for rs in subsets_of_size(&rows, r + 1) {
                for cs in subsets_of_size(&cols, r + 1) {
                    set.push(generic_minor(n, &rs, &cs), || {
                        format!("rank({i},{j}) <= {r}: rows {rs:?} cols {cs:?}")
                    });
                }
            }
        }
    }
    set
}

/// Pfaffians of the principal submatrices on `U ⊆ [i]` with
/// `|U ∩ [j]| > R(i,j)`, over all `i >= j`.
pub fn ssmsv_generators(z: &FpfInvolution) -> GeneratorSet {
    let size = z.size();
    let m = SkewMatrix::new(size);
    let ranks = z.permutation().rank_matrix();
    let mut set = GeneratorSet::new(m.var_names());
    for i in 1..=size {
        let pool: Vec<usize> = (1..=i).collect();
        for k in (2..=i).step_by(2) {
            for u in subsets_of_size(&pool, k) {
                for j in 1..=i {
                    let r = ranks.get(i, j);
                    if u.iter().filter(|&&v| v <= j).count() > r {
                        set.push(m.pfaffian(&u), || {
                            format!("rank({i},{j}) <= {r}: U = {u:?}")
                        });
                        break;
                    }
                }
            }
        }
    }
    set
}

/// Which regularity computation produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityRoute {
    /// Closed formula for Grassmannian matrix Schubert varieties.
    Grassmannian,
    /// Upper bound from the GP degree formula.
    SkewBound,
    /// Degree of the specialized symplectic polynomial minus the height.
    SkewKPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub input: String,
    pub route: RegularityRoute,
    pub height: usize,
    /// Degree fed into `reg = degree - height`.
    pub degree: usize,
    pub regularity: usize,
    /// False when `regularity` is only an upper bound.
    pub exact: bool,
    /// Value from a second route, when one was computed.
    pub cross_check: Option<usize>,
    pub note: Option<String>,
}

/// `l n - l(l+1)/2 - (|shape| - |m|)` with `m` the largest strict subshape
/// of length `l`, cross-checked against `deg G - |shape|`.
pub fn reg_grassmannian(shape: &Partition, n: usize) -> Result<RegularityReport> {
    if shape.is_empty() {
        return Err(Error::EmptyShape);
    }
    if n < shape.len() {
        return Err(Error::TooFewVariables {
            needed: shape.len(),
            given: n,
        });
    }
    let m = largest_strict_subpartition(shape);
    let l = m.len();
    let regularity = l * n - l * (l + 1) / 2 - (shape.size() - m.size());
    let degree = g_degree_formula(shape, n)?;
    let w = Permutation::grassmannian(shape, n)?;
    Ok(RegularityReport {
        input: format!("{shape} n={n} ({})", w),
        route: RegularityRoute::Grassmannian,
        height: shape.size(),
        degree: regularity + shape.size(),
        regularity,
        exact: true,
        cross_check: Some(degree - shape.size()),
        note: None,
    })
}

/// Upper bound for a skew-symmetric matrix Schubert variety whose involution
/// has a single GP polynomial as stable limit. With shape `s`, its largest
/// D-partition subshape `D` of length `l` and `k` the last nonzero position
/// of the symplectic code: `2kl - l^2 - l - (|s| - |D|)` when the last part
/// of `D` exceeds 1, else `2kl - l^2 - k - (|s| - |D|)`.
pub fn reg_skew_upper(z: &FpfInvolution) -> RegularityReport {
    let shape = z.shape();
    let input = z.to_string();
    let Some(k) = z.last_nonzero_position() else {
        return RegularityReport {
            input,
            route: RegularityRoute::SkewBound,
            height: 0,
            degree: 0,
            regularity: 0,
            exact: false,
            cross_check: None,
            note: Some("empty shape: zero ideal".into()),
        };
    };
    let d = largest_d_subpartition(&shape);
    let l = d.len();
    let loss = shape.size() - d.size();
    let base = 2 * k * l - l * l;
    let bound = if d.last_part() > Some(1) {
        base - l
    } else {
        base - k
    } - loss;
    RegularityReport {
        input,
        route: RegularityRoute::SkewBound,
        height: shape.size(),
        degree: bound + shape.size(),
        regularity: bound,
        exact: false,
        cross_check: None,
        note: Some("valid when the involution is FPF-vexillary; not checked here".into()),
    }
}

/// Regularity from the K-polynomial: substitute `x_i = 1 - t` into the
/// symplectic polynomial and subtract the height `|shape|`.
pub fn reg_from_kpoly(z: &FpfInvolution) -> Result<RegularityReport> {
    reg_from_kpoly_with(z, &gsp_all(z.size())?)
}

pub fn reg_from_kpoly_with(z: &FpfInvolution, table: &SymplecticTable) -> Result<RegularityReport> {
    let f = table.get(z).ok_or_else(|| {
        Error::ShapeMismatch(format!("{z} is not in the table of size {}", table.size()))
    })?;
    let k = f.specialize_one_minus_t(-1);
    let degree = k
        .degree()
        .ok_or_else(|| Error::Internal(format!("K-polynomial of {z} vanished")))?;
    let height = z.shape().size();
    let regularity = degree.checked_sub(height).ok_or_else(|| {
        Error::Internal(format!(
            "K-polynomial degree {degree} below height {height} for {z}"
        ))
    })?;
    Ok(RegularityReport {
        input: z.to_string(),
        route: RegularityRoute::SkewKPolynomial,
        height,
        degree,
        regularity,
        exact: true,
        cross_check: Some(reg_skew_upper(z).regularity),
        note: Some(format!("K(t) = {k}")),
    })
}
