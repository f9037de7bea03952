//! Permutations in one-line notation and fixed-point-free involutions.
//!
//! Indices and values are 1-based throughout, so `w.get(i)` is `w(i)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::shapes::Partition;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a bijection on 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// The longest element `n n-1 ... 1`.
    pub fn reverse(n: usize) -> Self {
        Permutation {
            values: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `w(i)`, with `w(i) = i` beyond the stored length.
    pub fn get(&self, i: usize) -> usize {
        if i > self.len() {
            i
        } else {
            self.values[i - 1]
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`, padding the shorter one with fixed points.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.len().max(other.len());
        Permutation {
            values: (1..=n).map(|i| self.get(other.get(i))).collect(),
        }
    }

    /// The simple transposition swapping `i` and `i + 1` inside `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Permutation> {
        if i == 0 || i >= n {
            return Err(Error::InvalidPermutation(format!(
                "no simple transposition s_{i} in S_{n}"
            )));
        }
        let mut values: Vec<usize> = (1..=n).collect();
        values.swap(i - 1, i);
        Ok(Permutation { values })
    }

    /// `w × 1`: one extra fixed point at the end.
    pub fn pad_identity(&self) -> Permutation {
        let mut values = self.values.clone();
        values.push(self.len() + 1);
        Permutation { values }
    }

    pub fn inversions(&self) -> usize {
        self.bcode().iter().sum()
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.get(i) > self.get(i + 1))
            .collect()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    /// Entry `i` counts the later positions holding smaller values.
    pub fn bcode(&self) -> Vec<usize> {
        let w = &self.values;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count())
            .collect()
    }

    /// The code sorted into a partition.
    pub fn shape(&self) -> Partition {
        sorted_partition(&self.bcode())
    }

    /// Inverse of [`Permutation::bcode`]; the code must satisfy `c_i <= n - i`.
    pub fn from_code(code: &[usize]) -> Result<Permutation> {
        let mut remaining: Vec<usize> = (1..=code.len()).collect();
        let mut values = Vec::with_capacity(code.len());
        for (i, &c) in code.iter().enumerate() {
            if c >= remaining.len() {
                return Err(Error::InvalidPermutation(format!(
                    "code entry {c} too large at position {}",
                    i + 1
                )));
            }
            values.push(remaining.remove(c));
        }
        Ok(Permutation { values })
    }

    /// The Grassmannian permutation with its descent at `n` whose shape is
    /// `shape`: pad the partition with zeros to length `n`, reverse it, and
    /// read the result as a code.
    pub fn grassmannian(shape: &Partition, n: usize) -> Result<Permutation> {
        if shape.len() > n {
            return Err(Error::TooFewVariables {
                needed: shape.len(),
                given: n,
            });
        }
        let first = shape.part(1);
        let mut code: Vec<usize> = (1..=n).rev().map(|i| shape.part(i)).collect();
        code.resize(n + first, 0);
        Permutation::from_code(&code)
    }

    /// `R[i][j]` = number of `k <= i` with `w(k) <= j`.
    pub fn rank_matrix(&self) -> RankMatrix {
        let n = self.len();
        let mut rows = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let above = if i > 0 { rows[i - 1][j] } else { 0 };
                rows[i][j] = above + usize::from(self.values[i] <= j + 1);
            }
        }
        RankMatrix { rows }
    }

    /// Cells `(i, j)` with `w(i) > j` and `w⁻¹(j) > i`.
    pub fn rothe_diagram(&self) -> BTreeSet<(usize, usize)> {
        let inv = self.inverse();
        let n = self.len();
        let mut cells = BTreeSet::new();
        for i in 1..=n {
            for j in 1..self.get(i) {
                if inv.get(j) > i {
                    cells.insert((i, j));
                }
            }
        }
        cells
    }

    /// Maximal decreasing runs of the one-line notation.
    pub fn decreasing_runs(&self) -> Vec<Vec<usize>> {
        let mut runs: Vec<Vec<usize>> = Vec::new();
        for &v in &self.values {
            match runs.last_mut() {
                Some(run) if *run.last().unwrap() > v => run.push(v),
                _ => runs.push(vec![v]),
            }
        }
        runs
    }

    /// Whether the first elements of the maximal decreasing runs of `w⁻¹`
    /// increase from left to right.
    pub fn is_inverse_fireworks(&self) -> bool {
        let firsts: Vec<usize> = self
            .inverse()
            .decreasing_runs()
            .iter()
            .map(|r| r[0])
            .collect();
        firsts.windows(2).all(|p| p[0] < p[1])
    }

    /// Same test through the Rothe diagram: every nonempty row `i` must end
    /// in column `w(i) - 1`.
    pub fn is_inverse_fireworks_by_diagram(&self) -> bool {
        let d = self.rothe_diagram();
        (1..=self.len()).all(|i| match d.range((i, 0)..(i + 1, 0)).next_back() {
            Some(&(_, j)) => j + 1 == self.get(i),
            None => true,
        })
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation {
            values: current.clone(),
        }];
        while next_lexicographic(&mut current) {
            out.push(Permutation {
                values: current.clone(),
            });
        }
        out
    }

    /// Cycle notation with fixed points included, e.g. `(1 3)(2)(4)`.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.len() + 1];
        let mut out = String::new();
        for start in 1..=self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i.to_string());
                i = self.get(i);
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        out
    }

    /// Comma-separated one-line notation.
    pub fn to_csv(&self) -> String {
        self.values
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn sorted_partition(code: &[usize]) -> Partition {
    let mut parts: Vec<usize> = code.iter().copied().filter(|&c| c > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).expect("sorted positive parts form a partition")
}

/// Writes digits back to back when every value is a single digit, otherwise
/// separates them with commas.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.iter().all(|&v| v < 10) {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            f.write_str(&self.to_csv())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Accepts `3,4,1,2`, `3 4 1 2` or, for values below 10, `3412`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains([',', ' ']) {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(values).map_err(serde::de::Error::custom)
    }
}

/// Ranks of the upper-left submatrices of a permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankMatrix {
    rows: Vec<Vec<usize>>,
}

impl RankMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Rank of the top-left `i × j` block, 1-based; zero when either is zero.
    pub fn get(&self, i: usize, j: usize) -> usize {
        if i == 0 || j == 0 {
            0
        } else {
            self.rows[i - 1][j - 1]
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

impl fmt::Display for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation `z` of even size with `z(z(i)) = i` and no fixed points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FpfInvolution(Permutation);

impl FpfInvolution {
    pub fn new(z: Permutation) -> Result<Self> {
        if z.len() % 2 == 1 {
            return Err(Error::OddSize(z.len()));
        }
        for i in 1..=z.len() {
            if z.get(i) == i || z.get(z.get(i)) != i {
                return Err(Error::NotFpfInvolution(z.to_string()));
            }
        }
        Ok(FpfInvolution(z))
    }

    /// `2n (2n-1) ... 1`.
    pub fn reverse(size: usize) -> Result<Self> {
        FpfInvolution::new(Permutation::reverse(size))
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i)
    }

    /// Every fixed-point-free involution of `size`, in lexicographic order.
    pub fn all(size: usize) -> Result<Vec<FpfInvolution>> {
        if size % 2 == 1 {
            return Err(Error::OddSize(size));
        }
        let mut out = Vec::new();
        let mut values = vec![0; size];
        fn fill(values: &mut Vec<usize>, out: &mut Vec<FpfInvolution>) {
            let Some(i) = values.iter().position(|&v| v == 0) else {
                out.push(FpfInvolution(Permutation {
                    values: values.clone(),
                }));
                return;
            };
            for j in i + 1..values.len() {
                if values[j] == 0 {
                    values[i] = j + 1;
                    values[j] = i + 1;
                    fill(values, out);
                    values[i] = 0;
                    values[j] = 0;
                }
            }
        }
        fill(&mut values, &mut out);
        out.sort();
        Ok(out)
    }

    /// `21 × z`: the pair `(1 2)` followed by `z` shifted up by two.
    pub fn direct_sum_21(&self) -> FpfInvolution {
        let mut values = vec![2, 1];
        values.extend(self.0.values.iter().map(|v| v + 2));
        FpfInvolution(Permutation { values })
    }

    /// `s_i z s_i`.
    pub fn conjugate(&self, i: usize) -> Result<FpfInvolution> {
        let s = Permutation::simple(self.size(), i)?;
        Ok(FpfInvolution(s.compose(&self.0).compose(&s)))
    }

    /// Entry `i` counts the `j > i` with `z(j) < i` and `z(j) < z(i)`.
    pub fn spcode(&self) -> Vec<usize> {
        let n = self.size();
        (1..=n)
            .map(|i| {
                (i + 1..=n)
                    .filter(|&j| self.get(j) < i && self.get(j) < self.get(i))
                    .count()
            })
            .collect()
    }

    /// Transpose of the sorted symplectic code.
    pub fn shape(&self) -> Partition {
        sorted_partition(&self.spcode()).transpose()
    }

    /// Position of the last nonzero entry of the symplectic code.
    pub fn last_nonzero_position(&self) -> Option<usize> {
        self.spcode().iter().rposition(|&c| c != 0).map(|p| p + 1)
    }
}

impl fmt::Display for FpfInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for FpfInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpfInvolution({})", self.0)
    }
}

impl FromStr for FpfInvolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FpfInvolution::new(s.parse()?).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<'de> Deserialize<'de> for FpfInvolution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        FpfInvolution::new(Permutation::deserialize(deserializer)?)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn z(s: &str) -> FpfInvolution {
        s.parse().unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn codes_and_shapes() {
        assert_eq!(w("2413").bcode(), [1, 2, 0, 0]);
        assert_eq!(w("2413").shape(), p(&[2, 1]));
        assert_eq!(w("52134").bcode(), [4, 1, 0, 0, 0]);
        assert_eq!(w("52134").shape(), p(&[4, 1]));
        assert!(Permutation::identity(4).shape().is_empty());
        assert_eq!(
            Permutation::from_code(&[4, 1, 0, 0, 0]).unwrap(),
            w("52134")
        );
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(
            Permutation::grassmannian(&p(&[2, 1]), 2).unwrap(),
            w("2413")
        );
        assert_eq!(
            Permutation::grassmannian(&p(&[2, 2]), 2).unwrap(),
            w("3412")
        );
        assert_eq!(
            Permutation::grassmannian(&Partition::empty(), 1).unwrap(),
            Permutation::identity(1)
        );
        assert_eq!(
            Permutation::grassmannian(&p(&[1, 1]), 1).unwrap_err(),
            Error::TooFewVariables {
                needed: 2,
                given: 1
            }
        );
    }

    #[test]
    fn rank_matrix_of_52134() {
        let r = w("52134").rank_matrix();
        assert_eq!(
            r.to_string(),
            "0 0 0 0 1\n0 1 1 1 2\n1 2 2 2 3\n1 2 3 3 4\n1 2 3 4 5"
        );
        assert_eq!(
            Permutation::identity(2).rank_matrix().rows(),
            [vec![1, 1], vec![1, 2]]
        );
        assert_eq!(w("3412").rank_matrix().get(2, 2), 0);
    }

    #[test]
    fn fireworks_examples() {
        let u = w("317429865");
        assert!(u.inverse().is_inverse_fireworks());
        let runs: Vec<Vec<usize>> = u.decreasing_runs();
        assert_eq!(runs, [vec![3, 1], vec![7, 4, 2], vec![9, 8, 6, 5]]);
        assert!(Permutation::identity(3).is_inverse_fireworks());
        assert!(!w("3412").is_inverse_fireworks());
        assert!(w("2413").is_inverse_fireworks());
        assert!(!w("3412").is_inverse_fireworks_by_diagram());
        assert!(w("2413").is_inverse_fireworks_by_diagram());
    }

    #[test]
    fn fireworks_methods_agree_on_small_groups() {
        for n in 0..=6 {
            for perm in Permutation::all(n) {
                assert_eq!(
                    perm.is_inverse_fireworks(),
                    perm.is_inverse_fireworks_by_diagram(),
                    "{perm}"
                );
                assert_eq!(perm.rothe_diagram().len(), perm.inversions());
            }
        }
    }

    #[test]
    fn symplectic_codes() {
        assert_eq!(z("2143").spcode(), [0, 0, 0, 0]);
        assert!(z("2143").shape().is_empty());
        assert_eq!(z("2143").last_nonzero_position(), None);
        assert_eq!(z("3412").spcode(), [0, 1, 0, 0]);
        assert_eq!(z("3412").shape(), p(&[1]));
        assert_eq!(z("3412").last_nonzero_position(), Some(2));
        assert_eq!(z("4321").spcode(), [0, 1, 1, 0]);
        assert_eq!(z("4321").shape(), p(&[2]));
        assert_eq!(z("4321").last_nonzero_position(), Some(3));
    }

    #[test]
    fn involution_lists() {
        let four: Vec<String> = FpfInvolution::all(4)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(four, ["2143", "3412", "4321"]);
        assert_eq!(FpfInvolution::all(2).unwrap().len(), 1);
        assert_eq!(FpfInvolution::all(6).unwrap().len(), 15);
        assert_eq!(FpfInvolution::all(8).unwrap().len(), 105);
        assert_eq!(FpfInvolution::all(3).unwrap_err(), Error::OddSize(3));
        assert_eq!(z("2143").direct_sum_21().to_string(), "214365");
        assert_eq!(z("4321").conjugate(1).unwrap(), z("3412"));
        assert!(matches!(
            "1234".parse::<FpfInvolution>(),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn direct_sum_keeps_symplectic_shape() {
        for size in [2, 4, 6] {
            for inv in FpfInvolution::all(size).unwrap() {
                assert_eq!(inv.direct_sum_21().shape(), inv.shape());
            }
        }
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!("3,4,1,2".parse::<Permutation>().unwrap(), w("3412"));
        assert_eq!(w("3412").cycles(), "(1 3)(2 4)");
        assert!(matches!("1,1".parse::<Permutation>(), Err(Error::Parse(_))));
        let big = Permutation::reverse(10);
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert_eq!(w("2413").pad_identity(), w("24135"));
    }

    /// Counting characterization of the Grassmannian permutation: exactly
    /// `shape_i` later values sit below `w(n + 1 - i)`.
    fn counts_match(perm: &Permutation, shape: &Partition, n: usize) -> bool {
        (1..=n).all(|i| {
            let pivot = perm.get(n + 1 - i);
            (n + 1..=perm.len())
                .filter(|&v| perm.get(v) < pivot)
                .count()
                == shape.part(i)
        })
    }

    #[test]
    fn grassmannian_round_trip_and_counts() {
        for shape in Partition::all_in_box(5, 5) {
            for n in shape.len().max(1)..=5 {
                let perm = Permutation::grassmannian(&shape, n).unwrap();
                assert_eq!(perm.shape(), shape);
                assert!(perm.descents().iter().all(|&d| d == n));
                assert!(counts_match(&perm, &shape, n));
            }
        }
    }

    #[test]
    fn strict_shapes_give_inverse_fireworks() {
        for shape in p(&[4, 3, 2, 1]).subpartitions() {
            for n in shape.len().max(1)..=5 {
                let perm = Permutation::grassmannian(&shape, n).unwrap();
                assert_eq!(
                    perm.is_inverse_fireworks(),
                    shape.is_strict(),
                    "{shape} {n}"
                );
                assert_eq!(perm.is_inverse_fireworks_by_diagram(), shape.is_strict());
            }
        }
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (0usize..9)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn code_round_trip(perm in arb_perm()) {
            prop_assert_eq!(Permutation::from_code(&perm.bcode()).unwrap(), perm.clone());
            prop_assert_eq!(perm.compose(&perm.inverse()), Permutation::identity(perm.len()));
        }

        #[test]
        fn rank_steps_are_zero_or_one(perm in arb_perm()) {
            let r = perm.rank_matrix();
            let n = perm.len();
            for i in 1..=n {
                for j in 1..=n {
                    prop_assert!(r.get(i, j) - r.get(i - 1, j) <= 1);
                    prop_assert!(r.get(i, j) - r.get(i, j - 1) <= 1);
                }
            }
            if n > 0 {
                prop_assert_eq!(r.get(n, n), n);
            }
        }

        #[test]
        fn permutation_json_round_trip(perm in arb_perm()) {
            let text = serde_json::to_string(&perm).unwrap();
            prop_assert_eq!(serde_json::from_str::<Permutation>(&text).unwrap(), perm);
        }
    }
}
