//! Partitions and their (shifted) diagrams.
//!
//! Diagrams use French notation: row 1 is the longest row and sits at the
//! bottom, so "up" means row index + 1. A shifted diagram indents row `i` by
//! `i - 1` columns, so its main diagonal is the set of cells with `col == row`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The `i`th part (1-based), with implicit trailing zeros.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn last_part(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// Part-by-part containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_d_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1] + 2)
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// All partitions contained in the `max_len × max_part` box, in
    /// lexicographic order of their parts (the empty partition first).
    pub fn all_in_box(max_part: usize, max_len: usize) -> Vec<Partition> {
        fn rec(bound: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if left == 0 {
                return;
            }
            for p in 1..=bound {
                cur.push(p);
                rec(p, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_part, max_len, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        Partition::all_in_box(self.part(1), self.len())
            .into_iter()
            .filter(|p| self.contains(p))
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma-separated positive integers; the empty string is `()`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

macro_rules! refined_partition {
    ($name:ident, $check:ident, $what:literal) => {
        #[doc = concat!("A partition whose consecutive parts are ", $what, ".")]
        #[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
        pub struct $name(Partition);

        impl $name {
            pub fn new(parts: Vec<usize>) -> Result<Self> {
                Self::try_from(Partition::new(parts)?)
            }

            pub fn as_partition(&self) -> &Partition {
                &self.0
            }

            pub fn into_partition(self) -> Partition {
                self.0
            }
        }

        impl TryFrom<Partition> for $name {
            type Error = Error;

            fn try_from(p: Partition) -> Result<Self> {
                if p.$check() {
                    Ok($name(p))
                } else {
                    Err(Error::InvalidShape(format!("{p} is not {}", $what)))
                }
            }
        }

        impl TryFrom<Vec<usize>> for $name {
            type Error = Error;

            fn try_from(parts: Vec<usize>) -> Result<Self> {
                $name::new(parts)
            }
        }

        impl From<$name> for Vec<usize> {
            fn from(p: $name) -> Self {
                p.0.parts
            }
        }

        impl Deref for $name {
            type Target = Partition;

            fn deref(&self) -> &Partition {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", stringify!($name), self.0)
            }
        }
    };
}

refined_partition!(StrictPartition, is_strict, "strictly decreasing");
refined_partition!(DPartition, is_d_partition, "at least two apart");

impl StrictPartition {
    pub fn strict(p: Partition) -> Result<Self> {
        if p.is_strict() {
            Ok(StrictPartition(p))
        } else {
            Err(Error::NonStrictShift(p.to_string()))
        }
    }
}

impl From<DPartition> for StrictPartition {
    fn from(d: DPartition) -> Self {
        StrictPartition(d.0)
    }
}

/// Greedy construction shared by the two maximizers: keep the first part and
/// cap each later part at `previous - gap`, stopping at the first
/// nonpositive value.
fn greedy_gap(lambda: &Partition, gap: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(lambda.len());
    for &p in lambda.parts() {
        let v = match out.last() {
            None => p,
            Some(&prev) if prev > gap => p.min(prev - gap),
            Some(_) => break,
        };
        out.push(v);
    }
    out
}

/// The largest D-partition contained in `lambda`.
pub fn largest_d_subpartition(lambda: &Partition) -> DPartition {
    DPartition(Partition {
        parts: greedy_gap(lambda, 2),
    })
}

/// The largest strict partition contained in `lambda`.
pub fn largest_strict_subpartition(lambda: &Partition) -> StrictPartition {
    StrictPartition(Partition {
        parts: greedy_gap(lambda, 1),
    })
}

/// A cell of a diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The diagram of a partition, optionally shifted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    shape: Partition,
    shifted: bool,
}

impl Diagram {
    pub fn new(shape: Partition, shifted: bool) -> Result<Self> {
        if shifted && !shape.is_strict() {
            return Err(Error::NonStrictShift(shape.to_string()));
        }
        Ok(Diagram { shape, shifted })
    }

    pub fn unshifted(shape: Partition) -> Self {
        Diagram {
            shape,
            shifted: false,
        }
    }

    pub fn shifted(shape: &StrictPartition) -> Self {
        Diagram {
            shape: shape.as_partition().clone(),
            shifted: true,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    pub fn num_rows(&self) -> usize {
        self.shape.len()
    }

    pub fn num_cells(&self) -> usize {
        self.shape.size()
    }

    /// First column of row `row`.
    pub fn row_start(&self, row: usize) -> usize {
        if self.shifted {
            row
        } else {
            1
        }
    }

    /// Last column of row `row`; meaningless for rows outside the diagram.
    pub fn row_end(&self, row: usize) -> usize {
        self.row_start(row) + self.shape.part(row) - 1
    }

    pub fn row_len(&self, row: usize) -> usize {
        self.shape.part(row)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1
            && c.row <= self.shape.len()
            && c.col >= self.row_start(c.row)
            && c.col <= self.row_end(c.row)
    }

    fn checked(&self, c: Cell) -> Option<Cell> {
        self.contains(c).then_some(c)
    }

    pub fn up(&self, c: Cell) -> Option<Cell> {
        self.checked(Cell::new(c.row + 1, c.col))
    }

    pub fn down(&self, c: Cell) -> Option<Cell> {
        if c.row <= 1 {
            return None;
        }
        self.checked(Cell::new(c.row - 1, c.col))
    }

    pub fn left(&self, c: Cell) -> Option<Cell> {
        if c.col <= 1 {
            return None;
        }
        self.checked(Cell::new(c.row, c.col - 1))
    }

    pub fn right(&self, c: Cell) -> Option<Cell> {
        self.checked(Cell::new(c.row, c.col + 1))
    }

    pub fn is_diagonal(&self, c: Cell) -> bool {
        self.shifted && c.col == c.row
    }

    /// Rightmost cell of `row`, if the row exists.
    pub fn rightmost(&self, row: usize) -> Option<Cell> {
        (row >= 1 && row <= self.shape.len()).then(|| Cell::new(row, self.row_end(row)))
    }

    /// Cells in row-major order: row 1 first, left to right within a row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (1..=self.shape.len())
            .flat_map(move |r| (self.row_start(r)..=self.row_end(r)).map(move |c| Cell::new(r, c)))
    }

    /// Row-major position of a cell inside [`Diagram::cells`].
    pub fn index_of(&self, c: Cell) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let before: usize = self.shape.parts()[..c.row - 1].iter().sum();
        Some(before + c.col - self.row_start(c.row))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Exhaustive maximizer over contained partitions with the given gap.
    fn brute_max(lambda: &Partition, ok: impl Fn(&Partition) -> bool) -> Partition {
        let mut best = Partition::empty();
        for q in lambda.subpartitions() {
            if ok(&q) && q.size() > best.size() {
                best = q;
            }
        }
        best
    }

    #[test]
    fn d_subpartition_examples() {
        assert_eq!(largest_d_subpartition(&p(&[4, 2, 1])).parts(), &[4, 2]);
        assert_eq!(largest_d_subpartition(&p(&[3, 2, 1])).parts(), &[3, 1]);
        assert_eq!(
            largest_d_subpartition(&p(&[6, 4, 2, 1])).parts(),
            &[6, 4, 2]
        );
        assert!(largest_d_subpartition(&Partition::empty()).is_empty());
        assert_eq!(
            brute_max(&p(&[6, 4, 2, 1]), Partition::is_d_partition).parts(),
            &[6, 4, 2]
        );
    }

    #[test]
    fn strict_subpartition_examples() {
        assert_eq!(largest_strict_subpartition(&p(&[2, 2])).parts(), &[2, 1]);
        assert_eq!(
            largest_strict_subpartition(&p(&[5, 3, 1])).parts(),
            &[5, 3, 1]
        );
        assert_eq!(
            largest_strict_subpartition(&p(&[3, 3, 3])).parts(),
            &[3, 2, 1]
        );
        assert_eq!(
            brute_max(&p(&[3, 3, 3]), Partition::is_strict).parts(),
            &[3, 2, 1]
        );
    }

    #[test]
    fn greedy_matches_exhaustive_search() {
        for lambda in Partition::all_in_box(6, 4) {
            let d = largest_d_subpartition(&lambda);
            let s = largest_strict_subpartition(&lambda);
            let bd = brute_max(&lambda, Partition::is_d_partition);
            let bs = brute_max(&lambda, Partition::is_strict);
            assert_eq!(d.size(), bd.size(), "{lambda}");
            assert_eq!(s.size(), bs.size(), "{lambda}");
            assert!(lambda.contains(&d) && lambda.contains(&s));
            // the maximizer is unique: any other maximizer would contradict the greedy bound
            assert_eq!(d.as_partition(), &bd, "{lambda}");
            assert_eq!(s.as_partition(), &bs, "{lambda}");
            // idempotence
            assert_eq!(largest_d_subpartition(&d), d);
            assert_eq!(largest_strict_subpartition(&s), s);
        }
    }

    #[test]
    fn shifted_diagram_of_6421() {
        let d = Diagram::new(p(&[6, 4, 2, 1]), true).unwrap();
        assert_eq!(d.cells().count(), 13);
        let diag: Vec<Cell> = d.cells().filter(|&c| d.is_diagonal(c)).collect();
        assert_eq!(
            diag,
            vec![
                Cell::new(1, 1),
                Cell::new(2, 2),
                Cell::new(3, 3),
                Cell::new(4, 4)
            ]
        );
        assert_eq!(d.left(Cell::new(4, 4)), None);
        assert_eq!(d.down(Cell::new(4, 4)), Some(Cell::new(3, 4)));
        assert_eq!(d.up(Cell::new(1, 6)), None);
    }

    #[test]
    fn small_diagrams() {
        let d = Diagram::new(p(&[2]), false).unwrap();
        assert_eq!(
            d.cells().collect::<Vec<_>>(),
            vec![Cell::new(1, 1), Cell::new(1, 2)]
        );
        let d = Diagram::new(p(&[3, 1]), true).unwrap();
        assert_eq!(
            d.cells().collect::<Vec<_>>(),
            vec![
                Cell::new(1, 1),
                Cell::new(1, 2),
                Cell::new(1, 3),
                Cell::new(2, 2)
            ]
        );
        assert_eq!(d.index_of(Cell::new(2, 2)), Some(3));
        assert_eq!(d.index_of(Cell::new(2, 3)), None);
    }

    #[test]
    fn shifted_needs_strict() {
        assert_eq!(
            Diagram::new(p(&[2, 2]), true),
            Err(Error::NonStrictShift("(2,2)".into()))
        );
    }

    #[test]
    fn diagonal_count_matches_length() {
        for lambda in Partition::all_in_box(6, 4)
            .into_iter()
            .filter(Partition::is_strict)
        {
            let d = Diagram::new(lambda.clone(), true).unwrap();
            assert_eq!(d.cells().count(), lambda.size());
            assert_eq!(
                d.cells().filter(|&c| d.is_diagonal(c)).count(),
                lambda.len()
            );
        }
    }

    #[test]
    fn parse_partitions() {
        assert_eq!("6,4,2,1".parse::<Partition>().unwrap(), p(&[6, 4, 2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().unwrap_err().is_parse());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1, 1]).transpose().parts(), &[3, 1, 1]);
        assert_eq!(p(&[1, 1]).transpose().parts(), &[2]);
    }
}
