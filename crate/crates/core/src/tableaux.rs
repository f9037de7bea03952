//! Set-valued fillings of ordinary and shifted diagrams.
//!
//! Entries come from the primed alphabet `1' < 1 < 2' < 2 < ...`. Internally
//! an entry is a *key* `2v - 1` (for `v'`) or `2v` (for `v`), so the alphabet
//! order is plain integer order and a set of entries is a `u64` bitmask over
//! keys. That caps entry values at [`MAX_VALUE`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{Cell, Diagram, Partition, StrictPartition};

/// Largest entry value a tableau may hold.
pub const MAX_VALUE: usize = 31;

/// An element of the primed alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub value: usize,
    pub primed: bool,
}

impl Entry {
    pub const fn plain(value: usize) -> Self {
        Entry {
            value,
            primed: false,
        }
    }

    pub const fn primed(value: usize) -> Self {
        Entry {
            value,
            primed: true,
        }
    }

    pub fn key(self) -> u32 {
        (2 * self.value - usize::from(self.primed)) as u32
    }

    pub fn from_key(key: u32) -> Self {
        let key = key as usize;
        Entry {
            value: key.div_ceil(2),
            primed: key % 2 == 1,
        }
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.primed { "'" } else { "" })
    }
}

/// A set of entries, stored as a bitmask over keys.
///
/// The empty set is representable so that intermediate fillings can be built
/// up incrementally; [`Tableau::validate`] reports empty boxes.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntrySet(u64);

impl EntrySet {
    pub const EMPTY: EntrySet = EntrySet(0);

    pub const fn from_bits(bits: u64) -> Self {
        EntrySet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn single(e: Entry) -> Self {
        EntrySet(1 << e.key())
    }

    pub fn plain(value: usize) -> Self {
        EntrySet::single(Entry::plain(value))
    }

    /// `[lo, hi]` in the primed alphabet: every key from `lo` to `hi`.
    pub fn key_interval(lo: u32, hi: u32) -> Self {
        if lo > hi {
            return EntrySet::EMPTY;
        }
        let upper = if hi >= 63 {
            u64::MAX
        } else {
            (1u64 << (hi + 1)) - 1
        };
        EntrySet(upper & !((1u64 << lo) - 1))
    }

    /// `[a, b]_S`: all primed and unprimed letters from `a` up to `b`.
    pub fn shifted_interval(a: usize, b: usize) -> Self {
        if a > b {
            return EntrySet::EMPTY;
        }
        EntrySet::key_interval(Entry::plain(a).key(), Entry::plain(b).key())
    }

    /// `[a, b]` of unprimed letters only.
    pub fn plain_interval(a: usize, b: usize) -> Self {
        EntrySet(EntrySet::shifted_interval(a, b).0 & UNPRIMED_KEYS)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn min(self) -> Option<Entry> {
        (!self.is_empty()).then(|| Entry::from_key(self.0.trailing_zeros()))
    }

    pub fn max(self) -> Option<Entry> {
        (!self.is_empty()).then(|| Entry::from_key(63 - self.0.leading_zeros()))
    }

    pub fn contains(self, e: Entry) -> bool {
        self.0 & (1 << e.key()) != 0
    }

    pub fn insert(&mut self, e: Entry) {
        self.0 |= 1 << e.key();
    }

    pub fn remove(&mut self, e: Entry) {
        self.0 &= !(1 << e.key());
    }

    pub fn union(self, other: EntrySet) -> EntrySet {
        EntrySet(self.0 | other.0)
    }

    pub fn intersection(self, other: EntrySet) -> EntrySet {
        EntrySet(self.0 & other.0)
    }

    pub fn has_primes(self) -> bool {
        self.0 & PRIMED_KEYS != 0
    }

    /// The same set with every primed letter replaced by its unprimed form.
    pub fn unprimed(self) -> EntrySet {
        EntrySet((self.0 & UNPRIMED_KEYS) | ((self.0 & PRIMED_KEYS) << 1))
    }

    /// Entries in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Entry> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Entry::from_key(k))
        })
    }

    /// Number of entries with value `v`, primed or not.
    pub fn count_value(self, v: usize) -> usize {
        let pair = 0b11u64 << (2 * v - 1);
        (self.0 & pair).count_ones() as usize
    }

    /// Renders the set; multi-digit values force comma separators.
    pub fn to_text(self) -> String {
        let wide = self.iter().any(|e| e.value >= 10);
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        parts.join(if wide { "," } else { "" })
    }
}

const UNPRIMED_KEYS: u64 = 0x5555_5555_5555_5554;
const PRIMED_KEYS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

impl FromIterator<Entry> for EntrySet {
    fn from_iter<I: IntoIterator<Item = Entry>>(iter: I) -> Self {
        let mut s = EntrySet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl FromStr for EntrySet {
    type Err = Error;

    /// Accepts `"34'"` (single-digit values, concatenated) or `"10,11'"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad entry set {s:?}"));
        let push = |set: &mut EntrySet, digits: &str, primed: bool| -> Result<()> {
            let v: usize = digits.parse().map_err(|_| bad())?;
            if v == 0 || v > MAX_VALUE {
                return Err(Error::Parse(format!(
                    "entry value {v} outside 1..={MAX_VALUE}"
                )));
            }
            set.insert(Entry { value: v, primed });
            Ok(())
        };
        let mut set = EntrySet::EMPTY;
        if s.contains(',') {
            for tok in s.split(',') {
                let tok = tok.trim();
                let (digits, primed) = match tok.strip_suffix('\'') {
                    Some(d) => (d, true),
                    None => (tok, false),
                };
                push(&mut set, digits, primed)?;
            }
        } else {
            let chars: Vec<char> = s.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let c = chars[i];
                if !c.is_ascii_digit() {
                    return Err(bad());
                }
                let primed = chars.get(i + 1) == Some(&'\'');
                push(&mut set, &c.to_string(), primed)?;
                i += if primed { 2 } else { 1 };
            }
        }
        if set.is_empty() {
            return Err(bad());
        }
        Ok(set)
    }
}

impl fmt::Display for EntrySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for EntrySet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for EntrySet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.is_empty() {
            return Ok(EntrySet::EMPTY);
        }
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for EntrySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

/// Which family of tableaux a filling belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    /// Semistandard set-valued tableaux on ordinary diagrams.
    #[serde(rename = "SVT")]
    Svt,
    /// P-shifted: no primes on the main diagonal.
    #[serde(rename = "PSVT")]
    Psvt,
    /// Q-shifted: primes allowed on the main diagonal.
    #[serde(rename = "QSVT")]
    Qsvt,
}

impl Flavor {
    pub fn is_shifted(self) -> bool {
        self != Flavor::Svt
    }

    /// Whether `max` (the largest entry of a box) must be strictly below the
    /// smallest entry of the box above.
    fn column_strict(self, max: u32) -> bool {
        self == Flavor::Svt || max.is_multiple_of(2)
    }

    /// Whether `max` must be strictly below the smallest entry of the box to
    /// the right.
    fn row_strict(self, max: u32) -> bool {
        self != Flavor::Svt && max % 2 == 1
    }

    fn primes_allowed(self, diagonal: bool) -> bool {
        match self {
            Flavor::Svt => false,
            Flavor::Psvt => !diagonal,
            Flavor::Qsvt => true,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Svt => "SVT",
            Flavor::Psvt => "PSVT",
            Flavor::Qsvt => "QSVT",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svt" => Ok(Flavor::Svt),
            "psvt" => Ok(Flavor::Psvt),
            "qsvt" => Ok(Flavor::Qsvt),
            _ => Err(Error::Parse(format!("unknown tableau flavor {s:?}"))),
        }
    }
}

/// A broken tableau rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    EmptyBox(Cell),
    ValueTooLarge(Cell),
    PrimeNotAllowed(Cell),
    PrimeOnDiagonal(Cell),
    Column { lower: Cell, upper: Cell },
    Row { left: Cell, right: Cell },
}

/// A set-valued filling of a diagram.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    diagram: Diagram,
    flavor: Flavor,
    n: usize,
    /// Row-major, see [`Diagram::cells`].
    boxes: Vec<EntrySet>,
}

impl Tableau {
    pub fn new(diagram: Diagram, flavor: Flavor, n: usize, boxes: Vec<EntrySet>) -> Result<Self> {
        if diagram.is_shifted() != flavor.is_shifted() {
            return Err(Error::ShapeMismatch(format!(
                "{flavor} tableau on a {} diagram",
                if diagram.is_shifted() {
                    "shifted"
                } else {
                    "unshifted"
                }
            )));
        }
        if boxes.len() != diagram.num_cells() {
            return Err(Error::ShapeMismatch(format!(
                "{} boxes filled, diagram has {}",
                boxes.len(),
                diagram.num_cells()
            )));
        }
        if n > MAX_VALUE {
            return Err(Error::ValueOutOfRange(n));
        }
        Ok(Tableau {
            diagram,
            flavor,
            n,
            boxes,
        })
    }

    /// Builds a tableau from rows listed bottom (row 1) first.
    pub fn from_rows(
        shape: Partition,
        flavor: Flavor,
        n: usize,
        rows: Vec<Vec<EntrySet>>,
    ) -> Result<Self> {
        let diagram = Diagram::new(shape, flavor.is_shifted())?;
        if rows.len() != diagram.num_rows()
            || rows
                .iter()
                .enumerate()
                .any(|(i, r)| r.len() != diagram.row_len(i + 1))
        {
            return Err(Error::ShapeMismatch(format!(
                "row lengths {:?} do not match {}",
                rows.iter().map(Vec::len).collect::<Vec<_>>(),
                diagram.shape()
            )));
        }
        Tableau::new(diagram, flavor, n, rows.into_iter().flatten().collect())
    }

    /// Builds a tableau from an explicit cell map, which must cover the
    /// diagram exactly.
    pub fn from_map(
        diagram: Diagram,
        flavor: Flavor,
        n: usize,
        map: &BTreeMap<Cell, EntrySet>,
    ) -> Result<Self> {
        if map.len() != diagram.num_cells() || map.keys().any(|&c| !diagram.contains(c)) {
            return Err(Error::ShapeMismatch(format!(
                "cell map does not cover the diagram of {}",
                diagram.shape()
            )));
        }
        let boxes = diagram.cells().map(|c| map[&c]).collect();
        Tableau::new(diagram, flavor, n, boxes)
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn shape(&self) -> &Partition {
        self.diagram.shape()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn boxes(&self) -> &[EntrySet] {
        &self.boxes
    }

    pub fn get(&self, c: Cell) -> Option<EntrySet> {
        self.diagram.index_of(c).map(|i| self.boxes[i])
    }

    /// Contents of a possibly-absent box; absent boxes read as empty.
    pub fn at(&self, c: Option<Cell>) -> EntrySet {
        c.and_then(|c| self.get(c)).unwrap_or_default()
    }

    pub fn set(&mut self, c: Cell, s: EntrySet) -> Result<()> {
        let i = self
            .diagram
            .index_of(c)
            .ok_or_else(|| Error::ShapeMismatch(format!("cell {c} is outside {}", self.shape())))?;
        self.boxes[i] = s;
        Ok(())
    }

    pub fn to_map(&self) -> BTreeMap<Cell, EntrySet> {
        self.diagram
            .cells()
            .zip(self.boxes.iter().copied())
            .collect()
    }

    /// Row `r` (1-based), left to right.
    pub fn row(&self, r: usize) -> &[EntrySet] {
        let start: usize = self.shape().parts()[..r - 1].iter().sum();
        &self.boxes[start..start + self.diagram.row_len(r)]
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Result<Tableau> {
        Tableau::new(
            Diagram::new(self.shape().clone(), flavor.is_shifted())?,
            flavor,
            self.n,
            self.boxes.clone(),
        )
    }

    /// Total number of entries.
    pub fn degree(&self) -> usize {
        self.boxes.iter().map(|b| b.len()).sum()
    }

    /// Entries per value `1..=n`, ignoring primes.
    pub fn content(&self) -> Vec<usize> {
        content_of(&self.boxes, self.n)
    }

    pub fn content_and_degree(&self) -> (Vec<usize>, usize) {
        (self.content(), self.degree())
    }

    /// Every rule the filling breaks; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let d = &self.diagram;
        let limit = Entry::plain(self.n).key();
        let mut out = Vec::new();
        for (c, &s) in d.cells().zip(&self.boxes) {
            let Some(max) = s.max() else {
                out.push(Violation::EmptyBox(c));
                continue;
            };
            if max.key() > limit {
                out.push(Violation::ValueTooLarge(c));
            }
            if s.has_primes() && !self.flavor.primes_allowed(d.is_diagonal(c)) {
                out.push(if self.flavor == Flavor::Svt {
                    Violation::PrimeNotAllowed(c)
                } else {
                    Violation::PrimeOnDiagonal(c)
                });
            }
            let mk = max.key();
            if let Some(u) = d.up(c) {
                if let Some(umin) = self.at(Some(u)).min() {
                    let ok = if self.flavor.column_strict(mk) {
                        mk < umin.key()
                    } else {
                        mk <= umin.key()
                    };
                    if !ok {
                        out.push(Violation::Column { lower: c, upper: u });
                    }
                }
            }
            if let Some(r) = d.right(c) {
                if let Some(rmin) = self.at(Some(r)).min() {
                    let ok = if self.flavor.row_strict(mk) {
                        mk < rmin.key()
                    } else {
                        mk <= rmin.key()
                    };
                    if !ok {
                        out.push(Violation::Row { left: c, right: r });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// One line per row, top row first, boxes separated by `|`; shifted rows
    /// are indented.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::with_capacity(self.diagram.num_rows());
        for r in (1..=self.diagram.num_rows()).rev() {
            let pad = if self.diagram.is_shifted() {
                "  ".repeat(r - 1)
            } else {
                String::new()
            };
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_text()).collect();
            lines.push(format!("{pad}{}", cells.join("|")));
        }
        lines.join("\n")
    }

    /// Inverse of [`Tableau::to_text`]. Rows may also be separated by `/`.
    pub fn parse(text: &str, flavor: Flavor, n: usize) -> Result<Tableau> {
        let lines: Vec<&str> = text
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        let mut rows = Vec::with_capacity(lines.len());
        for line in lines.iter().rev() {
            let row = line
                .split('|')
                .map(str::parse)
                .collect::<Result<Vec<EntrySet>>>()?;
            rows.push(row);
        }
        let shape = Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|e| Error::Parse(format!("tableau rows: {e}")))?;
        if flavor.is_shifted() && !shape.is_strict() {
            return Err(Error::Parse(format!(
                "shifted tableau with non-strict shape {shape}"
            )));
        }
        Tableau::from_rows(shape, flavor, n, rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tableau<{} {} n={}>[{}]",
            self.flavor,
            self.shape(),
            self.n,
            self.to_text().replace('\n', " / ")
        )
    }
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    flavor: Flavor,
    n: usize,
    shape: Partition,
    rows: Vec<String>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauRepr {
            flavor: self.flavor,
            n: self.n,
            shape: self.shape().clone(),
            rows: self
                .to_text()
                .lines()
                .map(|l| l.trim().to_string())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TableauRepr::deserialize(d)?;
        let t = Tableau::parse(&repr.rows.join("\n"), repr.flavor, repr.n)
            .map_err(serde::de::Error::custom)?;
        if t.shape() != &repr.shape {
            return Err(serde::de::Error::custom(
                "rows do not match the declared shape",
            ));
        }
        Ok(t)
    }
}

pub(crate) fn content_of(boxes: &[EntrySet], n: usize) -> Vec<usize> {
    (1..=n)
        .map(|v| boxes.iter().map(|b| b.count_value(v)).sum())
        .collect()
}

/// Backtracking search over all tableaux of one shape, flavor and bound.
///
/// Boxes are filled in row-major order, so the only already-placed neighbors
/// of a box are the one to its left and the one below; they fix the smallest
/// key the box may start with. Every nonempty subset of the admissible keys
/// at or above that bound is then tried, in increasing bitmask order.
#[derive(Clone, Debug)]
pub struct Search {
    diagram: Diagram,
    flavor: Flavor,
    n: usize,
    left: Vec<Option<usize>>,
    down: Vec<Option<usize>>,
    admissible: Vec<u64>,
}

impl Search {
    pub fn new(shape: &Partition, n: usize, flavor: Flavor) -> Result<Self> {
        if n > MAX_VALUE {
            return Err(Error::ValueOutOfRange(n));
        }
        let diagram = Diagram::new(shape.clone(), flavor.is_shifted())?;
        let top = EntrySet::key_interval(1, Entry::plain(n).key().max(1)).bits();
        let top = if n == 0 { 0 } else { top };
        let mut left = Vec::new();
        let mut down = Vec::new();
        let mut admissible = Vec::new();
        for c in diagram.cells() {
            left.push(diagram.left(c).and_then(|l| diagram.index_of(l)));
            down.push(diagram.down(c).and_then(|l| diagram.index_of(l)));
            let mask = if flavor.primes_allowed(diagram.is_diagonal(c)) {
                top
            } else {
                top & UNPRIMED_KEYS
            };
            admissible.push(mask);
        }
        Ok(Search {
            diagram,
            flavor,
            n,
            left,
            down,
            admissible,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    fn len(&self) -> usize {
        self.admissible.len()
    }

    /// Keys box `i` may use given the boxes placed before it.
    fn options(&self, i: usize, placed: &[EntrySet]) -> u64 {
        let mut lo = 1u32;
        if let Some(l) = self.left[i] {
            let m = 63 - placed[l].0.leading_zeros();
            lo = lo.max(if self.flavor.row_strict(m) { m + 1 } else { m });
        }
        if let Some(d) = self.down[i] {
            let m = 63 - placed[d].0.leading_zeros();
            lo = lo.max(if self.flavor.column_strict(m) {
                m + 1
            } else {
                m
            });
        }
        if lo >= 64 {
            return 0;
        }
        self.admissible[i] & !((1u64 << lo) - 1)
    }

    fn to_tableau(&self, placed: &[EntrySet]) -> Tableau {
        Tableau {
            diagram: self.diagram.clone(),
            flavor: self.flavor,
            n: self.n,
            boxes: placed.to_vec(),
        }
    }

    /// Sequential depth-first visit of every completion of `prefix`.
    fn visit_from<F: FnMut(&[EntrySet])>(&self, prefix: &[EntrySet], visit: &mut F) {
        let total = self.len();
        let mut placed = prefix.to_vec();
        placed.resize(total, EntrySet::EMPTY);
        let start = prefix.len();
        if start == total {
            visit(&placed);
            return;
        }
        let mut masks = vec![0u64; total];
        let mut depth = start;
        masks[depth] = self.options(depth, &placed);
        loop {
            let next = placed[depth].0.wrapping_sub(masks[depth]) & masks[depth];
            placed[depth] = EntrySet(next);
            if next == 0 {
                if depth == start {
                    return;
                }
                depth -= 1;
                continue;
            }
            if depth + 1 == total {
                visit(&placed);
            } else {
                depth += 1;
                masks[depth] = self.options(depth, &placed);
            }
        }
    }

    /// All partial fillings of the first `depth` boxes, in search order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<EntrySet>> {
        let depth = depth.min(self.len());
        let mut out = vec![Vec::new()];
        for i in 0..depth {
            let mut next = Vec::new();
            for p in &out {
                let mask = self.options(i, p);
                let mut sub = 0u64;
                loop {
                    sub = sub.wrapping_sub(mask) & mask;
                    if sub == 0 {
                        break;
                    }
                    let mut q = p.clone();
                    q.push(EntrySet(sub));
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    /// Folds over every tableau in parallel. Work is split by the filling of
    /// the first two boxes; per-split accumulators are merged in split order,
    /// so the result does not depend on scheduling as long as `merge` is
    /// associative.
    pub fn fold<A, I, V, M>(&self, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync,
        V: Fn(&mut A, &[EntrySet]) + Sync,
        M: Fn(A, A) -> A + Sync,
    {
        let prefixes = self.prefixes(2);
        let parts: Vec<A> = prefixes
            .par_iter()
            .map(|p| {
                let mut acc = init();
                self.visit_from(p, &mut |boxes: &[EntrySet]| visit(&mut acc, boxes));
                acc
            })
            .collect();
        parts.into_iter().fold(init(), merge)
    }

    pub fn count(&self) -> u64 {
        let prefixes = self.prefixes(2);
        prefixes
            .par_iter()
            .map(|p| {
                let mut c = 0u64;
                self.visit_from(p, &mut |_| c += 1);
                c
            })
            .sum()
    }

    /// Maximum degree and the first tableau (in search order) attaining it.
    pub fn max_degree(&self) -> Option<(usize, Tableau)> {
        let prefixes = self.prefixes(2);
        let best = prefixes
            .par_iter()
            .map(|p| {
                let mut best: Option<(usize, Vec<EntrySet>)> = None;
                self.visit_from(p, &mut |placed: &[EntrySet]| {
                    let d: usize = placed.iter().map(|b| b.len()).sum();
                    if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
                        best = Some((d, placed.to_vec()));
                    }
                });
                best
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(None, |acc: Option<(usize, Vec<EntrySet>)>, b| {
                match (acc, b) {
                    (None, b) => b,
                    (a, None) => a,
                    (Some(a), Some(b)) => Some(if b.0 > a.0 { b } else { a }),
                }
            });
        best.map(|(d, placed)| (d, self.to_tableau(&placed)))
    }

    pub fn iter(&self) -> TableauIter {
        TableauIter {
            search: self.clone(),
            placed: vec![EntrySet::EMPTY; self.len()],
            masks: vec![0; self.len()],
            started: false,
            finished: false,
        }
    }
}

/// Lazy stream of tableaux in search order.
pub struct TableauIter {
    search: Search,
    placed: Vec<EntrySet>,
    masks: Vec<u64>,
    started: bool,
    finished: bool,
}

impl Iterator for TableauIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.finished {
            return None;
        }
        let total = self.placed.len();
        let mut depth;
        if !self.started {
            self.started = true;
            if total == 0 {
                self.finished = true;
                return Some(self.search.to_tableau(&[]));
            }
            depth = 0;
            self.masks[0] = self.search.options(0, &self.placed);
        } else {
            depth = total - 1;
        }
        loop {
            let mask = self.masks[depth];
            let next = self.placed[depth].0.wrapping_sub(mask) & mask;
            self.placed[depth] = EntrySet(next);
            if next == 0 {
                if depth == 0 {
                    self.finished = true;
                    return None;
                }
                depth -= 1;
                continue;
            }
            if depth + 1 == total {
                return Some(self.search.to_tableau(&self.placed));
            }
            depth += 1;
            self.masks[depth] = self.search.options(depth, &self.placed);
        }
    }
}

/// Every tableau of shape `shape` with entries at most `n`, in a fixed order.
pub fn enumerate(shape: &Partition, n: usize, flavor: Flavor) -> Result<TableauIter> {
    Ok(Search::new(shape, n, flavor)?.iter())
}

pub fn count(shape: &Partition, n: usize, flavor: Flavor) -> Result<u64> {
    Ok(Search::new(shape, n, flavor)?.count())
}

/// Maximum degree over the full enumeration, with a witness.
pub fn max_degree_with_witness(
    shape: &Partition,
    n: usize,
    flavor: Flavor,
) -> Result<(usize, Tableau)> {
    Search::new(shape, n, flavor)?
        .max_degree()
        .ok_or_else(|| Error::EmptyTableauSet {
            shape: shape.to_string(),
            n,
        })
}

/// Maximum degree over the full enumeration.
pub fn max_degree_brute(shape: &Partition, n: usize, flavor: Flavor) -> Result<usize> {
    max_degree_with_witness(shape, n, flavor).map(|(d, _)| d)
}

/// Shifted-shape convenience for the P/Q flavors.
pub fn max_degree_shifted(shape: &StrictPartition, n: usize, flavor: Flavor) -> Result<usize> {
    max_degree_brute(shape.as_partition(), n, flavor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sets(s: &str) -> Vec<EntrySet> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    pub(crate) fn example_svt() -> Tableau {
        Tableau::from_rows(
            p(&[6, 4, 2, 1]),
            Flavor::Svt,
            6,
            vec![
                sets("12 2 23 3 45 6"),
                sets("3 345 5 5"),
                sets("4 6"),
                sets("56"),
            ],
        )
        .unwrap()
    }

    pub(crate) fn example_psvt() -> Tableau {
        Tableau::from_rows(
            p(&[6, 4, 2, 1]),
            Flavor::Psvt,
            5,
            vec![
                sets("1 1 2' 3' 34' 4"),
                sets("2 2 3' 4'4"),
                sets("34 45'"),
                sets("5"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn entry_order() {
        let order = [
            Entry::primed(1),
            Entry::plain(1),
            Entry::primed(2),
            Entry::plain(2),
            Entry::primed(3),
        ];
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        for e in order {
            assert_eq!(Entry::from_key(e.key()), e);
        }
    }

    #[test]
    fn entry_set_text() {
        let s: EntrySet = "34'".parse().unwrap();
        assert_eq!(
            s.iter().collect::<Vec<_>>(),
            vec![Entry::plain(3), Entry::primed(4)]
        );
        assert_eq!(s.to_text(), "34'");
        let s: EntrySet = "4'4".parse().unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.max(), Some(Entry::plain(4)));
        let wide: EntrySet = "9,10'".parse().unwrap();
        assert_eq!(wide.to_text(), "9,10'");
        assert!("".parse::<EntrySet>().is_err());
        assert!("0".parse::<EntrySet>().is_err());
        assert_eq!(EntrySet::shifted_interval(1, 3).to_text(), "12'23'3");
        assert_eq!(EntrySet::plain_interval(2, 4).to_text(), "234");
        assert_eq!(
            "2'3'".parse::<EntrySet>().unwrap().unprimed().to_text(),
            "23"
        );
    }

    #[test]
    fn svt_example_is_valid_with_content() {
        let t = example_svt();
        assert!(t.is_valid(), "{:?}", t.validate());
        assert_eq!(t.content_and_degree(), (vec![1, 3, 4, 3, 5, 3], 19));
    }

    #[test]
    fn psvt_example_is_valid_with_content() {
        let t = example_psvt();
        assert!(t.is_valid(), "{:?}", t.validate());
        assert_eq!(t.content_and_degree(), (vec![2, 3, 4, 6, 2], 17));
    }

    #[test]
    fn diagonal_prime_rule() {
        let t = Tableau::from_rows(p(&[2]), Flavor::Psvt, 1, vec![sets("1' 1")]).unwrap();
        assert_eq!(
            t.validate(),
            vec![Violation::PrimeOnDiagonal(Cell::new(1, 1))]
        );
        assert!(t.with_flavor(Flavor::Qsvt).unwrap().is_valid());
    }

    #[test]
    fn single_box_content() {
        let t = Tableau::from_rows(p(&[1]), Flavor::Svt, 1, vec![sets("1")]).unwrap();
        assert_eq!(t.content_and_degree(), (vec![1], 1));
    }

    #[test]
    fn violations_are_reported() {
        let t =
            Tableau::from_rows(p(&[2, 1]), Flavor::Svt, 3, vec![sets("12 1"), sets("2")]).unwrap();
        let v = t.validate();
        assert!(v.contains(&Violation::Row {
            left: Cell::new(1, 1),
            right: Cell::new(1, 2)
        }));
        assert!(v.contains(&Violation::Column {
            lower: Cell::new(1, 1),
            upper: Cell::new(2, 1)
        }));
        let t = Tableau::from_rows(p(&[1]), Flavor::Svt, 2, vec![sets("3")]).unwrap();
        assert_eq!(
            t.validate(),
            vec![Violation::ValueTooLarge(Cell::new(1, 1))]
        );
    }

    #[test]
    fn shape_mismatch() {
        let err = Tableau::from_rows(p(&[2]), Flavor::Svt, 2, vec![sets("1")]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
        let d = Diagram::new(p(&[2]), true).unwrap();
        assert!(matches!(
            Tableau::new(d, Flavor::Svt, 2, sets("1 1")),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        for t in [example_svt(), example_psvt()] {
            let back = Tableau::parse(&t.to_text(), t.flavor(), t.n()).unwrap();
            assert_eq!(back, t);
        }
        let t = example_psvt();
        assert_eq!(
            t.to_text(),
            "      5\n    34|45'\n  2|2|3'|4'4\n1|1|2'|3'|34'|4"
        );
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<Tableau>(&json).unwrap(), t);
    }

    #[test]
    fn small_enumerations() {
        let all: Vec<_> = enumerate(&p(&[1]), 1, Flavor::Svt).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].boxes(), &[EntrySet::plain(1)]);

        let all: Vec<String> = enumerate(&p(&[1]), 2, Flavor::Svt)
            .unwrap()
            .map(|t| t.to_text())
            .collect();
        assert_eq!(all, vec!["1", "2", "12"]);

        let all: Vec<String> = enumerate(&p(&[2]), 1, Flavor::Psvt)
            .unwrap()
            .map(|t| t.to_text())
            .collect();
        assert_eq!(all, vec!["1|1"]);

        let empty: Vec<_> = enumerate(&Partition::empty(), 3, Flavor::Qsvt)
            .unwrap()
            .collect();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].degree(), 0);

        assert_eq!(enumerate(&p(&[1, 1]), 1, Flavor::Svt).unwrap().count(), 0);
        assert!(matches!(
            enumerate(&p(&[1, 1]), 2, Flavor::Psvt),
            Err(Error::NonStrictShift(_))
        ));
    }

    #[test]
    fn max_degree_needs_tableaux() {
        assert_eq!(
            max_degree_brute(&p(&[2, 1]), 1, Flavor::Psvt),
            Err(Error::EmptyTableauSet {
                shape: "(2,1)".into(),
                n: 1
            })
        );
    }

    /// Independent filter-based enumeration: every filling by nonempty subsets
    /// of the alphabet, kept when `validate` accepts it.
    fn naive(shape: &Partition, n: usize, flavor: Flavor) -> Vec<Tableau> {
        let diagram = Diagram::new(shape.clone(), flavor.is_shifted()).unwrap();
        let alphabet = EntrySet::key_interval(1, 2 * n as u32).bits();
        let subsets: Vec<EntrySet> = (1..=alphabet)
            .filter(|s| s & !alphabet == 0)
            .map(EntrySet)
            .collect();
        let cells = diagram.num_cells();
        let mut out = Vec::new();
        let mut idx = vec![0usize; cells];
        loop {
            let t = Tableau::new(
                diagram.clone(),
                flavor,
                n,
                idx.iter().map(|&i| subsets[i]).collect(),
            )
            .unwrap();
            if t.is_valid() {
                out.push(t);
            }
            let mut k = 0;
            loop {
                if k == cells {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < subsets.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn search_agrees_with_naive_filter() {
        for flavor in [Flavor::Svt, Flavor::Psvt, Flavor::Qsvt] {
            for (shape, n) in [
                (vec![1], 2),
                (vec![2], 2),
                (vec![2, 1], 2),
                (vec![1, 1], 2),
                (vec![3], 1),
                (vec![2, 1], 1),
            ] {
                let shape = Partition::new(shape).unwrap();
                if flavor.is_shifted() && !shape.is_strict() {
                    continue;
                }
                let mut fast: Vec<Tableau> = enumerate(&shape, n, flavor).unwrap().collect();
                let mut slow = naive(&shape, n, flavor);
                assert_eq!(fast.len() as u64, count(&shape, n, flavor).unwrap());
                fast.sort_by_key(|t| t.to_text());
                slow.sort_by_key(|t| t.to_text());
                assert_eq!(fast, slow, "{flavor} {shape} n={n}");
            }
        }
    }

    #[test]
    fn enumeration_invariants() {
        for lambda in Partition::all_in_box(3, 2)
            .into_iter()
            .filter(Partition::is_strict)
        {
            for n in lambda.len().max(1)..=3 {
                let ps: Vec<Tableau> = enumerate(&lambda, n, Flavor::Psvt).unwrap().collect();
                for t in &ps {
                    assert!(t.is_valid());
                    assert!(t.boxes().iter().all(|b| !b.contains(Entry::primed(1))));
                    assert!(t.with_flavor(Flavor::Qsvt).unwrap().is_valid());
                    assert_eq!(t.degree(), t.content().iter().sum::<usize>());
                }
                let again: Vec<Tableau> = enumerate(&lambda, n, Flavor::Psvt).unwrap().collect();
                assert_eq!(ps, again);
                let max = ps.iter().map(Tableau::degree).max().unwrap();
                assert_eq!(max_degree_brute(&lambda, n, Flavor::Psvt).unwrap(), max);
            }
        }
    }

    #[test]
    fn fold_is_deterministic_across_thread_counts() {
        let shape = p(&[3, 1]);
        let s = Search::new(&shape, 3, Flavor::Qsvt).unwrap();
        let run = || {
            s.fold(
                || 0u64,
                |a, b| *a += b.iter().map(|x| x.len() as u64).sum::<u64>(),
                |a, b| a + b,
            )
        };
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(run);
        assert_eq!(one, four);
    }
}
