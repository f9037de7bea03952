//! Degree-monotone rewrites of set-valued tableaux.
//!
//! - *grow*: add boxes to the shape without losing degree,
//! - *squish*: shrink a shifted shape to its largest D-partition subshape
//!   (or an ordinary shape to its largest strict subshape) at equal degree,
//! - *push*: move any tableau on such a shape step by step to the explicit
//!   top-degree tableau, never losing degree.
//!
//! Every public driver records what it did so the case analysis can be
//! audited, and no output is trusted: tests revalidate everything.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grothendieck::{maximal_tableau, maximal_tableau_type_a};
use crate::shapes::{
    largest_d_subpartition, largest_strict_subpartition, Cell, DPartition, Diagram, Partition,
    StrictPartition,
};
use crate::tableaux::{Entry, EntrySet, Flavor, Tableau};

/// How a ribbon (or column) was shaped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RibbonKind {
    /// Shifted growth at a box off the main diagonal.
    OffDiagonal,
    /// Shifted growth at a box on the main diagonal.
    Diagonal,
    /// Shifted squish whose ribbon ends with a box left of the last deleted box.
    EndsLeft,
    /// Shifted squish whose last deleted box sits on the main diagonal.
    EndsUp,
    /// Ordinary growth, rewriting part of the column under the new box.
    Column,
    /// Ordinary squish, merging one corner box into the box below it.
    Corner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxChange {
    pub cell: Cell,
    pub before: EntrySet,
    pub after: EntrySet,
}

/// Record of one grow or squish step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RibbonTrace {
    pub kind: RibbonKind,
    pub added: Option<Cell>,
    pub removed: Vec<Cell>,
    /// Changed boxes, in the order they were rewritten.
    pub changes: Vec<BoxChange>,
    /// Filling after each elementary change; intermediate fillings may break
    /// the tableau rules at the single frontier the algorithm is still fixing.
    pub stages: Vec<Tableau>,
}

impl RibbonTrace {
    fn new(kind: RibbonKind) -> Self {
        RibbonTrace {
            kind,
            added: None,
            removed: Vec::new(),
            changes: Vec::new(),
            stages: Vec::new(),
        }
    }

    /// Cells touched by the step, excluding deleted ones.
    pub fn ribbon(&self) -> Vec<Cell> {
        self.changes.iter().map(|c| c.cell).collect()
    }
}

/// Whether the cells form an edge-connected set without a 2x2 block and
/// with at most two cells per row and per column.
pub fn is_short_ribbon(cells: &[Cell]) -> bool {
    if cells.is_empty() {
        return true;
    }
    let set: std::collections::BTreeSet<Cell> = cells.iter().copied().collect();
    let mut per_row: BTreeMap<usize, usize> = BTreeMap::new();
    let mut per_col: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &set {
        *per_row.entry(c.row).or_default() += 1;
        *per_col.entry(c.col).or_default() += 1;
        let block = [
            Cell::new(c.row + 1, c.col),
            Cell::new(c.row, c.col + 1),
            Cell::new(c.row + 1, c.col + 1),
        ];
        if block.iter().all(|b| set.contains(b)) {
            return false;
        }
    }
    if per_row.values().chain(per_col.values()).any(|&k| k > 2) {
        return false;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![*set.iter().next().unwrap()];
    while let Some(c) = stack.pop() {
        if !seen.insert(c) {
            continue;
        }
        for d in set.iter() {
            if c.row.abs_diff(d.row) + c.col.abs_diff(d.col) == 1 && !seen.contains(d) {
                stack.push(*d);
            }
        }
    }
    seen.len() == set.len()
}

fn require(t: &Tableau, flavor: Flavor) -> Result<()> {
    if t.flavor() != flavor {
        return Err(Error::ShapeMismatch(format!(
            "expected a {flavor} tableau, got {}",
            t.flavor()
        )));
    }
    let v = t.validate();
    if !v.is_empty() {
        return Err(Error::InvalidTableau(format!("{:?}", v)));
    }
    Ok(())
}

fn rebuild(
    shape: Vec<usize>,
    flavor: Flavor,
    n: usize,
    map: &BTreeMap<Cell, EntrySet>,
) -> Result<Tableau> {
    let diagram = Diagram::new(Partition::new(shape)?, flavor.is_shifted())?;
    Tableau::from_map(diagram, flavor, n, map)
}

fn row_lengths(shape: &Partition) -> Vec<usize> {
    shape.parts().to_vec()
}

fn trimmed(mut rows: Vec<usize>) -> Vec<usize> {
    while rows.last() == Some(&0) {
        rows.pop();
    }
    rows
}

/// The single cell of `bigger` missing from `smaller`, if they differ by
/// exactly one cell in the given geometry.
fn added_cell(smaller: &Partition, bigger: &Partition, shifted: bool) -> Result<Cell> {
    if !bigger.contains(smaller) || bigger.size() != smaller.size() + 1 {
        return Err(Error::ShapeMismatch(format!(
            "{bigger} is not {smaller} plus one box"
        )));
    }
    let row = (1..=bigger.len())
        .find(|&r| bigger.part(r) != smaller.part(r))
        .unwrap();
    let start = if shifted { row } else { 1 };
    Ok(Cell::new(row, start + bigger.part(row) - 1))
}

/// Adds one box to a P-shifted tableau, filling it with `n` and rewriting the
/// ribbon that runs down and left from it so the result stays valid.
///
/// The ribbon alternates steps down and left from the new box. Its first box
/// joins when it contains `n`; later boxes join only while the previous one
/// holds a single entry and the box contains the next expected letter
/// (primed `n - j/2 + 1` on even steps off the diagonal, unprimed on the
/// diagonal; unprimed `n - (j-1)/2` on odd steps). Each joined box then loses
/// its largest entry if it has several, and otherwise `k'` becomes `k - 1`
/// and `k` becomes `k'` (on the diagonal: even steps subtract one, odd steps
/// prime).
pub fn shifted_grow_step(t: &Tableau, target: &StrictPartition) -> Result<(Tableau, RibbonTrace)> {
    require(t, Flavor::Psvt)?;
    let n = t.n();
    if n < target.len() {
        return Err(Error::TooFewVariables {
            needed: target.len(),
            given: n,
        });
    }
    let b0 = added_cell(t.shape(), target, true)?;
    let diagram = Diagram::new(target.as_partition().clone(), true)?;
    let diagonal = diagram.is_diagonal(b0);
    let mut trace = RibbonTrace::new(if diagonal {
        RibbonKind::Diagonal
    } else {
        RibbonKind::OffDiagonal
    });
    trace.added = Some(b0);

    let mut map = t.to_map();
    let top = EntrySet::plain(n);
    map.insert(b0, top);
    trace.changes.push(BoxChange {
        cell: b0,
        before: EntrySet::EMPTY,
        after: top,
    });
    let snapshot =
        |map: &BTreeMap<Cell, EntrySet>| Tableau::from_map(diagram.clone(), Flavor::Psvt, n, map);
    trace.stages.push(snapshot(&map)?);

    // Truncate the ribbon.
    let mut members: Vec<(usize, Cell)> = Vec::new();
    let mut prev = b0;
    for j in 1.. {
        let next = if j % 2 == 1 {
            diagram.down(prev)
        } else {
            diagram.left(prev)
        };
        let Some(cell) = next else { break };
        let contents = map[&cell];
        let wanted = if j == 1 {
            Some(Entry::plain(n))
        } else {
            let (_, last) = *members.last().unwrap();
            if map[&last].len() != 1 {
                None
            } else if j % 2 == 0 {
                let v = (n + 1).checked_sub(j / 2).filter(|&v| v >= 1);
                v.map(|v| {
                    if diagonal {
                        Entry::plain(v)
                    } else {
                        Entry::primed(v)
                    }
                })
            } else {
                n.checked_sub((j - 1) / 2)
                    .filter(|&v| v >= 1)
                    .map(Entry::plain)
            }
        };
        match wanted {
            Some(e) if contents.contains(e) => members.push((j, cell)),
            _ => break,
        }
        prev = cell;
    }

    for (j, cell) in members {
        let before = map[&cell];
        let after = if before.len() > 1 {
            let mut s = before;
            s.remove(before.max().unwrap());
            s
        } else {
            let e = before.max().unwrap();
            let rewritten = if diagonal {
                if j % 2 == 0 {
                    Entry {
                        value: e.value - 1,
                        primed: e.primed,
                    }
                } else {
                    Entry::primed(e.value)
                }
            } else if e.primed {
                Entry::plain(e.value - 1)
            } else {
                Entry::primed(e.value)
            };
            if rewritten.value == 0 {
                return Err(Error::Internal(format!(
                    "ribbon rewrite at {cell} left the alphabet"
                )));
            }
            EntrySet::single(rewritten)
        };
        map.insert(cell, after);
        trace.changes.push(BoxChange {
            cell,
            before,
            after,
        });
        trace.stages.push(snapshot(&map)?);
    }
    let out = trace.stages.last().unwrap().clone();
    Ok((out, trace))
}

/// Intermediate shapes from `from` to `to`, one box at a time: row 1 is
/// completed first, then row 2, and so on. Every shape along the way is a
/// partition, and strict when both ends are.
pub fn growth_chain(from: &Partition, to: &Partition) -> Result<Vec<Partition>> {
    if !to.contains(from) {
        return Err(Error::ShapeMismatch(format!(
            "{from} is not contained in {to}"
        )));
    }
    let mut rows = row_lengths(from);
    rows.resize(to.len(), 0);
    let mut chain = Vec::new();
    for r in 0..to.len() {
        while rows[r] < to.part(r + 1) {
            rows[r] += 1;
            chain.push(Partition::new(trimmed(rows.clone()))?);
        }
    }
    Ok(chain)
}

/// Grows a P-shifted tableau to any larger strict shape, one box at a time.
pub fn shifted_grow(t: &Tableau, target: &StrictPartition) -> Result<(Tableau, Vec<RibbonTrace>)> {
    require(t, Flavor::Psvt)?;
    if t.n() < target.len() {
        return Err(Error::TooFewVariables {
            needed: target.len(),
            given: t.n(),
        });
    }
    let mut cur = t.clone();
    let mut traces = Vec::new();
    for shape in growth_chain(t.shape(), target)? {
        let (next, trace) = shifted_grow_step(&cur, &StrictPartition::strict(shape)?)?;
        cur = next;
        traces.push(trace);
    }
    Ok((cur, traces))
}

/// One ribbon deletion on a P-shifted tableau whose shape is not a
/// D-partition; `None` when it already is one.
///
/// With `k` the highest row whose length is one more than the row above,
/// start from the rightmost box of row `k` and alternately step up (the box
/// to delete) and left (the box that absorbs shared primed letters). Each
/// deleted box pours its contents into the box below it. If the ribbon ends
/// on a diagonal box that received primed letters, those letters are
/// unprimed, since the diagonal may not hold primes.
pub fn shifted_squish_step(t: &Tableau) -> Result<Option<(Tableau, RibbonTrace)>> {
    require(t, Flavor::Psvt)?;
    let shape = t.shape().clone();
    if shape.is_d_partition() {
        return Ok(None);
    }
    let n = t.n();
    let k = (1..shape.len())
        .rev()
        .find(|&k| shape.part(k) == shape.part(k + 1) + 1)
        .unwrap();
    let diagram = t.diagram().clone();
    let mut map = t.to_map();
    let mut rows = row_lengths(&shape);
    let mut trace = RibbonTrace::new(RibbonKind::EndsUp);
    let mut r_prev = diagram.rightmost(k).unwrap();
    let mut last_r: Option<Cell> = None;
    while let Some(u) = diagram.up(r_prev) {
        let tu = map.remove(&u).unwrap();
        rows[u.row - 1] -= 1;
        trace.removed.push(u);
        let tr = map[&r_prev];
        let shared = tu.intersection(tr);
        let merged = tr.union(tu);
        map.insert(r_prev, merged);
        trace.changes.push(BoxChange {
            cell: r_prev,
            before: tr,
            after: merged,
        });
        match diagram.left(u) {
            Some(r) => {
                let before = map[&r];
                let after = before.union(shared);
                map.insert(r, after);
                if after != before {
                    trace.changes.push(BoxChange {
                        cell: r,
                        before,
                        after,
                    });
                }
                last_r = Some(r);
                r_prev = r;
            }
            None => {
                if !shared.is_empty() {
                    return Err(Error::Internal(format!(
                        "letters {shared} have nowhere to go at {u}"
                    )));
                }
                last_r = None;
                trace
                    .stages
                    .push(rebuild(trimmed(rows.clone()), Flavor::Psvt, n, &map)?);
                break;
            }
        }
        trace
            .stages
            .push(rebuild(trimmed(rows.clone()), Flavor::Psvt, n, &map)?);
    }
    if let Some(r) = last_r {
        trace.kind = RibbonKind::EndsLeft;
        if diagram.is_diagonal(r) && map[&r].has_primes() {
            let before = map[&r];
            let after = before.unprimed();
            map.insert(r, after);
            trace.changes.push(BoxChange {
                cell: r,
                before,
                after,
            });
            trace
                .stages
                .push(rebuild(trimmed(rows.clone()), Flavor::Psvt, n, &map)?);
        }
    }
    let out = trace.stages.last().unwrap().clone();
    Ok(Some((out, trace)))
}

/// Repeats [`shifted_squish_step`] until the shape is a D-partition, which is
/// then the largest D-partition inside the original shape.
pub fn shifted_squish(t: &Tableau) -> Result<(Tableau, Vec<RibbonTrace>)> {
    let mut cur = t.clone();
    let mut traces = Vec::new();
    while let Some((next, trace)) = shifted_squish_step(&cur)? {
        cur = next;
        traces.push(trace);
    }
    require(&cur, Flavor::Psvt)?;
    Ok((cur, traces))
}

/// Which rule a push step used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PushCase {
    /// Reset the box to its row index and hand its contents to the right.
    ShiftRight,
    /// Fill the rightmost box of the row with the full interval.
    FillRightmost,
    /// Fill a lone diagonal box with the unprimed interval.
    FillDiagonal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PushStep {
    pub case: PushCase,
    pub cell: Cell,
    pub tableau: Tableau,
}

fn push_step(t: &Tableau, target: &Tableau) -> Option<PushStep> {
    let d = t.diagram();
    let (bad, _) = d
        .cells()
        .zip(t.boxes().iter().zip(target.boxes()))
        .find(|(_, (a, b))| a != b)?;
    let i = bad.row;
    let mut map = t.to_map();
    let case = if Some(bad) != d.rightmost(i) {
        let right = d.right(bad).unwrap();
        map.insert(right, map[&bad].union(map[&right]));
        map.insert(bad, EntrySet::plain(i));
        PushCase::ShiftRight
    } else {
        map.insert(bad, target.get(bad).unwrap());
        if d.is_shifted() && d.is_diagonal(bad) {
            PushCase::FillDiagonal
        } else {
            PushCase::FillRightmost
        }
    };
    let tableau = Tableau::from_map(d.clone(), t.flavor(), t.n(), &map).ok()?;
    Some(PushStep {
        case,
        cell: bad,
        tableau,
    })
}

fn push_all(t: &Tableau, target: &Tableau) -> Result<Vec<PushStep>> {
    let limit = t.diagram().num_cells() * (2 * t.n() + 2) + 1;
    let mut steps: Vec<PushStep> = Vec::new();
    let mut cur = t.clone();
    while let Some(step) = push_step(&cur, target) {
        if steps.len() > limit {
            return Err(Error::Internal("push did not terminate".into()));
        }
        cur = step.tableau.clone();
        steps.push(step);
    }
    Ok(steps)
}

/// Moves a P-shifted tableau on a D-partition to the top-degree tableau of
/// that shape, fixing the lowest, then leftmost, box that differs from it.
/// Returns the tableaux after each step; empty when already there.
pub fn shifted_push(t: &Tableau) -> Result<Vec<PushStep>> {
    require(t, Flavor::Psvt)?;
    let shape = DPartition::new(t.shape().parts().to_vec())
        .map_err(|_| Error::InvalidShape(format!("{} is not a D-partition", t.shape())))?;
    if shape.is_empty() {
        return Ok(Vec::new());
    }
    push_all(t, &maximal_tableau(&shape, t.n())?)
}

/// Adds one box to an ordinary set-valued tableau, filling it with `n` and
/// lowering part of the column below it.
///
/// The column below the new box joins from the top while the box one step
/// down `i` contains `n - i + 1` and its upper neighbor held a single entry
/// (the first box only needs to contain `n`). Joined boxes drop their
/// largest entry if they have several, and otherwise decrease by one.
pub fn type_a_grow_step(t: &Tableau, target: &Partition) -> Result<(Tableau, RibbonTrace)> {
    require(t, Flavor::Svt)?;
    let n = t.n();
    if n < target.len() {
        return Err(Error::TooFewVariables {
            needed: target.len(),
            given: n,
        });
    }
    let b0 = added_cell(t.shape(), target, false)?;
    let diagram = Diagram::unshifted(target.clone());
    let mut trace = RibbonTrace::new(RibbonKind::Column);
    trace.added = Some(b0);
    let mut map = t.to_map();
    map.insert(b0, EntrySet::plain(n));
    trace.changes.push(BoxChange {
        cell: b0,
        before: EntrySet::EMPTY,
        after: EntrySet::plain(n),
    });
    let snapshot =
        |map: &BTreeMap<Cell, EntrySet>| Tableau::from_map(diagram.clone(), Flavor::Svt, n, map);
    trace.stages.push(snapshot(&map)?);

    let mut column = Vec::new();
    let mut prev: Option<Cell> = None;
    for i in 1..b0.row {
        let cell = Cell::new(b0.row - i, b0.col);
        if let Some(p) = prev {
            if map[&p].len() != 1 {
                break;
            }
        }
        match (n + 1).checked_sub(i) {
            Some(v) if v >= 1 && map[&cell].contains(Entry::plain(v)) => column.push(cell),
            _ => break,
        }
        prev = Some(cell);
    }
    for cell in column {
        let before = map[&cell];
        let after = if before.len() > 1 {
            let mut s = before;
            s.remove(before.max().unwrap());
            s
        } else {
            let v = before.max().unwrap().value;
            if v == 1 {
                return Err(Error::Internal(format!(
                    "column rewrite at {cell} left the alphabet"
                )));
            }
            EntrySet::plain(v - 1)
        };
        map.insert(cell, after);
        trace.changes.push(BoxChange {
            cell,
            before,
            after,
        });
        trace.stages.push(snapshot(&map)?);
    }
    let out = trace.stages.last().unwrap().clone();
    Ok((out, trace))
}

/// Grows an ordinary set-valued tableau to any larger shape, one box at a
/// time along [`growth_chain`].
pub fn type_a_grow(t: &Tableau, target: &Partition) -> Result<(Tableau, Vec<RibbonTrace>)> {
    require(t, Flavor::Svt)?;
    if t.n() < target.len() {
        return Err(Error::TooFewVariables {
            needed: target.len(),
            given: t.n(),
        });
    }
    let mut cur = t.clone();
    let mut traces = Vec::new();
    for shape in growth_chain(t.shape(), target)? {
        let (next, trace) = type_a_grow_step(&cur, &shape)?;
        cur = next;
        traces.push(trace);
    }
    Ok((cur, traces))
}

/// Deletes the corner above the rightmost box of the highest row that has
/// the same length as the row above it, merging its contents downward.
/// `None` when the shape is already strict.
pub fn type_a_squish_step(t: &Tableau) -> Result<Option<(Tableau, RibbonTrace)>> {
    require(t, Flavor::Svt)?;
    let shape = t.shape().clone();
    let Some(k) = (1..shape.len())
        .rev()
        .find(|&k| shape.part(k) == shape.part(k + 1))
    else {
        return Ok(None);
    };
    let d = t.diagram();
    let r = d.rightmost(k).unwrap();
    let u = d.up(r).unwrap();
    let mut map = t.to_map();
    let tu = map.remove(&u).unwrap();
    let before = map[&r];
    let after = before.union(tu);
    map.insert(r, after);
    let mut rows = row_lengths(&shape);
    rows[k] -= 1;
    let out = rebuild(trimmed(rows), Flavor::Svt, t.n(), &map)?;
    let mut trace = RibbonTrace::new(RibbonKind::Corner);
    trace.removed.push(u);
    trace.changes.push(BoxChange {
        cell: r,
        before,
        after,
    });
    trace.stages.push(out.clone());
    Ok(Some((out, trace)))
}

/// Repeats [`type_a_squish_step`] until the shape is strict.
pub fn type_a_squish(t: &Tableau) -> Result<(Tableau, Vec<RibbonTrace>)> {
    let mut cur = t.clone();
    let mut traces = Vec::new();
    while let Some((next, trace)) = type_a_squish_step(&cur)? {
        cur = next;
        traces.push(trace);
    }
    Ok((cur, traces))
}

/// Ordinary analogue of [`shifted_push`] on a strict shape.
pub fn type_a_push(t: &Tableau) -> Result<Vec<PushStep>> {
    require(t, Flavor::Svt)?;
    let shape = StrictPartition::strict(t.shape().clone())?;
    if shape.is_empty() {
        return Ok(Vec::new());
    }
    push_all(t, &maximal_tableau_type_a(&shape, t.n())?)
}

/// Shape a full squish must land on.
pub fn squish_target(shape: &Partition, shifted: bool) -> Partition {
    if shifted {
        largest_d_subpartition(shape).into_partition()
    } else {
        largest_strict_subpartition(shape).into_partition()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::enumerate;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sp(parts: &[usize]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn psvt(text: &str, n: usize) -> Tableau {
        Tableau::parse(text, Flavor::Psvt, n).unwrap()
    }

    fn svt(text: &str, n: usize) -> Tableau {
        Tableau::parse(text, Flavor::Svt, n).unwrap()
    }

    #[test]
    fn grow_from_empty_and_onto_diagonal() {
        let empty = enumerate(&Partition::empty(), 1, Flavor::Psvt)
            .unwrap()
            .next()
            .unwrap();
        let (t, traces) = shifted_grow(&empty, &sp(&[1])).unwrap();
        assert_eq!(t.to_text(), "1");
        assert_eq!(traces[0].kind, RibbonKind::Diagonal);

        let (t, trace) = shifted_grow_step(&psvt("1|1", 2), &sp(&[2, 1])).unwrap();
        assert_eq!(t.to_text(), "  2\n1|1");
        assert_eq!(t.degree(), 3);
        assert_eq!(trace.changes.len(), 1);
    }

    #[test]
    fn grow_rewrites_a_ribbon() {
        // New box (2,3) gets 3; (1,3) holds 3 and turns into 3'.
        let t = psvt("  3\n1|2|3", 3);
        let (out, trace) = shifted_grow_step(&t, &sp(&[3, 2])).unwrap();
        assert_eq!(out.to_text(), "  3|3\n1|2|3'");
        assert_eq!(trace.kind, RibbonKind::OffDiagonal);
        assert!(out.is_valid());
    }

    #[test]
    fn grow_rejects_bad_targets() {
        let t = psvt("1|1", 2);
        assert!(matches!(
            shifted_grow_step(&t, &sp(&[4])),
            Err(Error::ShapeMismatch(_))
        ));
        assert_eq!(
            shifted_grow(&psvt("1|1", 1), &sp(&[2, 1])).unwrap_err(),
            Error::TooFewVariables {
                needed: 2,
                given: 1
            }
        );
    }

    #[test]
    fn squish_small_cases() {
        let (out, traces) = shifted_squish(&psvt("  2\n1|1", 2)).unwrap();
        assert_eq!(out.to_text(), "1|12");
        assert_eq!(out.degree(), 3);
        assert_eq!(traces[0].kind, RibbonKind::EndsUp);

        let m = maximal_tableau(&DPartition::new(vec![5, 3, 1]).unwrap(), 4).unwrap();
        let (out, traces) = shifted_squish(&m).unwrap();
        assert_eq!(out, m);
        assert!(traces.is_empty());
    }

    #[test]
    fn push_small_cases() {
        let steps = shifted_push(&psvt("1|2", 2)).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].case, PushCase::FillRightmost);
        assert_eq!(steps[0].tableau.to_text(), "1|12'2");
        assert_eq!(steps[0].tableau.degree(), 4);

        let m = maximal_tableau(&DPartition::new(vec![3, 1]).unwrap(), 3).unwrap();
        assert!(shifted_push(&m).unwrap().is_empty());
        assert!(matches!(
            shifted_push(&psvt("  2\n1|1", 2)),
            Err(Error::InvalidShape(_))
        ));
    }

    #[test]
    fn type_a_examples() {
        let empty = enumerate(&Partition::empty(), 3, Flavor::Svt)
            .unwrap()
            .next()
            .unwrap();
        assert_eq!(type_a_grow(&empty, &p(&[1])).unwrap().0.to_text(), "3");

        let (out, _) = type_a_grow_step(&svt("2", 2), &p(&[1, 1])).unwrap();
        assert_eq!(out.to_text(), "2\n1");
        let (out, _) = type_a_grow_step(&svt("12", 2), &p(&[1, 1])).unwrap();
        assert_eq!(out.to_text(), "2\n1");
        assert_eq!(out.degree(), 2);

        let (out, _) = type_a_squish(&svt("2|2\n1|1", 2)).unwrap();
        assert_eq!(out.to_text(), "2\n1|12");
        let (out, traces) = type_a_squish(&svt("3\n2\n1", 3)).unwrap();
        assert_eq!(out.to_text(), "123");
        assert_eq!(traces.len(), 2);
        let strict = svt("2\n1|1", 2);
        assert_eq!(type_a_squish(&strict).unwrap().0, strict);

        let steps = type_a_push(&svt("2", 3)).unwrap();
        assert_eq!(steps.last().unwrap().tableau.to_text(), "123");
        let n = maximal_tableau_type_a(&sp(&[2, 1]), 2).unwrap();
        assert!(type_a_push(&n).unwrap().is_empty());
    }

    #[test]
    fn short_ribbon_shapes() {
        let c = |r, c| Cell::new(r, c);
        assert!(is_short_ribbon(&[c(2, 3), c(1, 3), c(1, 2)]));
        assert!(!is_short_ribbon(&[c(1, 1), c(1, 2), c(2, 1), c(2, 2)]));
        assert!(!is_short_ribbon(&[c(1, 1), c(1, 2), c(1, 3)]));
        assert!(!is_short_ribbon(&[c(1, 1), c(3, 1)]));
    }

    #[test]
    fn growth_chain_stays_strict() {
        let chain = growth_chain(&p(&[2]), &p(&[4, 3, 1])).unwrap();
        let texts: Vec<String> = chain.iter().map(|s| s.to_string()).collect();
        assert_eq!(texts, ["(3)", "(4)", "(4,1)", "(4,2)", "(4,3)", "(4,3,1)"]);
    }

    #[test]
    fn exhaustive_small_sweep() {
        for lambda in Partition::all_in_box(4, 3)
            .into_iter()
            .filter(|l| l.is_strict() && !l.is_empty())
        {
            for n in lambda.len()..=3 {
                let target = squish_target(&lambda, true);
                let m =
                    maximal_tableau(&DPartition::new(target.parts().to_vec()).unwrap(), n).unwrap();
                for t in enumerate(&lambda, n, Flavor::Psvt).unwrap() {
                    let (s, traces) = shifted_squish(&t).unwrap();
                    assert_eq!(s.shape(), &target);
                    assert_eq!(s.degree(), t.degree());
                    assert!(traces
                        .iter()
                        .all(|tr| is_short_ribbon(&[tr.removed.clone(), tr.ribbon()].concat())));
                    let steps = shifted_push(&s).unwrap();
                    let last = steps.last().map_or(&s, |st| &st.tableau);
                    assert_eq!(last, &m);
                    let mut d = s.degree();
                    for st in &steps {
                        assert!(st.tableau.is_valid());
                        assert!(st.tableau.degree() >= d);
                        d = st.tableau.degree();
                    }
                }
            }
        }
    }
}
