//! Exact minimum cover of a coverage matrix.
//!
//! The objective is lexicographic: fewest rows, then fewest literals, then
//! the smallest ascending list of row indices. Every node of the search
//! applies reductions that keep the optimum under this full objective:
//!
//! - a column with one candidate row forces that row;
//! - a column whose candidate rows include another column's candidates is
//!   dropped;
//! - a row whose columns are contained in another row's columns is dropped
//!   when the other row is cheaper by `(literals, index)`;
//! - independent components are solved separately.
//!
//! What remains is branched on the column with the fewest candidates, with
//! earlier sibling rows excluded from later branches so every row set is
//! visited once.

use std::cmp::Ordering;
use std::ops::{Add, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut s = BitSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn and_not(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// `(rows, literals)`, compared lexicographically. Signed so budgets can go
/// negative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
struct Cost {
    rows: i64,
    lits: i64,
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, o: Cost) -> Cost {
        Cost {
            rows: self.rows + o.rows,
            lits: self.lits + o.lits,
        }
    }
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, o: Cost) -> Cost {
        Cost {
            rows: self.rows - o.rows,
            lits: self.lits - o.lits,
        }
    }
}

#[derive(Clone, Debug)]
struct Solution {
    /// Ascending.
    rows: Vec<usize>,
    cost: Cost,
}

impl Solution {
    fn empty() -> Self {
        Solution {
            rows: Vec::new(),
            cost: Cost::default(),
        }
    }

    fn merge(mut self, other: Solution) -> Solution {
        self.rows.extend(other.rows);
        self.rows.sort_unstable();
        self.cost = self.cost + other.cost;
        self
    }

    fn cmp_key(&self, other: &Solution) -> Ordering {
        self.cost
            .cmp(&other.cost)
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

struct Chart {
    row_cols: Vec<BitSet>,
    col_rows: Vec<BitSet>,
    lits: Vec<usize>,
}

impl Chart {
    fn row_cost(&self, r: usize) -> Cost {
        Cost {
            rows: 1,
            lits: self.lits[r] as i64,
        }
    }

    /// True when row `a` is preferred to row `b` on a tie in coverage.
    fn row_before(&self, a: usize, b: usize) -> bool {
        (self.lits[a], a) < (self.lits[b], b)
    }
}

/// Returns the optimal set of row indices covering all `ncols` columns.
///
/// # Panics
///
/// If some column is covered by no row.
pub(crate) fn min_cover(marks: &[Vec<bool>], ncols: usize, lits: &[usize]) -> Vec<usize> {
    let nrows = marks.len();
    let mut row_cols = vec![BitSet::empty(ncols); nrows];
    let mut col_rows = vec![BitSet::empty(nrows); ncols];
    for (r, row) in marks.iter().enumerate() {
        for (c, _) in row.iter().enumerate().filter(|(_, &m)| m) {
            row_cols[r].insert(c);
            col_rows[c].insert(r);
        }
    }
    let chart = Chart {
        row_cols,
        col_rows,
        lits: lits.to_vec(),
    };
    solve(&chart, BitSet::full(nrows), BitSet::full(ncols), None)
        .expect("every column has a covering row")
        .rows
}

/// Applies forced rows and dominance until nothing changes. Returns the
/// forced rows, or `None` if some column cannot be covered.
fn reduce(chart: &Chart, rows: &mut BitSet, cols: &mut BitSet) -> Option<Solution> {
    let mut forced = Solution::empty();
    loop {
        for r in rows.clone().iter() {
            if !chart.row_cols[r].intersects(cols) {
                rows.remove(r);
            }
        }

        let mut forced_any = false;
        for c in cols.clone().iter() {
            // An earlier forced row may already cover it.
            if !cols.contains(c) {
                continue;
            }
            let cand = chart.col_rows[c].and(rows);
            match cand.count() {
                0 => return None,
                1 => {
                    let r = cand.first().expect("one candidate");
                    *cols = cols.and_not(&chart.row_cols[r]);
                    rows.remove(r);
                    forced.rows.push(r);
                    forced.cost = forced.cost + chart.row_cost(r);
                    forced_any = true;
                }
                _ => {}
            }
        }
        if forced_any {
            continue;
        }

        let mut changed = false;

        let active_cols: Vec<usize> = cols.iter().collect();
        let cand: Vec<BitSet> = active_cols
            .iter()
            .map(|&c| chart.col_rows[c].and(rows))
            .collect();
        let mut alive = vec![true; active_cols.len()];
        for j in 0..active_cols.len() {
            let dominated = (0..active_cols.len()).any(|i| {
                i != j && alive[i] && cand[i].is_subset(&cand[j]) && (i < j || cand[i] != cand[j])
            });
            if dominated {
                alive[j] = false;
                cols.remove(active_cols[j]);
                changed = true;
            }
        }

        let active_rows: Vec<usize> = rows.iter().collect();
        let covers: Vec<BitSet> = active_rows
            .iter()
            .map(|&r| chart.row_cols[r].and(cols))
            .collect();
        let mut alive = vec![true; active_rows.len()];
        for j in 0..active_rows.len() {
            let dominated = (0..active_rows.len()).any(|i| {
                i != j
                    && alive[i]
                    && covers[j].is_subset(&covers[i])
                    && chart.row_before(active_rows[i], active_rows[j])
            });
            if dominated {
                alive[j] = false;
                rows.remove(active_rows[j]);
                changed = true;
            }
        }

        if !changed {
            forced.rows.sort_unstable();
            return Some(forced);
        }
    }
}

/// Lower bound from columns whose candidate rows are pairwise disjoint.
fn lower_bound(chart: &Chart, rows: &BitSet, cols: &BitSet) -> Cost {
    let mut cands: Vec<(usize, BitSet)> = cols
        .iter()
        .map(|c| {
            let cand = chart.col_rows[c].and(rows);
            (cand.count(), cand)
        })
        .collect();
    cands.sort_by_key(|(k, _)| *k);
    let mut used = BitSet::empty(chart.lits.len());
    let mut lb = Cost::default();
    for (_, cand) in cands {
        if cand.intersects(&used) {
            continue;
        }
        let cheapest = cand.iter().map(|r| chart.lits[r]).min().unwrap_or(0);
        lb = lb
            + Cost {
                rows: 1,
                lits: cheapest as i64,
            };
        used = BitSet {
            words: used
                .words
                .iter()
                .zip(&cand.words)
                .map(|(a, b)| a | b)
                .collect(),
        };
    }
    lb
}

/// Connected components of the active submatrix, as (rows, cols) pairs.
fn components(chart: &Chart, rows: &BitSet, cols: &BitSet) -> Vec<(BitSet, BitSet)> {
    let mut out = Vec::new();
    let mut left = cols.clone();
    while let Some(seed) = left.first() {
        let mut comp_cols = BitSet::empty(chart.col_rows.len());
        let mut comp_rows = BitSet::empty(chart.lits.len());
        let mut stack = vec![seed];
        left.remove(seed);
        comp_cols.insert(seed);
        while let Some(c) = stack.pop() {
            for r in chart.col_rows[c].and(rows).iter() {
                if comp_rows.contains(r) {
                    continue;
                }
                comp_rows.insert(r);
                for c2 in chart.row_cols[r].and(&left).iter() {
                    left.remove(c2);
                    comp_cols.insert(c2);
                    stack.push(c2);
                }
            }
        }
        out.push((comp_rows, comp_cols));
    }
    out
}

/// Best cover of `cols` using `rows` whose cost does not exceed `limit`.
fn solve(
    chart: &Chart,
    mut rows: BitSet,
    mut cols: BitSet,
    limit: Option<Cost>,
) -> Option<Solution> {
    let forced = reduce(chart, &mut rows, &mut cols)?;
    let limit = match limit {
        Some(l) if forced.cost > l => return None,
        Some(l) => Some(l - forced.cost),
        None => None,
    };
    if cols.is_empty() {
        return Some(forced);
    }

    let comps = components(chart, &rows, &cols);
    if comps.len() > 1 {
        let bounds: Vec<Cost> = comps
            .iter()
            .map(|(r, c)| lower_bound(chart, r, c))
            .collect();
        let total = bounds.iter().fold(Cost::default(), |a, &b| a + b);
        if limit.is_some_and(|l| total > l) {
            return None;
        }
        let mut acc = forced;
        for ((comp_rows, comp_cols), lb) in comps.into_iter().zip(&bounds) {
            let comp_limit = limit.map(|l| l - (total - *lb));
            acc = acc.merge(solve(chart, comp_rows, comp_cols, comp_limit)?);
        }
        return Some(acc);
    }

    if limit.is_some_and(|l| lower_bound(chart, &rows, &cols) > l) {
        return None;
    }
    let branch_col = cols
        .iter()
        .min_by_key(|&c| (chart.col_rows[c].and(&rows).count(), c))
        .expect("nonempty");
    let mut best: Option<Solution> = None;
    let mut budget = limit;
    let mut avail = rows.clone();
    for r in chart.col_rows[branch_col].and(&rows).iter() {
        avail.remove(r);
        let sub_budget = budget.map(|b| b - chart.row_cost(r));
        if sub_budget.is_some_and(|b| b < Cost::default()) {
            continue;
        }
        let sub_cols = cols.and_not(&chart.row_cols[r]);
        let Some(sub) = solve(chart, avail.clone(), sub_cols, sub_budget) else {
            continue;
        };
        let cand = sub.merge(Solution {
            rows: vec![r],
            cost: chart.row_cost(r),
        });
        if best
            .as_ref()
            .is_none_or(|b| cand.cmp_key(b) == Ordering::Less)
        {
            budget = Some(cand.cost);
            best = Some(cand);
        }
    }
    best.map(|b| forced.merge(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Full-objective optimum by enumerating every row subset.
    fn brute_force(marks: &[Vec<bool>], ncols: usize, lits: &[usize]) -> Vec<usize> {
        let nrows = marks.len();
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for mask in 0u32..1 << nrows {
            let rows: Vec<usize> = (0..nrows).filter(|r| mask >> r & 1 == 1).collect();
            let covered = (0..ncols).all(|c| rows.iter().any(|&r| marks[r][c]));
            if !covered {
                continue;
            }
            let key = (
                rows.len(),
                rows.iter().map(|&r| lits[r]).sum::<usize>(),
                rows,
            );
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.expect("coverable").2
    }

    fn chart() -> impl Strategy<Value = (Vec<Vec<bool>>, usize, Vec<usize>)> {
        (1usize..=10, 1usize..=9).prop_flat_map(|(nrows, ncols)| {
            (
                prop::collection::vec(
                    prop::collection::vec(prop::bool::weighted(0.3), ncols),
                    nrows,
                ),
                Just(ncols),
                prop::collection::vec(1usize..=3, nrows),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn matches_brute_force((mut marks, ncols, lits) in chart()) {
            // Make every column coverable.
            for c in 0..ncols {
                if !marks.iter().any(|row| row[c]) {
                    let r = c % marks.len();
                    marks[r][c] = true;
                }
            }
            prop_assert_eq!(min_cover(&marks, ncols, &lits), brute_force(&marks, ncols, &lits));
        }
    }

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::empty(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(a.count(), 3);
        let full = BitSet::full(130);
        assert!(a.is_subset(&full));
        assert_eq!(full.and_not(&a).count(), 127);
        a.remove(64);
        assert_eq!(a.first(), Some(0));
    }
}
