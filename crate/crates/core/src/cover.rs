//! Prime implicant chart, essential extraction and exact minimum cover.

use std::fmt;

use crate::cube::{Implicant, ProblemSpec};
use crate::error::Result;
use crate::primes::{self, PrimeSet, ReductionColumn};

/// Coverage matrix of prime implicants (rows) against required minterms
/// (columns). Don't-care minterms never appear as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PIChart {
    columns: Vec<u64>,
    rows: Vec<Implicant>,
    marks: Vec<Vec<bool>>,
    coverage_count: Vec<usize>,
}

impl PIChart {
    /// Builds a chart over the given rows and columns. Columns are sorted and
    /// deduplicated; rows keep their given order.
    pub fn new(rows: Vec<Implicant>, mut columns: Vec<u64>) -> Self {
        columns.sort_unstable();
        columns.dedup();
        let marks: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| columns.iter().map(|&c| r.contains(c)).collect())
            .collect();
        let coverage_count = (0..columns.len())
            .map(|c| marks.iter().filter(|row| row[c]).count())
            .collect();
        PIChart {
            columns,
            rows,
            marks,
            coverage_count,
        }
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn rows(&self) -> &[Implicant] {
        &self.rows
    }

    pub fn marks(&self) -> &[Vec<bool>] {
        &self.marks
    }

    pub fn coverage_count(&self) -> &[usize] {
        &self.coverage_count
    }

    /// Coverage count of a specific minterm, if it is a column.
    pub fn count_of(&self, minterm: u64) -> Option<usize> {
        self.columns
            .binary_search(&minterm)
            .ok()
            .map(|c| self.coverage_count[c])
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    fn without(&self, drop_row: usize) -> PIChart {
        let keep_cols: Vec<u64> = self
            .columns
            .iter()
            .enumerate()
            .filter(|&(c, _)| !self.marks[drop_row][c])
            .map(|(_, &m)| m)
            .collect();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != drop_row)
            .map(|(_, &imp)| imp)
            .collect();
        PIChart::new(rows, keep_cols)
    }
}

impl fmt::Display for PIChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.first().map_or(4, |r| r.vars() as usize).max(4);
        write!(f, "{:width$} ", "")?;
        for c in &self.columns {
            write!(f, "{c:>4}")?;
        }
        writeln!(f)?;
        for (r, row) in self.rows.iter().enumerate() {
            write!(f, "{:width$} ", row.to_string())?;
            for &mark in &self.marks[r] {
                write!(f, "{:>4}", if mark { "*" } else { "." })?;
            }
            writeln!(f)?;
        }
        write!(f, "{:width$} ", "count")?;
        for c in &self.coverage_count {
            write!(f, "{c:>4}")?;
        }
        writeln!(f)
    }
}

/// Two-level cost: number of product terms and total literals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cost {
    pub terms: usize,
    pub literals: usize,
}

/// A sum-of-products cover; term order is significant for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    vars: u32,
    implicants: Vec<Implicant>,
}

impl Cover {
    /// # Panics
    ///
    /// If any implicant has a width other than `vars`.
    pub fn new(vars: u32, implicants: Vec<Implicant>) -> Self {
        assert!(
            implicants.iter().all(|i| i.vars() == vars),
            "cover width mismatch"
        );
        Cover { vars, implicants }
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn implicants(&self) -> &[Implicant] {
        &self.implicants
    }

    pub fn len(&self) -> usize {
        self.implicants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implicants.is_empty()
    }

    pub fn cost(&self) -> Cost {
        Cost {
            terms: self.implicants.len(),
            literals: self
                .implicants
                .iter()
                .map(|i| i.literal_count() as usize)
                .sum(),
        }
    }

    /// `Some(false)` for the empty cover, `Some(true)` when a term is the
    /// all-dash cube, `None` otherwise.
    pub fn constant(&self) -> Option<bool> {
        if self.implicants.is_empty() {
            Some(false)
        } else if self.implicants.iter().any(Implicant::is_universe) {
            Some(true)
        } else {
            None
        }
    }

    /// Sorted, deduplicated minterms covered by some term.
    pub fn covered_minterms(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self
            .implicants
            .iter()
            .flat_map(Implicant::expand_minterms)
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub fn build_chart(primes: &PrimeSet, problem: &ProblemSpec) -> PIChart {
    PIChart::new(primes.as_slice().to_vec(), problem.onset().to_vec())
}

/// Repeatedly selects the sole row covering some column, removing it and
/// everything it covers. Returns the essentials in row order together with
/// the reduced chart.
pub fn extract_essentials(chart: &PIChart) -> (Vec<Implicant>, PIChart) {
    let mut essentials = Vec::new();
    let mut current = chart.clone();
    while let Some(col) = current.coverage_count.iter().position(|&k| k == 1) {
        let row = (0..current.rows.len())
            .find(|&r| current.marks[r][col])
            .expect("count of one implies a covering row");
        essentials.push(current.rows[row]);
        current = current.without(row);
    }
    essentials.sort();
    (essentials, current)
}

/// Minimum-cardinality set of rows covering every column of `reduced`.
///
/// Ties on cardinality go to the smaller literal count, then to the
/// lexicographically smallest list of row positions. The result is in row
/// order.
pub fn solve_reduced(reduced: &PIChart) -> Vec<Implicant> {
    if reduced.is_empty() {
        return Vec::new();
    }
    let lits: Vec<usize> = reduced
        .rows
        .iter()
        .map(|r| r.literal_count() as usize)
        .collect();
    crate::solver::min_cover(&reduced.marks, reduced.columns.len(), &lits)
        .into_iter()
        .map(|r| reduced.rows[r])
        .collect()
}

/// Everything produced while minimizing one function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizeReport {
    pub problem: ProblemSpec,
    /// Reduction columns with final tick marks; empty when the function has
    /// no onset or don't-care minterms.
    pub columns: Vec<ReductionColumn>,
    pub primes: PrimeSet,
    pub chart: PIChart,
    pub essentials: Vec<Implicant>,
    pub reduced: PIChart,
    /// Rows chosen from the reduced chart.
    pub selected: Vec<Implicant>,
    pub cover: Cover,
}

/// Minimizes `problem`: prime generation, chart, essentials, then exact
/// search on the reduced chart. The cover lists the essentials followed by
/// the rows chosen from the reduced chart.
pub fn minimize(problem: &ProblemSpec) -> Result<MinimizeReport> {
    let n = problem.vars();
    let columns = if problem.onset().is_empty() && problem.dontcare().is_empty() {
        Vec::new()
    } else {
        primes::reduce_columns(problem)?
    };
    let primes = primes::primes_from_columns(&columns);
    let chart = build_chart(&primes, problem);
    let (essentials, reduced) = extract_essentials(&chart);
    let selected = solve_reduced(&reduced);
    let cover = Cover::new(n, essentials.iter().chain(&selected).copied().collect());
    Ok(MinimizeReport {
        problem: problem.clone(),
        columns,
        primes,
        chart,
        essentials,
        reduced,
        selected,
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::generate_primes;

    fn example() -> ProblemSpec {
        ProblemSpec::new(4, vec![4, 5, 6, 9, 11, 12, 13, 14], vec![0, 1, 3, 7]).unwrap()
    }

    fn strings(v: &[Implicant]) -> Vec<String> {
        v.iter().map(Implicant::to_string).collect()
    }

    fn imp(s: &str) -> Implicant {
        s.parse().unwrap()
    }

    #[test]
    fn example_chart_counts() {
        let p = example();
        let chart = build_chart(&generate_primes(&p).unwrap(), &p);
        assert_eq!(chart.columns(), &[4, 5, 6, 9, 11, 12, 13, 14]);
        assert_eq!(chart.coverage_count(), &[4, 5, 2, 2, 1, 2, 2, 1]);
        for (r, row) in chart.rows().iter().enumerate() {
            for (c, &m) in chart.columns().iter().enumerate() {
                assert_eq!(chart.marks()[r][c], row.covers(m).unwrap());
            }
        }
    }

    #[test]
    fn trivial_charts() {
        let p = ProblemSpec::new(3, vec![], vec![2]).unwrap();
        let chart = build_chart(&generate_primes(&p).unwrap(), &p);
        assert!(chart.columns().is_empty());
        assert_eq!(chart.rows().len(), 1);

        let p = ProblemSpec::new(3, vec![5], vec![]).unwrap();
        let primes = generate_primes(&p).unwrap();
        assert_eq!(strings(primes.as_slice()), ["101"]);
        let chart = build_chart(&primes, &p);
        assert_eq!(chart.count_of(5), Some(1));
        let (ess, reduced) = extract_essentials(&chart);
        assert_eq!(strings(&ess), ["101"]);
        assert!(reduced.is_empty());
        assert!(reduced.rows().is_empty());
    }

    #[test]
    fn example_essentials_and_reduced_chart() {
        let p = example();
        let chart = build_chart(&generate_primes(&p).unwrap(), &p);
        let (ess, reduced) = extract_essentials(&chart);
        assert_eq!(strings(&ess), ["X0X1", "X1X0"]);
        assert_eq!(reduced.columns(), &[5, 13]);
        let mut rows = strings(reduced.rows());
        rows.sort();
        assert_eq!(rows, ["01XX", "0X0X", "0XX1", "X10X", "XX01"]);
        assert_eq!(strings(&solve_reduced(&reduced)), ["XX01"]);
    }

    #[test]
    fn cyclic_chart_has_no_essentials() {
        let p = ProblemSpec::new(3, vec![1, 2, 3, 4, 5, 6], vec![]).unwrap();
        let chart = build_chart(&generate_primes(&p).unwrap(), &p);
        assert_eq!(chart.rows().len(), 6);
        assert!(chart.coverage_count().iter().all(|&k| k == 2));
        let (ess, reduced) = extract_essentials(&chart);
        assert!(ess.is_empty());
        assert_eq!(reduced, chart);
        let sol = solve_reduced(&reduced);
        assert_eq!(sol.len(), 3);
        let cover = Cover::new(3, sol);
        assert_eq!(cover.covered_minterms(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn empty_reduced_chart() {
        assert!(solve_reduced(&PIChart::new(vec![imp("1X")], vec![])).is_empty());
    }

    #[test]
    fn zero_coverage_rows_never_selected() {
        let chart = PIChart::new(vec![imp("0X"), imp("1X")], vec![2, 3]);
        assert_eq!(strings(&solve_reduced(&chart)), ["1X"]);
    }

    #[test]
    fn tie_breaks_on_literals_then_row_order() {
        // Both single rows cover {3}; the cube with fewer literals wins.
        let chart = PIChart::new(vec![imp("011"), imp("0X1")], vec![3]);
        assert_eq!(strings(&solve_reduced(&chart)), ["0X1"]);
        // Same literal count: first row wins.
        let chart = PIChart::new(vec![imp("X11"), imp("0X1")], vec![3]);
        assert_eq!(strings(&solve_reduced(&chart)), ["X11"]);
    }

    #[test]
    fn minimize_examples() {
        let r = minimize(&example()).unwrap();
        assert_eq!(strings(r.cover.implicants()), ["X0X1", "X1X0", "XX01"]);
        assert_eq!(
            r.cover.cost(),
            Cost {
                terms: 3,
                literals: 6
            }
        );

        let r = minimize(&ProblemSpec::new(2, vec![0, 1, 2, 3], vec![]).unwrap()).unwrap();
        assert_eq!(strings(r.cover.implicants()), ["XX"]);
        assert_eq!(r.cover.constant(), Some(true));

        let r = minimize(&ProblemSpec::new(2, vec![1], vec![0, 2, 3]).unwrap()).unwrap();
        assert_eq!(r.cover.constant(), Some(true));

        let r = minimize(&ProblemSpec::new(3, vec![3, 5, 6, 7], vec![]).unwrap()).unwrap();
        assert_eq!(strings(r.cover.implicants()), ["X11", "1X1", "11X"]);

        let r = minimize(&ProblemSpec::new(3, vec![], vec![1, 2]).unwrap()).unwrap();
        assert!(r.cover.is_empty());
        assert_eq!(r.cover.constant(), Some(false));
        assert_eq!(r.cover.cost(), Cost::default());

        let r = minimize(&ProblemSpec::new(3, vec![], vec![]).unwrap()).unwrap();
        assert!(r.cover.is_empty() && r.primes.is_empty());
    }

    #[test]
    fn minimize_is_deterministic() {
        let p = ProblemSpec::new(4, vec![0, 2, 5, 7, 8, 10, 13, 15], vec![1, 6]).unwrap();
        assert_eq!(minimize(&p).unwrap(), minimize(&p).unwrap());
    }
}
