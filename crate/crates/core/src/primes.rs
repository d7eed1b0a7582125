//! Column-by-column reduction producing the complete set of prime implicants.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::cube::{Implicant, ProblemSpec};
use crate::error::{Error, Result};

/// A term in a reduction column and whether it has been merged into a
/// larger cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub implicant: Implicant,
    pub ticked: bool,
}

/// One column of the tabulation. Column `i` holds cubes with exactly `i`
/// dashes; `groups[g]` holds the cubes with `g` ones, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionColumn {
    index: u32,
    groups: Vec<Vec<Term>>,
}

impl ReductionColumn {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn groups(&self) -> &[Vec<Term>] {
        &self.groups
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.groups.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Terms never merged into anything; these are prime.
    pub fn unticked(&self) -> impl Iterator<Item = Implicant> + '_ {
        self.terms().filter(|t| !t.ticked).map(|t| t.implicant)
    }
}

impl fmt::Display for ReductionColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Column {}", self.index)?;
        for (ones, group) in self.groups.iter().enumerate() {
            if group.is_empty() {
                continue;
            }
            for term in group {
                let idx: Vec<String> = term
                    .implicant
                    .expand_minterms()
                    .iter()
                    .map(u64::to_string)
                    .collect();
                writeln!(
                    f,
                    "  [{ones}] {:<width$} {}{}",
                    idx.join(","),
                    term.implicant,
                    if term.ticked { " ✓" } else { "" },
                    width = 12,
                )?;
            }
        }
        Ok(())
    }
}

/// Prime implicants in the deterministic [`Implicant`] order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeSet {
    primes: Vec<Implicant>,
}

impl PrimeSet {
    pub fn as_slice(&self) -> &[Implicant] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implicant> {
        self.primes.iter()
    }

    pub fn contains(&self, imp: &Implicant) -> bool {
        self.primes.binary_search(imp).is_ok()
    }

    pub fn into_vec(self) -> Vec<Implicant> {
        self.primes
    }
}

impl FromIterator<Implicant> for PrimeSet {
    fn from_iter<T: IntoIterator<Item = Implicant>>(iter: T) -> Self {
        let set: BTreeSet<Implicant> = iter.into_iter().collect();
        PrimeSet {
            primes: set.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a PrimeSet {
    type Item = &'a Implicant;
    type IntoIter = std::slice::Iter<'a, Implicant>;

    fn into_iter(self) -> Self::IntoIter {
        self.primes.iter()
    }
}

/// Column 0: every onset and don't-care minterm, grouped by ones count and
/// ascending within each group.
pub fn group_by_ones(problem: &ProblemSpec) -> ReductionColumn {
    let n = problem.vars();
    let mut groups = vec![Vec::new(); n as usize + 1];
    for m in problem.care_or_dc() {
        let implicant = Implicant::from_minterm(m, n).expect("validated problem");
        groups[implicant.ones_count() as usize].push(Term {
            implicant,
            ticked: false,
        });
    }
    ReductionColumn { index: 0, groups }
}

/// Pairs every term of group `g` with every term of group `g + 1`, ticking
/// both operands of each successful merge. Returns the next column, or
/// `None` if nothing merged.
pub fn reduction_pass(col: &mut ReductionColumn) -> Option<ReductionColumn> {
    let mut next = vec![Vec::new(); col.groups.len()];
    let mut seen = HashSet::new();
    let mut merged_any = false;
    for g in 0..col.groups.len().saturating_sub(1) {
        let (lo, hi) = col.groups.split_at_mut(g + 1);
        let (lower, upper) = (&mut lo[g], &mut hi[0]);
        for a in lower.iter_mut() {
            for b in upper.iter_mut() {
                let merged = a
                    .implicant
                    .combine(&b.implicant)
                    .expect("terms in a column share a width");
                if let Some(c) = merged {
                    merged_any = true;
                    a.ticked = true;
                    b.ticked = true;
                    if seen.insert(c) {
                        next[g].push(Term {
                            implicant: c,
                            ticked: false,
                        });
                    }
                }
            }
        }
    }
    merged_any.then(|| ReductionColumn {
        index: col.index + 1,
        groups: next,
    })
}

/// Runs reduction passes to exhaustion and returns every column, with final
/// tick marks.
pub fn reduce_columns(problem: &ProblemSpec) -> Result<Vec<ReductionColumn>> {
    if problem.onset().is_empty() && problem.dontcare().is_empty() {
        return Err(Error::EmptyFunction);
    }
    let mut columns = vec![group_by_ones(problem)];
    loop {
        let last = columns.last_mut().expect("at least column 0");
        match reduction_pass(last) {
            Some(next) => columns.push(next),
            None => break,
        }
    }
    Ok(columns)
}

/// Collects unticked terms from all columns.
pub fn primes_from_columns(columns: &[ReductionColumn]) -> PrimeSet {
    columns.iter().flat_map(ReductionColumn::unticked).collect()
}

pub fn generate_primes(problem: &ProblemSpec) -> Result<PrimeSet> {
    Ok(primes_from_columns(&reduce_columns(problem)?))
}
