//! Brute-force reference routines for checking the minimizer on small
//! instances. Nothing here shares code paths with prime generation or cover
//! selection beyond the [`Implicant`] type itself.

use std::collections::HashSet;
use std::fmt;

use crate::cover::Cover;
use crate::cube::{Implicant, ProblemSpec};
use crate::error::{Error, Result};
use crate::primes::PrimeSet;

/// Largest variable count [`naive_primes`] will enumerate (3^n cubes).
pub const NAIVE_PRIMES_MAX_VARS: u32 = 12;
/// Largest variable count [`check_equivalence`] will evaluate exhaustively.
pub const EQUIVALENCE_MAX_VARS: u32 = 24;
/// Onset size limit for [`exhaustive_min_cover_size`] (coverage masks are `u128`).
pub const MIN_COVER_MAX_ONSET: usize = 128;
/// Limit on distinct coverage states visited by [`exhaustive_min_cover_size`].
pub const MIN_COVER_MAX_STATES: usize = 4_000_000;
/// Prime count limit for [`minimum_covers`], which enumerates subsets.
pub const SUBSET_MAX_PRIMES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An onset minterm no term covers.
    UncoveredOnset(u64),
    /// An offset minterm some term covers.
    CoveredOffset(u64),
    /// A cover term has the wrong number of variables.
    WidthMismatch(Implicant),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncoveredOnset(m) => write!(f, "onset minterm {m} is not covered"),
            Violation::CoveredOffset(m) => write!(f, "offset minterm {m} is covered"),
            Violation::WidthMismatch(i) => write!(f, "term {i} has the wrong width"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates a product term at a full assignment, variable by variable.
pub fn eval_implicant(imp: &Implicant, assignment: u64) -> bool {
    let n = imp.vars();
    (0..n).all(|var| {
        let bit = assignment >> (n - 1 - var) & 1 == 1;
        imp.literal(var).is_none_or(|want| want == bit)
    })
}

/// Evaluates the cover on every assignment and reports each onset minterm it
/// misses and each offset minterm it hits.
pub fn check_equivalence(cover: &Cover, problem: &ProblemSpec) -> Result<Verdict> {
    let n = problem.vars();
    if n > EQUIVALENCE_MAX_VARS {
        return Err(Error::OracleCap(format!(
            "equivalence check limited to {EQUIVALENCE_MAX_VARS} variables, got {n}"
        )));
    }
    let mut verdict = Verdict::default();
    let bad: Vec<Implicant> = cover
        .implicants()
        .iter()
        .filter(|i| i.vars() != n)
        .copied()
        .collect();
    if !bad.is_empty() || cover.vars() != n {
        verdict
            .violations
            .extend(bad.into_iter().map(Violation::WidthMismatch));
        return Ok(verdict);
    }
    for m in 0..problem.space() {
        let value = cover.implicants().iter().any(|i| eval_implicant(i, m));
        if problem.is_onset(m) {
            if !value {
                verdict.violations.push(Violation::UncoveredOnset(m));
            }
        } else if !problem.is_dontcare(m) && value {
            verdict.violations.push(Violation::CoveredOffset(m));
        }
    }
    Ok(verdict)
}

/// Cube in base-3 digit form: one digit per variable, 0/1 fixed, 2 free.
fn cube_minterms(digits: &[u8], prefix: u64, out: &mut Vec<u64>) {
    match digits.split_first() {
        None => out.push(prefix),
        Some((&d, rest)) => {
            if d == 0 || d == 2 {
                cube_minterms(rest, prefix << 1, out);
            }
            if d == 1 || d == 2 {
                cube_minterms(rest, prefix << 1 | 1, out);
            }
        }
    }
}

fn digits_of(mut code: usize, n: usize) -> Vec<u8> {
    let mut digits = vec![0u8; n];
    for d in digits.iter_mut().rev() {
        *d = (code % 3) as u8;
        code /= 3;
    }
    digits
}

fn implicant_of(digits: &[u8]) -> Implicant {
    let n = digits.len() as u32;
    let (mut value, mut dashes) = (0u64, 0u64);
    for &d in digits {
        value = value << 1 | u64::from(d == 1);
        dashes = dashes << 1 | u64::from(d == 2);
    }
    Implicant::new(n, value, dashes).expect("well-formed digits")
}

/// Enumerates all 3^n cubes and keeps the maximal ones contained in
/// onset ∪ don't-care.
pub fn naive_primes(problem: &ProblemSpec) -> Result<PrimeSet> {
    let n = problem.vars();
    if n > NAIVE_PRIMES_MAX_VARS {
        return Err(Error::OracleCap(format!(
            "prime enumeration limited to {NAIVE_PRIMES_MAX_VARS} variables, got {n}"
        )));
    }
    let n = n as usize;
    let total = 3usize.pow(n as u32);
    let allowed: Vec<bool> = (0..problem.space())
        .map(|m| problem.is_onset(m) || problem.is_dontcare(m))
        .collect();
    let mut inside = vec![false; total];
    let mut buf = Vec::new();
    for (code, flag) in inside.iter_mut().enumerate() {
        buf.clear();
        cube_minterms(&digits_of(code, n), 0, &mut buf);
        *flag = buf.iter().all(|&m| allowed[m as usize]);
    }
    let mut found = Vec::new();
    for code in 0..total {
        if !inside[code] {
            continue;
        }
        let digits = digits_of(code, n);
        // Raising any fixed digit to 2 must leave the allowed set.
        let maximal = (0..n).filter(|&k| digits[k] != 2).all(|k| {
            let place = 3usize.pow((n - 1 - k) as u32);
            let raised = code + (2 - digits[k] as usize) * place;
            !inside[raised]
        });
        if maximal {
            found.push(implicant_of(&digits));
        }
    }
    Ok(found.into_iter().collect())
}

/// Primes that cover at least one onset minterm, as bitmasks over onset
/// positions.
fn onset_masks(problem: &ProblemSpec, primes: &PrimeSet) -> Vec<u128> {
    let onset = problem.onset();
    let mut masks: Vec<u128> = primes
        .iter()
        .map(|p| {
            onset
                .iter()
                .enumerate()
                .filter(|&(_, &m)| eval_implicant(p, m))
                .fold(0u128, |acc, (i, _)| acc | 1 << i)
        })
        .filter(|&m| m != 0)
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// Smallest number of primes covering the onset, by breadth-first search
/// over sets of covered onset minterms. Each layer adds one prime that
/// covers the lowest uncovered minterm.
pub fn exhaustive_min_cover_size(problem: &ProblemSpec) -> Result<usize> {
    let onset_len = problem.onset().len();
    if onset_len == 0 {
        return Ok(0);
    }
    if onset_len > MIN_COVER_MAX_ONSET {
        return Err(Error::OracleCap(format!(
            "minimum cover search limited to {MIN_COVER_MAX_ONSET} onset minterms, got {onset_len}"
        )));
    }
    let primes = naive_primes(problem)?;
    let masks = onset_masks(problem, &primes);
    let full: u128 = if onset_len == 128 {
        u128::MAX
    } else {
        (1u128 << onset_len) - 1
    };
    let mut layer: HashSet<u128> = HashSet::from([0]);
    let mut seen = layer.clone();
    for size in 1.. {
        let mut next = HashSet::new();
        for &state in &layer {
            let lowest = (!state & full).trailing_zeros();
            for &m in masks.iter().filter(|&&m| m >> lowest & 1 == 1) {
                let s = state | m;
                if s == full {
                    return Ok(size);
                }
                if seen.insert(s) {
                    next.insert(s);
                }
            }
        }
        if seen.len() > MIN_COVER_MAX_STATES {
            return Err(Error::OracleCap(format!(
                "minimum cover search exceeded {MIN_COVER_MAX_STATES} states"
            )));
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    unreachable!("the prime set always covers the onset")
}

/// Every minimum-cardinality cover drawn from the naive prime set, by
/// enumerating subsets in increasing size.
pub fn minimum_covers(problem: &ProblemSpec) -> Result<Vec<Vec<Implicant>>> {
    if problem.onset().is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let primes = naive_primes(problem)?;
    if primes.len() > SUBSET_MAX_PRIMES {
        return Err(Error::OracleCap(format!(
            "subset enumeration limited to {SUBSET_MAX_PRIMES} primes, got {}",
            primes.len()
        )));
    }
    let list = primes.as_slice();
    let covers_all = |subset: &[usize]| {
        problem
            .onset()
            .iter()
            .all(|&m| subset.iter().any(|&i| eval_implicant(&list[i], m)))
    };
    for k in 1..=list.len() {
        let mut found = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if covers_all(&idx) {
                found.push(idx.iter().map(|&i| list[i]).collect());
            }
            // Advance to the next k-combination.
            let Some(pos) = (0..k).rev().find(|&i| idx[i] < list.len() - k + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
    }
    unreachable!("the prime set always covers the onset")
}
