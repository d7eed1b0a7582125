//! Cube representation and the single-literal combination rule.
//!
//! An [`Implicant`] over `n` variables is stored as two bit vectors laid out
//! like the decimal minterm index: variable 0 is the most significant bit and
//! the leftmost printed digit. A set bit in `dashes` marks an eliminated
//! variable; such positions always carry 0 in `value`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported variable count. Minterm indices are `u64`, so `2^n`
/// must stay representable.
pub const MAX_VARS: u32 = 63;

pub(crate) fn check_vars(n: u32) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::VarCount {
            got: n,
            max: MAX_VARS,
        });
    }
    Ok(())
}

#[inline]
fn width_mask(n: u32) -> u64 {
    (1u64 << n) - 1
}

/// A product term in X-notation, e.g. `X0X1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Implicant {
    n: u32,
    value: u64,
    dashes: u64,
}

impl Implicant {
    /// Builds a cube from raw bit vectors. `value` bits under `dashes` must be
    /// clear.
    pub fn new(n: u32, value: u64, dashes: u64) -> Result<Self> {
        check_vars(n)?;
        let mask = width_mask(n);
        if value & !mask != 0 || dashes & !mask != 0 || value & dashes != 0 {
            return Err(Error::MintermOutOfRange {
                minterm: value | dashes,
                vars: n,
            });
        }
        Ok(Implicant { n, value, dashes })
    }

    /// The cube of a single minterm (no eliminated variables).
    pub fn from_minterm(minterm: u64, n: u32) -> Result<Self> {
        check_vars(n)?;
        if minterm > width_mask(n) {
            return Err(Error::MintermOutOfRange { minterm, vars: n });
        }
        Ok(Implicant {
            n,
            value: minterm,
            dashes: 0,
        })
    }

    /// The all-dash cube, i.e. constant 1.
    pub fn universe(n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(Implicant {
            n,
            value: 0,
            dashes: width_mask(n),
        })
    }

    pub fn vars(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn dashes(&self) -> u64 {
        self.dashes
    }

    pub fn dash_count(&self) -> u32 {
        self.dashes.count_ones()
    }

    pub fn is_universe(&self) -> bool {
        self.dashes == width_mask(self.n)
    }

    /// Value of variable `var` in this cube: `None` when eliminated.
    pub fn literal(&self, var: u32) -> Option<bool> {
        assert!(
            var < self.n,
            "variable {var} out of range for {} variables",
            self.n
        );
        let bit = 1u64 << (self.n - 1 - var);
        if self.dashes & bit != 0 {
            None
        } else {
            Some(self.value & bit != 0)
        }
    }

    /// Merges two cubes that differ in exactly one specified variable.
    ///
    /// Returns `Ok(None)` when the dash masks differ or the values differ in
    /// zero or several positions.
    pub fn combine(&self, other: &Implicant) -> Result<Option<Implicant>> {
        if self.n != other.n {
            return Err(Error::WidthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.dashes != other.dashes {
            return Ok(None);
        }
        let diff = self.value ^ other.value;
        if diff.count_ones() != 1 {
            return Ok(None);
        }
        Ok(Some(Implicant {
            n: self.n,
            value: self.value & other.value,
            dashes: self.dashes | diff,
        }))
    }

    pub fn covers(&self, minterm: u64) -> Result<bool> {
        if minterm > width_mask(self.n) {
            return Err(Error::MintermOutOfRange {
                minterm,
                vars: self.n,
            });
        }
        Ok(self.contains(minterm))
    }

    /// Unchecked variant of [`covers`](Self::covers) for indices known to be
    /// in range.
    #[inline]
    pub(crate) fn contains(&self, minterm: u64) -> bool {
        minterm & !self.dashes == self.value
    }

    /// All minterms covered by this cube, ascending.
    pub fn expand_minterms(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(1usize << self.dash_count());
        // Walk the submasks of `dashes` in increasing order.
        let mut sub = 0u64;
        loop {
            out.push(self.value | sub);
            if sub == self.dashes {
                break;
            }
            sub = ((sub | !self.dashes).wrapping_add(1)) & self.dashes;
        }
        out
    }

    /// Number of 1 digits; used to group terms.
    pub fn ones_count(&self) -> u32 {
        self.value.count_ones()
    }

    /// Number of variables that appear in the product term.
    pub fn literal_count(&self) -> u32 {
        self.n - self.dash_count()
    }

    /// Renders the cube with `one`/`zero`/`dash` symbols, leftmost = variable 0.
    pub fn render(&self, dash: char) -> String {
        (0..self.n)
            .map(|v| match self.literal(v) {
                None => dash,
                Some(true) => '1',
                Some(false) => '0',
            })
            .collect()
    }
}

/// Deterministic order used for prime sets and chart rows: larger cubes
/// first, then by value, then by dash mask.
impl Ord for Implicant {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| other.dash_count().cmp(&self.dash_count()))
            .then_with(|| self.value.cmp(&other.value))
            .then_with(|| self.dashes.cmp(&other.dashes))
    }
}

impl PartialOrd for Implicant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Implicant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('X'))
    }
}

/// Parses X-notation (`0`, `1`, and `X`/`x`/`-` for eliminated variables).
impl FromStr for Implicant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = u32::try_from(s.chars().count()).unwrap_or(u32::MAX);
        check_vars(n)?;
        let mut value = 0u64;
        let mut dashes = 0u64;
        for c in s.chars() {
            value <<= 1;
            dashes <<= 1;
            match c {
                '0' => {}
                '1' => value |= 1,
                'X' | 'x' | '-' => dashes |= 1,
                other => {
                    return Err(Error::Parse(crate::error::ParseError::new(
                        crate::error::ParseErrorKind::BadCubeChar(other),
                        1,
                        1,
                    )))
                }
            }
        }
        Implicant::new(n, value, dashes)
    }
}

/// A single-output function: onset and don't-care minterms over `n`
/// variables. Every other index is in the offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProblemSpec {
    vars: u32,
    onset: Vec<u64>,
    dontcare: Vec<u64>,
}

impl ProblemSpec {
    /// Validates and builds a problem. Both lists must be strictly ascending,
    /// in range, and disjoint.
    pub fn new(vars: u32, onset: Vec<u64>, dontcare: Vec<u64>) -> Result<Self> {
        check_vars(vars)?;
        let max = width_mask(vars);
        for list in [&onset, &dontcare] {
            for (i, &m) in list.iter().enumerate() {
                if m > max {
                    return Err(Error::MintermOutOfRange { minterm: m, vars });
                }
                if i > 0 && list[i - 1] >= m {
                    return Err(Error::NotAscending(m));
                }
            }
        }
        if let Some(&m) = onset.iter().find(|m| dontcare.binary_search(m).is_ok()) {
            return Err(Error::Overlap(m));
        }
        Ok(ProblemSpec {
            vars,
            onset,
            dontcare,
        })
    }

    /// Builds a problem from unsorted, possibly overlapping sets. A minterm in
    /// both sets is kept in the onset.
    pub fn from_sets<I, J>(vars: u32, onset: I, dontcare: J) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
        J: IntoIterator<Item = u64>,
    {
        let mut on: Vec<u64> = onset.into_iter().collect();
        on.sort_unstable();
        on.dedup();
        let mut dc: Vec<u64> = dontcare.into_iter().collect();
        dc.sort_unstable();
        dc.dedup();
        dc.retain(|m| on.binary_search(m).is_err());
        ProblemSpec::new(vars, on, dc)
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn onset(&self) -> &[u64] {
        &self.onset
    }

    pub fn dontcare(&self) -> &[u64] {
        &self.dontcare
    }

    /// Size of the Boolean space, `2^n`.
    pub fn space(&self) -> u64 {
        1u64 << self.vars
    }

    pub fn is_onset(&self, m: u64) -> bool {
        self.onset.binary_search(&m).is_ok()
    }

    pub fn is_dontcare(&self, m: u64) -> bool {
        self.dontcare.binary_search(&m).is_ok()
    }

    /// Onset and don't-care minterms merged, ascending.
    pub fn care_or_dc(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.onset.iter().chain(&self.dontcare).copied().collect();
        all.sort_unstable();
        all
    }
}
