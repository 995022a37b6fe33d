//! Half-set sum tables and the sorted two-pointer match scan.
//!
//! Splitting an instance's coordinates in two and enumerating each half's
//! subset sums turns a `2^n` search into two sorted lists of `2^(n/2)`
//! entries that can be scanned head-to-head. The tables here keep every
//! entry (duplicates included) together with the selection mask that
//! produced it, so a match can be decoded back into a full certificate and
//! so element counts stay exact.

use std::ops::Range;

use crate::problem::{CapacityError, Wide};

/// Widest coordinate range a single table will enumerate (2^24 entries).
pub const MAX_HALF_WIDTH: usize = 24;

/// One enumerated subset sum and the selection mask that produced it.
///
/// Bit `i` of `mask` selects coordinate `range.start + i` of the instance
/// the table was built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableEntry {
    pub sum: Wide,
    pub mask: u64,
}

/// Subset sums over a contiguous coordinate range, sorted ascending by
/// `(sum, mask)`. Duplicate sums are kept — one entry per mask — which is
/// what makes the element accounting of the solvers exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSumTable {
    range: Range<usize>,
    entries: Vec<TableEntry>,
}

impl HalfSumTable {
    /// Enumerates all `2^w` subset sums of `weights[range]`, generating
    /// masks in increasing binary order and then sorting by `(sum, mask)`.
    ///
    /// Each sum is derived from the already-computed sum with the lowest
    /// set bit cleared, so enumeration costs one addition per mask.
    pub fn enumerate(weights: &[Wide], range: Range<usize>) -> Result<Self, CapacityError> {
        assert!(
            range.start <= range.end && range.end <= weights.len(),
            "coordinate range out of bounds"
        );
        let width = range.len();
        if width > MAX_HALF_WIDTH {
            return Err(CapacityError::HalfWidth {
                width,
                max: MAX_HALF_WIDTH,
            });
        }
        let mut entries = Vec::with_capacity(1usize << width);
        entries.push(TableEntry { sum: 0, mask: 0 });
        for mask in 1..(1u64 << width) {
            let low = mask.trailing_zeros() as usize;
            let prev = entries[(mask & (mask - 1)) as usize].sum;
            let sum = prev
                .checked_add(weights[range.start + low])
                .ok_or(CapacityError::Overflow)?;
            entries.push(TableEntry { sum, mask });
        }
        entries.sort_unstable_by_key(|e| (e.sum, e.mask));
        Ok(Self { range, entries })
    }

    /// Builds a table from arbitrary pre-computed entries, sorting them into
    /// the canonical `(sum, mask)` order. Unlike [`HalfSumTable::enumerate`]
    /// this implies nothing about the entry count; it exists for tests,
    /// oracles, and experiments that need hand-made sorted lists.
    pub fn from_entries(range: Range<usize>, mut entries: Vec<TableEntry>) -> Self {
        entries.sort_unstable_by_key(|e| (e.sum, e.mask));
        Self { range, entries }
    }

    /// The coordinate interval this table covers.
    pub fn range(&self) -> Range<usize> {
        self.range.clone()
    }

    /// Number of coordinates covered.
    pub fn width(&self) -> usize {
        self.range.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    /// The sorted sums, without their masks.
    pub fn sums(&self) -> impl Iterator<Item = Wide> + '_ {
        self.entries.iter().map(|e| e.sum)
    }

    /// The table of `target - s` for every entry `s`, masks preserved.
    ///
    /// Negation reverses the sort order, so the result is produced by
    /// reversal rather than a comparison sort; runs of equal sums are
    /// re-reversed to restore ascending mask order within ties.
    pub fn shift_negate(&self, target: Wide) -> Result<Self, CapacityError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in self.entries.iter().rev() {
            entries.push(TableEntry {
                sum: target.checked_sub(e.sum).ok_or(CapacityError::Overflow)?,
                mask: e.mask,
            });
        }
        let mut i = 0;
        while i < entries.len() {
            let mut j = i + 1;
            while j < entries.len() && entries[j].sum == entries[i].sum {
                j += 1;
            }
            entries[i..j].reverse();
            i = j;
        }
        Ok(Self {
            range: self.range.clone(),
            entries,
        })
    }

    /// The multiset union of this table with a copy of itself shifted by
    /// `offset`, sorted. Masks gain one coordinate: bit `width` records
    /// whether the offset copy supplied the entry, so the result covers
    /// `range.start..range.end + 1` with the new coordinate standing for
    /// the weight `offset`.
    ///
    /// Both inputs to the union are already in `(sum, mask)` order (adding
    /// a constant preserves it), so the output is produced by a single
    /// merge pass. Ties take the unshifted entry first, which keeps the
    /// result exactly the canonical sort of all `2·len` entries.
    pub fn union_shift(&self, offset: Wide) -> Result<Self, CapacityError> {
        let n = self.entries.len();
        let ext = 1u64 << self.width();
        let mut entries = Vec::with_capacity(2 * n);
        let (mut i, mut j) = (0usize, 0usize);
        while i < n || j < n {
            let shifted = if j < n {
                Some(
                    self.entries[j]
                        .sum
                        .checked_add(offset)
                        .ok_or(CapacityError::Overflow)?,
                )
            } else {
                None
            };
            match shifted {
                Some(s) if i == n || s < self.entries[i].sum => {
                    entries.push(TableEntry {
                        sum: s,
                        mask: self.entries[j].mask | ext,
                    });
                    j += 1;
                }
                _ => {
                    entries.push(self.entries[i]);
                    i += 1;
                }
            }
        }
        Ok(Self {
            range: self.range.start..self.range.end + 1,
            entries,
        })
    }
}

/// Result of one two-pointer scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOutcome {
    pub matched: bool,
    /// Position of the matching entry in the left table, if any.
    pub left_index: Option<usize>,
    /// Position of the matching entry in the right table, if any.
    pub right_index: Option<usize>,
    /// Pointer positions examined, each counted once when first visited,
    /// the two initial heads included. Zero when either table is empty.
    pub elements_visited: u64,
    /// Sum-vs-sum comparisons performed.
    pub comparisons: u64,
}

impl ScanOutcome {
    fn unmatched() -> Self {
        Self {
            matched: false,
            left_index: None,
            right_index: None,
            elements_visited: 0,
            comparisons: 0,
        }
    }
}

/// Scans two sorted tables for a common sum: compare the current heads,
/// stop on equality, otherwise advance the side holding the smaller value,
/// and stop when either side runs out of elements.
///
/// Reports the first match encountered in scan order, which is
/// deterministic because tables are sorted by `(sum, mask)`.
pub fn two_pointer_scan(left: &HalfSumTable, right: &HalfSumTable) -> ScanOutcome {
    let l = left.entries();
    let r = right.entries();
    let mut out = ScanOutcome::unmatched();
    if l.is_empty() || r.is_empty() {
        return out;
    }
    let (mut i, mut j) = (0usize, 0usize);
    out.elements_visited = 2;
    loop {
        out.comparisons += 1;
        match l[i].sum.cmp(&r[j].sum) {
            std::cmp::Ordering::Equal => {
                out.matched = true;
                out.left_index = Some(i);
                out.right_index = Some(j);
                return out;
            }
            std::cmp::Ordering::Less => {
                i += 1;
                if i == l.len() {
                    return out;
                }
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                if j == r.len() {
                    return out;
                }
            }
        }
        out.elements_visited += 1;
    }
}
