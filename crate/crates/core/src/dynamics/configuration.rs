use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported number of cells. `2^MAX_CELLS` configurations must be
/// enumerable in memory.
pub const MAX_CELLS: usize = 20;

pub(crate) fn check_cells(n_cells: usize) -> Result<()> {
    if n_cells == 0 || n_cells > MAX_CELLS {
        return Err(Error::InvalidCellCount {
            got: n_cells,
            max: MAX_CELLS,
        });
    }
    Ok(())
}

/// A point of `B^N`: the boolean state of each of the `N` cells.
///
/// Cells are addressed with 1-based indices. The integer index of a
/// configuration stores cell 1 in the least significant bit, so `(1,0,1)`
/// has index `0b101 = 5` and `(1,1,0)` has index `0b011 = 3`. Textual form
/// writes cell 1 first: `(1,1,0)` prints as `110`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    index: u32,
    n_cells: u8,
}

impl Configuration {
    /// All-zero configuration of `n_cells` cells.
    pub fn zeros(n_cells: usize) -> Result<Self> {
        Self::from_index(n_cells, 0)
    }

    pub fn from_index(n_cells: usize, index: u32) -> Result<Self> {
        check_cells(n_cells)?;
        if u64::from(index) >= 1u64 << n_cells {
            return Err(Error::DimensionMismatch {
                expected: n_cells,
                found: 32 - index.leading_zeros() as usize,
            });
        }
        Ok(Self {
            index,
            n_cells: n_cells as u8,
        })
    }

    /// Builds a configuration from cell states, cell 1 first.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        check_cells(bits.len())?;
        let index = bits
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i));
        Ok(Self {
            index,
            n_cells: bits.len() as u8,
        })
    }

    /// Convenience constructor from 0/1 integers, cell 1 first.
    pub fn from_slice(bits: &[u8]) -> Result<Self> {
        let bools: Vec<bool> = bits.iter().map(|&b| b != 0).collect();
        Self::from_bits(&bools)
    }

    #[inline]
    pub fn n_cells(&self) -> usize {
        usize::from(self.n_cells)
    }

    #[inline]
    pub fn index(&self) -> u32 {
        self.index
    }

    /// State of cell `cell` (1-based).
    pub fn get(&self, cell: usize) -> Result<bool> {
        self.check_cell(cell)?;
        Ok(self.bit(cell - 1))
    }

    #[inline]
    pub(crate) fn bit(&self, zero_based: usize) -> bool {
        (self.index >> zero_based) & 1 == 1
    }

    /// Returns a copy with cell `cell` (1-based) set to `value`.
    pub fn with(&self, cell: usize, value: bool) -> Result<Self> {
        self.check_cell(cell)?;
        let mask = 1u32 << (cell - 1);
        let index = if value {
            self.index | mask
        } else {
            self.index & !mask
        };
        Ok(Self { index, ..*self })
    }

    /// The neighbor obtained by switching cell `cell` (1-based).
    pub fn flipped(&self, cell: usize) -> Result<Self> {
        self.check_cell(cell)?;
        Ok(Self {
            index: self.index ^ (1 << (cell - 1)),
            ..*self
        })
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.n_cells()).map(|i| self.bit(i)).collect()
    }

    pub fn check_cell(&self, cell: usize) -> Result<()> {
        if cell == 0 || cell > self.n_cells() {
            return Err(Error::CellOutOfRange {
                index: cell,
                n_cells: self.n_cells(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_same_dim(&self, n_cells: usize) -> Result<()> {
        if self.n_cells() != n_cells {
            return Err(Error::DimensionMismatch {
                expected: n_cells,
                found: self.n_cells(),
            });
        }
        Ok(())
    }

    /// Hamming distance to `other`.
    pub fn hamming(&self, other: &Self) -> Result<u32> {
        other.check_same_dim(self.n_cells())?;
        Ok((self.index ^ other.index).count_ones())
    }

    /// Every configuration of `n_cells` cells in increasing index order.
    pub fn all(n_cells: usize) -> Result<impl Iterator<Item = Configuration>> {
        check_cells(n_cells)?;
        let n = n_cells as u8;
        Ok((0..1u32 << n_cells).map(move |index| Configuration { index, n_cells: n }))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_cells() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

impl FromStr for Configuration {
    type Err = Error;

    /// Parses a bit string such as `101`, cell 1 first.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(1, format!("invalid bit `{other}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}
