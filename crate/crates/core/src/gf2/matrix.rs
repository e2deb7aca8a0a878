use std::fmt;

use crate::error::{Error, Result};

/// Widest supported row, in bits. One row is one machine word.
pub const MAX_COLS: usize = 64;

/// A dense matrix over GF(2) with rows packed into `u64` words.
///
/// Bit `j` of a row word (least significant first) is column `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: Vec<u64>, cols: usize) -> Result<Self> {
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if cols > MAX_COLS {
            return Err(Error::TooManyColumns {
                cols,
                max: MAX_COLS,
            });
        }
        let mask = row_mask(cols);
        Ok(BinaryMatrix {
            cols,
            rows: rows.into_iter().map(|r| r & mask).collect(),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_rows((0..n).map(|i| 1u64 << i).collect(), n)
    }

    /// Builds a matrix from rows of 0/1 values.
    pub fn from_bits<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut packed = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    len: r.len(),
                    expected: cols,
                });
            }
            packed.push(pack(r.iter().map(|&b| b != 0)));
        }
        Self::from_rows(packed, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn row_words(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows() && j < self.cols,
            "entry ({i}, {j}) out of range"
        );
        self.rows[i] >> j & 1 == 1
    }

    /// Reduced row echelon form and rank. Zero rows are kept at the bottom so
    /// the shape is unchanged.
    pub fn rref(&self) -> (BinaryMatrix, usize) {
        let mut rows = self.rows.clone();
        let rank = rref_in_place(&mut rows, self.cols);
        (
            BinaryMatrix {
                cols: self.cols,
                rows,
            },
            rank,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// The sub-matrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<BinaryMatrix> {
        for &c in cols {
            if c >= self.cols {
                return Err(Error::InvalidCoordinate {
                    index: c,
                    n: self.cols,
                });
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| pack(cols.iter().map(|&c| r >> c & 1 == 1)))
            .collect();
        BinaryMatrix::from_rows(rows, cols.len())
    }

    /// Removes column `j`, shifting higher columns down.
    pub fn delete_column(&self, j: usize) -> Result<BinaryMatrix> {
        if j >= self.cols {
            return Err(Error::InvalidCoordinate {
                index: j,
                n: self.cols,
            });
        }
        if self.cols == 1 {
            return Err(Error::EmptyMatrix);
        }
        let low = (1u64 << j) - 1;
        let rows = self
            .rows
            .iter()
            .map(|&r| (r & low) | ((r >> 1) & !low))
            .collect();
        BinaryMatrix::from_rows(rows, self.cols - 1)
    }

    pub fn transpose(&self) -> Result<BinaryMatrix> {
        let rows = (0..self.cols)
            .map(|j| pack(self.rows.iter().map(|&r| r >> j & 1 == 1)))
            .collect();
        BinaryMatrix::from_rows(rows, self.rows())
    }

    /// `self · otherᵀ` over GF(2).
    pub fn mul_transpose(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::InvalidParameter(format!(
                "column counts differ: {} vs {}",
                self.cols, other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|&a| pack(other.rows.iter().map(|&b| (a & b).count_ones() & 1 == 1)))
            .collect();
        BinaryMatrix::from_rows(rows, other.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Parses the line-oriented text format: one row of `0`/`1` characters per
    /// line, optional spaces between entries, blank lines and `#` comments
    /// ignored.
    pub fn parse(text: &str) -> Result<BinaryMatrix> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::with_capacity(line.len());
            for ch in line.chars() {
                match ch {
                    '0' => row.push(0),
                    '1' => row.push(1),
                    ' ' | '\t' => {}
                    other => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            msg: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("row has {} entries, expected {}", row.len(), first.len()),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no matrix rows".into(),
            });
        }
        BinaryMatrix::from_bits(&rows)
    }

    /// Writes the text format without separators, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows() * (self.cols + 1));
        for &r in &self.rows {
            out.push_str(&format_row(r, self.cols));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows(), self.cols)?;
        for &r in &self.rows {
            writeln!(f, "  {}", format_row(r, self.cols))?;
        }
        Ok(())
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn row_mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

pub(crate) fn pack<I: IntoIterator<Item = bool>>(bits: I) -> u64 {
    bits.into_iter()
        .enumerate()
        .fold(0u64, |acc, (j, b)| acc | (u64::from(b) << j))
}

pub(crate) fn format_row(r: u64, cols: usize) -> String {
    (0..cols)
        .map(|j| if r >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Gauss-Jordan elimination on packed rows. Pivots are taken left to right;
/// returns the rank and leaves zero rows at the end.
pub(crate) fn rref_in_place(rows: &mut [u64], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let bit = 1u64 << col;
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
