use serde::{Deserialize, Serialize};

use super::matrix::{rref_in_place, BinaryMatrix};
use crate::enumerative;
use crate::error::{Error, Result};

/// Largest dimension whose codewords are enumerated directly.
pub const MAX_ENUM_DIM: usize = 28;

/// Largest length accepted by [`enumerate_codes`].
pub const MAX_ENUM_CODES_LEN: usize = 5;

/// Binary linear code, stored through the RREF of a full-rank generator.
///
/// Equal codes have equal generators, so `==` is code equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearCode {
    generator: BinaryMatrix,
}

// codes always have length at least 1
#[allow(clippy::len_without_is_empty)]
impl LinearCode {
    /// Code generated by `g`, which must have full row rank.
    pub fn from_generator(g: &BinaryMatrix) -> Result<Self> {
        let (r, rank) = g.rref();
        if rank != g.rows() {
            return Err(Error::RankDeficient);
        }
        Ok(LinearCode { generator: r })
    }

    /// Row space of `g`; dependent rows are dropped.
    pub fn span(g: &BinaryMatrix) -> Result<Self> {
        Self::from_rows(g.row_words().to_vec(), g.cols())
    }

    fn from_rows(mut rows: Vec<u64>, n: usize) -> Result<Self> {
        let rank = rref_in_place(&mut rows, n);
        if rank == 0 {
            return Err(Error::ZeroCode);
        }
        rows.truncate(rank);
        Ok(LinearCode {
            generator: BinaryMatrix::from_rows(rows, n)?,
        })
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn len(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn contains(&self, v: u64) -> bool {
        let mut rows = self.generator.row_words().to_vec();
        rows.push(v);
        rref_in_place(&mut rows, self.len()) == self.dimension()
    }

    /// Pivot column of each generator row.
    fn pivots(&self) -> Vec<usize> {
        self.generator
            .row_words()
            .iter()
            .map(|r| r.trailing_zeros() as usize)
            .collect()
    }

    /// Parity-check matrix `H` with `n − m` rows and `G·Hᵀ = 0`; its row space
    /// is the dual code.
    pub fn parity_check(&self) -> Result<BinaryMatrix> {
        let (n, m) = (self.len(), self.dimension());
        if m == n {
            return Err(Error::FullSpace);
        }
        let pivots = self.pivots();
        let g = self.generator.row_words();
        let rows = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut h = 1u64 << f;
                for (i, &p) in pivots.iter().enumerate() {
                    if g[i] >> f & 1 == 1 {
                        h |= 1 << p;
                    }
                }
                h
            })
            .collect();
        BinaryMatrix::from_rows(rows, n)
    }

    pub fn dual(&self) -> Result<LinearCode> {
        LinearCode::from_generator(&self.parity_check()?)
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.dimension() > MAX_ENUM_DIM {
            return Err(Error::DimensionTooLarge {
                m: self.dimension(),
                max: MAX_ENUM_DIM,
            });
        }
        Ok(())
    }

    /// Minimum weight over all nonzero codewords, by enumeration.
    pub fn min_distance(&self) -> Result<usize> {
        self.check_enumerable()?;
        let mut best = self.len();
        for_each_nonzero_codeword(self.generator.row_words(), |c| {
            best = best.min(c.count_ones() as usize);
        });
        Ok(best)
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        self.check_enumerable()?;
        let mut counts = vec![0u128; self.len() + 1];
        counts[0] = 1;
        for_each_nonzero_codeword(self.generator.row_words(), |c| {
            counts[c.count_ones() as usize] += 1;
        });
        Ok(WeightDistribution { counts })
    }

    /// Minimum distance of the dual code. Enumerates the dual directly when
    /// it is small enough and goes through the MacWilliams transform of this
    /// code's weight distribution otherwise.
    pub fn dual_distance(&self) -> Result<usize> {
        if self.dimension() == self.len() {
            return Err(Error::FullSpace);
        }
        if self.len() - self.dimension() <= MAX_ENUM_DIM {
            self.dual_distance_direct()
        } else {
            self.dual_distance_macwilliams()
        }
    }

    pub fn dual_distance_direct(&self) -> Result<usize> {
        self.dual()?.min_distance()
    }

    pub fn dual_distance_macwilliams(&self) -> Result<usize> {
        if self.dimension() == self.len() {
            return Err(Error::FullSpace);
        }
        let dual = self.weight_distribution()?.macwilliams()?;
        Ok(dual
            .min_nonzero_weight()
            .expect("dual of a proper subspace is nonzero"))
    }

    /// Deletes coordinate `j` from every codeword.
    pub fn puncture(&self, j: usize) -> Result<LinearCode> {
        let n = self.len();
        if j >= n {
            return Err(Error::InvalidCoordinate { index: j, n });
        }
        if n < 2 {
            return Err(Error::InvalidParameter(
                "cannot puncture a length-1 code".into(),
            ));
        }
        LinearCode::span(&self.generator.delete_column(j)?)
    }

    /// Keeps the codewords that vanish at coordinate `j` and deletes it.
    pub fn shorten(&self, j: usize) -> Result<LinearCode> {
        let n = self.len();
        if j >= n {
            return Err(Error::InvalidCoordinate { index: j, n });
        }
        let bit = 1u64 << j;
        let mut rows = self.generator.row_words().to_vec();
        if let Some(p) = rows.iter().position(|r| r & bit != 0) {
            let pivot = rows.remove(p);
            for r in rows.iter_mut() {
                if *r & bit != 0 {
                    *r ^= pivot;
                }
            }
        }
        if rows.is_empty() {
            return Err(Error::ZeroCode);
        }
        let m = BinaryMatrix::from_rows(rows, n)?.delete_column(j)?;
        LinearCode::span(&m)
    }

    /// Appends an overall parity bit.
    pub fn extend(&self) -> Result<LinearCode> {
        let n = self.len();
        let rows = self
            .generator
            .row_words()
            .iter()
            .map(|&r| r | (u64::from(r.count_ones() & 1) << n))
            .collect();
        LinearCode::from_generator(&BinaryMatrix::from_rows(rows, n + 1)?)
    }
}

/// Calls `f` on every nonzero combination of `rows`, in Gray-code order.
pub(crate) fn for_each_nonzero_codeword<F: FnMut(u64)>(rows: &[u64], mut f: F) {
    let m = rows.len();
    let mut c = 0u64;
    for i in 1u64..(1u64 << m) {
        c ^= rows[i.trailing_zeros() as usize];
        f(c);
    }
}

/// Codeword weight counts `(A_0, …, A_n)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightDistribution {
    counts: Vec<u128>,
}

#[allow(clippy::len_without_is_empty)]
impl WeightDistribution {
    /// Validates `A_0 = 1` and that the total is a power of two.
    pub fn new(counts: Vec<u128>) -> Result<Self> {
        if counts.first() != Some(&1) {
            return Err(Error::NotADistribution("A_0 must be 1".into()));
        }
        let total: u128 = counts.iter().sum();
        if !total.is_power_of_two() {
            return Err(Error::NotADistribution(format!(
                "total {total} is not a power of two"
            )));
        }
        Ok(WeightDistribution { counts })
    }

    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len() - 1
    }

    /// `log2` of the number of codewords.
    pub fn dimension(&self) -> usize {
        self.counts.iter().sum::<u128>().trailing_zeros() as usize
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    pub fn is_even(&self) -> bool {
        self.counts.iter().skip(1).step_by(2).all(|&a| a == 0)
    }

    /// Weight distribution of the dual code.
    pub fn macwilliams(&self) -> Result<WeightDistribution> {
        enumerative::macwilliams(self, self.len(), self.dimension())
    }
}

/// Every `[n, m]` code exactly once, generated directly as the RREF matrices
/// with `m` pivots.
pub fn enumerate_codes(n: usize, m: usize) -> Result<Vec<LinearCode>> {
    if n > MAX_ENUM_CODES_LEN {
        return Err(Error::TooLarge(format!(
            "enumerate_codes is limited to n <= {MAX_ENUM_CODES_LEN}, got {n}"
        )));
    }
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    let mut out = Vec::new();
    for pivot_mask in 0u64..(1 << n) {
        if pivot_mask.count_ones() as usize != m {
            continue;
        }
        let pivots: Vec<usize> = (0..n).filter(|&c| pivot_mask >> c & 1 == 1).collect();
        // Free positions in row i: non-pivot columns right of its pivot.
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (p + 1..n).filter(|&c| pivot_mask >> c & 1 == 0).collect())
            .collect();
        let total_free: usize = free.iter().map(Vec::len).sum();
        for fill in 0u64..(1 << total_free) {
            let mut bit = 0;
            let rows = pivots
                .iter()
                .zip(&free)
                .map(|(&p, cols)| {
                    let mut r = 1u64 << p;
                    for &c in cols {
                        if fill >> bit & 1 == 1 {
                            r |= 1 << c;
                        }
                        bit += 1;
                    }
                    r
                })
                .collect();
            out.push(LinearCode {
                generator: BinaryMatrix::from_rows(rows, n)?,
            });
        }
    }
    Ok(out)
}
