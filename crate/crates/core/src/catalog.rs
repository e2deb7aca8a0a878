//! Witness codes attaining `N(d, d⊥)` for the fourteen tabulated pairs.
//!
//! Named classical codes are built from their standard constructions;
//! the remaining witnesses are embedded as explicit generator matrices.

use serde::{Deserialize, Serialize};

use crate::enumerative::{ell, pow2};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, LinearCode};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: (usize, usize),
    pub name: &'static str,
    /// Generator of `C`, or of `C⊥` when `via_dual` is set.
    pub generator: BinaryMatrix,
    pub via_dual: bool,
    /// `(n, d, d⊥)` of `C`.
    pub claimed: (usize, usize, usize),
}

impl CatalogEntry {
    /// The code whose parameters are claimed.
    pub fn code(&self) -> Result<LinearCode> {
        let stored = LinearCode::from_generator(&self.generator)?;
        if self.via_dual {
            stored.dual()
        } else {
            Ok(stored)
        }
    }
}

const N53: &str = "
10000001111
01000110011
00101010101
00011101010
";

const N54: &str = "
1000000001111
0100001110001
0010010110110
0001011011010
0000111101101
";

const N55: &str = "
1000000000001111
0100000000110011
0010000001010101
0001000001101010
0000100010010110
0000010010101011
0000001011011011
0000000111101101
";

const N63: &str = "
100000011111
010001100111
001010101011
000111010101
";

// generator of the dual code
const N64_DUAL: &str = "
10000000000111
01000000001011
00100000001101
00010000001110
00001000010011
00000100010101
00000010010110
00000001011001
00000000111010
";

// printed as the dual generator; the matrix itself generates the (6,5) code
const N65: &str = "
10000000000011111
01000000001100111
00100000010101011
00010000011010101
00001000100101101
00000100101010110
00000010110110111
00000001111011011
";

const N66: &str = "
100000000000011111
010000000001100111
001000000010101011
000100000011010101
000010000100101101
000001000101010110
000000100110110111
000000010111011011
000000001111101110
";

/// Parity-check matrix of the `[2^r − 1, 2^r − 1 − r, 3]` Hamming code:
/// every nonzero column of length `r`. Its row space is the simplex code.
fn all_nonzero_columns(r: usize) -> BinaryMatrix {
    let n = (1usize << r) - 1;
    let rows = (0..r)
        .map(|i| {
            (0..n).fold(0u64, |acc, j| {
                acc | (u64::from(((j + 1) >> i) & 1 == 1) << j)
            })
        })
        .collect();
    BinaryMatrix::from_rows(rows, n).expect("r <= 6")
}

pub fn hamming(r: usize) -> Result<LinearCode> {
    LinearCode::from_generator(&all_nonzero_columns(r))?.dual()
}

pub fn simplex(r: usize) -> Result<LinearCode> {
    hamming(r)?.dual()
}

/// First-order Reed–Muller code `RM(1, r)`: evaluations of `1, x_1, …, x_r`
/// at all `2^r` points.
pub fn reed_muller_first_order(r: usize) -> Result<LinearCode> {
    let n = 1usize << r;
    let mut rows = vec![if n == 64 { u64::MAX } else { (1u64 << n) - 1 }];
    for i in 0..r {
        rows.push((0..n).fold(0u64, |acc, p| acc | (u64::from((p >> i) & 1 == 1) << p)));
    }
    LinearCode::from_generator(&BinaryMatrix::from_rows(rows, n)?)
}

fn matrix(text: &str) -> BinaryMatrix {
    BinaryMatrix::parse(text).expect("embedded matrix")
}

fn named(
    key: (usize, usize),
    name: &'static str,
    code: Result<LinearCode>,
    claimed: (usize, usize, usize),
) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        key,
        name,
        generator: code?.generator().clone(),
        via_dual: false,
        claimed,
    })
}

fn explicit(
    key: (usize, usize),
    name: &'static str,
    text: &str,
    via_dual: bool,
    claimed: (usize, usize, usize),
) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        key,
        name,
        generator: matrix(text),
        via_dual,
        claimed,
    })
}

/// The fourteen tabulated `(d, d⊥)` pairs, in table order.
pub const KEYS: [(usize, usize); 14] = [
    (3, 3),
    (4, 3),
    (4, 4),
    (5, 3),
    (5, 4),
    (5, 5),
    (6, 3),
    (6, 4),
    (6, 5),
    (6, 6),
    (7, 3),
    (7, 4),
    (8, 3),
    (8, 4),
];

pub fn get(d: usize, dperp: usize) -> Result<CatalogEntry> {
    let last = |c: Result<LinearCode>| c.and_then(|c| c.puncture(c.len() - 1));
    match (d, dperp) {
        (3, 3) => named(
            (3, 3),
            "[6,3,3] shortened Hamming code",
            hamming(3).and_then(|c| c.shorten(6)),
            (6, 3, 3),
        ),
        // the Hamming code has (d, d⊥) = (3, 4); its dual is the witness
        (4, 3) => Ok(CatalogEntry {
            key: (4, 3),
            name: "[7,3,4] simplex code (dual of the [7,4,3] Hamming code)",
            generator: hamming(3)?.generator().clone(),
            via_dual: true,
            claimed: (7, 4, 3),
        }),
        (4, 4) => named(
            (4, 4),
            "[8,4,4] extended Hamming code",
            hamming(3).and_then(|c| c.extend()),
            (8, 4, 4),
        ),
        (5, 3) => explicit((5, 3), "[11,4,5] code", N53, false, (11, 5, 3)),
        (5, 4) => explicit((5, 4), "[13,5,5] code", N54, false, (13, 5, 4)),
        (5, 5) => explicit((5, 5), "[16,8,5] code", N55, false, (16, 5, 5)),
        (6, 3) => explicit((6, 3), "[12,4,6] code", N63, false, (12, 6, 3)),
        (6, 4) => explicit(
            (6, 4),
            "[14,5,6] code (dual generator)",
            N64_DUAL,
            true,
            (14, 6, 4),
        ),
        (6, 5) => explicit((6, 5), "[17,8,6] code", N65, false, (17, 6, 5)),
        (6, 6) => explicit((6, 6), "[18,9,6] code", N66, false, (18, 6, 6)),
        (7, 3) => named(
            (7, 3),
            "[14,4,7] punctured simplex code",
            last(simplex(4)),
            (14, 7, 3),
        ),
        (7, 4) => named(
            (7, 4),
            "[15,5,7] punctured first-order Reed-Muller code",
            last(reed_muller_first_order(4)),
            (15, 7, 4),
        ),
        (8, 3) => named((8, 3), "[15,4,8] simplex code", simplex(4), (15, 8, 3)),
        (8, 4) => named(
            (8, 4),
            "[16,5,8] first-order Reed-Muller code",
            reed_muller_first_order(4),
            (16, 8, 4),
        ),
        _ => Err(Error::UnknownKey { d, dperp }),
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    KEYS.iter()
        .map(|&(d, e)| get(d, e).expect("catalog key"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedEntry {
    pub key: (usize, usize),
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub dperp_direct: usize,
    pub dperp_macwilliams: usize,
    pub weight_distribution: Vec<u128>,
}

/// Recomputes `(n, d, d⊥)` of an entry, computing `d⊥` both by enumerating
/// the dual and through the MacWilliams transform.
pub fn verify(entry: &CatalogEntry) -> Result<VerifiedEntry> {
    let fail = |msg: String| Error::CatalogMismatch {
        name: entry.name.to_string(),
        msg,
    };
    let code = entry.code()?;
    let v = VerifiedEntry {
        key: entry.key,
        name: entry.name.to_string(),
        n: code.len(),
        m: code.dimension(),
        d: code.min_distance()?,
        dperp_direct: code.dual_distance_direct()?,
        dperp_macwilliams: code.dual_distance_macwilliams()?,
        weight_distribution: code.weight_distribution()?.counts().to_vec(),
    };
    let got = (v.n, v.d, v.dperp_direct);
    if got != entry.claimed {
        return Err(fail(format!(
            "computed (n, d, d⊥) = {got:?}, claimed {:?}",
            entry.claimed
        )));
    }
    if v.dperp_macwilliams != v.dperp_direct {
        return Err(fail(format!(
            "dual distance {} by enumeration but {} by MacWilliams",
            v.dperp_direct, v.dperp_macwilliams
        )));
    }
    if (v.d, v.dperp_direct) != entry.key {
        return Err(fail(format!(
            "distances {:?} do not match key {:?}",
            (v.d, v.dperp_direct),
            entry.key
        )));
    }
    Ok(v)
}

pub fn verify_all() -> Result<Vec<VerifiedEntry>> {
    entries().iter().map(verify).collect()
}

/// `2^{n−m} ≥ ℓ(n, d)`, a necessary condition for any `[n, m, d]` code.
pub fn satisfies_ell_bound(n: usize, m: usize, d: usize) -> bool {
    pow2(n - m) >= ell(n, d)
}
