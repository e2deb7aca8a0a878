//! Exact combinatorics: binomials, Krawtchouk polynomials, the MacWilliams
//! transform and the sphere-like function `ℓ(n, d)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf2::WeightDistribution;

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Σ_{i=lo}^{hi} C(n, i)`; empty when `hi < lo`.
pub fn binomial_sum(n: usize, lo: usize, hi: usize) -> ExactInt {
    (lo..=hi).map(|i| binomial(n, i)).sum()
}

/// Krawtchouk polynomial `P_w(i) = Σ_j (−1)^j C(i, j) C(n − i, w − j)`.
pub fn krawtchouk(n: usize, w: usize, i: usize) -> ExactInt {
    assert!(w <= n && i <= n, "krawtchouk({n}, {w}, {i}) out of range");
    (0..=w)
        .map(|j| {
            let t = binomial(i, j) * binomial(n - i, w - j);
            if j % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum()
}

/// All values `P_w(i)` for `0 ≤ w, i ≤ n`, indexed `[w][i]`.
pub fn krawtchouk_table(n: usize) -> Vec<Vec<ExactInt>> {
    (0..=n)
        .map(|w| (0..=n).map(|i| krawtchouk(n, w, i)).collect())
        .collect()
}

/// Dual weight distribution `A'_w = 2^{-m} Σ_i A_i P_w(i)`.
///
/// Fails when some `A'_w` is negative or fractional, which means `a` cannot
/// be the distribution of an `[n, m]` linear code.
pub fn macwilliams(a: &WeightDistribution, n: usize, m: usize) -> Result<WeightDistribution> {
    if a.len() != n {
        return Err(Error::InvalidParameter(format!(
            "distribution has length {}, expected {n}",
            a.len()
        )));
    }
    if a.dimension() != m {
        return Err(Error::NotADistribution(format!("total is not 2^{m}")));
    }
    let size = BigInt::one() << m;
    let table = krawtchouk_table(n);
    let mut out = Vec::with_capacity(n + 1);
    for (w, row) in table.iter().enumerate() {
        let s: BigInt = a
            .counts()
            .iter()
            .zip(row)
            .map(|(&ai, p)| BigInt::from(ai) * p)
            .sum();
        let (q, r) = s.div_rem(&size);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::NotADistribution(format!("A'_{w} = {s}/{size}")));
        }
        out.push(q.to_u128().expect("dual counts fit in u128 for n <= 64"));
    }
    WeightDistribution::new(out)
}

/// `ℓ(n, d)`: `Σ_{i ≤ (d−1)/2} C(n, i)` for odd `d`, and
/// `Σ_{i < d/2} C(n, i) + C(n − 1, d/2 − 1)` for even `d`.
///
/// Any `[n, m, d]` code satisfies `2^{n−m} ≥ ℓ(n, d)`.
pub fn ell(n: usize, d: usize) -> ExactInt {
    assert!(n >= 1 && d >= 1, "ell needs n, d >= 1");
    if d % 2 == 1 {
        binomial_sum(n, 0, (d - 1) / 2)
    } else {
        binomial_sum(n, 0, d / 2 - 1) + binomial(n - 1, d / 2 - 1)
    }
}

/// `2^e` as an exact integer.
pub fn pow2(e: usize) -> ExactInt {
    BigInt::one() << e
}
