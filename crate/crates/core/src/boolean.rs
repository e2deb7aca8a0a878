//! Truth-table Boolean functions and brute-force checks of resilience and
//! the extended propagation criterion EPC(ℓ) of order k.
//!
//! Inputs are indexed by integers: bit `j` of the index is variable
//! `x_{j+1}`. Outputs are `m`-bit integers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_report, MethodSet, TrueValueSource};
use crate::error::{Error, Result};

/// Largest arity for which a single-output table is accepted.
pub const MAX_ARITY: usize = 24;
/// Largest arity for resilience and EPC checks.
pub const MAX_CHECK_ARITY: usize = 20;
/// Widest supported output.
pub const MAX_OUTPUTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    m: usize,
    table: Vec<u32>,
}

impl TruthTable {
    pub fn new(n: usize, m: usize, table: Vec<u32>) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::TooLarge(format!("arity {n} exceeds {MAX_ARITY}")));
        }
        if m == 0 || m > MAX_OUTPUTS {
            return Err(Error::InvalidParameter(format!(
                "output width must be 1..={MAX_OUTPUTS}, got {m}"
            )));
        }
        if table.len() != 1 << n {
            return Err(Error::InvalidParameter(format!(
                "table has {} entries, expected 2^{n}",
                table.len()
            )));
        }
        if let Some(v) = table.iter().find(|&&v| v >> m != 0) {
            return Err(Error::InvalidParameter(format!(
                "value {v} does not fit in {m} bits"
            )));
        }
        Ok(TruthTable { n, m, table })
    }

    /// Single-output function from a closure over the input index.
    pub fn from_fn<F: Fn(u32) -> bool>(n: usize, f: F) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::TooLarge(format!("arity {n} exceeds {MAX_ARITY}")));
        }
        Self::new(n, 1, (0..1u32 << n).map(|x| u32::from(f(x))).collect())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.table
    }

    /// `x ↦ f(x ⊕ shift)`.
    pub fn translate(&self, shift: u32) -> TruthTable {
        let table = (0..self.table.len() as u32)
            .map(|x| self.eval(x ^ shift))
            .collect();
        TruthTable {
            n: self.n,
            m: self.m,
            table,
        }
    }

    /// Parses `n=<int> m=<int>` followed by `2^n` lines of `m`-bit binary
    /// strings (most significant output bit first) in input-index order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty file".into(),
        })?;
        let bad = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut n = None;
        let mut m = None;
        for tok in header.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| bad(hl, "expected key=value"))?;
            let v: usize = v
                .parse()
                .map_err(|_| bad(hl, "header value is not an integer"))?;
            match k {
                "n" => n = Some(v),
                "m" => m = Some(v),
                _ => return Err(bad(hl, "unknown header key")),
            }
        }
        let (n, m) = (
            n.ok_or_else(|| bad(hl, "missing n"))?,
            m.ok_or_else(|| bad(hl, "missing m"))?,
        );
        if n > MAX_ARITY {
            return Err(Error::TooLarge(format!("arity {n} exceeds {MAX_ARITY}")));
        }
        let mut table = Vec::with_capacity(1 << n);
        for (ln, l) in lines {
            if l.len() != m || !l.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(bad(ln, &format!("expected {m} binary digits")));
            }
            table.push(u32::from_str_radix(l, 2).map_err(|_| bad(ln, "bad binary value"))?);
        }
        if table.len() != 1 << n {
            return Err(bad(
                0,
                &format!(
                    "found {} table lines, expected {}",
                    table.len(),
                    1usize << n
                ),
            ));
        }
        TruthTable::new(n, m, table)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={} m={}\n", self.n, self.m);
        for &v in &self.table {
            s.push_str(&format!("{:0width$b}\n", v, width = self.m));
        }
        s
    }
}

/// `D_Δ f (x) = f(x) ⊕ f(x ⊕ Δ)` of a single-output function.
pub fn derivative(f: &TruthTable, delta: u32) -> Result<TruthTable> {
    if f.m != 1 {
        return Err(Error::Arity(format!(
            "derivative needs a single output, got {}",
            f.m
        )));
    }
    if (delta as u64) >> f.n != 0 {
        return Err(Error::Arity(format!(
            "Δ = {delta:#b} has more than {} bits",
            f.n
        )));
    }
    let table = (0..f.table.len() as u32)
        .map(|x| f.eval(x) ^ f.eval(x ^ delta))
        .collect();
    Ok(TruthTable {
        n: f.n,
        m: 1,
        table,
    })
}

/// A fixing of some inputs under which the output is not uniform.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixing {
    /// Fixed input positions, zero-based.
    pub positions: Vec<usize>,
    /// Values of the fixed inputs, in the order of `positions`.
    pub values: Vec<u8>,
    pub output: u32,
    pub count: u64,
    /// Uniform count `2^{n−k−m}`, absent when `n − k < m`.
    pub expected: Option<u64>,
}

fn check_arity(phi: &TruthTable) -> Result<()> {
    if phi.n > MAX_CHECK_ARITY {
        return Err(Error::TooLarge(format!(
            "arity {} exceeds {MAX_CHECK_ARITY} for resilience checks",
            phi.n
        )));
    }
    Ok(())
}

/// All `k`-subsets of `0..n` as bit masks, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn go(n: usize, k: usize, start: usize, mask: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..=n - k {
            go(n, k - 1, i + 1, mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, 0, 0, &mut out);
    }
    out
}

fn compress(x: u32, mask: u32) -> u32 {
    let (mut out, mut bit, mut mm) = (0u32, 0, mask);
    while mm != 0 {
        let low = mm.trailing_zeros();
        out |= (x >> low & 1) << bit;
        bit += 1;
        mm &= mm - 1;
    }
    out
}

/// First fixing of `k` inputs under which some output value does not occur
/// exactly `2^{n−k−m}` times, or `None` if `phi` is `k`-resilient.
pub fn resilience_counterexample(phi: &TruthTable, k: usize) -> Result<Option<Fixing>> {
    check_arity(phi)?;
    if k > phi.n {
        return Err(Error::InvalidParameter(format!(
            "order {k} exceeds arity {}",
            phi.n
        )));
    }
    let free = phi.n - k;
    for mask in subsets(phi.n, k) {
        let mut counts = vec![0u64; 1 << (k + phi.m)];
        for (x, &y) in phi.table.iter().enumerate() {
            counts[(compress(x as u32, mask) << phi.m | y) as usize] += 1;
        }
        let target = (free >= phi.m).then(|| 1u64 << (free - phi.m));
        if let Some(idx) = counts.iter().position(|&c| Some(c) != target) {
            let positions: Vec<usize> = (0..phi.n).filter(|&i| mask >> i & 1 == 1).collect();
            let alpha = idx >> phi.m;
            return Ok(Some(Fixing {
                values: (0..k).map(|b| (alpha >> b & 1) as u8).collect(),
                positions,
                output: (idx & ((1 << phi.m) - 1)) as u32,
                count: counts[idx],
                expected: target,
            }));
        }
    }
    Ok(None)
}

/// Whether the output stays uniform when any `k` inputs are fixed to any values.
pub fn is_resilient(phi: &TruthTable, k: usize) -> Result<bool> {
    resilience_counterexample(phi, k).map(|c| c.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpcViolation {
    pub delta: u32,
    pub fixing: Fixing,
}

/// Smallest-Δ violation of EPC(ℓ) of order `k`, if any.
pub fn epc_counterexample(f: &TruthTable, ell: usize, k: usize) -> Result<Option<EpcViolation>> {
    check_arity(f)?;
    if f.m != 1 {
        return Err(Error::Arity(format!(
            "EPC needs a single output, got {}",
            f.m
        )));
    }
    if ell == 0 || ell > f.n || k > f.n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= n and k <= n, got ell = {ell}, k = {k}, n = {}",
            f.n
        )));
    }
    let deltas: Vec<u32> = (1..1u32 << f.n)
        .filter(|d| d.count_ones() as usize <= ell)
        .collect();
    deltas
        .par_iter()
        .map(|&delta| {
            let df = derivative(f, delta)?;
            Ok(resilience_counterexample(&df, k)?.map(|fixing| EpcViolation { delta, fixing }))
        })
        .find_map_first(|r: Result<Option<EpcViolation>>| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// `D_Δ f` is `k`-resilient for every Δ with `1 ≤ wt(Δ) ≤ ℓ`.
pub fn satisfies_epc(f: &TruthTable, ell: usize, k: usize) -> Result<bool> {
    epc_counterexample(f, ell, k).map(|c| c.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RequirementStatus {
    /// `N` is known; the input length is exactly `2N`.
    Exact,
    /// Only bounds on `N` are known.
    Interval,
}

/// Input length of EPC(ℓ) of order `k` functions obtained from a code with
/// `d = k + 1` and `d⊥ = ℓ + 1` on `2N(d, d⊥)` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpcRequirement {
    pub d: usize,
    pub dperp: usize,
    pub min_input_length: Option<usize>,
    pub interval: (usize, Option<usize>),
    pub status: RequirementStatus,
    pub source: Option<String>,
}

pub fn epc_requirement(ell: usize, k: usize, methods: &MethodSet) -> Result<EpcRequirement> {
    let (d, dperp) = (k + 1, ell + 1);
    if d.min(dperp) <= 2 {
        // a distance of 1 is implied by 2, and N(2, δ) = δ
        let n = d.max(dperp).max(2);
        return Ok(EpcRequirement {
            d,
            dperp,
            min_input_length: Some(2 * n),
            interval: (2 * n, Some(2 * n)),
            status: RequirementStatus::Exact,
            source: Some("repetition code".into()),
        });
    }
    let r = bound_report(d, dperp, methods)?;
    if let Some(t) = &r.true_value {
        let source = match &t.source {
            TrueValueSource::Repetition => "repetition code".to_string(),
            TrueValueSource::Catalog {
                name,
                lower_bound_met: true,
            } => format!("{name}, optimal by computed lower bound"),
            TrueValueSource::Catalog {
                name,
                lower_bound_met: false,
            } => {
                format!("{name}, optimal by published exhaustive search")
            }
        };
        return Ok(EpcRequirement {
            d,
            dperp,
            min_input_length: Some(2 * t.n),
            interval: (2 * t.n, Some(2 * t.n)),
            status: RequirementStatus::Exact,
            source: Some(source),
        });
    }
    let lo = 2 * r.best_lb;
    let hi = r.best_ub.map(|u| 2 * u);
    let exact = hi == Some(lo);
    Ok(EpcRequirement {
        d,
        dperp,
        min_input_length: exact.then_some(lo),
        interval: (lo, hi),
        status: if exact {
            RequirementStatus::Exact
        } else {
            RequirementStatus::Interval
        },
        source: None,
    })
}
