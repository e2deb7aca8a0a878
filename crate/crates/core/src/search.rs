//! Exhaustive existence search for `[n, m]` codes with minimum distance at
//! least `d` and dual distance at least `d⊥`.
//!
//! Generators are taken in systematic form `G = [I_m | P]`. Columns of `P`
//! are chosen one at a time in nondecreasing order (column permutations
//! preserve both distances). Two prunes run on partial matrices:
//!
//! * weight: a nonzero message whose codeword weight, plus the number of
//!   columns still to place, is below `d` cannot be rescued;
//! * dual: `d⊥ ≥ e` iff every `e − 1` columns of `G` are independent, so a
//!   new column equal to the sum of at most `e − 2` placed columns is
//!   rejected immediately.
//!
//! Partitions of the tree by the first column of `P` can be explored in
//! parallel; every witness is revalidated by direct distance computation.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_report, griesmer_length, trivial_value, MethodSet};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, LinearCode};

/// Longest length accepted by [`exists_code`].
pub const MAX_SEARCH_LEN: usize = 20;

const CHECKPOINT_HEADER: &str = "# dualdist search checkpoint v1";
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Explore first-column partitions sequentially; witnesses are then
    /// reproducible.
    pub sequential: bool,
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Found,
    ExhaustedNone,
    AbortedNodes,
    AbortedTime,
}

impl Verdict {
    pub fn is_aborted(self) -> bool {
        matches!(self, Verdict::AbortedNodes | Verdict::AbortedTime)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub n: usize,
    pub d: usize,
    pub dperp: usize,
    pub verdict: Verdict,
    pub witness: Option<LinearCode>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub wall_budget: Option<Duration>,
    /// Dimensions left after pruning by the Griesmer and Singleton-type bounds.
    pub dimensions: Vec<usize>,
}

/// Dimensions `m` that survive the Griesmer bound on `C` and `C⊥`, and the
/// binary Singleton tightening `d ≤ n − m`, `d⊥ ≤ m` when both distances
/// are at least 3.
pub fn admissible_dimensions(n: usize, d: usize, dperp: usize) -> Vec<usize> {
    (1..n)
        .filter(|&m| griesmer_length(m, d) <= n && griesmer_length(n - m, dperp) <= n)
        .filter(|&m| d < 3 || dperp < 3 || (m + d <= n && m >= dperp))
        .collect()
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    aborted: Mutex<Option<Verdict>>,
    start: Instant,
    budget: Budget,
}

impl Shared {
    fn add_nodes(&self, k: u64) -> bool {
        let total = self.nodes.fetch_add(k, Ordering::Relaxed) + k;
        let over = if self.budget.max_nodes.is_some_and(|cap| total > cap) {
            Some(Verdict::AbortedNodes)
        } else if self
            .budget
            .max_time
            .is_some_and(|t| self.start.elapsed() > t)
        {
            Some(Verdict::AbortedTime)
        } else {
            None
        };
        if let Some(v) = over {
            self.aborted.lock().unwrap().get_or_insert(v);
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

enum Step {
    Found(Vec<u64>),
    Exhausted,
    Stopped,
}

struct Worker<'a> {
    m: usize,
    k: usize,
    d: u32,
    /// `e − 2`: largest subset size whose sum a new column must avoid.
    depth: usize,
    weights: Vec<u32>,
    /// `subset_sums[j][v]`: number of `j`-subsets of placed columns summing to `v`.
    subset_sums: Vec<Vec<u32>>,
    cols: Vec<u64>,
    shared: &'a Shared,
    pending: u64,
}

impl<'a> Worker<'a> {
    fn new(m: usize, k: usize, d: usize, dperp: usize, shared: &'a Shared) -> Self {
        let size = 1usize << m;
        let depth = dperp.saturating_sub(2);
        let mut w = Worker {
            m,
            k,
            d: d as u32,
            depth,
            weights: (0..size as u64).map(|u| u.count_ones()).collect(),
            subset_sums: vec![vec![0; size]; depth + 1],
            cols: Vec::with_capacity(k),
            shared,
            pending: 0,
        };
        w.subset_sums[0][0] = 1;
        for i in 0..m {
            w.add_sums(1 << i);
        }
        w
    }

    fn blocked(&self, c: u64) -> bool {
        self.subset_sums.iter().any(|layer| layer[c as usize] != 0)
    }

    fn add_sums(&mut self, c: u64) {
        for j in (1..=self.depth).rev() {
            let (lo, hi) = self.subset_sums.split_at_mut(j);
            let (prev, cur) = (&lo[j - 1], &mut hi[0]);
            for (v, &cnt) in prev.iter().enumerate() {
                if cnt != 0 {
                    cur[v ^ c as usize] += cnt;
                }
            }
        }
    }

    fn remove_sums(&mut self, c: u64) {
        for j in 1..=self.depth {
            let (lo, hi) = self.subset_sums.split_at_mut(j);
            let (prev, cur) = (&lo[j - 1], &mut hi[0]);
            for (v, &cnt) in prev.iter().enumerate() {
                if cnt != 0 {
                    cur[v ^ c as usize] -= cnt;
                }
            }
        }
    }

    /// Adds column `c` to every codeword weight; returns the minimum over
    /// nonzero messages.
    fn add_weights(&mut self, c: u64) -> u32 {
        let mut min = u32::MAX;
        for (u, w) in self.weights.iter_mut().enumerate().skip(1) {
            *w += (u as u64 & c).count_ones() & 1;
            min = min.min(*w);
        }
        min
    }

    fn remove_weights(&mut self, c: u64) {
        for (u, w) in self.weights.iter_mut().enumerate().skip(1) {
            *w -= (u as u64 & c).count_ones() & 1;
        }
    }

    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            let p = std::mem::take(&mut self.pending);
            return self.shared.add_nodes(p);
        }
        !self.shared.stop.load(Ordering::Relaxed) || self.pending != 1
    }

    fn flush(&mut self) {
        let p = std::mem::take(&mut self.pending);
        if p > 0 {
            self.shared.add_nodes(p);
        }
    }

    /// Tries `c` as the next column; recurses on success.
    fn place(&mut self, c: u64) -> Step {
        if !self.tick() {
            return Step::Stopped;
        }
        if self.blocked(c) {
            return Step::Exhausted;
        }
        let remaining = (self.k - self.cols.len() - 1) as u32;
        let min = self.add_weights(c);
        let step = if min + remaining < self.d {
            Step::Exhausted
        } else {
            self.add_sums(c);
            self.cols.push(c);
            let s = self.descend(c);
            self.cols.pop();
            self.remove_sums(c);
            s
        };
        self.remove_weights(c);
        step
    }

    fn descend(&mut self, from: u64) -> Step {
        if self.cols.len() == self.k {
            return Step::Found(self.cols.clone());
        }
        for c in from..(1u64 << self.m) {
            match self.place(c) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn systematic_generator(n: usize, m: usize, cols: &[u64]) -> Result<BinaryMatrix> {
    let rows = (0..m)
        .map(|i| {
            let mut r = 1u64 << i;
            for (j, &c) in cols.iter().enumerate() {
                r |= (c >> i & 1) << (m + j);
            }
            r
        })
        .collect();
    BinaryMatrix::from_rows(rows, n)
}

struct Checkpoint {
    done: HashSet<(usize, u64)>,
    file: Mutex<File>,
}

impl Checkpoint {
    fn open(path: &Path, n: usize, d: usize, dperp: usize) -> Result<Self> {
        let params = format!("params n={n} d={d} dperp={dperp}");
        let io = |e: std::io::Error| Error::Checkpoint(e.to_string());
        let mut done = HashSet::new();
        let fresh = !path.exists();
        if !fresh {
            let mut lines = BufReader::new(File::open(path).map_err(io)?).lines();
            let header = lines.next().transpose().map_err(io)?.unwrap_or_default();
            if header != CHECKPOINT_HEADER {
                return Err(Error::Checkpoint(format!("unrecognised header {header:?}")));
            }
            let p = lines.next().transpose().map_err(io)?.unwrap_or_default();
            if p != params {
                return Err(Error::Checkpoint(format!(
                    "file is for {p:?}, not {params:?}"
                )));
            }
            for line in lines {
                let line = line.map_err(io)?;
                let parsed = line
                    .strip_prefix("done m=")
                    .and_then(|r| r.split_once(" first="))
                    .and_then(|(m, f)| Some((m.parse().ok()?, f.parse().ok()?)));
                match parsed {
                    Some(p) => {
                        done.insert(p);
                    }
                    None if line.trim().is_empty() => {}
                    None => return Err(Error::Checkpoint(format!("bad line {line:?}"))),
                }
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io)?;
        if fresh {
            writeln!(file, "{CHECKPOINT_HEADER}\n{params}").map_err(io)?;
        }
        Ok(Checkpoint {
            done,
            file: Mutex::new(file),
        })
    }

    fn record(&self, m: usize, first: u64) -> Result<()> {
        let mut f = self.file.lock().unwrap();
        writeln!(f, "done m={m} first={first}").map_err(|e| Error::Checkpoint(e.to_string()))
    }
}

/// Decides whether an `[n, m]` code with minimum distance `≥ d` and dual
/// distance `≥ d⊥` exists for some `m`.
///
/// Budget exhaustion is reported as an aborted verdict, never as
/// nonexistence.
pub fn exists_code(
    n: usize,
    d: usize,
    dperp: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if n > MAX_SEARCH_LEN {
        return Err(Error::TooLarge(format!(
            "search is limited to n <= {MAX_SEARCH_LEN}, got {n}"
        )));
    }
    if d < 2 || dperp < 2 {
        return Err(Error::InvalidParameter(format!(
            "need d, d⊥ >= 2, got ({d}, {dperp})"
        )));
    }
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        aborted: Mutex::new(None),
        start: Instant::now(),
        budget: opts.budget,
    };
    let checkpoint = opts
        .checkpoint
        .as_deref()
        .map(|p| Checkpoint::open(p, n, d, dperp))
        .transpose()?;
    let dimensions = admissible_dimensions(n, d, dperp);
    let mut found = None;

    for &m in &dimensions {
        let k = n - m;
        let firsts: Vec<u64> = (1..1u64 << m)
            .filter(|f| {
                checkpoint
                    .as_ref()
                    .is_none_or(|c| !c.done.contains(&(m, *f)))
            })
            .collect();
        let run = |first: u64| -> Result<Option<Vec<u64>>> {
            if shared.stop.load(Ordering::Relaxed) {
                return Ok(None);
            }
            let mut w = Worker::new(m, k, d, dperp, &shared);
            let step = w.place(first);
            w.flush();
            match step {
                Step::Found(cols) => {
                    shared.stop.store(true, Ordering::Relaxed);
                    Ok(Some(cols))
                }
                Step::Exhausted => {
                    if let Some(c) = &checkpoint {
                        c.record(m, first)?;
                    }
                    Ok(None)
                }
                Step::Stopped => Ok(None),
            }
        };
        let hit = if opts.sequential {
            let mut hit = None;
            for f in firsts {
                if let Some(cols) = run(f)? {
                    hit = Some(cols);
                    break;
                }
            }
            hit
        } else {
            firsts
                .into_par_iter()
                .map(run)
                .find_map_any(|r| r.transpose())
                .transpose()?
        };
        if let Some(cols) = hit {
            found = Some(LinearCode::from_generator(&systematic_generator(
                n, m, &cols,
            )?)?);
            break;
        }
        if shared.stop.load(Ordering::Relaxed) {
            break;
        }
    }

    let verdict = match (&found, *shared.aborted.lock().unwrap()) {
        (Some(code), _) => {
            revalidate(code, d, dperp)?;
            Verdict::Found
        }
        (None, Some(abort)) => abort,
        (None, None) => Verdict::ExhaustedNone,
    };
    Ok(SearchOutcome {
        n,
        d,
        dperp,
        verdict,
        witness: found,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
        elapsed: shared.start.elapsed(),
        wall_budget: opts.budget.max_time,
        dimensions,
    })
}

fn revalidate(code: &LinearCode, d: usize, dperp: usize) -> Result<()> {
    let (got_d, got_dp) = (code.min_distance()?, code.dual_distance()?);
    if got_d < d || got_dp < dperp {
        // a search bug, not a property of the input
        panic!("search produced a code with d = {got_d}, d⊥ = {got_dp}; wanted ({d}, {dperp})");
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrueStatus {
    /// Every shorter length is excluded by a bound or an exhausted search.
    Proved,
    /// Some shorter length was not decided within the budget.
    LowerBoundedOnly,
}

#[derive(Clone, Debug)]
pub struct TrueValueResult {
    pub d: usize,
    pub dperp: usize,
    /// Where the length scan started.
    pub lower_bound: usize,
    pub value: Option<usize>,
    pub status: TrueStatus,
    pub witness: Option<LinearCode>,
    pub per_length: Vec<(usize, Verdict)>,
}

/// `N(d, d⊥)` by scanning lengths upward from the best lower bound among
/// `methods` and searching each.
pub fn true_n(
    d: usize,
    dperp: usize,
    methods: &MethodSet,
    opts: &SearchOptions,
) -> Result<TrueValueResult> {
    if d < 2 || dperp < 2 {
        return Err(Error::InvalidParameter(format!(
            "need d, d⊥ >= 2, got ({d}, {dperp})"
        )));
    }
    if let Some(n) = trivial_value(d, dperp) {
        let g = BinaryMatrix::from_rows(vec![(1u64 << n) - 1], n)?;
        let rep = LinearCode::from_generator(&g)?;
        let witness = if d == 2 { rep.dual()? } else { rep };
        return Ok(TrueValueResult {
            d,
            dperp,
            lower_bound: n,
            value: Some(n),
            status: TrueStatus::Proved,
            witness: Some(witness),
            per_length: Vec::new(),
        });
    }
    let lower_bound = bound_report(d, dperp, methods)?.best_lb.max(d.max(dperp));
    let mut per_length = Vec::new();
    let mut undecided = false;
    for n in lower_bound..=MAX_SEARCH_LEN {
        let o = exists_code(n, d, dperp, opts)?;
        per_length.push((n, o.verdict));
        match o.verdict {
            Verdict::Found => {
                return Ok(TrueValueResult {
                    d,
                    dperp,
                    lower_bound,
                    value: Some(n),
                    status: if undecided {
                        TrueStatus::LowerBoundedOnly
                    } else {
                        TrueStatus::Proved
                    },
                    witness: o.witness,
                    per_length,
                })
            }
            Verdict::ExhaustedNone => {}
            _ => undecided = true,
        }
    }
    Ok(TrueValueResult {
        d,
        dperp,
        lower_bound,
        value: None,
        status: TrueStatus::LowerBoundedOnly,
        witness: None,
        per_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> SearchOptions {
        SearchOptions {
            sequential: true,
            ..Default::default()
        }
    }

    #[test]
    fn dimension_pruning() {
        assert_eq!(admissible_dimensions(6, 3, 3), vec![3]);
        assert_eq!(admissible_dimensions(11, 5, 3), vec![3, 4]);
        assert!(admissible_dimensions(9, 5, 3).is_empty());
        // repetition codes survive when d⊥ = 2
        assert!(admissible_dimensions(3, 3, 2).contains(&1));
    }

    #[test]
    fn small_verdicts() {
        let o = exists_code(6, 3, 3, &seq()).unwrap();
        assert_eq!(o.verdict, Verdict::Found);
        let w = o.witness.unwrap();
        assert_eq!(
            (
                w.len(),
                w.dimension(),
                w.min_distance().unwrap(),
                w.dual_distance().unwrap()
            ),
            (6, 3, 3, 3)
        );
        assert_eq!(
            exists_code(5, 3, 3, &seq()).unwrap().verdict,
            Verdict::ExhaustedNone
        );
        let o = exists_code(7, 4, 3, &seq()).unwrap();
        assert_eq!(o.verdict, Verdict::Found);
        assert!(o.witness.unwrap().min_distance().unwrap() >= 4);
    }

    #[test]
    fn sequential_is_deterministic() {
        let a = exists_code(8, 4, 4, &seq()).unwrap();
        let b = exists_code(8, 4, 4, &seq()).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }

    #[test]
    fn parallel_agrees() {
        for (n, d, e) in [(6, 3, 3), (5, 3, 3), (7, 4, 3), (7, 4, 4)] {
            let s = exists_code(n, d, e, &seq()).unwrap().verdict;
            let p = exists_code(n, d, e, &SearchOptions::default())
                .unwrap()
                .verdict;
            assert_eq!(s, p, "({n},{d},{e})");
        }
    }

    #[test]
    fn budget_abort_is_not_nonexistence() {
        let o = exists_code(
            10,
            5,
            3,
            &SearchOptions {
                budget: Budget::nodes(10),
                sequential: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(o.verdict, Verdict::AbortedNodes);
        assert!(o.witness.is_none());
        let o = exists_code(
            10,
            5,
            3,
            &SearchOptions {
                budget: Budget {
                    max_nodes: None,
                    max_time: Some(Duration::ZERO),
                },
                sequential: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(matches!(
            o.verdict,
            Verdict::AbortedTime | Verdict::ExhaustedNone
        ));
    }

    #[test]
    fn guards() {
        assert!(matches!(
            exists_code(21, 3, 3, &seq()),
            Err(Error::TooLarge(_))
        ));
        assert!(exists_code(6, 1, 3, &seq()).is_err());
    }

    #[test]
    fn true_values_small() {
        let r = true_n(3, 3, &MethodSet::closed_form(), &seq()).unwrap();
        assert_eq!((r.value, r.status), (Some(6), TrueStatus::Proved));
        let r = true_n(2, 9, &MethodSet::closed_form(), &seq()).unwrap();
        assert_eq!((r.value, r.status), (Some(9), TrueStatus::Proved));
        assert!(r.per_length.is_empty());
        let w = r.witness.unwrap();
        assert_eq!(
            (w.min_distance().unwrap(), w.dual_distance().unwrap()),
            (2, 9)
        );
    }

    #[test]
    fn checkpoint_resume() {
        let dir = std::env::temp_dir().join(format!("dualdist-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ckpt.txt");
        let _ = std::fs::remove_file(&path);
        let opts = SearchOptions {
            sequential: true,
            checkpoint: Some(path.clone()),
            ..Default::default()
        };
        let first = exists_code(10, 5, 3, &opts).unwrap();
        assert_eq!(first.verdict, Verdict::ExhaustedNone);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(CHECKPOINT_HEADER));
        assert!(text.lines().any(|l| l.starts_with("done m=")));
        // everything recorded: the resumed run explores nothing
        let again = exists_code(10, 5, 3, &opts).unwrap();
        assert_eq!(again.verdict, Verdict::ExhaustedNone);
        assert_eq!(again.nodes_explored, 0);
        let wrong = SearchOptions {
            checkpoint: Some(path.clone()),
            ..seq()
        };
        assert!(matches!(
            exists_code(10, 5, 4, &wrong),
            Err(Error::Checkpoint(_))
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
