//! Delsarte-type linear programming lower bounds on `N(d, d⊥)`.
//!
//! The unknowns are the weight counts `A_d, …, A_n` of a hypothetical code
//! of length `n`. `A_0 = 1` and `A_1 = … = A_{d−1} = 0` are folded in as
//! constants. The dual counts enter through their numerators
//! `N_w = |C| · A'_w = C(n, w) + Σ_i A_i P_w(i)`, which are affine in the
//! unknowns, so every constraint stays linear with integer coefficients.
//!
//! Feasibility is decided exactly by a phase-one simplex over rationals
//! with Bland's rule.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::singleton_lower;
use crate::enumerative::{binomial, krawtchouk_table, pow2};
use crate::error::{Error, Result};
use crate::gf2::WeightDistribution;

/// Longest length tried by [`lp_lower`] and [`lp_refined_lower`].
pub const LP_SCAN_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Whether `C` (primal) and `C⊥` (dual) are assumed even or odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParityCase {
    pub primal: Parity,
    pub dual: Parity,
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.primal, self.dual)
    }
}

impl ParityCase {
    /// A code with odd minimum distance contains an odd-weight word, so it
    /// cannot be even; the same holds on the dual side.
    pub fn is_admissible(&self, d: usize, dperp: usize) -> bool {
        !(d % 2 == 1 && self.primal == Parity::Even || dperp % 2 == 1 && self.dual == Parity::Even)
    }

    /// The case an actual code falls in, from its and its dual's weights.
    pub fn from_weights(primal: &WeightDistribution, dual: &WeightDistribution) -> Self {
        let parity = |w: &WeightDistribution| {
            if w.is_even() {
                Parity::Even
            } else {
                Parity::Odd
            }
        };
        ParityCase {
            primal: parity(primal),
            dual: parity(dual),
        }
    }

    pub fn admissible(d: usize, dperp: usize) -> Vec<ParityCase> {
        let mut out = Vec::with_capacity(4);
        for primal in [Parity::Odd, Parity::Even] {
            for dual in [Parity::Odd, Parity::Even] {
                let c = ParityCase { primal, dual };
                if c.is_admissible(d, dperp) {
                    out.push(c);
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Le => "<=",
        }
    }

    fn holds(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
        }
    }
}

/// `Σ coeffs[k] · x_k  (relation)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<BigInt>,
    pub relation: Relation,
    pub rhs: BigInt,
}

/// Affine form over the unknowns: `Σ coeffs[k] · A_{first+k} + constant`.
#[derive(Clone, Debug)]
struct Affine {
    coeffs: Vec<BigInt>,
    constant: BigInt,
}

impl Affine {
    fn zero(vars: usize) -> Self {
        Affine {
            coeffs: vec![BigInt::zero(); vars],
            constant: BigInt::zero(),
        }
    }

    fn add_scaled(&mut self, other: &Affine, k: i64) {
        let k = BigInt::from(k);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * &k;
        }
        self.constant += &other.constant * &k;
    }
}

/// A linear feasibility problem in nonnegative unknowns `A_d … A_n`.
#[derive(Clone, Debug)]
pub struct LpInstance {
    pub n: usize,
    pub d: usize,
    pub dperp: usize,
    pub constraints: Vec<Constraint>,
    pub case: Option<ParityCase>,
    pub cardinality_m: Option<usize>,
    kraw: Vec<Vec<BigInt>>,
}

impl LpInstance {
    /// Instance over `A_d … A_n` with no constraints besides nonnegativity.
    pub fn empty(n: usize, d: usize, dperp: usize) -> Result<Self> {
        if d < 1 || d > n || dperp < 1 || dperp > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= d, d⊥ <= n, got n = {n}, d = {d}, d⊥ = {dperp}"
            )));
        }
        Ok(LpInstance {
            n,
            d,
            dperp,
            constraints: Vec::new(),
            case: None,
            cardinality_m: None,
            kraw: krawtchouk_table(n),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n - self.d + 1
    }

    /// Weight indexed by unknown `k`.
    pub fn var_weight(&self, k: usize) -> usize {
        self.d + k
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(c);
    }

    /// `A_i` as an affine form (constant for `i < d`).
    fn primal(&self, i: usize) -> Affine {
        let mut a = Affine::zero(self.num_vars());
        if i == 0 {
            a.constant = BigInt::one();
        } else if i >= self.d {
            a.coeffs[i - self.d] = BigInt::one();
        }
        a
    }

    /// `N_w = C(n, w) + Σ_{i ≥ d} A_i P_w(i)`, i.e. `|C| · A'_w`.
    fn dual_numerator(&self, w: usize) -> Affine {
        Affine {
            coeffs: (self.d..=self.n).map(|i| self.kraw[w][i].clone()).collect(),
            constant: binomial(self.n, w),
        }
    }

    fn add(&mut self, label: String, expr: Affine, relation: Relation) {
        let rhs = -expr.constant;
        if expr.coeffs.iter().all(Zero::is_zero) && relation.holds(&BigInt::zero(), &rhs) {
            return;
        }
        self.constraints.push(Constraint {
            label,
            coeffs: expr.coeffs,
            relation,
            rhs,
        });
    }

    /// Checks a candidate assignment of `A_d … A_n`, including nonnegativity.
    pub fn satisfied_by(&self, values: &[BigInt]) -> bool {
        values.len() == self.num_vars()
            && values.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: BigInt = c.coeffs.iter().zip(values).map(|(a, x)| a * x).sum();
                c.relation.holds(&lhs, &c.rhs)
            })
    }

    pub fn is_feasible(&self) -> bool {
        feasible(self)
    }

    /// CPLEX LP text, readable by common external solvers.
    pub fn to_lp_format(&self) -> String {
        let mut s = String::new();
        let case = self
            .case
            .map(|c| c.to_string())
            .unwrap_or_else(|| "none".into());
        let m = self
            .cardinality_m
            .map(|m| m.to_string())
            .unwrap_or_else(|| "free".into());
        let _ = writeln!(
            s,
            "\\ n={} d={} dperp={} case={} m={}",
            self.n, self.d, self.dperp, case, m
        );
        let _ = writeln!(s, "Minimize\n obj: 0 A{}", self.d);
        let _ = writeln!(s, "Subject To");
        for c in &self.constraints {
            let mut terms = String::new();
            for (k, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let sign = if a.is_negative() { "-" } else { "+" };
                let _ = write!(terms, " {} {} A{}", sign, a.abs(), self.var_weight(k));
            }
            if terms.is_empty() {
                terms.push_str(&format!(" 0 A{}", self.d));
            }
            let _ = writeln!(
                s,
                " {}:{} {} {}",
                c.label,
                terms,
                c.relation.symbol(),
                c.rhs
            );
        }
        let _ = writeln!(s, "Bounds");
        for k in 0..self.num_vars() {
            let _ = writeln!(s, " A{} >= 0", self.var_weight(k));
        }
        s.push_str("End\n");
        s
    }
}

/// The plain system: `A_i ≥ 0`, `N_w = 0` for `1 ≤ w < d⊥` and `N_w ≥ 0`
/// for `d⊥ ≤ w ≤ n`.
pub fn build_base_system(n: usize, d: usize, dperp: usize) -> Result<LpInstance> {
    let mut inst = LpInstance::empty(n, d, dperp)?;
    for w in 1..=n {
        let expr = inst.dual_numerator(w);
        let rel = if w < dperp {
            Relation::Eq
        } else {
            Relation::Ge
        };
        // keep every row of the system, including ones with only constants
        let rhs = -expr.constant;
        inst.constraints.push(Constraint {
            label: format!("w{w}"),
            coeffs: expr.coeffs,
            relation: rel,
            rhs,
        });
    }
    Ok(inst)
}

/// Adds the constraints implied by the parity case and, when `m` is given,
/// the cardinality equation `A_d + … + A_n = 2^m − 1`.
pub fn apply_parity_case(
    inst: &LpInstance,
    case: ParityCase,
    m: Option<usize>,
) -> Result<LpInstance> {
    let (n, d, dperp) = (inst.n, inst.d, inst.dperp);
    if !case.is_admissible(d, dperp) {
        return Err(Error::InadmissibleCase(case.to_string()));
    }
    if let Some(m) = m {
        if m == 0 || m >= n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= m < n, got m = {m}"
            )));
        }
    }
    let mut out = inst.clone();
    let vars = out.num_vars();
    let primal: Vec<Affine> = (0..=n).map(|i| out.primal(i)).collect();
    let dual: Vec<Affine> = (0..=n).map(|w| out.dual_numerator(w)).collect();
    let total = |v: &[Affine]| {
        let mut s = Affine::zero(vars);
        v.iter().for_each(|a| s.add_scaled(a, 1));
        s
    };

    match case.primal {
        Parity::Odd => {
            let mut bal = Affine::zero(vars);
            for (i, a) in primal.iter().enumerate() {
                bal.add_scaled(a, if i % 2 == 0 { 1 } else { -1 });
            }
            out.add("primal_odd_balance".into(), bal, Relation::Eq);
            out.add(
                "primal_odd_no_all_ones_in_dual".into(),
                dual[n].clone(),
                Relation::Eq,
            );
        }
        Parity::Even => {
            for i in (1..=n).step_by(2) {
                out.add(format!("primal_even_a{i}"), primal[i].clone(), Relation::Eq);
            }
            let mut four = total(&primal);
            four.coeffs.iter_mut().for_each(|c| *c = -&*c);
            four.constant = -four.constant;
            for (i, a) in primal.iter().enumerate() {
                if i % 4 == 0 {
                    four.add_scaled(a, 4);
                }
            }
            out.add("primal_even_mod4".into(), four, Relation::Ge);
            // A'_n = 1 = A'_0, i.e. N_n = N_0 = |C|
            let mut top = dual[n].clone();
            top.add_scaled(&dual[0], -1);
            out.add("primal_even_all_ones_in_dual".into(), top, Relation::Eq);
            for w in 1..n {
                if w < n - w {
                    let mut sym = dual[w].clone();
                    sym.add_scaled(&dual[n - w], -1);
                    out.add(format!("primal_even_sym{w}"), sym, Relation::Eq);
                }
            }
        }
    }

    match case.dual {
        Parity::Odd => {
            let mut bal = Affine::zero(vars);
            for (w, a) in dual.iter().enumerate() {
                bal.add_scaled(a, if w % 2 == 0 { 1 } else { -1 });
            }
            out.add("dual_odd_balance".into(), bal, Relation::Eq);
            out.add(
                "dual_odd_no_all_ones".into(),
                primal[n].clone(),
                Relation::Eq,
            );
        }
        Parity::Even => {
            for w in (1..=n).step_by(2) {
                out.add(format!("dual_even_n{w}"), dual[w].clone(), Relation::Eq);
            }
            let mut four = total(&dual);
            four.coeffs.iter_mut().for_each(|c| *c = -&*c);
            four.constant = -four.constant;
            for (w, a) in dual.iter().enumerate() {
                if w % 4 == 0 {
                    four.add_scaled(a, 4);
                }
            }
            out.add("dual_even_mod4".into(), four, Relation::Ge);
            let mut one = primal[n].clone();
            one.constant -= 1;
            out.add("dual_even_all_ones".into(), one, Relation::Eq);
            for i in 1..n {
                if i < n - i {
                    let mut sym = primal[i].clone();
                    sym.add_scaled(&primal[n - i], -1);
                    out.add(format!("dual_even_sym{i}"), sym, Relation::Eq);
                }
            }
        }
    }

    if let Some(m) = m {
        let mut card = total(&primal[d..]);
        card.constant -= pow2(m) - 1;
        out.add(format!("cardinality_m{m}"), card, Relation::Eq);
    }
    out.case = Some(case);
    out.cardinality_m = m;
    Ok(out)
}

/// Exact feasibility of `inst` over nonnegative rationals.
pub fn feasible(inst: &LpInstance) -> bool {
    phase_one(inst.num_vars(), &inst.constraints)
}

/// Phase-one simplex: minimises the sum of artificial variables. Bland's
/// rule picks the lowest-index entering column and breaks ratio ties by the
/// lowest-index basic variable, so it always terminates.
fn phase_one(vars: usize, constraints: &[Constraint]) -> bool {
    let rows = constraints.len();
    if rows == 0 {
        return true;
    }
    let slacks = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    // Columns: structural, slack, artificial, then the right-hand side.
    let mut art_of_row = vec![None; rows];
    let mut slack_of_row = vec![None; rows];
    let mut next_slack = vars;
    let mut next_art = vars + slacks;
    let mut signs = Vec::with_capacity(rows);
    for (r, c) in constraints.iter().enumerate() {
        let flip = c.rhs.is_negative();
        signs.push(flip);
        let rel = match (c.relation, flip) {
            (Relation::Ge, true) => Relation::Le,
            (Relation::Le, true) => Relation::Ge,
            (rel, _) => rel,
        };
        if rel != Relation::Eq {
            slack_of_row[r] = Some((next_slack, rel));
            next_slack += 1;
        }
        if rel != Relation::Le {
            art_of_row[r] = Some(next_art);
            next_art += 1;
        }
    }
    let cols = next_art;
    let rhs = cols;
    let zero = BigRational::zero();
    let mut t = vec![vec![zero.clone(); cols + 1]; rows];
    let mut basis = vec![0usize; rows];
    for (r, c) in constraints.iter().enumerate() {
        let s = if signs[r] {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for (k, a) in c.coeffs.iter().enumerate() {
            t[r][k] = BigRational::from_integer(a * &s);
        }
        t[r][rhs] = BigRational::from_integer(&c.rhs * &s);
        if let Some((sc, rel)) = slack_of_row[r] {
            t[r][sc] = if rel == Relation::Le {
                BigRational::one()
            } else {
                -BigRational::one()
            };
        }
        match art_of_row[r] {
            Some(a) => {
                t[r][a] = BigRational::one();
                basis[r] = a;
            }
            None => basis[r] = slack_of_row[r].expect("<= rows carry a slack").0,
        }
    }
    // Reduced costs of the phase-one objective, with its negated value in
    // the last entry.
    let first_art = vars + slacks;
    let mut obj = vec![zero.clone(); cols + 1];
    for r in 0..rows {
        if basis[r] >= first_art {
            for j in 0..=cols {
                if j < first_art || j == rhs {
                    obj[j] -= &t[r][j];
                }
            }
        }
    }

    loop {
        let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) else {
            return obj[rhs].is_zero();
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if !t[r][enter].is_positive() {
                continue;
            }
            let ratio = &t[r][rhs] / &t[r][enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let (pr, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut t, &mut obj, pr, enter);
        basis[pr] = enter;
    }
}

fn pivot(t: &mut [Vec<BigRational>], obj: &mut [BigRational], pr: usize, pc: usize) {
    let inv = t[pr][pc].recip();
    for x in t[pr].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let prow = t[pr].clone();
    let eliminate = |row: &mut [BigRational]| {
        let f = row[pc].clone();
        if f.is_zero() {
            return;
        }
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    };
    for (r, row) in t.iter_mut().enumerate() {
        if r != pr {
            eliminate(row);
        }
    }
    eliminate(obj);
}

/// Smallest `n ≥ singleton_lower(d, d⊥)` whose base system is feasible.
pub fn lp_lower(d: usize, dperp: usize) -> Result<usize> {
    check(d, dperp)?;
    for n in singleton_lower(d, dperp).max(d).max(dperp)..=LP_SCAN_CAP {
        if feasible(&build_base_system(n, d, dperp)?) {
            return Ok(n);
        }
    }
    Err(Error::ScanCapExceeded { cap: LP_SCAN_CAP })
}

/// Every admissible `(case, m)` pair whose refined system at length `n` is
/// feasible, in a fixed order.
pub fn refined_feasible_cases(
    n: usize,
    d: usize,
    dperp: usize,
) -> Result<Vec<(ParityCase, usize)>> {
    let base = build_base_system(n, d, dperp)?;
    if !feasible(&base) {
        return Ok(Vec::new());
    }
    let combos: Vec<(ParityCase, usize)> = ParityCase::admissible(d, dperp)
        .into_iter()
        .flat_map(|c| (1..n).map(move |m| (c, m)))
        .collect();
    combos
        .into_par_iter()
        .map(|(c, m)| Ok(feasible(&apply_parity_case(&base, c, Some(m))?).then_some((c, m))))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect())
}

/// Whether some admissible parity case and dimension make length `n` feasible.
pub fn refined_feasible(n: usize, d: usize, dperp: usize) -> Result<bool> {
    let base = build_base_system(n, d, dperp)?;
    if !feasible(&base) {
        return Ok(false);
    }
    let combos: Vec<(ParityCase, usize)> = ParityCase::admissible(d, dperp)
        .into_iter()
        .flat_map(|c| (1..n).map(move |m| (c, m)))
        .collect();
    let found = combos
        .into_par_iter()
        .map(|(c, m)| apply_parity_case(&base, c, Some(m)).map(|i| feasible(&i)))
        .try_fold(|| false, |acc, r| r.map(|f| acc || f))
        .try_reduce(|| false, |a, b| Ok(a || b))?;
    Ok(found)
}

/// Smallest `n` such that some admissible `(case, m)` system is feasible;
/// a length is excluded only when all of them are infeasible.
pub fn lp_refined_lower(d: usize, dperp: usize) -> Result<usize> {
    check(d, dperp)?;
    for n in singleton_lower(d, dperp).max(d).max(dperp)..=LP_SCAN_CAP {
        if refined_feasible(n, d, dperp)? {
            return Ok(n);
        }
    }
    Err(Error::ScanCapExceeded { cap: LP_SCAN_CAP })
}

fn check(d: usize, dperp: usize) -> Result<()> {
    if d < 2 || dperp < 2 {
        return Err(Error::InvalidParameter(format!(
            "LP bounds need d, d⊥ >= 2, got ({d}, {dperp})"
        )));
    }
    Ok(())
}
