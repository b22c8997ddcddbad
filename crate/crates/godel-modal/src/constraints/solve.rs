//! Exact feasibility decision for translated branch systems.
//!
//! Two layers:
//!
//! 1. **Gap case-splitting.** Every gap obligation `s ≤ t₀ ∨ s ≥ t₁` is a
//!    binary disjunction; a DPLL-style search picks one disjunct per
//!    obligation, pruning a partial choice as soon as the conjunctive system
//!    under it becomes infeasible.
//! 2. **Fourier–Motzkin elimination** over exact rationals decides each
//!    conjunctive system. Rows have the form `Σ aᵢxᵢ + c ≥ 0` (or `> 0`);
//!    combining a lower and an upper bound of the eliminated variable
//!    produces a row that is strict iff either parent is, which handles
//!    strict inequalities without epsilon bookkeeping. Feasible systems are
//!    solved back-to-front, choosing at each step the rational with the
//!    smallest denominator inside the admissible interval — witnesses come
//!    out as readable values like `1/6` rather than elimination artifacts.
//!
//! Every SAT verdict is re-checked by substitution before being returned.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::linear::{unit, zero, Atom, LinIneq, LinearSystem, VarId, Witness};
use super::Cmp;
use crate::rational::{simplest_in, Rat};

/// Outcome of a feasibility check.
#[derive(Clone, Debug)]
pub enum Solution {
    Sat(Witness),
    Unsat,
}

impl Solution {
    pub fn is_sat(&self) -> bool {
        matches!(self, Solution::Sat(_))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("solver resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("solver internal error: {0}")]
    Internal(String),
}

/// Resource bounds for one `solve` call.
#[derive(Clone, Debug)]
pub struct SolveLimits {
    /// Maximum number of gap case-splits explored.
    pub max_splits: usize,
    /// Maximum number of rows any intermediate elimination state may hold.
    pub max_rows: usize,
}

impl Default for SolveLimits {
    fn default() -> SolveLimits {
        SolveLimits {
            max_splits: 100_000,
            max_rows: 50_000,
        }
    }
}

/// `Σ coeffs·x + constant ≥ 0` (`> 0` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    coeffs: BTreeMap<VarId, Rat>,
    constant: Rat,
    strict: bool,
}

impl Row {
    /// Scales so the leading coefficient has absolute value 1 (for dedup).
    fn normalize(mut self) -> Row {
        if let Some((_, a)) = self.coeffs.iter().next() {
            let scale = a.abs();
            if !scale.is_zero() && scale != unit() {
                for v in self.coeffs.values_mut() {
                    *v /= &scale;
                }
                self.constant /= &scale;
            }
        }
        self
    }
}

/// Builds a row `rhs − lhs {≥,>} 0` from `lhs rel rhs` (Lt/Le orientations;
/// callers flip for Gt/Ge and duplicate for Eq).
fn row_le(lhs: &Atom, rhs: &Atom, strict: bool) -> Row {
    let mut coeffs: BTreeMap<VarId, Rat> = BTreeMap::new();
    let mut constant = zero();
    let mut add = |atom: &Atom, sign: i64| {
        let s = Rat::from_integer(sign.into());
        match atom {
            Atom::Const(c) => constant += c * &s,
            Atom::Pos(v) => *coeffs.entry(*v).or_insert_with(zero) += &s,
            Atom::Neg(v) => {
                constant += &s;
                *coeffs.entry(*v).or_insert_with(zero) -= &s;
            }
        }
    };
    add(rhs, 1);
    add(lhs, -1);
    coeffs.retain(|_, a| !a.is_zero());
    Row {
        coeffs,
        constant,
        strict,
    }
}

fn rows_of_ineq(c: &LinIneq) -> Vec<Row> {
    match c.rel {
        Cmp::Lt => vec![row_le(&c.lhs, &c.rhs, true)],
        Cmp::Le => vec![row_le(&c.lhs, &c.rhs, false)],
        Cmp::Gt => vec![row_le(&c.rhs, &c.lhs, true)],
        Cmp::Ge => vec![row_le(&c.rhs, &c.lhs, false)],
        Cmp::Eq => vec![
            row_le(&c.lhs, &c.rhs, false),
            row_le(&c.rhs, &c.lhs, false),
        ],
    }
}

/// The base rows of a system: its constraints plus `0 ≤ x ≤ 1` per variable.
fn base_rows(sys: &LinearSystem) -> Vec<Row> {
    let mut rows = Vec::new();
    for c in &sys.constraints {
        rows.extend(rows_of_ineq(c));
    }
    for v in 0..sys.n_vars() {
        rows.push(Row {
            coeffs: BTreeMap::from([(v, unit())]),
            constant: zero(),
            strict: false,
        }); // x ≥ 0
        rows.push(Row {
            coeffs: BTreeMap::from([(v, -unit())]),
            constant: unit(),
            strict: false,
        }); // 1 − x ≥ 0
    }
    rows
}

/// Normalizes, removes satisfied constant rows, keeps only the strongest row
/// per coefficient vector. Returns `None` on a contradictory constant row.
fn compact(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: BTreeMap<Vec<(VarId, Rat)>, (Rat, bool)> = BTreeMap::new();
    for row in rows {
        let row = row.normalize();
        if row.coeffs.is_empty() {
            if row.constant < zero() || (row.constant.is_zero() && row.strict) {
                return None;
            }
            continue;
        }
        let key: Vec<(VarId, Rat)> = row.coeffs.into_iter().collect();
        match best.get_mut(&key) {
            None => {
                best.insert(key, (row.constant, row.strict));
            }
            Some((c, s)) => {
                // Smaller constant is tighter; on ties, strict is tighter.
                if row.constant < *c {
                    *c = row.constant;
                    *s = row.strict;
                } else if row.constant == *c {
                    *s = *s || row.strict;
                }
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(key, (constant, strict))| Row {
                coeffs: key.into_iter().collect(),
                constant,
                strict,
            })
            .collect(),
    )
}

/// One eliminated variable with the rows that mentioned it, for
/// back-substitution.
struct Step {
    var: VarId,
    rows: Vec<Row>,
}

/// Runs elimination to completion. `Ok(None)` means infeasible; `Ok(Some)`
/// returns the elimination trace for witness extraction.
fn eliminate(mut rows: Vec<Row>, limits: &SolveLimits) -> Result<Option<Vec<Step>>, SolveError> {
    let mut steps = Vec::new();
    loop {
        rows = match compact(rows) {
            Some(r) => r,
            None => return Ok(None),
        };
        if rows.len() > limits.max_rows {
            return Err(SolveError::ResourceLimit(format!(
                "elimination produced {} rows (limit {})",
                rows.len(),
                limits.max_rows
            )));
        }
        // Pick the variable with the cheapest lower×upper combination count.
        let mut counts: BTreeMap<VarId, (usize, usize)> = BTreeMap::new();
        for row in &rows {
            for (v, a) in &row.coeffs {
                let e = counts.entry(*v).or_insert((0, 0));
                if a.is_positive() {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        let Some((&var, _)) = counts
            .iter()
            .min_by_key(|(_, (lo, up))| lo * up)
        else {
            return Ok(Some(steps)); // no variables left; rows were all consistent
        };
        let (mentioning, rest): (Vec<Row>, Vec<Row>) =
            rows.into_iter().partition(|r| r.coeffs.contains_key(&var));
        let mut new_rows = rest;
        let (lowers, uppers): (Vec<&Row>, Vec<&Row>) = {
            let mut lo = Vec::new();
            let mut up = Vec::new();
            for r in &mentioning {
                if r.coeffs[&var].is_positive() {
                    lo.push(r);
                } else {
                    up.push(r);
                }
            }
            (lo, up)
        };
        for p in &lowers {
            let a = p.coeffs[&var].clone(); // a > 0
            for n in &uppers {
                let b = n.coeffs[&var].clone(); // b < 0
                // a·n + (−b)·p eliminates var with positive multipliers.
                let mb = -b;
                let mut coeffs: BTreeMap<VarId, Rat> = BTreeMap::new();
                for (v, x) in &n.coeffs {
                    *coeffs.entry(*v).or_insert_with(zero) += x * &a;
                }
                for (v, x) in &p.coeffs {
                    *coeffs.entry(*v).or_insert_with(zero) += x * &mb;
                }
                coeffs.retain(|_, x| !x.is_zero());
                debug_assert!(!coeffs.contains_key(&var));
                new_rows.push(Row {
                    coeffs,
                    constant: &n.constant * &a + &p.constant * &mb,
                    strict: p.strict || n.strict,
                });
            }
        }
        steps.push(Step {
            var,
            rows: mentioning,
        });
        rows = new_rows;
    }
}

/// Back-substitutes through the elimination trace, choosing the simplest
/// rational in each admissible interval.
fn extract(steps: &[Step], n_vars: usize) -> Result<Vec<Rat>, SolveError> {
    let mut values: Vec<Option<Rat>> = vec![None; n_vars];
    for step in steps.iter().rev() {
        let mut lo = (zero(), false); // [0,1] fallback bounds
        let mut hi = (unit(), false);
        for row in &step.rows {
            let a = row.coeffs[&step.var].clone();
            // Evaluate the rest of the row; all other variables were
            // eliminated after `step.var`, hence already assigned.
            let mut rest = row.constant.clone();
            for (v, x) in &row.coeffs {
                if *v != step.var {
                    let val = values[*v].as_ref().ok_or_else(|| {
                        SolveError::Internal("back-substitution order violated".into())
                    })?;
                    rest += x * val;
                }
            }
            // a·x + rest ≥ 0: lower bound −rest/a if a > 0, else upper bound.
            let bound = -&rest / &a;
            if a.is_positive() {
                if bound > lo.0 || (bound == lo.0 && row.strict) {
                    lo = (bound, row.strict);
                }
            } else if bound < hi.0 || (bound == hi.0 && row.strict) {
                hi = (bound, row.strict);
            }
        }
        if lo.0 > hi.0 || (lo.0 == hi.0 && (lo.1 || hi.1)) {
            return Err(SolveError::Internal(
                "feasible elimination produced an empty interval".into(),
            ));
        }
        values[step.var] = Some(simplest_in(&lo.0, lo.1, &hi.0, hi.1));
    }
    Ok(values
        .into_iter()
        .map(|v| v.unwrap_or_else(zero))
        .collect())
}

/// Extra rows encoding one chosen gap disjunct.
fn disjunct_row(s: VarId, bound: VarId, s_below: bool) -> Row {
    // s ≤ bound  →  bound − s ≥ 0;   s ≥ bound  →  s − bound ≥ 0.
    let (pos, neg) = if s_below { (bound, s) } else { (s, bound) };
    let mut coeffs = BTreeMap::new();
    coeffs.insert(pos, unit());
    *coeffs.entry(neg).or_insert_with(zero) -= unit();
    coeffs.retain(|_, x: &mut Rat| !x.is_zero());
    Row {
        coeffs,
        constant: zero(),
        strict: false,
    }
}

/// Decides feasibility of `sys` with the given limits.
pub fn solve_with(sys: &LinearSystem, limits: &SolveLimits) -> Result<Solution, SolveError> {
    let obligations = sys.gap_obligations();
    let base = base_rows(sys);
    let mut splits = 0usize;

    // Depth-first over the gap disjunctions, pruning infeasible prefixes.
    fn descend(
        sys: &LinearSystem,
        rows: &[Row],
        obligations: &[(VarId, VarId, VarId)],
        limits: &SolveLimits,
        splits: &mut usize,
    ) -> Result<Option<Vec<Rat>>, SolveError> {
        *splits += 1;
        if *splits > limits.max_splits {
            return Err(SolveError::ResourceLimit(format!(
                "gap case-splits exceeded {}",
                limits.max_splits
            )));
        }
        let Some(steps) = eliminate(rows.to_vec(), limits)? else {
            return Ok(None);
        };
        match obligations.split_first() {
            None => {
                let values = extract(&steps, sys.n_vars())?;
                Ok(Some(values))
            }
            Some((&(s, lo, hi), rest)) => {
                for s_below in [true, false] {
                    let mut extended = rows.to_vec();
                    extended.push(disjunct_row(s, if s_below { lo } else { hi }, s_below));
                    if let Some(v) = descend(sys, &extended, rest, limits, splits)? {
                        return Ok(Some(v));
                    }
                }
                Ok(None)
            }
        }
    }

    match descend(sys, &base, &obligations, limits, &mut splits)? {
        None => Ok(Solution::Unsat),
        Some(values) => {
            sys.check_values(&values)
                .map_err(SolveError::Internal)?;
            Ok(Solution::Sat(sys.witness_from_values(&values)))
        }
    }
}

/// Decides feasibility with default limits.
pub fn solve(sys: &LinearSystem) -> Result<Solution, SolveError> {
    solve_with(sys, &SolveLimits::default())
}

/// Cheap feasibility check of the relaxation that drops the gap
/// obligations. `false` means the full system is certainly infeasible (the
/// gap disjunctions only constrain it further); `true` is inconclusive and
/// the full [`solve_with`] must decide.
pub fn feasible_relaxed(sys: &LinearSystem, limits: &SolveLimits) -> Result<bool, SolveError> {
    Ok(eliminate(base_rows(sys), limits)?.is_some())
}

/// Near-linear unsatisfiability detector used as the intermediate closure
/// check during proof search.
///
/// Every constraint compares two atoms of the shape `c`, `x`, or `1 − x`, so
/// the system is an order theory. Build a directed graph whose nodes are the
/// atoms, with an edge `a → b` for every entailed `a ≤ b` (marked strict for
/// `a < b`): the constraints themselves, their mirror images under the
/// order-reversing complement (`a ≤ b` entails `1−b ≤ 1−a`), the `[0,1]`
/// bounds, and the numeric chain over all constant nodes. A cycle through a
/// strict edge is a genuine contradiction, so `true` here means certainly
/// infeasible — pruning on it is sound; `false` is inconclusive and leaves
/// the decision to [`solve_with`].
pub fn obviously_unsat(sys: &LinearSystem) -> bool {
    use std::collections::BTreeSet;

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Node {
        Const(Rat),
        Pos(VarId),
        Neg(VarId),
    }
    fn node(a: &Atom) -> Node {
        match a {
            Atom::Const(c) => Node::Const(c.clone()),
            Atom::Pos(v) => Node::Pos(*v),
            Atom::Neg(v) => Node::Neg(*v),
        }
    }
    fn mirror(n: &Node) -> Node {
        match n {
            Node::Const(c) => Node::Const(crate::rational::one_minus(c)),
            Node::Pos(v) => Node::Neg(*v),
            Node::Neg(v) => Node::Pos(*v),
        }
    }

    // Oriented `a ≤ b` / `a < b` facts, closed under mirroring.
    let mut facts: Vec<(Node, Node, bool)> = Vec::new();
    let mut push = |a: Node, b: Node, strict: bool| {
        facts.push((mirror(&b), mirror(&a), strict));
        facts.push((a, b, strict));
    };
    for c in &sys.constraints {
        let (l, r) = (node(&c.lhs), node(&c.rhs));
        match c.rel {
            Cmp::Lt => push(l, r, true),
            Cmp::Le => push(l, r, false),
            Cmp::Gt => push(r, l, true),
            Cmp::Ge => push(r, l, false),
            Cmp::Eq => {
                push(l.clone(), r.clone(), false);
                push(r, l, false);
            }
        }
    }
    for v in 0..sys.n_vars() {
        push(Node::Const(zero()), Node::Pos(v), false);
        push(Node::Pos(v), Node::Const(unit()), false);
    }
    let consts: BTreeSet<Rat> = facts
        .iter()
        .flat_map(|(a, b, _)| [a, b])
        .filter_map(|n| match n {
            Node::Const(c) => Some(c.clone()),
            _ => None,
        })
        .chain([zero(), unit()])
        .collect();
    let consts: Vec<Rat> = consts.into_iter().collect(); // sorted ascending
    for w in consts.windows(2) {
        facts.push((Node::Const(w[0].clone()), Node::Const(w[1].clone()), true));
    }

    // Index nodes and build adjacency.
    let mut ids: std::collections::BTreeMap<Node, usize> = std::collections::BTreeMap::new();
    let id_of = |n: &Node, ids: &mut std::collections::BTreeMap<Node, usize>| -> usize {
        let next = ids.len();
        *ids.entry(n.clone()).or_insert(next)
    };
    let mut edges: Vec<(usize, usize, bool)> = Vec::with_capacity(facts.len());
    for (a, b, strict) in &facts {
        let ia = id_of(a, &mut ids);
        let ib = id_of(b, &mut ids);
        edges.push((ia, ib, *strict));
    }
    let n = ids.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b, _) in &edges {
        adj[a].push(b);
    }

    // Iterative Tarjan SCC.
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut counter = 0usize;
    let mut n_comps = 0usize;
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        // (node, next-child-position)
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = n_comps;
                        if w == v {
                            break;
                        }
                    }
                    n_comps += 1;
                }
                call.pop();
                if let Some(&mut (parent, _)) = call.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
            }
        }
    }

    edges
        .iter()
        .any(|&(a, b, strict)| strict && comp[a] == comp[b])
}
