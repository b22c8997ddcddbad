//! Brute-force feasibility oracle for small systems.
//!
//! Satisfiability of a translated branch system only depends on the order
//! type of the assignment over the atoms `{0, 1, x, 1 − x}`: every
//! constraint compares two such atoms. Any satisfying assignment over `m`
//! variables therefore induces a complement-closed total preorder with at
//! most `2m + 2` classes, and every such preorder is realised on the
//! symmetric grid `{k / (2(m+1)) : 0 ≤ k ≤ 2(m+1)}` (place the classes
//! symmetrically around `1/2`). Exhaustively searching that grid is thus a
//! complete decision procedure — slow, but entirely independent of the
//! elimination-based solver, which is the point: the two must agree.

use super::linear::{Atom, LinearSystem, VarId};
use super::solve::{Solution, SolveError};
use crate::rational::{rat, Rat};

/// Limits for [`oracle_solve`]; the search is exponential in the number of
/// variables.
#[derive(Clone, Debug)]
pub struct OracleLimits {
    pub max_vars: usize,
}

impl Default for OracleLimits {
    fn default() -> OracleLimits {
        OracleLimits { max_vars: 8 }
    }
}

fn atom_var(a: &Atom) -> Option<VarId> {
    match a {
        Atom::Const(_) => None,
        Atom::Pos(v) | Atom::Neg(v) => Some(*v),
    }
}

/// Exhaustive grid search. Agrees with `solve` on every system within the
/// variable limit; returns `ResourceLimit` beyond it.
pub fn oracle_solve(sys: &LinearSystem, limits: &OracleLimits) -> Result<Solution, SolveError> {
    let m = sys.n_vars();
    if m > limits.max_vars {
        return Err(SolveError::ResourceLimit(format!(
            "oracle limited to {} variables, system has {m}",
            limits.max_vars
        )));
    }
    let denom = 2 * (m as i64 + 1);
    let grid: Vec<Rat> = (0..=denom).map(|k| rat(k, denom)).collect();

    // Index constraints and gap obligations by the largest variable they
    // mention, so each is checked as soon as it becomes fully assigned.
    let mut checks_at: Vec<Vec<usize>> = vec![Vec::new(); m.max(1)];
    let mut const_only = Vec::new();
    for (i, c) in sys.constraints.iter().enumerate() {
        match atom_var(&c.lhs).into_iter().chain(atom_var(&c.rhs)).max() {
            Some(v) => checks_at[v].push(i),
            None => const_only.push(i),
        }
    }
    for &i in &const_only {
        let c = &sys.constraints[i];
        if !c.rel.holds(&c.lhs.eval(&[]), &c.rhs.eval(&[])) {
            return Ok(Solution::Unsat);
        }
    }
    let obligations = sys.gap_obligations();
    let mut gaps_at: Vec<Vec<(VarId, VarId, VarId)>> = vec![Vec::new(); m.max(1)];
    for &(s, lo, hi) in &obligations {
        gaps_at[s.max(lo).max(hi)].push((s, lo, hi));
    }

    fn search(
        sys: &LinearSystem,
        grid: &[Rat],
        checks_at: &[Vec<usize>],
        gaps_at: &[Vec<(VarId, VarId, VarId)>],
        values: &mut Vec<Rat>,
    ) -> bool {
        let next = values.len();
        if next == sys.n_vars() {
            return true;
        }
        for x in grid {
            values.push(x.clone());
            let ok = checks_at[next].iter().all(|&i| {
                let c = &sys.constraints[i];
                c.rel.holds(&c.lhs.eval(values), &c.rhs.eval(values))
            }) && gaps_at[next]
                .iter()
                .all(|&(s, lo, hi)| !(values[lo] < values[s] && values[s] < values[hi]));
            if ok && search(sys, grid, checks_at, gaps_at, values) {
                return true;
            }
            values.pop();
        }
        false
    }

    let mut values = Vec::with_capacity(m);
    if search(sys, &grid, &checks_at, &gaps_at, &mut values) {
        sys.check_values(&values).map_err(SolveError::Internal)?;
        Ok(Solution::Sat(sys.witness_from_values(&values)))
    } else {
        Ok(Solution::Unsat)
    }
}

#[cfg(test)]
mod tests {
    use super::super::solve::solve;
    use super::super::{parse_constraint_file, translate_branch};
    use super::*;
    use crate::rational::rat;

    fn run(text: &str) -> Solution {
        oracle_solve(
            &translate_branch(&parse_constraint_file(text).unwrap()),
            &OracleLimits::default(),
        )
        .unwrap()
    }

    #[test]
    fn basic_verdicts() {
        assert!(!run("x < y\ny < x").is_sat());
        assert!(run("x < y").is_sat());
        match run("x = 1 - x") {
            Solution::Sat(w) => assert_eq!(w.get("x"), Some(&rat(1, 2))),
            Solution::Unsat => panic!("expected SAT"),
        }
        assert!(!run("t0@w:1 < t0.1@w:1\nt0.1@w:1 < t1@w:1").is_sat());
        assert!(run("t0@w:1 < t0.1@w:1").is_sat());
    }

    #[test]
    fn var_limit_enforced() {
        let sys = translate_branch(
            &parse_constraint_file("a < b\nc < d\ne < f\ng < h\ni < j").unwrap(),
        );
        assert!(matches!(
            oracle_solve(&sys, &OracleLimits { max_vars: 4 }),
            Err(SolveError::ResourceLimit(_))
        ));
    }

    /// A fixed mini-battery comparing oracle and solver verdicts (the large
    /// randomized comparison lives in the acceptance suite).
    #[test]
    fn agrees_with_solver_on_fixed_cases() {
        for text in [
            "x < y\ny < z",
            "x < y\ny < z\nz < x",
            "x <= 1 - y\ny <= 1 - x",
            "x = 1 - y\nx < 1/3\ny < 2/3",
            "t0@w:1 < c\nc < t1@w:1",
            "t0@w:1 < t0.1@w:1\nt1.1@w:1 < t1@w:1",
            "w:1:p < t0@w:1\nw R+ u >= t1@w:1\nw R+ u < 1",
            "c < d\nd < c",
        ] {
            let sys = translate_branch(&parse_constraint_file(text).unwrap());
            let a = solve(&sys).unwrap().is_sat();
            let b = oracle_solve(&sys, &OracleLimits::default()).unwrap().is_sat();
            assert_eq!(a, b, "solver/oracle disagree on:\n{text}");
        }
    }

    #[test]
    fn empty_system_is_sat() {
        assert!(run("").is_sat());
    }

    #[test]
    fn constant_contradiction() {
        assert!(!run("1/3 < 1/4").is_sat());
        assert!(run("1/4 < 1/3").is_sat());
    }
}
