//! Compiles monotone cubic 3-CNF formulas into extension instances whose
//! satisfiability (in the exactly-one sense) coincides with the existence
//! of a globally minimal defensive alliance through the forced set, plus a
//! desk-scale exactly-one satisfiability decider for cross-checking.

use thiserror::Error;

use crate::graph::{GraphBuilder, VertexSet};
use crate::tree::ExtensionInstance;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: expected header `p cnf <vars> <clauses>`")]
    Header { line: usize },
    #[error("line {line}: negative literal {lit} in a monotone formula")]
    NegativeLiteral { line: usize, lit: i64 },
    #[error("line {line}: clause has {got} distinct variables, expected exactly 3")]
    ClauseArity { line: usize, got: usize },
    #[error("line {line}: variable {var} outside 1..={max}")]
    VariableRange { line: usize, var: usize, max: usize },
    #[error("line {line}: clause line must be terminated by 0")]
    MissingTerminator { line: usize },
    #[error("declared {declared} clauses but found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("variable x{var} occurs {got} times, expected exactly 3 in a cubic formula")]
    NotCubic { var: usize, got: usize },
    #[error("{vars} variables exceed the assignment scan cap {cap}")]
    CapExceeded { vars: usize, cap: usize },
}

/// A monotone 3-CNF formula in which every clause names three distinct
/// variables and every variable occurs in exactly three clauses (hence the
/// clause count equals the variable count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCnf {
    num_variables: usize,
    clauses: Vec<[usize; 3]>,
}

impl MonotoneCnf {
    /// Validates the cubic occurrence profile. Variables are 1-based.
    pub fn new(num_variables: usize, clauses: Vec<[usize; 3]>) -> Result<Self, CnfError> {
        let mut occurrences = vec![0usize; num_variables + 1];
        for clause in &clauses {
            for &v in clause {
                occurrences[v] += 1;
            }
        }
        if let Some((var, &got)) = occurrences
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &count)| count != 3)
        {
            return Err(CnfError::NotCubic { var, got });
        }
        let clauses = clauses
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Ok(Self {
            num_variables,
            clauses,
        })
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }
}

/// Parses a DIMACS-style document with only positive literals: a
/// `p cnf <vars> <clauses>` header, `c` comment lines, and clause lines of
/// three distinct positive integers terminated by `0`.
pub fn parse_cnf(text: &str) -> Result<MonotoneCnf, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[usize; 3]> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 4 || tokens[1] != "cnf" {
                return Err(CnfError::Header { line });
            }
            let vars = tokens[2].parse().map_err(|_| CnfError::Header { line })?;
            let m = tokens[3].parse().map_err(|_| CnfError::Header { line })?;
            header = Some((vars, m));
            continue;
        }
        let (num_variables, _) = header.ok_or(CnfError::Header { line })?;
        let mut lits: Vec<i64> = Vec::new();
        for token in trimmed.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| CnfError::MissingTerminator { line })?;
            lits.push(lit);
        }
        if lits.last() != Some(&0) {
            return Err(CnfError::MissingTerminator { line });
        }
        lits.pop();
        if let Some(&lit) = lits.iter().find(|&&l| l < 0) {
            return Err(CnfError::NegativeLiteral { line, lit });
        }
        let mut vars: Vec<usize> = lits.iter().map(|&l| l as usize).collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.len() != 3 {
            return Err(CnfError::ClauseArity {
                line,
                got: vars.len(),
            });
        }
        if let Some(&var) = vars.iter().find(|&&v| v == 0 || v > num_variables) {
            return Err(CnfError::VariableRange {
                line,
                var,
                max: num_variables,
            });
        }
        clauses.push([vars[0], vars[1], vars[2]]);
    }
    let (num_variables, declared) = header.ok_or(CnfError::Header { line: 1 })?;
    if clauses.len() != declared {
        return Err(CnfError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    MonotoneCnf::new(num_variables, clauses)
}

/// Compiles `phi` into an extension instance on a bipartite graph of
/// maximum degree 9 with `5n + 11m` vertices: variable vertices `v{i}`
/// carry four pendant leaves `y{i}_{1..4}`; each clause vertex `c{j}`
/// carries three pendant leaves `z{j}_{1..3}`, a guard gadget
/// `f{j}` / `f{j}_{1..2}`, and sits on a cycle through the connector
/// vertices `e{j}` (each with pendants `e{j}_{1..3}`). The forced set is
/// all `c{j}`, `e{j}`, `f{j}`; the forbidden set is empty.
pub fn build_extension_instance(phi: &MonotoneCnf) -> ExtensionInstance {
    let n = phi.num_variables();
    let m = phi.clauses().len();
    debug_assert!(m >= 2, "a cubic formula has at least three clauses");
    let mut b = GraphBuilder::new();
    let var = |i: usize| format!("v{i}");
    let clause = |j: usize| format!("c{j}");
    let connector = |j: usize| format!("e{j}");
    let guard = |j: usize| format!("f{j}");

    for j in 1..=m {
        let c = clause(j);
        for (slot, &x) in phi.clauses()[j - 1].iter().enumerate() {
            debug_assert!(slot < 3 && x >= 1 && x <= n);
            b.edge(&c, &var(x)).expect("clause-variable edges are unique");
        }
        for s in 1..=3 {
            b.edge(&c, &format!("z{j}_{s}")).expect("fresh leaf");
        }
        b.edge(&c, &guard(j)).expect("fresh edge");
        for t in 1..=2 {
            b.edge(&guard(j), &format!("f{j}_{t}")).expect("fresh leaf");
        }
        // the clause cycle: c_j joins its own connector and the next one
        b.edge(&c, &connector(j)).expect("fresh edge");
        b.edge(&c, &connector(j % m + 1)).expect("fresh edge");
        for l in 1..=3 {
            b.edge(&connector(j), &format!("e{j}_{l}")).expect("fresh leaf");
        }
    }
    for i in 1..=n {
        for k in 1..=4 {
            b.edge(&var(i), &format!("y{i}_{k}")).expect("fresh leaf");
        }
    }
    let graph = b.finish();

    assert_eq!(graph.n(), 5 * n + 11 * m, "gadget vertex count");
    for i in 1..=n {
        let v = graph.vertex(&var(i)).expect("variable vertex exists");
        assert_eq!(graph.degree(v), 7, "variable degree");
    }
    for j in 1..=m {
        let c = graph.vertex(&clause(j)).expect("clause vertex exists");
        assert_eq!(graph.degree(c), 9, "clause degree");
    }
    assert!(graph.vertices().all(|x| graph.degree(x) <= 9));
    // bipartition: clause side = {c, e leaves, f leaves, y leaves},
    // variable side = {v, z leaves, f, e}
    let clause_side = |label: &str| {
        label.starts_with('c')
            || label.starts_with('y')
            || (label.starts_with('e') && label.contains('_'))
            || (label.starts_with('f') && label.contains('_'))
    };
    for (a, bx) in graph.edges() {
        assert_ne!(
            clause_side(graph.label(a)),
            clause_side(graph.label(bx)),
            "gadget is bipartite"
        );
    }

    let mut forced = VertexSet::new();
    for j in 1..=m {
        for name in [clause(j), connector(j), guard(j)] {
            forced.insert(graph.vertex(&name).expect("forced vertex exists"));
        }
    }
    ExtensionInstance::new(graph, forced, VertexSet::new())
}

/// Default bound on the exactly-one assignment scan.
pub const ONE_IN_THREE_CAP: usize = 24;

/// Scans all assignments and returns one in which every clause has exactly
/// one true variable, or `None`. `assignment[i]` is the value of `x{i+1}`.
pub fn one_in_three_brute(phi: &MonotoneCnf) -> Result<Option<Vec<bool>>, CnfError> {
    let n = phi.num_variables();
    if n > ONE_IN_THREE_CAP {
        return Err(CnfError::CapExceeded {
            vars: n,
            cap: ONE_IN_THREE_CAP,
        });
    }
    for mask in 0u64..(1u64 << n) {
        let ok = phi.clauses().iter().all(|clause| {
            clause
                .iter()
                .filter(|&&x| mask >> (x - 1) & 1 == 1)
                .count()
                == 1
        });
        if ok {
            return Ok(Some((0..n).map(|i| mask >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}
