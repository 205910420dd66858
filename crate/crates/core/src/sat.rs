//! Reduction from CNF satisfiability to the existence of a path with no
//! center: the gadget graph and coloring, and translations between
//! satisfying assignments and non-centered paths.

use serde::Serialize;

use crate::budget::Budget;
use crate::colorings::{certificate_holds, find_noncentered_path, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexSet};

/// Largest variable count accepted by the truth-table solver.
pub const MAX_TRUTH_TABLE_VARS: usize = 24;

/// Gadget colors start at 0; the shared [`Coloring`] type starts at 1, so
/// exported colorings are shifted by this offset.
pub const COLOR_OFFSET: u32 = 1;

/// CNF formula over variables `1..=n_vars`; literal `-v` is the negation of
/// `v`. Literals inside a clause are deduplicated and sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for mut clause in clauses {
            if let Some(&lit) = clause
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > n_vars)
            {
                return Err(Error::Precondition(format!(
                    "literal {lit} is not a variable in 1..={n_vars}"
                )));
            }
            clause.sort_by_key(|&l| (l.unsigned_abs(), l));
            clause.dedup();
            out.push(clause);
        }
        Ok(CnfFormula {
            n_vars,
            clauses: out,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| {
            !c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }

    /// Truth-table search, first satisfying assignment in binary counting
    /// order (variable 1 is the lowest bit).
    pub fn brute_force_sat(&self) -> Result<Option<Vec<bool>>> {
        if self.n_vars > MAX_TRUTH_TABLE_VARS {
            return Err(Error::TooLarge(format!(
                "truth tables are limited to {MAX_TRUTH_TABLE_VARS} variables"
            )));
        }
        Ok((0u64..1 << self.n_vars)
            .map(|bits| {
                (0..self.n_vars)
                    .map(|i| bits >> i & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .find(|a| self.evaluate(a)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Parses DIMACS CNF. Comment lines start with `c`; a trailing clause
/// without its terminating `0` is accepted.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let err = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [_, "cnf", n, m] = parts[..] else {
                return Err(err(line_no, "expected `p cnf <vars> <clauses>`"));
            };
            let n = n.parse().map_err(|_| err(line_no, "bad variable count"))?;
            let m = m.parse().map_err(|_| err(line_no, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err(line_no, "clause before header"));
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| err(line_no, &format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n {
                return Err(err(
                    line_no,
                    &format!("variable {} exceeds declared {n}", lit.unsigned_abs()),
                ));
            } else {
                current.push(lit as i32);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(err(last_line.max(1), "missing header"));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != m {
        return Err(err(
            last_line.max(1),
            &format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A nonempty formula meeting the gadget's assumptions remains.
    Reduced,
    /// No clauses remain.
    TriviallySat,
    /// The input contains an empty clause.
    Unsat,
}

/// Outcome of [`preprocess`].
#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub formula: CnfFormula,
    pub status: Status,
    /// Original variable of each remaining variable (`var_map[i]` for `i + 1`).
    pub var_map: Vec<usize>,
    /// Variables fixed because they occur with a single polarity, in the
    /// order they were fixed.
    pub forced: Vec<(usize, bool)>,
    /// Original indices (0-based) of dropped clauses.
    pub removed_clauses: Vec<usize>,
    original_vars: usize,
}

impl Preprocessed {
    /// Extends an assignment of the reduced formula to the original
    /// variables; variables that vanished entirely are set to false.
    pub fn lift(&self, assignment: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.original_vars];
        for &(v, val) in &self.forced {
            out[v - 1] = val;
        }
        for (i, &v) in self.var_map.iter().enumerate() {
            out[v - 1] = assignment[i];
        }
        out
    }
}

/// Drops tautological clauses, then repeatedly fixes every variable that
/// occurs with one polarity only and drops the clauses it satisfies.
/// Remaining variables are renumbered in their original order.
pub fn preprocess(f: &CnfFormula) -> Preprocessed {
    let n = f.n_vars;
    let mut alive: Vec<bool> = f
        .clauses
        .iter()
        .map(|c| !c.windows(2).any(|w| w[0] == -w[1]))
        .collect();
    let mut forced = Vec::new();
    let mut fixed = vec![false; n + 1];
    let status = if f.clauses.iter().any(|c| c.is_empty()) {
        Status::Unsat
    } else {
        loop {
            let mut pos = vec![false; n + 1];
            let mut neg = vec![false; n + 1];
            for (c, _) in f.clauses.iter().zip(&alive).filter(|(_, &a)| a) {
                for &l in c {
                    let v = l.unsigned_abs() as usize;
                    if l > 0 {
                        pos[v] = true;
                    } else {
                        neg[v] = true;
                    }
                }
            }
            let Some(v) = (1..=n).find(|&v| !fixed[v] && pos[v] != neg[v]) else {
                break;
            };
            fixed[v] = true;
            let lit = if pos[v] { v as i32 } else { -(v as i32) };
            forced.push((v, pos[v]));
            for (c, a) in f.clauses.iter().zip(alive.iter_mut()) {
                if *a && c.contains(&lit) {
                    *a = false;
                }
            }
        }
        if alive.iter().any(|&a| a) {
            Status::Reduced
        } else {
            Status::TriviallySat
        }
    };
    if status == Status::Unsat {
        alive.iter_mut().for_each(|a| *a = false);
    }
    let removed_clauses = (0..f.clauses.len()).filter(|&j| !alive[j]).collect();
    let mut used = vec![false; n + 1];
    for (c, _) in f.clauses.iter().zip(&alive).filter(|(_, &a)| a) {
        for &l in c {
            used[l.unsigned_abs() as usize] = true;
        }
    }
    let var_map: Vec<usize> = (1..=n).filter(|&v| used[v]).collect();
    let mut new_id = vec![0i32; n + 1];
    for (i, &v) in var_map.iter().enumerate() {
        new_id[v] = i as i32 + 1;
    }
    let clauses = f
        .clauses
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(c, _)| {
            c.iter()
                .map(|&l| l.signum() * new_id[l.unsigned_abs() as usize])
                .collect()
        })
        .collect();
    Preprocessed {
        formula: CnfFormula {
            n_vars: var_map.len(),
            clauses,
        },
        status,
        var_map,
        forced,
        removed_clauses,
        original_vars: n,
    }
}

/// Role of a gadget vertex. Variables and clauses are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    U { i: usize },
    UPrime { i: usize },
    WPrime { j: usize },
    W { i: usize, j: usize, positive: bool },
}

/// Gadget graph with colors in `0..=n+m`: `u_i` and `u'_i` get `i`, every
/// vertex standing for clause `j` gets `n + j`.
///
/// Vertex ids: `u_0..u_n`, then `u'_0..u'_n`, then `w'_1..w'_m`, then for
/// each variable its true path followed by its false path, each ordered by
/// clause.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub raw_colors: Vec<u32>,
    pub roles: Vec<Role>,
    pub n_vars: usize,
    pub n_clauses: usize,
    pub true_paths: Vec<Vec<usize>>,
    pub false_paths: Vec<Vec<usize>>,
}

impl GadgetInstance {
    pub fn u(&self, i: usize) -> usize {
        i
    }

    pub fn u_prime(&self, i: usize) -> usize {
        self.n_vars + 1 + i
    }

    pub fn w_prime(&self, j: usize) -> usize {
        2 * self.n_vars + 1 + j
    }

    /// Colors shifted by [`COLOR_OFFSET`].
    pub fn coloring(&self) -> Coloring {
        Coloring::new(self.raw_colors.iter().map(|&c| c + COLOR_OFFSET).collect())
            .expect("shifted colors are positive")
    }

    /// `U` together with `U'`.
    pub fn anchor_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.graph.n(), 0..2 * self.n_vars + 2).expect("in range")
    }
}

/// Checks the gadget's assumptions: at least one variable and clause, no
/// tautological clause, every variable with both polarities.
pub fn check_assumptions(f: &CnfFormula) -> Result<()> {
    if f.n_vars == 0 || f.clauses.is_empty() {
        return Err(Error::Precondition(
            "gadget needs at least one variable and one clause".into(),
        ));
    }
    if let Some(j) = f
        .clauses
        .iter()
        .position(|c| c.windows(2).any(|w| w[0] == -w[1]))
    {
        return Err(Error::Precondition(format!(
            "clause {} contains a variable and its negation",
            j + 1
        )));
    }
    for v in 1..=f.n_vars as i32 {
        let pos = f.clauses.iter().any(|c| c.contains(&v));
        let neg = f.clauses.iter().any(|c| c.contains(&-v));
        if !(pos && neg) {
            return Err(Error::Precondition(format!(
                "variable {v} does not occur with both polarities"
            )));
        }
    }
    Ok(())
}

pub fn build_gadget(f: &CnfFormula) -> Result<GadgetInstance> {
    check_assumptions(f)?;
    let (n, m) = (f.n_vars, f.clauses.len());
    let mut roles: Vec<Role> = (0..=n).map(|i| Role::U { i }).collect();
    roles.extend((0..=n).map(|i| Role::UPrime { i }));
    roles.extend((1..=m).map(|j| Role::WPrime { j }));
    let mut raw_colors: Vec<u32> = (0..=n as u32)
        .chain(0..=n as u32)
        .chain((1..=m as u32).map(|j| n as u32 + j))
        .collect();
    let mut edges = Vec::new();
    let mut true_paths = Vec::with_capacity(n);
    let mut false_paths = Vec::with_capacity(n);
    for i in 1..=n {
        for positive in [true, false] {
            let lit = if positive { i as i32 } else { -(i as i32) };
            let mut block = Vec::new();
            for (j, c) in f.clauses.iter().enumerate() {
                if c.contains(&lit) {
                    block.push(roles.len());
                    roles.push(Role::W {
                        i,
                        j: j + 1,
                        positive,
                    });
                    raw_colors.push((n + j + 1) as u32);
                }
            }
            let mut walk = vec![i - 1];
            walk.extend(&block);
            walk.push(i);
            edges.extend(walk.windows(2).map(|w| (w[0], w[1])));
            if positive {
                true_paths.push(block);
            } else {
                false_paths.push(block);
            }
        }
    }
    let mut p0: Vec<usize> = (1..=n).map(|i| n + 1 + i).collect();
    p0.extend((1..=m).map(|j| 2 * n + 1 + j));
    p0.push(0);
    edges.extend(p0.windows(2).map(|w| (w[0], w[1])));
    edges.push((n, n + 1));
    Ok(GadgetInstance {
        graph: Graph::from_edges(roles.len(), edges)?,
        raw_colors,
        roles,
        n_vars: n,
        n_clauses: m,
        true_paths,
        false_paths,
    })
}

/// The path `u'_1 .. u'_n, w'_1 .. w'_m, u_0, P*_1, u_1, .., P*_n, u_n, u'_0`
/// where `P*_i` is the true or false path of variable `i`.
pub fn assignment_to_path(gi: &GadgetInstance, assignment: &[bool]) -> Result<Path> {
    let n = gi.n_vars;
    if assignment.len() != n {
        return Err(Error::Precondition(format!(
            "assignment has {} values for {n} variables",
            assignment.len()
        )));
    }
    let mut vs: Vec<usize> = (1..=n).map(|i| gi.u_prime(i)).collect();
    vs.extend((1..=gi.n_clauses).map(|j| gi.w_prime(j)));
    vs.push(gi.u(0));
    for i in 1..=n {
        let block = if assignment[i - 1] {
            &gi.true_paths[i - 1]
        } else {
            &gi.false_paths[i - 1]
        };
        vs.extend(block);
        vs.push(gi.u(i));
    }
    vs.push(gi.u_prime(0));
    if !certificate_holds(&vs, &gi.raw_colors) {
        let mut hit = vec![false; gi.n_clauses + 1];
        for &v in &vs {
            if let Role::W { j, .. } = gi.roles[v] {
                hit[j] = true;
            }
        }
        let clause = (1..=gi.n_clauses).find(|&j| !hit[j]).unwrap_or(0);
        return Err(Error::Unsatisfying { clause });
    }
    Path::new(&gi.graph, vs)
}

/// Reads the truth assignment off a non-centered path of the gadget.
pub fn path_to_assignment(gi: &GadgetInstance, path: &[usize]) -> Result<Vec<bool>> {
    Path::new(&gi.graph, path.to_vec())?;
    if !certificate_holds(path, &gi.raw_colors) {
        return Err(Error::InvalidPath("path has a center".into()));
    }
    let mut on = vec![false; gi.graph.n()];
    for &v in path {
        on[v] = true;
    }
    (0..gi.n_vars)
        .map(|i| {
            let t = gi.true_paths[i].iter().all(|&v| on[v]);
            let f = gi.false_paths[i].iter().all(|&v| on[v]);
            let t_any = gi.true_paths[i].iter().any(|&v| on[v]);
            let f_any = gi.false_paths[i].iter().any(|&v| on[v]);
            match (t, f_any, f, t_any) {
                (true, false, _, _) => Ok(true),
                (_, _, true, false) => Ok(false),
                _ => Err(Error::InvalidPath(format!(
                    "path does not traverse exactly one branch of variable {}",
                    i + 1
                ))),
            }
        })
        .collect()
}

/// Side-by-side verdicts of the truth table and the path search.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub satisfiable: bool,
    pub status: Status,
    /// Whether the gadget has a path with no center; `None` when
    /// preprocessing settled the formula.
    pub path_found: Option<bool>,
    pub gadget_vertices: Option<usize>,
    pub certificate: Option<Vec<usize>>,
    /// Assignment read off the certificate, over the original variables.
    pub assignment: Option<Vec<bool>>,
    pub nodes: u64,
    pub agree: bool,
}

/// Decides the formula twice, by truth table and by searching the gadget
/// for a non-centered path, and reports whether the verdicts agree. A
/// certificate only counts if the assignment read from it satisfies the
/// original formula.
pub fn decide_equivalence(f: &CnfFormula, budget: &Budget) -> Result<EquivalenceReport> {
    let satisfiable = f.brute_force_sat()?.is_some();
    let pre = preprocess(f);
    let mut report = EquivalenceReport {
        satisfiable,
        status: pre.status,
        path_found: None,
        gadget_vertices: None,
        certificate: None,
        assignment: None,
        nodes: 0,
        agree: false,
    };
    match pre.status {
        Status::TriviallySat => {
            report.assignment = Some(pre.lift(&[]));
            report.agree = satisfiable && f.evaluate(report.assignment.as_ref().unwrap());
        }
        Status::Unsat => report.agree = !satisfiable,
        Status::Reduced => {
            let gi = build_gadget(&pre.formula)?;
            let search = find_noncentered_path(&gi.graph, &gi.coloring(), budget)?;
            report.nodes = search.nodes;
            report.gadget_vertices = Some(gi.graph.n());
            report.path_found = Some(search.path.is_some());
            match search.path {
                Some(p) => {
                    let lifted = pre.lift(&path_to_assignment(&gi, &p)?);
                    report.agree = satisfiable && f.evaluate(&lifted);
                    report.assignment = Some(lifted);
                    report.certificate = Some(p);
                }
                None => report.agree = !satisfiable,
            }
        }
    }
    Ok(report)
}
