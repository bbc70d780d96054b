//! 3-CNF and positive NAE-3-SAT formulas with DIMACS-style text formats.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A 3-CNF formula. Literals are signed 1-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf3 {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl Cnf3 {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            let vars = c.map(|l| l.unsigned_abs() as usize);
            if vars.iter().any(|&v| v == 0 || v > num_vars) {
                return Err(Error::precondition(format!(
                    "clause {j} has a literal outside 1..={num_vars}"
                )));
            }
            if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
                return Err(Error::precondition(format!(
                    "clause {j} must contain three distinct variables"
                )));
            }
        }
        Ok(Cnf3 { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn is_satisfied(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let (num_vars, rows) = parse_rows(text, "cnf")?;
        let clauses = rows
            .into_iter()
            .map(|r| {
                <[i32; 3]>::try_from(r.as_slice())
                    .map_err(|_| Error::Parse(format!("expected 3 literals per clause, got {}", r.len())))
            })
            .collect::<Result<_>>()?;
        Cnf3::new(num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        write_rows("cnf", self.num_vars, self.clauses.iter().map(|c| c.to_vec()))
    }
}

/// A positive NAE-3-SAT formula: every clause is three distinct variables,
/// and is satisfied when it contains both a true and a false variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaeFormula {
    num_vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl NaeFormula {
    pub fn new(num_vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if c.iter().any(|&v| v == 0 || v > num_vars) {
                return Err(Error::precondition(format!(
                    "clause {j} has a variable outside 1..={num_vars}"
                )));
            }
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(Error::precondition(format!(
                    "clause {j} must contain three distinct variables"
                )));
            }
        }
        Ok(NaeFormula { num_vars, clauses })
    }

    /// Clauses are the lines of the Fano plane.
    pub fn fano() -> Self {
        let lines = vec![[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
        NaeFormula::new(7, lines).expect("fano lines are valid")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    pub fn is_satisfied(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            let vals = c.map(|v| assignment[v - 1]);
            vals.contains(&true) && vals.contains(&false)
        })
    }

    /// Number of clauses containing each variable, indexed from 0.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.num_vars];
        for c in &self.clauses {
            for &v in c {
                occ[v - 1] += 1;
            }
        }
        occ
    }

    /// Parses `p nae <vars> <clauses>` followed by zero-terminated lines of
    /// three positive variables.
    pub fn parse(text: &str) -> Result<Self> {
        let (num_vars, rows) = parse_rows(text, "nae")?;
        let clauses = rows
            .into_iter()
            .map(|r| {
                if r.iter().any(|&l| l <= 0) {
                    return Err(Error::Parse("nae clauses take positive variables only".into()));
                }
                let r: Vec<usize> = r.into_iter().map(|l| l as usize).collect();
                <[usize; 3]>::try_from(r.as_slice())
                    .map_err(|_| Error::Parse(format!("expected 3 variables per clause, got {}", r.len())))
            })
            .collect::<Result<_>>()?;
        NaeFormula::new(num_vars, clauses)
    }

    pub fn to_text(&self) -> String {
        write_rows(
            "nae",
            self.num_vars,
            self.clauses.iter().map(|c| c.iter().map(|&v| v as i32).collect()),
        )
    }
}

fn parse_rows(text: &str, kind: &str) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::Parse("duplicate problem line".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != kind {
                return Err(Error::Parse(format!("expected `p {kind} <vars> <clauses>`")));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse(format!("bad header count {s:?}: {e}")));
            header = Some((num(parts[2])?, num(parts[3])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse("clause before problem line".into()));
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|e| Error::Parse(format!("bad literal {tok:?}: {e}")))?;
            if lit == 0 {
                rows.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        rows.push(current);
    }
    let (vars, count) = header.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    if rows.len() != count {
        return Err(Error::Parse(format!("header declares {count} clauses, found {}", rows.len())));
    }
    Ok((vars, rows))
}

fn write_rows(kind: &str, vars: usize, rows: impl ExactSizeIterator<Item = Vec<i32>>) -> String {
    let mut out = format!("p {kind} {vars} {}\n", rows.len());
    for r in rows {
        for l in r {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}
