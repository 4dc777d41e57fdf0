//! Integer programming models for the connected Grundy number.
//!
//! Two formulations are built symbolically as [`IpModel`]s over binary
//! variables:
//!
//! - the standard model, with `z_v_k_t` (vertex `v` takes color `k` at time
//!   `t`) and `w_k` (color `k` is used);
//! - the representatives model, with `Z_u_v_t` (vertex `u` represents the
//!   class of `v`, colored at time `t`) and `y_u_v` (the class of `u`
//!   precedes that of `v`).
//!
//! All names are 1-based. Models can be checked against an assignment with
//! [`IpModel::violations`], written as CPLEX-LP text with [`write_lp`], and
//! handed to any external LP-file solver with [`solve_external`].

mod lp;
mod representatives;
mod solver;
mod standard;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

pub use lp::{write_lp, write_mst};
pub use representatives::{emit_representatives, emit_representatives_loose};
pub use solver::{parse_solution, solve_external, SolveOutcome, SolveStatus, SOLVER_ENV};
pub use standard::emit_standard;

use crate::coloring::is_connected_sequence;
use crate::{first_fit, Coloring, Error, Graph, Result, VertexSequence};
use crate::bounds::ColorSets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Standard,
    Representatives,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Standard => "standard",
            Self::Representatives => "representatives",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Self::Le => "<=",
            Self::Ge => ">=",
            Self::Eq => "=",
        }
    }
}

/// `Σ coef·x  sense  rhs`, with every variable on the left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    /// Constraint family, e.g. `c0a` or `r03`.
    pub family: &'static str,
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|&(j, c)| c as f64 * x[j]).sum()
    }

    pub fn holds(&self, x: &[f64]) -> bool {
        const TOL: f64 = 1e-6;
        let (lhs, rhs) = (self.lhs(x), self.rhs as f64);
        match self.sense {
            Sense::Le => lhs <= rhs + TOL,
            Sense::Ge => lhs >= rhs - TOL,
            Sense::Eq => (lhs - rhs).abs() <= TOL,
        }
    }
}

/// Variable name to value; variables not listed are zero.
pub type WarmStart = BTreeMap<String, u8>;

/// A maximization problem over binary variables.
#[derive(Debug, Clone, PartialEq)]
pub struct IpModel {
    pub name: String,
    pub kind: ModelKind,
    variables: Vec<String>,
    lookup: HashMap<String, usize>,
    objective: Vec<(usize, i64)>,
    constraints: Vec<Constraint>,
    warm_start: Option<WarmStart>,
}

impl IpModel {
    pub fn new(name: impl Into<String>, kind: ModelKind) -> Self {
        Self {
            name: name.into(),
            kind,
            variables: Vec::new(),
            lookup: HashMap::new(),
            objective: Vec::new(),
            constraints: Vec::new(),
            warm_start: None,
        }
    }

    /// Declares a binary variable and returns its column.
    ///
    /// # Panics
    /// If the name is already declared.
    pub fn add_binary(&mut self, name: String) -> usize {
        let j = self.variables.len();
        let prev = self.lookup.insert(name.clone(), j);
        assert!(prev.is_none(), "duplicate variable {name}");
        self.variables.push(name);
        j
    }

    pub fn set_objective(&mut self, terms: Vec<(usize, i64)>) {
        self.objective = merge(terms);
    }

    /// Adds a row after merging repeated columns and dropping zero
    /// coefficients. A row left without terms is dropped.
    pub fn add_constraint(&mut self, family: &'static str, name: String, terms: Vec<(usize, i64)>, sense: Sense, rhs: i64) {
        let terms = merge(terms);
        if terms.is_empty() {
            debug_assert!(
                Constraint { family, name: name.clone(), terms: Vec::new(), sense, rhs }.holds(&[]),
                "empty row {name} is infeasible"
            );
            return;
        }
        assert!(terms.iter().all(|&(j, _)| j < self.variables.len()), "row {name} uses an undeclared column");
        self.constraints.push(Constraint { family, name, terms, sense, rhs });
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn objective(&self) -> &[(usize, i64)] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Number of rows per constraint family.
    pub fn family_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for c in &self.constraints {
            *out.entry(c.family).or_default() += 1;
        }
        out
    }

    pub fn warm_start(&self) -> Option<&WarmStart> {
        self.warm_start.as_ref()
    }

    pub fn set_warm_start(&mut self, ws: WarmStart) -> Result<()> {
        if let Some(bad) = ws.keys().find(|k| !self.lookup.contains_key(*k)) {
            return Err(Error::InvalidParams(format!("warm start names unknown variable {bad}")));
        }
        self.warm_start = Some(ws);
        Ok(())
    }

    /// Dense column vector from named values; unknown names are an error.
    pub fn dense<V: Copy + Into<f64>>(&self, values: &BTreeMap<String, V>) -> Result<Vec<f64>> {
        let mut x = vec![0.0; self.variables.len()];
        for (name, &v) in values {
            let j = self
                .column(name)
                .ok_or_else(|| Error::InvalidParams(format!("unknown variable {name}")))?;
            x[j] = v.into();
        }
        Ok(x)
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().map(|&(j, c)| c as f64 * x[j]).sum()
    }

    /// Rows violated by `x`, in declaration order. Also reports values
    /// outside `{0, 1}` under the pseudo-family `binary`.
    pub fn violations(&self, x: &[f64]) -> Vec<String> {
        let mut out: Vec<String> = x
            .iter()
            .zip(&self.variables)
            .filter(|(&v, _)| v.abs() > 1e-6 && (v - 1.0).abs() > 1e-6)
            .map(|(_, name)| format!("binary:{name}"))
            .collect();
        out.extend(self.constraints.iter().filter(|c| !c.holds(x)).map(|c| c.name.clone()));
        out
    }
}

fn merge(terms: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
    for (j, c) in terms {
        match out.iter_mut().find(|(k, _)| *k == j) {
            Some(t) => t.1 += c,
            None => out.push((j, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

/// Translates a connected first-fit solution into variable values.
///
/// Standard model: `z_{v, c(v), t(v)} = 1` where `t(v)` is the 1-based
/// position of `v`, and `w_k = 1` for every used color. Representatives
/// model: the smallest vertex of each color class represents the class at
/// each member's time, and `y_{p,u} = 1` for representatives `p`, `u` whose
/// colors satisfy `c(p) < c(u)`.
pub fn warm_start_from(
    g: &Graph,
    cs: &ColorSets,
    sequence: &VertexSequence,
    coloring: &Coloring,
    kind: ModelKind,
) -> Result<WarmStart> {
    let n = g.vertex_count();
    if sequence.len() != n || coloring.len() != n {
        return Err(Error::InvalidParams("solution does not match the graph".into()));
    }
    if &first_fit(g, sequence) != coloring {
        return Err(Error::InvalidParams("coloring is not the first-fit coloring of the sequence".into()));
    }
    if !is_connected_sequence(g, sequence) {
        return Err(Error::InvalidParams("sequence is not connected".into()));
    }
    let color = |v: usize| coloring.get(v).expect("first-fit colors every vertex") as usize;
    let mut ws = WarmStart::new();
    for (i, &v) in sequence.as_slice().iter().enumerate() {
        if !cs.has_color(v, color(v)) {
            return Err(Error::WarmStart {
                vertex: v + 1,
                msg: format!("color {} exceeds its cap {}", color(v), cs.vertex_max[v]),
            });
        }
        if kind == ModelKind::Standard {
            ws.insert(format!("z_{}_{}_{}", v + 1, color(v), i + 1), 1);
        }
    }
    let used = coloring.used_colors() as usize;
    match kind {
        ModelKind::Standard => {
            for k in 1..=used {
                ws.insert(format!("w_{k}"), 1);
            }
        }
        ModelKind::Representatives => {
            let mut rep = vec![usize::MAX; used + 1];
            for v in g.vertices() {
                rep[color(v)] = rep[color(v)].min(v);
            }
            for (i, &v) in sequence.as_slice().iter().enumerate() {
                ws.insert(format!("Z_{}_{}_{}", rep[color(v)] + 1, v + 1, i + 1), 1);
            }
            for a in 1..=used {
                for b in a + 1..=used {
                    ws.insert(format!("y_{}_{}", rep[a] + 1, rep[b] + 1), 1);
                }
            }
        }
    }
    Ok(ws)
}
