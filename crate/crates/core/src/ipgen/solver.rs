use std::collections::BTreeMap;
use std::fs;
use std::process::Command;

use serde::Serialize;

use super::{write_lp, write_mst, IpModel};
use crate::{Error, Result};

/// Environment variable holding the solver command template.
pub const SOLVER_ENV: &str = "GRUNDY_IP_SOLVER";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    Feasible,
    Infeasible,
    TimeLimit,
    /// No solver configured.
    Unavailable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub objective: Option<f64>,
    pub assignment: BTreeMap<String, f64>,
}

/// Runs an external solver on `model`.
///
/// `command` is a shell template; `{model}`, `{mst}`, `{solution}` and
/// `{timeout}` are replaced by the LP file, the warm-start file, the path
/// where the solver must write its solution, and the time limit in seconds.
/// When `command` is `None` the template is read from [`SOLVER_ENV`]; if
/// that is unset too the status is [`SolveStatus::Unavailable`].
///
/// The solution file is read with [`parse_solution`].
pub fn solve_external(model: &IpModel, command: Option<&str>, time_limit: f64) -> Result<SolveOutcome> {
    let env = std::env::var(SOLVER_ENV).ok().filter(|s| !s.trim().is_empty());
    let Some(template) = command.map(str::to_owned).or(env) else {
        return Ok(SolveOutcome { status: SolveStatus::Unavailable, objective: None, assignment: BTreeMap::new() });
    };
    let dir = tempfile::tempdir()?;
    let lp = dir.path().join("model.lp");
    let mst = dir.path().join("model.mst");
    let sol = dir.path().join("model.sol");
    fs::write(&lp, write_lp(model))?;
    fs::write(&mst, write_mst(model))?;
    let cmd = template
        .replace("{model}", &lp.display().to_string())
        .replace("{mst}", &mst.display().to_string())
        .replace("{solution}", &sol.display().to_string())
        .replace("{timeout}", &time_limit.to_string());
    let out = Command::new("sh").arg("-c").arg(&cmd).output()?;
    let captured = format!("{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
    if !out.status.success() {
        return Err(Error::Solver { msg: format!("`{cmd}` exited with {}", out.status), output: captured });
    }
    let text = fs::read_to_string(&sol).unwrap_or_default();
    let mut outcome = parse_solution(model, &text).map_err(|msg| Error::Solver { msg, output: captured.clone() })?;
    if outcome.status == SolveStatus::Feasible && mentions(&captured, &["optimal"]) {
        outcome.status = SolveStatus::Optimal;
    }
    Ok(outcome)
}

fn mentions(text: &str, words: &[&str]) -> bool {
    let lower = text.to_lowercase();
    words.iter().any(|w| lower.contains(w))
}

/// Reads a solution file in `name value` form.
///
/// Lines whose first token is a model variable and whose second parses as a
/// number are values; everything else is ignored, except lines mentioning
/// the status (`optimal`, `infeasible`, `time limit`) and a line starting
/// with `objective` followed by a number. HiGHS solution files fit this
/// shape. Missing objectives are recomputed from the values.
pub fn parse_solution(model: &IpModel, text: &str) -> std::result::Result<SolveOutcome, String> {
    let mut assignment = BTreeMap::new();
    let mut objective = None;
    let mut status = None;
    for line in text.lines() {
        let lower = line.to_lowercase();
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if status.is_none() && (lower.contains("status") || tokens.len() == 1) {
            if lower.contains("infeasible") {
                status = Some(SolveStatus::Infeasible);
            } else if lower.contains("time limit") || lower.contains("time_limit") {
                status = Some(SolveStatus::TimeLimit);
            } else if lower.contains("optimal") {
                status = Some(SolveStatus::Optimal);
            }
        }
        if lower.starts_with("objective") {
            objective = tokens.iter().rev().find_map(|t| t.parse::<f64>().ok()).or(objective);
            continue;
        }
        if let [name, value, ..] = tokens[..] {
            if model.column(name).is_some() {
                if let Ok(v) = value.parse::<f64>() {
                    assignment.insert(name.to_string(), v);
                }
            }
        }
    }
    if status == Some(SolveStatus::Infeasible) {
        return Ok(SolveOutcome { status: SolveStatus::Infeasible, objective: None, assignment });
    }
    if assignment.is_empty() && !model.variables().is_empty() {
        return Err("solution file holds no variable values".into());
    }
    let objective = objective.or_else(|| {
        let x = model.dense(&assignment).ok()?;
        Some(model.objective_value(&x))
    });
    Ok(SolveOutcome { status: status.unwrap_or(SolveStatus::Feasible), objective, assignment })
}
