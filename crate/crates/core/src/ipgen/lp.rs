use std::fmt::Write;

use super::IpModel;

const WIDTH: usize = 78;

/// CPLEX-LP text: objective, rows in declaration order, a bounds section
/// and the binaries. Output depends on the model only.
pub fn write_lp(m: &IpModel) -> String {
    let names = m.variables();
    let mut out = String::new();
    writeln!(out, "\\ {}", m.name).unwrap();
    writeln!(out, "\\ {} variables, {} constraints", names.len(), m.constraints().len()).unwrap();
    out.push_str("Maximize\n");
    let mut line = String::from(" obj:");
    if m.objective().is_empty() {
        // An empty objective still needs a term.
        if let Some(first) = names.first() {
            push_token(&mut out, &mut line, format!("0 {first}"));
        }
    }
    push_terms(&mut out, &mut line, names, m.objective());
    out.push_str(&line);
    out.push('\n');
    out.push_str("Subject To\n");
    for c in m.constraints() {
        let mut line = format!(" {}:", c.name);
        push_terms(&mut out, &mut line, names, &c.terms);
        push_token(&mut out, &mut line, format!("{} {}", c.sense.symbol(), c.rhs));
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("Bounds\n");
    for name in names {
        writeln!(out, " 0 <= {name} <= 1").unwrap();
    }
    out.push_str("Binaries\n");
    let mut line = String::new();
    for name in names {
        push_token(&mut out, &mut line, name.clone());
    }
    if !line.is_empty() {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("End\n");
    out
}

fn push_terms(out: &mut String, line: &mut String, names: &[String], terms: &[(usize, i64)]) {
    for (i, &(j, c)) in terms.iter().enumerate() {
        let sign = if c < 0 { "-" } else { "+" };
        let mag = c.unsigned_abs();
        let coef = if mag == 1 { String::new() } else { format!("{mag} ") };
        let token = if i == 0 && c > 0 {
            format!("{coef}{}", names[j])
        } else {
            format!("{sign} {coef}{}", names[j])
        };
        push_token(out, line, token);
    }
}

/// Appends ` token`, flushing `line` first when it would grow past the width.
fn push_token(out: &mut String, line: &mut String, token: String) {
    if !line.trim().is_empty() && line.len() + 1 + token.len() > WIDTH {
        out.push_str(line);
        out.push('\n');
        line.clear();
        line.push_str("  ");
    }
    line.push(' ');
    line.push_str(&token);
}

/// Warm start as `<name> <value>` lines covering every variable (absent
/// ones are written as 0). Empty when the model has no warm start.
pub fn write_mst(m: &IpModel) -> String {
    let Some(ws) = m.warm_start() else { return String::new() };
    let mut out = String::new();
    for name in m.variables() {
        writeln!(out, "{name} {}", ws.get(name).copied().unwrap_or(0)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipgen::{ModelKind, Sense, WarmStart};

    #[test]
    fn empty_constraint_model() {
        let mut m = IpModel::new("tiny", ModelKind::Standard);
        let a = m.add_binary("a".into());
        m.set_objective(vec![(a, 1)]);
        let lp = write_lp(&m);
        assert_eq!(
            lp,
            "\\ tiny\n\\ 1 variables, 0 constraints\nMaximize\n obj: a\nSubject To\nBounds\n 0 <= a <= 1\nBinaries\n a\nEnd\n"
        );
    }

    #[test]
    fn long_rows_wrap() {
        let mut m = IpModel::new("wide", ModelKind::Standard);
        let cols: Vec<usize> = (0..40).map(|i| m.add_binary(format!("x_{i}"))).collect();
        m.set_objective(cols.iter().map(|&j| (j, 1)).collect());
        m.add_constraint("c", "row".into(), cols.iter().map(|&j| (j, -2)).collect(), Sense::Ge, -3);
        let lp = write_lp(&m);
        assert!(lp.lines().all(|l| l.len() <= WIDTH), "{lp}");
        assert!(lp.contains(" row: - 2 x_0 - 2 x_1"));
        assert!(lp.contains(">= -3\n"));
    }

    #[test]
    fn mst_lists_every_variable() {
        let mut m = IpModel::new("m", ModelKind::Standard);
        m.add_binary("a".into());
        m.add_binary("b".into());
        assert_eq!(write_mst(&m), "");
        m.set_warm_start(WarmStart::from([("b".to_string(), 1)])).unwrap();
        assert_eq!(write_mst(&m), "a 0\nb 1\n");
        assert!(m.set_warm_start(WarmStart::from([("c".to_string(), 1)])).is_err());
    }
}
