//! Plain-text code files.
//!
//! ```text
//! # optional comments
//! lattice D=2 L=3 boundary=open
//! role=gauge
//! r=2
//! name=bacon-shor-L3
//! X(0,0) X(1,0)
//! Z(0,0) Z(0,1)
//! ```
//!
//! Qubits are vertex cells inferred from the generators unless a
//! `qubits:` line lists them explicitly (needed for edge or face qubits,
//! or for qubits no generator touches). The `name=` line is optional.

use std::fmt::Write as _;

use crate::code::{CodeSpec, Role};
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Cell, Lattice};
use crate::layout::QubitLayout;
use crate::pauli::PauliOp;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn key_value<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected `{key}=...`, found `{token}`")))
}

fn parse_num(line: usize, s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| perr(line, format!("{what} must be a non-negative integer, found `{s}`")))
}

/// Parses a code file and validates locality against the declared `r`.
pub fn parse_code(text: &str) -> Result<CodeSpec> {
    let mut lattice = None;
    let mut role = None;
    let mut r = None;
    let mut name = None;
    let mut qubits: Option<(usize, Vec<Cell>)> = None;
    let mut gen_lines: Vec<(usize, &str)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("lattice") {
            if !gen_lines.is_empty() {
                return Err(perr(lineno, "header lines must precede generators"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(perr(lineno, "expected `lattice D=<d> L=<l> boundary=<open|periodic>`"));
            }
            let d = parse_num(lineno, key_value(lineno, toks[0], "D")?, "D")?;
            let l = parse_num(lineno, key_value(lineno, toks[1], "L")?, "L")?;
            let b: Boundary = key_value(lineno, toks[2], "boundary")?.parse().map_err(|e: String| perr(lineno, e))?;
            lattice = Some(Lattice::new(d, l, b).map_err(|e| perr(lineno, e.to_string()))?);
        } else if let Some(v) = line.strip_prefix("role=") {
            role = Some(v.trim().parse::<Role>().map_err(|e| perr(lineno, e))?);
        } else if let Some(v) = line.strip_prefix("r=") {
            r = Some(parse_num(lineno, v.trim(), "r")?);
        } else if let Some(v) = line.strip_prefix("name=") {
            name = Some(v.trim().to_string());
        } else if let Some(v) = line.strip_prefix("qubits:") {
            if qubits.is_some() {
                return Err(perr(lineno, "duplicate `qubits:` line"));
            }
            let cells = v
                .split_whitespace()
                .map(|t| t.parse::<Cell>().map_err(|e| perr(lineno, e)))
                .collect::<Result<Vec<_>>>()?;
            qubits = Some((lineno, cells));
        } else {
            gen_lines.push((lineno, line));
        }
    }

    let lattice = lattice.ok_or_else(|| perr(0, "missing `lattice D=.. L=.. boundary=..` line"))?;
    let role = role.ok_or_else(|| perr(0, "missing `role=` line"))?;
    let r = r.ok_or_else(|| perr(0, "missing `r=` line"))?;

    let layout = match qubits {
        Some((lineno, cells)) => QubitLayout::new(&lattice, cells).map_err(|e| perr(lineno, e.to_string()))?,
        None => {
            let mut cells = Vec::new();
            for &(lineno, line) in &gen_lines {
                for tok in line.split_whitespace() {
                    let cell: Cell = tok.get(1..).unwrap_or("").parse().map_err(|e| perr(lineno, e))?;
                    if !cell.is_vertex() {
                        return Err(perr(lineno, format!("{cell} is not a vertex; declare it in a `qubits:` line")));
                    }
                    cells.push(cell);
                }
            }
            cells.sort();
            cells.dedup();
            QubitLayout::new(&lattice, cells).map_err(|e| perr(0, e.to_string()))?
        }
    };

    let gens = gen_lines
        .iter()
        .map(|&(lineno, line)| {
            PauliOp::parse(line, &layout).map_err(|e| match e {
                Error::Parse { msg, .. } => perr(lineno, msg),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let name = name.unwrap_or_else(|| "unnamed".to_string());
    let code = CodeSpec::new(name, layout, gens, role, r)?;
    code.validate_locality()?;
    Ok(code)
}

fn implicit_layout(code: &CodeSpec) -> bool {
    let mut cells: Vec<Cell> =
        code.generators().iter().flat_map(|g| g.support().into_iter().map(|q| *code.layout().cell(q))).collect();
    cells.sort();
    cells.dedup();
    cells.iter().all(Cell::is_vertex) && cells.as_slice() == code.layout().cells()
}

pub fn serialize_code(code: &CodeSpec) -> String {
    let lat = code.lattice();
    let mut out = String::new();
    let _ = writeln!(out, "lattice D={} L={} boundary={}", lat.dim(), lat.size(), lat.boundary());
    let _ = writeln!(out, "role={}", code.role());
    let _ = writeln!(out, "r={}", code.declared_r());
    let _ = writeln!(out, "name={}", code.name());
    if !implicit_layout(code) {
        let cells: Vec<String> = code.layout().cells().iter().map(Cell::to_string).collect();
        let _ = writeln!(out, "qubits: {}", cells.join(" "));
    }
    for g in code.generators() {
        let _ = writeln!(out, "{}", code.op_text(g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn all_zoo() -> Vec<CodeSpec> {
        vec![
            zoo::repetition_1d(5, Boundary::Open).unwrap(),
            zoo::repetition_1d(4, Boundary::Periodic).unwrap(),
            zoo::toric_2d(3).unwrap(),
            zoo::generalized_toric(3, 2).unwrap(),
            zoo::surface_2d(3).unwrap(),
            zoo::bacon_shor_2d(3).unwrap(),
            zoo::heisenberg(2, 3).unwrap(),
            zoo::steane_chain(3).unwrap(),
        ]
    }

    #[test]
    fn zoo_round_trip() {
        for code in all_zoo() {
            let text = serialize_code(&code);
            let back = parse_code(&text).unwrap();
            assert_eq!(back, code, "{}", code.name());
            assert_eq!(serialize_code(&back), text);
        }
    }

    #[test]
    fn bacon_shor_file_matches_constructor() {
        let text = "\
# Bacon-Shor L=2
lattice D=2 L=2 boundary=open
role=gauge
r=2
name=bacon-shor-L2
X(0,0) X(1,0)
X(0,1) X(1,1)
Z(0,0) Z(0,1)
Z(1,0) Z(1,1)
";
        assert_eq!(parse_code(text).unwrap(), zoo::bacon_shor_2d(2).unwrap());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "lattice D=1 L=4 boundary=open\nrole=stabilizer\nr=2\nZ(0) Q(1)\n";
        assert!(matches!(parse_code(bad), Err(Error::Parse { line: 4, .. })));
        let dup = "lattice D=1 L=4 boundary=open\nrole=stabilizer\nr=2\nqubits: (0) (0)\nZ(0)\n";
        assert!(matches!(parse_code(dup), Err(Error::Parse { line: 4, .. })));
        let anti = "lattice D=1 L=4 boundary=open\nrole=stabilizer\nr=2\nZ(0) Z(1)\nX(1) X(2)\n";
        assert_eq!(parse_code(anti).unwrap_err(), Error::AnticommutingStabilizers { first: 0, second: 1 });
        let nonlocal = "lattice D=1 L=4 boundary=open\nrole=stabilizer\nr=2\nX(0) X(3)\n";
        assert!(matches!(parse_code(nonlocal), Err(Error::Locality { index: 0, .. })));
        assert!(parse_code("role=gauge\nr=2\n").is_err());
    }

    #[test]
    fn explicit_qubits_for_untouched_sites() {
        let text =
            "lattice D=1 L=3 boundary=open\nrole=stabilizer\nr=2\nname=partial\nqubits: (0) (1) (2)\nZ(0) Z(1)\n";
        let code = parse_code(text).unwrap();
        assert_eq!(code.num_qubits(), 3);
        assert_eq!(serialize_code(&code), text);
    }
}
