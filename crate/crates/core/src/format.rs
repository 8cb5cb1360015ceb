//! Line-oriented text formats for circuits and topologies.
//!
//! Circuit files start with `radix <d>` and `wires <n>` headers, followed by
//! one gate per line. `#` starts a comment. Routed circuits use the extended
//! opcodes for promotion and propagation gates. Printing is deterministic:
//! one statement per line, single spaces, LF endings.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::topology::CouplingGraph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_i64(tok: &str, line: usize, what: &str) -> Result<i64> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// Parses a circuit file. Errors carry 1-based line numbers.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut radix: Option<usize> = None;
    let mut wires: Option<usize> = None;
    let mut circuit: Option<Circuit> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let op = tokens[0];

        if circuit.is_none() {
            match op {
                "radix" => {
                    if tokens.len() != 2 {
                        return Err(parse_err(lineno, "radix takes one value"));
                    }
                    radix = Some(parse_usize(tokens[1], lineno, "radix")?);
                    continue;
                }
                "wires" => {
                    if tokens.len() != 2 {
                        return Err(parse_err(lineno, "wires takes one value"));
                    }
                    wires = Some(parse_usize(tokens[1], lineno, "wire count")?);
                    continue;
                }
                _ => {
                    let (Some(d), Some(n)) = (radix, wires) else {
                        return Err(parse_err(
                            lineno,
                            "radix and wires headers must precede gates",
                        ));
                    };
                    circuit = Some(Circuit::new(d, n).map_err(|e| parse_err(lineno, e.to_string()))?);
                }
            }
        }
        let c = circuit.as_mut().expect("circuit initialized above");
        let d = c.spec().base_dim;

        let need = |count: usize| -> Result<()> {
            if tokens.len() != count + 1 {
                Err(parse_err(
                    lineno,
                    format!("`{op}` takes {count} arguments, got {}", tokens.len() - 1),
                ))
            } else {
                Ok(())
            }
        };

        let gate = match op {
            "cx" => {
                need(3)?;
                let ctl = parse_usize(tokens[1], lineno, "wire")?;
                let tgt = parse_usize(tokens[2], lineno, "wire")?;
                let a = parse_i64(tokens[3], lineno, "increment")?;
                Gate::controlled_increment(ctl, tgt, d - 1, a, d)
            }
            "cxt" => {
                need(2)?;
                let ctl = parse_usize(tokens[1], lineno, "wire")?;
                let tgt = parse_usize(tokens[2], lineno, "wire")?;
                Gate::negated_sum(ctl, tgt, d)
            }
            "x" => {
                need(2)?;
                let wire = parse_usize(tokens[1], lineno, "wire")?;
                let k = parse_i64(tokens[2], lineno, "increment")?;
                Gate::increment(wire, k, d)
            }
            "block" => {
                if tokens.len() < 2 {
                    return Err(parse_err(lineno, "block needs at least one wire"));
                }
                let ws = tokens[1..]
                    .iter()
                    .map(|t| parse_usize(t, lineno, "wire"))
                    .collect::<Result<Vec<_>>>()?;
                Gate::block(ws)
            }
            "cdx" | "cdx-" => {
                need(2)?;
                let ctl = parse_usize(tokens[1], lineno, "wire")?;
                let tgt = parse_usize(tokens[2], lineno, "wire")?;
                let k = if op == "cdx" { d as i64 } else { -(d as i64) };
                Gate::controlled_increment(ctl, tgt, d - 1, k, 2 * d)
            }
            "cdxc" | "cdxc-" => {
                need(2)?;
                let ctl = parse_usize(tokens[1], lineno, "wire")?;
                let tgt = parse_usize(tokens[2], lineno, "wire")?;
                let k = if op == "cdxc" { d as i64 } else { -(d as i64) };
                Gate::conditional_increment(ctl, tgt, d - 1, k, 2 * d)
            }
            "caxc" => {
                need(3)?;
                let ctl = parse_usize(tokens[1], lineno, "wire")?;
                let tgt = parse_usize(tokens[2], lineno, "wire")?;
                let a = parse_i64(tokens[3], lineno, "increment")?;
                Gate::conditional_increment(ctl, tgt, d - 1, a, d)
            }
            _ => return Err(parse_err(lineno, format!("unknown opcode `{op}`"))),
        };
        c.push(gate).map_err(|e| parse_err(lineno, e.to_string()))?;
    }

    match circuit {
        Some(c) => Ok(c),
        None => match (radix, wires) {
            (Some(d), Some(n)) => Circuit::new(d, n),
            _ => Err(parse_err(0, "missing radix/wires headers")),
        },
    }
}

fn print_gate(gate: &Gate, base_dim: usize) -> Result<String> {
    let d = base_dim;
    let w = &gate.wires;
    let s = match (&gate.kind, w.len()) {
        (GateKind::OpaqueBlock, _) => {
            let mut s = String::from("block");
            for wire in w {
                let _ = write!(s, " {wire}");
            }
            s
        }
        (GateKind::ControlledIncrement { increment, modulus, .. }, 1) if *modulus == d => {
            format!("x {} {}", w[0], increment)
        }
        (
            GateKind::ControlledIncrement {
                activation,
                increment,
                modulus,
            },
            2,
        ) if *activation == d - 1 && *modulus == 2 * d && increment.unsigned_abs() as usize == d => {
            let op = if *increment > 0 { "cdx" } else { "cdx-" };
            format!("{op} {} {}", w[0], w[1])
        }
        (
            GateKind::ControlledIncrement {
                activation,
                increment,
                modulus,
            },
            2,
        ) if *activation == d - 1 && *modulus == d => {
            format!("cx {} {} {}", w[0], w[1], increment)
        }
        (
            GateKind::ConditionalIncrement {
                threshold,
                increment,
                modulus,
            },
            2,
        ) if *threshold == d - 1 && *modulus == 2 * d && increment.unsigned_abs() as usize == d => {
            let op = if *increment > 0 { "cdxc" } else { "cdxc-" };
            format!("{op} {} {}", w[0], w[1])
        }
        (
            GateKind::ConditionalIncrement {
                threshold,
                increment,
                modulus,
            },
            2,
        ) if *threshold == d - 1 && *modulus == d => {
            format!("caxc {} {} {}", w[0], w[1], increment)
        }
        (GateKind::NegatedSum { .. }, 2) => format!("cxt {} {}", w[0], w[1]),
        _ => {
            return Err(Error::Validation(format!(
                "gate {gate:?} has no text representation"
            )))
        }
    };
    Ok(s)
}

/// Prints a circuit in the file format; `parse_circuit` round-trips it
/// gate-for-gate.
pub fn print_circuit(circuit: &Circuit) -> Result<String> {
    let spec = circuit.spec();
    let mut out = format!("radix {}\nwires {}\n", spec.base_dim, spec.count);
    for gate in circuit.gates() {
        out.push_str(&print_gate(gate, spec.base_dim)?);
        out.push('\n');
    }
    Ok(out)
}

/// Parses a topology file: a `nodes <m>` line followed by `edge <u> <v>`
/// lines.
pub fn parse_topology(text: &str) -> Result<CouplingGraph> {
    let mut nodes: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "nodes" => {
                if tokens.len() != 2 {
                    return Err(parse_err(lineno, "nodes takes one value"));
                }
                nodes = Some(parse_usize(tokens[1], lineno, "node count")?);
            }
            "edge" => {
                if nodes.is_none() {
                    return Err(parse_err(lineno, "nodes line must precede edges"));
                }
                if tokens.len() != 3 {
                    return Err(parse_err(lineno, "edge takes two endpoints"));
                }
                let u = parse_usize(tokens[1], lineno, "node")?;
                let v = parse_usize(tokens[2], lineno, "node")?;
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop on node {u}")));
                }
                edges.push((u, v));
            }
            op => return Err(parse_err(lineno, format!("unknown statement `{op}`"))),
        }
    }
    let n = nodes.ok_or_else(|| parse_err(0, "missing nodes line"))?;
    CouplingGraph::new(n, &edges).map_err(|e| parse_err(0, e.to_string()))
}

/// Prints a topology in the file format.
pub fn print_topology(graph: &CouplingGraph) -> String {
    let mut out = format!("nodes {}\n", graph.node_count());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}
