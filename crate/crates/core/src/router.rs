//! Routing of logical circuits onto coupling graphs.
//!
//! Three strategies make a non-adjacent two-wire gate executable:
//!
//! * naive SWAP insertion, moving the control stepwise toward the target;
//! * depth-balanced SWAP insertion, moving both endpoints inward so the
//!   opposite-end SWAP chains share layers;
//! * the intermediate-qudit ladder, which promotes levels `d..2d` along the
//!   path and uncomputes them, never touching the mapping.
//!
//! SWAP strategies mutate the logical-to-physical mapping per inserted SWAP
//! and optionally mirror the SWAPs afterwards to restore it. Mirror
//! sequences are exact structural inverses of the forward sequences.

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::topology::{CouplingGraph, Mapping};

/// Which of the two three-gate SWAP decompositions to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapConfig {
    /// Outer gates controlled by the second wire.
    A,
    /// Mirrored order: outer gates controlled by the first wire.
    B,
}

/// Routing strategy selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteMethod {
    SwapNaive { restore: bool },
    SwapBalanced { restore: bool },
    /// Never alters the mapping; restoration is built into the ladder.
    QuditLadder,
}

/// Hardware-compliant circuit plus its metrics and final mapping.
#[derive(Debug, Clone)]
pub struct RoutedResult {
    pub circuit: Circuit,
    pub final_mapping: Mapping,
    pub gate_count: usize,
    pub depth: usize,
}

/// One routed long-range gate inside a [`RoutedResult`], kept for
/// equivalence checking. `ideal` is the gate in physical coordinates at
/// segment entry; `start..end` indexes the emitted gates.
#[derive(Debug, Clone)]
pub struct RoutedSegment {
    pub ideal: Gate,
    pub start: usize,
    pub end: usize,
    pub entry_mapping: Mapping,
    pub exit_mapping: Mapping,
}

/// Decomposes a SWAP between wires `u` and `v` into three gates: CNOTs for
/// d = 2, negated-sum gates for d > 2, in the alternating control pattern.
pub fn swap_as_primitives(u: usize, v: usize, d: usize, config: SwapConfig) -> Vec<Gate> {
    let pair = |control: usize, target: usize| -> Gate {
        if d == 2 {
            Gate::cnot(control, target)
        } else {
            Gate::negated_sum(control, target, d)
        }
    };
    match config {
        SwapConfig::A => vec![pair(v, u), pair(u, v), pair(v, u)],
        SwapConfig::B => vec![pair(u, v), pair(v, u), pair(u, v)],
    }
}

/// Gates plus the physical SWAP pairs applied, in emission order.
struct SwapExpansion {
    gates: Vec<Gate>,
    swaps: Vec<(usize, usize)>,
}

/// Routes one two-wire gate along `path` with a SWAP strategy. The gate's
/// control must sit at `path[0]` and its target at the far end.
pub fn route_gate_swap(
    path: &[usize],
    gate: &Gate,
    balanced: bool,
    restore: bool,
    base_dim: usize,
) -> Result<Vec<Gate>> {
    Ok(expand_swaps(path, gate, balanced, restore, base_dim)?.gates)
}

fn expand_swaps(
    path: &[usize],
    gate: &Gate,
    balanced: bool,
    restore: bool,
    base_dim: usize,
) -> Result<SwapExpansion> {
    let n = path.len();
    if n < 2 {
        return Err(Error::RoutingContract("path needs at least two nodes".into()));
    }
    if gate.wires.len() != 2 || gate.wires[0] != path[0] || gate.wires[1] != path[n - 1] {
        return Err(Error::RoutingContract(format!(
            "gate wires {:?} are not the path endpoints ({}, {})",
            gate.wires,
            path[0],
            path[n - 1]
        )));
    }

    let hops = n - 2;
    let control_steps = if balanced { hops.div_ceil(2) } else { hops };
    let target_steps = hops - control_steps;

    // Forward SWAP chains. The control and target chains touch disjoint
    // wires, so ASAP layering runs them in parallel.
    let mut forward_swaps = Vec::new();
    for i in 0..control_steps {
        forward_swaps.push((path[i], path[i + 1]));
    }
    for j in 0..target_steps {
        forward_swaps.push((path[n - 1 - j], path[n - 2 - j]));
    }

    let mut gates = Vec::new();
    let mut swaps = Vec::new();
    for &(a, b) in &forward_swaps {
        gates.extend(swap_as_primitives(a, b, base_dim, SwapConfig::A));
        swaps.push((a, b));
    }

    // The displaced endpoints are now adjacent.
    let control_pos = path[control_steps];
    let target_pos = path[n - 1 - target_steps];
    gates.push(Gate {
        kind: gate.kind,
        wires: vec![control_pos, target_pos],
    });

    if restore {
        let mirror: Vec<Gate> = gates[..gates.len() - 1]
            .iter()
            .rev()
            .map(|g| g.inverse())
            .collect::<Result<_>>()?;
        gates.extend(mirror);
        for &(a, b) in forward_swaps.iter().rev() {
            swaps.push((a, b));
        }
    }
    Ok(SwapExpansion { gates, swaps })
}

/// Routes one controlled increment along `path` with the intermediate-qudit
/// ladder: promote at the control end, propagate the promotion down the
/// path, fire the increment at the target, then uncompute in mirror order.
/// Total `2 * (path_len - 2) + 1` gates, equal depth, mapping untouched.
pub fn route_gate_ladder(path: &[usize], gate: &Gate, base_dim: usize) -> Result<Vec<Gate>> {
    let n = path.len();
    if n < 2 {
        return Err(Error::RoutingContract("path needs at least two nodes".into()));
    }
    if gate.wires.len() != 2 || gate.wires[0] != path[0] || gate.wires[1] != path[n - 1] {
        return Err(Error::RoutingContract(format!(
            "gate wires {:?} are not the path endpoints ({}, {})",
            gate.wires,
            path[0],
            path[n - 1]
        )));
    }
    let d = base_dim;
    let increment = match gate.kind {
        GateKind::ControlledIncrement {
            activation,
            increment,
            modulus,
        } if activation == d - 1 && modulus == d => increment,
        _ => {
            return Err(Error::UnsupportedGate(format!(
                "ladder routing needs a controlled increment activating at {} with modulus {}, got {:?}",
                d - 1,
                d,
                gate.kind
            )))
        }
    };

    if n == 2 {
        return Ok(vec![gate.clone()]);
    }

    let promote = |c: usize, t: usize| Gate::controlled_increment(c, t, d - 1, d as i64, 2 * d);
    let propagate = |c: usize, t: usize| Gate::conditional_increment(c, t, d - 1, d as i64, 2 * d);

    let mut gates = vec![promote(path[0], path[1])];
    for i in 1..n - 2 {
        gates.push(propagate(path[i], path[i + 1]));
    }
    gates.push(Gate::conditional_increment(
        path[n - 2],
        path[n - 1],
        d - 1,
        increment,
        d,
    ));
    for i in (1..n - 2).rev() {
        gates.push(propagate(path[i], path[i + 1]).inverse()?);
    }
    gates.push(promote(path[0], path[1]).inverse()?);
    Ok(gates)
}

/// Routes a whole circuit, producing a hardware-compliant circuit, metrics,
/// and the final mapping.
pub fn route_circuit(
    circuit: &Circuit,
    graph: &CouplingGraph,
    initial: &Mapping,
    method: RouteMethod,
) -> Result<RoutedResult> {
    Ok(route_circuit_traced(circuit, graph, initial, method)?.0)
}

/// As [`route_circuit`], additionally reporting one [`RoutedSegment`] per
/// long-range gate that needed routing.
pub fn route_circuit_traced(
    circuit: &Circuit,
    graph: &CouplingGraph,
    initial: &Mapping,
    method: RouteMethod,
) -> Result<(RoutedResult, Vec<RoutedSegment>)> {
    let spec = circuit.spec();
    if spec.count != graph.node_count() {
        return Err(Error::RoutingContract(format!(
            "circuit has {} wires but graph has {} nodes",
            spec.count,
            graph.node_count()
        )));
    }
    if initial.len() != spec.count {
        return Err(Error::RoutingContract("mapping size mismatch".into()));
    }

    let mut mapping = initial.clone();
    let mut out = Circuit::new(spec.base_dim, spec.count)?;
    let mut segments = Vec::new();

    for gate in circuit.gates() {
        let phys: Vec<usize> = gate.wires.iter().map(|&w| mapping.physical_of(w)).collect();
        if gate.wires.len() != 2 {
            out.push(Gate {
                kind: gate.kind,
                wires: phys,
            })?;
            continue;
        }
        let (pc, pt) = (phys[0], phys[1]);
        if graph.adjacent(pc, pt)? {
            out.push(Gate {
                kind: gate.kind,
                wires: vec![pc, pt],
            })?;
            continue;
        }

        let path = graph.shortest_path(pc, pt)?;
        let phys_gate = Gate {
            kind: gate.kind,
            wires: vec![pc, pt],
        };
        let entry_mapping = mapping.clone();
        let start = out.gate_count();
        match method {
            RouteMethod::QuditLadder => {
                for g in route_gate_ladder(&path, &phys_gate, spec.base_dim)? {
                    out.push(g)?;
                }
            }
            RouteMethod::SwapNaive { restore } | RouteMethod::SwapBalanced { restore } => {
                let balanced = matches!(method, RouteMethod::SwapBalanced { .. });
                let expansion = expand_swaps(&path, &phys_gate, balanced, restore, spec.base_dim)?;
                for g in expansion.gates {
                    out.push(g)?;
                }
                for (a, b) in expansion.swaps {
                    mapping.swap_physical(a, b);
                }
            }
        }
        segments.push(RoutedSegment {
            ideal: phys_gate,
            start,
            end: out.gate_count(),
            entry_mapping,
            exit_mapping: mapping.clone(),
        });
    }

    let gate_count = out.gate_count();
    let depth = out.depth();
    Ok((
        RoutedResult {
            circuit: out,
            final_mapping: mapping,
            gate_count,
            depth,
        },
        segments,
    ))
}

/// One row of the ladder-versus-SWAP cost comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostRow {
    pub n: usize,
    pub proposed_gates: usize,
    pub proposed_depth: usize,
    pub conventional_gates: usize,
    pub conventional_depth: usize,
}

/// Measures routing cost for a single long-range CNOT-style gate across a
/// line of `n` wires, for every `n` in the range: the ladder strategy versus
/// balanced SWAP insertion with restoration. Values come from the routed
/// circuits, not from closed-form formulas.
pub fn cost_table(n_min: usize, n_max: usize) -> Result<Vec<CostRow>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::InvalidRange(format!(
            "need 3 <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let graph = CouplingGraph::line(n)?;
        let mut circuit = Circuit::new(2, n)?;
        circuit.push(Gate::cnot(0, n - 1))?;
        let initial = Mapping::identity(n);

        let ladder = route_circuit(&circuit, &graph, &initial, RouteMethod::QuditLadder)?;
        let swap = route_circuit(
            &circuit,
            &graph,
            &initial,
            RouteMethod::SwapBalanced { restore: true },
        )?;
        rows.push(CostRow {
            n,
            proposed_gates: ladder.gate_count,
            proposed_depth: ladder.depth,
            conventional_gates: swap.gate_count,
            conventional_depth: swap.depth,
        });
    }
    Ok(rows)
}
