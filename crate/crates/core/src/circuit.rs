//! Circuit intermediate representation: wires, the gate vocabulary, and
//! structural metrics (gate count, ASAP depth, inverses).
//!
//! Gates carry no matrices; their action on basis states lives in
//! [`crate::semantics`]. Every wire exposes `working_dim = 2 * base_dim`
//! levels, the upper half of which serves as temporary storage during
//! routing.

use crate::error::{Error, Result};

/// Wire layout of a circuit: how many wires and how many levels each exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WireSpec {
    pub count: usize,
    /// Computational radix `d`. Inputs and outputs live on levels `0..d`.
    pub base_dim: usize,
    /// Levels available during routing; always `2 * base_dim`.
    pub working_dim: usize,
}

impl WireSpec {
    pub fn new(base_dim: usize, count: usize) -> Result<Self> {
        if base_dim < 2 {
            return Err(Error::InvalidSpec(format!(
                "base dimension must be at least 2, got {base_dim}"
            )));
        }
        if count < 1 {
            return Err(Error::InvalidSpec(format!(
                "wire count must be at least 1, got {count}"
            )));
        }
        Ok(WireSpec {
            count,
            base_dim,
            working_dim: 2 * base_dim,
        })
    }
}

/// The gate vocabulary.
///
/// All kinds are classical-reversible permutations of basis states.
/// Increment parameters are signed and normalized modulo `modulus` at
/// application time, so the inverse of an increment kind is the same kind
/// with the increment negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    /// Target gains `increment (mod modulus)` when the control holds exactly
    /// `activation`. With activation 1, increment 1, modulus 2 this is CNOT.
    /// On a single wire the increment is unconditional.
    ControlledIncrement {
        activation: usize,
        increment: i64,
        modulus: usize,
    },
    /// Target gains `increment (mod modulus)` when the control value exceeds
    /// `threshold`. The control fires only from promoted levels when the
    /// threshold is `base_dim - 1`.
    ConditionalIncrement {
        threshold: usize,
        increment: i64,
        modulus: usize,
    },
    /// Target becomes `(-control - target) mod modulus`; the qudit CNOT
    /// generalization. Self-inverse, defined on levels below `modulus` only.
    NegatedSum { modulus: usize },
    /// Placeholder for an unexpanded block of gates. Occupies its wires for
    /// one layer and counts as one gate.
    OpaqueBlock,
}

impl GateKind {
    pub fn inverse(self) -> Result<Self> {
        match self {
            GateKind::ControlledIncrement {
                activation,
                increment,
                modulus,
            } => Ok(GateKind::ControlledIncrement {
                activation,
                increment: -increment,
                modulus,
            }),
            GateKind::ConditionalIncrement {
                threshold,
                increment,
                modulus,
            } => Ok(GateKind::ConditionalIncrement {
                threshold,
                increment: -increment,
                modulus,
            }),
            GateKind::NegatedSum { modulus } => Ok(GateKind::NegatedSum { modulus }),
            GateKind::OpaqueBlock => Err(Error::NonInvertible),
        }
    }
}

/// A gate instance: a kind plus the wires it acts on.
///
/// Two-wire gates list the control first and the target second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub wires: Vec<usize>,
}

impl Gate {
    /// Plain controlled increment `C^{+k}_X`-style gate: fires when the
    /// control holds exactly `activation`.
    pub fn controlled_increment(
        control: usize,
        target: usize,
        activation: usize,
        increment: i64,
        modulus: usize,
    ) -> Self {
        Gate {
            kind: GateKind::ControlledIncrement {
                activation,
                increment,
                modulus,
            },
            wires: vec![control, target],
        }
    }

    /// CNOT: controlled increment by 1 mod 2, activating on control value 1.
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::controlled_increment(control, target, 1, 1, 2)
    }

    /// Conditional increment `C^{+k}_{X_c}`-style gate: fires when the
    /// control value exceeds `threshold`.
    pub fn conditional_increment(
        control: usize,
        target: usize,
        threshold: usize,
        increment: i64,
        modulus: usize,
    ) -> Self {
        Gate {
            kind: GateKind::ConditionalIncrement {
                threshold,
                increment,
                modulus,
            },
            wires: vec![control, target],
        }
    }

    /// Qudit CNOT generalization: target becomes `(-control - target) mod d`.
    pub fn negated_sum(control: usize, target: usize, modulus: usize) -> Self {
        Gate {
            kind: GateKind::NegatedSum { modulus },
            wires: vec![control, target],
        }
    }

    /// Unconditional local increment by `k mod modulus` on one wire.
    pub fn increment(wire: usize, increment: i64, modulus: usize) -> Self {
        Gate {
            kind: GateKind::ControlledIncrement {
                activation: 0,
                increment,
                modulus,
            },
            wires: vec![wire],
        }
    }

    pub fn block(wires: Vec<usize>) -> Self {
        Gate {
            kind: GateKind::OpaqueBlock,
            wires,
        }
    }

    pub fn inverse(&self) -> Result<Gate> {
        Ok(Gate {
            kind: self.kind.inverse()?,
            wires: self.wires.clone(),
        })
    }

    /// Checks wire indices, wire distinctness, and parameter ranges against
    /// a wire spec.
    pub fn validate(&self, spec: &WireSpec) -> Result<()> {
        if self.wires.is_empty() {
            return Err(Error::Validation("gate has no wires".into()));
        }
        for &w in &self.wires {
            if w >= spec.count {
                return Err(Error::Validation(format!(
                    "wire {w} out of range for {} wires",
                    spec.count
                )));
            }
        }
        for (i, &a) in self.wires.iter().enumerate() {
            if self.wires[i + 1..].contains(&a) {
                return Err(Error::Validation(format!("duplicate wire {a}")));
            }
        }
        match self.kind {
            GateKind::ControlledIncrement {
                activation,
                increment,
                modulus,
            } => {
                if self.wires.len() > 2 {
                    return Err(Error::Validation("increment gate has over two wires".into()));
                }
                if self.wires.len() == 2 && activation >= spec.working_dim {
                    return Err(Error::Validation(format!(
                        "activation level {activation} outside working dimension {}",
                        spec.working_dim
                    )));
                }
                check_increment(increment, modulus, spec)?;
            }
            GateKind::ConditionalIncrement {
                threshold,
                increment,
                modulus,
            } => {
                if self.wires.len() != 2 {
                    return Err(Error::Validation(
                        "conditional increment needs exactly two wires".into(),
                    ));
                }
                if threshold >= spec.working_dim {
                    return Err(Error::Validation(format!(
                        "threshold {threshold} outside working dimension {}",
                        spec.working_dim
                    )));
                }
                check_increment(increment, modulus, spec)?;
            }
            GateKind::NegatedSum { modulus } => {
                if self.wires.len() != 2 {
                    return Err(Error::Validation(
                        "negated-sum needs exactly two wires".into(),
                    ));
                }
                if modulus != spec.base_dim {
                    return Err(Error::Validation(format!(
                        "negated-sum modulus {modulus} must equal base dimension {}",
                        spec.base_dim
                    )));
                }
            }
            GateKind::OpaqueBlock => {}
        }
        Ok(())
    }
}

fn check_increment(increment: i64, modulus: usize, spec: &WireSpec) -> Result<()> {
    if modulus != spec.base_dim && modulus != spec.working_dim {
        return Err(Error::Validation(format!(
            "modulus {modulus} must be the base ({}) or working ({}) dimension",
            spec.base_dim, spec.working_dim
        )));
    }
    if increment == 0 || increment.unsigned_abs() as usize >= modulus {
        return Err(Error::Validation(format!(
            "increment {increment} must satisfy 1 <= |k| < {modulus}"
        )));
    }
    Ok(())
}

/// An ordered gate sequence over a fixed wire layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    spec: WireSpec,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit over `wire_count` wires with computational radix
    /// `base_dim` and working dimension `2 * base_dim`.
    pub fn new(base_dim: usize, wire_count: usize) -> Result<Self> {
        Ok(Circuit {
            spec: WireSpec::new(base_dim, wire_count)?,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(spec: WireSpec, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit { spec, gates: Vec::new() };
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn spec(&self) -> &WireSpec {
        &self.spec
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Appends a gate after validating it against the wire spec.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(&self.spec)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Circuit depth under as-soon-as-possible layering: a gate lands in the
    /// earliest layer after all earlier gates sharing any of its wires.
    pub fn depth(&self) -> usize {
        let mut last = vec![0usize; self.spec.count];
        let mut depth = 0;
        for g in &self.gates {
            let layer = 1 + g.wires.iter().map(|&w| last[w]).max().unwrap_or(0);
            for &w in &g.wires {
                last[w] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// Reversed gate order with every gate replaced by its inverse.
    /// Fails when an opaque block is present.
    pub fn inverse(&self) -> Result<Circuit> {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| g.inverse())
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit {
            spec: self.spec,
            gates,
        })
    }
}
