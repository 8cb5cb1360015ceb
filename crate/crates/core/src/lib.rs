//! Qudit-aware circuit routing without SWAP insertion.
//!
//! Long-range two-wire gates are made hardware-compliant either by
//! conventional SWAP chains (naive or depth-balanced) or by temporarily
//! promoting intermediate wires into levels `d..2d` of a `2d`-dimensional
//! working space, which cuts the gate count from `6(n-2)+1` to `2(n-2)+1`
//! along a path of `n` wires. An exact mixed-radix statevector simulator
//! verifies routed circuits against their ideal long-range gates.
//!
//! Floating-point types are generic over the scalar via `num-traits`;
//! the `*64`/`*32` aliases below pick concrete precisions.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod format;
pub mod router;
pub mod semantics;
pub mod sim;
pub mod topology;

pub use circuit::{Circuit, Gate, GateKind, WireSpec};
pub use error::{Error, Result};
pub use router::{cost_table, route_circuit, CostRow, RouteMethod, RoutedResult};
pub use semantics::{apply_to_basis, gate_matrix, is_permutation, BasisAssignment};
pub use sim::{
    circuit_equivalence_on_base_subspace, circuit_unitary, equivalence_on_base_subspace,
    DEFAULT_DIM_CAP,
};
pub use topology::{CouplingGraph, Mapping};

/// Double-precision state vector; the default for all verification work.
pub type StateVector64 = sim::StateVector<f64>;
/// Single-precision state vector.
pub type StateVector32 = sim::StateVector<f32>;
/// Double-precision unitary matrix.
pub type UnitaryMatrix64 = semantics::UnitaryMatrix<f64>;
/// Single-precision unitary matrix.
pub type UnitaryMatrix32 = semantics::UnitaryMatrix<f32>;
/// Double-precision equivalence report.
pub type EquivalenceReport64 = sim::EquivalenceReport<f64>;
