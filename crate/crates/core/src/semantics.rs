//! Exact permutation semantics for every gate kind, plus on-demand unitary
//! matrices over the dimensions the gates are defined on.
//!
//! All gate kinds are classical-reversible: internally everything is integer
//! arithmetic, and complex matrices are only materialized when a caller asks
//! for them. Matrix row/column ordering puts the control digit first, with
//! per-wire radices chosen to match how each gate is conventionally labeled
//! (plain controls read `base_dim` levels, conditional controls read the full
//! working dimension, targets read their modulus).

use ndarray::Array2;
use num_complex::Complex;
use num_traits::Float;

use crate::circuit::{Gate, GateKind, WireSpec};
use crate::error::{Error, Result};

/// One basis value per wire, each below the wire's working dimension.
pub type BasisAssignment = Vec<usize>;

/// Dense complex square matrix, generic over the floating-point scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix<T = f64> {
    entries: Array2<Complex<T>>,
}

impl<T: Float + 'static> UnitaryMatrix<T> {
    pub fn from_entries(entries: Array2<Complex<T>>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "matrix must be square");
        UnitaryMatrix { entries }
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix {
            entries: Array2::from_shape_fn((dim, dim), |(i, j)| {
                if i == j {
                    Complex::new(T::one(), T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            }),
        }
    }

    /// Permutation matrix sending basis `j` to basis `perm[j]`.
    pub fn from_permutation(perm: &[usize]) -> Self {
        let dim = perm.len();
        let mut entries = Array2::from_elem((dim, dim), Complex::new(T::zero(), T::zero()));
        for (col, &row) in perm.iter().enumerate() {
            entries[(row, col)] = Complex::new(T::one(), T::zero());
        }
        UnitaryMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[(row, col)]
    }

    pub fn entries(&self) -> &Array2<Complex<T>> {
        &self.entries
    }

    pub fn matmul(&self, other: &UnitaryMatrix<T>) -> UnitaryMatrix<T> {
        UnitaryMatrix {
            entries: self.entries.dot(&other.entries),
        }
    }

    /// Largest entrywise absolute difference against another matrix.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix<T>) -> T {
        let mut worst = T::zero();
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            worst = worst.max((*a - *b).norm());
        }
        worst
    }

    /// True when the conjugate transpose is a two-sided inverse within `tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        let dim = self.dim();
        let mut dagger = Array2::from_elem((dim, dim), Complex::new(T::zero(), T::zero()));
        for i in 0..dim {
            for j in 0..dim {
                dagger[(j, i)] = self.entries[(i, j)].conj();
            }
        }
        let product = UnitaryMatrix {
            entries: dagger.dot(&self.entries),
        };
        product.max_abs_diff(&UnitaryMatrix::identity(dim)) <= tol
    }
}

/// True iff the matrix has exactly one entry within `tol` of 1 per row and
/// per column, with everything else within `tol` of 0.
pub fn is_permutation<T: Float + 'static>(matrix: &UnitaryMatrix<T>, tol: T) -> bool {
    let dim = matrix.dim();
    let mut row_ones = vec![0usize; dim];
    let mut col_ones = vec![0usize; dim];
    for i in 0..dim {
        for j in 0..dim {
            let e = matrix.entry(i, j);
            if (e - Complex::new(T::one(), T::zero())).norm() <= tol {
                row_ones[i] += 1;
                col_ones[j] += 1;
            } else if e.norm() > tol {
                return false;
            }
        }
    }
    row_ones.iter().all(|&c| c == 1) && col_ones.iter().all(|&c| c == 1)
}

fn modular_add(value: usize, increment: i64, modulus: usize) -> usize {
    (value as i64 + increment).rem_euclid(modulus as i64) as usize
}

/// Core two-value update shared by basis application and matrix construction.
/// Returns the new (control, target) pair.
fn apply_pair(kind: GateKind, control: usize, target: usize, base_dim: usize) -> Result<(usize, usize)> {
    match kind {
        GateKind::ControlledIncrement {
            activation,
            increment,
            modulus,
        } => {
            if control == activation && target < modulus {
                Ok((control, modular_add(target, increment, modulus)))
            } else {
                Ok((control, target))
            }
        }
        GateKind::ConditionalIncrement {
            threshold,
            increment,
            modulus,
        } => {
            if control > threshold && target < modulus {
                Ok((control, modular_add(target, increment, modulus)))
            } else {
                Ok((control, target))
            }
        }
        GateKind::NegatedSum { modulus } => {
            if control >= base_dim || target >= base_dim {
                return Err(Error::OutOfSubspace(format!(
                    "negated-sum saw values ({control}, {target}) with base dimension {base_dim}"
                )));
            }
            let neg = (-(control as i64) - target as i64).rem_euclid(modulus as i64) as usize;
            Ok((control, neg))
        }
        GateKind::OpaqueBlock => Ok((control, target)),
    }
}

/// Applies a gate to a full basis assignment, returning the new assignment.
///
/// Increments whose modulus is below the working dimension leave target
/// values at or above the modulus untouched, which keeps the full-space
/// operator a permutation.
pub fn apply_to_basis(gate: &Gate, spec: &WireSpec, basis: &[usize]) -> Result<BasisAssignment> {
    if basis.len() != spec.count {
        return Err(Error::Validation(format!(
            "basis has {} entries for {} wires",
            basis.len(),
            spec.count
        )));
    }
    for &v in basis {
        if v >= spec.working_dim {
            return Err(Error::Validation(format!(
                "basis value {v} outside working dimension {}",
                spec.working_dim
            )));
        }
    }
    gate.validate(spec)?;

    let mut out = basis.to_vec();
    match (&gate.kind, gate.wires.as_slice()) {
        (GateKind::OpaqueBlock, _) => {}
        (
            GateKind::ControlledIncrement {
                increment, modulus, ..
            },
            [wire],
        ) => {
            // Single-wire increment is unconditional.
            if out[*wire] < *modulus {
                out[*wire] = modular_add(out[*wire], *increment, *modulus);
            }
        }
        (kind, [control, target]) => {
            let (c, t) = apply_pair(*kind, basis[*control], basis[*target], spec.base_dim)?;
            out[*control] = c;
            out[*target] = t;
        }
        _ => {
            return Err(Error::Validation(
                "gate wire arity not supported by basis application".into(),
            ))
        }
    }
    Ok(out)
}

/// Per-wire radices a gate's matrix is written over, control first.
///
/// Plain controls are compared against a level inside the base subspace, so
/// they are labeled with `base_dim` levels; conditional controls fire from
/// promoted levels and need all `working_dim` levels; targets carry their
/// modulus.
pub fn matrix_dims(gate: &Gate, spec: &WireSpec) -> Vec<usize> {
    match (&gate.kind, gate.wires.as_slice()) {
        (GateKind::ControlledIncrement { modulus, .. }, [_]) => vec![*modulus],
        (
            GateKind::ControlledIncrement {
                activation, modulus, ..
            },
            [_, _],
        ) => {
            let control_dim = if *activation < spec.base_dim {
                spec.base_dim
            } else {
                spec.working_dim
            };
            vec![control_dim, *modulus]
        }
        (GateKind::ConditionalIncrement { modulus, .. }, [_, _]) => {
            vec![spec.working_dim, *modulus]
        }
        (GateKind::NegatedSum { modulus }, [_, _]) => vec![*modulus, *modulus],
        (GateKind::OpaqueBlock, wires) => wires.iter().map(|_| spec.working_dim).collect(),
        _ => Vec::new(),
    }
}

/// Builds the gate's permutation matrix over [`matrix_dims`], with the
/// control digit most significant. Matches the conventional printed form of
/// each gate entry-for-entry.
pub fn gate_matrix<T: Float + 'static>(gate: &Gate, spec: &WireSpec) -> Result<UnitaryMatrix<T>> {
    gate.validate(spec)?;
    let dims = matrix_dims(gate, spec);
    let dim: usize = dims.iter().product();

    let perm: Vec<usize> = match (&gate.kind, gate.wires.as_slice()) {
        (GateKind::OpaqueBlock, _) => (0..dim).collect(),
        (GateKind::ControlledIncrement { increment, modulus, .. }, [_]) => (0..dim)
            .map(|t| modular_add(t, *increment, *modulus))
            .collect(),
        (kind, [_, _]) => {
            let target_dim = dims[1];
            let mut perm = Vec::with_capacity(dim);
            for c in 0..dims[0] {
                for t in 0..target_dim {
                    let (c2, t2) = apply_pair(*kind, c, t, spec.base_dim)?;
                    perm.push(c2 * target_dim + t2);
                }
            }
            perm
        }
        _ => {
            return Err(Error::Validation(
                "gate wire arity not supported by matrix construction".into(),
            ))
        }
    };
    Ok(UnitaryMatrix::from_permutation(&perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    fn spec(d: usize, n: usize) -> WireSpec {
        WireSpec::new(d, n).unwrap()
    }

    /// C^{+2}_X for d=2: increment target by 2 mod 4 when control is 1.
    fn c2x(c: usize, t: usize) -> Gate {
        Gate::controlled_increment(c, t, 1, 2, 4)
    }

    #[test]
    fn controlled_increment_fires_on_activation() {
        let s = spec(2, 2);
        assert_eq!(apply_to_basis(&c2x(0, 1), &s, &[1, 0]).unwrap(), vec![1, 2]);
        assert_eq!(apply_to_basis(&c2x(0, 1), &s, &[0, 3]).unwrap(), vec![0, 3]);
        assert_eq!(apply_to_basis(&c2x(0, 1), &s, &[1, 2]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn conditional_increment_fires_above_threshold() {
        let s = spec(2, 2);
        let g = Gate::conditional_increment(0, 1, 1, 1, 2);
        assert_eq!(apply_to_basis(&g, &s, &[3, 1]).unwrap(), vec![3, 0]);
        assert_eq!(apply_to_basis(&g, &s, &[1, 1]).unwrap(), vec![1, 1]);

        let g2 = Gate::conditional_increment(0, 1, 1, 2, 4);
        assert_eq!(apply_to_basis(&g2, &s, &[2, 0]).unwrap(), vec![2, 2]);
    }

    #[test]
    fn negated_sum_arithmetic() {
        let s = spec(3, 2);
        let g = Gate::negated_sum(0, 1, 3);
        assert_eq!(apply_to_basis(&g, &s, &[2, 0]).unwrap(), vec![2, 1]);
        // Promoted levels are an error, not an extension.
        assert!(matches!(
            apply_to_basis(&g, &s, &[3, 0]),
            Err(Error::OutOfSubspace(_))
        ));
    }

    #[test]
    fn negated_sum_at_d2_is_cnot() {
        let s = spec(2, 2);
        let ns = Gate::negated_sum(0, 1, 2);
        let cnot = Gate::cnot(0, 1);
        for c in 0..2 {
            for t in 0..2 {
                assert_eq!(
                    apply_to_basis(&ns, &s, &[c, t]).unwrap(),
                    apply_to_basis(&cnot, &s, &[c, t]).unwrap()
                );
            }
        }
    }

    #[test]
    fn matrix_dims_follow_printed_labels() {
        let s = spec(2, 2);
        assert_eq!(matrix_dims(&c2x(0, 1), &s), vec![2, 4]); // 8x8
        assert_eq!(
            matrix_dims(&Gate::conditional_increment(0, 1, 1, 1, 2), &s),
            vec![4, 2]
        ); // 8x8
        assert_eq!(
            matrix_dims(&Gate::conditional_increment(0, 1, 1, 2, 4), &s),
            vec![4, 4]
        ); // 16x16
    }

    #[test]
    fn gate_matrix_agrees_with_basis_action() {
        // Exhaustive column check for d in {2, 3} over all two-wire kinds.
        for d in [2usize, 3] {
            let s = spec(d, 2);
            let gates = vec![
                Gate::controlled_increment(0, 1, d - 1, d as i64, 2 * d),
                Gate::conditional_increment(0, 1, d - 1, d as i64, 2 * d),
                Gate::conditional_increment(0, 1, d - 1, 1, d),
                Gate::negated_sum(0, 1, d),
            ];
            for g in gates {
                let dims = matrix_dims(&g, &s);
                let m: UnitaryMatrix = gate_matrix(&g, &s).unwrap();
                for c in 0..dims[0] {
                    for t in 0..dims[1] {
                        let col = c * dims[1] + t;
                        let out = apply_to_basis(&g, &s, &[c, t]).unwrap();
                        let row = out[0] * dims[1] + out[1];
                        assert_eq!(m.entry(row, col).re, 1.0, "gate {g:?} column {col}");
                    }
                }
            }
        }
    }

    #[test]
    fn matrices_are_unitary_permutations() {
        let s = spec(2, 2);
        for g in [
            c2x(0, 1),
            Gate::conditional_increment(0, 1, 1, 1, 2),
            Gate::conditional_increment(0, 1, 1, 2, 4),
            Gate::cnot(0, 1),
        ] {
            let m: UnitaryMatrix = gate_matrix(&g, &s).unwrap();
            assert!(m.is_unitary(1e-12));
            assert!(is_permutation(&m, 1e-12));
            let inv: UnitaryMatrix = gate_matrix(&g.inverse().unwrap(), &s).unwrap();
            let product = m.matmul(&inv);
            assert!(product.max_abs_diff(&UnitaryMatrix::identity(m.dim())) <= 1e-12);
        }
    }

    #[test]
    fn is_permutation_rejects_duplicated_column() {
        let mut bad: UnitaryMatrix = UnitaryMatrix::identity(3);
        let one = bad.entry(0, 0);
        bad.entries.column_mut(1).iter_mut().for_each(|e| *e = num_complex::Complex::new(0.0, 0.0));
        bad.entries[(0, 1)] = one;
        assert!(!is_permutation(&bad, 1e-12));
        assert!(is_permutation(&UnitaryMatrix::<f64>::identity(4), 1e-12));
    }

    #[test]
    fn opaque_block_matrix_is_identity() {
        let s = spec(2, 2);
        let m: UnitaryMatrix = gate_matrix(&Gate::block(vec![0, 1]), &s).unwrap();
        assert_eq!(m.dim(), 16);
        assert!(m.max_abs_diff(&UnitaryMatrix::identity(16)) <= 1e-12);
    }

    #[test]
    fn bijectivity_by_exhaustive_enumeration() {
        // Every gate kind permutes the full working-space basis set.
        for d in [2usize, 3, 4] {
            let s = spec(d, 2);
            let gates = vec![
                Gate::controlled_increment(0, 1, d - 1, d as i64, 2 * d),
                Gate::conditional_increment(0, 1, d - 1, d as i64, 2 * d),
                Gate::conditional_increment(0, 1, d - 1, 1, d),
            ];
            for g in gates {
                let w = s.working_dim;
                let mut seen = vec![false; w * w];
                for c in 0..w {
                    for t in 0..w {
                        let out = apply_to_basis(&g, &s, &[c, t]).unwrap();
                        let idx = out[0] * w + out[1];
                        assert!(!seen[idx], "gate {g:?} collided at {idx}");
                        seen[idx] = true;
                    }
                }
            }
        }
    }
}
