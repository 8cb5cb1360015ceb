//! Exact dense statevector simulation over mixed-radix working spaces.
//!
//! Amplitude indices use a mixed-radix encoding with wire 0 most
//! significant. All gates are basis permutations, so applying one only
//! relocates amplitudes; doubles accumulate no rounding until circuits are
//! compared entrywise.

use num_complex::Complex;
use num_traits::Float;

use crate::circuit::{Circuit, Gate, WireSpec};
use crate::error::{Error, Result};
use crate::semantics::{apply_to_basis, UnitaryMatrix};
use crate::topology::Mapping;

/// Default cap on the amplitude-vector length for unitary extraction and
/// equivalence checks.
pub const DEFAULT_DIM_CAP: usize = 1 << 16;

/// Dense complex amplitudes over per-wire working dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T = f64> {
    dims: Vec<usize>,
    amplitudes: Vec<Complex<T>>,
}

fn encode(dims: &[usize], values: &[usize]) -> usize {
    let mut idx = 0;
    for (v, d) in values.iter().zip(dims) {
        idx = idx * d + v;
    }
    idx
}

fn decode(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut values = vec![0; dims.len()];
    for (slot, d) in values.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    values
}

impl<T: Float + 'static> StateVector<T> {
    /// Basis state with amplitude 1 at the given assignment.
    pub fn basis_state(dims: &[usize], values: &[usize]) -> Result<Self> {
        if values.len() != dims.len() {
            return Err(Error::Validation(format!(
                "{} values for {} wires",
                values.len(),
                dims.len()
            )));
        }
        for (&v, &d) in values.iter().zip(dims) {
            if v >= d {
                return Err(Error::Validation(format!(
                    "basis value {v} outside wire dimension {d}"
                )));
            }
        }
        let len: usize = dims.iter().product();
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); len];
        amplitudes[encode(dims, values)] = Complex::new(T::one(), T::zero());
        Ok(StateVector {
            dims: dims.to_vec(),
            amplitudes,
        })
    }

    /// State from raw amplitudes; length must match the dimension product.
    pub fn from_amplitudes(dims: &[usize], amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len: usize = dims.iter().product();
        if amplitudes.len() != len {
            return Err(Error::Validation(format!(
                "{} amplitudes for dimension {len}",
                amplitudes.len()
            )));
        }
        Ok(StateVector {
            dims: dims.to_vec(),
            amplitudes,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude_of(&self, values: &[usize]) -> Complex<T> {
        self.amplitudes[encode(&self.dims, values)]
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt()
    }

    fn wire_spec(&self) -> Result<WireSpec> {
        let working = *self.dims.first().ok_or_else(|| {
            Error::Validation("state has no wires".into())
        })?;
        if working % 2 != 0 || self.dims.iter().any(|&d| d != working) {
            return Err(Error::Validation(
                "state dims must be a uniform even working dimension".into(),
            ));
        }
        WireSpec::new(working / 2, self.dims.len())
    }

    /// Applies one gate by relocating amplitudes along its basis
    /// permutation. Negated-sum gates fail if any nonzero amplitude sits on
    /// a promoted level of their wires.
    pub fn apply_gate(&self, gate: &Gate) -> Result<Self> {
        let spec = self.wire_spec()?;
        self.apply_gate_with_spec(gate, &spec)
    }

    fn apply_gate_with_spec(&self, gate: &Gate, spec: &WireSpec) -> Result<Self> {
        gate.validate(spec)?;
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amplitudes.len()];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            if amp.norm_sqr() == T::zero() {
                continue;
            }
            let basis = decode(&self.dims, idx);
            // Surfaces the out-of-subspace error for occupied bases.
            let image = apply_to_basis(gate, spec, &basis)?;
            for (v, d) in image.iter().zip(&self.dims) {
                if v >= d {
                    return Err(Error::Validation(format!(
                        "gate promoted a wire to level {v} beyond the state dimension {d}"
                    )));
                }
            }
            out[encode(&self.dims, &image)] = amp;
        }
        Ok(StateVector {
            dims: self.dims.clone(),
            amplitudes: out,
        })
    }

    /// Runs a circuit's gates in program order. The state's per-wire dims
    /// may be narrower than the circuit's working dimension as long as no
    /// gate promotes an occupied level past them.
    pub fn run(&self, circuit: &Circuit) -> Result<Self> {
        let spec = circuit.spec();
        if self.dims.len() != spec.count || self.dims.iter().any(|&d| d > spec.working_dim) {
            return Err(Error::Validation(format!(
                "state dims {:?} incompatible with circuit spec {:?}",
                self.dims, spec
            )));
        }
        let mut state = self.clone();
        for gate in circuit.gates() {
            state = state.apply_gate_with_spec(gate, spec)?;
        }
        Ok(state)
    }

    /// Total probability mass on basis states with any wire value at or
    /// above `base_dim`.
    pub fn base_subspace_leakage(&self, base_dim: usize) -> T {
        let mut mass = T::zero();
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let basis = decode(&self.dims, idx);
            if basis.iter().any(|&v| v >= base_dim) {
                mass = mass + amp.norm_sqr();
            }
        }
        mass
    }

    /// Relabels wires: the content of wire `i` moves to wire `perm[i]`.
    pub fn permute_wires(&self, perm: &Mapping) -> Self {
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amplitudes.len()];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            if amp.norm_sqr() == T::zero() {
                continue;
            }
            let basis = decode(&self.dims, idx);
            let mut image = vec![0; basis.len()];
            for (i, &v) in basis.iter().enumerate() {
                image[perm.physical_of(i)] = v;
            }
            out[encode(&self.dims, &image)] = amp;
        }
        StateVector {
            dims: self.dims.clone(),
            amplitudes: out,
        }
    }
}

fn working_dims(spec: &WireSpec) -> Vec<usize> {
    vec![spec.working_dim; spec.count]
}

fn check_cap(spec: &WireSpec, cap: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..spec.count {
        dim = dim.saturating_mul(spec.working_dim);
    }
    if dim > cap {
        return Err(Error::TooLarge { dim, cap });
    }
    Ok(dim)
}

/// Full working-space unitary of a circuit, column by column.
pub fn circuit_unitary<T: Float + 'static>(
    circuit: &Circuit,
    cap: usize,
) -> Result<UnitaryMatrix<T>> {
    circuit_unitary_with_dims(circuit, &working_dims(circuit.spec()), cap)
}

/// Circuit unitary over explicit per-wire dims, which may be narrower than
/// the working dimension (e.g. the base dims for SWAP chains that never
/// promote).
pub fn circuit_unitary_with_dims<T: Float + 'static>(
    circuit: &Circuit,
    dims: &[usize],
    cap: usize,
) -> Result<UnitaryMatrix<T>> {
    let dim: usize = dims.iter().fold(1usize, |acc, &d| acc.saturating_mul(d));
    if dim > cap {
        return Err(Error::TooLarge { dim, cap });
    }
    let mut entries = ndarray::Array2::from_elem((dim, dim), Complex::new(T::zero(), T::zero()));
    for col in 0..dim {
        let basis = decode(dims, col);
        let out = StateVector::<T>::basis_state(dims, &basis)?.run(circuit)?;
        for (row, &amp) in out.amplitudes().iter().enumerate() {
            entries[(row, col)] = amp;
        }
    }
    Ok(UnitaryMatrix::from_entries(entries))
}

/// Outcome of a base-subspace equivalence comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport<T = f64> {
    pub max_deviation: T,
    pub leakage: T,
    pub pass: bool,
}

fn enumerate_base_subspace(spec: &WireSpec) -> Vec<Vec<usize>> {
    let base_dims = vec![spec.base_dim; spec.count];
    let count: usize = base_dims.iter().product();
    (0..count).map(|i| decode(&base_dims, i)).collect()
}

fn compare_on_base_subspace<T, F>(
    routed: &Circuit,
    expected: F,
    mapping_perm: Option<&Mapping>,
    tol: T,
    cap: usize,
) -> Result<EquivalenceReport<T>>
where
    T: Float + 'static,
    F: Fn(&[usize]) -> Result<StateVector<T>>,
{
    let spec = routed.spec();
    check_cap(spec, cap)?;
    let dims = working_dims(spec);
    let mut max_deviation = T::zero();
    let mut leakage = T::zero();
    for basis in enumerate_base_subspace(spec) {
        let actual = StateVector::<T>::basis_state(&dims, &basis)?.run(routed)?;
        let mut want = expected(&basis)?;
        if let Some(perm) = mapping_perm {
            want = want.permute_wires(perm);
        }
        for (a, w) in actual.amplitudes().iter().zip(want.amplitudes()) {
            max_deviation = max_deviation.max((*a - *w).norm());
        }
        leakage = leakage.max(actual.base_subspace_leakage(spec.base_dim));
    }
    Ok(EquivalenceReport {
        max_deviation,
        leakage,
        pass: max_deviation <= tol && leakage <= tol,
    })
}

/// Compares a routed circuit against one ideal long-range gate on every
/// base-subspace basis column. With `mapping_perm`, the ideal output is
/// relocated through the permutation before comparison (non-restore
/// routings). Reports the worst entrywise deviation and the worst terminal
/// leakage.
pub fn equivalence_on_base_subspace<T: Float + 'static>(
    routed: &Circuit,
    ideal: &Gate,
    spec: &WireSpec,
    mapping_perm: Option<&Mapping>,
    tol: T,
    cap: usize,
) -> Result<EquivalenceReport<T>> {
    let dims = working_dims(spec);
    compare_on_base_subspace(
        routed,
        |basis| {
            let image = apply_to_basis(ideal, spec, basis)?;
            StateVector::<T>::basis_state(&dims, &image)
        },
        mapping_perm,
        tol,
        cap,
    )
}

/// Compares a routed circuit against an ideal circuit (simulated directly,
/// adjacency ignored) on every base-subspace basis column. Opaque blocks
/// act as identity on both sides.
pub fn circuit_equivalence_on_base_subspace<T: Float + 'static>(
    routed: &Circuit,
    ideal: &Circuit,
    mapping_perm: Option<&Mapping>,
    tol: T,
    cap: usize,
) -> Result<EquivalenceReport<T>> {
    if routed.spec() != ideal.spec() {
        return Err(Error::Validation(
            "routed and ideal circuits have different wire specs".into(),
        ));
    }
    let dims = working_dims(routed.spec());
    compare_on_base_subspace(
        routed,
        |basis| StateVector::<T>::basis_state(&dims, basis)?.run(ideal),
        mapping_perm,
        tol,
        cap,
    )
}
