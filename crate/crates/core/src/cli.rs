//! Command implementations behind the binary: routing, verification, the
//! cost-table CSV, and direct simulation.
//!
//! Each command returns a process exit code. Diagnostics go to stderr;
//! results go to the given writer (stdout in the binary) or to an output
//! file. Exit codes: 0 success, 1 verification failure, 2 parse or argument
//! error, 3 no routing path, 4 gate unsupported by the ladder, 5 state
//! space over the simulator cap.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, GateKind};
use crate::error::Error;
use crate::format::{parse_circuit, parse_topology, print_circuit};
use crate::router::{cost_table, route_circuit, RouteMethod};
use crate::sim::{circuit_equivalence_on_base_subspace, StateVector, DEFAULT_DIM_CAP};
use crate::topology::Mapping;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NO_PATH: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_TOO_LARGE: i32 = 5;

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoPath(..) => EXIT_NO_PATH,
        Error::UnsupportedGate(_) => EXIT_UNSUPPORTED,
        Error::TooLarge { .. } => EXIT_TOO_LARGE,
        _ => EXIT_PARSE,
    }
}

fn fail(err: &Error) -> i32 {
    eprintln!("error: {err}");
    exit_code(err)
}

fn read_file(path: &Path) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn load_inputs(
    circuit_path: &Path,
    topology_path: &Path,
) -> Result<(Circuit, crate::topology::CouplingGraph), i32> {
    let circuit = parse_circuit(&read_file(circuit_path)?).map_err(|e| fail(&e))?;
    let graph = parse_topology(&read_file(topology_path)?).map_err(|e| fail(&e))?;
    if circuit.spec().count != graph.node_count() {
        eprintln!(
            "error: circuit has {} wires but topology has {} nodes",
            circuit.spec().count,
            graph.node_count()
        );
        return Err(EXIT_PARSE);
    }
    Ok((circuit, graph))
}

/// Metrics of the circuit with opaque blocks stripped: the routed-section
/// accounting the comparison figures use.
fn routed_section_metrics(circuit: &Circuit) -> (usize, usize) {
    let gates: Vec<_> = circuit
        .gates()
        .iter()
        .filter(|g| !matches!(g.kind, GateKind::OpaqueBlock))
        .cloned()
        .collect();
    let section = Circuit::from_gates(*circuit.spec(), gates).expect("gates already validated");
    (section.gate_count(), section.depth())
}

/// Routes a circuit file onto a topology and writes the hardware-compliant
/// circuit, prefixed with metric comment lines.
pub fn cmd_route(
    circuit_path: &Path,
    topology_path: &Path,
    method: RouteMethod,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> i32 {
    let (circuit, graph) = match load_inputs(circuit_path, topology_path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let initial = Mapping::identity(circuit.spec().count);
    let routed = match route_circuit(&circuit, &graph, &initial, method) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };

    let (section_gates, section_depth) = routed_section_metrics(&routed.circuit);
    let body = match print_circuit(&routed.circuit) {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    let text = format!(
        "# gate_count={section_gates}\n# depth={section_depth}\n# total_gate_count={}\n# total_depth={}\n{body}",
        routed.gate_count, routed.depth
    );

    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_PARSE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    EXIT_OK
}

/// Routes a circuit and checks that the routed circuit matches the input
/// circuit on the base subspace, with zero terminal leakage. Non-restore
/// routings are compared through the final mapping permutation.
pub fn cmd_verify(
    circuit_path: &Path,
    topology_path: &Path,
    method: RouteMethod,
    tol: f64,
    stdout: &mut dyn Write,
) -> i32 {
    let (circuit, graph) = match load_inputs(circuit_path, topology_path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let initial = Mapping::identity(circuit.spec().count);
    let routed = match route_circuit(&circuit, &graph, &initial, method) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let perm = if routed.final_mapping == initial {
        None
    } else {
        Some(&routed.final_mapping)
    };
    let report = match circuit_equivalence_on_base_subspace::<f64>(
        &routed.circuit,
        &circuit,
        perm,
        tol,
        DEFAULT_DIM_CAP,
    ) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };

    let verdict = if report.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        stdout,
        "{verdict} max_dev={} leakage={}",
        report.max_deviation, report.leakage
    );
    if report.pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    }
}

/// Writes the ladder-versus-SWAP cost comparison as CSV.
pub fn cmd_table(n_min: usize, n_max: usize, csv: Option<&Path>, stdout: &mut dyn Write) -> i32 {
    let rows = match cost_table(n_min, n_max) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut text = String::from("n,proposed_gates,proposed_depth,conventional_gates,conventional_depth\n");
    for r in rows {
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.proposed_gates, r.proposed_depth, r.conventional_gates, r.conventional_depth
        ));
    }
    match csv {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_PARSE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    EXIT_OK
}

fn parse_digit_string(input: &str, count: usize, working_dim: usize) -> Result<Vec<usize>, String> {
    let digits: Vec<usize> = input
        .chars()
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as usize)
                .ok_or_else(|| format!("invalid digit `{c}`"))
        })
        .collect::<Result<_, _>>()?;
    if digits.len() != count {
        return Err(format!("{} digits for {count} wires", digits.len()));
    }
    if let Some(&v) = digits.iter().find(|&&v| v >= working_dim) {
        return Err(format!("digit {v} outside working dimension {working_dim}"));
    }
    Ok(digits)
}

fn digit_string(values: &[usize]) -> String {
    values
        .iter()
        .map(|&v| char::from_digit(v as u32, 36).unwrap_or('?'))
        .collect()
}

/// Simulates a circuit file on a basis input or a seeded random
/// base-subspace superposition, printing the nonzero final amplitudes.
pub fn cmd_simulate(
    circuit_path: &Path,
    input: Option<&str>,
    random_seed: Option<u64>,
    stdout: &mut dyn Write,
) -> i32 {
    let circuit = match read_file(circuit_path).map(|t| parse_circuit(&t)) {
        Ok(Ok(c)) => c,
        Ok(Err(e)) => return fail(&e),
        Err(code) => return code,
    };
    let spec = circuit.spec();
    let dims = vec![spec.working_dim; spec.count];

    let state = match (input, random_seed) {
        (Some(text), _) => {
            let digits = match parse_digit_string(text, spec.count, spec.working_dim) {
                Ok(d) => d,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return EXIT_PARSE;
                }
            };
            match StateVector::<f64>::basis_state(&dims, &digits) {
                Ok(s) => s,
                Err(e) => return fail(&e),
            }
        }
        (None, Some(seed)) => random_base_state(&dims, spec.base_dim, seed),
        (None, None) => {
            eprintln!("error: provide --input or --random");
            return EXIT_PARSE;
        }
    };

    let total: usize = dims.iter().product();
    if total > DEFAULT_DIM_CAP {
        return fail(&Error::TooLarge {
            dim: total,
            cap: DEFAULT_DIM_CAP,
        });
    }

    let out = match state.run(&circuit) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    for (idx, amp) in out.amplitudes().iter().enumerate() {
        if amp.norm_sqr() < 1e-12 {
            continue;
        }
        let mut values = vec![0usize; dims.len()];
        let mut rest = idx;
        for (slot, d) in values.iter_mut().zip(&dims).rev() {
            *slot = rest % d;
            rest /= d;
        }
        let _ = writeln!(stdout, "{}: {},{}", digit_string(&values), amp.re, amp.im);
    }
    EXIT_OK
}

/// Seeded random normalized superposition over the base subspace.
fn random_base_state(dims: &[usize], base_dim: usize, seed: u64) -> StateVector<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: usize = dims.iter().product();
    let mut amps = vec![Complex::new(0.0, 0.0); total];
    for (idx, amp) in amps.iter_mut().enumerate() {
        let mut rest = idx;
        let mut in_base = true;
        for &d in dims.iter().rev() {
            if rest % d >= base_dim {
                in_base = false;
                break;
            }
            rest /= d;
        }
        if in_base {
            *amp = Complex::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
    }
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(dims, amps).expect("length matches dims")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const FIG3_CIRCUIT: &str = "radix 2\nwires 3\nblock 0 1 2\ncx 0 2 1\nblock 0 1 2\n";
    const LINE3: &str = "nodes 3\nedge 0 1\nedge 1 2\n";

    #[test]
    fn route_ladder_reports_section_metrics() {
        let circuit = write_temp(FIG3_CIRCUIT);
        let topo = write_temp(LINE3);
        let mut out = Vec::new();
        let code = cmd_route(
            circuit.path(),
            topo.path(),
            RouteMethod::QuditLadder,
            None,
            &mut out,
        );
        assert_eq!(code, EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("# gate_count=3\n# depth=3\n"), "{text}");
        assert!(text.contains("# total_gate_count=5\n"));
        // Output parses back.
        assert!(parse_circuit(&text).is_ok());
    }

    #[test]
    fn route_swap_balanced_on_four_wires() {
        let circuit = write_temp("radix 2\nwires 4\ncx 0 3 1\n");
        let topo = write_temp("nodes 4\nedge 0 1\nedge 1 2\nedge 2 3\n");
        let mut out = Vec::new();
        let code = cmd_route(
            circuit.path(),
            topo.path(),
            RouteMethod::SwapBalanced { restore: true },
            None,
            &mut out,
        );
        assert_eq!(code, EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("# depth=7\n"), "{text}");
        assert!(text.contains("# gate_count=13\n"));
    }

    #[test]
    fn route_rejects_malformed_input() {
        let circuit = write_temp("radix 2\nwires 3\nbogus 1\n");
        let topo = write_temp(LINE3);
        let mut out = Vec::new();
        let code = cmd_route(
            circuit.path(),
            topo.path(),
            RouteMethod::QuditLadder,
            None,
            &mut out,
        );
        assert_eq!(code, EXIT_PARSE);
    }

    #[test]
    fn route_disconnected_exits_3() {
        let circuit = write_temp("radix 2\nwires 3\ncx 0 2 1\n");
        let topo = write_temp("nodes 3\nedge 0 1\n");
        let mut out = Vec::new();
        let code = cmd_route(
            circuit.path(),
            topo.path(),
            RouteMethod::QuditLadder,
            None,
            &mut out,
        );
        assert_eq!(code, EXIT_NO_PATH);
    }

    #[test]
    fn route_unsupported_for_ladder_exits_4() {
        let circuit = write_temp("radix 2\nwires 3\ncxt 0 2\n");
        let topo = write_temp(LINE3);
        let mut out = Vec::new();
        let code = cmd_route(
            circuit.path(),
            topo.path(),
            RouteMethod::QuditLadder,
            None,
            &mut out,
        );
        assert_eq!(code, EXIT_UNSUPPORTED);
    }

    #[test]
    fn verify_ladder_passes() {
        let circuit = write_temp(FIG3_CIRCUIT);
        let topo = write_temp(LINE3);
        let mut out = Vec::new();
        let code = cmd_verify(
            circuit.path(),
            topo.path(),
            RouteMethod::QuditLadder,
            1e-10,
            &mut out,
        );
        assert_eq!(code, EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("PASS max_dev=0"), "{text}");
    }

    #[test]
    fn verify_corrupted_routed_file_fails() {
        // Ladder route of cx 0 2 with the final uncompute gate dropped.
        let circuit = write_temp("radix 2\nwires 3\ncdx 0 1\ncaxc 1 2 1\n");
        let topo = write_temp(LINE3);
        let mut out = Vec::new();
        let code = cmd_verify(
            circuit.path(),
            topo.path(),
            RouteMethod::QuditLadder,
            1e-10,
            &mut out,
        );
        assert_eq!(code, EXIT_VERIFY_FAIL);
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("FAIL"), "{text}");
    }

    #[test]
    fn verify_over_cap_exits_5() {
        let gates: String = String::from("cx 0 6 1\n");
        let circuit = write_temp(&format!("radix 4\nwires 7\n{gates}"));
        let topo = write_temp(
            "nodes 7\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\nedge 5 6\n",
        );
        let mut out = Vec::new();
        let code = cmd_verify(
            circuit.path(),
            topo.path(),
            RouteMethod::QuditLadder,
            1e-10,
            &mut out,
        );
        assert_eq!(code, EXIT_TOO_LARGE);
    }

    #[test]
    fn table_csv_rows() {
        let mut out = Vec::new();
        let code = cmd_table(3, 10, None, &mut out);
        assert_eq!(code, EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "n,proposed_gates,proposed_depth,conventional_gates,conventional_depth"
        );
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[6], "8,13,13,37,19");

        let mut out = Vec::new();
        assert_eq!(cmd_table(2, 5, None, &mut out), EXIT_PARSE);
    }

    #[test]
    fn simulate_ladder_file() {
        let circuit = write_temp("radix 2\nwires 3\ncdx 0 1\ncaxc 1 2 1\ncdx- 0 1\n");
        let mut out = Vec::new();
        let code = cmd_simulate(circuit.path(), Some("100"), None, &mut out);
        assert_eq!(code, EXIT_OK);
        assert_eq!(String::from_utf8(out).unwrap(), "101: 1,0\n");

        let mut out = Vec::new();
        let code = cmd_simulate(circuit.path(), Some("000"), None, &mut out);
        assert_eq!(code, EXIT_OK);
        assert_eq!(String::from_utf8(out).unwrap(), "000: 1,0\n");

        let mut out = Vec::new();
        assert_eq!(
            cmd_simulate(circuit.path(), Some("400"), None, &mut out),
            EXIT_PARSE
        );
    }

    #[test]
    fn simulate_random_is_deterministic_and_normalized() {
        let circuit = write_temp("radix 2\nwires 3\ncdx 0 1\ncaxc 1 2 1\ncdx- 0 1\n");
        let mut a = Vec::new();
        let mut b = Vec::new();
        assert_eq!(cmd_simulate(circuit.path(), None, Some(7), &mut a), EXIT_OK);
        assert_eq!(cmd_simulate(circuit.path(), None, Some(7), &mut b), EXIT_OK);
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}
