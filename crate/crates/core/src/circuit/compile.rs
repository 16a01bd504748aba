use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::{Circuit, Gate, GateKind};
use crate::error::Result;

/// Rewrite a circuit so that every gate is self-inverse.
///
/// Products of two Hermitian rotations in a plane give a rotation about the
/// orthogonal axis: `R(a)·R(b) = exp(−i(a−b)Y)`, and likewise `RYZ` yields
/// X rotations and `RXY` yields Z rotations. Choosing `a = π/2` and
/// `b = π/2 − θ/2` realises `RY(θ)` exactly (and so on for X and Z). Phase
/// gates become Z rotations, and `CRY` is expanded around two CNOTs. The
/// output equals the input up to a global phase and is at most six times
/// longer.
pub fn compile_self_inverse(circuit: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.n());
    if let Some(name) = circuit.name() {
        out = out.with_name(name);
    }
    for g in circuit.gates() {
        for h in lower(g) {
            out.push(h)?;
        }
    }
    Ok(out)
}

fn lower(g: &Gate) -> Vec<Gate> {
    if g.is_self_inverse() {
        return vec![g.clone()];
    }
    let q = g.qubits()[0];
    let theta = g.angle().unwrap_or(0.0);
    match g.kind() {
        GateKind::RY => y_rotation(q, theta),
        GateKind::RX => x_rotation(q, theta),
        GateKind::RZ => z_rotation(q, theta),
        GateKind::S => z_rotation(q, FRAC_PI_2),
        GateKind::Sdg => z_rotation(q, -FRAC_PI_2),
        GateKind::T => z_rotation(q, FRAC_PI_4),
        GateKind::Tdg => z_rotation(q, -FRAC_PI_4),
        GateKind::CRY => {
            let (c, t) = (g.qubits()[0], g.qubits()[1]);
            let mut v = vec![Gate::cnot(c, t)];
            v.extend(y_rotation(t, -theta / 2.0));
            v.push(Gate::cnot(c, t));
            v.extend(y_rotation(t, theta / 2.0));
            v
        }
        other => unreachable!("{other} is self-inverse and returned above"),
    }
}

fn y_rotation(q: usize, theta: f64) -> Vec<Gate> {
    vec![Gate::r(q, FRAC_PI_2 - theta / 2.0), Gate::r(q, FRAC_PI_2)]
}

fn x_rotation(q: usize, theta: f64) -> Vec<Gate> {
    vec![
        Gate::ryz(q, FRAC_PI_2 - theta / 2.0),
        Gate::ryz(q, FRAC_PI_2),
    ]
}

fn z_rotation(q: usize, theta: f64) -> Vec<Gate> {
    vec![
        Gate::rxy(q, FRAC_PI_2 - theta / 2.0),
        Gate::rxy(q, FRAC_PI_2),
    ]
}
