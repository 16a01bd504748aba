use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::simulator::{run_from_zero, StateVector};

/// Qubit connectivity for two-qubit gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Line,
    Ring,
    Grid,
}

impl Geometry {
    pub const ALL: [Geometry; 3] = [Geometry::Line, Geometry::Ring, Geometry::Grid];

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Line => "line",
            Geometry::Ring => "ring",
            Geometry::Grid => "grid",
        }
    }

    /// Side length of a square grid on `n` qubits.
    pub fn grid_side(n: usize) -> Result<usize> {
        let side = (n as f64).sqrt().round() as usize;
        if side * side != n || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "grid geometry needs a perfect square qubit count, got {n}"
            )));
        }
        Ok(side)
    }

    /// Nearest-neighbour edges `(a, b)` with `a < b` except the ring's
    /// closing edge `(n−1, 0)`. Grids are row-major.
    pub fn edges(self, n: usize) -> Result<Vec<(usize, usize)>> {
        let line = |n: usize| {
            (0..n.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>()
        };
        Ok(match self {
            Geometry::Line => line(n),
            Geometry::Ring => {
                let mut e = line(n);
                if n >= 3 {
                    e.push((n - 1, 0));
                }
                e
            }
            Geometry::Grid => {
                let s = Geometry::grid_side(n)?;
                let mut e = Vec::new();
                for r in 0..s {
                    for c in 0..s {
                        let q = r * s + c;
                        if c + 1 < s {
                            e.push((q, q + 1));
                        }
                        if r + 1 < s {
                            e.push((q, q + s));
                        }
                    }
                }
                e
            }
        })
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Geometry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "line" => Ok(Geometry::Line),
            "ring" => Ok(Geometry::Ring),
            "grid" => Ok(Geometry::Grid),
            other => Err(Error::InvalidArgument(format!(
                "unknown geometry `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// RY on every qubit, then `depth` controlled-RY gates taken in turn
    /// from the geometry's edge list, each followed by RY on every qubit.
    HardwareEfficient,
    /// RY on every qubit, then `depth` layers of non-overlapping
    /// controlled-RY gates, each followed by RY on every qubit.
    BrickLayer,
    /// The angles of a template circuit's parameterised gates.
    CircuitShaped(Circuit),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::HardwareEfficient => "hardware_efficient",
            Family::BrickLayer => "brick_layer",
            Family::CircuitShaped(_) => "circuit_shaped",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzSpec {
    pub family: Family,
    pub n: usize,
    pub depth: usize,
    pub geometry: Geometry,
}

impl AnsatzSpec {
    pub fn hardware_efficient(n: usize, depth: usize, geometry: Geometry) -> Self {
        AnsatzSpec {
            family: Family::HardwareEfficient,
            n,
            depth,
            geometry,
        }
    }

    pub fn brick_layer(n: usize, depth: usize, geometry: Geometry) -> Self {
        AnsatzSpec {
            family: Family::BrickLayer,
            n,
            depth,
            geometry,
        }
    }

    pub fn circuit_shaped(template: Circuit) -> Self {
        AnsatzSpec {
            n: template.n(),
            depth: 0,
            geometry: Geometry::Line,
            family: Family::CircuitShaped(template),
        }
    }

    /// Gate skeleton with every angle zero.
    pub fn template(&self) -> Result<Circuit> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("ansatz needs a qubit".into()));
        }
        let n = self.n;
        let ry_layer = |c: &mut Circuit| -> Result<()> {
            for q in 0..n {
                c.push(Gate::ry(q, 0.0))?;
            }
            Ok(())
        };
        match &self.family {
            Family::CircuitShaped(t) => Ok(t.clone()),
            Family::HardwareEfficient => {
                let edges = self.geometry.edges(n)?;
                if edges.is_empty() && self.depth > 0 {
                    return Err(Error::InvalidArgument(format!(
                        "{} geometry on {n} qubits has no edges",
                        self.geometry
                    )));
                }
                let mut c = Circuit::new(n);
                ry_layer(&mut c)?;
                for i in 0..self.depth {
                    let (a, b) = edges[i % edges.len()];
                    c.push(Gate::cry(a, b, 0.0))?;
                    ry_layer(&mut c)?;
                }
                Ok(c)
            }
            Family::BrickLayer => {
                let layers = matchings(&self.geometry.edges(n)?);
                if layers.is_empty() && self.depth > 0 {
                    return Err(Error::InvalidArgument(format!(
                        "{} geometry on {n} qubits has no edges",
                        self.geometry
                    )));
                }
                let mut c = Circuit::new(n);
                ry_layer(&mut c)?;
                for i in 0..self.depth {
                    for &(a, b) in &layers[i % layers.len()] {
                        c.push(Gate::cry(a, b, 0.0))?;
                    }
                    ry_layer(&mut c)?;
                }
                Ok(c)
            }
        }
    }

    pub fn parameter_count(&self) -> Result<usize> {
        Ok(self.template()?.parameter_slots().len())
    }

    pub fn circuit(&self, params: &[f64]) -> Result<Circuit> {
        self.template()?.with_parameters(params)
    }
}

/// Greedy split of an edge list into non-overlapping layers, in order.
fn matchings(edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut layers: Vec<Vec<(usize, usize)>> = Vec::new();
    for &(a, b) in edges {
        let slot = layers
            .iter()
            .position(|l| l.iter().all(|&(x, y)| x != a && x != b && y != a && y != b));
        match slot {
            Some(i) => layers[i].push((a, b)),
            None => layers.push(vec![(a, b)]),
        }
    }
    layers
}

/// `Π U_l(θ) |0...0>`.
pub fn ansatz_state(spec: &AnsatzSpec, params: &[f64]) -> Result<StateVector> {
    run_from_zero(&spec.circuit(params)?)
}
